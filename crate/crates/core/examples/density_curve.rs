//! Empirical density of `S_p` against the closed form, for a few parameter sets.
//!
//! Run with `cargo run --release --example density_curve`.

use slow_walks::density::{default_c_grid, density_curve, DensityJob};
use slow_walks::Params;

fn main() -> slow_walks::Result<()> {
    let cases: &[(u64, u64, &[u64], &[u32])] = &[
        (1, 1, &[1], &[6, 8, 10]),
        (2, 1, &[1, 2, 3, 4], &[4, 6]),
        (1, 5, &[5, 6], &[2, 3, 4]),
    ];
    for &(alpha, beta, ps, rs) in cases {
        let params = Params::new(alpha, beta)?;
        for &p in ps {
            for &r in rs {
                let job = DensityJob::new(&params, p, r, default_c_grid(&params, 17))?;
                let rows = density_curve(&job)?;
                let worst = rows
                    .iter()
                    .filter_map(|row| {
                        row.theory_density
                            .map(|t| (row.empirical_density - t).abs())
                    })
                    .fold(0.0f64, f64::max);
                let covered = rows
                    .iter()
                    .filter(|row| row.theory_density.is_some())
                    .count();
                println!(
                    "({alpha},{beta}) p={p} r={r}: n_cr up to {}, max |empirical - theory| = {worst:.5} over {covered} points",
                    rows.last().map_or(0, |row| row.n_cr)
                );
            }
        }
    }
    Ok(())
}
