//! `s(n)` against its logarithmic envelope and the chicken lower bound.

use num_bigint::BigInt;
use slow_walks::extremal::{check_bounds, s_bounds, s_lower_chicken};
use slow_walks::{characterize, Params};

fn main() -> slow_walks::Result<()> {
    let params = Params::new(1, 1)?;
    for exp in [2u32, 4, 8, 16, 32] {
        let n = BigInt::from(10).pow(exp) + 7;
        let cert = characterize(&params, &n);
        let env = s_bounds(&params, &n)?;
        let ok = check_bounds(&params, &n, cert.s).all();
        println!(
            "n = 10^{exp}+7: {:.2} <= s = {} <= {:.2}, chicken bound {}, exact check {ok}",
            env.lower,
            cert.s,
            env.upper,
            s_lower_chicken(&params, &n)
        );
    }
    let params = Params::new(2, 3)?;
    let worst = (2..=100_000u64)
        .map(BigInt::from)
        .filter(|n| !characterize(&params, n).is_degenerate())
        .filter(|n| !check_bounds(&params, n, characterize(&params, n).s).all())
        .count();
    println!("(2,3): bound violations for n <= 100000: {worst}");
    Ok(())
}
