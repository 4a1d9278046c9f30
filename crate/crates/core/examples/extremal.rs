//! Extremal witnesses `n_t`, the largest pair counts and where they recur.

use slow_walks::extremal::{
    extremal_witness, infinitely_max_iff, k_t_report, max_attainments, max_p_bound,
    recurrent_p_value,
};
use slow_walks::{characterize, Params};

fn main() -> slow_walks::Result<()> {
    for (alpha, beta) in [(1, 1), (2, 1), (1, 3), (1, 5), (2, 5)] {
        let params = Params::new(alpha, beta)?;
        println!(
            "({alpha},{beta}): max p = {}, recurrent p = {}, max infinitely often: {}",
            max_p_bound(&params),
            recurrent_p_value(&params)?,
            infinitely_max_iff(&params)
        );
        for t in 2..=6 {
            let w = extremal_witness(&params, t)?;
            println!(
                "  n_{t} = {} has p = {}",
                w.n,
                characterize(&params, &w.n).pair_count()
            );
        }
        let kt = k_t_report(&params, 20);
        println!("  k_t -> {} from t = {:?}", kt.limit, kt.onset);
        let hits: Vec<u64> = max_attainments(&params, 200_000, 4)
            .iter()
            .map(|w| w.count)
            .collect();
        println!("  max p attained per quarter of [1, 200000]: {hits:?}");
    }
    Ok(())
}
