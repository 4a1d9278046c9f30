//! Stratified counting of `S_p`: per-stratum sizes, the stratum bound and the
//! pair lemma.

use slow_walks::density::{all_strata, empirical_sp_count, l_pairs_violations, CountMethod};
use slow_walks::Params;

fn main() -> slow_walks::Result<()> {
    let params = Params::new(1, 5)?;
    let (p, n) = (5, 20_000);
    let direct = empirical_sp_count(&params, p, n, CountMethod::Direct)?;
    let stratified = empirical_sp_count(&params, p, n, CountMethod::Stratified)?;
    println!("(1,5) p={p} n={n}: direct {direct}, stratified {stratified}");
    for st in all_strata(&params, p, n)?
        .iter()
        .filter(|st| st.s_count > 0)
    {
        println!(
            "  t={} q={}: |S|={} |T|={} bound holds: {}",
            st.t,
            st.q,
            st.s_count,
            st.t_count,
            st.l_den_holds(&params, n)
        );
    }
    for r in 2..=5 {
        println!(
            "r={r}: pair lemma violations {:?}",
            l_pairs_violations(&params, r)?
        );
    }
    Ok(())
}
