//! Slowest walks over a set of pairs: achiever sets, the minimal root and the
//! finite candidate filters.

use num_bigint::BigInt;
use slow_walks::slowest::{
    default_r, exclusive_witnesses, finite_r_t, gamma_min, ss_and_s, ValidSet,
};

fn main() -> slow_walks::Result<()> {
    let r = default_r();
    for n in ["32", "40", "3363", "5307721328585529"] {
        let n: BigInt = n.parse().unwrap();
        let rep = ss_and_s(&n, &r)?;
        println!(
            "S({n}) = {{{}}} with ss = {}",
            rep.achiever_tokens(),
            rep.ss
        );
    }
    for rep in exclusive_witnesses()? {
        println!("S({}) = {{{}}}", rep.n, rep.achiever_tokens());
    }

    let t: ValidSet = "1:6,2:3,1:2,3:4".parse()?;
    let (gamma, argmin) = gamma_min(&t);
    println!("T = {t}: minimal gamma {gamma:.6} at {argmin:?}");
    let cands = finite_r_t(&t);
    println!("  log_Gamma gamma < 4: {:?}", cands.proof_superset);
    println!("  gamma < Gamma^2:     {:?}", cands.conjectured);
    Ok(())
}
