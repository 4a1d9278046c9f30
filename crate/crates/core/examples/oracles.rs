//! The fast characterization against the two independent oracles.

use slow_walks::characterization::{all_triples, s_oracle_bruteforce, s_oracle_diophantine};
use slow_walks::{characterize, Params};

fn main() -> slow_walks::Result<()> {
    for (alpha, beta) in [(1, 1), (2, 3), (1, 5)] {
        let params = Params::new(alpha, beta)?;
        let mut mismatches = 0;
        for n in 1..=1000u64 {
            let s = characterize(&params, &(n as i128)).s;
            if s != s_oracle_diophantine(&params, n).s {
                mismatches += 1;
            }
            if n <= 100 && s != s_oracle_bruteforce(&params, n, 100)?.s {
                mismatches += 1;
            }
            if all_triples(&params, n).len() > 1 {
                mismatches += 1;
            }
        }
        println!("({alpha},{beta}): {mismatches} disagreements for n <= 1000");
    }
    Ok(())
}
