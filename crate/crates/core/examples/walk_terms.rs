//! Generalized Fibonacci numbers, walk terms and `⌊γn⌋` computed exactly.

use num_bigint::BigInt;
use slow_walks::{floor_gamma_n, gen_fib, walk_term, Params, Walk};

fn main() -> slow_walks::Result<()> {
    for (alpha, beta) in [(1, 1), (2, 1), (1, 2), (2, 3)] {
        let params = Params::new(alpha, beta)?;
        let g: Vec<String> = (0..=10).map(|k| gen_fib(&params, k).to_string()).collect();
        println!("({alpha},{beta}) g_0..g_10: {}", g.join(" "));
        println!(
            "  gamma = {:.12}, g_200 has {} digits",
            params.gamma(),
            gen_fib(&params, 200).to_string().len()
        );
    }

    let fib = Params::new(1, 1)?;
    let mut walk = Walk::new(&fib, BigInt::from(2), BigInt::from(2));
    let terms: Vec<String> = (1..=8).map(|k| walk.term(k).to_string()).collect();
    println!("walk from (2, 2): {}", terms.join(" "));
    println!(
        "index of 6 in that walk: {:?}",
        walk.index_of(&BigInt::from(6))
    );
    let w = walk_term(&fib, &BigInt::from(4), &BigInt::from(1), 4)?;
    println!("w_4(4, 1) = {w}");

    let n: BigInt = "1000000000000000000000000000000".parse().unwrap();
    let gm = floor_gamma_n(&fib, &n);
    println!("floor(phi * 10^30) = {}", gm.floor);
    Ok(())
}
