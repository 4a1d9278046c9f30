//! Certificate and good pairs for a few `n`, with the next walk term of each pair.
//!
//! `cargo run --example good_pairs -- 2 1 60`

use num_bigint::BigInt;
use slow_walks::characterization::w_next_values;
use slow_walks::{characterize, enumerate_good_pairs, Params};

fn main() -> slow_walks::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (alpha, beta, n) = match args.as_slice() {
        [a, b, n] => (
            a.parse().unwrap(),
            b.parse().unwrap(),
            n.parse::<BigInt>().unwrap(),
        ),
        _ => (1, 1, BigInt::from(6)),
    };
    let params = Params::new(alpha, beta)?;
    let cert = characterize(&params, &n);
    let Some(tr) = &cert.triple else {
        println!("s({n}) = 2: every (x, {n}) is {n}-good");
        return Ok(());
    };
    println!(
        "({alpha},{beta}) n={n}: s={} t={} a={} b={}",
        cert.s, tr.t, tr.a, tr.b
    );
    let family = enumerate_good_pairs(&cert)?;
    let next = w_next_values(&cert)?;
    for ((b, a), (k, w)) in family.pairs.iter().zip(next) {
        println!("  k={k}: (b, a) = ({b}, {a}), w_(s+1) = {w}");
    }
    Ok(())
}
