//! The logarithmic-time reverse walk for `β = 1`, checked against the general
//! algorithm over a range of `n`.

use slow_walks::{characterize, reverse_walk_beta1, Params};

fn main() -> slow_walks::Result<()> {
    for alpha in 1..=3 {
        let params = Params::new(alpha, 1)?;
        let mut agree = 0;
        for n in (alpha as i128 + 1)..=20_000 {
            if reverse_walk_beta1(&params, &n)? == characterize(&params, &n) {
                agree += 1;
            }
        }
        println!("alpha={alpha}: reverse walk agrees on {agree} values of n");
    }
    let params = Params::new(1, 1)?;
    let n: num_bigint::BigInt = "5000966512101628011743180761388223".parse().unwrap();
    let cert = reverse_walk_beta1(&params, &n)?;
    let tr = cert.triple.as_ref().unwrap();
    println!(
        "(1,1) n={n}: s={} seed (b, a) = ({}, {})",
        cert.s, tr.b, tr.a
    );
    Ok(())
}
