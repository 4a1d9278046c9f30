//! Slow `(α, β)`-walks.
//!
//! An `(α, β)`-walk is a sequence of positive integers with
//! `w[k+2] = α·w[k+1] + β·w[k]`. A walk is *n-slow* when it reaches `n` at the
//! latest possible index `s(n)`. This crate computes, exactly and for integers
//! of any size:
//!
//! - the generalized Fibonacci numbers `g_k`, walk terms and `⌊γn⌋`
//!   ([`sequences`], backed by exact arithmetic in `ℤ[γ]` from [`quadratic`]);
//! - `s(n)`, the canonical triple `(a, b, t)`, every n-good pair and the pair
//!   count `p(n)`, together with two brute-force oracles and the `β = 1`
//!   reverse-walk algorithm ([`characterization`]);
//! - extremal witnesses and two-sided bounds on `s(n)` and `p(n)` ([`extremal`]);
//! - exact and stratified counts of `S_p = {m : p(m) > p}` and the closed-form
//!   densities they are compared against ([`density`]);
//! - slowest walks `ss_T(n)` / `S_T(n)` over sets of parameter pairs and the
//!   `i`/`e` counting series ([`slowest`]);
//! - CSV / JSON row formats with resumable output ([`io`]) and a self-test
//!   runner ([`selftest`]).
//!
//! Most entry points are generic over [`WalkInt`], implemented for `i128`
//! (fast path for `n < 2^40`) and [`num_bigint::BigInt`].
//!
//! ```
//! use slow_walks::{characterize, enumerate_good_pairs, Params};
//!
//! let fib = Params::new(1, 1).unwrap();
//! let cert = characterize(&fib, &6i128);
//! assert_eq!(cert.s, 4);
//! let family = enumerate_good_pairs(&cert).unwrap();
//! assert_eq!(family.pairs, vec![(2, 2), (4, 1)]);
//! ```

pub mod characterization;
pub mod density;
mod error;
pub mod extremal;
mod int;
pub mod io;
pub mod quadratic;
pub mod selftest;
pub mod sequences;
pub mod slowest;

pub use characterization::{
    characterize, enumerate_good_pairs, is_t_divisible, p_of_n, reverse_walk_beta1, Certificate,
    GoodPairFamily, PairCount, Triple,
};
pub use error::{Error, Result};
pub use int::WalkInt;
pub use quadratic::QuadInt;
pub use sequences::{floor_gamma_n, gen_fib, walk_term, GenFibTable, Params, Walk};
