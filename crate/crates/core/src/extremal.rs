//! Extremal constructions and bounds on `s(n)` and `p(n)`.

use std::cmp::Ordering;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::characterization::{characterize, PairCount, Triple};
use crate::quadratic::QuadInt;
use crate::sequences::{gamma_pow, gen_fib, Params};
use crate::{Error, Result};

/// `n_t = β·g_t·g_{t+1}`, whose triple is `(a_t, b_t, t)` with
/// `a_t = (β−1)·g_{t+1} + α·g_t` and `b_t = g_t`.
#[derive(Clone, Debug)]
pub struct ExtremalWitness {
    pub params: Params,
    pub t: u32,
    pub n: BigInt,
    pub a: BigInt,
    pub b: BigInt,
}

/// Builds `n_t` and checks it against [`characterize`].
pub fn extremal_witness(params: &Params, t: u32) -> Result<ExtremalWitness> {
    if t < 2 {
        return Err(Error::InvalidArgument(format!(
            "extremal witness needs t >= 2, got {t}"
        )));
    }
    let gt = gen_fib(params, t as usize);
    let gn = gen_fib(params, t as usize + 1);
    let beta = BigInt::from(params.beta());
    let w = ExtremalWitness {
        params: params.clone(),
        t,
        n: &beta * &gt * &gn,
        a: (&beta - 1) * &gn + &gt * params.alpha(),
        b: gt,
    };
    let cert = characterize(params, &w.n);
    let expect = Triple {
        t,
        a: w.a.clone(),
        b: w.b.clone(),
    };
    if cert.triple.as_ref() != Some(&expect) {
        return Err(Error::Inconsistency(format!(
            "n_{t}={} for {params} has certificate {:?}",
            w.n, cert.triple
        )));
    }
    Ok(w)
}

/// `α² + 2β − 1`, the largest finite value of `p(n)`; attained at `n_3`.
pub fn max_p_bound(params: &Params) -> u64 {
    params.alpha() * params.alpha() + 2 * params.beta() - 1
}

/// `⌈γ²⌉ − 1`, the largest value `p(n)` takes for infinitely many `n`.
///
/// Computed both as `⌈γ²⌉ − 1` and as `α² + β + ⌈αβ/γ⌉ − 1`; the two must agree.
pub fn recurrent_p_value(params: &Params) -> Result<u64> {
    let (alpha, beta) = (params.alpha() as i64, params.beta() as i64);
    let direct: BigInt = QuadInt::new(params, beta, alpha).ceil() - 1;
    // αβ/γ = −αλ = αγ − α².
    let via_ratio = alpha * alpha + beta + QuadInt::new(params, -alpha * alpha, alpha).ceil() - 1;
    if direct != via_ratio {
        return Err(Error::Inconsistency(format!(
            "ceil(gamma^2)-1 = {direct} but alpha^2+beta+ceil(alpha*beta/gamma)-1 = {via_ratio} for {params}"
        )));
    }
    Ok(direct.to_u64().expect("recurrent p fits u64"))
}

/// `k_t`: the largest integer `k` with `αβ·g_{t−2} > k·g_{t−1}`.
pub fn k_t(params: &Params, t: u32) -> BigInt {
    assert!(t >= 2, "k_t needs t >= 2");
    let num = gen_fib(params, t as usize - 2) * (params.alpha() * params.beta()) - 1;
    num_integer::Integer::div_floor(&num, &gen_fib(params, t as usize - 1))
}

/// `k_t` over a window of `t`, against its limit `⌈αβ/γ⌉ − 1`.
#[derive(Clone, Debug)]
pub struct KtReport {
    pub limit: BigInt,
    pub values: Vec<(u32, BigInt)>,
    /// First `t` from which every computed value equals the limit.
    pub onset: Option<u32>,
}

impl KtReport {
    pub fn stable_on(&self, window: RangeInclusive<u32>) -> bool {
        self.values
            .iter()
            .filter(|(t, _)| window.contains(t))
            .all(|(_, k)| *k == self.limit)
    }
}

/// Computes `k_t` for `t ∈ [2, t_max]`. When `γ` is an integer and divides `αβ`
/// the sequence keeps alternating around the limit and `onset` is `None`.
pub fn k_t_report(params: &Params, t_max: u32) -> KtReport {
    let alpha = params.alpha() as i64;
    let ratio = QuadInt::new(params, -alpha * alpha, alpha);
    let limit = ratio.ceil() - 1;
    let values: Vec<(u32, BigInt)> = (2..=t_max.max(2)).map(|t| (t, k_t(params, t))).collect();
    let tail = values.iter().rev().take_while(|(_, k)| *k == limit).count();
    // g_{t−2}/g_{t−1} straddles 1/γ, so an integral αβ/γ is crossed at every step.
    let onset = (tail > 0 && !ratio.is_integral_value()).then(|| values[values.len() - tail].0);
    KtReport {
        limit,
        values,
        onset,
    }
}

/// `α ≥ β`: whether `α² + 2β − 1` is attained infinitely often.
pub fn infinitely_max_iff(params: &Params) -> bool {
    params.alpha() >= params.beta()
}

/// How often `p(n) = α² + 2β − 1` in consecutive windows of `[1, n_scan]`.
#[derive(Clone, Debug, Serialize)]
pub struct AttainmentWindow {
    pub lo: u64,
    pub hi: u64,
    pub count: u64,
}

pub fn max_attainments(params: &Params, n_scan: u64, windows: u64) -> Vec<AttainmentWindow> {
    let windows = windows.clamp(1, n_scan.max(1));
    let max = PairCount::Finite(max_p_bound(params));
    let width = n_scan.div_ceil(windows);
    (0..windows)
        .map(|w| {
            let lo = w * width + 1;
            let hi = ((w + 1) * width).min(n_scan);
            let count = (lo..=hi)
                .into_par_iter()
                .filter(|&n| characterize(params, &(n as i128)).pair_count() == max)
                .count() as u64;
            AttainmentWindow { lo, hi, count }
        })
        .filter(|w| w.lo <= w.hi)
        .collect()
}

/// Largest `s ≥ 2` with `n > β·g_{s−1}·g_{s−2}`; a lower bound for `s(n)`.
pub fn s_lower_chicken(params: &Params, n: &BigInt) -> u32 {
    let beta = BigInt::from(params.beta());
    let mut s = 2u32;
    loop {
        let next = s as usize + 1;
        let threshold = &beta * gen_fib(params, next - 1) * gen_fib(params, next - 2);
        if *n <= threshold {
            return s;
        }
        s += 1;
    }
}

/// The envelope `½·log_γ n − 1 ≤ s(n) ≤ log_γ n + 2`; for `(1,1)` the lower
/// end is `½·log_φ n + 2`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Envelope {
    pub lower: f64,
    pub upper: f64,
}

fn is_fibonacci(params: &Params) -> bool {
    params.pair() == (1, 1)
}

/// Envelope for `s(n)`; requires `s(n) > 2`.
pub fn s_bounds(params: &Params, n: &BigInt) -> Result<Envelope> {
    if characterize(params, n).is_degenerate() {
        return Err(Error::Degenerate(n.to_string()));
    }
    let log = ln_big(n) / params.gamma().ln();
    let lower = if is_fibonacci(params) {
        0.5 * log + 2.0
    } else {
        0.5 * log - 1.0
    };
    Ok(Envelope {
        lower,
        upper: log + 2.0,
    })
}

fn ln_big(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().unwrap().ln();
    }
    let shift = bits - 64;
    (n >> shift).to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
}

/// Exact verdicts for the envelope and the chicken bound at one `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    pub upper: bool,
    pub lower: bool,
    pub chicken: bool,
}

impl BoundCheck {
    pub fn all(&self) -> bool {
        self.upper && self.lower && self.chicken
    }
}

/// `γ^k ≤ n`, decided in `ℤ[γ]`.
fn gamma_pow_le(params: &Params, k: u32, n: &BigInt) -> bool {
    gamma_pow(params, k).cmp_value(&QuadInt::int(params, n.clone())) != Ordering::Greater
}

/// Checks the bounds for `s = s(n) > 2` without logarithms:
/// `s ≤ log_γ n + 2 ⟺ γ^{s−2} ≤ n`, `s ≥ ½log_γ n − 1 ⟺ n ≤ γ^{2s+2}`,
/// and for `(1,1)` `s ≥ ½log_φ n + 2 ⟺ n ≤ φ^{2s−4}`.
pub fn check_bounds(params: &Params, n: &BigInt, s: u32) -> BoundCheck {
    let upper = gamma_pow_le(params, s - 2, n);
    let lower_exp = if is_fibonacci(params) {
        2 * s - 4
    } else {
        2 * s + 2
    };
    let lower =
        gamma_pow(params, lower_exp).cmp_value(&QuadInt::int(params, n.clone())) != Ordering::Less;
    BoundCheck {
        upper,
        lower,
        chicken: s_lower_chicken(params, n) <= s,
    }
}
