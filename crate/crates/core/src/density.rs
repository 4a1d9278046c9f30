//! Densities of `S_p = {m : p(m) > p}` at the points `n_{c,r}`.
//!
//! Membership in `S_p` depends only on where `a(m)` falls relative to bounds
//! that depend on `(b(m), t(m))`, so `|S_p ∩ [n]|` splits into strata
//! `S(n, q, t)` indexed by `0 ≤ q < β`. Each stratum is counted exactly from
//! residues mod `β`; summing them gives an `O(√n)` counter that is checked
//! against the direct scan over every `m ≤ n`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;

use crate::characterization::{characterize, p_of_n, PairCount};
use crate::extremal::recurrent_p_value;
use crate::int::FAST_LIMIT;
use crate::quadratic::QuadInt;
use crate::sequences::{gamma_pow, Params};
use crate::{Error, Result};

/// Numerator and denominator of the binary value of `c`.
fn exact_c(c: f64) -> Result<(BigInt, BigInt)> {
    let r = BigRational::from_float(c)
        .filter(|r| r.is_positive())
        .ok_or_else(|| {
            Error::InvalidArgument(format!("c must be a positive finite number, got {c}"))
        })?;
    Ok((r.numer().clone(), r.denom().clone()))
}

/// `n_{c,r} = ⌊cβ·γ^{2r+1} / (γ−λ)²⌋`, exact for the binary value of `c`.
pub fn n_cr(params: &Params, c: f64, r: u32) -> Result<BigInt> {
    if c < 1.0 {
        return Err(Error::InvalidArgument(format!("c must be >= 1, got {c}")));
    }
    if r < 2 {
        return Err(Error::InvalidArgument(format!("r must be >= 2, got {r}")));
    }
    let (num, den) = exact_c(c)?;
    let scaled = gamma_pow(params, 2 * r + 1).scale(&(num * params.beta()));
    Ok(scaled.floor_div(&(den * params.disc())))
}

/// `d` and `δ = βp/γ − γd` with `d` the least integer making `δ ≤ α`.
#[derive(Clone, Debug)]
pub struct DeltaOffset {
    pub d: i64,
    /// `δ` as an exact element of `ℤ[γ]`: `(p − d)γ − pα`, using `β/γ = γ − α`.
    pub delta: QuadInt,
}

impl DeltaOffset {
    pub fn delta_f64(&self) -> f64 {
        self.delta.to_f64()
    }
}

fn delta_at(params: &Params, p: u64, d: i64) -> QuadInt {
    let p = p as i64;
    QuadInt::new(params, -p * params.alpha() as i64, p - d)
}

/// Computes `(d, δ)`. For `1 ≤ p ≤ ⌈γ²⌉ − 2` also checks `0 ≤ d ≤ β − 1` and
/// `α − γ < δ ≤ α`.
pub fn d_delta(params: &Params, p: u64) -> Result<DeltaOffset> {
    if p < 1 {
        return Err(Error::InvalidArgument("p must be >= 1".into()));
    }
    let alpha = QuadInt::int(params, params.alpha());
    let fits = |d: i64| delta_at(params, p, d).cmp_value(&alpha) != Ordering::Greater;
    // δ decreases by γ per unit of d; start from the float estimate and correct.
    let gamma = params.gamma();
    let mut d = ((p as f64 * (gamma - params.alpha() as f64) - params.alpha() as f64) / gamma)
        .ceil() as i64;
    while !fits(d) {
        d += 1;
    }
    while fits(d - 1) {
        d -= 1;
    }
    let out = DeltaOffset {
        d,
        delta: delta_at(params, p, d),
    };
    if p + 1 < recurrent_p_value(params)? {
        let lower = QuadInt::new(params, params.alpha() as i64, -1);
        let ok =
            d >= 0 && d < params.beta() as i64 && out.delta.cmp_value(&lower) == Ordering::Greater;
        if !ok {
            return Err(Error::Inconsistency(format!(
                "d={d}, delta={} out of range for {params}, p={p}",
                out.delta_f64()
            )));
        }
    }
    Ok(out)
}

/// `c ≤ k·γ/α`, decided exactly.
fn c_within(params: &Params, c: f64, k: u64) -> Result<bool> {
    let (num, den) = exact_c(c)?;
    let v = QuadInt::new(params, -num * params.alpha(), den * k);
    Ok(v.signum() != Ordering::Less)
}

fn check_c(params: &Params, c: f64, k: u64) -> Result<()> {
    if c.is_nan() || c < 1.0 || !c_within(params, c, k)? {
        return Err(Error::Regime(format!(
            "c={c} outside [1, {k}*gamma/alpha] for {params}"
        )));
    }
    Ok(())
}

fn check_p_range(params: &Params, p: u64, low: u64) -> Result<()> {
    let high = recurrent_p_value(params)?.saturating_sub(1);
    if p < low || p > high {
        return Err(Error::Regime(format!(
            "p={p} outside [{low}, {high}] for {params}"
        )));
    }
    Ok(())
}

fn rel_close(x: f64, y: f64) -> bool {
    (x - y).abs() <= 1e-12 * x.abs().max(y.abs())
}

/// `(α − δ)²/α = α − 2δ + δ²/α`, without the cancellation of the expanded form.
fn shape(params: &Params, delta: &QuadInt) -> f64 {
    let diff = (&QuadInt::int(params, params.alpha()) - delta).to_f64();
    diff * diff / params.alpha() as f64
}

/// The main term of the density of `S_p` at `n_{c,r}`.
///
/// Requires `β ≤ p ≤ ⌈γ²⌉ − 2` and `1 ≤ c ≤ (p − β + 1)γ/α`. Where the simpler
/// closed forms apply, they are evaluated too and must agree to `1e-12`.
pub fn theory_density(params: &Params, p: u64, c: f64) -> Result<f64> {
    let beta = params.beta();
    check_p_range(params, p, beta)?;
    check_c(params, c, p - beta + 1)?;
    let DeltaOffset { d, delta } = d_delta(params, p)?;
    let g = params.gamma();
    let (bf, df) = (beta as f64, d as f64);
    let tail: f64 = ((d + 1) as u64..beta)
        .map(|q| (beta - q) as f64)
        .sum::<f64>()
        / (bf * bf);
    let main = (2.0 * bf - 2.0 * df - 1.0) * g * shape(params, &delta)
        / (2.0 * bf * bf * (g * g - 1.0))
        + g * g / (g * g - 1.0) * tail;
    let value = main / c;
    if d == beta as i64 - 1 {
        if let Ok(simple) = theory_density_plarge(params, p, c) {
            if !rel_close(value, simple) {
                return Err(Error::Inconsistency(format!(
                    "density forms disagree for {params}, p={p}, c={c}: {value} vs {simple}"
                )));
            }
        }
    }
    if beta == 1 {
        if let Ok(simple) = theory_density_beta1(params, p, c) {
            if !rel_close(value, simple) {
                return Err(Error::Inconsistency(format!(
                    "density forms disagree for {params}, p={p}, c={c}: {value} vs {simple}"
                )));
            }
        }
    }
    Ok(value)
}

/// Simplified main term with `δ = βp/γ − γ(β − 1)`, valid for
/// `max(β, ⌊(1 − 1/β)γ²⌋) ≤ p ≤ ⌈γ²⌉ − 2`.
pub fn theory_density_plarge(params: &Params, p: u64, c: f64) -> Result<f64> {
    let beta = params.beta();
    let b = beta as i64;
    // ⌊(β − 1)(αγ + β)/β⌋
    let threshold = QuadInt::new(params, (b - 1) * b, (b - 1) * params.alpha() as i64)
        .floor_div(&BigInt::from(beta))
        .to_u64()
        .unwrap_or(0);
    check_p_range(params, p, beta.max(threshold))?;
    check_c(params, c, p - beta + 1)?;
    let delta = delta_at(params, p, b - 1);
    let d = d_delta(params, p)?.d;
    if d != b - 1 {
        return Err(Error::Inconsistency(format!(
            "p={p} passes the large-p threshold for {params} but d={d}"
        )));
    }
    let g = params.gamma();
    let bf = beta as f64;
    Ok(g * shape(params, &delta) / (2.0 * c * bf * bf * (g * g - 1.0)))
}

/// `½c⁻¹(1 − p/(αγ))²` for `β = 1`, `1 ≤ p ≤ α²`, `1 ≤ c ≤ pγ/α`.
pub fn theory_density_beta1(params: &Params, p: u64, c: f64) -> Result<f64> {
    if params.beta() != 1 {
        return Err(Error::NotBetaOne(params.beta()));
    }
    let alpha = params.alpha();
    if p < 1 || p > alpha * alpha {
        return Err(Error::Regime(format!(
            "p={p} outside [1, {}] for {params}",
            alpha * alpha
        )));
    }
    check_c(params, c, p)?;
    let g = params.gamma();
    let x = 1.0 - p as f64 / (alpha as f64 * g);
    let value = 0.5 * x * x / c;
    if p == alpha * alpha {
        let alt = 0.5 / (c * g.powi(4));
        if !rel_close(value, alt) {
            return Err(Error::Inconsistency(format!(
                "beta=1 forms disagree for {params}, p={p}: {value} vs {alt}"
            )));
        }
    }
    Ok(value)
}

/// Exact sizes of one stratum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct StrataCount {
    pub q: u64,
    pub t: u32,
    /// `|S(n, q, t)|`.
    pub s_count: u64,
    /// `|T(n, q, t)|`: the same lattice points without the divisibility filter.
    pub t_count: u64,
}

impl StrataCount {
    /// `|S − (β−q)/β·T| ≤ β·min(g_t, n/g_{t−1})`, cleared of denominators.
    pub fn l_den_holds(&self, params: &Params, n: u64) -> bool {
        let beta = params.beta() as i128;
        let gap =
            (beta * self.s_count as i128 - (beta - self.q as i128) * self.t_count as i128).abs();
        let (gt, gp) = fibs_i128(params, self.t);
        gap <= beta * beta * gt || gap * gp <= beta * beta * n as i128
    }
}

fn fibs_i128(params: &Params, t: u32) -> (i128, i128) {
    let t = t as usize;
    params
        .fibs()
        .with_view(t + 1, |v| (v.g::<i128>(t), v.g::<i128>(t - 1)))
}

fn fib3(params: &Params, t: u32) -> (i128, i128, i128) {
    let t = t as usize;
    params.fibs().with_view(t + 1, |v| {
        (v.g::<i128>(t - 1), v.g::<i128>(t), v.g::<i128>(t + 1))
    })
}

fn check_scan_n(n: u64) -> Result<i128> {
    let n = n as i128;
    if n >= FAST_LIMIT {
        return Err(Error::InvalidArgument(format!(
            "n={n} is beyond the scan limit 2^40"
        )));
    }
    Ok(n)
}

/// Integers in `(lo, hi]` congruent to `r` mod `m`.
fn count_residue(lo: i128, hi: i128, r: i128, m: i128) -> i128 {
    (hi - r).div_euclid(m) - (lo - r).div_euclid(m)
}

/// `(â⁻, â⁺)` for one `b`, with all three bounds integral.
fn stratum_bounds(
    params: &Params,
    p: u64,
    n: i128,
    q: i128,
    b: i128,
    g: (i128, i128, i128),
) -> (i128, i128) {
    let (gp, gt, gn) = g;
    let (alpha, beta) = (params.alpha() as i128, params.beta() as i128);
    let lo = 0.max(beta * p as i128 * gp).max((q - 1) * gn + alpha * b);
    let hi = ((beta - 1) * gn + alpha * b)
        .min(q * gn + alpha * b)
        .min((n - beta * b * gp).div_euclid(gt));
    (lo, hi)
}

fn stratum(params: &Params, p: u64, n: i128, q: u64, t: u32) -> StrataCount {
    let g @ (gp, gt, gn) = fib3(params, t);
    let (alpha, beta) = (params.alpha() as i128, params.beta() as i128);
    let q_i = q as i128;
    let b_max = gt.min((n - gt) / (beta * gp)).max(0);
    let (mut s_count, mut t_count) = (0i128, 0i128);
    for b in 1..=b_max {
        let (lo, hi) = stratum_bounds(params, p, n, q_i, b, g);
        if hi <= lo {
            continue;
        }
        t_count += hi - lo;
        // a is excluded when a ≡ αb + ℓ·g_{t+1} (mod β) for some ℓ < q.
        let excluded: i128 = (0..q_i)
            .map(|l| count_residue(lo, hi, (alpha * b + l * gn).rem_euclid(beta), beta))
            .sum();
        s_count += hi - lo - excluded;
    }
    StrataCount {
        q,
        t,
        s_count: s_count as u64,
        t_count: t_count as u64,
    }
}

/// `|S(n,q,t)|` and `|T(n,q,t)|` for `S = S_p`.
pub fn strata_counts(params: &Params, p: u64, n: u64, q: u64, t: u32) -> Result<StrataCount> {
    if q >= params.beta() || t < 2 {
        return Err(Error::InvalidArgument(format!(
            "stratum needs 0 <= q < beta and t >= 2 (got q={q}, t={t})"
        )));
    }
    Ok(stratum(params, p, check_scan_n(n)?, q, t))
}

/// Every stratum that can be nonempty for `m ≤ n`: `t` up to the last index
/// with `g_t + β·g_{t−1} ≤ n`.
pub fn all_strata(params: &Params, p: u64, n: u64) -> Result<Vec<StrataCount>> {
    let n = check_scan_n(n)?;
    let beta = params.beta() as i128;
    let mut out = Vec::new();
    let mut t = 2u32;
    loop {
        let (gp, gt, _) = fib3(params, t);
        if gt + beta * gp > n {
            return Ok(out);
        }
        out.extend((0..params.beta()).map(|q| stratum(params, p, n, q, t)));
        t += 1;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountMethod {
    /// Evaluate `p(m)` for every `m ≤ n`.
    Direct,
    /// Sum exact stratum counts, plus the `m ≤ αβ` with `s(m) = 2`.
    Stratified,
}

/// `|S_p ∩ [n]|`. Members with `s(m) = 2` count for every `p`.
pub fn empirical_sp_count(params: &Params, p: u64, n: u64, method: CountMethod) -> Result<u64> {
    match method {
        CountMethod::Direct => {
            check_scan_n(n)?;
            Ok((1..=n)
                .into_par_iter()
                .filter(|&m| p_of_n(params, &(m as i128)).exceeds(p))
                .count() as u64)
        }
        CountMethod::Stratified => {
            let strata: u64 = all_strata(params, p, n)?.iter().map(|s| s.s_count).sum();
            Ok(strata + degenerate_count(params, n))
        }
    }
}

/// `#{m ≤ n : s(m) = 2}`; all such `m` are at most `αβ`.
fn degenerate_count(params: &Params, n: u64) -> u64 {
    let cap = n.min(params.alpha() * params.beta());
    (1..=cap)
        .filter(|&m| characterize(params, &(m as i128)).is_degenerate())
        .count() as u64
}

/// `17` evenly spaced values of `c` in `[1, γ²]`, or `points` of them.
pub fn default_c_grid(params: &Params, points: usize) -> Vec<f64> {
    let g = params.gamma();
    let top = g * g;
    match points {
        0 => Vec::new(),
        1 => vec![1.0],
        k => (0..k)
            .map(|i| 1.0 + (top - 1.0) * i as f64 / (k - 1) as f64)
            .collect(),
    }
}

/// A density scan: `S_p` at `n_{c,r}` for each `c` in the grid.
#[derive(Clone, Debug)]
pub struct DensityJob {
    pub params: Params,
    pub p: u64,
    pub r: u32,
    pub c_grid: Vec<f64>,
}

impl DensityJob {
    pub fn new(params: &Params, p: u64, r: u32, c_grid: Vec<f64>) -> Result<Self> {
        if r < 2 {
            return Err(Error::InvalidArgument(format!("r must be >= 2, got {r}")));
        }
        if let Some(bad) = c_grid.iter().find(|c| !c.is_finite() || **c < 1.0) {
            return Err(Error::InvalidArgument(format!(
                "grid value {bad} is not a finite c >= 1"
            )));
        }
        let mut c_grid = c_grid;
        c_grid.sort_by(f64::total_cmp);
        Ok(DensityJob {
            params: params.clone(),
            p,
            r,
            c_grid,
        })
    }
}

/// One point of a density curve.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DensityRow {
    pub alpha: u64,
    pub beta: u64,
    pub p: u64,
    pub r: u32,
    pub c: f64,
    pub n_cr: u64,
    pub count: u64,
    pub empirical_density: f64,
    /// `None` where the closed form does not apply.
    pub theory_density: Option<f64>,
}

/// Theory value if `(p, c)` is inside the regime, `None` if outside.
pub fn theory_if_applicable(params: &Params, p: u64, c: f64) -> Result<Option<f64>> {
    match theory_density(params, p, c) {
        Ok(v) => Ok(Some(v)),
        Err(Error::Regime(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Evaluates the job, in ascending `c`. Counts come from one direct scan up
/// to the largest `n_{c,r}` and are cross-checked against the stratified
/// count at every point.
pub fn density_curve(job: &DensityJob) -> Result<Vec<DensityRow>> {
    density_curve_from(job, 0)
}

/// As [`density_curve`], skipping the first `skip` grid points.
pub fn density_curve_from(job: &DensityJob, skip: usize) -> Result<Vec<DensityRow>> {
    let params = &job.params;
    let grid = &job.c_grid[skip.min(job.c_grid.len())..];
    let ns = grid
        .iter()
        .map(|&c| {
            n_cr(params, c, job.r)?
                .to_u64()
                .filter(|&n| (n as i128) < FAST_LIMIT)
                .ok_or_else(|| {
                    Error::InvalidArgument(format!(
                        "n_cr for c={c}, r={} is beyond the scan limit",
                        job.r
                    ))
                })
        })
        .collect::<Result<Vec<u64>>>()?;
    let top = ns.iter().copied().max().unwrap_or(0);
    let members: Vec<u64> = (1..=top)
        .into_par_iter()
        .filter(|&m| p_of_n(params, &(m as i128)).exceeds(job.p))
        .collect();
    grid.iter()
        .zip(ns)
        .map(|(&c, n)| {
            let count = members.partition_point(|&m| m <= n) as u64;
            let stratified = empirical_sp_count(params, job.p, n, CountMethod::Stratified)?;
            if stratified != count {
                return Err(Error::Inconsistency(format!(
                    "direct count {count} != stratified count {stratified} at n={n} for {params}, p={}",
                    job.p
                )));
            }
            Ok(DensityRow {
                alpha: params.alpha(),
                beta: params.beta(),
                p: job.p,
                r: job.r,
                c,
                n_cr: n,
                count,
                empirical_density: if n == 0 { 0.0 } else { count as f64 / n as f64 },
                theory_density: theory_if_applicable(params, job.p, c)?,
            })
        })
        .collect()
}

/// All `m ≤ β·g_r·g_{r+1}` with finite `p(m) > β` and `t(m) > r`. There
/// should be none.
pub fn l_pairs_violations(params: &Params, r: u32) -> Result<Vec<u64>> {
    let (_, gr, gn) = fib3(params, r);
    let n_r = params.beta() as i128 * gr * gn;
    let n = check_scan_n(n_r as u64)? as u64;
    let beta = params.beta();
    Ok((1..=n)
        .into_par_iter()
        .filter(|&m| {
            let cert = characterize(params, &(m as i128));
            let big_p = matches!(cert.pair_count(), PairCount::Finite(k) if k > beta);
            big_p && cert.triple.as_ref().is_some_and(|tr| tr.t > r)
        })
        .collect())
}
