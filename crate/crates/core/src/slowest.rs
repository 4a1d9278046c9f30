//! Slowest walks across parameter pairs.
//!
//! For a family `T` of coprime pairs, `ss_T(n)` is the largest `s^{α,β}(n)`
//! over `T` and `S_T(n)` the set of pairs attaining it. Over all pairs the
//! attainers always lie in `R = {(1,1), (2,1), (1,2), (1,3), (1,4)}`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::characterization::characterize;
use crate::int::WalkInt;
use crate::quadratic::QuadInt;
use crate::sequences::{gamma_pow, gen_fib, Params};
use crate::{Error, Result};

/// A finite set of distinct coprime pairs, in the order given.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidSet {
    members: Vec<Params>,
}

impl ValidSet {
    pub fn new(members: Vec<Params>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::InvalidArgument("the pair set is empty".into()));
        }
        for (i, m) in members.iter().enumerate() {
            if members[..i].contains(m) {
                return Err(Error::InvalidArgument(format!("pair {m} is listed twice")));
            }
        }
        Ok(ValidSet { members })
    }

    pub fn members(&self) -> &[Params] {
        &self.members
    }

    pub fn contains(&self, params: &Params) -> bool {
        self.members.contains(params)
    }

    fn index_of(&self, params: &Params) -> Result<usize> {
        self.members
            .iter()
            .position(|m| m == params)
            .ok_or_else(|| {
                Error::InvalidArgument(format!("target {params} is not in the pair set"))
            })
    }
}

impl FromStr for ValidSet {
    type Err = Error;

    /// Parses `1:6,2:3`.
    fn from_str(s: &str) -> Result<Self> {
        let members = s
            .split(',')
            .map(|tok| tok.trim().parse::<Params>())
            .collect::<Result<Vec<_>>>()?;
        ValidSet::new(members)
    }
}

impl fmt::Display for ValidSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.members.iter().map(|m| m.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

/// `R = {(1,1), (2,1), (1,2), (1,3), (1,4)}`.
pub fn default_r() -> ValidSet {
    let members = [(1, 1), (2, 1), (1, 2), (1, 3), (1, 4)]
        .into_iter()
        .map(|(a, b)| Params::new(a, b).expect("R is coprime"))
        .collect();
    ValidSet { members }
}

/// `ss_T(n)` and `S_T(n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlowestReport {
    pub n: BigInt,
    pub ss: u32,
    /// Attaining pairs, sorted by `(α, β)`.
    pub achievers: Vec<Params>,
}

impl SlowestReport {
    /// `1:1;1:2`.
    pub fn achiever_tokens(&self) -> String {
        let parts: Vec<String> = self.achievers.iter().map(|p| p.to_string()).collect();
        parts.join(";")
    }

    pub fn pairs(&self) -> Vec<(u64, u64)> {
        self.achievers.iter().map(Params::pair).collect()
    }
}

/// `ss` and the member indices attaining it.
fn slowest_indices<I: WalkInt>(set: &ValidSet, n: &I) -> (u32, Vec<usize>) {
    let mut best = 0;
    let mut who = Vec::new();
    for (i, params) in set.members.iter().enumerate() {
        let s = characterize(params, n).s;
        match s.cmp(&best) {
            Ordering::Greater => {
                best = s;
                who.clear();
                who.push(i);
            }
            Ordering::Equal => who.push(i),
            Ordering::Less => {}
        }
    }
    (best, who)
}

/// Computes `ss_T(n)` and `S_T(n)` for `n > 1`.
pub fn ss_and_s(n: &BigInt, set: &ValidSet) -> Result<SlowestReport> {
    if *n <= BigInt::from(1) {
        return Err(Error::InvalidArgument(format!(
            "slowest walks need n > 1, got {n}"
        )));
    }
    let (ss, idx) = slowest_indices(set, n);
    let mut achievers: Vec<Params> = idx.into_iter().map(|i| set.members[i].clone()).collect();
    achievers.sort();
    Ok(SlowestReport {
        n: n.clone(),
        ss,
        achievers,
    })
}

/// Exact comparison of `γ_{p1}` with `γ_{p2}`: the sign of
/// `γ₁² − α₂γ₁ − β₂ = (β₁ − β₂) + (α₁ − α₂)γ₁`.
pub fn cmp_gamma(p1: &Params, p2: &Params) -> Ordering {
    let x = p1.beta() as i64 - p2.beta() as i64;
    let y = p1.alpha() as i64 - p2.alpha() as i64;
    QuadInt::new(p1, x, y).signum()
}

/// `Γ_T` and every member attaining it.
pub fn gamma_min(set: &ValidSet) -> (f64, Vec<Params>) {
    let mut best = vec![set.members[0].clone()];
    for m in &set.members[1..] {
        match cmp_gamma(m, &best[0]) {
            Ordering::Less => best = vec![m.clone()],
            Ordering::Equal => best.push(m.clone()),
            Ordering::Greater => {}
        }
    }
    best.sort();
    (best[0].gamma(), best)
}

/// Members passing the two `γ` filters relative to `Γ = Γ_T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCandidates {
    /// `log_Γ γ < 4`: a superset of the pairs that can attain `ss_T` infinitely often.
    pub proof_superset: Vec<Params>,
    /// `γ < Γ²`: the conjectured exact set.
    pub conjectured: Vec<Params>,
}

/// `γ_x < Γ^k`, decided in the ring of `Γ` as the sign of `f_x(Y) = Y² − α_x Y − β_x`
/// at `Y = Γ^k`.
fn gamma_below_power(x: &Params, base: &Params, k: u32) -> bool {
    let y = gamma_pow(base, k);
    let f = &(&(&y * &y) - &y.scale(&BigInt::from(x.alpha()))) - &QuadInt::int(base, x.beta());
    f.signum() == Ordering::Greater
}

pub fn finite_r_t(set: &ValidSet) -> FiniteCandidates {
    let (_, argmin) = gamma_min(set);
    let base = &argmin[0];
    let keep = |k| {
        set.members
            .iter()
            .filter(|m| gamma_below_power(m, base, k))
            .cloned()
            .collect()
    };
    FiniteCandidates {
        proof_superset: keep(4),
        conjectured: keep(2),
    }
}

/// Which counting series to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesKind {
    /// `i(n) = #{2 ≤ m ≤ n : target ∈ S_T(m)}`.
    Inclusive,
    /// `e(n) = #{2 ≤ m ≤ n : S_T(m) = {target}} / n`.
    Exclusive,
}

/// A sampled point: `n` and the raw count up to `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SeriesRow {
    pub n: u64,
    pub count: u64,
}

impl SeriesRow {
    /// The count for `i`, the normalized frequency for `e`.
    pub fn value(&self, kind: SeriesKind) -> f64 {
        match kind {
            SeriesKind::Inclusive => self.count as f64,
            SeriesKind::Exclusive => {
                if self.n == 0 {
                    0.0
                } else {
                    self.count as f64 / self.n as f64
                }
            }
        }
    }
}

const CHUNK: u64 = 1 << 14;

/// Samples the series at every multiple of `stride` and at `n_max`.
///
/// `resume` continues after an already emitted row. Work is spread over the
/// current rayon pool; the rows do not depend on its size.
pub fn series(
    set: &ValidSet,
    target: &Params,
    kind: SeriesKind,
    n_max: u64,
    stride: u64,
    resume: Option<SeriesRow>,
) -> Result<Vec<SeriesRow>> {
    if stride == 0 {
        return Err(Error::InvalidArgument("stride must be >= 1".into()));
    }
    if n_max as i128 >= crate::int::FAST_LIMIT {
        return Err(Error::InvalidArgument(format!(
            "n_max={n_max} is beyond the scan limit 2^40"
        )));
    }
    let who = set.index_of(target)?;
    let start = resume.unwrap_or(SeriesRow { n: 1, count: 0 });
    let mut count = start.count;
    let mut rows = Vec::new();
    let mut lo = start.n + 1;
    while lo <= n_max {
        let hi = (lo + CHUNK - 1).min(n_max);
        let hits: Vec<bool> = (lo..=hi)
            .into_par_iter()
            .map(|m| {
                let (_, idx) = slowest_indices(set, &(m as i128));
                match kind {
                    SeriesKind::Inclusive => idx.contains(&who),
                    SeriesKind::Exclusive => idx == [who],
                }
            })
            .collect();
        for (m, hit) in (lo..=hi).zip(hits) {
            count += hit as u64;
            if m % stride == 0 || m == n_max {
                rows.push(SeriesRow { n: m, count });
            }
        }
        lo = hi + 1;
    }
    Ok(rows)
}

pub fn i_series(
    set: &ValidSet,
    target: &Params,
    n_max: u64,
    stride: u64,
) -> Result<Vec<SeriesRow>> {
    series(set, target, SeriesKind::Inclusive, n_max, stride, None)
}

pub fn e_series(
    set: &ValidSet,
    target: &Params,
    n_max: u64,
    stride: u64,
) -> Result<Vec<SeriesRow>> {
    series(set, target, SeriesKind::Exclusive, n_max, stride, None)
}

/// Least-squares slope of `log i` against `log n` over rows with
/// `n ≥ n_max / 10` and a positive count.
pub fn top_decade_slope(rows: &[SeriesRow]) -> Option<f64> {
    let n_max = rows.last()?.n;
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.n * 10 >= n_max && r.count > 0)
        .map(|r| ((r.n as f64).ln(), (r.count as f64).ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let k = pts.len() as f64;
    let (sx, sy) = pts.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
    let (mx, my) = (sx / k, sy / k);
    let (num, den) = pts.iter().fold((0.0, 0.0), |(a, b), (x, y)| {
        (a + (x - mx) * (y - my), b + (x - mx) * (x - mx))
    });
    (den > 0.0).then(|| num / den)
}

/// Values of `n` whose achiever set over `R` is a single pair other than
/// `(1,1)`. The `(1,4)` witness is the 34-digit `g₈₃` of `(1,4)`.
pub fn exclusive_witness_values() -> Vec<(BigInt, Params)> {
    let pr = |a, b| Params::new(a, b).expect("coprime");
    let p14 = pr(1, 4);
    let big = gen_fib(&p14, 83);
    vec![
        (BigInt::from(171), pr(1, 2)),
        (BigInt::from(22619537), pr(2, 1)),
        (BigInt::from(11228332), pr(1, 3)),
        (big, p14),
    ]
}

/// Recomputes `S_R(n)` for each value of [`exclusive_witness_values`].
pub fn exclusive_witnesses() -> Result<Vec<SlowestReport>> {
    let r = default_r();
    exclusive_witness_values()
        .into_iter()
        .map(|(n, pair)| {
            let report = ss_and_s(&n, &r)?;
            if report.achievers != [pair.clone()] {
                return Err(Error::Inconsistency(format!(
                    "S({n}) = {{{}}}, expected {{{pair}}}",
                    report.achiever_tokens()
                )));
            }
            Ok(report)
        })
        .collect()
}
