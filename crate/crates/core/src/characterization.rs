//! `s(n)`, the canonical triple `(a, b, t)` and the n-good pairs.
//!
//! For `s(n) > 2` there is exactly one triple with
//!
//! - `n = a·g_t + β·b·g_{t−1}`,
//! - `t ≥ 2`, `1 ≤ b ≤ g_t`, `a ≤ (β−1)·g_{t+1} + α·b`,
//! - `a − α·b − ℓ·g_{t+1}` never a positive multiple of `β` (`ℓ ≥ 0`),
//!
//! and then `s(n) = t + 1` and the n-good pairs are exactly
//! `(b + k·g_t, a − k·β·g_{t−1})` for `k ≥ 0` while the second coordinate
//! stays positive. [`characterize`] finds the triple by solving the linear
//! congruence for each `t` in turn; the oracles in this module recompute
//! `s(n)` from the definition for cross-checking.

use std::fmt;

use num_bigint::BigInt;

use crate::int::WalkInt;
use crate::quadratic::QuadInt;
use crate::sequences::{floor_gamma_n, walk_term, FibView, Params, Walk};
use crate::{Error, Result};

/// The integers `(a, b, t)` of the characterization.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Triple<I> {
    pub t: u32,
    pub a: I,
    pub b: I,
}

/// Result of [`characterize`]: `s(n)` and, unless `s(n) = 2`, its triple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate<I = BigInt> {
    pub params: Params,
    pub n: I,
    pub s: u32,
    /// `None` exactly when `s(n) = 2`, where every `(x, n)` is n-good.
    pub triple: Option<Triple<I>>,
}

impl<I: WalkInt> Certificate<I> {
    pub fn is_degenerate(&self) -> bool {
        self.triple.is_none()
    }

    fn require_triple(&self) -> Result<&Triple<I>> {
        self.triple
            .as_ref()
            .ok_or_else(|| Error::Degenerate(self.n.to_string()))
    }

    /// `p(n)`.
    pub fn pair_count(&self) -> PairCount {
        match &self.triple {
            None => PairCount::Unbounded,
            Some(tr) => {
                let step = I::lift(self.params.beta()) * fib::<I>(&self.params, tr.t - 1);
                let k = (tr.a.clone() - I::one()).div_floor(&step);
                PairCount::Finite(k.to_u64().expect("pair count fits u64") + 1)
            }
        }
    }

    pub fn to_big(&self) -> Certificate<BigInt> {
        Certificate {
            params: self.params.clone(),
            n: self.n.to_big(),
            s: self.s,
            triple: self.triple.as_ref().map(|tr| Triple {
                t: tr.t,
                a: tr.a.to_big(),
                b: tr.b.to_big(),
            }),
        }
    }
}

/// Number of n-good pairs. `Unbounded` when `s(n) = 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PairCount {
    Finite(u64),
    Unbounded,
}

impl PairCount {
    /// Membership in `S_p = {m : p(m) > p}`.
    pub fn exceeds(self, p: u64) -> bool {
        match self {
            PairCount::Finite(c) => c > p,
            PairCount::Unbounded => true,
        }
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            PairCount::Finite(c) => Some(c),
            PairCount::Unbounded => None,
        }
    }
}

impl fmt::Display for PairCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PairCount::Finite(c) => write!(f, "{c}"),
            PairCount::Unbounded => f.write_str("unbounded"),
        }
    }
}

fn fib<I: WalkInt>(params: &Params, k: u32) -> I {
    let k = k as usize;
    params.fibs().with_view(k, |v| v.g::<I>(k))
}

/// Core of [`is_t_divisible`] with `g_{t+1}` supplied.
///
/// The values `a − αb − ℓ·g_{t+1}` run through every residue class mod `β`
/// within `β` steps (`gcd(g_{t+1}, β) = 1`), so at most `β` of them are tested.
fn divisibility_free<I: WalkInt>(alpha: &I, beta: &I, a: &I, b: &I, g_next: &I) -> bool {
    let mut v = a.clone() - alpha.clone() * b.clone();
    let mut steps = beta.clone();
    while steps.is_positive() {
        if !v.is_positive() {
            return true;
        }
        if v.is_multiple_of(beta) {
            return false;
        }
        v = v - g_next.clone();
        steps = steps - I::one();
    }
    false
}

/// True iff `a − α·b − ℓ·g_{t+1}` is not a positive multiple of `β` for any `ℓ ≥ 0`.
pub fn is_t_divisible<I: WalkInt>(params: &Params, a: &I, b: &I, t: u32) -> bool {
    assert!(t >= 2, "t-divisibility is defined for t >= 2");
    let g_next = fib::<I>(params, t + 1);
    divisibility_free(
        &I::lift(params.alpha()),
        &I::lift(params.beta()),
        a,
        b,
        &g_next,
    )
}

/// Unique `(a, b)` with `a·g_t + β·b·g_{t−1} = n` and `1 ≤ b ≤ g_t`, if `a ≥ 1`.
fn solve_at<I: WalkInt>(n: &I, gt: &I, step: &I) -> Option<(I, I)> {
    let b = if gt.is_one() {
        I::one()
    } else {
        let e = step.mod_floor(gt).extended_gcd(gt);
        debug_assert!(e.gcd.is_one(), "g_t and beta*g_(t-1) share a factor");
        let inv = e.x.mod_floor(gt);
        let b0 = (n.mod_floor(gt) * inv).mod_floor(gt);
        if b0.is_zero() {
            gt.clone()
        } else {
            b0
        }
    };
    let rem = n.clone() - step.clone() * b.clone();
    if !rem.is_positive() {
        return None;
    }
    let (a, r) = rem.div_rem(gt);
    debug_assert!(r.is_zero());
    Some((a, b))
}

fn find_triple<I: WalkInt>(params: &Params, v: &FibView<'_>, n: &I) -> Option<Triple<I>> {
    let alpha = I::lift(params.alpha());
    let beta = I::lift(params.beta());
    let mut t = 2usize;
    loop {
        let gt: I = v.g(t);
        let step = beta.clone() * v.g::<I>(t - 1);
        // a, b >= 1 forces n >= g_t + β g_{t−1} >= γ^{t−1}.
        if gt.clone() + step.clone() > *n {
            return None;
        }
        if let Some((a, b)) = solve_at(n, &gt, &step) {
            let g_next: I = v.g(t + 1);
            let within =
                a <= (beta.clone() - I::one()) * g_next.clone() + alpha.clone() * b.clone();
            let free = divisibility_free(&alpha, &beta, &a, &b, &g_next);
            // The divisibility condition alone already forces the bound.
            debug_assert!(!free || within, "t-divisible triple violates the a-bound");
            if within && free {
                return Some(Triple { t: t as u32, a, b });
            }
        }
        t += 1;
    }
}

/// Computes `s(n)` and its triple in `O((log n)²)` operations.
///
/// # Panics
///
/// If `n < 1`, or if `n` is outside the range of the integer type
/// (`i128` accepts `n < 2^40`).
pub fn characterize<I: WalkInt>(params: &Params, n: &I) -> Certificate<I> {
    assert!(n.is_positive(), "characterize needs n >= 1, got {n}");
    assert!(
        I::accepts(n),
        "n={n} is too large for this integer type; use BigInt"
    );
    let upto = params.index_bound(n);
    let triple = params.fibs().with_view(upto, |v| find_triple(params, v, n));
    let s = triple.as_ref().map_or(2, |tr| tr.t + 1);
    Certificate {
        params: params.clone(),
        n: n.clone(),
        s,
        triple,
    }
}

/// `p(n)`.
pub fn p_of_n<I: WalkInt>(params: &Params, n: &I) -> PairCount {
    characterize(params, n).pair_count()
}

/// The full family of n-good pairs `(b′, a′)`.
#[derive(Clone, Debug)]
pub struct GoodPairFamily<I = BigInt> {
    pub cert: Certificate<I>,
    /// `(b + k·g_t, a − k·β·g_{t−1})` for `k = 0, 1, …`.
    pub pairs: Vec<(I, I)>,
}

/// Lists every n-good pair and checks each one walks to `n` at index `s`.
pub fn enumerate_good_pairs<I: WalkInt>(cert: &Certificate<I>) -> Result<GoodPairFamily<I>> {
    let tr = cert.require_triple()?;
    let params = &cert.params;
    let gt = fib::<I>(params, tr.t);
    let step = I::lift(params.beta()) * fib::<I>(params, tr.t - 1);
    let mut pairs = Vec::new();
    let (mut b, mut a) = (tr.b.clone(), tr.a.clone());
    while a.is_positive() {
        let w = walk_term(params, &b, &a, cert.s as usize)?;
        if w != cert.n {
            return Err(Error::Inconsistency(format!(
                "good pair ({b}, {a}) reaches {w} instead of {} at index {}",
                cert.n, cert.s
            )));
        }
        pairs.push((b.clone(), a.clone()));
        b = b + gt.clone();
        a = a - step.clone();
    }
    if PairCount::Finite(pairs.len() as u64) != cert.pair_count() {
        return Err(Error::Inconsistency(format!(
            "enumerated {} pairs for n={} but p(n)={}",
            pairs.len(),
            cert.n,
            cert.pair_count()
        )));
    }
    Ok(GoodPairFamily {
        cert: cert.clone(),
        pairs,
    })
}

/// `s(n)` and the good pairs as recomputed by an oracle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub s: u32,
    /// Pairs `(b, a) = (w_1, w_2)` sorted by `b`. When `unbounded`, only a
    /// finite window of the infinite family `(x, n)` is listed (possibly none).
    pub pairs: Vec<(u64, u64)>,
    pub unbounded: bool,
}

/// Recomputes `s(n)` from `(b, a)` n-good ⟺ `n = a·g_{s−1} + β·b·g_{s−2}`,
/// trying every `s` downward and every `b` by enumeration.
pub fn s_oracle_diophantine(params: &Params, n: u64) -> OracleResult {
    let beta = params.beta() as u128;
    let n128 = n as u128;
    let mut g: Vec<u128> = vec![0, 1];
    while *g.last().unwrap() <= n128 {
        let k = g.len();
        g.push(params.alpha() as u128 * g[k - 1] + beta * g[k - 2]);
    }
    // g_{s−1} ≤ n is necessary (a ≥ 1); the last entry of g exceeds n.
    let s_max = g.len() - 1;
    for s in (3..=s_max).rev() {
        let (g1, g2) = (g[s - 1], g[s - 2]);
        let mut pairs = Vec::new();
        let mut b = 1u128;
        while beta * b * g2 < n128 {
            let rem = n128 - beta * b * g2;
            if rem.is_multiple_of(g1) {
                pairs.push((b as u64, (rem / g1) as u64));
            }
            b += 1;
        }
        if !pairs.is_empty() {
            return OracleResult {
                s: s as u32,
                pairs,
                unbounded: false,
            };
        }
    }
    OracleResult {
        s: 2,
        pairs: Vec::new(),
        unbounded: true,
    }
}

pub const DEFAULT_BRUTE_CAP: u64 = 500;

/// Recomputes `s(n)` straight from the definition: walks every seed
/// `(a₁, a₂) ∈ [1, n]²` until it passes `n`. Quadratic; refuses `n > cap`.
///
/// When `s(n) = 2` the listed pairs are `(x, n)` for `x ≤ cap`.
pub fn s_oracle_bruteforce(params: &Params, n: u64, cap: u64) -> Result<OracleResult> {
    if n > cap {
        return Err(Error::AboveCap { n, cap });
    }
    if n == 0 {
        return Err(Error::InvalidArgument("n must be >= 1".into()));
    }
    let (alpha, beta) = (params.alpha(), params.beta());
    let mut best = 0u32;
    let mut pairs = Vec::new();
    for a1 in 1..=n {
        for a2 in 1..=n {
            let (mut prev, mut cur) = (a1, a2);
            let mut idx = 2u32;
            let mut hit = if a1 == n { 1 } else { 0 };
            loop {
                if cur == n {
                    hit = idx;
                }
                if cur >= n {
                    break;
                }
                let next = alpha * cur + beta * prev;
                prev = cur;
                cur = next;
                idx += 1;
            }
            if hit > best {
                best = hit;
                pairs.clear();
            }
            if hit == best && hit > 0 {
                pairs.push((a1, a2));
            }
        }
    }
    if best <= 2 {
        return Ok(OracleResult {
            s: 2,
            pairs: (1..=cap).map(|x| (x, n)).collect(),
            unbounded: true,
        });
    }
    Ok(OracleResult {
        s: best,
        pairs,
        unbounded: false,
    })
}

/// Every triple `(a, b, t)` meeting the three defining conditions, found by
/// enumerating `b` directly. `divisible` decides the third condition, which
/// lets tests swap in a faulty predicate. More than one result would break
/// uniqueness.
pub fn all_triples_with(
    params: &Params,
    n: u64,
    divisible: impl Fn(&Params, i128, i128, u32) -> bool,
) -> Vec<Triple<i128>> {
    let (alpha, beta) = (params.alpha() as i128, params.beta() as i128);
    let n = n as i128;
    let mut out = Vec::new();
    let mut t = 2u32;
    loop {
        let gt: i128 = fib(params, t);
        let gp: i128 = fib(params, t - 1);
        let gn: i128 = fib(params, t + 1);
        if gt > n {
            break;
        }
        for b in 1..=gt {
            let rem = n - beta * b * gp;
            if rem <= 0 {
                break;
            }
            if rem % gt != 0 {
                continue;
            }
            let a = rem / gt;
            if a <= (beta - 1) * gn + alpha * b && divisible(params, a, b, t) {
                out.push(Triple { t, a, b });
            }
        }
        t += 1;
    }
    out
}

pub fn all_triples(params: &Params, n: u64) -> Vec<Triple<i128>> {
    all_triples_with(params, n, |p, a, b, t| is_t_divisible(p, &a, &b, t))
}

/// The `O(log n)` algorithm for `β = 1`: unroll the reverse recurrence
/// `u_{k+2} = u_k − α·u_{k+1}` from `(⌊γn⌋, n)` and from `(⌈γn⌉, n)`; the
/// longer positive run, read backwards, is the walk `w_k(b(n), a(n))`.
pub fn reverse_walk_beta1<I: WalkInt>(params: &Params, n: &I) -> Result<Certificate<I>> {
    if params.beta() != 1 {
        return Err(Error::NotBetaOne(params.beta()));
    }
    let alpha = I::lift(params.alpha());
    if *n <= alpha {
        return Err(Error::InvalidArgument(format!(
            "reverse walk needs n > alpha (got n={n}, alpha={alpha})"
        )));
    }
    let gm = floor_gamma_n(params, n);
    let run = |first: I| {
        let mut seq = vec![first, n.clone()];
        loop {
            let k = seq.len();
            let next = seq[k - 2].clone() - alpha.clone() * seq[k - 1].clone();
            if !next.is_positive() {
                return seq;
            }
            seq.push(next);
        }
    };
    let low = run(gm.floor);
    let high = run(gm.ceil);
    if low.len() == high.len() {
        return Err(Error::Inconsistency(format!(
            "reverse walks from floor and ceil of gamma*{n} have equal length {}",
            low.len()
        )));
    }
    let seq = if low.len() > high.len() { low } else { high };
    let len = seq.len();
    let triple = Triple {
        t: (len - 2) as u32,
        a: seq[len - 2].clone(),
        b: seq[len - 1].clone(),
    };
    Ok(Certificate {
        params: params.clone(),
        n: n.clone(),
        s: (len - 1) as u32,
        triple: Some(triple),
    })
}

/// `w_{s+1}(b′, a′)` for every good pair index `k`, with the shift law
/// `w_{s+1}(b′,a′) − w_{s+1}(b,a) = −k(−β)^t` checked exactly, and for `β = 1`
/// also `w_{s+1} = ⌊γn⌋ − k` (t even) or `⌈γn⌉ + k` (t odd).
pub fn w_next_values<I: WalkInt>(cert: &Certificate<I>) -> Result<Vec<(u64, I)>> {
    let tr = cert.require_triple()?;
    let family = enumerate_good_pairs(cert)?;
    let params = &cert.params;
    let s = cert.s as usize;
    let step = num_traits::pow(I::lift(params.beta()), tr.t as usize);
    // Moving b up by g_t changes w_{s+1} by β(g_t² − g_{t−1}g_{t+1}) = −(−β)^t.
    let shift = if tr.t % 2 == 0 { -step } else { step };
    let gm = (params.beta() == 1).then(|| floor_gamma_n(params, &cert.n));
    let mut out = Vec::with_capacity(family.pairs.len());
    let mut base: Option<I> = None;
    for (k, (b, a)) in family.pairs.into_iter().enumerate() {
        let w = Walk::new(params, b, a).term(s + 1).clone();
        let kk = I::lift(k as u64);
        let w0 = base.get_or_insert_with(|| w.clone()).clone();
        if w.clone() - w0 != kk.clone() * shift.clone() {
            return Err(Error::Inconsistency(format!(
                "shift law fails for n={} at k={k}",
                cert.n
            )));
        }
        if let Some(gm) = &gm {
            let expect = if tr.t % 2 == 0 {
                gm.floor.clone() - kk
            } else {
                gm.ceil.clone() + kk
            };
            if w != expect {
                return Err(Error::Inconsistency(format!(
                    "floor/ceil law fails for n={} at k={k}: w={w}, expected {expect}",
                    cert.n
                )));
            }
        }
        out.push((k as u64, w));
    }
    Ok(out)
}

/// Outcome of [`drift_bound_check`].
#[derive(Clone, Debug)]
pub struct DriftCheck {
    /// `|w_{s+1}(b,a) − γn|`.
    pub drift: f64,
    /// `|λ^t(γb − a)|`.
    pub predicted: f64,
    /// `2β^{t+1}`.
    pub bound: BigInt,
    /// The two sides agree as exact elements of `ℤ[γ]`.
    pub exact_match: bool,
    pub within_bound: bool,
}

impl DriftCheck {
    pub fn ok(&self) -> bool {
        let rel = if self.predicted == 0.0 {
            self.drift.abs()
        } else {
            ((self.drift - self.predicted) / self.predicted).abs()
        };
        self.exact_match && self.within_bound && rel <= 1e-6
    }
}

/// `|w_{s+1}(b,a) − γn| = |λ^t(γb − a)| ≤ 2β^{t+1}`.
pub fn drift_bound_check<I: WalkInt>(cert: &Certificate<I>) -> Result<DriftCheck> {
    let tr = cert.require_triple()?;
    let params = &cert.params;
    let w_next = Walk::new(params, tr.b.to_big(), tr.a.to_big())
        .term(cert.s as usize + 1)
        .clone();
    let drift = QuadInt::new(params, w_next, -cert.n.to_big()).abs();
    let seed = QuadInt::new(params, -tr.a.to_big(), tr.b.to_big());
    let predicted = (&params.lambda_exact().pow(tr.t) * &seed).abs();
    let bound: BigInt = num_traits::pow(BigInt::from(params.beta()), tr.t as usize + 1) * 2;
    let within_bound =
        drift.cmp_value(&QuadInt::int(params, bound.clone())) != std::cmp::Ordering::Greater;
    Ok(DriftCheck {
        drift: drift.to_f64(),
        predicted: predicted.to_f64(),
        exact_match: drift == predicted || drift.cmp_value(&predicted).is_eq(),
        bound,
        within_bound,
    })
}
