//! Parameters, generalized Fibonacci numbers and walk evaluation.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::int::WalkInt;
use crate::quadratic::QuadInt;
use crate::{Error, Result};

const MAX_COEFF: u64 = 1 << 20;

/// A coprime pair `(α, β)` together with its shared `g_k` table.
///
/// Cloning is cheap; clones share the table.
#[derive(Clone)]
pub struct Params {
    alpha: u64,
    beta: u64,
    gamma: f64,
    lambda: f64,
    fibs: Arc<GenFibTable>,
}

impl Params {
    pub fn new(alpha: u64, beta: u64) -> Result<Self> {
        if alpha == 0 || beta == 0 {
            return Err(Error::NonPositive { alpha, beta });
        }
        for c in [alpha, beta] {
            if c > MAX_COEFF {
                return Err(Error::CoefficientTooLarge(c));
            }
        }
        if alpha.gcd(&beta) != 1 {
            return Err(Error::NotCoprime { alpha, beta });
        }
        let mut params = Params {
            alpha,
            beta,
            gamma: 0.0,
            lambda: 0.0,
            fibs: Arc::new(GenFibTable::new(alpha, beta)),
        };
        params.gamma = params.gamma_exact().to_f64();
        params.lambda = params.lambda_exact().to_f64();
        Ok(params)
    }

    pub fn alpha(&self) -> u64 {
        self.alpha
    }

    pub fn beta(&self) -> u64 {
        self.beta
    }

    pub fn pair(&self) -> (u64, u64) {
        (self.alpha, self.beta)
    }

    /// `α² + 4β = (γ − λ)²`.
    pub fn disc(&self) -> u64 {
        self.alpha * self.alpha + 4 * self.beta
    }

    pub fn gamma_exact(&self) -> QuadInt {
        QuadInt::gamma(self)
    }

    pub fn lambda_exact(&self) -> QuadInt {
        QuadInt::lambda(self)
    }

    /// `γ` rounded to `f64`. Exact comparisons go through [`Params::gamma_exact`].
    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn fibs(&self) -> &GenFibTable {
        &self.fibs
    }

    /// A table index `k` with `g_{k-2} > n`, so every `g` the engine touches
    /// while processing `n` lies below it.
    pub(crate) fn index_bound<I: WalkInt>(&self, n: &I) -> usize {
        let log2_gamma = self.gamma().log2();
        (n.bit_len() as f64 / log2_gamma).ceil() as usize + 6
    }
}

impl PartialEq for Params {
    fn eq(&self, other: &Self) -> bool {
        self.pair() == other.pair()
    }
}

impl Eq for Params {}

impl Hash for Params {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.pair().hash(state)
    }
}

impl PartialOrd for Params {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Params {
    fn cmp(&self, other: &Self) -> Ordering {
        self.pair().cmp(&other.pair())
    }
}

impl fmt::Debug for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Params({}, {})", self.alpha, self.beta)
    }
}

/// Formats as `alpha:beta`.
impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.alpha, self.beta)
    }
}

/// Parses `alpha:beta`.
impl FromStr for Params {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = s
            .trim()
            .split_once(':')
            .ok_or_else(|| Error::InvalidArgument(format!("expected alpha:beta, got {s:?}")))?;
        let parse = |v: &str| {
            v.trim()
                .parse::<u64>()
                .map_err(|e| Error::InvalidArgument(format!("bad coefficient {v:?}: {e}")))
        };
        Params::new(parse(a)?, parse(b)?)
    }
}

/// Append-only cache of `g_0 = 0, g_1 = 1, g_2 = α, g_{k+2} = α g_{k+1} + β g_k`.
///
/// Extension happens under a write lock and is published whole, so a table
/// can be shared between scan workers.
pub struct GenFibTable {
    alpha: u64,
    beta: u64,
    cache: RwLock<FibCache>,
}

struct FibCache {
    big: Vec<BigInt>,
    /// Prefix of `big` that fits in `i128`.
    small: Vec<i128>,
}

/// Borrowed prefix of a [`GenFibTable`].
pub struct FibView<'a> {
    pub(crate) small: &'a [i128],
    pub(crate) big: &'a [BigInt],
}

impl<'a> FibView<'a> {
    pub(crate) fn g<I: WalkInt>(&self, k: usize) -> I {
        I::from_fib(self, k)
    }
}

impl GenFibTable {
    fn new(alpha: u64, beta: u64) -> Self {
        GenFibTable {
            alpha,
            beta,
            cache: RwLock::new(FibCache {
                big: vec![BigInt::zero(), BigInt::one()],
                small: vec![0, 1],
            }),
        }
    }

    /// Number of cached entries.
    pub fn len(&self) -> usize {
        self.cache.read().unwrap().big.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn get(&self, k: usize) -> BigInt {
        self.with_view(k, |v| v.big[k].clone())
    }

    fn extend_to(&self, k: usize) {
        let mut cache = self.cache.write().unwrap();
        while cache.big.len() <= k {
            let len = cache.big.len();
            let next = &cache.big[len - 1] * self.alpha + &cache.big[len - 2] * self.beta;
            if cache.small.len() == len {
                let (s1, s0) = (cache.small[len - 1], cache.small[len - 2]);
                let fits = s1
                    .checked_mul(self.alpha as i128)
                    .zip(s0.checked_mul(self.beta as i128))
                    .and_then(|(x, y)| x.checked_add(y));
                if let Some(v) = fits {
                    cache.small.push(v);
                }
            }
            cache.big.push(next);
        }
    }

    /// Runs `f` against a view covering at least indices `0..=upto`.
    pub(crate) fn with_view<R>(&self, upto: usize, f: impl FnOnce(&FibView<'_>) -> R) -> R {
        {
            let cache = self.cache.read().unwrap();
            if cache.big.len() > upto {
                return f(&FibView {
                    small: &cache.small,
                    big: &cache.big,
                });
            }
        }
        self.extend_to(upto);
        let cache = self.cache.read().unwrap();
        f(&FibView {
            small: &cache.small,
            big: &cache.big,
        })
    }
}

/// `g_k^{α,β}`.
pub fn gen_fib(params: &Params, k: usize) -> BigInt {
    params.fibs().get(k)
}

/// `γ^k = g_k·γ + β·g_{k−1}` as an exact element of `ℤ[γ]`.
pub fn gamma_pow(params: &Params, k: u32) -> QuadInt {
    if k == 0 {
        return QuadInt::int(params, 1);
    }
    let k = k as usize;
    params.fibs().with_view(k, |v| {
        QuadInt::new(params, &v.big[k - 1] * params.beta(), v.big[k].clone())
    })
}

/// The walk `w_1 = b, w_2 = a, w_{k+2} = α w_{k+1} + β w_k`, extended on demand.
#[derive(Clone, Debug)]
pub struct Walk<I = BigInt> {
    alpha: I,
    beta: I,
    terms: Vec<I>,
}

impl<I: WalkInt> Walk<I> {
    pub fn new(params: &Params, b: I, a: I) -> Self {
        Walk {
            alpha: I::lift(params.alpha()),
            beta: I::lift(params.beta()),
            terms: vec![b, a],
        }
    }

    pub fn b(&self) -> &I {
        &self.terms[0]
    }

    pub fn a(&self) -> &I {
        &self.terms[1]
    }

    /// `w_k` for `k ≥ 1`.
    pub fn term(&mut self, k: usize) -> &I {
        assert!(k >= 1, "walk terms are indexed from 1");
        while self.terms.len() < k {
            let len = self.terms.len();
            let next = self.alpha.clone() * self.terms[len - 1].clone()
                + self.beta.clone() * self.terms[len - 2].clone();
            self.terms.push(next);
        }
        &self.terms[k - 1]
    }

    /// Latest index at which the walk equals `n`. Terms strictly increase
    /// from index 2 on; only `w_1` can sit out of order.
    pub fn index_of(&mut self, n: &I) -> Option<usize> {
        let mut k = 2;
        while self.term(k) < n {
            k += 1;
        }
        if self.term(k) == n {
            Some(k)
        } else if self.term(1) == n {
            Some(1)
        } else {
            None
        }
    }
}

/// `w_k(b, a)`, computed both by the recurrence and by
/// `a·g_{k−1} + β·b·g_{k−2}`; the two must agree.
pub fn walk_term<I: WalkInt>(params: &Params, b: &I, a: &I, k: usize) -> Result<I> {
    if !b.is_positive() || !a.is_positive() || k == 0 {
        return Err(Error::InvalidArgument(format!(
            "walk_term needs a, b >= 1 and k >= 1 (got b={b}, a={a}, k={k})"
        )));
    }
    let recurrent = Walk::new(params, b.clone(), a.clone()).term(k).clone();
    if k >= 2 {
        let closed = params.fibs().with_view(k, |v| {
            a.clone() * v.g::<I>(k - 1) + I::lift(params.beta()) * b.clone() * v.g::<I>(k - 2)
        });
        if closed != recurrent {
            return Err(Error::Inconsistency(format!(
                "w_{k}({b},{a}): recurrence {recurrent} != closed form {closed}"
            )));
        }
    }
    Ok(recurrent)
}

/// `⌊γn⌋` and `⌈γn⌉`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaMultiple<I> {
    pub floor: I,
    pub ceil: I,
    /// `γn` is an integer.
    pub exact: bool,
}

/// `⌊γn⌋ = ⌊(nα + ⌊√(n²·D)⌋)/2⌋`, bit-exact.
pub fn floor_gamma_n<I: WalkInt>(params: &Params, n: &I) -> GammaMultiple<I> {
    let disc = I::lift(params.disc());
    let rad = n.clone() * n.clone() * disc;
    let root = rad.isqrt();
    let perfect = root.clone() * root.clone() == rad;
    let num = n.clone() * I::lift(params.alpha()) + root;
    let two = I::lift(2);
    let floor = num.div_floor(&two);
    let exact = perfect && num.is_even();
    let ceil = if exact {
        floor.clone()
    } else {
        floor.clone() + I::one()
    };
    GammaMultiple { floor, ceil, exact }
}

/// `λ^{k−1}(a − γb)`, which equals `w_{k+1}(b,a) − γ·w_k(b,a)`.
pub fn drift_term<I: WalkInt>(params: &Params, b: &I, a: &I, k: u32) -> QuadInt {
    assert!(k >= 1, "drift_term needs k >= 1");
    let seed = QuadInt::new(params, a.to_big(), -b.to_big());
    &params.lambda_exact().pow(k - 1) * &seed
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(a: u64, b: u64) -> Params {
        Params::new(a, b).unwrap()
    }

    #[test]
    fn params_validation() {
        assert!(matches!(Params::new(2, 4), Err(Error::NotCoprime { .. })));
        assert!(matches!(Params::new(0, 1), Err(Error::NonPositive { .. })));
        assert!(matches!(Params::new(1, 0), Err(Error::NonPositive { .. })));
        assert!(Params::new(1, 1).is_ok());
        assert_eq!("2:3".parse::<Params>().unwrap().pair(), (2, 3));
        assert!("2-3".parse::<Params>().is_err());
    }

    #[test]
    fn roots() {
        let fib = p(1, 1);
        assert!((fib.gamma() - 1.618_033_988_7).abs() < 1e-10);
        assert!((fib.lambda() + 0.618_033_988_7).abs() < 1e-10);
        let two = p(1, 2);
        assert_eq!(two.gamma(), 2.0);
        assert_eq!(two.lambda(), -1.0);
        for (a, b) in [(1, 1), (2, 1), (1, 3), (5, 7)] {
            let pr = p(a, b);
            let (g, l) = (pr.gamma(), pr.lambda());
            assert!((g * l + b as f64).abs() < 1e-9);
            assert!((g + l - a as f64).abs() < 1e-12);
            assert!((g * g - a as f64 * g - b as f64).abs() < 1e-9);
            assert!(l < 0.0 && g > a as f64 && g > (b as f64).sqrt() && g > l.abs());
        }
    }

    #[test]
    fn gen_fib_values() {
        let seq = |a, b, k: usize| (1..=k).map(|i| gen_fib(&p(a, b), i)).collect::<Vec<_>>();
        let big = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(seq(1, 1, 7), big(&[1, 1, 2, 3, 5, 8, 13]));
        assert_eq!(seq(2, 1, 5), big(&[1, 2, 5, 12, 29]));
        assert_eq!(seq(1, 3, 6), big(&[1, 1, 4, 7, 19, 40]));
        assert_eq!(gen_fib(&p(3, 5), 0), BigInt::zero());
    }

    #[test]
    fn small_table_stops_at_i128() {
        let pr = p(1, 1);
        pr.fibs().with_view(400, |v| {
            assert_eq!(v.big.len(), 401);
            assert!(v.small.len() < 200);
            for (k, s) in v.small.iter().enumerate() {
                assert_eq!(BigInt::from(*s), v.big[k]);
            }
        });
    }

    #[test]
    fn walk_examples() {
        let fib = p(1, 1);
        assert_eq!(walk_term(&fib, &2i128, &2, 4).unwrap(), 6);
        assert_eq!(walk_term(&fib, &4i128, &1, 4).unwrap(), 6);
        let mut w = Walk::new(&fib, 2i128, 2);
        let terms: Vec<i128> = (1..=5).map(|k| *w.term(k)).collect();
        assert_eq!(terms, vec![2, 2, 4, 6, 10]);
        let pr = p(2, 3);
        assert_eq!(walk_term(&pr, &7i128, &9, 1).unwrap(), 7);
        assert_eq!(walk_term(&pr, &7i128, &9, 2).unwrap(), 9);
        assert!(walk_term(&pr, &0i128, &9, 2).is_err());
        assert_eq!(Walk::new(&fib, 4i128, 1).index_of(&6), Some(4));
        assert_eq!(Walk::new(&fib, 4i128, 1).index_of(&7), None);
        assert_eq!(Walk::new(&fib, 5i128, 1).index_of(&5), Some(1));
    }

    #[test]
    fn floor_gamma_examples() {
        let fib = p(1, 1);
        let r = floor_gamma_n(&fib, &10i128);
        assert_eq!((r.floor, r.ceil, r.exact), (16, 17, false));
        let r = floor_gamma_n(&fib, &6i128);
        assert_eq!((r.floor, r.ceil), (9, 10));
        let r = floor_gamma_n(&p(1, 2), &7i128);
        assert_eq!((r.floor, r.ceil, r.exact), (14, 14, true));
        for n in 1..200i128 {
            assert_eq!(floor_gamma_n(&p(1, 2), &n).floor, 2 * n);
        }
    }

    #[test]
    fn floor_gamma_brackets_gamma_n() {
        for (a, b) in [(1, 1), (2, 1), (3, 1), (1, 3), (2, 3), (4, 5)] {
            let pr = p(a, b);
            for n in 1..500i128 {
                let r = floor_gamma_n(&pr, &n);
                let gn = pr.gamma_exact().scale(&BigInt::from(n));
                let lo = QuadInt::int(&pr, r.floor);
                let hi = QuadInt::int(&pr, r.floor + 1);
                assert_ne!(gn.cmp_value(&lo), Ordering::Less);
                assert_eq!(gn.cmp_value(&hi), Ordering::Less);
                let big = floor_gamma_n(&pr, &BigInt::from(n));
                assert_eq!(big.floor, BigInt::from(r.floor));
            }
        }
    }

    #[test]
    fn drift_examples() {
        let fib = p(1, 1);
        let d = drift_term(&fib, &2i128, &2, 4);
        assert!((d.to_f64() - (10.0 - 6.0 * fib.gamma())).abs() < 1e-12);
        let two = p(1, 2);
        let d = drift_term(&two, &1i128, &1, 2);
        assert_eq!(d.to_f64(), 1.0);
    }

    #[test]
    fn drift_equals_next_minus_gamma_times_current() {
        for (a, b) in [(1, 1), (2, 3), (1, 5)] {
            let pr = p(a, b);
            for (wb, wa) in [(1i128, 1i128), (3, 7), (10, 2)] {
                let mut w = Walk::new(&pr, BigInt::from(wb), BigInt::from(wa));
                for k in 1..40u32 {
                    let cur = w.term(k as usize).clone();
                    let next = w.term(k as usize + 1).clone();
                    let lhs = QuadInt::new(&pr, next, -cur);
                    assert_eq!(lhs, drift_term(&pr, &wb, &wa, k));
                }
            }
        }
    }

    #[test]
    fn gamma_pow_matches_repeated_multiplication() {
        let pr = p(2, 3);
        let g = pr.gamma_exact();
        for k in 0..30 {
            assert_eq!(gamma_pow(&pr, k), g.pow(k));
        }
    }
}
