//! Desk-scale invariant suites, one per family of statements.
//!
//! Each suite returns `Err(reason)` on the first violation. Panics inside a
//! suite are caught and reported as failures, so one broken suite never hides
//! the others.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;

use crate::characterization::{
    all_triples_with, drift_bound_check, reverse_walk_beta1, s_oracle_bruteforce,
    s_oracle_diophantine, w_next_values,
};
use crate::density::{all_strata, density_curve, l_pairs_violations, DensityJob};
use crate::extremal::{check_bounds, extremal_witness, max_p_bound, recurrent_p_value};
use crate::slowest::{default_r, exclusive_witnesses, ss_and_s};
use crate::{characterize, enumerate_good_pairs, is_t_divisible, PairCount, Params};

/// Outcome of one suite.
#[derive(Clone, Debug)]
pub struct SuiteResult {
    pub label: &'static str,
    pub outcome: std::result::Result<(), String>,
    pub elapsed: Duration,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.outcome.is_ok()
    }
}

type Check = std::result::Result<(), String>;

/// Scan limits; `quick` divides them by ten.
#[derive(Clone, Copy, Debug)]
pub struct Scale {
    pub oracle_n: u64,
    pub brute_n: u64,
    pub unique_n: u64,
    pub walk_n: u64,
    pub fib_k: usize,
    pub pairs_r: u32,
    pub density_r: u32,
}

impl Scale {
    pub fn full() -> Self {
        Scale {
            oracle_n: 2000,
            brute_n: 200,
            unique_n: 500,
            walk_n: 10_000,
            fib_k: 300,
            pairs_r: 6,
            density_r: 8,
        }
    }

    pub fn quick() -> Self {
        Scale {
            oracle_n: 200,
            brute_n: 20,
            unique_n: 50,
            walk_n: 1000,
            fib_k: 30,
            pairs_r: 4,
            density_r: 6,
        }
    }
}

fn pr(a: u64, b: u64) -> Params {
    Params::new(a, b).expect("coprime test pair")
}

/// The pairs most suites run over.
pub fn test_pairs() -> Vec<Params> {
    [(1, 1), (2, 1), (3, 1), (1, 2), (1, 3), (2, 3), (1, 5)]
        .into_iter()
        .map(|(a, b)| pr(a, b))
        .collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fib_identities(scale: Scale) -> Check {
    let mut pairs = test_pairs();
    pairs.extend([pr(7, 4), pr(5, 12), pr(19, 20)]);
    for params in &pairs {
        let beta = BigInt::from(params.beta());
        let g: Vec<BigInt> = (0..=scale.fib_k + 2)
            .map(|k| crate::gen_fib(params, k))
            .collect();
        let root_gap = &params.gamma_exact() - &params.lambda_exact();
        for k in 0..=scale.fib_k {
            let one = BigInt::from(1);
            if k >= 1 {
                ensure(g[k].gcd(&beta) == one, || {
                    format!("gcd(g_{k}, beta) != 1 for {params}")
                })?;
                ensure(g[k + 1].gcd(&(&beta * &g[k])) == one, || {
                    format!("gcd(g_{}, beta*g_{k}) != 1 for {params}", k + 1)
                })?;
            }
            let cassini = &g[k + 1] * &g[k + 1] - &g[k] * &g[k + 2];
            let sign = if k % 2 == 0 { 1 } else { -1 };
            ensure(cassini == num_traits::pow(beta.clone(), k) * sign, || {
                format!("g_(k+1)^2 - g_k g_(k+2) != (-beta)^{k} for {params}")
            })?;
            let binet = &params.gamma_exact().pow(k as u32) - &params.lambda_exact().pow(k as u32);
            ensure(binet == root_gap.scale(&g[k]), || {
                format!("gamma^{k} - lambda^{k} != g_{k} (gamma - lambda) for {params}")
            })?;
        }
    }
    Ok(())
}

fn oracle_agreement(scale: Scale) -> Check {
    for params in &test_pairs() {
        for n in 1..=scale.oracle_n {
            let cert = characterize(params, &(n as i128));
            let oracle = s_oracle_diophantine(params, n);
            ensure(cert.s == oracle.s, || {
                format!("{params}, n={n}: s={} but oracle s={}", cert.s, oracle.s)
            })?;
            if !cert.is_degenerate() {
                let pairs: Vec<(u64, u64)> = enumerate_good_pairs(&cert)
                    .map_err(|e| e.to_string())?
                    .pairs
                    .into_iter()
                    .map(|(b, a)| (b as u64, a as u64))
                    .collect();
                ensure(pairs == oracle.pairs, || {
                    format!("{params}, n={n}: pair sets differ")
                })?;
            }
            if n <= scale.brute_n {
                let brute =
                    s_oracle_bruteforce(params, n, scale.brute_n).map_err(|e| e.to_string())?;
                ensure(brute.s == cert.s, || {
                    format!(
                        "{params}, n={n}: s={} but brute force s={}",
                        cert.s, brute.s
                    )
                })?;
                if !cert.is_degenerate() {
                    ensure(brute.pairs == oracle.pairs, || {
                        format!("{params}, n={n}: brute force pairs differ")
                    })?;
                }
            }
        }
    }
    Ok(())
}

/// At most one triple per `n`, and it is the one [`characterize`] returns.
/// `divisible` stands in for [`is_t_divisible`] so a faulty predicate can be
/// shown to trip this suite.
pub fn uniqueness_suite_with(
    divisible: impl Fn(&Params, i128, i128, u32) -> bool,
    n_max: u64,
) -> Check {
    for params in &test_pairs() {
        for n in 1..=n_max {
            let found = all_triples_with(params, n, &divisible);
            ensure(found.len() <= 1, || {
                format!("{params}, n={n}: {} triples {found:?}", found.len())
            })?;
            let cert = characterize(params, &(n as i128));
            ensure(found.first() == cert.triple.as_ref(), || {
                format!(
                    "{params}, n={n}: enumeration gives {found:?}, characterize gives {:?}",
                    cert.triple
                )
            })?;
        }
    }
    Ok(())
}

fn uniqueness(scale: Scale) -> Check {
    uniqueness_suite_with(|p, a, b, t| is_t_divisible(p, &a, &b, t), scale.unique_n)
}

fn good_pair_walks(scale: Scale) -> Check {
    for params in &test_pairs() {
        for n in 1..=scale.walk_n {
            let cert = characterize(params, &(n as i128));
            if cert.is_degenerate() {
                continue;
            }
            w_next_values(&cert).map_err(|e| e.to_string())?;
            let drift = drift_bound_check(&cert).map_err(|e| e.to_string())?;
            ensure(drift.ok(), || {
                format!("{params}, n={n}: drift check failed {drift:?}")
            })?;
        }
    }
    Ok(())
}

fn beta_one(scale: Scale) -> Check {
    for alpha in 1..=3 {
        let params = pr(alpha, 1);
        for n in alpha + 1..=scale.walk_n {
            let n = n as i128;
            let fast = reverse_walk_beta1(&params, &n).map_err(|e| e.to_string())?;
            ensure(fast == characterize(&params, &n), || {
                format!("{params}, n={n}: reverse walk disagrees")
            })?;
        }
    }
    Ok(())
}

fn extremal(scale: Scale) -> Check {
    for params in &test_pairs() {
        for t in 2..=20 {
            extremal_witness(params, t).map_err(|e| e.to_string())?;
        }
        let max = max_p_bound(params);
        let n3 = extremal_witness(params, 3).map_err(|e| e.to_string())?.n;
        let p3 = characterize(params, &n3).pair_count();
        ensure(p3 == PairCount::Finite(max), || {
            format!("{params}: p(n_3) = {p3}, expected {max}")
        })?;
        recurrent_p_value(params).map_err(|e| e.to_string())?;
        for n in 1..=scale.walk_n {
            let p = characterize(params, &(n as i128)).pair_count();
            ensure(!p.exceeds(max) || p == PairCount::Unbounded, || {
                format!("{params}, n={n}: p={p} above {max}")
            })?;
        }
    }
    Ok(())
}

fn bounds(scale: Scale) -> Check {
    for params in &test_pairs() {
        for n in 1..=scale.walk_n {
            let cert = characterize(params, &(n as i128));
            if cert.is_degenerate() {
                continue;
            }
            let check = check_bounds(params, &BigInt::from(n), cert.s);
            ensure(check.all(), || {
                format!("{params}, n={n}, s={}: {check:?}", cert.s)
            })?;
        }
    }
    Ok(())
}

fn density(scale: Scale) -> Check {
    let grid = vec![1.0, 1.4, 1.8, 2.2];
    for (params, p) in [(pr(1, 1), 1), (pr(2, 1), 2), (pr(1, 5), 5)] {
        let r = if params.beta() > 1 {
            scale.density_r / 2
        } else {
            scale.density_r
        };
        let job = DensityJob::new(&params, p, r, grid.clone()).map_err(|e| e.to_string())?;
        for row in density_curve(&job).map_err(|e| e.to_string())? {
            for st in all_strata(&params, p, row.n_cr).map_err(|e| e.to_string())? {
                ensure(st.l_den_holds(&params, row.n_cr), || {
                    format!(
                        "{params}, p={p}, n={}: stratum bound fails for {st:?}",
                        row.n_cr
                    )
                })?;
            }
        }
    }
    Ok(())
}

fn pairs_lemma(scale: Scale) -> Check {
    for params in &test_pairs() {
        for r in 2..=scale.pairs_r {
            let bad = l_pairs_violations(params, r).map_err(|e| e.to_string())?;
            ensure(bad.is_empty(), || {
                format!("{params}, r={r}: violations {bad:?}")
            })?;
        }
    }
    Ok(())
}

fn slowest() -> Check {
    let r = default_r();
    let expect = [
        ("32", vec![(1, 1), (1, 2)]),
        ("40", vec![(1, 1), (1, 3)]),
        ("3363", vec![(1, 1), (2, 1)]),
        ("5307721328585529", vec![(1, 1), (1, 4)]),
    ];
    for (n, pairs) in expect {
        let n: BigInt = n.parse().expect("decimal literal");
        let got = ss_and_s(&n, &r).map_err(|e| e.to_string())?.pairs();
        ensure(got == pairs, || {
            format!("S({n}) = {got:?}, expected {pairs:?}")
        })?;
    }
    exclusive_witnesses().map_err(|e| e.to_string())?;
    Ok(())
}

fn run_one(label: &'static str, suite: impl FnOnce() -> Check) -> SuiteResult {
    let start = Instant::now();
    let outcome = match catch_unwind(AssertUnwindSafe(suite)) {
        Ok(r) => r,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        }
    };
    SuiteResult {
        label,
        outcome,
        elapsed: start.elapsed(),
    }
}

/// Runs every suite in a fixed order.
pub fn run(scale: Scale) -> Vec<SuiteResult> {
    vec![
        run_one("fib-identities", || fib_identities(scale)),
        run_one("oracle-agreement", || oracle_agreement(scale)),
        run_one("triple-uniqueness", || uniqueness(scale)),
        run_one("good-pair-walks", || good_pair_walks(scale)),
        run_one("beta-one-reverse-walk", || beta_one(scale)),
        run_one("extremal-pair-counts", || extremal(scale)),
        run_one("s-envelope", || bounds(scale)),
        run_one("density-strata", || density(scale)),
        run_one("pairs-lemma", || pairs_lemma(scale)),
        run_one("slowest-sets", slowest),
    ]
}
