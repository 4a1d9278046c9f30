//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Expected values come from oracles written here, independent of the library:
//! fixed-point reals over `BigInt`, plain recurrences, and a Diophantine
//! solver for `s(n)`. Runs without the libtest harness so the lines always show.

use std::time::Instant;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use slow_walks::characterization::{drift_bound_check, s_oracle_bruteforce, s_oracle_diophantine};
use slow_walks::density::{
    all_strata, default_c_grid, density_curve, empirical_sp_count, l_pairs_violations, CountMethod,
    DensityJob, DensityRow,
};
use slow_walks::extremal::check_bounds;
use slow_walks::io::{parse_series_row, read_csv, series_record, write_csv, SERIES_HEADER};
use slow_walks::slowest::{default_r, series, ss_and_s, SeriesKind, SeriesRow, ValidSet};
use slow_walks::{characterize, enumerate_good_pairs, reverse_walk_beta1, PairCount, Params};

const TESTED: [(u64, u64); 7] = [(1, 1), (2, 1), (3, 1), (1, 2), (1, 3), (2, 3), (1, 5)];

fn pr(a: u64, b: u64) -> Params {
    Params::new(a, b).unwrap()
}

fn gen(alpha: u64, beta: u64, len: usize) -> Vec<BigInt> {
    let mut g = vec![BigInt::zero(), BigInt::one()];
    while g.len() < len {
        let k = g.len();
        let next = &g[k - 1] * alpha + &g[k - 2] * beta;
        g.push(next);
    }
    g
}

fn gen_i128(alpha: u64, beta: u64, limit: i128) -> Vec<i128> {
    let mut g: Vec<i128> = vec![0, 1];
    while g[g.len() - 1] <= limit || g.len() < 4 {
        let k = g.len();
        g.push(alpha as i128 * g[k - 1] + beta as i128 * g[k - 2]);
    }
    g
}

// Fixed-point reals: value = x / 2^P.
const P: u32 = 320;

fn fx_one() -> BigInt {
    BigInt::one() << P
}

fn fx_mul(x: &BigInt, y: &BigInt) -> BigInt {
    (x * y) >> P
}

fn fx_pow(x: &BigInt, k: u32) -> BigInt {
    (0..k).fold(fx_one(), |acc, _| fx_mul(&acc, x))
}

/// `(γ, λ, √D)` in fixed point.
fn roots(alpha: u64, beta: u64) -> (BigInt, BigInt, BigInt) {
    let d = BigInt::from(alpha * alpha + 4 * beta);
    let sq = Roots::sqrt(&(d << (2 * P)));
    let a = BigInt::from(alpha) << P;
    ((&a + &sq) >> 1, (&a - &sq) >> 1, sq)
}

/// `s(n)` by solving `n = a·g_{s−1} + β·b·g_{s−2}` in positive integers for
/// each `s` from the top: the least `b ≥ 1` comes from a modular inverse.
fn s_by_congruence(alpha: u64, beta: u64, n: &BigInt) -> u32 {
    let mut g = gen(alpha, beta, 3);
    while g.last().unwrap() <= n {
        g = gen(alpha, beta, g.len() + 1);
    }
    let beta = BigInt::from(beta);
    for s in (3..g.len()).rev() {
        let (g1, g2) = (&g[s - 1], &g[s - 2]);
        let coef = (&beta * g2).mod_floor(g1);
        let ext = coef.extended_gcd(g1);
        if !ext.gcd.is_one() {
            continue;
        }
        let mut b = (n * ext.x).mod_floor(g1);
        if b.is_zero() {
            b = g1.clone();
        }
        let rem = n - &beta * &b * g2;
        if rem.is_positive() {
            return s as u32;
        }
    }
    2
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn criterion_1() -> Outcome {
    let bad: Vec<String> = TESTED
        .par_iter()
        .flat_map_iter(|&(a, b)| {
            let params = pr(a, b);
            (2..=2000u64).filter_map(move |n| {
                let cert = characterize(&params, &(n as i128));
                let oracle = s_oracle_diophantine(&params, n);
                let ours: Vec<(u64, u64)> = match &cert.triple {
                    None => Vec::new(),
                    Some(_) => enumerate_good_pairs(&cert)
                        .ok()?
                        .pairs
                        .iter()
                        .map(|&(b, a)| (b as u64, a as u64))
                        .collect(),
                };
                let triple_ok = match &cert.triple {
                    None => oracle.unbounded,
                    Some(tr) => {
                        tr.t + 1 == oracle.s
                            && Some(&(tr.b as u64, tr.a as u64)) == oracle.pairs.first()
                    }
                };
                if cert.s != oracle.s || ours != oracle.pairs || !triple_ok {
                    return Some(format!("({a},{b}) n={n} vs diophantine"));
                }
                if n <= 200 {
                    let brute = s_oracle_bruteforce(&params, n, 200).ok()?;
                    let brute_ok = if cert.is_degenerate() {
                        brute.unbounded
                    } else {
                        brute.pairs == ours
                    };
                    if brute.s != cert.s || !brute_ok {
                        return Some(format!("({a},{b}) n={n} vs brute force"));
                    }
                }
                None
            })
        })
        .collect();
    outcome(
        bad.is_empty(),
        format!(
            "7 pairs x n in [2,2000] vs diophantine, n <= 200 vs brute force; {} mismatches {:?}",
            bad.len(),
            bad.iter().take(3).collect::<Vec<_>>()
        ),
    )
}

fn criterion_2() -> Outcome {
    let mut notes = Vec::new();
    let fib = pr(1, 1);
    let cert = characterize(&fib, &6i128);
    let pairs = enumerate_good_pairs(&cert)
        .map(|f| f.pairs)
        .unwrap_or_default();
    let mut pass = cert.s == 4 && pairs == vec![(2, 2), (4, 1)];
    notes.push(format!("(1,1) s(6)={} pairs {pairs:?}", cert.s));
    for (a, b) in TESTED {
        let params = pr(a, b);
        if characterize(&params, &1i128).s != 2 {
            pass = false;
            notes.push(format!("s(1) != 2 for ({a},{b})"));
        }
        let g = gen(a, b, 5);
        let n3 = (&g[3] * &g[4] * b).to_u64().unwrap();
        let expect = a * a + 2 * b - 1;
        let oracle = s_oracle_diophantine(&params, n3).pairs.len() as u64;
        let got = characterize(&params, &(n3 as i128)).pair_count();
        if got != PairCount::Finite(expect) || oracle != expect {
            pass = false;
            notes.push(format!(
                "({a},{b}) n3={n3}: p={got}, oracle {oracle}, expected {expect}"
            ));
        }
    }
    let p60 = characterize(&pr(2, 1), &60i128).pair_count();
    pass &= p60 == PairCount::Finite(5);
    notes.push(format!(
        "(2,1) p(60)={p60}; s(1)=2 and p(n3)=a^2+2b-1 checked for 7 pairs"
    ));
    outcome(pass, notes.join("; "))
}

struct ShiftTally {
    certs: u64,
    drift_bad: Vec<String>,
    corrected_bad: u64,
    literal_checked: u64,
    literal_bad: u64,
}

fn criterion_3() -> Outcome {
    let tallies: Vec<ShiftTally> = TESTED
        .par_iter()
        .map(|&(alpha, beta)| {
            let params = pr(alpha, beta);
            let (gamma, lambda, _) = roots(alpha, beta);
            let lam_pows: Vec<BigInt> = (0..40).map(|k| fx_pow(&lambda, k)).collect();
            let g = gen_i128(alpha, beta, 1 << 40);
            let mut tally = ShiftTally {
                certs: 0,
                drift_bad: Vec::new(),
                corrected_bad: 0,
                literal_checked: 0,
                literal_bad: 0,
            };
            for n in 1..=100_000i128 {
                let cert = characterize(&params, &n);
                let Some(tr) = cert.triple.clone() else {
                    continue;
                };
                tally.certs += 1;
                let s = cert.s as usize;
                let walk_next = |b: i128, a: i128| {
                    let (mut x, mut y) = (b, a);
                    for _ in 2..=s {
                        let z = alpha as i128 * y + beta as i128 * x;
                        x = y;
                        y = z;
                    }
                    (x, y)
                };
                // Drift: |w_{s+1} − γn| against |λ^t(γb − a)| and 2β^{t+1}.
                let (w_s, w_next) = walk_next(tr.b, tr.a);
                let drift = (BigInt::from(w_next) * fx_one() - &gamma * n).abs();
                let seed = &gamma * tr.b - BigInt::from(tr.a) * fx_one();
                let predicted = fx_mul(&lam_pows[tr.t as usize], &seed).abs();
                let bound = BigInt::from(beta).pow(tr.t + 1) * 2 * fx_one();
                let close = (&drift - &predicted).abs() * 1_000_000u64
                    <= predicted.clone() + BigInt::from(1u32 << 16);
                let lib_ok = drift_bound_check(&cert).map(|d| d.ok()).unwrap_or(false);
                if w_s != n || !close || drift > bound || !lib_ok {
                    tally.drift_bad.push(format!("({alpha},{beta}) n={n}"));
                }
                // Shift law over the whole family.
                let step = (-(beta as i128)).pow(tr.t);
                let mut k = 0i128;
                let (mut b, mut a) = (tr.b, tr.a);
                let (g_t, g_tm1) = (g[tr.t as usize], g[tr.t as usize - 1]);
                while a > 0 {
                    let (_, w) = walk_next(b, a);
                    let diff = w - w_next;
                    if diff != -k * step {
                        tally.corrected_bad += 1;
                    }
                    if k >= 1 {
                        tally.literal_checked += 1;
                        if diff != k * step {
                            tally.literal_bad += 1;
                        }
                    }
                    k += 1;
                    b += g_t;
                    a -= beta as i128 * g_tm1;
                }
            }
            tally
        })
        .collect();
    let certs: u64 = tallies.iter().map(|t| t.certs).sum();
    let drift_bad: Vec<&String> = tallies.iter().flat_map(|t| &t.drift_bad).collect();
    let corrected_bad: u64 = tallies.iter().map(|t| t.corrected_bad).sum();
    let literal_checked: u64 = tallies.iter().map(|t| t.literal_checked).sum();
    let literal_bad: u64 = tallies.iter().map(|t| t.literal_bad).sum();
    let pass = drift_bad.is_empty() && corrected_bad == 0 && literal_bad == 0;
    outcome(
        pass,
        format!(
            "{certs} certificates: drift identity/bound failures {}; shift law w'-w = -k(-b)^t failures {corrected_bad}; \
             stated law w'-w = k(-b)^t fails on {literal_bad} of {literal_checked} shifted pairs (sign conflict, see notes)",
            drift_bad.len()
        ),
    )
}

fn criterion_4() -> Outcome {
    let mut checked = 0u64;
    let mut bad = Vec::new();
    for alpha in 1..=3u64 {
        let params = pr(alpha, 1);
        let d = BigInt::from(alpha * alpha + 4);
        let results: Vec<(u64, Vec<String>)> = (alpha as u32 + 1..100_001u32)
            .into_par_iter()
            .chunks(4096)
            .map(|chunk| {
                let mut bad = Vec::new();
                let mut count = 0;
                for n in chunk.into_iter().map(i128::from) {
                    count += 1;
                    let cert = characterize(&params, &n);
                    match reverse_walk_beta1(&params, &n) {
                        Ok(fast) if fast == cert => {}
                        _ => bad.push(format!("alpha={alpha} n={n}: reverse walk")),
                    }
                    let Some(tr) = &cert.triple else {
                        bad.push(format!("alpha={alpha} n={n}: degenerate"));
                        continue;
                    };
                    let root: BigInt = Roots::sqrt(&(&d * BigInt::from(n) * n));
                    let floor: BigInt = (BigInt::from(alpha) * n + root) >> 1;
                    let floor = floor.to_i128().unwrap();
                    let ceil = floor + 1;
                    let pairs = enumerate_good_pairs(&cert)
                        .map(|f| f.pairs)
                        .unwrap_or_default();
                    for (k, (b, a)) in pairs.into_iter().enumerate() {
                        let (mut x, mut y) = (b, a);
                        for _ in 2..=cert.s {
                            let z = alpha as i128 * y + x;
                            x = y;
                            y = z;
                        }
                        let expect = if tr.t % 2 == 0 {
                            floor - k as i128
                        } else {
                            ceil + k as i128
                        };
                        if x != n || y != expect {
                            bad.push(format!(
                                "alpha={alpha} n={n} k={k}: w={y}, expected {expect}"
                            ));
                        }
                    }
                }
                (count, bad)
            })
            .collect();
        for (c, b) in results {
            checked += c;
            bad.extend(b);
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "alpha in 1..=3, n <= 1e5: {checked} values, {} failures {:?}",
            bad.len(),
            bad.iter().take(3).collect::<Vec<_>>()
        ),
    )
}

fn criterion_5() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut pairs = Vec::new();
    while pairs.len() < 10 {
        let (a, b) = (rng.gen_range(1..=20u64), rng.gen_range(1..=20u64));
        if a.gcd(&b) == 1 && !pairs.contains(&(a, b)) {
            pairs.push((a, b));
        }
    }
    let mut bad = Vec::new();
    let mut worst = 0.0f64;
    for &(alpha, beta) in &pairs {
        let g = gen(alpha, beta, 303);
        let bb = BigInt::from(beta);
        let (gamma, lambda, sqrt_d) = roots(alpha, beta);
        let (mut gp, mut lp) = (fx_one(), fx_one());
        for k in 0..=300usize {
            if k >= 1 {
                if !g[k].gcd(&bb).is_one() {
                    bad.push(format!("({alpha},{beta}) (a) k={k}"));
                }
                if !g[k + 1].gcd(&(&bb * &g[k])).is_one() {
                    bad.push(format!("({alpha},{beta}) (b) k={k}"));
                }
            }
            let lhs = &g[k + 1] * &g[k + 1] - &g[k] * &g[k + 2];
            let rhs = if k % 2 == 0 {
                bb.pow(k as u32)
            } else {
                -bb.pow(k as u32)
            };
            if lhs != rhs {
                bad.push(format!("({alpha},{beta}) (c) k={k}"));
            }
            if k >= 1 {
                let binet = ((&gp - &lp) << P) / &sqrt_d;
                let exact = &g[k] << P;
                let rel = BigRational::new((&binet - &exact).abs(), exact.clone())
                    .to_f64()
                    .unwrap();
                worst = worst.max(rel);
                if rel >= 1e-9 {
                    bad.push(format!("({alpha},{beta}) (d) k={k} rel {rel:e}"));
                }
            }
            gp = fx_mul(&gp, &gamma);
            lp = fx_mul(&lp, &lambda);
        }
    }
    outcome(
        bad.is_empty(),
        format!("pairs {pairs:?}, k <= 300: (a)-(c) exact, (d) worst relative error {worst:.1e}; failures {:?}", bad.iter().take(3).collect::<Vec<_>>()),
    )
}

fn criterion_6() -> Outcome {
    let results: Vec<(u64, Vec<String>)> = TESTED
        .par_iter()
        .map(|&(alpha, beta)| {
            let params = pr(alpha, beta);
            let (gamma, _, _) = roots(alpha, beta);
            let pows: Vec<BigInt> = (0..120).map(|k| fx_pow(&gamma, k)).collect();
            let g = gen_i128(alpha, beta, 1 << 40);
            let fib = (alpha, beta) == (1, 1);
            let mut bad = Vec::new();
            let mut checked = 0;
            for n in 1..=100_000i128 {
                let s = characterize(&params, &n).s;
                // Chicken: the largest s' with n > β g_{s'−1} g_{s'−2}.
                let mut chicken = 2usize;
                while n > beta as i128 * g[chicken] * g[chicken - 1] {
                    chicken += 1;
                }
                if (s as usize) < chicken {
                    bad.push(format!("({alpha},{beta}) n={n}: chicken {chicken} > s {s}"));
                }
                if s == 2 {
                    continue;
                }
                checked += 1;
                let nf = BigInt::from(n) << P;
                let upper = pows[s as usize - 2] <= nf;
                let lower = if fib {
                    nf <= pows[2 * s as usize - 4]
                } else {
                    nf <= pows[2 * s as usize + 2]
                };
                let lib = check_bounds(&params, &BigInt::from(n), s).all();
                if !upper || !lower || !lib {
                    bad.push(format!(
                        "({alpha},{beta}) n={n} s={s}: upper {upper} lower {lower} lib {lib}"
                    ));
                }
            }
            (checked, bad)
        })
        .collect();
    let checked: u64 = results.iter().map(|r| r.0).sum();
    let bad: Vec<&String> = results.iter().flat_map(|r| &r.1).collect();
    outcome(
        bad.is_empty(),
        format!("7 pairs, n <= 1e5 ({checked} with s > 2): envelope, chicken bound and (1,1) refinement; {} failures {:?}", bad.len(), bad.iter().take(3).collect::<Vec<_>>()),
    )
}

/// Main term of the density in plain floating point.
fn theory_oracle(alpha: u64, beta: u64, p: u64, c: f64) -> Option<f64> {
    let (a, b) = (alpha as f64, beta as f64);
    let g = (a + (a * a + 4.0 * b).sqrt()) / 2.0;
    let p_top = (g * g).ceil() as u64 - 2;
    if p < beta || p > p_top || c < 1.0 || c > (p - beta + 1) as f64 * g / a {
        return None;
    }
    let mut d = 0u64;
    while b * p as f64 / g - g * d as f64 > a {
        d += 1;
    }
    let delta = b * p as f64 / g - g * d as f64;
    let g2 = g * g;
    let main =
        (2.0 * b - 2.0 * d as f64 - 1.0) * g * (a - delta).powi(2) / a / (2.0 * b * b * (g2 - 1.0));
    let tail: f64 = ((d + 1)..beta)
        .map(|q| (b - q as f64) / (b * b))
        .sum::<f64>()
        * g2
        / (g2 - 1.0);
    Some((main + tail) / c)
}

fn n_cr_oracle(alpha: u64, beta: u64, c: f64, r: u32) -> u64 {
    let (gamma, _, _) = roots(alpha, beta);
    let c = BigRational::from_float(c).unwrap();
    let top = fx_pow(&gamma, 2 * r + 1) * c.numer() * beta;
    let den = (c.denom() * (alpha * alpha + 4 * beta)) << P;
    top.div_floor(&den).to_u64().unwrap()
}

struct DensityRun {
    params: Params,
    p: u64,
    r: u32,
    rows: Vec<DensityRow>,
}

fn density_runs() -> Result<Vec<DensityRun>, String> {
    let grid_11: Vec<f64> = (0..17).map(|i| (10 + i) as f64 / 10.0).collect();
    let mut jobs = vec![(pr(1, 1), 1, 10, grid_11)];
    for p in 1..=4 {
        jobs.push((pr(2, 1), p, 6, default_c_grid(&pr(2, 1), 17)));
    }
    for p in [5, 6] {
        for r in [2, 4] {
            jobs.push((pr(1, 5), p, r, default_c_grid(&pr(1, 5), 17)));
        }
    }
    jobs.into_iter()
        .map(|(params, p, r, grid)| {
            let job = DensityJob::new(&params, p, r, grid).map_err(|e| e.to_string())?;
            let rows = density_curve(&job).map_err(|e| e.to_string())?;
            Ok(DensityRun { params, p, r, rows })
        })
        .collect()
}

fn criterion_7(runs: &[DensityRun]) -> Outcome {
    let mut pass = true;
    let mut notes = Vec::new();
    let mut decay: Vec<(u64, u32, f64)> = Vec::new();
    let mut info_outside = 0.0f64;
    for run in runs {
        let (a, b) = run.params.pair();
        let tol = match (a, b) {
            (1, 1) => 0.02,
            (2, 1) => 0.03,
            _ => 0.10,
        };
        let mut worst = 0.0f64;
        let mut compared = 0;
        for row in &run.rows {
            if row.n_cr != n_cr_oracle(a, b, row.c, run.r) {
                pass = false;
                notes.push(format!("({a},{b}) c={}: n_cr mismatch", row.c));
            }
            let stratified =
                empirical_sp_count(&run.params, run.p, row.n_cr, CountMethod::Stratified)
                    .unwrap_or(u64::MAX);
            if stratified != row.count {
                pass = false;
                notes.push(format!(
                    "({a},{b}) n={}: direct {} vs stratified {stratified}",
                    row.n_cr, row.count
                ));
            }
            let oracle = theory_oracle(a, b, run.p, row.c);
            match (oracle, row.theory_density) {
                (Some(t), Some(lib)) => {
                    if (t - lib).abs() > 1e-9 * t.abs().max(1e-12) {
                        pass = false;
                        notes.push(format!(
                            "({a},{b}) p={} c={}: theory {lib} vs oracle {t}",
                            run.p, row.c
                        ));
                    }
                    worst = worst.max((row.empirical_density - t).abs());
                    compared += 1;
                }
                (None, None) => {}
                _ => {
                    pass = false;
                    notes.push(format!(
                        "({a},{b}) p={} c={}: regime disagreement",
                        run.p, row.c
                    ));
                }
            }
            if oracle.is_none() && a == 1 && b == 1 {
                let extrapolated = theory_oracle(a, b, run.p, 1.0).unwrap() / row.c;
                info_outside = info_outside.max((row.empirical_density - extrapolated).abs());
            }
        }
        let is_decay_run = (a, b) == (1, 5);
        if is_decay_run {
            decay.push((run.p, run.r, worst));
        }
        let graded = !(is_decay_run && run.r == 2);
        if graded && worst > tol {
            pass = false;
        }
        notes.push(format!(
            "({a},{b}) p={} r={}: max gap {worst:.4} over {compared} pts{}",
            run.p,
            run.r,
            if graded { "" } else { " (decay reference)" }
        ));
    }
    for p in [5, 6] {
        let at = |r| {
            decay
                .iter()
                .find(|d| d.0 == p && d.1 == r)
                .map(|d| d.2)
                .unwrap()
        };
        if at(4) >= at(2) {
            pass = false;
            notes.push(format!("no decay for p={p}"));
        }
    }
    notes.push(format!(
        "out-of-regime (1,1) points have no theory value; extrapolated gap there {info_outside:.3} (informational)"
    ));
    outcome(pass, notes.join("; "))
}

fn criterion_8(runs: &[DensityRun]) -> Outcome {
    let mut strata = 0u64;
    let mut bad = Vec::new();
    for run in runs {
        let (alpha, beta) = run.params.pair();
        let g = gen_i128(alpha, beta, 1 << 40);
        for row in &run.rows {
            let n = row.n_cr;
            let Ok(all) = all_strata(&run.params, run.p, n) else {
                bad.push(format!("({alpha},{beta}) n={n}: strata failed"));
                continue;
            };
            for st in all {
                strata += 1;
                let (b, q) = (beta as i128, st.q as i128);
                let gap = (b * st.s_count as i128 - (b - q) * st.t_count as i128).abs();
                let (gt, gp) = (g[st.t as usize], g[st.t as usize - 1]);
                let ok = gap <= b * b * gt || gap * gp <= b * b * n as i128;
                if !ok {
                    bad.push(format!("({alpha},{beta}) n={n} q={} t={}", st.q, st.t));
                }
            }
        }
    }
    let mut pair_checks = Vec::new();
    let mut lemma_cases: Vec<(u64, u64, u32)> = runs
        .iter()
        .map(|r| (r.params.alpha(), r.params.beta(), r.r))
        .collect();
    for (a, b) in [(1, 1), (2, 1), (1, 2), (2, 3)] {
        lemma_cases.extend((3..=7).map(|r| (a, b, r)));
    }
    lemma_cases.sort();
    lemma_cases.dedup();
    for &(alpha, beta, r) in &lemma_cases {
        let params = pr(alpha, beta);
        let g = gen_i128(alpha, beta, 1 << 40);
        let top = beta as i128 * g[r as usize] * g[r as usize + 1];
        let violations: Vec<i128> = (1..=top)
            .into_par_iter()
            .filter(|m| {
                let cert = characterize(&params, m);
                match (&cert.triple, cert.pair_count()) {
                    (Some(tr), PairCount::Finite(p)) => p > beta && tr.t > r,
                    _ => false,
                }
            })
            .collect();
        let lib = l_pairs_violations(&params, r)
            .map(|v| v.len())
            .unwrap_or(usize::MAX);
        if !violations.is_empty() || lib != 0 {
            bad.push(format!(
                "pair lemma ({alpha},{beta}) r={r}: {} violations",
                violations.len()
            ));
        }
        pair_checks.push(format!("({alpha},{beta})r{r}"));
    }
    outcome(
        bad.is_empty(),
        format!(
            "{strata} strata bound checks, pair lemma on {} cases; failures {:?}",
            pair_checks.len(),
            bad.iter().take(3).collect::<Vec<_>>()
        ),
    )
}

fn criterion_9() -> Outcome {
    let cases: [(&str, &[(u64, u64)]); 8] = [
        ("32", &[(1, 1), (1, 2)]),
        ("40", &[(1, 1), (1, 3)]),
        ("3363", &[(1, 1), (2, 1)]),
        ("5307721328585529", &[(1, 1), (1, 4)]),
        ("171", &[(1, 2)]),
        ("22619537", &[(2, 1)]),
        ("11228332", &[(1, 3)]),
        ("5000966512101628011743180761388223", &[(1, 4)]),
    ];
    let r = default_r();
    let mut pass = true;
    let mut notes = Vec::new();
    for (n, expect) in cases {
        let n: BigInt = n.parse().unwrap();
        let start = Instant::now();
        let report = ss_and_s(&n, &r);
        let secs = start.elapsed().as_secs_f64();
        let Ok(report) = report else {
            pass = false;
            notes.push(format!("S({n}) errored"));
            continue;
        };
        // Independent s-values for every member of R.
        let oracle_s: Vec<(Params, u32)> = r
            .members()
            .iter()
            .map(|m| (m.clone(), s_by_congruence(m.alpha(), m.beta(), &n)))
            .collect();
        let ss = oracle_s.iter().map(|x| x.1).max().unwrap();
        let mut oracle_set: Vec<(u64, u64)> = oracle_s
            .iter()
            .filter(|x| x.1 == ss)
            .map(|x| x.0.pair())
            .collect();
        oracle_set.sort();
        let got = report.pairs();
        let ok = got == expect && oracle_set == got && report.ss == ss && secs < 5.0;
        pass &= ok;
        if !ok {
            let detail: Vec<String> = oracle_s.iter().map(|(p, s)| format!("s^{p}={s}")).collect();
            notes.push(format!(
                "S({n}) = {got:?}, listed {expect:?}, oracle {oracle_set:?} [{}] in {secs:.3}s",
                detail.join(" ")
            ));
        }
    }
    notes.insert(
        0,
        format!("{} of 8 listed sets reproduced", 8 - notes.len()),
    );
    outcome(pass, notes.join("; "))
}

fn csv_round_trip(rows: &[SeriesRow], kind: SeriesKind) -> Result<Vec<SeriesRow>, String> {
    let recs: Vec<Vec<String>> = rows.iter().map(|r| series_record(r, kind)).collect();
    let mut buf = Vec::new();
    write_csv(&mut buf, &SERIES_HEADER, &recs, false).map_err(|e| e.to_string())?;
    read_csv(&buf[..], &SERIES_HEADER)
        .map_err(|e| e.to_string())?
        .iter()
        .map(|rec| parse_series_row(rec, kind).map_err(|e| e.to_string()))
        .collect()
}

fn series_valid(rows: &[SeriesRow], n_max: u64, stride: u64, kind: SeriesKind) -> bool {
    let shape = rows.last().map(|r| r.n) == Some(n_max)
        && rows.iter().all(|r| r.n % stride == 0 || r.n == n_max)
        && rows
            .windows(2)
            .all(|w| w[0].n < w[1].n && w[0].count <= w[1].count)
        && rows.iter().all(|r| r.count < r.n);
    let normalized =
        kind == SeriesKind::Inclusive || rows.iter().all(|r| (0.0..=1.0).contains(&r.value(kind)));
    shape && normalized
}

fn criterion_10() -> Outcome {
    let mut pass = true;
    let mut notes = Vec::new();
    let r = default_r();
    let p12 = pr(1, 2);
    let mut run = || -> Result<(), String> {
        let i = series(&r, &p12, SeriesKind::Inclusive, 50_000, 100, None)
            .map_err(|e| e.to_string())?;
        let back = csv_round_trip(&i, SeriesKind::Inclusive)?;
        // Sequential recount at a few checkpoints.
        let mut spot = 0u64;
        let mut checkpoints = Vec::new();
        for m in 2..=50_000i128 {
            let best = r
                .members()
                .iter()
                .map(|x| characterize(x, &m).s)
                .max()
                .unwrap();
            if characterize(&p12, &m).s == best {
                spot += 1;
            }
            if m % 10_000 == 0 {
                checkpoints.push((m as u64, spot));
            }
        }
        let spot_ok = checkpoints
            .iter()
            .all(|&(n, c)| i.iter().any(|row| row.n == n && row.count == c));
        let ok = back == i && series_valid(&i, 50_000, 100, SeriesKind::Inclusive) && spot_ok;
        notes.push(format!(
            "i_(1,2)(5e4) = {} ({} rows, round trip {}, recount {})",
            i.last().unwrap().count,
            i.len(),
            back == i,
            spot_ok
        ));
        if !ok {
            return Err("inclusive series invalid".into());
        }
        let t: ValidSet = "1:6,2:3"
            .parse()
            .map_err(|e: slow_walks::Error| e.to_string())?;
        for target in t.members() {
            let e = series(&t, target, SeriesKind::Exclusive, 100_000, 1000, None)
                .map_err(|e| e.to_string())?;
            let back = csv_round_trip(&e, SeriesKind::Exclusive)?;
            let ok = back == e && series_valid(&e, 100_000, 1000, SeriesKind::Exclusive);
            notes.push(format!(
                "e_{target}(1e5) = {:.4}",
                e.last().unwrap().value(SeriesKind::Exclusive)
            ));
            if !ok {
                return Err(format!("exclusive series for {target} invalid"));
            }
        }
        let e11 = series(&r, &pr(1, 1), SeriesKind::Exclusive, 10_000, 1000, None)
            .map_err(|e| e.to_string())?;
        let frac = e11.last().unwrap().value(SeriesKind::Exclusive);
        notes.push(format!(
            "T=R (1,1)-exclusive fraction at 1e4 = {frac:.4} (threshold 0.9)"
        ));
        if frac <= 0.9 {
            return Err("exclusive fraction below 0.9".into());
        }
        Ok(())
    };
    if let Err(e) = run() {
        pass = false;
        notes.push(e);
    }
    outcome(pass, notes.join("; "))
}

fn main() {
    let started = Instant::now();
    let mut lines = Vec::new();
    let mut report = |id: u32, name: &str, f: &dyn Fn() -> Outcome| {
        let t = Instant::now();
        let o = f();
        let line = format!(
            "{} criterion {id:>2} {name} [{:.1}s]: {}",
            if o.pass { "PASS" } else { "FAIL" },
            t.elapsed().as_secs_f64(),
            o.detail
        );
        println!("{line}");
        lines.push(o.pass);
    };
    report(1, "oracle equivalence", &criterion_1);
    report(2, "point values", &criterion_2);
    report(3, "certificate quantities", &criterion_3);
    report(4, "beta=1 fast path", &criterion_4);
    report(5, "recurrence identities", &criterion_5);
    report(6, "bounds on s(n)", &criterion_6);
    let runs = density_runs();
    match &runs {
        Ok(runs) => {
            report(7, "density reproduction", &|| criterion_7(runs));
            report(8, "strata and pair lemma", &|| criterion_8(runs));
        }
        Err(e) => {
            report(7, "density reproduction", &|| outcome(false, e.clone()));
            report(8, "strata and pair lemma", &|| outcome(false, e.clone()));
        }
    }
    report(9, "slowest sets", &criterion_9);
    report(10, "series regeneration", &criterion_10);
    let passed = lines.iter().filter(|p| **p).count();
    println!(
        "acceptance: {passed}/{} criteria passed in {:.1}s",
        lines.len(),
        started.elapsed().as_secs_f64()
    );
    if passed != lines.len() {
        std::process::exit(1);
    }
}
