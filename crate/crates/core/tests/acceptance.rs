//! The acceptance gate: ten end-to-end checks, one test per criterion, each
//! printing a single `ACCEPTANCE Cnn <name>: PASS` line when it holds. Every
//! tolerance and search bound is pinned to a named constant here.

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use symjunta_core::binom::{tri_get, triangle_i64};
use symjunta_core::boolfn::{fourier_transform, BooleanFunction, SymmetricFunction};
use symjunta_core::learner::{
    full_cube_examples, learn_from_examples, learn_symmetric_junta, plant_instance, FunctionClass,
    LearnResult, PlantedInstance, PlantedOracle,
};
use symjunta_core::moments::{power_moment_report, product_moment_report, variance_gap_check};
use symjunta_core::numtheory::{
    binomial_mod, lucas_row_check, mod_periodicity_check, primes_in_interval, primes_up_to,
};
use symjunta_core::structure::{
    boolean_is_t_null, enumerate_and_verify, fit_binomial_polynomial, is_t_null,
    maximal_null_order, signed_difference_values, verify_recurrence, window_system,
    DEFAULT_ENUM_CAP,
};

/// Largest arity enumerated exhaustively per symmetric-function criterion.
const SYMMETRIC_SWEEP_MAX_K: usize = 14;
/// Arity of the exhaustive general-boolean nullity sweep (2^2^k functions).
const BOOLEAN_SWEEP_K: usize = 4;
/// Enumeration range for the global order bound.
const ENUM_MIN_K: usize = 5;
const ENUM_MAX_K: usize = 22;
/// Moment-matching sweep bound.
const MOMENT_SWEEP_MAX_K: usize = 10;
/// Variance sweep bound.
const VARIANCE_SWEEP_MAX_K: usize = 30;
/// Exact-learner sweep bounds.
const EXACT_CORE_MAX_K: usize = 4;
const EXACT_AMBIENT_MAX_N: usize = 10;
/// Sampled-learner trial design.
const TRIAL_SEEDS: u64 = 50;
const TRIAL_SUCCESS_FLOOR: u64 = 45;
const TRIAL_DELTA: f64 = 0.05;
const TRIAL_TIME_CAP_SECS: u64 = 600;
/// Prime-table cross-check bound.
const PRIME_SWEEP_LIMIT: u64 = 1_000_000;

/// Independent per-order nullity oracle: equality of the subcube acceptance
/// numerators `Σ_i f_i C(k−t, i−w)` over `w`, in plain integers.
fn numerators_equal_i64(tri: &[Vec<i64>], mask: u64, k: usize, t: usize) -> bool {
    let mut reference: Option<i64> = None;
    for w in 0..=t {
        let mut acc = 0i64;
        for i in 0..=k {
            if mask >> i & 1 == 1 {
                acc += tri_get(tri, k - t, i as i64 - w as i64);
            }
        }
        match reference {
            None => reference = Some(acc),
            Some(r) if r != acc => return false,
            _ => {}
        }
    }
    true
}

#[test]
fn c01_subcube_nullity_matches_spectral_gap() {
    // Every boolean function on BOOLEAN_SWEEP_K variables: conditioning
    // invariance at order t is exactly the absence of spectrum at levels
    // 1..=t, with the spectrum obtained by the transform.
    let k = BOOLEAN_SWEEP_K;
    for table in 0..1u64 << (1 << k) {
        let f = BooleanFunction::from_fn(k, |x| table >> x & 1 == 1).unwrap();
        let spectrum = fourier_transform(&f);
        let min_order = spectrum.min_nonzero_order();
        for t in 1..=k {
            let gap = min_order.is_none_or(|l| l > t);
            assert_eq!(
                boolean_is_t_null(&f, t).unwrap(),
                gap,
                "table {table:#06x} t={t}"
            );
        }
    }
    // Every symmetric function up to SYMMETRIC_SWEEP_MAX_K, every order:
    // the binomial-counting route against the character-sum route.
    for k in 1..=SYMMETRIC_SWEEP_MAX_K {
        let tri = triangle_i64(k);
        for mask in 0..1u64 << (k + 1) {
            let f = SymmetricFunction::from_mask(k, mask).unwrap();
            let min_order = f.min_nonzero_order();
            for t in 1..=k {
                let gap = min_order.is_none_or(|l| l > t);
                assert_eq!(
                    numerators_equal_i64(&tri, mask, k, t),
                    gap,
                    "k={k} mask={mask} t={t}"
                );
            }
        }
        // Tie the library's nullity entry point to the same oracle on the
        // arities where the full BigInt sweep stays cheap.
        if k <= 10 {
            for mask in 0..1u64 << (k + 1) {
                let f = SymmetricFunction::from_mask(k, mask).unwrap();
                for t in 1..=k {
                    assert_eq!(
                        is_t_null(&f, t).unwrap(),
                        numerators_equal_i64(&tri, mask, k, t)
                    );
                }
            }
        }
    }
    println!("ACCEPTANCE C01 subcube nullity matches spectral gap: PASS");
}

#[test]
fn c02_window_systems_decide_nullity_and_pin_exceptionals() {
    // Window consistency is nullity, at every order, for every symmetric
    // function up to the sweep bound.
    for k in 1..=SYMMETRIC_SWEEP_MAX_K {
        let tri = triangle_i64(k);
        for mask in 0..1u64 << (k + 1) {
            let f = SymmetricFunction::from_mask(k, mask).unwrap();
            for t0 in 1..=k {
                let ws = window_system(&f, t0).unwrap();
                assert_eq!(
                    ws.common_value.is_some(),
                    numerators_equal_i64(&tri, mask, k, t0),
                    "k={k} mask={mask} t0={t0}"
                );
            }
        }
    }
    // At the threshold order ceil(2k/3), the solution set of the window
    // system collapses to the four degenerate functions once k >= 3.
    for k in 3..=SYMMETRIC_SWEEP_MAX_K {
        let t0 = (2 * k).div_ceil(3);
        let mut solutions: Vec<u64> = Vec::new();
        for mask in 0..1u64 << (k + 1) {
            let f = SymmetricFunction::from_mask(k, mask).unwrap();
            if window_system(&f, t0).unwrap().common_value.is_some() {
                solutions.push(mask);
            }
        }
        let mut expected: Vec<u64> = (0..1u64 << (k + 1))
            .filter(|&m| SymmetricFunction::from_mask(k, m).unwrap().is_exceptional())
            .collect();
        expected.sort_unstable();
        solutions.sort_unstable();
        assert_eq!(solutions, expected, "k={k} t0={t0}");
        assert_eq!(solutions.len(), 4);
    }
    println!("ACCEPTANCE C02 window systems decide nullity and pin exceptionals: PASS");
}

#[test]
fn c03_enumerated_min_orders_respect_the_global_bound() {
    for k in ENUM_MIN_K..=ENUM_MAX_K {
        let report = enumerate_and_verify(k, DEFAULT_ENUM_CAP, |order| 3 * order <= 2 * k).unwrap();
        assert_eq!(report.examined, 1u64 << (k + 1));
        assert_eq!(report.exceptional, 4);
        assert_eq!(
            report.counterexample_count, 0,
            "k={k}: {:?}",
            report.counterexamples.first().map(|f| f.to_string())
        );
        let max = report.max_min_order.unwrap();
        assert!(3 * max <= 2 * k, "k={k} max={max}");
        let lower_reference = (3 * k).div_ceil(31);
        if k >= 11 {
            println!(
                "ACCEPTANCE C03 detail k={k}: max min-order {max}, bound {}, reference floor {lower_reference}, argmax count {}",
                2 * k / 3,
                report.argmax_count
            );
        }
    }
    println!("ACCEPTANCE C03 enumerated min orders respect the global bound: PASS");
}

#[test]
fn c04_difference_polynomials_fit_recur_and_cycle() {
    for k in 1..=SYMMETRIC_SWEEP_MAX_K {
        for mask in 0..1u64 << (k + 1) {
            let f = SymmetricFunction::from_mask(k, mask).unwrap();
            let t = maximal_null_order(&f);
            let n = (k - t).max(1);
            let values = signed_difference_values(&f);
            let poly = fit_binomial_polynomial(&values, n)
                .unwrap_or_else(|e| panic!("k={k} mask={mask}: {e}"));
            for n1 in n..=k {
                assert!(verify_recurrence(&f, n1).unwrap(), "k={k} mask={mask} n1={n1}");
            }
            if n < k {
                for p in primes_in_interval(n as u64, (k - 1) as u64).unwrap() {
                    let report =
                        mod_periodicity_check(&poly, p, 0..(k as i64 - p as i64)).unwrap();
                    assert!(report.congruent, "k={k} mask={mask} p={p}");
                    if p >= 3 {
                        assert_eq!(
                            report.exact_on_small_values,
                            Some(true),
                            "k={k} mask={mask} p={p}"
                        );
                    }
                }
            }
        }
    }
    println!("ACCEPTANCE C04 difference polynomials fit, recur, and cycle: PASS");
}

#[test]
fn c05_prime_stride_rows_reduce_exactly() {
    let table = symjunta_core::binom::BinomialTable::new(8 * 47);
    let mut checked = 0u64;
    for r in primes_up_to(50).unwrap() {
        for m in 0..=8u64 {
            assert!(lucas_row_check(m, r).unwrap(), "m={m} r={r}");
            // Digit reduction agrees with exact arithmetic across the row.
            for c in 0..=m * r {
                let via_digits = binomial_mod(m * r, c, r).unwrap();
                let exact = table.get((m * r) as usize, c as i64) % BigInt::from(r);
                assert_eq!(BigInt::from(via_digits), exact, "C({},{c}) mod {r}", m * r);
            }
            checked += 1;
        }
    }
    assert_eq!(checked, 15 * 9, "15 primes below 50, orders 0..=8");
    println!("ACCEPTANCE C05 prime stride rows reduce exactly: PASS");
}

#[test]
fn c06_source_moments_match_to_the_null_order() {
    for k in 1..=MOMENT_SWEEP_MAX_K {
        for mask in 1..1u64 << (k + 1) {
            let f = SymmetricFunction::from_mask(k, mask).unwrap();
            let r = maximal_null_order(&f);
            for report in [
                product_moment_report(&f).unwrap(),
                power_moment_report(&f).unwrap(),
            ] {
                assert_eq!(report.r, r, "k={k} mask={mask}");
                if r == k {
                    assert_eq!(report.matched_up_to, k);
                    assert!(report.first_mismatch.is_none(), "k={k} mask={mask}");
                } else {
                    assert_eq!(report.matched_up_to, r, "k={k} mask={mask}");
                    let mismatch = report.first_mismatch.expect("mismatch below arity");
                    assert_eq!(mismatch.s, r + 1, "k={k} mask={mask}");
                    assert_ne!(mismatch.nu, mismatch.mu);
                }
            }
        }
    }
    println!("ACCEPTANCE C06 source moments match exactly to the null order: PASS");
}

#[test]
fn c07_uniform_weight_variance_is_quarter_k() {
    for k in 1..=VARIANCE_SWEEP_MAX_K {
        let report = variance_gap_check(k, Ratio::new(1, 5)).unwrap();
        let quarter_k = BigRational::new(BigInt::from(k), BigInt::from(4));
        assert_eq!(report.var_mu, quarter_k, "k={k}");
        assert_eq!(report.var_mu_nominal, BigRational::from(BigInt::from(k)));
        assert!(
            !report.nominal_matches,
            "k={k}: the nominal variance figure k is 4x the true k/4"
        );
    }
    // The displaced two-point comparison from the running example.
    let example = variance_gap_check(100, Ratio::new(1, 5)).unwrap();
    assert_eq!(example.var_tau, BigRational::from(BigInt::from(100)));
    assert!(example.meets_bound && example.exceeds_uniform);
    println!("ACCEPTANCE C07 uniform weight variance is k/4 (nominal figure flagged): PASS");
}

#[test]
fn c08_exact_learner_recovers_every_small_core() {
    let mut runs = 0u64;
    for core_k in 1..=EXACT_CORE_MAX_K {
        for mask in 0..1u64 << (core_k + 1) {
            let core = SymmetricFunction::from_mask(core_k, mask).unwrap();
            for n in core_k..=EXACT_AMBIENT_MAX_N {
                let seed = (core_k as u64) << 32 | (n as u64) << 16 | mask;
                let instance = plant_instance(n, core.clone(), seed).unwrap();
                let cube = full_cube_examples(&instance);
                let result = learn_from_examples(&cube, n, EXACT_CORE_MAX_K)
                    .unwrap_or_else(|e| panic!("core_k={core_k} mask={mask} n={n}: {e}"));
                for e in &cube {
                    assert_eq!(
                        result.eval(e.x),
                        e.label,
                        "core_k={core_k} mask={mask} n={n} x={:#x}",
                        e.x
                    );
                }
                runs += 1;
            }
        }
    }
    assert_eq!(runs, 464, "full grid of cores and ambient sizes");
    println!("ACCEPTANCE C08 exact learner recovers every small core: PASS");
}

fn random_nonexceptional_core(k: usize, seed: u64) -> SymmetricFunction {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(2);
    loop {
        let mask = rng.gen_range(0..1u64 << (k + 1));
        let f = SymmetricFunction::from_mask(k, mask).unwrap();
        if !f.is_exceptional() {
            return f;
        }
    }
}

fn structural_match(result: &LearnResult, instance: &PlantedInstance) -> bool {
    result.relevant == instance.relevant() && &result.core == instance.core()
}

type CoreMaker = Box<dyn Fn(u64) -> SymmetricFunction>;

#[test]
fn c09_sampled_learner_hits_the_success_floor() {
    let start = Instant::now();
    let scenarios: Vec<(&str, usize, usize, CoreMaker)> = vec![
        ("majority-3 in 16", 16, 3, Box::new(|_| "0011".parse().unwrap())),
        ("parity-4 in 32", 32, 4, Box::new(|_| SymmetricFunction::parity(4))),
        ("constant-1 in 16", 16, 3, Box::new(|_| SymmetricFunction::constant(3, true))),
        (
            "random non-degenerate 5-junta in 32",
            32,
            5,
            Box::new(|seed| random_nonexceptional_core(5, seed)),
        ),
    ];
    for (name, n, k_max, make_core) in scenarios {
        let mut successes = 0u64;
        for seed in 0..TRIAL_SEEDS {
            let core = make_core(seed);
            let instance = plant_instance(n, core.clone(), seed).unwrap();
            let mut oracle = PlantedOracle::new(instance.clone(), seed);
            let ok = match learn_symmetric_junta(&mut oracle, k_max, TRIAL_DELTA) {
                Err(_) => false,
                Ok(result) => {
                    if core.is_constant() {
                        result.class
                            == if core.value_at_weight(0) {
                                FunctionClass::ConstantOne
                            } else {
                                FunctionClass::ConstantZero
                            }
                    } else {
                        structural_match(&result, &instance)
                    }
                }
            };
            successes += ok as u64;
        }
        println!("ACCEPTANCE C09 detail: {name}: {successes}/{TRIAL_SEEDS}");
        assert!(
            successes >= TRIAL_SUCCESS_FLOOR,
            "{name}: {successes}/{TRIAL_SEEDS} below floor {TRIAL_SUCCESS_FLOOR}"
        );
    }
    let elapsed = start.elapsed().as_secs();
    assert!(
        elapsed < TRIAL_TIME_CAP_SECS,
        "trials took {elapsed}s, cap {TRIAL_TIME_CAP_SECS}s"
    );
    println!(
        "ACCEPTANCE C09 sampled learner hits the success floor ({}s): PASS",
        elapsed
    );
}

#[test]
fn c10_sieve_agrees_with_trial_division_to_a_million() {
    let sieved = primes_up_to(PRIME_SWEEP_LIMIT).unwrap();
    let mut naive = Vec::with_capacity(80_000);
    for n in 2..=PRIME_SWEEP_LIMIT {
        let mut d = 2;
        let mut prime = true;
        while d * d <= n {
            if n % d == 0 {
                prime = false;
                break;
            }
            d += 1;
        }
        if prime {
            naive.push(n);
        }
    }
    assert_eq!(sieved.len(), 78_498, "pi(10^6)");
    assert_eq!(sieved, naive);
    println!("ACCEPTANCE C10 sieve agrees with trial division to a million: PASS");
}
