//! Learning a symmetric junta from uniform random examples: planted
//! instances, exact-threshold Fourier coefficient estimation, affine parity
//! fitting over GF(2), level-by-level search for the relevant coordinates,
//! and truth-table recovery from weight-class majorities.

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::boolfn::{subsets_of_size, SymmetricFunction, CUBE_ARITY_CAP, MAX_POINT_BITS};
use crate::{Error, Result};

/// Generator stream used when sampling the hidden coordinate set.
pub const PLANT_STREAM: u64 = 0;
/// Generator stream used when drawing labeled examples.
pub const DRAW_STREAM: u64 = 1;

/// One labeled sample: an `n`-bit point and its label.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Example {
    pub x: u64,
    pub label: bool,
}

/// A hidden symmetric junta: a core function applied to a fixed set of
/// coordinate positions inside a larger ambient cube.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PlantedInstance {
    n: usize,
    relevant: Vec<usize>,
    core: SymmetricFunction,
}

impl PlantedInstance {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Hidden positions, strictly increasing.
    pub fn relevant(&self) -> &[usize] {
        &self.relevant
    }

    pub fn core(&self) -> &SymmetricFunction {
        &self.core
    }

    pub fn relevant_mask(&self) -> u64 {
        self.relevant.iter().fold(0, |m, &i| m | (1u64 << i))
    }

    pub fn eval(&self, x: u64) -> bool {
        let w = (x & self.relevant_mask()).count_ones() as usize;
        self.core.value_at_weight(w)
    }
}

/// Plants `core` on a uniformly random set of `core.k()` positions among
/// `n`, drawn from the dedicated planting stream of the seeded generator.
pub fn plant_instance(n: usize, core: SymmetricFunction, seed: u64) -> Result<PlantedInstance> {
    let k = core.k();
    if !(1..=MAX_POINT_BITS).contains(&n) {
        return Err(Error::BitLength { len: n, max: MAX_POINT_BITS });
    }
    if k > n {
        return Err(Error::ArityMismatch { expected: n, got: k });
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(PLANT_STREAM);
    let mut chosen = alloc::collections::BTreeSet::new();
    while chosen.len() < k {
        chosen.insert(rng.gen_range(0..n));
    }
    Ok(PlantedInstance {
        n,
        relevant: chosen.into_iter().collect(),
        core,
    })
}

/// A source of labeled examples over `{0,1}^n`.
pub trait ExampleOracle {
    fn n(&self) -> usize;
    fn draw(&mut self) -> Example;
}

/// Labels uniform random points with a planted instance, drawing from the
/// dedicated example stream of the seeded generator.
pub struct PlantedOracle {
    instance: PlantedInstance,
    mask: u64,
    rng: ChaCha12Rng,
}

impl PlantedOracle {
    pub fn new(instance: PlantedInstance, seed: u64) -> PlantedOracle {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        rng.set_stream(DRAW_STREAM);
        let mask = if instance.n == MAX_POINT_BITS {
            u64::MAX
        } else {
            (1u64 << instance.n) - 1
        };
        PlantedOracle { instance, mask, rng }
    }

    pub fn instance(&self) -> &PlantedInstance {
        &self.instance
    }
}

impl ExampleOracle for PlantedOracle {
    fn n(&self) -> usize {
        self.instance.n
    }

    fn draw(&mut self) -> Example {
        let x = self.rng.gen::<u64>() & self.mask;
        Example {
            x,
            label: self.instance.eval(x),
        }
    }
}

pub fn draw_examples(oracle: &mut impl ExampleOracle, count: u64) -> Vec<Example> {
    (0..count).map(|_| oracle.draw()).collect()
}

/// Every labeled point of the ambient cube, in point order — the exact
///"oracle" used when the learner is run on a full truth table.
pub fn full_cube_examples(instance: &PlantedInstance) -> Vec<Example> {
    (0..1u64 << instance.n)
        .map(|x| Example {
            x,
            label: instance.eval(x),
        })
        .collect()
}

/// Sizing of the estimation phase: how many subsets compete and how many
/// samples drive every decision below the failure budget.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct EstimationPlan {
    pub n: usize,
    pub k_max: usize,
    /// Deepest level searched.
    pub t_max: usize,
    pub delta: f64,
    /// Number of candidate subsets of size `<= t_max` (union-bound count).
    pub subset_count: u128,
    /// The decision threshold is `2^{-threshold_log2}`.
    pub threshold_log2: usize,
    /// Samples drawn for the estimation phase.
    pub sample_size: u64,
}

impl EstimationPlan {
    /// `sample_size = ceil(2 · 4^(k_max+1) · ln(2·subset_count/delta))`,
    /// which drives every per-subset estimate within half the threshold of
    /// its mean except with probability `delta` overall.
    pub fn new(n: usize, k_max: usize, t_max: usize, delta: f64) -> Result<EstimationPlan> {
        if !(delta > 0.0 && delta < 1.0) {
            return Err(Error::InvalidConfidence);
        }
        if !(1..=CUBE_ARITY_CAP).contains(&k_max) {
            return Err(Error::ResourceCap {
                what: "junta arity bound",
                requested: k_max as u64,
                cap: CUBE_ARITY_CAP as u64,
            });
        }
        if n < k_max || n > MAX_POINT_BITS {
            return Err(Error::BitLength { len: n, max: MAX_POINT_BITS });
        }
        if t_max < 1 || t_max > n {
            return Err(Error::ConditionOutOfRange { t: t_max, w: 0, k: n });
        }
        let mut subset_count: u128 = 0;
        let mut level_count: u128 = 1;
        for l in 0..=t_max {
            if l > 0 {
                level_count = level_count * (n - l + 1) as u128 / l as u128;
            }
            subset_count += level_count;
        }
        let ln_arg = 2.0 * subset_count as f64 / delta;
        let samples = 2.0 * libm::exp2(2.0 * (k_max + 1) as f64) * libm::log(ln_arg);
        Ok(EstimationPlan {
            n,
            k_max,
            t_max,
            delta,
            subset_count,
            threshold_log2: k_max + 1,
            sample_size: libm::ceil(samples) as u64,
        })
    }
}

/// Deepest level the search must reach for a non-degenerate core of arity
/// `<= k_max`: the order bound `2k/3`, floored, never below 1.
pub fn default_level_budget(k_max: usize) -> usize {
    (2 * k_max / 3).max(1)
}

/// Empirical correlation of the labels with the parity of a coordinate
/// subset, kept as an exact integer sum for threshold decisions.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CoefficientEstimate {
    pub subset: u64,
    /// `Σ_i (−1)^{label_i ⊕ parity_i}`.
    pub signed_sum: i64,
    pub samples: u64,
}

impl CoefficientEstimate {
    /// `|signed_sum / samples| > 2^{-threshold_log2}`, decided exactly in
    /// integers.
    pub fn exceeds_threshold(&self, threshold_log2: usize) -> bool {
        (u128::from(self.signed_sum.unsigned_abs())) << threshold_log2 > u128::from(self.samples)
    }

    pub fn value_f64(&self) -> f64 {
        self.signed_sum as f64 / self.samples as f64
    }
}

pub fn estimate_coefficient(examples: &[Example], subset: u64) -> CoefficientEstimate {
    let mut sum = 0i64;
    for e in examples {
        let parity = (e.x & subset).count_ones() & 1;
        sum += 1 - 2 * ((parity as i64) ^ (e.label as i64));
    }
    CoefficientEstimate {
        subset,
        signed_sum: sum,
        samples: examples.len() as u64,
    }
}

/// A consistent affine parity over GF(2): `label = parity(x & vars) ⊕ affine`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ParityFit {
    pub vars: u64,
    pub affine: bool,
}

/// Result of fitting an affine parity to a batch of examples.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ParityOutcome {
    /// The unique affine parity consistent with the batch.
    Affine(ParityFit),
    /// No affine parity fits; the witness index breaks consistency.
    Inconsistent { at_example: usize },
    /// Several affine parities fit (too few independent examples).
    Underdetermined { rank: usize },
}

/// Incremental reduced row echelon form over GF(2). Each example `(x, b)`
/// contributes the equation `Σ c_i x_i + c_n = b` in the unknown coefficient
/// bits `c` (bit `n` is the affine constant, bit `n+1` holds the right-hand
/// side).
pub fn fit_affine_parity(examples: &[Example], n: usize) -> ParityOutcome {
    let rhs_bit = n + 1;
    let unknown_mask: u128 = (1u128 << (n + 1)) - 1;
    let mut rows: Vec<u128> = Vec::new();
    for (idx, e) in examples.iter().enumerate() {
        let mut row = e.x as u128;
        if n < MAX_POINT_BITS {
            row &= (1u128 << n) - 1;
        }
        row |= 1u128 << n;
        row |= (e.label as u128) << rhs_bit;
        for &r in &rows {
            let pivot = (r & unknown_mask).trailing_zeros();
            if row >> pivot & 1 == 1 {
                row ^= r;
            }
        }
        if row & unknown_mask == 0 {
            if row != 0 {
                return ParityOutcome::Inconsistent { at_example: idx };
            }
            continue;
        }
        let pivot = (row & unknown_mask).trailing_zeros();
        for r in rows.iter_mut() {
            if *r >> pivot & 1 == 1 {
                *r ^= row;
            }
        }
        rows.push(row);
    }
    if rows.len() < n + 1 {
        return ParityOutcome::Underdetermined { rank: rows.len() };
    }
    // Full-rank RREF: every row is a pivot column plus its RHS bit.
    let mut vars = 0u64;
    let mut affine = false;
    for row in rows {
        let pivot = (row & unknown_mask).trailing_zeros() as usize;
        let value = row >> rhs_bit & 1 == 1;
        if pivot == n {
            affine = value;
        } else if value {
            vars |= 1 << pivot;
        }
    }
    ParityOutcome::Affine(ParityFit { vars, affine })
}

/// What shape of function the learner identified.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FunctionClass {
    ConstantZero,
    ConstantOne,
    Parity,
    ParityComplement,
    GeneralSymmetric,
}

impl FunctionClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            FunctionClass::ConstantZero => "constant-0",
            FunctionClass::ConstantOne => "constant-1",
            FunctionClass::Parity => "parity",
            FunctionClass::ParityComplement => "parity-complement",
            FunctionClass::GeneralSymmetric => "general-symmetric",
        }
    }
}

/// The learner's answer: a class tag, the identified coordinates (sorted),
/// the core truth table over their count, and how many examples were read.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LearnResult {
    pub class: FunctionClass,
    pub relevant: Vec<usize>,
    pub core: SymmetricFunction,
    pub examples_used: u64,
}

impl LearnResult {
    /// Evaluates the learned hypothesis at an ambient point.
    pub fn eval(&self, x: u64) -> bool {
        let mask = self.relevant.iter().fold(0u64, |m, &i| m | (1 << i));
        self.core.value_at_weight((x & mask).count_ones() as usize)
    }
}

fn classify(core: &SymmetricFunction) -> FunctionClass {
    if core.is_constant() {
        if core.value_at_weight(0) {
            FunctionClass::ConstantOne
        } else {
            FunctionClass::ConstantZero
        }
    } else if core.is_parity() {
        FunctionClass::Parity
    } else if core.is_parity_complement() {
        FunctionClass::ParityComplement
    } else {
        FunctionClass::GeneralSymmetric
    }
}

fn constant_result(value: bool, examples_used: u64) -> Result<LearnResult> {
    Ok(LearnResult {
        class: if value {
            FunctionClass::ConstantOne
        } else {
            FunctionClass::ConstantZero
        },
        relevant: Vec::new(),
        core: SymmetricFunction::from_values(vec![value])?,
        examples_used,
    })
}

fn parity_result(fit: ParityFit, examples_used: u64) -> Result<LearnResult> {
    let relevant: Vec<usize> = (0..MAX_POINT_BITS).filter(|&i| fit.vars >> i & 1 == 1).collect();
    let k = relevant.len();
    let core = if fit.affine {
        SymmetricFunction::parity_complement(k)
    } else {
        SymmetricFunction::parity(k)
    };
    Ok(LearnResult {
        class: if fit.affine {
            FunctionClass::ParityComplement
        } else {
            FunctionClass::Parity
        },
        relevant,
        core,
        examples_used,
    })
}

/// Required sightings per weight class before majority vote, sized so that
/// all `k+1` classes are confidently filled: `ceil(log2((k+1)/delta))`.
pub fn recovery_hits_needed(k: usize, delta: f64) -> Result<u64> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidConfidence);
    }
    Ok(libm::ceil(libm::log2((k + 1) as f64 / delta)) as u64)
}

/// Default draw budget for recovery: generous multiple of the expected
/// coupon-collection cost of the rarest weight class.
pub fn recovery_budget(k: usize, hits_needed: u64) -> u64 {
    32u64.saturating_mul(1u64 << k).saturating_mul(hits_needed + 8)
}

/// Reads fresh examples until every weight class of `x & relevant_mask` has
/// been seen `hits_needed` times, then majority-votes each class. Fails with
/// the starving class if the budget runs out first.
pub fn recover_truth_table(
    oracle: &mut impl ExampleOracle,
    relevant_mask: u64,
    hits_needed: u64,
    budget: u64,
) -> Result<(SymmetricFunction, u64)> {
    let k = relevant_mask.count_ones() as usize;
    let mut ones = vec![0u64; k + 1];
    let mut total = vec![0u64; k + 1];
    let mut drawn = 0u64;
    while total.iter().any(|&t| t < hits_needed) {
        if drawn >= budget {
            let weight = total.iter().position(|&t| t < hits_needed).unwrap_or(0);
            return Err(Error::ClassStarved { weight, budget });
        }
        let e = oracle.draw();
        drawn += 1;
        let w = (e.x & relevant_mask).count_ones() as usize;
        total[w] += 1;
        ones[w] += e.label as u64;
    }
    let values: Vec<bool> = (0..=k).map(|w| 2 * ones[w] > total[w]).collect();
    Ok((SymmetricFunction::from_values(values)?, drawn))
}

/// Truth-table recovery from a fixed batch instead of an oracle; every
/// weight class must appear in the batch.
pub fn recover_truth_table_from(examples: &[Example], relevant_mask: u64) -> Result<SymmetricFunction> {
    let k = relevant_mask.count_ones() as usize;
    let mut ones = vec![0u64; k + 1];
    let mut total = vec![0u64; k + 1];
    for e in examples {
        let w = (e.x & relevant_mask).count_ones() as usize;
        total[w] += 1;
        ones[w] += e.label as u64;
    }
    if let Some(weight) = total.iter().position(|&t| t == 0) {
        return Err(Error::ClassStarved {
            weight,
            budget: examples.len() as u64,
        });
    }
    let values: Vec<bool> = (0..=k).map(|w| 2 * ones[w] > total[w]).collect();
    SymmetricFunction::from_values(values)
}

/// Runs the full pipeline against an example oracle: constant test, affine
/// parity fit, then level-by-level coefficient search up to the order bound,
/// finishing with truth-table recovery on the identified coordinates.
pub fn learn_symmetric_junta(
    oracle: &mut impl ExampleOracle,
    k_max: usize,
    delta: f64,
) -> Result<LearnResult> {
    let n = oracle.n();
    // Every function of n variables is an n-junta, so a larger stated bound
    // adds nothing; clamping keeps small ambient cubes usable.
    let k_max = k_max.min(n);
    let t_max = default_level_budget(k_max).min(n);
    let plan = EstimationPlan::new(n, k_max, t_max, delta)?;
    let examples = draw_examples(oracle, plan.sample_size);
    let mut used = plan.sample_size;

    match pipeline_on_batch(&examples, &plan)? {
        PipelineOutcome::Done(mut result) => {
            result.examples_used = used;
            Ok(result)
        }
        PipelineOutcome::Relevant(relevant_mask) => {
            let k = relevant_mask.count_ones() as usize;
            let hits = recovery_hits_needed(k, delta)?;
            let (core, drawn) =
                recover_truth_table(oracle, relevant_mask, hits, recovery_budget(k, hits))?;
            used += drawn;
            Ok(LearnResult {
                class: classify(&core),
                relevant: (0..MAX_POINT_BITS).filter(|&i| relevant_mask >> i & 1 == 1).collect(),
                core,
                examples_used: used,
            })
        }
    }
}

/// Runs the same pipeline on a fixed batch (typically a full truth table,
/// where every threshold decision is exact), recovering the core from the
/// batch itself.
pub fn learn_from_examples(examples: &[Example], n: usize, k_max: usize) -> Result<LearnResult> {
    let k_max = k_max.min(n);
    let t_max = default_level_budget(k_max).min(n);
    // The plan's sample size is irrelevant here; only the threshold and the
    // level budget are used. Any valid confidence works.
    let plan = EstimationPlan::new(n, k_max, t_max, 0.5)?;
    match pipeline_on_batch(examples, &plan)? {
        PipelineOutcome::Done(mut result) => {
            result.examples_used = examples.len() as u64;
            Ok(result)
        }
        PipelineOutcome::Relevant(relevant_mask) => {
            let core = recover_truth_table_from(examples, relevant_mask)?;
            Ok(LearnResult {
                class: classify(&core),
                relevant: (0..MAX_POINT_BITS).filter(|&i| relevant_mask >> i & 1 == 1).collect(),
                core,
                examples_used: examples.len() as u64,
            })
        }
    }
}

enum PipelineOutcome {
    Done(LearnResult),
    Relevant(u64),
}

fn pipeline_on_batch(examples: &[Example], plan: &EstimationPlan) -> Result<PipelineOutcome> {
    if examples.is_empty() {
        return Err(Error::LearnDiagnostic { stage: "empty batch" });
    }
    // Constant functions: every label agrees.
    let first = examples[0].label;
    if examples.iter().all(|e| e.label == first) {
        return Ok(PipelineOutcome::Done(constant_result(first, 0)?));
    }
    // Affine parities: the only symmetric cores invisible to low levels.
    match fit_affine_parity(examples, plan.n) {
        ParityOutcome::Affine(fit) => {
            if fit.vars == 0 {
                // A constant fit would have been caught above.
                return Err(Error::LearnDiagnostic { stage: "degenerate parity fit" });
            }
            if (fit.vars.count_ones() as usize) > plan.k_max {
                return Err(Error::LearnDiagnostic { stage: "parity arity exceeds bound" });
            }
            return Ok(PipelineOutcome::Done(parity_result(fit, 0)?));
        }
        ParityOutcome::Underdetermined { .. } => {
            return Err(Error::LearnDiagnostic { stage: "parity fit underdetermined" });
        }
        ParityOutcome::Inconsistent { .. } => {}
    }
    // Level search: the lowest level with a surviving coefficient marks
    // exactly the subsets of the relevant set, whose union is all of it.
    for l in 1..=plan.t_max {
        let mut union = 0u64;
        let mut hit = false;
        for subset in subsets_of_size(plan.n, l) {
            if estimate_coefficient(examples, subset).exceeds_threshold(plan.threshold_log2) {
                union |= subset;
                hit = true;
            }
        }
        if hit {
            if (union.count_ones() as usize) > plan.k_max {
                return Err(Error::LearnDiagnostic { stage: "level union exceeds arity bound" });
            }
            return Ok(PipelineOutcome::Relevant(union));
        }
    }
    Err(Error::LearnDiagnostic { stage: "no coefficient above threshold" })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn sym(s: &str) -> SymmetricFunction {
        s.parse().unwrap()
    }

    #[test]
    fn planting_is_deterministic_and_in_range() {
        let a = plant_instance(16, sym("0011"), 7).unwrap();
        let b = plant_instance(16, sym("0011"), 7).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.relevant().len(), 3);
        assert!(a.relevant().windows(2).all(|w| w[0] < w[1]));
        assert!(a.relevant().iter().all(|&i| i < 16));
        let c = plant_instance(16, sym("0011"), 8).unwrap();
        assert_ne!(a.relevant(), c.relevant(), "different seeds, different plants");
        assert!(plant_instance(2, sym("0011"), 0).is_err());
    }

    #[test]
    fn oracle_streams_are_deterministic() {
        let instance = plant_instance(12, sym("0101"), 3).unwrap();
        let mut o1 = PlantedOracle::new(instance.clone(), 3);
        let mut o2 = PlantedOracle::new(instance.clone(), 3);
        let e1 = draw_examples(&mut o1, 100);
        let e2 = draw_examples(&mut o2, 100);
        assert_eq!(e1, e2);
        for e in &e1 {
            assert!(e.x < 1 << 12);
            assert_eq!(e.label, instance.eval(e.x));
        }
    }

    #[test]
    fn sample_size_frozen_value() {
        let plan = EstimationPlan::new(16, 3, 1, 0.05).unwrap();
        assert_eq!(plan.subset_count, 17);
        assert_eq!(plan.threshold_log2, 4);
        assert_eq!(plan.sample_size, 3340);
        assert!(EstimationPlan::new(16, 3, 1, 0.0).is_err());
        assert!(EstimationPlan::new(16, 3, 1, 1.0).is_err());
        assert!(EstimationPlan::new(2, 3, 1, 0.1).is_err());
    }

    #[test]
    fn estimates_are_exact_on_the_full_cube() {
        let instance = plant_instance(6, sym("0011"), 11).unwrap();
        let cube = full_cube_examples(&instance);
        let mask = instance.relevant_mask();
        // Singleton inside the relevant set: the core's signed correlation
        // scaled up by the ambient factor 2^{n-k}.
        let inside = 1u64 << instance.relevant()[0];
        let est = estimate_coefficient(&cube, inside);
        assert_eq!(est.signed_sum, 32);
        assert!(est.exceeds_threshold(4));
        // Any subset touching an irrelevant coordinate correlates to zero.
        let outside = 1u64 << (0..6).find(|&i| mask >> i & 1 == 0).unwrap();
        assert_eq!(estimate_coefficient(&cube, outside).signed_sum, 0);
        assert_eq!(estimate_coefficient(&cube, inside | outside).signed_sum, 0);
    }

    #[test]
    fn parity_fit_identifies_affine_parities() {
        let instance = plant_instance(10, SymmetricFunction::parity(4), 5).unwrap();
        let cube = full_cube_examples(&instance);
        match fit_affine_parity(&cube, 10) {
            ParityOutcome::Affine(fit) => {
                assert_eq!(fit.vars, instance.relevant_mask());
                assert!(!fit.affine);
            }
            other => panic!("expected affine fit, got {other:?}"),
        }
        let comp = plant_instance(10, SymmetricFunction::parity_complement(4), 5).unwrap();
        match fit_affine_parity(&full_cube_examples(&comp), 10) {
            ParityOutcome::Affine(fit) => {
                assert_eq!(fit.vars, comp.relevant_mask());
                assert!(fit.affine);
            }
            other => panic!("expected affine fit, got {other:?}"),
        }
    }

    #[test]
    fn parity_fit_rejects_majority_and_detects_rank_deficit() {
        let instance = plant_instance(8, sym("0011"), 2).unwrap();
        let cube = full_cube_examples(&instance);
        assert!(matches!(
            fit_affine_parity(&cube, 8),
            ParityOutcome::Inconsistent { .. }
        ));
        assert!(matches!(
            fit_affine_parity(&cube[..3], 8),
            ParityOutcome::Underdetermined { .. }
        ));
    }

    #[test]
    fn exact_batch_learning_recovers_planted_cores() {
        for (core, class) in [
            (sym("0011"), FunctionClass::GeneralSymmetric),
            (sym("0111"), FunctionClass::GeneralSymmetric),
            (SymmetricFunction::parity(2), FunctionClass::Parity),
            (SymmetricFunction::parity_complement(3), FunctionClass::ParityComplement),
        ] {
            let instance = plant_instance(7, core.clone(), 13).unwrap();
            let cube = full_cube_examples(&instance);
            let result = learn_from_examples(&cube, 7, 4).unwrap();
            assert_eq!(result.class, class, "core {core}");
            assert_eq!(result.relevant, instance.relevant());
            assert_eq!(result.core, core);
            for e in &cube {
                assert_eq!(result.eval(e.x), e.label);
            }
        }
    }

    #[test]
    fn exact_batch_learning_recovers_constants() {
        for value in [false, true] {
            let instance = plant_instance(6, SymmetricFunction::constant(3, value), 1).unwrap();
            let cube = full_cube_examples(&instance);
            let result = learn_from_examples(&cube, 6, 3).unwrap();
            assert_eq!(
                result.class,
                if value { FunctionClass::ConstantOne } else { FunctionClass::ConstantZero }
            );
            assert!(result.relevant.is_empty());
            assert_eq!(result.core.k(), 0);
            assert_eq!(result.core.value_at_weight(0), value);
        }
    }

    #[test]
    fn sampled_learning_recovers_a_planted_majority() {
        let instance = plant_instance(16, sym("0011"), 42).unwrap();
        let mut oracle = PlantedOracle::new(instance.clone(), 42);
        let result = learn_symmetric_junta(&mut oracle, 3, 0.05).unwrap();
        assert_eq!(result.class, FunctionClass::GeneralSymmetric);
        assert_eq!(result.relevant, instance.relevant());
        assert_eq!(result.core, *instance.core());
        assert!(result.examples_used >= 3340);
    }

    #[test]
    fn sampled_learning_is_seed_deterministic() {
        let instance = plant_instance(16, sym("0101"), 9).unwrap();
        let r1 = learn_symmetric_junta(&mut PlantedOracle::new(instance.clone(), 9), 3, 0.05).unwrap();
        let r2 = learn_symmetric_junta(&mut PlantedOracle::new(instance, 9), 3, 0.05).unwrap();
        assert_eq!(r1, r2);
        assert_eq!(r1.class, FunctionClass::Parity);
    }

    #[test]
    fn recovery_respects_its_budget() {
        let instance = plant_instance(12, sym("0011"), 21).unwrap();
        let mask = instance.relevant_mask();
        let mut oracle = PlantedOracle::new(instance, 21);
        assert!(matches!(
            recover_truth_table(&mut oracle, mask, 5, 3),
            Err(Error::ClassStarved { .. })
        ));
        let (core, drawn) = recover_truth_table(&mut oracle, mask, 5, recovery_budget(3, 5)).unwrap();
        assert_eq!(core, sym("0011"));
        assert!(drawn <= recovery_budget(3, 5));
    }

    #[test]
    fn batch_recovery_requires_full_class_coverage() {
        let instance = plant_instance(5, sym("0011"), 4).unwrap();
        let cube = full_cube_examples(&instance);
        let mask = instance.relevant_mask();
        assert_eq!(recover_truth_table_from(&cube, mask).unwrap(), sym("0011"));
        // Drop all all-ones-on-relevant points: weight class 3 starves.
        let partial: Vec<Example> = cube
            .iter()
            .copied()
            .filter(|e| (e.x & mask).count_ones() < 3)
            .collect();
        assert_eq!(
            recover_truth_table_from(&partial, mask),
            Err(Error::ClassStarved { weight: 3, budget: partial.len() as u64 })
        );
    }

    #[test]
    fn class_tags_render_stably() {
        assert_eq!(FunctionClass::ConstantZero.as_str(), "constant-0");
        assert_eq!(FunctionClass::GeneralSymmetric.as_str().to_string(), "general-symmetric");
    }
}
