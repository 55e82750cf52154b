//! Structural invariants of symmetric functions: subcube conditional
//! probabilities and nullity, window equation systems over the weight values,
//! difference sequences, binomial-coefficient polynomials fitted to them, and
//! exhaustive verification of order bounds over all symmetric functions of a
//! given arity.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Zero};

use crate::binom::{binomial_at, tri_get, triangle_i64, BinomialTable};
use crate::boolfn::{subsets_of_size, BooleanFunction, SymmetricFunction};
use crate::{Error, Result};

/// Default cap on the arity accepted by exhaustive enumeration
/// (`2^(k+1)` functions are examined).
pub const DEFAULT_ENUM_CAP: usize = 22;

/// Conditional acceptance probabilities of a symmetric function after fixing
/// `t` coordinates, one entry per fixed-part weight `w`. The probability for
/// weight `w` is `numerators[w] / 2^(k−t)`; all entries share that scale.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NullityProfile {
    pub k: usize,
    pub t: usize,
    /// `numerators[w] = Σ_i f_i · C(k−t, i−w)` for `w = 0..=t`.
    pub numerators: Vec<BigInt>,
    /// log2 of the common denominator, i.e. `k − t`.
    pub scale_log2: usize,
    /// All conditional probabilities equal.
    pub is_null: bool,
}

/// `Pr[f = 1 | t fixed coordinates of weight w]` as an exact rational.
pub fn conditional_prob(f: &SymmetricFunction, t: usize, w: usize) -> Result<BigRational> {
    let k = f.k();
    if t < 1 || t > k || w > t {
        return Err(Error::ConditionOutOfRange { t, w, k });
    }
    let table = BinomialTable::new(k);
    let num = conditional_numerator(f, &table, t, w);
    Ok(BigRational::new(num, BigInt::one() << (k - t)))
}

fn conditional_numerator(f: &SymmetricFunction, table: &BinomialTable, t: usize, w: usize) -> BigInt {
    let k = f.k();
    let mut acc = BigInt::zero();
    for (i, &fi) in f.values().iter().enumerate() {
        if fi {
            acc += table.get(k - t, i as i64 - w as i64);
        }
    }
    acc
}

/// Computes the full profile for conditioning order `t` (`1 <= t <= k`).
pub fn nullity_profile(f: &SymmetricFunction, t: usize) -> Result<NullityProfile> {
    let k = f.k();
    if t < 1 || t > k {
        return Err(Error::ConditionOutOfRange { t, w: 0, k });
    }
    let table = BinomialTable::new(k);
    let numerators: Vec<BigInt> = (0..=t)
        .map(|w| conditional_numerator(f, &table, t, w))
        .collect();
    let is_null = numerators.iter().all(|n| *n == numerators[0]);
    Ok(NullityProfile {
        k,
        t,
        numerators,
        scale_log2: k - t,
        is_null,
    })
}

/// Whether fixing any `t` coordinates leaves the acceptance probability
/// unchanged.
pub fn is_t_null(f: &SymmetricFunction, t: usize) -> Result<bool> {
    Ok(nullity_profile(f, t)?.is_null)
}

/// Largest `t` for which the function is `t`-null (`k` for constants, `0`
/// when even single-coordinate conditioning shifts the probability). Equals
/// `min_nonzero_order − 1` by the nullity/spectrum correspondence.
pub fn maximal_null_order(f: &SymmetricFunction) -> usize {
    match f.min_nonzero_order() {
        None => f.k(),
        Some(l) => l - 1,
    }
}

/// Acceptance counts of a general boolean function on every subcube obtained
/// by fixing the coordinates in `s_mask`: entry `sigma` (an index over the
/// compressed fixed bits) counts points `x` with `f(x) = 1` agreeing with
/// `sigma` on `s_mask`.
pub fn subcube_counts(f: &BooleanFunction, s_mask: u64) -> Vec<u64> {
    let positions: Vec<u32> = (0..f.k() as u32).filter(|&i| s_mask >> i & 1 == 1).collect();
    let mut counts = vec![0u64; 1 << positions.len()];
    for x in 0..f.domain_size() {
        if f.get(x) {
            let mut sigma = 0usize;
            for (bit, &pos) in positions.iter().enumerate() {
                sigma |= ((x >> pos & 1) as usize) << bit;
            }
            counts[sigma] += 1;
        }
    }
    counts
}

/// Whether every conditioning of `t` coordinates (any subset, any fixed
/// pattern) leaves the acceptance probability of `f` unchanged.
pub fn boolean_is_t_null(f: &BooleanFunction, t: usize) -> Result<bool> {
    let k = f.k();
    if t < 1 || t > k {
        return Err(Error::ConditionOutOfRange { t, w: 0, k });
    }
    let mut reference: Option<u64> = None;
    for s in subsets_of_size(k, t) {
        for count in subcube_counts(f, s) {
            match reference {
                None => reference = Some(count),
                Some(r) if r != count => return Ok(false),
                _ => {}
            }
        }
    }
    Ok(true)
}

/// The window equation system of order `t0`: sliding sums of the weight
/// values against the binomial window of width `N = k − t0`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WindowSystem {
    pub k: usize,
    pub t0: usize,
    /// Window width `N = k − t0` (0 when `t0 = k`, where each sum degenerates
    /// to a single weight value).
    pub n_param: usize,
    /// `sums[v] = Σ_j C(N, j) · f_{v+j}` for `v = 0..=t0`.
    pub sums: Vec<BigInt>,
    /// The common value when the system is consistent (all sums equal).
    pub common_value: Option<BigInt>,
    /// `t0 / k`, the conditioning fraction the system encodes.
    pub epsilon: Ratio<u64>,
}

/// Builds the window system for `1 <= t0 <= k`. Consistency of the system is
/// equivalent to `t0`-nullity; both routes are computed independently and
/// compared in tests rather than assumed.
pub fn window_system(f: &SymmetricFunction, t0: usize) -> Result<WindowSystem> {
    let k = f.k();
    if t0 < 1 || t0 > k {
        return Err(Error::ConditionOutOfRange { t: t0, w: 0, k });
    }
    let n_param = k - t0;
    let table = BinomialTable::new(k.max(1));
    let mut sums = Vec::with_capacity(t0 + 1);
    for v in 0..=t0 {
        let mut acc = BigInt::zero();
        for j in 0..=n_param {
            if f.value_at_weight(v + j) {
                acc += table.get_ref(n_param, j);
            }
        }
        sums.push(acc);
    }
    let consistent = sums.iter().all(|s| *s == sums[0]);
    let common_value = consistent.then(|| sums[0].clone());
    Ok(WindowSystem {
        k,
        t0,
        n_param,
        sums,
        common_value,
        epsilon: Ratio::new(t0 as u64, k as u64),
    })
}

/// Successive differences `X_j = f_{j+1} − f_j` of the weight values,
/// entries in {−1, 0, 1}.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DifferenceSequence {
    pub deltas: Vec<i8>,
}

pub fn difference_sequence(f: &SymmetricFunction) -> DifferenceSequence {
    let v = f.values();
    DifferenceSequence {
        deltas: v.windows(2).map(|w| w[1] as i8 - w[0] as i8).collect(),
    }
}

impl DifferenceSequence {
    /// After erasing zeros, the remaining entries strictly alternate in sign
    /// (a structural fact for differences of 0/1 sequences).
    pub fn alternation_holds(&self) -> bool {
        let mut last = 0i8;
        for &d in self.deltas.iter().filter(|&&d| d != 0) {
            if d == last {
                return false;
            }
            last = d;
        }
        true
    }
}

/// An integer-valued polynomial in the binomial basis:
/// `P(x) = Σ_j coeffs[j] · C(x, j)`, degree `< coeffs.len()`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BinomialPolynomial {
    coeffs: Vec<BigInt>,
}

impl BinomialPolynomial {
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        BinomialPolynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Upper bound on `degree + 1` (the fitted window width `N`).
    pub fn degree_bound(&self) -> usize {
        self.coeffs.len()
    }

    /// Exact evaluation at any integer point via generalized binomials.
    pub fn eval(&self, x: i64) -> BigInt {
        let mut acc = BigInt::zero();
        for (j, a) in self.coeffs.iter().enumerate() {
            if !a.is_zero() {
                acc += a * binomial_at(x, j);
            }
        }
        acc
    }
}

/// Fits `P` of degree `< n_bound` through `values[i] = P(i)` by Newton
/// forward differences at 0, then checks every remaining sample. Fails with
/// the index of the first sample no such polynomial can reproduce.
pub fn fit_binomial_polynomial(values: &[BigInt], n_bound: usize) -> Result<BinomialPolynomial> {
    if n_bound < 1 || n_bound > values.len() {
        return Err(Error::InvalidRange {
            lo: n_bound as u64,
            hi: values.len() as u64,
        });
    }
    let mut diffs = values.to_vec();
    let mut coeffs = Vec::with_capacity(n_bound);
    for _ in 0..n_bound {
        coeffs.push(diffs[0].clone());
        for i in 0..diffs.len() - 1 {
            diffs[i] = &diffs[i + 1] - &diffs[i];
        }
        diffs.pop();
    }
    let poly = BinomialPolynomial::from_coeffs(coeffs);
    for (i, v) in values.iter().enumerate() {
        if poly.eval(i as i64) != *v {
            return Err(Error::FitInconsistent { index: i });
        }
    }
    Ok(poly)
}

/// The alternating-signed difference values `(−1)^j · X_j`, the samples a
/// binomial polynomial is fitted through.
pub fn signed_difference_values(f: &SymmetricFunction) -> Vec<BigInt> {
    difference_sequence(f)
        .deltas
        .iter()
        .enumerate()
        .map(|(j, &d)| {
            let v = if j % 2 == 0 { d as i64 } else { -(d as i64) };
            BigInt::from(v)
        })
        .collect()
}

/// Checks the homogeneous binomial recurrence of width `n1` on the
/// difference sequence: `Σ_j C(n1, j) · X_{v+j} = 0` for every window start
/// `v` with `v + n1 <= k − 1`. Vacuously true when no window fits.
pub fn verify_recurrence(f: &SymmetricFunction, n1: usize) -> Result<bool> {
    let k = f.k();
    if n1 < 1 || n1 > k {
        return Err(Error::ConditionOutOfRange { t: n1, w: 0, k });
    }
    let deltas = difference_sequence(f).deltas;
    let table = BinomialTable::new(n1);
    for v in 0..deltas.len().saturating_sub(n1) {
        let mut acc = BigInt::zero();
        for j in 0..=n1 {
            match deltas[v + j] {
                1 => acc += table.get_ref(n1, j),
                -1 => acc -= table.get_ref(n1, j),
                _ => {}
            }
        }
        if !acc.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Outcome of enumerating symmetric functions of arity `k` over a mask
/// range, excluding the exceptional quadruple from all statistics. Stored
/// function lists are truncated at [`REPORT_LIST_CAP`]; the `*_count` fields
/// are always exact.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VerificationReport {
    pub k: usize,
    /// Half-open mask span covered (after merging: the convex hull of the
    /// merged spans).
    pub range: (u64, u64),
    pub examined: u64,
    pub exceptional: u64,
    /// `histogram[l]` counts non-exceptional functions of minimum nonzero
    /// order `l`; index 0 is unused.
    pub histogram: Vec<u64>,
    pub max_min_order: Option<usize>,
    pub argmax_count: u64,
    pub argmax: Vec<SymmetricFunction>,
    pub counterexample_count: u64,
    pub counterexamples: Vec<SymmetricFunction>,
}

/// Cap on functions retained verbatim in report lists.
pub const REPORT_LIST_CAP: usize = 1024;

/// Enumerates every symmetric function of arity `k` (masks `0..2^(k+1)`)
/// and verifies `bound_ok(min_nonzero_order)` for each non-exceptional one.
pub fn enumerate_and_verify(
    k: usize,
    cap: usize,
    bound_ok: impl Fn(usize) -> bool,
) -> Result<VerificationReport> {
    enumerate_and_verify_range(k, cap, 0, 1u64 << (k + 1), bound_ok)
}

/// Range-restricted enumeration for sharded runs; shards partition the mask
/// space and reports merge associatively via [`VerificationReport::merge`].
pub fn enumerate_and_verify_range(
    k: usize,
    cap: usize,
    start: u64,
    end: u64,
    bound_ok: impl Fn(usize) -> bool,
) -> Result<VerificationReport> {
    if k == 0 || k > 62 {
        return Err(Error::BitLength { len: k, max: 62 });
    }
    if k > cap {
        return Err(Error::ResourceCap {
            what: "enumeration arity",
            requested: k as u64,
            cap: cap as u64,
        });
    }
    let total = 1u64 << (k + 1);
    if start > end || end > total {
        return Err(Error::InvalidRange { lo: start, hi: end });
    }

    let tri = triangle_i64(k);
    // kraw[ell][w]: signed weight-slice count against a size-ell character.
    let kraw: Vec<Vec<i64>> = (0..=k)
        .map(|ell| {
            (0..=k)
                .map(|w| {
                    let mut acc = 0i64;
                    let j_lo = (ell + w).saturating_sub(k);
                    for j in j_lo..=ell.min(w) {
                        let term = tri[ell][j] * tri_get(&tri, k - ell, w as i64 - j as i64);
                        acc += if j % 2 == 0 { term } else { -term };
                    }
                    acc
                })
                .collect()
        })
        .collect();

    let full = total - 1;
    let parity_mask = {
        let mut m = 0u64;
        for w in (1..=k).step_by(2) {
            m |= 1 << w;
        }
        m
    };
    let parity_comp_mask = full & !parity_mask;

    let mut report = VerificationReport {
        k,
        range: (start, end),
        examined: 0,
        exceptional: 0,
        histogram: vec![0; k + 1],
        max_min_order: None,
        argmax_count: 0,
        argmax: Vec::new(),
        counterexample_count: 0,
        counterexamples: Vec::new(),
    };

    for mask in start..end {
        report.examined += 1;
        if mask == 0 || mask == full || mask == parity_mask || mask == parity_comp_mask {
            report.exceptional += 1;
            continue;
        }
        let mut order = 0usize;
        'levels: for (ell, row) in kraw.iter().enumerate().skip(1) {
            let mut acc = 0i64;
            let mut m = mask;
            while m != 0 {
                acc += row[m.trailing_zeros() as usize];
                m &= m - 1;
            }
            if acc != 0 {
                order = ell;
                break 'levels;
            }
        }
        debug_assert!(order >= 1, "non-exceptional functions are non-constant");
        report.histogram[order] += 1;
        match report.max_min_order {
            Some(best) if order < best => {}
            Some(best) if order == best => {
                report.argmax_count += 1;
                if report.argmax.len() < REPORT_LIST_CAP {
                    report.argmax.push(SymmetricFunction::from_mask(k, mask)?);
                }
            }
            _ => {
                report.max_min_order = Some(order);
                report.argmax_count = 1;
                report.argmax = vec![SymmetricFunction::from_mask(k, mask)?];
            }
        }
        if !bound_ok(order) {
            report.counterexample_count += 1;
            if report.counterexamples.len() < REPORT_LIST_CAP {
                report.counterexamples.push(SymmetricFunction::from_mask(k, mask)?);
            }
        }
    }
    Ok(report)
}

impl VerificationReport {
    /// Combines two shard reports for the same arity. Associative and
    /// commutative up to the order of truncated example lists.
    pub fn merge(mut self, other: VerificationReport) -> Result<VerificationReport> {
        if self.k != other.k {
            return Err(Error::ArityMismatch {
                expected: self.k,
                got: other.k,
            });
        }
        self.range = (self.range.0.min(other.range.0), self.range.1.max(other.range.1));
        self.examined += other.examined;
        self.exceptional += other.exceptional;
        for (a, b) in self.histogram.iter_mut().zip(other.histogram) {
            *a += b;
        }
        match (self.max_min_order, other.max_min_order) {
            (_, None) => {}
            (None, Some(_)) => {
                self.max_min_order = other.max_min_order;
                self.argmax_count = other.argmax_count;
                self.argmax = other.argmax;
            }
            (Some(a), Some(b)) if b > a => {
                self.max_min_order = Some(b);
                self.argmax_count = other.argmax_count;
                self.argmax = other.argmax;
            }
            (Some(a), Some(b)) if b == a => {
                self.argmax_count += other.argmax_count;
                for f in other.argmax {
                    if self.argmax.len() >= REPORT_LIST_CAP {
                        break;
                    }
                    self.argmax.push(f);
                }
            }
            _ => {}
        }
        self.counterexample_count += other.counterexample_count;
        for f in other.counterexamples {
            if self.counterexamples.len() >= REPORT_LIST_CAP {
                break;
            }
            self.counterexamples.push(f);
        }
        Ok(self)
    }
}

/// Half-open sub-range `index` of `0..total` split into `shards` parts as
/// evenly as possible.
pub fn shard_range(total: u64, shards: u64, index: u64) -> Result<(u64, u64)> {
    if shards == 0 || index >= shards {
        return Err(Error::InvalidRange { lo: index, hi: shards });
    }
    let base = total / shards;
    let rem = total % shards;
    let start = index * base + index.min(rem);
    let len = base + u64::from(index < rem);
    Ok((start, start + len))
}
