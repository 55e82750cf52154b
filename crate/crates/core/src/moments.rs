//! Moment comparison between the uniform cube distribution and the
//! distribution of positive points of a symmetric function: exact product
//! and power moments, induced weight distributions, and the variance-gap
//! figures used to separate conditioned from unconditioned sources.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, ToPrimitive, Zero};

use crate::binom::BinomialTable;
use crate::boolfn::{BooleanFunction, SymmetricFunction};
use crate::structure::maximal_null_order;
use crate::{Error, Result};

/// A nonnegative measure on the cube `{0,1}^k`, in one of three shapes:
/// the uniform counting measure, an explicit per-point mass table, or a
/// per-weight-class mass applied symmetrically.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CubeMeasure {
    Uniform { k: usize },
    Dense { k: usize, point_mass: Vec<u64> },
    SymmetricClasses { k: usize, class_mass: Vec<u64> },
}

impl CubeMeasure {
    /// Mass table of the positive points of a boolean function.
    pub fn from_indicator(f: &BooleanFunction) -> CubeMeasure {
        CubeMeasure::Dense {
            k: f.k(),
            point_mass: (0..f.domain_size()).map(|x| f.get(x) as u64).collect(),
        }
    }

    /// Per-weight-class masses of the positive points of a symmetric
    /// function (mass 1 on each accepting class).
    pub fn from_symmetric_indicator(f: &SymmetricFunction) -> CubeMeasure {
        CubeMeasure::SymmetricClasses {
            k: f.k(),
            class_mass: f.values().iter().map(|&v| v as u64).collect(),
        }
    }

    pub fn k(&self) -> usize {
        match self {
            CubeMeasure::Uniform { k }
            | CubeMeasure::Dense { k, .. }
            | CubeMeasure::SymmetricClasses { k, .. } => *k,
        }
    }

    pub fn total_mass(&self) -> BigInt {
        match self {
            CubeMeasure::Uniform { k } => BigInt::one() << *k,
            CubeMeasure::Dense { point_mass, .. } => {
                point_mass.iter().map(|&m| BigInt::from(m)).sum()
            }
            CubeMeasure::SymmetricClasses { k, class_mass } => {
                let table = BinomialTable::new(*k);
                class_mass
                    .iter()
                    .enumerate()
                    .map(|(w, &g)| table.get(*k, w as i64) * g)
                    .sum()
            }
        }
    }

    /// `E[Π_{i ∈ subset} x_i]` under the normalized measure: the probability
    /// that all listed coordinates are 1. Exact rational; distinct in-range
    /// coordinates required.
    pub fn product_moment(&self, subset: &[usize]) -> Result<BigRational> {
        let k = self.k();
        let mut mask = 0u64;
        for &i in subset {
            if i >= k {
                return Err(Error::CoordinateOutOfRange { index: i, k });
            }
            if mask >> i & 1 == 1 {
                return Err(Error::DuplicateCoordinate { index: i });
            }
            mask |= 1 << i;
        }
        let s = subset.len();
        let total = self.total_mass();
        if total.is_zero() {
            return Err(Error::EmptyMeasure);
        }
        let hits = match self {
            CubeMeasure::Uniform { k } => BigInt::one() << (k - s),
            CubeMeasure::Dense { point_mass, .. } => point_mass
                .iter()
                .enumerate()
                .filter(|&(x, _)| x as u64 & mask == mask)
                .map(|(_, &m)| BigInt::from(m))
                .sum(),
            CubeMeasure::SymmetricClasses { k, class_mass } => {
                let table = BinomialTable::new(*k);
                class_mass
                    .iter()
                    .enumerate()
                    .map(|(w, &g)| table.get(k - s, w as i64 - s as i64) * g)
                    .sum()
            }
        };
        Ok(BigRational::new(hits, total))
    }
}

/// A probability distribution on the weights `0..=k`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeightDistribution {
    pub k: usize,
    /// `mass[j] = Pr[weight = j]`; sums to 1.
    pub mass: Vec<BigRational>,
}

impl WeightDistribution {
    /// Weight of a uniform cube point: the binomial distribution
    /// `Bin(k, 1/2)`.
    pub fn uniform(k: usize) -> WeightDistribution {
        let table = BinomialTable::new(k);
        let denom = BigInt::one() << k;
        WeightDistribution {
            k,
            mass: (0..=k)
                .map(|j| BigRational::new(table.get(k, j as i64), denom.clone()))
                .collect(),
        }
    }

    /// Weight of a point drawn from the positive set of a symmetric
    /// function: `mass_j ∝ f_j · C(k, j)`.
    pub fn from_indicator(f: &SymmetricFunction) -> Result<WeightDistribution> {
        Self::from_class_mass(f.k(), &f.values().iter().map(|&v| v as u64).collect::<Vec<_>>())
    }

    /// Normalizes per-class masses `g_j` into `mass_j ∝ g_j · C(k, j)`.
    pub fn from_class_mass(k: usize, class_mass: &[u64]) -> Result<WeightDistribution> {
        if class_mass.len() != k + 1 {
            return Err(Error::ArityMismatch {
                expected: k + 1,
                got: class_mass.len(),
            });
        }
        let table = BinomialTable::new(k);
        let weighted: Vec<BigInt> = class_mass
            .iter()
            .enumerate()
            .map(|(j, &g)| table.get(k, j as i64) * g)
            .collect();
        let total: BigInt = weighted.iter().sum();
        if total.is_zero() {
            return Err(Error::EmptyMeasure);
        }
        Ok(WeightDistribution {
            k,
            mass: weighted
                .into_iter()
                .map(|w| BigRational::new(w, total.clone()))
                .collect(),
        })
    }

    /// `E[weight^s]`, exactly.
    pub fn power_moment(&self, s: u32) -> BigRational {
        self.mass
            .iter()
            .enumerate()
            .map(|(j, m)| m * BigRational::from(num_traits::pow(BigInt::from(j), s as usize)))
            .sum()
    }

    pub fn mean(&self) -> BigRational {
        self.power_moment(1)
    }

    pub fn variance(&self) -> BigRational {
        let mean = self.mean();
        self.power_moment(2) - &mean * &mean
    }

    /// `mass_j == mass_{k−j}` for every `j`.
    pub fn is_symmetric_about_half(&self) -> bool {
        (0..=self.k / 2).all(|j| self.mass[j] == self.mass[self.k - j])
    }
}

/// `E[weight^s]` for a uniform cube point: `2^{−k} Σ_j C(k, j) j^s`.
pub fn binomial_moment(k: usize, s: u32) -> BigRational {
    WeightDistribution::uniform(k).power_moment(s)
}

/// Per-weight-class mass of the source folded about `k/2`:
/// `g_j = f_j + f_{k−j}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymmetricSource {
    pub k: usize,
    pub class_mass: Vec<u64>,
}

/// Folds the positive classes of `f` about `k/2`, producing a source whose
/// weight distribution is symmetric (so all odd central moments vanish).
pub fn symmetrize(f: &SymmetricFunction) -> SymmetricSource {
    let k = f.k();
    let v = f.values();
    SymmetricSource {
        k,
        class_mass: (0..=k).map(|j| v[j] as u64 + v[k - j] as u64).collect(),
    }
}

impl SymmetricSource {
    pub fn measure(&self) -> CubeMeasure {
        CubeMeasure::SymmetricClasses {
            k: self.k,
            class_mass: self.class_mass.clone(),
        }
    }

    pub fn weight_distribution(&self) -> Result<WeightDistribution> {
        WeightDistribution::from_class_mass(self.k, &self.class_mass)
    }
}

/// The first moment disagreement between the source distribution (`nu`) and
/// the uniform reference (`mu`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MomentMismatch {
    pub s: usize,
    pub nu: BigRational,
    pub mu: BigRational,
}

/// How far the moments of a positive-point source agree with the uniform
/// cube: agreement is exact up to the source's maximal null order and breaks
/// immediately after.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MomentMatchReport {
    /// Maximal null order of the source function.
    pub r: usize,
    /// Largest `s` with all moments of order `<= s` matching.
    pub matched_up_to: usize,
    pub first_mismatch: Option<MomentMismatch>,
}

/// Compares product moments `E[Π_{i∈S} x_i]` of the positive points of `f`
/// against the uniform value `2^{−|S|}`, scanning `|S| = 1..=k`. By symmetry
/// the moment depends only on `|S|`, so one subset per size decides all.
pub fn product_moment_report(f: &SymmetricFunction) -> Result<MomentMatchReport> {
    let k = f.k();
    let measure = CubeMeasure::from_symmetric_indicator(f);
    if measure.total_mass().is_zero() {
        return Err(Error::EmptyMeasure);
    }
    let r = maximal_null_order(f);
    let mut matched_up_to = 0;
    let mut first_mismatch = None;
    for s in 1..=k {
        let subset: Vec<usize> = (0..s).collect();
        let nu = measure.product_moment(&subset)?;
        let mu = BigRational::new(BigInt::one(), BigInt::one() << s);
        if nu == mu {
            matched_up_to = s;
        } else {
            first_mismatch = Some(MomentMismatch { s, nu, mu });
            break;
        }
    }
    Ok(MomentMatchReport {
        r,
        matched_up_to,
        first_mismatch,
    })
}

/// Compares power moments `E[weight^s]` of the positive points of `f`
/// against the uniform binomial moments, scanning `s = 1..=k`.
pub fn power_moment_report(f: &SymmetricFunction) -> Result<MomentMatchReport> {
    let k = f.k();
    let nu_dist = WeightDistribution::from_indicator(f)?;
    let r = maximal_null_order(f);
    let mut matched_up_to = 0;
    let mut first_mismatch = None;
    for s in 1..=k {
        let nu = nu_dist.power_moment(s as u32);
        let mu = binomial_moment(k, s as u32);
        if nu == mu {
            matched_up_to = s;
        } else {
            first_mismatch = Some(MomentMismatch { s, nu, mu });
            break;
        }
    }
    Ok(MomentMatchReport {
        r,
        matched_up_to,
        first_mismatch,
    })
}

/// Exact variance comparison between the uniform weight distribution and a
/// two-point distribution displaced `±(ε/2)k` about the mean.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VarianceGapReport {
    pub k: usize,
    pub epsilon: Ratio<u64>,
    /// Exact variance of the uniform weight: `k/4`.
    pub var_mu: BigRational,
    /// The nominal variance figure `k` this report corrects.
    pub var_mu_nominal: BigRational,
    /// Whether the nominal figure agrees with the exact one (it does not for
    /// any `k >= 1`; the true value is smaller by a factor 4).
    pub nominal_matches: bool,
    /// Variance of the two-point distribution: `(εk/2)²`.
    pub var_tau: BigRational,
    /// The separation threshold `(εk/2)²`.
    pub separation_bound: BigRational,
    /// `var_tau` meets the threshold.
    pub meets_bound: bool,
    /// `var_tau` strictly exceeds the uniform variance, i.e. `ε²k > 1`.
    pub exceeds_uniform: bool,
}

/// Builds the variance-gap figures for arity `k` and displacement fraction
/// `epsilon` (in `(0, 1]`). `var_mu` is computed from the actual binomial
/// distribution, not assumed.
pub fn variance_gap_check(k: usize, epsilon: Ratio<u64>) -> Result<VarianceGapReport> {
    if k == 0 || epsilon <= Ratio::zero() || epsilon > Ratio::one() {
        return Err(Error::InvalidRange {
            lo: *epsilon.numer(),
            hi: *epsilon.denom(),
        });
    }
    let var_mu = WeightDistribution::uniform(k).variance();
    let var_mu_nominal = BigRational::from(BigInt::from(k));
    let half_spread = BigRational::new(
        BigInt::from(*epsilon.numer() * k as u64),
        BigInt::from(2 * *epsilon.denom()),
    );
    let var_tau = &half_spread * &half_spread;
    let separation_bound = var_tau.clone();
    Ok(VarianceGapReport {
        k,
        epsilon,
        nominal_matches: var_mu == var_mu_nominal,
        meets_bound: var_tau >= separation_bound,
        exceeds_uniform: var_tau > var_mu,
        var_mu,
        var_mu_nominal,
        var_tau,
        separation_bound,
    })
}

/// Convenience: the exact uniform weight variance as a float, for display.
pub fn uniform_weight_variance_f64(k: usize) -> f64 {
    WeightDistribution::uniform(k).variance().to_f64().unwrap_or(f64::NAN)
}
