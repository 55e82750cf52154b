//! Prime sieves, deterministic primality, binomial coefficients modulo a
//! prime, periodicity of integer-valued polynomials modulo primes, and the
//! prime-pair certificate used to pin down near-periodic difference
//! sequences.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::binom::BinomialTable;
use crate::structure::BinomialPolynomial;
use crate::{Error, Result};

/// Upper bound accepted by the sieve routines.
pub const SIEVE_CAP: u64 = 100_000_000;

/// All primes `<= n` by a plain sieve of Eratosthenes.
pub fn primes_up_to(n: u64) -> Result<Vec<u64>> {
    if n > SIEVE_CAP {
        return Err(Error::ResourceCap {
            what: "sieve bound",
            requested: n,
            cap: SIEVE_CAP,
        });
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for p in 2..=n {
        if !composite[p] {
            primes.push(p as u64);
            let mut q = p * p;
            while q <= n {
                composite[q] = true;
                q += p;
            }
        }
    }
    Ok(primes)
}

/// Primes in the inclusive interval `[lo, hi]` by a segmented sieve; only
/// `O(sqrt(hi) + (hi − lo))` memory.
pub fn primes_in_interval(lo: u64, hi: u64) -> Result<Vec<u64>> {
    if lo > hi {
        return Err(Error::InvalidRange { lo, hi });
    }
    if hi > SIEVE_CAP {
        return Err(Error::ResourceCap {
            what: "sieve bound",
            requested: hi,
            cap: SIEVE_CAP,
        });
    }
    let lo = lo.max(2);
    if lo > hi {
        return Ok(Vec::new());
    }
    let root = hi.isqrt();
    let base = primes_up_to(root)?;
    let len = (hi - lo + 1) as usize;
    let mut composite = vec![false; len];
    for &p in &base {
        let mut q = (p * p).max(lo.div_ceil(p) * p);
        while q <= hi {
            composite[(q - lo) as usize] = true;
            q += p;
        }
    }
    Ok((0..len)
        .filter(|&i| !composite[i])
        .map(|i| lo + i as u64)
        .filter(|&p| p >= 2)
        .collect())
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

fn powmod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, m);
        }
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin, exact for all `u64` inputs (fixed witness
/// set covering the full range).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Euler's totient by trial factorization.
pub fn euler_phi(mut n: u64) -> u64 {
    let mut phi = n.max(1);
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            phi -= phi / d;
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        phi -= phi / n;
    }
    phi
}

/// An arithmetic progression `residue (mod modulus)` to intersect with the
/// primes.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ApQuery {
    pub modulus: u64,
    pub residue: u64,
}

/// Primes `p` in `[lo, hi]` with `p ≡ residue (mod modulus)`. When the
/// residue shares a factor with the modulus the progression carries at most
/// one prime; that case is answered exactly, not rejected.
pub fn primes_in_ap(query: ApQuery, lo: u64, hi: u64) -> Result<Vec<u64>> {
    if query.modulus == 0 {
        return Err(Error::InvalidModulus { modulus: 0 });
    }
    if query.residue >= query.modulus {
        return Err(Error::InvalidResidue {
            modulus: query.modulus,
            residue: query.residue,
        });
    }
    Ok(primes_in_interval(lo, hi)?
        .into_iter()
        .filter(|p| p % query.modulus == query.residue)
        .collect())
}

/// First prime `p ≡ residue (mod modulus)` with `p > after`, by direct
/// search along the progression. Exists whenever the residue is coprime to
/// the modulus; the search is capped to stay finite on bad inputs.
pub fn first_prime_in_ap(query: ApQuery, after: u64) -> Result<u64> {
    if query.modulus == 0 {
        return Err(Error::InvalidModulus { modulus: 0 });
    }
    if query.residue >= query.modulus {
        return Err(Error::InvalidResidue {
            modulus: query.modulus,
            residue: query.residue,
        });
    }
    let m = query.modulus;
    let mut candidate = after + 1 + (query.residue + m - (after + 1) % m) % m;
    debug_assert!(candidate > after && candidate % m == query.residue);
    let cap = (after + 2).saturating_mul(1_000_000).max(SIEVE_CAP);
    while candidate <= cap {
        if is_prime(candidate) {
            return Ok(candidate);
        }
        candidate += m;
    }
    Err(Error::ResourceCap {
        what: "progression search bound",
        requested: candidate,
        cap,
    })
}

/// `C(n, r) mod p` for prime `p` via the base-`p` digit product.
pub fn binomial_mod(n: u64, r: u64, p: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::InvalidModulus { modulus: p });
    }
    if r > n {
        return Ok(0);
    }
    let (mut n, mut r) = (n, r);
    let mut acc = 1u64;
    while r > 0 || n > 0 {
        let (nd, rd) = (n % p, r % p);
        if rd > nd {
            return Ok(0);
        }
        acc = mulmod(acc, small_binomial_mod(nd, rd, p), p);
        n /= p;
        r /= p;
    }
    Ok(acc)
}

/// `C(a, b) mod p` with `b <= a < p`, by the falling-factorial quotient and
/// a Fermat inverse.
fn small_binomial_mod(a: u64, b: u64, p: u64) -> u64 {
    let b = b.min(a - b); // use the shorter side
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..b {
        num = mulmod(num, (a - i) % p, p);
        den = mulmod(den, (i + 1) % p, p);
    }
    mulmod(num, powmod(den, p - 2, p), p)
}

/// Verifies, by exact big-integer arithmetic on row `m·r` of Pascal's
/// triangle, the two divisibility patterns a prime stride `r` induces:
/// entries off the stride vanish mod `r`, and entries on the stride reduce
/// to row `m`. Returns whether both hold for every column.
pub fn lucas_row_check(m: u64, r: u64) -> Result<bool> {
    if r == 0 {
        return Err(Error::InvalidModulus { modulus: 0 });
    }
    let n = m
        .checked_mul(r)
        .and_then(|v| v.to_usize())
        .filter(|&v| v <= 10_000)
        .ok_or(Error::ResourceCap {
            what: "row index",
            requested: m.saturating_mul(r),
            cap: 10_000,
        })?;
    let table = BinomialTable::new(n);
    let modulus = BigInt::from(r);
    for c in 0..=n as u64 {
        let exact = table.get(n, c as i64);
        if c % r != 0 {
            if !(exact % &modulus).is_zero() {
                return Ok(false);
            }
        } else {
            let reduced = table.get(m as usize, (c / r) as i64);
            if !((exact - reduced) % &modulus).is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Outcome of probing `P(j + p) ≡ P(j) (mod p)` over a window of offsets.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PeriodicityReport {
    pub modulus: u64,
    pub degree_bound: usize,
    pub offsets_checked: u64,
    /// Every probed pair was congruent mod `p`.
    pub congruent: bool,
    /// For `p >= 3`: every probed pair with both values in {−1, 0, 1} was
    /// equal exactly. `None` for `p = 2`, where small congruent values may
    /// still differ (e.g. −1 and 1).
    pub exact_on_small_values: Option<bool>,
}

/// Checks periodicity of `poly` modulo the prime `p` over `j` in `offsets`.
/// Requires `p` to be at least the fitted width (degree bound), the regime
/// where the congruence is a theorem rather than an observation.
pub fn mod_periodicity_check(
    poly: &BinomialPolynomial,
    p: u64,
    offsets: core::ops::Range<i64>,
) -> Result<PeriodicityReport> {
    if !is_prime(p) {
        return Err(Error::InvalidModulus { modulus: p });
    }
    let degree_bound = poly.degree_bound();
    if degree_bound as u64 > p {
        return Err(Error::DegreeExceedsModulus {
            degree_bound,
            modulus: p,
        });
    }
    let modulus = BigInt::from(p);
    let one = BigInt::from(1);
    let mut congruent = true;
    let mut exact = true;
    let mut checked = 0u64;
    for j in offsets {
        let a = poly.eval(j);
        let b = poly.eval(j + p as i64);
        if !((&a - &b) % &modulus).is_zero() {
            congruent = false;
        }
        if a.abs() <= one && b.abs() <= one && a != b {
            exact = false;
        }
        checked += 1;
    }
    Ok(PeriodicityReport {
        modulus: p,
        degree_bound,
        offsets_checked: checked,
        congruent,
        exact_on_small_values: (p >= 3).then_some(exact),
    })
}

/// A pair of primes certifying that any admissible difference polynomial of
/// width `<= n_param` is 2-periodic on a window inside `[0, k]`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PeriodCertificate {
    pub n_param: usize,
    pub k: usize,
    /// Consecutive primes of minimal gap in the searched interval.
    pub q: u64,
    pub r: u64,
    /// Their gap `r − q`.
    pub gap: u64,
    /// The certified period pair: both primes usable as exact periods, with
    /// `s − t ≡ 2 (mod gap)`.
    pub t: u64,
    pub s: u64,
}

/// Builds the certificate for width bound `n_param` over positions `0..=k`:
/// finds the closest consecutive primes `q < r` in `[n_param, n_param + h]`
/// with `h = (k − n_param) / 3`, and from their gap `M` derives primes
/// `t ≡ −1` and `s ≡ +1 (mod M)` whose difference is `2 (mod M)` (taken as
/// `(q, r)` directly when `M <= 2`).
pub fn two_periodicity_certificate(n_param: usize, k: usize) -> Result<PeriodCertificate> {
    if n_param < 1 || k <= n_param {
        return Err(Error::InvalidRange {
            lo: n_param as u64,
            hi: k as u64,
        });
    }
    let lo = n_param as u64;
    let hi = lo + ((k - n_param) / 3) as u64;
    let primes = primes_in_interval(lo, hi)?;
    if primes.len() < 2 {
        return Err(Error::CertificateUnavailable {
            lo,
            hi,
            found: primes.len(),
        });
    }
    let (mut q, mut r) = (primes[0], primes[1]);
    for pair in primes.windows(2) {
        if pair[1] - pair[0] < r - q {
            q = pair[0];
            r = pair[1];
        }
    }
    let gap = r - q;
    let (t, s) = if gap <= 2 {
        (q, r)
    } else {
        let t = first_prime_in_ap(
            ApQuery {
                modulus: gap,
                residue: gap - 1,
            },
            0,
        )?;
        let s = first_prime_in_ap(
            ApQuery {
                modulus: gap,
                residue: 1,
            },
            t,
        )?;
        (t, s)
    };
    debug_assert!(s > t && (s - t) % gap == 2 % gap);
    Ok(PeriodCertificate {
        n_param,
        k,
        q,
        r,
        gap,
        t,
        s,
    })
}

/// Outcome of the alternating stride-`r` relation
/// `Σ_l (−1)^l C(m, l) P(v + l·r)`, which vanishes mod `r` whenever the
/// polynomial's degree is below the prime `r`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StrideRelationReport {
    pub modulus: u64,
    pub order: u64,
    pub offset: i64,
    pub congruent_zero: bool,
    pub exact_zero: bool,
    /// `2^order < modulus`: for {−1, 0, 1}-valued samples the congruence
    /// then forces the exact zero.
    pub small_bound_applies: bool,
}

/// Evaluates the alternating binomial relation at stride `r` (prime) and
/// offset `v` for a polynomial of degree below `r`.
pub fn stride_relation_check(
    poly: &BinomialPolynomial,
    m: u64,
    r: u64,
    v: i64,
) -> Result<StrideRelationReport> {
    if !is_prime(r) {
        return Err(Error::InvalidModulus { modulus: r });
    }
    let degree_bound = poly.degree_bound();
    if degree_bound as u64 > r {
        return Err(Error::DegreeExceedsModulus {
            degree_bound,
            modulus: r,
        });
    }
    let reach = m
        .checked_mul(r)
        .and_then(|mr| i64::try_from(mr).ok())
        .and_then(|mr| v.checked_add(mr));
    if reach.is_none() {
        return Err(Error::ResourceCap {
            what: "stride reach",
            requested: m.saturating_mul(r),
            cap: i64::MAX as u64,
        });
    }
    let table = BinomialTable::new(m as usize);
    let mut sum = BigInt::zero();
    for l in 0..=m {
        let term = table.get(m as usize, l as i64) * poly.eval(v + (l * r) as i64);
        if l % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    Ok(StrideRelationReport {
        modulus: r,
        order: m,
        offset: v,
        congruent_zero: (&sum % BigInt::from(r)).is_zero(),
        exact_zero: sum.is_zero(),
        small_bound_applies: m < 63 && (1u64 << m) < r,
    })
}
