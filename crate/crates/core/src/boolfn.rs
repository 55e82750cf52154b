//! Boolean functions on the k-cube and their exact Fourier spectra.
//!
//! Points of the cube are packed into `u64` masks (bit `i` is coordinate
//! `i`). A general function is a table of `2^k` bits; a symmetric function is
//! the vector `f_0..f_k` of its values per Hamming weight. Fourier
//! coefficients are kept as exact integers at scale `2^k`: the stored value
//! for a subset `S` is `Σ_x f(x)·(−1)^{|x ∧ S|}`, i.e. `2^k · f̂(S)`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::binom::BinomialTable;
use crate::{Error, Result};

/// Hard bound on bits per packed cube point.
pub const MAX_POINT_BITS: usize = 64;

/// Cap on the arity of explicit truth tables and transforms (table size
/// `2^k` bits, transform buffer `2^k` words).
pub const CUBE_ARITY_CAP: usize = 24;

/// A point of the n-cube, packed little-endian: bit `i` of the mask is the
/// i-th coordinate. Length is at least 1 and at most [`MAX_POINT_BITS`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Assignment {
    mask: u64,
    len: usize,
}

impl Assignment {
    pub fn new(mask: u64, len: usize) -> Result<Self> {
        if len == 0 || len > MAX_POINT_BITS {
            return Err(Error::BitLength {
                len,
                max: MAX_POINT_BITS,
            });
        }
        if len < 64 && mask >> len != 0 {
            return Err(Error::StrayBits { len });
        }
        Ok(Assignment { mask, len })
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn bit(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.mask >> i & 1 == 1
    }

    /// Hamming weight.
    pub fn weight(&self) -> usize {
        self.mask.count_ones() as usize
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.bit(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for Assignment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mask = parse_bit_mask(s)?;
        Assignment::new(mask, s.len())
    }
}

fn parse_bit_mask(s: &str) -> Result<u64> {
    if s.is_empty() || s.len() > MAX_POINT_BITS {
        return Err(Error::BitLength {
            len: s.len(),
            max: MAX_POINT_BITS,
        });
    }
    let mut mask = 0u64;
    for (i, c) in s.bytes().enumerate() {
        match c {
            b'0' => {}
            b'1' => mask |= 1 << i,
            _ => return Err(Error::BadBitChar { position: i }),
        }
    }
    Ok(mask)
}

/// A boolean function on `k` inputs as an explicit table of `2^k` bits,
/// packed 64 per word. `1 <= k <=` [`CUBE_ARITY_CAP`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BooleanFunction {
    k: usize,
    words: Vec<u64>,
}

impl BooleanFunction {
    /// The identically-zero function.
    pub fn zero(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::BitLength { len: 0, max: CUBE_ARITY_CAP });
        }
        if k > CUBE_ARITY_CAP {
            return Err(Error::ResourceCap {
                what: "cube arity",
                requested: k as u64,
                cap: CUBE_ARITY_CAP as u64,
            });
        }
        let words = vec![0u64; (1usize << k).div_ceil(64)];
        Ok(BooleanFunction { k, words })
    }

    /// Builds a table by evaluating `f` on every point mask in `0..2^k`.
    pub fn from_fn(k: usize, mut f: impl FnMut(u64) -> bool) -> Result<Self> {
        let mut table = Self::zero(k)?;
        for x in 0..table.domain_size() {
            if f(x) {
                table.set(x, true);
            }
        }
        Ok(table)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn domain_size(&self) -> u64 {
        1u64 << self.k
    }

    pub fn get(&self, x: u64) -> bool {
        debug_assert!(x < self.domain_size());
        self.words[(x / 64) as usize] >> (x % 64) & 1 == 1
    }

    pub fn set(&mut self, x: u64, v: bool) {
        debug_assert!(x < self.domain_size());
        let w = &mut self.words[(x / 64) as usize];
        if v {
            *w |= 1 << (x % 64);
        } else {
            *w &= !(1 << (x % 64));
        }
    }

    pub fn eval(&self, x: &Assignment) -> Result<bool> {
        if x.len() != self.k {
            return Err(Error::ArityMismatch {
                expected: self.k,
                got: x.len(),
            });
        }
        Ok(self.get(x.mask()))
    }

    /// Number of points mapped to 1.
    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }
}

/// A symmetric boolean function given by its weight values `f_0..f_k`
/// (`values.len() == k + 1`). The degenerate `k = 0` (a single value, no
/// inputs) is allowed so that constant hypotheses can be carried around;
/// expansion to a table requires `k >= 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SymmetricFunction {
    values: Vec<bool>,
}

impl SymmetricFunction {
    pub fn from_values(values: Vec<bool>) -> Result<Self> {
        if values.is_empty() || values.len() > MAX_POINT_BITS {
            return Err(Error::BitLength {
                len: values.len(),
                max: MAX_POINT_BITS,
            });
        }
        Ok(SymmetricFunction { values })
    }

    /// Decodes `k + 1` weight values from the low bits of `mask`
    /// (bit `w` is `f_w`), the encoding used by exhaustive enumeration.
    pub fn from_mask(k: usize, mask: u64) -> Result<Self> {
        if k + 1 > MAX_POINT_BITS {
            return Err(Error::BitLength {
                len: k + 1,
                max: MAX_POINT_BITS,
            });
        }
        if k + 1 < 64 && mask >> (k + 1) != 0 {
            return Err(Error::StrayBits { len: k + 1 });
        }
        Self::from_values((0..=k).map(|w| mask >> w & 1 == 1).collect())
    }

    pub fn constant(k: usize, v: bool) -> Self {
        SymmetricFunction {
            values: vec![v; k + 1],
        }
    }

    /// Parity of the inputs: `f_w = w mod 2`.
    pub fn parity(k: usize) -> Self {
        SymmetricFunction {
            values: (0..=k).map(|w| w % 2 == 1).collect(),
        }
    }

    /// Complement of parity: `f_w = 1 − (w mod 2)`.
    pub fn parity_complement(k: usize) -> Self {
        SymmetricFunction {
            values: (0..=k).map(|w| w % 2 == 0).collect(),
        }
    }

    pub fn k(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    pub fn value_at_weight(&self, w: usize) -> bool {
        self.values[w]
    }

    /// Weight-value vector re-packed into a mask (bit `w` is `f_w`).
    pub fn to_mask(&self) -> u64 {
        self.values
            .iter()
            .enumerate()
            .fold(0u64, |m, (w, &v)| if v { m | 1 << w } else { m })
    }

    /// Pointwise complement `1 − f`.
    pub fn complement(&self) -> Self {
        SymmetricFunction {
            values: self.values.iter().map(|v| !v).collect(),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.values.iter().all(|&v| v == self.values[0])
    }

    pub fn is_parity(&self) -> bool {
        self.values.iter().enumerate().all(|(w, &v)| v == (w % 2 == 1))
    }

    pub fn is_parity_complement(&self) -> bool {
        self.values.iter().enumerate().all(|(w, &v)| v == (w % 2 == 0))
    }

    /// Membership in the exceptional quadruple {0, 1, parity, its complement}.
    pub fn is_exceptional(&self) -> bool {
        self.is_constant() || self.is_parity() || self.is_parity_complement()
    }

    /// Evaluates at a point of matching arity via its Hamming weight.
    pub fn eval(&self, x: &Assignment) -> Result<bool> {
        if x.len() != self.k() {
            return Err(Error::ArityMismatch {
                expected: self.k(),
                got: x.len(),
            });
        }
        Ok(self.values[x.weight()])
    }

    /// Expands to the explicit `2^k` table.
    pub fn expand(&self) -> Result<BooleanFunction> {
        BooleanFunction::from_fn(self.k(), |x| self.values[x.count_ones() as usize])
    }

    /// Scaled Fourier coefficient common to every subset of size `ell`,
    /// computed from the weight values alone (no `2^k` table):
    /// `Σ_w f_w · Σ_j (−1)^j C(ell, j) C(k−ell, w−j)`.
    pub fn level_coefficient(&self, ell: usize) -> Result<BigInt> {
        let k = self.k();
        if ell > k {
            return Err(Error::LevelOutOfRange { level: ell, k });
        }
        let table = BinomialTable::new(k);
        Ok(self.level_coefficient_with(&table, ell))
    }

    fn level_coefficient_with(&self, table: &BinomialTable, ell: usize) -> BigInt {
        let k = self.k();
        let mut acc = BigInt::zero();
        for (w, &fw) in self.values.iter().enumerate() {
            if fw {
                acc += weight_slice_character_sum(table, k, ell, w);
            }
        }
        acc
    }

    /// All scaled level coefficients, indices `0..=k`.
    pub fn level_spectrum(&self) -> Vec<BigInt> {
        let table = BinomialTable::new(self.k());
        self.level_spectrum_with(&table)
    }

    /// As [`level_spectrum`](Self::level_spectrum) with a caller-shared
    /// binomial table (`table.n_max() >= k`).
    pub fn level_spectrum_with(&self, table: &BinomialTable) -> Vec<BigInt> {
        (0..=self.k())
            .map(|ell| self.level_coefficient_with(table, ell))
            .collect()
    }

    /// Smallest order `ell >= 1` with a nonzero coefficient; `None` exactly
    /// for the two constant functions.
    pub fn min_nonzero_order(&self) -> Option<usize> {
        let k = self.k();
        let table = BinomialTable::new(k);
        (1..=k).find(|&ell| !self.level_coefficient_with(&table, ell).is_zero())
    }
}

impl fmt::Display for SymmetricFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &v in &self.values {
            f.write_str(if v { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for SymmetricFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() || s.len() > MAX_POINT_BITS {
            return Err(Error::BitLength {
                len: s.len(),
                max: MAX_POINT_BITS,
            });
        }
        let mut values = Vec::with_capacity(s.len());
        for (i, c) in s.bytes().enumerate() {
            match c {
                b'0' => values.push(false),
                b'1' => values.push(true),
                _ => return Err(Error::BadBitChar { position: i }),
            }
        }
        Self::from_values(values)
    }
}

/// Bit string `f_0 f_1 … f_k` for a symmetric function.
pub fn to_bit_string(f: &SymmetricFunction) -> String {
    let mut s = String::with_capacity(f.k() + 1);
    for &v in f.values() {
        s.push(if v { '1' } else { '0' });
    }
    s
}

/// Full Fourier spectrum of a boolean function, one scaled integer
/// coefficient per subset mask.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FourierSpectrum {
    k: usize,
    scaled: Vec<i64>,
}

impl FourierSpectrum {
    pub fn k(&self) -> usize {
        self.k
    }

    /// All coefficients are integer multiples of `f̂` by this factor.
    pub fn scale(&self) -> u64 {
        1u64 << self.k
    }

    /// Scaled coefficient `2^k · f̂(S)` for the subset mask `s`.
    pub fn coefficient(&self, s: u64) -> i64 {
        self.scaled[s as usize]
    }

    pub fn scaled(&self) -> &[i64] {
        &self.scaled
    }

    /// Smallest order `ell >= 1` carrying a nonzero coefficient, `None` for
    /// constants.
    pub fn min_nonzero_order(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (s, &c) in self.scaled.iter().enumerate() {
            let ell = (s as u64).count_ones() as usize;
            if ell >= 1 && c != 0 && best.is_none_or(|b| ell < b) {
                best = Some(ell);
            }
        }
        best
    }

    /// When the spectrum is constant on every level (as for symmetric
    /// functions), the per-level values; `None` otherwise.
    pub fn symmetric_levels(&self) -> Option<Vec<i64>> {
        let mut levels: Vec<Option<i64>> = vec![None; self.k + 1];
        for (s, &c) in self.scaled.iter().enumerate() {
            let ell = (s as u64).count_ones() as usize;
            match levels[ell] {
                None => levels[ell] = Some(c),
                Some(prev) if prev != c => return None,
                _ => {}
            }
        }
        levels.into_iter().collect()
    }
}

/// Exact Walsh–Hadamard transform: entry `S` of the result is
/// `Σ_x f(x)·(−1)^{|x ∧ S|}`.
pub fn fourier_transform(f: &BooleanFunction) -> FourierSpectrum {
    let n = 1usize << f.k();
    let mut buf: Vec<i64> = (0..n as u64).map(|x| f.get(x) as i64).collect();
    let mut half = 1usize;
    while half < n {
        for chunk in buf.chunks_mut(2 * half) {
            for i in 0..half {
                let a = chunk[i];
                let b = chunk[i + half];
                chunk[i] = a + b;
                chunk[i + half] = a - b;
            }
        }
        half <<= 1;
    }
    FourierSpectrum { k: f.k(), scaled: buf }
}

/// Signed count of the weight-`w` slice against any size-`ell` character:
/// `Σ_{|x| = w} (−1)^{|x ∧ S|}` for `|S| = ell`, which depends only on
/// `(k, ell, w)` and equals `Σ_j (−1)^j C(ell, j) C(k−ell, w−j)`.
pub fn weight_slice_character_sum(
    table: &BinomialTable,
    k: usize,
    ell: usize,
    w: usize,
) -> BigInt {
    debug_assert!(ell <= k && w <= k);
    let mut acc = BigInt::zero();
    let j_lo = (ell + w).saturating_sub(k);
    let j_hi = ell.min(w);
    for j in j_lo..=j_hi {
        let term = table.get_ref(ell, j) * table.get_ref(k - ell, w - j);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Iterator over all size-`l` subsets of `{0, …, n−1}` as masks, in
/// lexicographic order of the sorted index tuples.
pub fn subsets_of_size(n: usize, l: usize) -> SubsetIter {
    assert!(n <= MAX_POINT_BITS);
    SubsetIter {
        n,
        idx: (0..l).collect(),
        done: l > n,
    }
}

pub struct SubsetIter {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Iterator for SubsetIter {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.done {
            return None;
        }
        let mask = self.idx.iter().fold(0u64, |m, &i| m | 1 << i);
        // Advance to the next combination in lexicographic order.
        let l = self.idx.len();
        let mut i = l;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - (l - i) {
                self.idx[i] += 1;
                for j in i + 1..l {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(mask)
    }
}
