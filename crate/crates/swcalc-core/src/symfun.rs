//! Schur-polynomial calculus over F₂ in graded variables `w1, w2, …`.
//!
//! Polynomials live in F₂[w₁, w₂, …] with `deg(w_i) = i` and are stored
//! with set semantics: a monomial is present iff its coefficient is 1. This
//! module provides:
//!
//! - [`WMonomial`], [`Mod2Poly`] and [`SchurCombo`] — the three working
//!   representations;
//! - conversion between the Schur basis and the monomial basis
//!   ([`schur_to_poly`], [`poly_to_schur`]) via determinantal expansion and
//!   per-degree Gaussian elimination;
//! - binomial coefficients mod 2 by the bitwise dominance test
//!   ([`lucas_binom`]) and the binomial determinants `D` in exact-integer
//!   and mod-2 modes ([`binom_det`]);
//! - Steenrod squares on `w`-polynomials ([`steenrod_sq`]), extended
//!   multiplicatively from the generator formula;
//! - the lowering operators ([`lowering`]) extracting `t`-coefficients of
//!   the substitution `w_i ↦ w_i + t·w_{i−1}`.
//!
//! Variable indices are unbounded; truncation happens only when evaluating
//! in a finite ring (see [`crate::rings`]).

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num::bigint::BigInt;
use num::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::partitions::{partitions_of_weight, Partition};

/// A monomial in the variables `w1, w2, …`, stored as a map from variable
/// index (≥ 1) to exponent (≥ 1). The empty map is the monomial `1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct WMonomial(BTreeMap<u32, u32>);

impl WMonomial {
    /// The constant monomial `1`.
    pub fn one() -> Self {
        WMonomial(BTreeMap::new())
    }

    /// The single variable `w_i`.
    ///
    /// # Panics
    ///
    /// Panics if `i == 0`; the index `w0` is the ring unit and is
    /// represented by [`WMonomial::one`].
    pub fn var(i: u32) -> Self {
        assert!(i >= 1, "variable index must be at least 1");
        WMonomial(std::iter::once((i, 1)).collect())
    }

    /// Builds a monomial from `(index, exponent)` pairs.
    ///
    /// # Panics
    ///
    /// Panics on a zero index, a zero exponent, or a repeated index.
    pub fn from_pairs(pairs: &[(u32, u32)]) -> Self {
        let mut map = BTreeMap::new();
        for &(i, e) in pairs {
            assert!(i >= 1 && e >= 1, "indices and exponents must be positive");
            assert!(map.insert(i, e).is_none(), "repeated index {i}");
        }
        WMonomial(map)
    }

    /// Whether this is the constant monomial.
    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// Total degree: the sum of `index × exponent`.
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(&i, &e)| i * e).sum()
    }

    /// Product of two monomials (exponents add).
    pub fn mul(&self, other: &WMonomial) -> WMonomial {
        let mut map = self.0.clone();
        for (&i, &e) in &other.0 {
            *map.entry(i).or_insert(0) += e;
        }
        WMonomial(map)
    }

    /// The exponent of `w_i` (0 if absent).
    pub fn exponent(&self, i: u32) -> u32 {
        self.0.get(&i).copied().unwrap_or(0)
    }

    /// Iterates over `(index, exponent)` pairs in increasing index order.
    pub fn factors(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.0.iter().map(|(&i, &e)| (i, e))
    }
}

impl fmt::Display for WMonomial {
    /// Renders as `w1^2*w3`; the constant monomial renders as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (&i, &e) in &self.0 {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "w{i}")?;
            } else {
                write!(f, "w{i}^{e}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for WMonomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for WMonomial {
    fn deserialize<D: Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let map = BTreeMap::<u32, u32>::deserialize(deserializer)?;
        if map.keys().any(|&i| i == 0) || map.values().any(|&e| e == 0) {
            return Err(D::Error::custom("monomial indices and exponents must be positive"));
        }
        Ok(WMonomial(map))
    }
}

/// An F₂-polynomial in `w1, w2, …`: the set of monomials with coefficient 1.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Mod2Poly(BTreeSet<WMonomial>);

impl Mod2Poly {
    /// The zero polynomial.
    pub fn zero() -> Self {
        Mod2Poly(BTreeSet::new())
    }

    /// The constant polynomial `1`.
    pub fn one() -> Self {
        Mod2Poly(std::iter::once(WMonomial::one()).collect())
    }

    /// The single variable `w_i`.
    pub fn var(i: u32) -> Self {
        Mod2Poly(std::iter::once(WMonomial::var(i)).collect())
    }

    /// Builds a polynomial from monomials; repeated monomials cancel in
    /// pairs.
    pub fn from_monomials<I: IntoIterator<Item = WMonomial>>(monomials: I) -> Self {
        let mut poly = Mod2Poly::zero();
        for m in monomials {
            poly.toggle(m);
        }
        poly
    }

    /// Adds a single monomial with F₂ semantics (insert if absent, cancel if
    /// present).
    pub fn toggle(&mut self, m: WMonomial) {
        if !self.0.remove(&m) {
            self.0.insert(m);
        }
    }

    /// Whether the polynomial is zero.
    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of monomials.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Whether the polynomial has no monomials.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Iterates over the monomials in storage order.
    pub fn terms(&self) -> impl Iterator<Item = &WMonomial> + '_ {
        self.0.iter()
    }

    /// Sum over F₂ (symmetric difference of monomial sets).
    pub fn add(&self, other: &Mod2Poly) -> Mod2Poly {
        let mut result = self.clone();
        for m in &other.0 {
            result.toggle(m.clone());
        }
        result
    }

    /// Product over F₂.
    pub fn mul(&self, other: &Mod2Poly) -> Mod2Poly {
        let mut result = Mod2Poly::zero();
        for a in &self.0 {
            for b in &other.0 {
                result.toggle(a.mul(b));
            }
        }
        result
    }

    /// Product by a single monomial.
    pub fn mul_monomial(&self, m: &WMonomial) -> Mod2Poly {
        Mod2Poly(self.0.iter().map(|a| a.mul(m)).collect())
    }

    /// `k`-th power by repeated multiplication.
    pub fn pow(&self, k: u32) -> Mod2Poly {
        let mut result = Mod2Poly::one();
        for _ in 0..k {
            result = result.mul(self);
        }
        result
    }

    /// The square, computed by the Frobenius: every exponent doubles.
    pub fn square(&self) -> Mod2Poly {
        Mod2Poly(
            self.0
                .iter()
                .map(|m| WMonomial(m.0.iter().map(|(&i, &e)| (i, 2 * e)).collect()))
                .collect(),
        )
    }

    /// Largest monomial degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.0.iter().map(WMonomial::degree).max()
    }

    /// Smallest monomial degree, or `None` for the zero polynomial.
    pub fn min_degree(&self) -> Option<u32> {
        self.0.iter().map(WMonomial::degree).min()
    }

    /// The degree-`d` homogeneous part.
    pub fn degree_part(&self, d: u32) -> Mod2Poly {
        Mod2Poly(self.0.iter().filter(|m| m.degree() == d).cloned().collect())
    }

    /// Splits into `(degree, homogeneous part)` pairs, ascending in degree.
    pub fn degree_parts(&self) -> Vec<(u32, Mod2Poly)> {
        let mut by_degree: BTreeMap<u32, Mod2Poly> = BTreeMap::new();
        for m in &self.0 {
            by_degree
                .entry(m.degree())
                .or_insert_with(Mod2Poly::zero)
                .toggle(m.clone());
        }
        by_degree.into_iter().collect()
    }

    /// Whether all monomials share one degree (true for zero).
    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.0.iter().map(WMonomial::degree);
        match degrees.next() {
            None => true,
            Some(first) => degrees.all(|d| d == first),
        }
    }

    /// Drops all monomials of degree greater than `cap`.
    pub fn truncate(&self, cap: u32) -> Mod2Poly {
        Mod2Poly(
            self.0
                .iter()
                .filter(|m| m.degree() <= cap)
                .cloned()
                .collect(),
        )
    }

    /// Monomials sorted by degree, then by monomial order — the canonical
    /// rendering order.
    pub fn sorted_terms(&self) -> Vec<&WMonomial> {
        let mut terms: Vec<&WMonomial> = self.0.iter().collect();
        terms.sort_by_key(|m| (m.degree(), (*m).clone()));
        terms
    }
}

impl fmt::Display for Mod2Poly {
    /// Renders as `w1^2+w2` with terms ordered by degree then monomial;
    /// the zero polynomial renders as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (k, m) in self.sorted_terms().into_iter().enumerate() {
            if k > 0 {
                write!(f, "+")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

impl Serialize for Mod2Poly {
    /// Serializes as an array of exponent maps, in canonical order.
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<&WMonomial> = self.sorted_terms();
        terms.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Mod2Poly {
    fn deserialize<D: Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let terms = Vec::<WMonomial>::deserialize(deserializer)?;
        Ok(Mod2Poly::from_monomials(terms))
    }
}

/// An F₂-combination of Schur classes, stored as the set of partitions with
/// coefficient 1.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SchurCombo(BTreeSet<Partition>);

impl SchurCombo {
    /// The zero combination.
    pub fn zero() -> Self {
        SchurCombo(BTreeSet::new())
    }

    /// The single class `s_lambda`.
    pub fn singleton(lambda: Partition) -> Self {
        SchurCombo(std::iter::once(lambda).collect())
    }

    /// Builds a combination from partitions; repeats cancel in pairs.
    pub fn from_partitions<I: IntoIterator<Item = Partition>>(partitions: I) -> Self {
        let mut combo = SchurCombo::zero();
        for p in partitions {
            combo.toggle(p);
        }
        combo
    }

    /// Adds a single class with F₂ semantics.
    pub fn toggle(&mut self, lambda: Partition) {
        if !self.0.remove(&lambda) {
            self.0.insert(lambda);
        }
    }

    /// Whether the combination is zero.
    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of classes.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Whether the combination has no classes.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Iterates over the partitions in graded order.
    pub fn partitions(&self) -> impl Iterator<Item = &Partition> + '_ {
        self.0.iter()
    }

    /// Whether the class `s_lambda` appears.
    pub fn contains(&self, lambda: &Partition) -> bool {
        self.0.contains(lambda)
    }

    /// Sum over F₂.
    pub fn add(&self, other: &SchurCombo) -> SchurCombo {
        let mut result = self.clone();
        for p in &other.0 {
            result.toggle(p.clone());
        }
        result
    }

    /// Expansion into the monomial basis.
    pub fn to_poly(&self) -> Mod2Poly {
        let mut poly = Mod2Poly::zero();
        for lambda in &self.0 {
            poly = poly.add(&schur_to_poly(lambda));
        }
        poly
    }

    /// Transposes every partition in the combination.
    pub fn transpose(&self) -> SchurCombo {
        SchurCombo(self.0.iter().map(Partition::transpose).collect())
    }
}

impl fmt::Display for SchurCombo {
    /// Renders as `s[2,2]+s[3,1]`; the zero combination renders as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (k, p) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "+")?;
            }
            write!(f, "s[")?;
            for (i, part) in p.parts().iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{part}")?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

impl Serialize for SchurCombo {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let parts: Vec<&Partition> = self.0.iter().collect();
        parts.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SchurCombo {
    fn deserialize<D: Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<Partition>::deserialize(deserializer)?;
        Ok(SchurCombo::from_partitions(parts))
    }
}

/// Binomial coefficient modulo 2 by the bitwise dominance test: `C(m, k)` is
/// odd iff every binary digit of `k` is dominated by the corresponding digit
/// of `m`, i.e. `k & !m == 0`.
pub fn lucas_binom(m: u64, k: u64) -> bool {
    k & !m == 0
}

/// Binomial coefficient modulo 2 with the conventions used by the Steenrod
/// generator formula: `C(a, 0) = 1` for every integer `a` (including
/// negatives), and `C(a, k) = 0` for `a < 0 < k`.
fn lucas_binom_signed(a: i64, k: u32) -> bool {
    if k == 0 {
        true
    } else if a < 0 {
        false
    } else {
        lucas_binom(a as u64, k as u64)
    }
}

/// Exact binomial coefficient `C(n, k)` for `n, k ≥ 0` (0 when `k > n`).
fn big_binom(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut c = BigInt::one();
    for i in 1..=k {
        c = c * BigInt::from(n - k + i) / BigInt::from(i);
    }
    c
}

/// Arithmetic mode for [`binom_det`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DetMode {
    /// Exact big-integer determinant.
    Integer,
    /// Entries reduced by [`lucas_binom`], determinant over F₂.
    Mod2,
}

/// Value returned by [`binom_det`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DetValue {
    /// Exact integer determinant.
    Integer(BigInt),
    /// Determinant over F₂.
    Mod2(bool),
}

impl DetValue {
    /// The determinant's parity, in either mode.
    pub fn parity(&self) -> bool {
        match self {
            DetValue::Integer(v) => v.abs() % 2 == BigInt::one(),
            DetValue::Mod2(b) => *b,
        }
    }
}

/// The `s × s` binomial determinant with row indices `a_i = mu_i + s − i`
/// and column indices `b_j = nu_j + t − j` (1-indexed), whose `(i, j)` entry
/// is `C(a_i + b_j, a_i)`. Entries whose column index `b_j` is negative
/// vanish.
///
/// `mu` and `nu` are read padded with zeros to length `s`.
///
/// # Panics
///
/// Panics if `mu` or `nu` has more than `s` parts, if `t < 1` or `s < 1`,
/// or in integer mode if `s > 8` (integer mode expands over permutations).
pub fn binom_det(mu: &Partition, nu: &Partition, s: u32, t: u32, mode: DetMode) -> DetValue {
    assert!(s >= 1, "matrix size s must be at least 1");
    assert!(t >= 1, "column offset t must be at least 1");
    assert!(mu.len() <= s as usize, "mu must have at most s parts");
    assert!(nu.len() <= s as usize, "nu must have at most s parts");
    let n = s as usize;
    let a: Vec<i64> = (1..=n)
        .map(|i| mu.part(i - 1) as i64 + s as i64 - i as i64)
        .collect();
    let b: Vec<i64> = (1..=n)
        .map(|j| nu.part(j - 1) as i64 + t as i64 - j as i64)
        .collect();
    match mode {
        DetMode::Integer => {
            assert!(n <= 8, "integer mode supports size at most 8");
            let entry = |i: usize, j: usize| -> BigInt {
                if b[j] < 0 {
                    BigInt::zero()
                } else {
                    big_binom((a[i] + b[j]) as u64, a[i] as u64)
                }
            };
            DetValue::Integer(int_det_permutations(n, entry))
        }
        DetMode::Mod2 => {
            let mut rows: Vec<u64> = vec![0; n];
            assert!(n <= 64, "mod-2 mode supports size at most 64");
            for i in 0..n {
                for j in 0..n {
                    let odd = b[j] >= 0 && lucas_binom((a[i] + b[j]) as u64, a[i] as u64);
                    if odd {
                        rows[i] |= 1 << j;
                    }
                }
            }
            DetValue::Mod2(bit_det(&mut rows))
        }
    }
}

/// Signed permutation expansion of a small integer matrix.
fn int_det_permutations(n: usize, entry: impl Fn(usize, usize) -> BigInt) -> BigInt {
    let mut cols: Vec<usize> = (0..n).collect();
    let mut total = BigInt::zero();
    permute(&mut cols, 0, 1, &mut total, &entry);
    total
}

/// Heap-style recursive permutation generator accumulating signed products.
fn permute(
    cols: &mut Vec<usize>,
    row: usize,
    sign: i32,
    total: &mut BigInt,
    entry: &impl Fn(usize, usize) -> BigInt,
) {
    let n = cols.len();
    if row == n {
        let mut product = BigInt::from(sign);
        for (i, &j) in cols.iter().enumerate() {
            if product.is_zero() {
                return;
            }
            product *= entry(i, j);
        }
        *total += product;
        return;
    }
    for k in row..n {
        cols.swap(row, k);
        let extra_sign = if k == row { 1 } else { -1 };
        permute(cols, row + 1, sign * extra_sign, total, entry);
        cols.swap(row, k);
    }
}

/// Determinant of a bit matrix (rows as `u64` masks) by Gaussian
/// elimination over F₂. Consumes the rows.
pub(crate) fn bit_det(rows: &mut [u64]) -> bool {
    let n = rows.len();
    for col in 0..n {
        let bit = 1u64 << col;
        let Some(pivot) = (col..n).find(|&r| rows[r] & bit != 0) else {
            return false;
        };
        rows.swap(col, pivot);
        let pivot_row = rows[col];
        for r in col + 1..n {
            if rows[r] & bit != 0 {
                rows[r] ^= pivot_row;
            }
        }
    }
    true
}

/// Global cache for Schur monomial expansions; conversions of a fixed
/// partition are pure and reused heavily by basis computations.
fn schur_cache() -> &'static Mutex<HashMap<Partition, Mod2Poly>> {
    static CACHE: OnceLock<Mutex<HashMap<Partition, Mod2Poly>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Expands the Schur class `s_lambda` into the monomial basis by the
/// determinant `det(w_{λ_i − i + j})` with `w_0 = 1` and `w_k = 0` for
/// `k < 0`.
///
/// The determinant is a permutation expansion (determinant and permanent
/// agree over F₂), organised as a first-row expansion memoised on the set of
/// remaining columns so that shared minors are computed once.
pub fn schur_to_poly(lambda: &Partition) -> Mod2Poly {
    if let Some(hit) = schur_cache().lock().unwrap().get(lambda) {
        return hit.clone();
    }
    let n = lambda.len();
    assert!(n <= 64, "partition length at most 64 is supported");
    let result = if n == 0 {
        Mod2Poly::one()
    } else {
        // entry(i, j), 0-indexed: w at index lambda_i − i + j.
        let index = |i: usize, j: usize| lambda.part(i) as i64 - i as i64 + j as i64;
        let mut memo: HashMap<u64, Mod2Poly> = HashMap::new();
        let full: u64 = if n == 64 { u64::MAX } else { (1 << n) - 1 };
        minor_poly(lambda, &index, full, n, &mut memo)
    };
    schur_cache()
        .lock()
        .unwrap()
        .insert(lambda.clone(), result.clone());
    result
}

/// The minor over the rows `n − popcount(mask) .. n` and the column set
/// `mask`, expanded along its first row.
fn minor_poly(
    lambda: &Partition,
    index: &impl Fn(usize, usize) -> i64,
    mask: u64,
    n: usize,
    memo: &mut HashMap<u64, Mod2Poly>,
) -> Mod2Poly {
    if mask == 0 {
        return Mod2Poly::one();
    }
    if let Some(hit) = memo.get(&mask) {
        return hit.clone();
    }
    let row = n - mask.count_ones() as usize;
    let mut acc = Mod2Poly::zero();
    for j in 0..n {
        if mask & (1 << j) == 0 {
            continue;
        }
        let idx = index(row, j);
        if idx < 0 {
            continue;
        }
        let sub = minor_poly(lambda, index, mask & !(1 << j), n, memo);
        let contribution = if idx == 0 {
            sub
        } else {
            sub.mul_monomial(&WMonomial::var(idx as u32))
        };
        acc = acc.add(&contribution);
    }
    memo.insert(mask, acc.clone());
    acc
}

/// Writes a polynomial in the Schur basis by per-degree Gaussian
/// elimination against the expansions of all partitions of that degree.
///
/// Every homogeneous polynomial of degree `d` lies in the span of
/// `{s_λ : |λ| = d}`; an [`Error::NotInSchurSpan`] therefore indicates
/// corrupt input and is reported rather than silently mis-converted.
pub fn poly_to_schur(p: &Mod2Poly) -> Result<SchurCombo> {
    let mut combo = SchurCombo::zero();
    for (d, part) in p.degree_parts() {
        let solved = solve_degree(d, &part)?;
        combo = combo.add(&solved);
    }
    Ok(combo)
}

/// Expresses one homogeneous piece in the Schur basis of its degree.
fn solve_degree(d: u32, part: &Mod2Poly) -> Result<SchurCombo> {
    let lambdas = partitions_of_weight(d);
    // Column index: every monomial of the target and of each basis vector.
    let mut monomials: BTreeSet<WMonomial> = part.terms().cloned().collect();
    let expansions: Vec<(Partition, Mod2Poly)> = lambdas
        .into_iter()
        .map(|l| {
            let poly = schur_to_poly(&l);
            (l, poly)
        })
        .collect();
    for (_, poly) in &expansions {
        monomials.extend(poly.terms().cloned());
    }
    let index: BTreeMap<&WMonomial, usize> =
        monomials.iter().zip(0..).map(|(m, i)| (m, i)).collect();
    let words = monomials.len().div_ceil(64);
    let to_bits = |poly: &Mod2Poly| -> Vec<u64> {
        let mut bits = vec![0u64; words];
        for m in poly.terms() {
            let i = index[m];
            bits[i / 64] |= 1 << (i % 64);
        }
        bits
    };
    // Row-echelon basis: pivot bit index -> (vector, partition combination).
    let mut pivots: BTreeMap<usize, (Vec<u64>, SchurCombo)> = BTreeMap::new();
    for (lambda, poly) in &expansions {
        let mut vec = to_bits(poly);
        let mut combo = SchurCombo::singleton(lambda.clone());
        reduce(&mut vec, &mut combo, &pivots);
        if let Some(lead) = leading_bit(&vec) {
            pivots.insert(lead, (vec, combo));
        }
    }
    let mut target = to_bits(part);
    let mut combo = SchurCombo::zero();
    reduce(&mut target, &mut combo, &pivots);
    if leading_bit(&target).is_some() {
        return Err(Error::NotInSchurSpan(part.to_string()));
    }
    Ok(combo)
}

/// Lowest set bit position, if any.
fn leading_bit(vec: &[u64]) -> Option<usize> {
    vec.iter()
        .enumerate()
        .find(|(_, w)| **w != 0)
        .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

/// Reduces `vec` by the pivot rows, accumulating the combination used.
fn reduce(
    vec: &mut [u64],
    combo: &mut SchurCombo,
    pivots: &BTreeMap<usize, (Vec<u64>, SchurCombo)>,
) {
    loop {
        let Some(lead) = leading_bit(vec) else { return };
        let Some((row, row_combo)) = pivots.get(&lead) else {
            return;
        };
        for (v, r) in vec.iter_mut().zip(row) {
            *v ^= r;
        }
        *combo = combo.add(row_combo);
    }
}

/// Total Steenrod square of the generator `w_m`, truncated at degree `cap`:
/// the sum over `k = 0..=m` of
/// `Σ_{i=0..k} C(m−k+i−1, i) · w_{k−i} · w_{m+i}`,
/// with `w_0 = 1` and the binomial conventions of [`lucas_binom_signed`].
fn sq_total_generator(m: u32, cap: u32) -> Mod2Poly {
    let mut total = Mod2Poly::zero();
    for k in 0..=m {
        if m + k > cap {
            break;
        }
        for i in 0..=k {
            let a = m as i64 - k as i64 + i as i64 - 1;
            if lucas_binom_signed(a, i) {
                let mut mono = WMonomial::var(m + i);
                if k > i {
                    mono = mono.mul(&WMonomial::var(k - i));
                }
                total.toggle(mono);
            }
        }
    }
    total
}

/// Total Steenrod square of a polynomial, truncated at degree `cap`.
///
/// The total square is a ring homomorphism, so the value on a monomial is
/// the truncated product of the generator totals.
pub fn sq_total(p: &Mod2Poly, cap: u32) -> Mod2Poly {
    let mut total = Mod2Poly::zero();
    for m in p.terms() {
        let mut product = Mod2Poly::one();
        for (i, e) in m.factors() {
            let generator = sq_total_generator(i, cap);
            for _ in 0..e {
                product = product.mul(&generator).truncate(cap);
            }
        }
        total = total.add(&product);
    }
    total
}

/// The Steenrod square `Sq^k` of a polynomial.
///
/// On a homogeneous polynomial of degree `d` this is the degree-`d + k`
/// part of the total square; `Sq^0` is the identity and `Sq^k` vanishes for
/// `k > d`. Inhomogeneous inputs are treated degreewise.
pub fn steenrod_sq(k: u32, p: &Mod2Poly) -> Mod2Poly {
    if k == 0 {
        return p.clone();
    }
    let mut result = Mod2Poly::zero();
    for (d, part) in p.degree_parts() {
        if k > d {
            continue;
        }
        let total = sq_total(&part, d + k);
        result = result.add(&total.degree_part(d + k));
    }
    result
}

/// The Steenrod square of a Schur combination, converted back to the Schur
/// basis.
pub fn steenrod_sq_schur(k: u32, combo: &SchurCombo) -> Result<SchurCombo> {
    poly_to_schur(&steenrod_sq(k, &combo.to_poly()))
}

/// The lowering operator: the coefficient of `t^j` after substituting
/// `w_i ↦ w_i + t·w_{i−1}` (with `w_0 = 1`) into `p`, computed over F₂[t].
///
/// `lowering(p, 0) = p`, the operator is F₂-linear, and it lowers degree by
/// exactly `j` (the result is zero when `j` exceeds what the monomials can
/// shed).
pub fn lowering(p: &Mod2Poly, j: u32) -> Mod2Poly {
    if j == 0 {
        return p.clone();
    }
    let cap = j as usize;
    let mut result = Mod2Poly::zero();
    for m in p.terms() {
        // Truncated polynomial in t: coefficients of t^0 .. t^j.
        let mut coeffs: Vec<Mod2Poly> = vec![Mod2Poly::zero(); cap + 1];
        coeffs[0] = Mod2Poly::one();
        for (i, e) in m.factors() {
            // Factor w_i + t·w_{i−1}; for i = 1 the t-coefficient is 1.
            let low = if i == 1 {
                Mod2Poly::one()
            } else {
                Mod2Poly::var(i - 1)
            };
            let high = Mod2Poly::var(i);
            for _ in 0..e {
                let mut next: Vec<Mod2Poly> = vec![Mod2Poly::zero(); cap + 1];
                for (d, c) in coeffs.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    next[d] = next[d].add(&c.mul(&high));
                    if d + 1 <= cap {
                        next[d + 1] = next[d + 1].add(&c.mul(&low));
                    }
                }
                coeffs = next;
            }
        }
        result = result.add(&coeffs[cap]);
    }
    result
}

/// Product of two Schur combinations, converted back to the Schur basis.
pub fn schur_mul(a: &SchurCombo, b: &SchurCombo) -> Result<SchurCombo> {
    poly_to_schur(&a.to_poly().mul(&b.to_poly()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }

    fn poly(monomials: &[&[(u32, u32)]]) -> Mod2Poly {
        Mod2Poly::from_monomials(monomials.iter().map(|m| WMonomial::from_pairs(m)))
    }

    #[test]
    fn lucas_pins() {
        assert!(lucas_binom(5, 1));
        assert!(!lucas_binom(5, 2));
        assert!(lucas_binom(11, 1));
        assert!(!lucas_binom(8, 1));
        assert!(lucas_binom(0, 0));
        assert!(!lucas_binom(5, 6));
    }

    #[test]
    fn lucas_matches_pascal() {
        // Exhaustive check against a Pascal triangle mod 2 for m, k < 128.
        let mut row = vec![1u8];
        for m in 0..128u64 {
            for k in 0..=m {
                assert_eq!(
                    lucas_binom(m, k),
                    row[k as usize] == 1,
                    "mismatch at C({m},{k})"
                );
            }
            let mut next = vec![1u8];
            for i in 1..row.len() {
                next.push(row[i - 1] ^ row[i]);
            }
            next.push(1);
            row = next;
        }
    }

    #[test]
    fn binom_det_integer_pins() {
        let d = |mu: &[u32], nu: &[u32], s, t| -> BigInt {
            match binom_det(&p(mu), &p(nu), s, t, DetMode::Integer) {
                DetValue::Integer(v) => v,
                _ => unreachable!(),
            }
        };
        assert_eq!(d(&[], &[2], 2, 9), BigInt::from(3));
        assert_eq!(d(&[1], &[1], 2, 9), BigInt::from(19));
        assert_eq!(d(&[2], &[], 2, 9), BigInt::from(45));
        assert_eq!(d(&[], &[], 2, 2), BigInt::from(1));
    }

    #[test]
    fn binom_det_mod2_matches_integer() {
        for (mu, nu, s, t) in [
            (vec![], vec![2], 2u32, 9u32),
            (vec![1], vec![1], 2, 9),
            (vec![2], vec![], 2, 9),
            (vec![], vec![], 2, 2),
            (vec![3, 1], vec![2], 3, 5),
            (vec![2, 2, 1], vec![1, 1], 4, 7),
        ] {
            let mu = Partition::new(mu);
            let nu = Partition::new(nu);
            let int = binom_det(&mu, &nu, s, t, DetMode::Integer).parity();
            let m2 = binom_det(&mu, &nu, s, t, DetMode::Mod2).parity();
            assert_eq!(int, m2, "parity mismatch at {mu}, {nu}, s={s}, t={t}");
        }
    }

    #[test]
    fn schur_expansion_pins() {
        assert_eq!(schur_to_poly(&p(&[1, 1])), poly(&[&[(1, 2)], &[(2, 1)]]));
        assert_eq!(
            schur_to_poly(&p(&[2, 2])),
            poly(&[&[(2, 2)], &[(1, 1), (3, 1)]])
        );
        assert_eq!(schur_to_poly(&p(&[1])), poly(&[&[(1, 1)]]));
        assert_eq!(schur_to_poly(&p(&[2])), poly(&[&[(2, 1)]]));
        assert_eq!(
            schur_to_poly(&p(&[2, 1])),
            poly(&[&[(1, 1), (2, 1)], &[(3, 1)]])
        );
        assert_eq!(schur_to_poly(&p(&[1, 1, 1])), poly(&[&[(1, 3)], &[(3, 1)]]));
        assert_eq!(schur_to_poly(&Partition::empty()), Mod2Poly::one());
        assert_eq!(
            schur_to_poly(&p(&[3, 2])),
            poly(&[&[(2, 1), (3, 1)], &[(1, 1), (4, 1)]])
        );
    }

    #[test]
    fn schur_long_column_matches_elementary_recursion() {
        // s_{1^k} satisfies the recursion e_k: det of the Jacobi-Trudi
        // matrix for a single column; spot-check k = 5 via its square-free
        // structure: s_{1^5} + w1·s_{1^4} should equal w2·s_{1^3} + ... —
        // instead verify the pinned identity s_{1^4} directly.
        assert_eq!(
            schur_to_poly(&p(&[1, 1, 1, 1])),
            poly(&[&[(1, 4)], &[(1, 2), (2, 1)], &[(2, 2)], &[(4, 1)]])
        );
    }

    #[test]
    fn poly_to_schur_round_trip_small() {
        for parts in [
            &[][..],
            &[1][..],
            &[2, 1][..],
            &[2, 2][..],
            &[3, 2, 1][..],
            &[4, 2][..],
            &[1, 1, 1, 1, 1][..],
            &[5, 3, 2, 1][..],
        ] {
            let lambda = p(parts);
            let combo = poly_to_schur(&schur_to_poly(&lambda)).unwrap();
            assert_eq!(combo, SchurCombo::singleton(lambda));
        }
    }

    #[test]
    fn poly_to_schur_inhomogeneous() {
        let q = Mod2Poly::var(1).add(&Mod2Poly::var(2));
        let combo = poly_to_schur(&q).unwrap();
        assert_eq!(
            combo,
            SchurCombo::from_partitions([p(&[1]), p(&[2])])
        );
    }

    #[test]
    fn multiply_schur_product_pin() {
        // s_2 · s_{2,2} = s_{4,2} + s_{3,2,1} + s_{2,2,2}: computed from the
        // monomial product w2·(w2² + w1w3) = w2³ + w1w2w3 and converted back.
        let product = schur_mul(
            &SchurCombo::singleton(p(&[2])),
            &SchurCombo::singleton(p(&[2, 2])),
        )
        .unwrap();
        assert_eq!(
            product,
            SchurCombo::from_partitions([p(&[4, 2]), p(&[3, 2, 1]), p(&[2, 2, 2])])
        );
    }

    #[test]
    fn frobenius_squares() {
        let q = poly(&[&[(1, 1), (2, 1)], &[(3, 1)]]);
        let direct = q.mul(&q);
        assert_eq!(direct, q.square());
        assert_eq!(direct, poly(&[&[(1, 2), (2, 2)], &[(3, 2)]]));
    }

    #[test]
    fn steenrod_sq1_pin() {
        let input = SchurCombo::from_partitions([p(&[1, 1, 1]), p(&[2, 1])]);
        let sq1 = steenrod_sq_schur(1, &input).unwrap();
        assert_eq!(
            sq1,
            SchurCombo::from_partitions([p(&[1, 1, 1, 1]), p(&[2, 1, 1])])
        );
    }

    #[test]
    fn steenrod_sq2_pin() {
        let sq2 = steenrod_sq_schur(2, &SchurCombo::singleton(p(&[2, 2]))).unwrap();
        assert_eq!(
            sq2,
            SchurCombo::from_partitions([
                p(&[2, 2, 1, 1]),
                p(&[2, 2, 2]),
                p(&[3, 2, 1]),
                p(&[3, 3]),
                p(&[4, 2]),
            ])
        );
        // Sq^1 of the same class vanishes.
        assert!(steenrod_sq(1, &schur_to_poly(&p(&[2, 2]))).is_zero());
    }

    #[test]
    fn steenrod_sq2_plus_product_identity() {
        // Sq²(s_{2,2}) + s_2·s_{2,2} = s_{3,3} + s_{2,2,1,1}.
        let sq2 = steenrod_sq_schur(2, &SchurCombo::singleton(p(&[2, 2]))).unwrap();
        let product = schur_mul(
            &SchurCombo::singleton(p(&[2])),
            &SchurCombo::singleton(p(&[2, 2])),
        )
        .unwrap();
        assert_eq!(
            sq2.add(&product),
            SchurCombo::from_partitions([p(&[3, 3]), p(&[2, 2, 1, 1])])
        );
    }

    #[test]
    fn steenrod_top_square_and_vanishing() {
        for parts in [&[2, 1][..], &[3][..], &[1, 1][..]] {
            let q = schur_to_poly(&p(parts));
            let d = q.degree().unwrap();
            assert_eq!(steenrod_sq(d, &q), q.square(), "top square at {parts:?}");
            assert!(steenrod_sq(d + 1, &q).is_zero());
            assert!(steenrod_sq(d + 5, &q).is_zero());
        }
    }

    #[test]
    fn lowering_pins() {
        let s22 = schur_to_poly(&p(&[2, 2]));
        assert_eq!(lowering(&s22, 0), s22);
        assert_eq!(lowering(&Mod2Poly::var(1), 1), Mod2Poly::one());
        assert_eq!(lowering(&s22, 1), poly(&[&[(1, 1), (2, 1)], &[(3, 1)]]));
    }

    #[test]
    fn lowering_degree_drop_and_linearity() {
        let a = schur_to_poly(&p(&[3, 2]));
        let b = schur_to_poly(&p(&[2, 2, 1]));
        for j in 0..=3u32 {
            let la = lowering(&a, j);
            let lb = lowering(&b, j);
            if !la.is_zero() {
                assert!(la.is_homogeneous());
                assert_eq!(la.degree(), Some(5 - j));
            }
            assert_eq!(lowering(&a.add(&b), j), la.add(&lb));
        }
    }

    #[test]
    fn poly_rendering() {
        let q = poly(&[&[(1, 2)], &[(2, 1)]]);
        assert_eq!(q.to_string(), "w1^2+w2");
        assert_eq!(Mod2Poly::zero().to_string(), "0");
        assert_eq!(Mod2Poly::one().to_string(), "1");
        assert_eq!(
            poly(&[&[(1, 2), (3, 1)], &[(2, 1)]]).to_string(),
            "w2+w1^2*w3"
        );
    }

    #[test]
    fn schur_rendering() {
        let combo = SchurCombo::from_partitions([p(&[3, 1]), p(&[2, 2])]);
        assert_eq!(combo.to_string(), "s[2,2]+s[3,1]");
        assert_eq!(SchurCombo::zero().to_string(), "0");
        assert_eq!(
            SchurCombo::singleton(Partition::empty()).to_string(),
            "s[]"
        );
    }

    #[test]
    fn poly_json_round_trip() {
        let q = poly(&[&[(1, 2), (3, 1)], &[(2, 1)]]);
        let text = serde_json::to_string(&q).unwrap();
        let back: Mod2Poly = serde_json::from_str(&text).unwrap();
        assert_eq!(back, q);
    }
}
