//! Singularity-locus analysis on a manifold model: dual Segre classes of
//! the locus, parity of its Euler characteristic, slice parities, and the
//! slice transform on projective spaces.
//!
//! Given a graded Schur series for a locus and a model `M`, [`analyze`]
//! evaluates the series at the dual class `w̄(M)`, multiplies by the total
//! class `w(M)` to get the locus's own total class, and integrates to the
//! Euler-characteristic parity. On a projective space the report also
//! carries slice parities: [`slice_chi`] computes the parity of the Euler
//! characteristic of the intersection with a generic `i`-dimensional
//! projective subspace, algebraically, as the top coefficient of
//! `sw · x^{n−i}(1+x)^{i+1} · w̄(RPⁿ)`.
//!
//! [`aluffi_matrix`] packages the slice responses of the monomial basis
//! classes into an `(n+1) × (n+1)` F₂ matrix `T` (anti-unitriangular,
//! determinant 1) together with its inverse, so slice tables and class
//! coefficients convert both ways. [`euler_sigma2_case_a`] instantiates
//! the odd-Euler-characteristic phenomenon: for case-a dimensions the
//! corank-2 locus at the critical level has `χ₂ = 1`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::obstruction::{classify_case, CaseLabel, SingularityFamily};
use crate::rings::{ManifoldModel, RingElement};
use crate::segre::{ssw_sigma, GradedSchurSeries};
use crate::symfun::lucas_binom;

/// Everything [`analyze`] learns about one singularity locus.
#[derive(Debug, Clone, Serialize)]
pub struct LocusReport {
    /// Display name of the model.
    pub manifold: String,
    /// Model dimension.
    pub dim: u32,
    /// The stratum family, when the series came from one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<SingularityFamily>,
    /// The unfolding level, when known.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub level: Option<i64>,
    /// Whether the closed stratum (closure) series was used.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed: Option<bool>,
    /// `dim M − codim`: negative values mean the locus is expected empty
    /// (reported raw, never clamped).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_dim: Option<i64>,
    /// The series evaluated at the dual class of the model.
    pub ssw_value: RingElement,
    /// The locus's total class: `ssw_value · w(M)`.
    pub sw_value: RingElement,
    /// Parity of the Euler characteristic (the top coefficient of
    /// `sw_value`); only the parity is determined.
    pub chi2: bool,
    /// Slice parities `i ↦ χ₂(locus ∩ generic i-plane)`; present on
    /// projective-space models only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slices: Option<BTreeMap<u32, bool>>,
}

impl fmt::Display for LocusReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "manifold: {} (dim {})", self.manifold, self.dim)?;
        if let (Some(family), Some(level)) = (&self.family, self.level) {
            let which = match self.closed {
                Some(true) => "closed",
                Some(false) => "open",
                None => "",
            };
            writeln!(f, "stratum: {which} {family} at level {level}")?;
        }
        if let Some(d) = self.expected_dim {
            if d < 0 {
                writeln!(f, "expected dimension: {d} (empty expected)")?;
            } else {
                writeln!(f, "expected dimension: {d}")?;
            }
        }
        writeln!(f, "ssw: {}", self.ssw_value)?;
        writeln!(f, "sw: {}", self.sw_value)?;
        write!(
            f,
            "parity of Euler characteristic: {}",
            u8::from(self.chi2)
        )
    }
}

/// Whether the model's ring is generated by a single degree-one class —
/// the shape on which slice parities are defined.
fn is_projective_like(m: &ManifoldModel) -> bool {
    let gens = m.spec().generators();
    gens.len() == 1 && gens[0].degree == 1
}

/// Evaluates a locus series on a model.
///
/// The series value at `w̄(M)` is the locus's dual Segre class; multiplied
/// by `w(M)` it becomes the locus's total class, whose top coefficient is
/// the parity of the locus's Euler characteristic. Slice parities are
/// filled in on projective-space models.
///
/// # Panics
///
/// Panics when the series truncation is below the model dimension (the
/// top-degree value would be incomplete).
pub fn analyze(m: &ManifoldModel, series: &GradedSchurSeries) -> LocusReport {
    assert!(
        series.max_degree() >= m.dim(),
        "series must be truncated at or above the model dimension"
    );
    let ssw_value = series.evaluate(&m.wbar_assignment());
    let sw_value = ssw_value.mul(m.total_w());
    let chi2 = m.integrate(&sw_value);
    let slices = is_projective_like(m).then(|| {
        (0..=m.dim())
            .map(|i| (i, slice_chi(m, &sw_value, i)))
            .collect()
    });
    LocusReport {
        manifold: m.name().to_owned(),
        dim: m.dim(),
        family: None,
        level: None,
        closed: None,
        expected_dim: None,
        ssw_value,
        sw_value,
        chi2,
        slices,
    }
}

/// [`analyze`] for the corank-`r` stratum at level `l`, with the stratum
/// metadata (family, level, expected dimension) filled in.
///
/// # Panics
///
/// Panics on the argument combinations rejected by
/// [`ssw_sigma`](crate::segre::ssw_sigma).
pub fn analyze_sigma(m: &ManifoldModel, r: u32, l: i64, closed: bool) -> LocusReport {
    let series = ssw_sigma(r, l, m.dim(), closed);
    let mut report = analyze(m, &series);
    report.family = Some(SingularityFamily::SigmaI { i: r });
    report.level = Some(l);
    report.closed = Some(closed);
    report.expected_dim = Some(i64::from(m.dim()) - i64::from(r) * (i64::from(r) + l));
    report
}

/// The odd-Euler-characteristic instance: for a case-a dimension `n` the
/// closed corank-2 locus at the critical level `l = n/2 − 2^{p−1} − 1` has
/// expected dimension `2ᵖ − 2` and `χ₂ = 1` (`p` the 2-adic valuation).
///
/// Rejects dimensions outside case a.
///
/// # Panics
///
/// Panics if the computed parity or expected dimension contradicts the
/// statement being instantiated — that would mean the series evaluation
/// and the classification disagree.
pub fn euler_sigma2_case_a(n: u32) -> Result<LocusReport> {
    let case = classify_case(n);
    if case.label != CaseLabel::A {
        return Err(Error::WrongCase {
            n,
            found: case.label.to_string().chars().next().unwrap(),
            required: 'a',
        });
    }
    let p = case.valuation;
    assert!(p >= 1, "case-a dimensions are even");
    let l = i64::from(n) / 2 - (1i64 << (p - 1)) - 1;
    let report = analyze_sigma(&ManifoldModel::rp(n), 2, l, true);
    assert_eq!(
        report.expected_dim,
        Some((1i64 << p) - 2),
        "expected dimension must be 2^p - 2"
    );
    assert!(
        report.chi2,
        "the critical-level locus on RP{n} must have odd Euler characteristic"
    );
    Ok(report)
}

/// Parity of the Euler characteristic of the intersection of a locus
/// (given by its total class `sw` on `RPⁿ`) with a generic `i`-dimensional
/// projective subspace: the coefficient of `xⁿ` in
/// `sw · x^{n−i} (1+x)^{i+1} · w̄(RPⁿ)`.
///
/// # Panics
///
/// Panics unless the model is a projective space and `i ≤ n`.
pub fn slice_chi(m: &ManifoldModel, sw: &RingElement, i: u32) -> bool {
    assert!(is_projective_like(m), "slice parities need a projective space");
    let n = m.dim();
    assert!(i <= n, "slice dimension must be at most {n}");
    let spec = m.spec();
    // (1+x)^{i+1}, truncated.
    let mut plane = RingElement::zero(spec);
    for k in 0..=n.min(i + 1) {
        if lucas_binom(u64::from(i) + 1, u64::from(k)) {
            plane = plane.add(&RingElement::monomial(spec, vec![k]));
        }
    }
    let shift = RingElement::monomial(spec, vec![n - i]);
    m.integrate(&sw.mul(&shift).mul(&plane).mul(m.wbar()))
}

/// A square F₂ matrix with bit-packed rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct F2Matrix {
    size: usize,
    rows: Vec<u128>,
}

impl F2Matrix {
    /// The identity matrix.
    pub fn identity(size: usize) -> Self {
        assert!(size <= 128, "bit-packed matrices support size at most 128");
        F2Matrix {
            size,
            rows: (0..size).map(|i| 1u128 << i).collect(),
        }
    }

    /// Builds a matrix from an entry function.
    pub fn from_fn(size: usize, mut entry: impl FnMut(usize, usize) -> bool) -> Self {
        assert!(size <= 128, "bit-packed matrices support size at most 128");
        let rows = (0..size)
            .map(|i| {
                let mut row = 0u128;
                for j in 0..size {
                    if entry(i, j) {
                        row |= 1 << j;
                    }
                }
                row
            })
            .collect();
        F2Matrix { size, rows }
    }

    /// Side length.
    pub fn size(&self) -> usize {
        self.size
    }

    /// The `(i, j)` entry.
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    /// Matrix-vector product over F₂.
    ///
    /// # Panics
    ///
    /// Panics if the vector length differs from the matrix size.
    pub fn mul_vec(&self, v: &[bool]) -> Vec<bool> {
        assert_eq!(v.len(), self.size, "vector length must match matrix size");
        let mut mask = 0u128;
        for (j, &b) in v.iter().enumerate() {
            if b {
                mask |= 1 << j;
            }
        }
        self.rows
            .iter()
            .map(|row| (row & mask).count_ones() % 2 == 1)
            .collect()
    }

    /// Matrix product over F₂.
    pub fn mul(&self, other: &F2Matrix) -> F2Matrix {
        assert_eq!(self.size, other.size, "matrix sizes must match");
        F2Matrix::from_fn(self.size, |i, j| {
            (0..self.size)
                .filter(|&k| self.get(i, k) && other.get(k, j))
                .count()
                % 2
                == 1
        })
    }

    /// Determinant over F₂ by Gaussian elimination.
    pub fn det(&self) -> bool {
        let mut rows = self.rows.clone();
        for col in 0..self.size {
            let bit = 1u128 << col;
            let Some(pivot) = (col..self.size).find(|&r| rows[r] & bit != 0) else {
                return false;
            };
            rows.swap(col, pivot);
            let pivot_row = rows[col];
            for r in col + 1..self.size {
                if rows[r] & bit != 0 {
                    rows[r] ^= pivot_row;
                }
            }
        }
        true
    }

    /// Inverse over F₂, if the matrix is invertible.
    pub fn invert(&self) -> Option<F2Matrix> {
        let mut rows = self.rows.clone();
        let mut aug: Vec<u128> = (0..self.size).map(|i| 1u128 << i).collect();
        for col in 0..self.size {
            let bit = 1u128 << col;
            let pivot = (col..self.size).find(|&r| rows[r] & bit != 0)?;
            rows.swap(col, pivot);
            aug.swap(col, pivot);
            let (pivot_row, pivot_aug) = (rows[col], aug[col]);
            for r in 0..self.size {
                if r != col && rows[r] & bit != 0 {
                    rows[r] ^= pivot_row;
                    aug[r] ^= pivot_aug;
                }
            }
        }
        Some(F2Matrix {
            size: self.size,
            rows: aug,
        })
    }
}

impl fmt::Display for F2Matrix {
    /// One row per line, entries `0`/`1` separated by spaces.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.size {
            if i > 0 {
                writeln!(f)?;
            }
            for j in 0..self.size {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", u8::from(self.get(i, j)))?;
            }
        }
        Ok(())
    }
}

impl Serialize for F2Matrix {
    /// Serializes as rows of 0/1 integers.
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<u8>> = (0..self.size)
            .map(|i| (0..self.size).map(|j| u8::from(self.get(i, j))).collect())
            .collect();
        rows.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for F2Matrix {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<u8>>::deserialize(deserializer)?;
        let size = rows.len();
        if size > 128 || rows.iter().any(|r| r.len() != size) {
            return Err(serde::de::Error::custom("expected a square 0/1 matrix of size <= 128"));
        }
        Ok(F2Matrix::from_fn(size, |i, j| rows[i][j] % 2 == 1))
    }
}

/// The slice transform on `RPⁿ` and its inverse.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AluffiTransform {
    pub n: u32,
    /// `T[i][j]`: slice-`i` parity of the monomial basis class `x^{n−j}`.
    pub matrix: F2Matrix,
    /// `T⁻¹` over F₂ (exists: `T` has determinant 1).
    pub inverse: F2Matrix,
}

/// Builds the `(n+1) × (n+1)` slice transform on `RPⁿ`: column `j` holds
/// the slice parities of the basis class `x^{n−j}`, so `T` applied to the
/// monomial coefficient vector of a locus class gives the locus's slice
/// parities. Anti-unitriangular with determinant 1.
///
/// # Panics
///
/// Panics when `n > 127` (bit-packed rows), or if inversion fails — which
/// the determinant-one property rules out.
pub fn aluffi_matrix(n: u32) -> AluffiTransform {
    assert!(n <= 127, "slice transform supports n at most 127");
    let matrix = if n == 0 {
        F2Matrix::from_fn(1, |_, _| true)
    } else {
        let m = ManifoldModel::rp(n);
        let spec = m.spec();
        let columns: Vec<Vec<bool>> = (0..=n)
            .map(|j| {
                let basis = RingElement::monomial(spec, vec![n - j]);
                (0..=n).map(|i| slice_chi(&m, &basis, i)).collect()
            })
            .collect();
        F2Matrix::from_fn(n as usize + 1, |i, j| columns[j][i])
    };
    let inverse = matrix
        .invert()
        .expect("the slice transform has determinant one");
    AluffiTransform { n, matrix, inverse }
}

/// Parity of the Euler characteristic of `RPᵏ`: odd exactly in even
/// dimensions.
pub fn chi2_rp(k: u32) -> bool {
    k % 2 == 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::segre::phi1_closed;

    #[test]
    fn flagship_rp20_closed_corank2() {
        let report = analyze_sigma(&ManifoldModel::rp(20), 2, 7, true);
        assert_eq!(report.ssw_value.to_string(), "x^20");
        assert_eq!(report.sw_value.to_string(), "x^20");
        assert!(report.chi2);
        assert_eq!(report.expected_dim, Some(2));
        assert_eq!(report.level, Some(7));
    }

    #[test]
    fn corank1_rp10_report() {
        let report = analyze_sigma(&ManifoldModel::rp(10), 1, 1, false);
        assert_eq!(report.ssw_value.to_string(), "x^4");
        assert_eq!(report.sw_value.to_string(), "x^4+x^5+x^6+x^7");
        assert!(!report.chi2);
        let slices = report.slices.as_ref().expect("projective model");
        for (&i, &value) in slices {
            let expected = i >= 4 && lucas_binom(u64::from(i) + 1, u64::from(i) - 4);
            assert_eq!(value, expected, "slice parity at i={i}");
        }
        let odd: Vec<u32> = slices.iter().filter(|(_, &v)| v).map(|(&i, _)| i).collect();
        assert_eq!(odd, vec![4, 6]);
    }

    #[test]
    fn corank2_rp10_closed_is_odd() {
        let report = analyze_sigma(&ManifoldModel::rp(10), 2, 3, true);
        assert!(report.chi2);
    }

    #[test]
    fn euler_case_a_pins() {
        let r20 = euler_sigma2_case_a(20).unwrap();
        assert_eq!(r20.level, Some(7));
        assert_eq!(r20.expected_dim, Some(2));
        assert!(r20.chi2);
        let r10 = euler_sigma2_case_a(10).unwrap();
        assert_eq!(r10.level, Some(3));
        assert_eq!(r10.expected_dim, Some(0));
        let r8 = euler_sigma2_case_a(8).unwrap();
        assert_eq!(r8.level, Some(-1));
        assert_eq!(r8.expected_dim, Some(6));
        assert!(matches!(
            euler_sigma2_case_a(5),
            Err(Error::WrongCase { n: 5, found: 'b', required: 'a' })
        ));
    }

    #[test]
    fn full_slice_is_integration() {
        let m = ManifoldModel::rp(10);
        let series = phi1_closed(1, 10);
        let report = analyze(&m, &series);
        assert_eq!(
            slice_chi(&m, &report.sw_value, 10),
            m.integrate(&report.sw_value)
        );
        assert_eq!(report.slices.as_ref().unwrap()[&10], report.chi2);
    }

    #[test]
    fn subspace_slices_match_projective_parities() {
        // The locus RP³ ⊂ RP⁶ has total class x³(1+x)⁴; its generic slice
        // by an i-plane is a projective space of dimension i − 3.
        let m = ManifoldModel::rp(6);
        let spec = m.spec();
        let mut sw = RingElement::zero(spec);
        for k in 0..=4u32 {
            if lucas_binom(4, u64::from(k)) {
                sw = sw.add(&RingElement::monomial(spec, vec![3 + k]));
            }
        }
        for i in 0..=6 {
            let expected = i >= 3 && chi2_rp(i - 3);
            assert_eq!(slice_chi(&m, &sw, i), expected, "slice at i={i}");
        }
    }

    #[test]
    fn transform_small_shape() {
        let t = aluffi_matrix(2);
        let rows: Vec<Vec<u8>> = (0..3)
            .map(|i| (0..3).map(|j| u8::from(t.matrix.get(i, j))).collect())
            .collect();
        assert_eq!(rows, vec![vec![0, 0, 1], vec![0, 1, 1], vec![1, 0, 0]]);
    }

    #[test]
    fn transform_determinant_and_inverse() {
        for n in 0..=12u32 {
            let t = aluffi_matrix(n);
            assert!(t.matrix.det(), "determinant at n={n}");
            assert_eq!(
                t.matrix.mul(&t.inverse),
                F2Matrix::identity(n as usize + 1),
                "inverse at n={n}"
            );
        }
    }

    #[test]
    fn transform_is_anti_unitriangular() {
        for n in [1u32, 4, 7, 10] {
            let t = aluffi_matrix(n);
            let size = n as usize + 1;
            for i in 0..size {
                for j in 0..size {
                    if i + j < size - 1 {
                        assert!(!t.matrix.get(i, j), "zero expected at ({i},{j}), n={n}");
                    }
                    if i + j == size - 1 {
                        assert!(t.matrix.get(i, j), "one expected at ({i},{j}), n={n}");
                    }
                }
            }
        }
    }

    #[test]
    fn transform_matches_binomial_oracle() {
        // T[i][j] = C(m+i+1, i+j−n) mod 2 with m = 2^{r+1}−1−n, derived by
        // expanding the defining integral in powers of (1+x).
        for n in 1..=12u32 {
            let digits = 32 - n.leading_zeros();
            let m = (1u64 << digits) - 1 - u64::from(n);
            let t = aluffi_matrix(n);
            for i in 0..=n {
                for j in 0..=n {
                    let expected = i + j >= n
                        && lucas_binom(m + u64::from(i) + 1, u64::from(i + j - n));
                    assert_eq!(
                        t.matrix.get(i as usize, j as usize),
                        expected,
                        "oracle mismatch at n={n}, i={i}, j={j}"
                    );
                }
            }
        }
    }

    #[test]
    fn transform_action_reproduces_slice_table() {
        // Coefficient vector of the corank-1 locus class on RP¹⁰ in the
        // basis x^{n−j}, pushed through T, equals the slice table.
        let n = 10u32;
        let report = analyze_sigma(&ManifoldModel::rp(n), 1, 1, false);
        let coeffs: Vec<bool> = (0..=n)
            .map(|j| report.sw_value.coefficient(&[n - j]))
            .collect();
        let t = aluffi_matrix(n);
        let slices = report.slices.unwrap();
        let table: Vec<bool> = (0..=n).map(|i| slices[&i]).collect();
        assert_eq!(t.matrix.mul_vec(&coeffs), table);
    }

    #[test]
    fn transform_action_on_subspace_classes() {
        // Column action: for the class of RPʲ ⊂ RPⁿ the transform returns
        // the projective-space slice parities χ₂(RP^{i+j−n}).
        let n = 5u32;
        let m = ManifoldModel::rp(n);
        let spec = m.spec();
        let t = aluffi_matrix(n);
        for j in 0..=n {
            let mut class = RingElement::zero(spec);
            for k in 0..=j {
                if lucas_binom(u64::from(j) + 1, u64::from(k)) {
                    class = class.add(&RingElement::monomial(spec, vec![n - j + k]));
                }
            }
            let coeffs: Vec<bool> = (0..=n).map(|q| class.coefficient(&[n - q])).collect();
            let image = t.matrix.mul_vec(&coeffs);
            for i in 0..=n {
                let expected = i + j >= n && chi2_rp(i + j - n);
                assert_eq!(image[i as usize], expected, "j={j}, i={i}");
            }
        }
    }

    #[test]
    fn report_json_shape() {
        let report = analyze_sigma(&ManifoldModel::rp(4), 2, 0, true);
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["manifold"], "RP4");
        assert_eq!(json["dim"], 4);
        assert_eq!(json["family"], "Sigma2");
        assert_eq!(json["level"], 0);
        assert!(json["slices"].is_object());
        // Round-trips at the JSON value level.
        let text = serde_json::to_string(&report).unwrap();
        let back: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(back, json);
    }
}
