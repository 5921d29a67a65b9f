//! Exact-rational restriction equations: a worked computation solving for
//! the degree-3 coefficients of a singularity's characteristic class from
//! its restrictions to model loci, entirely in rational arithmetic.
//!
//! The total class restricted to the `i`-th model locus is the series
//! `1 + i·a − i·a² + i·a³ − ⋯ = 1 + i·a/(1+a)`; its graded pieces give
//! the values of `c₁, c₂, c₃` on that locus. Comparing the unknown
//! combination `A·c₁³ + B·c₁c₂ + C·c₃` against the weight-side series
//! quotients yields a 3×3 rational linear system whose unique solution is
//! `(A, B, C) = (−3, −6, −3)`; reducing mod 2 recovers the low-degree
//! normal-variable class `w₁³ + w₃`.
//!
//! [`IntSeries`] is a truncated one-variable power series with
//! [`BigRational`] coefficients; [`LinearSystemQ`] is an exact Gaussian
//! solver that reports a unique solution or a parametrized family and
//! never silently picks a representative.

use std::fmt;

use num::{BigRational, One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::symfun::{Mod2Poly, WMonomial};

/// A truncated formal power series in one variable `a` with exact
/// rational coefficients. `coeffs[k]` is the coefficient of `aᵏ`;
/// everything above the truncation order is discarded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntSeries {
    coeffs: Vec<BigRational>,
}

/// A rational from an integer.
fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

impl IntSeries {
    /// The zero series truncated at the given order (inclusive).
    pub fn zero(order: usize) -> Self {
        IntSeries {
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    /// `c · aᵏ` truncated at the given order.
    ///
    /// # Panics
    ///
    /// Panics if the power exceeds the truncation order.
    pub fn monomial(c: BigRational, k: usize, order: usize) -> Self {
        assert!(k <= order, "monomial power {k} above truncation order {order}");
        let mut s = IntSeries::zero(order);
        s.coeffs[k] = c;
        s
    }

    /// The constant series `1`.
    pub fn one(order: usize) -> Self {
        IntSeries::monomial(BigRational::one(), 0, order)
    }

    /// Truncation order (the largest retained power).
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// The coefficient of `aᵏ` (zero above the truncation).
    pub fn coefficient(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, other: &IntSeries) -> IntSeries {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &IntSeries) -> IntSeries {
        self.zip(other, |a, b| a - b)
    }

    fn zip(
        &self,
        other: &IntSeries,
        f: impl Fn(&BigRational, &BigRational) -> BigRational,
    ) -> IntSeries {
        assert_eq!(
            self.order(),
            other.order(),
            "series truncation orders must match"
        );
        IntSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    /// Product, truncated at the common order.
    pub fn mul(&self, other: &IntSeries) -> IntSeries {
        assert_eq!(
            self.order(),
            other.order(),
            "series truncation orders must match"
        );
        let order = self.order();
        let mut out = IntSeries::zero(order);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j > order {
                    break;
                }
                out.coeffs[i + j] += a * b;
            }
        }
        out
    }

    /// Exact quotient: long division against a series with nonzero
    /// constant term.
    ///
    /// # Panics
    ///
    /// Panics when the divisor's constant term vanishes (the quotient
    /// would not be a power series).
    pub fn div(&self, other: &IntSeries) -> IntSeries {
        assert_eq!(
            self.order(),
            other.order(),
            "series truncation orders must match"
        );
        assert!(
            !other.coeffs[0].is_zero(),
            "division requires a unit constant term"
        );
        let order = self.order();
        let mut quot = IntSeries::zero(order);
        for k in 0..=order {
            let mut acc = self.coeffs[k].clone();
            for j in 0..k {
                acc -= &quot.coeffs[j] * &other.coeffs[k - j];
            }
            quot.coeffs[k] = acc / &other.coeffs[0];
        }
        quot
    }

    /// Multiplies every coefficient by a rational.
    pub fn scale(&self, c: &BigRational) -> IntSeries {
        IntSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }
}

impl fmt::Display for IntSeries {
    /// `1 + 2*a - 2*a^2 + O(a^4)`-style rendering.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if wrote {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            wrote = true;
            let unit_mag = mag.is_one();
            match (k, unit_mag) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "a")?,
                (1, false) => write!(f, "{mag}*a")?,
                (_, true) => write!(f, "a^{k}")?,
                (_, false) => write!(f, "{mag}*a^{k}")?,
            }
        }
        if !wrote {
            write!(f, "0")?;
        }
        write!(f, " + O(a^{})", self.order() + 1)
    }
}

impl Serialize for IntSeries {
    /// Serializes as the list of coefficient strings (exact rationals).
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let coeffs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        coeffs.serialize(serializer)
    }
}

/// The graded restrictions of the total class to the `i`-th model locus.
#[derive(Debug, Clone, Serialize)]
pub struct RestrictionClasses {
    pub i: u32,
    /// The full restricted total class `1 + i·a/(1+a)`.
    pub total: IntSeries,
    pub c1: IntSeries,
    pub c2: IntSeries,
    pub c3: IntSeries,
}

/// Restricts the total class to the `i`-th model locus: the series
/// `1 + i·a − i·a² + i·a³ − ⋯` computed by exact division, with its
/// degree-1, 2, 3 graded parts split out (`c₁ = i·a`, `c₂ = −i·a²`,
/// `c₃ = i·a³`).
///
/// # Panics
///
/// Panics when `i = 0` (no model locus) or `order < 3` (the graded parts
/// through degree 3 must exist).
pub fn restriction_series(i: u32, order: usize) -> RestrictionClasses {
    assert!(i >= 1, "model loci are indexed from 1");
    assert!(order >= 3, "need at least order 3 to split off c1, c2, c3");
    let a = IntSeries::monomial(BigRational::one(), 1, order);
    let one = IntSeries::one(order);
    // i·a/(1+a) = i·(a − a² + a³ − ⋯)
    let tail = a.div(&one.add(&a)).scale(&q(i.into()));
    let total = one.add(&tail);
    let part = |k: usize| IntSeries::monomial(total.coefficient(k), k, order);
    RestrictionClasses {
        i,
        c1: part(1),
        c2: part(2),
        c3: part(3),
        total,
    }
}

/// The degree-3 coefficient of the weight-side series quotient for the
/// `i`-th equation: `a·2a/((1+a)(1+2a))` for `i = 2` and
/// `6a²/((1+a)(1+2a)(1+3a))` for `i = 3`, both expanded by exact series
/// division.
///
/// # Panics
///
/// Panics for `i` outside `{2, 3}` — only those equations have a
/// tabulated weight side.
pub fn weight_side(i: u32) -> BigRational {
    let order = 3;
    let one = IntSeries::one(order);
    let line = |m: i64| {
        one.add(&IntSeries::monomial(q(m), 1, order))
    };
    let series = match i {
        2 => IntSeries::monomial(q(2), 2, order).div(&line(1).mul(&line(2))),
        3 => IntSeries::monomial(q(6), 2, order)
            .div(&line(1).mul(&line(2)).mul(&line(3))),
        other => panic!("no weight side tabulated for i = {other}"),
    };
    series.coefficient(3)
}

/// How a consistent linear system pins its unknowns down.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinearSolution {
    /// Exactly one solution vector.
    Unique(Vec<BigRational>),
    /// An affine family: one particular solution plus a basis of the
    /// homogeneous solutions.
    Family {
        particular: Vec<BigRational>,
        homogeneous: Vec<Vec<BigRational>>,
    },
}

/// An exact rational linear system `M·x = b` with labeled unknowns.
#[derive(Debug, Clone)]
pub struct LinearSystemQ {
    labels: Vec<String>,
    matrix: Vec<Vec<BigRational>>,
    rhs: Vec<BigRational>,
}

impl LinearSystemQ {
    /// Builds a system.
    ///
    /// # Panics
    ///
    /// Panics when row lengths disagree with the number of labels or the
    /// right-hand side length disagrees with the number of rows.
    pub fn new(
        labels: Vec<String>,
        matrix: Vec<Vec<BigRational>>,
        rhs: Vec<BigRational>,
    ) -> Self {
        assert_eq!(matrix.len(), rhs.len(), "one right-hand side per row");
        for row in &matrix {
            assert_eq!(row.len(), labels.len(), "one entry per unknown");
        }
        LinearSystemQ { labels, matrix, rhs }
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn matrix(&self) -> &[Vec<BigRational>] {
        &self.matrix
    }

    pub fn rhs(&self) -> &[BigRational] {
        &self.rhs
    }

    /// Determinant of a square system's coefficient matrix, by fraction-
    /// free-enough rational elimination.
    ///
    /// # Panics
    ///
    /// Panics when the matrix is not square.
    pub fn determinant(&self) -> BigRational {
        let n = self.matrix.len();
        assert!(
            self.matrix.iter().all(|r| r.len() == n),
            "determinant needs a square matrix"
        );
        let mut m: Vec<Vec<BigRational>> = self.matrix.clone();
        let mut det = BigRational::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
                return BigRational::zero();
            };
            if pivot != col {
                m.swap(col, pivot);
                det = -det;
            }
            let p = m[col][col].clone();
            det *= &p;
            for r in col + 1..n {
                let factor = &m[r][col] / &p;
                for c in col..n {
                    let sub = &factor * &m[col][c];
                    m[r][c] -= sub;
                }
            }
        }
        det
    }

    /// Solves exactly. Inconsistent systems are an error; underdetermined
    /// consistent systems come back as a parametrized family.
    pub fn solve(&self) -> Result<LinearSolution> {
        let rows = self.matrix.len();
        let cols = self.labels.len();
        let mut m: Vec<Vec<BigRational>> = self
            .matrix
            .iter()
            .zip(&self.rhs)
            .map(|(row, b)| {
                let mut r = row.clone();
                r.push(b.clone());
                r
            })
            .collect();
        // Reduced row echelon form.
        let mut pivot_cols: Vec<usize> = Vec::new();
        let mut rank = 0usize;
        for col in 0..cols {
            let Some(pivot) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(rank, pivot);
            let p = m[rank][col].clone();
            for c in col..=cols {
                m[rank][c] /= &p;
            }
            for r in 0..rows {
                if r != rank && !m[r][col].is_zero() {
                    let factor = m[r][col].clone();
                    for c in col..=cols {
                        let sub = &factor * &m[rank][c];
                        m[r][c] -= sub;
                    }
                }
            }
            pivot_cols.push(col);
            rank += 1;
            if rank == rows {
                break;
            }
        }
        for r in rank..rows {
            if !m[r][cols].is_zero() {
                return Err(Error::LinearSystem(
                    "inconsistent system: zero row with nonzero right-hand side".to_owned(),
                ));
            }
        }
        let mut particular = vec![BigRational::zero(); cols];
        for (r, &c) in pivot_cols.iter().enumerate() {
            particular[c] = m[r][cols].clone();
        }
        let free_cols: Vec<usize> =
            (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
        if free_cols.is_empty() {
            return Ok(LinearSolution::Unique(particular));
        }
        let homogeneous = free_cols
            .iter()
            .map(|&fc| {
                let mut v = vec![BigRational::zero(); cols];
                v[fc] = BigRational::one();
                for (r, &pc) in pivot_cols.iter().enumerate() {
                    v[pc] = -m[r][fc].clone();
                }
                v
            })
            .collect();
        Ok(LinearSolution::Family {
            particular,
            homogeneous,
        })
    }
}

impl fmt::Display for LinearSystemQ {
    /// One equation per line: `1*c1^3 - 1*c1*c2 + 1*c3 = 0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, (row, b)) in self.matrix.iter().zip(&self.rhs).enumerate() {
            if idx > 0 {
                writeln!(f)?;
            }
            let mut wrote = false;
            for (c, label) in row.iter().zip(&self.labels) {
                if c.is_zero() {
                    continue;
                }
                if wrote {
                    write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
                } else if c.is_negative() {
                    write!(f, "-")?;
                }
                wrote = true;
                write!(f, "{}*{label}", c.abs())?;
            }
            if !wrote {
                write!(f, "0")?;
            }
            write!(f, " = {b}")?;
        }
        Ok(())
    }
}

impl Serialize for LinearSystemQ {
    /// `{"labels": [...], "matrix": [["1","-1","1"],...], "rhs": [...]}`
    /// with exact rational strings.
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("LinearSystemQ", 3)?;
        st.serialize_field("labels", &self.labels)?;
        let matrix: Vec<Vec<String>> = self
            .matrix
            .iter()
            .map(|row| row.iter().map(|c| c.to_string()).collect())
            .collect();
        st.serialize_field("matrix", &matrix)?;
        let rhs: Vec<String> = self.rhs.iter().map(|c| c.to_string()).collect();
        st.serialize_field("rhs", &rhs)?;
        st.end()
    }
}

/// Everything the worked degree-3 computation produces: the assembled
/// system, its unique solution, the answer string through degree 3, and
/// the mod-2 reductions of both graded pieces.
#[derive(Debug, Clone, Serialize)]
pub struct RestrictionDemo {
    pub system: LinearSystemQ,
    /// `(A, B, C)` as exact rational strings.
    pub solution: Vec<String>,
    /// The class through degree 3 in the `c`-variables.
    pub answer: String,
    /// Mod-2 reduction of the degree-2 piece `c₁² + c₂`.
    pub degree2_mod2: Mod2Poly,
    /// Mod-2 reduction of the solved degree-3 piece.
    pub degree3_mod2: Mod2Poly,
}

/// Assembles the three restriction equations for the unknown degree-3
/// combination `A·c₁³ + B·c₁c₂ + C·c₃`: row `i` evaluates the three
/// monomials on [`restriction_series`]`(i)` (giving `(i³, −i², i)`), and
/// the right-hand sides are `0` and the two [`weight_side`] values.
fn build_system() -> LinearSystemQ {
    let order = 4;
    let labels = vec!["c1^3".to_owned(), "c1*c2".to_owned(), "c3".to_owned()];
    let mut matrix = Vec::new();
    for i in 1..=3u32 {
        let r = restriction_series(i, order);
        let c1_cubed = r.c1.mul(&r.c1).mul(&r.c1);
        let c1c2 = r.c1.mul(&r.c2);
        matrix.push(vec![
            c1_cubed.coefficient(3),
            c1c2.coefficient(3),
            r.c3.coefficient(3),
        ]);
    }
    let rhs = vec![q(0), weight_side(2), weight_side(3)];
    LinearSystemQ::new(labels, matrix, rhs)
}

/// Solves the assembled system; the unique solution is `(−3, −6, −3)`.
#[allow(non_snake_case)]
pub fn solve_s3_A2() -> Result<(BigRational, BigRational, BigRational)> {
    match build_system().solve()? {
        LinearSolution::Unique(v) => {
            let mut it = v.into_iter();
            Ok((
                it.next().unwrap(),
                it.next().unwrap(),
                it.next().unwrap(),
            ))
        }
        LinearSolution::Family { .. } => Err(Error::LinearSystem(
            "expected a unique solution but found a family".to_owned(),
        )),
    }
}

/// The full worked computation, including displayable intermediates.
pub fn restriction_demo() -> Result<RestrictionDemo> {
    let system = build_system();
    let (a, b, c) = solve_s3_A2()?;
    let solution = vec![a, b, c];
    let render_int = |c: &BigRational| -> String {
        assert!(c.is_integer(), "demo solution should be integral");
        c.to_string()
    };
    // (c1^2+c2) - (3c1^3 + 6c1*c2 + 3c3), signs folded from the solution.
    let neg = solution.iter().map(|c| -c).collect::<Vec<_>>();
    let answer = format!(
        "(c1^2+c2)-({}*c1^3+{}*c1*c2+{}*c3)",
        render_int(&neg[0]),
        render_int(&neg[1]),
        render_int(&neg[2]),
    );
    let parity = |c: &BigRational| -> bool {
        assert!(c.is_integer(), "mod-2 reduction needs integers");
        c.numer() % 2 != num::BigInt::zero()
    };
    let mut degree2 = Mod2Poly::zero();
    degree2 = degree2.add(&Mod2Poly::from_monomials([WMonomial::from_pairs(&[(1, 2)])]));
    degree2 = degree2.add(&Mod2Poly::from_monomials([WMonomial::from_pairs(&[(2, 1)])]));
    let degree3_monos: [(usize, WMonomial); 3] = [
        (0, WMonomial::from_pairs(&[(1, 3)])),
        (1, WMonomial::from_pairs(&[(1, 1), (2, 1)])),
        (2, WMonomial::from_pairs(&[(3, 1)])),
    ];
    let mut degree3 = Mod2Poly::zero();
    for (k, mono) in degree3_monos {
        if parity(&solution[k]) {
            degree3 = degree3.add(&Mod2Poly::from_monomials([mono]));
        }
    }
    Ok(RestrictionDemo {
        system,
        solution: solution.iter().map(render_int).collect(),
        answer,
        degree2_mod2: degree2,
        degree3_mod2: degree3,
    })
}
