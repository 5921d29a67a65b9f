//! Obstruction engine: Thom polynomials, stable avoiding ideals, and the
//! two bounds they induce on a manifold model.
//!
//! For a singularity family `η` with unfolding level `l`, the stable
//! avoiding ideal is spanned by the Schur classes `s_λ` whose partition
//! contains the family's rectangle at level `l`; the Thom polynomial is the
//! rectangle class itself (the ideal's lowest element). The module
//! computes:
//!
//! - [`thom_polynomial`] and [`avoiding_basis`] — the rectangle class and
//!   the weight-bounded ideal basis;
//! - [`tau_bound`] — the least level from which every higher Thom
//!   polynomial evaluates to zero on the model's dual class;
//! - [`kappa_bruteforce`] — the least level from which the whole ideal
//!   evaluates to zero, found by exhaustive evaluation;
//! - [`classify_case`] and [`kappa_closed`] — the binary-digit case
//!   analysis (a/b/c/d) and the matching closed formula for the fold bound
//!   on real projective spaces;
//! - [`nonvanishing_lambdas`] — for case-a dimensions, the explicit list
//!   of hook-extended partitions whose evaluation survives at the critical
//!   level;
//! - [`bound_report`] — everything above bundled with per-level witness
//!   partitions.
//!
//! Both bound searches stop once the rectangle outweighs the model
//! dimension: every Schur class in a higher-level ideal then has degree
//! above the dimension and evaluates to zero for degree reasons alone, so
//! termination never relies on the closed formula under test.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::{enumerate, Partition};
use crate::rings::ManifoldModel;
use crate::symfun::SchurCombo;

/// A stable singularity family: the corank-`i` loci `Σⁱ` or the
/// second-order family `A₂`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SingularityFamily {
    /// Corank-`i` family `Σⁱ`, `i ≥ 1`.
    SigmaI { i: u32 },
    /// The second-order Morin family `A₂`.
    A2,
}

impl SingularityFamily {
    /// The corank-2 family, used throughout the fold/Morin bounds.
    pub const SIGMA2: SingularityFamily = SingularityFamily::SigmaI { i: 2 };

    /// Smallest supported unfolding level `l₀`.
    ///
    /// Level −1 exists only for `Σ²` (its rectangle degenerates to the
    /// `(1,1)` column); every other family starts at 0.
    pub fn min_level(&self) -> i64 {
        match self {
            SingularityFamily::SigmaI { i: 2 } => -1,
            _ => 0,
        }
    }

    /// Whether the level is in the supported range.
    pub fn supports_level(&self, l: i64) -> bool {
        l >= self.min_level()
    }

    /// The rectangle of the level-`l` ideal: `(i+l)^i` for `Σⁱ(l)` (height
    /// `i`, width `i+l`), `(l+1, l+1)` for `A₂(l)`.
    ///
    /// # Panics
    ///
    /// Panics when the level is below [`SingularityFamily::min_level`].
    pub fn rectangle(&self, l: i64) -> Partition {
        assert!(
            self.supports_level(l),
            "{self} does not support level {l}"
        );
        match self {
            SingularityFamily::SigmaI { i } => {
                Partition::rectangle((*i as i64 + l) as u32, *i)
            }
            SingularityFamily::A2 => Partition::rectangle((l + 1) as u32, 2),
        }
    }
}

impl fmt::Display for SingularityFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SingularityFamily::SigmaI { i } => write!(f, "Sigma{i}"),
            SingularityFamily::A2 => write!(f, "A2"),
        }
    }
}

impl FromStr for SingularityFamily {
    type Err = Error;

    /// Parses `a2` or `sigmaN` (case-insensitive).
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        if lower == "a2" {
            return Ok(SingularityFamily::A2);
        }
        if let Some(rest) = lower.strip_prefix("sigma") {
            let i: u32 = rest
                .parse()
                .map_err(|_| Error::Domain(format!("unknown singularity family {s}")))?;
            if i >= 1 {
                return Ok(SingularityFamily::SigmaI { i });
            }
        }
        Err(Error::Domain(format!("unknown singularity family {s}")))
    }
}

impl Serialize for SingularityFamily {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SingularityFamily {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The four classes of the binary-digit case analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CaseLabel {
    A,
    B,
    C,
    D,
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            CaseLabel::A => 'a',
            CaseLabel::B => 'b',
            CaseLabel::C => 'c',
            CaseLabel::D => 'd',
        };
        write!(f, "{c}")
    }
}

/// The case-d digit decomposition `n = 2ᵘ(8a+3) + b` with `b < 2ᵘ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DDecomposition {
    pub a: u32,
    pub u: u32,
    pub b: u32,
}

/// Result of [`classify_case`]: the case label with its auxiliary digit
/// data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseInfo {
    /// The classified dimension.
    pub n: u32,
    /// Case a, b, c, or d.
    pub label: CaseLabel,
    /// Number of binary digits `t`: `2^{t−1} ≤ n < 2^t`.
    pub digits: u32,
    /// The 2-adic valuation `p` of `n` (0 for odd `n`).
    pub valuation: u32,
    /// Present exactly in case d.
    #[serde(skip_serializing_if = "Option::is_none")]
    #[serde(default)]
    pub decomposition: Option<DDecomposition>,
}

/// Per-level witnesses: the ideal members with nonzero evaluation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelWitnesses {
    pub level: i64,
    pub partitions: Vec<Partition>,
}

/// Both bounds for one projective space, with the full witness trace.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundReport {
    pub n: u32,
    pub family: SingularityFamily,
    /// Least level from which all higher Thom polynomials vanish.
    pub tau: i64,
    /// Least level from which the whole avoiding ideal vanishes (brute
    /// force).
    pub kappa: i64,
    /// The closed formula's value — for `A₂` directly, shifted down by one
    /// for `Σ²`, absent for other families.
    pub kappa_closed: Option<i64>,
    pub case: CaseInfo,
    pub witnesses: Vec<LevelWitnesses>,
}

/// The Thom polynomial of the family at level `l`: the single Schur class
/// of the rectangle.
///
/// # Panics
///
/// Panics when the level is below the family's minimum.
pub fn thom_polynomial(family: SingularityFamily, l: i64) -> SchurCombo {
    SchurCombo::singleton(family.rectangle(l))
}

/// Basis of the weight-bounded avoiding ideal: all partitions containing
/// the level-`l` rectangle, with weight at most `max_weight`, in the
/// enumeration order (weight ascending, then reverse-lexicographic).
///
/// # Panics
///
/// Panics when the level is below the family's minimum.
pub fn avoiding_basis(family: SingularityFamily, l: i64, max_weight: u32) -> Vec<Partition> {
    enumerate(max_weight, &family.rectangle(l), None)
}

/// Shared scan behind both bounds: evaluates the level-`l₀` ideal basis
/// once, then reads off per-level witnesses by containment.
fn scan_levels(
    m: &ManifoldModel,
    family: SingularityFamily,
) -> (i64, i64, Vec<LevelWitnesses>) {
    let l0 = family.min_level();
    let dim = m.dim();
    let assignment = m.wbar_assignment();
    let master = avoiding_basis(family, l0, dim);
    let mut survives: HashMap<&Partition, bool> = HashMap::new();
    for lambda in &master {
        survives.insert(lambda, !assignment.evaluate_schur(lambda).is_zero());
    }
    let mut tau = l0;
    let mut kappa = l0;
    let mut witnesses = Vec::new();
    let mut l = l0;
    loop {
        let rect = family.rectangle(l);
        if rect.weight() > dim {
            // Every member of this and all higher ideals has degree above
            // the model dimension and evaluates to zero for degree reasons.
            break;
        }
        let parts: Vec<Partition> = master
            .iter()
            .filter(|lambda| lambda.contains(&rect) && survives[*lambda])
            .cloned()
            .collect();
        if parts.iter().any(|p| *p == rect) {
            tau = l + 1;
        }
        if !parts.is_empty() {
            kappa = l + 1;
        }
        witnesses.push(LevelWitnesses { level: l, partitions: parts });
        l += 1;
    }
    (tau, kappa, witnesses)
}

/// Least level `l ≥ l₀` such that the Thom polynomial of every level
/// `j ≥ l` evaluates to zero on the model's dual class.
pub fn tau_bound(m: &ManifoldModel, family: SingularityFamily) -> i64 {
    scan_levels(m, family).0
}

/// Least level `l ≥ l₀` such that every member of the level-`l` avoiding
/// ideal evaluates to zero on the model's dual class. The ideals are
/// nested downward, so one clean level stays clean from then on.
pub fn kappa_bruteforce(m: &ManifoldModel, family: SingularityFamily) -> i64 {
    scan_levels(m, family).1
}

/// Full bound report for the real projective `n`-space.
pub fn bound_report(n: u32, family: SingularityFamily) -> BoundReport {
    let m = ManifoldModel::rp(n);
    let (tau, kappa, witnesses) = scan_levels(&m, family);
    let closed = match family {
        SingularityFamily::A2 => Some(kappa_closed(n)),
        SingularityFamily::SigmaI { i: 2 } => Some(kappa_closed(n) - 1),
        _ => None,
    };
    BoundReport {
        n,
        family,
        tau,
        kappa,
        kappa_closed: closed,
        case: classify_case(n),
        witnesses,
    }
}

/// Binary-digit case classification of `n ≥ 1`.
///
/// With `t` binary digits and the threshold `L(t) = ⌊2^{t+1}/3⌋`:
/// no pair of consecutive 1-digits puts even `n` in case a and odd `n` in
/// case b; a pair of consecutive 1-digits puts `n > L(t)` in case c and
/// `n < L(t)` in case d (equality cannot occur: `L(t)` has alternating
/// digits). Case d additionally records the decomposition
/// `n = 2ᵘ(8a+3) + b`, `b < 2ᵘ`, from the highest digit position `u` with
/// the pattern `0,1,1` at places `u+2, u+1, u`.
///
/// # Panics
///
/// Panics when `n = 0`.
pub fn classify_case(n: u32) -> CaseInfo {
    assert!(n >= 1, "case classification needs n >= 1");
    let digits = 32 - n.leading_zeros();
    let valuation = n.trailing_zeros();
    let has_consecutive_ones = n & (n >> 1) != 0;
    if !has_consecutive_ones {
        let label = if n % 2 == 0 { CaseLabel::A } else { CaseLabel::B };
        return CaseInfo {
            n,
            label,
            digits,
            valuation,
            decomposition: None,
        };
    }
    let threshold = (2u64 << digits) / 3; // L(t) = floor(2^{t+1}/3)
    if u64::from(n) > threshold {
        return CaseInfo {
            n,
            label: CaseLabel::C,
            digits,
            valuation,
            decomposition: None,
        };
    }
    let u = (0..=29)
        .rev()
        .find(|&u| n >> u & 0b111 == 0b011)
        .expect("a case-d dimension has a 0,1,1 digit pattern");
    let b = n & ((1 << u) - 1);
    let a = ((n >> u) - 3) / 8;
    CaseInfo {
        n,
        label: CaseLabel::D,
        digits,
        valuation,
        decomposition: Some(DDecomposition { a, u, b }),
    }
}

/// The closed formula for the fold bound on the real projective `n`-space,
/// by case: a) `(n − 2ᵖ)/2 + 1`; b) `(n − 1)/2`; c) `2ᵗ − n − 1`;
/// d) `2^{u+2}·a + (2ᵘ − 1 − b)`.
///
/// # Panics
///
/// Panics when `n = 0`.
pub fn kappa_closed(n: u32) -> i64 {
    let case = classify_case(n);
    let n = i64::from(n);
    match case.label {
        CaseLabel::A => (n - (1i64 << case.valuation)) / 2 + 1,
        CaseLabel::B => (n - 1) / 2,
        CaseLabel::C => (1i64 << case.digits) - n - 1,
        CaseLabel::D => {
            let d = case.decomposition.expect("case d carries its decomposition");
            (4i64 << d.u) * i64::from(d.a) + ((1i64 << d.u) - 1 - i64::from(d.b))
        }
    }
}

/// For a case-a dimension `n`, the partitions in the critical-level corank-2
/// ideal whose evaluation on the dual class survives: with
/// `l = n/2 − 2^{p−1} − 1` and `q = n − 2(l+2)`, the `q+1` partitions
/// `(l+2+j, l+2, 1^{q−j})` for `j = 0..=q`, in ascending `j`. Each
/// evaluates to the top class `xⁿ`.
///
/// Rejects dimensions outside case a.
pub fn nonvanishing_lambdas(n: u32) -> Result<Vec<Partition>> {
    let case = classify_case(n);
    if case.label != CaseLabel::A {
        return Err(Error::WrongCase {
            n,
            found: case.label.to_string().chars().next().unwrap(),
            required: 'a',
        });
    }
    let p = case.valuation; // ≥ 1: case a dimensions are even
    let l = i64::from(n) / 2 - (1i64 << (p - 1)) - 1;
    let width = (l + 2) as u32;
    let q = n - 2 * width;
    let mut result = Vec::with_capacity(q as usize + 1);
    for j in 0..=q {
        let mut parts = vec![width + j, width];
        parts.extend(std::iter::repeat(1).take((q - j) as usize));
        result.push(Partition::new(parts));
    }
    Ok(result)
}
