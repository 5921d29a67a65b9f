//! Characteristic-number series for singularity strata: tangential
//! reformulation, reduction modulo the relations satisfied by
//! Stiefel-Whitney numbers of closed manifolds, and closure sums.
//!
//! The pipeline, starting from a stratum's dual Segre class in normal
//! variables `w_i`:
//!
//! 1. [`w_to_t`] rewrites in tangential variables: the ring map
//!    `w_i ↦ t̄_i`, where `t̄_i` is the degree-`i` part of
//!    `(1 + t₁ + t₂ + …)⁻¹`.
//! 2. [`hat_w`] multiplies by the total class `1 + t₁ + t₂ + …`,
//!    giving the numbers `ŵ` whose coefficients are counted.
//! 3. [`chi_series`] reinterprets each `t`-monomial as a τ-monomial —
//!    a Stiefel-Whitney number of the (virtual) locus — grouped by degree.
//! 4. [`dold_reduce`] reduces each degree modulo the tabulated relations
//!    among Stiefel-Whitney numbers (degrees up to 7), leaving each class
//!    on a canonical representative.
//!
//! [`catalog`] holds the dual Segre classes of the corank-one strata up
//! to codimension five, truncated at degree six; [`closure_series`] sums
//! their reduced series degree by degree, flagging the top catalogued
//! degree where the stratum list is not exhaustive.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::partitions::partitions_of_weight;
use crate::symfun::{Mod2Poly, WMonomial};

/// Renders a monomial with an arbitrary variable prefix
/// (`prefix=1` exponents elided), e.g. `tau1^2*tau3`.
fn render_prefixed(m: &WMonomial, prefix: &str) -> String {
    if m.is_one() {
        return "1".to_owned();
    }
    m.factors()
        .map(|(i, e)| {
            if e == 1 {
                format!("{prefix}{i}")
            } else {
                format!("{prefix}{i}^{e}")
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

/// Renders a polynomial with an arbitrary variable prefix, terms sorted
/// by degree then monomial; the zero polynomial renders as `0`.
fn render_poly_prefixed(p: &Mod2Poly, prefix: &str) -> String {
    if p.is_zero() {
        return "0".to_owned();
    }
    p.sorted_terms()
        .iter()
        .map(|m| render_prefixed(m, prefix))
        .collect::<Vec<_>>()
        .join("+")
}

/// A polynomial over F₂ in the tangential variables `t₁, t₂, …` —
/// structurally a [`Mod2Poly`], kept as a distinct type so normal-variable
/// and tangential-variable expressions cannot be mixed by accident.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TangentPoly(Mod2Poly);

impl TangentPoly {
    /// The zero polynomial.
    pub fn zero() -> Self {
        TangentPoly(Mod2Poly::zero())
    }

    /// Wraps a raw polynomial as a tangential-variable polynomial.
    pub fn from_raw(p: Mod2Poly) -> Self {
        TangentPoly(p)
    }

    /// The underlying coefficient structure.
    pub fn raw(&self) -> &Mod2Poly {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn add(&self, other: &TangentPoly) -> TangentPoly {
        TangentPoly(self.0.add(&other.0))
    }

    pub fn mul(&self, other: &TangentPoly) -> TangentPoly {
        TangentPoly(self.0.mul(&other.0))
    }

    /// Homogeneous part of the given degree.
    pub fn degree_part(&self, d: u32) -> TangentPoly {
        TangentPoly(self.0.degree_part(d))
    }

    /// Drops all terms of degree above `cap`.
    pub fn truncate(&self, cap: u32) -> TangentPoly {
        TangentPoly(self.0.truncate(cap))
    }
}

impl fmt::Display for TangentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_poly_prefixed(&self.0, "t"))
    }
}

impl Serialize for TangentPoly {
    /// Serializes as the sorted list of rendered terms.
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<String> = self
            .0
            .sorted_terms()
            .iter()
            .map(|m| render_prefixed(m, "t"))
            .collect();
        terms.serialize(serializer)
    }
}

/// A series of τ-monomial sums, one homogeneous polynomial per degree.
/// Each τ-monomial `τ_{i₁}⋯τ_{i_k}` stands for a Stiefel-Whitney number;
/// degrees that [`dold_reduce`] could not reduce (no tabulated relations)
/// are listed in `warnings`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TauSeries {
    by_degree: BTreeMap<u32, Mod2Poly>,
    warnings: BTreeSet<u32>,
}

impl TauSeries {
    pub fn new() -> Self {
        TauSeries::default()
    }

    /// The polynomial in the given degree (zero when absent).
    pub fn degree_part(&self, d: u32) -> Mod2Poly {
        self.by_degree.get(&d).cloned().unwrap_or_else(Mod2Poly::zero)
    }

    /// Nonzero degrees with their polynomials, ascending.
    pub fn parts(&self) -> impl Iterator<Item = (u32, &Mod2Poly)> + '_ {
        self.by_degree.iter().map(|(&d, p)| (d, p))
    }

    /// Inserts (replacing) one degree; zero polynomials are dropped.
    pub fn set_degree(&mut self, d: u32, p: Mod2Poly) {
        if p.is_zero() {
            self.by_degree.remove(&d);
        } else {
            self.by_degree.insert(d, p);
        }
    }

    /// Adds another series degreewise.
    pub fn add(&self, other: &TauSeries) -> TauSeries {
        let mut out = self.clone();
        for (d, p) in other.parts() {
            out.set_degree(d, out.degree_part(d).add(p));
        }
        out.warnings.extend(other.warnings.iter().copied());
        out
    }

    pub fn is_zero(&self) -> bool {
        self.by_degree.is_empty()
    }

    /// Degrees that passed through [`dold_reduce`] unreduced.
    pub fn warnings(&self) -> &BTreeSet<u32> {
        &self.warnings
    }

    /// Renders one degree as τ-monomials (`0` when empty).
    pub fn render_degree(&self, d: u32) -> String {
        render_poly_prefixed(&self.degree_part(d), "tau")
    }
}

impl fmt::Display for TauSeries {
    /// One `deg d: …` line per nonzero degree, unreduced degrees marked.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.by_degree.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&d, p) in &self.by_degree {
            if !first {
                writeln!(f)?;
            }
            first = false;
            let marker = if self.warnings.contains(&d) {
                " (unreduced)"
            } else {
                ""
            };
            write!(f, "deg {d}: {}{marker}", render_poly_prefixed(p, "tau"))?;
        }
        Ok(())
    }
}

impl Serialize for TauSeries {
    /// Serializes as `{"by_degree": {"4": "tau4+..."}, "warnings": [...]}`.
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            by_degree: BTreeMap<String, String>,
            warnings: &'a BTreeSet<u32>,
        }
        let by_degree = self
            .by_degree
            .iter()
            .map(|(d, p)| (d.to_string(), render_poly_prefixed(p, "tau")))
            .collect();
        Repr {
            by_degree,
            warnings: &self.warnings,
        }
        .serialize(serializer)
    }
}

/// The tabulated relations among degree-`d` Stiefel-Whitney numbers of
/// closed `d`-manifolds, for `d ≤ 7`, stored verbatim as sums of
/// τ-monomials that vanish. The table is used exactly as tabulated and is
/// never extrapolated to higher degrees.
#[derive(Debug, Clone)]
pub struct RelationTable {
    by_degree: BTreeMap<u32, Vec<Mod2Poly>>,
}

/// A τ-monomial from the multiset of its indices.
fn tau_mono(parts: &[u32]) -> WMonomial {
    let mut exps: BTreeMap<u32, u32> = BTreeMap::new();
    for &p in parts {
        *exps.entry(p).or_insert(0) += 1;
    }
    WMonomial::from_pairs(&exps.into_iter().collect::<Vec<_>>())
}

/// A sum of τ-monomials, each given by its index multiset.
fn tau_sum(monos: &[&[u32]]) -> Mod2Poly {
    Mod2Poly::from_monomials(monos.iter().map(|m| tau_mono(m)))
}

impl RelationTable {
    /// The standard table, degrees 1 through 7.
    pub fn standard() -> &'static RelationTable {
        static TABLE: OnceLock<RelationTable> = OnceLock::new();
        TABLE.get_or_init(|| {
            let mut by_degree: BTreeMap<u32, Vec<Mod2Poly>> = BTreeMap::new();
            by_degree.insert(1, vec![tau_sum(&[&[1]])]);
            by_degree.insert(2, vec![tau_sum(&[&[2], &[1, 1]])]);
            by_degree.insert(
                3,
                vec![
                    tau_sum(&[&[3]]),
                    tau_sum(&[&[2, 1]]),
                    tau_sum(&[&[1, 1, 1]]),
                ],
            );
            by_degree.insert(
                4,
                vec![
                    tau_sum(&[&[3, 1]]),
                    tau_sum(&[&[2, 1, 1], &[1, 1, 1, 1]]),
                ],
            );
            by_degree.insert(
                5,
                vec![
                    tau_sum(&[&[5]]),
                    tau_sum(&[&[4, 1]]),
                    tau_sum(&[&[3, 1, 1]]),
                    tau_sum(&[&[2, 2, 1]]),
                    tau_sum(&[&[2, 1, 1, 1]]),
                    tau_sum(&[&[1, 1, 1, 1, 1]]),
                ],
            );
            by_degree.insert(
                6,
                vec![
                    tau_sum(&[&[6], &[5, 1]]),
                    tau_sum(&[&[5, 1], &[4, 1, 1]]),
                    tau_sum(&[&[4, 1, 1], &[2, 2, 1, 1]]),
                    tau_sum(&[&[2, 2, 2], &[3, 3]]),
                    tau_sum(&[&[3, 3], &[3, 2, 1]]),
                    tau_sum(&[&[2, 1, 1, 1, 1], &[3, 1, 1, 1]]),
                    tau_sum(&[&[3, 1, 1, 1], &[4, 2]]),
                    tau_sum(&[&[4, 2], &[1, 1, 1, 1, 1, 1]]),
                ],
            );
            let deg7_zero: [&[u32]; 12] = [
                &[7],
                &[6, 1],
                &[5, 1, 1],
                &[4, 3],
                &[4, 1, 1, 1],
                &[3, 3, 1],
                &[3, 2, 2],
                &[3, 1, 1, 1, 1],
                &[2, 2, 2, 1],
                &[2, 2, 1, 1, 1],
                &[2, 1, 1, 1, 1, 1],
                &[1, 1, 1, 1, 1, 1, 1],
            ];
            let mut deg7: Vec<Mod2Poly> =
                deg7_zero.iter().map(|m| tau_sum(&[m])).collect();
            deg7.push(tau_sum(&[&[5, 2], &[4, 2, 1]]));
            deg7.push(tau_sum(&[&[4, 2, 1], &[3, 2, 1, 1]]));
            by_degree.insert(7, deg7);
            RelationTable { by_degree }
        })
    }

    /// The highest degree the table covers.
    pub fn max_degree(&self) -> u32 {
        *self.by_degree.keys().last().unwrap()
    }

    /// The relations in one degree (empty when the degree has none
    /// tabulated but is still within range, e.g. degree 0).
    pub fn relations(&self, d: u32) -> &[Mod2Poly] {
        self.by_degree.get(&d).map_or(&[], Vec::as_slice)
    }

    /// Whether the table covers the given degree.
    pub fn covers(&self, d: u32) -> bool {
        d <= self.max_degree()
    }

    /// Reduces a homogeneous degree-`d` polynomial to its canonical
    /// representative modulo the degree-`d` relations: monomials are
    /// ordered by their index partition (largest first), each relation
    /// eliminates its least monomial, so surviving classes sit on their
    /// largest member.
    ///
    /// # Panics
    ///
    /// Panics if the polynomial is not homogeneous of degree `d` or the
    /// degree is not covered by the table.
    pub fn reduce_degree(&self, d: u32, p: &Mod2Poly) -> Mod2Poly {
        assert!(self.covers(d), "no relations tabulated for degree {d}");
        assert!(
            p.is_zero() || (p.is_homogeneous() && p.degree() == Some(d)),
            "polynomial must be homogeneous of degree {d}"
        );
        // Basis of degree d: partitions ordered descending, so index 0 is
        // the largest monomial and elimination pivots (least monomials)
        // have the highest indices.
        let mut basis = partitions_of_weight(d);
        basis.sort_by(|a, b| b.cmp(a));
        let index: BTreeMap<WMonomial, usize> = basis
            .iter()
            .enumerate()
            .map(|(i, lam)| (tau_mono(lam.parts()), i))
            .collect();
        let to_bits = |poly: &Mod2Poly| -> u64 {
            let mut bits = 0u64;
            for m in poly.terms() {
                bits ^= 1 << index[m];
            }
            bits
        };
        // Row-reduce the relations, pivoting each on its least monomial
        // (= highest index bit).
        let mut pivots: BTreeMap<u32, u64> = BTreeMap::new();
        for rel in self.relations(d) {
            let mut row = to_bits(rel);
            while row != 0 {
                let lead = 63 - row.leading_zeros();
                match pivots.get(&lead) {
                    Some(&other) => row ^= other,
                    None => {
                        pivots.insert(lead, row);
                        break;
                    }
                }
            }
        }
        let mut bits = to_bits(p);
        loop {
            let mut changed = false;
            for (&lead, &row) in &pivots {
                if bits >> lead & 1 == 1 {
                    bits ^= row;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        Mod2Poly::from_monomials(
            basis
                .iter()
                .enumerate()
                .filter(|(i, _)| bits >> *i & 1 == 1)
                .map(|(_, lam)| tau_mono(lam.parts())),
        )
    }
}

/// `(1 + t₁ + … + t_max)` truncated at degree `max`.
fn total_t(max: u32) -> Mod2Poly {
    let mut p = Mod2Poly::one();
    for i in 1..=max {
        p = p.add(&Mod2Poly::var(i));
    }
    p
}

/// The degree-graded parts of `(1 + t₁ + t₂ + …)⁻¹` up to degree `max`:
/// `result[i]` is the degree-`i` part `t̄_i` (with `result[0] = 1`).
fn tbar_parts(max: u32) -> Vec<Mod2Poly> {
    // Over F₂, (1+u)⁻¹ satisfies v = 1 + u·v, so v_d = Σ_k t_k v_{d−k}.
    let mut parts = vec![Mod2Poly::one()];
    for d in 1..=max {
        let mut vd = Mod2Poly::zero();
        for k in 1..=d {
            vd = vd.add(&parts[(d - k) as usize].mul(&Mod2Poly::var(k)));
        }
        parts.push(vd);
    }
    parts
}

/// The ring map `w_i ↦ t̄_i` applied to a normal-variable polynomial,
/// truncated at degree `max`: rewrites a dual Segre class in tangential
/// variables.
pub fn w_to_t(p: &Mod2Poly, max: u32) -> TangentPoly {
    let tbar = tbar_parts(max);
    let mut out = Mod2Poly::zero();
    for m in p.terms() {
        if m.degree() > max {
            continue;
        }
        let mut image = Mod2Poly::one();
        for (i, e) in m.factors() {
            if i > max {
                image = Mod2Poly::zero();
                break;
            }
            for _ in 0..e {
                image = image.mul(&tbar[i as usize]).truncate(max);
                if image.is_zero() {
                    break;
                }
            }
            if image.is_zero() {
                break;
            }
        }
        out = out.add(&image);
    }
    TangentPoly(out)
}

/// `ŵ`: the tangential rewrite of `p` multiplied by the total class
/// `1 + t₁ + t₂ + …`, truncated at degree `max`. Its coefficients,
/// read as τ-monomials, are the locus's Stiefel-Whitney numbers.
pub fn hat_w(p: &Mod2Poly, max: u32) -> TangentPoly {
    TangentPoly(w_to_t(p, max).0.mul(&total_t(max)).truncate(max))
}

/// Reinterprets each `t`-monomial of a tangential polynomial as a
/// τ-monomial, grouped by degree.
pub fn chi_series(p: &TangentPoly) -> TauSeries {
    let mut series = TauSeries::new();
    for (d, part) in p.0.degree_parts() {
        series.set_degree(d, part);
    }
    series
}

/// Reduces every degree of a τ-series modulo the tabulated relations.
/// Degrees beyond the table pass through unchanged and are recorded in
/// the result's `warnings`.
pub fn dold_reduce(series: &TauSeries) -> TauSeries {
    let table = RelationTable::standard();
    let mut out = TauSeries::new();
    out.warnings = series.warnings.clone();
    for (d, p) in series.parts() {
        if table.covers(d) {
            out.set_degree(d, table.reduce_degree(d, p));
        } else {
            out.set_degree(d, p.clone());
            out.warnings.insert(d);
        }
    }
    out
}

/// Names for the catalogued strata (all at unfolding level 0).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum StratumKey {
    A2,
    A3,
    A4,
    A5,
    I22,
    #[serde(rename = "Sigma1")]
    Sigma1,
    #[serde(rename = "Sigma2")]
    Sigma2,
}

impl StratumKey {
    /// All catalogued keys, in catalogue order.
    pub const ALL: [StratumKey; 7] = [
        StratumKey::A2,
        StratumKey::A3,
        StratumKey::A4,
        StratumKey::A5,
        StratumKey::I22,
        StratumKey::Sigma1,
        StratumKey::Sigma2,
    ];

    /// The corank-one Morin strata whose union is the corank-one locus
    /// of positive codimension — the strata [`closure_series`] sums.
    pub const CLOSURE_FAMILY: [StratumKey; 5] = [
        StratumKey::A2,
        StratumKey::A3,
        StratumKey::A4,
        StratumKey::A5,
        StratumKey::I22,
    ];
}

impl fmt::Display for StratumKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            StratumKey::A2 => "A2",
            StratumKey::A3 => "A3",
            StratumKey::A4 => "A4",
            StratumKey::A5 => "A5",
            StratumKey::I22 => "I22",
            StratumKey::Sigma1 => "Sigma1",
            StratumKey::Sigma2 => "Sigma2",
        };
        write!(f, "{s}")
    }
}

impl std::str::FromStr for StratumKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "a2" => Ok(StratumKey::A2),
            "a3" => Ok(StratumKey::A3),
            "a4" => Ok(StratumKey::A4),
            "a5" => Ok(StratumKey::A5),
            "i22" => Ok(StratumKey::I22),
            "sigma1" => Ok(StratumKey::Sigma1),
            "sigma2" => Ok(StratumKey::Sigma2),
            other => Err(Error::Domain(format!(
                "unknown stratum '{other}' (expected A2, A3, A4, A5, I22, sigma1 or sigma2)"
            ))),
        }
    }
}

/// One catalogued stratum: its dual Segre class in normal variables,
/// truncated at `max_degree`.
#[derive(Debug, Clone, Serialize)]
pub struct CatalogEntry {
    pub key: StratumKey,
    /// Display name, e.g. `A2(0)`.
    pub name: String,
    /// Codimension of the stratum (= lowest degree of `ssw`).
    pub codimension: u32,
    /// Truncation degree of the stored class.
    pub max_degree: u32,
    /// The dual Segre class, truncated at `max_degree`.
    pub ssw: Mod2Poly,
    /// Where the stored coefficients come from.
    pub provenance: &'static str,
}

/// A monomial in normal variables from `(index, exponent)` pairs.
fn w_mono(pairs: &[(u32, u32)]) -> WMonomial {
    WMonomial::from_pairs(pairs)
}

/// A sum of normal-variable monomials.
fn w_sum(monos: &[&[(u32, u32)]]) -> Mod2Poly {
    Mod2Poly::from_monomials(monos.iter().map(|m| w_mono(m)))
}

fn build_catalog() -> Vec<CatalogEntry> {
    let a2 = w_sum(&[
        // degree 2
        &[(2, 1)],
        &[(1, 2)],
        // degree 3
        &[(1, 3)],
        &[(3, 1)],
        // degree 4
        &[(2, 2)],
        &[(4, 1)],
        // degree 5
        &[(2, 2), (1, 1)],
        &[(5, 1)],
        // degree 6
        &[(2, 3)],
        &[(6, 1)],
        &[(1, 6)],
        &[(4, 1), (2, 1)],
        &[(3, 1), (1, 3)],
        &[(2, 1), (1, 4)],
        &[(3, 1), (2, 1), (1, 1)],
        &[(4, 1), (1, 2)],
    ]);
    let a3 = w_sum(&[
        // degree 3
        &[(2, 1), (1, 1)],
        &[(1, 3)],
        // degree 5
        &[(4, 1), (1, 1)],
        &[(2, 2), (1, 1)],
        // degree 6
        &[(3, 2)],
        &[(4, 1), (2, 1)],
        &[(2, 3)],
        &[(4, 1), (1, 2)],
    ]);
    let a4 = w_sum(&[
        // degree 4
        &[(1, 4)],
        &[(3, 1), (1, 1)],
        // degree 5
        &[(1, 5)],
        &[(3, 1), (1, 2)],
        // degree 6
        &[(1, 6)],
        &[(3, 1), (2, 1), (1, 1)],
        &[(5, 1), (1, 1)],
        &[(2, 3)],
        &[(4, 1), (2, 1)],
        &[(3, 2)],
    ]);
    let a5 = w_sum(&[
        // degree 5
        &[(1, 5)],
        &[(3, 1), (1, 2)],
        // degree 6
        &[(2, 1), (1, 4)],
        &[(3, 1), (1, 3)],
        &[(2, 2), (1, 2)],
        &[(4, 1), (1, 2)],
    ]);
    let i22 = w_sum(&[
        // degree 4
        &[(3, 1), (1, 1)],
        &[(2, 2)],
        // degree 6
        &[(4, 1), (1, 2)],
        &[(5, 1), (1, 1)],
        &[(2, 3)],
        &[(4, 1), (2, 1)],
    ]);
    let sigma1 = w_sum(&[
        // degrees 1-4
        &[(1, 1)],
        &[(1, 2)],
        &[(1, 3)],
        &[(1, 4)],
        // degree 5
        &[(1, 5)],
        &[(2, 2), (1, 1)],
        &[(3, 1), (1, 2)],
        // degree 6
        &[(1, 6)],
        &[(2, 2), (1, 2)],
        &[(3, 1), (1, 3)],
    ]);
    let sigma2 = w_sum(&[
        // degree 4
        &[(2, 2)],
        &[(3, 1), (1, 1)],
        // degree 6
        &[(2, 2), (1, 2)],
        &[(3, 1), (1, 3)],
        &[(3, 1), (2, 1), (1, 1)],
        &[(3, 2)],
        &[(4, 1), (1, 2)],
        &[(5, 1), (1, 1)],
    ]);
    let entry = |key: StratumKey, codim: u32, ssw: Mod2Poly, provenance: &'static str| {
        CatalogEntry {
            key,
            name: format!("{key}(0)"),
            codimension: codim,
            max_degree: 6,
            ssw,
            provenance,
        }
    };
    vec![
        entry(StratumKey::A2, 2, a2, "ssw-table/A2(0)"),
        entry(StratumKey::A3, 3, a3, "ssw-table/A3(0)"),
        entry(StratumKey::A4, 4, a4, "ssw-table/A4(0)"),
        entry(StratumKey::A5, 5, a5, "ssw-table/A5(0)"),
        entry(StratumKey::I22, 4, i22, "ssw-table/I22(0)"),
        entry(StratumKey::Sigma1, 1, sigma1, "segre-series/Sigma1(0)"),
        entry(StratumKey::Sigma2, 4, sigma2, "segre-series/Sigma2(0)"),
    ]
}

/// The catalogued strata with their dual Segre classes (level 0,
/// truncated at degree 6).
pub fn catalog() -> &'static [CatalogEntry] {
    static CATALOG: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    CATALOG.get_or_init(build_catalog)
}

/// Looks up one catalogue entry.
pub fn catalog_entry(key: StratumKey) -> &'static CatalogEntry {
    catalog()
        .iter()
        .find(|e| e.key == key)
        .expect("every key is catalogued")
}

/// The reduced characteristic-number series of one catalogued stratum:
/// `dold_reduce(chi_series(hat_w(ssw)))` up to the entry's truncation.
pub fn stratum_chi_series(key: StratumKey) -> TauSeries {
    let entry = catalog_entry(key);
    dold_reduce(&chi_series(&hat_w(&entry.ssw, entry.max_degree)))
}

/// The degreewise sum of the reduced series of the given strata, up to
/// `max_degree`.
///
/// In the top catalogued degree (6) the stratum list is not exhaustive,
/// so when that degree is requested it is flagged in
/// `incomplete_degrees`: the sum there covers only the catalogued
/// strata. Degrees beyond the catalogue truncation are rejected.
pub fn closure_series(keys: &[StratumKey], max_degree: u32) -> Result<ClosureSeries> {
    let catalogue_max = 6;
    if max_degree > catalogue_max {
        return Err(Error::DegreeOutOfRange {
            requested: max_degree,
            max: catalogue_max,
            what: "closure series (catalogue truncation)",
        });
    }
    let mut series = TauSeries::new();
    for &key in keys {
        series = series.add(&stratum_chi_series(key));
    }
    let mut truncated = TauSeries::new();
    for (d, p) in series.parts() {
        if d <= max_degree {
            truncated.set_degree(d, p.clone());
        }
    }
    truncated.warnings = series
        .warnings
        .iter()
        .copied()
        .filter(|&d| d <= max_degree)
        .collect();
    let incomplete_degrees: BTreeSet<u32> = (catalogue_max..=max_degree).collect();
    Ok(ClosureSeries {
        keys: keys.to_vec(),
        max_degree,
        series: truncated,
        incomplete_degrees,
    })
}

/// Result of [`closure_series`]: the summed series plus the degrees where
/// the catalogue is known not to list every contributing stratum.
#[derive(Debug, Clone, Serialize)]
pub struct ClosureSeries {
    pub keys: Vec<StratumKey>,
    pub max_degree: u32,
    pub series: TauSeries,
    /// Degrees where the sum covers only the catalogued strata.
    pub incomplete_degrees: BTreeSet<u32>,
}

impl fmt::Display for ClosureSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.keys.iter().map(|k| k.to_string()).collect();
        write!(f, "strata: {}", names.join(", "))?;
        let lowest = self
            .series
            .parts()
            .next()
            .map_or(self.max_degree.min(1), |(d, _)| d.min(1));
        for d in lowest..=self.max_degree {
            let marker = if self.incomplete_degrees.contains(&d) {
                " (catalogue incomplete in this degree)"
            } else {
                ""
            };
            write!(f, "\ndeg {d}: {}{marker}", self.series.render_degree(d))?;
        }
        Ok(())
    }
}
