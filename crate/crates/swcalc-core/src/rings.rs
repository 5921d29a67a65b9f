//! Truncated graded-commutative F₂ monomial rings and manifold models.
//!
//! A ring is presented by generators `g` with a degree and a nilpotency
//! exponent (`g^e = 0`); every model the library evaluates on — real
//! projective spaces, their products, and the five-dimensional Wu example —
//! is of this shape, so no general ideal machinery is needed. The module
//! provides:
//!
//! - [`RingSpec`], [`RingElement`] — exact set-semantics arithmetic with
//!   automatic truncation by the nilpotency rules;
//! - [`ManifoldModel`] — a ring together with a dimension, a total
//!   characteristic class `w` with constant term 1, its inverse class
//!   `wbar`, and the unique fundamental (top) monomial;
//! - [`Assignment`] — a substitution `w_i ↦ RingElement` used to evaluate
//!   polynomials and Schur classes inside the ring; Schur classes are
//!   evaluated by their determinantal expansion computed in-ring (the
//!   determinant is a permutation expansion, valid with zero divisors),
//!   with a fast bit-matrix path when the ring has a single degree-one
//!   generator;
//! - [`RingElement::inverse`] — degreewise recursion for `1/e` when the
//!   constant term is 1;
//! - integration: reading off the coefficient of the fundamental monomial.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::partitions::Partition;
use crate::symfun::{bit_det, lucas_binom, Mod2Poly, SchurCombo};

/// One ring generator: `name` of the given `degree` with `g^nilpotency = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
    pub nilpotency: u32,
}

impl Generator {
    /// Builds a generator.
    ///
    /// # Panics
    ///
    /// Panics if the name is empty, the degree is 0, or the nilpotency is
    /// less than 2 (a generator with `g^1 = 0` would be the zero element).
    pub fn new(name: &str, degree: u32, nilpotency: u32) -> Self {
        assert!(!name.is_empty(), "generator name must be nonempty");
        assert!(degree >= 1, "generator degree must be at least 1");
        assert!(nilpotency >= 2, "nilpotency exponent must be at least 2");
        Generator {
            name: name.to_owned(),
            degree,
            nilpotency,
        }
    }
}

/// A truncated graded F₂ monomial ring: generators with nilpotency rules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingSpec {
    generators: Vec<Generator>,
}

impl RingSpec {
    /// Builds a ring presentation.
    ///
    /// # Panics
    ///
    /// Panics if generator names repeat.
    pub fn new(generators: Vec<Generator>) -> Self {
        let mut names = BTreeSet::new();
        for g in &generators {
            assert!(names.insert(g.name.clone()), "repeated generator name {}", g.name);
        }
        RingSpec { generators }
    }

    /// The generator list, in presentation order.
    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    /// Degree of a monomial given by its exponent vector.
    fn monomial_degree(&self, exps: &[u32]) -> u32 {
        exps.iter()
            .zip(&self.generators)
            .map(|(&e, g)| e * g.degree)
            .sum()
    }

    /// Whether a monomial survives the nilpotency rules.
    fn monomial_lives(&self, exps: &[u32]) -> bool {
        exps.iter()
            .zip(&self.generators)
            .all(|(&e, g)| e < g.nilpotency)
    }

    /// Exponents of the unique top-degree monomial.
    pub fn top_exponents(&self) -> Vec<u32> {
        self.generators.iter().map(|g| g.nilpotency - 1).collect()
    }

    /// Degree of the top monomial — the largest degree in which the ring is
    /// nonzero.
    pub fn top_degree(&self) -> u32 {
        self.monomial_degree(&self.top_exponents())
    }
}

/// An element of a [`RingSpec`] ring: the set of monomials (exponent
/// vectors aligned with the generator list) with coefficient 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingElement {
    spec: Arc<RingSpec>,
    terms: BTreeSet<Vec<u32>>,
}

impl RingElement {
    /// The zero element.
    pub fn zero(spec: &Arc<RingSpec>) -> Self {
        RingElement {
            spec: Arc::clone(spec),
            terms: BTreeSet::new(),
        }
    }

    /// The unit element.
    pub fn one(spec: &Arc<RingSpec>) -> Self {
        let exps = vec![0; spec.generators.len()];
        RingElement {
            spec: Arc::clone(spec),
            terms: std::iter::once(exps).collect(),
        }
    }

    /// The `index`-th generator as an element.
    pub fn generator(spec: &Arc<RingSpec>, index: usize) -> Self {
        let mut exps = vec![0; spec.generators.len()];
        exps[index] = 1;
        RingElement::monomial(spec, exps)
    }

    /// A single monomial (zero if the nilpotency rules kill it).
    ///
    /// # Panics
    ///
    /// Panics if the exponent vector length does not match the generator
    /// count.
    pub fn monomial(spec: &Arc<RingSpec>, exps: Vec<u32>) -> Self {
        assert_eq!(
            exps.len(),
            spec.generators.len(),
            "exponent vector must match generator count"
        );
        let mut e = RingElement::zero(spec);
        if spec.monomial_lives(&exps) {
            e.terms.insert(exps);
        }
        e
    }

    /// The ring this element belongs to.
    pub fn spec(&self) -> &Arc<RingSpec> {
        &self.spec
    }

    /// Whether the element is zero.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The coefficient of a monomial.
    pub fn coefficient(&self, exps: &[u32]) -> bool {
        self.terms.contains(exps)
    }

    /// The constant-term coefficient.
    pub fn constant_term(&self) -> bool {
        self.coefficient(&vec![0; self.spec.generators.len()])
    }

    /// Iterates over the monomials in storage order.
    pub fn monomials(&self) -> impl Iterator<Item = &Vec<u32>> + '_ {
        self.terms.iter()
    }

    fn assert_same_ring(&self, other: &RingElement) {
        assert_eq!(
            self.spec, other.spec,
            "elements belong to different rings"
        );
    }

    /// Sum over F₂.
    pub fn add(&self, other: &RingElement) -> RingElement {
        self.assert_same_ring(other);
        let mut result = self.clone();
        for m in &other.terms {
            if !result.terms.remove(m) {
                result.terms.insert(m.clone());
            }
        }
        result
    }

    /// Product, with monomials killed by nilpotency dropped.
    pub fn mul(&self, other: &RingElement) -> RingElement {
        self.assert_same_ring(other);
        let mut result = RingElement::zero(&self.spec);
        for a in &self.terms {
            for b in &other.terms {
                let exps: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                if self.spec.monomial_lives(&exps) {
                    if !result.terms.remove(&exps) {
                        result.terms.insert(exps);
                    }
                }
            }
        }
        result
    }

    /// `k`-th power by repeated multiplication.
    pub fn pow(&self, k: u32) -> RingElement {
        let mut result = RingElement::one(&self.spec);
        for _ in 0..k {
            result = result.mul(self);
        }
        result
    }

    /// The degree-`d` homogeneous part.
    pub fn degree_part(&self, d: u32) -> RingElement {
        RingElement {
            spec: Arc::clone(&self.spec),
            terms: self
                .terms
                .iter()
                .filter(|m| self.spec.monomial_degree(m) == d)
                .cloned()
                .collect(),
        }
    }

    /// Splits into `(degree, homogeneous part)` pairs, ascending in degree.
    pub fn degree_parts(&self) -> Vec<(u32, RingElement)> {
        let mut by_degree: BTreeMap<u32, RingElement> = BTreeMap::new();
        for m in &self.terms {
            let d = self.spec.monomial_degree(m);
            let entry = by_degree
                .entry(d)
                .or_insert_with(|| RingElement::zero(&self.spec));
            entry.terms.insert(m.clone());
        }
        by_degree.into_iter().collect()
    }

    /// Largest monomial degree, or `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms
            .iter()
            .map(|m| self.spec.monomial_degree(m))
            .max()
    }

    /// Whether all monomials share one degree (true for zero).
    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.iter().map(|m| self.spec.monomial_degree(m));
        match degrees.next() {
            None => true,
            Some(first) => degrees.all(|d| d == first),
        }
    }

    /// Multiplicative inverse by the degreewise recursion
    /// `v_0 = 1`, `v_d = Σ_{k=1..d} e_k·v_{d−k}` (signs vanish mod 2),
    /// exact in the truncated ring.
    ///
    /// Fails with [`Error::NotInvertible`] when the constant term is 0.
    pub fn inverse(&self) -> Result<RingElement> {
        if !self.constant_term() {
            return Err(Error::NotInvertible);
        }
        let top = self.spec.top_degree();
        let mut e_parts: Vec<RingElement> = Vec::with_capacity(top as usize + 1);
        for d in 0..=top {
            e_parts.push(self.degree_part(d));
        }
        let mut v_parts: Vec<RingElement> = vec![RingElement::one(&self.spec)];
        for d in 1..=top {
            let mut v_d = RingElement::zero(&self.spec);
            for k in 1..=d {
                let e_k = &e_parts[k as usize];
                if e_k.is_zero() {
                    continue;
                }
                v_d = v_d.add(&e_k.mul(&v_parts[(d - k) as usize]));
            }
            v_parts.push(v_d);
        }
        let mut result = RingElement::zero(&self.spec);
        for v in v_parts {
            result = result.add(&v);
        }
        Ok(result)
    }

    /// Monomials sorted by degree, then reverse-lexicographically on
    /// exponent vectors — the canonical rendering order (`x` before `y` in
    /// each degree).
    fn sorted_terms(&self) -> Vec<&Vec<u32>> {
        let mut terms: Vec<&Vec<u32>> = self.terms.iter().collect();
        terms.sort_by(|a, b| {
            self.spec
                .monomial_degree(a)
                .cmp(&self.spec.monomial_degree(b))
                .then_with(|| b.cmp(a))
        });
        terms
    }

    fn render_monomial(&self, exps: &[u32]) -> String {
        let mut parts = Vec::new();
        for (e, g) in exps.iter().zip(&self.spec.generators) {
            match e {
                0 => {}
                1 => parts.push(g.name.clone()),
                _ => parts.push(format!("{}^{}", g.name, e)),
            }
        }
        if parts.is_empty() {
            "1".to_owned()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Display for RingElement {
    /// Renders as `1+x+x^4+x^5`; zero renders as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, m) in self.sorted_terms().into_iter().enumerate() {
            if k > 0 {
                write!(f, "+")?;
            }
            write!(f, "{}", self.render_monomial(m))?;
        }
        Ok(())
    }
}

impl Serialize for RingElement {
    /// Serializes as a list of `{"monomial": …, "degree": …}` objects in
    /// canonical order.
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term {
            monomial: String,
            degree: u32,
        }
        let terms = self.sorted_terms();
        let mut seq = serializer.serialize_seq(Some(terms.len()))?;
        for m in terms {
            seq.serialize_element(&Term {
                monomial: self.render_monomial(m),
                degree: self.spec.monomial_degree(m),
            })?;
        }
        seq.end()
    }
}

/// A closed manifold model: a truncated ring presenting the cohomology, the
/// dimension, the total characteristic class `w` (constant term 1), its
/// inverse `wbar`, and the unique fundamental monomial in top degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifoldModel {
    name: String,
    spec: Arc<RingSpec>,
    dim: u32,
    w: RingElement,
    wbar: RingElement,
}

impl ManifoldModel {
    /// Builds a model from a ring, a dimension, and a total class.
    ///
    /// # Panics
    ///
    /// Panics if the ring's top degree differs from `dim` or if `w` does
    /// not have constant term 1.
    pub fn new(name: &str, spec: Arc<RingSpec>, dim: u32, w: RingElement) -> Self {
        assert_eq!(
            spec.top_degree(),
            dim,
            "ring top degree must equal the model dimension"
        );
        assert!(w.constant_term(), "total class must have constant term 1");
        let wbar = w.inverse().expect("unit total class");
        ManifoldModel {
            name: name.to_owned(),
            spec,
            dim,
            w,
            wbar,
        }
    }

    /// Real projective `n`-space with cohomology generator named `x`.
    ///
    /// # Panics
    ///
    /// Panics unless `1 ≤ n ≤ 1024`.
    pub fn rp(n: u32) -> Self {
        ManifoldModel::rp_named(n, "x")
    }

    /// Real projective `n`-space with a chosen generator name (used to keep
    /// names disjoint when forming products).
    ///
    /// # Panics
    ///
    /// Panics unless `1 ≤ n ≤ 1024`.
    pub fn rp_named(n: u32, generator: &str) -> Self {
        assert!((1..=1024).contains(&n), "projective dimension must be in 1..=1024");
        let spec = Arc::new(RingSpec::new(vec![Generator::new(generator, 1, n + 1)]));
        // w = (1+x)^{n+1} truncated: coefficient of x^k is C(n+1, k) mod 2.
        let mut w = RingElement::zero(&spec);
        for k in 0..=n {
            if lucas_binom((n + 1) as u64, k as u64) {
                w.terms.insert(vec![k]);
            }
        }
        ManifoldModel::new(&format!("RP{n}"), spec, n, w)
    }

    /// The five-dimensional example with cohomology `Λ[u, v]`,
    /// `deg u = 2`, `deg v = 3`, and total class `1 + u + v` (self-inverse
    /// in characteristic 2).
    pub fn wu_manifold() -> Self {
        let spec = Arc::new(RingSpec::new(vec![
            Generator::new("u", 2, 2),
            Generator::new("v", 3, 2),
        ]));
        let w = RingElement::one(&spec)
            .add(&RingElement::generator(&spec, 0))
            .add(&RingElement::generator(&spec, 1));
        ManifoldModel::new("Wu5", spec, 5, w)
    }

    /// Product model: tensor ring, summed dimension, multiplied total
    /// classes.
    ///
    /// # Panics
    ///
    /// Panics if the two factors share a generator name.
    pub fn product(&self, other: &ManifoldModel) -> ManifoldModel {
        let mut generators = self.spec.generators.clone();
        for g in &other.spec.generators {
            assert!(
                generators.iter().all(|h| h.name != g.name),
                "product factors must have disjoint generator names (clash on {})",
                g.name
            );
            generators.push(g.clone());
        }
        let spec = Arc::new(RingSpec::new(generators));
        let pad_left = self.spec.generators.len();
        let pad_right = other.spec.generators.len();
        let mut w = RingElement::zero(&spec);
        for a in &self.w.terms {
            for b in &other.w.terms {
                let mut exps = Vec::with_capacity(pad_left + pad_right);
                exps.extend_from_slice(a);
                exps.extend_from_slice(b);
                w.terms.insert(exps);
            }
        }
        ManifoldModel::new(
            &format!("{} x {}", self.name, other.name),
            spec,
            self.dim + other.dim,
            w,
        )
    }

    /// The model's display name.
    pub fn name(&self) -> &str {
        &self.name
    }

    /// The manifold dimension.
    pub fn dim(&self) -> u32 {
        self.dim
    }

    /// The underlying ring.
    pub fn spec(&self) -> &Arc<RingSpec> {
        &self.spec
    }

    /// The total class `w`.
    pub fn total_w(&self) -> &RingElement {
        &self.w
    }

    /// The inverse class `wbar = 1/w`.
    pub fn wbar(&self) -> &RingElement {
        &self.wbar
    }

    /// Coefficient of the fundamental (top) monomial.
    pub fn integrate(&self, e: &RingElement) -> bool {
        assert_eq!(*e.spec(), self.spec, "element belongs to a different ring");
        e.coefficient(&self.spec.top_exponents())
    }

    /// The substitution `w_i ↦` degree-`i` part of `wbar`.
    pub fn wbar_assignment(&self) -> Assignment {
        Assignment::from_total(&self.wbar)
    }

    /// The substitution `w_i ↦` degree-`i` part of `w`.
    pub fn w_assignment(&self) -> Assignment {
        Assignment::from_total(&self.w)
    }
}

impl fmt::Display for ManifoldModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

/// A substitution `w_i ↦ RingElement` for `1 ≤ i ≤ max_degree`; indices
/// beyond the stored range map to zero.
#[derive(Debug, Clone)]
pub struct Assignment {
    spec: Arc<RingSpec>,
    values: Vec<RingElement>,
}

impl Assignment {
    /// Builds the substitution sending `w_i` to the degree-`i` part of a
    /// total class, for every `i` up to the ring's top degree.
    pub fn from_total(total: &RingElement) -> Self {
        let spec = Arc::clone(total.spec());
        let top = spec.top_degree();
        let values = (1..=top).map(|d| total.degree_part(d)).collect();
        Assignment { spec, values }
    }

    /// Builds a substitution from explicit values (index `i` reads
    /// `values[i − 1]`).
    ///
    /// # Panics
    ///
    /// Panics if any value belongs to a different ring.
    pub fn new(spec: Arc<RingSpec>, values: Vec<RingElement>) -> Self {
        for v in &values {
            assert_eq!(**v.spec(), *spec, "assignment values must share one ring");
        }
        Assignment { spec, values }
    }

    /// The target ring.
    pub fn spec(&self) -> &Arc<RingSpec> {
        &self.spec
    }

    /// Largest index with a stored value; evaluation treats higher indices
    /// as zero.
    pub fn max_degree(&self) -> u32 {
        self.values.len() as u32
    }

    /// The value of `w_i` (zero beyond the stored range or for `i = 0`…
    /// index 0 is the unit and is handled by the callers).
    pub fn value(&self, i: u32) -> RingElement {
        if i == 0 {
            return RingElement::one(&self.spec);
        }
        self.values
            .get(i as usize - 1)
            .cloned()
            .unwrap_or_else(|| RingElement::zero(&self.spec))
    }

    /// Substitutes into a polynomial in the `w` variables.
    pub fn evaluate_poly(&self, p: &Mod2Poly) -> RingElement {
        let mut result = RingElement::zero(&self.spec);
        for m in p.terms() {
            let mut product = RingElement::one(&self.spec);
            for (i, e) in m.factors() {
                if product.is_zero() {
                    break;
                }
                product = product.mul(&self.value(i).pow(e));
            }
            result = result.add(&product);
        }
        result
    }

    /// When the ring has a single degree-one generator and every stored
    /// value is zero or the plain power `x^d`, returns the bit row
    /// `d ↦ coefficient` enabling the fast determinant path.
    fn single_variable_bits(&self) -> Option<Vec<bool>> {
        if self.spec.generators.len() != 1 || self.spec.generators[0].degree != 1 {
            return None;
        }
        let mut bits = vec![false; self.values.len() + 1];
        bits[0] = true;
        for (i, v) in self.values.iter().enumerate() {
            match v.terms.len() {
                0 => {}
                1 => {
                    let exps = v.terms.iter().next().unwrap();
                    if exps[0] != (i + 1) as u32 {
                        return None;
                    }
                    bits[i + 1] = true;
                }
                _ => return None,
            }
        }
        Some(bits)
    }

    /// Evaluates the Schur class `s_lambda` by its determinantal expansion
    /// computed inside the ring.
    ///
    /// With a single degree-one generator and plain-power values the
    /// determinant collapses to a bit matrix: every permutation term is the
    /// same monomial `x^{|λ|}`, so the value is `x^{|λ|}` times the F₂
    /// determinant of the 0/1 matrix recording which entries are nonzero.
    /// Otherwise the determinant is expanded over permutations (equal to
    /// the permanent over F₂) with minors memoised on the column set.
    pub fn evaluate_schur(&self, lambda: &Partition) -> RingElement {
        let n = lambda.len();
        if n == 0 {
            return RingElement::one(&self.spec);
        }
        assert!(n <= 64, "partition length at most 64 is supported");
        let index = |i: usize, j: usize| lambda.part(i) as i64 - i as i64 + j as i64;
        if let Some(bits) = self.single_variable_bits() {
            let mut rows: Vec<u64> = vec![0; n];
            for (i, row) in rows.iter_mut().enumerate() {
                for j in 0..n {
                    let d = index(i, j);
                    if d >= 0 && (d as usize) < bits.len() && bits[d as usize] {
                        *row |= 1 << j;
                    }
                }
            }
            if bit_det(&mut rows) {
                return RingElement::monomial(&self.spec, vec![lambda.weight()]);
            }
            return RingElement::zero(&self.spec);
        }
        let mut memo: HashMap<u64, RingElement> = HashMap::new();
        let full: u64 = if n == 64 { u64::MAX } else { (1 << n) - 1 };
        self.minor_value(lambda, &index, full, n, &mut memo)
    }

    /// The in-ring minor over the remaining rows and the column set `mask`,
    /// expanded along its first row.
    fn minor_value(
        &self,
        lambda: &Partition,
        index: &impl Fn(usize, usize) -> i64,
        mask: u64,
        n: usize,
        memo: &mut HashMap<u64, RingElement>,
    ) -> RingElement {
        if mask == 0 {
            return RingElement::one(&self.spec);
        }
        if let Some(hit) = memo.get(&mask) {
            return hit.clone();
        }
        let row = n - mask.count_ones() as usize;
        let mut acc = RingElement::zero(&self.spec);
        for j in 0..n {
            if mask & (1 << j) == 0 {
                continue;
            }
            let idx = index(row, j);
            if idx < 0 {
                continue;
            }
            let entry = self.value(idx as u32);
            if entry.is_zero() {
                continue;
            }
            let sub = self.minor_value(lambda, index, mask & !(1 << j), n, memo);
            acc = acc.add(&entry.mul(&sub));
        }
        memo.insert(mask, acc.clone());
        acc
    }

    /// Evaluates an F₂ combination of Schur classes.
    pub fn evaluate_combo(&self, combo: &SchurCombo) -> RingElement {
        let mut result = RingElement::zero(&self.spec);
        for lambda in combo.partitions() {
            result = result.add(&self.evaluate_schur(lambda));
        }
        result
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn rp_dual_class_pins() {
        assert_eq!(ManifoldModel::rp(10).wbar().to_string(), "1+x+x^4+x^5");
        assert_eq!(
            ManifoldModel::rp(20).wbar().to_string(),
            "1+x+x^2+x^3+x^8+x^9+x^10+x^11"
        );
        assert_eq!(
            ManifoldModel::rp(437).wbar().to_string(),
            "1+x^2+x^8+x^10+x^64+x^66+x^72+x^74"
        );
    }

    #[test]
    fn rp_dual_class_bit_test() {
        for n in [1u32, 2, 5, 31, 64, 437, 512] {
            let m = ManifoldModel::rp(n);
            let wbar = m.wbar();
            for k in 0..=n {
                assert_eq!(
                    wbar.coefficient(&[k]),
                    k & n == 0,
                    "bit test failed at n={n}, k={k}"
                );
            }
        }
    }

    #[test]
    fn rp_unit_invariant_spot() {
        for n in [1u32, 2, 7, 20, 64] {
            let m = ManifoldModel::rp(n);
            assert_eq!(
                m.total_w().mul(m.wbar()),
                RingElement::one(m.spec()),
                "w·wbar ≠ 1 on RP{n}"
            );
        }
    }

    #[test]
    fn product_dual_class_pin() {
        let m = ManifoldModel::rp(4).product(&ManifoldModel::rp_named(6, "y"));
        assert_eq!(m.dim(), 10);
        assert_eq!(
            m.wbar().to_string(),
            "1+x+y+x^2+x*y+x^3+x^2*y+x^3*y"
        );
        assert_eq!(
            m.total_w().mul(m.wbar()),
            RingElement::one(m.spec())
        );
    }

    #[test]
    fn product_of_circles_is_unit() {
        let m = ManifoldModel::rp(1).product(&ManifoldModel::rp_named(1, "y"));
        assert_eq!(*m.wbar(), RingElement::one(m.spec()));
        assert_eq!(*m.total_w(), RingElement::one(m.spec()));
    }

    #[test]
    fn product_associativity() {
        let a = || ManifoldModel::rp_named(2, "x");
        let b = || ManifoldModel::rp_named(3, "y");
        let c = || ManifoldModel::rp_named(4, "z");
        let left = a().product(&b()).product(&c());
        let right = a().product(&b().product(&c()));
        assert_eq!(left, right);
    }

    #[test]
    #[should_panic(expected = "disjoint generator names")]
    fn product_rejects_name_clash() {
        let _ = ManifoldModel::rp(4).product(&ManifoldModel::rp(6));
    }

    #[test]
    fn wu_manifold_shape() {
        let m = ManifoldModel::wu_manifold();
        assert_eq!(m.dim(), 5);
        assert_eq!(m.wbar().to_string(), "1+u+v");
        assert_eq!(m.total_w().to_string(), "1+u+v");
        assert_eq!(
            m.total_w().mul(m.wbar()),
            RingElement::one(m.spec())
        );
        let u = RingElement::generator(m.spec(), 0);
        let v = RingElement::generator(m.spec(), 1);
        assert!(m.integrate(&u.mul(&v)));
        assert!(u.mul(&u).is_zero());
        assert!(v.mul(&v).is_zero());
    }

    #[test]
    fn inverse_pins() {
        let m = ManifoldModel::rp(5);
        assert_eq!(m.total_w().to_string(), "1+x^2+x^4");
        assert_eq!(m.wbar().to_string(), "1+x^2");
        let one = RingElement::one(m.spec());
        assert_eq!(one.inverse().unwrap(), one);
        // Involution on a unit.
        let e = m.total_w();
        assert_eq!(e.inverse().unwrap().inverse().unwrap(), *e);
    }

    #[test]
    fn inverse_rejects_nonunit() {
        let m = ManifoldModel::rp(3);
        let x = RingElement::generator(m.spec(), 0);
        assert!(matches!(x.inverse(), Err(Error::NotInvertible)));
    }

    #[test]
    fn integrate_pins() {
        let m = ManifoldModel::rp(20);
        let x20 = RingElement::monomial(m.spec(), vec![20]);
        let x19 = RingElement::monomial(m.spec(), vec![19]);
        assert!(m.integrate(&x20));
        assert!(!m.integrate(&x19));
    }

    #[test]
    fn evaluate_morin_pins() {
        let m = ManifoldModel::rp(20);
        let a = m.wbar_assignment();
        assert_eq!(a.evaluate_schur(&p(&[11, 9])).to_string(), "x^20");
        assert_eq!(a.evaluate_schur(&p(&[8, 8])).to_string(), "x^16");
    }

    #[test]
    fn evaluate_wu_pins() {
        let m = ManifoldModel::wu_manifold();
        let a = m.wbar_assignment();
        assert!(a.evaluate_schur(&p(&[2, 2])).is_zero());
        let poly = Mod2Poly::from_monomials([
            crate::symfun::WMonomial::from_pairs(&[(2, 1), (3, 1)]),
            crate::symfun::WMonomial::from_pairs(&[(1, 1), (4, 1)]),
        ]);
        assert_eq!(a.evaluate_poly(&poly).to_string(), "u*v");
    }

    #[test]
    fn evaluate_routes_agree_spot() {
        use crate::symfun::schur_to_poly;
        let m = ManifoldModel::rp(12);
        let a = m.wbar_assignment();
        for parts in [&[3, 1][..], &[4, 4][..], &[5, 3, 2][..], &[2, 2, 2, 1][..]] {
            let lambda = p(parts);
            assert_eq!(
                a.evaluate_schur(&lambda),
                a.evaluate_poly(&schur_to_poly(&lambda)),
                "route mismatch at {lambda}"
            );
        }
        // Also on a ring where the general (memoised-minor) path runs.
        let w = ManifoldModel::rp(4).product(&ManifoldModel::rp_named(6, "y"));
        let aw = w.wbar_assignment();
        for parts in [&[2, 2][..], &[4, 4][..], &[3, 2, 1][..]] {
            let lambda = p(parts);
            assert_eq!(
                aw.evaluate_schur(&lambda),
                aw.evaluate_poly(&schur_to_poly(&lambda)),
                "product-ring route mismatch at {lambda}"
            );
        }
    }

    #[test]
    fn evaluate_respects_grading() {
        let m = ManifoldModel::rp(4).product(&ManifoldModel::rp_named(6, "y"));
        let a = m.wbar_assignment();
        for parts in [&[2, 1][..], &[3, 3][..], &[4, 2, 1][..]] {
            let lambda = p(parts);
            let value = a.evaluate_schur(&lambda);
            assert!(value.is_homogeneous());
            if !value.is_zero() {
                assert_eq!(value.degree(), Some(lambda.weight()));
            }
        }
    }

    #[test]
    fn ring_element_json_shape() {
        let m = ManifoldModel::rp(5);
        let json = serde_json::to_value(m.wbar()).unwrap();
        assert_eq!(
            json,
            serde_json::json!([
                {"monomial": "1", "degree": 0},
                {"monomial": "x^2", "degree": 2}
            ])
        );
    }

    #[test]
    fn element_rendering() {
        let m = ManifoldModel::wu_manifold();
        assert_eq!(RingElement::zero(m.spec()).to_string(), "0");
        assert_eq!(RingElement::one(m.spec()).to_string(), "1");
        let u = RingElement::generator(m.spec(), 0);
        let v = RingElement::generator(m.spec(), 1);
        assert_eq!(u.mul(&v).to_string(), "u*v");
    }
}
