//! Degeneracy-locus Schur series: the determinantal series `Φˢ(l)`, its
//! first-column closed form, the `l = −1` duality, and the open/closed
//! locus series built from them.
//!
//! `Φˢ(l)` is a sum over pairs of partitions `(μ, ν)` of length at most
//! `s`: the binomial determinant `D_{μ,ν}^{s,s+l}` (reduced mod 2) times
//! the Schur class of the partition made of the rectangle-padded rows
//! `(s+l) + μ_i` followed by the transpose of `ν`. Signs in the source
//! formula vanish mod 2. The locus series for the corank-`r` stratum sum
//! `Φˢ` over `s ≥ r` with binomial coefficients — `C(s, r)` for the open
//! stratum, `C(s−1, r−1)` for its closure — and terminate on their own
//! because the rectangle weight `s(s+l)` eventually exceeds the truncation
//! degree.
//!
//! Everything is graded: [`GradedSchurSeries`] stores one
//! [`SchurCombo`] per degree under an inclusive truncation bound.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::partitions::{enumerate, prepend_rectangle, Partition};
use crate::rings::{Assignment, RingElement};
use crate::symfun::{binom_det, lucas_binom, DetMode, DetValue, Mod2Poly, SchurCombo};

/// A Schur-class series graded by degree and truncated (inclusively) at
/// `max_degree`. Only nonzero degrees are stored; every partition under
/// degree `d` has weight exactly `d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedSchurSeries {
    by_degree: BTreeMap<u32, SchurCombo>,
    max_degree: u32,
}

impl GradedSchurSeries {
    /// The zero series with the given truncation bound.
    pub fn zero(max_degree: u32) -> Self {
        GradedSchurSeries {
            by_degree: BTreeMap::new(),
            max_degree,
        }
    }

    /// The truncation bound (inclusive).
    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    /// Adds one Schur class with F₂ cancellation; classes beyond the
    /// truncation bound are dropped.
    pub fn toggle(&mut self, lambda: Partition) {
        let d = lambda.weight();
        if d > self.max_degree {
            return;
        }
        let combo = self
            .by_degree
            .entry(d)
            .or_insert_with(SchurCombo::zero);
        combo.toggle(lambda);
        if combo.is_zero() {
            self.by_degree.remove(&d);
        }
    }

    /// Degreewise sum over F₂.
    ///
    /// # Panics
    ///
    /// Panics if the truncation bounds differ.
    pub fn add(&self, other: &GradedSchurSeries) -> GradedSchurSeries {
        assert_eq!(
            self.max_degree, other.max_degree,
            "series sums need matching truncation bounds"
        );
        let mut result = self.clone();
        for combo in other.by_degree.values() {
            for lambda in combo.partitions() {
                result.toggle(lambda.clone());
            }
        }
        result
    }

    /// The degree-`d` combination (zero if absent).
    pub fn degree_part(&self, d: u32) -> SchurCombo {
        self.by_degree.get(&d).cloned().unwrap_or_default()
    }

    /// `(degree, combination)` pairs for the nonzero degrees, ascending.
    pub fn parts(&self) -> impl Iterator<Item = (u32, &SchurCombo)> + '_ {
        self.by_degree.iter().map(|(&d, c)| (d, c))
    }

    /// The lowest nonzero degree and its combination.
    pub fn lowest(&self) -> Option<(u32, &SchurCombo)> {
        self.by_degree.iter().next().map(|(&d, c)| (d, c))
    }

    /// Whether the series is zero.
    pub fn is_zero(&self) -> bool {
        self.by_degree.is_empty()
    }

    /// All stored classes as one combination.
    pub fn total_combo(&self) -> SchurCombo {
        let mut combo = SchurCombo::zero();
        for c in self.by_degree.values() {
            combo = combo.add(c);
        }
        combo
    }

    /// Expansion of the whole series into the monomial basis.
    pub fn to_poly(&self) -> Mod2Poly {
        self.total_combo().to_poly()
    }

    /// Transposes every partition (degrees are preserved).
    pub fn transpose(&self) -> GradedSchurSeries {
        let mut result = GradedSchurSeries::zero(self.max_degree);
        for combo in self.by_degree.values() {
            for lambda in combo.partitions() {
                result.toggle(lambda.transpose());
            }
        }
        result
    }

    /// Evaluates the series in a ring: the sum of the in-ring values of all
    /// stored classes, skipping degrees above the ring's top degree.
    pub fn evaluate(&self, assignment: &Assignment) -> RingElement {
        let top = assignment.spec().top_degree();
        let mut result = RingElement::zero(assignment.spec());
        for (d, combo) in self.parts() {
            if d > top {
                break;
            }
            result = result.add(&assignment.evaluate_combo(combo));
        }
        result
    }
}

impl fmt::Display for GradedSchurSeries {
    /// One line per nonzero degree: `deg 4: s[2,2]`; `0` when empty.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.by_degree.is_empty() {
            return write!(f, "0");
        }
        for (k, (d, combo)) in self.parts().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "deg {d}: {combo}")?;
        }
        Ok(())
    }
}

/// The determinantal series `Φˢ(l)` truncated at `max_degree`: the sum
/// over partition pairs `(μ, ν)` of length at most `s` with
/// `s(s+l) + |μ| + |ν| ≤ max_degree` of the mod-2 binomial determinant
/// times the Schur class of `((s+l)+μ | νᵀ)`.
///
/// # Panics
///
/// Panics when `s = 0` (the level `l = −1` is reached through
/// [`phi_dual`], so `l` here is unsigned).
pub fn phi(s: u32, l: u32, max_degree: u32) -> GradedSchurSeries {
    assert!(s >= 1, "the series index s must be at least 1");
    let mut series = GradedSchurSeries::zero(max_degree);
    let rect_weight = s * (s + l);
    if rect_weight > max_degree {
        return series;
    }
    let budget = max_degree - rect_weight;
    // Every partition of bounded weight and length, empty included.
    let bounded = |weight: u32| enumerate(weight, &Partition::empty(), Some(s as usize));
    for mu in bounded(budget) {
        let nu_budget = budget - mu.weight();
        for nu in bounded(nu_budget) {
            let parity = binom_det(&mu, &nu, s, s + l, DetMode::Mod2);
            if let DetValue::Mod2(true) = parity {
                series.toggle(prepend_rectangle(s, l, &mu, &nu));
            }
        }
    }
    series
}

/// Closed form of the first series: `Φ¹(l) = Σ_i Σ_{j ≤ i}
/// C(l+i, j)·s_{(l+1+j, 1^{i−j})}` with binomials mod 2, truncated at
/// `max_degree`.
pub fn phi1_closed(l: u32, max_degree: u32) -> GradedSchurSeries {
    let mut series = GradedSchurSeries::zero(max_degree);
    if l + 1 > max_degree {
        return series;
    }
    for i in 0..=(max_degree - l - 1) {
        for j in 0..=i {
            if lucas_binom((l + i) as u64, j as u64) {
                let mut parts = vec![l + 1 + j];
                parts.extend(std::iter::repeat(1).take((i - j) as usize));
                series.toggle(Partition::new(parts));
            }
        }
    }
    series
}

/// The level `−1` series by duality: `Φⁱ(−1)` is `Φ^{i−1}(1)` with every
/// partition transposed.
///
/// # Panics
///
/// Panics when `i < 2` (the duality needs the index to drop to at
/// least 1).
pub fn phi_dual(i: u32, max_degree: u32) -> GradedSchurSeries {
    assert!(i >= 2, "the duality route needs series index at least 2");
    phi(i - 1, 1, max_degree).transpose()
}

/// The locus series of the corank-`r` stratum at level `l`: the sum of
/// `C(s−1, r−1)·Φˢ(l)` over `s ≥ r` for the stratum closure
/// (`closed = true`) or `C(s, r)·Φˢ(l)` for the open stratum, binomials
/// mod 2, truncated at `max_degree`. The sum terminates once
/// `s(s+l) > max_degree`.
///
/// Level `−1` runs through the duality route and therefore needs `r ≥ 2`.
///
/// # Panics
///
/// Panics when `r = 0`, when `l < −1`, or when `l = −1` with `r < 2`.
pub fn ssw_sigma(r: u32, l: i64, max_degree: u32, closed: bool) -> GradedSchurSeries {
    assert!(r >= 1, "corank must be at least 1");
    assert!(l >= -1, "levels below -1 are not defined");
    assert!(
        l >= 0 || r >= 2,
        "level -1 is reached by duality and needs corank at least 2"
    );
    let mut series = GradedSchurSeries::zero(max_degree);
    let mut s = r;
    loop {
        let rect_weight = (i64::from(s) * (i64::from(s) + l)) as i64;
        if rect_weight > i64::from(max_degree) {
            break;
        }
        let coefficient = if closed {
            lucas_binom(u64::from(s) - 1, u64::from(r) - 1)
        } else {
            lucas_binom(u64::from(s), u64::from(r))
        };
        if coefficient {
            let term = if l >= 0 {
                phi(s, l as u32, max_degree)
            } else {
                phi_dual(s, max_degree)
            };
            series = series.add(&term);
        }
        s += 1;
    }
    series
}
