//! Integer partitions and constrained enumeration.
//!
//! A [`Partition`] is a weakly decreasing list of positive integers. Its
//! *weight* is the sum of its parts and doubles as a cohomological degree
//! throughout this crate. This module provides:
//!
//! - transposition (conjugation) of Young diagrams,
//! - diagram containment,
//! - enumeration of all partitions containing a fixed partition, bounded in
//!   weight and optionally in length,
//! - assembling a partition from a rectangle, a padding partition and a
//!   transposed tail (the index shape of the determinantal series in
//!   [`crate::segre`]).

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A weakly decreasing sequence of positive integers.
///
/// The empty partition is valid and has weight 0. Partitions are ordered by
/// weight first and lexicographically on parts within equal weight, so that
/// sorted collections of partitions are graded by degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Creates a partition from its parts.
    ///
    /// # Panics
    ///
    /// Panics if any part is zero or the parts are not weakly decreasing.
    pub fn new(parts: Vec<u32>) -> Self {
        for window in parts.windows(2) {
            assert!(
                window[0] >= window[1],
                "partition parts must be weakly decreasing, got {parts:?}"
            );
        }
        if let Some(&last) = parts.last() {
            assert!(last > 0, "partition parts must be positive, got {parts:?}");
        }
        Partition { parts }
    }

    /// The empty partition of weight 0.
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Builds the rectangle `width^height` (i.e. `height` copies of `width`).
    ///
    /// `rectangle(0, h)` and `rectangle(w, 0)` are the empty partition.
    pub fn rectangle(width: u32, height: u32) -> Self {
        if width == 0 {
            return Partition::empty();
        }
        Partition {
            parts: vec![width; height as usize],
        }
    }

    /// The parts of the partition, weakly decreasing.
    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of (positive) parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    /// Whether this is the empty partition.
    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Sum of the parts.
    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// The `i`-th part (0-indexed), reading missing parts as 0.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// The transposed (conjugate) partition: rows and columns of the Young
    /// diagram are exchanged.
    ///
    /// Transposition is an involution: `p.transpose().transpose() == p`.
    pub fn transpose(&self) -> Partition {
        let mut parts = Vec::new();
        if let Some(&first) = self.parts.first() {
            parts.reserve(first as usize);
            for col in 1..=first {
                // Number of rows with at least `col` boxes.
                let count = self.parts.iter().take_while(|&&p| p >= col).count();
                parts.push(count as u32);
            }
        }
        Partition { parts }
    }

    /// Diagram containment: does `self` contain `other` (that is, does every
    /// part of `other` fit under the corresponding part of `self`)?
    ///
    /// Missing parts read as 0, so a longer `other` with trailing extra parts
    /// is never contained.
    pub fn contains(&self, other: &Partition) -> bool {
        (0..other.parts.len()).all(|i| other.part(i) <= self.part(i))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Partition {
    /// Graded order: compare weights first, then parts lexicographically.
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| self.parts.cmp(&other.parts))
    }
}

impl fmt::Display for Partition {
    /// Renders as `(3,1)`; the empty partition renders as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for Partition {
    type Err = String;

    /// Parses `(3,1)`, `[3,1]`, `3,1`, `()` or `[]`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s
            .trim()
            .trim_start_matches(['(', '['])
            .trim_end_matches([')', ']'])
            .trim();
        let mut parts = Vec::new();
        if !inner.is_empty() {
            for token in inner.split(',') {
                let part: u32 = token
                    .trim()
                    .parse()
                    .map_err(|e| format!("invalid partition part {token:?}: {e}"))?;
                if part == 0 {
                    return Err("partition parts must be positive".to_string());
                }
                parts.push(part);
            }
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(format!("parts must be weakly decreasing, got {parts:?}"));
        }
        Ok(Partition { parts })
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.parts.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let parts = Vec::<u32>::deserialize(deserializer)?;
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.last().is_some_and(|&p| p == 0) {
            return Err(D::Error::custom(format!(
                "not a valid partition: {parts:?}"
            )));
        }
        Ok(Partition { parts })
    }
}

/// Enumerates every partition that contains `rectangle`, with weight at most
/// `max_weight` and, if given, at most `max_length` parts.
///
/// The result is sorted by weight ascending and, within equal weight,
/// lexicographically descending on the parts — e.g. for weight 5 above the
/// rectangle `(2,2)` the order is `(3,2)` before `(2,2,1)`.
///
/// Returns an empty list when the rectangle itself outweighs `max_weight`.
pub fn enumerate(
    max_weight: u32,
    rectangle: &Partition,
    max_length: Option<usize>,
) -> Vec<Partition> {
    let mut out = Vec::new();
    if rectangle.weight() > max_weight {
        return out;
    }
    if let Some(limit) = max_length {
        if rectangle.len() > limit {
            return out;
        }
    }
    let mut current: Vec<u32> = Vec::new();
    dfs(
        max_weight,
        rectangle,
        max_length.unwrap_or(max_weight as usize),
        &mut current,
        &mut out,
    );
    out.sort_by(|a, b| {
        a.weight()
            .cmp(&b.weight())
            .then_with(|| b.parts.cmp(&a.parts))
    });
    out
}

/// Depth-first extension of `current` by one more part.
///
/// Every prefix that already contains the rectangle is emitted; parts are
/// bounded above by the previous part and the remaining weight budget, and
/// below by the rectangle constraint for their position.
fn dfs(
    max_weight: u32,
    rectangle: &Partition,
    max_length: usize,
    current: &mut Vec<u32>,
    out: &mut Vec<Partition>,
) {
    let used: u32 = current.iter().sum();
    let pos = current.len();
    // Weight still required by the rectangle below this position.
    let rect_tail: u32 = rectangle.parts()[pos.min(rectangle.len())..].iter().sum();
    if pos >= rectangle.len() {
        out.push(Partition {
            parts: current.clone(),
        });
    }
    if pos == max_length {
        return;
    }
    let upper = std::cmp::min(
        current.last().copied().unwrap_or(max_weight),
        max_weight - used,
    );
    let lower = std::cmp::max(rectangle.part(pos), 1);
    let rect_below: u32 = rect_tail.saturating_sub(rectangle.part(pos));
    for part in lower..=upper {
        if used + part + rect_below > max_weight {
            break;
        }
        current.push(part);
        dfs(max_weight, rectangle, max_length, current, out);
        current.pop();
    }
}

/// Assembles the partition whose first `s` parts are `(s + l) + mu_i`
/// (reading missing parts of `mu` as 0) followed by the transpose of `nu`.
///
/// This is the index shape of the determinantal series: a `s × (s+l)`
/// rectangle padded by `mu` on its rows with the transpose of `nu` appended
/// below. The result has weight `s(s+l) + |mu| + |nu|`.
///
/// # Panics
///
/// Panics if `mu` or `nu` has more than `s` parts, or if the assembled
/// sequence fails to be weakly decreasing (impossible for valid inputs, but
/// asserted for safety).
pub fn prepend_rectangle(s: u32, l: u32, mu: &Partition, nu: &Partition) -> Partition {
    assert!(
        mu.len() <= s as usize,
        "mu must have at most s = {s} parts, got {mu}"
    );
    assert!(
        nu.len() <= s as usize,
        "nu must have at most s = {s} parts, got {nu}"
    );
    let mut parts = Vec::with_capacity(s as usize + nu.part(0) as usize);
    for i in 0..s as usize {
        parts.push(s + l + mu.part(i));
    }
    parts.extend_from_slice(nu.transpose().parts());
    while parts.last() == Some(&0) {
        parts.pop();
    }
    assert!(
        parts.windows(2).all(|w| w[0] >= w[1]),
        "assembled parts are not weakly decreasing: {parts:?}"
    );
    let result = Partition { parts };
    debug_assert_eq!(result.weight(), s * (s + l) + mu.weight() + nu.weight());
    result
}

/// All partitions of weight exactly `d`, in the order of [`enumerate`].
pub fn partitions_of_weight(d: u32) -> Vec<Partition> {
    enumerate(d, &Partition::empty(), None)
        .into_iter()
        .filter(|p| p.weight() == d)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn transpose_examples() {
        assert_eq!(p(&[3, 1]).transpose(), p(&[2, 1, 1]));
        assert_eq!(Partition::empty().transpose(), Partition::empty());
        assert_eq!(p(&[2, 2]).transpose(), p(&[2, 2]));
    }

    #[test]
    fn transpose_is_involution() {
        for parts in [&[5, 3, 3, 1][..], &[7][..], &[1, 1, 1][..], &[4, 2][..]] {
            let q = p(parts);
            assert_eq!(q.transpose().transpose(), q);
        }
    }

    #[test]
    fn contains_examples() {
        assert!(p(&[11, 9]).contains(&p(&[9, 9])));
        assert!(!p(&[9, 9]).contains(&p(&[11, 9])));
        // Missing parts read as zero.
        assert!(p(&[2, 2]).contains(&p(&[2])));
        assert!(!p(&[2]).contains(&p(&[2, 1])));
        assert!(p(&[3, 1]).contains(&Partition::empty()));
    }

    #[test]
    fn containment_dual_law() {
        // contains(a, b) if and only if contains(transpose(a), transpose(b)).
        let samples = [
            (p(&[3, 2, 1]), p(&[2, 2])),
            (p(&[4, 1]), p(&[3, 2])),
            (p(&[11, 9]), p(&[9, 9])),
            (p(&[5, 5, 2]), p(&[5, 4])),
        ];
        for (a, b) in samples {
            assert_eq!(
                a.contains(&b),
                a.transpose().contains(&b.transpose()),
                "dual containment failed on {a}, {b}"
            );
        }
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(p(&[3, 1]).to_string(), "(3,1)");
        assert_eq!(Partition::empty().to_string(), "()");
        assert_eq!("(3,1)".parse::<Partition>().unwrap(), p(&[3, 1]));
        assert_eq!("[11,9]".parse::<Partition>().unwrap(), p(&[11, 9]));
        assert_eq!("()".parse::<Partition>().unwrap(), Partition::empty());
        assert!("(1,2)".parse::<Partition>().is_err());
        assert!("(0)".parse::<Partition>().is_err());
    }

    #[test]
    fn json_round_trip() {
        let q = p(&[4, 2, 1]);
        let s = serde_json::to_string(&q).unwrap();
        assert_eq!(s, "[4,2,1]");
        let back: Partition = serde_json::from_str(&s).unwrap();
        assert_eq!(back, q);
        assert!(serde_json::from_str::<Partition>("[1,2]").is_err());
    }

    #[test]
    #[should_panic(expected = "weakly decreasing")]
    fn constructor_rejects_increasing() {
        Partition::new(vec![1, 2]);
    }

    #[test]
    #[should_panic(expected = "positive")]
    fn constructor_rejects_zero() {
        Partition::new(vec![2, 0]);
    }

    #[test]
    fn enumerate_small_rectangle() {
        assert_eq!(enumerate(3, &p(&[2, 2]), None), Vec::<Partition>::new());
        assert_eq!(
            enumerate(5, &p(&[2, 2]), None),
            vec![p(&[2, 2]), p(&[3, 2]), p(&[2, 2, 1])]
        );
    }

    #[test]
    fn enumerate_weight_twenty() {
        // All partitions containing (9,9) of weight at most 20, ordered by
        // weight then lexicographically descending.
        let got = enumerate(20, &p(&[9, 9]), None);
        let want = vec![
            p(&[9, 9]),
            p(&[10, 9]),
            p(&[9, 9, 1]),
            p(&[11, 9]),
            p(&[10, 10]),
            p(&[10, 9, 1]),
            p(&[9, 9, 2]),
            p(&[9, 9, 1, 1]),
        ];
        assert_eq!(got, want);
    }

    #[test]
    fn enumerate_respects_max_length() {
        let got = enumerate(5, &p(&[2, 2]), Some(2));
        assert_eq!(got, vec![p(&[2, 2]), p(&[3, 2])]);
        assert!(enumerate(10, &p(&[2, 2, 1]), Some(2)).is_empty());
    }

    #[test]
    fn enumerate_all_partitions_counts() {
        // Partition counts p(0)..p(8) = 1,1,2,3,5,7,11,15,22.
        let expected = [1usize, 1, 2, 3, 5, 7, 11, 15, 22];
        for (d, &count) in expected.iter().enumerate() {
            assert_eq!(partitions_of_weight(d as u32).len(), count, "p({d})");
        }
    }

    #[test]
    fn enumerate_order_is_strictly_sorted_and_contains_rectangle() {
        let rect = p(&[3, 3, 3]);
        let list = enumerate(14, &rect, None);
        assert!(!list.is_empty());
        for lambda in &list {
            assert!(lambda.contains(&rect));
            assert!(lambda.weight() <= 14);
        }
        for pair in list.windows(2) {
            let key = |q: &Partition| (q.weight(), std::cmp::Reverse(q.parts().to_vec()));
            assert!(key(&pair[0]) < key(&pair[1]), "not strictly sorted");
        }
    }

    #[test]
    fn prepend_rectangle_examples() {
        assert_eq!(
            prepend_rectangle(2, 7, &p(&[2]), &Partition::empty()),
            p(&[11, 9])
        );
        assert_eq!(
            prepend_rectangle(2, 7, &Partition::empty(), &p(&[2])),
            p(&[9, 9, 1, 1])
        );
        assert_eq!(
            prepend_rectangle(2, 0, &Partition::empty(), &Partition::empty()),
            p(&[2, 2])
        );
    }

    #[test]
    fn prepend_rectangle_weight() {
        let mu = p(&[3, 1]);
        let nu = p(&[2, 2]);
        let r = prepend_rectangle(3, 2, &mu, &nu);
        assert_eq!(r.weight(), 3 * 5 + mu.weight() + nu.weight());
    }

    #[test]
    fn part_reads_zero_out_of_range() {
        let q = p(&[4, 2]);
        assert_eq!(q.part(0), 4);
        assert_eq!(q.part(1), 2);
        assert_eq!(q.part(2), 0);
        assert_eq!(q.part(99), 0);
    }
}
