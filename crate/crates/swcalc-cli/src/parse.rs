//! Parsers for the textual input forms: partitions, mod-2 polynomials,
//! and model descriptors.

use swcalc_core::partitions::Partition;
use swcalc_core::rings::ManifoldModel;
use swcalc_core::symfun::{Mod2Poly, WMonomial};

/// Parses a partition given as `[11,9]`, `(11,9)`, or `11,9`; the empty
/// partition is `[]`, `()`, or an empty string.
pub fn partition(input: &str) -> Result<Partition, String> {
    let inner = input
        .trim()
        .trim_start_matches(['[', '('])
        .trim_end_matches([']', ')'])
        .trim();
    if inner.is_empty() {
        return Ok(Partition::empty());
    }
    let mut parts = Vec::new();
    for token in inner.split(',') {
        let part: u32 = token
            .trim()
            .parse()
            .map_err(|_| format!("invalid partition part {:?}", token.trim()))?;
        if part == 0 {
            return Err("partition parts must be positive".to_owned());
        }
        parts.push(part);
    }
    if parts.windows(2).any(|w| w[0] < w[1]) {
        return Err(format!(
            "partition parts must be weakly decreasing, got {parts:?}"
        ));
    }
    Ok(Partition::new(parts))
}

/// Parses a mod-2 polynomial in the `w` variables: terms joined by `+`,
/// factors joined by `*`, each factor `wN` or `wN^E`. `0` and `1` denote
/// the constants.
pub fn poly(input: &str) -> Result<Mod2Poly, String> {
    let trimmed = input.trim();
    if trimmed.is_empty() {
        return Err("empty polynomial".to_owned());
    }
    let mut result = Mod2Poly::zero();
    for term in trimmed.split('+') {
        let term = term.trim();
        if term == "0" {
            continue;
        }
        if term == "1" {
            result = result.add(&Mod2Poly::one());
            continue;
        }
        let mut monomial = WMonomial::one();
        for factor in term.split('*') {
            let factor = factor.trim();
            let rest = factor
                .strip_prefix('w')
                .ok_or_else(|| format!("factor {factor:?} must start with 'w'"))?;
            let (index_str, exp) = match rest.split_once('^') {
                Some((i, e)) => (
                    i,
                    e.parse::<u32>()
                        .map_err(|_| format!("invalid exponent in {factor:?}"))?,
                ),
                None => (rest, 1),
            };
            let index: u32 = index_str
                .parse()
                .map_err(|_| format!("invalid variable in {factor:?}"))?;
            if index == 0 {
                return Err("variable indices start at w1".to_owned());
            }
            if exp == 0 {
                return Err(format!("exponent 0 in {factor:?} (drop the factor instead)"));
            }
            monomial = monomial.mul(&WMonomial::from_pairs(&[(index, exp)]));
        }
        result = result.add(&Mod2Poly::from_monomials([monomial]));
    }
    Ok(result)
}

/// Generator-name pool for projective factors; `u` and `v` are reserved
/// for the degree-5 Wu model so mixed products stay collision-free.
const NAMES: [&str; 10] = ["x", "y", "z", "a", "b", "c", "d", "e", "f", "g"];

/// Parses a model descriptor: a comma-separated product of `rp:N` factors
/// and at most one `wu`.
pub fn space(input: &str) -> Result<ManifoldModel, String> {
    let mut model: Option<ManifoldModel> = None;
    let mut next_name = 0usize;
    let mut wu_used = false;
    for factor in input.split(',') {
        let factor = factor.trim();
        let piece = if factor == "wu" {
            if wu_used {
                return Err("wu can appear at most once in a product".to_owned());
            }
            wu_used = true;
            ManifoldModel::wu_manifold()
        } else if let Some(dim_str) = factor.strip_prefix("rp:") {
            let n: u32 = dim_str
                .parse()
                .map_err(|_| format!("invalid dimension in {factor:?}"))?;
            if n == 0 {
                return Err("projective factors need dimension at least 1".to_owned());
            }
            if n > 512 {
                return Err("projective dimensions above 512 are not supported".to_owned());
            }
            let name = NAMES
                .get(next_name)
                .ok_or_else(|| format!("at most {} projective factors", NAMES.len()))?;
            next_name += 1;
            ManifoldModel::rp_named(n, name)
        } else {
            return Err(format!(
                "unknown space {factor:?} (expected rp:N or wu)"
            ));
        };
        model = Some(match model {
            None => piece,
            Some(m) => m.product(&piece),
        });
    }
    model.ok_or_else(|| "empty space descriptor".to_owned())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partitions_parse_in_all_three_forms() {
        let p = Partition::new(vec![11, 9]);
        assert_eq!(partition("[11,9]").unwrap(), p);
        assert_eq!(partition("(11, 9)").unwrap(), p);
        assert_eq!(partition("11,9").unwrap(), p);
        assert_eq!(partition("[]").unwrap(), Partition::empty());
        assert!(partition("[9,11]").is_err());
        assert!(partition("[0]").is_err());
    }

    #[test]
    fn polynomials_parse_and_render_back() {
        let p = poly("w2^2+w1*w3").unwrap();
        assert_eq!(p.to_string(), "w1*w3+w2^2");
        assert!(poly("x2").is_err());
        assert!(poly("w0").is_err());
        assert_eq!(poly("0").unwrap(), Mod2Poly::zero());
        assert_eq!(poly("1").unwrap(), Mod2Poly::one());
    }

    #[test]
    fn spaces_parse_with_disjoint_names() {
        assert_eq!(space("rp:20").unwrap().dim(), 20);
        let prod = space("rp:4,rp:6").unwrap();
        assert_eq!(prod.dim(), 10);
        let mixed = space("rp:3,wu").unwrap();
        assert_eq!(mixed.dim(), 8);
        assert!(space("wu,wu").is_err());
        assert!(space("rp:0").is_err());
        assert!(space("torus").is_err());
    }
}
