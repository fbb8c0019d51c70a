//! Built-in example algebras and the spec-string grammar for combining
//! them: `trunc-poly:r`, `rad-square-zero:n`, `gf3-triple`, `k`, and the
//! combinators `product(A,B)` and `coproduct(A,B,cutoff)`.

use std::sync::Arc;

use crate::algebra::{Algebra, ArcAlgebra};
use crate::constructions::{coproduct, product};
use crate::error::Error;
use crate::field::FieldSpec;

/// Names and descriptions of the built-in registry entries.
pub fn catalog() -> Vec<(&'static str, &'static str)> {
    vec![
        ("k", "the ground field"),
        ("trunc-poly:r", "k[x]/x^r with the augmentation killing x"),
        ("rad-square-zero:n", "k<x_1..x_n>/(all degree-2 words)"),
        ("gf3-triple", "k[a]/a^3 * k[b]/b^2 * k[c]/c^2 (endomorphism algebra of a permutation module in characteristic 3)"),
        ("product(A,B)", "the pullback over the augmentations"),
        ("coproduct(A,B,cutoff)", "the free product, truncated at total letter degree `cutoff`"),
    ]
}

/// Build a registry algebra over the given field. Every entry is validated
/// against the algebra axioms.
pub fn build(spec: &str, field: FieldSpec) -> Result<ArcAlgebra, Error> {
    let a = parse(spec.trim(), field)?;
    let axioms = a.check_axioms();
    if !axioms.pass {
        return Err(Error::AxiomFailure(format!("registry entry {spec:?}")));
    }
    Ok(a)
}

fn parse(spec: &str, field: FieldSpec) -> Result<ArcAlgebra, Error> {
    if spec == "k" {
        return Ok(Arc::new(Algebra::ground_field(field)));
    }
    if let Some(rest) = spec.strip_prefix("trunc-poly:") {
        let r: usize = rest
            .parse()
            .map_err(|_| Error::Parse(format!("bad truncation exponent {rest:?}")))?;
        if r == 0 {
            return Err(Error::Parse("trunc-poly exponent must be positive".into()));
        }
        return Ok(Arc::new(Algebra::truncated_polynomial(field, r)));
    }
    if let Some(rest) = spec.strip_prefix("rad-square-zero:") {
        let n: usize =
            rest.parse().map_err(|_| Error::Parse(format!("bad variable count {rest:?}")))?;
        return Ok(Arc::new(Algebra::radical_square_zero(field, n)));
    }
    if spec == "gf3-triple" {
        let a = Arc::new(Algebra::truncated_polynomial(field, 3));
        let b = Arc::new(Algebra::truncated_polynomial(field, 2));
        let c = Arc::new(Algebra::truncated_polynomial(field, 2));
        let ab = product(&a, &b)?.algebra;
        return Ok(product(&ab, &c)?.algebra);
    }
    if let Some(args) = strip_call(spec, "product") {
        let parts = split_top_level(args)?;
        if parts.len() != 2 {
            return Err(Error::Parse("product takes two arguments".into()));
        }
        let a = parse(parts[0], field)?;
        let b = parse(parts[1], field)?;
        return Ok(product(&a, &b)?.algebra);
    }
    if let Some(args) = strip_call(spec, "coproduct") {
        let parts = split_top_level(args)?;
        if parts.len() != 3 {
            return Err(Error::Parse("coproduct takes two algebras and a cutoff".into()));
        }
        let a = parse(parts[0], field)?;
        let b = parse(parts[1], field)?;
        let cutoff: usize = parts[2]
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad cutoff {:?}", parts[2])))?;
        return Ok(coproduct(&a, &b, cutoff)?.algebra);
    }
    Err(Error::Parse(format!("unknown registry spec {spec:?}")))
}

fn strip_call<'a>(spec: &'a str, name: &str) -> Option<&'a str> {
    let rest = spec.strip_prefix(name)?;
    let rest = rest.strip_prefix('(')?;
    rest.strip_suffix(')')
}

fn split_top_level(args: &str) -> Result<Vec<&str>, Error> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, ch) in args.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth = depth.checked_sub(1).ok_or_else(|| Error::Parse("unbalanced )".into()))?
            }
            ',' if depth == 0 => {
                parts.push(args[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Error::Parse("unbalanced (".into()));
    }
    parts.push(args[start..].trim());
    Ok(parts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    #[test]
    fn registry_entries_pass_axioms() {
        for spec in ["k", "trunc-poly:2", "trunc-poly:4", "rad-square-zero:3", "gf3-triple"] {
            let a = build(spec, q()).unwrap();
            assert!(a.check_axioms().pass, "{spec}");
        }
    }

    #[test]
    fn gf3_triple_has_the_reported_shape() {
        let a = build("gf3-triple", FieldSpec::prime(3).unwrap()).unwrap();
        assert_eq!(a.dim(), 5);
        assert_eq!(a.ideal_power(2).dim(), 1);
        assert_eq!(a.nilpotency_index(), Some(3));
    }

    #[test]
    fn combinators_nest() {
        let a = build("product(trunc-poly:2, product(trunc-poly:2, trunc-poly:2))", q()).unwrap();
        assert_eq!(a.dim(), 4);
        let b = build("coproduct(trunc-poly:2, trunc-poly:2, 4)", q()).unwrap();
        assert_eq!(b.dim(), 9);
    }

    #[test]
    fn registry_is_deterministic() {
        let a = build("gf3-triple", q()).unwrap();
        let b = build("gf3-triple", q()).unwrap();
        assert_eq!(a.to_json(), b.to_json());
    }

    #[test]
    fn unknown_specs_are_rejected() {
        assert!(build("mystery:1", q()).is_err());
        assert!(build("product(trunc-poly:2)", q()).is_err());
    }
}
