//! Graded-connected algebras stored degreewise up to a truncation cutoff,
//! and presentations by generators and homogeneous relations.
//!
//! A `GradedAlgebra` wraps a flattened `Algebra` (basis ordered by degree)
//! plus the degree bookkeeping. Products that would land above the cutoff
//! are discarded; since multiplication never lowers degree, the truncation
//! is an honest quotient and associativity is exact. The `guard_band` marks
//! top degrees whose ideal/annihilator computations truncation can corrupt.

use serde_json::{json, Value};

use crate::algebra::Algebra;
use crate::error::Error;
use crate::field::{FieldSpec, Scalar};
use crate::matrix::Matrix;
use crate::subspace::{RowSpace, Subspace};

#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    cutoff: usize,
    guard_band: usize,
    dims: Vec<usize>,    // per degree 0..=cutoff
    offsets: Vec<usize>, // flat index of the first basis vector per degree
    algebra: Algebra,    // flattened, basis ordered by (degree, index)
    strictly_graded: bool,
}

impl GradedAlgebra {
    /// Assemble from degreewise components and a product rule producing flat
    /// coordinate vectors. Degree 0 must be one-dimensional (the unit).
    pub fn from_degreewise(
        field: FieldSpec,
        components: Vec<Vec<String>>,
        guard_band: usize,
        mut product: impl FnMut(usize, usize, usize, usize) -> Vec<Scalar>,
    ) -> Result<GradedAlgebra, Error> {
        if components.is_empty() || components[0].len() != 1 {
            return Err(Error::Invalid("graded-connected: degree 0 must be k".into()));
        }
        let cutoff = components.len() - 1;
        let dims: Vec<usize> = components.iter().map(|c| c.len()).collect();
        let mut offsets = vec![0usize; cutoff + 1];
        for d in 1..=cutoff {
            offsets[d] = offsets[d - 1] + dims[d - 1];
        }
        let total: usize = dims.iter().sum();
        let labels: Vec<String> = components.into_iter().flatten().collect();
        let mut unit = vec![field.zero(); total];
        unit[0] = field.one();
        let mut aug = vec![field.zero(); total];
        aug[0] = field.one();

        let mut degree_of = Vec::with_capacity(total);
        for (d, &m) in dims.iter().enumerate() {
            degree_of.extend(std::iter::repeat(d).take(m));
        }
        let mut strictly_graded = true;
        let algebra = Algebra::from_products(
            field,
            labels,
            unit,
            |i, j| {
                let (d1, d2) = (degree_of[i], degree_of[j]);
                let v = product(d1, i - offsets[d1], d2, j - offsets[d2]);
                assert_eq!(v.len(), total, "graded product must return flat coordinates");
                for (k, c) in v.iter().enumerate() {
                    if !c.is_zero() {
                        assert!(degree_of[k] >= d1 + d2, "graded product lowered degree");
                        if degree_of[k] > d1 + d2 {
                            strictly_graded = false;
                        }
                    }
                }
                v
            },
            aug,
        )?;
        Ok(GradedAlgebra { cutoff, guard_band, dims, offsets, algebra, strictly_graded })
    }

    pub fn field(&self) -> FieldSpec {
        self.algebra.field()
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn guard_band(&self) -> usize {
        self.guard_band
    }

    /// Highest degree whose derived computations the truncation leaves intact.
    pub fn trusted_cutoff(&self) -> usize {
        self.cutoff.saturating_sub(self.guard_band)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn strictly_graded(&self) -> bool {
        self.strictly_graded
    }

    /// The truncated algebra on the flattened basis.
    pub fn flat(&self) -> &Algebra {
        &self.algebra
    }

    pub fn flat_index(&self, degree: usize, idx: usize) -> usize {
        self.offsets[degree] + idx
    }

    pub fn degree_of(&self, flat: usize) -> usize {
        (0..=self.cutoff).rev().find(|&d| flat >= self.offsets[d]).unwrap()
    }

    pub fn degree_range(&self, d: usize) -> std::ops::Range<usize> {
        self.offsets[d]..self.offsets[d] + self.dims[d]
    }

    /// Slice a flat vector to its degree-d coordinates.
    pub fn component_of(&self, v: &[Scalar], d: usize) -> Vec<Scalar> {
        v[self.degree_range(d)].to_vec()
    }

    /// Graded centre, one subspace of each degree-d component, for degrees up
    /// to the trusted cutoff. An element z of degree d is recorded when
    /// z·g = (-1)^{d·e} g·z for every basis g of every degree e ≤ cutoff - d.
    pub fn graded_center(&self) -> Vec<Subspace> {
        self.commutant_dims_impl(true)
    }

    /// Degreewise centre (ungraded commutation), within the trusted window.
    pub fn center_slices(&self) -> Vec<Subspace> {
        self.commutant_dims_impl(false)
    }

    fn commutant_dims_impl(&self, signed: bool) -> Vec<Subspace> {
        let field = self.field();
        let mut out = Vec::new();
        for d in 0..=self.trusted_cutoff() {
            let m = self.dims[d];
            if m == 0 {
                out.push(Subspace::zero(field, 0));
                continue;
            }
            let mut rows: Vec<Vec<Scalar>> = Vec::new();
            for e in 0..=(self.cutoff - d) {
                for g_idx in self.degree_range(e) {
                    let g = self.algebra.basis_vector(g_idx);
                    let sign = if signed && d * e % 2 == 1 { field.from_i64(-1) } else { field.one() };
                    let mut cols = Vec::with_capacity(m);
                    for zi in self.degree_range(d) {
                        let e_z = self.algebra.basis_vector(zi);
                        let zg = self.algebra.multiply(&e_z, &g);
                        let gz = self.algebra.multiply(&g, &e_z);
                        let diff: Vec<Scalar> =
                            zg.iter().zip(gz.iter()).map(|(a, b)| a.sub(&sign.mul(b))).collect();
                        cols.push(diff);
                    }
                    for k in 0..self.dim() {
                        if cols.iter().any(|c| !c[k].is_zero()) {
                            rows.push(cols.iter().map(|c| c[k].clone()).collect());
                        }
                    }
                }
            }
            let cond = if rows.is_empty() {
                Matrix::zero(field, 0, m)
            } else {
                Matrix::from_rows(field, rows)
            };
            out.push(Subspace::from_spanning(&cond.kernel()));
        }
        out
    }
}

/// A word in generator indices.
pub type Word = Vec<usize>;

/// Noncommutative polynomial: a list of (coefficient, word) terms.
#[derive(Clone, Debug, PartialEq)]
pub struct NcPoly(pub Vec<(Scalar, Word)>);

#[derive(Clone, Debug)]
pub struct Presentation {
    pub field: FieldSpec,
    pub generators: Vec<(String, usize)>, // (name, positive degree)
    pub relations: Vec<NcPoly>,
    pub cutoff: usize,
}

impl Presentation {
    pub fn word_degree(&self, w: &Word) -> usize {
        w.iter().map(|&g| self.generators[g].1).sum()
    }

    /// All words of total degree d, lexicographically ordered by index
    /// sequence.
    fn words_of_degree(&self, d: usize) -> Vec<Word> {
        if d == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for (g, (_, gd)) in self.generators.iter().enumerate() {
            if *gd <= d {
                for tail in self.words_of_degree(d - gd) {
                    let mut w = vec![g];
                    w.extend(tail);
                    out.push(w);
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "field": { "char": self.field.characteristic() },
            "generators": self.generators.iter()
                .map(|(n, d)| json!({ "name": n, "degree": d }))
                .collect::<Vec<_>>(),
            "relations": self.relations.iter().map(|p| {
                p.0.iter().map(|(c, w)| {
                    json!([c.to_json(), w.iter().map(|&g| &self.generators[g].0).collect::<Vec<_>>()])
                }).collect::<Vec<_>>()
            }).collect::<Vec<_>>(),
            "cutoff": self.cutoff,
        })
    }

    pub fn from_json(v: &Value) -> Result<Presentation, Error> {
        let field_char = v
            .pointer("/field/char")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("missing field.char".into()))?;
        let field =
            if field_char == 0 { FieldSpec::rationals() } else { FieldSpec::prime(field_char)? };
        let generators: Vec<(String, usize)> = v
            .get("generators")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing generators".into()))?
            .iter()
            .map(|g| {
                let name = g.get("name").and_then(Value::as_str).map(String::from);
                let degree = g.get("degree").and_then(Value::as_u64).map(|d| d as usize);
                match (name, degree) {
                    (Some(n), Some(d)) if d > 0 => Ok((n, d)),
                    _ => Err(Error::Parse("generator needs name and positive degree".into())),
                }
            })
            .collect::<Result<_, _>>()?;
        let index_of = |name: &str| -> Result<usize, Error> {
            generators
                .iter()
                .position(|(n, _)| n == name)
                .ok_or_else(|| Error::Parse(format!("unknown generator {name}")))
        };
        let relations: Vec<NcPoly> = v
            .get("relations")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing relations".into()))?
            .iter()
            .map(|rel| {
                let terms = rel.as_array().ok_or_else(|| Error::Parse("relation".into()))?;
                let parsed = terms
                    .iter()
                    .map(|t| {
                        let pair = t.as_array().filter(|p| p.len() == 2).ok_or_else(|| {
                            Error::Parse("relation term must be [coeff, word]".into())
                        })?;
                        let c = Scalar::from_json(field, &pair[0])?;
                        let w = pair[1]
                            .as_array()
                            .ok_or_else(|| Error::Parse("word".into()))?
                            .iter()
                            .map(|g| {
                                index_of(
                                    g.as_str().ok_or_else(|| Error::Parse("word letter".into()))?,
                                )
                            })
                            .collect::<Result<Word, _>>()?;
                        Ok((c, w))
                    })
                    .collect::<Result<Vec<_>, Error>>()?;
                Ok(NcPoly(parsed))
            })
            .collect::<Result<_, Error>>()?;
        let cutoff = v
            .get("cutoff")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("missing cutoff".into()))? as usize;
        Ok(Presentation { field, generators, relations, cutoff })
    }
}

/// Quotient of the free algebra on the presentation's generators by the
/// two-sided ideal its relations generate, computed degree by degree with
/// linear algebra: the degree-n slice of the ideal is the span of u·r·v over
/// relations r and words u, v of matching total degree. The quotient basis
/// is the lexicographically least set of words completing the slice.
pub fn from_presentation(p: &Presentation) -> Result<GradedAlgebra, Error> {
    let field = p.field;
    for rel in &p.relations {
        if rel.0.is_empty() {
            continue;
        }
        let d0 = p.word_degree(&rel.0[0].1);
        if rel.0.iter().any(|(_, w)| p.word_degree(w) != d0) {
            return Err(Error::InhomogeneousRelation(format!("{:?}", rel)));
        }
        if d0 > p.cutoff {
            return Err(Error::CutoffTooSmall {
                cutoff: p.cutoff,
                reason: format!("relation of degree {d0}"),
            });
        }
    }

    // words per degree plus index lookup
    let words: Vec<Vec<Word>> = (0..=p.cutoff).map(|d| p.words_of_degree(d)).collect();
    let index: Vec<std::collections::HashMap<Word, usize>> = words
        .iter()
        .map(|ws| ws.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect())
        .collect();

    // ideal slice per degree
    let mut ideal: Vec<RowSpace> =
        (0..=p.cutoff).map(|d| RowSpace::new(field, words[d].len())).collect();
    for rel in &p.relations {
        if rel.0.is_empty() {
            continue;
        }
        let dr = p.word_degree(&rel.0[0].1);
        for n in dr..=p.cutoff {
            for a in 0..=(n - dr) {
                let b = n - dr - a;
                for u in &words[a] {
                    for v in &words[b] {
                        let mut vec = vec![field.zero(); words[n].len()];
                        for (c, w) in &rel.0 {
                            let mut full = u.clone();
                            full.extend(w.iter().copied());
                            full.extend(v.iter().copied());
                            let k = index[n][&full];
                            vec[k] = vec[k].add(c);
                        }
                        ideal[n].insert(vec);
                    }
                }
            }
        }
    }

    // lexicographically least completions
    let mut basis_words: Vec<Vec<Word>> = Vec::with_capacity(p.cutoff + 1);
    for n in 0..=p.cutoff {
        let mut span = ideal[n].clone();
        let mut chosen = Vec::new();
        for (wi, w) in words[n].iter().enumerate() {
            let mut e = vec![field.zero(); words[n].len()];
            e[wi] = field.one();
            if span.insert(e) {
                chosen.push(w.clone());
            }
        }
        basis_words.push(chosen);
    }
    if basis_words[0].len() != 1 {
        return Err(Error::Invalid("degree 0 collapsed; inconsistent presentation".into()));
    }

    // coset expression helpers: reduce modulo ideal, solve against reduced reps
    let mut rep_solvers: Vec<Option<(Matrix, Subspace)>> = Vec::with_capacity(p.cutoff + 1);
    for n in 0..=p.cutoff {
        let sub = ideal[n].subspace();
        if basis_words[n].is_empty() {
            rep_solvers.push(None);
            continue;
        }
        let rows: Vec<Vec<Scalar>> = basis_words[n]
            .iter()
            .map(|w| {
                let mut e = vec![field.zero(); words[n].len()];
                e[index[n][w]] = field.one();
                sub.reduce(&e)
            })
            .collect();
        let rep_t = Matrix::from_rows(field, rows).transpose();
        rep_solvers.push(Some((rep_t, sub)));
    }

    let label_of = |w: &Word| -> String {
        if w.is_empty() {
            "1".to_string()
        } else {
            w.iter().map(|&g| p.generators[g].0.clone()).collect::<Vec<_>>().join("*")
        }
    };
    let components: Vec<Vec<String>> =
        basis_words.iter().map(|ws| ws.iter().map(label_of).collect()).collect();

    let dims: Vec<usize> = components.iter().map(|c| c.len()).collect();
    let total: usize = dims.iter().sum();
    let mut offsets = vec![0usize; p.cutoff + 1];
    for d in 1..=p.cutoff {
        offsets[d] = offsets[d - 1] + dims[d - 1];
    }

    let bw = basis_words.clone();
    let cutoff = p.cutoff;
    let guard = guard_band_for(p);
    GradedAlgebra::from_degreewise(field, components, guard, move |d1, i, d2, j| {
        let mut out = vec![field.zero(); total];
        let n = d1 + d2;
        if n > cutoff {
            return out;
        }
        let mut concat = bw[d1][i].clone();
        concat.extend(bw[d2][j].iter().copied());
        let Some((rep_t, sub)) = &rep_solvers[n] else {
            return out;
        };
        let mut e = vec![field.zero(); words[n].len()];
        e[index[n][&concat]] = field.one();
        let reduced = sub.reduce(&e);
        let coords = rep_t
            .solve(&Matrix::column(field, &reduced))
            .expect("coset representatives span the quotient");
        for k in 0..bw[n].len() {
            out[offsets[n] + k] = coords.get(k, 0).clone();
        }
        out
    })
}

fn guard_band_for(p: &Presentation) -> usize {
    p.generators.iter().map(|(_, d)| *d).max().unwrap_or(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    fn pres(
        gens: &[(&str, usize)],
        rels: Vec<Vec<(i64, Vec<usize>)>>,
        cutoff: usize,
    ) -> Presentation {
        let field = q();
        Presentation {
            field,
            generators: gens.iter().map(|(n, d)| (n.to_string(), *d)).collect(),
            relations: rels
                .into_iter()
                .map(|terms| {
                    NcPoly(terms.into_iter().map(|(c, w)| (field.from_i64(c), w)).collect())
                })
                .collect(),
            cutoff,
        }
    }

    #[test]
    fn single_generator_square_zero() {
        // k<x>/(x^2), cutoff 4: dims (1,1,0,0,0)
        let p = pres(&[("x", 1)], vec![vec![(1, vec![0, 0])]], 4);
        let a = from_presentation(&p).unwrap();
        assert_eq!(a.dims(), &[1, 1, 0, 0, 0]);
        assert!(a.strictly_graded());
        assert!(a.flat().check_axioms().pass);
    }

    #[test]
    fn two_generators_squares_zero_gives_alternating_words() {
        // k<x,y>/(x^2, y^2), cutoff 4: dims (1,2,2,2,2)
        let p = pres(&[("x", 1), ("y", 1)], vec![vec![(1, vec![0, 0])], vec![(1, vec![1, 1])]], 4);
        let a = from_presentation(&p).unwrap();
        assert_eq!(a.dims(), &[1, 2, 2, 2, 2]);
        let labels: Vec<_> = a.degree_range(2).map(|i| a.flat().labels()[i].clone()).collect();
        assert_eq!(labels, vec!["x*y", "y*x"]);
        assert!(a.flat().check_axioms().pass);
    }

    #[test]
    fn free_algebra_dims_double() {
        // k<x,y> with no relations, cutoff 3: dims (1,2,4,8)
        let p = pres(&[("x", 1), ("y", 1)], vec![], 3);
        let a = from_presentation(&p).unwrap();
        assert_eq!(a.dims(), &[1, 2, 4, 8]);
    }

    #[test]
    fn truncated_polynomial_presentation_matches_structure_constants() {
        let p = pres(&[("x", 1)], vec![vec![(1, vec![0, 0, 0])]], 5);
        let a = from_presentation(&p).unwrap();
        assert_eq!(a.dims(), &[1, 1, 1, 0, 0, 0]);
        let x = a.flat().basis_vector(a.flat_index(1, 0));
        let x2 = a.flat().multiply(&x, &x);
        assert_eq!(x2, a.flat().basis_vector(a.flat_index(2, 0)));
        assert!(a.flat().multiply(&x2, &x).iter().all(|c| c.is_zero()));
    }

    #[test]
    fn inhomogeneous_relations_rejected() {
        // x^2 - x is inhomogeneous
        let p = pres(&[("x", 1)], vec![vec![(1, vec![0, 0]), (-1, vec![0])]], 3);
        assert!(matches!(from_presentation(&p), Err(Error::InhomogeneousRelation(_))));
    }

    #[test]
    fn cutoff_smaller_than_relation_rejected() {
        let p = pres(&[("x", 1)], vec![vec![(1, vec![0, 0, 0])]], 2);
        assert!(matches!(from_presentation(&p), Err(Error::CutoffTooSmall { .. })));
    }

    #[test]
    fn cutoff_increase_reproduces_trusted_degrees() {
        let small =
            pres(&[("x", 1), ("y", 1)], vec![vec![(1, vec![0, 0])], vec![(1, vec![1, 1])]], 3);
        let big =
            pres(&[("x", 1), ("y", 1)], vec![vec![(1, vec![0, 0])], vec![(1, vec![1, 1])]], 6);
        let a = from_presentation(&small).unwrap();
        let b = from_presentation(&big).unwrap();
        assert_eq!(&a.dims()[..=3], &b.dims()[..=3]);
        let ax = a.flat().basis_vector(a.flat_index(1, 0));
        let ay = a.flat().basis_vector(a.flat_index(1, 1));
        let bx = b.flat().basis_vector(b.flat_index(1, 0));
        let by = b.flat().basis_vector(b.flat_index(1, 1));
        let pa = a.flat().multiply(&ax, &ay);
        let pb = b.flat().multiply(&bx, &by);
        assert_eq!(a.component_of(&pa, 2), b.component_of(&pb, 2));
    }

    #[test]
    fn graded_centre_of_alternating_algebra_contains_xy_plus_yx() {
        let p = pres(&[("x", 1), ("y", 1)], vec![vec![(1, vec![0, 0])], vec![(1, vec![1, 1])]], 6);
        let a = from_presentation(&p).unwrap();
        let gc = a.graded_center();
        let f = q();
        assert!(gc[2].contains_vector(&[f.one(), f.one()]), "xy + yx central in degree 2");
        assert_eq!(gc[1].dim(), 0);
        assert_eq!(gc[0].dim(), 1, "degree-0 graded centre contains the unit");
    }

    #[test]
    fn graded_centre_of_free_algebra_is_degree_zero_only() {
        let p = pres(&[("a", 1), ("b", 1)], vec![], 5);
        let alg = from_presentation(&p).unwrap();
        let gc = alg.graded_center();
        assert_eq!(gc[0].dim(), 1);
        for (d, s) in gc.iter().enumerate().skip(1) {
            assert_eq!(s.dim(), 0, "degree {d}");
        }
    }

    #[test]
    fn presentation_json_round_trip() {
        let p = pres(&[("x", 1), ("y", 2)], vec![vec![(1, vec![0, 0, 0]), (-2, vec![1, 0])]], 5);
        let j = p.to_json();
        let p2 = Presentation::from_json(&j).unwrap();
        assert_eq!(p2.to_json(), j);
    }

    #[test]
    fn centre_dims_of_alternating_algebra() {
        // centre of k<x,y>/(x^2,y^2): spanned degreewise by powers of xy+yx,
        // dims (1,0,1,0,1,...) in trusted degrees
        let p = pres(&[("x", 1), ("y", 1)], vec![vec![(1, vec![0, 0])], vec![(1, vec![1, 1])]], 7);
        let a = from_presentation(&p).unwrap();
        let dims: Vec<usize> = a.center_slices().iter().map(|s| s.dim()).collect();
        assert_eq!(&dims[..=6], &[1, 0, 1, 0, 1, 0, 1]);
    }
}
