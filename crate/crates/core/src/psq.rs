//! The bimodule resolution of a product Λ*Γ assembled from small bimodule
//! resolutions of the factors.
//!
//! Degree n is a direct sum over alternating words: one free summand for
//! each composition (i_1..i_N) of n with positive parts and each of the two
//! alternation patterns, with generator tuples drawn from the factor
//! resolutions. The differential touches only the outer letters: interior
//! terms die because the factor resolutions are small, and a letter of
//! degree one dies into an augmentation-ideal coefficient. Signs follow the
//! Koszul rule (left edge +1, right edge (-1)^{n - deg(last letter)}); this
//! is the unique convention under which δ² = 0 and the contracting homotopy
//! identity hold, and both are verified on every build.

use serde_json::json;
use std::sync::Arc;

use crate::algebra::ArcAlgebra;
use crate::constructions::{product, ProductResult};
use crate::error::Error;
use crate::field::Scalar;
use crate::matrix::Matrix;
use crate::module::ModuleOver;
use crate::report::CheckReport;
use crate::resolution::{left_contracting_homotopy, LeftHomotopy, Resolution};

/// The shape of a word summand: alternation pattern plus letter degrees.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WordShape {
    pub starts_left: bool,
    pub comp: Vec<usize>,
}

impl WordShape {
    pub fn side(&self, j: usize) -> bool {
        self.starts_left == (j % 2 == 0)
    }

    pub fn degree(&self) -> usize {
        self.comp.iter().sum()
    }

    pub fn letters(&self) -> usize {
        self.comp.len()
    }

    /// Part of the subcomplex P̄*Q̄ (degree 0 or a single letter)?
    pub fn is_bar(&self) -> bool {
        self.comp.len() <= 1
    }
}

#[derive(Clone, Debug)]
pub struct Summand {
    pub shape: WordShape,
    pub tuples: Vec<Vec<usize>>,
    /// generator offset of this summand within its degree
    pub gen_offset: usize,
}

#[derive(Clone, Debug)]
pub struct PsqTerm {
    pub summands: Vec<Summand>,
    pub gen_count: usize,
}

impl PsqTerm {
    /// (summand index, tuple index) for a flat generator index.
    pub fn locate(&self, gen: usize) -> (usize, usize) {
        for (si, s) in self.summands.iter().enumerate() {
            if gen >= s.gen_offset && gen < s.gen_offset + s.tuples.len() {
                return (si, gen - s.gen_offset);
            }
        }
        panic!("generator index out of range");
    }
}

/// One factor: its algebra, small bimodule resolution, left homotopy, and
/// the embedding into the product.
pub struct FactorData {
    pub algebra: ArcAlgebra,
    pub res: Resolution,
    pub homotopy: LeftHomotopy,
    /// Λ -> Δ, λ ↦ (λ, ε(λ))
    pub embed: Matrix,
    /// Δ -> Λ, the canonical projection
    pub project: Matrix,
}

pub struct PsqResolution {
    pub delta: ArcAlgebra,
    pub env: ArcAlgebra,
    pub prod: ProductResult,
    pub left: FactorData,
    pub right: FactorData,
    pub terms: Vec<PsqTerm>,
    /// `diffs[n]`: degree n+1 -> degree n
    pub diffs: Vec<Matrix>,
    /// degree 0 = Δ^e -> Δ, multiplication
    pub aug: Matrix,
    /// `sigma[n]`: degree n -> degree n+1 (left Δ-linear)
    pub sigma: Vec<Matrix>,
    /// Δ -> Δ^e, x ↦ x⊗1
    pub sigma_minus1: Matrix,
}

impl PsqResolution {
    pub fn top_degree(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn term_dim(&self, n: usize) -> usize {
        self.terms[n].gen_count * self.env.dim()
    }

    /// View as a plain resolution over Δ^e (the generator order is the
    /// summand/tuple order, coordinates (gen, x⊗y)).
    pub fn as_resolution(&self) -> Resolution {
        let target = ModuleOver::bimodule_self(&self.delta, &self.env);
        let mut res = Resolution {
            ring: self.env.clone(),
            target,
            ranks: self.terms.iter().map(|t| t.gen_count).collect(),
            diffs: self.diffs.clone(),
            aug: self.aug.clone(),
            small: false,
        };
        res.small = res.verify_small();
        res
    }

    /// R = (P⊔Q) ⊗_{Λ*Γ} k: a resolution of k by free Λ*Γ-modules with the
    /// same generators.
    pub fn tensor_down(&self) -> Resolution {
        let f = self.delta.field();
        let dd = self.delta.dim();
        let de = self.env.dim();
        let collapse = |n: usize, v: &[Scalar]| -> Vec<Scalar> {
            // (gen, x⊗y) ↦ ε(y)·(gen, x)
            let mut out = vec![f.zero(); self.terms[n].gen_count * dd];
            for (idx, c) in v.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let g = idx / de;
                let x = (idx % de) / dd;
                let y = idx % dd;
                let eps = self.delta.aug_row()[y].clone();
                if !eps.is_zero() {
                    out[g * dd + x] = out[g * dd + x].add(&c.mul(&eps));
                }
            }
            out
        };
        let mut diffs = Vec::new();
        for n in 1..=self.top_degree() {
            let src_gens = self.terms[n].gen_count;
            let mut m = Matrix::zero(f, self.terms[n - 1].gen_count * dd, src_gens * dd);
            for g in 0..src_gens {
                for x in 0..dd {
                    // include (g, x): env coordinate (x, unit=0)
                    let mut v = vec![f.zero(); self.term_dim(n)];
                    v[g * de + x * dd] = f.one();
                    let dv = self.diffs[n - 1].apply(&v);
                    for (r, c) in collapse(n - 1, &dv).into_iter().enumerate() {
                        m.set(r, g * dd + x, c);
                    }
                }
            }
            diffs.push(m);
        }
        let mut aug = Matrix::zero(f, 1, dd);
        for x in 0..dd {
            aug.set(0, x, self.delta.aug_row()[x].clone());
        }
        let target = ModuleOver::trivial(self.delta.clone());
        let mut out = Resolution {
            ring: self.delta.clone(),
            target,
            ranks: self.terms.iter().map(|t| t.gen_count).collect(),
            diffs,
            aug,
            small: false,
        };
        out.small = out.verify_small();
        out
    }

    /// δ² = 0, the homotopy identities, exactness by homology ranks, and
    /// two-sided smallness, reported clause by clause.
    pub fn verify_report(&self, check_degrees: usize) -> CheckReport {
        let mut rep = CheckReport::new("psq-certificates").with_params(json!({
            "left_dim": self.left.algebra.dim(),
            "right_dim": self.right.algebra.dim(),
            "degrees": check_degrees,
        }));
        let f = self.delta.field();
        // complex: aug ∘ d_1 = 0 and d² = 0
        rep.require(self.aug.mul(&self.diffs[0]).is_zero(), "aug ∘ δ_1 = 0", json!(null));
        for n in 0..self.diffs.len().saturating_sub(1).min(check_degrees) {
            rep.require(
                self.diffs[n].mul(&self.diffs[n + 1]).is_zero(),
                "δ² = 0",
                json!({ "degree": n + 2 }),
            );
        }
        // homotopy identities: δσ + σδ = id
        {
            // degree 0: δ_1 σ_0 + σ_{-1} aug = id
            let lhs = self.diffs[0].mul(&self.sigma[0]).add(&self.sigma_minus1.mul(&self.aug));
            rep.require(
                lhs == Matrix::identity(f, self.term_dim(0)),
                "homotopy identity",
                json!({ "degree": 0 }),
            );
        }
        for n in 1..=check_degrees.min(self.sigma.len() - 1) {
            let lhs =
                self.diffs[n].mul(&self.sigma[n]).add(&self.sigma[n - 1].mul(&self.diffs[n - 1]));
            rep.require(
                lhs == Matrix::identity(f, self.term_dim(n)),
                "homotopy identity",
                json!({ "degree": n }),
            );
        }
        // exactness by ranks
        let res = self.as_resolution();
        rep.require(res.verify_exact(), "homology vanishes in checked degrees", json!(null));
        rep.require(res.small, "image of δ inside augmentation-ideal multiples", json!(null));
        rep.table(
            "ranks",
            json!(self.terms.iter().map(|t| t.gen_count).collect::<Vec<_>>()),
        );
        rep
    }
}

/// Compositions of n into parts ≥ 1, lexicographic.
fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for rest in compositions(n - first) {
            let mut c = vec![first];
            c.extend(rest);
            out.push(c);
        }
    }
    out
}

fn cartesian(ranks: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for &r in ranks {
        out = out
            .into_iter()
            .flat_map(|t: Vec<usize>| {
                (0..r).map(move |i| {
                    let mut s = t.clone();
                    s.push(i);
                    s
                })
            })
            .collect();
    }
    out
}

/// A sparse accumulation of a degree-term vector.
struct Accum<'a> {
    psq: &'a PsqBuilder,
    degree: usize,
    entries: Vec<Scalar>,
}

struct PsqBuilder {
    delta: ArcAlgebra,
    terms: Vec<PsqTerm>,
}

impl PsqBuilder {
    fn find_summand(&self, n: usize, shape: &WordShape) -> usize {
        self.terms[n]
            .summands
            .iter()
            .position(|s| &s.shape == shape)
            .expect("summand shape must exist")
    }

    fn tuple_index(&self, n: usize, si: usize, tuple: &[usize]) -> usize {
        self.terms[n].summands[si]
            .tuples
            .iter()
            .position(|t| t == tuple)
            .expect("tuple must exist")
    }

    fn flat(&self, n: usize, si: usize, ti: usize, x: usize, y: usize) -> usize {
        let dd = self.delta.dim();
        let gen = self.terms[n].summands[si].gen_offset + ti;
        gen * dd * dd + x * dd + y
    }
}

impl<'a> Accum<'a> {
    fn new(psq: &'a PsqBuilder, degree: usize) -> Self {
        let dim = psq.terms[degree].gen_count * psq.delta.dim() * psq.delta.dim();
        Accum { psq, degree, entries: vec![psq.delta.field().zero(); dim] }
    }

    fn add(&mut self, si: usize, ti: usize, x: usize, y: usize, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let idx = self.psq.flat(self.degree, si, ti, x, y);
        self.entries[idx] = self.entries[idx].add(c);
    }

    /// Add c · (x-vector ⊗ y-vector) on a fixed generator.
    fn add_outer(&mut self, si: usize, ti: usize, xv: &[Scalar], yv: &[Scalar], c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (x, cx) in xv.iter().enumerate() {
            if cx.is_zero() {
                continue;
            }
            for (y, cy) in yv.iter().enumerate() {
                if cy.is_zero() {
                    continue;
                }
                self.add(si, ti, x, y, &c.mul(&cx.mul(cy)));
            }
        }
    }
}

/// Build the resolution of Λ*Γ to homological degree n_max + 1 (so that the
/// homotopy identity is checkable through degree n_max).
pub fn build_psq(a: &ArcAlgebra, b: &ArcAlgebra, n_max: usize) -> Result<PsqResolution, Error> {
    let top = n_max + 1;
    let prod = product(a, b)?;
    let delta = prod.algebra.clone();
    // the product construction puts the unit at basis index 0; the word
    // calculus below relies on it
    assert_eq!(delta.unit(), delta.basis_vector(0));
    let env = Arc::new(delta.enveloping());

    let mut factors = Vec::new();
    for (alg, embed, project) in [
        (a, prod.incl_left.matrix.clone(), prod.proj_left.matrix.clone()),
        (b, prod.incl_right.matrix.clone(), prod.proj_right.matrix.clone()),
    ] {
        let (res, _env) = crate::resolution::minimal_bimodule_resolution(alg, top)?;
        if !res.small {
            return Err(Error::NotSmall("factor resolution must be small".into()));
        }
        if res.ranks[0] != 1 {
            return Err(Error::Invalid("factor resolution must start at Λ^e".into()));
        }
        let homotopy = left_contracting_homotopy(alg, &res, n_max)?;
        factors.push(FactorData { algebra: alg.clone(), res, homotopy, embed, project });
    }
    let right = factors.pop().unwrap();
    let left = factors.pop().unwrap();

    // terms: degree 0 is Δ^e (one empty word); degree n>0 sums over shapes
    let mut terms = Vec::with_capacity(top + 1);
    terms.push(PsqTerm {
        summands: vec![Summand {
            shape: WordShape { starts_left: true, comp: vec![] },
            tuples: vec![vec![]],
            gen_offset: 0,
        }],
        gen_count: 1,
    });
    for n in 1..=top {
        let mut summands = Vec::new();
        let mut offset = 0;
        for comp in compositions(n) {
            for starts_left in [true, false] {
                let shape = WordShape { starts_left, comp: comp.clone() };
                let ranks: Vec<usize> = shape
                    .comp
                    .iter()
                    .enumerate()
                    .map(|(j, &m)| {
                        let fac = if shape.side(j) { &left } else { &right };
                        *fac.res.ranks.get(m).unwrap_or(&0)
                    })
                    .collect();
                let tuples = if ranks.iter().any(|&r| r == 0) {
                    Vec::new()
                } else {
                    cartesian(&ranks)
                };
                let count = tuples.len();
                summands.push(Summand { shape, tuples, gen_offset: offset });
                offset += count;
            }
        }
        terms.push(PsqTerm { summands, gen_count: offset });
    }

    let builder = PsqBuilder { delta: delta.clone(), terms };
    let f = delta.field();
    let dd = delta.dim();

    // reduced factor differentials on generators
    let factor = |is_left: bool| -> &FactorData {
        if is_left {
            &left
        } else {
            &right
        }
    };
    // d(gen) of P_m as factor-env coordinates (t', i, j)
    let d_gen = |is_left: bool, m: usize, t: usize| -> Vec<Scalar> {
        let fac = factor(is_left);
        fac.res.diff(m).apply(&fac.res.generator_vector(m, t))
    };

    let unit_vec = |dim: usize| -> Vec<Scalar> {
        let mut v = vec![f.zero(); dim];
        v[0] = f.one();
        v
    };
    let delta_unit = unit_vec(dd);

    // differential
    let mut diffs = Vec::new();
    for n in 1..=top {
        let src = &builder.terms[n];
        let mut cols: Vec<Vec<Scalar>> = Vec::with_capacity(src.gen_count);
        for s in &src.summands {
            let shape = &s.shape;
            let nl = shape.letters();
            for tuple in &s.tuples {
                let mut acc = Accum::new(&builder, n - 1);
                if nl == 1 {
                    // full induced differential of the single letter
                    let is_left = shape.side(0);
                    let fac = factor(is_left);
                    let da = fac.algebra.dim();
                    let m = shape.comp[0];
                    let dv = d_gen(is_left, m, tuple[0]);
                    if m >= 2 {
                        let tsi = builder
                            .find_summand(n - 1, &WordShape { starts_left: shape.starts_left, comp: vec![m - 1] });
                        for (idx, c) in dv.iter().enumerate() {
                            if c.is_zero() {
                                continue;
                            }
                            let t2 = idx / (da * da);
                            let i = (idx % (da * da)) / da;
                            let j = idx % da;
                            let ti = builder.tuple_index(n - 1, tsi, &[t2]);
                            acc.add_outer(tsi, ti, &fac.embed.col(i), &fac.embed.col(j), c);
                        }
                    } else {
                        // lands in degree 0 = Δ^e
                        for (idx, c) in dv.iter().enumerate() {
                            if c.is_zero() {
                                continue;
                            }
                            let i = idx / da;
                            let j = idx % da;
                            acc.add_outer(0, 0, &fac.embed.col(i), &fac.embed.col(j), c);
                        }
                    }
                } else {
                    // left edge, sign +1
                    {
                        let is_left = shape.side(0);
                        let fac = factor(is_left);
                        let da = fac.algebra.dim();
                        let m = shape.comp[0];
                        let dv = d_gen(is_left, m, tuple[0]);
                        if m >= 2 {
                            let mut comp2 = shape.comp.clone();
                            comp2[0] = m - 1;
                            let tsi = builder.find_summand(
                                n - 1,
                                &WordShape { starts_left: shape.starts_left, comp: comp2 },
                            );
                            for (idx, c) in dv.iter().enumerate() {
                                if c.is_zero() {
                                    continue;
                                }
                                let t2 = idx / (da * da);
                                let i = (idx % (da * da)) / da;
                                let j = idx % da;
                                // right coordinate crosses ⊗̂: ε
                                let eps = fac.algebra.aug_row()[j].clone();
                                if eps.is_zero() {
                                    continue;
                                }
                                let mut new_tuple = tuple.clone();
                                new_tuple[0] = t2;
                                let ti = builder.tuple_index(n - 1, tsi, &new_tuple);
                                acc.add_outer(tsi, ti, &fac.embed.col(i), &delta_unit, &c.mul(&eps));
                            }
                        } else {
                            // the letter dies; (1⊗ε)d(gen) ∈ I(Λ) multiplies from the left
                            let mut mu = vec![f.zero(); da];
                            for (idx, c) in dv.iter().enumerate() {
                                if c.is_zero() {
                                    continue;
                                }
                                let i = idx / da;
                                let j = idx % da;
                                let eps = fac.algebra.aug_row()[j].clone();
                                if !eps.is_zero() {
                                    mu[i] = mu[i].add(&c.mul(&eps));
                                }
                            }
                            let tsi = builder.find_summand(
                                n - 1,
                                &WordShape {
                                    starts_left: !shape.starts_left,
                                    comp: shape.comp[1..].to_vec(),
                                },
                            );
                            let ti = builder.tuple_index(n - 1, tsi, &tuple[1..]);
                            acc.add_outer(tsi, ti, &fac.embed.apply(&mu), &delta_unit, &f.one());
                        }
                    }
                    // right edge, sign (-1)^{n - m_N}
                    {
                        let last = nl - 1;
                        let is_left = shape.side(last);
                        let fac = factor(is_left);
                        let da = fac.algebra.dim();
                        let m = shape.comp[last];
                        let sign =
                            if (n - m) % 2 == 1 { f.from_i64(-1) } else { f.one() };
                        let dv = d_gen(is_left, m, tuple[last]);
                        if m >= 2 {
                            let mut comp2 = shape.comp.clone();
                            comp2[last] = m - 1;
                            let tsi = builder.find_summand(
                                n - 1,
                                &WordShape { starts_left: shape.starts_left, comp: comp2 },
                            );
                            for (idx, c) in dv.iter().enumerate() {
                                if c.is_zero() {
                                    continue;
                                }
                                let t2 = idx / (da * da);
                                let i = (idx % (da * da)) / da;
                                let j = idx % da;
                                // left coordinate crosses ⊗̂ leftward: ε
                                let eps = fac.algebra.aug_row()[i].clone();
                                if eps.is_zero() {
                                    continue;
                                }
                                let mut new_tuple = tuple.clone();
                                new_tuple[last] = t2;
                                let ti = builder.tuple_index(n - 1, tsi, &new_tuple);
                                acc.add_outer(
                                    tsi,
                                    ti,
                                    &delta_unit,
                                    &fac.embed.col(j),
                                    &sign.mul(&c.mul(&eps)),
                                );
                            }
                        } else {
                            // (ε⊗1)d(gen) ∈ I multiplies from the right
                            let mut nu = vec![f.zero(); da];
                            for (idx, c) in dv.iter().enumerate() {
                                if c.is_zero() {
                                    continue;
                                }
                                let i = idx / da;
                                let j = idx % da;
                                let eps = fac.algebra.aug_row()[i].clone();
                                if !eps.is_zero() {
                                    nu[j] = nu[j].add(&c.mul(&eps));
                                }
                            }
                            let tsi = builder.find_summand(
                                n - 1,
                                &WordShape {
                                    starts_left: shape.starts_left,
                                    comp: shape.comp[..last].to_vec(),
                                },
                            );
                            let ti = builder.tuple_index(n - 1, tsi, &tuple[..last]);
                            acc.add_outer(tsi, ti, &delta_unit, &fac.embed.apply(&nu), &sign);
                        }
                    }
                }
                cols.push(acc.entries);
            }
        }
        // extend generator columns over Δ^e coordinates by the outer action
        let dim_src = src.gen_count * dd * dd;
        let dim_tgt = builder.terms[n - 1].gen_count * dd * dd;
        let mut mat = Matrix::zero(f, dim_tgt, dim_src);
        for (g, base) in cols.iter().enumerate() {
            for x in 0..dd {
                for y in 0..dd {
                    let moved = outer_act(&delta, base, x, y);
                    let col = (g * dd + x) * dd + y;
                    for (r, c) in moved.into_iter().enumerate() {
                        if !c.is_zero() {
                            mat.set(r, col, c);
                        }
                    }
                }
            }
        }
        diffs.push(mat);
    }

    // augmentation: Δ^e -> Δ multiplication
    let mut aug = Matrix::zero(f, dd, dd * dd);
    for x in 0..dd {
        for y in 0..dd {
            let prod_xy = delta.multiply(&delta.basis_vector(x), &delta.basis_vector(y));
            for (r, c) in prod_xy.into_iter().enumerate() {
                aug.set(r, x * dd + y, c);
            }
        }
    }

    // σ_{-1}: x ↦ x⊗1 (unit is basis 0)
    let mut sigma_minus1 = Matrix::zero(f, dd * dd, dd);
    for x in 0..dd {
        sigma_minus1.set(x * dd, x, f.one());
    }

    // contracting homotopy: columns σ(word · e_y), then left-extended
    let mut sigma = Vec::new();
    for n in 0..=n_max {
        let src = &builder.terms[n];
        let dim_src = src.gen_count * dd * dd;
        let dim_tgt = builder.terms[n + 1].gen_count * dd * dd;
        let mut mat = Matrix::zero(f, dim_tgt, dim_src);
        for (g_idx, s, tuple) in iter_generators(src) {
            for y in 0..dd {
                let base = sigma_on_word(
                    &builder, &delta, &left, &right, n, s, tuple, y,
                );
                // left-extend over x
                for x in 0..dd {
                    let moved = outer_act(&delta, &base, x, 0);
                    let col = (g_idx * dd + x) * dd + y;
                    for (r, c) in moved.into_iter().enumerate() {
                        if !c.is_zero() {
                            mat.set(r, col, c);
                        }
                    }
                }
            }
        }
        sigma.push(mat);
    }

    Ok(PsqResolution {
        delta,
        env,
        prod,
        left,
        right,
        terms: builder.terms,
        diffs,
        aug,
        sigma,
        sigma_minus1,
    })
}

fn iter_generators(term: &PsqTerm) -> Vec<(usize, &Summand, &Vec<usize>)> {
    let mut out = Vec::with_capacity(term.gen_count);
    for s in &term.summands {
        for (ti, t) in s.tuples.iter().enumerate() {
            out.push((s.gen_offset + ti, s, t));
        }
    }
    out
}

/// Apply the outer action of (e_x ⊗ e_y) to a degree-term vector.
fn outer_act(delta: &ArcAlgebra, v: &[Scalar], x: usize, y: usize) -> Vec<Scalar> {
    let f = delta.field();
    let dd = delta.dim();
    if x == 0 && y == 0 {
        return v.to_vec();
    }
    let mut out = vec![f.zero(); v.len()];
    for (idx, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let g = idx / (dd * dd);
        let x1 = (idx % (dd * dd)) / dd;
        let y1 = idx % dd;
        for (x2, cx) in delta.basis_product(x, x1) {
            for (y2, cy) in delta.basis_product(y1, y) {
                let t = (g * dd + x2) * dd + y2;
                out[t] = out[t].add(&c.mul(&cx.mul(cy)));
            }
        }
    }
    out
}

/// σ applied to (basis word)·e_y, as a degree-(n+1) term vector.
#[allow(clippy::too_many_arguments)]
fn sigma_on_word(
    builder: &PsqBuilder,
    delta: &ArcAlgebra,
    left: &FactorData,
    right: &FactorData,
    n: usize,
    s: &Summand,
    tuple: &[usize],
    y: usize,
) -> Vec<Scalar> {
    let f = delta.field();
    let dd = delta.dim();
    let mut acc = Accum::new(builder, n + 1);
    let delta_unit = {
        let mut v = vec![f.zero(); dd];
        v[0] = f.one();
        v
    };

    // decompose e_y = α·1 + λ + γ in Δ = k ⊕ I(Λ) ⊕ I(Γ)
    let alpha = delta.aug_row()[y].clone();
    let lam = if y != 0 { left.project.col(y) } else { vec![f.zero(); left.algebra.dim()] };
    let gam = if y != 0 { right.project.col(y) } else { vec![f.zero(); right.algebra.dim()] };
    let lam_zero = lam.iter().all(|c| c.is_zero());
    let gam_zero = gam.iter().all(|c| c.is_zero());

    if n == 0 {
        // σ₀(1⊗e_y) = (1 ⊗ s₀(1⊗λ) ⊗ 1) + (1 ⊗ t₀(1⊗γ) ⊗ 1)
        for (fac, part, starts_left) in
            [(left, &lam, true), (right, &gam, false)]
        {
            if part.iter().all(|c| c.is_zero()) {
                continue;
            }
            let da = fac.algebra.dim();
            // 1⊗part in the factor enveloping coordinates
            let mut w = vec![f.zero(); da * da];
            for (i, ui) in fac.algebra.unit().iter().enumerate() {
                for (j, pj) in part.iter().enumerate() {
                    w[i * da + j] = w[i * da + j].add(&ui.mul(pj));
                }
            }
            let sv = fac.homotopy.maps[0].apply(&w); // in P_1 coords
            let tsi = builder.find_summand(1, &WordShape { starts_left, comp: vec![1] });
            emit_last_letter(builder, &mut acc, fac, tsi, &[], &sv, true, &delta_unit, &f.one());
        }
        return acc.entries;
    }

    let shape = &s.shape;
    let nl = shape.letters();
    let last_left = shape.side(nl - 1);
    let fac = if last_left { left } else { right };
    let other = if last_left { right } else { left };
    let m = shape.comp[nl - 1];
    let da = fac.algebra.dim();

    // same-side part: s_m(gen·(α + same-side ideal part)), sign (-1)^{n-m}
    let same = if last_left { &lam } else { &gam };
    let same_zero = if last_left { lam_zero } else { gam_zero };
    if !alpha.is_zero() || !same_zero {
        // μ = α·1 + same-part as a factor element, acting on the right of the
        // generator via 1⊗μ
        let mut mu = same.clone();
        for (i, ui) in fac.algebra.unit().iter().enumerate() {
            mu[i] = mu[i].add(&alpha.mul(ui));
        }
        let mut env_elt = vec![f.zero(); da * da];
        for (i, ui) in fac.algebra.unit().iter().enumerate() {
            for (j, mj) in mu.iter().enumerate() {
                env_elt[i * da + j] = env_elt[i * da + j].add(&ui.mul(mj));
            }
        }
        let p = fac.res.act(m, &env_elt, &fac.res.generator_vector(m, tuple[nl - 1]));
        let sp = fac.homotopy.maps[m].apply(&p); // in P_{m+1}
        let sign = if (n - m) % 2 == 1 { f.from_i64(-1) } else { f.one() };
        let mut comp2 = shape.comp.clone();
        comp2[nl - 1] = m + 1;
        let tsi = builder
            .find_summand(n + 1, &WordShape { starts_left: shape.starts_left, comp: comp2 });
        emit_last_letter(
            builder,
            &mut acc,
            fac,
            tsi,
            &tuple[..nl - 1],
            &sp,
            nl == 1,
            &delta_unit,
            &sign,
        );
    }

    // cross-side part: append t₀(1⊗γ) as a new degree-1 letter, sign (-1)^n
    let cross = if last_left { &gam } else { &lam };
    let cross_zero = if last_left { gam_zero } else { lam_zero };
    if !cross_zero {
        let db = other.algebra.dim();
        let mut w = vec![f.zero(); db * db];
        for (i, ui) in other.algebra.unit().iter().enumerate() {
            for (j, pj) in cross.iter().enumerate() {
                w[i * db + j] = w[i * db + j].add(&ui.mul(pj));
            }
        }
        let tv = other.homotopy.maps[0].apply(&w); // in Q_1
        let sign = if n % 2 == 1 { f.from_i64(-1) } else { f.one() };
        let mut comp2 = shape.comp.clone();
        comp2.push(1);
        let tsi = builder
            .find_summand(n + 1, &WordShape { starts_left: shape.starts_left, comp: comp2 });
        // the new letter is appended; the old letters keep their indices
        emit_appended_letter(builder, &mut acc, other, tsi, tuple, &tv, &sign);
    }

    acc.entries
}

/// Write a factor-term vector into the last letter slot of a word: left
/// coordinates of the letter either exit to the outer-left position (single
/// letter) or die through ⊗̂ (interior), right coordinates exit to the
/// outer-right.
#[allow(clippy::too_many_arguments)]
fn emit_last_letter(
    builder: &PsqBuilder,
    acc: &mut Accum,
    fac: &FactorData,
    tsi: usize,
    prefix: &[usize],
    letter_vec: &[Scalar],
    single_letter: bool,
    delta_unit: &[Scalar],
    sign: &Scalar,
) {
    let da = fac.algebra.dim();
    for (idx, c) in letter_vec.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let t2 = idx / (da * da);
        let i = (idx % (da * da)) / da;
        let j = idx % da;
        let mut new_tuple = prefix.to_vec();
        new_tuple.push(t2);
        let ti = builder.tuple_index(acc.degree, tsi, &new_tuple);
        let yv = fac.embed.col(j);
        if single_letter {
            let xv = fac.embed.col(i);
            acc.add_outer(tsi, ti, &xv, &yv, &sign.mul(c));
        } else {
            let eps = fac.algebra.aug_row()[i].clone();
            if !eps.is_zero() {
                acc.add_outer(tsi, ti, delta_unit, &yv, &sign.mul(&c.mul(&eps)));
            }
        }
    }
}

/// Append a new degree-1 letter after an existing word: the new letter's
/// left coordinates die through the ⊗̂ junction, its right coordinates exit
/// to the outer-right.
fn emit_appended_letter(
    builder: &PsqBuilder,
    acc: &mut Accum,
    fac: &FactorData,
    tsi: usize,
    tuple: &[usize],
    letter_vec: &[Scalar],
    sign: &Scalar,
) {
    let da = fac.algebra.dim();
    let f = fac.algebra.field();
    let dd = builder.delta.dim();
    let delta_unit = {
        let mut v = vec![f.zero(); dd];
        v[0] = f.one();
        v
    };
    for (idx, c) in letter_vec.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let t2 = idx / (da * da);
        let i = (idx % (da * da)) / da;
        let j = idx % da;
        let eps = fac.algebra.aug_row()[i].clone();
        if eps.is_zero() {
            continue;
        }
        let mut new_tuple = tuple.to_vec();
        new_tuple.push(t2);
        let ti = builder.tuple_index(acc.degree, tsi, &new_tuple);
        acc.add_outer(tsi, ti, &delta_unit, &fac.embed.col(j), &sign.mul(&c.mul(&eps)));
    }
}
