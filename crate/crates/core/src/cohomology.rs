//! Ext and Hochschild cohomology rings.
//!
//! One engine drives everything: given a projective resolution by free
//! modules and a coefficient module M, the degree-n cochains are M^{rank_n}
//! (values on generators) and the coboundary precomposes with the
//! differential. Yoneda products lift the right factor to a chain map and
//! compose. Small resolutions make the k-coefficient differentials vanish;
//! that is asserted, not assumed.

use serde_json::{json, Value};

use crate::algebra::ArcAlgebra;
use crate::error::Error;
use crate::field::{FieldSpec, Scalar};
use crate::matrix::Matrix;
use crate::module::{pivot_columns, ModuleOver};
use crate::morphism::Morphism;
use crate::resolution::{
    bar_resolution, minimal_bimodule_resolution, minimal_resolution, Resolution,
};
use crate::subspace::{RowSpace, Subspace};

/// A cohomology class: degree plus a canonical cocycle representative in
/// flattened cochain coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct CohomClass {
    pub degree: usize,
    pub cocycle: Vec<Scalar>,
    pub canonical: bool,
}

/// One cohomology space H^n with canonical representatives: cocycles and
/// coboundaries are canonical subspaces, class representatives are reduced
/// modulo the coboundary RREF, so class equality is vector equality.
#[derive(Clone, Debug)]
pub struct HSpace {
    pub cocycles: Subspace,
    pub coboundaries: Subspace,
    pub reps: Vec<Vec<Scalar>>,
    rep_solver: Option<Matrix>,
}

impl HSpace {
    fn build(cocycles: Subspace, coboundaries: Subspace) -> HSpace {
        let mut span = RowSpace::seeded(&coboundaries);
        let mut reps = Vec::new();
        for z in cocycles.basis_vectors() {
            if span.insert(z.clone()) {
                reps.push(coboundaries.reduce(&z));
            }
        }
        let rep_solver = if reps.is_empty() {
            None
        } else {
            Some(Matrix::from_rows(coboundaries.field(), reps.clone()).transpose())
        };
        HSpace { cocycles, coboundaries, reps, rep_solver }
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Canonical coset representative of a cocycle.
    pub fn canonical_rep(&self, z: &[Scalar]) -> Vec<Scalar> {
        self.coboundaries.reduce(z)
    }

    /// Coordinates of a cocycle's class in the representative basis.
    pub fn class_coords(&self, z: &[Scalar]) -> Vec<Scalar> {
        let field = self.coboundaries.field();
        let reduced = self.canonical_rep(z);
        match &self.rep_solver {
            None => {
                assert!(reduced.iter().all(|c| c.is_zero()), "nonzero class in zero space");
                Vec::new()
            }
            Some(solver) => {
                let x = solver
                    .solve(&Matrix::column(field, &reduced))
                    .expect("class must lie in the representative span");
                (0..x.rows()).map(|r| x.get(r, 0).clone()).collect()
            }
        }
    }

    /// Cocycle representing the class with the given coordinates.
    pub fn combination(&self, coords: &[Scalar]) -> Vec<Scalar> {
        let field = self.coboundaries.field();
        let n = self.coboundaries.ambient_dim();
        let mut out = vec![field.zero(); n];
        for (c, rep) in coords.iter().zip(self.reps.iter()) {
            if c.is_zero() {
                continue;
            }
            for (o, r) in out.iter_mut().zip(rep.iter()) {
                *o = o.add(&c.mul(r));
            }
        }
        out
    }
}

/// Cohomology of Hom_ring(P_*, M).
pub struct HomCohomology {
    pub coeff_dim: usize,
    /// coboundary matrices C^n -> C^{n+1}, n = 0..
    pub cobound: Vec<Matrix>,
    /// H^0 .. H^{up_to}
    pub spaces: Vec<HSpace>,
}

fn diff_of_generator(res: &Resolution, n: usize, u: usize) -> Vec<Scalar> {
    res.diff(n).apply(&res.generator_vector(n, u))
}

/// Coboundary matrices of Hom(P, M): (Df)(gen) = f(d gen), the ring
/// coordinates of d(gen) acting on values through M.
pub fn hom_coboundaries(res: &Resolution, coeff: &ModuleOver, up_to_diff: usize) -> Vec<Matrix> {
    let f = res.ring.field();
    let rd = res.ring.dim();
    let m = coeff.dim;
    let mut out = Vec::new();
    for n in 0..up_to_diff.min(res.diffs.len()) {
        let r_n = res.ranks[n];
        let r_next = res.ranks[n + 1];
        let mut mat = Matrix::zero(f, r_next * m, r_n * m);
        for u in 0..r_next {
            let dg = diff_of_generator(res, n + 1, u);
            for (idx, c) in dg.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let t = idx / rd;
                let i = idx % rd;
                for a in 0..m {
                    for b in 0..m {
                        let v = coeff.action[i].get(a, b);
                        if v.is_zero() {
                            continue;
                        }
                        let cur = mat.get(u * m + a, t * m + b).add(&c.mul(v));
                        mat.set(u * m + a, t * m + b, cur);
                    }
                }
            }
        }
        out.push(mat);
    }
    out
}

/// H-spaces of an arbitrary cochain complex given by its coboundary
/// matrices (`cobound[n]`: C^n -> C^{n+1}); computes H^0..H^{cobound.len()-1}.
pub fn spaces_from_coboundaries(field: FieldSpec, cobound: &[Matrix]) -> Vec<HSpace> {
    let mut spaces = Vec::new();
    for n in 0..cobound.len() {
        let dim_cn = cobound[n].cols();
        let cocycles = Subspace::from_spanning(&cobound[n].kernel());
        let cob = if n == 0 {
            Subspace::zero(field, dim_cn)
        } else {
            let prev = &cobound[n - 1];
            let rows: Vec<Vec<Scalar>> = (0..prev.cols()).map(|c| prev.col(c)).collect();
            Subspace::from_vectors(field, dim_cn, &rows)
        };
        spaces.push(HSpace::build(cocycles, cob));
    }
    spaces
}

/// Build H^0 .. H^{up_to}; the resolution must reach degree up_to + 1.
pub fn hom_cohomology(res: &Resolution, coeff: &ModuleOver, up_to: usize) -> HomCohomology {
    assert!(res.top_degree() >= up_to + 1, "resolution too short for H^{up_to}");
    let f = res.ring.field();
    let m = coeff.dim;
    let cobound = hom_coboundaries(res, coeff, up_to + 1);
    let spaces = spaces_from_coboundaries(f, &cobound[..=up_to]);
    HomCohomology { coeff_dim: m, cobound, spaces }
}

/// Lift a degree-p cochain (values on generators of F_p, in target-module
/// coordinates) to a chain map: `maps[i]`: F_{p+i} -> F_i with
/// aug ∘ `maps[0]` = the cochain. Deterministic: free variables zero.
pub fn lift_to_chain(
    res: &Resolution,
    p: usize,
    values: &[Vec<Scalar>],
    up_to: usize,
) -> Result<Vec<Matrix>, Error> {
    let f = res.ring.field();
    let rd = res.ring.dim();
    assert_eq!(values.len(), res.ranks[p]);
    let mut maps: Vec<Matrix> = Vec::new();
    for i in 0..=up_to {
        let src = p + i;
        if src > res.top_degree() {
            break;
        }
        let mut gen_images: Vec<Vec<Scalar>> = Vec::new();
        if i == 0 {
            let rhs =
                Matrix::from_fn(f, res.target.dim, res.ranks[p], |r, c| values[c][r].clone());
            let sol = res.aug.solve(&rhs).map_err(|_| {
                Error::Invalid("cocycle values not in the image of the augmentation".into())
            })?;
            for t in 0..res.ranks[p] {
                gen_images.push(sol.col(t));
            }
        } else {
            let mut rhs_cols = Vec::new();
            for t in 0..res.ranks[src] {
                let dg = diff_of_generator(res, src, t);
                rhs_cols.push(maps[i - 1].apply(&dg));
            }
            let rhs = Matrix::from_fn(f, res.term_dim(i - 1), res.ranks[src], |r, c| {
                rhs_cols[c][r].clone()
            });
            let sol = res
                .diff(i)
                .solve(&rhs)
                .map_err(|_| Error::Invalid(format!("chain lift failed at stage {i}")))?;
            for t in 0..res.ranks[src] {
                gen_images.push(sol.col(t));
            }
        }
        let mut mat = Matrix::zero(f, res.term_dim(i), res.term_dim(src));
        for (t, g) in gen_images.iter().enumerate() {
            for j in 0..rd {
                let img = res.act(i, &res.ring.basis_vector(j), g);
                for (r, c) in img.into_iter().enumerate() {
                    mat.set(r, t * rd + j, c);
                }
            }
        }
        maps.push(mat);
    }
    Ok(maps)
}

/// Lift a cohomology class to a chain map (values taken from its canonical
/// cocycle). Any two lifts of cohomologous cocycles induce the same
/// products, which the ring tables assert through associativity and
/// graded-commutativity checks.
pub fn lift_cocycle(
    res: &Resolution,
    class: &CohomClass,
    coeff_dim: usize,
    up_to: usize,
) -> Result<Vec<Matrix>, Error> {
    let values = unflatten(&class.cocycle, res.ranks[class.degree], coeff_dim);
    lift_to_chain(res, class.degree, &values, up_to)
}

/// Evaluate a cochain on an element of F_n.
pub fn evaluate_cochain(
    res: &Resolution,
    coeff: &ModuleOver,
    values: &[Vec<Scalar>],
    v: &[Scalar],
) -> Vec<Scalar> {
    let f = res.ring.field();
    let rd = res.ring.dim();
    let mut out = vec![f.zero(); coeff.dim];
    for (idx, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let t = idx / rd;
        let i = idx % rd;
        let acted = coeff.act_basis(i, &values[t]);
        for (o, x) in out.iter_mut().zip(acted.iter()) {
            *o = o.add(&c.mul(x));
        }
    }
    out
}

pub fn unflatten(v: &[Scalar], rank: usize, m: usize) -> Vec<Vec<Scalar>> {
    (0..rank).map(|t| v[t * m..(t + 1) * m].to_vec()).collect()
}

fn basis_vec(field: FieldSpec, dim: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![field.zero(); dim];
    v[i] = field.one();
    v
}

/// A graded ring presented by per-degree bases and structure constants up
/// to a degree bound.
#[derive(Clone, Debug)]
pub struct GradedRingTable {
    pub field: FieldSpec,
    pub dims: Vec<usize>,
    pub labels: Vec<Vec<String>>,
    /// `mul[d1][d2][i * dims[d2] + j]` = coordinates in degree d1+d2
    pub mul: Vec<Vec<Vec<Vec<Scalar>>>>,
    /// coordinates of the ring unit in degree 0
    pub unit: Vec<Scalar>,
}

impl GradedRingTable {
    pub fn bound(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn product(
        &self,
        d1: usize,
        v1: &[Scalar],
        d2: usize,
        v2: &[Scalar],
    ) -> Option<Vec<Scalar>> {
        if d1 + d2 > self.bound() {
            return None;
        }
        let target = self.dims[d1 + d2];
        let mut out = vec![self.field.zero(); target];
        for (i, a) in v1.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in v2.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let entry = &self.mul[d1][d2][i * self.dims[d2] + j];
                let c = a.mul(b);
                for (o, e) in out.iter_mut().zip(entry.iter()) {
                    *o = o.add(&c.mul(e));
                }
            }
        }
        Some(out)
    }

    /// n-th power of a homogeneous element; None when it escapes the bound.
    pub fn power(&self, d: usize, v: &[Scalar], n: usize) -> Option<(usize, Vec<Scalar>)> {
        assert!(n >= 1);
        let mut acc = v.to_vec();
        let mut deg = d;
        for _ in 1..n {
            acc = self.product(deg, &acc, d, v)?;
            deg += d;
        }
        Some((deg, acc))
    }

    pub fn check_associativity(&self) -> bool {
        for d1 in 0..=self.bound() {
            for d2 in 0..=self.bound() - d1 {
                for d3 in 0..=self.bound() - d1 - d2 {
                    for i in 0..self.dims[d1] {
                        for j in 0..self.dims[d2] {
                            for k in 0..self.dims[d3] {
                                let e1 = basis_vec(self.field, self.dims[d1], i);
                                let e2 = basis_vec(self.field, self.dims[d2], j);
                                let e3 = basis_vec(self.field, self.dims[d3], k);
                                let left = self
                                    .product(d1, &e1, d2, &e2)
                                    .and_then(|p| self.product(d1 + d2, &p, d3, &e3));
                                let right = self
                                    .product(d2, &e2, d3, &e3)
                                    .and_then(|p| self.product(d1, &e1, d2 + d3, &p));
                                if left != right {
                                    return false;
                                }
                            }
                        }
                    }
                }
            }
        }
        true
    }

    /// ab = (-1)^{|a||b|} ba on all in-range basis pairs.
    pub fn check_graded_commutative(&self) -> bool {
        for d1 in 0..=self.bound() {
            for d2 in 0..=self.bound() - d1 {
                for i in 0..self.dims[d1] {
                    for j in 0..self.dims[d2] {
                        let e1 = basis_vec(self.field, self.dims[d1], i);
                        let e2 = basis_vec(self.field, self.dims[d2], j);
                        let ab = self.product(d1, &e1, d2, &e2).unwrap();
                        let ba = self.product(d2, &e2, d1, &e1).unwrap();
                        let sign = if d1 * d2 % 2 == 1 {
                            self.field.from_i64(-1)
                        } else {
                            self.field.one()
                        };
                        let signed: Vec<Scalar> = ba.iter().map(|c| sign.mul(c)).collect();
                        if ab != signed {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Graded centre, degree by degree, tested against every basis element
    /// whose product stays within the bound.
    pub fn graded_center(&self) -> Vec<Subspace> {
        let mut out = Vec::new();
        for d in 0..=self.bound() {
            let m = self.dims[d];
            if m == 0 {
                out.push(Subspace::zero(self.field, 0));
                continue;
            }
            let mut rows: Vec<Vec<Scalar>> = Vec::new();
            for e in 0..=self.bound() - d {
                for g in 0..self.dims[e] {
                    let ge = basis_vec(self.field, self.dims[e], g);
                    let sign =
                        if d * e % 2 == 1 { self.field.from_i64(-1) } else { self.field.one() };
                    let mut cols = Vec::with_capacity(m);
                    for zi in 0..m {
                        let ze = basis_vec(self.field, m, zi);
                        let zg = self.product(d, &ze, e, &ge).unwrap();
                        let gz = self.product(e, &ge, d, &ze).unwrap();
                        let diff: Vec<Scalar> =
                            zg.iter().zip(gz.iter()).map(|(a, b)| a.sub(&sign.mul(b))).collect();
                        cols.push(diff);
                    }
                    for r in 0..self.dims[d + e] {
                        if cols.iter().any(|c| !c[r].is_zero()) {
                            rows.push(cols.iter().map(|c| c[r].clone()).collect());
                        }
                    }
                }
            }
            let cond = if rows.is_empty() {
                Matrix::zero(self.field, 0, m)
            } else {
                Matrix::from_rows(self.field, rows)
            };
            out.push(Subspace::from_spanning(&cond.kernel()));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let mut entries = Vec::new();
        for d1 in 0..=self.bound() {
            for d2 in 0..=self.bound() - d1 {
                for i in 0..self.dims[d1] {
                    for j in 0..self.dims[d2] {
                        for (k, c) in self.mul[d1][d2][i * self.dims[d2] + j].iter().enumerate() {
                            if !c.is_zero() {
                                entries.push(json!([d1, i, d2, j, k, c.to_json()]));
                            }
                        }
                    }
                }
            }
        }
        json!({
            "dims": self.dims,
            "labels": self.labels,
            "unit": self.unit.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
            "mul": entries,
        })
    }
}

/// The Ext ring E(A) = Ext_A(k,k) computed from a small resolution of k.
pub struct ExtComputation {
    pub resolution: Resolution,
    pub table: GradedRingTable,
}

/// Build the ring table from a small resolution of k: E^n is dual to the
/// generators of F_n and products compose chain-map lifts (fixed
/// orientation: class(f)·class(g) = class(f ∘ lift(g))).
pub fn ext_table_from_resolution(res: &Resolution, n_max: usize) -> Result<GradedRingTable, Error> {
    if !res.small {
        return Err(Error::NotSmall("Ext tables need a small resolution".into()));
    }
    assert!(res.top_degree() >= n_max);
    let f = res.ring.field();
    if res.top_degree() >= 1 {
        let triv = ModuleOver::trivial(res.ring.clone());
        for (n, d) in hom_coboundaries(res, &triv, n_max).iter().enumerate() {
            if !d.is_zero() {
                return Err(Error::NotSmall(format!(
                    "k-coefficient differential nonzero at degree {n}"
                )));
            }
        }
    }
    let dims: Vec<usize> = (0..=n_max).map(|n| res.ranks[n]).collect();
    let labels: Vec<Vec<String>> = dims
        .iter()
        .enumerate()
        .map(|(n, &m)| (0..m).map(|i| format!("e{n}_{i}")).collect())
        .collect();

    let mut lifts: Vec<Vec<Vec<Matrix>>> = Vec::with_capacity(n_max + 1);
    for q in 0..=n_max {
        let mut per_basis = Vec::new();
        for t in 0..res.ranks[q] {
            let values: Vec<Vec<Scalar>> = (0..res.ranks[q])
                .map(|s| if s == t { vec![f.one()] } else { vec![f.zero()] })
                .collect();
            per_basis.push(lift_to_chain(res, q, &values, n_max - q)?);
        }
        lifts.push(per_basis);
    }

    let triv = ModuleOver::trivial(res.ring.clone());
    let mut mul = vec![vec![Vec::new(); n_max + 1]; n_max + 1];
    for d1 in 0..=n_max {
        for d2 in 0..=n_max - d1 {
            let mut cell = Vec::with_capacity(dims[d1] * dims[d2]);
            for i in 0..dims[d1] {
                let fi: Vec<Vec<Scalar>> = (0..res.ranks[d1])
                    .map(|s| if s == i { vec![f.one()] } else { vec![f.zero()] })
                    .collect();
                for j in 0..dims[d2] {
                    let stage = &lifts[d2][j][d1];
                    let mut coords = vec![f.zero(); dims[d1 + d2]];
                    for (t, c) in coords.iter_mut().enumerate() {
                        let g = res.generator_vector(d1 + d2, t);
                        let img = stage.apply(&g);
                        let val = evaluate_cochain(res, &triv, &fi, &img);
                        *c = val[0].clone();
                    }
                    cell.push(coords);
                }
            }
            mul[d1][d2] = cell;
        }
    }
    Ok(GradedRingTable { field: f, dims, labels, mul, unit: vec![f.one()] })
}

/// E(a) via the minimal resolution of k over a.
pub fn ext_ring(a: &ArcAlgebra, n_max: usize) -> Result<ExtComputation, Error> {
    let res = minimal_resolution(a, &ModuleOver::trivial(a.clone()), n_max + 1)?;
    let table = ext_table_from_resolution(&res, n_max)?;
    Ok(ExtComputation { resolution: res, table })
}

/// Ext dims: the ranks of the minimal resolution.
pub fn ext_dims(a: &ArcAlgebra, n_max: usize) -> Result<Vec<usize>, Error> {
    let res = minimal_resolution(a, &ModuleOver::trivial(a.clone()), n_max)?;
    Ok(res.ranks.clone())
}

/// Ext dims with a bar-resolution fallback for finite-dimensional algebras
/// that are not local (no small resolution available).
pub fn ext_groups(a: &ArcAlgebra, n_max: usize) -> Vec<usize> {
    match ext_dims(a, n_max) {
        Ok(d) => d,
        Err(_) => ext_dims_via_bar(a, n_max),
    }
}

/// HH dims with the Hochschild-cochain fallback for finite-dimensional
/// algebras that are not local.
pub fn hh_groups(a: &ArcAlgebra, n_max: usize) -> Vec<usize> {
    match hh_ring(a, n_max) {
        Ok(h) => h.dims(),
        Err(_) => hh_dims_via_bar(a, n_max),
    }
}

/// Oracle: Ext dims as the cohomology of Hom(bar resolution, k).
pub fn ext_dims_via_bar(a: &ArcAlgebra, n_max: usize) -> Vec<usize> {
    let bar = bar_resolution(a, n_max + 1);
    let triv = ModuleOver::trivial(a.clone());
    let hc = hom_cohomology(&bar, &triv, n_max);
    hc.spaces.iter().map(|s| s.dim()).collect()
}

/// Hochschild cohomology with its Yoneda product.
pub struct HhComputation {
    pub a: ArcAlgebra,
    pub env: ArcAlgebra,
    pub res: Resolution,
    pub coeff: ModuleOver,
    pub hom: HomCohomology,
    pub table: GradedRingTable,
}

impl HhComputation {
    pub fn dims(&self) -> Vec<usize> {
        self.hom.spaces.iter().map(|s| s.dim()).collect()
    }
}

/// HH(a) on the minimal bimodule resolution.
pub fn hh_ring(a: &ArcAlgebra, n_max: usize) -> Result<HhComputation, Error> {
    let (res, env) = minimal_bimodule_resolution(a, n_max + 1)?;
    hh_ring_on_resolution(a, &env, res, n_max)
}

/// HH on any projective bimodule resolution of `a` starting at a^e.
pub fn hh_ring_on_resolution(
    a: &ArcAlgebra,
    env: &ArcAlgebra,
    res: Resolution,
    n_max: usize,
) -> Result<HhComputation, Error> {
    let coeff = ModuleOver::bimodule_self(a, env);
    let hom = hom_cohomology(&res, &coeff, n_max);
    let table = cohomology_ring_table(&res, &coeff, &hom, n_max, "h")?;
    Ok(HhComputation { a: a.clone(), env: env.clone(), res, coeff, hom, table })
}

/// Ring table of H^*(Hom(P, coeff)) where the coefficient module is the
/// resolved algebra itself (so cochain values multiply through lifts).
pub fn cohomology_ring_table(
    res: &Resolution,
    coeff: &ModuleOver,
    hom: &HomCohomology,
    n_max: usize,
    label_prefix: &str,
) -> Result<GradedRingTable, Error> {
    let f = res.ring.field();
    let dims: Vec<usize> = hom.spaces.iter().take(n_max + 1).map(|s| s.dim()).collect();
    let labels: Vec<Vec<String>> = dims
        .iter()
        .enumerate()
        .map(|(n, &m)| (0..m).map(|i| format!("{label_prefix}{n}_{i}")).collect())
        .collect();

    let mut lifts: Vec<Vec<Vec<Matrix>>> = Vec::with_capacity(n_max + 1);
    for q in 0..=n_max {
        let mut per_basis = Vec::new();
        for rep in &hom.spaces[q].reps {
            let values = unflatten(rep, res.ranks[q], coeff.dim);
            per_basis.push(lift_to_chain(res, q, &values, n_max - q)?);
        }
        lifts.push(per_basis);
    }

    let mut mul = vec![vec![Vec::new(); n_max + 1]; n_max + 1];
    for d1 in 0..=n_max {
        for d2 in 0..=n_max - d1 {
            let mut cell = Vec::with_capacity(dims[d1] * dims[d2]);
            for i in 0..dims[d1] {
                let fi = unflatten(&hom.spaces[d1].reps[i], res.ranks[d1], coeff.dim);
                for j in 0..dims[d2] {
                    let stage = &lifts[d2][j][d1];
                    let mut z = Vec::with_capacity(res.ranks[d1 + d2] * coeff.dim);
                    for t in 0..res.ranks[d1 + d2] {
                        let g = res.generator_vector(d1 + d2, t);
                        let img = stage.apply(&g);
                        z.extend(evaluate_cochain(res, coeff, &fi, &img));
                    }
                    cell.push(hom.spaces[d1 + d2].class_coords(&z));
                }
            }
            mul[d1][d2] = cell;
        }
    }

    // unit: the class of the augmentation viewed as a degree-0 cocycle
    let unit_cocycle: Vec<Scalar> = {
        let mut z = Vec::new();
        for t in 0..res.ranks[0] {
            let g = res.generator_vector(0, t);
            z.extend(res.aug.apply(&g));
        }
        z
    };
    let unit = hom.spaces[0].class_coords(&unit_cocycle);
    Ok(GradedRingTable { field: f, dims, labels, mul, unit })
}

/// HH dims through the Hochschild cochain complex Hom_k(A^{⊗n}, A) (the
/// Hom-dual of the bar bimodule resolution), independent of any minimal
/// resolution.
pub fn hh_dims_via_bar(a: &ArcAlgebra, n_max: usize) -> Vec<usize> {
    let f = a.field();
    let d = a.dim();
    let tuples = |n: usize| -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|t: Vec<usize>| {
                    (0..d).map(move |i| {
                        let mut s = t.clone();
                        s.push(i);
                        s
                    })
                })
                .collect();
        }
        out
    };
    let index = |t: &[usize]| -> usize { t.iter().fold(0, |acc, &i| acc * d + i) };
    let mut cobound: Vec<Matrix> = Vec::new();
    for n in 0..=n_max {
        let src_dim = d.pow(n as u32) * d;
        let tgt_dim = d.pow((n + 1) as u32) * d;
        let mut mat = Matrix::zero(f, tgt_dim, src_dim);
        for (ti, t) in tuples(n + 1).iter().enumerate() {
            {
                // a_{t0} · f(a_{t1} ⊗ ... )
                let rest = index(&t[1..]);
                let left = a.left_mult_matrix(&a.basis_vector(t[0]));
                for r in 0..d {
                    for c in 0..d {
                        let v = left.get(r, c);
                        if !v.is_zero() {
                            let cur = mat.get(ti * d + r, rest * d + c).add(v);
                            mat.set(ti * d + r, rest * d + c, cur);
                        }
                    }
                }
            }
            for i in 0..n {
                let sign = if (i + 1) % 2 == 1 { f.from_i64(-1) } else { f.one() };
                for (k, c) in a.basis_product(t[i], t[i + 1]) {
                    let mut s = Vec::with_capacity(n);
                    s.extend_from_slice(&t[..i]);
                    s.push(*k);
                    s.extend_from_slice(&t[i + 2..]);
                    let col = index(&s);
                    for r in 0..d {
                        let cur = mat.get(ti * d + r, col * d + r).add(&sign.mul(c));
                        mat.set(ti * d + r, col * d + r, cur);
                    }
                }
            }
            {
                // (-1)^{n+1} f(...) · a_{tn}
                let sign = if (n + 1) % 2 == 1 { f.from_i64(-1) } else { f.one() };
                let front = index(&t[..n]);
                let rightm = a.right_mult_matrix(&a.basis_vector(t[n]));
                for r in 0..d {
                    for c in 0..d {
                        let v = rightm.get(r, c);
                        if !v.is_zero() {
                            let cur = mat.get(ti * d + r, front * d + c).add(&sign.mul(v));
                            mat.set(ti * d + r, front * d + c, cur);
                        }
                    }
                }
            }
        }
        cobound.push(mat);
    }
    let mut dims = Vec::new();
    for n in 0..=n_max {
        let dim_cn = d.pow(n as u32) * d;
        let z = dim_cn - cobound[n].rank();
        let b = if n == 0 { 0 } else { cobound[n - 1].rank() };
        dims.push(z - b);
    }
    dims
}

/// E(f): E(target) -> E(source) through a comparison chain map.
pub struct ExtFunctorResult {
    pub source_ext: ExtComputation,
    pub target_ext: ExtComputation,
    /// per-degree matrices E^n(target) -> E^n(source)
    pub maps: Vec<Matrix>,
}

pub fn ext_functor(fm: &Morphism, n_max: usize) -> Result<ExtFunctorResult, Error> {
    let source_ext = ext_ring(&fm.source, n_max)?;
    let target_ext = ext_ring(&fm.target, n_max)?;
    let maps =
        ext_functor_on_resolutions(fm, &source_ext.resolution, &target_ext.resolution, n_max)?;
    Ok(ExtFunctorResult { source_ext, target_ext, maps })
}

pub fn ext_functor_on_resolutions(
    fm: &Morphism,
    res_s: &Resolution,
    res_t: &Resolution,
    n_max: usize,
) -> Result<Vec<Matrix>, Error> {
    let h = comparison_chain(fm, res_s, res_t, n_max)?;
    let f = fm.source.field();
    let rd_t = fm.target.dim();
    let mut maps = Vec::new();
    for (n, hn) in h.iter().enumerate() {
        let rs = res_s.ranks[n];
        let rt = res_t.ranks[n];
        let mut m = Matrix::zero(f, rs, rt);
        for s in 0..rs {
            let g = res_s.generator_vector(n, s);
            let img = hn.apply(&g);
            for (idx, c) in img.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let t = idx / rd_t;
                let b = idx % rd_t;
                let eps = fm.target.aug_row()[b].clone();
                if !eps.is_zero() {
                    let cur = m.get(s, t).add(&c.mul(&eps));
                    m.set(s, t, cur);
                }
            }
        }
        maps.push(m);
    }
    Ok(maps)
}

/// Comparison chain maps H_i: F^S_i -> F^T_i lifting id_k along the algebra
/// morphism f; the target resolution is a complex of source-modules via f.
pub fn comparison_chain(
    fm: &Morphism,
    res_s: &Resolution,
    res_t: &Resolution,
    up_to: usize,
) -> Result<Vec<Matrix>, Error> {
    let f = fm.source.field();
    let rd_s = fm.source.dim();
    let mut maps: Vec<Matrix> = Vec::new();
    for i in 0..=up_to {
        let mut gen_images: Vec<Vec<Scalar>> = Vec::new();
        if i == 0 {
            let mut rhs_cols = Vec::new();
            for t in 0..res_s.ranks[0] {
                let g = res_s.generator_vector(0, t);
                rhs_cols.push(res_s.aug.apply(&g));
            }
            let rhs = Matrix::from_fn(f, res_t.target.dim, rhs_cols.len(), |r, c| {
                rhs_cols[c][r].clone()
            });
            let sol = res_t
                .aug
                .solve(&rhs)
                .map_err(|_| Error::Invalid("comparison start failed".into()))?;
            for t in 0..res_s.ranks[0] {
                gen_images.push(sol.col(t));
            }
        } else {
            let mut rhs_cols = Vec::new();
            for t in 0..res_s.ranks[i] {
                let dg = diff_of_generator(res_s, i, t);
                rhs_cols.push(maps[i - 1].apply(&dg));
            }
            let rhs = Matrix::from_fn(f, res_t.term_dim(i - 1), rhs_cols.len(), |r, c| {
                rhs_cols[c][r].clone()
            });
            let sol = res_t
                .diff(i)
                .solve(&rhs)
                .map_err(|_| Error::Invalid(format!("comparison failed at {i}")))?;
            for t in 0..res_s.ranks[i] {
                gen_images.push(sol.col(t));
            }
        }
        // assemble with the twisted structure: column (t, e_j) = f(e_j)·H(gen_t)
        let mut m = Matrix::zero(f, res_t.term_dim(i), res_s.term_dim(i));
        for (t, g) in gen_images.iter().enumerate() {
            for j in 0..rd_s {
                let fj = fm.apply(&fm.source.basis_vector(j));
                let img = res_t.act(i, &fj, g);
                for (r, c) in img.into_iter().enumerate() {
                    m.set(r, t * rd_s + j, c);
                }
            }
        }
        maps.push(m);
    }
    Ok(maps)
}

/// A long exact sequence with dims, maps, and a rank-based exactness check.
#[derive(Clone, Debug)]
pub struct LESRecord {
    pub nodes: Vec<(String, usize)>,
    /// `maps[i]`: `nodes[i]` -> `nodes[i+1]`
    pub maps: Vec<Matrix>,
    /// the sequence starts from 0, so the first map must be injective
    pub leading_zero: bool,
}

impl LESRecord {
    /// Exact at every interior node (and injectivity at the start when the
    /// sequence begins with 0).
    pub fn verify_exact(&self) -> bool {
        if self.maps.is_empty() {
            return self.nodes.is_empty();
        }
        if self.leading_zero {
            let m0 = &self.maps[0];
            if m0.rank() != self.nodes[0].1 {
                return false;
            }
        }
        for i in 0..self.maps.len().saturating_sub(1) {
            let outgoing = &self.maps[i + 1];
            let incoming = &self.maps[i];
            if !outgoing.mul(incoming).is_zero() {
                return false;
            }
            let dim = self.nodes[i + 1].1;
            if incoming.rank() != dim - outgoing.rank() {
                return false;
            }
        }
        true
    }

    pub fn dims_json(&self) -> Value {
        json!(self
            .nodes
            .iter()
            .map(|(n, d)| json!({ "node": n, "dim": d }))
            .collect::<Vec<_>>())
    }
}

/// φ_k: HH(a) -> E(a) with the long exact sequence induced by
/// 0 -> I(a) -> a -> k -> 0, the identification of the k-coefficient
/// cohomology with E(a), and the kernel as canonical subspaces.
pub struct PhiK {
    pub hh: HhComputation,
    pub ext: ExtComputation,
    pub les: LESRecord,
    /// per-degree matrices: HH^n class coords -> E^n table coords
    pub phi: Vec<Matrix>,
    /// kernel of φ_k per degree, in HH class coordinates
    pub kernel: Vec<Subspace>,
}

pub fn phi_k(a: &ArcAlgebra, n_max: usize) -> Result<PhiK, Error> {
    phi_k_impl(a, n_max, true)
}

/// φ_k and its kernel without the long exact sequence bookkeeping (one
/// homological degree cheaper).
pub fn phi_k_light(a: &ArcAlgebra, n_max: usize) -> Result<PhiK, Error> {
    phi_k_impl(a, n_max, false)
}

fn phi_k_impl(a: &ArcAlgebra, n_max: usize, with_les: bool) -> Result<PhiK, Error> {
    let f = a.field();
    let depth = if with_les { n_max + 2 } else { n_max + 1 };
    let (res, env) = minimal_bimodule_resolution(a, depth)?;
    let coeff_a = ModuleOver::bimodule_self(a, &env);

    // coefficient modules: I(a) as a sub-bimodule, k as the trivial module
    let ideal = a.augmentation_ideal();
    let coeff_i = coeff_a.submodule(&ideal);
    let coeff_k = ModuleOver::trivial(env.clone());

    let hom_depth = if with_les { n_max + 1 } else { n_max };
    let hom_a = hom_cohomology(&res, &coeff_a, hom_depth);
    let hom_i = if with_les {
        Some(hom_cohomology(&res, &coeff_i, hom_depth))
    } else {
        None
    };
    let hom_k = hom_cohomology(&res, &coeff_k, hom_depth);

    // sanity: smallness makes the k-coefficient differentials vanish, so
    // H^n(Hom(P,k)) has dimension rank_n = dim E^n
    for (n, d) in hom_k.cobound.iter().take(n_max + 1).enumerate() {
        if !d.is_zero() {
            return Err(Error::NotSmall(format!("Hom(P,k) differential nonzero at {n}")));
        }
    }

    let table = cohomology_ring_table(&res, &coeff_a, &hom_a, n_max, "h")?;
    let hh = HhComputation {
        a: a.clone(),
        env: env.clone(),
        res,
        coeff: coeff_a.clone(),
        hom: hom_a,
        table,
    };
    let ext = ext_ring(a, n_max + 1)?;

    // cochain-level maps
    let ideal_rows = ideal.basis_vectors();
    let ideal_pivots = pivot_columns(&ideal);
    let include_i = |n: usize, v: &[Scalar]| -> Vec<Scalar> {
        // C_I^n -> C_Λ^n blockwise through the ideal basis
        let rank = hh.res.ranks[n];
        let mi = ideal.dim();
        let da = a.dim();
        let mut out = vec![f.zero(); rank * da];
        for t in 0..rank {
            for (c, row) in ideal_rows.iter().enumerate() {
                let x = &v[t * mi + c];
                if x.is_zero() {
                    continue;
                }
                for (i, r) in row.iter().enumerate() {
                    out[t * da + i] = out[t * da + i].add(&x.mul(r));
                }
            }
        }
        out
    };
    let project_eps = |n: usize, v: &[Scalar]| -> Vec<Scalar> {
        let rank = hh.res.ranks[n];
        let da = a.dim();
        let mut out = vec![f.zero(); rank];
        for (t, o) in out.iter_mut().enumerate() {
            *o = a.aug_of(&v[t * da..(t + 1) * da]);
        }
        out
    };
    let restrict_to_i = |n: usize, v: &[Scalar]| -> Vec<Scalar> {
        // values must lie in I; read coordinates off the pivots
        let rank = hh.res.ranks[n];
        let da = a.dim();
        let mi = ideal.dim();
        let mut out = vec![f.zero(); rank * mi];
        for t in 0..rank {
            let slice = &v[t * da..(t + 1) * da];
            debug_assert!(ideal.contains_vector(slice), "value escaped I(a)");
            for (c, &p) in ideal_pivots.iter().enumerate() {
                out[t * mi + c] = slice[p].clone();
            }
        }
        out
    };

    // class-level LES maps
    let mut nodes = Vec::new();
    let mut maps = Vec::new();
    for n in 0..=n_max {
        if !with_les {
            break;
        }
        let hom_i = hom_i.as_ref().unwrap();
        nodes.push((format!("Ext^{n}(A,I)"), hom_i.spaces[n].dim()));
        nodes.push((format!("HH^{n}"), hh.hom.spaces[n].dim()));
        nodes.push((format!("E^{n}"), hom_k.spaces[n].dim()));
        // ι*: H_I^n -> HH^n
        let mut iota = Matrix::zero(f, hh.hom.spaces[n].dim(), hom_i.spaces[n].dim());
        for (c, rep) in hom_i.spaces[n].reps.iter().enumerate() {
            let coords = hh.hom.spaces[n].class_coords(&include_i(n, rep));
            for (r, x) in coords.into_iter().enumerate() {
                iota.set(r, c, x);
            }
        }
        maps.push(iota);
        // φ: HH^n -> H_k^n
        let mut phi_n = Matrix::zero(f, hom_k.spaces[n].dim(), hh.hom.spaces[n].dim());
        for (c, rep) in hh.hom.spaces[n].reps.iter().enumerate() {
            let coords = hom_k.spaces[n].class_coords(&project_eps(n, rep));
            for (r, x) in coords.into_iter().enumerate() {
                phi_n.set(r, c, x);
            }
        }
        maps.push(phi_n);
        // ω: H_k^n -> H_I^{n+1}: lift α to Λ-values and take the coboundary
        if n < n_max {
            let mut omega = Matrix::zero(f, hom_i.spaces[n + 1].dim(), hom_k.spaces[n].dim());
            for (c, rep) in hom_k.spaces[n].reps.iter().enumerate() {
                let lifted: Vec<Scalar> = {
                    let rank = hh.res.ranks[n];
                    let da = a.dim();
                    let mut out = vec![f.zero(); rank * da];
                    for t in 0..rank {
                        for (i, u) in a.unit().iter().enumerate() {
                            out[t * da + i] = rep[t].mul(u);
                        }
                    }
                    out
                };
                // coboundary in the Λ-coefficient complex has values in I
                let db = cochain_coboundary(&hh.res, &coeff_a, n, &lifted);
                let coords = hom_i.spaces[n + 1].class_coords(&restrict_to_i(n + 1, &db));
                for (r, x) in coords.into_iter().enumerate() {
                    omega.set(r, c, x);
                }
            }
            maps.push(omega);
        }
    }

    let les = LESRecord { nodes, maps, leading_zero: true };

    // φ into the E-table coordinates through the reduced resolution
    let reduced = reduce_bimodule_resolution(a, &hh.res);
    let id = Morphism::identity(a.clone());
    let h = comparison_chain(&id, &ext.resolution, &reduced, n_max)?;
    let mut phi = Vec::new();
    let mut kernel = Vec::new();
    for n in 0..=n_max {
        // HH^n class -> values on P_n generators in k -> pull back along h
        let rd = a.dim();
        let mut m = Matrix::zero(f, ext.resolution.ranks[n], hh.hom.spaces[n].dim());
        for (c, rep) in hh.hom.spaces[n].reps.iter().enumerate() {
            let alpha = project_eps(n, rep); // values on P_n generators
            for s in 0..ext.resolution.ranks[n] {
                let g = ext.resolution.generator_vector(n, s);
                let img = h[n].apply(&g); // in reduced_n coords (t, a-basis)
                let mut val = f.zero();
                for (idx, x) in img.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    let t = idx / rd;
                    let b = idx % rd;
                    let eps = a.aug_row()[b].clone();
                    if !eps.is_zero() {
                        val = val.add(&x.mul(&eps.mul(&alpha[t])));
                    }
                }
                m.set(s, c, val);
            }
        }
        kernel.push(Subspace::from_spanning(&m.kernel()));
        phi.push(m);
    }

    Ok(PhiK { hh, ext, les, phi, kernel })
}

/// Apply the Hom(P, M) coboundary to one cochain.
pub fn cochain_coboundary(
    res: &Resolution,
    coeff: &ModuleOver,
    n: usize,
    v: &[Scalar],
) -> Vec<Scalar> {
    let values = unflatten(v, res.ranks[n], coeff.dim);
    let mut out = Vec::with_capacity(res.ranks[n + 1] * coeff.dim);
    for u in 0..res.ranks[n + 1] {
        let dg = diff_of_generator(res, n + 1, u);
        out.extend(evaluate_cochain(res, coeff, &values, &dg));
    }
    out
}

/// P ⊗_Λ k: the one-sided reduction of a bimodule resolution; a small
/// resolution of k over `a` with the same ranks.
pub fn reduce_bimodule_resolution(a: &ArcAlgebra, res: &Resolution) -> Resolution {
    let f = a.field();
    let d = a.dim();
    let rd = res.ring.dim();
    assert_eq!(rd, d * d);
    // reduction of a P_n coordinate vector to G_n = P_n ⊗_Λ k coordinates
    let reduce_vec = |n: usize, v: &[Scalar]| -> Vec<Scalar> {
        let rank = res.ranks[n];
        let mut out = vec![f.zero(); rank * d];
        for t in 0..rank {
            for i in 0..d {
                for j in 0..d {
                    let c = &v[t * rd + i * d + j];
                    if !c.is_zero() {
                        let eps = a.aug_row()[j].clone();
                        if !eps.is_zero() {
                            out[t * d + i] = out[t * d + i].add(&c.mul(&eps));
                        }
                    }
                }
            }
        }
        out
    };
    let mut diffs = Vec::new();
    for n in 1..=res.top_degree() {
        let rank = res.ranks[n];
        let mut m = Matrix::zero(f, res.ranks[n - 1] * d, rank * d);
        for t in 0..rank {
            // column (t, i): reduce d_P((e_i ⊗ 1)·gen_t)
            for i in 0..d {
                let mut env_elt = vec![f.zero(); d * d];
                for (j, uj) in a.unit().iter().enumerate() {
                    env_elt[i * d + j] = uj.clone();
                }
                let gen = res.generator_vector(n, t);
                let v = res.act(n, &env_elt, &gen);
                let dv = res.diff(n).apply(&v);
                for (r, c) in reduce_vec(n - 1, &dv).into_iter().enumerate() {
                    m.set(r, t * d + i, c);
                }
            }
        }
        diffs.push(m);
    }
    // augmentation G_0 -> k: ε on the a-coordinate
    let mut aug = Matrix::zero(f, 1, res.ranks[0] * d);
    for t in 0..res.ranks[0] {
        for i in 0..d {
            aug.set(0, t * d + i, a.aug_row()[i].clone());
        }
    }
    let target = ModuleOver::trivial(a.clone());
    let mut out = Resolution {
        ring: a.clone(),
        target,
        ranks: res.ranks.clone(),
        diffs,
        aug,
        small: false,
    };
    out.small = out.verify_small();
    out
}
