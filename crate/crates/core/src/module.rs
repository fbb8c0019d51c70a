//! Finite-dimensional modules over an algebra, given by one action matrix
//! per algebra basis element. Bimodules are left modules over the enveloping
//! algebra.



use crate::algebra::ArcAlgebra;
use crate::field::Scalar;
use crate::matrix::Matrix;
use crate::subspace::{RowSpace, Subspace};

#[derive(Clone, Debug)]
pub struct ModuleOver {
    pub algebra: ArcAlgebra,
    pub dim: usize,
    pub action: Vec<Matrix>, // one dim×dim matrix per algebra basis element
}

impl ModuleOver {
    pub fn new(algebra: ArcAlgebra, dim: usize, action: Vec<Matrix>) -> Self {
        assert_eq!(action.len(), algebra.dim());
        ModuleOver { algebra, dim, action }
    }

    /// k with the algebra acting through the augmentation.
    pub fn trivial(algebra: ArcAlgebra) -> Self {
        let f = algebra.field();
        let action = (0..algebra.dim())
            .map(|i| {
                let mut m = Matrix::zero(f, 1, 1);
                m.set(0, 0, algebra.aug_row()[i].clone());
                m
            })
            .collect();
        ModuleOver { algebra, dim: 1, action }
    }

    /// The algebra as a left module over itself.
    pub fn regular(algebra: ArcAlgebra) -> Self {
        let action = (0..algebra.dim())
            .map(|i| algebra.left_mult_matrix(&algebra.basis_vector(i)))
            .collect();
        let dim = algebra.dim();
        ModuleOver { algebra, dim, action }
    }

    /// `a` as a left module over `env = a ⊗ a^op`: (x⊗y)·m = x·m·y.
    pub fn bimodule_self(a: &ArcAlgebra, env: &ArcAlgebra) -> Self {
        let d = a.dim();
        assert_eq!(env.dim(), d * d);
        let mut action = Vec::with_capacity(d * d);
        for i in 0..d {
            let li = a.left_mult_matrix(&a.basis_vector(i));
            for j in 0..d {
                let rj = a.right_mult_matrix(&a.basis_vector(j));
                action.push(li.mul(&rj));
            }
        }
        ModuleOver { algebra: env.clone(), dim: d, action }
    }

    pub fn act_basis(&self, i: usize, v: &[Scalar]) -> Vec<Scalar> {
        self.action[i].apply(v)
    }

    pub fn act(&self, a: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let f = self.algebra.field();
        let mut out = vec![f.zero(); self.dim];
        for (i, c) in a.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let av = self.act_basis(i, v);
            for (o, x) in out.iter_mut().zip(av.iter()) {
                *o = o.add(&c.mul(x));
            }
        }
        out
    }

    /// Action axioms: unit acts as identity, ρ(e_i)ρ(e_j) = Σ c_ijk ρ(e_k).
    pub fn check_action(&self) -> bool {
        let f = self.algebra.field();
        let mut unit_action = Matrix::zero(f, self.dim, self.dim);
        for (i, c) in self.algebra.unit().iter().enumerate() {
            if !c.is_zero() {
                unit_action = unit_action.add(&self.action[i].scale(c));
            }
        }
        if unit_action != Matrix::identity(f, self.dim) {
            return false;
        }
        for i in 0..self.algebra.dim() {
            for j in 0..self.algebra.dim() {
                let mut rhs = Matrix::zero(f, self.dim, self.dim);
                for (k, c) in self.algebra.basis_product(i, j) {
                    rhs = rhs.add(&self.action[*k].scale(c));
                }
                if self.action[i].mul(&self.action[j]) != rhs {
                    return false;
                }
            }
        }
        true
    }

    /// Module structure on a canonical subspace: coordinates are read off
    /// the RREF pivot columns, so no solving is needed.
    pub fn submodule(&self, sub: &Subspace) -> ModuleOver {
        let pivots: Vec<usize> = pivot_columns(sub);
        let m = sub.dim();
        let f = self.algebra.field();
        let mut action = Vec::with_capacity(self.algebra.dim());
        for i in 0..self.algebra.dim() {
            let mut mat = Matrix::zero(f, m, m);
            for (b, row) in sub.basis_vectors().into_iter().enumerate() {
                let image = self.act_basis(i, &row);
                for (r, &p) in pivots.iter().enumerate() {
                    mat.set(r, b, image[p].clone());
                }
            }
            action.push(mat);
        }
        ModuleOver { algebra: self.algebra.clone(), dim: m, action }
    }
}

/// Pivot columns of a canonical subspace basis.
pub fn pivot_columns(sub: &Subspace) -> Vec<usize> {
    let b = sub.basis();
    (0..b.rows())
        .map(|r| (0..b.cols()).find(|&c| b.get(r, c).is_one()).expect("RREF row has a pivot"))
        .collect()
}

/// Span of A·span(seeds) inside a module, computed by closing the seeds
/// under multiplication by the given algebra generators (frontier style, so
/// each newly added vector is multiplied once).
pub fn module_closure(
    module: &ModuleOver,
    seeds: impl IntoIterator<Item = Vec<Scalar>>,
    multipliers: &[Vec<Scalar>],
) -> Subspace {
    let f = module.algebra.field();
    let mut space = RowSpace::new(f, module.dim);
    let mut frontier: Vec<Vec<Scalar>> = Vec::new();
    for s in seeds {
        if space.insert(s.clone()) {
            frontier.push(s);
        }
    }
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for v in frontier {
            for g in multipliers {
                let w = module.act(g, &v);
                if space.insert(w.clone()) {
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    space.into_subspace()
}

/// I(A)·M for a module over a local algebra: I·M = A·(gens·M) with gens a
/// minimal generating set of the ideal.
pub fn ideal_times_module(module: &ModuleOver) -> Subspace {
    let f = module.algebra.field();
    let gens = module.algebra.ideal_generators();
    let mut seeds = Vec::new();
    for g in &gens {
        for b in 0..module.dim {
            let mut v = vec![f.zero(); module.dim];
            v[b] = f.one();
            seeds.push(module.act(g, &v));
        }
    }
    module_closure(module, seeds, &gens)
}

/// Lifts of a basis of M/(I·M): the standard basis vectors at the non-pivot
/// columns of RREF(I·M). Deterministic by construction.
pub fn minimal_generators(module: &ModuleOver) -> Vec<Vec<Scalar>> {
    let f = module.algebra.field();
    let im = ideal_times_module(module);
    let pivots: std::collections::BTreeSet<usize> = pivot_columns(&im).into_iter().collect();
    (0..module.dim)
        .filter(|c| !pivots.contains(c))
        .map(|c| {
            let mut v = vec![f.zero(); module.dim];
            v[c] = f.one();
            v
        })
        .collect()
}

/// Minimal generators of a submodule K of an ambient module, in ambient
/// coordinates: the canonical basis vectors of K extending RREF(I·K).
pub fn minimal_generators_in_ambient(ambient: &ModuleOver, k: &Subspace) -> Vec<Vec<Scalar>> {
    let gens = ambient.algebra.ideal_generators();
    let seeds: Vec<Vec<Scalar>> = k
        .basis_vectors()
        .into_iter()
        .flat_map(|v| gens.iter().map(|g| ambient.act(g, &v)).collect::<Vec<_>>())
        .collect();
    let ik = module_closure(ambient, seeds, &gens);
    let mut span = RowSpace::seeded(&ik);
    let mut out = Vec::new();
    for v in k.basis_vectors() {
        if span.insert(v.clone()) {
            out.push(v);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::field::FieldSpec;
    use std::sync::Arc;

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    #[test]
    fn regular_and_trivial_actions_are_valid() {
        let a = Arc::new(Algebra::truncated_polynomial(q(), 3));
        assert!(ModuleOver::regular(a.clone()).check_action());
        assert!(ModuleOver::trivial(a).check_action());
    }

    #[test]
    fn bimodule_action_is_valid() {
        let a = Arc::new(Algebra::truncated_polynomial(q(), 2));
        let env = Arc::new(a.enveloping());
        assert!(ModuleOver::bimodule_self(&a, &env).check_action());
    }

    #[test]
    fn free_rank_one_module_has_one_generator() {
        let a = Arc::new(Algebra::truncated_polynomial(q(), 3));
        let m = ModuleOver::regular(a);
        assert_eq!(minimal_generators(&m).len(), 1);
    }

    #[test]
    fn ideal_of_x_cubed_has_one_generator() {
        // I(k[x]/x^3) as a module: I/I² is one-dimensional
        let a = Arc::new(Algebra::truncated_polynomial(q(), 3));
        let reg = ModuleOver::regular(a.clone());
        let m = reg.submodule(&a.augmentation_ideal());
        assert!(m.check_action());
        assert_eq!(minimal_generators(&m).len(), 1);
    }

    #[test]
    fn ideal_of_rad_square_zero_has_two_generators() {
        // I² = 0, so I/I² = I is two-dimensional
        let a = Arc::new(Algebra::radical_square_zero(q(), 2));
        let reg = ModuleOver::regular(a.clone());
        let m = reg.submodule(&a.augmentation_ideal());
        assert_eq!(minimal_generators(&m).len(), 2);
    }

    #[test]
    fn ideal_times_regular_module_is_the_ideal() {
        let a = Arc::new(Algebra::truncated_polynomial(q(), 4));
        let m = ModuleOver::regular(a.clone());
        assert_eq!(ideal_times_module(&m), a.augmentation_ideal());
    }
}
