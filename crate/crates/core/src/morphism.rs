//! Augmentation-preserving algebra morphisms as linear maps on the
//! underlying spaces, with multiplicativity checked on basis pairs.

use serde_json::json;
use std::sync::Arc;

use crate::algebra::Algebra;
use crate::error::Error;
use crate::field::Scalar;
use crate::matrix::Matrix;
use crate::report::CheckReport;

#[derive(Clone, Debug)]
pub struct Morphism {
    pub source: Arc<Algebra>,
    pub target: Arc<Algebra>,
    pub matrix: Matrix, // target-dim x source-dim
}

impl Morphism {
    pub fn new(source: Arc<Algebra>, target: Arc<Algebra>, matrix: Matrix) -> Result<Self, Error> {
        if source.field() != target.field() {
            return Err(Error::FieldMismatch(source.field(), target.field()));
        }
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::DimensionMismatch(format!(
                "morphism matrix {}x{} for map {} -> {}",
                matrix.rows(),
                matrix.cols(),
                source.dim(),
                target.dim()
            )));
        }
        Ok(Morphism { source, target, matrix })
    }

    pub fn identity(a: Arc<Algebra>) -> Self {
        let m = Matrix::identity(a.field(), a.dim());
        Morphism { source: a.clone(), target: a, matrix: m }
    }

    /// Define on basis vectors of the source.
    pub fn on_basis(
        source: Arc<Algebra>,
        target: Arc<Algebra>,
        images: &[Vec<Scalar>],
    ) -> Result<Self, Error> {
        if images.len() != source.dim() {
            return Err(Error::DimensionMismatch("one image per source basis vector".into()));
        }
        let m = Matrix::from_fn(source.field(), target.dim(), source.dim(), |i, j| {
            images[j][i].clone()
        });
        Morphism::new(source, target, m)
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.matrix.apply(v)
    }

    /// Multiplicativity on basis pairs, unit to unit, augmentations preserved.
    pub fn check(&self) -> CheckReport {
        let mut report = CheckReport::new("morphism").with_params(json!({
            "source_dim": self.source.dim(),
            "target_dim": self.target.dim(),
        }));
        let unit_image = self.apply(self.source.unit());
        report.require(unit_image == self.target.unit(), "unit maps to unit", json!(null));
        for i in 0..self.source.dim() {
            for j in 0..self.source.dim() {
                let ei = self.source.basis_vector(i);
                let ej = self.source.basis_vector(j);
                let lhs = self.apply(&self.source.multiply(&ei, &ej));
                let rhs = self.target.multiply(&self.apply(&ei), &self.apply(&ej));
                report.require(
                    lhs == rhs,
                    "multiplicative",
                    json!({ "pair": [&self.source.labels()[i], &self.source.labels()[j]] }),
                );
            }
        }
        for i in 0..self.source.dim() {
            let e = self.source.basis_vector(i);
            let lhs = self.target.aug_of(&self.apply(&e));
            let rhs = self.source.aug_of(&e);
            report.require(
                lhs == rhs,
                "augmentation preserved",
                json!({ "basis": &self.source.labels()[i] }),
            );
        }
        report
    }

    pub fn is_valid(&self) -> bool {
        self.check().pass
    }

    /// self ∘ other (other first).
    pub fn compose(&self, other: &Morphism) -> Result<Morphism, Error> {
        if other.target.dim() != self.source.dim() {
            return Err(Error::DimensionMismatch("composition shape".into()));
        }
        Morphism::new(other.source.clone(), self.target.clone(), self.matrix.mul(&other.matrix))
    }

    pub fn is_injective(&self) -> bool {
        self.matrix.rank() == self.source.dim()
    }

    pub fn is_surjective(&self) -> bool {
        self.matrix.rank() == self.target.dim()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    #[test]
    fn identity_passes() {
        let a = Arc::new(Algebra::truncated_polynomial(q(), 3));
        assert!(Morphism::identity(a).is_valid());
    }

    #[test]
    fn monomorphism_x_to_x_squared() {
        // f: k[x]/x^2 -> k[x]/x^4, x -> x^2 is an algebra monomorphism
        let s = Arc::new(Algebra::truncated_polynomial(q(), 2));
        let t = Arc::new(Algebra::truncated_polynomial(q(), 4));
        let images = vec![t.basis_vector(0), t.basis_vector(2)];
        let m = Morphism::on_basis(s, t, &images).unwrap();
        assert!(m.is_valid());
        assert!(m.is_injective());
        assert!(!m.is_surjective());
    }

    #[test]
    fn augmentation_violation_detected() {
        // x -> 1 does not preserve the augmentation
        let s = Arc::new(Algebra::truncated_polynomial(q(), 2));
        let t = s.clone();
        let images = vec![t.basis_vector(0), t.basis_vector(0)];
        let m = Morphism::on_basis(s, t, &images).unwrap();
        assert!(!m.check().pass);
    }

    #[test]
    fn quotient_epimorphism_x3_to_x2() {
        // k[x]/x^3 -> k[x]/x^2, x -> x
        let s = Arc::new(Algebra::truncated_polynomial(q(), 3));
        let t = Arc::new(Algebra::truncated_polynomial(q(), 2));
        let zero = vec![t.field().zero(); 2];
        let images = vec![t.basis_vector(0), t.basis_vector(1), zero];
        let m = Morphism::on_basis(s, t, &images).unwrap();
        assert!(m.is_valid());
        assert!(m.is_surjective());
    }

    #[test]
    fn composition_with_identities() {
        let a = Arc::new(Algebra::truncated_polynomial(q(), 2));
        let b = Arc::new(Algebra::truncated_polynomial(q(), 4));
        let f = Morphism::on_basis(a.clone(), b.clone(), &[b.basis_vector(0), b.basis_vector(2)])
            .unwrap();
        let id_a = Morphism::identity(a);
        let id_b = Morphism::identity(b);
        let left = id_b.compose(&f).unwrap();
        let right = f.compose(&id_a).unwrap();
        assert_eq!(left.matrix, right.matrix);
    }
}
