//! Canonical subspaces and an incremental row-space builder.
//!
//! A `Subspace` is represented by the RREF of any spanning set, so two
//! subspaces are equal exactly when their basis matrices are equal. All the
//! "this decomposition equals that one" theorem checks reduce to comparing
//! these canonical forms.

use crate::error::Error;
use crate::field::{FieldSpec, Scalar};
use crate::matrix::Matrix;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix, // rows, in RREF, no zero rows
}

impl Subspace {
    pub fn zero(field: FieldSpec, ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::zero(field, 0, ambient) }
    }

    pub fn full(field: FieldSpec, ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::identity(field, ambient) }
    }

    /// Span of the rows of `m`.
    pub fn from_spanning(m: &Matrix) -> Self {
        let mut b = RowSpace::new(m.field(), m.cols());
        for r in 0..m.rows() {
            b.insert(m.row(r));
        }
        b.into_subspace()
    }

    pub fn from_vectors(field: FieldSpec, ambient: usize, vs: &[Vec<Scalar>]) -> Self {
        let mut b = RowSpace::new(field, ambient);
        for v in vs {
            b.insert(v.clone());
        }
        b.into_subspace()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn field(&self) -> FieldSpec {
        self.basis.field()
    }

    /// Canonical basis, one vector per row.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.dim()).map(|i| self.basis.row(i)).collect()
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> bool {
        let mut rs = RowSpace::new(self.field(), self.ambient);
        for i in 0..self.dim() {
            rs.insert(self.basis.row(i));
        }
        !rs.insert(v.to_vec())
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        (0..other.dim()).all(|i| self.contains_vector(&other.basis.row(i)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, Error> {
        self.check_ambient(other)?;
        Ok(Subspace::from_spanning(&self.basis.stack_vertical(&other.basis)))
    }

    /// Intersection of row spaces: solve a·U = b·V by taking the left kernel
    /// of the stacked matrix [U; -V].
    pub fn intersection(&self, other: &Subspace) -> Result<Subspace, Error> {
        self.check_ambient(other)?;
        let f = self.field();
        if self.dim() == 0 || other.dim() == 0 {
            return Ok(Subspace::zero(f, self.ambient));
        }
        let stacked = self.basis.stack_vertical(&other.basis.scale(&f.from_i64(-1)));
        let left_kernel = stacked.transpose().kernel(); // rows c with c·stacked = 0
        let mut vectors = Vec::new();
        for i in 0..left_kernel.rows() {
            let c = left_kernel.row(i);
            let mut v = vec![f.zero(); self.ambient];
            for (j, cj) in c.iter().take(self.dim()).enumerate() {
                if cj.is_zero() {
                    continue;
                }
                for (k, item) in v.iter_mut().enumerate() {
                    *item = item.add(&cj.mul(self.basis.get(j, k)));
                }
            }
            vectors.push(v);
        }
        Ok(Subspace::from_vectors(f, self.ambient, &vectors))
    }

    fn check_ambient(&self, other: &Subspace) -> Result<(), Error> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch(format!(
                "ambient {} vs {}",
                self.ambient, other.ambient
            )));
        }
        if self.field() != other.field() {
            return Err(Error::FieldMismatch(self.field(), other.field()));
        }
        Ok(())
    }

    /// Canonical coset representative: reduce `v` by the basis rows.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut w = v.to_vec();
        for i in 0..self.dim() {
            let pivot = (0..self.ambient).find(|&c| self.basis.get(i, c).is_one()).unwrap();
            if !w[pivot].is_zero() {
                let factor = w[pivot].clone();
                for c in 0..self.ambient {
                    let s = self.basis.get(i, c);
                    if !s.is_zero() {
                        w[c] = w[c].sub(&factor.mul(s));
                    }
                }
            }
        }
        w
    }
}

/// Incrementally maintained RREF row space. `insert` reduces the incoming
/// vector against the current rows, normalizes, back-substitutes, and keeps
/// the rows sorted by pivot column, so the span is canonical at all times.
#[derive(Clone, Debug)]
pub struct RowSpace {
    field: FieldSpec,
    ambient: usize,
    rows: Vec<Vec<Scalar>>,   // RREF rows sorted by pivot
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new(field: FieldSpec, ambient: usize) -> Self {
        RowSpace { field, ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn seeded(sub: &Subspace) -> Self {
        let mut rs = RowSpace::new(sub.field(), sub.ambient_dim());
        for v in sub.basis_vectors() {
            rs.insert(v);
        }
        rs
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// Reduce `v` against the current rows; the result has zeros at all
    /// current pivot columns.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(self.pivots.iter()) {
            if w[p].is_zero() {
                continue;
            }
            let factor = w[p].clone();
            for (c, r) in w.iter_mut().zip(row.iter()) {
                if !r.is_zero() {
                    *c = c.sub(&factor.mul(r));
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Insert a vector; returns true if the dimension grew.
    pub fn insert(&mut self, v: Vec<Scalar>) -> bool {
        assert_eq!(v.len(), self.ambient, "row space ambient mismatch");
        let mut w = self.reduce(&v);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[p].inv().unwrap();
        for c in w.iter_mut() {
            *c = c.mul(&inv);
        }
        // back-substitute into existing rows
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let factor = row[p].clone();
            for (c, x) in row.iter_mut().zip(w.iter()) {
                if !x.is_zero() {
                    *c = c.sub(&factor.mul(x));
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, w);
        true
    }

    pub fn into_subspace(self) -> Subspace {
        let field = self.field;
        let ambient = self.ambient;
        let basis = Matrix::from_rows(field, self.rows);
        let basis = if basis.rows() == 0 { Matrix::zero(field, 0, ambient) } else { basis };
        Subspace { ambient, basis }
    }

    pub fn subspace(&self) -> Subspace {
        self.clone().into_subspace()
    }
}

/// sum, intersection and mutual containment in one call.
pub struct SubspaceOps {
    pub sum: Subspace,
    pub intersection: Subspace,
    pub left_contains_right: bool,
}

pub fn subspace_ops(u: &Subspace, v: &Subspace) -> Result<SubspaceOps, Error> {
    Ok(SubspaceOps {
        sum: u.sum(v)?,
        intersection: u.intersection(v)?,
        left_contains_right: u.contains(v),
    })
}
