//! Dense exact matrices with deterministic Gaussian elimination.
//!
//! Pivoting is fixed once and for all: columns are scanned left to right and
//! the first nonzero entry at or below the current row becomes the pivot.
//! Everything downstream (canonical subspaces, quotient bases, reports)
//! depends on elimination being reproducible, not fast.

use crate::error::Error;
use crate::field::{FieldSpec, Scalar};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: FieldSpec,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn zero(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, field, entries: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|v| v.len()).unwrap_or(0);
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            entries.extend(row);
        }
        Matrix { rows: r, cols: c, field, entries }
    }

    pub fn from_fn(field: FieldSpec, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut m = Matrix::zero(field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Column vector from coordinates.
    pub fn column(field: FieldSpec, coords: &[Scalar]) -> Self {
        Matrix::from_fn(field, coords.len(), 1, |i, _| coords[i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> Vec<Scalar> {
        self.entries[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn col(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut m = self.clone();
        for (e, o) in m.entries.iter_mut().zip(other.entries.iter()) {
            *e = e.add(o);
        }
        m
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.add(&other.scale(&self.field.from_i64(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let mut m = self.clone();
        for e in m.entries.iter_mut() {
            *e = e.mul(s);
        }
        m
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Matrix::zero(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(i, j).add(&a.mul(b));
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    /// Apply to a coordinate vector.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "apply shape mismatch");
        let mut out = vec![self.field.zero(); self.rows];
        for (k, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for i in 0..self.rows {
                let a = self.get(i, k);
                if !a.is_zero() {
                    out[i] = out[i].add(&a.mul(x));
                }
            }
        }
        out
    }

    pub fn stack_vertical(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Matrix { rows: self.rows + other.rows, cols: self.cols, field: self.field, entries }
    }

    pub fn stack_horizontal(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        Matrix::from_fn(self.field, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols { self.get(i, j).clone() } else { other.get(i, j - self.cols).clone() }
        })
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row >= m.rows {
                break;
            }
            // first nonzero entry at or below `row`
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).inv().expect("pivot nonzero");
            m.scale_row(row, &inv);
            for r in 0..m.rows {
                if r != row && !m.get(r, col).is_zero() {
                    let factor = m.get(r, col).clone();
                    m.row_axpy(r, row, &factor.neg());
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, s: &Scalar) {
        for c in 0..self.cols {
            let v = self.get(r, c).mul(s);
            self.set(r, c, v);
        }
    }

    /// row[r] += factor * row[src]
    fn row_axpy(&mut self, r: usize, src: usize, factor: &Scalar) {
        for c in 0..self.cols {
            let s = self.get(src, c);
            if s.is_zero() {
                continue;
            }
            let v = self.get(r, c).add(&s.mul(factor));
            self.set(r, c, v);
        }
    }

    /// Basis of the right kernel {v : self * v = 0}, returned as the rows of
    /// a matrix in the standard free-variable parameterization (one row per
    /// non-pivot column, unit at that column).
    pub fn kernel(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let mut pivot_of_col = vec![usize::MAX; self.cols];
        for (i, &c) in pivots.iter().enumerate() {
            pivot_of_col[c] = i;
        }
        let free: Vec<usize> = (0..self.cols).filter(|c| pivot_of_col[*c] == usize::MAX).collect();
        let mut rows = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![self.field.zero(); self.cols];
            v[f] = self.field.one();
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = r.get(i, f).neg();
            }
            rows.push(v);
        }
        if rows.is_empty() {
            return Matrix::zero(self.field, 0, self.cols);
        }
        Matrix::from_rows(self.field, rows)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "rows": self.rows,
            "cols": self.cols,
            "entries": (0..self.rows).map(|r| {
                (0..self.cols).map(|c| self.get(r, c).to_json()).collect::<Vec<_>>()
            }).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(field: FieldSpec, v: &serde_json::Value) -> Result<Matrix, Error> {
        let rows = v.get("rows").and_then(serde_json::Value::as_u64).ok_or_else(|| {
            Error::Parse("matrix rows".into())
        })? as usize;
        let cols = v
            .get("cols")
            .and_then(serde_json::Value::as_u64)
            .ok_or_else(|| Error::Parse("matrix cols".into()))? as usize;
        let entries = v
            .get("entries")
            .and_then(serde_json::Value::as_array)
            .ok_or_else(|| Error::Parse("matrix entries".into()))?;
        if entries.len() != rows {
            return Err(Error::Parse("matrix row count".into()));
        }
        let mut m = Matrix::zero(field, rows, cols);
        for (r, row) in entries.iter().enumerate() {
            let row = row.as_array().ok_or_else(|| Error::Parse("matrix row".into()))?;
            if row.len() != cols {
                return Err(Error::Parse("matrix col count".into()));
            }
            for (c, e) in row.iter().enumerate() {
                m.set(r, c, Scalar::from_json(field, e)?);
            }
        }
        Ok(m)
    }

    /// Solve self * x = b for a matrix of right-hand sides; free variables
    /// are set to zero. Returns `Error::NoSolution` if any column of b is
    /// outside the column space.
    pub fn solve(&self, b: &Matrix) -> Result<Matrix, Error> {
        if self.rows != b.rows {
            return Err(Error::DimensionMismatch(format!(
                "solve: {} rows vs {} rows",
                self.rows, b.rows
            )));
        }
        let aug = self.stack_horizontal(b);
        let (r, pivots) = aug.rref();
        // any pivot in the b-block means inconsistency
        if pivots.iter().any(|&c| c >= self.cols) {
            return Err(Error::NoSolution);
        }
        let mut x = Matrix::zero(self.field, self.cols, b.cols);
        for (i, &c) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(c, j, r.get(i, self.cols + j).clone());
            }
        }
        Ok(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qmat(rows: &[&[i64]]) -> Matrix {
        let f = FieldSpec::rationals();
        Matrix::from_rows(
            f,
            rows.iter().map(|r| r.iter().map(|&n| f.from_i64(n)).collect()).collect(),
        )
    }

    #[test]
    fn rref_identity_and_zero() {
        let f = FieldSpec::rationals();
        let id = Matrix::identity(f, 3);
        assert_eq!(id.rref().0, id);
        let z = Matrix::zero(f, 2, 4);
        assert_eq!(z.rref().0, z);
    }

    #[test]
    fn rref_rank_one_example() {
        // hand row-reduction: [[1,2],[2,4]] -> [[1,2],[0,0]]
        let m = qmat(&[&[1, 2], &[2, 4]]);
        let (r, pivots) = m.rref();
        assert_eq!(r, qmat(&[&[1, 2], &[0, 0]]));
        assert_eq!(pivots, vec![0]);
    }

    #[test]
    fn kernel_over_gf3() {
        // [[1,1]] over GF(3): kernel spanned by (1,2) after normalization
        let f = FieldSpec::prime(3).unwrap();
        let m = Matrix::from_rows(f, vec![vec![f.from_i64(1), f.from_i64(1)]]);
        let k = m.kernel();
        assert_eq!(k.rows(), 1);
        // enumerate all 9 vectors: the kernel of (x+y) over GF(3)
        let mut solutions = Vec::new();
        for x in 0..3 {
            for y in 0..3 {
                if (x + y) % 3 == 0 && (x, y) != (0, 0) {
                    solutions.push((x, y));
                }
            }
        }
        let kx = k.get(0, 0);
        let ky = k.get(0, 1);
        let as_pair = |s: &Scalar| match s {
            Scalar::Fp { val, .. } => *val,
            _ => panic!(),
        };
        assert!(solutions.contains(&(as_pair(kx), as_pair(ky))));
        assert!(m.mul(&k.transpose()).is_zero());
    }

    #[test]
    fn solve_cases() {
        let f = FieldSpec::rationals();
        // identity: x = b
        let id = Matrix::identity(f, 2);
        let b = qmat(&[&[3], &[5]]);
        assert_eq!(id.solve(&b).unwrap(), b);
        // inconsistent
        let a = qmat(&[&[1], &[1]]);
        let b2 = qmat(&[&[0], &[1]]);
        assert!(matches!(a.solve(&b2), Err(Error::NoSolution)));
        // division: 2x = 1 -> x = 1/2
        let a3 = qmat(&[&[2]]);
        let b3 = qmat(&[&[1]]);
        let x = a3.solve(&b3).unwrap();
        assert_eq!(*x.get(0, 0), f.from_i64(1).div(&f.from_i64(2)).unwrap());
    }

    #[test]
    fn solve_is_sound_on_random_systems() {
        let mut rng = crate::testutil::XorShift::new(7);
        for field in [FieldSpec::rationals(), FieldSpec::prime(5).unwrap()] {
            for _ in 0..20 {
                let a = crate::testutil::random_matrix(&mut rng, field, 4, 3, 5);
                let xs = crate::testutil::random_matrix(&mut rng, field, 3, 2, 5);
                let b = a.mul(&xs);
                let x = a.solve(&b).unwrap();
                assert_eq!(a.mul(&x), b);
            }
        }
    }
}
