//! Dense matrices over an exact field: echelon forms with full pivoting,
//! solving, kernels, images and cokernel projections.
//!
//! All comparisons are exact equalities of field elements. Pivot choice only
//! affects coefficient growth, never correctness.

use crate::error::LinAlgError;
use crate::field::{FieldKind, Scalar};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    kind: FieldKind,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(kind: FieldKind, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            kind,
            data: vec![kind.zero(); rows * cols],
        }
    }

    pub fn identity(kind: FieldKind, n: usize) -> Self {
        let mut m = Matrix::zeros(kind, n, n);
        for i in 0..n {
            m.set(i, i, kind.one());
        }
        m
    }

    pub fn from_rows(kind: FieldKind, rows: Vec<Vec<Scalar>>) -> Result<Self, LinAlgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinAlgError::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            kind,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Integer convenience constructor, mostly for tests and built-in data.
    pub fn from_i64(kind: FieldKind, rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Matrix::zeros(kind, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c);
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, kind.from_i64(x));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.kind, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.at(i, j).clone());
            }
        }
        t
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Matrix { data, ..*self }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Matrix { data, ..*self }
    }

    pub fn neg(&self) -> Matrix {
        let data = self.data.iter().map(|a| -a).collect();
        Matrix { data, ..*self }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        let data = self.data.iter().map(|a| a * c).collect();
        Matrix { data, ..*self }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(
            self.cols, other.rows,
            "matmul shape mismatch {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut out = Matrix::zeros(self.kind, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.at(i, j);
                    let v = &(a * b) + cur;
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Stacks `self` above `other`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            kind: self.kind,
            data,
        }
    }

    /// Places `self` left of `other`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut out = Matrix::zeros(self.kind, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.at(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.at(i, j).clone());
            }
        }
        out
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    /// Builds a block-diagonal matrix.
    pub fn block_diag(kind: FieldKind, blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(kind, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.at(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Copies `block` into `self` with top-left corner `(r0, c0)`.
    pub fn paste(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.at(i, j).clone());
            }
        }
    }

    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Matrix {
        let mut out = Matrix::zeros(self.kind, r1 - r0, c1 - c0);
        for i in r0..r1 {
            for j in c0..c1 {
                out.set(i - r0, j - c0, self.at(i, j).clone());
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.echelon().rank
    }

    /// Gauss–Jordan elimination with full pivoting. Returns the rank, the
    /// column permutation and a row transform `t` with
    /// `t * self * perm = [[I, b], [0, 0]]`.
    pub fn echelon(&self) -> Echelon {
        let kind = self.kind;
        let mut a = self.clone();
        let mut t = Matrix::identity(kind, self.rows);
        // perm[k] = original column index occupying permuted slot k
        let mut perm: Vec<usize> = (0..self.cols).collect();
        let n = self.rows.min(self.cols);
        let mut rank = 0;
        for step in 0..n {
            // full pivot search over the remaining submatrix; prefer light entries
            let mut best: Option<(usize, usize, u64)> = None;
            for i in step..self.rows {
                for jp in step..self.cols {
                    let v = a.at(i, perm[jp]);
                    if !v.is_zero() {
                        let w = v.pivot_weight();
                        if best.map_or(true, |(_, _, bw)| w < bw) {
                            best = Some((i, jp, w));
                        }
                    }
                }
            }
            let Some((pi, pj, _)) = best else { break };
            a.swap_rows(step, pi);
            t.swap_rows(step, pi);
            perm.swap(step, pj);
            // normalize pivot row
            let inv = a.at(step, perm[step]).inv().expect("pivot nonzero");
            a.scale_row(step, &inv);
            t.scale_row(step, &inv);
            // clear the pivot column everywhere else
            for i in 0..self.rows {
                if i == step {
                    continue;
                }
                let f = a.at(i, perm[step]).clone();
                if f.is_zero() {
                    continue;
                }
                a.row_sub_scaled(i, step, &f);
                t.row_sub_scaled(i, step, &f);
            }
            rank = step + 1;
        }
        Echelon {
            rank,
            perm,
            reduced: a,
            transform: t,
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    fn scale_row(&mut self, i: usize, f: &Scalar) {
        for c in 0..self.cols {
            let v = &self.data[i * self.cols + c] * f;
            self.data[i * self.cols + c] = v;
        }
    }

    /// row_i -= f * row_j
    fn row_sub_scaled(&mut self, i: usize, j: usize, f: &Scalar) {
        for c in 0..self.cols {
            let x = &self.data[j * self.cols + c] * f;
            let v = &self.data[i * self.cols + c] - &x;
            self.data[i * self.cols + c] = v;
        }
    }

    /// Basis of the null space, as columns of a `cols x nullity` matrix.
    pub fn kernel(&self) -> Matrix {
        let ech = self.echelon();
        let r = ech.rank;
        let free = self.cols - r;
        let mut out = Matrix::zeros(self.kind, self.cols, free);
        for f in 0..free {
            out.set(ech.perm[r + f], f, self.kind.one());
            for i in 0..r {
                let v = ech.reduced.at(i, ech.perm[r + f]);
                out.set(ech.perm[i], f, -v);
            }
        }
        out
    }

    /// Basis of the column space, as columns (a subset of the original columns).
    pub fn image(&self) -> Matrix {
        let ech = self.echelon();
        let mut out = Matrix::zeros(self.kind, self.rows, ech.rank);
        for k in 0..ech.rank {
            let j = ech.perm[k];
            for i in 0..self.rows {
                out.set(i, k, self.at(i, j).clone());
            }
        }
        out
    }

    /// Projection `q` onto the cokernel: a `(rows - rank) x rows` matrix of
    /// full row rank with `q * self = 0`.
    pub fn cokernel_projection(&self) -> Matrix {
        let ech = self.echelon();
        ech.transform
            .submatrix(ech.rank, self.rows, 0, self.rows)
    }

    /// One particular solution of `self * x = b` together with a kernel basis,
    /// or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<(Vec<Scalar>, Matrix)>, LinAlgError> {
        if b.len() != self.rows {
            return Err(LinAlgError::DimensionMismatch(format!(
                "solve: matrix has {} rows, rhs has {}",
                self.rows,
                b.len()
            )));
        }
        let ech = self.echelon();
        let tb: Vec<Scalar> = (0..self.rows)
            .map(|i| {
                let mut acc = self.kind.zero();
                for j in 0..self.rows {
                    let t = ech.transform.at(i, j);
                    if !t.is_zero() {
                        acc = &acc + &(t * &b[j]);
                    }
                }
                acc
            })
            .collect();
        if tb[ech.rank..].iter().any(|x| !x.is_zero()) {
            return Ok(None);
        }
        let mut x = vec![self.kind.zero(); self.cols];
        for i in 0..ech.rank {
            x[ech.perm[i]] = tb[i].clone();
        }
        Ok(Some((x, self.kernel())))
    }

    /// Inverse of a square full-rank matrix.
    pub fn inverse(&self) -> Result<Matrix, LinAlgError> {
        if self.rows != self.cols {
            return Err(LinAlgError::DimensionMismatch("inverse of non-square".into()));
        }
        let ech = self.echelon();
        if ech.rank < self.rows {
            return Err(LinAlgError::NotInvertible);
        }
        // t * a * p = I  =>  a^{-1} = p * t
        let mut out = Matrix::zeros(self.kind, self.rows, self.rows);
        for i in 0..self.rows {
            for j in 0..self.rows {
                out.set(ech.perm[i], j, ech.transform.at(i, j).clone());
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = self.kind.zero();
                for j in 0..self.cols {
                    let a = self.at(i, j);
                    if !a.is_zero() && !v[j].is_zero() {
                        acc = &acc + &(a * &v[j]);
                    }
                }
                acc
            })
            .collect()
    }

    /// Columns of `self` as vectors.
    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(kind: FieldKind, dim: usize, cols: &[Vec<Scalar>]) -> Matrix {
        let mut m = Matrix::zeros(kind, dim, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), dim);
            for (i, v) in c.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.at(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

pub struct Echelon {
    pub rank: usize,
    pub perm: Vec<usize>,
    pub reduced: Matrix,
    pub transform: Matrix,
}

/// Span utilities: a growing row space with exact membership tests. Used all
/// over the crate to extract bases from generating sets.
pub struct RowSpan {
    kind: FieldKind,
    dim: usize,
    // reduced rows together with their pivot column
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl RowSpan {
    pub fn new(kind: FieldKind, dim: usize) -> Self {
        RowSpan {
            kind,
            dim,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the span; returns the residue.
    pub fn reduce(&self, mut v: Vec<Scalar>) -> Vec<Scalar> {
        assert_eq!(v.len(), self.dim);
        for (piv, row) in &self.rows {
            if !v[*piv].is_zero() {
                let f = v[*piv].clone();
                for (x, r) in v.iter_mut().zip(row.iter()) {
                    *x = &*x - &(&f * r);
                }
            }
        }
        v
    }

    /// Inserts `v` if independent; reports whether the rank grew.
    pub fn insert(&mut self, v: Vec<Scalar>) -> bool {
        let mut v = self.reduce(v);
        let Some(piv) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[piv].inv().expect("nonzero");
        for x in v.iter_mut() {
            *x = &*x * &inv;
        }
        // back-substitute into existing rows to keep reduction cheap
        for (_, row) in self.rows.iter_mut() {
            if !row[piv].is_zero() {
                let f = row[piv].clone();
                for (r, x) in row.iter_mut().zip(v.iter()) {
                    *r = &*r - &(&f * x);
                }
            }
        }
        self.rows.push((piv, v));
        true
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v.to_vec()).iter().all(|x| x.is_zero())
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows_cloned(&self) -> Vec<(usize, Vec<Scalar>)> {
        self.rows.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat() -> FieldKind {
        FieldKind::Rationals
    }

    #[test]
    fn solve_identity() {
        let a = Matrix::identity(rat(), 2);
        let b = vec![rat().from_i64(1), rat().from_i64(2)];
        let (x, ker) = a.solve(&b).unwrap().unwrap();
        assert_eq!(x, b);
        assert_eq!(ker.cols(), 0);
    }

    #[test]
    fn solve_zero_matrix() {
        let a = Matrix::zeros(rat(), 2, 2);
        let b = vec![rat().zero(), rat().zero()];
        let (x, ker) = a.solve(&b).unwrap().unwrap();
        assert!(x.iter().all(|v| v.is_zero()));
        assert_eq!(ker.cols(), 2);
        let b2 = vec![rat().one(), rat().zero()];
        assert!(a.solve(&b2).unwrap().is_none());
    }

    #[test]
    fn solve_rank_one() {
        // oracle: row reduction by hand. [[1,2],[2,4]] x = (1,2) has the
        // particular solution (1,0) up to kernel, and kernel dim 1.
        let a = Matrix::from_i64(rat(), &[&[1, 2], &[2, 4]]);
        let b = vec![rat().from_i64(1), rat().from_i64(2)];
        let (x, ker) = a.solve(&b).unwrap().unwrap();
        assert_eq!(ker.cols(), 1);
        // verify the solution exactly
        let ax = a.apply(&x);
        assert_eq!(ax, b);
        // kernel vector is killed by a
        let kv = ker.column(0);
        assert!(a.apply(&kv).iter().all(|v| v.is_zero()));
    }

    #[test]
    fn kernel_and_cokernel() {
        assert_eq!(Matrix::identity(rat(), 3).kernel().cols(), 0);
        // cokernel of the zero map k^2 -> k^3 has dimension 3
        let z = Matrix::zeros(rat(), 3, 2);
        let q = z.cokernel_projection();
        assert_eq!(q.rows(), 3);
        assert_eq!(q.rank(), 3);
        // kernel([[1,1]]) is spanned by (1,-1)
        let a = Matrix::from_i64(rat(), &[&[1, 1]]);
        let k = a.kernel();
        assert_eq!(k.cols(), 1);
        let v = k.column(0);
        assert!(a.apply(&v).iter().all(|x| x.is_zero()));
        assert!(!v[0].is_zero());
    }

    #[test]
    fn cokernel_projection_kills_image() {
        let a = Matrix::from_i64(rat(), &[&[1, 2], &[2, 4], &[0, 1]]);
        let q = a.cokernel_projection();
        assert!(q.mul(&a).is_zero());
        assert_eq!(q.rows(), 3 - a.rank());
        assert_eq!(q.rank(), q.rows());
    }

    #[test]
    fn inverse_round_trip() {
        let a = Matrix::from_i64(rat(), &[&[1, 2], &[3, 5]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(rat(), 2));
        assert_eq!(inv.mul(&a), Matrix::identity(rat(), 2));
    }

    #[test]
    fn row_span_membership() {
        let mut s = RowSpan::new(rat(), 3);
        assert!(s.insert(vec![rat().from_i64(1), rat().from_i64(1), rat().zero()]));
        assert!(s.insert(vec![rat().zero(), rat().from_i64(1), rat().from_i64(1)]));
        assert!(!s.insert(vec![rat().from_i64(1), rat().from_i64(2), rat().from_i64(1)]));
        assert_eq!(s.rank(), 2);
        assert!(s.contains(&[rat().from_i64(2), rat().from_i64(3), rat().from_i64(1)]));
        assert!(!s.contains(&[rat().one(), rat().zero(), rat().zero()]));
    }
}
