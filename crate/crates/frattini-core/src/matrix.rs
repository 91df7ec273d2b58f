//! Dense exact matrices over `F_p`.
//!
//! Vectors are rows and matrices act on the right, so `v * g` is the image
//! of `v` under `g` and a subspace is the row space of its basis matrix.
//! Entries are stored row-major, always reduced mod p.

use crate::error::{Error, Result};
use crate::fp::PrimeField;
use alloc::vec;
use alloc::vec::Vec;

#[derive(Clone, PartialEq, Eq)]
pub struct FpMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
}

/// Result of a reduced-row-echelon computation. The matrix keeps the shape
/// of the input, zero rows at the bottom.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: FpMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl core::fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        writeln!(f, "FpMatrix {}x{} mod {} [", self.rows, self.cols, self.field.p())?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

impl FpMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        FpMatrix { field, rows, cols, entries: vec![0; rows * cols] }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Build from explicit rows; entries are reduced mod p.
    pub fn from_rows(field: PrimeField, data: &[Vec<u64>]) -> Result<Self> {
        let rows = data.len();
        let cols = data.first().map_or(0, Vec::len);
        let mut m = Self::zeros(field, rows, cols);
        for (i, row) in data.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: row.len() });
            }
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        Ok(m)
    }

    /// Build from rows given as signed integers.
    pub fn from_signed(field: PrimeField, data: &[Vec<i64>]) -> Result<Self> {
        let unsigned: Vec<Vec<u64>> =
            data.iter().map(|r| r.iter().map(|&x| field.reduce_signed(x)).collect()).collect();
        Self::from_rows(field, &unsigned)
    }

    /// A single-row matrix holding `v`.
    pub fn from_row_vec(field: PrimeField, v: &[u64]) -> Self {
        let mut m = Self::zeros(field, 1, v.len());
        for (j, &x) in v.iter().enumerate() {
            m.set(0, j, x);
        }
        m
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: u64) {
        self.entries[i * self.cols + j] = self.field.reduce(x);
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u64] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows)
                .all(|i| (0..self.cols).all(|j| self.get(i, j) == u64::from(i == j)))
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn add(&self, other: &FpMatrix) -> Result<FpMatrix> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        for (a, &b) in out.entries.iter_mut().zip(other.entries.iter()) {
            *a = self.field.add(*a, b);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &FpMatrix) -> Result<FpMatrix> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        for (a, &b) in out.entries.iter_mut().zip(other.entries.iter()) {
            *a = self.field.sub(*a, b);
        }
        Ok(out)
    }

    pub fn scale(&self, c: u64) -> FpMatrix {
        let c = self.field.reduce(c);
        let mut out = self.clone();
        for a in out.entries.iter_mut() {
            *a = self.field.mul(*a, c);
        }
        out
    }

    pub fn mul(&self, other: &FpMatrix) -> Result<FpMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let p = self.field.p();
        let mut out = Self::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                let orow = other.row(k);
                let dst = &mut out.entries[i * other.cols..(i + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(orow.iter()) {
                    *d = (*d + a * b) % p;
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn apply_to_row(&self, v: &[u64]) -> Result<Vec<u64>> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, found: v.len() });
        }
        let p = self.field.p();
        let mut out = vec![0u64; self.cols];
        for (k, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (d, &b) in out.iter_mut().zip(self.row(k).iter()) {
                *d = (*d + a * b) % p;
            }
        }
        Ok(out)
    }

    pub fn pow(&self, mut e: u64) -> Result<FpMatrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch { expected: self.rows, found: self.cols });
        }
        let mut acc = Self::identity(self.field, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            base = base.mul(&base)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Kronecker product, compatible with the flat index `(a, b) ↦ a·cols₂ + b`:
    /// `(x ⊗ y)(g ⊗ h) = xg ⊗ yh` for row vectors.
    pub fn kronecker(&self, other: &FpMatrix) -> FpMatrix {
        let mut out = Self::zeros(self.field, self.rows * other.rows, self.cols * other.cols);
        for a in 0..self.rows {
            for b in 0..other.rows {
                for c in 0..self.cols {
                    let x = self.get(a, c);
                    if x == 0 {
                        continue;
                    }
                    for e in 0..other.cols {
                        let y = other.get(b, e);
                        if y != 0 {
                            out.set(a * other.rows + b, c * other.cols + e, x * y % self.field.p());
                        }
                    }
                }
            }
        }
        out
    }

    fn check_same_shape(&self, other: &FpMatrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        Ok(())
    }

    /// Reduced row echelon form. The output keeps the shape of the input with
    /// zero rows at the bottom; pivot columns are strictly increasing.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let f = m.field;
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..m.cols {
            let Some(pr) = (rank..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            if pr != rank {
                for j in 0..m.cols {
                    let tmp = m.get(rank, j);
                    let v = m.get(pr, j);
                    m.set(rank, j, v);
                    m.set(pr, j, tmp);
                }
            }
            let inv = f.inv(m.get(rank, col));
            for j in col..m.cols {
                m.set(rank, j, f.mul(m.get(rank, j), inv));
            }
            for r in 0..m.rows {
                if r == rank {
                    continue;
                }
                let c = m.get(r, col);
                if c == 0 {
                    continue;
                }
                for j in col..m.cols {
                    let x = f.sub(m.get(r, j), f.mul(c, m.get(rank, j)));
                    m.set(r, j, x);
                }
            }
            pivots.push(col);
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        Rref { matrix: m, rank, pivots }
    }

    /// The nonzero rows of the reduced echelon form: a canonical basis of the
    /// row space.
    pub fn row_basis(&self) -> FpMatrix {
        let r = self.rref();
        let mut out = Self::zeros(self.field, r.rank, self.cols);
        for i in 0..r.rank {
            for j in 0..self.cols {
                out.set(i, j, r.matrix.get(i, j));
            }
        }
        out
    }

    /// Rank (number of nonzero rows after echelon reduction).
    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Rows spanning `{x : x·m = 0}`, returned in reduced echelon form.
    pub fn nullspace(&self) -> FpMatrix {
        let t = self.transpose();
        let r = t.rref();
        // free columns of t (of which there are rows(self) − rank) give the
        // kernel basis by back-substitution against the pivot columns
        let n = self.rows;
        let mut basis: Vec<Vec<u64>> = Vec::with_capacity(n - r.rank);
        let mut is_pivot = vec![None; n];
        for (i, &c) in r.pivots.iter().enumerate() {
            is_pivot[c] = Some(i);
        }
        for free in 0..n {
            if is_pivot[free].is_some() {
                continue;
            }
            let mut v = vec![0u64; n];
            v[free] = 1;
            for (i, &c) in r.pivots.iter().enumerate() {
                // pivot variable c satisfies x_c = −(entry in free column)·x_free
                v[c] = self.field.neg(r.matrix.get(i, free));
            }
            basis.push(v);
        }
        let m = Self::from_rows(self.field, &basis).expect("kernel rows have equal length");
        m.row_basis()
    }

    /// Inverse of a square nonsingular matrix.
    pub fn invert(&self) -> Result<FpMatrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch { expected: self.rows, found: self.cols });
        }
        let n = self.rows;
        let mut aug = Self::zeros(self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let r = aug.rref();
        let left_rank = r.pivots.iter().filter(|&&c| c < n).count();
        if left_rank < n {
            return Err(Error::SingularMatrix { rank: left_rank });
        }
        let mut inv = Self::zeros(self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.matrix.get(i, n + j));
            }
        }
        Ok(inv)
    }

    /// `transpose(invert(m))` — the dual action of `m` on row vectors.
    pub fn transpose_inverse(&self) -> Result<FpMatrix> {
        Ok(self.invert()?.transpose())
    }

    pub fn determinant(&self) -> Result<u64> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch { expected: self.rows, found: self.cols });
        }
        let f = self.field;
        let mut m = self.clone();
        let n = m.rows;
        let mut det = 1u64;
        for col in 0..n {
            let Some(pr) = (col..n).find(|&r| m.get(r, col) != 0) else {
                return Ok(0);
            };
            if pr != col {
                for j in 0..n {
                    let tmp = m.get(col, j);
                    let v = m.get(pr, j);
                    m.set(col, j, v);
                    m.set(pr, j, tmp);
                }
                det = f.neg(det);
            }
            let piv = m.get(col, col);
            det = f.mul(det, piv);
            let inv = f.inv(piv);
            for r in col + 1..n {
                let c = f.mul(m.get(r, col), inv);
                if c == 0 {
                    continue;
                }
                for j in col..n {
                    let x = f.sub(m.get(r, j), f.mul(c, m.get(col, j)));
                    m.set(r, j, x);
                }
            }
        }
        Ok(det)
    }
}

/// Express `v` in terms of a basis given as the rows of `basis`, which must
/// be in reduced echelon form (e.g. produced by [`FpMatrix::row_basis`]).
/// Returns the coordinate vector, or `None` if `v` is outside the row space.
pub fn solve_membership(basis: &FpMatrix, v: &[u64]) -> Result<Option<Vec<u64>>> {
    if v.len() != basis.cols() {
        return Err(Error::DimensionMismatch { expected: basis.cols(), found: v.len() });
    }
    let f = basis.field();
    let mut w: Vec<u64> = v.iter().map(|&x| f.reduce(x)).collect();
    let mut coords = vec![0u64; basis.rows()];
    for i in 0..basis.rows() {
        let Some(pc) = basis.row(i).iter().position(|&x| x != 0) else {
            continue;
        };
        let c = w[pc];
        if c == 0 {
            continue;
        }
        coords[i] = c;
        for (wj, &bj) in w.iter_mut().zip(basis.row(i).iter()) {
            *wj = f.sub(*wj, f.mul(c, bj));
        }
    }
    if w.iter().all(|&x| x == 0) {
        Ok(Some(coords))
    } else {
        Ok(None)
    }
}

/// Fast membership test without recovering coordinates.
pub fn in_row_space(basis: &FpMatrix, v: &[u64]) -> Result<bool> {
    Ok(solve_membership(basis, v)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> PrimeField {
        PrimeField::new(5).unwrap()
    }

    #[test]
    fn rref_identity_and_zero() {
        let id = FpMatrix::identity(f5(), 4);
        let r = id.rref();
        assert_eq!(r.matrix, id);
        assert_eq!(r.rank, 4);

        let z = FpMatrix::zeros(f5(), 3, 3);
        let rz = z.rref();
        assert!(rz.matrix.is_zero());
        assert_eq!(rz.rank, 0);
    }

    #[test]
    fn rref_dependent_rows() {
        // row2 = 2·row1 over F_5
        let m = FpMatrix::from_rows(f5(), &[vec![1, 2], vec![2, 4]]).unwrap();
        let r = m.rref();
        assert_eq!(r.rank, 1);
        assert_eq!(r.matrix.row(0), &[1, 2]);
        assert_eq!(r.matrix.row(1), &[0, 0]);
        assert_eq!(r.pivots, vec![0]);
    }

    #[test]
    fn membership_cases() {
        let basis = FpMatrix::from_rows(f5(), &[vec![1, 2]]).unwrap();
        // v = 0 is a member with zero coordinates
        assert_eq!(solve_membership(&basis, &[0, 0]).unwrap(), Some(vec![0]));
        // v = first basis row has coordinate vector (1)
        assert_eq!(solve_membership(&basis, &[1, 2]).unwrap(), Some(vec![1]));
        // (0, 1) has no solution λ(1, 2)
        assert_eq!(solve_membership(&basis, &[0, 1]).unwrap(), None);
        // dimension mismatch is an error
        assert!(solve_membership(&basis, &[1, 2, 3]).is_err());
    }

    #[test]
    fn invert_examples() {
        let id = FpMatrix::identity(f5(), 3);
        assert_eq!(id.invert().unwrap(), id);

        let two = FpMatrix::from_rows(f5(), &[vec![2]]).unwrap();
        assert_eq!(two.invert().unwrap().get(0, 0), 3);

        let sing = FpMatrix::from_rows(f5(), &[vec![1, 2], vec![2, 4]]).unwrap();
        match sing.invert() {
            Err(Error::SingularMatrix { rank }) => assert_eq!(rank, 1),
            other => panic!("expected singular error, got {other:?}"),
        }
    }

    #[test]
    fn nullspace_matches_brute_force() {
        let m = FpMatrix::from_rows(f5(), &[vec![1, 2], vec![2, 4]]).unwrap();
        let ns = m.nullspace();
        assert_eq!(ns.rows(), 1);
        // brute force over F_5^2
        let mut expected = Vec::new();
        for a in 0..5u64 {
            for b in 0..5u64 {
                let x0 = (a * m.get(0, 0) + b * m.get(1, 0)) % 5;
                let x1 = (a * m.get(0, 1) + b * m.get(1, 1)) % 5;
                if x0 == 0 && x1 == 0 && (a, b) != (0, 0) {
                    expected.push(vec![a, b]);
                }
            }
        }
        // (3, 1) is among the kernel vectors, and every kernel vector lies in
        // the computed row space
        assert!(expected.contains(&vec![3, 1]));
        for v in expected {
            assert!(in_row_space(&ns, &v).unwrap());
        }
    }

    #[test]
    fn kronecker_acts_factorwise() {
        let f = f5();
        let g = FpMatrix::from_rows(f, &[vec![1, 2], vec![3, 4]]).unwrap();
        let h = FpMatrix::from_rows(f, &[vec![0, 1], vec![2, 3]]).unwrap();
        let k = g.kronecker(&h);
        // (e0 ⊗ e1)·(g ⊗ h) = (e0·g) ⊗ (e1·h)
        let x = vec![1, 0];
        let y = vec![0, 1];
        let xg = g.apply_to_row(&x).unwrap();
        let yh = h.apply_to_row(&y).unwrap();
        let mut xy = vec![0u64; 4];
        xy[0 * 2 + 1] = 1;
        let lhs = k.apply_to_row(&xy).unwrap();
        for a in 0..2 {
            for b in 0..2 {
                assert_eq!(lhs[a * 2 + b], f.mul(xg[a], yh[b]));
            }
        }
    }

    #[test]
    fn determinant_basics() {
        let f = f5();
        let g = FpMatrix::from_rows(f, &[vec![1, 2], vec![3, 4]]).unwrap();
        // 1·4 − 2·3 = −2 ≡ 3 (mod 5)
        assert_eq!(g.determinant().unwrap(), 3);
        assert_eq!(FpMatrix::identity(f, 4).determinant().unwrap(), 1);
    }
}
