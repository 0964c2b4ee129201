use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

/// Dense row-major matrix over a single field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub rref: Matrix,
    pub pivots: Vec<usize>,
}

/// Output of [`Matrix::kernel_image`]: basis vectors are stored as columns.
#[derive(Clone, Debug)]
pub struct KernelImage {
    pub kernel: Matrix,
    pub image: Matrix,
    pub rank: usize,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix[{}x{} {}](", self.rows, self.cols, self.field.tag())?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        write!(f, ")")
    }
}

impl Matrix {
    pub fn new(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|s| s.field() != field) {
            return Err(Error::FieldMismatch(format!(
                "entry over {} in a matrix over {}",
                bad.field().tag(),
                field.tag()
            )));
        }
        Ok(Matrix { field, rows, cols, data })
    }

    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { field, rows, cols, data }
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(field: Field, rows: usize, cols: usize, vals: &[i64]) -> Matrix {
        assert_eq!(vals.len(), rows * cols);
        Matrix { field, rows, cols, data: vals.iter().map(|&v| field.int(v)).collect() }
    }

    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Scalar>]) -> Matrix {
        Matrix::from_fn(field, rows, columns.len(), |r, c| columns[c][r].clone())
    }

    pub fn from_rows(field: Field, cols: usize, rows: &[Vec<Scalar>]) -> Matrix {
        Matrix::from_fn(field, rows.len(), cols, |r, c| rows[r][c].clone())
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn data(&self) -> &[Scalar] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert_eq!(v.field(), self.field);
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> Vec<Scalar> {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn try_mul(&self, o: &Matrix) -> Result<Matrix> {
        if self.field != o.field {
            return Err(Error::FieldMismatch("matrix product".into()));
        }
        if self.cols != o.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        Ok(self.mul_unchecked(o))
    }

    /// Matrix product; panics on shape or field mismatch (internal use).
    pub fn mul(&self, o: &Matrix) -> Matrix {
        self.try_mul(o).expect("matrix product")
    }

    fn mul_unchecked(&self, o: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.rows, o.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..o.cols {
                    let b = o.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = r * o.cols + c;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = self.field.zero();
                for (c, x) in v.iter().enumerate() {
                    let a = self.get(r, c);
                    if !a.is_zero() && !x.is_zero() {
                        acc = &acc + &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        assert!(self.rows == o.rows && self.cols == o.cols, "matrix sum shape");
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        assert!(self.rows == o.rows && self.cols == o.cols, "matrix difference shape");
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self) -> Matrix {
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * s).collect() }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    /// Horizontal concatenation; all blocks must share the row count.
    pub fn hstack(field: Field, rows: usize, blocks: &[&Matrix]) -> Matrix {
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack row count");
            for r in 0..rows {
                for c in 0..b.cols {
                    out.data[r * cols + off + c] = b.get(r, c).clone();
                }
            }
            off += b.cols;
        }
        out
    }

    /// Vertical concatenation; all blocks must share the column count.
    pub fn vstack(field: Field, cols: usize, blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column count");
            data.extend(b.data.iter().cloned());
        }
        Matrix { field, rows, cols, data }
    }

    pub fn block_diag(field: Field, blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let (mut ro, mut co) = (0, 0);
        for b in blocks {
            out.paste(ro, co, b);
            ro += b.rows;
            co += b.cols;
        }
        out
    }

    /// Copy `b` into this matrix with its top-left corner at `(r0, c0)`.
    pub fn paste(&mut self, r0: usize, c0: usize, b: &Matrix) {
        for r in 0..b.rows {
            for c in 0..b.cols {
                self.data[(r0 + r) * self.cols + c0 + c] = b.get(r, c).clone();
            }
        }
    }

    pub fn submatrix(&self, r0: usize, rows: usize, c0: usize, cols: usize) -> Matrix {
        Matrix::from_fn(self.field, rows, cols, |r, c| self.get(r0 + r, c0 + c).clone())
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, self.rows, idx.len(), |r, c| self.get(r, idx[c]).clone())
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, idx.len(), self.cols, |r, c| self.get(idx[r], c).clone())
    }

    /// Reduced row echelon form. Over the rationals the forward pass is
    /// fraction-free (Bareiss) on integer-scaled rows; over prime fields it
    /// is plain Gauss-Jordan. Pivot choice: leftmost column with a nonzero
    /// entry, smallest bit size among candidate rows.
    pub fn echelon(&self) -> Echelon {
        match self.field {
            Field::Rational => self.echelon_rational(),
            Field::Prime(p) => self.echelon_prime(p),
        }
    }

    fn echelon_rational(&self) -> Echelon {
        let (m, n) = (self.rows, self.cols);
        let mut a: Vec<Vec<BigInt>> = (0..m)
            .map(|r| {
                let row = &self.data[r * n..(r + 1) * n];
                let mut l = BigInt::one();
                for s in row {
                    let q = s.as_rational().unwrap();
                    l = l.lcm(q.denom());
                }
                row.iter()
                    .map(|s| {
                        let q = s.as_rational().unwrap();
                        q.numer() * (&l / q.denom())
                    })
                    .collect()
            })
            .collect();
        let mut pivots = Vec::new();
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..n {
            if r == m {
                break;
            }
            let mut best: Option<(u64, usize)> = None;
            for (i, row) in a.iter().enumerate().skip(r) {
                if !row[c].is_zero() {
                    let b = row[c].bits();
                    if best.map_or(true, |(bb, _)| b < bb) {
                        best = Some((b, i));
                    }
                }
            }
            let Some((_, piv)) = best else { continue };
            a.swap(r, piv);
            let (top, bottom) = a.split_at_mut(r + 1);
            let prow = &top[r];
            for row in bottom.iter_mut() {
                let f = row[c].clone();
                for j in c + 1..n {
                    let v = &prow[c] * &row[j] - &f * &prow[j];
                    let (q, rem) = v.div_rem(&prev);
                    debug_assert!(rem.is_zero(), "Bareiss division not exact");
                    row[j] = q;
                }
                row[c] = BigInt::zero();
            }
            prev = a[r][c].clone();
            pivots.push(c);
            r += 1;
        }
        let rank = pivots.len();
        let mut q: Vec<Vec<BigRational>> = a
            .into_iter()
            .take(rank)
            .map(|row| row.into_iter().map(BigRational::from_integer).collect())
            .collect();
        for (k, &pc) in pivots.iter().enumerate() {
            let inv = q[k][pc].recip();
            for x in q[k].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        for k in (0..rank).rev() {
            let pc = pivots[k];
            let (upper, lower) = q.split_at_mut(k);
            let prow = &lower[0];
            for row in upper.iter_mut() {
                if row[pc].is_zero() {
                    continue;
                }
                let f = row[pc].clone();
                for j in pc..n {
                    if !prow[j].is_zero() {
                        row[j] = &row[j] - &f * &prow[j];
                    }
                }
            }
        }
        let mut data: Vec<Scalar> = Vec::with_capacity(m * n);
        for row in q {
            data.extend(row.into_iter().map(Scalar::Q));
        }
        data.resize(m * n, Field::Rational.zero());
        Echelon { rref: Matrix { field: self.field, rows: m, cols: n, data }, pivots }
    }

    fn echelon_prime(&self, p: u64) -> Echelon {
        let (m, n) = (self.rows, self.cols);
        let mut a: Vec<Vec<u64>> = (0..m)
            .map(|r| {
                self.data[r * n..(r + 1) * n]
                    .iter()
                    .map(|s| match s {
                        Scalar::Fp { v, .. } => *v,
                        _ => unreachable!(),
                    })
                    .collect()
            })
            .collect();
        let mulm = |x: u64, y: u64| ((x as u128 * y as u128) % p as u128) as u64;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..n {
            if r == m {
                break;
            }
            let Some(piv) = (r..m).find(|&i| a[i][c] != 0) else { continue };
            a.swap(r, piv);
            let inv = super::scalar::pow_mod(a[r][c], p - 2, p);
            for x in a[r].iter_mut() {
                *x = mulm(*x, inv);
            }
            let prow = a[r].clone();
            for (i, row) in a.iter_mut().enumerate() {
                if i == r || row[c] == 0 {
                    continue;
                }
                let f = row[c];
                for j in c..n {
                    if prow[j] != 0 {
                        row[j] = (row[j] + p - mulm(f, prow[j])) % p;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        let data = a.into_iter().flatten().map(|v| Scalar::Fp { p, v }).collect();
        Echelon { rref: Matrix { field: self.field, rows: m, cols: n, data }, pivots }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Kernel basis (as columns) read off an echelon form, one vector per
    /// free column in increasing order.
    pub fn kernel_from_echelon(field: Field, cols: usize, e: &Echelon) -> Matrix {
        let mut is_pivot = vec![false; cols];
        for &p in &e.pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..cols).filter(|&c| !is_pivot[c]).collect();
        let mut k = Matrix::zeros(field, cols, free.len());
        for (j, &f) in free.iter().enumerate() {
            k.set(f, j, field.one());
            for (row, &p) in e.pivots.iter().enumerate() {
                let v = e.rref.get(row, f);
                if !v.is_zero() {
                    k.set(p, j, -v);
                }
            }
        }
        k
    }

    pub fn kernel(&self) -> Matrix {
        let e = self.echelon();
        Matrix::kernel_from_echelon(self.field, self.cols, &e)
    }

    /// Basis of the column space: the original columns at pivot positions.
    pub fn image(&self) -> Matrix {
        let e = self.echelon();
        self.select_columns(&e.pivots)
    }

    pub fn kernel_image(&self) -> KernelImage {
        let e = self.echelon();
        KernelImage {
            kernel: Matrix::kernel_from_echelon(self.field, self.cols, &e),
            image: self.select_columns(&e.pivots),
            rank: e.pivots.len(),
        }
    }

    /// Solve `self * X = b`. `Ok(None)` when the system is inconsistent.
    pub fn solve(&self, b: &Matrix) -> Result<Option<Matrix>> {
        if self.field != b.field {
            return Err(Error::FieldMismatch("solve".into()));
        }
        if self.rows != b.rows {
            return Err(Error::DimensionMismatch(format!(
                "solve with {} rows against {} rows",
                self.rows, b.rows
            )));
        }
        let n = self.cols;
        let aug = Matrix::hstack(self.field, self.rows, &[self, b]);
        let e = aug.echelon();
        if e.pivots.iter().any(|&p| p >= n) {
            return Ok(None);
        }
        let mut x = Matrix::zeros(self.field, n, b.cols);
        for (row, &p) in e.pivots.iter().enumerate() {
            for c in 0..b.cols {
                x.set(p, c, e.rref.get(row, n + c).clone());
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let x = self.solve(&Matrix::identity(self.field, self.rows)).ok()??;
        if self.rank() == self.rows {
            Some(x)
        } else {
            None
        }
    }

    /// Indices of standard basis vectors that complete the (independent)
    /// columns of `self` to a basis of the ambient space.
    pub fn complement_indices(&self) -> Vec<usize> {
        let e = self.transpose().echelon();
        let mut is_pivot = vec![false; self.rows];
        for &p in &e.pivots {
            is_pivot[p] = true;
        }
        (0..self.rows).filter(|&i| !is_pivot[i]).collect()
    }

    /// Row echelon basis of the column space, returned as columns in a
    /// canonical (reduced) form.
    pub fn column_space_canonical(&self) -> Matrix {
        let e = self.transpose().echelon();
        let r = e.pivots.len();
        e.rref.submatrix(0, r, 0, self.rows).transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn identity_kernel_empty() {
        let ki = Matrix::identity(q(), 2).kernel_image();
        assert_eq!(ki.rank, 2);
        assert_eq!(ki.kernel.cols(), 0);
    }

    #[test]
    fn zero_map_full_kernel() {
        let ki = Matrix::zeros(q(), 3, 2).kernel_image();
        assert_eq!(ki.rank, 0);
        assert_eq!(ki.kernel.cols(), 2);
        assert_eq!(ki.image.cols(), 0);
    }

    #[test]
    fn rank_one_kernel() {
        // Hand reduction: [[1,2],[2,4]] -> [[1,2],[0,0]], kernel x = -2y.
        let a = Matrix::from_i64(q(), 2, 2, &[1, 2, 2, 4]);
        let ki = a.kernel_image();
        assert_eq!(ki.rank, 1);
        assert_eq!(ki.kernel.cols(), 1);
        let v = ki.kernel.column(0);
        // proportional to (2, -1)
        let expect = [q().int(2), q().int(-1)];
        let s = &v[0] * &expect[1].clone();
        let t = &v[1] * &expect[0].clone();
        assert_eq!(s, t);
        assert!(a.mul(&ki.kernel).is_zero());
    }

    #[test]
    fn solve_cases() {
        let b = Matrix::from_i64(q(), 2, 2, &[3, -1, 4, 7]);
        let x = Matrix::identity(q(), 2).solve(&b).unwrap().unwrap();
        assert_eq!(x, b);
        let a = Matrix::from_i64(q(), 2, 1, &[1, 1]);
        let b = Matrix::from_i64(q(), 2, 1, &[1, 2]);
        assert!(a.solve(&b).unwrap().is_none());
        let f5 = Field::prime(5).unwrap();
        let a = Matrix::from_i64(f5, 1, 1, &[2]);
        let b = Matrix::from_i64(f5, 1, 1, &[3]);
        assert_eq!(a.solve(&b).unwrap().unwrap(), Matrix::from_i64(f5, 1, 1, &[4]));
        assert!(a.solve(&Matrix::zeros(f5, 2, 1)).is_err());
    }

    #[test]
    fn mixed_fields_rejected() {
        let f5 = Field::prime(5).unwrap();
        let data = vec![q().int(1), f5.int(1)];
        assert!(matches!(Matrix::new(q(), 1, 2, data), Err(Error::FieldMismatch(_))));
    }

    #[test]
    fn bareiss_rational_entries() {
        let f = q();
        let a = Matrix::new(
            f,
            3,
            3,
            ["1/2", "1/3", "1", "2", "4/3", "4", "0", "1", "-1/5"]
                .iter()
                .map(|s| f.parse_scalar(s).unwrap())
                .collect(),
        )
        .unwrap();
        let e = a.echelon();
        assert_eq!(e.pivots, vec![0, 1]);
        assert!(a.mul(&a.kernel()).is_zero());
        assert_eq!(a.rank(), a.transpose().rank());
    }

    #[test]
    fn inverse_and_complement() {
        let a = Matrix::from_i64(q(), 2, 2, &[2, 1, 1, 1]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(q(), 2));
        let u = Matrix::from_i64(q(), 3, 1, &[0, 1, 1]);
        assert_eq!(u.complement_indices(), vec![0, 2]);
    }
}
