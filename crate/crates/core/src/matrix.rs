//! Dense matrices over F_p and the exact column-reduction routines built on
//! them (rank, kernel, solving in a span).

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;

/// Dense row-major matrix over a prime field.
///
/// A `0 x n` or `n x 0` matrix is valid and represents the zero map.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix[{}x{} over {}]", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            write!(f, "\n  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from rows of signed integers, reducing mod p.
    ///
    /// `cols` is needed to disambiguate the shape when `rows` is empty.
    pub fn from_rows(field: Field, cols: usize, rows: &[Vec<i64>]) -> Result<Self> {
        let mut m = Matrix::zeros(field, rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Shape(format!(
                    "row {r} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            for (c, &x) in row.iter().enumerate() {
                m.data[r * cols + c] = field.from_i64(x);
            }
        }
        Ok(m)
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<u32>]) -> Self {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (r, &x) in col.iter().enumerate() {
                m.data[r * m.cols + c] = x % field.modulus();
            }
        }
        m
    }

    #[inline]
    pub fn field(&self) -> Field {
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
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, x: u32) {
        self.data[r * self.cols + c] = x % self.field.modulus();
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u32>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows)
                .all(|r| (0..self.cols).all(|c| self.get(r, c) == (r == c) as u32))
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(
            self.cols, rhs.rows,
            "cannot multiply {}x{} by {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let f = self.field;
        let p = f.modulus() as u64;
        let mut out = Matrix::zeros(f, self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k) as u64;
                if a == 0 {
                    continue;
                }
                for c in 0..rhs.cols {
                    let idx = r * rhs.cols + c;
                    out.data[idx] = ((out.data[idx] as u64 + a * rhs.get(k, c) as u64) % p) as u32;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len());
        let f = self.field;
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.shape(), rhs.shape());
        let f = self.field;
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| f.add(a, b)).collect(),
        }
    }

    pub fn scale(&self, s: u32) -> Matrix {
        let f = self.field;
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f.mul(a, s)).collect(),
        }
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.data[(r0 + r) * self.cols + c0 + c] = block.get(r, c);
            }
        }
    }

    /// Selects the given rows and columns (in the given order).
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.field, rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                m.data[i * cols.len() + j] = self.get(r, c);
            }
        }
        m
    }

    pub fn hstack(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.rows, rhs.rows);
        let mut m = Matrix::zeros(self.field, self.rows, self.cols + rhs.cols);
        m.set_block(0, 0, self);
        m.set_block(0, self.cols, rhs);
        m
    }

    /// F_p rank.
    pub fn rank(&self) -> usize {
        let mut ech = Echelon::new(self.field, self.rows);
        (0..self.cols).filter(|&c| ech.insert(self.column(c))).count()
    }

    /// Basis of the kernel as the columns of the returned matrix.
    ///
    /// Computed by left-to-right column reduction with lowest-nonzero-row
    /// pivots; each zero reduced column contributes its transform column.
    pub fn kernel_basis(&self) -> Matrix {
        let red = ColumnReduction::new(self, &(0..self.cols).collect::<Vec<_>>());
        let kernel: Vec<Vec<u32>> = red.kernel().map(|(_, v)| v.clone()).collect();
        Matrix::from_columns(self.field, self.cols, &kernel)
    }

    /// True when the map has trivial kernel.
    pub fn is_injective(&self) -> bool {
        self.rank() == self.cols
    }
}

/// Lowest nonzero index of a vector, i.e. its pivot row.
#[inline]
pub(crate) fn low(v: &[u32]) -> Option<usize> {
    v.iter().rposition(|&x| x != 0)
}

/// `dst += c * src`
#[inline]
pub(crate) fn axpy(field: Field, dst: &mut [u32], c: u32, src: &[u32]) {
    if c == 0 {
        return;
    }
    for (d, &s) in dst.iter_mut().zip(src) {
        if s != 0 {
            *d = field.add(*d, field.mul(c, s));
        }
    }
}

/// Incrementally maintained column-echelon basis of a subspace of F_p^n,
/// keyed by pivot (lowest nonzero) row.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    dim: usize,
    // pivot row -> reduced vector
    by_pivot: Vec<Option<Vec<u32>>>,
    rank: usize,
}

impl Echelon {
    pub fn new(field: Field, dim: usize) -> Self {
        Echelon {
            field,
            dim,
            by_pivot: vec![None; dim],
            rank: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Reduces `v` against the stored basis; returns the remainder.
    pub fn reduce(&self, mut v: Vec<u32>) -> Vec<u32> {
        assert_eq!(v.len(), self.dim);
        while let Some(l) = low(&v) {
            match &self.by_pivot[l] {
                Some(b) => {
                    let c = self.field.mul(v[l], self.field.inv(b[l]));
                    axpy(self.field, &mut v, self.field.neg(c), b);
                }
                None => break,
            }
        }
        v
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        low(&self.reduce(v.to_vec())).is_none()
    }

    /// Adds `v` to the span. Returns `true` if it was independent.
    pub fn insert(&mut self, v: Vec<u32>) -> bool {
        let r = self.reduce(v);
        match low(&r) {
            Some(l) => {
                self.by_pivot[l] = Some(r);
                self.rank += 1;
                true
            }
            None => false,
        }
    }
}

/// Result of reducing the columns of a matrix left to right, in a caller
/// supplied order, recording `R = M * V`.
#[derive(Clone, Debug)]
pub(crate) struct ColumnReduction {
    /// Reduced columns, indexed like the original matrix.
    pub reduced: Vec<Vec<u32>>,
    /// Transform columns (length = number of matrix columns).
    pub transform: Vec<Vec<u32>>,
    /// Processing order used.
    pub order: Vec<usize>,
    /// pivot row -> column index owning it
    pub pivot_owner: Vec<Option<usize>>,
}

impl ColumnReduction {
    pub fn new(m: &Matrix, order: &[usize]) -> Self {
        Self::with_hook(m, order, |_, _| {})
    }

    /// Same as [`ColumnReduction::new`] but calls `hook(target, source)`
    /// before every column addition `col[target] += c * col[source]`.
    pub fn with_hook(m: &Matrix, order: &[usize], mut hook: impl FnMut(usize, usize)) -> Self {
        let f = m.field();
        let n = m.cols();
        let mut reduced: Vec<Vec<u32>> = m.columns();
        let mut transform: Vec<Vec<u32>> = (0..n)
            .map(|j| {
                let mut e = vec![0; n];
                e[j] = 1;
                e
            })
            .collect();
        let mut pivot_owner: Vec<Option<usize>> = vec![None; m.rows()];
        for &j in order {
            while let Some(l) = low(&reduced[j]) {
                let Some(owner) = pivot_owner[l] else {
                    pivot_owner[l] = Some(j);
                    break;
                };
                hook(j, owner);
                let c = f.neg(f.mul(reduced[j][l], f.inv(reduced[owner][l])));
                let src_r = reduced[owner].clone();
                axpy(f, &mut reduced[j], c, &src_r);
                let src_v = transform[owner].clone();
                axpy(f, &mut transform[j], c, &src_v);
            }
        }
        ColumnReduction {
            reduced,
            transform,
            order: order.to_vec(),
            pivot_owner,
        }
    }

    /// Kernel vectors (column index, transform column) in processing order.
    pub fn kernel(&self) -> impl Iterator<Item = (usize, &Vec<u32>)> + '_ {
        self.order
            .iter()
            .filter(|&&j| low(&self.reduced[j]).is_none())
            .map(|&j| (j, &self.transform[j]))
    }
}

/// Solves `A x = b` for a fixed `A`, reusing one reduction for many `b`.
#[derive(Clone, Debug)]
pub struct Solver {
    field: Field,
    rows: usize,
    cols: usize,
    red: ColumnReduction,
}

impl Solver {
    pub fn new(a: &Matrix) -> Self {
        let order: Vec<usize> = (0..a.cols()).collect();
        Solver {
            field: a.field(),
            rows: a.rows(),
            cols: a.cols(),
            red: ColumnReduction::new(a, &order),
        }
    }

    /// Some solution `x` of `A x = b`, or `None` if `b` is not in the
    /// column span of `A`.
    pub fn solve(&self, b: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(b.len(), self.rows, "right-hand side has wrong length");
        let f = self.field;
        let mut r = b.to_vec();
        let mut x = vec![0u32; self.cols];
        while let Some(l) = low(&r) {
            let owner = self.red.pivot_owner[l]?;
            let col = &self.red.reduced[owner];
            let c = f.mul(r[l], f.inv(col[l]));
            axpy(f, &mut r, f.neg(c), col);
            axpy(f, &mut x, c, &self.red.transform[owner]);
        }
        Some(x)
    }
}

/// Writes `b = span * c + modulo * d`, returning `(c, d)`.
///
/// Fails with [`Error::NotInSpan`] when `b` lies outside the column span of
/// `[span | modulo]`.
pub fn express(b: &[u32], span: &Matrix, modulo: &Matrix) -> Result<(Vec<u32>, Vec<u32>)> {
    if span.rows() != b.len() || modulo.rows() != b.len() {
        return Err(Error::Shape(format!(
            "express: vector of length {} against spans with {} and {} rows",
            b.len(),
            span.rows(),
            modulo.rows()
        )));
    }
    let solver = Solver::new(&span.hstack(modulo));
    let x = solver
        .solve(b)
        .ok_or_else(|| Error::NotInSpan("express".into()))?;
    let d = x[span.cols()..].to_vec();
    let mut c = x;
    c.truncate(span.cols());
    Ok((c, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> Field {
        Field::new(p).unwrap()
    }

    #[test]
    fn rank_examples() {
        let f2 = f(2);
        assert_eq!(Matrix::identity(f2, 2).rank(), 2);
        let m = Matrix::from_rows(f2, 2, &[vec![1, 1], vec![1, 1]]).unwrap();
        assert_eq!(m.rank(), 1);
        assert_eq!(Matrix::zeros(f2, 0, 4).rank(), 0);
        assert_eq!(Matrix::zeros(f2, 3, 0).rank(), 0);
    }

    // Coboundary of a sheaf on one edge: vertex stalks F^2 (x) and F (y),
    // edge stalk F^3, signs from the (x, y) orientation. Hand row reduction
    // gives rank 2.
    #[test]
    fn rank_of_small_sheaf_coboundary() {
        let f2 = f(2);
        let d0 = Matrix::from_rows(f2, 3, &[vec![-1, 0, 0], vec![-1, 0, 0], vec![0, -1, 1]]).unwrap();
        assert_eq!(d0.rank(), 2);
        let f3 = f(3);
        let d0 = Matrix::from_rows(f3, 3, &[vec![-1, 0, 0], vec![-1, 0, 0], vec![0, -1, 1]]).unwrap();
        assert_eq!(d0.rank(), 2);
    }

    #[test]
    fn kernel_examples() {
        let f2 = f(2);
        let z = Matrix::zeros(f2, 2, 3);
        let k = z.kernel_basis();
        assert_eq!(k.shape(), (3, 3));
        assert_eq!(k.rank(), 3);

        let m = Matrix::from_rows(f2, 2, &[vec![1, 1]]).unwrap();
        let k = m.kernel_basis();
        assert_eq!(k.to_rows(), vec![vec![1], vec![1]]);

        // simplicial coboundary of the hollow triangle, edges (01),(02),(12)
        let d0 = Matrix::from_rows(f2, 3, &[vec![-1, 1, 0], vec![-1, 0, 1], vec![0, -1, 1]]).unwrap();
        let k = d0.kernel_basis();
        assert_eq!(k.cols(), 1);
        // brute force over all 8 vectors of F_2^3
        let mut sols = vec![];
        for bits in 0u32..8 {
            let v: Vec<u32> = (0..3).map(|i| (bits >> i) & 1).collect();
            if d0.mul_vec(&v).iter().all(|&x| x == 0) && bits != 0 {
                sols.push(v);
            }
        }
        assert_eq!(sols, vec![vec![1, 1, 1]]);
        assert_eq!(k.column(0), vec![1, 1, 1]);
    }

    #[test]
    fn express_examples() {
        let f5 = f(5);
        let span = Matrix::from_rows(f5, 2, &[vec![1, 0], vec![2, 1], vec![0, 3]]).unwrap();
        let empty = Matrix::zeros(f5, 3, 0);
        let (c, d) = express(&[0, 0, 0], &span, &empty).unwrap();
        assert_eq!(c, vec![0, 0]);
        assert!(d.is_empty());
        let (c, _) = express(&span.column(1), &span, &empty).unwrap();
        assert_eq!(c, vec![0, 1]);
        assert!(matches!(
            express(&[1, 0, 0], &Matrix::zeros(f5, 3, 1), &empty),
            Err(Error::NotInSpan(_))
        ));
    }

    #[test]
    fn echelon_tracks_rank() {
        let f3 = f(3);
        let mut e = Echelon::new(f3, 3);
        assert!(e.insert(vec![1, 2, 0]));
        assert!(!e.insert(vec![2, 1, 0]));
        assert!(e.insert(vec![0, 0, 1]));
        assert!(e.contains(&[1, 2, 2]));
        assert!(!e.contains(&[1, 0, 0]));
        assert_eq!(e.rank(), 2);
    }
}
