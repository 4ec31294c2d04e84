//! Exact integer linear algebra: Smith and Hermite normal forms, rank over
//! the rationals, lattice saturation and lattice membership.
//!
//! Everything here works on arbitrary-precision integers. Empty matrices
//! (zero rows or zero columns) are valid inputs everywhere.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from row vectors. All rows must have the same length;
    /// `cols` is needed so that a matrix with zero rows still has a width.
    pub fn from_rows<T: Into<BigInt> + Clone>(cols: usize, rows: &[Vec<T>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged row");
            data.extend(r.iter().cloned().map(Into::into));
        }
        IntMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// Builds a matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_cols<T: Into<BigInt> + Clone>(rows: usize, cols: &[Vec<T>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged column");
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone().into();
            }
        }
        m
    }

    /// Convenience constructor for small literal matrices.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let v: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        Self::from_rows(cols, &v)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// Submatrix formed by the listed columns, in the given order.
    pub fn select_cols(&self, cols: &[usize]) -> IntMatrix {
        let mut m = Self::zeros(self.rows, cols.len());
        for (jj, &j) in cols.iter().enumerate() {
            for i in 0..self.rows {
                m[(i, jj)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn select_rows(&self, rows: &[usize]) -> IntMatrix {
        let mut m = Self::zeros(rows.len(), self.cols);
        for (ii, &i) in rows.iter().enumerate() {
            for j in 0..self.cols {
                m[(ii, j)] = self[(i, j)].clone();
            }
        }
        m
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows);
        let mut m = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                m[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        m
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut m = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        m[(i, j)] += a * b;
                    }
                }
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = BigInt::zero();
                for (j, x) in v.iter().enumerate() {
                    if !x.is_zero() {
                        acc += &self[(i, j)] * x;
                    }
                }
                acc
            })
            .collect()
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * &a[(n - 1, n - 1)]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += c * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self[(src, j)] * c;
            if !v.is_zero() {
                self[(dst, j)] += v;
            }
        }
    }

    /// col[dst] += c * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self[(i, src)] * c;
            if !v.is_zero() {
                self[(i, dst)] += v;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -std::mem::take(&mut self[(i, j)]);
            self[(i, j)] = v;
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -std::mem::take(&mut self[(i, j)]);
            self[(i, j)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            write!(f, "]")?;
        }
        write!(f, "] ({}x{})", self.rows, self.cols)
    }
}

/// Result of [`smith_normal_form`]: `u * a * v == d`.
///
/// `u_inv` is the inverse of `u`; it is tracked during elimination because the
/// quotient-group code needs to lift generators back into the ambient lattice.
#[derive(Clone, Debug)]
pub struct SnfDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
}

impl SnfDecomposition {
    /// Diagonal entries of `d`, including zeros, up to `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let k = self.d.rows().min(self.d.cols());
        (0..k).map(|i| self.d[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

/// Smith normal form by elimination, always pivoting on the entry of smallest
/// absolute value in the remaining block.
pub fn smith_normal_form(a: &IntMatrix) -> SnfDecomposition {
    let m = a.rows();
    let n = a.cols();
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut u_inv = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    // Row operations are mirrored on `u` (left) and, inverted, on `u_inv` (right).
    let swap_r = |d: &mut IntMatrix, u: &mut IntMatrix, ui: &mut IntMatrix, i: usize, j: usize| {
        d.swap_rows(i, j);
        u.swap_rows(i, j);
        ui.swap_cols(i, j);
    };
    let add_r =
        |d: &mut IntMatrix, u: &mut IntMatrix, ui: &mut IntMatrix, dst: usize, src: usize, c: &BigInt| {
            d.add_row_multiple(dst, src, c);
            u.add_row_multiple(dst, src, c);
            ui.add_col_multiple(src, dst, &-c);
        };

    let steps = m.min(n);
    for t in 0..steps {
        loop {
            // smallest nonzero entry in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    let x = &d[(i, j)];
                    if x.is_zero() {
                        continue;
                    }
                    match best {
                        Some((bi, bj)) if d[(bi, bj)].abs() <= x.abs() => {}
                        _ => best = Some((i, j)),
                    }
                }
            }
            let Some((pi, pj)) = best else {
                // trailing block is zero
                return SnfDecomposition { u, d, v, u_inv };
            };
            swap_r(&mut d, &mut u, &mut u_inv, t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut dirty = false;
            for i in t + 1..m {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = d[(i, t)].div_floor(&d[(t, t)]);
                add_r(&mut d, &mut u, &mut u_inv, i, t, &-q);
                dirty |= !d[(i, t)].is_zero();
            }
            for j in t + 1..n {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = d[(t, j)].div_floor(&d[(t, t)]);
                let c = -q;
                d.add_col_multiple(j, t, &c);
                v.add_col_multiple(j, t, &c);
                dirty |= !d[(t, j)].is_zero();
            }
            if dirty {
                continue;
            }
            // pivot must divide the whole trailing block
            let p = d[(t, t)].clone();
            let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| !d[(i, j)].is_multiple_of(&p)));
            match offender {
                Some(i) => add_r(&mut d, &mut u, &mut u_inv, t, i, &BigInt::one()),
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
            u_inv.negate_col(t);
        }
    }
    SnfDecomposition { u, d, v, u_inv }
}

/// Column-style Hermite normal form.
///
/// The result is lower triangular in echelon form: column `k` has its first
/// nonzero entry (the pivot, always positive) in a row strictly below the
/// pivot row of column `k - 1`, and every entry to the left of a pivot lies in
/// `[0, pivot)`. Only the nonzero columns are returned, so the output is a
/// canonical basis of the column lattice of `a`.
pub fn hermite_normal_form(a: &IntMatrix) -> IntMatrix {
    let m = a.rows();
    let n = a.cols();
    let mut h = a.clone();
    let mut pc = 0;
    for i in 0..m {
        if pc == n {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for j in pc..n {
                if h[(i, j)].is_zero() {
                    continue;
                }
                match best {
                    Some(b) if h[(i, b)].abs() <= h[(i, j)].abs() => {}
                    _ => best = Some(j),
                }
            }
            let Some(b) = best else { break };
            h.swap_cols(pc, b);
            let mut done = true;
            for j in pc + 1..n {
                if h[(i, j)].is_zero() {
                    continue;
                }
                let q = h[(i, j)].div_floor(&h[(i, pc)]);
                h.add_col_multiple(j, pc, &-q);
                done &= h[(i, j)].is_zero();
            }
            if done {
                break;
            }
        }
        if h[(i, pc)].is_zero() {
            continue;
        }
        if h[(i, pc)].is_negative() {
            h.negate_col(pc);
        }
        for j in 0..pc {
            let q = h[(i, j)].div_floor(&h[(i, pc)]);
            h.add_col_multiple(j, pc, &-q);
        }
        pc += 1;
    }
    h.select_cols(&(0..pc).collect::<Vec<_>>())
}

/// Rank over the rationals, by fraction-free elimination.
pub fn integer_rank(a: &IntMatrix) -> usize {
    let mut rows: Vec<Vec<BigInt>> = (0..a.rows()).map(|i| a.row(i)).collect();
    let n = a.cols();
    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for r in rows.iter_mut().skip(rank + 1) {
            if r[col].is_zero() {
                continue;
            }
            let f = r[col].clone();
            for j in col..n {
                r[j] = &r[j] * &pivot[col] - &f * &pivot[j];
            }
        }
        rank += 1;
    }
    rank
}

/// Basis of `(R-span of the columns of l) ∩ Z^n`, in Hermite normal form.
pub fn saturate(l: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(l);
    let r = snf.rank();
    hermite_normal_form(&snf.u_inv.select_cols(&(0..r).collect::<Vec<_>>()))
}

/// Index of the column lattice of `l` inside its saturation.
pub fn saturation_index(l: &IntMatrix) -> BigInt {
    smith_normal_form(l)
        .diagonal()
        .into_iter()
        .filter(|x| !x.is_zero())
        .product()
}

/// Integer kernel `{x : a x = 0}`; the returned columns are a lattice basis.
pub fn integer_kernel(a: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(a);
    let r = snf.rank();
    snf.v.select_cols(&(r..a.cols()).collect::<Vec<_>>())
}

/// A lattice given by a Hermite basis, supporting membership and coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    basis: IntMatrix,
    pivots: Vec<usize>,
}

impl Lattice {
    /// Lattice spanned by the columns of `gens` (need not be independent).
    pub fn from_generators(gens: &IntMatrix) -> Self {
        let basis = hermite_normal_form(gens);
        let mut pivots = Vec::with_capacity(basis.cols());
        for j in 0..basis.cols() {
            let p = (0..basis.rows()).find(|&i| !basis[(i, j)].is_zero()).expect("zero HNF column");
            pivots.push(p);
        }
        Lattice { basis, pivots }
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    /// Coefficients of `v` with respect to the basis, or `None` if `v` is not
    /// in the lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(v.len(), self.ambient_dim());
        let mut rest = v.to_vec();
        let mut coeffs = Vec::with_capacity(self.rank());
        for (j, &p) in self.pivots.iter().enumerate() {
            let (q, r) = rest[p].div_rem(&self.basis[(p, j)]);
            if !r.is_zero() {
                return None;
            }
            if !q.is_zero() {
                for (i, x) in rest.iter_mut().enumerate() {
                    let b = &self.basis[(i, j)];
                    if !b.is_zero() {
                        *x -= &q * b;
                    }
                }
            }
            coeffs.push(q);
        }
        rest.iter().all(Zero::is_zero).then_some(coeffs)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        (0..other.rank()).all(|j| self.contains(&other.basis.column(j)))
    }
}
