//! Dense exact linear algebra: incremental Gaussian elimination over any
//! [`Field`], and fraction-free (Bareiss) elimination for the rationals.

use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::field::Field;

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn filled(rows: usize, cols: usize, value: E) -> Self {
        Self {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<E>>, cols: usize) -> Self {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix row");
            data.extend(r);
        }
        Self {
            rows: nrows,
            cols,
            data,
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> impl Iterator<Item = Vec<E>> + '_ {
        (0..self.rows).map(|i| self.row(i).to_vec())
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self[(i, j)].clone());
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }
}

impl<E> Index<(usize, usize)> for Matrix<E> {
    type Output = E;
    fn index(&self, (i, j): (usize, usize)) -> &E {
        &self.data[i * self.cols + j]
    }
}

impl<E> IndexMut<(usize, usize)> for Matrix<E> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut E {
        &mut self.data[i * self.cols + j]
    }
}

pub fn matmul<F: Field>(field: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!(a.cols, b.rows, "dimension mismatch in matmul");
    let mut out = Matrix::filled(a.rows, b.cols, field.zero());
    for i in 0..a.rows {
        for k in 0..a.cols {
            let aik = &a[(i, k)];
            if field.is_zero(aik) {
                continue;
            }
            let start = i * b.cols;
            field.axpy(&mut out.data[start..start + b.cols], aik, b.row(k));
        }
    }
    out
}

/// Reduced row-echelon basis of a subspace of `F^ncols`.
///
/// Rows are sorted by pivot column; every pivot entry is 1 and every pivot
/// column is zero in all other rows.
#[derive(Debug, Clone, PartialEq)]
pub struct Echelon<E> {
    ncols: usize,
    rows: Vec<Vec<E>>,
    pivots: Vec<usize>,
}

impl<E: Clone> Echelon<E> {
    pub fn empty(ncols: usize) -> Self {
        Self {
            ncols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vec<E>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Column indices that carry no pivot.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ncols).filter(|&c| !is_pivot[c]).collect()
    }

    /// Basis of the orthogonal complement `{x : row·x = 0 for every row}`,
    /// one vector per free column.
    pub fn nullspace<F: Field<Elem = E>>(&self, field: &F) -> Vec<Vec<E>> {
        self.free_columns()
            .into_iter()
            .map(|f| {
                let mut x = vec![field.zero(); self.ncols];
                x[f] = field.one();
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    x[p] = field.neg(&row[f]);
                }
                x
            })
            .collect()
    }
}

/// Incremental Gaussian elimination. Rows are kept normalized (pivot 1) and
/// zero below-left of their pivot; `finish` back-substitutes to RREF.
pub struct EchelonBuilder<'a, F: Field> {
    field: &'a F,
    ncols: usize,
    rows: Vec<Vec<F::Elem>>,
    pivot_row: Vec<Option<usize>>,
}

impl<'a, F: Field> EchelonBuilder<'a, F> {
    pub fn new(field: &'a F, ncols: usize) -> Self {
        Self {
            field,
            ncols,
            rows: Vec::new(),
            pivot_row: vec![None; ncols],
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ncols
    }

    /// Adds a row; returns whether it enlarged the span.
    pub fn insert(&mut self, mut v: Vec<F::Elem>) -> bool {
        debug_assert_eq!(v.len(), self.ncols);
        let f = self.field;
        for c in 0..self.ncols {
            if f.is_zero(&v[c]) {
                continue;
            }
            match self.pivot_row[c] {
                Some(r) => {
                    let coef = f.neg(&v[c]);
                    f.axpy(&mut v[c..], &coef, &self.rows[r][c..]);
                }
                None => {
                    let inv = f.inv(&v[c]).expect("nonzero entry is invertible");
                    for x in v[c..].iter_mut() {
                        if !f.is_zero(x) {
                            *x = f.mul(x, &inv);
                        }
                    }
                    self.pivot_row[c] = Some(self.rows.len());
                    self.rows.push(v);
                    return true;
                }
            }
        }
        false
    }

    pub fn finish(self) -> Echelon<F::Elem> {
        let f = self.field;
        let mut order: Vec<(usize, Vec<F::Elem>)> = Vec::with_capacity(self.rows.len());
        let mut rows: Vec<Option<Vec<F::Elem>>> = self.rows.into_iter().map(Some).collect();
        for (c, r) in self.pivot_row.iter().enumerate() {
            if let Some(r) = r {
                order.push((c, rows[*r].take().expect("each row has one pivot")));
            }
        }
        // back-substitution, highest pivot first
        for k in (0..order.len()).rev() {
            let (pk, rest) = order.split_at_mut(k);
            let (pc, prow) = &rest[0];
            for (_, row) in pk.iter_mut() {
                if !f.is_zero(&row[*pc]) {
                    let coef = f.neg(&row[*pc]);
                    f.axpy(&mut row[*pc..], &coef, &prow[*pc..]);
                }
            }
        }
        let (pivots, rows) = order.into_iter().unzip();
        Echelon {
            ncols: self.ncols,
            rows,
            pivots,
        }
    }
}

pub fn gauss_echelon<F, I>(field: &F, rows: I, ncols: usize) -> Echelon<F::Elem>
where
    F: Field,
    I: IntoIterator<Item = Vec<F::Elem>>,
{
    let mut b = EchelonBuilder::new(field, ncols);
    for r in rows {
        if b.is_full() {
            break;
        }
        b.insert(r);
    }
    b.finish()
}

pub fn gauss_rank<F: Field>(field: &F, m: &Matrix<F::Elem>) -> usize {
    // eliminate along the shorter side
    let m = if m.rows > m.cols {
        std::borrow::Cow::Owned(m.transpose())
    } else {
        std::borrow::Cow::Borrowed(m)
    };
    let mut b = EchelonBuilder::new(field, m.cols);
    for r in m.row_vecs() {
        if b.is_full() {
            break;
        }
        b.insert(r);
    }
    b.rank()
}

/// Rank over GF(p) with delayed reduction: entries accumulate in `u64` and
/// are reduced only when read as pivots or when the next update could
/// overflow.
pub fn prime_rank(p: u32, m: &Matrix<u32>) -> usize {
    let p = p as u64;
    let (nrows, ncols) = (m.rows.min(m.cols), m.rows.max(m.cols));
    let mut a: Vec<Vec<u64>> = if m.rows <= m.cols {
        (0..m.rows).map(|i| m.row(i).iter().map(|&x| x as u64).collect()).collect()
    } else {
        (0..m.cols)
            .map(|j| (0..m.rows).map(|i| m[(i, j)] as u64).collect())
            .collect()
    };
    let step = (p - 1) * (p - 1);
    let limit = (u64::MAX - p).checked_div(step).unwrap_or(u64::MAX);
    let mut pending = 0u64;
    let mut rank = 0;
    for c in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(pr) = (rank..nrows).find(|&r| {
            a[r][c] %= p;
            a[r][c] != 0
        }) else {
            continue;
        };
        a.swap(rank, pr);
        if pending == limit {
            for row in &mut a[rank..] {
                row[c..].iter_mut().for_each(|x| *x %= p);
            }
            pending = 0;
        }
        let inv = mod_pow(a[rank][c], p - 2, p);
        a[rank][c..].iter_mut().for_each(|x| *x = *x % p * inv % p);
        let (top, bottom) = a.split_at_mut(rank + 1);
        let prow = &top[rank][c + 1..];
        for row in bottom {
            let v = row[c] % p;
            row[c] = 0;
            if v == 0 {
                continue;
            }
            let coef = p - v;
            for (d, s) in row[c + 1..].iter_mut().zip(prow) {
                *d += coef * s;
            }
        }
        pending += 1;
        rank += 1;
    }
    rank
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Scales a rational row by the lcm of its denominators.
fn integer_row(row: &[BigRational]) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for q in row {
        if !q.is_zero() {
            l = l.lcm(q.denom());
        }
    }
    row.iter()
        .map(|q| {
            if q.is_zero() {
                BigInt::zero()
            } else {
                q.numer() * (&l / q.denom())
            }
        })
        .collect()
}

fn exact_div(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    assert!(r.is_zero(), "Bareiss division must be exact");
    q
}

/// Fraction-free elimination on an integer matrix. With `jordan` set, rows
/// above the pivot are eliminated as well, so that on return every pivot
/// equals the same nonzero integer. Returns the pivot columns; rows
/// `0..pivots.len()` hold the echelon form.
fn bareiss_in_place(m: &mut [Vec<BigInt>], ncols: usize, jordan: bool) -> Vec<usize> {
    let nrows = m.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let piv = m[r][col].clone();
        let (head, tail) = m.split_at_mut(r);
        let (prow, below) = tail.split_first_mut().expect("row r exists");
        let update = |row: &mut Vec<BigInt>| {
            let factor = row[col].clone();
            if factor.is_zero() {
                for x in row.iter_mut().skip(col + 1) {
                    if !x.is_zero() {
                        *x = exact_div(&(&*x * &piv), &prev);
                    }
                }
            } else {
                for j in col + 1..ncols {
                    let v = &row[j] * &piv - &factor * &prow[j];
                    row[j] = exact_div(&v, &prev);
                }
                row[col] = BigInt::zero();
            }
        };
        below.iter_mut().for_each(update);
        if jordan {
            // rows above keep their own pivot columns; scale those too
            for row in head.iter_mut() {
                let factor = row[col].clone();
                for j in 0..ncols {
                    if j == col {
                        continue;
                    }
                    let v = &row[j] * &piv - &factor * &prow[j];
                    row[j] = exact_div(&v, &prev);
                }
                row[col] = BigInt::zero();
            }
        }
        prev = piv;
        pivots.push(col);
        r += 1;
    }
    pivots
}

/// Rank over QQ by fraction-free elimination.
pub fn bareiss_rank(m: &Matrix<BigRational>) -> usize {
    let m = if m.nrows() > m.ncols() {
        m.transpose()
    } else {
        m.clone()
    };
    let mut rows: Vec<Vec<BigInt>> = m
        .row_vecs()
        .map(|r| integer_row(&r))
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    bareiss_in_place(&mut rows, m.ncols(), false).len()
}

/// RREF over QQ via fraction-free Gauss-Jordan elimination; rationals only
/// appear in the final normalization.
pub fn bareiss_echelon<I>(rows: I, ncols: usize) -> Echelon<BigRational>
where
    I: IntoIterator<Item = Vec<BigRational>>,
{
    let mut m: Vec<Vec<BigInt>> = rows
        .into_iter()
        .map(|r| integer_row(&r))
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    let pivots = bareiss_in_place(&mut m, ncols, true);
    let rows = m
        .into_iter()
        .zip(&pivots)
        .map(|(row, &p)| {
            let d = row[p].clone();
            row.into_iter()
                .map(|x| BigRational::new(x, d.clone()))
                .collect()
        })
        .collect();
    Echelon {
        ncols,
        rows,
        pivots,
    }
}
