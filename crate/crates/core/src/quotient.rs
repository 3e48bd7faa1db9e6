//! Degreewise slices of a graded ideal and of its quotient `A = R/I`.

use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};

use crate::field::Field;
use crate::form::{Form, GradedIdeal};
use crate::linalg::{Echelon, EchelonBuilder, Matrix};
use crate::monomial::{GradedBasis, Monomial};

/// Extra spanning vectors of `I_t` beyond the multiples of the generators,
/// e.g. the degree-`t` slice of a saturated ideal of points.
pub type BaseRows<E> = Arc<dyn Fn(usize) -> Vec<Vec<E>> + Send + Sync>;

/// `I_t` in reduced echelon form together with the standard-monomial basis of
/// `(R/I)_t`.
#[derive(Debug, Clone)]
pub struct QuotientSlice<E> {
    n: usize,
    degree: usize,
    echelon: Echelon<E>,
    standard: Vec<usize>,
    std_pos: Vec<Option<usize>>,
    pivot_row: Vec<Option<usize>>,
    /// Echelon rows restricted to standard columns.
    tails: Vec<Vec<E>>,
}

impl<E: Clone + PartialEq> QuotientSlice<E> {
    pub fn from_echelon(n: usize, degree: usize, echelon: Echelon<E>) -> Self {
        let ncols = echelon.ncols();
        let standard = echelon.free_columns();
        let mut std_pos = vec![None; ncols];
        for (k, &c) in standard.iter().enumerate() {
            std_pos[c] = Some(k);
        }
        let mut pivot_row = vec![None; ncols];
        for (r, &p) in echelon.pivots().iter().enumerate() {
            pivot_row[p] = Some(r);
        }
        let tails = echelon
            .rows()
            .iter()
            .map(|row| standard.iter().map(|&c| row[c].clone()).collect())
            .collect();
        Self {
            n,
            degree,
            echelon,
            standard,
            std_pos,
            pivot_row,
            tails,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn dim_ambient(&self) -> usize {
        self.echelon.ncols()
    }

    pub fn dim_ideal(&self) -> usize {
        self.echelon.rank()
    }

    pub fn dim_quotient(&self) -> usize {
        self.standard.len()
    }

    pub fn echelon(&self) -> &Echelon<E> {
        &self.echelon
    }

    pub fn pivots(&self) -> &[usize] {
        self.echelon.pivots()
    }

    /// Basis positions of the standard monomials.
    pub fn standard_columns(&self) -> &[usize] {
        &self.standard
    }

    pub fn standard_monomials(&self) -> Vec<Monomial> {
        let b = GradedBasis::shared(self.n, self.degree);
        self.standard.iter().map(|&c| b.get(c).clone()).collect()
    }

    pub fn standard_position(&self, col: usize) -> Option<usize> {
        self.std_pos[col]
    }

    /// Coordinates of the class of `v` (a dense vector over `R_t`) in the
    /// standard-monomial basis.
    pub fn reduce<F: Field<Elem = E>>(&self, field: &F, v: &[E]) -> Vec<E> {
        debug_assert_eq!(v.len(), self.dim_ambient());
        let mut out: Vec<E> = self.standard.iter().map(|&c| v[c].clone()).collect();
        for (r, &p) in self.echelon.pivots().iter().enumerate() {
            if !field.is_zero(&v[p]) {
                let coef = field.neg(&v[p]);
                field.axpy(&mut out, &coef, &self.tails[r]);
            }
        }
        out
    }

    /// Sparse standard coordinates of the class of basis monomial `col`.
    pub fn column_coords<F: Field<Elem = E>>(&self, field: &F, col: usize) -> Vec<(usize, E)> {
        if let Some(k) = self.std_pos[col] {
            return vec![(k, field.one())];
        }
        let r = self.pivot_row[col].expect("non-standard columns are pivots");
        self.tails[r]
            .iter()
            .enumerate()
            .filter(|(_, c)| !field.is_zero(c))
            .map(|(k, c)| (k, field.neg(c)))
            .collect()
    }

    pub fn contains<F: Field<Elem = E>>(&self, field: &F, v: &[E]) -> bool {
        self.reduce(field, v).iter().all(|c| field.is_zero(c))
    }
}

/// Values `h(0), .., h(t_max)` of the Hilbert function of `R/I`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertFunction {
    pub values: Vec<usize>,
    /// A zero value was reached (and all later values vanish).
    pub artinian_confirmed: bool,
}

impl HilbertFunction {
    pub fn get(&self, t: usize) -> usize {
        self.values.get(t).copied().unwrap_or(0)
    }

    /// Last degree with a nonzero value; `None` unless confirmed Artinian.
    pub fn socle_degree(&self) -> Option<usize> {
        if !self.artinian_confirmed {
            return None;
        }
        self.values.iter().rposition(|&h| h > 0)
    }

    pub fn length(&self) -> usize {
        self.values.iter().sum()
    }
}

impl fmt::Display for HilbertFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join(", "))?;
        if !self.artinian_confirmed {
            write!(f, ", ...")?;
        }
        Ok(())
    }
}

/// The graded algebra `R/I` with lazily computed, cached slices.
pub struct Quotient<F: Field> {
    ideal: GradedIdeal<F>,
    base: Option<BaseRows<F::Elem>>,
    degree_bound: Option<usize>,
    /// Least degree known to vanish; every later slice is zero too.
    vanishes_from: AtomicUsize,
    slices: RwLock<HashMap<usize, Arc<QuotientSlice<F::Elem>>>>,
}

impl<F: Field> fmt::Debug for Quotient<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Quotient")
            .field("ideal", &self.ideal)
            .field("has_base", &self.base.is_some())
            .finish()
    }
}

impl<F: Field> Quotient<F> {
    pub fn new(ideal: GradedIdeal<F>) -> Self {
        Self {
            ideal,
            base: None,
            degree_bound: None,
            vanishes_from: AtomicUsize::new(usize::MAX),
            slices: RwLock::new(HashMap::new()),
        }
    }

    /// `R/(B + I)` where `B_t` is spanned by `base(t)`; `B` must be an ideal.
    pub fn with_base(ideal: GradedIdeal<F>, base: BaseRows<F::Elem>) -> Self {
        Self {
            ideal,
            base: Some(base),
            degree_bound: None,
            vanishes_from: AtomicUsize::new(usize::MAX),
            slices: RwLock::new(HashMap::new()),
        }
    }

    /// Overrides [`Self::default_t_max`], for quotients whose base rows
    /// make the generator-degree bound meaningless.
    pub fn with_degree_bound(mut self, t_max: usize) -> Self {
        self.degree_bound = Some(t_max);
        self
    }

    pub fn ideal(&self) -> &GradedIdeal<F> {
        &self.ideal
    }

    pub fn field(&self) -> &F {
        self.ideal.field()
    }

    pub fn nvars(&self) -> usize {
        self.ideal.nvars()
    }

    pub fn base(&self) -> Option<&BaseRows<F::Elem>> {
        self.base.as_ref()
    }

    fn spanning_rows(&self, t: usize) -> Vec<Vec<F::Elem>> {
        let field = self.field();
        let n = self.nvars();
        let mut rows = self.base.as_ref().map(|b| b(t)).unwrap_or_default();
        for g in self.ideal.generators() {
            if g.degree() > t {
                continue;
            }
            let shifts = GradedBasis::shared(n, t - g.degree());
            rows.extend(shifts.monomials().iter().map(|m| g.shifted_dense(field, m)));
        }
        rows
    }

    pub fn slice(&self, t: usize) -> Arc<QuotientSlice<F::Elem>> {
        if let Some(s) = self.slices.read().expect("slice cache poisoned").get(&t) {
            return s.clone();
        }
        let ncols = GradedBasis::shared(self.nvars(), t).len();
        let echelon = self.field().echelon(self.spanning_rows(t), ncols);
        let slice = Arc::new(QuotientSlice::from_echelon(self.nvars(), t, echelon));
        if slice.dim_quotient() == 0 {
            self.vanishes_from.fetch_min(t, Ordering::Relaxed);
        }
        self.slices
            .write()
            .expect("slice cache poisoned")
            .entry(t)
            .or_insert(slice)
            .clone()
    }

    /// `dim A_t`. Degrees past a known zero are answered without building
    /// their slice.
    pub fn dim(&self, t: usize) -> usize {
        if t >= self.vanishes_from.load(Ordering::Relaxed) {
            return 0;
        }
        self.slice(t).dim_quotient()
    }

    /// A degree by which every Artinian quotient with these generators has
    /// vanished: `I_D` contains a regular sequence of `n` forms of degree
    /// `D = max d_i`, so the socle degree is at most `n (D - 1)`.
    pub fn default_t_max(&self) -> usize {
        if let Some(t) = self.degree_bound {
            return t;
        }
        let n = self.nvars();
        let d = self.ideal.degrees().into_iter().max().unwrap_or(1).max(1);
        n * (d - 1) + 1
    }

    /// Hilbert function up to `t_max` (default [`Self::default_t_max`]),
    /// stopping at the first zero.
    pub fn hilbert_function(&self, t_max: Option<usize>) -> HilbertFunction {
        let t_max = t_max.unwrap_or_else(|| self.default_t_max());
        let mut values = Vec::new();
        for t in 0..=t_max {
            let h = self.dim(t);
            values.push(h);
            if h == 0 {
                return HilbertFunction {
                    values,
                    artinian_confirmed: true,
                };
            }
        }
        HilbertFunction {
            values,
            artinian_confirmed: false,
        }
    }

    /// Matrix of `x_k : A_t -> A_{t+1}`; row `i` holds the image of the
    /// `i`-th standard monomial.
    pub fn variable_matrix(&self, k: usize, t: usize) -> Matrix<F::Elem> {
        let field = self.field();
        let (src, dst) = (self.slice(t), self.slice(t + 1));
        let sb = GradedBasis::shared(self.nvars(), t);
        let db = GradedBasis::shared(self.nvars(), t + 1);
        let mut m = Matrix::filled(src.dim_quotient(), dst.dim_quotient(), field.zero());
        for (i, &c) in src.standard_columns().iter().enumerate() {
            let target = db.index_of(&sb.get(c).mul_var(k)).expect("degree t+1");
            for (j, v) in dst.column_coords(field, target) {
                m[(i, j)] = v;
            }
        }
        m
    }

    /// Matrix of multiplication by `f : A_t -> A_{t + deg f}`, rows indexed
    /// by the standard monomials of degree `t`.
    pub fn multiplication_matrix(&self, f: &Form<F::Elem>, t: usize) -> Matrix<F::Elem> {
        let field = self.field();
        let src = self.slice(t);
        let dst = self.slice(t + f.degree());
        let sb = GradedBasis::shared(self.nvars(), t);
        let rows: Vec<Vec<F::Elem>> = src
            .standard_columns()
            .iter()
            .map(|&c| dst.reduce(field, &f.shifted_dense(field, sb.get(c))))
            .collect();
        Matrix::from_rows(rows, dst.dim_quotient())
    }

    pub fn multiplication_rank(&self, f: &Form<F::Elem>, t: usize) -> usize {
        self.field().rank(&self.multiplication_matrix(f, t))
    }

    /// `dim (R_1 · I_{t-1})`.
    pub fn dim_linear_multiples(&self, t: usize) -> usize {
        if t == 0 {
            return 0;
        }
        let field = self.field();
        let n = self.nvars();
        let prev = self.slice(t - 1);
        let pb = GradedBasis::shared(n, t - 1);
        let tb = GradedBasis::shared(n, t);
        let mut b = EchelonBuilder::new(field, tb.len());
        for row in prev.echelon().rows() {
            for k in 0..n {
                let mut v = vec![field.zero(); tb.len()];
                for (c, x) in row.iter().enumerate() {
                    if !field.is_zero(x) {
                        v[tb.index_of(&pb.get(c).mul_var(k)).expect("degree t")] = x.clone();
                    }
                }
                if b.is_full() {
                    return b.rank();
                }
                b.insert(v);
            }
        }
        b.rank()
    }

    /// Whether the form lies in the ideal.
    pub fn contains(&self, f: &Form<F::Elem>) -> bool {
        self.slice(f.degree()).contains(self.field(), &f.to_dense(self.field()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, RationalField};
    use crate::form::parse_monomials;
    use crate::monomial::binomial;
    use proptest::prelude::*;

    fn ex41<F: Field>(field: F) -> Quotient<F> {
        let (n, ms) = parse_monomials("x^2,xy,xz,y^3,z^3", None).unwrap();
        Quotient::new(GradedIdeal::monomial(field, n, &ms).unwrap())
    }

    #[test]
    fn monomial_slice_and_hilbert_function() {
        let q = ex41(PrimeField::default());
        let s = q.slice(2);
        assert_eq!(s.dim_quotient(), 3);
        let names: Vec<String> = s.standard_monomials().iter().map(|m| m.to_string()).collect();
        assert_eq!(names, ["y^2", "yz", "z^2"]);
        let h = q.hilbert_function(None);
        assert_eq!(h.values, [1, 3, 3, 2, 1, 0]);
        assert!(h.artinian_confirmed);
        assert_eq!(h.socle_degree(), Some(4));
    }

    #[test]
    fn complete_intersections() {
        let f = PrimeField::default();
        let q = Quotient::new(GradedIdeal::monomial_ci(f, &[2, 2]).unwrap());
        assert_eq!(q.hilbert_function(None).values, [1, 2, 1, 0]);
        let q = Quotient::new(GradedIdeal::random(f, 3, &[2, 2, 2], 3).unwrap());
        assert_eq!(q.dim(3), 1);
        let q = Quotient::new(GradedIdeal::random(f, 3, &[2, 2, 2, 2], 3).unwrap());
        assert_eq!(q.hilbert_function(None).values, [1, 3, 2, 0]);
        let q = Quotient::new(GradedIdeal::random(f, 3, &[5, 5, 5, 7], 11).unwrap());
        assert_eq!(q.hilbert_function(None).socle_degree(), Some(9));
    }

    #[test]
    fn multiplication_matrices() {
        let f = PrimeField::default();
        let q = ex41(f);
        let l = Form::linear(&f, &[5, 17, 23]);
        let m = q.multiplication_matrix(&l, 1);
        assert_eq!((m.nrows(), m.ncols()), (3, 3));
        assert_eq!(f.rank(&m), 2);
        let ci = Quotient::new(GradedIdeal::monomial_ci(f, &[2, 2, 2]).unwrap());
        assert_eq!(ci.multiplication_rank(&l, 1), 3);
        let m = ci.multiplication_matrix(&l, 4);
        assert_eq!((m.nrows(), f.rank(&m)), (0, 0));

        let qq = RationalField::default();
        let ci = Quotient::new(GradedIdeal::monomial_ci(qq, &[2, 2, 2]).unwrap());
        let l = Form::linear(&qq, &[qq.from_i64(5), qq.from_i64(17), qq.from_i64(23)]);
        assert_eq!(ci.multiplication_rank(&l, 1), 3);
    }

    #[test]
    fn ideal_slices_are_closed_under_variables() {
        let f = PrimeField::default();
        let q = Quotient::new(GradedIdeal::random(f, 3, &[2, 3, 3], 5).unwrap());
        for t in 2..6 {
            let (s, next) = (q.slice(t), q.slice(t + 1));
            assert_eq!(s.dim_ideal() + s.dim_quotient(), binomial(t + 2, 2));
            let b = GradedBasis::shared(3, t);
            for row in s.echelon().rows() {
                let g = Form::from_dense(&f, 3, t, row);
                for k in 0..3 {
                    let xk = Form::monomial(&f, &Monomial::var(k, 3));
                    assert!(next.contains(&f, &g.mul(&f, &xk).to_dense(&f)));
                }
            }
            assert_eq!(b.len(), s.dim_ambient());
        }
    }

    #[test]
    fn variable_matrix_matches_generic_path() {
        let f = PrimeField::default();
        let q = Quotient::new(GradedIdeal::random(f, 3, &[2, 2, 3], 8).unwrap());
        for t in 0..4 {
            for k in 0..3 {
                let xk = Form::monomial(&f, &Monomial::var(k, 3));
                assert_eq!(q.variable_matrix(k, t), q.multiplication_matrix(&xk, t));
            }
        }
    }

    #[test]
    fn linear_multiples_detect_new_generators() {
        let q = ex41(PrimeField::default());
        // in degree 3 the new generators are y^3 and z^3
        assert_eq!(q.slice(3).dim_ideal() - q.dim_linear_multiples(3), 2);
        assert_eq!(q.slice(4).dim_ideal(), q.dim_linear_multiples(4));
    }

    #[test]
    fn parallel_slice_fill_is_idempotent() {
        use rayon::prelude::*;
        let f = PrimeField::default();
        let q = Quotient::new(GradedIdeal::random(f, 4, &[2, 2, 3, 3], 2).unwrap());
        let dims: Vec<usize> = (0..8usize).into_par_iter().map(|t| q.dim(t)).collect();
        let fresh = Quotient::new(q.ideal().clone());
        let again: Vec<usize> = (0..8).map(|t| fresh.dim(t)).collect();
        assert_eq!(dims, again);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn hilbert_function_is_coordinate_invariant(seed in 0u64..1000, d1 in 1usize..4, d2 in 1usize..4, d3 in 1usize..4) {
            let f = PrimeField::default();
            let ideal = GradedIdeal::random(f, 3, &[d1, d2, d3, 2], seed).unwrap();
            let g: Vec<Vec<u32>> = (0..3)
                .map(|i| (0..3).map(|j| ((seed as usize + 7 * i + 3 * j * j + i * j) % 11) as u32 + u32::from(i == j) * 5).collect())
                .collect();
            let gm = Matrix::from_rows(g.clone(), 3);
            prop_assume!(f.rank(&gm) == 3);
            let moved = ideal.linear_substitution(&g).unwrap();
            let a = Quotient::new(ideal).hilbert_function(None);
            let b = Quotient::new(moved).hilbert_function(None);
            prop_assert_eq!(a, b);
        }

        #[test]
        fn complete_intersection_hilbert_function(d1 in 1usize..5, d2 in 1usize..5, d3 in 1usize..5, seed in 0u64..1000) {
            let f = PrimeField::default();
            let degrees = [d1, d2, d3];
            let h = Quotient::new(GradedIdeal::random(f, 3, &degrees, seed).unwrap()).hilbert_function(None);
            // coefficients of prod (1 + t + .. + t^{d_i - 1})
            let mut poly = vec![1i64];
            for &d in &degrees {
                let mut next = vec![0i64; poly.len() + d - 1];
                for (i, c) in poly.iter().enumerate() {
                    for k in 0..d {
                        next[i + k] += c;
                    }
                }
                poly = next;
            }
            poly.push(0);
            let expected: Vec<usize> = poly.into_iter().map(|c| c as usize).collect();
            prop_assert_eq!(h.values, expected);
        }
    }
}
