//! Reduced zeroschemes in the projective plane and their hypersurface
//! sections.
//!
//! For reduced points the kernel of the degree-`t` evaluation matrix is
//! already the saturated slice `(I_X)_t`, so no saturation is needed.

use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::betti::betti_table;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::form::{random_form_with, Form, GradedIdeal};
use crate::lefschetz::{check_wlp, section_threshold, LefschetzVerdict};
use crate::linalg::Matrix;
use crate::monomial::{GradedBasis, Monomial};
use crate::quotient::{HilbertFunction, Quotient, QuotientSlice};
use crate::seed;

const MAX_RESAMPLES: usize = 1000;

/// Distinct points of `P^2`, each scaled so its first nonzero coordinate is 1.
#[derive(Debug, Clone)]
pub struct PlanePoints<F: Field> {
    field: F,
    points: Vec<[F::Elem; 3]>,
}

fn normalize<F: Field>(field: &F, p: [F::Elem; 3]) -> Option<[F::Elem; 3]> {
    let lead = p.iter().find(|c| !field.is_zero(c))?;
    let inv = field.inv(lead)?;
    Some(p.map(|c| field.mul(&c, &inv)))
}

impl<F: Field> PlanePoints<F> {
    /// Fails on the zero vector or on repeated points.
    pub fn new(field: F, coords: Vec<[F::Elem; 3]>) -> Result<Self> {
        let mut points: Vec<[F::Elem; 3]> = Vec::with_capacity(coords.len());
        for (index, p) in coords.into_iter().enumerate() {
            let p = normalize(&field, p)
                .ok_or_else(|| Error::Precondition(format!("point {index} has all coordinates zero")))?;
            if points.contains(&p) {
                return Err(Error::Precondition(format!("point {index} is repeated")));
            }
            points.push(p);
        }
        Ok(Self { field, points })
    }

    pub fn from_integers(field: F, coords: &[[i64; 3]]) -> Result<Self> {
        let pts = coords
            .iter()
            .map(|c| c.map(|v| field.from_i64(v)))
            .collect();
        Self::new(field, pts)
    }

    /// `e` random points, resampling coincidences.
    pub fn general(field: F, e: usize, seed: u64) -> Result<Self> {
        let mut rng = seed::rng(seed::derive(seed, &[seed::stream::POINTS]));
        let mut points = Vec::with_capacity(e);
        let mut attempts = 0;
        while points.len() < e {
            attempts += 1;
            if attempts > MAX_RESAMPLES * e.max(1) {
                return Err(Error::Precondition(format!("could not sample {e} distinct points")));
            }
            let p = [field.sample(&mut rng), field.sample(&mut rng), field.sample(&mut rng)];
            if let Some(p) = normalize(&field, p) {
                if !points.contains(&p) {
                    points.push(p);
                }
            }
        }
        Ok(Self { field, points })
    }

    /// `e` distinct points on a random line.
    pub fn collinear(field: F, e: usize, seed: u64) -> Result<Self> {
        let mut rng = seed::rng(seed::derive(seed, &[seed::stream::POINTS]));
        let line = loop {
            let a = [field.sample(&mut rng), field.sample(&mut rng), field.sample(&mut rng)];
            let b = [field.sample(&mut rng), field.sample(&mut rng), field.sample(&mut rng)];
            let (Some(na), Some(nb)) = (normalize(&field, a.clone()), normalize(&field, b.clone())) else {
                continue;
            };
            if na != nb {
                break (a, b);
            }
        };
        let mut points = Vec::with_capacity(e);
        let mut attempts = 0;
        while points.len() < e {
            attempts += 1;
            if attempts > MAX_RESAMPLES * e.max(1) {
                return Err(Error::Precondition(format!("could not sample {e} distinct points on a line")));
            }
            let (s, u) = (field.sample(&mut rng), field.sample(&mut rng));
            let p = [0, 1, 2].map(|k| field.add(&field.mul(&s, &line.0[k]), &field.mul(&u, &line.1[k])));
            if let Some(p) = normalize(&field, p) {
                if !points.contains(&p) {
                    points.push(p);
                }
            }
        }
        Ok(Self { field, points })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[[F::Elem; 3]] {
        &self.points
    }

    /// `e x C(t+2, 2)`: row `k` holds every degree-`t` monomial evaluated
    /// at point `k`.
    pub fn evaluation_matrix(&self, t: usize) -> Matrix<F::Elem> {
        evaluation_matrix(&self.field, &self.points, t)
    }

    /// `h_{R/I_X}(t)`.
    pub fn hilbert_value(&self, t: usize) -> usize {
        self.field.rank(&self.evaluation_matrix(t))
    }

    /// `h_{R/I_X}` through the first degree where it reaches `e`.
    pub fn hilbert_function(&self) -> HilbertFunction {
        let e = self.degree();
        let mut values = Vec::new();
        for t in 0.. {
            let h = self.hilbert_value(t);
            values.push(h);
            if h == e {
                break;
            }
        }
        HilbertFunction {
            values,
            artinian_confirmed: false,
        }
    }

    /// Least `t` with `h_{R/I_X}(t) = e`; at most `e - 1`.
    pub fn stabilization_degree(&self) -> usize {
        self.hilbert_function().values.len() - 1
    }

    /// `R/I_X`, or `R/(I_X + (gens))`.
    pub fn quotient(&self, gens: Vec<Form<F::Elem>>) -> Result<Quotient<F>> {
        let ideal = GradedIdeal::new(self.field.clone(), 3, gens)?;
        let (field, points) = (self.field.clone(), self.points.clone());
        let base = Arc::new(move |t: usize| kernel_rows(&field, &points, t));
        Ok(Quotient::with_base(ideal, base))
    }

    /// Index of the first point where `f` vanishes.
    pub fn first_zero(&self, f: &Form<F::Elem>) -> Option<usize> {
        self.points
            .iter()
            .position(|p| self.field.is_zero(&f.evaluate(&self.field, p)))
    }
}

fn evaluation_matrix<F: Field>(field: &F, points: &[[F::Elem; 3]], t: usize) -> Matrix<F::Elem> {
    let basis = GradedBasis::shared(3, t);
    let rows = points
        .iter()
        .map(|p| basis.monomials().iter().map(|m| eval_monomial(field, m, p)).collect())
        .collect();
    Matrix::from_rows(rows, basis.len())
}

fn eval_monomial<F: Field>(field: &F, m: &Monomial, p: &[F::Elem; 3]) -> F::Elem {
    m.exponents()
        .iter()
        .zip(p)
        .fold(field.one(), |acc, (&e, c)| field.mul(&acc, &field.pow(c, e as u64)))
}

fn kernel_rows<F: Field>(field: &F, points: &[[F::Elem; 3]], t: usize) -> Vec<Vec<F::Elem>> {
    let m = evaluation_matrix(field, points, t);
    let ncols = m.ncols();
    field.echelon((0..m.nrows()).map(|i| m.row(i).to_vec()), ncols).nullspace(field)
}

/// `(I_X)_t` as a reduced slice of `R_t`.
pub fn ideal_of_points_slice<F: Field>(x: &PlanePoints<F>, t: usize) -> QuotientSlice<F::Elem> {
    let rows = kernel_rows(&x.field, &x.points, t);
    let echelon = x.field.echelon(rows, GradedBasis::shared(3, t).len());
    QuotientSlice::from_echelon(3, t, echelon)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SyzygyData {
    /// Degrees `d_i` of the minimal generators of `I_X`.
    pub generator_degrees: Vec<usize>,
    /// Degrees `a_i` of the first syzygies.
    pub syzygy_degrees: Vec<usize>,
    /// `max a_i`.
    pub a: usize,
}

/// `0 -> ⊕ R(-a_i) -> ⊕ R(-d_i) -> I_X -> 0`.
pub fn syzygy_data<F: Field>(x: &PlanePoints<F>) -> Result<SyzygyData> {
    let q = x.quotient(Vec::new())?;
    let table = betti_table(&q, Some(x.stabilization_degree() + 3))?;
    let generator_degrees = table.shift_multiset(1);
    let syzygy_degrees = table.shift_multiset(2);
    if table.total(3) != 0 || syzygy_degrees.len() + 1 != generator_degrees.len() {
        return Err(Error::Precondition(format!(
            "resolution of the points is not of the expected shape: {:?}",
            table.totals()
        )));
    }
    Ok(SyzygyData {
        a: syzygy_degrees.iter().copied().max().unwrap_or(0),
        generator_degrees,
        syzygy_degrees,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SectionMode {
    /// A random form, resampled while it vanishes at a point of `X`.
    General,
    /// A product of `d` random linear forms, each avoiding `X`.
    Product,
    /// A sum of at most three random terms, avoiding `X`.
    Sparse,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SectionReport {
    pub mode: Option<SectionMode>,
    pub d: usize,
    pub a: usize,
    /// Whether `d >= a - 1`.
    pub threshold_met: bool,
    /// `h_{R/I_X}` through its stabilization.
    pub points_hilbert: Vec<usize>,
    pub verdict: LefschetzVerdict,
}

fn avoiding<F: Field, R: Rng>(
    x: &PlanePoints<F>,
    rng: &mut R,
    mut sample: impl FnMut(&mut R) -> Result<Form<F::Elem>>,
) -> Result<Form<F::Elem>> {
    for _ in 0..MAX_RESAMPLES {
        let f = sample(rng)?;
        if !f.is_zero() && x.first_zero(&f).is_none() {
            return Ok(f);
        }
    }
    Err(Error::Precondition("no sampled form avoids the points".into()))
}

/// The section form drawn for `mode`.
pub fn section_form<F: Field>(x: &PlanePoints<F>, d: usize, mode: SectionMode, seed: u64) -> Result<Form<F::Elem>> {
    let field = x.field.clone();
    let mut rng = seed::rng(seed::derive(seed, &[seed::stream::SECTION]));
    match mode {
        SectionMode::General => avoiding(x, &mut rng, |r| random_form_with(&field, 3, d, r)),
        SectionMode::Product => {
            let mut f = Form::monomial(&field, &Monomial::one(3));
            for _ in 0..d {
                let l = avoiding(x, &mut rng, |r| random_form_with(&field, 3, 1, r))?;
                f = f.mul(&field, &l);
            }
            Ok(f)
        }
        SectionMode::Sparse => {
            let basis = GradedBasis::shared(3, d);
            avoiding(x, &mut rng, |r| {
                let k = r.gen_range(1..=3.min(basis.len()));
                let terms: Vec<(Monomial, F::Elem)> = (0..k)
                    .map(|_| (basis.get(r.gen_range(0..basis.len())).clone(), field.sample(r)))
                    .collect();
                Form::from_terms(&field, 3, d, terms)
            })
        }
    }
}

/// WLP of `R/(I_X + (F))` for a form avoiding every point of `X`.
pub fn hypersurface_section_wlp_with<F: Field>(
    x: &PlanePoints<F>,
    f: &Form<F::Elem>,
    trials: usize,
    seed: u64,
) -> Result<SectionReport> {
    if f.nvars() != 3 || f.degree() == 0 || f.is_zero() {
        return Err(Error::InvalidDegree {
            degree: f.degree(),
            reason: "the section form must be a nonzero ternary form of positive degree",
        });
    }
    if let Some(index) = x.first_zero(f) {
        return Err(Error::FormVanishesAtPoint { index });
    }
    let d = f.degree();
    let hx = x.hilbert_function();
    let tau = hx.values.len() - 1;
    let q = x.quotient(vec![f.clone()])?.with_degree_bound(tau + d);
    let h = q.hilbert_function(None);
    // F avoids the support, so it is a nonzerodivisor on R/I_X
    for t in 0..=tau + d {
        let expected = hx.get(t.min(tau)) - if t >= d { hx.get((t - d).min(tau)) } else { 0 };
        if h.get(t) != expected {
            return Err(Error::Precondition(format!(
                "section Hilbert function {} differs from the difference formula at t = {t}",
                h
            )));
        }
    }
    let a = syzygy_data(x)?.a;
    Ok(SectionReport {
        mode: None,
        d,
        a,
        threshold_met: section_threshold(a, d),
        points_hilbert: hx.values,
        verdict: check_wlp(&q, trials, seed)?,
    })
}

pub fn hypersurface_section_wlp<F: Field>(
    x: &PlanePoints<F>,
    d: usize,
    mode: SectionMode,
    trials: usize,
    seed: u64,
) -> Result<SectionReport> {
    let f = section_form(x, d, mode, seed)?;
    let mut report = hypersurface_section_wlp_with(x, &f, trials, seed)?;
    report.mode = Some(mode);
    Ok(report)
}
