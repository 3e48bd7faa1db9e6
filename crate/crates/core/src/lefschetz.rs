//! Weak Lefschetz, Strong Lefschetz and Maximal Rank checks.
//!
//! A spot `(t, d)` asks whether multiplication `A_t -> A_{t+d}` by a general
//! multiplier has rank `min(dim A_t, dim A_{t+d})`. Maximal rank is an open
//! condition, so one multiplier achieving it certifies the spot; a spot
//! fails only when every trial falls short.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::form::{random_form, random_form_with, Form};
use crate::quotient::{HilbertFunction, Quotient};
use crate::seed;

pub const DEFAULT_TRIALS: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Property {
    Wlp,
    Slp,
    Mrp,
}

impl std::fmt::Display for Property {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Property::Wlp => "WLP",
            Property::Slp => "SLP",
            Property::Mrp => "MRP",
        })
    }
}

/// Outcome at one spot: the best rank over all multipliers tried.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Spot {
    pub t: usize,
    pub d: usize,
    pub expected: usize,
    pub achieved: usize,
    /// Multipliers evaluated before the spot was certified (or all of them).
    pub tried: usize,
    /// Certified by the sum of the variables rather than a random multiplier.
    pub by_sum_of_variables: bool,
    /// Sub-seeds of the random multipliers tried.
    pub seeds: Vec<u64>,
}

impl Spot {
    pub fn certified(&self) -> bool {
        self.achieved == self.expected
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub t: usize,
    pub d: usize,
    pub expected: usize,
    pub achieved: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LefschetzVerdict {
    pub property: Property,
    pub holds: bool,
    pub trials: usize,
    pub seed: u64,
    pub hilbert_function: Vec<usize>,
    pub witnesses: Vec<Witness>,
    pub spots: Vec<Spot>,
}

impl LefschetzVerdict {
    /// For multiplication by linear forms (`d = 1`): once some spot is
    /// surjective, every later spot is surjective as well.
    pub fn surjectivity_is_monotone(&self) -> bool {
        let mut surjective = false;
        for s in self.spots.iter().filter(|s| s.d == 1) {
            let target = self.hilbert_function.get(s.t + 1).copied().unwrap_or(0);
            let onto = s.achieved == target;
            if surjective && !onto {
                return false;
            }
            surjective |= onto;
        }
        true
    }

    /// Short human-readable note on what a failure means.
    pub fn confidence_note(&self) -> Option<String> {
        (!self.holds).then(|| {
            format!(
                "every one of the {} multipliers tried fell short at {} spot(s)",
                self.trials,
                self.witnesses.len()
            )
        })
    }
}

fn sum_of_variables<F: Field>(field: &F, n: usize) -> Form<F::Elem> {
    Form::linear(field, &vec![field.one(); n])
}

fn multiplier<F: Field>(
    field: &F,
    n: usize,
    property: Property,
    d: usize,
    sub_seed: u64,
) -> Form<F::Elem> {
    match property {
        Property::Wlp | Property::Slp => {
            let mut rng = seed::rng(sub_seed);
            random_form_with(field, n, 1, &mut rng)
                .expect("degree 1")
                .pow(field, d)
        }
        Property::Mrp => random_form(field, n, d, sub_seed).expect("d >= 1"),
    }
}

fn check_spot<F: Field>(
    q: &Quotient<F>,
    h: &HilbertFunction,
    property: Property,
    t: usize,
    d: usize,
    trials: usize,
    master: u64,
) -> Spot {
    let field = q.field();
    let n = q.nvars();
    let expected = h.get(t).min(h.get(t + d));
    let mut spot = Spot {
        t,
        d,
        expected,
        achieved: 0,
        tried: 0,
        by_sum_of_variables: false,
        seeds: Vec::new(),
    };
    if expected == 0 {
        return spot;
    }
    if q.ideal().monomial_generators().is_some() && q.base().is_none() {
        let f = sum_of_variables(field, n).pow(field, d);
        spot.tried += 1;
        spot.achieved = q.multiplication_rank(&f, t);
        if spot.certified() {
            spot.by_sum_of_variables = true;
            return spot;
        }
    }
    let stream = match property {
        Property::Wlp | Property::Slp => seed::stream::LINEAR_FORM,
        Property::Mrp => seed::stream::MULTIPLIER,
    };
    for k in 0..trials {
        let s = seed::derive(master, &[stream, t as u64, d as u64, k as u64]);
        spot.seeds.push(s);
        spot.tried += 1;
        let f = multiplier(field, n, property, d, s);
        spot.achieved = spot.achieved.max(q.multiplication_rank(&f, t));
        if spot.certified() {
            break;
        }
    }
    spot
}

fn check<F: Field>(
    q: &Quotient<F>,
    property: Property,
    trials: usize,
    seed: u64,
) -> Result<LefschetzVerdict> {
    let h = q.hilbert_function(None);
    let socle = h.socle_degree().ok_or(Error::NotArtinian {
        t_max: h.values.len().saturating_sub(1),
    })?;
    let mut spots: Vec<(usize, usize)> = Vec::new();
    for t in 0..=socle {
        match property {
            Property::Wlp => spots.push((t, 1)),
            Property::Slp | Property::Mrp => spots.extend((1..=(socle - t).max(1)).map(|d| (t, d))),
        }
    }
    for t in 0..=socle + 1 {
        q.slice(t);
    }
    let results: Vec<Spot> = spots
        .par_iter()
        .map(|&(t, d)| check_spot(q, &h, property, t, d, trials.max(1), seed))
        .collect();
    let witnesses: Vec<Witness> = results
        .iter()
        .filter(|s| !s.certified())
        .map(|s| Witness {
            t: s.t,
            d: s.d,
            expected: s.expected,
            achieved: s.achieved,
        })
        .collect();
    Ok(LefschetzVerdict {
        property,
        holds: witnesses.is_empty(),
        trials: trials.max(1),
        seed,
        hilbert_function: h.values,
        witnesses,
        spots: results,
    })
}

pub fn check_wlp<F: Field>(q: &Quotient<F>, trials: usize, seed: u64) -> Result<LefschetzVerdict> {
    check(q, Property::Wlp, trials, seed)
}

pub fn check_slp<F: Field>(q: &Quotient<F>, trials: usize, seed: u64) -> Result<LefschetzVerdict> {
    check(q, Property::Slp, trials, seed)
}

pub fn check_mrp<F: Field>(q: &Quotient<F>, trials: usize, seed: u64) -> Result<LefschetzVerdict> {
    check(q, Property::Mrp, trials, seed)
}

pub fn check_property<F: Field>(
    q: &Quotient<F>,
    property: Property,
    trials: usize,
    seed: u64,
) -> Result<LefschetzVerdict> {
    check(q, property, trials, seed)
}

fn ceil_half(x: usize) -> usize {
    x.div_ceil(2)
}

fn arity(check: &'static str, expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::InvalidArity {
            check,
            expected,
            got,
        })
    }
}

/// Which case of the large-last-degree criterion for complete
/// intersections of `n` forms applies. The degrees are sorted first; all
/// must be at least 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LastDegreeCase {
    Even,
    Odd,
}

pub fn large_last_degree(n: usize, degrees: &[usize]) -> Result<Option<LastDegreeCase>> {
    arity("large-last-degree criterion", n, degrees.len())?;
    let mut d = degrees.to_vec();
    d.sort_unstable();
    if n == 0 || d[0] < 2 {
        return Ok(None);
    }
    let dn = d[n - 1] as i64;
    let rest: i64 = d[..n - 1].iter().map(|&x| x as i64).sum();
    let total = rest + dn - n as i64;
    Ok(if total % 2 == 0 {
        (dn > rest - n as i64).then_some(LastDegreeCase::Even)
    } else {
        (dn > rest - n as i64 + 1).then_some(LastDegreeCase::Odd)
    })
}

/// `λ = ⌈(d_1 + d_2 + d_3)/2⌉` for four degrees in three variables, in the
/// given (unsorted) order.
pub fn lambda(degrees: &[usize]) -> usize {
    ceil_half(degrees[..degrees.len() - 1].iter().sum())
}

/// Almost complete intersection in three variables with `d_4 >= λ - 1`,
/// where `(F_1, F_2, F_3)` is the regular sequence. Degrees are not sorted.
pub fn aci_lambda_minus_one(n: usize, degrees: &[usize]) -> Result<bool> {
    arity("almost complete intersection criterion (n = 3)", 3, n)?;
    arity("almost complete intersection criterion", 4, degrees.len())?;
    Ok(degrees[3] + 1 >= lambda(degrees))
}

/// The `n`-variable version: `d_{n+1} >= ⌈(d_1+..+d_n)/2⌉ - 1` and the large
/// last degree criterion holds for `d_1, .., d_n`.
pub fn aci_general(n: usize, degrees: &[usize]) -> Result<bool> {
    arity("almost complete intersection criterion", n + 1, degrees.len())?;
    let last = degrees[n];
    Ok(last + 1 >= lambda(degrees) && large_last_degree(n, &degrees[..n])?.is_some())
}

/// Almost complete intersection in three variables with all `d_i >= 2` and
/// `d_4 = λ - 2`. The side hypothesis on the fourth form is checked by
/// [`restriction_avoids_kernel`].
pub fn aci_lambda_minus_two(n: usize, degrees: &[usize]) -> Result<bool> {
    arity("lambda - 2 criterion (n = 3)", 3, n)?;
    arity("lambda - 2 criterion", 4, degrees.len())?;
    Ok(degrees.iter().all(|&d| d >= 2) && degrees[3] + 2 == lambda(degrees))
}

/// Hypersurface sections of plane zeroschemes: `d >= a - 1` with `a` the
/// largest first-syzygy degree.
pub fn section_threshold(a: usize, d: usize) -> bool {
    d + 1 >= a
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeConditions {
    pub lambda: Option<usize>,
    /// CI criterion on all `n` degrees (arity `n`).
    pub large_last_degree: Option<bool>,
    /// `d_4 >= λ - 1` (arity 4, `n = 3`).
    pub lambda_minus_one: Option<bool>,
    /// `n`-variable almost complete intersection criterion (arity `n + 1`).
    pub aci_general: Option<bool>,
    /// `d_4 = λ - 2` (arity 4, `n = 3`).
    pub lambda_minus_two: Option<bool>,
}

/// Evaluates every criterion whose arity matches.
pub fn degree_condition_checkers(n: usize, degrees: &[usize]) -> DegreeConditions {
    DegreeConditions {
        lambda: (n == 3 && degrees.len() == 4).then(|| lambda(degrees)),
        large_last_degree: large_last_degree(n, degrees).ok().map(|c| c.is_some()),
        lambda_minus_one: aci_lambda_minus_one(n, degrees).ok(),
        aci_general: aci_general(n, degrees).ok(),
        lambda_minus_two: aci_lambda_minus_two(n, degrees).ok(),
    }
}

/// Looks for a linear form `L` with `f ∉ (J + (L))_{deg f}`, i.e. `f` not in
/// the kernel of restriction `(R/J) -> (R/(J + L))`. Returns the sub-seed of
/// the first such `L`.
pub fn restriction_avoids_kernel<F: Field>(
    j: &crate::form::GradedIdeal<F>,
    f: &Form<F::Elem>,
    trials: usize,
    seed: u64,
) -> Result<Option<u64>> {
    let field = j.field();
    for k in 0..trials.max(1) {
        let s = seed::derive(seed, &[seed::stream::LINEAR_FORM, u64::MAX, k as u64]);
        let l = random_form(field, j.nvars(), 1, s)?;
        let q = Quotient::new(j.with_generators([l])?);
        if !q.contains(f) {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, RationalField};
    use crate::form::{parse_monomials, GradedIdeal};

    fn ex41() -> Quotient<PrimeField> {
        let (n, ms) = parse_monomials("x^2,xy,xz,y^3,z^3", None).unwrap();
        Quotient::new(GradedIdeal::monomial(PrimeField::default(), n, &ms).unwrap())
    }

    #[test]
    fn wlp_failure_has_witness() {
        let v = check_wlp(&ex41(), 5, 1).unwrap();
        assert!(!v.holds);
        assert_eq!(
            v.witnesses,
            [Witness {
                t: 1,
                d: 1,
                expected: 3,
                achieved: 2
            }]
        );
        let spot = v.spots.iter().find(|s| s.t == 1).unwrap();
        assert_eq!(spot.tried, 6);
        assert!(v.confidence_note().is_some());
    }

    #[test]
    fn monomial_complete_intersection_is_strong() {
        let f = PrimeField::default();
        let q = Quotient::new(GradedIdeal::monomial_ci(f, &[2, 2, 2]).unwrap());
        let w = check_wlp(&q, 5, 3).unwrap();
        assert!(w.holds && w.surjectivity_is_monotone());
        assert!(w.spots.iter().all(|s| s.expected == 0 || s.by_sum_of_variables));
        assert!(check_slp(&q, 5, 3).unwrap().holds);
        assert!(check_mrp(&q, 5, 3).unwrap().holds);
        let qq = Quotient::new(GradedIdeal::monomial_ci(RationalField::default(), &[2, 2, 2]).unwrap());
        assert!(check_slp(&qq, 5, 3).unwrap().holds);
    }

    #[test]
    fn trivial_quotient() {
        let f = PrimeField::default();
        let (n, ms) = parse_monomials("x,y,z", None).unwrap();
        let q = Quotient::new(GradedIdeal::monomial(f, n, &ms).unwrap());
        assert!(check_wlp(&q, 5, 0).unwrap().holds);
        assert!(check_slp(&q, 5, 0).unwrap().holds);
    }

    #[test]
    fn general_forms() {
        let f = PrimeField::default();
        for s in 0..3 {
            let q = Quotient::new(GradedIdeal::random(f, 2, &[3, 4, 4], s).unwrap());
            assert!(check_slp(&q, 5, s).unwrap().holds);
            assert!(check_mrp(&q, 5, s).unwrap().holds);
            let q = Quotient::new(GradedIdeal::random(f, 3, &[3, 3, 3, 3], s).unwrap());
            assert!(check_mrp(&q, 5, s).unwrap().holds);
        }
    }

    #[test]
    fn verdicts_are_deterministic() {
        let f = PrimeField::default();
        let q = Quotient::new(GradedIdeal::random(f, 3, &[2, 3, 3, 4], 9).unwrap());
        assert_eq!(check_slp(&q, 3, 5).unwrap(), check_slp(&q, 3, 5).unwrap());
    }

    #[test]
    fn non_artinian_rejected() {
        let f = PrimeField::default();
        let q = Quotient::new(GradedIdeal::random(f, 3, &[2, 2], 1).unwrap());
        assert!(matches!(check_wlp(&q, 2, 0), Err(Error::NotArtinian { .. })));
    }

    #[test]
    fn degree_conditions() {
        assert_eq!(large_last_degree(4, &[2, 2, 2, 4]).unwrap(), Some(LastDegreeCase::Even));
        assert_eq!(large_last_degree(3, &[3, 3, 3]).unwrap(), None);
        assert!(large_last_degree(3, &[2, 2]).is_err());
        assert!(aci_lambda_minus_one(3, &[3, 3, 3, 4]).unwrap());
        assert_eq!(lambda(&[3, 3, 3, 4]), 5);
        assert!(!aci_lambda_minus_one(3, &[3, 3, 3, 2]).unwrap());
        assert!(aci_lambda_minus_two(3, &[3, 3, 4, 3]).unwrap());
        assert!(aci_lambda_minus_two(4, &[3, 3, 4, 3]).is_err());
        assert!(aci_lambda_minus_one(3, &[3, 3, 3]).is_err());
        let all = degree_condition_checkers(3, &[3, 3, 4, 3]);
        assert_eq!(all.lambda, Some(5));
        assert_eq!(all.lambda_minus_two, Some(true));
        assert_eq!(all.large_last_degree, None);
        assert!(section_threshold(4, 3));
        assert!(!section_threshold(5, 3));
    }

    #[test]
    fn side_hypothesis_is_testable() {
        let f = PrimeField::default();
        let j = GradedIdeal::random(f, 3, &[3, 3, 4], 2).unwrap();
        let f4 = random_form(&f, 3, 3, 77).unwrap();
        assert!(restriction_avoids_kernel(&j, &f4, 3, 1).unwrap().is_some());
        // a member of J restricts to zero for every L
        let g = j.generators()[0].clone();
        assert_eq!(restriction_avoids_kernel(&j, &g, 3, 1).unwrap(), None);
    }
}
