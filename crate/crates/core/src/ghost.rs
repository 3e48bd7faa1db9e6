//! Ghost terms: shifts shared by consecutive free modules of a minimal
//! resolution, and whether Koszul syzygies account for them numerically.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::betti::BettiTable;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::form::{random_form, GradedIdeal};
use crate::froberg::froberg_series;
use crate::monomial::{binomial, subsets, Monomial};
use crate::quotient::HilbertFunction;
use crate::seed;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ghost {
    /// The shift is shared by modules `i` and `i + 1`.
    pub i: usize,
    pub j: usize,
    pub beta_i: usize,
    pub beta_next: usize,
    /// How many of `j ∈ K_i`, `j ∈ K_{i+1}` hold.
    pub koszul_sides: u8,
    pub koszul_explicable: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GhostReport {
    pub ghosts: Vec<Ghost>,
    pub socle_degree: Option<usize>,
    pub degrees: Vec<usize>,
    /// `koszul_sets[i]`: sums of `i` distinct generator degrees.
    pub koszul_sets: Vec<Vec<usize>>,
}

impl GhostReport {
    pub fn non_koszul(&self) -> impl Iterator<Item = &Ghost> {
        self.ghosts.iter().filter(|g| !g.koszul_explicable)
    }

    pub fn has_non_koszul(&self, i: usize, j: usize) -> bool {
        self.non_koszul().any(|g| g.i == i && g.j == j)
    }
}

/// `K_i` for `i = 0..=len`, each sorted and deduplicated.
pub fn koszul_degree_sets(degrees: &[usize]) -> Vec<Vec<usize>> {
    (0..=degrees.len())
        .map(|i| {
            subsets(degrees.len(), i)
                .into_iter()
                .map(|s| s.iter().map(|&k| degrees[k]).sum())
                .collect::<BTreeSet<usize>>()
                .into_iter()
                .collect()
        })
        .collect()
}

fn in_set(sets: &[Vec<usize>], i: usize, j: usize) -> bool {
    sets.get(i).is_some_and(|s| s.binary_search(&j).is_ok())
}

pub fn detect_ghosts(table: &BettiTable, degrees: &[usize], socle_degree: Option<usize>) -> GhostReport {
    let sets = koszul_degree_sets(degrees);
    let mut ghosts = Vec::new();
    for i in 1..table.n {
        for j in 0..=table.j_max {
            let (a, b) = (table.get(i, j), table.get(i + 1, j));
            if a > 0 && b > 0 {
                let sides = in_set(&sets, i, j) as u8 + in_set(&sets, i + 1, j) as u8;
                ghosts.push(Ghost {
                    i,
                    j,
                    beta_i: a,
                    beta_next: b,
                    koszul_sides: sides,
                    koszul_explicable: sides == 2,
                });
            }
        }
    }
    GhostReport {
        ghosts,
        socle_degree,
        degrees: degrees.to_vec(),
        koszul_sets: sets,
    }
}

/// Socle degree used by the conjecture window: the predicted value when
/// the maximal rank property is known (`n <= 3`), the computed one
/// otherwise.
pub fn window_socle_degree(n: usize, degrees: &[usize], h: &HilbertFunction) -> Option<usize> {
    if n <= 3 {
        froberg_series(n, degrees, None).socle_degree
    } else {
        h.socle_degree()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowViolation {
    pub i: usize,
    pub j: usize,
    pub beta: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowVerdict {
    pub c: usize,
    pub holds: bool,
    /// `β_{i,j} > 0`, `i >= 2`, `j ∉ {c+i-1, c+i}` and `j ∉ K_i`.
    pub violations: Vec<WindowViolation>,
    /// Non-Koszul ghosts between the first and second modules.
    pub first_module_ghosts: Vec<usize>,
}

pub fn check_conjecture_window(table: &BettiTable, degrees: &[usize], c: usize) -> WindowVerdict {
    let sets = koszul_degree_sets(degrees);
    let mut violations = Vec::new();
    for (i, j, beta) in table.nonzero() {
        if i < 2 || j == c + i || j + 1 == c + i {
            continue;
        }
        if !in_set(&sets, i, j) {
            violations.push(WindowViolation { i, j, beta });
        }
    }
    let first_module_ghosts: Vec<usize> = detect_ghosts(table, degrees, Some(c))
        .non_koszul()
        .filter(|g| g.i == 1)
        .map(|g| g.j)
        .collect();
    WindowVerdict {
        c,
        holds: violations.is_empty() && first_module_ghosts.is_empty(),
        violations,
        first_module_ghosts,
    }
}

#[derive(Debug, Clone)]
pub struct GhostInstance<F: Field> {
    pub ideal: GradedIdeal<F>,
    pub ci_degrees: Vec<usize>,
    pub extra_count: usize,
    pub c: usize,
    /// `(i, j)`: predicted non-Koszul ghost `R(-j)` between modules `i`
    /// and `i + 1`.
    pub predicted: Vec<(usize, usize)>,
}

impl<F: Field> GhostInstance<F> {
    pub fn degrees(&self) -> Vec<usize> {
        self.ideal.degrees()
    }
}

fn build_instance<F: Field>(
    field: F,
    ci_degrees: &[usize],
    q: usize,
    seed: u64,
) -> Result<(GradedIdeal<F>, usize)> {
    let n = ci_degrees.len();
    let c = ci_degrees.iter().sum::<usize>() - n - 1;
    let ci = GradedIdeal::random(field.clone(), n, ci_degrees, seed)?;
    let extra = (0..q)
        .map(|k| {
            random_form(
                &field,
                n,
                c,
                seed::derive(seed, &[seed::stream::GENERATOR, (n + k) as u64]),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((ci.with_generators(extra)?, c))
}

fn check_sorted(ci_degrees: &[usize]) -> Result<()> {
    if ci_degrees.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::Precondition("complete intersection degrees must be sorted".into()));
    }
    Ok(())
}

/// A general complete intersection of degrees `d_1 <= .. <= d_n`, `d_1 > 2`,
/// plus `q` general forms of degree `c = Σ d_i - n - 1`, `1 <= q <= n - 2`.
/// Predicted: non-Koszul ghosts `R(-c-j)` between modules `j` and `j + 1`
/// for `j = q+1, .., n-1`.
pub fn socle_forms_instance<F: Field>(
    field: F,
    ci_degrees: &[usize],
    q: usize,
    seed: u64,
) -> Result<GhostInstance<F>> {
    let n = ci_degrees.len();
    check_sorted(ci_degrees)?;
    if n < 3 {
        return Err(Error::Precondition("need at least three variables".into()));
    }
    if ci_degrees[0] <= 2 {
        return Err(Error::Precondition("the smallest degree must exceed 2".into()));
    }
    if q < 1 || q > n - 2 {
        return Err(Error::Precondition(format!(
            "extra form count {q} outside 1..={}",
            n - 2
        )));
    }
    let (ideal, c) = build_instance(field, ci_degrees, q, seed)?;
    Ok(GhostInstance {
        ideal,
        ci_degrees: ci_degrees.to_vec(),
        extra_count: q,
        c,
        predicted: (q + 1..n).map(|j| (j, c + j)).collect(),
    })
}

/// The end-of-resolution family: `q = n - 2` extra forms, one ghost
/// `R(-d+2)` between the last two modules.
pub fn last_module_ghost_instance<F: Field>(field: F, ci_degrees: &[usize], seed: u64) -> Result<GhostInstance<F>> {
    let n = ci_degrees.len();
    socle_forms_instance(field, ci_degrees, n.saturating_sub(2), seed)
}

/// Default complete intersection degrees for [`middle_ghost_instance`].
pub fn middle_ghost_default_degrees(n: usize) -> Option<Vec<usize>> {
    match n {
        4 => Some(vec![2, 4, 4, 4]),
        5 => Some(vec![2, 2, 2, 3, 3]),
        6 => Some(vec![2; 6]),
        _ => None,
    }
}

/// `4 <= n <= 6`, `q = n - 3` extra forms of degree `c`, at least `C(q+1, 2)`
/// quadrics among the complete intersection degrees. Predicted: the only
/// non-Koszul ghost is `R(-c-n+2)` between modules `n - 2` and `n - 1`.
pub fn middle_ghost_instance<F: Field>(field: F, ci_degrees: &[usize], seed: u64) -> Result<GhostInstance<F>> {
    let n = ci_degrees.len();
    check_sorted(ci_degrees)?;
    if !(4..=6).contains(&n) {
        return Err(Error::Precondition(format!("needs 4 <= n <= 6, got n = {n}")));
    }
    let q = n - 3;
    let mu2 = ci_degrees.iter().filter(|&&d| d == 2).count();
    if mu2 == 0 || mu2 < binomial(q + 1, 2) {
        return Err(Error::Precondition(format!(
            "needs at least {} quadrics, got {mu2}",
            binomial(q + 1, 2).max(1)
        )));
    }
    if ci_degrees[0] < 2 {
        return Err(Error::Precondition("degrees must be at least 2".into()));
    }
    let (ideal, c) = build_instance(field, ci_degrees, q, seed)?;
    Ok(GhostInstance {
        ideal,
        ci_degrees: ci_degrees.to_vec(),
        extra_count: q,
        c,
        predicted: vec![(n - 2, c + n - 2)],
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredictionCheck {
    pub predicted: Vec<(usize, usize)>,
    /// Predicted positions where both Betti numbers are positive and the
    /// shift is not Koszul-explicable.
    pub confirmed: Vec<(usize, usize)>,
    /// Unpredicted non-Koszul ghosts with no Koszul reading on either side.
    pub unpredicted: Vec<(usize, usize)>,
    /// Unpredicted non-Koszul ghosts whose shift is Koszul in exactly one of
    /// the two modules.
    pub mixed: Vec<(usize, usize)>,
}

impl PredictionCheck {
    pub fn all_confirmed(&self) -> bool {
        self.confirmed.len() == self.predicted.len()
    }

    pub fn exact(&self) -> bool {
        self.all_confirmed() && self.unpredicted.is_empty()
    }
}

pub fn check_prediction(report: &GhostReport, predicted: &[(usize, usize)]) -> PredictionCheck {
    let confirmed = predicted
        .iter()
        .copied()
        .filter(|&(i, j)| report.has_non_koszul(i, j))
        .collect();
    let (mixed, unpredicted): (Vec<&Ghost>, Vec<&Ghost>) = report
        .non_koszul()
        .filter(|g| !predicted.contains(&(g.i, g.j)))
        .partition(|g| g.koszul_sides == 1);
    let pos = |v: Vec<&Ghost>| v.into_iter().map(|g| (g.i, g.j)).collect();
    PredictionCheck {
        predicted: predicted.to_vec(),
        confirmed,
        unpredicted: pos(unpredicted),
        mixed: pos(mixed),
    }
}

/// Predicted resolution of `R/G` where `R/G` has Hilbert function `1, q, 0`:
/// module `j` is `R(-j)^{C(n-q, j)} ⊕ R(-j-1)^{a_j}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidualResolution {
    pub n: usize,
    pub q: usize,
    /// `a_1, .., a_n`.
    pub a: Vec<i64>,
    /// `C(n-q, j)` for `j = 0..=n`.
    pub linear: Vec<i64>,
}

impl ResidualResolution {
    pub fn to_table(&self) -> Option<BettiTable> {
        let mut t = BettiTable::zero(self.n, self.n + 1);
        for j in 0..=self.n {
            t.betti[j][j] = usize::try_from(self.linear[j]).ok()?;
            if j >= 1 {
                t.betti[j][j + 1] = usize::try_from(self.a[j - 1]).ok()?;
            }
        }
        Some(t)
    }
}

/// Solves `0 = dim (R/G)_i` for `a_{i-1}`, `i = 2, .., n + 1`.
pub fn predicted_resolution_of_g(n: usize, q: usize) -> Result<ResidualResolution> {
    if q < 1 || q + 2 > n {
        return Err(Error::Precondition(format!("needs 1 <= q <= n - 2, got n = {n}, q = {q}")));
    }
    let c = |a: usize, b: usize| binomial(a, b) as i64;
    let lin = n - q;
    let mut a: Vec<i64> = Vec::with_capacity(n);
    for i in 2..=n + 1 {
        let mut acc = c(n - 1 + i, n - 1);
        for j in 1..i {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            acc += sign * c(n - 1 + i - j, n - 1) * c(lin, j);
            if j <= i - 2 {
                acc += sign * a[j - 1] * c(n - 2 + i - j, n - 1);
            }
        }
        acc += if i % 2 == 0 { c(lin, i) } else { -c(lin, i) };
        // the a_{i-1} term enters with sign (-1)^{i-1}
        a.push(if i % 2 == 0 { acc } else { -acc });
    }
    Ok(ResidualResolution {
        n,
        q,
        a,
        linear: (0..=n).map(|j| c(lin, j)).collect(),
    })
}

/// `(x_{q+1}, .., x_n) + (x_i x_j : 1 <= i <= j <= q)`, whose quotient has
/// Hilbert function `1, q, 0`.
pub fn residual_model<F: Field>(field: F, n: usize, q: usize) -> Result<GradedIdeal<F>> {
    let mut gens: Vec<Monomial> = (q..n).map(|k| Monomial::var(k, n)).collect();
    for a in 0..q {
        for b in a..q {
            gens.push(Monomial::var(a, n).mul(&Monomial::var(b, n)));
        }
    }
    GradedIdeal::monomial(field, n, &gens)
}
