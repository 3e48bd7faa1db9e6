//! Monomial ideals given by their minimal generators.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::form::{parse_monomials, GradedIdeal};
use crate::monomial::{GradedBasis, Monomial};

/// Ideal generated by monomials; the generators form a divisibility
/// antichain sorted in drl order (degree first).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialIdeal {
    n: usize,
    gens: Vec<Monomial>,
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    // ascending degree, so a divisor is always seen before its multiples
    for g in gens {
        if !out.iter().any(|m| m.divides(&g)) {
            out.push(g);
        }
    }
    out.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| b.cmp_drl(a)));
    out
}

impl MonomialIdeal {
    pub fn new(n: usize, gens: impl IntoIterator<Item = Monomial>) -> Result<Self> {
        let gens: Vec<Monomial> = gens.into_iter().collect();
        if let Some(g) = gens.iter().find(|g| g.nvars() != n) {
            return Err(Error::VariableCountMismatch {
                expected: n,
                got: g.nvars(),
            });
        }
        Ok(Self {
            n,
            gens: minimalize(gens),
        })
    }

    pub fn parse(s: &str, n: Option<usize>) -> Result<Self> {
        let (n, gens) = parse_monomials(s, n)?;
        Self::new(n, gens)
    }

    pub fn unit(n: usize) -> Self {
        Self {
            n,
            gens: vec![Monomial::one(n)],
        }
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(|g| g.degree() == 0)
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    pub fn contains_ideal(&self, other: &MonomialIdeal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    /// `(J : m)`, generated by `lcm(g, m) / m`.
    pub fn colon_monomial(&self, m: &Monomial) -> MonomialIdeal {
        let gens = self
            .gens
            .iter()
            .map(|g| g.lcm(m).div(m).expect("m divides lcm(g, m)"));
        Self {
            n: self.n,
            gens: minimalize(gens.collect()),
        }
    }

    /// Generated by the pairwise lcms.
    pub fn intersect(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let gens = self
            .gens
            .iter()
            .flat_map(|a| other.gens.iter().map(move |b| a.lcm(b)));
        Self {
            n: self.n,
            gens: minimalize(gens.collect()),
        }
    }

    /// Number of degree-`t` monomials outside the ideal.
    pub fn quotient_dim(&self, t: usize) -> usize {
        GradedBasis::shared(self.n, t)
            .monomials()
            .iter()
            .filter(|m| !self.contains(m))
            .count()
    }

    pub fn to_graded<F: Field>(&self, field: F) -> Result<GradedIdeal<F>> {
        GradedIdeal::monomial(field, self.n, &self.gens)
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// `[J : I] = ∩_{m} (J : m)` over the generators `m` of `I`.
pub fn monomial_colon(j: &MonomialIdeal, i: &MonomialIdeal) -> Result<MonomialIdeal> {
    if j.n != i.n {
        return Err(Error::VariableCountMismatch {
            expected: j.n,
            got: i.n,
        });
    }
    Ok(i
        .gens
        .iter()
        .map(|m| j.colon_monomial(m))
        .fold(MonomialIdeal::unit(j.n), |acc, c| acc.intersect(&c)))
}
