//! Homogeneous forms, ideals generated by them, and their text/JSON formats.

use std::collections::BTreeMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Backend, Field};
use crate::monomial::{GradedBasis, Monomial};
use crate::seed;

/// A homogeneous polynomial of fixed degree, stored sparsely by position in
/// the drl [`GradedBasis`] of its degree. Stored coefficients are nonzero.
#[derive(Debug, Clone, PartialEq)]
pub struct Form<E> {
    n: usize,
    degree: usize,
    terms: BTreeMap<usize, E>,
}

impl<E: Clone + PartialEq> Form<E> {
    pub fn zero(n: usize, degree: usize) -> Self {
        Self {
            n,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms<F, I>(field: &F, n: usize, degree: usize, terms: I) -> Result<Self>
    where
        F: Field<Elem = E>,
        I: IntoIterator<Item = (Monomial, E)>,
    {
        let basis = GradedBasis::shared(n, degree);
        let mut acc: BTreeMap<usize, E> = BTreeMap::new();
        for (m, c) in terms {
            if m.nvars() != n {
                return Err(Error::VariableCountMismatch {
                    expected: n,
                    got: m.nvars(),
                });
            }
            if m.degree() != degree {
                return Err(Error::InvalidDegree {
                    degree: m.degree(),
                    reason: "term degree differs from form degree",
                });
            }
            let i = basis.index_of(&m).expect("degree checked");
            let entry = acc.entry(i).or_insert_with(|| field.zero());
            *entry = field.add(entry, &c);
        }
        acc.retain(|_, c| !field.is_zero(c));
        Ok(Self {
            n,
            degree,
            terms: acc,
        })
    }

    pub fn monomial<F: Field<Elem = E>>(field: &F, m: &Monomial) -> Self {
        Self::from_terms(field, m.nvars(), m.degree(), [(m.clone(), field.one())])
            .expect("a monomial is a valid form")
    }

    /// Linear form `sum_i coeffs[i] * x_i`.
    pub fn linear<F: Field<Elem = E>>(field: &F, coeffs: &[E]) -> Self {
        let n = coeffs.len();
        Self::from_terms(
            field,
            n,
            1,
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (Monomial::var(i, n), c.clone())),
        )
        .expect("linear terms are valid")
    }

    pub fn from_dense<F: Field<Elem = E>>(field: &F, n: usize, degree: usize, v: &[E]) -> Self {
        let terms = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !field.is_zero(c))
            .map(|(i, c)| (i, c.clone()))
            .collect();
        Self { n, degree, terms }
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// `(basis index, coefficient)` pairs in basis order.
    pub fn indexed_terms(&self) -> impl Iterator<Item = (usize, &E)> + '_ {
        self.terms.iter().map(|(i, c)| (*i, c))
    }

    pub fn terms(&self) -> Vec<(Monomial, E)> {
        let basis = GradedBasis::shared(self.n, self.degree);
        self.terms
            .iter()
            .map(|(i, c)| (basis.get(*i).clone(), c.clone()))
            .collect()
    }

    /// A single-term form with coefficient 1.
    pub fn as_monomial<F: Field<Elem = E>>(&self, field: &F) -> Option<Monomial> {
        if self.terms.len() != 1 {
            return None;
        }
        let (i, c) = self.terms.iter().next().expect("one term");
        (*c == field.one()).then(|| GradedBasis::shared(self.n, self.degree).get(*i).clone())
    }

    pub fn to_dense<F: Field<Elem = E>>(&self, field: &F) -> Vec<E> {
        let len = GradedBasis::shared(self.n, self.degree).len();
        let mut v = vec![field.zero(); len];
        for (i, c) in &self.terms {
            v[*i] = c.clone();
        }
        v
    }

    /// Dense coefficient vector of `m * self` over the basis of degree
    /// `deg m + deg self`.
    pub fn shifted_dense<F: Field<Elem = E>>(&self, field: &F, m: &Monomial) -> Vec<E> {
        let src = GradedBasis::shared(self.n, self.degree);
        let dst = GradedBasis::shared(self.n, self.degree + m.degree());
        let mut v = vec![field.zero(); dst.len()];
        for (i, c) in &self.terms {
            let j = dst.index_of(&src.get(*i).mul(m)).expect("product has target degree");
            v[j] = c.clone();
        }
        v
    }

    pub fn scale<F: Field<Elem = E>>(&self, field: &F, c: &E) -> Self {
        if field.is_zero(c) {
            return Self::zero(self.n, self.degree);
        }
        Self {
            n: self.n,
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(i, v)| (*i, field.mul(v, c)))
                .collect(),
        }
    }

    pub fn add<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        assert_eq!((self.n, self.degree), (other.n, other.degree));
        let mut terms = self.terms.clone();
        for (i, c) in &other.terms {
            let e = terms.entry(*i).or_insert_with(|| field.zero());
            *e = field.add(e, c);
        }
        terms.retain(|_, c| !field.is_zero(c));
        Self {
            n: self.n,
            degree: self.degree,
            terms,
        }
    }

    pub fn mul<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "forms over different rings");
        let a = GradedBasis::shared(self.n, self.degree);
        let b = GradedBasis::shared(self.n, other.degree);
        let terms = self.terms.iter().flat_map(|(i, c)| {
            let (a, b) = (&a, &b);
            other
                .terms
                .iter()
                .map(move |(j, d)| (a.get(*i).mul(b.get(*j)), field.mul(c, d)))
        });
        Self::from_terms(field, self.n, self.degree + other.degree, terms.collect::<Vec<_>>())
            .expect("product of forms is homogeneous")
    }

    pub fn pow<F: Field<Elem = E>>(&self, field: &F, k: usize) -> Self {
        let mut acc = Self::monomial(field, &Monomial::one(self.n));
        for _ in 0..k {
            acc = acc.mul(field, self);
        }
        acc
    }

    pub fn evaluate<F: Field<Elem = E>>(&self, field: &F, point: &[E]) -> E {
        let basis = GradedBasis::shared(self.n, self.degree);
        let mut acc = field.zero();
        for (i, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(basis.get(*i).exponents()) {
                v = field.mul(&v, &field.pow(x, e as u64));
            }
            acc = field.add(&acc, &v);
        }
        acc
    }

    /// Substitutes `x_i -> sum_j g[i][j] x_j`.
    pub fn linear_substitution<F: Field<Elem = E>>(&self, field: &F, g: &[Vec<E>]) -> Self {
        let images: Vec<Self> = g.iter().map(|row| Self::linear(field, row)).collect();
        let mut acc = Self::zero(self.n, self.degree);
        for (m, c) in self.terms() {
            let mut term = Self::monomial(field, &Monomial::one(self.n)).scale(field, &c);
            for (i, &e) in m.exponents().iter().enumerate() {
                term = term.mul(field, &images[i].pow(field, e as usize));
            }
            acc = acc.add(field, &term);
        }
        acc
    }

    pub fn map_field<F: Field<Elem = E>, G: Field>(
        &self,
        from: &F,
        to: &G,
    ) -> Result<Form<G::Elem>> {
        let mut terms = BTreeMap::new();
        for (i, c) in &self.terms {
            let s = from.format(c);
            let v = to.parse(&s)?;
            if !to.is_zero(&v) {
                terms.insert(*i, v);
            }
        }
        Ok(Form {
            n: self.n,
            degree: self.degree,
            terms,
        })
    }
}

/// A form of the given degree with independent random coefficients.
pub fn random_form_with<F: Field, R: Rng + ?Sized>(
    field: &F,
    n: usize,
    degree: usize,
    rng: &mut R,
) -> Result<Form<F::Elem>> {
    if degree == 0 {
        return Err(Error::InvalidDegree {
            degree,
            reason: "random forms must have positive degree",
        });
    }
    let len = GradedBasis::shared(n, degree).len();
    loop {
        let v: Vec<F::Elem> = (0..len).map(|_| field.sample(rng)).collect();
        let f = Form::from_dense(field, n, degree, &v);
        if !f.is_zero() {
            return Ok(f);
        }
    }
}

pub fn random_form<F: Field>(field: &F, n: usize, degree: usize, seed: u64) -> Result<Form<F::Elem>> {
    random_form_with(field, n, degree, &mut seed::rng(seed))
}

/// Ideal `(F_1, .., F_r)` of `R = k[x_1..x_n]` given by homogeneous generators.
#[derive(Debug, Clone)]
pub struct GradedIdeal<F: Field> {
    field: F,
    n: usize,
    generators: Vec<Form<F::Elem>>,
}

impl<F: Field> GradedIdeal<F> {
    pub fn new(field: F, n: usize, generators: Vec<Form<F::Elem>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition("need at least one variable".into()));
        }
        for g in &generators {
            if g.nvars() != n {
                return Err(Error::VariableCountMismatch {
                    expected: n,
                    got: g.nvars(),
                });
            }
            if g.is_zero() {
                return Err(Error::ZeroGenerator);
            }
        }
        Ok(Self {
            field,
            n,
            generators,
        })
    }

    pub fn monomial(field: F, n: usize, gens: &[Monomial]) -> Result<Self> {
        let forms = gens.iter().map(|m| Form::monomial(&field, m)).collect();
        Self::new(field, n, forms)
    }

    /// Generators with independent random coefficients; generator `i` uses
    /// sub-seed `(seed, GENERATOR, i)`.
    pub fn random(field: F, n: usize, degrees: &[usize], seed: u64) -> Result<Self> {
        let gens = degrees
            .iter()
            .enumerate()
            .map(|(i, &d)| {
                random_form(
                    &field,
                    n,
                    d,
                    seed::derive(seed, &[seed::stream::GENERATOR, i as u64]),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(field, n, gens)
    }

    /// Monomial complete intersection `(x_1^{d_1}, .., x_n^{d_n})`.
    pub fn monomial_ci(field: F, degrees: &[usize]) -> Result<Self> {
        let n = degrees.len();
        let gens: Vec<Monomial> = degrees
            .iter()
            .enumerate()
            .map(|(i, &d)| {
                let mut e = vec![0u8; n];
                e[i] = d as u8;
                Monomial::new(e)
            })
            .collect();
        Self::monomial(field, n, &gens)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Form<F::Elem>] {
        &self.generators
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.generators.iter().map(Form::degree).collect()
    }

    pub fn with_generators(&self, extra: impl IntoIterator<Item = Form<F::Elem>>) -> Result<Self> {
        let mut gens = self.generators.clone();
        gens.extend(extra);
        Self::new(self.field.clone(), self.n, gens)
    }

    /// Generator monomials if every generator is a monomial.
    pub fn monomial_generators(&self) -> Option<Vec<Monomial>> {
        self.generators
            .iter()
            .map(|g| g.as_monomial(&self.field))
            .collect()
    }

    pub fn linear_substitution(&self, g: &[Vec<F::Elem>]) -> Result<Self> {
        let gens = self
            .generators
            .iter()
            .map(|f| f.linear_substitution(&self.field, g))
            .collect();
        Self::new(self.field.clone(), self.n, gens)
    }

    pub fn map_field<G: Field>(&self, to: G) -> Result<GradedIdeal<G>> {
        let gens = self
            .generators
            .iter()
            .map(|f| f.map_field(&self.field, &to))
            .collect::<Result<Vec<_>>>()?;
        GradedIdeal::new(to, self.n, gens)
    }

    pub fn to_document(&self) -> IdealDocument {
        IdealDocument {
            n: self.n,
            prime: self.field.backend(),
            generators: self
                .generators
                .iter()
                .map(|g| {
                    g.terms()
                        .into_iter()
                        .map(|(m, c)| (m.exponents().to_vec(), self.field.format(&c)))
                        .collect()
                })
                .collect(),
        }
    }

    pub fn from_document(field: F, doc: &IdealDocument) -> Result<Self> {
        if doc.prime != field.backend() {
            return Err(Error::MixedBackends(
                doc.prime.to_string(),
                field.backend().to_string(),
            ));
        }
        let mut gens = Vec::with_capacity(doc.generators.len());
        for g in &doc.generators {
            let Some((first, _)) = g.first() else {
                return Err(Error::ZeroGenerator);
            };
            let degree = first.iter().map(|&e| e as usize).sum();
            let terms = g
                .iter()
                .map(|(e, c)| Ok((Monomial::new(e.clone()), field.parse(c)?)))
                .collect::<Result<Vec<_>>>()?;
            gens.push(Form::from_terms(&field, doc.n, degree, terms)?);
        }
        Self::new(field, doc.n, gens)
    }
}

/// Serialized ideal: `n`, the backend (a prime or `"rational"`), and each
/// generator as a list of `[exponent-vector, coefficient-string]` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealDocument {
    pub n: usize,
    pub prime: Backend,
    pub generators: Vec<Vec<(Vec<u8>, String)>>,
}

impl IdealDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("ideal documents serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

fn var_index(name: &str) -> Result<usize> {
    match name {
        "x" => Ok(0),
        "y" => Ok(1),
        "z" => Ok(2),
        "w" => Ok(3),
        _ => {
            let digits = name
                .strip_prefix("x_")
                .or_else(|| name.strip_prefix('x'))
                .ok_or_else(|| Error::Parse(format!("unknown variable {name:?}")))?;
            let i: usize = digits
                .parse()
                .map_err(|_| Error::Parse(format!("unknown variable {name:?}")))?;
            if i == 0 {
                return Err(Error::Parse("variables are numbered from x1".into()));
            }
            Ok(i - 1)
        }
    }
}

/// Parses one power product such as `x^2yz^3`, `x1x2^2` or `1`.
fn parse_power_product(s: &str) -> Result<Vec<(usize, u8)>> {
    let s: String = s.chars().filter(|c| !c.is_whitespace() && *c != '*').collect();
    if s == "1" {
        return Ok(Vec::new());
    }
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        if !chars[i].is_ascii_alphabetic() {
            return Err(Error::Parse(format!("unexpected {:?} in {s:?}", chars[i])));
        }
        let mut name = chars[i].to_string();
        i += 1;
        if name == "x" && i < chars.len() && (chars[i] == '_' || chars[i].is_ascii_digit()) {
            if chars[i] == '_' {
                name.push('_');
                i += 1;
            }
            while i < chars.len() && chars[i].is_ascii_digit() {
                name.push(chars[i]);
                i += 1;
            }
        }
        let mut exp = 1u32;
        if i < chars.len() && chars[i] == '^' {
            i += 1;
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            exp = digits
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent in {s:?}")))?;
        }
        if exp > u8::MAX as u32 {
            return Err(Error::Parse(format!("exponent too large in {s:?}")));
        }
        out.push((var_index(&name)?, exp as u8));
    }
    Ok(out)
}

/// Parses a comma-separated list of power products. Variables are `x, y, z,
/// w` or `x1, x2, ..`; `n` defaults to the largest variable index used.
pub fn parse_monomials(s: &str, n: Option<usize>) -> Result<(usize, Vec<Monomial>)> {
    let parsed = s
        .split(',')
        .filter(|p| !p.trim().is_empty())
        .map(parse_power_product)
        .collect::<Result<Vec<_>>>()?;
    let used = parsed
        .iter()
        .flatten()
        .map(|(i, _)| i + 1)
        .max()
        .unwrap_or(1);
    let n = n.unwrap_or(used);
    if used > n {
        return Err(Error::Parse(format!("variable index {used} exceeds n = {n}")));
    }
    let monos = parsed
        .into_iter()
        .map(|pp| {
            let mut e = vec![0u8; n];
            for (i, k) in pp {
                e[i] += k;
            }
            Monomial::new(e)
        })
        .collect();
    Ok((n, monos))
}
