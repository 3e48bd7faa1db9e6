//! Monomials and the graded pieces `R_t` of the polynomial ring.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use serde::{Deserialize, Serialize};

/// Exponent vector of a monomial in `n` variables.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial(Vec<u8>);

impl Monomial {
    pub fn new(exponents: Vec<u8>) -> Self {
        Self(exponents)
    }

    pub fn one(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn var(i: usize, n: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Self(e)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[u8] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.nvars(), other.nvars(), "monomials over different rings");
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn mul_var(&self, i: usize) -> Monomial {
        let mut e = self.0.clone();
        e[i] += 1;
        Monomial(e)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `self / other`, if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        other
            .divides(self)
            .then(|| Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    /// Degree-reverse-lexicographic comparison (larger is "earlier").
    pub fn cmp_drl(&self, other: &Monomial) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        for (a, b) in self.0.iter().zip(&other.0).rev() {
            match a.cmp(b) {
                Ordering::Equal => continue,
                // smaller exponent in the last differing variable wins
                o => return o.reverse(),
            }
        }
        Ordering::Equal
    }
}

const VAR_NAMES: [char; 4] = ['x', 'y', 'z', 'w'];

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() == 0 {
            return write!(f, "1");
        }
        let named = self.nvars() <= VAR_NAMES.len();
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if named {
                write!(f, "{}", VAR_NAMES[i])?;
            } else {
                write!(f, "x{}", i + 1)?;
            }
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Binomial coefficient; zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// `dim R_t = C(n - 1 + t, n - 1)`.
pub fn dim_graded_piece(n: usize, t: usize) -> usize {
    binomial(n - 1 + t, n - 1)
}

/// All monomials of degree `t` in `n` variables, in descending drl order,
/// with the inverse index map.
#[derive(Debug)]
pub struct GradedBasis {
    n: usize,
    degree: usize,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

fn compositions(n: usize, t: usize, prefix: &mut Vec<u8>, out: &mut Vec<Monomial>) {
    if prefix.len() == n - 1 {
        let used: usize = prefix.iter().map(|&e| e as usize).sum();
        let mut e = prefix.clone();
        e.push((t - used) as u8);
        out.push(Monomial(e));
        return;
    }
    let used: usize = prefix.iter().map(|&e| e as usize).sum();
    for a in 0..=(t - used) {
        prefix.push(a as u8);
        compositions(n, t, prefix, out);
        prefix.pop();
    }
}

type BasisCache = RwLock<HashMap<(usize, usize), Arc<GradedBasis>>>;

fn cache() -> &'static BasisCache {
    static CACHE: OnceLock<BasisCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

impl GradedBasis {
    pub fn new(n: usize, degree: usize) -> Self {
        assert!(n >= 1, "need at least one variable");
        assert!(degree <= u8::MAX as usize, "degree exceeds exponent storage");
        let mut monomials = Vec::with_capacity(dim_graded_piece(n, degree));
        compositions(n, degree, &mut Vec::with_capacity(n), &mut monomials);
        monomials.sort_by(|a, b| b.cmp_drl(a));
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        Self {
            n,
            degree,
            monomials,
            index,
        }
    }

    /// Process-wide shared basis for `(n, degree)`.
    pub fn shared(n: usize, degree: usize) -> Arc<GradedBasis> {
        if let Some(b) = cache().read().expect("basis cache poisoned").get(&(n, degree)) {
            return b.clone();
        }
        let b = Arc::new(GradedBasis::new(n, degree));
        cache()
            .write()
            .expect("basis cache poisoned")
            .entry((n, degree))
            .or_insert(b)
            .clone()
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn get(&self, i: usize) -> &Monomial {
        &self.monomials[i]
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }
}

/// `n`-element subsets of `{0, .., n-1}` of size `k`, lexicographic.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u8]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn basis_examples() {
        let b = GradedBasis::new(2, 2);
        assert_eq!(b.monomials(), &[m(&[2, 0]), m(&[1, 1]), m(&[0, 2])]);
        assert_eq!(GradedBasis::new(3, 0).monomials(), &[m(&[0, 0, 0])]);
        assert_eq!(GradedBasis::new(4, 5).len(), 56);
        // drl on three variables: x^2 > xy > y^2 > xz > yz > z^2
        let b3 = GradedBasis::new(3, 2);
        let names: Vec<String> = b3.monomials().iter().map(|m| m.to_string()).collect();
        assert_eq!(names, ["x^2", "xy", "y^2", "xz", "yz", "z^2"]);
    }

    #[test]
    fn basis_size_and_index_roundtrip() {
        for n in 1..=6 {
            for t in 0..=12 {
                let b = GradedBasis::shared(n, t);
                assert_eq!(b.len(), binomial(n - 1 + t, n - 1), "n={n} t={t}");
                for (i, mono) in b.monomials().iter().enumerate() {
                    assert_eq!(b.index_of(mono), Some(i));
                    assert_eq!(mono.degree(), t);
                }
            }
        }
    }

    #[test]
    fn monomial_products() {
        assert_eq!(m(&[1, 1, 0]).mul(&m(&[0, 1, 0])), m(&[1, 2, 0]));
        assert_eq!(Monomial::one(3).mul(&m(&[2, 0, 1])), m(&[2, 0, 1]));
        assert_eq!(m(&[2, 0, 0]).mul(&m(&[0, 0, 1])), m(&[2, 0, 1]));
        assert_eq!(m(&[2, 1, 0]).mul(&m(&[1, 0, 4])).degree(), 3 + 5);
        assert_eq!(m(&[2, 1, 0]).div(&m(&[1, 1, 0])), Some(m(&[1, 0, 0])));
        assert_eq!(m(&[2, 1, 0]).div(&m(&[0, 0, 1])), None);
        assert_eq!(m(&[2, 1, 0]).lcm(&m(&[0, 3, 1])), m(&[2, 3, 1]));
    }

    #[test]
    fn binomials_and_subsets() {
        assert_eq!(binomial(8, 3), 56);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(subsets(4, 2).len(), 6);
        assert_eq!(subsets(3, 0), vec![Vec::<usize>::new()]);
        assert!(subsets(2, 3).is_empty());
    }
}
