//! Graded Betti numbers of `R/I` from the homology of the Koszul complex
//! `K(x_1, .., x_n) ⊗ R/I`.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{matmul, Matrix};
use crate::monomial::{binomial, subsets, Monomial};
use crate::quotient::{HilbertFunction, Quotient};

/// `β_{i,j}(R/I)` for `0 <= i <= n`, `0 <= j <= j_max`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    pub n: usize,
    pub j_max: usize,
    /// `betti[i][j]`.
    pub betti: Vec<Vec<usize>>,
    /// Nonzero entries beyond `j_max` cannot be ruled out.
    pub truncated: bool,
}

impl BettiTable {
    pub fn zero(n: usize, j_max: usize) -> Self {
        Self {
            n,
            j_max,
            betti: vec![vec![0; j_max + 1]; n + 1],
            truncated: false,
        }
    }

    pub fn get(&self, i: usize, j: usize) -> usize {
        self.betti
            .get(i)
            .and_then(|row| row.get(j))
            .copied()
            .unwrap_or(0)
    }

    pub fn total(&self, i: usize) -> usize {
        self.betti.get(i).map(|r| r.iter().sum()).unwrap_or(0)
    }

    pub fn totals(&self) -> Vec<usize> {
        (0..=self.n).map(|i| self.total(i)).collect()
    }

    /// `(j, β_{i,j})` for the nonzero entries of column `i`; these are the
    /// shifts of the `i`-th free module of the resolution of `R/I`.
    pub fn shifts(&self, i: usize) -> Vec<(usize, usize)> {
        (0..=self.j_max)
            .filter_map(|j| {
                let b = self.get(i, j);
                (b > 0).then_some((j, b))
            })
            .collect()
    }

    /// Shifts of the `i`-th module in the resolution of the ideal `I`
    /// itself (`β_i(I) = β_{i+1}(R/I)`).
    pub fn ideal_shifts(&self, i: usize) -> Vec<(usize, usize)> {
        self.shifts(i + 1)
    }

    /// Shifts as a multiset, e.g. `[2, 2, 2, 3, 3]`.
    pub fn shift_multiset(&self, i: usize) -> Vec<usize> {
        self.shifts(i)
            .into_iter()
            .flat_map(|(j, b)| std::iter::repeat_n(j, b))
            .collect()
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.betti.iter().enumerate().flat_map(|(i, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, b)| **b > 0)
                .map(move |(j, b)| (i, j, *b))
        })
    }

    /// `Σ_i (-1)^i β_{i,j}`.
    pub fn euler_characteristic(&self, j: usize) -> i64 {
        (0..=self.n)
            .map(|i| {
                let b = self.get(i, j) as i64;
                if i % 2 == 0 {
                    b
                } else {
                    -b
                }
            })
            .sum()
    }

    /// Checks `Σ_i (-1)^i β_{i,j} = [HS(R/I) (1-t)^n]_j` for `j <= j_max`.
    pub fn satisfies_euler_identity(&self, h: &HilbertFunction) -> bool {
        let mut poly: Vec<i64> = (0..=self.j_max).map(|t| h.get(t) as i64).collect();
        for _ in 0..self.n {
            for t in (1..poly.len()).rev() {
                poly[t] -= poly[t - 1];
            }
        }
        (0..=self.j_max).all(|j| poly[j] == self.euler_characteristic(j))
    }

    /// Row `k` of the diagram lists `β_{i,i+k}`.
    pub fn render_diagram(&self) -> String {
        let entries: Vec<(usize, usize, usize)> = self.nonzero().collect();
        let max_i = entries.iter().map(|e| e.0).max().unwrap_or(0);
        let max_k = entries.iter().map(|e| e.1 - e.0).max().unwrap_or(0);
        let totals: Vec<usize> = (0..=max_i).map(|i| self.total(i)).collect();
        let widest = totals.iter().map(|t| t.to_string().len()).max().unwrap_or(1);
        let w = (widest + 1).max(6);
        let label_w = (max_k.to_string().len() + 1).max(6);

        let mut out = String::new();
        let line = |label: &str, cells: &mut dyn Iterator<Item = String>| {
            let mut s = format!("; {label:>label_w$} ");
            for c in cells {
                write!(s, "{c:>w$}").expect("writing to a string");
            }
            s.push(' ');
            s
        };
        let head = line("total:", &mut totals.iter().map(|t| t.to_string()));
        let dashes = head.len() - 2;
        out.push_str(&head);
        out.push('\n');
        out.push_str("; ");
        out.push_str(&"-".repeat(dashes));
        out.push('\n');
        for k in 0..=max_k {
            let label = format!("{k}:");
            let mut cells = (0..=max_i).map(|i| match self.get(i, i + k) {
                0 => "-".to_string(),
                b => b.to_string(),
            });
            out.push_str(&line(&label, &mut cells));
            out.push('\n');
        }
        out
    }
}

/// Matrix of `∂ : C_{i,j} -> C_{i-1,j}` with `C_{i,j} = Λ^i k^n ⊗ A_{j-i}`.
/// Rows are indexed by pairs `(S, a)` (subsets in lexicographic order, then
/// standard monomials of `A_{j-i}`), columns likewise for `C_{i-1,j}`.
pub fn koszul_differential<F: Field>(q: &Quotient<F>, i: usize, j: usize) -> Matrix<F::Elem> {
    let field = q.field();
    let n = q.nvars();
    assert!(i >= 1 && i <= n && j >= i, "differential needs 1 <= i <= n, i <= j");
    let src_sets = subsets(n, i);
    let dst_sets = subsets(n, i - 1);
    let (a, b) = (q.dim(j - i), q.dim(j - i + 1));
    let mut m = Matrix::filled(src_sets.len() * a, dst_sets.len() * b, field.zero());
    if a == 0 || b == 0 {
        return m;
    }
    let xs: Vec<Matrix<F::Elem>> = (0..n).map(|k| q.variable_matrix(k, j - i)).collect();
    let dst_index = |s: &[usize]| dst_sets.binary_search_by(|t| t.as_slice().cmp(s)).expect("subset of size i-1");
    for (si, s) in src_sets.iter().enumerate() {
        for (pos, &k) in s.iter().enumerate() {
            let mut rest = s.clone();
            rest.remove(pos);
            let di = dst_index(&rest);
            let negative = pos % 2 == 1;
            for r in 0..a {
                for c in 0..b {
                    let v = &xs[k][(r, c)];
                    if !field.is_zero(v) {
                        m[(si * a + r, di * b + c)] = if negative { field.neg(v) } else { v.clone() };
                    }
                }
            }
        }
    }
    m
}

/// Checks `∂_{i} ∘ ∂_{i+1} = 0` on `C_{i+1,j}`.
pub fn koszul_square_vanishes<F: Field>(q: &Quotient<F>, i: usize, j: usize) -> bool {
    let field = q.field();
    let upper = koszul_differential(q, i + 1, j);
    let lower = koszul_differential(q, i, j);
    if upper.nrows() == 0 || lower.ncols() == 0 {
        return true;
    }
    let p = matmul(field, &upper, &lower);
    (0..p.nrows()).all(|r| p.row(r).iter().all(|x| field.is_zero(x)))
}

/// Betti table of `R/I` up to internal degree `j_max`. The default `j_max`
/// is `socle degree + n`, which captures the whole table of an Artinian
/// quotient; without a confirmed socle degree a bound must be supplied.
pub fn betti_table<F: Field>(q: &Quotient<F>, j_max: Option<usize>) -> Result<BettiTable> {
    let n = q.nvars();
    let h = q.hilbert_function(None);
    let socle = h.socle_degree();
    let j_max = match (j_max, socle) {
        (Some(j), _) => j,
        (None, Some(s)) => s + n,
        (None, None) => {
            return Err(Error::NotArtinian {
                t_max: h.values.len().saturating_sub(1),
            })
        }
    };
    // warm the slice cache so the parallel pass only reads it
    for t in 0..=j_max {
        if q.dim(t) == 0 {
            break;
        }
    }
    let spots: Vec<(usize, usize)> = (1..=n)
        .flat_map(|i| (i..=j_max).map(move |j| (i, j)))
        .collect();
    let ranks: Vec<((usize, usize), usize)> = spots
        .par_iter()
        .map(|&(i, j)| {
            let m = koszul_differential(q, i, j);
            ((i, j), q.field().rank(&m))
        })
        .collect();
    let mut rank = vec![vec![0usize; j_max + 1]; n + 2];
    for ((i, j), r) in ranks {
        rank[i][j] = r;
    }
    let mut table = BettiTable::zero(n, j_max);
    for i in 0..=n {
        for j in i..=j_max {
            let dim_c = binomial(n, i) * q.dim(j - i);
            table.betti[i][j] = dim_c - rank[i][j] - rank[i + 1][j];
        }
    }
    table.truncated = match socle {
        Some(s) => j_max < s + n,
        None => true,
    };
    Ok(table)
}

/// Multidegrees `α` at which `β_{i,α}(R/I)` can be nonzero: the lcms of
/// all subsets of the generators.
fn lcm_lattice(gens: &[Monomial]) -> BTreeSet<Monomial> {
    let n = gens.first().map(Monomial::nvars).unwrap_or(0);
    let mut lattice = BTreeSet::from([Monomial::one(n)]);
    for g in gens {
        let next: Vec<Monomial> = lattice.iter().map(|m| m.lcm(g)).collect();
        lattice.extend(next);
    }
    lattice
}

/// Betti table of `R/I` for a monomial ideal via the multigraded Koszul
/// complex: in multidegree `α` the basis is `{e_S : S ⊆ supp α,
/// x^{α - 1_S} ∉ I}` with differential `e_S -> Σ ± e_{S \ k}`.
pub fn monomial_betti_table<F: Field>(field: &F, n: usize, gens: &[Monomial]) -> BettiTable {
    let in_ideal = |m: &Monomial| gens.iter().any(|g| g.divides(m));
    let lattice: Vec<Monomial> = lcm_lattice(gens).into_iter().collect();
    let j_max = lattice.iter().map(Monomial::degree).max().unwrap_or(0);
    let contributions: Vec<(usize, Vec<usize>)> = lattice
        .par_iter()
        .map(|alpha| {
            let support: Vec<usize> = (0..n).filter(|&k| alpha.exponents()[k] > 0).collect();
            let basis: Vec<Vec<Vec<usize>>> = (0..=support.len())
                .map(|i| {
                    subsets(support.len(), i)
                        .into_iter()
                        .map(|s| s.into_iter().map(|p| support[p]).collect::<Vec<_>>())
                        .filter(|s| {
                            let mut e = alpha.exponents().to_vec();
                            for &k in s {
                                e[k] -= 1;
                            }
                            !in_ideal(&Monomial::new(e))
                        })
                        .collect()
                })
                .collect();
            let mut ranks = vec![0usize; support.len() + 2];
            for i in 1..=support.len() {
                let (src, dst) = (&basis[i], &basis[i - 1]);
                if src.is_empty() || dst.is_empty() {
                    continue;
                }
                let mut m = Matrix::filled(src.len(), dst.len(), field.zero());
                for (r, s) in src.iter().enumerate() {
                    for pos in 0..s.len() {
                        let mut rest = s.clone();
                        rest.remove(pos);
                        if let Ok(c) = dst.binary_search(&rest) {
                            m[(r, c)] = if pos % 2 == 1 { field.neg(&field.one()) } else { field.one() };
                        }
                    }
                }
                ranks[i] = field.rank(&m);
            }
            let betti = (0..=support.len())
                .map(|i| basis[i].len() - ranks[i] - ranks[i + 1])
                .collect();
            (alpha.degree(), betti)
        })
        .collect();
    let mut table = BettiTable::zero(n, j_max);
    for (j, betti) in contributions {
        for (i, b) in betti.into_iter().enumerate() {
            table.betti[i][j] += b;
        }
    }
    table
}

/// Degrees of a minimal generating set, read from `β_{1,j}`.
pub fn minimal_generator_degrees<F: Field>(q: &Quotient<F>) -> Vec<usize> {
    let top = q.ideal().degrees().into_iter().max().unwrap_or(0);
    let mut out = Vec::new();
    for j in 1..=top {
        // β_{1,j} = dim C_{1,j} - rank ∂_{1,j} - rank ∂_{2,j}
        let field = q.field();
        let c1 = q.nvars() * q.dim(j - 1);
        let r1 = field.rank(&koszul_differential(q, 1, j));
        let r2 = if q.nvars() >= 2 && j >= 2 {
            field.rank(&koszul_differential(q, 2, j))
        } else {
            0
        };
        out.extend(std::iter::repeat_n(j, c1 - r1 - r2));
    }
    out
}

/// The same multiset computed as `dim I_j - dim (R_1 I_{j-1})`.
pub fn minimal_generator_degrees_by_span<F: Field>(q: &Quotient<F>) -> Vec<usize> {
    let top = q.ideal().degrees().into_iter().max().unwrap_or(0);
    (1..=top)
        .flat_map(|j| {
            let new = q.slice(j).dim_ideal() - q.dim_linear_multiples(j);
            std::iter::repeat_n(j, new)
        })
        .collect()
}

/// `β_{i,j}` of a complete intersection of the given degrees: the number of
/// `i`-subsets of the degrees summing to `j`.
pub fn complete_intersection_betti(degrees: &[usize]) -> BettiTable {
    let n = degrees.len();
    let j_max = degrees.iter().sum();
    let mut table = BettiTable::zero(n, j_max);
    for i in 0..=n {
        for s in subsets(n, i) {
            let j: usize = s.iter().map(|&k| degrees[k]).sum();
            table.betti[i][j] += 1;
        }
    }
    table
}
