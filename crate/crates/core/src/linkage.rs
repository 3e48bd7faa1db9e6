//! Colon ideals `[J : I]` and Hilbert functions of linked pairs.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::form::{Form, GradedIdeal};
use crate::monomial::GradedBasis;
use crate::quotient::{HilbertFunction, Quotient};

pub use crate::monomial_ideal::{monomial_colon, MonomialIdeal};

/// Rows `NF_J(m F_1) | .. | NF_J(m F_r)` for the monomials `m` of degree `t`.
fn colon_matrix<F: Field>(j: &Quotient<F>, i: &GradedIdeal<F>, t: usize) -> Vec<Vec<F::Elem>> {
    let field = j.field();
    let basis = GradedBasis::shared(j.nvars(), t);
    let slices: Vec<_> = i.generators().iter().map(|g| j.slice(t + g.degree())).collect();
    basis
        .monomials()
        .iter()
        .map(|m| {
            i.generators()
                .iter()
                .zip(&slices)
                .flat_map(|(g, s)| s.reduce(field, &g.shifted_dense(field, m)))
                .collect()
        })
        .collect()
}

/// Basis of `[J : I]_t = { g ∈ R_t : g F_i ∈ J for every generator F_i }`,
/// the left kernel of one stacked normal-form matrix.
pub fn colon_slice<F: Field>(j: &Quotient<F>, i: &GradedIdeal<F>, t: usize) -> Vec<Form<F::Elem>> {
    let field = j.field();
    let rows = colon_matrix(j, i, t);
    let len = GradedBasis::shared(j.nvars(), t).len();
    let width = rows.first().map(Vec::len).unwrap_or(0);
    let columns: Vec<Vec<F::Elem>> = (0..width)
        .map(|c| rows.iter().map(|r| r[c].clone()).collect())
        .collect();
    field
        .echelon(columns, len)
        .nullspace(field)
        .into_iter()
        .map(|v| Form::from_dense(field, j.nvars(), t, &v))
        .collect()
}

pub fn colon_degreewise<F: Field>(j: &Quotient<F>, i: &GradedIdeal<F>, t: usize) -> usize {
    let field = j.field();
    let rows = colon_matrix(j, i, t);
    let len = rows.len();
    if rows.first().is_none_or(Vec::is_empty) {
        return len;
    }
    let width = rows[0].len();
    len - field.rank(&crate::linalg::Matrix::from_rows(rows, width))
}

/// `[J : I]` generated by its slices in degrees `0..=t_max`. When `R/J` is
/// Artinian with socle degree `s`, `t_max = s + 1` yields the whole ideal.
pub fn colon_ideal<F: Field>(j: &Quotient<F>, i: &GradedIdeal<F>, t_max: usize) -> Result<GradedIdeal<F>> {
    let gens = (0..=t_max).flat_map(|t| colon_slice(j, i, t)).collect();
    GradedIdeal::new(j.field().clone(), j.nvars(), gens)
}

/// `h_{R/G}(t) = h_{R/J}(s - t) - h_{R/I}(s - t)` for `G = [J : I]`, `J ⊆ I`
/// a complete intersection with `R/J` of socle degree `s`.
pub fn linked_hilbert_function(
    h_j: &HilbertFunction,
    h_i: &HilbertFunction,
    s: usize,
) -> Result<HilbertFunction> {
    let mut values = Vec::with_capacity(s + 2);
    for t in 0..=s {
        let v = h_j.get(s - t) as i64 - h_i.get(s - t) as i64;
        if v < 0 {
            return Err(Error::NegativeLinkedValue { t, value: v });
        }
        values.push(v as usize);
    }
    match values.iter().position(|&v| v == 0) {
        Some(z) => values.truncate(z + 1),
        None => values.push(0),
    }
    Ok(HilbertFunction {
        values,
        artinian_confirmed: true,
    })
}
