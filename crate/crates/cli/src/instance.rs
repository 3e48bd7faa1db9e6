use std::path::Path;

use artinian::form::parse_monomials;
use artinian::{Backend, Field, GradedIdeal, IdealDocument, Monomial, DEFAULT_PRIME};

use crate::args::{FieldArgs, InstanceArgs};
use crate::error::{CliError, CliResult};

pub const PRIME_ENV: &str = "ARTINIAN_PRIME";

/// Explicit flags, then the environment, then the default prime.
pub fn requested_backend(f: &FieldArgs) -> CliResult<Option<Backend>> {
    match (f.prime, f.rational) {
        (Some(_), true) => Err(CliError::usage("--prime and --rational are mutually exclusive")),
        (Some(p), false) => Ok(Some(Backend::Prime(p))),
        (None, true) => Ok(Some(Backend::Rational)),
        (None, false) => Ok(None),
    }
}

pub fn default_backend() -> CliResult<Backend> {
    match std::env::var(PRIME_ENV) {
        Ok(v) if !v.trim().is_empty() => v
            .trim()
            .parse::<u32>()
            .map(Backend::Prime)
            .map_err(|_| CliError::usage(format!("{PRIME_ENV}={v:?} is not a prime"))),
        _ => Ok(Backend::Prime(DEFAULT_PRIME)),
    }
}

pub fn resolve_backend(f: &FieldArgs) -> CliResult<Backend> {
    match requested_backend(f)? {
        Some(b) => Ok(b),
        None => default_backend(),
    }
}

pub fn read_document(path: &Path) -> CliResult<IdealDocument> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    IdealDocument::from_json(&text).map_err(|e| CliError::io(path, e))
}

/// Where the generators of an instance come from.
#[derive(Debug, Clone)]
pub enum Source {
    Document(IdealDocument),
    Monomial { n: usize, gens: Vec<Monomial> },
    MonomialCi(Vec<usize>),
    General { n: usize, degrees: Vec<usize>, seed: u64 },
}

impl Source {
    pub fn from_args(a: &InstanceArgs) -> CliResult<Self> {
        let styles = [a.ideal.is_some(), a.monomial.is_some(), a.monomial_ci].iter().filter(|&&b| b).count();
        if styles > 1 {
            return Err(CliError::usage("use only one of --ideal, --monomial and --monomial-ci"));
        }
        if let Some(path) = &a.ideal {
            if a.n.is_some() || !a.degrees.is_empty() {
                return Err(CliError::usage("--ideal cannot be combined with --n or --degrees"));
            }
            return Ok(Source::Document(read_document(path)?));
        }
        if let Some(s) = &a.monomial {
            if !a.degrees.is_empty() {
                return Err(CliError::usage("--monomial cannot be combined with --degrees"));
            }
            let (n, gens) = parse_monomials(s, a.n).map_err(|e| CliError::usage(e.to_string()))?;
            return Ok(Source::Monomial { n, gens });
        }
        if a.degrees.is_empty() {
            return Err(CliError::usage("give --degrees, --monomial or --ideal"));
        }
        if a.degrees.contains(&0) {
            return Err(CliError::usage("degrees must be positive"));
        }
        if a.monomial_ci {
            if a.n.is_some_and(|n| n != a.degrees.len()) {
                return Err(CliError::usage("--monomial-ci needs exactly n degrees"));
            }
            return Ok(Source::MonomialCi(a.degrees.clone()));
        }
        let n = a.n.ok_or_else(|| CliError::usage("--n is required with --degrees"))?;
        if n == 0 {
            return Err(CliError::usage("--n must be positive"));
        }
        Ok(Source::General {
            n,
            degrees: a.degrees.clone(),
            seed: a.seed,
        })
    }

    /// The document's backend wins unless the flags ask for another one.
    pub fn backend(&self, f: &FieldArgs) -> CliResult<Backend> {
        match (self, requested_backend(f)?) {
            (Source::Document(d), Some(b)) if b != d.prime => Err(CliError::usage(format!(
                "ideal document is over {}, but {} was requested",
                d.prime, b
            ))),
            (Source::Document(d), _) => Ok(d.prime),
            (_, Some(b)) => Ok(b),
            (_, None) => default_backend(),
        }
    }

    pub fn build<F: Field>(&self, field: F) -> CliResult<GradedIdeal<F>> {
        Ok(match self {
            Source::Document(d) => GradedIdeal::from_document(field, d)?,
            Source::Monomial { n, gens } => GradedIdeal::monomial(field, *n, gens)?,
            Source::MonomialCi(d) => GradedIdeal::monomial_ci(field, d)?,
            Source::General { n, degrees, seed } => GradedIdeal::random(field, *n, degrees, *seed)?,
        })
    }
}

/// Runs `$body` with `$f` bound to the field of `$backend`.
#[macro_export]
macro_rules! with_field {
    ($backend:expr, |$f:ident| $body:expr) => {
        match $backend {
            artinian::Backend::Prime(p) => {
                let $f = artinian::PrimeField::new(p)?;
                $body
            }
            artinian::Backend::Rational => {
                let $f = artinian::RationalField::default();
                $body
            }
        }
    };
}
