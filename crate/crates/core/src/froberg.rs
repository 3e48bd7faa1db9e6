//! Predicted Hilbert functions of algebras defined by general forms.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::monomial::binomial;

/// Integer power series modulo `t^{T+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    pub fn one(bound: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); bound + 1];
        coeffs[0] = BigInt::one();
        Self { coeffs }
    }

    pub fn from_coeffs(bound: usize, mut coeffs: Vec<BigInt>) -> Self {
        coeffs.resize(bound + 1, BigInt::zero());
        Self { coeffs }
    }

    pub fn bound(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.bound(), other.bound());
        Self {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.bound(), other.bound());
        let t = self.bound();
        let mut coeffs = vec![BigInt::zero(); t + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=t - i].iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self { coeffs }
    }

    /// Multiplies by `1 - t^d`.
    pub fn mul_one_minus_power(&self, d: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        for i in (d..coeffs.len()).rev() {
            let sub = coeffs[i - d].clone();
            coeffs[i] -= sub;
        }
        Self { coeffs }
    }

    /// Divides by `(1 - t)^n`, i.e. takes `n` successive partial sums.
    pub fn div_one_minus_t_pow(&self, n: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        for _ in 0..n {
            for i in 1..coeffs.len() {
                let prev = coeffs[i - 1].clone();
                coeffs[i] += prev;
            }
        }
        Self { coeffs }
    }

    /// Multiplies by `(1 - t)^n`.
    pub fn mul_one_minus_t_pow(&self, n: usize) -> Self {
        (0..n).fold(self.clone(), |s, _| s.mul_one_minus_power(1))
    }

    /// Keeps coefficients up to the first non-positive one and zeroes
    /// everything from there on.
    pub fn bracket(&self) -> Vec<BigInt> {
        let cut = self
            .coeffs
            .iter()
            .position(|c| !c.is_positive())
            .unwrap_or(self.coeffs.len());
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if i < cut { c.clone() } else { BigInt::zero() })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrobergPrediction {
    pub n: usize,
    pub degrees: Vec<usize>,
    /// Bracketed values `h(0), .., h(T)`.
    pub values: Vec<u64>,
    /// Coefficients of the series before bracketing, as decimal strings.
    pub series: Vec<String>,
    /// Last `t` with `h(t) > 0`; `None` if the prediction never vanishes
    /// within the bound.
    pub socle_degree: Option<usize>,
    /// Whether bracketing changed any coefficient.
    pub truncated: bool,
}

impl FrobergPrediction {
    pub fn get(&self, t: usize) -> u64 {
        self.values.get(t).copied().unwrap_or(0)
    }
}

/// `prod (1 - t^{d_i}) / (1 - t)^n` expanded to degree `bound`.
pub fn froberg_numerator_series(n: usize, degrees: &[usize], bound: usize) -> TruncatedSeries {
    degrees
        .iter()
        .fold(TruncatedSeries::one(bound), |s, &d| s.mul_one_minus_power(d))
        .div_one_minus_t_pow(n)
}

/// Bracketed Fröberg series; `bound` defaults to `sum d_i`.
pub fn froberg_series(n: usize, degrees: &[usize], bound: Option<usize>) -> FrobergPrediction {
    assert!(n >= 1, "need at least one variable");
    assert!(degrees.iter().all(|&d| d >= 1), "degrees must be positive");
    let bound = bound.unwrap_or_else(|| degrees.iter().sum::<usize>().max(1));
    let series = froberg_numerator_series(n, degrees, bound);
    let bracketed = series.bracket();
    let values: Vec<u64> = bracketed
        .iter()
        .map(|c| c.to_u64().expect("bracketed values are dimensions of R_t"))
        .collect();
    let socle_degree = values
        .iter()
        .position(|&v| v == 0)
        .map(|z| z.checked_sub(1).expect("h(0) = 1"));
    let truncated = bracketed.iter().zip(series.coeffs()).any(|(a, b)| a != b);
    FrobergPrediction {
        n,
        degrees: degrees.to_vec(),
        values,
        series: series.coeffs().iter().map(|c| c.to_string()).collect(),
        socle_degree,
        truncated,
    }
}

/// Expected `dim A_{d+1}` for `r` general forms of degree `d`:
/// `max(0, C(n+d, d+1) - r n)`.
pub fn hochster_laksov_dim(n: usize, d: usize, r: usize) -> usize {
    binomial(n + d, d + 1).saturating_sub(r * n)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtendedHl {
    pub n: usize,
    pub d: usize,
    pub r: usize,
    /// Largest admissible `t`, or `None` when the inequality already fails
    /// at `t = 0`.
    pub t0: Option<usize>,
    /// `(t, C(n+d+t-1, d+t) - r C(t+n-1, t))` for `t = 0..=t0`.
    pub dims: Vec<(usize, i64)>,
}

impl ExtendedHl {
    pub fn dim(&self, t: usize) -> Option<i64> {
        self.dims.iter().find(|(s, _)| *s == t).map(|(_, v)| *v)
    }
}

fn extended_hl_condition(d: usize, r: usize, l: usize) -> bool {
    binomial(d + l + 2, 2) as i128 - (r as i128 - 1) * binomial(l + 2, 2) as i128 >= 0
}

/// `t0 = max { l < d : C(d+l+2, 2) - (r-1) C(l+2, 2) >= 0 }` and the
/// predicted dimensions of `A_{d+t}` for `t <= t0`.
pub fn extended_hl(n: usize, d: usize, r: usize) -> ExtendedHl {
    assert!(n >= 2 && d >= 1 && r >= 1, "need n >= 2, d >= 1, r >= 1");
    // the admissible l form an initial segment: the difference is concave in l
    let t0 = (0..d).take_while(|&l| extended_hl_condition(d, r, l)).last();
    let dims = match t0 {
        None => Vec::new(),
        Some(t0) => (0..=t0)
            .map(|t| {
                let v = binomial(n + d + t - 1, d + t) as i64
                    - (r * binomial(t + n - 1, t)) as i64;
                (t, v)
            })
            .collect(),
    };
    ExtendedHl { n, d, r, t0, dims }
}
