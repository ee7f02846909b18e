//! The matrix family M(G; a, b) = a*D(G) + b*A(G) and its spectrum.
//!
//! Degree-derived quantities (row sums, mean-square terms, bound sides)
//! stay in exact rational arithmetic end to end; floating point enters
//! only inside the eigensolver, whose tolerances are far below anything
//! the downstream comparisons depend on.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::graph::{degree_profile, Graph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParamError {
    #[error("alpha and beta must not both be zero")]
    BothZero,
    #[error("cannot parse {0:?} as a rational (expected an integer, decimal, or p/q)")]
    Malformed(String),
    #[error("rational denominator must not be zero")]
    ZeroDenominator,
}

/// The matrix family's parameter pair, kept exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectralParams {
    alpha: BigRational,
    beta: BigRational,
}

impl SpectralParams {
    pub fn new(alpha: BigRational, beta: BigRational) -> Result<Self, ParamError> {
        if alpha.is_zero() && beta.is_zero() {
            return Err(ParamError::BothZero);
        }
        Ok(SpectralParams { alpha, beta })
    }

    pub fn from_ints(alpha: i64, beta: i64) -> Result<Self, ParamError> {
        SpectralParams::new(
            BigRational::from_integer(BigInt::from(alpha)),
            BigRational::from_integer(BigInt::from(beta)),
        )
    }

    pub fn alpha(&self) -> &BigRational {
        &self.alpha
    }

    pub fn beta(&self) -> &BigRational {
        &self.beta
    }

    /// Whether the certificates apply: they require alpha >= beta > 0.
    pub fn certifiable(&self) -> bool {
        self.alpha >= self.beta && self.beta > BigRational::zero()
    }

    pub fn alpha_f64(&self) -> f64 {
        rational_to_f64(&self.alpha)
    }

    pub fn beta_f64(&self) -> f64 {
        rational_to_f64(&self.beta)
    }
}

impl std::fmt::Display for SpectralParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "alpha={}, beta={}", self.alpha, self.beta)
    }
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().expect("rational converts to f64")
}

fn parse_bigint(s: &str) -> Result<BigInt, ()> {
    let t = s.trim();
    let t = t.strip_prefix('+').unwrap_or(t);
    t.parse().map_err(|_| ())
}

/// Accepts integers ("3", "-2"), decimals ("0.25", "-1.5"), and fractions
/// ("3/2", "-1/3").
pub fn parse_rational(s: &str) -> Result<BigRational, ParamError> {
    let malformed = || ParamError::Malformed(s.to_string());
    let t = s.trim();
    if let Some((num, den)) = t.split_once('/') {
        let n = parse_bigint(num).map_err(|()| malformed())?;
        let d = parse_bigint(den).map_err(|()| malformed())?;
        if d.is_zero() {
            return Err(ParamError::ZeroDenominator);
        }
        return Ok(BigRational::new(n, d));
    }
    let (negative, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let magnitude = if let Some((int_part, frac_part)) = body.split_once('.') {
        let digits = format!("{int_part}{frac_part}");
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(malformed());
        }
        let numer: BigInt = digits.parse().map_err(|_| malformed())?;
        let denom = BigInt::from(10u8).pow(frac_part.len() as u32);
        BigRational::new(numer, denom)
    } else {
        if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
            return Err(malformed());
        }
        BigRational::from_integer(body.parse().map_err(|_| malformed())?)
    };
    Ok(if negative { -magnitude } else { magnitude })
}

/// Dense symmetric matrix; symmetry is guaranteed by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl SymMatrix {
    /// Builds from `f`, evaluated once per unordered pair and mirrored.
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let mut entries = vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                let x = f(i, j);
                entries[i * n + j] = x;
                entries[j * n + i] = x;
            }
        }
        SymMatrix { n, entries }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    fn frobenius(&self) -> f64 {
        self.entries.iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

/// M(G; a, b): diagonal a*d(i), off-diagonal b where ij is an edge.
pub fn build_matrix(g: &Graph, p: &SpectralParams) -> SymMatrix {
    let alpha = p.alpha_f64();
    let beta = p.beta_f64();
    SymMatrix::from_fn(g.n(), |i, j| {
        if i == j {
            alpha * g.degree(i) as f64
        } else if g.has_edge(i, j) {
            beta
        } else {
            0.0
        }
    })
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("eigensolver did not converge after {max_sweeps} sweeps")]
pub struct EigenError {
    pub max_sweeps: usize,
}

const MAX_SWEEPS: usize = 100;

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumSummary {
    /// Sorted descending.
    pub eigenvalues: Vec<f64>,
    pub lambda1: f64,
    pub lambda_n: f64,
    /// max over eigenpairs of the max-norm of M*v - lambda*v.
    pub residual: f64,
}

fn off_diagonal_norm(a: &[f64], n: usize) -> f64 {
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[i * n + j] * a[i * n + j];
            }
        }
    }
    sum.sqrt()
}

/// Full spectrum by cyclic Jacobi rotations, with eigenvectors accumulated
/// so the result carries an a-posteriori residual bound.
pub fn eigenvalues(m: &SymMatrix) -> Result<SpectrumSummary, EigenError> {
    let n = m.n;
    if n == 0 {
        return Ok(SpectrumSummary { eigenvalues: vec![], lambda1: 0.0, lambda_n: 0.0, residual: 0.0 });
    }
    let target = 1e-12 * (1.0 + m.frobenius());
    let mut a = m.entries.clone();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a, n) < target {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (1.0 + theta * theta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // A <- J^T A J with J the (p,q) rotation.
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    if !converged && off_diagonal_norm(&a, n) >= target {
        return Err(EigenError { max_sweeps: MAX_SWEEPS });
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        a[j * n + j].partial_cmp(&a[i * n + i]).expect("eigenvalues are finite")
    });
    let eigs: Vec<f64> = order.iter().map(|&i| a[i * n + i]).collect();
    let mut residual = 0.0f64;
    for &col in &order {
        let lambda = a[col * n + col];
        for i in 0..n {
            let mut mv = 0.0;
            for j in 0..n {
                mv += m.entries[i * n + j] * v[j * n + col];
            }
            residual = residual.max((mv - lambda * v[i * n + col]).abs());
        }
    }
    Ok(SpectrumSummary {
        lambda1: eigs[0],
        lambda_n: eigs[n - 1],
        eigenvalues: eigs,
        residual,
    })
}

/// The identity route for the quadratic form:
/// (a - b) * sum_u d(u) x_u^2 + b * sum_{uv in E} (x_u + x_v)^2.
///
/// Both terms are nonnegative when a >= b >= 0, which is the whole
/// positive-semidefiniteness argument.
pub fn quadratic_form(g: &Graph, p: &SpectralParams, x: &[f64]) -> f64 {
    assert_eq!(x.len(), g.n());
    let alpha = p.alpha_f64();
    let beta = p.beta_f64();
    let degree_term: f64 = (0..g.n()).map(|u| g.degree(u) as f64 * x[u] * x[u]).sum();
    let edge_term: f64 = g.edges().map(|(u, v)| (x[u] + x[v]) * (x[u] + x[v])).sum();
    (alpha - beta) * degree_term + beta * edge_term
}

/// The definition route: x^T M x by explicit multiplication.
pub fn quadratic_form_direct(m: &SymMatrix, x: &[f64]) -> f64 {
    assert_eq!(x.len(), m.n());
    let mut total = 0.0;
    for i in 0..m.n() {
        for j in 0..m.n() {
            total += x[i] * m.get(i, j) * x[j];
        }
    }
    total
}

/// Row sum of M^2 at `u` by the degree formula:
/// a(a+b) d(u)^2 + b(a+b) sum_{v in N(u)} d(v), exact.
pub fn row_sum_m_squared(g: &Graph, p: &SpectralParams, u: usize) -> BigRational {
    assert!(u < g.n());
    let d_u = BigInt::from(g.degree(u));
    let neighbor_degrees: BigInt = (0..g.n())
        .filter(|&v| g.has_edge(u, v))
        .map(|v| BigInt::from(g.degree(v)))
        .sum();
    let ab = p.alpha() + p.beta();
    p.alpha() * &ab * BigRational::from_integer(&d_u * &d_u)
        + p.beta() * &ab * BigRational::from_integer(neighbor_degrees)
}

/// Row sums of M^2 by exact matrix squaring, the independent route the
/// degree formula is checked against.
pub fn m_squared_row_sums_direct(g: &Graph, p: &SpectralParams) -> Vec<BigRational> {
    let n = g.n();
    let entry = |i: usize, j: usize| -> BigRational {
        if i == j {
            p.alpha() * BigRational::from_integer(BigInt::from(g.degree(i)))
        } else if g.has_edge(i, j) {
            p.beta().clone()
        } else {
            BigRational::zero()
        }
    };
    let m: Vec<Vec<BigRational>> = (0..n).map(|i| (0..n).map(|j| entry(i, j)).collect()).collect();
    (0..n)
        .map(|i| {
            let mut sum = BigRational::zero();
            for (mik, row_k) in m[i].iter().zip(&m) {
                for mkj in row_k {
                    sum += mik * mkj;
                }
            }
            sum
        })
        .collect()
}

/// (a+b)^2 * sum_u d(u)^2 / n, exact.
pub fn mean_square_term(g: &Graph, p: &SpectralParams) -> BigRational {
    let prof = degree_profile(g);
    let ab = p.alpha() + p.beta();
    &ab * &ab * BigRational::new(BigInt::from(prof.sum_squares), BigInt::from(g.n()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct RayleighSandwich {
    pub lambda1_sq: f64,
    /// Exact middle term; the extreme squared eigenvalues bracket it.
    pub mean_term: BigRational,
    pub lambda_n_sq: f64,
}

/// The two-sided bound lambda1^2 >= (a+b)^2 sum d^2 / n >= lambda_n^2.
pub fn rayleigh_sandwich(g: &Graph, p: &SpectralParams) -> Result<RayleighSandwich, EigenError> {
    let spectrum = eigenvalues(&build_matrix(g, p))?;
    Ok(RayleighSandwich {
        lambda1_sq: spectrum.lambda1 * spectrum.lambda1,
        mean_term: mean_square_term(g, p),
        lambda_n_sq: spectrum.lambda_n * spectrum.lambda_n,
    })
}
