//! Closed-form quantities of the pair-counting argument: arithmetic
//! functions of the level, the p-adic Plancherel moments c_m, the
//! equidistribution bound and its alternative, the Lambert W function,
//! the choice of the majorant degree M, the Fourier-side estimate of the
//! pair count, and the shape of the final bound.

use std::f64::consts::{E, PI};

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::angles::{self, AngleSet};
use crate::arith::{self, require_prime};
use crate::error::{Error, Result};
use crate::hecke::{self, DEFAULT_PRIME_BUDGET};
use crate::qexpansion::valence_dim;
use crate::selberg::build_majorant;
use crate::traceformula::TraceFormula;

/// nu(N), psi(N), f(N) and d(N).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LevelStats {
    pub n: u64,
    /// Number of distinct prime divisors.
    pub nu: u32,
    /// N prod_{q | N} (1 + 1/q).
    pub psi: u64,
    /// sum_{c | N} phi(gcd(c, N/c)).
    pub f_n: u64,
    /// Number of divisors.
    pub d_n: u64,
}

pub fn psi(n: u64) -> u64 {
    arith::factorize(n)
        .into_iter()
        .fold(n, |acc, (q, _)| acc / q * (q + 1))
}

pub fn level_stats(n: u64) -> Result<LevelStats> {
    if n == 0 {
        return Err(Error::invalid("level must be positive"));
    }
    let divs = arith::divisors(n);
    let f_n = divs
        .iter()
        .map(|&c| arith::phi(arith::gcd(c, n / c)))
        .sum();
    Ok(LevelStats {
        n,
        nu: arith::factorize(n).len() as u32,
        psi: psi(n),
        f_n,
        d_n: divs.len() as u64,
    })
}

/// c_0 = 1, c_m = 0 for odd m, c_m = p^(-m/2) - p^(-(m-2)/2) for even m >= 2.
pub fn c_coeff(p: u64, m: u32) -> Result<BigRational> {
    require_prime(p)?;
    Ok(match m {
        0 => BigRational::one(),
        _ if m % 2 == 1 => BigRational::zero(),
        _ => {
            let inv_pow = |e: u32| BigRational::new(BigInt::one(), BigInt::from(p).pow(e));
            inv_pow(m / 2) - inv_pow(m / 2 - 1)
        }
    })
}

pub fn c_coeff_f64(p: u64, m: u32) -> Result<f64> {
    Ok(c_coeff(p, m)?.to_f64().expect("finite"))
}

/// sup of psi(f) over integers 1 <= f with f^2 < 4 p^m.
fn sup_psi(p: u64, m: u32) -> u64 {
    let limit = 4 * (p as u128).pow(m);
    (1u64..)
        .take_while(|&f| (f as u128) * (f as u128) < limit)
        .map(psi)
        .max()
        .unwrap_or(0)
}

/// 4 p^m 2^nu(N) sup_{f^2 < 4p^m} psi(f) + 2 f(N) + delta_m(k), where
/// delta_m(k) = 2 p^(m/2) for k = 2 and 0 otherwise.
pub fn lemma1_bound(k: u32, n: u64, p: u64, m: u32) -> Result<f64> {
    require_prime(p)?;
    if m == 0 {
        return Err(Error::invalid("the bound is stated for m >= 1"));
    }
    let ls = level_stats(n)?;
    let main = 4.0 * (p as f64).powi(m as i32) * 2f64.powi(ls.nu as i32) * sup_psi(p, m) as f64;
    let delta = if k == 2 {
        2.0 * (p as f64).powf(m as f64 / 2.0)
    } else {
        0.0
    };
    Ok(main + 2.0 * ls.f_n as f64 + delta)
}

/// p^(3m/2) 2^nu(N) log p^m + sqrt(N) d(N).
pub fn alt_bound(_k: u32, n: u64, p: u64, m: u32) -> Result<f64> {
    require_prime(p)?;
    let ls = level_stats(n)?;
    let pf = p as f64;
    Ok(pf.powf(1.5 * m as f64) * 2f64.powi(ls.nu as i32) * (m as f64 * pf.ln())
        + (n as f64).sqrt() * ls.d_n as f64)
}

/// Principal branch of Lambert W on [-1/e, inf).
pub fn lambert_w(x: f64) -> Result<f64> {
    let branch = -1.0 / E;
    if x.is_nan() || x < branch {
        return Err(Error::Domain(format!("lambert_w({x}) is below -1/e")));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if x == branch {
        return Ok(-1.0);
    }
    if x.is_infinite() {
        return Ok(f64::INFINITY);
    }
    let mut w = if x < -0.25 {
        // Series about the branch point.
        let q = (2.0 * (E * x + 1.0)).max(0.0).sqrt();
        -1.0 + q - q * q / 3.0 + 11.0 / 72.0 * q * q * q
    } else {
        (1.0 + x).ln()
    };
    // Bracket with f(w) = w e^w - x increasing on [-1, inf).
    let (mut lo, mut hi) = (-1.0, (1.0 + x).ln().max(1.0) + 1.0);
    for _ in 0..100 {
        let ew = w.exp();
        let f = w * ew - x;
        if f == 0.0 {
            break;
        }
        if f < 0.0 {
            lo = w;
        } else {
            hi = w;
        }
        let wp1 = w + 1.0;
        let mut next = w - f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
        if !next.is_finite() || next <= lo || next >= hi {
            next = 0.5 * (lo + hi);
        }
        let done = (next - w).abs() <= 1e-16 * (1.0 + next.abs());
        w = next;
        if done {
            break;
        }
    }
    Ok(w)
}

/// The degree M balancing the two terms of the final estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MChoice {
    /// Nearest integer to ((2/3) log kN + (1/3) log p) / log p, at least 1.
    pub m: usize,
    /// The unrounded ratio.
    pub ratio: f64,
    /// W((kN)^(2/3) (log p)^(1/3)) / log p, the Lambert form of M.
    pub lambert: f64,
}

#[allow(non_snake_case)]
pub fn choose_M(k: u32, n: u64, p: u64) -> Result<MChoice> {
    require_prime(p)?;
    if k < 2 || n == 0 {
        return Err(Error::invalid("need k >= 2 and N >= 1"));
    }
    let lp = (p as f64).ln();
    let lkn = (k as f64 * n as f64).ln();
    let ratio = (2.0 / 3.0 * lkn + lp / 3.0) / lp;
    let arg = (2.0 / 3.0 * lkn + lp.ln() / 3.0).exp();
    Ok(MChoice {
        m: (ratio.round() as usize).max(1),
        ratio,
        lambert: lambert_w(arg)? / lp,
    })
}

/// dim^2 log p / log(kN), without the implied constant.
pub fn theorem1_value(dim: f64, k: u32, n: u64, p: u64) -> Result<f64> {
    require_prime(p)?;
    let kn = k as f64 * n as f64;
    if kn < 3.0 {
        return Err(Error::invalid(format!("kN = {kn} must be at least 3")));
    }
    Ok(dim * dim * (p as f64).ln() / kn.ln())
}

/// Fourier-side upper bound for the number of pairs with equal angle.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KeyEstimate {
    pub m: usize,
    pub delta: f64,
    /// |T_n| = |sum_f e(n u_f)| for n = 0..M.
    pub exp_sums: Vec<f64>,
    /// sum_{f,g} chi_I(u_f - u_g): pairs with angles within delta.
    pub close_pairs: u64,
    /// sum_{f,g} S_M(u_f - u_g).
    pub majorant_pair_sum: f64,
    /// sum_{|n| <= M} |Ŝ(n)| |T_n|^2.
    pub rhs: f64,
    /// The n = 0 part (2 delta + 1/(M+1)) dim^2.
    pub n0_term: f64,
    /// The n != 0 part of `rhs`.
    pub nonzero_terms: f64,
    /// rhs with |Ŝ(n)| replaced by its bound 1/(M+1) + min(2 delta, 1/(pi |n|)).
    pub bracket_bound: f64,
}

/// Evaluates the chain pair count <= sum chi_I <= sum S_M <= RHS for the
/// interval I = [-delta, delta] on normalized angles u = theta / (2 pi).
pub fn estimate_key(m: usize, delta: Rational64, a: &AngleSet) -> Result<KeyEstimate> {
    if delta <= Rational64::zero() || delta > Rational64::new(1, 2) {
        return Err(Error::invalid(format!("delta = {delta} must lie in (0, 1/2]")));
    }
    let s = build_majorant(-delta, delta, m)?;
    let d = delta.to_f64().expect("finite");
    let dim = a.dim as f64;
    let exp_sums: Vec<f64> = (0..=m)
        .map(|n| {
            let (re, im) = a.normalized.iter().fold((0.0, 0.0), |(re, im), u| {
                let ph = 2.0 * PI * (n as f64 * u).rem_euclid(1.0);
                (re + ph.cos(), im + ph.sin())
            });
            re.hypot(im)
        })
        .collect();
    let n0_term = s.coeff(0).norm() * dim * dim;
    let mut nonzero_terms = 0.0;
    let mut nonzero_bound = 0.0;
    for n in 1..=m {
        let t2 = exp_sums[n] * exp_sums[n];
        nonzero_terms += (s.coeff(n as i64).norm() + s.coeff(-(n as i64)).norm()) * t2;
        let bound = 1.0 / (m + 1) as f64 + (2.0 * d).min(1.0 / (PI * n as f64));
        nonzero_bound += 2.0 * bound * t2;
    }
    let mut close_pairs = 0;
    let mut majorant_pair_sum = 0.0;
    for uf in &a.normalized {
        for ug in &a.normalized {
            let diff = uf - ug;
            if diff.abs() <= d {
                close_pairs += 1;
            }
            majorant_pair_sum += s.evaluate(diff)?;
        }
    }
    let n0_bound = (2.0 * d + 1.0 / (m + 1) as f64) * dim * dim;
    Ok(KeyEstimate {
        m,
        delta: d,
        exp_sums,
        close_pairs,
        majorant_pair_sum,
        rhs: n0_term + nonzero_terms,
        n0_term,
        nonzero_terms,
        bracket_bound: n0_bound + nonzero_bound,
    })
}

/// Default interval half-width min(1/M, 1/2).
pub fn default_delta(m: usize) -> Rational64 {
    Rational64::new(1, m.max(2) as i64)
}

/// Equidistribution bound at one m, with the true deviation at level 1.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LemmaTerm {
    pub m: u32,
    pub c_m: f64,
    pub lemma1: f64,
    pub alt: f64,
    /// |sum_f 2cos(m theta) - c_m dim| from the trace formula (level 1).
    pub deviation: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DimSource {
    Exact,
    Supplied,
    Heuristic,
}

/// All quantities of the bound for one (k, N, p).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub k: u32,
    pub level: u64,
    pub p: u64,
    pub dim: f64,
    pub dim_source: DimSource,
    pub level_stats: LevelStats,
    pub m_choice: MChoice,
    /// Degree actually used (the choice unless overridden).
    pub m_star: usize,
    pub delta: String,
    pub lemma1_terms: Vec<LemmaTerm>,
    pub key: Option<KeyEstimate>,
    pub pair_count_exact: Option<u64>,
    pub theorem1_value: Option<f64>,
}

/// Options for [`bound_report`]; `None` picks the defaults.
#[derive(Debug, Clone, Copy, Default)]
pub struct BoundOptions {
    pub dim: Option<f64>,
    pub m: Option<usize>,
    pub delta: Option<Rational64>,
}

/// Builds the full report. At level 1 the eigenvalue angles, exact pair
/// count and true deviations are computed; at higher level only the
/// closed-form terms are available.
pub fn bound_report(k: u32, level: u64, p: u64, opts: BoundOptions, tf: &TraceFormula) -> Result<BoundReport> {
    require_prime(p)?;
    if k % 2 != 0 {
        return Err(Error::OddWeight(k));
    }
    let ls = level_stats(level)?;
    if level % p == 0 {
        return Err(Error::invalid(format!("p = {p} divides the level {level}")));
    }
    let (dim, dim_source) = match (opts.dim, level) {
        (Some(d), _) => (d, DimSource::Supplied),
        (None, 1) => (valence_dim(k) as f64, DimSource::Exact),
        (None, _) => ((k as f64 - 1.0) * ls.psi as f64 / 12.0, DimSource::Heuristic),
    };
    let m_choice = choose_M(k, level, p)?;
    let m_star = opts.m.unwrap_or(m_choice.m);
    if m_star == 0 {
        return Err(Error::invalid("M must be positive"));
    }
    let delta = opts.delta.unwrap_or_else(|| default_delta(m_star));
    let level_one = level == 1 && k >= 4;
    let exact_dim = valence_dim(k) as f64;
    let lemma1_terms = (1..=m_star as u32)
        .map(|m| {
            let c_m = c_coeff_f64(p, m)?;
            let deviation = if level_one {
                Some((tf.moment_sum(k, p, m)? - c_m * exact_dim).abs())
            } else {
                None
            };
            Ok(LemmaTerm {
                m,
                c_m,
                lemma1: lemma1_bound(k, level, p, m)?,
                alt: alt_bound(k, level, p, m)?,
                deviation,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let (key, pair_count_exact) = if level_one {
        let a = angles::angles_for(k, p, &angles::default_tolerance())?;
        let key = estimate_key(m_star, delta, &a)?;
        let report = hecke::pair_count_report(k, p, DEFAULT_PRIME_BUDGET)?;
        (Some(key), Some(report.pair_count))
    } else {
        (None, None)
    };
    if let (Some(key), Some(pc)) = (&key, pair_count_exact) {
        if key.rhs < pc as f64 {
            return Err(Error::consistency(format!(
                "Fourier bound {} is below the exact pair count {pc}",
                key.rhs
            )));
        }
    }
    Ok(BoundReport {
        k,
        level,
        p,
        dim,
        dim_source,
        level_stats: ls,
        m_choice,
        m_star,
        delta: delta.to_string(),
        lemma1_terms,
        key,
        pair_count_exact,
        theorem1_value: theorem1_value(dim, k, level, p).ok(),
    })
}
