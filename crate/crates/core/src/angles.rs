//! Certified eigenvalues of T_p and their angles theta in [0, pi] with
//! a_p = 2 p^((k-1)/2) cos theta.
//!
//! Eigenvalues are isolated exactly from the integer characteristic
//! polynomial (Sturm counts, then sign-change bisection) so every reported
//! interval provably contains exactly one root.

use std::cmp::Ordering;
use std::f64::consts::PI;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::require_prime;
use crate::error::{Error, Result};
use crate::hecke::{charpoly, check_charpoly, hecke_matrix, CharPoly};
use crate::poly::{self, Poly};

/// Relative slack beyond |cos theta| = 1 that is clamped instead of
/// rejected.
pub const CLAMP_SLACK: f64 = 1e-12;

/// Default isolation width 2^-64.
pub fn default_tolerance() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << 64u32)
}

/// A closed rational interval holding exactly one real root. Either the
/// polynomial has opposite signs at the endpoints, or `lo == hi` is the
/// root itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootInterval {
    lo: BigRational,
    hi: BigRational,
}

impl RootInterval {
    /// A degenerate interval at a known exact value.
    pub fn exact(x: BigRational) -> Self {
        Self {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(2.into())
    }

    pub fn midpoint_f64(&self) -> f64 {
        self.midpoint().to_f64().unwrap_or(f64::NAN)
    }

    pub fn overlaps(&self, other: &Self) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }
}

fn two() -> BigRational {
    BigRational::from_integer(2.into())
}

/// A split point in (lo, hi) at which `p` does not vanish. Among d + 1
/// candidates at least one is not a root.
fn split_point(p: &Poly, lo: &BigRational, hi: &BigRational) -> BigRational {
    let width = hi - lo;
    let eighths = [4, 3, 5, 2, 6, 1, 7];
    let degree = p.degree().unwrap_or(0);
    for j in 1.. {
        let denom = BigInt::from(8) << (j / eighths.len()) as u32;
        let numer = eighths[j % eighths.len()];
        let x = lo + &width * BigRational::new(numer.into(), denom);
        if !p.eval(&x).is_zero() || j > 8 * (degree + 2) {
            return x;
        }
    }
    unreachable!()
}

/// Isolates every real root of a squarefree polynomial into disjoint
/// rational intervals of width at most `tol`, sorted increasingly.
pub fn isolate_roots(cp: &CharPoly, tol: &BigRational) -> Result<Vec<RootInterval>> {
    if !tol.is_positive() {
        return Err(Error::invalid("tolerance must be positive"));
    }
    let p = cp.to_poly();
    if p.degree().unwrap_or(0) == 0 {
        return Ok(Vec::new());
    }
    if poly::gcd(&p, &p.derivative()).degree() != Some(0) {
        return Err(Error::NotSquarefree);
    }
    let seq: Vec<Vec<BigInt>> = poly::sturm_sequence(&p).iter().map(poly::clear_denominators).collect();
    let variations = |x: &BigRational| {
        let signs: Vec<Ordering> = seq
            .iter()
            .map(|q| poly::sign_at_ints(q, x))
            .filter(|s| *s != Ordering::Equal)
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    };
    let count = |lo: &BigRational, hi: &BigRational| variations(lo) - variations(hi);
    let bound = poly::root_bound_pow2(&p);
    // Endpoints never vanish: +-bound are outside the root disc.
    let mut pending = vec![(-bound.clone(), bound)];
    let mut isolated = Vec::new();
    while let Some((lo, hi)) = pending.pop() {
        match count(&lo, &hi) {
            0 => {}
            1 => isolated.push((lo, hi)),
            _ => {
                let mid = split_point(&p, &lo, &hi);
                if p.eval(&mid).is_zero() {
                    return Err(Error::consistency("could not find a non-root split point"));
                }
                pending.push((mid.clone(), hi));
                pending.push((lo, mid));
            }
        }
    }
    let mut out: Vec<RootInterval> = isolated
        .into_iter()
        .map(|(lo, hi)| refine(cp.coeffs(), lo, hi, tol))
        .collect::<Result<_>>()?;
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    Ok(out)
}

/// Sign-change bisection on an interval with one simple root and nonzero
/// endpoint values.
fn refine(c: &[BigInt], mut lo: BigRational, mut hi: BigRational, tol: &BigRational) -> Result<RootInterval> {
    let s_lo = poly::sign_at_ints(c, &lo);
    let s_hi = poly::sign_at_ints(c, &hi);
    if s_lo == Ordering::Equal || s_hi == Ordering::Equal || s_lo == s_hi {
        return Err(Error::consistency("isolating interval without a sign change"));
    }
    while &hi - &lo > *tol {
        let mid = (&lo + &hi) / two();
        match poly::sign_at_ints(c, &mid) {
            Ordering::Equal => return Ok(RootInterval::exact(mid)),
            s if s == s_lo => lo = mid,
            _ => hi = mid,
        }
    }
    Ok(RootInterval { lo, hi })
}

/// Eigenvalues of T_p on S_k(1) with their angles.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AngleSet {
    pub k: u32,
    pub p: u64,
    pub dim: usize,
    #[serde(skip)]
    pub eigenvalues: Vec<RootInterval>,
    /// cos theta = a_p / (2 p^((k-1)/2)).
    pub ratios: Vec<f64>,
    pub thetas: Vec<f64>,
    /// u = theta / (2 pi) in [0, 1/2].
    pub normalized: Vec<f64>,
    /// Indices whose ratio was clamped to +-1.
    pub clamped: Vec<usize>,
}

/// a / (2 p^((k-1)/2)) with the rational part divided exactly.
fn deligne_ratio(a: &BigRational, k: u32, p: u64) -> f64 {
    let e = k - 1;
    let den = BigInt::from(p).pow(e / 2) * 2;
    let r = (a / BigRational::from_integer(den)).to_f64().unwrap_or(f64::NAN);
    if e % 2 == 1 {
        r / (p as f64).sqrt()
    } else {
        r
    }
}

/// Converts certified eigenvalues to angles.
///
/// A ratio beyond 1 + 1e-12 in absolute value contradicts Deligne's bound
/// and is rejected; smaller excesses are clamped and recorded.
pub fn to_angles(k: u32, p: u64, eigenvalues: Vec<RootInterval>) -> Result<AngleSet> {
    require_prime(p)?;
    let mut ratios = Vec::with_capacity(eigenvalues.len());
    let mut clamped = Vec::new();
    for (i, ev) in eigenvalues.iter().enumerate() {
        let r = deligne_ratio(&ev.midpoint(), k, p);
        if !r.is_finite() || r.abs() > 1.0 + CLAMP_SLACK {
            return Err(Error::Domain(format!(
                "eigenvalue {} exceeds 2 p^((k-1)/2) (ratio {r})",
                ev.midpoint_f64()
            )));
        }
        if r.abs() > 1.0 {
            clamped.push(i);
            ratios.push(r.signum());
        } else {
            ratios.push(r);
        }
    }
    let thetas: Vec<f64> = ratios.iter().map(|r| r.acos()).collect();
    let normalized = thetas.iter().map(|t| t / (2.0 * PI)).collect();
    Ok(AngleSet {
        k,
        p,
        dim: eigenvalues.len(),
        eigenvalues,
        ratios,
        thetas,
        normalized,
        clamped,
    })
}

/// Full pipeline for T_p on S_k(1): matrix, charpoly, certified roots and
/// angles. Checks Cayley-Hamilton, the root count and the trace.
pub fn angles_for(k: u32, p: u64, tol: &BigRational) -> Result<AngleSet> {
    require_prime(p)?;
    let m = hecke_matrix(k, p)?;
    let cp = charpoly(&m);
    check_charpoly(&m, &cp)?;
    let roots = isolate_roots(&cp, tol)?;
    if roots.len() != cp.degree() {
        return Err(Error::consistency(format!(
            "T_{p} in weight {k} has {} real eigenvalues out of {}",
            roots.len(),
            cp.degree()
        )));
    }
    let mid_sum: BigRational = roots.iter().map(RootInterval::midpoint).sum();
    let slack = tol * BigRational::from_integer(BigInt::from(roots.len()));
    if (mid_sum - BigRational::from_integer(m.trace())).abs() > slack {
        return Err(Error::consistency("eigenvalue midpoints do not sum to the trace"));
    }
    to_angles(k, p, roots)
}

/// sum_i 2 cos(m theta_i), read literally (m = 0 gives 2 dim).
pub fn empirical_moment(a: &AngleSet, m: u32) -> f64 {
    a.ratios.iter().map(|&x| 2.0 * chebyshev_t(m, x)).sum()
}

/// Moment with the m = 0 term taken as the dimension, matching c_0 = 1
/// in the equidistribution statements.
pub fn empirical_moment_normalized(a: &AngleSet, m: u32) -> f64 {
    if m == 0 {
        a.dim as f64
    } else {
        empirical_moment(a, m)
    }
}

/// T_m(x) = cos(m arccos x) by the three-term recurrence.
pub fn chebyshev_t(m: u32, x: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, x);
    if m == 0 {
        return prev;
    }
    for _ in 1..m {
        let next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// True when two distinct eigenvalue intervals overlap, i.e. a possible
/// coincidence theta_p(f) = theta_p(g) with f != g.
pub fn has_coincidences(a: &AngleSet) -> bool {
    a.eigenvalues
        .iter()
        .enumerate()
        .any(|(i, x)| a.eigenvalues[i + 1..].iter().any(|y| x.overlaps(y)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn isolate_linear() {
        let roots = isolate_roots(&CharPoly::from_i64(&[24, 1]).unwrap(), &rat(1, 1000)).unwrap();
        assert_eq!(roots.len(), 1);
        let r = &roots[0];
        assert!(r.lo() <= &rat(-24, 1) && &rat(-24, 1) <= r.hi());
        assert!(r.width() <= rat(1, 1000));
    }

    /// Bisection oracle on the sign of n^2 - 2 d^2.
    fn sqrt2_bracket(steps: u32) -> (BigRational, BigRational) {
        let (mut lo, mut hi) = (rat(1, 1), rat(2, 1));
        for _ in 0..steps {
            let mid = (&lo + &hi) / rat(2, 1);
            let (n, d) = (mid.numer().clone(), mid.denom().clone());
            if &n * &n - BigInt::from(2) * &d * &d < BigInt::zero() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        (lo, hi)
    }

    #[test]
    fn isolate_sqrt2() {
        let tol = rat(1, 1_000_000);
        let roots = isolate_roots(&CharPoly::from_i64(&[-2, 0, 1]).unwrap(), &tol).unwrap();
        assert_eq!(roots.len(), 2);
        let (lo, hi) = sqrt2_bracket(40);
        let pos = &roots[1];
        assert!(pos.lo() <= &hi && &lo <= pos.hi());
        assert!(pos.width() <= tol);
        assert!((roots[0].midpoint_f64() + std::f64::consts::SQRT_2).abs() < 1e-6);
    }

    #[test]
    fn isolate_pm_one() {
        let roots = isolate_roots(&CharPoly::from_i64(&[-1, 0, 1]).unwrap(), &rat(1, 1 << 20)).unwrap();
        assert_eq!(roots.len(), 2);
        assert!((roots[0].midpoint_f64() + 1.0).abs() < 1e-6);
        assert!((roots[1].midpoint_f64() - 1.0).abs() < 1e-6);
    }

    #[test]
    fn isolate_rejects_repeated_roots() {
        let r = isolate_roots(&CharPoly::from_i64(&[1, -2, 1]).unwrap(), &rat(1, 8));
        assert_eq!(r, Err(Error::NotSquarefree));
    }

    #[test]
    fn isolate_many_roots_with_dyadic_roots() {
        // Integer roots land exactly on bisection points.
        let p: Vec<i64> = {
            let roots = [0i64, 1, 2, -3, 4];
            let mut c = vec![1i64];
            for r in roots {
                let mut n = vec![0i64; c.len() + 1];
                for (i, &a) in c.iter().enumerate() {
                    n[i + 1] += a;
                    n[i] -= r * a;
                }
                c = n;
            }
            c
        };
        let cp = CharPoly::from_i64(&p).unwrap();
        let roots = isolate_roots(&cp, &default_tolerance()).unwrap();
        let mids: Vec<f64> = roots.iter().map(RootInterval::midpoint_f64).collect();
        assert_eq!(mids.len(), 5);
        for (m, want) in mids.iter().zip([-3.0, 0.0, 1.0, 2.0, 4.0]) {
            assert!((m - want).abs() < 1e-15);
        }
    }

    #[test]
    fn angle_examples() {
        let a = to_angles(12, 2, vec![RootInterval::exact(rat(0, 1))]).unwrap();
        assert!((a.thetas[0] - PI / 2.0).abs() < 1e-15);
        assert!((a.normalized[0] - 0.25).abs() < 1e-15);

        let a = to_angles(12, 2, vec![RootInterval::exact(rat(-24, 1))]).unwrap();
        assert!((a.ratios[0] + 0.2651650429449553).abs() < 1e-12);
        assert!((a.thetas[0] - 1.8392).abs() < 1e-4);
        assert!((a.normalized[0] - 0.29272).abs() < 1e-5);

        // Boundary 2 p^((k-1)/2) with p = 2, k = 3 gives 2 * 2 = 4.
        let a = to_angles(3, 2, vec![RootInterval::exact(rat(4, 1))]).unwrap();
        assert_eq!(a.thetas[0], 0.0);
        assert_eq!(a.normalized[0], 0.0);
    }

    #[test]
    fn deligne_violations() {
        assert!(matches!(
            to_angles(12, 2, vec![RootInterval::exact(rat(200, 1))]),
            Err(Error::Domain(_))
        ));
        // 4 (1 + 1e-14) is clamped.
        let a = to_angles(3, 2, vec![RootInterval::exact(rat(4, 1) + rat(4, 100_000_000_000_000))]).unwrap();
        assert_eq!(a.clamped, vec![0]);
        assert_eq!(a.thetas[0], 0.0);
    }

    #[test]
    fn moment_examples() {
        let empty = to_angles(14, 2, vec![]).unwrap();
        assert_eq!(empirical_moment(&empty, 3), 0.0);
        let a = angles_for(12, 2, &default_tolerance()).unwrap();
        assert!((empirical_moment(&a, 1) + 0.5303300858899106).abs() < 1e-12);
        assert_eq!(empirical_moment_normalized(&a, 0), 1.0);
        assert_eq!(empirical_moment(&a, 0), 2.0);
    }

    #[test]
    fn thetas_order_reverses_eigenvalues() {
        for k in [24u32, 36, 48, 60] {
            let a = angles_for(k, 3, &default_tolerance()).unwrap();
            for w in a.thetas.windows(2) {
                assert!(w[0] > w[1]);
            }
            assert!(!has_coincidences(&a));
        }
    }

    #[test]
    fn chebyshev_matches_cosine() {
        for m in 0..12 {
            for i in 0..=20 {
                let th = PI * i as f64 / 20.0;
                assert!((chebyshev_t(m, th.cos()) - (m as f64 * th).cos()).abs() < 1e-12);
            }
        }
    }
}
