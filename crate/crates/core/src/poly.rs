//! Dense univariate polynomials over the rationals, with the handful of
//! exact algorithms the rest of the crate needs: Euclidean gcd, Yun's
//! squarefree decomposition, Sturm sequences and discriminants.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

/// Coefficients stored low to high with no trailing zeros; the zero
/// polynomial has an empty coefficient vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[BigInt]) -> Self {
        Self::new(coeffs.iter().cloned().map(BigRational::from_integer).collect())
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => {
                let inv = lc.recip();
                Self::new(self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(i.into()))
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = BigRational::zero();
        Self::new(
            (0..n)
                .map(|i| {
                    self.coeffs.get(i).unwrap_or(&zero) - other.coeffs.get(i).unwrap_or(&zero)
                })
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lc_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if nd < dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let c = &rem[i + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &c * d;
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    /// Exact value at a rational point (Horner).
    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn sign_at(&self, x: &BigRational) -> Ordering {
        self.eval(x).cmp(&BigRational::zero())
    }

    /// Sign of the polynomial as x -> +infinity (or -infinity).
    pub fn sign_at_infinity(&self, positive: bool) -> Ordering {
        match self.degree() {
            None => Ordering::Equal,
            Some(d) => {
                let s = self.coeffs[d].cmp(&BigRational::zero());
                if positive || d % 2 == 0 {
                    s
                } else {
                    s.reverse()
                }
            }
        }
    }

    /// Returns integer coefficients if every coefficient is integral.
    pub fn to_ints(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }
}

/// Monic greatest common divisor (zero if both inputs are zero).
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_zero() {
        let r = a.rem(&b);
        a = b;
        b = r.monic();
    }
    a.monic()
}

/// Yun's squarefree decomposition: returns `(a_i, i)` with
/// `monic(p) = prod a_i^i`, each `a_i` squarefree, pairwise coprime, and
/// only non-constant factors listed.
pub fn squarefree_decomposition(p: &Poly) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return out;
    }
    let p = p.monic();
    let dp = p.derivative();
    let a0 = gcd(&p, &dp);
    let mut b = p.div_rem(&a0).0;
    let mut c = dp.div_rem(&a0).0;
    let mut d = c.sub(&b.derivative());
    let mut i = 1;
    loop {
        let a = gcd(&b, &d);
        if a.degree().unwrap_or(0) > 0 {
            out.push((a.clone(), i));
        }
        b = b.div_rem(&a).0;
        if b.degree().unwrap_or(0) == 0 {
            break;
        }
        c = d.div_rem(&a).0;
        d = c.sub(&b.derivative());
        i += 1;
    }
    out
}

/// Standard Sturm chain p, p', -rem(p, p'), ...
pub fn sturm_sequence(p: &Poly) -> Vec<Poly> {
    let mut seq = vec![p.clone(), p.derivative()];
    while let Some(last) = seq.last() {
        if last.is_zero() {
            seq.pop();
            break;
        }
        let prev = &seq[seq.len() - 2];
        let r = prev.rem(last).neg();
        if r.is_zero() {
            break;
        }
        seq.push(r);
    }
    seq
}

fn count_variations(signs: impl Iterator<Item = Ordering>) -> usize {
    let mut last = Ordering::Equal;
    let mut count = 0;
    for s in signs.filter(|s| *s != Ordering::Equal) {
        if last != Ordering::Equal && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Sign variations of a Sturm chain at `x`.
pub fn sturm_variations(seq: &[Poly], x: &BigRational) -> usize {
    count_variations(seq.iter().map(|q| q.sign_at(x)))
}

pub fn sturm_variations_at_infinity(seq: &[Poly], positive: bool) -> usize {
    count_variations(seq.iter().map(|q| q.sign_at_infinity(positive)))
}

/// Determinant of a square integer matrix by fraction-free Bareiss
/// elimination.
pub fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Resultant of two integer polynomials via the Sylvester matrix.
pub fn resultant(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let m = a.len() - 1;
    let n = b.len() - 1;
    let size = m + n;
    if size == 0 {
        return BigInt::one();
    }
    let mut rows = Vec::with_capacity(size);
    // Sylvester rows use high-to-low coefficient order.
    for i in 0..n {
        let mut row = vec![BigInt::zero(); size];
        for (j, c) in a.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![BigInt::zero(); size];
        for (j, c) in b.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    bareiss_determinant(rows)
}

/// Discriminant of an integer polynomial of degree >= 1 (coefficients low
/// to high, nonzero leading coefficient).
pub fn discriminant(p: &[BigInt]) -> BigInt {
    let d = p.len() - 1;
    assert!(d >= 1, "discriminant needs degree >= 1");
    let dp: Vec<BigInt> = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect();
    let res = resultant(p, &dp);
    let signed = if (d * (d - 1) / 2) % 2 == 1 { -res } else { res };
    signed / &p[d]
}

/// A power of two strictly exceeding twice Fujiwara's bound
/// 2 max |c_(d-i) / c_d|^(1/i), so every complex root lies well inside.
pub fn root_bound_pow2(p: &Poly) -> BigRational {
    let lc = p.leading().expect("nonzero polynomial").abs();
    let d = p.degree().unwrap_or(0);
    let e = (1..=d)
        .filter(|&i| !p.coeffs()[d - i].is_zero())
        .map(|i| {
            let r = p.coeffs()[d - i].abs() / &lc;
            let log2 = r.numer().bits() as i64 - r.denom().bits() as i64 + 1;
            log2.div_euclid(i as i64) + 1
        })
        .max()
        .unwrap_or(0)
        .max(0);
    BigRational::from_integer(BigInt::one() << (e + 2) as usize)
}

/// Integer multiple of `p` by a positive constant, so signs are preserved.
pub fn clear_denominators(p: &Poly) -> Vec<BigInt> {
    let l = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| num_integer::Integer::lcm(&acc, c.denom()));
    p.coeffs().iter().map(|c| (c * &l).to_integer()).collect()
}

/// Sign of sum c_i x^i at x = a/b, from the integer sum c_i a^i b^(d-i).
pub fn sign_at_ints(c: &[BigInt], x: &BigRational) -> Ordering {
    let (a, b) = (x.numer(), x.denom());
    let mut acc = BigInt::zero();
    let mut bpow = BigInt::one();
    for ci in c.iter().rev() {
        acc = acc * a + ci * &bpow;
        bpow *= b;
    }
    acc.sign().cmp(&num_bigint::Sign::NoSign)
}

/// Cauchy bound 1 + max |c_i / c_d|: every complex root has smaller modulus.
pub fn cauchy_bound(p: &Poly) -> BigRational {
    let lc = p.leading().expect("nonzero polynomial").abs();
    let d = p.degree().unwrap_or(0);
    p.coeffs()[..d]
        .iter()
        .map(|c| c.abs() / &lc)
        .max()
        .unwrap_or_else(BigRational::zero)
        + BigRational::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64(c)
    }

    #[test]
    fn division_and_gcd() {
        // (x-1)(x+2) and (x-1)(x-3)
        let a = p(&[-2, 1, 1]);
        let b = p(&[3, -4, 1]);
        assert_eq!(gcd(&a, &b), p(&[-1, 1]));
        let (q, r) = a.mul(&b).div_rem(&b);
        assert_eq!(q, a);
        assert!(r.is_zero());
        assert_eq!(gcd(&p(&[1, 1]), &p(&[2, 1])), p(&[1]));
    }

    #[test]
    fn yun_multiplicities() {
        // (x-1)^2 (x+1) (x-5)^3
        let f = p(&[-1, 1])
            .mul(&p(&[-1, 1]))
            .mul(&p(&[1, 1]))
            .mul(&p(&[-5, 1]).mul(&p(&[-5, 1])).mul(&p(&[-5, 1])));
        let dec = squarefree_decomposition(&f);
        let degs: Vec<(usize, usize)> = dec.iter().map(|(a, i)| (a.degree().unwrap(), *i)).collect();
        assert_eq!(degs, vec![(1, 1), (1, 2), (1, 3)]);
        assert_eq!(dec[1].0, p(&[-1, 1]));
        assert!(squarefree_decomposition(&p(&[24, 1])) == vec![(p(&[24, 1]), 1)]);
    }

    #[test]
    fn sturm_counts_roots() {
        let f = p(&[0, -1, 0, 1]); // x^3 - x
        let seq = sturm_sequence(&f);
        let v = |x: i64| sturm_variations(&seq, &BigRational::from_integer(x.into()));
        assert_eq!(v(-2) - v(2), 3);
        assert_eq!(v(0) - v(2), 1); // (0, 2]
        assert_eq!(sturm_variations_at_infinity(&seq, false) - sturm_variations_at_infinity(&seq, true), 3);
        let g = p(&[1, 0, 1]);
        let seq = sturm_sequence(&g);
        assert_eq!(sturm_variations_at_infinity(&seq, false), sturm_variations_at_infinity(&seq, true));
    }

    #[test]
    fn discriminants() {
        let b = |c: &[i64]| c.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(discriminant(&b(&[-1, 0, 1])), BigInt::from(4));
        assert_eq!(discriminant(&b(&[1, -2, 1])), BigInt::from(0));
        assert_eq!(discriminant(&b(&[-20468736, -1080, 1])), BigInt::from(1080i64 * 1080 + 4 * 20468736));
        // x^3 + x + 1: -4 - 27
        assert_eq!(discriminant(&b(&[1, 1, 0, 1])), BigInt::from(-31));
        assert_eq!(discriminant(&b(&[24, 1])), BigInt::from(1));
    }

    #[test]
    fn bareiss_small() {
        let m = vec![
            vec![BigInt::from(2), BigInt::from(0), BigInt::from(1)],
            vec![BigInt::from(1), BigInt::from(3), BigInt::from(2)],
            vec![BigInt::from(1), BigInt::from(1), BigInt::from(2)],
        ];
        assert_eq!(bareiss_determinant(m), BigInt::from(6));
        let m = vec![
            vec![BigInt::from(0), BigInt::from(1)],
            vec![BigInt::from(1), BigInt::from(0)],
        ];
        assert_eq!(bareiss_determinant(m), BigInt::from(-1));
    }

    proptest::proptest! {
        #[test]
        fn integer_sign_matches_rational_eval(
            c in proptest::collection::vec(-1000i64..1000, 1..7),
            a in -500i64..500,
            b in 1i64..64,
        ) {
            let q = p(&c);
            let x = BigRational::new(a.into(), b.into());
            let ints: Vec<BigInt> = c.iter().map(|&v| v.into()).collect();
            proptest::prop_assert_eq!(sign_at_ints(&ints, &x), q.sign_at(&x));
        }

        #[test]
        fn root_bound_contains_integer_roots(roots in proptest::collection::vec(-10_000i64..10_000, 1..6), lead in 1i64..5) {
            let mut q = p(&[lead]);
            for r in &roots {
                q = q.mul(&p(&[-r, 1]));
            }
            let b = root_bound_pow2(&q);
            for r in &roots {
                proptest::prop_assert!(BigRational::from_integer((*r).into()).abs() * BigRational::from_integer(2.into()) < b);
            }
        }
    }

    #[test]
    fn clearing_denominators_keeps_signs() {
        let q = Poly::new(vec![
            BigRational::new((-1).into(), 6.into()),
            BigRational::new(3.into(), 4.into()),
        ]);
        assert_eq!(clear_denominators(&q), vec![BigInt::from(-2), BigInt::from(9)]);
    }
}
