//! Polynomials over a prime field F_q for small q, used for factorization
//! patterns (distinct-degree factorization) and Hensel lifting of roots.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Polynomial over F_q, low to high, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpPoly {
    q: u64,
    c: Vec<u64>,
}

impl FpPoly {
    pub fn new(q: u64, mut c: Vec<u64>) -> Self {
        for x in c.iter_mut() {
            *x %= q;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        Self { q, c }
    }

    /// Reduction of an integer polynomial modulo q.
    pub fn from_ints(q: u64, coeffs: &[BigInt]) -> Self {
        let qb = BigInt::from(q);
        let c = coeffs
            .iter()
            .map(|a| a.mod_floor(&qb).to_u64().expect("residue fits u64"))
            .collect();
        Self::new(q, c)
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn mulm(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.q as u128) as u64
    }

    fn inv(&self, a: u64) -> u64 {
        pow_mod(a, self.q - 2, self.q)
    }

    fn x(q: u64) -> Self {
        Self::new(q, vec![0, 1])
    }

    pub fn monic(&self) -> Self {
        match self.c.last() {
            None => self.clone(),
            Some(&lc) => {
                let inv = self.inv(lc);
                Self::new(self.q, self.c.iter().map(|&a| self.mulm(a, inv)).collect())
            }
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.c.len().max(other.c.len());
        let q = self.q;
        Self::new(
            q,
            (0..n)
                .map(|i| {
                    let a = self.c.get(i).copied().unwrap_or(0);
                    let b = other.c.get(i).copied().unwrap_or(0);
                    (a + q - b) % q
                })
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::new(self.q, vec![]);
        }
        let mut out = vec![0u64; self.c.len() + other.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            for (j, &b) in other.c.iter().enumerate() {
                out[i + j] = (out[i + j] + self.mulm(a, b)) % self.q;
            }
        }
        Self::new(self.q, out)
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let q = self.q;
        let inv = self.inv(d.c[dd]);
        let mut r = self.c.clone();
        let Some(nd) = self.degree() else {
            return (self.clone(), self.clone());
        };
        if nd < dd {
            return (Self::new(q, vec![]), self.clone());
        }
        let mut quot = vec![0u64; nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let c = self.mulm(r[i + dd], inv);
            if c == 0 {
                continue;
            }
            for (j, &dj) in d.c.iter().enumerate() {
                r[i + j] = (r[i + j] + q - self.mulm(c, dj)) % q;
            }
            quot[i] = c;
        }
        r.truncate(dd);
        (Self::new(q, quot), Self::new(q, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    pub fn derivative(&self) -> Self {
        let q = self.q;
        Self::new(
            q,
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &a)| self.mulm(a, i as u64 % q))
                .collect(),
        )
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.c
            .iter()
            .rev()
            .fold(0, |acc, &a| (self.mulm(acc, x) + a) % self.q)
    }

    /// self^e mod m.
    fn pow_mod(&self, mut e: u64, m: &Self) -> Self {
        let mut acc = Self::new(self.q, vec![1]).rem(m);
        let mut base = self.rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).rem(m);
            }
        }
        acc
    }
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * b as u128) % m as u128) as u64;
        }
        b = ((b as u128 * b as u128) % m as u128) as u64;
        e >>= 1;
    }
    acc
}

pub fn gcd(a: &FpPoly, b: &FpPoly) -> FpPoly {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_zero() {
        let r = a.rem(&b);
        a = b;
        b = r;
    }
    a.monic()
}

pub fn is_squarefree(f: &FpPoly) -> bool {
    gcd(f, &f.derivative()).degree() == Some(0)
}

/// Degrees of the irreducible factors of a monic squarefree polynomial,
/// sorted ascending, from distinct-degree factorization. Equivalently the
/// cycle type of Frobenius acting on the roots.
pub fn factor_degrees(f: &FpPoly) -> Vec<usize> {
    let q = f.q;
    let mut f = f.monic();
    let mut out = Vec::new();
    let x = FpPoly::x(q);
    let mut h = x.rem(&f);
    let mut i = 1;
    while let Some(df) = f.degree() {
        if df < 2 * i {
            if df > 0 {
                out.push(df);
            }
            break;
        }
        h = h.pow_mod(q, &f);
        let g = gcd(&f, &h.sub(&x));
        let dg = g.degree().unwrap_or(0);
        if dg > 0 {
            out.extend(std::iter::repeat(i).take(dg / i));
            f = f.div_rem(&g).0;
            h = h.rem(&f);
        }
        i += 1;
    }
    out.sort_unstable();
    out
}

/// Roots of f in F_q by exhaustive evaluation (q is small here).
pub fn roots(f: &FpPoly) -> Vec<u64> {
    (0..f.q).filter(|&x| f.eval(x) == 0).collect()
}

fn eval_big(p: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    p.iter()
        .rev()
        .fold(BigInt::zero(), |acc, c| (acc * x + c).mod_floor(m))
}

/// Lifts a simple root `r` of `p` modulo `q` to a root modulo `q^e` with
/// `q^e > bound`, returning it in symmetric representation together with
/// the final modulus. Returns `None` if the root is not simple.
pub fn hensel_lift_root(p: &[BigInt], q: u64, r: u64, bound: &BigInt) -> Option<(BigInt, BigInt)> {
    let dp: Vec<BigInt> = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect();
    let qb = BigInt::from(q);
    if eval_big(&dp, &BigInt::from(r), &qb).is_zero() {
        return None;
    }
    let mut modulus = qb.clone();
    let mut root = BigInt::from(r);
    while &modulus <= bound {
        modulus = &modulus * &modulus;
        let fv = eval_big(p, &root, &modulus);
        let dv = eval_big(&dp, &root, &modulus);
        let inv = mod_inverse(&dv, &modulus)?;
        root = (&root - fv * inv).mod_floor(&modulus);
    }
    let half = &modulus >> 1u32;
    if root > half {
        root -= &modulus;
    }
    Some((root, modulus))
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() || (-&e.gcd).is_one() {
        let x = if e.gcd.is_negative() { -e.x } else { e.x };
        Some(x.mod_floor(m))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(q: u64, c: &[u64]) -> FpPoly {
        FpPoly::new(q, c.to_vec())
    }

    #[test]
    fn ddf_patterns() {
        // x^2 + 1 is irreducible mod 3, splits mod 5
        assert_eq!(factor_degrees(&fp(3, &[1, 0, 1])), vec![2]);
        assert_eq!(factor_degrees(&fp(5, &[1, 0, 1])), vec![1, 1]);
        // x^3 - 2 mod 7: 2 is not a cube mod 7, so irreducible
        assert_eq!(factor_degrees(&fp(7, &[5, 0, 0, 1])), vec![3]);
        // (x^2+1)(x+1) mod 3
        let f = fp(3, &[1, 0, 1]).mul(&fp(3, &[1, 1]));
        assert_eq!(factor_degrees(&f), vec![1, 2]);
    }

    #[test]
    fn squarefree_mod_q() {
        assert!(!is_squarefree(&fp(5, &[1, 2, 1])));
        assert!(is_squarefree(&fp(5, &[4, 0, 1])));
    }

    #[test]
    fn hensel_recovers_integer_root() {
        // (x - 1234567)(x + 89)
        let p: Vec<BigInt> = vec![BigInt::from(-1234567i64 * 89), BigInt::from(89 - 1234567), BigInt::one()];
        let r = (1234567u64) % 7;
        let (root, m) = hensel_lift_root(&p, 7, r, &BigInt::from(10_000_000)).unwrap();
        assert!(m > BigInt::from(10_000_000));
        assert_eq!(root, BigInt::from(1234567));
    }
}
