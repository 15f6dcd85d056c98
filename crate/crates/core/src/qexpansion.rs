//! Truncated q-expansions with exact integer coefficients, the level-one
//! Eisenstein series E4 and E6, the discriminant form, and the Miller
//! echelon basis of the cusp forms of weight k.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::error::{Error, Result};

/// A power series `sum a_n q^n` known for `0 <= n < prec`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QExpansion {
    weight: u32,
    coeffs: Vec<BigInt>,
}

impl QExpansion {
    /// Builds a series from its first `coeffs.len()` coefficients.
    pub fn new(weight: u32, coeffs: Vec<BigInt>) -> Result<Self> {
        if weight % 2 != 0 {
            return Err(Error::OddWeight(weight));
        }
        if coeffs.is_empty() {
            return Err(Error::invalid("a q-expansion needs precision >= 1"));
        }
        Ok(Self { weight, coeffs })
    }

    pub fn from_i64(weight: u32, coeffs: &[i64]) -> Result<Self> {
        Self::new(weight, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// The constant series 1 of weight 0.
    pub fn one(prec: usize) -> Result<Self> {
        let mut coeffs = vec![BigInt::zero(); prec];
        if let Some(c) = coeffs.first_mut() {
            *c = BigInt::one();
        }
        Self::new(0, coeffs)
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    /// Number of known coefficients.
    pub fn prec(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of q^n, or `None` past the precision.
    pub fn coeff(&self, n: usize) -> Option<&BigInt> {
        self.coeffs.get(n)
    }

    /// Drops coefficients at and above `prec`. Never extends.
    pub fn truncate(&self, prec: usize) -> Result<Self> {
        if prec == 0 || prec > self.prec() {
            return Err(Error::Precision {
                needed: prec.max(1),
                got: self.prec(),
            });
        }
        Ok(Self {
            weight: self.weight,
            coeffs: self.coeffs[..prec].to_vec(),
        })
    }

    /// Sum of two forms of equal weight, truncated to the smaller precision.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a - b)
    }

    fn combine(&self, other: &Self, op: impl Fn(&BigInt, &BigInt) -> BigInt) -> Result<Self> {
        if self.weight != other.weight {
            return Err(Error::invalid(format!(
                "cannot add weights {} and {}",
                self.weight, other.weight
            )));
        }
        let prec = self.prec().min(other.prec());
        let coeffs = (0..prec)
            .map(|n| op(&self.coeffs[n], &other.coeffs[n]))
            .collect();
        Ok(Self {
            weight: self.weight,
            coeffs,
        })
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self {
            weight: self.weight,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Product; weights add and precision is the minimum of the two.
    pub fn mul(&self, other: &Self) -> Self {
        let prec = self.prec().min(other.prec());
        let mut coeffs = vec![BigInt::zero(); prec];
        for (i, a) in self.coeffs[..prec].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..prec - i].iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Self {
            weight: self.weight + other.weight,
            coeffs,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.prec()).expect("prec >= 1");
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact division of every coefficient by `d`.
    fn div_exact(&self, d: &BigInt) -> Result<Self> {
        let mut coeffs = Vec::with_capacity(self.prec());
        for (n, c) in self.coeffs.iter().enumerate() {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return Err(Error::consistency(format!(
                    "coefficient {n} ({c}) is not divisible by {d}"
                )));
            }
            coeffs.push(q);
        }
        Ok(Self {
            weight: self.weight,
            coeffs,
        })
    }
}

impl Serialize for QExpansion {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.prec()))?;
        for c in &self.coeffs {
            seq.serialize_element(&c.to_string())?;
        }
        seq.end()
    }
}

/// sigma_e(n) for n = 0..len (entry 0 is unused and left at zero).
fn divisor_power_sums(e: u32, len: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); len];
    for d in 1..len {
        let dp = BigInt::from(d).pow(e);
        let mut m = d;
        while m < len {
            out[m] += &dp;
            m += d;
        }
    }
    out
}

/// The normalized Eisenstein series E4 = 1 + 240 sum sigma_3(n) q^n or
/// E6 = 1 - 504 sum sigma_5(n) q^n.
pub fn eisenstein(k: u32, prec: usize) -> Result<QExpansion> {
    let factor: i64 = match k {
        4 => 240,
        6 => -504,
        _ => return Err(Error::invalid(format!("eisenstein weight must be 4 or 6, got {k}"))),
    };
    if prec == 0 {
        return Err(Error::invalid("precision must be positive"));
    }
    let factor = BigInt::from(factor);
    let mut coeffs = divisor_power_sums(k - 1, prec);
    coeffs[0] = BigInt::one();
    for c in coeffs.iter_mut().skip(1) {
        *c *= &factor;
    }
    QExpansion::new(k, coeffs)
}

/// The discriminant form (E4^3 - E6^2) / 1728.
pub fn delta(prec: usize) -> Result<QExpansion> {
    if prec < 2 {
        return Err(Error::Precision { needed: 2, got: prec });
    }
    let e4 = eisenstein(4, prec)?;
    let e6 = eisenstein(6, prec)?;
    e4.pow(3).sub(&e6.pow(2))?.div_exact(&BigInt::from(1728))
}

/// dim S_k(SL2(Z)) from the valence formula (k even, k >= 4).
pub fn valence_dim(k: u32) -> usize {
    if k < 4 || k % 2 != 0 {
        return 0;
    }
    let base = (k / 12) as usize;
    if k % 12 == 2 {
        base - 1
    } else {
        base
    }
}

/// Echelon basis of the level-one cusp forms of a fixed weight: form `i`
/// is `q^(i+1) + O(q^(d+1))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MillerBasis {
    weight: u32,
    forms: Vec<QExpansion>,
}

impl MillerBasis {
    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn dim(&self) -> usize {
        self.forms.len()
    }

    pub fn forms(&self) -> &[QExpansion] {
        &self.forms
    }

    /// Common precision of the forms (0 for an empty basis).
    pub fn prec(&self) -> usize {
        self.forms.first().map_or(0, QExpansion::prec)
    }

    /// Checks the echelon normalization exactly.
    pub fn is_echelon(&self) -> bool {
        let d = self.dim();
        self.forms.iter().enumerate().all(|(i, f)| {
            (0..d).all(|j| {
                let c = f.coeff(j + 1);
                if i == j {
                    c.is_some_and(|c| c.is_one())
                } else {
                    c.is_some_and(|c| c.is_zero())
                }
            }) && f.coeff(0).is_some_and(|c| c.is_zero())
        })
    }
}

/// Exponents (a, b) with 4a + 6b = w, preferring b in {0, 1}.
fn e4_e6_exponents(w: u32) -> Option<(u32, u32)> {
    if w == 2 || w % 2 != 0 {
        return None;
    }
    if w % 4 == 0 {
        Some((w / 4, 0))
    } else {
        Some(((w - 6) / 4, 1))
    }
}

/// Builds the Miller basis of S_k(1) to precision `prec`.
///
/// Monomials `Delta^j E4^a E6^b` of weight k are reduced by exact rational
/// Gauss-Jordan elimination; the result must come out integral.
pub fn miller_basis(k: u32, prec: usize) -> Result<MillerBasis> {
    if k % 2 != 0 {
        return Err(Error::OddWeight(k));
    }
    if k < 4 {
        return Err(Error::invalid(format!("weight must be at least 4, got {k}")));
    }
    let monomial_js: Vec<(u32, u32, u32)> = (1..=k / 12)
        .filter_map(|j| e4_e6_exponents(k - 12 * j).map(|(a, b)| (j, a, b)))
        .collect();
    let d = monomial_js.len();
    if d == 0 {
        return Ok(MillerBasis {
            weight: k,
            forms: Vec::new(),
        });
    }
    if prec < d + 1 {
        return Err(Error::Precision {
            needed: d + 1,
            got: prec,
        });
    }

    let dl = delta(prec)?;
    let e4 = eisenstein(4, prec)?;
    let e6 = eisenstein(6, prec)?;
    let mut rows: Vec<Vec<BigRational>> = monomial_js
        .iter()
        .map(|&(j, a, b)| {
            let m = dl.pow(j).mul(&e4.pow(a)).mul(&e6.pow(b));
            debug_assert_eq!(m.weight(), k);
            m.coeffs()
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect()
        })
        .collect();

    // Gauss-Jordan on the columns q^1 .. q^d.
    for col in 1..=d {
        let r = col - 1;
        let pivot = (r..d)
            .find(|&i| !rows[i][col].is_zero())
            .ok_or_else(|| Error::consistency(format!("no pivot in column {col}")))?;
        rows.swap(r, pivot);
        let inv = rows[r][col].recip();
        for c in rows[r].iter_mut() {
            *c *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (c, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *c -= &f * p;
                }
            }
        }
    }

    let forms = rows
        .into_iter()
        .map(|row| {
            let coeffs = row
                .into_iter()
                .map(|c| {
                    if c.is_integer() {
                        Ok(c.to_integer())
                    } else {
                        Err(Error::consistency(format!("non-integral Miller coefficient {c}")))
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            QExpansion::new(k, coeffs)
        })
        .collect::<Result<Vec<_>>>()?;
    let basis = MillerBasis { weight: k, forms };
    if !basis.is_echelon() {
        return Err(Error::consistency("Miller basis is not in echelon form"));
    }
    Ok(basis)
}
