//! The Eichler-Selberg trace formula for T_n on S_k(SL2(Z)):
//!
//! Tr T_n = -1/2 sum_{t^2 <= 4n} U_{k-2}(t, n) H(4n - t^2)
//!          - 1/2 sum_{dd' = n} min(d, d')^(k-1)
//!
//! with Hurwitz class numbers H and H(0) = -1/12. Used as an oracle that
//! shares no code with the q-expansion side.
//!
//! Class numbers are handled internally as `12 H`, which is an integer.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{ToPrimitive, Zero};

use crate::arith::{self, isqrt, require_prime};
use crate::error::{Error, Result};

/// Weight of a reduced form (a, b, c) in units of 1/12.
fn form_weight(a: u64, b: i64, c: u64) -> i64 {
    if a == c && b == 0 {
        6
    } else if a == c && b == a as i64 {
        4
    } else {
        12
    }
}

/// 12 H(n) by enumeration of reduced forms of discriminant -n.
fn hurwitz12(n: u64) -> i64 {
    if n == 0 {
        return -1;
    }
    if n % 4 == 1 || n % 4 == 2 {
        return 0;
    }
    let mut total = 0;
    let amax = isqrt(n / 3);
    for a in 1..=amax {
        let four_a = 4 * a;
        for b in (1 - a as i64)..=(a as i64) {
            let num = n + (b * b) as u64;
            if num % four_a != 0 {
                continue;
            }
            let c = num / four_a;
            if c < a || (c == a && b < 0) {
                continue;
            }
            total += form_weight(a, b, c);
        }
    }
    total
}

/// Hurwitz class number H(n): reduced positive definite forms of
/// discriminant -n, with forms equivalent to multiples of x^2 + y^2 or
/// x^2 + xy + y^2 counted with weight 1/2 and 1/3. H(0) = -1/12.
pub fn hurwitz(n: u64) -> Rational64 {
    Rational64::new(hurwitz12(n), 12)
}

/// H(n) for all 0 <= n <= limit, built by a single sweep over reduced
/// forms.
#[derive(Debug, Clone)]
pub struct HurwitzTable {
    limit: u64,
    twelve_h: Vec<i64>,
}

impl HurwitzTable {
    pub fn new(limit: u64) -> Self {
        let mut twelve_h = vec![0i64; limit as usize + 1];
        twelve_h[0] = -1;
        let mut a = 1u64;
        while 3 * a * a <= limit {
            for b in (1 - a as i64)..=(a as i64) {
                let bb = (b * b) as u64;
                let mut c = a;
                loop {
                    let n = 4 * a * c - bb;
                    if n > limit {
                        break;
                    }
                    if !(c == a && b < 0) {
                        twelve_h[n as usize] += form_weight(a, b, c);
                    }
                    c += 1;
                }
            }
            a += 1;
        }
        Self { limit, twelve_h }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn get(&self, n: u64) -> Option<Rational64> {
        self.twelve_h
            .get(n as usize)
            .map(|&h| Rational64::new(h, 12))
    }
}

/// The class numbers H(4n - t^2) for t = 0 ..= floor(2 sqrt n), which is
/// everything the trace of T_n needs.
///
/// Built by one sweep over pairs (a, b): a reduced form (a, b, c) has
/// discriminant -(4n - t^2) exactly when t^2 = 4n + b^2 - 4ac, so for fixed
/// (a, b) the admissible t lie in the residue classes mod 4a whose square
/// is 4n + b^2.
#[derive(Debug, Clone)]
pub struct ParabolaTable {
    n: u64,
    twelve_h: Vec<i64>,
}

impl ParabolaTable {
    pub fn new(n: u64) -> Self {
        let four_n = 4 * n;
        let tmax = isqrt(four_n);
        let mut acc = vec![0i64; tmax as usize + 1];
        let amax = isqrt(four_n / 3);
        let mut heads: Vec<u32> = Vec::new();
        let mut roots: Vec<u32> = Vec::new();
        for a in 1..=amax {
            let m = 4 * a;
            // Square roots modulo m, bucketed by square (CSR layout).
            heads.clear();
            heads.resize(m as usize + 1, 0);
            for r in 0..m {
                heads[((r * r) % m) as usize + 1] += 1;
            }
            for i in 1..heads.len() {
                heads[i] += heads[i - 1];
            }
            roots.clear();
            roots.resize(m as usize, 0);
            let mut fill = heads.clone();
            for r in 0..m {
                let s = ((r * r) % m) as usize;
                roots[fill[s] as usize] = r as u32;
                fill[s] += 1;
            }
            for b in (1 - a as i64)..=(a as i64) {
                let bb = (b * b) as u64;
                let top = four_n + bb;
                if top < 4 * a * a {
                    continue;
                }
                // c >= a  <=>  t^2 <= 4n + b^2 - 4a^2
                let tl = isqrt(top - 4 * a * a).min(tmax);
                let s = (top % m) as usize;
                for &r in &roots[heads[s] as usize..heads[s + 1] as usize] {
                    let mut t = r as u64;
                    while t <= tl {
                        if t * t < four_n {
                            let c = (top - t * t) / m;
                            if !(c == a && b < 0) {
                                acc[t as usize] += form_weight(a, b, c);
                            }
                        }
                        t += m;
                    }
                }
            }
        }
        if tmax * tmax == four_n {
            acc[tmax as usize] = -1;
        }
        Self { n, twelve_h: acc }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// H(4n - t^2) for 0 <= |t| <= 2 sqrt n.
    pub fn get(&self, t: i64) -> Option<Rational64> {
        self.twelve_h
            .get(t.unsigned_abs() as usize)
            .map(|&h| Rational64::new(h, 12))
    }

    fn twelve_h(&self) -> &[i64] {
        &self.twelve_h
    }
}

/// U_{k-2}(t, n): the coefficient of x^(k-2) in 1 / (1 - t x + n x^2).
pub fn gegenbauer(k: u32, t: i64, n: u64) -> Result<BigInt> {
    if k < 2 {
        return Err(Error::invalid(format!("weight must be at least 2, got {k}")));
    }
    if (t.unsigned_abs() as u128).pow(2) > 4 * n as u128 {
        return Err(Error::invalid(format!("t^2 must not exceed 4n (t = {t}, n = {n})")));
    }
    Ok(gegenbauer_unchecked(k - 2, &BigInt::from(t), &BigInt::from(n)))
}

fn gegenbauer_unchecked(j: u32, t: &BigInt, n: &BigInt) -> BigInt {
    let mut prev = BigInt::from(1);
    if j == 0 {
        return prev;
    }
    let mut cur = t.clone();
    for _ in 1..j {
        let next = t * &cur - n * &prev;
        prev = cur;
        cur = next;
    }
    cur
}

fn validate_weight(k: u32) -> Result<()> {
    if k % 2 != 0 {
        return Err(Error::OddWeight(k));
    }
    if k < 4 {
        return Err(Error::invalid(format!("weight must be at least 4, got {k}")));
    }
    Ok(())
}

fn trace_with_table(k: u32, table: &ParabolaTable) -> BigRational {
    let n = table.n();
    let nb = BigInt::from(n);
    let mut class_sum = BigInt::zero();
    for (t, &h12) in table.twelve_h().iter().enumerate() {
        if h12 == 0 {
            continue;
        }
        let u = gegenbauer_unchecked(k - 2, &BigInt::from(t), &nb);
        // U is even in t when k is even, so +-t contribute equally.
        let mult = if t == 0 { 1 } else { 2 };
        class_sum += u * (h12 * mult);
    }
    let divisor_sum: BigInt = arith::divisors(n)
        .into_iter()
        .map(|d| BigInt::from(d.min(n / d)).pow(k - 1))
        .sum();
    // -1/2 * class_sum / 12 - 1/2 * divisor_sum
    -BigRational::new(class_sum, BigInt::from(24)) - BigRational::new(divisor_sum, BigInt::from(2))
}

/// Exact trace of T_n on S_k(1).
pub fn trace(k: u32, n: u64) -> Result<BigRational> {
    validate_weight(k)?;
    if n == 0 {
        return Err(Error::invalid("Hecke index must be positive"));
    }
    Ok(trace_with_table(k, &ParabolaTable::new(n)))
}

/// Trace formula evaluator that keeps class number tables for reuse across
/// weights. Tables are built once per index and shared read-only.
#[derive(Debug, Default)]
pub struct TraceFormula {
    tables: Mutex<HashMap<u64, Arc<ParabolaTable>>>,
}

impl TraceFormula {
    pub fn new() -> Self {
        Self::default()
    }

    fn table(&self, n: u64) -> Arc<ParabolaTable> {
        if let Some(t) = self.tables.lock().expect("table cache poisoned").get(&n) {
            return Arc::clone(t);
        }
        let built = Arc::new(ParabolaTable::new(n));
        self.tables
            .lock()
            .expect("table cache poisoned")
            .entry(n)
            .or_insert(built)
            .clone()
    }

    pub fn trace(&self, k: u32, n: u64) -> Result<BigRational> {
        validate_weight(k)?;
        if n == 0 {
            return Err(Error::invalid("Hecke index must be positive"));
        }
        Ok(trace_with_table(k, &self.table(n)))
    }

    /// Trace as an integer; a fractional value is an internal error.
    pub fn trace_int(&self, k: u32, n: u64) -> Result<BigInt> {
        let t = self.trace(k, n)?;
        if !t.is_integer() {
            return Err(Error::consistency(format!("trace of T_{n} in weight {k} is {t}")));
        }
        Ok(t.to_integer())
    }

    /// sum_f 2 cos(m theta_p(f)) from traces:
    /// (Tr T_{p^m} - p^(k-1) Tr T_{p^(m-2)}) / p^(m(k-1)/2), with m = 0
    /// giving the dimension and m = 1 giving Tr T_p / p^((k-1)/2).
    pub fn moment_sum(&self, k: u32, p: u64, m: u32) -> Result<f64> {
        require_prime(p)?;
        let numerator = match m {
            0 => return self.trace_int(k, 1)?.to_f64().ok_or_else(|| Error::consistency("dim")),
            1 => self.trace_int(k, p)?,
            _ => {
                self.trace_int(k, p.pow(m))?
                    - BigInt::from(p).pow(k - 1) * self.trace_int(k, p.pow(m - 2))?
            }
        };
        Ok(divide_by_half_power(&numerator, p, m * (k - 1)))
    }
}

/// x / p^(e/2) in floating point, exact up to the final rounding steps.
pub(crate) fn divide_by_half_power(x: &BigInt, p: u64, e: u32) -> f64 {
    let den = BigInt::from(p).pow(e / 2);
    let q = BigRational::new(x.clone(), den)
        .to_f64()
        .expect("finite ratio");
    if e % 2 == 1 {
        q / (p as f64).sqrt()
    } else {
        q
    }
}

/// One-shot form of [`TraceFormula::moment_sum`].
pub fn moment_sum(k: u32, p: u64, m: u32) -> Result<f64> {
    TraceFormula::new().moment_sum(k, p, m)
}
