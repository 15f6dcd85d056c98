//! Hecke operators on the Miller basis, exact characteristic polynomials,
//! squarefreeness and pair counts, and mod-q evidence for irreducibility
//! and for a full symmetric Galois group.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::arith::{self, require_prime};
use crate::error::{Error, Result};
use crate::ffpoly::{self, FpPoly};
use crate::poly::{self, Poly};
use crate::qexpansion::{miller_basis, valence_dim, MillerBasis};

/// Default number of good primes tried by the mod-q tests.
pub const DEFAULT_PRIME_BUDGET: usize = 25;

/// Square matrix of exact integers, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    n: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::invalid("matrix is not square"));
        }
        Ok(Self {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![BigInt::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = BigInt::one();
        }
        Self { n, data }
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![BigInt::zero(); n * n],
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.n + j]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[BigInt]> {
        self.data.chunks(self.n.max(1)).take(self.n)
    }

    pub fn trace(&self) -> BigInt {
        (0..self.n).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.n;
        let mut data = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for l in 0..n {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    data[i * n + j] += a * other.get(l, j);
                }
            }
        }
        Self { n, data }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Characteristic polynomial det(X I - A), coefficients low to high,
    /// by Berkowitz's division-free algorithm.
    pub fn charpoly(&self) -> Vec<BigInt> {
        let n = self.n;
        // Coefficients high to low of the charpoly of the leading r x r block.
        let mut v: Vec<BigInt> = vec![BigInt::one()];
        for r in 0..n {
            // Column of the Toeplitz matrix: 1, -a_rr, -R S, -R A S, ...
            let mut col = Vec::with_capacity(r + 2);
            col.push(BigInt::one());
            col.push(-self.get(r, r).clone());
            let mut s: Vec<BigInt> = (0..r).map(|i| self.get(i, r).clone()).collect();
            for _ in 0..r {
                let rs: BigInt = (0..r).map(|j| self.get(r, j) * &s[j]).sum();
                col.push(-rs);
                s = (0..r)
                    .map(|i| (0..r).map(|j| self.get(i, j) * &s[j]).sum())
                    .collect();
            }
            let mut next = vec![BigInt::zero(); r + 2];
            for (i, out) in next.iter_mut().enumerate() {
                for (j, vj) in v.iter().enumerate().take(i + 1) {
                    *out += &col[i - j] * vj;
                }
            }
            v = next;
        }
        v.reverse();
        v
    }

    /// Evaluates a polynomial (low to high) at this matrix.
    pub fn eval_poly(&self, coeffs: &[BigInt]) -> Self {
        coeffs.iter().rev().fold(Self::zeros(self.n), |acc, c| {
            let mut m = acc.mul(self);
            for i in 0..self.n {
                m.data[i * self.n + i] += c;
            }
            m
        })
    }
}

/// Matrix of T_n on the echelon basis: row i holds the coordinates of
/// `T_n f_i`, which are its coefficients at q^1 .. q^d.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeckeMatrix {
    weight: u32,
    index: u64,
    matrix: IntMatrix,
}

impl HeckeMatrix {
    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn dim(&self) -> usize {
        self.matrix.size()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn trace(&self) -> BigInt {
        self.matrix.trace()
    }
}

/// Applies T_n to the q-expansion coefficients `a`, producing coefficients
/// m = 0..len of `T_n f`.
fn hecke_action(a: &[BigInt], k: u32, n: u64, len: usize) -> Vec<BigInt> {
    let divs = arith::divisors(n);
    let powers: Vec<BigInt> = divs.iter().map(|&e| BigInt::from(e).pow(k - 1)).collect();
    (0..len as u64)
        .map(|m| {
            if m == 0 {
                return BigInt::zero();
            }
            divs.iter()
                .zip(&powers)
                .filter(|(&e, _)| m % e == 0)
                .map(|(&e, pw)| pw * &a[(m * n / (e * e)) as usize])
                .sum()
        })
        .collect()
}

/// T_n on a given basis. Every coefficient of `T_n f_i` that the basis
/// precision determines is checked against the matrix reconstruction.
pub fn hecke_matrix_on(basis: &MillerBasis, n: u64) -> Result<HeckeMatrix> {
    if n == 0 {
        return Err(Error::invalid("Hecke index must be positive"));
    }
    let d = basis.dim();
    let k = basis.weight();
    if d == 0 {
        return Ok(HeckeMatrix {
            weight: k,
            index: n,
            matrix: IntMatrix::zeros(0),
        });
    }
    let prec = basis.prec();
    let needed = d * n as usize + 1;
    if prec < needed {
        return Err(Error::Precision { needed, got: prec });
    }
    let known = (prec - 1) / n as usize + 1;
    let images: Vec<Vec<BigInt>> = basis
        .forms()
        .iter()
        .map(|f| hecke_action(f.coeffs(), k, n, known))
        .collect();
    let rows: Vec<Vec<BigInt>> = images.iter().map(|t| t[1..=d].to_vec()).collect();
    for (i, t) in images.iter().enumerate() {
        for (m, tm) in t.iter().enumerate() {
            let recon: BigInt = basis
                .forms()
                .iter()
                .zip(&rows[i])
                .map(|(f, c)| c * &f.coeffs()[m])
                .sum();
            if &recon != tm {
                return Err(Error::consistency(format!(
                    "T_{n} f_{i} is not in the span of the basis at q^{m} (weight {k})"
                )));
            }
        }
    }
    Ok(HeckeMatrix {
        weight: k,
        index: n,
        matrix: IntMatrix::from_rows(rows)?,
    })
}

/// Matrix of T_n on S_k(1).
pub fn hecke_matrix(k: u32, n: u64) -> Result<HeckeMatrix> {
    if n == 0 {
        return Err(Error::invalid("Hecke index must be positive"));
    }
    let d = valence_dim(k);
    // Two extra coefficients of every image get cross-checked.
    let basis = miller_basis(k, (d + 2) * n as usize + 1)?;
    hecke_matrix_on(&basis, n)
}

/// T_{p^m} from T_p by T_{p^m} = T_{p^{m-1}} T_p - p^{k-1} T_{p^{m-2}}.
pub fn hecke_power_matrix(k: u32, p: u64, m: u32) -> Result<HeckeMatrix> {
    require_prime(p)?;
    let tp = hecke_matrix(k, p)?;
    hecke_power_from(&tp, m)
}

/// Same recursion starting from an already computed T_p.
pub fn hecke_power_from(tp: &HeckeMatrix, m: u32) -> Result<HeckeMatrix> {
    let p = tp.index;
    require_prime(p)?;
    let k = tp.weight;
    let d = tp.dim();
    let pk = BigInt::from(p).pow(k - 1);
    let mut prev = IntMatrix::identity(d);
    if m == 0 {
        return Ok(HeckeMatrix {
            weight: k,
            index: 1,
            matrix: prev,
        });
    }
    let mut cur = tp.matrix.clone();
    for _ in 1..m {
        let next = cur.mul(&tp.matrix).sub(&prev.scale(&pk));
        prev = cur;
        cur = next;
    }
    Ok(HeckeMatrix {
        weight: k,
        index: p.pow(m),
        matrix: cur,
    })
}

/// Monic integer characteristic polynomial of a Hecke operator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharPoly {
    weight: u32,
    index: u64,
    coeffs: Vec<BigInt>,
}

impl CharPoly {
    /// Wraps explicit coefficients (low to high); must be monic.
    pub fn from_coeffs(weight: u32, index: u64, coeffs: Vec<BigInt>) -> Result<Self> {
        if !coeffs.last().is_some_and(One::is_one) {
            return Err(Error::invalid("characteristic polynomial must be monic"));
        }
        Ok(Self {
            weight,
            index,
            coeffs,
        })
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self> {
        Self::from_coeffs(0, 0, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    /// The operator index (the prime p for T_p).
    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn to_poly(&self) -> Poly {
        Poly::from_ints(&self.coeffs)
    }

    /// Discriminant (1 for degree 0 and 1).
    pub fn discriminant(&self) -> BigInt {
        if self.degree() == 0 {
            BigInt::one()
        } else {
            poly::discriminant(&self.coeffs)
        }
    }
}

impl Serialize for CharPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("CharPoly", 4)?;
        st.serialize_field("degree", &self.degree())?;
        let coeffs: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        st.serialize_field("coeffs", &coeffs)?;
        st.serialize_field("k", &self.weight)?;
        st.serialize_field("p", &self.index)?;
        st.end()
    }
}

pub fn charpoly(m: &HeckeMatrix) -> CharPoly {
    CharPoly {
        weight: m.weight,
        index: m.index,
        coeffs: m.matrix.charpoly(),
    }
}

/// Exact Cayley-Hamilton check.
pub fn cayley_hamilton_holds(m: &HeckeMatrix, p: &CharPoly) -> bool {
    m.matrix.eval_poly(&p.coeffs).is_zero()
}

/// Root multiplicity structure of a characteristic polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairCount {
    /// Ordered pairs (f, g) with equal eigenvalue, diagonal included.
    pub pair_count: u64,
    pub squarefree: bool,
    /// (number of distinct roots, multiplicity) from the squarefree
    /// decomposition.
    pub multiplicities: Vec<(usize, usize)>,
}

pub fn squarefree_pair_count(p: &CharPoly) -> PairCount {
    let dec = poly::squarefree_decomposition(&p.to_poly());
    let multiplicities: Vec<(usize, usize)> = dec
        .iter()
        .map(|(a, i)| (a.degree().unwrap_or(0), *i))
        .collect();
    let pair_count = multiplicities
        .iter()
        .map(|&(n, m)| (n * m * m) as u64)
        .sum();
    let squarefree = multiplicities.iter().all(|&(_, m)| m == 1);
    PairCount {
        pair_count,
        squarefree,
        multiplicities,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Irreducibility {
    Yes,
    No,
    Inconclusive,
}

/// Primes q that do not divide the discriminant, i.e. where P mod q stays
/// squarefree (P is monic, so the degree is preserved).
fn good_primes(p: &CharPoly) -> impl Iterator<Item = (u64, FpPoly)> + '_ {
    arith::primes().filter_map(move |q| {
        let f = FpPoly::from_ints(q, &p.coeffs);
        ffpoly::is_squarefree(&f).then_some((q, f))
    })
}

/// Degrees of possible rational factors compatible with a factorization
/// pattern (all subset sums).
fn subset_sums(pattern: &[usize]) -> BTreeSet<usize> {
    let mut sums = BTreeSet::from([0usize]);
    for &d in pattern {
        let shifted: Vec<usize> = sums.iter().map(|s| s + d).collect();
        sums.extend(shifted);
    }
    sums
}

/// Searches for an integer root via Hensel lifting of the roots modulo the
/// first good prime. Every integer root of a monic P reduces to one.
fn has_integer_root(p: &CharPoly) -> bool {
    let Some((q, f)) = good_primes(p).next() else {
        return false;
    };
    let bound = poly::cauchy_bound(&p.to_poly()).ceil().to_integer() * 2;
    let pp = p.to_poly();
    ffpoly::roots(&f).into_iter().any(|r| {
        ffpoly::hensel_lift_root(&p.coeffs, q, r, &bound)
            .is_some_and(|(root, _)| pp.eval(&BigRational::from_integer(root)).is_zero())
    })
}

/// Irreducibility over Q from mod-q factorization patterns.
///
/// `Yes` when some reduction is irreducible or the factor degrees allowed
/// by the patterns leave only the trivial splitting; `No` for a repeated
/// factor or an integer root; otherwise `Inconclusive`.
pub fn irreducibility(p: &CharPoly, prime_budget: usize) -> Irreducibility {
    let d = p.degree();
    if d == 0 {
        return Irreducibility::Inconclusive;
    }
    if d == 1 {
        return Irreducibility::Yes;
    }
    if !squarefree_pair_count(p).squarefree {
        return Irreducibility::No;
    }
    if has_integer_root(p) {
        return Irreducibility::No;
    }
    if d <= 3 {
        // A reducible cubic or quadratic has a linear factor.
        return Irreducibility::Yes;
    }
    let mut allowed: BTreeSet<usize> = (1..d).collect();
    for (_, f) in good_primes(p).take(prime_budget) {
        let pattern = ffpoly::factor_degrees(&f);
        if pattern.len() == 1 {
            return Irreducibility::Yes;
        }
        let sums = subset_sums(&pattern);
        allowed.retain(|s| sums.contains(s));
        if allowed.is_empty() {
            return Irreducibility::Yes;
        }
    }
    Irreducibility::Inconclusive
}

/// Primes whose Frobenius cycle types certify the full symmetric group.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct GaloisWitnesses {
    /// P is irreducible modulo this prime (a d-cycle).
    pub irreducible: u64,
    /// Cycle type with a prime cycle of length in (d/2, d-2), or, for small
    /// degree, a (d-1)-cycle.
    pub cycle: u64,
    /// Odd permutation (or, for small degree, one yielding a transposition).
    pub odd: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case", tag = "verdict", content = "witnesses")]
pub enum GaloisVerdict {
    CertifiedFullSymmetric(Option<GaloisWitnesses>),
    Inconclusive,
}

fn is_odd_permutation(pattern: &[usize]) -> bool {
    pattern.iter().map(|&c| c - 1).sum::<usize>() % 2 == 1
}

/// Some power of this element is a transposition.
fn yields_transposition(pattern: &[usize]) -> bool {
    pattern.iter().filter(|&&c| c == 2).count() == 1
        && pattern.iter().all(|&c| c == 2 || c % 2 == 1)
}

fn has_jordan_cycle(pattern: &[usize], d: usize) -> bool {
    pattern
        .iter()
        .any(|&l| 2 * l > d && l + 2 < d && arith::is_prime(l as u64))
}

/// Mod-q evidence that the Galois group of an irreducible P is S_d.
///
/// Route one: a d-cycle (transitivity), a prime cycle of length in
/// (d/2, d-2) (primitivity plus Jordan's theorem give A_d or S_d), and an
/// odd permutation. Route two, for degrees where no such prime exists: a
/// d-cycle, a (d-1)-cycle (double transitivity) and a transposition.
pub fn full_symmetric_heuristic(p: &CharPoly, prime_budget: usize) -> GaloisVerdict {
    let d = p.degree();
    if d == 0 {
        return GaloisVerdict::Inconclusive;
    }
    if d == 1 {
        return GaloisVerdict::CertifiedFullSymmetric(None);
    }
    if irreducibility(p, prime_budget) != Irreducibility::Yes {
        return GaloisVerdict::Inconclusive;
    }
    let mut irreducible = None;
    let mut jordan = None;
    let mut odd = None;
    let mut near_full = None;
    let mut transposition = None;
    for (q, f) in good_primes(p).take(prime_budget) {
        let pat = ffpoly::factor_degrees(&f);
        if pat.len() == 1 {
            irreducible.get_or_insert(q);
        }
        if has_jordan_cycle(&pat, d) {
            jordan.get_or_insert(q);
        }
        if is_odd_permutation(&pat) {
            odd.get_or_insert(q);
        }
        if pat == [1, d - 1] {
            near_full.get_or_insert(q);
        }
        if yields_transposition(&pat) {
            transposition.get_or_insert(q);
        }
        let Some(irr) = irreducible else { continue };
        if d == 2 {
            return certified(irr, irr, irr);
        }
        if let (Some(c), Some(o)) = (jordan, odd) {
            return certified(irr, c, o);
        }
        if let (Some(c), Some(t)) = (near_full, transposition) {
            return certified(irr, c, t);
        }
    }
    GaloisVerdict::Inconclusive
}

fn certified(irreducible: u64, cycle: u64, odd: u64) -> GaloisVerdict {
    GaloisVerdict::CertifiedFullSymmetric(Some(GaloisWitnesses {
        irreducible,
        cycle,
        odd,
    }))
}

/// Everything the Maeda check reports for one (k, p).
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct PairCountReport {
    pub k: u32,
    pub p: u64,
    pub dim: usize,
    pub pair_count: u64,
    pub squarefree: bool,
    pub irreducible: Irreducibility,
    pub sn_galois: GaloisVerdict,
}

/// Runs the full pipeline for T_p on S_k(1), checking Cayley-Hamilton and
/// the trace coefficient along the way.
pub fn pair_count_report(k: u32, p: u64, prime_budget: usize) -> Result<PairCountReport> {
    require_prime(p)?;
    let m = hecke_matrix(k, p)?;
    let cp = charpoly(&m);
    check_charpoly(&m, &cp)?;
    let pc = squarefree_pair_count(&cp);
    Ok(PairCountReport {
        k,
        p,
        dim: m.dim(),
        pair_count: pc.pair_count,
        squarefree: pc.squarefree,
        irreducible: irreducibility(&cp, prime_budget),
        sn_galois: full_symmetric_heuristic(&cp, prime_budget),
    })
}

/// Verifies the exact identities linking a matrix and its charpoly.
pub fn check_charpoly(m: &HeckeMatrix, cp: &CharPoly) -> Result<()> {
    if cp.degree() != m.dim() {
        return Err(Error::consistency("charpoly degree differs from dimension"));
    }
    if cp.degree() > 0 && cp.coeffs[cp.degree() - 1] != -m.trace() {
        return Err(Error::consistency("charpoly trace coefficient mismatch"));
    }
    if !cayley_hamilton_holds(m, cp) {
        return Err(Error::consistency(format!(
            "Cayley-Hamilton fails for T_{} in weight {}",
            m.index, m.weight
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn hecke_matrix_examples() {
        let m = hecke_matrix(12, 2).unwrap();
        assert_eq!(m.matrix(), &IntMatrix::from_i64(&[&[-24]]).unwrap());
        let m = hecke_matrix(12, 1).unwrap();
        assert_eq!(m.matrix(), &IntMatrix::identity(1));
        let m = hecke_matrix(24, 2).unwrap();
        assert_eq!(m.dim(), 2);
        assert_eq!(m.trace(), big(1080));
        assert!(hecke_matrix(12, 0).is_err());
    }

    #[test]
    fn hecke_power_examples() {
        assert_eq!(hecke_power_matrix(12, 2, 0).unwrap().matrix(), &IntMatrix::identity(1));
        assert_eq!(hecke_power_matrix(12, 2, 1).unwrap().matrix().get(0, 0), &big(-24));
        assert_eq!(hecke_power_matrix(12, 2, 2).unwrap().matrix().get(0, 0), &big(-1472));
        assert_eq!(hecke_power_matrix(12, 4, 2), Err(Error::NotPrime(4)));
    }

    #[test]
    fn power_recursion_matches_direct_action() {
        for (k, p, m) in [(24u32, 2u64, 3u32), (36, 3, 2), (28, 2, 4)] {
            let rec = hecke_power_matrix(k, p, m).unwrap();
            let direct = hecke_matrix(k, p.pow(m)).unwrap();
            assert_eq!(rec.matrix(), direct.matrix(), "k={k} p={p} m={m}");
        }
    }

    #[test]
    fn charpoly_examples() {
        let m = IntMatrix::from_i64(&[&[-24]]).unwrap();
        assert_eq!(m.charpoly(), vec![big(24), big(1)]);
        assert_eq!(IntMatrix::identity(2).charpoly(), vec![big(1), big(-2), big(1)]);
        let cp = charpoly(&hecke_matrix(24, 2).unwrap());
        assert_eq!(cp.coeffs(), &[big(-20468736), big(-1080), big(1)]);
    }

    #[test]
    fn berkowitz_matches_bareiss_oracle() {
        // det(xI - A) at integer points x via Bareiss, compared with the
        // Berkowitz polynomial evaluated there.
        let a = IntMatrix::from_i64(&[&[2, -1, 3, 0], &[4, 0, 1, -2], &[1, 1, 1, 1], &[-3, 5, 0, 2]]).unwrap();
        let cp = a.charpoly();
        for x in -3i64..=3 {
            let rows: Vec<Vec<BigInt>> = (0..4)
                .map(|i| {
                    (0..4)
                        .map(|j| if i == j { big(x) - a.get(i, j) } else { -a.get(i, j).clone() })
                        .collect()
                })
                .collect();
            let det = poly::bareiss_determinant(rows);
            let val = cp.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c);
            assert_eq!(det, val, "x = {x}");
        }
    }

    #[test]
    fn cayley_hamilton_on_hecke() {
        for k in [24u32, 36, 48, 60] {
            for p in [2u64, 3, 5] {
                let m = hecke_matrix(k, p).unwrap();
                let cp = charpoly(&m);
                check_charpoly(&m, &cp).unwrap();
            }
        }
    }

    #[test]
    fn pair_count_examples() {
        let pc = squarefree_pair_count(&CharPoly::from_i64(&[24, 1]).unwrap());
        assert_eq!((pc.pair_count, pc.squarefree), (1, true));
        let pc = squarefree_pair_count(&CharPoly::from_i64(&[1, -2, 1]).unwrap());
        assert_eq!((pc.pair_count, pc.squarefree), (4, false));
        let pc = squarefree_pair_count(&CharPoly::from_i64(&[-20468736, -1080, 1]).unwrap());
        assert_eq!((pc.pair_count, pc.squarefree), (2, true));
        // (x-1)^2 (x-2): 4 + 1
        let pc = squarefree_pair_count(&CharPoly::from_i64(&[-2, 5, -4, 1]).unwrap());
        assert_eq!(pc.pair_count, 5);
    }

    #[test]
    fn irreducibility_examples() {
        let b = DEFAULT_PRIME_BUDGET;
        assert_eq!(irreducibility(&CharPoly::from_i64(&[24, 1]).unwrap(), b), Irreducibility::Yes);
        assert_eq!(irreducibility(&CharPoly::from_i64(&[-1, 0, 1]).unwrap(), b), Irreducibility::No);
        assert_eq!(
            irreducibility(&CharPoly::from_i64(&[-20468736, -1080, 1]).unwrap(), b),
            Irreducibility::Yes
        );
        assert_eq!(irreducibility(&CharPoly::from_i64(&[1, -2, 1]).unwrap(), b), Irreducibility::No);
        // (x^2 + 1)(x^2 + 2): no rational root, reducible; patterns never
        // exclude degree 2.
        assert_eq!(
            irreducibility(&CharPoly::from_i64(&[2, 0, 3, 0, 1]).unwrap(), b),
            Irreducibility::Inconclusive
        );
        // x^4 - 2 is irreducible (Eisenstein at 2).
        assert_eq!(irreducibility(&CharPoly::from_i64(&[-2, 0, 0, 0, 1]).unwrap(), b), Irreducibility::Yes);
    }

    #[test]
    fn galois_examples() {
        let b = DEFAULT_PRIME_BUDGET;
        assert_eq!(
            full_symmetric_heuristic(&CharPoly::from_i64(&[24, 1]).unwrap(), b),
            GaloisVerdict::CertifiedFullSymmetric(None)
        );
        assert!(matches!(
            full_symmetric_heuristic(&CharPoly::from_i64(&[-20468736, -1080, 1]).unwrap(), b),
            GaloisVerdict::CertifiedFullSymmetric(Some(_))
        ));
        assert_eq!(
            full_symmetric_heuristic(&CharPoly::from_i64(&[-1, 0, 1]).unwrap(), b),
            GaloisVerdict::Inconclusive
        );
        // x^3 - 2 has group S3.
        assert!(matches!(
            full_symmetric_heuristic(&CharPoly::from_i64(&[-2, 0, 0, 1]).unwrap(), b),
            GaloisVerdict::CertifiedFullSymmetric(Some(_))
        ));
        // x^3 - 3x + 1 is cyclic (A3): never certified.
        assert_eq!(
            full_symmetric_heuristic(&CharPoly::from_i64(&[1, -3, 0, 1]).unwrap(), b),
            GaloisVerdict::Inconclusive
        );
        // x^4 + 1 has group V4.
        assert_eq!(
            full_symmetric_heuristic(&CharPoly::from_i64(&[1, 0, 0, 0, 1]).unwrap(), b),
            GaloisVerdict::Inconclusive
        );
    }

    #[test]
    fn serialization_shape() {
        let cp = charpoly(&hecke_matrix(24, 2).unwrap());
        let v = serde_json::to_string(&cp).unwrap();
        assert_eq!(v, r#"{"degree":2,"coeffs":["-20468736","-1080","1"],"k":24,"p":2}"#);
    }
}
