//! The integer sequences `A_n`, `a_n`, `b_n` and `D_n = sum_k C(n,k)^4`.
//!
//! Exact values use arbitrary precision and serve as the oracle for the
//! modular layers. The modular layers never allocate big integers.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::modarith::PrimeCtx;
use crate::padic::{FactTable, PadicScaled};

/// Largest index accepted by [`seq_exact`].
pub const MAX_EXACT_INDEX: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SeqId {
    /// `A_n = sum_k C(2k,k) C(2n-2k,n-k) C(n,k)^2`
    BigA,
    /// `a_n = sum_k C(n,k)^2 C(2k,k)`
    SmallA,
    /// `b_n = sum_k C(2k,k)^2 C(4k,2k) C(n+3k,4k) (-27)^(n-k)`
    SmallB,
    /// `D_n = sum_k C(n,k)^4`
    FourthPowers,
}

impl SeqId {
    pub const ALL: [SeqId; 4] = [SeqId::BigA, SeqId::SmallA, SeqId::SmallB, SeqId::FourthPowers];

    pub fn tag(self) -> &'static str {
        match self {
            SeqId::BigA => "A",
            SeqId::SmallA => "a",
            SeqId::SmallB => "b",
            SeqId::FourthPowers => "D",
        }
    }
}

impl fmt::Display for SeqId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for SeqId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        SeqId::ALL
            .into_iter()
            .find(|id| id.tag() == s)
            .ok_or_else(|| format!("unknown sequence {s:?} (expected one of A, a, b, D)"))
    }
}

/// Exact binomial by the multiplicative formula. Zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) as u64 / (i + 1) as u64;
    }
    BigInt::from(acc)
}

/// Factorials up to a fixed bound, for exact binomials with large arguments.
#[derive(Debug, Clone)]
pub struct BigBinomials {
    facts: Vec<BigUint>,
}

impl BigBinomials {
    pub fn new(bound: usize) -> Self {
        let mut facts = Vec::with_capacity(bound + 1);
        facts.push(BigUint::one());
        for n in 1..=bound {
            let next = &facts[n - 1] * n as u64;
            facts.push(next);
        }
        Self { facts }
    }

    pub fn binom(&self, n: u64, k: u64) -> BigUint {
        if k > n {
            return BigUint::zero();
        }
        let (n, k) = (n as usize, k as usize);
        &self.facts[n] / (&self.facts[k] * &self.facts[n - k])
    }
}

fn central_binomials(len: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(len);
    let mut c = BigUint::one();
    for j in 0..len as u64 {
        out.push(BigInt::from(c.clone()));
        // C(2j+2, j+1) = C(2j, j) * 2(2j+1) / (j+1)
        c = c * (2 * (2 * j + 1)) / (j + 1);
    }
    out
}

fn binomial_row(n: u64) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(n as usize + 1);
    let mut c = BigUint::one();
    for k in 0..=n {
        row.push(BigInt::from(c.clone()));
        if k < n {
            c = c * (n - k) / (k + 1);
        }
    }
    row
}

fn big_a_from(n: u64, central: &[BigInt]) -> BigInt {
    let row = binomial_row(n);
    (0..=n as usize)
        .map(|k| &central[k] * &central[n as usize - k] * &row[k] * &row[k])
        .sum()
}

fn small_a_from(n: u64, central: &[BigInt]) -> BigInt {
    let row = binomial_row(n);
    (0..=n as usize).map(|k| &row[k] * &row[k] * &central[k]).sum()
}

fn fourth_powers(n: u64) -> BigInt {
    binomial_row(n).iter().map(|c| c.pow(4)).sum()
}

fn pow_signed(base: i64, exp: u64) -> BigInt {
    BigInt::from(base).pow(exp as u32)
}

/// `b_n` by its defining sum `sum_k C(2k,k)^2 C(4k,2k) C(n+3k,4k) (-27)^(n-k)`.
fn small_b_defining(n: u64, bin: &BigBinomials) -> BigInt {
    (0..=n)
        .map(|k| {
            let c = bin.binom(2 * k, k);
            let t = &c * &c * bin.binom(4 * k, 2 * k) * bin.binom(n + 3 * k, 4 * k);
            BigInt::from(t) * pow_signed(-27, n - k)
        })
        .sum()
}

/// `b_n` by `sum_k C(2k,k) C(3k,k) C(n,3k) C(n+k,k) (-3)^(n-3k)`.
fn small_b_alternate(n: u64, bin: &BigBinomials) -> BigInt {
    (0..=n / 3)
        .map(|k| {
            let t = bin.binom(2 * k, k) * bin.binom(3 * k, k) * bin.binom(n, 3 * k) * bin.binom(n + k, k);
            BigInt::from(t) * pow_signed(-3, n - 3 * k)
        })
        .sum()
}

/// Both closed forms of `b_n`.
pub fn b_closed_forms(n: u64) -> (BigInt, BigInt) {
    let bin = BigBinomials::new(4 * n as usize + 1);
    (small_b_defining(n, &bin), small_b_alternate(n, &bin))
}

/// Exact value of a sequence term.
pub fn seq_exact(id: SeqId, n: u64) -> Result<BigInt> {
    if n > MAX_EXACT_INDEX {
        return Err(Error::IndexTooLarge {
            n,
            max: MAX_EXACT_INDEX,
        });
    }
    Ok(match id {
        SeqId::BigA => big_a_from(n, &central_binomials(n as usize + 1)),
        SeqId::SmallA => small_a_from(n, &central_binomials(n as usize + 1)),
        SeqId::FourthPowers => fourth_powers(n),
        SeqId::SmallB => {
            let (first, second) = b_closed_forms(n);
            debug_assert_eq!(first, second, "closed forms of b_{n} disagree");
            first
        }
    })
}

/// Exact values for indices `0..len`, computed in parallel.
pub fn seq_exact_prefix(id: SeqId, len: usize) -> Result<Vec<BigInt>> {
    if len as u64 > MAX_EXACT_INDEX + 1 {
        return Err(Error::IndexTooLarge {
            n: len as u64 - 1,
            max: MAX_EXACT_INDEX,
        });
    }
    Ok(match id {
        SeqId::BigA | SeqId::SmallA => {
            let central = central_binomials(len);
            (0..len as u64)
                .into_par_iter()
                .map(|n| match id {
                    SeqId::BigA => big_a_from(n, &central),
                    _ => small_a_from(n, &central),
                })
                .collect()
        }
        SeqId::FourthPowers => (0..len as u64).into_par_iter().map(fourth_powers).collect(),
        SeqId::SmallB => {
            let bin = BigBinomials::new(4 * len);
            (0..len as u64)
                .into_par_iter()
                .map(|n| small_b_defining(n, &bin))
                .collect()
        }
    })
}

/// Polynomial coefficients `(c2, c1, c0)` of the three-term recurrence
/// `c2(n) s(n+2) + c1(n) s(n+1) + c0(n) s(n) = 0`.
fn recurrence_coeffs(id: SeqId, n: i64) -> (i64, i64, i64) {
    match id {
        SeqId::BigA => (
            (n + 2).pow(3),
            -2 * (2 * n + 3) * (5 * n * n + 15 * n + 12),
            64 * (n + 1).pow(3),
        ),
        SeqId::SmallA => (
            (n + 2).pow(2),
            -(10 * n * n + 30 * n + 23),
            9 * (n + 1).pow(2),
        ),
        SeqId::SmallB => (
            (n + 2).pow(3),
            (2 * n + 3) * (7 * n * n + 21 * n + 17),
            81 * (n + 1).pow(3),
        ),
        SeqId::FourthPowers => (
            (n + 2).pow(3),
            -2 * (2 * n + 3) * (3 * n * n + 9 * n + 7),
            -4 * (n + 1) * (4 * n + 3) * (4 * n + 5),
        ),
    }
}

fn initial_terms(id: SeqId) -> (i64, i64) {
    match id {
        SeqId::BigA => (1, 4),
        SeqId::SmallA => (1, 3),
        SeqId::SmallB => (1, -3),
        SeqId::FourthPowers => (1, 2),
    }
}

fn recurrence_holds(id: SeqId, n: u64, s0: &BigInt, s1: &BigInt, s2: &BigInt) -> bool {
    let (c2, c1, c0) = recurrence_coeffs(id, n as i64);
    (s2 * c2 + s1 * c1 + s0 * c0).is_zero()
}

/// Whether the three-term recurrence of `id` holds exactly at index `n`.
pub fn recurrence_check(id: SeqId, n: u64) -> bool {
    let terms: Vec<BigInt> = (n..n + 3)
        .map(|i| seq_exact(id, i).expect("index within bound"))
        .collect();
    recurrence_holds(id, n, &terms[0], &terms[1], &terms[2])
}

/// Indices in `0..=max_n` where the recurrence fails.
pub fn recurrence_failures(id: SeqId, max_n: u64) -> Result<Vec<u64>> {
    let terms = seq_exact_prefix(id, max_n as usize + 3)?;
    Ok((0..=max_n)
        .into_par_iter()
        .filter(|&n| {
            let i = n as usize;
            !recurrence_holds(id, n, &terms[i], &terms[i + 1], &terms[i + 2])
        })
        .collect())
}

/// Both sides of the identity
/// `sum_{k<=n/2} C(2k,k)^2 C(3k,k) C(n+k,3k) 4^(n-2k) = A_n`.
pub fn lemma31_sides(n: u64) -> (BigInt, BigInt) {
    let bin = BigBinomials::new(2 * n as usize + 1);
    let lhs = (0..=n / 2)
        .map(|k| {
            let c = bin.binom(2 * k, k);
            let t = &c * &c * bin.binom(3 * k, k) * bin.binom(n + k, 3 * k);
            BigInt::from(t) * pow_signed(4, n - 2 * k)
        })
        .sum();
    let rhs = (0..=n)
        .map(|k| {
            let c = bin.binom(n, k);
            BigInt::from(bin.binom(2 * k, k) * bin.binom(2 * n - 2 * k, n - k) * &c * &c)
        })
        .sum();
    (lhs, rhs)
}

pub fn lemma31_check(n: u64) -> bool {
    let (lhs, rhs) = lemma31_sides(n);
    lhs == rhs
}

fn lemma41_left(n: u64, bin: &BigBinomials, small_a: &[BigInt]) -> BigInt {
    (0..=n)
        .map(|k| {
            BigInt::from(bin.binom(2 * k, k) * bin.binom(n + k, 2 * k))
                * pow_signed(-9, n - k)
                * &small_a[k as usize]
        })
        .sum()
}

fn lemma41_recurrence(m: u64, s: [&BigInt; 3]) -> bool {
    let m = m as i64;
    let total = s[2] * (m + 2).pow(3)
        + s[1] * ((2 * m + 3) * (7 * m * m + 21 * m + 17))
        + s[0] * (81 * (m + 1).pow(3));
    total.is_zero()
}

/// Both sides of
/// `sum_k C(2k,k) C(n+k,2k) (-9)^(n-k) a_k = sum_k C(2k,k)^2 C(4k,2k) C(n+3k,4k) (-27)^(n-k)`.
pub fn lemma41_sides(n: u64) -> (BigInt, BigInt) {
    let bin = BigBinomials::new(4 * n as usize + 1);
    let small_a = seq_exact_prefix(SeqId::SmallA, n as usize + 1).expect("bounded");
    (lemma41_left(n, &bin, &small_a), small_b_defining(n, &bin))
}

/// The identity at `n`, plus the shared third-order recurrence of both
/// sides at `m = n - 2` when `n >= 2`.
pub fn lemma41_check(n: u64) -> bool {
    let bin = BigBinomials::new(4 * n as usize + 1);
    let small_a = seq_exact_prefix(SeqId::SmallA, n as usize + 1).expect("bounded");
    let sides = |i: u64| (lemma41_left(i, &bin, &small_a), small_b_defining(i, &bin));
    let (l, r) = sides(n);
    if l != r {
        return false;
    }
    if n < 2 {
        return true;
    }
    let (l1, r1) = sides(n - 1);
    let (l0, r0) = sides(n - 2);
    lemma41_recurrence(n - 2, [&l0, &l1, &l]) && lemma41_recurrence(n - 2, [&r0, &r1, &r])
}

/// Which summand/certificate pair of the telescoping identity to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CertSide {
    /// `F_1(m,k) = C(2k,k)^2 C(3k,k) C(m+k,3k) 4^(m-2k)`
    First,
    /// `F_2(m,k) = C(2k,k) C(2m-2k,m-k) C(m,k)^2`
    Second,
}

impl CertSide {
    pub fn from_index(i: u8) -> Option<Self> {
        match i {
            1 => Some(CertSide::First),
            2 => Some(CertSide::Second),
            _ => None,
        }
    }
}

fn rat(n: BigInt) -> BigRational {
    BigRational::from_integer(n)
}

fn pow4(exp: i64) -> BigRational {
    let p = rat(BigInt::from(4).pow(exp.unsigned_abs() as u32));
    if exp >= 0 {
        p
    } else {
        p.recip()
    }
}

fn summand(side: CertSide, m: i64, k: i64) -> BigRational {
    match side {
        CertSide::First => {
            let c = binomial(2 * k, k);
            rat(&c * &c * binomial(3 * k, k) * binomial(m + k, 3 * k)) * pow4(m - 2 * k)
        }
        CertSide::Second => {
            let c = binomial(m, k);
            rat(binomial(2 * k, k) * binomial(2 * m - 2 * k, m - k) * &c * &c)
        }
    }
}

fn certificate(side: CertSide, m: i64, k: i64) -> Result<BigRational> {
    match side {
        CertSide::First => {
            let den = (m + 1 + k) * (m + 2 + k);
            if den == 0 {
                return Err(Error::DegenerateDenominator { m, k });
            }
            let c = binomial(2 * k, k);
            let num = BigInt::from(-192 * (3 * m + 4)) * BigInt::from(k).pow(4);
            Ok(BigRational::new(num, BigInt::from(den))
                * rat(&c * &c * binomial(3 * k, k) * binomial(m + k + 2, 3 * k))
                * pow4(m - 2 * k))
        }
        CertSide::Second => {
            let den = (m + 2 - k).pow(3);
            if den == 0 {
                return Err(Error::DegenerateDenominator { m, k });
            }
            let poly = -12 * m.pow(3) - 62 * m * m - 104 * m - 56 + 26 * k * m * m + 89 * k * m
                + 74 * k
                - 18 * k * k * m
                - 30 * k * k
                + 4 * k.pow(3);
            let num = BigInt::from(2 * k.pow(3)) * BigInt::from(poly);
            let c = binomial(m + 1, k);
            Ok(BigRational::new(num, BigInt::from(den))
                * rat(binomial(2 * k, k) * binomial(2 * (m + 1 - k), m + 1 - k) * &c * &c))
        }
    }
}

/// The telescoping identity
/// `(m+2)^3 F(m+2,k) - 2(2m+3)(5m^2+15m+12) F(m+1,k) + 64(m+1)^3 F(m,k) = G(m,k+1) - G(m,k)`
/// evaluated exactly at one point `0 <= k <= m`.
pub fn certificate31_check(side: CertSide, m: u64, k: u64) -> Result<bool> {
    assert!(k <= m, "certificate is stated for 0 <= k <= m");
    let (m, k) = (m as i64, k as i64);
    let lhs = summand(side, m + 2, k) * rat(BigInt::from((m + 2).pow(3)))
        - summand(side, m + 1, k) * rat(BigInt::from(2 * (2 * m + 3) * (5 * m * m + 15 * m + 12)))
        + summand(side, m, k) * rat(BigInt::from(64 * (m + 1).pow(3)));
    let rhs = certificate(side, m, k + 1)? - certificate(side, m, k)?;
    Ok(lhs == rhs)
}

/// The boundary combination that the telescoped sum leaves over, with a
/// caller-supplied middle coefficient `c(m)` multiplying `F(m+1,m+1)`:
/// `G(m,m+1) + (m+2)^3 (F(m+2,m+2) + F(m+2,m+1)) - c(m) F(m+1,m+1)`.
pub fn certificate31_boundary(side: CertSide, m: u64, middle: impl Fn(i64) -> i64) -> Result<BigRational> {
    let m = m as i64;
    Ok(certificate(side, m, m + 1)?
        + (summand(side, m + 2, m + 2) + summand(side, m + 2, m + 1)) * rat(BigInt::from((m + 2).pow(3)))
        - summand(side, m + 1, m + 1) * rat(BigInt::from(middle(m))))
}

// ---------------------------------------------------------------------------
// modular layer

fn kernel_product(table: &FactTable, parts: &[(u64, u64)]) -> PadicScaled {
    let ctx = table.ctx();
    parts
        .iter()
        .fold(PadicScaled::ONE, |acc, &(n, k)| acc.mul(table.binom(n, k), ctx))
}

/// `s_n mod p^e` by direct summation over p-adic binomials.
///
/// Needs the table to reach `4n` for `b_n` and `2n` otherwise.
pub fn seq_mod(id: SeqId, n: u64, table: &FactTable) -> u64 {
    let ctx = table.ctx();
    let mut acc = 0;
    match id {
        SeqId::BigA => {
            for k in 0..=n {
                let t = kernel_product(table, &[(2 * k, k), (2 * n - 2 * k, n - k), (n, k), (n, k)]);
                acc = ctx.add(acc, t.to_residue(ctx));
            }
        }
        SeqId::SmallA => {
            for k in 0..=n {
                let t = kernel_product(table, &[(n, k), (n, k), (2 * k, k)]);
                acc = ctx.add(acc, t.to_residue(ctx));
            }
        }
        SeqId::FourthPowers => {
            for k in 0..=n {
                let c = table.binom(n, k);
                let t = c.mul(c, ctx).mul(c.mul(c, ctx), ctx);
                acc = ctx.add(acc, t.to_residue(ctx));
            }
        }
        SeqId::SmallB => {
            let m27 = ctx.reduce(-27);
            for k in 0..=n {
                let t = kernel_product(table, &[(2 * k, k), (2 * k, k), (4 * k, 2 * k), (n + 3 * k, 4 * k)]);
                let term = ctx.mul(t.to_residue(ctx), ctx.pow(m27, n - k));
                acc = ctx.add(acc, term);
            }
        }
    }
    acc
}

/// `s_0, ..., s_{len-1} mod p^e` through the three-term recurrence.
///
/// The leading coefficient at step `n` is `(n+2)^j`, a unit while
/// `n + 2 < p`, hence `len <= p`.
pub fn seq_prefix_mod(id: SeqId, len: usize, ctx: &PrimeCtx) -> Vec<u64> {
    assert!(len as u64 <= ctx.p(), "recurrence leaves the unit range past p - 1");
    let (s0, s1) = initial_terms(id);
    let mut out = Vec::with_capacity(len);
    out.extend([ctx.reduce(s0), ctx.reduce(s1)].into_iter().take(len));
    for n in 0..len.saturating_sub(2) {
        let (c2, c1, c0) = recurrence_coeffs(id, n as i64);
        let rest = ctx.add(ctx.mul(ctx.reduce(c1), out[n + 1]), ctx.mul(ctx.reduce(c0), out[n]));
        let lead = ctx.inv(ctx.reduce(c2)).expect("leading coefficient is a unit below p");
        out.push(ctx.mul(ctx.neg(rest), lead));
    }
    out
}

/// `P_n(t) mod p^e` from `P_n(x) = 2^-n sum_k C(n,k) (-1)^k C(2n-2k,n) x^(n-2k)`.
pub fn legendre_poly_mod(n: u64, t: u64, table: &FactTable) -> u64 {
    let ctx = table.ctx();
    let t = t % ctx.modulus();
    let mut acc = 0;
    for k in 0..=n / 2 {
        let c = table.binom(n, k).mul(table.binom(2 * n - 2 * k, n), ctx).to_residue(ctx);
        let term = ctx.mul(c, ctx.pow(t, n - 2 * k));
        acc = if k % 2 == 0 { ctx.add(acc, term) } else { ctx.sub(acc, term) };
    }
    let half = ctx.inv(2).expect("p is odd");
    ctx.mul(acc, ctx.pow(half, n))
}

/// Reduce an exact integer into `[0, modulus)`.
pub fn big_to_residue(x: &BigInt, modulus: u64) -> u64 {
    let m = BigInt::from(modulus);
    let r = ((x % &m) + &m) % &m;
    debug_assert!(!r.is_negative());
    u64::try_from(r).expect("residue fits")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn exact_examples() {
        assert_eq!(seq_exact(SeqId::BigA, 1).unwrap(), BigInt::from(4));
        assert_eq!(seq_exact(SeqId::SmallB, 1).unwrap(), BigInt::from(-3));
        assert_eq!(seq_exact(SeqId::BigA, 2).unwrap(), BigInt::from(28));
        assert_eq!(seq_exact(SeqId::SmallA, 2).unwrap(), BigInt::from(15));
        assert_eq!(seq_exact(SeqId::SmallB, 2).unwrap(), BigInt::from(9));
        assert_eq!(seq_exact(SeqId::FourthPowers, 2).unwrap(), BigInt::from(18));
        assert!(matches!(
            seq_exact(SeqId::BigA, MAX_EXACT_INDEX + 1),
            Err(Error::IndexTooLarge { .. })
        ));
    }

    #[test]
    fn prefixes_match_single_terms() {
        // direct summation by hand for the first few terms
        assert_eq!(seq_exact_prefix(SeqId::BigA, 5).unwrap(), ints(&[1, 4, 28, 256, 2716]));
        assert_eq!(seq_exact_prefix(SeqId::SmallA, 5).unwrap(), ints(&[1, 3, 15, 93, 639]));
        assert_eq!(seq_exact_prefix(SeqId::SmallB, 5).unwrap(), ints(&[1, -3, 9, -3, -279]));
        assert_eq!(seq_exact_prefix(SeqId::FourthPowers, 5).unwrap(), ints(&[1, 2, 18, 164, 1810]));
        for id in SeqId::ALL {
            let prefix = seq_exact_prefix(id, 30).unwrap();
            for (n, v) in prefix.iter().enumerate() {
                assert_eq!(&seq_exact(id, n as u64).unwrap(), v, "{id}_{n}");
            }
        }
    }

    #[test]
    fn lemma31_examples() {
        assert_eq!(lemma31_sides(0), (BigInt::from(1), BigInt::from(1)));
        assert_eq!(lemma31_sides(1), (BigInt::from(4), BigInt::from(4)));
        assert!(lemma31_check(25));
    }

    #[test]
    fn lemma41_examples() {
        assert_eq!(lemma41_sides(0), (BigInt::from(1), BigInt::from(1)));
        assert_eq!(lemma41_sides(1), (BigInt::from(-3), BigInt::from(-3)));
        assert!(lemma41_check(30));
    }

    #[test]
    fn certificate_examples() {
        assert!(certificate31_check(CertSide::First, 0, 0).unwrap());
        assert!(certificate31_check(CertSide::Second, 5, 3).unwrap());
        assert!(certificate31_check(CertSide::First, 12, 12).unwrap());
    }

    #[test]
    fn certificate_detects_perturbation() {
        // the identity is sharp: shifting the summand breaks it
        let m = 6i64;
        let k = 2i64;
        let lhs = summand(CertSide::First, m + 2, k) * rat(BigInt::from((m + 2).pow(3) + 1))
            - summand(CertSide::First, m + 1, k) * rat(BigInt::from(2 * (2 * m + 3) * (5 * m * m + 15 * m + 12)))
            + summand(CertSide::First, m, k) * rat(BigInt::from(64 * (m + 1).pow(3)));
        let rhs = certificate(CertSide::First, m, k + 1).unwrap() - certificate(CertSide::First, m, k).unwrap();
        assert_ne!(lhs, rhs);
    }

    #[test]
    fn boundary_terms_cancel() {
        let recurrence_middle = |m: i64| 2 * (2 * m + 3) * (5 * m * m + 15 * m + 12);
        for side in [CertSide::First, CertSide::Second] {
            for m in 0..25 {
                assert!(certificate31_boundary(side, m, recurrence_middle).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn alternative_boundary_coefficient_only_cancels_first_side() {
        let alt = |m: i64| 24 * (2 * m + 3) * (18 * m * m + 54 * m + 41);
        for m in 0..25 {
            assert!(certificate31_boundary(CertSide::First, m, alt).unwrap().is_zero());
        }
        assert!((0..25).any(|m| !certificate31_boundary(CertSide::Second, m, alt).unwrap().is_zero()));
    }

    #[test]
    fn recurrence_examples() {
        // 8*28 - 72*4 + 64*1 = 0 and 4*15 - 23*3 + 9*1 = 0
        assert!(recurrence_check(SeqId::BigA, 0));
        assert!(recurrence_check(SeqId::SmallA, 0));
        assert!(recurrence_check(SeqId::SmallA, 100));
        assert!(recurrence_check(SeqId::SmallB, 17));
        assert!(recurrence_check(SeqId::FourthPowers, 40));
    }

    #[test]
    fn b_forms_agree() {
        for n in 0..60 {
            let (x, y) = b_closed_forms(n);
            assert_eq!(x, y, "n={n}");
        }
    }

    #[test]
    fn seq_mod_examples() {
        let c7 = PrimeCtx::new(7, 1).unwrap();
        let t7 = FactTable::build(&c7);
        assert_eq!(seq_mod(SeqId::BigA, 2, &t7), 0);
        for (p, e) in [(5, 1), (11, 3), (13, 2)] {
            let c = PrimeCtx::new(p, e).unwrap();
            let t = FactTable::build(&c);
            assert_eq!(seq_mod(SeqId::SmallA, 1, &t), 3);
            assert_eq!(seq_mod(SeqId::FourthPowers, 0, &t), 1);
        }
    }

    #[test]
    fn seq_mod_matches_exact() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(200);
        let primes = [5u64, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];
        for _ in 0..200 {
            let id = SeqId::ALL[rng.gen_range(0..4)];
            let p = primes[rng.gen_range(0..primes.len())];
            let e = rng.gen_range(1..=3);
            let n = rng.gen_range(0..p);
            let c = PrimeCtx::new(p, e).unwrap();
            let t = FactTable::build(&c);
            let exact = big_to_residue(&seq_exact(id, n).unwrap(), c.modulus());
            assert_eq!(seq_mod(id, n, &t), exact, "{id}_{n} mod {p}^{e}");
        }
    }

    #[test]
    fn recurrence_prefix_matches_direct() {
        for (p, e) in [(5, 3), (7, 2), (23, 3), (101, 3), (409, 1)] {
            let c = PrimeCtx::new(p, e).unwrap();
            let t = FactTable::build(&c);
            for id in SeqId::ALL {
                let fast = seq_prefix_mod(id, p as usize, &c);
                let direct: Vec<u64> = (0..p).map(|n| seq_mod(id, n, &t)).collect();
                assert_eq!(fast, direct, "{id} mod {p}^{e}");
            }
        }
    }

    #[test]
    fn legendre_poly_examples() {
        let c7 = PrimeCtx::new(7, 1).unwrap();
        let t7 = FactTable::build(&c7);
        assert_eq!(legendre_poly_mod(2, 3, &t7), 6);
        for p in [5u64, 7, 11, 13, 101] {
            let c = PrimeCtx::new(p, 1).unwrap();
            let t = FactTable::build(&c);
            for x in 0..p.min(20) {
                assert_eq!(legendre_poly_mod(1, x, &t), x);
                assert_eq!(legendre_poly_mod(0, x, &t), 1);
            }
        }
    }

    #[test]
    fn legendre_poly_parity() {
        for p in [5u64, 7, 11, 13, 17, 19, 23] {
            let c = PrimeCtx::new(p, 1).unwrap();
            let t = FactTable::build(&c);
            for n in 0..p {
                for x in 0..p {
                    let a = legendre_poly_mod(n, (p - x) % p, &t);
                    let b = legendre_poly_mod(n, x, &t);
                    assert_eq!(a, if n % 2 == 0 { b } else { c.neg(b) }, "P_{n}({x}) mod {p}");
                }
            }
        }
    }

    #[test]
    fn seq_id_parses() {
        for id in SeqId::ALL {
            assert_eq!(id.tag().parse::<SeqId>().unwrap(), id);
        }
        assert!("B".parse::<SeqId>().is_err());
    }
}
