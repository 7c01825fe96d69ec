//! Truncated formal power series with exact rational coefficients, and the
//! coefficient-wise checks of the hypergeometric transformations.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::sequences::{binomial, seq_exact_prefix, SeqId};

/// Default truncation order for the series suites.
pub const DEFAULT_ORDER: usize = 40;

/// Smallest order the transformation checks accept.
pub const MIN_ORDER: usize = 4;

/// `c_0 + c_1 x + ... + c_N x^N + O(x^(N+1))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatSeries {
    coeffs: Vec<BigRational>,
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl RatSeries {
    /// Pads with zeros or truncates so that exactly `order + 1` coefficients remain.
    pub fn new(mut coeffs: Vec<BigRational>, order: usize) -> Self {
        coeffs.resize(order + 1, BigRational::zero());
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64], order: usize) -> Self {
        Self::new(coeffs.iter().map(|&c| q(c)).collect(), order)
    }

    pub fn constant(c: BigRational, order: usize) -> Self {
        Self::new(vec![c], order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(BigRational::one(), order)
    }

    /// `c x^k`.
    pub fn monomial(c: BigRational, k: usize, order: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); order + 1];
        if k <= order {
            coeffs[k] = c;
        }
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &BigRational {
        &self.coeffs[k]
    }

    /// Index of the first nonzero coefficient, if any.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.order());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn inv(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let n = self.order();
        let c0_inv = c0.recip();
        let mut out: Vec<BigRational> = Vec::with_capacity(n + 1);
        out.push(c0_inv.clone());
        for k in 1..=n {
            let mut s = BigRational::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    s += &self.coeffs[j] * &out[k - j];
                }
            }
            out.push(-s * &c0_inv);
        }
        Ok(Self { coeffs: out })
    }

    /// `self(inner(x))`; `inner` must have zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::NonzeroInnerConstant);
        }
        let n = self.order().min(inner.order());
        let inner = Self::new(inner.coeffs.clone(), n);
        // Horner: c0 + g (c1 + g (c2 + ...)); terms past x^n cannot contribute
        let mut acc = Self::constant(self.coeffs[n].clone(), n);
        for c in self.coeffs[..n].iter().rev() {
            acc = &acc * &inner;
            acc.coeffs[0] += c;
        }
        Ok(acc)
    }

    /// Square root with positive constant term, by Newton iteration.
    pub fn sqrt(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let root0 = rational_sqrt(c0).ok_or(Error::NonSquareConstant)?;
        let n = self.order();
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let mut s = Self::constant(root0, n);
        // each step doubles the number of correct coefficients
        let mut correct = 1;
        while correct <= n {
            let quotient = self * &s.inv()?;
            s = (&s + &quotient).scale(&half);
            correct *= 2;
        }
        Ok(s)
    }
}

/// Exact square root of a nonnegative rational, if it has one.
fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let num = num_integer::Roots::sqrt(x.numer());
    let den = num_integer::Roots::sqrt(x.denom());
    (&num * &num == *x.numer() && &den * &den == *x.denom()).then(|| BigRational::new(num, den))
}

impl<'a> Add<&'a RatSeries> for &'a RatSeries {
    type Output = RatSeries;

    fn add(self, rhs: &RatSeries) -> RatSeries {
        let n = self.order().min(rhs.order());
        RatSeries {
            coeffs: (0..=n).map(|k| &self.coeffs[k] + &rhs.coeffs[k]).collect(),
        }
    }
}

impl<'a> Sub<&'a RatSeries> for &'a RatSeries {
    type Output = RatSeries;

    fn sub(self, rhs: &RatSeries) -> RatSeries {
        let n = self.order().min(rhs.order());
        RatSeries {
            coeffs: (0..=n).map(|k| &self.coeffs[k] - &rhs.coeffs[k]).collect(),
        }
    }
}

impl Neg for &RatSeries {
    type Output = RatSeries;

    fn neg(self) -> RatSeries {
        RatSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl<'a> Mul<&'a RatSeries> for &'a RatSeries {
    type Output = RatSeries;

    fn mul(self, rhs: &RatSeries) -> RatSeries {
        let n = self.order().min(rhs.order());
        let mut coeffs = vec![BigRational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        RatSeries { coeffs }
    }
}

/// Rising factorial `(a)_k = a (a+1) ... (a+k-1)`.
pub fn pochhammer(a: &BigRational, k: u64) -> BigRational {
    let mut acc = BigRational::one();
    let mut term = a.clone();
    for _ in 0..k {
        acc *= &term;
        term += BigRational::one();
    }
    acc
}

fn factorial(k: u64) -> BigRational {
    BigRational::from_integer((1..=k).fold(BigInt::one(), |acc, i| acc * i))
}

fn frac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `(1/2)_k / k!`
fn half_ratio(k: u64) -> BigRational {
    pochhammer(&frac(1, 2), k) / factorial(k)
}

/// `(1/2)_k (1/6)_k (5/6)_k / k!^3`
fn sixths_ratio(k: u64) -> BigRational {
    let f = factorial(k);
    pochhammer(&frac(1, 2), k) * pochhammer(&frac(1, 6), k) * pochhammer(&frac(5, 6), k) / (&f * &f * &f)
}

fn big(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// The two Pochhammer-to-binomial identities
/// `(1/2)_k/k! = C(2k,k)/4^k` and
/// `(1/2)_k (1/6)_k (5/6)_k / k!^3 = C(2k,k) C(3k,k) C(6k,3k) / 12^(3k)`
/// for every `k <= k_max`.
pub fn pochhammer_check(k_max: u64) -> bool {
    (0..=k_max).all(|k| {
        let ki = k as i64;
        let four_k = BigRational::from_integer(BigInt::from(4).pow(k as u32));
        let lhs1 = half_ratio(k);
        let rhs1 = BigRational::from_integer(binomial(2 * ki, ki)) / four_k;
        let twelve = BigRational::from_integer(BigInt::from(1728).pow(k as u32));
        let lhs2 = sixths_ratio(k);
        let rhs2 = BigRational::from_integer(binomial(2 * ki, ki) * binomial(3 * ki, ki) * binomial(6 * ki, 3 * ki)) / twelve;
        lhs1 == rhs1 && lhs2 == rhs2
    })
}

fn series_from_fn(order: usize, f: impl Fn(u64) -> BigRational) -> RatSeries {
    RatSeries::new((0..=order as u64).map(f).collect(), order)
}

/// Left side `sum_k ((1/2)_k / k!)^3 x^k` and both right sides
/// `2/sqrt(4-x) sum_k h_k (27x^2/(4-x)^3)^k` and
/// `1/sqrt(1-4x) sum_k h_k (27x/(4x-1)^3)^k`, with
/// `h_k = (1/2)_k (1/6)_k (5/6)_k / k!^3`.
pub fn bailey_sides(order: usize) -> Result<(RatSeries, RatSeries, RatSeries)> {
    let n = order;
    let lhs = series_from_fn(n, |k| {
        let h = half_ratio(k);
        &h * &h * &h
    });
    let inner = series_from_fn(n, sixths_ratio);

    let four_minus_x = RatSeries::from_ints(&[4, -1], n);
    let arg1 = &RatSeries::monomial(big(27), 2, n) * &four_minus_x.pow(3).inv()?;
    let rhs1 = &four_minus_x.sqrt()?.inv()?.scale(&big(2)) * &inner.compose(&arg1)?;

    let four_x_minus_one = RatSeries::from_ints(&[-1, 4], n);
    let arg2 = &RatSeries::monomial(big(27), 1, n) * &four_x_minus_one.pow(3).inv()?;
    let one_minus_4x = RatSeries::from_ints(&[1, -4], n);
    let rhs2 = &one_minus_4x.sqrt()?.inv()? * &inner.compose(&arg2)?;
    Ok((lhs, rhs1, rhs2))
}

pub fn bailey_check(order: usize) -> Result<bool> {
    let (lhs, rhs1, rhs2) = bailey_sides(order)?;
    Ok(lhs == rhs1 && lhs == rhs2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RogersIdentity {
    /// `sum A_n u^n = (1-4u)^-1 sum_k C(2k,k)^2 C(3k,k) (u^2/(1-4u)^3)^k`
    BigAGenerating,
    /// `sum_k C(2k,k) a_k (u/(9(1+u)^2))^k
    ///    = (1+u)/(1+3u) sum_k C(2k,k)^2 C(4k,2k) (u/(9(1+3u)^4))^k`
    SmallATransform,
}

impl RogersIdentity {
    pub const ALL: [RogersIdentity; 2] = [RogersIdentity::BigAGenerating, RogersIdentity::SmallATransform];

    pub fn label(self) -> &'static str {
        match self {
            RogersIdentity::BigAGenerating => "3.3",
            RogersIdentity::SmallATransform => "4.2",
        }
    }
}

fn int_series(order: usize, f: impl Fn(i64) -> BigInt) -> RatSeries {
    series_from_fn(order, |k| BigRational::from_integer(f(k as i64)))
}

pub fn rogers_sides(which: RogersIdentity, order: usize) -> Result<(RatSeries, RatSeries)> {
    let n = order;
    match which {
        RogersIdentity::BigAGenerating => {
            let big_a = seq_exact_prefix(SeqId::BigA, n + 1)?;
            let lhs = int_series(n, |k| big_a[k as usize].clone());
            let kernel = int_series(n, |k| {
                let c = binomial(2 * k, k);
                &c * &c * binomial(3 * k, k)
            });
            let one_minus_4u = RatSeries::from_ints(&[1, -4], n);
            let arg = &RatSeries::monomial(big(1), 2, n) * &one_minus_4u.pow(3).inv()?;
            let rhs = &one_minus_4u.inv()? * &kernel.compose(&arg)?;
            Ok((lhs, rhs))
        }
        RogersIdentity::SmallATransform => {
            let small_a = seq_exact_prefix(SeqId::SmallA, n + 1)?;
            let left_kernel = int_series(n, |k| binomial(2 * k, k) * &small_a[k as usize]);
            let one_plus_u = RatSeries::from_ints(&[1, 1], n);
            let left_arg = &RatSeries::monomial(big(1), 1, n) * &one_plus_u.pow(2).scale(&big(9)).inv()?;
            let lhs = left_kernel.compose(&left_arg)?;

            let right_kernel = int_series(n, |k| {
                let c = binomial(2 * k, k);
                &c * &c * binomial(4 * k, 2 * k)
            });
            let one_plus_3u = RatSeries::from_ints(&[1, 3], n);
            let right_arg = &RatSeries::monomial(big(1), 1, n) * &one_plus_3u.pow(4).scale(&big(9)).inv()?;
            let prefactor = &one_plus_u * &one_plus_3u.inv()?;
            let rhs = &prefactor * &right_kernel.compose(&right_arg)?;
            Ok((lhs, rhs))
        }
    }
}

pub fn rogers_check(which: RogersIdentity, order: usize) -> Result<bool> {
    let (lhs, rhs) = rogers_sides(which, order)?;
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn sqrt_of_one_minus_4u() {
        let s = RatSeries::from_ints(&[1, -4], 6).sqrt().unwrap();
        assert_eq!(s, RatSeries::from_ints(&[1, -2, -2, -4, -10, -28, -84], 6));
    }

    #[test]
    fn geometric_inverse() {
        let inv = RatSeries::from_ints(&[1, -1], 8).inv().unwrap();
        assert_eq!(inv, RatSeries::from_ints(&[1; 9], 8));
    }

    #[test]
    fn compose_with_square() {
        let geometric = RatSeries::from_ints(&[1; 9], 8);
        let u2 = RatSeries::from_ints(&[0, 0, 1], 8);
        let got = geometric.compose(&u2).unwrap();
        assert_eq!(got, RatSeries::from_ints(&[1, 0, 1, 0, 1, 0, 1, 0, 1], 8));
    }

    #[test]
    fn error_paths() {
        let zero_c0 = RatSeries::from_ints(&[0, 1], 4);
        assert_eq!(zero_c0.inv(), Err(Error::ZeroConstantTerm));
        assert_eq!(zero_c0.sqrt(), Err(Error::ZeroConstantTerm));
        assert_eq!(RatSeries::from_ints(&[2, 1], 4).sqrt(), Err(Error::NonSquareConstant));
        assert_eq!(RatSeries::from_ints(&[-4, 1], 4).sqrt(), Err(Error::NonSquareConstant));
        assert_eq!(
            zero_c0.compose(&RatSeries::from_ints(&[1, 1], 4)),
            Err(Error::NonzeroInnerConstant)
        );
    }

    #[test]
    fn pochhammer_examples() {
        // (1/2)_2 / 2! = (1/2)(3/2)/2 = 3/8 = C(4,2)/16
        assert_eq!(half_ratio(2), frac(3, 8));
        assert_eq!(half_ratio(0), big(1));
        assert!(pochhammer_check(0));
        assert!(pochhammer_check(40));
    }

    #[test]
    fn bailey_low_order() {
        let (lhs, rhs1, rhs2) = bailey_sides(MIN_ORDER).unwrap();
        assert_eq!(lhs.coeff(0), &big(1));
        assert_eq!(lhs.coeff(1), &frac(1, 8));
        assert_eq!(rhs1.coeff(0), &big(1));
        assert_eq!(lhs, rhs1);
        assert_eq!(lhs, rhs2);
    }

    #[test]
    fn rogers_low_order() {
        let (lhs, rhs) = rogers_sides(RogersIdentity::BigAGenerating, MIN_ORDER).unwrap();
        assert_eq!(lhs.coeff(0), &big(1));
        assert_eq!(rhs.coeff(0), &big(1));
        assert_eq!(lhs.coeff(1), &big(4));
        assert_eq!(rhs.coeff(1), &big(4));
        assert!(rogers_check(RogersIdentity::SmallATransform, MIN_ORDER).unwrap());
    }

    #[test]
    fn full_order_identities() {
        assert!(bailey_check(DEFAULT_ORDER).unwrap());
        for which in RogersIdentity::ALL {
            assert!(rogers_check(which, DEFAULT_ORDER).unwrap(), "{}", which.label());
        }
    }

    #[test]
    fn wrong_prefactor_is_detected() {
        let (lhs, rhs) = rogers_sides(RogersIdentity::BigAGenerating, 10).unwrap();
        let off = RatSeries::from_ints(&[1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1], 10);
        assert_ne!(lhs, &rhs * &off);
    }

    fn arb_series() -> impl Strategy<Value = RatSeries> {
        (prop::collection::vec((-20i64..20, 1i64..6), 12), prop::sample::select(vec![1i64, 4, 9, 16, 25]))
            .prop_map(|(cs, c0)| {
                let mut coeffs: Vec<BigRational> = cs.into_iter().map(|(n, d)| frac(n, d)).collect();
                coeffs[0] = frac(c0, 1);
                RatSeries::new(coeffs, 11)
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn sqrt_squares_back(f in arb_series()) {
            let s = f.sqrt().unwrap();
            prop_assert!(s.coeff(0).is_positive());
            prop_assert_eq!(&s * &s, f);
        }

        #[test]
        fn inverse_times_self_is_one(f in arb_series()) {
            prop_assert_eq!(&f.inv().unwrap() * &f, RatSeries::one(f.order()));
        }
    }
}
