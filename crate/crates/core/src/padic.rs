//! Valuation-tracked integers modulo `p^e`.
//!
//! Binomial coefficients such as `C(2k,k)^3` are frequently divisible by
//! `p` inside the truncated sums. Keeping the power of `p` apart from the
//! unit lets factorial quotients be formed exactly before the final
//! reduction.

use crate::error::{Error, Result};
use crate::modarith::PrimeCtx;

/// `unit * p^val`, with `unit` a unit modulo `p^e`, or zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PadicScaled {
    zero: bool,
    val: u32,
    unit: u64,
}

impl PadicScaled {
    pub const ZERO: Self = Self {
        zero: true,
        val: 0,
        unit: 0,
    };

    pub const ONE: Self = Self {
        zero: false,
        val: 0,
        unit: 1,
    };

    /// Build from parts. `unit` must be coprime to `p`.
    pub fn new(val: u32, unit: u64, ctx: &PrimeCtx) -> Self {
        let unit = unit % ctx.modulus();
        assert!(unit % ctx.p() != 0, "unit part must be coprime to p");
        Self {
            zero: false,
            val,
            unit,
        }
    }

    /// Split a nonnegative integer into valuation and unit.
    pub fn from_u64(mut n: u64, ctx: &PrimeCtx) -> Self {
        if n == 0 {
            return Self::ZERO;
        }
        let mut val = 0;
        while n % ctx.p() == 0 {
            n /= ctx.p();
            val += 1;
        }
        Self::new(val, n, ctx)
    }

    pub fn is_zero(&self) -> bool {
        self.zero
    }

    pub fn val(&self) -> u32 {
        self.val
    }

    pub fn unit(&self) -> u64 {
        self.unit
    }

    pub fn mul(self, other: Self, ctx: &PrimeCtx) -> Self {
        if self.zero || other.zero {
            return Self::ZERO;
        }
        Self {
            zero: false,
            val: self.val + other.val,
            unit: ctx.mul(self.unit, other.unit),
        }
    }

    pub fn div(self, other: Self, ctx: &PrimeCtx) -> Result<Self> {
        if other.zero {
            return Err(Error::DivisionByZero);
        }
        if self.zero {
            return Ok(Self::ZERO);
        }
        if self.val < other.val {
            return Err(Error::NegativeValuation {
                numerator: self.val,
                denominator: other.val,
            });
        }
        let inv = ctx.inv(other.unit).expect("unit part is invertible");
        Ok(Self {
            zero: false,
            val: self.val - other.val,
            unit: ctx.mul(self.unit, inv),
        })
    }

    /// `unit * p^val mod p^e`.
    pub fn to_residue(self, ctx: &PrimeCtx) -> u64 {
        if self.zero || self.val >= ctx.e() {
            return 0;
        }
        ctx.mul(self.unit, ctx.p().pow(self.val))
    }
}

/// Number of carries when adding `a` and `b` in base `p`.
pub fn kummer_carries(mut a: u64, mut b: u64, p: u64) -> u32 {
    let mut carries = 0;
    let mut carry = 0;
    while a > 0 || b > 0 || carry > 0 {
        let digit = a % p + b % p + carry;
        carry = u64::from(digit >= p);
        carries += carry as u32;
        a /= p;
        b /= p;
    }
    carries
}

/// `n!` for `n <= bound` as valuation plus unit, with inverse units.
#[derive(Debug, Clone)]
pub struct FactTable {
    ctx: PrimeCtx,
    vals: Vec<u32>,
    units: Vec<u64>,
    inv_units: Vec<u64>,
}

impl FactTable {
    /// Table up to `6(p-1)`, enough for `C(6k,3k)` with `k <= p-1`.
    pub fn build(ctx: &PrimeCtx) -> Self {
        Self::with_bound(ctx, 6 * (ctx.p() - 1))
    }

    pub fn with_bound(ctx: &PrimeCtx, bound: u64) -> Self {
        let len = bound as usize + 1;
        let mut vals = Vec::with_capacity(len);
        let mut units = Vec::with_capacity(len);
        vals.push(0);
        units.push(1 % ctx.modulus());
        for n in 1..=bound {
            let step = PadicScaled::from_u64(n, ctx);
            let i = n as usize;
            vals.push(vals[i - 1] + step.val);
            units.push(ctx.mul(units[i - 1], step.unit));
        }

        let mut inv_units = vec![0; len];
        inv_units[len - 1] = ctx.inv(units[len - 1]).expect("factorial unit is a unit");
        for n in (1..=bound).rev() {
            let step = PadicScaled::from_u64(n, ctx);
            let i = n as usize;
            inv_units[i - 1] = ctx.mul(inv_units[i], step.unit);
        }

        Self {
            ctx: *ctx,
            vals,
            units,
            inv_units,
        }
    }

    pub fn ctx(&self) -> &PrimeCtx {
        &self.ctx
    }

    pub fn bound(&self) -> u64 {
        self.vals.len() as u64 - 1
    }

    pub fn fact(&self, n: u64) -> PadicScaled {
        let i = n as usize;
        PadicScaled {
            zero: false,
            val: self.vals[i],
            unit: self.units[i],
        }
    }

    /// `C(n, k)`; zero when `k > n`.
    pub fn binom(&self, n: u64, k: u64) -> PadicScaled {
        if k > n {
            return PadicScaled::ZERO;
        }
        let (n, k, r) = (n as usize, k as usize, (n - k) as usize);
        let val = self.vals[n] - self.vals[k] - self.vals[r];
        debug_assert_eq!(val, kummer_carries(k as u64, r as u64, self.ctx.p()));
        let unit = self
            .ctx
            .mul(self.units[n], self.ctx.mul(self.inv_units[k], self.inv_units[r]));
        PadicScaled {
            zero: false,
            val,
            unit,
        }
    }

    /// `C(n, k) mod p^e`.
    #[inline]
    pub fn binom_residue(&self, n: u64, k: u64) -> u64 {
        self.binom(n, k).to_residue(&self.ctx)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;
    use num_traits::{ToPrimitive, Zero};
    use proptest::prelude::*;

    fn ctx(p: u64, e: u32) -> PrimeCtx {
        PrimeCtx::new(p, e).unwrap()
    }

    #[test]
    fn mul_div_examples() {
        let c = ctx(5, 3);
        let x = PadicScaled::new(1, 4, &c);
        let y = PadicScaled::new(0, 2, &c);
        assert_eq!(x.mul(y, &c), PadicScaled::new(1, 8, &c));
        assert_eq!(x.div(x, &c).unwrap(), PadicScaled::ONE);
        let a = PadicScaled::new(2, 3, &c);
        let b = PadicScaled::new(1, 3, &c);
        assert_eq!(a.div(b, &c).unwrap(), PadicScaled::new(1, 1, &c));
        assert_eq!(
            b.div(a, &c),
            Err(Error::NegativeValuation {
                numerator: 1,
                denominator: 2
            })
        );
        assert_eq!(a.div(PadicScaled::ZERO, &c), Err(Error::DivisionByZero));
    }

    #[test]
    fn factorial_examples() {
        let c = ctx(5, 3);
        let t = FactTable::build(&c);
        assert_eq!(t.bound(), 24);
        assert_eq!(t.fact(0), PadicScaled::ONE);
        assert_eq!(t.fact(5), PadicScaled::new(1, 24, &c));
        assert_eq!(t.fact(10).val(), 2);
    }

    #[test]
    fn binomial_examples() {
        let c5 = ctx(5, 3);
        let t5 = FactTable::build(&c5);
        assert_eq!(t5.binom(6, 3), PadicScaled::new(1, 4, &c5));
        assert_eq!(t5.binom(17, 0), PadicScaled::ONE);
        assert_eq!(t5.binom(3, 4), PadicScaled::ZERO);
        let c7 = ctx(7, 3);
        let t7 = FactTable::build(&c7);
        assert_eq!(t7.binom(10, 5), PadicScaled::new(1, 36, &c7));
    }

    #[test]
    fn residue_examples() {
        let c = ctx(5, 3);
        assert_eq!(PadicScaled::new(1, 4, &c).to_residue(&c), 20);
        assert_eq!(PadicScaled::new(3, 2, &c).to_residue(&c), 0);
        assert_eq!(PadicScaled::new(0, 117, &c).to_residue(&c), 117);
        assert_eq!(PadicScaled::ZERO.to_residue(&c), 0);
    }

    fn exact_binom(n: u64, k: u64) -> BigUint {
        let mut acc = BigUint::from(1u32);
        for i in 0..k {
            acc = acc * (n - i) / (i + 1);
        }
        acc
    }

    fn exact_val(mut x: BigUint, p: u64) -> u32 {
        let mut v = 0;
        let p = BigUint::from(p);
        while !x.is_zero() && (&x % &p).is_zero() {
            x /= &p;
            v += 1;
        }
        v
    }

    #[test]
    fn binomials_match_exact_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
        for p in [5u64, 7, 11, 13] {
            let c = ctx(p, 3);
            let t = FactTable::with_bound(&c, 2000);
            for _ in 0..500 {
                let n = rng.gen_range(0..=2000u64);
                let k = rng.gen_range(0..=n);
                let exact = exact_binom(n, k);
                let got = t.binom(n, k);
                let m = BigUint::from(c.modulus());
                assert_eq!(got.to_residue(&c), (&exact % &m).to_u64().unwrap(), "C({n},{k}) p={p}");
                assert_eq!(got.val(), exact_val(exact, p));
                assert_eq!(got.val(), kummer_carries(k, n - k, p));
            }
        }
    }

    fn arb_scaled() -> impl Strategy<Value = PadicScaled> {
        (0u32..5, 1u64..343).prop_filter_map("unit", |(v, u)| {
            (u % 7 != 0).then(|| PadicScaled::new(v, u, &ctx(7, 3)))
        })
    }

    proptest! {
        #[test]
        fn mul_associative_commutative(a in arb_scaled(), b in arb_scaled(), d in arb_scaled()) {
            let c = ctx(7, 3);
            prop_assert_eq!(a.mul(b, &c), b.mul(a, &c));
            prop_assert_eq!(a.mul(b, &c).mul(d, &c), a.mul(b.mul(d, &c), &c));
            prop_assert_eq!(a.mul(b, &c).div(b, &c).unwrap(), a);
        }
    }
}
