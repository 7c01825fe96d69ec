//! Modular arithmetic modulo `p^e` for small primes, quadratic symbols,
//! square roots modulo `p`, and representations by binary quadratic forms.
//!
//! Every modulus handled here is below `2^60`, so products are formed in
//! `u128` and reduced immediately.

use crate::error::{Error, Result};

/// Exclusive upper bound on supported primes. Keeps `p^3 < 2^60`.
pub const PRIME_LIMIT: u64 = 1 << 20;

#[inline]
pub fn mul_mod(a: u64, b: u64, modulus: u64) -> u64 {
    ((a as u128 * b as u128) % modulus as u128) as u64
}

/// `base^exp mod modulus` by square-and-multiply.
pub fn mod_pow(base: u64, mut exp: u64, modulus: u64) -> u64 {
    debug_assert!(modulus >= 1);
    let mut result = 1 % modulus;
    let mut b = base % modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            result = mul_mod(result, b, modulus);
        }
        b = mul_mod(b, b, modulus);
        exp >>= 1;
    }
    result
}

/// Inverse of `a` modulo `modulus` by the extended Euclidean algorithm.
pub fn mod_inv(a: u64, modulus: u64) -> Result<u64> {
    let m = modulus as i128;
    let (mut old_r, mut r) = ((a % modulus) as i128, m);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        // modulus 1: everything is 0 and 0 * 0 == 1 holds trivially
        if modulus == 1 {
            return Ok(0);
        }
        return Err(Error::NotInvertible {
            value: a,
            modulus,
        });
    }
    Ok(old_s.rem_euclid(m) as u64)
}

/// Reduce a signed integer into `[0, modulus)`.
#[inline]
pub fn reduce_signed(a: i64, modulus: u64) -> u64 {
    (a as i128).rem_euclid(modulus as i128) as u64
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = mod_pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// All primes in `[lo, hi]` by a segmented sieve of Eratosthenes.
pub fn primes_between(lo: u64, hi: u64) -> Vec<u64> {
    if hi < 2 || lo > hi {
        return Vec::new();
    }
    let lo = lo.max(2);
    let root = hi.isqrt();

    let mut small = vec![true; root as usize + 1];
    let mut base = Vec::new();
    for i in 2..=root as usize {
        if small[i] {
            base.push(i as u64);
            let mut j = i * i;
            while j <= root as usize {
                small[j] = false;
                j += i;
            }
        }
    }

    const SEGMENT: u64 = 1 << 15;
    let mut out = Vec::new();
    let mut seg_lo = lo;
    while seg_lo <= hi {
        let seg_hi = (seg_lo + SEGMENT - 1).min(hi);
        let mut mark = vec![true; (seg_hi - seg_lo + 1) as usize];
        for &q in &base {
            let start = (q * q).max(seg_lo.div_ceil(q) * q);
            let mut j = start;
            while j <= seg_hi {
                mark[(j - seg_lo) as usize] = false;
                j += q;
            }
        }
        out.extend(
            mark.iter()
                .enumerate()
                .filter(|(_, &m)| m)
                .map(|(i, _)| seg_lo + i as u64),
        );
        seg_lo = seg_hi + 1;
    }
    out
}

/// Legendre symbol by Euler's criterion: `a^((p-1)/2) mod p`.
pub fn legendre_euler(a: i64, p: u64) -> i8 {
    let r = reduce_signed(a, p);
    if r == 0 {
        return 0;
    }
    if mod_pow(r, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Jacobi symbol `(a/n)` for odd positive `n`, via quadratic reciprocity.
pub fn jacobi_symbol(a: i64, n: u64) -> i8 {
    assert!(n % 2 == 1, "Jacobi symbol needs an odd modulus");
    let mut a = reduce_signed(a, n);
    let mut n = n;
    let mut sign = 1i8;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        a %= n;
    }
    if n == 1 {
        sign
    } else {
        0
    }
}

/// Legendre symbol `(a/p)` for an odd prime `p`.
#[inline]
pub fn legendre_symbol(a: i64, p: u64) -> i8 {
    let j = jacobi_symbol(a, p);
    debug_assert_eq!(j, legendre_euler(a, p));
    j
}

/// Square root modulo an odd prime by Tonelli-Shanks.
///
/// Returns the root in `[0, p/2]`, or `None` for a non-residue.
pub fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if legendre_euler(a as i64, p) != 1 {
        return None;
    }
    let root = if p % 4 == 3 {
        mod_pow(a, (p + 1) / 4, p)
    } else {
        let mut q = p - 1;
        let mut s = 0u32;
        while q % 2 == 0 {
            q /= 2;
            s += 1;
        }
        let z = (2..p)
            .find(|&z| legendre_euler(z as i64, p) == -1)
            .expect("odd prime has a non-residue");
        let mut m = s;
        let mut c = mod_pow(z, q, p);
        let mut t = mod_pow(a, q, p);
        let mut r = mod_pow(a, q.div_ceil(2), p);
        while t != 1 {
            let mut i = 0;
            let mut t2 = t;
            while t2 != 1 {
                t2 = mul_mod(t2, t2, p);
                i += 1;
            }
            let b = mod_pow(c, 1 << (m - i - 1), p);
            m = i;
            c = mul_mod(b, b, p);
            t = mul_mod(t, c, p);
            r = mul_mod(r, b, p);
        }
        r
    };
    Some(root.min(p - root))
}

/// A prime `p` together with the working modulus `p^e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeCtx {
    p: u64,
    e: u32,
    modulus: u64,
}

impl PrimeCtx {
    pub fn new(p: u64, e: u32) -> Result<Self> {
        if !(1..=3).contains(&e) {
            return Err(Error::BadExponent(e));
        }
        if !(5..PRIME_LIMIT).contains(&p) {
            return Err(Error::PrimeOutOfRange(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self {
            p,
            e,
            modulus: p.pow(e),
        })
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn e(&self) -> u32 {
        self.e
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Same prime, different exponent.
    pub fn with_exponent(&self, e: u32) -> Result<Self> {
        Self::new(self.p, e)
    }

    #[inline]
    pub fn reduce(&self, a: i64) -> u64 {
        reduce_signed(a, self.modulus)
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.modulus {
            s - self.modulus
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.modulus - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.modulus - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        mul_mod(a, b, self.modulus)
    }

    #[inline]
    pub fn pow(&self, a: u64, exp: u64) -> u64 {
        mod_pow(a, exp, self.modulus)
    }

    #[inline]
    pub fn inv(&self, a: u64) -> Result<u64> {
        mod_inv(a, self.modulus)
    }

    /// Multiply by a Legendre-symbol sign in `{-1, 0, 1}`.
    #[inline]
    pub fn signed(&self, sign: i8, a: u64) -> u64 {
        match sign {
            0 => 0,
            1 => a,
            _ => self.neg(a),
        }
    }

    #[inline]
    pub fn legendre(&self, a: i64) -> i8 {
        legendre_symbol(a, self.p)
    }

    /// Legendre symbol of a residue already reduced modulo `p^e`.
    #[inline]
    pub fn legendre_residue(&self, a: u64) -> i8 {
        legendre_symbol((a % self.p) as i64, self.p)
    }
}

/// A representation `target = a x^2 + b y^2` with `x, y >= 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct QuadFormWitness {
    pub a: u64,
    pub b: u64,
    pub x: u64,
    pub y: u64,
    pub target: u64,
}

impl QuadFormWitness {
    pub fn holds(&self) -> bool {
        self.a * self.x * self.x + self.b * self.y * self.y == self.target
    }
}

/// Smallest-`y` representation of `target` by `a x^2 + b y^2`.
pub fn represent(target: u64, a: u64, b: u64) -> Option<QuadFormWitness> {
    assert!(a > 0 && b > 0, "form coefficients must be positive");
    let mut y = 0u64;
    while b * y * y <= target {
        let rest = target - b * y * y;
        if rest % a == 0 {
            let sq = rest / a;
            let x = sq.isqrt();
            if x * x == sq {
                let w = QuadFormWitness { a, b, x, y, target };
                assert!(w.holds());
                return Some(w);
            }
        }
        y += 1;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pow_examples() {
        assert_eq!(mod_pow(2, 10, 1000), 24);
        assert_eq!(mod_pow(5, 0, 7), 1);
        assert_eq!(mod_pow(3, 6, 7), 1);
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(mod_inv(3, 7), Ok(5));
        assert_eq!(mod_inv(1, 1000), Ok(1));
        assert_eq!(
            mod_inv(3, 9),
            Err(Error::NotInvertible {
                value: 3,
                modulus: 9
            })
        );
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre_symbol(2, 7), 1);
        assert_eq!(legendre_symbol(1, 101), 1);
        assert_eq!(legendre_symbol(3, 5), -1);
        assert_eq!(legendre_symbol(-15, 5), 0);
        assert_eq!(legendre_symbol(-1, 13), 1);
        assert_eq!(legendre_symbol(-1, 11), -1);
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(sqrt_mod(2, 7), Some(3));
        assert_eq!(sqrt_mod(0, 13), Some(0));
        assert_eq!(sqrt_mod(3, 5), None);
        // p = 1 mod 8 exercises the full Tonelli-Shanks loop
        let r = sqrt_mod(2, 17).unwrap();
        assert_eq!(r * r % 17, 2);
        assert!(r <= 8);
    }

    #[test]
    fn represent_examples() {
        let w = represent(19, 1, 15).unwrap();
        assert_eq!((w.x, w.y), (2, 1));
        assert_eq!(represent(7, 1, 15), None);
        let w = represent(10, 1, 9).unwrap();
        assert_eq!((w.x, w.y), (1, 1));
    }

    #[test]
    fn primality_and_sieve_agree() {
        let sieved = primes_between(1, 5000);
        let tested: Vec<u64> = (1..=5000).filter(|&n| is_prime(n)).collect();
        assert_eq!(sieved, tested);
        assert_eq!(primes_between(5, 30), vec![5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(primes_between(70_000, 70_100).len(), 10);
        assert!(is_prime(PRIME_LIMIT - 3));
        assert!(!is_prime(3_215_031_751));
    }

    #[test]
    fn ctx_construction() {
        assert_eq!(PrimeCtx::new(7, 3).unwrap().modulus(), 343);
        assert_eq!(PrimeCtx::new(9, 1), Err(Error::NotPrime(9)));
        assert_eq!(PrimeCtx::new(3, 1), Err(Error::PrimeOutOfRange(3)));
        assert_eq!(PrimeCtx::new(7, 4), Err(Error::BadExponent(4)));
        assert_eq!(PrimeCtx::new(PRIME_LIMIT + 7, 1), Err(Error::PrimeOutOfRange(PRIME_LIMIT + 7)));
    }

    mod props {
        use super::super::*;
        use proptest::prelude::*;

        const SMALL_PRIMES: [u64; 10] = [5, 7, 11, 13, 17, 19, 97, 101, 7919, 1_048_573];

        proptest! {
            #[test]
            fn euler_matches_reciprocity(a in -100_000i64..100_000, i in 0usize..SMALL_PRIMES.len()) {
                let p = SMALL_PRIMES[i];
                prop_assert_eq!(legendre_euler(a, p), jacobi_symbol(a, p));
            }

            #[test]
            fn legendre_is_multiplicative(a in -10_000i64..10_000, b in -10_000i64..10_000, i in 0usize..SMALL_PRIMES.len()) {
                let p = SMALL_PRIMES[i];
                prop_assert_eq!(legendre_symbol(a * b, p), legendre_symbol(a, p) * legendre_symbol(b, p));
            }

            #[test]
            fn sqrt_squares_back(a in 0u64..1_000_000, i in 0usize..SMALL_PRIMES.len()) {
                let p = SMALL_PRIMES[i];
                match sqrt_mod(a, p) {
                    Some(r) => {
                        prop_assert_eq!(mul_mod(r, r, p), a % p);
                        prop_assert!(r <= p / 2);
                    }
                    None => prop_assert_eq!(legendre_euler(a as i64, p), -1),
                }
            }

            #[test]
            fn inverse_is_inverse(a in 0u64..1_000_000_000, m in 2u64..1_000_000_000) {
                if let Ok(b) = mod_inv(a, m) {
                    prop_assert_eq!(mul_mod(a, b, m), 1);
                } else {
                    prop_assert!(num_integer::gcd(a, m) > 1);
                }
            }

            #[test]
            fn representation_holds(n in 1u64..20_000, a in 1u64..4, b in 1u64..16) {
                if let Some(w) = represent(n, a, b) {
                    prop_assert!(w.holds());
                    // no smaller y works
                    for y in 0..w.y {
                        let rest = n - b * y * y;
                        prop_assert!(rest % a != 0 || (rest / a).isqrt().pow(2) != rest / a);
                    }
                }
            }
        }
    }
}
