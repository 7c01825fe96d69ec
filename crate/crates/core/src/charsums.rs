//! Cubic character sums over `F_p` and the congruences linking them to
//! Legendre polynomials and truncated binomial sums.

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rayon::prelude::*;

use crate::error::Result;
use crate::modarith::{primes_between, PrimeCtx};
use crate::sequences::legendre_poly_mod;
use crate::verify::kernel::{Kernel, PrimeData};
use crate::verify::{CheckOutcome, Status};

/// Quadratic character of every residue mod `p`.
#[derive(Debug, Clone)]
pub struct QrTable {
    p: u64,
    chi: Vec<i8>,
}

impl QrTable {
    pub fn new(p: u64) -> Self {
        let mut chi = vec![-1i8; p as usize];
        chi[0] = 0;
        for x in 1..=(p - 1) / 2 {
            chi[(x * x % p) as usize] = 1;
        }
        Self { p, chi }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn chi(&self, a: u64) -> i8 {
        self.chi[(a % self.p) as usize]
    }
}

/// The curve `y^2 = x^3 + m x + n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CubicParams {
    pub m: u64,
    pub n: u64,
}

/// `sum_x (x^3 + m x + n / p)`.
pub fn cubic_char_sum(table: &QrTable, params: CubicParams) -> i64 {
    let p = table.p();
    let (m, n) = (params.m % p, params.n % p);
    let s: i64 = (0..p)
        .map(|x| {
            let v = (x * x % p * x + m * x + n) % p;
            table.chi(v) as i64
        })
        .sum();
    assert!(s * s <= 4 * p as i64, "Hasse bound violated: {s} at p = {p}, {params:?}");
    s
}

/// `sum_x (a x + b / p)`.
pub fn affine_char_sum(table: &QrTable, a: u64, b: u64) -> i64 {
    let p = table.p();
    (0..p).map(|x| table.chi((a % p * x + b) % p) as i64).sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Bridge {
    /// `P_[p/3](t)` against a character sum.
    LegendreThird,
    /// `sum C(2k,k)^2 C(3k,k) ((1-t^2)/108)^k` against `P_[p/3](t)^2`.
    TripleSquare,
    /// `P_[p/4](t)` against a character sum.
    LegendreQuarter,
    /// `sum C(2k,k)^2 C(4k,2k) ((1-t^2)/256)^k` against `P_[p/4](t)^2`.
    QuarticSquare,
    /// Squared character sum against a sextic binomial sum.
    CubicSquare,
}

impl Bridge {
    pub const ALL: [Bridge; 5] = [
        Bridge::LegendreThird,
        Bridge::TripleSquare,
        Bridge::LegendreQuarter,
        Bridge::QuarticSquare,
        Bridge::CubicSquare,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Bridge::LegendreThird => "2.1",
            Bridge::TripleSquare => "2.2",
            Bridge::LegendreQuarter => "2.3",
            Bridge::QuarticSquare => "2.4",
            Bridge::CubicSquare => "2.5",
        }
    }
}

impl fmt::Display for Bridge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Bridge {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Bridge::ALL
            .into_iter()
            .find(|b| b.label() == s)
            .ok_or_else(|| format!("unknown bridge {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BridgeParam {
    T(u64),
    Curve(CubicParams),
}

/// Tables for bridge checks at one prime (exponent 1).
#[derive(Debug)]
pub struct BridgeData {
    data: PrimeData,
    qr: QrTable,
}

impl BridgeData {
    pub fn new(p: u64) -> Result<Self> {
        let ctx = PrimeCtx::new(p, 1)?;
        Ok(Self {
            data: PrimeData::new(&ctx),
            qr: QrTable::new(p),
        })
    }

    pub fn ctx(&self) -> &PrimeCtx {
        self.data.ctx()
    }

    pub fn qr(&self) -> &QrTable {
        &self.qr
    }

    fn truncated(&self, kernel: Kernel, top: u64, arg: u64) -> u64 {
        let ctx = self.ctx();
        self.data.kernel_values(kernel)[..=top as usize]
            .iter()
            .rev()
            .fold(0, |acc, &v| ctx.add(ctx.mul(acc, arg), v))
    }

    fn legendre_poly(&self, n: u64, t: u64) -> u64 {
        legendre_poly_mod(n, t, self.data.table())
    }
}

fn compare(lhs: u64, rhs: u64, p: u64) -> CheckOutcome {
    let pass = lhs == rhs;
    CheckOutcome {
        status: if pass { Status::Pass } else { Status::Fail },
        reason: (!pass).then(|| "sides differ mod p".to_string()),
        lhs: Some(lhs),
        rhs: Some(rhs),
        modulus: Some(p),
        witness: None,
    }
}

/// Evaluate both sides of a bridge congruence modulo `p`.
pub fn bridge_check(which: Bridge, bd: &BridgeData, param: BridgeParam) -> CheckOutcome {
    let ctx = *bd.ctx();
    let p = ctx.p();
    let signed = |s: i64| ctx.reduce(s);
    match (which, param) {
        (Bridge::CubicSquare, BridgeParam::Curve(c)) => {
            let (m, n) = (c.m % p, c.n % p);
            if m == 0 {
                return CheckOutcome::skipped("m = 0 mod p");
            }
            let s = cubic_char_sum(&bd.qr, CubicParams { m, n });
            let lhs = signed(s * s);
            // (4m^3 + 27n^2) / (12^3 * 4 m^3)
            let m3 = ctx.pow(m, 3);
            let num = ctx.add(ctx.mul(4, m3), ctx.mul(27, ctx.mul(n, n)));
            let den = match ctx.inv(ctx.mul(1728 * 4 % p, m3)) {
                Ok(d) => d,
                Err(_) => return CheckOutcome::skipped("12^3 * 4m^3 = 0 mod p"),
            };
            let sum = bd.truncated(Kernel::CentralTripleSextic, p / 6, ctx.mul(num, den));
            let sign = ctx.legendre(-3 * m as i64);
            compare(lhs, ctx.signed(sign, sum), p)
        }
        (Bridge::CubicSquare, BridgeParam::T(_)) | (_, BridgeParam::Curve(_)) => {
            CheckOutcome::skipped(format!("bridge {which} does not take this parameter"))
        }
        (_, BridgeParam::T(t)) => {
            let t = t % p;
            let ti = t as i64;
            let half = ctx.inv(2).expect("p odd");
            match which {
                Bridge::LegendreThird => {
                    let lhs = bd.legendre_poly(p / 3, t);
                    let m = ctx.reduce(3 * (4 * ti - 5));
                    let n = ctx.reduce(2 * (2 * ti * ti - 14 * ti + 11));
                    let s = cubic_char_sum(&bd.qr, CubicParams { m, n });
                    let p_over_3: i64 = if p % 3 == 1 { 1 } else { -1 };
                    compare(lhs, signed(-p_over_3 * s), p)
                }
                Bridge::LegendreQuarter => {
                    let lhs = bd.legendre_poly(p / 4, t);
                    let m = ctx.neg(ctx.mul(ctx.reduce(3 * (3 * ti + 5)), half));
                    let n = ctx.reduce(9 * ti + 7);
                    let s = cubic_char_sum(&bd.qr, CubicParams { m, n });
                    compare(lhs, signed(-(ctx.legendre(6) as i64) * s), p)
                }
                Bridge::TripleSquare | Bridge::QuarticSquare => {
                    let (kernel, den, n) = if which == Bridge::TripleSquare {
                        (Kernel::CentralSquaredTriple, 108, p / 3)
                    } else {
                        (Kernel::CentralSquaredQuartic, 256, p / 4)
                    };
                    let Ok(inv) = ctx.inv(den % p) else {
                        return CheckOutcome::skipped(format!("{den} = 0 mod p"));
                    };
                    let arg = ctx.mul(ctx.sub(1, ctx.mul(t, t)), inv);
                    let lhs = bd.truncated(kernel, (p - 1) / 2, arg);
                    let pt = bd.legendre_poly(n, t);
                    compare(lhs, ctx.mul(pt, pt), p)
                }
                Bridge::CubicSquare => unreachable!(),
            }
        }
    }
}

/// Parameters checked for a bridge at `p`: every `t`, or `pairs` distinct
/// random curves with `m != 0` drawn from a generator seeded by `(seed, p)`.
pub fn bridge_params(which: Bridge, p: u64, pairs: usize, seed: u64) -> Vec<BridgeParam> {
    match which {
        Bridge::CubicSquare => {
            let space = ((p - 1) * p) as usize;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ p.wrapping_mul(0x9e37_79b9_7f4a_7c15));
            let mut idx: Vec<usize> = rand::seq::index::sample(&mut rng, space, pairs.min(space)).into_vec();
            idx.sort_unstable();
            idx.into_iter()
                .map(|i| {
                    BridgeParam::Curve(CubicParams {
                        m: 1 + (i as u64) / p,
                        n: (i as u64) % p,
                    })
                })
                .collect()
        }
        _ => (0..p).map(BridgeParam::T).collect(),
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BridgeSummary {
    pub primes: u64,
    pub pass: u64,
    pub fail: u64,
    pub skipped: u64,
    /// `(p, parameter, outcome)` for every failure.
    pub failures: Vec<(u64, BridgeParam, CheckOutcome)>,
}

/// Check one bridge at every prime in `[lo, hi]`, in parallel over primes.
pub fn bridge_sweep(which: Bridge, lo: u64, hi: u64, pairs: usize, seed: u64) -> Result<BridgeSummary> {
    let primes = primes_between(lo.max(5), hi);
    let per_prime: Vec<(u64, Vec<(BridgeParam, CheckOutcome)>)> = primes
        .par_iter()
        .map(|&p| {
            let bd = BridgeData::new(p)?;
            let out = bridge_params(which, p, pairs, seed)
                .into_iter()
                .map(|param| (param, bridge_check(which, &bd, param)))
                .collect();
            Ok((p, out))
        })
        .collect::<Result<_>>()?;
    let mut summary = BridgeSummary {
        primes: primes.len() as u64,
        ..BridgeSummary::default()
    };
    for (p, outcomes) in per_prime {
        for (param, outcome) in outcomes {
            match outcome.status {
                Status::Pass => summary.pass += 1,
                Status::Skipped => summary.skipped += 1,
                Status::Fail => {
                    summary.fail += 1;
                    summary.failures.push((p, param, outcome));
                }
            }
        }
    }
    Ok(summary)
}
