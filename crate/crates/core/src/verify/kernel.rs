//! Truncated sums `factor * sum_{k=0}^{bound} kernel(k) * arg^k` modulo `p^e`.

use std::fmt;
use std::sync::OnceLock;

use crate::modarith::PrimeCtx;
use crate::padic::{FactTable, PadicScaled};
use crate::sequences::{seq_prefix_mod, SeqId};

/// Integer-valued summands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kernel {
    /// `C(2k,k)^3`
    CentralCubed,
    /// `C(2k,k) C(3k,k) C(6k,3k)`
    CentralTripleSextic,
    /// `C(2k,k)^2 C(3k,k)`
    CentralSquaredTriple,
    /// `C(2k,k)^2 C(4k,2k)`
    CentralSquaredQuartic,
    /// `C(2k,k) a_k`
    CentralTimesSmallA,
    /// One of the sequences, indexed by the summation variable.
    Seq(SeqId),
}

impl Kernel {
    pub const ALL: [Kernel; 9] = [
        Kernel::CentralCubed,
        Kernel::CentralTripleSextic,
        Kernel::CentralSquaredTriple,
        Kernel::CentralSquaredQuartic,
        Kernel::CentralTimesSmallA,
        Kernel::Seq(SeqId::BigA),
        Kernel::Seq(SeqId::SmallA),
        Kernel::Seq(SeqId::SmallB),
        Kernel::Seq(SeqId::FourthPowers),
    ];

    fn slot(self) -> usize {
        match self {
            Kernel::CentralCubed => 0,
            Kernel::CentralTripleSextic => 1,
            Kernel::CentralSquaredTriple => 2,
            Kernel::CentralSquaredQuartic => 3,
            Kernel::CentralTimesSmallA => 4,
            Kernel::Seq(SeqId::BigA) => 5,
            Kernel::Seq(SeqId::SmallA) => 6,
            Kernel::Seq(SeqId::SmallB) => 7,
            Kernel::Seq(SeqId::FourthPowers) => 8,
        }
    }

    /// The binomials `(n, k)` whose product is the kernel at index `k`.
    pub fn binomials(self, k: u64) -> Vec<(u64, u64)> {
        match self {
            Kernel::CentralCubed => vec![(2 * k, k); 3],
            Kernel::CentralTripleSextic => vec![(2 * k, k), (3 * k, k), (6 * k, 3 * k)],
            Kernel::CentralSquaredTriple => vec![(2 * k, k), (2 * k, k), (3 * k, k)],
            Kernel::CentralSquaredQuartic => vec![(2 * k, k), (2 * k, k), (4 * k, 2 * k)],
            Kernel::CentralTimesSmallA => vec![(2 * k, k)],
            Kernel::Seq(_) => vec![],
        }
    }
}

impl fmt::Display for Kernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kernel::CentralCubed => f.write_str("C(2k,k)^3"),
            Kernel::CentralTripleSextic => f.write_str("C(2k,k)C(3k,k)C(6k,3k)"),
            Kernel::CentralSquaredTriple => f.write_str("C(2k,k)^2C(3k,k)"),
            Kernel::CentralSquaredQuartic => f.write_str("C(2k,k)^2C(4k,2k)"),
            Kernel::CentralTimesSmallA => f.write_str("C(2k,k)a_k"),
            Kernel::Seq(id) => write!(f, "{id}_k"),
        }
    }
}

/// Upper summation limit as a function of `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Bound {
    /// `floor(p/6)`
    Sixth,
    /// `(p-1)/2`
    Half,
    /// `p-1`
    Full,
}

impl Bound {
    pub fn top(self, p: u64) -> u64 {
        match self {
            Bound::Sixth => p / 6,
            Bound::Half => (p - 1) / 2,
            Bound::Full => p - 1,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Bound::Sixth => "[p/6]",
            Bound::Half => "(p-1)/2",
            Bound::Full => "p-1",
        }
    }
}

/// A rational function of the statement parameter, evaluated modulo `p^e`.
/// `None` when a denominator is not a unit.
pub type ParamMap = fn(&PrimeCtx, u64) -> Option<u64>;

/// An integer function of the statement parameter whose Legendre symbol
/// multiplies a sum.
pub type ParamSymbol = fn(i64) -> i64;

/// The ratio between consecutive summands' argument powers.
#[derive(Debug, Clone, Copy)]
pub enum Arg {
    /// `1/base`
    Recip(i64),
    /// Parameter-dependent argument, with a printable form.
    Map(ParamMap, &'static str),
}

/// Sign in front of a sum.
#[derive(Debug, Clone, Copy)]
pub enum Factor {
    One,
    /// `(a/p)`
    Legendre(i64),
    /// `(p/3)`
    POverThree,
    /// `(f(param)/p)`
    ParamLegendre(ParamSymbol, &'static str),
}

impl Factor {
    pub fn sign(&self, ctx: &PrimeCtx, param: Option<u64>) -> i8 {
        match *self {
            Factor::One => 1,
            Factor::Legendre(a) => ctx.legendre(a),
            Factor::POverThree => {
                if ctx.p() % 3 == 1 {
                    1
                } else {
                    -1
                }
            }
            Factor::ParamLegendre(f, _) => {
                let v = param.expect("parameterised factor needs a parameter") as i64;
                ctx.legendre(f(v).rem_euclid(ctx.p() as i64))
            }
        }
    }
}

/// `factor * sum_{k=0}^{bound} kernel(k) * arg^k`.
#[derive(Debug, Clone, Copy)]
pub struct SumTerm {
    pub factor: Factor,
    pub kernel: Kernel,
    pub bound: Bound,
    pub arg: Arg,
}

impl SumTerm {
    pub const fn new(kernel: Kernel, bound: Bound, arg: Arg) -> Self {
        Self {
            factor: Factor::One,
            kernel,
            bound,
            arg,
        }
    }

    pub const fn with_factor(mut self, factor: Factor) -> Self {
        self.factor = factor;
        self
    }

    /// The argument residue, or a reason it is undefined modulo `p`.
    pub fn arg_residue(&self, ctx: &PrimeCtx, param: Option<u64>) -> Result<u64, String> {
        match self.arg {
            Arg::Recip(base) => ctx
                .inv(ctx.reduce(base))
                .map_err(|_| format!("base {base} is divisible by p")),
            Arg::Map(f, label) => {
                let v = param.expect("parameterised argument needs a parameter");
                f(ctx, v).ok_or_else(|| format!("argument {label} undefined at parameter {v}"))
            }
        }
    }

    /// Fast modular evaluation.
    pub fn eval(&self, data: &PrimeData, param: Option<u64>) -> Result<u64, String> {
        let ctx = data.ctx();
        let arg = self.arg_residue(ctx, param)?;
        let values = data.kernel_values(self.kernel);
        let top = self.bound.top(ctx.p()) as usize;
        let sum = values[..=top]
            .iter()
            .rev()
            .fold(0, |acc, &v| ctx.add(ctx.mul(acc, arg), v));
        Ok(ctx.signed(self.factor.sign(ctx, param), sum))
    }
}

impl fmt::Display for SumTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.factor {
            Factor::One => {}
            Factor::Legendre(a) => write!(f, "({a}/p) ")?,
            Factor::POverThree => f.write_str("(p/3) ")?,
            Factor::ParamLegendre(_, label) => write!(f, "({label}/p) ")?,
        }
        write!(f, "sum_{{k=0}}^{{{}}} {}", self.bound.label(), self.kernel)?;
        match self.arg {
            Arg::Recip(1) => Ok(()),
            Arg::Recip(b) if b < 0 => write!(f, " / ({b})^k"),
            Arg::Recip(b) => write!(f, " / {b}^k"),
            Arg::Map(_, label) => write!(f, " ({label})^k"),
        }
    }
}

/// Everything a check needs at one prime: the modulus, the factorial table
/// and lazily filled kernel tables for `k = 0..p`.
#[derive(Debug)]
pub struct PrimeData {
    table: FactTable,
    kernels: [OnceLock<Vec<u64>>; 9],
}

impl PrimeData {
    pub fn new(ctx: &PrimeCtx) -> Self {
        Self {
            table: FactTable::build(ctx),
            kernels: Default::default(),
        }
    }

    pub fn ctx(&self) -> &PrimeCtx {
        self.table.ctx()
    }

    pub fn table(&self) -> &FactTable {
        &self.table
    }

    /// Kernel residues modulo `p^e` for `k = 0..p`.
    pub fn kernel_values(&self, kernel: Kernel) -> &[u64] {
        self.kernels[kernel.slot()].get_or_init(|| self.compute(kernel))
    }

    fn compute(&self, kernel: Kernel) -> Vec<u64> {
        let ctx = *self.ctx();
        let len = ctx.p() as usize;
        match kernel {
            Kernel::Seq(id) => seq_prefix_mod(id, len, &ctx),
            Kernel::CentralTimesSmallA => {
                let a = self.kernel_values(Kernel::Seq(SeqId::SmallA));
                (0..len)
                    .map(|k| ctx.mul(self.table.binom_residue(2 * k as u64, k as u64), a[k]))
                    .collect()
            }
            _ => (0..len as u64)
                .map(|k| {
                    kernel
                        .binomials(k)
                        .into_iter()
                        .fold(PadicScaled::ONE, |acc, (n, r)| acc.mul(self.table.binom(n, r), &ctx))
                        .to_residue(&ctx)
                })
                .collect(),
        }
    }
}
