//! Machine-readable descriptions of congruence statements.

use std::fmt;

use crate::error::{Error, Result};
use crate::modarith::{represent, PrimeCtx, QuadFormWitness};

use super::kernel::SumTerm;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Theorem,
    Conjecture,
}

/// `p mod modulus` lies in `residues`.
#[derive(Debug, Clone, Copy)]
pub struct Classes {
    pub modulus: u64,
    pub residues: &'static [u64],
}

impl Classes {
    pub const fn new(modulus: u64, residues: &'static [u64]) -> Self {
        Self { modulus, residues }
    }

    pub fn contains(&self, p: u64) -> bool {
        self.residues.contains(&(p % self.modulus))
    }
}

impl fmt::Display for Classes {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rs: Vec<String> = self.residues.iter().map(u64::to_string).collect();
        write!(f, "p = {} mod {}", rs.join(","), self.modulus)
    }
}

/// A residue parameter ranging over `F_p`.
#[derive(Debug, Clone, Copy)]
pub struct Param {
    pub name: &'static str,
    /// Whether the value is admissible modulo `p`.
    pub admissible: fn(&PrimeCtx, u64) -> bool,
    pub condition: &'static str,
}

/// Right-hand value of one case row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseValue {
    Zero,
    /// `x2 * x^2 + p_coeff * p`, where `target = a x^2 + b y^2` and the
    /// target is `p`, or `2p` when `doubled`.
    Form {
        a: u64,
        b: u64,
        doubled: bool,
        x2: i64,
        p_coeff: i64,
    },
}

impl CaseValue {
    pub const fn form(a: u64, b: u64, x2: i64, p_coeff: i64) -> Self {
        CaseValue::Form {
            a,
            b,
            doubled: false,
            x2,
            p_coeff,
        }
    }

    pub const fn doubled_form(a: u64, b: u64, x2: i64, p_coeff: i64) -> Self {
        CaseValue::Form {
            a,
            b,
            doubled: true,
            x2,
            p_coeff,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct CaseRow {
    pub classes: Classes,
    pub value: CaseValue,
}

/// A closed-form right side selected by the residue class of `p`.
#[derive(Debug, Clone)]
pub struct CaseTable {
    pub rows: Vec<CaseRow>,
}

impl CaseTable {
    /// The expected residue modulo `ctx.modulus()` and the representation used,
    /// or `None` when no row covers `p`.
    pub fn expected(&self, ctx: &PrimeCtx) -> Result<Option<(u64, Option<QuadFormWitness>)>> {
        let p = ctx.p();
        let Some(row) = self.rows.iter().find(|r| r.classes.contains(p)) else {
            return Ok(None);
        };
        match row.value {
            CaseValue::Zero => Ok(Some((0, None))),
            CaseValue::Form {
                a,
                b,
                doubled,
                x2,
                p_coeff,
            } => {
                let target = if doubled { 2 * p } else { p };
                let w = represent(target, a, b).ok_or(Error::NoRepresentation { target, a, b })?;
                let x_sq = ctx.reduce((w.x * w.x) as i64);
                let value = ctx.add(ctx.mul(ctx.reduce(x2), x_sq), ctx.mul(ctx.reduce(p_coeff), p % ctx.modulus()));
                Ok(Some((value, Some(w))))
            }
        }
    }
}

/// What a chain of congruent sums must additionally equal.
#[derive(Debug, Clone)]
pub enum Target {
    /// The chain members agree with one another.
    Chain,
    /// They are all `0`.
    Zero,
    /// They equal the case table's value.
    Table(CaseTable),
}

/// One congruence `s_1 = s_2 = ... (= target) mod p^power`, active for primes
/// in `classes`.
#[derive(Debug, Clone)]
pub struct Clause {
    pub classes: Option<Classes>,
    pub power: u32,
    pub chain: Vec<SumTerm>,
    pub target: Target,
}

impl Clause {
    pub fn applies(&self, p: u64) -> bool {
        self.classes.is_none_or(|c| c.contains(p))
    }
}

#[derive(Debug, Clone)]
pub struct StatementSpec {
    pub id: &'static str,
    pub kind: Kind,
    /// Smallest admissible prime.
    pub min_prime: u64,
    pub excluded_primes: &'static [u64],
    pub classes: Option<Classes>,
    pub param: Option<Param>,
    pub clauses: Vec<Clause>,
}

impl StatementSpec {
    /// Largest modulus power among the clauses.
    pub fn modulus_power(&self) -> u32 {
        self.clauses.iter().map(|c| c.power).max().unwrap_or(1)
    }

    /// Why `p` falls outside the hypotheses, if it does.
    pub fn prime_gate(&self, p: u64) -> Option<String> {
        if p < self.min_prime {
            return Some(format!("requires p >= {}", self.min_prime));
        }
        if self.excluded_primes.contains(&p) {
            return Some(format!("p = {p} is excluded"));
        }
        if let Some(c) = self.classes {
            if !c.contains(p) {
                return Some(format!("requires {c}"));
            }
        }
        if !self.clauses.iter().any(|c| c.applies(p)) {
            return Some("no clause applies to this residue class".to_string());
        }
        None
    }

    pub fn describe(&self) -> String {
        let mut out = format!("{} ({:?})", self.id, self.kind);
        if let Some(c) = self.classes {
            out += &format!(" for {c}");
        }
        if let Some(param) = self.param {
            out += &format!(", parameter {} with {}", param.name, param.condition);
        }
        for clause in &self.clauses {
            out += "\n  ";
            if let Some(c) = clause.classes {
                out += &format!("[{c}] ");
            }
            let sums: Vec<String> = clause.chain.iter().map(ToString::to_string).collect();
            out += &sums.join("\n    = ");
            match &clause.target {
                Target::Chain => {}
                Target::Zero => out += "\n    = 0",
                Target::Table(_) => out += "\n    = case table",
            }
            out += &format!("  (mod p^{})", clause.power);
        }
        out
    }
}
