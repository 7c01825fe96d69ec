//! The statement table.
//!
//! Constants are transcribed term by term: bases such as `12^3`, `66^3`,
//! `28^4` are written out as plain integers and `54000` is used as is.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::modarith::PrimeCtx;
use crate::sequences::SeqId;

use super::kernel::{Arg, Bound, Factor, Kernel, SumTerm};
use super::statement::{CaseRow, CaseTable, CaseValue, Classes, Clause, Kind, Param, StatementSpec, Target};

use Bound::{Full, Half, Sixth};
use Kernel::{CentralCubed, CentralSquaredQuartic, CentralSquaredTriple, CentralTimesSmallA, CentralTripleSextic};

const BIG_A: Kernel = Kernel::Seq(SeqId::BigA);
const SMALL_B: Kernel = Kernel::Seq(SeqId::SmallB);
const FOURTH: Kernel = Kernel::Seq(SeqId::FourthPowers);

fn ratio(ctx: &PrimeCtx, num: u64, den: u64) -> Option<u64> {
    ctx.inv(den).ok().map(|d| ctx.mul(num, d))
}

fn nonzero_mod_p(ctx: &PrimeCtx, x: i64) -> bool {
    x.rem_euclid(ctx.p() as i64) != 0
}

const fn recip(kernel: Kernel, bound: Bound, base: i64) -> SumTerm {
    SumTerm::new(kernel, bound, Arg::Recip(base))
}

fn clause(power: u32, chain: Vec<SumTerm>, target: Target) -> Clause {
    Clause {
        classes: None,
        power,
        chain,
        target,
    }
}

fn row(modulus: u64, residues: &'static [u64], value: CaseValue) -> CaseRow {
    CaseRow {
        classes: Classes::new(modulus, residues),
        value,
    }
}

fn table(rows: Vec<CaseRow>) -> Target {
    Target::Table(CaseTable { rows })
}

fn base(id: &'static str, kind: Kind, clauses: Vec<Clause>) -> StatementSpec {
    StatementSpec {
        id,
        kind,
        min_prime: 5,
        excluded_primes: &[],
        classes: None,
        param: None,
        clauses,
    }
}

// ---------------------------------------------------------------------------
// parameter maps

fn inv_param(ctx: &PrimeCtx, m: u64) -> Option<u64> {
    ratio(ctx, 1, m % ctx.modulus())
}

/// `m / (m-16)^3`
fn t21_first(ctx: &PrimeCtx, m: u64) -> Option<u64> {
    let d = ctx.pow(ctx.reduce(m as i64 - 16), 3);
    ratio(ctx, m % ctx.modulus(), d)
}

/// `m^2 / (256-m)^3`
fn t21_second(ctx: &PrimeCtx, m: u64) -> Option<u64> {
    let d = ctx.pow(ctx.reduce(256 - m as i64), 3);
    ratio(ctx, ctx.pow(m, 2), d)
}

/// `(1-t^2) / 108`
fn t22_lhs(ctx: &PrimeCtx, t: u64) -> Option<u64> {
    ratio(ctx, ctx.sub(1, ctx.pow(t, 2)), 108)
}

/// `(t-1)(t+1)^3 / (432 (4t-5)^3)`
fn t22_first(ctx: &PrimeCtx, t: u64) -> Option<u64> {
    let t = t as i64;
    let num = ctx.mul(ctx.reduce(t - 1), ctx.pow(ctx.reduce(t + 1), 3));
    ratio(ctx, num, ctx.mul(432, ctx.pow(ctx.reduce(4 * t - 5), 3)))
}

/// `(t+1)(1-t)^3 / (432 (4t+5)^3)`
fn t22_second(ctx: &PrimeCtx, t: u64) -> Option<u64> {
    let t = t as i64;
    let num = ctx.mul(ctx.reduce(t + 1), ctx.pow(ctx.reduce(1 - t), 3));
    ratio(ctx, num, ctx.mul(432, ctx.pow(ctx.reduce(4 * t + 5), 3)))
}

/// `(1-t^2) / 256`
fn t23_lhs(ctx: &PrimeCtx, t: u64) -> Option<u64> {
    ratio(ctx, ctx.sub(1, ctx.pow(t, 2)), 256)
}

/// `(t-1)^2 (t+1) / (64 (3t+5)^3)`
fn t23_first(ctx: &PrimeCtx, t: u64) -> Option<u64> {
    let t = t as i64;
    let num = ctx.mul(ctx.pow(ctx.reduce(t - 1), 2), ctx.reduce(t + 1));
    ratio(ctx, num, ctx.mul(64, ctx.pow(ctx.reduce(3 * t + 5), 3)))
}

/// `(t+1)^2 (t-1) / (64 (3t-5)^3)`
fn t23_second(ctx: &PrimeCtx, t: u64) -> Option<u64> {
    let t = t as i64;
    let num = ctx.mul(ctx.pow(ctx.reduce(t + 1), 2), ctx.reduce(t - 1));
    ratio(ctx, num, ctx.mul(64, ctx.pow(ctx.reduce(3 * t - 5), 3)))
}

fn identity_param(ctx: &PrimeCtx, u: u64) -> Option<u64> {
    Some(u % ctx.modulus())
}

/// `u^2 / (1-4u)^3`
fn t31_rhs(ctx: &PrimeCtx, u: u64) -> Option<u64> {
    ratio(ctx, ctx.pow(u, 2), ctx.pow(ctx.reduce(1 - 4 * u as i64), 3))
}

/// `u / (9 (1+u)^2)`
fn t41_lhs(ctx: &PrimeCtx, u: u64) -> Option<u64> {
    ratio(ctx, u % ctx.modulus(), ctx.mul(9, ctx.pow(ctx.reduce(1 + u as i64), 2)))
}

/// `u / (9 (1+3u)^4)`
fn t41_rhs(ctx: &PrimeCtx, u: u64) -> Option<u64> {
    ratio(ctx, u % ctx.modulus(), ctx.mul(9, ctx.pow(ctx.reduce(1 + 3 * u as i64), 4)))
}

/// `u^3 / (9 (3+u)^4)`
fn t41_dual(ctx: &PrimeCtx, u: u64) -> Option<u64> {
    ratio(ctx, ctx.pow(u, 3), ctx.mul(9, ctx.pow(ctx.reduce(3 + u as i64), 4)))
}

// ---------------------------------------------------------------------------
// recurring case tables

fn x2_plus_2y2(x2: i64, p_coeff: i64) -> Target {
    table(vec![
        row(8, &[1, 3], CaseValue::form(1, 2, x2, p_coeff)),
        row(8, &[5, 7], CaseValue::Zero),
    ])
}

fn x2_plus_6y2(second: (i64, i64), p_coeff: i64) -> Target {
    table(vec![
        row(24, &[1, 7], CaseValue::form(1, 6, 4, p_coeff)),
        row(24, &[5, 11], CaseValue::form(2, 3, second.0, second.1)),
        row(24, &[13, 17, 19, 23], CaseValue::Zero),
    ])
}

fn x2_plus_3y2() -> Target {
    table(vec![
        row(3, &[1], CaseValue::form(1, 3, 4, -2)),
        row(3, &[2], CaseValue::Zero),
    ])
}

fn x2_plus_9y2() -> Target {
    table(vec![
        row(12, &[1], CaseValue::form(1, 9, 4, -2)),
        row(12, &[5], CaseValue::doubled_form(1, 9, -2, 2)),
        row(4, &[3], CaseValue::Zero),
    ])
}

// ---------------------------------------------------------------------------

fn build() -> Vec<StatementSpec> {
    use Kind::{Conjecture, Theorem};
    let mut out = Vec::new();

    // transformations modulo p with a free residue parameter
    out.push(StatementSpec {
        param: Some(Param {
            name: "m",
            admissible: |ctx, m| {
                let m = m as i64;
                nonzero_mod_p(ctx, m) && nonzero_mod_p(ctx, m - 16) && nonzero_mod_p(ctx, m - 256)
            },
            condition: "m(m-16)(m-256) != 0 mod p",
        }),
        ..base(
            "T2.1",
            Theorem,
            vec![clause(
                1,
                vec![
                    SumTerm::new(CentralCubed, Half, Arg::Map(inv_param, "1/m")),
                    SumTerm::new(CentralTripleSextic, Sixth, Arg::Map(t21_first, "m/(m-16)^3"))
                        .with_factor(Factor::ParamLegendre(|m| m * (m - 16), "m(m-16)")),
                    SumTerm::new(CentralTripleSextic, Sixth, Arg::Map(t21_second, "m^2/(256-m)^3"))
                        .with_factor(Factor::ParamLegendre(|m| m * (m - 256), "m(m-256)")),
                ],
                Target::Chain,
            )],
        )
    });
    out.push(StatementSpec {
        param: Some(Param {
            name: "t",
            admissible: |ctx, t| {
                let t = t as i64;
                nonzero_mod_p(ctx, 4 * t - 5) && nonzero_mod_p(ctx, 4 * t + 5)
            },
            condition: "4t != +-5 mod p",
        }),
        ..base(
            "T2.2",
            Theorem,
            vec![clause(
                1,
                vec![
                    SumTerm::new(CentralSquaredTriple, Half, Arg::Map(t22_lhs, "(1-t^2)/108")),
                    SumTerm::new(CentralTripleSextic, Sixth, Arg::Map(t22_first, "(t-1)(t+1)^3/(432(4t-5)^3)"))
                        .with_factor(Factor::ParamLegendre(|t| 5 - 4 * t, "5-4t")),
                    SumTerm::new(CentralTripleSextic, Sixth, Arg::Map(t22_second, "(t+1)(1-t)^3/(432(4t+5)^3)"))
                        .with_factor(Factor::ParamLegendre(|t| 5 + 4 * t, "5+4t")),
                ],
                Target::Chain,
            )],
        )
    });
    out.push(StatementSpec {
        param: Some(Param {
            name: "t",
            admissible: |ctx, t| {
                let t = t as i64;
                nonzero_mod_p(ctx, 3 * t - 5) && nonzero_mod_p(ctx, 3 * t + 5)
            },
            condition: "3t != +-5 mod p",
        }),
        ..base(
            "T2.3",
            Theorem,
            vec![clause(
                1,
                vec![
                    SumTerm::new(CentralSquaredQuartic, Half, Arg::Map(t23_lhs, "(1-t^2)/256")),
                    SumTerm::new(CentralTripleSextic, Sixth, Arg::Map(t23_first, "(t-1)^2(t+1)/(64(3t+5)^3)"))
                        .with_factor(Factor::ParamLegendre(|t| 10 + 6 * t, "10+6t")),
                    SumTerm::new(CentralTripleSextic, Sixth, Arg::Map(t23_second, "(t+1)^2(t-1)/(64(3t-5)^3)"))
                        .with_factor(Factor::ParamLegendre(|t| 10 - 6 * t, "10-6t")),
                ],
                Target::Chain,
            )],
        )
    });
    out.push(StatementSpec {
        param: Some(Param {
            name: "u",
            admissible: |ctx, u| nonzero_mod_p(ctx, 4 * u as i64 - 1),
            condition: "u != 1/4 mod p",
        }),
        ..base(
            "T3.1",
            Theorem,
            vec![clause(
                1,
                vec![
                    SumTerm::new(BIG_A, Full, Arg::Map(identity_param, "u")),
                    SumTerm::new(CentralSquaredTriple, Full, Arg::Map(t31_rhs, "u^2/(1-4u)^3")),
                ],
                Target::Chain,
            )],
        )
    });

    // modulo p, closed forms through quadratic forms
    out.push(StatementSpec {
        classes: Some(Classes::new(5, &[1, 4])),
        ..base(
            "T3.2",
            Theorem,
            vec![clause(
                1,
                vec![recip(BIG_A, Full, 1)],
                table(vec![
                    row(15, &[1, 4], CaseValue::form(1, 15, 4, 0)),
                    row(15, &[11, 14], CaseValue::Zero),
                ]),
            )],
        )
    });
    out.push(StatementSpec {
        classes: Some(Classes::new(24, &[1, 7, 17, 23])),
        ..base(
            "T3.3",
            Theorem,
            vec![clause(
                1,
                vec![recip(BIG_A, Full, -8)],
                table(vec![
                    row(24, &[1, 7], CaseValue::form(1, 6, 4, 0)),
                    row(24, &[17, 23], CaseValue::Zero),
                ]),
            )],
        )
    });
    out.push(base(
        "T3.4",
        Theorem,
        vec![clause(1, vec![recip(BIG_A, Full, 8)], x2_plus_2y2(4, 0))],
    ));

    let t41_param = Param {
        name: "u",
        admissible: |ctx, u| {
            let u = u as i64;
            nonzero_mod_p(ctx, u) && nonzero_mod_p(ctx, u + 1) && nonzero_mod_p(ctx, 3 * u + 1)
        },
        condition: "u(u+1)(3u+1) != 0 mod p",
    };
    out.push(StatementSpec {
        param: Some(t41_param),
        ..base(
            "T4.1i",
            Theorem,
            vec![clause(
                1,
                vec![
                    SumTerm::new(CentralTimesSmallA, Full, Arg::Map(t41_lhs, "u/(9(1+u)^2)")),
                    SumTerm::new(CentralSquaredQuartic, Full, Arg::Map(t41_rhs, "u/(9(1+3u)^4)")),
                ],
                Target::Chain,
            )],
        )
    });
    out.push(StatementSpec {
        param: Some(Param {
            admissible: |ctx, u| {
                let v = u as i64;
                nonzero_mod_p(ctx, v)
                    && nonzero_mod_p(ctx, v + 1)
                    && nonzero_mod_p(ctx, 3 * v + 1)
                    && nonzero_mod_p(ctx, v + 3)
            },
            condition: "u(u+1)(3u+1) != 0 and u != -3 mod p",
            ..t41_param
        }),
        ..base(
            "T4.1ii",
            Theorem,
            vec![clause(
                1,
                vec![
                    SumTerm::new(CentralSquaredQuartic, Full, Arg::Map(t41_rhs, "u/(9(1+3u)^4)")),
                    SumTerm::new(CentralSquaredQuartic, Full, Arg::Map(t41_dual, "u^3/(9(3+u)^4)")),
                ],
                Target::Chain,
            )],
        )
    });

    out.push(StatementSpec {
        classes: Some(Classes::new(8, &[1, 7])),
        ..base(
            "COR4.1",
            Theorem,
            vec![clause(
                1,
                vec![recip(CentralTimesSmallA, Full, 36)],
                table(vec![
                    row(24, &[1, 7], CaseValue::form(1, 6, 4, 0)),
                    row(24, &[17, 23], CaseValue::Zero),
                ]),
            )],
        )
    });
    out.push(StatementSpec {
        min_prime: 11,
        ..base(
            "COR4.2",
            Theorem,
            vec![clause(
                1,
                vec![
                    recip(CentralTimesSmallA, Full, 100),
                    recip(CentralSquaredQuartic, Full, 614_656),
                ],
                x2_plus_2y2(4, 0),
            )],
        )
    });
    out.push(StatementSpec {
        classes: Some(Classes::new(12, &[1, 11])),
        ..base(
            "COR4.3",
            Theorem,
            vec![clause(
                1,
                vec![recip(CentralTimesSmallA, Full, -12)],
                table(vec![
                    row(12, &[1], CaseValue::form(1, 9, 4, 0)),
                    row(12, &[11], CaseValue::Zero),
                ]),
            )],
        )
    });

    // evidence modulo p^3
    out.push(StatementSpec {
        classes: Some(Classes::new(4, &[1])),
        ..base(
            "CJ2.1i",
            Conjecture,
            vec![clause(
                3,
                vec![
                    recip(CentralCubed, Half, 64),
                    recip(CentralTripleSextic, Full, 1728).with_factor(Factor::Legendre(3)),
                    recip(CentralTripleSextic, Full, 287_496).with_factor(Factor::Legendre(33)),
                ],
                Target::Chain,
            )],
        )
    });
    out.push(StatementSpec {
        classes: Some(Classes::new(7, &[1, 2, 4])),
        ..base(
            "CJ2.1ii",
            Conjecture,
            vec![clause(
                3,
                vec![
                    recip(CentralCubed, Half, 1),
                    recip(CentralTripleSextic, Full, -3375).with_factor(Factor::Legendre(-15)),
                    recip(CentralTripleSextic, Full, 16_581_375).with_factor(Factor::Legendre(-255)),
                ],
                Target::Chain,
            )],
        )
    });
    out.push(StatementSpec {
        classes: Some(Classes::new(8, &[1, 3])),
        ..base(
            "CJ2.1iii",
            Conjecture,
            vec![clause(
                3,
                vec![
                    recip(CentralCubed, Half, -64),
                    recip(CentralTripleSextic, Full, 8000).with_factor(Factor::Legendre(5)),
                ],
                Target::Chain,
            )],
        )
    });
    out.push(StatementSpec {
        classes: Some(Classes::new(3, &[1])),
        ..base(
            "CJ2.1iv",
            Conjecture,
            vec![clause(
                3,
                vec![
                    recip(CentralCubed, Half, 256),
                    recip(CentralTripleSextic, Full, 54_000).with_factor(Factor::Legendre(-5)),
                ],
                Target::Chain,
            )],
        )
    });
    out.push(base(
        "CJ3.1",
        Conjecture,
        vec![
            clause(
                3,
                vec![
                    recip(FOURTH, Full, 1),
                    recip(CentralSquaredTriple, Full, -27).with_factor(Factor::POverThree),
                ],
                Target::Chain,
            ),
            Clause {
                classes: Some(Classes::new(30, &[1, 17, 19, 23])),
                ..clause(
                    3,
                    vec![
                        recip(BIG_A, Full, 1),
                        recip(BIG_A, Full, 64),
                        recip(CentralSquaredTriple, Full, -27),
                    ],
                    Target::Chain,
                )
            },
        ],
    ));
    out.push(StatementSpec {
        min_prime: 7,
        ..base(
            "R3.2",
            Conjecture,
            vec![clause(
                2,
                vec![
                    recip(FOURTH, Full, 1).with_factor(Factor::POverThree),
                    recip(BIG_A, Full, 1),
                    recip(BIG_A, Full, 64),
                ],
                table(vec![
                    row(15, &[1, 4], CaseValue::form(1, 15, 4, -2)),
                    row(15, &[2, 8], CaseValue::form(3, 5, -12, 2)),
                    row(15, &[7, 11, 13, 14], CaseValue::Zero),
                ]),
            )],
        )
    });
    out.push(StatementSpec {
        classes: Some(Classes::new(24, &[1, 5, 7, 11])),
        ..base(
            "CJ3.2",
            Conjecture,
            vec![clause(
                3,
                vec![recip(BIG_A, Full, -8), recip(CentralSquaredTriple, Full, 216)],
                Target::Chain,
            )],
        )
    });
    out.push(base(
        "R3.3",
        Conjecture,
        vec![clause(2, vec![recip(BIG_A, Full, -8)], x2_plus_6y2((8, -2), -2))],
    ));
    out.push(StatementSpec {
        classes: Some(Classes::new(8, &[1, 3])),
        ..base(
            "CJ3.3",
            Conjecture,
            vec![clause(
                3,
                vec![recip(BIG_A, Full, 8), recip(CentralSquaredTriple, Full, 8)],
                Target::Chain,
            )],
        )
    });
    out.push(base(
        "R3.4",
        Conjecture,
        vec![clause(2, vec![recip(BIG_A, Full, 8)], x2_plus_2y2(4, -2))],
    ));
    out.push(StatementSpec {
        classes: Some(Classes::new(3, &[2])),
        ..base(
            "CJ3.4i",
            Conjecture,
            vec![clause(3, vec![recip(CentralSquaredTriple, Full, 1458)], Target::Zero)],
        )
    });
    out.push(base(
        "CJ3.4ii",
        Conjecture,
        vec![clause(
            3,
            vec![
                recip(BIG_A, Full, 4),
                recip(BIG_A, Full, -32),
                recip(CentralSquaredTriple, Full, 108).with_factor(Factor::POverThree),
            ],
            Target::Chain,
        )],
    ));
    out.push(StatementSpec {
        classes: Some(Classes::new(3, &[1])),
        ..base(
            "CJ3.4iii",
            Conjecture,
            vec![clause(
                3,
                vec![
                    recip(BIG_A, Full, -2),
                    recip(BIG_A, Full, 16),
                    recip(CentralSquaredTriple, Full, 108),
                    recip(CentralSquaredTriple, Full, 1458),
                    recip(CentralCubed, Full, 16),
                ],
                Target::Chain,
            )],
        )
    });
    out.push(base(
        "R3.5",
        Conjecture,
        vec![
            Clause {
                classes: Some(Classes::new(3, &[1])),
                ..clause(
                    3,
                    vec![
                        recip(CentralCubed, Full, 16),
                        recip(CentralCubed, Full, 256).with_factor(Factor::Legendre(-1)),
                        recip(CentralSquaredQuartic, Full, -144),
                    ],
                    Target::Chain,
                )
            },
            clause(
                2,
                vec![
                    recip(BIG_A, Full, -2),
                    recip(BIG_A, Full, 4),
                    recip(BIG_A, Full, 16),
                    recip(BIG_A, Full, -32),
                ],
                x2_plus_3y2(),
            ),
        ],
    ));

    // evidence modulo p^2 for a_n and b_n
    out.push(base(
        "CJ4.1",
        Conjecture,
        vec![clause(2, vec![recip(CentralTimesSmallA, Full, 36)], x2_plus_6y2((-8, 2), -2))],
    ));
    out.push(StatementSpec {
        min_prime: 7,
        ..base(
            "CJ4.2",
            Conjecture,
            vec![clause(2, vec![recip(CentralTimesSmallA, Full, 100)], x2_plus_2y2(4, -2))],
        )
    });
    out.push(StatementSpec {
        excluded_primes: &[7],
        ..base(
            "R4.2",
            Conjecture,
            vec![clause(2, vec![recip(CentralSquaredQuartic, Full, 614_656)], x2_plus_2y2(4, -2))],
        )
    });
    out.push(base(
        "CJ4.3",
        Conjecture,
        vec![clause(2, vec![recip(CentralTimesSmallA, Full, -12)], x2_plus_9y2())],
    ));
    out.push(base(
        "CJ4.4",
        Conjecture,
        vec![clause(
            2,
            vec![recip(SMALL_B, Full, 1), recip(SMALL_B, Full, 81)],
            x2_plus_2y2(4, -2),
        )],
    ));
    out.push(base(
        "CJ4.5",
        Conjecture,
        vec![clause(2, vec![recip(SMALL_B, Full, 9)], x2_plus_6y2((-8, 2), -2))],
    ));
    out.push(base(
        "CJ4.6",
        Conjecture,
        vec![clause(2, vec![recip(SMALL_B, Full, -9)], x2_plus_3y2())],
    ));
    out.push(base(
        "CJ4.7",
        Conjecture,
        vec![clause(
            2,
            vec![recip(SMALL_B, Full, -3), recip(SMALL_B, Full, -27)],
            x2_plus_9y2(),
        )],
    ));

    out
}

/// Every statement, theorems first.
pub fn registry() -> &'static [StatementSpec] {
    static REGISTRY: OnceLock<Vec<StatementSpec>> = OnceLock::new();
    REGISTRY.get_or_init(build)
}

pub fn statement(id: &str) -> Result<&'static StatementSpec> {
    registry()
        .iter()
        .find(|s| s.id == id)
        .ok_or_else(|| Error::UnknownStatement(id.to_string()))
}

pub fn statement_ids() -> Vec<&'static str> {
    registry().iter().map(|s| s.id).collect()
}

/// Resolve a list of ids, expanding `all-theorems`, `all-conjectures` and `all`.
pub fn resolve(ids: &[String]) -> Result<Vec<&'static StatementSpec>> {
    let mut out: Vec<&'static StatementSpec> = Vec::new();
    for id in ids {
        let group: Vec<&'static StatementSpec> = match id.as_str() {
            "all" => registry().iter().collect(),
            "all-theorems" => registry().iter().filter(|s| s.kind == Kind::Theorem).collect(),
            "all-conjectures" => registry().iter().filter(|s| s.kind == Kind::Conjecture).collect(),
            other => vec![statement(other)?],
        };
        for s in group {
            if !out.iter().any(|t| t.id == s.id) {
                out.push(s);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique_and_complete() {
        let ids = statement_ids();
        let expected = [
            "T2.1", "T2.2", "T2.3", "T3.1", "T3.2", "T3.3", "T3.4", "T4.1i", "T4.1ii", "COR4.1", "COR4.2",
            "COR4.3", "CJ2.1i", "CJ2.1ii", "CJ2.1iii", "CJ2.1iv", "CJ3.1", "R3.2", "CJ3.2", "R3.3", "CJ3.3",
            "R3.4", "CJ3.4i", "CJ3.4ii", "CJ3.4iii", "R3.5", "CJ4.1", "CJ4.2", "R4.2", "CJ4.3", "CJ4.4",
            "CJ4.5", "CJ4.6", "CJ4.7",
        ];
        assert_eq!(ids, expected);
    }

    #[test]
    fn groups_resolve() {
        let theorems = resolve(&["all-theorems".into()]).unwrap();
        assert_eq!(theorems.len(), 12);
        assert!(theorems.iter().all(|s| s.kind == Kind::Theorem));
        let conj = resolve(&["all-conjectures".into(), "CJ4.7".into()]).unwrap();
        assert_eq!(conj.len(), 22);
        assert_eq!(resolve(&["NOPE".into()]).unwrap_err(), Error::UnknownStatement("NOPE".into()));
    }

    #[test]
    fn moduli_powers() {
        assert_eq!(statement("T3.2").unwrap().modulus_power(), 1);
        assert_eq!(statement("R3.5").unwrap().modulus_power(), 3);
        assert_eq!(statement("CJ4.7").unwrap().modulus_power(), 2);
    }

    #[test]
    fn parameter_maps() {
        let ctx = PrimeCtx::new(7, 1).unwrap();
        // m = 3: 3/(3-16)^3 = 3/(-13)^3 = 3/1 mod 7 since -13 = 1
        assert_eq!(t21_first(&ctx, 3), Some(3));
        assert_eq!(t21_first(&ctx, 2), None);
        assert_eq!(t31_rhs(&ctx, 2), None); // 1 - 8 = -7
        assert_eq!(inv_param(&ctx, 0), None);
    }
}
