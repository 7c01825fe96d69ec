//! Independent evaluation of statement sums with exact integers.
//!
//! Kernel values are built from multiplicative binomial recurrences and exact
//! sequence terms, without the valuation-tracked factorial tables, and every
//! sum is reduced only once at the end.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::modarith::PrimeCtx;
use crate::sequences::{big_to_residue, seq_exact_prefix, SeqId};

use super::kernel::{Arg, Kernel, SumTerm};
use super::statement::StatementSpec;

/// `C(a k, b k)` for `k = 0..len`.
fn binomial_column(a: u64, b: u64, len: usize) -> Vec<BigUint> {
    let mut out = Vec::with_capacity(len);
    let mut c = BigUint::one();
    for k in 0..len as u64 {
        out.push(c.clone());
        for i in 1..=a {
            c *= a * k + i;
        }
        let mut den = BigUint::one();
        for i in 1..=b {
            den *= b * k + i;
        }
        for i in 1..=a - b {
            den *= (a - b) * k + i;
        }
        c /= den;
    }
    out
}

/// Exact kernel values for `k = 0..len`.
pub fn exact_kernel(kernel: Kernel, len: usize) -> Result<Vec<BigInt>, String> {
    let product = |cols: &[&Vec<BigUint>]| -> Vec<BigInt> {
        (0..len)
            .map(|k| BigInt::from(cols.iter().fold(BigUint::one(), |acc, c| acc * &c[k])))
            .collect()
    };
    Ok(match kernel {
        Kernel::CentralCubed => {
            let c = binomial_column(2, 1, len);
            product(&[&c, &c, &c])
        }
        Kernel::CentralTripleSextic => product(&[
            &binomial_column(2, 1, len),
            &binomial_column(3, 1, len),
            &binomial_column(6, 3, len),
        ]),
        Kernel::CentralSquaredTriple => {
            let c = binomial_column(2, 1, len);
            product(&[&c, &c, &binomial_column(3, 1, len)])
        }
        Kernel::CentralSquaredQuartic => {
            let c = binomial_column(2, 1, len);
            product(&[&c, &c, &binomial_column(4, 2, len)])
        }
        Kernel::CentralTimesSmallA => {
            let a = seq_exact_prefix(SeqId::SmallA, len).map_err(|e| e.to_string())?;
            let c = binomial_column(2, 1, len);
            a.into_iter().zip(c).map(|(a, c)| a * BigInt::from(c)).collect()
        }
        Kernel::Seq(id) => seq_exact_prefix(id, len).map_err(|e| e.to_string())?,
    })
}

/// One sum modulo `ctx.modulus()`.
///
/// For `1/base` arguments this is `(sum K_k base^(B-k)) * base^(-B)`, an
/// integer identity; parameter arguments are raised exactly from their
/// residue representative.
pub fn exact_term(term: &SumTerm, ctx: &PrimeCtx, param: Option<u64>, kernel: &[BigInt]) -> Result<u64, String> {
    let modulus = ctx.modulus();
    let top = term.bound.top(ctx.p()) as usize;
    let sum = match term.arg {
        Arg::Recip(base) => {
            let inv = ctx
                .inv(ctx.reduce(base))
                .map_err(|_| format!("base {base} is divisible by p"))?;
            let base = BigInt::from(base);
            let mut acc = BigInt::zero();
            let mut power = BigInt::one();
            for k in (0..=top).rev() {
                acc += &kernel[k] * &power;
                power *= &base;
            }
            ctx.mul(big_to_residue(&acc, modulus), ctx.pow(inv, top as u64))
        }
        Arg::Map(..) => {
            let arg = BigInt::from(term.arg_residue(ctx, param)?);
            let mut acc = BigInt::zero();
            let mut power = BigInt::one();
            for value in &kernel[..=top] {
                acc += value * &power;
                power *= &arg;
            }
            big_to_residue(&acc, modulus)
        }
    };
    Ok(ctx.signed(term.factor.sign(ctx, param), sum))
}

/// Every chain value of every clause, modulo `p^e` with `e` the statement's
/// largest power. Mirrors [`super::fast_term_values`].
pub fn exact_term_values(spec: &StatementSpec, p: u64, param: Option<u64>) -> Result<Vec<Vec<u64>>, String> {
    let ctx = PrimeCtx::new(p, spec.modulus_power()).map_err(|e| e.to_string())?;
    let len = p as usize;
    let mut cache: Vec<(Kernel, Vec<BigInt>)> = Vec::new();
    let mut out = Vec::with_capacity(spec.clauses.len());
    for clause in &spec.clauses {
        if !clause.applies(p) {
            out.push(Vec::new());
            continue;
        }
        let mut values = Vec::with_capacity(clause.chain.len());
        for term in &clause.chain {
            let idx = match cache.iter().position(|(k, _)| *k == term.kernel) {
                Some(i) => i,
                None => {
                    cache.push((term.kernel, exact_kernel(term.kernel, len)?));
                    cache.len() - 1
                }
            };
            values.push(exact_term(term, &ctx, param, &cache[idx].1)?);
        }
        out.push(values);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::binomial;

    #[test]
    fn columns_match_direct_binomials() {
        let col = binomial_column(6, 3, 12);
        for (k, v) in col.iter().enumerate() {
            let k = k as i64;
            assert_eq!(BigInt::from(v.clone()), binomial(6 * k, 3 * k));
        }
        let col = binomial_column(3, 1, 12);
        assert_eq!(BigInt::from(col[4].clone()), binomial(12, 4));
    }

    #[test]
    fn kernel_small_values() {
        let v = exact_kernel(Kernel::CentralTripleSextic, 3).unwrap();
        // 1, 2*3*20, 6*15*924
        assert_eq!(v, vec![BigInt::from(1), BigInt::from(120), BigInt::from(83160)]);
        let v = exact_kernel(Kernel::CentralTimesSmallA, 3).unwrap();
        assert_eq!(v, vec![BigInt::from(1), BigInt::from(6), BigInt::from(90)]);
    }
}
