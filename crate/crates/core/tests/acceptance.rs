//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero when any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use supercong_core::charsums::{bridge_sweep, Bridge};
use supercong_core::modarith::{primes_between, PrimeCtx};
use supercong_core::sequences::{
    b_closed_forms, certificate31_check, lemma31_check, lemma41_check, recurrence_failures, CertSide, SeqId,
};
use supercong_core::series::{bailey_check, pochhammer_check, rogers_check, RogersIdentity};
use supercong_core::verify::oracle::exact_term_values;
use supercong_core::verify::{
    fast_term_values, registry, statement, sweep, Kind, ParamStrategy, PrimeData, Report, Status, SweepConfig,
};

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn identities() -> Verdict {
    let mut bad = Vec::new();
    let l31 = (0..=300).filter(|&n| !lemma31_check(n)).count();
    let l41 = (0..=300).filter(|&n| !lemma41_check(n)).count();
    let bforms = (0..=300u64)
        .filter(|&n| {
            let (x, y) = b_closed_forms(n);
            x != y
        })
        .count();
    let rec_a = recurrence_failures(SeqId::BigA, 1000).map_err(|e| e.to_string())?.len();
    let rec_small = recurrence_failures(SeqId::SmallA, 1000).map_err(|e| e.to_string())?.len();
    let mut cert = 0;
    let mut cert_checked = 0;
    for side in [CertSide::First, CertSide::Second] {
        for m in 0..=40 {
            for k in 0..=m {
                cert_checked += 1;
                if !certificate31_check(side, m, k).map_err(|e| e.to_string())? {
                    cert += 1;
                }
            }
        }
    }
    for (name, n) in [
        ("lemma A", l31),
        ("lemma a/b", l41),
        ("b forms", bforms),
        ("A recurrence", rec_a),
        ("a recurrence", rec_small),
        ("certificate", cert),
    ] {
        if n > 0 {
            bad.push(format!("{name}: {n} failures"));
        }
    }
    if bad.is_empty() {
        Ok(format!("301+301+301 indices, 2x1001 recurrences, {cert_checked} certificate points"))
    } else {
        Err(bad.join("; "))
    }
}

fn series() -> Verdict {
    let poch = pochhammer_check(40);
    let bailey = bailey_check(40).map_err(|e| e.to_string())?;
    let r33 = rogers_check(RogersIdentity::BigAGenerating, 40).map_err(|e| e.to_string())?;
    let r42 = rogers_check(RogersIdentity::SmallATransform, 40).map_err(|e| e.to_string())?;
    if poch && bailey && r33 && r42 {
        Ok("pochhammer, bailey, rogers 3.3 and 4.2 to order 40".into())
    } else {
        Err(format!("pochhammer={poch} bailey={bailey} rogers3.3={r33} rogers4.2={r42}"))
    }
}

fn bridges() -> Verdict {
    let mut notes = Vec::new();
    let mut failed = Vec::new();
    for which in Bridge::ALL {
        let s = bridge_sweep(which, 5, 499, 64, 0).map_err(|e| e.to_string())?;
        notes.push(format!("{which}: {} pass", s.pass));
        if s.fail > 0 || s.pass == 0 {
            failed.push(format!("{which}: {} failures, first {:?}", s.fail, s.failures.first()));
        }
    }
    if failed.is_empty() {
        Ok(notes.join(", "))
    } else {
        Err(failed.join("; "))
    }
}

fn run_sweeps(ids: &[&str], hi: u64, strategy: &ParamStrategy) -> Result<Vec<Report>, String> {
    ids.iter()
        .map(|id| {
            let spec = statement(id).map_err(|e| e.to_string())?;
            sweep(spec, 5, hi, strategy, &SweepConfig::default()).map_err(|e| e.to_string())
        })
        .collect()
}

fn summarize(reports: &[Report]) -> Verdict {
    let mut failed = Vec::new();
    let mut pass = 0;
    for r in reports {
        pass += r.totals.pass;
        if r.totals.fail > 0 || r.totals.pass == 0 {
            let first = r.failures().next().cloned();
            failed.push(format!("{}: {} failures, first {:?}", r.statement, r.totals.fail, first));
        }
        for res in &r.results {
            if let Some(w) = &res.witness {
                let target = w.form[0] * w.x * w.x + w.form[1] * w.y * w.y;
                if target != res.p && target != 2 * res.p {
                    failed.push(format!("{}: bad witness at p = {}", r.statement, res.p));
                }
            }
        }
    }
    if failed.is_empty() {
        Ok(format!("{} statements, {pass} passing instances", reports.len()))
    } else {
        Err(failed.join("; "))
    }
}

fn theorems() -> Verdict {
    let mut reports = run_sweeps(&["T2.1", "T2.2", "T2.3", "T3.1", "T4.1i", "T4.1ii"], 499, &ParamStrategy::All)?;
    reports.extend(run_sweeps(
        &["T3.2", "T3.3", "T3.4", "COR4.1", "COR4.2", "COR4.3"],
        9999,
        &ParamStrategy::All,
    )?);
    summarize(&reports)
}

fn conjectures() -> Verdict {
    let ids: Vec<&str> = registry()
        .iter()
        .filter(|s| s.kind == Kind::Conjecture)
        .map(|s| s.id)
        .collect();
    summarize(&run_sweeps(&ids, 2000, &ParamStrategy::All)?)
}

fn oracle_equivalence() -> Verdict {
    let specs = registry();
    let primes = primes_between(5, 97);
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut compared = 0;
    let mut attempts = 0;
    let mut mismatches = Vec::new();
    while compared < 500 {
        attempts += 1;
        if attempts > 100_000 {
            return Err(format!("only {compared} evaluable instances found"));
        }
        let spec = &specs[rng.gen_range(0..specs.len())];
        let p = primes[rng.gen_range(0..primes.len())];
        let param = spec.param.map(|_| rng.gen_range(0..p));
        let ctx = PrimeCtx::new(p, spec.modulus_power()).map_err(|e| e.to_string())?;
        if spec.prime_gate(p).is_some() {
            continue;
        }
        if let (Some(decl), Some(v)) = (spec.param, param) {
            if !(decl.admissible)(&ctx, v) {
                continue;
            }
        }
        let data = PrimeData::new(&ctx);
        let Ok(fast) = fast_term_values(spec, &data, param) else {
            continue;
        };
        let exact = exact_term_values(spec, p, param)?;
        compared += 1;
        if fast != exact {
            mismatches.push(format!("{} p={p} param={param:?}", spec.id));
        }
    }
    if mismatches.is_empty() {
        Ok(format!("{compared} instances, 0 mismatches"))
    } else {
        Err(format!("{} mismatches: {}", mismatches.len(), mismatches.join(", ")))
    }
}

fn determinism() -> Verdict {
    let cases = [
        ("T2.1", ParamStrategy::Random { count: 8, seed: 42 }),
        ("T4.1i", ParamStrategy::Auto { seed: 7 }),
        ("CJ4.3", ParamStrategy::All),
    ];
    for (id, strategy) in cases {
        let spec = statement(id).map_err(|e| e.to_string())?;
        let one = SweepConfig {
            jobs: Some(1),
            ..SweepConfig::default()
        };
        let many = SweepConfig {
            jobs: Some(4),
            ..SweepConfig::default()
        };
        let a = sweep(spec, 5, 600, &strategy, &one).map_err(|e| e.to_string())?;
        let b = sweep(spec, 5, 600, &strategy, &many).map_err(|e| e.to_string())?;
        let ja = serde_json::to_string(&a.without_timing()).map_err(|e| e.to_string())?;
        let jb = serde_json::to_string(&b.without_timing()).map_err(|e| e.to_string())?;
        if ja != jb {
            return Err(format!("{id}: reports differ"));
        }
        if a.results.iter().any(|r| r.status == Status::Fail) {
            return Err(format!("{id}: unexpected failure"));
        }
    }
    Ok("3 sweeps reproduced byte for byte across worker counts".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("identity suite", identities),
        ("series suite", series),
        ("bridge suite", bridges),
        ("theorem sweeps", theorems),
        ("conjecture evidence sweeps", conjectures),
        ("oracle equivalence", oracle_equivalence),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = run();
        let secs = start.elapsed().as_secs_f64();
        match verdict {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail}) [{secs:.1}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({detail}) [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
