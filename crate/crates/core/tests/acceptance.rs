//! One line per acceptance criterion; exits non-zero if any fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use partcat::analyzer::{analyze, COLOR_PAIRS};
use partcat::closure::{closure, detect_case, Case, ClosureOptions, FOUR_BLOCK, SINGLETONS};
use partcat::ops::Conventions;
use partcat::qspace::{check_axioms, classify, consistent_rows, instantiate, QDescriptor, QRow};
use partcat::verify::{observed_families, run_check, Budget, CheckId, Config, Status};
use partcat::{IntSet, Partition};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Exhaustive checks run on every partition up to this size.
const POINTS: usize = 6;
const CLOSURE_CAP: usize = 6;
const ARITH_WINDOW: i64 = 120;
const CHI_SAMPLES: usize = 500;
const DESCRIPTORS_PER_ROW: usize = 20;

type Verdict = Result<String, String>;

fn cfg() -> Config {
    Config {
        budget: Budget { points: POINTS, cap_lo: 4, cap_hi: CLOSURE_CAP, samples: CHI_SAMPLES, window: ARITH_WINDOW, ..Budget::default() },
        ..Config::default()
    }
}

fn passing(ids: &[CheckId], cfg: &Config) -> Verdict {
    let mut notes = Vec::new();
    for &id in ids {
        let r = run_check(id, cfg);
        if r.status != Status::Pass {
            return Err(format!("{r}"));
        }
        notes.push(format!("{} over {} instances", id, r.instances));
    }
    Ok(notes.join(", "))
}

fn set(v: &[i64]) -> BTreeSet<i64> {
    v.iter().copied().collect()
}

fn p(s: &str) -> Partition {
    s.parse().expect("valid literal")
}

fn criterion_1() -> Verdict {
    let r = run_check(CheckId::ProjectionPpStar, &cfg());
    match r.status {
        Status::Pass if r.instances >= 10_000 => Ok(format!("{} projections checked", r.instances)),
        _ => Err(format!("{r}")),
    }
}

fn criterion_2() -> Verdict {
    passing(&[CheckId::DeltaAntisymModSigma, CheckId::EraseTurnDelta], &cfg())
}

fn criterion_3() -> Verdict {
    let z = analyze(&[p("-:wb:[l1 l2]")]);
    let expected = [set(&[2]), set(&[0]), set(&[0]), set(&[]), set(&[0]), set(&[])];
    let got: Vec<BTreeSet<i64>> = z.components().into_iter().cloned().collect();
    let (wb, bw) = (COLOR_PAIRS[1], COLOR_PAIRS[2]);
    if got == expected && z.kcc[&wb] == set(&[0]) && z.kcc[&bw] == set(&[0]) {
        Ok("Z of the unit pair matches exactly".into())
    } else {
        Err(z.report(true).replace('\n', "; "))
    }
}

fn criterion_4() -> Verdict {
    passing(&[CheckId::ChiLemma], &cfg())
}

fn criterion_5() -> Verdict {
    passing(&[CheckId::ArithmeticForwardAndFuzz], &cfg())
}

fn random_descriptor(row: QRow, rng: &mut ChaCha8Rng) -> QDescriptor {
    let p = row.params();
    let mut q = QDescriptor::new(row);
    let m = rng.gen_range(1..=10);
    if p.m {
        q.m = Some(m);
        if q.d.is_none() {
            q.d = Some(IntSet::finite((0..=m / 2).filter(|_| rng.gen_bool(0.5))));
        }
    }
    if p.u {
        q.u = Some(rng.gen_range(0..=4));
    }
    if p.e {
        let e = IntSet::finite((0..=8).filter(|_| rng.gen_bool(0.5)));
        q.e = Some(if rng.gen_bool(0.5) { e.union(&IntSet::ray_up(rng.gen_range(9..14))) } else { e });
    }
    if p.n {
        let k = rng.gen_range(0..=3);
        q.n = Some((0..k).map(|_| rng.gen_range(1..=12)).collect());
    }
    q
}

fn criterion_6() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut n = 0;
    for row in QRow::ALL {
        for _ in 0..DESCRIPTORS_PER_ROW {
            let q = random_descriptor(row, &mut rng);
            let t = instantiate(&q).map_err(|e| format!("{q}: {e}"))?;
            let back = classify(&t).ok_or_else(|| format!("{q} gives {t}, which is unclassified"))?;
            if back.row != q.row || instantiate(&back).ok().as_ref() != Some(&t) {
                return Err(format!("{q} classifies as {back}"));
            }
            n += 1;
        }
    }
    Ok(format!("{n} descriptors across all 14 rows"))
}

struct Sample {
    case: Case,
    z: partcat::analyzer::ZData,
    detected: Case,
}

fn closures() -> Vec<Sample> {
    [(Case::O, vec![]), (Case::B, vec![p(SINGLETONS)]), (Case::S, vec![p(FOUR_BLOCK), p(SINGLETONS)])]
        .into_iter()
        .map(|(case, gens)| {
            let c = closure(&gens, ClosureOptions::new(CLOSURE_CAP)).expect("closure runs");
            Sample { case, z: analyze(&c.members), detected: detect_case(&c.members) }
        })
        .collect()
}

fn criterion_7(samples: &[Sample]) -> Verdict {
    for s in samples {
        let f = &s.z.f;
        let ok = s.detected == s.case
            && match s.case {
                Case::O => *f == set(&[2]),
                Case::B => *f == set(&[1, 2]),
                _ => f.is_superset(&set(&[1, 2, 3])) && s.z.l.contains(&0),
            };
        if !ok {
            return Err(format!("expected case {}, detected {} with F = {:?}, L = {:?}", s.case, s.detected, f, s.z.l));
        }
    }
    Ok("cases O, B, S detected with the predicted F-data".into())
}

fn criterion_8(samples: &[Sample]) -> Verdict {
    for s in samples {
        let (sigma, k, x, w) = observed_families(&s.z);
        let v = check_axioms(&sigma, &k, &x, w);
        if let Some(first) = v.first() {
            return Err(format!("case {}: {first}", s.case));
        }
    }
    Ok("zero violations on all three closures".into())
}

fn criterion_9(samples: &[Sample]) -> Verdict {
    let mut counts = Vec::new();
    for s in samples {
        let rows = consistent_rows(&s.z, 2);
        if rows.is_empty() {
            return Err(format!("case {}: no consistent row", s.case));
        }
        if s.case == Case::O {
            if let Some(q) = rows.iter().find(|q| q.row.f() != IntSet::singleton(2)) {
                return Err(format!("case O admits {q}"));
            }
        }
        counts.push(format!("{}: {}", s.case, rows.len()));
    }
    Ok(format!("consistent rows {}", counts.join(", ")))
}

fn criterion_10() -> Verdict {
    let flipped = Config { conv: Conventions::FLIPPED, ..cfg() };
    let mut summary = Vec::new();
    let mut all_failed = true;
    for id in [CheckId::ProjectionPpStar, CheckId::VCases] {
        let r = run_check(id, &flipped);
        all_failed &= r.status == Status::Fail;
        summary.push(format!("{id} {}", r.status));
    }
    let line = format!("with flipped rotation colors: {}", summary.join(", "));
    if all_failed {
        Ok(line)
    } else {
        Err(line)
    }
}

fn main() -> ExitCode {
    let started = Instant::now();
    let samples = closures();
    let criteria: Vec<(usize, Box<dyn Fn() -> Verdict + '_>)> = vec![
        (1, Box::new(criterion_1)),
        (2, Box::new(criterion_2)),
        (3, Box::new(criterion_3)),
        (4, Box::new(criterion_4)),
        (5, Box::new(criterion_5)),
        (6, Box::new(criterion_6)),
        (7, Box::new(|| criterion_7(&samples))),
        (8, Box::new(|| criterion_8(&samples))),
        (9, Box::new(|| criterion_9(&samples))),
        (10, Box::new(criterion_10)),
    ];
    let mut failed = 0;
    for (n, run) in criteria {
        let t = Instant::now();
        let verdict = run();
        let ms = t.elapsed().as_millis();
        match verdict {
            Ok(note) => println!("criterion {n}: PASS ({ms} ms) {note}"),
            Err(why) => {
                failed += 1;
                println!("criterion {n}: FAIL ({ms} ms) {why}");
            }
        }
    }
    println!("acceptance: {} of 10 criteria pass in {:.1} s", 10 - failed, started.elapsed().as_secs_f64());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
