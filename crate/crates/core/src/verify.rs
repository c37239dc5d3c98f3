//! Desk-scale checks of the structural statements: exhaustive over small
//! partitions, sampled over integer sets, and on truncated closures.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::analyzer::{analyze, fmt_set, in_s0, ZData};
use crate::closure::{closure, detect_case, Case, ClosureOptions, FOUR_BLOCK, SINGLETONS};
use crate::error::{Error, Result};
use crate::intset::{chi_normal_form, IntSet};
use crate::ops::{
    all_turns, compose, equivalent, erase_turn, involution, is_projective, project_with, ConsecutiveSet, Conventions,
};
use crate::partition::{enumerate_up_to, Partition};
use crate::qspace::{
    arith_rows_matching, check_axioms, classify_arith, collapse, consistent_rows, family_from, instantiate_arith,
    ArithClass, ArithTuple, Family,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckId {
    ProjectionPpStar,
    DeltaAntisymModSigma,
    EraseTurnDelta,
    AxiomsOnClosures,
    SigmaSubgroup,
    FCases,
    VCases,
    CaseSZeroL,
    ChiLemma,
    ArithmeticForwardAndFuzz,
    MainTheoremConsistency,
    S0Membership,
}

impl CheckId {
    pub const ALL: [CheckId; 12] = [
        CheckId::ProjectionPpStar,
        CheckId::DeltaAntisymModSigma,
        CheckId::EraseTurnDelta,
        CheckId::AxiomsOnClosures,
        CheckId::SigmaSubgroup,
        CheckId::FCases,
        CheckId::VCases,
        CheckId::CaseSZeroL,
        CheckId::ChiLemma,
        CheckId::ArithmeticForwardAndFuzz,
        CheckId::MainTheoremConsistency,
        CheckId::S0Membership,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckId::ProjectionPpStar => "projection_pp_star",
            CheckId::DeltaAntisymModSigma => "delta_antisym_mod_sigma",
            CheckId::EraseTurnDelta => "erase_turn_delta",
            CheckId::AxiomsOnClosures => "axioms_on_closures",
            CheckId::SigmaSubgroup => "sigma_subgroup",
            CheckId::FCases => "f_cases",
            CheckId::VCases => "v_cases",
            CheckId::CaseSZeroL => "case_s_zero_L",
            CheckId::ChiLemma => "chi_lemma",
            CheckId::ArithmeticForwardAndFuzz => "arithmetic_forward_and_fuzz",
            CheckId::MainTheoremConsistency => "main_theorem_consistency",
            CheckId::S0Membership => "s0_membership",
        }
    }

    /// Catalog number, starting at 1.
    pub fn number(self) -> usize {
        CheckId::ALL.iter().position(|&c| c == self).unwrap() + 1
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckId {
    type Err = Error;

    /// Accepts the name or the catalog number.
    fn from_str(s: &str) -> Result<Self> {
        if let Ok(n) = s.parse::<usize>() {
            if (1..=CheckId::ALL.len()).contains(&n) {
                return Ok(CheckId::ALL[n - 1]);
            }
        }
        CheckId::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| Error::UnknownCheck(s.to_string()))
    }
}

/// Size limits for one run of the catalog.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Largest partition size for exhaustive checks.
    pub points: usize,
    pub cap_lo: usize,
    pub cap_hi: usize,
    /// Random instances for sampled checks.
    pub samples: usize,
    pub window: i64,
    /// A check needing more instances than this is skipped.
    pub max_instances: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { points: 6, cap_lo: 4, cap_hi: 6, samples: 200, window: 120, max_instances: 50_000_000 }
    }
}

impl fmt::Display for Budget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "points={},caps={}..{},samples={},window={},instances={}",
            self.points, self.cap_lo, self.cap_hi, self.samples, self.window, self.max_instances
        )
    }
}

impl FromStr for Budget {
    type Err = Error;

    /// `key=value` pairs separated by commas; missing keys keep defaults.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: String| Error::Syntax { pos: 0, msg };
        let mut b = Budget::default();
        for part in s.split(',').filter(|p| !p.is_empty()) {
            let (k, v) = part.split_once('=').ok_or_else(|| bad(format!("expected key=value, got `{part}`")))?;
            let num = |v: &str| v.parse::<u64>().map_err(|_| bad(format!("bad number `{v}`")));
            match k {
                "points" => b.points = num(v)? as usize,
                "caps" => {
                    let (lo, hi) = v.split_once("..").ok_or_else(|| bad(format!("expected lo..hi, got `{v}`")))?;
                    b.cap_lo = num(lo)? as usize;
                    b.cap_hi = num(hi)? as usize;
                }
                "samples" => b.samples = num(v)? as usize,
                "window" => b.window = num(v)? as i64,
                "instances" => b.max_instances = num(v)?,
                _ => return Err(bad(format!("unknown budget key `{k}`"))),
            }
        }
        if b.cap_lo < 2 || b.cap_lo > b.cap_hi {
            return Err(Error::InvalidParams(format!("caps {}..{} are not a range above 1", b.cap_lo, b.cap_hi)));
        }
        Ok(b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Config {
    pub budget: Budget,
    pub seed: u64,
    /// Conventions used by every rotation; the mutation hook.
    pub conv: Conventions,
}

impl Default for Config {
    fn default() -> Self {
        Config { budget: Budget::default(), seed: 0, conv: Conventions::STANDARD }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        })
    }
}

#[derive(Debug, Clone)]
pub struct CheckReport {
    pub check: CheckId,
    pub status: Status,
    pub instances: u64,
    /// Literals reproducing the failure, or the reason for skipping.
    pub counterexample: Option<String>,
    pub elapsed: Duration,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Machine-readable form, one `key=value` per line.
    pub fn key_values(&self) -> String {
        let mut out = format!(
            "check={}\nstatus={}\ninstances={}\nelapsed_ms={}\n",
            self.check,
            self.status,
            self.instances,
            self.elapsed.as_millis()
        );
        if let Some(c) = &self.counterexample {
            out.push_str(&format!("counterexample={}\n", c.replace('\n', " | ")));
        }
        out
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} {}ms", self.check, self.status, self.instances, self.elapsed.as_millis())?;
        if let Some(c) = &self.counterexample {
            write!(f, "\n  {c}")?;
        }
        Ok(())
    }
}

/// Outcome of a check body before timing is attached.
struct Outcome {
    status: Status,
    instances: u64,
    counterexample: Option<String>,
}

impl Outcome {
    fn from_search(instances: u64, failure: Option<String>) -> Outcome {
        let status = if failure.is_some() { Status::Fail } else { Status::Pass };
        Outcome { status, instances, counterexample: failure }
    }

    fn skipped(instances: u64, reason: String) -> Outcome {
        Outcome { status: Status::Skipped, instances, counterexample: Some(reason) }
    }
}

pub fn run_check(check: CheckId, cfg: &Config) -> CheckReport {
    let start = Instant::now();
    let out = match check {
        CheckId::ProjectionPpStar => projection_pp_star(cfg),
        CheckId::DeltaAntisymModSigma => delta_antisym_mod_sigma(cfg),
        CheckId::EraseTurnDelta => erase_turn_delta(cfg),
        CheckId::AxiomsOnClosures => axioms_on_closures(cfg),
        CheckId::SigmaSubgroup => sigma_subgroup(cfg),
        CheckId::FCases => f_cases(cfg),
        CheckId::VCases => v_cases(cfg),
        CheckId::CaseSZeroL => case_s_zero_l(cfg),
        CheckId::ChiLemma => chi_lemma(cfg),
        CheckId::ArithmeticForwardAndFuzz => arithmetic_forward_and_fuzz(cfg),
        CheckId::MainTheoremConsistency => main_theorem_consistency(cfg),
        CheckId::S0Membership => s0_membership(cfg),
    };
    CheckReport {
        check,
        status: out.status,
        instances: out.instances,
        counterexample: out.counterexample,
        elapsed: start.elapsed(),
    }
}

pub fn run_named(name: &str, cfg: &Config) -> Result<CheckReport> {
    Ok(run_check(name.parse()?, cfg))
}

/// Runs the checks in parallel; reports come back in catalog order.
pub fn run_all(checks: &[CheckId], cfg: &Config) -> Vec<CheckReport> {
    checks.par_iter().map(|&c| run_check(c, cfg)).collect()
}

/// Exhaustive search over every partition with at most `budget.points`
/// points; `test` returns the number of instances and the first failure.
fn exhaustive<F>(cfg: &Config, per_partition: impl Fn(usize) -> u64, test: F) -> Outcome
where
    F: Fn(&Partition) -> (u64, Option<String>) + Sync,
{
    let all = match enumerate_up_to(cfg.budget.points) {
        Ok(v) => v,
        Err(e) => return Outcome::skipped(0, e.to_string()),
    };
    let estimate: u64 = all.iter().map(|p| per_partition(p.size())).sum();
    if estimate > cfg.budget.max_instances {
        return Outcome::skipped(0, format!("needs {estimate} instances, budget {}", cfg.budget.max_instances));
    }
    let results: Vec<(u64, Option<String>)> = all.par_iter().map(&test).collect();
    let instances = results.iter().map(|r| r.0).sum();
    let failure = results.into_iter().find_map(|r| r.1);
    Outcome::from_search(instances, failure)
}

fn projection_pp_star(cfg: &Config) -> Outcome {
    exhaustive(
        cfg,
        |n| (n * n + 2) as u64,
        |p| {
            let mut n = 0;
            for s in ConsecutiveSet::all(p) {
                n += 1;
                let q = project_with(p, &s, cfg.conv);
                let lower = ConsecutiveSet::lower_row(&q);
                if !is_projective(&q) || !equivalent(&q, &lower, p, &s) {
                    return (n, Some(format!("p={p} S=start {} len {} projection={q}", s.start, s.len)));
                }
            }
            let pp = compose(p, &involution(p)).expect("p and p* compose");
            if project_with(p, &ConsecutiveSet::lower_row(p), cfg.conv) != pp {
                return (n, Some(format!("p={p} lower-row projection differs from pp*={pp}")));
            }
            (n, None)
        },
    )
}

fn delta_antisym_mod_sigma(cfg: &Config) -> Outcome {
    exhaustive(
        cfg,
        |n| (n * n) as u64,
        |p| {
            let total = p.total_color_sum();
            let mut n = 0;
            for a in 0..p.size() {
                for b in 0..p.size() {
                    if a == b {
                        continue;
                    }
                    n += 1;
                    let s = p.delta_positions(a, b) + p.delta_positions(b, a);
                    let ok = if total == 0 { s == 0 } else { s.rem_euclid(total) == 0 };
                    if !ok {
                        return (n, Some(format!("p={p} positions {a},{b} sum {s} total {total}")));
                    }
                }
            }
            (n, None)
        },
    )
}

fn erase_turn_delta(cfg: &Config) -> Outcome {
    exhaustive(
        cfg,
        |n| (n * n * n) as u64,
        |p| {
            let mut n = 0;
            for t in all_turns(p) {
                let ta = p.pos(t.a).expect("turn point");
                let tb = p.pos(t.b).expect("turn point");
                let r = erase_turn(p, &t).expect("valid turn");
                let image = |x: usize| x - [ta, tb].iter().filter(|&&y| y < x).count();
                let sigma_t = p.sigma_positions([ta, tb]);
                for a in (0..p.size()).filter(|&x| x != ta && x != tb) {
                    for b in (0..p.size()).filter(|&x| x != ta && x != tb && x != a) {
                        n += 1;
                        let inside = p.open_interval(a, b);
                        let shift = if inside.contains(&ta) && inside.contains(&tb) { sigma_t } else { 0 };
                        let lhs = r.delta_positions(image(a), image(b));
                        let rhs = p.delta_positions(a, b) - shift;
                        if lhs != rhs {
                            return (n, Some(format!("p={p} turn {}{} a={a} b={b}: {lhs} != {rhs}", t.a, t.b)));
                        }
                    }
                }
            }
            (n, None)
        },
    )
}

/// The three sample generator sets, labelled by their expected case.
pub fn sample_generators() -> Vec<(Case, Vec<Partition>)> {
    let p = |s: &str| s.parse::<Partition>().expect("valid literal");
    vec![(Case::O, vec![]), (Case::B, vec![p(SINGLETONS)]), (Case::S, vec![p(FOUR_BLOCK), p(SINGLETONS)])]
}

struct Sample {
    case: Case,
    cap: usize,
    members: Vec<Partition>,
    z: ZData,
}

impl Sample {
    fn label(&self) -> String {
        format!("case {} closure at cap {}", self.case, self.cap)
    }
}

fn closures_at(cfg: &Config, caps: impl IntoIterator<Item = usize>) -> Result<Vec<Sample>> {
    let mut out = Vec::new();
    for cap in caps {
        for (case, gens) in sample_generators() {
            let c = closure(&gens, ClosureOptions { conv: cfg.conv, ..ClosureOptions::new(cap) })?;
            let z = analyze(&c.members);
            out.push(Sample { case, cap, members: c.members, z });
        }
    }
    Ok(out)
}

fn on_closures(cfg: &Config, caps: impl IntoIterator<Item = usize>, test: impl Fn(&Sample) -> Option<String>) -> Outcome {
    let samples = match closures_at(cfg, caps) {
        Ok(s) => s,
        Err(e) => return Outcome::skipped(0, e.to_string()),
    };
    let failure = samples.iter().find_map(&test);
    Outcome::from_search(samples.len() as u64, failure)
}

fn all_caps(cfg: &Config) -> std::ops::RangeInclusive<usize> {
    cfg.budget.cap_lo..=cfg.budget.cap_hi
}

fn finite(s: &BTreeSet<i64>) -> IntSet {
    IntSet::finite(s.iter().copied())
}

/// `(Σ, Kcc, Xcc)` of analyzer data and the window they were observed on.
pub fn observed_families(z: &ZData) -> (IntSet, Family, Family, i64) {
    (finite(&z.sigma), family_from(&z.kcc), family_from(&z.xcc), z.max_abs())
}

fn axioms_on_closures(cfg: &Config) -> Outcome {
    on_closures(cfg, all_caps(cfg), |s| {
        let (sigma, k, x, w) = observed_families(&s.z);
        let v = check_axioms(&sigma, &k, &x, w);
        (!v.is_empty()).then(|| format!("{}: {}", s.label(), v[0]))
    })
}

fn sigma_subgroup(cfg: &Config) -> Outcome {
    on_closures(cfg, all_caps(cfg), |s| {
        let sigma = &s.z.sigma;
        let w = s.z.max_abs();
        if !sigma.contains(&0) {
            return Some(format!("{}: 0 missing from Sigma = {}", s.label(), fmt_set(sigma)));
        }
        for &a in sigma {
            if !sigma.contains(&-a) {
                return Some(format!("{}: Sigma = {} lacks {}", s.label(), fmt_set(sigma), -a));
            }
            for &b in sigma {
                if (a + b).abs() <= w && !sigma.contains(&(a + b)) {
                    return Some(format!("{}: Sigma = {} lacks {a}+{b}", s.label(), fmt_set(sigma)));
                }
            }
        }
        None
    })
}

fn f_cases(cfg: &Config) -> Outcome {
    on_closures(cfg, all_caps(cfg), |s| {
        let found = detect_case(&s.members);
        if found != s.case {
            return Some(format!("{}: detected {found}", s.label()));
        }
        let f = &s.z.f;
        let ok = match s.case {
            Case::O => *f == BTreeSet::from([2]),
            Case::B => *f == BTreeSet::from([1, 2]),
            _ => f.is_superset(&BTreeSet::from([1, 2])) && (s.cap < 5 || f.contains(&3)),
        };
        (!ok).then(|| format!("{}: F = {}", s.label(), fmt_set(f)))
    })
}

fn symmetric(vals: &[i64]) -> BTreeSet<i64> {
    vals.iter().flat_map(|&v| [v, -v]).collect()
}

fn v_cases(cfg: &Config) -> Outcome {
    let samples = match closures_at(cfg, all_caps(cfg)) {
        Ok(s) => s,
        Err(e) => return Outcome::skipped(0, e.to_string()),
    };
    let n = samples.len() as u64;
    for s in &samples {
        let (v, l) = (&s.z.v, &s.z.l);
        let expected = match s.case {
            Case::O if l.is_empty() => symmetric(&[0]),
            Case::O => symmetric(&[0, 2]),
            Case::B if l.is_empty() => symmetric(&[0, 1]),
            Case::B => symmetric(&[0, 1, 2]),
            _ => {
                if l.is_empty() {
                    return Outcome::from_search(n, Some(format!("{}: L is empty", s.label())));
                }
                let top = v.iter().max().copied().unwrap_or(0);
                symmetric(&(0..=top).collect::<Vec<_>>())
            }
        };
        if *v != expected {
            return Outcome::from_search(n, Some(format!("{}: V = {} with L = {}", s.label(), fmt_set(v), fmt_set(l))));
        }
    }
    // In case S the observed V never shrinks with the cap and gains at least
    // one value over every two cap steps.
    let tops: Vec<(usize, i64)> = samples
        .iter()
        .filter(|s| s.case == Case::S)
        .map(|s| (s.cap, s.z.v.iter().max().copied().unwrap_or(0)))
        .collect();
    for w in tops.windows(2) {
        if w[1].1 < w[0].1 {
            return Outcome::from_search(n, Some(format!("case S: max V shrinks from cap {} to cap {}", w[0].0, w[1].0)));
        }
    }
    for w in tops.windows(3) {
        if w[2].1 <= w[0].1 {
            return Outcome::from_search(n, Some(format!("case S: max V stalls at {} from cap {} to cap {}", w[0].1, w[0].0, w[2].0)));
        }
    }
    Outcome::from_search(n, None)
}

fn case_s_zero_l(cfg: &Config) -> Outcome {
    let witness: Partition = "-:wbwb:[l1][l2 l3 l4]".parse().expect("valid literal");
    let samples = match closures_at(cfg, all_caps(cfg)) {
        Ok(s) => s,
        Err(e) => return Outcome::skipped(0, e.to_string()),
    };
    let relevant: Vec<&Sample> = samples.iter().filter(|s| s.case == Case::S && s.members.contains(&witness)).collect();
    if relevant.is_empty() {
        return Outcome::skipped(0, format!("no cap in {}..{} reaches {witness}", cfg.budget.cap_lo, cfg.budget.cap_hi));
    }
    let failure = relevant
        .iter()
        .find(|s| !s.z.l.contains(&0))
        .map(|s| format!("{}: L = {}", s.label(), fmt_set(&s.z.l)));
    Outcome::from_search(relevant.len() as u64, failure)
}

/// A random `χ` with `χ = −χ = χ + mZ`, `m ≤ 12`.
pub fn random_chi(rng: &mut impl Rng) -> (IntSet, i64) {
    let m = rng.gen_range(1..=12);
    let residues: Vec<i64> = (0..m).filter(|_| rng.gen_bool(0.5)).collect();
    let base = IntSet::finite(residues.iter().copied());
    (base.union(&base.negate()).sumset(&IntSet::multiples(m)), m)
}

fn chi_lemma(cfg: &Config) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for i in 0..cfg.budget.samples {
        let (chi, m) = random_chi(&mut rng);
        let fail = |msg: String| Outcome::from_search(i as u64 + 1, Some(format!("chi={chi} m={m}: {msg}")));
        match chi_normal_form(&chi, m) {
            Err(e) => return fail(e.to_string()),
            Ok(nf) => {
                // Independent membership comparison over two periods.
                for x in -2 * m..2 * m {
                    let reduced = x.rem_euclid(m);
                    let folded = reduced.min(m - reduced);
                    if chi.contains(x) == nf.holes.contains(folded) {
                        return fail(format!("holes {} disagree at {x}", nf.holes));
                    }
                }
            }
        }
    }
    Outcome::from_search(cfg.budget.samples as u64, None)
}

/// A random subset of `{lo, ..., hi}`.
fn random_subset(rng: &mut impl Rng, lo: i64, hi: i64) -> IntSet {
    IntSet::finite((lo..=hi).filter(|_| rng.gen_bool(0.5)))
}

fn random_e(rng: &mut impl Rng) -> IntSet {
    let e = random_subset(rng, 0, 8);
    if rng.gen_bool(0.5) {
        e.union(&IntSet::ray_up(rng.gen_range(9..15)))
    } else {
        e
    }
}

/// A random colored family built to satisfy the axioms often but not always.
fn random_family(rng: &mut impl Rng) -> (IntSet, Family, Family) {
    use crate::analyzer::COLOR_PAIRS;
    let a = rng.gen_range(1..=4);
    let pick = |rng: &mut ChaCha8Rng| -> IntSet {
        match rng.gen_range(0..5) {
            0 => IntSet::empty(),
            1 => IntSet::singleton(0),
            2 => IntSet::multiples(a),
            3 => IntSet::residue(a, 2 * a),
            _ => IntSet::multiples(2 * a),
        }
    };
    let mut local = ChaCha8Rng::seed_from_u64(rng.gen());
    let sigma = IntSet::multiples(a * rng.gen_range(0..=3));
    let same = pick(&mut local);
    let diff = pick(&mut local);
    let xi_base = if rng.gen_bool(0.5) {
        let m = rng.gen_range(1..=6);
        random_subset(rng, 0, m / 2).d_sub_m(m).complement()
    } else {
        random_e(rng).mirror().complement()
    };
    let mut kcc = Family::new();
    let mut xcc = Family::new();
    for &(c1, c2) in &COLOR_PAIRS {
        let k = if rng.gen_bool(0.85) {
            if c1 == c2 { same.clone() } else { diff.clone() }
        } else {
            pick(&mut local)
        };
        kcc.insert((c1, c2), k);
        let x = if rng.gen_bool(0.85) { xi_base.clone() } else { random_e(rng).mirror().complement() };
        xcc.insert((c1, c2), x);
    }
    (sigma, kcc, xcc)
}

fn arithmetic_forward_and_fuzz(cfg: &Config) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0xA5A5);
    let w = cfg.budget.window;
    let mut n = 0u64;
    let mut classes = Vec::new();
    for _ in 0..20 {
        for row in 1..=3u8 {
            for u in 0..=3 {
                for m in 1..=6 {
                    let d = random_subset(&mut rng, 0, m / 2);
                    classes.push(ArithClass { row, u: Some(u), m: Some(m), d: Some(d), e: None });
                }
            }
        }
        for row in 4..=5u8 {
            classes.push(ArithClass { row, u: None, m: None, d: None, e: Some(random_e(&mut rng)) });
        }
    }
    let forward = classes.par_iter().find_map_first(|c| {
        let t = instantiate_arith(c).expect("parameters in range");
        let k = crate::qspace::kappa_family(&t.lambda, &t.kappa);
        let x = crate::qspace::uniform_family(&t.xi);
        let v = check_axioms(&t.sigma, &k, &x, w);
        if let Some(first) = v.first() {
            return Some(format!("{c} gives {t}: {first}"));
        }
        (classify_arith(&t).as_ref() != Some(c)).then(|| format!("{c} gives {t}, which classifies differently"))
    });
    n += classes.len() as u64;
    if forward.is_some() {
        return Outcome::from_search(n, forward);
    }
    let mut satisfying = 0;
    for _ in 0..cfg.budget.samples.max(1) * 10 {
        n += 1;
        let (sigma, k, x) = random_family(&mut rng);
        if !check_axioms(&sigma, &k, &x, w).is_empty() {
            continue;
        }
        satisfying += 1;
        let fail = |msg: &str| {
            let ks: Vec<String> = k.iter().map(|(c, s)| format!("{}{}={s}", c.0.symbol(), c.1.symbol())).collect();
            let xs: Vec<String> = x.iter().map(|(c, s)| format!("{}{}={s}", c.0.symbol(), c.1.symbol())).collect();
            Outcome::from_search(n, Some(format!("sigma={sigma} kappa[{}] xi[{}]: {msg}", ks.join(" "), xs.join(" "))))
        };
        let Some(t): Option<ArithTuple> = collapse(&sigma, &k, &x) else {
            return fail("colored sets do not collapse");
        };
        let rows = arith_rows_matching(&t);
        if rows.len() != 1 {
            return fail(&format!("matches rows {rows:?}"));
        }
        match classify_arith(&t) {
            Some(c) if c.row == rows[0] && instantiate_arith(&c).ok().as_ref() == Some(&t) => {}
            _ => return fail("classification does not reproduce the tuple"),
        }
    }
    if satisfying == 0 {
        return Outcome::skipped(n, "no random family satisfied the axioms".into());
    }
    Outcome::from_search(n, None)
}

fn main_theorem_consistency(cfg: &Config) -> Outcome {
    on_closures(cfg, all_caps(cfg), |s| {
        let rows = consistent_rows(&s.z, 2);
        if rows.is_empty() {
            return Some(format!("{}: no consistent row", s.label()));
        }
        let family = match s.case {
            Case::O => 'O',
            Case::B => 'B',
            _ => 'S',
        };
        rows.iter()
            .find(|q| q.row.family() != family)
            .map(|q| format!("{}: unexpected {q}", s.label()))
    })
}

/// `S_0` membership from the point-level definition.
fn s0_oracle(p: &Partition) -> bool {
    (0..p.n_blocks()).all(|label| {
        let pts = p.block_points(label);
        pts.len() <= 2
            && p.sigma(&pts).expect("own points") == 0
            && pts.iter().all(|&a| {
                pts.iter().filter(|&&b| b != a).all(|&b| p.color_distance(a, b).expect("own points") == 0)
            })
    })
}

fn s0_membership(cfg: &Config) -> Outcome {
    exhaustive(
        cfg,
        |_| 1,
        |p| {
            let (fast, slow) = (in_s0(p), s0_oracle(p));
            (1, (fast != slow).then(|| format!("p={p}: filter says {fast}, definition says {slow}")))
        },
    )
}
