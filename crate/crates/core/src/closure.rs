//! Bounded breadth-first closure of a generator set under the category
//! operations, truncated by point count.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ops::{
    all_turns, compose, erase_turn, involution, rotate_cyclic_with, rotate_with, tensor, verticolor_reflect,
    Conventions, Corner,
};
use crate::partition::{Color, Partition};

/// The units every category contains.
pub const BASE: [&str; 4] = ["-:wb:[l1 l2]", "-:bw:[l1 l2]", "w:w:[u1 l1]", "b:b:[u1 l1]"];

pub fn base_partitions() -> Vec<Partition> {
    BASE.iter().map(|s| s.parse().expect("valid base literal")).collect()
}

/// Injective byte encoding: row lengths, color bits, then the block label of
/// each cyclic position in first-occurrence order.
pub fn canonical_key(p: &Partition) -> Vec<u8> {
    let mut key = Vec::with_capacity(2 + 2 * p.size());
    key.push(p.n_upper() as u8);
    key.push(p.n_lower() as u8);
    key.extend(p.upper().iter().chain(p.lower()).map(|c| (*c == Color::Black) as u8));
    key.extend(p.labels().iter().map(|&l| l as u8));
    key
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClosureOptions {
    /// Maximum number of points of any member.
    pub cap: usize,
    pub max_rounds: usize,
    /// Also apply one-step cyclic rotations in both directions.
    pub cyclic: bool,
    pub parallel: bool,
    pub conv: Conventions,
}

impl ClosureOptions {
    pub fn new(cap: usize) -> Self {
        ClosureOptions { cap, max_rounds: 64, cyclic: false, parallel: true, conv: Conventions::STANDARD }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Fixpoint,
    RoundLimit,
}

#[derive(Debug, Clone)]
pub struct Closure {
    /// Members sorted by canonical key.
    pub members: Vec<Partition>,
    pub rounds: usize,
    pub outcome: Outcome,
    /// Raw productions per operation, before deduplication.
    pub stats: BTreeMap<&'static str, u64>,
}

impl Closure {
    pub fn contains(&self, p: &Partition) -> bool {
        self.members.binary_search_by(|q| canonical_key(q).cmp(&canonical_key(p))).is_ok()
    }

    /// One literal per line, then the stats as comments.
    pub fn dump(&self) -> String {
        let mut out: String = self.members.iter().map(|p| format!("{p}\n")).collect();
        out.push_str(&format!("# members = {}\n", self.members.len()));
        out.push_str(&format!("# rounds = {}\n", self.rounds));
        out.push_str(&format!("# outcome = {}\n", self.outcome));
        for (op, n) in &self.stats {
            out.push_str(&format!("# {op} = {n}\n"));
        }
        out
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Fixpoint => "fixpoint",
            Outcome::RoundLimit => "round-limit",
        })
    }
}

type Produced = Vec<(&'static str, Partition)>;

fn unary(p: &Partition, opts: &ClosureOptions, out: &mut Produced) {
    out.push(("involution", involution(p)));
    out.push(("reflect", verticolor_reflect(p)));
    for c in Corner::ALL {
        if let Ok(q) = rotate_with(p, c, opts.conv) {
            out.push(("rotate", q));
        }
    }
    if opts.cyclic && p.size() > 0 {
        out.push(("rotate_cyclic", rotate_cyclic_with(p, 1, opts.conv)));
        out.push(("rotate_cyclic", rotate_cyclic_with(p, -1, opts.conv)));
    }
    for t in all_turns(p) {
        out.push(("erase_turn", erase_turn(p, &t).expect("turn taken from p")));
    }
}

struct Store {
    all: Vec<Partition>,
    seen: HashSet<Partition>,
    by_lower: HashMap<Vec<Color>, Vec<usize>>,
    by_upper: HashMap<Vec<Color>, Vec<usize>>,
}

impl Store {
    fn insert(&mut self, p: Partition) -> bool {
        if !self.seen.insert(p.clone()) {
            return false;
        }
        let i = self.all.len();
        self.by_lower.entry(p.lower().to_vec()).or_default().push(i);
        self.by_upper.entry(p.upper().to_vec()).or_default().push(i);
        self.all.push(p);
        true
    }

    /// Everything obtainable from `f` together with one stored member.
    fn expand(&self, f: &Partition, opts: &ClosureOptions) -> Produced {
        let cap = opts.cap;
        let mut out = Vec::new();
        unary(f, opts, &mut out);
        for s in &self.all {
            if f.size() + s.size() <= cap {
                out.push(("tensor", tensor(f, s)));
                out.push(("tensor", tensor(s, f)));
            }
        }
        for &i in self.by_lower.get(f.upper()).into_iter().flatten() {
            let top = &self.all[i];
            if f.n_lower() + top.n_upper() <= cap {
                out.push(("compose", compose(f, top).expect("rows match")));
            }
        }
        for &i in self.by_upper.get(f.lower()).into_iter().flatten() {
            let bottom = &self.all[i];
            if bottom.n_lower() + f.n_upper() <= cap {
                out.push(("compose", compose(bottom, f).expect("rows match")));
            }
        }
        out
    }
}

/// Semi-naive breadth-first closure of `generators` plus the units. Every
/// round combines the newest members with all members found so far.
pub fn closure(generators: &[Partition], opts: ClosureOptions) -> Result<Closure> {
    if opts.cap < 2 {
        return Err(Error::InvalidParams(format!("cap {} is below 2", opts.cap)));
    }
    if opts.cap > u8::MAX as usize {
        return Err(Error::InvalidParams(format!("cap {} is too large", opts.cap)));
    }
    if let Some(g) = generators.iter().find(|g| g.size() > opts.cap) {
        return Err(Error::CapExceeded { points: g.size(), cap: opts.cap });
    }
    let mut store = Store { all: vec![], seen: HashSet::new(), by_lower: HashMap::new(), by_upper: HashMap::new() };
    let mut frontier = Vec::new();
    for p in base_partitions().into_iter().chain(generators.iter().cloned()) {
        if store.insert(p.clone()) {
            frontier.push(p);
        }
    }
    let mut stats: BTreeMap<&'static str, u64> = BTreeMap::new();
    let mut rounds = 0;
    while !frontier.is_empty() {
        if rounds == opts.max_rounds {
            return Ok(finish(store, rounds, Outcome::RoundLimit, stats));
        }
        rounds += 1;
        let produced: Vec<Produced> = if opts.parallel {
            frontier.par_iter().map(|f| store.expand(f, &opts)).collect()
        } else {
            frontier.iter().map(|f| store.expand(f, &opts)).collect()
        };
        let mut next = Vec::new();
        for (op, q) in produced.into_iter().flatten() {
            *stats.entry(op).or_default() += 1;
            if q.size() <= opts.cap && store.insert(q.clone()) {
                next.push(q);
            }
        }
        frontier = next;
    }
    Ok(finish(store, rounds, Outcome::Fixpoint, stats))
}

fn finish(store: Store, rounds: usize, outcome: Outcome, stats: BTreeMap<&'static str, u64>) -> Closure {
    let mut members = store.all;
    members.sort_by_cached_key(canonical_key);
    Closure { members, rounds, outcome, stats }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Case {
    O,
    B,
    S,
    /// A block with three or more legs but no singleton: the truncation
    /// cannot tell this apart from a hyperoctahedral category.
    HyperoctahedralSuspect,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::O => "O",
            Case::B => "B",
            Case::S => "S",
            Case::HyperoctahedralSuspect => "hyperoctahedral-suspect",
        })
    }
}

pub fn detect_case(closed: &[Partition]) -> Case {
    let sizes = || closed.iter().flat_map(|p| p.block_sizes());
    let singleton = sizes().any(|s| s == 1);
    let big = sizes().any(|s| s >= 3);
    match (singleton, big) {
        (false, false) => Case::O,
        (true, false) => Case::B,
        (true, true) => Case::S,
        (false, true) => Case::HyperoctahedralSuspect,
    }
}

/// The four-block on four lower points with alternating colors.
pub const FOUR_BLOCK: &str = "-:wbwb:[l1 l2 l3 l4]";
/// Two singletons of opposite colors.
pub const SINGLETONS: &str = "-:wb:[l1][l2]";
