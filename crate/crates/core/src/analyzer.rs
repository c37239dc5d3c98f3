//! The analyzer `Z = (F, V, Σ, L, K, X)` of a finite set of partitions, with
//! `K` and `X` refined by the normalized colors of the two legs.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::partition::{Color, Partition};

pub type ColorPair = (Color, Color);

/// All four ordered color pairs, white first.
pub const COLOR_PAIRS: [ColorPair; 4] = [
    (Color::White, Color::White),
    (Color::White, Color::Black),
    (Color::Black, Color::White),
    (Color::Black, Color::Black),
];

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ZData {
    pub f: BTreeSet<i64>,
    pub v: BTreeSet<i64>,
    pub sigma: BTreeSet<i64>,
    pub l: BTreeSet<i64>,
    pub k: BTreeSet<i64>,
    pub x: BTreeSet<i64>,
    /// Subsequent-leg distances keyed by the normalized colors of both legs.
    pub kcc: BTreeMap<ColorPair, BTreeSet<i64>>,
    /// Crossing-leg distances keyed by the normalized colors of both legs.
    pub xcc: BTreeMap<ColorPair, BTreeSet<i64>>,
}

impl ZData {
    pub fn new() -> Self {
        let empty = || COLOR_PAIRS.iter().map(|&c| (c, BTreeSet::new())).collect();
        ZData { kcc: empty(), xcc: empty(), ..Default::default() }
    }

    pub fn kcc(&self, c1: Color, c2: Color) -> &BTreeSet<i64> {
        &self.kcc[&(c1, c2)]
    }

    pub fn xcc(&self, c1: Color, c2: Color) -> &BTreeSet<i64> {
        &self.xcc[&(c1, c2)]
    }

    pub fn merge(mut self, o: ZData) -> ZData {
        self.f.extend(o.f);
        self.v.extend(o.v);
        self.sigma.extend(o.sigma);
        self.l.extend(o.l);
        self.k.extend(o.k);
        self.x.extend(o.x);
        for (c, s) in o.kcc {
            self.kcc.entry(c).or_default().extend(s);
        }
        for (c, s) in o.xcc {
            self.xcc.entry(c).or_default().extend(s);
        }
        self
    }

    /// Componentwise inclusion, refined tables included.
    pub fn is_subset(&self, o: &ZData) -> bool {
        self.f.is_subset(&o.f)
            && self.v.is_subset(&o.v)
            && self.sigma.is_subset(&o.sigma)
            && self.l.is_subset(&o.l)
            && self.k.is_subset(&o.k)
            && self.x.is_subset(&o.x)
            && COLOR_PAIRS
                .iter()
                .all(|c| self.kcc[c].is_subset(&o.kcc[c]) && self.xcc[c].is_subset(&o.xcc[c]))
    }

    /// The six components in order `F, V, Σ, L, K, X`.
    pub fn components(&self) -> [&BTreeSet<i64>; 6] {
        [&self.f, &self.v, &self.sigma, &self.l, &self.k, &self.x]
    }

    /// Largest absolute value in any component.
    pub fn max_abs(&self) -> i64 {
        self.components()
            .into_iter()
            .flat_map(|s| s.iter())
            .map(|x| x.abs())
            .max()
            .unwrap_or(0)
    }

    /// Key/value report; with `refined`, the colored tables are appended.
    pub fn report(&self, refined: bool) -> String {
        let mut out = String::new();
        let names = ["F", "V", "Sigma", "L", "K", "X"];
        for (name, set) in names.iter().zip(self.components()) {
            out.push_str(&format!("{name} = {}\n", fmt_set(set)));
        }
        if refined {
            for c in COLOR_PAIRS {
                out.push_str(&format!("K[{}] = {}\n", pair_name(c), fmt_set(&self.kcc[&c])));
            }
            for c in COLOR_PAIRS {
                out.push_str(&format!("X[{}] = {}\n", pair_name(c), fmt_set(&self.xcc[&c])));
            }
        }
        out
    }
}

impl fmt::Display for ZData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.report(true))
    }
}

/// Reads the output of [`ZData::report`]; missing lines mean empty sets.
impl FromStr for ZData {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut z = ZData::new();
        for (i, line) in s.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |msg: String| Error::Syntax { pos: i + 1, msg };
            let (key, val) = line.split_once('=').ok_or_else(|| bad(format!("expected `NAME = {{...}}`, got `{line}`")))?;
            let inner = val
                .trim()
                .strip_prefix('{')
                .and_then(|v| v.strip_suffix('}'))
                .ok_or_else(|| bad(format!("expected a braced list, got `{}`", val.trim())))?;
            let set = inner
                .split(',')
                .map(str::trim)
                .filter(|x| !x.is_empty())
                .map(|x| x.parse::<i64>().map_err(|_| bad(format!("bad integer `{x}`"))))
                .collect::<Result<BTreeSet<i64>>>()?;
            let key = key.trim();
            let colored = |prefix: &str| -> Option<ColorPair> {
                let name = key.strip_prefix(prefix)?.strip_prefix('[')?.strip_suffix(']')?;
                COLOR_PAIRS.into_iter().find(|&c| pair_name(c) == name)
            };
            let slot = match key {
                "F" => &mut z.f,
                "V" => &mut z.v,
                "Sigma" => &mut z.sigma,
                "L" => &mut z.l,
                "K" => &mut z.k,
                "X" => &mut z.x,
                _ => {
                    if let Some(c) = colored("K") {
                        z.kcc.get_mut(&c).unwrap()
                    } else if let Some(c) = colored("X") {
                        z.xcc.get_mut(&c).unwrap()
                    } else {
                        return Err(bad(format!("unknown component `{key}`")));
                    }
                }
            };
            *slot = set;
        }
        Ok(z)
    }
}

pub fn pair_name((a, b): ColorPair) -> String {
    format!("{}{}", a.symbol(), b.symbol())
}

pub fn fmt_set(s: &BTreeSet<i64>) -> String {
    let v: Vec<String> = s.iter().map(ToString::to_string).collect();
    format!("{{{}}}", v.join(","))
}

/// Analyzer data of a single partition.
pub fn analyze_one(p: &Partition) -> ZData {
    let mut z = ZData::new();
    z.sigma.insert(p.total_color_sum());
    let blocks = p.blocks();
    for b in &blocks {
        z.f.insert(b.len() as i64);
        z.v.insert(p.sigma_positions(b.iter().copied()));
        if b.len() < 2 {
            continue;
        }
        for i in 0..b.len() {
            let (a1, a2) = (b[i], b[(i + 1) % b.len()]);
            let d = p.delta_positions(a1, a2);
            let (c1, c2) = (p.ncolor_at(a1), p.ncolor_at(a2));
            if c1.sign() + c2.sign() != 0 {
                z.l.insert(d);
            } else {
                z.k.insert(d);
            }
            z.kcc.get_mut(&(c1, c2)).unwrap().insert(d);
        }
    }
    for (i, b1) in blocks.iter().enumerate() {
        for (j, b2) in blocks.iter().enumerate() {
            if i == j || !p.labels_cross(i, j) {
                continue;
            }
            for &a1 in b1 {
                for &a2 in b2 {
                    let d = p.delta_positions(a1, a2);
                    z.x.insert(d);
                    z.xcc.get_mut(&(p.ncolor_at(a1), p.ncolor_at(a2))).unwrap().insert(d);
                }
            }
        }
    }
    z
}

/// Analyzer data of a finite set of partitions.
pub fn analyze(set: &[Partition]) -> ZData {
    set.par_iter().map(analyze_one).reduce(ZData::new, ZData::merge)
}

pub fn k_refined(set: &[Partition], c1: Color, c2: Color) -> BTreeSet<i64> {
    analyze(set).kcc[&(c1, c2)].clone()
}

pub fn x_refined(set: &[Partition], c1: Color, c2: Color) -> BTreeSet<i64> {
    analyze(set).xcc[&(c1, c2)].clone()
}

/// Members whose blocks have at most two legs.
pub fn restrict_pairs_only(set: &[Partition]) -> Vec<Partition> {
    set.iter().filter(|p| p.is_pair_only()).cloned().collect()
}

/// Pair partitions with neutral blocks and zero distance inside each block.
pub fn in_s0(p: &Partition) -> bool {
    p.blocks().iter().all(|b| {
        b.len() == 2
            && p.sigma_positions(b.iter().copied()) == 0
            && p.delta_positions(b[0], b[1]) == 0
            && p.delta_positions(b[1], b[0]) == 0
    })
}

pub fn restrict_s0(set: &[Partition]) -> Vec<Partition> {
    set.iter().filter(|p| in_s0(p)).cloned().collect()
}
