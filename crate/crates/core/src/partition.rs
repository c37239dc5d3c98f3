//! Two-colored partitions, the cyclic order of their points, literals and
//! enumeration.
//!
//! Points are numbered cyclically: the lower row left to right, then the
//! upper row right to left. For `n` lower and `m` upper points, `l_i` sits at
//! position `i - 1` and `u_j` at position `n + m - j`. Block structure is
//! stored as a restricted growth string over these positions, which makes the
//! derived `Eq` and `Hash` structural.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    White,
    Black,
}

impl Color {
    pub fn inverse(self) -> Color {
        match self {
            Color::White => Color::Black,
            Color::Black => Color::White,
        }
    }

    /// `+1` for white, `-1` for black.
    pub fn sign(self) -> i64 {
        match self {
            Color::White => 1,
            Color::Black => -1,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Color::White => 'w',
            Color::Black => 'b',
        }
    }

    pub const BOTH: [Color; 2] = [Color::White, Color::Black];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Row {
    Upper,
    Lower,
}

/// A point addressed by row and 1-based index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointRef {
    pub row: Row,
    pub index: usize,
}

impl PointRef {
    pub fn upper(index: usize) -> Self {
        PointRef { row: Row::Upper, index }
    }

    pub fn lower(index: usize) -> Self {
        PointRef { row: Row::Lower, index }
    }
}

impl fmt::Display for PointRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = match self.row {
            Row::Upper => 'u',
            Row::Lower => 'l',
        };
        write!(f, "{r}{}", self.index)
    }
}

impl FromStr for PointRef {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Syntax { pos: 0, msg: format!("bad point `{s}`") };
        let (row, rest) = match s.as_bytes().first() {
            Some(b'u') => (Row::Upper, &s[1..]),
            Some(b'l') => (Row::Lower, &s[1..]),
            _ => return Err(bad()),
        };
        let index: usize = rest.parse().map_err(|_| bad())?;
        if index == 0 {
            return Err(bad());
        }
        Ok(PointRef { row, index })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntervalKind {
    Open,
    HalfOpen,
    Closed,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    upper: Vec<Color>,
    lower: Vec<Color>,
    labels: Vec<usize>,
}

fn canonical_labels(raw: &[usize]) -> Vec<usize> {
    let mut map = std::collections::HashMap::new();
    raw.iter()
        .map(|l| {
            let next = map.len();
            *map.entry(*l).or_insert(next)
        })
        .collect()
}

impl Partition {
    pub fn empty() -> Self {
        Partition { upper: vec![], lower: vec![], labels: vec![] }
    }

    /// Builds a partition from block labels given per cyclic position.
    pub fn from_cyclic_labels(upper: Vec<Color>, lower: Vec<Color>, labels: &[usize]) -> Self {
        assert_eq!(labels.len(), upper.len() + lower.len(), "one label per point");
        Partition { upper, lower, labels: canonical_labels(labels) }
    }

    /// Builds a partition from block labels given per row, left to right.
    pub fn from_row_labels(upper: Vec<Color>, lower: Vec<Color>, upper_labels: &[usize], lower_labels: &[usize]) -> Self {
        assert_eq!(upper.len(), upper_labels.len());
        assert_eq!(lower.len(), lower_labels.len());
        let cyc: Vec<usize> = lower_labels.iter().chain(upper_labels.iter().rev()).copied().collect();
        Self::from_cyclic_labels(upper, lower, &cyc)
    }

    /// Builds a partition from explicit blocks, validating that they cover
    /// every point exactly once.
    pub fn from_blocks(upper: Vec<Color>, lower: Vec<Color>, blocks: &[Vec<PointRef>]) -> Result<Self> {
        let mut p = Partition { labels: vec![usize::MAX; upper.len() + lower.len()], upper, lower };
        for (b, block) in blocks.iter().enumerate() {
            for &pt in block {
                let pos = p.pos(pt)?;
                if p.labels[pos] != usize::MAX {
                    return Err(Error::DuplicatePoint(pt.to_string()));
                }
                p.labels[pos] = b;
            }
        }
        if let Some(pos) = p.labels.iter().position(|&l| l == usize::MAX) {
            return Err(Error::MissingPoint(p.point_at(pos).to_string()));
        }
        p.labels = canonical_labels(&p.labels);
        Ok(p)
    }

    pub fn upper(&self) -> &[Color] {
        &self.upper
    }

    pub fn lower(&self) -> &[Color] {
        &self.lower
    }

    pub fn n_upper(&self) -> usize {
        self.upper.len()
    }

    pub fn n_lower(&self) -> usize {
        self.lower.len()
    }

    /// Total number of points.
    pub fn size(&self) -> usize {
        self.labels.len()
    }

    /// Block label of each cyclic position, in restricted growth form.
    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn n_blocks(&self) -> usize {
        self.labels.iter().max().map_or(0, |m| m + 1)
    }

    pub fn point_at(&self, pos: usize) -> PointRef {
        let n = self.lower.len();
        if pos < n {
            PointRef::lower(pos + 1)
        } else {
            PointRef::upper(self.size() - pos)
        }
    }

    /// Cyclic position of a point.
    pub fn pos(&self, pt: PointRef) -> Result<usize> {
        let len = match pt.row {
            Row::Upper => self.upper.len(),
            Row::Lower => self.lower.len(),
        };
        if pt.index == 0 || pt.index > len {
            return Err(Error::PointOutOfRange(pt.to_string()));
        }
        Ok(match pt.row {
            Row::Lower => pt.index - 1,
            Row::Upper => self.size() - pt.index,
        })
    }

    pub fn drawn_color(&self, pt: PointRef) -> Result<Color> {
        self.pos(pt)?;
        Ok(match pt.row {
            Row::Upper => self.upper[pt.index - 1],
            Row::Lower => self.lower[pt.index - 1],
        })
    }

    /// Normalized color at a cyclic position.
    pub fn ncolor_at(&self, pos: usize) -> Color {
        let n = self.lower.len();
        if pos < n {
            self.lower[pos]
        } else {
            self.upper[self.size() - pos - 1].inverse()
        }
    }

    pub fn normalized_color(&self, pt: PointRef) -> Result<Color> {
        Ok(self.ncolor_at(self.pos(pt)?))
    }

    pub fn upper_labels(&self) -> Vec<usize> {
        (1..=self.upper.len()).map(|j| self.labels[self.size() - j]).collect()
    }

    pub fn lower_labels(&self) -> Vec<usize> {
        self.labels[..self.lower.len()].to_vec()
    }

    /// Blocks as sorted lists of cyclic positions, ordered by smallest position.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.n_blocks()];
        for (pos, &l) in self.labels.iter().enumerate() {
            out[l].push(pos);
        }
        out
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks().iter().map(Vec::len).collect()
    }

    pub fn succ(&self, pos: usize) -> usize {
        (pos + 1) % self.size()
    }

    pub fn pred(&self, pos: usize) -> usize {
        (pos + self.size() - 1) % self.size()
    }

    /// Sum of the signs of normalized colors over the given positions.
    pub fn sigma_positions(&self, positions: impl IntoIterator<Item = usize>) -> i64 {
        positions.into_iter().map(|p| self.ncolor_at(p).sign()).sum()
    }

    pub fn sigma(&self, points: &[PointRef]) -> Result<i64> {
        let pos = points.iter().map(|&p| self.pos(p)).collect::<Result<Vec<_>>>()?;
        Ok(self.sigma_positions(pos))
    }

    /// Color sum of all points.
    pub fn total_color_sum(&self) -> i64 {
        self.sigma_positions(0..self.size())
    }

    /// Positions strictly between `a` and `b`, walking forward from `a`.
    pub fn open_interval(&self, a: usize, b: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut x = self.succ(a);
        while x != b {
            out.push(x);
            x = self.succ(x);
        }
        out
    }

    pub fn interval(&self, a: PointRef, b: PointRef, kind: IntervalKind) -> Result<Vec<PointRef>> {
        let (pa, pb) = (self.pos(a)?, self.pos(b)?);
        if pa == pb && kind != IntervalKind::Closed {
            return Err(Error::SamePoint);
        }
        let mut v = Vec::new();
        if kind == IntervalKind::Closed {
            v.push(pa);
        }
        if pa != pb {
            v.extend(self.open_interval(pa, pb));
            if kind != IntervalKind::Open {
                v.push(pb);
            }
        }
        Ok(v.into_iter().map(|p| self.point_at(p)).collect())
    }

    /// `σ(]a, b]) + (σ(a) − σ(b)) / 2` on cyclic positions.
    pub fn delta_positions(&self, a: usize, b: usize) -> i64 {
        let inner = self.sigma_positions(self.open_interval(a, b));
        let sa = self.ncolor_at(a).sign();
        let sb = self.ncolor_at(b).sign();
        inner + sb + (sa - sb) / 2
    }

    pub fn color_distance(&self, a: PointRef, b: PointRef) -> Result<i64> {
        let (pa, pb) = (self.pos(a)?, self.pos(b)?);
        if pa == pb {
            return Err(Error::SamePoint);
        }
        Ok(self.delta_positions(pa, pb))
    }

    /// Whether blocks `b1` and `b2` (given by label) cross.
    pub fn labels_cross(&self, b1: usize, b2: usize) -> bool {
        if b1 == b2 {
            return false;
        }
        // Walk the cyclic order and count alternations between the two blocks.
        let seq: Vec<usize> = self.labels.iter().copied().filter(|&l| l == b1 || l == b2).collect();
        let mut changes = 0;
        for i in 0..seq.len() {
            if seq[i] != seq[(i + 1) % seq.len()] {
                changes += 1;
            }
        }
        changes >= 4
    }

    /// Whether two distinct blocks, given by their points, cross.
    pub fn blocks_cross(&self, b1: &[PointRef], b2: &[PointRef]) -> Result<bool> {
        let label = |b: &[PointRef]| -> Result<usize> {
            let first = *b.first().ok_or_else(|| Error::InvalidParams("empty block".into()))?;
            let l = self.labels[self.pos(first)?];
            let expect: Vec<usize> = self.blocks()[l].clone();
            let mut got = b.iter().map(|&p| self.pos(p)).collect::<Result<Vec<_>>>()?;
            got.sort_unstable();
            if got != expect {
                return Err(Error::InvalidParams(format!("not a block of {self}")));
            }
            Ok(l)
        };
        let (l1, l2) = (label(b1)?, label(b2)?);
        if l1 == l2 {
            return Err(Error::InvalidParams("blocks must be distinct".into()));
        }
        Ok(self.labels_cross(l1, l2))
    }

    pub fn block_points(&self, label: usize) -> Vec<PointRef> {
        self.blocks()[label].iter().map(|&p| self.point_at(p)).collect()
    }

    /// Blocks in literal order: by first point in `u1..um, l1..ln`, with upper
    /// points first inside a block.
    pub fn print_blocks(&self) -> Vec<Vec<PointRef>> {
        let mut order: Vec<PointRef> = (1..=self.upper.len()).map(PointRef::upper).collect();
        order.extend((1..=self.lower.len()).map(PointRef::lower));
        let mut seen = vec![None; self.n_blocks()];
        let mut out: Vec<Vec<PointRef>> = Vec::new();
        for pt in order {
            let l = self.labels[self.pos(pt).expect("valid")];
            let idx = *seen[l].get_or_insert_with(|| {
                out.push(Vec::new());
                out.len() - 1
            });
            out[idx].push(pt);
        }
        out
    }

    pub fn is_pair_only(&self) -> bool {
        self.block_sizes().iter().all(|&s| s <= 2)
    }
}

fn fmt_row(row: &[Color]) -> String {
    if row.is_empty() {
        "-".into()
    } else {
        row.iter().map(|c| c.symbol()).collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:", fmt_row(&self.upper), fmt_row(&self.lower))?;
        for b in self.print_blocks() {
            let pts: Vec<String> = b.iter().map(ToString::to_string).collect();
            write!(f, "[{}]", pts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition({self})")
    }
}

fn parse_row(s: &str, offset: usize) -> Result<Vec<Color>> {
    let s = s.trim();
    if s == "-" {
        return Ok(vec![]);
    }
    s.chars()
        .enumerate()
        .map(|(i, c)| match c {
            'w' => Ok(Color::White),
            'b' => Ok(Color::Black),
            _ => Err(Error::Syntax { pos: offset + i, msg: format!("bad color `{c}`") }),
        })
        .collect()
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        let mut parts = text.splitn(3, ':');
        let (up, lo, blocks) = match (parts.next(), parts.next(), parts.next()) {
            (Some(a), Some(b), Some(c)) => (a, b, c),
            _ => return Err(Error::Syntax { pos: 0, msg: "expected UPPER:LOWER:BLOCKS".into() }),
        };
        if up.trim().is_empty() || lo.trim().is_empty() {
            return Err(Error::Syntax { pos: 0, msg: "empty row must be written `-`".into() });
        }
        let upper = parse_row(up, 0)?;
        let lower = parse_row(lo, up.len() + 1)?;
        let base = up.len() + lo.len() + 2;
        let mut groups = Vec::new();
        let mut rest = blocks;
        let mut at = base;
        loop {
            let t = rest.trim_start();
            at += rest.len() - t.len();
            if t.is_empty() {
                break;
            }
            if !t.starts_with('[') {
                return Err(Error::Syntax { pos: at, msg: "expected `[`".into() });
            }
            let close = t.find(']').ok_or(Error::Syntax { pos: at, msg: "unclosed `[`".into() })?;
            let pts = t[1..close]
                .split_whitespace()
                .map(|w| {
                    w.parse::<PointRef>()
                        .map_err(|_| Error::Syntax { pos: at, msg: format!("bad point `{w}`") })
                })
                .collect::<Result<Vec<_>>>()?;
            if pts.is_empty() {
                return Err(Error::Syntax { pos: at, msg: "empty block".into() });
            }
            groups.push(pts);
            rest = &t[close + 1..];
            at += close + 1;
        }
        Partition::from_blocks(upper, lower, &groups)
    }
}

/// Number of all partitions of `n` points (colorings times set partitions).
pub fn count_partitions(n: usize) -> u64 {
    let mut bell = vec![vec![0u64; n + 1]; n + 1];
    bell[0][0] = 1;
    for i in 1..=n {
        bell[i][0] = bell[i - 1][i - 1];
        for j in 1..=i {
            bell[i][j] = bell[i][j - 1] + bell[i - 1][j - 1];
        }
    }
    (1u64 << n) * bell[n][0]
}

/// Default cap on the number of points for enumeration.
pub const DEFAULT_ENUM_CAP: usize = 8;

/// All set partitions of `n` points as restricted growth strings.
pub fn restricted_growth_strings(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, max: usize, n: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        let top = if cur.is_empty() { 0 } else { max + 1 };
        for l in 0..=top {
            cur.push(l);
            rec(cur, max.max(l), n, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(n), 0, n, &mut out);
    out
}

fn colorings(n: usize) -> impl Iterator<Item = Vec<Color>> {
    (0..1u32 << n).map(move |bits| {
        (0..n)
            .map(|i| if bits >> i & 1 == 0 { Color::White } else { Color::Black })
            .collect()
    })
}

/// Every partition with the given row lengths, each exactly once.
pub fn enumerate_partitions(upper_len: usize, lower_len: usize, cap: usize) -> Result<Vec<Partition>> {
    let n = upper_len + lower_len;
    if n > cap {
        return Err(Error::CapExceeded { points: n, cap });
    }
    let shapes = restricted_growth_strings(n);
    let mut out = Vec::with_capacity(shapes.len() << n);
    for up in colorings(upper_len) {
        for lo in colorings(lower_len) {
            for s in &shapes {
                out.push(Partition { upper: up.clone(), lower: lo.clone(), labels: s.clone() });
            }
        }
    }
    Ok(out)
}

/// Every partition with at most `max_points` points, over all row splits.
pub fn enumerate_up_to(max_points: usize) -> Result<Vec<Partition>> {
    let mut out = Vec::new();
    for n in 0..=max_points {
        for m in 0..=n {
            out.extend(enumerate_partitions(m, n - m, max_points.max(DEFAULT_ENUM_CAP))?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn parse_examples() {
        let pair = p("-:wb:[l1 l2]");
        assert_eq!(pair.lower(), &[Color::White, Color::Black]);
        assert_eq!(pair.n_blocks(), 1);
        assert_eq!(p("w:w:[u1 l1]").size(), 2);
        assert_eq!("-:wb:[l1][l1]".parse::<Partition>(), Err(Error::DuplicatePoint("l1".into())));
        assert_eq!("-:wb:[l1]".parse::<Partition>(), Err(Error::MissingPoint("l2".into())));
        assert_eq!("-:wb:[l1 l3]".parse::<Partition>(), Err(Error::PointOutOfRange("l3".into())));
        assert!(matches!("wb:[l1]".parse::<Partition>(), Err(Error::Syntax { .. })));
        assert!(matches!("-:wx:[l1 l2]".parse::<Partition>(), Err(Error::Syntax { .. })));
        assert_eq!(p("-:-:"), Partition::empty());
    }

    #[test]
    fn print_is_canonical() {
        for s in ["-:wb:[l1 l2]", "w:w:[u1][l1]", "-:wbwb:[l1][l2 l3 l4]", "wb:wb:[u1 u2][l1 l2]", "-:-:", "bw:-:[u1 u2]"] {
            assert_eq!(p(s).to_string(), s);
        }
        assert_eq!(p("wb:wb:[l1 l2][u1 u2]").to_string(), "wb:wb:[u1 u2][l1 l2]");
    }

    #[test]
    fn normalized_colors() {
        assert_eq!(p("-:wb:[l1 l2]").normalized_color(PointRef::lower(1)), Ok(Color::White));
        assert_eq!(p("w:w:[u1 l1]").normalized_color(PointRef::upper(1)), Ok(Color::Black));
        assert_eq!(p("b:b:[u1 l1]").normalized_color(PointRef::upper(1)), Ok(Color::White));
        assert!(p("b:b:[u1 l1]").normalized_color(PointRef::upper(2)).is_err());
    }

    #[test]
    fn sigma_examples() {
        let pair = p("-:wb:[l1 l2]");
        assert_eq!(pair.sigma(&[PointRef::lower(1), PointRef::lower(2)]), Ok(0));
        assert_eq!(p("-:ww:[l1 l2]").total_color_sum(), 2);
        assert_eq!(pair.sigma(&[]), Ok(0));
        assert_eq!(p("-:w:[l1]").total_color_sum(), 1);
        assert_eq!(Partition::empty().total_color_sum(), 0);
    }

    #[test]
    fn interval_examples() {
        use IntervalKind::*;
        let (l1, l2, l4, u1) = (PointRef::lower(1), PointRef::lower(2), PointRef::lower(4), PointRef::upper(1));
        assert_eq!(p("-:wb:[l1 l2]").interval(l1, l2, HalfOpen), Ok(vec![l2]));
        assert_eq!(p("-:wbwb:[l1 l3][l2 l4]").interval(l4, l1, HalfOpen), Ok(vec![l1]));
        assert_eq!(p("w:w:[u1 l1]").interval(l1, u1, Open), Ok(vec![]));
        assert_eq!(p("wb:w:[u1 u2][l1]").interval(l1, u1, Closed), Ok(vec![l1, PointRef::upper(2), u1]));
        assert_eq!(p("w:w:[u1 l1]").interval(l1, l1, Open), Err(Error::SamePoint));
    }

    #[test]
    fn distance_examples() {
        let (l1, l2, u1) = (PointRef::lower(1), PointRef::lower(2), PointRef::upper(1));
        assert_eq!(p("-:wb:[l1 l2]").color_distance(l1, l2), Ok(0));
        assert_eq!(p("w:w:[u1 l1]").color_distance(l1, u1), Ok(0));
        let ww = p("-:ww:[l1 l2]");
        assert_eq!(ww.color_distance(l1, l2), Ok(1));
        assert_eq!(ww.color_distance(l2, l1), Ok(1));
        assert_eq!(ww.color_distance(l1, l1), Err(Error::SamePoint));
    }

    #[test]
    fn crossing_examples() {
        let (l1, l2, l3, l4) = (PointRef::lower(1), PointRef::lower(2), PointRef::lower(3), PointRef::lower(4));
        assert_eq!(p("-:wbwb:[l1 l3][l2 l4]").blocks_cross(&[l1, l3], &[l2, l4]), Ok(true));
        assert_eq!(p("-:wbbw:[l1 l4][l2 l3]").blocks_cross(&[l1, l4], &[l2, l3]), Ok(false));
        assert_eq!(p("-:wb:[l1][l2]").blocks_cross(&[l1], &[l2]), Ok(false));
        assert!(p("-:wb:[l1 l2]").blocks_cross(&[l1], &[l2]).is_err());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_partitions(0, 1, 8).unwrap().len(), 2);
        assert_eq!(enumerate_partitions(0, 2, 8).unwrap().len(), 8);
        let small = enumerate_partitions(0, 3, 8).unwrap().into_iter().filter(Partition::is_pair_only).count();
        assert_eq!(small, 4 * 8);
        assert!(matches!(enumerate_partitions(5, 4, 8), Err(Error::CapExceeded { .. })));
        assert_eq!(count_partitions(3), 8 * 5);
    }
}
