//! Category operations on partitions and the operations derived from them.
//!
//! `compose(bottom, top)` stacks `top` onto `bottom`: the juxtaposition `ab`
//! is `compose(a, b)`. Rotations take a [`Conventions`] value through their
//! `_with` variants so that the color convention can be flipped for mutation
//! testing.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::partition::{Color, Partition, PointRef, Row};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Conventions {
    /// Whether a basic rotation inverts the drawn color of the moved point.
    pub rotation_inverts_color: bool,
}

impl Conventions {
    pub const STANDARD: Conventions = Conventions { rotation_inverts_color: true };
    pub const FLIPPED: Conventions = Conventions { rotation_inverts_color: false };
}

impl Default for Conventions {
    fn default() -> Self {
        Self::STANDARD
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Corner {
    UpLeft,
    UpRight,
    DownLeft,
    DownRight,
}

impl Corner {
    pub const ALL: [Corner; 4] = [Corner::UpLeft, Corner::UpRight, Corner::DownLeft, Corner::DownRight];

    pub fn name(self) -> &'static str {
        match self {
            Corner::UpLeft => "up_left",
            Corner::UpRight => "up_right",
            Corner::DownLeft => "down_left",
            Corner::DownRight => "down_right",
        }
    }
}

impl fmt::Display for Corner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Corner {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Corner::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Syntax { pos: 0, msg: format!("unknown corner `{s}`") })
    }
}

pub fn tensor(p: &Partition, q: &Partition) -> Partition {
    let off = p.n_blocks();
    let upper = [p.upper(), q.upper()].concat();
    let lower = [p.lower(), q.lower()].concat();
    let shift = |v: Vec<usize>| v.into_iter().map(|l| l + off).collect::<Vec<_>>();
    let ul = [p.upper_labels(), shift(q.upper_labels())].concat();
    let ll = [p.lower_labels(), shift(q.lower_labels())].concat();
    Partition::from_row_labels(upper, lower, &ul, &ll)
}

/// Swaps the rows, keeping drawn colors.
pub fn involution(p: &Partition) -> Partition {
    Partition::from_row_labels(p.lower().to_vec(), p.upper().to_vec(), &p.lower_labels(), &p.upper_labels())
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

/// Glues the upper row of `bottom` to the lower row of `top`. Components
/// living only in the middle row are dropped.
pub fn compose(bottom: &Partition, top: &Partition) -> Result<Partition> {
    if bottom.upper() != top.lower() {
        return Err(Error::NotComposable(format!("upper row of {bottom} does not match lower row of {top}")));
    }
    let nb = bottom.n_blocks();
    let mut parent: Vec<usize> = (0..nb + top.n_blocks()).collect();
    for (a, b) in bottom.upper_labels().into_iter().zip(top.lower_labels()) {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, nb + b));
        parent[ra] = rb;
    }
    let ll: Vec<usize> = bottom.lower_labels().into_iter().map(|l| find(&mut parent, l)).collect();
    let ul: Vec<usize> = top.upper_labels().into_iter().map(|l| find(&mut parent, nb + l)).collect();
    Ok(Partition::from_row_labels(top.upper().to_vec(), bottom.lower().to_vec(), &ul, &ll))
}

pub fn rotate(p: &Partition, corner: Corner) -> Result<Partition> {
    rotate_with(p, corner, Conventions::STANDARD)
}

/// Moves an end point of one row to the same end of the other row.
pub fn rotate_with(p: &Partition, corner: Corner, conv: Conventions) -> Result<Partition> {
    let recolor = |c: Color| if conv.rotation_inverts_color { c.inverse() } else { c };
    let mut upper = p.upper().to_vec();
    let mut lower = p.lower().to_vec();
    let mut labels = p.labels().to_vec();
    match corner {
        Corner::DownLeft => {
            if upper.is_empty() {
                return Err(Error::EmptyRow(corner.name()));
            }
            lower.insert(0, recolor(upper.remove(0)));
            labels.rotate_right(1);
        }
        Corner::UpLeft => {
            if lower.is_empty() {
                return Err(Error::EmptyRow(corner.name()));
            }
            upper.insert(0, recolor(lower.remove(0)));
            labels.rotate_left(1);
        }
        Corner::DownRight => {
            let c = upper.pop().ok_or(Error::EmptyRow(corner.name()))?;
            lower.push(recolor(c));
        }
        Corner::UpRight => {
            let c = lower.pop().ok_or(Error::EmptyRow(corner.name()))?;
            upper.push(recolor(c));
        }
    }
    Ok(Partition::from_cyclic_labels(upper, lower, &labels))
}

pub fn rotate_cyclic(p: &Partition, steps: i64) -> Partition {
    rotate_cyclic_with(p, steps, Conventions::STANDARD)
}

/// Shifts the cyclic order so that position `steps` becomes `l1`, keeping the
/// row lengths. Built from basic rotations.
pub fn rotate_cyclic_with(p: &Partition, steps: i64, conv: Conventions) -> Partition {
    let n = p.size() as i64;
    if n == 0 {
        return p.clone();
    }
    let s = steps.rem_euclid(n);
    let mut q = p.clone();
    let rot = |q: &Partition, c| rotate_with(q, c, conv).expect("row checked nonempty");
    for _ in 0..s {
        q = if q.n_lower() > 0 {
            rot(&rot(&q, Corner::UpLeft), Corner::DownRight)
        } else {
            rot(&rot(&q, Corner::DownRight), Corner::UpLeft)
        };
    }
    q
}

/// Rotates position `start` to `l1` and then moves points across the right
/// end until the lower row has `lower_len` points.
pub fn reshape_with(p: &Partition, start: usize, lower_len: usize, conv: Conventions) -> Partition {
    assert!(lower_len <= p.size());
    let mut q = rotate_cyclic_with(p, start as i64, conv);
    while q.n_lower() < lower_len {
        q = rotate_with(&q, Corner::DownRight, conv).expect("upper row nonempty");
    }
    while q.n_lower() > lower_len {
        q = rotate_with(&q, Corner::UpRight, conv).expect("lower row nonempty");
    }
    q
}

/// Reverses both rows and inverts every color.
pub fn verticolor_reflect(p: &Partition) -> Partition {
    let inv = |row: &[Color]| row.iter().rev().map(|c| c.inverse()).collect::<Vec<_>>();
    let mut ul = p.upper_labels();
    let mut ll = p.lower_labels();
    ul.reverse();
    ll.reverse();
    Partition::from_row_labels(inv(p.upper()), inv(p.lower()), &ul, &ll)
}

/// The image of a point under the mirror of [`verticolor_reflect`].
pub fn mirror_point(p: &Partition, pt: PointRef) -> PointRef {
    let len = match pt.row {
        Row::Upper => p.n_upper(),
        Row::Lower => p.n_lower(),
    };
    PointRef { row: pt.row, index: len + 1 - pt.index }
}

/// Two cyclically consecutive points `a`, `b = succ(a)` of inverse normalized
/// colors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Turn {
    pub a: PointRef,
    pub b: PointRef,
}

impl Turn {
    pub fn new(p: &Partition, a: PointRef, b: PointRef) -> Result<Turn> {
        let (pa, pb) = (p.pos(a)?, p.pos(b)?);
        if pa == pb {
            return Err(Error::SamePoint);
        }
        if p.succ(pa) != pb {
            return Err(Error::NotATurn(format!("{b} does not follow {a}")));
        }
        if p.ncolor_at(pa) == p.ncolor_at(pb) {
            return Err(Error::NotATurn(format!("{a} and {b} have the same normalized color")));
        }
        Ok(Turn { a, b })
    }

    /// The turn starting at cyclic position `pos`, if there is one.
    pub fn at(p: &Partition, pos: usize) -> Option<Turn> {
        if p.size() < 2 {
            return None;
        }
        Turn::new(p, p.point_at(pos), p.point_at(p.succ(pos))).ok()
    }
}

pub fn all_turns(p: &Partition) -> Vec<Turn> {
    (0..p.size()).filter_map(|i| Turn::at(p, i)).collect()
}

/// Row-wise colors and block labels, with point removal.
struct Rows {
    upper: Vec<(Color, usize)>,
    lower: Vec<(Color, usize)>,
}

impl Rows {
    fn of(p: &Partition) -> Rows {
        Rows {
            upper: p.upper().iter().copied().zip(p.upper_labels()).collect(),
            lower: p.lower().iter().copied().zip(p.lower_labels()).collect(),
        }
    }

    fn relabel(&mut self, from: usize, to: usize) {
        for e in self.upper.iter_mut().chain(self.lower.iter_mut()) {
            if e.1 == from {
                e.1 = to;
            }
        }
    }

    fn build(self) -> Partition {
        let (uc, ul): (Vec<_>, Vec<_>) = self.upper.into_iter().unzip();
        let (lc, ll): (Vec<_>, Vec<_>) = self.lower.into_iter().unzip();
        Partition::from_row_labels(uc, lc, &ul, &ll)
    }
}

/// Removes the two points of a turn, merging their blocks.
pub fn erase_turn(p: &Partition, t: &Turn) -> Result<Partition> {
    Turn::new(p, t.a, t.b)?;
    let la = p.labels()[p.pos(t.a)?];
    let lb = p.labels()[p.pos(t.b)?];
    let mut rows = Rows::of(p);
    rows.relabel(lb, la);
    let mut pts = [t.a, t.b];
    pts.sort_by_key(|q| std::cmp::Reverse(q.index));
    for q in pts {
        match q.row {
            Row::Upper => rows.upper.remove(q.index - 1),
            Row::Lower => rows.lower.remove(q.index - 1),
        };
    }
    Ok(rows.build())
}

/// A cyclic arc of points: `len` positions starting at `start`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ConsecutiveSet {
    pub start: usize,
    pub len: usize,
}

impl ConsecutiveSet {
    pub fn new(p: &Partition, points: &[PointRef]) -> Result<ConsecutiveSet> {
        let n = p.size();
        let mut inside = vec![false; n];
        for &pt in points {
            inside[p.pos(pt)?] = true;
        }
        let len = inside.iter().filter(|&&b| b).count();
        if len == 0 || len == n {
            return Ok(ConsecutiveSet { start: 0, len });
        }
        let starts: Vec<usize> = (0..n).filter(|&i| inside[i] && !inside[p.pred(i)]).collect();
        match starts.as_slice() {
            [s] => Ok(ConsecutiveSet { start: *s, len }),
            _ => Err(Error::NotConsecutive),
        }
    }

    pub fn lower_row(p: &Partition) -> ConsecutiveSet {
        ConsecutiveSet { start: 0, len: p.n_lower() }
    }

    /// Every consecutive set of `p`, each once.
    pub fn all(p: &Partition) -> Vec<ConsecutiveSet> {
        let n = p.size();
        let mut out = vec![ConsecutiveSet { start: 0, len: 0 }];
        for len in 1..n {
            out.extend((0..n).map(|start| ConsecutiveSet { start, len }));
        }
        if n > 0 {
            out.push(ConsecutiveSet { start: 0, len: n });
        }
        out
    }

    pub fn positions(&self, p: &Partition) -> Vec<usize> {
        (0..self.len).map(|j| (self.start + j) % p.size()).collect()
    }

    pub fn points(&self, p: &Partition) -> Vec<PointRef> {
        self.positions(p).into_iter().map(|q| p.point_at(q)).collect()
    }

    fn is_full(&self, p: &Partition) -> bool {
        self.len == p.size()
    }
}

/// Local comparison of two partitions on consecutive point sets.
pub fn equivalent(p1: &Partition, s1: &ConsecutiveSet, p2: &Partition, s2: &ConsecutiveSet) -> bool {
    if s1.len == 0 && s2.len == 0 {
        return true;
    }
    if s1.len != s2.len {
        return false;
    }
    let starts = |p: &Partition, s: &ConsecutiveSet| -> Vec<usize> {
        if s.is_full(p) {
            (0..p.size()).collect()
        } else {
            vec![s.start]
        }
    };
    let inside = |p: &Partition, s: &ConsecutiveSet| -> Vec<bool> {
        let pos = s.positions(p);
        p.blocks().iter().map(|b| b.iter().all(|x| pos.contains(x))).collect()
    };
    let (in1, in2) = (inside(p1, s1), inside(p2, s2));
    let k = s1.len;
    starts(p1, s1).into_iter().any(|a1| {
        starts(p2, s2).into_iter().any(|a2| {
            let g1: Vec<usize> = (0..k).map(|j| (a1 + j) % p1.size()).collect();
            let g2: Vec<usize> = (0..k).map(|j| (a2 + j) % p2.size()).collect();
            if (0..k).any(|j| p1.ncolor_at(g1[j]) != p2.ncolor_at(g2[j])) {
                return false;
            }
            (0..k).all(|j| {
                (0..k).all(|jj| {
                    let (b1, bb1) = (p1.labels()[g1[j]], p1.labels()[g1[jj]]);
                    let (b2, bb2) = (p2.labels()[g2[j]], p2.labels()[g2[jj]]);
                    let same1 = b1 == bb1;
                    let same2 = b2 == bb2;
                    (same1 && in1[b1]) == (same2 && in2[b2]) && (same1 && !in1[b1]) == (same2 && !in2[b2])
                })
            })
        })
    })
}

pub fn project(p: &Partition, s: &ConsecutiveSet) -> Partition {
    project_with(p, s, Conventions::STANDARD)
}

/// The projection of `(p, S)`: rotate `S` onto the lower row, then `q q*`.
pub fn project_with(p: &Partition, s: &ConsecutiveSet, conv: Conventions) -> Partition {
    if s.len == 0 {
        return Partition::empty();
    }
    let q = reshape_with(p, s.start, s.len, conv);
    compose(&q, &involution(&q)).expect("q and q* are composable")
}

pub fn is_projective(p: &Partition) -> bool {
    *p == involution(p) && compose(p, p).as_ref() == Ok(p)
}

pub fn disconnect_point(p: &Partition, alpha: PointRef) -> Result<Partition> {
    disconnect_point_with(p, alpha, Conventions::STANDARD)
}

/// Makes `alpha` a singleton by composing with a singleton projector after
/// rotating it to be the only lower point.
pub fn disconnect_point_with(p: &Partition, alpha: PointRef, conv: Conventions) -> Result<Partition> {
    let pa = p.pos(alpha)?;
    let n = p.size();
    let q = reshape_with(p, pa, 1, conv);
    let c = q.lower()[0];
    let proj = Partition::from_row_labels(vec![c], vec![c], &[0], &[1]);
    let r = compose(&proj, &q)?;
    Ok(reshape_with(&r, (n - pa) % n, p.n_lower(), conv))
}

/// Direct block surgery equivalent of [`disconnect_point`].
pub fn disconnect_point_surgery(p: &Partition, alpha: PointRef) -> Result<Partition> {
    let pa = p.pos(alpha)?;
    let mut labels = p.labels().to_vec();
    labels[pa] = usize::MAX;
    Ok(Partition::from_cyclic_labels(p.upper().to_vec(), p.lower().to_vec(), &labels))
}

pub fn connect_turn(p: &Partition, t: &Turn) -> Result<Partition> {
    connect_turn_with(p, t, Conventions::STANDARD)
}

/// Merges the blocks of a turn by rotating the turn onto the upper row and
/// composing with a four-block projector.
pub fn connect_turn_with(p: &Partition, t: &Turn, conv: Conventions) -> Result<Partition> {
    Turn::new(p, t.a, t.b)?;
    let n = p.size();
    let start = (p.pos(t.b)? + 1) % n;
    let q = reshape_with(p, start, n - 2, conv);
    let up = q.upper().to_vec();
    let four = Partition::from_row_labels(up.clone(), up, &[0, 0], &[0, 0]);
    let r = compose(&q, &four)?;
    Ok(reshape_with(&r, (n - start) % n, p.n_lower(), conv))
}

/// Direct block surgery equivalent of [`connect_turn`].
pub fn connect_turn_surgery(p: &Partition, t: &Turn) -> Result<Partition> {
    Turn::new(p, t.a, t.b)?;
    let la = p.labels()[p.pos(t.a)?];
    let lb = p.labels()[p.pos(t.b)?];
    let labels: Vec<usize> = p.labels().iter().map(|&l| if l == lb { la } else { l }).collect();
    Ok(Partition::from_cyclic_labels(p.upper().to_vec(), p.lower().to_vec(), &labels))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    const PAIR: &str = "-:wb:[l1 l2]";

    #[test]
    fn tensor_examples() {
        assert_eq!(tensor(&p(PAIR), &p(PAIR)), p("-:wbwb:[l1 l2][l3 l4]"));
        assert_eq!(tensor(&p("w:b:[u1][l1]"), &Partition::empty()), p("w:b:[u1][l1]"));
        let w = p("-:w:[l1]");
        assert_eq!(tensor(&w, &w).total_color_sum(), 2);
    }

    #[test]
    fn involution_examples() {
        assert_eq!(involution(&p("w:w:[u1 l1]")), p("w:w:[u1 l1]"));
        assert_eq!(involution(&p(PAIR)), p("wb:-:[u1 u2]"));
    }

    #[test]
    fn compose_examples() {
        let id = p("w:w:[u1 l1]");
        assert_eq!(compose(&id, &id), Ok(id.clone()));
        let pair = p(PAIR);
        assert_eq!(compose(&pair, &involution(&pair)), Ok(p("wb:wb:[l1 l2][u1 u2]")));
        assert!(matches!(compose(&id, &p("b:b:[u1 l1]")), Err(Error::NotComposable(_))));
        // A closed loop in the middle row disappears.
        assert_eq!(compose(&p("wb:-:[u1 u2]"), &p(PAIR)), Ok(Partition::empty()));
    }

    #[test]
    fn rotation_examples() {
        assert_eq!(rotate(&p("-:wb:[l1][l2]"), Corner::UpRight), Ok(p("w:w:[u1][l1]")));
        assert_eq!(rotate(&p(PAIR), Corner::UpLeft), Ok(p("b:b:[u1 l1]")));
        assert_eq!(rotate(&p(PAIR), Corner::DownLeft), Err(Error::EmptyRow("down_left")));
        let q = p("wb:bww:[u1 l3][u2 l1][l2]");
        assert_eq!(rotate(&rotate(&q, Corner::DownLeft).unwrap(), Corner::UpLeft), Ok(q.clone()));
        assert_eq!(rotate_cyclic(&q, 0), q);
        assert_eq!(rotate_cyclic(&rotate_cyclic(&p(PAIR), 1), -1), p(PAIR));
        assert_eq!(rotate_cyclic(&q, 5), q);
    }

    #[test]
    fn reflection_examples() {
        assert_eq!(verticolor_reflect(&p("-:ww:[l1 l2]")), p("-:bb:[l1 l2]"));
        assert_eq!(verticolor_reflect(&p("-:wb:[l1][l2]")), p("-:wb:[l1][l2]"));
        let q = p("wb:bww:[u1 l3][u2 l1][l2]");
        assert_eq!(verticolor_reflect(&verticolor_reflect(&q)), q);
    }

    #[test]
    fn erase_examples() {
        let q = p("-:wbwb:[l1 l2][l3 l4]");
        let t = Turn::new(&q, PointRef::lower(2), PointRef::lower(3)).unwrap();
        assert_eq!(erase_turn(&q, &t), Ok(p(PAIR)));
        let pair = p(PAIR);
        let t = Turn::new(&pair, PointRef::lower(1), PointRef::lower(2)).unwrap();
        assert_eq!(erase_turn(&pair, &t), Ok(Partition::empty()));
        let ww = p("-:ww:[l1 l2]");
        assert!(matches!(Turn::new(&ww, PointRef::lower(1), PointRef::lower(2)), Err(Error::NotATurn(_))));
        let bad = Turn { a: PointRef::lower(1), b: PointRef::lower(2) };
        assert!(erase_turn(&ww, &bad).is_err());
    }

    #[test]
    fn equivalence_examples() {
        let pair = p(PAIR);
        let four = p("-:wbwb:[l1 l2 l3 l4]");
        let empty = ConsecutiveSet { start: 0, len: 0 };
        assert!(equivalent(&pair, &empty, &four, &empty));
        let l1 = |q: &Partition| ConsecutiveSet::new(q, &[PointRef::lower(1)]).unwrap();
        let id = p("w:w:[u1 l1]");
        assert!(equivalent(&pair, &l1(&pair), &id, &l1(&id)));
        let sing = p("-:wb:[l1][l2]");
        assert!(!equivalent(&pair, &l1(&pair), &sing, &l1(&sing)));
        assert_eq!(ConsecutiveSet::new(&four, &[PointRef::lower(1), PointRef::lower(3)]), Err(Error::NotConsecutive));
        assert_eq!(ConsecutiveSet::new(&four, &[PointRef::lower(4), PointRef::lower(1)]), Ok(ConsecutiveSet { start: 3, len: 2 }));
    }

    #[test]
    fn projection_examples() {
        let pair = p(PAIR);
        let s1 = ConsecutiveSet::new(&pair, &[PointRef::lower(1)]).unwrap();
        assert_eq!(project(&pair, &s1), p("w:w:[u1 l1]"));
        let s12 = ConsecutiveSet::lower_row(&pair);
        assert_eq!(project(&pair, &s12), p("wb:wb:[l1 l2][u1 u2]"));
        assert_eq!(project(&pair, &ConsecutiveSet { start: 0, len: 0 }), Partition::empty());
    }

    #[test]
    fn projective_examples() {
        assert!(is_projective(&p("w:w:[u1 l1]")));
        assert!(!is_projective(&p(PAIR)));
        assert!(is_projective(&p("wb:wb:[l1 l2][u1 u2]")));
    }

    #[test]
    fn disconnect_examples() {
        let four = p("-:wbwb:[l1 l2 l3 l4]");
        assert_eq!(disconnect_point(&four, PointRef::lower(1)), Ok(p("-:wbwb:[l1][l2 l3 l4]")));
        let sing = p("-:wb:[l1][l2]");
        assert_eq!(disconnect_point(&sing, PointRef::lower(2)), Ok(sing.clone()));
        assert_eq!(disconnect_point(&p(PAIR), PointRef::lower(2)), Ok(sing));
        assert!(disconnect_point(&four, PointRef::upper(1)).is_err());
    }

    #[test]
    fn connect_examples() {
        let q = p("-:wbwb:[l1 l2][l3 l4]");
        let t = Turn::new(&q, PointRef::lower(2), PointRef::lower(3)).unwrap();
        assert_eq!(connect_turn(&q, &t), Ok(p("-:wbwb:[l1 l2 l3 l4]")));
        let pair = p(PAIR);
        let t = Turn::new(&pair, PointRef::lower(1), PointRef::lower(2)).unwrap();
        assert_eq!(connect_turn(&pair, &t), Ok(pair.clone()));
        let ww = p("-:ww:[l1][l2]");
        let bad = Turn { a: PointRef::lower(1), b: PointRef::lower(2) };
        assert!(matches!(connect_turn(&ww, &bad), Err(Error::NotATurn(_))));
    }
}
