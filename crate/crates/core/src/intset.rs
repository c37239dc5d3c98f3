//! Exact arithmetic on eventually periodic subsets of the integers.
//!
//! An [`IntSet`] is stored as a common period `p`, a finite window `[lo, hi)`
//! with explicit membership, a residue pattern for everything below `lo` and
//! a residue pattern for everything at or above `hi`. Left and right patterns
//! may differ, so rays such as `{1..}` and semigroups are representable.
//! Every value is kept in a canonical form, so derived equality is set
//! equality.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntSet {
    period: i64,
    lo: i64,
    hi: i64,
    window: Vec<bool>,
    left: Vec<bool>,
    right: Vec<bool>,
}

pub(crate) fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn lcm(a: i64, b: i64) -> i64 {
    a / gcd(a, b) * b
}

#[inline]
fn md(x: i64, p: i64) -> usize {
    x.rem_euclid(p) as usize
}

fn min_period(v: &[bool]) -> usize {
    let n = v.len();
    (1..=n)
        .find(|&d| n.is_multiple_of(d) && (d..n).all(|i| v[i] == v[i - d]))
        .unwrap_or(n)
}

impl IntSet {
    fn from_raw(period: i64, lo: i64, hi: i64, window: Vec<bool>, left: Vec<bool>, right: Vec<bool>) -> Self {
        debug_assert!(period >= 1 && lo <= hi);
        debug_assert_eq!(window.len() as i64, hi - lo);
        debug_assert_eq!(left.len() as i64, period);
        debug_assert_eq!(right.len() as i64, period);
        let mut s = IntSet { period, lo, hi, window, left, right };
        s.normalize();
        s
    }

    /// Builds a set from tail patterns and a membership function on `[lo, hi)`.
    fn tabulate(period: i64, lo: i64, hi: i64, left: Vec<bool>, right: Vec<bool>, f: impl Fn(i64) -> bool) -> Self {
        let window = (lo..hi).map(f).collect();
        Self::from_raw(period, lo, hi, window, left, right)
    }

    fn normalize(&mut self) {
        let p = lcm(min_period(&self.left) as i64, min_period(&self.right) as i64);
        let left: Vec<bool> = self.left[..p as usize].to_vec();
        let right: Vec<bool> = self.right[..p as usize].to_vec();
        let (lo, hi) = if left == right {
            let dev: Vec<i64> = (self.lo..self.hi)
                .filter(|&x| self.contains(x) != left[md(x, p)])
                .collect();
            match (dev.first(), dev.last()) {
                (Some(&a), Some(&b)) => (a, b + 1),
                _ => (0, 0),
            }
        } else {
            let first_left_dev = (self.lo..self.hi + p)
                .find(|&x| self.contains(x) != left[md(x, p)])
                .expect("distinct tails must deviate");
            let last_right_dev = (self.lo - p..self.hi)
                .rev()
                .find(|&x| self.contains(x) != right[md(x, p)])
                .expect("distinct tails must deviate");
            let a = first_left_dev;
            let b = last_right_dev + 1;
            (a.min(b), a.max(b))
        };
        let window = (lo..hi).map(|x| self.contains(x)).collect();
        *self = IntSet { period: p, lo, hi, window, left, right };
    }

    /// Builds a set from explicit parts: membership `window[i]` for `lo + i`,
    /// `left[x mod period]` below the window and `right[x mod period]` above.
    pub fn from_parts(period: i64, lo: i64, window: Vec<bool>, left: Vec<bool>, right: Vec<bool>) -> Result<Self> {
        if period < 1 || left.len() as i64 != period || right.len() as i64 != period {
            return Err(Error::InvalidParams(format!("tail patterns must have length period = {period}")));
        }
        let hi = lo + window.len() as i64;
        Ok(Self::from_raw(period, lo, hi, window, left, right))
    }

    pub fn empty() -> Self {
        Self::from_raw(1, 0, 0, vec![], vec![false], vec![false])
    }

    /// The set of all integers.
    pub fn all() -> Self {
        Self::from_raw(1, 0, 0, vec![], vec![true], vec![true])
    }

    /// `{1, 2, 3, ...}`.
    pub fn naturals() -> Self {
        Self::ray_up(1)
    }

    /// `{a, a+1, ...}`.
    pub fn ray_up(a: i64) -> Self {
        Self::from_raw(1, a, a, vec![], vec![false], vec![true])
    }

    /// `{..., b-1, b}`.
    pub fn ray_down(b: i64) -> Self {
        Self::from_raw(1, b + 1, b + 1, vec![], vec![true], vec![false])
    }

    pub fn singleton(a: i64) -> Self {
        Self::finite([a])
    }

    pub fn finite(elems: impl IntoIterator<Item = i64>) -> Self {
        let mut v: Vec<i64> = elems.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        match (v.first(), v.last()) {
            (Some(&a), Some(&b)) => {
                let mut window = vec![false; (b - a + 1) as usize];
                for x in &v {
                    window[(x - a) as usize] = true;
                }
                Self::from_raw(1, a, b + 1, window, vec![false], vec![false])
            }
            _ => Self::empty(),
        }
    }

    /// The closed range `{a, ..., b}`.
    pub fn range(a: i64, b: i64) -> Self {
        if a > b {
            return Self::empty();
        }
        Self::finite(a..=b)
    }

    /// `a + mZ`; for `m = 0` this is `{a}`.
    pub fn residue(a: i64, m: i64) -> Self {
        let m = m.abs();
        if m == 0 {
            return Self::singleton(a);
        }
        let pat: Vec<bool> = (0..m).map(|r| r == a.rem_euclid(m)).collect();
        Self::from_raw(m, 0, 0, vec![], pat.clone(), pat)
    }

    /// `mZ`.
    pub fn multiples(m: i64) -> Self {
        Self::residue(0, m)
    }

    pub fn contains(&self, x: i64) -> bool {
        if x < self.lo {
            self.left[md(x, self.period)]
        } else if x >= self.hi {
            self.right[md(x, self.period)]
        } else {
            self.window[(x - self.lo) as usize]
        }
    }

    pub fn period(&self) -> i64 {
        self.period
    }

    /// Canonical window `[lo, hi)` outside of which the tails rule.
    pub fn window_bounds(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    pub fn is_empty(&self) -> bool {
        self.is_finite() && self.window.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.is_bounded_below() && self.is_bounded_above()
    }

    pub fn is_bounded_below(&self) -> bool {
        !self.left.iter().any(|&b| b)
    }

    pub fn is_bounded_above(&self) -> bool {
        !self.right.iter().any(|&b| b)
    }

    /// Elements of a finite set in increasing order.
    pub fn elements(&self) -> Option<Vec<i64>> {
        self.is_finite().then(|| self.window_elements())
    }

    fn window_elements(&self) -> Vec<i64> {
        (self.lo..self.hi).filter(|&x| self.contains(x)).collect()
    }

    /// Number of elements, if finite.
    pub fn len(&self) -> Option<usize> {
        self.elements().map(|v| v.len())
    }

    pub fn first_at_or_above(&self, t: i64) -> Option<i64> {
        let mut x = t;
        if x < self.lo {
            let stop = self.lo.min(x + self.period);
            if let Some(y) = (x..stop).find(|&y| self.contains(y)) {
                return Some(y);
            }
            // No left-tail member within a full period: the left tail is empty.
            x = self.lo;
        }
        (x..self.hi.max(x) + self.period).find(|&y| self.contains(y))
    }

    pub fn last_at_or_below(&self, t: i64) -> Option<i64> {
        self.negate().first_at_or_above(-t).map(|y| -y)
    }

    pub fn min(&self) -> Option<i64> {
        if self.is_bounded_below() {
            self.first_at_or_above(self.lo)
        } else {
            None
        }
    }

    pub fn max(&self) -> Option<i64> {
        if self.is_bounded_above() {
            self.last_at_or_below(self.hi)
        } else {
            None
        }
    }

    /// Smallest positive element.
    pub fn min_positive(&self) -> Option<i64> {
        self.first_at_or_above(1)
    }

    fn zip(&self, o: &IntSet, f: impl Fn(bool, bool) -> bool) -> IntSet {
        let p = lcm(self.period, o.period);
        let (sp, op) = (self.period as usize, o.period as usize);
        let lo = self.lo.min(o.lo);
        let hi = self.hi.max(o.hi);
        let left = (0..p as usize).map(|r| f(self.left[r % sp], o.left[r % op])).collect();
        let right = (0..p as usize).map(|r| f(self.right[r % sp], o.right[r % op])).collect();
        Self::tabulate(p, lo, hi, left, right, |x| f(self.contains(x), o.contains(x)))
    }

    pub fn union(&self, o: &IntSet) -> IntSet {
        self.zip(o, |a, b| a || b)
    }

    pub fn intersection(&self, o: &IntSet) -> IntSet {
        self.zip(o, |a, b| a && b)
    }

    pub fn difference(&self, o: &IntSet) -> IntSet {
        self.zip(o, |a, b| a && !b)
    }

    pub fn complement(&self) -> IntSet {
        IntSet {
            period: self.period,
            lo: self.lo,
            hi: self.hi,
            window: self.window.iter().map(|b| !b).collect(),
            left: self.left.iter().map(|b| !b).collect(),
            right: self.right.iter().map(|b| !b).collect(),
        }
    }

    pub fn is_subset(&self, o: &IntSet) -> bool {
        self.difference(o).is_empty()
    }

    /// `-S`.
    pub fn negate(&self) -> IntSet {
        let p = self.period;
        let left = (0..p).map(|r| self.right[md(-r, p)]).collect();
        let right = (0..p).map(|r| self.left[md(-r, p)]).collect();
        Self::tabulate(p, 1 - self.hi, 1 - self.lo, left, right, |x| self.contains(-x))
    }

    /// `a + S`.
    pub fn shift(&self, a: i64) -> IntSet {
        let p = self.period;
        let left = (0..p).map(|r| self.left[md(r - a, p)]).collect();
        let right = (0..p).map(|r| self.right[md(r - a, p)]).collect();
        Self::from_raw(p, self.lo + a, self.hi + a, self.window.clone(), left, right)
    }

    /// `kS = {k s | s in S}`.
    pub fn scale(&self, k: i64) -> IntSet {
        if k == 0 {
            return if self.is_empty() { Self::empty() } else { Self::singleton(0) };
        }
        if k < 0 {
            return self.scale(-k).negate();
        }
        let p = self.period;
        let kp = k * p;
        let left = (0..kp).map(|r| r % k == 0 && self.left[(r / k) as usize]).collect();
        let right = (0..kp).map(|r| r % k == 0 && self.right[(r / k) as usize]).collect();
        Self::tabulate(kp, k * self.lo, k * self.hi, left, right, |x| {
            x.rem_euclid(k) == 0 && self.contains(x.div_euclid(k))
        })
    }

    /// `S ∪ (−S)`.
    pub fn mirror(&self) -> IntSet {
        self.union(&self.negate())
    }

    fn right_tail(&self) -> IntSet {
        let f = vec![false; self.period as usize];
        Self::from_raw(self.period, self.hi, self.hi, vec![], f, self.right.clone())
    }

    fn left_tail(&self) -> IntSet {
        let f = vec![false; self.period as usize];
        Self::from_raw(self.period, self.lo, self.lo, vec![], self.left.clone(), f)
    }

    /// Sum of two sets of the shape `{x >= h : x mod p in R}`.
    fn upper_tail_sum(a: &IntSet, b: &IntSet) -> IntSet {
        if a.is_empty() || b.is_empty() {
            return Self::empty();
        }
        let big_p = lcm(a.period, b.period);
        let minima = |s: &IntSet| -> Vec<Option<i64>> {
            (0..big_p)
                .map(|c| s.right[md(c, s.period)].then(|| s.hi + (c - s.hi).rem_euclid(big_p)))
                .collect()
        };
        let (ma, mb) = (minima(a), minima(b));
        let mut res: Vec<Option<i64>> = vec![None; big_p as usize];
        for x in ma.iter().flatten() {
            for y in mb.iter().flatten() {
                let c = md(x + y, big_p);
                res[c] = Some(res[c].map_or(x + y, |v: i64| v.min(x + y)));
            }
        }
        let lo = res.iter().flatten().copied().min().expect("nonempty");
        let hi = res.iter().flatten().copied().max().expect("nonempty") + 1;
        let right = res.iter().map(|v| v.is_some()).collect();
        Self::tabulate(big_p, lo, hi, vec![false; big_p as usize], right, |x| {
            res[md(x, big_p)].is_some_and(|m| x >= m)
        })
    }

    /// Sum of a bounded-below set with a finite set, via shifts.
    fn finite_plus(fin: &[i64], s: &IntSet) -> IntSet {
        fin.iter().fold(Self::empty(), |acc, &a| acc.union(&s.shift(a)))
    }

    /// Minkowski sum `A + B`.
    pub fn sumset(&self, o: &IntSet) -> IntSet {
        if self.is_empty() || o.is_empty() {
            return Self::empty();
        }
        let (fa, fb) = (self.window_elements(), o.window_elements());
        let (la, ra) = (self.left_tail(), self.right_tail());
        let (lb, rb) = (o.left_tail(), o.right_tail());
        let mut acc = Self::finite(fa.iter().flat_map(|a| fb.iter().map(move |b| a + b)));
        acc = acc.union(&Self::finite_plus(&fa, &rb));
        acc = acc.union(&Self::finite_plus(&fb, &ra));
        acc = acc.union(&Self::finite_plus(&fa, &lb));
        acc = acc.union(&Self::finite_plus(&fb, &la));
        acc = acc.union(&Self::upper_tail_sum(&ra, &rb));
        acc = acc.union(&Self::upper_tail_sum(&la.negate(), &lb.negate()).negate());
        acc = acc.union(&Self::mixed_tail_sum(&la, &rb));
        acc = acc.union(&Self::mixed_tail_sum(&lb, &ra));
        acc
    }

    /// Sum of a downward tail and an upward tail: whole classes mod the gcd.
    fn mixed_tail_sum(down: &IntSet, up: &IntSet) -> IntSet {
        if down.is_empty() || up.is_empty() {
            return Self::empty();
        }
        let g = gcd(down.period, up.period);
        let mut pat = vec![false; g as usize];
        for (ra, _) in down.left.iter().enumerate().filter(|(_, &b)| b) {
            for (rb, _) in up.right.iter().enumerate().filter(|(_, &b)| b) {
                pat[(ra + rb) % g as usize] = true;
            }
        }
        Self::from_raw(g, 0, 0, vec![], pat.clone(), pat)
    }

    /// `xA + yB`.
    pub fn linear_combine(x: i64, a: &IntSet, y: i64, b: &IntSet) -> IntSet {
        a.scale(x).sumset(&b.scale(y))
    }

    /// `(S ∪ (m − S)) + mZ`; for `m = 0` this is `S ∪ (−S)`.
    pub fn d_sub_m(&self, m: i64) -> IntSet {
        let sym = self.union(&self.negate().shift(m));
        if m == 0 {
            sym
        } else {
            sym.sumset(&Self::multiples(m))
        }
    }

    /// `(S ∪ (m − S) ∪ {0}) + mZ`.
    pub fn d_prime(&self, m: i64) -> IntSet {
        self.d_sub_m(m).union(&Self::multiples(m))
    }

    /// Returns `d >= 0` with `S = dZ`, if `S` is a subgroup.
    pub fn is_subgroup(&self) -> Option<i64> {
        if *self == Self::singleton(0) {
            return Some(0);
        }
        let d = self.min_positive()?;
        (*self == Self::multiples(d)).then_some(d)
    }

    /// Whether the positive part of `S` is closed under addition.
    pub fn is_subsemigroup(&self) -> bool {
        let pos = self.intersection(&Self::naturals());
        pos.sumset(&pos).is_subset(&pos)
    }

    /// Elements of the positive part not expressible as a sum of two of its
    /// elements, if there are finitely many.
    pub fn minimal_generators(&self) -> Option<Vec<i64>> {
        let pos = self.intersection(&Self::naturals());
        pos.difference(&pos.sumset(&pos)).elements()
    }
}

/// Additive closure of positive generators inside `(N, +)`.
pub fn semigroup_from_generators(gens: &[i64]) -> Result<IntSet> {
    if let Some(bad) = gens.iter().find(|&&g| g <= 0) {
        return Err(Error::InvalidParams(format!("generator {bad} is not positive")));
    }
    if gens.is_empty() {
        return Ok(IntSet::empty());
    }
    let g = gens.iter().fold(0, |acc, &x| gcd(acc, x));
    let red: Vec<usize> = gens.iter().map(|&x| (x / g) as usize).collect();
    let (lo, hi) = (*red.iter().min().unwrap(), *red.iter().max().unwrap());
    let bound = lo * hi + hi;
    let mut reach = vec![false; bound + 1];
    reach[0] = true;
    for x in 1..=bound {
        reach[x] = red.iter().any(|&a| a <= x && reach[x - a]);
    }
    debug_assert!(reach[bound + 1 - lo..].iter().all(|&b| b));
    let fin = (1..=bound).filter(|&x| reach[x]).map(|x| x as i64);
    let reduced = IntSet::finite(fin).union(&IntSet::ray_up(bound as i64 + 1));
    Ok(reduced.scale(g))
}

/// Normal form of a set `χ` with `χ = −χ = χ + mZ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChiNormalForm {
    /// `χ ∩ {0, ..., ⌊m/2⌋}`.
    pub base: IntSet,
    /// `D = {0, ..., ⌊m/2⌋} ∖ χ`, so that `χ = Z ∖ D_m`.
    pub holes: IntSet,
}

pub fn chi_normal_form(chi: &IntSet, m: i64) -> Result<ChiNormalForm> {
    if m < 1 {
        return Err(Error::Precondition(format!("m = {m} must be positive")));
    }
    if chi.negate() != *chi {
        return Err(Error::Precondition(format!("{chi} is not symmetric")));
    }
    if chi.shift(m) != *chi {
        return Err(Error::Precondition(format!("{chi} is not {m}-periodic")));
    }
    let half = IntSet::range(0, m / 2);
    let low = chi.intersection(&IntSet::range(0, m - 1));
    let inner = chi.intersection(&IntSet::range(1, m - 1));
    let check = |ok: bool, what: &str| {
        if ok {
            Ok(())
        } else {
            Err(Error::IdentityFailed(format!("{what} for {chi} with m = {m}")))
        }
    };
    check(low.d_sub_m(m) == *chi, "periodization of the first period")?;
    check(inner == inner.negate().shift(m), "reflection inside the first period")?;
    let base = chi.intersection(&half);
    check(base.d_sub_m(m) == *chi, "periodization of the first half period")?;
    let holes = half.difference(chi);
    check(holes.d_sub_m(m).complement() == *chi, "complement of the holes")?;
    Ok(ChiNormalForm { base, holes })
}

fn fmt_list(v: &[i64]) -> String {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < v.len() {
        let mut j = i;
        while j + 1 < v.len() && v[j + 1] == v[j] + 1 {
            j += 1;
        }
        if j - i >= 2 {
            parts.push(format!("{}..{}", v[i], v[j]));
        } else {
            parts.extend(v[i..=j].iter().map(|x| x.to_string()));
        }
        i = j + 1;
    }
    format!("{{{}}}", parts.join(","))
}

fn fmt_class(r: usize, p: i64) -> String {
    if r == 0 {
        format!("{p}Z")
    } else {
        format!("{r}+{p}Z")
    }
}

/// Literal for a full residue pattern; `None` for the empty pattern.
fn fmt_pattern(pat: &[bool]) -> Option<String> {
    let p = pat.len() as i64;
    let on: Vec<usize> = (0..pat.len()).filter(|&r| pat[r]).collect();
    if on.is_empty() {
        None
    } else if on.len() == pat.len() {
        Some("Z".into())
    } else if on.len() * 2 > pat.len() {
        let off: Vec<String> = (0..pat.len()).filter(|&r| !pat[r]).map(|r| fmt_class(r, p)).collect();
        Some(format!("Z\\({})", off.join("|")))
    } else {
        Some(on.iter().map(|&r| fmt_class(r, p)).collect::<Vec<_>>().join("|"))
    }
}

fn restrict(pat: Option<String>, ray: String) -> Option<String> {
    pat.map(|s| match s.as_str() {
        "Z" => ray,
        s if s.contains(['|', '\\']) => format!("({s})&{ray}"),
        s => format!("{s}&{ray}"),
    })
}

impl fmt::Display for IntSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(v) = self.elements() {
            return f.write_str(&fmt_list(&v));
        }
        let p = self.period;
        let split = self.lo;
        let base = if self.left == self.right {
            fmt_pattern(&self.left)
        } else {
            let l = restrict(fmt_pattern(&self.left), format!("{{..{}}}", split - 1));
            let r = restrict(fmt_pattern(&self.right), format!("{{{split}..}}"));
            match (l, r) {
                (Some(l), Some(r)) => Some(format!("{l}|{r}")),
                (l, r) => l.or(r),
            }
        };
        let base = base.expect("infinite set has a nonempty tail");
        let base_has = |x: i64| {
            if x < split {
                self.left[md(x, p)]
            } else {
                self.right[md(x, p)]
            }
        };
        let out: Vec<i64> = (self.lo..self.hi).filter(|&x| base_has(x) && !self.contains(x)).collect();
        let inn: Vec<i64> = (self.lo..self.hi).filter(|&x| !base_has(x) && self.contains(x)).collect();
        let mut s = base;
        if !out.is_empty() {
            if s.contains('|') {
                s = format!("({s})");
            }
            s = format!("{s}\\{}", fmt_list(&out));
        }
        if !inn.is_empty() {
            s = format!("{s}|{}", fmt_list(&inn));
        }
        f.write_str(&s)
    }
}

impl fmt::Debug for IntSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntSet({self})")
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.s[self.pos..].starts_with(tok.as_bytes()) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            self.err(format!("expected `{tok}`"))
        }
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.s.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        while self.s.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        let txt = std::str::from_utf8(&self.s[start..self.pos]).unwrap_or("");
        txt.parse().or_else(|_| {
            self.pos = start;
            self.err("expected an integer")
        })
    }

    fn starts_int(&mut self) -> bool {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => true,
            Some(b'-') => self.s.get(self.pos + 1).is_some_and(u8::is_ascii_digit),
            _ => false,
        }
    }

    fn expr(&mut self) -> Result<IntSet> {
        let mut acc = self.diff()?;
        while self.eat("|") {
            acc = acc.union(&self.diff()?);
        }
        Ok(acc)
    }

    fn diff(&mut self) -> Result<IntSet> {
        let mut acc = self.inter()?;
        while self.eat("\\") {
            acc = acc.difference(&self.inter()?);
        }
        Ok(acc)
    }

    fn inter(&mut self) -> Result<IntSet> {
        let mut acc = self.unary()?;
        while self.eat("&") {
            acc = acc.intersection(&self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<IntSet> {
        if self.eat("!") {
            Ok(self.unary()?.complement())
        } else if self.eat("+-") {
            Ok(self.unary()?.mirror())
        } else {
            self.atom()
        }
    }

    fn atom(&mut self) -> Result<IntSet> {
        if self.eat("(") {
            let e = self.expr()?;
            self.expect(")")?;
            return Ok(e);
        }
        if self.eat("Z") {
            return Ok(IntSet::all());
        }
        if self.eat("N") {
            return Ok(IntSet::naturals());
        }
        if self.eat("{") {
            return self.items();
        }
        if self.starts_int() {
            let a = self.int()?;
            if self.eat("Z") {
                return Ok(IntSet::multiples(a));
            }
            let save = self.pos;
            if self.eat("+") && self.starts_int() {
                let m = self.int()?;
                self.expect("Z")?;
                return Ok(IntSet::residue(a, m));
            }
            self.pos = save;
            return Ok(IntSet::singleton(a));
        }
        self.err("expected a set")
    }

    fn items(&mut self) -> Result<IntSet> {
        let mut acc = IntSet::empty();
        if self.eat("}") {
            return Ok(acc);
        }
        loop {
            let item = if self.eat("..") {
                IntSet::ray_down(self.int()?)
            } else {
                let a = self.int()?;
                if self.eat("..") {
                    if self.starts_int() {
                        IntSet::range(a, self.int()?)
                    } else {
                        IntSet::ray_up(a)
                    }
                } else {
                    IntSet::singleton(a)
                }
            };
            acc = acc.union(&item);
            if self.eat("}") {
                return Ok(acc);
            }
            self.expect(",")?;
        }
    }
}

impl FromStr for IntSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser { s: s.as_bytes(), pos: 0 };
        let v = p.expr()?;
        if p.peek().is_some() {
            return p.err("trailing input");
        }
        Ok(v)
    }
}
