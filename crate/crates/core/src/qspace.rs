//! The parameter range `Q`: fourteen rows of admissible six-tuples
//! `(f, v, s, l, k, x)`, the four-column table for `(σ, λ, κ, ξ)`, the axiom
//! checker and the membership test for analyzer data.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::analyzer::{pair_name, ColorPair, ZData, COLOR_PAIRS};
use crate::error::{Error, Result};
use crate::intset::{chi_normal_form, semigroup_from_generators, IntSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QRow {
    O1,
    O2,
    O3,
    O4,
    O5,
    O6,
    O7,
    B1,
    B2,
    B3,
    B4,
    B5,
    S1,
    S2,
}

/// Which parameters a row takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Params {
    pub u: bool,
    pub m: bool,
    pub d: bool,
    pub e: bool,
    pub n: bool,
}

impl QRow {
    pub const ALL: [QRow; 14] = [
        QRow::O1,
        QRow::O2,
        QRow::O3,
        QRow::O4,
        QRow::O5,
        QRow::O6,
        QRow::O7,
        QRow::B1,
        QRow::B2,
        QRow::B3,
        QRow::B4,
        QRow::B5,
        QRow::S1,
        QRow::S2,
    ];

    pub fn params(self) -> Params {
        use QRow::*;
        let none = Params { u: false, m: false, d: false, e: false, n: false };
        match self {
            O1 | O2 | O3 | B1 | B2 | B3 | S1 => Params { u: true, m: true, d: true, ..none },
            O4 => Params { m: true, d: true, ..none },
            O5 | O6 | O7 => Params { n: true, ..none },
            B4 | B5 | S2 => Params { e: true, ..none },
        }
    }

    /// The `D` forced by rows whose `x` column is `Z` or `Z \ mZ`.
    pub fn pinned_d(self) -> Option<IntSet> {
        match self {
            QRow::O1 | QRow::O2 | QRow::O4 => Some(IntSet::empty()),
            QRow::O3 => Some(IntSet::singleton(0)),
            _ => None,
        }
    }

    pub fn f(self) -> IntSet {
        match self.family() {
            'O' => IntSet::singleton(2),
            'B' => IntSet::finite([1, 2]),
            _ => IntSet::naturals(),
        }
    }

    pub fn v(self) -> IntSet {
        use QRow::*;
        match self {
            O1 | O2 | O3 | O5 => IntSet::finite([0, 2]).mirror(),
            O4 | O6 | O7 => IntSet::singleton(0),
            B1 | B2 | B4 => IntSet::finite([0, 1, 2]).mirror(),
            B3 | B5 => IntSet::finite([0, 1]).mirror(),
            S1 | S2 => IntSet::all(),
        }
    }

    /// `O`, `B` or `S`.
    pub fn family(self) -> char {
        self.name().chars().next().unwrap()
    }

    pub fn name(self) -> &'static str {
        use QRow::*;
        match self {
            O1 => "O1",
            O2 => "O2",
            O3 => "O3",
            O4 => "O4",
            O5 => "O5",
            O6 => "O6",
            O7 => "O7",
            B1 => "B1",
            B2 => "B2",
            B3 => "B3",
            B4 => "B4",
            B5 => "B5",
            S1 => "S1",
            S2 => "S2",
        }
    }
}

impl fmt::Display for QRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for QRow {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        QRow::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::Syntax { pos: 0, msg: format!("unknown row `{s}`") })
    }
}

/// A row of `Q` with its parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QDescriptor {
    pub row: QRow,
    pub u: Option<i64>,
    pub m: Option<i64>,
    pub d: Option<IntSet>,
    pub e: Option<IntSet>,
    /// Generators of the subsemigroup `N`.
    pub n: Option<Vec<i64>>,
}

impl QDescriptor {
    pub fn new(row: QRow) -> Self {
        QDescriptor { row, u: None, m: None, d: row.pinned_d(), e: None, n: None }
    }

    pub fn with_u(mut self, u: i64) -> Self {
        self.u = Some(u);
        self
    }

    pub fn with_m(mut self, m: i64) -> Self {
        self.m = Some(m);
        self
    }

    pub fn with_d(mut self, d: IntSet) -> Self {
        self.d = Some(d);
        self
    }

    pub fn with_e(mut self, e: IntSet) -> Self {
        self.e = Some(e);
        self
    }

    pub fn with_n(mut self, gens: Vec<i64>) -> Self {
        self.n = Some(gens);
        self
    }

    fn need<T: Clone>(&self, v: &Option<T>, name: &str) -> Result<T> {
        v.clone().ok_or_else(|| Error::InvalidParams(format!("row {} needs {name}", self.row)))
    }

    /// Checks that exactly the row's parameters are present and in range.
    pub fn validate(&self) -> Result<()> {
        let p = self.row.params();
        let check = |used: bool, present: bool, name: &str| {
            if used == present {
                Ok(())
            } else if used {
                Err(Error::InvalidParams(format!("row {} needs {name}", self.row)))
            } else {
                Err(Error::InvalidParams(format!("row {} takes no {name}", self.row)))
            }
        };
        check(p.u, self.u.is_some(), "u")?;
        check(p.m, self.m.is_some(), "m")?;
        check(p.d, self.d.is_some(), "D")?;
        check(p.e, self.e.is_some(), "E")?;
        check(p.n, self.n.is_some(), "N")?;
        if let Some(u) = self.u {
            if u < 0 {
                return Err(Error::InvalidParams(format!("u = {u} is negative")));
            }
        }
        if let Some(m) = self.m {
            if m < 1 {
                return Err(Error::InvalidParams(format!("m = {m} is not positive")));
            }
            let d = self.d.as_ref().expect("checked");
            if !d.is_subset(&IntSet::range(0, m / 2)) {
                return Err(Error::InvalidParams(format!("D = {d} is not inside {{0..{}}}", m / 2)));
            }
            if let Some(pin) = self.row.pinned_d() {
                if *d != pin {
                    return Err(Error::InvalidParams(format!("row {} has D = {pin}", self.row)));
                }
            }
        }
        if let Some(e) = &self.e {
            if !e.is_subset(&IntSet::ray_up(0)) {
                return Err(Error::InvalidParams(format!("E = {e} has negative elements")));
            }
        }
        if let Some(n) = &self.n {
            semigroup_from_generators(n)?;
        }
        Ok(())
    }

    pub fn semigroup(&self) -> Result<IntSet> {
        semigroup_from_generators(&self.need(&self.n, "N")?)
    }
}

impl fmt::Display for QDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "row={}", self.row)?;
        if let Some(u) = self.u {
            write!(f, " u={u}")?;
        }
        if let Some(m) = self.m {
            write!(f, " m={m}")?;
        }
        if let Some(d) = &self.d {
            write!(f, " D={d}")?;
        }
        if let Some(e) = &self.e {
            write!(f, " E={e}")?;
        }
        if let Some(n) = &self.n {
            let g: Vec<String> = n.iter().map(ToString::to_string).collect();
            write!(f, " N=<{}>", g.join(","))?;
        }
        Ok(())
    }
}

impl FromStr for QDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: String| Error::Syntax { pos: 0, msg };
        let mut row = None;
        let (mut u, mut m, mut d, mut e, mut n) = (None, None, None, None, None);
        for tok in s.split_whitespace() {
            let (k, v) = tok.split_once('=').ok_or_else(|| bad(format!("expected key=value, got `{tok}`")))?;
            let int = |v: &str| v.parse::<i64>().map_err(|_| bad(format!("bad integer `{v}`")));
            match k {
                "row" => row = Some(v.parse::<QRow>()?),
                "u" => u = Some(int(v)?),
                "m" => m = Some(int(v)?),
                "D" => d = Some(v.parse::<IntSet>()?),
                "E" => e = Some(v.parse::<IntSet>()?),
                "N" => {
                    let inner = v
                        .strip_prefix('<')
                        .and_then(|x| x.strip_suffix('>'))
                        .ok_or_else(|| bad(format!("expected N=<g1,g2,...>, got `{v}`")))?;
                    let gens = inner
                        .split(',')
                        .filter(|x| !x.is_empty())
                        .map(int)
                        .collect::<Result<Vec<_>>>()?;
                    n = Some(gens);
                }
                _ => return Err(bad(format!("unknown key `{k}`"))),
            }
        }
        let row = row.ok_or_else(|| bad("missing row=".into()))?;
        let d = d.or_else(|| row.pinned_d());
        let desc = QDescriptor { row, u, m, d, e, n };
        desc.validate()?;
        Ok(desc)
    }
}

/// A six-tuple `(f, v, s, l, k, x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QTuple {
    pub f: IntSet,
    pub v: IntSet,
    pub s: IntSet,
    pub l: IntSet,
    pub k: IntSet,
    pub x: IntSet,
}

impl QTuple {
    pub fn components(&self) -> [&IntSet; 6] {
        [&self.f, &self.v, &self.s, &self.l, &self.k, &self.x]
    }
}

impl fmt::Display for QTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components().iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(";"))
    }
}

fn split_sets<const N: usize>(s: &str) -> Result<[IntSet; N]> {
    let parts = s.split(';').map(str::parse).collect::<Result<Vec<IntSet>>>()?;
    parts
        .try_into()
        .map_err(|_| Error::Syntax { pos: 0, msg: format!("expected {N} `;`-separated sets") })
}

impl FromStr for QTuple {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let [f, v, s, l, k, x] = split_sets::<6>(s)?;
        Ok(QTuple { f, v, s, l, k, x })
    }
}

/// `Z \ D_m`.
fn x_from_d(d: &IntSet, m: i64) -> IntSet {
    d.d_sub_m(m).complement()
}

/// `Z \ ±E`.
fn x_from_e(e: &IntSet) -> IntSet {
    e.mirror().complement()
}

pub fn instantiate(q: &QDescriptor) -> Result<QTuple> {
    use QRow::*;
    q.validate()?;
    let row = q.row;
    let um = |factor: i64| -> Result<IntSet> {
        Ok(IntSet::multiples(factor * q.need(&q.u, "u")? * q.need(&q.m, "m")?))
    };
    let m = q.m.unwrap_or(0);
    let zero = IntSet::singleton(0);
    let s = match row {
        O1 | O2 | O3 | B2 => um(2)?,
        B1 | B3 | S1 => um(1)?,
        _ => zero.clone(),
    };
    let l = match row {
        O1 | B1 | S1 => IntSet::multiples(m),
        O2 | O3 | B2 => IntSet::residue(m, 2 * m),
        O5 | B4 | S2 => zero.clone(),
        O4 | O6 | O7 | B3 | B5 => IntSet::empty(),
    };
    let k = match row {
        O1 | O4 | B1 | B3 | S1 => IntSet::multiples(m),
        O2 | O3 | B2 => IntSet::multiples(2 * m),
        _ => zero.clone(),
    };
    let x = match row {
        O1 | O2 | O3 | O4 | B1 | B2 | B3 | S1 => x_from_d(&q.need(&q.d, "D")?, m),
        O5 | O6 => q.semigroup()?.mirror().complement(),
        O7 => q.semigroup()?.mirror().union(&zero).complement(),
        B4 | B5 | S2 => x_from_e(&q.need(&q.e, "E")?),
    };
    Ok(QTuple { f: row.f(), v: row.v(), s, l, k, x })
}

/// Positive generator of a subgroup, `0` for `{0}`.
fn generator(s: &IntSet) -> Option<i64> {
    s.is_subgroup()
}

fn fit_row(row: QRow, t: &QTuple) -> Option<QDescriptor> {
    use QRow::*;
    if t.f != row.f() || t.v != row.v() {
        return None;
    }
    let p = row.params();
    let mut q = QDescriptor::new(row);
    if p.m {
        let g = generator(&t.k)?;
        let m = match row {
            O2 | O3 | B2 => {
                if g % 2 != 0 {
                    return None;
                }
                g / 2
            }
            _ => g,
        };
        if m < 1 {
            return None;
        }
        q.m = Some(m);
        if p.u {
            let sg = generator(&t.s)?;
            let unit = match row {
                O1 | O2 | O3 | B2 => 2 * m,
                _ => m,
            };
            if sg % unit != 0 {
                return None;
            }
            q.u = Some(sg / unit);
        }
        if q.d.is_none() {
            q.d = Some(chi_normal_form(&t.x, m).ok()?.holes);
        }
    }
    if p.e {
        q.e = Some(IntSet::ray_up(0).difference(&t.x));
    }
    if p.n {
        let n = IntSet::naturals().difference(&t.x);
        if !n.is_subsemigroup() {
            return None;
        }
        q.n = Some(n.minimal_generators()?);
    }
    (instantiate(&q).ok()? == *t).then_some(q)
}

/// Finds the first row, in table order, whose instantiation equals `t`.
pub fn classify(t: &QTuple) -> Option<QDescriptor> {
    QRow::ALL.into_iter().find_map(|r| fit_row(r, t))
}

/// A tuple `(σ, λ, κ, ξ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArithTuple {
    pub sigma: IntSet,
    pub lambda: IntSet,
    pub kappa: IntSet,
    pub xi: IntSet,
}

impl fmt::Display for ArithTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};{};{};{}", self.sigma, self.lambda, self.kappa, self.xi)
    }
}

impl FromStr for ArithTuple {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let [sigma, lambda, kappa, xi] = split_sets::<4>(s)?;
        Ok(ArithTuple { sigma, lambda, kappa, xi })
    }
}

/// One of the five rows of the four-column table with its parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArithClass {
    /// Row number, 1 to 5.
    pub row: u8,
    pub u: Option<i64>,
    pub m: Option<i64>,
    pub d: Option<IntSet>,
    pub e: Option<IntSet>,
}

impl fmt::Display for ArithClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "row={}", self.row)?;
        if let Some(u) = self.u {
            write!(f, " u={u}")?;
        }
        if let Some(m) = self.m {
            write!(f, " m={m}")?;
        }
        if let Some(d) = &self.d {
            write!(f, " D={d}")?;
        }
        if let Some(e) = &self.e {
            write!(f, " E={e}")?;
        }
        Ok(())
    }
}

pub fn instantiate_arith(c: &ArithClass) -> Result<ArithTuple> {
    let need = |v: Option<i64>, name: &str| v.ok_or_else(|| Error::InvalidParams(format!("row {} needs {name}", c.row)));
    let zero = IntSet::singleton(0);
    let with_m = || -> Result<(i64, i64, IntSet)> {
        let (u, m) = (need(c.u, "u")?, need(c.m, "m")?);
        if u < 0 || m < 1 {
            return Err(Error::InvalidParams(format!("u = {u}, m = {m} out of range")));
        }
        let d = c.d.clone().ok_or_else(|| Error::InvalidParams("missing D".into()))?;
        if !d.is_subset(&IntSet::range(0, m / 2)) {
            return Err(Error::InvalidParams(format!("D = {d} is not inside {{0..{}}}", m / 2)));
        }
        Ok((u, m, d))
    };
    let with_e = || -> Result<IntSet> {
        let e = c.e.clone().ok_or_else(|| Error::InvalidParams("missing E".into()))?;
        if !e.is_subset(&IntSet::ray_up(0)) {
            return Err(Error::InvalidParams(format!("E = {e} has negative elements")));
        }
        Ok(x_from_e(&e))
    };
    Ok(match c.row {
        1 => {
            let (u, m, d) = with_m()?;
            ArithTuple { sigma: IntSet::multiples(u * m), lambda: IntSet::multiples(m), kappa: IntSet::multiples(m), xi: x_from_d(&d, m) }
        }
        2 => {
            let (u, m, d) = with_m()?;
            ArithTuple {
                sigma: IntSet::multiples(2 * u * m),
                lambda: IntSet::residue(m, 2 * m),
                kappa: IntSet::multiples(2 * m),
                xi: x_from_d(&d, m),
            }
        }
        3 => {
            let (u, m, d) = with_m()?;
            ArithTuple { sigma: IntSet::multiples(u * m), lambda: IntSet::empty(), kappa: IntSet::multiples(m), xi: x_from_d(&d, m) }
        }
        4 => ArithTuple { sigma: zero.clone(), lambda: zero.clone(), kappa: zero, xi: with_e()? },
        5 => ArithTuple { sigma: zero.clone(), lambda: IntSet::empty(), kappa: zero, xi: with_e()? },
        r => return Err(Error::InvalidParams(format!("no arithmetic row {r}"))),
    })
}

fn min_positive_or_zero(s: &IntSet) -> i64 {
    s.min_positive().unwrap_or(0)
}

/// Constructive case analysis for `(σ, λ, κ, ξ)`; the result is confirmed by
/// re-instantiation.
pub fn classify_arith(t: &ArithTuple) -> Option<ArithClass> {
    let d = min_positive_or_zero(&t.kappa);
    let l = min_positive_or_zero(&t.lambda);
    let k = min_positive_or_zero(&t.sigma);
    let holes = |m: i64| IntSet::range(0, m / 2).difference(&t.xi);
    let e = || IntSet::ray_up(0).difference(&t.xi);
    let none = ArithClass { row: 0, u: None, m: None, d: None, e: None };
    let class = if t.lambda.is_empty() {
        if d == 0 {
            ArithClass { row: 5, e: Some(e()), ..none }
        } else {
            if k % d != 0 {
                return None;
            }
            ArithClass { row: 3, u: Some(k / d), m: Some(d), d: Some(holes(d)), ..none }
        }
    } else if l == 0 {
        ArithClass { row: 4, e: Some(e()), ..none }
    } else if d == 2 * l {
        if k % d != 0 {
            return None;
        }
        ArithClass { row: 2, u: Some(k / d), m: Some(l), d: Some(holes(l)), ..none }
    } else if d == l {
        if k % l != 0 {
            return None;
        }
        ArithClass { row: 1, u: Some(k / l), m: Some(l), d: Some(holes(l)), ..none }
    } else {
        return None;
    };
    (instantiate_arith(&class).ok()? == *t).then_some(class)
}

/// Every arithmetic row whose instantiation, with parameters read off `t`,
/// equals `t`.
pub fn arith_rows_matching(t: &ArithTuple) -> Vec<u8> {
    let holes = |m: i64| IntSet::range(0, m / 2).difference(&t.xi);
    let e = IntSet::ray_up(0).difference(&t.xi);
    let k = min_positive_or_zero(&t.sigma);
    let with_m = |row: u8, m: i64, unit: i64| -> Option<ArithClass> {
        (m >= 1 && k % unit == 0).then(|| ArithClass { row, u: Some(k / unit), m: Some(m), d: Some(holes(m)), e: None })
    };
    let l = min_positive_or_zero(&t.lambda);
    let candidates = [
        with_m(1, l, l.max(1)),
        with_m(2, l, 2 * l.max(1)),
        with_m(3, min_positive_or_zero(&t.kappa), min_positive_or_zero(&t.kappa).max(1)),
        Some(ArithClass { row: 4, u: None, m: None, d: None, e: Some(e.clone()) }),
        Some(ArithClass { row: 5, u: None, m: None, d: None, e: Some(e) }),
    ];
    candidates
        .into_iter()
        .flatten()
        .filter(|c| instantiate_arith(c).is_ok_and(|x| x == *t))
        .map(|c| c.row)
        .collect()
}

/// A family of sets indexed by ordered color pairs.
pub type Family = BTreeMap<ColorPair, IntSet>;

pub fn family_from(table: &BTreeMap<ColorPair, std::collections::BTreeSet<i64>>) -> Family {
    COLOR_PAIRS
        .iter()
        .map(|c| (*c, IntSet::finite(table.get(c).into_iter().flatten().copied())))
        .collect()
}

/// The same set for every color pair.
pub fn uniform_family(s: &IntSet) -> Family {
    COLOR_PAIRS.iter().map(|c| (*c, s.clone())).collect()
}

/// `κ` family with `λ` on equal colors and `κ` on different colors.
pub fn kappa_family(lambda: &IntSet, kappa: &IntSet) -> Family {
    COLOR_PAIRS
        .iter()
        .map(|&(a, b)| ((a, b), if a == b { lambda.clone() } else { kappa.clone() }))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// Roman numeral of the axiom.
    pub axiom: &'static str,
    pub instance: String,
    /// An integer demonstrating the failure, when one exists.
    pub witness: Option<i64>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "axiom ({}) fails for {}", self.axiom, self.instance)?;
        if let Some(w) = self.witness {
            write!(f, " at {w}")?;
        }
        Ok(())
    }
}

/// An element of `lhs \ rhs` that counts as a failure: any element if the
/// difference is infinite, otherwise one inside `[-window, window]`.
fn excess(lhs: &IntSet, rhs: &IntSet, window: i64) -> Option<Option<i64>> {
    let d = lhs.difference(rhs);
    if d.is_empty() {
        return None;
    }
    let inside = d.first_at_or_above(-window).filter(|&x| x <= window);
    if d.is_finite() {
        inside.map(Some)
    } else {
        Some(inside.or_else(|| d.first_at_or_above(-window)).or_else(|| d.last_at_or_below(window)))
    }
}

/// Evaluates Axioms (i) to (viii) for `σ` and the families `κ`, `ξ`.
/// Finite truncated data are compared on `[-window, window]` only.
pub fn check_axioms(sigma: &IntSet, kcc: &Family, xcc: &Family, window: i64) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut push = |axiom: &'static str, instance: String, lhs: &IntSet, rhs: &IntSet| {
        if let Some(witness) = excess(lhs, rhs, window) {
            out.push(Violation { axiom, instance, witness });
        }
    };
    let zero = IntSet::singleton(0);
    push("i", "0 in sigma".into(), &zero, sigma);
    push("i", "-sigma in sigma".into(), &sigma.negate(), sigma);
    push("i", "sigma+sigma in sigma".into(), &sigma.sumset(sigma), sigma);
    for (name, fam) in [("kappa", kcc), ("xi", xcc)] {
        for c in COLOR_PAIRS {
            let (c1, c2) = c;
            let w = &fam[&c];
            let tag = format!("{name}_{}", pair_name(c));
            push("ii", tag.clone(), &w.sumset(sigma), w);
            let rev = fam[&(c2.inverse(), c1.inverse())].negate();
            push("iii", tag.clone(), w, &rev);
            let swap = fam[&(c2, c1)].negate().sumset(sigma);
            push("iv", tag, w, &swap);
        }
    }
    for c in COLOR_PAIRS {
        let (c1, c2) = c;
        let rhs = xcc[&(c1, c2.inverse())].union(&xcc[&(c2, c1.inverse())].negate().sumset(sigma));
        push("v", format!("xi_{}", pair_name(c)), &xcc[&c], &rhs);
    }
    for c in [COLOR_PAIRS[1], COLOR_PAIRS[2]] {
        push("vi", format!("0 in kappa_{}", pair_name(c)), &zero, &kcc[&c]);
    }
    for c in COLOR_PAIRS {
        for c3 in [COLOR_PAIRS[0].0, COLOR_PAIRS[3].0] {
            let (c1, c2) = c;
            let target = (c1, c3);
            let second = (c2.inverse(), c3);
            let tag = format!("{}+{} -> {}", pair_name(c), pair_name(second), pair_name(target));
            push("vii", format!("kappa {tag}"), &kcc[&c].sumset(&kcc[&second]), &kcc[&target]);
            push("viii", format!("kappa+xi {tag}"), &kcc[&c].sumset(&xcc[&second]), &xcc[&target]);
        }
    }
    out
}

/// Collapses an axiom-satisfying family to `(σ, λ, κ, ξ)`, if the colored
/// sets agree as the Arithmetic Lemma asserts.
pub fn collapse(sigma: &IntSet, kcc: &Family, xcc: &Family) -> Option<ArithTuple> {
    let [ww, wb, bw, bb] = COLOR_PAIRS;
    if kcc[&ww] != kcc[&bb] || kcc[&wb] != kcc[&bw] {
        return None;
    }
    let xi = &xcc[&ww];
    if COLOR_PAIRS.iter().any(|c| &xcc[c] != xi) {
        return None;
    }
    Some(ArithTuple { sigma: sigma.clone(), lambda: kcc[&ww].clone(), kappa: kcc[&wb].clone(), xi: xi.clone() })
}

/// Componentwise inclusion of analyzer data in the instantiation of `q`.
pub fn z_leq(z: &ZData, q: &QDescriptor) -> Result<bool> {
    let t = instantiate(q)?;
    let fits = |s: &std::collections::BTreeSet<i64>, target: &IntSet| s.iter().all(|&x| target.contains(x));
    let base = fits(&z.f, &t.f)
        && fits(&z.v, &t.v)
        && fits(&z.sigma, &t.s)
        && fits(&z.l, &t.l)
        && fits(&z.k, &t.k)
        && fits(&z.x, &t.x);
    let refined = COLOR_PAIRS.iter().all(|&(a, b)| {
        let target = if a == b { &t.l } else { &t.k };
        z.kcc.get(&(a, b)).is_none_or(|s| fits(s, target)) && z.xcc.get(&(a, b)).is_none_or(|s| fits(s, &t.x))
    });
    Ok(base && refined)
}

/// Largest subsemigroup of `(N, +)` avoiding `avoid`, grown greedily from
/// everything above `max(avoid)`.
fn greedy_semigroup(avoid: &IntSet) -> Vec<i64> {
    let top = avoid.max().unwrap_or(0);
    let mut gens: Vec<i64> = ((top + 1)..=(2 * top + 1)).collect();
    for n in (1..=top).rev() {
        if avoid.contains(n) {
            continue;
        }
        let mut trial = gens.clone();
        trial.push(n);
        let s = semigroup_from_generators(&trial).expect("positive generators");
        if s.intersection(avoid).is_empty() {
            gens = s.minimal_generators().expect("finitely generated");
        }
    }
    semigroup_from_generators(&gens)
        .ok()
        .and_then(|s| s.minimal_generators())
        .unwrap_or_default()
}

/// Descriptors, over a bounded parameter search, whose instantiation contains
/// `z`. The `f` column is fitted tightly to the observed block sizes, and
/// `D`, `E` and `N` as large as the observed `X` allows.
pub fn consistent_rows(z: &ZData, slack: i64) -> Vec<QDescriptor> {
    let observed_x = IntSet::finite(z.x.iter().copied());
    let max_m = z.max_abs() + slack;
    let max_sigma = z.sigma.iter().map(|s| s.abs()).max().unwrap_or(0);
    let max_u = max_sigma.max(1);
    let family = if z.f.iter().any(|&b| b >= 3) {
        Some('S')
    } else if z.f.contains(&1) {
        Some('B')
    } else if z.f.contains(&2) {
        Some('O')
    } else {
        None
    };
    let mut out = Vec::new();
    for row in QRow::ALL {
        if family.is_some_and(|f| f != row.family()) {
            continue;
        }
        let p = row.params();
        let mut candidates = Vec::new();
        if p.m {
            for m in 1..=max_m {
                let d = row.pinned_d().unwrap_or_else(|| {
                    let allowed = (0..=m / 2).filter(|&dd| IntSet::singleton(dd).d_sub_m(m).intersection(&observed_x).is_empty());
                    IntSet::finite(allowed)
                });
                let us: Vec<Option<i64>> = if p.u { (0..=max_u).map(Some).collect() } else { vec![None] };
                for u in us {
                    candidates.push(QDescriptor { u, m: Some(m), d: Some(d.clone()), ..QDescriptor::new(row) });
                }
            }
        } else if p.e {
            let e = IntSet::ray_up(0).difference(&observed_x.mirror());
            candidates.push(QDescriptor::new(row).with_e(e));
        } else if p.n {
            let avoid = observed_x.mirror().intersection(&IntSet::naturals());
            candidates.push(QDescriptor::new(row).with_n(greedy_semigroup(&avoid)));
        }
        out.extend(candidates.into_iter().filter(|q| z_leq(z, q).unwrap_or(false)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analyzer::analyze;
    use crate::partition::Partition;

    fn s(t: &str) -> IntSet {
        t.parse().unwrap()
    }

    #[test]
    fn instantiate_examples() {
        let o1 = instantiate(&QDescriptor::new(QRow::O1).with_u(1).with_m(1)).unwrap();
        assert_eq!(o1.to_string(), "{2};{-2,0,2};2Z;Z;Z;Z");
        let o4 = instantiate(&QDescriptor::new(QRow::O4).with_m(5)).unwrap();
        assert_eq!(o4, "{2};{0};{0};{};5Z;Z".parse().unwrap());
        let s2 = instantiate(&QDescriptor::new(QRow::S2).with_e(IntSet::empty())).unwrap();
        assert_eq!(s2, "N;Z;{0};{0};{0};Z".parse().unwrap());
        assert!(instantiate(&QDescriptor::new(QRow::O1).with_m(1)).is_err());
        assert!(instantiate(&QDescriptor::new(QRow::B1).with_u(0).with_m(3).with_d(s("{2}"))).is_err());
        assert!(instantiate(&QDescriptor::new(QRow::O3).with_u(0).with_m(3).with_d(s("{}"))).is_err());
    }

    #[test]
    fn classify_examples() {
        let t: QTuple = "{2};+-{0,2};2Z;Z;Z;Z".parse().unwrap();
        assert_eq!(classify(&t).unwrap().to_string(), "row=O1 u=1 m=1 D={}");
        let t: QTuple = "{3};+-{0,2};2Z;Z;Z;Z".parse().unwrap();
        assert_eq!(classify(&t), None);
        let t: QTuple = "{1,2};+-{0,1};{0};{};2Z;Z\\(1+2Z)".parse().unwrap();
        assert_eq!(classify(&t).unwrap().to_string(), "row=B3 u=0 m=2 D={1}");
    }

    #[test]
    fn descriptor_literals() {
        for lit in ["row=O1 u=1 m=1 D={}", "row=O3 u=0 m=4 D={0}", "row=O7 N=<2,3>", "row=B4 E={0..}\\{1,2}", "row=O5 N=<>"] {
            let q: QDescriptor = lit.parse().unwrap();
            assert_eq!(q.to_string(), lit);
        }
        assert!("row=O1 u=1".parse::<QDescriptor>().is_err());
        assert!("row=B4 E={-1}".parse::<QDescriptor>().is_err());
        assert!("row=X9".parse::<QDescriptor>().is_err());
    }

    #[test]
    fn arith_examples() {
        let c = classify_arith(&"{0};{0};{0};Z".parse().unwrap()).unwrap();
        assert_eq!((c.row, c.e.clone()), (4, Some(IntSet::empty())));
        let c = classify_arith(&"2Z;1+2Z;2Z;Z".parse().unwrap()).unwrap();
        assert_eq!(c.to_string(), "row=2 u=1 m=1 D={}");
        let c = classify_arith(&"6Z;{};3Z;3Z".parse().unwrap()).unwrap();
        assert_eq!(c.to_string(), "row=3 u=2 m=3 D={1}");
        assert_eq!(classify_arith(&"{0};{};Z;{1}".parse().unwrap()), None);
    }

    #[test]
    fn axiom_examples() {
        let t = instantiate_arith(&ArithClass { row: 1, u: Some(1), m: Some(2), d: Some(s("{0}")), e: None }).unwrap();
        let v = check_axioms(&t.sigma, &kappa_family(&t.lambda, &t.kappa), &uniform_family(&t.xi), 120);
        assert!(v.is_empty(), "{v:?}");

        let mut k = uniform_family(&IntSet::empty());
        k.insert(COLOR_PAIRS[1], IntSet::singleton(1));
        let v = check_axioms(&IntSet::singleton(0), &k, &uniform_family(&IntSet::empty()), 10);
        assert!(v.iter().any(|x| x.axiom == "vi"));

        let mut k = uniform_family(&IntSet::empty());
        k.insert(COLOR_PAIRS[0], IntSet::singleton(1));
        k.insert(COLOR_PAIRS[3], IntSet::singleton(2));
        let v = check_axioms(&IntSet::singleton(0), &k, &uniform_family(&IntSet::empty()), 10);
        assert!(v.iter().any(|x| x.axiom == "iii"));
    }

    #[test]
    fn z_leq_examples() {
        let p = |t: &str| t.parse::<Partition>().unwrap();
        let o1 = QDescriptor::new(QRow::O1).with_u(1).with_m(1);
        assert!(z_leq(&analyze(&[p("-:wb:[l1 l2]")]), &o1).unwrap());
        let four = analyze(&[p("-:wbwb:[l1 l2 l3 l4]")]);
        for row in QRow::ALL.into_iter().filter(|r| r.family() == 'O') {
            assert!(consistent_rows(&four, 2).iter().all(|q| q.row != row));
        }
        assert!(z_leq(&analyze(&[p("-:ww:[l1 l2]")]), &o1).unwrap());
    }

    #[test]
    fn consistent_rows_examples() {
        let z = analyze(&["-:wb:[l1 l2]".parse().unwrap()]);
        let rows = consistent_rows(&z, 2);
        assert!(rows.contains(&QDescriptor::new(QRow::O1).with_u(1).with_m(1)));
        assert!(rows.iter().all(|q| q.row.family() == 'O'));
        let all = consistent_rows(&ZData::new(), 2);
        for row in QRow::ALL {
            assert!(all.iter().any(|q| q.row == row), "{row} missing");
        }
    }
}
