//! Combinatorial planar tangles.
//!
//! Every disc of colour `k` carries `2k` marked points numbered `1..=2k`
//! clockwise, starting just after the distinguished (`*`) interval. Interval
//! `j` sits between points `j` and `j+1` (indices mod `2k`), so interval `0`
//! (equivalently `2k`) is the `*`-interval. Under the standard shading the
//! `*`-interval is white and the odd intervals are black.
//!
//! In the usual box picture of a `k`-box, points `1..=k` run left to right
//! along the top and points `k+1..=2k` run right to left along the bottom,
//! with the `*` on the left.

mod expr;
mod random;

pub use expr::{parse_expr, ParseError, TangleExpr};
pub use random::{random_expr, random_expr_with_outer, random_pair, ComposablePair};

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::scalar::RadicalScalar;

/// Colour of a disc: `k ≥ 1`, or `0` together with the shading of the
/// region surrounding a pointless disc (`0+` white, `0-` black).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Colour {
    pub k: usize,
    pub minus: bool,
}

impl Colour {
    pub const ZERO_PLUS: Colour = Colour { k: 0, minus: false };
    pub const ZERO_MINUS: Colour = Colour { k: 0, minus: true };

    pub fn new(k: usize) -> Self {
        Colour { k, minus: false }
    }

    pub fn points(self) -> usize {
        2 * self.k
    }

    fn swapped(self) -> Self {
        if self.k == 0 {
            Colour { k: 0, minus: !self.minus }
        } else {
            self
        }
    }
}

impl fmt::Display for Colour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.k, self.minus) {
            (0, false) => write!(f, "0+"),
            (0, true) => write!(f, "0-"),
            (k, _) => write!(f, "{k}"),
        }
    }
}

/// A marked point: disc `0` is the external disc, index is `1..=2k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Point {
    pub disc: usize,
    pub index: usize,
}

impl Point {
    pub fn new(disc: usize, index: usize) -> Self {
        Point { disc, index }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.disc, self.index)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

/// The generating tangles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    /// `1^{0±}`: no internal disc.
    Unit(Sign),
    /// `I^k_k`.
    Identity(Colour),
    /// `M_k`: disc 1 stacked on top of disc 2.
    Multiply(Colour),
    /// `E^k_{k+1}`: right conditional expectation from colour `k+1` to `k`.
    Expectation(usize),
    /// `I^{k+1}_k`: inclusion from colour `k` to `k+1`.
    Inclusion(usize),
    /// `(E')^k_k`: left conditional expectation.
    LeftExpectation(usize),
    /// `ℰ^k`: Jones projection tangle, no internal disc.
    Jones(usize),
}

fn colour_of(k: usize) -> Colour {
    Colour::new(k)
}

impl Generator {
    pub fn outer(&self) -> Colour {
        match *self {
            Generator::Unit(Sign::Plus) => Colour::ZERO_PLUS,
            Generator::Unit(Sign::Minus) => Colour::ZERO_MINUS,
            Generator::Identity(c) | Generator::Multiply(c) => c,
            Generator::Expectation(k) => colour_of(k),
            Generator::Inclusion(k) => colour_of(k + 1),
            Generator::LeftExpectation(k) | Generator::Jones(k) => colour_of(k),
        }
    }

    pub fn slots(&self) -> Vec<Colour> {
        match *self {
            Generator::Unit(_) | Generator::Jones(_) => vec![],
            Generator::Identity(c) => vec![c],
            Generator::Multiply(c) => vec![c, c],
            Generator::Expectation(k) => vec![colour_of(k + 1)],
            Generator::Inclusion(k) => vec![colour_of(k)],
            Generator::LeftExpectation(k) => vec![colour_of(k)],
        }
    }

    pub fn check(&self) -> Result<(), TangleError> {
        match *self {
            Generator::LeftExpectation(0) => Err(TangleError::InvalidGenerator(
                "left expectation needs colour >= 1".into(),
            )),
            Generator::Jones(k) if k < 2 => Err(TangleError::InvalidGenerator(
                "jones tangle needs colour >= 2".into(),
            )),
            Generator::Identity(c) | Generator::Multiply(c) if c.k > 0 && c.minus => Err(
                TangleError::InvalidGenerator("shading sign only applies to colour 0".into()),
            ),
            _ => Ok(()),
        }
    }

    /// The concrete diagram.
    pub fn tangle(&self) -> Result<Tangle, TangleError> {
        self.check()?;
        let p = Point::new;
        let mut pairs = Vec::new();
        match *self {
            Generator::Unit(_) => {}
            Generator::Identity(c) => {
                pairs.extend((1..=c.points()).map(|i| (p(0, i), p(1, i))));
            }
            Generator::Multiply(c) => {
                let k = c.k;
                pairs.extend((1..=k).map(|i| (p(0, i), p(1, i))));
                pairs.extend((1..=k).map(|j| (p(1, 2 * k + 1 - j), p(2, j))));
                pairs.extend((k + 1..=2 * k).map(|i| (p(2, i), p(0, i))));
            }
            Generator::Expectation(k) => {
                pairs.extend((1..=k).map(|i| (p(0, i), p(1, i))));
                pairs.push((p(1, k + 1), p(1, k + 2)));
                pairs.extend((1..=k).map(|j| (p(0, k + j), p(1, k + 2 + j))));
            }
            Generator::Inclusion(k) => {
                pairs.extend((1..=k).map(|i| (p(0, i), p(1, i))));
                pairs.push((p(0, k + 1), p(0, k + 2)));
                pairs.extend((1..=k).map(|j| (p(0, k + 2 + j), p(1, k + j))));
            }
            Generator::LeftExpectation(k) => {
                pairs.push((p(0, 1), p(0, 2 * k)));
                pairs.push((p(1, 1), p(1, 2 * k)));
                pairs.extend((2..2 * k).map(|i| (p(0, i), p(1, i))));
            }
            Generator::Jones(k) => {
                pairs.extend((1..k - 1).map(|j| (p(0, j), p(0, 2 * k + 1 - j))));
                pairs.push((p(0, k - 1), p(0, k)));
                pairs.push((p(0, k + 1), p(0, k + 2)));
            }
        }
        Tangle::from_pairs(self.outer(), self.slots(), &pairs, 0)
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Unit(Sign::Plus) => write!(f, "(gen unit plus)"),
            Generator::Unit(Sign::Minus) => write!(f, "(gen unit minus)"),
            Generator::Identity(c) => write!(f, "(gen id {c})"),
            Generator::Multiply(c) => write!(f, "(gen M {c})"),
            Generator::Expectation(k) => write!(f, "(gen E {} {})", k, k + 1),
            Generator::Inclusion(k) => write!(f, "(gen I {} {})", k + 1, k),
            Generator::LeftExpectation(k) => write!(f, "(gen Eprime {k})"),
            Generator::Jones(k) => write!(f, "(gen jones {k})"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TangleError {
    #[error("slot {slot} has colour {expected} but the inserted tangle has colour {found}")]
    ColourMismatch {
        slot: usize,
        expected: Colour,
        found: Colour,
    },
    #[error("slot {slot} out of range (tangle has {discs} internal discs)")]
    SlotOutOfRange { slot: usize, discs: usize },
    #[error("invalid generator: {0}")]
    InvalidGenerator(String),
    #[error("not a permutation of 1..={0}")]
    NotAPermutation(usize),
    #[error("bad matching: {0}")]
    BadMatching(String),
    #[error("shading conventions differ between the composed tangles")]
    ShadingMismatch,
    #[error("invalid tangle: {0}")]
    Invalid(Diagnostics),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Violation {
    Matching(String),
    Shading { face: Vec<(usize, usize)> },
    Planarity { component: usize, euler: i64 },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Diagnostics {
    pub violations: Vec<Violation>,
}

impl Diagnostics {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for Diagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            match v {
                Violation::Matching(m) => write!(f, "matching: {m}")?,
                Violation::Shading { face } => write!(f, "shading: mixed face {face:?}")?,
                Violation::Planarity { component, euler } => write!(
                    f,
                    "planarity: component {component} has Euler characteristic {euler}"
                )?,
            }
        }
        Ok(())
    }
}

/// A planar tangle: external colour, internal disc colours, a perfect
/// matching of marked points and a count of free closed loops.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tangle {
    outer: Colour,
    discs: Vec<Colour>,
    partner: Vec<Vec<Point>>,
    loops: usize,
    /// `true` when the `*`-interval is black instead of white.
    swapped: bool,
}

impl fmt::Debug for Tangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut strings = Vec::new();
        for (d, row) in self.partner.iter().enumerate() {
            for (i, q) in row.iter().enumerate() {
                let p = Point::new(d, i + 1);
                if p < *q {
                    strings.push(format!("{p}-{q}"));
                }
            }
        }
        f.debug_struct("Tangle")
            .field("outer", &self.outer.to_string())
            .field("discs", &self.discs.iter().map(|c| c.to_string()).collect::<Vec<_>>())
            .field("strings", &strings)
            .field("loops", &self.loops)
            .field("swapped", &self.swapped)
            .finish()
    }
}

impl Tangle {
    /// Builds a tangle from an explicit list of strings. Only the matching
    /// structure is checked here; shading and planarity go through
    /// [`Tangle::validate`].
    pub fn from_pairs(
        outer: Colour,
        discs: Vec<Colour>,
        pairs: &[(Point, Point)],
        loops: usize,
    ) -> Result<Tangle, TangleError> {
        let colours: Vec<Colour> = std::iter::once(outer).chain(discs.iter().copied()).collect();
        let sentinel = Point::new(usize::MAX, 0);
        let mut partner: Vec<Vec<Point>> = colours.iter().map(|c| vec![sentinel; c.points()]).collect();
        let in_range = |p: &Point| p.disc < colours.len() && p.index >= 1 && p.index <= colours[p.disc].points();
        for &(a, b) in pairs {
            if a == b {
                return Err(TangleError::BadMatching(format!("string from {a} to itself")));
            }
            for p in [a, b] {
                if !in_range(&p) {
                    return Err(TangleError::BadMatching(format!("point {p} does not exist")));
                }
                if partner[p.disc][p.index - 1] != sentinel {
                    return Err(TangleError::BadMatching(format!("point {p} used twice")));
                }
            }
            partner[a.disc][a.index - 1] = b;
            partner[b.disc][b.index - 1] = a;
        }
        for (d, row) in partner.iter().enumerate() {
            if let Some(i) = row.iter().position(|q| *q == sentinel) {
                return Err(TangleError::BadMatching(format!(
                    "point {} is unmatched",
                    Point::new(d, i + 1)
                )));
            }
        }
        Ok(Tangle {
            outer,
            discs,
            partner,
            loops,
            swapped: false,
        })
    }

    pub fn outer(&self) -> Colour {
        self.outer
    }

    pub fn discs(&self) -> &[Colour] {
        &self.discs
    }

    pub fn closed_loops(&self) -> usize {
        self.loops
    }

    pub fn is_swapped(&self) -> bool {
        self.swapped
    }

    pub fn colour(&self, disc: usize) -> Colour {
        if disc == 0 {
            self.outer
        } else {
            self.discs[disc - 1]
        }
    }

    pub fn partner(&self, p: Point) -> Point {
        self.partner[p.disc][p.index - 1]
    }

    /// All strings as ordered pairs `(p, q)` with `p < q`.
    pub fn strings(&self) -> Vec<(Point, Point)> {
        let mut out = Vec::new();
        for (d, row) in self.partner.iter().enumerate() {
            for (i, &q) in row.iter().enumerate() {
                let p = Point::new(d, i + 1);
                if p < q {
                    out.push((p, q));
                }
            }
        }
        out
    }

    fn points(&self) -> impl Iterator<Item = Point> + '_ {
        self.partner
            .iter()
            .enumerate()
            .flat_map(|(d, row)| (1..=row.len()).map(move |i| Point::new(d, i)))
    }

    /// Adds free closed loops.
    pub fn with_loops(mut self, extra: usize) -> Tangle {
        self.loops += extra;
        self
    }

    /// Same matching with the opposite shading convention.
    pub fn swapped(&self) -> Tangle {
        let mut t = self.clone();
        t.swapped = !t.swapped;
        t.outer = t.outer.swapped();
        t.discs = t.discs.iter().map(|c| c.swapped()).collect();
        t
    }

    /// Whether interval `j` of a disc is black.
    pub fn interval_black(&self, j: usize) -> bool {
        (j % 2 == 1) != self.swapped
    }

    /// Composition `self ∘_slot inner`: disc `slot` is replaced by `inner`.
    /// Discs of the result are those of `self` before `slot`, then those of
    /// `inner`, then the remaining discs of `self`.
    pub fn compose(&self, slot: usize, inner: &Tangle) -> Result<Tangle, TangleError> {
        let b = self.discs.len();
        if slot == 0 || slot > b {
            return Err(TangleError::SlotOutOfRange { slot, discs: b });
        }
        if self.swapped != inner.swapped {
            return Err(TangleError::ShadingMismatch);
        }
        let expected = self.discs[slot - 1];
        if expected != inner.outer {
            return Err(TangleError::ColourMismatch {
                slot,
                expected,
                found: inner.outer,
            });
        }
        let bs = inner.discs.len();
        let map_outer = |p: Point| {
            if p.disc < slot {
                p
            } else {
                Point::new(p.disc + bs - 1, p.index)
            }
        };
        let map_inner = |p: Point| Point::new(p.disc + slot - 1, p.index);

        // Walk a string through the interface until it leaves on a
        // non-interface point. `in_outer` tells which tangle `q` lives in.
        let n = expected.points();
        let mut visited = vec![false; n];
        let mut walk = |mut q: Point, mut in_outer: bool| -> Point {
            loop {
                if in_outer {
                    if q.disc == slot {
                        visited[q.index - 1] = true;
                        q = inner.partner(Point::new(0, q.index));
                        in_outer = false;
                    } else {
                        return map_outer(q);
                    }
                } else if q.disc == 0 {
                    visited[q.index - 1] = true;
                    q = self.partner(Point::new(slot, q.index));
                    in_outer = true;
                } else {
                    return map_inner(q);
                }
            }
        };

        let mut pairs = Vec::new();
        for p in self.points().filter(|p| p.disc != slot) {
            let end = walk(self.partner(p), true);
            let start = map_outer(p);
            if start < end {
                pairs.push((start, end));
            }
        }
        for p in inner.points().filter(|p| p.disc != 0) {
            let end = walk(inner.partner(p), false);
            let start = map_inner(p);
            if start < end {
                pairs.push((start, end));
            }
        }

        // Interface points not reached from any endpoint lie on closed cycles.
        let mut loops = self.loops + inner.loops;
        for start in 1..=n {
            if visited[start - 1] {
                continue;
            }
            loops += 1;
            let mut j = start;
            loop {
                visited[j - 1] = true;
                let a = self.partner(Point::new(slot, j)).index;
                visited[a - 1] = true;
                j = inner.partner(Point::new(0, a)).index;
                if j == start {
                    break;
                }
            }
        }

        let mut discs = self.discs[..slot - 1].to_vec();
        discs.extend_from_slice(&inner.discs);
        discs.extend_from_slice(&self.discs[slot..]);
        let mut t = Tangle::from_pairs(self.outer, discs, &pairs, loops)?;
        t.swapped = self.swapped;
        Ok(t)
    }

    /// Relabels internal discs: disc `i` of `self` becomes disc `sigma[i-1]`.
    pub fn renumber(&self, sigma: &[usize]) -> Result<Tangle, TangleError> {
        let b = self.discs.len();
        if !is_permutation(sigma, b) {
            return Err(TangleError::NotAPermutation(b));
        }
        let map = |p: Point| {
            if p.disc == 0 {
                p
            } else {
                Point::new(sigma[p.disc - 1], p.index)
            }
        };
        let mut discs = vec![Colour::ZERO_PLUS; b];
        for (i, &c) in self.discs.iter().enumerate() {
            discs[sigma[i] - 1] = c;
        }
        let pairs: Vec<_> = self.strings().into_iter().map(|(p, q)| (map(p), map(q))).collect();
        let mut t = Tangle::from_pairs(self.outer, discs, &pairs, self.loops)?;
        t.swapped = self.swapped;
        Ok(t)
    }

    /// Faces of the combinatorial map, each given as the list of boundary
    /// intervals `(disc, j)` it touches.
    pub fn faces(&self) -> Vec<Vec<(usize, usize)>> {
        let mut used: BTreeMap<Point, bool> = self.points().map(|p| (p, false)).collect();
        let mut faces = Vec::new();
        for p in self.points() {
            if used[&p] {
                continue;
            }
            let mut face = Vec::new();
            let mut cur = p;
            loop {
                used.insert(cur, true);
                let m = self.colour(cur.disc).points();
                // Step along the boundary of the disc inside the face, then
                // follow the string leaving from there.
                let (next, interval) = if cur.disc == 0 {
                    let nj = if cur.index == 1 { m } else { cur.index - 1 };
                    (nj, nj)
                } else {
                    (cur.index % m + 1, cur.index)
                };
                face.push((cur.disc, interval % m));
                cur = self.partner(Point::new(cur.disc, next));
                if cur == p {
                    break;
                }
            }
            faces.push(face);
        }
        faces
    }

    /// Matching, shading and planarity diagnostics.
    pub fn validate(&self) -> Diagnostics {
        let mut violations = Vec::new();
        for p in self.points() {
            let q = self.partner(p);
            if q == p || self.partner(q) != p {
                violations.push(Violation::Matching(format!("{p} is not matched consistently")));
            }
        }
        if !violations.is_empty() {
            return Diagnostics { violations };
        }
        let faces = self.faces();
        for face in &faces {
            let first = self.interval_black(face[0].1);
            if face.iter().any(|&(_, j)| self.interval_black(j) != first) {
                violations.push(Violation::Shading { face: face.clone() });
            }
        }
        // Euler characteristic per connected component of discs-and-strings.
        let nd = self.partner.len();
        let mut comp: Vec<usize> = (0..nd).collect();
        fn find(c: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while c[r] != r {
                r = c[r];
            }
            let mut y = x;
            while c[y] != r {
                let nx = c[y];
                c[y] = r;
                y = nx;
            }
            r
        }
        for (p, q) in self.strings() {
            let (a, b) = (find(&mut comp, p.disc), find(&mut comp, q.disc));
            comp[a] = b;
        }
        let mut stats: BTreeMap<usize, (i64, i64, i64)> = BTreeMap::new();
        for d in 0..nd {
            let r = find(&mut comp, d);
            let e = stats.entry(r).or_default();
            e.0 += 1;
            if self.partner[d].is_empty() {
                e.2 += 1;
            }
        }
        for (p, _) in self.strings() {
            let r = find(&mut comp, p.disc);
            stats.get_mut(&r).unwrap().1 += 1;
        }
        for face in &faces {
            let r = find(&mut comp, face[0].0);
            stats.get_mut(&r).unwrap().2 += 1;
        }
        for (r, (v, e, f)) in stats {
            let euler = v - e + f;
            if euler != 2 {
                violations.push(Violation::Planarity { component: r, euler });
            }
        }
        Diagnostics { violations }
    }

    fn count_loops(&self, black: bool) -> usize {
        // Join the two ends of every chosen interval, then count the cycles of
        // strings alternating with those caps.
        let mut cap: BTreeMap<Point, Point> = BTreeMap::new();
        for d in 0..self.partner.len() {
            let m = self.colour(d).points();
            for j in (1..=m).filter(|&j| self.interval_black(j) == black) {
                let (a, b) = (Point::new(d, j), Point::new(d, j % m + 1));
                cap.insert(a, b);
                cap.insert(b, a);
            }
        }
        let mut seen = std::collections::BTreeSet::new();
        let mut cycles = 0;
        for p in self.points() {
            if seen.contains(&p) {
                continue;
            }
            cycles += 1;
            let mut cur = p;
            loop {
                seen.insert(cur);
                let q = self.partner(cur);
                seen.insert(q);
                cur = cap[&q];
                if cur == p {
                    break;
                }
            }
        }
        cycles + self.loops
    }

    /// `l(T)`: closed loops after capping the black intervals of the external
    /// disc and cupping the black intervals of every internal disc.
    pub fn loops_black(&self) -> usize {
        self.count_loops(true)
    }

    /// `l̃(T)`: the same with white intervals.
    pub fn loops_white(&self) -> usize {
        self.count_loops(false)
    }

    fn colour_sum(&self) -> i64 {
        (self.outer.k.div_ceil(2) + self.discs.iter().map(|c| c.k / 2).sum::<usize>()) as i64
    }

    /// `c(T) = ⌈k₀/2⌉ + Σ⌊kᵢ/2⌋ − l(T)`.
    pub fn c(&self) -> i64 {
        self.colour_sum() - self.loops_black() as i64
    }

    /// `c̃(T)`, the white analogue of [`Tangle::c`].
    pub fn c_tilde(&self) -> i64 {
        self.colour_sum() - self.loops_white() as i64
    }

    /// `α(T) = ratio^{c(T)/2}`.
    pub fn alpha(&self, ratio: u64) -> RadicalScalar {
        RadicalScalar::pow_half(ratio, self.c()).expect("ratio must be positive")
    }

    /// `α̃(T) = ratio^{c̃(T)/2}`.
    pub fn alpha_tilde(&self, ratio: u64) -> RadicalScalar {
        RadicalScalar::pow_half(ratio, self.c_tilde()).expect("ratio must be positive")
    }
}

pub(crate) fn is_permutation(sigma: &[usize], n: usize) -> bool {
    if sigma.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &s in sigma {
        if s == 0 || s > n || seen[s - 1] {
            return false;
        }
        seen[s - 1] = true;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gen(g: Generator) -> Tangle {
        g.tangle().unwrap()
    }

    #[test]
    fn generators_are_valid() {
        let mut gens = vec![Generator::Unit(Sign::Plus), Generator::Unit(Sign::Minus)];
        gens.push(Generator::Identity(Colour::ZERO_PLUS));
        gens.push(Generator::Multiply(Colour::ZERO_MINUS));
        for k in 0..=6 {
            gens.push(Generator::Identity(Colour::new(k)));
            gens.push(Generator::Multiply(Colour::new(k)));
            gens.push(Generator::Expectation(k));
            gens.push(Generator::Inclusion(k));
            if k >= 1 {
                gens.push(Generator::LeftExpectation(k));
            }
            if k >= 2 {
                gens.push(Generator::Jones(k));
            }
        }
        for g in gens {
            let t = gen(g);
            assert!(t.validate().is_ok(), "{g}: {}", t.validate());
            assert!(t.swapped().validate().is_ok(), "swapped {g}");
            assert_eq!(t.closed_loops(), 0);
        }
    }

    #[test]
    fn identity_shape() {
        let t = gen(Generator::Identity(Colour::new(3)));
        assert_eq!(t.discs(), &[Colour::new(3)]);
        assert_eq!(t.strings().len(), 6);
        assert_eq!(t.closed_loops(), 0);
    }

    #[test]
    fn multiplication_and_jones_shape() {
        let m = gen(Generator::Multiply(Colour::new(2)));
        assert_eq!(m.outer(), Colour::new(2));
        assert_eq!(m.discs(), &[Colour::new(2), Colour::new(2)]);
        let j = gen(Generator::Jones(4));
        assert!(j.discs().is_empty());
        assert_eq!(j.outer(), Colour::new(4));
        let p = Point::new;
        assert_eq!(j.partner(p(0, 3)), p(0, 4));
        assert_eq!(j.partner(p(0, 5)), p(0, 6));
        assert_eq!(j.partner(p(0, 1)), p(0, 8));
    }

    #[test]
    fn crossing_strings_fail_planarity() {
        let p = Point::new;
        let t = Tangle::from_pairs(
            Colour::new(2),
            vec![],
            &[(p(0, 1), p(0, 3)), (p(0, 2), p(0, 4))],
            0,
        )
        .unwrap();
        let d = t.validate();
        assert!(d.violations.iter().any(|v| matches!(v, Violation::Planarity { .. })));
    }

    #[test]
    fn parity_mismatch_fails_shading() {
        let p = Point::new;
        // Joining points 1 and 3 of a 2-disc to the same external parity.
        let t = Tangle::from_pairs(
            Colour::new(1),
            vec![Colour::new(1)],
            &[(p(0, 1), p(1, 2)), (p(0, 2), p(1, 1))],
            0,
        )
        .unwrap();
        let d = t.validate();
        assert!(d.violations.iter().any(|v| matches!(v, Violation::Shading { .. })), "{d}");
    }

    #[test]
    fn bad_matchings_rejected() {
        let p = Point::new;
        assert!(Tangle::from_pairs(Colour::new(1), vec![], &[(p(0, 1), p(0, 3))], 0).is_err());
        assert!(Tangle::from_pairs(Colour::new(1), vec![], &[], 0).is_err());
    }

    #[test]
    fn compose_with_identity_is_neutral() {
        let id = gen(Generator::Identity(Colour::new(3)));
        let e = gen(Generator::Expectation(3));
        assert_eq!(id.compose(1, &e).unwrap(), e);
        let id4 = gen(Generator::Identity(Colour::new(4)));
        assert_eq!(e.compose(1, &id4).unwrap(), e);
    }

    #[test]
    fn expectation_of_inclusion_is_identity_with_loop() {
        let t = gen(Generator::Expectation(2))
            .compose(1, &gen(Generator::Inclusion(2)))
            .unwrap();
        assert_eq!(t, gen(Generator::Identity(Colour::new(2))).with_loops(1));
    }

    #[test]
    fn compose_rejects_mismatch() {
        let m = gen(Generator::Multiply(Colour::new(2)));
        let e = gen(Generator::Expectation(3));
        assert!(matches!(m.compose(1, &e), Err(TangleError::ColourMismatch { .. })));
        assert!(matches!(m.compose(3, &m), Err(TangleError::SlotOutOfRange { .. })));
    }

    #[test]
    fn multiplication_is_associative_up_to_renumbering() {
        let m = gen(Generator::Multiply(Colour::new(2)));
        let left = m.compose(1, &m).unwrap();
        let right = m.compose(2, &m).unwrap();
        assert!(left.validate().is_ok() && right.validate().is_ok());
        // (ab)c has discs a,b,c in order; a(bc) likewise. Both are the
        // three-fold stack.
        assert_eq!(left, right);
    }

    #[test]
    fn renumbering_roundtrip() {
        let m = gen(Generator::Multiply(Colour::new(2)));
        assert_eq!(m.renumber(&[1, 2]).unwrap(), m);
        let op = m.renumber(&[2, 1]).unwrap();
        assert_ne!(op, m);
        assert_eq!(op.alpha(2), m.alpha(2));
        assert_eq!(op.renumber(&[2, 1]).unwrap(), m);
        assert!(m.renumber(&[1, 1]).is_err());
    }

    #[test]
    fn loop_counts() {
        assert_eq!(gen(Generator::Identity(Colour::new(3))).loops_black(), 3);
        assert_eq!(gen(Generator::Multiply(Colour::new(2))).loops_black(), 3);
        let free = gen(Generator::Unit(Sign::Plus)).with_loops(1);
        assert_eq!(free.loops_black(), 1);
    }

    #[test]
    fn mirror_identity_on_generators() {
        for k in 1..=5 {
            for g in [
                Generator::Identity(Colour::new(k)),
                Generator::Multiply(Colour::new(k)),
                Generator::Expectation(k),
                Generator::Inclusion(k),
                Generator::LeftExpectation(k),
            ] {
                let t = gen(g);
                assert_eq!(t.loops_white(), t.swapped().loops_black());
            }
        }
    }
}
