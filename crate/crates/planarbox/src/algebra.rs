//! The group planar algebra `P(G)`: for colour `k ≥ 2` the space `P_k` has
//! basis `S(g₁,…,g_{k−1})`, `gᵢ ∈ G`; colours `0±` and `1` are
//! one-dimensional. Every generating tangle acts by an explicit basis formula.
//!
//! Conventions fixed here:
//! * `δ = √|G|` is the value of a closed loop.
//! * Colour 2 multiplies as the group algebra: `S(g)S(h) = S(gh)`.
//! * For `k ≥ 3`, `S(ḡ)* = S(g₁⁻¹, g₁⁻¹g_{k−1}, g₁⁻¹g_{k−2}, …, g₁⁻¹g₂)`.
//! * `I³₂ S(g) = |G|^{-1/2} Σ_u S(g⁻¹, u)`, which makes `I³₂` a unital
//!   homomorphism and `E²₃ ∘ I³₂ = δ·id`.
//! * Writing `g_k := e`, the unit of `P_k` is `|G|^{-(⌈k/2⌉−1)/2}` times the sum
//!   of `S(ḡ)` over tuples with `gᵢ = g_{k+1−i}` for all `i`.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use thiserror::Error;

use crate::group::FiniteGroup;
use crate::scalar::RadicalScalar;
use crate::tangle::{Colour, Generator, TangleExpr};

pub type Label = Vec<usize>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("colour mismatch: expected {expected}, found {found}")]
    ColourMismatch { expected: Colour, found: Colour },
    #[error("expected {expected} input(s), got {found}")]
    Arity { expected: usize, found: usize },
    #[error("label {label:?} is not a tuple of {len} group elements")]
    BadLabel { label: Label, len: usize },
    #[error(transparent)]
    Tangle(#[from] crate::tangle::TangleError),
}

/// Number of group entries in a basis label of the given colour.
pub fn label_len(c: Colour) -> usize {
    c.k.saturating_sub(1)
}

/// A finite linear combination of basis labels with exact coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PAElement {
    colour: Colour,
    coeffs: BTreeMap<Label, RadicalScalar>,
}

impl PAElement {
    pub fn zero(colour: Colour) -> Self {
        PAElement {
            colour,
            coeffs: BTreeMap::new(),
        }
    }

    /// `s·S(label)`; zero coefficients are dropped.
    pub fn term(colour: Colour, label: Label, s: RadicalScalar) -> Self {
        let mut x = Self::zero(colour);
        x.add_term(label, s);
        x
    }

    pub fn basis(colour: Colour, label: Label) -> Self {
        Self::term(colour, label, RadicalScalar::one())
    }

    /// Scalar multiple of the empty label (for colours `0±`, `1`).
    pub fn scalar(colour: Colour, s: RadicalScalar) -> Self {
        Self::term(colour, vec![], s)
    }

    pub fn from_terms(colour: Colour, terms: impl IntoIterator<Item = (Label, RadicalScalar)>) -> Self {
        let mut x = Self::zero(colour);
        for (l, s) in terms {
            x.add_term(l, s);
        }
        x
    }

    pub fn colour(&self) -> Colour {
        self.colour
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Label, &RadicalScalar)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, label: &[usize]) -> RadicalScalar {
        self.coeffs.get(label).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, label: Label, s: RadicalScalar) {
        if s.is_zero() {
            return;
        }
        match self.coeffs.entry(label) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(s);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &s;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &PAElement, s: &RadicalScalar) {
        debug_assert_eq!(self.colour, other.colour);
        if s.is_zero() {
            return;
        }
        for (l, c) in &other.coeffs {
            self.add_term(l.clone(), c * s);
        }
    }

    pub fn scale(&self, s: &RadicalScalar) -> PAElement {
        if s.is_zero() {
            return Self::zero(self.colour);
        }
        PAElement {
            colour: self.colour,
            coeffs: self.coeffs.iter().map(|(l, c)| (l.clone(), c * s)).collect(),
        }
    }

    /// Applies `f` to every label, keeping coefficients.
    pub fn map_labels(&self, colour: Colour, mut f: impl FnMut(&[usize]) -> Label) -> PAElement {
        let mut out = Self::zero(colour);
        for (l, c) in &self.coeffs {
            out.add_term(f(l), c.clone());
        }
        out
    }

    /// Scalar value of a colour `0±`/`1` element.
    pub fn scalar_value(&self) -> RadicalScalar {
        self.coeff(&[])
    }
}

impl std::ops::Add<&PAElement> for &PAElement {
    type Output = PAElement;
    fn add(self, rhs: &PAElement) -> PAElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &RadicalScalar::one());
        out
    }
}

impl std::ops::Sub<&PAElement> for &PAElement {
    type Output = PAElement;
    fn sub(self, rhs: &PAElement) -> PAElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &RadicalScalar::from_int(-1));
        out
    }
}

impl fmt::Display for PAElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (l, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let s = format!("S({})", l.iter().join(","));
            if c.is_one() {
                write!(f, "{s}")?;
            } else if c.terms().count() > 1 {
                write!(f, "({c})*{s}")?;
            } else {
                write!(f, "{c}*{s}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PAElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.colour, self)
    }
}

/// `P(G)` with exact coefficients.
#[derive(Clone, Debug)]
pub struct GroupPlanarAlgebra {
    group: FiniteGroup,
    /// `(√|G|)^j` for small `j ≥ 0`.
    root_pows: Vec<RadicalScalar>,
    /// `(√|G|)^{-j}`.
    inv_root_pows: Vec<RadicalScalar>,
}

impl GroupPlanarAlgebra {
    pub fn new(group: FiniteGroup) -> Self {
        let n = group.order() as u64;
        let root_pows = (0..16).map(|j| RadicalScalar::pow_half(n, j).unwrap()).collect();
        let inv_root_pows = (0..16).map(|j| RadicalScalar::pow_half(n, -j).unwrap()).collect();
        GroupPlanarAlgebra {
            group,
            root_pows,
            inv_root_pows,
        }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// `(√|G|)^p`.
    pub fn root_pow(&self, p: i64) -> RadicalScalar {
        let j = p.unsigned_abs() as usize;
        let table = if p >= 0 { &self.root_pows } else { &self.inv_root_pows };
        table
            .get(j)
            .cloned()
            .unwrap_or_else(|| RadicalScalar::pow_half(self.order() as u64, p).unwrap())
    }

    /// Loop value `δ = √|G|`.
    pub fn delta(&self) -> RadicalScalar {
        self.root_pow(1)
    }

    pub fn dim(&self, c: Colour) -> usize {
        self.order().pow(label_len(c) as u32)
    }

    /// All basis labels of colour `c` in lexicographic order.
    pub fn labels(&self, c: Colour) -> Vec<Label> {
        let n = self.order();
        let len = label_len(c);
        if len == 0 {
            return vec![vec![]];
        }
        (0..len).map(|_| 0..n).multi_cartesian_product().collect()
    }

    pub fn basis(&self, c: Colour) -> Vec<PAElement> {
        self.labels(c).into_iter().map(|l| PAElement::basis(c, l)).collect()
    }

    pub fn s(&self, c: Colour, label: &[usize]) -> Result<PAElement, AlgebraError> {
        self.check_label(c, label)?;
        Ok(PAElement::basis(c, label.to_vec()))
    }

    pub fn check_label(&self, c: Colour, label: &[usize]) -> Result<(), AlgebraError> {
        let len = label_len(c);
        if label.len() != len || label.iter().any(|&x| x >= self.order()) {
            return Err(AlgebraError::BadLabel {
                label: label.to_vec(),
                len,
            });
        }
        Ok(())
    }

    /// Checks that every label of `x` is well formed.
    pub fn check_element(&self, x: &PAElement) -> Result<(), AlgebraError> {
        x.terms().try_for_each(|(l, _)| self.check_label(x.colour(), l))
    }

    /// Tuples with `gᵢ = g_{k+1−i}` for all `i`, where `g_k := e`.
    fn palindromes(&self, k: usize) -> Vec<Label> {
        // Free entries are g₂..g_{⌈k/2⌉}; g₁ = g_k = e.
        let c = k.div_ceil(2);
        let n = self.order();
        (0..c.saturating_sub(1))
            .map(|_| 0..n)
            .multi_cartesian_product()
            .map(|free| {
                let mut g = vec![0; k - 1];
                for (j, &x) in free.iter().enumerate() {
                    let i = j + 2; // 1-based position
                    g[i - 1] = x;
                    g[k - i] = x; // position k+1−i
                }
                g
            })
            .collect()
    }

    pub fn unit(&self, c: Colour) -> PAElement {
        match c.k {
            0 | 1 => PAElement::scalar(c, RadicalScalar::one()),
            2 => PAElement::basis(c, vec![0]),
            k => {
                let s = self.root_pow(-((k.div_ceil(2) - 1) as i64));
                PAElement::from_terms(c, self.palindromes(k).into_iter().map(|l| (l, s.clone())))
            }
        }
    }

    /// The Jones projection `e_{k−1}` of `P_k`, `k ≥ 2`: a projection of
    /// trace `δ^{-2}` with `E^{k−1}_k(f) = δ^{-1}·1`.
    pub fn jones(&self, k: usize) -> PAElement {
        assert!(k >= 2, "jones element needs colour >= 2");
        let c = Colour::new(k);
        let n = self.order();
        let m = k / 2;
        let (free, coeff) = if k % 2 == 0 {
            // gᵢ = g_{k+1−i} for i ≤ m−1; g_m, g_{m+1} free.
            (m, self.root_pow(-(m as i64 + 1)))
        } else {
            // gᵢ = g_{k+1−i} for i ≤ m−1; g_m = g_{m+1} = g_{m+2}.
            (m.saturating_sub(1), self.root_pow(-(m as i64)))
        };
        let mut out = PAElement::zero(c);
        for vals in (0..free).map(|_| 0..n).multi_cartesian_product() {
            let mut g = vec![usize::MAX; k]; // 1-based with g[k] = e
            g[0] = 0;
            g[k - 1] = 0;
            let mut it = vals.into_iter();
            if k % 2 == 0 {
                for i in 2..m {
                    let x = it.next().unwrap();
                    g[i - 1] = x;
                    g[k - i] = x;
                }
                if m == 1 {
                    g[0] = it.next().unwrap();
                } else {
                    g[m - 1] = it.next().unwrap();
                    g[m] = it.next().unwrap();
                }
            } else {
                for i in 2..m {
                    let x = it.next().unwrap();
                    g[i - 1] = x;
                    g[k - i] = x;
                }
                let x = if m >= 2 { it.next().unwrap() } else { 0 };
                g[m - 1] = x;
                g[m] = x;
                g[m + 1] = x;
            }
            g.truncate(k - 1);
            out.add_term(g, coeff.clone());
        }
        out
    }

    /// `S(ḡ)·S(h̄)` as `(label, p)` meaning `(√|G|)^p·S(label)`, or `None` when
    /// the product vanishes; `k ≥ 2`.
    pub fn multiply_basis(&self, k: usize, g: &[usize], h: &[usize]) -> Option<(Label, i64)> {
        let grp = &self.group;
        if k == 2 {
            return Some((vec![grp.mul(g[0], h[0])], 0));
        }
        let c = k.div_ceil(2);
        for i in 2..=c {
            if grp.mul(h[0], g[k - i]) != h[i - 1] {
                return None;
            }
        }
        let mut out: Label = g[..c].iter().map(|&x| grp.mul(h[0], x)).collect();
        out.extend_from_slice(&h[c..]);
        Some((out, c as i64 - 1))
    }

    pub fn multiply(&self, x: &PAElement, y: &PAElement) -> Result<PAElement, AlgebraError> {
        let c = x.colour();
        if y.colour() != c {
            return Err(AlgebraError::ColourMismatch {
                expected: c,
                found: y.colour(),
            });
        }
        if c.k <= 1 {
            return Ok(PAElement::scalar(c, &x.scalar_value() * &y.scalar_value()));
        }
        let mut acc: BTreeMap<Label, RadicalScalar> = BTreeMap::new();
        for (g, a) in x.terms() {
            for (h, b) in y.terms() {
                if let Some((l, p)) = self.multiply_basis(c.k, g, h) {
                    let mut s = a * b;
                    if p != 0 {
                        s = &s * &self.root_pow(p);
                    }
                    let e = acc.entry(l).or_default();
                    *e += &s;
                }
            }
        }
        Ok(PAElement::from_terms(c, acc.into_iter().filter(|(_, s)| !s.is_zero())))
    }

    /// Conjugate-linear involution; coefficients are real so only labels move.
    pub fn star(&self, x: &PAElement) -> PAElement {
        let grp = &self.group;
        match x.colour().k {
            0 | 1 => x.clone(),
            2 => x.map_labels(x.colour(), |g| vec![grp.inv(g[0])]),
            k => x.map_labels(x.colour(), |g| {
                let a = grp.inv(g[0]);
                let mut out = vec![a];
                out.extend((1..k - 1).map(|j| grp.mul(a, g[k - 1 - j])));
                out
            }),
        }
    }

    /// Normalised trace: `tr = δ^{-(k−1)}·E¹₂∘⋯∘E^{k−1}_k`, so `tr(1) = 1`.
    pub fn trace(&self, x: &PAElement) -> RadicalScalar {
        let mut y = x.clone();
        let mut k = x.colour().k;
        while k >= 2 {
            y = self.expectation(k - 1, &y);
            k -= 1;
        }
        let steps = x.colour().k.saturating_sub(1) as i64;
        &y.scalar_value() * &self.root_pow(-steps)
    }

    /// `⟨x, y⟩ = tr(y*·x)`.
    pub fn inner(&self, x: &PAElement, y: &PAElement) -> Result<RadicalScalar, AlgebraError> {
        Ok(self.trace(&self.multiply(&self.star(y), x)?))
    }

    /// `E^k_{k+1}` applied to an element of colour `k+1`.
    fn expectation(&self, k: usize, x: &PAElement) -> PAElement {
        let out = if k == 0 { Colour::ZERO_PLUS } else { Colour::new(k) };
        let grp = &self.group;
        match k {
            0 => x.map_labels(out, |_| vec![]).scale(&self.delta()),
            1 => PAElement::scalar(out, &x.coeff(&[0]) * &self.delta()),
            2 => x.map_labels(out, |g| vec![grp.inv(g[0])]),
            k if k % 2 == 0 => x.map_labels(out, |g| {
                let mut l = g.to_vec();
                l.remove(k / 2);
                l
            }),
            k => {
                let c = k.div_ceil(2);
                let mut y = PAElement::zero(out);
                for (g, s) in x.terms() {
                    if g[c - 1] == g[c] {
                        let mut l = g.clone();
                        l.remove(c);
                        y.add_term(l, s.clone());
                    }
                }
                y.scale(&self.delta())
            }
        }
    }

    /// `I^{k+1}_k` applied to an element of colour `k`.
    fn inclusion(&self, k: usize, x: &PAElement) -> PAElement {
        let out = Colour::new(k + 1);
        let grp = &self.group;
        match k {
            0 => PAElement::scalar(out, x.scalar_value()),
            1 => PAElement::term(out, vec![0], x.scalar_value()),
            _ if k % 2 == 0 => {
                let s = self.root_pow(-1);
                let mut y = PAElement::zero(out);
                for (g, a) in x.terms() {
                    let a = a * &s;
                    for u in 0..self.order() {
                        let mut l = g.clone();
                        if k == 2 {
                            l[0] = grp.inv(l[0]);
                        }
                        l.insert(k / 2, u);
                        y.add_term(l, a.clone());
                    }
                }
                y
            }
            _ => {
                let c = k.div_ceil(2);
                x.map_labels(out, |g| {
                    let mut l = g.to_vec();
                    l.insert(c, g[c - 1]);
                    l
                })
            }
        }
    }

    /// `(E')^k_k`.
    fn left_expectation(&self, k: usize, x: &PAElement) -> PAElement {
        let c = Colour::new(k);
        if k == 1 {
            return x.scale(&self.delta());
        }
        let mut y = PAElement::zero(c);
        for (g, s) in x.terms() {
            if g[0] == 0 {
                y.add_term(g.clone(), s.clone());
            }
        }
        y.scale(&self.delta())
    }

    /// Action `Z_gen` of a generating tangle.
    pub fn act(&self, gen: &Generator, inputs: &[PAElement]) -> Result<PAElement, AlgebraError> {
        gen.check()?;
        let slots = gen.slots();
        if slots.len() != inputs.len() {
            return Err(AlgebraError::Arity {
                expected: slots.len(),
                found: inputs.len(),
            });
        }
        for (s, x) in slots.iter().zip(inputs) {
            if *s != x.colour() {
                return Err(AlgebraError::ColourMismatch {
                    expected: *s,
                    found: x.colour(),
                });
            }
        }
        Ok(match *gen {
            Generator::Unit(_) => self.unit(gen.outer()),
            Generator::Identity(_) => inputs[0].clone(),
            Generator::Multiply(_) => self.multiply(&inputs[0], &inputs[1])?,
            Generator::Expectation(k) => self.expectation(k, &inputs[0]),
            Generator::Inclusion(k) => self.inclusion(k, &inputs[0]),
            Generator::LeftExpectation(k) => self.left_expectation(k, &inputs[0]),
            Generator::Jones(k) => self.jones(k).scale(&self.delta()),
        })
    }

    /// `Z_T(x₁ ⊗ ⋯ ⊗ x_b)` for a generator tree; inputs follow the disc order
    /// of the realised tangle.
    pub fn evaluate(&self, expr: &TangleExpr, inputs: &[PAElement]) -> Result<PAElement, AlgebraError> {
        let slots = expr.slots();
        if slots.len() != inputs.len() {
            return Err(AlgebraError::Arity {
                expected: slots.len(),
                found: inputs.len(),
            });
        }
        for (s, x) in slots.iter().zip(inputs) {
            if *s != x.colour() {
                return Err(AlgebraError::ColourMismatch {
                    expected: *s,
                    found: x.colour(),
                });
            }
        }
        self.eval_unchecked(expr, inputs)
    }

    fn eval_unchecked(&self, expr: &TangleExpr, inputs: &[PAElement]) -> Result<PAElement, AlgebraError> {
        match expr {
            TangleExpr::Gen(g) => self.act(g, inputs),
            TangleExpr::Compose(o, i, e) => {
                let a = e.arity();
                let start = i - 1;
                let y = self.eval_unchecked(e, &inputs[start..start + a])?;
                let mut outer_inputs = inputs[..start].to_vec();
                outer_inputs.push(y);
                outer_inputs.extend_from_slice(&inputs[start + a..]);
                self.eval_unchecked(o, &outer_inputs)
            }
            TangleExpr::Renumber(sigma, e) => {
                let inner: Vec<PAElement> = sigma.iter().map(|&s| inputs[s - 1].clone()).collect();
                self.eval_unchecked(e, &inner)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z3() -> GroupPlanarAlgebra {
        GroupPlanarAlgebra::new(FiniteGroup::cyclic(3))
    }

    fn c(k: usize) -> Colour {
        Colour::new(k)
    }

    #[test]
    fn colour_two_is_the_group_algebra() {
        let p = GroupPlanarAlgebra::new(FiniteGroup::symmetric3());
        let g = p.group().clone();
        for a in 0..6 {
            for b in 0..6 {
                let x = p.multiply(&PAElement::basis(c(2), vec![a]), &PAElement::basis(c(2), vec![b])).unwrap();
                assert_eq!(x, PAElement::basis(c(2), vec![g.mul(a, b)]));
            }
        }
    }

    #[test]
    fn colour_three_product() {
        // S(g₁,g₂)S(h₁,h₂) = √|G| δ(h₁g₂, h₂) S(h₁g₁, h₂).
        let p = z3();
        let s = |a, b| PAElement::basis(c(3), vec![a, b]);
        for (g1, g2, h1, h2) in itertools::iproduct!(0..3, 0..3, 0..3, 0..3) {
            let lhs = p.multiply(&s(g1, g2), &s(h1, h2)).unwrap();
            let rhs = if (h1 + g2) % 3 == h2 {
                s((h1 + g1) % 3, h2).scale(&p.delta())
            } else {
                PAElement::zero(c(3))
            };
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn unit_of_colour_three() {
        let p = z3();
        let one = p.unit(c(3));
        let expect = PAElement::from_terms(c(3), (0..3).map(|h| (vec![0, h], p.root_pow(-1))));
        assert_eq!(one, expect);
        for x in p.basis(c(3)) {
            assert_eq!(p.multiply(&one, &x).unwrap(), x);
            assert_eq!(p.multiply(&x, &one).unwrap(), x);
        }
    }

    #[test]
    fn expectation_and_inclusion_examples() {
        let p = GroupPlanarAlgebra::new(FiniteGroup::symmetric3());
        let g = p.group().clone();
        let e23 = p.act(&Generator::Expectation(2), &[PAElement::basis(c(3), vec![1, 2])]).unwrap();
        assert_eq!(e23, PAElement::basis(c(2), vec![g.inv(1)]));
        let e45 = p.act(&Generator::Expectation(4), &[PAElement::basis(c(5), vec![1, 2, 3, 4])]).unwrap();
        assert_eq!(e45, PAElement::basis(c(4), vec![1, 2, 4]));
        let e34 = p.act(&Generator::Expectation(3), &[PAElement::basis(c(4), vec![1, 2, 2])]).unwrap();
        assert_eq!(e34, PAElement::basis(c(3), vec![1, 2]).scale(&p.delta()));
        let e34z = p.act(&Generator::Expectation(3), &[PAElement::basis(c(4), vec![1, 2, 3])]).unwrap();
        assert!(e34z.is_zero());
        let i43 = p.act(&Generator::Inclusion(3), &[PAElement::basis(c(3), vec![1, 2])]).unwrap();
        assert_eq!(i43, PAElement::basis(c(4), vec![1, 2, 2]));
        let ep = p.act(&Generator::LeftExpectation(3), &[PAElement::basis(c(3), vec![0, 4])]).unwrap();
        assert_eq!(ep, PAElement::basis(c(3), vec![0, 4]).scale(&p.delta()));
        let ep0 = p.act(&Generator::LeftExpectation(3), &[PAElement::basis(c(3), vec![1, 4])]).unwrap();
        assert!(ep0.is_zero());
    }

    #[test]
    fn inclusion_of_colour_two_inverts_then_averages() {
        let p = GroupPlanarAlgebra::new(FiniteGroup::symmetric3());
        let g = p.group().clone();
        let x = p.act(&Generator::Inclusion(2), &[PAElement::basis(c(2), vec![1])]).unwrap();
        let expect = PAElement::from_terms(c(3), (0..6).map(|u| (vec![g.inv(1), u], p.root_pow(-1))));
        assert_eq!(x, expect);
    }

    #[test]
    fn trace_values() {
        let p = z3();
        for k in 1..=4 {
            assert!(p.trace(&p.unit(c(k))).is_one(), "k={k}");
        }
        for a in 0..3 {
            let t = p.trace(&PAElement::basis(c(2), vec![a]));
            assert_eq!(t, RadicalScalar::from_int(i64::from(a == 0)));
        }
        assert_eq!(p.trace(&p.jones(2)), RadicalScalar::from_frac(1, 3));
    }

    #[test]
    fn jones_elements() {
        let p = z3();
        let f2 = PAElement::from_terms(c(2), (0..3).map(|g| (vec![g], RadicalScalar::from_frac(1, 3))));
        assert_eq!(p.jones(2), f2);
        assert_eq!(p.jones(3), PAElement::basis(c(3), vec![0, 0]).scale(&p.root_pow(-1)));
        for k in 2..=5 {
            let f = p.jones(k);
            assert_eq!(p.multiply(&f, &f).unwrap(), f, "k={k}");
            assert_eq!(p.star(&f), f);
            assert_eq!(p.trace(&f), RadicalScalar::from_frac(1, 3));
        }
    }

    #[test]
    fn star_colour_two() {
        let p = GroupPlanarAlgebra::new(FiniteGroup::symmetric3());
        for a in 0..6 {
            let x = PAElement::basis(c(2), vec![a]);
            assert_eq!(p.star(&x), PAElement::basis(c(2), vec![p.group().inv(a)]));
        }
    }

    #[test]
    fn arity_and_colour_errors() {
        let p = z3();
        let x = PAElement::basis(c(2), vec![1]);
        assert!(p.act(&Generator::Multiply(c(2)), &[x.clone()]).is_err());
        assert!(p.act(&Generator::Expectation(2), &[x.clone()]).is_err());
        assert!(p.multiply(&x, &p.unit(c(3))).is_err());
        assert!(p.s(c(3), &[0]).is_err());
        assert!(p.s(c(3), &[0, 5]).is_err());
    }

    #[test]
    fn evaluate_examples() {
        let p = z3();
        let x = PAElement::basis(c(2), vec![1]);
        let id = TangleExpr::gen(Generator::Identity(c(2)));
        assert_eq!(p.evaluate(&id, &[x.clone()]).unwrap(), x);
        let ei = crate::tangle::parse_expr("(compose (gen E 2 3) 1 (gen I 3 2))").unwrap();
        assert_eq!(p.evaluate(&ei, &[x.clone()]).unwrap(), x.scale(&p.delta()));
        let m = TangleExpr::gen(Generator::Multiply(c(2)));
        let y = PAElement::basis(c(2), vec![2]);
        assert_eq!(p.evaluate(&m, &[x, y]).unwrap(), PAElement::basis(c(2), vec![0]));
    }
}
