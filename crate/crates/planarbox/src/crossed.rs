//! The crossed-product example: `Θ` acting on `G`, the invariant subalgebra
//! `P(G)^Θ` with basis `ΘS(ḡ)`, and inside `P(G⋊Θ)` the biprojection `q`,
//! the surround maps `F_k`, the elements `U(ḡ)` and the maps `Φ_k`.
//!
//! An element `(g, θ)` of `G⋊Θ` is numbered `g·|Θ| + θ`.

use std::collections::BTreeMap;

use itertools::Itertools;
use thiserror::Error;

use crate::algebra::{label_len, AlgebraError, GroupPlanarAlgebra, Label, PAElement};
use crate::group::GroupAction;
use crate::scalar::RadicalScalar;
use crate::tangle::Colour;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CrossedError {
    #[error("element of colour {0} is not Θ-invariant")]
    NotInvariant(Colour),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Clone, Debug)]
pub struct CrossedProduct {
    action: GroupAction,
    base: GroupPlanarAlgebra,
    big: GroupPlanarAlgebra,
}

impl CrossedProduct {
    pub fn new(action: GroupAction) -> Self {
        let base = GroupPlanarAlgebra::new(action.g.clone());
        let big = GroupPlanarAlgebra::new(action.semidirect());
        CrossedProduct { action, base, big }
    }

    pub fn action(&self) -> &GroupAction {
        &self.action
    }

    /// `P(G)`.
    pub fn base(&self) -> &GroupPlanarAlgebra {
        &self.base
    }

    /// `P(G⋊Θ)`.
    pub fn big(&self) -> &GroupPlanarAlgebra {
        &self.big
    }

    pub fn g_order(&self) -> usize {
        self.action.g.order()
    }

    pub fn theta_order(&self) -> usize {
        self.action.theta.order()
    }

    fn theta_int(&self) -> RadicalScalar {
        RadicalScalar::from_int(self.theta_order() as i64)
    }

    fn theta_pow_half(&self, p: i64) -> RadicalScalar {
        RadicalScalar::pow_half(self.theta_order() as u64, p).expect("nonzero order")
    }

    fn g_pow_half(&self, p: i64) -> RadicalScalar {
        self.base.root_pow(p)
    }

    /// The `Θ`-orbit of a tuple, sorted and deduplicated.
    pub fn orbit(&self, g: &[usize]) -> Vec<Label> {
        (0..self.theta_order())
            .map(|t| self.action.apply_tuple(t, g))
            .sorted()
            .dedup()
            .collect()
    }

    pub fn stabilizer_order(&self, g: &[usize]) -> usize {
        (0..self.theta_order())
            .filter(|&t| self.action.apply_tuple(t, g) == g)
            .count()
    }

    /// Lexicographically least representative of the orbit of `g`.
    pub fn representative(&self, g: &[usize]) -> Label {
        (0..self.theta_order())
            .map(|t| self.action.apply_tuple(t, g))
            .min()
            .expect("Θ is nonempty")
    }

    /// One representative per `Θ`-orbit on `G^{k−1}`, in increasing order.
    pub fn orbit_reps(&self, c: Colour) -> Vec<Label> {
        self.base
            .labels(c)
            .into_iter()
            .filter(|g| self.representative(g) == *g)
            .collect()
    }

    /// `ΘS(ḡ) = Σ_θ S(θ(ḡ))` in `P(G)_k`.
    pub fn theta_s(&self, c: Colour, g: &[usize]) -> PAElement {
        let mut x = PAElement::zero(c);
        for t in 0..self.theta_order() {
            x.add_term(self.action.apply_tuple(t, g), RadicalScalar::one());
        }
        x
    }

    pub fn theta_basis(&self, c: Colour) -> Vec<PAElement> {
        self.orbit_reps(c).iter().map(|g| self.theta_s(c, g)).collect()
    }

    pub fn is_invariant(&self, x: &PAElement) -> bool {
        x.terms().all(|(g, a)| {
            (1..self.theta_order()).all(|t| x.coeff(&self.action.apply_tuple(t, g)) == *a)
        })
    }

    /// Coordinates of an invariant element in the `ΘS` basis.
    pub fn theta_coords(&self, x: &PAElement) -> Result<BTreeMap<Label, RadicalScalar>, CrossedError> {
        if !self.is_invariant(x) {
            return Err(CrossedError::NotInvariant(x.colour()));
        }
        Ok(x.terms()
            .filter(|(g, _)| self.representative(g) == **g)
            .map(|(g, a)| {
                let stab = RadicalScalar::from_frac(1, self.stabilizer_order(g) as i64);
                (g.clone(), a * &stab)
            })
            .collect())
    }

    /// `ΘS(ḡ)·ΘS(h̄)` from the closed form.
    pub fn theta_multiply_basis(&self, c: Colour, g: &[usize], h: &[usize]) -> PAElement {
        let grp = &self.action.g;
        let k = c.k;
        let mut out = PAElement::zero(c);
        match k {
            0 | 1 => return PAElement::scalar(c, self.theta_int() * self.theta_int()),
            2 => {
                for t in 0..self.theta_order() {
                    let l = [grp.mul(g[0], self.action.apply(t, h[0]))];
                    out.add_scaled(&self.theta_s(c, &l), &RadicalScalar::one());
                }
                return out;
            }
            _ => {}
        }
        let half = k.div_ceil(2);
        for t in 0..self.theta_order() {
            let tg = self.action.apply_tuple(t, g);
            if (2..=half).any(|i| grp.mul(h[0], tg[k - i]) != h[i - 1]) {
                continue;
            }
            let mut l: Label = tg[..half].iter().map(|&x| grp.mul(h[0], x)).collect();
            l.extend_from_slice(&h[half..]);
            out.add_scaled(&self.theta_s(c, &l), &RadicalScalar::one());
        }
        out.scale(&self.g_pow_half(half as i64 - 1))
    }

    /// Product of invariant elements via the `ΘS` closed form.
    pub fn theta_multiply(&self, x: &PAElement, y: &PAElement) -> Result<PAElement, CrossedError> {
        let c = x.colour();
        if y.colour() != c {
            return Err(AlgebraError::ColourMismatch {
                expected: c,
                found: y.colour(),
            }
            .into());
        }
        if c.k <= 1 {
            return Ok(PAElement::scalar(c, &x.scalar_value() * &y.scalar_value()));
        }
        let (cx, cy) = (self.theta_coords(x)?, self.theta_coords(y)?);
        let mut out = PAElement::zero(c);
        for (g, a) in &cx {
            for (h, b) in &cy {
                out.add_scaled(&self.theta_multiply_basis(c, g, h), &(a * b));
            }
        }
        Ok(out)
    }

    /// The biprojection `q = |Θ|⁻¹ Σ_θ S((e,θ))` in `P(G⋊Θ)₂`.
    pub fn q(&self) -> PAElement {
        let s = RadicalScalar::from_frac(1, self.theta_order() as i64);
        PAElement::from_terms(
            Colour::new(2),
            (0..self.theta_order()).map(|t| (vec![self.action.pair(0, t)], s.clone())),
        )
    }

    /// `r = √([M:Q]/[Q:N])·q`.
    pub fn r(&self) -> PAElement {
        let m = self.theta_order() as i64;
        let n = self.g_order() as i64;
        let ratio = RadicalScalar::from_frac(m * n, 1) * RadicalScalar::from_frac(1, n * n);
        let root = RadicalScalar::pow_half((m * n) as u64, 1).unwrap() * RadicalScalar::from_frac(1, n);
        debug_assert_eq!(&root * &root, ratio);
        self.q().scale(&root)
    }

    /// `U(ḡ) = Σ_{θ, γ̄} S((θ(g₁),γ₁), …, (θ(g_{k−1}),γ_{k−1}))`.
    pub fn u(&self, c: Colour, g: &[usize]) -> PAElement {
        let t = self.theta_order();
        let mut out = PAElement::zero(c);
        if c.k <= 1 {
            return PAElement::scalar(c, self.theta_int());
        }
        for th in 0..t {
            let tg = self.action.apply_tuple(th, g);
            for gam in (0..g.len()).map(|_| 0..t).multi_cartesian_product() {
                let l = tg.iter().zip(&gam).map(|(&x, &y)| self.action.pair(x, y)).collect();
                out.add_term(l, RadicalScalar::one());
            }
        }
        out
    }

    /// Coordinates of an element of `span U` in the `U` basis, keyed by orbit
    /// representative. Elements outside the span give meaningless values.
    pub fn u_coords(&self, x: &PAElement) -> BTreeMap<Label, RadicalScalar> {
        let c = x.colour();
        if c.k <= 1 {
            let v = &x.scalar_value() * &self.theta_pow_half(-2);
            return BTreeMap::from([(vec![], v)]);
        }
        self.orbit_reps(c)
            .into_iter()
            .filter_map(|g| {
                let l: Label = g.iter().map(|&y| self.action.pair(y, 0)).collect();
                let a = x.coeff(&l);
                (!a.is_zero()).then(|| {
                    let stab = RadicalScalar::from_frac(1, self.stabilizer_order(&g) as i64);
                    (g, &a * &stab)
                })
            })
            .collect()
    }

    pub fn u_basis(&self, c: Colour) -> Vec<PAElement> {
        self.orbit_reps(c).iter().map(|g| self.u(c, g)).collect()
    }

    /// Constant in front of the `U` product formula:
    /// `(√|G|)^{⌈k/2⌉−1}(√|Θ|)^{⌈k/2⌉−1}|Θ|^{⌊k/2⌋}`.
    pub fn u_constant(&self, k: usize) -> RadicalScalar {
        let half = k.div_ceil(2) as i64;
        self.g_pow_half(half - 1) * self.theta_pow_half(half - 1) * self.theta_pow_half(2 * (k / 2) as i64)
    }

    /// `U(ḡ)·U(h̄)` from the closed form. For `k = 2` this is
    /// `|Θ| Σ_{θ″} U(gθ″(h))`.
    pub fn u_multiply_basis(&self, c: Colour, g: &[usize], h: &[usize]) -> PAElement {
        let grp = &self.action.g;
        let k = c.k;
        if k <= 1 {
            return PAElement::scalar(c, self.theta_int() * self.theta_int());
        }
        let mut out = PAElement::zero(c);
        if k == 2 {
            for t in 0..self.theta_order() {
                let l = [grp.mul(g[0], self.action.apply(t, h[0]))];
                out.add_scaled(&self.u(c, &l), &RadicalScalar::one());
            }
            return out.scale(&self.theta_int());
        }
        let half = k.div_ceil(2);
        for t in 0..self.theta_order() {
            let tg = self.action.apply_tuple(t, g);
            if (2..=half).any(|i| grp.mul(h[0], tg[k - i]) != h[i - 1]) {
                continue;
            }
            let mut l: Label = tg[..half].iter().map(|&x| grp.mul(h[0], x)).collect();
            l.extend_from_slice(&h[half..]);
            out.add_scaled(&self.u(c, &l), &RadicalScalar::one());
        }
        out.scale(&self.u_constant(k))
    }

    /// The surround map `F_k` on `P(G⋊Θ)_k`:
    /// `S((gᵢ,θᵢ)) ↦ |Θ|^{−k} U(ḡ)`; the identity for `k ≤ 1`.
    pub fn surround(&self, x: &PAElement) -> PAElement {
        let c = x.colour();
        if c.k <= 1 {
            return x.clone();
        }
        let mut by_g: BTreeMap<Label, RadicalScalar> = BTreeMap::new();
        for (l, a) in x.terms() {
            let g: Label = l.iter().map(|&y| self.action.unpair(y).0).collect();
            *by_g.entry(g).or_default() += a;
        }
        let s = self.theta_pow_half(-2 * c.k as i64);
        let mut out = PAElement::zero(c);
        for (g, a) in by_g {
            if !a.is_zero() {
                out.add_scaled(&self.u(c, &g), &(&a * &s));
            }
        }
        out
    }

    /// The dual surround map built from `r`: averages the `G`-parts,
    /// `S((yᵢ,θᵢ)) ↦ |G|^{−(k−1)} Σ_{ȳ′} S((y′ᵢ,θᵢ))`.
    pub fn dual_surround(&self, x: &PAElement) -> PAElement {
        let c = x.colour();
        if c.k <= 1 {
            return x.clone();
        }
        let n = self.g_order();
        let len = label_len(c);
        let mut by_theta: BTreeMap<Label, RadicalScalar> = BTreeMap::new();
        for (l, a) in x.terms() {
            let t: Label = l.iter().map(|&y| self.action.unpair(y).1).collect();
            *by_theta.entry(t).or_default() += a;
        }
        let s = RadicalScalar::from_frac(1, (n as i64).pow(len as u32));
        let mut out = PAElement::zero(c);
        for (t, a) in by_theta {
            if a.is_zero() {
                continue;
            }
            let a = &a * &s;
            for ys in (0..len).map(|_| 0..n).multi_cartesian_product() {
                let l = ys.iter().zip(&t).map(|(&y, &th)| self.action.pair(y, th)).collect();
                out.add_term(l, a.clone());
            }
        }
        out
    }

    /// `Φ_k(ΘS(ḡ)) = |Θ|^{−⌊k/2⌋}(√|Θ|)^{1−⌈k/2⌉} U(ḡ)`; `Φ` is the identity on
    /// colours `0±`.
    pub fn phi(&self, x: &PAElement) -> Result<PAElement, CrossedError> {
        let c = x.colour();
        if c.k == 0 {
            return Ok(x.clone());
        }
        let coords = if c.k == 1 {
            // ΘS() = |Θ|·1.
            BTreeMap::from([(vec![], &x.scalar_value() * &self.theta_pow_half(-2))])
        } else {
            self.theta_coords(x)?
        };
        let s = self.theta_pow_half(-2 * (c.k / 2) as i64 + 1 - c.k.div_ceil(2) as i64);
        let mut out = PAElement::zero(c);
        for (g, a) in coords {
            out.add_scaled(&self.u(c, &g), &(&a * &s));
        }
        Ok(out)
    }

    /// `S(ḡ)` of `P(G)` viewed in `P(G⋊Θ)` along `g ↦ (g, f)`.
    pub fn embed(&self, x: &PAElement) -> PAElement {
        x.map_labels(x.colour(), |g| g.iter().map(|&y| self.action.pair(y, 0)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

    fn z3() -> CrossedProduct {
        CrossedProduct::new(GroupAction::cyclic_inversion(3))
    }

    #[test]
    fn orbit_representatives() {
        let cp = z3();
        assert_eq!(cp.orbit_reps(Colour::new(2)), vec![vec![0], vec![1]]);
        assert_eq!(
            cp.orbit_reps(Colour::new(3)),
            vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1], vec![1, 2]]
        );
        assert_eq!(cp.orbit_reps(Colour::new(4)).len(), 14);
    }

    #[test]
    fn trivial_theta_has_singleton_orbits() {
        let cp = CrossedProduct::new(GroupAction::trivial(FiniteGroup::cyclic(3)));
        assert_eq!(cp.orbit_reps(Colour::new(3)).len(), 9);
        let x = PAElement::basis(Colour::new(3), vec![1, 2]);
        assert_eq!(cp.theta_s(Colour::new(3), &[1, 2]), x);
    }

    #[test]
    fn theta_product_example() {
        // ΘS(1)·ΘS(1) = ΘS(2) + ΘS(0) on ℤ₃ ⋊ ℤ₂.
        let cp = z3();
        let c = Colour::new(2);
        let lhs = cp.theta_multiply_basis(c, &[1], &[1]);
        let rhs = &cp.theta_s(c, &[2]) + &cp.theta_s(c, &[0]);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn q_instance() {
        let cp = z3();
        let half = RadicalScalar::from_frac(1, 2);
        let expect = PAElement::from_terms(Colour::new(2), [(vec![0], half.clone()), (vec![1], half)]);
        assert_eq!(cp.q(), expect);
    }

    #[test]
    fn surround_example() {
        let cp = z3();
        let c = Colour::new(2);
        let x = PAElement::basis(c, vec![cp.action().pair(1, 0)]);
        let quarter = RadicalScalar::from_frac(1, 4);
        let expect = PAElement::from_terms(
            c,
            [(1, 0), (1, 1), (2, 0), (2, 1)].map(|(g, t)| (vec![cp.action().pair(g, t)], quarter.clone())),
        );
        assert_eq!(cp.surround(&x), expect);
    }

    #[test]
    fn u_has_four_terms_at_colour_two() {
        let cp = z3();
        let u = cp.u(Colour::new(2), &[1]);
        assert_eq!(u.len(), 4);
        assert!(u.terms().all(|(_, a)| a.is_one()));
    }

    #[test]
    fn u_coords_recover_basis() {
        let cp = z3();
        for k in 1..=3 {
            let c = Colour::new(k);
            for g in cp.orbit_reps(c) {
                let coords = cp.u_coords(&cp.u(c, &g));
                assert_eq!(coords, BTreeMap::from([(g, RadicalScalar::one())]));
            }
        }
        let mixed = &cp.u(Colour::new(3), &[0, 1]) + &cp.u(Colour::new(3), &[2, 1]).scale(&RadicalScalar::from_int(3));
        let coords = cp.u_coords(&mixed);
        assert_eq!(coords[&vec![0, 1]], RadicalScalar::one());
        assert_eq!(coords[&vec![1, 2]], RadicalScalar::from_int(3));
    }

    #[test]
    fn phi_at_colour_two() {
        let cp = z3();
        let c = Colour::new(2);
        let x = cp.theta_s(c, &[1]);
        let expect = cp.u(c, &[1]).scale(&RadicalScalar::from_frac(1, 2));
        assert_eq!(cp.phi(&x).unwrap(), expect);
        assert!(cp.phi(&PAElement::basis(c, vec![1])).is_err());
    }

    #[test]
    fn r_is_scaled_q() {
        let cp = z3();
        let s = RadicalScalar::pow_half(6, 1).unwrap() * RadicalScalar::from_frac(1, 3);
        assert_eq!(cp.r(), cp.q().scale(&s));
        assert_eq!(&s * &s, RadicalScalar::from_frac(2, 3));
    }
}
