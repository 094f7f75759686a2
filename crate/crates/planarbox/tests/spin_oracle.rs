mod common;

use common::Spin;
use itertools::Itertools;
use planarbox::algebra::{GroupPlanarAlgebra, PAElement};
use planarbox::group::FiniteGroup;
use planarbox::tangle::random_expr;
use planarbox::tangle::{Colour, Generator, TangleExpr};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

struct Harness {
    p: GroupPlanarAlgebra,
    spin: Spin,
    lambda: Vec<f64>,
}

impl Harness {
    fn new(g: FiniteGroup, kmax: usize) -> Self {
        let p = GroupPlanarAlgebra::new(g.clone());
        let spin = Spin::new(&g);
        let mut lambda = vec![1.0];
        for k in 1..=kmax {
            lambda.push(spin.fit_lambda(&p, k));
        }
        Harness { p, spin, lambda }
    }

    fn psi(&self, x: &PAElement) -> Vec<f64> {
        self.spin.tensor(x, self.lambda[x.colour().k])
    }

    /// Compares `Ψ(Z_T(x))` with the state sum of `T` on `Ψ(x)`.
    fn agrees(&self, expr: &TangleExpr, inputs: &[PAElement]) -> bool {
        let t = expr.realize().unwrap();
        let lhs = self.psi(&self.p.evaluate(expr, inputs).unwrap());
        let tensors: Vec<_> = inputs.iter().map(|x| self.psi(x)).collect();
        let rhs = self.spin.evaluate(&t, &tensors);
        Spin::close(&lhs, &rhs)
    }
}

fn generators(kmax: usize) -> Vec<Generator> {
    let mut out = Vec::new();
    for k in 1..=kmax {
        let c = Colour::new(k);
        out.extend([Generator::Identity(c), Generator::Multiply(c)]);
        if k < kmax {
            out.push(Generator::Expectation(k));
            out.push(Generator::Inclusion(k));
        }
        if k >= 2 {
            out.push(Generator::LeftExpectation(k));
            out.push(Generator::Jones(k));
        }
    }
    out
}

fn check_generators(g: FiniteGroup, kmax: usize, max_tuples: usize) {
    let h = Harness::new(g, kmax);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for gen in generators(kmax) {
        let expr = TangleExpr::gen(gen);
        assert!(Spin::supports(&expr.realize().unwrap()), "{gen}");
        let bases: Vec<Vec<PAElement>> = gen.slots().iter().map(|c| h.p.basis(*c)).collect();
        let mut tuples: Vec<Vec<PAElement>> = bases.iter().multi_cartesian_product().map(|t| t.into_iter().cloned().collect()).collect();
        if tuples.len() > max_tuples {
            tuples.shuffle(&mut rng);
            tuples.truncate(max_tuples);
        }
        for inputs in tuples {
            assert!(h.agrees(&expr, &inputs), "{gen} on {inputs:?}");
        }
    }
}

#[test]
fn generator_actions_match_state_sum_on_z3() {
    check_generators(FiniteGroup::cyclic(3), 4, 400);
}

#[test]
fn generator_actions_match_state_sum_on_s3() {
    check_generators(FiniteGroup::symmetric3(), 3, 300);
}

#[test]
fn generator_actions_match_state_sum_on_z4() {
    check_generators(FiniteGroup::cyclic(4), 3, 300);
}

#[test]
fn fitted_scales_are_powers_of_the_order() {
    for g in [FiniteGroup::cyclic(3), FiniteGroup::symmetric3()] {
        let n = g.order() as f64;
        let h = Harness::new(g, 3);
        for k in 1..=3 {
            let e = h.lambda[k].ln() / n.ln();
            assert!((4.0 * e - (4.0 * e).round()).abs() < 1e-9, "k={k}: exponent {e}");
        }
    }
}

#[test]
fn random_trees_match_state_sum() {
    for (g, kmax) in [(FiniteGroup::cyclic(3), 3), (FiniteGroup::symmetric3(), 3)] {
        let h = Harness::new(g, kmax);
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let mut checked = 0;
        while checked < 60 {
            let e = random_expr(&mut rng, kmax, 3);
            let t = e.realize().unwrap();
            if !Spin::supports(&t) || t.discs().len() > 4 {
                continue;
            }
            let inputs: Vec<PAElement> = e
                .slots()
                .iter()
                .map(|c| {
                    let basis = h.p.basis(*c);
                    let a = basis.choose(&mut rng).unwrap();
                    let b = basis.choose(&mut rng).unwrap();
                    a + b
                })
                .collect();
            assert!(h.agrees(&e, &inputs), "{e}");
            checked += 1;
        }
    }
}

#[test]
fn state_sum_rejects_inclusion_without_inverse() {
    // I³₂ S(g) = |G|^{-1/2} Σ_u S(g, u) without the inverse disagrees with the
    // diagram whenever g² ≠ e.
    let h = Harness::new(FiniteGroup::cyclic(3), 3);
    let t = Generator::Inclusion(2).tangle().unwrap();
    let x = PAElement::basis(Colour::new(2), vec![1]);
    let rhs = h.spin.evaluate(&t, &[h.psi(&x)]);
    let naive = PAElement::from_terms(Colour::new(3), (0..3).map(|u| (vec![1, u], h.p.root_pow(-1))));
    assert!(!Spin::close(&h.psi(&naive), &rhs));
    let fixed = h.p.act(&Generator::Inclusion(2), &[x]).unwrap();
    assert!(Spin::close(&h.psi(&fixed), &rhs));
}

#[test]
fn state_sum_rejects_wrong_star_and_jones() {
    let h = Harness::new(FiniteGroup::symmetric3(), 3);
    let t = Generator::Jones(3).tangle().unwrap();
    let rhs = h.spin.evaluate(&t, &[]);
    let jones = h.p.jones(3).scale(&h.p.delta());
    assert!(Spin::close(&h.psi(&jones), &rhs));
    let wrong = PAElement::basis(Colour::new(3), vec![0, 1]).scale(&h.p.delta());
    assert!(!Spin::close(&h.psi(&wrong), &rhs));
}
