use rand::seq::SliceRandom;
use rand::Rng;

use super::{Colour, Generator, Sign, TangleExpr};

/// Generators whose external colour is `outer` and whose discs stay within
/// `max_colour`.
fn generators_with_outer(outer: Colour, max_colour: usize) -> Vec<Generator> {
    let mut out = vec![Generator::Identity(outer), Generator::Multiply(outer)];
    if outer.k == 0 {
        out.push(Generator::Unit(if outer.minus { Sign::Minus } else { Sign::Plus }));
        if !outer.minus && max_colour >= 1 {
            out.push(Generator::Expectation(0));
        }
        return out;
    }
    let k = outer.k;
    if k < max_colour {
        out.push(Generator::Expectation(k));
    }
    out.push(Generator::Inclusion(k - 1));
    out.push(Generator::LeftExpectation(k));
    if k >= 2 {
        out.push(Generator::Jones(k));
    }
    out
}

/// Random generator tree with external colour `outer`, disc colours at most
/// `max_colour` and depth at most `depth`.
pub fn random_expr_with_outer<R: Rng + ?Sized>(
    rng: &mut R,
    outer: Colour,
    max_colour: usize,
    depth: usize,
) -> TangleExpr {
    let choices = generators_with_outer(outer, max_colour);
    let g = *choices.choose(rng).expect("at least the identity");
    let mut expr = TangleExpr::gen(g);
    if depth > 1 {
        let slots = g.slots();
        for j in (1..=slots.len()).rev() {
            if rng.gen_bool(0.6) {
                let sub = random_expr_with_outer(rng, slots[j - 1], max_colour, depth - 1);
                expr = TangleExpr::compose(expr, j, sub);
            }
        }
    }
    let b = expr.arity();
    if b > 1 && rng.gen_bool(0.25) {
        let mut sigma: Vec<usize> = (1..=b).collect();
        sigma.shuffle(rng);
        expr = TangleExpr::renumber(sigma, expr);
    }
    expr
}

/// Random generator tree with a random external colour in `1..=max_colour`.
pub fn random_expr<R: Rng + ?Sized>(rng: &mut R, max_colour: usize, depth: usize) -> TangleExpr {
    let k = rng.gen_range(1..=max_colour);
    random_expr_with_outer(rng, Colour::new(k), max_colour, depth)
}

/// A pair `(T, i, T̃)` with `T̃` fitting disc `i` of `T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComposablePair {
    pub outer: TangleExpr,
    pub slot: usize,
    pub inner: TangleExpr,
}

impl ComposablePair {
    pub fn composite(&self) -> TangleExpr {
        TangleExpr::compose(self.outer.clone(), self.slot, self.inner.clone())
    }
}

/// Samples a composable pair with every colour at most `max_colour` and
/// each tree of depth at most `depth`.
pub fn random_pair<R: Rng + ?Sized>(rng: &mut R, max_colour: usize, depth: usize) -> ComposablePair {
    loop {
        let outer = random_expr(rng, max_colour, depth);
        let slots = outer.slots();
        if slots.is_empty() {
            continue;
        }
        let slot = rng.gen_range(1..=slots.len());
        let inner = random_expr_with_outer(rng, slots[slot - 1], max_colour, depth);
        return ComposablePair { outer, slot, inner };
    }
}
