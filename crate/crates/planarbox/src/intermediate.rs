//! The intermediate planar algebra `P′`: spaces `P′_k = range(F_k)` inside an
//! ambient group planar algebra and the action `Z′_T = α(T)·F_{k₀}∘Z_T`.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::algebra::{AlgebraError, GroupPlanarAlgebra, PAElement};
use crate::crossed::CrossedProduct;
use crate::linalg::Echelon;
use crate::scalar::RadicalScalar;
use crate::tangle::{Colour, Generator, TangleError, TangleExpr};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IntermediateError {
    #[error("surround map is not idempotent at colour {0}")]
    NotIdempotent(Colour),
    #[error("input {index} of colour {colour} is not in P′")]
    NotInRange { index: usize, colour: Colour },
    #[error("colour {0} exceeds the bound of this algebra")]
    ColourTooLarge(Colour),
    #[error("index data inconsistent: [M:N] = {mn} but [M:Q]·[Q:N] = {mq}·{qn}")]
    Index { mn: u64, mq: u64, qn: u64 },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Tangle(#[from] TangleError),
}

/// An ambient planar algebra together with a surround family and index data.
pub trait AlgebraInstance: Sync {
    fn name(&self) -> String;
    /// The ambient `P^{(N⊂M)}`.
    fn algebra(&self) -> &GroupPlanarAlgebra;
    /// The biprojection in the ambient 2-box space.
    fn biprojection(&self) -> PAElement;
    /// `F_k`.
    fn surround(&self, x: &PAElement) -> PAElement;
    /// Surround map built from `r`, where the instance has one.
    fn dual_surround(&self, _x: &PAElement) -> Option<PAElement> {
        None
    }
    /// `[M:Q]`.
    fn index_mq(&self) -> u64;
    /// `[Q:N]`.
    fn index_qn(&self) -> u64;
    /// `[M:N]`.
    fn index_mn(&self) -> u64;
}

impl AlgebraInstance for CrossedProduct {
    fn name(&self) -> String {
        format!(
            "G of order {} with Θ of order {}",
            self.g_order(),
            self.theta_order()
        )
    }

    fn algebra(&self) -> &GroupPlanarAlgebra {
        self.big()
    }

    fn biprojection(&self) -> PAElement {
        self.q()
    }

    fn surround(&self, x: &PAElement) -> PAElement {
        CrossedProduct::surround(self, x)
    }

    fn dual_surround(&self, x: &PAElement) -> Option<PAElement> {
        Some(CrossedProduct::dual_surround(self, x))
    }

    fn index_mq(&self) -> u64 {
        self.theta_order() as u64
    }

    fn index_qn(&self) -> u64 {
        self.g_order() as u64
    }

    fn index_mn(&self) -> u64 {
        self.big().order() as u64
    }
}

/// All colours up to `kmax`, with both shadings of colour zero.
pub fn colours(kmax: usize) -> Vec<Colour> {
    let mut out = vec![Colour::ZERO_PLUS, Colour::ZERO_MINUS];
    out.extend((1..=kmax).map(Colour::new));
    out
}

pub struct IntermediateAlgebra<I: AlgebraInstance> {
    inst: I,
    kmax: usize,
    bases: BTreeMap<Colour, Vec<PAElement>>,
}

impl<I: AlgebraInstance> IntermediateAlgebra<I> {
    /// Builds bases of `P′_k = range(F_k)` for `k ≤ kmax` by exact row
    /// reduction of `F_k` applied to the ambient basis. Checks `F∘F = F` on
    /// every basis element.
    pub fn build(inst: I, kmax: usize) -> Result<Self, IntermediateError> {
        let (mq, qn, mn) = (inst.index_mq(), inst.index_qn(), inst.index_mn());
        if mq * qn != mn {
            return Err(IntermediateError::Index { mn, mq, qn });
        }
        let mut bases = BTreeMap::new();
        for c in colours(kmax) {
            let mut ech = Echelon::new();
            let mut basis = Vec::new();
            for x in inst.algebra().basis(c) {
                let fx = inst.surround(&x);
                if inst.surround(&fx) != fx {
                    return Err(IntermediateError::NotIdempotent(c));
                }
                if ech.insert(&fx) {
                    basis.push(fx);
                }
            }
            bases.insert(c, basis);
        }
        Ok(IntermediateAlgebra { inst, kmax, bases })
    }

    pub fn instance(&self) -> &I {
        &self.inst
    }

    pub fn algebra(&self) -> &GroupPlanarAlgebra {
        self.inst.algebra()
    }

    pub fn kmax(&self) -> usize {
        self.kmax
    }

    pub fn colours(&self) -> Vec<Colour> {
        colours(self.kmax)
    }

    /// Basis of `P′_k`: the independent images `F(S(ḡ))`, in label order.
    pub fn basis(&self, c: Colour) -> &[PAElement] {
        self.bases.get(&c).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn dim(&self, c: Colour) -> usize {
        self.basis(c).len()
    }

    pub fn contains(&self, x: &PAElement) -> bool {
        self.inst.surround(x) == *x
    }

    fn mq_pow_half(&self, p: i64) -> RadicalScalar {
        RadicalScalar::pow_half(self.inst.index_mq(), p).expect("index is positive")
    }

    fn qn_pow_half(&self, p: i64) -> RadicalScalar {
        RadicalScalar::pow_half(self.inst.index_qn(), p).expect("index is positive")
    }

    /// `α(T)` with base `[M:Q]`.
    pub fn alpha(&self, expr: &TangleExpr) -> Result<RadicalScalar, IntermediateError> {
        Ok(expr.realize()?.alpha(self.inst.index_mq()))
    }

    /// `Z′_T(x₁ ⊗ ⋯ ⊗ x_b) = α(T)·F_{k₀}(Z_T(x₁ ⊗ ⋯ ⊗ x_b))` for inputs in `P′`.
    pub fn z_prime(&self, expr: &TangleExpr, inputs: &[PAElement]) -> Result<PAElement, IntermediateError> {
        for (index, x) in inputs.iter().enumerate() {
            if x.colour().k > self.kmax {
                return Err(IntermediateError::ColourTooLarge(x.colour()));
            }
            if !self.contains(x) {
                return Err(IntermediateError::NotInRange {
                    index,
                    colour: x.colour(),
                });
            }
        }
        let alpha = self.alpha(expr)?;
        self.z_prime_with(expr, &alpha, inputs)
    }

    /// [`IntermediateAlgebra::z_prime`] with a precomputed `α` and no
    /// membership checks.
    pub fn z_prime_with(
        &self,
        expr: &TangleExpr,
        alpha: &RadicalScalar,
        inputs: &[PAElement],
    ) -> Result<PAElement, IntermediateError> {
        let y = self.algebra().evaluate(expr, inputs)?;
        Ok(self.inst.surround(&y).scale(alpha))
    }

    pub fn z_prime_gen(&self, gen: Generator, inputs: &[PAElement]) -> Result<PAElement, IntermediateError> {
        let alpha = gen.tangle()?.alpha(self.inst.index_mq());
        let y = self.algebra().act(&gen, inputs)?;
        Ok(self.inst.surround(&y).scale(&alpha))
    }

    /// Product in `P′_k`: `Z′_{M_k}(x ⊗ y)`.
    pub fn multiply(&self, x: &PAElement, y: &PAElement) -> Result<PAElement, IntermediateError> {
        self.z_prime_gen(Generator::Multiply(x.colour()), &[x.clone(), y.clone()])
    }

    pub fn star(&self, x: &PAElement) -> PAElement {
        self.algebra().star(x)
    }

    /// Unit of `P′_k`: `Z′` of the tangle with no discs, built from `1^{0±}`
    /// by inclusions.
    pub fn unit(&self, c: Colour) -> Result<PAElement, IntermediateError> {
        let mut x = PAElement::scalar(Colour::ZERO_PLUS, RadicalScalar::one());
        if c.k == 0 {
            return Ok(PAElement::scalar(c, RadicalScalar::one()));
        }
        for k in 0..c.k {
            x = self.z_prime_gen(Generator::Inclusion(k), &[x])?;
        }
        Ok(x)
    }

    /// `e^Q_{k−1} = [Q:N]^{−1/2}·Z′_{ℰ^k}(1)` in `P′_k`.
    pub fn jones(&self, k: usize) -> Result<PAElement, IntermediateError> {
        Ok(self.z_prime_gen(Generator::Jones(k), &[])?.scale(&self.qn_pow_half(-1)))
    }

    /// The Jones projection `e_i` (`1 ≤ i ≤ k−1`) of `P′_k`, carried up from
    /// `P′_{i+1}` by inclusions.
    pub fn jones_at(&self, i: usize, k: usize) -> Result<PAElement, IntermediateError> {
        assert!(1 <= i && i < k);
        let mut x = self.jones(i + 1)?;
        for j in i + 1..k {
            x = self.z_prime_gen(Generator::Inclusion(j), &[x])?;
        }
        Ok(x)
    }

    /// `tr′ = [M:Q]^{⌊k/2⌋}·tr` on `P′_k`.
    pub fn trace(&self, x: &PAElement) -> RadicalScalar {
        let n = (x.colour().k / 2) as i64;
        self.mq_pow_half(2 * n) * self.algebra().trace(x)
    }

    /// `tr′` computed inside `P′`: the closure by `Z′` of right conditional
    /// expectation tangles, divided by the modulus `√[Q:N]` at each step.
    pub fn trace_planar(&self, x: &PAElement) -> Result<RadicalScalar, IntermediateError> {
        let mut y = x.clone();
        let k = x.colour().k;
        for j in (1..k).rev() {
            y = self.z_prime_gen(Generator::Expectation(j), &[y])?;
        }
        Ok(y.scalar_value() * self.qn_pow_half(-(k.saturating_sub(1) as i64)))
    }

    /// `⟨x, y⟩′ = tr′(y*·x)` with the `P′` product.
    pub fn inner(&self, x: &PAElement, y: &PAElement) -> Result<RadicalScalar, IntermediateError> {
        Ok(self.trace(&self.multiply(&self.star(y), x)?))
    }

    /// `[Q:N]^{−1/2}·Z′_{E^k_{k+1}}`: `P′_{k+1} → P′_k`.
    pub fn expectation(&self, k: usize, x: &PAElement) -> Result<PAElement, IntermediateError> {
        Ok(self.z_prime_gen(Generator::Expectation(k), &[x.clone()])?.scale(&self.qn_pow_half(-1)))
    }

    /// `[Q:N]^{−1/2}·Z′_{(E′)^k_k}` on `P′_k`.
    pub fn left_expectation(&self, x: &PAElement) -> Result<PAElement, IntermediateError> {
        let k = x.colour().k;
        Ok(self
            .z_prime_gen(Generator::LeftExpectation(k), &[x.clone()])?
            .scale(&self.qn_pow_half(-1)))
    }

    /// `Z′_{I^{k+1}_k}`.
    pub fn include(&self, x: &PAElement) -> Result<PAElement, IntermediateError> {
        self.z_prime_gen(Generator::Inclusion(x.colour().k), &[x.clone()])
    }
}
