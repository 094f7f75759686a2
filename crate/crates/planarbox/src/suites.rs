//! Verification suites. Each suite checks identities exactly and appends one
//! record per assertion to a [`Report`].

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{label_len, GroupPlanarAlgebra, PAElement};
use crate::crossed::CrossedProduct;
use crate::intermediate::{AlgebraInstance, IntermediateAlgebra, IntermediateError};
use crate::linalg::{is_positive_definite, rank};
use crate::par::{self, Exec};
use crate::report::Report;
use crate::scalar::RadicalScalar;
use crate::tangle::{random_expr, random_pair, Colour, ComposablePair, Generator, Sign, TangleExpr};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Suite {
    BaseAlgebra,
    CrossedProduct,
    Biprojection,
    TheoremMain,
    Axioms,
    Jones,
    Trace,
    Dual,
    All,
}

impl Suite {
    pub const EACH: [Suite; 8] = [
        Suite::BaseAlgebra,
        Suite::CrossedProduct,
        Suite::Biprojection,
        Suite::TheoremMain,
        Suite::Axioms,
        Suite::Jones,
        Suite::Trace,
        Suite::Dual,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::BaseAlgebra => "base-algebra",
            Suite::CrossedProduct => "crossed-product",
            Suite::Biprojection => "biprojection",
            Suite::TheoremMain => "theorem-main",
            Suite::Axioms => "axioms",
            Suite::Jones => "jones",
            Suite::Trace => "trace",
            Suite::Dual => "dual",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown suite '{0}'")]
pub struct UnknownSuite(pub String);

impl FromStr for Suite {
    type Err = UnknownSuite;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| UnknownSuite(s.to_string()))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteConfig {
    pub kmax: usize,
    pub samples: usize,
    pub seed: u64,
    /// Sampled tangle pairs are redrawn until their basis input tuples number
    /// at most this many; every such tuple is then checked.
    pub max_tuples: usize,
    pub exec: Exec,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            kmax: 4,
            samples: 200,
            seed: 7,
            max_tuples: 64,
            exec: Exec::Parallel,
        }
    }
}

/// Runs one suite (or all) on a crossed-product instance.
pub fn run(suite: Suite, cp: &CrossedProduct, cfg: &SuiteConfig) -> Result<Report, IntermediateError> {
    let alg = IntermediateAlgebra::build(cp.clone(), cfg.kmax)?;
    let mut report = Report {
        seed: cfg.seed,
        instance: cp.name(),
        kmax: cfg.kmax,
        samples: cfg.samples,
        ..Report::default()
    };
    let list: Vec<Suite> = if suite == Suite::All { Suite::EACH.to_vec() } else { vec![suite] };
    for s in list {
        let part = match s {
            Suite::BaseAlgebra => base_algebra(alg.algebra(), cfg),
            Suite::CrossedProduct => crossed_product(&alg, cfg)?,
            Suite::Biprojection => biprojection(&alg, cfg),
            Suite::TheoremMain => theorem_main(&alg, cfg)?,
            Suite::Axioms => axioms(&alg, cfg)?,
            Suite::Jones => jones(&alg, cfg)?,
            Suite::Trace => trace(&alg, cfg)?,
            Suite::Dual => dual(&alg, cfg),
            Suite::All => unreachable!(),
        };
        report.extend(part);
    }
    report.finish();
    Ok(report)
}

fn count_failures<T: Sync>(exec: Exec, items: &[T], f: impl Fn(&T) -> usize + Sync + Send) -> usize {
    par::map(exec, items, f).into_iter().sum()
}

/// Orbit count of `Θ` on `G^{k−1}` by Burnside's lemma.
pub fn burnside_count(cp: &CrossedProduct, k: usize) -> usize {
    let a = cp.action();
    let len = k.saturating_sub(1) as u32;
    let total: usize = (0..cp.theta_order())
        .map(|t| (0..cp.g_order()).filter(|&x| a.apply(t, x) == x).count().pow(len))
        .sum();
    total / cp.theta_order()
}

fn failures_note(failed: usize, total: usize) -> String {
    format!("{failed} failing of {total}")
}

// ---------------------------------------------------------------- base algebra

/// Exhaustive checks on the ambient `P(H)` for colours `2..=kmax`.
pub fn base_algebra(p: &GroupPlanarAlgebra, cfg: &SuiteConfig) -> Report {
    const S: &str = "base-algebra";
    let mut r = Report::default();
    let delta = p.delta();
    for k in 1..=cfg.kmax {
        let c = Colour::new(k);
        let labels = p.labels(c);
        let basis = p.basis(c);
        let n = labels.len();

        if k >= 2 {
            let bad = count_failures(cfg.exec, &labels, |g| {
                let mut bad = 0;
                for h in &labels {
                    let gh = p.multiply_basis(k, g, h);
                    for l in &labels {
                        let left = gh.as_ref().and_then(|(gh, a)| p.multiply_basis(k, gh, l).map(|(x, b)| (x, a + b)));
                        let right = p.multiply_basis(k, h, l).and_then(|(hl, a)| p.multiply_basis(k, g, &hl).map(|(x, b)| (x, a + b)));
                        bad += usize::from(left != right);
                    }
                }
                bad
            });
            r.push(S, format!("associativity k={k}"), failures_note(bad, n * n * n), failures_note(0, n * n * n), bad == 0);
        }

        let one = p.unit(c);
        let bad = count_failures(cfg.exec, &basis, |x| {
            usize::from(p.multiply(&one, x).unwrap() != *x) + usize::from(p.multiply(x, &one).unwrap() != *x)
        });
        r.push(S, format!("unit k={k}"), failures_note(bad, 2 * n), failures_note(0, 2 * n), bad == 0);

        r.check(S, format!("star of unit k={k}"), &p.star(&one), &one);
        let bad = count_failures(cfg.exec, &basis, |x| {
            let mut bad = usize::from(p.star(&p.star(x)) != *x);
            for y in &basis {
                let lhs = p.star(&p.multiply(x, y).unwrap());
                let rhs = p.multiply(&p.star(y), &p.star(x)).unwrap();
                bad += usize::from(lhs != rhs);
            }
            bad
        });
        r.push(S, format!("star involutive and antimultiplicative k={k}"), failures_note(bad, n * n + n), failures_note(0, n * n + n), bad == 0);

        let bad = count_failures(cfg.exec, &basis, |x| {
            basis
                .iter()
                .filter(|y| {
                    let v = p.inner(x, y).unwrap();
                    let expect = if x == *y { RadicalScalar::one() } else { RadicalScalar::zero() };
                    v != expect
                })
                .count()
        });
        r.push(S, format!("gram matrix is the identity k={k}"), failures_note(bad, n * n), failures_note(0, n * n), bad == 0);

        let bad = count_failures(cfg.exec, &basis, |x| {
            basis
                .iter()
                .filter(|y| p.trace(&p.multiply(x, y).unwrap()) != p.trace(&p.multiply(y, x).unwrap()))
                .count()
        });
        r.push(S, format!("trace is tracial k={k}"), failures_note(bad, n * n), failures_note(0, n * n), bad == 0);

        if k < cfg.kmax {
            let bad = count_failures(cfg.exec, &basis, |x| {
                let up = p.act(&Generator::Inclusion(k), &[x.clone()]).unwrap();
                usize::from(p.trace(&up) != p.trace(x))
            });
            r.push(S, format!("inclusion preserves trace k={k}"), failures_note(bad, n), failures_note(0, n), bad == 0);
            let inv = delta.invert().unwrap();
            let big = p.basis(Colour::new(k + 1));
            let bad = count_failures(cfg.exec, &big, |x| {
                let down = p.act(&Generator::Expectation(k), &[x.clone()]).unwrap().scale(&inv);
                usize::from(p.trace(&down) != p.trace(x))
            });
            r.push(S, format!("markov: expectation preserves trace k={k}"), failures_note(bad, big.len()), failures_note(0, big.len()), bad == 0);
        }

        if k >= 2 {
            let f = p.jones(k);
            let inv2 = RadicalScalar::from_frac(1, p.order() as i64);
            r.check(S, format!("jones idempotent k={k}"), &p.multiply(&f, &f).unwrap(), &f);
            r.check(S, format!("jones self-adjoint k={k}"), &p.star(&f), &f);
            r.check(S, format!("jones trace k={k}"), &p.trace(&f), &inv2);
            let down = p.act(&Generator::Expectation(k - 1), &[f.clone()]).unwrap();
            let below = Colour::new(k - 1);
            r.check(S, format!("jones expectation k={k}"), &down, &p.unit(below).scale(&delta.invert().unwrap()));
            tl_relations(&mut r, S, k, &inv2, |i| {
                let mut x = p.jones(i + 1);
                for j in i + 1..k {
                    x = p.act(&Generator::Inclusion(j), &[x]).unwrap();
                }
                x
            }, |x, y| p.multiply(x, y).unwrap());
        }
    }
    r
}

/// Temperley–Lieb relations among `e_1, …, e_{k−1}` of one colour.
fn tl_relations(
    r: &mut Report,
    suite: &str,
    k: usize,
    tau: &RadicalScalar,
    e: impl Fn(usize) -> PAElement,
    mul: impl Fn(&PAElement, &PAElement) -> PAElement,
) {
    let es: Vec<PAElement> = (1..k).map(&e).collect();
    for i in 0..es.len() {
        for j in 0..es.len() {
            if i == j {
                continue;
            }
            let (a, b) = (&es[i], &es[j]);
            if i.abs_diff(j) == 1 {
                let lhs = mul(&mul(a, b), a);
                r.check(suite, format!("e{} e{} e{} = tau e{} in colour {k}", i + 1, j + 1, i + 1, i + 1), &lhs, &a.scale(tau));
            } else if i < j {
                r.check(suite, format!("e{} e{} = e{} e{} in colour {k}", i + 1, j + 1, j + 1, i + 1), &mul(a, b), &mul(b, a));
            }
        }
    }
}

// ------------------------------------------------------------- crossed product

fn generators_up_to(kmax: usize) -> Vec<Generator> {
    let mut out = vec![
        Generator::Unit(Sign::Plus),
        Generator::Unit(Sign::Minus),
        Generator::Identity(Colour::ZERO_PLUS),
        Generator::Identity(Colour::ZERO_MINUS),
        Generator::Multiply(Colour::ZERO_PLUS),
        Generator::Multiply(Colour::ZERO_MINUS),
    ];
    for k in 0..=kmax {
        if k >= 1 {
            let c = Colour::new(k);
            out.extend([Generator::Identity(c), Generator::Multiply(c), Generator::LeftExpectation(k)]);
        }
        if k >= 2 {
            out.push(Generator::Jones(k));
        }
        if k < kmax {
            out.extend([Generator::Expectation(k), Generator::Inclusion(k)]);
        }
    }
    out
}

fn theta_basis(cp: &CrossedProduct, c: Colour) -> Vec<PAElement> {
    if c.k == 0 {
        vec![PAElement::scalar(c, RadicalScalar::one())]
    } else {
        cp.theta_basis(c)
    }
}

pub fn crossed_product<I>(alg: &IntermediateAlgebra<I>, cfg: &SuiteConfig) -> Result<Report, IntermediateError>
where
    I: AlgebraInstance + AsRef<CrossedProduct>,
{
    const S: &str = "crossed-product";
    let cp: &CrossedProduct = alg.instance().as_ref();
    let base = cp.base();
    let big = cp.big();
    let mut r = Report::default();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0xc0ffee);

    for k in 2..=cfg.kmax {
        let c = Colour::new(k);
        let reps = cp.orbit_reps(c);
        r.check(S, format!("orbit count k={k}"), &reps.len(), &burnside_count(cp, k));
        let tb = cp.theta_basis(c);
        let bad = count_failures(cfg.exec, &(0..tb.len()).collect_vec(), |&i| {
            let mut bad = usize::from(!cp.is_invariant(&tb[i]));
            for j in 0..tb.len() {
                let v = base.inner(&tb[i], &tb[j]).unwrap();
                let expect = if i == j {
                    RadicalScalar::from_int((cp.theta_order() * cp.stabilizer_order(&reps[i])) as i64)
                } else {
                    RadicalScalar::zero()
                };
                bad += usize::from(v != expect);
            }
            bad
        });
        r.push(S, format!("theta basis orthogonal k={k}"), failures_note(bad, tb.len() * tb.len()), failures_note(0, tb.len() * tb.len()), bad == 0);

        // Closed form for ΘS products against multiplication in P(G).
        let pairs: Vec<(usize, usize)> = (0..reps.len()).cartesian_product(0..reps.len()).collect();
        let bad = count_failures(cfg.exec, &pairs, |&(i, j)| {
            let closed = cp.theta_multiply_basis(c, &reps[i], &reps[j]);
            usize::from(closed != base.multiply(&tb[i], &tb[j]).unwrap())
        });
        r.push(S, format!("theta product closed form k={k}"), failures_note(bad, pairs.len()), failures_note(0, pairs.len()), bad == 0);
        if bad == 0 {
            r.constant(format!("theta product constant k={k}"), base.root_pow(k.div_ceil(2) as i64 - 1));
        }

        // Closed form for U products against multiplication in P(G⋊Θ).
        let labels = base.labels(c);
        let mut upairs: Vec<(usize, usize)> = (0..labels.len()).cartesian_product(0..labels.len()).collect();
        let want = cfg.samples.max(200);
        if upairs.len() > want {
            upairs.shuffle(&mut rng);
            upairs.truncate(want);
        }
        let bad = count_failures(cfg.exec, &upairs, |&(i, j)| {
            let (g, h) = (&labels[i], &labels[j]);
            let expanded = big.multiply(&cp.u(c, g), &cp.u(c, h)).unwrap();
            usize::from(cp.u_multiply_basis(c, g, h) != expanded)
        });
        r.push(S, format!("U product closed form k={k}"), failures_note(bad, upairs.len()), failures_note(0, upairs.len()), bad == 0);
        r.constant(
            format!("U product constant k={k}"),
            if bad == 0 { cp.u_constant(k).to_string() } else { "closed form disagrees".into() },
        );
        if k == 2 {
            adjudicate_u_two(&mut r, cp, &upairs, &labels);
        }

        // Φ_k is a bijection onto P′_k.
        let images: Vec<PAElement> = tb.iter().map(|x| cp.phi(x)).collect::<Result<_, _>>().expect("theta basis is invariant");
        let inside = images.iter().all(|y| alg.contains(y));
        r.push(S, format!("phi lands in P′ k={k}"), inside, true, inside);
        let rk = rank(&images);
        r.check(S, format!("phi rank k={k}"), &rk, &alg.dim(c));
        r.check(S, format!("phi bijective k={k}"), &rk, &tb.len());
    }

    // Intertwining Φ∘Z = Z′∘Φ on every generator.
    let gens = generators_up_to(cfg.kmax);
    let results = par::map(cfg.exec, &gens, |gen| -> Result<(usize, usize), IntermediateError> {
        let bases: Vec<Vec<PAElement>> = gen.slots().iter().map(|c| theta_basis(cp, *c)).collect();
        let mut bad = 0;
        let mut total = 0;
        for inputs in bases.iter().multi_cartesian_product() {
            let xs: Vec<PAElement> = inputs.into_iter().cloned().collect();
            let lhs = cp.phi(&base.act(gen, &xs)?).expect("invariant output");
            let phis: Vec<PAElement> = xs.iter().map(|x| cp.phi(x).expect("invariant input")).collect();
            let rhs = alg.z_prime_gen(*gen, &phis)?;
            bad += usize::from(lhs != rhs);
            total += 1;
        }
        Ok((bad, total))
    });
    for (gen, res) in gens.iter().zip(results) {
        let (bad, total) = res?;
        r.push(S, format!("phi intertwines {gen}"), failures_note(bad, total), failures_note(0, total), bad == 0);
    }

    for k in 2..=cfg.kmax {
        let f = base.jones(k);
        let lhs = cp.phi(&f).expect("jones element is invariant");
        r.check(S, format!("phi carries the jones element k={k}"), &lhs, &alg.jones(k)?);
    }
    Ok(r)
}

/// The printed `k = 2` product of `U` elements has `ΘS` on the right; compare
/// both readings with the expansion.
fn adjudicate_u_two(r: &mut Report, cp: &CrossedProduct, pairs: &[(usize, usize)], labels: &[Vec<usize>]) {
    let c = Colour::new(2);
    let grp = &cp.action().g;
    let theta = RadicalScalar::from_int(cp.theta_order() as i64);
    let (mut u_ok, mut s_ok) = (true, true);
    for &(i, j) in pairs {
        let (g, h) = (labels[i][0], labels[j][0]);
        let expanded = cp.big().multiply(&cp.u(c, &[g]), &cp.u(c, &[h])).unwrap();
        let mut with_u = PAElement::zero(c);
        let mut with_s = PAElement::zero(c);
        for t in 0..cp.theta_order() {
            let l = [grp.mul(g, cp.action().apply(t, h))];
            with_u.add_scaled(&cp.u(c, &l), &theta);
            with_s.add_scaled(&cp.embed(&cp.theta_s(c, &l)), &theta);
        }
        u_ok &= with_u == expanded;
        s_ok &= with_s == expanded;
    }
    r.push("crossed-product", "U product k=2 right-hand side is U", u_ok, true, u_ok);
    r.constant(
        "U product k=2 right-hand side",
        match (u_ok, s_ok) {
            (true, false) => "U (the ΘS reading disagrees with the expansion)",
            (true, true) => "U and ΘS both agree",
            (false, true) => "ΘS",
            (false, false) => "neither",
        },
    );
}

impl AsRef<CrossedProduct> for CrossedProduct {
    fn as_ref(&self) -> &CrossedProduct {
        self
    }
}

// ---------------------------------------------------------------- biprojection

pub fn biprojection<I>(alg: &IntermediateAlgebra<I>, cfg: &SuiteConfig) -> Report
where
    I: AlgebraInstance + AsRef<CrossedProduct>,
{
    const S: &str = "biprojection";
    let cp: &CrossedProduct = alg.instance().as_ref();
    let big = cp.big();
    let mut r = Report::default();
    let q = cp.q();
    check_projection(&mut r, big, &q, "q", RadicalScalar::from_frac(1, cp.theta_order() as i64));
    r.constant("tr(q)", big.trace(&q));

    // Conjugate copies x(e,Θ)x⁻¹ of Θ give the same report.
    let h = big.group();
    let mut seen = Vec::new();
    for x in 0..h.order() {
        let qx = q.map_labels(q.colour(), |l| vec![h.mul(h.mul(x, l[0]), h.inv(x))]);
        if seen.contains(&qx) {
            continue;
        }
        seen.push(qx.clone());
        let mut sub = Report::default();
        check_projection(&mut sub, big, &qx, "conjugate", RadicalScalar::from_frac(1, cp.theta_order() as i64));
        let ok = sub.all_passed();
        r.push(S, format!("conjugate q by element {x}"), ok, true, ok);
    }

    for k in 1..=cfg.kmax {
        let c = Colour::new(k);
        let basis = big.basis(c);
        let bad = count_failures(cfg.exec, &basis, |x| {
            let fx = cp.surround(x);
            usize::from(cp.surround(&fx) != fx)
        });
        r.push(S, format!("F idempotent k={k}"), failures_note(bad, basis.len()), failures_note(0, basis.len()), bad == 0);
        r.check(S, format!("F rank k={k}"), &alg.dim(c), &burnside_count(cp, k));
    }
    r
}

fn check_projection(r: &mut Report, p: &GroupPlanarAlgebra, q: &PAElement, name: &str, tr: RadicalScalar) {
    const S: &str = "biprojection";
    let e1 = p.jones(2);
    r.check(S, format!("{name} squared"), &p.multiply(q, q).unwrap(), q);
    r.check(S, format!("{name} self-adjoint"), &p.star(q), q);
    r.check(S, format!("{name} e1 = e1"), &p.multiply(q, &e1).unwrap(), &e1);
    r.check(S, format!("e1 {name} = e1"), &p.multiply(&e1, q).unwrap(), &e1);
    r.check(S, format!("tr({name}) = 1/[M:Q]"), &p.trace(q), &tr);
}

// ---------------------------------------------------------------- theorem main

/// Basis input tuples for the slots of an expression.
fn basis_tuples<I: AlgebraInstance>(alg: &IntermediateAlgebra<I>, slots: &[Colour]) -> Vec<Vec<PAElement>> {
    if slots.is_empty() {
        return vec![vec![]];
    }
    slots
        .iter()
        .map(|c| alg.basis(*c))
        .multi_cartesian_product()
        .map(|t| t.into_iter().cloned().collect())
        .collect()
}

fn tuple_count<I: AlgebraInstance>(alg: &IntermediateAlgebra<I>, slots: &[Colour]) -> usize {
    slots.iter().map(|c| alg.dim(*c)).product()
}

/// Draws composable pairs (colours ≤ `kmax`, depth ≤ 3) with at most
/// `max_tuples` basis input tuples.
pub fn sample_pairs<I: AlgebraInstance>(alg: &IntermediateAlgebra<I>, rng: &mut ChaCha8Rng, count: usize, max_tuples: usize) -> Vec<ComposablePair> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let p = random_pair(rng, alg.kmax(), 3);
        if tuple_count(alg, &p.composite().slots()) <= max_tuples {
            out.push(p);
        }
    }
    out
}

/// `a^{p/2}` for a positive rational `a`.
fn rational_pow_half(a: &RadicalScalar, p: i64) -> RadicalScalar {
    let q = a.as_rational().expect("rational base");
    let (n, d) = (q.numer().to_string().parse::<u64>().unwrap(), q.denom().to_string().parse::<u64>().unwrap());
    RadicalScalar::pow_half(n, p).unwrap() * RadicalScalar::pow_half(d, -p).unwrap()
}

struct PairOutcome {
    tuples: usize,
    multiplicative: bool,
    tau_form: bool,
    index_form: bool,
    shown: (String, String),
}

fn check_pair<I: AlgebraInstance>(
    alg: &IntermediateAlgebra<I>,
    pair: &ComposablePair,
    tau: &RadicalScalar,
) -> Result<PairOutcome, IntermediateError> {
    let comp = pair.composite();
    let (t, tt, tc) = (pair.outer.realize()?, pair.inner.realize()?, comp.realize()?);
    let m = alg.instance().index_mq();
    let (a, at, ac) = (t.alpha(m), tt.alpha(m), tc.alpha(m));
    let ki = t.discs()[pair.slot - 1].k as i64;
    let e = ki + tc.loops_black() as i64 - t.loops_black() as i64 - tt.loops_black() as i64;
    let tau_factor = rational_pow_half(tau, e);
    let index_factor = RadicalScalar::pow_half(m, -e).unwrap();
    let one = RadicalScalar::one();
    let p = alg.algebra();
    let start = pair.slot - 1;
    let arity = pair.inner.arity();

    let mut out = PairOutcome {
        tuples: 0,
        multiplicative: true,
        tau_form: true,
        index_form: true,
        shown: (String::new(), String::new()),
    };
    for xs in basis_tuples(alg, &comp.slots()) {
        let inner_in = &xs[start..start + arity];
        let z_inner = p.evaluate(&pair.inner, inner_in)?;
        let with = |y: PAElement| {
            let mut v = xs[..start].to_vec();
            v.push(y);
            v.extend_from_slice(&xs[start + arity..]);
            v
        };
        // Z′_{T∘T̃} against Z′_T ∘ᵢ Z′_{T̃}.
        let lhs = alg.z_prime_with(&comp, &ac, &xs)?;
        let zp_inner = alg.instance().surround(&z_inner).scale(&at);
        let rhs = alg.z_prime_with(&pair.outer, &a, &with(zp_inner))?;
        // Z_{F(T)∘F(T̃)} against Z_{F(T∘T̃)} on P′ inputs.
        let f_of_f = alg.z_prime_with(&pair.outer, &one, &with(alg.instance().surround(&z_inner)))?;
        let f_of_comp = alg.z_prime_with(&comp, &one, &xs)?;
        let ok_mult = lhs == rhs;
        let ok_tau = f_of_f == f_of_comp.scale(&tau_factor);
        let ok_index = f_of_f == f_of_comp.scale(&index_factor);
        if out.tuples == 0 || (!(ok_mult && ok_tau && ok_index) && out.multiplicative && out.tau_form && out.index_form) {
            out.shown = (lhs.to_string(), rhs.to_string());
        }
        out.multiplicative &= ok_mult;
        out.tau_form &= ok_tau;
        out.index_form &= ok_index;
        out.tuples += 1;
    }
    Ok(out)
}

pub fn theorem_main<I: AlgebraInstance>(alg: &IntermediateAlgebra<I>, cfg: &SuiteConfig) -> Result<Report, IntermediateError> {
    const S: &str = "theorem-main";
    let mut r = Report::default();
    let tau = alg.algebra().trace(&alg.instance().biprojection());
    let inv_m = RadicalScalar::from_frac(1, alg.instance().index_mq() as i64);
    r.check(S, "tau(q) = 1/[M:Q]", &tau, &inv_m);
    r.constant("tau(q)", &tau);

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let pairs = sample_pairs(alg, &mut rng, cfg.samples, cfg.max_tuples);
    let outcomes = par::map(cfg.exec, &pairs, |p| check_pair(alg, p, &tau));
    for (i, (pair, o)) in pairs.iter().zip(outcomes).enumerate() {
        let o = o?;
        let pass = o.multiplicative && o.tau_form && o.index_form;
        let case = format!(
            "pair {i}: {} o_{} {} on {} tuple(s); multiplicative={} tau-form={} index-form={}",
            pair.outer, pair.slot, pair.inner, o.tuples, o.multiplicative, o.tau_form, o.index_form
        );
        r.push(S, case, o.shown.0, o.shown.1, pass);
    }
    Ok(r)
}

// ---------------------------------------------------------------------- axioms

pub fn axioms<I: AlgebraInstance>(alg: &IntermediateAlgebra<I>, cfg: &SuiteConfig) -> Result<Report, IntermediateError> {
    const S: &str = "axioms";
    let mut r = Report::default();
    for c in alg.colours() {
        let id = TangleExpr::gen(Generator::Identity(c));
        let mut bad = 0;
        for x in alg.basis(c) {
            bad += usize::from(alg.z_prime(&id, std::slice::from_ref(x))? != *x);
        }
        r.push(S, format!("nondegeneracy colour {c}"), failures_note(bad, alg.dim(c)), failures_note(0, alg.dim(c)), bad == 0);
    }

    // Renumbering: Z′_{σ(T)}(x_{σ⁻¹(1)}, …) = Z′_T(x₁, …).
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5eed);
    let n = cfg.samples.div_ceil(4).max(10);
    let mut trees = Vec::new();
    while trees.len() < n {
        let e = random_expr(&mut rng, alg.kmax(), 3);
        let b = e.arity();
        if b < 2 || tuple_count(alg, &e.slots()) > cfg.max_tuples {
            continue;
        }
        let mut sigma: Vec<usize> = (1..=b).collect();
        while sigma.iter().enumerate().all(|(i, &s)| s == i + 1) {
            sigma.shuffle(&mut rng);
        }
        trees.push((e, sigma));
    }
    let results = par::map(cfg.exec, &trees, |(e, sigma)| -> Result<(bool, bool, usize), IntermediateError> {
        let renum = TangleExpr::renumber(sigma.clone(), e.clone());
        let same_alpha = alg.alpha(&renum)? == alg.alpha(e)?;
        let mut ok = true;
        let mut count = 0;
        for xs in basis_tuples(alg, &e.slots()) {
            let mut ys = xs.clone();
            for (i, &s) in sigma.iter().enumerate() {
                ys[s - 1] = xs[i].clone();
            }
            ok &= alg.z_prime(&renum, &ys)? == alg.z_prime(e, &xs)?;
            count += 1;
        }
        Ok((same_alpha, ok, count))
    });
    for ((e, sigma), res) in trees.iter().zip(results) {
        let (same_alpha, ok, count) = res?;
        r.push(S, format!("renumbering {sigma:?} of {e} on {count} tuple(s)"), format!("alpha equal: {same_alpha}"), "alpha equal: true", same_alpha && ok);
    }

    // Substitution on sampled pairs.
    let tau = alg.algebra().trace(&alg.instance().biprojection());
    let pairs = sample_pairs(alg, &mut rng, n, cfg.max_tuples);
    let outcomes = par::map(cfg.exec, &pairs, |p| check_pair(alg, p, &tau));
    for (pair, o) in pairs.iter().zip(outcomes) {
        let o = o?;
        r.push(S, format!("substitution {} o_{} {} on {} tuple(s)", pair.outer, pair.slot, pair.inner, o.tuples), o.shown.0, o.shown.1, o.multiplicative);
    }
    Ok(r)
}

// ----------------------------------------------------------------------- jones

pub fn jones<I: AlgebraInstance>(alg: &IntermediateAlgebra<I>, cfg: &SuiteConfig) -> Result<Report, IntermediateError> {
    const S: &str = "jones";
    let mut r = Report::default();
    let qn = alg.instance().index_qn() as i64;
    let tau = RadicalScalar::from_frac(1, qn);
    for k in 2..=cfg.kmax {
        let e = alg.jones(k)?;
        r.push(S, format!("e^Q in P′ k={k}"), alg.contains(&e), true, alg.contains(&e));
        r.check(S, format!("e^Q idempotent k={k}"), &alg.multiply(&e, &e)?, &e);
        r.check(S, format!("e^Q self-adjoint k={k}"), &alg.star(&e), &e);
        r.check(S, format!("tr′(e^Q) = 1/[Q:N] k={k}"), &alg.trace(&e), &tau);
        if alg.instance().index_mq() == 1 {
            r.check(S, format!("e^Q is the base jones element k={k}"), &e, &alg.algebra().jones(k));
        }
        let es: Vec<PAElement> = (1..k).map(|i| alg.jones_at(i, k)).collect::<Result<_, _>>()?;
        tl_relations(&mut r, S, k, &tau, |i| es[i - 1].clone(), |x, y| alg.multiply(x, y).expect("P′ product"));
    }
    Ok(r)
}

// ----------------------------------------------------------------------- trace

pub fn trace<I: AlgebraInstance>(alg: &IntermediateAlgebra<I>, cfg: &SuiteConfig) -> Result<Report, IntermediateError> {
    const S: &str = "trace";
    let mut r = Report::default();
    let one = RadicalScalar::one();
    for c in alg.colours() {
        let unit = alg.unit(c)?;
        r.check(S, format!("tr′(1′) = 1 colour {c}"), &alg.trace(&unit), &one);
        let mut bad = 0;
        for x in alg.basis(c) {
            bad += usize::from(alg.trace(x) != alg.trace_planar(x)?);
        }
        r.push(S, format!("tr′ = [M:Q]^{} tr agrees with the planar closure colour {c}", c.k / 2), failures_note(bad, alg.dim(c)), failures_note(0, alg.dim(c)), bad == 0);
        r.constant(format!("trace exponent n colour {c}"), c.k / 2);
    }
    for k in 2..=cfg.kmax {
        let e = alg.jones(k)?;
        let inv = RadicalScalar::from_frac(1, alg.instance().index_qn() as i64);
        r.check(S, format!("tr′(e^Q) k={k}"), &alg.trace(&e), &inv);
    }

    // Right conditional expectations P′_{k+1} → P′_k.
    for k in 0..cfg.kmax {
        let lower = if k == 0 { Colour::ZERO_PLUS } else { Colour::new(k) };
        let upper = Colour::new(k + 1);
        let mut bad = 0;
        for y in alg.basis(lower) {
            bad += usize::from(alg.expectation(k, &alg.include(y)?)? != *y);
        }
        r.push(S, format!("E restricted to P′_{k} is the identity"), failures_note(bad, alg.dim(lower)), failures_note(0, alg.dim(lower)), bad == 0);
        let mut bad = 0;
        let mut total = 0;
        for x in alg.basis(upper) {
            let ex = alg.expectation(k, x)?;
            bad += usize::from(!alg.contains(&ex));
            bad += usize::from(alg.trace(&ex) != alg.trace(x));
            total += 2;
            if k >= 1 {
                for a in alg.basis(lower) {
                    let lhs = alg.expectation(k, &alg.multiply(&alg.include(a)?, x)?)?;
                    bad += usize::from(lhs != alg.multiply(a, &ex)?);
                    total += 1;
                }
            }
        }
        r.push(S, format!("E^{k}_{} is a trace-preserving bimodule map", k + 1), failures_note(bad, total), failures_note(0, total), bad == 0);
    }

    // Left conditional expectations on P′_k.
    for k in 1..=cfg.kmax {
        let c = Colour::new(k);
        let mut bad = 0;
        for x in alg.basis(c) {
            let ex = alg.left_expectation(x)?;
            bad += usize::from(alg.left_expectation(&ex)? != ex);
            bad += usize::from(alg.trace(&ex) != alg.trace(x));
        }
        r.push(S, format!("left expectation k={k} idempotent and trace-preserving"), failures_note(bad, 2 * alg.dim(c)), failures_note(0, 2 * alg.dim(c)), bad == 0);
    }

    // Positivity of tr′ on P′_k.
    for k in 1..=cfg.kmax {
        let b = alg.basis(Colour::new(k));
        let gram: Vec<Vec<RadicalScalar>> = par::map(cfg.exec, b, |x| b.iter().map(|y| alg.inner(x, y).expect("P′ product")).collect());
        let pd = is_positive_definite(&gram);
        r.push(S, format!("gram matrix of P′_{k} positive definite"), pd, true, pd);
    }
    Ok(r)
}

// ------------------------------------------------------------------------ dual

pub fn dual<I>(alg: &IntermediateAlgebra<I>, cfg: &SuiteConfig) -> Report
where
    I: AlgebraInstance + AsRef<CrossedProduct>,
{
    const S: &str = "dual";
    let cp: &CrossedProduct = alg.instance().as_ref();
    let big = cp.big();
    let mut r = Report::default();
    let (m, n) = (alg.instance().index_mq(), alg.instance().index_qn());
    let root = RadicalScalar::pow_half(m * n, 1).unwrap() * RadicalScalar::from_frac(1, n as i64);
    let rr = cp.r();
    r.check(S, "r = sqrt([M:Q]/[Q:N]) q", &rr, &cp.q().scale(&root));
    r.check(S, "r self-adjoint", &big.star(&rr), &rr);
    r.check(S, "r^2 = sqrt([M:Q]/[Q:N]) r", &big.multiply(&rr, &rr).unwrap(), &rr.scale(&root));
    r.constant("sqrt([M:Q]/[Q:N])", &root);

    // α̃ with base [Q:N] on the shading-swapped generators mirrors α.
    for gen in generators_up_to(5) {
        let t = gen.tangle().expect("generator");
        let lhs = t.swapped().alpha_tilde(n);
        let rhs = t.alpha(n);
        r.check(S, format!("alpha-tilde mirror {gen}"), &lhs, &rhs);
        r.constant(format!("alpha-tilde {gen} (standard shading)"), t.alpha_tilde(n));
    }

    // White analogue of the α-ratio identity.
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0xd0a1);
    let mut bad = 0;
    let count = cfg.samples.max(200);
    for _ in 0..count {
        let depth = rng.gen_range(1..=3);
        let p = random_pair(&mut rng, 6, depth);
        let (t, tt) = (p.outer.realize().unwrap(), p.inner.realize().unwrap());
        let tc = p.composite().realize().unwrap();
        let ki = t.discs()[p.slot - 1].k as i64;
        let e = ki - t.loops_white() as i64 - tt.loops_white() as i64 + tc.loops_white() as i64;
        let lhs = t.alpha_tilde(n) * tt.alpha_tilde(n) * tc.alpha_tilde(n).invert().unwrap();
        bad += usize::from(lhs != RadicalScalar::pow_half(n, e).unwrap());
    }
    r.push(S, "alpha-tilde ratio identity", failures_note(bad, count), failures_note(0, count), bad == 0);

    // Dual surround: idempotent with rank |Θ|^{k−1}.
    for k in 1..=cfg.kmax.min(3) {
        let c = Colour::new(k);
        let images: Vec<PAElement> = big
            .basis(c)
            .iter()
            .map(|x| alg.instance().dual_surround(x).expect("crossed product has a dual surround"))
            .collect();
        let idem = images.iter().all(|y| alg.instance().dual_surround(y).as_ref() == Some(y));
        r.push(S, format!("dual surround idempotent k={k}"), idem, true, idem);
        let expect = cp.theta_order().pow(label_len(c) as u32);
        r.check(S, format!("dual dimension k={k}"), &rank(&images), &expect);
    }
    r
}
