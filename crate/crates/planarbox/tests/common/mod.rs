#![allow(dead_code)]

//! Independent oracles for the integration tests.
//!
//! `Spin` evaluates a planar tangle on the group spin model directly from its
//! string matching: spins live on black regions, each internal disc reads the
//! spins around it, and each tangle carries the weight `Q^{(W−B)/4}·√Q^{loops}`
//! where `W`, `B` count white and black regions. Nothing here uses the basis
//! formulas of the library.

use std::collections::BTreeMap;

use itertools::Itertools;
use planarbox::algebra::{GroupPlanarAlgebra, PAElement};
use planarbox::group::FiniteGroup;
use planarbox::tangle::{Colour, Point, Tangle};

pub const TOL: f64 = 1e-9;

pub struct Spin {
    n: usize,
    mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
}

/// Dense tensor indexed by the spins of the black intervals `1, 3, …, 2k−1`.
pub type Tensor = Vec<f64>;

impl Spin {
    pub fn new(g: &FiniteGroup) -> Self {
        let n = g.order();
        Spin {
            n,
            mul: (0..n).map(|a| (0..n).map(|b| g.mul(a, b)).collect()).collect(),
            inv: (0..n).map(|a| g.inv(a)).collect(),
        }
    }

    fn index(&self, spins: &[usize]) -> usize {
        spins.iter().fold(0, |acc, &s| acc * self.n + s)
    }

    /// True when every disc with points is joined to the external disc and
    /// no disc has colour zero.
    pub fn supports(t: &Tangle) -> bool {
        if t.outer().k == 0 || t.discs().iter().any(|c| c.k == 0) || t.is_swapped() {
            return false;
        }
        let b = t.discs().len();
        let mut parent: Vec<usize> = (0..=b).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for (p, q) in t.strings() {
            let (a, b2) = (find(&mut parent, p.disc), find(&mut parent, q.disc));
            parent[a] = b2;
        }
        let root = find(&mut parent, 0);
        (1..=b).all(|d| find(&mut parent, d) == root)
    }

    pub fn evaluate(&self, t: &Tangle, inputs: &[Tensor]) -> Tensor {
        assert!(Self::supports(t));
        let faces = t.faces();
        let mut face_of: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        let mut black = Vec::new();
        for (f, face) in faces.iter().enumerate() {
            let (d, j) = face[0];
            let m = t.colour(d).points();
            black.push(t.interval_black(if j == 0 { m } else { j }));
            for &iv in face {
                face_of.insert(iv, f);
            }
        }
        let nb = black.iter().filter(|&&b| b).count() as i32;
        let nw = faces.len() as i32 - nb;
        let q = self.n as f64;
        let weight = q.powf(f64::from(nw - nb) / 4.0) * q.sqrt().powi(t.closed_loops() as i32);

        let regions_of = |d: usize| -> Vec<usize> {
            let k = t.colour(d).k;
            (0..k).map(|i| face_of[&(d, (2 * i + 1) % (2 * k))]).collect()
        };
        let ext = regions_of(0);
        let discs: Vec<Vec<usize>> = (1..=t.discs().len()).map(regions_of).collect();
        let internal: Vec<usize> = (0..faces.len())
            .filter(|f| black[*f] && !ext.contains(f))
            .collect();

        let states: Vec<Vec<usize>> = if internal.is_empty() {
            vec![vec![]]
        } else {
            (0..internal.len()).map(|_| 0..self.n).multi_cartesian_product().collect()
        };
        let k0 = t.outer().k;
        let mut out = vec![0.0; self.n.pow(k0 as u32)];
        let mut spin = vec![usize::MAX; faces.len()];
        for es in (0..k0).map(|_| 0..self.n).multi_cartesian_product() {
            spin.iter_mut().for_each(|s| *s = usize::MAX);
            let mut ok = true;
            for (&r, &v) in ext.iter().zip(&es) {
                if spin[r] != usize::MAX && spin[r] != v {
                    ok = false;
                }
                spin[r] = v;
            }
            if !ok {
                continue;
            }
            let mut total = 0.0;
            for state in &states {
                for (&r, &v) in internal.iter().zip(state) {
                    spin[r] = v;
                }
                let mut p = 1.0;
                for (regs, x) in discs.iter().zip(inputs) {
                    let idx = self.index(&regs.iter().map(|&r| spin[r]).collect::<Vec<_>>());
                    p *= x[idx];
                    if p == 0.0 {
                        break;
                    }
                }
                total += p;
            }
            out[self.index(&es)] = total * weight;
        }
        out
    }

    /// Spin tensor of an element, with scale `lambda` on colour `k`.
    /// `S(ḡ)` is the indicator of `σ_k⁻¹σ_j = g_j` (`k ≥ 3`), of
    /// `σ₁⁻¹σ₂ = g` (`k = 2`), and the constant function for `k = 1`.
    pub fn tensor(&self, x: &PAElement, lambda: f64) -> Tensor {
        let k = x.colour().k;
        let mut out = vec![0.0; self.n.pow(k as u32)];
        for sig in (0..k).map(|_| 0..self.n).multi_cartesian_product() {
            let label: Vec<usize> = match k {
                1 => vec![],
                2 => vec![self.mul[self.inv[sig[0]]][sig[1]]],
                _ => (0..k - 1).map(|j| self.mul[self.inv[sig[k - 1]]][sig[j]]).collect(),
            };
            out[self.index(&sig)] = x.coeff(&label).to_f64() * lambda;
        }
        out
    }

    pub fn close(a: &Tensor, b: &Tensor) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < TOL * (1.0 + y.abs()))
    }

    /// Fits the scale of colour `k` from `1·1 = 1` under the multiplication
    /// tangle.
    pub fn fit_lambda(&self, p: &GroupPlanarAlgebra, k: usize) -> f64 {
        let c = Colour::new(k);
        let one = self.tensor(&p.unit(c), 1.0);
        let m = planarbox::tangle::Generator::Multiply(c).tangle().unwrap();
        let prod = self.evaluate(&m, &[one.clone(), one.clone()]);
        let (i, v) = one.iter().enumerate().find(|(_, v)| v.abs() > TOL).unwrap();
        v / prod[i]
    }
}

/// Solves `A x = b` by Gaussian elimination with partial pivoting; `None`
/// when singular.
pub fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col].abs() < TOL {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for r in 0..n {
            if r != col {
                let f = a[r][col] / a[col][col];
                if f != 0.0 {
                    for c in col..n {
                        a[r][c] -= f * a[col][c];
                    }
                    b[r] -= f * b[col];
                }
            }
        }
    }
    Some((0..n).map(|i| b[i] / a[i][i]).collect())
}

pub fn point(d: usize, i: usize) -> Point {
    Point::new(d, i)
}
