//! Exact linear algebra over [`RadicalScalar`].

use std::cmp::Ordering;

use crate::algebra::{Label, PAElement};
use crate::scalar::RadicalScalar;

/// Incremental row echelon form over sparse vectors.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<(Label, PAElement)>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// `x` minus its projection onto the span along the pivots.
    pub fn reduce(&self, x: &PAElement) -> PAElement {
        let mut y = x.clone();
        for (p, row) in &self.rows {
            let a = y.coeff(p);
            if !a.is_zero() {
                y.add_scaled(row, &-a);
            }
        }
        y
    }

    /// Adds `x`; returns whether it was independent of the rows so far.
    pub fn insert(&mut self, x: &PAElement) -> bool {
        let y = self.reduce(x);
        let Some((p, a)) = y.terms().next().map(|(l, a)| (l.clone(), a.clone())) else {
            return false;
        };
        let inv = a.invert().expect("pivot is nonzero");
        self.rows.push((p, y.scale(&inv)));
        true
    }

    pub fn contains(&self, x: &PAElement) -> bool {
        self.reduce(x).is_zero()
    }
}

/// Rank of a family of elements of one colour.
pub fn rank<'a>(xs: impl IntoIterator<Item = &'a PAElement>) -> usize {
    let mut e = Echelon::new();
    for x in xs {
        e.insert(x);
    }
    e.rank()
}

/// Pivots of symmetric Gaussian elimination without row exchange; the
/// matrix is positive definite iff all are positive. `None` if a zero pivot
/// appears.
pub fn ldl_pivots(m: &[Vec<RadicalScalar>]) -> Option<Vec<RadicalScalar>> {
    let n = m.len();
    let mut a: Vec<Vec<RadicalScalar>> = m.to_vec();
    let mut pivots = Vec::with_capacity(n);
    for i in 0..n {
        let p = a[i][i].clone();
        let inv = p.invert().ok()?;
        for r in i + 1..n {
            if a[r][i].is_zero() {
                continue;
            }
            let f = &a[r][i] * &inv;
            for c in i..n {
                let d = &f * &a[i][c];
                a[r][c] -= &d;
            }
        }
        pivots.push(p);
    }
    Some(pivots)
}

/// Positive definiteness via leading principal minors, exactly.
pub fn is_positive_definite(m: &[Vec<RadicalScalar>]) -> bool {
    match ldl_pivots(m) {
        Some(ps) => ps.iter().all(|p| p.signum() == Ordering::Greater),
        None => false,
    }
}
