//! Finite groups given by multiplication tables, and actions of one finite
//! group on another by automorphisms.

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("multiplication table is not square or has out-of-range entries")]
    BadTable,
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),
    #[error("multiplication is not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("permutation {0} is not a bijection of 0..{1}")]
    BadPermutation(usize, usize),
    #[error("group spec must contain either \"table\" or \"permutations\"")]
    EmptySpec,
    #[error("theta element {theta}: {msg}")]
    BadAction { theta: usize, msg: String },
    #[error("spec parse error: {0}")]
    Parse(String),
}

/// A finite group with elements `0..n`, identity `0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    names: Vec<String>,
}

/// On-disk group description.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct GroupSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub permutations: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

impl FiniteGroup {
    /// Validates a multiplication table and renumbers so that the identity
    /// is element `0` (other elements keep their relative order).
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(GroupError::BadTable);
        }
        let id = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or(GroupError::NoIdentity)?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(GroupError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        // Put the identity first.
        let order: Vec<usize> = std::iter::once(id).chain((0..n).filter(|&x| x != id)).collect();
        let mut pos = vec![0; n];
        for (i, &x) in order.iter().enumerate() {
            pos[x] = i;
        }
        let table: Vec<Vec<usize>> = order
            .iter()
            .map(|&a| order.iter().map(|&b| pos[table[a][b]]).collect())
            .collect();
        let mut inverse = vec![usize::MAX; n];
        for a in 0..n {
            match (0..n).find(|&b| table[a][b] == 0 && table[b][a] == 0) {
                Some(b) => inverse[a] = b,
                None => return Err(GroupError::NoInverse(order[a])),
            }
        }
        let names = order.iter().map(|x| x.to_string()).collect();
        Ok(FiniteGroup {
            table,
            inverse,
            names,
        })
    }

    /// Closure of a set of permutations of `0..degree` under composition,
    /// numbered in breadth-first order from the identity.
    pub fn from_permutations(gens: &[Vec<usize>], degree: usize) -> Result<Self, GroupError> {
        for (i, g) in gens.iter().enumerate() {
            let mut seen = vec![false; degree];
            if g.len() != degree || g.iter().any(|&x| x >= degree || std::mem::replace(&mut seen[x], true)) {
                return Err(GroupError::BadPermutation(i, degree));
            }
        }
        let identity: Vec<usize> = (0..degree).collect();
        let compose = |a: &[usize], b: &[usize]| -> Vec<usize> { b.iter().map(|&x| a[x]).collect() };
        let mut elems = vec![identity.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(identity, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in gens {
                let y = compose(&elems[i], g);
                if !index.contains_key(&y) {
                    index.insert(y.clone(), elems.len());
                    queue.push_back(elems.len());
                    elems.push(y);
                }
            }
        }
        let table = elems
            .iter()
            .map(|a| elems.iter().map(|b| index[&compose(a, b)]).collect())
            .collect();
        let mut g = Self::from_table(table)?;
        g.names = elems
            .iter()
            .map(|p| format!("[{}]", p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")))
            .collect();
        Ok(g)
    }

    pub fn from_spec(spec: &GroupSpec) -> Result<Self, GroupError> {
        let mut g = if let Some(t) = &spec.table {
            Self::from_table(t.clone())?
        } else if let Some(p) = &spec.permutations {
            let degree = spec
                .degree
                .or_else(|| p.first().map(|x| x.len()))
                .unwrap_or(0);
            Self::from_permutations(p, degree)?
        } else {
            return Err(GroupError::EmptySpec);
        };
        if let Some(names) = &spec.names {
            if names.len() == g.order() && spec.table.is_some() {
                g.names = names.clone();
            }
        }
        Ok(g)
    }

    pub fn from_json(src: &str) -> Result<Self, GroupError> {
        let spec: GroupSpec = serde_json::from_str(src).map_err(|e| GroupError::Parse(e.to_string()))?;
        Self::from_spec(&spec)
    }

    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_table(table).expect("cyclic table is a group")
    }

    pub fn symmetric3() -> Self {
        Self::from_permutations(&[vec![1, 0, 2], vec![1, 2, 0]], 3).expect("S3")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn to_spec(&self) -> GroupSpec {
        GroupSpec {
            table: Some(self.table.clone()),
            names: Some(self.names.clone()),
            ..Default::default()
        }
    }
}

/// An injective homomorphism `Θ → Aut(G)`, `θ ↦ α_θ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAction {
    pub g: FiniteGroup,
    pub theta: FiniteGroup,
    perms: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ActionSpec {
    pub group: GroupSpec,
    pub theta: GroupSpec,
    /// Image of each element of Θ (by index) as a permutation of G. The
    /// identity may be omitted.
    #[serde(default)]
    pub action: BTreeMap<String, Vec<usize>>,
}

impl GroupAction {
    pub fn new(g: FiniteGroup, theta: FiniteGroup, perms: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let n = g.order();
        if perms.len() != theta.order() {
            return Err(GroupError::BadAction {
                theta: perms.len(),
                msg: format!("expected {} permutations", theta.order()),
            });
        }
        for (t, p) in perms.iter().enumerate() {
            let bad = |msg: &str| GroupError::BadAction {
                theta: t,
                msg: msg.to_string(),
            };
            let mut seen = vec![false; n];
            if p.len() != n || p.iter().any(|&x| x >= n || std::mem::replace(&mut seen[x], true)) {
                return Err(bad("not a permutation of G"));
            }
            for a in 0..n {
                for b in 0..n {
                    if p[g.mul(a, b)] != g.mul(p[a], p[b]) {
                        return Err(bad("not a group automorphism"));
                    }
                }
            }
        }
        for s in 0..theta.order() {
            for t in 0..theta.order() {
                let st = theta.mul(s, t);
                if (0..n).any(|x| perms[st][x] != perms[s][perms[t][x]]) {
                    return Err(GroupError::BadAction {
                        theta: st,
                        msg: "θ ↦ α_θ is not a homomorphism".into(),
                    });
                }
            }
        }
        for s in 1..theta.order() {
            if (0..n).all(|x| perms[s][x] == x) {
                return Err(GroupError::BadAction {
                    theta: s,
                    msg: "action is not faithful".into(),
                });
            }
        }
        Ok(GroupAction { g, theta, perms })
    }

    pub fn from_spec(spec: &ActionSpec) -> Result<Self, GroupError> {
        let g = FiniteGroup::from_spec(&spec.group)?;
        let theta = FiniteGroup::from_spec(&spec.theta)?;
        let identity: Vec<usize> = (0..g.order()).collect();
        let mut perms = vec![identity; theta.order()];
        for (key, p) in &spec.action {
            let t: usize = key
                .trim()
                .parse()
                .map_err(|_| GroupError::Parse(format!("bad theta index '{key}'")))?;
            if t >= theta.order() {
                return Err(GroupError::BadAction {
                    theta: t,
                    msg: "index out of range".into(),
                });
            }
            perms[t] = p.clone();
        }
        Self::new(g, theta, perms)
    }

    pub fn from_json(src: &str) -> Result<Self, GroupError> {
        let spec: ActionSpec = serde_json::from_str(src).map_err(|e| GroupError::Parse(e.to_string()))?;
        Self::from_spec(&spec)
    }

    /// `ℤ_n ⋊ ℤ_2` with the non-trivial element acting by inversion.
    pub fn cyclic_inversion(n: usize) -> Self {
        let g = FiniteGroup::cyclic(n);
        let inv: Vec<usize> = (0..n).map(|x| (n - x) % n).collect();
        let id: Vec<usize> = (0..n).collect();
        Self::new(g, FiniteGroup::cyclic(2), vec![id, inv]).expect("inversion action")
    }

    /// The trivial group acting on `g`.
    pub fn trivial(g: FiniteGroup) -> Self {
        let id: Vec<usize> = (0..g.order()).collect();
        Self::new(g, FiniteGroup::cyclic(1), vec![id]).expect("trivial action")
    }

    #[inline]
    pub fn apply(&self, theta: usize, x: usize) -> usize {
        self.perms[theta][x]
    }

    pub fn apply_tuple(&self, theta: usize, xs: &[usize]) -> Vec<usize> {
        xs.iter().map(|&x| self.apply(theta, x)).collect()
    }

    pub fn perms(&self) -> &[Vec<usize>] {
        &self.perms
    }

    /// Index of the pair `(g, θ)` in [`GroupAction::semidirect`].
    #[inline]
    pub fn pair(&self, g: usize, theta: usize) -> usize {
        g * self.theta.order() + theta
    }

    #[inline]
    pub fn unpair(&self, x: usize) -> (usize, usize) {
        (x / self.theta.order(), x % self.theta.order())
    }

    /// `G ⋊ Θ` on pairs `(g, θ)` with `(g₁,θ₁)(g₂,θ₂) = (g₁θ₁(g₂), θ₁θ₂)`,
    /// element `(g, θ)` numbered `g·|Θ| + θ`.
    pub fn semidirect(&self) -> FiniteGroup {
        let m = self.g.order() * self.theta.order();
        let table = (0..m)
            .map(|x| {
                let (g1, t1) = self.unpair(x);
                (0..m)
                    .map(|y| {
                        let (g2, t2) = self.unpair(y);
                        self.pair(self.g.mul(g1, self.apply(t1, g2)), self.theta.mul(t1, t2))
                    })
                    .collect()
            })
            .collect();
        let mut sd = FiniteGroup::from_table(table).expect("semidirect product is a group");
        sd.names = (0..m)
            .map(|x| {
                let (g, t) = self.unpair(x);
                format!("({},{})", self.g.name(g), self.theta.name(t))
            })
            .collect();
        sd
    }
}
