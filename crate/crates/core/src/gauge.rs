//! Gauge scalars: validate a multiplicative cochain `mu` on a set of pairs
//! `J`, solve `mu_ij = lambda_i / lambda_j`, and conjugate a NIM-rep by
//! `diag(lambda)` into the encircling module.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::linalg::CycloMatrix;
use crate::modular::ModularData;
use crate::nimrep::{apply, NimRep};
use crate::scalar::CycloNumber;

/// Nodes, a pair set `J` and scalars `mu` on it. Diagonal entries and
/// missing reverse pairs are filled in on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaugeProblem {
    nodes: Vec<String>,
    mu: BTreeMap<(usize, usize), CycloNumber>,
}

impl GaugeProblem {
    /// `entries` are `(i, j, mu_ij)` by node index. Adds `mu_ii = 1` for every
    /// node and `mu_ji = 1 / mu_ij` where the reverse pair is absent.
    pub fn new(nodes: Vec<String>, entries: Vec<(usize, usize, CycloNumber)>) -> Result<Self> {
        let n = nodes.len();
        let mut mu = BTreeMap::new();
        for (i, j, v) in entries {
            if i >= n || j >= n {
                return Err(Error::InvalidArgument(format!("pair ({i}, {j}) out of range for {n} nodes")));
            }
            if v.is_zero() {
                return Err(Error::DegenerateScalar(format!(
                    "mu_({}, {}) is zero",
                    nodes[i], nodes[j]
                )));
            }
            if mu.insert((i, j), v).is_some() {
                return Err(Error::InvalidArgument(format!(
                    "pair ({}, {}) given twice",
                    nodes[i], nodes[j]
                )));
            }
        }
        for i in 0..n {
            mu.entry((i, i)).or_insert_with(CycloNumber::one);
        }
        let missing: Vec<((usize, usize), CycloNumber)> = mu
            .iter()
            .filter(|((i, j), _)| !mu.contains_key(&(*j, *i)))
            .map(|(&(i, j), v)| Ok(((j, i), v.inv()?)))
            .collect::<Result<_>>()?;
        mu.extend(missing);
        Ok(GaugeProblem { nodes, mu })
    }

    /// `mu_ij = lambda_i / lambda_j` on the given pairs (both orientations).
    pub fn from_lambda(nodes: Vec<String>, lambda: &[CycloNumber], pairs: &[(usize, usize)]) -> Result<Self> {
        let mut entries = Vec::new();
        let mut seen = BTreeSet::new();
        for &(i, j) in pairs {
            for (p, q) in [(i, j), (j, i)] {
                if p != q && seen.insert((p, q)) {
                    entries.push((p, q, lambda[p].checked_div(&lambda[q])?));
                }
            }
        }
        Self::new(nodes, entries)
    }

    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn mu(&self, i: usize, j: usize) -> Option<&CycloNumber> {
        self.mu.get(&(i, j))
    }

    /// Every stored `(i, j, mu_ij)` in lexicographic order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &CycloNumber)> {
        self.mu.iter().map(|(&(i, j), v)| (i, j, v))
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.mu.contains_key(&(i, j))
    }

    /// Replace one scalar, leaving its reverse untouched.
    pub fn with_entry(mut self, i: usize, j: usize, v: CycloNumber) -> Self {
        self.mu.insert((i, j), v);
        self
    }

    fn neighbours(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for &(i, j) in self.mu.keys() {
            if i != j {
                adj[i].push(j);
            }
        }
        adj
    }

    /// Connected components of `J`, each ascending, ordered by least node.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.neighbours();
        let mut seen = vec![false; self.nodes.len()];
        let mut out = Vec::new();
        for root in 0..self.nodes.len() {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut comp = vec![root];
            let mut queue = VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    fn name(&self, i: usize) -> String {
        self.nodes[i].clone()
    }
}

/// One cocycle check `mu_ij mu_jk = mu_ik` on distinct nodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleCheck {
    pub nodes: (usize, usize, usize),
    pub holds: bool,
}

/// All cocycle checks over triples of distinct nodes whose three pairs lie in `J`.
pub fn triangle_checks(gp: &GaugeProblem) -> Vec<TriangleCheck> {
    let adj = gp.neighbours();
    let mut out = Vec::new();
    for i in 0..gp.nodes.len() {
        for &j in &adj[i] {
            for &k in &adj[j] {
                if k == i {
                    continue;
                }
                if let Some(ik) = gp.mu(i, k) {
                    let holds = &gp.mu[&(i, j)] * &gp.mu[&(j, k)] == *ik;
                    out.push(TriangleCheck {
                        nodes: (i, j, k),
                        holds,
                    });
                }
            }
        }
    }
    out.sort_by_key(|t| t.nodes);
    out
}

/// Check unitality, inverses, closure of `J` under composition and the
/// cocycle identity, in that order. Witnesses are lexicographically first.
pub fn validate_mu(gp: &GaugeProblem) -> Result<()> {
    for i in 0..gp.nodes.len() {
        if !gp.mu(i, i).is_some_and(CycloNumber::is_one) {
            return Err(Error::NonUnitalGauge(gp.name(i)));
        }
    }
    for (&(i, j), v) in &gp.mu {
        let back = gp.mu(j, i).ok_or_else(|| Error::MissingPair(gp.name(j), gp.name(i)))?;
        if !(v * back).is_one() {
            return Err(Error::GaugeInverse(gp.name(i), gp.name(j)));
        }
    }
    let adj = gp.neighbours();
    for i in 0..gp.nodes.len() {
        let mut reach: Vec<usize> = adj[i].iter().flat_map(|&j| adj[j].iter().copied()).collect();
        reach.sort_unstable();
        reach.dedup();
        if let Some(&k) = reach.iter().find(|&&k| k != i && !gp.contains(i, k)) {
            return Err(Error::MissingPair(gp.name(i), gp.name(k)));
        }
    }
    if let Some(t) = triangle_checks(gp).into_iter().find(|t| !t.holds) {
        let (i, j, k) = t.nodes;
        return Err(Error::GaugeCocycle(gp.name(i), gp.name(j), gp.name(k)));
    }
    Ok(())
}

/// `lambda` with `mu_ij = lambda_i / lambda_j` and `lambda = 1` at the least
/// node of each component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaugeSolution {
    pub lambda: Vec<CycloNumber>,
    pub components: Vec<Vec<usize>>,
}

pub fn solve_gauge(gp: &GaugeProblem) -> Result<GaugeSolution> {
    validate_mu(gp)?;
    let adj = gp.neighbours();
    let mut lambda: Vec<Option<CycloNumber>> = vec![None; gp.nodes.len()];
    let components = gp.components();
    for comp in &components {
        let root = comp[0];
        lambda[root] = Some(CycloNumber::one());
        let mut queue = VecDeque::from([root]);
        while let Some(i) = queue.pop_front() {
            let li = lambda[i].clone().expect("visited");
            for &j in &adj[i] {
                if lambda[j].is_none() {
                    lambda[j] = Some(li.checked_div(&gp.mu[&(i, j)])?);
                    queue.push_back(j);
                }
            }
        }
    }
    Ok(GaugeSolution {
        lambda: lambda.into_iter().map(|l| l.expect("every node lies in a component")).collect(),
        components,
    })
}

/// `E(a)_ji = (lambda_i / lambda_j) N(a)_ji`.
pub fn encircling_matrices(nr: &NimRep, lambda: &[CycloNumber]) -> Result<Vec<CycloMatrix>> {
    let n = nr.size();
    if lambda.len() != n {
        return Err(Error::ShapeMismatch(format!("{} gauge scalars for {n} boundary labels", lambda.len())));
    }
    let inv: Vec<CycloNumber> = lambda
        .iter()
        .enumerate()
        .map(|(i, l)| l.inv().map_err(|_| Error::DegenerateScalar(format!("lambda_{i} is zero"))))
        .collect::<Result<_>>()?;
    Ok(nr
        .mats()
        .iter()
        .map(|m| {
            CycloMatrix::from_fn(n, |j, i| {
                if m[(j, i)] == 0 {
                    CycloNumber::zero()
                } else {
                    (&lambda[i] * &inv[j]).scale(m[(j, i)])
                }
            })
        })
        .collect())
}

/// Outcome of comparing `N` with its encircling module `E`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiVerdict {
    /// `Lambda E(a) = N(a) Lambda` for all `a`.
    pub intertwines: bool,
    /// `N(a) lambda = d(a) lambda` for all `a`.
    pub lambda_is_d_eigenvector: bool,
    /// `E(a) 1 = d(a) 1` for all `a`.
    pub ones_is_d_eigenvector: bool,
}

impl PhiVerdict {
    pub fn passed(&self) -> bool {
        self.intertwines && self.ones_is_d_eigenvector
    }

    /// The all-ones vector is a d-eigenvector of `E` exactly when `lambda` is one of `N`.
    pub fn consistent(&self) -> bool {
        self.lambda_is_d_eigenvector == self.ones_is_d_eigenvector
    }
}

pub fn verify_phi_isomorphism(nr: &NimRep, lambda: &[CycloNumber], md: &ModularData) -> Result<PhiVerdict> {
    if nr.ring() != md.ring() {
        return Err(Error::InvalidArgument("NIM-rep and modular data use different rings".into()));
    }
    let es = encircling_matrices(nr, lambda)?;
    let n = nr.size();
    let ones = vec![CycloNumber::one(); n];
    let mut verdict = PhiVerdict {
        intertwines: true,
        lambda_is_d_eigenvector: true,
        ones_is_d_eigenvector: true,
    };
    for (a, (e, m)) in es.iter().zip(nr.mats()).enumerate() {
        let ok = (0..n).all(|j| {
            (0..n).all(|i| &lambda[j] * e.get(j, i) == CycloNumber::from_integer(m[(j, i)]) * lambda[i].clone())
        });
        verdict.intertwines &= ok;
        let da = &md.d()[a];
        let nl = apply(m, lambda);
        verdict.lambda_is_d_eigenvector &= nl.iter().zip(lambda).all(|(x, l)| *x == l * da);
        let e1 = e.mul_vec(&ones);
        verdict.ones_is_d_eigenvector &= e1.iter().all(|x| x == da);
    }
    Ok(verdict)
}

/// `m[I] = sum_S coeff_S(e_{lambda_I}) tr E(S)`, with exact integrality check.
pub fn encircling_profile(es: &[CycloMatrix], md: &ModularData) -> Result<Vec<i64>> {
    if es.len() != md.rank() {
        return Err(Error::ShapeMismatch(format!("{} matrices for rank {}", es.len(), md.rank())));
    }
    let traces: Vec<CycloNumber> = es.iter().map(CycloMatrix::trace).collect();
    md.spectral_idempotents()?
        .iter()
        .enumerate()
        .map(|(label, e)| {
            let v = CycloNumber::dot(e.coeffs().iter().zip(&traces));
            match v.to_i64() {
                Some(m) if m >= 0 => Ok(m),
                _ => Err(Error::NonIntegralMultiplicity {
                    label,
                    value: v.to_string(),
                }),
            }
        })
        .collect()
}
