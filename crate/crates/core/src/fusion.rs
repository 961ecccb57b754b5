//! Fusion rings: labels, duality and structure constants `N_ab^c`.

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::scalar::CycloNumber;

/// A commutative fusion ring. Index 0 is always the unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionRing {
    labels: Vec<String>,
    dual: Vec<usize>,
    /// `n[(a * r + b) * r + c] = N_ab^c`
    n: Vec<u32>,
    /// Nonzero `(c, N_ab^c)` for each `a * r + b`.
    products: Vec<Vec<(usize, u32)>>,
}

impl FusionRing {
    /// Build from a nested tensor `tensor[a][b][c] = N_ab^c`. Only shapes are
    /// checked here; see [`FusionRing::verify_axioms`].
    pub fn new(labels: Vec<String>, dual: Vec<usize>, tensor: &[Vec<Vec<u32>>]) -> Result<Self> {
        let r = labels.len();
        if r == 0 {
            return Err(Error::ShapeMismatch("fusion ring needs at least one label".into()));
        }
        if dual.len() != r {
            return Err(Error::ShapeMismatch(format!(
                "dual has length {} but there are {r} labels",
                dual.len()
            )));
        }
        if let Some(&bad) = dual.iter().find(|&&d| d >= r) {
            return Err(Error::ShapeMismatch(format!("dual index {bad} out of range")));
        }
        if tensor.len() != r {
            return Err(Error::ShapeMismatch(format!(
                "tensor has {} slices, expected {r}",
                tensor.len()
            )));
        }
        let mut n = Vec::with_capacity(r * r * r);
        for (a, slice) in tensor.iter().enumerate() {
            if slice.len() != r {
                return Err(Error::ShapeMismatch(format!("tensor[{a}] has {} rows", slice.len())));
            }
            for (b, row) in slice.iter().enumerate() {
                if row.len() != r {
                    return Err(Error::ShapeMismatch(format!(
                        "tensor[{a}][{b}] has {} entries",
                        row.len()
                    )));
                }
                n.extend_from_slice(row);
            }
        }
        Ok(Self::from_flat(labels, dual, n))
    }

    /// Build from a coefficient function.
    pub fn from_fn(labels: Vec<String>, dual: Vec<usize>, f: impl Fn(usize, usize, usize) -> u32) -> Self {
        let r = labels.len();
        let mut n = Vec::with_capacity(r * r * r);
        for a in 0..r {
            for b in 0..r {
                for c in 0..r {
                    n.push(f(a, b, c));
                }
            }
        }
        Self::from_flat(labels, dual, n)
    }

    fn from_flat(labels: Vec<String>, dual: Vec<usize>, n: Vec<u32>) -> Self {
        let r = labels.len();
        let products = (0..r * r)
            .map(|ab| {
                (0..r)
                    .filter_map(|c| {
                        let v = n[ab * r + c];
                        (v != 0).then_some((c, v))
                    })
                    .collect()
            })
            .collect();
        FusionRing {
            labels,
            dual,
            n,
            products,
        }
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn dual(&self, a: usize) -> usize {
        self.dual[a]
    }

    pub fn duals(&self) -> &[usize] {
        &self.dual
    }

    pub fn coefficient(&self, a: usize, b: usize, c: usize) -> u32 {
        let r = self.rank();
        self.n[(a * r + b) * r + c]
    }

    /// Nonzero terms of `a * b`.
    pub fn product(&self, a: usize, b: usize) -> &[(usize, u32)] {
        &self.products[a * self.rank() + b]
    }

    pub fn tensor(&self) -> Vec<Vec<Vec<u32>>> {
        let r = self.rank();
        (0..r)
            .map(|a| (0..r).map(|b| self.n[(a * r + b) * r..(a * r + b + 1) * r].to_vec()).collect())
            .collect()
    }

    pub fn label_index(&self, name: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == name)
    }

    /// Check unit, duality, commutativity and associativity in that order.
    /// The error names the first violated axiom and a witness tuple.
    pub fn verify_axioms(&self) -> Result<()> {
        let r = self.rank();
        let fail = |axiom: &'static str, witness: Vec<usize>| Err(Error::AxiomViolated { axiom, witness });

        for b in 0..r {
            for c in 0..r {
                let delta = u32::from(b == c);
                if self.coefficient(0, b, c) != delta || self.coefficient(b, 0, c) != delta {
                    return fail("unit", vec![b, c]);
                }
            }
        }

        if self.dual[0] != 0 {
            return fail("duality", vec![0]);
        }
        for a in 0..r {
            if self.dual[self.dual[a]] != a {
                return fail("duality", vec![a]);
            }
            for b in 0..r {
                if self.coefficient(a, b, 0) != u32::from(b == self.dual[a]) {
                    return fail("duality", vec![a, b, 0]);
                }
            }
        }

        for a in 0..r {
            for b in a + 1..r {
                for c in 0..r {
                    if self.coefficient(a, b, c) != self.coefficient(b, a, c) {
                        return fail("commutativity", vec![a, b, c]);
                    }
                }
            }
        }

        let mut left = vec![0u64; r];
        let mut right = vec![0u64; r];
        for a in 0..r {
            for b in 0..r {
                for c in 0..r {
                    left.iter_mut().for_each(|x| *x = 0);
                    right.iter_mut().for_each(|x| *x = 0);
                    for &(e, x) in self.product(a, b) {
                        for &(d, y) in self.product(e, c) {
                            left[d] += u64::from(x) * u64::from(y);
                        }
                    }
                    for &(f, x) in self.product(b, c) {
                        for &(d, y) in self.product(a, f) {
                            right[d] += u64::from(x) * u64::from(y);
                        }
                    }
                    if let Some(d) = (0..r).find(|&d| left[d] != right[d]) {
                        return fail("associativity", vec![a, b, c, d]);
                    }
                }
            }
        }
        Ok(())
    }

    /// `(N_a)_{cb} = N_ab^c`, one matrix per label.
    pub fn regular_matrices(&self) -> Vec<IntMatrix> {
        let r = self.rank();
        (0..r)
            .map(|a| {
                let mut m = IntMatrix::zeros(r, r);
                for b in 0..r {
                    for &(c, v) in self.product(a, b) {
                        m[(c, b)] = i64::from(v);
                    }
                }
                m
            })
            .collect()
    }

    /// Bilinear product of two elements.
    pub fn multiply(&self, x: &FusionElement, y: &FusionElement) -> Result<FusionElement> {
        let r = self.rank();
        if x.len() != r || y.len() != r {
            return Err(Error::ShapeMismatch(format!(
                "elements of length {} and {} in a rank-{r} ring",
                x.len(),
                y.len()
            )));
        }
        let mut terms: Vec<Vec<(i64, &CycloNumber, &CycloNumber)>> = vec![Vec::new(); r];
        for (a, xa) in x.coeffs.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.coeffs.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                for &(c, v) in self.product(a, b) {
                    terms[c].push((i64::from(v), xa, yb));
                }
            }
        }
        Ok(FusionElement {
            coeffs: terms.into_iter().map(CycloNumber::weighted_dot).collect(),
        })
    }

    pub fn unit(&self) -> FusionElement {
        FusionElement::basis(self.rank(), 0)
    }
}

/// Truncated su(2) character ring at level `level`: labels `x0..x{level}`.
pub fn su2_fusion_ring(level: usize) -> FusionRing {
    let r = level + 1;
    let labels = (0..r).map(|a| format!("x{a}")).collect();
    FusionRing::from_fn(labels, (0..r).collect(), |a, b, c| {
        let hi = (a + b).min(2 * level - a - b);
        u32::from(a.abs_diff(b) <= c && c <= hi && (a + b + c) % 2 == 0)
    })
}

/// An element `sum_a coeffs[a] x_a` of the fusion algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionElement {
    coeffs: Vec<CycloNumber>,
}

impl FusionElement {
    pub fn new(coeffs: Vec<CycloNumber>) -> Self {
        FusionElement { coeffs }
    }

    pub fn zero(rank: usize) -> Self {
        FusionElement {
            coeffs: vec![CycloNumber::zero(); rank],
        }
    }

    pub fn basis(rank: usize, a: usize) -> Self {
        let mut e = Self::zero(rank);
        e.coeffs[a] = CycloNumber::one();
        e
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[CycloNumber] {
        &self.coeffs
    }

    pub fn get(&self, a: usize) -> &CycloNumber {
        &self.coeffs[a]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(CycloNumber::is_zero)
    }

    pub fn add(&self, other: &FusionElement) -> Result<FusionElement> {
        if self.len() != other.len() {
            return Err(Error::ShapeMismatch(format!(
                "adding elements of length {} and {}",
                self.len(),
                other.len()
            )));
        }
        Ok(FusionElement {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scale(&self, k: &CycloNumber) -> FusionElement {
        FusionElement {
            coeffs: self.coeffs.iter().map(|a| a * k).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn elem(ring: &FusionRing, terms: &[(usize, i64, i64)]) -> FusionElement {
        let mut c = vec![CycloNumber::zero(); ring.rank()];
        for &(a, p, q) in terms {
            c[a] = CycloNumber::from_ratio(p, q);
        }
        FusionElement::new(c)
    }

    #[test]
    fn su2_products() {
        let r1 = su2_fusion_ring(1);
        assert_eq!(r1.product(1, 1), &[(0, 1)]);
        let r2 = su2_fusion_ring(2);
        assert_eq!(r2.product(1, 1), &[(0, 1), (2, 1)]);
        assert_eq!(su2_fusion_ring(0).rank(), 1);
        for l in 0..=6 {
            su2_fusion_ring(l).verify_axioms().unwrap();
        }
    }

    #[test]
    fn idempotent_products_at_level_one() {
        let r = su2_fusion_ring(1);
        let e0 = elem(&r, &[(0, 1, 2), (1, 1, 2)]);
        let e1 = elem(&r, &[(0, 1, 2), (1, -1, 2)]);
        assert_eq!(r.multiply(&e0, &e0).unwrap(), e0);
        assert!(r.multiply(&e0, &e1).unwrap().is_zero());
        assert_eq!(r.multiply(&r.unit(), &e1).unwrap(), e1);
        assert!(matches!(
            r.multiply(&e0, &FusionElement::zero(3)),
            Err(Error::ShapeMismatch(_))
        ));
    }

    #[test]
    fn regular_matrices_level_one() {
        let m = su2_fusion_ring(1).regular_matrices();
        assert_eq!(m[0], IntMatrix::identity(2));
        assert_eq!(m[1], IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]));
    }

    #[test]
    fn ragged_tensor_rejected() {
        let t = vec![vec![vec![1u32]], vec![vec![0u32]]];
        let err = FusionRing::new(vec!["a".into(), "b".into()], vec![0, 1], &t).unwrap_err();
        assert!(matches!(err, Error::ShapeMismatch(_)));
    }
}
