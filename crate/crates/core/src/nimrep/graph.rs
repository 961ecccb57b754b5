//! Boundary graphs: ADE Dynkin diagrams in Bourbaki numbering, custom
//! symmetric graphs and disjoint unions.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphFamily {
    A(usize),
    D(usize),
    E(usize),
    Custom,
    Union(Vec<GraphFamily>),
}

impl GraphFamily {
    pub fn coxeter_number(&self) -> Option<usize> {
        match *self {
            GraphFamily::A(n) => Some(n + 1),
            GraphFamily::D(n) => Some(2 * n - 2),
            GraphFamily::E(6) => Some(12),
            GraphFamily::E(7) => Some(18),
            GraphFamily::E(8) => Some(30),
            _ => None,
        }
    }

    /// Compact spec string, `A:3`, `E:6`, `A:2+A:2`.
    pub fn spec(&self) -> String {
        match self {
            GraphFamily::A(n) => format!("A:{n}"),
            GraphFamily::D(n) => format!("D:{n}"),
            GraphFamily::E(n) => format!("E:{n}"),
            GraphFamily::Custom => "custom".into(),
            GraphFamily::Union(parts) => parts.iter().map(|p| p.spec()).collect::<Vec<_>>().join("+"),
        }
    }
}

impl fmt::Display for GraphFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphFamily::A(n) => write!(f, "A_{n}"),
            GraphFamily::D(n) => write!(f, "D_{n}"),
            GraphFamily::E(n) => write!(f, "E_{n}"),
            GraphFamily::Custom => write!(f, "custom"),
            GraphFamily::Union(parts) => {
                let s: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "{}", s.join(" + "))
            }
        }
    }
}

/// Every connected ADE graph with Coxeter number at most 30, paired with
/// its su(2) level `h - 2`: `A_2..A_29`, `D_4..D_16`, `E_6`, `E_7`, `E_8`.
pub fn ade_cases() -> Vec<(GraphFamily, usize)> {
    let mut out: Vec<(GraphFamily, usize)> = (1..=28).map(|l| (GraphFamily::A(l + 1), l)).collect();
    out.extend((4..=16).map(|n| (GraphFamily::D(n), 2 * n - 4)));
    out.extend([(GraphFamily::E(6), 10), (GraphFamily::E(7), 16), (GraphFamily::E(8), 28)]);
    out
}

/// Vertices, a symmetric non-negative adjacency matrix and a family tag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryGraph {
    vertices: Vec<String>,
    adjacency: IntMatrix,
    family: GraphFamily,
}

fn edges_to_matrix(n: usize, edges: &[(usize, usize)]) -> IntMatrix {
    let mut m = IntMatrix::zeros(n, n);
    for &(i, j) in edges {
        m[(i - 1, j - 1)] = 1;
        m[(j - 1, i - 1)] = 1;
    }
    m
}

fn one_based(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

impl BoundaryGraph {
    /// Validating constructor. ADE tags must match the Dynkin adjacency.
    pub fn new(vertices: Vec<String>, adjacency: IntMatrix, family: GraphFamily) -> Result<Self> {
        let n = vertices.len();
        if adjacency.rows() != n || adjacency.cols() != n {
            return Err(Error::ShapeMismatch(format!(
                "{n} vertices but a {}x{} adjacency matrix",
                adjacency.rows(),
                adjacency.cols()
            )));
        }
        if let Some((i, j)) = adjacency.first_difference(&adjacency.transpose()) {
            return Err(Error::InvalidArgument(format!(
                "adjacency is not symmetric at ({i}, {j})"
            )));
        }
        if adjacency.min_entry().is_some_and(|m| m < 0) {
            return Err(Error::InvalidArgument("adjacency has a negative entry".into()));
        }
        match &family {
            GraphFamily::A(_) | GraphFamily::D(_) | GraphFamily::E(_) => {
                let want = Self::from_family(&family)?;
                if want.adjacency != adjacency {
                    return Err(Error::InvalidArgument(format!(
                        "adjacency does not match the {family} Dynkin diagram"
                    )));
                }
            }
            _ => {}
        }
        Ok(BoundaryGraph {
            vertices,
            adjacency,
            family,
        })
    }

    pub fn from_family(family: &GraphFamily) -> Result<Self> {
        match *family {
            GraphFamily::A(n) => Self::a(n),
            GraphFamily::D(n) => Self::d(n),
            GraphFamily::E(n) => Self::e(n),
            _ => Err(Error::InvalidArgument(format!("{family} is not a Dynkin family"))),
        }
    }

    /// Path on `n >= 1` vertices.
    pub fn a(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("A_n needs n >= 1".into()));
        }
        let edges: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
        Ok(BoundaryGraph {
            vertices: one_based(n),
            adjacency: edges_to_matrix(n, &edges),
            family: GraphFamily::A(n),
        })
    }

    /// Chain `1..n-2` with `n-1` and `n` attached to `n-2`, `n >= 4`.
    pub fn d(n: usize) -> Result<Self> {
        if n < 4 {
            return Err(Error::InvalidArgument("D_n needs n >= 4".into()));
        }
        let mut edges: Vec<_> = (1..n - 2).map(|i| (i, i + 1)).collect();
        edges.push((n - 2, n - 1));
        edges.push((n - 2, n));
        Ok(BoundaryGraph {
            vertices: one_based(n),
            adjacency: edges_to_matrix(n, &edges),
            family: GraphFamily::D(n),
        })
    }

    /// Chain `1-3-4-..-n` with `2` attached to `4`, `n` in `{6, 7, 8}`.
    pub fn e(n: usize) -> Result<Self> {
        if !(6..=8).contains(&n) {
            return Err(Error::InvalidArgument(format!("E_{n} does not exist; use 6, 7 or 8")));
        }
        let mut edges = vec![(1, 3), (2, 4)];
        edges.extend((3..n).map(|i| (i, i + 1)));
        Ok(BoundaryGraph {
            vertices: one_based(n),
            adjacency: edges_to_matrix(n, &edges),
            family: GraphFamily::E(n),
        })
    }

    /// Parse `A:11`, `D:6`, `E:8` or unions such as `A:2+A:2`.
    pub fn from_spec(spec: &str) -> Result<Self> {
        let parts: Vec<&str> = spec.split('+').map(str::trim).collect();
        let mut graphs = parts.iter().map(|p| Self::single_from_spec(p));
        let first = graphs.next().expect("split yields one part")?;
        graphs.try_fold(first, |acc, g| Ok(acc.disjoint_union(&g?)))
    }

    fn single_from_spec(spec: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("bad graph spec `{spec}`; expected A:n, D:n or E:n"));
        let (fam, n) = spec.split_once(':').ok_or_else(bad)?;
        let n: usize = n.trim().parse().map_err(|_| bad())?;
        match fam.trim() {
            "A" | "a" => Self::a(n),
            "D" | "d" => Self::d(n),
            "E" | "e" => Self::e(n),
            _ => Err(bad()),
        }
    }

    /// Block-diagonal union; vertex names become `k.name` for component `k`.
    pub fn disjoint_union(&self, other: &BoundaryGraph) -> BoundaryGraph {
        let mut parts = match &self.family {
            GraphFamily::Union(p) => p.clone(),
            f => vec![f.clone()],
        };
        let first_union = !matches!(self.family, GraphFamily::Union(_));
        let mut vertices: Vec<String> = if first_union {
            self.vertices.iter().map(|v| format!("0.{v}")).collect()
        } else {
            self.vertices.clone()
        };
        let k = parts.len();
        match &other.family {
            GraphFamily::Union(p) => parts.extend(p.iter().cloned()),
            f => parts.push(f.clone()),
        }
        vertices.extend(other.vertices.iter().map(|v| format!("{k}.{v}")));
        BoundaryGraph {
            vertices,
            adjacency: self.adjacency.direct_sum(&other.adjacency),
            family: GraphFamily::Union(parts),
        }
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn adjacency(&self) -> &IntMatrix {
        &self.adjacency
    }

    pub fn family(&self) -> &GraphFamily {
        &self.family
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Connected components as ascending vertex lists, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        components_of(&[&self.adjacency])
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }
}

/// Components of the graph whose edges are the nonzero entries of any matrix.
pub(crate) fn components_of(mats: &[&IntMatrix]) -> Vec<Vec<usize>> {
    let n = mats.first().map_or(0, |m| m.rows());
    let mut comp = vec![usize::MAX; n];
    let mut out = Vec::new();
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut members = vec![start];
        comp[start] = id;
        let mut head = 0;
        while head < members.len() {
            let v = members[head];
            head += 1;
            for w in 0..n {
                if comp[w] == usize::MAX && mats.iter().any(|m| m[(v, w)] != 0 || m[(w, v)] != 0) {
                    comp[w] = id;
                    members.push(w);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dynkin_shapes() {
        let d4 = BoundaryGraph::d(4).unwrap();
        let deg: Vec<i64> = (0..4).map(|i| (0..4).map(|j| d4.adjacency()[(i, j)]).sum()).collect();
        assert_eq!(deg, vec![1, 3, 1, 1]);
        let e6 = BoundaryGraph::e(6).unwrap();
        assert_eq!(e6.adjacency()[(1, 3)], 1);
        assert_eq!(e6.adjacency()[(0, 2)], 1);
        assert_eq!(e6.adjacency().as_slice().iter().sum::<i64>(), 10);
        assert!(BoundaryGraph::e(9).is_err());
        assert!(BoundaryGraph::d(3).is_err());
    }

    #[test]
    fn unions_and_specs() {
        let g = BoundaryGraph::from_spec("A:2+A:2").unwrap();
        assert_eq!(g.len(), 4);
        assert_eq!(g.components(), vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(g.family().spec(), "A:2+A:2");
        assert_eq!(g.vertices()[2], "1.1");
        let h = g.disjoint_union(&BoundaryGraph::a(1).unwrap());
        assert_eq!(h.vertices()[4], "2.1");
        assert!(BoundaryGraph::from_spec("F:4").is_err());
    }

    #[test]
    fn validation() {
        let asym = IntMatrix::from_rows(&[vec![0, 1], vec![0, 0]]);
        assert!(BoundaryGraph::new(one_based(2), asym, GraphFamily::Custom).is_err());
        let path = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        assert!(BoundaryGraph::new(one_based(2), path.clone(), GraphFamily::A(2)).is_ok());
        assert!(BoundaryGraph::new(one_based(2), path, GraphFamily::D(4)).is_err());
    }
}
