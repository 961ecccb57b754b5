//! Small dense integer and cyclotomic matrices.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use crate::scalar::{Coeff, CycloNumber};

/// Row-major dense integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Panics on ragged input; use [`IntMatrix::try_from_rows`] for user data.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        Self::try_from_rows(rows).expect("ragged matrix")
    }

    pub fn try_from_rows(rows: &[Vec<i64>]) -> Option<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return None;
        }
        Some(IntMatrix {
            rows: r,
            cols: c,
            data: rows.iter().flatten().copied().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.cols.max(1)).map(|r| r.to_vec()).take(self.rows).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn trace(&self) -> i64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    pub fn min_entry(&self) -> Option<i64> {
        self.data.iter().copied().min()
    }

    /// First `(i, j)` where `self` and `other` differ.
    pub fn first_difference(&self, other: &IntMatrix) -> Option<(usize, usize)> {
        (0..self.rows)
            .flat_map(|i| (0..self.cols).map(move |j| (i, j)))
            .find(|&(i, j)| self[(i, j)] != other[(i, j)])
    }

    pub fn scaled(&self, k: i64) -> Self {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * k).collect(),
        }
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &IntMatrix) -> Self {
        let mut m = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)];
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m[(self.rows + i, self.cols + j)] = other[(i, j)];
            }
        }
        m
    }

    pub fn to_f64_rows(&self) -> Vec<Vec<f64>> {
        self.to_rows()
            .into_iter()
            .map(|r| r.into_iter().map(|x| x as f64).collect())
            .collect()
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.data
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl Add for &IntMatrix {
    type Output = IntMatrix;
    fn add(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &IntMatrix {
    type Output = IntMatrix;
    fn sub(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_rows())
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.to_rows() {
            let cells: Vec<String> = row.iter().map(|x| format!("{x:>3}")).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Square matrix of cyclotomic numbers.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CycloMatrix {
    n: usize,
    data: Vec<CycloNumber>,
}

impl CycloMatrix {
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> CycloNumber) -> Self {
        let data = (0..n * n).map(|idx| f(idx / n, idx % n)).collect();
        CycloMatrix { n, data }
    }

    pub fn from_int(m: &IntMatrix) -> Self {
        assert!(m.is_square());
        Self::from_fn(m.rows(), |i, j| CycloNumber::from_integer(m[(i, j)]))
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &CycloNumber {
        &self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[CycloNumber] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn mul(&self, rhs: &CycloMatrix) -> CycloMatrix {
        assert_eq!(self.n, rhs.n);
        let n = self.n;
        CycloMatrix::from_fn(n, |i, j| {
            CycloNumber::dot((0..n).map(|k| (self.get(i, k), rhs.get(k, j))))
        })
    }

    pub fn mul_vec(&self, v: &[CycloNumber]) -> Vec<CycloNumber> {
        assert_eq!(self.n, v.len());
        (0..self.n)
            .map(|i| CycloNumber::dot(self.row(i).iter().zip(v)))
            .collect()
    }

    pub fn trace(&self) -> CycloNumber {
        CycloNumber::sum((0..self.n).map(|i| self.get(i, i)))
    }

    pub fn to_rows(&self) -> Vec<Vec<CycloNumber>> {
        self.data.chunks(self.n.max(1)).map(|r| r.to_vec()).take(self.n).collect()
    }
}

/// `sum_k int[i][k] * cyc[k][j]`, exploiting integer weights.
pub fn int_times_cyclo(a: &IntMatrix, b: &CycloMatrix) -> CycloMatrix {
    let n = b.size();
    CycloMatrix::from_fn(n, |i, j| {
        CycloNumber::linear_combination((0..n).map(|k| (a[(i, k)], b.get(k, j))))
    })
}

/// `sum_k cyc[i][k] * int[k][j]`.
pub fn cyclo_times_int(a: &CycloMatrix, b: &IntMatrix) -> CycloMatrix {
    let n = a.size();
    CycloMatrix::from_fn(n, |i, j| {
        CycloNumber::linear_combination((0..n).map(|k| (b[(k, j)], a.get(i, k))))
    })
}


/// Rational nullspace of an integer system `rows . x = 0` in reduced form:
/// one vector per free column `f`, equal to 1 at `f` and 0 at the other free
/// columns. Returns the free columns alongside the vectors.
pub fn nullspace(rows: &[Vec<num_bigint::BigInt>], ncols: usize) -> (Vec<usize>, Vec<Vec<num_rational::BigRational>>) {
    use num_traits::ToPrimitive;
    let small: Option<Vec<Vec<i128>>> = rows.iter().map(|r| r.iter().map(|x| x.to_i128()).collect()).collect();
    let pivots = small
        .and_then(|rs| reduce_rows(rs, ncols))
        .map(|ps| {
            ps.into_iter()
                .map(|(c, r)| (c, r.into_iter().map(num_bigint::BigInt::from).collect()))
                .collect()
        })
        .unwrap_or_else(|| reduce_rows(rows.to_vec(), ncols).expect("bigint elimination cannot overflow"));
    nullspace_from_pivots(&pivots, ncols)
}

fn nullspace_from_pivots(
    pivots: &[(usize, Vec<num_bigint::BigInt>)],
    ncols: usize,
) -> (Vec<usize>, Vec<Vec<num_rational::BigRational>>) {
    use num_rational::BigRational;
    use num_traits::{One, Zero};
    let mut is_pivot = vec![false; ncols];
    for (c, _) in pivots {
        is_pivot[*c] = true;
    }
    let free: Vec<usize> = (0..ncols).filter(|&c| !is_pivot[c]).collect();
    let basis = free
        .iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); ncols];
            v[f] = BigRational::one();
            for (c, r) in pivots {
                if !Zero::is_zero(&r[f]) {
                    v[*c] = -BigRational::new(r[f].clone(), r[*c].clone());
                }
            }
            v
        })
        .collect();
    (free, basis)
}

/// Divide by the content and make the leading entry positive.
fn normalize<T: Coeff>(r: &mut [T]) -> Option<()> {
    let mut g = T::zero();
    for x in r.iter() {
        if !x.is_zero() {
            g = g.gcd(x)?;
        }
    }
    if g.is_zero() {
        return Some(());
    }
    let lead_neg = r.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    let g = if lead_neg { g.neg()? } else { g };
    if !g.is_one() {
        for x in r.iter_mut() {
            *x = x.div_exact(&g);
        }
    }
    Some(())
}

/// `r <- p[c] r - r[c] p`, which clears column `c` of `r`.
fn clear<T: Coeff>(r: &mut [T], p: &[T], c: usize) -> Option<()> {
    let (a, b) = (p[c].clone(), r[c].clone());
    for (x, y) in r.iter_mut().zip(p) {
        *x = x.mul(&a)?.sub(&y.mul(&b)?)?;
    }
    normalize(r)
}

/// Fraction-free Gauss-Jordan: pivot rows with zeros in every other pivot
/// column. `None` on overflow.
fn reduce_rows<T: Coeff>(rows: Vec<Vec<T>>, ncols: usize) -> Option<Vec<(usize, Vec<T>)>> {
    let mut pivots: Vec<(usize, Vec<T>)> = Vec::new();
    for mut r in rows {
        if pivots.len() == ncols {
            break;
        }
        for (c, p) in &pivots {
            if !r[*c].is_zero() {
                clear(&mut r, p, *c)?;
            }
        }
        let Some(lead) = r.iter().position(|x| !x.is_zero()) else {
            continue;
        };
        normalize(&mut r)?;
        for (_, p) in pivots.iter_mut() {
            if !p[lead].is_zero() {
                clear(p, &r, lead)?;
            }
        }
        pivots.push((lead, r));
    }
    Some(pivots)
}
