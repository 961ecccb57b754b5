//! Floating-point eigenvalue oracle for su(2) boundary graphs.

use nalgebra::DMatrix;

use crate::linalg::IntMatrix;

pub const EIGEN_TOLERANCE: f64 = 1e-9;

/// Eigenvalues of a symmetric integer matrix, ascending.
pub fn symmetric_eigenvalues(m: &IntMatrix) -> Vec<f64> {
    let n = m.rows();
    let dm = DMatrix::from_fn(n, n, |i, j| m[(i, j)] as f64);
    let mut ev: Vec<f64> = dm.symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Count eigenvalues of `adjacency` equal to `2 cos(pi (I + 1) / h)` for
/// `I = 0..h-1`, within [`EIGEN_TOLERANCE`]. An eigenvalue that matches no
/// such value is returned as the error.
pub fn su2_multiplicities(adjacency: &IntMatrix, level: usize) -> Result<Vec<usize>, f64> {
    let h = (level + 2) as f64;
    let targets: Vec<f64> = (0..=level)
        .map(|i| 2.0 * (std::f64::consts::PI * (i as f64 + 1.0) / h).cos())
        .collect();
    let mut counts = vec![0; level + 1];
    for ev in symmetric_eigenvalues(adjacency) {
        match targets.iter().position(|t| (t - ev).abs() < EIGEN_TOLERANCE) {
            Some(i) => counts[i] += 1,
            None => return Err(ev),
        }
    }
    Ok(counts)
}
