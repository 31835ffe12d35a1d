//! Dense symmetric eigensolver by cyclic Jacobi rotations.
//!
//! Used directly for small blocks and as the reference the iterative solver
//! is checked against.

/// Row-major square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(dim: usize) -> Self {
        DenseMatrix {
            dim,
            data: vec![0.0; dim * dim],
        }
    }

    pub fn from_rows(rows: &[&[f64]]) -> Self {
        let dim = rows.len();
        let mut m = Self::zeros(dim);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), dim, "matrix must be square");
            m.data[i * dim..(i + 1) * dim].copy_from_slice(row);
        }
        m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.dim + j] = v;
    }

    fn off_diagonal_sq(&self) -> f64 {
        let n = self.dim;
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += self.get(i, j).powi(2);
                }
            }
        }
        s
    }

    fn frobenius_sq(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum()
    }
}

/// Eigen-decomposition with eigenvalues ascending; `vectors[k]` is the unit
/// eigenvector for `values[k]`.
#[derive(Debug, Clone)]
pub struct SymmetricEigen {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
    pub sweeps: usize,
}

const MAX_SWEEPS: usize = 100;

/// Full eigen-decomposition of a symmetric matrix.
pub fn jacobi_eigen(a: &DenseMatrix) -> SymmetricEigen {
    let n = a.dim();
    let mut a = a.clone();
    // v holds the accumulated rotations; its columns are the eigenvectors.
    let mut v = DenseMatrix::zeros(n);
    for i in 0..n {
        v.set(i, i, 1.0);
    }
    let scale = a.frobenius_sq();
    let mut sweeps = 0;
    while sweeps < MAX_SWEEPS && a.off_diagonal_sq() > f64::EPSILON.powi(2) * scale {
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a.get(p, q);
                if apq == 0.0 {
                    continue;
                }
                let tau = (a.get(q, q) - a.get(p, p)) / (2.0 * apq);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                rotate(&mut a, &mut v, p, q, c, s);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a.get(i, i).total_cmp(&a.get(j, j)));
    SymmetricEigen {
        values: order.iter().map(|&k| a.get(k, k)).collect(),
        vectors: order
            .iter()
            .map(|&k| (0..n).map(|i| v.get(i, k)).collect())
            .collect(),
        sweeps,
    }
}

/// `A <- J^T A J`, `V <- V J` for the plane rotation `J` in `(p, q)`.
fn rotate(a: &mut DenseMatrix, v: &mut DenseMatrix, p: usize, q: usize, c: f64, s: f64) {
    let n = a.dim();
    for k in 0..n {
        let (akp, akq) = (a.get(k, p), a.get(k, q));
        a.set(k, p, c * akp - s * akq);
        a.set(k, q, s * akp + c * akq);
    }
    for k in 0..n {
        let (apk, aqk) = (a.get(p, k), a.get(q, k));
        a.set(p, k, c * apk - s * aqk);
        a.set(q, k, s * apk + c * aqk);
    }
    a.set(p, q, 0.0);
    a.set(q, p, 0.0);
    for k in 0..n {
        let (vkp, vkq) = (v.get(k, p), v.get(k, q));
        v.set(k, p, c * vkp - s * vkq);
        v.set(k, q, s * vkp + c * vkq);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn residual(a: &DenseMatrix, lambda: f64, x: &[f64]) -> f64 {
        let n = a.dim();
        (0..n)
            .map(|i| {
                let ax: f64 = (0..n).map(|j| a.get(i, j) * x[j]).sum();
                (ax - lambda * x[i]).powi(2)
            })
            .sum::<f64>()
            .sqrt()
    }

    #[test]
    fn two_by_two_path_block() {
        // characteristic polynomial l^2 - 3l + 1
        let a = DenseMatrix::from_rows(&[&[2.0, -1.0], &[-1.0, 1.0]]);
        let e = jacobi_eigen(&a);
        assert!((e.values[0] - (3.0 - 5f64.sqrt()) / 2.0).abs() < 1e-15);
        assert!((e.values[1] - (3.0 + 5f64.sqrt()) / 2.0).abs() < 1e-14);
        for k in 0..2 {
            assert!(residual(&a, e.values[k], &e.vectors[k]) < 1e-14);
        }
    }

    #[test]
    fn three_by_three_tridiagonal() {
        // [[2,-1,0],[-1,2,-1],[0,-1,2]] has eigenvalues 2 - sqrt2, 2, 2 + sqrt2.
        let a = DenseMatrix::from_rows(&[&[2.0, -1.0, 0.0], &[-1.0, 2.0, -1.0], &[0.0, -1.0, 2.0]]);
        let e = jacobi_eigen(&a);
        let want = [2.0 - 2f64.sqrt(), 2.0, 2.0 + 2f64.sqrt()];
        for (got, want) in e.values.iter().zip(want) {
            assert!((got - want).abs() < 1e-14);
        }
    }

    #[test]
    fn eigenvectors_are_orthonormal() {
        let a = DenseMatrix::from_rows(&[
            &[4.0, 1.0, -2.0, 0.5],
            &[1.0, 3.0, 0.0, -1.0],
            &[-2.0, 0.0, 5.0, 2.0],
            &[0.5, -1.0, 2.0, 1.0],
        ]);
        let e = jacobi_eigen(&a);
        for i in 0..4 {
            assert!(residual(&a, e.values[i], &e.vectors[i]) < 1e-13);
            for j in 0..4 {
                let d: f64 = e.vectors[i]
                    .iter()
                    .zip(&e.vectors[j])
                    .map(|(x, y)| x * y)
                    .sum();
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((d - want).abs() < 1e-13);
            }
        }
        let trace: f64 = e.values.iter().sum();
        assert!((trace - 13.0).abs() < 1e-13);
    }

    #[test]
    fn diagonal_input_needs_no_sweep() {
        let a = DenseMatrix::from_rows(&[&[3.0, 0.0], &[0.0, 1.0]]);
        let e = jacobi_eigen(&a);
        assert_eq!(e.sweeps, 0);
        assert_eq!(e.values, vec![1.0, 3.0]);
        assert_eq!(e.vectors[0], vec![0.0, 1.0]);
    }
}
