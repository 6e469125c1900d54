//! Fixed-size 4×4 symmetric eigensolver and linear solver.

use super::NumericsError;

/// Four-component real vector (the jitter angle space).
pub type Vec4 = [f64; 4];

const SYMMETRY_RTOL: f64 = 1e-12;

/// Real symmetric 4×4 matrix, validated at construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymMatrix4 {
    entries: [[f64; 4]; 4],
}

impl SymMatrix4 {
    /// Builds a symmetric matrix, rejecting non-finite entries and
    /// asymmetry beyond `1e-12` relative to the largest entry.
    pub fn new(entries: [[f64; 4]; 4]) -> Result<Self, NumericsError> {
        let mut max_abs = 0.0f64;
        for row in &entries {
            for &v in row {
                if !v.is_finite() {
                    return Err(NumericsError::NonFinite("matrix entry"));
                }
                max_abs = max_abs.max(v.abs());
            }
        }
        let tol = SYMMETRY_RTOL * max_abs.max(1e-300);
        for i in 0..4 {
            for j in (i + 1)..4 {
                let diff = (entries[i][j] - entries[j][i]).abs();
                if diff > tol {
                    return Err(NumericsError::NotSymmetric { i, j, diff });
                }
            }
        }
        // Average the off-diagonal pairs so the stored matrix is exactly
        // symmetric even when the input only met the tolerance.
        let mut e = entries;
        for i in 0..4 {
            for j in (i + 1)..4 {
                let avg = 0.5 * (e[i][j] + e[j][i]);
                e[i][j] = avg;
                e[j][i] = avg;
            }
        }
        Ok(Self { entries: e })
    }

    /// Diagonal matrix from the given entries.
    pub fn diag(d: Vec4) -> Self {
        let mut e = [[0.0; 4]; 4];
        for i in 0..4 {
            e[i][i] = d[i];
        }
        Self { entries: e }
    }

    /// Identity matrix.
    pub fn identity() -> Self {
        Self::diag([1.0; 4])
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i][j]
    }

    pub fn entries(&self) -> &[[f64; 4]; 4] {
        &self.entries
    }

    /// Matrix-vector product `A v`.
    pub fn mul_vec(&self, v: &Vec4) -> Vec4 {
        let mut out = [0.0; 4];
        for i in 0..4 {
            out[i] = (0..4).map(|j| self.entries[i][j] * v[j]).sum();
        }
        out
    }

    /// Quadratic form `vᵀ A v`.
    pub fn quad_form(&self, v: &Vec4) -> f64 {
        let av = self.mul_vec(v);
        (0..4).map(|i| v[i] * av[i]).sum()
    }

    /// Frobenius norm.
    pub fn fro_norm(&self) -> f64 {
        self.entries
            .iter()
            .flatten()
            .map(|v| v * v)
            .sum::<f64>()
            .sqrt()
    }

    /// Trace.
    pub fn trace(&self) -> f64 {
        (0..4).map(|i| self.entries[i][i]).sum()
    }
}

/// Eigen-decomposition of a symmetric 4×4 matrix: `A = V diag(λ) Vᵀ`.
///
/// Eigenvalues are sorted descending; eigenvectors are the corresponding
/// columns of `vectors` and form an orthonormal set.
#[derive(Debug, Clone)]
pub struct EigenDecomp {
    pub values: Vec4,
    pub vectors: [[f64; 4]; 4],
}

impl EigenDecomp {
    /// Column `k` of the eigenvector matrix.
    pub fn vector(&self, k: usize) -> Vec4 {
        let mut v = [0.0; 4];
        for i in 0..4 {
            v[i] = self.vectors[i][k];
        }
        v
    }
}

/// Full eigen-decomposition by cyclic Jacobi rotations.
///
/// Sweeps until the largest off-diagonal magnitude falls below
/// `1e-14 · ‖A‖_F`. For 4×4 symmetric input this converges in a handful
/// of sweeps and is accurate to machine precision.
pub fn jacobi_eigen(m: &SymMatrix4) -> EigenDecomp {
    let mut a = *m.entries();
    let mut v = [[0.0; 4]; 4];
    for i in 0..4 {
        v[i][i] = 1.0;
    }
    let threshold = 1e-14 * m.fro_norm().max(1e-300);

    for _sweep in 0..50 {
        let mut off_max = 0.0f64;
        for p in 0..3 {
            for q in (p + 1)..4 {
                off_max = off_max.max(a[p][q].abs());
            }
        }
        if off_max < threshold {
            break;
        }
        for p in 0..3 {
            for q in (p + 1)..4 {
                if a[p][q].abs() < threshold * 1e-2 {
                    continue;
                }
                // Jacobi rotation annihilating a[p][q].
                let theta = 0.5 * (a[q][q] - a[p][p]) / a[p][q];
                let t = if theta.abs() > 1e30 {
                    0.5 / theta
                } else {
                    let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
                    sign / (theta.abs() + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                for k in 0..4 {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..4 {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for k in 0..4 {
                    let vkp = v[k][p];
                    let vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }

    // Sort eigenpairs descending by eigenvalue.
    let mut order = [0usize, 1, 2, 3];
    order.sort_by(|&i, &j| a[j][j].partial_cmp(&a[i][i]).unwrap());
    let mut values = [0.0; 4];
    let mut vectors = [[0.0; 4]; 4];
    for (dst, &src) in order.iter().enumerate() {
        values[dst] = a[src][src];
        for row in 0..4 {
            vectors[row][dst] = v[row][src];
        }
    }
    EigenDecomp { values, vectors }
}

/// Solves `A x = b` by Gaussian elimination with partial pivoting.
///
/// The answer coincides with Cramer's rule on well-posed systems;
/// elimination is used for numerical robustness. Fails with a
/// singular-matrix error (carrying the determinant estimate) when
/// `|det A|` falls below `1e-14 · ‖A‖_F⁴`.
pub fn solve4(a: &[[f64; 4]; 4], b: &Vec4) -> Result<Vec4, NumericsError> {
    check_finite_4x4(a)?;
    if b.iter().any(|v| !v.is_finite()) {
        return Err(NumericsError::NonFinite("rhs entry"));
    }
    let mut aug = vec![vec![0.0; 5]; 4];
    for i in 0..4 {
        aug[i][..4].copy_from_slice(&a[i]);
        aug[i][4] = b[i];
    }
    let norm = fro_norm_4x4(a).max(1e-300);
    let threshold = 1e-14 * norm.powi(4);
    let det = eliminate(&mut aug)?;
    if det.abs() < threshold {
        return Err(NumericsError::Singular { det, threshold });
    }
    let mut x = [0.0; 4];
    for i in (0..4).rev() {
        let mut s = aug[i][4];
        for j in (i + 1)..4 {
            s -= aug[i][j] * x[j];
        }
        x[i] = s / aug[i][i];
    }
    Ok(x)
}

/// Determinant via LU with partial pivoting.
pub fn det4(a: &[[f64; 4]; 4]) -> Result<f64, NumericsError> {
    check_finite_4x4(a)?;
    let mut rows = vec![vec![0.0; 4]; 4];
    for i in 0..4 {
        rows[i].copy_from_slice(&a[i]);
    }
    eliminate(&mut rows)
}

/// In-place forward elimination with partial pivoting over an n×(n+k)
/// augmented system; returns the determinant of the leading n×n block.
/// A zero pivot column makes the determinant exactly zero.
fn eliminate(rows: &mut [Vec<f64>]) -> Result<f64, NumericsError> {
    let n = rows.len();
    let mut det = 1.0f64;
    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&i, &j| rows[i][col].abs().partial_cmp(&rows[j][col].abs()).unwrap())
            .unwrap();
        if rows[pivot_row][col] == 0.0 {
            return Ok(0.0);
        }
        if pivot_row != col {
            rows.swap(pivot_row, col);
            det = -det;
        }
        det *= rows[col][col];
        for r in (col + 1)..n {
            let factor = rows[r][col] / rows[col][col];
            if factor == 0.0 {
                continue;
            }
            for c in col..rows[r].len() {
                let sub = factor * rows[col][c];
                rows[r][c] -= sub;
            }
        }
    }
    if !det.is_finite() {
        return Err(NumericsError::NonFinite("determinant"));
    }
    Ok(det)
}

/// Solves a small dense n×n system (used by the gamma-series moment fit).
/// Returns the solution together with an ∞-norm condition estimate
/// obtained from the explicitly accumulated inverse.
pub(crate) fn solve_small(
    a: &[Vec<f64>],
    b: &[f64],
) -> Result<(Vec<f64>, f64), NumericsError> {
    let n = a.len();
    // Augment with rhs and identity so one elimination yields x and A⁻¹.
    let mut aug: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let mut row = a[i].clone();
            row.push(b[i]);
            for j in 0..n {
                row.push(if i == j { 1.0 } else { 0.0 });
            }
            row
        })
        .collect();
    let det = eliminate(&mut aug)?;
    if det == 0.0 {
        return Err(NumericsError::Singular {
            det: 0.0,
            threshold: 0.0,
        });
    }
    let width = aug[0].len();
    // Back substitution over every augmented column.
    for col in n..width {
        for i in (0..n).rev() {
            let mut s = aug[i][col];
            for j in (i + 1)..n {
                s -= aug[i][j] * aug[j][col];
            }
            aug[i][col] = s / aug[i][i];
        }
    }
    let x: Vec<f64> = (0..n).map(|i| aug[i][n]).collect();
    let norm_a = inf_norm(a);
    let norm_inv = (0..n)
        .map(|i| (0..n).map(|j| aug[i][n + 1 + j].abs()).sum::<f64>())
        .fold(0.0f64, f64::max);
    Ok((x, norm_a * norm_inv))
}

fn inf_norm(a: &[Vec<f64>]) -> f64 {
    a.iter()
        .map(|row| row.iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0f64, f64::max)
}

fn check_finite_4x4(a: &[[f64; 4]; 4]) -> Result<(), NumericsError> {
    if a.iter().flatten().any(|v| !v.is_finite()) {
        return Err(NumericsError::NonFinite("matrix entry"));
    }
    Ok(())
}

fn fro_norm_4x4(a: &[[f64; 4]; 4]) -> f64 {
    a.iter().flatten().map(|v| v * v).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn max_abs_diff(a: &[[f64; 4]; 4], b: &[[f64; 4]; 4]) -> f64 {
        let mut m = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                m = m.max((a[i][j] - b[i][j]).abs());
            }
        }
        m
    }

    fn reconstruct(d: &EigenDecomp) -> [[f64; 4]; 4] {
        let mut out = [[0.0; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                out[i][j] = (0..4)
                    .map(|k| d.vectors[i][k] * d.values[k] * d.vectors[j][k])
                    .sum();
            }
        }
        out
    }

    #[test]
    fn jacobi_identity() {
        let d = jacobi_eigen(&SymMatrix4::identity());
        for v in d.values {
            assert!((v - 1.0).abs() < 1e-14);
        }
        // V orthogonal
        for i in 0..4 {
            for j in 0..4 {
                let dot: f64 = (0..4).map(|k| d.vectors[k][i] * d.vectors[k][j]).sum();
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((dot - expect).abs() < 1e-12, "VtV[{i}][{j}] = {dot}");
            }
        }
    }

    #[test]
    fn jacobi_diagonal_sorted() {
        let d = jacobi_eigen(&SymMatrix4::diag([3.0, -1.0, 2.0, 0.0]));
        assert_eq!(d.values, [3.0, 2.0, 0.0, -1.0]);
        for k in 0..4 {
            let v = d.vector(k);
            let norm: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            assert!((norm - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn jacobi_reconstructs_random_symmetric() {
        // Fixed pseudo-random symmetric matrices; reconstruction oracle.
        let mut state = 0x12345678u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
        };
        for _ in 0..50 {
            let mut e = [[0.0; 4]; 4];
            for i in 0..4 {
                for j in i..4 {
                    let v = next() * 5.0;
                    e[i][j] = v;
                    e[j][i] = v;
                }
            }
            let m = SymMatrix4::new(e).unwrap();
            let d = jacobi_eigen(&m);
            let rec = reconstruct(&d);
            let scale = m.fro_norm().max(1.0);
            assert!(
                max_abs_diff(&rec, m.entries()) < 1e-10 * scale,
                "reconstruction error too large"
            );
            let trace_sum: f64 = d.values.iter().sum();
            assert!((trace_sum - m.trace()).abs() < 1e-12 * scale.max(1.0) * 10.0);
        }
    }

    #[test]
    fn symmetry_rejected() {
        let mut e = [[0.0; 4]; 4];
        e[0][1] = 1.0;
        e[1][0] = 1.5;
        assert!(matches!(
            SymMatrix4::new(e),
            Err(NumericsError::NotSymmetric { .. })
        ));
    }

    #[test]
    fn solve_identity_and_diagonal() {
        let i4 = *SymMatrix4::identity().entries();
        let x = solve4(&i4, &[1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!(x, [1.0, 2.0, 3.0, 4.0]);

        let d = *SymMatrix4::diag([2.0, 4.0, 5.0, 10.0]).entries();
        let x = solve4(&d, &[2.0, 4.0, 5.0, 10.0]).unwrap();
        for v in x {
            assert!((v - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn det_identity_and_diagonal() {
        let i4 = *SymMatrix4::identity().entries();
        assert_eq!(det4(&i4).unwrap(), 1.0);
        let d = *SymMatrix4::diag([1.0, 2.0, 3.0, 4.0]).entries();
        assert!((det4(&d).unwrap() - 24.0).abs() < 1e-12);
    }

    #[test]
    fn singular_reports_det() {
        let mut e = [[0.0; 4]; 4];
        e[0][0] = 1.0;
        e[1][1] = 1.0;
        e[2][2] = 1.0;
        // last row all zero -> singular
        let err = solve4(&e, &[1.0, 1.0, 1.0, 1.0]).unwrap_err();
        assert!(matches!(err, NumericsError::Singular { .. }));
    }

    #[test]
    fn solve_small_wellposed() {
        let a = vec![
            vec![4.0, 1.0, 0.0],
            vec![1.0, 3.0, 1.0],
            vec![0.0, 1.0, 2.0],
        ];
        let b = vec![1.0, 2.0, 3.0];
        let (x, cond) = solve_small(&a, &b).unwrap();
        // residual check
        for i in 0..3 {
            let r: f64 = (0..3).map(|j| a[i][j] * x[j]).sum::<f64>() - b[i];
            assert!(r.abs() < 1e-12);
        }
        assert!(cond > 1.0 && cond < 100.0);
    }
}
