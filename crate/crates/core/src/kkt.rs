//! Direct solution of the bordered saddle-point system
//!
//! ```text
//! [ K  Cᵀ ] [ x ]   [ f ]
//! [ C  0  ] [ y ] = [ g ]
//! ```
//!
//! The matrix is symmetric but indefinite. It is permuted so that the
//! unknowns of each mesh node are contiguous (which makes it banded),
//! equilibrated with Ruiz scaling and factored by LU with partial pivoting.
//! A dense LU is available for small systems and as a reference.

use nalgebra::{DMatrix, DVector};

use crate::error::SolverError;
use crate::sparse::{CooMatrix, CsrMatrix};

/// Pivots below this magnitude (after equilibration) flag a singular system.
pub const PIVOT_TOLERANCE: f64 = 1e-12;

const RUIZ_SWEEPS: usize = 12;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum LinearSolver {
    /// Band LU on a node-interleaved ordering.
    #[default]
    Banded,
    /// Dense LU of the full bordered matrix.
    Dense,
}

/// Solution of the bordered system.
#[derive(Clone, Debug, PartialEq)]
pub struct KktSolution {
    pub primal: Vec<f64>,
    /// One multiplier per row of `C`; rows without entries get zero.
    pub dual: Vec<f64>,
}

/// Ordering hints: a key (typically the mesh node) for every primal unknown
/// and every constraint row. Unknowns are sorted by key before factoring.
#[derive(Clone, Debug, Default)]
pub struct OrderingKeys<'a> {
    pub primal: Option<&'a [usize]>,
    pub dual: Option<&'a [usize]>,
}

pub fn solve_bordered(
    k: &CsrMatrix,
    c: &CsrMatrix,
    f: &[f64],
    g: &[f64],
    keys: &OrderingKeys<'_>,
    solver: LinearSolver,
) -> Result<KktSolution, SolverError> {
    let n = k.nrows();
    check_dim("stiffness columns", n, k.ncols())?;
    check_dim("constraint columns", n, c.ncols())?;
    check_dim("force vector", n, f.len())?;
    check_dim("constraint vector", c.nrows(), g.len())?;

    let active: Vec<usize> = (0..c.nrows())
        .filter(|&r| c.row(r).any(|(_, v)| v != 0.0))
        .collect();
    let size = n + active.len();

    // unknown order: position p holds original unknown order[p]
    let mut order: Vec<usize> = (0..size).collect();
    let key_of = |u: usize| -> usize {
        if u < n {
            keys.primal.map_or(0, |kk| kk[u])
        } else {
            keys.dual.map_or(0, |kk| kk[active[u - n]])
        }
    };
    if keys.primal.is_some() || keys.dual.is_some() {
        order.sort_by_key(|&u| (key_of(u), u >= n, u));
    }
    let mut position = vec![0usize; size];
    for (p, &u) in order.iter().enumerate() {
        position[u] = p;
    }

    let mut coo = CooMatrix::with_capacity(size, size, k.nnz() + 2 * c.nnz());
    for (r, col, v) in k.triplets() {
        coo.push(position[r], position[col], v);
    }
    for (a, &r) in active.iter().enumerate() {
        let row = position[n + a];
        for (col, v) in c.row(r) {
            coo.push(row, position[col], v);
            coo.push(position[col], row, v);
        }
    }
    let matrix = coo.to_csr();

    let mut rhs = vec![0.0; size];
    for i in 0..n {
        rhs[position[i]] = f[i];
    }
    for (a, &r) in active.iter().enumerate() {
        rhs[position[n + a]] = g[r];
    }

    let scale = ruiz_scaling(&matrix);
    let scaled_rhs: Vec<f64> = rhs.iter().zip(&scale).map(|(b, d)| b * d).collect();
    let z = match solver {
        LinearSolver::Banded => {
            let (kl, ku) = bandwidths(&matrix);
            let lu = BandedLu::factor(&matrix, &scale, kl, ku)?;
            lu.solve(scaled_rhs)
        }
        LinearSolver::Dense => dense_solve(&matrix, &scale, scaled_rhs)?,
    };

    let mut primal = vec![0.0; n];
    let mut dual = vec![0.0; c.nrows()];
    for i in 0..n {
        let p = position[i];
        primal[i] = z[p] * scale[p];
    }
    for (a, &r) in active.iter().enumerate() {
        let p = position[n + a];
        dual[r] = z[p] * scale[p];
    }
    Ok(KktSolution { primal, dual })
}

fn check_dim(what: &'static str, expected: usize, got: usize) -> Result<(), SolverError> {
    if expected == got {
        Ok(())
    } else {
        Err(SolverError::DimensionMismatch {
            what,
            expected,
            got,
        })
    }
}

/// Symmetric diagonal scaling `D` such that `D A D` has rows of unit
/// max-norm (approximately).
fn ruiz_scaling(a: &CsrMatrix) -> Vec<f64> {
    let n = a.nrows();
    let mut d = vec![1.0; n];
    for _ in 0..RUIZ_SWEEPS {
        let mut row_max = vec![0.0f64; n];
        for (r, c, v) in a.triplets() {
            let s = (v * d[r] * d[c]).abs();
            if s > row_max[r] {
                row_max[r] = s;
            }
        }
        let mut converged = true;
        for (di, m) in d.iter_mut().zip(&row_max) {
            if *m > 0.0 {
                if (1.0 - m).abs() > 1e-3 {
                    converged = false;
                }
                *di /= m.sqrt();
            }
        }
        if converged {
            break;
        }
    }
    d
}

fn bandwidths(a: &CsrMatrix) -> (usize, usize) {
    a.triplets().fold((0, 0), |(kl, ku), (r, c, _)| {
        if r > c {
            (kl.max(r - c), ku)
        } else {
            (kl, ku.max(c - r))
        }
    })
}

/// LU factorization with partial pivoting in band storage. Row `i` keeps
/// columns `i − kl ..= i + kl + ku` to absorb fill from row interchanges.
struct BandedLu {
    n: usize,
    kl: usize,
    ku: usize,
    width: usize,
    upper: Vec<f64>,
    lower: Vec<f64>,
    pivots: Vec<usize>,
}

impl BandedLu {
    fn factor(a: &CsrMatrix, scale: &[f64], kl: usize, ku: usize) -> Result<Self, SolverError> {
        let n = a.nrows();
        let width = 2 * kl + ku + 1;
        let mut lu = BandedLu {
            n,
            kl,
            ku,
            width,
            upper: vec![0.0; n * width],
            lower: vec![0.0; n * kl],
            pivots: vec![0; n],
        };
        for (r, c, v) in a.triplets() {
            let idx = lu.at(r, c);
            lu.upper[idx] = v * scale[r] * scale[c];
        }

        for k in 0..n {
            let last_row = (k + kl).min(n - 1);
            let last_col = (k + kl + ku).min(n - 1);
            let mut p = k;
            let mut best = lu.upper[lu.at(k, k)].abs();
            for i in k + 1..=last_row {
                let v = lu.upper[lu.at(i, k)].abs();
                if v > best {
                    best = v;
                    p = i;
                }
            }
            if best.is_nan() || best <= PIVOT_TOLERANCE {
                return Err(SolverError::SingularKkt {
                    step: k,
                    size: n,
                    pivot: best,
                });
            }
            lu.pivots[k] = p;
            if p != k {
                for j in k..=last_col {
                    let (x, y) = (lu.at(k, j), lu.at(p, j));
                    lu.upper.swap(x, y);
                }
            }
            let pivot = lu.upper[lu.at(k, k)];
            for i in k + 1..=last_row {
                let ik = lu.at(i, k);
                let factor = lu.upper[ik] / pivot;
                lu.upper[ik] = 0.0;
                lu.lower[k * kl + (i - k - 1)] = factor;
                if factor != 0.0 {
                    for j in k + 1..=last_col {
                        let kj = lu.upper[lu.at(k, j)];
                        let ij = lu.at(i, j);
                        lu.upper[ij] -= factor * kj;
                    }
                }
            }
        }
        Ok(lu)
    }

    #[inline]
    fn at(&self, i: usize, j: usize) -> usize {
        debug_assert!(j + self.kl >= i && j <= i + self.kl + self.ku);
        i * self.width + (j + self.kl - i)
    }

    fn solve(&self, mut b: Vec<f64>) -> Vec<f64> {
        let n = self.n;
        for k in 0..n {
            b.swap(k, self.pivots[k]);
            let bk = b[k];
            let last = (k + self.kl).min(n - 1);
            let multipliers = &self.lower[k * self.kl..];
            for (bi, l) in b[k + 1..=last].iter_mut().zip(multipliers) {
                *bi -= l * bk;
            }
        }
        for i in (0..n).rev() {
            let last = (i + self.kl + self.ku).min(n - 1);
            let s = (i + 1..=last).fold(b[i], |s, j| s - self.upper[self.at(i, j)] * b[j]);
            b[i] = s / self.upper[self.at(i, i)];
        }
        b
    }
}

fn dense_solve(a: &CsrMatrix, scale: &[f64], b: Vec<f64>) -> Result<Vec<f64>, SolverError> {
    let n = a.nrows();
    let mut m = DMatrix::zeros(n, n);
    for (r, c, v) in a.triplets() {
        m[(r, c)] = v * scale[r] * scale[c];
    }
    let lu = m.lu();
    let u = lu.u();
    if let Some((step, pivot)) = (0..n)
        .map(|i| (i, u[(i, i)].abs()))
        .find(|&(_, p)| p.is_nan() || p <= PIVOT_TOLERANCE)
    {
        return Err(SolverError::SingularKkt {
            step,
            size: n,
            pivot,
        });
    }
    let x = lu
        .solve(&DVector::from_vec(b))
        .ok_or(SolverError::SingularKkt {
            step: 0,
            size: n,
            pivot: 0.0,
        })?;
    Ok(x.iter().copied().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn csr(rows: usize, cols: usize, dense: &[f64]) -> CsrMatrix {
        let mut coo = CooMatrix::new(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                let v = dense[r * cols + c];
                if v != 0.0 {
                    coo.push(r, c, v);
                }
            }
        }
        coo.to_csr()
    }

    #[test]
    fn hand_solved_bordered_system() {
        // δd₁ + λ = −1, δd₂ = 0, δd₁ = 0  ⇒  δd = (0, 0), λ = −1
        let k = csr(2, 2, &[1.0, 0.0, 0.0, 1.0]);
        let c = csr(1, 2, &[1.0, 0.0]);
        for solver in [LinearSolver::Banded, LinearSolver::Dense] {
            let s = solve_bordered(
                &k,
                &c,
                &[-1.0, 0.0],
                &[0.0],
                &OrderingKeys::default(),
                solver,
            )
            .unwrap();
            assert!(s.primal.iter().all(|v| v.abs() < 1e-15), "{solver:?}");
            assert!((s.dual[0] + 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn zero_rhs_gives_zero() {
        let k = csr(2, 2, &[2.0, 1.0, 1.0, 3.0]);
        let c = csr(1, 2, &[1.0, 1.0]);
        let s = solve_bordered(
            &k,
            &c,
            &[0.0, 0.0],
            &[0.0],
            &OrderingKeys::default(),
            LinearSolver::Banded,
        )
        .unwrap();
        assert_eq!(s.primal, vec![0.0, 0.0]);
        assert_eq!(s.dual, vec![0.0]);
    }

    #[test]
    fn empty_constraint_rows_are_inactive() {
        let k = csr(2, 2, &[4.0, 0.0, 0.0, 1.0]);
        let c = csr(2, 2, &[0.0, 0.0, 0.0, 1.0]);
        let s = solve_bordered(
            &k,
            &c,
            &[8.0, 1.0],
            &[0.0, 0.5],
            &OrderingKeys::default(),
            LinearSolver::Banded,
        )
        .unwrap();
        assert!((s.primal[0] - 2.0).abs() < 1e-14);
        assert!((s.primal[1] - 0.5).abs() < 1e-14);
        assert_eq!(s.dual[0], 0.0);
        assert!((s.dual[1] - 0.5).abs() < 1e-14);
    }

    #[test]
    fn singular_system_is_reported() {
        // free-free bar: rigid translation is not restrained
        let k = csr(2, 2, &[1.0, -1.0, -1.0, 1.0]);
        let c = CooMatrix::new(0, 2).to_csr();
        for solver in [LinearSolver::Banded, LinearSolver::Dense] {
            let err = solve_bordered(&k, &c, &[1.0, -1.0], &[], &OrderingKeys::default(), solver)
                .unwrap_err();
            assert!(matches!(err, SolverError::SingularKkt { .. }));
            assert!(err.to_string().contains("supports"));
        }
    }

    #[test]
    fn banded_lu_pivots_across_zero_diagonal() {
        // zero leading diagonal forces a row interchange
        let a = csr(3, 3, &[0.0, 2.0, 0.0, 1.0, 1.0, 3.0, 0.0, 4.0, 5.0]);
        let (kl, ku) = bandwidths(&a);
        let lu = BandedLu::factor(&a, &[1.0; 3], kl, ku).unwrap();
        let x = lu.solve(vec![2.0, 5.0, 9.0]);
        let back = a.mul_vec(&x);
        for (b, want) in back.iter().zip([2.0, 5.0, 9.0]) {
            assert!((b - want).abs() < 1e-14);
        }
    }
}
