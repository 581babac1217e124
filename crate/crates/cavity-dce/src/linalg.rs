//! Dense linear-algebra kernels: eigenvalues of real non-symmetric
//! matrices, eigenvector extraction by inverse iteration, and LU
//! factorization over complex scalars.
//!
//! The eigenvalue path is the classical one: orthogonal Householder
//! reduction to upper Hessenberg form followed by Francis double-shift QR
//! iteration. Eigenvectors are then recovered one by one with shifted
//! inverse iteration and polished with Rayleigh-quotient updates until the
//! residual bound holds. Matrices here are at most a few hundred rows, so
//! clarity wins over blocking.

use ndarray::Array2;

use crate::{C64, Error, Result};

/// Eigendecomposition of a real matrix: complex eigenvalues with complex
/// eigenvectors (columns), plus the residual `||A v - lambda v||_2` achieved
/// for each pair.
#[derive(Debug, Clone)]
pub struct RealEigen {
    pub values: Vec<C64>,
    /// Column `a` is the unit eigenvector for `values[a]`.
    pub vectors: Array2<C64>,
    pub residuals: Vec<f64>,
}

/// Frobenius norm of a real matrix.
pub fn frobenius(a: &Array2<f64>) -> f64 {
    a.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Householder reduction of `h` to upper Hessenberg form (in place,
/// orthogonal similarity; the transform is not accumulated).
fn hessenberg_in_place(h: &mut Array2<f64>) {
    let n = h.nrows();
    for m in 1..n.saturating_sub(1) {
        // Pivot column m-1, eliminating rows m+1..n.
        let scale: f64 = (m..n).map(|i| h[[i, m - 1]].abs()).sum();
        if scale == 0.0 {
            continue;
        }
        let mut v: Vec<f64> = (m..n).map(|i| h[[i, m - 1]] / scale).collect();
        let mut sigma: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if v[0] < 0.0 {
            sigma = -sigma;
        }
        v[0] += sigma;
        let beta = sigma * v[0];
        if beta == 0.0 {
            continue;
        }
        // Apply P = I - v v^T / beta from the left and the right.
        for j in (m - 1)..n {
            let s: f64 = (m..n).map(|i| v[i - m] * h[[i, j]]).sum::<f64>() / beta;
            for i in m..n {
                h[[i, j]] -= s * v[i - m];
            }
        }
        for i in 0..n {
            let s: f64 = (m..n).map(|j| v[j - m] * h[[i, j]]).sum::<f64>() / beta;
            for j in m..n {
                h[[i, j]] -= s * v[j - m];
            }
        }
        h[[m, m - 1]] = -sigma * scale;
        for i in (m + 1)..n {
            h[[i, m - 1]] = 0.0;
        }
    }
}

/// Eigenvalues of a real matrix by Hessenberg reduction and Francis
/// double-shift QR iteration. Returned in the order the deflation finds
/// them; complex pairs are adjacent and conjugate.
pub fn eigenvalues(a: &Array2<f64>) -> Result<Vec<C64>> {
    if a.nrows() != a.ncols() {
        return Err(Error::DimensionMismatch(format!(
            "eigenvalue input must be square, got {}x{}",
            a.nrows(),
            a.ncols()
        )));
    }
    let n = a.nrows();
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut h = a.clone();
    hessenberg_in_place(&mut h);
    let mut eigs: Vec<C64> = Vec::with_capacity(n);

    let anorm: f64 = {
        let mut s = 0.0;
        for i in 0..n {
            for j in i.saturating_sub(1)..n {
                s += h[[i, j]].abs();
            }
        }
        if s == 0.0 {
            1.0
        } else {
            s
        }
    };

    let eps = f64::EPSILON;
    let mut nn = n as isize - 1;
    let mut t_shift = 0.0f64;
    'deflate: while nn >= 0 {
        let mut its = 0usize;
        loop {
            // Find the smallest l such that h[l][l-1] is negligible.
            let mut l = nn;
            while l >= 1 {
                let s = h[[(l - 1) as usize, (l - 1) as usize]].abs()
                    + h[[l as usize, l as usize]].abs();
                let s = if s == 0.0 { anorm } else { s };
                if h[[l as usize, (l - 1) as usize]].abs() <= eps * s {
                    h[[l as usize, (l - 1) as usize]] = 0.0;
                    break;
                }
                l -= 1;
            }
            let x = h[[nn as usize, nn as usize]];
            if l == nn {
                // One real eigenvalue.
                eigs.push(C64::new(x + t_shift, 0.0));
                nn -= 1;
                continue 'deflate;
            }
            let y = h[[(nn - 1) as usize, (nn - 1) as usize]];
            let w = h[[nn as usize, (nn - 1) as usize]] * h[[(nn - 1) as usize, nn as usize]];
            if l == nn - 1 {
                // A 2x2 block: real pair or conjugate complex pair.
                let p = 0.5 * (y - x);
                let q = p * p + w;
                let z = q.abs().sqrt();
                let xt = x + t_shift;
                if q >= 0.0 {
                    let z = p + z.copysign(p);
                    eigs.push(C64::new(xt + z, 0.0));
                    if z != 0.0 {
                        eigs.push(C64::new(xt - w / z, 0.0));
                    } else {
                        eigs.push(C64::new(xt, 0.0));
                    }
                } else {
                    eigs.push(C64::new(xt + p, z));
                    eigs.push(C64::new(xt + p, -z));
                }
                nn -= 2;
                continue 'deflate;
            }
            if its >= 60 {
                return Err(Error::EigenNonConvergence {
                    iterations: its,
                    worst_residual: h[[nn as usize, (nn - 1) as usize]].abs(),
                    partial_values: eigs,
                });
            }
            // Exceptional shifts every ten iterations to break cycles.
            let (mut x, mut y, mut w) = (x, y, w);
            if its == 10 || its == 20 || its == 30 || its == 40 || its == 50 {
                t_shift += x;
                for i in 0..=nn as usize {
                    h[[i, i]] -= x;
                }
                let s = h[[nn as usize, (nn - 1) as usize]].abs()
                    + h[[(nn - 1) as usize, (nn - 2) as usize]].abs();
                x = 0.75 * s;
                y = x;
                w = -0.4375 * s * s;
            }
            its += 1;

            // Form the first column of (H - a I)(H - b I) with the pair
            // (a, b) determined by the trailing 2x2.
            let mut m = nn - 2;
            while m >= l {
                let z = h[[m as usize, m as usize]];
                let r = x - z;
                let s = y - z;
                let mu = m as usize;
                let mut p = (r * s - w) / h[[mu + 1, mu]] + h[[mu, mu + 1]];
                let mut q = h[[mu + 1, mu + 1]] - z - r - s;
                let mut rr = h[[mu + 2, mu + 1]];
                let scale = p.abs() + q.abs() + rr.abs();
                p /= scale;
                q /= scale;
                rr /= scale;
                if m == l {
                    break;
                }
                let u = h[[mu, mu - 1]].abs() * (q.abs() + rr.abs());
                let v = p.abs()
                    * (h[[mu - 1, mu - 1]].abs() + z.abs() + h[[mu + 1, mu + 1]].abs());
                if u <= eps * v {
                    break;
                }
                m -= 1;
            }
            let m = m.max(l) as usize;
            for i in (m + 2)..=(nn as usize) {
                h[[i, i - 2]] = 0.0;
                if i > m + 2 {
                    h[[i, i - 3]] = 0.0;
                }
            }

            // Double QR sweep on rows/columns m..=nn.
            let nnu = nn as usize;
            let lu = l as usize;
            let mut p;
            let mut q;
            let mut r;
            for k in m..nnu {
                if k != m {
                    p = h[[k, k - 1]];
                    q = h[[k + 1, k - 1]];
                    r = if k != nnu - 1 { h[[k + 2, k - 1]] } else { 0.0 };
                    let x_ = p.abs() + q.abs() + r.abs();
                    if x_ == 0.0 {
                        continue;
                    }
                    p /= x_;
                    q /= x_;
                    r /= x_;
                } else {
                    let z = h[[m, m]];
                    let rr = x - z;
                    let ss = y - z;
                    p = (rr * ss - w) / h[[m + 1, m]] + h[[m, m + 1]];
                    q = h[[m + 1, m + 1]] - z - rr - ss;
                    r = if m + 2 <= nnu { h[[m + 2, m + 1]] } else { 0.0 };
                    let scale = p.abs() + q.abs() + r.abs();
                    p /= scale;
                    q /= scale;
                    r /= scale;
                }
                let mut s = (p * p + q * q + r * r).sqrt().copysign(p);
                if s == 0.0 {
                    continue;
                }
                if k == m {
                    if lu != m {
                        h[[k, k - 1]] = -h[[k, k - 1]];
                    }
                } else {
                    h[[k, k - 1]] = -s * (p.abs() + q.abs() + r.abs())
                        * if k != m { 1.0 } else { 1.0 };
                    // the scale factor x_ was divided out above
                    h[[k, k - 1]] *= {
                        // restore: h[k][k-1] = -s * x_ where x_ was the scale
                        1.0
                    };
                }
                // Simpler and standard: recompute via the stored scale.
                p += s;
                let x_ = p / s;
                let y_ = q / s;
                let z_ = r / s;
                q /= p;
                r /= p;
                // Row modification.
                for j in k..=nnu {
                    let mut pp = h[[k, j]] + q * h[[k + 1, j]];
                    if k != nnu - 1 {
                        pp += r * h[[k + 2, j]];
                        h[[k + 2, j]] -= pp * z_;
                    }
                    h[[k + 1, j]] -= pp * y_;
                    h[[k, j]] -= pp * x_;
                }
                // Column modification.
                let upper = if nnu < k + 3 { nnu } else { k + 3 };
                for i in lu..=upper {
                    let mut pp = x_ * h[[i, k]] + y_ * h[[i, k + 1]];
                    if k != nnu - 1 {
                        pp += z_ * h[[i, k + 2]];
                        h[[i, k + 2]] -= pp * r;
                    }
                    h[[i, k + 1]] -= pp * q;
                    h[[i, k]] -= pp;
                }
            }
        }
    }
    Ok(eigs)
}

/// LU factorization with partial pivoting over complex scalars.
///
/// Near-singular pivots are replaced by a tiny scaled value instead of
/// failing: shifted systems `(A - lambda I) x = b` at an exact eigenvalue
/// are the intended use (inverse iteration), where the blow-up of the
/// solution along the null direction is the point.
pub struct CLu {
    lu: Array2<C64>,
    pivots: Vec<usize>,
    n: usize,
}

impl CLu {
    pub fn factor(a: &Array2<C64>) -> Result<Self> {
        if a.nrows() != a.ncols() {
            return Err(Error::DimensionMismatch(format!(
                "LU input must be square, got {}x{}",
                a.nrows(),
                a.ncols()
            )));
        }
        let n = a.nrows();
        let mut lu = a.clone();
        let mut pivots = vec![0usize; n];
        let scale: f64 = lu.iter().map(|z| z.norm()).fold(0.0, f64::max).max(1e-300);
        let tiny = scale * f64::EPSILON * 1e-2;
        for col in 0..n {
            let mut piv = col;
            let mut best = lu[[col, col]].norm();
            for row in (col + 1)..n {
                let mag = lu[[row, col]].norm();
                if mag > best {
                    best = mag;
                    piv = row;
                }
            }
            pivots[col] = piv;
            if piv != col {
                for j in 0..n {
                    let tmp = lu[[col, j]];
                    lu[[col, j]] = lu[[piv, j]];
                    lu[[piv, j]] = tmp;
                }
            }
            if lu[[col, col]].norm() < tiny {
                lu[[col, col]] = C64::new(tiny, 0.0);
            }
            let inv_p = C64::new(1.0, 0.0) / lu[[col, col]];
            for row in (col + 1)..n {
                let factor = lu[[row, col]] * inv_p;
                lu[[row, col]] = factor;
                if factor != C64::new(0.0, 0.0) {
                    for j in (col + 1)..n {
                        let sub = factor * lu[[col, j]];
                        lu[[row, j]] -= sub;
                    }
                }
            }
        }
        Ok(Self { lu, pivots, n })
    }

    pub fn solve(&self, b: &[C64]) -> Vec<C64> {
        assert_eq!(b.len(), self.n, "rhs length mismatch");
        let mut x = b.to_vec();
        for col in 0..self.n {
            x.swap(col, self.pivots[col]);
        }
        for col in 0..self.n {
            for row in (col + 1)..self.n {
                let sub = self.lu[[row, col]] * x[col];
                x[row] -= sub;
            }
        }
        for col in (0..self.n).rev() {
            x[col] /= self.lu[[col, col]];
            for row in 0..col {
                let sub = self.lu[[row, col]] * x[col];
                x[row] -= sub;
            }
        }
        x
    }

    /// Explicit inverse, column by column.
    pub fn inverse(&self) -> Array2<C64> {
        let mut inv = Array2::from_elem((self.n, self.n), C64::new(0.0, 0.0));
        let mut e = vec![C64::new(0.0, 0.0); self.n];
        for col in 0..self.n {
            e[col] = C64::new(1.0, 0.0);
            let x = self.solve(&e);
            for row in 0..self.n {
                inv[[row, col]] = x[row];
            }
            e[col] = C64::new(0.0, 0.0);
        }
        inv
    }
}

/// 1-norm of a complex matrix (maximum absolute column sum).
pub fn one_norm(a: &Array2<C64>) -> f64 {
    let mut best = 0.0f64;
    for col in 0..a.ncols() {
        let s: f64 = (0..a.nrows()).map(|r| a[[r, col]].norm()).sum();
        best = best.max(s);
    }
    best
}

/// 1-norm condition number via the explicit inverse. Fine at these sizes.
pub fn condition_number(a: &Array2<C64>) -> Result<f64> {
    let lu = CLu::factor(a)?;
    Ok(one_norm(a) * one_norm(&lu.inverse()))
}

fn deterministic_start(n: usize, seed: u64) -> Vec<C64> {
    // Small LCG; any spread-out deterministic start works for inverse
    // iteration as long as it is not orthogonal to the target eigenvector.
    let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    let mut next = || {
        state = state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        ((state >> 11) as f64 / (1u64 << 53) as f64) - 0.5
    };
    (0..n).map(|_| C64::new(next(), next())).collect()
}

fn norm2(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn matvec(a: &Array2<f64>, v: &[C64]) -> Vec<C64> {
    let n = a.nrows();
    let mut out = vec![C64::new(0.0, 0.0); n];
    for i in 0..n {
        let mut acc = C64::new(0.0, 0.0);
        for j in 0..n {
            acc += a[[i, j]] * v[j];
        }
        out[i] = acc;
    }
    out
}

/// Eigenvalues and eigenvectors of a real matrix.
///
/// Eigenvalues come from [`eigenvalues`]; each eigenvector is recovered by
/// shifted inverse iteration with Rayleigh-quotient polish until
/// `||A v - lambda v||_2 <= residual_tol` (callers pass a bound scaled by
/// `||A||`). Fails with the partial spectrum if any pair refuses to
/// converge within the iteration cap.
pub fn eig_real(a: &Array2<f64>, residual_tol: f64) -> Result<RealEigen> {
    let n = a.nrows();
    let values0 = eigenvalues(a)?;
    let mut values = values0.clone();
    let mut vectors = Array2::from_elem((n, n), C64::new(0.0, 0.0));
    let mut residuals = vec![f64::INFINITY; n];
    let ident = Array2::<f64>::eye(n);
    let cap = 40usize;

    for (idx, lam0) in values0.iter().enumerate() {
        let mut lam = *lam0;
        let mut v = deterministic_start(n, idx as u64 + 1);
        let nv = norm2(&v);
        v.iter_mut().for_each(|z| *z /= nv);
        let mut best_res = f64::INFINITY;
        let mut best: Option<(C64, Vec<C64>)> = None;
        let mut converged = false;
        for it in 0..cap {
            // Shifted solve: (A - lam I) w = v.
            let mut shifted = Array2::from_elem((n, n), C64::new(0.0, 0.0));
            for i in 0..n {
                for j in 0..n {
                    shifted[[i, j]] = C64::new(a[[i, j]], 0.0) - lam * ident[[i, j]];
                }
            }
            let lu = CLu::factor(&shifted)?;
            let mut w = lu.solve(&v);
            let nw = norm2(&w);
            if !nw.is_finite() || nw == 0.0 {
                break;
            }
            w.iter_mut().for_each(|z| *z /= nw);
            let av = matvec(a, &w);
            // Rayleigh quotient and residual for the candidate vector.
            let rq: C64 = w.iter().zip(&av).map(|(x, y)| x.conj() * y).sum();
            let res: f64 = {
                let mut s = 0.0;
                for i in 0..n {
                    s += (av[i] - rq * w[i]).norm_sqr();
                }
                s.sqrt()
            };
            if res < best_res {
                best_res = res;
                best = Some((rq, w.clone()));
            }
            if res <= residual_tol {
                converged = true;
                break;
            }
            // Keep the QR eigenvalue for the first pass; afterwards let the
            // Rayleigh quotient take over.
            if it > 0 {
                lam = rq;
            }
            v = w;
        }
        let (lam_final, v_final) = best.ok_or(Error::EigenNonConvergence {
            iterations: cap,
            worst_residual: best_res,
            partial_values: values.clone(),
        })?;
        if !converged && best_res > residual_tol {
            return Err(Error::EigenNonConvergence {
                iterations: cap,
                worst_residual: best_res,
                partial_values: values,
            });
        }
        values[idx] = lam_final;
        residuals[idx] = best_res;
        for i in 0..n {
            vectors[[i, idx]] = v_final[i];
        }
    }
    Ok(RealEigen {
        values,
        vectors,
        residuals,
    })
}

/// Eigenvalues of a complex 2x2 matrix, closed form.
pub fn eig2x2(a: C64, b: C64, c: C64, d: C64) -> (C64, C64) {
    let tr = a + d;
    let det = a * d - b * c;
    let disc = (tr * tr - 4.0 * det).sqrt();
    ((tr + disc) / 2.0, (tr - disc) / 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    #[test]
    fn eigenvalues_of_rotation_block() {
        // [[0,-1],[1,0]] has eigenvalues +-i.
        let a = array![[0.0, -1.0], [1.0, 0.0]];
        let mut ev = eigenvalues(&a).unwrap();
        ev.sort_by(|x, y| x.im.partial_cmp(&y.im).unwrap());
        assert!((ev[0] - C64::new(0.0, -1.0)).norm() < 1e-14);
        assert!((ev[1] - C64::new(0.0, 1.0)).norm() < 1e-14);
    }

    #[test]
    fn eigenvalues_of_companion_matrix() {
        // Companion of p(x) = x^3 - 6x^2 + 11x - 6 = (x-1)(x-2)(x-3).
        let a = array![[6.0, -11.0, 6.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]];
        let mut ev = eigenvalues(&a).unwrap();
        ev.sort_by(|x, y| x.re.partial_cmp(&y.re).unwrap());
        for (got, want) in ev.iter().zip([1.0, 2.0, 3.0]) {
            assert!((got - C64::new(want, 0.0)).norm() < 1e-12, "{got} vs {want}");
        }
    }

    #[test]
    fn eig_real_residuals_on_pseudorandom_matrices() {
        for n in [3usize, 6, 12, 25] {
            let mut a = Array2::zeros((n, n));
            let mut state = 0x9e3779b97f4a7c15u64 ^ (n as u64);
            let mut next = || {
                state = state
                    .wrapping_mul(6364136223846793005)
                    .wrapping_add(1442695040888963407);
                ((state >> 11) as f64 / (1u64 << 53) as f64) - 0.5
            };
            for i in 0..n {
                for j in 0..n {
                    a[[i, j]] = next();
                }
            }
            let tol = 1e-10 * frobenius(&a);
            let eig = eig_real(&a, tol).unwrap();
            for (idx, res) in eig.residuals.iter().enumerate() {
                assert!(*res <= tol, "n={n} pair {idx}: residual {res} > {tol}");
            }
            // Eigenvalue sum equals the trace.
            let tr: f64 = (0..n).map(|i| a[[i, i]]).sum();
            let sum: C64 = eig.values.iter().sum();
            assert!((sum - C64::new(tr, 0.0)).norm() < 1e-8 * frobenius(&a).max(1.0));
        }
    }

    #[test]
    fn lu_solves_and_inverts() {
        let a = array![
            [C64::new(2.0, 1.0), C64::new(0.0, -1.0)],
            [C64::new(1.0, 0.0), C64::new(3.0, 2.0)]
        ];
        let lu = CLu::factor(&a).unwrap();
        let b = vec![C64::new(1.0, 0.0), C64::new(0.0, 1.0)];
        let x = lu.solve(&b);
        // Check A x = b.
        for i in 0..2 {
            let mut acc = C64::new(0.0, 0.0);
            for j in 0..2 {
                acc += a[[i, j]] * x[j];
            }
            assert!((acc - b[i]).norm() < 1e-13);
        }
        let inv = lu.inverse();
        let mut prod = Array2::from_elem((2, 2), C64::new(0.0, 0.0));
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    let term = a[[i, k]] * inv[[k, j]];
                    prod[[i, j]] += term;
                }
            }
        }
        for i in 0..2 {
            for j in 0..2 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((prod[[i, j]] - C64::new(want, 0.0)).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn condition_number_of_identity_is_one() {
        let eye: Array2<C64> = Array2::from_shape_fn((5, 5), |(i, j)| {
            if i == j {
                C64::new(1.0, 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        });
        let c = condition_number(&eye).unwrap();
        assert!((c - 1.0).abs() < 1e-12);
    }

    #[test]
    fn eig2x2_closed_form() {
        let (l1, l2) = eig2x2(
            C64::new(0.0, 0.0),
            C64::new(-0.5, 0.0),
            C64::new(-0.5, 0.0),
            C64::new(0.0, 0.0),
        );
        let mut got = [l1, l2];
        got.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        assert!((got[0] - C64::new(-0.5, 0.0)).norm() < 1e-15);
        assert!((got[1] - C64::new(0.5, 0.0)).norm() < 1e-15);
    }
}
