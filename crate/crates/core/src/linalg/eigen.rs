//! Dense eigensolvers for Hermitian and unitary matrices.
//!
//! Hermitian input is reduced to a real symmetric tridiagonal matrix by
//! Householder reflections plus a diagonal phase scaling, then diagonalized
//! with the implicit QL algorithm. Unitary input is reduced to upper
//! Hessenberg form and driven to (diagonal) Schur form by single-shift
//! complex QR with Wilkinson shifts; for a normal matrix the Schur vectors
//! are the eigenvectors.

use std::cmp::Ordering;
use std::f64::consts::PI;

use num_complex::Complex64;

use super::matrix::{ComplexMatrix, HermitianMatrix, UnitaryMatrix};
use crate::error::{Error, Result};

const EPS: f64 = f64::EPSILON;
const QL_ITERATION_BUDGET: usize = 60;

#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomposition {
    pub values: Vec<Complex64>,
    /// Column eigenvectors, ordered like `values`.
    pub vectors: Option<UnitaryMatrix>,
}

impl EigenDecomposition {
    pub fn real_values(&self) -> Vec<f64> {
        self.values.iter().map(|z| z.re).collect()
    }

    /// Largest ‖A v - λ v‖₂ over all eigenpairs. Requires vectors.
    pub fn max_residual(&self, a: &ComplexMatrix) -> Option<f64> {
        let v = self.vectors.as_ref()?.matrix();
        let n = a.dim();
        let mut worst: f64 = 0.0;
        for (k, &lambda) in self.values.iter().enumerate() {
            let col: Vec<Complex64> = (0..n).map(|i| v[(i, k)]).collect();
            let av = a.mul_vec(&col);
            let r = av
                .iter()
                .zip(&col)
                .map(|(&x, &y)| (x - lambda * y).norm_sqr())
                .sum::<f64>()
                .sqrt();
            worst = worst.max(r);
        }
        Some(worst)
    }
}

/// Principal argument in (-π, π].
pub fn principal_arg(z: Complex64) -> f64 {
    let a = z.im.atan2(z.re);
    if a <= -PI {
        PI
    } else {
        a
    }
}

/// Orders unit-circle points by principal argument, ties by imaginary part.
pub fn cmp_by_arg(a: &Complex64, b: &Complex64) -> Ordering {
    principal_arg(*a)
        .total_cmp(&principal_arg(*b))
        .then(a.im.total_cmp(&b.im))
}

/// Eigenvalues (ascending) and optionally orthonormal eigenvectors of a Hermitian matrix.
pub fn eig_hermitian(a: &HermitianMatrix, want_vectors: bool) -> Result<EigenDecomposition> {
    let m = a.matrix();
    let n = m.dim();
    let mut work = m.as_slice().to_vec();
    let mut q = if want_vectors {
        Some(ComplexMatrix::identity(n)?.as_slice().to_vec())
    } else {
        None
    };
    let (mut d, off) = tridiagonalize(&mut work, n, q.as_deref_mut());

    // Diagonal phase scaling turns the complex sub-diagonal into |e_k|.
    let mut phases = vec![Complex64::new(1.0, 0.0); n];
    let mut e = vec![0.0; n];
    for k in 0..n.saturating_sub(1) {
        let r = off[k].norm();
        e[k] = r;
        phases[k + 1] = if r > 0.0 {
            phases[k] * (off[k] / r)
        } else {
            phases[k]
        };
    }

    let mut z = if want_vectors {
        let mut id = vec![0.0; n * n];
        for i in 0..n {
            id[i * n + i] = 1.0;
        }
        Some(id)
    } else {
        None
    };
    if !tql2(&mut d, &mut e, z.as_deref_mut()) {
        return Err(Error::NoConvergence {
            dim: n,
            hash: m.content_hash(),
            budget: QL_ITERATION_BUDGET,
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].total_cmp(&d[j]));
    let values = order.iter().map(|&i| Complex64::new(d[i], 0.0)).collect();

    let vectors = match (q, z) {
        (Some(q), Some(z)) => {
            // V = Q · diag(phases) · Z, columns permuted by `order`.
            let mut v = ComplexMatrix::zeros(n)?;
            for r in 0..n {
                for (col, &k) in order.iter().enumerate() {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for j in 0..n {
                        acc += q[r * n + j] * phases[j] * z[j * n + k];
                    }
                    v[(r, col)] = acc;
                }
            }
            Some(UnitaryMatrix::new_unchecked(v))
        }
        _ => None,
    };
    Ok(EigenDecomposition { values, vectors })
}

/// Eigenvalues (unit modulus, ascending argument) and optionally eigenvectors of a unitary matrix.
pub fn eig_unitary(u: &UnitaryMatrix, want_vectors: bool) -> Result<EigenDecomposition> {
    let m = u.matrix();
    let (mut values, vectors) = schur_normal(m, want_vectors)?;
    for z in values.iter_mut() {
        let r = z.norm();
        if r > 0.0 {
            *z /= r;
        }
    }
    let n = m.dim();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| cmp_by_arg(&values[i], &values[j]));
    let sorted = order.iter().map(|&i| values[i]).collect();
    let vectors = match vectors {
        Some(z) => {
            let v = ComplexMatrix::from_fn(n, |r, c| z[(r, order[c])])?;
            Some(UnitaryMatrix::new_unchecked(v))
        }
        None => None,
    };
    Ok(EigenDecomposition {
        values: sorted,
        vectors,
    })
}

/// exp(-i s A) = V exp(-i s Λ) V* for Hermitian A.
pub fn expm_i_hermitian(a: &HermitianMatrix, s: f64) -> Result<UnitaryMatrix> {
    if !s.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "non-finite exponent scale {s}"
        )));
    }
    let eig = eig_hermitian(a, true)?;
    let v = eig.vectors.expect("vectors requested").into_inner();
    let n = v.dim();
    let phases: Vec<Complex64> = eig
        .values
        .iter()
        .map(|l| Complex64::from_polar(1.0, -s * l.re))
        .collect();
    let out = ComplexMatrix::from_fn(n, |i, j| {
        (0..n)
            .map(|k| v[(i, k)] * phases[k] * v[(j, k)].conj())
            .sum()
    })?;
    Ok(UnitaryMatrix::new_unchecked(out))
}

/// Householder reduction of a full Hermitian matrix (row-major `a`) to
/// tridiagonal form. Returns the real diagonal and the complex
/// sub-diagonal `e[k] = T[k+1][k]`; `q`, when given, accumulates the
/// reflections so that A = Q T Q*.
fn tridiagonalize(
    a: &mut [Complex64],
    n: usize,
    mut q: Option<&mut [Complex64]>,
) -> (Vec<f64>, Vec<Complex64>) {
    let zero = Complex64::new(0.0, 0.0);
    let mut v = vec![zero; n];
    let mut w = vec![zero; n];
    for k in 0..n.saturating_sub(2) {
        let x0 = a[(k + 1) * n + k];
        let tail: f64 = (k + 2..n).map(|i| a[i * n + k].norm_sqr()).sum();
        if tail == 0.0 {
            continue;
        }
        let alpha = (x0.norm_sqr() + tail).sqrt();
        let phase = if x0.norm() > 0.0 {
            x0 / x0.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        let m = n - k - 1;
        v[0] = x0 + phase * alpha;
        for i in 1..m {
            v[i] = a[(k + 1 + i) * n + k];
        }
        let beta = 2.0 / (v[0].norm_sqr() + tail);

        // w = beta * A22 v
        for i in 0..m {
            let row = &a[(k + 1 + i) * n + k + 1..(k + 1 + i) * n + n];
            w[i] = row
                .iter()
                .zip(&v[..m])
                .map(|(&x, &y)| x * y)
                .sum::<Complex64>()
                * beta;
        }
        let vw: Complex64 = v[..m].iter().zip(&w[..m]).map(|(x, y)| x.conj() * y).sum();
        let kk = 0.5 * beta * vw.re;
        for i in 0..m {
            w[i] -= v[i] * kk;
        }
        for i in 0..m {
            let row = &mut a[(k + 1 + i) * n + k + 1..(k + 1 + i) * n + n];
            let (vi, wi) = (v[i], w[i]);
            for (j, x) in row.iter_mut().enumerate() {
                *x -= vi * w[j].conj() + wi * v[j].conj();
            }
        }
        let new_sub = -phase * alpha;
        a[(k + 1) * n + k] = new_sub;
        a[k * n + k + 1] = new_sub.conj();
        for i in k + 2..n {
            a[i * n + k] = zero;
            a[k * n + i] = zero;
        }

        if let Some(q) = q.as_deref_mut() {
            for r in 0..n {
                let row = &mut q[r * n + k + 1..r * n + n];
                let s: Complex64 = row.iter().zip(&v[..m]).map(|(&x, &y)| x * y).sum();
                let s = s * beta;
                for (x, vi) in row.iter_mut().zip(&v[..m]) {
                    *x -= s * vi.conj();
                }
            }
        }
    }
    let d = (0..n).map(|i| a[i * n + i].re).collect();
    let e = (0..n.saturating_sub(1))
        .map(|k| a[(k + 1) * n + k])
        .collect();
    (d, e)
}

/// Implicit QL on a real symmetric tridiagonal matrix with diagonal `d`
/// and off-diagonal `e[i]` coupling i and i+1. `z` (row-major n×n, columns
/// are vectors) accumulates rotations when given. Returns false if any
/// eigenvalue exhausts the iteration budget.
fn tql2(d: &mut [f64], e: &mut [f64], mut z: Option<&mut [f64]>) -> bool {
    let n = d.len();
    if n == 0 {
        return true;
    }
    e[n - 1] = 0.0;
    let mut f = 0.0;
    let mut tst1: f64 = 0.0;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 && e[m].abs() > EPS * tst1 {
            m += 1;
        }
        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > QL_ITERATION_BUDGET {
                    return false;
                }
                let g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let h = g - d[l];
                for di in d.iter_mut().skip(l + 2) {
                    *di -= h;
                }
                f += h;

                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    let h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    if let Some(z) = z.as_deref_mut() {
                        for k in 0..n {
                            let zi1 = z[k * n + i + 1];
                            let zi = z[k * n + i];
                            z[k * n + i + 1] = s * zi + c * zi1;
                            z[k * n + i] = c * zi - s * zi1;
                        }
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= EPS * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    true
}

/// Schur decomposition of a normal matrix. Returns the diagonal of the
/// triangular factor and, when requested, the unitary Schur vectors.
fn schur_normal(
    m: &ComplexMatrix,
    want_vectors: bool,
) -> Result<(Vec<Complex64>, Option<ComplexMatrix>)> {
    let n = m.dim();
    let mut h = m.as_slice().to_vec();
    let mut z = if want_vectors {
        Some(ComplexMatrix::identity(n)?.as_slice().to_vec())
    } else {
        None
    };
    hessenberg(&mut h, n, z.as_deref_mut());
    let budget = 30 * n.max(10);
    if !hessenberg_qr(&mut h, n, z.as_deref_mut(), want_vectors, budget) {
        return Err(Error::NoConvergence {
            dim: n,
            hash: m.content_hash(),
            budget,
        });
    }
    let values = (0..n).map(|i| h[i * n + i]).collect();
    let vectors = match z {
        Some(z) => Some(ComplexMatrix::from_fn(n, |i, j| z[i * n + j])?),
        None => None,
    };
    Ok((values, vectors))
}

/// Householder reduction to upper Hessenberg form, H = Q* A Q.
fn hessenberg(h: &mut [Complex64], n: usize, mut q: Option<&mut [Complex64]>) {
    let zero = Complex64::new(0.0, 0.0);
    let mut v = vec![zero; n];
    let mut s = vec![zero; n];
    for k in 0..n.saturating_sub(2) {
        let x0 = h[(k + 1) * n + k];
        let tail: f64 = (k + 2..n).map(|i| h[i * n + k].norm_sqr()).sum();
        if tail == 0.0 {
            continue;
        }
        let alpha = (x0.norm_sqr() + tail).sqrt();
        let phase = if x0.norm() > 0.0 {
            x0 / x0.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        let m = n - k - 1;
        v[0] = x0 + phase * alpha;
        for i in 1..m {
            v[i] = h[(k + 1 + i) * n + k];
        }
        let beta = 2.0 / (v[0].norm_sqr() + tail);

        // Left: rows k+1.., columns k..
        for sj in s[k..n].iter_mut() {
            *sj = zero;
        }
        for i in 0..m {
            let vi = v[i].conj();
            let row = &h[(k + 1 + i) * n + k..(k + 1 + i) * n + n];
            for (sj, &x) in s[k..n].iter_mut().zip(row) {
                *sj += vi * x;
            }
        }
        for i in 0..m {
            let bv = v[i] * beta;
            let row = &mut h[(k + 1 + i) * n + k..(k + 1 + i) * n + n];
            for (x, &sj) in row.iter_mut().zip(&s[k..n]) {
                *x -= bv * sj;
            }
        }
        // Right: all rows, columns k+1..
        for r in 0..n {
            let row = &mut h[r * n + k + 1..r * n + n];
            let t: Complex64 = row
                .iter()
                .zip(&v[..m])
                .map(|(&x, &y)| x * y)
                .sum::<Complex64>()
                * beta;
            for (x, vi) in row.iter_mut().zip(&v[..m]) {
                *x -= t * vi.conj();
            }
        }
        h[(k + 1) * n + k] = -phase * alpha;
        for i in k + 2..n {
            h[i * n + k] = zero;
        }
        if let Some(q) = q.as_deref_mut() {
            for r in 0..n {
                let row = &mut q[r * n + k + 1..r * n + n];
                let t: Complex64 = row
                    .iter()
                    .zip(&v[..m])
                    .map(|(&x, &y)| x * y)
                    .sum::<Complex64>()
                    * beta;
                for (x, vi) in row.iter_mut().zip(&v[..m]) {
                    *x -= t * vi.conj();
                }
            }
        }
    }
}

/// Complex Givens rotation G = [[c, s], [-conj(s), c]] with G [x; y] = [r; 0].
fn givens(x: Complex64, y: Complex64) -> (f64, Complex64, Complex64) {
    let ay = y.norm();
    if ay == 0.0 {
        return (1.0, Complex64::new(0.0, 0.0), x);
    }
    let ax = x.norm();
    if ax == 0.0 {
        return (0.0, y.conj() / ay, Complex64::new(ay, 0.0));
    }
    let norm = ax.hypot(ay);
    let phase = x / ax;
    (ax / norm, phase * y.conj() / norm, phase * norm)
}

/// Single-shift QR iteration on an upper Hessenberg matrix. On return the
/// diagonal of `h` holds the eigenvalues. With `full` the whole Schur
/// factor is maintained (needed for eigenvectors); otherwise only the
/// active window is updated.
fn hessenberg_qr(
    h: &mut [Complex64],
    n: usize,
    mut z: Option<&mut [Complex64]>,
    full: bool,
    budget: usize,
) -> bool {
    let zero = Complex64::new(0.0, 0.0);
    let anorm = h.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    if anorm == 0.0 {
        return true;
    }
    let small = EPS * anorm;
    let mut i = n as isize - 1;
    while i >= 0 {
        let iu = i as usize;
        let mut converged = false;
        for its in 0..=budget {
            // Locate the start of the active unreduced block.
            let mut l = iu;
            while l > 0 {
                let sub = h[l * n + l - 1].norm();
                let tst = h[(l - 1) * n + l - 1].norm() + h[l * n + l].norm();
                if sub <= small || sub <= EPS * tst {
                    h[l * n + l - 1] = zero;
                    break;
                }
                l -= 1;
            }
            if l >= iu {
                converged = true;
                break;
            }
            if its == budget {
                break;
            }

            let mu = if its > 0 && its % 10 == 0 {
                // Exceptional shift to break cycles of the standard shift.
                let sub = h[iu * n + iu - 1];
                h[iu * n + iu] + Complex64::new(0.75 * sub.norm(), 0.25 * sub.norm())
            } else {
                wilkinson_shift(
                    h[(iu - 1) * n + iu - 1],
                    h[(iu - 1) * n + iu],
                    h[iu * n + iu - 1],
                    h[iu * n + iu],
                )
            };

            let col_end = if full { n } else { iu + 1 };
            let row_start = if full { 0 } else { l };
            for k in l..iu {
                let (x, y) = if k == l {
                    (h[l * n + l] - mu, h[(l + 1) * n + l])
                } else {
                    (h[k * n + k - 1], h[(k + 1) * n + k - 1])
                };
                let (c, s, r) = givens(x, y);
                let j0 = if k == l { k } else { k - 1 };
                if k > l {
                    h[k * n + k - 1] = r;
                    h[(k + 1) * n + k - 1] = zero;
                }
                let sc = s.conj();
                let start = if k > l { j0 + 1 } else { j0 };
                for j in start..col_end {
                    let h1 = h[k * n + j];
                    let h2 = h[(k + 1) * n + j];
                    h[k * n + j] = h1 * c + s * h2;
                    h[(k + 1) * n + j] = -sc * h1 + h2 * c;
                }
                let row_end = (k + 2).min(iu);
                for rr in row_start..=row_end {
                    let h1 = h[rr * n + k];
                    let h2 = h[rr * n + k + 1];
                    h[rr * n + k] = h1 * c + sc * h2;
                    h[rr * n + k + 1] = -s * h1 + h2 * c;
                }
                if let Some(z) = z.as_deref_mut() {
                    for rr in 0..n {
                        let z1 = z[rr * n + k];
                        let z2 = z[rr * n + k + 1];
                        z[rr * n + k] = z1 * c + sc * z2;
                        z[rr * n + k + 1] = -s * z1 + z2 * c;
                    }
                }
            }
        }
        if !converged {
            return false;
        }
        i -= 1;
    }
    true
}

/// Eigenvalue of [[a, b], [c, d]] closest to d.
fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let t = (a - d) * 0.5;
    let bc = b * c;
    let disc = (t * t + bc).sqrt();
    let plus = t + disc;
    let minus = t - disc;
    let denom = if plus.norm() >= minus.norm() {
        plus
    } else {
        minus
    };
    if denom.norm() == 0.0 {
        d
    } else {
        d - bc / denom
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::SQRT_2;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn herm(rows: &[Vec<f64>]) -> HermitianMatrix {
        HermitianMatrix::new(ComplexMatrix::from_real_rows(rows).unwrap()).unwrap()
    }

    #[test]
    fn identity_hermitian() {
        let e = eig_hermitian(
            &HermitianMatrix::new(ComplexMatrix::identity(3).unwrap()).unwrap(),
            true,
        )
        .unwrap();
        assert_eq!(e.real_values(), vec![1.0, 1.0, 1.0]);
    }

    #[test]
    fn two_by_two_hermitian() {
        let a = herm(&[vec![2.0, 2.0], vec![2.0, -2.0]]);
        let e = eig_hermitian(&a, true).unwrap();
        let v = e.real_values();
        assert!((v[0] + 2.0 * SQRT_2).abs() < 1e-14);
        assert!((v[1] - 2.0 * SQRT_2).abs() < 1e-14);
        assert!(e.max_residual(a.matrix()).unwrap() < 1e-13);
    }

    #[test]
    fn diagonal_hermitian_sorted() {
        let a = herm(&[vec![1.0, 0.0], vec![0.0, -1.0]]);
        assert_eq!(
            eig_hermitian(&a, false).unwrap().real_values(),
            vec![-1.0, 1.0]
        );
    }

    #[test]
    fn complex_hermitian_with_vectors() {
        let m = ComplexMatrix::from_rows(&[
            vec![c(2.0, 0.0), c(1.0, 1.0), c(0.0, -0.5)],
            vec![c(1.0, -1.0), c(-1.0, 0.0), c(0.25, 2.0)],
            vec![c(0.0, 0.5), c(0.25, -2.0), c(0.5, 0.0)],
        ])
        .unwrap();
        let a = HermitianMatrix::new(m).unwrap();
        let e = eig_hermitian(&a, true).unwrap();
        assert!(e.max_residual(a.matrix()).unwrap() < 1e-12);
        assert!(e.vectors.as_ref().unwrap().matrix().unitary_deviation() < 1e-12);
        // trace check
        let tr: f64 = e.real_values().iter().sum();
        assert!((tr - 1.5).abs() < 1e-12);
    }

    #[test]
    fn identity_unitary() {
        let e = eig_unitary(&UnitaryMatrix::identity(2).unwrap(), true).unwrap();
        assert_eq!(e.values, vec![c(1.0, 0.0), c(1.0, 0.0)]);
    }

    #[test]
    fn rotation_unitary() {
        let u = UnitaryMatrix::new(
            ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![-1.0, 0.0]]).unwrap(),
        )
        .unwrap();
        let e = eig_unitary(&u, true).unwrap();
        assert!((e.values[0] - c(0.0, -1.0)).norm() < 1e-14);
        assert!((e.values[1] - c(0.0, 1.0)).norm() < 1e-14);
        assert!(e.max_residual(u.matrix()).unwrap() < 1e-13);
    }

    #[test]
    fn cyclic_shift_roots_of_unity() {
        for q in 2..9usize {
            let m = ComplexMatrix::from_fn(q, |i, j| {
                if j == (i + 1) % q {
                    c(1.0, 0.0)
                } else {
                    c(0.0, 0.0)
                }
            })
            .unwrap();
            let u = UnitaryMatrix::new(m).unwrap();
            let e = eig_unitary(&u, true).unwrap();
            for z in &e.values {
                assert!(
                    (z.powu(q as u32) - c(1.0, 0.0)).norm() < 1e-12,
                    "q={q} z={z}"
                );
            }
            // all distinct roots present
            for k in 0..q {
                let target = Complex64::from_polar(1.0, 2.0 * PI * k as f64 / q as f64);
                assert!(e.values.iter().any(|z| (z - target).norm() < 1e-12));
            }
            assert!(e.max_residual(u.matrix()).unwrap() < 1e-12);
        }
    }

    #[test]
    fn expm_basic() {
        let zero = HermitianMatrix::new(ComplexMatrix::zeros(3).unwrap()).unwrap();
        let u = expm_i_hermitian(&zero, 1.0).unwrap();
        assert!(
            u.matrix()
                .sub(&ComplexMatrix::identity(3).unwrap())
                .unwrap()
                .max_abs()
                < 1e-15
        );

        let d = herm(&[vec![1.0, 0.0], vec![0.0, -1.0]]);
        let u = expm_i_hermitian(&d, PI).unwrap();
        let minus_i = ComplexMatrix::identity(2).unwrap().scale(c(-1.0, 0.0));
        assert!(u.matrix().sub(&minus_i).unwrap().max_abs() < 1e-14);
    }

    #[test]
    fn expm_spectral_mapping_two_by_two() {
        let a = herm(&[vec![2.0, 2.0], vec![2.0, -2.0]]);
        let u = expm_i_hermitian(&a, 1.0).unwrap();
        let e = eig_unitary(&u, false).unwrap();
        let expected = [
            Complex64::from_polar(1.0, -2.0 * SQRT_2),
            Complex64::from_polar(1.0, 2.0 * SQRT_2),
        ];
        for z in expected {
            assert!(e.values.iter().any(|w| (w - z).norm() < 1e-12));
        }
    }

    #[test]
    fn non_finite_scale_rejected() {
        let a = herm(&[vec![1.0]]);
        assert!(expm_i_hermitian(&a, f64::INFINITY).is_err());
    }
}
