//! Dense symmetric eigensolves.
//!
//! Householder tridiagonalization followed by the implicit QL algorithm
//! (EISPACK tred1/tql1 lineage), a Cholesky factorization, and the reduction
//! of a symmetric-definite pencil (A, B) to standard form. Sized for the
//! verification oracles in this crate, not for large-scale work.
//!
//! [`jacobi_eigenvalues`] is a deliberately independent reference
//! implementation used to cross-check the QL path in tests.

use crate::error::{Error, Result};

/// Dense symmetric matrix, full row-major storage.
#[derive(Clone, Debug)]
pub struct SymMatrix {
    n: usize,
    a: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> SymMatrix {
        SymMatrix {
            n,
            a: vec![0.0; n * n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.a[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: f64) {
        self.a[i * self.n + j] = x;
        self.a[j * self.n + i] = x;
    }

    #[inline]
    pub fn add(&mut self, i: usize, j: usize, x: f64) {
        self.a[i * self.n + j] += x;
        if i != j {
            self.a[j * self.n + i] += x;
        }
    }

    pub fn max_abs_diag(&self) -> f64 {
        (0..self.n).fold(0.0, |m, i| m.max(self.get(i, i).abs()))
    }
}

fn sign_of(r: f64, g: f64) -> f64 {
    if g >= 0.0 {
        r.abs()
    } else {
        -r.abs()
    }
}

/// Householder reduction to tridiagonal form, values-only.
fn tridiagonalize(m: &SymMatrix) -> (Vec<f64>, Vec<f64>) {
    let n = m.n;
    let mut a = m.a.clone();
    let at = |a: &Vec<f64>, i: usize, j: usize| a[i * n + j];
    let mut d = vec![0.0f64; n];
    let mut e = vec![0.0f64; n];

    for i in (1..n).rev() {
        let l = i - 1;
        let mut h = 0.0;
        if l > 0 {
            let mut scale = 0.0;
            for k in 0..=l {
                scale += at(&a, i, k).abs();
            }
            if scale == 0.0 {
                e[i] = at(&a, i, l);
            } else {
                for k in 0..=l {
                    a[i * n + k] /= scale;
                    h += at(&a, i, k) * at(&a, i, k);
                }
                let f = at(&a, i, l);
                let g = if f >= 0.0 { -h.sqrt() } else { h.sqrt() };
                e[i] = scale * g;
                h -= f * g;
                a[i * n + l] = f - g;
                let mut fsum = 0.0;
                for j in 0..=l {
                    let mut g = 0.0;
                    for k in 0..=j {
                        g += at(&a, j, k) * at(&a, i, k);
                    }
                    for k in j + 1..=l {
                        g += at(&a, k, j) * at(&a, i, k);
                    }
                    e[j] = g / h;
                    fsum += e[j] * at(&a, i, j);
                }
                let hh = fsum / (h + h);
                for j in 0..=l {
                    let f = at(&a, i, j);
                    let g = e[j] - hh * f;
                    e[j] = g;
                    for k in 0..=j {
                        a[j * n + k] -= f * e[k] + g * at(&a, i, k);
                    }
                }
            }
        } else {
            e[i] = at(&a, i, l);
        }
        d[i] = h;
    }
    e[0] = 0.0;
    for i in 0..n {
        d[i] = at(&a, i, i);
    }
    (d, e)
}

/// Implicit QL with shifts on a symmetric tridiagonal matrix, values-only.
fn ql_implicit(d: &mut [f64], e: &mut [f64]) -> Result<()> {
    let n = d.len();
    if n == 0 {
        return Ok(());
    }
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;

    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m < n - 1 {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd + 1e-300 {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::InvalidInput("eigensolve failed to converge".into()));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + sign_of(r, g));
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            let mut underflow = false;
            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                f = (d[i] - g) * s + 2.0 * c * b;
                p = s * f;
                d[i + 1] = g + p;
                g = c * f - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    d.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(())
}

/// Eigenvalues of a dense symmetric matrix, ascending.
pub fn sym_eigenvalues(m: &SymMatrix) -> Result<Vec<f64>> {
    let (mut d, mut e) = tridiagonalize(m);
    ql_implicit(&mut d, &mut e)?;
    Ok(d)
}

/// Lower-triangular Cholesky factor (row-major, full storage); `None` when
/// the matrix is not numerically positive definite.
pub fn cholesky(m: &SymMatrix) -> Option<Vec<f64>> {
    let n = m.n;
    let mut l = vec![0.0f64; n * n];
    for j in 0..n {
        let mut diag = m.get(j, j);
        for k in 0..j {
            diag -= l[j * n + k] * l[j * n + k];
        }
        if diag <= 0.0 || !diag.is_finite() {
            return None;
        }
        let dj = diag.sqrt();
        l[j * n + j] = dj;
        for i in j + 1..n {
            let mut x = m.get(i, j);
            for k in 0..j {
                x -= l[i * n + k] * l[j * n + k];
            }
            l[i * n + j] = x / dj;
        }
    }
    Some(l)
}

/// Generalized eigenvalues of the symmetric-definite pencil (A, B): the
/// stationary values of x'Ax / x'Bx. B is regularized by an escalating ridge
/// if its Cholesky factorization fails from roundoff.
pub fn pencil_eigenvalues(a: &SymMatrix, b: &SymMatrix) -> Result<Vec<f64>> {
    assert_eq!(a.n, b.n);
    let n = a.n;
    if n == 0 {
        return Ok(Vec::new());
    }
    let scale = b.max_abs_diag().max(1.0);
    let mut ridge = 0.0;
    let mut factor = None;
    for attempt in 0..8 {
        let mut bb = b.clone();
        if ridge > 0.0 {
            for i in 0..n {
                bb.add(i, i, ridge);
            }
        }
        if let Some(l) = cholesky(&bb) {
            factor = Some(l);
            break;
        }
        ridge = scale * 1e-14 * 10f64.powi(attempt);
    }
    let l = factor.ok_or_else(|| {
        Error::InvalidInput("pencil reference matrix is not positive definite".into())
    })?;

    // C = L^{-1} A L^{-T}: forward-solve twice.
    // X = L^{-1} A  (solve L X = A, column by column of A)
    let mut x = vec![0.0f64; n * n];
    for col in 0..n {
        for i in 0..n {
            let mut s = a.get(i, col);
            for k in 0..i {
                s -= l[i * n + k] * x[k * n + col];
            }
            x[i * n + col] = s / l[i * n + i];
        }
    }
    // C^T = L^{-1} X^T  => C column j solves L c = X^T column j = row j of X.
    let mut c = SymMatrix::zeros(n);
    let mut colbuf = vec![0.0f64; n];
    for j in 0..n {
        for i in 0..n {
            let mut s = x[j * n + i];
            for k in 0..i {
                s -= l[i * n + k] * colbuf[k];
            }
            colbuf[i] = s / l[i * n + i];
        }
        for i in 0..n {
            c.a[j * n + i] = colbuf[i];
        }
    }
    // Symmetrize against roundoff.
    for i in 0..n {
        for j in i + 1..n {
            let avg = 0.5 * (c.get(i, j) + c.get(j, i));
            c.set(i, j, avg);
        }
    }
    sym_eigenvalues(&c)
}

/// Cyclic Jacobi eigenvalue iteration. Slow reference implementation kept as
/// an independent cross-check for the QL solver.
pub fn jacobi_eigenvalues(m: &SymMatrix) -> Vec<f64> {
    let n = m.n;
    let mut a = m.a.clone();
    for _sweep in 0..100 {
        let mut off = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                off += a[i * n + j] * a[i * n + j];
            }
        }
        if off <= 1e-26 * (1.0 + m.max_abs_diag().powi(2)) {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    -1.0 / (-theta + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut d: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    d.sort_by(|x, y| x.partial_cmp(y).unwrap());
    d
}
