//! Spectral radius via dense eigenvalue computation, sub-multiplicative
//! matrix norms, and the block norm that makes the lifted system norm-exact
//! on accepted words.
//!
//! Eigenvalues are computed by Householder reduction to upper Hessenberg
//! form followed by Francis double-shift QR iteration; 2x2 trailing blocks
//! deflate into real pairs or complex conjugate pairs.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// Sub-multiplicative matrix norm selector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NormKind {
    /// Induced 1-norm: max column abs-sum.
    One,
    /// Induced infinity-norm: max row abs-sum.
    Inf,
    /// Frobenius norm.
    Frobenius,
    /// Induced 2-norm: largest singular value, via power iteration on `a^T a`.
    Two,
    /// Block norm: partition into `ell x ell` blocks and take the max over
    /// block-columns of summed base-norms.
    Block { base: Box<NormKind>, ell: usize },
}

impl NormKind {
    pub fn block(base: NormKind, ell: usize) -> Self {
        NormKind::Block {
            base: Box::new(base),
            ell,
        }
    }
}

impl std::fmt::Display for NormKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NormKind::One => write!(f, "one"),
            NormKind::Inf => write!(f, "inf"),
            NormKind::Frobenius => write!(f, "fro"),
            NormKind::Two => write!(f, "two"),
            NormKind::Block { base, ell } => write!(f, "block({base},{ell})"),
        }
    }
}

/// Eigenvalue multiset of a square matrix together with the spectral radius.
#[derive(Debug, Clone)]
pub struct Spectrum<T: Scalar> {
    eigenvalues: Vec<Complex<T>>,
    radius: T,
}

impl<T: Scalar> Spectrum<T> {
    pub fn eigenvalues(&self) -> &[Complex<T>] {
        &self.eigenvalues
    }

    pub fn radius(&self) -> T {
        self.radius
    }
}

/// Eigenvalues of a square matrix.
pub fn eigenvalues<T: Scalar>(a: &Matrix<T>) -> Result<Spectrum<T>> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    let eigs = match n {
        1 => vec![Complex::new(a.get(0, 0), T::zero())],
        2 => eig2(a.get(0, 0), a.get(0, 1), a.get(1, 0), a.get(1, 1)).to_vec(),
        _ => {
            let mut h = a.clone();
            hessenberg(&mut h);
            hqr(&mut h)?
        }
    };
    let radius = eigs
        .iter()
        .map(|z| z.norm())
        .fold(T::zero(), |acc, v| acc.max(v));
    Ok(Spectrum {
        eigenvalues: eigs,
        radius,
    })
}

/// Spectral radius of a square matrix.
pub fn spectral_radius<T: Scalar>(a: &Matrix<T>) -> Result<T> {
    Ok(eigenvalues(a)?.radius())
}

/// Eigenvalues of a real 2x2 matrix in closed form.
fn eig2<T: Scalar>(a: T, b: T, c: T, d: T) -> [Complex<T>; 2] {
    let half = T::from_f64_lossy(0.5);
    let mean = (a + d) * half;
    let diff = (a - d) * half;
    let disc = diff * diff + b * c;
    if disc >= T::zero() {
        let s = disc.sqrt();
        [
            Complex::new(mean + s, T::zero()),
            Complex::new(mean - s, T::zero()),
        ]
    } else {
        let s = (-disc).sqrt();
        [Complex::new(mean, s), Complex::new(mean, -s)]
    }
}

/// In-place Householder reduction to upper Hessenberg form.
fn hessenberg<T: Scalar>(a: &mut Matrix<T>) {
    let n = a.rows();
    for k in 0..n.saturating_sub(2) {
        // Householder vector for column k below the subdiagonal.
        let mut norm2 = T::zero();
        for i in k + 1..n {
            let v = a.get(i, k);
            norm2 = norm2 + v * v;
        }
        let x0 = a.get(k + 1, k);
        let norm = norm2.sqrt();
        if norm == T::zero() || norm2 - x0 * x0 == T::zero() {
            continue;
        }
        let alpha = if x0 >= T::zero() { -norm } else { norm };
        let mut v = vec![T::zero(); n];
        for i in k + 1..n {
            v[i] = a.get(i, k);
        }
        v[k + 1] = v[k + 1] - alpha;
        let vnorm2: T = v.iter().map(|&x| x * x).sum();
        if vnorm2 == T::zero() {
            continue;
        }
        let two = T::from_f64_lossy(2.0);
        // A <- (I - 2vv^T/|v|^2) A
        for j in k..n {
            let mut dot = T::zero();
            for i in k + 1..n {
                dot = dot + v[i] * a.get(i, j);
            }
            let f = two * dot / vnorm2;
            for i in k + 1..n {
                a.set(i, j, a.get(i, j) - f * v[i]);
            }
        }
        // A <- A (I - 2vv^T/|v|^2)
        for i in 0..n {
            let mut dot = T::zero();
            for j in k + 1..n {
                dot = dot + a.get(i, j) * v[j];
            }
            let f = two * dot / vnorm2;
            for j in k + 1..n {
                a.set(i, j, a.get(i, j) - f * v[j]);
            }
        }
        // clean the annihilated entries
        a.set(k + 1, k, alpha);
        for i in k + 2..n {
            a.set(i, k, T::zero());
        }
    }
}

#[inline]
fn sign<T: Scalar>(a: T, b: T) -> T {
    if b >= T::zero() {
        a.abs()
    } else {
        -a.abs()
    }
}

/// Francis double-shift QR on an upper Hessenberg matrix; returns all
/// eigenvalues. The sweep budget is 100 per matrix dimension.
fn hqr<T: Scalar>(a: &mut Matrix<T>) -> Result<Vec<Complex<T>>> {
    let n = a.rows();
    let budget = 100 * n;
    let mut total_sweeps = 0usize;
    let mut eigs: Vec<Complex<T>> = Vec::with_capacity(n);

    let zero = T::zero();
    let half = T::from_f64_lossy(0.5);

    let mut anorm = zero;
    for i in 0..n {
        for j in i.saturating_sub(1)..n {
            anorm = anorm + a.get(i, j).abs();
        }
    }

    let mut nn = n as i64 - 1;
    let mut t = zero;
    while nn >= 0 {
        let mut its = 0usize;
        loop {
            // look for a single small subdiagonal element
            let mut l = nn;
            while l >= 1 {
                let mut s = a.get((l - 1) as usize, (l - 1) as usize).abs()
                    + a.get(l as usize, l as usize).abs();
                if s == zero {
                    s = anorm;
                }
                if a.get(l as usize, (l - 1) as usize).abs() + s == s {
                    a.set(l as usize, (l - 1) as usize, zero);
                    break;
                }
                l -= 1;
            }
            let mut x = a.get(nn as usize, nn as usize);
            if l == nn {
                eigs.push(Complex::new(x + t, zero));
                nn -= 1;
                break;
            }
            let mut y = a.get((nn - 1) as usize, (nn - 1) as usize);
            let mut w =
                a.get(nn as usize, (nn - 1) as usize) * a.get((nn - 1) as usize, nn as usize);
            if l == nn - 1 {
                let p = half * (y - x);
                let q = p * p + w;
                let z = q.abs().sqrt();
                x = x + t;
                if q >= zero {
                    let z = p + sign(z, p);
                    let e1 = x + z;
                    let e2 = if z != zero { x - w / z } else { x + z };
                    eigs.push(Complex::new(e1, zero));
                    eigs.push(Complex::new(e2, zero));
                } else {
                    eigs.push(Complex::new(x + p, z));
                    eigs.push(Complex::new(x + p, -z));
                }
                nn -= 2;
                break;
            }
            if total_sweeps >= budget {
                return Err(Error::NonConvergence { sweeps: budget });
            }
            if its == 10 || its == 20 {
                // exceptional shift
                t = t + x;
                for i in 0..=nn as usize {
                    a.set(i, i, a.get(i, i) - x);
                }
                let s = a.get(nn as usize, (nn - 1) as usize).abs()
                    + a.get((nn - 1) as usize, (nn - 2) as usize).abs();
                x = T::from_f64_lossy(0.75) * s;
                y = x;
                w = T::from_f64_lossy(-0.4375) * s * s;
            }
            its += 1;
            total_sweeps += 1;

            // look for two consecutive small subdiagonal elements
            let mut m = nn - 2;
            let (mut p, mut q, mut r);
            loop {
                let z = a.get(m as usize, m as usize);
                let rr = x - z;
                let ss = y - z;
                p = (rr * ss - w) / a.get((m + 1) as usize, m as usize)
                    + a.get(m as usize, (m + 1) as usize);
                q = a.get((m + 1) as usize, (m + 1) as usize) - z - rr - ss;
                r = a.get((m + 2) as usize, (m + 1) as usize);
                let s = p.abs() + q.abs() + r.abs();
                p = p / s;
                q = q / s;
                r = r / s;
                if m == l {
                    break;
                }
                let u = a.get(m as usize, (m - 1) as usize).abs() * (q.abs() + r.abs());
                let v = p.abs()
                    * (a.get((m - 1) as usize, (m - 1) as usize).abs()
                        + z.abs()
                        + a.get((m + 1) as usize, (m + 1) as usize).abs());
                if u + v == v {
                    break;
                }
                m -= 1;
            }
            for i in (m + 2)..=nn {
                a.set(i as usize, (i - 2) as usize, zero);
                if i != m + 2 {
                    a.set(i as usize, (i - 3) as usize, zero);
                }
            }

            // double QR step on rows l..=nn and columns l..=nn
            for k in m..=(nn - 1) {
                if k != m {
                    p = a.get(k as usize, (k - 1) as usize);
                    q = a.get((k + 1) as usize, (k - 1) as usize);
                    r = if k != nn - 1 {
                        a.get((k + 2) as usize, (k - 1) as usize)
                    } else {
                        zero
                    };
                    x = p.abs() + q.abs() + r.abs();
                    if x != zero {
                        p = p / x;
                        q = q / x;
                        r = r / x;
                    }
                }
                let s = sign((p * p + q * q + r * r).sqrt(), p);
                if s == zero {
                    continue;
                }
                if k == m {
                    if l != m {
                        a.set(
                            k as usize,
                            (k - 1) as usize,
                            -a.get(k as usize, (k - 1) as usize),
                        );
                    }
                } else {
                    a.set(k as usize, (k - 1) as usize, -s * x);
                }
                p = p + s;
                x = p / s;
                y = q / s;
                let z = r / s;
                q = q / p;
                r = r / p;
                for j in k..=nn {
                    let mut pp = a.get(k as usize, j as usize)
                        + q * a.get((k + 1) as usize, j as usize);
                    if k != nn - 1 {
                        pp = pp + r * a.get((k + 2) as usize, j as usize);
                        a.set(
                            (k + 2) as usize,
                            j as usize,
                            a.get((k + 2) as usize, j as usize) - pp * z,
                        );
                    }
                    a.set(
                        (k + 1) as usize,
                        j as usize,
                        a.get((k + 1) as usize, j as usize) - pp * y,
                    );
                    a.set(k as usize, j as usize, a.get(k as usize, j as usize) - pp * x);
                }
                let mmin = if nn < k + 3 { nn } else { k + 3 };
                for i in l..=mmin {
                    let mut pp = x * a.get(i as usize, k as usize)
                        + y * a.get(i as usize, (k + 1) as usize);
                    if k != nn - 1 {
                        pp = pp + z * a.get(i as usize, (k + 2) as usize);
                        a.set(
                            i as usize,
                            (k + 2) as usize,
                            a.get(i as usize, (k + 2) as usize) - pp * r,
                        );
                    }
                    a.set(
                        i as usize,
                        (k + 1) as usize,
                        a.get(i as usize, (k + 1) as usize) - pp * q,
                    );
                    a.set(i as usize, k as usize, a.get(i as usize, k as usize) - pp);
                }
            }
        }
    }
    Ok(eigs)
}

/// Matrix norm of the requested kind.
pub fn matrix_norm<T: Scalar>(a: &Matrix<T>, kind: &NormKind) -> Result<T> {
    match kind {
        NormKind::One => {
            let mut best = T::zero();
            for j in 0..a.cols() {
                let s: T = (0..a.rows()).map(|i| a.get(i, j).abs()).sum();
                best = best.max(s);
            }
            Ok(best)
        }
        NormKind::Inf => {
            let mut best = T::zero();
            for i in 0..a.rows() {
                let s: T = a.row(i).iter().map(|v| v.abs()).sum();
                best = best.max(s);
            }
            Ok(best)
        }
        NormKind::Frobenius => {
            let s: T = a.data().iter().map(|&v| v * v).sum();
            Ok(s.sqrt())
        }
        NormKind::Two => Ok(two_norm(a)),
        NormKind::Block { base, ell } => block_norm(a, *ell, base),
    }
}

/// Largest singular value by power iteration on `a^T a`.
///
/// Deterministic all-ones start vector; if the iteration stagnates it is
/// re-seeded once with a fixed index-dependent perturbation.
fn two_norm<T: Scalar>(a: &Matrix<T>) -> T {
    if a.is_zero() {
        return T::zero();
    }
    let n = a.cols();
    let at = a.transpose();
    let tol = T::from_f64_lossy(1e-10).max(T::epsilon());
    let cap = 10_000usize;

    let mut v = vec![T::one(); n];
    normalize(&mut v);
    let mut lambda = T::zero();
    let mut reseeded = false;
    let mut iter = 0usize;
    while iter < cap {
        iter += 1;
        // w = A^T (A v)
        let av = a.mul_vec(&v).expect("dimension checked");
        let mut w = at.mul_vec(&av).expect("dimension checked");
        let wnorm = norm2(&w);
        if wnorm == T::zero() {
            if reseeded {
                return T::zero();
            }
            reseed(&mut v);
            reseeded = true;
            continue;
        }
        let new_lambda = wnorm;
        let rel = (new_lambda - lambda).abs() / new_lambda.max(T::epsilon());
        normalize(&mut w);
        v = w;
        if rel <= tol {
            return new_lambda.sqrt();
        }
        lambda = new_lambda;
        if iter == cap / 2 && !reseeded {
            reseed(&mut v);
            normalize(&mut v);
            reseeded = true;
        }
    }
    lambda.sqrt()
}

fn norm2<T: Scalar>(v: &[T]) -> T {
    v.iter().map(|&x| x * x).sum::<T>().sqrt()
}

fn normalize<T: Scalar>(v: &mut [T]) {
    let n = norm2(v);
    if n > T::zero() {
        for x in v.iter_mut() {
            *x = *x / n;
        }
    }
}

fn reseed<T: Scalar>(v: &mut [T]) {
    for (i, x) in v.iter_mut().enumerate() {
        *x = *x + T::from_f64_lossy(1e-3) * T::from_usize(i + 1).unwrap();
    }
}

/// Block norm: `s` is `n*ell x n*ell`; returns
/// `max_j sum_i base_norm(s_ij)` over the `ell x ell` block partition.
pub fn block_norm<T: Scalar>(s: &Matrix<T>, ell: usize, base: &NormKind) -> Result<T> {
    if !s.is_square() {
        return Err(Error::NotSquare {
            rows: s.rows(),
            cols: s.cols(),
        });
    }
    if ell == 0 || s.rows() % ell != 0 {
        return Err(Error::DimensionMismatch(format!(
            "block norm: dimension {} not divisible by ell={ell}",
            s.rows()
        )));
    }
    let n = s.rows() / ell;
    let mut best = T::zero();
    for j in 0..ell {
        let mut col_sum = T::zero();
        for i in 0..ell {
            let b = s.block(i * n, j * n, n, n)?;
            col_sum = col_sum + matrix_norm(&b, base)?;
        }
        best = best.max(col_sum);
    }
    Ok(best)
}
