//! Symmetric eigenvalues by two routes that share nothing with the main
//! crate's rotation-based solver: closed-form / bisected characteristic
//! polynomials for n <= 4, and Sturm-count bisection on a Householder
//! tridiagonalization for arbitrary n.
//!
//! Everything assumes a real symmetric input, so all roots are real; the
//! quartic and cubic helpers lean on that and are not general-purpose
//! polynomial solvers.

use ndarray::Array2;

const TWO_THIRDS_PI: f64 = 2.0 * std::f64::consts::FRAC_PI_3;

/// Eigenvalues in ascending order from the characteristic polynomial.
/// Closed form through the cubic; the quartic is bracketed between the
/// real roots of its derivative and bisected. Panics for n > 4.
pub fn charpoly_eigenvalues(a: &Array2<f64>) -> Vec<f64> {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "matrix must be square");
    let mut eig = match n {
        0 => Vec::new(),
        1 => vec![a[(0, 0)]],
        2 => eig2(a),
        3 => eig3(a),
        4 => eig4(a),
        _ => panic!("characteristic-polynomial route only covers n <= 4"),
    };
    eig.sort_by(f64::total_cmp);
    eig
}

fn eig2(a: &Array2<f64>) -> Vec<f64> {
    let mean = 0.5 * (a[(0, 0)] + a[(1, 1)]);
    let half_gap = 0.5 * (a[(0, 0)] - a[(1, 1)]);
    let root = (half_gap * half_gap + a[(0, 1)] * a[(1, 0)])
        .max(0.0)
        .sqrt();
    vec![mean - root, mean + root]
}

// Trigonometric solution of the symmetric 3x3 characteristic cubic.
fn eig3(a: &Array2<f64>) -> Vec<f64> {
    let p1 = a[(0, 1)].powi(2) + a[(0, 2)].powi(2) + a[(1, 2)].powi(2);
    let q = (a[(0, 0)] + a[(1, 1)] + a[(2, 2)]) / 3.0;
    let p2 = (a[(0, 0)] - q).powi(2) + (a[(1, 1)] - q).powi(2) + (a[(2, 2)] - q).powi(2) + 2.0 * p1;
    if p2 == 0.0 {
        return vec![q; 3];
    }
    let p = (p2 / 6.0).sqrt();
    let b = |i: usize, j: usize| (a[(i, j)] - if i == j { q } else { 0.0 }) / p;
    let det_b = b(0, 0) * (b(1, 1) * b(2, 2) - b(1, 2) * b(2, 1))
        - b(0, 1) * (b(1, 0) * b(2, 2) - b(1, 2) * b(2, 0))
        + b(0, 2) * (b(1, 0) * b(2, 1) - b(1, 1) * b(2, 0));
    let phi = (det_b / 2.0).clamp(-1.0, 1.0).acos() / 3.0;
    let hi = q + 2.0 * p * phi.cos();
    let lo = q + 2.0 * p * (phi + TWO_THIRDS_PI).cos();
    vec![lo, 3.0 * q - hi - lo, hi]
}

// Faddeev-LeVerrier coefficients of det(xI - A), then root isolation.
fn eig4(a: &Array2<f64>) -> Vec<f64> {
    let trace = |m: &Array2<f64>| (0..4).map(|i| m[(i, i)]).sum::<f64>();
    let shift_diag = |m: &Array2<f64>, c: f64| {
        let mut out = m.clone();
        for i in 0..4 {
            out[(i, i)] += c;
        }
        out
    };
    let m1 = a.clone();
    let c3 = -trace(&m1);
    let m2 = a.dot(&shift_diag(&m1, c3));
    let c2 = -trace(&m2) / 2.0;
    let m3 = a.dot(&shift_diag(&m2, c2));
    let c1 = -trace(&m3) / 3.0;
    let m4 = a.dot(&shift_diag(&m3, c1));
    let c0 = -trace(&m4) / 4.0;
    quartic_real_roots(c3, c2, c1, c0, gershgorin_bound(a))
}

fn gershgorin_bound(a: &Array2<f64>) -> f64 {
    let n = a.nrows();
    (0..n)
        .map(|i| (0..n).map(|j| a[(i, j)].abs()).sum::<f64>())
        .fold(0.0f64, f64::max)
        + 1.0
}

/// Real roots of x^3 + b x^2 + c x + d, ascending with multiplicity.
/// Only valid for cubics with an all-real root set, which derivatives of
/// symmetric characteristic polynomials always are.
fn cubic_real_roots(b: f64, c: f64, d: f64) -> [f64; 3] {
    let shift = -b / 3.0;
    let p = c - b * b / 3.0;
    let q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
    let mut t = if p < 0.0 {
        let m = 2.0 * (-p / 3.0).sqrt();
        let theta = (3.0 * q / (p * m)).clamp(-1.0, 1.0).acos() / 3.0;
        [
            m * theta.cos(),
            m * (theta - TWO_THIRDS_PI).cos(),
            m * (theta - 2.0 * TWO_THIRDS_PI).cos(),
        ]
    } else {
        // p >= 0 with all roots real forces a (numerically) triple root.
        let t0 = (-q).cbrt();
        [t0, t0, t0]
    };
    for v in &mut t {
        *v += shift;
    }
    t.sort_by(f64::total_cmp);
    t
}

// Between consecutive critical points a polynomial is strictly monotone,
// so each window holds at most one root; a root shared by adjacent
// windows is exactly a multiple root and gets counted once per window,
// which reproduces its multiplicity.
fn quartic_real_roots(c3: f64, c2: f64, c1: f64, c0: f64, bound: f64) -> Vec<f64> {
    let p = |x: f64| (((x + c3) * x + c2) * x + c1) * x + c0;
    let near_zero = |x: f64| {
        let s = x.abs().max(1.0);
        let scale =
            s * s * s * s + c3.abs() * s * s * s + c2.abs() * s * s + c1.abs() * s + c0.abs();
        p(x).abs() <= 1e-11 * scale
    };
    let crit = cubic_real_roots(0.75 * c3, 0.5 * c2, 0.25 * c1);
    let cuts = [-bound, crit[0], crit[1], crit[2], bound];
    let mut roots = Vec::with_capacity(4);
    for w in cuts.windows(2) {
        let (x0, x1) = (w[0], w[1]);
        if near_zero(x0) {
            roots.push(x0);
        } else if near_zero(x1) {
            roots.push(x1);
        } else if p(x0).signum() != p(x1).signum() {
            roots.push(bisect(&p, x0, x1));
        }
    }
    // Vieta fill for anything lost to extreme clustering: the missing
    // roots then coincide, so splitting the missing sum evenly is exact.
    while roots.len() < 4 {
        let fill = (-c3 - roots.iter().sum::<f64>()) / (4 - roots.len()) as f64;
        roots.push(fill);
    }
    roots.truncate(4);
    roots.sort_by(f64::total_cmp);
    roots
}

fn bisect<F: Fn(f64) -> f64>(f: &F, mut lo: f64, mut hi: f64) -> f64 {
    let f_lo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        if (f(mid) >= 0.0) == (f_lo >= 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Eigenvalues in ascending order for any symmetric matrix: Householder
/// reduction to tridiagonal form, then per-index bisection on the Sturm
/// count. Repeated eigenvalues are no obstacle since every index is
/// located independently.
pub fn tridiagonal_eigenvalues(a: &Array2<f64>) -> Vec<f64> {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "matrix must be square");
    if n == 0 {
        return Vec::new();
    }
    let (d, e) = householder_tridiagonal(a);
    let bound = gershgorin_bound(a);
    (0..n)
        .map(|j| {
            let (mut lo, mut hi) = (-bound, bound);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if mid == lo || mid == hi {
                    break;
                }
                if sturm_count(&d, &e, mid) > j {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            0.5 * (lo + hi)
        })
        .collect()
}

// Count of eigenvalues strictly below x via the LDL^T inertia of T - xI.
fn sturm_count(d: &[f64], e: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut q = 1.0f64;
    for i in 0..d.len() {
        let off = if i == 0 { 0.0 } else { e[i - 1] * e[i - 1] / q };
        q = d[i] - x - off;
        if q < 0.0 {
            count += 1;
        }
        if q.abs() < 1e-300 {
            q = -1e-300;
        }
    }
    count
}

// Explicit reflector matrices; fine at oracle sizes.
fn householder_tridiagonal(a: &Array2<f64>) -> (Vec<f64>, Vec<f64>) {
    let n = a.nrows();
    let mut m = a.clone();
    for k in 0..n.saturating_sub(2) {
        let mut v: Vec<f64> = (k + 1..n).map(|i| m[(i, k)]).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let alpha = if v[0] >= 0.0 { -norm } else { norm };
        v[0] -= alpha;
        let vv = v.iter().map(|x| x * x).sum::<f64>();
        if vv == 0.0 {
            continue;
        }
        let mut h = Array2::<f64>::eye(n);
        for i in 0..v.len() {
            for j in 0..v.len() {
                h[(k + 1 + i, k + 1 + j)] -= 2.0 * v[i] * v[j] / vv;
            }
        }
        m = h.dot(&m).dot(&h);
    }
    let d = (0..n).map(|i| m[(i, i)]).collect();
    let e = (0..n - 1).map(|i| m[(i + 1, i)]).collect();
    (d, e)
}
