//! Fixed-dimension vector and small-matrix helpers.
//!
//! The library only ever works in dimensions 2, 3 and 4, so everything is a
//! plain `[f64; N]` with free functions over a const generic. No allocation,
//! no SIMD cleverness — the hot loops are support-function evaluations and
//! these helpers inline away.

pub fn dot<const N: usize>(a: &[f64; N], b: &[f64; N]) -> f64 {
    let mut s = 0.0;
    for i in 0..N {
        s += a[i] * b[i];
    }
    s
}

pub fn add<const N: usize>(a: &[f64; N], b: &[f64; N]) -> [f64; N] {
    let mut r = [0.0; N];
    for i in 0..N {
        r[i] = a[i] + b[i];
    }
    r
}

pub fn sub<const N: usize>(a: &[f64; N], b: &[f64; N]) -> [f64; N] {
    let mut r = [0.0; N];
    for i in 0..N {
        r[i] = a[i] - b[i];
    }
    r
}

pub fn scale<const N: usize>(a: &[f64; N], s: f64) -> [f64; N] {
    let mut r = [0.0; N];
    for i in 0..N {
        r[i] = a[i] * s;
    }
    r
}

/// `a + s * b`, the ubiquitous axpy.
pub fn axpy<const N: usize>(a: &[f64; N], s: f64, b: &[f64; N]) -> [f64; N] {
    let mut r = [0.0; N];
    for i in 0..N {
        r[i] = a[i] + s * b[i];
    }
    r
}

pub fn norm_sq<const N: usize>(a: &[f64; N]) -> f64 {
    dot(a, a)
}

pub fn norm<const N: usize>(a: &[f64; N]) -> f64 {
    norm_sq(a).sqrt()
}

pub fn dist<const N: usize>(a: &[f64; N], b: &[f64; N]) -> f64 {
    norm(&sub(a, b))
}

/// Normalize, returning `None` for vectors shorter than `tiny`.
pub fn normalized<const N: usize>(a: &[f64; N], tiny: f64) -> Option<[f64; N]> {
    let n = norm(a);
    if n < tiny {
        None
    } else {
        Some(scale(a, 1.0 / n))
    }
}

/// Component of `a` orthogonal to the unit vector `u`.
pub fn reject<const N: usize>(a: &[f64; N], u: &[f64; N]) -> [f64; N] {
    axpy(a, -dot(a, u), u)
}

/// Orthonormal basis of the tangent space of the unit sphere at `u` (unit).
///
/// Deterministic: seeds Gram–Schmidt with the standard basis vectors least
/// aligned with `u`, so the result is well conditioned for every `u`.
pub fn tangent_basis<const N: usize>(u: &[f64; N]) -> Vec<[f64; N]> {
    let mut idx: Vec<usize> = (0..N).collect();
    idx.sort_by(|&a, &b| u[a].abs().total_cmp(&u[b].abs()));
    let mut out: Vec<[f64; N]> = Vec::with_capacity(N - 1);
    for &i in idx.iter().take(N - 1) {
        let mut v = [0.0; N];
        v[i] = 1.0;
        let mut w = reject(&v, u);
        for b in &out {
            w = reject(&w, b);
        }
        if let Some(unit) = normalized(&w, 1e-9) {
            out.push(unit);
        }
    }
    out
}

pub fn cross(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Lexicographic comparison with an absolute slack per coordinate: returns
/// true when `a` precedes `b` once coordinates closer than `eps` are treated
/// as ties. Used to pick canonical representatives on non-smooth faces.
pub fn lex_less<const N: usize>(a: &[f64; N], b: &[f64; N], eps: f64) -> bool {
    for i in 0..N {
        if (a[i] - b[i]).abs() > eps {
            return a[i] < b[i];
        }
    }
    false
}

/// Apply a row-major square matrix.
pub fn mat_apply<const N: usize>(m: &[[f64; N]; N], v: &[f64; N]) -> [f64; N] {
    let mut out = [0.0; N];
    for (o, row) in out.iter_mut().zip(m.iter()) {
        *o = dot(row, v);
    }
    out
}

/// Apply the transpose of a row-major square matrix.
pub fn mat_apply_t<const N: usize>(m: &[[f64; N]; N], v: &[f64; N]) -> [f64; N] {
    let mut out = [0.0; N];
    for (row, &vi) in m.iter().zip(v.iter()) {
        for (o, &mij) in out.iter_mut().zip(row.iter()) {
            *o += mij * vi;
        }
    }
    out
}

/// Max deviation of `M^T M` from the identity — zero exactly for orthogonal
/// matrices (rotations and reflections alike).
pub fn orthonormality_defect<const N: usize>(m: &[[f64; N]; N]) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..N {
        for j in 0..N {
            let mut s = 0.0;
            for row in m.iter() {
                s += row[i] * row[j];
            }
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((s - target).abs());
        }
    }
    worst
}

/// Apply a row-major 3x3 matrix.
pub fn mat3_apply(m: &[[f64; 3]; 3], v: &[f64; 3]) -> [f64; 3] {
    [dot(&m[0], v), dot(&m[1], v), dot(&m[2], v)]
}

/// Apply the transpose of a row-major 3x3 matrix.
pub fn mat3_apply_t(m: &[[f64; 3]; 3], v: &[f64; 3]) -> [f64; 3] {
    [
        m[0][0] * v[0] + m[1][0] * v[1] + m[2][0] * v[2],
        m[0][1] * v[0] + m[1][1] * v[1] + m[2][1] * v[2],
        m[0][2] * v[0] + m[1][2] * v[1] + m[2][2] * v[2],
    ]
}

/// How far a 3x3 matrix is from being a rotation: max deviation of `R^T R`
/// from the identity plus the deviation of `det R` from 1.
pub fn mat3_rotation_defect(m: &[[f64; 3]; 3]) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            let mut s = 0.0;
            for k in 0..3 {
                s += m[k][i] * m[k][j];
            }
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((s - target).abs());
        }
    }
    let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    worst.max((det - 1.0).abs())
}

/// Eigen-decomposition of a symmetric 3x3 matrix by cyclic Jacobi rotations.
///
/// Returns `(eigenvalues, eigenvectors)` with eigenvalues ascending and
/// `eigenvectors[k]` the unit eigenvector for `eigenvalues[k]`. Plenty for
/// plane fitting; converges to machine precision in a handful of sweeps.
pub fn sym3_eigen(a: &[[f64; 3]; 3]) -> ([f64; 3], [[f64; 3]; 3]) {
    let mut m = *a;
    let mut v = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
    for _sweep in 0..64 {
        let off = (m[0][1] * m[0][1] + m[0][2] * m[0][2] + m[1][2] * m[1][2]).sqrt();
        if off < 1e-15 * (1.0 + m[0][0].abs() + m[1][1].abs() + m[2][2].abs()) {
            break;
        }
        for &(p, q) in &[(0usize, 1usize), (0, 2), (1, 2)] {
            if m[p][q].abs() < 1e-300 {
                continue;
            }
            let theta = 0.5 * (m[q][q] - m[p][p]) / m[p][q];
            let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
            let c = 1.0 / (t * t + 1.0).sqrt();
            let s = t * c;
            // Rotate rows/columns p and q.
            let mpp = m[p][p];
            let mqq = m[q][q];
            let mpq = m[p][q];
            m[p][p] = c * c * mpp - 2.0 * s * c * mpq + s * s * mqq;
            m[q][q] = s * s * mpp + 2.0 * s * c * mpq + c * c * mqq;
            m[p][q] = 0.0;
            m[q][p] = 0.0;
            let r = 3 - p - q; // the untouched index
            let mrp = m[r][p];
            let mrq = m[r][q];
            m[r][p] = c * mrp - s * mrq;
            m[p][r] = m[r][p];
            m[r][q] = s * mrp + c * mrq;
            m[q][r] = m[r][q];
            for row in v.iter_mut() {
                let vp = row[p];
                let vq = row[q];
                row[p] = c * vp - s * vq;
                row[q] = s * vp + c * vq;
            }
        }
    }
    // Columns of v are eigenvectors; sort by eigenvalue.
    let mut order = [0usize, 1, 2];
    order.sort_by(|&i, &j| m[i][i].partial_cmp(&m[j][j]).unwrap());
    let vals = [m[order[0]][order[0]], m[order[1]][order[1]], m[order[2]][order[2]]];
    let mut vecs = [[0.0; 3]; 3];
    for (k, &col) in order.iter().enumerate() {
        for i in 0..3 {
            vecs[k][i] = v[i][col];
        }
    }
    (vals, vecs)
}
