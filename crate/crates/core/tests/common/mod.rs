//! Independent dense-matrix oracles for the integration tests.
#![allow(dead_code)]

pub type Dense = Vec<Vec<f64>>;

pub fn from_faer(m: &faer::Mat<f64>) -> Dense {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect())
        .collect()
}

pub fn identity(n: usize) -> Dense {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect()
}

pub fn matmul(a: &Dense, b: &Dense) -> Dense {
    let (n, m, p) = (a.len(), b.len(), b[0].len());
    let mut c = vec![vec![0.0; p]; n];
    for i in 0..n {
        for k in 0..m {
            let aik = a[i][k];
            if aik != 0.0 {
                for j in 0..p {
                    c[i][j] += aik * b[k][j];
                }
            }
        }
    }
    c
}

pub fn matvec(a: &Dense, x: &[f64]) -> Vec<f64> {
    a.iter()
        .map(|row| row.iter().zip(x).map(|(r, v)| r * v).sum())
        .collect()
}

fn axpby(a: f64, x: &Dense, b: f64, y: &Dense) -> Dense {
    x.iter()
        .zip(y)
        .map(|(rx, ry)| rx.iter().zip(ry).map(|(p, q)| a * p + b * q).collect())
        .collect()
}

/// Solves A X = B by Gaussian elimination with partial pivoting.
pub fn solve(a: &Dense, b: &Dense) -> Dense {
    let n = a.len();
    let mut a = a.clone();
    let mut b = b.clone();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            if f != 0.0 {
                for k in col..n {
                    a[row][k] -= f * a[col][k];
                }
                for k in 0..b[row].len() {
                    b[row][k] -= f * b[col][k];
                }
            }
        }
    }
    for col in (0..n).rev() {
        for k in 0..b[col].len() {
            let mut s = b[col][k];
            for j in col + 1..n {
                s -= a[col][j] * b[j][k];
            }
            b[col][k] = s / a[col][col];
        }
    }
    b
}

fn norm1(a: &Dense) -> f64 {
    let n = a[0].len();
    (0..n)
        .map(|j| a.iter().map(|r| r[j].abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// exp(A) by scaling and squaring with a degree-13 Padé approximant.
pub fn expm(a: &Dense) -> Dense {
    const B: [f64; 14] = [
        64764752532480000.0,
        32382376266240000.0,
        7771770303897600.0,
        1187353796428800.0,
        129060195264000.0,
        10559470521600.0,
        670442572800.0,
        33522128640.0,
        1323241920.0,
        40840800.0,
        960960.0,
        16380.0,
        182.0,
        1.0,
    ];
    let n = a.len();
    let theta13 = 5.371920351148152;
    let s = ((norm1(a) / theta13).log2().ceil()).max(0.0) as i32;
    let scale = 0.5f64.powi(s);
    let a: Dense = a
        .iter()
        .map(|r| r.iter().map(|v| v * scale).collect())
        .collect();
    let id = identity(n);
    let a2 = matmul(&a, &a);
    let a4 = matmul(&a2, &a2);
    let a6 = matmul(&a4, &a2);
    let lin = |c: [f64; 4]| -> Dense {
        let t = axpby(c[0], &a6, c[1], &a4);
        let t = axpby(1.0, &t, c[2], &a2);
        axpby(1.0, &t, c[3], &id)
    };
    let u_inner = axpby(
        1.0,
        &matmul(&a6, &lin([B[13], B[11], B[9], 0.0])),
        1.0,
        &lin([B[7], B[5], B[3], B[1]]),
    );
    let u = matmul(&a, &u_inner);
    let v = axpby(
        1.0,
        &matmul(&a6, &lin([B[12], B[10], B[8], 0.0])),
        1.0,
        &lin([B[6], B[4], B[2], B[0]]),
    );
    let p = axpby(1.0, &v, 1.0, &u);
    let q = axpby(1.0, &v, -1.0, &u);
    let mut r = solve(&q, &p);
    for _ in 0..s {
        r = matmul(&r, &r);
    }
    r
}

/// Homogeneous free-dof state at time t for γ = 1: exp(-C⁻¹K t) Ũ₀.
pub fn exponential_state(c: &faer::Mat<f64>, k: &faer::Mat<f64>, u0: &[f64], t: f64) -> Vec<f64> {
    let m = solve(&from_faer(c), &from_faer(k));
    let a: Dense = m
        .iter()
        .map(|r| r.iter().map(|v| -v * t).collect())
        .collect();
    matvec(&expm(&a), u0)
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}
