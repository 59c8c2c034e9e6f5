//! Independent numerical oracle: cyclic Jacobi rotations on a dense symmetric
//! matrix. Shares no code with the library's eigen path.
#![allow(dead_code)]

/// All eigenvalues of the symmetric row-major `n x n` matrix `a`, ascending.
pub fn jacobi_eigenvalues(n: usize, a: &[f64]) -> Vec<f64> {
    let mut m = a.to_vec();
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m[i * n + j] * m[i * n + j])
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[p * n + q];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let theta = (m[q * n + q] - m[p * n + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = m[k * n + p];
                    let akq = m[k * n + q];
                    m[k * n + p] = c * akp - s * akq;
                    m[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = m[p * n + k];
                    let aqk = m[q * n + k];
                    m[p * n + k] = c * apk - s * aqk;
                    m[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| m[i * n + i]).collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Spectrum of `-L` for a reversible rate matrix, symmetrized by the
/// geometric mean `sqrt(C(x,y) C(y,x))` of opposite rates.
pub fn reversible_spectrum(n: usize, rates: &[f64]) -> Vec<f64> {
    let mut s = vec![0.0; n * n];
    for x in 0..n {
        let mut out = 0.0;
        for y in 0..n {
            if x != y {
                out += rates[x * n + y];
                s[x * n + y] = -(rates[x * n + y] * rates[y * n + x]).sqrt();
            }
        }
        s[x * n + x] = out;
    }
    jacobi_eigenvalues(n, &s)
}
