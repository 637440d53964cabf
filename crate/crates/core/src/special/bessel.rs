//! Modified Bessel functions and Gegenbauer polynomials.

use libm::lgamma;

const TAIL: f64 = 1e-18;
const MAX_TERMS: usize = 2000;

/// `I_nu(b)` by its ascending series.
///
/// For negative `b` the result is defined only for integer `nu`; other
/// orders return NaN.
pub fn bessel_i(nu: f64, b: f64) -> f64 {
    if b == 0.0 {
        return if nu == 0.0 { 1.0 } else { 0.0 };
    }
    let x = b.abs() / 2.0;
    let sign = if b < 0.0 {
        if nu.fract() != 0.0 {
            return f64::NAN;
        }
        if (nu as i64) % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    } else {
        1.0
    };
    let mut term = (nu * x.ln() - lgamma(nu + 1.0)).exp();
    let mut sum = term;
    let x2 = x * x;
    for n in 1..MAX_TERMS {
        let n = n as f64;
        term *= x2 / (n * (n + nu));
        sum += term;
        if term < TAIL * sum {
            break;
        }
    }
    sign * sum
}

/// `C_j^{(lambda)}(xi)` by the three-term recurrence.
pub fn gegenbauer(j: usize, lambda: f64, xi: f64) -> f64 {
    let mut prev = 1.0;
    if j == 0 {
        return prev;
    }
    let mut cur = 2.0 * lambda * xi;
    for n in 2..=j {
        let n = n as f64;
        let next = (2.0 * xi * (n + lambda - 1.0) * cur - (n + 2.0 * lambda - 2.0) * prev) / n;
        prev = cur;
        cur = next;
    }
    cur
}

/// All `C_0..=C_n` at once.
pub fn gegenbauer_all(n: usize, lambda: f64, xi: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(1.0);
    if n == 0 {
        return out;
    }
    out.push(2.0 * lambda * xi);
    for k in 2..=n {
        let kf = k as f64;
        let next = (2.0 * xi * (kf + lambda - 1.0) * out[k - 1] - (kf + 2.0 * lambda - 2.0) * out[k - 2]) / kf;
        out.push(next);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bessel_examples() {
        assert_eq!(bessel_i(0.0, 0.0), 1.0);
        assert_eq!(bessel_i(1.5, 0.0), 0.0);
        let expect = (2.0 / std::f64::consts::PI).sqrt() * 1f64.sinh();
        assert!((bessel_i(0.5, 1.0) - expect).abs() < 1e-15);
        let b = 7.3;
        let expect = (2.0 / (std::f64::consts::PI * b)).sqrt() * b.sinh();
        assert!((bessel_i(0.5, b) - expect).abs() < 1e-14 * expect);
        assert!((bessel_i(3.0, -2.0) + bessel_i(3.0, 2.0)).abs() < 1e-15);
        assert!(bessel_i(0.5, -1.0).is_nan());
    }

    #[test]
    fn bessel_recurrence() {
        // I_{nu-1} - I_{nu+1} = (2 nu / b) I_nu
        for &(nu, b) in &[(1.3, 0.4), (2.5, 3.0), (4.0, 20.0), (0.7, 45.0)] {
            let lhs = bessel_i(nu - 1.0, b) - bessel_i(nu + 1.0, b);
            let rhs = 2.0 * nu / b * bessel_i(nu, b);
            assert!((lhs - rhs).abs() < 1e-13 * rhs.abs(), "nu={nu} b={b}");
        }
    }

    #[test]
    fn gegenbauer_examples() {
        assert_eq!(gegenbauer(0, 0.7, 0.3), 1.0);
        assert!((gegenbauer(1, 0.7, 0.3) - 2.0 * 0.7 * 0.3).abs() < 1e-16);
        for j in 0..12 {
            for lambda in [0.3, 1.0, 2.25] {
                let binom = (lgamma(j as f64 + 2.0 * lambda) - lgamma(j as f64 + 1.0) - lgamma(2.0 * lambda)).exp();
                let got = gegenbauer(j, lambda, 1.0);
                assert!((got - binom).abs() < 1e-12 * binom, "j={j} lambda={lambda}");
            }
        }
        let all = gegenbauer_all(9, 1.4, -0.35);
        for (j, v) in all.iter().enumerate() {
            assert!((v - gegenbauer(j, 1.4, -0.35)).abs() < 1e-15);
        }
    }
}
