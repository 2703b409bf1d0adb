//! Reference computations that avoid the CQ sandwich and the analytic
//! derivative: plain 4×4 Lorentz matrices and central differences.

use crate::cq::Cq;
use crate::relativity::MinkowskiVector;

pub type Matrix4 = [[f64; 4]; 4];

pub fn identity() -> Matrix4 {
    std::array::from_fn(|r| std::array::from_fn(|c| if r == c { 1.0 } else { 0.0 }))
}

pub fn mat_mul(a: &Matrix4, b: &Matrix4) -> Matrix4 {
    std::array::from_fn(|r| std::array::from_fn(|c| (0..4).map(|k| a[r][k] * b[k][c]).sum()))
}

pub fn apply(m: &Matrix4, v: &MinkowskiVector) -> MinkowskiVector {
    let x = v.components();
    MinkowskiVector::from_components(std::array::from_fn(|r| {
        (0..4).map(|k| m[r][k] * x[k]).sum()
    }))
}

/// Active right-handed rotation by `θ` about the unit axis `n` (Rodrigues).
pub fn rotation(n: [f64; 3], theta: f64) -> Matrix4 {
    let (s, c) = theta.sin_cos();
    let mut m = identity();
    for r in 0..3 {
        for col in 0..3 {
            let delta = if r == col { 1.0 } else { 0.0 };
            // [n×]_{r,col}
            let cross = match (r, col) {
                (0, 1) => -n[2],
                (0, 2) => n[1],
                (1, 0) => n[2],
                (1, 2) => -n[0],
                (2, 0) => -n[1],
                (2, 1) => n[0],
                _ => 0.0,
            };
            m[r + 1][col + 1] = c * delta + s * cross + (1.0 - c) * n[r] * n[col];
        }
    }
    m
}

/// Coordinates seen from a frame moving with rapidity `Λ` along `n`:
/// `t′ = t cosh Λ − (n·x) sinh Λ`, `x∥′ = x∥ cosh Λ − t sinh Λ`.
pub fn boost(n: [f64; 3], rapidity: f64) -> Matrix4 {
    let (ch, sh) = (rapidity.cosh(), rapidity.sinh());
    let mut m = identity();
    m[0][0] = ch;
    for r in 0..3 {
        m[0][r + 1] = -sh * n[r];
        m[r + 1][0] = -sh * n[r];
        for col in 0..3 {
            m[r + 1][col + 1] += (ch - 1.0) * n[r] * n[col];
        }
    }
    m
}

/// Metric-preservation defect `max |ΛᵀηΛ − η|`.
pub fn metric_defect(m: &Matrix4) -> f64 {
    let eta = [1.0, -1.0, -1.0, -1.0];
    let mut worst: f64 = 0.0;
    for r in 0..4 {
        for c in 0..4 {
            let v: f64 = (0..4).map(|k| m[k][r] * eta[k] * m[k][c]).sum();
            let target = if r == c { eta[r] } else { 0.0 };
            worst = worst.max((v - target).abs());
        }
    }
    worst
}

fn shifted(q: &MinkowskiVector, axis: usize, h: f64) -> MinkowskiVector {
    let mut c = q.components();
    c[axis] += h;
    MinkowskiVector::from_components(c)
}

/// Central differences along the four coordinate axes.
pub fn gradient(f: &dyn Fn(&MinkowskiVector) -> Cq, q: &MinkowskiVector, h: f64) -> [Cq; 4] {
    std::array::from_fn(|axis| (f(&shifted(q, axis, h)) - f(&shifted(q, axis, -h))) / (2.0 * h))
}

/// `D = @∂_t − i∂_x − j∂_y − k∂_z` and `D̄ = @∂_t + i∂_x + j∂_y + k∂_z`,
/// acting from the left.
pub fn finite_difference_d(
    f: &dyn Fn(&MinkowskiVector) -> Cq,
    q: &MinkowskiVector,
    h: f64,
    bar: bool,
) -> Cq {
    let g = gradient(f, q, h);
    let s = if bar { 1.0 } else { -1.0 };
    Cq::IMAG * g[0] + (Cq::I * g[1] + Cq::J * g[2] + Cq::K * g[3]) * s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrices_preserve_the_metric() {
        let n = [0.48, -0.6, 0.64];
        assert!(metric_defect(&rotation(n, 2.1)) < 1e-14);
        assert!(metric_defect(&boost(n, 1.3)) < 1e-13);
        assert!(metric_defect(&mat_mul(&rotation(n, 0.4), &boost([1.0, 0.0, 0.0], -0.9))) < 1e-13);
    }

    #[test]
    fn quarter_turn_about_z() {
        let r = rotation([0.0, 0.0, 1.0], std::f64::consts::FRAC_PI_2);
        let v = apply(&r, &MinkowskiVector::new(0.0, 1.0, 0.0, 0.0));
        assert!((v.y - 1.0).abs() < 1e-15 && v.x.abs() < 1e-15);
    }

    #[test]
    fn coordinate_derivatives() {
        let coord = |q: &MinkowskiVector| q.to_cq();
        let q = MinkowskiVector::new(0.2, -0.4, 1.0, 0.3);
        assert!(finite_difference_d(&coord, &q, 1e-4, false).approx_eq(&Cq::real(2.0), 1e-10));
        assert!(finite_difference_d(&coord, &q, 1e-4, true).approx_eq(&Cq::real(-4.0), 1e-10));
    }
}
