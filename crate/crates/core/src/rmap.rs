//! The fixed degree-6 rational map
//!
//! ```text
//! R(z) = ((1 + 2w3)(z^3 + z^-3) - 6) / ((1 + 2w3)(z^3 + z^-3) + 6),   w3 = e^{2 pi i/3}
//! ```
//!
//! with 1 + 2ω₃ = i√3. It is the quotient of the sphere by the order-6
//! symmetry group of {1, ω₃, ω₃²}, generated by z ↦ ω₃z and z ↦ 1/z, and
//! its critical values lie in {1, ω₃, ω₃²}: composing it with any Belyi map
//! branched over that set yields another one.

use num_complex::Complex64 as C;

pub fn omega3() -> C {
    // exact components: (-1/2, sqrt(3)/2)
    C::new(-0.5, 3.0_f64.sqrt() / 2.0)
}

pub fn omega3_sq() -> C {
    C::new(-0.5, -(3.0_f64.sqrt()) / 2.0)
}

/// The three branch values in the fixed cyclic order (1, ω₃, ω₃²).
pub fn branch_values() -> [C; 3] {
    [C::new(1.0, 0.0), omega3(), omega3_sq()]
}

fn lambda() -> C {
    // 1 + 2ω₃ = i√3
    C::new(0.0, 3.0_f64.sqrt())
}

/// R(z); the poles of w = z³ + z⁻³ at 0 and ∞ give R → 1.
pub fn eval(z: C) -> C {
    let zn = z.norm();
    if zn == 0.0 || !zn.is_finite() {
        return C::new(1.0, 0.0);
    }
    // for very small or large |z| the dominant z^{±3} term decides the limit
    if !(1e-60..1e60).contains(&zn.powi(3)) {
        return C::new(1.0, 0.0);
    }
    let z3 = z * z * z;
    let w = z3 + 1.0 / z3;
    (lambda() * w - 6.0) / (lambda() * w + 6.0)
}

/// dR/dz = 12·λ·(3z² − 3z⁻⁴) / (λw + 6)².
pub fn derivative(z: C) -> C {
    let z3 = z * z * z;
    let w = z3 + 1.0 / z3;
    let dw = 3.0 * z * z - 3.0 / (z3 * z);
    let den = lambda() * w + 6.0;
    12.0 * lambda() * dw / (den * den)
}

/// Finite critical points of R away from 0/∞: the six 6th roots of unity
/// (where w'(z) = 0, each of local degree 2). 0 and ∞ carry local degree 3.
pub fn finite_critical_points() -> [C; 6] {
    std::array::from_fn(|k| C::from_polar(1.0, k as f64 * std::f64::consts::PI / 3.0))
}

/// Critical values of R: images of the finite critical points together with
/// the common value at 0 and ∞.
pub fn critical_values() -> Vec<C> {
    let mut out: Vec<C> = finite_critical_points().iter().map(|&z| eval(z)).collect();
    out.push(eval(C::new(0.0, 0.0)));
    out
}
