//! Derivative arrays ("jets") of vector-valued paths: Leibniz rules for the
//! metric and the Lorentz product, normalization, and parameter chains.
//! `a[k]` holds the k-th derivative of the path at the evaluation point.

use crate::lorentz::{cross, inner, MVec3};

const BINOM: [[f64; 4]; 4] = [
    [1.0, 0.0, 0.0, 0.0],
    [1.0, 1.0, 0.0, 0.0],
    [1.0, 2.0, 1.0, 0.0],
    [1.0, 3.0, 3.0, 1.0],
];

/// Leibniz rule for the Lorentz product up to order K−1.
pub fn cross_jets<const K: usize>(a: &[MVec3], b: &[MVec3]) -> [MVec3; K] {
    let mut out = [crate::lorentz::ZERO; K];
    for (k, slot) in out.iter_mut().enumerate() {
        let mut acc = crate::lorentz::ZERO;
        for j in 0..=k {
            acc = acc + cross(a[j], b[k - j]).scale(BINOM[k][j]);
        }
        *slot = acc;
    }
    out
}

/// Leibniz rule for the metric up to order K−1.
pub fn inner_jets<const K: usize>(a: &[MVec3], b: &[MVec3]) -> [f64; K] {
    let mut out = [0.0; K];
    for (k, slot) in out.iter_mut().enumerate() {
        let mut acc = 0.0;
        for j in 0..=k {
            acc += BINOM[k][j] * inner(a[j], b[k - j]);
        }
        *slot = acc;
    }
    out
}

pub fn add_jets<const K: usize>(a: &[MVec3; K], b: &[MVec3; K]) -> [MVec3; K] {
    std::array::from_fn(|k| a[k] + b[k])
}

pub fn scale_jets<const K: usize>(a: &[MVec3; K], c: f64) -> [MVec3; K] {
    std::array::from_fn(|k| a[k].scale(c))
}

/// |m| and its first two derivatives for a path of constant causal character
/// `sign` = sign⟨m,m⟩ (±1).
pub fn norm_jets2(m: &[MVec3; 3], sign: f64) -> [f64; 3] {
    let q = inner_jets::<3>(m, m);
    let s = (sign * q[0]).sqrt();
    let s1 = sign * q[1] / (2.0 * s);
    let s2 = (sign * q[2] - 2.0 * s1 * s1) / (2.0 * s);
    [s, s1, s2]
}

/// Unit field n = m/|m| with first two derivatives; `sign` = sign⟨m,m⟩.
pub fn unit_jets2(m: &[MVec3; 3], sign: f64) -> [MVec3; 3] {
    let s = norm_jets2(m, sign);
    let r0 = 1.0 / s[0];
    let r1 = -s[1] / (s[0] * s[0]);
    let r2 = -s[2] / (s[0] * s[0]) + 2.0 * s[1] * s[1] / (s[0] * s[0] * s[0]);
    [
        m[0].scale(r0),
        m[1].scale(r0) + m[0].scale(r1),
        m[2].scale(r0) + m[1].scale(2.0 * r1) + m[0].scale(r2),
    ]
}

/// Derivatives of the inverse parameter t(s) of an arc-length map with
/// speed jets [σ, σ̇, σ̈] (dots with respect to t): returns
/// [dt/ds, d²t/ds², d³t/ds³].
pub fn inverse_param_jets(speed: &[f64; 3]) -> [f64; 3] {
    let s = speed[0];
    [
        1.0 / s,
        -speed[1] / (s * s * s),
        -speed[2] / (s * s * s * s) + 3.0 * speed[1] * speed[1] / (s * s * s * s * s),
    ]
}

/// Chain a position jet in t (order 3) through t(s): returns derivatives
/// with respect to s.
pub fn chain_pos3(xt: &[MVec3; 4], tp: &[f64; 3]) -> [MVec3; 4] {
    let (t1, t2, t3) = (tp[0], tp[1], tp[2]);
    [
        xt[0],
        xt[1].scale(t1),
        xt[2].scale(t1 * t1) + xt[1].scale(t2),
        xt[3].scale(t1 * t1 * t1) + xt[2].scale(3.0 * t1 * t2) + xt[1].scale(t3),
    ]
}

/// Chain a field jet in t (order 2) through t(s).
pub fn chain_field2(ft: &[MVec3; 3], tp: &[f64; 3]) -> [MVec3; 3] {
    let (t1, t2) = (tp[0], tp[1]);
    [ft[0], ft[1].scale(t1), ft[2].scale(t1 * t1) + ft[1].scale(t2)]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lorentz::MVec3;

    #[test]
    fn cross_jets_match_product_rule() {
        // a(t) = (t, t^2, 1), b(t) = (1, t, t^3) evaluated at t = 0.5
        let t = 0.5;
        let a = [
            MVec3::new(t, t * t, 1.0),
            MVec3::new(1.0, 2.0 * t, 0.0),
            MVec3::new(0.0, 2.0, 0.0),
            MVec3::new(0.0, 0.0, 0.0),
        ];
        let b = [
            MVec3::new(1.0, t, t * t * t),
            MVec3::new(0.0, 1.0, 3.0 * t * t),
            MVec3::new(0.0, 0.0, 6.0 * t),
            MVec3::new(0.0, 0.0, 6.0),
        ];
        let c = cross_jets::<4>(&a, &b);
        let h = 1e-5;
        let eval = |t: f64| {
            crate::lorentz::cross(MVec3::new(t, t * t, 1.0), MVec3::new(1.0, t, t * t * t))
        };
        let d1 = (eval(t + h) - eval(t - h)).scale(1.0 / (2.0 * h));
        assert!((c[1] - d1).norm_e() < 1e-9);
        let d2 = (eval(t + h) - eval(t).scale(2.0) + eval(t - h)).scale(1.0 / (h * h));
        assert!((c[2] - d2).norm_e() < 1e-5);
    }

    #[test]
    fn unit_jets_stay_unit() {
        // timelike field m(t) = (cosh t + 2, sinh t, 0.3 t)
        let t = 0.4_f64;
        let m = [
            MVec3::new(t.cosh() + 2.0, t.sinh(), 0.3 * t),
            MVec3::new(t.sinh(), t.cosh(), 0.3),
            MVec3::new(t.cosh(), t.sinh(), 0.0),
        ];
        let n = unit_jets2(&m, -1.0);
        let q = inner_jets::<3>(&n, &n);
        assert!((q[0] + 1.0).abs() < 1e-14);
        assert!(q[1].abs() < 1e-13, "d<n,n>/dt = {}", q[1]);
        assert!(q[2].abs() < 1e-12);
    }
}
