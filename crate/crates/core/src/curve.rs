//! Closed-form parametric curves: exact derivative access, arc-length
//! reparametrization, causal typing and Frenet frames for the spacelike and
//! timelike cases.

use crate::expr::{Expr, ParseError};
use crate::jet::Jet3;
use crate::lorentz::{cross, inner, CausalCharacter, MVec3};
use crate::quad::ArcTable;
use crate::tol;
use crate::vjet;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CurveError {
    #[error("tangent crosses the null cone inside the domain near t = {t}")]
    CausalCharacterChange { t: f64 },
    #[error("tangent is null (or zero) near t = {t}")]
    NullTangent { t: f64 },
    #[error("curvature below {tol:e} at s = {s}; Frenet frame undefined")]
    DegenerateCurvature { s: f64, tol: f64 },
    #[error("principal normal direction is null at s = {s}")]
    NullPrincipalNormal { s: f64 },
    #[error("principal normal changes character inside the domain near s = {s}")]
    NormalCharacterChange { s: f64 },
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Three coordinate expressions in one parameter t over [t0, t1].
#[derive(Debug, Clone)]
pub struct CurveExpr {
    comps: [Expr; 3],
    pub t0: f64,
    pub t1: f64,
}

impl CurveExpr {
    pub fn new(comps: [Expr; 3], t0: f64, t1: f64) -> Self {
        Self { comps, t0, t1 }
    }

    pub fn parse(x: &str, y: &str, z: &str, t0: f64, t1: f64) -> Result<Self, ParseError> {
        Ok(Self::new(
            [
                Expr::parse(x, &["t"])?,
                Expr::parse(y, &["t"])?,
                Expr::parse(z, &["t"])?,
            ],
            t0,
            t1,
        ))
    }

    /// Position and derivatives up to order three with respect to t.
    pub fn jets(&self, t: f64) -> [MVec3; 4] {
        let j: Vec<Jet3> = self.comps.iter().map(|e| e.eval(&[Jet3::variable(t)])).collect();
        [
            MVec3::new(j[0].v, j[1].v, j[2].v),
            MVec3::new(j[0].d1, j[1].d1, j[2].d1),
            MVec3::new(j[0].d2, j[1].d2, j[2].d2),
            MVec3::new(j[0].d3, j[1].d3, j[2].d3),
        ]
    }
}

/// Which Frenet system applies, with ε = ⟨N,N⟩ for spacelike curves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FrenetKind {
    /// ⟨T,T⟩ = 1, ⟨N,N⟩ = ε, ⟨B,B⟩ = −ε.
    SpacelikeCurve { eps: f64 },
    /// ⟨T,T⟩ = −1, ⟨N,N⟩ = ⟨B,B⟩ = 1.
    TimelikeCurve,
}

/// Frenet frame and invariants at one parameter value.
///
/// The binormal is fixed as B = cross(N, T); this sign makes the Darboux
/// frame relation g = cross(n, T) consistent with the frame-relation
/// matrices at φ = 0 and gives τ_g = τ + dφ/ds with a plus sign.
#[derive(Debug, Clone, Copy)]
pub struct FrenetData {
    pub t: MVec3,
    pub n: MVec3,
    pub b: MVec3,
    pub kappa: f64,
    pub tau: f64,
    pub kind: FrenetKind,
}

/// Frenet data from arc-length derivative jets of a unit-speed curve with
/// tangent signature `eps_t`. The parameter `s` only labels errors.
pub fn frenet_from_jets(x: &[MVec3; 4], eps_t: f64, s: f64) -> Result<FrenetData, CurveError> {
    let t_vec = x[1];
    let tdot = x[2];
    let q = inner(tdot, tdot);
    let kappa = q.abs().sqrt();
    if kappa <= tol::TOL_DEGENERATE_CURVATURE {
        return Err(CurveError::DegenerateCurvature { s, tol: tol::TOL_DEGENERATE_CURVATURE });
    }
    let e2 = tdot.norm_e();
    if q.abs() <= tol::TOL_NULL * e2 * e2 {
        return Err(CurveError::NullPrincipalNormal { s });
    }
    let n = tdot.scale(1.0 / kappa);
    let b = cross(n, t_vec);
    if eps_t > 0.0 {
        let eps = if q > 0.0 { 1.0 } else { -1.0 };
        // τ extracted from the N-rate against B with the signature factor
        // ⟨B,B⟩ = −ε; ⟨T̈, B⟩ carries the whole ⟨N′,B⟩ since ⟨Ṫ,B⟩ = 0.
        let tau = inner(x[3], b) / (kappa * -eps);
        Ok(FrenetData { t: t_vec, n, b, kappa, tau, kind: FrenetKind::SpacelikeCurve { eps } })
    } else {
        let tau = inner(x[3], b) / kappa;
        Ok(FrenetData { t: t_vec, n, b, kappa, tau, kind: FrenetKind::TimelikeCurve })
    }
}

/// A curve reparametrized by Lorentzian arc length.
#[derive(Clone)]
pub struct UnitSpeedCurve {
    expr: CurveExpr,
    table: ArcTable,
    /// +1 spacelike tangent, −1 timelike tangent.
    eps_t: f64,
    pub total_len: f64,
}

fn speed_fn(expr: &CurveExpr) -> impl Fn(f64) -> f64 + '_ {
    move |t| {
        let j = expr.jets(t);
        inner(j[1], j[1]).abs().sqrt()
    }
}

/// Reparametrize by arc length; requires a tangent of constant non-null
/// causal character over the whole domain (checked on a dense grid).
pub fn arc_length_reparam(expr: CurveExpr, quad_tol: f64) -> Result<UnitSpeedCurve, CurveError> {
    let n = tol::DEFAULT_SCAN_GRID;
    let mut sign = 0.0;
    for i in 0..=n {
        let t = expr.t0 + (expr.t1 - expr.t0) * i as f64 / n as f64;
        let j = expr.jets(t);
        match crate::lorentz::causal_character(j[1], tol::TOL_NULL) {
            CausalCharacter::Null | CausalCharacter::Spacelike { zero: true } => {
                return Err(CurveError::NullTangent { t })
            }
            c => {
                let s = c.sign();
                if sign == 0.0 {
                    sign = s;
                } else if s != sign {
                    return Err(CurveError::CausalCharacterChange { t });
                }
            }
        }
    }
    let table = {
        let f = speed_fn(&expr);
        ArcTable::build(&f, expr.t0, expr.t1, 1024, quad_tol)
    };
    let total_len = table.total;
    Ok(UnitSpeedCurve { expr, table, eps_t: sign, total_len })
}

impl UnitSpeedCurve {
    /// Constant causal character of the tangent field.
    pub fn causal_type(&self) -> CausalCharacter {
        if self.eps_t > 0.0 {
            CausalCharacter::Spacelike { zero: false }
        } else {
            let j = self.expr.jets(self.expr.t0);
            crate::lorentz::causal_character(j[1], tol::TOL_NULL)
        }
    }

    pub fn eps_t(&self) -> f64 {
        self.eps_t
    }

    /// Original parameter value at arc length s.
    pub fn param_at(&self, s: f64) -> f64 {
        let f = speed_fn(&self.expr);
        self.table.invert(&f, s, tol::TOL_INVERSE)
    }

    /// Arc length at original parameter t (used by idempotence checks).
    pub fn arc_at(&self, t: f64) -> f64 {
        let f = speed_fn(&self.expr);
        self.table.forward(&f, t)
    }

    /// Position and derivatives up to order three with respect to arc length.
    pub fn point(&self, s: f64) -> [MVec3; 4] {
        let t = self.param_at(s);
        self.point_at_param(t)
    }

    /// Raw derivative jets with respect to the original parameter.
    pub(crate) fn point_at_param_raw(&self, t: f64) -> [MVec3; 4] {
        self.expr.jets(t)
    }

    pub(crate) fn point_at_param(&self, t: f64) -> [MVec3; 4] {
        let xt = self.expr.jets(t);
        let d = [xt[1], xt[2], xt[3]];
        let speed = vjet::norm_jets2(&d, self.eps_t);
        let tp = vjet::inverse_param_jets(&speed);
        vjet::chain_pos3(&xt, &tp)
    }

    /// Frenet frame at arc length s.
    pub fn frenet(&self, s: f64) -> Result<FrenetData, CurveError> {
        frenet_from_jets(&self.point(s), self.eps_t, s)
    }

    /// Check that ε = sign⟨N,N⟩ is constant where the frame is defined.
    pub fn check_eps_constant(&self, samples: usize) -> Result<(), CurveError> {
        let mut eps = 0.0;
        for i in 0..=samples {
            let s = self.total_len * i as f64 / samples as f64;
            match self.frenet(s) {
                Ok(FrenetData { kind: FrenetKind::SpacelikeCurve { eps: e }, .. }) => {
                    if eps == 0.0 {
                        eps = e;
                    } else if e != eps {
                        return Err(CurveError::NormalCharacterChange { s });
                    }
                }
                _ => continue,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lorentz::E2;

    fn circle() -> UnitSpeedCurve {
        let c = CurveExpr::parse("0", "cos(t)", "sin(t)", 0.0, std::f64::consts::PI).unwrap();
        arc_length_reparam(c, tol::TOL_ARC).unwrap()
    }

    #[test]
    fn double_speed_circle_length() {
        let c = CurveExpr::parse("0", "cos(2*t)", "sin(2*t)", 0.0, std::f64::consts::PI).unwrap();
        let u = arc_length_reparam(c, tol::TOL_ARC).unwrap();
        assert!((u.total_len - 2.0 * std::f64::consts::PI).abs() < 1e-9);
        let p = u.point(1.0);
        assert!((inner(p[1], p[1]) - 1.0).abs() < tol::TOL_UNIT);
    }

    #[test]
    fn already_unit_speed_is_identity_map() {
        let u = circle();
        for k in 0..=16 {
            let s = u.total_len * k as f64 / 16.0;
            assert!((u.param_at(s) - s).abs() < 1e-10);
        }
    }

    #[test]
    fn helix_linear_map_and_type() {
        // (a t, r cos t, r sin t), speed = sqrt(r^2 - a^2)
        let (a, r) = (0.5_f64, 1.3_f64);
        let c = CurveExpr::parse("0.5*t", "1.3*cos(t)", "1.3*sin(t)", 0.0, 4.0).unwrap();
        let u = arc_length_reparam(c, tol::TOL_ARC).unwrap();
        let rate = (r * r - a * a).sqrt();
        assert!((u.total_len - 4.0 * rate).abs() < 1e-9);
        assert!((u.param_at(2.0 * rate) - 2.0).abs() < 1e-10);
        assert!(u.causal_type().is_spacelike());
    }

    #[test]
    fn hyperbola_is_timelike_with_unit_curvature() {
        let c = CurveExpr::parse("sinh(t)", "cosh(t)", "0", -1.0, 1.0).unwrap();
        let u = arc_length_reparam(c, tol::TOL_ARC).unwrap();
        assert!(u.causal_type().is_timelike());
        let f = u.frenet(1.0).unwrap();
        assert!((f.kappa - 1.0).abs() < 1e-9);
        assert!(f.tau.abs() < 1e-9);
        assert_eq!(f.kind, FrenetKind::TimelikeCurve);
    }

    #[test]
    fn circle_frenet_at_zero() {
        let u = circle();
        let f = u.frenet(0.0).unwrap();
        assert!((f.kappa - 1.0).abs() < 1e-10);
        assert!(f.tau.abs() < 1e-10);
        assert_eq!(f.kind, FrenetKind::SpacelikeCurve { eps: 1.0 });
        assert!((f.n - (-E2)).norm_e() < 1e-9);
    }

    #[test]
    fn straight_line_has_no_frame() {
        let c = CurveExpr::parse("0", "t", "0", 0.0, 1.0).unwrap();
        let u = arc_length_reparam(c, tol::TOL_ARC).unwrap();
        assert!(matches!(u.frenet(0.5), Err(CurveError::DegenerateCurvature { .. })));
    }

    #[test]
    fn null_tangent_rejected() {
        let c = CurveExpr::parse("t", "t", "0", 0.0, 1.0).unwrap();
        assert!(matches!(
            arc_length_reparam(c, tol::TOL_ARC),
            Err(CurveError::NullTangent { .. })
        ));
    }

    #[test]
    fn character_change_rejected() {
        // tangent (1, 2t, 0): timelike near 0, spacelike past t=0.5
        let c = CurveExpr::parse("t", "t^2", "0", 0.0, 1.0).unwrap();
        assert!(matches!(
            arc_length_reparam(c, tol::TOL_ARC),
            Err(CurveError::CausalCharacterChange { .. }) | Err(CurveError::NullTangent { .. })
        ));
    }
}
