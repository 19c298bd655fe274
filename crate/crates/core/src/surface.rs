//! Parametric surface patches: regularity, normals, causal typing, and
//! curves lying on a patch through a planar parameter curve.

use crate::expr::{Expr, ParseError};
use crate::jet::{Jet23, Jet3};
use crate::lorentz::{causal_character, cross, inner, normalize, CausalCharacter, MVec3};
use crate::tol;
use crate::vjet;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SurfaceError {
    #[error("tangent plane degenerate (null or zero normal) at (u, v) = ({u}, {v})")]
    DegenerateTangentPlane { u: f64, v: f64 },
    #[error("surface causal character changes on the sample grid near (u, v) = ({u}, {v})")]
    MixedCharacter { u: f64, v: f64 },
    #[error("unknown builtin surface family `{0}`")]
    UnknownFamily(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Spacelike surface: timelike normal, Riemannian induced metric.
/// Timelike surface: spacelike normal, Lorentzian induced metric.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SurfaceKind {
    SpacelikeSurface,
    TimelikeSurface,
}

impl SurfaceKind {
    /// Signature of the unit normal: −1 for spacelike surfaces, +1 for timelike.
    pub fn normal_sign(self) -> f64 {
        match self {
            SurfaceKind::SpacelikeSurface => -1.0,
            SurfaceKind::TimelikeSurface => 1.0,
        }
    }
}

/// All patch partials up to total order three at one (u, v).
#[derive(Debug, Clone, Copy)]
pub struct PatchJets {
    pub p: MVec3,
    pub pu: MVec3,
    pub pv: MVec3,
    pub puu: MVec3,
    pub puv: MVec3,
    pub pvv: MVec3,
    pub puuu: MVec3,
    pub puuv: MVec3,
    pub puvv: MVec3,
    pub pvvv: MVec3,
}

/// Three coordinate expressions in (u, v) over a rectangle.
#[derive(Debug, Clone)]
pub struct SurfacePatch {
    comps: [Expr; 3],
    pub u0: f64,
    pub u1: f64,
    pub v0: f64,
    pub v1: f64,
}

impl SurfacePatch {
    pub fn new(comps: [Expr; 3], dom: (f64, f64, f64, f64)) -> Self {
        Self { comps, u0: dom.0, u1: dom.1, v0: dom.2, v1: dom.3 }
    }

    pub fn parse(x: &str, y: &str, z: &str, dom: (f64, f64, f64, f64)) -> Result<Self, ParseError> {
        Ok(Self::new(
            [
                Expr::parse(x, &["u", "v"])?,
                Expr::parse(y, &["u", "v"])?,
                Expr::parse(z, &["u", "v"])?,
            ],
            dom,
        ))
    }

    /// Builtin families. Parameters default to 1 where omitted.
    ///
    /// - `plane`: X(u,v) = (0, u, v) — spacelike.
    /// - `lorentz_cylinder r [ry]`: X = (v, r cos u, ry sin u) — timelike.
    /// - `hyperbolic_plane r`: X = r(cosh u, sinh u cos v, sinh u sin v) — spacelike.
    /// - `de_sitter r`: X = r(sinh u, cosh u cos v, cosh u sin v) — timelike.
    /// - `graph f`: X = (f(u,v), u, v) — spacelike where |∇f| < 1.
    pub fn builtin(family: &str, params: &[f64], graph_expr: Option<&str>, dom: (f64, f64, f64, f64)) -> Result<Self, SurfaceError> {
        let p0 = params.first().copied().unwrap_or(1.0);
        let p1 = params.get(1).copied().unwrap_or(p0);
        let patch = match family {
            "plane" => SurfacePatch::parse("0", "u", "v", dom)?,
            "lorentz_cylinder" => SurfacePatch::parse(
                "v",
                &format!("{p0}*cos(u)"),
                &format!("{p1}*sin(u)"),
                dom,
            )?,
            "hyperbolic_plane" => SurfacePatch::parse(
                &format!("{p0}*cosh(u)"),
                &format!("{p0}*sinh(u)*cos(v)"),
                &format!("{p0}*sinh(u)*sin(v)"),
                dom,
            )?,
            "de_sitter" => SurfacePatch::parse(
                &format!("{p0}*sinh(u)"),
                &format!("{p0}*cosh(u)*cos(v)"),
                &format!("{p0}*cosh(u)*sin(v)"),
                dom,
            )?,
            "graph" => {
                let f = graph_expr.ok_or_else(|| SurfaceError::UnknownFamily("graph (missing expression)".into()))?;
                SurfacePatch::parse(f, "u", "v", dom)?
            }
            other => return Err(SurfaceError::UnknownFamily(other.to_string())),
        };
        Ok(patch)
    }

    pub fn jets(&self, u: f64, v: f64) -> PatchJets {
        let vars = [Jet23::var_u(u), Jet23::var_v(v)];
        let j: Vec<Jet23> = self.comps.iter().map(|e| e.eval(&vars)).collect();
        let pick = |f: fn(&Jet23) -> f64| MVec3::new(f(&j[0]), f(&j[1]), f(&j[2]));
        PatchJets {
            p: pick(|a| a.v),
            pu: pick(|a| a.du),
            pv: pick(|a| a.dv),
            puu: pick(|a| a.duu),
            puv: pick(|a| a.duv),
            pvv: pick(|a| a.dvv),
            puuu: pick(|a| a.duuu),
            puuv: pick(|a| a.duuv),
            puvv: pick(|a| a.duvv),
            pvvv: pick(|a| a.dvvv),
        }
    }

    /// Unnormalized normal direction cross(X_u, X_v) with its (u, v) partials
    /// up to order two — enough to differentiate the unit normal twice along
    /// any curve in the patch.
    pub fn normal_dir_jets(&self, u: f64, v: f64) -> NormalDirJets {
        let j = self.jets(u, v);
        NormalDirJets {
            m: cross(j.pu, j.pv),
            mu: cross(j.puu, j.pv) + cross(j.pu, j.puv),
            mv: cross(j.puv, j.pv) + cross(j.pu, j.pvv),
            muu: cross(j.puuu, j.pv) + cross(j.puu, j.puv).scale(2.0) + cross(j.pu, j.puuv),
            muv: cross(j.puuv, j.pv) + cross(j.puu, j.pvv) + cross(j.puv, j.puv)
                + cross(j.pu, j.puvv),
            mvv: cross(j.puvv, j.pv) + cross(j.puv, j.pvv).scale(2.0) + cross(j.pu, j.pvvv),
        }
    }

    /// Unit normal at (u, v), oriented by the (u, v) parameter order, with the
    /// surface kind it implies at that point.
    pub fn normal(&self, u: f64, v: f64) -> Result<(MVec3, SurfaceKind), SurfaceError> {
        let m = self.normal_dir_jets(u, v).m;
        match causal_character(m, tol::TOL_NULL) {
            CausalCharacter::Spacelike { zero: false } => {
                Ok((normalize(m).expect("non-null"), SurfaceKind::TimelikeSurface))
            }
            CausalCharacter::Timelike { .. } => {
                Ok((normalize(m).expect("non-null"), SurfaceKind::SpacelikeSurface))
            }
            _ => Err(SurfaceError::DegenerateTangentPlane { u, v }),
        }
    }

    /// Classify the whole patch on an n×n grid; errors if the normal is
    /// degenerate anywhere or the character is mixed.
    pub fn causal_type_grid(&self, n: usize) -> Result<SurfaceKind, SurfaceError> {
        let mut kind: Option<SurfaceKind> = None;
        for i in 0..=n {
            for jj in 0..=n {
                let u = self.u0 + (self.u1 - self.u0) * i as f64 / n as f64;
                let v = self.v0 + (self.v1 - self.v0) * jj as f64 / n as f64;
                let (_, k) = self.normal(u, v)?;
                match kind {
                    None => kind = Some(k),
                    Some(prev) if prev != k => {
                        return Err(SurfaceError::MixedCharacter { u, v })
                    }
                    _ => {}
                }
            }
        }
        Ok(kind.expect("grid is nonempty"))
    }

    pub fn causal_type(&self) -> Result<SurfaceKind, SurfaceError> {
        self.causal_type_grid(tol::DEFAULT_SURFACE_GRID)
    }
}

/// cross(X_u, X_v) and its partials to order two.
#[derive(Debug, Clone, Copy)]
pub struct NormalDirJets {
    pub m: MVec3,
    pub mu: MVec3,
    pub mv: MVec3,
    pub muu: MVec3,
    pub muv: MVec3,
    pub mvv: MVec3,
}

/// A curve on a patch, given by planar parameter expressions u(t), v(t).
#[derive(Debug, Clone)]
pub struct SurfaceCurve {
    pub patch: SurfacePatch,
    pub u_of_t: Expr,
    pub v_of_t: Expr,
    pub t0: f64,
    pub t1: f64,
}

impl SurfaceCurve {
    pub fn parse(patch: SurfacePatch, u: &str, v: &str, t0: f64, t1: f64) -> Result<Self, ParseError> {
        Ok(Self {
            patch,
            u_of_t: Expr::parse(u, &["t"])?,
            v_of_t: Expr::parse(v, &["t"])?,
            t0,
            t1,
        })
    }

    /// Induced space-curve jets (order three) and unnormalized-normal jets
    /// (order two), both with respect to t.
    pub fn jets(&self, t: f64) -> ([MVec3; 4], [MVec3; 3]) {
        let ju = self.u_of_t.eval(&[Jet3::variable(t)]);
        let jv = self.v_of_t.eval(&[Jet3::variable(t)]);
        let p = self.patch.jets(ju.v, jv.v);
        let (u1, u2, u3) = (ju.d1, ju.d2, ju.d3);
        let (v1, v2, v3) = (jv.d1, jv.d2, jv.d3);
        let x0 = p.p;
        let x1 = p.pu.scale(u1) + p.pv.scale(v1);
        let x2 = p.puu.scale(u1 * u1)
            + p.puv.scale(2.0 * u1 * v1)
            + p.pvv.scale(v1 * v1)
            + p.pu.scale(u2)
            + p.pv.scale(v2);
        let x3 = p.puuu.scale(u1 * u1 * u1)
            + p.puuv.scale(3.0 * u1 * u1 * v1)
            + p.puvv.scale(3.0 * u1 * v1 * v1)
            + p.pvvv.scale(v1 * v1 * v1)
            + p.puu.scale(3.0 * u1 * u2)
            + p.puv.scale(3.0 * (u1 * v2 + u2 * v1))
            + p.pvv.scale(3.0 * v1 * v2)
            + p.pu.scale(u3)
            + p.pv.scale(v3);
        let nd = self.patch.normal_dir_jets(ju.v, jv.v);
        let m0 = nd.m;
        let m1 = nd.mu.scale(u1) + nd.mv.scale(v1);
        let m2 = nd.muu.scale(u1 * u1)
            + nd.muv.scale(2.0 * u1 * v1)
            + nd.mvv.scale(v1 * v1)
            + nd.mu.scale(u2)
            + nd.mv.scale(v2);
        ([x0, x1, x2, x3], [m0, m1, m2])
    }

    /// Unit normal field jets along the curve (order two, with respect to t).
    pub fn unit_normal_jets(&self, t: f64) -> Result<[MVec3; 3], SurfaceError> {
        let (_, m) = self.jets(t);
        let q = inner(m[0], m[0]);
        let e2 = m[0].norm_e();
        if q.abs() <= tol::TOL_NULL * e2 * e2 || e2 == 0.0 {
            let ju = self.u_of_t.eval(&[Jet3::variable(t)]);
            let jv = self.v_of_t.eval(&[Jet3::variable(t)]);
            return Err(SurfaceError::DegenerateTangentPlane { u: ju.v, v: jv.v });
        }
        Ok(vjet::unit_jets2(&m, q.signum()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lorentz::E1;

    #[test]
    fn cylinder_normal_is_radial_spacelike() {
        let s = SurfacePatch::builtin("lorentz_cylinder", &[1.0], None, (0.0, 6.28, -2.0, 2.0)).unwrap();
        let (n, kind) = s.normal(0.7, 0.3).unwrap();
        assert_eq!(kind, SurfaceKind::TimelikeSurface);
        // X(u,v) = (v, cos u, sin u): cross(X_u, X_v) = -(0, cos u, sin u)
        let expected = MVec3::new(0.0, 0.7f64.cos(), 0.7f64.sin());
        assert!((n + expected).norm_e() < 1e-12 || (n - expected).norm_e() < 1e-12);
        assert_eq!(s.causal_type().unwrap(), SurfaceKind::TimelikeSurface);
    }

    #[test]
    fn hyperbolic_plane_normal_is_position() {
        let s = SurfacePatch::builtin("hyperbolic_plane", &[1.0], None, (0.3, 1.5, 0.0, 3.0)).unwrap();
        let (n, kind) = s.normal(0.8, 1.1).unwrap();
        assert_eq!(kind, SurfaceKind::SpacelikeSurface);
        let p = s.jets(0.8, 1.1).p;
        assert!((n - p).norm_e() < 1e-10 || (n + p).norm_e() < 1e-10);
    }

    #[test]
    fn plane_normal_is_e1() {
        let s = SurfacePatch::builtin("plane", &[], None, (-1.0, 1.0, -1.0, 1.0)).unwrap();
        let (n, kind) = s.normal(0.0, 0.0).unwrap();
        assert_eq!(kind, SurfaceKind::SpacelikeSurface);
        assert!((n - E1).norm_e() < 1e-15 || (n + E1).norm_e() < 1e-15);
    }

    #[test]
    fn mixed_character_detected() {
        // graph with |∇f| crossing 1: f = 2u
        let s = SurfacePatch::builtin("graph", &[], Some("2*u*u"), (-1.0, 1.0, -1.0, 1.0)).unwrap();
        assert!(matches!(
            s.causal_type(),
            Err(SurfaceError::MixedCharacter { .. }) | Err(SurfaceError::DegenerateTangentPlane { .. })
        ));
    }

    #[test]
    fn surface_curve_jets_match_direct_curve() {
        // helix on the unit cylinder vs its direct parametrization
        let s = SurfacePatch::builtin("lorentz_cylinder", &[1.0], None, (0.0, 10.0, -5.0, 5.0)).unwrap();
        let sc = SurfaceCurve::parse(s, "t", "0.6*t", 0.0, 3.0).unwrap();
        let (x, _) = sc.jets(1.2);
        let c = crate::curve::CurveExpr::parse("0.6*t", "cos(t)", "sin(t)", 0.0, 3.0).unwrap();
        let xc = c.jets(1.2);
        for k in 0..4 {
            assert!((x[k] - xc[k]).norm_e() < 1e-12, "order {k}");
        }
    }

    #[test]
    fn unit_normal_field_is_unit_orthogonal() {
        let s = SurfacePatch::builtin("de_sitter", &[1.0], None, (-1.0, 1.0, 0.0, 3.0)).unwrap();
        let sc = SurfaceCurve::parse(s, "0.3*t", "t", 0.1, 2.0).unwrap();
        let n = sc.unit_normal_jets(0.9).unwrap();
        let (x, _) = sc.jets(0.9);
        assert!((inner(n[0], n[0]) - 1.0).abs() < 1e-12); // de Sitter: spacelike normal
        assert!(inner(n[0], x[1]).abs() < 1e-12);
        // d/dt <n,n> = 0
        assert!(inner(n[1], n[0]).abs() < 1e-12);
    }
}
