//! Strips: unit-speed curves carrying a unit normal field orthogonal to the
//! tangent. A curve on a surface reduces to a strip; constructed offset
//! partners are strips natively. The Darboux frame {T, g, n} with g = n×T
//! and its invariants (k_g, k_n, τ_g) live here.

use crate::curve::{arc_length_reparam, frenet_from_jets, CurveError, CurveExpr, FrenetData, FrenetKind, UnitSpeedCurve};
use crate::expr::Expr;
use crate::jet::Jet3;
use crate::lorentz::{causal_character, cross, inner, CausalCharacter, MVec3, ZERO};
use crate::quad::ArcTable;
use crate::surface::{SurfaceCurve, SurfaceError, SurfaceKind};
use crate::tol;
use crate::vjet;
use serde::Serialize;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum StripError {
    #[error("strip invariant violated at s = {s}: {what}")]
    StripInvariantViolation { s: f64, what: String },
    #[error("normal field is null or zero at s = {s}")]
    NullNormal { s: f64 },
    #[error("normal field changes causal character near s = {s}")]
    NormalCharacterChange { s: f64 },
    #[error("a timelike curve cannot lie on a spacelike surface (normal and tangent both timelike)")]
    IncompatibleCharacters,
    #[error("Frenet data unavailable: this strip only carries order-{order} derivative data")]
    FrenetUnavailable { order: u8 },
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

/// Causal side kind of a strip: surface character + curve character.
///
/// `SS`: spacelike surface (timelike normal), spacelike curve.
/// `TT`: timelike surface (spacelike normal), timelike curve.
/// `TS`: timelike surface, spacelike curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SideKind {
    SS,
    TT,
    TS,
}

impl SideKind {
    /// Frame signatures (⟨T,T⟩, ⟨g,g⟩, ⟨n,n⟩).
    pub fn signs(self) -> (f64, f64, f64) {
        match self {
            SideKind::SS => (1.0, 1.0, -1.0),
            SideKind::TT => (-1.0, 1.0, 1.0),
            SideKind::TS => (1.0, -1.0, 1.0),
        }
    }

    pub fn surface_kind(self) -> SurfaceKind {
        match self {
            SideKind::SS => SurfaceKind::SpacelikeSurface,
            SideKind::TT | SideKind::TS => SurfaceKind::TimelikeSurface,
        }
    }

    /// Calibrated signs relating the direct cross-product formulas
    /// k_g = ⟨T, Ṫ×n⟩ and τ_g = ⟨T, n×ṅ⟩ to the projection extraction:
    /// (sign_kg, sign_tg) such that formula = sign · projection value.
    pub fn eq3_signs(self) -> (f64, f64) {
        match self {
            SideKind::SS => (1.0, -1.0),
            SideKind::TT => (1.0, -1.0),
            SideKind::TS => (-1.0, 1.0),
        }
    }

    fn from_chars(eps_t: f64, eps_n: f64) -> Result<SideKind, StripError> {
        match (eps_t > 0.0, eps_n > 0.0) {
            (true, false) => Ok(SideKind::SS),
            (false, true) => Ok(SideKind::TT),
            (true, true) => Ok(SideKind::TS),
            (false, false) => Err(StripError::IncompatibleCharacters),
        }
    }
}

/// Darboux frame and invariants at one arc-length value.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct DarbouxData {
    pub t: MVec3,
    pub g: MVec3,
    pub n: MVec3,
    pub kg: f64,
    pub kn: f64,
    pub tg: f64,
    pub side: SideKind,
}

/// One strip sample: position derivatives (with respect to the strip's own
/// arc length) up to `point_order`, unit-normal derivatives up to
/// `normal_order`. Slots beyond the carried order are zero.
#[derive(Debug, Clone, Copy)]
pub struct StripSample {
    pub x: [MVec3; 4],
    pub n: [MVec3; 3],
}

#[derive(Clone)]
pub(crate) enum Backend {
    /// Closed-form curve plus closed-form normal direction field (in the
    /// curve's original parameter), normalized on evaluation.
    Explicit { curve: UnitSpeedCurve, normal: Arc<[Expr; 3]>, eps_n: f64, flip: bool },
    /// Curve on a surface patch; the normal is the patch normal along it.
    Surface { sc: Arc<SurfaceCurve>, table: ArcTable, eps_t: f64, eps_n: f64, flip: bool },
    /// Bertrand offset of a base strip: x = x₁ + λg₁ with the partner normal
    /// in span{T₁, n₁}; `sign_n` fixes ⟨g, g₁⟩ to the g₁ signature.
    Offset { base: Arc<StripCurve>, lambda: f64, sign_n: f64, table: ArcTable, eps_p: f64, eps_n: f64 },
}

/// A unit-speed curve with a unit normal field orthogonal to its tangent.
#[derive(Clone)]
pub struct StripCurve {
    pub(crate) backend: Backend,
    pub side: SideKind,
    pub total_len: f64,
    /// Highest position-derivative order available (2 for offsets, else 3).
    pub point_order: u8,
    /// Highest normal-derivative order available (1 for offsets, else 2).
    pub normal_order: u8,
}

fn check_char_constant(
    mut probe: impl FnMut(f64) -> MVec3,
    t0: f64,
    t1: f64,
    n: usize,
) -> Result<f64, StripError> {
    let mut sign = 0.0;
    for i in 0..=n {
        let t = t0 + (t1 - t0) * i as f64 / n as f64;
        let v = probe(t);
        match causal_character(v, tol::TOL_NULL) {
            CausalCharacter::Null | CausalCharacter::Spacelike { zero: true } => {
                return Err(StripError::NullNormal { s: t })
            }
            c => {
                let s = c.sign();
                if sign == 0.0 {
                    sign = s;
                } else if s != sign {
                    return Err(StripError::NormalCharacterChange { s: t });
                }
            }
        }
    }
    Ok(sign)
}

impl StripCurve {
    /// Strip from a closed-form curve and a closed-form normal direction
    /// field n(t) (not necessarily unit; normalized on evaluation).
    pub fn explicit(
        curve: CurveExpr,
        normal: [Expr; 3],
        flip: bool,
    ) -> Result<StripCurve, StripError> {
        let (t0, t1) = (curve.t0, curve.t1);
        let unit = arc_length_reparam(curve, tol::TOL_ARC)?;
        let normal = Arc::new(normal);
        let eval_n = |t: f64| {
            MVec3::new(
                normal[0].eval(&[t]),
                normal[1].eval(&[t]),
                normal[2].eval(&[t]),
            )
        };
        let eps_n = check_char_constant(eval_n, t0, t1, tol::DEFAULT_SCAN_GRID)?;
        let side = SideKind::from_chars(unit.eps_t(), eps_n)?;
        let strip = StripCurve {
            total_len: unit.total_len,
            backend: Backend::Explicit { curve: unit, normal, eps_n, flip },
            side,
            point_order: 3,
            normal_order: 2,
        };
        strip.validate_orthogonality()?;
        Ok(strip)
    }

    /// Reduce a curve-on-surface to a strip (the canonical reduction).
    pub fn from_surface_curve(sc: SurfaceCurve, flip: bool) -> Result<StripCurve, StripError> {
        let sc = Arc::new(sc);
        let (t0, t1) = (sc.t0, sc.t1);
        let eps_t = {
            let sc = sc.clone();
            check_char_constant(move |t| sc.jets(t).0[1], t0, t1, tol::DEFAULT_SCAN_GRID)
                .map_err(|e| match e {
                    StripError::NullNormal { s } => StripError::Curve(CurveError::NullTangent { t: s }),
                    StripError::NormalCharacterChange { s } => {
                        StripError::Curve(CurveError::CausalCharacterChange { t: s })
                    }
                    other => other,
                })?
        };
        let eps_n = {
            let sc = sc.clone();
            check_char_constant(move |t| sc.jets(t).1[0], t0, t1, tol::DEFAULT_SCAN_GRID)?
        };
        let side = SideKind::from_chars(eps_t, eps_n)?;
        let table = {
            let sc = sc.clone();
            let speed = move |t: f64| {
                let (x, _) = sc.jets(t);
                inner(x[1], x[1]).abs().sqrt()
            };
            ArcTable::build(&speed, t0, t1, 1024, tol::TOL_ARC)
        };
        let strip = StripCurve {
            total_len: table.total,
            backend: Backend::Surface { sc, table, eps_t, eps_n, flip },
            side,
            point_order: 3,
            normal_order: 2,
        };
        strip.validate_orthogonality()?;
        Ok(strip)
    }

    /// The same strip with the opposite normal orientation. Flipping the
    /// normal flips k_g and k_n and leaves τ_g unchanged.
    pub fn flipped(&self) -> StripCurve {
        let mut out = self.clone();
        out.backend = match out.backend {
            Backend::Explicit { curve, normal, eps_n, flip } => {
                Backend::Explicit { curve, normal, eps_n, flip: !flip }
            }
            Backend::Surface { sc, table, eps_t, eps_n, flip } => {
                Backend::Surface { sc, table, eps_t, eps_n, flip: !flip }
            }
            Backend::Offset { base, lambda, sign_n, table, eps_p, eps_n } => {
                Backend::Offset { base, lambda, sign_n: -sign_n, table, eps_p, eps_n }
            }
        };
        out
    }

    pub fn curve_char_sign(&self) -> f64 {
        self.side.signs().0
    }

    /// Everything at arc length s, derivatives with respect to s.
    pub fn sample(&self, s: f64) -> StripSample {
        match &self.backend {
            Backend::Explicit { curve, normal, eps_n, flip } => {
                let t = curve.param_at(s);
                let x = curve.point_at_param(t);
                let j: Vec<Jet3> =
                    normal.iter().map(|e| e.eval(&[Jet3::variable(t)])).collect();
                let m = [
                    MVec3::new(j[0].v, j[1].v, j[2].v),
                    MVec3::new(j[0].d1, j[1].d1, j[2].d1),
                    MVec3::new(j[0].d2, j[1].d2, j[2].d2),
                ];
                let n_t = vjet::unit_jets2(&m, *eps_n);
                let xt = curve.point_at_param_raw(t);
                let d = [xt[1], xt[2], xt[3]];
                let speed = vjet::norm_jets2(&d, curve.eps_t());
                let tp = vjet::inverse_param_jets(&speed);
                let mut n = vjet::chain_field2(&n_t, &tp);
                if *flip {
                    n = vjet::scale_jets(&n, -1.0);
                }
                StripSample { x, n }
            }
            Backend::Surface { sc, table, eps_t, eps_n, flip } => {
                let speed = |t: f64| {
                    let (x, _) = sc.jets(t);
                    inner(x[1], x[1]).abs().sqrt()
                };
                let t = table.invert(&speed, s, tol::TOL_INVERSE);
                let (xt, m) = sc.jets(t);
                let d = [xt[1], xt[2], xt[3]];
                let sp = vjet::norm_jets2(&d, *eps_t);
                let tp = vjet::inverse_param_jets(&sp);
                let x = vjet::chain_pos3(&xt, &tp);
                let n_t = vjet::unit_jets2(&m, *eps_n);
                let mut n = vjet::chain_field2(&n_t, &tp);
                if *flip {
                    n = vjet::scale_jets(&n, -1.0);
                }
                StripSample { x, n }
            }
            Backend::Offset { base, lambda, sign_n, table, eps_p, .. } => {
                let speed = |s1: f64| {
                    let st = offset_tangent_jets(&base.sample(s1), *lambda);
                    inner(st[1], st[1]).abs().sqrt()
                };
                let s1 = table.invert(&speed, s, tol::TOL_INVERSE);
                let bs = base.sample(s1);
                let state = offset_state(&bs, base.side, *lambda, *sign_n, *eps_p);
                // chain s1 → σ (partner arc length); third order not carried
                let tp = vjet::inverse_param_jets(&[state.rho[0], state.rho[1], 0.0]);
                let x = vjet::chain_pos3(&[state.p[0], state.p[1], state.p[2], ZERO], &tp);
                let n = vjet::chain_field2(&[state.n[0], state.n[1], ZERO], &tp);
                StripSample {
                    x: [x[0], x[1], x[2], ZERO],
                    n: [n[0], n[1], ZERO],
                }
            }
        }
    }

    fn validate_orthogonality(&self) -> Result<(), StripError> {
        let n = 64;
        for i in 0..=n {
            let s = self.total_len * i as f64 / n as f64;
            let smp = self.sample(s);
            let dot = inner(smp.n[0], smp.x[1]).abs();
            if dot > 1e-9 {
                return Err(StripError::StripInvariantViolation {
                    s,
                    what: format!("|<n,T>| = {dot:.3e}"),
                });
            }
            let unit = (inner(smp.n[0], smp.n[0]).abs() - 1.0).abs();
            if unit > 1e-9 {
                return Err(StripError::StripInvariantViolation {
                    s,
                    what: format!("||<n,n>|-1| = {unit:.3e}"),
                });
            }
        }
        Ok(())
    }

    /// Darboux frame and invariants at arc length s, extracted by
    /// signature-correct projection onto the frame.
    pub fn darboux(&self, s: f64) -> DarbouxData {
        let smp = self.sample(s);
        darboux_from_sample(&smp, self.side)
    }

    /// The direct cross-product values k_g = ⟨T, Ṫ×n⟩ and τ_g = ⟨T, n×ṅ⟩.
    /// These match the projection extraction up to `SideKind::eq3_signs`.
    pub fn eq3_values(&self, s: f64) -> (f64, f64) {
        let smp = self.sample(s);
        let kg3 = inner(smp.x[1], cross(smp.x[2], smp.n[0]));
        let tg3 = inner(smp.x[1], cross(smp.n[0], smp.n[1]));
        (kg3, tg3)
    }

    /// Frenet frame at s; requires third-order data (not offset-backed).
    pub fn frenet(&self, s: f64) -> Result<FrenetData, StripError> {
        if self.point_order < 3 {
            return Err(StripError::FrenetUnavailable { order: self.point_order });
        }
        let smp = self.sample(s);
        Ok(frenet_from_jets(&smp.x, self.side.signs().0, s)?)
    }

    /// Line classification over a sample grid (sets may overlap).
    pub fn classify_line(&self, tol_line: f64, samples: usize) -> LineClasses {
        let mut maxima = [0.0f64; 3];
        for i in 0..=samples {
            let s = self.total_len * i as f64 / samples as f64;
            let d = self.darboux(s);
            maxima[0] = maxima[0].max(d.kg.abs());
            maxima[1] = maxima[1].max(d.kn.abs());
            maxima[2] = maxima[2].max(d.tg.abs());
        }
        LineClasses {
            geodesic: maxima[0] <= tol_line,
            asymptotic: maxima[1] <= tol_line,
            principal: maxima[2] <= tol_line,
            maxima,
        }
    }

    /// Frenet ↔ Darboux link at s: the angle φ between g and the principal
    /// normal plane axes, the functional form it satisfies, and the fitted
    /// sign relations with residuals.
    pub fn frenet_darboux_link(&self, s: f64) -> Result<LinkData, StripError> {
        let fr = self.frenet(s)?;
        let da = self.darboux(s);
        let (eps_n_f, eps_b) = match fr.kind {
            FrenetKind::SpacelikeCurve { eps } => (eps, -eps),
            FrenetKind::TimelikeCurve => (1.0, 1.0),
        };
        let p = inner(da.g, fr.n) / eps_n_f;
        let q = inner(da.g, fr.b) / eps_b;
        let (form, phi) = fit_form(p, q);
        // dφ/ds by five-point central differences of the recovered φ
        let h = (self.total_len * 1e-5).max(1e-7);
        let mut phis = [0.0; 4];
        for (k, off) in [-2.0, -1.0, 1.0, 2.0].iter().enumerate() {
            let sk = s + off * h;
            let frk = self.frenet(sk)?;
            let dak = self.darboux(sk);
            let (e_nf, e_b) = match frk.kind {
                FrenetKind::SpacelikeCurve { eps } => (eps, -eps),
                FrenetKind::TimelikeCurve => (1.0, 1.0),
            };
            let pk = inner(dak.g, frk.n) / e_nf;
            let qk = inner(dak.g, frk.b) / e_b;
            let (_, mut phik) = fit_form(pk, qk);
            if matches!(form, LinkForm::Circular) {
                // keep the branch continuous around φ(s)
                while phik - phi > std::f64::consts::PI {
                    phik -= 2.0 * std::f64::consts::PI;
                }
                while phi - phik > std::f64::consts::PI {
                    phik += 2.0 * std::f64::consts::PI;
                }
            }
            phis[k] = phik;
        }
        let phi_dot = (phis[0] - 8.0 * phis[1] + 8.0 * phis[2] - phis[3]) / (12.0 * h);
        let (c, sfn) = match form {
            LinkForm::Circular => (phi.cos(), phi.sin()),
            LinkForm::HyperbolicCosh => (phi.cosh(), phi.sinh()),
            LinkForm::HyperbolicSinh => (phi.sinh(), phi.cosh()),
        };
        let fit = |value: f64, model: f64| -> (f64, f64) {
            let rp = (value - model).abs();
            let rm = (value + model).abs();
            if rp <= rm {
                (1.0, rp)
            } else {
                (-1.0, rm)
            }
        };
        let (sign_kg, r_kg) = fit(da.kg, fr.kappa * c);
        let (sign_kn, r_kn) = fit(da.kn, fr.kappa * sfn);
        let (sign_tau, r_tau) = fit(da.tg, fr.tau + phi_dot);
        Ok(LinkData {
            phi,
            phi_dot,
            form,
            eps_frenet: eps_n_f,
            sign_kg,
            sign_kn,
            sign_tau,
            residuals: [r_kg, r_kn, r_tau],
            plain_rotation: sign_kg > 0.0
                && sign_kn > 0.0
                && sign_tau > 0.0
                && matches!(form, LinkForm::Circular | LinkForm::HyperbolicCosh),
        })
    }
}

/// Which functional form the g-decomposition in the (N, B) plane satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LinkForm {
    /// p² + q² = 1: g = cos φ·N + sin φ·B.
    Circular,
    /// p² − q² = 1: g = ±cosh φ·N + sinh φ·B.
    HyperbolicCosh,
    /// q² − p² = 1: g = sinh φ·N ± cosh φ·B.
    HyperbolicSinh,
}

fn fit_form(p: f64, q: f64) -> (LinkForm, f64) {
    let circ = (p * p + q * q - 1.0).abs();
    let hcosh = (p * p - q * q - 1.0).abs();
    let hsinh = (q * q - p * p - 1.0).abs();
    if circ <= hcosh && circ <= hsinh {
        (LinkForm::Circular, q.atan2(p))
    } else if hcosh <= hsinh {
        (LinkForm::HyperbolicCosh, q.asinh())
    } else {
        (LinkForm::HyperbolicSinh, p.asinh())
    }
}

/// Result of the Frenet↔Darboux link: k_g = sign_kg·κ·C(φ),
/// k_n = sign_kn·κ·S(φ), τ_g = sign_tau·(τ + dφ/ds), where (C, S) is the
/// function pair named by `form`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct LinkData {
    pub phi: f64,
    pub phi_dot: f64,
    pub form: LinkForm,
    pub eps_frenet: f64,
    pub sign_kg: f64,
    pub sign_kn: f64,
    pub sign_tau: f64,
    pub residuals: [f64; 3],
    /// True when the relations hold in the plain all-plus rotation form.
    pub plain_rotation: bool,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct LineClasses {
    pub geodesic: bool,
    pub asymptotic: bool,
    pub principal: bool,
    /// max |k_g|, max |k_n|, max |τ_g| over the grid.
    pub maxima: [f64; 3],
}

impl LineClasses {
    pub fn summary(&self) -> String {
        let mut parts = Vec::new();
        if self.geodesic {
            parts.push("geodesic");
        }
        if self.asymptotic {
            parts.push("asymptotic line");
        }
        if self.principal {
            parts.push("principal line");
        }
        if parts.is_empty() {
            parts.push("generic");
        }
        parts.join(", ")
    }
}

/// Signature-correct projection extraction of the Darboux invariants.
pub(crate) fn darboux_from_sample(smp: &StripSample, side: SideKind) -> DarbouxData {
    let t = smp.x[1];
    let tdot = smp.x[2];
    let n = smp.n[0];
    let ndot = smp.n[1];
    let g = cross(n, t);
    let (kg, kn, tg) = match side {
        // timelike surface: Ṫ = k_g g − ε k_n n, ṅ = k_n T + τ_g g,
        // signatures (ε, −ε, 1)
        SideKind::TS | SideKind::TT => {
            let eps = side.signs().0;
            let kg = inner(tdot, g) / (-eps);
            let kn = -eps * inner(tdot, n);
            let tg = -eps * inner(ndot, g);
            (kg, kn, tg)
        }
        // spacelike surface: Ṫ = k_g g + k_n n, ṅ = k_n T + τ_g g,
        // signatures (1, 1, −1)
        SideKind::SS => {
            let kg = inner(tdot, g);
            let kn = -inner(tdot, n);
            let tg = inner(ndot, g);
            (kg, kn, tg)
        }
    };
    DarbouxData { t, g, n, kg, kn, tg, side }
}

/// dx/ds₁ jets of the offset x = x₁ + λg₁ (orders 0..2 of the tangent path,
/// i.e. p′, p″, p‴ would need fourth-order base data and is not carried).
pub(crate) fn offset_tangent_jets(base: &StripSample, lambda: f64) -> [MVec3; 3] {
    let t_jets = [base.x[1], base.x[2], base.x[3]];
    let g_jets = vjet::cross_jets::<3>(&base.n, &t_jets);
    [
        t_jets[0] + g_jets[1].scale(lambda),
        t_jets[1] + g_jets[2].scale(lambda),
        ZERO,
    ]
}

/// Full partner state at one base arc-length value.
pub(crate) struct OffsetState {
    /// offset position jets with respect to s₁ (orders 0..2)
    pub p: [MVec3; 3],
    /// |p′| and d|p′|/ds₁
    pub rho: [f64; 2],
    /// partner unit normal jets with respect to s₁ (orders 0..1)
    pub n: [MVec3; 2],
    /// partner Darboux data (derivatives with respect to the partner's own
    /// arc length)
    pub darboux: DarbouxData,
    pub side: SideKind,
}

/// Compute the partner frame and invariants from a base sample.
/// `sign_n` (±1) selects the normal orientation; `eps_p` is the partner
/// tangent signature (sign of ⟨p′,p′⟩, validated at construction).
pub(crate) fn offset_state(
    base: &StripSample,
    _base_side: SideKind,
    lambda: f64,
    sign_n: f64,
    eps_p: f64,
) -> OffsetState {
    let t_jets = [base.x[1], base.x[2], base.x[3]];
    let g_jets = vjet::cross_jets::<3>(&base.n, &t_jets);
    let p = [
        base.x[0] + g_jets[0].scale(lambda),
        base.x[1] + g_jets[1].scale(lambda),
        base.x[2] + g_jets[2].scale(lambda),
    ];
    // tangent path jets (p′, p″) and speed ρ = |p′|
    let tan = [p[1], p[2], ZERO];
    let q = vjet::inner_jets::<2>(&[tan[0], tan[1]], &[tan[0], tan[1]]);
    let rho0 = (eps_p * q[0]).sqrt();
    let rho1 = eps_p * q[1] / (2.0 * rho0);
    let t_p = tan[0].scale(1.0 / rho0);
    // dT_p/ds₁, then /ρ for the derivative with respect to partner arc length
    let tdot_s1 = tan[1].scale(1.0 / rho0) + tan[0].scale(-rho1 / (rho0 * rho0));
    let tdot_p = tdot_s1.scale(1.0 / rho0);
    // normal direction: cross(g₁, p′) lies in span{T₁, n₁} and is ⊥ p′
    let m = [
        cross(g_jets[0], tan[0]).scale(sign_n),
        (cross(g_jets[1], tan[0]) + cross(g_jets[0], tan[1])).scale(sign_n),
        ZERO,
    ];
    let qm = inner(m[0], m[0]);
    let nu = vjet::unit_jets2(&m, qm.signum());
    let n0 = nu[0];
    let ndot_p = nu[1].scale(1.0 / rho0);
    let g_p = cross(n0, t_p);
    let side = match (eps_p > 0.0, qm > 0.0) {
        (true, false) => SideKind::SS,
        (false, true) => SideKind::TT,
        (true, true) => SideKind::TS,
        (false, false) => SideKind::TT, // unreachable for non-null data
    };
    let (kg, kn, tg) = match side {
        SideKind::TS | SideKind::TT => {
            let eps = side.signs().0;
            (
                inner(tdot_p, g_p) / (-eps),
                -eps * inner(tdot_p, n0),
                -eps * inner(ndot_p, g_p),
            )
        }
        SideKind::SS => (
            inner(tdot_p, g_p),
            -inner(tdot_p, n0),
            inner(ndot_p, g_p),
        ),
    };
    OffsetState {
        p,
        rho: [rho0, rho1],
        n: [n0, nu[1]],
        darboux: DarbouxData { t: t_p, g: g_p, n: n0, kg, kn, tg, side },
        side,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lorentz::E1;

    pub(crate) fn cylinder_circle() -> StripCurve {
        let c = CurveExpr::parse("0", "cos(t)", "sin(t)", 0.0, 6.0).unwrap();
        let n = [
            Expr::parse("0", &["t"]).unwrap(),
            Expr::parse("cos(t)", &["t"]).unwrap(),
            Expr::parse("sin(t)", &["t"]).unwrap(),
        ];
        StripCurve::explicit(c, n, false).unwrap()
    }

    pub(crate) fn cylinder_helix(a: f64) -> StripCurve {
        let b = (1.0 + a * a).sqrt();
        let c = CurveExpr::parse(&format!("{a}*t"), &format!("cos({b}*t)"), &format!("sin({b}*t)"), 0.0, 3.0)
            .unwrap();
        let n = [
            Expr::parse("0", &["t"]).unwrap(),
            Expr::parse(&format!("cos({b}*t)"), &["t"]).unwrap(),
            Expr::parse(&format!("sin({b}*t)"), &["t"]).unwrap(),
        ];
        StripCurve::explicit(c, n, false).unwrap()
    }

    #[test]
    fn circle_on_cylinder_invariants() {
        let strip = cylinder_circle();
        assert_eq!(strip.side, SideKind::TS);
        let d = strip.darboux(1.0);
        assert!(d.kg.abs() < tol::TOL_ORACLE);
        assert!((d.kn - 1.0).abs() < tol::TOL_ORACLE);
        assert!(d.tg.abs() < tol::TOL_ORACLE);
        assert!((d.g - E1).norm_e() < 1e-10);
        let cls = strip.classify_line(tol::TOL_LINE, 128);
        assert!(cls.geodesic && cls.principal && !cls.asymptotic);
    }

    #[test]
    fn helix_on_cylinder_invariants() {
        let a = 0.6_f64;
        let b = (1.0 + a * a).sqrt();
        let strip = cylinder_helix(a);
        let d = strip.darboux(0.8);
        assert!(d.kg.abs() < tol::TOL_ORACLE);
        assert!((d.kn - b * b).abs() < tol::TOL_ORACLE);
        assert!((d.tg - (-a * b)).abs() < tol::TOL_ORACLE);
        let cls = strip.classify_line(tol::TOL_LINE, 128);
        assert!(cls.geodesic && !cls.principal && !cls.asymptotic);
    }

    #[test]
    fn eq3_calibration_signs_hold() {
        // TS with kg ≠ 0: generic curve on an elliptic Lorentz cylinder
        let patch = crate::surface::SurfacePatch::builtin(
            "lorentz_cylinder",
            &[1.0, 1.3],
            None,
            (0.0, 6.28, -3.0, 3.0),
        )
        .unwrap();
        let sc = SurfaceCurve::parse(patch.clone(), "t", "0.2*sin(t) + 0.1*t", 0.2, 1.2).unwrap();
        let ts = StripCurve::from_surface_curve(sc, false).unwrap();
        assert_eq!(ts.side, SideKind::TS);
        // TT: mostly-axial timelike curve on the same cylinder
        let sc = SurfaceCurve::parse(patch, "0.3*t", "t", 0.2, 1.2).unwrap();
        let tt = StripCurve::from_surface_curve(sc, false).unwrap();
        assert_eq!(tt.side, SideKind::TT);
        // SS: generic curve on a spacelike graph
        let patch = crate::surface::SurfacePatch::builtin(
            "graph",
            &[],
            Some("0.2*u^2 + 0.15*v^2 + 0.1*u*v"),
            (-1.0, 1.0, -1.0, 1.0),
        )
        .unwrap();
        let sc = SurfaceCurve::parse(patch, "t", "0.4*t + 0.1*t^2", 0.1, 0.9).unwrap();
        let ss = StripCurve::from_surface_curve(sc, false).unwrap();
        assert_eq!(ss.side, SideKind::SS);

        for strip in [&ts, &tt, &ss] {
            let (sk, st) = strip.side.eq3_signs();
            for i in 1..8 {
                let s = strip.total_len * i as f64 / 8.0;
                let d = strip.darboux(s);
                let (kg3, tg3) = strip.eq3_values(s);
                assert!(d.kg.abs() > 1e-3, "calibration needs kg != 0 ({:?})", strip.side);
                assert!(
                    (kg3 - sk * d.kg).abs() <= tol::TOL_EQ3_CROSSCHECK * (1.0 + d.kg.abs()),
                    "{:?}: kg3 {} vs {}*{}",
                    strip.side,
                    kg3,
                    sk,
                    d.kg
                );
                assert!(
                    (tg3 - st * d.tg).abs() <= tol::TOL_EQ3_CROSSCHECK * (1.0 + d.tg.abs()),
                    "{:?}: tg3 {} vs {}*{}",
                    strip.side,
                    tg3,
                    st,
                    d.tg
                );
            }
        }
    }

    #[test]
    fn orientation_flip_covariance() {
        let strip = cylinder_helix(0.6);
        let flipped = strip.flipped();
        for i in 0..8 {
            let s = strip.total_len * i as f64 / 8.0;
            let d = strip.darboux(s);
            let f = flipped.darboux(s);
            assert!((f.kg + d.kg).abs() < 1e-12);
            assert!((f.kn + d.kn).abs() < 1e-12);
            assert!((f.tg - d.tg).abs() < 1e-12);
        }
    }

    #[test]
    fn darboux_signature_tables() {
        for strip in [cylinder_circle(), cylinder_helix(0.6)] {
            let d = strip.darboux(0.5);
            let (et, eg, en) = strip.side.signs();
            assert!((inner(d.t, d.t) - et).abs() < 1e-9);
            assert!((inner(d.g, d.g) - eg).abs() < 1e-9);
            assert!((inner(d.n, d.n) - en).abs() < 1e-9);
            assert!((d.g - cross(d.n, d.t)).norm_e() < 1e-10);
        }
    }

    #[test]
    fn link_on_helix_plain_form() {
        let strip = cylinder_helix(0.6);
        let link = strip.frenet_darboux_link(1.0).unwrap();
        for r in link.residuals {
            assert!(r < tol::TOL_LINK, "residuals {:?}", link.residuals);
        }
        assert!(link.sign_tau > 0.0, "tau relation should hold with + sign");
    }

    #[test]
    fn planar_strip_asymptotic_and_principal() {
        let c = CurveExpr::parse("0", "t", "0.3*t^2 + 0.05*t^3", 0.0, 1.5).unwrap();
        let n = [
            Expr::parse("-1", &["t"]).unwrap(),
            Expr::parse("0", &["t"]).unwrap(),
            Expr::parse("0", &["t"]).unwrap(),
        ];
        let strip = StripCurve::explicit(c, n, false).unwrap();
        assert_eq!(strip.side, SideKind::SS);
        let cls = strip.classify_line(tol::TOL_LINE, 128);
        assert!(cls.asymptotic && cls.principal && !cls.geodesic);
        // Frenet–Darboux coincidence: k_g = κ, τ_g = τ = 0
        for i in 1..8 {
            let s = strip.total_len * i as f64 / 8.0;
            let d = strip.darboux(s);
            let f = strip.frenet(s).unwrap();
            assert!((d.kg - f.kappa).abs() < tol::TOL_COINCIDENCE);
            assert!((d.tg - f.tau).abs() < tol::TOL_COINCIDENCE);
        }
    }

    #[test]
    fn incompatible_strip_rejected() {
        // timelike curve with timelike normal: no valid side kind
        let c = CurveExpr::parse("2*t", "t", "0", 0.0, 1.0).unwrap();
        let n = [
            Expr::parse("2", &["t"]).unwrap(),
            Expr::parse("1", &["t"]).unwrap(),
            Expr::parse("0", &["t"]).unwrap(),
        ];
        // that normal is not orthogonal either; orthogonality or character
        // checks must reject it
        assert!(StripCurve::explicit(c, n, false).is_err());
    }
}
