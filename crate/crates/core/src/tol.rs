//! Pinned tolerances. Each constant is a contract of the library, not a
//! tuning knob: the verification suite asserts residuals against these.

/// Relative null-cone tolerance (scaled by the squared Euclidean norm).
pub const TOL_NULL: f64 = 1e-12;

/// Unit-speed defect allowed after arc-length reparametrization.
pub const TOL_UNIT: f64 = 1e-9;

/// Below this curvature the principal normal direction is numerically
/// meaningless in double precision; the Frenet frame is reported undefined.
pub const TOL_DEGENERATE_CURVATURE: f64 = 1e-10;

/// Default target for the arc-length quadrature, relative to total length.
pub const TOL_ARC: f64 = 1e-10;

/// Absolute tolerance of the s ↦ t inverse map root-finding.
pub const TOL_INVERSE: f64 = 1e-12;

/// Line-classification threshold on max |k_g|, |k_n|, |τ_g|.
pub const TOL_LINE: f64 = 1e-8;

/// Frame ODE residuals against independent finite differences.
pub const TOL_FRAME_ODE: f64 = 1e-7;

/// Direct cross-product formulas vs projection extraction.
pub const TOL_EQ3_CROSSCHECK: f64 = 1e-8;

/// Frenet↔Darboux link residuals (angle relations).
pub const TOL_LINK: f64 = 1e-8;

/// Offset constant recovered along the pair: max deviation from its mean.
pub const TOL_LAMBDA_CONST: f64 = 1e-9;

/// Tangent-normal coincidence |1 − |⟨g,g₁⟩|/(|g||g₁|)|.
pub const TOL_G_COINCIDENCE: f64 = 1e-8;

/// Measured speed ratio vs the type-matched closed form.
pub const TOL_SPEED_RATIO: f64 = 1e-8;

/// Tangent-decomposition cross-checks for θ and ds/ds₁.
pub const TOL_THETA: f64 = 1e-8;

/// Offset-invariant rate identity (the τ̇ family, finite-difference grid).
pub const TOL_RATE_IDENTITY: f64 = 1e-6;

/// Pointwise curvature-exchange identity.
pub const TOL_EXCHANGE: f64 = 1e-7;

/// Frame-transfer rows (finite differences only in the k_n row).
pub const TOL_TRANSFER: f64 = 1e-7;

/// Closed-form invariant recovery.
pub const TOL_CLOSED_FORM: f64 = 1e-6;

/// Principal-pair product law and geodesic torsion-transfer law.
pub const TOL_SPECIAL_CASE: f64 = 1e-6;

/// Frenet–Darboux coincidence on asymptotic strips.
pub const TOL_COINCIDENCE: f64 = 1e-7;

/// Darboux invariants of closed-form witnesses vs frozen oracle values.
pub const TOL_ORACLE: f64 = 1e-9;

/// Default number of grid samples along a pair.
pub const DEFAULT_PAIR_GRID: usize = 512;

/// Default grid for causal-character and regularity scans.
pub const DEFAULT_SCAN_GRID: usize = 256;

/// Default surface sampling grid (per axis).
pub const DEFAULT_SURFACE_GRID: usize = 32;

/// Offset construction requires |1 ∓ λ·k_g1| at least this large.
pub const MIN_OFFSET_MARGIN: f64 = 1e-6;
