//! Lorentzian linear algebra in E₁³: the flat metric of signature (−,+,+),
//! the Lorentz vector product, causal classification and the four angle
//! notions between non-null vectors.

use serde::Serialize;
use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

use crate::tol;

/// A vector in Minkowski 3-space with rectangular coordinates (x1, x2, x3).
///
/// The metric is ⟨x,y⟩ = −x1·y1 + x2·y2 + x3·y3, so e1 is timelike and
/// e2, e3 are spacelike.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MVec3 {
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

pub const E1: MVec3 = MVec3::new(1.0, 0.0, 0.0);
pub const E2: MVec3 = MVec3::new(0.0, 1.0, 0.0);
pub const E3: MVec3 = MVec3::new(0.0, 0.0, 1.0);
pub const ZERO: MVec3 = MVec3::new(0.0, 0.0, 0.0);

impl MVec3 {
    pub const fn new(x1: f64, x2: f64, x3: f64) -> Self {
        Self { x1, x2, x3 }
    }

    /// Euclidean norm, used only for relative tolerance scaling.
    pub fn norm_e(self) -> f64 {
        (self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3).sqrt()
    }

    pub fn scale(self, c: f64) -> Self {
        Self::new(c * self.x1, c * self.x2, c * self.x3)
    }
}

impl Add for MVec3 {
    type Output = MVec3;
    fn add(self, o: MVec3) -> MVec3 {
        MVec3::new(self.x1 + o.x1, self.x2 + o.x2, self.x3 + o.x3)
    }
}

impl Sub for MVec3 {
    type Output = MVec3;
    fn sub(self, o: MVec3) -> MVec3 {
        MVec3::new(self.x1 - o.x1, self.x2 - o.x2, self.x3 - o.x3)
    }
}

impl Neg for MVec3 {
    type Output = MVec3;
    fn neg(self) -> MVec3 {
        MVec3::new(-self.x1, -self.x2, -self.x3)
    }
}

impl Mul<f64> for MVec3 {
    type Output = MVec3;
    fn mul(self, c: f64) -> MVec3 {
        self.scale(c)
    }
}

/// The flat metric of E₁³: ⟨x,y⟩ = −x1·y1 + x2·y2 + x3·y3.
pub fn inner(x: MVec3, y: MVec3) -> f64 {
    -x.x1 * y.x1 + x.x2 * y.x2 + x.x3 * y.x3
}

/// Lorentz vector product,
/// x × y = (x2·y3 − x3·y2, x1·y3 − x3·y1, x2·y1 − x1·y2).
///
/// Satisfies e1×e2 = −e3, e2×e3 = e1, e3×e1 = −e2 and
/// ⟨x×y, x×y⟩ = ⟨x,y⟩² − ⟨x,x⟩⟨y,y⟩.
pub fn cross(x: MVec3, y: MVec3) -> MVec3 {
    MVec3::new(
        x.x2 * y.x3 - x.x3 * y.x2,
        x.x1 * y.x3 - x.x3 * y.x1,
        x.x2 * y.x1 - x.x1 * y.x2,
    )
}

/// |v| = √|⟨v,v⟩|. Zero for null vectors.
pub fn norm(v: MVec3) -> f64 {
    inner(v, v).abs().sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TimeOrientation {
    FuturePointing,
    PastPointing,
}

/// Lorentzian causal character of a vector.
///
/// The zero vector counts as spacelike (with `zero` set), matching the
/// convention that v is spacelike if ⟨v,v⟩ > 0 or v = 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CausalCharacter {
    Spacelike { zero: bool },
    Timelike { orientation: TimeOrientation },
    Null,
}

impl CausalCharacter {
    pub fn is_spacelike(self) -> bool {
        matches!(self, CausalCharacter::Spacelike { .. })
    }
    pub fn is_timelike(self) -> bool {
        matches!(self, CausalCharacter::Timelike { .. })
    }
    pub fn is_null(self) -> bool {
        matches!(self, CausalCharacter::Null)
    }

    /// +1 for spacelike, −1 for timelike. Panics on null.
    pub fn sign(self) -> f64 {
        match self {
            CausalCharacter::Spacelike { .. } => 1.0,
            CausalCharacter::Timelike { .. } => -1.0,
            CausalCharacter::Null => panic!("null vector has no signature sign"),
        }
    }
}

/// Classify v relative to the null cone. `tol_null` is relative to the
/// squared Euclidean norm, so unit-magnitude data classifies robustly.
pub fn causal_character(v: MVec3, tol_null: f64) -> CausalCharacter {
    let q = inner(v, v);
    let e2 = v.x1 * v.x1 + v.x2 * v.x2 + v.x3 * v.x3;
    if e2 == 0.0 {
        return CausalCharacter::Spacelike { zero: true };
    }
    if q > tol_null * e2 {
        CausalCharacter::Spacelike { zero: false }
    } else if q < -tol_null * e2 {
        let orientation = if v.x1 > 0.0 {
            TimeOrientation::FuturePointing
        } else {
            TimeOrientation::PastPointing
        };
        CausalCharacter::Timelike { orientation }
    } else {
        CausalCharacter::Null
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum LorentzError {
    #[error("cannot normalize a null (or zero) vector: ({0}, {1}, {2})")]
    NullVector(f64, f64, f64),
    #[error("angle undefined for null input")]
    NullInput,
    #[error("hyperbolic angle requires equally oriented timelike vectors")]
    OppositeTimeOrientation,
    #[error("spacelike inputs span a degenerate (null) plane")]
    DegenerateSpan,
}

/// v / |v|. Errors on vectors null at the default tolerance.
pub fn normalize(v: MVec3) -> Result<MVec3, LorentzError> {
    if causal_character(v, tol::TOL_NULL).is_null() || v == ZERO {
        return Err(LorentzError::NullVector(v.x1, v.x2, v.x3));
    }
    Ok(v.scale(1.0 / norm(v)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AngleKind {
    /// Both timelike, same time orientation: ⟨x,y⟩ = −|x||y|cosh θ.
    Hyperbolic,
    /// Both spacelike spanning a timelike plane: |⟨x,y⟩| = |x||y|cosh θ.
    Central,
    /// Both spacelike spanning a spacelike plane: ⟨x,y⟩ = |x||y|cos θ.
    Spacelike,
    /// One spacelike, one timelike: |⟨x,y⟩| = |x||y|sinh θ.
    LorentzianTimelike,
}

/// An angle between two non-null directions. `theta` is always ≥ 0; for the
/// Central kind the sign of the inner product is carried separately since
/// spacelike pairs spanning a timelike plane can have either sign.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LorentzAngle {
    pub kind: AngleKind,
    pub theta: f64,
    /// sign of ⟨x,y⟩ (−1, 0 or +1); informative for Central, redundant otherwise.
    pub inner_sign: f64,
}

impl LorentzAngle {
    /// Reconstruct ⟨x,y⟩ from (kind, θ, sign) and the input magnitudes.
    pub fn reconstruct_inner(&self, nx: f64, ny: f64) -> f64 {
        let m = nx * ny;
        match self.kind {
            AngleKind::Hyperbolic => -m * self.theta.cosh(),
            AngleKind::Central => self.inner_sign * m * self.theta.cosh(),
            AngleKind::Spacelike => m * self.theta.cos(),
            AngleKind::LorentzianTimelike => self.inner_sign * m * self.theta.sinh(),
        }
    }
}

/// The angle between two non-null vectors, with the kind selected by the
/// causal characters of the inputs (and, for two spacelike inputs, of the
/// plane they span: a timelike normal means a spacelike plane).
pub fn lorentz_angle(x: MVec3, y: MVec3) -> Result<LorentzAngle, LorentzError> {
    let cx = causal_character(x, tol::TOL_NULL);
    let cy = causal_character(y, tol::TOL_NULL);
    if cx.is_null() || cy.is_null() || x == ZERO || y == ZERO {
        return Err(LorentzError::NullInput);
    }
    let p = inner(x, y);
    let c = p / (norm(x) * norm(y));
    let inner_sign = if p > 0.0 {
        1.0
    } else if p < 0.0 {
        -1.0
    } else {
        0.0
    };
    match (cx.is_timelike(), cy.is_timelike()) {
        (true, true) => {
            // Lemma: timelike vectors are never orthogonal, so p != 0 and its
            // sign decides the relative time orientation.
            if p > 0.0 {
                return Err(LorentzError::OppositeTimeOrientation);
            }
            Ok(LorentzAngle {
                kind: AngleKind::Hyperbolic,
                theta: (-c).max(1.0).acosh(),
                inner_sign,
            })
        }
        (false, false) => {
            let m = cross(x, y);
            match causal_character(m, tol::TOL_NULL) {
                CausalCharacter::Null => Err(LorentzError::DegenerateSpan),
                CausalCharacter::Spacelike { zero: true } => Err(LorentzError::DegenerateSpan),
                CausalCharacter::Timelike { .. } => Ok(LorentzAngle {
                    kind: AngleKind::Spacelike,
                    theta: c.clamp(-1.0, 1.0).acos(),
                    inner_sign,
                }),
                CausalCharacter::Spacelike { zero: false } => Ok(LorentzAngle {
                    kind: AngleKind::Central,
                    theta: c.abs().max(1.0).acosh(),
                    inner_sign,
                }),
            }
        }
        _ => Ok(LorentzAngle {
            kind: AngleKind::LorentzianTimelike,
            theta: c.abs().asinh(),
            inner_sign,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn metric_signature_on_basis() {
        assert_eq!(inner(E1, E1), -1.0);
        assert_eq!(inner(E2, E2), 1.0);
        assert_eq!(inner(E3, E3), 1.0);
        assert_eq!(inner(MVec3::new(1.0, 1.0, 0.0), MVec3::new(1.0, 1.0, 0.0)), 0.0);
    }

    #[test]
    fn cross_basis_table_exact() {
        assert_eq!(cross(E1, E2), -E3);
        assert_eq!(cross(E2, E3), E1);
        assert_eq!(cross(E3, E1), -E2);
        let x = MVec3::new(0.3, -1.2, 0.7);
        assert_eq!(cross(x, x), ZERO);
    }

    #[test]
    fn causal_classification() {
        assert_eq!(
            causal_character(E1, tol::TOL_NULL),
            CausalCharacter::Timelike { orientation: TimeOrientation::FuturePointing }
        );
        assert_eq!(causal_character(MVec3::new(1.0, 1.0, 0.0), tol::TOL_NULL), CausalCharacter::Null);
        assert_eq!(
            causal_character(MVec3::new(0.5, 1.0, 0.0), tol::TOL_NULL),
            CausalCharacter::Spacelike { zero: false }
        );
        assert_eq!(
            causal_character(ZERO, tol::TOL_NULL),
            CausalCharacter::Spacelike { zero: true }
        );
    }

    #[test]
    fn norm_and_normalize() {
        assert_eq!(norm(MVec3::new(3.0, 0.0, 0.0)), 3.0);
        assert_eq!(normalize(MVec3::new(0.0, 2.0, 0.0)).unwrap(), E2);
        assert!(matches!(
            normalize(MVec3::new(1.0, 1.0, 0.0)),
            Err(LorentzError::NullVector(..))
        ));
    }

    #[test]
    fn angle_kinds() {
        let a = lorentz_angle(MVec3::new(1.0_f64.cosh(), 1.0_f64.sinh(), 0.0), E1).unwrap();
        assert_eq!(a.kind, AngleKind::Hyperbolic);
        assert!((a.theta - 1.0).abs() < 1e-12);

        let a = lorentz_angle(E2, MVec3::new(0.0, 0.3_f64.cos(), 0.3_f64.sin())).unwrap();
        assert_eq!(a.kind, AngleKind::Spacelike);
        assert!((a.theta - 0.3).abs() < 1e-12);

        let a = lorentz_angle(E2, MVec3::new(0.7_f64.cosh(), 0.7_f64.sinh(), 0.0)).unwrap();
        assert_eq!(a.kind, AngleKind::LorentzianTimelike);
        assert!((a.theta - 0.7).abs() < 1e-12);

        // spacelike pair spanning a timelike plane: e2 and a boosted e2
        let a = lorentz_angle(E2, MVec3::new(0.4_f64.sinh(), 0.4_f64.cosh(), 0.0)).unwrap();
        assert_eq!(a.kind, AngleKind::Central);
        assert!((a.theta - 0.4).abs() < 1e-12);

        assert_eq!(
            lorentz_angle(MVec3::new(-1.0, 0.2, 0.0), MVec3::new(1.0, 0.0, 0.2)),
            Err(LorentzError::OppositeTimeOrientation)
        );
        assert_eq!(lorentz_angle(MVec3::new(1.0, 1.0, 0.0), E2), Err(LorentzError::NullInput));
        assert_eq!(lorentz_angle(E2, E2.scale(2.0)), Err(LorentzError::DegenerateSpan));
    }
}
