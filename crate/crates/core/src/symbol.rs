//! Affine self-maps w -> a*w + b of the right half-plane and their exact
//! classification.
//!
//! Everything here is closed-form arithmetic on the parameters (a, b); no
//! truncation is involved. Equality tests against the classification
//! boundaries a = 1 and Re(b) = 0 are exact on the inputs: the classifier is
//! discontinuous across those lines, so snapping nearby values would report
//! the wrong row of the classification table. A separate near-boundary
//! warning covers inputs within 1e-12 of a boundary.

use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::series::{lft_series, PowerSeries};

/// Parameters within this distance of a classification boundary (but not on
/// it) trigger a warning.
pub const NEAR_BOUNDARY_TOLERANCE: f64 = 1e-12;

/// The map phi(w) = a*w + b with a > 0 and Re(b) >= 0.
///
/// These are exactly the linear fractional self-maps of the right half-plane
/// that induce bounded composition operators on its Hardy space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineSymbol {
    a: f64,
    b: Complex64,
}

impl AffineSymbol {
    /// Validates and constructs a symbol. Maps with a <= 0 or Re(b) < 0 do
    /// not induce bounded composition operators and are rejected, as are
    /// non-finite parameters.
    pub fn new(a: f64, b: Complex64) -> Result<Self> {
        let admissible =
            a.is_finite() && a > 0.0 && b.re.is_finite() && b.re >= 0.0 && b.im.is_finite();
        if !admissible {
            return Err(Error::UnboundedSymbol { a, re_b: b.re });
        }
        Ok(Self { a, b })
    }

    /// The identity map (a = 1, b = 0).
    pub fn identity() -> Self {
        Self {
            a: 1.0,
            b: Complex64::ZERO,
        }
    }

    fn unchecked(a: f64, b: Complex64) -> Self {
        debug_assert!(a > 0.0 && b.re >= 0.0);
        Self { a, b }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> Complex64 {
        self.b
    }

    pub fn is_identity(&self) -> bool {
        self.a == 1.0 && self.b == Complex64::ZERO
    }

    /// phi(w) = a*w + b.
    pub fn apply(&self, w: Complex64) -> Complex64 {
        self.a * w + self.b
    }

    /// Composition (self o other)(w) = self(other(w)). Valid symbols are
    /// closed under composition.
    pub fn compose(&self, other: &Self) -> Self {
        Self::unchecked(self.a * other.a, self.a * other.b + self.b)
    }

    /// Classifies the symbol and predicts the operator properties.
    pub fn classify(&self) -> (SymbolClass, PropertyProfile) {
        let a = self.a;
        let re_b = self.b.re;
        let class = if re_b == 0.0 {
            if a == 1.0 {
                SymbolClass::ParabolicAutomorphism
            } else {
                SymbolClass::HyperbolicAutomorphism
            }
        } else if a == 1.0 {
            SymbolClass::ParabolicNonAutomorphism
        } else if a < 1.0 {
            SymbolClass::HyperbolicTypeI
        } else {
            SymbolClass::HyperbolicTypeII
        };

        let normal = a == 1.0 || re_b == 0.0;
        let profile = PropertyProfile {
            bounded: true,
            norm: (1.0 / a).sqrt(),
            normal,
            self_adjoint: a == 1.0 && self.b.im == 0.0,
            unitary: a == 1.0 && re_b == 0.0,
            complex_symmetric: normal,
            cyclic: a >= 1.0 && re_b > 0.0,
            hypercyclic: false,
        };
        debug_assert!(!profile.hypercyclic || profile.cyclic);
        debug_assert!(!profile.unitary || profile.normal);
        debug_assert!(!profile.self_adjoint || profile.normal);
        (class, profile)
    }

    /// True when a parameter sits within 1e-12 of a classification boundary
    /// without lying on it. Classification is discontinuous there, so the
    /// caller should double-check such inputs.
    pub fn near_boundary(&self) -> bool {
        let a_near = self.a != 1.0 && (self.a - 1.0).abs() < NEAR_BOUNDARY_TOLERANCE;
        let b_near = self.b.re != 0.0 && self.b.re.abs() < NEAR_BOUNDARY_TOLERANCE;
        a_near || b_near
    }

    /// The n-th compositional iterate: (a^n, (1 - a^n) b / (1 - a)) for
    /// a != 1 and (1, n b) for a = 1. The zeroth iterate is the identity.
    pub fn iterate(&self, n: u32) -> Self {
        if self.a == 1.0 {
            Self::unchecked(1.0, n as f64 * self.b)
        } else {
            let an = self.a.powi(n as i32);
            Self::unchecked(an, self.b * ((1.0 - an) / (1.0 - self.a)))
        }
    }

    /// The fixed-point structure of the map in the plane.
    pub fn fixed_point(&self) -> FixedPoint {
        if self.a == 1.0 {
            if self.b == Complex64::ZERO {
                FixedPoint::EveryPoint
            } else {
                FixedPoint::NoneFinite
            }
        } else {
            let location = self.b / (1.0 - self.a);
            FixedPoint::Point {
                location,
                in_half_plane: location.re > 0.0,
            }
        }
    }

    /// Angular derivative at infinity: lim_{w -> inf} w / phi(w) = 1/a.
    /// Its square root is the operator norm of the induced composition
    /// operator.
    pub fn angular_derivative_at_infinity(&self) -> f64 {
        1.0 / self.a
    }

    /// The adjoint identity: the adjoint of the composition operator of this
    /// symbol is scale * C_psi with scale = 1/a and
    /// psi(w) = w/a + conj(b)/a.
    pub fn adjoint(&self) -> AdjointPair {
        AdjointPair {
            scale: 1.0 / self.a,
            symbol: Self::unchecked(1.0 / self.a, self.b.conj() / self.a),
        }
    }

    /// Conjugates the symbol to the unit disk through the Cayley transform
    /// gamma(z) = (1 + z)/(1 - z).
    ///
    /// The composition operator becomes the weighted composition
    /// g -> h * (g o Phi) on the disk Hardy space, with
    /// Phi(z) = ((a - b + 1) z + (a + b - 1)) / ((a - b - 1) z + (a + b + 1))
    /// and h(z) = 2 / ((a - b - 1) z + (a + b + 1)). Coefficients are left
    /// unnormalized; only the determinant matters.
    pub fn disk_model(&self) -> DiskModel {
        let a = Complex64::new(self.a, 0.0);
        let b = self.b;
        let one = Complex64::ONE;
        let gamma = a - b - one;
        let delta = a + b + one;
        DiskModel {
            alpha: a - b + one,
            beta: a + b - one,
            gamma,
            delta,
            weight_num: vec![Complex64::new(2.0, 0.0)],
            weight_den: vec![delta, gamma],
        }
    }
}

impl Serialize for AffineSymbol {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("AffineSymbol", 3)?;
        s.serialize_field("a", &self.a)?;
        s.serialize_field("re_b", &self.b.re)?;
        s.serialize_field("im_b", &self.b.im)?;
        s.end()
    }
}

/// The classification taxonomy. The identity map is filed under
/// `ParabolicAutomorphism` (a = 1, Re(b) = 0 applies to it row-for-row).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SymbolClass {
    ParabolicAutomorphism,
    HyperbolicAutomorphism,
    ParabolicNonAutomorphism,
    HyperbolicTypeI,
    HyperbolicTypeII,
}

impl SymbolClass {
    pub fn is_automorphism(&self) -> bool {
        matches!(
            self,
            SymbolClass::ParabolicAutomorphism | SymbolClass::HyperbolicAutomorphism
        )
    }
}

impl std::fmt::Display for SymbolClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            SymbolClass::ParabolicAutomorphism => "parabolic automorphism",
            SymbolClass::HyperbolicAutomorphism => "hyperbolic automorphism",
            SymbolClass::ParabolicNonAutomorphism => "parabolic non-automorphism",
            SymbolClass::HyperbolicTypeI => "hyperbolic non-automorphism of type I",
            SymbolClass::HyperbolicTypeII => "hyperbolic non-automorphism of type II",
        };
        f.write_str(name)
    }
}

/// Operator properties predicted from the symbol parameters alone.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PropertyProfile {
    pub bounded: bool,
    /// Operator norm sqrt(1/a).
    pub norm: f64,
    pub normal: bool,
    pub self_adjoint: bool,
    pub unitary: bool,
    pub complex_symmetric: bool,
    pub cyclic: bool,
    pub hypercyclic: bool,
}

/// Fixed points of an affine map of the plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FixedPoint {
    /// The identity map fixes every point.
    EveryPoint,
    /// A pure translation has no finite fixed point.
    NoneFinite,
    /// a != 1: the unique fixed point b / (1 - a).
    Point {
        location: Complex64,
        in_half_plane: bool,
    },
}

/// The adjoint formula data: C_phi^* = scale * C_psi.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdjointPair {
    pub scale: f64,
    pub symbol: AffineSymbol,
}

/// The conjugated model on the unit disk: a linear fractional map
/// Phi(z) = (alpha z + beta)/(gamma z + delta) together with a rational
/// weight stored as numerator and denominator polynomials (ascending
/// coefficients).
#[derive(Debug, Clone, PartialEq)]
pub struct DiskModel {
    pub alpha: Complex64,
    pub beta: Complex64,
    pub gamma: Complex64,
    pub delta: Complex64,
    pub weight_num: Vec<Complex64>,
    pub weight_den: Vec<Complex64>,
}

impl DiskModel {
    /// Evaluates Phi at a point of the disk.
    pub fn map(&self, z: Complex64) -> Complex64 {
        (self.alpha * z + self.beta) / (self.gamma * z + self.delta)
    }

    /// Evaluates the weight h at a point of the disk.
    pub fn weight(&self, z: Complex64) -> Complex64 {
        let num = poly_eval(&self.weight_num, z);
        let den = poly_eval(&self.weight_den, z);
        num / den
    }

    pub fn determinant(&self) -> Complex64 {
        self.alpha * self.delta - self.beta * self.gamma
    }

    /// Taylor series of Phi to the given order.
    pub fn phi_series(&self, order: usize) -> Result<PowerSeries> {
        lft_series(self.alpha, self.beta, self.gamma, self.delta, order)
    }

    /// Taylor series of the weight h to the given order.
    pub fn weight_series(&self, order: usize) -> Result<PowerSeries> {
        let num = PowerSeries::new(pad(&self.weight_num, order));
        let den = PowerSeries::new(pad(&self.weight_den, order));
        if self.weight_den.len() > 1 && self.weight_den[1] != Complex64::ZERO {
            let modulus = (self.weight_den[0] / self.weight_den[1]).norm();
            if modulus <= 1.0 {
                return Err(Error::PoleInsideDisk { modulus });
            }
        }
        Ok(num.series_mul(&den.recip()?))
    }

    /// Structural invariants: nonzero determinant, Phi maps sample points of
    /// the open disk strictly inside, and every root of the weight
    /// denominator lies strictly outside the closed unit disk.
    pub fn validate(&self) -> Result<()> {
        if self.determinant() == Complex64::ZERO {
            return Err(Error::Parse("disk model with zero determinant".into()));
        }
        for k in 0..64 {
            let z = Complex64::from_polar(0.95, std::f64::consts::TAU * k as f64 / 64.0);
            if self.map(z).norm() >= 1.0 {
                return Err(Error::Parse(format!(
                    "disk map does not keep |z| = 0.95 inside the disk at sample {k}"
                )));
            }
        }
        if self.weight_den.len() > 1 && self.weight_den[1] != Complex64::ZERO {
            let root = -self.weight_den[0] / self.weight_den[1];
            if root.norm() <= 1.0 {
                return Err(Error::PoleInsideDisk {
                    modulus: root.norm(),
                });
            }
        }
        Ok(())
    }
}

fn poly_eval(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::ZERO;
    for &c in coeffs.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

fn pad(coeffs: &[Complex64], order: usize) -> Vec<Complex64> {
    let mut v = vec![Complex64::ZERO; order];
    for (k, &c) in coeffs.iter().take(order).enumerate() {
        v[k] = c;
    }
    v
}

/// Cayley transform gamma(z) = (1 + z)/(1 - z) of the unit disk onto the
/// right half-plane.
pub fn cayley(z: Complex64) -> Complex64 {
    (Complex64::ONE + z) / (Complex64::ONE - z)
}

/// Inverse Cayley transform gamma^{-1}(w) = (w - 1)/(w + 1).
pub fn cayley_inv(w: Complex64) -> Complex64 {
    (w - Complex64::ONE) / (w + Complex64::ONE)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sym(a: f64, re_b: f64, im_b: f64) -> AffineSymbol {
        AffineSymbol::new(a, c(re_b, im_b)).unwrap()
    }

    #[test]
    fn admissible_symbols_are_accepted() {
        assert!(AffineSymbol::new(1.0, c(0.0, 1.0)).is_ok());
        let id = AffineSymbol::new(1.0, Complex64::ZERO).unwrap();
        assert!(id.is_identity());
    }

    #[test]
    fn inadmissible_symbols_are_rejected() {
        assert!(matches!(
            AffineSymbol::new(0.5, c(-1.0, 2.0)),
            Err(Error::UnboundedSymbol { .. })
        ));
        assert!(matches!(
            AffineSymbol::new(0.0, c(1.0, 0.0)),
            Err(Error::UnboundedSymbol { .. })
        ));
        assert!(matches!(
            AffineSymbol::new(-2.0, Complex64::ZERO),
            Err(Error::UnboundedSymbol { .. })
        ));
        assert!(AffineSymbol::new(f64::NAN, Complex64::ZERO).is_err());
        assert!(AffineSymbol::new(f64::INFINITY, Complex64::ZERO).is_err());
        assert!(AffineSymbol::new(1.0, c(0.0, f64::NAN)).is_err());
    }

    #[test]
    fn classification_table_rows() {
        let (class, p) = sym(1.0, 0.0, 1.0).classify();
        assert_eq!(class, SymbolClass::ParabolicAutomorphism);
        assert!(p.complex_symmetric && !p.cyclic && !p.hypercyclic && p.unitary);

        let (class, p) = sym(2.0, 1.0, 0.0).classify();
        assert_eq!(class, SymbolClass::HyperbolicTypeII);
        assert!(!p.complex_symmetric && p.cyclic && !p.hypercyclic);

        let (class, p) = sym(0.5, 1.0, 0.0).classify();
        assert_eq!(class, SymbolClass::HyperbolicTypeI);
        assert!(!p.complex_symmetric && !p.cyclic && !p.hypercyclic);

        let (class, p) = sym(1.0, 2.0, 0.0).classify();
        assert_eq!(class, SymbolClass::ParabolicNonAutomorphism);
        assert!(p.complex_symmetric && p.cyclic && !p.hypercyclic);
        assert!(p.normal && p.self_adjoint && !p.unitary);
    }

    #[test]
    fn identity_is_a_parabolic_automorphism() {
        let (class, p) = AffineSymbol::identity().classify();
        assert_eq!(class, SymbolClass::ParabolicAutomorphism);
        assert!(p.unitary && p.self_adjoint && p.normal);
        assert_eq!(p.norm, 1.0);
    }

    #[test]
    fn near_boundary_warning() {
        assert!(sym(1.0 + 1e-13, 1.0, 0.0).near_boundary());
        assert!(sym(2.0, 1e-13, 0.0).near_boundary());
        assert!(!sym(1.0, 0.0, 1.0).near_boundary());
        assert!(!sym(2.0, 1.0, 0.0).near_boundary());
    }

    #[test]
    fn iterate_examples() {
        let it = sym(2.0, 1.0, 0.0).iterate(3);
        assert_eq!(it.a(), 8.0);
        assert_eq!(it.b(), c(7.0, 0.0));

        assert!(sym(3.0, 2.0, 5.0).iterate(0).is_identity());

        let it = sym(1.0, 2.0, 1.0).iterate(5);
        assert_eq!(it.a(), 1.0);
        assert_eq!(it.b(), c(10.0, 5.0));
    }

    #[test]
    fn iterate_semigroup_law() {
        let s = sym(1.7, 0.4, -2.3);
        for (m, n) in [(0u32, 5u32), (2, 3), (4, 4), (1, 7)] {
            let lhs = s.iterate(m + n);
            let rhs = s.iterate(m).compose(&s.iterate(n));
            assert!((lhs.a() - rhs.a()).abs() < 1e-12 * lhs.a().abs());
            assert!((lhs.b() - rhs.b()).norm() < 1e-12 * (1.0 + lhs.b().norm()));
        }
    }

    #[test]
    fn fixed_point_examples() {
        match sym(0.5, 1.0, 0.0).fixed_point() {
            FixedPoint::Point {
                location,
                in_half_plane,
            } => {
                assert!((location - c(2.0, 0.0)).norm() < 1e-15);
                assert!(in_half_plane);
            }
            other => panic!("expected a point, got {other:?}"),
        }
        match sym(2.0, 1.0, 0.0).fixed_point() {
            FixedPoint::Point {
                location,
                in_half_plane,
            } => {
                assert!((location - c(-1.0, 0.0)).norm() < 1e-15);
                assert!(!in_half_plane);
            }
            other => panic!("expected a point, got {other:?}"),
        }
        assert_eq!(sym(1.0, 0.0, 1.0).fixed_point(), FixedPoint::NoneFinite);
        assert_eq!(AffineSymbol::identity().fixed_point(), FixedPoint::EveryPoint);
    }

    #[test]
    fn fixed_point_satisfies_equation() {
        for s in [sym(0.5, 1.0, 2.0), sym(3.0, 0.2, -1.0), sym(0.9, 0.0, 4.0)] {
            if let FixedPoint::Point { location, .. } = s.fixed_point() {
                assert!((s.apply(location) - location).norm() < 1e-12 * (1.0 + location.norm()));
            } else {
                panic!("a != 1 must yield a point");
            }
        }
    }

    #[test]
    fn angular_derivative_examples() {
        assert_eq!(sym(4.0, 1.0, 0.0).angular_derivative_at_infinity(), 0.25);
        assert_eq!(sym(4.0, 1.0, 0.0).classify().1.norm, 0.5);
        assert_eq!(AffineSymbol::identity().angular_derivative_at_infinity(), 1.0);
        assert_eq!(sym(0.25, 2.0, 0.0).angular_derivative_at_infinity(), 4.0);
        assert_eq!(sym(0.25, 2.0, 0.0).classify().1.norm, 2.0);
    }

    #[test]
    fn angular_derivative_of_iterates() {
        let s = sym(2.0, 1.0, 1.0);
        for n in 0..8u32 {
            let expected = (1.0f64 / 2.0).powi(n as i32);
            let got = s.iterate(n).angular_derivative_at_infinity();
            assert!((got - expected).abs() < 1e-12 * expected);
        }
    }

    #[test]
    fn adjoint_examples() {
        let adj = sym(2.0, 1.0, 1.0).adjoint();
        assert_eq!(adj.scale, 0.5);
        assert_eq!(adj.symbol.a(), 0.5);
        assert_eq!(adj.symbol.b(), c(0.5, -0.5));

        let adj = AffineSymbol::identity().adjoint();
        assert_eq!(adj.scale, 1.0);
        assert!(adj.symbol.is_identity());
    }

    #[test]
    fn adjoint_is_an_involution() {
        for s in [sym(2.0, 1.0, 1.0), sym(0.3, 0.0, -2.0), sym(1.0, 4.0, 0.5)] {
            let first = s.adjoint();
            let second = first.symbol.adjoint();
            assert!((second.symbol.a() - s.a()).abs() < 1e-15);
            assert!((second.symbol.b() - s.b()).norm() < 1e-15);
            assert!((first.scale * second.scale - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn disk_model_of_identity() {
        let m = AffineSymbol::identity().disk_model();
        assert_eq!(m.alpha, c(2.0, 0.0));
        assert_eq!(m.beta, Complex64::ZERO);
        assert_eq!(m.gamma, Complex64::ZERO);
        assert_eq!(m.delta, c(2.0, 0.0));
        let z = c(0.3, -0.4);
        assert!((m.map(z) - z).norm() < 1e-15);
        assert!((m.weight(z) - Complex64::ONE).norm() < 1e-15);
    }

    #[test]
    fn disk_model_of_translation_by_two() {
        // Phi(z) = 1/(2 - z) and h(z) = 1/(2 - z)
        let m = sym(1.0, 2.0, 0.0).disk_model();
        assert_eq!(m.alpha, Complex64::ZERO);
        assert_eq!(m.beta, c(2.0, 0.0));
        assert_eq!(m.gamma, c(-2.0, 0.0));
        assert_eq!(m.delta, c(4.0, 0.0));
        for z in [c(0.0, 0.0), c(0.5, 0.0), c(-0.5, 0.0), c(0.0, 0.5), c(0.0, -0.5)] {
            let expected = (c(2.0, 0.0) - z).inv();
            assert!((m.map(z) - expected).norm() < 1e-15);
            assert!((m.weight(z) - expected).norm() < 1e-15);
        }
    }

    #[test]
    fn disk_model_matches_compositional_definition() {
        let samples = [c(0.3, 0.1), c(-0.7, 0.2), c(0.0, 0.9), c(0.45, -0.45)];
        for s in [
            sym(1.0, 2.0, 0.0),
            sym(2.0, 1.0, 1.0),
            sym(0.4, 0.7, -1.3),
            sym(1.0, 0.0, 2.0),
            sym(3.0, 0.0, -0.5),
        ] {
            let m = s.disk_model();
            for &z in &samples {
                let oracle = cayley_inv(s.apply(cayley(z)));
                assert!((m.map(z) - oracle).norm() < 1e-14);
                let weight_oracle = (Complex64::ONE + cayley(z)) / (Complex64::ONE + s.apply(cayley(z)));
                assert!((m.weight(z) - weight_oracle).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn disk_model_invariants_hold_on_a_sweep() {
        let mut state = 1u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..200 {
            let a = 0.1 + 4.0 * next();
            let b = c(3.0 * next(), 6.0 * next() - 3.0);
            let m = AffineSymbol::new(a, b).unwrap().disk_model();
            m.validate().unwrap();
        }
    }

    #[test]
    fn symbol_serializes_to_flat_params() {
        let s = sym(2.0, 1.0, -0.5);
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"{"a":2.0,"re_b":1.0,"im_b":-0.5}"#);
    }
}
