//! Hyperbolic boosts on charted 1+1-dimensional spacetime.
//!
//! A boost of rapidity `χ` acts linearly on the chart coordinates
//! `(r₀, r₁) = (f₀(x₀), f₁(x₁))`:
//!
//! ```text
//! r₀' = cosh χ · r₀ + sinh χ · r₁
//! r₁' = sinh χ · r₀ + cosh χ · r₁
//! ```
//!
//! and therefore *nonlinearly* on the charted spacetime itself:
//! `x' = f⁻¹(Λ f(x))` component-wise. Rapidities add under composition and
//! the quadratic form `r₀² - r₁²` is preserved exactly in chart space.
//!
//! On the fractal curve the spatial chart is the arc-coordinate chart
//! (identity on addresses) and the time chart is the identity, so
//! [`boost_point`] is the textbook special-relativistic boost of
//! `(x₀, y) = (ct, y)`; [`boost_point_general`] routes both components
//! through arbitrary charts. A whole wave field is boosted lazily by
//! [`transform_field`]: the returned field pulls evaluation points back
//! through the inverse boost, which keeps the d'Alembert form exact.

use crate::arithmetic::Chart;
use crate::error::{Error, Result};
use crate::koch::Address;
use crate::wave::{SpacetimeField, WaveField};

/// A boost of the hyperbolic rotation group SO(1,1), stored by rapidity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Boost {
    chi: f64,
}

impl Boost {
    /// A boost of rapidity `chi`.
    pub fn new(chi: f64) -> Boost {
        Boost { chi }
    }

    /// The identity boost.
    pub fn identity() -> Boost {
        Boost { chi: 0.0 }
    }

    pub fn rapidity(&self) -> f64 {
        self.chi
    }

    /// Group composition: rapidities add.
    pub fn compose(&self, other: Boost) -> Boost {
        Boost {
            chi: self.chi + other.chi,
        }
    }

    /// The inverse boost.
    pub fn inverse(&self) -> Boost {
        Boost { chi: -self.chi }
    }

    /// The matrix `[[cosh χ, sinh χ], [sinh χ, cosh χ]]`.
    pub fn matrix(&self) -> [[f64; 2]; 2] {
        let (c, s) = (self.chi.cosh(), self.chi.sinh());
        [[c, s], [s, c]]
    }

    /// The linear action on a pair of chart coordinates.
    pub fn apply_coords(&self, r0: f64, r1: f64) -> (f64, f64) {
        let (c, s) = (self.chi.cosh(), self.chi.sinh());
        (c * r0 + s * r1, s * r0 + c * r1)
    }
}

/// The invariant quadratic form `r₀² - r₁²` of a coordinate pair.
pub fn interval(r0: f64, r1: f64) -> f64 {
    r0 * r0 - r1 * r1
}

/// An event on the curve: a time coordinate `x₀ = ct` and an addressed
/// spatial point.
#[derive(Clone, Debug, PartialEq)]
pub struct SpacetimePoint {
    pub x0: f64,
    pub x1: Address,
}

impl SpacetimePoint {
    pub fn new(x0: f64, x1: Address) -> SpacetimePoint {
        SpacetimePoint { x0, x1 }
    }
}

/// Boosts an event on the curve. The time chart is the identity and the
/// spatial chart is the arc-coordinate chart, so both components transform
/// linearly; the boosted address is rebuilt from its new coordinate.
pub fn boost_point(boost: Boost, point: &SpacetimePoint) -> Result<SpacetimePoint> {
    let (x0, x1) = boost.apply_coords(point.x0, point.x1.coordinate());
    Ok(SpacetimePoint {
        x0,
        x1: Address::from_coordinate(x1)?,
    })
}

/// Boosts a coordinate pair through arbitrary charts:
/// `x' = (f₀⁻¹, f₁⁻¹)(Λ (f₀(x₀), f₁(x₁)))`.
///
/// Fails with a domain error if either input lies outside its chart or the
/// boosted chart coordinates leave the charts' ranges.
pub fn boost_point_general(
    boost: Boost,
    x0: f64,
    x1: f64,
    chart0: &Chart,
    chart1: &Chart,
) -> Result<(f64, f64)> {
    let r0 = chart0.forward(x0)?;
    let r1 = chart1.forward(x1)?;
    let (s0, s1) = boost.apply_coords(r0, r1);
    if !s0.is_finite() || !s1.is_finite() {
        return Err(Error::numeric(format!(
            "boosted chart coordinates overflowed at ({x0}, {x1})"
        )));
    }
    Ok((chart0.inverse(s0)?, chart1.inverse(s1)?))
}

/// A wave field seen from a boosted frame, evaluated by pulling points
/// back through the inverse boost. The base field's closed form is reused,
/// so boosted evaluation is as exact as unboosted evaluation.
#[derive(Clone, Debug)]
pub struct BoostedField {
    base: WaveField,
    boost: Boost,
}

impl BoostedField {
    pub fn base(&self) -> &WaveField {
        &self.base
    }

    pub fn boost(&self) -> Boost {
        self.boost
    }
}

/// Views `field` from the frame reached by `boost`.
pub fn transform_field(field: &WaveField, boost: Boost) -> BoostedField {
    BoostedField {
        base: field.clone(),
        boost,
    }
}

impl SpacetimeField for BoostedField {
    /// `Φ'(x') = Φ(Λ⁻¹ x')`, with `x₀ = ct` handled in boost coordinates.
    fn value(&self, t: f64, y: f64) -> Result<f64> {
        let c = self.base.speed();
        let (x0, x1) = self.boost.inverse().apply_coords(c * t, y);
        self.base.value_at(x0 / c, x1)
    }

    fn speed(&self) -> f64 {
        self.base.speed()
    }
}
