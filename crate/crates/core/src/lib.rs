//! Arithmetic, calculus, and wave propagation induced by bijective charts.
//!
//! A *chart* is a bijection `f: X -> R` between a subset of the reals and the
//! whole real line. Pulling the ordinary field operations back through `f`
//! equips `X` with its own addition, multiplication, ordering, derivative and
//! integral, all of which degenerate to the familiar ones when `f` is the
//! identity. This crate implements:
//!
//! * [`arithmetic`] — charts and the field operations they induce,
//! * [`calculus`] — derivatives, integrals and chain rules between two
//!   charted spaces, plus the exponential/sine/cosine maps native to them,
//! * [`koch`] — Koch-type fractal curves addressed by base-4 expansions,
//!   with exact self-similar embeddings and polyline approximants,
//! * [`wave`] — d'Alembert solutions transported onto the curve, with
//!   energy functionals and a PDE residual probe,
//! * [`lorentz`] — hyperbolic boosts acting linearly in chart coordinates
//!   and nonlinearly on the charted spaces themselves,
//! * [`exprlang`] — a small expression language used for user-supplied
//!   charts and wave profiles,
//! * [`quad`] — deterministic composite Simpson quadrature.
//!
//! Floating-point policy: inputs outside a chart's domain yield
//! [`Error::Domain`]; division by an arithmetic zero yields
//! [`Error::DivisionByZero`]; overflow and other non-finite intermediates
//! yield [`Error::Numeric`]. NaNs are never returned from `Ok` values.

pub mod arithmetic;
pub mod calculus;
pub mod error;
pub mod exprlang;
pub mod koch;
pub mod lorentz;
pub mod quad;
pub mod wave;

pub use arithmetic::{Arithmetic, Chart, Domain};
pub use calculus::ChartedFunction;
pub use error::{Error, Result};
pub use koch::{Address, AddressDigits, KochParams, PlanePoint};
pub use lorentz::{Boost, BoostedField, SpacetimePoint};
pub use wave::{EnergyEstimate, Profile, Sample, Snapshot, SpacetimeField, WaveField, WaveProfile};
