//! Bijective charts and the arithmetic they induce.
//!
//! A chart `f: X -> R` maps an open interval `X` onto the real line. The
//! induced operations are pullbacks of the ordinary ones:
//!
//! ```text
//! x (+) y = f⁻¹(f(x) + f(y))      x (*) y = f⁻¹(f(x) · f(y))
//! x (-) y = f⁻¹(f(x) - f(y))      x (/) y = f⁻¹(f(x) / f(y))
//! ```
//!
//! with neutral elements `0_X = f⁻¹(0)` and `1_X = f⁻¹(1)` and the order
//! `x ≤ y  iff  f(x) ≤ f(y)`. With the identity chart everything reduces to
//! ordinary real arithmetic.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exprlang;

/// Shared real-valued function of one variable.
pub(crate) type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// An open interval `(lo, hi)`, possibly unbounded on either side.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Domain {
    lo: f64,
    hi: f64,
}

impl Domain {
    /// The whole real line.
    pub const fn full() -> Self {
        Domain {
            lo: f64::NEG_INFINITY,
            hi: f64::INFINITY,
        }
    }

    /// The positive half-line `(0, ∞)`.
    pub const fn positive() -> Self {
        Domain {
            lo: 0.0,
            hi: f64::INFINITY,
        }
    }

    /// A general open interval; `lo < hi` is required.
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo < hi) {
            return Err(Error::domain(format!(
                "invalid interval ({lo}, {hi}): lower bound must be below upper bound"
            )));
        }
        Ok(Domain { lo, hi })
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    /// Whether `x` is a finite interior point.
    pub fn contains(&self, x: f64) -> bool {
        x.is_finite() && x > self.lo && x < self.hi
    }

    /// A finite grid of interior points used to validate custom charts.
    /// Unbounded sides are truncated to a window wide enough to catch
    /// non-monotone or non-invertible candidates.
    fn probe_points(&self, n: usize) -> Vec<f64> {
        let lo = if self.lo.is_finite() {
            self.lo
        } else {
            self.hi.min(8.0) - 16.0
        };
        let hi = if self.hi.is_finite() {
            self.hi
        } else {
            lo + 16.0
        };
        let span = hi - lo;
        (1..=n)
            .map(|i| lo + span * i as f64 / (n + 1) as f64)
            .collect()
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lo, self.hi)
    }
}

/// A bijection between an open interval and the real line, with its inverse.
///
/// Preset charts are available by name:
///
/// | name       | forward        | inverse   | domain   |
/// |------------|----------------|-----------|----------|
/// | `identity` | `x`            | `x`       | all of R |
/// | `cubic`    | `x^3`          | `cbrt(x)` | all of R |
/// | `log`      | `ln(x)`        | `exp(x)`  | `(0, ∞)` |
/// | `koch`     | `x` (see note) | `x`       | all of R |
///
/// The `koch` chart acts as the identity on curve-address coordinates: the
/// fractal support is charted by arc-length-like base-4 addresses, and all
/// arithmetic happens on those coordinates. User charts are accepted as
/// `expr:<forward>;<inverse>` pairs in the expression language.
#[derive(Clone)]
pub struct Chart {
    name: String,
    forward: RealFn,
    inverse: RealFn,
    domain: Domain,
}

impl fmt::Debug for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Chart")
            .field("name", &self.name)
            .field("domain", &self.domain)
            .finish()
    }
}

impl Chart {
    /// The identity chart on the real line.
    pub fn identity() -> Chart {
        Chart {
            name: "identity".into(),
            forward: Arc::new(|x| x),
            inverse: Arc::new(|r| r),
            domain: Domain::full(),
        }
    }

    /// The cubic chart `f(x) = x³` on the real line.
    pub fn cubic() -> Chart {
        Chart {
            name: "cubic".into(),
            forward: Arc::new(|x| x * x * x),
            inverse: Arc::new(f64::cbrt),
            domain: Domain::full(),
        }
    }

    /// The logarithmic chart `f(x) = ln x` on `(0, ∞)`.
    pub fn log() -> Chart {
        Chart {
            name: "log".into(),
            forward: Arc::new(f64::ln),
            inverse: Arc::new(f64::exp),
            domain: Domain::positive(),
        }
    }

    /// The chart of curve addresses: identity on address coordinates.
    pub fn koch() -> Chart {
        Chart {
            name: "koch".into(),
            forward: Arc::new(|x| x),
            inverse: Arc::new(|r| r),
            domain: Domain::full(),
        }
    }

    /// Builds a chart from forward/inverse expressions in the variable `x`.
    ///
    /// The domain is inferred: the full line is tried first, then the
    /// positive half-line; the first candidate on which the pair evaluates
    /// finitely, strictly monotonically, and inverts accurately wins.
    pub fn from_exprs(forward: &str, inverse: &str) -> Result<Chart> {
        let fwd_expr = exprlang::parse(forward)?;
        let inv_expr = exprlang::parse(inverse)?;
        let name = format!("expr:{};{}", fwd_expr.format(), inv_expr.format());
        let fwd: RealFn = {
            let e = fwd_expr;
            Arc::new(move |x| e.eval(x).unwrap_or(f64::NAN))
        };
        let inv: RealFn = {
            let e = inv_expr;
            Arc::new(move |r| e.eval(r).unwrap_or(f64::NAN))
        };
        let mut first_failure = None;
        for domain in [Domain::full(), Domain::positive()] {
            let candidate = Chart {
                name: name.clone(),
                forward: fwd.clone(),
                inverse: inv.clone(),
                domain,
            };
            match candidate.validate() {
                Ok(()) => return Ok(candidate),
                Err(e) => first_failure = first_failure.or(Some(e)),
            }
        }
        Err(first_failure.expect("at least one candidate domain was tried"))
    }

    /// Builds a chart from arbitrary closures, validating it on a probe grid.
    pub fn custom(
        name: impl Into<String>,
        forward: impl Fn(f64) -> f64 + Send + Sync + 'static,
        inverse: impl Fn(f64) -> f64 + Send + Sync + 'static,
        domain: Domain,
    ) -> Result<Chart> {
        let chart = Chart {
            name: name.into(),
            forward: Arc::new(forward),
            inverse: Arc::new(inverse),
            domain,
        };
        chart.validate()?;
        Ok(chart)
    }

    /// Resolves a chart selector: a preset name or `expr:<fwd>;<inv>`.
    pub fn by_name(selector: &str) -> Result<Chart> {
        match selector {
            "identity" => Ok(Chart::identity()),
            "cubic" => Ok(Chart::cubic()),
            "log" => Ok(Chart::log()),
            "koch" => Ok(Chart::koch()),
            other => {
                if let Some(rest) = other.strip_prefix("expr:") {
                    let (fwd, inv) = rest.split_once(';').ok_or_else(|| {
                        Error::domain(
                            "expression chart needs the form expr:<forward>;<inverse>".to_string(),
                        )
                    })?;
                    Chart::from_exprs(fwd, inv)
                } else {
                    Err(Error::domain(format!(
                        "unknown chart '{other}' (expected identity, cubic, log, koch, \
                         or expr:<forward>;<inverse>)"
                    )))
                }
            }
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    /// Applies the forward map, checking the domain and the result.
    pub fn forward(&self, x: f64) -> Result<f64> {
        if !self.domain.contains(x) {
            return Err(Error::domain(format!(
                "{x} is outside the domain {} of chart '{}'",
                self.domain, self.name
            )));
        }
        let r = (self.forward)(x);
        if !r.is_finite() {
            return Err(Error::numeric(format!(
                "chart '{}' produced a non-finite image at {x}",
                self.name
            )));
        }
        Ok(r)
    }

    /// Applies the inverse map, checking that the preimage is a finite
    /// interior point of the domain.
    pub fn inverse(&self, r: f64) -> Result<f64> {
        if !r.is_finite() {
            return Err(Error::numeric(format!(
                "non-finite chart coordinate {r} for chart '{}'",
                self.name
            )));
        }
        let x = (self.inverse)(r);
        if !self.domain.contains(x) {
            return Err(Error::domain(format!(
                "coordinate {r} has no preimage inside the domain {} of chart '{}'",
                self.domain, self.name
            )));
        }
        Ok(x)
    }

    /// Checks bijectivity on a probe grid: finite values, strict
    /// monotonicity, and an accurate round trip `f⁻¹(f(x)) ≈ x`.
    fn validate(&self) -> Result<()> {
        let points = self.domain.probe_points(33);
        let mut prev: Option<(f64, f64)> = None;
        let mut direction = 0.0_f64;
        for &x in &points {
            let r = (self.forward)(x);
            if !r.is_finite() {
                return Err(Error::domain(format!(
                    "chart '{}' is not finite at {x} on domain {}",
                    self.name, self.domain
                )));
            }
            if let Some((_px, pr)) = prev {
                let step = r - pr;
                if step == 0.0 {
                    return Err(Error::domain(format!(
                        "chart '{}' is not strictly monotone near {x}",
                        self.name
                    )));
                }
                if direction == 0.0 {
                    direction = step.signum();
                } else if step.signum() != direction {
                    return Err(Error::domain(format!(
                        "chart '{}' is not monotone near {x}",
                        self.name
                    )));
                }
            }
            let back = (self.inverse)(r);
            let tol = 1e-9 * x.abs().max(1.0);
            if !back.is_finite() || (back - x).abs() > tol {
                return Err(Error::domain(format!(
                    "chart '{}' fails the round trip at {x}: f⁻¹(f(x)) = {back}",
                    self.name
                )));
            }
            prev = Some((x, r));
        }
        Ok(())
    }
}

/// A charted copy of the reals: a [`Chart`] together with its neutral
/// elements, exposing the induced field operations.
#[derive(Clone, Debug)]
pub struct Arithmetic {
    chart: Chart,
    zero: f64,
    one: f64,
}

impl Arithmetic {
    /// Wraps a chart, computing the neutral elements `f⁻¹(0)` and `f⁻¹(1)`.
    pub fn new(chart: Chart) -> Result<Arithmetic> {
        let zero = chart.inverse(0.0)?;
        let one = chart.inverse(1.0)?;
        Ok(Arithmetic { chart, zero, one })
    }

    /// Ordinary real arithmetic.
    pub fn identity() -> Arithmetic {
        Arithmetic::new(Chart::identity()).expect("identity chart is total")
    }

    /// Arithmetic induced by the cubic chart.
    pub fn cubic() -> Arithmetic {
        Arithmetic::new(Chart::cubic()).expect("cubic chart is total")
    }

    /// Arithmetic induced by the logarithmic chart.
    pub fn log() -> Arithmetic {
        Arithmetic::new(Chart::log()).expect("log chart covers (0, ∞)")
    }

    /// Arithmetic on curve-address coordinates.
    pub fn koch() -> Arithmetic {
        Arithmetic::new(Chart::koch()).expect("koch chart is total")
    }

    /// Resolves a chart selector (see [`Chart::by_name`]).
    pub fn by_name(selector: &str) -> Result<Arithmetic> {
        Arithmetic::new(Chart::by_name(selector)?)
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    /// The additive neutral element `0_X = f⁻¹(0)`.
    pub fn zero(&self) -> f64 {
        self.zero
    }

    /// The multiplicative neutral element `1_X = f⁻¹(1)`.
    pub fn one(&self) -> f64 {
        self.one
    }

    fn binary(&self, x: f64, y: f64, op: impl Fn(f64, f64) -> f64) -> Result<f64> {
        let a = self.chart.forward(x)?;
        let b = self.chart.forward(y)?;
        let r = op(a, b);
        if !r.is_finite() {
            return Err(Error::numeric(format!(
                "operation on chart '{}' overflowed at ({x}, {y})",
                self.chart.name
            )));
        }
        self.chart.inverse(r)
    }

    /// `x (+) y = f⁻¹(f(x) + f(y))`.
    pub fn add(&self, x: f64, y: f64) -> Result<f64> {
        self.binary(x, y, |a, b| a + b)
    }

    /// `x (-) y = f⁻¹(f(x) - f(y))`.
    pub fn sub(&self, x: f64, y: f64) -> Result<f64> {
        self.binary(x, y, |a, b| a - b)
    }

    /// `x (*) y = f⁻¹(f(x) · f(y))`.
    pub fn mul(&self, x: f64, y: f64) -> Result<f64> {
        self.binary(x, y, |a, b| a * b)
    }

    /// `x (/) y = f⁻¹(f(x) / f(y))`; fails with
    /// [`Error::DivisionByZero`] when `y` is the arithmetic zero.
    pub fn div(&self, x: f64, y: f64) -> Result<f64> {
        let a = self.chart.forward(x)?;
        let b = self.chart.forward(y)?;
        if b == 0.0 {
            return Err(Error::DivisionByZero);
        }
        let r = a / b;
        if !r.is_finite() {
            return Err(Error::numeric(format!(
                "division on chart '{}' overflowed at ({x}, {y})",
                self.chart.name
            )));
        }
        self.chart.inverse(r)
    }

    /// The additive inverse `0_X (-) x`.
    pub fn neg(&self, x: f64) -> Result<f64> {
        self.sub(self.zero, x)
    }

    /// The image `f⁻¹(n)` of an ordinary integer.
    pub fn from_int(&self, n: i64) -> Result<f64> {
        self.chart.inverse(n as f64)
    }

    /// The induced total order: `x ≤ y` iff `f(x) ≤ f(y)`.
    pub fn compare(&self, x: f64, y: f64) -> Result<Ordering> {
        let a = self.chart.forward(x)?;
        let b = self.chart.forward(y)?;
        a.partial_cmp(&b)
            .ok_or_else(|| Error::numeric("incomparable chart images".to_string()))
    }
}
