//! Derivatives and integrals of maps between two charted spaces.
//!
//! For `A: X -> Y` with charts `f_X` and `f_Y`, every construction factors
//! through the *conjugate* `Ã = f_Y ∘ A ∘ f_X⁻¹`, an ordinary real function
//! of the chart coordinate `r = f_X(x)`:
//!
//! ```text
//! DA/Dx (x)      = f_Y⁻¹( Ã'(f_X(x)) )
//! ∫ A Dx over [lo, hi] = f_Y⁻¹( ∫ Ã(r) dr over [f_X(lo), f_X(hi)] )
//! ```
//!
//! The derivative is equivalently the limit of the charted difference
//! quotient `(A(x (+) f_X⁻¹(h)) (-) A(x)) (/) f_Y⁻¹(h)` as `h -> 0`;
//! [`ChartedFunction::derivative_via_limit`] evaluates that quotient
//! literally with the induced arithmetic and serves as an independent
//! cross-check of the conjugate route.
//!
//! The exponential map `x ↦ f_Y⁻¹(e^{f_X(x)})` is the native solution of
//! `DA/Dx = A`; the sine/cosine maps `f_Y⁻¹(sin f_X(x))`,
//! `f_Y⁻¹(cos f_X(x))` differentiate into each other exactly as their
//! classical counterparts do.

use std::sync::Arc;

use crate::arithmetic::{Arithmetic, RealFn};
use crate::error::{Error, Result};
use crate::exprlang;
use crate::quad;

/// Central-difference step used in chart space: relative to the magnitude
/// of the chart coordinate, with an absolute floor of `1e-6`.
pub fn default_step(r: f64) -> f64 {
    1e-6 * r.abs().max(1.0)
}

/// A function between two charted spaces, `A: X -> Y`.
#[derive(Clone)]
pub struct ChartedFunction {
    domain: Arithmetic,
    codomain: Arithmetic,
    map: RealFn,
}

impl std::fmt::Debug for ChartedFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ChartedFunction")
            .field("domain", &self.domain.chart().name())
            .field("codomain", &self.codomain.chart().name())
            .finish()
    }
}

impl ChartedFunction {
    /// Wraps a pointwise map between the two charted spaces. The map is
    /// expected to return NaN (not panic) on points it cannot handle; such
    /// points surface as [`Error::Numeric`] when evaluated.
    pub fn new(
        domain: Arithmetic,
        codomain: Arithmetic,
        map: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> ChartedFunction {
        ChartedFunction {
            domain,
            codomain,
            map: Arc::new(map),
        }
    }

    /// Parses `text` in the expression language as the pointwise map.
    pub fn from_expr(domain: Arithmetic, codomain: Arithmetic, text: &str) -> Result<Self> {
        let expr = exprlang::parse(text)?;
        Ok(ChartedFunction::new(domain, codomain, move |x| {
            expr.eval(x).unwrap_or(f64::NAN)
        }))
    }

    /// The exponential map `x ↦ f_Y⁻¹(e^{f_X(x)})`, the fixed point of the
    /// derivative: `D exp / Dx = exp`.
    pub fn exponential(domain: Arithmetic, codomain: Arithmetic) -> ChartedFunction {
        let d = domain.clone();
        let c = codomain.clone();
        ChartedFunction::new(domain, codomain, move |x| {
            exp_map(&d, &c, x).unwrap_or(f64::NAN)
        })
    }

    /// The sine map `x ↦ f_Y⁻¹(sin f_X(x))`.
    pub fn sine(domain: Arithmetic, codomain: Arithmetic) -> ChartedFunction {
        let d = domain.clone();
        let c = codomain.clone();
        ChartedFunction::new(domain, codomain, move |x| {
            sin_map(&d, &c, x).unwrap_or(f64::NAN)
        })
    }

    /// The cosine map `x ↦ f_Y⁻¹(cos f_X(x))`.
    pub fn cosine(domain: Arithmetic, codomain: Arithmetic) -> ChartedFunction {
        let d = domain.clone();
        let c = codomain.clone();
        ChartedFunction::new(domain, codomain, move |x| {
            cos_map(&d, &c, x).unwrap_or(f64::NAN)
        })
    }

    pub fn domain(&self) -> &Arithmetic {
        &self.domain
    }

    pub fn codomain(&self) -> &Arithmetic {
        &self.codomain
    }

    /// Evaluates `A(x)`, checking that `x` lies in `X` and the value in `Y`.
    pub fn value(&self, x: f64) -> Result<f64> {
        if !self.domain.chart().domain().contains(x) {
            return Err(Error::domain(format!(
                "{x} is outside the domain {} of chart '{}'",
                self.domain.chart().domain(),
                self.domain.chart().name()
            )));
        }
        let y = (self.map)(x);
        if !y.is_finite() {
            return Err(Error::numeric(format!(
                "map produced a non-finite value at {x}"
            )));
        }
        if !self.codomain.chart().domain().contains(y) {
            return Err(Error::domain(format!(
                "value {y} at {x} falls outside the codomain {} of chart '{}'",
                self.codomain.chart().domain(),
                self.codomain.chart().name()
            )));
        }
        Ok(y)
    }

    /// The conjugate `Ã(r) = f_Y(A(f_X⁻¹(r)))` at a chart coordinate `r`.
    pub fn chart_image(&self, r: f64) -> Result<f64> {
        let x = self.domain.chart().inverse(r)?;
        let y = self.value(x)?;
        self.codomain.chart().forward(y)
    }

    /// Composition `g ∘ self`; the codomain chart of `self` must coincide
    /// with the domain chart of `g`.
    pub fn then(&self, g: &ChartedFunction) -> Result<ChartedFunction> {
        if self.codomain.chart().name() != g.domain.chart().name() {
            return Err(Error::domain(format!(
                "cannot compose: codomain chart '{}' differs from domain chart '{}'",
                self.codomain.chart().name(),
                g.domain.chart().name()
            )));
        }
        let f = self.clone();
        let g2 = g.clone();
        Ok(ChartedFunction::new(
            self.domain.clone(),
            g.codomain.clone(),
            move |x| {
                f.value(x)
                    .and_then(|y| g2.value(y))
                    .unwrap_or(f64::NAN)
            },
        ))
    }

    /// The derivative `DA/Dx` at `x` with an automatic step.
    pub fn derivative(&self, x: f64) -> Result<f64> {
        let r = self.domain.chart().forward(x)?;
        self.derivative_with_step(x, default_step(r))
    }

    /// The derivative `DA/Dx` at `x`: a central difference of the conjugate
    /// in chart space, pushed back through the codomain chart.
    pub fn derivative_with_step(&self, x: f64, h: f64) -> Result<f64> {
        if !(h > 0.0) || !h.is_finite() {
            return Err(Error::domain(format!("step must be positive, got {h}")));
        }
        let r = self.domain.chart().forward(x)?;
        let upper = self.chart_image(r + h)?;
        let lower = self.chart_image(r - h)?;
        let slope = (upper - lower) / (2.0 * h);
        if !slope.is_finite() {
            return Err(Error::numeric(format!(
                "difference quotient is not finite at {x}"
            )));
        }
        self.codomain.chart().inverse(slope)
    }

    /// The derivative evaluated as the literal charted difference quotient
    /// `(A(x (+) f_X⁻¹(h)) (-) A(x)) (/) f_Y⁻¹(h)` with an automatic step.
    ///
    /// This route uses only the induced arithmetic — no conjugation — and is
    /// kept deliberately independent of [`Self::derivative`] so the two can
    /// cross-validate each other. Being one-sided it converges at `O(h)`.
    pub fn derivative_via_limit(&self, x: f64) -> Result<f64> {
        let r = self.domain.chart().forward(x)?;
        self.derivative_via_limit_with_step(x, default_step(r))
    }

    /// The charted difference quotient with an explicit step `h > 0`.
    pub fn derivative_via_limit_with_step(&self, x: f64, h: f64) -> Result<f64> {
        if !(h > 0.0) || !h.is_finite() {
            return Err(Error::domain(format!("step must be positive, got {h}")));
        }
        let step_x = self.domain.chart().inverse(h)?;
        let step_y = self.codomain.chart().inverse(h)?;
        let shifted = self.domain.add(x, step_x)?;
        let rise = self.codomain.sub(self.value(shifted)?, self.value(x)?)?;
        self.codomain.div(rise, step_y)
    }

    /// The integral `∫ A Dx` over `[lower, upper]`, computed as composite
    /// Simpson quadrature of the conjugate over `[f_X(lower), f_X(upper)]`
    /// and pushed back through the codomain chart.
    pub fn integral(&self, lower: f64, upper: f64, panels: usize) -> Result<f64> {
        let r_lo = self.domain.chart().forward(lower)?;
        let r_hi = self.domain.chart().forward(upper)?;
        let area = quad::simpson(|r| self.chart_image(r), r_lo, r_hi, panels)?;
        self.codomain.chart().inverse(area)
    }
}

/// `f_Y⁻¹(e^{f_X(x)})`; fails with [`Error::Numeric`] if the exponential
/// overflows before the pullback.
pub fn exp_map(domain: &Arithmetic, codomain: &Arithmetic, x: f64) -> Result<f64> {
    let r = domain.chart().forward(x)?;
    let image = r.exp();
    if !image.is_finite() {
        return Err(Error::numeric(format!(
            "exponential overflow at chart coordinate {r}"
        )));
    }
    codomain.chart().inverse(image)
}

/// `f_Y⁻¹(sin f_X(x))`.
pub fn sin_map(domain: &Arithmetic, codomain: &Arithmetic, x: f64) -> Result<f64> {
    let r = domain.chart().forward(x)?;
    codomain.chart().inverse(r.sin())
}

/// `f_Y⁻¹(cos f_X(x))`.
pub fn cos_map(domain: &Arithmetic, codomain: &Arithmetic, x: f64) -> Result<f64> {
    let r = domain.chart().forward(x)?;
    codomain.chart().inverse(r.cos())
}

/// Evaluates both sides of the chain rule for `g ∘ f` at `x` with step `h`:
/// the left side differentiates the composition directly, the right side
/// combines the factor derivatives through the middle chart,
/// `f_Z⁻¹( f_Z(Dg(f(x))) · f_Y(Df(x)) )`.
pub fn chain_check(
    f: &ChartedFunction,
    g: &ChartedFunction,
    x: f64,
    h: f64,
) -> Result<(f64, f64)> {
    let composed = f.then(g)?;
    let lhs = composed.derivative_with_step(x, h)?;
    let y = f.value(x)?;
    let df = f.derivative_with_step(x, h)?;
    let dg = g.derivative_with_step(y, h)?;
    let product = g.codomain().chart().forward(dg)? * f.codomain().chart().forward(df)?;
    if !product.is_finite() {
        return Err(Error::numeric(
            "chain rule product is not finite".to_string(),
        ));
    }
    let rhs = g.codomain().chart().inverse(product)?;
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn charted(dx: Arithmetic, dy: Arithmetic, map: impl Fn(f64) -> f64 + Send + Sync + 'static) -> ChartedFunction {
        ChartedFunction::new(dx, dy, map)
    }

    #[test]
    fn identity_charts_reduce_to_newtonian_calculus() {
        let square = charted(Arithmetic::identity(), Arithmetic::identity(), |x| x * x);
        assert!((square.derivative(3.0).unwrap() - 6.0).abs() < 1e-8);
        assert!((square.integral(0.0, 1.0, 64).unwrap() - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn cubic_sine_differentiates_to_cubic_cosine() {
        let sin = ChartedFunction::sine(Arithmetic::cubic(), Arithmetic::cubic());
        // D Sin / Dx at 1 equals Cos 1 = cbrt(cos 1).
        let d = sin.derivative(1.0).unwrap();
        assert!((d - 0.8144772166995121).abs() < 1e-7);
        // And at a second point, against the closed form cbrt(cos(x³)).
        let x = 0.6_f64;
        let d = sin.derivative(x).unwrap();
        assert!((d - (x * x * x).cos().cbrt()).abs() < 1e-8);
    }

    #[test]
    fn cubic_cosine_differentiates_to_minus_sine() {
        let cos = ChartedFunction::cosine(Arithmetic::cubic(), Arithmetic::cubic());
        let sin = ChartedFunction::sine(Arithmetic::cubic(), Arithmetic::cubic());
        let y = Arithmetic::cubic();
        for x in [0.4, 1.0, 1.3] {
            let lhs = cos.derivative(x).unwrap();
            let rhs = y.neg(sin.value(x).unwrap()).unwrap();
            assert!((lhs - rhs).abs() < 1e-7, "at {x}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn sine_and_cosine_satisfy_the_charted_circle_identity() {
        let pairs = [
            (Arithmetic::cubic(), Arithmetic::cubic()),
            (Arithmetic::log(), Arithmetic::cubic()),
            (Arithmetic::identity(), Arithmetic::cubic()),
        ];
        for (dx, dy) in pairs {
            let sin = ChartedFunction::sine(dx.clone(), dy.clone());
            let cos = ChartedFunction::cosine(dx.clone(), dy.clone());
            for x in [0.5, 1.0, 2.2] {
                let s = sin.value(x).unwrap();
                let c = cos.value(x).unwrap();
                let sum = dy
                    .add(dy.mul(s, s).unwrap(), dy.mul(c, c).unwrap())
                    .unwrap();
                assert!(
                    (sum - dy.one()).abs() < 1e-10,
                    "chart pair ({}, {}) at {x}: {sum}",
                    dx.chart().name(),
                    dy.chart().name()
                );
            }
        }
    }

    #[test]
    fn cube_root_is_its_own_derivative_between_log_and_cubic() {
        // From the log chart to the cubic chart the conjugate of cbrt is
        // (cbrt(e^r))³ = e^r, so D cbrt / Dx = cbrt(e^(ln x)) = cbrt(x):
        // the map reproduces itself, and at 8 the derivative is 2.
        let cbrt = charted(Arithmetic::log(), Arithmetic::cubic(), f64::cbrt);
        assert!((cbrt.derivative(8.0).unwrap() - 2.0).abs() < 1e-8);
        assert!((cbrt.derivative_via_limit(8.0).unwrap() - 2.0).abs() < 1e-4);
    }

    #[test]
    fn limit_route_and_conjugate_route_agree() {
        let cases: Vec<(Arithmetic, Arithmetic, RealFn, Vec<f64>)> = vec![
            (
                Arithmetic::identity(),
                Arithmetic::identity(),
                Arc::new(|x: f64| x * x),
                vec![0.5, 3.0, -2.0],
            ),
            (
                Arithmetic::cubic(),
                Arithmetic::cubic(),
                Arc::new(|x: f64| (x * x * x).sin().cbrt()),
                vec![0.7, 1.0],
            ),
            (
                Arithmetic::log(),
                Arithmetic::cubic(),
                Arc::new(f64::cbrt),
                vec![2.0, 8.0],
            ),
        ];
        for (dx, dy, map, points) in cases {
            let func = ChartedFunction {
                domain: dx,
                codomain: dy,
                map,
            };
            for x in points {
                let a = func.derivative(x).unwrap();
                let b = func.derivative_via_limit(x).unwrap();
                assert!(
                    (a - b).abs() < 1e-4 * a.abs().max(1.0),
                    "routes disagree at {x}: {a} vs {b}"
                );
            }
        }
    }

    #[test]
    fn exponential_map_is_its_own_derivative() {
        let pairs = [
            ("cubic/cubic", Arithmetic::cubic(), Arithmetic::cubic()),
            ("log/cubic", Arithmetic::log(), Arithmetic::cubic()),
            ("identity/log", Arithmetic::identity(), Arithmetic::log()),
            ("log/log", Arithmetic::log(), Arithmetic::log()),
        ];
        for (label, dx, dy) in pairs {
            let exp = ChartedFunction::exponential(dx.clone(), dy.clone());
            let samples: &[f64] = if dx.chart().domain().contains(-1.0) {
                &[-1.0, 0.2, 1.0]
            } else {
                &[0.3, 1.0, 2.5]
            };
            for &x in samples {
                let v = exp.value(x).unwrap();
                let d = exp.derivative(x).unwrap();
                assert!(
                    (d - v).abs() < 1e-6 * v.abs().max(1.0),
                    "{label} at {x}: D = {d}, A = {v}"
                );
            }
        }
    }

    #[test]
    fn exponential_map_closed_forms() {
        let e = std::f64::consts::E;
        // cubic/cubic: e^(x³/3).
        let v = exp_map(&Arithmetic::cubic(), &Arithmetic::cubic(), 1.0).unwrap();
        assert!((v - 1.3956124250860895).abs() < 1e-14);
        // log/cubic: cube root.
        let v = exp_map(&Arithmetic::log(), &Arithmetic::cubic(), 8.0).unwrap();
        assert!((v - 2.0).abs() < 1e-14);
        // identity/log: double exponential.
        let v = exp_map(&Arithmetic::identity(), &Arithmetic::log(), 0.0).unwrap();
        assert!((v - e).abs() < 1e-14);
        // log/log: the ordinary exponential.
        let v = exp_map(&Arithmetic::log(), &Arithmetic::log(), 1.0).unwrap();
        assert!((v - e).abs() < 1e-14);
        // At the domain's arithmetic zero the value is the codomain's one.
        let v = exp_map(&Arithmetic::log(), &Arithmetic::log(), 1.0).unwrap();
        assert!((v - Arithmetic::log().one()).abs() < 1e-14);
    }

    #[test]
    fn exponential_overflow_is_a_numeric_error() {
        assert!(matches!(
            exp_map(&Arithmetic::identity(), &Arithmetic::identity(), 1e4),
            Err(Error::Numeric(_))
        ));
    }

    #[test]
    fn charts_differentiate_to_one() {
        // The forward chart, seen as a map X -> R, has derivative 1.
        let fx = charted(Arithmetic::cubic(), Arithmetic::identity(), |x| {
            x * x * x
        });
        for x in [-1.5, 0.5, 2.0] {
            assert!((fx.derivative(x).unwrap() - 1.0).abs() < 1e-6);
        }
        // The inverse chart, seen as a map R -> X, has derivative 1_X.
        let fx_inv = charted(Arithmetic::identity(), Arithmetic::cubic(), f64::cbrt);
        for r in [-3.0, 0.25, 8.0] {
            assert!((fx_inv.derivative(r).unwrap() - 1.0).abs() < 1e-6);
        }
        let ln_inv = charted(Arithmetic::identity(), Arithmetic::log(), f64::exp);
        let e = std::f64::consts::E;
        for r in [-1.0, 0.0, 2.0] {
            assert!((ln_inv.derivative(r).unwrap() - e).abs() < 1e-6 * e);
        }
    }

    #[test]
    fn integral_inverts_the_derivative() {
        // Fundamental theorem, first form: ∫ over [a,b] of DA equals
        // A(b) (-) A(a).
        let cube = charted(Arithmetic::identity(), Arithmetic::identity(), |x| {
            x * x * x
        });
        let a = 0.0;
        let b = 2.0;
        let d = cube.clone();
        let deriv = charted(Arithmetic::identity(), Arithmetic::identity(), move |x| {
            d.derivative(x).unwrap_or(f64::NAN)
        });
        let integral = deriv.integral(a, b, 256).unwrap();
        assert!((integral - 8.0).abs() < 1e-6);
    }

    #[test]
    fn cubic_cosine_integrates_to_one_over_a_quarter_period() {
        // ∫ Cos Dx from 0 to (π/2)^(1/3) = Sin((π/2)^(1/3)) = 1.
        let cos = ChartedFunction::cosine(Arithmetic::cubic(), Arithmetic::cubic());
        let upper = 1.1624473515096265; // (π/2)^(1/3)
        let v = cos.integral(0.0, upper, 2048).unwrap();
        assert!((v - 1.0).abs() < 1e-9);
    }

    #[test]
    fn chain_rule_reconstructs_the_composite_derivative() {
        // Ordinary charts: f(x) = 2x, g(y) = y², composite 4x².
        let f = charted(Arithmetic::identity(), Arithmetic::identity(), |x| 2.0 * x);
        let g = charted(Arithmetic::identity(), Arithmetic::identity(), |y| y * y);
        let (lhs, rhs) = chain_check(&f, &g, 1.0, 1e-6).unwrap();
        assert!((lhs - 8.0).abs() < 1e-5);
        assert!((rhs - 8.0).abs() < 1e-5);
        // Deformed charts: Sin ∘ Sin through the cubic chart.
        let sin = ChartedFunction::sine(Arithmetic::cubic(), Arithmetic::cubic());
        let (lhs, rhs) = chain_check(&sin, &sin, 0.7, 1e-5).unwrap();
        assert!(
            (lhs - rhs).abs() < 1e-5 * lhs.abs().max(1.0),
            "chain rule mismatch: {lhs} vs {rhs}"
        );
        // Mixed charts: log -> cubic -> cubic.
        let cbrt = charted(Arithmetic::log(), Arithmetic::cubic(), f64::cbrt);
        let (lhs, rhs) = chain_check(&cbrt, &sin, 2.0, 1e-5).unwrap();
        assert!(
            (lhs - rhs).abs() < 1e-5 * lhs.abs().max(1.0),
            "chain rule mismatch: {lhs} vs {rhs}"
        );
    }

    #[test]
    fn composition_requires_matching_charts() {
        let f = charted(Arithmetic::identity(), Arithmetic::cubic(), |x| x);
        let g = charted(Arithmetic::log(), Arithmetic::identity(), |x| x);
        assert!(matches!(f.then(&g), Err(Error::Domain(_))));
    }

    #[test]
    fn derivative_is_linear_and_satisfies_leibniz() {
        let y = Arithmetic::cubic();
        let sin = ChartedFunction::sine(y.clone(), y.clone());
        let cos = ChartedFunction::cosine(y.clone(), y.clone());
        let (s, c, ar) = (sin.clone(), cos.clone(), y.clone());
        let sum = charted(y.clone(), y.clone(), move |x| {
            match (s.value(x), c.value(x)) {
                (Ok(a), Ok(b)) => ar.add(a, b).unwrap_or(f64::NAN),
                _ => f64::NAN,
            }
        });
        let (s, c, ar) = (sin.clone(), cos.clone(), y.clone());
        let product = charted(y.clone(), y.clone(), move |x| {
            match (s.value(x), c.value(x)) {
                (Ok(a), Ok(b)) => ar.mul(a, b).unwrap_or(f64::NAN),
                _ => f64::NAN,
            }
        });
        for x in [0.5, 1.1] {
            // Linearity: D(Sin (+) Cos) = D Sin (+) D Cos.
            let lhs = sum.derivative(x).unwrap();
            let rhs = y
                .add(sin.derivative(x).unwrap(), cos.derivative(x).unwrap())
                .unwrap();
            assert!((lhs - rhs).abs() < 1e-6, "linearity at {x}: {lhs} vs {rhs}");
            // Leibniz: D(Sin (*) Cos) = D Sin (*) Cos (+) Sin (*) D Cos.
            let lhs = product.derivative(x).unwrap();
            let rhs = y
                .add(
                    y.mul(sin.derivative(x).unwrap(), cos.value(x).unwrap())
                        .unwrap(),
                    y.mul(sin.value(x).unwrap(), cos.derivative(x).unwrap())
                        .unwrap(),
                )
                .unwrap();
            assert!((lhs - rhs).abs() < 1e-6, "Leibniz at {x}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn central_differences_converge_at_second_order() {
        let exp = charted(Arithmetic::identity(), Arithmetic::identity(), f64::exp);
        let x = 0.5_f64;
        let exact = x.exp();
        let err = |h: f64| (exp.derivative_with_step(x, h).unwrap() - exact).abs();
        let ratio = err(1e-3) / err(5e-4);
        assert!(
            (3.5..4.5).contains(&ratio),
            "expected ~4x error reduction, got {ratio}"
        );
    }

    #[test]
    fn invalid_steps_and_points_are_rejected() {
        let sin = ChartedFunction::sine(Arithmetic::log(), Arithmetic::cubic());
        assert!(matches!(sin.derivative(-1.0), Err(Error::Domain(_))));
        assert!(matches!(
            sin.derivative_with_step(1.0, 0.0),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            sin.derivative_via_limit_with_step(1.0, -1e-6),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn expression_maps_evaluate() {
        let f =
            ChartedFunction::from_expr(Arithmetic::identity(), Arithmetic::identity(), "x^2+1")
                .unwrap();
        assert_eq!(f.value(3.0).unwrap(), 10.0);
        assert!((f.derivative(3.0).unwrap() - 6.0).abs() < 1e-8);
    }
}
