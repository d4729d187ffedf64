//! d'Alembert wave fields on the fractal curve.
//!
//! The field is stored in closed form as a superposition of travelling
//! profiles,
//!
//! ```text
//! Φ(t, y) = a(y + c t) + b(y - c t)
//! ```
//!
//! in the arc coordinate `y` of the curve, so evaluation at any time is
//! exact — there is no time stepping and no accumulation of error. The
//! closed form solves the charted wave equation
//! `(1/c²) ∂²Φ/∂t² = D²Φ/Dx²` identically; [`pde_residual`] probes that
//! claim with central second differences for any [`SpacetimeField`].
//!
//! The energy functional
//!
//! ```text
//! E(t) = 1/2 ∫ [ (1/c²) |∂Φ/∂t|² + |DΦ/Dx|² ] Dx
//!      = ∫ a'(r)² dr + ∫ b'(r)² dr
//! ```
//!
//! is time independent as long as the integration window contains the
//! support; [`WaveField::energy`] integrates the literal definition and
//! flags windows that truncate the support.

use crate::error::{Error, Result};
use crate::exprlang;
use crate::koch::{Address, KochParams, PlanePoint};
use crate::quad;

/// Integrand magnitude at the window edge above which an energy estimate
/// is flagged as truncated.
pub const BOUNDARY_TOLERANCE: f64 = 1e-10;

/// Snapshot sampling is capped at this many points.
pub const MAX_SNAPSHOT_SAMPLES: usize = 1 << 22;

/// Step used to differentiate expression profiles.
const EXPR_SLOPE_STEP: f64 = 1e-6;

/// A travelling profile: a smooth real function of one chart coordinate.
///
/// Textual forms accepted by [`Profile::parse`]:
///
/// * `zero`
/// * `gaussian:<sigma>[@<center>]` — `exp(-((r-center)/sigma)²)`
/// * `sinepacket:<freq>,<sigma>[@<center>]` — `sin(freq·r)` under the
///   same envelope
/// * `chirp:<sigma>[@<center>]` — `sin(r³)` under the envelope
/// * anything else parses as an expression in `x` (the chart coordinate)
#[derive(Clone, Debug)]
pub enum Profile {
    Zero,
    Gaussian {
        sigma: f64,
        center: f64,
    },
    SinePacket {
        freq: f64,
        sigma: f64,
        center: f64,
    },
    Chirp {
        sigma: f64,
        center: f64,
    },
    Expr {
        text: String,
        expr: exprlang::Expr,
    },
}

fn check_width(sigma: f64) -> Result<f64> {
    if !(sigma > 0.0) || !sigma.is_finite() {
        return Err(Error::domain(format!(
            "profile width must be positive, got {sigma}"
        )));
    }
    Ok(sigma)
}

fn check_finite(name: &str, v: f64) -> Result<f64> {
    if !v.is_finite() {
        return Err(Error::domain(format!("profile {name} must be finite")));
    }
    Ok(v)
}

impl Profile {
    pub fn zero() -> Profile {
        Profile::Zero
    }

    pub fn gaussian(sigma: f64, center: f64) -> Result<Profile> {
        Ok(Profile::Gaussian {
            sigma: check_width(sigma)?,
            center: check_finite("center", center)?,
        })
    }

    pub fn sine_packet(freq: f64, sigma: f64, center: f64) -> Result<Profile> {
        Ok(Profile::SinePacket {
            freq: check_finite("frequency", freq)?,
            sigma: check_width(sigma)?,
            center: check_finite("center", center)?,
        })
    }

    pub fn chirp(sigma: f64, center: f64) -> Result<Profile> {
        Ok(Profile::Chirp {
            sigma: check_width(sigma)?,
            center: check_finite("center", center)?,
        })
    }

    /// Parses an expression profile in the variable `x`.
    pub fn from_expr(text: &str) -> Result<Profile> {
        let expr = exprlang::parse(text)?;
        Ok(Profile::Expr {
            text: text.trim().to_string(),
            expr,
        })
    }

    /// Parses a profile selector (see the type-level docs).
    pub fn parse(selector: &str) -> Result<Profile> {
        let selector = selector.trim();
        if selector == "zero" {
            return Ok(Profile::Zero);
        }
        let number = |text: &str, what: &str| -> Result<f64> {
            text.trim().parse().map_err(|_| Error::Parse {
                offset: 0,
                message: format!("malformed {what} '{text}' in profile '{selector}'"),
            })
        };
        fn split_center(body: &str) -> (&str, &str) {
            match body.split_once('@') {
                Some((head, center)) => (head, center),
                None => (body, "0"),
            }
        }
        if let Some(body) = selector.strip_prefix("gaussian:") {
            let (sigma, center) = split_center(body);
            return Profile::gaussian(number(sigma, "width")?, number(center, "center")?);
        }
        if let Some(body) = selector.strip_prefix("sinepacket:") {
            let (head, center) = split_center(body);
            let (freq, sigma) = head.split_once(',').ok_or_else(|| Error::Parse {
                offset: 0,
                message: format!("profile '{selector}' needs the form sinepacket:<freq>,<sigma>"),
            })?;
            return Profile::sine_packet(
                number(freq, "frequency")?,
                number(sigma, "width")?,
                number(center, "center")?,
            );
        }
        if let Some(body) = selector.strip_prefix("chirp:") {
            let (sigma, center) = split_center(body);
            return Profile::chirp(number(sigma, "width")?, number(center, "center")?);
        }
        Profile::from_expr(selector)
    }

    /// Canonical textual form, parseable by [`Profile::parse`].
    pub fn describe(&self) -> String {
        match self {
            Profile::Zero => "zero".to_string(),
            Profile::Gaussian { sigma, center } => format!("gaussian:{sigma}@{center}"),
            Profile::SinePacket {
                freq,
                sigma,
                center,
            } => format!("sinepacket:{freq},{sigma}@{center}"),
            Profile::Chirp { sigma, center } => format!("chirp:{sigma}@{center}"),
            Profile::Expr { text, .. } => text.clone(),
        }
    }

    fn envelope(sigma: f64, center: f64, r: f64) -> f64 {
        let u = (r - center) / sigma;
        (-u * u).exp()
    }

    fn envelope_slope(sigma: f64, center: f64, r: f64) -> f64 {
        let u = (r - center) / sigma;
        -2.0 * u / sigma * (-u * u).exp()
    }

    /// The profile value at chart coordinate `r`.
    pub fn value(&self, r: f64) -> Result<f64> {
        let v = match self {
            Profile::Zero => 0.0,
            Profile::Gaussian { sigma, center } => Self::envelope(*sigma, *center, r),
            Profile::SinePacket {
                freq,
                sigma,
                center,
            } => (freq * r).sin() * Self::envelope(*sigma, *center, r),
            Profile::Chirp { sigma, center } => {
                (r * r * r).sin() * Self::envelope(*sigma, *center, r)
            }
            Profile::Expr { expr, .. } => expr.eval(r)?,
        };
        if !v.is_finite() {
            return Err(Error::numeric(format!("profile is not finite at {r}")));
        }
        Ok(v)
    }

    /// The profile derivative at `r`: analytic for the presets, a central
    /// difference for expression profiles.
    pub fn slope(&self, r: f64) -> Result<f64> {
        let v = match self {
            Profile::Zero => 0.0,
            Profile::Gaussian { sigma, center } => Self::envelope_slope(*sigma, *center, r),
            Profile::SinePacket {
                freq,
                sigma,
                center,
            } => {
                freq * (freq * r).cos() * Self::envelope(*sigma, *center, r)
                    + (freq * r).sin() * Self::envelope_slope(*sigma, *center, r)
            }
            Profile::Chirp { sigma, center } => {
                3.0 * r * r * (r * r * r).cos() * Self::envelope(*sigma, *center, r)
                    + (r * r * r).sin() * Self::envelope_slope(*sigma, *center, r)
            }
            Profile::Expr { expr, .. } => {
                let h = EXPR_SLOPE_STEP;
                (expr.eval(r + h)? - expr.eval(r - h)?) / (2.0 * h)
            }
        };
        if !v.is_finite() {
            return Err(Error::numeric(format!(
                "profile slope is not finite at {r}"
            )));
        }
        Ok(v)
    }
}

/// The two travelling components of a field: `left` moves toward smaller
/// coordinates (`a(y + ct)`), `right` toward larger ones (`b(y - ct)`).
#[derive(Clone, Debug)]
pub struct WaveProfile {
    pub left: Profile,
    pub right: Profile,
}

impl WaveProfile {
    pub fn new(left: Profile, right: Profile) -> WaveProfile {
        WaveProfile { left, right }
    }

    /// A single right-moving profile.
    pub fn right_mover(profile: Profile) -> WaveProfile {
        WaveProfile {
            left: Profile::Zero,
            right: profile,
        }
    }

    /// A single left-moving profile.
    pub fn left_mover(profile: Profile) -> WaveProfile {
        WaveProfile {
            left: profile,
            right: Profile::Zero,
        }
    }
}

/// One sampled point of a snapshot: arc coordinate, embedded plane point,
/// and field value.
#[derive(Clone, Copy, Debug)]
pub struct Sample {
    pub y: f64,
    pub point: PlanePoint,
    pub phi: f64,
}

/// The field sampled along the curve at a fixed time.
#[derive(Clone, Debug)]
pub struct Snapshot {
    pub t: f64,
    pub samples: Vec<Sample>,
}

/// An energy integral together with its window diagnostics.
#[derive(Clone, Copy, Debug)]
pub struct EnergyEstimate {
    /// The value of the energy integral over the window.
    pub value: f64,
    /// The larger of the two integrand magnitudes at the window edges.
    pub boundary: f64,
    /// Whether the window visibly truncates the support
    /// (`boundary > BOUNDARY_TOLERANCE`).
    pub truncated: bool,
}

/// Anything that can be evaluated on spacetime `(t, y)` and knows its wave
/// speed; implemented by [`WaveField`] and by boosted fields.
pub trait SpacetimeField {
    fn value(&self, t: f64, y: f64) -> Result<f64>;
    fn speed(&self) -> f64;
}

/// A d'Alembert field on the curve, stored in closed form.
#[derive(Clone, Debug)]
pub struct WaveField {
    profile: WaveProfile,
    speed: f64,
    params: KochParams,
}

impl WaveField {
    /// Builds a field with propagation speed `speed > 0` on the curve
    /// described by `params`.
    pub fn new(profile: WaveProfile, speed: f64, params: KochParams) -> Result<WaveField> {
        if !(speed > 0.0) || !speed.is_finite() {
            return Err(Error::domain(format!(
                "wave speed must be positive, got {speed}"
            )));
        }
        Ok(WaveField {
            profile,
            speed,
            params,
        })
    }

    pub fn profile(&self) -> &WaveProfile {
        &self.profile
    }

    pub fn params(&self) -> &KochParams {
        &self.params
    }

    /// `Φ(t, y) = a(y + ct) + b(y - ct)` at an arc coordinate.
    pub fn value_at(&self, t: f64, y: f64) -> Result<f64> {
        if !t.is_finite() || !y.is_finite() {
            return Err(Error::domain(format!(
                "non-finite spacetime point ({t}, {y})"
            )));
        }
        let ct = self.speed * t;
        let v = self.profile.left.value(y + ct)? + self.profile.right.value(y - ct)?;
        if !v.is_finite() {
            return Err(Error::numeric(format!(
                "field is not finite at ({t}, {y})"
            )));
        }
        Ok(v)
    }

    /// The field at an addressed point of the curve.
    pub fn evaluate(&self, t: f64, address: &Address) -> Result<f64> {
        self.value_at(t, address.coordinate())
    }

    /// The spatial slope `∂Φ/∂y = a'(y + ct) + b'(y - ct)`; with the
    /// curve's coordinate chart this is also the charted derivative
    /// `DΦ/Dx`.
    pub fn slope_at(&self, t: f64, y: f64) -> Result<f64> {
        let ct = self.speed * t;
        Ok(self.profile.left.slope(y + ct)? + self.profile.right.slope(y - ct)?)
    }

    /// Samples the field at `samples` evenly spaced coordinates across
    /// `[lo, hi]`, embedding each point at the given geometric depth.
    pub fn snapshot(
        &self,
        t: f64,
        lo: f64,
        hi: f64,
        samples: usize,
        depth: usize,
    ) -> Result<Snapshot> {
        if !lo.is_finite() || !hi.is_finite() || lo > hi {
            return Err(Error::domain(format!("invalid window [{lo}, {hi}]")));
        }
        if samples < 2 {
            return Err(Error::domain(format!(
                "need at least 2 samples, got {samples}"
            )));
        }
        if samples > MAX_SNAPSHOT_SAMPLES {
            return Err(Error::Resource(format!(
                "sample count {samples} exceeds the maximum {MAX_SNAPSHOT_SAMPLES}"
            )));
        }
        let mut out = Vec::with_capacity(samples);
        let span = hi - lo;
        for i in 0..samples {
            let y = if i == samples - 1 {
                hi
            } else {
                lo + span * i as f64 / (samples - 1) as f64
            };
            let address = Address::from_coordinate(y)?;
            let (point, _) = self.params.embed(&address, depth);
            out.push(Sample {
                y,
                point,
                phi: self.value_at(t, y)?,
            });
        }
        Ok(Snapshot { t, samples: out })
    }

    /// The energy integral over `[lo, hi]` at time `t`, evaluated from the
    /// literal definition with the analytic time derivative
    /// `∂Φ/∂t = c a'(y + ct) - c b'(y - ct)`:
    ///
    /// ```text
    /// E = 1/2 ∫ [ (a' - b')² + (a' + b')² ] dy
    /// ```
    pub fn energy(&self, t: f64, lo: f64, hi: f64, panels: usize) -> Result<EnergyEstimate> {
        let ct = self.speed * t;
        let integrand = |y: f64| -> Result<f64> {
            let u = self.profile.left.slope(y + ct)?;
            let v = self.profile.right.slope(y - ct)?;
            let time_part = u - v; // (1/c) ∂Φ/∂t
            let space_part = u + v; // DΦ/Dx
            Ok(0.5 * (time_part * time_part + space_part * space_part))
        };
        let value = quad::simpson(integrand, lo, hi, panels)?;
        let boundary = integrand(lo)?.abs().max(integrand(hi)?.abs());
        Ok(EnergyEstimate {
            value,
            boundary,
            truncated: boundary > BOUNDARY_TOLERANCE,
        })
    }
}

impl SpacetimeField for WaveField {
    fn value(&self, t: f64, y: f64) -> Result<f64> {
        self.value_at(t, y)
    }

    fn speed(&self) -> f64 {
        self.speed
    }
}

/// The wave-equation defect `(1/c²) ∂²Φ/∂t² - ∂²Φ/∂y²` of a field at
/// `(t, y)`, both second derivatives taken as central differences with
/// step `h`. For an exact d'Alembert solution the residual vanishes up to
/// the `O(h²)` truncation of the two stencils.
pub fn pde_residual<F: SpacetimeField + ?Sized>(
    field: &F,
    t: f64,
    y: f64,
    h: f64,
) -> Result<f64> {
    if !(h > 0.0) || !h.is_finite() {
        return Err(Error::domain(format!("step must be positive, got {h}")));
    }
    let center = field.value(t, y)?;
    let c = field.speed();
    let time_second =
        (field.value(t + h, y)? - 2.0 * center + field.value(t - h, y)?) / (h * h);
    let space_second =
        (field.value(t, y + h)? - 2.0 * center + field.value(t, y - h)?) / (h * h);
    let residual = time_second / (c * c) - space_second;
    if !residual.is_finite() {
        return Err(Error::numeric(format!(
            "residual is not finite at ({t}, {y})"
        )));
    }
    Ok(residual)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arithmetic::Arithmetic;
    use crate::calculus::ChartedFunction;

    const SQRT_HALF_PI: f64 = 1.2533141373155003;

    fn gaussian_right(speed: f64) -> WaveField {
        WaveField::new(
            WaveProfile::right_mover(Profile::gaussian(1.0, 0.0).unwrap()),
            speed,
            KochParams::standard(),
        )
        .unwrap()
    }

    #[test]
    fn the_right_mover_translates_rigidly() {
        let field = gaussian_right(1.0);
        assert!((field.value_at(0.0, 0.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((field.value_at(2.0, 2.0).unwrap() - 1.0).abs() < 1e-15);
        for (t, y) in [(0.5, 1.2), (1.0, -0.3), (3.0, 2.0)] {
            let now = field.value_at(t, y).unwrap();
            let later = field.value_at(t + 1.0, y + 1.0).unwrap();
            assert!((now - later).abs() < 1e-15);
        }
    }

    #[test]
    fn the_left_mover_translates_the_other_way() {
        let field = WaveField::new(
            WaveProfile::left_mover(Profile::gaussian(1.0, 0.0).unwrap()),
            1.0,
            KochParams::standard(),
        )
        .unwrap();
        assert!((field.value_at(2.0, -2.0).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn superposition_is_additive() {
        let a = Profile::gaussian(0.7, -1.0).unwrap();
        let b = Profile::sine_packet(3.0, 1.0, 2.0).unwrap();
        let params = KochParams::standard();
        let both = WaveField::new(WaveProfile::new(a.clone(), b.clone()), 1.0, params).unwrap();
        let only_a = WaveField::new(WaveProfile::left_mover(a), 1.0, params).unwrap();
        let only_b = WaveField::new(WaveProfile::right_mover(b), 1.0, params).unwrap();
        for (t, y) in [(0.0, 0.0), (0.7, 1.3), (2.0, -0.4)] {
            let sum = only_a.value_at(t, y).unwrap() + only_b.value_at(t, y).unwrap();
            assert!((both.value_at(t, y).unwrap() - sum).abs() < 1e-12);
        }
    }

    #[test]
    fn snapshots_sample_the_field_on_the_curve() {
        let field = gaussian_right(1.0);
        let snap = field.snapshot(0.5, -1.0, 1.0, 41, 8).unwrap();
        assert_eq!(snap.samples.len(), 41);
        assert_eq!(snap.samples[0].y, -1.0);
        assert_eq!(snap.samples[40].y, 1.0);
        for sample in &snap.samples {
            let direct = field.value_at(0.5, sample.y).unwrap();
            assert_eq!(sample.phi, direct);
        }
        // The embedded points sit on the curve: endpoints of the window
        // at integer coordinates are axis points.
        let ends = field.snapshot(0.0, -1.0, 1.0, 3, 8).unwrap();
        assert_eq!(
            (ends.samples[0].point.re, ends.samples[0].point.im),
            (-1.0, 0.0)
        );
        assert_eq!(
            (ends.samples[2].point.re, ends.samples[2].point.im),
            (1.0, 0.0)
        );
    }

    #[test]
    fn snapshot_guards() {
        let field = gaussian_right(1.0);
        assert!(field.snapshot(0.0, 1.0, -1.0, 10, 4).is_err());
        assert!(field.snapshot(0.0, -1.0, 1.0, 1, 4).is_err());
        assert!(matches!(
            field.snapshot(0.0, -1.0, 1.0, MAX_SNAPSHOT_SAMPLES + 1, 4),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn gaussian_energy_matches_the_closed_form() {
        // ∫ (d/dr e^{-r²})² dr = √(π/2).
        let field = gaussian_right(1.0);
        let estimate = field.energy(0.0, -10.0, 10.0, 4096).unwrap();
        assert!(
            (estimate.value - SQRT_HALF_PI).abs() < 1e-9,
            "got {}",
            estimate.value
        );
        assert!(!estimate.truncated);
    }

    #[test]
    fn energy_is_conserved_in_time() {
        let field = WaveField::new(
            WaveProfile::new(
                Profile::gaussian(0.8, 1.0).unwrap(),
                Profile::sine_packet(2.0, 1.0, -1.0).unwrap(),
            ),
            1.0,
            KochParams::standard(),
        )
        .unwrap();
        let reference = field.energy(0.0, -14.0, 14.0, 8192).unwrap();
        assert!(!reference.truncated);
        for t in [0.5, 1.25, 2.5] {
            let e = field.energy(t, -14.0, 14.0, 8192).unwrap();
            assert!(!e.truncated);
            assert!(
                (e.value - reference.value).abs() < 1e-8 * reference.value,
                "at t={t}: {} vs {}",
                e.value,
                reference.value
            );
        }
    }

    #[test]
    fn vanishing_fields_have_zero_energy() {
        let field = WaveField::new(
            WaveProfile::new(Profile::Zero, Profile::Zero),
            1.0,
            KochParams::standard(),
        )
        .unwrap();
        let e = field.energy(0.0, -5.0, 5.0, 128).unwrap();
        assert_eq!(e.value, 0.0);
        assert!(!e.truncated);
    }

    #[test]
    fn narrow_windows_are_flagged_as_truncated() {
        let field = gaussian_right(1.0);
        let e = field.energy(0.0, -1.0, 1.0, 512).unwrap();
        assert!(e.truncated);
        assert!(e.boundary > BOUNDARY_TOLERANCE);
    }

    #[test]
    fn the_closed_form_satisfies_the_wave_equation() {
        // With c ≠ 1 the two stencils probe genuinely different slices.
        let field = gaussian_right(2.0);
        for (t, y) in [(0.3, 0.5), (1.0, -0.7), (0.0, 0.2)] {
            let r = pde_residual(&field, t, y, 1e-3).unwrap();
            assert!(r.abs() < 5e-4, "residual {r} at ({t}, {y})");
        }
    }

    #[test]
    fn residual_shrinks_at_second_order() {
        let field = gaussian_right(2.0);
        let r1 = pde_residual(&field, 0.3, 0.4, 2e-3).unwrap().abs();
        let r2 = pde_residual(&field, 0.3, 0.4, 1e-3).unwrap().abs();
        let ratio = r1 / r2;
        assert!(
            (3.0..5.0).contains(&ratio),
            "expected ~4x shrink, got {ratio}"
        );
    }

    #[test]
    fn unit_speed_stencils_cancel_exactly() {
        // For c = 1 the time and space stencils of a d'Alembert field
        // coincide term by term, so the residual is zero to rounding.
        let field = gaussian_right(1.0);
        let r = pde_residual(&field, 0.3, 0.4, 1e-3).unwrap();
        assert!(r.abs() < 1e-9, "residual {r}");
    }

    #[test]
    fn charted_spatial_derivative_matches_the_analytic_slope() {
        let field = gaussian_right(1.0);
        let t = 0.4;
        let f = field.clone();
        let section = ChartedFunction::new(Arithmetic::koch(), Arithmetic::identity(), move |y| {
            f.value_at(t, y).unwrap_or(f64::NAN)
        });
        for y in [-0.5, 0.2, 1.1] {
            let charted = section.derivative(y).unwrap();
            let analytic = field.slope_at(t, y).unwrap();
            assert!(
                (charted - analytic).abs() < 1e-6,
                "at {y}: {charted} vs {analytic}"
            );
        }
    }

    #[test]
    fn profiles_parse_and_describe_round_trip() {
        for selector in [
            "zero",
            "gaussian:1.5@0.5",
            "sinepacket:3,1@-2",
            "chirp:0.8@1",
            "sin(x)*exp(-x^2)",
        ] {
            let profile = Profile::parse(selector).unwrap();
            let echoed = Profile::parse(&profile.describe()).unwrap();
            for r in [-1.0, 0.0, 0.7] {
                assert_eq!(profile.value(r).unwrap(), echoed.value(r).unwrap());
            }
        }
        assert!((Profile::parse("gaussian:2").unwrap().value(0.0).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn expression_profile_slopes_match_the_analytic_presets() {
        let expr = Profile::parse("exp(-x^2)").unwrap();
        let preset = Profile::gaussian(1.0, 0.0).unwrap();
        for r in [-1.3, 0.0, 0.4, 2.0] {
            let a = expr.slope(r).unwrap();
            let b = preset.slope(r).unwrap();
            assert!((a - b).abs() < 1e-8, "at {r}: {a} vs {b}");
        }
    }

    #[test]
    fn bad_profiles_and_speeds_are_rejected() {
        assert!(Profile::parse("gaussian:0").is_err());
        assert!(Profile::parse("gaussian:abc").is_err());
        assert!(Profile::parse("sinepacket:3").is_err());
        assert!(Profile::parse("ln(").is_err());
        assert!(WaveField::new(
            WaveProfile::right_mover(Profile::Zero),
            0.0,
            KochParams::standard()
        )
        .is_err());
    }
}
