//! Koch-type fractal curves addressed by base-4 expansions.
//!
//! A one-parameter family of curves is generated from the unit segment by
//! four contracting similarity maps of the plane (identifying it with the
//! complex numbers). With `a = e^{iα}` and contraction ratio
//! `L = 1 / (2 + 2 cos α)` the maps are
//!
//! ```text
//! m₀(z) = L z                  m₁(z) = L (1 + a z)
//! m₂(z) = L (1 + a + ā z)      m₃(z) = L (1 + 2 cos α + z)
//! ```
//!
//! whose fixed attractor has Hausdorff dimension
//! `D = log 4 / log(2 + 2 cos α)`. Every point of the curve over the unit
//! cell carries a base-4 *address* `0.q₁q₂q₃…`: the embedding of an address
//! is the limit of `m_{q₁} ∘ m_{q₂} ∘ … ∘ m_{q_n}(0)`. Integer shifts
//! extend the picture periodically, so a full address is an integer cell
//! plus a fractional digit string, and the real number it spells doubles
//! as the curve's arc coordinate.
//!
//! `α = π/3` reproduces the classical snowflake edge (`L = 1/3`,
//! `D = log 4 / log 3`); `α = 0` flattens the curve onto the segment
//! (`D = 1`); `α = π/2` makes it plane-filling (`D = 2`).

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Number of fractional digits kept when an address is built from a plain
/// real coordinate: 4^26 = 2^52 resolves distinct f64 fractions.
pub const DEFAULT_DIGITS: usize = 26;

/// Polylines are capped at `4^MAX_POLYLINE_DEPTH + 1` vertices.
pub const MAX_POLYLINE_DEPTH: usize = 11;

/// Coordinates above this magnitude cannot index an integer cell exactly.
const MAX_COORDINATE: f64 = 4.5e15;

/// A point of the plane the curve is embedded in.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlanePoint {
    pub re: f64,
    pub im: f64,
}

impl PlanePoint {
    pub fn new(re: f64, im: f64) -> PlanePoint {
        PlanePoint { re, im }
    }

    /// Euclidean distance to another point.
    pub fn distance(&self, other: PlanePoint) -> f64 {
        (self.re - other.re).hypot(self.im - other.im)
    }
}

impl From<Complex64> for PlanePoint {
    fn from(z: Complex64) -> PlanePoint {
        PlanePoint { re: z.re, im: z.im }
    }
}

impl From<PlanePoint> for Complex64 {
    fn from(p: PlanePoint) -> Complex64 {
        Complex64::new(p.re, p.im)
    }
}

/// The integer cell and fractional base-4 digits of an address.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AddressDigits {
    /// Integer part (the periodic cell index), `floor` of the coordinate.
    pub cell: i64,
    /// Fractional digits, each in `0..4`, most significant first, with no
    /// trailing zeros.
    pub frac: Vec<u8>,
}

/// A point on the curve named by its arc coordinate, optionally with an
/// exact base-4 digit expansion.
///
/// Addresses parse from two textual forms: a plain decimal (`"0.25"`), or a
/// base-4 literal with the `_4` suffix (`"0.1_4"`, integer digits also in
/// base 4). Digit strings are canonical: terminating expansions are used
/// and trailing zeros stripped, so `0.1_4` and `0.100_4` are the same
/// address.
#[derive(Clone, Debug, PartialEq)]
pub struct Address {
    coordinate: f64,
    digits: Option<AddressDigits>,
}

impl Address {
    /// Wraps a plain coordinate; digits are derived lazily when needed.
    pub fn from_coordinate(coordinate: f64) -> Result<Address> {
        if !coordinate.is_finite() || coordinate.abs() > MAX_COORDINATE {
            return Err(Error::domain(format!(
                "address coordinate {coordinate} is not a finite cell-resolvable number"
            )));
        }
        Ok(Address {
            coordinate,
            digits: None,
        })
    }

    /// Builds an address from an explicit cell and digit string.
    pub fn from_digits(cell: i64, frac: Vec<u8>) -> Result<Address> {
        if cell.unsigned_abs() > MAX_COORDINATE as u64 {
            return Err(Error::domain(format!(
                "cell index {cell} is not exactly representable"
            )));
        }
        if let Some(&bad) = frac.iter().find(|&&d| d > 3) {
            return Err(Error::domain(format!(
                "base-4 digit out of range: {bad}"
            )));
        }
        let mut frac = frac;
        while frac.last() == Some(&0) {
            frac.pop();
        }
        // Fold from the least significant digit so the coordinate is the
        // correctly rounded value of the expansion.
        let mut fraction = 0.0_f64;
        for &d in frac.iter().rev() {
            fraction = (fraction + d as f64) / 4.0;
        }
        Ok(Address {
            coordinate: cell as f64 + fraction,
            digits: Some(AddressDigits { cell, frac }),
        })
    }

    /// Parses a decimal or `_4`-suffixed base-4 literal.
    pub fn parse(text: &str) -> Result<Address> {
        let text = text.trim();
        if let Some(body) = text.strip_suffix("_4") {
            return Self::parse_base4(body);
        }
        let coordinate: f64 = text.parse().map_err(|_| Error::Parse {
            offset: 0,
            message: format!("malformed address '{text}'"),
        })?;
        let address = Address::from_coordinate(coordinate)?;
        // Materialize the canonical digits up front so parsed addresses
        // always expose an expansion.
        let (cell, frac) = address.digits_to(DEFAULT_DIGITS);
        Ok(Address {
            coordinate,
            digits: Some(AddressDigits { cell, frac }),
        })
    }

    fn parse_base4(body: &str) -> Result<Address> {
        let (negative, body) = match body.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, body),
        };
        let (int_text, frac_text) = match body.split_once('.') {
            Some((i, f)) => (i, f),
            None => (body, ""),
        };
        if int_text.is_empty() && frac_text.is_empty() {
            return Err(Error::Parse {
                offset: 0,
                message: "empty base-4 literal".to_string(),
            });
        }
        let digit = |c: char, offset: usize| -> Result<u8> {
            match c {
                '0'..='3' => Ok(c as u8 - b'0'),
                _ => Err(Error::Parse {
                    offset,
                    message: format!("invalid base-4 digit '{c}'"),
                }),
            }
        };
        let mut int_part: i64 = 0;
        for (i, c) in int_text.char_indices() {
            let d = digit(c, i)?;
            int_part = int_part
                .checked_mul(4)
                .and_then(|v| v.checked_add(d as i64))
                .ok_or_else(|| Error::Parse {
                    offset: i,
                    message: "base-4 integer part overflows".to_string(),
                })?;
        }
        let offset_base = int_text.len() + 1;
        let mut frac = Vec::with_capacity(frac_text.len());
        for (i, c) in frac_text.char_indices() {
            frac.push(digit(c, offset_base + i)?);
        }
        while frac.last() == Some(&0) {
            frac.pop();
        }
        if !negative {
            return Address::from_digits(int_part, frac);
        }
        // Negative literals: -(I + 0.q₁…q_m) re-expands canonically as cell
        // -I - 1 with the complemented digits (4's complement on the last
        // nonzero digit), or cell -I when the fraction is empty.
        if frac.is_empty() {
            return Address::from_digits(-int_part, frac);
        }
        let last = frac.len() - 1;
        let complemented: Vec<u8> = frac
            .iter()
            .enumerate()
            .map(|(i, &d)| if i == last { 4 - d } else { 3 - d })
            .collect();
        Address::from_digits(-int_part - 1, complemented)
    }

    /// The real arc coordinate the address spells.
    pub fn coordinate(&self) -> f64 {
        self.coordinate
    }

    /// The stored digit expansion, if one was supplied or parsed.
    pub fn digits(&self) -> Option<&AddressDigits> {
        self.digits.as_ref()
    }

    /// The cell and the first `depth` fractional digits, deriving them from
    /// the coordinate when no expansion is stored. Stored digits shorter
    /// than `depth` are returned as-is (the expansion terminates).
    pub fn digits_to(&self, depth: usize) -> (i64, Vec<u8>) {
        if let Some(stored) = &self.digits {
            let take = stored.frac.len().min(depth);
            return (stored.cell, stored.frac[..take].to_vec());
        }
        let cell = self.coordinate.floor();
        // Repeated multiply-by-4 is exact for f64 inputs: the scaling never
        // rounds and the digit subtraction is exact.
        let mut fraction = self.coordinate - cell;
        let mut frac = Vec::with_capacity(depth);
        for _ in 0..depth {
            if fraction == 0.0 {
                break;
            }
            fraction *= 4.0;
            let d = fraction.floor();
            frac.push(d as u8);
            fraction -= d;
        }
        while frac.last() == Some(&0) {
            frac.pop();
        }
        (cell as i64, frac)
    }
}

/// The similarity system of one curve of the family.
#[derive(Clone, Copy, Debug)]
pub struct KochParams {
    alpha: f64,
    contraction: f64,
    rotation: Complex64,
    two_cos: f64,
}

impl KochParams {
    /// Builds the system for bending angle `alpha`, which must lie in
    /// `[0, π/2]`.
    pub fn new(alpha: f64) -> Result<KochParams> {
        if !alpha.is_finite() || !(0.0..=std::f64::consts::FRAC_PI_2).contains(&alpha) {
            return Err(Error::domain(format!(
                "bending angle {alpha} outside [0, π/2]"
            )));
        }
        let two_cos = 2.0 * alpha.cos();
        Ok(KochParams {
            alpha,
            contraction: 1.0 / (2.0 + two_cos),
            rotation: Complex64::from_polar(1.0, alpha),
            two_cos,
        })
    }

    /// The classical snowflake-edge parameters, `alpha = π/3`.
    pub fn standard() -> KochParams {
        KochParams::new(std::f64::consts::FRAC_PI_3).expect("π/3 is a valid bending angle")
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// The contraction ratio `L = 1 / (2 + 2 cos α)`.
    pub fn contraction(&self) -> f64 {
        self.contraction
    }

    /// The rotation factor `a = e^{iα}`.
    pub fn rotation(&self) -> Complex64 {
        self.rotation
    }

    /// The similarity dimension `log 4 / log(2 + 2 cos α)`.
    pub fn dimension(&self) -> f64 {
        dimension(self.alpha).expect("angle was validated on construction")
    }

    fn apply(&self, digit: u8, z: Complex64) -> Complex64 {
        let l = self.contraction;
        match digit {
            0 => l * z,
            1 => l * (1.0 + self.rotation * z),
            2 => l * (1.0 + self.rotation + self.rotation.conj() * z),
            3 => l * (1.0 + self.two_cos + z),
            _ => unreachable!("base-4 digits are 0..4"),
        }
    }

    /// Applies one similarity map to a point; `digit` must be in `0..4`.
    pub fn ifs_map(&self, digit: u8, z: PlanePoint) -> PlanePoint {
        assert!(digit < 4, "base-4 digit out of range: {digit}");
        self.apply(digit, z.into()).into()
    }

    /// Embeds an address into the plane using its first `depth` fractional
    /// digits, returning the point together with a rigorous error bound
    /// `2 L^depth` (twice the diameter bound of a depth-`depth` cell).
    /// Addresses whose expansion terminates within `depth` digits are
    /// embedded exactly (bound notwithstanding).
    pub fn embed(&self, address: &Address, depth: usize) -> (PlanePoint, f64) {
        let (cell, frac) = address.digits_to(depth);
        let mut z = Complex64::new(0.0, 0.0);
        for &q in frac.iter().rev() {
            z = self.apply(q, z);
        }
        z.re += cell as f64;
        (z.into(), 2.0 * self.contraction.powi(depth as i32))
    }

    /// The depth-`depth` polyline approximant of the curve over one cell:
    /// the `4^depth + 1` corner points in address order.
    pub fn polyline(&self, depth: usize, cell: i64) -> Result<Vec<PlanePoint>> {
        if depth > MAX_POLYLINE_DEPTH {
            return Err(Error::Resource(format!(
                "polyline depth {depth} exceeds the maximum {MAX_POLYLINE_DEPTH}"
            )));
        }
        let count = 1_usize << (2 * depth);
        let mut points = Vec::with_capacity(count + 1);
        let mut digits = vec![0_u8; depth];
        for index in 0..count {
            for (pos, slot) in digits.iter_mut().enumerate() {
                *slot = ((index >> (2 * (depth - 1 - pos))) & 3) as u8;
            }
            let address = Address::from_digits(cell, digits.clone())?;
            points.push(self.embed(&address, depth).0);
        }
        let end = Address::from_digits(cell + 1, Vec::new())?;
        points.push(self.embed(&end, depth).0);
        Ok(points)
    }
}

/// The similarity dimension `log 4 / log(2 + 2 cos α)` as a function of the
/// bending angle.
pub fn dimension(alpha: f64) -> Result<f64> {
    if !alpha.is_finite() || !(0.0..=std::f64::consts::FRAC_PI_2).contains(&alpha) {
        return Err(Error::domain(format!(
            "bending angle {alpha} outside [0, π/2]"
        )));
    }
    Ok(4.0_f64.ln() / (2.0 + 2.0 * alpha.cos()).ln())
}
