//! The target value theta: an exact rational, or a real algebraic number
//! given by its irreducible integer minimal polynomial plus an isolating
//! rational interval.

use num::Zero;
use serde::{Deserialize, Serialize};
use std::fmt;

use super::poly::Polynomial;
use super::rational::{format_rational, parse_rational, rat, serde_rational, to_f64, Rational};
use crate::error::Error;

#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ThetaSpec {
    Rational {
        #[serde(with = "serde_rational")]
        value: Rational,
    },
    Algebraic {
        /// Irreducible, content-free integer coefficients, ascending.
        minpoly: Vec<String>,
        /// Open rational interval isolating exactly one real root.
        lo: String,
        hi: String,
    },
}

impl ThetaSpec {
    pub fn rational(value: Rational) -> Self {
        ThetaSpec::Rational { value }
    }

    pub fn from_int(n: i64) -> Self {
        ThetaSpec::rational(rat(n))
    }

    /// Build and validate an algebraic theta.
    pub fn algebraic(minpoly: Polynomial, lo: Rational, hi: Rational) -> Result<Self, Error> {
        let spec = ThetaSpec::Algebraic {
            minpoly: minpoly
                .coeffs()
                .iter()
                .map(format_rational)
                .collect(),
            lo: format_rational(&lo),
            hi: format_rational(&hi),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn minpoly(&self) -> Polynomial {
        match self {
            ThetaSpec::Rational { value } => Polynomial::x_minus(value),
            ThetaSpec::Algebraic { minpoly, .. } => Polynomial::from_coeffs(
                minpoly
                    .iter()
                    .map(|s| parse_rational(s).expect("validated"))
                    .collect(),
            ),
        }
    }

    pub fn interval(&self) -> Option<(Rational, Rational)> {
        match self {
            ThetaSpec::Rational { .. } => None,
            ThetaSpec::Algebraic { lo, hi, .. } => Some((
                parse_rational(lo).expect("validated"),
                parse_rational(hi).expect("validated"),
            )),
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            ThetaSpec::Rational { value } => Some(value),
            ThetaSpec::Algebraic { .. } => None,
        }
    }

    pub fn validate(&self) -> Result<(), Error> {
        match self {
            ThetaSpec::Rational { .. } => Ok(()),
            ThetaSpec::Algebraic { minpoly, lo, hi } => {
                let coeffs: Result<Vec<Rational>, Error> =
                    minpoly.iter().map(|s| parse_rational(s)).collect();
                let p = Polynomial::from_coeffs(coeffs?);
                let lo = parse_rational(lo)?;
                let hi = parse_rational(hi)?;
                if p.degree() < 2 {
                    return Err(Error::Parse(
                        "algebraic theta needs a minimal polynomial of degree >= 2 \
                         (use a plain rational otherwise)"
                            .into(),
                    ));
                }
                if !p.has_integer_coeffs() {
                    return Err(Error::Parse("minimal polynomial must have integer coefficients".into()));
                }
                if p != p.primitive_integer() && p.scale(&rat(-1)) != p.primitive_integer() {
                    return Err(Error::Parse("minimal polynomial must be content-free".into()));
                }
                if !p.irreducible()? {
                    return Err(Error::Parse("minimal polynomial must be irreducible over the rationals".into()));
                }
                if lo >= hi {
                    return Err(Error::Parse("isolating interval must satisfy lo < hi".into()));
                }
                if p.eval(&lo).is_zero() || p.eval(&hi).is_zero() {
                    return Err(Error::EndpointIsRoot);
                }
                match p.root_count_in_interval(&lo, &hi)? {
                    1 => Ok(()),
                    n => Err(Error::Parse(format!(
                        "interval must isolate exactly one real root, found {n}"
                    ))),
                }
            }
        }
    }

    /// Multiplicity of theta as a root of p. For algebraic theta this is the
    /// multiplicity of the (irreducible) minimal polynomial as a factor,
    /// which is valid because p has rational coefficients.
    pub fn multiplicity_in(&self, p: &Polynomial) -> Result<usize, Error> {
        match self {
            ThetaSpec::Rational { value } => p.multiplicity_at_rational(value),
            ThetaSpec::Algebraic { .. } => p.factor_multiplicity(&self.minpoly()),
        }
    }

    /// Floating approximation (bisection on the isolating interval for the
    /// algebraic case).
    pub fn approx_f64(&self) -> f64 {
        match self {
            ThetaSpec::Rational { value } => to_f64(value),
            ThetaSpec::Algebraic { .. } => {
                let p = self.minpoly();
                let (mut lo, mut hi) = self.interval().unwrap();
                for _ in 0..80 {
                    let mid = (&lo + &hi) / rat(2);
                    if p.eval(&mid).is_zero() {
                        return to_f64(&mid);
                    }
                    if p.root_count_in_interval(&lo, &mid).unwrap_or(0) == 1 {
                        hi = mid;
                    } else {
                        lo = mid;
                    }
                    if to_f64(&hi) - to_f64(&lo) < 1e-15 {
                        break;
                    }
                }
                (to_f64(&lo) + to_f64(&hi)) / 2.0
            }
        }
    }

    /// Parse `"p/q"` or `"minpoly:c0,c1,...:lo,hi"` (ascending coefficients).
    pub fn parse(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("minpoly:") {
            let parts: Vec<&str> = rest.split(':').collect();
            if parts.len() != 2 {
                return Err(Error::Parse(format!(
                    "expected minpoly:c0,c1,...:lo,hi — got {s:?}"
                )));
            }
            let coeffs: Result<Vec<Rational>, Error> =
                parts[0].split(',').map(parse_rational).collect();
            let iv: Vec<&str> = parts[1].split(',').collect();
            if iv.len() != 2 {
                return Err(Error::Parse("interval must be lo,hi".into()));
            }
            let p = Polynomial::from_coeffs(coeffs?);
            if p.degree() == 1 {
                // linear minimal polynomial is just a rational
                let root = -p.coeff(0) / p.coeff(1);
                return Ok(ThetaSpec::rational(root));
            }
            ThetaSpec::algebraic(p, parse_rational(iv[0])?, parse_rational(iv[1])?)
        } else {
            Ok(ThetaSpec::rational(parse_rational(s)?))
        }
    }
}

impl fmt::Display for ThetaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ThetaSpec::Rational { value } => write!(f, "{}", format_rational(value)),
            ThetaSpec::Algebraic { minpoly, lo, hi } => {
                write!(f, "minpoly:{}:{},{}", minpoly.join(","), lo, hi)
            }
        }
    }
}

impl fmt::Debug for ThetaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::ratio;

    #[test]
    fn algebraic_multiplicity() {
        // sqrt(2) in x^3 - 2x = x (x^2 - 2)
        let theta = ThetaSpec::parse("minpoly:-2,0,1:1,2").unwrap();
        let p = Polynomial::from_int_coeffs(&[0, -2, 0, 1]);
        assert_eq!(theta.multiplicity_in(&p).unwrap(), 1);
        assert!((theta.approx_f64() - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn rational_parse() {
        let t = ThetaSpec::parse("-3/2").unwrap();
        assert_eq!(t.as_rational(), Some(&ratio(-3, 2)));
        // degree-1 minpoly collapses to a rational
        let u = ThetaSpec::parse("minpoly:3,2:0,0").unwrap();
        assert_eq!(u.as_rational(), Some(&ratio(-3, 2)));
    }

    #[test]
    fn validation_rejects_bad_specs() {
        // reducible
        assert!(ThetaSpec::parse("minpoly:-1,0,1:0,2").is_err());
        // interval with both roots
        assert!(ThetaSpec::parse("minpoly:-2,0,1:-2,2").is_err());
        // endpoint is a root
        assert!(ThetaSpec::parse("minpoly:-4,0,1:2,3").is_err());
    }
}
