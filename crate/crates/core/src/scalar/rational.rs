use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{ExactRender, ExactSqrt, Field, FromRational, ImaginaryUnit, Positivity};
use crate::error::{Error, Result};

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// Rational numbers adjoined with `i`.
pub type GaussianRational = Complex<Rational>;

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn gaussian(re: Rational, im: Rational) -> GaussianRational {
    Complex::new(re, im)
}

/// Parses `"a"`, `"-a/b"` (whitespace tolerated).
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational `{text}`")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational `{text}`")))?;
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Rational::new(num, den))
}

impl Field for Rational {
    fn try_inv(&self) -> Result<Self> {
        if self.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }
}

impl FromRational for Rational {
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
}

impl ExactSqrt for Rational {
    fn try_sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = self.numer().sqrt();
        let d = self.denom().sqrt();
        (&n * &n == *self.numer() && &d * &d == *self.denom()).then(|| Rational::new(n, d))
    }
}

impl Positivity for Rational {
    fn is_positive(&self) -> bool {
        Signed::is_positive(self)
    }
}

impl ExactRender for Rational {
    fn render(&self) -> String {
        self.to_string()
    }
}

impl Field for GaussianRational {
    fn try_inv(&self) -> Result<Self> {
        let norm = &self.re * &self.re + &self.im * &self.im;
        if norm.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Complex::new(&self.re / &norm, -&self.im / &norm))
    }
}

impl FromRational for GaussianRational {
    fn from_rational(q: &Rational) -> Self {
        Complex::new(q.clone(), Rational::zero())
    }
}

impl ImaginaryUnit for GaussianRational {
    fn imag_unit() -> Self {
        Complex::new(Rational::zero(), num_traits::One::one())
    }
}

/// `"a/b"`, `"c/d*i"`, or `"a/b+c/d*i"`; zero parts are dropped.
impl ExactRender for GaussianRational {
    fn render(&self) -> String {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => self.re.to_string(),
            (true, false) => format!("{}*i", self.im),
            (false, false) => {
                if self.im.is_negative() {
                    format!("{}-{}*i", self.re, -&self.im)
                } else {
                    format!("{}+{}*i", self.re, self.im)
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;
    use num_traits::One;

    #[test]
    fn rational_addition() {
        assert_eq!(rational(1, 2) + rational(1, 3), rational(5, 6));
    }

    #[test]
    fn imaginary_unit_squares_to_minus_one() {
        let i = GaussianRational::imag_unit();
        assert_eq!(i.clone() * i, -GaussianRational::one());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(Rational::zero().try_inv(), Err(Error::DivisionByZero));
        assert_eq!(GaussianRational::zero().try_inv(), Err(Error::DivisionByZero));
        assert_eq!(parse_rational("1/0"), Err(Error::DivisionByZero));
    }

    #[test]
    fn gaussian_inverse() {
        let z = gaussian(rational(3, 1), rational(-4, 1));
        assert_eq!(z.clone() * z.try_inv().unwrap(), GaussianRational::one());
    }

    #[test]
    fn exact_square_roots() {
        assert_eq!(rational(9, 25).try_sqrt(), Some(rational(3, 5)));
        assert_eq!(rational(2, 1).try_sqrt(), None);
        assert_eq!(rational(-4, 1).try_sqrt(), None);
    }

    #[test]
    fn render_forms() {
        assert_eq!(rational(-3, 6).render(), "-1/2");
        assert_eq!(gaussian(rational(1, 2), rational(-2, 3)).render(), "1/2-2/3*i");
        assert_eq!(gaussian(rational(0, 1), rational(1, 1)).render(), "1*i");
        assert_eq!(GaussianRational::from_rational(&int(4)).render(), "4");
    }

    #[test]
    fn parse_round_trip() {
        assert_eq!(parse_rational(" -6/4 ").unwrap(), rational(-3, 2));
        assert_eq!(parse_rational("7").unwrap(), rational(7, 1));
        assert!(parse_rational("x/2").is_err());
    }
}
