//! Gaussian rationals `a + b·i` with `a, b ∈ ℚ`.

use alloc::string::String;
use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use core::str::FromStr;

use crate::error::ParseError;
use crate::rational::Rational;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Scalar {
    pub re: Rational,
    pub im: Rational,
}

impl Scalar {
    pub const ZERO: Scalar = Scalar { re: Rational::ZERO, im: Rational::ZERO };
    pub const ONE: Scalar = Scalar { re: Rational::ONE, im: Rational::ZERO };
    pub const I: Scalar = Scalar { re: Rational::ZERO, im: Rational::ONE };

    pub fn new(re: Rational, im: Rational) -> Self {
        Scalar { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Scalar { re, im: Rational::ZERO }
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(Rational::from_int(n))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::real(Rational::new(num, den))
    }

    pub fn gaussian(re: i64, im: i64) -> Self {
        Scalar { re: Rational::from_int(re), im: Rational::from_int(im) }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Scalar {
        Scalar { re: self.re.clone(), im: -&self.im }
    }

    /// `|z|^2`, exact.
    pub fn norm_sqr(&self) -> Rational {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Scalar {
        if self.im.is_zero() {
            return Scalar::real(self.re.recip());
        }
        let n = self.norm_sqr().recip();
        Scalar { re: &self.re * &n, im: -(&self.im * &n) }
    }

    /// The rational value, if the imaginary part vanishes.
    pub fn as_real(&self) -> Option<&Rational> {
        self.im.is_zero().then_some(&self.re)
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.as_real().and_then(Rational::to_i64)
    }

    pub fn scale(&self, r: &Rational) -> Scalar {
        Scalar { re: &self.re * r, im: &self.im * r }
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::real(r)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self.im.is_zero(), rhs.im.is_zero()) {
            (true, true) => Scalar::real(&self.re * &rhs.re),
            (true, false) => rhs.scale(&self.re),
            (false, true) => self.scale(&rhs.re),
            (false, false) => Scalar {
                re: &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
                im: &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
            },
        }
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { re: -&self.re, im: -&self.im }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul, Div::div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl fmt::Display for Scalar {
    /// `"a/b"`, `"c/d*i"` or `"a/b+c/d*i"`; integer components drop the denominator.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if !self.re.is_zero() {
            write!(f, "{}", self.re)?;
            if !self.im.is_negative() {
                f.write_str("+")?;
            }
        }
        write!(f, "{}*i", self.im)
    }
}

fn parse_imag(s: &str) -> Option<Rational> {
    let body = s.strip_suffix('i')?.trim_end();
    let body = body.strip_suffix('*').unwrap_or(body).trim();
    match body {
        "" | "+" => Some(Rational::ONE),
        "-" => Some(-Rational::ONE),
        b => b.strip_prefix('+').unwrap_or(b).parse().ok(),
    }
}

impl FromStr for Scalar {
    type Err = ParseError;

    /// Accepts `"a/b"`, `"c/d*i"`, `"a/b+c/d*i"`, `"a-c*i"`, `"i"`, `"-i"`,
    /// optionally wrapped in parentheses.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let t = t
            .strip_prefix('(')
            .and_then(|x| x.strip_suffix(')'))
            .unwrap_or(t)
            .trim();
        let bad = || ParseError::Scalar(String::from(s));
        if t.is_empty() {
            return Err(bad());
        }
        if !t.ends_with('i') {
            return t.parse::<Rational>().map(Scalar::real).map_err(|_| bad());
        }
        // Split at the last sign that is not leading.
        let split = t
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .last();
        match split {
            Some(i) => {
                let re: Rational = t[..i].parse().map_err(|_| bad())?;
                let im = parse_imag(&t[i..]).ok_or_else(bad)?;
                Ok(Scalar { re, im })
            }
            None => Ok(Scalar { re: Rational::ZERO, im: parse_imag(t).ok_or_else(bad)? }),
        }
    }
}
