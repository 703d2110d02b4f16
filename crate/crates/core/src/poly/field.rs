//! Coefficient fields: the rationals and small prime fields.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::PolyError;
use crate::rational::Rational;

/// Coefficient field. Elements of `F_p` are stored as integers in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Rationals,
    Prime(u32),
}

impl Field {
    /// `F_p` for a prime `p < 2^16`, or `Q` for characteristic zero.
    pub fn with_characteristic(p: u32) -> Result<Field, PolyError> {
        if p == 0 {
            return Ok(Field::Rationals);
        }
        let prime = p >= 2 && p < (1 << 16) && (2..).take_while(|k| k * k <= p).all(|k| p % k != 0);
        if prime {
            Ok(Field::Prime(p))
        } else {
            Err(PolyError::BadCharacteristic(p))
        }
    }

    pub fn characteristic(self) -> u32 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => p,
        }
    }

    /// Image of a rational number, failing when its denominator vanishes mod p.
    pub fn element(self, c: &Rational) -> Result<Rational, PolyError> {
        match self {
            Field::Rationals => Ok(c.clone()),
            Field::Prime(p) => {
                let p = BigInt::from(p);
                let num = c.numer().mod_floor(&p);
                let den = c.denom().mod_floor(&p);
                if den.is_zero() {
                    return Err(PolyError::NotInvertible(crate::rational::format_rational(c)));
                }
                Ok(Rational::from_integer((num * inverse_mod(&den, &p)).mod_floor(&p)))
            }
        }
    }

    /// Reduction of a value already known to be integral in `F_p`.
    pub(crate) fn normalize(self, c: Rational) -> Rational {
        match self {
            Field::Rationals => c,
            Field::Prime(p) => Rational::from_integer(c.to_integer().mod_floor(&BigInt::from(p))),
        }
    }

    pub(crate) fn inverse(self, c: &Rational) -> Option<Rational> {
        if c.is_zero() {
            return None;
        }
        match self {
            Field::Rationals => Some(c.recip()),
            Field::Prime(p) => {
                let p = BigInt::from(p);
                Some(Rational::from_integer(inverse_mod(&c.to_integer().mod_floor(&p), &p)))
            }
        }
    }
}

fn inverse_mod(a: &BigInt, p: &BigInt) -> BigInt {
    let e = a.extended_gcd(p);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn prime_fields() {
        assert_eq!(Field::with_characteristic(2).unwrap(), Field::Prime(2));
        assert_eq!(Field::with_characteristic(0).unwrap(), Field::Rationals);
        assert!(Field::with_characteristic(4).is_err());
        assert!(Field::with_characteristic(65537).is_err());
        let f7 = Field::Prime(7);
        assert_eq!(f7.element(&ratio(1, 3)).unwrap(), int(5));
        assert_eq!(f7.element(&int(-1)).unwrap(), int(6));
        assert!(f7.element(&ratio(1, 7)).is_err());
        assert_eq!(f7.inverse(&int(3)).unwrap(), int(5));
    }
}
