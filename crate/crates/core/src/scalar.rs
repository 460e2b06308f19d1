//! Coefficient fields.
//!
//! All of the algebra in this crate is written against [`Scalar`], an exact
//! ordered field. The blanket implementation covers `Ratio<I>` for any signed
//! integer type `I`, so `BigRational` (the default, see [`crate::Rational`]) and
//! the fixed-width `Ratio<i64>` / `Ratio<i128>` all work. Fixed-width rationals
//! are faster but can overflow on large models.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Num, Signed, Zero};

/// An exact ordered field usable as matrix and structure-constant coefficients.
pub trait Scalar: Clone + Debug + Display + PartialEq + PartialOrd + Num + Signed + Send + Sync + 'static {
    fn from_i64(n: i64) -> Self;

    /// Parse `"p"` or `"p/q"`.
    fn parse(s: &str) -> Option<Self>;

    /// A positive factor that makes every entry of `row` integral.
    fn integral_scale(row: &[Self]) -> Self;

    /// `±1` as a scalar.
    fn sign(negative: bool) -> Self {
        if negative {
            -Self::one()
        } else {
            Self::one()
        }
    }
}

impl<I> Scalar for Ratio<I>
where
    I: Integer + Signed + Clone + Debug + Display + FromStr + From<i64> + Send + Sync + 'static,
{
    fn from_i64(n: i64) -> Self {
        Ratio::from_integer(I::from(n))
    }

    fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        let r = match s.split_once('/') {
            Some((n, d)) => {
                let n = n.trim().parse::<I>().ok()?;
                let d = d.trim().parse::<I>().ok()?;
                if d.is_zero() {
                    return None;
                }
                Ratio::new(n, d)
            }
            None => Ratio::from_integer(s.parse::<I>().ok()?),
        };
        Some(r)
    }

    fn integral_scale(row: &[Self]) -> Self {
        let l = row
            .iter()
            .filter(|x| !Zero::is_zero(*x))
            .fold(I::one(), |acc, x| acc.lcm(x.denom()));
        Ratio::from_integer(l)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    #[test]
    fn parse_forms() {
        let half = BigRational::parse("1/2").unwrap();
        assert_eq!(half, BigRational::new(BigInt::from(1), BigInt::from(2)));
        assert_eq!(
            BigRational::parse(" -4 / 6").unwrap(),
            BigRational::parse("-2/3").unwrap()
        );
        assert_eq!(BigRational::parse("7").unwrap(), BigRational::from_i64(7));
        assert!(BigRational::parse("1/0").is_none());
        assert!(BigRational::parse("x").is_none());
    }

    #[test]
    fn lowest_terms_and_positive_denominator() {
        let r = Ratio::<i64>::parse("6/-4").unwrap();
        assert_eq!(*r.numer(), -3);
        assert_eq!(*r.denom(), 2);
        let z = Ratio::<i64>::parse("0/5").unwrap();
        assert_eq!((*z.numer(), *z.denom()), (0, 1));
    }

    #[test]
    fn integral_scale_clears_denominators() {
        let row: Vec<Ratio<i64>> = ["1/2", "2/3", "0", "5"]
            .iter()
            .map(|s| Ratio::parse(s).unwrap())
            .collect();
        let s = Ratio::integral_scale(&row);
        assert_eq!(s, Ratio::from_integer(6));
        assert!(row.iter().all(|x| (x * s).is_integer()));
    }
}
