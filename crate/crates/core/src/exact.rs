//! Exact integer and rational helpers shared by the combinatorial modules.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Exact rational number.
pub type Rational = Ratio<i128>;

pub fn rat(n: i128) -> Rational {
    Rational::from_integer(n)
}

/// Divides by the gcd of the entries; the zero vector is returned unchanged.
pub fn primitive(v: &[i128]) -> Vec<i128> {
    let g = v.iter().fold(0i128, |g, &x| g.gcd(&x));
    if g == 0 {
        v.to_vec()
    } else {
        v.iter().map(|x| x / g).collect()
    }
}

/// Scales a rational vector to the primitive integer vector with the same direction.
pub fn clear_denominators(v: &[Rational]) -> Result<Vec<i128>> {
    let l = v.iter().try_fold(1i128, |l, x| {
        let d = *x.denom();
        l.checked_mul(d / l.gcd(&d)).ok_or(Error::Overflow)
    })?;
    let ints: Result<Vec<i128>> = v
        .iter()
        .map(|x| x.numer().checked_mul(l / x.denom()).ok_or(Error::Overflow))
        .collect();
    Ok(primitive(&ints?))
}

/// Parses `p/q` or an integer.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let q: i128 = q.trim().parse().ok()?;
            let p: i128 = p.trim().parse().ok()?;
            (!q.is_zero()).then(|| Rational::new(p, q))
        }
        None => s.parse().ok().map(rat),
    }
}

/// Formats as `p/q`, or `p` for integers.
pub fn format_rational(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// `Σ aᵢbᵢ` with overflow detection.
pub fn dot(a: &[i128], b: &[i128]) -> Result<i128> {
    a.iter().zip(b).try_fold(0i128, |acc, (x, y)| {
        x.checked_mul(*y).and_then(|p| acc.checked_add(p)).ok_or(Error::Overflow)
    })
}

/// Sign of an integer as -1, 0 or 1.
pub fn sign(x: i128) -> i8 {
    x.signum() as i8
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn helpers() {
        assert_eq!(primitive(&[4, -6, 0]), vec![2, -3, 0]);
        assert_eq!(clear_denominators(&[Rational::new(1, 2), Rational::new(-1, 3)]).unwrap(), vec![3, -2]);
        assert_eq!(parse_rational("3/6"), Some(Rational::new(1, 2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(format_rational(&Rational::new(-2, 4)), "-1/2");
        assert_eq!(format_rational(&rat(7)), "7");
        assert_eq!(dot(&[i128::MAX, 1], &[2, 0]), Err(Error::Overflow));
    }
}
