//! Exact rational helpers.

use alloc::string::String;
use core::fmt::Write;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Exact rational number used throughout the crate.
pub type Q = num_rational::Ratio<i128>;

pub fn q(n: i128) -> Q {
    Q::from_integer(n)
}

pub fn qr(n: i128, d: i128) -> Q {
    Q::new(n, d)
}

pub fn floor(x: &Q) -> i128 {
    Integer::div_floor(x.numer(), x.denom())
}

pub fn ceil(x: &Q) -> i128 {
    -Integer::div_floor(&-x.numer(), x.denom())
}

/// Fractional part `{x} = x - floor(x)`, in `[0,1)`.
pub fn frac(x: &Q) -> Q {
    x - q(floor(x))
}

/// The sawtooth `((x))`: `{x} - 1/2` off the integers, `0` on them.
pub fn sawtooth(x: &Q) -> Q {
    if x.is_integer() {
        Q::zero()
    } else {
        frac(x) - qr(1, 2)
    }
}

/// Integer value of an integral rational, `None` otherwise.
pub fn to_int(x: &Q) -> Option<i128> {
    if x.is_integer() {
        Some(*x.numer())
    } else {
        None
    }
}

/// `"p/q"`, or `"p"` when the denominator is one.
pub fn fmt_q(x: &Q) -> String {
    let mut s = String::new();
    if x.denom().is_one() {
        let _ = write!(s, "{}", x.numer());
    } else {
        let _ = write!(s, "{}/{}", x.numer(), x.denom());
    }
    s
}

pub fn gcd(a: i128, b: i128) -> i128 {
    a.gcd(&b)
}

pub fn lcm(a: i128, b: i128) -> i128 {
    a.lcm(&b)
}

pub fn abs(x: &Q) -> Q {
    x.abs()
}

/// Inverse of `a` modulo `m` (in `[0,m)`), if it exists.
pub fn inv_mod(a: i128, m: i128) -> Option<i128> {
    if m == 1 {
        return Some(0);
    }
    let e = a.extended_gcd(&m);
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floor_ceil_frac() {
        assert_eq!(floor(&qr(-7, 2)), -4);
        assert_eq!(ceil(&qr(-7, 2)), -3);
        assert_eq!(ceil(&qr(3, 2)), 2);
        assert_eq!(frac(&qr(-1, 3)), qr(2, 3));
        assert_eq!(sawtooth(&q(4)), Q::zero());
        assert_eq!(sawtooth(&qr(1, 4)), qr(-1, 4));
    }

    #[test]
    fn modular_inverse() {
        assert_eq!(inv_mod(3, 7), Some(5));
        assert_eq!(inv_mod(2, 4), None);
        assert_eq!(inv_mod(5, 1), Some(0));
    }
}
