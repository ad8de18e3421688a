//! Certified rational enclosures of pi and ceilings of square roots.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Default starting precision in bits.
pub const DEFAULT_PRECISION_BITS: u32 = 64;
/// Hard cap on precision escalation.
pub const MAX_PRECISION_BITS: u32 = 1024;
/// Environment variable overriding the starting precision.
pub const PRECISION_ENV: &str = "SHADOWCALC_PRECISION_BITS";

/// Starting precision, honoring `SHADOWCALC_PRECISION_BITS` when it parses.
pub fn start_bits() -> u32 {
    std::env::var(PRECISION_ENV)
        .ok()
        .and_then(|s| s.trim().parse::<u32>().ok())
        .map(|b| b.clamp(8, MAX_PRECISION_BITS))
        .unwrap_or(DEFAULT_PRECISION_BITS)
}

/// Closed rational interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Interval {
    pub fn point(x: BigRational) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// Product of two intervals with nonnegative endpoints.
    pub fn mul_pos(&self, other: &Interval) -> Interval {
        debug_assert!(!self.lo.is_negative() && !other.lo.is_negative());
        Interval { lo: &self.lo * &other.lo, hi: &self.hi * &other.hi }
    }

    pub fn scale(&self, k: &BigRational) -> Interval {
        if k.is_negative() {
            Interval { lo: &self.hi * k, hi: &self.lo * k }
        } else {
            Interval { lo: &self.lo * k, hi: &self.hi * k }
        }
    }

    pub fn shift(&self, k: &BigRational) -> Interval {
        Interval { lo: &self.lo + k, hi: &self.hi + k }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Fixed-point arctan(1/x) scaled by 2^w, with the number of series terms used.
/// Each term is truncated toward zero, so the error is at most `terms + 1` ulps.
fn arctan_inv(x: u32, w: u32) -> (BigInt, u64) {
    let one = BigInt::one() << w;
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut power = &one / &x;
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * k + 1);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &x2;
        k += 1;
    }
    (sum, k)
}

/// Rational interval containing pi, of width at most about 2^-bits.
pub fn pi_interval(bits: u32) -> Interval {
    let w = bits + 24;
    let (a, na) = arctan_inv(5, w);
    let (b, nb) = arctan_inv(239, w);
    let centre = BigInt::from(16) * a - BigInt::from(4) * b;
    let err = BigInt::from(16 * (na + 1) + 4 * (nb + 1));
    let den = BigInt::one() << w;
    Interval {
        lo: BigRational::new(&centre - &err, den.clone()),
        hi: BigRational::new(&centre + &err, den),
    }
}

/// Interval for pi^2.
pub fn pi_sq_interval(bits: u32) -> Interval {
    let p = pi_interval(bits);
    p.mul_pos(&p)
}

fn floor_rat(x: &BigRational) -> BigInt {
    x.floor().to_integer()
}

/// Certified `ceil(offset + sqrt(x))` for `x` known to lie in `xs` (with `xs.lo > 0`).
/// Returns `None` when the enclosure is too wide to decide.
pub fn ceil_offset_sqrt(offset: &BigRational, xs: &Interval) -> Option<BigInt> {
    if !xs.lo.is_positive() {
        return None;
    }
    let t = floor_rat(&xs.hi).sqrt();
    let base = floor_rat(&(offset + BigRational::from_integer(t)));
    for d in -2..=3 {
        let c = &base + BigInt::from(d);
        let cr = BigRational::from_integer(c.clone());
        let top = &cr - offset;
        if top.is_negative() || xs.hi > &top * &top {
            continue;
        }
        let below = &top - BigRational::one();
        if below.is_negative() || &below * &below < xs.lo {
            return Some(c);
        }
    }
    None
}

/// Runs `attempt` at increasing precision until it returns a decision.
pub fn escalate<T>(what: &str, mut attempt: impl FnMut(u32) -> Option<T>) -> Result<T> {
    let mut bits = start_bits();
    loop {
        if let Some(v) = attempt(bits) {
            return Ok(v);
        }
        if bits >= MAX_PRECISION_BITS {
            return Err(Error::PrecisionExhausted { what: what.to_string(), bits });
        }
        bits = (bits * 2).min(MAX_PRECISION_BITS);
    }
}

/// Enclosure of `4*pi^2*n - c` for rational `c`.
pub fn four_pi_sq_n_minus(n: u64, c: &BigRational, bits: u32) -> Interval {
    pi_sq_interval(bits)
        .scale(&rat(4 * n as i64))
        .shift(&-c.clone())
}

/// Certified `ceil(offset + sqrt(4 pi^2 n - c))`.
pub fn ceil_sqrt_4pi2n(n: u64, c: &BigRational, offset: &BigRational) -> Result<BigInt> {
    escalate("ceiling of sqrt(4 pi^2 n - c)", |bits| {
        ceil_offset_sqrt(offset, &four_pi_sq_n_minus(n, c, bits))
    })
}

/// Decides `value > k * pi^2` exactly for integer `value` and positive integer `k`.
pub fn exceeds_multiple_of_pi_sq(value: &BigInt, k: u64) -> Result<bool> {
    let v = BigRational::from_integer(value.clone());
    let kr = rat(k as i64);
    escalate("comparison against a multiple of pi^2", |bits| {
        let s = pi_sq_interval(bits).scale(&kr);
        if v > s.hi {
            Some(true)
        } else if v < s.lo {
            Some(false)
        } else {
            None
        }
    })
}

/// Rational to f64 for display only.
pub fn to_f64(x: &BigRational) -> f64 {
    let scale = BigInt::one() << 80u32;
    let q = (x * BigRational::from_integer(scale.clone())).round().to_integer();
    let qf: f64 = q.to_string().parse().unwrap_or(f64::NAN);
    qf / 2f64.powi(80)
}

/// Formats `x` with `digits` significant digits, in positional notation for moderate magnitudes.
pub fn format_sig(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let exp: i32 = sci.rsplit_once('e').and_then(|(_, e)| e.parse().ok()).unwrap_or(0);
    if !(-5..16).contains(&exp) {
        return sci;
    }
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    let rounded: f64 = sci.parse().unwrap_or(x);
    format!("{:.*}", decimals, rounded)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(format_sig(12.566370614359172, 6), "12.5664");
        assert_eq!(format_sig(13.152946437965905, 6), "13.1529");
        assert_eq!(format_sig(9.9999996, 6), "10.0000");
        assert_eq!(format_sig(1.38511, 6), "1.38511");
        assert_eq!(format_sig(-0.000123456789, 6), "-0.000123457");
        assert_eq!(format_sig(0.0, 6), "0");
        assert_eq!(format_sig(123456789.0, 6), "123457000");
    }

    #[test]
    fn pi_interval_brackets_known_digits() {
        let known: BigRational = BigRational::new(
            "314159265358979323846264338327950288419716939937510".parse().unwrap(),
            BigInt::from(10u32).pow(50),
        );
        for bits in [64, 128, 256, 1024] {
            let p = pi_interval(bits);
            let eps = BigRational::new(BigInt::one(), BigInt::from(10u32).pow(49));
            assert!(p.lo <= &known + &eps && &known - &eps <= p.hi, "bits {bits}");
            assert!(p.width() < BigRational::new(BigInt::one(), BigInt::one() << bits));
        }
    }

    #[test]
    fn ceilings_of_small_cases() {
        let zero = BigRational::zero();
        let half = BigRational::new(1.into(), 2.into());
        let one = BigRational::one();
        let quarter = BigRational::new(1.into(), 4.into());
        assert_eq!(ceil_sqrt_4pi2n(1, &one, &zero).unwrap(), 7.into());
        assert_eq!(ceil_sqrt_4pi2n(1, &quarter, &zero).unwrap(), 7.into());
        assert_eq!(ceil_sqrt_4pi2n(1, &one, &half).unwrap(), 7.into());
        assert_eq!(ceil_sqrt_4pi2n(2, &one, &half).unwrap(), 10.into());
    }

    #[test]
    fn offset_sqrt_on_exact_squares() {
        let x = Interval::point(rat(49));
        assert_eq!(ceil_offset_sqrt(&BigRational::zero(), &x), Some(7.into()));
        let x = Interval { lo: rat(48), hi: rat(50) };
        assert_eq!(ceil_offset_sqrt(&BigRational::zero(), &x), None);
    }

    #[test]
    fn pi_sq_comparison() {
        assert!(exceeds_multiple_of_pi_sq(&BigInt::from(173), 16).unwrap());
        assert!(!exceeds_multiple_of_pi_sq(&BigInt::from(157), 16).unwrap());
    }
}
