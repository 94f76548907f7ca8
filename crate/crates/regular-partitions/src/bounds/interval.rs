//! Enclosure arithmetic over exact rationals.
//!
//! A [`RigorousReal`] is a pair of rational bounds `lo <= x <= hi`. Exact
//! operations (add, sub, neg, scaling, interval products) stay exact; the
//! transcendental constructors (`ln`, `sqrt`, `exp2`) round outward in
//! fixed-point integer arithmetic at a requested working precision, so every
//! enclosure provably contains the true value. A sign is reported only when
//! the whole enclosure lies on one side of zero (or is exactly zero), which
//! is what makes downstream sign decisions certificates rather than guesses.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::bo::DeltaSign;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RigorousReal {
    lo: BigRational,
    hi: BigRational,
}

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(big(n), big(d))
}

fn div_floor_big(a: &BigInt, b: &BigInt) -> BigInt {
    Integer::div_floor(a, b)
}

fn div_ceil_big(a: &BigInt, b: &BigInt) -> BigInt {
    -Integer::div_floor(&-a, b)
}

/// `floor(r * 2^s)` / `ceil(r * 2^s)`: a rational snapped onto the
/// fixed-point lattice.
fn fix_floor(r: &BigRational, s: u32) -> BigInt {
    div_floor_big(&(r.numer() << s), r.denom())
}

fn fix_ceil(r: &BigRational, s: u32) -> BigInt {
    div_ceil_big(&(r.numer() << s), r.denom())
}

fn unfix(m: BigInt, s: u32) -> BigRational {
    BigRational::new(m, BigInt::one() << s)
}

/// Fixed-point product with directed rounding: `(a * b) / 2^s`.
fn mul_down(a: &BigInt, b: &BigInt, s: u32) -> BigInt {
    div_floor_big(&(a * b), &(BigInt::one() << s))
}

fn mul_up(a: &BigInt, b: &BigInt, s: u32) -> BigInt {
    div_ceil_big(&(a * b), &(BigInt::one() << s))
}

/// Writes `x = m * 2^e` with `3/4 <= m < 3/2`. Requires `x > 0`.
fn normalize_pow2(x: &BigRational) -> (BigRational, i64) {
    let bn = x.numer().magnitude().bits() as i64;
    let bd = x.denom().magnitude().bits() as i64;
    let mut e = bn - bd;
    let mut m = if e >= 0 {
        BigRational::new(x.numer().clone(), x.denom() << e)
    } else {
        BigRational::new(x.numer() << (-e), x.denom().clone())
    };
    let three_halves = ratio(3, 2);
    let three_quarters = ratio(3, 4);
    while m >= three_halves {
        m /= big(2);
        e += 1;
    }
    while m < three_quarters {
        m *= big(2);
        e -= 1;
    }
    (m, e)
}

/// Fixed-point enclosure of `atanh(t)` for rational `0 <= t <= 1/3 + eps`
/// (anything with `t^2 <= 1/2` is sound). Returns `(lo, hi)` mantissas at
/// scale `2^-s`.
fn atanh_fix(t: &BigRational, s: u32) -> (BigInt, BigInt) {
    debug_assert!(!t.is_negative());
    debug_assert!(t * t <= ratio(1, 2));
    let t_lo = fix_floor(t, s);
    let t_hi = fix_ceil(t, s);
    let tsq_lo = mul_down(&t_lo, &t_lo, s);
    let tsq_hi = mul_up(&t_hi, &t_hi, s);

    let mut pow_lo = t_lo;
    let mut pow_hi = t_hi;
    let mut sum_lo = BigInt::zero();
    let mut sum_hi = BigInt::zero();
    let mut j: u64 = 0;
    loop {
        let d = big(2 * j as i64 + 1);
        sum_lo += div_floor_big(&pow_lo, &d);
        sum_hi += div_ceil_big(&pow_hi, &d);
        pow_lo = mul_down(&pow_lo, &tsq_lo, s);
        pow_hi = mul_up(&pow_hi, &tsq_hi, s);
        j += 1;
        if pow_hi <= big(4) {
            // Remaining tail: sum_{i>=j} t^{2i+1}/(2i+1)
            //   <= (t^{2j+1}/(2j+1)) / (1 - t^2) <= 2 pow / (2j+1).
            sum_hi += div_ceil_big(&(&pow_hi * big(2)), &big(2 * j as i64 + 1));
            break;
        }
    }
    (sum_lo, sum_hi)
}

/// Cached fixed-point enclosure of `ln 2 = 2 atanh(1/3)` at scale `s`.
fn ln2_fix(s: u32) -> (BigInt, BigInt) {
    static CACHE: OnceLock<Mutex<HashMap<u32, (BigInt, BigInt)>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&s) {
        return hit.clone();
    }
    let (lo, hi) = atanh_fix(&ratio(1, 3), s);
    let value = (lo * big(2), hi * big(2));
    cache.lock().unwrap().insert(s, value.clone());
    value
}

/// Fixed-point enclosure of `exp(y)` for `0 <= y_lo <= y_hi` mantissas at
/// scale `s`.
fn exp_fix(y_lo: &BigInt, y_hi: &BigInt, s: u32) -> (BigInt, BigInt) {
    debug_assert!(!y_lo.is_negative());
    debug_assert!(y_hi >= y_lo);
    let unit = BigInt::one() << s;
    let mut term_lo = unit.clone();
    let mut term_hi = unit.clone();
    let mut sum_lo = unit.clone();
    let mut sum_hi = unit.clone();
    let mut j: u64 = 1;
    loop {
        term_lo = div_floor_big(&mul_down(&term_lo, y_lo, s), &big(j as i64));
        term_hi = div_ceil_big(&mul_up(&term_hi, y_hi, s), &big(j as i64));
        sum_lo += &term_lo;
        sum_hi += &term_hi;
        j += 1;
        // Tail <= term * r / (1 - r) with r = y/j (j now indexes the next,
        // unadded term); once r <= 1/2 the tail is at most the last term.
        if term_hi <= big(4) && y_hi * big(2) <= &unit * big(j as i64) {
            sum_hi += &term_hi;
            break;
        }
    }
    (sum_lo, sum_hi)
}

impl RigorousReal {
    pub fn exact(v: BigRational) -> Self {
        RigorousReal { lo: v.clone(), hi: v }
    }

    pub fn from_int(v: i64) -> Self {
        Self::exact(BigRational::from(big(v)))
    }

    fn from_bounds(lo: BigRational, hi: BigRational) -> Self {
        debug_assert!(lo <= hi);
        RigorousReal { lo, hi }
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, v: &BigRational) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn intersects(&self, other: &Self) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_bounds(&self.lo + &other.lo, &self.hi + &other.hi)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::from_bounds(&self.lo - &other.hi, &self.hi - &other.lo)
    }

    pub fn neg(&self) -> Self {
        Self::from_bounds(-self.hi.clone(), -self.lo.clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let products = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = products.iter().min().unwrap().clone();
        let hi = products.iter().max().unwrap().clone();
        Self::from_bounds(lo, hi)
    }

    /// Multiplication by an exact rational.
    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_negative() {
            Self::from_bounds(&self.hi * c, &self.lo * c)
        } else {
            Self::from_bounds(&self.lo * c, &self.hi * c)
        }
    }

    /// The certified sign: decided only when the enclosure excludes zero (or
    /// is exactly zero).
    pub fn sign(&self) -> Option<DeltaSign> {
        if self.lo.is_positive() {
            Some(DeltaSign::Positive)
        } else if self.hi.is_negative() {
            Some(DeltaSign::Negative)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(DeltaSign::Zero)
        } else {
            None
        }
    }

    /// Enclosure of `ln x` for rational `x > 0` at roughly `prec` bits.
    /// Exact for `x = 1`.
    pub fn ln(x: &BigRational, prec: u32) -> Result<Self> {
        if !x.is_positive() {
            return Err(Error::Range {
                what: "ln argument",
                got: x.to_string(),
                allowed: "> 0".into(),
            });
        }
        let s = prec + 32;
        let (m, e) = normalize_pow2(x);
        // ln m = 2 atanh(t), t = (m-1)/(m+1) in [-1/7, 1/5]
        let t = (&m - BigRational::one()) / (&m + BigRational::one());
        let (mut lo, mut hi);
        if t.is_negative() {
            let (alo, ahi) = atanh_fix(&-t, s);
            lo = ahi * big(-2);
            hi = alo * big(-2);
        } else {
            let (alo, ahi) = atanh_fix(&t, s);
            lo = alo * big(2);
            hi = ahi * big(2);
        }
        if e != 0 {
            let (l2lo, l2hi) = ln2_fix(s);
            let eb = big(e);
            if e > 0 {
                lo += &eb * l2lo;
                hi += &eb * l2hi;
            } else {
                lo += &eb * l2hi;
                hi += &eb * l2lo;
            }
        }
        Ok(Self::from_bounds(unfix(lo, s), unfix(hi, s)))
    }

    /// Enclosure of `sqrt(x)` for rational `x >= 0`, via an integer square
    /// root at scale `2^-prec`. Exact at `x = 0`.
    pub fn sqrt(x: &BigRational, prec: u32) -> Result<Self> {
        if x.is_negative() {
            return Err(Error::Range {
                what: "sqrt argument",
                got: x.to_string(),
                allowed: ">= 0".into(),
            });
        }
        if x.is_zero() {
            return Ok(Self::exact(BigRational::zero()));
        }
        let s = prec + 16;
        let scaled = div_floor_big(&(x.numer() << (2 * s)), x.denom());
        let root = scaled.sqrt();
        Ok(Self::from_bounds(
            unfix(root.clone(), s),
            unfix(root + 1, s),
        ))
    }

    /// Enclosure of `2^self`.
    pub fn exp2(&self, prec: u32) -> Self {
        let s = prec + 32;
        let ipart = self.lo.floor();
        let f_lo = &self.lo - &ipart;
        let f_hi = &self.hi - &ipart;
        let (l2lo, l2hi) = ln2_fix(s);
        let y_lo = {
            let f = fix_floor(&f_lo, s);
            div_floor_big(&(f * l2lo), &(BigInt::one() << s))
        };
        let y_hi = {
            let f = fix_ceil(&f_hi, s);
            div_ceil_big(&(f * l2hi), &(BigInt::one() << s))
        };
        let (e_lo, e_hi) = exp_fix(&y_lo, &y_hi, s);
        let i = ipart.to_integer();
        let shift = num_traits::ToPrimitive::to_usize(i.magnitude())
            .expect("exp2 exponent magnitude fits a shift amount");
        let scale = if i.is_negative() {
            BigRational::new(BigInt::one(), BigInt::one() << shift)
        } else {
            BigRational::from(BigInt::one() << shift)
        };
        RigorousReal {
            lo: unfix(e_lo, s) * &scale,
            hi: unfix(e_hi, s) * scale,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;
    use proptest::prelude::*;

    fn rr(n: i64, d: i64) -> BigRational {
        ratio(n, d)
    }

    #[test]
    fn ln_of_one_is_exact_zero() {
        let r = RigorousReal::ln(&BigRational::one(), 128).unwrap();
        assert!(r.lo.is_zero() && r.hi.is_zero());
        assert_eq!(r.sign(), Some(DeltaSign::Zero));
    }

    #[test]
    fn ln_two_matches_known_digits() {
        let r = RigorousReal::ln(&rr(2, 1), 128).unwrap();
        // ln 2 = 0.69314718055994530941...
        let lo = rr(693147180559945309, 1_000_000_000_000_000_000);
        let hi = rr(693147180559945310, 1_000_000_000_000_000_000);
        assert!(r.lo <= hi && lo <= r.hi);
        assert!(r.width() < rr(1, 1 << 30) * rr(1, 1 << 30) * rr(1, 1 << 30));
    }

    #[test]
    fn sqrt_squares_back() {
        for (n, d) in [(2, 1), (11, 12), (979, 1), (1, 3)] {
            let x = rr(n, d);
            let r = RigorousReal::sqrt(&x, 128).unwrap();
            assert!(&r.lo * &r.lo <= x && x <= &r.hi * &r.hi);
            assert!(!r.lo.is_negative());
        }
    }

    #[test]
    fn exp2_of_integers_is_tight() {
        for e in [-3i64, 0, 1, 10] {
            let x = RigorousReal::exact(BigRational::from(big(e)));
            let r = x.exp2(128);
            let expect = if e >= 0 {
                BigRational::from(BigInt::one() << e as usize)
            } else {
                BigRational::new(BigInt::one(), BigInt::one() << (-e) as usize)
            };
            assert!(r.contains(&expect), "2^{e}: [{}, {}]", r.lo, r.hi);
            assert!(r.width() / expect < rr(1, 1 << 62));
        }
    }

    #[test]
    fn exp2_of_half_contains_sqrt_two() {
        let half = RigorousReal::exact(rr(1, 2));
        let r = half.exp2(128);
        let s = RigorousReal::sqrt(&rr(2, 1), 128).unwrap();
        assert!(r.intersects(&s));
    }

    #[test]
    fn interval_products_cover_all_sign_cases() {
        let a = RigorousReal::from_bounds(rr(-3, 1), rr(2, 1));
        let b = RigorousReal::from_bounds(rr(-1, 1), rr(5, 1));
        let p = a.mul(&b);
        assert_eq!(p.lo, rr(-15, 1));
        assert_eq!(p.hi, rr(10, 1));
    }

    #[test]
    fn sign_reporting() {
        assert_eq!(RigorousReal::from_bounds(rr(1, 3), rr(2, 3)).sign(), Some(DeltaSign::Positive));
        assert_eq!(RigorousReal::from_bounds(rr(-2, 3), rr(-1, 3)).sign(), Some(DeltaSign::Negative));
        assert_eq!(RigorousReal::from_bounds(rr(-1, 3), rr(1, 3)).sign(), None);
        assert_eq!(RigorousReal::exact(BigRational::zero()).sign(), Some(DeltaSign::Zero));
    }

    proptest! {
        #[test]
        fn ln_encloses_f64_reference(n in 1i64..1_000_000, d in 1i64..1_000_000) {
            let x = rr(n, d);
            let r = RigorousReal::ln(&x, 96).unwrap();
            let reference = (n as f64 / d as f64).ln();
            let slack = 1e-9;
            prop_assert!(r.lo.to_f64().unwrap() - slack <= reference);
            prop_assert!(reference <= r.hi.to_f64().unwrap() + slack);
        }

        #[test]
        fn sqrt_encloses_truth(n in 0i64..1_000_000, d in 1i64..1_000_000) {
            let x = rr(n, d);
            let r = RigorousReal::sqrt(&x, 96).unwrap();
            prop_assert!(&r.lo * &r.lo <= x);
            prop_assert!(x <= &r.hi * &r.hi);
        }

        #[test]
        fn higher_precision_stays_consistent(n in 1i64..100_000, d in 1i64..100_000) {
            let x = rr(n, d);
            let coarse = RigorousReal::ln(&x, 64).unwrap();
            let fine = RigorousReal::ln(&x, 256).unwrap();
            prop_assert!(coarse.intersects(&fine));
            prop_assert!(fine.width() <= coarse.width());
        }

        #[test]
        fn exp2_encloses_f64_reference(num in -900i64..900, den in 1i64..100) {
            let x = RigorousReal::exact(rr(num, den));
            let r = x.exp2(96);
            let reference = (num as f64 / den as f64).exp2();
            let rel = 1.0 + 1e-9;
            prop_assert!(r.lo.to_f64().unwrap() <= reference * rel);
            prop_assert!(reference / rel <= r.hi.to_f64().unwrap());
        }
    }
}
