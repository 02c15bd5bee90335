//! Scalar arithmetic for the two computation regimes.
//!
//! The exact regime works in the Gaussian rationals Q(i) (with plain
//! rationals embedded); the approximate regime works in complex doubles
//! under a global relative tolerance. Every higher module is generic over
//! [`Scalar`], and the exact regime is the authoritative one: approximate
//! mode exists only for parameter configurations that leave Q(i), such as
//! the pentagonal ones.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Global relative tolerance for the approximate regime; defaults to 1e-9.
static EPSILON_BITS: AtomicU64 = AtomicU64::new(0);

const DEFAULT_EPSILON: f64 = 1e-9;

pub fn epsilon() -> f64 {
    let bits = EPSILON_BITS.load(AtomicOrdering::Relaxed);
    if bits == 0 {
        DEFAULT_EPSILON
    } else {
        f64::from_bits(bits)
    }
}

/// Override the global tolerance. Intended to be called once at process
/// start (the CLI maps HUMBERT_EPS here); values must be finite and positive.
pub fn set_epsilon(eps: f64) {
    assert!(eps.is_finite() && eps > 0.0, "tolerance must be positive");
    EPSILON_BITS.store(eps.to_bits(), AtomicOrdering::Relaxed);
}

/// An arbitrary-precision rational in canonical form: reduced, positive
/// denominator, zero stored as 0/1. `BigRational` maintains exactly this.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rat(BigRational);

impl Rat {
    pub fn new(num: BigInt, den: BigInt) -> Result<Rat> {
        if den.is_zero() {
            return Err(Error::DegenerateValue("zero denominator".into()));
        }
        Ok(Rat(BigRational::new(num, den)))
    }

    pub fn from_int(n: i64) -> Rat {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Rat {
        Rat(BigRational::from_integer(n))
    }

    pub fn zero() -> Rat {
        Rat(BigRational::zero())
    }

    pub fn one() -> Rat {
        Rat::from_int(1)
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn add(&self, rhs: &Rat) -> Rat {
        Rat(&self.0 + &rhs.0)
    }

    pub fn sub(&self, rhs: &Rat) -> Rat {
        Rat(&self.0 - &rhs.0)
    }

    pub fn mul(&self, rhs: &Rat) -> Rat {
        Rat(&self.0 * &rhs.0)
    }

    pub fn neg(&self) -> Rat {
        Rat(-self.0.clone())
    }

    pub fn inv(&self) -> Result<Rat> {
        if self.is_zero() {
            return Err(Error::DegenerateValue("division by zero".into()));
        }
        Ok(Rat(self.0.recip()))
    }

    pub fn div(&self, rhs: &Rat) -> Result<Rat> {
        Ok(self.mul(&rhs.inv()?))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Exact square root if the value is a square in Q.
    pub fn sqrt_exact(&self) -> Option<Rat> {
        if self.0.is_negative() {
            return None;
        }
        let sn = self.numer().sqrt();
        let sd = self.denom().sqrt();
        if &(&sn * &sn) == self.numer() && &(&sd * &sd) == self.denom() {
            Some(Rat(BigRational::new(sn, sd)))
        } else {
            None
        }
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

fn parse_rat(s: &str) -> Result<Rat> {
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    if s.is_empty() {
        return Err(bad());
    }
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num_str).map_err(|_| bad())?;
    let den = BigInt::from_str(den_str).map_err(|_| bad())?;
    if den <= BigInt::zero() && den_str.starts_with('-') {
        return Err(bad()); // sign belongs on the numerator
    }
    Rat::new(num, den)
}

/// A Gaussian rational a + bi with both parts canonical.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussRat {
    pub re: Rat,
    pub im: Rat,
}

impl GaussRat {
    pub fn new(re: Rat, im: Rat) -> GaussRat {
        GaussRat { re, im }
    }

    pub fn from_rat(re: Rat) -> GaussRat {
        GaussRat { re, im: Rat::zero() }
    }

    pub fn i() -> GaussRat {
        GaussRat { re: Rat::zero(), im: Rat::one() }
    }

    pub fn conj(&self) -> GaussRat {
        GaussRat { re: self.re.clone(), im: self.im.neg() }
    }

    /// Squared modulus a^2 + b^2, a rational.
    pub fn norm_sq(&self) -> Rat {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        let mag = self.im.clone();
        let one = Rat::one();
        let neg_one = Rat::from_int(-1);
        if self.re.is_zero() {
            if mag == one {
                return write!(f, "i");
            }
            if mag == neg_one {
                return write!(f, "-i");
            }
            return write!(f, "{}i", mag);
        }
        let (sign, abs) = if mag.numer().is_negative() { ("-", mag.neg()) } else { ("+", mag) };
        if abs == one {
            write!(f, "{}{}i", self.re, sign)
        } else {
            write!(f, "{}{}{}i", self.re, sign, abs)
        }
    }
}

impl fmt::Debug for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Split a scalar literal into (real token, imaginary token). The grammar is
/// `p/q`, `p/q+r/si`, `r/si`, with bare `i`/`-i` allowed for unit imaginary
/// parts; no spaces anywhere.
fn split_complex(s: &str) -> Result<(Option<&str>, Option<&str>)> {
    let bad = || Error::Parse(format!("invalid scalar literal `{s}`"));
    if s.is_empty() {
        return Err(bad());
    }
    // find a sign that is not leading and not part of an exponent ("1e-3")
    let bytes = s.as_bytes();
    let mut split_at = None;
    for k in 1..bytes.len() {
        let c = bytes[k] as char;
        if (c == '+' || c == '-') && !matches!(bytes[k - 1] as char, 'e' | 'E') {
            split_at = Some(k);
        }
    }
    match split_at {
        None => {
            if s.ends_with('i') {
                Ok((None, Some(s)))
            } else {
                Ok((Some(s), None))
            }
        }
        Some(k) => {
            let (re, im) = (&s[..k], &s[k..]);
            if !im.ends_with('i') || re.ends_with('i') {
                return Err(bad());
            }
            Ok((Some(re), Some(im)))
        }
    }
}

fn parse_imag_token(tok: &str) -> Result<(bool, &str)> {
    // returns (negative, magnitude-str); magnitude may be empty meaning 1
    let body = &tok[..tok.len() - 1]; // strip trailing 'i'
    let (neg, mag) = match body.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, body.strip_prefix('+').unwrap_or(body)),
    };
    Ok((neg, mag))
}

impl GaussRat {
    /// Parse the exact text format. Round-trips bit-exactly with `Display`.
    pub fn parse(s: &str) -> Result<GaussRat> {
        if s.contains('.') {
            return Err(Error::Parse(format!(
                "decimal literal `{s}` is not valid in the exact regime"
            )));
        }
        let (re_tok, im_tok) = split_complex(s)?;
        let re = match re_tok {
            Some(t) => parse_rat(t)?,
            None => Rat::zero(),
        };
        let im = match im_tok {
            Some(t) => {
                let (neg, mag) = parse_imag_token(t)?;
                let m = if mag.is_empty() { Rat::one() } else { parse_rat(mag)? };
                if neg {
                    m.neg()
                } else {
                    m
                }
            }
            None => Rat::zero(),
        };
        Ok(GaussRat { re, im })
    }
}

/// A complex double under the global relative tolerance. Values are finite;
/// the point at infinity exists only projectively (see `mobius`).
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct ApproxC(pub Complex64);

impl ApproxC {
    pub fn new(re: f64, im: f64) -> ApproxC {
        ApproxC(Complex64::new(re, im))
    }

    /// |a - b| <= eps * max(1, |a|, |b|)
    pub fn approx_eq(&self, other: &ApproxC) -> bool {
        let scale = 1.0_f64.max(self.0.norm()).max(other.0.norm());
        (self.0 - other.0).norm() <= epsilon() * scale
    }

    pub fn parse(s: &str) -> Result<ApproxC> {
        if s.contains('/') {
            return Err(Error::Parse(format!(
                "exact literal `{s}` is not valid in the approximate regime"
            )));
        }
        let (re_tok, im_tok) = split_complex(s)?;
        let bad = || Error::Parse(format!("invalid decimal literal `{s}`"));
        let re = match re_tok {
            Some(t) => f64::from_str(t).map_err(|_| bad())?,
            None => 0.0,
        };
        let im = match im_tok {
            Some(t) => {
                let (neg, mag) = parse_imag_token(t)?;
                let m = if mag.is_empty() { 1.0 } else { f64::from_str(mag).map_err(|_| bad())? };
                if neg {
                    -m
                } else {
                    m
                }
            }
            None => 0.0,
        };
        if !re.is_finite() || !im.is_finite() {
            return Err(bad());
        }
        Ok(ApproxC::new(re, im))
    }
}

impl fmt::Display for ApproxC {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.im == 0.0 {
            write!(f, "{}", self.0.re)
        } else if self.0.re == 0.0 {
            write!(f, "{}i", self.0.im)
        } else if self.0.im < 0.0 {
            write!(f, "{}{}i", self.0.re, self.0.im)
        } else {
            write!(f, "{}+{}i", self.0.re, self.0.im)
        }
    }
}

/// Field operations shared by the two regimes. Values are immutable and all
/// operations are pure, so they can be used from any number of workers.
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    /// True in the exact regime; equality and zero tests are then literal.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: i64) -> Self;
    fn from_rat(r: &Rat) -> Self;

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self>;

    fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.inv()?))
    }

    fn is_zero(&self) -> bool;

    /// Regime-aware equality: exact equality or `approx_eq`.
    fn eq_val(&self, rhs: &Self) -> bool;

    /// Regime-aware nearness with a widened tolerance, used for the
    /// collision guards. In the exact regime this is plain equality.
    fn near(&self, rhs: &Self, factor: f64) -> bool;

    /// A fixed total order on scalars: (numerator, denominator) pairs
    /// compared lexicographically on the real then imaginary parts; plain
    /// (re, im) comparison in the approximate regime. Used wherever a
    /// deterministic ordering of sets is required.
    fn canonical_cmp(&self, rhs: &Self) -> Ordering;

    /// Approximate modulus, used only for pivot selection and diagnostics.
    fn magnitude(&self) -> f64;

    fn conj(&self) -> Self;

    /// The value as a plain rational, when that is exactly representable.
    fn as_rat(&self) -> Option<Rat>;

    /// A square root within the same field, if one exists.
    fn sqrt_in_field(&self) -> Result<Self>;

    fn to_complex(&self) -> Complex64;

    fn parse(s: &str) -> Result<Self>;
}

impl Scalar for GaussRat {
    const EXACT: bool = true;

    fn zero() -> Self {
        GaussRat::from_rat(Rat::zero())
    }

    fn one() -> Self {
        GaussRat::from_rat(Rat::one())
    }

    fn from_int(n: i64) -> Self {
        GaussRat::from_rat(Rat::from_int(n))
    }

    fn from_rat(r: &Rat) -> Self {
        GaussRat::from_rat(r.clone())
    }

    fn add(&self, rhs: &Self) -> Self {
        GaussRat { re: self.re.add(&rhs.re), im: self.im.add(&rhs.im) }
    }

    fn sub(&self, rhs: &Self) -> Self {
        GaussRat { re: self.re.sub(&rhs.re), im: self.im.sub(&rhs.im) }
    }

    fn mul(&self, rhs: &Self) -> Self {
        GaussRat {
            re: self.re.mul(&rhs.re).sub(&self.im.mul(&rhs.im)),
            im: self.re.mul(&rhs.im).add(&self.im.mul(&rhs.re)),
        }
    }

    fn neg(&self) -> Self {
        GaussRat { re: self.re.neg(), im: self.im.neg() }
    }

    fn inv(&self) -> Result<Self> {
        let n = self.norm_sq();
        if n.is_zero() {
            return Err(Error::DegenerateValue("division by zero".into()));
        }
        let c = self.conj();
        Ok(GaussRat { re: c.re.div(&n)?, im: c.im.div(&n)? })
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn eq_val(&self, rhs: &Self) -> bool {
        self == rhs
    }

    fn near(&self, rhs: &Self, _factor: f64) -> bool {
        self == rhs
    }

    fn canonical_cmp(&self, rhs: &Self) -> Ordering {
        (self.re.numer(), self.re.denom(), self.im.numer(), self.im.denom()).cmp(&(
            rhs.re.numer(),
            rhs.re.denom(),
            rhs.im.numer(),
            rhs.im.denom(),
        ))
    }

    fn magnitude(&self) -> f64 {
        self.norm_sq().to_f64().sqrt()
    }

    fn conj(&self) -> Self {
        GaussRat::conj(self)
    }

    fn as_rat(&self) -> Option<Rat> {
        if self.im.is_zero() {
            Some(self.re.clone())
        } else {
            None
        }
    }

    fn sqrt_in_field(&self) -> Result<Self> {
        // For b = 0: sqrt(a) or i*sqrt(-a). Otherwise write
        // (x + yi)^2 = a + bi and solve x^2 = (a + |z|)/2, y = b/(2x);
        // everything must stay rational.
        if self.im.is_zero() {
            if let Some(s) = self.re.sqrt_exact() {
                return Ok(GaussRat::from_rat(s));
            }
            if let Some(s) = self.re.neg().sqrt_exact() {
                return Ok(GaussRat { re: Rat::zero(), im: s });
            }
            return Err(Error::SqrtNotExact);
        }
        let m = self.norm_sq().sqrt_exact().ok_or(Error::SqrtNotExact)?;
        let half = Rat::new(BigInt::from(1), BigInt::from(2)).unwrap();
        let x2 = self.re.add(&m).mul(&half);
        let x = x2.sqrt_exact().ok_or(Error::SqrtNotExact)?;
        if x.is_zero() {
            return Err(Error::SqrtNotExact);
        }
        let y = self.im.mul(&half).div(&x)?;
        let cand = GaussRat { re: x, im: y };
        if cand.mul(&cand) == *self {
            Ok(cand)
        } else {
            Err(Error::SqrtNotExact)
        }
    }

    fn to_complex(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    fn parse(s: &str) -> Result<Self> {
        GaussRat::parse(s)
    }
}

impl Scalar for ApproxC {
    const EXACT: bool = false;

    fn zero() -> Self {
        ApproxC::new(0.0, 0.0)
    }

    fn one() -> Self {
        ApproxC::new(1.0, 0.0)
    }

    fn from_int(n: i64) -> Self {
        ApproxC::new(n as f64, 0.0)
    }

    fn from_rat(r: &Rat) -> Self {
        ApproxC::new(r.to_f64(), 0.0)
    }

    fn add(&self, rhs: &Self) -> Self {
        ApproxC(self.0 + rhs.0)
    }

    fn sub(&self, rhs: &Self) -> Self {
        ApproxC(self.0 - rhs.0)
    }

    fn mul(&self, rhs: &Self) -> Self {
        ApproxC(self.0 * rhs.0)
    }

    fn neg(&self) -> Self {
        ApproxC(-self.0)
    }

    fn inv(&self) -> Result<Self> {
        if Scalar::is_zero(self) {
            return Err(Error::DegenerateValue("division by (approximate) zero".into()));
        }
        Ok(ApproxC(self.0.inv()))
    }

    fn is_zero(&self) -> bool {
        self.0.norm() <= epsilon()
    }

    fn eq_val(&self, rhs: &Self) -> bool {
        self.approx_eq(rhs)
    }

    fn near(&self, rhs: &Self, factor: f64) -> bool {
        let scale = 1.0_f64.max(self.0.norm()).max(rhs.0.norm());
        (self.0 - rhs.0).norm() <= factor * epsilon() * scale
    }

    fn canonical_cmp(&self, rhs: &Self) -> Ordering {
        self.0
            .re
            .total_cmp(&rhs.0.re)
            .then_with(|| self.0.im.total_cmp(&rhs.0.im))
    }

    fn magnitude(&self) -> f64 {
        self.0.norm()
    }

    fn conj(&self) -> Self {
        ApproxC(self.0.conj())
    }

    fn as_rat(&self) -> Option<Rat> {
        None
    }

    fn sqrt_in_field(&self) -> Result<Self> {
        Ok(ApproxC(self.0.sqrt()))
    }

    fn to_complex(&self) -> Complex64 {
        self.0
    }

    fn parse(s: &str) -> Result<Self> {
        ApproxC::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(BigInt::from(n), BigInt::from(d)).unwrap()
    }

    #[test]
    fn rational_arithmetic_examples() {
        assert_eq!(r(1, 2).add(&r(1, 3)), r(5, 6));
        assert_eq!(r(2, 4), r(1, 2)); // normalized on construction
        assert!(matches!(r(1, 3).div(&Rat::zero()), Err(Error::DegenerateValue(_))));
    }

    #[test]
    fn gaussian_arithmetic_examples() {
        let one_plus_i = GaussRat::new(Rat::one(), Rat::one());
        let one_minus_i = one_plus_i.conj();
        assert_eq!(one_plus_i.mul(&one_minus_i), GaussRat::from_int(2));
        let i = GaussRat::i();
        assert_eq!(i.div(&i).unwrap(), GaussRat::one());
        // (1-i)^2 / 2 = -i
        let sq = one_minus_i.mul(&one_minus_i);
        assert_eq!(sq.div(&GaussRat::from_int(2)).unwrap(), GaussRat::i().neg());
        assert!(matches!(
            GaussRat::one().div(&GaussRat::zero()),
            Err(Error::DegenerateValue(_))
        ));
    }

    #[test]
    fn approx_eq_examples() {
        let a = ApproxC::new(1.0, 0.0);
        let b = ApproxC::new(1.0 + 1e-12, 0.0);
        assert!(a.approx_eq(&b));
        assert!(!ApproxC::new(0.0, 0.0).approx_eq(&ApproxC::new(1.0, 0.0)));
    }

    #[test]
    fn exact_parse_render_round_trip() {
        for s in ["0", "2", "-7", "1/2", "-3/4", "i", "-i", "2i", "-2/5i", "1-i", "1/2+3/4i", "-1/2-2/3i"] {
            let v = GaussRat::parse(s).unwrap();
            assert_eq!(v.to_string(), s, "round trip failed for {s}");
        }
    }

    #[test]
    fn exact_parse_rejects_decimals_and_junk() {
        assert!(GaussRat::parse("1.5").is_err());
        assert!(GaussRat::parse("").is_err());
        assert!(GaussRat::parse("1/0").is_err());
        assert!(GaussRat::parse("i+1").is_err());
        assert!(GaussRat::parse("2+2").is_err());
    }

    #[test]
    fn approx_parse_examples() {
        assert_eq!(ApproxC::parse("1.5").unwrap(), ApproxC::new(1.5, 0.0));
        assert_eq!(ApproxC::parse("-0.25+0.5i").unwrap(), ApproxC::new(-0.25, 0.5));
        assert_eq!(ApproxC::parse("-i").unwrap(), ApproxC::new(0.0, -1.0));
        assert_eq!(ApproxC::parse("1e-3").unwrap(), ApproxC::new(1e-3, 0.0));
        assert!(ApproxC::parse("1/2").is_err());
    }

    #[test]
    fn approx_render_round_trip() {
        for v in [
            ApproxC::new(1.5, 0.0),
            ApproxC::new(0.0, -2.25),
            ApproxC::new(-0.5, 0.125),
            ApproxC::new(1e-3, -1e4),
        ] {
            let s = v.to_string();
            assert_eq!(ApproxC::parse(&s).unwrap(), v, "round trip failed for {s}");
        }
    }

    #[test]
    fn gaussian_sqrt() {
        // sqrt(-4) = 2i, sqrt(2i) = 1+i, sqrt(3) not in Q(i)
        assert_eq!(
            GaussRat::from_int(-4).sqrt_in_field().unwrap(),
            GaussRat::new(Rat::zero(), r(2, 1))
        );
        let two_i = GaussRat::new(Rat::zero(), r(2, 1));
        assert_eq!(two_i.sqrt_in_field().unwrap(), GaussRat::new(Rat::one(), Rat::one()));
        assert!(GaussRat::from_int(3).sqrt_in_field().is_err());
    }

    #[test]
    fn canonical_order_is_total_and_documented() {
        // (numerator, denominator) lexicographic: -2 < -1/2 < 1/2 < 2
        let mut v = vec![
            GaussRat::from_int(2),
            GaussRat::parse("-1/2").unwrap(),
            GaussRat::from_int(-2),
            GaussRat::parse("1/2").unwrap(),
        ];
        v.sort_by(|a, b| a.canonical_cmp(b));
        let rendered: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        assert_eq!(rendered, ["-2", "-1/2", "1/2", "2"]);
    }
}
