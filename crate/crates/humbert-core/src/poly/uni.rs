//! Univariate polynomials over Q (integer coefficients with one content
//! denominator) and rational functions in canonical form. These carry the
//! one-variable identities of the descent machinery: the quotient map Q,
//! the equivariant-point formulas, and the resultant elimination that
//! produces minimal polynomials of transformed algebraic numbers.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use num_integer::Integer;

use super::ring;
use crate::error::{Error, Result};
use crate::scalar::{Rat, Scalar};

/// Dense univariate polynomial: `coeffs[k]` is the integer coefficient of
/// x^k, divided by the positive content denominator `den`. Invariants: no
/// trailing zero coefficient, den > 0, gcd(coefficient content, den) = 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly1 {
    coeffs: Vec<BigInt>,
    den: BigInt,
}

impl Poly1 {
    pub fn new(coeffs: Vec<BigInt>, den: BigInt) -> Poly1 {
        assert!(!den.is_zero(), "content denominator must be nonzero");
        let mut coeffs = ring::trim(coeffs);
        let mut den = den;
        if den.is_negative() {
            den = -den;
            for c in &mut coeffs {
                *c = -std::mem::take(c);
            }
        }
        let mut g = ring::content(&coeffs).gcd(&den);
        if g.is_zero() {
            g = BigInt::one();
        }
        if !g.is_one() {
            coeffs = ring::divide_content(&coeffs, &g);
            den = &den / &g;
        }
        if coeffs.is_empty() {
            den = BigInt::one();
        }
        Poly1 { coeffs, den }
    }

    pub fn zero() -> Poly1 {
        Poly1 { coeffs: Vec::new(), den: BigInt::one() }
    }

    pub fn constant(r: &Rat) -> Poly1 {
        Poly1::new(vec![r.numer().clone()], r.denom().clone())
    }

    pub fn var() -> Poly1 {
        Poly1::new(vec![BigInt::zero(), BigInt::one()], BigInt::one())
    }

    pub fn from_int_coeffs(c: &[i64]) -> Poly1 {
        Poly1::new(c.iter().map(|&x| BigInt::from(x)).collect(), BigInt::one())
    }

    pub fn from_rat_coeffs(c: &[Rat]) -> Poly1 {
        // common denominator, then canonical reduction in the constructor
        let mut den = BigInt::one();
        for r in c {
            den = &den / den.gcd(r.denom()) * r.denom();
        }
        let coeffs = c
            .iter()
            .map(|r| r.numer() * den.exact_div(r.denom()).unwrap())
            .collect();
        Poly1::new(coeffs, den)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        ring::deg(&self.coeffs)
    }

    pub fn int_coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn content_den(&self) -> &BigInt {
        &self.den
    }

    pub fn coeff(&self, k: usize) -> Rat {
        match self.coeffs.get(k) {
            Some(c) => Rat::new(c.clone(), self.den.clone()).unwrap(),
            None => Rat::zero(),
        }
    }

    pub fn leading_coeff(&self) -> Rat {
        match self.degree() {
            Some(d) => self.coeff(d),
            None => Rat::zero(),
        }
    }

    pub fn add(&self, rhs: &Poly1) -> Poly1 {
        let a = ring::scale(&self.coeffs, &rhs.den);
        let b = ring::scale(&rhs.coeffs, &self.den);
        Poly1::new(ring::add(&a, &b), &self.den * &rhs.den)
    }

    pub fn sub(&self, rhs: &Poly1) -> Poly1 {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Poly1 {
        Poly1 { coeffs: self.coeffs.iter().map(|c| -c).collect(), den: self.den.clone() }
    }

    pub fn mul(&self, rhs: &Poly1) -> Poly1 {
        Poly1::new(ring::mul(&self.coeffs, &rhs.coeffs), &self.den * &rhs.den)
    }

    pub fn mul_rat(&self, r: &Rat) -> Poly1 {
        Poly1::new(ring::scale(&self.coeffs, r.numer()), &self.den * r.denom())
    }

    pub fn pow(&self, mut n: u32) -> Poly1 {
        let mut base = self.clone();
        let mut acc = Poly1::constant(&Rat::one());
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Gcd as integer polynomials (primitive pseudo-remainder sequence);
    /// content denominators are irrelevant up to units.
    pub fn gcd(&self, rhs: &Poly1) -> Poly1 {
        Poly1::new(ring::poly_gcd(&self.coeffs, &rhs.coeffs), BigInt::one())
    }

    pub fn exact_div(&self, rhs: &Poly1) -> Option<Poly1> {
        let q = ring::exact_div_poly(&self.coeffs, &rhs.coeffs)?;
        Some(Poly1::new(ring::scale(&q, &rhs.den), self.den.clone()))
    }

    pub fn derivative(&self) -> Poly1 {
        if self.coeffs.len() <= 1 {
            return Poly1::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * BigInt::from(k))
            .collect();
        Poly1::new(coeffs, self.den.clone())
    }

    pub fn squarefree_part(&self) -> Poly1 {
        if self.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).expect("gcd divides the polynomial")
    }

    pub fn eval<S: Scalar>(&self, x: &S) -> S {
        // Horner over the integer coefficients, then the content division
        let mut acc = S::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(&S::from_rat(&Rat::from_bigint(c.clone())));
        }
        acc.mul(&S::from_rat(&Rat::from_bigint(self.den.clone()).inv().unwrap()))
    }

    pub fn eval_rat(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(&Rat::from_bigint(c.clone()));
        }
        acc.div(&Rat::from_bigint(self.den.clone())).unwrap()
    }

    /// All complex roots, numerically (Durand–Kerner). Exactness is never
    /// derived from these: callers use them only to anchor, and verify any
    /// conclusion with exact division afterwards.
    pub fn complex_roots(&self) -> Vec<Complex64> {
        let d = match self.degree() {
            Some(d) if d >= 1 => d,
            _ => return Vec::new(),
        };
        let lead = self.coeffs[d].to_f64().unwrap_or(f64::NAN);
        let coef: Vec<f64> = (0..d)
            .map(|k| self.coeffs[k].to_f64().unwrap_or(f64::NAN) / lead)
            .collect();
        let evaluate = |x: Complex64| {
            let mut acc = Complex64::new(1.0, 0.0);
            for c in coef.iter().rev() {
                acc = acc * x + c;
            }
            acc
        };
        // standard non-real starting points
        let mut roots: Vec<Complex64> = (0..d)
            .map(|k| Complex64::new(0.4, 0.9).powu(k as u32 + 1))
            .collect();
        for _ in 0..500 {
            let mut shift = 0.0_f64;
            let prev = roots.clone();
            for i in 0..d {
                let mut denom = Complex64::new(1.0, 0.0);
                for j in 0..d {
                    if j != i {
                        denom *= prev[i] - prev[j];
                    }
                }
                let delta = evaluate(prev[i]) / denom;
                roots[i] = prev[i] - delta;
                shift = shift.max(delta.norm());
            }
            if shift < 1e-13 {
                break;
            }
        }
        roots
    }
}

impl fmt::Display for Poly1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "{}", mag)?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{}*", mag)?;
                    }
                    if k == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{}", k)?;
                    }
                }
            }
        }
        if !self.den.is_one() {
            write!(f, " (/{})", self.den)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl super::ring::CoefRing for Poly1 {
    fn zero() -> Self {
        Poly1::zero()
    }

    fn one() -> Self {
        Poly1::constant(&Rat::one())
    }

    fn is_zero(&self) -> bool {
        Poly1::is_zero(self)
    }

    fn add(&self, rhs: &Self) -> Self {
        Poly1::add(self, rhs)
    }

    fn sub(&self, rhs: &Self) -> Self {
        Poly1::sub(self, rhs)
    }

    fn mul(&self, rhs: &Self) -> Self {
        Poly1::mul(self, rhs)
    }

    fn neg(&self) -> Self {
        Poly1::neg(self)
    }

    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        Poly1::exact_div(self, rhs)
    }

    fn gcd(&self, rhs: &Self) -> Self {
        Poly1::gcd(self, rhs)
    }

    fn is_negative(&self) -> bool {
        self.leading_coeff().numer().is_negative()
    }
}

/// Resultant of two univariate polynomials via the Sylvester matrix and a
/// fraction-free determinant. Exact over Q.
pub fn resultant(a: &Poly1, b: &Poly1) -> Rat {
    let da = match a.degree() {
        None => return Rat::zero(),
        Some(d) => d,
    };
    let db = match b.degree() {
        None => return Rat::zero(),
        Some(d) => d,
    };
    if da == 0 {
        let c = a.coeff(0);
        let mut acc = Rat::one();
        for _ in 0..db {
            acc = acc.mul(&c);
        }
        return acc;
    }
    if db == 0 {
        let c = b.coeff(0);
        let mut acc = Rat::one();
        for _ in 0..da {
            acc = acc.mul(&c);
        }
        return acc;
    }
    let n = da + db;
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for row in 0..db {
        for (k, c) in a.int_coeffs().iter().enumerate() {
            m[row][row + da - k] = c.clone();
        }
    }
    for row in 0..da {
        for (k, c) in b.int_coeffs().iter().enumerate() {
            m[db + row][row + db - k] = c.clone();
        }
    }
    let det = ring::bareiss_det(m);
    // each row of a contributes 1/a.den, similarly for b
    let mut den = BigInt::one();
    for _ in 0..db {
        den *= a.content_den();
    }
    for _ in 0..da {
        den *= b.content_den();
    }
    Rat::new(det, den).unwrap()
}

/// Eliminate `t` from m(t) = 0 and a(t)*x - b(t) = 0: the returned
/// polynomial in x vanishes on { b(t)/a(t) : m(t) = 0 }. Computed as a
/// Sylvester determinant over Z[x] with Bareiss elimination.
pub fn eliminate_moebius_image(m: &Poly1, a: &Poly1, b: &Poly1) -> Result<Poly1> {
    let dm = m
        .degree()
        .ok_or_else(|| Error::DegenerateValue("zero minimal polynomial".into()))?;
    if dm == 0 {
        return Err(Error::DegenerateValue("constant minimal polynomial".into()));
    }
    // second polynomial in t: a(t)*x - b(t), coefficients linear in x
    let d2 = a.degree().unwrap_or(0).max(b.degree().unwrap_or(0));
    let x = Poly1::var();
    let coeffs_second: Vec<Poly1> = (0..=d2)
        .map(|k| x.mul_rat(&a.coeff(k)).sub(&Poly1::constant(&b.coeff(k))))
        .collect();
    let coeffs_m: Vec<Poly1> = (0..=dm).map(|k| Poly1::constant(&m.coeff(k))).collect();
    let n = dm + d2;
    let mut mat = vec![vec![Poly1::zero(); n]; n];
    for row in 0..d2 {
        for (k, c) in coeffs_m.iter().enumerate() {
            mat[row][row + dm - k] = c.clone();
        }
    }
    for row in 0..dm {
        for (k, c) in coeffs_second.iter().enumerate() {
            mat[d2 + row][row + d2 - k] = c.clone();
        }
    }
    let det = ring::bareiss_det(mat);
    if det.is_zero() {
        return Err(Error::DegenerateValue(
            "resultant vanished identically; inputs share a factor".into(),
        ));
    }
    Ok(det)
}

/// Univariate rational function in canonical form: numerator and denominator
/// are integer-coefficient polynomials, coprime, with joint content 1 and a
/// positive leading coefficient on the denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc1 {
    num: Poly1,
    den: Poly1,
}

impl RatFunc1 {
    pub fn new(num: Poly1, den: Poly1) -> Result<RatFunc1> {
        if den.is_zero() {
            return Err(Error::DegenerateMap("identically zero denominator".into()));
        }
        // clear content denominators: (n/α)/(d/β) = (β n)/(α d)
        let n_int = Poly1::new(
            ring::scale(num.int_coeffs(), den.content_den()),
            BigInt::one(),
        );
        let d_int = Poly1::new(
            ring::scale(den.int_coeffs(), num.content_den()),
            BigInt::one(),
        );
        if n_int.is_zero() {
            return Ok(RatFunc1 { num: Poly1::zero(), den: Poly1::constant(&Rat::one()) });
        }
        let g = n_int.gcd(&d_int);
        let mut n = n_int.exact_div(&g).unwrap();
        let mut d = d_int.exact_div(&g).unwrap();
        let mut c = ring::content(n.int_coeffs()).gcd(&ring::content(d.int_coeffs()));
        if d.leading_coeff().numer().is_negative() {
            c = -c;
        }
        let cp = Poly1::new(vec![c], BigInt::one());
        n = n.exact_div(&cp).unwrap();
        d = d.exact_div(&cp).unwrap();
        Ok(RatFunc1 { num: n, den: d })
    }

    pub fn from_poly(p: Poly1) -> RatFunc1 {
        RatFunc1::new(p, Poly1::constant(&Rat::one())).unwrap()
    }

    pub fn var() -> RatFunc1 {
        RatFunc1::from_poly(Poly1::var())
    }

    pub fn constant(r: &Rat) -> RatFunc1 {
        RatFunc1::from_poly(Poly1::constant(r))
    }

    pub fn num(&self) -> &Poly1 {
        &self.num
    }

    pub fn den(&self) -> &Poly1 {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, rhs: &RatFunc1) -> RatFunc1 {
        RatFunc1::new(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
        .expect("denominator product is nonzero")
    }

    pub fn sub(&self, rhs: &RatFunc1) -> RatFunc1 {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> RatFunc1 {
        RatFunc1 { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, rhs: &RatFunc1) -> RatFunc1 {
        RatFunc1::new(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
            .expect("denominator product is nonzero")
    }

    pub fn div(&self, rhs: &RatFunc1) -> Result<RatFunc1> {
        if rhs.is_zero() {
            return Err(Error::DegenerateValue("division by the zero function".into()));
        }
        RatFunc1::new(self.num.mul(&rhs.den), self.den.mul(&rhs.num))
    }

    /// f(g(x)) by homogenized substitution.
    pub fn compose(&self, g: &RatFunc1) -> Result<RatFunc1> {
        let dz = self
            .num
            .degree()
            .unwrap_or(0)
            .max(self.den.degree().unwrap_or(0));
        let gn_pows = power_table(&g.num, dz);
        let gd_pows = power_table(&g.den, dz);
        let subst = |p: &Poly1| -> Poly1 {
            let mut acc = Poly1::zero();
            for (k, c) in p.int_coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let term = gn_pows[k].mul(&gd_pows[dz - k]);
                acc = acc.add(&term.mul_rat(&Rat::from_bigint(c.clone())));
            }
            acc.mul_rat(&Rat::from_bigint(p.content_den().clone()).inv().unwrap())
        };
        RatFunc1::new(subst(&self.num), subst(&self.den))
    }

    pub fn eval<S: Scalar>(&self, x: &S) -> Result<S> {
        let n = self.num.eval(x);
        let d = self.den.eval(x);
        match (n.is_zero(), d.is_zero()) {
            (true, true) => Err(Error::Indeterminate),
            (_, true) => Err(Error::PoleAt),
            _ => n.div(&d),
        }
    }

    /// Projective evaluation on a homogeneous pair (x : y); returns a
    /// homogeneous pair, so poles and the point at infinity need no special
    /// cases. (0 : 0) out means the input was a base point.
    pub fn eval_proj<S: Scalar>(&self, x: &S, y: &S) -> (S, S) {
        let d = self
            .num
            .degree()
            .unwrap_or(0)
            .max(self.den.degree().unwrap_or(0));
        let hom = |p: &Poly1| -> S {
            let mut acc = S::zero();
            let mut xp = S::one();
            let mut pows_y = Vec::with_capacity(d + 1);
            let mut yp = S::one();
            for _ in 0..=d {
                pows_y.push(yp.clone());
                yp = yp.mul(y);
            }
            for k in 0..=d {
                let c = p.int_coeffs().get(k).cloned().unwrap_or_else(BigInt::zero);
                if !c.is_zero() {
                    let term = xp.mul(&pows_y[d - k]).mul(&S::from_rat(&Rat::from_bigint(c)));
                    acc = acc.add(&term);
                }
                xp = xp.mul(x);
            }
            acc
        };
        // shared content denominators scale both coordinates; drop them
        (hom(&self.num).mul(&S::from_rat(&Rat::from_bigint(self.den.content_den().clone()))),
         hom(&self.den).mul(&S::from_rat(&Rat::from_bigint(self.num.content_den().clone()))))
    }
}

fn power_table(p: &Poly1, up_to: usize) -> Vec<Poly1> {
    let mut out = Vec::with_capacity(up_to + 1);
    out.push(Poly1::constant(&Rat::one()));
    for k in 1..=up_to {
        out.push(out[k - 1].mul(p));
    }
    out
}

impl fmt::Display for RatFunc1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == Poly1::constant(&Rat::one()) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussRat;

    fn rat(n: i64, d: i64) -> Rat {
        Rat::new(BigInt::from(n), BigInt::from(d)).unwrap()
    }

    #[test]
    fn canonical_reduction() {
        // (x^2 - 1)/(x - 1) reduces to x + 1
        let f = RatFunc1::new(Poly1::from_int_coeffs(&[-1, 0, 1]), Poly1::from_int_coeffs(&[-1, 1]))
            .unwrap();
        assert_eq!(f, RatFunc1::from_poly(Poly1::from_int_coeffs(&[1, 1])));
        // sign lives in the numerator: 1/(-x) == -1/x
        let g = RatFunc1::new(Poly1::from_int_coeffs(&[1]), Poly1::from_int_coeffs(&[0, -1]))
            .unwrap();
        assert_eq!(g.den().leading_coeff(), Rat::one());
        assert_eq!(g.num().coeff(0), rat(-1, 1));
    }

    #[test]
    fn compose_moebius() {
        // f = 1/(1-x) composed with itself twice is the identity (order 3)
        let one = Poly1::constant(&Rat::one());
        let f = RatFunc1::new(one.clone(), Poly1::from_int_coeffs(&[1, -1])).unwrap();
        let f2 = f.compose(&f).unwrap();
        let f3 = f2.compose(&f).unwrap();
        assert_eq!(f3, RatFunc1::var());
    }

    #[test]
    fn eval_and_poles() {
        let f = RatFunc1::new(Poly1::from_int_coeffs(&[0, 1]), Poly1::from_int_coeffs(&[-2, 1]))
            .unwrap(); // x/(x-2)
        assert_eq!(f.eval(&GaussRat::from_int(3)).unwrap(), GaussRat::from_int(3));
        assert!(matches!(f.eval(&GaussRat::from_int(2)), Err(Error::PoleAt)));
    }

    #[test]
    fn resultant_of_quadratics() {
        // res(x^2-1, x^2-4) = 9 (roots ±1 vs ±2: prod of (r_i - s_j) = (−1)(−3)(3)(1)=9)
        let r = resultant(&Poly1::from_int_coeffs(&[-1, 0, 1]), &Poly1::from_int_coeffs(&[-4, 0, 1]));
        assert_eq!(r, rat(9, 1));
    }

    #[test]
    fn eliminate_golden_rho() {
        // m(t) = t^2 - t - 1, image x = (t-1)^2 / (t+1)^2 has minimal
        // polynomial x^2 - 18x + 1
        let m = Poly1::from_int_coeffs(&[-1, -1, 1]);
        let a = Poly1::from_int_coeffs(&[1, 2, 1]); // (t+1)^2
        let b = Poly1::from_int_coeffs(&[1, -2, 1]); // (t-1)^2
        let res = eliminate_moebius_image(&m, &a, &b).unwrap();
        // normalize sign/content for comparison
        let sf = res.squarefree_part();
        let target = Poly1::from_int_coeffs(&[1, -18, 1]);
        assert!(sf == target || sf == target.neg(), "got {sf}");
    }

    #[test]
    fn complex_roots_of_cyclotomic() {
        let p = Poly1::from_int_coeffs(&[1, -1, 1]); // roots (1±i√3)/2
        let roots = p.complex_roots();
        assert_eq!(roots.len(), 2);
        for r in roots {
            assert!((r.norm() - 1.0).abs() < 1e-9);
            assert!((r.re - 0.5).abs() < 1e-9);
        }
    }
}
