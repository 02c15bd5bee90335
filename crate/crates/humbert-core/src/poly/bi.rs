//! Sparse bivariate polynomials over Q and rational functions in canonical
//! form. These carry the group elements of the parameter plane and the
//! averaged invariant map. The canonical form is pinned down so that map
//! equality is structural equality: integer coefficients, coprime numerator
//! and denominator, joint content 1, and a positive leading denominator
//! coefficient under graded-lexicographic order with z before w.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::ring;
use super::uni::Poly1;
use crate::error::{Error, Result};
use crate::scalar::{Rat, Scalar};

/// Exponent pair: (z-degree, w-degree).
pub type Exp = (u32, u32);

/// Sparse bivariate polynomial: integer coefficients divided by one
/// positive content denominator. No zero coefficients are stored and
/// gcd(coefficient content, denominator) = 1; zero is the empty map.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly2 {
    terms: BTreeMap<Exp, BigInt>,
    den: BigInt,
}

impl Poly2 {
    pub fn new(terms: BTreeMap<Exp, BigInt>, den: BigInt) -> Poly2 {
        assert!(!den.is_zero(), "content denominator must be nonzero");
        let mut terms: BTreeMap<Exp, BigInt> =
            terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let mut den = den;
        if den.is_negative() {
            den = -den;
            for c in terms.values_mut() {
                *c = -std::mem::take(c);
            }
        }
        let mut content = BigInt::zero();
        for c in terms.values() {
            content = content.gcd(c);
        }
        let g = content.gcd(&den);
        if !g.is_zero() && !g.is_one() {
            for c in terms.values_mut() {
                *c = &*c / &g;
            }
            den = &den / &g;
        }
        if terms.is_empty() {
            den = BigInt::one();
        }
        Poly2 { terms, den }
    }

    pub fn zero() -> Poly2 {
        Poly2 { terms: BTreeMap::new(), den: BigInt::one() }
    }

    pub fn constant(r: &Rat) -> Poly2 {
        let mut terms = BTreeMap::new();
        terms.insert((0, 0), r.numer().clone());
        Poly2::new(terms, r.denom().clone())
    }

    pub fn one() -> Poly2 {
        Poly2::constant(&Rat::one())
    }

    pub fn var_z() -> Poly2 {
        Poly2::from_monomials(&[(1, 0, 1)])
    }

    pub fn var_w() -> Poly2 {
        Poly2::from_monomials(&[(0, 1, 1)])
    }

    pub fn from_monomials(m: &[(u32, u32, i64)]) -> Poly2 {
        let mut terms = BTreeMap::new();
        for &(i, j, c) in m {
            let e = terms.entry((i, j)).or_insert_with(BigInt::zero);
            *e += BigInt::from(c);
        }
        Poly2::new(terms, BigInt::one())
    }

    pub fn from_big_monomials(m: Vec<(Exp, BigInt)>) -> Poly2 {
        let mut terms = BTreeMap::new();
        for (e, c) in m {
            let entry = terms.entry(e).or_insert_with(BigInt::zero);
            *entry += c;
        }
        Poly2::new(terms, BigInt::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn content_den(&self) -> &BigInt {
        &self.den
    }

    pub fn deg_z(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, _)| i).max()
    }

    pub fn deg_w(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, j)| j).max()
    }

    /// Leading exponent under graded-lex with z > w.
    pub fn grlex_lead(&self) -> Option<Exp> {
        self.terms
            .keys()
            .copied()
            .max_by_key(|&(i, j)| (i + j, i))
    }

    pub fn grlex_lead_coeff(&self) -> Rat {
        match self.grlex_lead() {
            Some(e) => Rat::new(self.terms[&e].clone(), self.den.clone()).unwrap(),
            None => Rat::zero(),
        }
    }

    pub fn add(&self, rhs: &Poly2) -> Poly2 {
        let mut terms = BTreeMap::new();
        for (&e, c) in &self.terms {
            terms.insert(e, c * &rhs.den);
        }
        for (&e, c) in &rhs.terms {
            let entry = terms.entry(e).or_insert_with(BigInt::zero);
            *entry += c * &self.den;
        }
        Poly2::new(terms, &self.den * &rhs.den)
    }

    pub fn sub(&self, rhs: &Poly2) -> Poly2 {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Poly2 {
        Poly2 {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, rhs: &Poly2) -> Poly2 {
        let mut terms: BTreeMap<Exp, BigInt> = BTreeMap::new();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &rhs.terms {
                let e = (i1 + i2, j1 + j2);
                let entry = terms.entry(e).or_insert_with(BigInt::zero);
                *entry += c1 * c2;
            }
        }
        Poly2::new(terms, &self.den * &rhs.den)
    }

    pub fn mul_rat(&self, r: &Rat) -> Poly2 {
        let terms = self.terms.iter().map(|(&e, c)| (e, c * r.numer())).collect();
        Poly2::new(terms, &self.den * r.denom())
    }

    pub fn pow(&self, mut n: u32) -> Poly2 {
        let mut base = self.clone();
        let mut acc = Poly2::one();
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

    /// Swap the two variables.
    pub fn swap_vars(&self) -> Poly2 {
        Poly2 {
            terms: self.terms.iter().map(|(&(i, j), c)| ((j, i), c.clone())).collect(),
            den: self.den.clone(),
        }
    }

    /// Recursive view: dense in the main variable with univariate
    /// coefficients in the other. Content denominators are dropped (callers
    /// work with the integer part).
    fn to_rec(&self, main_z: bool) -> Vec<Poly1> {
        let main_deg = if main_z { self.deg_z() } else { self.deg_w() };
        let d = match main_deg {
            None => return Vec::new(),
            Some(d) => d as usize,
        };
        let mut buckets: Vec<BTreeMap<u32, BigInt>> = vec![BTreeMap::new(); d + 1];
        for (&(i, j), c) in &self.terms {
            let (m, o) = if main_z { (i, j) } else { (j, i) };
            buckets[m as usize].insert(o, c.clone());
        }
        buckets
            .into_iter()
            .map(|b| {
                let deg = b.keys().max().copied().unwrap_or(0) as usize;
                let mut coeffs = vec![BigInt::zero(); deg + 1];
                for (k, c) in b {
                    coeffs[k as usize] = c;
                }
                Poly1::new(coeffs, BigInt::one())
            })
            .collect()
    }

    fn from_rec(rec: &[Poly1], main_z: bool) -> Poly2 {
        let mut terms = BTreeMap::new();
        let mut den = BigInt::one();
        for p in rec {
            den = &den / den.gcd(p.content_den()) * p.content_den();
        }
        for (m, p) in rec.iter().enumerate() {
            let scale = &den / p.content_den();
            for (o, c) in p.int_coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let e = if main_z { (m as u32, o as u32) } else { (o as u32, m as u32) };
                terms.insert(e, c * &scale);
            }
        }
        Poly2::new(terms, den)
    }

    /// Gcd with positive leading coefficient under graded-lex; recursion on
    /// the variable of higher degree via primitive pseudo-remainders.
    pub fn gcd(&self, rhs: &Poly2) -> Result<Poly2> {
        if self.is_zero() && rhs.is_zero() {
            return Err(Error::DegenerateValue("gcd(0, 0) is undefined".into()));
        }
        let dz = self.deg_z().unwrap_or(0).max(rhs.deg_z().unwrap_or(0));
        let dw = self.deg_w().unwrap_or(0).max(rhs.deg_w().unwrap_or(0));
        let main_z = dz >= dw;
        let a = self.to_rec(main_z);
        let b = rhs.to_rec(main_z);
        let g = ring::poly_gcd(&a, &b);
        let mut out = Poly2::from_rec(&g, main_z);
        // canonical sign under graded-lex
        if out.grlex_lead_coeff().numer().is_negative() {
            out = out.neg();
        }
        Ok(out)
    }

    /// Exact division of the integer parts; `None` when not divisible.
    pub fn exact_div(&self, rhs: &Poly2) -> Option<Poly2> {
        if rhs.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Poly2::zero());
        }
        let dz = self.deg_z().unwrap_or(0).max(rhs.deg_z().unwrap_or(0));
        let dw = self.deg_w().unwrap_or(0).max(rhs.deg_w().unwrap_or(0));
        let main_z = dz >= dw;
        let a = self.to_rec(main_z);
        let b = rhs.to_rec(main_z);
        let q = ring::exact_div_poly(&a, &b)?;
        let mut out = Poly2::from_rec(&q, main_z);
        out = out.mul_rat(&Rat::new(rhs.den.clone(), self.den.clone()).unwrap());
        Some(out)
    }

    pub fn eval<S: Scalar>(&self, z: &S, w: &S) -> S {
        let dz = self.deg_z().unwrap_or(0) as usize;
        let dw = self.deg_w().unwrap_or(0) as usize;
        let zp = scalar_powers(z, dz);
        let wp = scalar_powers(w, dw);
        let mut acc = S::zero();
        for (&(i, j), c) in &self.terms {
            let term = zp[i as usize]
                .mul(&wp[j as usize])
                .mul(&S::from_rat(&Rat::from_bigint(c.clone())));
            acc = acc.add(&term);
        }
        acc.mul(&S::from_rat(&Rat::from_bigint(self.den.clone()).inv().unwrap()))
    }

    pub fn eval_rat(&self, z: &Rat, w: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for (&(i, j), c) in &self.terms {
            let mut t = Rat::from_bigint(c.clone());
            for _ in 0..i {
                t = t.mul(z);
            }
            for _ in 0..j {
                t = t.mul(w);
            }
            acc = acc.add(&t);
        }
        acc.div(&Rat::from_bigint(self.den.clone())).unwrap()
    }
}

pub(crate) fn scalar_powers<S: Scalar>(x: &S, up_to: usize) -> Vec<S> {
    let mut out = Vec::with_capacity(up_to + 1);
    out.push(S::one());
    for k in 1..=up_to {
        let next = out[k - 1].mul(x);
        out.push(next);
    }
    out
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut exps: Vec<Exp> = self.terms.keys().copied().collect();
        exps.sort_by_key(|&(i, j)| std::cmp::Reverse((i + j, i)));
        let mut first = true;
        for e in exps {
            let c = &self.terms[&e];
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
            let (i, j) = e;
            if mag.is_one() && (i, j) == (0, 0) {
                write!(f, "1")?;
            } else {
                if !mag.is_one() || (i, j) == (0, 0) {
                    write!(f, "{}", mag)?;
                }
                match i {
                    0 => {}
                    1 => write!(f, "z")?,
                    _ => write!(f, "z^{}", i)?,
                }
                match j {
                    0 => {}
                    1 => write!(f, "w")?,
                    _ => write!(f, "w^{}", j)?,
                }
            }
        }
        if !self.den.is_one() {
            write!(f, " (/{})", self.den)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Bivariate rational function in canonical form (see module docs).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc2 {
    num: Poly2,
    den: Poly2,
}

impl RatFunc2 {
    pub fn new(num: Poly2, den: Poly2) -> Result<RatFunc2> {
        if den.is_zero() {
            return Err(Error::DegenerateMap("identically zero denominator".into()));
        }
        // clear content denominators: (n/α)/(d/β) = (β n)/(α d)
        let n_int = num.mul_rat(&Rat::from_bigint(num.content_den().clone())) // now integer
            .mul_rat(&Rat::from_bigint(den.content_den().clone()));
        let d_int = den.mul_rat(&Rat::from_bigint(den.content_den().clone()))
            .mul_rat(&Rat::from_bigint(num.content_den().clone()));
        debug_assert!(n_int.content_den().is_one() && d_int.content_den().is_one());
        if n_int.is_zero() {
            return Ok(RatFunc2 { num: Poly2::zero(), den: Poly2::one() });
        }
        let g = n_int.gcd(&d_int)?;
        let mut n = n_int.exact_div(&g).expect("gcd divides numerator");
        let mut d = d_int.exact_div(&g).expect("gcd divides denominator");
        let mut joint = BigInt::zero();
        for (_, c) in n.terms() {
            joint = joint.gcd(c);
        }
        for (_, c) in d.terms() {
            joint = joint.gcd(c);
        }
        if d.grlex_lead_coeff().numer().is_negative() {
            joint = -joint;
        }
        let inv = Rat::from_bigint(joint).inv().unwrap();
        n = n.mul_rat(&inv);
        d = d.mul_rat(&inv);
        Ok(RatFunc2 { num: n, den: d })
    }

    pub fn from_poly(p: Poly2) -> RatFunc2 {
        RatFunc2::new(p, Poly2::one()).expect("denominator 1")
    }

    pub fn var_z() -> RatFunc2 {
        RatFunc2::from_poly(Poly2::var_z())
    }

    pub fn var_w() -> RatFunc2 {
        RatFunc2::from_poly(Poly2::var_w())
    }

    pub fn constant(r: &Rat) -> RatFunc2 {
        RatFunc2::from_poly(Poly2::constant(r))
    }

    pub fn num(&self) -> &Poly2 {
        &self.num
    }

    pub fn den(&self) -> &Poly2 {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, rhs: &RatFunc2) -> RatFunc2 {
        // lcm-style denominator keeps the gcd work small in long sums
        let g = match self.den.gcd(&rhs.den) {
            Ok(g) => g,
            Err(_) => Poly2::one(),
        };
        let rd = rhs.den.exact_div(&g).unwrap_or_else(|| rhs.den.clone());
        let ld = self.den.exact_div(&g).unwrap_or_else(|| self.den.clone());
        let num = self.num.mul(&rd).add(&rhs.num.mul(&ld));
        let den = self.den.mul(&rd);
        RatFunc2::new(num, den).expect("denominator product is nonzero")
    }

    pub fn sub(&self, rhs: &RatFunc2) -> RatFunc2 {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> RatFunc2 {
        RatFunc2 { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, rhs: &RatFunc2) -> RatFunc2 {
        RatFunc2::new(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
            .expect("denominator product is nonzero")
    }

    pub fn div(&self, rhs: &RatFunc2) -> Result<RatFunc2> {
        if rhs.is_zero() {
            return Err(Error::DegenerateValue("division by the zero function".into()));
        }
        RatFunc2::new(self.num.mul(&rhs.den), self.den.mul(&rhs.num))
    }

    pub fn pow(&self, n: u32) -> RatFunc2 {
        RatFunc2 { num: self.num.pow(n), den: self.den.pow(n) }
    }

    /// f(g1(z,w), g2(z,w)) for a birational coordinate pair.
    pub fn compose(&self, g: &(RatFunc2, RatFunc2)) -> Result<RatFunc2> {
        let dz = self
            .num
            .deg_z()
            .unwrap_or(0)
            .max(self.den.deg_z().unwrap_or(0)) as usize;
        let dw = self
            .num
            .deg_w()
            .unwrap_or(0)
            .max(self.den.deg_w().unwrap_or(0)) as usize;
        let n1 = poly_powers(&g.0.num, dz);
        let d1 = poly_powers(&g.0.den, dz);
        let n2 = poly_powers(&g.1.num, dw);
        let d2 = poly_powers(&g.1.den, dw);
        let subst = |p: &Poly2| -> Poly2 {
            let mut acc = Poly2::zero();
            for (&(i, j), c) in p.terms.iter() {
                let t = n1[i as usize]
                    .mul(&d1[dz - i as usize])
                    .mul(&n2[j as usize])
                    .mul(&d2[dw - j as usize]);
                acc = acc.add(&t.mul_rat(&Rat::from_bigint(c.clone())));
            }
            acc.mul_rat(&Rat::from_bigint(p.den.clone()).inv().unwrap())
        };
        let den = subst(&self.den);
        if den.is_zero() {
            return Err(Error::DegenerateMap(
                "substitution makes the denominator identically zero".into(),
            ));
        }
        RatFunc2::new(subst(&self.num), den)
    }

    /// Exact evaluation. Poles and base points are reported, never guessed.
    pub fn eval<S: Scalar>(&self, z: &S, w: &S) -> Result<S> {
        let n = self.num.eval(z, w);
        let d = self.den.eval(z, w);
        match (n.is_zero(), d.is_zero()) {
            (true, true) => Err(Error::Indeterminate),
            (_, true) => Err(Error::PoleAt),
            _ => n.div(&d),
        }
    }

    /// Both coordinates swapped: f(w, z).
    pub fn swap_vars(&self) -> RatFunc2 {
        RatFunc2::new(self.num.swap_vars(), self.den.swap_vars()).expect("nonzero denominator")
    }
}

fn poly_powers(p: &Poly2, up_to: usize) -> Vec<Poly2> {
    let mut out = Vec::with_capacity(up_to + 1);
    out.push(Poly2::one());
    for k in 1..=up_to {
        let next = out[k - 1].mul(p);
        out.push(next);
    }
    out
}

impl fmt::Display for RatFunc2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == Poly2::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussRat;

    fn zv() -> Poly2 {
        Poly2::var_z()
    }

    fn wv() -> Poly2 {
        Poly2::var_w()
    }

    #[test]
    fn product_of_conjugates() {
        let p = zv().add(&wv()).mul(&zv().sub(&wv()));
        assert_eq!(p, Poly2::from_monomials(&[(2, 0, 1), (0, 2, -1)]));
    }

    #[test]
    fn additive_identity() {
        let p = Poly2::from_monomials(&[(3, 1, 5), (0, 0, -2)]);
        assert_eq!(p.add(&Poly2::zero()), p);
    }

    #[test]
    fn branch_divisor_degree() {
        // (z-1)^4 z^4 (z-w)^4 (w-1)^4 w^4 has z-degree 12
        let zm1 = zv().sub(&Poly2::one());
        let wm1 = wv().sub(&Poly2::one());
        let zmw = zv().sub(&wv());
        let r1 = zm1.pow(4).mul(&zv().pow(4)).mul(&zmw.pow(4)).mul(&wm1.pow(4)).mul(&wv().pow(4));
        assert_eq!(r1.deg_z(), Some(12));
        assert_eq!(r1.deg_w(), Some(12));
        assert_eq!(r1.grlex_lead(), Some((12, 8)));
        assert_eq!(r1.grlex_lead_coeff(), Rat::one());
    }

    #[test]
    fn gcd_examples() {
        let zmw = zv().sub(&wv());
        let z2mw2 = zv().pow(2).sub(&wv().pow(2));
        assert_eq!(z2mw2.gcd(&zmw).unwrap(), zmw);
        let p = Poly2::from_monomials(&[(5, 2, 3), (1, 1, -7)]);
        assert_eq!(p.gcd(&Poly2::one()).unwrap(), Poly2::one());
        // gcd((z-1)^2 w, (z-1) w^2) = (z-1) w
        let zm1 = zv().sub(&Poly2::one());
        let a = zm1.pow(2).mul(&wv());
        let b = zm1.mul(&wv().pow(2));
        assert_eq!(a.gcd(&b).unwrap(), zm1.mul(&wv()));
        assert!(Poly2::zero().gcd(&Poly2::zero()).is_err());
    }

    #[test]
    fn compose_examples() {
        let inv_pair = (
            RatFunc2::new(Poly2::one(), zv()).unwrap(),
            RatFunc2::new(Poly2::one(), wv()).unwrap(),
        );
        // f = z composed with (1/z, 1/w) is 1/z
        let f = RatFunc2::var_z();
        assert_eq!(f.compose(&inv_pair).unwrap(), inv_pair.0);
        // f = zw composed with (1/z, 1/w) is 1/(zw)
        let zw = RatFunc2::from_poly(zv().mul(&wv()));
        assert_eq!(
            zw.compose(&inv_pair).unwrap(),
            RatFunc2::new(Poly2::one(), zv().mul(&wv())).unwrap()
        );
        // z^4 composed with first coordinate w/(w-1) gives w^4/(w-1)^4
        let wm1 = wv().sub(&Poly2::one());
        let b1 = RatFunc2::new(wv(), wm1.clone()).unwrap();
        let z4 = RatFunc2::from_poly(zv().pow(4));
        let expect = RatFunc2::new(wv().pow(4), wm1.pow(4)).unwrap();
        assert_eq!(z4.compose(&(b1, RatFunc2::var_w())).unwrap(), expect);
    }

    #[test]
    fn eval_examples() {
        let two = GaussRat::from_int(2);
        let three = GaussRat::from_int(3);
        let f = RatFunc2::new(zv(), wv()).unwrap();
        assert_eq!(
            f.eval(&two, &three).unwrap(),
            GaussRat::parse("2/3").unwrap()
        );
        let g = RatFunc2::new(Poly2::one(), zv().sub(&wv())).unwrap();
        assert!(matches!(g.eval(&two, &two), Err(Error::PoleAt)));
        // coprime num/den sharing a common zero: (z-2)/(w-2) at (2,2)
        let h = RatFunc2::new(
            zv().sub(&Poly2::constant(&Rat::from_int(2))),
            wv().sub(&Poly2::constant(&Rat::from_int(2))),
        )
        .unwrap();
        assert!(matches!(h.eval(&two, &two), Err(Error::Indeterminate)));
        // (z^2-w^2)/(z-w) reduces to z+w, so evaluation at (2,2) gives 4
        let k = RatFunc2::new(zv().pow(2).sub(&wv().pow(2)), zv().sub(&wv())).unwrap();
        assert_eq!(k, RatFunc2::from_poly(zv().add(&wv())));
        assert_eq!(k.eval(&two, &two).unwrap(), GaussRat::from_int(4));
    }

    #[test]
    fn canonicalization_is_confluent_on_simple_paths() {
        // (a/b + c/d) and ((ad+cb)/(bd)) produce identical stored forms
        let a = RatFunc2::new(zv(), wv().add(&Poly2::one())).unwrap();
        let b = RatFunc2::new(wv(), zv().sub(&wv())).unwrap();
        let lhs = a.add(&b);
        let rhs = RatFunc2::new(
            a.num().mul(b.den()).add(&b.num().mul(a.den())),
            a.den().mul(b.den()),
        )
        .unwrap();
        assert_eq!(lhs, rhs);
    }
}
