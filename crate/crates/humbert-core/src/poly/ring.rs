//! Generic dense-polynomial helpers over a coefficient ring with exact
//! division and gcds. Instantiated once with `BigInt` (univariate layer)
//! and once with univariate integer polynomials (bivariate layer), which
//! gives the content-and-primitive-part recursion used by the gcd.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

pub trait CoefRing: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Exact division; `None` when the quotient is not in the ring.
    fn exact_div(&self, rhs: &Self) -> Option<Self>;
    /// Gcd in canonical (sign-normalized) form.
    fn gcd(&self, rhs: &Self) -> Self;
    /// True when the canonical sign convention requires negating.
    fn is_negative(&self) -> bool;
}

impl CoefRing for BigInt {
    fn zero() -> Self {
        BigInt::zero()
    }

    fn one() -> Self {
        BigInt::from(1)
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn neg(&self) -> Self {
        -self
    }

    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        if Zero::is_zero(rhs) {
            return None;
        }
        let (q, r) = self.div_rem(rhs);
        if Zero::is_zero(&r) {
            Some(q)
        } else {
            None
        }
    }

    fn gcd(&self, rhs: &Self) -> Self {
        Integer::gcd(self, rhs)
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

/// Degree of a dense coefficient slice, `None` for the zero polynomial.
pub fn deg<R: CoefRing>(p: &[R]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn trim<R: CoefRing>(mut p: Vec<R>) -> Vec<R> {
    while matches!(p.last(), Some(c) if c.is_zero()) {
        p.pop();
    }
    p
}

pub fn add<R: CoefRing>(a: &[R], b: &[R]) -> Vec<R> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let x = a.get(k).cloned().unwrap_or_else(R::zero);
        let y = b.get(k).cloned().unwrap_or_else(R::zero);
        out.push(x.add(&y));
    }
    trim(out)
}

pub fn sub<R: CoefRing>(a: &[R], b: &[R]) -> Vec<R> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let x = a.get(k).cloned().unwrap_or_else(R::zero);
        let y = b.get(k).cloned().unwrap_or_else(R::zero);
        out.push(x.sub(&y));
    }
    trim(out)
}

pub fn mul<R: CoefRing>(a: &[R], b: &[R]) -> Vec<R> {
    if deg(a).is_none() || deg(b).is_none() {
        return Vec::new();
    }
    let mut out = vec![R::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    trim(out)
}

pub fn scale<R: CoefRing>(p: &[R], c: &R) -> Vec<R> {
    trim(p.iter().map(|x| x.mul(c)).collect())
}

pub fn content<R: CoefRing>(p: &[R]) -> R {
    let mut g = R::zero();
    for c in p {
        if !c.is_zero() {
            g = g.gcd(c);
        }
    }
    g
}

pub fn divide_content<R: CoefRing>(p: &[R], c: &R) -> Vec<R> {
    p.iter()
        .map(|x| {
            if x.is_zero() {
                R::zero()
            } else {
                x.exact_div(c).expect("content must divide every coefficient")
            }
        })
        .collect()
}

fn primitive_part<R: CoefRing>(p: Vec<R>) -> Vec<R> {
    match deg(&p) {
        None => p,
        Some(d) => {
            let mut c = content(&p);
            if p[d].is_negative() {
                c = c.neg();
            }
            divide_content(&p, &c)
        }
    }
}

/// Pseudo-remainder of `a` by `b` (deg b <= deg a), multiplying through by
/// the leading coefficient of `b` at each step so all arithmetic stays in R.
fn pseudo_rem<R: CoefRing>(a: &[R], b: &[R]) -> Vec<R> {
    let db = deg(b).expect("pseudo_rem by zero");
    let lc = b[db].clone();
    let mut r = a.to_vec();
    while let Some(dr) = deg(&r) {
        if dr < db {
            break;
        }
        let lead = r[dr].clone();
        let mut shifted = vec![R::zero(); dr - db];
        shifted.extend_from_slice(b);
        // leading terms cancel exactly: lc*lead - lead*lc
        r = sub(&scale(&r, &lc), &scale(&shifted, &lead));
    }
    r
}

/// Gcd by the primitive pseudo-remainder sequence, with the content handled
/// through the ring's own gcd. Result is primitive with canonical sign, up
/// to the content gcd of the inputs which is multiplied back in.
pub fn poly_gcd<R: CoefRing>(a: &[R], b: &[R]) -> Vec<R> {
    if deg(a).is_none() {
        return primitive_part_with_content(b);
    }
    if deg(b).is_none() {
        return primitive_part_with_content(a);
    }
    let ca = content(a);
    let cb = content(b);
    let mut p = primitive_part(a.to_vec());
    let mut q = primitive_part(b.to_vec());
    if deg(&p) < deg(&q) {
        std::mem::swap(&mut p, &mut q);
    }
    loop {
        let r = pseudo_rem(&p, &q);
        if deg(&r).is_none() {
            break;
        }
        p = q;
        q = primitive_part(r);
    }
    let c = ca.gcd(&cb);
    let g = primitive_part(q);
    scale(&g, &c)
}

fn primitive_part_with_content<R: CoefRing>(p: &[R]) -> Vec<R> {
    match deg(p) {
        None => Vec::new(),
        Some(d) => {
            if p[d].is_negative() {
                scale(p, &R::one().neg())
            } else {
                p.to_vec()
            }
        }
    }
}

/// Long division requiring every coefficient quotient to be exact.
pub fn exact_div_poly<R: CoefRing>(a: &[R], b: &[R]) -> Option<Vec<R>> {
    let db = deg(b)?;
    let da = match deg(a) {
        None => return Some(Vec::new()),
        Some(d) => d,
    };
    if da < db {
        return None;
    }
    let mut r = a.to_vec();
    let mut q = vec![R::zero(); da - db + 1];
    let lc = &b[db];
    while let Some(dr) = deg(&r) {
        if dr < db {
            return None; // nonzero remainder
        }
        let c = r[dr].exact_div(lc)?;
        q[dr - db] = c.clone();
        let mut shifted = vec![R::zero(); dr - db];
        shifted.extend_from_slice(b);
        r = sub(&r, &scale(&shifted, &c));
    }
    Some(trim(q))
}

/// Fraction-free (Bareiss) determinant; exact over any ring with exact
/// division. Consumes the matrix.
pub fn bareiss_det<R: CoefRing>(mut m: Vec<Vec<R>>) -> R {
    let n = m.len();
    if n == 0 {
        return R::one();
    }
    let mut sign_flip = false;
    let mut prev = R::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign_flip = !sign_flip;
                }
                None => return R::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = t.exact_div(&prev).expect("Bareiss division is exact");
            }
            m[i][k] = R::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_flip {
        det.neg()
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> Vec<BigInt> {
        trim(v.iter().map(|&c| BigInt::from(c)).collect())
    }

    #[test]
    fn gcd_of_integer_polys() {
        // gcd(x^2-1, x^2-2x+1) = x-1
        assert_eq!(poly_gcd(&p(&[-1, 0, 1]), &p(&[1, -2, 1])), p(&[-1, 1]));
        // gcd(2x, 4) = 2
        assert_eq!(poly_gcd(&p(&[0, 2]), &p(&[4])), p(&[2]));
        // coprime
        assert_eq!(poly_gcd(&p(&[1, 1]), &p(&[2, 0, 1])), p(&[1]));
    }

    #[test]
    fn exact_division() {
        let prod = mul(&p(&[-1, 1]), &p(&[3, 2, 1]));
        assert_eq!(exact_div_poly(&prod, &p(&[-1, 1])), Some(p(&[3, 2, 1])));
        assert_eq!(exact_div_poly(&p(&[1, 0, 1]), &p(&[1, 1])), None);
    }

    #[test]
    fn determinant() {
        let m = vec![
            vec![BigInt::from(1), BigInt::from(2)],
            vec![BigInt::from(3), BigInt::from(4)],
        ];
        assert_eq!(bareiss_det(m), BigInt::from(-2));
        let singular = vec![
            vec![BigInt::from(1), BigInt::from(2)],
            vec![BigInt::from(2), BigInt::from(4)],
        ];
        assert_eq!(bareiss_det(singular), BigInt::from(0));
    }
}
