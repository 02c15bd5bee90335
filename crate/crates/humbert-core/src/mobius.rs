//! The projective line over a scalar regime and Moebius transformations as
//! 2x2 matrices up to scalar. All point arithmetic is homogeneous so the
//! point at infinity needs no special cases anywhere in group code; the
//! canonical matrix scaling (first nonzero entry = 1) makes map equality a
//! plain field-equality test, which the symmetry deduplication relies on.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A point of P^1 as a homogeneous pair, canonicalized to y = 1 for finite
/// points and (1 : 0) for infinity.
#[derive(Clone, Debug)]
pub struct ProjPoint<S: Scalar> {
    x: S,
    y: S,
}

impl<S: Scalar> ProjPoint<S> {
    pub fn finite(v: S) -> ProjPoint<S> {
        ProjPoint { x: v, y: S::one() }
    }

    pub fn infinity() -> ProjPoint<S> {
        ProjPoint { x: S::one(), y: S::zero() }
    }

    pub fn from_homogeneous(x: S, y: S) -> Result<ProjPoint<S>> {
        // scale by the larger coordinate first so the approximate zero test
        // is meaningful, then normalize
        if x.is_zero() && y.is_zero() {
            return Err(Error::DegenerateValue("homogeneous pair (0, 0)".into()));
        }
        let (x, y) = if x.magnitude() >= y.magnitude() {
            let inv = x.inv()?;
            (S::one(), y.mul(&inv))
        } else {
            let inv = y.inv()?;
            (x.mul(&inv), S::one())
        };
        if y.is_zero() {
            Ok(ProjPoint::infinity())
        } else if y.eq_val(&S::one()) {
            Ok(ProjPoint { x, y: S::one() })
        } else {
            Ok(ProjPoint { x: x.div(&y)?, y: S::one() })
        }
    }

    pub fn is_infinity(&self) -> bool {
        self.y.is_zero()
    }

    /// The scalar value of a finite point.
    pub fn value(&self) -> Option<&S> {
        if self.is_infinity() {
            None
        } else {
            Some(&self.x)
        }
    }

    pub fn eq_pt(&self, other: &ProjPoint<S>) -> bool {
        match (self.is_infinity(), other.is_infinity()) {
            (true, true) => true,
            (false, false) => self.x.eq_val(&other.x),
            _ => false,
        }
    }

    /// Infinity sorts after every finite point.
    pub fn canonical_cmp(&self, other: &ProjPoint<S>) -> Ordering {
        match (self.is_infinity(), other.is_infinity()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            (false, false) => self.x.canonical_cmp(&other.x),
        }
    }

    pub fn parse(s: &str) -> Result<ProjPoint<S>> {
        if s == "inf" || s == "oo" {
            return Ok(ProjPoint::infinity());
        }
        Ok(ProjPoint::finite(S::parse(s)?))
    }
}

impl<S: Scalar> fmt::Display for ProjPoint<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinity() {
            write!(f, "inf")
        } else {
            write!(f, "{}", self.x)
        }
    }
}

/// z -> (az + b)/(cz + d) with ad - bc != 0, stored with the first nonzero
/// entry (in the order a, b, c, d) scaled to 1.
#[derive(Clone, Debug)]
pub struct MobiusMap<S: Scalar> {
    pub a: S,
    pub b: S,
    pub c: S,
    pub d: S,
}

impl<S: Scalar> MobiusMap<S> {
    pub fn new(a: S, b: S, c: S, d: S) -> Result<MobiusMap<S>> {
        let det = a.mul(&d).sub(&b.mul(&c));
        // relative determinant test: scale by the largest entry squared
        let scale = a
            .magnitude()
            .max(b.magnitude())
            .max(c.magnitude())
            .max(d.magnitude());
        if det.is_zero() || (!S::EXACT && det.magnitude() <= crate::scalar::epsilon() * scale * scale) {
            return Err(Error::DegenerateMap("singular matrix".into()));
        }
        let mut m = MobiusMap { a, b, c, d };
        m.canonicalize()?;
        Ok(m)
    }

    fn canonicalize(&mut self) -> Result<()> {
        // pre-scale by the entry of largest magnitude so approximate zero
        // tests are stable, then divide by the first nonzero entry
        let mag = |s: &S| s.magnitude();
        let mut pivot = self.a.clone();
        for e in [&self.b, &self.c, &self.d] {
            if mag(e) > mag(&pivot) {
                pivot = e.clone();
            }
        }
        let inv = pivot.inv()?;
        for e in [&mut self.a, &mut self.b, &mut self.c, &mut self.d] {
            *e = e.mul(&inv);
        }
        let first = [&self.a, &self.b, &self.c, &self.d]
            .into_iter()
            .find(|e| !e.is_zero())
            .cloned()
            .ok_or_else(|| Error::DegenerateMap("zero matrix".into()))?;
        let inv = first.inv()?;
        for e in [&mut self.a, &mut self.b, &mut self.c, &mut self.d] {
            *e = if e.is_zero() { S::zero() } else { e.mul(&inv) };
        }
        Ok(())
    }

    pub fn identity() -> MobiusMap<S> {
        MobiusMap { a: S::one(), b: S::zero(), c: S::zero(), d: S::one() }
    }

    /// z -> 1/z
    pub fn inversion() -> MobiusMap<S> {
        MobiusMap { a: S::zero(), b: S::one(), c: S::one(), d: S::zero() }
    }

    pub fn apply(&self, p: &ProjPoint<S>) -> ProjPoint<S> {
        let (x, y) = (&p.x, &p.y);
        let nx = self.a.mul(x).add(&self.b.mul(y));
        let ny = self.c.mul(x).add(&self.d.mul(y));
        ProjPoint::from_homogeneous(nx, ny)
            .expect("invertible matrix maps valid points to valid points")
    }

    /// (self . rhs)(p) = self(rhs(p))
    pub fn compose(&self, rhs: &MobiusMap<S>) -> MobiusMap<S> {
        MobiusMap::new(
            self.a.mul(&rhs.a).add(&self.b.mul(&rhs.c)),
            self.a.mul(&rhs.b).add(&self.b.mul(&rhs.d)),
            self.c.mul(&rhs.a).add(&self.d.mul(&rhs.c)),
            self.c.mul(&rhs.b).add(&self.d.mul(&rhs.d)),
        )
        .expect("product of invertible matrices is invertible")
    }

    pub fn inverse(&self) -> MobiusMap<S> {
        MobiusMap::new(self.d.clone(), self.b.neg(), self.c.neg(), self.a.clone())
            .expect("adjugate of an invertible matrix is invertible")
    }

    pub fn eq_map(&self, other: &MobiusMap<S>) -> bool {
        self.a.eq_val(&other.a)
            && self.b.eq_val(&other.b)
            && self.c.eq_val(&other.c)
            && self.d.eq_val(&other.d)
    }

    pub fn is_identity(&self) -> bool {
        self.eq_map(&MobiusMap::identity())
    }

    pub fn canonical_cmp(&self, other: &MobiusMap<S>) -> Ordering {
        self.a
            .canonical_cmp(&other.a)
            .then_with(|| self.b.canonical_cmp(&other.b))
            .then_with(|| self.c.canonical_cmp(&other.c))
            .then_with(|| self.d.canonical_cmp(&other.d))
    }

    /// Least n >= 1 with m^n projectively the identity, searched up to the
    /// stated bound (10 suffices here: the symmetry groups that occur have
    /// element orders in {1, 2, 3, 4, 5, 6, 10}... elements of order at
    /// most 5 in the cyclic parts, and the bound leaves headroom).
    pub fn order(&self, bound: u32) -> Option<u32> {
        let mut cur = self.clone();
        for n in 1..=bound {
            if cur.is_identity() {
                return Some(n);
            }
            cur = self.compose(&cur);
        }
        None
    }

    /// The matrix sending (p1, p2, p3) to (inf, 0, 1); entries are
    /// polynomial in the homogeneous coordinates, so no division happens.
    fn to_inf01(p1: &ProjPoint<S>, p2: &ProjPoint<S>, p3: &ProjPoint<S>) -> Result<MobiusMap<S>> {
        let k1 = p1.x.mul(&p3.y).sub(&p3.x.mul(&p1.y));
        let k2 = p2.x.mul(&p3.y).sub(&p3.x.mul(&p2.y));
        MobiusMap::new(
            p2.y.mul(&k1),
            p2.x.mul(&k1).neg(),
            p1.y.mul(&k2),
            p1.x.mul(&k2).neg(),
        )
    }

    /// The unique map with src[i] -> dst[i]; anchors must be pairwise
    /// distinct on each side.
    pub fn from_triples(src: [&ProjPoint<S>; 3], dst: [&ProjPoint<S>; 3]) -> Result<MobiusMap<S>> {
        for pts in [&src, &dst] {
            for i in 0..3 {
                for j in i + 1..3 {
                    if pts[i].eq_pt(pts[j]) {
                        return Err(Error::DegenerateTriple);
                    }
                }
            }
        }
        let ns = MobiusMap::to_inf01(src[0], src[1], src[2])
            .map_err(|_| Error::DegenerateTriple)?;
        let nd = MobiusMap::to_inf01(dst[0], dst[1], dst[2])
            .map_err(|_| Error::DegenerateTriple)?;
        Ok(nd.inverse().compose(&ns))
    }
}

impl<S: Scalar> fmt::Display for MobiusMap<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}; {}, {}]", self.a, self.b, self.c, self.d)
    }
}

/// Image of p4 under the map sending (p1, p2, p3) to (inf, 0, 1).
pub fn cross_ratio<S: Scalar>(
    p1: &ProjPoint<S>,
    p2: &ProjPoint<S>,
    p3: &ProjPoint<S>,
    p4: &ProjPoint<S>,
) -> Result<ProjPoint<S>> {
    for (a, b) in [(p1, p2), (p1, p3), (p2, p3)] {
        if a.eq_pt(b) {
            return Err(Error::DegenerateTriple);
        }
    }
    let m = MobiusMap::to_inf01(p1, p2, p3).map_err(|_| Error::DegenerateTriple)?;
    Ok(m.apply(p4))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{ApproxC, GaussRat};

    fn fin(n: i64) -> ProjPoint<GaussRat> {
        ProjPoint::finite(GaussRat::from_int(n))
    }

    fn finq(s: &str) -> ProjPoint<GaussRat> {
        ProjPoint::finite(GaussRat::parse(s).unwrap())
    }

    #[test]
    fn inversion_swaps_zero_and_infinity() {
        let inv = MobiusMap::<GaussRat>::inversion();
        assert!(inv.apply(&fin(0)).is_infinity());
        assert!(inv.apply(&ProjPoint::infinity()).eq_pt(&fin(0)));
        assert!(inv.apply(&fin(2)).eq_pt(&finq("1/2")));
        let id = MobiusMap::<GaussRat>::identity();
        assert!(id.apply(&finq("-3/7")).eq_pt(&finq("-3/7")));
    }

    #[test]
    fn triples_constructor() {
        let inf = ProjPoint::<GaussRat>::infinity();
        // (inf, 0, 1) -> (inf, 0, 1) is the identity
        let m = MobiusMap::from_triples([&inf, &fin(0), &fin(1)], [&inf, &fin(0), &fin(1)]).unwrap();
        assert!(m.is_identity());
        // (0, inf, 1) -> (inf, 0, 1) is z -> 1/z
        let m = MobiusMap::from_triples([&fin(0), &inf, &fin(1)], [&inf, &fin(0), &fin(1)]).unwrap();
        assert!(m.eq_map(&MobiusMap::inversion()));
        // repeated anchor
        assert!(matches!(
            MobiusMap::from_triples([&fin(0), &fin(0), &fin(1)], [&inf, &fin(0), &fin(1)]),
            Err(Error::DegenerateTriple)
        ));
    }

    #[test]
    fn triples_reproduce_all_anchor_images() {
        let src = [finq("2"), finq("-1/3"), finq("i")];
        let dst = [finq("5/2"), ProjPoint::infinity(), finq("1-i")];
        let m = MobiusMap::from_triples(
            [&src[0], &src[1], &src[2]],
            [&dst[0], &dst[1], &dst[2]],
        )
        .unwrap();
        for k in 0..3 {
            assert!(m.apply(&src[k]).eq_pt(&dst[k]), "anchor {k}");
        }
    }

    #[test]
    fn orders() {
        assert_eq!(MobiusMap::<GaussRat>::inversion().order(10), Some(2));
        // z -> 1/(1-z) has order 3
        let l = MobiusMap::new(
            GaussRat::zero(),
            GaussRat::one(),
            GaussRat::from_int(-1),
            GaussRat::one(),
        )
        .unwrap();
        assert_eq!(l.order(10), Some(3));
        // z -> z + 1 is parabolic
        let t = MobiusMap::new(GaussRat::one(), GaussRat::one(), GaussRat::zero(), GaussRat::one())
            .unwrap();
        assert_eq!(t.order(10), None);
    }

    #[test]
    fn cross_ratio_examples() {
        let inf = ProjPoint::<GaussRat>::infinity();
        let x = finq("7/3");
        assert!(cross_ratio(&inf, &fin(0), &fin(1), &x).unwrap().eq_pt(&x));
        assert!(cross_ratio(&fin(0), &inf, &fin(1), &fin(2))
            .unwrap()
            .eq_pt(&finq("1/2")));
        assert!(cross_ratio(&inf, &inf, &fin(1), &fin(2)).is_err());
    }

    #[test]
    fn approx_infinity_equals_infinity() {
        let a = ProjPoint::<ApproxC>::infinity();
        let b = ProjPoint::<ApproxC>::from_homogeneous(ApproxC::new(3.0, 0.0), ApproxC::new(0.0, 0.0))
            .unwrap();
        assert!(a.eq_pt(&b));
        assert!(!a.eq_pt(&ProjPoint::finite(ApproxC::new(1.0, 0.0))));
    }

    #[test]
    fn composition_inverse_gives_identity() {
        let m = MobiusMap::new(
            GaussRat::from_int(2),
            GaussRat::parse("1-i").unwrap(),
            GaussRat::from_int(1),
            GaussRat::from_int(3),
        )
        .unwrap();
        assert!(m.compose(&m.inverse()).is_identity());
        assert!(m.inverse().compose(&m).is_identity());
    }
}
