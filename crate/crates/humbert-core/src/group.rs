//! The group of birational transformations of the parameter plane generated
//! by A(z,w) = (1/z, 1/w) and B(z,w) = (w/(w-1), w/(w-z)). It is isomorphic
//! to the symmetric group on the five marked points (inf, 0, 1, z, w); two
//! parameter pairs describe conformally equivalent curves exactly when some
//! element maps one to the other.
//!
//! Elements are stored as canonical rational-map pairs because the
//! invariant averaging needs the maps themselves; an independent
//! permutation model (cross-ratio renormalization of the five marked
//! points) is kept as an oracle to cross-validate composition conventions.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::exec::{self, Strategy};
use crate::mobius::{cross_ratio, ProjPoint};
use crate::poly::{Poly2, RatFunc2};
use crate::scalar::Scalar;

/// An ordered parameter pair (z, w). Membership in the Torelli space
/// requires z, w outside {0, 1} (and implicitly finite) with z != w.
#[derive(Clone, Debug)]
pub struct ParamPair<S: Scalar> {
    pub z: S,
    pub w: S,
}

impl<S: Scalar> ParamPair<S> {
    pub fn new(z: S, w: S) -> ParamPair<S> {
        ParamPair { z, w }
    }

    pub fn in_torelli(&self) -> bool {
        let one = S::one();
        !self.z.is_zero()
            && !self.w.is_zero()
            && !self.z.eq_val(&one)
            && !self.w.eq_val(&one)
            && !self.z.eq_val(&self.w)
    }

    pub fn ensure_torelli(&self) -> Result<()> {
        if self.in_torelli() {
            Ok(())
        } else {
            Err(Error::NotInTorelli(format!("({}, {})", self.z, self.w)))
        }
    }

    pub fn eq_pair(&self, other: &ParamPair<S>) -> bool {
        self.z.eq_val(&other.z) && self.w.eq_val(&other.w)
    }

    pub fn canonical_cmp(&self, other: &ParamPair<S>) -> Ordering {
        self.z
            .canonical_cmp(&other.z)
            .then_with(|| self.w.canonical_cmp(&other.w))
    }

    pub fn swap(&self) -> ParamPair<S> {
        ParamPair { z: self.w.clone(), w: self.z.clone() }
    }
}

impl<S: Scalar> fmt::Display for ParamPair<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.z, self.w)
    }
}

/// One group element: the two coordinates of the birational map, in
/// canonical form, plus the word in the generators that produced it
/// (letters compose right-to-left: "BA" applies A first). The word is
/// bookkeeping only and does not participate in equality.
#[derive(Clone)]
pub struct GroupElem {
    first: RatFunc2,
    second: RatFunc2,
    word: String,
}

impl PartialEq for GroupElem {
    fn eq(&self, other: &Self) -> bool {
        self.first == other.first && self.second == other.second
    }
}

impl Eq for GroupElem {}

impl std::hash::Hash for GroupElem {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.first.hash(state);
        self.second.hash(state);
    }
}

impl fmt::Debug for GroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ({}, {})", self.word, self.first, self.second)
    }
}

impl GroupElem {
    pub fn identity() -> GroupElem {
        GroupElem { first: RatFunc2::var_z(), second: RatFunc2::var_w(), word: "I".into() }
    }

    /// A(z, w) = (1/z, 1/w)
    pub fn gen_a() -> GroupElem {
        GroupElem {
            first: RatFunc2::new(Poly2::one(), Poly2::var_z()).unwrap(),
            second: RatFunc2::new(Poly2::one(), Poly2::var_w()).unwrap(),
            word: "A".into(),
        }
    }

    /// B(z, w) = (w/(w-1), w/(w-z))
    pub fn gen_b() -> GroupElem {
        let w = Poly2::var_w;
        let z = Poly2::var_z;
        GroupElem {
            first: RatFunc2::new(w(), w().sub(&Poly2::one())).unwrap(),
            second: RatFunc2::new(w(), w().sub(&z())).unwrap(),
            word: "B".into(),
        }
    }

    pub fn word(&self) -> &str {
        &self.word
    }

    pub fn coords(&self) -> (&RatFunc2, &RatFunc2) {
        (&self.first, &self.second)
    }

    pub fn is_identity(&self) -> bool {
        *self == GroupElem::identity()
    }

    /// (self . rhs)(p) = self(rhs(p))
    pub fn compose(&self, rhs: &GroupElem) -> Result<GroupElem> {
        let g = (rhs.first.clone(), rhs.second.clone());
        let word = if rhs.word == "I" {
            self.word.clone()
        } else if self.word == "I" {
            rhs.word.clone()
        } else {
            format!("{}{}", self.word, rhs.word)
        };
        Ok(GroupElem {
            first: self.first.compose(&g)?,
            second: self.second.compose(&g)?,
            word,
        })
    }

    pub fn apply<S: Scalar>(&self, p: &ParamPair<S>) -> Result<ParamPair<S>> {
        let z = self.first.eval(&p.z, &p.w)?;
        let w = self.second.eval(&p.z, &p.w)?;
        Ok(ParamPair { z, w })
    }

    /// Least n with self^n = identity, searched up to 10 compositions.
    pub fn order(&self) -> Option<u32> {
        let mut cur = self.clone();
        for n in 1..=10 {
            if cur.is_identity() {
                return Some(n);
            }
            cur = self.compose(&cur).ok()?;
        }
        None
    }
}

/// A permutation of the five marked-point slots (inf, 0, 1, z, w):
/// slot i receives the point from slot perm[i].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PermAction(pub [usize; 5]);

impl PermAction {
    pub fn identity() -> PermAction {
        PermAction([0, 1, 2, 3, 4])
    }

    /// All 120 permutations in lexicographic order.
    pub fn all() -> Vec<PermAction> {
        let mut out = Vec::with_capacity(120);
        let mut items = [0usize, 1, 2, 3, 4];
        fn rec(items: &mut [usize; 5], k: usize, out: &mut Vec<PermAction>) {
            if k == 5 {
                out.push(PermAction(*items));
                return;
            }
            // lexicographic: choose each remaining candidate in order
            let mut rest: Vec<usize> = items[k..].to_vec();
            rest.sort_unstable();
            for v in rest {
                let pos = items[k..].iter().position(|&x| x == v).unwrap() + k;
                items.swap(k, pos);
                rec(items, k + 1, out);
                // restore order by re-sorting the tail
                items[k..].sort_unstable();
            }
        }
        rec(&mut items, 0, &mut out);
        out
    }
}

/// The closure of {A, B} under composition: 120 canonical rational-map
/// pairs, in deterministic breadth-first order starting at the identity.
pub struct HumbertGroup {
    elements: Vec<GroupElem>,
}

static SHARED: OnceLock<HumbertGroup> = OnceLock::new();

impl HumbertGroup {
    /// Breadth-first closure with exact deduplication. Exceeding 240
    /// elements signals an internal error (the expected size is 120).
    pub fn build(strategy: Strategy) -> Result<HumbertGroup> {
        let gens = [GroupElem::gen_a(), GroupElem::gen_b()];
        let mut elements = vec![GroupElem::identity()];
        let mut seen: HashMap<(RatFunc2, RatFunc2), ()> = HashMap::new();
        seen.insert(
            (elements[0].first.clone(), elements[0].second.clone()),
            (),
        );
        let mut frontier: Vec<GroupElem> = elements.clone();
        while !frontier.is_empty() {
            // compose every generator with the frontier, in parallel; the
            // dedup pass stays sequential so the order is reproducible
            let pairs: Vec<(usize, usize)> = (0..gens.len())
                .flat_map(|g| (0..frontier.len()).map(move |e| (g, e)))
                .collect();
            let composed = exec::map_slice(strategy, &pairs, |&(g, e)| {
                gens[g].compose(&frontier[e])
            });
            let mut next = Vec::new();
            for c in composed {
                let c = c?;
                let key = (c.first.clone(), c.second.clone());
                if !seen.contains_key(&key) {
                    seen.insert(key, ());
                    elements.push(c.clone());
                    next.push(c);
                }
            }
            if elements.len() > 240 {
                return Err(Error::Internal(format!(
                    "closure exceeded 240 elements ({} so far)",
                    elements.len()
                )));
            }
            frontier = next;
        }
        Ok(HumbertGroup { elements })
    }

    /// The cached shared instance (compute once, read many).
    pub fn shared() -> &'static HumbertGroup {
        SHARED.get_or_init(|| {
            HumbertGroup::build(Strategy::auto()).expect("group closure generation failed")
        })
    }

    pub fn elements(&self) -> &[GroupElem] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Multiset of element orders, e.g. {1: 1, 2: 25, ...}.
    pub fn order_multiset(&self, strategy: Strategy) -> std::collections::BTreeMap<u32, usize> {
        let orders = exec::map_slice(strategy, &self.elements, |e| {
            e.order().expect("every element of a finite group has finite order")
        });
        let mut out = std::collections::BTreeMap::new();
        for o in orders {
            *out.entry(o).or_insert(0) += 1;
        }
        out
    }

    /// The orbit of p, deduplicated exactly in the exact regime and by the
    /// tolerance in the approximate one. Points that merely come close
    /// (within 10x the tolerance without matching) abort with a precision
    /// warning rather than risking a silently wrong orbit size.
    pub fn orbit<S: Scalar>(&self, p: &ParamPair<S>, strategy: Strategy) -> Result<Vec<ParamPair<S>>> {
        p.ensure_torelli()?;
        let images = exec::map_slice(strategy, &self.elements, |e| e.apply(p));
        let mut out: Vec<ParamPair<S>> = Vec::new();
        for img in images {
            let img = img.map_err(|e| {
                Error::Internal(format!("group element failed to evaluate on the Torelli space: {e}"))
            })?;
            if !img.in_torelli() {
                return Err(Error::Internal(format!(
                    "orbit point {img} left the Torelli space"
                )));
            }
            let mut dup = false;
            for q in &out {
                if q.eq_pair(&img) {
                    dup = true;
                    break;
                }
                if !S::EXACT
                    && q.z.near(&img.z, 10.0)
                    && q.w.near(&img.w, 10.0)
                {
                    return Err(Error::PrecisionWarning(format!(
                        "orbit points {q} and {img} are separated by less than 10x the tolerance"
                    )));
                }
            }
            if !dup {
                out.push(img);
            }
        }
        out.sort_by(|a, b| a.canonical_cmp(b));
        Ok(out)
    }

    /// Elements fixing p.
    pub fn stabilizer<S: Scalar>(&self, p: &ParamPair<S>) -> Result<Vec<&GroupElem>> {
        p.ensure_torelli()?;
        let mut out = Vec::new();
        for e in &self.elements {
            let img = e
                .apply(p)
                .map_err(|e| Error::Internal(format!("evaluation failed on the Torelli space: {e}")))?;
            if img.eq_pair(p) {
                out.push(e);
            }
        }
        Ok(out)
    }

    /// First element (in closure order) carrying p to q, if any.
    pub fn same_orbit<S: Scalar>(
        &self,
        p: &ParamPair<S>,
        q: &ParamPair<S>,
    ) -> Result<Option<&GroupElem>> {
        p.ensure_torelli()?;
        q.ensure_torelli()?;
        for e in &self.elements {
            let img = e
                .apply(p)
                .map_err(|e| Error::Internal(format!("evaluation failed on the Torelli space: {e}")))?;
            if img.eq_pair(q) {
                return Ok(Some(e));
            }
        }
        Ok(None)
    }
}

/// Concrete permutation action: apply sigma to the marked tuple
/// (inf, 0, 1, z, w), renormalize the first three slots to (inf, 0, 1) by
/// the unique Moebius map, and read off the images of the last two.
pub fn perm_action<S: Scalar>(sigma: &PermAction, p: &ParamPair<S>) -> Result<ParamPair<S>> {
    p.ensure_torelli()?;
    let pts = [
        ProjPoint::<S>::infinity(),
        ProjPoint::finite(S::zero()),
        ProjPoint::finite(S::one()),
        ProjPoint::finite(p.z.clone()),
        ProjPoint::finite(p.w.clone()),
    ];
    let q: Vec<&ProjPoint<S>> = sigma.0.iter().map(|&i| &pts[i]).collect();
    let nz = cross_ratio(q[0], q[1], q[2], q[3])?;
    let nw = cross_ratio(q[0], q[1], q[2], q[4])?;
    match (nz.value(), nw.value()) {
        (Some(z), Some(w)) => Ok(ParamPair { z: z.clone(), w: w.clone() }),
        _ => Err(Error::Internal("permutation action left the Torelli space".into())),
    }
}

/// The same permutation action built symbolically: the canonical
/// rational-map pair in (z, w). This is the independent oracle for the
/// closure; the matrix entries are polynomial in the marked points, so only
/// polynomial arithmetic is involved.
pub fn perm_elem(sigma: &PermAction) -> Result<(RatFunc2, RatFunc2)> {
    // homogeneous coordinates of (inf, 0, 1, z, w) over Q[z, w]
    let pts: [(Poly2, Poly2); 5] = [
        (Poly2::one(), Poly2::zero()),
        (Poly2::zero(), Poly2::one()),
        (Poly2::one(), Poly2::one()),
        (Poly2::var_z(), Poly2::one()),
        (Poly2::var_w(), Poly2::one()),
    ];
    let q: Vec<&(Poly2, Poly2)> = sigma.0.iter().map(|&i| &pts[i]).collect();
    let (x1, y1) = q[0];
    let (x2, y2) = q[1];
    let (x3, y3) = q[2];
    let k1 = x1.mul(y3).sub(&x3.mul(y1));
    let k2 = x2.mul(y3).sub(&x3.mul(y2));
    let a = y2.mul(&k1);
    let b = x2.mul(&k1).neg();
    let c = y1.mul(&k2);
    let d = x1.mul(&k2).neg();
    let image = |(x, y): &(Poly2, Poly2)| -> Result<RatFunc2> {
        RatFunc2::new(a.mul(x).add(&b.mul(y)), c.mul(x).add(&d.mul(y)))
    };
    Ok((image(q[3])?, image(q[4])?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussRat;

    fn pair(z: &str, w: &str) -> ParamPair<GaussRat> {
        ParamPair::new(GaussRat::parse(z).unwrap(), GaussRat::parse(w).unwrap())
    }

    #[test]
    fn torelli_membership() {
        assert!(pair("2", "3").in_torelli());
        assert!(!pair("2", "2").in_torelli());
        assert!(!pair("0", "3").in_torelli());
        assert!(!pair("2", "1").in_torelli());
    }

    #[test]
    fn generators_have_expected_orders() {
        assert_eq!(GroupElem::gen_a().order(), Some(2));
        // B is a 5-cycle on the marked points
        assert_eq!(GroupElem::gen_b().order(), Some(5));
    }

    #[test]
    fn closure_has_120_elements() {
        let g = HumbertGroup::shared();
        assert_eq!(g.len(), 120);
        assert!(g.elements()[0].is_identity());
    }

    #[test]
    fn orbit_and_stabilizer_are_dual() {
        let g = HumbertGroup::shared();
        let p = pair("2", "5");
        let orbit = g.orbit(&p, Strategy::auto()).unwrap();
        let stab = g.stabilizer(&p).unwrap();
        assert_eq!(orbit.len() * stab.len(), 120);
        assert_eq!(orbit.len(), 120);
        // the order-two hidden symmetry of (2, 3): z -> 3 - z preserves
        // {inf, 0, 1, 2, 3}, so the stabilizer has order 2
        let q = pair("2", "3");
        assert_eq!(g.orbit(&q, Strategy::auto()).unwrap().len(), 60);
        assert_eq!(g.stabilizer(&q).unwrap().len(), 2);
        // (lambda, 1/lambda) always carries the inversion symmetry
        let r = pair("2", "1/2");
        assert_eq!(g.orbit(&r, Strategy::auto()).unwrap().len(), 60);
        assert!(matches!(g.orbit(&pair("2", "2"), Strategy::auto()), Err(Error::NotInTorelli(_))));
    }

    #[test]
    fn same_orbit_with_witness() {
        let g = HumbertGroup::shared();
        let w = g.same_orbit(&pair("2", "3"), &pair("1/2", "1/3")).unwrap();
        assert_eq!(w.unwrap().word(), "A");
        let id = g.same_orbit(&pair("2", "3"), &pair("2", "3")).unwrap();
        assert_eq!(id.unwrap().word(), "I");
        assert!(g.same_orbit(&pair("2", "3"), &pair("2", "5")).unwrap().is_none());
    }

    #[test]
    fn perm_action_examples() {
        let p = pair("2", "3");
        let id = perm_action(&PermAction::identity(), &p).unwrap();
        assert!(id.eq_pair(&p));
        // swapping the two free slots swaps the coordinates
        let swap45 = PermAction([0, 1, 2, 4, 3]);
        assert!(perm_action(&swap45, &p).unwrap().eq_pair(&pair("3", "2")));
        // swapping (inf, 0) renormalizes by z -> 1/z, which is exactly A
        let swap12 = PermAction([1, 0, 2, 3, 4]);
        assert!(perm_action(&swap12, &p).unwrap().eq_pair(&pair("1/2", "1/3")));
    }

    #[test]
    fn perm_elems_match_action_pointwise() {
        let p = pair("7", "-4/3");
        for sigma in [PermAction([1, 0, 2, 3, 4]), PermAction([4, 0, 1, 2, 3])] {
            let (f1, f2) = perm_elem(&sigma).unwrap();
            let via_maps = ParamPair::new(
                f1.eval(&p.z, &p.w).unwrap(),
                f2.eval(&p.z, &p.w).unwrap(),
            );
            let direct = perm_action(&sigma, &p).unwrap();
            assert!(via_maps.eq_pair(&direct), "sigma {sigma:?}");
        }
    }
}
