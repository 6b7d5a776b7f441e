//! Segments and Hopf segments: the edge-label alphabets of the
//! Boardman–Vogt construction.

use crate::enrich::{braiding, factor_perm, Elem, FinSetObj, Map, Obj, Tag};
use crate::report::Report;
use crate::{Error, Result};

/// An augmented monoid with two endpoints: the product has unit `δ0` and
/// absorbing element `δ1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Segment {
    pub h: Obj,
    pub d0: Elem,
    pub d1: Elem,
    /// `γ_H : H ⊗ H → H`.
    pub product: Map,
    /// `σ_H : H → 𝟙`.
    pub aug: Map,
}

impl Segment {
    pub fn new(h: Obj, d0: Elem, d1: Elem, product: Map) -> Result<Segment> {
        if h.tag() != Tag::FinSet {
            return Err(Error::TagMismatch("segments live in FinSet".into()));
        }
        let aug = Map::to_unit(&h)?;
        Ok(Segment { h, d0, d1, product, aug })
    }

    /// The terminal segment on the monoidal unit.
    pub fn terminal() -> Segment {
        let h = Obj::unit(Tag::FinSet);
        let product = Map::from_fn(&h.tensor(&h).unwrap(), &h, |_| Elem::empty()).unwrap();
        Segment::new(h, Elem::empty(), Elem::empty(), product).unwrap()
    }

    /// The boolean segment `{0,1}` with `γ_H = max`; `δ0 = 0`, `δ1 = 1`.
    pub fn boolean() -> Segment {
        let h = Obj::Fin(FinSetObj::from_atoms(["0", "1"]));
        let product = Map::from_fn(&h.tensor(&h).unwrap(), &h, |e| {
            if e.0.iter().any(|a| a == "1") {
                Elem::atom("1")
            } else {
                Elem::atom("0")
            }
        })
        .unwrap();
        Segment::new(h, Elem::atom("0"), Elem::atom("1"), product).unwrap()
    }

    /// The boolean carrier with `γ_H = min`: not a segment (δ1 fails to
    /// absorb); kept as a negative control.
    pub fn boolean_min() -> Segment {
        let h = Obj::Fin(FinSetObj::from_atoms(["0", "1"]));
        let product = Map::from_fn(&h.tensor(&h).unwrap(), &h, |e| {
            if e.0.iter().any(|a| a == "0") {
                Elem::atom("0")
            } else {
                Elem::atom("1")
            }
        })
        .unwrap();
        Segment::new(h, Elem::atom("0"), Elem::atom("1"), product).unwrap()
    }

    /// Apply the product to two label elements.
    pub fn mul(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        self.product.apply(&a.concat(b))
    }
}

/// Exhaustive verification of the segment axioms.
pub fn check_segment(s: &Segment) -> Report {
    let mut rep = Report::new();
    if s.h.index_of(&s.d0).is_none() || s.h.index_of(&s.d1).is_none() {
        rep.fail("endpoints are elements of H", "-", String::new());
        return rep.finish();
    }
    let id = Map::identity(&s.h);
    // associativity
    let assoc_l = s.product.compose(&s.product.tensor(&id).unwrap());
    let assoc_r = s.product.compose(&id.tensor(&s.product).unwrap());
    match (assoc_l, assoc_r) {
        (Ok(a), Ok(b)) if a == b => {}
        _ => rep.fail("γ_H associativity", "-", String::new()),
    }
    // δ0 unit, δ1 absorbing
    for x in s.h.elems() {
        match s.mul(&s.d0, x) {
            Ok(v) if v == *x => {}
            _ => rep.fail("δ0 left unit", "-", x.to_string()),
        }
        match s.mul(x, &s.d0) {
            Ok(v) if v == *x => {}
            _ => rep.fail("δ0 right unit", "-", x.to_string()),
        }
        match s.mul(&s.d1, x) {
            Ok(v) if v == s.d1 => {}
            _ => rep.fail("δ1 left absorbing", "-", x.to_string()),
        }
        match s.mul(x, &s.d1) {
            Ok(v) if v == s.d1 => {}
            _ => rep.fail("δ1 right absorbing", "-", x.to_string()),
        }
    }
    // the augmentation is a morphism of monoids: forced in FinSet, recorded
    // by checking σ∘δ0 picks out the unit element
    match s.aug.apply(&s.d0) {
        Ok(v) if v == Elem::empty() => {}
        _ => rep.fail("augmentation", "-", String::new()),
    }
    rep.finish()
}

/// The tensor product of segments: componentwise endpoints, products through
/// the middle-four interchange.
pub fn tensor_segments(s: &Segment, t: &Segment) -> Result<Segment> {
    let h = s.h.tensor(&t.h)?;
    let m4 = factor_perm(&[&s.h, &t.h, &s.h, &t.h], &[0, 2, 1, 3])?;
    let product = s.product.tensor(&t.product)?.compose(&m4)?;
    Segment::new(h, s.d0.concat(&t.d0), s.d1.concat(&t.d1), product)
}

/// A comonoid in segments: a segment with a comultiplication whose counit is
/// the augmentation.
#[derive(Debug, Clone, PartialEq)]
pub struct HopfSegment {
    pub seg: Segment,
    /// `Δ_H : H → H ⊗ H`.
    pub comult: Map,
}

impl HopfSegment {
    /// The diagonal comultiplication (the only comonoid in sets).
    pub fn diagonal(seg: Segment) -> Result<HopfSegment> {
        let hh = seg.h.tensor(&seg.h)?;
        let comult = Map::from_fn(&seg.h, &hh, |e| e.concat(e))?;
        Ok(HopfSegment { seg, comult })
    }
}

/// Comonoid axioms plus the requirement that `Δ_H` is a morphism of
/// segments.
pub fn check_hopf_segment(hs: &HopfSegment) -> Report {
    let mut rep = check_segment(&hs.seg);
    let h = &hs.seg.h;
    let id = Map::identity(h);
    // coassociativity
    let l = hs.comult.tensor(&id).and_then(|m| m.compose(&hs.comult));
    let r = id.tensor(&hs.comult).and_then(|m| m.compose(&hs.comult));
    match (l, r) {
        (Ok(a), Ok(b)) if a == b => {}
        _ => rep.fail("Δ_H coassociativity", "-", String::new()),
    }
    // counit laws: (σ⊗id)∘Δ = id = (id⊗σ)∘Δ
    let l = hs.seg.aug.tensor(&id).and_then(|m| m.compose(&hs.comult));
    let r = id.tensor(&hs.seg.aug).and_then(|m| m.compose(&hs.comult));
    match (l, r) {
        (Ok(a), Ok(b)) if a == id && b == id => {}
        _ => rep.fail("Δ_H counit laws", "-", String::new()),
    }
    // Δ_H is a morphism of segments
    match hs.comult.apply(&hs.seg.d0) {
        Ok(v) if v == hs.seg.d0.concat(&hs.seg.d0) => {}
        _ => rep.fail("Δ_H preserves δ0", "-", String::new()),
    }
    match hs.comult.apply(&hs.seg.d1) {
        Ok(v) if v == hs.seg.d1.concat(&hs.seg.d1) => {}
        _ => rep.fail("Δ_H preserves δ1", "-", String::new()),
    }
    let m4 = factor_perm(&[h, h, h, h], &[0, 2, 1, 3]).unwrap();
    let lhs = hs.comult.compose(&hs.seg.product);
    let rhs = hs
        .comult
        .tensor(&hs.comult)
        .and_then(|m| m4.compose(&m))
        .and_then(|m| hs.seg.product.tensor(&hs.seg.product).unwrap().compose(&m));
    match (lhs, rhs) {
        (Ok(a), Ok(b)) if a == b => {}
        _ => rep.fail("Δ_H commutes with γ_H", "-", String::new()),
    }
    rep.finish()
}

/// Whether the underlying product is commutative.
pub fn segment_commutative(s: &Segment) -> bool {
    let b = braiding(&s.h, &s.h).unwrap();
    s.product.compose(&b).map(|m| m == s.product).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn terminal_and_boolean_pass() {
        assert!(check_segment(&Segment::terminal()).passed());
        assert!(check_segment(&Segment::boolean()).passed());
        assert!(segment_commutative(&Segment::boolean()));
    }

    #[test]
    fn boolean_min_fails_absorption() {
        let rep = check_segment(&Segment::boolean_min());
        assert!(!rep.passed());
        assert!(rep.findings.iter().any(|f| f.law.contains("absorbing")));
    }

    #[test]
    fn tensor_of_segments() {
        let b = Segment::boolean();
        let t = tensor_segments(&b, &Segment::terminal()).unwrap();
        assert!(check_segment(&t).passed());
        assert_eq!(t.h.size(), 2);
        let bb = tensor_segments(&b, &b).unwrap();
        assert!(check_segment(&bb).passed());
        assert_eq!(bb.h.size(), 4);
        assert_eq!(bb.d0.to_string(), "(0,0)");
        assert_eq!(bb.d1.to_string(), "(1,1)");
        assert!(segment_commutative(&bb));
    }

    #[test]
    fn hopf_segments() {
        let hb = HopfSegment::diagonal(Segment::boolean()).unwrap();
        assert!(check_hopf_segment(&hb).passed());
        let ht = HopfSegment::diagonal(Segment::terminal()).unwrap();
        assert!(check_hopf_segment(&ht).passed());
        // corrupt the comultiplication: constant at δ0⊗δ0
        let seg = Segment::boolean();
        let hh = seg.h.tensor(&seg.h).unwrap();
        let bad = Map::from_fn(&seg.h, &hh, |_| {
            Elem(vec!["0".into(), "0".into()])
        })
        .unwrap();
        let rep = check_hopf_segment(&HopfSegment { seg, comult: bad });
        assert!(!rep.passed());
    }
}
