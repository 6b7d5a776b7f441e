//! Hopf structures on operads and comodules over them.

use crate::enrich::{Elem, Tag};
use crate::operad::{
    builtin, check_morphism, hadamard_operad, hadamard_swap_op, hadamard_unit_iso,
    morphism_tensor, Builtin, Operad, OperadMorphism, UnitSide,
};
use crate::perms::Profile;
use crate::report::Report;
use crate::symseq::SymSeqMorphism;
use crate::{Error, Result};
use std::collections::BTreeMap;

/// A comonoid structure `(Δ, ε)` on an operad with respect to the Hadamard
/// tensor product.
#[derive(Debug, Clone)]
pub struct HopfStructure {
    /// `Δ : P → P ⊗_H P`.
    pub delta: OperadMorphism,
    /// `ε : P → uCom`.
    pub counit: OperadMorphism,
}

/// Which side of the Hadamard product the acting operad sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A coaction `ρ : P → Q ⊗_H P` (left) or `ρ : P → P ⊗_H Q` (right).
#[derive(Debug, Clone)]
pub struct ComoduleStructure {
    pub side: Side,
    pub rho: OperadMorphism,
}

fn morphisms_equal(f: &SymSeqMorphism, g: &SymSeqMorphism) -> bool {
    f.colour_map == g.colour_map && f.maps == g.maps
}

/// Verify the comonoid axioms of `(Δ, ε)` on `p`: morphism property,
/// diagonal colour maps, coassociativity, and both counit laws.
pub fn check_hopf(p: &Operad, h: &HopfStructure) -> Result<Report> {
    let mut rep = Report::new();
    let pp = hadamard_operad(p, p)?;
    rep.absorb(check_morphism(p, &pp, &h.delta));
    let ucom = builtin(Builtin::UCom, p.max_arity())?;
    rep.absorb(check_morphism(p, &ucom, &h.counit));
    // colour maps are forced: Δ diagonal, ε constant
    for c in p.colours() {
        if h.delta.apply_colour(c)? != c.pair(c) {
            rep.fail("Δ colour map is not the diagonal", c.render(), String::new());
        }
        if h.counit.apply_colour(c)? != ucom.colours()[0] {
            rep.fail("ε colour map is not constant", c.render(), String::new());
        }
    }
    // coassociativity: (Δ⊗id)∘Δ = (id⊗Δ)∘Δ  (strict associativity makes the
    // two triple products literally equal)
    let id = SymSeqMorphism::identity(&p.seq);
    let left = h.delta.then(&pp.seq, &morphism_tensor(p, p, &h.delta, &id)?)?;
    let right = h.delta.then(&pp.seq, &morphism_tensor(p, p, &id, &h.delta)?)?;
    if !morphisms_equal(&left, &right) {
        rep.fail("Δ coassociativity", "-", String::new());
    }
    // counit laws
    let (left_unitor, _) = hadamard_unit_iso(p, UnitSide::Left)?;
    let (right_unitor, _) = hadamard_unit_iso(p, UnitSide::Right)?;
    let lhs = h
        .delta
        .then(&pp.seq, &morphism_tensor(p, p, &h.counit, &id)?)?
        .then(&hadamard_operad(&ucom, p)?.seq, &left_unitor)?;
    if !morphisms_equal(&lhs, &id) {
        rep.fail("left counit law", "-", String::new());
    }
    let rhs = h
        .delta
        .then(&pp.seq, &morphism_tensor(p, p, &id, &h.counit)?)?
        .then(&hadamard_operad(p, &ucom)?.seq, &right_unitor)?;
    if !morphisms_equal(&rhs, &id) {
        rep.fail("right counit law", "-", String::new());
    }
    Ok(rep.finish())
}

/// Whether `Δ` is invariant under the factor swap.
pub fn check_cocommutative(p: &Operad, h: &HopfStructure) -> Result<Report> {
    let mut rep = Report::new();
    let pp = hadamard_operad(p, p)?;
    let swap = hadamard_swap_op(p, p)?;
    let swapped = h.delta.then(&pp.seq, &swap)?;
    if !morphisms_equal(&swapped, &h.delta) {
        rep.fail("cocommutativity", "-", String::new());
    }
    Ok(rep.finish())
}

/// Verify the coaction axioms of `ρ` against the Hopf structure of `q`.
pub fn check_comodule(
    q: &Operad,
    hq: &HopfStructure,
    p: &Operad,
    rho: &ComoduleStructure,
) -> Result<Report> {
    let mut rep = Report::new();
    let idp = SymSeqMorphism::identity(&p.seq);
    let idq = SymSeqMorphism::identity(&q.seq);
    match rho.side {
        Side::Left => {
            let qp = hadamard_operad(q, p)?;
            rep.absorb(check_morphism(p, &qp, &rho.rho));
            // (Δ_q ⊗ id) ∘ ρ = (id ⊗ ρ) ∘ ρ
            let lhs = rho.rho.then(&qp.seq, &morphism_tensor(q, p, &hq.delta, &idp)?)?;
            let rhs = rho.rho.then(&qp.seq, &morphism_tensor(q, p, &idq, &rho.rho)?)?;
            if !morphisms_equal(&lhs, &rhs) {
                rep.fail("coaction coassociativity", "-", String::new());
            }
            // strip ∘ (ε ⊗ id) ∘ ρ = id
            let (left_unitor, _) = hadamard_unit_iso(p, UnitSide::Left)?;
            let ucom_p = hadamard_operad(&builtin(Builtin::UCom, p.max_arity())?, p)?;
            let counit = rho
                .rho
                .then(&qp.seq, &morphism_tensor(q, p, &hq.counit, &idp)?)?
                .then(&ucom_p.seq, &left_unitor)?;
            if !morphisms_equal(&counit, &idp) {
                rep.fail("coaction counit law", "-", String::new());
            }
        }
        Side::Right => {
            let pq = hadamard_operad(p, q)?;
            rep.absorb(check_morphism(p, &pq, &rho.rho));
            let lhs = rho.rho.then(&pq.seq, &morphism_tensor(p, q, &idp, &hq.delta)?)?;
            let rhs = rho.rho.then(&pq.seq, &morphism_tensor(p, q, &rho.rho, &idq)?)?;
            if !morphisms_equal(&lhs, &rhs) {
                rep.fail("coaction coassociativity", "-", String::new());
            }
            let (right_unitor, _) = hadamard_unit_iso(p, UnitSide::Right)?;
            let p_ucom = hadamard_operad(p, &builtin(Builtin::UCom, p.max_arity())?)?;
            let counit = rho
                .rho
                .then(&pq.seq, &morphism_tensor(p, q, &idp, &hq.counit)?)?
                .then(&p_ucom.seq, &right_unitor)?;
            if !morphisms_equal(&counit, &idp) {
                rep.fail("coaction counit law", "-", String::new());
            }
        }
    }
    Ok(rep.finish())
}

/// The unique cocommutative Hopf structure on a set-operad: `Δ(x) = (x,x)`,
/// `ε` collapses everything.
pub fn diagonal_hopf(p: &Operad) -> Result<HopfStructure> {
    if p.tag() != Tag::FinSet {
        return Err(Error::TagMismatch("no canonical diagonal in VectQ".into()));
    }
    let pp = hadamard_operad(p, p)?;
    let mut delta_colours = BTreeMap::new();
    let mut delta_maps = BTreeMap::new();
    for c in p.colours() {
        delta_colours.insert(c.clone(), c.pair(c));
    }
    for q in p.seq.stored_profiles() {
        if p.seq.is_empty_at(q) {
            continue;
        }
        let src = p.component(q);
        let dq = Profile::new(
            q.inputs.iter().map(|c| c.pair(c)).collect(),
            q.output.pair(&q.output),
        );
        let tgt = pp.component(&dq);
        delta_maps.insert(q.clone(), crate::enrich::Map::from_fn(&src, &tgt, |e| e.concat(e))?);
    }
    let delta = SymSeqMorphism { colour_map: delta_colours, maps: delta_maps };

    let ucom = builtin(Builtin::UCom, p.max_arity())?;
    let star = ucom.colours()[0].clone();
    let mut eps_colours = BTreeMap::new();
    let mut eps_maps = BTreeMap::new();
    for c in p.colours() {
        eps_colours.insert(c.clone(), star.clone());
    }
    for q in p.seq.stored_profiles() {
        if p.seq.is_empty_at(q) {
            continue;
        }
        let src = p.component(q);
        let uq = Profile::new(vec![star.clone(); q.arity()], star.clone());
        let tgt = ucom.component(&uq);
        let target_elem: Elem = tgt.elems()[0].clone();
        eps_maps.insert(
            q.clone(),
            crate::enrich::Map::from_fn(&src, &tgt, |_| target_elem.clone())?,
        );
    }
    let counit = SymSeqMorphism { colour_map: eps_colours, maps: eps_maps };
    Ok(HopfStructure { delta, counit })
}

/// Exhaustively search for Hopf structures on a small FinSet operad by
/// trying every family of componentwise maps `P(c̄;c) → P(c̄;c)×P(c̄;c)`
/// with diagonal colours; used to witness uniqueness of the diagonal.
pub fn enumerate_hopf_structures(p: &Operad) -> Result<Vec<HopfStructure>> {
    if p.tag() != Tag::FinSet {
        return Err(Error::TagMismatch("enumeration is FinSet-only".into()));
    }
    let profiles: Vec<Profile> = p
        .seq
        .stored_profiles()
        .filter(|q| !p.seq.is_empty_at(q))
        .cloned()
        .collect();
    // candidate images per profile: every function into the pair square
    let mut spaces: Vec<Vec<Vec<usize>>> = Vec::new();
    for q in &profiles {
        let n = p.component(q).size();
        // each element may map to any of n² pairs
        let total = n * n;
        let mut fns = Vec::new();
        let mut cur = vec![0usize; n];
        loop {
            fns.push(cur.clone());
            let mut c = n;
            loop {
                if c == 0 {
                    break;
                }
                c -= 1;
                cur[c] += 1;
                if cur[c] < total {
                    break;
                }
                cur[c] = 0;
            }
            if c == 0 && cur[0] == 0 {
                break;
            }
        }
        spaces.push(fns);
    }
    let hopf_eps = diagonal_hopf(p)?.counit;
    let pp = hadamard_operad(p, p)?;
    let mut found = Vec::new();
    let mut pick = vec![0usize; profiles.len()];
    loop {
        let mut delta_maps = BTreeMap::new();
        for (k, q) in profiles.iter().enumerate() {
            let src = p.component(q);
            let n = src.size();
            let assignment = &spaces[k][pick[k]];
            let dq = Profile::new(
                q.inputs.iter().map(|c| c.pair(c)).collect(),
                q.output.pair(&q.output),
            );
            let tgt = pp.component(&dq);
            let map = crate::enrich::Map::from_fn(&src, &tgt, |e| {
                let idx = src.index_of(e).unwrap();
                let pair = assignment[idx];
                src.elems()[pair / n].concat(&src.elems()[pair % n])
            })?;
            delta_maps.insert(q.clone(), map);
        }
        let delta = SymSeqMorphism {
            colour_map: p.colours().iter().map(|c| (c.clone(), c.pair(c))).collect(),
            maps: delta_maps,
        };
        let cand = HopfStructure { delta, counit: hopf_eps.clone() };
        if check_hopf(p, &cand)?.passed() {
            found.push(cand);
        }
        let mut c = profiles.len();
        loop {
            if c == 0 {
                return Ok(found);
            }
            c -= 1;
            pick[c] += 1;
            if pick[c] < spaces[c].len() {
                break;
            }
            pick[c] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operad::{builtin, mono, Builtin};
    use crate::perms::Profile;
    use crate::symseq::SymSeqMorphism;

    #[test]
    fn diagonal_hopf_on_zoo() {
        for which in [Builtin::I, Builtin::UCom, Builtin::UAs, Builtin::Perm] {
            let p = builtin(which, 3).unwrap();
            let h = diagonal_hopf(&p).unwrap();
            let rep = check_hopf(&p, &h).unwrap();
            assert!(rep.passed(), "{which:?}: {rep}");
            let rep = check_cocommutative(&p, &h).unwrap();
            assert!(rep.passed(), "{which:?} cocommutativity: {rep}");
        }
    }

    #[test]
    fn rho_equals_delta_is_a_comodule() {
        let p = builtin(Builtin::UAs, 3).unwrap();
        let h = diagonal_hopf(&p).unwrap();
        let rho = ComoduleStructure { side: Side::Right, rho: h.delta.clone() };
        let rep = check_comodule(&p, &h, &p, &rho).unwrap();
        assert!(rep.passed(), "{rep}");
        let rho = ComoduleStructure { side: Side::Left, rho: h.delta.clone() };
        let rep = check_comodule(&p, &h, &p, &rho).unwrap();
        assert!(rep.passed(), "{rep}");
    }

    #[test]
    fn corrupted_delta_fails() {
        let p = builtin(Builtin::UAs, 2).unwrap();
        let mut h = diagonal_hopf(&p).unwrap();
        // swap the pair coordinates on the arity-2 component only: breaks
        // naturality against the counit/laws? it stays a valid map but the
        // pair (x, x^τ) is not the diagonal; the morphism check catches it
        let c = mono();
        let two = Profile::new(vec![c.clone(); 2], c.clone());
        let src = p.component(&two);
        let tau = crate::perms::Permutation::new(vec![2, 1]).unwrap();
        let act = p.seq.act(&two, &tau).unwrap();
        let m = h.delta.maps.get_mut(&two).unwrap();
        *m = crate::enrich::Map::from_fn(&src, &m.target(), |e| {
            e.concat(&act.apply(e).unwrap())
        })
        .unwrap();
        let rep = check_hopf(&p, &h).unwrap();
        assert!(!rep.passed());
    }

    #[test]
    fn diagonal_is_the_unique_hopf_structure_on_small_uas() {
        let p = builtin(Builtin::UAs, 2).unwrap();
        let found = enumerate_hopf_structures(&p).unwrap();
        assert_eq!(found.len(), 1);
        let diag = diagonal_hopf(&p).unwrap();
        let f = &found[0];
        let eq = |a: &SymSeqMorphism, b: &SymSeqMorphism| {
            a.colour_map == b.colour_map && a.maps == b.maps
        };
        assert!(eq(&f.delta, &diag.delta));
        assert!(eq(&f.counit, &diag.counit));
    }
}
