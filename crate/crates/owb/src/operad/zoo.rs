//! The builtin operads.

use super::free::all_profiles;
use super::presented::{presented_operad, Presentation};
use super::{Operad, OperadMorphism};
use crate::enrich::{Colour, Elem, FinSetObj, Map, Obj, Tag, VectObj};
use crate::perms::{Permutation, Profile};
use crate::planar::{symmetrize_operad, PlanarOperad};
use crate::symseq::{SymSeq, SymSeqMorphism};
use crate::trees::{DecPayload, DecTree, Tree};
use crate::{Error, Result};
use std::collections::BTreeMap;

/// The zoo.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Builtin {
    /// The unit operad `I`.
    I,
    /// Unital commutative: every component a point.
    UCom,
    /// Non-unital commutative: empty in arity zero.
    Com,
    /// Unital associative: `uAs(n) ≅ S_n`.
    UAs,
    /// Non-unital associative: empty in arity zero.
    As,
    /// The permutative operad: `Perm(n)` has `n` elements.
    Perm,
    /// The wheeled commutative operad, truncated by the word bound.
    WCom,
    /// The permutation groupoid as an operad with colours `0..=maxArity`.
    S,
}

impl Builtin {
    pub fn parse(s: &str) -> Result<Builtin> {
        Ok(match s {
            "I" | "i" => Builtin::I,
            "uCom" | "ucom" => Builtin::UCom,
            "Com" | "com" => Builtin::Com,
            "uAs" | "uas" => Builtin::UAs,
            "As" | "as" => Builtin::As,
            "Perm" | "perm" => Builtin::Perm,
            "WCom" | "wcom" => Builtin::WCom,
            "S" | "s" => Builtin::S,
            _ => return Err(Error::Malformed(format!("unknown builtin operad {s:?}"))),
        })
    }
}

/// Build a zoo operad at the given arity truncation. Presented members use
/// `word_bound = max_arity`.
pub fn builtin(which: Builtin, max_arity: usize) -> Result<Operad> {
    builtin_with_word_bound(which, max_arity, max_arity)
}

pub fn builtin_with_word_bound(
    which: Builtin,
    max_arity: usize,
    word_bound: usize,
) -> Result<Operad> {
    match which {
        Builtin::I => unit_operad(max_arity),
        Builtin::UCom => pointwise_singleton(max_arity, true),
        Builtin::Com => pointwise_singleton(max_arity, false),
        Builtin::UAs => symmetrize_operad(&point_planar(max_arity, true)?),
        Builtin::As => symmetrize_operad(&point_planar(max_arity, false)?),
        Builtin::Perm => Ok(presented_operad(&perm_presentation(max_arity, word_bound)?)?.operad),
        Builtin::WCom => Ok(presented_operad(&wcom_presentation(max_arity, word_bound)?)?.operad),
        Builtin::S => perm_groupoid(max_arity),
    }
}

/// The single colour used by the monochromatic zoo members.
pub fn mono() -> Colour {
    Colour::atom("o")
}

fn unit_operad(max_arity: usize) -> Result<Operad> {
    let c = mono();
    let seq = crate::symseq::unit_seq(Tag::FinSet, &[c.clone()], max_arity);
    let mut op = Operad::new(seq);
    let lin = Profile::linear(&c);
    let obj = op.component(&lin);
    op.set_unit(c.clone(), Map::identity(&obj));
    op.set_gamma(lin.clone(), 1, lin.clone(), Map::from_fn(&obj.tensor(&obj)?, &obj, |_| Elem::empty())?)?;
    Ok(op)
}

fn pointwise_singleton(max_arity: usize, with_nullary: bool) -> Result<Operad> {
    let c = mono();
    let mut seq = SymSeq::new(Tag::FinSet, vec![c.clone()], max_arity);
    let star = Obj::Fin(FinSetObj::from_atoms(["*"]));
    let start = if with_nullary { 0 } else { 1 };
    for n in start..=max_arity {
        seq.set_component(Profile::new(vec![c.clone(); n], c.clone()), star.clone())?;
    }
    seq.fill_singleton_actions();
    let mut op = Operad::new(seq);
    let lin = Profile::linear(&c);
    op.set_unit(c.clone(), Map::from_fn(&Obj::unit(Tag::FinSet), &star, |_| Elem::atom("*"))?);
    let _ = lin;
    for key in op.expected_gamma_keys() {
        let (outer, i, inner) = key;
        let src = star.tensor(&star)?;
        op.set_gamma(outer, i, inner, Map::from_fn(&src, &star, |_| Elem::atom("*"))?)?;
    }
    Ok(op)
}

/// The planar operad with exactly one operation in every arity (from
/// `start`): the planar shadow of `uAs`.
fn point_planar(max_arity: usize, with_nullary: bool) -> Result<PlanarOperad> {
    let c = mono();
    let mut op = PlanarOperad::new(Tag::FinSet, vec![c.clone()], max_arity);
    let star = Obj::Fin(FinSetObj::from_atoms(["*"]));
    let start = if with_nullary { 0 } else { 1 };
    for n in start..=max_arity {
        op.set_component(Profile::new(vec![c.clone(); n], c.clone()), star.clone())?;
    }
    op.set_unit(c.clone(), Map::from_fn(&Obj::unit(Tag::FinSet), &star, |_| Elem::atom("*"))?);
    for (outer, i, inner) in op.expected_gamma_keys() {
        let src = star.tensor(&star)?;
        op.set_gamma(outer, i, inner, Map::from_fn(&src, &star, |_| Elem::atom("*"))?);
    }
    Ok(op)
}

/// Generators for `Perm` and `WCom`: a binary generator with free
/// `S₂`-action (`m`, `mT`), optionally a unary `l`.
fn binary_regular_gens(max_arity: usize, with_unary: bool) -> Result<SymSeq> {
    let c = mono();
    let mut gens = SymSeq::new(Tag::FinSet, vec![c.clone()], max_arity);
    let two = Profile::new(vec![c.clone(), c.clone()], c.clone());
    let e2 = Obj::Fin(FinSetObj::from_atoms(["m", "mT"]));
    gens.set_component(two.clone(), e2.clone())?;
    let swap = Map::from_fn(&e2, &e2, |e| {
        if e == &Elem::atom("m") {
            Elem::atom("mT")
        } else {
            Elem::atom("m")
        }
    })?;
    gens.set_action_gen(two, 1, swap)?;
    if with_unary {
        gens.set_component(Profile::linear(&c), Obj::Fin(FinSetObj::from_atoms(["l"])))?;
    }
    gens.fill_singleton_actions();
    Ok(gens)
}

fn leaf(n: usize) -> DecTree {
    Tree::Leaf { number: n, colour: mono() }
}

fn gen_vertex(dec: &str, children: Vec<DecTree>) -> DecTree {
    Tree::Vertex {
        colour: mono(),
        payload: DecPayload { dec: Elem::atom(dec), label: None },
        children,
    }
}

fn perm_presentation(max_arity: usize, word_bound: usize) -> Result<Presentation> {
    let gens = binary_regular_gens(max_arity, false)?;
    // m ◁ (1, m) = m ◁ (m, 1)
    let assoc_l = gen_vertex("m", vec![leaf(1), gen_vertex("m", vec![leaf(2), leaf(3)])]);
    let assoc_r = gen_vertex("m", vec![gen_vertex("m", vec![leaf(1), leaf(2)]), leaf(3)]);
    // m ◁ (1, m) = m ◁ (1, m^σ)
    let twisted = gen_vertex("m", vec![leaf(1), gen_vertex("mT", vec![leaf(2), leaf(3)])]);
    Ok(Presentation {
        generators: gens,
        relations: vec![(assoc_l.clone(), assoc_r), (assoc_l, twisted)],
        word_bound,
        unital: true,
    })
}

fn wcom_presentation(max_arity: usize, word_bound: usize) -> Result<Presentation> {
    let gens = binary_regular_gens(max_arity, true)?;
    let assoc_l = gen_vertex("m", vec![leaf(1), gen_vertex("m", vec![leaf(2), leaf(3)])]);
    let assoc_r = gen_vertex("m", vec![gen_vertex("m", vec![leaf(1), leaf(2)]), leaf(3)]);
    // m^{(01)} = m
    let comm_l = gen_vertex("mT", vec![leaf(1), leaf(2)]);
    let comm_r = gen_vertex("m", vec![leaf(1), leaf(2)]);
    // m ◁ (l, 1) = m  and  l ◁ m = m
    let absorb_l = gen_vertex("m", vec![gen_vertex("l", vec![leaf(1)]), leaf(2)]);
    let absorb_top = gen_vertex("l", vec![gen_vertex("m", vec![leaf(1), leaf(2)])]);
    Ok(Presentation {
        generators: gens,
        relations: vec![
            (assoc_l, assoc_r),
            (comm_l, comm_r.clone()),
            (absorb_l, comm_r.clone()),
            (absorb_top, comm_r),
        ],
        word_bound,
        unital: true,
    })
}

/// The presentation that recovers `uCom`: a commutative associative binary
/// generator and a nullary unit element.
pub fn ucom_presentation(max_arity: usize, word_bound: usize) -> Result<Presentation> {
    let c = mono();
    let mut gens = SymSeq::new(Tag::FinSet, vec![c.clone()], max_arity);
    gens.set_component(
        Profile::new(vec![c.clone(), c.clone()], c.clone()),
        Obj::Fin(FinSetObj::from_atoms(["m"])),
    )?;
    gens.set_component(Profile::new(vec![], c.clone()), Obj::Fin(FinSetObj::from_atoms(["u"])))?;
    gens.fill_singleton_actions();
    let assoc_l = gen_vertex("m", vec![leaf(1), gen_vertex("m", vec![leaf(2), leaf(3)])]);
    let assoc_r = gen_vertex("m", vec![gen_vertex("m", vec![leaf(1), leaf(2)]), leaf(3)]);
    let unit_l = gen_vertex("m", vec![gen_vertex("u", vec![]), leaf(1)]);
    let bare = leaf(1);
    Ok(Presentation {
        generators: gens,
        relations: vec![(assoc_l, assoc_r), (unit_l, bare)],
        word_bound,
        unital: true,
    })
}

/// The permutation groupoid as a coloured operad: colours `0..=max_arity`,
/// components `S(n;n) = S_n`, unary compositions by group multiplication.
fn perm_groupoid(max_arity: usize) -> Result<Operad> {
    let colours: Vec<Colour> = (0..=max_arity).map(|n| Colour::atom(n.to_string())).collect();
    let mut seq = SymSeq::new(Tag::FinSet, colours.clone(), max_arity.max(1));
    for (n, c) in colours.iter().enumerate() {
        let elems: Vec<Elem> =
            Permutation::all(n).iter().map(|s| Elem::atom(s.render())).collect();
        seq.set_component(Profile::linear(c), Obj::Fin(FinSetObj::new(elems)?))?;
    }
    let mut op = Operad::new(seq);
    for (n, c) in colours.iter().enumerate() {
        let lin = Profile::linear(c);
        let obj = op.component(&lin);
        let id_atom = Elem::atom(Permutation::identity(n).render());
        op.set_unit(c.clone(), Map::from_fn(&Obj::unit(Tag::FinSet), &obj, |_| id_atom.clone())?);
        let src = obj.tensor(&obj)?;
        let perms = Permutation::all(n);
        let by_atom: BTreeMap<Elem, Permutation> =
            perms.iter().map(|s| (Elem::atom(s.render()), s.clone())).collect();
        let obj2 = obj.clone();
        let map = Map::from_fn(&src, &obj, move |e| {
            let parts = Obj::split_elem(&[&obj2, &obj2], e);
            let s = &by_atom[&parts[0]];
            let m = &by_atom[&parts[1]];
            Elem::atom(s.compose(m).unwrap().render())
        })?;
        op.set_gamma(lin.clone(), 1, lin, map)?;
    }
    Ok(op)
}

/// The collapse morphism `uAs → uCom` (used as a standard test subject).
pub fn uas_to_ucom_collapse(max_arity: usize) -> Result<(Operad, Operad, OperadMorphism)> {
    let uas = builtin(Builtin::UAs, max_arity)?;
    let ucom = builtin(Builtin::UCom, max_arity)?;
    let star = ucom.colours()[0].clone();
    let mut maps = BTreeMap::new();
    for p in uas.seq.stored_profiles() {
        if uas.seq.is_empty_at(p) {
            continue;
        }
        let src = uas.component(p);
        let tgt = ucom
            .component(&Profile::new(vec![star.clone(); p.arity()], star.clone()));
        maps.insert(p.clone(), Map::from_fn(&src, &tgt, |_| Elem::atom("*"))?);
    }
    let colour_map = uas.colours().iter().map(|c| (c.clone(), star.clone())).collect();
    Ok((uas, ucom, SymSeqMorphism { colour_map, maps }))
}

/// Linearise a FinSet operad: free rational vector spaces on the components,
/// with the same structure maps as 0/1 matrices.
pub fn linearize(p: &Operad) -> Result<Operad> {
    if p.tag() != Tag::FinSet {
        return Err(Error::TagMismatch("linearize takes a FinSet operad".into()));
    }
    let lin_obj = |o: &Obj| -> Result<Obj> { Ok(Obj::Vect(VectObj::new(o.elems().to_vec())?)) };
    let lin_map = |m: &Map| -> Result<Map> {
        let src = lin_obj(&m.source())?;
        let tgt = lin_obj(&m.target())?;
        Map::from_fn(&src, &tgt, |e| m.apply(e).unwrap())
    };
    let mut seq = SymSeq::new(Tag::VectQ, p.colours().to_vec(), p.max_arity());
    let profiles: Vec<Profile> = p.seq.stored_profiles().cloned().collect();
    for q in &profiles {
        seq.set_component(q.clone(), lin_obj(&p.component(q))?)?;
        for i in 1..q.arity() {
            seq.set_action_gen(q.clone(), i, lin_map(&p.seq.action_gen(q, i)?)?)?;
        }
    }
    let mut out = Operad::new(seq);
    out.unital = p.unital;
    for c in p.colours() {
        if let Ok(u) = p.unit_map(c) {
            out.set_unit(c.clone(), lin_map(&u)?);
        }
    }
    for key in p.expected_gamma_keys() {
        let (outer, i, inner) = &key;
        if p.is_truncated(&key) {
            out.mark_truncated(outer.clone(), *i, inner.clone());
            continue;
        }
        out.set_gamma(outer.clone(), *i, inner.clone(), lin_map(&p.gamma(outer, *i, inner)?)?)?;
    }
    Ok(out)
}

pub(crate) fn zoo_profiles(colours: &[Colour], max_arity: usize) -> Vec<Profile> {
    all_profiles(colours, max_arity)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operad::{check_morphism, check_operad, presented_operad};

    fn sizes(op: &Operad, upto: usize) -> Vec<usize> {
        let c = mono();
        (0..=upto)
            .map(|n| op.component(&Profile::new(vec![c.clone(); n], c.clone())).size())
            .collect()
    }

    #[test]
    fn unit_operad_checks() {
        let i = builtin(Builtin::I, 4).unwrap();
        assert!(check_operad(&i).passed());
        assert_eq!(sizes(&i, 3), vec![0, 1, 0, 0]);
    }

    #[test]
    fn ucom_and_com_check() {
        let ucom = builtin(Builtin::UCom, 4).unwrap();
        let rep = check_operad(&ucom);
        assert!(rep.passed(), "{rep}");
        assert_eq!(sizes(&ucom, 4), vec![1, 1, 1, 1, 1]);
        let com = builtin(Builtin::Com, 4).unwrap();
        assert!(check_operad(&com).passed());
        assert_eq!(sizes(&com, 4), vec![0, 1, 1, 1, 1]);
    }

    #[test]
    fn uas_counts_and_check() {
        let uas = builtin(Builtin::UAs, 4).unwrap();
        assert_eq!(sizes(&uas, 4), vec![1, 1, 2, 6, 24]);
        let rep = check_operad(&uas);
        assert!(rep.passed(), "{rep}");
        let aas = builtin(Builtin::As, 4).unwrap();
        assert_eq!(sizes(&aas, 4), vec![0, 1, 2, 6, 24]);
        assert!(check_operad(&aas).passed());
    }

    #[test]
    fn uas_slot_compositions() {
        let uas = builtin(Builtin::UAs, 3).unwrap();
        let c = mono();
        let two = Profile::new(vec![c.clone(); 2], c.clone());
        let e = crate::planar::uas_perm_elem(&Permutation::identity(2));
        let t = crate::planar::uas_perm_elem(&Permutation::new(vec![2, 1]).unwrap());
        // associativity of the monoid multiplication: e ∘₁ e = e ∘₂ e
        let l = uas.compose_elems(&two, &e, 1, &two, &e).unwrap();
        let r = uas.compose_elems(&two, &e, 2, &two, &e).unwrap();
        assert_eq!(l, r);
        // inserting the twist at different slots gives distinct elements
        let l = uas.compose_elems(&two, &e, 1, &two, &t).unwrap();
        let r = uas.compose_elems(&two, &e, 2, &two, &t).unwrap();
        assert_ne!(l, r);
    }

    #[test]
    fn perm_groupoid_checks() {
        let s = builtin(Builtin::S, 3).unwrap();
        let rep = check_operad(&s);
        assert!(rep.passed(), "{rep}");
        let c3 = Colour::atom("3");
        assert_eq!(s.component(&Profile::linear(&c3)).size(), 6);
    }

    #[test]
    fn perm_counts() {
        let perm = builtin_with_word_bound(Builtin::Perm, 4, 4).unwrap();
        assert_eq!(sizes(&perm, 4), vec![0, 1, 2, 3, 4]);
        let rep = check_operad(&perm);
        assert!(rep.passed(), "{rep}");
    }

    #[test]
    fn wcom_counts() {
        // the associativity relation lives in arity 3, so the truncation must
        // reach it; arity-1 components are the chains of `l`
        for k in 2..=4usize {
            let wcom = builtin_with_word_bound(Builtin::WCom, 3, k).unwrap();
            assert_eq!(sizes(&wcom, 1)[1], k + 1, "word bound {k}");
            assert_eq!(sizes(&wcom, 2)[2], 1, "word bound {k}");
        }
        let wcom = builtin_with_word_bound(Builtin::WCom, 3, 4).unwrap();
        assert_eq!(sizes(&wcom, 3), vec![0, 5, 1, 1]);
        let rep = check_operad(&wcom);
        assert!(rep.passed(), "{rep}");
    }

    #[test]
    fn ucom_presentation_collapses_to_singletons() {
        let pres = ucom_presentation(4, 4).unwrap();
        let p = presented_operad(&pres).unwrap();
        assert_eq!(sizes(&p.operad, 4), vec![1, 1, 1, 1, 1]);
        let rep = check_operad(&p.operad);
        assert!(rep.passed(), "{rep}");
    }

    #[test]
    fn collapse_morphism_checks() {
        let (uas, ucom, f) = uas_to_ucom_collapse(3).unwrap();
        let rep = check_morphism(&uas, &ucom, &f);
        assert!(rep.passed(), "{rep}");
    }

    #[test]
    fn linearize_uas_checks() {
        let uas = builtin(Builtin::UAs, 3).unwrap();
        let lin = linearize(&uas).unwrap();
        assert_eq!(lin.tag(), Tag::VectQ);
        let c = mono();
        assert_eq!(lin.component(&Profile::new(vec![c.clone(); 3], c)).size(), 6);
        let rep = check_operad(&lin);
        assert!(rep.passed(), "{rep}");
    }
}
