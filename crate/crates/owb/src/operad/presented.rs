//! Operads presented by generators and relations, computed by congruence
//! closure on the bounded free operad.

use super::free::{act_on_tree, free_operad, payload_action, FreeOperad};
use super::{Operad, OperadMorphism};
use crate::enrich::{Elem, FinSetObj, Map, Obj, Tag, UnionFind};
use crate::perms::{Permutation, Profile};
use crate::report::Report;
use crate::symseq::{SymSeq, SymSeqMorphism};
use crate::trees::DecTree;
use crate::{Error, Result};
use std::collections::BTreeMap;

/// Generators, relations, and the truncation bounds of a presentation.
#[derive(Debug, Clone)]
pub struct Presentation {
    pub generators: SymSeq,
    /// Pairs of equal decorated trees over the generators; both sides must
    /// have the same leaf profile.
    pub relations: Vec<(DecTree, DecTree)>,
    /// Generator occurrences allowed per term.
    pub word_bound: usize,
    /// Whether unit laws are expected of the quotient.
    pub unital: bool,
}

/// A presented operad with its quotient data.
#[derive(Debug, Clone)]
pub struct PresentedOperad {
    pub operad: Operad,
    pub free: FreeOperad,
    /// The quotient morphism from the free operad.
    pub quotient: OperadMorphism,
    /// For every free element, its class representative.
    pub class_rep: BTreeMap<Elem, Elem>,
    pub report: Report,
}

/// Quotient the bounded free operad by the congruence generated by the
/// relations: seed the union-find with the relation pairs, then close under
/// every one-step context (compose on either side, act by a transposition)
/// until a fixpoint.
pub fn presented_operad(pres: &Presentation) -> Result<PresentedOperad> {
    let mut report = Report::new();
    let free = free_operad(&pres.generators, pres.word_bound)?;
    report.absorb(free.report.clone());

    // global element index
    let mut elems: Vec<(Profile, Elem)> = Vec::new();
    let mut index: BTreeMap<Elem, usize> = BTreeMap::new();
    for p in free.operad.seq.stored_profiles() {
        for e in free.operad.component(p).elems() {
            index.insert(e.clone(), elems.len());
            elems.push((p.clone(), e.clone()));
        }
    }
    let mut uf = UnionFind::new(elems.len());

    // seeds
    let act = payload_action(&pres.generators);
    for (lhs, rhs) in &pres.relations {
        let l = Elem::atom(lhs.canonical_form(&act)?.serialize());
        let r = Elem::atom(rhs.canonical_form(&act)?.serialize());
        let (Some(&li), Some(&ri)) = (index.get(&l), index.get(&r)) else {
            return Err(Error::BoundsExceeded(format!(
                "a relation term does not fit in word bound {}",
                pres.word_bound
            )));
        };
        if elems[li].0 != elems[ri].0 {
            return Err(Error::ProfileMismatch("relation sides have different profiles".into()));
        }
        uf.union(li, ri);
    }

    // move tables: (context id, source element, image element)
    // σ-contexts come first, then γ-left (fixed inner), then γ-right (fixed
    // outer); context ids only need to be distinct.
    let mut moves: Vec<(u64, usize, usize)> = Vec::new();
    let mut ctx_count: u64 = 0;
    // σ-moves: one context per transposition index
    let max_n = free.operad.max_arity();
    for i in 1..max_n {
        let ctx = ctx_count;
        ctx_count += 1;
        for (xi, (p, e)) in elems.iter().enumerate() {
            if p.arity() <= i {
                continue;
            }
            let s = Permutation::adjacent(p.arity(), i)?;
            let moved = act_on_tree(&pres.generators, free.tree_of(e)?, &s)?;
            let img = index[&Elem::atom(moved.serialize())];
            moves.push((ctx, xi, img));
        }
    }
    // γ-contexts
    let mut gamma_cache: BTreeMap<(usize, usize, usize), usize> = BTreeMap::new();
    let mut compose = |free: &FreeOperad,
                       xi: usize,
                       i: usize,
                       yi: usize,
                       elems: &[(Profile, Elem)],
                       index: &BTreeMap<Elem, usize>|
     -> Result<Option<usize>> {
        if let Some(&img) = gamma_cache.get(&(xi, i, yi)) {
            return Ok(Some(img));
        }
        let (px, ex) = &elems[xi];
        let (py, ey) = &elems[yi];
        let tx = free.tree_of(ex)?;
        let ty = free.tree_of(ey)?;
        if tx.vertex_count() + ty.vertex_count() > pres.word_bound {
            return Ok(None);
        }
        if px.arity() + py.arity() - 1 > free.operad.max_arity() {
            return Ok(None);
        }
        let grafted = tx.graft(i, ty)?.canonical_form(&payload_action(&pres.generators))?;
        let img = index[&Elem::atom(grafted.serialize())];
        gamma_cache.insert((xi, i, yi), img);
        Ok(Some(img))
    };
    for (yi, (py, _)) in elems.iter().enumerate() {
        // context: γᵢ(−, y)
        for i in 1..=max_n {
            let ctx = ctx_count;
            ctx_count += 1;
            for (xi, (px, _)) in elems.iter().enumerate() {
                if i > px.arity() || px.inputs[i - 1] != py.output {
                    continue;
                }
                if let Some(img) = compose(&free, xi, i, yi, &elems, &index)? {
                    moves.push((ctx, xi, img));
                }
            }
        }
    }
    for (xi, (px, _)) in elems.iter().enumerate() {
        // context: γᵢ(x, −)
        for i in 1..=px.arity() {
            let ctx = ctx_count;
            ctx_count += 1;
            for (yi, (py, _)) in elems.iter().enumerate() {
                if px.inputs[i - 1] != py.output {
                    continue;
                }
                if let Some(img) = compose(&free, xi, i, yi, &elems, &index)? {
                    moves.push((ctx, yi, img));
                }
            }
        }
    }
    moves.sort_unstable();

    // fixpoint: within each context, sources in one class force their images
    // into one class
    loop {
        let mut changed = false;
        let mut k = 0;
        while k < moves.len() {
            let ctx = moves[k].0;
            let mut first_img: BTreeMap<usize, usize> = BTreeMap::new();
            while k < moves.len() && moves[k].0 == ctx {
                let (_, x, img) = moves[k];
                let root = uf.find(x);
                match first_img.get(&root) {
                    None => {
                        first_img.insert(root, img);
                    }
                    Some(&img0) => {
                        if uf.union(img0, img) {
                            changed = true;
                        }
                    }
                }
                k += 1;
            }
        }
        if !changed {
            break;
        }
    }

    // classes per profile; representative = least element label
    let mut class_members: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for xi in 0..elems.len() {
        class_members.entry(uf.find(xi)).or_default().push(xi);
    }
    let mut class_rep: BTreeMap<Elem, Elem> = BTreeMap::new();
    for members in class_members.values() {
        let rep = members.iter().map(|&xi| &elems[xi].1).min().unwrap().clone();
        for &xi in members {
            class_rep.insert(elems[xi].1.clone(), rep.clone());
        }
    }

    // assemble the quotient
    let mut seq = SymSeq::new(Tag::FinSet, pres.generators.colours.clone(), free.operad.max_arity());
    let mut per_profile: BTreeMap<Profile, Vec<Elem>> = BTreeMap::new();
    for (p, e) in &elems {
        let rep = class_rep[e].clone();
        let v = per_profile.entry(p.clone()).or_default();
        if !v.contains(&rep) {
            v.push(rep);
        }
    }
    for (p, reps) in &per_profile {
        seq.set_component(p.clone(), Obj::Fin(FinSetObj::new(reps.clone())?))?;
    }
    // action
    for (p, _) in &per_profile {
        for i in 1..p.arity() {
            let s = Permutation::adjacent(p.arity(), i)?;
            let q = p.act(&s)?;
            let src = seq.component(p);
            let tgt = seq.component(&q);
            let map = Map::from_fn(&src, &tgt, |e| {
                let moved = act_on_tree(&pres.generators, free.tree_of(e).unwrap(), &s).unwrap();
                class_rep[&Elem::atom(moved.serialize())].clone()
            })?;
            seq.set_action_gen(p.clone(), i, map)?;
        }
    }
    let mut operad = Operad::new(seq);
    operad.unital = pres.unital;

    // units: the class of the bare edge
    for c in &pres.generators.colours {
        let bare: DecTree = crate::trees::Tree::bare(1, c.clone());
        let atom = Elem::atom(bare.serialize());
        if let Some(rep) = class_rep.get(&atom) {
            let lin = Profile::linear(c);
            let unit =
                Map::from_fn(&Obj::unit(Tag::FinSet), &operad.component(&lin), |_| rep.clone())?;
            operad.set_unit(c.clone(), unit);
        }
    }

    // compositions on class representatives: use any composable member pair
    let member_elems: BTreeMap<Elem, Vec<usize>> = {
        let mut m: BTreeMap<Elem, Vec<usize>> = BTreeMap::new();
        for (root, members) in &class_members {
            let rep = class_rep[&elems[members[0]].1].clone();
            m.insert(rep, class_members[root].clone());
        }
        m
    };
    for key in operad.expected_gamma_keys() {
        let (outer, i, inner) = &key;
        let src_o = operad.component(outer);
        let src_i = operad.component(inner);
        let mut table: BTreeMap<Elem, Elem> = BTreeMap::new();
        let mut overflow = false;
        'pairs: for eo in src_o.elems() {
            for ei in src_i.elems() {
                // members live in possibly different profiles; composition
                // needs members at exactly these profiles
                let mut found = None;
                for &xo in member_elems[eo].iter().filter(|&&x| &elems[x].0 == outer) {
                    for &xi_ in member_elems[ei].iter().filter(|&&x| &elems[x].0 == inner) {
                        if let Some(img) = compose(&free, xo, *i, xi_, &elems, &index)? {
                            found = Some(img);
                            break;
                        }
                    }
                    if found.is_some() {
                        break;
                    }
                }
                match found {
                    Some(img) => {
                        table.insert(eo.concat(ei), class_rep[&elems[img].1].clone());
                    }
                    None => {
                        overflow = true;
                        break 'pairs;
                    }
                }
            }
        }
        if overflow {
            report.truncated(format!(
                "presented operad: composition {} ∘{} {} has no representative within word bound {}",
                outer.render(),
                i,
                inner.render(),
                pres.word_bound
            ));
            operad.mark_truncated(outer.clone(), *i, inner.clone());
            continue;
        }
        let src = src_o.tensor(&src_i)?;
        let spliced = Profile::new(outer.splice(*i, &inner.inputs)?, outer.output.clone());
        let map = Map::from_fn(&src, &operad.component(&spliced), |e| table[e].clone())?;
        operad.set_gamma(outer.clone(), *i, inner.clone(), map)?;
    }

    // quotient morphism
    let mut qmaps = BTreeMap::new();
    for p in free.operad.seq.stored_profiles() {
        if free.operad.seq.is_empty_at(p) {
            continue;
        }
        let src = free.operad.component(p);
        let tgt = operad.component(p);
        qmaps.insert(p.clone(), Map::from_fn(&src, &tgt, |e| class_rep[e].clone())?);
    }
    let quotient = SymSeqMorphism {
        colour_map: pres.generators.colours.iter().map(|c| (c.clone(), c.clone())).collect(),
        maps: qmaps,
    };

    Ok(PresentedOperad { operad, free, quotient, class_rep, report: report.finish() })
}
