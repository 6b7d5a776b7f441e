//! The free operad on a generating symmetric sequence, realised on
//! canonically-formed decorated trees.

use super::{Operad, OperadMorphism};
use crate::enrich::{Elem, FinSetObj, Map, Obj, Tag};
use crate::perms::{Permutation, Profile};
use crate::report::Report;
use crate::symseq::{SymSeq, SymSeqMorphism};
use crate::trees::{enumerate_trees, DecPayload, DecTree, Tree};
use crate::{Error, Result};
use std::collections::BTreeMap;

/// A free operad, together with the tree behind every element.
#[derive(Debug, Clone)]
pub struct FreeOperad {
    pub operad: Operad,
    /// The inclusion of the generators.
    pub inclusion: SymSeqMorphism,
    /// Element atom → the canonical decorated tree it denotes.
    pub trees: BTreeMap<Elem, DecTree>,
    pub max_vertices: usize,
    pub report: Report,
}

/// The payload action induced by the generator sequence: a vertex input
/// reordering acts on the decoration through the sequence's action.
pub fn payload_action<'a>(
    gens: &'a SymSeq,
) -> impl Fn(&DecPayload, &Profile, &Permutation) -> Result<DecPayload> + 'a {
    move |payload, profile, sigma| {
        let dec = gens.act(profile, sigma)?.apply(&payload.dec)?;
        Ok(DecPayload { dec, label: payload.label.clone() })
    }
}

impl FreeOperad {
    pub fn tree_of(&self, e: &Elem) -> Result<&DecTree> {
        self.trees.get(e).ok_or_else(|| Error::Malformed(format!("unknown element {e}")))
    }

    pub fn elem_of(&self, t: &DecTree) -> Elem {
        Elem::atom(t.serialize())
    }

    /// Canonicalise a decorated tree and return its element atom.
    pub fn canonical_elem(&self, gens: &SymSeq, t: &DecTree) -> Result<Elem> {
        let act = payload_action(gens);
        Ok(Elem::atom(t.canonical_form(&act)?.serialize()))
    }
}

/// Decorate every enumerated tree shape with generator elements and collect
/// the canonical representatives per profile.
fn decorated_trees_at(
    gens: &SymSeq,
    profile: &Profile,
    max_vertices: usize,
    max_vertex_arity: usize,
) -> Result<Vec<DecTree>> {
    let act = payload_action(gens);
    let mut seen = BTreeMap::new();
    for shape in enumerate_trees(&gens.colours, profile, max_vertices, max_vertex_arity) {
        let paths = shape.vertex_paths();
        let options: Vec<Vec<Elem>> = paths
            .iter()
            .map(|p| {
                let vp = shape.vertex_profile(p).unwrap();
                gens.component(&vp).elems().to_vec()
            })
            .collect();
        if options.iter().any(|o| o.is_empty()) {
            continue;
        }
        let mut pick = vec![0usize; paths.len()];
        loop {
            let decorated = decorate(&shape, &paths, &options, &pick);
            let canon = decorated.canonical_form(&act)?;
            seen.entry(canon.serialize()).or_insert(canon);
            let mut c = paths.len();
            loop {
                if c == 0 {
                    break;
                }
                c -= 1;
                pick[c] += 1;
                if pick[c] < options[c].len() {
                    break;
                }
                pick[c] = 0;
            }
            if paths.is_empty() || (c == 0 && pick[0] == 0) {
                break;
            }
        }
    }
    Ok(seen.into_values().collect())
}

fn decorate(
    shape: &Tree<()>,
    paths: &[Vec<usize>],
    options: &[Vec<Elem>],
    pick: &[usize],
) -> DecTree {
    fn rec(
        t: &Tree<()>,
        prefix: &mut Vec<usize>,
        table: &BTreeMap<&[usize], Elem>,
    ) -> DecTree {
        match t {
            Tree::Leaf { number, colour } => {
                Tree::Leaf { number: *number, colour: colour.clone() }
            }
            Tree::Vertex { colour, children, .. } => {
                let dec = table[prefix.as_slice()].clone();
                let children = children
                    .iter()
                    .enumerate()
                    .map(|(i, c)| {
                        prefix.push(i);
                        let r = rec(c, prefix, table);
                        prefix.pop();
                        r
                    })
                    .collect();
                Tree::Vertex {
                    colour: colour.clone(),
                    payload: DecPayload { dec, label: None },
                    children,
                }
            }
        }
    }
    let table: BTreeMap<&[usize], Elem> = paths
        .iter()
        .enumerate()
        .map(|(k, p)| (p.as_slice(), options[k][pick[k]].clone()))
        .collect();
    rec(shape, &mut Vec::new(), &table)
}

/// Act on a tree element by `σ`: renumber leaves `k ↦ σ⁻¹(k)` and
/// recanonicalise.
pub fn act_on_tree(gens: &SymSeq, t: &DecTree, sigma: &Permutation) -> Result<DecTree> {
    let inv = sigma.inverse();
    let renumbered = renumber_tree(t, &|k| inv.apply(k));
    renumbered.canonical_form(&payload_action(gens))
}

fn renumber_tree(t: &DecTree, f: &impl Fn(usize) -> usize) -> DecTree {
    match t {
        Tree::Leaf { number, colour } => Tree::Leaf { number: f(*number), colour: colour.clone() },
        Tree::Vertex { colour, payload, children } => Tree::Vertex {
            colour: colour.clone(),
            payload: payload.clone(),
            children: children.iter().map(|c| renumber_tree(c, f)).collect(),
        },
    }
}

/// Build the free operad on `gens` with the given vertex budget per element.
pub fn free_operad(gens: &SymSeq, max_vertices: usize) -> Result<FreeOperad> {
    if gens.tag != Tag::FinSet {
        return Err(Error::TagMismatch("free operads are FinSet-only".into()));
    }
    let mut report = Report::new();
    let max_vertex_arity =
        gens.stored_profiles().map(|p| p.arity()).max().unwrap_or(0).min(gens.max_arity);
    let mut seq = SymSeq::new(Tag::FinSet, gens.colours.clone(), gens.max_arity);
    let mut trees: BTreeMap<Elem, DecTree> = BTreeMap::new();

    // components
    for profile in all_profiles(&gens.colours, gens.max_arity) {
        let ts = decorated_trees_at(gens, &profile, max_vertices, max_vertex_arity)?;
        if ts.is_empty() {
            continue;
        }
        let elems: Vec<Elem> = ts.iter().map(|t| Elem::atom(t.serialize())).collect();
        for (e, t) in elems.iter().zip(&ts) {
            trees.insert(e.clone(), t.clone());
        }
        seq.set_component(profile, Obj::Fin(FinSetObj::new(elems)?))?;
    }

    // action generators
    let act = payload_action(gens);
    let profiles: Vec<Profile> = seq.stored_profiles().cloned().collect();
    for p in &profiles {
        for i in 1..p.arity() {
            let s = Permutation::adjacent(p.arity(), i)?;
            let q = p.act(&s)?;
            let src = seq.component(p);
            let tgt = seq.component(&q);
            let mut images = Vec::new();
            for e in src.elems() {
                let moved = act_on_tree(gens, &trees[e], &s)?;
                images.push(Elem::atom(moved.serialize()));
            }
            let map = Map::from_fn(&src, &tgt, |e| {
                let idx = src.index_of(e).unwrap();
                images[idx].clone()
            })?;
            seq.set_action_gen(p.clone(), i, map)?;
        }
    }

    let mut operad = Operad::new(seq);

    // units: bare edges
    for c in &gens.colours {
        let bare: DecTree = Tree::bare(1, c.clone());
        let atom = Elem::atom(bare.serialize());
        let lin = Profile::linear(c);
        if operad.component(&lin).index_of(&atom).is_none() {
            return Err(Error::Malformed("bare edge missing from the linear component".into()));
        }
        let unit = Map::from_fn(&Obj::unit(Tag::FinSet), &operad.component(&lin), |_| atom.clone())?;
        operad.set_unit(c.clone(), unit);
    }

    // compositions: graft + canonicalise, watching the vertex budget
    for key in operad.expected_gamma_keys() {
        let (outer, i, inner) = &key;
        let src_o = operad.component(outer);
        let src_i = operad.component(inner);
        let spliced = Profile::new(outer.splice(*i, &inner.inputs)?, outer.output.clone());
        let mut overflow = false;
        let mut table: BTreeMap<Elem, Elem> = BTreeMap::new();
        'outer: for eo in src_o.elems() {
            for ei in src_i.elems() {
                let to = &trees[eo];
                let ti = &trees[ei];
                if to.vertex_count() + ti.vertex_count() > max_vertices {
                    overflow = true;
                    break 'outer;
                }
                let grafted = to.graft(*i, ti)?.canonical_form(&act)?;
                table.insert(eo.concat(ei), Elem::atom(grafted.serialize()));
            }
        }
        if overflow {
            report.truncated(format!(
                "free operad: composition {} ∘{} {} exceeds the vertex budget {max_vertices}",
                outer.render(),
                i,
                inner.render()
            ));
            operad.mark_truncated(outer.clone(), *i, inner.clone());
            continue;
        }
        let src = src_o.tensor(&src_i)?;
        let tgt = operad.component(&spliced);
        let map = Map::from_fn(&src, &tgt, |e| table[e].clone())?;
        operad.set_gamma(outer.clone(), *i, inner.clone(), map)?;
    }

    // the inclusion of generators: single corollas
    let mut inc_maps = BTreeMap::new();
    for p in gens.stored_profiles() {
        if gens.is_empty_at(p) {
            continue;
        }
        let src = gens.component(p);
        let tgt = operad.component(p);
        let map = Map::from_fn(&src, &tgt, |e| {
            let corolla: DecTree = Tree::Vertex {
                colour: p.output.clone(),
                payload: DecPayload { dec: e.clone(), label: None },
                children: (1..=p.arity())
                    .map(|k| Tree::Leaf { number: k, colour: p.inputs[k - 1].clone() })
                    .collect(),
            };
            Elem::atom(corolla.canonical_form(&payload_action(gens)).unwrap().serialize())
        })?;
        inc_maps.insert(p.clone(), map);
    }
    let inclusion = SymSeqMorphism {
        colour_map: gens.colours.iter().map(|c| (c.clone(), c.clone())).collect(),
        maps: inc_maps,
    };

    Ok(FreeOperad { operad, inclusion, trees, max_vertices, report: report.finish() })
}

/// All profiles over a colour set up to an arity bound.
pub fn all_profiles(colours: &[crate::enrich::Colour], max_arity: usize) -> Vec<Profile> {
    let mut out = Vec::new();
    for n in 0..=max_arity {
        let mut idx = vec![0usize; n + 1];
        loop {
            out.push(Profile::new(
                (0..n).map(|k| colours[idx[k]].clone()).collect(),
                colours[idx[n]].clone(),
            ));
            let mut c = n + 1;
            loop {
                if c == 0 {
                    break;
                }
                c -= 1;
                idx[c] += 1;
                if idx[c] < colours.len() {
                    break;
                }
                idx[c] = 0;
            }
            if c == 0 && idx[0] == 0 {
                break;
            }
        }
    }
    out
}

/// Evaluate a decorated tree in a target operad, given images of the
/// generators: the operational universal property of the free operad.
pub fn eval_tree(
    gens: &SymSeq,
    images: &SymSeqMorphism,
    target: &Operad,
    t: &DecTree,
) -> Result<(Profile, Elem)> {
    let (planar_profile, planar_elem, planar_numbers) = eval_planar(gens, images, target, t)?;
    // reorder from planar order to the numbering
    let n = planar_numbers.len();
    let omega = Permutation::new(planar_numbers)?;
    let final_profile = planar_profile.act(&omega.inverse())?;
    let moved = target.seq.act(&planar_profile, &omega.inverse())?.apply(&planar_elem)?;
    let _ = n;
    Ok((final_profile, moved))
}

fn eval_planar(
    gens: &SymSeq,
    images: &SymSeqMorphism,
    target: &Operad,
    t: &DecTree,
) -> Result<(Profile, Elem, Vec<usize>)> {
    match t {
        Tree::Leaf { number, colour } => {
            let c = images.apply_colour(colour)?;
            Ok((Profile::linear(&c), target.unit_elem(&c)?, vec![*number]))
        }
        Tree::Vertex { colour, payload, children } => {
            let vp = Profile::new(
                children.iter().map(|c| c.root_colour().clone()).collect(),
                colour.clone(),
            );
            let img = images.map_at(gens, &target.seq, &vp)?.apply(&payload.dec)?;
            let outer = images.apply_profile(&vp)?;
            let mut args = Vec::new();
            let mut numbers = Vec::new();
            for child in children {
                let (cp, ce, cn) = eval_planar(gens, images, target, child)?;
                args.push((cp, ce));
                numbers.extend(cn);
            }
            let (profile, elem) = target.full_composition(&outer, &img, &args)?;
            Ok((profile, elem, numbers))
        }
    }
}

/// Extend a map of generators `E → U(P)` to an operad morphism
/// `free(E) → P` by evaluating trees.
pub fn universal_extension(
    free: &FreeOperad,
    gens: &SymSeq,
    images: &SymSeqMorphism,
    target: &Operad,
) -> Result<OperadMorphism> {
    let mut maps = BTreeMap::new();
    for p in free.operad.seq.stored_profiles() {
        if free.operad.seq.is_empty_at(p) {
            continue;
        }
        let src = free.operad.component(p);
        let tgt = target.component(&images.apply_profile(p)?);
        let mut table = BTreeMap::new();
        for e in src.elems() {
            let t = free.tree_of(e)?;
            let (qp, qe) = eval_tree(gens, images, target, t)?;
            if qp != images.apply_profile(p)? {
                return Err(Error::ProfileMismatch(format!(
                    "evaluation landed at {qp}, expected the image of {p}"
                )));
            }
            table.insert(e.clone(), qe);
        }
        maps.insert(p.clone(), Map::from_fn(&src, &tgt, |e| table[e].clone())?);
    }
    Ok(SymSeqMorphism { colour_map: images.colour_map.clone(), maps })
}
