//! The Boardman–Vogt construction: trees with operad-decorated vertices and
//! segment-labelled inner edges, modulo contracting `δ0`-edges and deleting
//! unit-decorated unary vertices.

use crate::enrich::{Elem, FinSetObj, Map, Obj, Tag};
use crate::hopf::HopfStructure;
use crate::operad::{builtin, hadamard_operad, Builtin, Operad, OperadMorphism};
use crate::perms::{Permutation, Profile};
use crate::report::Report;
use crate::segment::{tensor_segments, HopfSegment, Segment};
use crate::symseq::{split_profile, SymSeq, SymSeqMorphism};
use crate::trees::{enumerate_trees, DecPayload, DecTree, Tree};
use crate::{Error, Result};
use std::collections::BTreeMap;

/// A constructed `W_H P` with the data needed to keep computing in it.
#[derive(Debug, Clone)]
pub struct BvOperad {
    pub operad: Operad,
    pub segment: Segment,
    pub base: Operad,
    /// Element atom → the normal-form tree it denotes.
    pub trees: BTreeMap<Elem, DecTree>,
    pub max_vertices: usize,
    pub report: Report,
}

/// One applicable rewrite: contract a `δ0`-labelled inner edge, or delete a
/// unit-decorated unary vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Redex {
    Contract(Vec<usize>),
    RemoveUnary(Vec<usize>),
}

/// All redexes of a tree, in preorder.
pub fn redexes(seg: &Segment, base: &Operad, t: &DecTree) -> Vec<Redex> {
    let mut out = Vec::new();
    for path in t.vertex_paths() {
        let Ok(Tree::Vertex { colour, payload, children }) =
            t.subtree(&path).map(|s| s.clone())
        else {
            continue;
        };
        if !path.is_empty() && payload.label.as_ref() == Some(&seg.d0) {
            out.push(Redex::Contract(path.clone()));
        }
        if children.len() == 1 {
            if let Ok(u) = base.unit_elem(&colour) {
                if payload.dec == u && children[0].root_colour() == &colour {
                    out.push(Redex::RemoveUnary(path.clone()));
                }
            }
        }
    }
    out
}

/// Apply one redex.
pub fn apply_redex(seg: &Segment, base: &Operad, t: &DecTree, r: &Redex) -> Result<DecTree> {
    match r {
        Redex::Contract(path) => {
            let (parent_path, slot) = (&path[..path.len() - 1], path[path.len() - 1]);
            let parent = t.subtree(parent_path)?.clone();
            let Tree::Vertex { colour, payload, children } = parent else {
                return Err(Error::BadEdge("contract target has no parent vertex".into()));
            };
            let Tree::Vertex { payload: vp, children: vkids, .. } = children[slot].clone() else {
                return Err(Error::BadEdge("contract target is a leaf".into()));
            };
            let parent_profile = Profile::new(
                children.iter().map(|c| c.root_colour().clone()).collect(),
                colour.clone(),
            );
            let child_profile = Profile::new(
                vkids.iter().map(|c| c.root_colour().clone()).collect(),
                children[slot].root_colour().clone(),
            );
            let merged_dec =
                base.compose_elems(&parent_profile, &payload.dec, slot + 1, &child_profile, &vp.dec)?;
            let mut new_children = children.clone();
            new_children.splice(slot..=slot, vkids);
            let merged = Tree::Vertex {
                colour,
                payload: DecPayload { dec: merged_dec, label: payload.label.clone() },
                children: new_children,
            };
            replace_at(t, parent_path, merged)
        }
        Redex::RemoveUnary(path) => {
            let v = t.subtree(path)?.clone();
            let Tree::Vertex { payload, children, .. } = v else {
                return Err(Error::BadVertex("not a vertex".into()));
            };
            let child = children[0].clone();
            let replacement = match child {
                // merged edge is a leaf edge: the lower label is augmented away
                Tree::Leaf { .. } => child,
                Tree::Vertex { colour, payload: cp, children: ck } => {
                    let label = match (&payload.label, &cp.label) {
                        // v was the root: the merged edge is the root edge
                        (None, _) => None,
                        // lower edge first into the product
                        (Some(lo), Some(hi)) => Some(seg.mul(lo, hi)?),
                        (Some(_), None) => {
                            return Err(Error::Malformed("inner vertex without a label".into()))
                        }
                    };
                    Tree::Vertex { colour, payload: DecPayload { dec: cp.dec, label }, children: ck }
                }
            };
            replace_at(t, path, replacement)
        }
    }
}

fn replace_at(t: &DecTree, path: &[usize], replacement: DecTree) -> Result<DecTree> {
    if path.is_empty() {
        return Ok(replacement);
    }
    match t {
        Tree::Leaf { .. } => Err(Error::BadVertex("path into a leaf".into())),
        Tree::Vertex { colour, payload, children } => {
            let mut children = children.clone();
            children[path[0]] = replace_at(&children[path[0]], &path[1..], replacement)?;
            Ok(Tree::Vertex { colour: colour.clone(), payload: payload.clone(), children })
        }
    }
}

/// Rewrite to normal form (first redex in preorder each step), then take the
/// canonical form.
pub fn normalize(seg: &Segment, base: &Operad, t: &DecTree) -> Result<DecTree> {
    let mut cur = t.clone();
    loop {
        let rs = redexes(seg, base, &cur);
        match rs.first() {
            None => break,
            Some(r) => cur = apply_redex(seg, base, &cur, r)?,
        }
    }
    let act = crate::operad::payload_action(&base.seq);
    cur.canonical_form(&act)
}

/// Rewrite to normal form choosing redexes by the supplied picker (used by
/// the confluence tests).
pub fn normalize_with(
    seg: &Segment,
    base: &Operad,
    t: &DecTree,
    mut pick: impl FnMut(usize) -> usize,
) -> Result<DecTree> {
    let mut cur = t.clone();
    loop {
        let rs = redexes(seg, base, &cur);
        if rs.is_empty() {
            break;
        }
        let r = &rs[pick(rs.len()) % rs.len()];
        cur = apply_redex(seg, base, &cur, r)?;
    }
    let act = crate::operad::payload_action(&base.seq);
    cur.canonical_form(&act)
}

/// All decorated, labelled trees at a profile within the vertex budget; when
/// `normal_only` is set, `δ0` labels and deletable unary vertices are
/// excluded.
pub fn decorated_labelled_trees(
    seg: &Segment,
    base: &Operad,
    profile: &Profile,
    max_vertices: usize,
    normal_only: bool,
) -> Result<Vec<DecTree>> {
    let max_vertex_arity = base
        .seq
        .stored_profiles()
        .map(|p| p.arity())
        .max()
        .unwrap_or(0)
        .min(base.max_arity());
    let act = crate::operad::payload_action(&base.seq);
    let mut seen: BTreeMap<String, DecTree> = BTreeMap::new();
    let labels: Vec<Elem> = seg
        .h
        .elems()
        .iter()
        .filter(|l| !(normal_only && **l == seg.d0))
        .cloned()
        .collect();
    for shape in enumerate_trees(&base.colours().to_vec(), profile, max_vertices, max_vertex_arity)
    {
        let paths = shape.vertex_paths();
        let dec_options: Vec<Vec<Elem>> = paths
            .iter()
            .map(|p| {
                let vp = shape.vertex_profile(p).unwrap();
                let elems = base.component(&vp).elems().to_vec();
                if normal_only && vp.arity() == 1 {
                    let unit = base.unit_elem(&vp.output).ok();
                    elems.into_iter().filter(|e| Some(e) != unit.as_ref()).collect()
                } else {
                    elems
                }
            })
            .collect();
        if dec_options.iter().any(|o| o.is_empty()) {
            continue;
        }
        // label options: one per non-root vertex
        let label_slots: Vec<bool> = paths.iter().map(|p| !p.is_empty()).collect();
        if labels.is_empty() && label_slots.iter().any(|&b| b) {
            continue;
        }
        let mut dec_pick = vec![0usize; paths.len()];
        loop {
            let mut label_pick = vec![0usize; paths.len()];
            loop {
                let table: BTreeMap<&[usize], DecPayload> = paths
                    .iter()
                    .enumerate()
                    .map(|(k, p)| {
                        let label = label_slots[k].then(|| labels[label_pick[k]].clone());
                        (p.as_slice(), DecPayload { dec: dec_options[k][dec_pick[k]].clone(), label })
                    })
                    .collect();
                let t = decorate_shape(&shape, &table);
                let c = t.canonical_form(&act)?;
                seen.entry(c.serialize()).or_insert(c);
                // advance labels over labelled slots only
                let mut k = paths.len();
                loop {
                    if k == 0 {
                        break;
                    }
                    k -= 1;
                    if !label_slots[k] {
                        continue;
                    }
                    label_pick[k] += 1;
                    if label_pick[k] < labels.len() {
                        break;
                    }
                    label_pick[k] = 0;
                }
                if paths.is_empty()
                    || labels.is_empty()
                    || (k == 0 && label_pick.iter().all(|&v| v == 0))
                {
                    break;
                }
            }
            let mut k = paths.len();
            loop {
                if k == 0 {
                    break;
                }
                k -= 1;
                dec_pick[k] += 1;
                if dec_pick[k] < dec_options[k].len() {
                    break;
                }
                dec_pick[k] = 0;
            }
            if paths.is_empty() || (k == 0 && dec_pick.iter().all(|&v| v == 0)) {
                break;
            }
        }
    }
    Ok(seen.into_values().collect())
}

fn decorate_shape(shape: &Tree<()>, table: &BTreeMap<&[usize], DecPayload>) -> DecTree {
    fn rec(t: &Tree<()>, prefix: &mut Vec<usize>, table: &BTreeMap<&[usize], DecPayload>) -> DecTree {
        match t {
            Tree::Leaf { number, colour } => {
                Tree::Leaf { number: *number, colour: colour.clone() }
            }
            Tree::Vertex { colour, children, .. } => {
                let payload = table[prefix.as_slice()].clone();
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
                Tree::Vertex { colour: colour.clone(), payload, children }
            }
        }
    }
    rec(shape, &mut Vec::new(), table)
}

/// Graft for `W`-elements: the glued edge, when inner, is labelled `δ1`.
pub fn graft_bv(seg: &Segment, t1: &DecTree, i: usize, t2: &DecTree) -> Result<DecTree> {
    if t1.is_leaf() || t2.is_leaf() {
        return t1.graft(i, t2);
    }
    let t2 = match t2 {
        Tree::Vertex { colour, payload, children } => Tree::Vertex {
            colour: colour.clone(),
            payload: DecPayload { dec: payload.dec.clone(), label: Some(seg.d1.clone()) },
            children: children.clone(),
        },
        Tree::Leaf { .. } => unreachable!(),
    };
    t1.graft(i, &t2)
}

/// Build `W_H P` within the given bounds.
pub fn bv_construct(
    seg: &Segment,
    base: &Operad,
    max_arity: usize,
    max_vertices: usize,
) -> Result<BvOperad> {
    if base.tag() != Tag::FinSet {
        return Err(Error::TagMismatch("the Boardman–Vogt construction is FinSet-only".into()));
    }
    let mut report = Report::new();
    let max_arity = max_arity.min(base.max_arity());
    let mut seq = SymSeq::new(Tag::FinSet, base.colours().to_vec(), max_arity);
    let mut trees: BTreeMap<Elem, DecTree> = BTreeMap::new();
    for profile in crate::operad::all_profiles(&base.colours().to_vec(), max_arity) {
        let ts = decorated_labelled_trees(seg, base, &profile, max_vertices, true)?;
        if ts.is_empty() {
            continue;
        }
        let elems: Vec<Elem> = ts.iter().map(|t| Elem::atom(t.serialize())).collect();
        for (e, t) in elems.iter().zip(&ts) {
            trees.insert(e.clone(), t.clone());
        }
        seq.set_component(profile, Obj::Fin(FinSetObj::new(elems)?))?;
    }
    // action: leaf renumbering
    let act = crate::operad::payload_action(&base.seq);
    let profiles: Vec<Profile> = seq.stored_profiles().cloned().collect();
    for p in &profiles {
        for i in 1..p.arity() {
            let s = Permutation::adjacent(p.arity(), i)?;
            let q = p.act(&s)?;
            let src = seq.component(p);
            let tgt = seq.component(&q);
            let map = Map::from_fn(&src, &tgt, |e| {
                let inv = s.inverse();
                let moved = renumber_dec(&trees[e], &|k| inv.apply(k));
                Elem::atom(moved.canonical_form(&act).unwrap().serialize())
            })?;
            seq.set_action_gen(p.clone(), i, map)?;
        }
    }
    let mut operad = Operad::new(seq);
    // units: bare edges
    for c in base.colours() {
        let bare: DecTree = Tree::bare(1, c.clone());
        let atom = Elem::atom(bare.serialize());
        let lin = Profile::linear(c);
        let unit = Map::from_fn(&Obj::unit(Tag::FinSet), &operad.component(&lin), |_| atom.clone())?;
        operad.set_unit(c.clone(), unit);
    }
    // compositions: graft with δ1 and renormalise
    for key in operad.expected_gamma_keys() {
        let (outer, i, inner) = &key;
        let src_o = operad.component(outer);
        let src_i = operad.component(inner);
        let mut table: BTreeMap<Elem, Elem> = BTreeMap::new();
        let mut overflow = None;
        'outer: for eo in src_o.elems() {
            for ei in src_i.elems() {
                let grafted = graft_bv(seg, &trees[eo], *i, &trees[ei])?;
                match normalize(seg, base, &grafted) {
                    Ok(nf) => {
                        if nf.vertex_count() > max_vertices {
                            overflow = Some(format!(
                                "normal form with {} vertices exceeds the budget {max_vertices}",
                                nf.vertex_count()
                            ));
                            break 'outer;
                        }
                        table.insert(eo.concat(ei), Elem::atom(nf.serialize()));
                    }
                    Err(Error::Truncation(msg)) => {
                        overflow = Some(msg);
                        break 'outer;
                    }
                    Err(e) => return Err(e),
                }
            }
        }
        if let Some(msg) = overflow {
            report.truncated(format!(
                "W: composition {} ∘{} {}: {msg}",
                outer.render(),
                i,
                inner.render()
            ));
            operad.mark_truncated(outer.clone(), *i, inner.clone());
            continue;
        }
        let src = src_o.tensor(&src_i)?;
        let spliced = Profile::new(outer.splice(*i, &inner.inputs)?, outer.output.clone());
        let map = Map::from_fn(&src, &operad.component(&spliced), |e| table[e].clone())?;
        operad.set_gamma(outer.clone(), *i, inner.clone(), map)?;
    }
    Ok(BvOperad {
        operad,
        segment: seg.clone(),
        base: base.clone(),
        trees,
        max_vertices,
        report: report.finish(),
    })
}

fn renumber_dec(t: &DecTree, f: &impl Fn(usize) -> usize) -> DecTree {
    match t {
        Tree::Leaf { number, colour } => Tree::Leaf { number: f(*number), colour: colour.clone() },
        Tree::Vertex { colour, payload, children } => Tree::Vertex {
            colour: colour.clone(),
            payload: payload.clone(),
            children: children.iter().map(|c| renumber_dec(c, f)).collect(),
        },
    }
}

/// Map trees along a segment morphism and an operad morphism:
/// `W_u f : W_H P → W_{H'} P'`.
pub fn bv_functorial(
    src: &BvOperad,
    dst: &BvOperad,
    u: &Map,
    f: &OperadMorphism,
) -> Result<OperadMorphism> {
    let mut maps = BTreeMap::new();
    for p in src.operad.seq.stored_profiles() {
        if src.operad.seq.is_empty_at(p) {
            continue;
        }
        let source = src.operad.component(p);
        let q = f.apply_profile(p)?;
        let target = dst.operad.component(&q);
        let mut table = BTreeMap::new();
        for e in source.elems() {
            let mapped = map_tree(&src.trees[e], u, f, &src.base)?;
            let nf = normalize(&dst.segment, &dst.base, &mapped)?;
            if nf.vertex_count() > dst.max_vertices {
                return Err(Error::BoundsExceeded(
                    "image normal form exceeds the target vertex budget".into(),
                ));
            }
            table.insert(e.clone(), Elem::atom(nf.serialize()));
        }
        maps.insert(p.clone(), Map::from_fn(&source, &target, |e| table[e].clone())?);
    }
    Ok(SymSeqMorphism { colour_map: f.colour_map.clone(), maps })
}

fn map_tree(t: &DecTree, u: &Map, f: &OperadMorphism, base: &Operad) -> Result<DecTree> {
    match t {
        Tree::Leaf { number, colour } => {
            Ok(Tree::Leaf { number: *number, colour: f.apply_colour(colour)? })
        }
        Tree::Vertex { colour, payload, children } => {
            let vp = Profile::new(
                children.iter().map(|c| c.root_colour().clone()).collect(),
                colour.clone(),
            );
            let dec = f
                .maps
                .get(&vp)
                .ok_or_else(|| Error::Malformed(format!("no morphism map at {vp}")))?
                .apply(&payload.dec)?;
            let label = payload.label.as_ref().map(|l| u.apply(l)).transpose()?;
            let _ = base;
            Ok(Tree::Vertex {
                colour: f.apply_colour(colour)?,
                payload: DecPayload { dec, label },
                children: children
                    .iter()
                    .map(|c| map_tree(c, u, f, base))
                    .collect::<Result<_>>()?,
            })
        }
    }
}

/// The oplax comparison `W_{H⊗H'}(P ⊗_H P') → W_H P ⊗_H W_{H'} P'`: split
/// every label and decoration componentwise over the same tree shape.
pub fn bv_oplax(
    src: &BvOperad,
    left: &BvOperad,
    right: &BvOperad,
) -> Result<OperadMorphism> {
    let left_col_len = left.operad.colours().first().map_or(1, |c| c.len());
    let left_label_len = left
        .segment
        .h
        .elem_len()
        .ok_or_else(|| Error::Malformed("empty segment".into()))?;
    let target = hadamard_operad(&left.operad, &right.operad)?;
    let mut colour_map = BTreeMap::new();
    for c in src.operad.colours() {
        colour_map.insert(c.clone(), c.clone());
    }
    let mut maps = BTreeMap::new();
    for p in src.operad.seq.stored_profiles() {
        if src.operad.seq.is_empty_at(p) {
            continue;
        }
        let source = src.operad.component(p);
        let mut table = BTreeMap::new();
        for e in source.elems() {
            let t = &src.trees[e];
            let (tl, tr) = split_tree(t, left_col_len, left_label_len, &left.base, &right.base)?;
            let nl = normalize(&left.segment, &left.base, &tl)?;
            let nr = normalize(&right.segment, &right.base, &tr)?;
            table.insert(e.clone(), Elem::atom(nl.serialize()).concat(&Elem::atom(nr.serialize())));
        }
        let tgt = target.component(p);
        maps.insert(p.clone(), Map::from_fn(&source, &tgt, |e| table[e].clone())?);
    }
    Ok(SymSeqMorphism { colour_map, maps })
}

fn split_tree(
    t: &DecTree,
    col_len: usize,
    label_len: usize,
    left_base: &Operad,
    right_base: &Operad,
) -> Result<(DecTree, DecTree)> {
    match t {
        Tree::Leaf { number, colour } => {
            let (cl, cr) = colour.split(col_len);
            Ok((
                Tree::Leaf { number: *number, colour: cl },
                Tree::Leaf { number: *number, colour: cr },
            ))
        }
        Tree::Vertex { colour, payload, children } => {
            let (cl, cr) = colour.split(col_len);
            // the decoration splits by the left component's tuple length at
            // this vertex profile
            let vp = Profile::new(
                children.iter().map(|c| c.root_colour().clone()).collect(),
                colour.clone(),
            );
            let (lp, rp) = split_profile(&vp, col_len);
            let llen = left_base
                .component(&lp)
                .elem_len()
                .ok_or_else(|| Error::Malformed(format!("empty left component at {lp}")))?;
            let _ = right_base;
            let dec_l = Elem(payload.dec.0[..llen].to_vec());
            let dec_r = Elem(payload.dec.0[llen..].to_vec());
            let (lab_l, lab_r) = match &payload.label {
                None => (None, None),
                Some(l) => (
                    Some(Elem(l.0[..label_len].to_vec())),
                    Some(Elem(l.0[label_len..].to_vec())),
                ),
            };
            let _ = rp;
            let mut kids_l = Vec::new();
            let mut kids_r = Vec::new();
            for c in children {
                let (a, b) = split_tree(c, col_len, label_len, left_base, right_base)?;
                kids_l.push(a);
                kids_r.push(b);
            }
            Ok((
                Tree::Vertex {
                    colour: cl,
                    payload: DecPayload { dec: dec_l, label: lab_l },
                    children: kids_l,
                },
                Tree::Vertex {
                    colour: cr,
                    payload: DecPayload { dec: dec_r, label: lab_r },
                    children: kids_r,
                },
            ))
        }
    }
}

/// Transport a Hopf structure through the construction: `W_H Q` of a Hopf
/// operad `Q` over a Hopf segment `H` is again a Hopf operad.
pub fn bv_hopf_transport(
    hseg: &HopfSegment,
    base: &Operad,
    hopf: &HopfStructure,
    max_arity: usize,
    max_vertices: usize,
) -> Result<(BvOperad, HopfStructure)> {
    let w = bv_construct(&hseg.seg, base, max_arity, max_vertices)?;
    let qq = hadamard_operad(base, base)?;
    let w_h_qq = bv_construct(&hseg.seg, &qq, max_arity, max_vertices)?;
    let id_h = Map::identity(&hseg.seg.h);
    let step1 = bv_functorial(&w, &w_h_qq, &id_h, &hopf.delta)?;
    let hh = tensor_segments(&hseg.seg, &hseg.seg)?;
    let w_hh_qq = bv_construct(&hh, &qq, max_arity, max_vertices)?;
    let idqq = SymSeqMorphism::identity(&qq.seq);
    let step2 = bv_functorial(&w_h_qq, &w_hh_qq, &hseg.comult, &idqq)?;
    let oplax = bv_oplax(&w_hh_qq, &w, &w)?;
    let ww = hadamard_operad(&w.operad, &w.operad)?;
    let delta = step1.then(&w_h_qq.operad.seq, &step2)?.then(&w_hh_qq.operad.seq, &oplax)?;
    let _ = &ww;

    // counit: W_H Q → W_𝟙 uCom ≅ uCom
    let ucom = builtin(Builtin::UCom, max_arity)?;
    let terminal = Segment::terminal();
    let w_unit_ucom = bv_construct(&terminal, &ucom, max_arity, max_vertices)?;
    let aug = hseg.seg.aug.clone();
    let to_w_ucom = bv_functorial(&w, &w_unit_ucom, &aug, &hopf.counit)?;
    // the collapse iso: every component of W_𝟙 uCom is a point
    let mut collapse_maps = BTreeMap::new();
    for p in w_unit_ucom.operad.seq.stored_profiles() {
        if w_unit_ucom.operad.seq.is_empty_at(p) {
            continue;
        }
        let src = w_unit_ucom.operad.component(p);
        if src.size() != 1 {
            return Err(Error::Malformed(format!(
                "W over the terminal segment is not a point at {p}"
            )));
        }
        let tgt = ucom.component(p);
        let t = tgt.elems()[0].clone();
        collapse_maps.insert(p.clone(), Map::from_fn(&src, &tgt, |_| t.clone())?);
    }
    let collapse = SymSeqMorphism {
        colour_map: w_unit_ucom
            .operad
            .colours()
            .iter()
            .map(|c| (c.clone(), c.clone()))
            .collect(),
        maps: collapse_maps,
    };
    let counit = to_w_ucom.then(&w_unit_ucom.operad.seq, &collapse)?;
    Ok((w, HopfStructure { delta, counit }))
}

/// Generate-then-quotient counting oracle: enumerate every decorated,
/// labelled tree, saturate the single-step rewrite identifications, and
/// count the classes.
pub fn oracle_component_count(
    seg: &Segment,
    base: &Operad,
    profile: &Profile,
    max_vertices: usize,
) -> Result<usize> {
    let act = crate::operad::payload_action(&base.seq);
    let all = decorated_labelled_trees(seg, base, profile, max_vertices, false)?;
    let mut index: BTreeMap<String, usize> = BTreeMap::new();
    for (i, t) in all.iter().enumerate() {
        index.insert(t.serialize(), i);
    }
    let mut uf = crate::enrich::UnionFind::new(all.len());
    for (i, t) in all.iter().enumerate() {
        for r in redexes(seg, base, t) {
            let t2 = apply_redex(seg, base, t, &r)?;
            let c2 = t2.canonical_form(&act)?.serialize();
            if let Some(&j) = index.get(&c2) {
                uf.union(i, j);
            } else {
                return Err(Error::Malformed("rewrite left the enumerated universe".into()));
            }
        }
    }
    let mut roots: Vec<usize> = (0..all.len()).map(|i| uf.find(i)).collect();
    roots.sort_unstable();
    roots.dedup();
    Ok(roots.len())
}
