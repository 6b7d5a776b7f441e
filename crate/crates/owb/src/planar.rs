//! Planar operads, their symmetrisation, and the inverse construction that
//! reads a planar operad off a `uAs`-comodule.

use crate::enrich::{empty_map, Colour, Elem, FinSetObj, Map, Obj, Tag};
use crate::hopf::{ComoduleStructure, Side};
use crate::operad::Operad;
use crate::perms::{block_insert, Permutation, Profile};
use crate::report::Report;
use crate::symseq::{SymSeq, SymSeqMorphism};
use crate::{Error, Result};
use std::collections::BTreeMap;

/// An operad without symmetric group actions.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanarOperad {
    pub tag: Tag,
    pub colours: Vec<Colour>,
    pub max_arity: usize,
    components: BTreeMap<Profile, Obj>,
    gamma: BTreeMap<(Profile, usize, Profile), Map>,
    units: BTreeMap<Colour, Map>,
}

impl PlanarOperad {
    pub fn new(tag: Tag, mut colours: Vec<Colour>, max_arity: usize) -> Self {
        colours.sort();
        colours.dedup();
        PlanarOperad {
            tag,
            colours,
            max_arity,
            components: BTreeMap::new(),
            gamma: BTreeMap::new(),
            units: BTreeMap::new(),
        }
    }

    pub fn component(&self, p: &Profile) -> Obj {
        self.components.get(p).cloned().unwrap_or_else(|| Obj::zero(self.tag))
    }

    pub fn stored_profiles(&self) -> impl Iterator<Item = &Profile> {
        self.components.keys()
    }

    pub fn is_empty_at(&self, p: &Profile) -> bool {
        self.components.get(p).map_or(true, |o| o.is_zero())
    }

    pub fn set_component(&mut self, p: Profile, obj: Obj) -> Result<()> {
        if p.arity() > self.max_arity {
            return Err(Error::Truncation(format!("profile {p} exceeds the arity bound")));
        }
        if !obj.is_zero() {
            self.components.insert(p, obj);
        }
        Ok(())
    }

    pub fn set_gamma(&mut self, outer: Profile, i: usize, inner: Profile, map: Map) {
        self.gamma.insert((outer, i, inner), map);
    }

    pub fn set_unit(&mut self, c: Colour, map: Map) {
        self.units.insert(c, map);
    }

    pub fn unit_map(&self, c: &Colour) -> Result<Map> {
        self.units.get(c).cloned().ok_or_else(|| Error::Malformed(format!("missing unit at {c}")))
    }

    pub fn gamma(&self, outer: &Profile, i: usize, inner: &Profile) -> Result<Map> {
        let src = self.component(outer).tensor(&self.component(inner))?;
        if src.is_zero() {
            let spliced = Profile::new(outer.splice(i, &inner.inputs)?, outer.output.clone());
            return empty_map(&src, &self.component(&spliced));
        }
        self.gamma
            .get(&(outer.clone(), i, inner.clone()))
            .cloned()
            .ok_or_else(|| Error::Malformed(format!("missing planar γ{i} at {outer} ∘ {inner}")))
    }

    pub fn expected_gamma_keys(&self) -> Vec<(Profile, usize, Profile)> {
        let mut keys = Vec::new();
        for outer in self.components.keys() {
            for i in 1..=outer.arity() {
                for inner in self.components.keys() {
                    if inner.output == outer.inputs[i - 1]
                        && outer.arity() + inner.arity() - 1 <= self.max_arity
                    {
                        keys.push((outer.clone(), i, inner.clone()));
                    }
                }
            }
        }
        keys
    }
}

/// Planar associativity and unit laws, checked exhaustively.
pub fn check_planar_operad(p: &PlanarOperad) -> Report {
    let mut rep = Report::new();
    for c in &p.colours {
        if p.unit_map(c).is_err() {
            rep.fail("missing unit", c.render(), String::new());
        }
    }
    for (outer, i, inner) in p.expected_gamma_keys() {
        if p.gamma(&outer, i, &inner).is_err() {
            rep.fail("missing composition", outer.render(), format!("slot {i} with {inner}"));
        }
    }
    let profiles: Vec<Profile> = p.components.keys().cloned().collect();
    for outer in &profiles {
        let n = outer.arity();
        let obj = p.component(outer);
        let id = Map::identity(&obj);
        // unit laws
        for i in 1..=n {
            let lin = Profile::linear(&outer.inputs[i - 1]);
            if let Ok(u) = p.unit_map(&outer.inputs[i - 1]) {
                let lhs = id
                    .tensor(&u)
                    .and_then(|m| p.gamma(outer, i, &lin).and_then(|g| g.compose(&m)));
                if lhs.map_or(true, |m| m != id) {
                    rep.fail("planar right unit law", outer.render(), format!("slot {i}"));
                }
            }
        }
        if let Ok(u) = p.unit_map(&outer.output) {
            let lin = Profile::linear(&outer.output);
            let lhs = u
                .tensor(&id)
                .and_then(|m| p.gamma(&lin, 1, outer).and_then(|g| g.compose(&m)));
            if lhs.map_or(true, |m| m != id) {
                rep.fail("planar left unit law", outer.render(), String::new());
            }
        }
        // associativity
        for i in 1..=n {
            for mid in profiles.iter().filter(|q| q.output == outer.inputs[i - 1]) {
                let m = mid.arity();
                if n + m - 1 > p.max_arity {
                    continue;
                }
                let spliced_im =
                    Profile::new(outer.splice(i, &mid.inputs).unwrap(), outer.output.clone());
                for j in 1..=m {
                    for inner in profiles.iter().filter(|r| r.output == mid.inputs[j - 1]) {
                        if n + m + inner.arity() - 2 > p.max_arity {
                            continue;
                        }
                        let lhs = (|| -> Result<Map> {
                            let g1 = p.gamma(outer, i, mid)?;
                            let g2 = p.gamma(&spliced_im, i + j - 1, inner)?;
                            g2.compose(&g1.tensor(&Map::identity(&p.component(inner)))?)
                        })();
                        let rhs = (|| -> Result<Map> {
                            let h1 = p.gamma(mid, j, inner)?;
                            let mid2 =
                                Profile::new(mid.splice(j, &inner.inputs)?, mid.output.clone());
                            let h2 = p.gamma(outer, i, &mid2)?;
                            h2.compose(&Map::identity(&p.component(outer)).tensor(&h1)?)
                        })();
                        match (lhs, rhs) {
                            (Ok(a), Ok(b)) if a == b => {}
                            _ => rep.fail(
                                "planar associativity (nested)",
                                outer.render(),
                                format!("slots {i},{j}"),
                            ),
                        }
                    }
                }
                for k in (i + 1)..=n {
                    for inner in profiles.iter().filter(|r| r.output == outer.inputs[k - 1]) {
                        if n + m + inner.arity() - 2 > p.max_arity {
                            continue;
                        }
                        // the p ∘_k r route needs its intermediate in bounds
                        if n + inner.arity() - 1 > p.max_arity {
                            continue;
                        }
                        let lhs = (|| -> Result<Map> {
                            let g1 = p.gamma(outer, i, mid)?;
                            let g2 = p.gamma(&spliced_im, k + m - 1, inner)?;
                            g2.compose(&g1.tensor(&Map::identity(&p.component(inner)))?)
                        })();
                        let rhs = (|| -> Result<Map> {
                            let h1 = p.gamma(outer, k, inner)?;
                            let spliced_kl = Profile::new(
                                outer.splice(k, &inner.inputs)?,
                                outer.output.clone(),
                            );
                            let h2 = p.gamma(&spliced_kl, i, mid)?;
                            let perm = crate::enrich::factor_perm(
                                &[&p.component(outer), &p.component(mid), &p.component(inner)],
                                &[0, 2, 1],
                            )?;
                            h2.compose(&h1.tensor(&Map::identity(&p.component(mid)))?)?
                                .compose(&perm)
                        })();
                        match (lhs, rhs) {
                            (Ok(a), Ok(b)) if a == b => {}
                            _ => rep.fail(
                                "planar associativity (disjoint)",
                                outer.render(),
                                format!("slots {i},{k}"),
                            ),
                        }
                    }
                }
            }
        }
    }
    rep.finish()
}

/// Encode a symmetrised element: the permutation tag plus the planar
/// element.
pub fn sym_elem(sigma: &Permutation, x: &Elem) -> Elem {
    Elem::atom(format!("{}~{}", sigma.render(), x))
}

/// Decode a symmetrised element.
pub fn split_sym_elem(e: &Elem) -> Result<(Permutation, Elem)> {
    let s = &e.0[0];
    let close = s
        .find(']')
        .ok_or_else(|| Error::Malformed(format!("not a symmetrised element: {e}")))?;
    let sigma_part = &s[..=close];
    let rest = &s[close + 1..];
    let rest = rest
        .strip_prefix('~')
        .ok_or_else(|| Error::Malformed(format!("not a symmetrised element: {e}")))?;
    let body = &sigma_part[1..sigma_part.len() - 1];
    let image: Vec<usize> = if body.is_empty() {
        vec![]
    } else {
        body.split(',').map(|v| v.parse().unwrap()).collect()
    };
    Ok((Permutation::new(image)?, crate::symseq::parse_elem_str(rest)))
}

/// The symmetrisation `P_S` of a planar operad, with its canonical
/// `uAs`-comodule structure.
///
/// `P_S(c̄;c) = ⊔_σ P(c̄^{σ⁻¹};c) × {σ}`; the action post-composes the tag,
/// composition inserts blocks, and the coaction duplicates the tag.
pub fn symmetrize(ppl: &PlanarOperad) -> Result<(Operad, ComoduleStructure)> {
    let out = symmetrize_operad(ppl)?;

    // the coaction ρ(x, σ) = ((x, σ), σ) into P_S ⊗_H uAs
    let uas = crate::operad::builtin(crate::operad::Builtin::UAs, ppl.max_arity)?;
    let uas_col = uas.colours()[0].clone();
    let target = crate::operad::hadamard_operad(&out, &uas)?;
    let mut rho_colours = BTreeMap::new();
    let mut rho_maps = BTreeMap::new();
    for c in &ppl.colours {
        rho_colours.insert(c.clone(), c.pair(&uas_col));
    }
    for profile in out.seq.stored_profiles() {
        if out.seq.is_empty_at(profile) {
            continue;
        }
        let src = out.component(profile);
        let tprofile = Profile::new(
            profile.inputs.iter().map(|c| c.pair(&uas_col)).collect(),
            profile.output.pair(&uas_col),
        );
        let tgt = target.component(&tprofile);
        let map = Map::from_fn(&src, &tgt, |e| {
            let (sigma, _) = split_sym_elem(e).unwrap();
            e.concat(&uas_perm_elem(&sigma))
        })?;
        rho_maps.insert(profile.clone(), map);
    }
    let rho = SymSeqMorphism { colour_map: rho_colours, maps: rho_maps };
    Ok((out, ComoduleStructure { side: Side::Right, rho }))
}

/// The symmetrisation alone, without the comodule structure.
pub fn symmetrize_operad(ppl: &PlanarOperad) -> Result<Operad> {
    if ppl.tag != Tag::FinSet {
        return Err(Error::TagMismatch("symmetrisation is FinSet-only".into()));
    }
    let mut seq = SymSeq::new(Tag::FinSet, ppl.colours.clone(), ppl.max_arity);
    // elements per profile, remembering the (σ, x) split
    let mut decode: BTreeMap<(Profile, Elem), (Permutation, Profile, Elem)> = BTreeMap::new();
    for profile in crate::operad::zoo_profiles(&ppl.colours, ppl.max_arity) {
        let n = profile.arity();
        let mut elems = Vec::new();
        for sigma in Permutation::all(n) {
            let planar_profile = profile.act(&sigma.inverse())?;
            let obj = ppl.component(&planar_profile);
            for x in obj.elems() {
                let e = sym_elem(&sigma, x);
                decode.insert(
                    (profile.clone(), e.clone()),
                    (sigma.clone(), planar_profile.clone(), x.clone()),
                );
                elems.push(e);
            }
        }
        if !elems.is_empty() {
            seq.set_component(profile.clone(), Obj::Fin(FinSetObj::new(elems)?))?;
        }
    }
    // action: (σ, x) ↦ (σ∘μ, x)
    let profiles: Vec<Profile> = seq.stored_profiles().cloned().collect();
    for profile in &profiles {
        for i in 1..profile.arity() {
            let mu = Permutation::adjacent(profile.arity(), i)?;
            let src = seq.component(profile);
            let tgt = seq.component(&profile.act(&mu)?);
            let map = Map::from_fn(&src, &tgt, |e| {
                let (sigma, _, x) = &decode[&(profile.clone(), e.clone())];
                sym_elem(&sigma.compose(&mu).unwrap(), x)
            })?;
            seq.set_action_gen(profile.clone(), i, map)?;
        }
    }
    let mut out = Operad::new(seq);
    // units: (id₁, η)
    for c in &ppl.colours {
        let u = ppl.unit_map(c)?.apply(&Elem::empty())?;
        let lin = Profile::linear(c);
        let atom = sym_elem(&Permutation::identity(1), &u);
        let unit = Map::from_fn(&Obj::unit(Tag::FinSet), &out.component(&lin), |_| atom.clone())?;
        out.set_unit(c.clone(), unit);
    }
    // compositions
    for key in out.expected_gamma_keys() {
        let (outer, i, inner) = &key;
        let src_o = out.component(outer);
        let src_i = out.component(inner);
        let spliced = Profile::new(outer.splice(*i, &inner.inputs)?, outer.output.clone());
        let src = src_o.tensor(&src_i)?;
        let tgt = out.component(&spliced);
        let mut table: BTreeMap<Elem, Elem> = BTreeMap::new();
        for eo in src_o.elems() {
            let (sigma, po, x) = decode[&(outer.clone(), eo.clone())].clone();
            for ei in src_i.elems() {
                let (mu, pi, y) = decode[&(inner.clone(), ei.clone())].clone();
                let slot = sigma.apply(*i);
                let g = ppl.gamma(&po, slot, &pi)?;
                let z = g.apply(&x.concat(&y))?;
                let tag = block_insert(&sigma, &mu, *i)?;
                table.insert(eo.concat(ei), sym_elem(&tag, &z));
            }
        }
        let map = Map::from_fn(&src, &tgt, |e| table[e].clone())?;
        out.set_gamma(outer.clone(), *i, inner.clone(), map)?;
    }
    Ok(out)
}

/// The element of `uAs(n)` carrying the permutation `σ` (the builtin `uAs`
/// is the symmetrisation of the planar point operad).
pub fn uas_perm_elem(sigma: &Permutation) -> Elem {
    sym_elem(sigma, &Elem::atom("*"))
}

/// Read a planar operad off a `uAs`-comodule: the component at `(c̄;c)` is
/// the fiber of the coaction over the identity-permutation summand, with the
/// composition restricted to fibers.
pub fn planarize(p: &Operad, rho: &ComoduleStructure) -> Result<PlanarOperad> {
    if p.tag() != Tag::FinSet {
        return Err(Error::TagMismatch("planarization is FinSet-only".into()));
    }
    // the uAs coordinate of ρ(x); for the right side it is the suffix
    let p_len = p
        .seq
        .stored_profiles()
        .find_map(|q| p.component(q).elem_len())
        .unwrap_or(1);
    let uas_part = |profile: &Profile, x: &Elem| -> Result<(Elem, Elem)> {
        let img_profile = rho.rho.apply_profile(profile)?;
        let _ = img_profile;
        let fx = rho
            .rho
            .maps
            .get(profile)
            .ok_or_else(|| Error::NotAComodule(format!("no coaction at {profile}")))?
            .apply(x)?;
        match rho.side {
            Side::Right => {
                Ok((Elem(fx.0[..p_len].to_vec()), Elem(fx.0[p_len..].to_vec())))
            }
            Side::Left => {
                let split = fx.0.len() - p_len;
                Ok((Elem(fx.0[split..].to_vec()), Elem(fx.0[..split].to_vec())))
            }
        }
    };
    let mut out = PlanarOperad::new(Tag::FinSet, p.colours().to_vec(), p.max_arity());
    let mut fibers: BTreeMap<Profile, Vec<Elem>> = BTreeMap::new();
    for profile in p.seq.stored_profiles() {
        if p.seq.is_empty_at(profile) {
            continue;
        }
        let idn = uas_perm_elem(&Permutation::identity(profile.arity()));
        let mut fiber = Vec::new();
        for x in p.component(profile).elems() {
            let (px, tag) = uas_part(profile, x)?;
            if tag == idn {
                if px != *x {
                    return Err(Error::NotAComodule(format!(
                        "the coaction does not fix {x} over the identity summand"
                    )));
                }
                fiber.push(x.clone());
            }
        }
        if !fiber.is_empty() {
            out.set_component(profile.clone(), Obj::Fin(FinSetObj::new(fiber.clone())?))?;
            fibers.insert(profile.clone(), fiber);
        }
    }
    // units sit in the fiber
    for c in p.colours() {
        let u = p.unit_elem(c)?;
        let lin = Profile::linear(c);
        if out.component(&lin).index_of(&u).is_none() {
            return Err(Error::NotAComodule(format!("the unit at {c} is not in the fiber")));
        }
        let unit = Map::from_fn(&Obj::unit(Tag::FinSet), &out.component(&lin), |_| u.clone())?;
        out.set_unit(c.clone(), unit);
    }
    // restrict γ to fibers
    for (outer, i, inner) in out.expected_gamma_keys() {
        let src_o = out.component(&outer);
        let src_i = out.component(&inner);
        let src = src_o.tensor(&src_i)?;
        let spliced = Profile::new(outer.splice(i, &inner.inputs)?, outer.output.clone());
        let tgt = out.component(&spliced);
        let g = p.gamma(&outer, i, &inner)?;
        let map = Map::from_fn(&src, &tgt, |e| g.apply(e).unwrap())?;
        out.set_gamma(outer, i, inner, map);
    }
    Ok(out)
}

/// A morphism of planar operads.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanarMorphism {
    pub colour_map: BTreeMap<Colour, Colour>,
    pub maps: BTreeMap<Profile, Map>,
}

impl PlanarMorphism {
    pub fn apply_profile(&self, p: &Profile) -> Result<Profile> {
        Ok(Profile::new(
            p.inputs
                .iter()
                .map(|c| {
                    self.colour_map
                        .get(c)
                        .cloned()
                        .ok_or_else(|| Error::Malformed(format!("colour {c} unmapped")))
                })
                .collect::<Result<_>>()?,
            self.colour_map
                .get(&p.output)
                .cloned()
                .ok_or_else(|| Error::Malformed(format!("colour {} unmapped", p.output)))?,
        ))
    }
}

/// Check that a planar morphism commutes with compositions and units.
pub fn check_planar_morphism(
    p: &PlanarOperad,
    q: &PlanarOperad,
    f: &PlanarMorphism,
) -> Report {
    let mut rep = Report::new();
    for c in &p.colours {
        let (Ok(up), Some(d)) = (p.unit_map(c), f.colour_map.get(c)) else {
            rep.fail("missing unit or colour image", c.render(), String::new());
            continue;
        };
        let lin = Profile::linear(c);
        let lhs = f.maps.get(&lin).and_then(|m| m.compose(&up).ok());
        let rhs = q.unit_map(d).ok();
        if lhs.is_none() || lhs != rhs {
            rep.fail("planar morphism preserves units", c.render(), String::new());
        }
    }
    for (outer, i, inner) in p.expected_gamma_keys() {
        let check = (|| -> Result<(Map, Map)> {
            let g = p.gamma(&outer, i, &inner)?;
            let spliced = Profile::new(outer.splice(i, &inner.inputs)?, outer.output.clone());
            let fs = f
                .maps
                .get(&spliced)
                .cloned()
                .ok_or_else(|| Error::Malformed("missing".into()))?;
            let lhs = fs.compose(&g)?;
            let fo =
                f.maps.get(&outer).cloned().ok_or_else(|| Error::Malformed("missing".into()))?;
            let fi =
                f.maps.get(&inner).cloned().ok_or_else(|| Error::Malformed("missing".into()))?;
            let h = q.gamma(&f.apply_profile(&outer)?, i, &f.apply_profile(&inner)?)?;
            Ok((lhs, h.compose(&fo.tensor(&fi)?)?))
        })();
        match check {
            Ok((a, b)) if a == b => {}
            _ => rep.fail(
                "planar morphism commutes with γ",
                outer.render(),
                format!("slot {i} with {inner}"),
            ),
        }
    }
    rep.finish()
}

/// Check that two planar operads are isomorphic via the given morphism
/// (bijective components + morphism conditions both ways).
pub fn check_planar_iso(p: &PlanarOperad, q: &PlanarOperad, f: &PlanarMorphism) -> Report {
    let mut rep = check_planar_morphism(p, q, f);
    for profile in p.stored_profiles() {
        let img = match f.apply_profile(profile) {
            Ok(i) => i,
            Err(_) => continue,
        };
        if p.component(profile).size() != q.component(&img).size() {
            rep.fail("iso component sizes differ", profile.render(), String::new());
        }
    }
    let p_total: usize = p.stored_profiles().map(|pr| p.component(pr).size()).sum();
    let q_total: usize = q.stored_profiles().map(|pr| q.component(pr).size()).sum();
    if p_total != q_total {
        rep.fail("iso totals differ", "-", format!("{p_total} vs {q_total}"));
    }
    rep.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sym_elem_roundtrip() {
        let sigma = Permutation::new(vec![2, 1, 3]).unwrap();
        let e = Elem::atom("x~y");
        let enc = sym_elem(&sigma, &e);
        let (s2, e2) = split_sym_elem(&enc).unwrap();
        assert_eq!(s2, sigma);
        assert_eq!(e2, e);
    }
}

/// Generators and relations for a presented planar operad.
#[derive(Debug, Clone)]
pub struct PlanarPresentation {
    pub colours: Vec<Colour>,
    pub generators: BTreeMap<Profile, Obj>,
    pub relations: Vec<(crate::trees::DecTree, crate::trees::DecTree)>,
    pub max_arity: usize,
    pub word_bound: usize,
}

/// All planar decorated trees with the given leaf string, at most
/// `budget` vertices. Leaves are numbered in planar order.
fn planar_trees(
    gens: &BTreeMap<Profile, Obj>,
    root: &Colour,
    leaf_colours: &[Colour],
    budget: usize,
) -> Vec<crate::trees::DecTree> {
    use crate::trees::{DecPayload, Tree};
    let mut out = Vec::new();
    if let [c] = leaf_colours {
        if c == root {
            out.push(Tree::Leaf { number: 0, colour: root.clone() });
        }
    }
    if budget == 0 {
        return out;
    }
    for (q, obj) in gens.iter().filter(|(q, _)| q.output == *root) {
        let a = q.arity();
        if a == 0 && !leaf_colours.is_empty() {
            continue;
        }
        // consecutive splits of the leaf string into `a` blocks
        for split in compositions(leaf_colours.len(), a) {
            let mut blocks = Vec::with_capacity(a);
            let mut pos = 0;
            for len in &split {
                blocks.push(&leaf_colours[pos..pos + len]);
                pos += len;
            }
            // child tuples within the shared budget
            let mut stack: Vec<(usize, Vec<crate::trees::DecTree>, usize)> =
                vec![(0, Vec::new(), budget - 1)];
            while let Some((next, partial, rem)) = stack.pop() {
                if next == a {
                    for dec in obj.elems() {
                        out.push(Tree::Vertex {
                            colour: root.clone(),
                            payload: DecPayload { dec: dec.clone(), label: None },
                            children: partial.clone(),
                        });
                    }
                    continue;
                }
                for t in planar_trees(gens, &q.inputs[next], blocks[next], rem) {
                    let used = t.vertex_count();
                    if used <= rem {
                        let mut p2 = partial.clone();
                        p2.push(t.clone());
                        stack.push((next + 1, p2, rem - used));
                    }
                }
            }
        }
    }
    out
}

/// Ordered splits of `n` into `parts` nonnegative summands.
fn compositions(n: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if n == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=n {
        for rest in compositions(n - first, parts - 1) {
            let mut v = vec![first];
            v.extend(rest);
            out.push(v);
        }
    }
    out
}

fn number_planar_leaves(t: &crate::trees::DecTree) -> crate::trees::DecTree {
    use crate::trees::Tree;
    fn rec(t: &crate::trees::DecTree, next: &mut usize) -> crate::trees::DecTree {
        match t {
            Tree::Leaf { colour, .. } => {
                *next += 1;
                Tree::Leaf { number: *next, colour: colour.clone() }
            }
            Tree::Vertex { colour, payload, children } => Tree::Vertex {
                colour: colour.clone(),
                payload: payload.clone(),
                children: children.iter().map(|c| rec(c, next)).collect(),
            },
        }
    }
    rec(t, &mut 0)
}

/// Quotient the bounded free planar operad by the congruence generated by
/// the relations (no symmetric moves).
pub fn presented_planar_operad(pres: &PlanarPresentation) -> Result<PlanarOperad> {
    use crate::enrich::UnionFind;
    // universe
    let mut elems: Vec<(Profile, Elem, crate::trees::DecTree)> = Vec::new();
    let mut index: BTreeMap<Elem, usize> = BTreeMap::new();
    for profile in crate::operad::all_profiles(&pres.colours, pres.max_arity) {
        for t in planar_trees(&pres.generators, &profile.output, &profile.inputs, pres.word_bound)
        {
            let t = number_planar_leaves(&t);
            let e = Elem::atom(t.serialize());
            if !index.contains_key(&e) {
                index.insert(e.clone(), elems.len());
                elems.push((profile.clone(), e, t));
            }
        }
    }
    let mut uf = UnionFind::new(elems.len());
    for (l, r) in &pres.relations {
        let le = Elem::atom(number_planar_leaves(l).serialize());
        let re = Elem::atom(number_planar_leaves(r).serialize());
        let (Some(&li), Some(&ri)) = (index.get(&le), index.get(&re)) else {
            return Err(Error::BoundsExceeded(
                "a planar relation term does not fit in the bounds".into(),
            ));
        };
        uf.union(li, ri);
    }
    // grafting table
    let graft = |xi: usize, i: usize, yi: usize| -> Result<Option<usize>> {
        let (px, _, tx) = &elems[xi];
        let (py, _, ty) = &elems[yi];
        if tx.vertex_count() + ty.vertex_count() > pres.word_bound
            || px.arity() + py.arity() - 1 > pres.max_arity
        {
            return Ok(None);
        }
        let g = tx.graft(i, ty)?;
        Ok(Some(index[&Elem::atom(g.serialize())]))
    };
    let mut moves: Vec<(u64, usize, usize)> = Vec::new();
    let mut ctx = 0u64;
    for (yi, (py, _, _)) in elems.iter().enumerate() {
        for i in 1..=pres.max_arity {
            ctx += 1;
            for (xi, (px, _, _)) in elems.iter().enumerate() {
                if i > px.arity() || px.inputs[i - 1] != py.output {
                    continue;
                }
                if let Some(img) = graft(xi, i, yi)? {
                    moves.push((ctx, xi, img));
                }
            }
        }
    }
    for (xi, (px, _, _)) in elems.iter().enumerate() {
        for i in 1..=px.arity() {
            ctx += 1;
            for (yi, (py, _, _)) in elems.iter().enumerate() {
                if px.inputs[i - 1] != py.output {
                    continue;
                }
                if let Some(img) = graft(xi, i, yi)? {
                    moves.push((ctx, yi, img));
                }
            }
        }
    }
    moves.sort_unstable();
    loop {
        let mut changed = false;
        let mut k = 0;
        while k < moves.len() {
            let c0 = moves[k].0;
            let mut first: BTreeMap<usize, usize> = BTreeMap::new();
            while k < moves.len() && moves[k].0 == c0 {
                let (_, x, img) = moves[k];
                let root = uf.find(x);
                match first.get(&root) {
                    None => {
                        first.insert(root, img);
                    }
                    Some(&i0) => {
                        if uf.union(i0, img) {
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
    // quotient
    let mut class_members: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for xi in 0..elems.len() {
        class_members.entry(uf.find(xi)).or_default().push(xi);
    }
    let mut rep_of: BTreeMap<Elem, Elem> = BTreeMap::new();
    for members in class_members.values() {
        let rep = members.iter().map(|&xi| &elems[xi].1).min().unwrap().clone();
        for &xi in members {
            rep_of.insert(elems[xi].1.clone(), rep.clone());
        }
    }
    let mut out = PlanarOperad::new(Tag::FinSet, pres.colours.clone(), pres.max_arity);
    let mut per_profile: BTreeMap<Profile, Vec<Elem>> = BTreeMap::new();
    for (p, e, _) in &elems {
        let rep = rep_of[e].clone();
        let v = per_profile.entry(p.clone()).or_default();
        if !v.contains(&rep) {
            v.push(rep);
        }
    }
    for (p, reps) in &per_profile {
        out.set_component(p.clone(), Obj::Fin(FinSetObj::new(reps.clone())?))?;
    }
    for c in &pres.colours {
        let bare = Elem::atom(
            crate::trees::Tree::<crate::trees::DecPayload>::bare(1, c.clone()).serialize(),
        );
        let rep = rep_of
            .get(&bare)
            .ok_or_else(|| Error::Malformed("missing the bare edge".into()))?
            .clone();
        let lin = Profile::linear(c);
        out.set_unit(
            c.clone(),
            Map::from_fn(&Obj::unit(Tag::FinSet), &out.component(&lin), |_| rep.clone())?,
        );
    }
    for (outer, i, inner) in out.expected_gamma_keys() {
        let src_o = out.component(&outer);
        let src_i = out.component(&inner);
        let mut table: BTreeMap<Elem, Elem> = BTreeMap::new();
        let mut total = true;
        'pairs: for eo in src_o.elems() {
            for ei in src_i.elems() {
                let mut found = None;
                for &xo in class_members[&uf.find(index[eo])]
                    .iter()
                    .filter(|&&x| elems[x].0 == outer)
                {
                    for &yi in class_members[&uf.find(index[ei])]
                        .iter()
                        .filter(|&&x| elems[x].0 == inner)
                    {
                        if let Some(img) = graft(xo, i, yi)? {
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
                        table.insert(eo.concat(ei), rep_of[&elems[img].1].clone());
                    }
                    None => {
                        total = false;
                        break 'pairs;
                    }
                }
            }
        }
        if !total {
            return Err(Error::BoundsExceeded(format!(
                "planar composition {} ∘{} {} exceeds the bounds",
                outer.render(),
                i,
                inner.render()
            )));
        }
        let src = src_o.tensor(&src_i)?;
        let spliced = Profile::new(outer.splice(i, &inner.inputs)?, outer.output.clone());
        out.set_gamma(outer, i, inner, Map::from_fn(&src, &out.component(&spliced), |e| table[e].clone())?);
    }
    Ok(out)
}

/// A seed-pinned random small planar operad, produced as a presented planar
/// operad; component sizes are kept at ≤ 2 on arities ≤ 3 by re-rolling.
pub fn random_planar_operad(seed: u64) -> Result<PlanarOperad> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    for _attempt in 0..64 {
        let ncols = 1 + rng.gen_range(0..2usize);
        let colours: Vec<Colour> =
            (0..ncols).map(|i| Colour::atom(format!("k{i}"))).collect();
        let mut generators: BTreeMap<Profile, Obj> = BTreeMap::new();
        let ngens = 1 + rng.gen_range(0..2usize);
        for g in 0..ngens {
            let arity = rng.gen_range(0..=2usize);
            let profile = Profile::new(
                (0..arity).map(|_| colours[rng.gen_range(0..ncols)].clone()).collect(),
                colours[rng.gen_range(0..ncols)].clone(),
            );
            let name = format!("g{g}");
            let entry = generators.entry(profile).or_insert_with(|| Obj::zero(Tag::FinSet));
            let mut elems = entry.elems().to_vec();
            elems.push(Elem::atom(name));
            *entry = Obj::Fin(FinSetObj::new(elems)?);
        }
        let mut pres = PlanarPresentation {
            colours: colours.clone(),
            generators,
            relations: vec![],
            max_arity: 3,
            word_bound: 3,
        };
        // optionally relate two distinct same-profile terms
        let Ok(candidate) = presented_planar_operad(&pres) else { continue };
        if rng.gen_bool(0.5) {
            let profiles: Vec<Profile> = candidate
                .stored_profiles()
                .filter(|p| candidate.component(p).size() >= 2)
                .cloned()
                .collect();
            if !profiles.is_empty() {
                let p = &profiles[rng.gen_range(0..profiles.len())];
                // relate the two smallest representatives; terms are free
                // planar trees so they embed in the presentation universe
                let obj = candidate.component(p);
                let all = planar_trees(&pres.generators, &p.output, &p.inputs, pres.word_bound);
                let mut trees: Vec<crate::trees::DecTree> =
                    all.into_iter().map(|t| number_planar_leaves(&t)).collect();
                trees.sort_by_key(|t| t.serialize());
                if trees.len() >= 2 {
                    pres.relations.push((trees[0].clone(), trees[1].clone()));
                }
                let _ = obj;
            }
        }
        let Ok(op) = presented_planar_operad(&pres) else { continue };
        let small = op
            .stored_profiles()
            .all(|p| p.arity() > 3 || op.component(p).size() <= 2);
        if small {
            return Ok(op);
        }
    }
    Err(Error::BoundsExceeded("no small random planar operad found".into()))
}

#[cfg(test)]
mod planar_tests {
    use super::*;
    use crate::hopf::{check_comodule, diagonal_hopf};
    use crate::operad::{builtin, check_operad, Builtin};

    fn point_planar(max_arity: usize) -> PlanarOperad {
        let c = crate::operad::mono();
        let mut op = PlanarOperad::new(Tag::FinSet, vec![c.clone()], max_arity);
        let star = Obj::Fin(FinSetObj::from_atoms(["*"]));
        for n in 0..=max_arity {
            op.set_component(Profile::new(vec![c.clone(); n], c.clone()), star.clone()).unwrap();
        }
        op.set_unit(
            c.clone(),
            Map::from_fn(&Obj::unit(Tag::FinSet), &star, |_| Elem::atom("*")).unwrap(),
        );
        for (outer, i, inner) in op.expected_gamma_keys() {
            let src = star.tensor(&star).unwrap();
            op.set_gamma(outer, i, inner, Map::from_fn(&src, &star, |_| Elem::atom("*")).unwrap());
        }
        op
    }

    #[test]
    fn point_planar_checks_and_symmetrizes_to_uas() {
        let ppl = point_planar(4);
        assert!(check_planar_operad(&ppl).passed());
        let (ps, rho) = symmetrize(&ppl).unwrap();
        let c = crate::operad::mono();
        for n in 0..=4usize {
            let p = Profile::new(vec![c.clone(); n], c.clone());
            let expect = [1usize, 1, 2, 6, 24][n];
            assert_eq!(ps.component(&p).size(), expect);
        }
        let rep = check_operad(&ps);
        assert!(rep.passed(), "{rep}");
        // coaction passes the comodule axioms over diagonal-Hopf uAs
        let uas = builtin(Builtin::UAs, 4).unwrap();
        let hq = diagonal_hopf(&uas).unwrap();
        let rep = check_comodule(&uas, &hq, &ps, &rho).unwrap();
        assert!(rep.passed(), "{rep}");
    }

    #[test]
    fn planarize_uas_gives_point_operad() {
        let ppl = point_planar(3);
        let (ps, rho) = symmetrize(&ppl).unwrap();
        let q = planarize(&ps, &rho).unwrap();
        assert!(check_planar_operad(&q).passed());
        let c = crate::operad::mono();
        for n in 0..=3usize {
            assert_eq!(q.component(&Profile::new(vec![c.clone(); n], c.clone())).size(), 1);
        }
    }

    #[test]
    fn roundtrip_presented_random_operads() {
        for seed in 0..8u64 {
            let ppl = random_planar_operad(seed).unwrap();
            assert!(check_planar_operad(&ppl).passed(), "seed {seed}");
            let (ps, rho) = symmetrize(&ppl).unwrap();
            let rep = check_operad(&ps);
            assert!(rep.passed(), "seed {seed}: {rep}");
            let back = planarize(&ps, &rho).unwrap();
            // the identity fiber consists of the (id, x) tags; strip them
            let mut maps = BTreeMap::new();
            for p in ppl.stored_profiles() {
                if ppl.is_empty_at(p) {
                    continue;
                }
                let src = ppl.component(p);
                let tgt = back.component(p);
                maps.insert(
                    p.clone(),
                    Map::from_fn(&src, &tgt, |e| {
                        sym_elem(&Permutation::identity(p.arity()), e)
                    })
                    .unwrap(),
                );
            }
            let f = PlanarMorphism {
                colour_map: ppl.colours.iter().map(|c| (c.clone(), c.clone())).collect(),
                maps,
            };
            let rep = check_planar_iso(&ppl, &back, &f);
            assert!(rep.passed(), "seed {seed}: {rep}");
        }
    }
}
