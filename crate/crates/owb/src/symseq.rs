//! Coloured symmetric sequences: equivariant families of objects indexed by
//! colour profiles.
//!
//! The symmetric action is stored on adjacent transpositions only; a general
//! `σ*` is composed on demand from the factorisation of `σ`. Components are
//! stored sparsely — a missing profile is the empty set / zero space.

use crate::enrich::{braiding, empty_map, Colour, Elem, Map, Obj, Tag};
use crate::perms::{Permutation, Profile};
use crate::report::Report;
use crate::{Error, Result};
use std::collections::BTreeMap;

/// A coloured symmetric sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct SymSeq {
    pub tag: Tag,
    pub colours: Vec<Colour>,
    pub max_arity: usize,
    components: BTreeMap<Profile, Obj>,
    /// Generator actions: `(profile, i) ↦ s_i* : M(c̄;c) → M(c̄^{s_i};c)`.
    action: BTreeMap<(Profile, usize), Map>,
}

impl SymSeq {
    pub fn new(tag: Tag, mut colours: Vec<Colour>, max_arity: usize) -> Self {
        colours.sort();
        colours.dedup();
        SymSeq { tag, colours, max_arity, components: BTreeMap::new(), action: BTreeMap::new() }
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
        if obj.tag() != self.tag {
            return Err(Error::TagMismatch(format!("component at {p}")));
        }
        if p.arity() > self.max_arity {
            return Err(Error::Truncation(format!(
                "profile {p} exceeds max arity {}",
                self.max_arity
            )));
        }
        for c in p.inputs.iter().chain(std::iter::once(&p.output)) {
            if !self.colours.contains(c) {
                return Err(Error::Malformed(format!("colour {c} not in the colour set")));
            }
        }
        if obj.is_zero() {
            self.components.remove(&p);
        } else {
            self.components.insert(p, obj);
        }
        Ok(())
    }

    pub fn set_action_gen(&mut self, p: Profile, i: usize, map: Map) -> Result<()> {
        if i == 0 || i >= p.arity() {
            return Err(Error::BadIndex(format!("s_{i} on arity {}", p.arity())));
        }
        self.action.insert((p, i), map);
        Ok(())
    }

    /// The generator map `s_i* : M(c̄;c) → M(c̄^{s_i};c)`.
    pub fn action_gen(&self, p: &Profile, i: usize) -> Result<Map> {
        let src = self.component(p);
        let tgt = self.component(&p.act(&Permutation::adjacent(p.arity(), i)?)?);
        if src.is_zero() {
            return empty_map(&src, &tgt);
        }
        self.action
            .get(&(p.clone(), i))
            .cloned()
            .ok_or_else(|| Error::Malformed(format!("missing action s_{i} at {p}")))
    }

    /// The composite `σ* : M(c̄;c) → M(c̄^σ;c)`.
    pub fn act(&self, p: &Profile, sigma: &Permutation) -> Result<Map> {
        if sigma.size() != p.arity() {
            return Err(Error::SizeMismatch(format!("σ size {} at {p}", sigma.size())));
        }
        let mut acc = Map::identity(&self.component(p));
        let mut cur = p.clone();
        for i in sigma.adjacent_factorisation() {
            let gen = self.action_gen(&cur, i)?;
            acc = gen.compose(&acc)?;
            cur = cur.act(&Permutation::adjacent(cur.arity(), i)?)?;
        }
        Ok(acc)
    }

    /// Fill in identity generator maps wherever `c̄^{s_i} = c̄` and the
    /// component is a singleton or empty (the only equivariant choice).
    pub fn fill_singleton_actions(&mut self) {
        let profiles: Vec<Profile> = self.components.keys().cloned().collect();
        for p in profiles {
            let obj = self.component(&p);
            for i in 1..p.arity() {
                if self.action.contains_key(&(p.clone(), i)) {
                    continue;
                }
                let q = p.act(&Permutation::adjacent(p.arity(), i).unwrap()).unwrap();
                if q == p && obj.size() <= 1 {
                    self.action.insert((p.clone(), i), Map::identity(&obj));
                }
            }
        }
    }
}

/// The unit sequence: the monoidal unit at linear profiles, empty elsewhere.
pub fn unit_seq(tag: Tag, colours: &[Colour], max_arity: usize) -> SymSeq {
    let mut seq = SymSeq::new(tag, colours.to_vec(), max_arity);
    for c in colours {
        seq.set_component(Profile::linear(c), Obj::unit(tag)).unwrap();
    }
    seq
}

/// Verify functoriality of the generated action: the generators compose
/// consistently (exhaustively over the small symmetric groups within the
/// truncation).
pub fn check_symseq(m: &SymSeq) -> Report {
    let mut rep = Report::new();
    for p in m.components.keys() {
        let n = p.arity();
        let obj = m.component(p);
        if obj.is_zero() {
            continue;
        }
        // generator maps exist and have matching endpoints
        for i in 1..n {
            match m.action_gen(p, i) {
                Ok(g) => {
                    let q = p.act(&Permutation::adjacent(n, i).unwrap()).unwrap();
                    if g.source() != obj || g.target() != m.component(&q) {
                        rep.fail("action endpoints", p.render(), format!("s_{i}"));
                    }
                }
                Err(_) => rep.fail("missing action generator", p.render(), format!("s_{i}")),
            }
        }
        // involution: s_i* (at c̄^{s_i}) ∘ s_i* (at c̄) = id
        for i in 1..n {
            let s = Permutation::adjacent(n, i).unwrap();
            let q = p.act(&s).unwrap();
            let (Ok(g1), Ok(g2)) = (m.action_gen(p, i), m.action_gen(&q, i)) else { continue };
            match g2.compose(&g1) {
                Ok(c) if c == Map::identity(&obj) => {}
                _ => rep.fail("involution s_i*∘s_i*=id", p.render(), format!("s_{i}")),
            }
        }
        // full functoriality σ*∘μ* = (μ∘σ)*
        if n >= 2 {
            for sigma in Permutation::all(n) {
                for mu in Permutation::all(n) {
                    let lhs = m.act(p, &mu).and_then(|a| {
                        let q = p.act(&mu)?;
                        m.act(&q, &sigma).and_then(|b| b.compose(&a))
                    });
                    let rhs = m.act(p, &mu.compose(&sigma).unwrap());
                    match (lhs, rhs) {
                        (Ok(a), Ok(b)) if a == b => {}
                        _ => rep.fail(
                            "functoriality σ*∘μ*=(μ∘σ)*",
                            p.render(),
                            format!("σ={sigma} μ={mu}"),
                        ),
                    }
                }
            }
        }
    }
    rep.finish()
}

/// A morphism of coloured symmetric sequences.
#[derive(Debug, Clone, PartialEq)]
pub struct SymSeqMorphism {
    pub colour_map: BTreeMap<Colour, Colour>,
    /// Per-profile maps `M(c̄;c) → N(f(c̄);f(c))`, stored where the source is
    /// nonempty.
    pub maps: BTreeMap<Profile, Map>,
}

impl SymSeqMorphism {
    pub fn apply_colour(&self, c: &Colour) -> Result<Colour> {
        self.colour_map
            .get(c)
            .cloned()
            .ok_or_else(|| Error::Malformed(format!("colour {c} not in morphism domain")))
    }

    pub fn apply_profile(&self, p: &Profile) -> Result<Profile> {
        Ok(Profile::new(
            p.inputs.iter().map(|c| self.apply_colour(c)).collect::<Result<_>>()?,
            self.apply_colour(&p.output)?,
        ))
    }

    /// The component map at `p`, defaulting to the empty map on empty sources.
    pub fn map_at(&self, source: &SymSeq, target: &SymSeq, p: &Profile) -> Result<Map> {
        let src = source.component(p);
        if src.is_zero() {
            return empty_map(&src, &target.component(&self.apply_profile(p)?));
        }
        self.maps
            .get(p)
            .cloned()
            .ok_or_else(|| Error::Malformed(format!("morphism missing a map at {p}")))
    }

    pub fn identity(m: &SymSeq) -> Self {
        let colour_map = m.colours.iter().map(|c| (c.clone(), c.clone())).collect();
        let maps = m
            .stored_profiles()
            .filter(|p| !m.is_empty_at(p))
            .map(|p| (p.clone(), Map::identity(&m.component(p))))
            .collect();
        SymSeqMorphism { colour_map, maps }
    }

    /// Compose: apply `self` first, then `other` (whose domain is `mid`).
    pub fn then(&self, mid: &SymSeq, other: &SymSeqMorphism) -> Result<SymSeqMorphism> {
        let mut colour_map = BTreeMap::new();
        for (c, d) in &self.colour_map {
            colour_map.insert(c.clone(), other.apply_colour(d)?);
        }
        let mut maps = BTreeMap::new();
        for (p, f) in &self.maps {
            let q = self.apply_profile(p)?;
            let g = if mid.is_empty_at(&q) {
                empty_map(&mid.component(&q), &mid.component(&q))?
            } else {
                other
                    .maps
                    .get(&q)
                    .cloned()
                    .ok_or_else(|| Error::Malformed(format!("composition missing a map at {q}")))?
            };
            maps.insert(p.clone(), g.compose(f)?);
        }
        Ok(SymSeqMorphism { colour_map, maps })
    }
}

/// Check equivariance of a morphism `f : m → n` on action generators.
pub fn check_seq_morphism(m: &SymSeq, n: &SymSeq, f: &SymSeqMorphism) -> Report {
    let mut rep = Report::new();
    for p in m.stored_profiles() {
        if m.is_empty_at(p) {
            continue;
        }
        let Ok(fp) = f.map_at(m, n, p) else {
            rep.fail("missing morphism component", p.render(), String::new());
            continue;
        };
        let Ok(q_img) = f.apply_profile(p) else {
            rep.fail("missing colour image", p.render(), String::new());
            continue;
        };
        if fp.source() != m.component(p) || fp.target() != n.component(&q_img) {
            rep.fail("morphism endpoints", p.render(), String::new());
            continue;
        }
        for i in 1..p.arity() {
            let s = Permutation::adjacent(p.arity(), i).unwrap();
            let pq = p.act(&s).unwrap();
            let lhs = n.action_gen(&q_img, i).and_then(|g| g.compose(&fp));
            let rhs = f
                .map_at(m, n, &pq)
                .and_then(|fq| m.action_gen(p, i).and_then(|g| fq.compose(&g)));
            match (lhs, rhs) {
                (Ok(a), Ok(b)) if a == b => {}
                _ => rep.fail("equivariance of morphism", p.render(), format!("s_{i}")),
            }
        }
    }
    rep.finish()
}

/// The Hadamard tensor product of coloured symmetric sequences: colours
/// multiply, components tensor, the symmetric action is diagonal.
pub fn hadamard_seq(m: &SymSeq, n: &SymSeq) -> Result<SymSeq> {
    if m.tag != n.tag {
        return Err(Error::TagMismatch("hadamard".into()));
    }
    if m.max_arity != n.max_arity {
        return Err(Error::SizeMismatch(format!("max arity {} vs {}", m.max_arity, n.max_arity)));
    }
    let colours: Vec<Colour> =
        m.colours.iter().flat_map(|c| n.colours.iter().map(move |d| c.pair(d))).collect();
    let mut out = SymSeq::new(m.tag, colours, m.max_arity);
    for (pm, om) in &m.components {
        for (pn, on) in &n.components {
            if pm.arity() != pn.arity() {
                continue;
            }
            let inputs: Vec<Colour> =
                pm.inputs.iter().zip(&pn.inputs).map(|(c, d)| c.pair(d)).collect();
            let p = Profile::new(inputs, pm.output.pair(&pn.output));
            out.set_component(p.clone(), om.tensor(on)?)?;
            for i in 1..p.arity() {
                let gm = m.action_gen(pm, i)?;
                let gn = n.action_gen(pn, i)?;
                out.set_action_gen(p.clone(), i, gm.tensor(&gn)?)?;
            }
        }
    }
    Ok(out)
}

/// Split a Hadamard profile back into its two halves, given the atom length
/// of the left factor's colours.
pub fn split_profile(p: &Profile, left_len: usize) -> (Profile, Profile) {
    let mut li = Vec::new();
    let mut ri = Vec::new();
    for c in &p.inputs {
        let (l, r) = c.split(left_len);
        li.push(l);
        ri.push(r);
    }
    let (lo, ro) = p.output.split(left_len);
    (Profile::new(li, lo), Profile::new(ri, ro))
}

/// The canonical symmetry `M ⊗_H N ≅ N ⊗_H M`: colour swap plus braiding.
pub fn hadamard_swap(m: &SymSeq, n: &SymSeq) -> Result<SymSeqMorphism> {
    let left_len = m.colours.first().map_or(1, |c| c.len());
    let h = hadamard_seq(m, n)?;
    let mut colour_map = BTreeMap::new();
    for c in &m.colours {
        for d in &n.colours {
            colour_map.insert(c.pair(d), d.pair(c));
        }
    }
    let mut maps = BTreeMap::new();
    for p in h.stored_profiles() {
        let (pm, pn) = split_profile(p, left_len);
        let b = braiding(&m.component(&pm), &n.component(&pn))?;
        maps.insert(p.clone(), b);
    }
    Ok(SymSeqMorphism { colour_map, maps })
}

/// One decorated two-level tree before quotienting: a root element, a fringe
/// of elements with their profiles, and the leaf bijection.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct TwoLevel {
    root: Elem,
    root_profile: Profile,
    kids: Vec<(Elem, Profile)>,
    /// `ρ ∈ S_n` with `c̄[j] = fringe[ρ(j)]`.
    rho: Permutation,
}

impl TwoLevel {
    fn render(&self) -> String {
        let kids: Vec<String> =
            self.kids.iter().map(|(e, p)| format!("{}@{}", e, p.render())).collect();
        format!(
            "cp({}@{};[{}];{})",
            self.root,
            self.root_profile.render(),
            kids.join("+"),
            self.rho.render()
        )
    }
}

/// The composite product `M ◁ N` on a shared colour set (FinSet only).
///
/// Elements are orbit representatives of decorated two-level trees under the
/// simultaneous root/fringe permutation action. Returns the sequence and a
/// report carrying truncation notices.
pub fn composite_product(m: &SymSeq, n: &SymSeq) -> Result<(SymSeq, Report)> {
    if m.tag != Tag::FinSet || n.tag != Tag::FinSet {
        return Err(Error::TagMismatch("composite product is FinSet-only".into()));
    }
    if m.colours != n.colours {
        return Err(Error::ColourMismatch("composite product needs a shared colour set".into()));
    }
    let mut rep = Report::new();
    let max_arity = m.max_arity.min(n.max_arity);
    let mut out = SymSeq::new(Tag::FinSet, m.colours.clone(), max_arity);

    let mut buckets: BTreeMap<Profile, Vec<TwoLevel>> = BTreeMap::new();
    for raw in enumerate_two_levels(m, n, max_arity, &mut rep)? {
        let fringe: Vec<Colour> =
            raw.kids.iter().flat_map(|(_, q)| q.inputs.iter().cloned()).collect();
        let inputs: Vec<Colour> =
            (1..=fringe.len()).map(|j| fringe[raw.rho.apply(j) - 1].clone()).collect();
        let target = Profile::new(inputs, raw.root_profile.output.clone());
        buckets.entry(target).or_default().push(canonical_two_level(m, n, &raw));
    }

    for (p, mut reps) in buckets {
        reps.sort();
        reps.dedup();
        let elems: Vec<Elem> = reps.iter().map(|t| Elem::atom(t.render())).collect();
        out.set_component(p.clone(), Obj::Fin(crate::enrich::FinSetObj::new(elems)?))?;
    }

    // the action: ρ ↦ ρ∘s_i, recanonicalised
    let profiles: Vec<Profile> = out.stored_profiles().cloned().collect();
    for p in profiles {
        for i in 1..p.arity() {
            let s = Permutation::adjacent(p.arity(), i).unwrap();
            let q = p.act(&s).unwrap();
            let src = out.component(&p);
            let tgt = out.component(&q);
            let map = Map::from_fn(&src, &tgt, |e| {
                let t = parse_two_level(e);
                let moved = TwoLevel { rho: t.rho.compose(&s).unwrap(), ..t };
                Elem::atom(canonical_two_level(m, n, &moved).render())
            })?;
            out.set_action_gen(p.clone(), i, map)?;
        }
    }

    Ok((out, rep.finish()))
}

/// All raw decorated two-level trees within the arity bound.
fn enumerate_two_levels(
    m: &SymSeq,
    n: &SymSeq,
    max_arity: usize,
    rep: &mut Report,
) -> Result<Vec<TwoLevel>> {
    let mut raws = Vec::new();
    for (root_profile, root_obj) in m.stored_profiles().map(|p| (p, m.component(p))) {
        let k = root_profile.arity();
        let child_choices: Vec<Vec<Profile>> = (0..k)
            .map(|i| {
                n.stored_profiles()
                    .filter(|q| q.output == root_profile.inputs[i] && !n.is_empty_at(q))
                    .cloned()
                    .collect()
            })
            .collect();
        if child_choices.iter().any(|v| v.is_empty()) {
            continue;
        }
        let mut idx = vec![0usize; k];
        loop {
            let chosen: Vec<&Profile> = (0..k).map(|i| &child_choices[i][idx[i]]).collect();
            let total: usize = chosen.iter().map(|q| q.arity()).sum();
            if total > max_arity {
                rep.truncated(format!(
                    "composite product dropped a fringe of arity {total} over {}",
                    root_profile.render()
                ));
            } else {
                let kid_objs: Vec<Obj> = chosen.iter().map(|q| n.component(q)).collect();
                let mut kid_idx = vec![0usize; k];
                loop {
                    let kids: Vec<(Elem, Profile)> = (0..k)
                        .map(|i| (kid_objs[i].elems()[kid_idx[i]].clone(), chosen[i].clone()))
                        .collect();
                    for root in root_obj.elems() {
                        for rho in Permutation::all(total) {
                            raws.push(TwoLevel {
                                root: root.clone(),
                                root_profile: root_profile.clone(),
                                kids: kids.clone(),
                                rho: rho.clone(),
                            });
                        }
                    }
                    let mut c = k;
                    loop {
                        if c == 0 {
                            break;
                        }
                        c -= 1;
                        kid_idx[c] += 1;
                        if kid_idx[c] < kid_objs[c].size() {
                            break;
                        }
                        kid_idx[c] = 0;
                    }
                    if k == 0 || (c == 0 && kid_idx[0] == 0) {
                        break;
                    }
                }
            }
            let mut c = k;
            loop {
                if c == 0 {
                    break;
                }
                c -= 1;
                idx[c] += 1;
                if idx[c] < child_choices[c].len() {
                    break;
                }
                idx[c] = 0;
            }
            if k == 0 || (c == 0 && idx[0] == 0) {
                break;
            }
        }
    }
    Ok(raws)
}

/// Minimise a two-level tree over the wreath action of `S_k × ∏ᵢ S_{aᵢ}`.
fn canonical_two_level(m: &SymSeq, n: &SymSeq, t: &TwoLevel) -> TwoLevel {
    let k = t.kids.len();
    let old_sizes: Vec<usize> = t.kids.iter().map(|(_, q)| q.arity()).collect();
    let old_starts: Vec<usize> = {
        let mut v = vec![0usize; k];
        for i in 1..k {
            v[i] = v[i - 1] + old_sizes[i - 1];
        }
        v
    };
    let total: usize = old_sizes.iter().sum();
    let mut best: Option<TwoLevel> = None;
    for tau in Permutation::all(k) {
        let new_root_profile = t.root_profile.act(&tau).unwrap();
        let Ok(new_root) = m.act(&t.root_profile, &tau).and_then(|f| f.apply(&t.root)) else {
            continue;
        };
        let new_kids_base: Vec<(Elem, Profile)> =
            (1..=k).map(|j| t.kids[tau.apply(j) - 1].clone()).collect();
        let new_sizes: Vec<usize> = new_kids_base.iter().map(|(_, q)| q.arity()).collect();
        let new_starts: Vec<usize> = {
            let mut v = vec![0usize; k];
            for i in 1..k {
                v[i] = v[i - 1] + new_sizes[i - 1];
            }
            v
        };
        let alpha_space: Vec<Vec<Permutation>> =
            new_kids_base.iter().map(|(_, q)| Permutation::all(q.arity())).collect();
        let mut pick = vec![0usize; k];
        loop {
            let mut kids = Vec::with_capacity(k);
            let mut ok = true;
            for j in 0..k {
                let alpha = &alpha_space[j][pick[j]];
                let (e, q) = &new_kids_base[j];
                match n.act(q, alpha).and_then(|f| f.apply(e)) {
                    Ok(e2) => kids.push((e2, q.act(alpha).unwrap())),
                    Err(_) => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                // position map: old (block τ(j), s) ↦ new (block j, α_j⁻¹(s))
                let mut cmap = vec![0usize; total];
                for j in 1..=k {
                    let old_block = tau.apply(j) - 1;
                    let alpha_inv = alpha_space[j - 1][pick[j - 1]].inverse();
                    for s in 1..=old_sizes[old_block] {
                        let old_pos = old_starts[old_block] + s;
                        let new_pos = new_starts[j - 1] + alpha_inv.apply(s);
                        cmap[old_pos - 1] = new_pos;
                    }
                }
                let c = Permutation::new(cmap).unwrap();
                let cand = TwoLevel {
                    root: new_root.clone(),
                    root_profile: new_root_profile.clone(),
                    kids,
                    rho: c.compose(&t.rho).unwrap(),
                };
                if best.as_ref().map_or(true, |b| cand.render() < b.render()) {
                    best = Some(cand);
                }
            }
            let mut c = k;
            loop {
                if c == 0 {
                    break;
                }
                c -= 1;
                pick[c] += 1;
                if pick[c] < alpha_space[c].len() {
                    break;
                }
                pick[c] = 0;
            }
            if k == 0 || (c == 0 && pick[0] == 0) {
                break;
            }
        }
    }
    best.unwrap_or_else(|| t.clone())
}

/// Recover the structured form of a composite-product element; inverse of
/// `TwoLevel::render` on the elements this module produces.
fn parse_two_level(e: &Elem) -> TwoLevel {
    let s = &e.0[0];
    let body = s.strip_prefix("cp(").and_then(|b| b.strip_suffix(')')).expect("two-level atom");
    let parts: Vec<&str> = split_top(body, ';');
    let (root_s, root_p) = rsplit_top_at(parts[0], '@');
    let kids_body = parts[1].strip_prefix('[').and_then(|b| b.strip_suffix(']')).unwrap();
    let kids: Vec<(Elem, Profile)> = if kids_body.is_empty() {
        vec![]
    } else {
        split_top(kids_body, '+')
            .iter()
            .map(|kp| {
                let (e, p) = rsplit_top_at(kp, '@');
                (parse_elem_str(e), Profile::parse(p).unwrap())
            })
            .collect()
    };
    let rho_body = parts[2].strip_prefix('[').and_then(|b| b.strip_suffix(']')).unwrap();
    let rho = Permutation::new(if rho_body.is_empty() {
        vec![]
    } else {
        rho_body.split(',').map(|v| v.parse().unwrap()).collect()
    })
    .unwrap();
    TwoLevel {
        root: parse_elem_str(root_s),
        root_profile: Profile::parse(root_p).unwrap(),
        kids,
        rho,
    }
}

pub(crate) fn parse_elem_str(s: &str) -> Elem {
    if s == "()" {
        return Elem::empty();
    }
    if s.starts_with('(') && s.ends_with(')') {
        let inner = &s[1..s.len() - 1];
        let parts = split_top(inner, ',');
        if parts.len() > 1 {
            return Elem(parts.iter().map(|a| a.to_string()).collect());
        }
    }
    Elem::atom(s)
}

/// Split on `sep` at bracket depth zero (tracking `(`, `[`, `{`).
pub(crate) fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0usize;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + ch.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

/// Split at the last top-level occurrence of `sep`.
fn rsplit_top_at(s: &str, sep: char) -> (&str, &str) {
    let parts = split_top(s, sep);
    let last = parts.last().unwrap();
    let head_len = s.len() - last.len() - sep.len_utf8();
    (&s[..head_len], last)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enrich::FinSetObj;

    fn mono() -> Colour {
        Colour::atom("c")
    }

    /// Monochromatic sequence with M(1)={e}, M(2)={m}, trivial action.
    fn small_seq() -> SymSeq {
        let c = mono();
        let mut s = SymSeq::new(Tag::FinSet, vec![c.clone()], 3);
        s.set_component(
            Profile::new(vec![c.clone()], c.clone()),
            Obj::Fin(FinSetObj::from_atoms(["e"])),
        )
        .unwrap();
        s.set_component(
            Profile::new(vec![c.clone(), c.clone()], c.clone()),
            Obj::Fin(FinSetObj::from_atoms(["m"])),
        )
        .unwrap();
        s.fill_singleton_actions();
        s
    }

    #[test]
    fn unit_seq_passes_check() {
        let cols = vec![Colour::atom("a"), Colour::atom("b")];
        let u = unit_seq(Tag::FinSet, &cols, 4);
        assert!(check_symseq(&u).passed());
        assert!(u.is_empty_at(&Profile::new(vec![cols[0].clone()], cols[1].clone())));
        assert_eq!(u.component(&Profile::linear(&cols[0])).size(), 1);
    }

    #[test]
    fn corrupted_action_fails_check() {
        let c = mono();
        let mut s = SymSeq::new(Tag::FinSet, vec![c.clone()], 2);
        let two = Profile::new(vec![c.clone(), c.clone()], c.clone());
        s.set_component(two.clone(), Obj::Fin(FinSetObj::from_atoms(["x", "y"]))).unwrap();
        let obj = s.component(&two);
        // constant map: not an involution
        let bad = Map::from_fn(&obj, &obj, |_| Elem::atom("x")).unwrap();
        s.set_action_gen(two.clone(), 1, bad).unwrap();
        let rep = check_symseq(&s);
        assert!(!rep.passed());
        assert!(rep.findings.iter().any(|f| f.profile == two.render()));
    }

    #[test]
    fn hadamard_with_singletons_preserves_sizes() {
        let s = small_seq();
        let c = mono();
        let mut ucom_like = SymSeq::new(Tag::FinSet, vec![c.clone()], 3);
        for n in 0..=3usize {
            ucom_like
                .set_component(
                    Profile::new(vec![c.clone(); n], c.clone()),
                    Obj::Fin(FinSetObj::from_atoms(["u"])),
                )
                .unwrap();
        }
        ucom_like.fill_singleton_actions();
        let h = hadamard_seq(&s, &ucom_like).unwrap();
        assert!(check_symseq(&h).passed());
        for p in s.stored_profiles() {
            let hp =
                Profile::new(p.inputs.iter().map(|x| x.pair(&c)).collect(), p.output.pair(&c));
            assert_eq!(h.component(&hp).size(), s.component(p).size());
        }
    }

    #[test]
    fn hadamard_swap_is_equivariant() {
        let s = small_seq();
        let mut t = unit_seq(Tag::FinSet, &[mono()], 3);
        let two = Profile::new(vec![mono(), mono()], mono());
        t.set_component(two.clone(), Obj::Fin(FinSetObj::from_atoms(["p", "q"]))).unwrap();
        let obj = t.component(&two);
        let swap = Map::from_fn(&obj, &obj, |e| {
            if e == &Elem::atom("p") {
                Elem::atom("q")
            } else {
                Elem::atom("p")
            }
        })
        .unwrap();
        t.set_action_gen(two, 1, swap).unwrap();
        t.fill_singleton_actions();
        let st = hadamard_seq(&s, &t).unwrap();
        let ts = hadamard_seq(&t, &s).unwrap();
        assert!(check_symseq(&st).passed());
        let f = hadamard_swap(&s, &t).unwrap();
        assert!(check_seq_morphism(&st, &ts, &f).passed());
    }

    #[test]
    fn composite_product_small_count() {
        let s = small_seq();
        let (ss, rep) = composite_product(&s, &s).unwrap();
        // the fringe m∘(m,m) has arity 4 > 3 and must be dropped with notice
        assert_eq!(rep.truncations.len(), 1);
        let c = mono();
        let two = Profile::new(vec![c.clone(), c.clone()], c.clone());
        // root e over m, and root m over (e,e)
        assert_eq!(ss.component(&two).size(), 2);
        assert!(check_symseq(&ss).passed());
    }

    #[test]
    fn composite_product_unit_laws() {
        let s = small_seq();
        let i = unit_seq(Tag::FinSet, &[mono()], 3);
        let (is, _) = composite_product(&i, &s).unwrap();
        let (si, _) = composite_product(&s, &i).unwrap();
        for p in s.stored_profiles() {
            assert_eq!(is.component(p).size(), s.component(p).size(), "I◁M at {p}");
            assert_eq!(si.component(p).size(), s.component(p).size(), "M◁I at {p}");
        }
        assert_eq!(is.stored_profiles().count(), s.stored_profiles().count());
        assert_eq!(si.stored_profiles().count(), s.stored_profiles().count());
    }

    #[test]
    fn composite_product_empty_nullary() {
        let s = small_seq();
        let (ss, _) = composite_product(&s, &s).unwrap();
        assert!(ss.is_empty_at(&Profile::new(vec![], mono())));
    }

    #[test]
    fn composite_product_matches_orbit_oracle() {
        // Independent oracle: enumerate the raw two-level trees and saturate
        // the identifications by single generator moves (one adjacent root
        // transposition or one adjacent transposition inside a single slot),
        // then count equivalence classes via union-find.
        let s = small_seq();
        let (ss, _) = composite_product(&s, &s).unwrap();
        let c = mono();
        for n in 1..=3usize {
            let p = Profile::new(vec![c.clone(); n], c.clone());
            assert_eq!(ss.component(&p).size(), oracle_count(&s, &s, &p), "arity {n}");
        }
    }

    fn apply_root_move(m: &SymSeq, t: &TwoLevel, i: usize) -> Option<TwoLevel> {
        let k = t.kids.len();
        if i == 0 || i >= k {
            return None;
        }
        let tau = Permutation::adjacent(k, i).unwrap();
        let new_root = m.act(&t.root_profile, &tau).and_then(|f| f.apply(&t.root)).ok()?;
        let new_profile = t.root_profile.act(&tau).unwrap();
        let new_kids: Vec<(Elem, Profile)> =
            (1..=k).map(|j| t.kids[tau.apply(j) - 1].clone()).collect();
        // block position permutation for swapping adjacent blocks i, i+1
        let sizes: Vec<usize> = t.kids.iter().map(|(_, q)| q.arity()).collect();
        let total: usize = sizes.iter().sum();
        let starts: Vec<usize> = {
            let mut v = vec![0usize; k];
            for j in 1..k {
                v[j] = v[j - 1] + sizes[j - 1];
            }
            v
        };
        let mut cmap: Vec<usize> = (1..=total).collect();
        let (a, b) = (i - 1, i);
        for s_off in 0..sizes[a] {
            cmap[starts[a] + s_off] = starts[a] + sizes[b] + s_off + 1;
        }
        for s_off in 0..sizes[b] {
            cmap[starts[b] + s_off] = starts[a] + s_off + 1;
        }
        let cperm = Permutation::new(cmap).unwrap();
        Some(TwoLevel {
            root: new_root,
            root_profile: new_profile,
            kids: new_kids,
            rho: cperm.compose(&t.rho).unwrap(),
        })
    }

    fn apply_slot_move(n: &SymSeq, t: &TwoLevel, slot: usize, i: usize) -> Option<TwoLevel> {
        let (e, q) = t.kids.get(slot)?;
        if i == 0 || i >= q.arity() {
            return None;
        }
        let alpha = Permutation::adjacent(q.arity(), i).unwrap();
        let e2 = n.act(q, &alpha).and_then(|f| f.apply(e)).ok()?;
        let q2 = q.act(&alpha).unwrap();
        let mut kids = t.kids.clone();
        kids[slot] = (e2, q2);
        let starts: usize = t.kids[..slot].iter().map(|(_, q)| q.arity()).sum();
        let total: usize = t.kids.iter().map(|(_, q)| q.arity()).sum();
        let mut cmap: Vec<usize> = (1..=total).collect();
        // positions within the slot are permuted by α⁻¹ = α
        cmap.swap(starts + i - 1, starts + i);
        let cperm = Permutation::new(cmap).unwrap();
        Some(TwoLevel { kids, rho: cperm.compose(&t.rho).unwrap(), ..t.clone() })
    }

    fn oracle_count(m: &SymSeq, n: &SymSeq, target: &Profile) -> usize {
        let mut rep = Report::new();
        let raws: Vec<TwoLevel> = enumerate_two_levels(m, n, target.arity(), &mut rep)
            .unwrap()
            .into_iter()
            .filter(|t| {
                let fringe: Vec<Colour> =
                    t.kids.iter().flat_map(|(_, q)| q.inputs.iter().cloned()).collect();
                let inputs: Vec<Colour> =
                    (1..=fringe.len()).map(|j| fringe[t.rho.apply(j) - 1].clone()).collect();
                inputs == target.inputs && t.root_profile.output == target.output
            })
            .collect();
        let index: BTreeMap<String, usize> =
            raws.iter().enumerate().map(|(i, t)| (t.render(), i)).collect();
        let mut uf = crate::enrich::UnionFind::new(raws.len());
        for (i, t) in raws.iter().enumerate() {
            for gi in 1..t.kids.len() {
                if let Some(t2) = apply_root_move(m, t, gi) {
                    if let Some(&j) = index.get(&t2.render()) {
                        uf.union(i, j);
                    }
                }
            }
            for slot in 0..t.kids.len() {
                for gi in 1..t.kids[slot].1.arity() {
                    if let Some(t2) = apply_slot_move(n, t, slot, gi) {
                        if let Some(&j) = index.get(&t2.render()) {
                            uf.union(i, j);
                        }
                    }
                }
            }
        }
        let mut roots: Vec<usize> = (0..raws.len()).map(|i| uf.find(i)).collect();
        roots.sort();
        roots.dedup();
        roots.len()
    }
}
