//! Enriched coloured operads: the core type, the exhaustive axiom checker,
//! morphisms and 2-morphisms, products, free and presented operads, and the
//! builtin zoo.

mod free;
mod hadamard;
mod presented;
mod zoo;

pub use free::{all_profiles, eval_tree, free_operad, payload_action, universal_extension, FreeOperad};
pub use hadamard::{
    hadamard_operad, hadamard_swap_op, hadamard_unit_iso, morphism_tensor, pullback_colours,
    same_colour_tensor, UnitSide,
};
pub use presented::{presented_operad, Presentation, PresentedOperad};
pub use zoo::{
    builtin, builtin_with_word_bound, linearize, mono, uas_to_ucom_collapse, ucom_presentation,
    Builtin,
};
pub(crate) use zoo::zoo_profiles;

use crate::enrich::{empty_map, Colour, Elem, Map, Obj, Tag};
use crate::perms::{block_insert, Permutation, Profile};
use crate::report::Report;
use crate::symseq::{check_seq_morphism, check_symseq, SymSeq, SymSeqMorphism};
use crate::{Error, Result};
use std::collections::{BTreeMap, BTreeSet};

/// Key of a partial composition: `(outer profile, slot, inner profile)`.
pub type GammaKey = (Profile, usize, Profile);

/// A morphism of operads is a morphism of the underlying symmetric sequences
/// that commutes with the compositions and the units; `check_morphism`
/// verifies the extra conditions.
pub type OperadMorphism = SymSeqMorphism;

/// An enriched coloured operad, arity-truncated.
#[derive(Debug, Clone, PartialEq)]
pub struct Operad {
    pub seq: SymSeq,
    gamma: BTreeMap<GammaKey, Map>,
    /// Compositions that exist abstractly but were dropped by a word or
    /// vertex bound; the checker skips them and reports a notice.
    truncated: BTreeSet<GammaKey>,
    units: BTreeMap<Colour, Map>,
    /// When false, unit laws are not required (non-unital presentations).
    pub unital: bool,
}

impl Operad {
    pub fn new(seq: SymSeq) -> Self {
        Operad {
            seq,
            gamma: BTreeMap::new(),
            truncated: BTreeSet::new(),
            units: BTreeMap::new(),
            unital: true,
        }
    }

    pub fn tag(&self) -> Tag {
        self.seq.tag
    }

    pub fn colours(&self) -> &[Colour] {
        &self.seq.colours
    }

    pub fn max_arity(&self) -> usize {
        self.seq.max_arity
    }

    pub fn component(&self, p: &Profile) -> Obj {
        self.seq.component(p)
    }

    pub fn set_gamma(&mut self, outer: Profile, i: usize, inner: Profile, map: Map) -> Result<()> {
        check_gamma_profiles(&outer, i, &inner)?;
        self.gamma.insert((outer, i, inner), map);
        Ok(())
    }

    pub fn mark_truncated(&mut self, outer: Profile, i: usize, inner: Profile) {
        self.truncated.insert((outer, i, inner));
    }

    pub fn is_truncated(&self, key: &GammaKey) -> bool {
        self.truncated.contains(key)
    }

    pub fn truncated_keys(&self) -> impl Iterator<Item = &GammaKey> {
        self.truncated.iter()
    }

    pub fn set_unit(&mut self, c: Colour, map: Map) {
        self.units.insert(c, map);
    }

    pub fn unit_map(&self, c: &Colour) -> Result<Map> {
        self.units
            .get(c)
            .cloned()
            .ok_or_else(|| Error::Malformed(format!("missing unit at colour {c}")))
    }

    /// The unit element (FinSet).
    pub fn unit_elem(&self, c: &Colour) -> Result<Elem> {
        self.unit_map(c)?.apply(&Elem::empty())
    }

    /// `γᵢ : P(c̄;c) ⊗ P(c̄′;c̄[i]) → P(c̄◁ᵢc̄′;c)`. Empty when either side
    /// is empty; an error with truncation details when the composite was
    /// dropped by a bound.
    pub fn gamma(&self, outer: &Profile, i: usize, inner: &Profile) -> Result<Map> {
        check_gamma_profiles(outer, i, inner)?;
        let src = self.component(outer).tensor(&self.component(inner))?;
        let spliced = Profile::new(outer.splice(i, &inner.inputs)?, outer.output.clone());
        if src.is_zero() {
            return empty_map(&src, &self.component(&spliced));
        }
        let key = (outer.clone(), i, inner.clone());
        if self.truncated.contains(&key) {
            return Err(Error::Truncation(format!(
                "composition {} ∘{} {} dropped by bounds",
                outer.render(),
                i,
                inner.render()
            )));
        }
        self.gamma
            .get(&key)
            .cloned()
            .ok_or_else(|| Error::Malformed(format!("missing γ{} at {} ∘ {}", i, outer, inner)))
    }

    /// Compose two elements (FinSet).
    pub fn compose_elems(
        &self,
        outer: &Profile,
        p: &Elem,
        i: usize,
        inner: &Profile,
        q: &Elem,
    ) -> Result<Elem> {
        self.gamma(outer, i, inner)?.apply(&p.concat(q))
    }

    /// Right-to-left full composition `p ∘ (q₁,…,q_n)` (FinSet); the slot
    /// count must equal the outer arity.
    pub fn full_composition(
        &self,
        outer: &Profile,
        p: &Elem,
        args: &[(Profile, Elem)],
    ) -> Result<(Profile, Elem)> {
        if args.len() != outer.arity() {
            return Err(Error::ProfileMismatch(format!(
                "{} arguments against arity {}",
                args.len(),
                outer.arity()
            )));
        }
        let mut profile = outer.clone();
        let mut elem = p.clone();
        for i in (1..=args.len()).rev() {
            let (qp, qe) = &args[i - 1];
            let next = Profile::new(profile.splice(i, &qp.inputs)?, profile.output.clone());
            elem = self.compose_elems(&profile, &elem, i, qp, qe)?;
            profile = next;
        }
        Ok((profile, elem))
    }

    /// All composition keys demanded by the stored components within the
    /// arity truncation.
    pub fn expected_gamma_keys(&self) -> Vec<GammaKey> {
        let mut keys = Vec::new();
        for outer in self.seq.stored_profiles() {
            if self.seq.is_empty_at(outer) {
                continue;
            }
            for i in 1..=outer.arity() {
                for inner in self.seq.stored_profiles() {
                    if self.seq.is_empty_at(inner) || inner.output != outer.inputs[i - 1] {
                        continue;
                    }
                    if outer.arity() + inner.arity() - 1 > self.max_arity() {
                        continue;
                    }
                    keys.push((outer.clone(), i, inner.clone()));
                }
            }
        }
        keys
    }
}

fn check_gamma_profiles(outer: &Profile, i: usize, inner: &Profile) -> Result<()> {
    if i == 0 || i > outer.arity() {
        return Err(Error::BadIndex(format!("slot {i} of arity {}", outer.arity())));
    }
    if outer.inputs[i - 1] != inner.output {
        return Err(Error::ProfileMismatch(format!(
            "slot {i} of {} expects {}, inner yields {}",
            outer.render(),
            outer.inputs[i - 1],
            inner.output
        )));
    }
    Ok(())
}

/// Exhaustively verify the operad axioms within the truncation: underlying
/// equivariance, γ-associativity in nested and disjoint-slot form, unit
/// laws, and the compatibility of γ with the symmetric action.
pub fn check_operad(p: &Operad) -> Report {
    let mut rep = Report::new();
    rep.absorb(check_symseq(&p.seq));
    check_units(p, &mut rep);
    check_gamma_presence(p, &mut rep);
    check_associativity(p, &mut rep);
    check_equivariance(p, &mut rep);
    rep.finish()
}

fn check_units(p: &Operad, rep: &mut Report) {
    if !p.unital {
        return;
    }
    for c in p.colours() {
        match p.unit_map(c) {
            Ok(u) => {
                let lin = Profile::linear(c);
                if u.source() != Obj::unit(p.tag()) || u.target() != p.component(&lin) {
                    rep.fail("unit endpoints", lin.render(), String::new());
                }
            }
            Err(_) => rep.fail("missing unit", c.render(), String::new()),
        }
    }
    // γᵢ(x, η) = x and γ₁(η, x) = x
    for outer in p.seq.stored_profiles() {
        if p.seq.is_empty_at(outer) {
            continue;
        }
        let obj = p.component(outer);
        let id = Map::identity(&obj);
        for i in 1..=outer.arity() {
            let c = &outer.inputs[i - 1];
            let lin = Profile::linear(c);
            let key = (outer.clone(), i, lin.clone());
            if p.is_truncated(&key) {
                rep.truncated(format!("unit law skipped at truncated {}", outer.render()));
                continue;
            }
            let Ok(u) = p.unit_map(c) else { continue };
            // P(c̄) = P(c̄) ⊗ 𝟙 --id⊗η--> P(c̄) ⊗ P(c;c) --γᵢ--> P(c̄)
            let lhs = Map::identity(&obj)
                .tensor(&u)
                .and_then(|m| p.gamma(outer, i, &lin).and_then(|g| g.compose(&m)));
            match lhs {
                Ok(m) if m == id => {}
                Ok(_) => rep.fail("right unit law", outer.render(), format!("slot {i}")),
                Err(Error::Truncation(_)) => {
                    rep.truncated(format!("unit law skipped at {}", outer.render()))
                }
                Err(_) => rep.fail("right unit law (missing γ)", outer.render(), format!("slot {i}")),
            }
        }
        // left: γ₁(η_out, x) = x
        let lin = Profile::linear(&outer.output);
        if let Ok(u) = p.unit_map(&outer.output) {
            let lhs = u
                .tensor(&Map::identity(&obj))
                .and_then(|m| p.gamma(&lin, 1, outer).and_then(|g| g.compose(&m)));
            match lhs {
                Ok(m) if m == id => {}
                Ok(_) => rep.fail("left unit law", outer.render(), String::new()),
                Err(Error::Truncation(_)) => {
                    rep.truncated(format!("left unit law skipped at {}", outer.render()))
                }
                Err(_) => rep.fail("left unit law (missing γ)", outer.render(), String::new()),
            }
        }
    }
}

fn check_gamma_presence(p: &Operad, rep: &mut Report) {
    for key in p.expected_gamma_keys() {
        if p.is_truncated(&key) {
            rep.truncated(format!(
                "composition {} ∘{} {} dropped by bounds",
                key.0.render(),
                key.1,
                key.2.render()
            ));
            continue;
        }
        let (outer, i, inner) = &key;
        match p.gamma(outer, *i, inner) {
            Ok(g) => {
                let src = p.component(outer).tensor(&p.component(inner)).unwrap();
                let spliced =
                    Profile::new(outer.splice(*i, &inner.inputs).unwrap(), outer.output.clone());
                if g.source() != src || g.target() != p.component(&spliced) {
                    rep.fail("γ endpoints", outer.render(), format!("slot {i} with {inner}"));
                }
            }
            Err(_) => rep.fail("missing composition", outer.render(), format!("slot {i} with {inner}")),
        }
    }
}

fn check_associativity(p: &Operad, rep: &mut Report) {
    let profiles: Vec<Profile> = p.seq.stored_profiles().cloned().collect();
    for outer in &profiles {
        if p.seq.is_empty_at(outer) {
            continue;
        }
        let n = outer.arity();
        for i in 1..=n {
            for mid in profiles.iter().filter(|q| q.output == outer.inputs[i - 1]) {
                if p.seq.is_empty_at(mid) {
                    continue;
                }
                let m = mid.arity();
                if n + m - 1 > p.max_arity() {
                    continue;
                }
                let spliced_im =
                    Profile::new(outer.splice(i, &mid.inputs).unwrap(), outer.output.clone());
                // nested: (p ∘ᵢ q) ∘_{i+j-1} r = p ∘ᵢ (q ∘ⱼ r)
                for j in 1..=m {
                    for inner in profiles.iter().filter(|r| r.output == mid.inputs[j - 1]) {
                        if p.seq.is_empty_at(inner) {
                            continue;
                        }
                        let l = inner.arity();
                        if n + m + l - 2 > p.max_arity() {
                            continue;
                        }
                        let lhs = (|| -> Result<Map> {
                            let g1 = p.gamma(outer, i, mid)?;
                            let g2 = p.gamma(&spliced_im, i + j - 1, inner)?;
                            g2.compose(&g1.tensor(&Map::identity(&p.component(inner)))?)
                        })();
                        let rhs = (|| -> Result<Map> {
                            let h1 = p.gamma(mid, j, inner)?;
                            let mid2 = Profile::new(
                                mid.splice(j, &inner.inputs)?,
                                mid.output.clone(),
                            );
                            let h2 = p.gamma(outer, i, &mid2)?;
                            h2.compose(&Map::identity(&p.component(outer)).tensor(&h1)?)
                        })();
                        match (lhs, rhs) {
                            (Ok(a), Ok(b)) if a == b => {}
                            (Err(Error::Truncation(_)), _) | (_, Err(Error::Truncation(_))) => {
                                rep.truncated(format!(
                                    "nested associativity skipped at {}",
                                    outer.render()
                                ));
                            }
                            _ => rep.fail(
                                "γ-associativity (nested)",
                                outer.render(),
                                format!("slot {i} {} then slot {j} {}", mid.render(), inner.render()),
                            ),
                        }
                    }
                }
                // disjoint: (p ∘ᵢ q) ∘_{k+m-1} r = (p ∘_k r) ∘ᵢ q for i < k
                for k in (i + 1)..=n {
                    for inner in profiles.iter().filter(|r| r.output == outer.inputs[k - 1]) {
                        if p.seq.is_empty_at(inner) {
                            continue;
                        }
                        let l = inner.arity();
                        if n + m + l - 2 > p.max_arity() {
                            continue;
                        }
                        // the route through p ∘_k r needs its intermediate
                        // within the truncation too
                        if n + l - 1 > p.max_arity() {
                            rep.truncated(format!(
                                "disjoint associativity skipped at {} (intermediate arity {})",
                                outer.render(),
                                n + l - 1
                            ));
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
                            // reorder (P(out)⊗P(mid))⊗P(in) → (P(out)⊗P(in))⊗P(mid)
                            let perm = crate::enrich::factor_perm(
                                &[&p.component(outer), &p.component(mid), &p.component(inner)],
                                &[0, 2, 1],
                            )?;
                            h2.compose(&h1.tensor(&Map::identity(&p.component(mid)))?)?
                                .compose(&perm)
                        })();
                        match (lhs, rhs) {
                            (Ok(a), Ok(b)) if a == b => {}
                            (Err(Error::Truncation(_)), _) | (_, Err(Error::Truncation(_))) => {
                                rep.truncated(format!(
                                    "disjoint associativity skipped at {}",
                                    outer.render()
                                ));
                            }
                            _ => rep.fail(
                                "γ-associativity (disjoint)",
                                outer.render(),
                                format!(
                                    "slots {i},{k} with {} and {}",
                                    mid.render(),
                                    inner.render()
                                ),
                            ),
                        }
                    }
                }
            }
        }
    }
}

fn check_equivariance(p: &Operad, rep: &mut Report) {
    let profiles: Vec<Profile> = p.seq.stored_profiles().cloned().collect();
    for outer in &profiles {
        if p.seq.is_empty_at(outer) {
            continue;
        }
        let n = outer.arity();
        for i in 1..=n {
            for inner in profiles.iter().filter(|q| q.output == outer.inputs[i - 1]) {
                if p.seq.is_empty_at(inner) {
                    continue;
                }
                let m = inner.arity();
                if n + m - 1 > p.max_arity() {
                    continue;
                }
                let key = (outer.clone(), i, inner.clone());
                if p.is_truncated(&key) {
                    continue;
                }
                for alpha in Permutation::all(n) {
                    for beta in Permutation::all(m) {
                        let j = alpha.inverse().apply(i);
                        // γ_j ∘ (α* ⊗ β*) = (α ◁_j β)* ∘ γᵢ
                        let lhs = (|| -> Result<Map> {
                            let am = p.seq.act(outer, &alpha)?;
                            let bm = p.seq.act(inner, &beta)?;
                            let outer_a = outer.act(&alpha)?;
                            let inner_b = inner.act(&beta)?;
                            p.gamma(&outer_a, j, &inner_b)?.compose(&am.tensor(&bm)?)
                        })();
                        let rhs = (|| -> Result<Map> {
                            let g = p.gamma(outer, i, inner)?;
                            let spliced = Profile::new(
                                outer.splice(i, &inner.inputs)?,
                                outer.output.clone(),
                            );
                            let big = block_insert(&alpha, &beta, j)?;
                            p.seq.act(&spliced, &big)?.compose(&g)
                        })();
                        match (lhs, rhs) {
                            (Ok(a), Ok(b)) if a == b => {}
                            (Err(Error::Truncation(_)), _) | (_, Err(Error::Truncation(_))) => {
                                rep.truncated(format!(
                                    "equivariance skipped at {}",
                                    outer.render()
                                ));
                            }
                            _ => rep.fail(
                                "γ-equivariance",
                                outer.render(),
                                format!("slot {i} {} α={alpha} β={beta}", inner.render()),
                            ),
                        }
                    }
                }
            }
        }
    }
}

/// Verify that `f : p → q` commutes with compositions and units on top of
/// being an equivariant morphism of the underlying sequences.
pub fn check_morphism(p: &Operad, q: &Operad, f: &OperadMorphism) -> Report {
    let mut rep = Report::new();
    rep.absorb(check_seq_morphism(&p.seq, &q.seq, f));
    // units
    if p.unital {
        for c in p.colours() {
            let lin = Profile::linear(c);
            if p.seq.is_empty_at(&lin) {
                continue;
            }
            let lhs = (|| -> Result<Map> {
                let fc = f.map_at(&p.seq, &q.seq, &lin)?;
                fc.compose(&p.unit_map(c)?)
            })();
            let rhs = f.apply_colour(c).and_then(|d| q.unit_map(&d));
            match (lhs, rhs) {
                (Ok(a), Ok(b)) if a == b => {}
                _ => rep.fail("morphism preserves units", c.render(), String::new()),
            }
        }
    }
    // compositions
    for key in p.expected_gamma_keys() {
        let (outer, i, inner) = &key;
        if p.is_truncated(&key) {
            rep.truncated(format!("morphism check skipped at truncated {}", outer.render()));
            continue;
        }
        let check = (|| -> Result<(Map, Map)> {
            let g = p.gamma(outer, *i, inner)?;
            let spliced = Profile::new(outer.splice(*i, &inner.inputs)?, outer.output.clone());
            let f_spliced = f.map_at(&p.seq, &q.seq, &spliced)?;
            let lhs = f_spliced.compose(&g)?;
            let fo = f.map_at(&p.seq, &q.seq, outer)?;
            let fi = f.map_at(&p.seq, &q.seq, inner)?;
            let qo = f.apply_profile(outer)?;
            let qi = f.apply_profile(inner)?;
            let h = q.gamma(&qo, *i, &qi)?;
            let rhs = h.compose(&fo.tensor(&fi)?)?;
            Ok((lhs, rhs))
        })();
        match check {
            Ok((a, b)) if a == b => {}
            Err(Error::Truncation(_)) => {
                rep.truncated(format!("morphism check skipped at {}", outer.render()))
            }
            _ => rep.fail(
                "morphism commutes with γ",
                outer.render(),
                format!("slot {i} with {}", inner.render()),
            ),
        }
    }
    rep.finish()
}

/// A 2-morphism `A : f → g` between operad morphisms `p → q`: one element
/// `A(c) ∈ q(f(c); g(c))` per colour, stored as a map out of the unit.
#[derive(Debug, Clone, PartialEq)]
pub struct Operad2Morphism {
    pub components: BTreeMap<Colour, Map>,
}

/// Verify the naturality square of a 2-morphism `A : f → g`.
pub fn check_2morphism(
    p: &Operad,
    q: &Operad,
    f: &OperadMorphism,
    g: &OperadMorphism,
    a: &Operad2Morphism,
) -> Report {
    let mut rep = Report::new();
    for c in p.colours() {
        let Some(ac) = a.components.get(c) else {
            rep.fail("missing 2-morphism component", c.render(), String::new());
            continue;
        };
        let (Ok(fc), Ok(gc)) = (f.apply_colour(c), g.apply_colour(c)) else {
            rep.fail("missing colour image", c.render(), String::new());
            continue;
        };
        let hom_profile = Profile::new(vec![fc], gc);
        if ac.source() != Obj::unit(p.tag()) || ac.target() != q.component(&hom_profile) {
            rep.fail("2-morphism endpoints", c.render(), String::new());
        }
    }
    for outer in p.seq.stored_profiles() {
        if p.seq.is_empty_at(outer) {
            continue;
        }
        let result = (|| -> Result<(Map, Map)> {
            let fo = f.apply_profile(outer)?;
            let go = g.apply_profile(outer)?;
            let fp = f.map_at(&p.seq, &q.seq, outer)?;
            let gp = g.map_at(&p.seq, &q.seq, outer)?;
            // lhs: plug f(x) into A(c): γ₁(A(c), f(x))
            let ac = a
                .components
                .get(&outer.output)
                .cloned()
                .ok_or_else(|| Error::Malformed("missing component".into()))?;
            let a_profile =
                Profile::new(vec![f.apply_colour(&outer.output)?], g.apply_colour(&outer.output)?);
            let lhs = q
                .gamma(&a_profile, 1, &fo)?
                .compose(&ac.tensor(&fp)?)?;
            // rhs: plug the A(cᵢ) into g(x) right-to-left
            let mut acc = gp;
            let mut cur = go.clone();
            for i in (1..=outer.arity()).rev() {
                let ci = &outer.inputs[i - 1];
                let ai = a
                    .components
                    .get(ci)
                    .cloned()
                    .ok_or_else(|| Error::Malformed("missing component".into()))?;
                let ai_profile =
                    Profile::new(vec![f.apply_colour(ci)?], g.apply_colour(ci)?);
                let gi = q.gamma(&cur, i, &ai_profile)?;
                cur = Profile::new(cur.splice(i, &ai_profile.inputs)?, cur.output.clone());
                // X --acc--> Q(cur) = Q(cur)⊗𝟙 --id⊗A--> Q(cur)⊗Q(fcᵢ;gcᵢ) --γᵢ-->
                acc = gi.compose(&acc.tensor(&ai)?)?;
            }
            Ok((lhs, acc))
        })();
        match result {
            Ok((a, b)) if a == b => {}
            Err(Error::Truncation(_)) => {
                rep.truncated(format!("2-morphism check skipped at {}", outer.render()))
            }
            _ => rep.fail("2-morphism naturality", outer.render(), String::new()),
        }
    }
    rep.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_profile_validation() {
        let a = Colour::atom("a");
        let b = Colour::atom("b");
        let outer = Profile::new(vec![a.clone(), b.clone()], a.clone());
        let inner_good = Profile::new(vec![], b.clone());
        let inner_bad = Profile::new(vec![], a.clone());
        assert!(check_gamma_profiles(&outer, 2, &inner_good).is_ok());
        assert!(check_gamma_profiles(&outer, 2, &inner_bad).is_err());
        assert!(check_gamma_profiles(&outer, 3, &inner_good).is_err());
    }
}

#[cfg(test)]
mod op_tests {
    use super::*;
    use crate::enrich::FinSetObj;
    use crate::symseq::hadamard_seq;

    fn mono() -> Colour {
        zoo::mono()
    }

    /// One binary generator with trivial S₂-action.
    fn trivial_binary_gens(max_arity: usize) -> SymSeq {
        let c = mono();
        let mut gens = SymSeq::new(Tag::FinSet, vec![c.clone()], max_arity);
        gens.set_component(
            Profile::new(vec![c.clone(), c.clone()], c.clone()),
            Obj::Fin(FinSetObj::from_atoms(["m"])),
        )
        .unwrap();
        gens.fill_singleton_actions();
        gens
    }

    /// One binary generator with free S₂-action.
    fn regular_binary_gens(max_arity: usize) -> SymSeq {
        let c = mono();
        let mut gens = SymSeq::new(Tag::FinSet, vec![c.clone()], max_arity);
        let two = Profile::new(vec![c.clone(), c.clone()], c.clone());
        let e2 = Obj::Fin(FinSetObj::from_atoms(["m", "mT"]));
        gens.set_component(two.clone(), e2.clone()).unwrap();
        let swap = Map::from_fn(&e2, &e2, |e| {
            if e == &Elem::atom("m") {
                Elem::atom("mT")
            } else {
                Elem::atom("m")
            }
        })
        .unwrap();
        gens.set_action_gen(two, 1, swap).unwrap();
        gens
    }

    fn sizes(op: &Operad, upto: usize) -> Vec<usize> {
        let c = mono();
        (0..=upto)
            .map(|n| op.component(&Profile::new(vec![c.clone(); n], c.clone())).size())
            .collect()
    }

    #[test]
    fn free_on_empty_is_unit() {
        let c = mono();
        let gens = SymSeq::new(Tag::FinSet, vec![c.clone()], 3);
        let free = free_operad(&gens, 3).unwrap();
        assert_eq!(sizes(&free.operad, 3), vec![0, 1, 0, 0]);
        assert!(check_operad(&free.operad).passed());
    }

    #[test]
    fn free_counts_trivial_and_regular() {
        let free_t = free_operad(&trivial_binary_gens(3), 2).unwrap();
        assert_eq!(sizes(&free_t.operad, 3), vec![0, 1, 1, 3]);
        let rep = check_operad(&free_t.operad);
        assert!(rep.passed(), "{rep}");

        let free_r = free_operad(&regular_binary_gens(3), 2).unwrap();
        assert_eq!(sizes(&free_r.operad, 3), vec![0, 1, 2, 12]);
        let rep = check_operad(&free_r.operad);
        assert!(rep.passed(), "{rep}");
    }

    #[test]
    fn free_inclusion_is_equivariant() {
        let gens = regular_binary_gens(3);
        let free = free_operad(&gens, 2).unwrap();
        let rep = crate::symseq::check_seq_morphism(&gens, &free.operad.seq, &free.inclusion);
        assert!(rep.passed(), "{rep}");
    }

    #[test]
    fn universal_extension_of_inclusion_is_identity() {
        let gens = regular_binary_gens(3);
        let free = free_operad(&gens, 2).unwrap();
        let ext = universal_extension(&free, &gens, &free.inclusion, &free.operad).unwrap();
        let id = SymSeqMorphism::identity(&free.operad.seq);
        assert_eq!(ext.colour_map, id.colour_map);
        assert_eq!(ext.maps, id.maps);
    }

    #[test]
    fn universal_extension_to_uas() {
        // send the regular binary generator pair to uAs(2): the extension is
        // the quotient by associativity and must be a morphism
        let gens = regular_binary_gens(3);
        let free = free_operad(&gens, 2).unwrap();
        let uas = builtin(Builtin::UAs, 3).unwrap();
        let c = mono();
        let two = Profile::new(vec![c.clone(); 2], c.clone());
        let img = Map::from_fn(&gens.component(&two), &uas.component(&two), |e| {
            let sigma = if e == &Elem::atom("m") {
                Permutation::identity(2)
            } else {
                Permutation::new(vec![2, 1]).unwrap()
            };
            crate::planar::uas_perm_elem(&sigma)
        })
        .unwrap();
        let images = SymSeqMorphism {
            colour_map: [(c.clone(), c.clone())].into_iter().collect(),
            maps: [(two, img)].into_iter().collect(),
        };
        let ext = universal_extension(&free, &gens, &images, &uas).unwrap();
        let rep = check_morphism(&free.operad, &uas, &ext);
        assert!(rep.passed(), "{rep}");
    }

    #[test]
    fn hadamard_unit_law_iso() {
        for which in [Builtin::UAs, Builtin::Perm] {
            let p = builtin(which, 3).unwrap();
            let (fwd, bwd) = hadamard_unit_iso(&p, UnitSide::Right).unwrap();
            let pu = hadamard_operad(&p, &builtin(Builtin::UCom, 3).unwrap()).unwrap();
            let rep = check_morphism(&pu, &p, &fwd);
            assert!(rep.passed(), "{rep}");
            let rep = check_morphism(&p, &pu, &bwd);
            assert!(rep.passed(), "{rep}");
            // mutually inverse
            let rt = fwd.then(&p.seq, &bwd).unwrap();
            let id = SymSeqMorphism::identity(&pu.seq);
            assert_eq!(rt.maps, id.maps);
            let rt = bwd.then(&pu.seq, &fwd).unwrap();
            let id = SymSeqMorphism::identity(&p.seq);
            assert_eq!(rt.maps, id.maps);
        }
    }

    #[test]
    fn hadamard_uas_uas_checks() {
        let uas = builtin(Builtin::UAs, 3).unwrap();
        let h = hadamard_operad(&uas, &uas).unwrap();
        let c = mono();
        let cc = c.pair(&c);
        assert_eq!(h.component(&Profile::new(vec![cc.clone(); 3], cc.clone())).size(), 36);
        let rep = check_operad(&h);
        assert!(rep.passed(), "{rep}");
        assert_eq!(h.colours().len(), 1);
        // underlying sequence agrees with the sequence-level product
        let hs = hadamard_seq(&uas.seq, &uas.seq).unwrap();
        assert_eq!(h.seq, hs);
    }

    #[test]
    fn pullback_identity_and_constant() {
        let uas = builtin(Builtin::UAs, 3).unwrap();
        let c = mono();
        let id_phi: BTreeMap<Colour, Colour> = [(c.clone(), c.clone())].into_iter().collect();
        let (p, proj) = pullback_colours(&id_phi, &uas).unwrap();
        assert_eq!(p.seq, uas.seq);
        assert!(check_morphism(&p, &uas, &proj).passed());

        // two colours collapsing onto the single uAs colour: every profile
        // component has size n!
        let a = Colour::atom("x");
        let b = Colour::atom("y");
        let phi: BTreeMap<Colour, Colour> =
            [(a.clone(), c.clone()), (b.clone(), c.clone())].into_iter().collect();
        let (q, proj) = pullback_colours(&phi, &uas).unwrap();
        let rep = check_operad(&q);
        assert!(rep.passed(), "{rep}");
        assert_eq!(q.component(&Profile::new(vec![a.clone(), b.clone()], a.clone())).size(), 2);
        assert_eq!(
            q.component(&Profile::new(vec![a.clone(), b.clone(), b.clone()], b.clone())).size(),
            6
        );
        let rep = check_morphism(&q, &uas, &proj);
        assert!(rep.passed(), "{rep}");
        // (φ∘ψ)* = ψ*∘φ* extensionally: pull back along identity twice
        let (q2, _) = pullback_colours(
            &[(a.clone(), a.clone()), (b.clone(), b.clone())].into_iter().collect(),
            &q,
        )
        .unwrap();
        assert_eq!(q2.seq, q.seq);
    }

    #[test]
    fn same_colour_tensor_monochromatic_matches_hadamard() {
        let uas = builtin(Builtin::UAs, 3).unwrap();
        let t = same_colour_tensor(&uas, &uas).unwrap();
        let rep = check_operad(&t);
        assert!(rep.passed(), "{rep}");
        let h = hadamard_operad(&uas, &uas).unwrap();
        let c = mono();
        for n in 0..=3usize {
            let tp = Profile::new(vec![c.clone(); n], c.clone());
            let cc = c.pair(&c);
            let hp = Profile::new(vec![cc.clone(); n], cc.clone());
            assert_eq!(t.component(&tp).size(), h.component(&hp).size());
        }
        // unit law against π*(uCom)
        let ucom = builtin(Builtin::UCom, 3).unwrap();
        let star = ucom.colours()[0].clone();
        let pi: BTreeMap<Colour, Colour> = [(c.clone(), star)].into_iter().collect();
        let (pi_ucom, _) = pullback_colours(&pi, &ucom).unwrap();
        let tu = same_colour_tensor(&uas, &pi_ucom).unwrap();
        for n in 0..=3usize {
            let tp = Profile::new(vec![c.clone(); n], c.clone());
            assert_eq!(tu.component(&tp).size(), uas.component(&tp).size());
        }
    }

    #[test]
    fn two_morphism_identity_and_corruption() {
        let (uas, ucom, f) = uas_to_ucom_collapse(3).unwrap();
        // A : f → f with the unit components
        let star = ucom.colours()[0].clone();
        let lin = Profile::linear(&star);
        let a = Operad2Morphism {
            components: [(mono(), ucom.unit_map(&star).unwrap())].into_iter().collect(),
        };
        let rep = check_2morphism(&uas, &ucom, &f, &f, &a);
        assert!(rep.passed(), "{rep}");
        let _ = lin;

        // corrupted component: wrong endpoints
        let bad = Operad2Morphism {
            components: [(
                mono(),
                Map::from_fn(&Obj::unit(Tag::FinSet), &Obj::unit(Tag::FinSet), |e| e.clone())
                    .unwrap(),
            )]
            .into_iter()
            .collect(),
        };
        let rep = check_2morphism(&uas, &ucom, &f, &f, &bad);
        assert!(!rep.passed());
    }

    #[test]
    fn corrupted_gamma_pinpointed() {
        let mut uas = builtin(Builtin::UAs, 3).unwrap();
        let c = mono();
        let two = Profile::new(vec![c.clone(); 2], c.clone());
        let obj2 = uas.component(&two);
        // overwrite γ₁ at (2)∘(2) with a constant map
        let tgt = uas.component(&Profile::new(vec![c.clone(); 3], c.clone()));
        let constant = tgt.elems()[0].clone();
        let bad = Map::from_fn(&obj2.tensor(&obj2).unwrap(), &tgt, |_| constant.clone()).unwrap();
        uas.set_gamma(two.clone(), 1, two.clone(), bad).unwrap();
        let rep = check_operad(&uas);
        assert!(!rep.passed());
        assert!(rep.findings.iter().any(|f| f.profile == two.render()), "{rep}");
    }

    #[test]
    fn presented_orientation_invariance() {
        let pres = ucom_presentation(3, 3).unwrap();
        let flipped = Presentation {
            generators: pres.generators.clone(),
            relations: pres.relations.iter().map(|(l, r)| (r.clone(), l.clone())).collect(),
            word_bound: pres.word_bound,
            unital: true,
        };
        let a = presented_operad(&pres).unwrap();
        let b = presented_operad(&flipped).unwrap();
        for p in a.operad.seq.stored_profiles() {
            assert_eq!(a.operad.component(p).size(), b.operad.component(p).size());
        }
    }
}
