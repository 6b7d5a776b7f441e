//! The Hadamard tensor product of operads, colour pullbacks, the
//! fixed-colour tensor, and the canonical isomorphisms around `uCom`.

use super::{builtin, Builtin, Operad, OperadMorphism};
use crate::enrich::{factor_perm, Colour, Elem, Map};
use crate::perms::Profile;
use crate::symseq::{hadamard_seq, hadamard_swap, split_profile, SymSeqMorphism};
use crate::{Error, Result};
use std::collections::BTreeMap;

/// `P ⊗_H Q`: colours multiply, components tensor, compositions act
/// componentwise through the middle-four interchange.
pub fn hadamard_operad(p: &Operad, q: &Operad) -> Result<Operad> {
    if p.tag() != q.tag() {
        return Err(Error::TagMismatch("hadamard".into()));
    }
    let left_len = colour_len(p);
    let seq = hadamard_seq(&p.seq, &q.seq)?;
    let mut out = Operad::new(seq);
    out.unital = p.unital && q.unital;

    for c in p.colours() {
        for d in q.colours() {
            if let (Ok(uc), Ok(ud)) = (p.unit_map(c), q.unit_map(d)) {
                out.set_unit(c.pair(d), uc.tensor(&ud)?);
            }
        }
    }

    for key in out.expected_gamma_keys() {
        let (outer, i, inner) = &key;
        let (op, oq) = split_profile(outer, left_len);
        let (ip, iq) = split_profile(inner, left_len);
        let pk = (op.clone(), *i, ip.clone());
        let qk = (oq.clone(), *i, iq.clone());
        if p.is_truncated(&pk) || q.is_truncated(&qk) {
            out.mark_truncated(outer.clone(), *i, inner.clone());
            continue;
        }
        let gp = p.gamma(&op, *i, &ip)?;
        let gq = q.gamma(&oq, *i, &iq)?;
        // (P(o)⊗Q(o')) ⊗ (P(i)⊗Q(i')) → (P(o)⊗P(i)) ⊗ (Q(o')⊗Q(i'))
        let m4 = factor_perm(
            &[&p.component(&op), &q.component(&oq), &p.component(&ip), &q.component(&iq)],
            &[0, 2, 1, 3],
        )?;
        out.set_gamma(outer.clone(), *i, inner.clone(), gp.tensor(&gq)?.compose(&m4)?)?;
    }
    Ok(out)
}

fn colour_len(p: &Operad) -> usize {
    p.colours().first().map_or(1, |c| c.len())
}

/// Tensor two operad morphisms into a morphism of Hadamard products.
pub fn morphism_tensor(
    pl: &Operad,
    pr: &Operad,
    f: &OperadMorphism,
    g: &OperadMorphism,
) -> Result<OperadMorphism> {
    let left_len = colour_len(pl);
    let h = hadamard_seq(&pl.seq, &pr.seq)?;
    let mut colour_map = BTreeMap::new();
    for c in pl.colours() {
        for d in pr.colours() {
            colour_map.insert(c.pair(d), f.apply_colour(c)?.pair(&g.apply_colour(d)?));
        }
    }
    let mut maps = BTreeMap::new();
    for hp in h.stored_profiles() {
        if h.is_empty_at(hp) {
            continue;
        }
        let (pp, qp) = split_profile(hp, left_len);
        let fm = f
            .maps
            .get(&pp)
            .cloned()
            .ok_or_else(|| Error::Malformed(format!("missing map at {pp}")))?;
        let gm = g
            .maps
            .get(&qp)
            .cloned()
            .ok_or_else(|| Error::Malformed(format!("missing map at {qp}")))?;
        maps.insert(hp.clone(), fm.tensor(&gm)?);
    }
    Ok(SymSeqMorphism { colour_map, maps })
}

/// The symmetry `P ⊗_H Q → Q ⊗_H P` as an operad morphism.
pub fn hadamard_swap_op(p: &Operad, q: &Operad) -> Result<OperadMorphism> {
    hadamard_swap(&p.seq, &q.seq)
}

/// Which side the `uCom` factor sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnitSide {
    Left,
    Right,
}

/// The explicit unit isomorphism `P ⊗_H uCom ≅ P` (or `uCom ⊗_H P ≅ P`):
/// forward and backward operad morphisms that strip or append the `uCom`
/// coordinate.
pub fn hadamard_unit_iso(p: &Operad, side: UnitSide) -> Result<(OperadMorphism, OperadMorphism)> {
    let ucom = builtin(Builtin::UCom, p.max_arity())?;
    let star = ucom.colours()[0].clone();
    let star_len = star.len();
    let star_elem = |n: usize| {
        ucom.component(&Profile::new(vec![star.clone(); n], star.clone())).elems()[0].clone()
    };
    let product = match side {
        UnitSide::Right => hadamard_operad(p, &ucom)?,
        UnitSide::Left => hadamard_operad(&ucom, p)?,
    };
    let mut fwd_colours = BTreeMap::new();
    let mut bwd_colours = BTreeMap::new();
    for c in p.colours() {
        let prod_colour = match side {
            UnitSide::Right => c.pair(&star),
            UnitSide::Left => star.pair(c),
        };
        fwd_colours.insert(prod_colour.clone(), c.clone());
        bwd_colours.insert(c.clone(), prod_colour);
    }
    let mut fwd_maps = BTreeMap::new();
    let mut bwd_maps = BTreeMap::new();
    for hp in product.seq.stored_profiles() {
        if product.seq.is_empty_at(hp) {
            continue;
        }
        let pp = match side {
            UnitSide::Right => split_profile(hp, colour_len(p)).0,
            UnitSide::Left => split_profile(hp, star_len).1,
        };
        let src = product.component(hp);
        let tgt = p.component(&pp);
        let u = star_elem(hp.arity());
        let ulen = u.len();
        fwd_maps.insert(
            hp.clone(),
            Map::from_fn(&src, &tgt, |e| match side {
                UnitSide::Right => Elem(e.0[..e.0.len() - ulen].to_vec()),
                UnitSide::Left => Elem(e.0[ulen..].to_vec()),
            })?,
        );
        bwd_maps.insert(
            pp.clone(),
            Map::from_fn(&tgt, &src, |e| match side {
                UnitSide::Right => e.concat(&u),
                UnitSide::Left => u.concat(e),
            })?,
        );
    }
    let fwd = SymSeqMorphism { colour_map: fwd_colours, maps: fwd_maps };
    let bwd = SymSeqMorphism { colour_map: bwd_colours, maps: bwd_maps };
    Ok((fwd, bwd))
}

/// Pull an operad back along a colour function `φ : C → C′`:
/// `φ*(P)(c̄;c) = P(φc̄;φc)`. Also returns the canonical projection to `P`.
pub fn pullback_colours(
    phi: &BTreeMap<Colour, Colour>,
    p: &Operad,
) -> Result<(Operad, OperadMorphism)> {
    let colours: Vec<Colour> = phi.keys().cloned().collect();
    for d in phi.values() {
        if !p.colours().contains(d) {
            return Err(Error::Malformed(format!("colour {d} not in the target operad")));
        }
    }
    let apply = |c: &Colour| -> Colour { phi[c].clone() };
    let apply_profile = |q: &Profile| -> Profile {
        Profile::new(q.inputs.iter().map(&apply).collect(), apply(&q.output))
    };

    let mut seq = crate::symseq::SymSeq::new(p.tag(), colours.clone(), p.max_arity());
    let lifted = lift_profiles(&colours, p, &apply_profile);
    for q in &lifted {
        seq.set_component(q.clone(), p.component(&apply_profile(q)))?;
        for i in 1..q.arity() {
            seq.set_action_gen(q.clone(), i, p.seq.action_gen(&apply_profile(q), i)?)?;
        }
    }
    let mut out = Operad::new(seq);
    out.unital = p.unital;
    for c in &colours {
        if let Ok(u) = p.unit_map(&apply(c)) {
            out.set_unit(c.clone(), u);
        }
    }
    for key in out.expected_gamma_keys() {
        let (outer, i, inner) = &key;
        let ik = (apply_profile(outer), *i, apply_profile(inner));
        if p.is_truncated(&ik) {
            out.mark_truncated(outer.clone(), *i, inner.clone());
            continue;
        }
        out.set_gamma(outer.clone(), *i, inner.clone(), p.gamma(&ik.0, *i, &ik.2)?)?;
    }
    let maps = lifted
        .iter()
        .filter(|q| !out.seq.is_empty_at(q))
        .map(|q| (q.clone(), Map::identity(&out.component(q))))
        .collect();
    let proj = SymSeqMorphism { colour_map: phi.clone(), maps };
    Ok((out, proj))
}

fn lift_profiles(
    colours: &[Colour],
    p: &Operad,
    apply_profile: &impl Fn(&Profile) -> Profile,
) -> Vec<Profile> {
    let mut out = Vec::new();
    for n in 0..=p.max_arity() {
        let mut idx = vec![0usize; n + 1];
        loop {
            let output = colours[idx[n]].clone();
            let inputs: Vec<Colour> = (0..n).map(|k| colours[idx[k]].clone()).collect();
            let q = Profile::new(inputs, output);
            if !p.seq.is_empty_at(&apply_profile(&q)) {
                out.push(q);
            }
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

/// The fixed-colour tensor `P ⊗_C Q = diag*(P ⊗_H Q)` of two operads on the
/// same colour set.
pub fn same_colour_tensor(p: &Operad, q: &Operad) -> Result<Operad> {
    if p.colours() != q.colours() {
        return Err(Error::ColourMismatch("fixed-colour tensor needs equal colour sets".into()));
    }
    let h = hadamard_operad(p, q)?;
    let diag: BTreeMap<Colour, Colour> =
        p.colours().iter().map(|c| (c.clone(), c.pair(c))).collect();
    Ok(pullback_colours(&diag, &h)?.0)
}
