//! Coloured rooted trees with numbered leaves: grafting, dendroidal moves,
//! enumeration up to isomorphism, and canonical forms.
//!
//! Trees are stored with an arbitrary planar input order per vertex; the
//! symmetry is handled by the consumers (free operads, the Boardman–Vogt
//! construction) through [`Tree::canonical_form`], which also transports
//! vertex payloads along input reorderings.

use crate::enrich::{Colour, Obj};
use crate::perms::{Permutation, Profile};
use crate::symseq::SymSeq;
use crate::{Error, Result};
use std::collections::BTreeSet;

/// A payload carried by every vertex (decorations, edge labels).
pub trait Payload: Clone {
    fn render(&self) -> String;
}

impl Payload for () {
    fn render(&self) -> String {
        String::new()
    }
}

/// Vertex payload for decorated trees: an element decorating the vertex and
/// an optional label on its output edge (used by the Boardman–Vogt
/// construction; free operads leave it `None`).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct DecPayload {
    pub dec: crate::enrich::Elem,
    pub label: Option<crate::enrich::Elem>,
}

impl Payload for DecPayload {
    fn render(&self) -> String {
        match &self.label {
            None => self.dec.to_string(),
            Some(l) => format!("{}!{}", self.dec, l),
        }
    }
}

/// A decorated tree.
pub type DecTree = Tree<DecPayload>;

/// A coloured rooted tree. A `Leaf` is an edge with no generating vertex,
/// carrying its number under the leaf bijection; a `Vertex` carries the
/// colour of its output edge and its ordered children (= input edges).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Tree<V> {
    Leaf { number: usize, colour: Colour },
    Vertex { colour: Colour, payload: V, children: Vec<Tree<V>> },
}

/// A plain (undecorated) coloured tree.
pub type PlainTree = Tree<()>;

/// How a vertex payload transforms when the vertex's inputs are reordered
/// by `σ` (new child `j` = old child `σ(j)`).
pub type PayloadAction<'a, V> = &'a dyn Fn(&V, &Profile, &Permutation) -> Result<V>;

/// The trivial action for payload-free trees.
pub fn unit_action(_: &(), _: &Profile, _: &Permutation) -> Result<()> {
    Ok(())
}

impl<V: Payload> Tree<V> {
    pub fn bare(number: usize, colour: Colour) -> Self {
        Tree::Leaf { number, colour }
    }

    pub fn root_colour(&self) -> &Colour {
        match self {
            Tree::Leaf { colour, .. } => colour,
            Tree::Vertex { colour, .. } => colour,
        }
    }

    pub fn vertex_count(&self) -> usize {
        match self {
            Tree::Leaf { .. } => 0,
            Tree::Vertex { children, .. } => {
                1 + children.iter().map(|c| c.vertex_count()).sum::<usize>()
            }
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Tree::Leaf { .. })
    }

    /// Leaves in planar (left-to-right) order.
    pub fn leaves(&self) -> Vec<(usize, Colour)> {
        match self {
            Tree::Leaf { number, colour } => vec![(*number, colour.clone())],
            Tree::Vertex { children, .. } => {
                children.iter().flat_map(|c| c.leaves()).collect()
            }
        }
    }

    /// The profile `(c₁,…,c_k ; c)` where `cᵢ` is the colour of the leaf
    /// numbered `i`. Errors if the numbering is not a bijection `{1..k}`.
    pub fn leaf_profile(&self) -> Result<Profile> {
        let leaves = self.leaves();
        let k = leaves.len();
        let mut inputs = vec![None; k];
        for (num, col) in leaves {
            if num == 0 || num > k || inputs[num - 1].is_some() {
                return Err(Error::Malformed(format!("leaf numbering is not a bijection at {num}")));
            }
            inputs[num - 1] = Some(col);
        }
        Ok(Profile::new(inputs.into_iter().map(Option::unwrap).collect(), self.root_colour().clone()))
    }

    /// The profile of the vertex at `path` (ordered child colours; output).
    pub fn vertex_profile(&self, path: &[usize]) -> Result<Profile> {
        let t = self.subtree(path)?;
        match t {
            Tree::Leaf { .. } => Err(Error::BadVertex(format!("{path:?} is a leaf"))),
            Tree::Vertex { colour, children, .. } => Ok(Profile::new(
                children.iter().map(|c| c.root_colour().clone()).collect(),
                colour.clone(),
            )),
        }
    }

    pub fn subtree(&self, path: &[usize]) -> Result<&Tree<V>> {
        let mut t = self;
        for &i in path {
            match t {
                Tree::Vertex { children, .. } if i < children.len() => t = &children[i],
                _ => return Err(Error::BadVertex(format!("no child {i}"))),
            }
        }
        Ok(t)
    }

    fn subtree_mut(&mut self, path: &[usize]) -> Result<&mut Tree<V>> {
        let mut t = self;
        for &i in path {
            match t {
                Tree::Vertex { children, .. } if i < children.len() => t = &mut children[i],
                _ => return Err(Error::BadVertex(format!("no child {i}"))),
            }
        }
        Ok(t)
    }

    /// Paths of all vertices, in preorder.
    pub fn vertex_paths(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        self.collect_vertex_paths(&mut Vec::new(), &mut out);
        out
    }

    fn collect_vertex_paths(&self, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if let Tree::Vertex { children, .. } = self {
            out.push(prefix.clone());
            for (i, c) in children.iter().enumerate() {
                prefix.push(i);
                c.collect_vertex_paths(prefix, out);
                prefix.pop();
            }
        }
    }

    /// Paths of all inner edges. An inner edge is the output edge of a
    /// non-root vertex, identified by the path of that vertex.
    pub fn inner_edge_paths(&self) -> Vec<Vec<usize>> {
        self.vertex_paths().into_iter().filter(|p| !p.is_empty()).collect()
    }

    /// Deterministic serialisation; equal iff structurally equal.
    pub fn serialize(&self) -> String {
        match self {
            Tree::Leaf { number, colour } => format!("L{number}:{colour}"),
            Tree::Vertex { colour, payload, children } => {
                let kids: Vec<String> = children.iter().map(|c| c.serialize()).collect();
                format!("V{}[{}]({})", colour, payload.render(), kids.join(","))
            }
        }
    }

    /// Graft `other` onto the leaf numbered `i`, renumbering leaves by the
    /// splice rule: leaves of `self` below `i` keep their numbers, leaves of
    /// `other` become `i..i+m-1`, leaves of `self` above `i` shift by `m-1`.
    pub fn graft(&self, i: usize, other: &Tree<V>) -> Result<Tree<V>> {
        let own = self.leaf_profile()?;
        if i == 0 || i > own.arity() {
            return Err(Error::BadIndex(format!("graft slot {i} of arity {}", own.arity())));
        }
        let other_profile = other.leaf_profile()?;
        if own.inputs[i - 1] != other_profile.output {
            return Err(Error::ColourMismatch(format!(
                "leaf {i} has colour {} but the grafted root has colour {}",
                own.inputs[i - 1], other_profile.output
            )));
        }
        let m = other_profile.arity();
        Ok(self.graft_rec(i, other, m))
    }

    fn graft_rec(&self, i: usize, other: &Tree<V>, m: usize) -> Tree<V> {
        match self {
            Tree::Leaf { number, colour } => {
                if *number == i {
                    other.renumber(&|j| i + j - 1)
                } else if *number > i {
                    Tree::Leaf { number: number + m - 1, colour: colour.clone() }
                } else {
                    Tree::Leaf { number: *number, colour: colour.clone() }
                }
            }
            Tree::Vertex { colour, payload, children } => Tree::Vertex {
                colour: colour.clone(),
                payload: payload.clone(),
                children: children.iter().map(|c| c.graft_rec(i, other, m)).collect(),
            },
        }
    }

    fn renumber(&self, f: &impl Fn(usize) -> usize) -> Tree<V> {
        match self {
            Tree::Leaf { number, colour } => {
                Tree::Leaf { number: f(*number), colour: colour.clone() }
            }
            Tree::Vertex { colour, payload, children } => Tree::Vertex {
                colour: colour.clone(),
                payload: payload.clone(),
                children: children.iter().map(|c| c.renumber(f)).collect(),
            },
        }
    }

    /// Canonical representative of the isomorphism class fixing leaves
    /// pointwise: children are sorted by their canonical serialisation and
    /// the payload is transported along the sorting permutation; within tie
    /// blocks of identical children the payload is minimised.
    pub fn canonical_form(&self, act: PayloadAction<V>) -> Result<Tree<V>> {
        match self {
            Tree::Leaf { .. } => Ok(self.clone()),
            Tree::Vertex { colour, payload, children } => {
                let canon_children: Vec<Tree<V>> =
                    children.iter().map(|c| c.canonical_form(act)).collect::<Result<_>>()?;
                let keys: Vec<String> = canon_children.iter().map(|c| c.serialize()).collect();
                let k = children.len();
                let mut order: Vec<usize> = (0..k).collect();
                order.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
                let sigma =
                    Permutation::new(order.iter().map(|&i| i + 1).collect::<Vec<_>>())?;
                let profile = Profile::new(
                    canon_children.iter().map(|c| c.root_colour().clone()).collect(),
                    colour.clone(),
                );
                let sorted: Vec<Tree<V>> = order.iter().map(|&i| canon_children[i].clone()).collect();
                let base = act(payload, &profile, &sigma)?;
                let sorted_profile = profile.act(&sigma)?;
                // tie blocks: identical serialisations
                let sorted_keys: Vec<String> = sorted.iter().map(|c| c.serialize()).collect();
                let mut blocks: Vec<(usize, usize)> = Vec::new();
                let mut s = 0;
                while s < k {
                    let mut e = s + 1;
                    while e < k && sorted_keys[e] == sorted_keys[s] {
                        e += 1;
                    }
                    if e - s > 1 {
                        blocks.push((s, e));
                    }
                    s = e;
                }
                let payload = if blocks.is_empty() {
                    base
                } else {
                    minimise_over_blocks(&base, &sorted_profile, &blocks, k, act)?
                };
                Ok(Tree::Vertex { colour: colour.clone(), payload, children: sorted })
            }
        }
    }
}

/// Minimise `payload.render()` over the product of symmetric groups on the
/// tie blocks.
fn minimise_over_blocks<V: Payload>(
    base: &V,
    profile: &Profile,
    blocks: &[(usize, usize)],
    k: usize,
    act: PayloadAction<V>,
) -> Result<V> {
    let spaces: Vec<Vec<Permutation>> =
        blocks.iter().map(|&(s, e)| Permutation::all(e - s)).collect();
    let mut best = base.clone();
    let mut best_key = base.render();
    let mut pick = vec![0usize; blocks.len()];
    loop {
        // assemble the block permutation of {1..k}
        let mut image: Vec<usize> = (1..=k).collect();
        for (bi, &(s, _)) in blocks.iter().enumerate() {
            let tau = &spaces[bi][pick[bi]];
            for off in 1..=tau.size() {
                image[s + off - 1] = s + tau.apply(off);
            }
        }
        let tau = Permutation::new(image)?;
        let cand = act(base, profile, &tau)?;
        let key = cand.render();
        if key < best_key {
            best = cand;
            best_key = key;
        }
        let mut c = blocks.len();
        loop {
            if c == 0 {
                return Ok(best);
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

impl PlainTree {
    /// Contract the inner edge at `path`: merge the vertex above with its
    /// parent, splicing the children in place. Leaf numbering is unchanged.
    pub fn contract_inner_edge(&self, path: &[usize]) -> Result<PlainTree> {
        if path.is_empty() {
            return Err(Error::BadEdge("the root edge is not inner".into()));
        }
        let mut out = self.clone();
        let (parent_path, slot) = (&path[..path.len() - 1], path[path.len() - 1]);
        let parent = out.subtree_mut(parent_path)?;
        let Tree::Vertex { children, .. } = parent else {
            return Err(Error::BadEdge(format!("{parent_path:?} is not a vertex")));
        };
        let Tree::Vertex { children: inner, .. } = children[slot].clone() else {
            return Err(Error::BadEdge(format!("{path:?} is a leaf edge")));
        };
        children.splice(slot..=slot, inner);
        Ok(out)
    }

    /// Remove the unary vertex at `path`, merging its two edges. The edge
    /// colours must agree.
    pub fn remove_unary_vertex(&self, path: &[usize]) -> Result<PlainTree> {
        let v = self.subtree(path)?;
        let Tree::Vertex { colour, children, .. } = v else {
            return Err(Error::BadVertex(format!("{path:?} is a leaf")));
        };
        if children.len() != 1 {
            return Err(Error::BadVertex(format!("vertex at {path:?} has arity {}", children.len())));
        }
        if children[0].root_colour() != colour {
            return Err(Error::ColourMismatch("merged edges have different colours".into()));
        }
        let replacement = children[0].clone();
        if path.is_empty() {
            return Ok(replacement);
        }
        let mut out = self.clone();
        *out.subtree_mut(path)? = replacement;
        Ok(out)
    }
}

/// Enumerate one canonical representative per isomorphism class of coloured
/// trees with the given numbered-leaf profile, at most `max_vertices`
/// vertices and vertex arities at most `max_vertex_arity`.
pub fn enumerate_trees(
    colours: &[Colour],
    leaf_profile: &Profile,
    max_vertices: usize,
    max_vertex_arity: usize,
) -> Vec<PlainTree> {
    let leaves: Vec<(usize, Colour)> =
        (1..=leaf_profile.arity()).map(|i| (i, leaf_profile.inputs[i - 1].clone())).collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for t in gen_trees(colours, &leaf_profile.output, &leaves, max_vertices, max_vertex_arity) {
        let c = t.canonical_form(&unit_action).unwrap();
        if seen.insert(c.serialize()) {
            out.push(c);
        }
    }
    out
}

fn gen_trees(
    colours: &[Colour],
    root: &Colour,
    leaves: &[(usize, Colour)],
    budget: usize,
    max_arity: usize,
) -> Vec<PlainTree> {
    let mut out = Vec::new();
    // bare edge
    if let [(num, col)] = leaves {
        if col == root {
            out.push(Tree::Leaf { number: *num, colour: root.clone() });
        }
    }
    if budget == 0 {
        return out;
    }
    for arity in 0..=max_arity {
        if arity == 0 && !leaves.is_empty() {
            continue;
        }
        // ordered set-partitions of the leaves into `arity` blocks
        let assignments = block_assignments(leaves.len(), arity);
        for assign in assignments {
            let blocks: Vec<Vec<(usize, Colour)>> = (0..arity)
                .map(|b| {
                    leaves
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| assign[*i] == b)
                        .map(|(_, l)| l.clone())
                        .collect()
                })
                .collect();
            // child root colours
            let mut col_idx = vec![0usize; arity];
            loop {
                let child_cols: Vec<&Colour> = col_idx.iter().map(|&i| &colours[i]).collect();
                // enumerate child tuples within the shared budget
                let mut stack: Vec<(usize, Vec<PlainTree>, usize)> = vec![(0, Vec::new(), budget - 1)];
                while let Some((next, partial, rem)) = stack.pop() {
                    if next == arity {
                        out.push(Tree::Vertex {
                            colour: root.clone(),
                            payload: (),
                            children: partial,
                        });
                        continue;
                    }
                    for t in gen_trees(colours, child_cols[next], &blocks[next], rem, max_arity) {
                        let used = t.vertex_count();
                        if used <= rem {
                            let mut p2 = partial.clone();
                            p2.push(t);
                            stack.push((next + 1, p2, rem - used));
                        }
                    }
                }
                // advance colour odometer
                let mut c = arity;
                loop {
                    if c == 0 {
                        break;
                    }
                    c -= 1;
                    col_idx[c] += 1;
                    if col_idx[c] < colours.len() {
                        break;
                    }
                    col_idx[c] = 0;
                }
                if arity == 0 || (c == 0 && col_idx[0] == 0) {
                    break;
                }
            }
        }
    }
    // dedup by canonical form at each level to keep the recursion small
    let mut seen = BTreeSet::new();
    out.into_iter()
        .filter_map(|t| {
            let c = t.canonical_form(&unit_action).unwrap();
            seen.insert(c.serialize()).then_some(c)
        })
        .collect()
}

/// All functions `{0..n-1} → {0..a-1}`.
fn block_assignments(n: usize, a: usize) -> Vec<Vec<usize>> {
    if a == 0 {
        return if n == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    let mut cur = vec![0usize; n];
    loop {
        out.push(cur.clone());
        let mut c = n;
        loop {
            if c == 0 {
                return out;
            }
            c -= 1;
            cur[c] += 1;
            if cur[c] < a {
                break;
            }
            cur[c] = 0;
        }
    }
}

/// The tensor `⊗_Y M` over the vertices of `Y`, with each vertex component
/// read off along the input ordering carried by the tree. A vertex-free tree
/// contributes the monoidal unit.
pub fn tensor_over_tree(m: &SymSeq, tree: &PlainTree) -> Result<Obj> {
    let mut acc = Obj::unit(m.tag);
    for path in tree.vertex_paths() {
        let profile = tree.vertex_profile(&path)?;
        if profile.arity() > m.max_arity {
            return Err(Error::Truncation(format!(
                "vertex arity {} exceeds max arity {}",
                profile.arity(),
                m.max_arity
            )));
        }
        acc = acc.tensor(&m.component(&profile))?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enrich::{FinSetObj, Tag};

    fn c() -> Colour {
        Colour::atom("c")
    }

    fn corolla(n: usize) -> PlainTree {
        Tree::Vertex {
            colour: c(),
            payload: (),
            children: (1..=n).map(|i| Tree::Leaf { number: i, colour: c() }).collect(),
        }
    }

    #[test]
    fn bare_edge_enumeration() {
        let ts = enumerate_trees(&[c()], &Profile::linear(&c()), 0, 3);
        assert_eq!(ts.len(), 1);
        assert!(ts[0].is_leaf());
    }

    #[test]
    fn two_leaves_one_vertex_is_the_corolla() {
        let p = Profile::new(vec![c(), c()], c());
        let ts = enumerate_trees(&[c()], &p, 1, 4);
        assert_eq!(ts.len(), 1);
        assert_eq!(ts[0].vertex_count(), 1);
    }

    #[test]
    fn three_leaves_binary_two_vertices() {
        let p = Profile::new(vec![c(), c(), c()], c());
        let ts = enumerate_trees(&[c()], &p, 2, 2);
        // the three cherry pairs {i,j}
        assert_eq!(ts.len(), 3);
    }

    #[test]
    fn graft_bare_edge_is_identity() {
        let t = corolla(2);
        let bare = Tree::bare(1, c());
        assert_eq!(t.graft(1, &bare).unwrap(), t);
        // grafting onto a bare edge gives the other tree
        assert_eq!(bare.graft(1, &t).unwrap(), t);
    }

    #[test]
    fn graft_renumbering_matches_splice() {
        // graft a 2-corolla onto leaf 1 of a 2-corolla: caterpillar with
        // leaves (1,2) inside, 3 outside
        let t = corolla(2).graft(1, &corolla(2)).unwrap();
        let p = t.leaf_profile().unwrap();
        assert_eq!(p.arity(), 3);
        let leaves = t.leaves();
        assert_eq!(leaves.len(), 3);
        // planar order: inner corolla leaves first (1,2), then old leaf 2 → 3
        assert_eq!(leaves.iter().map(|(n, _)| *n).collect::<Vec<_>>(), vec![1, 2, 3]);

        // graft at slot 2: old leaf 1 stays, new leaves are 2,3
        let t2 = corolla(2).graft(2, &corolla(2)).unwrap();
        assert_eq!(
            t2.leaves().iter().map(|(n, _)| *n).collect::<Vec<_>>(),
            vec![1, 2, 3]
        );
    }

    #[test]
    fn graft_disjoint_slots_commute() {
        let base = corolla(3);
        for i in 1..=3usize {
            for j in (i + 1)..=3usize {
                let a = base.graft(i, &corolla(2)).unwrap();
                let ab = a.graft(j + 1, &corolla(2)).unwrap();
                let b = base.graft(j, &corolla(2)).unwrap();
                let ba = b.graft(i, &corolla(2)).unwrap();
                assert_eq!(
                    ab.canonical_form(&unit_action).unwrap(),
                    ba.canonical_form(&unit_action).unwrap()
                );
            }
        }
    }

    #[test]
    fn graft_is_operadically_associative() {
        // (t ∘ᵢ u) ∘_{i+j-1} v = t ∘ᵢ (u ∘ⱼ v)
        let t = corolla(2);
        for i in 1..=2usize {
            for j in 1..=2usize {
                let lhs = t.graft(i, &corolla(2)).unwrap().graft(i + j - 1, &corolla(2)).unwrap();
                let rhs = t.graft(i, &corolla(2).graft(j, &corolla(2)).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn contract_caterpillar_gives_corolla() {
        let cat = corolla(2).graft(1, &corolla(2)).unwrap();
        let inner = cat.inner_edge_paths();
        assert_eq!(inner.len(), 1);
        let contracted = cat.contract_inner_edge(&inner[0]).unwrap();
        assert_eq!(
            contracted.canonical_form(&unit_action).unwrap(),
            corolla(3).canonical_form(&unit_action).unwrap()
        );
    }

    #[test]
    fn disjoint_contractions_commute() {
        // two inner edges on a 4-leaf tree with three binary vertices
        let t = corolla(2)
            .graft(1, &corolla(2))
            .unwrap()
            .graft(3, &corolla(2))
            .unwrap();
        let edges = t.inner_edge_paths();
        assert_eq!(edges.len(), 2);
        let a = t.contract_inner_edge(&edges[0]).unwrap();
        // recompute the second edge's path in `a`
        let b = t.contract_inner_edge(&edges[1]).unwrap();
        let a2 = a.contract_inner_edge(&a.inner_edge_paths()[0]).unwrap();
        let b2 = b.contract_inner_edge(&b.inner_edge_paths()[0]).unwrap();
        assert_eq!(
            a2.canonical_form(&unit_action).unwrap(),
            b2.canonical_form(&unit_action).unwrap()
        );
    }

    #[test]
    fn remove_unary_vertex_merges_edges() {
        let unary_over = Tree::Vertex {
            colour: c(),
            payload: (),
            children: vec![corolla(2)],
        };
        let removed = unary_over.remove_unary_vertex(&[]).unwrap();
        assert_eq!(removed, corolla(2));
    }

    #[test]
    fn canonical_form_idempotent_and_mirror_stable() {
        let mirror = Tree::Vertex {
            colour: c(),
            payload: (),
            children: vec![corolla(2).graft(1, &corolla(2)).unwrap()],
        };
        let once = mirror.canonical_form(&unit_action).unwrap();
        let twice = once.canonical_form(&unit_action).unwrap();
        assert_eq!(once, twice);

        // mirror images: children in both orders canonicalise identically
        let left = Tree::Vertex {
            colour: c(),
            payload: (),
            children: vec![Tree::Leaf { number: 3, colour: c() }, corolla(2)],
        };
        let right = Tree::Vertex {
            colour: c(),
            payload: (),
            children: vec![corolla(2), Tree::Leaf { number: 3, colour: c() }],
        };
        assert_eq!(
            left.canonical_form(&unit_action).unwrap(),
            right.canonical_form(&unit_action).unwrap()
        );

        // distinct leaf numberings canonicalise differently
        let other = Tree::Vertex {
            colour: c(),
            payload: (),
            children: vec![
                Tree::Leaf { number: 1, colour: c() },
                Tree::Vertex {
                    colour: c(),
                    payload: (),
                    children: vec![
                        Tree::Leaf { number: 2, colour: c() },
                        Tree::Leaf { number: 3, colour: c() },
                    ],
                },
            ],
        };
        assert_ne!(
            left.canonical_form(&unit_action).unwrap(),
            other.canonical_form(&unit_action).unwrap()
        );
    }

    /// Independent isomorphism test: recursive matching over all child
    /// bijections, fixing leaves pointwise.
    fn isomorphic(a: &PlainTree, b: &PlainTree) -> bool {
        match (a, b) {
            (Tree::Leaf { number: n1, colour: c1 }, Tree::Leaf { number: n2, colour: c2 }) => {
                n1 == n2 && c1 == c2
            }
            (
                Tree::Vertex { colour: c1, children: k1, .. },
                Tree::Vertex { colour: c2, children: k2, .. },
            ) => {
                if c1 != c2 || k1.len() != k2.len() {
                    return false;
                }
                for sigma in Permutation::all(k1.len()) {
                    if (0..k1.len()).all(|j| isomorphic(&k1[sigma.apply(j + 1) - 1], &k2[j])) {
                        return true;
                    }
                }
                false
            }
            _ => false,
        }
    }

    #[test]
    fn enumeration_counts_match_pairwise_iso_oracle() {
        // generate all planar trees naively, bucket by pairwise isomorphism
        let cols = vec![c()];
        for (arity, maxv, maxa) in [(1usize, 2usize, 2usize), (2, 2, 2), (3, 3, 2), (2, 2, 3)] {
            let p = Profile::new(vec![c(); arity], c());
            let mine = enumerate_trees(&cols, &p, maxv, maxa);
            // oracle: raw planar generation without any canonicalisation
            let raw = raw_planar(&cols, &c(), &(1..=arity).map(|i| (i, c())).collect::<Vec<_>>(), maxv, maxa);
            let mut classes: Vec<PlainTree> = Vec::new();
            for t in &raw {
                if !classes.iter().any(|r| isomorphic(r, t)) {
                    classes.push(t.clone());
                }
            }
            assert_eq!(mine.len(), classes.len(), "arity {arity} maxv {maxv} maxa {maxa}");
        }
    }

    /// Naive planar generation (no dedup) used by the oracle.
    fn raw_planar(
        cols: &[Colour],
        root: &Colour,
        leaves: &[(usize, Colour)],
        budget: usize,
        max_arity: usize,
    ) -> Vec<PlainTree> {
        let mut out = Vec::new();
        if let [(n, col)] = leaves {
            if col == root {
                out.push(Tree::Leaf { number: *n, colour: root.clone() });
            }
        }
        if budget == 0 {
            return out;
        }
        for arity in 0..=max_arity {
            if arity == 0 && !leaves.is_empty() {
                continue;
            }
            for assign in block_assignments(leaves.len(), arity) {
                let blocks: Vec<Vec<(usize, Colour)>> = (0..arity)
                    .map(|b| {
                        leaves
                            .iter()
                            .enumerate()
                            .filter(|(i, _)| assign[*i] == b)
                            .map(|(_, l)| l.clone())
                            .collect()
                    })
                    .collect();
                let mut stack: Vec<(usize, Vec<PlainTree>, usize)> =
                    vec![(0, Vec::new(), budget - 1)];
                while let Some((next, partial, rem)) = stack.pop() {
                    if next == arity {
                        out.push(Tree::Vertex {
                            colour: root.clone(),
                            payload: (),
                            children: partial,
                        });
                        continue;
                    }
                    for col in cols {
                        for t in raw_planar(cols, col, &blocks[next], rem, max_arity) {
                            if t.vertex_count() <= rem {
                                let mut p2 = partial.clone();
                                p2.push(t.clone());
                                stack.push((next + 1, p2, rem - t.vertex_count()));
                            }
                        }
                    }
                }
            }
        }
        out
    }

    #[test]
    fn tensor_over_tree_sizes() {
        let mut m = SymSeq::new(Tag::FinSet, vec![c()], 3);
        m.set_component(
            Profile::new(vec![c(), c()], c()),
            Obj::Fin(FinSetObj::from_atoms(["x", "y"])),
        )
        .unwrap();
        m.fill_singleton_actions();
        // bare edge → unit
        assert_eq!(tensor_over_tree(&m, &Tree::bare(1, c())).unwrap().size(), 1);
        // one binary vertex → size 2
        assert_eq!(tensor_over_tree(&m, &corolla(2)).unwrap().size(), 2);
        // two binary vertices → size 4
        let cat = corolla(2).graft(1, &corolla(2)).unwrap();
        assert_eq!(tensor_over_tree(&m, &cat).unwrap().size(), 4);
    }
}
