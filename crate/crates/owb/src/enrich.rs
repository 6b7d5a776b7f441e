//! The two concrete enrichment backends: finite sets and finite-dimensional
//! vector spaces over the exact rationals.
//!
//! Elements and colours are flat tuples of atoms. The tensor product
//! concatenates tuples, which makes n-fold tensors strictly associative and
//! strictly unital at the data level: the abstract associators and unitors
//! are identities. Every object is homogeneous (all its elements have the
//! same tuple length), so an element of a tensor product splits unambiguously
//! into its factors.
//!
//! All vector-space arithmetic is exact (`BigRational`); there is no floating
//! point anywhere in the crate.

use crate::{Error, Result};
use num::BigRational;
use num::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Which backend a structure lives in. Mixed-tag operations are rejected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tag {
    FinSet,
    VectQ,
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tag::FinSet => write!(f, "finset"),
            Tag::VectQ => write!(f, "vectq"),
        }
    }
}

fn render_tuple(atoms: &[String]) -> String {
    match atoms.len() {
        0 => "()".to_string(),
        1 => atoms[0].clone(),
        _ => format!("({})", atoms.join(",")),
    }
}

/// An element label: a flat tuple of atoms.
///
/// Base objects use single atoms; tensor products concatenate.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(pub Vec<String>);

impl Elem {
    pub fn atom(s: impl Into<String>) -> Self {
        Elem(vec![s.into()])
    }

    pub fn empty() -> Self {
        Elem(Vec::new())
    }

    pub fn concat(&self, other: &Elem) -> Elem {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        Elem(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_tuple(&self.0))
    }
}

/// A colour identifier: a flat tuple of atoms, so that Hadamard colour
/// products are strictly associative, mirroring [`Elem`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Colour(pub Vec<String>);

impl Colour {
    pub fn atom(s: impl Into<String>) -> Self {
        Colour(vec![s.into()])
    }

    pub fn pair(&self, other: &Colour) -> Colour {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        Colour(v)
    }

    /// Split into a prefix of length `k` and the rest.
    pub fn split(&self, k: usize) -> (Colour, Colour) {
        (Colour(self.0[..k].to_vec()), Colour(self.0[k..].to_vec()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Render for profile keys: atoms joined by `|`.
    pub fn render(&self) -> String {
        self.0.join("|")
    }

    pub fn parse(s: &str) -> Colour {
        Colour(s.split('|').map(|a| a.to_string()).collect())
    }
}

impl fmt::Display for Colour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// A finite set with canonically sorted, pairwise distinct element labels.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FinSetObj {
    elems: Vec<Elem>,
}

impl FinSetObj {
    /// Build from labels; sorts and rejects duplicates and mixed tuple lengths.
    pub fn new(mut elems: Vec<Elem>) -> Result<Self> {
        elems.sort();
        for w in elems.windows(2) {
            if w[0] == w[1] {
                return Err(Error::Malformed(format!("duplicate element {}", w[0])));
            }
            if w[0].len() != w[1].len() {
                return Err(Error::Malformed(format!(
                    "mixed tuple lengths: {} vs {}",
                    w[0], w[1]
                )));
            }
        }
        Ok(FinSetObj { elems })
    }

    pub fn from_atoms<I: IntoIterator<Item = S>, S: Into<String>>(atoms: I) -> Self {
        FinSetObj::new(atoms.into_iter().map(|a| Elem::atom(a)).collect())
            .expect("atom labels must be distinct")
    }

    pub fn elems(&self) -> &[Elem] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn index_of(&self, e: &Elem) -> Option<usize> {
        self.elems.binary_search(e).ok()
    }
}

/// A finite-dimensional rational vector space with labelled basis.
///
/// Basis order is structural (Kronecker order for tensor products), not
/// sorted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VectObj {
    basis: Vec<Elem>,
}

impl VectObj {
    pub fn new(basis: Vec<Elem>) -> Result<Self> {
        for i in 0..basis.len() {
            for j in (i + 1)..basis.len() {
                if basis[i] == basis[j] {
                    return Err(Error::Malformed(format!("duplicate basis label {}", basis[i])));
                }
            }
            if basis[i].len() != basis[0].len() {
                return Err(Error::Malformed("mixed basis tuple lengths".into()));
            }
        }
        Ok(VectObj { basis })
    }

    pub fn from_atoms<I: IntoIterator<Item = S>, S: Into<String>>(atoms: I) -> Self {
        VectObj::new(atoms.into_iter().map(|a| Elem::atom(a)).collect())
            .expect("basis labels must be distinct")
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Elem] {
        &self.basis
    }

    pub fn index_of(&self, e: &Elem) -> Option<usize> {
        self.basis.iter().position(|b| b == e)
    }
}

/// An object of one of the two backends.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Obj {
    Fin(FinSetObj),
    Vect(VectObj),
}

impl Obj {
    pub fn tag(&self) -> Tag {
        match self {
            Obj::Fin(_) => Tag::FinSet,
            Obj::Vect(_) => Tag::VectQ,
        }
    }

    /// The monoidal unit: singleton set / one-dimensional space, with the
    /// empty tuple as its only label.
    pub fn unit(tag: Tag) -> Obj {
        match tag {
            Tag::FinSet => Obj::Fin(FinSetObj { elems: vec![Elem::empty()] }),
            Tag::VectQ => Obj::Vect(VectObj { basis: vec![Elem::empty()] }),
        }
    }

    /// The initial object: empty set / zero space.
    pub fn zero(tag: Tag) -> Obj {
        match tag {
            Tag::FinSet => Obj::Fin(FinSetObj { elems: vec![] }),
            Tag::VectQ => Obj::Vect(VectObj { basis: vec![] }),
        }
    }

    /// Number of elements (FinSet) or dimension (VectQ).
    pub fn size(&self) -> usize {
        match self {
            Obj::Fin(x) => x.len(),
            Obj::Vect(x) => x.dim(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.size() == 0
    }

    /// Element labels (FinSet) or basis labels (VectQ), in canonical order.
    pub fn elems(&self) -> &[Elem] {
        match self {
            Obj::Fin(x) => x.elems(),
            Obj::Vect(x) => x.basis(),
        }
    }

    pub fn index_of(&self, e: &Elem) -> Option<usize> {
        match self {
            Obj::Fin(x) => x.index_of(e),
            Obj::Vect(x) => x.index_of(e),
        }
    }

    /// Tuple length of this object's labels; `None` for the empty object.
    pub fn elem_len(&self) -> Option<usize> {
        self.elems().first().map(|e| e.len())
    }

    fn check_same_tag(&self, other: &Obj) -> Result<()> {
        if self.tag() != other.tag() {
            return Err(Error::TagMismatch(format!("{} vs {}", self.tag(), other.tag())));
        }
        Ok(())
    }

    /// Monoidal product. FinSet: cartesian product with concatenated tuple
    /// labels in lexicographic (x-major) order. VectQ: Kronecker (x-major)
    /// basis. Strictly associative and unital.
    pub fn tensor(&self, other: &Obj) -> Result<Obj> {
        self.check_same_tag(other)?;
        match (self, other) {
            (Obj::Fin(x), Obj::Fin(y)) => {
                let mut elems = Vec::with_capacity(x.len() * y.len());
                for a in x.elems() {
                    for b in y.elems() {
                        elems.push(a.concat(b));
                    }
                }
                Ok(Obj::Fin(FinSetObj::new(elems)?))
            }
            (Obj::Vect(x), Obj::Vect(y)) => {
                let mut basis = Vec::with_capacity(x.dim() * y.dim());
                for a in x.basis() {
                    for b in y.basis() {
                        basis.push(a.concat(b));
                    }
                }
                Ok(Obj::Vect(VectObj::new(basis)?))
            }
            _ => unreachable!(),
        }
    }

    /// Left-nested n-fold tensor; the empty family gives the unit.
    pub fn tensor_many(tag: Tag, objs: &[&Obj]) -> Result<Obj> {
        let mut acc = Obj::unit(tag);
        for o in objs {
            acc = acc.tensor(o)?;
        }
        Ok(acc)
    }

    /// Split an element of `⊗ factors` into its factor components.
    ///
    /// Requires every factor to be nonempty (otherwise there is no element to
    /// split) and homogeneous, which objects guarantee by construction.
    pub fn split_elem(factors: &[&Obj], e: &Elem) -> Vec<Elem> {
        let mut out = Vec::with_capacity(factors.len());
        let mut pos = 0;
        for f in factors {
            let l = f.elem_len().expect("cannot split over an empty factor");
            out.push(Elem(e.0[pos..pos + l].to_vec()));
            pos += l;
        }
        debug_assert_eq!(pos, e.len());
        out
    }

    /// Internal hom object.
    ///
    /// FinSet: the set of all functions, labelled by their graphs.
    /// VectQ: the matrix space of dimension `x.dim · y.dim` with row-major
    /// basis labels (target index outer, source index inner).
    pub fn hom(&self, other: &Obj) -> Result<Obj> {
        self.check_same_tag(other)?;
        match (self, other) {
            (Obj::Fin(x), Obj::Fin(y)) => {
                // all functions x -> y, as graphs
                let n = x.len();
                if n == 0 {
                    // exactly one function out of the empty set
                    return Ok(Obj::Fin(FinSetObj::new(vec![Elem::atom("{}")])?));
                }
                if y.is_empty() {
                    return Ok(Obj::zero(Tag::FinSet));
                }
                let mut graphs = Vec::new();
                let mut choice = vec![0usize; n];
                loop {
                    let body: Vec<String> = (0..n)
                        .map(|i| format!("{}>{}", x.elems()[i], y.elems()[choice[i]]))
                        .collect();
                    graphs.push(Elem::atom(format!("{{{}}}", body.join(";"))));
                    // odometer over y^n
                    let mut k = n;
                    loop {
                        if k == 0 {
                            return Ok(Obj::Fin(FinSetObj::new(graphs)?));
                        }
                        k -= 1;
                        choice[k] += 1;
                        if choice[k] < y.len() {
                            break;
                        }
                        choice[k] = 0;
                    }
                }
            }
            (Obj::Vect(x), Obj::Vect(y)) => {
                let mut basis = Vec::with_capacity(x.dim() * y.dim());
                for b in y.basis() {
                    for a in x.basis() {
                        basis.push(Elem::atom(format!("[{}>{}]", a, b)));
                    }
                }
                Ok(Obj::Vect(VectObj::new(basis)?))
            }
            _ => unreachable!(),
        }
    }
}

/// A morphism of one of the two backends.
#[derive(Debug, Clone, PartialEq)]
pub enum Map {
    Fin(FinSetMap),
    Lin(LinMap),
}

/// A function between finite sets, stored as an index table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinSetMap {
    pub source: FinSetObj,
    pub target: FinSetObj,
    /// `table[i]` = target index of the image of source element `i`.
    pub table: Vec<usize>,
}

/// An exact-rational linear map, stored as a `target.dim × source.dim` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct LinMap {
    pub source: VectObj,
    pub target: VectObj,
    pub matrix: Vec<Vec<BigRational>>,
}

impl Map {
    pub fn tag(&self) -> Tag {
        match self {
            Map::Fin(_) => Tag::FinSet,
            Map::Lin(_) => Tag::VectQ,
        }
    }

    pub fn source(&self) -> Obj {
        match self {
            Map::Fin(f) => Obj::Fin(f.source.clone()),
            Map::Lin(f) => Obj::Vect(f.source.clone()),
        }
    }

    pub fn target(&self) -> Obj {
        match self {
            Map::Fin(f) => Obj::Fin(f.target.clone()),
            Map::Lin(f) => Obj::Vect(f.target.clone()),
        }
    }

    pub fn identity(obj: &Obj) -> Map {
        match obj {
            Obj::Fin(x) => Map::Fin(FinSetMap {
                source: x.clone(),
                target: x.clone(),
                table: (0..x.len()).collect(),
            }),
            Obj::Vect(x) => {
                let n = x.dim();
                let mut m = vec![vec![BigRational::zero(); n]; n];
                for (i, row) in m.iter_mut().enumerate() {
                    row[i] = BigRational::one();
                }
                Map::Lin(LinMap { source: x.clone(), target: x.clone(), matrix: m })
            }
        }
    }

    /// Elementwise construction: FinSet maps from a label function, VectQ
    /// maps from basis-label images (a permutation-like map).
    pub fn from_fn(source: &Obj, target: &Obj, mut f: impl FnMut(&Elem) -> Elem) -> Result<Map> {
        source.check_same_tag(target)?;
        match (source, target) {
            (Obj::Fin(x), Obj::Fin(y)) => {
                let mut table = Vec::with_capacity(x.len());
                for e in x.elems() {
                    let img = f(e);
                    let j = y
                        .index_of(&img)
                        .ok_or_else(|| Error::Malformed(format!("image {img} not in target")))?;
                    table.push(j);
                }
                Ok(Map::Fin(FinSetMap { source: x.clone(), target: y.clone(), table }))
            }
            (Obj::Vect(x), Obj::Vect(y)) => {
                let mut matrix = vec![vec![BigRational::zero(); x.dim()]; y.dim()];
                for (j, e) in x.basis().iter().enumerate() {
                    let img = f(e);
                    let i = y
                        .index_of(&img)
                        .ok_or_else(|| Error::Malformed(format!("image {img} not in target basis")))?;
                    matrix[i][j] = BigRational::one();
                }
                Ok(Map::Lin(LinMap { source: x.clone(), target: y.clone(), matrix }))
            }
            _ => unreachable!(),
        }
    }

    /// VectQ map from an explicit matrix.
    pub fn from_matrix(source: &VectObj, target: &VectObj, matrix: Vec<Vec<BigRational>>) -> Result<Map> {
        if matrix.len() != target.dim() || matrix.iter().any(|r| r.len() != source.dim()) {
            return Err(Error::Malformed(format!(
                "matrix shape {}x{} does not match {}x{}",
                matrix.len(),
                matrix.first().map_or(0, |r| r.len()),
                target.dim(),
                source.dim()
            )));
        }
        Ok(Map::Lin(LinMap { source: source.clone(), target: target.clone(), matrix }))
    }

    /// Apply to a FinSet element.
    pub fn apply(&self, e: &Elem) -> Result<Elem> {
        match self {
            Map::Fin(f) => {
                let i = f
                    .source
                    .index_of(e)
                    .ok_or_else(|| Error::Malformed(format!("{e} not in source")))?;
                Ok(f.target.elems()[f.table[i]].clone())
            }
            Map::Lin(_) => Err(Error::TagMismatch("apply on a linear map".into())),
        }
    }

    /// Apply to a coordinate vector (VectQ).
    pub fn apply_vec(&self, v: &[BigRational]) -> Result<Vec<BigRational>> {
        match self {
            Map::Lin(f) => {
                if v.len() != f.source.dim() {
                    return Err(Error::SizeMismatch("vector length".into()));
                }
                Ok(f.matrix
                    .iter()
                    .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
                    .collect())
            }
            Map::Fin(_) => Err(Error::TagMismatch("apply_vec on a set map".into())),
        }
    }

    /// Composition `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Map) -> Result<Map> {
        match (self, other) {
            (Map::Fin(f), Map::Fin(g)) => {
                if g.target != f.source {
                    return Err(Error::Malformed("composition: objects do not match".into()));
                }
                Ok(Map::Fin(FinSetMap {
                    source: g.source.clone(),
                    target: f.target.clone(),
                    table: g.table.iter().map(|&i| f.table[i]).collect(),
                }))
            }
            (Map::Lin(f), Map::Lin(g)) => {
                if g.target != f.source {
                    return Err(Error::Malformed("composition: objects do not match".into()));
                }
                let rows = f.target.dim();
                let mid = f.source.dim();
                let cols = g.source.dim();
                let mut m = vec![vec![BigRational::zero(); cols]; rows];
                for i in 0..rows {
                    for (k, fik) in f.matrix[i].iter().enumerate().take(mid) {
                        if fik.is_zero() {
                            continue;
                        }
                        for j in 0..cols {
                            let t = fik * &g.matrix[k][j];
                            m[i][j] += t;
                        }
                    }
                }
                Ok(Map::Lin(LinMap { source: g.source.clone(), target: f.target.clone(), matrix: m }))
            }
            _ => Err(Error::TagMismatch("composing maps of different backends".into())),
        }
    }

    /// Tensor product of maps.
    pub fn tensor(&self, other: &Map) -> Result<Map> {
        match (self, other) {
            (Map::Fin(f), Map::Fin(g)) => {
                let source = Obj::Fin(f.source.clone()).tensor(&Obj::Fin(g.source.clone()))?;
                let target = Obj::Fin(f.target.clone()).tensor(&Obj::Fin(g.target.clone()))?;
                let fs = Obj::Fin(f.source.clone());
                let gs = Obj::Fin(g.source.clone());
                Map::from_fn(&source, &target, |e| {
                    let parts = Obj::split_elem(&[&fs, &gs], e);
                    let a = self.apply(&parts[0]).unwrap();
                    let b = other.apply(&parts[1]).unwrap();
                    a.concat(&b)
                })
            }
            (Map::Lin(f), Map::Lin(g)) => {
                let source = VectObj::new(
                    Obj::Vect(f.source.clone()).tensor(&Obj::Vect(g.source.clone()))?.elems().to_vec(),
                )?;
                let target = VectObj::new(
                    Obj::Vect(f.target.clone()).tensor(&Obj::Vect(g.target.clone()))?.elems().to_vec(),
                )?;
                // Kronecker product
                let (rf, cf) = (f.target.dim(), f.source.dim());
                let (rg, cg) = (g.target.dim(), g.source.dim());
                let mut m = vec![vec![BigRational::zero(); cf * cg]; rf * rg];
                for i in 0..rf {
                    for j in 0..cf {
                        if f.matrix[i][j].is_zero() {
                            continue;
                        }
                        for k in 0..rg {
                            for l in 0..cg {
                                if g.matrix[k][l].is_zero() {
                                    continue;
                                }
                                m[i * rg + k][j * cg + l] = &f.matrix[i][j] * &g.matrix[k][l];
                            }
                        }
                    }
                }
                Ok(Map::Lin(LinMap { source, target, matrix: m }))
            }
            _ => Err(Error::TagMismatch("tensoring maps of different backends".into())),
        }
    }

    /// Left-nested tensor of many maps; empty family gives the unit identity.
    pub fn tensor_many(tag: Tag, maps: &[&Map]) -> Result<Map> {
        let mut acc = Map::identity(&Obj::unit(tag));
        for m in maps {
            acc = acc.tensor(m)?;
        }
        Ok(acc)
    }

    /// The unique map to the monoidal unit (FinSet) — the augmentation.
    pub fn to_unit(obj: &Obj) -> Result<Map> {
        match obj {
            Obj::Fin(_) => Map::from_fn(obj, &Obj::unit(Tag::FinSet), |_| Elem::empty()),
            Obj::Vect(x) => {
                // sum of coordinates: the augmentation sending every basis
                // vector to 1
                let m = vec![vec![BigRational::one(); x.dim()]];
                Map::from_matrix(x, &vect_of(&Obj::unit(Tag::VectQ)), m)
            }
        }
    }
}

#[allow(dead_code)]
pub(crate) fn fin_of(o: &Obj) -> FinSetObj {
    match o {
        Obj::Fin(x) => x.clone(),
        _ => panic!("expected a FinSet object"),
    }
}

pub(crate) fn vect_of(o: &Obj) -> VectObj {
    match o {
        Obj::Vect(x) => x.clone(),
        _ => panic!("expected a VectQ object"),
    }
}

/// The map `⊗ᵢ factors[i] → ⊗ⱼ factors[pos[j]]` that sends the tuple
/// `(t₀,…,tₙ₋₁)` to `(t_{pos[0]},…,t_{pos[n-1]})`. `pos` must be a
/// permutation of `0..n`.
pub fn factor_perm_tagged(tag: Tag, factors: &[&Obj], pos: &[usize]) -> Result<Map> {
    if factors.is_empty() {
        return Ok(Map::identity(&Obj::unit(tag)));
    }
    let source = Obj::tensor_many(tag, factors)?;
    let permuted: Vec<&Obj> = pos.iter().map(|&i| factors[i]).collect();
    let target = Obj::tensor_many(tag, &permuted)?;
    if source.is_zero() {
        return empty_map(&source, &target);
    }
    Map::from_fn(&source, &target, |e| {
        let parts = Obj::split_elem(factors, e);
        let mut out = Elem::empty();
        for &i in pos {
            out = out.concat(&parts[i]);
        }
        out
    })
}

/// [`factor_perm_tagged`] for a nonempty family, inferring the tag.
pub fn factor_perm(factors: &[&Obj], pos: &[usize]) -> Result<Map> {
    let tag = factors.first().map_or(Tag::FinSet, |o| o.tag());
    factor_perm_tagged(tag, factors, pos)
}

/// The zero/empty map out of an empty object (or into anything, for VectQ).
pub fn empty_map(source: &Obj, target: &Obj) -> Result<Map> {
    source.check_same_tag(target)?;
    match (source, target) {
        (Obj::Fin(x), Obj::Fin(y)) => {
            if !x.is_empty() {
                return Err(Error::Malformed("empty_map requires an empty source in FinSet".into()));
            }
            Ok(Map::Fin(FinSetMap { source: x.clone(), target: y.clone(), table: vec![] }))
        }
        (Obj::Vect(x), Obj::Vect(y)) => {
            let m = vec![vec![BigRational::zero(); x.dim()]; y.dim()];
            Ok(Map::Lin(LinMap { source: x.clone(), target: y.clone(), matrix: m }))
        }
        _ => unreachable!(),
    }
}

/// The symmetry `x ⊗ y → y ⊗ x`.
pub fn braiding(x: &Obj, y: &Obj) -> Result<Map> {
    x.check_same_tag(y)?;
    factor_perm(&[x, y], &[1, 0])
}

/// Evaluation `hom(x,y) ⊗ x → y`.
pub fn eval_map(x: &Obj, y: &Obj) -> Result<Map> {
    let h = x.hom(y)?;
    let source = h.tensor(x)?;
    match (&h, x, y) {
        (Obj::Fin(_), Obj::Fin(_), Obj::Fin(_)) => {
            if source.is_zero() {
                return empty_map(&source, y);
            }
            // tabulate every graph label against the function it denotes; the
            // hom constructor and `curry` both render graphs in canonical
            // source order, so re-rendering here is exact
            let mut graph_fn: BTreeMap<Elem, BTreeMap<Elem, Elem>> = BTreeMap::new();
            let n = x.size();
            let mut choice = vec![0usize; n.max(1)];
            'outer: loop {
                let body: Vec<String> = (0..n)
                    .map(|i| format!("{}>{}", x.elems()[i], y.elems()[choice[i]]))
                    .collect();
                let graph = Elem::atom(format!("{{{}}}", body.join(";")));
                let f: BTreeMap<Elem, Elem> = (0..n)
                    .map(|i| (x.elems()[i].clone(), y.elems()[choice[i]].clone()))
                    .collect();
                graph_fn.insert(graph, f);
                if n == 0 {
                    break;
                }
                let mut k = n;
                loop {
                    if k == 0 {
                        break 'outer;
                    }
                    k -= 1;
                    choice[k] += 1;
                    if choice[k] < y.size() {
                        break;
                    }
                    choice[k] = 0;
                }
            }
            let hx = x.clone();
            Map::from_fn(&source, y, move |e| {
                let parts = Obj::split_elem(&[&h, &hx], e);
                graph_fn[&parts[0]][&parts[1]].clone()
            })
        }
        (Obj::Vect(_), Obj::Vect(_), Obj::Vect(yv)) => {
            // basis: hom basis (i,j) = E_ij ; eval(E_ij ⊗ e_k) = δ_{jk} e_i
            let xd = x.size();
            let yd = yv.dim();
            let mut matrix = vec![vec![BigRational::zero(); xd * yd * xd]; yd];
            for i in 0..yd {
                for j in 0..xd {
                    let hidx = i * xd + j;
                    let col = hidx * xd + j;
                    matrix[i][col] = BigRational::one();
                }
            }
            Map::from_matrix(&vect_of(&source), yv, matrix)
        }
        _ => unreachable!(),
    }
}

/// Currying: given `f : z ⊗ x → y` (with the splitting `(z, x)` supplied),
/// produce `z → hom(x,y)`.
pub fn curry(z: &Obj, x: &Obj, y: &Obj, f: &Map) -> Result<Map> {
    let h = x.hom(y)?;
    match (z, x, y) {
        (Obj::Fin(_), Obj::Fin(_), Obj::Fin(_)) => {
            if z.is_zero() {
                return empty_map(z, &h);
            }
            if x.is_zero() {
                // one function out of the empty set
                return Map::from_fn(z, &h, |_| h.elems()[0].clone());
            }
            Map::from_fn(z, &h, |ze| {
                let body: Vec<String> = x
                    .elems()
                    .iter()
                    .map(|xe| {
                        let img = f.apply(&ze.concat(xe)).unwrap();
                        format!("{}>{}", xe, img)
                    })
                    .collect();
                Elem::atom(format!("{{{}}}", body.join(";")))
            })
        }
        (Obj::Vect(zv), Obj::Vect(xv), Obj::Vect(yv)) => {
            let (zd, xd, yd) = (zv.dim(), xv.dim(), yv.dim());
            let fm = match f {
                Map::Lin(l) => l,
                _ => return Err(Error::TagMismatch("curry".into())),
            };
            // f matrix: yd × (zd·xd); column of (k,j) at k*xd+j.
            // result: (yd·xd) × zd with hom row index i*xd+j.
            let mut m = vec![vec![BigRational::zero(); zd]; yd * xd];
            for i in 0..yd {
                for j in 0..xd {
                    for k in 0..zd {
                        m[i * xd + j][k] = fm.matrix[i][k * xd + j].clone();
                    }
                }
            }
            Map::from_matrix(zv, &vect_of(&h), m)
        }
        _ => Err(Error::TagMismatch("curry over mixed backends".into())),
    }
}

/// The canonical map `hom(x,y) ⊗ hom(x',y') → hom(x⊗x', y⊗y')`.
pub fn hom_tensor(x: &Obj, y: &Obj, x2: &Obj, y2: &Obj) -> Result<Map> {
    let tag = x.tag();
    let h1 = x.hom(y)?;
    let h2 = x2.hom(y2)?;
    let src = h1.tensor(&h2)?;
    let xx = x.tensor(x2)?;
    let yy = y.tensor(y2)?;
    // evaluate (f,g) on x⊗x' via the two evals, then re-curry
    let ev1 = eval_map(x, y)?;
    let ev2 = eval_map(x2, y2)?;
    // h1 ⊗ h2 ⊗ x ⊗ x' → h1 ⊗ x ⊗ h2 ⊗ x' → y ⊗ y'
    let swap = factor_perm(&[&h1, &h2, x, x2], &[0, 2, 1, 3])?;
    let big = ev1.tensor(&ev2)?.compose(&swap)?;
    if tag == Tag::FinSet && src.is_zero() {
        return empty_map(&src, &xx.hom(&yy)?);
    }
    curry(&src, &xx, &yy, &big)
}

/// Exact reduced row echelon form, in place. Returns pivot columns.
pub fn rref(m: &mut Vec<Vec<BigRational>>) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return vec![];
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r >= rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].clone();
        for v in m[r].iter_mut() {
            *v /= inv.clone();
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// A relation to quotient by: element pairs (FinSet) or vectors to kill
/// (VectQ).
#[derive(Debug, Clone)]
pub enum Relation {
    Pairs(Vec<(Elem, Elem)>),
    Vectors(Vec<Vec<BigRational>>),
}

/// Quotient an object by a relation; returns the quotient object and the
/// surjective projection.
///
/// FinSet: union-find; class representatives are the least label.
/// VectQ: quotient by the span of the given vectors, by exact row reduction;
/// the quotient basis keeps the labels of the non-pivot coordinates.
pub fn quotient_by_relation(obj: &Obj, rel: &Relation) -> Result<(Obj, Map)> {
    match (obj, rel) {
        (Obj::Fin(x), Relation::Pairs(pairs)) => {
            let n = x.len();
            let mut uf = UnionFind::new(n);
            for (a, b) in pairs {
                let ia = x
                    .index_of(a)
                    .ok_or_else(|| Error::BadRelation(format!("unknown label {a}")))?;
                let ib = x
                    .index_of(b)
                    .ok_or_else(|| Error::BadRelation(format!("unknown label {b}")))?;
                uf.union(ia, ib);
            }
            // least label per class = least index, since elems are sorted
            let mut rep_of_class: BTreeMap<usize, Elem> = BTreeMap::new();
            for i in 0..n {
                let root = uf.find(i);
                rep_of_class.entry(root).or_insert_with(|| x.elems()[i].clone());
            }
            let reps: Vec<Elem> = rep_of_class.values().cloned().collect();
            let q = Obj::Fin(FinSetObj::new(reps)?);
            let proj = Map::from_fn(obj, &q, |e| {
                let i = x.index_of(e).unwrap();
                rep_of_class[&uf.find(i)].clone()
            })?;
            Ok((q, proj))
        }
        (Obj::Vect(x), Relation::Vectors(vecs)) => {
            let d = x.dim();
            for v in vecs {
                if v.len() != d {
                    return Err(Error::BadRelation(format!(
                        "vector of length {} in a space of dimension {}",
                        v.len(),
                        d
                    )));
                }
            }
            let mut m: Vec<Vec<BigRational>> = vecs.clone();
            let pivots = rref(&mut m);
            let pivot_set: Vec<bool> = {
                let mut s = vec![false; d];
                for &p in &pivots {
                    s[p] = true;
                }
                s
            };
            let free: Vec<usize> = (0..d).filter(|&j| !pivot_set[j]).collect();
            let basis: Vec<Elem> = free.iter().map(|&j| x.basis()[j].clone()).collect();
            let q = VectObj::new(basis)?;
            // projection: e_j ↦ its class. pivot e_{p_k} ≡ -Σ_{free j} m[k][j] e_j
            let mut proj = vec![vec![BigRational::zero(); d]; free.len()];
            for (qi, &j) in free.iter().enumerate() {
                proj[qi][j] = BigRational::one();
            }
            for (k, &p) in pivots.iter().enumerate() {
                for (qi, &j) in free.iter().enumerate() {
                    proj[qi][p] = -m[k][j].clone();
                }
            }
            let pm = Map::from_matrix(x, &q, proj)?;
            Ok((Obj::Vect(q), pm))
        }
        _ => Err(Error::BadRelation("relation kind does not match object backend".into())),
    }
}

/// Plain union-find.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    /// Union keeping the smaller index as root (so least-label wins ties
    /// when indices are assigned in label order).
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

/// Parse a rational from a `"p/q"` or integer string.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let mk = |s: &str| {
        s.parse::<num::BigInt>()
            .map_err(|_| Error::Malformed(format!("bad rational component {s:?}")))
    };
    if let Some((p, q)) = s.split_once('/') {
        let den = mk(q)?;
        if den.is_zero() {
            return Err(Error::Malformed("zero denominator".into()));
        }
        Ok(BigRational::new(mk(p)?, den))
    } else {
        Ok(BigRational::from_integer(mk(s)?))
    }
}

/// Render a rational as `"p/q"` (or `"p"` when the denominator is one).
pub fn render_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fs(atoms: &[&str]) -> Obj {
        Obj::Fin(FinSetObj::from_atoms(atoms.iter().copied()))
    }

    fn vq(atoms: &[&str]) -> Obj {
        Obj::Vect(VectObj::from_atoms(atoms.iter().copied()))
    }

    #[test]
    fn tensor_is_cartesian_product() {
        let x = fs(&["a", "b"]);
        let y = fs(&["0", "1"]);
        let t = x.tensor(&y).unwrap();
        let labels: Vec<String> = t.elems().iter().map(|e| e.to_string()).collect();
        assert_eq!(labels, vec!["(a,0)", "(a,1)", "(b,0)", "(b,1)"]);
    }

    #[test]
    fn tensor_strictly_associative_and_unital() {
        let x = fs(&["a", "b"]);
        let y = fs(&["0", "1"]);
        let z = fs(&["u", "v", "w"]);
        let left = x.tensor(&y).unwrap().tensor(&z).unwrap();
        let right = x.tensor(&y.tensor(&z).unwrap()).unwrap();
        assert_eq!(left, right);
        let unit = Obj::unit(Tag::FinSet);
        assert_eq!(unit.tensor(&x).unwrap(), x);
        assert_eq!(x.tensor(&unit).unwrap(), x);
        // VectQ
        let a = vq(&["e0", "e1"]);
        let b = vq(&["f0", "f1", "f2"]);
        assert_eq!(a.tensor(&b).unwrap().size(), 6);
        let u = Obj::unit(Tag::VectQ);
        assert_eq!(u.tensor(&a).unwrap(), a);
    }

    #[test]
    fn braiding_is_involutive_and_hexagonal() {
        for (x, y, z) in [
            (fs(&["a", "b"]), fs(&["0"]), fs(&["u", "v", "w"])),
            (vq(&["a", "b"]), vq(&["0", "1"]), vq(&["u"])),
        ] {
            let b_xy = braiding(&x, &y).unwrap();
            let b_yx = braiding(&y, &x).unwrap();
            let id = Map::identity(&x.tensor(&y).unwrap());
            assert_eq!(b_yx.compose(&b_xy).unwrap(), id);
            // hexagon (strict associators): β_{x⊗y,z} = (β_{x,z}⊗id_y)∘(id_x⊗β_{y,z})
            let lhs = factor_perm(&[&x, &y, &z], &[2, 0, 1]).unwrap();
            let step1 = Map::identity(&x).tensor(&braiding(&y, &z).unwrap()).unwrap();
            let step2 = braiding(&x, &z).unwrap().tensor(&Map::identity(&y)).unwrap();
            assert_eq!(step2.compose(&step1).unwrap(), lhs);
        }
    }

    #[test]
    fn braiding_unit_is_identity() {
        let x = fs(&["a", "b"]);
        let u = Obj::unit(Tag::FinSet);
        assert_eq!(braiding(&u, &x).unwrap(), Map::identity(&x));
    }

    #[test]
    fn braiding_pair_example() {
        let x = fs(&["a", "b"]);
        let y = fs(&["0", "1"]);
        let b = braiding(&x, &y).unwrap();
        let img = b.apply(&Elem(vec!["a".into(), "1".into()])).unwrap();
        assert_eq!(img.to_string(), "(1,a)");
    }

    #[test]
    fn vect_braiding_matrix_on_dim2() {
        // dim 2 ⊗ dim 2: swaps basis indices 1 and 2 (0-based).
        // Kronecker index (i,j) ↦ (j,i): 0↦0, 1↦2, 2↦1, 3↦3.
        let a = vq(&["e0", "e1"]);
        let b = braiding(&a, &a).unwrap();
        let Map::Lin(l) = b else { panic!() };
        let one = BigRational::one();
        let zero = BigRational::zero();
        let expect = vec![
            vec![one.clone(), zero.clone(), zero.clone(), zero.clone()],
            vec![zero.clone(), zero.clone(), one.clone(), zero.clone()],
            vec![zero.clone(), one.clone(), zero.clone(), zero.clone()],
            vec![zero.clone(), zero.clone(), zero.clone(), one.clone()],
        ];
        assert_eq!(l.matrix, expect);
    }

    #[test]
    fn hom_counts() {
        let x = fs(&["a", "b"]);
        let y = fs(&["0", "1"]);
        assert_eq!(x.hom(&y).unwrap().size(), 4);
        let u = Obj::unit(Tag::FinSet);
        assert_eq!(u.hom(&y).unwrap().size(), 2);
        assert_eq!(vq(&["a", "b", "c"]).hom(&vq(&["x", "y"])).unwrap().size(), 6);
    }

    #[test]
    fn eval_and_curry_roundtrip_finset() {
        let x = fs(&["a", "b"]);
        let y = fs(&["0", "1", "2"]);
        let z = fs(&["p", "q"]);
        // f : z ⊗ x → y, f(p,a)=0 f(p,b)=1 f(q,a)=2 f(q,b)=0
        let zx = z.tensor(&x).unwrap();
        let f = Map::from_fn(&zx, &y, |e| {
            let s = e.to_string();
            Elem::atom(match s.as_str() {
                "(p,a)" => "0",
                "(p,b)" => "1",
                "(q,a)" => "2",
                _ => "0",
            })
        })
        .unwrap();
        let g = curry(&z, &x, &y, &f).unwrap();
        let ev = eval_map(&x, &y).unwrap();
        // eval ∘ (g ⊗ id_x) = f
        let gx = g.tensor(&Map::identity(&x)).unwrap();
        assert_eq!(ev.compose(&gx).unwrap(), f);
    }

    #[test]
    fn eval_and_curry_roundtrip_vectq() {
        let x = vq(&["x0", "x1"]);
        let y = vq(&["y0", "y1"]);
        let z = vq(&["z0"]);
        let zx = vect_of(&z.tensor(&x).unwrap());
        // f(z0 ⊗ x0) = y0 + 2 y1 ; f(z0 ⊗ x1) = 3 y0
        let q = |n: i64| BigRational::from_integer(n.into());
        let f = Map::from_matrix(&zx, &vect_of(&y), vec![vec![q(1), q(3)], vec![q(2), q(0)]]).unwrap();
        let g = curry(&z, &x, &y, &f).unwrap();
        let ev = eval_map(&x, &y).unwrap();
        let gx = g.tensor(&Map::identity(&x)).unwrap();
        assert_eq!(ev.compose(&gx).unwrap(), f);
    }

    #[test]
    fn quotient_finset() {
        let x = fs(&["a", "b", "c"]);
        let (q, proj) = quotient_by_relation(
            &x,
            &Relation::Pairs(vec![(Elem::atom("a"), Elem::atom("b"))]),
        )
        .unwrap();
        assert_eq!(q.size(), 2);
        assert_eq!(proj.apply(&Elem::atom("b")).unwrap(), Elem::atom("a"));
        assert_eq!(proj.apply(&Elem::atom("c")).unwrap(), Elem::atom("c"));
        // idempotent: quotienting the quotient by the (now collapsed) pair
        let (q2, _) = quotient_by_relation(
            &q,
            &Relation::Pairs(vec![(Elem::atom("a"), Elem::atom("a"))]),
        )
        .unwrap();
        assert_eq!(q2, q);
        // empty relation: identity projection
        let (q3, p3) = quotient_by_relation(&x, &Relation::Pairs(vec![])).unwrap();
        assert_eq!(q3, x);
        assert_eq!(p3, Map::identity(&x));
    }

    #[test]
    fn quotient_vectq_rank() {
        let x = vq(&["e0", "e1", "e2"]);
        let q = |n: i64| BigRational::from_integer(n.into());
        let (obj, proj) = quotient_by_relation(
            &x,
            &Relation::Vectors(vec![
                vec![q(1), q(-1), q(0)],
                vec![q(0), q(1), q(-1)],
            ]),
        )
        .unwrap();
        assert_eq!(obj.size(), 1);
        // all three basis vectors map to the same class
        let cols: Vec<Vec<BigRational>> = (0..3)
            .map(|j| {
                let mut v = vec![BigRational::zero(); 3];
                v[j] = BigRational::one();
                proj.apply_vec(&v).unwrap()
            })
            .collect();
        assert_eq!(cols[0], cols[1]);
        assert_eq!(cols[1], cols[2]);
    }

    #[test]
    fn rational_roundtrip() {
        for s in ["3/4", "-7/2", "5", "0", "-12"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(parse_rational(&render_rational(&r)).unwrap(), r);
        }
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn hom_tensor_compatible_with_eval() {
        let x = fs(&["a", "b"]);
        let y = fs(&["0", "1"]);
        let ht = hom_tensor(&x, &y, &x, &y).unwrap();
        let h = x.hom(&y).unwrap();
        // pick f = const 0, g = identity-ish (a↦0,b↦1); check (f⊗g) evaluates pointwise
        let f = h.elems()[0].clone(); // {a>0;b>0}
        assert_eq!(f.to_string(), "{a>0;b>0}");
        let g = Elem::atom("{a>0;b>1}");
        let fg = ht.apply(&f.concat(&g)).unwrap();
        let ev = eval_map(&x.tensor(&x).unwrap(), &y.tensor(&y).unwrap()).unwrap();
        let arg = Elem(vec!["b".into(), "b".into()]);
        let out = ev.apply(&fg.concat(&arg)).unwrap();
        assert_eq!(out.to_string(), "(0,1)");
    }
}
