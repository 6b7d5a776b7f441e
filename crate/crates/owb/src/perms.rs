//! Symmetric groups, colour profiles, and the block permutation formulas
//! used by operadic composition.

use crate::enrich::Colour;
use crate::{Error, Result};
use std::fmt;

/// A permutation of `{1..n}` in one-line notation: `image[i-1] = σ(i)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &v in &image {
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::Malformed(format!("not a bijection: {image:?}")));
            }
            seen[v - 1] = true;
        }
        Ok(Permutation { image })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { image: (1..=n).collect() }
    }

    /// The adjacent transposition `s_i` swapping `i` and `i+1` (1-based).
    pub fn adjacent(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i >= n {
            return Err(Error::BadIndex(format!("s_{i} in S_{n}")));
        }
        let mut image: Vec<usize> = (1..=n).collect();
        image.swap(i - 1, i);
        Ok(Permutation { image })
    }

    pub fn size(&self) -> usize {
        self.image.len()
    }

    /// `σ(i)`, 1-based.
    pub fn apply(&self, i: usize) -> usize {
        self.image[i - 1]
    }

    pub fn one_line(&self) -> &[usize] {
        &self.image
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(k, &v)| v == k + 1)
    }

    /// Composition `(σ ∘ μ)(i) = σ(μ(i))`.
    pub fn compose(&self, mu: &Permutation) -> Result<Permutation> {
        if self.size() != mu.size() {
            return Err(Error::SizeMismatch(format!("S_{} vs S_{}", self.size(), mu.size())));
        }
        Ok(Permutation { image: (1..=mu.size()).map(|i| self.apply(mu.apply(i))).collect() })
    }

    pub fn inverse(&self) -> Permutation {
        let mut image = vec![0; self.size()];
        for i in 1..=self.size() {
            image[self.apply(i) - 1] = i;
        }
        Permutation { image }
    }

    /// Factor into adjacent transpositions: `self = s_{i₁} ∘ … ∘ s_{i_k}`
    /// (group product, leftmost factor outermost).
    pub fn adjacent_factorisation(&self) -> Vec<usize> {
        // bubble sort the one-line form to the identity; each swap performed
        // corresponds to multiplying by an adjacent transposition on the right
        let mut img = self.image.clone();
        let n = img.len();
        let mut factors = Vec::new();
        loop {
            let mut swapped = false;
            for i in 0..n.saturating_sub(1) {
                if img[i] > img[i + 1] {
                    img.swap(i, i + 1);
                    factors.push(i + 1);
                    swapped = true;
                }
            }
            if !swapped {
                break;
            }
        }
        // self ∘ s_{f₁} ∘ … ∘ s_{f_k} = id, hence self = s_{f_k} ∘ … ∘ s_{f₁}
        factors.reverse();
        factors
    }

    /// All permutations of `S_n`, in lexicographic one-line order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (1..=n).collect();
        loop {
            out.push(Permutation { image: cur.clone() });
            if n < 2 {
                break;
            }
            let Some(i) = (0..n - 1).rev().find(|&i| cur[i] < cur[i + 1]) else { break };
            let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
            cur.swap(i, j);
            cur[i + 1..].reverse();
        }
        out
    }

    /// Block sum `σ ⊔ μ` acting on `{1..n+m}`.
    pub fn block_sum(&self, mu: &Permutation) -> Permutation {
        let n = self.size();
        let mut image = self.image.clone();
        image.extend(mu.image.iter().map(|&v| v + n));
        Permutation { image }
    }

    pub fn render(&self) -> String {
        format!("[{}]", self.image.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// Replace slot `i` of `σ ∈ S_n` by the block `μ ∈ S_m`, renumbering so the
/// result acts on `{1..n+m-1}`.
///
/// Positions `i..i+m-1` land in the block `σ(i)..σ(i)+m-1` via `μ`; every
/// other position `j` goes to `σ(j)`, shifted up by `m-1` when `σ(j) > σ(i)`.
pub fn block_insert(sigma: &Permutation, mu: &Permutation, i: usize) -> Result<Permutation> {
    let n = sigma.size();
    let m = mu.size();
    if i == 0 || i > n {
        return Err(Error::BadIndex(format!("slot {i} of S_{n}")));
    }
    let si = sigma.apply(i);
    let shift = |v: usize| if v > si { v + m - 1 } else { v };
    let mut image = Vec::with_capacity(n + m - 1);
    for j in 1..=(n + m - 1) {
        let v = if j < i {
            shift(sigma.apply(j))
        } else if j < i + m {
            si + mu.apply(j - i + 1) - 1
        } else {
            shift(sigma.apply(j - m + 1))
        };
        image.push(v);
    }
    Permutation::new(image)
}

/// The block-transposition permutation of `{1..n·m}` defined by
/// `σ(m·i + j + 1) = n·j + i + 1` for `0 ≤ i < n`, `0 ≤ j < m`.
pub fn interleave(n: usize, m: usize) -> Permutation {
    let mut image = vec![0; n * m];
    for i in 0..n {
        for j in 0..m {
            image[m * i + j] = n * j + i + 1;
        }
    }
    Permutation { image }
}

/// An input/output colour profile `(c₁,…,c_n ; c)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Profile {
    pub inputs: Vec<Colour>,
    pub output: Colour,
}

impl Profile {
    pub fn new(inputs: Vec<Colour>, output: Colour) -> Self {
        Profile { inputs, output }
    }

    pub fn linear(c: &Colour) -> Self {
        Profile { inputs: vec![c.clone()], output: c.clone() }
    }

    pub fn arity(&self) -> usize {
        self.inputs.len()
    }

    /// Splice `c̄ ◁ᵢ c̄′` (output colour unchanged).
    pub fn splice(&self, i: usize, inner: &[Colour]) -> Result<Vec<Colour>> {
        if i == 0 || i > self.arity() {
            return Err(Error::BadIndex(format!("slot {i} of arity {}", self.arity())));
        }
        let mut v = self.inputs[..i - 1].to_vec();
        v.extend(inner.iter().cloned());
        v.extend(self.inputs[i..].iter().cloned());
        Ok(v)
    }

    /// `c̄^σ = (c_{σ(1)},…,c_{σ(n)})` with the same output.
    pub fn act(&self, sigma: &Permutation) -> Result<Profile> {
        if sigma.size() != self.arity() {
            return Err(Error::SizeMismatch(format!(
                "permutation of size {} on arity {}",
                sigma.size(),
                self.arity()
            )));
        }
        Ok(Profile {
            inputs: (1..=self.arity()).map(|i| self.inputs[sigma.apply(i) - 1].clone()).collect(),
            output: self.output.clone(),
        })
    }

    pub fn render(&self) -> String {
        format!(
            "{}->{}",
            self.inputs.iter().map(|c| c.render()).collect::<Vec<_>>().join(","),
            self.output.render()
        )
    }

    pub fn parse(s: &str) -> Result<Profile> {
        let (ins, out) = s
            .split_once("->")
            .ok_or_else(|| Error::Malformed(format!("profile key {s:?} lacks '->'")))?;
        let inputs =
            if ins.is_empty() { vec![] } else { ins.split(',').map(Colour::parse).collect() };
        Ok(Profile { inputs, output: Colour::parse(out) })
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// Concatenation `c̄ ⊔ c̄′`.
pub fn concat_colours(a: &[Colour], b: &[Colour]) -> Vec<Colour> {
    let mut v = a.to_vec();
    v.extend(b.iter().cloned());
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    #[test]
    fn compose_examples() {
        let id = Permutation::identity(2);
        let tau = p(&[2, 1]);
        assert_eq!(id.compose(&tau).unwrap(), tau);
        assert_eq!(tau.compose(&tau).unwrap(), id);
        assert_eq!(p(&[2, 3, 1]).compose(&p(&[2, 1, 3])).unwrap(), p(&[3, 2, 1]));
    }

    #[test]
    fn factorisation_reconstructs() {
        for sigma in Permutation::all(4) {
            let mut acc = Permutation::identity(4);
            for i in sigma.adjacent_factorisation() {
                acc = acc.compose(&Permutation::adjacent(4, i).unwrap()).unwrap();
            }
            assert_eq!(acc, sigma);
        }
    }

    #[test]
    fn block_insert_examples() {
        assert_eq!(
            block_insert(&Permutation::identity(2), &Permutation::identity(2), 1).unwrap(),
            Permutation::identity(3)
        );
        // σ=[2,1], μ=id₁ at slot 1 → [2,1]
        assert_eq!(block_insert(&p(&[2, 1]), &Permutation::identity(1), 1).unwrap(), p(&[2, 1]));
        // σ=id₂, μ=[2,1] at slot 2 → [1,3,2]
        assert_eq!(block_insert(&Permutation::identity(2), &p(&[2, 1]), 2).unwrap(), p(&[1, 3, 2]));
    }

    #[test]
    fn block_insert_identity_preserving() {
        for n in 1..=3 {
            for m in 1..=3 {
                for i in 1..=n {
                    assert_eq!(
                        block_insert(&Permutation::identity(n), &Permutation::identity(m), i)
                            .unwrap(),
                        Permutation::identity(n + m - 1)
                    );
                }
            }
        }
    }

    #[test]
    fn block_insert_composition_identity() {
        // (σ∘α) ◁_{α⁻¹(i)} (μ∘β) = (σ ◁ᵢ μ) ∘ (α ◁_{α⁻¹(i)} β)
        for n in 1..=3usize {
            for m in 1..=2usize {
                for sigma in Permutation::all(n) {
                    for alpha in Permutation::all(n) {
                        for mu in Permutation::all(m) {
                            for beta in Permutation::all(m) {
                                for i in 1..=n {
                                    let j = alpha.inverse().apply(i);
                                    let lhs = block_insert(
                                        &sigma.compose(&alpha).unwrap(),
                                        &mu.compose(&beta).unwrap(),
                                        j,
                                    )
                                    .unwrap();
                                    let rhs = block_insert(&sigma, &mu, i)
                                        .unwrap()
                                        .compose(&block_insert(&alpha, &beta, j).unwrap())
                                        .unwrap();
                                    assert_eq!(lhs, rhs);
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn block_insert_disjoint_slots_commute() {
        for n in 2..=3usize {
            for sigma in Permutation::all(n) {
                for m in 1..=3usize {
                    for mu in Permutation::all(m) {
                        for l in 1..=2usize {
                            for nu in Permutation::all(l) {
                                for i in 1..=n {
                                    for k in (i + 1)..=n {
                                        let a = block_insert(&sigma, &mu, i).unwrap();
                                        let ab = block_insert(&a, &nu, k + m - 1).unwrap();
                                        let b = block_insert(&sigma, &nu, k).unwrap();
                                        let ba = block_insert(&b, &mu, i).unwrap();
                                        assert_eq!(ab, ba);
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn interleave_examples() {
        assert_eq!(interleave(1, 4), Permutation::identity(4));
        assert_eq!(interleave(4, 1), Permutation::identity(4));
        assert_eq!(interleave(2, 2), p(&[1, 3, 2, 4]));
    }

    #[test]
    fn interleave_inverse() {
        for n in 1..=4 {
            for m in 1..=4 {
                let a = interleave(n, m);
                let b = interleave(m, n);
                assert_eq!(a.compose(&b).unwrap(), Permutation::identity(n * m));
            }
        }
    }

    #[test]
    fn profile_ops() {
        let a = Colour::atom("a");
        let b = Colour::atom("b");
        let x = Colour::atom("x");
        let y = Colour::atom("y");
        let pr = Profile::new(vec![a.clone(), b.clone()], a.clone());
        // (a,b) ◁₁ (x,y) = (x,y,b)
        assert_eq!(pr.splice(1, &[x.clone(), y.clone()]).unwrap(), vec![x, y, b.clone()]);
        assert_eq!(concat_colours(&pr.inputs, &[]), pr.inputs);
        // act([2,1], (a,b)) = (b,a)
        assert_eq!(pr.act(&p(&[2, 1])).unwrap().inputs, vec![b, a]);
    }

    #[test]
    fn act_is_a_right_action() {
        let cols: Vec<Colour> = ["a", "b", "c"].iter().map(|s| Colour::atom(*s)).collect();
        let pr = Profile::new(cols.clone(), cols[0].clone());
        for sigma in Permutation::all(3) {
            for mu in Permutation::all(3) {
                let lhs = pr.act(&sigma).unwrap().act(&mu).unwrap();
                let rhs = pr.act(&sigma.compose(&mu).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn block_insert_profile_compatibility() {
        // (c̄ ◁ᵢ c̄′)^(α ◁_{α⁻¹(i)} β) = c̄^α ◁_{α⁻¹(i)} c̄′^β
        let cols: Vec<Colour> =
            ["a", "b", "c"].iter().map(|s| Colour::atom(*s)).collect();
        let outer = Profile::new(vec![cols[0].clone(), cols[1].clone(), cols[2].clone()], cols[0].clone());
        for i in 1..=3usize {
            let inner = Profile::new(vec![cols[2].clone(), cols[0].clone()], outer.inputs[i - 1].clone());
            let spliced = Profile::new(outer.splice(i, &inner.inputs).unwrap(), outer.output.clone());
            for alpha in Permutation::all(3) {
                for beta in Permutation::all(2) {
                    let j = alpha.inverse().apply(i);
                    let lhs = spliced.act(&block_insert(&alpha, &beta, j).unwrap()).unwrap();
                    let outer_a = outer.act(&alpha).unwrap();
                    let inner_b = inner.act(&beta).unwrap();
                    let rhs = Profile::new(
                        outer_a.splice(j, &inner_b.inputs).unwrap(),
                        outer.output.clone(),
                    );
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn profile_render_parse() {
        let pr = Profile::new(
            vec![Colour::atom("a"), Colour(vec!["b".into(), "c".into()])],
            Colour::atom("d"),
        );
        assert_eq!(pr.render(), "a,b|c->d");
        assert_eq!(Profile::parse(&pr.render()).unwrap(), pr);
        let nullary = Profile::new(vec![], Colour::atom("d"));
        assert_eq!(Profile::parse(&nullary.render()).unwrap(), nullary);
    }
}
