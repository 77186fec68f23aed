use super::chain::StabChain;
use super::perm::{factorial, Perm};
use crate::error::{Error, Result};

/// A permutation group with a complete stabilizer chain.
#[derive(Clone, Debug)]
pub struct GroupHandle {
    n: usize,
    gens: Vec<Perm>,
    chain: StabChain,
    order: u64,
}

impl GroupHandle {
    pub fn new(n: usize, gens: Vec<Perm>) -> Result<Self> {
        if let Some(g) = gens.iter().find(|g| g.degree() != n) {
            return Err(Error::InvalidSpec(format!("generator {g} is not on {n} points")));
        }
        let gens: Vec<Perm> = gens.into_iter().filter(|g| !g.is_identity()).collect();
        let (chain, _) = StabChain::build(n, &gens, None);
        let order = chain.order();
        Ok(GroupHandle { n, gens, chain, order })
    }

    pub fn trivial(n: usize) -> Self {
        GroupHandle { n, gens: Vec::new(), chain: StabChain::trivial(n), order: 1 }
    }

    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Perm::from_cycles(n, &[&[0, 1]]).expect("transposition"));
        }
        if n >= 3 {
            let c: Vec<usize> = (0..n).collect();
            gens.push(Perm::from_cycles(n, &[&c]).expect("long cycle"));
        }
        Self::new(n, gens).expect("valid generators")
    }

    pub fn alternating(n: usize) -> Self {
        let gens = (2..n).map(|k| Perm::from_cycles(n, &[&[0, 1, k]]).expect("3-cycle")).collect();
        Self::new(n, gens).expect("valid generators")
    }

    /// Group generated by a list of elements, keeping only those that enlarge
    /// the group built so far.
    pub fn from_elements<'a>(n: usize, elems: impl IntoIterator<Item = &'a Perm>) -> Self {
        let mut chain = StabChain::trivial(n);
        let mut gens = Vec::new();
        for g in elems {
            if !chain.contains(g) {
                chain.extend(&[*g], None);
                gens.push(*g);
            }
        }
        let order = chain.order();
        GroupHandle { n, gens, chain, order }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn chain(&self) -> &StabChain {
        &self.chain
    }

    pub fn contains(&self, g: &Perm) -> bool {
        g.degree() == self.n && self.chain.contains(g)
    }

    /// Elements in canonical (lexicographic image) order.
    pub fn elements(&self) -> Vec<Perm> {
        let mut v = self.chain.elements();
        v.sort_unstable();
        v
    }

    pub fn is_subgroup_of(&self, other: &GroupHandle) -> bool {
        self.n == other.n && self.gens.iter().all(|g| other.contains(g))
    }

    pub fn same_group(&self, other: &GroupHandle) -> bool {
        self.order == other.order && self.is_subgroup_of(other)
    }

    pub fn is_normal_in(&self, g: &GroupHandle) -> bool {
        self.is_subgroup_of(g) && g.gens.iter().all(|x| self.gens.iter().all(|h| self.contains(&h.conj(x))))
    }

    pub fn index_in(&self, g: &GroupHandle) -> u64 {
        g.order / self.order
    }

    pub fn is_full_symmetric(&self) -> bool {
        self.order as usize == factorial(self.n)
    }

    pub fn is_full_alternating(&self) -> bool {
        self.n >= 2 && self.order as usize == factorial(self.n) / 2 && self.gens.iter().all(|g| g.is_even())
    }

    pub fn is_even(&self) -> bool {
        self.gens.iter().all(|g| g.is_even())
    }

    pub fn conjugate(&self, x: &Perm) -> GroupHandle {
        let gens: Vec<Perm> = self.gens.iter().map(|g| g.conj(x)).collect();
        GroupHandle::new(self.n, gens).expect("conjugate of a valid group")
    }

    pub fn intersection(&self, other: &GroupHandle) -> GroupHandle {
        let (small, big) = if self.order <= other.order { (self, other) } else { (other, self) };
        let elems: Vec<Perm> = small.elements().into_iter().filter(|g| big.contains(g)).collect();
        GroupHandle::from_elements(self.n, &elems)
    }

    /// Normalizer of `self` inside `parent`, by a scan of the parent.
    pub fn normalizer_in(&self, parent: &GroupHandle) -> GroupHandle {
        let elems: Vec<Perm> = parent
            .elements()
            .into_iter()
            .filter(|x| self.gens.iter().all(|h| self.contains(&h.conj(x))))
            .collect();
        GroupHandle::from_elements(self.n, &elems)
    }

    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut orb = vec![s];
            let mut i = 0;
            while i < orb.len() {
                for g in &self.gens {
                    let q = g.apply(orb[i]);
                    if !seen[q] {
                        seen[q] = true;
                        orb.push(q);
                    }
                }
                i += 1;
            }
            orb.sort_unstable();
            out.push(orb);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() == 1
    }

    pub fn is_cyclic(&self) -> bool {
        self.elements().iter().any(|g| g.order() as u64 == self.order)
    }

    /// Generators in 1-based cycle notation.
    pub fn generator_strings(&self) -> Vec<String> {
        self.gens.iter().map(|g| g.to_string()).collect()
    }
}
