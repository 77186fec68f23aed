//! Deterministic Schreier–Sims on at most eight points.

use super::perm::{Perm, MAX_DEGREE};

#[derive(Clone, Debug)]
struct Level {
    base: usize,
    gens: Vec<Perm>,
    /// `trans[pt]` maps the base point to `pt`.
    trans: [Option<Perm>; MAX_DEGREE],
    orbit: Vec<usize>,
}

impl Level {
    fn new(n: usize, base: usize) -> Self {
        let mut l = Level { base, gens: Vec::new(), trans: [None; MAX_DEGREE], orbit: Vec::new() };
        l.rebuild(n);
        l
    }

    fn rebuild(&mut self, n: usize) {
        self.trans = [None; MAX_DEGREE];
        self.trans[self.base] = Some(Perm::identity(n));
        self.orbit.clear();
        self.orbit.push(self.base);
        let mut i = 0;
        while i < self.orbit.len() {
            let pt = self.orbit[i];
            let u = self.trans[pt].expect("orbit point has a transversal element");
            for s in &self.gens {
                let q = s.apply(pt);
                if self.trans[q].is_none() {
                    self.trans[q] = Some(u.mul(s));
                    self.orbit.push(q);
                }
            }
            i += 1;
        }
    }
}

/// Base, strong generators and basic transversals of a permutation group.
#[derive(Clone, Debug)]
pub struct StabChain {
    n: usize,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn trivial(n: usize) -> Self {
        StabChain { n, levels: Vec::new() }
    }

    /// Builds the chain; stops early (returning `false`) once the order is
    /// known to exceed `limit`.
    pub fn build(n: usize, gens: &[Perm], limit: Option<u64>) -> (Self, bool) {
        let mut c = StabChain::trivial(n);
        let complete = c.extend(gens, limit);
        (c, complete)
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// Product of basic orbit lengths: the group order once the chain is
    /// complete, a lower bound during construction.
    pub fn order(&self) -> u64 {
        self.levels.iter().map(|l| l.orbit.len() as u64).product()
    }

    pub fn strong_generators(&self) -> Vec<Perm> {
        let mut v: Vec<Perm> = Vec::new();
        for l in &self.levels {
            for g in &l.gens {
                if !v.contains(g) {
                    v.push(*g);
                }
            }
        }
        v
    }

    /// Strips `g` from level `from`; returns the residue and the level where
    /// stripping stopped (`levels.len()` if it went through).
    fn strip(&self, mut g: Perm, from: usize) -> (Perm, usize) {
        for (i, l) in self.levels.iter().enumerate().skip(from) {
            let img = g.apply(l.base);
            match &l.trans[img] {
                None => return (g, i),
                Some(u) => g = g.mul(&u.inverse()),
            }
        }
        (g, self.levels.len())
    }

    pub fn contains(&self, g: &Perm) -> bool {
        let (h, j) = self.strip(*g, 0);
        j == self.levels.len() && h.is_identity()
    }

    fn first_moved(g: &Perm) -> usize {
        (0..g.degree()).find(|&i| !g.fixes(i)).expect("non-identity permutation")
    }

    fn fixes_base_prefix(&self, g: &Perm, upto: usize) -> bool {
        self.levels[..upto].iter().all(|l| g.fixes(l.base))
    }

    fn add_strong_generator(&mut self, h: Perm, from: usize, to: usize) {
        for l in from..=to {
            self.levels[l].gens.push(h);
            self.levels[l].rebuild(self.n);
        }
    }

    /// Adds generators and restores the strong generating property.
    /// Returns `false` if interrupted by `limit`.
    pub fn extend(&mut self, gens: &[Perm], limit: Option<u64>) -> bool {
        let over = |c: &StabChain| limit.is_some_and(|lim| c.order() > lim);
        let mut start = None;
        for g in gens {
            if g.is_identity() || self.contains(g) {
                continue;
            }
            if self.levels.iter().all(|l| g.fixes(l.base)) {
                let b = Self::first_moved(g);
                self.levels.push(Level::new(self.n, b));
            }
            // g lies in S_i for every level whose base prefix it fixes
            let mut top = 0;
            while top + 1 < self.levels.len() && self.fixes_base_prefix(g, top + 1) {
                top += 1;
            }
            self.add_strong_generator(*g, 0, top);
            start = Some(start.map_or(top, |s: usize| s.max(top)));
        }
        if start.is_none() {
            return true;
        }
        if over(self) {
            return false;
        }
        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            let iu = i as usize;
            let mut restart = None;
            'scan: for oi in 0..self.levels[iu].orbit.len() {
                let beta = self.levels[iu].orbit[oi];
                let u_beta = self.levels[iu].trans[beta].expect("orbit");
                for gi in 0..self.levels[iu].gens.len() {
                    let x = self.levels[iu].gens[gi];
                    let bx = x.apply(beta);
                    let u_bx = self.levels[iu].trans[bx].expect("orbit closed");
                    let h = u_beta.mul(&x).mul(&u_bx.inverse());
                    if h.is_identity() {
                        continue;
                    }
                    let (r, j) = self.strip(h, iu + 1);
                    if j < self.levels.len() || !r.is_identity() {
                        if j == self.levels.len() {
                            let b = Self::first_moved(&r);
                            self.levels.push(Level::new(self.n, b));
                        }
                        self.add_strong_generator(r, iu + 1, j);
                        restart = Some(j);
                        break 'scan;
                    }
                }
            }
            match restart {
                Some(j) => {
                    if over(self) {
                        return false;
                    }
                    i = j as isize;
                }
                None => i -= 1,
            }
        }
        true
    }

    /// All elements, as products `u_{k-1} ... u_0` of transversal elements.
    pub fn elements(&self) -> Vec<Perm> {
        let mut list = vec![Perm::identity(self.n)];
        for l in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(list.len() * l.orbit.len());
            for a in &list {
                for &pt in &l.orbit {
                    next.push(a.mul(l.trans[pt].as_ref().expect("orbit")));
                }
            }
            list = next;
        }
        list
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn bfs_order(n: usize, gens: &[Perm]) -> usize {
        let mut seen: HashSet<Perm> = HashSet::new();
        let id = Perm::identity(n);
        seen.insert(id);
        let mut queue = vec![id];
        while let Some(a) = queue.pop() {
            for g in gens {
                let b = a.mul(g);
                if seen.insert(b) {
                    queue.push(b);
                }
            }
        }
        seen.len()
    }

    #[test]
    fn orders_of_familiar_groups() {
        let p = |s: &str, n| Perm::parse(s, n).unwrap();
        let cases: Vec<(usize, Vec<Perm>, u64)> = vec![
            (4, vec![p("(1,2)", 4), p("(1,2,3,4)", 4)], 24),
            (5, vec![p("(1,2,3,4,5)", 5), p("(2,5)(3,4)", 5)], 10),
            (8, vec![p("(1,2)", 8), p("(1,2,3,4,5,6,7,8)", 8)], 40320),
            (8, vec![p("(1,2,3)", 8), p("(2,3,4,5,6,7,8)", 8)], 20160),
            (6, vec![p("(1,2)(3,4)", 6)], 2),
        ];
        for (n, gens, ord) in cases {
            let (c, done) = StabChain::build(n, &gens, None);
            assert!(done);
            assert_eq!(c.order(), ord);
            if ord <= 5040 {
                assert_eq!(bfs_order(n, &gens) as u64, ord);
                assert_eq!(c.elements().len() as u64, ord);
            }
            for g in &gens {
                assert!(c.contains(g));
            }
        }
    }

    #[test]
    fn membership_is_exact() {
        let gens = [Perm::parse("(1,2,3)", 4).unwrap(), Perm::parse("(2,3,4)", 4).unwrap()];
        let (c, _) = StabChain::build(4, &gens, None);
        assert!(c.contains(&Perm::parse("(1,2)(3,4)", 4).unwrap()));
        assert!(!c.contains(&Perm::parse("(1,2)", 4).unwrap()));
    }

    #[test]
    fn early_exit_on_limit() {
        let gens = [Perm::parse("(1,2)", 8).unwrap(), Perm::parse("(1,2,3,4,5,6,7,8)", 8).unwrap()];
        let (c, done) = StabChain::build(8, &gens, Some(20160));
        assert!(!done);
        assert!(c.order() > 20160);
    }
}
