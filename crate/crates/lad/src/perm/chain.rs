//! Stabilizer chain (Schreier–Sims) over raw image vectors.
//!
//! Used both for colour-domain groups (degree at most 12) and for groups of
//! ball automorphisms, where points are ball vertices. Strong generators are
//! tagged with their depth (the number of leading base points they fix); the
//! orbit at level `i` is computed from all generators of depth at least `i`.
//! The build loops until every Schreier generator of every level sifts to
//! the identity, which is the textbook completeness certificate.

use std::collections::HashMap;

use num_bigint::BigUint;

type RawPerm = Vec<usize>;

fn compose(a: &RawPerm, b: &RawPerm) -> RawPerm {
    // (a then b)(x) = b(a(x))
    a.iter().map(|&x| b[x]).collect()
}

fn invert(a: &RawPerm) -> RawPerm {
    let mut inv = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

fn is_identity(a: &RawPerm) -> bool {
    a.iter().enumerate().all(|(i, &x)| i == x)
}

fn first_moved_point(a: &RawPerm) -> Option<usize> {
    a.iter().enumerate().find(|&(i, &x)| i != x).map(|(i, _)| i)
}

pub(crate) struct StabChain {
    n: usize,
    bases: Vec<usize>,
    /// (depth, generator): the generator fixes the first `depth` base points.
    gens: Vec<(usize, RawPerm)>,
    /// per level: point in orbit -> transversal element mapping base to it
    transversals: Vec<HashMap<usize, RawPerm>>,
}

impl StabChain {
    pub(crate) fn new(n: usize, gens: &[RawPerm]) -> Self {
        Self::build(n, gens, None)
    }

    /// Build with a forced first base point, so generators of depth one or
    /// more generate exactly the stabilizer of that point.
    pub(crate) fn with_first_base(n: usize, gens: &[RawPerm], base: usize) -> Self {
        Self::build(n, gens, Some(base))
    }

    fn build(n: usize, input: &[RawPerm], first_base: Option<usize>) -> Self {
        let mut chain = StabChain {
            n,
            bases: Vec::new(),
            gens: Vec::new(),
            transversals: Vec::new(),
        };
        if let Some(base) = first_base {
            chain.push_base(base);
        }
        for g in input {
            debug_assert_eq!(g.len(), n);
            chain.place_from(g.clone(), 0);
        }
        // Fixpoint: verify Schreier generators level by level, restarting
        // whenever a new strong generator is installed.
        'sweep: loop {
            for i in 0..chain.bases.len() {
                let mut orbit: Vec<usize> = chain.transversals[i].keys().copied().collect();
                orbit.sort_unstable();
                let level_gens: Vec<RawPerm> = chain
                    .gens
                    .iter()
                    .filter(|(depth, _)| *depth >= i)
                    .map(|(_, g)| g.clone())
                    .collect();
                for &x in &orbit {
                    for g in &level_gens {
                        let ux = chain.transversals[i][&x].clone();
                        let y = g[x];
                        let uy_inv = invert(&chain.transversals[i][&y]);
                        let schreier = compose(&compose(&ux, g), &uy_inv);
                        if chain.place_from(schreier, i) {
                            continue 'sweep;
                        }
                    }
                }
            }
            break;
        }
        chain
    }

    fn push_base(&mut self, base: usize) {
        self.bases.push(base);
        let mut t = HashMap::new();
        t.insert(base, (0..self.n).collect());
        self.transversals.push(t);
    }

    fn recompute_all_orbits(&mut self) {
        for i in 0..self.bases.len() {
            let base = self.bases[i];
            let gens: Vec<&RawPerm> = self
                .gens
                .iter()
                .filter(|(depth, _)| *depth >= i)
                .map(|(_, g)| g)
                .collect();
            let mut t: HashMap<usize, RawPerm> = HashMap::new();
            t.insert(base, (0..self.n).collect());
            let mut queue = vec![base];
            let mut head = 0;
            while head < queue.len() {
                let x = queue[head];
                head += 1;
                let ux = t[&x].clone();
                for g in &gens {
                    let y = g[x];
                    if !t.contains_key(&y) {
                        t.insert(y, compose(&ux, g));
                        queue.push(y);
                    }
                }
            }
            self.transversals[i] = t;
        }
    }

    /// Sift `g` (which fixes the first `start` base points) and install the
    /// residue as a strong generator if it is nontrivial. Returns true when
    /// the chain changed.
    fn place_from(&mut self, g: RawPerm, start: usize) -> bool {
        let mut residue = g;
        let mut level = start;
        loop {
            if is_identity(&residue) {
                return false;
            }
            if level == self.bases.len() {
                let base = first_moved_point(&residue).expect("nonidentity residue moves a point");
                self.push_base(base);
            }
            let image = residue[self.bases[level]];
            match self.transversals[level].get(&image) {
                Some(u) => {
                    residue = compose(&residue, &invert(u));
                    level += 1;
                }
                None => {
                    self.gens.push((level, residue));
                    self.recompute_all_orbits();
                    return true;
                }
            }
        }
    }

    pub(crate) fn order(&self) -> BigUint {
        let mut order = BigUint::from(1u32);
        for t in &self.transversals {
            order *= BigUint::from(t.len());
        }
        order
    }

    pub(crate) fn order_u128(&self) -> u128 {
        self.transversals.iter().map(|t| t.len() as u128).product()
    }

    pub(crate) fn contains(&self, g: &[usize]) -> bool {
        let mut residue = g.to_vec();
        for (i, t) in self.transversals.iter().enumerate() {
            if is_identity(&residue) {
                return true;
            }
            let image = residue[self.bases[i]];
            match t.get(&image) {
                Some(u) => residue = compose(&residue, &invert(u)),
                None => return false,
            }
        }
        is_identity(&residue)
    }

    /// Strong generators fixing the first base point. With a forced first
    /// base and a completed chain these generate the point stabilizer.
    pub(crate) fn gens_fixing_first_base(&self) -> Vec<RawPerm> {
        self.gens
            .iter()
            .filter(|(depth, _)| *depth >= 1)
            .map(|(_, g)| g.clone())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize, points: &[usize]) -> RawPerm {
        let mut p: RawPerm = (0..n).collect();
        for w in points.windows(2) {
            p[w[0]] = w[1];
        }
        if let (Some(&first), Some(&last)) = (points.first(), points.last()) {
            p[last] = first;
        }
        p
    }

    #[test]
    fn symmetric_group_orders() {
        for n in 1..=8usize {
            let mut gens = Vec::new();
            if n >= 2 {
                gens.push(cycle(n, &[0, 1]));
            }
            if n >= 3 {
                gens.push((0..n).map(|i| (i + 1) % n).collect());
            }
            let chain = StabChain::new(n, &gens);
            let expected: u128 = (1..=n as u128).product();
            assert_eq!(chain.order_u128(), expected);
        }
    }

    #[test]
    fn membership() {
        let n = 4;
        let a4_gens = vec![cycle(n, &[0, 1, 2]), cycle(n, &[1, 2, 3])];
        let chain = StabChain::new(n, &a4_gens);
        assert_eq!(chain.order_u128(), 12);
        assert!(chain.contains(&cycle(n, &[0, 2, 1])));
        assert!(!chain.contains(&cycle(n, &[0, 1])));
        assert!(chain.contains(&(0..n).collect::<Vec<_>>()));
    }

    #[test]
    fn forced_base_yields_stabilizer_gens() {
        let n = 3;
        let s3 = vec![cycle(n, &[0, 1]), cycle(n, &[0, 1, 2])];
        let chain = StabChain::with_first_base(n, &s3, 0);
        let stab_gens = chain.gens_fixing_first_base();
        assert!(!stab_gens.is_empty());
        let stab = StabChain::new(n, &stab_gens);
        assert_eq!(stab.order_u128(), 2);
    }

    #[test]
    fn dihedral_membership_and_order() {
        let n = 7;
        let rot: RawPerm = (0..n).map(|i| (i + 1) % n).collect();
        let refl: RawPerm = (0..n).map(|i| (n - i) % n).collect();
        let chain = StabChain::new(n, &[rot.clone(), refl.clone()]);
        assert_eq!(chain.order_u128(), 14);
        assert!(chain.contains(&compose(&rot, &refl)));
        assert!(!chain.contains(&cycle(n, &[0, 1])));
    }
}
