//! Enumeration of subgroups of small symmetric groups up to conjugacy.
//!
//! Representatives are grown by adjoining single elements to known class
//! representatives and closing (every subgroup arises this way up to
//! conjugacy), then deduplicated by conjugation over the full symmetric
//! group. A multiplication table over element indices keeps this cheap.

use std::collections::{HashMap, HashSet};

use super::{ColourDomain, FinitePermGroup, Perm, PermError};

/// Largest degree accepted by the subgroup-class enumeration.
pub const SUBGROUP_DEGREE_BOUND: usize = 6;

struct SymTable {
    d: usize,
    elems: Vec<Vec<usize>>,
    mult: Vec<u16>,
    inv: Vec<u16>,
}

impl SymTable {
    fn new(d: usize) -> SymTable {
        let mut elems = Vec::new();
        let mut current: Vec<usize> = (0..d).collect();
        loop {
            elems.push(current.clone());
            // next permutation in lexicographic order
            let Some(i) = (0..d.saturating_sub(1)).rev().find(|&i| current[i] < current[i + 1])
            else {
                break;
            };
            let j = (i + 1..d).rev().find(|&j| current[j] > current[i]).unwrap();
            current.swap(i, j);
            current[i + 1..].reverse();
        }
        let n = elems.len();
        let index: HashMap<Vec<usize>, u16> = elems
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i as u16))
            .collect();
        let mut mult = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                // (a then b)(x) = b(a(x))
                let prod: Vec<usize> = elems[a].iter().map(|&x| elems[b][x]).collect();
                mult[a * n + b] = index[&prod];
            }
        }
        let mut inv = vec![0u16; n];
        for a in 0..n {
            let mut v = vec![0; d];
            for (i, &x) in elems[a].iter().enumerate() {
                v[x] = i;
            }
            inv[a] = index[&v];
        }
        SymTable { d, elems, mult, inv }
    }

    fn size(&self) -> usize {
        self.elems.len()
    }

    fn mul(&self, a: u16, b: u16) -> u16 {
        self.mult[a as usize * self.size() + b as usize]
    }

    fn conj(&self, g: u16, h: u16) -> u16 {
        self.mul(self.mul(g, h), self.inv[g as usize])
    }

    /// Closure of a seed under multiplication, as a sorted index list.
    fn closure(&self, seed: &[u16]) -> Vec<u16> {
        let mut mask = vec![false; self.size()];
        mask[0] = true; // lex-first element is the identity
        let mut queue: Vec<u16> = vec![0];
        for &s in seed {
            if !mask[s as usize] {
                mask[s as usize] = true;
                queue.push(s);
            }
        }
        let mut head = 0;
        while head < queue.len() {
            let a = queue[head];
            head += 1;
            for &s in seed {
                for p in [self.mul(a, s), self.mul(s, a)] {
                    if !mask[p as usize] {
                        mask[p as usize] = true;
                        queue.push(p);
                    }
                }
            }
        }
        queue.sort_unstable();
        queue
    }

    fn is_conjugate(&self, a: &[u16], b: &[u16]) -> bool {
        if a.len() != b.len() {
            return false;
        }
        let mut b_mask = vec![false; self.size()];
        for &h in b {
            b_mask[h as usize] = true;
        }
        (0..self.size() as u16)
            .any(|g| a.iter().all(|&h| b_mask[self.conj(g, h) as usize]))
    }

    /// Lexicographically least conjugate of a subgroup, used to pick a
    /// deterministic class representative.
    fn canonical_conjugate(&self, set: &[u16]) -> Vec<u16> {
        let mut best: Option<Vec<u16>> = None;
        for g in 0..self.size() as u16 {
            let mut image: Vec<u16> = set.iter().map(|&h| self.conj(g, h)).collect();
            image.sort_unstable();
            if best.as_ref().is_none_or(|b| image < *b) {
                best = Some(image);
            }
        }
        best.unwrap()
    }

    /// Multiset of element cycle types, a cheap conjugacy invariant.
    fn type_key(&self, set: &[u16]) -> Vec<Vec<usize>> {
        let mut key: Vec<Vec<usize>> = set
            .iter()
            .map(|&h| {
                let p = &self.elems[h as usize];
                let mut seen = vec![false; self.d];
                let mut lens = Vec::new();
                for start in 0..self.d {
                    if seen[start] {
                        continue;
                    }
                    let mut len = 0;
                    let mut x = start;
                    while !seen[x] {
                        seen[x] = true;
                        len += 1;
                        x = p[x];
                    }
                    lens.push(len);
                }
                lens.sort_unstable();
                lens
            })
            .collect();
        key.sort();
        key
    }

    fn minimal_generators(&self, set: &[u16]) -> Vec<u16> {
        let mut gens: Vec<u16> = Vec::new();
        let mut have: Vec<u16> = vec![0];
        for &e in set {
            if have.binary_search(&e).is_err() {
                gens.push(e);
                have = self.closure(&gens);
                if have.len() == set.len() {
                    break;
                }
            }
        }
        gens
    }

    fn to_group(&self, gens: &[u16]) -> FinitePermGroup {
        let domain = ColourDomain::numeric(self.d);
        let gens = gens
            .iter()
            .map(|&g| Perm::from_images(self.elems[g as usize].clone()).unwrap())
            .collect();
        FinitePermGroup::new(domain, gens).expect("degree within bound")
    }
}

fn check_degree(d: usize) -> Result<(), PermError> {
    if d == 0 || d > SUBGROUP_DEGREE_BOUND {
        return Err(PermError::DegreeBound {
            degree: d,
            bound: SUBGROUP_DEGREE_BOUND,
        });
    }
    Ok(())
}

fn class_rep_sets(table: &SymTable) -> Vec<Vec<u16>> {
    let trivial = vec![0u16];
    let mut reps: Vec<(Vec<Vec<usize>>, Vec<u16>)> = vec![(table.type_key(&trivial), trivial.clone())];
    let mut seen: HashSet<Vec<u16>> = HashSet::from([trivial.clone()]);
    let mut frontier = vec![trivial];
    while let Some(h) = frontier.pop() {
        for g in 0..table.size() as u16 {
            if h.binary_search(&g).is_ok() {
                continue;
            }
            let mut seed = h.clone();
            seed.push(g);
            let k = table.closure(&seed);
            if !seen.insert(k.clone()) {
                continue;
            }
            let key = table.type_key(&k);
            if reps
                .iter()
                .any(|(rk, r)| *rk == key && table.is_conjugate(r, &k))
            {
                continue;
            }
            reps.push((key, k.clone()));
            frontier.push(k);
        }
    }
    let mut canon: Vec<Vec<u16>> = reps
        .into_iter()
        .map(|(_, r)| table.canonical_conjugate(&r))
        .collect();
    canon.sort_by_key(|r| (r.len(), r.clone()));
    canon
}

/// One representative per conjugacy class of subgroups of the symmetric
/// group of degree `d`, on the domain `{"1", ..., "d"}`. Ordered by group
/// order, then by a canonical element list, so output is deterministic.
pub fn subgroup_classes(d: usize) -> Result<Vec<FinitePermGroup>, PermError> {
    check_degree(d)?;
    let table = SymTable::new(d);
    Ok(class_rep_sets(&table)
        .iter()
        .map(|set| table.to_group(&table.minimal_generators(set)))
        .collect())
}

/// Total number of subgroups of the symmetric group of degree `d`, by plain
/// breadth-first closure over adjoined elements. Exponential; intended as a
/// cross-check oracle at very small degree.
pub fn all_subgroups(d: usize) -> Result<usize, PermError> {
    check_degree(d)?;
    let table = SymTable::new(d);
    let trivial = vec![0u16];
    let mut seen: HashSet<Vec<u16>> = HashSet::from([trivial.clone()]);
    let mut frontier = vec![trivial];
    while let Some(h) = frontier.pop() {
        for g in 0..table.size() as u16 {
            if h.binary_search(&g).is_ok() {
                continue;
            }
            let mut seed = h.clone();
            seed.push(g);
            let k = table.closure(&seed);
            if seen.insert(k.clone()) {
                frontier.push(k);
            }
        }
    }
    Ok(seen.len())
}

#[cfg(test)]
mod tests {
    use super::super::perm_isomorphic_constrained;
    use super::*;

    #[test]
    fn class_counts_small_degrees() {
        assert_eq!(subgroup_classes(1).unwrap().len(), 1);
        assert_eq!(subgroup_classes(2).unwrap().len(), 2);
        assert_eq!(subgroup_classes(3).unwrap().len(), 4);
        assert_eq!(subgroup_classes(4).unwrap().len(), 11);
    }

    #[test]
    fn degree_bound() {
        assert!(subgroup_classes(0).is_err());
        assert!(subgroup_classes(7).is_err());
    }

    #[test]
    fn s3_classes_have_expected_orders() {
        let orders: Vec<u128> = subgroup_classes(3)
            .unwrap()
            .iter()
            .map(FinitePermGroup::order)
            .collect();
        assert_eq!(orders, vec![1, 2, 3, 6]);
    }

    #[test]
    fn representatives_are_mutually_nonconjugate() {
        // Conjugacy in S_d is permutational isomorphism restricted to the
        // identity block structure, so the generic search applies directly.
        for d in 1..=4 {
            let classes = subgroup_classes(d).unwrap();
            for i in 0..classes.len() {
                for j in i + 1..classes.len() {
                    assert!(
                        perm_isomorphic_constrained(&classes[i], &classes[j], &|_, _| true)
                            .is_none()
                            || classes[i].order() != classes[j].order()
                            || {
                                // Same order and abstractly isomorphic is fine;
                                // conjugacy is the strict test.
                                let table = SymTable::new(d);
                                let as_set = |g: &FinitePermGroup| {
                                    let mut set: Vec<u16> = g
                                        .elements()
                                        .iter()
                                        .map(|p| {
                                            table
                                                .elems
                                                .iter()
                                                .position(|e| e == p.images())
                                                .unwrap()
                                                as u16
                                        })
                                        .collect();
                                    set.sort_unstable();
                                    set
                                };
                                !table.is_conjugate(&as_set(&classes[i]), &as_set(&classes[j]))
                            }
                    );
                }
            }
        }
    }

    #[test]
    fn normalizer_index_sum_matches_total_count() {
        for d in 1..=4 {
            let table = SymTable::new(d);
            let reps = class_rep_sets(&table);
            let mut total = 0usize;
            for rep in &reps {
                let mut mask = vec![false; table.size()];
                for &h in rep {
                    mask[h as usize] = true;
                }
                let normalizer = (0..table.size() as u16)
                    .filter(|&g| rep.iter().all(|&h| mask[table.conj(g, h) as usize]))
                    .count();
                total += table.size() / normalizer;
            }
            assert_eq!(total, all_subgroups(d).unwrap());
        }
    }
}
