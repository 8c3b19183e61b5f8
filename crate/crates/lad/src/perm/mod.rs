//! Finite permutation groups over named colour domains.
//!
//! Everything here is exact and deterministic: orders come from a stabilizer
//! chain, orbits from breadth-first closure, and all public values are
//! expressed over colour *names* so serialized output is stable.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

mod chain;
mod cycles;
mod iso;
mod subgroups;

pub use iso::{perm_isomorphic, perm_isomorphic_constrained, DomainBijection};
pub(crate) use iso::verify_conjugation;
pub use subgroups::{all_subgroups, subgroup_classes, SUBGROUP_DEGREE_BOUND};

pub(crate) use chain::StabChain;

/// Largest degree the group algorithms accept.
pub const DEGREE_BOUND: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("colour name {0:?} is unusable: names must be nonempty and free of whitespace and parentheses")]
    BadName(String),
    #[error("duplicate colour name {0:?}")]
    DuplicateName(String),
    #[error("colour domain is empty")]
    EmptyDomain,
    #[error("unknown colour {0:?}")]
    UnknownColour(String),
    #[error("colour {0:?} appears more than once in one permutation")]
    RepeatedPoint(String),
    #[error("malformed cycle notation {input:?}: {reason}")]
    BadCycles { input: String, reason: String },
    #[error("degree {degree} exceeds the supported bound of {bound}")]
    DegreeBound { degree: usize, bound: usize },
}

/// An ordered finite set of colour names. The order is canonical
/// (lexicographic), so a domain built from the same names in any order
/// serializes identically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColourDomain {
    names: Vec<String>,
}

fn usable_name(name: &str) -> bool {
    !name.is_empty() && !name.contains(|c: char| c.is_whitespace() || c == '(' || c == ')')
}

impl ColourDomain {
    pub fn new<I, S>(names: I) -> Result<Self, PermError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut names: Vec<String> = names.into_iter().map(Into::into).collect();
        names.sort();
        if names.is_empty() {
            return Err(PermError::EmptyDomain);
        }
        for name in &names {
            if !usable_name(name) {
                return Err(PermError::BadName(name.clone()));
            }
        }
        for pair in names.windows(2) {
            if pair[0] == pair[1] {
                return Err(PermError::DuplicateName(pair[0].clone()));
            }
        }
        Ok(ColourDomain { names })
    }

    /// Domain `{"1", ..., "d"}`.
    pub fn numeric(d: usize) -> Self {
        ColourDomain::new((1..=d).map(|i| i.to_string())).expect("numeric domain is well formed")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.binary_search_by(|n| n.as_str().cmp(name)).ok()
    }
}

/// A permutation of a domain, stored as the image vector over domain indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm {
            images: (0..degree).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return None;
            }
            seen[x] = true;
        }
        Some(Perm { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Composition acting left to right on points: `(a.then(b))(x) = b(a(x))`.
    pub fn then(&self, next: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), next.degree());
        Perm {
            images: self.images.iter().map(|&x| next.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Perm { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Parse whitespace-separated cycle notation such as `(1 2 3)(8 9)`.
    /// The empty string denotes the identity.
    pub fn parse(domain: &ColourDomain, input: &str) -> Result<Perm, PermError> {
        cycles::parse(domain, input)
    }

    /// Cycle notation over colour names; fixed points omitted, cycles ordered
    /// by their least colour, each cycle starting at its least colour.
    pub fn cycle_string(&self, domain: &ColourDomain) -> String {
        cycles::format(self, domain)
    }
}

/// Flags of a finite permutation action consumed by the diagram predicates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ActionFlags {
    pub transitive: bool,
    pub semiregular: bool,
    pub generated_by_point_stabilizers: bool,
    pub nontrivial: bool,
}

/// A finite permutation group given by generators over a named domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePermGroup {
    domain: ColourDomain,
    gens: Vec<Perm>,
}

impl FinitePermGroup {
    pub fn new(domain: ColourDomain, gens: Vec<Perm>) -> Result<Self, PermError> {
        if domain.len() > DEGREE_BOUND {
            return Err(PermError::DegreeBound {
                degree: domain.len(),
                bound: DEGREE_BOUND,
            });
        }
        for g in &gens {
            if g.degree() != domain.len() {
                return Err(PermError::BadCycles {
                    input: String::new(),
                    reason: format!(
                        "generator degree {} does not match domain size {}",
                        g.degree(),
                        domain.len()
                    ),
                });
            }
        }
        Ok(FinitePermGroup { domain, gens })
    }

    /// Build a group from cycle-notation generator strings.
    pub fn from_cycles<S: AsRef<str>>(
        domain: ColourDomain,
        gens: &[S],
    ) -> Result<Self, PermError> {
        let gens = gens
            .iter()
            .map(|s| Perm::parse(&domain, s.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        FinitePermGroup::new(domain, gens)
    }

    pub fn trivial(domain: ColourDomain) -> Result<Self, PermError> {
        FinitePermGroup::new(domain, Vec::new())
    }

    /// The full symmetric group on the domain.
    pub fn symmetric(domain: ColourDomain) -> Result<Self, PermError> {
        let n = domain.len();
        let mut gens = Vec::new();
        if n >= 2 {
            let mut t = Perm::identity(n);
            t.images.swap(0, 1);
            gens.push(t);
        }
        if n >= 3 {
            let cycle = Perm::from_images((0..n).map(|i| (i + 1) % n).collect()).unwrap();
            gens.push(cycle);
        }
        FinitePermGroup::new(domain, gens)
    }

    pub fn domain(&self) -> &ColourDomain {
        &self.domain
    }

    pub fn degree(&self) -> usize {
        self.domain.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    pub fn generator_cycle_strings(&self) -> Vec<String> {
        self.gens
            .iter()
            .map(|g| g.cycle_string(&self.domain))
            .collect()
    }

    fn stab_chain(&self) -> StabChain {
        let raw: Vec<Vec<usize>> = self.gens.iter().map(|g| g.images.clone()).collect();
        StabChain::new(self.degree(), &raw)
    }

    /// Exact group order.
    pub fn order(&self) -> u128 {
        self.stab_chain().order_u128()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        if p.degree() != self.degree() {
            return false;
        }
        self.stab_chain().contains(p.images())
    }

    /// Orbit partition over domain indices, ordered by least element.
    pub fn orbits(&self) -> Vec<BTreeSet<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut orbits = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut orbit = BTreeSet::new();
            let mut queue = vec![start];
            seen[start] = true;
            orbit.insert(start);
            while let Some(x) = queue.pop() {
                for g in &self.gens {
                    let y = g.apply(x);
                    if !seen[y] {
                        seen[y] = true;
                        orbit.insert(y);
                        queue.push(y);
                    }
                }
            }
            orbits.push(orbit);
        }
        orbits
    }

    /// Orbit partition as sorted colour-name lists.
    pub fn orbit_names(&self) -> Vec<Vec<String>> {
        self.orbits()
            .iter()
            .map(|o| o.iter().map(|&i| self.domain.name(i).to_string()).collect())
            .collect()
    }

    pub fn orbit_of(&self, point: usize) -> BTreeSet<usize> {
        for orbit in self.orbits() {
            if orbit.contains(&point) {
                return orbit;
            }
        }
        unreachable!("point is in some orbit")
    }

    /// All elements, sorted by image vector. Only sensible for small groups;
    /// callers here never exceed a few thousand elements.
    pub fn elements(&self) -> Vec<Perm> {
        let mut seen = BTreeSet::new();
        seen.insert(Perm::identity(self.degree()));
        let mut frontier: Vec<Perm> = seen.iter().cloned().collect();
        while let Some(p) = frontier.pop() {
            for g in &self.gens {
                let q = p.then(g);
                if seen.insert(q.clone()) {
                    frontier.push(q);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Generators of the stabilizer of the colour `x`, on the same domain.
    pub fn point_stabilizer(&self, x: &str) -> Result<FinitePermGroup, PermError> {
        let point = self
            .domain
            .index_of(x)
            .ok_or_else(|| PermError::UnknownColour(x.to_string()))?;
        Ok(self.point_stabilizer_by_index(point))
    }

    pub(crate) fn point_stabilizer_by_index(&self, point: usize) -> FinitePermGroup {
        let raw: Vec<Vec<usize>> = self.gens.iter().map(|g| g.images.clone()).collect();
        let chain = StabChain::with_first_base(self.degree(), &raw, point);
        let mut gens: Vec<Perm> = chain
            .gens_fixing_first_base()
            .into_iter()
            .map(|images| Perm { images })
            .collect();
        gens.sort();
        gens.dedup();
        FinitePermGroup {
            domain: self.domain.clone(),
            gens,
        }
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() == 1
    }

    /// Semiregular (free): every point stabilizer is trivial, checked via
    /// orbit-stabilizer on each orbit representative.
    pub fn is_semiregular(&self) -> bool {
        let order = self.order();
        self.orbits()
            .iter()
            .all(|orbit| order == orbit.len() as u128)
    }

    /// Whether the subgroup generated by all point stabilizers is the whole
    /// group, decided by comparing orders. The trivial group does not count
    /// as generated by point stabilizers.
    pub fn is_generated_by_point_stabilizers(&self) -> bool {
        if self.is_trivial() {
            return false;
        }
        let mut gens = Vec::new();
        for point in 0..self.degree() {
            gens.extend(self.point_stabilizer_by_index(point).gens);
        }
        gens.sort();
        gens.dedup();
        let sub = FinitePermGroup {
            domain: self.domain.clone(),
            gens,
        };
        sub.order() == self.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.gens.iter().all(Perm::is_identity)
    }

    pub fn flags(&self) -> ActionFlags {
        ActionFlags {
            transitive: self.is_transitive(),
            semiregular: self.is_semiregular(),
            generated_by_point_stabilizers: self.is_generated_by_point_stabilizers(),
            nontrivial: !self.is_trivial(),
        }
    }

    /// Sorted orbit sizes, largest first.
    pub fn orbit_size_multiset(&self) -> Vec<usize> {
        let mut sizes: Vec<usize> = self.orbits().iter().map(BTreeSet::len).collect();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        sizes
    }
}

impl fmt::Display for FinitePermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens = self.generator_cycle_strings();
        if gens.is_empty() || gens.iter().all(String::is_empty) {
            write!(f, "1 on {{{}}}", self.domain.names().join(" "))
        } else {
            write!(f, "<{}>", gens.join(", "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(names: &[&str], gens: &[&str]) -> FinitePermGroup {
        let domain = ColourDomain::new(names.iter().copied()).unwrap();
        FinitePermGroup::from_cycles(domain, gens).unwrap()
    }

    /// Order oracle independent of the stabilizer chain: breadth-first
    /// closure over the generators.
    fn order_by_closure(g: &FinitePermGroup) -> u128 {
        g.elements().len() as u128
    }

    #[test]
    fn orbits_match_figure_values() {
        let g = group(&["1", "2", "3", "8", "9"], &["(1 2 3)(8 9)"]);
        assert_eq!(
            g.orbit_names(),
            vec![vec!["1", "2", "3"], vec!["8", "9"]]
                .into_iter()
                .map(|v: Vec<&str>| v.into_iter().map(String::from).collect::<Vec<_>>())
                .collect::<Vec<_>>()
        );

        let trivial = group(&["1", "2"], &[]);
        assert_eq!(trivial.orbits().len(), 2);

        let g = group(&["3", "4", "5", "6"], &["(3 4)", "(5 6)"]);
        assert_eq!(
            g.orbit_names(),
            vec![vec!["3".to_string(), "4".to_string()], vec![
                "5".to_string(),
                "6".to_string()
            ]]
        );
    }

    #[test]
    fn orders_agree_with_closure_oracle() {
        let cases = [
            group(&["1", "2", "3", "8", "9"], &["(1 2 3)(8 9)"]),
            group(&["3", "4", "5", "6"], &["(3 4)", "(5 6)"]),
            group(&["1", "2", "3"], &["(1 2)", "(1 2 3)"]),
            group(&["1", "2", "3", "4", "5"], &["(1 2 3 4 5)", "(2 5)(3 4)"]),
            group(&["1"], &[]),
        ];
        let expected = [6u128, 4, 6, 10, 1];
        for (g, want) in cases.iter().zip(expected) {
            assert_eq!(g.order(), want);
            assert_eq!(g.order(), order_by_closure(g));
        }
    }

    #[test]
    fn degree_bound_is_enforced() {
        let names: Vec<String> = (1..=13).map(|i| format!("c{i:02}")).collect();
        let domain = ColourDomain::new(names).unwrap();
        let err = FinitePermGroup::trivial(domain).unwrap_err();
        assert_eq!(
            err,
            PermError::DegreeBound {
                degree: 13,
                bound: DEGREE_BOUND
            }
        );
    }

    #[test]
    fn point_stabilizers() {
        let s3 = group(&["1", "2", "3"], &["(1 2)", "(1 2 3)"]);
        let stab = s3.point_stabilizer("1").unwrap();
        assert_eq!(stab.order(), 2);
        // Independent check: filter all six elements fixing "1".
        let fixing = s3
            .elements()
            .into_iter()
            .filter(|p| p.apply(0) == 0)
            .count();
        assert_eq!(fixing as u128, stab.order());

        let trivial = group(&["1", "2"], &[]);
        assert_eq!(trivial.point_stabilizer("2").unwrap().order(), 1);

        let c3 = group(&["1", "2", "3"], &["(1 2 3)"]);
        assert_eq!(c3.point_stabilizer("1").unwrap().order(), 1);

        assert!(s3.point_stabilizer("7").is_err());
    }

    #[test]
    fn orbit_stabilizer_relation_holds() {
        for g in [
            group(&["1", "2", "3"], &["(1 2)", "(1 2 3)"]),
            group(&["1", "2", "3", "8", "9"], &["(1 2 3)(8 9)"]),
            group(&["3", "4", "5", "6"], &["(3 4)", "(5 6)"]),
            group(&["1", "2", "3", "4"], &["(1 2 3 4)"]),
        ] {
            let order = g.order();
            for x in 0..g.degree() {
                let stab = g.point_stabilizer_by_index(x);
                assert_eq!(stab.order() * g.orbit_of(x).len() as u128, order);
            }
        }
    }

    #[test]
    fn stabilizer_orbits_refine_group_orbits() {
        let g = group(&["1", "2", "3", "4", "5"], &["(1 2 3 4 5)", "(2 5)(3 4)"]);
        let coarse = g.orbits();
        for x in 0..g.degree() {
            for fine in g.point_stabilizer_by_index(x).orbits() {
                assert!(coarse.iter().any(|c| fine.is_subset(c)));
            }
        }
    }

    #[test]
    fn action_flags_examples() {
        let s3 = group(&["1", "2", "3"], &["(1 2)", "(1 2 3)"]);
        assert_eq!(
            s3.flags(),
            ActionFlags {
                transitive: true,
                semiregular: false,
                generated_by_point_stabilizers: true,
                nontrivial: true
            }
        );
        // Brute-force route for the same fact: the three transpositions
        // obtained as point stabilizer generators generate all of S3.
        assert_eq!(
            FinitePermGroup::from_cycles(
                ColourDomain::new(["1", "2", "3"]).unwrap(),
                &["(2 3)", "(1 3)", "(1 2)"]
            )
            .unwrap()
            .order(),
            6
        );

        let c3 = group(&["1", "2", "3"], &["(1 2 3)"]);
        assert_eq!(
            c3.flags(),
            ActionFlags {
                transitive: true,
                semiregular: true,
                generated_by_point_stabilizers: false,
                nontrivial: true
            }
        );

        let trivial = group(&["1"], &[]);
        assert_eq!(
            trivial.flags(),
            ActionFlags {
                transitive: true,
                semiregular: true,
                generated_by_point_stabilizers: false,
                nontrivial: false
            }
        );
    }

    #[test]
    fn cycle_roundtrip_and_canonical_form() {
        let domain = ColourDomain::new(["1", "2", "3", "8", "9"]).unwrap();
        let p = Perm::parse(&domain, "(8 9)(1 2 3)").unwrap();
        assert_eq!(p.cycle_string(&domain), "(1 2 3)(8 9)");
        let id = Perm::parse(&domain, "").unwrap();
        assert!(id.is_identity());
        assert_eq!(id.cycle_string(&domain), "");
        assert!(Perm::parse(&domain, "(1 1)").is_err());
        assert!(Perm::parse(&domain, "(1 7)").is_err());
        assert!(Perm::parse(&domain, "(1 2").is_err());
    }
}
