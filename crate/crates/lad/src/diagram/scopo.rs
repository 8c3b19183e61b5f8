//! Strongly confluent partial orientations (scopos) and the combinatorial
//! features that witness them: stray leaves, focal cycles, stray half-trees
//! and horocyclic ends.
//!
//! A scopo is a set `O` of arcs such that every `a` in `O` has a singleton
//! colour set and a reverse outside `O`, and every arc into `o(a)` other
//! than the reverse of `a` is again in `O`. The enumeration restricts to
//! candidate arcs, propagates both implication directions, and searches the
//! remaining choices exhaustively.

use std::collections::{BTreeSet, HashMap};

use super::{Card, LadError, LocalActionDiagram, Resolved};

/// A verified strongly confluent partial orientation, as a set of arc ids.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Scopo {
    arcs: BTreeSet<String>,
}

impl Scopo {
    pub fn arcs(&self) -> &BTreeSet<String> {
        &self.arcs
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    /// Check the two scopo conditions for an arbitrary arc set.
    pub fn check(diagram: &LocalActionDiagram, arcs: &BTreeSet<String>) -> Result<Scopo, LadError> {
        let r = diagram.resolve()?;
        let indices = arcs
            .iter()
            .map(|id| {
                r.arc_index(id)
                    .ok_or_else(|| LadError::UnknownArc(id.clone()))
            })
            .collect::<Result<BTreeSet<usize>, _>>()?;
        for &a in &indices {
            if r.sizes[a] != Card::Finite(1) {
                return Err(LadError::Unsupported(format!(
                    "arc {:?} has colour-set size {}, scopos need singletons",
                    r.arc_id(a),
                    r.sizes[a]
                )));
            }
            if indices.contains(&r.reverse[a]) {
                return Err(LadError::Unsupported(format!(
                    "arc {:?} and its reverse are both present",
                    r.arc_id(a)
                )));
            }
            let v = r.origin[a];
            for b in r.in_arcs(v) {
                if b != r.reverse[a] && !indices.contains(&b) {
                    return Err(LadError::Unsupported(format!(
                        "arc {:?} requires incoming arc {:?} of its origin to be present",
                        r.arc_id(a),
                        r.arc_id(b)
                    )));
                }
            }
        }
        Ok(Scopo { arcs: arcs.clone() })
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    Open,
    In,
    Out,
}

struct Search<'a> {
    r: &'a Resolved<'a>,
    /// candidate arcs in canonical order
    candidates: Vec<usize>,
    position: HashMap<usize, usize>,
    /// per candidate: the arcs it forces in (condition 2 at its origin)
    forces: Vec<Vec<usize>>,
    /// per candidate: the candidates that force it
    forced_by: Vec<Vec<usize>>,
    found: Vec<BTreeSet<usize>>,
}

impl<'a> Search<'a> {
    fn propagate(&self, status: &mut [Status], c: usize, s: Status) -> bool {
        let mut stack = vec![(c, s)];
        while let Some((c, s)) = stack.pop() {
            match (status[c], s) {
                (Status::Open, _) => status[c] = s,
                (a, b) if a == b => continue,
                _ => return false,
            }
            match s {
                Status::In => {
                    // reverse, if a candidate, must stay out
                    if let Some(&rc) = self.position.get(&self.r.reverse[self.candidates[c]]) {
                        stack.push((rc, Status::Out));
                    }
                    for &f in &self.forces[c] {
                        stack.push((f, Status::In));
                    }
                }
                Status::Out => {
                    for &b in &self.forced_by[c] {
                        stack.push((b, Status::Out));
                    }
                }
                Status::Open => unreachable!(),
            }
        }
        true
    }

    fn run(&mut self, status: Vec<Status>) {
        match status.iter().position(|&s| s == Status::Open) {
            None => {
                let set: BTreeSet<usize> = status
                    .iter()
                    .enumerate()
                    .filter(|(_, &s)| s == Status::In)
                    .map(|(i, _)| self.candidates[i])
                    .collect();
                self.found.push(set);
            }
            Some(next) => {
                for s in [Status::Out, Status::In] {
                    let mut branch = status.clone();
                    if self.propagate(&mut branch, next, s) {
                        self.run(branch);
                    }
                }
            }
        }
    }
}

/// All scopos of the diagram, the empty one first, in a deterministic order.
pub fn scopos(diagram: &LocalActionDiagram) -> Result<Vec<Scopo>, LadError> {
    let r = diagram.resolve()?;
    // Condition 1 restricts candidates to non-self-paired arcs with
    // singleton colour sets.
    let candidates: Vec<usize> = (0..r.arc_count())
        .filter(|&a| r.sizes[a] == Card::Finite(1) && r.reverse[a] != a)
        .collect();
    let position: HashMap<usize, usize> = candidates
        .iter()
        .enumerate()
        .map(|(i, &a)| (a, i))
        .collect();

    let mut forces = vec![Vec::new(); candidates.len()];
    let mut forced_by = vec![Vec::new(); candidates.len()];
    let mut status = vec![Status::Open; candidates.len()];
    for (i, &a) in candidates.iter().enumerate() {
        let v = r.origin[a];
        for b in r.in_arcs(v) {
            if b == r.reverse[a] {
                continue;
            }
            match position.get(&b) {
                // A required arc that can never be chosen rules `a` out.
                None => {
                    status[i] = Status::Out;
                }
                Some(&j) => {
                    forces[i].push(j);
                    forced_by[j].push(i);
                }
            }
        }
    }

    let mut search = Search {
        r: &r,
        candidates,
        position,
        forces,
        forced_by,
        found: Vec::new(),
    };
    // Close the initial exclusions before branching.
    let seed = status.clone();
    let mut closed = vec![Status::Open; seed.len()];
    let mut consistent = true;
    for (i, &s) in seed.iter().enumerate() {
        if s == Status::Out {
            consistent &= search.propagate(&mut closed, i, Status::Out);
        }
    }
    debug_assert!(consistent, "excluding arcs can never conflict");
    search.run(closed);

    let mut result: Vec<Scopo> = search
        .found
        .into_iter()
        .map(|set| Scopo {
            arcs: set.into_iter().map(|a| r.arc_id(a).to_string()).collect(),
        })
        .collect();
    result.sort_by(|a, b| (a.arcs.len(), &a.arcs).cmp(&(b.arcs.len(), &b.arcs)));
    result.dedup();
    for s in &result {
        debug_assert!(Scopo::check(diagram, &s.arcs).is_ok());
    }
    Ok(result)
}

/// The combinatorial features of a diagram that obstruct geometric density.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScopoFeatures {
    /// leaves whose single outgoing colour set is a singleton
    pub stray_leaves: Vec<String>,
    pub is_focal_cycle: bool,
    /// a cyclic orientation with all-singleton colours, when one exists
    pub focal_orientation: Option<Vec<String>>,
    /// arcs whose half-tree is stray; provably empty for finite quotients
    pub stray_half_trees: Vec<String>,
    /// always empty here: a finite quotient graph has no ends
    pub horocyclic_ends: Vec<String>,
    pub note: &'static str,
}

impl ScopoFeatures {
    pub fn is_empty(&self) -> bool {
        self.stray_leaves.is_empty()
            && !self.is_focal_cycle
            && self.stray_half_trees.is_empty()
            && self.horocyclic_ends.is_empty()
    }
}

/// Detect stray leaves, focal cycles, stray half-trees and horocyclic ends.
pub fn scopo_features(diagram: &LocalActionDiagram) -> Result<ScopoFeatures, LadError> {
    let r = diagram.resolve()?;

    let stray_leaves: Vec<String> = (0..r.vertex_count())
        .filter(|&v| r.is_leaf(v) && r.vertex_size(v) == Card::Finite(1))
        .map(|v| r.vertex_id(v).to_string())
        .collect();

    let focal_orientation = focal_orientation(&r);

    let mut stray_half_trees = Vec::new();
    for a in 0..r.arc_count() {
        if r.reverse[a] != a && is_stray_half_tree(&r, a) {
            stray_half_trees.push(r.arc_id(a).to_string());
        }
    }

    Ok(ScopoFeatures {
        stray_leaves,
        is_focal_cycle: focal_orientation.is_some(),
        focal_orientation,
        stray_half_trees,
        horocyclic_ends: Vec::new(),
        note: "a finite quotient graph has no ends, so horocyclic ends cannot occur",
    })
}

/// When the whole graph is a cycle, return a cyclic orientation whose arcs
/// all have singleton colour sets, if either of the two has one.
fn focal_orientation(r: &Resolved) -> Option<Vec<String>> {
    // A cycle: connected (validated), every vertex of valency two, and no
    // self-paired arcs (they cannot be oriented).
    if (0..r.arc_count()).any(|a| r.reverse[a] == a) {
        return None;
    }
    if (0..r.vertex_count()).any(|v| r.valency(v) != 2) {
        return None;
    }
    // Walk the cycle both ways from the first arc.
    'directions: for start in [0, r.reverse[0]] {
        let mut orientation = vec![start];
        let mut current = start;
        loop {
            let v = r.target[current];
            let next = r
                .out_arcs(v)
                .into_iter()
                .find(|&b| b != r.reverse[current])
                .expect("valency two gives a unique continuation");
            if next == start {
                break;
            }
            orientation.push(next);
            current = next;
            if orientation.len() > r.arc_count() {
                return None; // cannot happen on a genuine cycle
            }
        }
        if orientation.len() * 2 != r.arc_count() {
            continue; // walk closed early: not a single cycle
        }
        if orientation.iter().all(|&a| r.sizes[a] == Card::Finite(1)) {
            return Some(orientation.iter().map(|&a| r.arc_id(a).to_string()).collect());
        }
        // Only two cyclic orientations exist; try the reverse direction.
        continue 'directions;
    }
    None
}

/// The half-tree behind `a` (the component of the graph minus the edge of
/// `a` that contains its target) is stray when it is a tree containing no
/// leaves of the whole graph, with all arcs oriented towards the target of
/// `a` carrying singleton colours.
fn is_stray_half_tree(r: &Resolved, a: usize) -> bool {
    let banned = [a, r.reverse[a]];
    // Component of t(a) in the graph without the edge of `a`.
    let mut component = BTreeSet::from([r.target[a]]);
    let mut queue = vec![r.target[a]];
    while let Some(v) = queue.pop() {
        for b in 0..r.arc_count() {
            if banned.contains(&b) {
                continue;
            }
            if r.origin[b] == v && component.insert(r.target[b]) {
                queue.push(r.target[b]);
            }
        }
    }
    if component.contains(&r.origin[a]) {
        return false; // removing the edge did not disconnect
    }
    // The component must induce a tree: no loops or self-paired arcs, no
    // parallel edges, and edge count one less than vertex count.
    let mut inner_edges = BTreeSet::new();
    for b in 0..r.arc_count() {
        if banned.contains(&b) {
            continue;
        }
        if component.contains(&r.origin[b]) && component.contains(&r.target[b]) {
            if r.origin[b] == r.target[b] {
                return false;
            }
            inner_edges.insert((b.min(r.reverse[b]), b.max(r.reverse[b])));
        }
    }
    let mut endpoint_pairs = BTreeSet::new();
    for &(b, _) in &inner_edges {
        let pair = (
            r.origin[b].min(r.target[b]),
            r.origin[b].max(r.target[b]),
        );
        if !endpoint_pairs.insert(pair) {
            return false; // parallel edge
        }
    }
    if inner_edges.len() + 1 != component.len() {
        return false;
    }
    // No vertex of the component may be a leaf of the whole graph.
    if component.iter().any(|&v| r.is_leaf(v)) {
        return false;
    }
    // Distances towards t(a) within the component tree.
    let root = r.target[a];
    let mut dist: HashMap<usize, usize> = HashMap::from([(root, 0)]);
    let mut queue = std::collections::VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for b in 0..r.arc_count() {
            if banned.contains(&b) || r.origin[b] != v {
                continue;
            }
            let w = r.target[b];
            if component.contains(&w) && !dist.contains_key(&w) {
                dist.insert(w, dist[&v] + 1);
                queue.push_back(w);
            }
        }
    }
    // Every arc within the component pointing towards t(a) needs |X| = 1.
    for b in 0..r.arc_count() {
        if banned.contains(&b) {
            continue;
        }
        let (o, t) = (r.origin[b], r.target[b]);
        if component.contains(&o)
            && component.contains(&t)
            && dist[&t] < dist[&o]
            && r.sizes[b] != Card::Finite(1)
        {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::diagram::{ArcData, LocalAction, VertexData};

    #[test]
    fn figure3_has_only_the_empty_scopo() {
        let all = scopos(&corpus::figure3()).unwrap();
        assert_eq!(all.len(), 1);
        assert!(all[0].is_empty());
    }

    #[test]
    fn figure1_has_only_the_empty_scopo() {
        let all = scopos(&corpus::figure1()).unwrap();
        assert_eq!(all.len(), 1);
        assert!(all[0].is_empty());
    }

    #[test]
    fn leaf_arc_with_singleton_colour_is_a_scopo() {
        let d = corpus::stray_leaf();
        let all = scopos(&d).unwrap();
        assert_eq!(all.len(), 2);
        assert!(all[0].is_empty());
        assert_eq!(
            all[1].arcs().iter().collect::<Vec<_>>(),
            [&"a".to_string()]
        );
    }

    #[test]
    fn features_on_bundled_diagrams() {
        let f = scopo_features(&corpus::figure1()).unwrap();
        assert!(f.is_empty());

        let f = scopo_features(&corpus::stray_leaf()).unwrap();
        assert_eq!(f.stray_leaves, ["v"]);
        assert!(!f.is_focal_cycle);

        let f = scopo_features(&corpus::focal_cycle()).unwrap();
        assert!(f.is_focal_cycle);
        assert!(f.stray_leaves.is_empty());
        assert_eq!(f.focal_orientation.as_ref().unwrap().len(), 1);

        // Horocyclic ends never fire on finite quotient graphs.
        for d in corpus::all() {
            assert!(scopo_features(&d.diagram).unwrap().horocyclic_ends.is_empty());
        }
    }

    #[test]
    fn focal_cycle_needs_singleton_orientation() {
        // A loop pair where one direction has two colours: the singleton
        // direction still gives a focal cycle.
        let v = VertexData::new(
            "v",
            LocalAction::Concrete {
                generators: vec!["(p q)".to_string()],
            },
        );
        let arcs = vec![
            ArcData::new("a", "v", "v", "abar", vec!["c".into()]),
            ArcData::new("abar", "v", "v", "a", vec!["p".into(), "q".into()]),
        ];
        let d = LocalActionDiagram::new(vec![v], arcs);
        assert!(d.validate().ok());
        let f = scopo_features(&d).unwrap();
        assert!(f.is_focal_cycle);
        assert_eq!(f.focal_orientation, Some(vec!["a".to_string()]));

        // Scopos agree: the orientation {a} is the unique nonempty scopo.
        let all = scopos(&d).unwrap();
        assert_eq!(all.len(), 2);
        assert_eq!(all[1].arcs().iter().collect::<Vec<_>>(), [&"a".to_string()]);
    }

    #[test]
    fn self_paired_loop_is_not_a_cycle() {
        let d = corpus::figure4();
        assert!(!scopo_features(&d).unwrap().is_focal_cycle);
    }

    #[test]
    fn scopo_check_rejects_bad_sets() {
        let d = corpus::stray_leaf();
        // Reverse arc: condition 2 fails at its origin (u has another
        // incoming arc that is not present).
        let set = BTreeSet::from(["abar".to_string()]);
        assert!(Scopo::check(&d, &set).is_err());
        let ok = BTreeSet::from(["a".to_string()]);
        assert!(Scopo::check(&d, &ok).is_ok());
    }
}
