//! Finite-radius balls of the coloured tree determined by a diagram.
//!
//! Vertices are coloured paths from a root: a child is reached by choosing
//! a colour of an arc leaving the current projection, never the colour that
//! was chosen as the reverse of the previous step. The reverse colour of
//! each step is chosen canonically (the least colour of the reverse arc),
//! which makes balls deterministic and bit-identical across runs; any other
//! choice yields an isomorphic tree.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::diagram::{LadError, LocalActionDiagram};
use crate::perm::{FinitePermGroup, Perm};

mod action;
mod group;
mod recompute;

pub use action::{local_action_of, BallAutomorphism};
pub use group::{
    ball_group, check_independence, check_independence_with_cap, enumerate_root_fixing_maps,
    restriction_factorizes, BallGroup, IndependenceCheck,
};
pub use recompute::{recompute_lad, recompute_lad_with_cap, Recomputed};

/// Default cap on ball vertices; balls grow exponentially with the radius.
pub const DEFAULT_MAX_BALL_VERTICES: usize = 50_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BallError {
    #[error(transparent)]
    Lad(#[from] LadError),
    #[error("the diagram has symbolic local actions; tree balls need concrete diagrams only")]
    ConcreteOnly,
    #[error("ball would have {predicted} vertices, above the cap of {cap}")]
    TooLarge { predicted: u128, cap: usize },
    #[error("radius {given} is too small for this operation; increase radius to at least {required}")]
    RadiusTooSmall { given: usize, required: usize },
    #[error("vertex at depth {depth} is on the ball boundary: star incomplete")]
    StarIncomplete { depth: usize },
    #[error("the map is not a colour-legal ball automorphism: {0}")]
    IllegalMap(String),
    #[error("group enumeration above cap {cap}")]
    EnumerationTooLarge { cap: usize },
    #[error("internal error: {0}")]
    Internal(String),
}

pub(crate) type ColourId = usize;

#[derive(Debug, Clone)]
pub(crate) struct BallVertex {
    pub(crate) parent: Option<u32>,
    /// colour of the arc parent -> this (last entry of the label)
    pub(crate) parent_colour: ColourId,
    /// colour of the arc this -> parent (last entry of the reverse label)
    pub(crate) reverse_colour: ColourId,
    pub(crate) depth: usize,
    /// projection to a diagram vertex
    pub(crate) proj: usize,
    pub(crate) children: Vec<u32>,
}

/// A radius-`r` ball of the coloured tree of a concrete diagram, with the
/// projection to the diagram and the arc colouring.
pub struct DeltaTreeBall {
    pub(crate) radius: usize,
    pub(crate) verts: Vec<BallVertex>,
    /// global colour table, sorted; index is the colour id
    pub(crate) colours: Vec<String>,
    /// colour id -> index of the diagram arc whose colour set contains it
    pub(crate) colour_arc: Vec<usize>,
    pub(crate) gamma_vertex_ids: Vec<String>,
    pub(crate) gamma_arc_ids: Vec<String>,
    pub(crate) gamma_origin: Vec<usize>,
    pub(crate) gamma_target: Vec<usize>,
    pub(crate) gamma_reverse: Vec<usize>,
    /// per diagram vertex: the local action and its domain as colour ids
    pub(crate) groups: Vec<FinitePermGroup>,
    pub(crate) group_colours: Vec<Vec<ColourId>>,
    /// cached element lists of the local actions
    pub(crate) elements: Vec<Vec<Perm>>,
}

impl fmt::Debug for DeltaTreeBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DeltaTreeBall")
            .field("radius", &self.radius)
            .field("vertices", &self.verts.len())
            .finish()
    }
}

/// Predicted vertex count of a ball, by iterating valencies with one
/// backtracking arc forbidden after the first step.
pub fn predict_ball_size(
    diagram: &LocalActionDiagram,
    root: &str,
    radius: usize,
) -> Result<u128, BallError> {
    let r = diagram.resolve()?;
    let root_idx = r
        .vertex_index(root)
        .ok_or(LadError::UnknownVertex(root.to_string()))?;
    let size_of = |a: usize| -> u128 {
        match r.sizes[a] {
            crate::diagram::Card::Finite(n) => n as u128,
            crate::diagram::Card::Infinite => u128::MAX / 4,
        }
    };
    let mut total: u128 = 1;
    // frontier counts per incoming arc
    let mut frontier: HashMap<usize, u128> = HashMap::new();
    if radius >= 1 {
        for a in r.out_arcs(root_idx) {
            *frontier.entry(a).or_insert(0) += size_of(a);
        }
        total += frontier.values().sum::<u128>();
    }
    for _ in 2..=radius {
        let mut next: HashMap<usize, u128> = HashMap::new();
        for (&a, &count) in &frontier {
            let v = r.target[a];
            for b in r.out_arcs(v) {
                let mut m = size_of(b);
                if b == r.reverse[a] {
                    m -= 1;
                }
                if m > 0 {
                    *next.entry(b).or_insert(0) += count.saturating_mul(m);
                }
            }
        }
        total = total.saturating_add(next.values().sum::<u128>());
        frontier = next;
    }
    Ok(total)
}

/// Build the radius-`r` ball rooted over the given diagram vertex, with the
/// default vertex cap.
pub fn build_ball(
    diagram: &LocalActionDiagram,
    root: &str,
    radius: usize,
) -> Result<DeltaTreeBall, BallError> {
    build_ball_with_cap(diagram, root, radius, DEFAULT_MAX_BALL_VERTICES)
}

pub fn build_ball_with_cap(
    diagram: &LocalActionDiagram,
    root: &str,
    radius: usize,
    cap: usize,
) -> Result<DeltaTreeBall, BallError> {
    let r = diagram.resolve()?;
    if !diagram.is_all_concrete() {
        return Err(BallError::ConcreteOnly);
    }
    let root_idx = r
        .vertex_index(root)
        .ok_or(LadError::UnknownVertex(root.to_string()))?;

    let predicted = predict_ball_size(diagram, root, radius)?;
    if predicted > cap as u128 {
        return Err(BallError::TooLarge { predicted, cap });
    }

    // Global colour table in canonical order.
    let mut colours: Vec<String> = Vec::new();
    for arc in diagram.arcs() {
        colours.extend(arc.colours().iter().cloned());
    }
    colours.sort();
    let colour_index: HashMap<&str, ColourId> = colours
        .iter()
        .enumerate()
        .map(|(i, c)| (c.as_str(), i))
        .collect();
    let mut colour_arc = vec![usize::MAX; colours.len()];
    for (ai, arc) in diagram.arcs().iter().enumerate() {
        for c in arc.colours() {
            colour_arc[colour_index[c.as_str()]] = ai;
        }
    }

    let mut groups = Vec::new();
    let mut group_colours = Vec::new();
    let mut elements = Vec::new();
    for v in 0..r.vertex_count() {
        let g = r.groups[v].clone().expect("all concrete");
        group_colours.push(
            g.domain()
                .names()
                .iter()
                .map(|n| colour_index[n.as_str()])
                .collect::<Vec<_>>(),
        );
        elements.push(g.elements());
        groups.push(g);
    }

    // Per diagram vertex, its outgoing colours in canonical order.
    let out_colours: Vec<Vec<ColourId>> = (0..r.vertex_count())
        .map(|v| {
            let mut cs: Vec<ColourId> = r
                .out_arcs(v)
                .into_iter()
                .flat_map(|a| {
                    diagram.arcs()[a]
                        .colours()
                        .iter()
                        .map(|c| colour_index[c.as_str()])
                })
                .collect();
            cs.sort_unstable();
            cs
        })
        .collect();
    // Canonical reverse colour per colour: least colour of the reverse arc.
    let least_reverse: Vec<ColourId> = (0..colours.len())
        .map(|c| {
            let rev_arc = r.reverse[colour_arc[c]];
            diagram.arcs()[rev_arc]
                .colours()
                .iter()
                .map(|n| colour_index[n.as_str()])
                .min()
                .expect("validated colour sets are nonempty")
        })
        .collect();

    let mut verts = vec![BallVertex {
        parent: None,
        parent_colour: usize::MAX,
        reverse_colour: usize::MAX,
        depth: 0,
        proj: root_idx,
        children: Vec::new(),
    }];
    let mut frontier: Vec<u32> = vec![0];
    for depth in 1..=radius {
        let mut next = Vec::new();
        for &vi in &frontier {
            let proj = verts[vi as usize].proj;
            let forbidden = verts[vi as usize].reverse_colour;
            for &c in &out_colours[proj] {
                if depth > 1 && c == forbidden {
                    continue;
                }
                let arc = colour_arc[c];
                let child = BallVertex {
                    parent: Some(vi),
                    parent_colour: c,
                    reverse_colour: least_reverse[c],
                    depth,
                    proj: r.target[arc],
                    children: Vec::new(),
                };
                let idx = verts.len() as u32;
                verts.push(child);
                verts[vi as usize].children.push(idx);
                next.push(idx);
            }
        }
        frontier = next;
    }

    let ball = DeltaTreeBall {
        radius,
        verts,
        colours,
        colour_arc,
        gamma_vertex_ids: diagram.vertices().iter().map(|v| v.id().to_string()).collect(),
        gamma_arc_ids: diagram.arcs().iter().map(|a| a.id().to_string()).collect(),
        gamma_origin: r.origin.clone(),
        gamma_target: r.target.clone(),
        gamma_reverse: r.reverse.clone(),
        groups,
        group_colours,
        elements,
    };
    debug_assert_eq!(ball.verts.len() as u128, predicted);
    debug_assert!(ball.check_label_invariants());
    Ok(ball)
}

impl DeltaTreeBall {
    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn vertex_count(&self) -> usize {
        self.verts.len()
    }

    pub fn depth(&self, v: usize) -> usize {
        self.verts[v].depth
    }

    pub fn is_interior(&self, v: usize) -> bool {
        self.verts[v].depth < self.radius
    }

    /// Id of the diagram vertex this ball vertex projects to.
    pub fn projection(&self, v: usize) -> &str {
        &self.gamma_vertex_ids[self.verts[v].proj]
    }

    pub fn children(&self, v: usize) -> &[u32] {
        &self.verts[v].children
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.verts[v].parent.map(|p| p as usize)
    }

    /// The coloured-path label of a vertex.
    pub fn label(&self, v: usize) -> Vec<String> {
        let mut ids = Vec::new();
        let mut cur = v;
        while let Some(p) = self.verts[cur].parent {
            ids.push(self.verts[cur].parent_colour);
            cur = p as usize;
        }
        ids.reverse();
        ids.into_iter().map(|c| self.colours[c].clone()).collect()
    }

    /// Id of the diagram arc whose colour set contains the given colour.
    pub fn arc_of_colour(&self, colour: &str) -> &str {
        let c = self
            .colours
            .binary_search_by(|x| x.as_str().cmp(colour))
            .expect("known colour");
        &self.gamma_arc_ids[self.colour_arc[c]]
    }

    /// The reverse label of a vertex.
    pub fn reverse_label(&self, v: usize) -> Vec<String> {
        let mut ids = Vec::new();
        let mut cur = v;
        while let Some(p) = self.verts[cur].parent {
            ids.push(self.verts[cur].reverse_colour);
            cur = p as usize;
        }
        ids.reverse();
        ids.into_iter().map(|c| self.colours[c].clone()).collect()
    }

    /// Star of an interior vertex: for each outgoing ball arc, its colour,
    /// the neighbour it reaches, and the colour of the arc coming back.
    pub(crate) fn star(&self, v: usize) -> Vec<(ColourId, u32, ColourId)> {
        let mut entries = Vec::new();
        let vert = &self.verts[v];
        if let Some(p) = vert.parent {
            entries.push((vert.reverse_colour, p, vert.parent_colour));
        }
        for &c in &vert.children {
            let child = &self.verts[c as usize];
            entries.push((child.parent_colour, c, child.reverse_colour));
        }
        entries.sort_unstable();
        entries
    }

    /// The group element list of the local action at the projection of `v`.
    pub(crate) fn elements_at(&self, v: usize) -> &[Perm] {
        &self.elements[self.verts[v].proj]
    }

    /// Translate a colour id to the domain index of the local action at the
    /// given diagram vertex.
    pub(crate) fn domain_index(&self, proj: usize, colour: ColourId) -> usize {
        self.group_colours[proj]
            .iter()
            .position(|&c| c == colour)
            .expect("colour belongs to the vertex domain")
    }

    pub(crate) fn apply_sigma(&self, proj: usize, sigma: &Perm, colour: ColourId) -> ColourId {
        self.group_colours[proj][sigma.apply(self.domain_index(proj, colour))]
    }

    /// Verify the coloured-path label invariants at every vertex: colour
    /// types compose along the projection, no step undoes the previous
    /// reverse colour, reverse labels live on reverse arcs, and prefixes of
    /// reverse labels agree with reverse labels of prefixes.
    pub fn check_label_invariants(&self) -> bool {
        for v in 0..self.verts.len() {
            let vert = &self.verts[v];
            let Some(p) = vert.parent else { continue };
            let parent = &self.verts[p as usize];
            let arc = self.colour_arc[vert.parent_colour];
            // o(p(c_{i+1})) = t(p(c_i)) and the vertex projects to t(p(c)).
            if self.gamma_origin[arc] != parent.proj || self.gamma_target[arc] != vert.proj {
                return false;
            }
            // p(d_i) = reverse(p(c_i))
            if self.colour_arc[vert.reverse_colour] != self.gamma_reverse[arc] {
                return false;
            }
            // c_{i+1} != d_i
            if parent.parent.is_some() && vert.parent_colour == parent.reverse_colour {
                return false;
            }
            // Prefix coherence holds by construction: labels extend parents.
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn figure3_ball_counts() {
        let d = corpus::figure3();
        let ball = build_ball(&d, "v", 2).unwrap();
        // Root valency 2, children have valency 4 with one arc back.
        assert_eq!(ball.vertex_count(), 9);
        assert_eq!(predict_ball_size(&d, "v", 2).unwrap(), 9);
        assert_eq!(ball.children(0).len(), 2);
        for &c in ball.children(0) {
            assert_eq!(ball.projection(c as usize), "w");
            assert_eq!(ball.children(c as usize).len(), 3);
        }
    }

    #[test]
    fn bm_s3_radius_one() {
        let ball = build_ball(&corpus::bm_s3(), "v", 1).unwrap();
        assert_eq!(ball.vertex_count(), 4);
    }

    #[test]
    fn radius_zero_is_a_single_vertex() {
        for entry in corpus::all() {
            if !entry.diagram.is_all_concrete() {
                continue;
            }
            let root = entry.diagram.vertex_ids()[0].to_string();
            let ball = build_ball(&entry.diagram, &root, 0).unwrap();
            assert_eq!(ball.vertex_count(), 1);
            assert!(ball.label(0).is_empty());
        }
    }

    #[test]
    fn symbolic_diagrams_are_refused() {
        let err = build_ball(&corpus::figure4(), "v", 1).unwrap_err();
        assert_eq!(err, BallError::ConcreteOnly);
    }

    #[test]
    fn cap_is_enforced_with_size_report() {
        let err = build_ball_with_cap(&corpus::exercise(), "u1", 3, 100).unwrap_err();
        match err {
            BallError::TooLarge { predicted, cap } => {
                assert_eq!(predicted, 204);
                assert_eq!(cap, 100);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn labels_satisfy_invariants_and_are_deterministic() {
        for entry in corpus::all() {
            if !entry.diagram.is_all_concrete() {
                continue;
            }
            let root = entry.diagram.vertex_ids()[0].to_string();
            let b1 = build_ball(&entry.diagram, &root, 2).unwrap();
            let b2 = build_ball(&entry.diagram, &root, 2).unwrap();
            assert!(b1.check_label_invariants(), "{}", entry.name);
            assert_eq!(b1.vertex_count(), b2.vertex_count());
            for v in 0..b1.vertex_count() {
                assert_eq!(b1.label(v), b2.label(v));
                assert_eq!(b1.reverse_label(v), b2.reverse_label(v));
                assert_eq!(b1.label(v).len(), b1.reverse_label(v).len());
            }
        }
    }

    #[test]
    fn predicted_size_matches_construction() {
        for entry in corpus::all() {
            if !entry.diagram.is_all_concrete() {
                continue;
            }
            for root in entry.diagram.vertex_ids() {
                for radius in 0..=3 {
                    let predicted = predict_ball_size(&entry.diagram, root, radius).unwrap();
                    if predicted > 5_000 {
                        continue;
                    }
                    let ball = build_ball(&entry.diagram, root, radius).unwrap();
                    assert_eq!(ball.vertex_count() as u128, predicted, "{}", entry.name);
                }
            }
        }
    }
}
