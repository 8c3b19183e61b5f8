//! Local action diagrams: a connected graph with arc-reversal, disjoint
//! colour sets on arcs, and a permutation group at each vertex whose orbits
//! are exactly the colour sets of the arcs leaving it.
//!
//! The raw type can hold arbitrary (possibly broken) data; [`validate`]
//! reports violations as data, and every other operation resolves the
//! diagram first and refuses invalid input.
//!
//! [`validate`]: LocalActionDiagram::validate

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use thiserror::Error;

use crate::perm::{ColourDomain, FinitePermGroup, PermError};

mod build;
mod cotree;
mod iso;
mod props;
mod scopo;

pub use build::{box_product, burger_mozes, from_pair};
pub(crate) use build::rename_cycles;
pub use cotree::{all_cotrees, cotree_scopo, smallest_cotree, Cotree, CotreeScopo, ProjectingPath};
pub use iso::{iso, verify_iso, LadIsomorphism};
pub use props::{
    compact_generation, g_plus_trivial, geometric_density, local_compactness, property_report,
    simplicity_report, std_membership, Density, DensityObstruction, Finding, PropertyReport,
    SimplicityReport, StdReport, Verdict,
};
pub use scopo::{scopo_features, scopos, Scopo, ScopoFeatures};

/// Cardinality of a colour set: an exact finite count or a declared infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Card {
    Finite(u64),
    Infinite,
}

impl Card {
    pub fn is_one(self) -> bool {
        self == Card::Finite(1)
    }
}

impl fmt::Display for Card {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Card::Finite(n) => write!(f, "{n}"),
            Card::Infinite => write!(f, "inf"),
        }
    }
}

/// Declared properties of a symbolic local action. Missing flags make the
/// predicates that need them answer "unknown".
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SymbolicFlags {
    pub closed: Option<bool>,
    pub compactly_generated: Option<bool>,
    pub subdegree_finite: Option<bool>,
    pub semiregular: Option<bool>,
    pub generated_by_point_stabilizers: Option<bool>,
    pub nontrivial: Option<bool>,
    pub stabilizer_orbits_finite: Option<bool>,
}

/// The local action at a vertex: either a concrete finite permutation group
/// over the colours of the outgoing arcs (given in cycle notation), or a
/// symbolic stand-in carrying declared orbit cardinalities and flags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LocalAction {
    Concrete { generators: Vec<String> },
    Symbolic {
        /// arc id -> declared orbit cardinality, one entry per outgoing arc
        orbits: BTreeMap<String, Card>,
        flags: SymbolicFlags,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexData {
    id: String,
    action: LocalAction,
}

impl VertexData {
    pub fn new(id: impl Into<String>, action: LocalAction) -> Self {
        VertexData {
            id: id.into(),
            action,
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn action(&self) -> &LocalAction {
        &self.action
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcData {
    id: String,
    origin: String,
    target: String,
    reverse: String,
    colours: Vec<String>,
}

impl ArcData {
    pub fn new(
        id: impl Into<String>,
        origin: impl Into<String>,
        target: impl Into<String>,
        reverse: impl Into<String>,
        colours: Vec<String>,
    ) -> Self {
        let mut colours = colours;
        colours.sort();
        ArcData {
            id: id.into(),
            origin: origin.into(),
            target: target.into(),
            reverse: reverse.into(),
            colours,
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn origin(&self) -> &str {
        &self.origin
    }

    pub fn target(&self) -> &str {
        &self.target
    }

    pub fn reverse(&self) -> &str {
        &self.reverse
    }

    pub fn colours(&self) -> &[String] {
        &self.colours
    }

    pub fn is_self_paired(&self) -> bool {
        self.id == self.reverse
    }

    pub fn is_loop(&self) -> bool {
        self.origin == self.target
    }
}

/// A (possibly not yet validated) local action diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalActionDiagram {
    vertices: Vec<VertexData>,
    arcs: Vec<ArcData>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LadError {
    #[error("invalid local action diagram:\n{0}")]
    Invalid(ValidationReport),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("unknown arc {0:?}")]
    UnknownArc(String),
    #[error("{0}")]
    Unsupported(String),
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// A single named violation of the diagram invariants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub subject: String,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.subject, self.message)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            write!(f, "ok")
        } else {
            for (i, v) in self.violations.iter().enumerate() {
                if i > 0 {
                    writeln!(f)?;
                }
                write!(f, "- {v}")?;
            }
            Ok(())
        }
    }
}

impl LocalActionDiagram {
    /// Assemble a diagram from raw parts. Vertices and arcs are stored
    /// sorted by id so equal diagrams compare and serialize identically.
    pub fn new(vertices: Vec<VertexData>, arcs: Vec<ArcData>) -> Self {
        let mut vertices = vertices;
        let mut arcs = arcs;
        vertices.sort_by(|a, b| a.id.cmp(&b.id));
        arcs.sort_by(|a, b| a.id.cmp(&b.id));
        LocalActionDiagram { vertices, arcs }
    }

    pub fn vertices(&self) -> &[VertexData] {
        &self.vertices
    }

    pub fn arcs(&self) -> &[ArcData] {
        &self.arcs
    }

    pub fn vertex(&self, id: &str) -> Option<&VertexData> {
        self.vertices.iter().find(|v| v.id == id)
    }

    pub fn arc(&self, id: &str) -> Option<&ArcData> {
        self.arcs.iter().find(|a| a.id == id)
    }

    pub fn vertex_ids(&self) -> Vec<&str> {
        self.vertices.iter().map(|v| v.id.as_str()).collect()
    }

    pub fn arc_ids(&self) -> Vec<&str> {
        self.arcs.iter().map(|a| a.id.as_str()).collect()
    }

    pub fn out_arc_ids(&self, vertex: &str) -> Vec<&str> {
        self.arcs
            .iter()
            .filter(|a| a.origin == vertex)
            .map(|a| a.id.as_str())
            .collect()
    }

    /// Declared or counted colour-set size of an arc.
    pub fn arc_size(&self, arc_id: &str) -> Option<Card> {
        let arc = self.arc(arc_id)?;
        match self.vertex(&arc.origin).map(VertexData::action) {
            Some(LocalAction::Symbolic { orbits, .. }) => orbits.get(arc_id).copied(),
            Some(LocalAction::Concrete { .. }) => Some(Card::Finite(arc.colours.len() as u64)),
            None => None,
        }
    }

    /// The concrete local action at a vertex, with the colours of its
    /// outgoing arcs as domain. `None` for symbolic vertices.
    pub fn local_group(&self, vertex: &str) -> Result<Option<FinitePermGroup>, LadError> {
        let resolved = self.resolve()?;
        let idx = resolved
            .vertex_index(vertex)
            .ok_or_else(|| LadError::UnknownVertex(vertex.to_string()))?;
        Ok(resolved.groups[idx].clone())
    }

    pub fn is_all_concrete(&self) -> bool {
        self.vertices
            .iter()
            .all(|v| matches!(v.action, LocalAction::Concrete { .. }))
    }

    /// Check every diagram invariant; violations are data, not faults.
    pub fn validate(&self) -> ValidationReport {
        match self.resolve_inner() {
            Ok(_) => ValidationReport::default(),
            Err(report) => report,
        }
    }

    pub(crate) fn resolve(&self) -> Result<Resolved<'_>, LadError> {
        self.resolve_inner().map_err(LadError::Invalid)
    }

    fn resolve_inner(&self) -> Result<Resolved<'_>, ValidationReport> {
        let mut report = ValidationReport::default();
        macro_rules! bad {
            ($subject:expr, $message:expr $(,)?) => {
                report.violations.push(Violation {
                    subject: $subject.to_string(),
                    message: $message,
                })
            };
        }

        if self.vertices.is_empty() {
            bad!("graph", "diagram has no vertices".to_string());
            return Err(report);
        }

        let mut vertex_index = HashMap::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if vertex_index.insert(v.id.as_str(), i).is_some() {
                bad!(&format!("vertex {}", v.id), "duplicate vertex id".to_string());
            }
        }
        let mut arc_index = HashMap::new();
        for (i, a) in self.arcs.iter().enumerate() {
            if arc_index.insert(a.id.as_str(), i).is_some() {
                bad!(&format!("arc {}", a.id), "duplicate arc id".to_string());
            }
        }
        if !report.ok() {
            return Err(report);
        }

        // Structure: endpoints exist, reversal is an involution matching them.
        let mut origin = Vec::with_capacity(self.arcs.len());
        let mut target = Vec::with_capacity(self.arcs.len());
        let mut reverse = Vec::with_capacity(self.arcs.len());
        for a in &self.arcs {
            let subject = format!("arc {}", a.id);
            let o = vertex_index.get(a.origin.as_str()).copied();
            let t = vertex_index.get(a.target.as_str()).copied();
            let r = arc_index.get(a.reverse.as_str()).copied();
            if o.is_none() {
                bad!(&subject, format!("origin {:?} is not a vertex", a.origin));
            }
            if t.is_none() {
                bad!(&subject, format!("target {:?} is not a vertex", a.target));
            }
            if r.is_none() {
                bad!(&subject, format!("reverse {:?} is not an arc", a.reverse));
            }
            origin.push(o.unwrap_or(0));
            target.push(t.unwrap_or(0));
            reverse.push(r.unwrap_or(0));
        }
        if !report.ok() {
            return Err(report);
        }
        for (i, a) in self.arcs.iter().enumerate() {
            let subject = format!("arc {}", a.id);
            let r = reverse[i];
            if reverse[r] != i {
                bad!(&subject, format!("reversal is not an involution: reverse of {:?} is {:?}", a.reverse, self.arcs[r].reverse));
            }
            if origin[r] != target[i] || target[r] != origin[i] {
                bad!(&subject, format!("reverse arc {:?} does not swap origin and target", a.reverse));
            }
        }

        // Connectivity, and no isolated vertices.
        let mut seen = vec![false; self.vertices.len()];
        let mut queue = vec![0usize];
        seen[0] = true;
        while let Some(v) = queue.pop() {
            for (i, _) in self.arcs.iter().enumerate() {
                if origin[i] == v && !seen[target[i]] {
                    seen[target[i]] = true;
                    queue.push(target[i]);
                }
                if target[i] == v && !seen[origin[i]] {
                    seen[origin[i]] = true;
                    queue.push(origin[i]);
                }
            }
        }
        for (i, v) in self.vertices.iter().enumerate() {
            if !seen[i] {
                bad!(&format!("vertex {}", v.id), "graph is not connected".to_string());
            }
            if !self.arcs.iter().any(|a| a.origin == v.id) {
                bad!(&format!("vertex {}", v.id), "vertex has no outgoing arc".to_string());
            }
        }

        // Colour sets: usable names, disjoint across arcs; symbolic-origin
        // arcs declare cardinalities instead of listing colours.
        let mut colour_owner: HashMap<&str, &str> = HashMap::new();
        let mut sizes = Vec::with_capacity(self.arcs.len());
        for (i, a) in self.arcs.iter().enumerate() {
            let subject = format!("arc {}", a.id);
            let origin_action = &self.vertices[origin[i]].action;
            match origin_action {
                LocalAction::Concrete { .. } => {
                    if a.colours.is_empty() {
                        bad!(&subject, "colour set is empty".to_string());
                    }
                    for c in &a.colours {
                        if ColourDomain::new([c.as_str()]).is_err() {
                            bad!(&subject, format!("colour name {c:?} is unusable"));
                        }
                        match colour_owner.insert(c.as_str(), a.id.as_str()) {
                            None => {}
                            Some(other) => bad!(
                                &subject,
                                format!("colour {c:?} also appears on arc {other:?}: colour sets must be disjoint"),
                            ),
                        }
                    }
                    let mut dedup = a.colours.clone();
                    dedup.dedup();
                    if dedup.len() != a.colours.len() {
                        bad!(&subject, "colour set has repeated names".to_string());
                    }
                    sizes.push(Card::Finite(a.colours.len() as u64));
                }
                LocalAction::Symbolic { orbits, .. } => {
                    if !a.colours.is_empty() {
                        bad!(
                            &subject,
                            "arc lists colours but its origin has a symbolic local action; declare the cardinality in the orbits map instead".to_string(),
                        );
                    }
                    match orbits.get(&a.id) {
                        Some(Card::Finite(0)) => {
                            bad!(&subject, "declared orbit cardinality is zero; colour sets are nonempty".to_string());
                            sizes.push(Card::Finite(0));
                        }
                        Some(&card) => sizes.push(card),
                        None => {
                            bad!(
                                &subject,
                                format!(
                                    "symbolic action at {:?} declares no orbit for this arc",
                                    a.origin
                                ),
                            );
                            sizes.push(Card::Finite(0));
                        }
                    }
                }
            }
        }

        // Per-vertex orbit condition.
        let mut groups: Vec<Option<FinitePermGroup>> = Vec::with_capacity(self.vertices.len());
        for (vi, v) in self.vertices.iter().enumerate() {
            let subject = format!("vertex {}", v.id);
            let out: Vec<usize> = (0..self.arcs.len()).filter(|&i| origin[i] == vi).collect();
            match &v.action {
                LocalAction::Concrete { generators } => {
                    let mut colours: Vec<String> = Vec::new();
                    for &i in &out {
                        colours.extend(self.arcs[i].colours.iter().cloned());
                    }
                    let domain = match ColourDomain::new(colours) {
                        Ok(d) => d,
                        Err(e) => {
                            bad!(&subject, format!("colour domain is broken: {e}"));
                            groups.push(None);
                            continue;
                        }
                    };
                    let group = match FinitePermGroup::from_cycles(domain, generators) {
                        Ok(g) => g,
                        Err(e) => {
                            bad!(&subject, format!("bad generator: {e}"));
                            groups.push(None);
                            continue;
                        }
                    };
                    // Orbits must be exactly the colour sets of outgoing arcs.
                    let orbit_partition: BTreeSet<Vec<String>> =
                        group.orbit_names().into_iter().collect();
                    let colour_partition: BTreeSet<Vec<String>> = out
                        .iter()
                        .map(|&i| self.arcs[i].colours.clone())
                        .collect();
                    if orbit_partition != colour_partition {
                        bad!(
                            &subject,
                            format!(
                                "orbit partition {:?} differs from the colour partition {:?}",
                                orbit_partition, colour_partition
                            ),
                        );
                    }
                    groups.push(Some(group));
                }
                LocalAction::Symbolic { orbits, .. } => {
                    let out_ids: BTreeSet<&str> =
                        out.iter().map(|&i| self.arcs[i].id.as_str()).collect();
                    let declared: BTreeSet<&str> = orbits.keys().map(String::as_str).collect();
                    if out_ids != declared {
                        bad!(
                            &subject,
                            format!(
                                "symbolic orbits {:?} do not cover exactly the outgoing arcs {:?}",
                                declared, out_ids
                            ),
                        );
                    }
                    groups.push(None);
                }
            }
        }

        if !report.ok() {
            return Err(report);
        }
        Ok(Resolved {
            diagram: self,
            origin,
            target,
            reverse,
            sizes,
            groups,
        })
    }
}

/// Index-resolved view of a valid diagram, shared by the heavier operations.
pub(crate) struct Resolved<'a> {
    pub(crate) diagram: &'a LocalActionDiagram,
    pub(crate) origin: Vec<usize>,
    pub(crate) target: Vec<usize>,
    pub(crate) reverse: Vec<usize>,
    pub(crate) sizes: Vec<Card>,
    /// concrete local action per vertex, `None` when symbolic
    pub(crate) groups: Vec<Option<FinitePermGroup>>,
}

impl<'a> Resolved<'a> {
    pub(crate) fn vertex_count(&self) -> usize {
        self.diagram.vertices.len()
    }

    pub(crate) fn arc_count(&self) -> usize {
        self.diagram.arcs.len()
    }

    pub(crate) fn vertex_id(&self, v: usize) -> &str {
        &self.diagram.vertices[v].id
    }

    pub(crate) fn arc_id(&self, a: usize) -> &str {
        &self.diagram.arcs[a].id
    }

    pub(crate) fn vertex_index(&self, id: &str) -> Option<usize> {
        self.diagram.vertices.iter().position(|v| v.id == id)
    }

    pub(crate) fn arc_index(&self, id: &str) -> Option<usize> {
        self.diagram.arcs.iter().position(|a| a.id == id)
    }

    pub(crate) fn action(&self, v: usize) -> &'a LocalAction {
        &self.diagram.vertices[v].action
    }

    pub(crate) fn out_arcs(&self, v: usize) -> Vec<usize> {
        (0..self.arc_count()).filter(|&a| self.origin[a] == v).collect()
    }

    pub(crate) fn in_arcs(&self, v: usize) -> Vec<usize> {
        (0..self.arc_count()).filter(|&a| self.target[a] == v).collect()
    }

    pub(crate) fn valency(&self, v: usize) -> usize {
        self.out_arcs(v).len()
    }

    /// Size of the full colour set at a vertex.
    pub(crate) fn vertex_size(&self, v: usize) -> Card {
        let mut total = 0u64;
        for a in self.out_arcs(v) {
            match self.sizes[a] {
                Card::Infinite => return Card::Infinite,
                Card::Finite(n) => total += n,
            }
        }
        Card::Finite(total)
    }

    /// Distinct edges, each as the sorted pair of arc indices.
    pub(crate) fn edges(&self) -> Vec<(usize, usize)> {
        let mut edges = BTreeSet::new();
        for a in 0..self.arc_count() {
            let r = self.reverse[a];
            edges.insert((a.min(r), a.max(r)));
        }
        edges.into_iter().collect()
    }

    /// A leaf has exactly one edge containing it, and that edge is not a loop.
    pub(crate) fn is_leaf(&self, v: usize) -> bool {
        let incident: Vec<(usize, usize)> = self
            .edges()
            .into_iter()
            .filter(|&(a, _)| {
                self.origin[a] == v || self.target[a] == v
            })
            .collect();
        incident.len() == 1 && {
            let (a, _) = incident[0];
            self.origin[a] != self.target[a]
        }
    }

    /// Simple connected acyclic graph: no loops, no parallel edges, and
    /// exactly one fewer edge than vertices.
    pub(crate) fn is_tree(&self) -> bool {
        let edges = self.edges();
        if edges.iter().any(|&(a, _)| self.origin[a] == self.target[a]) {
            return false;
        }
        let mut endpoints = HashSet::new();
        for &(a, _) in &edges {
            let pair = (
                self.origin[a].min(self.target[a]),
                self.origin[a].max(self.target[a]),
            );
            if !endpoints.insert(pair) {
                return false; // parallel edge
            }
        }
        edges.len() + 1 == self.vertex_count()
    }

    /// Undirected distance matrix over vertices.
    pub(crate) fn distances(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut dist = vec![vec![usize::MAX; n]; n];
        for start in 0..n {
            dist[start][start] = 0;
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for a in self.out_arcs(v) {
                    let w = self.target[a];
                    if dist[start][w] == usize::MAX {
                        dist[start][w] = dist[start][v] + 1;
                        queue.push_back(w);
                    }
                }
            }
        }
        dist
    }

    pub(crate) fn diameter(&self) -> usize {
        self.distances()
            .iter()
            .flatten()
            .copied()
            .max()
            .unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn bundled_figures_validate() {
        assert!(corpus::figure1().validate().ok());
        assert!(corpus::figure3().validate().ok());
        assert!(corpus::figure4().validate().ok());
        assert!(corpus::figure5().validate().ok());
        assert!(corpus::stray_leaf().validate().ok());
        assert!(corpus::focal_cycle().validate().ok());
        assert!(corpus::exercise().validate().ok());
    }

    #[test]
    fn orbit_condition_is_enforced() {
        // Figure 1 with the local action at v made trivial: orbits become
        // singletons and no longer match the colour partition.
        let mut d = corpus::figure1();
        let v = d
            .vertices
            .iter_mut()
            .find(|v| v.id == "v")
            .expect("vertex v");
        v.action = LocalAction::Concrete { generators: vec![] };
        let report = d.validate();
        assert!(!report.ok());
        assert!(report
            .violations
            .iter()
            .any(|x| x.subject == "vertex v" && x.message.contains("orbit partition")));
    }

    #[test]
    fn colour_disjointness_is_enforced() {
        let mut d = corpus::figure1();
        // Make X_b share the colour "1" with X_a.
        for arc in &mut d.arcs {
            if arc.id == "b" {
                arc.colours = vec!["1".to_string(), "9".to_string()];
            }
        }
        // Keep the local action consistent with the new names so the only
        // violation is the clash itself.
        let report = d.validate();
        assert!(!report.ok());
        assert!(report
            .violations
            .iter()
            .any(|v| v.message.contains("disjoint")));
    }

    #[test]
    fn broken_reversal_is_reported() {
        let v = VertexData::new(
            "v",
            LocalAction::Concrete {
                generators: vec![],
            },
        );
        let w = VertexData::new(
            "w",
            LocalAction::Concrete {
                generators: vec![],
            },
        );
        let arcs = vec![
            ArcData::new("a", "v", "w", "a", vec!["1".into()]),
            ArcData::new("b", "w", "v", "b", vec!["2".into()]),
        ];
        let d = LocalActionDiagram::new(vec![v, w], arcs);
        let report = d.validate();
        assert!(!report.ok());
        assert!(report
            .violations
            .iter()
            .any(|v| v.message.contains("swap origin and target")));
    }
}
