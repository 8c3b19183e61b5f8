//! Theorem-backed predicates over local action diagrams.
//!
//! Verdicts are three-valued: concrete local actions are computed exactly,
//! symbolic ones answer from their declared flags, and a predicate that
//! needs an undeclared flag says "unknown" rather than guessing.

use std::fmt;

use serde::Serialize;

use super::cotree::all_cotrees;
use super::{
    cotree_scopo, scopo_features, smallest_cotree, LadError, LocalAction, LocalActionDiagram,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Yes => write!(f, "yes"),
            Verdict::No => write!(f, "no"),
            Verdict::Unknown => write!(f, "unknown"),
        }
    }
}

/// A verdict together with its witness: the scopo feature, vertex, arc or
/// flag that decides it, or the missing flag that blocks a decision.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub verdict: Verdict,
    pub witness: String,
}

impl Finding {
    fn yes(witness: impl Into<String>) -> Self {
        Finding {
            verdict: Verdict::Yes,
            witness: witness.into(),
        }
    }

    fn no(witness: impl Into<String>) -> Self {
        Finding {
            verdict: Verdict::No,
            witness: witness.into(),
        }
    }

    fn unknown(witness: impl Into<String>) -> Self {
        Finding {
            verdict: Verdict::Unknown,
            witness: witness.into(),
        }
    }
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.verdict, self.witness)
    }
}

/// One obstruction to geometric density.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DensityObstruction {
    StrayLeaf { vertex: String },
    FocalCycle { orientation: Vec<String> },
    StrayHalfTree { arc: String },
    HorocyclicEnd { end: String },
}

impl fmt::Display for DensityObstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DensityObstruction::StrayLeaf { vertex } => write!(f, "stray leaf {vertex}"),
            DensityObstruction::FocalCycle { orientation } => {
                write!(f, "focal cycle oriented along {}", orientation.join(" "))
            }
            DensityObstruction::StrayHalfTree { arc } => write!(f, "stray half-tree behind {arc}"),
            DensityObstruction::HorocyclicEnd { end } => write!(f, "horocyclic end {end}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Density {
    pub dense: bool,
    pub obstruction: Option<DensityObstruction>,
}

/// Geometric density read from the feature checklist: dense exactly when
/// there is no stray leaf, the diagram is not a focal cycle, and there are
/// no stray half-trees or horocyclic ends. Equivalently, the empty scopo is
/// the only scopo; the equivalence is cross-checked in the test suite.
pub fn geometric_density(diagram: &LocalActionDiagram) -> Result<Density, LadError> {
    let features = scopo_features(diagram)?;
    let obstruction = if let Some(v) = features.stray_leaves.first() {
        Some(DensityObstruction::StrayLeaf { vertex: v.clone() })
    } else if features.is_focal_cycle {
        Some(DensityObstruction::FocalCycle {
            orientation: features.focal_orientation.clone().unwrap_or_default(),
        })
    } else if let Some(a) = features.stray_half_trees.first() {
        Some(DensityObstruction::StrayHalfTree { arc: a.clone() })
    } else {
        features
            .horocyclic_ends
            .first()
            .map(|e| DensityObstruction::HorocyclicEnd { end: e.clone() })
    };
    Ok(Density {
        dense: obstruction.is_none(),
        obstruction,
    })
}

fn density_finding(diagram: &LocalActionDiagram) -> Result<Finding, LadError> {
    let d = geometric_density(diagram)?;
    Ok(match d.obstruction {
        None => Finding::yes("no stray leaves, focal cycle, stray half-trees or horocyclic ends"),
        Some(o) => Finding::no(o.to_string()),
    })
}

/// Three-valued conjunction over per-vertex facts.
fn conjunction(parts: Vec<(Verdict, String)>, all_good: &str) -> Finding {
    if let Some((_, w)) = parts.iter().find(|(v, _)| *v == Verdict::No) {
        return Finding::no(w.clone());
    }
    if let Some((_, w)) = parts.iter().find(|(v, _)| *v == Verdict::Unknown) {
        return Finding::unknown(w.clone());
    }
    Finding::yes(all_good)
}

/// Whether every vertex's local action is semiregular; exactly then is the
/// subgroup generated by arc stabilizers of the universal group trivial.
pub fn g_plus_trivial(diagram: &LocalActionDiagram) -> Result<Finding, LadError> {
    let r = diagram.resolve()?;
    let mut parts = Vec::new();
    for v in 0..r.vertex_count() {
        let id = r.vertex_id(v);
        match (&r.groups[v], r.action(v)) {
            (Some(group), _) => {
                if group.is_semiregular() {
                    parts.push((Verdict::Yes, format!("local action at {id} is semiregular")));
                } else {
                    parts.push((
                        Verdict::No,
                        format!("local action at {id} has a nontrivial point stabilizer"),
                    ));
                }
            }
            (None, LocalAction::Symbolic { flags, .. }) => match flags.semiregular {
                Some(true) => {
                    parts.push((Verdict::Yes, format!("{id} declares semiregular")));
                }
                Some(false) => {
                    parts.push((Verdict::No, format!("{id} declares semiregular = false")));
                }
                None => parts.push((
                    Verdict::Unknown,
                    format!("{id} does not declare the semiregular flag"),
                )),
            },
            (None, LocalAction::Concrete { .. }) => unreachable!("resolved concrete has a group"),
        }
    }
    Ok(conjunction(parts, "every local action is semiregular"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimplicityReport {
    pub verdict: Verdict,
    pub reasons: Vec<String>,
}

impl fmt::Display for SimplicityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.verdict)?;
        if !self.reasons.is_empty() {
            write!(f, " ({})", self.reasons.join("; "))?;
        }
        Ok(())
    }
}

/// Whether the universal group is nondiscrete, abstractly simple and acts
/// with translation: the quotient graph is a tree, the diagram is
/// irreducible, every local action is closed and generated by point
/// stabilizers, and some local action is nontrivial.
///
/// The conditions are evaluated on the diagram as given, which settles the
/// question exactly when the diagram is irreducible (then the whole tree is
/// the only invariant subtree). For reducible diagrams the verdict is
/// unknown: deciding would need the induced subaction on an invariant
/// subtree, which this tool does not model.
pub fn simplicity_report(diagram: &LocalActionDiagram) -> Result<SimplicityReport, LadError> {
    let r = diagram.resolve()?;
    let density = geometric_density(diagram)?;
    if !density.dense {
        return Ok(SimplicityReport {
            verdict: Verdict::Unknown,
            reasons: vec![format!(
                "not decided by this tool: the diagram is reducible ({})",
                density.obstruction.expect("not dense").to_string()
            )],
        });
    }

    let mut reasons = Vec::new();
    let mut unknowns = Vec::new();

    if !r.is_tree() {
        reasons.push("Γ is not a tree".to_string());
    }

    let mut some_nontrivial = Verdict::No;
    let mut nontrivial_unknowns = false;
    for v in 0..r.vertex_count() {
        let id = r.vertex_id(v);
        match (&r.groups[v], r.action(v)) {
            (Some(group), _) => {
                if !group.is_generated_by_point_stabilizers() {
                    reasons.push(format!(
                        "local action at {id} is not generated by point stabilizers"
                    ));
                }
                if !group.is_trivial() {
                    some_nontrivial = Verdict::Yes;
                }
            }
            (None, LocalAction::Symbolic { flags, .. }) => {
                match flags.closed {
                    Some(true) => {}
                    Some(false) => reasons.push(format!("local action at {id} is not closed")),
                    None => unknowns.push(format!("{id} does not declare the closed flag")),
                }
                match flags.generated_by_point_stabilizers {
                    Some(true) => {}
                    Some(false) => reasons.push(format!(
                        "local action at {id} is not generated by point stabilizers"
                    )),
                    None => unknowns.push(format!(
                        "{id} does not declare the generated_by_point_stabilizers flag"
                    )),
                }
                match flags.nontrivial {
                    Some(true) => some_nontrivial = Verdict::Yes,
                    Some(false) => {}
                    None => nontrivial_unknowns = true,
                }
            }
            (None, LocalAction::Concrete { .. }) => unreachable!(),
        }
    }
    if some_nontrivial == Verdict::No {
        if nontrivial_unknowns {
            unknowns.push("no local action is known to be nontrivial".to_string());
        } else {
            reasons.push("every local action is trivial".to_string());
        }
    }

    Ok(if !reasons.is_empty() {
        SimplicityReport {
            verdict: Verdict::No,
            reasons,
        }
    } else if !unknowns.is_empty() {
        SimplicityReport {
            verdict: Verdict::Unknown,
            reasons: unknowns,
        }
    } else {
        SimplicityReport {
            verdict: Verdict::Yes,
            reasons: vec![
                "Γ is a tree, the diagram is irreducible, all local actions are closed and generated by point stabilizers, and some local action is nontrivial"
                    .to_string(),
            ],
        }
    })
}

/// Local compactness of the universal group: for every arc `a` whose
/// reverse avoids the scopo of the smallest cotree, the point stabilizers
/// of the local action at the origin of `a` must have finite orbits.
/// Concrete actions pass automatically; symbolic ones answer via the
/// `stabilizer_orbits_finite` flag.
pub fn local_compactness(diagram: &LocalActionDiagram) -> Result<Finding, LadError> {
    let r = diagram.resolve()?;
    let cotree = smallest_cotree(diagram)?;
    let o_c = cotree_scopo(diagram, &cotree)?;
    let mut parts = Vec::new();
    for a in 0..r.arc_count() {
        let reverse_id = r.arc_id(r.reverse[a]);
        if o_c.arcs.contains(reverse_id) {
            continue;
        }
        let v = r.origin[a];
        let id = r.vertex_id(v);
        match (&r.groups[v], r.action(v)) {
            (Some(_), _) => parts.push((
                Verdict::Yes,
                format!("finite local action at {id} has finite stabilizer orbits"),
            )),
            (None, LocalAction::Symbolic { flags, .. }) => match flags.stabilizer_orbits_finite {
                Some(true) => parts.push((
                    Verdict::Yes,
                    format!("{id} declares stabilizer_orbits_finite"),
                )),
                Some(false) => parts.push((
                    Verdict::No,
                    format!(
                        "arc {}: {id} declares stabilizer_orbits_finite = false",
                        r.arc_id(a)
                    ),
                )),
                None => parts.push((
                    Verdict::Unknown,
                    format!("{id} does not declare the stabilizer_orbits_finite flag"),
                )),
            },
            (None, LocalAction::Concrete { .. }) => unreachable!(),
        }
    }
    Ok(conjunction(
        parts,
        "all relevant stabilizer orbits are finite",
    ))
}

/// Compact generation of the universal group, assuming local compactness:
/// some cotree must consist entirely of vertices with compactly generated
/// local actions. Finite graphs keep the cotrees finite, so the condition
/// is an existential over all cotrees; on a graph that is not a tree this
/// reduces to the unique smallest cotree.
pub fn compact_generation(diagram: &LocalActionDiagram) -> Result<Finding, LadError> {
    let lc = local_compactness(diagram)?;
    if lc.verdict != Verdict::Yes {
        return Ok(Finding::unknown(format!(
            "not applicable: local compactness is {} ({})",
            lc.verdict, lc.witness
        )));
    }
    let r = diagram.resolve()?;
    let vertex_cg = |id: &str| -> Verdict {
        let v = r.vertex_index(id).expect("cotree vertex exists");
        match (&r.groups[v], r.action(v)) {
            (Some(_), _) => Verdict::Yes,
            (None, LocalAction::Symbolic { flags, .. }) => match flags.compactly_generated {
                Some(true) => Verdict::Yes,
                Some(false) => Verdict::No,
                None => Verdict::Unknown,
            },
            (None, LocalAction::Concrete { .. }) => unreachable!(),
        }
    };
    let mut saw_unknown = false;
    for cotree in all_cotrees(diagram)? {
        let verdicts: Vec<Verdict> = cotree.vertices.iter().map(|v| vertex_cg(v)).collect();
        if verdicts.iter().all(|&v| v == Verdict::Yes) {
            return Ok(Finding::yes(format!(
                "cotree {{{}}} has compactly generated local actions throughout",
                cotree.vertices.iter().cloned().collect::<Vec<_>>().join(" ")
            )));
        }
        if !verdicts.contains(&Verdict::No) {
            saw_unknown = true;
        }
    }
    Ok(if saw_unknown {
        Finding::unknown("some cotree might qualify, but a compactly_generated flag is undeclared")
    } else {
        Finding::no("every cotree contains a vertex whose local action is not compactly generated")
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StdReport {
    /// The universal group is compactly generated, locally compact and
    /// geometrically dense: irreducible diagram, finite graph, all local
    /// actions subdegree-finite and compactly generated.
    pub cg_lc_dense: Finding,
    /// Membership in the class of nondiscrete compactly generated
    /// topologically simple t.d.l.c. groups with no fixed vertex: a finite
    /// tree, all local actions closed, compactly generated,
    /// subdegree-finite and generated by point stabilizers, and nontrivial
    /// at every leaf.
    pub in_std_td: Finding,
}

fn symbolic_flag(
    parts: &mut Vec<(Verdict, String)>,
    id: &str,
    name: &str,
    value: Option<bool>,
) {
    match value {
        Some(true) => parts.push((Verdict::Yes, format!("{id} declares {name}"))),
        Some(false) => parts.push((Verdict::No, format!("{id} declares {name} = false"))),
        None => parts.push((
            Verdict::Unknown,
            format!("{id} does not declare the {name} flag"),
        )),
    }
}

pub fn std_membership(diagram: &LocalActionDiagram) -> Result<StdReport, LadError> {
    let r = diagram.resolve()?;
    let density = density_finding(diagram)?;

    // Compactly generated + locally compact + geometrically dense.
    let mut parts = vec![(density.verdict, density.witness.clone())];
    for v in 0..r.vertex_count() {
        let id = r.vertex_id(v);
        match (&r.groups[v], r.action(v)) {
            (Some(_), _) => parts.push((Verdict::Yes, format!("finite local action at {id}"))),
            (None, LocalAction::Symbolic { flags, .. }) => {
                symbolic_flag(&mut parts, id, "subdegree_finite", flags.subdegree_finite);
                symbolic_flag(
                    &mut parts,
                    id,
                    "compactly_generated",
                    flags.compactly_generated,
                );
            }
            (None, LocalAction::Concrete { .. }) => unreachable!(),
        }
    }
    let cg_lc_dense = conjunction(
        parts,
        "irreducible with subdegree-finite, compactly generated local actions on a finite graph",
    );

    // Class membership with no fixed vertex.
    let mut parts = Vec::new();
    if r.is_tree() {
        parts.push((Verdict::Yes, "Γ is a finite tree".to_string()));
    } else {
        parts.push((Verdict::No, "Γ is not a tree".to_string()));
    }
    for v in 0..r.vertex_count() {
        let id = r.vertex_id(v);
        let leaf = r.is_leaf(v);
        match (&r.groups[v], r.action(v)) {
            (Some(group), _) => {
                if group.is_generated_by_point_stabilizers() {
                    parts.push((Verdict::Yes, format!("{id} generated by point stabilizers")));
                } else {
                    parts.push((
                        Verdict::No,
                        format!("local action at {id} is not generated by point stabilizers"),
                    ));
                }
                if leaf {
                    if group.is_trivial() {
                        parts.push((Verdict::No, format!("leaf {id} has trivial local action")));
                    } else {
                        parts.push((Verdict::Yes, format!("leaf {id} is nontrivial")));
                    }
                }
            }
            (None, LocalAction::Symbolic { flags, .. }) => {
                symbolic_flag(&mut parts, id, "closed", flags.closed);
                symbolic_flag(
                    &mut parts,
                    id,
                    "compactly_generated",
                    flags.compactly_generated,
                );
                symbolic_flag(&mut parts, id, "subdegree_finite", flags.subdegree_finite);
                symbolic_flag(
                    &mut parts,
                    id,
                    "generated_by_point_stabilizers",
                    flags.generated_by_point_stabilizers,
                );
                if leaf {
                    match flags.nontrivial {
                        Some(true) => parts.push((Verdict::Yes, format!("leaf {id} nontrivial"))),
                        Some(false) => {
                            parts.push((Verdict::No, format!("leaf {id} has trivial local action")))
                        }
                        None => parts.push((
                            Verdict::Unknown,
                            format!("leaf {id} does not declare the nontrivial flag"),
                        )),
                    }
                }
            }
            (None, LocalAction::Concrete { .. }) => unreachable!(),
        }
    }
    let in_std_td = conjunction(
        parts,
        "finite tree with closed, compactly generated, subdegree-finite local actions generated by point stabilizers and nontrivial at leaves",
    );

    Ok(StdReport {
        cg_lc_dense,
        in_std_td,
    })
}

/// Every predicate verdict for one diagram, with witnesses attached.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub irreducible: Finding,
    pub geometrically_dense: Finding,
    pub g_plus_trivial: Finding,
    pub simple_nondiscrete_with_translation: SimplicityReport,
    pub locally_compact: Finding,
    pub compactly_generated: Finding,
    pub in_class_std: Finding,
}

pub fn property_report(diagram: &LocalActionDiagram) -> Result<PropertyReport, LadError> {
    let density = density_finding(diagram)?;
    let std = std_membership(diagram)?;
    Ok(PropertyReport {
        irreducible: density.clone(),
        geometrically_dense: density,
        g_plus_trivial: g_plus_trivial(diagram)?,
        simple_nondiscrete_with_translation: simplicity_report(diagram)?,
        locally_compact: local_compactness(diagram)?,
        compactly_generated: compact_generation(diagram)?,
        in_class_std: std.in_std_td,
    })
}

impl fmt::Display for PropertyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "irreducible: {}", self.irreducible)?;
        writeln!(f, "geometrically_dense: {}", self.geometrically_dense)?;
        writeln!(f, "g_plus_trivial: {}", self.g_plus_trivial)?;
        writeln!(
            f,
            "simple_nondiscrete_with_translation: {}",
            self.simple_nondiscrete_with_translation
        )?;
        writeln!(f, "locally_compact: {}", self.locally_compact)?;
        writeln!(f, "compactly_generated: {}", self.compactly_generated)?;
        write!(f, "in_class_std: {}", self.in_class_std)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::diagram::scopos;

    #[test]
    fn density_matches_scopo_census_on_corpus() {
        for entry in corpus::all() {
            let d = &entry.diagram;
            let dense = geometric_density(d).unwrap().dense;
            let only_empty = scopos(d).unwrap().len() == 1;
            assert_eq!(dense, only_empty, "diagram {}", entry.name);
        }
    }

    #[test]
    fn g_plus_trivial_cases() {
        // The Klein group at w fixes points: (5 6) stabilizes 3 and 4, so
        // the arc-stabilizer subgroup is nontrivial.
        assert_eq!(
            g_plus_trivial(&corpus::figure3()).unwrap().verdict,
            Verdict::No
        );
        // A vertex carrying S3 has stabilizers of order 2.
        assert_eq!(
            g_plus_trivial(&corpus::figure5()).unwrap().verdict,
            Verdict::No
        );
        // All-trivial local actions are semiregular.
        assert_eq!(
            g_plus_trivial(&corpus::focal_cycle()).unwrap().verdict,
            Verdict::Yes
        );
        // A single transposition acting on its own two points is free.
        assert_eq!(
            g_plus_trivial(&corpus::stray_leaf()).unwrap().verdict,
            Verdict::Yes
        );
    }

    #[test]
    fn simplicity_examples() {
        let yes = simplicity_report(&corpus::figure5()).unwrap();
        assert_eq!(yes.verdict, Verdict::Yes);

        let fig3 = simplicity_report(&corpus::figure3()).unwrap();
        assert_eq!(fig3.verdict, Verdict::No);
        assert!(fig3
            .reasons
            .iter()
            .any(|s| s.contains("not generated by point stabilizers")));

        let bm = simplicity_report(&corpus::bm_s3()).unwrap();
        assert_eq!(bm.verdict, Verdict::No);
        assert!(bm.reasons.iter().any(|s| s.contains("Γ is not a tree")));

        // Reducible diagrams are not decided.
        let leafy = simplicity_report(&corpus::stray_leaf()).unwrap();
        assert_eq!(leafy.verdict, Verdict::Unknown);
    }

    #[test]
    fn simplicity_and_trivial_g_plus_exclude_each_other() {
        for entry in corpus::all() {
            let simple = simplicity_report(&entry.diagram).unwrap().verdict;
            let trivial = g_plus_trivial(&entry.diagram).unwrap().verdict;
            assert!(
                !(simple == Verdict::Yes && trivial == Verdict::Yes),
                "diagram {}",
                entry.name
            );
        }
    }

    #[test]
    fn concrete_diagrams_are_locally_compact_and_compactly_generated() {
        for entry in corpus::all() {
            if !entry.diagram.is_all_concrete() {
                continue;
            }
            assert_eq!(
                local_compactness(&entry.diagram).unwrap().verdict,
                Verdict::Yes
            );
            assert_eq!(
                compact_generation(&entry.diagram).unwrap().verdict,
                Verdict::Yes
            );
        }
    }

    #[test]
    fn symbolic_flags_drive_verdicts() {
        // Figure 4 with the stabilizer flag set both ways.
        let yes = corpus::figure4_with_flags(|f| {
            f.stabilizer_orbits_finite = Some(true);
            f.compactly_generated = Some(true);
        });
        assert_eq!(local_compactness(&yes).unwrap().verdict, Verdict::Yes);
        assert_eq!(compact_generation(&yes).unwrap().verdict, Verdict::Yes);

        let no = corpus::figure4_with_flags(|f| {
            f.stabilizer_orbits_finite = Some(false);
        });
        assert_eq!(local_compactness(&no).unwrap().verdict, Verdict::No);
        // Precondition fails, so compact generation is not applicable.
        let cg = compact_generation(&no).unwrap();
        assert_eq!(cg.verdict, Verdict::Unknown);
        assert!(cg.witness.contains("not applicable"));

        let undeclared = corpus::figure4_with_flags(|f| {
            f.stabilizer_orbits_finite = None;
        });
        assert_eq!(
            local_compactness(&undeclared).unwrap().verdict,
            Verdict::Unknown
        );
    }

    #[test]
    fn cotree_pruning_on_trees() {
        // A path whose end vertex declares compactly_generated = false is
        // still compactly generated overall: a cotree avoiding that vertex
        // qualifies.
        use crate::diagram::{ArcData, Card, LocalActionDiagram, SymbolicFlags, VertexData};
        use std::collections::BTreeMap;
        let v = VertexData::new(
            "v",
            LocalAction::Symbolic {
                orbits: BTreeMap::from([("vw".to_string(), Card::Infinite)]),
                flags: SymbolicFlags {
                    compactly_generated: Some(false),
                    stabilizer_orbits_finite: Some(true),
                    ..Default::default()
                },
            },
        );
        let w = VertexData::new(
            "w",
            LocalAction::Concrete {
                generators: vec!["(x y)".to_string()],
            },
        );
        let arcs = vec![
            ArcData::new("vw", "v", "w", "wv", vec![]),
            ArcData::new("wv", "w", "v", "vw", vec!["x".into(), "y".into()]),
        ];
        let d = LocalActionDiagram::new(vec![v, w], arcs);
        assert!(d.validate().ok(), "{}", d.validate());
        assert_eq!(local_compactness(&d).unwrap().verdict, Verdict::Yes);
        let cg = compact_generation(&d).unwrap();
        assert_eq!(cg.verdict, Verdict::Yes);
        assert!(cg.witness.contains("{w}"));
    }

    #[test]
    fn std_membership_cases() {
        let good = std_membership(&corpus::figure5()).unwrap();
        assert_eq!(good.cg_lc_dense.verdict, Verdict::Yes);
        assert_eq!(good.in_std_td.verdict, Verdict::Yes);

        let fig3 = std_membership(&corpus::figure3()).unwrap();
        assert_eq!(fig3.in_std_td.verdict, Verdict::No);

        let bm = std_membership(&corpus::bm_s3()).unwrap();
        assert_eq!(bm.in_std_td.verdict, Verdict::No);
    }
}
