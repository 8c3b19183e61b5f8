//! Canonical JSON for diagrams, reports and ball exports.
//!
//! Field order is fixed by the record structs, arrays are sorted by id, and
//! maps are ordered, so serialization is byte-identical across runs and a
//! parse/serialize round trip reproduces the input exactly.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ball::DeltaTreeBall;
use crate::diagram::{
    ArcData, Card, LocalAction, LocalActionDiagram, PropertyReport, SymbolicFlags, VertexData,
};

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("malformed JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("bad cardinality {0:?}: expected a positive number or \"inf\"")]
    BadCardinality(String),
}

#[derive(Serialize, Deserialize)]
struct DiagramFile {
    vertices: Vec<VertexRecord>,
    arcs: Vec<ArcRecord>,
}

#[derive(Serialize, Deserialize)]
struct VertexRecord {
    id: String,
    local_action: ActionRecord,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum ActionRecord {
    Concrete {
        generators: Vec<String>,
    },
    Symbolic {
        orbits: BTreeMap<String, CardRecord>,
        flags: FlagsRecord,
    },
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum CardRecord {
    Number(u64),
    Text(String),
}

#[derive(Serialize, Deserialize, Default)]
struct FlagsRecord {
    #[serde(skip_serializing_if = "Option::is_none")]
    closed: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    compactly_generated: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    subdegree_finite: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    semiregular: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    generated_by_point_stabilizers: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    nontrivial: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    stabilizer_orbits_finite: Option<bool>,
}

#[derive(Serialize, Deserialize)]
struct ArcRecord {
    id: String,
    origin: String,
    target: String,
    reverse: String,
    colours: Vec<String>,
}

fn flags_to_record(f: &SymbolicFlags) -> FlagsRecord {
    FlagsRecord {
        closed: f.closed,
        compactly_generated: f.compactly_generated,
        subdegree_finite: f.subdegree_finite,
        semiregular: f.semiregular,
        generated_by_point_stabilizers: f.generated_by_point_stabilizers,
        nontrivial: f.nontrivial,
        stabilizer_orbits_finite: f.stabilizer_orbits_finite,
    }
}

fn flags_from_record(f: &FlagsRecord) -> SymbolicFlags {
    SymbolicFlags {
        closed: f.closed,
        compactly_generated: f.compactly_generated,
        subdegree_finite: f.subdegree_finite,
        semiregular: f.semiregular,
        generated_by_point_stabilizers: f.generated_by_point_stabilizers,
        nontrivial: f.nontrivial,
        stabilizer_orbits_finite: f.stabilizer_orbits_finite,
    }
}

/// Serialize a diagram to the canonical JSON format.
pub fn diagram_to_json(diagram: &LocalActionDiagram) -> String {
    let file = DiagramFile {
        vertices: diagram
            .vertices()
            .iter()
            .map(|v| VertexRecord {
                id: v.id().to_string(),
                local_action: match v.action() {
                    LocalAction::Concrete { generators } => ActionRecord::Concrete {
                        generators: generators.clone(),
                    },
                    LocalAction::Symbolic { orbits, flags } => ActionRecord::Symbolic {
                        orbits: orbits
                            .iter()
                            .map(|(arc, card)| {
                                let record = match card {
                                    Card::Finite(n) => CardRecord::Number(*n),
                                    Card::Infinite => CardRecord::Text("inf".to_string()),
                                };
                                (arc.clone(), record)
                            })
                            .collect(),
                        flags: flags_to_record(flags),
                    },
                },
            })
            .collect(),
        arcs: diagram
            .arcs()
            .iter()
            .map(|a| ArcRecord {
                id: a.id().to_string(),
                origin: a.origin().to_string(),
                target: a.target().to_string(),
                reverse: a.reverse().to_string(),
                colours: a.colours().to_vec(),
            })
            .collect(),
    };
    let mut out = serde_json::to_string_pretty(&file).expect("serializable");
    out.push('\n');
    out
}

/// Parse a diagram from JSON. Structural diagram invariants are not checked
/// here; run `validate` on the result.
pub fn diagram_from_json(input: &str) -> Result<LocalActionDiagram, JsonError> {
    let file: DiagramFile = serde_json::from_str(input)?;
    let vertices = file
        .vertices
        .into_iter()
        .map(|v| {
            let action = match v.local_action {
                ActionRecord::Concrete { generators } => LocalAction::Concrete { generators },
                ActionRecord::Symbolic { orbits, flags } => {
                    let orbits = orbits
                        .into_iter()
                        .map(|(arc, card)| {
                            let card = match card {
                                CardRecord::Number(n) => Card::Finite(n),
                                CardRecord::Text(t) if t == "inf" => Card::Infinite,
                                CardRecord::Text(t) => return Err(JsonError::BadCardinality(t)),
                            };
                            Ok((arc, card))
                        })
                        .collect::<Result<BTreeMap<_, _>, _>>()?;
                    LocalAction::Symbolic {
                        orbits,
                        flags: flags_from_record(&flags),
                    }
                }
            };
            Ok(VertexData::new(v.id, action))
        })
        .collect::<Result<Vec<_>, JsonError>>()?;
    let arcs = file
        .arcs
        .into_iter()
        .map(|a| ArcData::new(a.id, a.origin, a.target, a.reverse, a.colours))
        .collect();
    Ok(LocalActionDiagram::new(vertices, arcs))
}

pub fn report_to_json(report: &PropertyReport) -> String {
    let mut out = serde_json::to_string_pretty(report).expect("serializable");
    out.push('\n');
    out
}

#[derive(Serialize)]
struct BallFile {
    radius: usize,
    root: String,
    vertices: Vec<BallVertexRecord>,
    arcs: Vec<BallArcRecord>,
}

#[derive(Serialize)]
struct BallVertexRecord {
    label: Vec<String>,
    reverse_label: Vec<String>,
    projects_to: String,
    depth: usize,
}

#[derive(Serialize)]
struct BallArcRecord {
    from: Vec<String>,
    to: Vec<String>,
    colour: String,
    projects_to: String,
}

/// Serialize a ball: vertices carry their coloured-path labels and reverse
/// labels; both directed arcs of each tree edge appear with their colours.
pub fn ball_to_json(ball: &DeltaTreeBall) -> String {
    let mut vertices = Vec::new();
    let mut arcs = Vec::new();
    for v in 0..ball.vertex_count() {
        let label = ball.label(v);
        vertices.push(BallVertexRecord {
            label: label.clone(),
            reverse_label: ball.reverse_label(v),
            projects_to: ball.projection(v).to_string(),
            depth: ball.depth(v),
        });
        if let Some(p) = ball.parent(v) {
            let down_colour = label.last().expect("non-root").clone();
            let up_colour = ball.reverse_label(v).last().expect("non-root").clone();
            arcs.push(BallArcRecord {
                from: ball.label(p),
                to: label.clone(),
                colour: down_colour.clone(),
                projects_to: ball.arc_of_colour(&down_colour).to_string(),
            });
            arcs.push(BallArcRecord {
                from: label,
                to: ball.label(p),
                colour: up_colour.clone(),
                projects_to: ball.arc_of_colour(&up_colour).to_string(),
            });
        }
    }
    let file = BallFile {
        radius: ball.radius(),
        root: ball.projection(0).to_string(),
        vertices,
        arcs,
    };
    let mut out = serde_json::to_string_pretty(&file).expect("serializable");
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn roundtrip_is_bit_exact_on_the_corpus() {
        for entry in corpus::all() {
            let text = diagram_to_json(&entry.diagram);
            let back = diagram_from_json(&text).unwrap();
            assert_eq!(back, entry.diagram, "{}", entry.name);
            assert_eq!(diagram_to_json(&back), text, "{}", entry.name);
        }
    }

    #[test]
    fn symbolic_cardinalities_roundtrip() {
        let d = corpus::figure4();
        let text = diagram_to_json(&d);
        assert!(text.contains("\"inf\""));
        let back = diagram_from_json(&text).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn bad_cardinality_is_rejected() {
        let text = diagram_to_json(&corpus::figure4()).replace("\"inf\"", "\"lots\"");
        assert!(matches!(
            diagram_from_json(&text),
            Err(JsonError::BadCardinality(_))
        ));
    }

    #[test]
    fn ball_serialization_is_deterministic() {
        let ball1 = crate::ball::build_ball(&corpus::figure3(), "v", 2).unwrap();
        let ball2 = crate::ball::build_ball(&corpus::figure3(), "v", 2).unwrap();
        assert_eq!(ball_to_json(&ball1), ball_to_json(&ball2));
    }
}
