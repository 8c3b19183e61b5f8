//! DOT export for diagrams and tree balls, with stable ordering.

use std::fmt::Write as _;

use crate::ball::DeltaTreeBall;
use crate::diagram::{Card, LocalAction, LocalActionDiagram};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn colour_set_label(arc_id: &str, colours: &[String], size: Option<Card>) -> String {
    match (colours.is_empty(), size) {
        (false, _) => format!("X_{arc_id} = {{{}}}", colours.join(",")),
        (true, Some(card)) => format!("X_{arc_id}: size {card}"),
        (true, None) => format!("X_{arc_id}"),
    }
}

/// DOT text for a diagram: one node per vertex labelled with its local
/// action, one directed edge per arc labelled with its colour set.
pub fn diagram_to_dot(diagram: &LocalActionDiagram) -> String {
    let mut out = String::from("digraph lad {\n");
    for v in diagram.vertices() {
        let action = match v.action() {
            LocalAction::Concrete { generators } => {
                let gens: Vec<String> = generators.iter().filter(|g| !g.is_empty()).cloned().collect();
                if gens.is_empty() {
                    "G = 1".to_string()
                } else {
                    format!("G = <{}>", gens.join(", "))
                }
            }
            LocalAction::Symbolic { orbits, .. } => {
                let cards: Vec<String> = orbits.values().map(Card::to_string).collect();
                format!("G symbolic, orbit sizes [{}]", cards.join(","))
            }
        };
        let _ = writeln!(
            out,
            "  {} [label={}];",
            quote(v.id()),
            quote(&format!("{}\\n{}", v.id(), action))
        );
    }
    for a in diagram.arcs() {
        let label = colour_set_label(a.id(), a.colours(), diagram.arc_size(a.id()));
        let _ = writeln!(
            out,
            "  {} -> {} [label={}];",
            quote(a.origin()),
            quote(a.target()),
            quote(&label)
        );
    }
    out.push_str("}\n");
    out
}

fn label_name(label: &[String]) -> String {
    if label.is_empty() {
        "()".to_string()
    } else {
        format!("({})", label.join(" "))
    }
}

/// DOT text for a ball: nodes carry their projection, arcs their colour.
pub fn ball_to_dot(ball: &DeltaTreeBall) -> String {
    let mut out = String::from("digraph ball {\n");
    for v in 0..ball.vertex_count() {
        let name = label_name(&ball.label(v));
        let _ = writeln!(
            out,
            "  {} [label={}];",
            quote(&name),
            quote(&format!("{}\\nπ = {}", name, ball.projection(v)))
        );
    }
    for v in 0..ball.vertex_count() {
        if let Some(p) = ball.parent(v) {
            let down = ball.label(v).last().expect("non-root").clone();
            let up = ball.reverse_label(v).last().expect("non-root").clone();
            let _ = writeln!(
                out,
                "  {} -> {} [label={}];",
                quote(&label_name(&ball.label(p))),
                quote(&label_name(&ball.label(v))),
                quote(&down)
            );
            let _ = writeln!(
                out,
                "  {} -> {} [label={}];",
                quote(&label_name(&ball.label(v))),
                quote(&label_name(&ball.label(p))),
                quote(&up)
            );
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ball::build_ball;
    use crate::corpus;

    #[test]
    fn figure1_dot_shape() {
        let dot = diagram_to_dot(&corpus::figure1());
        assert_eq!(dot.matches("->").count(), 4);
        assert!(dot.contains("X_a = {1,2,3}"));
        assert!(dot.contains("X_abar = {4,5}"));
        // Two nodes.
        assert_eq!(dot.matches("[label=").count(), 2 + 4);
    }

    #[test]
    fn radius_zero_ball_is_a_single_node() {
        let ball = build_ball(&corpus::bm_s3(), "v", 0).unwrap();
        let dot = ball_to_dot(&ball);
        assert_eq!(dot.matches("->").count(), 0);
        assert!(dot.contains("()"));
    }

    #[test]
    fn star_ball_dot() {
        let ball = build_ball(&corpus::bm_s3(), "v", 1).unwrap();
        let dot = ball_to_dot(&ball);
        // Four nodes, three edges in both directions.
        assert_eq!(dot.matches("->").count(), 6);
    }

    #[test]
    fn output_is_stable() {
        let a = diagram_to_dot(&corpus::exercise());
        let b = diagram_to_dot(&corpus::exercise());
        assert_eq!(a, b);
    }
}
