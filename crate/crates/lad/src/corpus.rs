//! The bundled example diagrams. Tests, docs and the shipped `diagrams/`
//! directory all draw from this one corpus.

use crate::diagram::{
    box_product, burger_mozes, from_pair, ArcData, Card, LocalAction, LocalActionDiagram,
    SymbolicFlags, VertexData,
};
use crate::perm::{ColourDomain, FinitePermGroup};

fn group(names: &[&str], gens: &[&str]) -> FinitePermGroup {
    let domain = ColourDomain::new(names.iter().copied()).expect("corpus domain");
    FinitePermGroup::from_cycles(domain, gens).expect("corpus generators")
}

/// S3 on {1, 2, 3}.
pub fn s3() -> FinitePermGroup {
    group(&["1", "2", "3"], &["(1 2)", "(1 2 3)"])
}

/// A5 on {p1, ..., p5}.
pub fn a5() -> FinitePermGroup {
    group(
        &["p1", "p2", "p3", "p4", "p5"],
        &["(p1 p2 p3 p4 p5)", "(p3 p4 p5)"],
    )
}

/// Dihedral group of order 14 on {1, ..., 7}.
pub fn d7() -> FinitePermGroup {
    group(
        &["1", "2", "3", "4", "5", "6", "7"],
        &["(1 2 3 4 5 6 7)", "(2 7)(3 6)(4 5)"],
    )
}

/// Dihedral group of order 10 on {d1, ..., d5}.
pub fn d5() -> FinitePermGroup {
    group(
        &["d1", "d2", "d3", "d4", "d5"],
        &["(d1 d2 d3 d4 d5)", "(d2 d5)(d3 d4)"],
    )
}

/// Two vertices joined by two edges; colour sets {1,2,3}, {4,5}, {8,9},
/// {6,7} with local actions generated by (1 2 3)(8 9) and (4 5)(6 7).
pub fn figure1() -> LocalActionDiagram {
    let v = VertexData::new(
        "v",
        LocalAction::Concrete {
            generators: vec!["(1 2 3)(8 9)".to_string()],
        },
    );
    let w = VertexData::new(
        "w",
        LocalAction::Concrete {
            generators: vec!["(4 5)(6 7)".to_string()],
        },
    );
    let arcs = vec![
        ArcData::new("a", "v", "w", "abar", vec!["1".into(), "2".into(), "3".into()]),
        ArcData::new("abar", "w", "v", "a", vec!["4".into(), "5".into()]),
        ArcData::new("b", "v", "w", "bbar", vec!["8".into(), "9".into()]),
        ArcData::new("bbar", "w", "v", "b", vec!["6".into(), "7".into()]),
    ];
    LocalActionDiagram::new(vec![v, w], arcs)
}

/// The diagram of a two-orbit action on the (2,4)-biregular tree: singleton
/// colours 1 and 2 towards the 4-valent side, with the Klein four-group
/// acting over there.
pub fn figure3() -> LocalActionDiagram {
    let v = VertexData::new("v", LocalAction::Concrete { generators: vec![] });
    let w = VertexData::new(
        "w",
        LocalAction::Concrete {
            generators: vec!["(3 4)".to_string(), "(5 6)".to_string()],
        },
    );
    let arcs = vec![
        ArcData::new("a", "v", "w", "abar", vec!["1".into()]),
        ArcData::new("abar", "w", "v", "a", vec!["3".into(), "4".into()]),
        ArcData::new("b", "v", "w", "bbar", vec!["2".into()]),
        ArcData::new("bbar", "w", "v", "b", vec!["5".into(), "6".into()]),
    ];
    LocalActionDiagram::new(vec![v, w], arcs)
}

fn figure4_flags() -> SymbolicFlags {
    // The product of the automorphism group of the 3-regular tree with S3,
    // acting on tree vertices plus three extra points: closed, compactly
    // generated, nontrivial, generated by point stabilizers; not
    // semiregular; stabilizers of the three extra points act with an
    // infinite orbit, so neither subdegree-finiteness flag holds.
    SymbolicFlags {
        closed: Some(true),
        compactly_generated: Some(true),
        subdegree_finite: Some(false),
        semiregular: Some(false),
        generated_by_point_stabilizers: Some(true),
        nontrivial: Some(true),
        stabilizer_orbits_finite: Some(false),
    }
}

/// Single vertex with two self-paired loops, one of declared infinite
/// cardinality: a symbolic local action standing in for an infinite group.
pub fn figure4() -> LocalActionDiagram {
    figure4_with_flags(|_| {})
}

/// Figure 4 with adjusted flags, for exercising the flag-driven predicates.
pub fn figure4_with_flags(adjust: impl FnOnce(&mut SymbolicFlags)) -> LocalActionDiagram {
    let mut flags = figure4_flags();
    adjust(&mut flags);
    let v = VertexData::new(
        "v",
        LocalAction::Symbolic {
            orbits: std::collections::BTreeMap::from([
                ("a".to_string(), Card::Infinite),
                ("b".to_string(), Card::Finite(3)),
            ]),
            flags,
        },
    );
    let arcs = vec![
        ArcData::new("a", "v", "v", "a", vec![]),
        ArcData::new("b", "v", "v", "b", vec![]),
    ];
    LocalActionDiagram::new(vec![v], arcs)
}

/// Two vertices joined by one edge, with A5 on five colours facing S3 on
/// three: a finite stand-in for the box products that yield continuum many
/// simple groups.
pub fn figure5() -> LocalActionDiagram {
    box_product(&a5(), &s3()).expect("factors are nontrivial")
}

/// A leaf whose single colour set is a singleton, attached to an edge.
pub fn stray_leaf() -> LocalActionDiagram {
    let u = VertexData::new(
        "u",
        LocalAction::Concrete {
            generators: vec!["(t1 t2)".to_string()],
        },
    );
    let v = VertexData::new("v", LocalAction::Concrete { generators: vec![] });
    let arcs = vec![
        ArcData::new("a", "v", "u", "abar", vec!["s".into()]),
        ArcData::new("abar", "u", "v", "a", vec!["t1".into(), "t2".into()]),
    ];
    LocalActionDiagram::new(vec![u, v], arcs)
}

/// A single vertex with a non-self-paired loop whose two directions both
/// carry singleton colours: the diagram of the translation action on a line.
pub fn focal_cycle() -> LocalActionDiagram {
    let v = VertexData::new("v", LocalAction::Concrete { generators: vec![] });
    let arcs = vec![
        ArcData::new("a", "v", "v", "abar", vec!["c1".into()]),
        ArcData::new("abar", "v", "v", "a", vec!["c2".into()]),
    ];
    LocalActionDiagram::new(vec![v], arcs)
}

/// Box product of the dihedral groups of orders 14 and 10: two vertex
/// orbits on the (7,5)-biregular tree with infinite vertex stabilizers
/// inducing proper subgroups of the symmetric groups on both sides.
pub fn exercise() -> LocalActionDiagram {
    box_product(&d7(), &d5()).expect("factors are nontrivial")
}

/// Single vertex, one self-paired loop carrying S3.
pub fn bm_s3() -> LocalActionDiagram {
    burger_mozes(&s3()).expect("degree 3")
}

/// Degree-3 class with a swapped pairing on the trivial group: a loop pair
/// with singleton colours plus a self-paired singleton loop. Not of
/// single-vertex self-paired form.
pub fn d3_pair_swap() -> LocalActionDiagram {
    let trivial = group(&["1", "2", "3"], &[]);
    from_pair(&trivial, &[1, 0, 2]).expect("involution")
}

/// Degree-3 class pairing the 2-orbit of a transposition with the fixed
/// singleton orbit: orbits of different sizes may be paired.
pub fn d3_c2_swap() -> LocalActionDiagram {
    let c2 = group(&["1", "2", "3"], &["(1 2)"]);
    from_pair(&c2, &[1, 0]).expect("involution")
}

pub struct CorpusEntry {
    pub name: &'static str,
    pub diagram: LocalActionDiagram,
}

/// Every bundled diagram, in the order they are documented.
pub fn all() -> Vec<CorpusEntry> {
    vec![
        CorpusEntry { name: "fig1", diagram: figure1() },
        CorpusEntry { name: "fig3", diagram: figure3() },
        CorpusEntry { name: "fig4", diagram: figure4() },
        CorpusEntry { name: "fig5", diagram: figure5() },
        CorpusEntry { name: "stray-leaf", diagram: stray_leaf() },
        CorpusEntry { name: "focal-cycle", diagram: focal_cycle() },
        CorpusEntry { name: "exercise", diagram: exercise() },
        CorpusEntry { name: "bm-s3", diagram: bm_s3() },
        CorpusEntry { name: "d3-pair-swap", diagram: d3_pair_swap() },
        CorpusEntry { name: "d3-c2-swap", diagram: d3_c2_swap() },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_validates_and_orders_are_right() {
        for entry in all() {
            assert!(
                entry.diagram.validate().ok(),
                "{}: {}",
                entry.name,
                entry.diagram.validate()
            );
        }
        assert_eq!(s3().order(), 6);
        assert_eq!(a5().order(), 60);
        assert_eq!(d7().order(), 14);
        assert_eq!(d5().order(), 10);
    }

    #[test]
    fn exercise_shape() {
        let d = exercise();
        assert_eq!(d.vertex_ids().len(), 2);
        assert_eq!(d.arcs().len(), 2);
        let orders: Vec<u128> = d
            .vertex_ids()
            .iter()
            .map(|v| d.local_group(v).unwrap().unwrap().order())
            .collect();
        assert_eq!(orders, vec![14, 10]);
    }
}
