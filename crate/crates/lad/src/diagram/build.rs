//! The named diagram constructions: single-vertex diagrams with self-paired
//! loops (one per orbit of a permutation group), complete-bipartite box
//! products, and single-vertex diagrams from orbit pairings.

use crate::perm::FinitePermGroup;

use super::{ArcData, LadError, LocalAction, LocalActionDiagram, VertexData};

fn orbit_colour_lists(group: &FinitePermGroup) -> Vec<Vec<String>> {
    group
        .orbits()
        .iter()
        .map(|o| {
            o.iter()
                .map(|&i| group.domain().name(i).to_string())
                .collect()
        })
        .collect()
}

fn concrete(group: &FinitePermGroup) -> LocalAction {
    LocalAction::Concrete {
        generators: group.generator_cycle_strings(),
    }
}

/// Single vertex with one self-paired loop per orbit of `group`; the loop's
/// colour set is the orbit. This is the diagram of the universal group that
/// acts vertex-transitively on the regular tree with the given local action
/// and inverts an arc in every arc orbit.
pub fn burger_mozes(group: &FinitePermGroup) -> Result<LocalActionDiagram, LadError> {
    if group.degree() == 0 {
        return Err(LadError::Unsupported(
            "the local action must have degree at least 1".to_string(),
        ));
    }
    let vertex = VertexData::new("v", concrete(group));
    let arcs = orbit_colour_lists(group)
        .into_iter()
        .enumerate()
        .map(|(i, colours)| {
            let id = format!("a{}", i + 1);
            ArcData::new(id.clone(), "v", "v", id, colours)
        })
        .collect();
    let diagram = LocalActionDiagram::new(vec![vertex], arcs);
    debug_assert!(diagram.validate().ok());
    Ok(diagram)
}

/// Complete-bipartite diagram of the box product of two permutation groups.
///
/// One part has a vertex for each orbit of `f2`, all carrying `f1`; the
/// other has a vertex for each orbit of `f1`, all carrying `f2`. The arc
/// from an `f1`-vertex to the vertex indexed by the `f1`-orbit `O` has
/// colour set `O` (renamed per vertex when a part has several copies, to
/// keep colour sets disjoint). With both groups transitive this is two
/// vertices joined by a single edge.
pub fn box_product(
    f1: &FinitePermGroup,
    f2: &FinitePermGroup,
) -> Result<LocalActionDiagram, LadError> {
    if f1.is_trivial() && f2.is_trivial() {
        return Err(LadError::Unsupported(
            "at least one factor must be nontrivial".to_string(),
        ));
    }
    let orbits1 = orbit_colour_lists(f1);
    let orbits2 = orbit_colour_lists(f2);
    let n1 = orbits1.len();
    let n2 = orbits2.len();

    // Part 1 vertices carry f1 and are indexed by f2-orbits; part 2 vertices
    // carry f2 and are indexed by f1-orbits.
    let single_copies = n1 == 1 && n2 == 1;
    if single_copies {
        let clash = f1
            .domain()
            .names()
            .iter()
            .any(|c| f2.domain().index_of(c).is_some());
        if clash {
            return Err(LadError::Unsupported(
                "the two factors share colour names; rename one domain first".to_string(),
            ));
        }
    }

    let rename = |vertex: &str, colour: &str| {
        if single_copies {
            colour.to_string()
        } else {
            format!("{vertex}.{colour}")
        }
    };

    let mut vertices = Vec::new();
    let mut arcs = Vec::new();
    for i in 0..n2 {
        let uid = format!("u{}", i + 1);
        let gens = f1
            .generators()
            .iter()
            .map(|g| {
                let cycles = g.cycle_string(f1.domain());
                rename_cycles(&cycles, &|c| rename(&uid, c))
            })
            .collect();
        vertices.push(VertexData::new(
            uid.clone(),
            LocalAction::Concrete { generators: gens },
        ));
        for (j, orbit) in orbits1.iter().enumerate() {
            let wid = format!("w{}", j + 1);
            arcs.push(ArcData::new(
                format!("{uid}>{wid}"),
                uid.clone(),
                wid,
                format!("w{}>{uid}", j + 1),
                orbit.iter().map(|c| rename(&uid, c)).collect(),
            ));
        }
    }
    for j in 0..n1 {
        let wid = format!("w{}", j + 1);
        let gens = f2
            .generators()
            .iter()
            .map(|g| {
                let cycles = g.cycle_string(f2.domain());
                rename_cycles(&cycles, &|c| rename(&wid, c))
            })
            .collect();
        vertices.push(VertexData::new(
            wid.clone(),
            LocalAction::Concrete { generators: gens },
        ));
        for (i, orbit) in orbits2.iter().enumerate() {
            let uid = format!("u{}", i + 1);
            arcs.push(ArcData::new(
                format!("{wid}>{uid}"),
                wid.clone(),
                uid,
                format!("u{}>{wid}", i + 1),
                orbit.iter().map(|c| rename(&wid, c)).collect(),
            ));
        }
    }
    let diagram = LocalActionDiagram::new(vertices, arcs);
    debug_assert!(diagram.validate().ok(), "{}", diagram.validate());
    Ok(diagram)
}

pub(crate) fn rename_cycles(cycles: &str, rename: &dyn Fn(&str) -> String) -> String {
    let mut out = String::new();
    for chunk in cycles.split_inclusive(|c| c == '(' || c == ')' || c == ' ') {
        let (name, sep) = match chunk.char_indices().last() {
            Some((i, c)) if c == '(' || c == ')' || c == ' ' => (&chunk[..i], &chunk[i..]),
            _ => (chunk, ""),
        };
        if !name.is_empty() {
            out.push_str(&rename(name));
        }
        out.push_str(sep);
    }
    out
}

/// Single-vertex diagram from a group and an involution of its orbit set.
/// Orbits fixed by the pairing become self-paired loops; swapped orbit
/// pairs become a loop and its distinct reverse carrying the partner orbit.
/// The pairing is given over orbit indices in canonical (least-colour)
/// order; orbits of different sizes may be paired.
pub fn from_pair(
    group: &FinitePermGroup,
    pairing: &[usize],
) -> Result<LocalActionDiagram, LadError> {
    let orbits = orbit_colour_lists(group);
    let k = orbits.len();
    if pairing.len() != k
        || {
            let mut seen = vec![false; k];
            pairing.iter().any(|&j| {
                j >= k || {
                    let dup = seen[j];
                    seen[j] = true;
                    dup
                }
            })
        }
    {
        return Err(LadError::Unsupported(format!(
            "the pairing must be a permutation of the {k} orbit indices"
        )));
    }
    for (i, &j) in pairing.iter().enumerate() {
        if pairing[j] != i {
            return Err(LadError::Unsupported(
                "the pairing must square to the identity".to_string(),
            ));
        }
    }

    let vertex = VertexData::new("v", concrete(group));
    let arc_id = |i: usize| format!("a{}", i + 1);
    let arcs = orbits
        .iter()
        .enumerate()
        .map(|(i, orbit)| {
            ArcData::new(arc_id(i), "v", "v", arc_id(pairing[i]), orbit.clone())
        })
        .collect();
    let diagram = LocalActionDiagram::new(vec![vertex], arcs);
    debug_assert!(diagram.validate().ok());
    Ok(diagram)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{iso, Card};
    use crate::perm::ColourDomain;

    fn group(names: &[&str], gens: &[&str]) -> FinitePermGroup {
        let domain = ColourDomain::new(names.iter().copied()).unwrap();
        FinitePermGroup::from_cycles(domain, gens).unwrap()
    }

    #[test]
    fn burger_mozes_s3_is_one_self_paired_loop() {
        let d = burger_mozes(&group(&["1", "2", "3"], &["(1 2)", "(1 2 3)"])).unwrap();
        assert_eq!(d.vertex_ids(), ["v"]);
        assert_eq!(d.arc_ids(), ["a1"]);
        assert!(d.arc("a1").unwrap().is_self_paired());
        assert_eq!(d.arc("a1").unwrap().colours(), ["1", "2", "3"]);
    }

    #[test]
    fn burger_mozes_orbit_split() {
        let d = burger_mozes(&group(&["1", "2", "3"], &["(1 2)"])).unwrap();
        let mut sizes: Vec<Card> = d
            .arc_ids()
            .iter()
            .map(|a| d.arc_size(a).unwrap())
            .collect();
        sizes.sort();
        assert_eq!(sizes, [Card::Finite(1), Card::Finite(2)]);
        assert!(d.arcs().iter().all(ArcData::is_self_paired));
    }

    #[test]
    fn box_product_of_transitive_factors_is_an_edge() {
        let d5 = group(&["1", "2", "3", "4", "5"], &["(1 2 3 4 5)", "(2 5)(3 4)"]);
        let s3 = group(&["x", "y", "z"], &["(x y)", "(x y z)"]);
        let d = box_product(&d5, &s3).unwrap();
        assert_eq!(d.vertex_ids().len(), 2);
        assert_eq!(d.arc_ids().len(), 2);
        let a = d.arc("u1>w1").unwrap();
        assert_eq!(a.colours().len(), 5);
        let abar = d.arc("w1>u1").unwrap();
        assert_eq!(abar.colours(), ["x", "y", "z"]);
    }

    #[test]
    fn box_product_with_intransitive_factor_is_complete_bipartite() {
        let f1 = group(&["1", "2", "3", "4"], &["(1 2)", "(3 4)"]); // 2 orbits
        let f2 = group(&["x", "y"], &["(x y)"]); // 1 orbit
        let d = box_product(&f1, &f2).unwrap();
        // K_{2,1}: one f1-vertex (f2 has one orbit), two f2-vertices.
        assert_eq!(d.vertex_ids().len(), 3);
        assert_eq!(d.arcs().len(), 4); // 2 edges
        assert!(d.validate().ok());
    }

    #[test]
    fn box_product_refuses_two_trivial_factors() {
        let t1 = group(&["1"], &[]);
        let t2 = group(&["x"], &[]);
        assert!(box_product(&t1, &t2).is_err());
    }

    #[test]
    fn from_pair_swap_makes_a_loop_pair() {
        let h = group(&["1", "2"], &[]);
        let d = from_pair(&h, &[1, 0]).unwrap();
        assert_eq!(d.arc_ids(), ["a1", "a2"]);
        let a1 = d.arc("a1").unwrap();
        assert!(!a1.is_self_paired());
        assert_eq!(a1.reverse(), "a2");
        assert_eq!(a1.colours(), ["1"]);
        assert_eq!(d.arc("a2").unwrap().colours(), ["2"]);
    }

    #[test]
    fn from_pair_identity_matches_burger_mozes() {
        for (names, gens) in [
            (vec!["1", "2", "3"], vec!["(1 2)", "(1 2 3)"]),
            (vec!["1", "2", "3"], vec!["(1 2)"]),
            (vec!["1", "2", "3", "4"], vec!["(1 2)(3 4)"]),
        ] {
            let h = group(&names, &gens);
            let k = h.orbits().len();
            let identity: Vec<usize> = (0..k).collect();
            let via_pair = from_pair(&h, &identity).unwrap();
            let via_bm = burger_mozes(&h).unwrap();
            assert!(iso(&via_pair, &via_bm).unwrap().is_some());
        }
    }

    #[test]
    fn from_pair_rejects_non_involutions() {
        let h = group(&["1", "2", "3"], &[]);
        assert!(from_pair(&h, &[1, 2, 0]).is_err());
        assert!(from_pair(&h, &[0, 0, 2]).is_err());
        assert!(from_pair(&h, &[0, 1]).is_err());
    }
}
