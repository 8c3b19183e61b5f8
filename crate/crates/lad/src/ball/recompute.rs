//! Recompute a diagram from the ball action of its universal group.
//!
//! Interior ball vertices are grouped into orbits of the full legal-map
//! group (root-moving maps included, realized by searching for legal
//! π-compatible partial isomorphisms between depth-limited neighbourhoods);
//! arcs likewise. The quotient of the ball by these orbits, decorated with
//! the colour partitions and the realizable local actions at orbit
//! representatives, is returned together with an isomorphism witness
//! against the input diagram, or a counterexample note.

use std::collections::{BTreeMap, HashMap};

use crate::diagram::{
    iso, ArcData, LadIsomorphism, LocalAction, LocalActionDiagram, VertexData,
};
use crate::perm::Perm;

use super::{build_ball_with_cap, BallError, ColourId, DeltaTreeBall};

#[derive(Debug)]
pub struct Recomputed {
    pub diagram: LocalActionDiagram,
    /// isomorphism onto the input diagram, absent on failure
    pub iso: Option<LadIsomorphism>,
    pub radius: usize,
    pub note: String,
}

fn star_map(ball: &DeltaTreeBall, v: usize) -> HashMap<ColourId, (u32, ColourId)> {
    ball.star(v)
        .into_iter()
        .map(|(c, n, back)| (c, (n, back)))
        .collect()
}

/// Whether a legal π-compatible map of `k`-neighbourhoods sending `x` to
/// `y` exists, given that the arcs back to where we came from carry the
/// colours `back`. Constraints stop at the ball boundary or at depth `k`.
fn continuation_exists(
    ball: &DeltaTreeBall,
    x: usize,
    y: usize,
    k: usize,
    back: Option<(ColourId, ColourId)>,
) -> bool {
    if k == 0 || !ball.is_interior(x) || !ball.is_interior(y) {
        return true;
    }
    let proj = ball.verts[x].proj;
    if ball.verts[y].proj != proj {
        return false;
    }
    let star_x = ball.star(x);
    let star_y = star_map(ball, y);
    for sigma in ball.elements_at(x) {
        if let Some((bx, by)) = back {
            if ball.apply_sigma(proj, sigma, bx) != by {
                continue;
            }
        }
        let ok = star_x.iter().all(|&(c, n, back_n)| {
            if let Some((bx, _)) = back {
                if c == bx {
                    return true; // the direction we came from is settled
                }
            }
            let image_colour = ball.apply_sigma(proj, sigma, c);
            let &(m, back_m) = star_y.get(&image_colour).expect("complete star");
            continuation_exists(ball, n as usize, m as usize, k - 1, Some((back_n, back_m)))
        });
        if ok {
            return true;
        }
    }
    false
}

/// Whether some legal map of depth-limited neighbourhoods sends `x` to `y`.
fn vertices_equivalent(ball: &DeltaTreeBall, x: usize, y: usize, k: usize) -> bool {
    if x == y {
        return true;
    }
    continuation_exists(ball, x, y, k, None)
}

/// Whether some legal map sends the ball arc `x -> n` (colour `c`) to the
/// ball arc `x2 -> n2` (colour `c2`).
fn arcs_equivalent(
    ball: &DeltaTreeBall,
    (x, c): (usize, ColourId),
    (x2, c2): (usize, ColourId),
    k: usize,
) -> bool {
    if (x, c) == (x2, c2) {
        return true;
    }
    let proj = ball.verts[x].proj;
    if ball.verts[x2].proj != proj {
        return false;
    }
    let star_x = ball.star(x);
    let star_y = star_map(ball, x2);
    for sigma in ball.elements_at(x) {
        if ball.apply_sigma(proj, sigma, c) != c2 {
            continue;
        }
        let ok = star_x.iter().all(|&(col, n, back_n)| {
            let image_colour = ball.apply_sigma(proj, sigma, col);
            let &(m, back_m) = star_y.get(&image_colour).expect("complete star");
            continuation_exists(ball, n as usize, m as usize, k - 1, Some((back_n, back_m)))
        });
        if ok {
            return true;
        }
    }
    false
}

/// Whether the specific local action `sigma` at the interior vertex `v` is
/// realized by some legal map fixing `v`.
fn sigma_realizable(ball: &DeltaTreeBall, v: usize, sigma: &Perm, k: usize) -> bool {
    let proj = ball.verts[v].proj;
    let star = ball.star(v);
    let star_map = star_map(ball, v);
    star.iter().all(|&(c, n, back_n)| {
        let image_colour = ball.apply_sigma(proj, sigma, c);
        let &(m, back_m) = star_map.get(&image_colour).expect("complete star");
        continuation_exists(ball, n as usize, m as usize, k - 1, Some((back_n, back_m)))
    })
}

/// Recompute the diagram of the ball action at the given radius and compare
/// it with the input. The radius must be at least the diameter of the
/// quotient graph plus two, so every diagram vertex and arc has an interior
/// orbit representative with interior neighbours.
pub fn recompute_lad(
    diagram: &LocalActionDiagram,
    radius: usize,
) -> Result<Recomputed, BallError> {
    recompute_lad_with_cap(diagram, radius, super::DEFAULT_MAX_BALL_VERTICES)
}

pub fn recompute_lad_with_cap(
    diagram: &LocalActionDiagram,
    radius: usize,
    cap: usize,
) -> Result<Recomputed, BallError> {
    let resolved = diagram.resolve()?;
    if !diagram.is_all_concrete() {
        return Err(BallError::ConcreteOnly);
    }
    let required = resolved.diameter() + 2;
    if radius < required {
        return Err(BallError::RadiusTooSmall {
            given: radius,
            required,
        });
    }
    let root = diagram.vertex_ids()[0].to_string();
    drop(resolved);
    let ball = build_ball_with_cap(diagram, &root, radius, cap)?;

    // Vertex orbits over interior vertices, representatives in index
    // (breadth-first) order.
    let interior: Vec<usize> = (0..ball.vertex_count())
        .filter(|&v| ball.is_interior(v))
        .collect();
    let mut vertex_class: HashMap<usize, usize> = HashMap::new();
    let mut class_reps: Vec<usize> = Vec::new();
    for &v in &interior {
        let k = radius - ball.depth(v);
        let found = class_reps.iter().position(|&rep| {
            let k = k.min(radius - ball.depth(rep));
            vertices_equivalent(&ball, rep, v, k)
        });
        match found {
            Some(c) => {
                vertex_class.insert(v, c);
            }
            None => {
                vertex_class.insert(v, class_reps.len());
                class_reps.push(v);
            }
        }
    }

    // Arc orbits over ball arcs with both endpoints interior.
    let mut ball_arcs: Vec<(usize, ColourId, usize)> = Vec::new(); // (origin, colour, target)
    for &v in &interior {
        for (c, n, _) in ball.star(v) {
            if ball.is_interior(n as usize) {
                ball_arcs.push((v, c, n as usize));
            }
        }
    }
    let mut arc_class: HashMap<(usize, ColourId), usize> = HashMap::new();
    let mut arc_reps: Vec<(usize, ColourId, usize)> = Vec::new();
    for &(v, c, n) in &ball_arcs {
        let k = radius - ball.depth(v).max(ball.depth(n));
        let found = arc_reps.iter().position(|&(rv, rc, rn)| {
            let k = k.min(radius - ball.depth(rv).max(ball.depth(rn)));
            arcs_equivalent(&ball, (rv, rc), (v, c), k)
        });
        match found {
            Some(a) => {
                arc_class.insert((v, c), a);
            }
            None => {
                arc_class.insert((v, c), arc_reps.len());
                arc_reps.push((v, c, n));
            }
        }
    }

    let fail = |note: String| {
        Ok(Recomputed {
            diagram: diagram.clone(),
            iso: None,
            radius,
            note,
        })
    };

    // Star representative per vertex class: least member whose neighbours
    // are all interior.
    let mut star_rep: Vec<Option<usize>> = vec![None; class_reps.len()];
    for &v in &interior {
        if ball.depth(v) + 2 <= radius {
            let c = vertex_class[&v];
            if star_rep[c].is_none() {
                star_rep[c] = Some(v);
            }
        }
    }
    if star_rep.iter().any(Option::is_none) {
        return fail(format!(
            "some vertex orbit has no representative of depth at most {}; increase the radius",
            radius - 2
        ));
    }

    // Class names: the projection's vertex id, disambiguated if orbits
    // split a fibre (which already refutes the expected correspondence).
    let mut name_count: HashMap<String, usize> = HashMap::new();
    let vertex_names: Vec<String> = class_reps
        .iter()
        .map(|&rep| {
            let base = ball.projection(rep).to_string();
            let n = name_count.entry(base.clone()).or_insert(0);
            *n += 1;
            if *n == 1 {
                base
            } else {
                format!("{base}#{n}")
            }
        })
        .collect();
    let fibres_split = name_count.values().any(|&n| n > 1);

    let mut arc_name_count: HashMap<String, usize> = HashMap::new();
    let arc_names: Vec<String> = arc_reps
        .iter()
        .map(|&(v, c, _)| {
            let arc = ball.colour_arc[c];
            let base = ball.gamma_arc_ids[arc].clone();
            let n = arc_name_count.entry(base.clone()).or_insert(0);
            *n += 1;
            let _ = v;
            if *n == 1 {
                base
            } else {
                format!("{base}#{n}")
            }
        })
        .collect();

    // Assemble arcs from the star partitions of the representatives.
    let mut arcs: BTreeMap<usize, ArcData> = BTreeMap::new();
    let mut vertices = Vec::new();
    for class in 0..class_reps.len() {
        let star_source = star_rep[class].expect("checked above");
        let proj = ball.verts[star_source].proj;
        // Partition the star by arc class.
        let mut partition: BTreeMap<usize, Vec<(ColourId, usize)>> = BTreeMap::new();
        for (c, n, _) in ball.star(star_source) {
            let a = *arc_class.get(&(star_source, c)).ok_or_else(|| {
                BallError::Internal("star arc missing from the classification".to_string())
            })?;
            partition.entry(a).or_default().push((c, n as usize));
        }
        for (&a, members) in &partition {
            let (_, n0) = members[0];
            let target_class = *vertex_class.get(&n0).ok_or_else(|| {
                BallError::Internal("neighbour of a star representative not classified".to_string())
            })?;
            // Reverse arc: the ball arc back from the first member.
            let back_colour = ball
                .star(n0)
                .into_iter()
                .find(|&(_, m, _)| m as usize == star_source)
                .map(|(c, _, _)| c)
                .expect("tree edge has a reverse");
            let reverse_class = *arc_class.get(&(n0, back_colour)).ok_or_else(|| {
                BallError::Internal("reverse of a star arc not classified".to_string())
            })?;
            let colours: Vec<String> = members
                .iter()
                .map(|&(c, _)| {
                    if fibres_split {
                        format!("{}.{}", vertex_names[class], ball.colours[c])
                    } else {
                        ball.colours[c].clone()
                    }
                })
                .collect();
            let entry = ArcData::new(
                arc_names[a].clone(),
                vertex_names[class].clone(),
                vertex_names[target_class].clone(),
                arc_names[reverse_class].clone(),
                colours,
            );
            if let Some(previous) = arcs.get(&a) {
                if *previous != entry {
                    return fail(format!(
                        "arc orbit {} appears with inconsistent data in two stars",
                        arc_names[a]
                    ));
                }
            }
            arcs.insert(a, entry);
        }

        // Realizable local actions at the representative.
        let k = radius - ball.depth(star_source);
        let group = &ball.groups[proj];
        let realizable: Vec<&Perm> = ball
            .elements_at(star_source)
            .iter()
            .filter(|sigma| sigma_realizable(&ball, star_source, sigma, k))
            .collect();
        // The realizable elements must form the group they generate.
        let gen_strings: Vec<String> = {
            let mut gens: Vec<&Perm> = Vec::new();
            let mut have = 1usize;
            for sigma in &realizable {
                if !sigma.is_identity() {
                    gens.push(sigma);
                    let g = crate::perm::FinitePermGroup::new(
                        group.domain().clone(),
                        gens.iter().map(|p| (*p).clone()).collect(),
                    )
                    .expect("degree within bound");
                    have = g.order() as usize;
                    if have == realizable.len() {
                        break;
                    }
                }
            }
            if have != realizable.len() {
                return fail(format!(
                    "realizable local actions at {} do not close under composition",
                    vertex_names[class]
                ));
            }
            let rename: Vec<String> = gens
                .iter()
                .map(|p| p.cycle_string(group.domain()))
                .collect();
            if fibres_split {
                rename
                    .iter()
                    .map(|s| {
                        crate::diagram::rename_cycles(s, &|c| {
                            format!("{}.{}", vertex_names[class], c)
                        })
                    })
                    .collect()
            } else {
                rename
            }
        };
        vertices.push(VertexData::new(
            vertex_names[class].clone(),
            LocalAction::Concrete {
                generators: gen_strings,
            },
        ));
    }

    let recomputed = LocalActionDiagram::new(vertices, arcs.into_values().collect());
    let report = recomputed.validate();
    if !report.ok() {
        return fail(format!("recomputed quotient is not a valid diagram:\n{report}"));
    }
    let witness = iso(&recomputed, diagram).map_err(|e| BallError::Internal(e.to_string()))?;
    let note = match &witness {
        Some(_) => format!(
            "recomputed diagram at radius {radius} is isomorphic to the input (minimum radius {required})"
        ),
        None => "recomputed diagram is valid but not isomorphic to the input".to_string(),
    };
    Ok(Recomputed {
        diagram: recomputed,
        iso: witness,
        radius,
        note,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn figure3_roundtrip() {
        let d = corpus::figure3();
        let out = recompute_lad(&d, 3).unwrap();
        assert!(out.iso.is_some(), "{}", out.note);
        // A larger radius also works.
        let out = recompute_lad(&d, 4).unwrap();
        assert!(out.iso.is_some(), "{}", out.note);
    }

    #[test]
    fn burger_mozes_two_orbits_roundtrip() {
        let g = crate::perm::FinitePermGroup::from_cycles(
            crate::perm::ColourDomain::new(["1", "2", "3"]).unwrap(),
            &["(1 2)"],
        )
        .unwrap();
        let d = crate::diagram::burger_mozes(&g).unwrap();
        let out = recompute_lad(&d, 3).unwrap();
        assert!(out.iso.is_some(), "{}", out.note);
        assert_eq!(out.diagram.vertex_ids().len(), 1);
        assert_eq!(out.diagram.arcs().len(), 2);
        assert!(out.diagram.arcs().iter().all(|a| a.is_self_paired()));
    }

    #[test]
    fn swapped_pairing_roundtrip() {
        let d = corpus::d3_pair_swap();
        let out = recompute_lad(&d, 4).unwrap();
        assert!(out.iso.is_some(), "{}", out.note);
        // The loop pair with distinct reverse must be recovered.
        let non_self_paired = out
            .diagram
            .arcs()
            .iter()
            .filter(|a| !a.is_self_paired())
            .count();
        assert_eq!(non_self_paired, 2);
    }

    #[test]
    fn small_radius_is_refused_with_the_bound() {
        let d = corpus::figure3();
        match recompute_lad(&d, 2) {
            Err(BallError::RadiusTooSmall { given: 2, required: 3 }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }
}
