//! The induced group of a ball: all root-fixing colour-legal ball
//! automorphisms.
//!
//! The order is computed recursively down the tree: choose a local action
//! at each interior vertex, subject only to the incoming reverse colour,
//! and compose the choices independently per subtree. A generating set of
//! canonical lifts is produced alongside and certified by a stabilizer
//! chain against the recursive count. An explicit backtracking enumeration
//! of all legal maps serves as the independent route for small balls.

use std::collections::{HashMap, HashSet};

use num_bigint::BigUint;

use crate::perm::{Perm, StabChain};

use super::action::{is_legal, BallAutomorphism};
use super::{BallError, ColourId, DeltaTreeBall};

/// Generators, exact order and the vertex-orbit summary of the group of
/// root-fixing legal automorphisms of a ball.
#[derive(Debug, Clone)]
pub struct BallGroup {
    pub generators: Vec<BallAutomorphism>,
    pub order: BigUint,
    /// sizes of the orbits of the group on ball vertices, in index order
    pub vertex_orbit_sizes: Vec<usize>,
}

fn child_by_colour(ball: &DeltaTreeBall, v: usize) -> HashMap<ColourId, u32> {
    ball.verts[v]
        .children
        .iter()
        .map(|&c| (ball.verts[c as usize].parent_colour, c))
        .collect()
}

/// Number of legal maps of the subtree under `x` onto the subtree under
/// `y`, sending `x` to `y` compatibly with the arcs to their parents.
fn count_sub(ball: &DeltaTreeBall, x: usize, y: usize) -> BigUint {
    debug_assert_eq!(ball.verts[x].depth, ball.verts[y].depth);
    if ball.verts[x].proj != ball.verts[y].proj {
        return BigUint::from(0u32);
    }
    if !ball.is_interior(x) {
        return BigUint::from(1u32);
    }
    let proj = ball.verts[x].proj;
    let dx = ball.domain_index(proj, ball.verts[x].reverse_colour);
    let dy = ball.domain_index(proj, ball.verts[y].reverse_colour);
    let kids_y = child_by_colour(ball, y);
    let mut total = BigUint::from(0u32);
    for sigma in ball.elements_at(x) {
        if sigma.apply(dx) != dy {
            continue;
        }
        let mut product = BigUint::from(1u32);
        for &cx in &ball.verts[x].children {
            let colour = ball.verts[cx as usize].parent_colour;
            let image_colour = ball.apply_sigma(proj, sigma, colour);
            let cy = kids_y[&image_colour];
            product *= count_sub(ball, cx as usize, cy as usize);
            if product == BigUint::from(0u32) {
                break;
            }
        }
        total += product;
    }
    total
}

/// Recursive order of the root-fixing legal-map group: a free choice of
/// local action at the root, then independent continuations per subtree.
fn recursive_order(ball: &DeltaTreeBall) -> BigUint {
    let kids = child_by_colour(ball, 0);
    let proj = ball.verts[0].proj;
    let mut total = BigUint::from(0u32);
    for sigma in ball.elements_at(0) {
        let mut product = BigUint::from(1u32);
        for &cx in &ball.verts[0].children {
            let colour = ball.verts[cx as usize].parent_colour;
            let image_colour = ball.apply_sigma(proj, sigma, colour);
            product *= count_sub(ball, cx as usize, kids[&image_colour] as usize);
            if product == BigUint::from(0u32) {
                break;
            }
        }
        total += product;
    }
    total
}

/// Extend a partial map by sending the subtree under `x` onto the subtree
/// under `y` with prescribed local action `sigma` at `x`, choosing the
/// canonically least legal continuation below.
fn extend_lift(ball: &DeltaTreeBall, map: &mut [u32], x: usize, y: usize, sigma: &Perm) {
    map[x] = y as u32;
    if !ball.is_interior(x) {
        return;
    }
    let proj = ball.verts[x].proj;
    let kids_y = child_by_colour(ball, y);
    for &cx in &ball.verts[x].children {
        let colour = ball.verts[cx as usize].parent_colour;
        let image_colour = ball.apply_sigma(proj, sigma, colour);
        let cy = kids_y[&image_colour] as usize;
        if !ball.is_interior(cx as usize) {
            map[cx as usize] = cy as u32;
            continue;
        }
        let child_proj = ball.verts[cx as usize].proj;
        let d_from = ball.domain_index(child_proj, ball.verts[cx as usize].reverse_colour);
        let d_to = ball.domain_index(child_proj, ball.verts[cy].reverse_colour);
        let tau = ball
            .elements_at(cx as usize)
            .iter()
            .find(|t| t.apply(d_from) == d_to)
            .expect("reverse colours lie in one orbit");
        extend_lift(ball, map, cx as usize, cy, tau);
    }
}

fn canonical_lifts(ball: &DeltaTreeBall) -> Vec<BallAutomorphism> {
    let mut gens = Vec::new();
    // Root level: one lift per generator of the local action at the root.
    let root_proj = ball.verts[0].proj;
    for sigma in ball.groups[root_proj].generators() {
        let mut map: Vec<u32> = (0..ball.vertex_count() as u32).collect();
        extend_lift(ball, &mut map, 0, 0, sigma);
        gens.push(BallAutomorphism { map });
    }
    // Deeper levels: per interior non-root vertex, one subtree-supported
    // lift per generator of the stabilizer of its reverse colour.
    for w in 1..ball.vertex_count() {
        if !ball.is_interior(w) {
            continue;
        }
        let proj = ball.verts[w].proj;
        let d = ball.domain_index(proj, ball.verts[w].reverse_colour);
        let stab = ball.groups[proj].point_stabilizer_by_index(d);
        for tau in stab.generators() {
            let mut map: Vec<u32> = (0..ball.vertex_count() as u32).collect();
            extend_lift(ball, &mut map, w, w, tau);
            gens.push(BallAutomorphism { map });
        }
    }
    gens.retain(|g| !g.is_identity());
    gens.sort();
    gens.dedup();
    gens
}

/// Cap above which the stabilizer-chain certification of the generators is
/// skipped; the recursive order is exact either way.
const CHAIN_VERIFY_MAX_VERTICES: usize = 2_000;

/// The group of all root-fixing legal automorphisms of the ball, with
/// recursive order, canonical generators, and the orbit summary. The
/// generators are certified by comparing the order of the group they
/// generate (via a stabilizer chain over ball vertices) with the recursive
/// count.
pub fn ball_group(ball: &DeltaTreeBall) -> Result<BallGroup, BallError> {
    if ball.radius() < 1 {
        return Err(BallError::RadiusTooSmall {
            given: 0,
            required: 1,
        });
    }
    let order = recursive_order(ball);
    let generators = canonical_lifts(ball);
    for g in &generators {
        debug_assert!(is_legal(ball, g));
        g.verify(ball)?;
    }
    if ball.vertex_count() <= CHAIN_VERIFY_MAX_VERTICES {
        let raw: Vec<Vec<usize>> = generators
            .iter()
            .map(|g| g.map.iter().map(|&x| x as usize).collect())
            .collect();
        let chain = StabChain::new(ball.vertex_count(), &raw);
        if chain.order() != order {
            return Err(BallError::Internal(format!(
                "generated order {} disagrees with the recursive count {}",
                chain.order(),
                order
            )));
        }
    }
    // Orbit summary on ball vertices.
    let n = ball.vertex_count();
    let mut seen = vec![false; n];
    let mut vertex_orbit_sizes = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut orbit = vec![start];
        seen[start] = true;
        let mut head = 0;
        while head < orbit.len() {
            let v = orbit[head];
            head += 1;
            for g in &generators {
                let w = g.apply(v);
                if !seen[w] {
                    seen[w] = true;
                    orbit.push(w);
                }
            }
        }
        vertex_orbit_sizes.push(orbit.len());
    }
    Ok(BallGroup {
        generators,
        order,
        vertex_orbit_sizes,
    })
}

/// Explicitly enumerate every root-fixing legal map, by backtracking over
/// the local action chosen at each interior vertex. `fix` optionally pins
/// one vertex (used for edge stabilizers). Fails above `cap` maps.
pub fn enumerate_root_fixing_maps(
    ball: &DeltaTreeBall,
    fix: Option<usize>,
    cap: usize,
) -> Result<Vec<BallAutomorphism>, BallError> {
    let interior: Vec<usize> = (0..ball.vertex_count())
        .filter(|&v| ball.is_interior(v))
        .collect();
    let mut out = Vec::new();
    let mut map: Vec<u32> = (0..ball.vertex_count() as u32).collect();
    fn go(
        ball: &DeltaTreeBall,
        interior: &[usize],
        idx: usize,
        map: &mut Vec<u32>,
        fix: Option<usize>,
        out: &mut Vec<BallAutomorphism>,
        cap: usize,
    ) -> Result<(), BallError> {
        if idx == interior.len() {
            if out.len() >= cap {
                return Err(BallError::EnumerationTooLarge { cap });
            }
            let g = BallAutomorphism { map: map.clone() };
            debug_assert!(is_legal(ball, &g));
            out.push(g);
            return Ok(());
        }
        let x = interior[idx];
        let y = map[x] as usize;
        let proj = ball.verts[x].proj;
        let kids_y = child_by_colour(ball, y);
        let constraint = ball.verts[x].parent.map(|_| {
            (
                ball.domain_index(proj, ball.verts[x].reverse_colour),
                ball.domain_index(proj, ball.verts[y].reverse_colour),
            )
        });
        let children = ball.verts[x].children.clone();
        for sigma in ball.elements_at(x) {
            if let Some((dx, dy)) = constraint {
                if sigma.apply(dx) != dy {
                    continue;
                }
            }
            let saved: Vec<u32> = children.iter().map(|&c| map[c as usize]).collect();
            let mut ok = true;
            for &cx in &children {
                let colour = ball.verts[cx as usize].parent_colour;
                let image_colour = ball.apply_sigma(proj, sigma, colour);
                let cy = kids_y[&image_colour];
                if let Some(fixed) = fix {
                    // Pinned vertex must stay put whenever it is assigned.
                    if cx as usize == fixed && cy as usize != fixed {
                        ok = false;
                        break;
                    }
                }
                map[cx as usize] = cy;
            }
            if ok {
                go(ball, interior, idx + 1, map, fix, out, cap)?;
            }
            for (&c, &old) in children.iter().zip(&saved) {
                map[c as usize] = old;
            }
        }
        Ok(())
    }
    go(ball, &interior, 0, &mut map, fix, &mut out, cap)?;
    Ok(out)
}

/// Count a set of maps and the cardinalities of its restrictions to a side
/// and its complement. A factorizing set satisfies
/// `total = side * complement`.
pub fn restriction_factorizes(
    maps: &[BallAutomorphism],
    side: &[bool],
) -> (usize, usize, usize) {
    let mut left: HashSet<Vec<u32>> = HashSet::new();
    let mut right: HashSet<Vec<u32>> = HashSet::new();
    for g in maps {
        let mut l = Vec::new();
        let mut r = Vec::new();
        for (v, &in_side) in side.iter().enumerate() {
            if in_side {
                l.push(g.map[v]);
            } else {
                r.push(g.map[v]);
            }
        }
        left.insert(l);
        right.insert(r);
    }
    (maps.len(), left.len(), right.len())
}

/// Result of the independence check at one ball edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndependenceCheck {
    pub holds: bool,
    /// order of the pointwise stabilizer of the edge in the ball group
    pub stabilizer_order: BigUint,
    /// orders of its induced actions on the two half-tree intersections
    pub side_orders: (BigUint, BigUint),
    /// whether the orders were additionally certified by explicit
    /// enumeration of the stabilizer's elements
    pub via_elements: bool,
}

const ELEMENT_PATH_CAP: usize = 100_000;

/// Check the independence property across one diagram arc at the given
/// radius: pick the ball edge from the root (over the arc's origin) to its
/// first child over the arc, compute the pointwise stabilizer of that edge,
/// and verify that its order is the product of the orders of its induced
/// actions on the two halves of the ball.
pub fn check_independence(
    diagram: &crate::diagram::LocalActionDiagram,
    arc_id: &str,
    radius: usize,
) -> Result<IndependenceCheck, BallError> {
    check_independence_with_cap(diagram, arc_id, radius, super::DEFAULT_MAX_BALL_VERTICES)
}

pub fn check_independence_with_cap(
    diagram: &crate::diagram::LocalActionDiagram,
    arc_id: &str,
    radius: usize,
    cap: usize,
) -> Result<IndependenceCheck, BallError> {
    use crate::diagram::LadError;
    if radius < 2 {
        return Err(BallError::RadiusTooSmall {
            given: radius,
            required: 2,
        });
    }
    let arc = diagram
        .arc(arc_id)
        .ok_or(LadError::UnknownArc(arc_id.to_string()))?;
    let root_id = arc.origin().to_string();
    let ball = super::build_ball_with_cap(diagram, &root_id, radius, cap)?;
    let arc_idx = ball
        .gamma_arc_ids
        .iter()
        .position(|a| a == arc_id)
        .expect("arc exists");
    let child = ball.verts[0]
        .children
        .iter()
        .copied()
        .find(|&c| ball.colour_arc[ball.verts[c as usize].parent_colour] == arc_idx)
        .expect("the root star covers every outgoing arc") as usize;

    // Recursive counts for the stabilizer of (root, child) and the two
    // restriction images.
    let proj = ball.verts[0].proj;
    let pinned_colour = ball.verts[child].parent_colour;
    let pinned_idx = ball.domain_index(proj, pinned_colour);
    let kids = child_by_colour(&ball, 0);
    let mut stabilizer_order = BigUint::from(0u32);
    let mut side_root = BigUint::from(0u32);
    for sigma in ball.elements_at(0) {
        if sigma.apply(pinned_idx) != pinned_idx {
            continue;
        }
        let mut with_subtree = BigUint::from(1u32);
        let mut without_subtree = BigUint::from(1u32);
        for &cx in &ball.verts[0].children {
            let colour = ball.verts[cx as usize].parent_colour;
            let image_colour = ball.apply_sigma(proj, sigma, colour);
            let count = count_sub(&ball, cx as usize, kids[&image_colour] as usize);
            with_subtree *= &count;
            if cx as usize != child {
                without_subtree *= &count;
            }
        }
        stabilizer_order += with_subtree;
        side_root += without_subtree;
    }
    let side_subtree = count_sub(&ball, child, child);
    let mut holds = stabilizer_order == &side_root * &side_subtree;

    // When small enough, certify by enumerating the stabilizer's elements
    // and counting the two restriction images directly.
    let mut via_elements = false;
    if stabilizer_order <= BigUint::from(ELEMENT_PATH_CAP) {
        let maps = enumerate_root_fixing_maps(&ball, Some(child), ELEMENT_PATH_CAP)?;
        let mut side = vec![false; ball.vertex_count()];
        for v in 0..ball.vertex_count() {
            // The child side of the edge: vertices whose path to the root
            // passes through `child`.
            let mut cur = v;
            loop {
                if cur == child {
                    side[v] = true;
                    break;
                }
                match ball.parent(cur) {
                    Some(p) => cur = p,
                    None => break,
                }
            }
        }
        let (total, on_side, on_rest) = restriction_factorizes(&maps, &side);
        via_elements = true;
        holds = holds
            && BigUint::from(total) == stabilizer_order
            && BigUint::from(on_side) == side_subtree
            && BigUint::from(on_rest) == side_root
            && total == on_side * on_rest;
    }

    Ok(IndependenceCheck {
        holds,
        stabilizer_order,
        side_orders: (side_root, side_subtree),
        via_elements,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ball::build_ball;
    use crate::corpus;

    #[test]
    fn bm_s3_orders() {
        let ball = build_ball(&corpus::bm_s3(), "v", 1).unwrap();
        let g = ball_group(&ball).unwrap();
        assert_eq!(g.order, BigUint::from(6u32));

        let ball = build_ball(&corpus::bm_s3(), "v", 2).unwrap();
        let g = ball_group(&ball).unwrap();
        assert_eq!(g.order, BigUint::from(48u32));
        // Explicit enumeration agrees.
        let maps = enumerate_root_fixing_maps(&ball, None, 10_000).unwrap();
        assert_eq!(maps.len(), 48);
    }

    #[test]
    fn figure3_ball_group_order_is_four() {
        // Trivial action at the root, Klein groups at the children with
        // point stabilizers of order 2 each.
        let ball = build_ball(&corpus::figure3(), "v", 2).unwrap();
        let g = ball_group(&ball).unwrap();
        assert_eq!(g.order, BigUint::from(4u32));
        let maps = enumerate_root_fixing_maps(&ball, None, 10_000).unwrap();
        assert_eq!(maps.len(), 4);
    }

    #[test]
    fn closure_of_generators_matches_order() {
        // Third route, independent of both the recursion and the
        // backtracking enumeration: close the generator set under
        // composition.
        for (entry, root, radius) in [
            (corpus::bm_s3(), "v", 2),
            (corpus::figure3(), "v", 2),
            (corpus::figure1(), "v", 2),
        ] {
            let ball = build_ball(&entry, root, radius).unwrap();
            let g = ball_group(&ball).unwrap();
            let mut seen = std::collections::BTreeSet::new();
            seen.insert(BallAutomorphism::identity(&ball));
            let mut frontier: Vec<BallAutomorphism> = seen.iter().cloned().collect();
            while let Some(p) = frontier.pop() {
                for gen in &g.generators {
                    let q = p.compose(gen);
                    if seen.insert(q.clone()) {
                        frontier.push(q);
                    }
                }
            }
            assert_eq!(BigUint::from(seen.len()), g.order);
        }
    }

    #[test]
    fn orbit_summary_covers_the_ball() {
        let ball = build_ball(&corpus::bm_s3(), "v", 2).unwrap();
        let g = ball_group(&ball).unwrap();
        let total: usize = g.vertex_orbit_sizes.iter().sum();
        assert_eq!(total, ball.vertex_count());
        // Root alone, the three children, the six grandchildren.
        assert_eq!(g.vertex_orbit_sizes, vec![1, 3, 6]);
    }

    #[test]
    fn independence_holds_on_small_balls() {
        let check = check_independence(&corpus::bm_s3(), "a1", 2).unwrap();
        assert!(check.holds);
        assert!(check.via_elements);
        // Stabilizer: colour-1-fixing root action (order 2) times three
        // stabilizer continuations of order 2.
        assert_eq!(check.stabilizer_order, BigUint::from(16u32));
        assert_eq!(
            check.side_orders,
            (BigUint::from(8u32), BigUint::from(2u32))
        );

        let check = check_independence(&corpus::figure3(), "a", 2).unwrap();
        assert!(check.holds);
    }

    #[test]
    fn coupled_subgroups_fail_the_factorization() {
        // Harness self-test: a strict subgroup coupling the two halves
        // cannot factor as a product of its restrictions.
        let ball = build_ball(&corpus::bm_s3(), "v", 2).unwrap();
        let child = ball.children(0)[0] as usize;
        let maps = enumerate_root_fixing_maps(&ball, Some(child), 10_000).unwrap();
        let mut side = vec![false; ball.vertex_count()];
        for v in 0..ball.vertex_count() {
            let mut cur = v;
            loop {
                if cur == child {
                    side[v] = true;
                    break;
                }
                match ball.parent(cur) {
                    Some(p) => cur = p,
                    None => break,
                }
            }
        }
        // Pick one element acting nontrivially on both halves and take the
        // cyclic subgroup it generates.
        let coupled = maps
            .iter()
            .find(|g| {
                let moves_side = (0..ball.vertex_count())
                    .any(|v| side[v] && g.apply(v) != v);
                let moves_rest = (0..ball.vertex_count())
                    .any(|v| !side[v] && g.apply(v) != v);
                moves_side && moves_rest
            })
            .expect("some stabilizer element moves both halves");
        let mut cyclic = vec![BallAutomorphism::identity(&ball)];
        let mut power = coupled.clone();
        while !power.is_identity() {
            cyclic.push(power.clone());
            power = power.compose(coupled);
        }
        let (total, l, r) = restriction_factorizes(&cyclic, &side);
        assert_ne!(total, l * r, "a coupled subgroup must not factor");
    }

    #[test]
    fn radius_below_two_is_rejected() {
        assert!(matches!(
            check_independence(&corpus::bm_s3(), "a1", 1),
            Err(BallError::RadiusTooSmall { .. })
        ));
    }
}
