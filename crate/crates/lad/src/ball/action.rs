//! Ball automorphisms and their local actions.
//!
//! A ball automorphism is a vertex bijection preserving adjacency, the root
//! and the projection fibres, whose local action at every interior vertex
//! lies in the prescribed local group. Boundary vertices carry no
//! local-action constraint: their stars are incomplete.

use crate::perm::Perm;

use super::{BallError, DeltaTreeBall};

/// A root-fixing, colour-legal automorphism of a ball, as the image vector
/// over ball vertex indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BallAutomorphism {
    pub(crate) map: Vec<u32>,
}

impl BallAutomorphism {
    pub fn identity(ball: &DeltaTreeBall) -> Self {
        BallAutomorphism {
            map: (0..ball.vertex_count() as u32).collect(),
        }
    }

    pub fn apply(&self, v: usize) -> usize {
        self.map[v] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.map
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn compose(&self, then: &BallAutomorphism) -> BallAutomorphism {
        BallAutomorphism {
            map: self.map.iter().map(|&x| then.map[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> BallAutomorphism {
        let mut inv = vec![0u32; self.map.len()];
        for (i, &x) in self.map.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        BallAutomorphism { map: inv }
    }

    /// Full legality check: bijection, root fixed, adjacency and projection
    /// fibres preserved, and every interior local action in its local group.
    pub fn verify(&self, ball: &DeltaTreeBall) -> Result<(), BallError> {
        let n = ball.vertex_count();
        if self.map.len() != n {
            return Err(BallError::IllegalMap("wrong vertex count".to_string()));
        }
        let mut seen = vec![false; n];
        for &x in &self.map {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(BallError::IllegalMap("not a bijection".to_string()));
            }
            seen[x] = true;
        }
        if self.map[0] != 0 {
            return Err(BallError::IllegalMap("root is not fixed".to_string()));
        }
        for v in 0..n {
            let image = self.apply(v);
            if ball.verts[v].proj != ball.verts[image].proj {
                return Err(BallError::IllegalMap(format!(
                    "vertex {v} leaves its projection fibre"
                )));
            }
            if let Some(p) = ball.parent(v) {
                let image_parent = ball.parent(image).ok_or_else(|| {
                    BallError::IllegalMap(format!("image of {v} lost its parent"))
                })?;
                if self.apply(p) != image_parent {
                    return Err(BallError::IllegalMap(format!(
                        "adjacency broken at vertex {v}"
                    )));
                }
            }
        }
        for v in 0..n {
            if ball.is_interior(v) {
                local_action_of(ball, self, v)?;
            }
        }
        Ok(())
    }
}

/// The local action of a vertex bijection at an interior vertex: read a
/// colour at `v`, move along the corresponding arc, apply the map, and read
/// the colour of the image arc at the image vertex. Both `v` and its image
/// must be interior so both stars are complete.
pub fn local_action_of(
    ball: &DeltaTreeBall,
    g: &BallAutomorphism,
    v: usize,
) -> Result<Perm, BallError> {
    let image = g.apply(v);
    for x in [v, image] {
        if !ball.is_interior(x) {
            return Err(BallError::StarIncomplete {
                depth: ball.depth(x),
            });
        }
    }
    let proj = ball.verts[v].proj;
    if ball.verts[image].proj != proj {
        return Err(BallError::IllegalMap(format!(
            "vertex {v} leaves its projection fibre"
        )));
    }
    let degree = ball.group_colours[proj].len();
    let image_star = ball.star(image);
    let mut images = vec![usize::MAX; degree];
    for (colour, neighbour, _) in ball.star(v) {
        let image_neighbour = g.apply(neighbour as usize) as u32;
        let Some(&(image_colour, _, _)) = image_star
            .iter()
            .find(|&&(_, m, _)| m == image_neighbour)
        else {
            return Err(BallError::IllegalMap(format!(
                "adjacency broken at vertex {v}"
            )));
        };
        images[ball.domain_index(proj, colour)] = ball.domain_index(proj, image_colour);
    }
    Perm::from_images(images)
        .ok_or_else(|| BallError::IllegalMap(format!("local action at {v} is not a bijection")))
}

/// Whether the local action of `g` at every interior vertex lies in the
/// prescribed local group.
pub(crate) fn is_legal(ball: &DeltaTreeBall, g: &BallAutomorphism) -> bool {
    (0..ball.vertex_count()).all(|v| {
        if !ball.is_interior(v) {
            return true;
        }
        match local_action_of(ball, g, v) {
            Ok(sigma) => ball.groups[ball.verts[v].proj].contains(&sigma),
            Err(_) => false,
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ball::build_ball;
    use crate::corpus;

    #[test]
    fn identity_has_identity_local_actions() {
        let ball = build_ball(&corpus::bm_s3(), "v", 2).unwrap();
        let id = BallAutomorphism::identity(&ball);
        id.verify(&ball).unwrap();
        for v in 0..ball.vertex_count() {
            if ball.is_interior(v) {
                assert!(local_action_of(&ball, &id, v).unwrap().is_identity());
            }
        }
    }

    #[test]
    fn boundary_vertices_report_incomplete_stars() {
        let ball = build_ball(&corpus::bm_s3(), "v", 1).unwrap();
        let id = BallAutomorphism::identity(&ball);
        let boundary = ball.children(0)[0] as usize;
        assert!(matches!(
            local_action_of(&ball, &id, boundary),
            Err(BallError::StarIncomplete { depth: 1 })
        ));
    }

    #[test]
    fn swapping_subtrees_reads_off_as_a_transposition() {
        // In the S3 ball of radius 2, swap the subtrees under the children
        // labelled by the colours "1" and "2", matching labels across.
        let ball = build_ball(&corpus::bm_s3(), "v", 2).unwrap();
        let kids = ball.children(0);
        let (c1, c2) = (kids[0] as usize, kids[1] as usize);
        let mut map: Vec<u32> = (0..ball.vertex_count() as u32).collect();
        map[c1] = c2 as u32;
        map[c2] = c1 as u32;
        // Both children exclude the canonical reverse colour "1", so each
        // has grandchildren coloured "2" and "3"; pair them by colour.
        let (k1, k2) = (ball.children(c1), ball.children(c2));
        for (&x, &y) in k1.iter().zip(k2) {
            assert_eq!(
                ball.label(x as usize).last(),
                ball.label(y as usize).last()
            );
            map[x as usize] = y;
            map[y as usize] = x;
        }
        let g = BallAutomorphism { map };
        g.verify(&ball).unwrap();
        let sigma = local_action_of(&ball, &g, 0).unwrap();
        let domain = ball.groups[0].domain();
        assert_eq!(sigma.cycle_string(domain), "(1 2)");
        assert!(is_legal(&ball, &g));
    }
}
