//! Classification of vertex-transitive universal groups on small-degree
//! regular trees, via pairs (H, r): a subgroup H of the symmetric group up
//! to conjugacy together with an involution r of its orbit set. Orbits
//! fixed by r become self-paired loops of the single-vertex diagram, and
//! swapped orbit pairs become loop pairs. Two pairs are equivalent when a
//! symmetric-group element conjugates one subgroup onto the other and
//! intertwines the pairings; the resulting classes correspond bijectively
//! to isomorphism classes of the attached diagrams, which the test suite
//! counts both ways.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use serde::Serialize;
use thiserror::Error;

use crate::diagram::{
    from_pair, geometric_density, g_plus_trivial, iso, property_report, simplicity_report,
    LadError, LocalActionDiagram, PropertyReport, Verdict,
};
use crate::json;
use crate::perm::{subgroup_classes, FinitePermGroup, Perm, PermError};

/// Largest degree accepted by the classification.
pub const CLASSIFY_DEGREE_BOUND: usize = 6;

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error("degree {degree} exceeds the classification bound of {bound}")]
    DegreeBound { degree: usize, bound: usize },
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Lad(#[from] LadError),
    #[error("cannot write catalog: {0}")]
    Io(#[from] std::io::Error),
}

/// A group together with an involution of its orbit set (orbit indices in
/// canonical least-colour order). Orbits of different sizes may be paired.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPairing {
    pub base: FinitePermGroup,
    pub pairing: Vec<usize>,
}

/// All involutions (including the identity) of an `n`-element set, in a
/// deterministic order.
fn involutions(n: usize) -> Vec<Vec<usize>> {
    fn go(current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let n = current.len();
        match (0..n).find(|&i| current[i] == usize::MAX) {
            None => out.push(current.clone()),
            Some(i) => {
                current[i] = i;
                go(current, out);
                current[i] = usize::MAX;
                for j in i + 1..n {
                    if current[j] == usize::MAX {
                        current[i] = j;
                        current[j] = i;
                        go(current, out);
                        current[i] = usize::MAX;
                        current[j] = usize::MAX;
                    }
                }
            }
        }
    }
    let mut out = Vec::new();
    go(&mut vec![usize::MAX; n], &mut out);
    out
}

/// All orbit pairings of a group: every involution of its orbit set.
pub fn orbit_pairings(group: &FinitePermGroup) -> Vec<OrbitPairing> {
    involutions(group.orbits().len())
        .into_iter()
        .map(|pairing| OrbitPairing {
            base: group.clone(),
            pairing,
        })
        .collect()
}

fn all_perms(d: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..d).collect();
    loop {
        out.push(Perm::from_images(current.clone()).unwrap());
        let Some(i) = (0..d.saturating_sub(1)).rev().find(|&i| current[i] < current[i + 1])
        else {
            break;
        };
        let j = (i + 1..d).rev().find(|&j| current[j] > current[i]).unwrap();
        current.swap(i, j);
        current[i + 1..].reverse();
    }
    out
}

/// Search the full symmetric group for an element conjugating `h1` onto
/// `h2` whose induced map on orbit sets intertwines the two pairings.
/// Found witnesses are verified generator by generator.
pub fn pairs_equivalent(
    h1: &FinitePermGroup,
    r1: &[usize],
    h2: &FinitePermGroup,
    r2: &[usize],
) -> bool {
    if h1.degree() != h2.degree() || h1.order() != h2.order() {
        return false;
    }
    let orbits1 = h1.orbits();
    let orbits2 = h2.orbits();
    if orbits1.len() != orbits2.len() {
        return false;
    }
    for g in all_perms(h1.degree()) {
        // g H1 g^{-1} = H2, verified on every generator (orders match).
        let conjugates = h1.generators().iter().all(|x| {
            let image: Vec<usize> = {
                let inv = g.inverse();
                (0..h1.degree()).map(|p| g.apply(x.apply(inv.apply(p)))).collect()
            };
            h2.contains(&Perm::from_images(image).unwrap())
        });
        if !conjugates {
            continue;
        }
        // Induced orbit map.
        let mut induced = vec![usize::MAX; orbits1.len()];
        for (i, orbit) in orbits1.iter().enumerate() {
            let image: BTreeSet<usize> = orbit.iter().map(|&p| g.apply(p)).collect();
            induced[i] = orbits2.iter().position(|o| *o == image).expect("orbit image");
        }
        // Intertwining: induced . r1 = r2 . induced.
        if (0..orbits1.len()).all(|i| induced[r1[i]] == r2[induced[i]]) {
            return true;
        }
    }
    false
}

/// One equivalence class of pairs (H, r) with its attached diagram.
#[derive(Debug, Clone)]
pub struct PairClass {
    pub group: FinitePermGroup,
    pub pairing: Vec<usize>,
    pub diagram: LocalActionDiagram,
    pub report: PropertyReport,
}

impl PairClass {
    /// Cycle notation of the pairing over orbit indices; empty for the
    /// identity pairing.
    pub fn pairing_string(&self) -> String {
        let mut out = String::new();
        for (i, &j) in self.pairing.iter().enumerate() {
            if j > i {
                out.push_str(&format!("({i} {j})"));
            }
        }
        out
    }

    /// A single-vertex diagram with every loop self-paired is the diagram
    /// of a universal group over one whole local action.
    pub fn is_burger_mozes_form(&self) -> bool {
        self.diagram.arcs().iter().all(|a| a.is_self_paired())
    }
}

/// One representative per equivalence class of pairs (H, r) at degree `d`.
pub fn pair_classes(d: usize) -> Result<Vec<PairClass>, ClassifyError> {
    if d == 0 || d > CLASSIFY_DEGREE_BOUND {
        return Err(ClassifyError::DegreeBound {
            degree: d,
            bound: CLASSIFY_DEGREE_BOUND,
        });
    }
    let mut out = Vec::new();
    for h in subgroup_classes(d)? {
        let mut reps: Vec<Vec<usize>> = Vec::new();
        for pairing in involutions(h.orbits().len()) {
            if reps
                .iter()
                .any(|r| pairs_equivalent(&h, r, &h, &pairing))
            {
                continue;
            }
            reps.push(pairing);
        }
        for pairing in reps {
            let diagram = from_pair(&h, &pairing)?;
            let report = property_report(&diagram)?;
            out.push(PairClass {
                group: h.clone(),
                pairing,
                diagram,
                report,
            });
        }
    }
    Ok(out)
}

/// Partition diagrams into isomorphism classes; returns the classes as
/// index lists, in order of first appearance.
pub fn dedup_by_iso(diagrams: &[LocalActionDiagram]) -> Result<Vec<Vec<usize>>, LadError> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, d) in diagrams.iter().enumerate() {
        let mut placed = false;
        for class in classes.iter_mut() {
            if iso(&diagrams[class[0]], d)?.is_some() {
                class.push(i);
                placed = true;
                break;
            }
        }
        if !placed {
            classes.push(vec![i]);
        }
    }
    Ok(classes)
}

#[derive(Debug, Serialize)]
pub struct SummaryClass {
    pub id: String,
    pub subgroup_order: u64,
    pub orbit_sizes: Vec<usize>,
    pub pairing: String,
    pub burger_mozes: bool,
    pub verdicts: SummaryVerdicts,
}

#[derive(Debug, Serialize)]
pub struct SummaryVerdicts {
    pub geometrically_dense: Verdict,
    pub g_plus_trivial: Verdict,
    pub simple: Verdict,
}

#[derive(Debug, Serialize)]
pub struct CatalogSummary {
    pub degree: usize,
    pub count: usize,
    pub classes: Vec<SummaryClass>,
}

/// Write the full catalog for one degree: per class a diagram file and a
/// property report, plus a summary. Output is deterministic and identical
/// across thread counts. Degree zero is the degenerate empty catalog.
pub fn catalog(d: usize, out_dir: &Path, jobs: usize) -> Result<CatalogSummary, ClassifyError> {
    let classes = if d == 0 { Vec::new() } else { pair_classes(d)? };
    let dir = out_dir.join(format!("d{d}"));
    fs::create_dir_all(&dir)?;

    let render = |(i, class): (usize, &PairClass)| -> Result<(String, String, SummaryClass), ClassifyError> {
        let id = format!("class{}", i + 1);
        let diagram_json = json::diagram_to_json(&class.diagram);
        let report_json = json::report_to_json(&class.report);
        let mut orbit_sizes: Vec<usize> = class
            .group
            .orbits()
            .iter()
            .map(BTreeSet::len)
            .collect();
        orbit_sizes.sort_unstable_by(|a, b| b.cmp(a));
        let summary = SummaryClass {
            id: id.clone(),
            subgroup_order: class.group.order() as u64,
            orbit_sizes,
            pairing: class.pairing_string(),
            burger_mozes: class.is_burger_mozes_form(),
            verdicts: SummaryVerdicts {
                geometrically_dense: geometric_density(&class.diagram)
                    .map(|x| if x.dense { Verdict::Yes } else { Verdict::No })?,
                g_plus_trivial: g_plus_trivial(&class.diagram)?.verdict,
                simple: simplicity_report(&class.diagram)?.verdict,
            },
        };
        Ok((diagram_json, report_json, summary))
    };

    let rendered: Vec<(String, String, SummaryClass)> = if jobs > 1 {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("thread pool");
        pool.install(|| {
            classes
                .par_iter()
                .enumerate()
                .map(render)
                .collect::<Result<Vec<_>, _>>()
        })?
    } else {
        classes
            .iter()
            .enumerate()
            .map(render)
            .collect::<Result<Vec<_>, _>>()?
    };

    let mut summary_classes = Vec::new();
    for (i, (diagram_json, report_json, summary)) in rendered.into_iter().enumerate() {
        fs::write(dir.join(format!("class{}.lad.json", i + 1)), diagram_json)?;
        fs::write(dir.join(format!("class{}.report.json", i + 1)), report_json)?;
        summary_classes.push(summary);
    }
    let summary = CatalogSummary {
        degree: d,
        count: summary_classes.len(),
        classes: summary_classes,
    };
    let mut text = serde_json::to_string_pretty(&summary).expect("serializable");
    text.push('\n');
    fs::write(dir.join("summary.json"), text)?;
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::scopo_features;

    #[test]
    fn involution_counts_are_telephone_numbers() {
        for (n, expected) in [(0, 1), (1, 1), (2, 2), (3, 4), (4, 10), (5, 26)] {
            assert_eq!(involutions(n).len(), expected);
        }
    }

    #[test]
    fn transitive_groups_have_only_the_identity_pairing() {
        let pairings = orbit_pairings(&crate::corpus::s3());
        assert_eq!(pairings.len(), 1);
        assert_eq!(pairings[0].pairing, vec![0]);
    }

    #[test]
    fn two_orbits_give_two_pairings() {
        let trivial = FinitePermGroup::trivial(
            crate::perm::ColourDomain::new(["1", "2"]).unwrap(),
        )
        .unwrap();
        let pairings = orbit_pairings(&trivial);
        assert_eq!(pairings.len(), 2);
    }

    #[test]
    fn degree_two_has_three_classes() {
        let classes = pair_classes(2).unwrap();
        assert_eq!(classes.len(), 3);
        // Exactly one class is a focal cycle: the swapped pairing on the
        // trivial group, the translation action on the line.
        let focal: Vec<&PairClass> = classes
            .iter()
            .filter(|c| scopo_features(&c.diagram).unwrap().is_focal_cycle)
            .collect();
        assert_eq!(focal.len(), 1);
        assert_eq!(focal[0].group.order(), 1);
        assert_eq!(focal[0].pairing, vec![1, 0]);
    }

    #[test]
    fn degree_three_has_six_classes() {
        let classes = pair_classes(3).unwrap();
        assert_eq!(classes.len(), 6);
        // Some class is not of single-vertex self-paired form.
        assert!(classes.iter().any(|c| !c.is_burger_mozes_form()));
    }

    #[test]
    fn dedup_by_iso_counts_match_pair_classes() {
        for d in 1..=3 {
            let classes = pair_classes(d).unwrap();
            // Independent second count: all (H, r) pairs without pair-level
            // dedup, partitioned by diagram isomorphism.
            let mut diagrams = Vec::new();
            for h in subgroup_classes(d).unwrap() {
                for pairing in involutions(h.orbits().len()) {
                    diagrams.push(from_pair(&h, &pairing).unwrap());
                }
            }
            let iso_classes = dedup_by_iso(&diagrams).unwrap();
            assert_eq!(classes.len(), iso_classes.len(), "degree {d}");
        }
    }

    #[test]
    fn renamed_copy_dedups_to_one_class() {
        let d = crate::corpus::figure3();
        let same = crate::corpus::figure3();
        let classes = dedup_by_iso(&[d, same]).unwrap();
        assert_eq!(classes.len(), 1);
    }

    #[test]
    fn degree_bound_is_enforced() {
        assert!(pair_classes(0).is_err());
        assert!(pair_classes(7).is_err());
    }
}
