//! Triangulations as unordered delta complexes: top simplices with
//! permutation-labelled facet gluings, plus validation, orientation, and the
//! first Stiefel-Whitney cochain.
//!
//! A gluing entry `(s, i) → { simplex: t, perm: ρ }` attaches facet i of
//! simplex s (the facet opposite vertex i) to facet ρ(i) of simplex t, with
//! vertex correspondence ρ. ρ is exactly the transition map between the
//! characteristic-map domains of the two simplices.

pub mod skeleton;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::perm::Permutation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("malformed triangulation document: {0}")]
    Parse(String),
    #[error("dimension must be at least 2, got {0}")]
    DimensionTooSmall(usize),
    #[error("dimension {0} exceeds the supported maximum 8")]
    DimensionTooLarge(usize),
    #[error("complex must contain at least one simplex")]
    Empty,
    #[error("gluing table has {got} rows for {simplices} simplices")]
    GluingRowCount { simplices: usize, got: usize },
    #[error("simplex {simplex} has {got} facet entries, expected {expected}")]
    GluingColCount { simplex: usize, got: usize, expected: usize },
    #[error("gluing at simplex {simplex} facet {facet}: {source}")]
    BadPermutation {
        simplex: usize,
        facet: usize,
        source: crate::perm::PermError,
    },
    #[error("gluing at simplex {simplex} facet {facet} targets simplex {target}, out of range")]
    TargetOutOfRange { simplex: usize, facet: usize, target: usize },
    #[error("facet {facet} of simplex {simplex} is unglued; closed complexes are required")]
    UngluedFacet { simplex: usize, facet: usize },
    #[error("facet {facet} of simplex {simplex} is glued to itself")]
    SelfGluedFacet { simplex: usize, facet: usize },
    #[error("gluing at simplex {simplex} facet {facet} is not involutive")]
    NonInvolutive { simplex: usize, facet: usize },
    #[error("codimension-2 face at simplex {simplex} is identified with itself by a nontrivial permutation")]
    Codim2Twisted { simplex: usize, corner: Vec<usize> },
    #[error("codimension-3 link at simplex {simplex} is not a 2-sphere (χ = {chi}, {components} component(s))")]
    Codim3LinkNotSphere { simplex: usize, corner: Vec<usize>, chi: i64, components: usize },
    #[error("codimension-3 link edge at simplex {simplex} is glued to itself (fold)")]
    LinkEdgeFolded { simplex: usize, corner: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gluing {
    pub simplex: usize,
    pub perm: Permutation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaComplex {
    dimension: usize,
    gluings: Vec<Vec<Option<Gluing>>>,
}

#[derive(Debug, Serialize, Deserialize)]
struct RawDocument {
    dimension: usize,
    simplices: usize,
    gluings: Vec<Vec<Option<RawGluing>>>,
}

#[derive(Debug, Serialize, Deserialize)]
struct RawGluing {
    simplex: usize,
    perm: Vec<usize>,
}

impl DeltaComplex {
    /// Builds and fully validates a complex from its gluing table.
    pub fn new(
        dimension: usize,
        gluings: Vec<Vec<Option<Gluing>>>,
    ) -> Result<DeltaComplex, ComplexError> {
        let dc = DeltaComplex { dimension, gluings };
        dc.validate_structure()?;
        skeleton::Skeleton::build(&dc)?;
        Ok(dc)
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn simplex_count(&self) -> usize {
        self.gluings.len()
    }

    /// Number of vertices per simplex, n + 1.
    pub fn verts(&self) -> usize {
        self.dimension + 1
    }

    pub fn gluing(&self, simplex: usize, facet: usize) -> Option<&Gluing> {
        self.gluings[simplex][facet].as_ref()
    }

    fn validate_structure(&self) -> Result<(), ComplexError> {
        if self.dimension < 2 {
            return Err(ComplexError::DimensionTooSmall(self.dimension));
        }
        if self.dimension > 8 {
            return Err(ComplexError::DimensionTooLarge(self.dimension));
        }
        if self.gluings.is_empty() {
            return Err(ComplexError::Empty);
        }
        let verts = self.verts();
        for (s, row) in self.gluings.iter().enumerate() {
            if row.len() != verts {
                return Err(ComplexError::GluingColCount {
                    simplex: s,
                    got: row.len(),
                    expected: verts,
                });
            }
            for (i, entry) in row.iter().enumerate() {
                let Some(g) = entry else {
                    return Err(ComplexError::UngluedFacet { simplex: s, facet: i });
                };
                if g.simplex >= self.gluings.len() {
                    return Err(ComplexError::TargetOutOfRange {
                        simplex: s,
                        facet: i,
                        target: g.simplex,
                    });
                }
                if g.perm.len() != verts {
                    return Err(ComplexError::BadPermutation {
                        simplex: s,
                        facet: i,
                        source: crate::perm::PermError::SizeMismatch(g.perm.len(), verts),
                    });
                }
                let j = g.perm.apply(i);
                if g.simplex == s && j == i {
                    return Err(ComplexError::SelfGluedFacet { simplex: s, facet: i });
                }
                // the reverse entry must be (s, ρ⁻¹)
                match &self.gluings[g.simplex][j] {
                    Some(back) if back.simplex == s && back.perm == g.perm.inverse() => {}
                    _ => return Err(ComplexError::NonInvolutive { simplex: s, facet: i }),
                }
            }
        }
        Ok(())
    }

    /// Parses the JSON triangulation document and checks every invariant.
    pub fn parse_and_validate(text: &str) -> Result<DeltaComplex, ComplexError> {
        let raw: RawDocument =
            serde_json::from_str(text).map_err(|e| ComplexError::Parse(e.to_string()))?;
        if raw.gluings.len() != raw.simplices {
            return Err(ComplexError::GluingRowCount {
                simplices: raw.simplices,
                got: raw.gluings.len(),
            });
        }
        let verts = raw.dimension + 1;
        let mut gluings = Vec::with_capacity(raw.gluings.len());
        for (s, row) in raw.gluings.into_iter().enumerate() {
            let mut out = Vec::with_capacity(row.len());
            for (i, entry) in row.into_iter().enumerate() {
                match entry {
                    None => out.push(None),
                    Some(rg) => {
                        if rg.perm.len() != verts {
                            return Err(ComplexError::BadPermutation {
                                simplex: s,
                                facet: i,
                                source: crate::perm::PermError::SizeMismatch(rg.perm.len(), verts),
                            });
                        }
                        let perm = Permutation::from_images(rg.perm)
                            .map_err(|e| ComplexError::BadPermutation { simplex: s, facet: i, source: e })?;
                        out.push(Some(Gluing { simplex: rg.simplex, perm }));
                    }
                }
            }
            gluings.push(out);
        }
        DeltaComplex::new(raw.dimension, gluings)
    }

    /// Serializes to the canonical JSON triangulation document.
    pub fn to_json(&self) -> String {
        let raw = RawDocument {
            dimension: self.dimension,
            simplices: self.simplex_count(),
            gluings: self
                .gluings
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|e| {
                            e.as_ref().map(|g| RawGluing {
                                simplex: g.simplex,
                                perm: g.perm.images().to_vec(),
                            })
                        })
                        .collect()
                })
                .collect(),
        };
        serde_json::to_string(&raw).expect("serialization cannot fail")
    }

    /// The same complex with simplices renumbered by `simplex_perm` and each
    /// simplex's vertices relabelled by its entry in `vertex_perms`.
    pub fn relabeled(
        &self,
        simplex_perm: &Permutation,
        vertex_perms: &[Permutation],
    ) -> Result<DeltaComplex, ComplexError> {
        assert_eq!(simplex_perm.len(), self.simplex_count());
        assert_eq!(vertex_perms.len(), self.simplex_count());
        let verts = self.verts();
        let mut gluings = vec![vec![None; verts]; self.simplex_count()];
        for (s, row) in self.gluings.iter().enumerate() {
            for (i, entry) in row.iter().enumerate() {
                let Some(g) = entry else { continue };
                let (t, rho) = (g.simplex, &g.perm);
                let s_new = simplex_perm.apply(s);
                let i_new = vertex_perms[s].apply(i);
                let t_new = simplex_perm.apply(t);
                let rho_new = vertex_perms[t].compose(&rho.compose(&vertex_perms[s].inverse()));
                gluings[s_new][i_new] = Some(Gluing { simplex: t_new, perm: rho_new });
            }
        }
        DeltaComplex::new(self.dimension, gluings)
    }
}

/// Orientation and ω₁ verdict relative to the returned simplex signs.
#[derive(Debug, Clone)]
pub struct OrientationReport {
    /// +1 / -1 per simplex, from spanning-tree propagation.
    pub signs: Vec<i8>,
    /// ω₁ value per facet class: 0 when the two sides are compatibly
    /// oriented (transition odd relative to the signs), 1 otherwise.
    pub w1: Vec<u8>,
    /// None when orientable; otherwise a dual 1-cycle (list of facet-class
    /// ids) along which ω₁ sums to 1.
    pub odd_cycle: Option<Vec<usize>>,
}

impl OrientationReport {
    pub fn orientable(&self) -> bool {
        self.odd_cycle.is_none()
    }
}

/// ω₁ relative to an arbitrary simplex sign assignment: 0 on a facet when
/// the two sides are compatibly oriented (odd transition for like signs).
pub fn w1_for_signs(skel: &skeleton::Skeleton, signs: &[i8]) -> Vec<u8> {
    skel.facets()
        .iter()
        .map(|f| {
            let (s, _) = f.side1;
            let (t, _) = f.side2;
            let compatible = if f.perm.is_odd() {
                signs[s] == signs[t]
            } else {
                signs[s] != signs[t]
            };
            u8::from(!compatible)
        })
        .collect()
}

/// Propagates simplex orientations along a spanning tree of the dual
/// 1-skeleton. Two simplices glued by ρ are compatibly oriented when
/// sign(s)·sign(t)·sgn(ρ) = -1, i.e. the transition is odd for like signs.
pub fn orient_and_w1(dc: &DeltaComplex, skel: &skeleton::Skeleton) -> OrientationReport {
    let n_s = dc.simplex_count();
    let mut signs: Vec<i8> = vec![0; n_s];
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n_s]; // (parent simplex, facet class)
    let mut conflict: Option<(usize, usize)> = None; // (facet class, offending simplex)

    for root in 0..n_s {
        if signs[root] != 0 {
            continue;
        }
        signs[root] = 1;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(s) = queue.pop_front() {
            for i in 0..dc.verts() {
                let g = dc.gluing(s, i).expect("validated complex is closed");
                let t = g.simplex;
                let needed = if g.perm.is_odd() { signs[s] } else { -signs[s] };
                if signs[t] == 0 {
                    signs[t] = needed;
                    parent[t] = Some((s, skel.facet_class_of(s, i)));
                    queue.push_back(t);
                } else if signs[t] != needed && conflict.is_none() {
                    conflict = Some((skel.facet_class_of(s, i), s));
                }
            }
        }
    }

    let w1 = w1_for_signs(skel, &signs);

    let odd_cycle = conflict.map(|(fc, s)| {
        // tree path from s up to the root, the conflicting edge, and the
        // other endpoint's path; combined parity over the cycle is odd.
        let f = &skel.facets()[fc];
        let t = if f.side1.0 == s { f.side2.0 } else { f.side1.0 };
        let mut cycle = vec![fc];
        let path = |mut v: usize, cycle: &mut Vec<usize>| {
            while let Some((p, via)) = parent[v] {
                cycle.push(via);
                v = p;
            }
        };
        path(s, &mut cycle);
        path(t, &mut cycle);
        // edges appearing twice (shared root path) cancel mod 2
        let mut counts = std::collections::BTreeMap::new();
        for e in cycle {
            *counts.entry(e).or_insert(0usize) += 1;
        }
        counts.into_iter().filter(|(_, c)| c % 2 == 1).map(|(e, _)| e).collect()
    });

    OrientationReport { signs, w1, odd_cycle }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn torus_parses_and_counts() {
        let dc = corpus::torus2();
        assert_eq!(dc.dimension(), 2);
        assert_eq!(dc.simplex_count(), 2);
        let skel = skeleton::Skeleton::build(&dc).unwrap();
        assert_eq!(skel.facets().len(), 3);
        assert_eq!(skel.codim2_count(), 1);
    }

    #[test]
    fn json_round_trip_is_stable() {
        let dc = corpus::torus2();
        let j1 = dc.to_json();
        let dc2 = DeltaComplex::parse_and_validate(&j1).unwrap();
        assert_eq!(dc, dc2);
        assert_eq!(j1, dc2.to_json());
    }

    #[test]
    fn involutivity_violation_detected() {
        let dc = corpus::torus2();
        let mut text = serde_json::from_str::<serde_json::Value>(&dc.to_json()).unwrap();
        // corrupt one reverse entry
        text["gluings"][0][0]["perm"] = serde_json::json!([0, 2, 1]);
        let err = DeltaComplex::parse_and_validate(&text.to_string()).unwrap_err();
        assert!(matches!(err, ComplexError::NonInvolutive { .. }));
    }

    #[test]
    fn unglued_facet_rejected() {
        let dc = corpus::torus2();
        let mut text = serde_json::from_str::<serde_json::Value>(&dc.to_json()).unwrap();
        text["gluings"][0][0] = serde_json::Value::Null;
        text["gluings"][1][0] = serde_json::Value::Null;
        let err = DeltaComplex::parse_and_validate(&text.to_string()).unwrap_err();
        assert!(matches!(err, ComplexError::UngluedFacet { .. }));
    }

    #[test]
    fn orientation_of_corpus() {
        for (dc, expect) in [
            (corpus::torus2(), true),
            (corpus::klein(), false),
            (corpus::double_simplex(4), true),
        ] {
            let skel = skeleton::Skeleton::build(&dc).unwrap();
            let report = orient_and_w1(&dc, &skel);
            assert_eq!(report.orientable(), expect);
            if expect {
                assert!(report.w1.iter().all(|&b| b == 0));
            } else {
                let cycle = report.odd_cycle.unwrap();
                let sum: u8 = cycle.iter().map(|&f| report.w1[f]).sum::<u8>() % 2;
                assert_eq!(sum, 1, "certificate cycle must have odd ω₁ sum");
            }
        }
    }

    #[test]
    fn sign_flip_is_a_coboundary_on_w1() {
        // flipping one simplex toggles ω₁ exactly on its incident facet
        // classes (once per incidence, mod 2)
        for dc in [corpus::torus2(), corpus::rp3_two_tet(), corpus::t3_six_tet()] {
            let skel = skeleton::Skeleton::build(&dc).unwrap();
            let report = orient_and_w1(&dc, &skel);
            for flip in 0..dc.simplex_count() {
                let mut signs = report.signs.clone();
                signs[flip] = -signs[flip];
                let w1 = w1_for_signs(&skel, &signs);
                for f in skel.facets() {
                    let incidences =
                        usize::from(f.side1.0 == flip) + usize::from(f.side2.0 == flip);
                    let expected = report.w1[f.id] ^ (incidences % 2) as u8;
                    assert_eq!(w1[f.id], expected);
                }
            }
        }
    }

    #[test]
    fn orientation_matches_brute_force() {
        // oracle: try all 2^#S sign assignments directly
        for dc in [corpus::torus2(), corpus::klein(), corpus::s3_two_tet(), corpus::rp3_two_tet()] {
            let skel = skeleton::Skeleton::build(&dc).unwrap();
            let report = orient_and_w1(&dc, &skel);
            let n = dc.simplex_count();
            let mut any = false;
            'outer: for bits in 0u32..(1 << n) {
                let signs: Vec<i8> = (0..n).map(|s| if bits >> s & 1 == 1 { -1 } else { 1 }).collect();
                for f in skel.facets() {
                    let compatible = if f.perm.is_odd() {
                        signs[f.side1.0] == signs[f.side2.0]
                    } else {
                        signs[f.side1.0] != signs[f.side2.0]
                    };
                    if !compatible {
                        continue 'outer;
                    }
                }
                any = true;
                break;
            }
            assert_eq!(report.orientable(), any);
        }
    }
}
