//! Built-in gluing tables for classic manifolds, used as fixtures and CLI
//! examples, plus the local pentagon configuration used by the
//! transition-map regression tests.

use thiserror::Error;

use crate::complex::{DeltaComplex, Gluing};
use crate::cover::{cycle_lift, LiftedPermutation};
use crate::perm::Permutation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CorpusError {
    #[error("unknown builtin complex {0:?}")]
    UnknownName(String),
    #[error("sphere dimension must be between 2 and 6, got {0}")]
    SphereDimension(usize),
}

/// Expected invariants for a builtin, checked by the acceptance suite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expectations {
    pub orientable: bool,
    pub h1_z2_rank: Option<usize>,
    pub spin_count: Option<u64>,
    pub spinc_exists: Option<bool>,
}

#[derive(Debug, Clone)]
pub struct NamedComplex {
    pub name: String,
    pub complex: DeltaComplex,
    pub expected: Expectations,
}

fn g(simplex: usize, images: &[usize]) -> Option<Gluing> {
    Some(Gluing { simplex, perm: Permutation::from_images(images.to_vec()).expect("valid") })
}

fn build(dimension: usize, gluings: Vec<Vec<Option<Gluing>>>) -> DeltaComplex {
    DeltaComplex::new(dimension, gluings).expect("builtin tables are valid")
}

/// Two triangles forming the one-vertex torus.
pub fn torus2() -> DeltaComplex {
    build(
        2,
        vec![
            vec![g(1, &[2, 0, 1]), g(1, &[0, 1, 2]), g(1, &[1, 2, 0])],
            vec![g(0, &[2, 0, 1]), g(0, &[0, 1, 2]), g(0, &[1, 2, 0])],
        ],
    )
}

/// Two triangles forming the one-vertex Klein bottle (one edge reversed
/// relative to the torus).
pub fn klein() -> DeltaComplex {
    build(
        2,
        vec![
            vec![g(1, &[2, 1, 0]), g(1, &[0, 1, 2]), g(1, &[1, 2, 0])],
            vec![g(0, &[2, 0, 1]), g(0, &[0, 1, 2]), g(0, &[2, 1, 0])],
        ],
    )
}

/// The boundary double of the n-simplex: two simplices, every facet glued to
/// its twin by the identity. Realizes Sⁿ.
pub fn double_simplex(n: usize) -> DeltaComplex {
    let verts = n + 1;
    let id: Vec<usize> = (0..verts).collect();
    let row =
        |other: usize| (0..verts).map(|_| g(other, &id)).collect::<Vec<_>>();
    build(n, vec![row(1), row(0)])
}

/// Two tetrahedra realizing S³ (the double 3-simplex).
pub fn s3_two_tet() -> DeltaComplex {
    double_simplex(3)
}

/// Two tetrahedra realizing RP³ = L(2,1): the two tetrahedra share two
/// faces (forming a lens-shaped ball) and the remaining boundary faces are
/// identified by the antipodal twist (0 1)(2 3).
pub fn rp3_two_tet() -> DeltaComplex {
    let twist = &[1usize, 0, 3, 2];
    let id = &[0usize, 1, 2, 3];
    build(
        3,
        vec![
            vec![g(1, twist), g(1, twist), g(1, id), g(1, id)],
            vec![g(0, twist), g(0, twist), g(0, id), g(0, id)],
        ],
    )
}

/// The 3-torus from the Kuhn decomposition of the cube into six tetrahedra,
/// with opposite cube faces glued by translation. Tetrahedra are indexed by
/// the six axis orders; faces 1 and 2 are interior (identity gluings) and
/// faces 0 and 3 cross the cube boundary (4-cycle vertex maps).
pub fn t3_six_tet() -> DeltaComplex {
    let perms: Vec<[usize; 3]> =
        vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let idx = |p: [usize; 3]| perms.iter().position(|&q| q == p).expect("axis order");
    let mut gluings = Vec::new();
    for &[s1, s2, s3] in &perms {
        let swap12 = idx([s2, s1, s3]);
        let swap23 = idx([s1, s3, s2]);
        let shift_fwd = idx([s2, s3, s1]);
        let shift_back = idx([s3, s1, s2]);
        gluings.push(vec![
            g(shift_fwd, &[3, 0, 1, 2]),
            g(swap12, &[0, 1, 2, 3]),
            g(swap23, &[0, 1, 2, 3]),
            g(shift_back, &[1, 2, 3, 0]),
        ]);
    }
    build(3, gluings)
}

pub const BUILTIN_NAMES: &[&str] = &[
    "torus2", "klein", "sphere2", "sphere3", "sphere4", "sphere5", "sphere6", "s3_two_tet",
    "rp3_two_tet", "t3_six_tet",
];

/// Looks up a builtin by name; sphere(n) is spelled `sphereN`.
pub fn builtin(name: &str) -> Result<NamedComplex, CorpusError> {
    let sphere = |n: usize| -> Result<NamedComplex, CorpusError> {
        if !(2..=6).contains(&n) {
            return Err(CorpusError::SphereDimension(n));
        }
        Ok(NamedComplex {
            name: format!("sphere{n}"),
            complex: double_simplex(n),
            expected: Expectations {
                orientable: true,
                h1_z2_rank: Some(0),
                spin_count: Some(1),
                spinc_exists: Some(true),
            },
        })
    };
    match name {
        "torus2" => Ok(NamedComplex {
            name: name.into(),
            complex: torus2(),
            expected: Expectations {
                orientable: true,
                h1_z2_rank: Some(2),
                spin_count: Some(4),
                spinc_exists: Some(true),
            },
        }),
        "klein" => Ok(NamedComplex {
            name: name.into(),
            complex: klein(),
            expected: Expectations {
                orientable: false,
                h1_z2_rank: Some(2),
                spin_count: None,
                spinc_exists: None,
            },
        }),
        "s3_two_tet" => Ok(NamedComplex {
            name: name.into(),
            complex: s3_two_tet(),
            expected: Expectations {
                orientable: true,
                h1_z2_rank: Some(0),
                spin_count: Some(1),
                spinc_exists: Some(true),
            },
        }),
        "rp3_two_tet" => Ok(NamedComplex {
            name: name.into(),
            complex: rp3_two_tet(),
            expected: Expectations {
                orientable: true,
                h1_z2_rank: Some(1),
                spin_count: Some(2),
                spinc_exists: Some(true),
            },
        }),
        "t3_six_tet" => Ok(NamedComplex {
            name: name.into(),
            complex: t3_six_tet(),
            expected: Expectations {
                orientable: true,
                h1_z2_rank: Some(3),
                spin_count: Some(8),
                spinc_exists: Some(true),
            },
        }),
        _ => {
            if let Some(rest) = name.strip_prefix("sphere") {
                let digits = rest.trim_start_matches('(').trim_end_matches(')');
                if let Ok(n) = digits.parse::<usize>() {
                    return sphere(n);
                }
            }
            Err(CorpusError::UnknownName(name.into()))
        }
    }
}

/// All builtins, for corpus-wide test sweeps.
pub fn all_builtins() -> Vec<NamedComplex> {
    BUILTIN_NAMES.iter().map(|n| builtin(n).expect("builtin")).collect()
}

/// The local pentagon configuration around one vertex: five triangles in a
/// cycle, each glued to the next across an edge with transition (0 1),
/// carrying the specific framing data whose transition maps multiply to -1.
/// Bounded, so it only feeds the transition-map evaluator, never the closed
/// pipeline.
#[derive(Debug, Clone)]
pub struct PentagonPatch {
    /// ambient rank n + 1 = 3
    pub rank: usize,
    /// frame vertex per triangle (n - 1 = 1 combinatorial vector each)
    pub frames: Vec<usize>,
    /// lift of the rotation pushing the frame of Sᵢ into the exit edge
    pub b1: Vec<LiftedPermutation>,
    /// lift on the S_{i+1} side of the same edge
    pub b2: Vec<LiftedPermutation>,
    /// w_i, identical for every position here: 0 ↦ 2 (the central vertex),
    /// 1 ↦ 0 (exit edge index), 2 ↦ 1 (entry edge index)
    pub w: Vec<Permutation>,
}

pub fn pentagon_patch() -> PentagonPatch {
    let rank = 3;
    let id = LiftedPermutation::identity(rank);
    let rot = cycle_lift(&[0, 1, 2], rank).expect("valid cycle"); // [012]
    let tor = cycle_lift(&[2, 1, 0], rank).expect("valid cycle"); // [210]
    let w = Permutation::from_images(vec![2, 0, 1]).expect("valid");
    PentagonPatch {
        rank,
        frames: vec![0, 0, 2, 2, 0],
        b1: vec![rot.clone(), tor.clone(), id.clone(), tor, rot],
        b2: vec![id.clone(), id.clone(), id.clone(), id.clone(), id],
        w: vec![w.clone(), w.clone(), w.clone(), w.clone(), w],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_validate_and_export() {
        for named in all_builtins() {
            let json = named.complex.to_json();
            let parsed = DeltaComplex::parse_and_validate(&json).expect("round trip validates");
            assert_eq!(parsed, named.complex);
        }
    }

    #[test]
    fn unknown_name_is_an_error() {
        assert!(matches!(builtin("poincare"), Err(CorpusError::UnknownName(_))));
        assert!(matches!(builtin("sphere9"), Err(CorpusError::SphereDimension(9))));
    }

    #[test]
    fn sphere_aliases() {
        assert_eq!(builtin("sphere(4)").unwrap().name, "sphere4");
    }

    #[test]
    fn t3_kuhn_euler_characteristic() {
        let dc = t3_six_tet();
        assert_eq!(dc.simplex_count(), 6);
        // χ = V - E + F - T = 1 - 7 + 12 - 6 = 0
    }
}
