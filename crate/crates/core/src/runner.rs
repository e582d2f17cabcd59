//! Command implementations behind the CLI: each subcommand returns a status
//! (mapped to an exit code), a canonical JSON payload, and a one-line human
//! summary that agrees with the payload on every verdict.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::complex::skeleton::{dual_skeleton, Skeleton};
use crate::complex::{orient_and_w1, DeltaComplex};
use crate::corpus;
use crate::cover::enumerate_cover;
use crate::gf2::BitVec;
use crate::homology::{cohomology_gf2, cohomology_z};
use crate::models::{build_a5_model, build_sigma4_model, verify_model_isomorphism};
use crate::spin::structures::{act_h1, solve_spin_structures, SpinStructureSet};
use crate::spin::{SpinContext, SpinError};
use crate::spinc::{find_spinc, spinc_check, SpinCError, SpinCOutcome};

/// Outcome classes, each with its own process exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    UsageError,
    ValidationError,
    NonOrientable,
    Infeasible,
    InternalError,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::UsageError => 1,
            Status::ValidationError => 2,
            Status::NonOrientable => 3,
            Status::Infeasible => 4,
            Status::InternalError => 5,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CommandResult {
    pub status: Status,
    pub payload: Value,
    pub summary: String,
    /// when set, the CLI prints this exact text instead of the payload
    /// (used for the byte-exact triangulation export)
    pub raw_output: Option<String>,
}

impl CommandResult {
    fn ok(payload: Value, summary: impl Into<String>) -> Self {
        CommandResult { status: Status::Ok, payload, summary: summary.into(), raw_output: None }
    }

    fn fail(status: Status, error: impl Into<String>) -> Self {
        let error = error.into();
        CommandResult {
            status,
            payload: json!({ "error": error }),
            summary: error,
            raw_output: None,
        }
    }

    /// Canonical JSON rendering (sorted keys, no trailing newline).
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.payload).expect("payload serializes")
    }
}

fn bigint_value(v: &BigInt) -> Value {
    match i64::try_from(v) {
        Ok(small) => json!(small),
        Err(_) => json!(v.to_string()),
    }
}

fn bits_map(bits: &BitVec) -> Value {
    let map: BTreeMap<String, u8> =
        (0..bits.len()).map(|i| (i.to_string(), u8::from(bits.get(i)))).collect();
    json!(map)
}

fn spin_error_result(e: SpinError) -> CommandResult {
    match e {
        SpinError::NonOrientable => CommandResult::fail(Status::NonOrientable, e.to_string()),
        SpinError::Complex(c) => CommandResult::fail(Status::ValidationError, c.to_string()),
        SpinError::NotACocycle => CommandResult::fail(Status::ValidationError, e.to_string()),
        other => CommandResult::fail(Status::InternalError, other.to_string()),
    }
}

fn spinc_error_result(e: SpinCError) -> CommandResult {
    match e {
        SpinCError::Spin(s) => spin_error_result(s),
        SpinCError::NotACocycle | SpinCError::WrongLength(..) => {
            CommandResult::fail(Status::ValidationError, e.to_string())
        }
        other => CommandResult::fail(Status::InternalError, other.to_string()),
    }
}

/// `validate <file>`: structural and manifold checks with counts.
pub fn validate(document: &str) -> CommandResult {
    match DeltaComplex::parse_and_validate(document) {
        Err(e) => CommandResult::fail(Status::ValidationError, e.to_string()),
        Ok(dc) => {
            let skel = Skeleton::build(&dc).expect("validated");
            let dual = dual_skeleton(&dc, &skel);
            let payload = json!({
                "valid": true,
                "dimension": dc.dimension(),
                "simplices": dc.simplex_count(),
                "facet_classes": dual.cells1,
                "codim2_classes": dual.cells2,
                "codim3_classes": dual.cells3,
                "components": skel.component_count(),
            });
            let summary = format!(
                "valid {}-dimensional complex: {} simplices, {} facet classes, {} components",
                dc.dimension(),
                dc.simplex_count(),
                dual.cells1,
                skel.component_count()
            );
            CommandResult::ok(payload, summary)
        }
    }
}

/// `invariants <file>`: ω₁/orientability, H¹(Z₂), H²(Z), and for orientable
/// complexes the ω₂ verdict, spin count, and spin-c existence.
pub fn invariants(document: &str) -> CommandResult {
    let dc = match DeltaComplex::parse_and_validate(document) {
        Err(e) => return CommandResult::fail(Status::ValidationError, e.to_string()),
        Ok(dc) => dc,
    };
    let skel = Skeleton::build(&dc).expect("validated");
    let orient = orient_and_w1(&dc, &skel);
    let h1 = cohomology_gf2(&skel.d0_gf2(dc.simplex_count()), &skel.d1_gf2())
        .expect("dual complex differentials compose to zero");
    let h2 = cohomology_z(&skel.d1_int(), &skel.d2_int())
        .expect("dual complex differentials compose to zero");
    let dual = dual_skeleton(&dc, &skel);
    let mut payload = json!({
        "dimension": dc.dimension(),
        "simplices": dc.simplex_count(),
        "orientable": orient.orientable(),
        "orientation_signs": if orient.orientable() { json!(orient.signs) } else { Value::Null },
        "w1_cochain": json!(orient.w1),
        "w1_odd_cycle": orient.odd_cycle.as_ref().map(|c| json!(c)).unwrap_or(Value::Null),
        "h1_z2_rank": h1.rank,
        "h2_z": {
            "free_rank": h2.free_rank,
            "torsion": h2.torsion.iter().map(bigint_value).collect::<Vec<_>>(),
        },
        "dual_cells": {
            "0": dual.cells0, "1": dual.cells1, "2": dual.cells2, "3": dual.cells3,
        },
    });
    let obj = payload.as_object_mut().expect("object");
    if orient.orientable() {
        let ctx = SpinContext::new(&dc).expect("orientable");
        match solve_spin_structures(&ctx) {
            Err(e) => return spin_error_result(e),
            Ok(set) => {
                obj.insert("w2_class_zero".into(), json!(set.count_log2().is_some()));
                obj.insert(
                    "spin_count".into(),
                    set.count_log2().map(|_| json!(set.count())).unwrap_or(json!(0)),
                );
            }
        }
        match find_spinc(&ctx) {
            Err(e) => return spinc_error_result(e),
            Ok(outcome) => {
                let exists = matches!(outcome, SpinCOutcome::Exists { .. });
                obj.insert("spinc_exists".into(), json!(exists));
                obj.insert(
                    "w3_zero".into(),
                    json!(matches!(
                        outcome,
                        SpinCOutcome::Exists { .. }
                    )),
                );
            }
        }
    } else {
        obj.insert("w2_class_zero".into(), Value::Null);
        obj.insert("spin_count".into(), Value::Null);
        obj.insert("spinc_exists".into(), Value::Null);
        obj.insert("w3_zero".into(), Value::Null);
    }
    let summary = if orient.orientable() {
        format!(
            "orientable, H¹(Z₂) rank {}, spin count {}, spin-c exists: {}",
            h1.rank, payload["spin_count"], payload["spinc_exists"]
        )
    } else {
        format!("non-orientable (odd ω₁ cycle reported), H¹(Z₂) rank {}", h1.rank)
    };
    CommandResult::ok(payload, summary)
}

fn parse_cochain_bits(text: &str, len: usize) -> Result<BitVec, String> {
    let map: BTreeMap<String, u8> =
        serde_json::from_str(text).map_err(|e| format!("malformed cochain file: {e}"))?;
    let mut bits = BitVec::zeros(len);
    for (k, v) in map {
        let idx: usize = k.parse().map_err(|_| format!("bad class id {k:?}"))?;
        if idx >= len {
            return Err(format!("class id {idx} out of range (have {len})"));
        }
        if v > 1 {
            return Err(format!("cochain value {v} is not a bit"));
        }
        if v == 1 {
            bits.set(idx, true);
        }
    }
    Ok(bits)
}

fn parse_cochain_ints(text: &str, len: usize) -> Result<Vec<BigInt>, String> {
    let map: BTreeMap<String, Value> =
        serde_json::from_str(text).map_err(|e| format!("malformed cochain file: {e}"))?;
    let mut out = vec![BigInt::zero(); len];
    for (k, v) in map {
        let idx: usize = k.parse().map_err(|_| format!("bad class id {k:?}"))?;
        if idx >= len {
            return Err(format!("class id {idx} out of range (have {len})"));
        }
        out[idx] = match &v {
            Value::Number(n) => {
                BigInt::from(n.as_i64().ok_or_else(|| format!("non-integer value {v}"))?)
            }
            Value::String(s) => s.parse().map_err(|_| format!("bad integer {s:?}"))?,
            _ => return Err(format!("non-integer value {v}")),
        };
    }
    Ok(out)
}

/// `spin <file> [--enumerate] [--act <cocycle>]`.
pub fn spin(document: &str, enumerate: bool, act: Option<&str>) -> CommandResult {
    let dc = match DeltaComplex::parse_and_validate(document) {
        Err(e) => return CommandResult::fail(Status::ValidationError, e.to_string()),
        Ok(dc) => dc,
    };
    let ctx = match SpinContext::new(&dc) {
        Err(e) => return spin_error_result(e),
        Ok(ctx) => ctx,
    };
    let set = match solve_spin_structures(&ctx) {
        Err(e) => return spin_error_result(e),
        Ok(set) => set,
    };
    let per_circuit: Vec<Value> = ctx
        .skeleton()
        .circuits()
        .iter()
        .map(|c| {
            let w2_bit = match &set {
                SpinStructureSet::Empty { w2, .. } => w2.get(c.id),
                SpinStructureSet::Torsor(t) => t.w2.get(c.id),
            };
            json!({
                "id": c.id,
                "length": c.len(),
                "canonical_obstruction": if w2_bit { 1 } else { -1 },
            })
        })
        .collect();
    match set {
        SpinStructureSet::Empty { w2, witness } => {
            let payload = json!({
                "spin": false,
                "count": 0,
                "w2_cochain": bits_map(&w2),
                "witness_cycle": bits_map(&witness),
                "per_circuit": per_circuit,
            });
            CommandResult {
                status: Status::Infeasible,
                summary: "no spin structure: ω₂ class is nonzero (witness cycle reported)".into(),
                payload,
                raw_output: None,
            }
        }
        SpinStructureSet::Torsor(torsor) => {
            let mut payload = json!({
                "spin": true,
                "per_circuit": per_circuit,
            });
            let obj = payload.as_object_mut().expect("object");
            obj.insert("count".into(), json!(1u64 << torsor.h1_basis.len()));
            obj.insert("count_log2".into(), json!(torsor.h1_basis.len()));
            obj.insert("base_signs".into(), bits_map(&torsor.base));
            obj.insert(
                "h1_basis".into(),
                json!(torsor.h1_basis.iter().map(bits_map).collect::<Vec<_>>()),
            );
            obj.insert(
                "gauge_basis".into(),
                json!(torsor.gauge_basis.iter().map(bits_map).collect::<Vec<_>>()),
            );
            obj.insert("w2_cochain".into(), bits_map(&torsor.w2));
            if enumerate {
                obj.insert(
                    "classes".into(),
                    json!(torsor.enumerate_classes().iter().map(bits_map).collect::<Vec<_>>()),
                );
            }
            if let Some(cocycle_text) = act {
                let omega = match parse_cochain_bits(cocycle_text, ctx.facet_count()) {
                    Err(e) => return CommandResult::fail(Status::ValidationError, e),
                    Ok(b) => b,
                };
                match act_h1(&ctx, &torsor.base, &omega) {
                    Err(e) => return spin_error_result(e),
                    Ok(acted) => {
                        obj.insert("acted".into(), bits_map(&acted));
                        obj.insert("acted_class".into(), bits_map(&torsor.class_rep(&acted)));
                    }
                }
            }
            let summary = format!(
                "spin structures: {} (2^{})",
                1u64 << torsor.h1_basis.len(),
                torsor.h1_basis.len()
            );
            CommandResult::ok(payload, summary)
        }
    }
}

/// `spinc <file> [--beta <cochain>]`.
pub fn spinc(document: &str, beta: Option<&str>) -> CommandResult {
    let dc = match DeltaComplex::parse_and_validate(document) {
        Err(e) => return CommandResult::fail(Status::ValidationError, e.to_string()),
        Ok(dc) => dc,
    };
    let ctx = match SpinContext::new(&dc) {
        Err(e) => return spin_error_result(e),
        Ok(ctx) => ctx,
    };
    let skel = ctx.skeleton();
    let h2 = cohomology_z(&skel.d1_int(), &skel.d2_int())
        .expect("dual complex differentials compose to zero");
    let h2_value = json!({
        "free_rank": h2.free_rank,
        "torsion": h2.torsion.iter().map(bigint_value).collect::<Vec<_>>(),
    });
    if let Some(beta_text) = beta {
        let beta = match parse_cochain_ints(beta_text, ctx.circuit_count()) {
            Err(e) => return CommandResult::fail(Status::ValidationError, e),
            Ok(b) => b,
        };
        // solve for a sign vector against the user's β
        let t0 = ctx.canonical_trivialization();
        let w2 = match ctx.w2_cochain(&t0) {
            Err(e) => return spin_error_result(e),
            Ok(w) => w,
        };
        let mut rhs = w2.clone();
        for (i, v) in beta.iter().enumerate() {
            if num_integer::Integer::is_odd(v) {
                rhs.flip(i);
            }
        }
        let d1 = ctx.skeleton().d1_gf2();
        match crate::gf2::gf2_solve(&d1, &rhs).expect("shapes agree") {
            crate::gf2::Gf2Solution::Solvable { particular, .. } => {
                let t = ctx.apply_signs(&t0, &particular);
                let verdicts = match spinc_check(&ctx, &t, &beta) {
                    Err(e) => return spinc_error_result(e),
                    Ok(v) => v,
                };
                let all = verdicts.iter().all(|&v| v);
                let payload = json!({
                    "spinc": all,
                    "beta": beta.iter().map(bigint_value).collect::<Vec<_>>(),
                    "signs": bits_map(&particular),
                    "per_circuit": verdicts,
                    "h2_z": h2_value,
                });
                if all {
                    CommandResult::ok(payload, "β admits a compatible trivialization".to_string())
                } else {
                    CommandResult {
                        status: Status::InternalError,
                        summary: "solved signs fail the twisted criterion".into(),
                        payload,
                        raw_output: None,
                    }
                }
            }
            crate::gf2::Gf2Solution::Infeasible { witness } => {
                let payload = json!({
                    "spinc": false,
                    "beta": beta.iter().map(bigint_value).collect::<Vec<_>>(),
                    "witness_cycle": bits_map(&witness),
                    "h2_z": h2_value,
                });
                CommandResult {
                    status: Status::Infeasible,
                    summary: "β is not a mod-2 lift of ω₂: no compatible trivialization".into(),
                    payload,
                    raw_output: None,
                }
            }
        }
    } else {
        match find_spinc(&ctx) {
            Err(e) => spinc_error_result(e),
            Ok(SpinCOutcome::Obstructed { w3 }) => {
                let payload = json!({
                    "spinc": false,
                    "w3_zero": false,
                    "w3_cochain": bits_map(&w3.bockstein),
                    "witness": bits_map(&w3.certificate),
                    "h2_z": h2_value,
                });
                CommandResult {
                    status: Status::Infeasible,
                    summary: "no spin-c structure: W₃ ≠ 0".into(),
                    payload,
                    raw_output: None,
                }
            }
            Ok(SpinCOutcome::Exists { structure, w3 }) => {
                let beta_map: BTreeMap<String, Value> = structure
                    .beta
                    .iter()
                    .enumerate()
                    .map(|(i, v)| (i.to_string(), bigint_value(v)))
                    .collect();
                let payload = json!({
                    "spinc": true,
                    "w3_zero": true,
                    "beta": beta_map,
                    "signs": bits_map(&structure.signs),
                    "w3_cochain": bits_map(&w3.bockstein),
                    "h2_z": h2_value,
                });
                CommandResult::ok(payload, "spin-c structure found (β ≡ ω₂ mod 2)".to_string())
            }
        }
    }
}

/// `corpus <name> [--export]`.
pub fn corpus_cmd(name: &str, export: bool) -> CommandResult {
    let named = match corpus::builtin(name) {
        Err(e) => return CommandResult::fail(Status::UsageError, e.to_string()),
        Ok(n) => n,
    };
    if export {
        let text = named.complex.to_json();
        return CommandResult {
            status: Status::Ok,
            payload: json!({ "exported": named.name }),
            summary: format!("exported {}", named.name),
            raw_output: Some(text),
        };
    }
    let mut result = invariants(&named.complex.to_json());
    if let Some(obj) = result.payload.as_object_mut() {
        obj.insert("name".into(), json!(named.name));
        obj.insert(
            "expected".into(),
            json!({
                "orientable": named.expected.orientable,
                "h1_z2_rank": named.expected.h1_z2_rank,
                "spin_count": named.expected.spin_count,
                "spinc_exists": named.expected.spinc_exists,
            }),
        );
    }
    result.summary = format!("{}: {}", named.name, result.summary);
    result
}

/// `groups [--model-check]`.
pub fn groups(model_check: bool) -> CommandResult {
    let a4 = enumerate_cover(4, true).expect("small rank");
    let s4 = enumerate_cover(4, false).expect("small rank");
    let a5 = enumerate_cover(5, true).expect("small rank");
    let sigma4_model = build_sigma4_model();
    let a5_model = build_a5_model();
    let hist = |m: &crate::models::UnitQuaternionGroup| -> BTreeMap<String, usize> {
        m.order_histogram().into_iter().map(|(k, v)| (k.to_string(), v)).collect()
    };
    let mut payload = json!({
        "orders": {
            "binary_alternating_4": a4.len(),
            "binary_symmetric_4_minus": s4.len(),
            "binary_alternating_5": a5.len(),
        },
        "transposition_lift_order": crate::cover::transposition_lift(0, 1, 4)
            .expect("valid")
            .order(),
        "histograms": {
            "sigma4_quaternion_model": hist(&sigma4_model),
            "a5_pair_model": hist(&a5_model),
        },
    });
    let mut summary =
        format!("|Ã₄| = {}, |Σ̃₄⁻| = {}, |Ã₅| = {}", a4.len(), s4.len(), a5.len());
    if model_check {
        let iso4 = verify_model_isomorphism(&sigma4_model, &s4).is_ok();
        let iso5 = verify_model_isomorphism(&a5_model, &a5).is_ok();
        payload.as_object_mut().expect("object").insert(
            "isomorphisms".into(),
            json!({ "sigma4_minus_model": iso4, "a5_model": iso5 }),
        );
        summary.push_str(&format!("; model isomorphisms: Σ̃₄⁻ {iso4}, Ã₅ {iso5}"));
        if !(iso4 && iso5) {
            return CommandResult {
                status: Status::InternalError,
                summary,
                payload,
                raw_output: None,
            };
        }
    }
    CommandResult::ok(payload, summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validate_reports_counts() {
        let doc = corpus::torus2().to_json();
        let r = validate(&doc);
        assert_eq!(r.status, Status::Ok);
        assert_eq!(r.payload["facet_classes"], json!(3));
    }

    #[test]
    fn validate_rejects_garbage() {
        let r = validate("{\"dimension\": 2}");
        assert_eq!(r.status, Status::ValidationError);
        assert_eq!(r.status.exit_code(), 2);
    }

    #[test]
    fn invariants_on_klein_reports_certificate() {
        let doc = corpus::klein().to_json();
        let r = invariants(&doc);
        assert_eq!(r.status, Status::Ok);
        assert_eq!(r.payload["orientable"], json!(false));
        assert!(r.payload["w1_odd_cycle"].is_array());
        assert_eq!(r.payload["spin_count"], Value::Null);
    }

    #[test]
    fn spin_on_t3_counts_eight() {
        let doc = corpus::t3_six_tet().to_json();
        let r = spin(&doc, false, None);
        assert_eq!(r.status, Status::Ok);
        assert_eq!(r.payload["count"], json!(8));
    }

    #[test]
    fn spin_rejects_klein_with_code_three() {
        let doc = corpus::klein().to_json();
        let r = spin(&doc, false, None);
        assert_eq!(r.status, Status::NonOrientable);
        assert_eq!(r.status.exit_code(), 3);
    }

    #[test]
    fn spinc_on_rp3() {
        let doc = corpus::rp3_two_tet().to_json();
        let r = spinc(&doc, None);
        assert_eq!(r.status, Status::Ok);
        assert_eq!(r.payload["spinc"], json!(true));
        assert_eq!(r.payload["h2_z"]["torsion"], json!([2]));
    }

    #[test]
    fn corpus_export_is_byte_exact() {
        let r = corpus_cmd("torus2", true);
        assert_eq!(r.raw_output.unwrap(), corpus::torus2().to_json());
    }

    #[test]
    fn unknown_corpus_name_is_usage_error() {
        let r = corpus_cmd("bagel", false);
        assert_eq!(r.status, Status::UsageError);
        assert_eq!(r.status.exit_code(), 1);
    }

    #[test]
    fn deterministic_output() {
        let doc = corpus::rp3_two_tet().to_json();
        let a = spin(&doc, true, None).to_json();
        let b = spin(&doc, true, None).to_json();
        assert_eq!(a, b);
    }

    #[test]
    fn groups_summary_matches_payload() {
        let r = groups(false);
        assert_eq!(r.status, Status::Ok);
        assert_eq!(r.payload["orders"]["binary_alternating_5"], json!(120));
        assert!(r.summary.contains("120"));
    }
}
