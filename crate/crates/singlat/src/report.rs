//! Assembled invariant reports, serializable and human-readable.
//!
//! A report gathers everything the library can say about one graph:
//! classification, determinant, the distinguished cycles, the two
//! support sequences when they exist, and — on request — the optimal
//! path value and the surgery total. Exact rationals are rendered as
//! `p/q` strings so no precision is lost in transit through JSON.

use std::time::Instant;

use serde::Serialize;

use crate::cycle::RationalCycle;
use crate::elliptic::{
    b_sequence, classify, is_num_gorenstein, minimally_elliptic_cycle,
    verify_sequence_invariants, yau_sequence, Classification, SequenceReport,
};
use crate::error::Result;
use crate::graph::PlumbingGraph;
use crate::lattice::Lattice;
use crate::laufer::minimal_cycle;
use crate::path::pam;
use crate::zeta::sw_bar;

/// One coefficient of a cycle, keyed by the external vertex id.
#[derive(Debug, Clone, Serialize)]
pub struct CycleEntry {
    pub vertex: i64,
    pub coeff: String,
}

/// Renders a cycle as ordered `(vertex, coeff)` pairs.
pub fn cycle_entries(g: &PlumbingGraph, l: &RationalCycle) -> Vec<CycleEntry> {
    (0..g.len())
        .map(|v| CycleEntry { vertex: g.id(v), coeff: l.coeff(v).to_string() })
        .collect()
}

/// A support sequence with its cycles (the Yau or the B-variant).
#[derive(Debug, Clone, Serialize)]
pub struct SequenceSection {
    /// `ℓ` respectively `m`: the sequence has `length + 1` terms.
    pub length: usize,
    /// Supports as id lists, outermost first.
    pub supports: Vec<Vec<i64>>,
    /// The fundamental cycle of each support.
    pub cycles: Vec<Vec<CycleEntry>>,
    /// The fractional pre-term (B-variant only; zero when the canonical
    /// cycle is integral).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pre_term: Option<Vec<CycleEntry>>,
}

/// One step of the surgery recursion, id-keyed for the report.
#[derive(Debug, Clone, Serialize)]
pub struct SurgeryStepSection {
    pub vertices: Vec<i64>,
    pub removed: Vec<i64>,
    pub contribution: String,
}

/// The full invariant report for one graph.
#[derive(Debug, Clone, Serialize)]
pub struct InvariantReport {
    pub schema_version: u32,
    pub vertices: usize,
    pub classification: String,
    /// Order of the discriminant group, `det(-I)`.
    pub determinant: String,
    pub numerically_gorenstein: bool,
    pub canonical_cycle: Vec<CycleEntry>,
    pub canonical_floor: Vec<CycleEntry>,
    pub minimal_cycle: Vec<CycleEntry>,
    /// `K² + #V`, an invariant of the link.
    pub k_squared_plus_vertices: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub minimally_elliptic_cycle: Option<Vec<CycleEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub yau_sequence: Option<SequenceSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b_sequence: Option<SequenceSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pam: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pam_states_visited: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sw_bar: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub surgery_steps: Option<Vec<SurgeryStepSection>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<SequenceReport>,
    pub elapsed_ms: u128,
}

/// What `collect` should compute beyond the always-on invariants.
#[derive(Debug, Clone, Copy)]
pub struct ReportOptions {
    pub with_pam: bool,
    pub with_sw: bool,
    pub max_states: u64,
}

impl InvariantReport {
    /// Computes a report. The sequences appear only for elliptic graphs
    /// with all Euler numbers `≤ -2`; the optional sections are computed
    /// on request and propagate their own errors (including budget
    /// exhaustion) instead of degrading silently.
    pub fn collect(lat: &Lattice, options: ReportOptions) -> Result<InvariantReport> {
        let start = Instant::now();
        let g = lat.graph();
        let classification = classify(lat)?;
        let z_min = minimal_cycle(g)?;
        let (floor, _) = lat.canonical_cycle().floor_frac();

        let mut report = InvariantReport {
            schema_version: 1,
            vertices: g.len(),
            classification: classification.to_string(),
            determinant: lat.discriminant_group_order().to_string(),
            numerically_gorenstein: is_num_gorenstein(lat),
            canonical_cycle: cycle_entries(g, lat.canonical_cycle()),
            canonical_floor: cycle_entries(g, &floor),
            minimal_cycle: cycle_entries(g, &z_min),
            k_squared_plus_vertices: lat.k_squared_plus_card().to_string(),
            minimally_elliptic_cycle: None,
            yau_sequence: None,
            b_sequence: None,
            pam: None,
            pam_states_visited: None,
            sw_bar: None,
            surgery_steps: None,
            verification: None,
            elapsed_ms: 0,
        };

        if classification == Classification::Elliptic && g.is_minimal() {
            let c = minimally_elliptic_cycle(lat)?;
            report.minimally_elliptic_cycle = Some(cycle_entries(g, &c));

            let yau = yau_sequence(lat)?;
            report.yau_sequence = Some(SequenceSection {
                length: yau.ell(),
                supports: id_lists(g, yau.supports()),
                cycles: yau.cycles().iter().map(|z| cycle_entries(g, z)).collect(),
                pre_term: None,
            });

            let b = b_sequence(lat)?;
            report.b_sequence = Some(SequenceSection {
                length: b.m(),
                supports: id_lists(g, b.supports()),
                cycles: b.cycles().iter().map(|z| cycle_entries(g, z)).collect(),
                pre_term: Some(cycle_entries(g, b.pre_term())),
            });

            report.verification = Some(verify_sequence_invariants(lat)?);
        }

        if options.with_pam {
            let result = pam(lat, options.max_states)?;
            report.pam = Some(result.value);
            report.pam_states_visited = Some(result.states_visited);
        }

        if options.with_sw {
            let trace = sw_bar(lat)?;
            report.sw_bar = Some(trace.total().to_string());
            report.surgery_steps = Some(
                trace
                    .steps()
                    .iter()
                    .map(|s| SurgeryStepSection {
                        vertices: s.vertex_ids.clone(),
                        removed: s.removed_ids.clone(),
                        contribution: s.contribution.to_string(),
                    })
                    .collect(),
            );
        }

        report.elapsed_ms = start.elapsed().as_millis();
        Ok(report)
    }

    /// Plain-text rendering for terminal use.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let push = |out: &mut String, k: &str, v: &str| {
            out.push_str(&format!("{k:<26}{v}\n"));
        };
        push(&mut out, "vertices:", &self.vertices.to_string());
        push(&mut out, "classification:", &self.classification);
        push(&mut out, "determinant:", &self.determinant);
        push(
            &mut out,
            "numerically gorenstein:",
            if self.numerically_gorenstein { "yes" } else { "no" },
        );
        push(&mut out, "canonical cycle:", &fmt_entries(&self.canonical_cycle));
        push(&mut out, "canonical floor:", &fmt_entries(&self.canonical_floor));
        push(&mut out, "minimal cycle:", &fmt_entries(&self.minimal_cycle));
        push(&mut out, "k^2 + vertices:", &self.k_squared_plus_vertices);
        if let Some(c) = &self.minimally_elliptic_cycle {
            push(&mut out, "minimally elliptic C:", &fmt_entries(c));
        }
        if let Some(yau) = &self.yau_sequence {
            push(&mut out, "yau sequence length:", &format!("ell = {}", yau.length));
            for (i, support) in yau.supports.iter().enumerate() {
                push(&mut out, &format!("  D_{i} support:"), &fmt_ids(support));
            }
        }
        if let Some(b) = &self.b_sequence {
            push(&mut out, "b sequence length:", &format!("m = {}", b.length));
            if let Some(pre) = &b.pre_term {
                push(&mut out, "  pre-term:", &fmt_entries(pre));
            }
            for (i, support) in b.supports.iter().enumerate() {
                push(&mut out, &format!("  B_{i} support:"), &fmt_ids(support));
            }
        }
        if let Some(p) = self.pam {
            push(&mut out, "pam:", &p.to_string());
        }
        if let Some(sw) = &self.sw_bar {
            push(&mut out, "sw_bar:", sw);
            if let Some(steps) = &self.surgery_steps {
                let parts: Vec<String> =
                    steps.iter().map(|s| s.contribution.clone()).collect();
                push(&mut out, "  contributions:", &parts.join(", "));
            }
        }
        if let Some(v) = &self.verification {
            let verdict = if v.all_passed() { "all checks passed" } else { "FAILURES" };
            push(&mut out, "verification:", verdict);
            for check in &v.checks {
                let tag = if check.passed { "pass" } else { "FAIL" };
                push(&mut out, &format!("  [{tag}]"), check.name);
            }
        }
        push(&mut out, "elapsed:", &format!("{} ms", self.elapsed_ms));
        out
    }
}

fn id_lists(g: &PlumbingGraph, supports: &[Vec<usize>]) -> Vec<Vec<i64>> {
    supports
        .iter()
        .map(|s| s.iter().map(|&v| g.id(v)).collect())
        .collect()
}

fn fmt_entries(entries: &[CycleEntry]) -> String {
    let parts: Vec<String> =
        entries.iter().map(|e| format!("{}:{}", e.vertex, e.coeff)).collect();
    format!("({})", parts.join(", "))
}

fn fmt_ids(ids: &[i64]) -> String {
    let parts: Vec<String> = ids.iter().map(|id| id.to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}
