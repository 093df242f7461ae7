//! Report assembly for the `grint` command-line tool.
//!
//! Every report is a plain serde structure with a fixed field order, so equal
//! inputs give byte-identical JSON. Rationals are fraction strings (`"p/q"`),
//! radicals use the `"a+b*sqrt(m)"` form, and no floating-point value is
//! emitted.

use serde::Serialize;
use thiserror::Error;

use grint::algebra::{bratteli, verify_interaction_axioms, AxiomReport, Core};
use grint::dynamics::{
    ancestors_diagram, in_basis_set, loop_witnesses, node_name, periodic_orbits, range_of_length,
    shift_inverse_class, LoopWitness, PathPoint, QuotientClass,
};
use grint::graph::{parse_graph, ParseOptions};
use grint::graph::samples::two_chain_parameter;
use grint::ktheory::{k0_core_presentation, ktheory_report, KTheoryReport};
use grint::rep::{
    ck_full_space_check, ck_window_check, oracle_check_VH, positivity_spot_check, powers_via_rep,
    RelationCheck, POSITIVITY_TOLERANCE,
};
use grint::structure::{
    all_hereditary_saturated, condition_K, condition_L, cstar_horizon, is_H_multiplicative,
    is_cstar_dynamical, loops_without_exit, powers_via_matrix, powers_via_paths, set_names, verdicts,
    DEFAULT_LATTICE_BOUND,
};
use grint::Graph;

pub const SCHEMA_VERSION: u32 = 1;

/// Exit status classes of the tool.
#[derive(Debug, Error)]
pub enum CliError {
    /// Unreadable or malformed input graph. Exit code 1.
    #[error("{0}")]
    Input(String),
    /// Arguments outside what an analysis accepts. Exit code 2.
    #[error("{0}")]
    Args(String),
    /// Two independent computations disagreed, or an exact check failed.
    /// Exit code 3.
    #[error("{0}")]
    Mismatch(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Args(_) => 2,
            CliError::Mismatch(_) => 3,
        }
    }
}

impl From<grint::Error> for CliError {
    fn from(e: grint::Error) -> Self {
        use grint::Error as E;
        match e {
            E::Parse { .. }
            | E::Json(_)
            | E::UnknownVertex(_)
            | E::UnknownEdge(_)
            | E::DuplicateVertex(_)
            | E::DuplicateEdge(_) => CliError::Input(e.to_string()),
            E::OracleMismatch { .. } => CliError::Mismatch(e.to_string()),
            E::InvalidPath(_) | E::BoundExceeded { .. } | E::Precondition(_) | E::NegativeEntry(_) | E::Domain(_) => {
                CliError::Args(e.to_string())
            }
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

pub fn load_graph(path: &std::path::Path, strict: bool) -> CliResult<Graph> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    Ok(parse_graph(&text, ParseOptions { strict })?)
}

/// Knobs shared by the analyses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Settings {
    pub max_power: usize,
    /// Highest core level for the axiom suite.
    pub level: usize,
    /// Depth of the truncated path-space representation.
    pub depth: usize,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            max_power: 6,
            level: 2,
            depth: 4,
        }
    }
}

impl Settings {
    pub fn validate(&self) -> CliResult<()> {
        if self.max_power == 0 {
            return Err(CliError::Args("--max-power must be at least 1".into()));
        }
        if self.level == 0 {
            return Err(CliError::Args("--level must be at least 1".into()));
        }
        if self.depth < 2 {
            return Err(CliError::Args("--depth must be at least 2".into()));
        }
        Ok(())
    }
}

/// The result of a command: a report plus the list of failed exact checks.
/// The caller prints the report and then exits with code 3 if the list is
/// non-empty.
pub struct Outcome<T> {
    pub report: T,
    pub failures: Vec<String>,
}

impl<T: Serialize> Outcome<T> {
    pub fn json(&self) -> String {
        to_json(&self.report)
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}

#[derive(Debug, Serialize)]
pub struct GraphSummary {
    pub vertices: usize,
    pub edges: usize,
    pub sinks: usize,
    pub sources: usize,
    pub vertex_names: Vec<String>,
    pub sink_names: Vec<String>,
    pub source_names: Vec<String>,
}

pub fn graph_summary(g: &Graph) -> GraphSummary {
    let names = |vs: Vec<usize>| vs.into_iter().map(|v| g.vertex_name(v).to_string()).collect::<Vec<_>>();
    GraphSummary {
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        sinks: g.sinks().len(),
        sources: g.sources().len(),
        vertex_names: g.vertices().to_vec(),
        sink_names: names(g.sinks()),
        source_names: names(g.sources()),
    }
}

#[derive(Debug, Serialize)]
pub struct Matrices {
    /// `A_E(v, w)` = number of edges from `v` to `w`.
    pub adjacency: Vec<Vec<String>>,
    /// `p_{v,w} = A_E(v, w) / n_w`.
    pub transition: Vec<Vec<String>>,
}

pub fn matrices(g: &Graph) -> Matrices {
    Matrices {
        adjacency: g.adjacency_matrix().to_fraction_strings(),
        transition: g.transition_matrix().to_fraction_strings(),
    }
}

#[derive(Debug, Serialize)]
pub struct PowersReport {
    pub max_power: usize,
    /// The agreed set; empty when the criteria disagree.
    pub members: Vec<usize>,
    pub via_matrix: Vec<usize>,
    pub via_paths: Vec<usize>,
    pub via_operator: Vec<usize>,
    pub oracles_agree: bool,
    pub full_range: bool,
    pub cstar_dynamical: bool,
    /// Lengths inspected before the dynamical test became periodic.
    pub cstar_horizon: usize,
    pub family_note: Option<String>,
}

pub fn powers(g: &Graph, max_power: usize) -> CliResult<Outcome<PowersReport>> {
    powers_with(g, max_power, powers_via_rep)
}

/// [`powers`] with the operator criterion supplied by the caller, so the
/// disagreement path can be exercised end to end.
pub fn powers_with(
    g: &Graph,
    max_power: usize,
    operator: impl Fn(&Graph, usize) -> grint::Result<Vec<usize>>,
) -> CliResult<Outcome<PowersReport>> {
    if max_power == 0 {
        return Err(CliError::Args("--max-power must be at least 1".into()));
    }
    let via_matrix = powers_via_matrix(g, max_power)?;
    let via_paths = powers_via_paths(g, max_power);
    let via_operator = operator(g, max_power)?;
    let agree = via_matrix == via_paths && via_paths == via_operator;
    let mut failures = Vec::new();
    if !agree {
        failures.push(format!(
            "interaction powers: matrix {via_matrix:?}, paths {via_paths:?}, operator {via_operator:?}"
        ));
    }
    let members = if agree { via_matrix.clone() } else { Vec::new() };
    let family_note = two_chain_parameter(g).map(|n| {
        let missing: Vec<usize> = (1..=max_power).filter(|k| !members.contains(k)).collect();
        let reading = if missing == [n] {
            format!("(V^k, H^k) is an interaction for every k <= {max_power} except k = {n}, the complement of the set {{{n}}}")
        } else {
            format!("powers outside the set: {missing:?}")
        };
        format!("two-chain family graph with parameter n = {n}: {reading}")
    });
    let report = PowersReport {
        max_power,
        full_range: agree && members.len() == max_power,
        members,
        via_matrix,
        via_paths,
        via_operator,
        oracles_agree: agree,
        cstar_dynamical: is_cstar_dynamical(g),
        cstar_horizon: cstar_horizon(g),
        family_note,
    };
    Ok(Outcome { report, failures })
}

#[derive(Debug, Serialize)]
pub struct LabelledVerdict {
    pub holds: bool,
    pub reason: String,
}

#[derive(Debug, Serialize)]
pub struct StructureReport {
    pub condition_l: bool,
    pub condition_k: bool,
    pub hereditary_saturated: Vec<Vec<String>>,
    /// `"criteria met"` or `"criteria not met"`; the criterion is
    /// sufficient, not necessary.
    pub simple: String,
    pub simple_reason: String,
    pub purely_infinite: LabelledVerdict,
    pub minimal: bool,
    pub topologically_free: bool,
    pub free: bool,
    pub h_multiplicative: bool,
    /// `H(1)` commutes with the core up to the given level.
    pub h1_central: bool,
    pub h1_central_level: usize,
    pub interaction_powers: PowersReport,
    pub loop_witnesses: Vec<LoopWitness>,
}

fn structure(g: &Graph, settings: &Settings, failures: &mut Vec<String>) -> CliResult<StructureReport> {
    let v = verdicts(g)?;
    let k = condition_K(g)?;
    let lattice = all_hereditary_saturated(g, DEFAULT_LATTICE_BOUND)?;
    let core = Core::new(g);
    let h1_level = settings.level;
    let h1_central = core.centrality_check(&core.H_power_unit(1), h1_level)?;
    let pw = powers(g, settings.max_power)?;
    failures.extend(pw.failures);
    let powers = pw.report;
    // H(1) central, the dynamical condition and a full set of powers are
    // three readings of one property.
    if powers.oracles_agree && powers.max_power > powers.cstar_horizon {
        if h1_central != powers.cstar_dynamical || powers.cstar_dynamical != powers.full_range {
            failures.push(format!(
                "C*-dynamical characterisations: H(1) central {h1_central}, path condition {}, full powers {}",
                powers.cstar_dynamical, powers.full_range
            ));
        }
    } else if h1_central != powers.cstar_dynamical {
        failures.push(format!(
            "C*-dynamical characterisations: H(1) central {h1_central}, path condition {}",
            powers.cstar_dynamical
        ));
    }
    Ok(StructureReport {
        condition_l: condition_L(g),
        condition_k: k,
        hereditary_saturated: lattice.iter().map(|s| set_names(g, s)).collect(),
        simple: v.simple_label().to_string(),
        simple_reason: v.simple.reason.clone(),
        purely_infinite: LabelledVerdict {
            holds: v.purely_infinite.holds,
            reason: v.purely_infinite.reason.clone(),
        },
        minimal: v.minimal,
        topologically_free: v.topologically_free,
        free: v.free,
        h_multiplicative: is_H_multiplicative(g),
        h1_central,
        h1_central_level: h1_level,
        interaction_powers: powers,
        loop_witnesses: loop_witnesses(g),
    })
}

#[derive(Debug, Serialize)]
pub struct OrbitReport {
    #[serde(rename = "loop")]
    pub loop_path: String,
    pub length: usize,
    pub classes: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct PointReport {
    pub point: String,
    pub class: String,
    pub shift_class: Option<String>,
    pub inverse_shift_class: Option<String>,
    /// Node names per level of the ancestor diagram.
    pub ancestors: Vec<Vec<String>>,
    /// Per level `n`: the vertices `v ∈ r(E^n)` whose basis set `U_{v,n}`
    /// contains the class.
    pub basis_sets: Vec<Vec<String>>,
}

#[derive(Debug, Serialize)]
pub struct DynamicsReport {
    pub loops_without_exit: Vec<String>,
    pub periodic_orbits: Vec<OrbitReport>,
    pub point: Option<PointReport>,
}

pub fn dynamics(g: &Graph, point: Option<&str>, levels: usize) -> CliResult<DynamicsReport> {
    let orbits = periodic_orbits(g)?
        .into_iter()
        .map(|o| OrbitReport {
            loop_path: g.path_string(&o.generating_loop),
            length: o.len(),
            classes: o.classes.iter().map(|c| c.representative().display(g).to_string()).collect(),
        })
        .collect();
    let point = match point {
        None => None,
        Some(text) => Some(point_report(g, &PathPoint::parse(g, text)?, levels)?),
    };
    Ok(DynamicsReport {
        loops_without_exit: loops_without_exit(g).iter().map(|l| g.path_string(l)).collect(),
        periodic_orbits: orbits,
        point,
    })
}

fn point_report(g: &Graph, p: &PathPoint, levels: usize) -> CliResult<PointReport> {
    let class = QuotientClass::of(g, p);
    let show = |c: &QuotientClass| c.representative().display(g).to_string();
    let ancestors = ancestors_diagram(g, p, levels)
        .iter()
        .enumerate()
        .map(|(n, nodes)| nodes.iter().map(|k| node_name(g, k, n)).collect())
        .collect();
    let mut basis_sets = Vec::new();
    for n in 0..=levels {
        let present = range_of_length(g, n);
        let mut members = Vec::new();
        for v in (0..g.vertex_count()).filter(|&v| present[v]) {
            if in_basis_set(g, &class, v, n)? {
                members.push(g.vertex_name(v).to_string());
            }
        }
        basis_sets.push(members);
    }
    Ok(PointReport {
        point: p.display(g).to_string(),
        class: show(&class),
        shift_class: class.shift(g).ok().map(|c| show(&c)),
        inverse_shift_class: shift_inverse_class(g, &class).ok().map(|c| show(&c)),
        ancestors,
        basis_sets,
    })
}

#[derive(Debug, Serialize)]
pub struct AxiomSummary {
    pub level: usize,
    pub passed: bool,
    pub basis_size: usize,
    pub checks: Vec<(String, usize)>,
    pub violation_count: usize,
    pub first_violations: Vec<String>,
}

impl From<&AxiomReport> for AxiomSummary {
    fn from(r: &AxiomReport) -> Self {
        AxiomSummary {
            level: r.level,
            passed: r.passed(),
            basis_size: r.basis_size,
            checks: r.checks.clone(),
            violation_count: r.violation_count,
            first_violations: r.violations.iter().map(|v| format!("{}: {}", v.check, v.detail)).collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct VhSummary {
    pub level: usize,
    pub depth: usize,
    pub passed: bool,
    pub v_window: (usize, usize),
    pub h_window: (usize, usize),
    pub h_top_level_defects: usize,
}

#[derive(Debug, Serialize)]
pub struct CheckSummary {
    pub relation: String,
    pub window: (usize, usize),
    pub checked: usize,
    pub passed: bool,
}

impl From<&RelationCheck> for CheckSummary {
    fn from(c: &RelationCheck) -> Self {
        CheckSummary {
            relation: c.relation.clone(),
            window: c.window,
            checked: c.checked,
            passed: c.passed(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct PositivitySummary {
    pub level: usize,
    pub samples: usize,
    pub passed: bool,
    /// Floating-point eigenvalues above this count as non-negative.
    pub tolerance: String,
}

#[derive(Debug, Serialize)]
pub struct VerificationReport {
    pub axioms: Vec<AxiomSummary>,
    pub vh_oracle: Vec<VhSummary>,
    pub ck_window: Vec<CheckSummary>,
    /// The same relations on the whole truncated space must fail for any
    /// graph with an edge; this records that the defect was observed.
    pub ck_full_space_defect_detected: bool,
    pub positivity: PositivitySummary,
    pub passed: bool,
}

const POSITIVITY_SAMPLES: usize = 8;
const POSITIVITY_SEED: u64 = 0x5eed;

pub fn verification(g: &Graph, settings: &Settings) -> CliResult<Outcome<VerificationReport>> {
    settings.validate()?;
    let mut failures = Vec::new();
    let core = Core::new(g);
    let mut axioms = Vec::new();
    for level in 1..=settings.level {
        let r = verify_interaction_axioms(&core, level)?;
        if !r.passed() {
            failures.push(format!("axioms at level {level}: {} violation(s)", r.violation_count));
        }
        axioms.push(AxiomSummary::from(&r));
    }
    let mut vh = Vec::new();
    for level in 0..=settings.level.min(settings.depth - 1) {
        let r = oracle_check_VH(g, level, settings.depth)?;
        if !r.passed() {
            failures.push(format!("V/H operator oracle at level {level}, depth {}", settings.depth));
        }
        vh.push(VhSummary {
            level,
            depth: settings.depth,
            passed: r.passed(),
            v_window: r.v_check.window,
            h_window: r.h_check.window,
            h_top_level_defects: r.h_top_level_defects,
        });
    }
    let ck = ck_window_check(g, settings.depth)?;
    for c in ck.iter().filter(|c| !c.passed()) {
        failures.push(format!("{} on lengths {:?}", c.relation, c.window));
    }
    let defect = ck_full_space_check(g, settings.depth)?.iter().any(|c| !c.passed());
    if g.edge_count() > 0 && !defect {
        failures.push("the truncated family satisfied the relations on the whole space".into());
    }
    let pos_level = settings.level.min(2);
    let pos = positivity_spot_check(g, pos_level, POSITIVITY_SAMPLES, POSITIVITY_SEED)?;
    if !pos.passed {
        failures.push(format!("positivity spot check at level {pos_level}"));
    }
    let report = VerificationReport {
        axioms,
        vh_oracle: vh,
        ck_window: ck.iter().map(CheckSummary::from).collect(),
        ck_full_space_defect_detected: defect,
        positivity: PositivitySummary {
            level: pos_level,
            samples: POSITIVITY_SAMPLES,
            passed: pos.passed,
            tolerance: format!("{POSITIVITY_TOLERANCE:e}"),
        },
        passed: failures.is_empty(),
    };
    Ok(Outcome { report, failures })
}

#[derive(Debug, Serialize)]
pub struct KTheorySection {
    #[serde(flatten)]
    pub groups: KTheoryReport,
    pub core_presentation: Option<PresentationReport>,
}

#[derive(Debug, Serialize)]
pub struct PresentationReport {
    pub level: usize,
    pub generators: Vec<String>,
    pub relations: Vec<String>,
    pub rank: usize,
}

pub fn ktheory(g: &Graph, presentation_level: Option<usize>) -> CliResult<Outcome<KTheorySection>> {
    let groups = ktheory_report(g)?;
    let mut failures = Vec::new();
    if !groups.pv_oracle_agrees {
        failures.push(format!(
            "K-theory: Delta_E gives K0 = {}, K1 = {}; truncated presentation at level {} gives K0 = {}, K1 = {} (stabilized: {})",
            groups.k0, groups.k1, groups.pv_oracle.level, groups.pv_oracle.k0, groups.pv_oracle.k1, groups.pv_oracle.stabilized
        ));
    }
    let core_presentation = match presentation_level {
        None => None,
        Some(n) => {
            let p = k0_core_presentation(g, n)?;
            let diagram = bratteli(g, n)?;
            if p.rank() != diagram.block_count(n) || p.rank() != p.level_rank_by_count(g) {
                failures.push(format!(
                    "rank of K0(F_{n}): presentation {}, Bratteli blocks {}, count {}",
                    p.rank(),
                    diagram.block_count(n),
                    p.level_rank_by_count(g)
                ));
            }
            Some(PresentationReport {
                level: n,
                relations: p.relation_strings(),
                rank: p.rank(),
                generators: p.names,
            })
        }
    };
    Ok(Outcome {
        report: KTheorySection {
            groups,
            core_presentation,
        },
        failures,
    })
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub graph: GraphSummary,
    pub matrices: Matrices,
    pub structure: StructureReport,
    pub dynamics: DynamicsReport,
    pub ktheory: KTheorySection,
    pub verification: VerificationReport,
    /// Failed exact checks and oracle disagreements; empty on success.
    pub failures: Vec<String>,
}

pub fn analyze(g: &Graph, settings: &Settings) -> CliResult<Outcome<Report>> {
    settings.validate()?;
    let mut failures = Vec::new();
    let structure = structure(g, settings, &mut failures)?;
    let kt = ktheory(g, None)?;
    failures.extend(kt.failures);
    let ver = verification(g, settings)?;
    failures.extend(ver.failures);
    let report = Report {
        schema_version: SCHEMA_VERSION,
        graph: graph_summary(g),
        matrices: matrices(g),
        structure,
        dynamics: dynamics(g, None, 0)?,
        ktheory: kt.report,
        verification: ver.report,
        failures: failures.clone(),
    };
    Ok(Outcome { report, failures })
}

/// A short human-readable rendering of an analysis report.
pub fn render_text(r: &Report) -> String {
    let yes = |b: bool| if b { "yes" } else { "no" };
    let mut out = Vec::new();
    out.push(format!(
        "graph: {} vertices, {} edges, {} sinks, {} sources",
        r.graph.vertices, r.graph.edges, r.graph.sinks, r.graph.sources
    ));
    let s = &r.structure;
    out.push(format!("condition (L): {}", yes(s.condition_l)));
    out.push(format!("condition (K): {}", yes(s.condition_k)));
    out.push(format!("hereditary saturated sets: {}", s.hereditary_saturated.len()));
    out.push(format!("simplicity: {} ({})", s.simple, s.simple_reason));
    out.push(format!(
        "purely infinite: {} ({})",
        yes(s.purely_infinite.holds),
        s.purely_infinite.reason
    ));
    out.push(format!("H multiplicative: {}", yes(s.h_multiplicative)));
    let p = &s.interaction_powers;
    out.push(format!(
        "C*-dynamical system: {} (H(1) central: {})",
        yes(p.cstar_dynamical),
        yes(s.h1_central)
    ));
    out.push(format!(
        "interaction powers up to {}: {:?} (criteria agree: {})",
        p.max_power,
        p.members,
        yes(p.oracles_agree)
    ));
    if let Some(note) = &p.family_note {
        out.push(format!("note: {note}"));
    }
    for o in &r.dynamics.periodic_orbits {
        out.push(format!("periodic orbit of {}: length {}", o.loop_path, o.length));
    }
    let k = &r.ktheory.groups;
    out.push(format!("K0 = {}, K1 = {}", k.k0, k.k1));
    out.push(format!("K-theory cross-check: {}", if k.pv_oracle_agrees { "agrees" } else { "DISAGREES" }));
    let v = &r.verification;
    for a in &v.axioms {
        out.push(format!(
            "axioms at level {}: {} (basis {})",
            a.level,
            if a.passed { "pass" } else { "FAIL" },
            a.basis_size
        ));
    }
    out.push(format!("verification suite: {}", if v.passed { "pass" } else { "FAIL" }));
    for f in &r.failures {
        out.push(format!("FAILURE: {f}"));
    }
    out.join("\n") + "\n"
}
