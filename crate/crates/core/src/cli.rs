//! Command-line pipelines and the reports they emit.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::{One, Zero};
use serde::Serialize;

use crate::class_algebra::{
    self, chi_ad_report, conjugacy_residual, eta_commutator_matrix, identity_mass, similarity_check,
    stochasticity_report, uniform_integral, ClassData, StochasticityReport,
};
use crate::commutator::{
    is_based_subring, nilpotency_index, Basis, CentralVector, CommutatorMatrix, DEFAULT_DEPTH,
};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::fusion::{ring_from_character_table, CharacterTable, FusionRing};
use crate::group::{self, ConjugacyClasses, FiniteGroup, FrobeniusCheck};
use crate::rational::{format_rational, to_f64, RatMatrix, Rational};
use crate::spectral::{self, char_poly, commutator_spectrum, convergence_bound, CharPoly, SpectrumReport};

/// Environment variable overriding the group order cap.
pub const MAX_ORDER_ENV: &str = "HOPFNIL_MAX_ORDER";

/// Tolerance for oracle comparisons that pass through the character table.
pub const ORACLE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Parser)]
#[command(name = "hopfnil", version, about = "Commutator matrices, nilpotency and commutator convergence for fusion rings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GammaFormat {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full report for a fusion ring or a character table.
    Analyze {
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Class data JSON; enables the convergence section.
        #[arg(long)]
        classes: Option<PathBuf>,
    },
    /// Report for a finite group given by generators or a multiplication table.
    Group {
        input: PathBuf,
        /// Run the brute-force cross-checks.
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
        /// Character table JSON; otherwise `<stem>.ct.json` next to the input, then the shipped table.
        #[arg(long)]
        table: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Trajectory `gamma_m = (A^m)_{*0}` with identity mass and bound.
    Gamma {
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        steps: usize,
        #[arg(long, value_enum, default_value_t = GammaFormat::Csv)]
        format: GammaFormat,
        #[arg(long)]
        classes: Option<PathBuf>,
    },
    /// Exact characteristic polynomial and numeric spectrum of `A`.
    Spectrum {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

/// What a command printed and how it exits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io(_)
        | Error::Parse(_)
        | Error::InvalidRing(_)
        | Error::InvalidTable(_)
        | Error::NonIntegralCoefficient { .. }
        | Error::InvalidClassData(_)
        | Error::InvalidGroup(_)
        | Error::LengthMismatch { .. }
        | Error::TableMismatch(_) => 2,
        Error::HypothesisNotMet(_) => 3,
        Error::CapExceeded { .. } => 4,
        _ => 1,
    }
}

pub fn execute(command: &Command) -> Outcome {
    let result = match command {
        Command::Analyze { input, depth, format, classes } => {
            cmd_analyze(input, *depth, classes.as_deref()).map(|r| render(&r, *format))
        }
        Command::Group { input, oracle, depth, table, format } => {
            cmd_group(input, *oracle, *depth, table.as_deref()).map(|r| render(&r, *format))
        }
        Command::Gamma { input, steps, format, classes } => {
            cmd_gamma(input, *steps, classes.as_deref()).map(|t| match format {
                GammaFormat::Csv => (t.to_csv(), 0),
                GammaFormat::Json => (to_json(&t), 0),
            })
        }
        Command::Spectrum { input, format } => cmd_spectrum(input).map(|r| match format {
            Format::Json => (to_json(&r), 0),
            Format::Text => (r.to_text(), 0),
        }),
    };
    match result {
        Ok((stdout, code)) => Outcome { stdout, stderr: String::new(), code },
        Err(e) => Outcome { stdout: String::new(), stderr: format!("error: {e}\n"), code: exit_code(&e) },
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serialization");
    s.push('\n');
    s
}

fn render(report: &AnalysisReport, format: Format) -> (String, i32) {
    let out = match format {
        Format::Json => to_json(report),
        Format::Text => report.to_text(),
    };
    (out, report.exit_code())
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InputSummary {
    pub path: String,
    /// `ring`, `character_table`, `generators` or `multiplication_table`.
    pub kind: &'static str,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RingSummary {
    pub rank: usize,
    pub degrees: Vec<u64>,
    pub dual: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub dimension: u64,
    pub commutative: bool,
    pub quasitriangular: bool,
}

impl RingSummary {
    fn of(ring: &FusionRing) -> Self {
        Self {
            rank: ring.rank(),
            degrees: ring.degrees().to_vec(),
            dual: ring.dual_map().to_vec(),
            labels: ring.labels().map(<[String]>::to_vec),
            dimension: ring.dimension(),
            commutative: ring.is_commutative(),
            quasitriangular: ring.is_quasitriangular(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictStatus {
    Nilpotent,
    NotNilpotent,
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub status: VerdictStatus,
    pub index: Option<usize>,
    /// Whether the characteristic polynomial is `x^{n-1}(x - 1)`.
    pub spectral_accepts: bool,
    pub searched_to: usize,
    /// `fusion_ring` or `class_algebra`.
    pub route: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SupportStep {
    pub m: usize,
    pub support: Vec<usize>,
    pub based: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SupportChain {
    pub steps: Vec<SupportStep>,
    /// `S_m` contained in `S_{m+1}` throughout; recorded, not required.
    pub monotone: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Trajectory {
    pub basis: &'static str,
    pub gamma: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceStep {
    pub m: usize,
    pub alpha: String,
    pub bound: String,
    pub within_bound: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Convergence {
    pub class_sizes: Vec<u64>,
    pub max_class_dim: u64,
    pub steps: Vec<ConvergenceStep>,
    pub all_within_bound: bool,
    /// `alpha_m` never decreases over the computed range.
    pub monotone: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassSection {
    pub class_sizes: Vec<u64>,
    pub class_dual: Vec<usize>,
    pub eta_matrix: Vec<Vec<String>>,
    pub eta_char_poly: CharPoly,
    pub stochasticity: StochasticityReport,
    /// `gamma_m` in normalized class sums.
    pub eta_gamma: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub similar_to_fusion_matrix: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conjugacy_residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chi_ad: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GammaCheck {
    pub m: usize,
    /// Brute-force class coefficients equal `M^m Lambda` exactly.
    pub matches_class_algebra: bool,
    /// `max |brute - change_basis(gamma(ring, m))|`, when a table is present.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fusion_deviation: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OracleReport {
    pub order: usize,
    pub abelian: bool,
    pub lower_central_class: Option<usize>,
    pub verdict_agrees: bool,
    pub gamma_checks: Vec<GammaCheck>,
    pub alpha_1: String,
    pub stochastic: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub frobenius: Option<FrobeniusCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub similarity: Option<bool>,
    /// Distribution function of `gamma_1` has coefficients `1/(d d_i)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distribution_gamma_1: Option<bool>,
    pub all_pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub input: InputSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ring: Option<RingSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub commutator_matrix: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub centrality: Option<bool>,
    pub char_poly: CharPoly,
    pub spectrum: SpectrumReport,
    pub verdict: Verdict,
    pub trajectory: Trajectory,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub support_chain: Option<SupportChain>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub convergence: Option<Convergence>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class_algebra: Option<ClassSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl AnalysisReport {
    pub fn exit_code(&self) -> i32 {
        if self.verdict.status == VerdictStatus::Undetermined { 3 } else { 0 }
    }

    /// Refuses to emit a report whose verdict fields contradict each other.
    fn enforce_consistency(&self) -> Result<()> {
        let v = &self.verdict;
        let ok = match v.status {
            VerdictStatus::Nilpotent => v.index.is_some() && v.spectral_accepts,
            VerdictStatus::NotNilpotent => v.index.is_none() && !v.spectral_accepts,
            VerdictStatus::Undetermined => v.index.is_none(),
        };
        if !ok {
            return Err(Error::ContractViolated(format!(
                "verdict {:?} with index {:?} and spectral test {}",
                v.status, v.index, v.spectral_accepts
            )));
        }
        if self.spectrum.exact_poly != self.char_poly {
            return Err(Error::ContractViolated("spectrum and char poly disagree".into()));
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "input: {} ({})", self.input.path, self.input.kind);
        if let Some(r) = &self.ring {
            let _ = writeln!(
                s,
                "ring: rank {}, degrees {:?}, dual {:?}, dimension {}",
                r.rank, r.degrees, r.dual, r.dimension
            );
        }
        if let Some(c) = self.centrality {
            let _ = writeln!(s, "centrality: {}", if c { "yes" } else { "no" });
        }
        let _ = writeln!(s, "char poly: {}", self.char_poly);
        let eig: Vec<String> = self
            .spectrum
            .numeric_eigenvalues
            .iter()
            .map(|z| if z.im == 0.0 { format!("{}", z.re) } else { format!("{}{:+}i", z.re, z.im) })
            .collect();
        let _ = writeln!(s, "eigenvalues: {}", eig.join(", "));
        let _ = writeln!(s, "secondary radius: {}", self.spectrum.secondary_radius);
        let verdict = match (&self.verdict.status, self.verdict.index) {
            (VerdictStatus::Nilpotent, Some(i)) => format!("nilpotent, index {i}"),
            (VerdictStatus::Undetermined, _) => format!(
                "undetermined ({})",
                self.verdict.reason.as_deref().unwrap_or("hypothesis not met")
            ),
            _ => format!("not nilpotent (searched to m = {})", self.verdict.searched_to),
        };
        let _ = writeln!(s, "verdict: {verdict}");
        let _ = writeln!(s, "gamma ({}):", self.trajectory.basis);
        for (m, g) in self.trajectory.gamma.iter().enumerate() {
            let _ = writeln!(s, "  {m:>3}  {}", g.join("  "));
        }
        if let Some(chain) = &self.support_chain {
            let _ = writeln!(s, "support chain:");
            for st in &chain.steps {
                let _ = writeln!(s, "  S_{} = {:?}{}", st.m, st.support, if st.based { "" } else { " (not based)" });
            }
        }
        if let Some(c) = &self.convergence {
            let _ = writeln!(s, "identity mass (max class dim {}):", c.max_class_dim);
            for st in &c.steps {
                let _ = writeln!(s, "  {:>3}  alpha {}  1 - alpha <= {}", st.m, st.alpha, st.bound);
            }
        }
        if let Some(o) = &self.oracle {
            let _ = writeln!(
                s,
                "oracle: order {}, lower central class {}, {}",
                o.order,
                o.lower_central_class.map_or("none".to_string(), |c| c.to_string()),
                if o.all_pass { "all checks pass" } else { "CHECK FAILED" }
            );
        }
        for n in &self.notes {
            let _ = writeln!(s, "note: {n}");
        }
        s
    }
}

fn read(path: &Path) -> Result<String> {
    Ok(std::fs::read_to_string(path)?)
}

/// Ring plus the class data implied by the input, if any.
fn load_ring_input(path: &Path) -> Result<(FusionRing, Option<ClassData>, &'static str)> {
    let text = read(path)?;
    let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
    if value.get("class_sizes").is_some() {
        let ct = CharacterTable::from_json_str(&text)?;
        let ring = ring_from_character_table(&ct)?;
        let cd = ClassData::from_character_table(&ct)?;
        Ok((ring, Some(cd), "character_table"))
    } else {
        Ok((FusionRing::from_json_str(&text)?, None, "ring"))
    }
}

fn load_classes(ring: &FusionRing, path: &Path) -> Result<ClassData> {
    let cd = ClassData::from_json_file(path)?;
    if cd.n() != ring.rank() {
        return Err(Error::LengthMismatch { expected: ring.rank(), found: cd.n() });
    }
    if cd.total() != ring.dimension() {
        return Err(Error::InvalidClassData(format!(
            "class dimensions sum to {}, ring dimension is {}",
            cd.total(),
            ring.dimension()
        )));
    }
    Ok(cd)
}

fn verdict_from_ring(ring: &FusionRing, a: &CommutatorMatrix) -> Result<(Verdict, Option<SupportChain>)> {
    match nilpotency_index(ring) {
        Ok(v) => {
            let steps: Vec<SupportStep> = v
                .support_chain
                .iter()
                .enumerate()
                .map(|(m, s)| SupportStep {
                    m,
                    based: is_based_subring(ring, &s.iter().copied().collect()),
                    support: s.clone(),
                })
                .collect();
            let monotone = steps.windows(2).all(|w| w[0].support.iter().all(|i| w[1].support.contains(i)));
            Ok((
                Verdict {
                    status: if v.index.is_some() { VerdictStatus::Nilpotent } else { VerdictStatus::NotNilpotent },
                    index: v.index,
                    spectral_accepts: v.spectral_accepts,
                    searched_to: v.searched_to,
                    route: "fusion_ring",
                    reason: None,
                },
                Some(SupportChain { steps, monotone }),
            ))
        }
        Err(Error::HypothesisNotMet(reason)) => Ok((
            Verdict {
                status: VerdictStatus::Undetermined,
                index: None,
                spectral_accepts: spectral::spectral_nilpotency_test(a.matrix()),
                searched_to: 0,
                route: "fusion_ring",
                reason: Some(reason),
            },
            None,
        )),
        Err(e) => Err(e),
    }
}

fn convergence_from_alphas(dims: &[u64], alphas: &[Rational]) -> Result<Convergence> {
    let alpha0 = &alphas[0];
    let steps = alphas
        .iter()
        .enumerate()
        .map(|(m, a)| {
            let bound = convergence_bound(dims, alpha0, m as u32)?;
            Ok(ConvergenceStep {
                m,
                alpha: format_rational(a),
                within_bound: Rational::one() - a <= bound,
                bound: format_rational(&bound),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Convergence {
        class_sizes: dims.to_vec(),
        max_class_dim: dims.iter().copied().max().unwrap_or(0),
        all_within_bound: steps.iter().all(|s| s.within_bound),
        monotone: alphas.windows(2).all(|w| w[0] <= w[1]),
        steps,
    })
}

fn eta_gammas(m: &RatMatrix, cd: &ClassData, depth: usize) -> Result<Vec<Vec<Rational>>> {
    let mut z = uniform_integral(cd).coefficients;
    let mut out = vec![z.clone()];
    for _ in 0..depth {
        z = m.mul_vec(&z)?;
        out.push(z.clone());
    }
    Ok(out)
}

fn class_section(cd: &ClassData, a: Option<&CommutatorMatrix>, depth: usize) -> Result<(ClassSection, RatMatrix, Vec<Vec<Rational>>)> {
    let m = eta_commutator_matrix(cd)?;
    let gammas = eta_gammas(&m, cd, depth)?;
    let similar = a.map(|a| similarity_check(a.matrix(), &m)).transpose()?;
    let residual = match (a, cd.xi()) {
        (Some(a), Some(_)) => Some(conjugacy_residual(cd, a, &m)?),
        _ => None,
    };
    let chi_ad = chi_ad_report(cd)?;
    let section = ClassSection {
        class_sizes: cd.dims().to_vec(),
        class_dual: cd.class_dual().to_vec(),
        eta_matrix: m.to_strings(),
        eta_char_poly: char_poly(&m),
        stochasticity: stochasticity_report(&m, cd),
        eta_gamma: gammas.iter().map(|g| strings(g)).collect(),
        similar_to_fusion_matrix: similar,
        conjugacy_residual: residual,
        chi_ad: Some(strings(&chi_ad.chi_ad)),
    };
    Ok((section, m, gammas))
}

/// Report sections that need only the ring and, optionally, class data.
fn analyze_ring(ring: &FusionRing, cd: Option<&ClassData>, depth: usize, input: InputSummary) -> Result<AnalysisReport> {
    let a = CommutatorMatrix::build(ring)?;
    let spectrum = commutator_spectrum(&a)?;
    let (verdict, support_chain) = verdict_from_ring(ring, &a)?;
    let gammas: Vec<CentralVector<Rational>> = (0..=depth).map(|m| a.gamma(m)).collect();
    let convergence = match cd {
        Some(cd) => {
            let alphas = gammas.iter().map(|g| identity_mass(ring, g)).collect::<Result<Vec<_>>>()?;
            Some(convergence_from_alphas(cd.dims(), &alphas)?)
        }
        None => None,
    };
    let class_algebra = match cd {
        Some(cd) if cd.eta_structure().is_some() => Some(class_section(cd, Some(&a), depth)?.0),
        _ => None,
    };
    let report = AnalysisReport {
        input,
        ring: Some(RingSummary::of(ring)),
        commutator_matrix: Some(a.matrix().to_strings()),
        centrality: Some(ring.check_centrality()),
        char_poly: spectrum.exact_poly.clone(),
        spectrum,
        verdict,
        trajectory: Trajectory {
            basis: Basis::ScaledIdempotent.name(),
            gamma: gammas.iter().map(|g| strings(&g.coefficients)).collect(),
        },
        support_chain,
        convergence,
        class_algebra,
        oracle: None,
        notes: Vec::new(),
    };
    report.enforce_consistency()?;
    Ok(report)
}

pub fn cmd_analyze(input: &Path, depth: usize, classes: Option<&Path>) -> Result<AnalysisReport> {
    let (ring, mut cd, kind) = load_ring_input(input)?;
    if let Some(p) = classes {
        cd = Some(load_classes(&ring, p)?);
    }
    let summary = InputSummary { path: input.display().to_string(), kind };
    analyze_ring(&ring, cd.as_ref(), depth, summary)
}

/// Group order cap, from [`MAX_ORDER_ENV`] when set.
pub fn max_order() -> Result<usize> {
    match std::env::var(MAX_ORDER_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("{MAX_ORDER_ENV}={v:?} is not a positive integer"))),
        Err(_) => Ok(group::DEFAULT_MAX_ORDER),
    }
}

pub fn load_group(path: &Path) -> Result<(FiniteGroup, &'static str)> {
    let text = read(path)?;
    let cap = max_order()?;
    let is_gens = match path.extension().and_then(|e| e.to_str()) {
        Some("gens") => true,
        Some("table") => false,
        _ => text.lines().map(str::trim).find(|l| !l.is_empty() && !l.starts_with('#')).is_some_and(|l| l.starts_with('(')),
    };
    if is_gens {
        Ok((FiniteGroup::from_generator_text(&text, cap)?, "generators"))
    } else {
        let g = FiniteGroup::from_table_text(&text)?;
        if g.order() > cap {
            return Err(Error::CapExceeded { what: "group order", found: g.order(), cap });
        }
        Ok((g, "multiplication_table"))
    }
}

fn file_stem(path: &Path) -> Option<String> {
    let name = path.file_name()?.to_str()?;
    Some(name.split('.').next().unwrap_or(name).to_string())
}

/// Locates and aligns a character table for `g`. An explicit table must fit;
/// a discovered one that does not fit is dropped with a note.
fn find_table(
    g: &FiniteGroup,
    cc: &ConjugacyClasses,
    input: &Path,
    explicit: Option<&Path>,
    notes: &mut Vec<String>,
) -> Result<Option<CharacterTable>> {
    if let Some(p) = explicit {
        let ct = CharacterTable::from_json_file(p)?;
        return group::align_character_table(g, cc, &ct).map(Some);
    }
    let stem = file_stem(input);
    let mut candidates: Vec<(String, String)> = Vec::new();
    if let Some(stem) = &stem {
        let sibling = input.with_file_name(format!("{stem}.ct.json"));
        if sibling.is_file() {
            candidates.push((sibling.display().to_string(), read(&sibling)?));
        }
        if let Some(t) = fixtures::table(stem) {
            candidates.push((format!("shipped table {stem}"), t.to_string()));
        }
    }
    for (source, text) in candidates {
        let aligned = CharacterTable::from_json_str(&text).and_then(|ct| group::align_character_table(g, cc, &ct));
        match aligned {
            Ok(t) => {
                notes.push(format!("character table: {source}"));
                return Ok(Some(t));
            }
            Err(e) => notes.push(format!("character table {source} rejected: {e}")),
        }
    }
    notes.push("no character table; class-algebra pipeline only".into());
    Ok(None)
}

#[allow(clippy::too_many_arguments)]
fn run_oracle(
    g: &FiniteGroup,
    cc: &ConjugacyClasses,
    cd: &ClassData,
    ring: Option<(&FusionRing, &CommutatorMatrix)>,
    table: Option<&CharacterTable>,
    eta_m: &RatMatrix,
    eta_gamma: &[Vec<Rational>],
    verdict: &Verdict,
) -> Result<OracleReport> {
    let depth = eta_gamma.len() - 1;
    let mut gamma_checks = Vec::with_capacity(depth + 1);
    let mut alpha_1 = Rational::zero();
    for (m, expected) in eta_gamma.iter().enumerate() {
        let brute = group::brute_gamma(g, m)?;
        let coords = group::to_eta_coordinates(cc, &brute);
        if m == 1 {
            alpha_1 = brute[g.identity()].clone();
        }
        let fusion_deviation = match ring {
            Some((_, a)) if cd.xi().is_some() => {
                let via = class_algebra::change_basis_e_to_eta(cd, &a.gamma(m))?;
                Some(
                    via.coefficients
                        .iter()
                        .zip(&coords)
                        .map(|(z, c)| (z - to_f64(c)).norm())
                        .fold(0.0, f64::max),
                )
            }
            _ => None,
        };
        gamma_checks.push(GammaCheck {
            m,
            matches_class_algebra: coords == *expected && group::is_class_function(cc, &brute),
            fusion_deviation,
        });
    }
    let lower_central_class = group::lower_central_series_class(g);
    let verdict_agrees = verdict.index == lower_central_class;
    let frobenius = table.map(|t| group::frobenius_check(g, cc, t)).transpose()?;
    let similarity = ring.map(|(_, a)| similarity_check(a.matrix(), eta_m)).transpose()?;
    let stochastic = stochasticity_report(eta_m, cd).all();
    let distribution_gamma_1 = match ring {
        Some((ring, a)) => {
            let f = class_algebra::distribution_function(ring, &a.gamma(1))?;
            let d = ring.dimension();
            Some(
                f.coefficients
                    .iter()
                    .zip(ring.degrees())
                    .all(|(c, &di)| *c == Rational::new(1.into(), (d * di).into())),
            )
        }
        None => None,
    };
    let all_pass = verdict_agrees
        && stochastic
        && gamma_checks.iter().all(|c| {
            c.matches_class_algebra && c.fusion_deviation.is_none_or(|d| d <= ORACLE_TOLERANCE)
        })
        && frobenius.as_ref().is_none_or(|f| f.passed)
        && similarity.unwrap_or(true)
        && distribution_gamma_1.unwrap_or(true);
    Ok(OracleReport {
        order: g.order(),
        abelian: g.is_abelian(),
        lower_central_class,
        verdict_agrees,
        gamma_checks,
        alpha_1: format_rational(&alpha_1),
        stochastic,
        frobenius,
        similarity,
        distribution_gamma_1,
        all_pass,
    })
}

pub fn cmd_group(input: &Path, oracle: bool, depth: usize, table: Option<&Path>) -> Result<AnalysisReport> {
    let (g, kind) = load_group(input)?;
    let cc = group::conjugacy_classes(&g);
    let mut notes = Vec::new();
    let aligned = find_table(&g, &cc, input, table, &mut notes)?;
    let cd = group::class_data(&g, &cc, aligned.as_ref())?;
    let summary = InputSummary { path: input.display().to_string(), kind };

    let (mut report, ring) = match &aligned {
        Some(t) => {
            let ring = ring_from_character_table(t)?;
            (analyze_ring(&ring, Some(&cd), depth, summary)?, Some(ring))
        }
        None => (analyze_classes(&cd, depth, summary)?, None),
    };
    report.notes.extend(notes);

    if oracle {
        let (_, eta_m, eta_gamma) = class_section(&cd, None, depth)?;
        let a = ring.as_ref().map(CommutatorMatrix::build).transpose()?;
        let ring_pair = ring.as_ref().zip(a.as_ref());
        report.oracle = Some(run_oracle(&g, &cc, &cd, ring_pair, aligned.as_ref(), &eta_m, &eta_gamma, &report.verdict)?);
    }
    report.enforce_consistency()?;
    Ok(report)
}

/// Table-free pipeline: everything from the class algebra of `kG`.
fn analyze_classes(cd: &ClassData, depth: usize, input: InputSummary) -> Result<AnalysisReport> {
    let (section, m, gammas) = class_section(cd, None, depth)?;
    let n = cd.n();
    let searched: Vec<Vec<Rational>> = if depth >= n { gammas[..=n].to_vec() } else { eta_gammas(&m, cd, n)? };
    let unit = class_algebra::eta_point_mass(n, 0).coefficients;
    let index = searched.iter().position(|g| *g == unit);
    let spectral_accepts = spectral::spectral_nilpotency_test(&m);
    if index.is_some() != spectral_accepts {
        return Err(Error::ContractViolated(format!(
            "class-algebra search ({index:?}) disagrees with spectral test ({spectral_accepts})"
        )));
    }
    let spectrum = spectral::numeric_spectrum(&m)?;
    if spectrum.secondary_radius >= 1.0 - spectral::RADIUS_MARGIN {
        return Err(Error::ContractViolated(format!(
            "secondary radius {} is not below 1 for a group algebra",
            spectrum.secondary_radius
        )));
    }
    let alphas: Vec<Rational> = gammas.iter().map(|g| g[0].clone()).collect();
    let convergence = convergence_from_alphas(cd.dims(), &alphas)?;
    let report = AnalysisReport {
        input,
        ring: None,
        commutator_matrix: None,
        centrality: None,
        char_poly: spectrum.exact_poly.clone(),
        spectrum,
        verdict: Verdict {
            status: if index.is_some() { VerdictStatus::Nilpotent } else { VerdictStatus::NotNilpotent },
            index,
            spectral_accepts,
            searched_to: index.unwrap_or(n),
            route: "class_algebra",
            reason: None,
        },
        trajectory: Trajectory { basis: Basis::NormalizedClassSum.name(), gamma: section.eta_gamma.clone() },
        support_chain: None,
        convergence: Some(convergence),
        class_algebra: Some(section),
        oracle: None,
        notes: Vec::new(),
    };
    report.enforce_consistency()?;
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GammaRow {
    pub m: usize,
    pub gamma: Vec<String>,
    pub identity_mass: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GammaTable {
    pub rank: usize,
    pub rows: Vec<GammaRow>,
}

impl GammaTable {
    /// Columns: `m`, `g0 .. g{n-1}` (coefficients of `gamma_m`), `identity_mass`, `bound`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("m");
        for i in 0..self.rank {
            let _ = write!(s, ",g{i}");
        }
        s.push_str(",identity_mass,bound\n");
        for r in &self.rows {
            let _ = writeln!(
                s,
                "{},{},{},{}",
                r.m,
                r.gamma.join(","),
                r.identity_mass,
                r.bound.as_deref().unwrap_or("")
            );
        }
        s
    }
}

pub fn cmd_gamma(input: &Path, steps: usize, classes: Option<&Path>) -> Result<GammaTable> {
    let (ring, mut cd, _) = load_ring_input(input)?;
    if let Some(p) = classes {
        cd = Some(load_classes(&ring, p)?);
    }
    let a = CommutatorMatrix::build(&ring)?;
    let mut rows = Vec::with_capacity(steps + 1);
    let mut alpha0 = None;
    for (m, g) in a.gammas().take(steps + 1).enumerate() {
        let v = CentralVector::new(Basis::ScaledIdempotent, g);
        let alpha = identity_mass(&ring, &v)?;
        let a0 = alpha0.get_or_insert_with(|| alpha.clone()).clone();
        let bound = cd.as_ref().map(|cd| convergence_bound(cd.dims(), &a0, m as u32)).transpose()?;
        rows.push(GammaRow {
            m,
            gamma: strings(&v.coefficients),
            identity_mass: format_rational(&alpha),
            bound: bound.as_ref().map(format_rational),
        });
    }
    Ok(GammaTable { rank: ring.rank(), rows })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectrumOutput {
    pub input: InputSummary,
    pub ring: RingSummary,
    pub spectral_accepts: bool,
    pub spectrum: SpectrumReport,
}

impl SpectrumOutput {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "char poly: {}", self.spectrum.exact_poly);
        for z in &self.spectrum.numeric_eigenvalues {
            let _ = writeln!(s, "  {} {:+}i", z.re, z.im);
        }
        let _ = writeln!(s, "multiplicity of 1: {}", self.spectrum.unit_multiplicity);
        let _ = writeln!(s, "multiplicity of 0: {}", self.spectrum.zero_multiplicity);
        let _ = writeln!(s, "secondary radius: {}", self.spectrum.secondary_radius);
        s
    }
}

pub fn cmd_spectrum(input: &Path) -> Result<SpectrumOutput> {
    let (ring, _, kind) = load_ring_input(input)?;
    let a = CommutatorMatrix::build(&ring)?;
    let spectrum = commutator_spectrum(&a)?;
    Ok(SpectrumOutput {
        input: InputSummary { path: input.display().to_string(), kind },
        ring: RingSummary::of(&ring),
        spectral_accepts: spectral::spectral_nilpotency_test(a.matrix()),
        spectrum,
    })
}
