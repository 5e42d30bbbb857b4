//! The `sigmaext` command line.
//!
//! Exit codes: 0 success, 1 the check ran and found a problem (`verify`,
//! `roundtrip`), 2 usage or input errors, 3 the measure cannot be turned into
//! atom masses (inconsistent, underdetermined, non-measurable, negative),
//! 4 a size guard was exceeded.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::atoms::{atoms_by_refinement, AtomPartition};
use crate::countable::{AtomDescriptor, CountablePresentation};
use crate::error::Error;
use crate::extension::{
    canonical_extension, degrees_of_freedom, extension_roundtrip_check_with_guard,
    parametrized_extension, restrict_pmf, Dof, DofReport, ExtensionSpec,
};
use crate::field::{enumerate_field_with_guard, solve_atom_masses, verify_measure, AtomMasses, DEFAULT_FIELD_GUARD};
use crate::instance::{parse_instance, FiniteInstance, Instance, InstanceError};
use crate::model::{pmf_validate, Pmf};
use crate::random_variable::{induced_distribution, scenario_extension, sigma_of};
use crate::scalar::{exact_sum, Scalar};
use crate::space::{SubsetMask, DEFAULT_MAX_ELEMENTS};
use crate::Rational;

#[derive(Debug, Parser)]
#[command(name = "sigmaext", version, about = "Atoms of σ-fields and exact p.m.f. extensions of measures")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub format: Format,
    /// Refuse to enumerate fields with more atoms than this.
    #[arg(long = "guard-atoms", default_value_t = DEFAULT_FIELD_GUARD, global = true)]
    pub guard_atoms: usize,
    /// Refuse sample spaces with more elements than this.
    #[arg(long = "max-elements", default_value_t = DEFAULT_MAX_ELEMENTS, global = true)]
    pub max_elements: usize,
    /// Members listed per atom for countable instances.
    #[arg(long, default_value_t = 16, global = true)]
    pub terms: u64,
    /// Accepted for reproducible pipelines; all commands are deterministic.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Args)]
pub struct Target {
    /// Path to a JSON instance file.
    pub instance: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Atoms of the σ-field generated by the instance.
    Atoms(Target),
    /// Every set of the generated field.
    EnumField(Target),
    /// Check the measure axioms on the given assignment.
    Verify(Target),
    /// The extension p.m.f. (canonical unless conditional p.m.f.s are given).
    Extend(Target),
    /// Atom masses of the instance p.m.f., or of the canonical extension.
    Restrict(Target),
    /// σ(X), the law of X and the scenario extension.
    Sigma(Target),
    /// Degrees of freedom in choosing an extension.
    Dof(Target),
    /// Compare the canonical extension with the measure on every field set.
    Roundtrip(Target),
}

impl Command {
    fn target(&self) -> &Target {
        match self {
            Self::Atoms(t)
            | Self::EnumField(t)
            | Self::Verify(t)
            | Self::Extend(t)
            | Self::Restrict(t)
            | Self::Sigma(t)
            | Self::Dof(t)
            | Self::Roundtrip(t) => t,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Self::Atoms(_) => "atoms",
            Self::EnumField(_) => "enum-field",
            Self::Verify(_) => "verify",
            Self::Extend(_) => "extend",
            Self::Restrict(_) => "restrict",
            Self::Sigma(_) => "sigma",
            Self::Dof(_) => "dof",
            Self::Roundtrip(_) => "roundtrip",
        }
    }
}

/// What a run printed and how it exited.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_MEASURE: i32 = 3;
pub const EXIT_GUARD: i32 = 4;

/// Exit code for a library error.
pub fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::OracleGuardExceeded { .. } | Error::FieldGuardExceeded { .. } | Error::SpaceTooLarge { .. } => EXIT_GUARD,
        Error::Inconsistent { .. }
        | Error::Underdetermined { .. }
        | Error::NegativeAtomMass { .. }
        | Error::NotMeasurable(_)
        | Error::MassOutOfRange { .. }
        | Error::FullSpaceMassNotOne(_)
        | Error::InvalidAtomMasses(_)
        | Error::InvalidPmf(_)
        | Error::InvalidConditional { .. }
        | Error::UnsupportedDistribution(_) => EXIT_MEASURE,
        _ => EXIT_INPUT,
    }
}

enum Failure {
    Usage(String),
    Instance(InstanceError),
    Lib(Error),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Self::Usage(_) => EXIT_INPUT,
            Self::Instance(e) => e.cause.as_ref().map_or(EXIT_INPUT, exit_code_for),
            Self::Lib(e) => exit_code_for(e),
        }
    }

    fn message(&self) -> String {
        match self {
            Self::Usage(m) => m.clone(),
            Self::Instance(e) => e.to_string(),
            Self::Lib(e) => e.to_string(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Self::Lib(e)
    }
}

impl From<InstanceError> for Failure {
    fn from(e: InstanceError) -> Self {
        Self::Instance(e)
    }
}

/// A successful command: what to print and whether the check it ran passed.
struct Rendered {
    stdout: String,
    passed: bool,
}

/// Runs the CLI on `args` (including the program name) without touching the
/// process's streams.
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: EXIT_INPUT, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: EXIT_OK, stdout: text, stderr: String::new() }
            };
        }
    };
    match execute(&cli) {
        Ok(r) => Outcome {
            code: if r.passed { EXIT_OK } else { EXIT_CHECK_FAILED },
            stdout: r.stdout,
            stderr: String::new(),
        },
        Err(f) => Outcome {
            code: f.code(),
            stdout: String::new(),
            stderr: format!("error: {}\n", f.message()),
        },
    }
}

fn execute(cli: &Cli) -> Result<Rendered, Failure> {
    let path = &cli.command.target().instance;
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let instance = parse_instance(&text, cli.max_elements)?;
    match instance {
        Instance::Finite(f) => finite_command(cli, &f),
        Instance::Countable(p) => countable_command(cli, &p),
    }
}

fn q(x: &Rational) -> String {
    x.to_fraction_string()
}

fn set_labels(s: &SubsetMask) -> Vec<String> {
    s.labels().into_iter().map(str::to_string).collect()
}

fn render<R: Serialize>(cli: &Cli, report: &R, passed: bool, table: impl FnOnce(&R) -> String) -> Rendered {
    let stdout = match cli.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Table => table(report),
    };
    Rendered { stdout, passed }
}

/// Left-aligned columns separated by two spaces.
fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let header: Vec<String> = headers.iter().map(|h| h.to_string()).collect();
    for row in std::iter::once(&header).chain(rows) {
        let mut line = String::new();
        for (i, (cell, w)) in row.iter().zip(&widths).enumerate() {
            if i > 0 {
                line.push_str("  ");
            }
            let _ = write!(line, "{cell:<w$}");
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

#[derive(Serialize)]
#[serde(untagged)]
enum DofValue {
    Finite(u64),
    Infinite(&'static str),
}

impl From<Dof> for DofValue {
    fn from(d: Dof) -> Self {
        match d {
            Dof::Finite(n) => Self::Finite(n),
            Dof::CountablyInfinite => Self::Infinite("countably infinite"),
        }
    }
}

#[derive(Serialize)]
struct DofOut {
    parametrization: DofValue,
    distinct_extensions: DofValue,
}

impl From<DofReport> for DofOut {
    fn from(d: DofReport) -> Self {
        Self { parametrization: d.parametrization.into(), distinct_extensions: d.distinct_extensions.into() }
    }
}

fn dof_table(d: &DofOut) -> String {
    let show = |v: &DofValue| match v {
        DofValue::Finite(n) => n.to_string(),
        DofValue::Infinite(s) => s.to_string(),
    };
    table(
        &["quantity", "dof"],
        &[
            vec!["parametrization".into(), show(&d.parametrization)],
            vec!["distinct extensions".into(), show(&d.distinct_extensions)],
        ],
    )
}

#[derive(Serialize)]
struct AtomOut {
    atom: usize,
    members: Vec<String>,
}

#[derive(Serialize)]
struct AtomMassOut {
    atom: usize,
    members: Vec<String>,
    mass: Option<String>,
}

#[derive(Serialize)]
struct ElementMassOut {
    element: String,
    mass: String,
}

fn atom_masses_out(masses: &AtomMasses<Rational>) -> Vec<AtomMassOut> {
    masses
        .partition()
        .atoms()
        .iter()
        .zip(masses.masses())
        .enumerate()
        .map(|(k, (a, m))| AtomMassOut { atom: k, members: set_labels(a), mass: Some(q(m)) })
        .collect()
}

fn pmf_out(p: &Pmf<Rational>) -> Vec<ElementMassOut> {
    p.space()
        .labels()
        .iter()
        .zip(p.masses())
        .map(|(l, m)| ElementMassOut { element: l.clone(), mass: q(m) })
        .collect()
}

fn atom_mass_rows(rows: &[AtomMassOut]) -> Vec<Vec<String>> {
    rows.iter()
        .map(|a| {
            vec![
                a.atom.to_string(),
                format!("{{{}}}", a.members.join(",")),
                a.mass.clone().unwrap_or_else(|| "undetermined".into()),
            ]
        })
        .collect()
}

fn pmf_rows(rows: &[ElementMassOut]) -> Vec<Vec<String>> {
    rows.iter().map(|e| vec![e.element.clone(), e.mass.clone()]).collect()
}

fn finite_command(cli: &Cli, f: &FiniteInstance) -> Result<Rendered, Failure> {
    let atoms = atoms_by_refinement(&f.generators);
    match &cli.command {
        Command::Atoms(_) => {
            #[derive(Serialize)]
            struct Out {
                count: usize,
                atoms: Vec<AtomOut>,
            }
            let out = Out {
                count: atoms.len(),
                atoms: atoms
                    .atoms()
                    .iter()
                    .enumerate()
                    .map(|(k, a)| AtomOut { atom: k, members: set_labels(a) })
                    .collect(),
            };
            Ok(render(cli, &out, true, |o| {
                let rows: Vec<_> =
                    o.atoms.iter().map(|a| vec![a.atom.to_string(), format!("{{{}}}", a.members.join(","))]).collect();
                table(&["atom", "members"], &rows)
            }))
        }
        Command::EnumField(_) => {
            let field = enumerate_field_with_guard(&atoms, cli.guard_atoms)?;
            #[derive(Serialize)]
            struct Out {
                atoms: usize,
                size: usize,
                sets: Vec<Vec<String>>,
            }
            let out = Out { atoms: atoms.len(), size: field.len(), sets: field.sets().iter().map(set_labels).collect() };
            Ok(render(cli, &out, true, |o| {
                let rows: Vec<_> =
                    o.sets.iter().enumerate().map(|(i, s)| vec![i.to_string(), format!("{{{}}}", s.join(","))]).collect();
                table(&["set", "members"], &rows)
            }))
        }
        Command::Verify(_) => {
            let report = verify_measure(&f.measure, &atoms);
            #[derive(Serialize)]
            struct Out {
                valid: bool,
                violations: Vec<String>,
                undetermined_atoms: Vec<usize>,
                atom_masses: Vec<AtomMassOut>,
            }
            let out = Out {
                valid: report.is_valid(),
                violations: report.violations.iter().map(ToString::to_string).collect(),
                undetermined_atoms: report.undetermined_atoms(),
                atom_masses: atoms
                    .atoms()
                    .iter()
                    .zip(&report.atom_masses)
                    .enumerate()
                    .map(|(k, (a, m))| AtomMassOut { atom: k, members: set_labels(a), mass: m.as_ref().map(q) })
                    .collect(),
            };
            let valid = out.valid;
            Ok(render(cli, &out, valid, |o| {
                let mut s = if o.valid { "valid\n".to_string() } else { "invalid\n".to_string() };
                for v in &o.violations {
                    let _ = writeln!(s, "violation: {v}");
                }
                s.push_str(&table(&["atom", "members", "mass"], &atom_mass_rows(&o.atom_masses)));
                s
            }))
        }
        Command::Extend(_) => {
            let masses = solve_atom_masses(&f.measure, &atoms)?;
            let conditionals = f.conditionals_for(&atoms)?;
            let kind = if conditionals.is_some() { "parametrized" } else { "canonical" };
            let pmf = parametrized_extension(&ExtensionSpec { masses: masses.clone(), per_atom_pmfs: conditionals })?;
            #[derive(Serialize)]
            struct Out {
                kind: &'static str,
                atoms: Vec<AtomMassOut>,
                pmf: Vec<ElementMassOut>,
            }
            let out = Out { kind, atoms: atom_masses_out(&masses), pmf: pmf_out(&pmf) };
            Ok(render(cli, &out, true, |o| {
                let mut s = format!("{} extension\n", o.kind);
                s.push_str(&table(&["element", "mass"], &pmf_rows(&o.pmf)));
                s
            }))
        }
        Command::Restrict(_) => {
            let (source, p) = match &f.pmf {
                Some(p) => {
                    let report = pmf_validate(p);
                    if !report.is_valid() {
                        return Err(Error::InvalidPmf(report.to_string()).into());
                    }
                    ("pmf", p.clone())
                }
                None => ("canonical_extension", canonical_extension(&solve_atom_masses(&f.measure, &atoms)?)),
            };
            let masses = restrict_pmf(&p, &atoms)?;
            #[derive(Serialize)]
            struct Out {
                source: &'static str,
                atoms: Vec<AtomMassOut>,
            }
            let out = Out { source, atoms: atom_masses_out(&masses) };
            Ok(render(cli, &out, true, |o| {
                let mut s = format!("restricted from {}\n", o.source.replace('_', " "));
                s.push_str(&table(&["atom", "members", "mass"], &atom_mass_rows(&o.atoms)));
                s
            }))
        }
        Command::Sigma(_) => sigma_command(cli, f, &atoms),
        Command::Dof(_) => {
            let masses = solve_atom_masses(&f.measure, &atoms)?;
            let out: DofOut = degrees_of_freedom(&atoms, &masses)?.into();
            Ok(render(cli, &out, true, dof_table))
        }
        Command::Roundtrip(_) => {
            let report = extension_roundtrip_check_with_guard(&f.measure, &f.generators, cli.guard_atoms)?;
            #[derive(Serialize)]
            struct Disagreement {
                set: String,
                expected: String,
                actual: String,
            }
            #[derive(Serialize)]
            struct Out {
                agrees: bool,
                atoms: usize,
                sets_checked: usize,
                first_disagreement: Option<Disagreement>,
            }
            let out = Out {
                agrees: report.agrees(),
                atoms: report.atoms.len(),
                sets_checked: report.sets_checked,
                first_disagreement: report
                    .first_disagreement
                    .as_ref()
                    .map(|(set, e, a)| Disagreement { set: set.clone(), expected: q(e), actual: q(a) }),
            };
            let agrees = out.agrees;
            Ok(render(cli, &out, agrees, |o| {
                let mut s = format!(
                    "{}: {} sets checked over {} atoms\n",
                    if o.agrees { "agrees" } else { "disagrees" },
                    o.sets_checked,
                    o.atoms
                );
                if let Some(d) = &o.first_disagreement {
                    let _ = writeln!(s, "first disagreement: {} expected {} got {}", d.set, d.expected, d.actual);
                }
                s
            }))
        }
    }
}

fn sigma_command(cli: &Cli, f: &FiniteInstance, atoms: &AtomPartition) -> Result<Rendered, Failure> {
    let Some(x) = &f.random_variable else {
        return Err(Failure::Usage("sigma needs a random_variable in the instance".into()));
    };
    let sigma = sigma_of(x);
    let (source, p, dof) = match (&f.pmf, &f.distribution) {
        (Some(p), _) => ("pmf", p.clone(), None),
        (None, Some(dist)) => {
            let s = scenario_extension(x, dist)?;
            ("scenario_extension", s.pmf, Some(s.dof))
        }
        (None, None) => ("canonical_extension", canonical_extension(&solve_atom_masses(&f.measure, atoms)?), None),
    };
    let law = induced_distribution(x, &p)?;
    #[derive(Serialize)]
    struct LevelSet {
        value: String,
        members: Vec<String>,
    }
    #[derive(Serialize)]
    struct ValueMass {
        value: String,
        mass: String,
    }
    #[derive(Serialize)]
    struct Out {
        atoms: Vec<LevelSet>,
        unattained: Vec<String>,
        source: &'static str,
        pmf: Vec<ElementMassOut>,
        law: Vec<ValueMass>,
        #[serde(skip_serializing_if = "Option::is_none")]
        dof: Option<DofOut>,
    }
    let codomain = x.codomain();
    let out = Out {
        atoms: sigma
            .atoms()
            .iter()
            .map(|a| LevelSet {
                value: codomain.label(x.value_of(a.first().expect("atoms are non-empty"))).to_string(),
                members: set_labels(a),
            })
            .collect(),
        unattained: x.unattained().into_iter().map(|v| codomain.label(v).to_string()).collect(),
        source,
        pmf: pmf_out(&p),
        law: codomain
            .labels()
            .iter()
            .zip(law.masses())
            .map(|(v, m)| ValueMass { value: v.clone(), mass: q(m) })
            .collect(),
        dof: dof.map(Into::into),
    };
    Ok(render(cli, &out, true, |o| {
        let rows: Vec<_> = o.atoms.iter().map(|a| vec![a.value.clone(), format!("{{{}}}", a.members.join(","))]).collect();
        let mut s = table(&["value", "level set"], &rows);
        if !o.unattained.is_empty() {
            let _ = writeln!(s, "unattained: {}", o.unattained.join(", "));
        }
        let _ = writeln!(s, "\nlaw of X under the {}", o.source.replace('_', " "));
        let rows: Vec<_> = o.law.iter().map(|v| vec![v.value.clone(), v.mass.clone()]).collect();
        s.push_str(&table(&["value", "mass"], &rows));
        s.push('\n');
        s.push_str(&table(&["element", "mass"], &pmf_rows(&o.pmf)));
        s
    }))
}

#[derive(Serialize)]
struct TermOut {
    index: u64,
    label: String,
    mass: String,
}

#[derive(Serialize)]
struct CountableAtomOut {
    atom: usize,
    description: String,
    size: Option<u64>,
    mass: String,
}

fn countable_atoms_out(p: &CountablePresentation<Rational>) -> Vec<CountableAtomOut> {
    p.atoms()
        .iter()
        .zip(p.masses())
        .enumerate()
        .map(|(k, (a, m))| CountableAtomOut { atom: k, description: a.describe(), size: a.size(), mass: q(m) })
        .collect()
}

fn countable_command(cli: &Cli, p: &CountablePresentation<Rational>) -> Result<Rendered, Failure> {
    match &cli.command {
        Command::Atoms(_) => {
            #[derive(Serialize)]
            struct Out {
                count: usize,
                atoms: Vec<CountableAtomOut>,
            }
            let out = Out { count: p.atoms().len(), atoms: countable_atoms_out(p) };
            Ok(render(cli, &out, true, |o| {
                let rows: Vec<_> = o
                    .atoms
                    .iter()
                    .map(|a| {
                        let size = a.size.map_or_else(|| "infinite".to_string(), |s| s.to_string());
                        vec![a.atom.to_string(), a.description.clone(), size, a.mass.clone()]
                    })
                    .collect();
                table(&["atom", "members", "size", "mass"], &rows)
            }))
        }
        Command::Extend(_) => {
            #[derive(Serialize)]
            struct AtomTerms {
                atom: usize,
                description: String,
                mass: String,
                terms: Vec<TermOut>,
                partial_sum: String,
                tail: Option<String>,
            }
            #[derive(Serialize)]
            struct Out {
                kind: &'static str,
                terms_per_atom: u64,
                atoms: Vec<AtomTerms>,
            }
            let mut atoms = Vec::with_capacity(p.atoms().len());
            for (k, (a, m)) in p.atoms().iter().zip(p.masses()).enumerate() {
                let terms = a
                    .first_members(cli.terms)
                    .into_iter()
                    .map(|i| Ok(TermOut { index: i, label: p.label(i), mass: q(&p.lazy_pmf_eval(i)?) }))
                    .collect::<Result<Vec<_>, Error>>()?;
                let n = terms.len() as u64;
                let tail = match a {
                    AtomDescriptor::Infinite(_) => Some(q(&p.tail_bound(k, n)?)),
                    AtomDescriptor::Finite(_) => None,
                };
                atoms.push(AtomTerms {
                    atom: k,
                    description: a.describe(),
                    mass: q(m),
                    terms,
                    partial_sum: q(&p.partial_sum(k, n)?),
                    tail,
                });
            }
            let out = Out { kind: "canonical", terms_per_atom: cli.terms, atoms };
            Ok(render(cli, &out, true, |o| {
                let mut s = String::new();
                for a in &o.atoms {
                    let _ = writeln!(s, "atom {} {} mass {}", a.atom, a.description, a.mass);
                    let rows: Vec<_> =
                        a.terms.iter().map(|t| vec![t.index.to_string(), t.label.clone(), t.mass.clone()]).collect();
                    s.push_str(&table(&["index", "label", "mass"], &rows));
                    let _ = write!(s, "partial sum {}", a.partial_sum);
                    if let Some(t) = &a.tail {
                        let _ = write!(s, ", tail {t}");
                    }
                    s.push_str("\n\n");
                }
                s
            }))
        }
        Command::Dof(_) => {
            let out: DofOut = p.degrees_of_freedom().into();
            Ok(render(cli, &out, true, dof_table))
        }
        Command::Roundtrip(_) => {
            // Partial sums must match the summed point masses, and partial sum
            // plus tail must give back the atom mass.
            let mut checks = 0usize;
            let mut first_failure = None;
            'atoms: for (k, (a, m)) in p.atoms().iter().zip(p.masses()).enumerate() {
                let members = a.first_members(cli.terms);
                for n in 0..=members.len() {
                    checks += 1;
                    let summed = exact_sum(
                        members[..n].iter().map(|&i| p.lazy_pmf_eval(i)).collect::<Result<Vec<_>, _>>()?.iter(),
                    );
                    let partial = p.partial_sum(k, n as u64)?;
                    if summed != partial {
                        first_failure = Some(format!(
                            "atom {k}: first {n} point masses sum to {} but the partial sum is {}",
                            q(&summed),
                            q(&partial)
                        ));
                        break 'atoms;
                    }
                    if a.is_infinite() {
                        let total = partial + p.tail_bound(k, n as u64)?;
                        if &total != m {
                            first_failure = Some(format!(
                                "atom {k}: partial sum plus tail after {n} terms is {}, mass is {}",
                                q(&total),
                                q(m)
                            ));
                            break 'atoms;
                        }
                    }
                }
            }
            #[derive(Serialize)]
            struct Out {
                agrees: bool,
                atoms: usize,
                checks: usize,
                first_failure: Option<String>,
            }
            let out = Out { agrees: first_failure.is_none(), atoms: p.atoms().len(), checks, first_failure };
            let agrees = out.agrees;
            Ok(render(cli, &out, agrees, |o| {
                let mut s = format!(
                    "{}: {} checks over {} atoms\n",
                    if o.agrees { "agrees" } else { "disagrees" },
                    o.checks,
                    o.atoms
                );
                if let Some(f) = &o.first_failure {
                    let _ = writeln!(s, "{f}");
                }
                s
            }))
        }
        other => Err(Failure::Usage(format!("{} needs a finite instance (omega)", other.name()))),
    }
}
