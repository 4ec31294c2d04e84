//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 when the input
//! or the arguments cannot be used.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::arith::{arithmetic_tutte, arithmetic_tutte_at_y1, check_axioms, AmbientGroup, Multiplicity, Representation};
use crate::error::Error;
use crate::exact_linalg::IntMatrix;
use crate::gstruct::{cyclic_structure, layer_structure, torsion_free_reduction, validate_structure, GroupStructure};
use crate::matroid::Matroid;
use crate::poset::{build_poset, IndPoset};
use crate::sr_ring::{compare_hilbert, default_max_degree, hilbert_closed, sr_ideal};
use crate::subset::ElemSet;

/// Input file contents: a representation in `Z^r ⊕ Z/q_1 ⊕ ..` or a matroid
/// with an explicit multiplicity. Sets use 1-based element labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum InputSpec {
    Representation(RepresentationInput),
    Abstract(AbstractInput),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentationInput {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
    pub columns: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AbstractInput {
    pub ground_size: usize,
    pub independent_sets: Vec<Vec<usize>>,
    pub multiplicity: Vec<MultiplicityEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MultiplicityEntry {
    pub set: Vec<usize>,
    pub m: u64,
}

impl InputSpec {
    pub fn from_json(text: &str) -> Result<Self, String> {
        serde_json::from_str(text).map_err(|e| format!("invalid input: {e}"))
    }

    pub fn read(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        Self::from_json(&text)
    }

    /// Pretty JSON with fields in declaration order and a trailing newline.
    pub fn to_canonical_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }

    pub fn load(&self) -> Result<Input, String> {
        match self {
            InputSpec::Representation(r) => {
                let dim = r.free_rank + r.torsion.len();
                if let Some(c) = r.columns.iter().find(|c| c.len() != dim) {
                    return Err(format!("column {c:?} has length {} but should have length {dim}", c.len()));
                }
                let ambient = AmbientGroup::new(r.free_rank, r.torsion.clone()).map_err(|e| e.to_string())?;
                let x = IntMatrix::from_cols(dim, &r.columns);
                let rep = Representation::new(ambient, x).map_err(|e| e.to_string())?;
                Ok(Input::Representation(rep))
            }
            InputSpec::Abstract(a) => {
                let set = |l: &[usize]| -> Result<ElemSet, String> {
                    if l.iter().any(|&e| e == 0 || e > a.ground_size) {
                        return Err(format!("set {l:?} has labels outside 1..={}", a.ground_size));
                    }
                    if l.windows(2).any(|w| w[0] >= w[1]) {
                        return Err(format!("set {l:?} is not sorted"));
                    }
                    Ok(ElemSet::from_labels(l).unwrap())
                };
                let sets = a.independent_sets.iter().map(|s| set(s)).collect::<Result<Vec<_>, _>>()?;
                let matroid = Matroid::from_independent_sets(a.ground_size, sets).map_err(|e| e.to_string())?;
                let mut values = BTreeMap::new();
                for entry in &a.multiplicity {
                    if values.insert(set(&entry.set)?, entry.m).is_some() {
                        return Err(format!("duplicate multiplicity for {:?}", entry.set));
                    }
                }
                let m = Multiplicity::new(&matroid, values).map_err(|e| e.to_string())?;
                Ok(Input::Abstract { matroid, m })
            }
        }
    }
}

pub enum Input {
    Representation(Representation),
    Abstract { matroid: Matroid, m: Multiplicity },
}

impl Input {
    pub fn matroid(&self) -> Matroid {
        match self {
            Input::Representation(r) => r.matroid(),
            Input::Abstract { matroid, .. } => matroid.clone(),
        }
    }

    pub fn multiplicity(&self) -> Multiplicity {
        match self {
            Input::Representation(r) => r.multiplicity_function(),
            Input::Abstract { m, .. } => m.clone(),
        }
    }

    pub fn structure(&self, kind: StructureKind) -> Result<GroupStructure, Failure> {
        match (kind, self) {
            (StructureKind::Layer, Input::Representation(r)) => {
                if !r.ambient().torsion.is_empty() {
                    return Err(Failure::Usage(
                        "layer groups require a representation in a lattice Z^r (no torsion)".into(),
                    ));
                }
                Ok(layer_structure(r.columns()))
            }
            (StructureKind::Layer, Input::Abstract { .. }) => Err(Failure::Usage(
                "layer groups require a representation; this input only gives a matroid and a multiplicity".into(),
            )),
            (StructureKind::Cyclic, _) => {
                cyclic_structure(&self.matroid(), &self.multiplicity()).map_err(|e| Failure::Check(e.to_string()))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StructureKind {
    Layer,
    Cyclic,
}

#[derive(Debug, Parser)]
#[command(name = "arimat", version, about = "Arithmetic independence posets and their Stanley-Reisner rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Tutte and arithmetic Tutte polynomials.
    Tutte { file: PathBuf },
    /// f- and h-vectors of the independence poset, per component.
    Poset {
        file: PathBuf,
        #[arg(long, value_enum)]
        structure: StructureKind,
        /// Use the torsion-free reduction of the structure.
        #[arg(long)]
        torsion_free: bool,
        /// Write the Hasse diagram in DOT format.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Generators of the Stanley-Reisner ideal.
    Ideal {
        file: PathBuf,
        #[arg(long, value_enum)]
        structure: StructureKind,
    },
    /// Hilbert function by linear algebra against the closed form.
    Hilbert {
        file: PathBuf,
        #[arg(long, value_enum)]
        structure: StructureKind,
        /// Highest degree checked (default: rank + 3).
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Axioms (P), (A1), (A2) of an arithmetic matroid.
    CheckAxioms { file: PathBuf },
    /// Surjectivity and commuting squares of the group structure.
    Validate {
        file: PathBuf,
        #[arg(long, value_enum)]
        structure: StructureKind,
    },
}

#[derive(Debug)]
pub enum Failure {
    /// Bad arguments or input; exit code 2.
    Usage(String),
    /// A check did not pass; exit code 1.
    Check(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Check(_) => 1,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let (Failure::Usage(msg) | Failure::Check(msg)) = self;
        f.write_str(msg)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn load(path: &Path) -> Result<Input, Failure> {
    InputSpec::read(path).and_then(|s| s.load()).map_err(Failure::Usage)
}

fn vector(v: &[num_bigint::BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

/// Builds the poset, switching to the torsion-free reduction when `G(∅)` is
/// nontrivial. Returns the poset used and, if reduced, the full poset and
/// `|G(∅)|`.
fn connected_poset(g: &GroupStructure, err: &mut dyn Write) -> Result<(IndPoset, Option<(IndPoset, u64)>), Failure> {
    let check = |e: Error| Failure::Check(e.to_string());
    let c = g.group(ElemSet::EMPTY).order();
    let full = build_poset(g).map_err(check)?;
    if c == 1 {
        return Ok((full, None));
    }
    writeln!(err, "note: |G(∅)| = {c}; using the torsion-free reduction")?;
    let reduced = build_poset(&torsion_free_reduction(g)).map_err(check)?;
    Ok((reduced, Some((full, c))))
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    match cmd {
        Command::Tutte { file } => {
            let input = load(&file)?;
            let matroid = input.matroid();
            let m = input.multiplicity();
            writeln!(out, "Tutte: {}", matroid.tutte())?;
            if m.is_total() {
                let t = arithmetic_tutte(&matroid, &m).map_err(|e| Failure::Check(e.to_string()))?;
                writeln!(out, "arithmetic Tutte: {t}")?;
            } else {
                let t = arithmetic_tutte_at_y1(&matroid, &m).map_err(|e| Failure::Check(e.to_string()))?;
                writeln!(out, "arithmetic Tutte at y = 1: {}", t.fmt_var("x"))?;
            }
        }
        Command::Poset { file, structure, torsion_free, dot } => {
            let g = load(&file)?.structure(structure)?;
            let g = if torsion_free { torsion_free_reduction(&g) } else { g };
            let p = build_poset(&g).map_err(|e| Failure::Check(e.to_string()))?;
            let comps = p.components();
            writeln!(out, "elements: {}", p.len())?;
            writeln!(out, "components: {}", comps.len())?;
            for (k, c) in comps.iter().enumerate() {
                writeln!(out, "component {k}: f = {}, h = {}", vector(&c.f_vector()), vector(&c.h_vector()))?;
            }
            if let Some(path) = dot {
                std::fs::write(&path, p.export_dot())?;
            }
        }
        Command::Ideal { file, structure } => {
            let g = load(&file)?.structure(structure)?;
            let (p, _) = connected_poset(&g, err)?;
            let ideal = sr_ideal(&p).map_err(|e| Failure::Check(e.to_string()))?;
            write!(out, "{}", ideal.render())?;
        }
        Command::Hilbert { file, structure, max_degree } => {
            let g = load(&file)?.structure(structure)?;
            let (p, full) = connected_poset(&g, err)?;
            let d = max_degree.unwrap_or_else(|| default_max_degree(&p));
            let expected = match &full {
                None => hilbert_closed(&p),
                Some((full, c)) => hilbert_closed(full).divided_by(*c).map_err(|e| Failure::Check(e.to_string()))?,
            };
            let cmp = compare_hilbert(&p, &expected, d).map_err(|e| Failure::Check(e.to_string()))?;
            let dims: Vec<String> = cmp.oracle.iter().map(ToString::to_string).collect();
            let series: Vec<String> = cmp.expected.iter().map(ToString::to_string).collect();
            writeln!(out, "h = {}, r = {}", vector(&expected.h_vector), expected.rank)?;
            writeln!(out, "dims:   {}", dims.join(" "))?;
            writeln!(out, "series: {}", series.join(" "))?;
            writeln!(out, "{}", if cmp.matches() { "MATCH" } else { "MISMATCH" })?;
            if let Some(d) = cmp.first_mismatch() {
                return Err(Failure::Check(format!("Hilbert function differs in degree {d}")));
            }
        }
        Command::CheckAxioms { file } => {
            let input = load(&file)?;
            let report = check_axioms(&input.matroid(), &input.multiplicity()).map_err(|e| Failure::Usage(e.to_string()))?;
            write!(out, "{report}")?;
            if !report.all_hold() {
                return Err(Failure::Check("not an arithmetic matroid".into()));
            }
        }
        Command::Validate { file, structure } => {
            let g = load(&file)?.structure(structure)?;
            let report = validate_structure(&g);
            if report.is_valid() {
                writeln!(out, "valid")?;
            } else {
                for d in &report.diagnostics {
                    writeln!(out, "{d}")?;
                }
                return Err(Failure::Check("invalid group structure".into()));
            }
        }
    }
    Ok(())
}

/// Runs the command line `args` (including the program name), returning the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(err, "error: {f}");
            f.code()
        }
    }
}
