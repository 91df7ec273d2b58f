//! Serialisable documents for every command output. All schemas carry a
//! format version; field order is fixed so identical runs are byte
//! identical in JSON mode.

use frattini_core::matrix::FpMatrix;
use frattini_core::pipeline::{CheckWitness, ConstructionReport, Expected, Relation};
use frattini_core::subgroups::{GeneratorSet, StabilizedObject, SubgroupSpec};
use serde::{Deserialize, Serialize};

pub const FORMAT_VERSION: u32 = 1;

pub fn matrix_rows(m: &FpMatrix) -> Vec<Vec<u64>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

#[derive(Serialize, Deserialize, PartialEq, Debug, Clone)]
pub struct SpecDoc {
    pub class: String,
    pub params: String,
}

impl From<SubgroupSpec> for SpecDoc {
    fn from(s: SubgroupSpec) -> Self {
        SpecDoc { class: s.class_name().to_string(), params: s.params_string() }
    }
}

#[derive(Serialize, Deserialize, PartialEq, Debug, Clone)]
#[serde(rename_all = "snake_case")]
pub enum ExpectedDoc {
    Exact(u64),
    AtMost(u64),
    OneOf(u64, u64),
}

impl From<Expected> for ExpectedDoc {
    fn from(e: Expected) -> Self {
        match e {
            Expected::Exact(v) => ExpectedDoc::Exact(v),
            Expected::AtMost(v) => ExpectedDoc::AtMost(v),
            Expected::OneOf(a, b) => ExpectedDoc::OneOf(a, b),
        }
    }
}

impl ExpectedDoc {
    /// ASCII rendering for the fixed-width tables.
    pub fn render(&self) -> String {
        match self {
            ExpectedDoc::Exact(v) => format!("{v}"),
            ExpectedDoc::AtMost(v) => format!("<={v}"),
            ExpectedDoc::OneOf(a, b) => format!("{a}|{b}"),
        }
    }
}

#[derive(Serialize, Deserialize, PartialEq, Debug, Clone, Copy)]
#[serde(rename_all = "snake_case")]
pub enum RelationDoc {
    Equal,
    WithinBound,
    Mismatch,
}

impl From<Relation> for RelationDoc {
    fn from(r: Relation) -> Self {
        match r {
            Relation::Equal => RelationDoc::Equal,
            Relation::WithinBound => RelationDoc::WithinBound,
            Relation::Mismatch => RelationDoc::Mismatch,
        }
    }
}

impl RelationDoc {
    pub fn render(&self) -> &'static str {
        match self {
            RelationDoc::Equal => "=",
            RelationDoc::WithinBound => "<=",
            RelationDoc::Mismatch => "MISMATCH",
        }
    }
}

#[derive(Serialize, Deserialize, PartialEq, Debug, Clone)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WitnessDoc {
    Matrix { rows: Vec<Vec<u64>> },
    GeneratorRow { generator: usize, row: usize },
    /// A group element rendered as an array of coordinate arrays, with the
    /// standard-basis tuple that produced it when the deterministic scan
    /// found one.
    Commutator { tuple: Option<Vec<usize>>, element: Vec<Vec<u64>> },
    Bound { value: u64, limit: u64 },
    Note { text: String },
}

impl From<&CheckWitness> for WitnessDoc {
    fn from(w: &CheckWitness) -> Self {
        match w {
            CheckWitness::Matrix(m) => WitnessDoc::Matrix { rows: matrix_rows(m) },
            CheckWitness::GeneratorRow { generator, row } => {
                WitnessDoc::GeneratorRow { generator: *generator, row: *row }
            }
            CheckWitness::Commutator { tuple, element } => {
                WitnessDoc::Commutator { tuple: tuple.clone(), element: element.clone() }
            }
            CheckWitness::Bound { value, limit } => {
                WitnessDoc::Bound { value: *value, limit: *limit }
            }
            CheckWitness::Note(text) => WitnessDoc::Note { text: text.clone() },
        }
    }
}

#[derive(Serialize, Deserialize, PartialEq, Debug, Clone)]
pub struct CheckDoc {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessDoc>,
}

#[derive(Serialize, Deserialize, PartialEq, Debug, Clone)]
pub struct Table2Comparison {
    pub expected: ExpectedDoc,
    pub computed: u64,
    pub relation: RelationDoc,
}

#[derive(Serialize, Deserialize, PartialEq, Debug, Clone)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StabilizedObjectDoc {
    Subspace { basis: Vec<Vec<u64>> },
    BlockDecomposition { r: usize, block_dim: usize },
    FieldStructure { r: u64, t: usize, modulus: Vec<u64>, primitive_elt: Vec<u64> },
    TensorDecomposition { d1: usize, d2: usize },
    TensorInduced { t: usize, r: usize },
    Form { form_kind: String, gram: Vec<Vec<u64>> },
}

impl From<&StabilizedObject> for StabilizedObjectDoc {
    fn from(o: &StabilizedObject) -> Self {
        match o {
            StabilizedObject::Subspace { basis } => {
                StabilizedObjectDoc::Subspace { basis: matrix_rows(basis) }
            }
            StabilizedObject::BlockDecomposition { r, block_dim } => {
                StabilizedObjectDoc::BlockDecomposition { r: *r, block_dim: *block_dim }
            }
            StabilizedObject::FieldStructure { ext, t } => StabilizedObjectDoc::FieldStructure {
                r: ext.r(),
                t: *t,
                modulus: ext.modulus().coeffs().to_vec(),
                primitive_elt: ext.primitive_elt().to_vec(),
            },
            StabilizedObject::TensorDecomposition { d1, d2 } => {
                StabilizedObjectDoc::TensorDecomposition { d1: *d1, d2: *d2 }
            }
            StabilizedObject::TensorInduced { t, r } => {
                StabilizedObjectDoc::TensorInduced { t: *t, r: *r }
            }
            StabilizedObject::Form(f) => StabilizedObjectDoc::Form {
                form_kind: f.kind.name().to_string(),
                gram: matrix_rows(&f.gram),
            },
        }
    }
}

#[derive(Serialize, Deserialize, PartialEq, Debug, Clone)]
pub struct GeneratorSetDoc {
    pub class: String,
    pub params: String,
    pub p: u64,
    pub d: usize,
    pub gens: Vec<Vec<u64>>,
    pub stabilized_object: StabilizedObjectDoc,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub similitude_characters: Option<Vec<u64>>,
}

impl GeneratorSetDoc {
    pub fn from_set(set: &GeneratorSet, p: u64) -> Self {
        GeneratorSetDoc {
            class: set.spec.class_name().to_string(),
            params: set.spec.params_string(),
            p,
            d: set.d,
            gens: set.gens.iter().map(|g| g.entries().to_vec()).collect(),
            stabilized_object: (&set.object).into(),
            similitude_characters: set.similitude_characters.clone(),
        }
    }
}

#[derive(Serialize, Deserialize, PartialEq, Debug, Clone)]
pub struct ReportBodyDoc {
    pub n: u32,
    pub m_basis: Vec<Vec<u64>>,
    /// |G| = p^m.
    pub m: u64,
    pub quotient_dim: u64,
    pub checks: Vec<CheckDoc>,
    pub table2: Table2Comparison,
    pub exhaustive: bool,
    pub maximal_codims: Vec<u64>,
    pub seed: u64,
}

/// The certificate document written by `construct`.
#[derive(Serialize, Deserialize, PartialEq, Debug, Clone)]
pub struct ConstructionDoc {
    pub format_version: u32,
    pub p: u64,
    pub d: usize,
    pub spec: SpecDoc,
    pub body: ReportBodyDoc,
    pub generators: GeneratorSetDoc,
}

impl ConstructionDoc {
    pub fn new(report: &ConstructionReport, generators: &GeneratorSet) -> Self {
        ConstructionDoc {
            format_version: FORMAT_VERSION,
            p: report.p,
            d: report.d,
            spec: report.spec.into(),
            body: ReportBodyDoc {
                n: report.n,
                m_basis: matrix_rows(&report.m_basis),
                m: report.order_exponent,
                quotient_dim: report.quotient_dim,
                checks: report
                    .checks
                    .iter()
                    .map(|c| CheckDoc {
                        name: c.name.to_string(),
                        pass: c.pass,
                        witness: c.witness.as_ref().map(WitnessDoc::from),
                    })
                    .collect(),
                table2: Table2Comparison {
                    expected: report.expected.into(),
                    computed: report.quotient_dim,
                    relation: report.relation.into(),
                },
                exhaustive: report.exhaustive,
                maximal_codims: report.maximal_codims.clone(),
                seed: report.seed,
            },
            generators: GeneratorSetDoc::from_set(generators, report.p),
        }
    }
}

#[derive(Serialize, Deserialize, PartialEq, Debug, Clone)]
pub struct WittRowDoc {
    pub k: u64,
    pub lie_dim: u64,
    pub alt_dim: u64,
    pub sym_dim: u64,
}

#[derive(Serialize, Deserialize, PartialEq, Debug, Clone)]
pub struct WittDoc {
    pub format_version: u32,
    pub p: u64,
    pub d: u64,
    pub max_n: u64,
    pub rows: Vec<WittRowDoc>,
}

#[derive(Serialize, Deserialize, PartialEq, Debug, Clone)]
pub struct GammaCheckDoc {
    pub name: String,
    pub deterministic_cases: u64,
    pub random_trials: u64,
    pub failures: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<Vec<Vec<Vec<u64>>>>,
}

#[derive(Serialize, Deserialize, PartialEq, Debug, Clone)]
pub struct GammaVerifyDoc {
    pub format_version: u32,
    pub p: u64,
    pub d: usize,
    pub n: usize,
    pub trials: u64,
    pub seed: u64,
    pub checks: Vec<GammaCheckDoc>,
    pub pass: bool,
}

#[derive(Serialize, Deserialize, PartialEq, Debug, Clone)]
pub struct SubmoduleDoc {
    pub dim: usize,
    pub basis: Vec<Vec<u64>>,
}

#[derive(Serialize, Deserialize, PartialEq, Debug, Clone)]
pub struct MaximalSubmoduleDoc {
    pub codim: usize,
    pub basis: Vec<Vec<u64>>,
    pub gl_invariant: bool,
}

#[derive(Serialize, Deserialize, PartialEq, Debug, Clone)]
pub struct DecomposeDoc {
    pub format_version: u32,
    pub p: u64,
    pub d: usize,
    pub spec: SpecDoc,
    pub power: usize,
    pub module_dim: usize,
    pub minimal: Vec<SubmoduleDoc>,
    pub maximal: Vec<MaximalSubmoduleDoc>,
    pub smallest_quotient_dim: u64,
    pub exhaustive: bool,
}

#[derive(Serialize, Deserialize, PartialEq, Debug, Clone)]
pub struct Table2RowDoc {
    pub class: String,
    pub conditions: String,
    pub params: String,
    pub d: usize,
    pub n: u32,
    pub dim_expected: ExpectedDoc,
    pub dim_computed: u64,
    pub relation: RelationDoc,
    pub m: u64,
    pub verified: bool,
    pub exhaustive: bool,
}

#[derive(Serialize, Deserialize, PartialEq, Debug, Clone)]
pub struct Table2Doc {
    pub format_version: u32,
    pub p: u64,
    pub d_max: usize,
    pub seed: u64,
    pub rows: Vec<Table2RowDoc>,
    pub all_ok: bool,
}
