//! Algebra and job descriptions, as read from JSON files and flags.

use std::path::Path;

use ncres_core::groebner::complete;
use ncres_core::module::{FreeModule, ModuleVector, Signature};
use ncres_core::resolution::ModulePresentation;
use ncres_core::steenrod::steenrod_context;
use ncres_core::{FreeAlgebra, GeneratorTable, MonomialOrder, Polynomial, PrimeField, TruncatedContext};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
pub enum Preset {
    #[serde(rename = "steenrod2")]
    #[value(name = "steenrod2")]
    Steenrod2,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub name: String,
    pub degree: u32,
}

/// A graded quotient `F_p<X> / (relations)`. A preset replaces the
/// generators and relations (and fixes the field and order).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraSpec {
    #[serde(default = "two")]
    pub field: u32,
    #[serde(default)]
    pub generators: Vec<GeneratorSpec>,
    #[serde(default)]
    pub relations: Vec<String>,
    #[serde(default = "left_length_lex")]
    pub order: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<Preset>,
}

fn two() -> u32 {
    2
}

fn left_length_lex() -> String {
    MonomialOrder::LeftLengthLex.name().to_string()
}

impl Default for AlgebraSpec {
    fn default() -> Self {
        AlgebraSpec {
            field: 2,
            generators: Vec::new(),
            relations: Vec::new(),
            order: left_length_lex(),
            preset: None,
        }
    }
}

impl AlgebraSpec {
    pub fn steenrod2() -> Self {
        AlgebraSpec {
            preset: Some(Preset::Steenrod2),
            order: MonomialOrder::RightLengthLex.name().to_string(),
            ..AlgebraSpec::default()
        }
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        read_json(path)
    }

    /// The quotient algebra truncated at `k`. Custom relations are
    /// completed through degree `k` first.
    pub fn context(&self, k: u32) -> Result<TruncatedContext, CliError> {
        match self.preset {
            Some(Preset::Steenrod2) => {
                if self.field != 2 {
                    return Err(CliError::Input("the steenrod2 preset lives over F2".into()));
                }
                Ok(steenrod_context(k.max(1)))
            }
            None => {
                let alg = self.free_algebra()?;
                let rels = self
                    .relations
                    .iter()
                    .enumerate()
                    .map(|(i, r)| alg.parse(r).map_err(|e| CliError::Input(format!("relation {i}: {e}"))))
                    .collect::<Result<Vec<Polynomial>, _>>()?;
                let rels: Vec<Polynomial> = rels.into_iter().filter(|r| !r.is_zero()).collect();
                let gb = complete(&alg, &rels, k).map_err(|e| CliError::Input(format!("relations: {e}")))?;
                Ok(TruncatedContext::new(gb.into_basis(), k))
            }
        }
    }

    fn free_algebra(&self) -> Result<FreeAlgebra, CliError> {
        if self.generators.is_empty() {
            return Err(CliError::Input("no generators: give --preset or an algebra file".into()));
        }
        let field = PrimeField::new(self.field).map_err(|e| CliError::Input(e.to_string()))?;
        let order = MonomialOrder::from_name(&self.order)
            .ok_or_else(|| CliError::Input(format!("unknown order `{}`", self.order)))?;
        let gens = GeneratorTable::new(self.generators.iter().map(|g| (g.name.clone(), g.degree)))
            .map_err(|e| CliError::Input(e.to_string()))?;
        Ok(FreeAlgebra::new(field, gens, order))
    }
}

/// The module to resolve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModuleSpec {
    /// The ground field.
    TrivialK,
    /// Free module on generators of the given degrees modulo `rows`.
    Cokernel { degrees: Vec<u32>, rows: Vec<String> },
}

impl ModuleSpec {
    pub fn presentation(&self, ctx: &TruncatedContext) -> Result<ModulePresentation, CliError> {
        match self {
            ModuleSpec::TrivialK => Ok(ModulePresentation::TrivialModule),
            ModuleSpec::Cokernel { degrees, rows } => {
                let sig = Signature::new(degrees.iter().copied());
                let module = FreeModule::new(ctx.clone(), sig.clone());
                let relations = parse_rows(&module, rows)?;
                Ok(ModulePresentation::Cokernel {
                    signature: sig,
                    relations,
                })
            }
        }
    }
}

pub fn parse_rows(module: &FreeModule, rows: &[String]) -> Result<Vec<ModuleVector>, CliError> {
    rows.iter()
        .enumerate()
        .map(|(i, r)| {
            let v = module.parse(r).map_err(|e| CliError::Input(format!("row {i}: {e}")))?;
            if !v.is_homogeneous(module.signature()) {
                return Err(CliError::Input(format!("row {i} is not homogeneous")));
            }
            Ok(v)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Outputs {
    #[serde(rename = "chart.tsv", default = "yes")]
    pub chart_tsv: bool,
    #[serde(rename = "resolution.json", default = "yes")]
    pub resolution_json: bool,
    #[serde(rename = "chart.svg", default)]
    pub chart_svg: bool,
}

fn yes() -> bool {
    true
}

impl Default for Outputs {
    fn default() -> Self {
        Outputs {
            chart_tsv: true,
            resolution_json: true,
            chart_svg: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobSpec {
    pub module: ModuleSpec,
    pub k: u32,
    pub s_max: usize,
    #[serde(default)]
    pub outputs: Outputs,
}

impl JobSpec {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        read_json(path)
    }
}

/// A module-row file for the `syzygy` command.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowsSpec {
    pub degrees: Vec<u32>,
    pub rows: Vec<String>,
}

impl RowsSpec {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        read_json(path)
    }
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}
