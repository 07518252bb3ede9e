//! The JSON run configuration. One file records a whole experiment; command
//! line flags override individual fields.

use std::path::{Path, PathBuf};

use clap::ValueEnum;
use isolat::{LocalCmAlgebra, ResidueRing, Split, SplittingSymbol};
use serde::Deserialize;

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Neighbors,
    Synth,
    Goup,
    Oracle,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraConfig {
    pub ell: u64,
    #[serde(default)]
    pub precision: Option<u32>,
    pub real_split: String,
    pub upper_split: Vec<String>,
    #[serde(default)]
    pub pi: Option<[i64; 4]>,
}

impl Default for AlgebraConfig {
    fn default() -> Self {
        AlgebraConfig {
            ell: 2,
            precision: None,
            real_split: "inert".into(),
            upper_split: vec!["inert".into()],
            pi: None,
        }
    }
}

impl AlgebraConfig {
    pub fn symbol(&self) -> Result<SplittingSymbol, CliError> {
        let real = Split::parse(&self.real_split)?;
        let upper = self.upper_split.iter().map(|s| Split::parse(s)).collect::<isolat::Result<_>>()?;
        Ok(SplittingSymbol::new(real, upper)?)
    }

    pub fn precision(&self) -> Result<u32, CliError> {
        let max = ResidueRing::max_precision(self.ell);
        Ok(self.precision.unwrap_or(max.min(32)))
    }

    pub fn build_with(&self, symbol: &SplittingSymbol) -> Result<LocalCmAlgebra, CliError> {
        let alg = LocalCmAlgebra::build(self.ell, symbol, self.precision()?)?;
        Ok(match self.pi {
            Some(pi) => alg.with_frobenius(pi),
            None => alg,
        })
    }

    pub fn build(&self) -> Result<LocalCmAlgebra, CliError> {
        self.build_with(&self.symbol()?)
    }
}

/// Where a run starts: `𝔩_i`-descents to the given conductor, then RM-descents.
#[derive(Clone, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StartConfig {
    #[serde(default)]
    pub conductor: Vec<u32>,
    #[serde(default)]
    pub rm_level: u32,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NeighborKindConfig {
    L,
    #[default]
    Ll,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NeighborsConfig {
    #[serde(default)]
    pub kind: NeighborKindConfig,
    #[serde(default)]
    pub prime: usize,
    #[serde(default)]
    pub start: StartConfig,
    /// Also explore the neighbor graph to `depth` and validate it.
    #[serde(default)]
    pub explore: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VolcanoConfig {
    pub norm_l: u64,
    pub symbol_in_k: i32,
    pub surface_cycle_length: u64,
    #[serde(default)]
    pub unit_indices: Vec<u64>,
    #[serde(default)]
    pub l_class_orders: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(tag = "model", rename_all = "lowercase")]
pub enum SynthConfig {
    Volcano(VolcanoConfig),
    Polarized(PolarizedConfig),
    Bileveled(BiLeveledConfig),
    /// Pastes a graph read from a JSON file.
    Paste(PasteConfig),
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolarizedConfig {
    pub volcano: VolcanoConfig,
    #[serde(default)]
    pub doubling: bool,
    #[serde(default)]
    pub u_ratios: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BiLeveledConfig {
    pub relations: Vec<[i64; 2]>,
    pub ell: u64,
    /// Splitting of `𝔩₁`, `𝔩₂` in `K`; both split when absent.
    #[serde(default)]
    pub symbols: Option<[String; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PasteConfig {
    pub input: PathBuf,
    pub real_split: String,
    pub ell: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BetaConfig {
    pub coords: [i64; 4],
    pub e: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GoupConfig {
    #[serde(default)]
    pub start: StartConfig,
    #[serde(default)]
    pub allow_cyclic: bool,
    #[serde(default = "yes")]
    pub l_principal_narrow: bool,
    #[serde(default)]
    pub beta: Option<BetaConfig>,
    #[serde(default)]
    pub gamma_exponent: Option<u32>,
}

fn yes() -> bool {
    true
}

impl Default for GoupConfig {
    fn default() -> Self {
        GoupConfig {
            start: StartConfig::default(),
            allow_cyclic: false,
            l_principal_narrow: true,
            beta: None,
            gamma_exponent: None,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleConfig {
    /// Defaults to the algebra's prime.
    #[serde(default)]
    pub ells: Vec<u64>,
    /// Skip the isotropy test; the plane counts must then fail.
    #[serde(default)]
    pub fault: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub command: Option<Command>,
    #[serde(default)]
    pub algebra: AlgebraConfig,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub depth: Option<u32>,
    #[serde(default)]
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub neighbors: NeighborsConfig,
    #[serde(default)]
    pub synth: Option<SynthConfig>,
    #[serde(default)]
    pub goup: GoupConfig,
    #[serde(default)]
    pub oracle: OracleConfig,
    #[serde(default)]
    pub matrix: bool,
}

pub const DEFAULT_DEPTH: u32 = 3;

impl RunConfig {
    pub fn load(path: &Path) -> Result<RunConfig, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::config(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::config(format!("{}: {e}", path.display())))
    }

    pub fn depth(&self) -> u32 {
        self.depth.unwrap_or(DEFAULT_DEPTH)
    }

    pub fn out_dir(&self) -> PathBuf {
        self.out.clone().unwrap_or_else(|| PathBuf::from("."))
    }

    /// Checks that do not need any arithmetic.
    pub fn validate(&self) -> Result<(), CliError> {
        let prec = self.algebra.precision()?;
        let exploring = self.command == Some(Command::Neighbors) && self.neighbors.explore;
        if exploring && prec < self.depth() + 4 {
            return Err(CliError::config(format!("precision {prec} is below depth {} + 4", self.depth())));
        }
        if self.command == Some(Command::Synth) && self.synth.is_none() {
            return Err(CliError::config("synth needs a \"synth\" block"));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_config_fills_defaults() {
        let c: RunConfig = serde_json::from_str(r#"{"command": "goup"}"#).unwrap();
        assert_eq!(c.command, Some(Command::Goup));
        assert_eq!(c.algebra.ell, 2);
        assert!(c.goup.l_principal_narrow);
        assert_eq!(c.depth(), DEFAULT_DEPTH);
    }

    #[test]
    fn synth_block_is_tagged() {
        let c: RunConfig = serde_json::from_str(
            r#"{"command": "synth", "synth": {"model": "volcano", "norm_l": 2, "symbol_in_k": 0,
                "surface_cycle_length": 1, "l_class_orders": [1, 2, 2]}}"#,
        )
        .unwrap();
        match c.synth.unwrap() {
            SynthConfig::Volcano(v) => assert_eq!(v.l_class_orders, [1, 2, 2]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unknown_fields_rejected() {
        assert!(serde_json::from_str::<RunConfig>(r#"{"comand": "goup"}"#).is_err());
    }

    #[test]
    fn precision_must_cover_depth() {
        let c: RunConfig = serde_json::from_str(
            r#"{"command": "neighbors", "depth": 10, "algebra": {"ell": 5, "precision": 12,
                "real_split": "inert", "upper_split": ["inert"]}, "neighbors": {"explore": true}}"#,
        )
        .unwrap();
        assert_eq!(c.validate().unwrap_err().code, 2);
    }
}
