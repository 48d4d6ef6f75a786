//! Named EGG water-turbulence presets.
//!
//! The mapping from physical water conditions (bubble level, salinity) to
//! EGG parameters comes from external laboratory fits; this artifact only
//! ships them as data. The built-in table lives in `presets/egg_water.json`
//! next to the crate and is embedded at compile time; a preset directory
//! (flag `--preset-dir` or env `RIS_SECRECY_PRESETS`) can add or override
//! entries with files of the same schema.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::channels::EggHop;
use crate::error::{invalid, Result};

pub const ENV_PRESET_DIR: &str = "RIS_SECRECY_PRESETS";

const BUILTIN: &str = include_str!("../presets/egg_water.json");

/// EGG water-turbulence parameters (without the per-hop pointing error).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EggPreset {
    pub omega: f64,
    pub lambda: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    #[serde(default)]
    pub description: String,
}

#[derive(Deserialize)]
struct PresetFile {
    presets: BTreeMap<String, EggPreset>,
}

impl EggPreset {
    /// Combines the water parameters with a pointing-error pair into a hop.
    pub fn hop(&self, xi: f64, a0: f64) -> Result<EggHop> {
        EggHop::new(self.omega, self.lambda, self.a, self.b, self.c, xi, a0)
    }
}

/// The compiled-in preset table.
pub fn builtin() -> BTreeMap<String, EggPreset> {
    serde_json::from_str::<PresetFile>(BUILTIN)
        .expect("embedded preset table parses")
        .presets
}

/// Built-ins plus any `*.json` preset files found in `dir` (later files
/// override earlier names).
pub fn load(dir: Option<&Path>) -> Result<BTreeMap<String, EggPreset>> {
    let mut table = builtin();
    let Some(dir) = dir else {
        return Ok(table);
    };
    let entries = std::fs::read_dir(dir)
        .map_err(|e| invalid("preset-dir", format!("{}: {e}", dir.display())))?;
    let mut paths: Vec<_> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    for path in paths {
        let text = std::fs::read_to_string(&path)
            .map_err(|e| invalid("preset-file", format!("{}: {e}", path.display())))?;
        let file: PresetFile = serde_json::from_str(&text)
            .map_err(|e| invalid("preset-file", format!("{}: {e}", path.display())))?;
        table.extend(file.presets);
    }
    Ok(table)
}

/// Looks up one preset by name, listing the known names on failure.
pub fn get(table: &BTreeMap<String, EggPreset>, name: &str) -> Result<EggPreset> {
    table.get(name).cloned().ok_or_else(|| {
        invalid(
            "preset",
            format!(
                "unknown water preset `{name}`; known: {}",
                table.keys().cloned().collect::<Vec<_>>().join(", ")
            ),
        )
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_presets_are_valid_hops() {
        let table = builtin();
        assert!(table.contains_key("fresh_bl2.4"));
        assert!(table.contains_key("salty_bl2.4"));
        for (name, p) in table {
            assert!(p.hop(1.0, 1.0).is_ok(), "preset {name} invalid");
        }
    }

    #[test]
    fn unknown_preset_lists_names() {
        let table = builtin();
        let err = get(&table, "swamp").unwrap_err().to_string();
        assert!(err.contains("fresh_bl2.4"), "{err}");
    }
}
