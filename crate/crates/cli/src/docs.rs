//! JSON document formats: spaces, mappings, and embedding-lemma configs.
//!
//! A space document names its soft sets; a missing parameter key inside a
//! soft set means an empty approximation. The `topology` field is either an
//! explicit list of names (verified against the axioms, rejected with the
//! violating pair) or one of the strings `"discrete"`, `"indiscrete"`,
//! `"generate"`; the last reads the `subbase` name list and generates the
//! topology, adjoining null and absolute if absent.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use softtop::{Context, Ctx, Error as EngineError, SoftMapping, SoftSet, SoftSpace, SoftTopology};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpaceDocument {
    pub universe: Vec<String>,
    pub params: Vec<String>,
    #[serde(default)]
    pub soft_sets: BTreeMap<String, BTreeMap<String, Vec<String>>>,
    pub topology: TopologyField,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subbase: Option<Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TopologyField {
    Names(Vec<String>),
    Mode(String),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MappingDocument {
    pub phi: BTreeMap<String, String>,
    pub psi: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub src: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dst: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LemmaConfig {
    pub space: String,
    pub targets: Vec<LemmaTarget>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LemmaTarget {
    pub space: String,
    pub mapping: String,
}

/// A parsed and validated space document.
pub struct ResolvedSpace {
    pub path: String,
    pub ctx: Ctx,
    pub named_sets: BTreeMap<String, SoftSet>,
    pub space: SoftSpace,
    pub notices: Vec<String>,
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse {
        path: path.display().to_string(),
        detail: e.to_string(),
    })
}

pub fn parse_space(path: &Path, size_cap: usize) -> CliResult<ResolvedSpace> {
    let doc: SpaceDocument = read_json(path)?;
    resolve_space(&doc, &path.display().to_string(), size_cap)
}

pub fn resolve_space(doc: &SpaceDocument, path: &str, size_cap: usize) -> CliResult<ResolvedSpace> {
    let ctx =
        Context::new(doc.universe.clone(), doc.params.clone()).map_err(|e| CliError::Parse {
            path: path.to_string(),
            detail: e.to_string(),
        })?;

    let mut named_sets = BTreeMap::new();
    for (name, rows) in &doc.soft_sets {
        let mut set = SoftSet::null(&ctx);
        for (param_label, elems) in rows {
            let param = ctx
                .param_index(param_label)
                .ok_or_else(|| CliError::UnknownLabel {
                    path: path.to_string(),
                    what: "parameter",
                    label: param_label.clone(),
                })?;
            for elem_label in elems {
                let elem = ctx
                    .elem_index(elem_label)
                    .ok_or_else(|| CliError::UnknownLabel {
                        path: path.to_string(),
                        what: "element",
                        label: elem_label.clone(),
                    })?;
                set = set
                    .union(
                        &softtop::SoftPoint::new(&ctx, param, elem)
                            .unwrap()
                            .to_soft_set(),
                    )
                    .unwrap();
            }
        }
        named_sets.insert(name.clone(), set);
    }

    let mut notices = Vec::new();
    let topology = match &doc.topology {
        TopologyField::Mode(mode) => match mode.as_str() {
            "indiscrete" => SoftTopology::indiscrete(&ctx),
            "discrete" => SoftTopology::discrete(&ctx)?,
            "generate" => {
                let names = doc.subbase.clone().unwrap_or_default();
                let subbase: Vec<SoftSet> = names
                    .iter()
                    .map(|name| {
                        named_sets
                            .get(name)
                            .cloned()
                            .ok_or_else(|| CliError::UnknownName {
                                path: path.to_string(),
                                name: name.clone(),
                            })
                    })
                    .collect::<CliResult<_>>()?;
                let outcome = SoftTopology::generate_from_subbase_capped(&ctx, &subbase, size_cap)?;
                if outcome.adjoined_null {
                    notices.push("adjoined the null soft set to the subbase".to_string());
                }
                if outcome.adjoined_absolute {
                    notices.push("adjoined the absolute soft set to the subbase".to_string());
                }
                outcome.topology
            }
            other => {
                return Err(CliError::Parse {
                    path: path.to_string(),
                    detail: format!(
                        "topology mode {other:?} is not one of discrete, indiscrete, generate"
                    ),
                })
            }
        },
        TopologyField::Names(names) => {
            let opens: Vec<SoftSet> = names
                .iter()
                .map(|name| {
                    named_sets
                        .get(name)
                        .cloned()
                        .ok_or_else(|| CliError::UnknownName {
                            path: path.to_string(),
                            name: name.clone(),
                        })
                })
                .collect::<CliResult<_>>()?;
            SoftTopology::try_new(&ctx, opens).map_err(|e| match e {
                EngineError::AxiomsViolated(verdict) => CliError::AxiomViolation {
                    path: path.to_string(),
                    witness: verdict.to_string(),
                },
                other => CliError::Engine(other),
            })?
        }
    };

    Ok(ResolvedSpace {
        path: path.to_string(),
        ctx,
        named_sets,
        space: SoftSpace::new(topology),
        notices,
    })
}

pub fn parse_mapping(
    path: &Path,
    src: &ResolvedSpace,
    dst: &ResolvedSpace,
) -> CliResult<SoftMapping> {
    let doc: MappingDocument = read_json(path)?;
    resolve_mapping(&doc, &path.display().to_string(), &src.ctx, &dst.ctx)
}

pub fn resolve_mapping(
    doc: &MappingDocument,
    path: &str,
    src: &Ctx,
    dst: &Ctx,
) -> CliResult<SoftMapping> {
    let phi = resolve_component(
        path,
        &doc.phi,
        src.universe_labels(),
        |label| dst.elem_index(label),
        "element",
    )?;
    let psi = resolve_component(
        path,
        &doc.psi,
        src.param_labels(),
        |label| dst.param_index(label),
        "parameter",
    )?;
    SoftMapping::new(src, dst, phi, psi).map_err(|e| CliError::Parse {
        path: path.to_string(),
        detail: e.to_string(),
    })
}

fn resolve_component(
    path: &str,
    table: &BTreeMap<String, String>,
    src_labels: &[String],
    dst_index: impl Fn(&str) -> Option<usize>,
    what: &'static str,
) -> CliResult<Vec<usize>> {
    for key in table.keys() {
        if !src_labels.contains(key) {
            return Err(CliError::UnknownLabel {
                path: path.to_string(),
                what,
                label: key.clone(),
            });
        }
    }
    src_labels
        .iter()
        .map(|label| {
            let target = table.get(label).ok_or_else(|| CliError::Parse {
                path: path.to_string(),
                detail: format!("mapping does not cover {what} {label:?}"),
            })?;
            dst_index(target).ok_or_else(|| CliError::UnknownLabel {
                path: path.to_string(),
                what,
                label: target.clone(),
            })
        })
        .collect()
}

/// The mapping document's own space references, resolved relative to the
/// mapping file, used when the flags do not name the spaces.
pub fn mapping_space_refs(path: &Path) -> CliResult<(Option<PathBuf>, Option<PathBuf>)> {
    let doc: MappingDocument = read_json(path)?;
    let base = path.parent().unwrap_or_else(|| Path::new("."));
    Ok((doc.src.map(|p| base.join(p)), doc.dst.map(|p| base.join(p))))
}

pub fn parse_lemma_config(path: &Path) -> CliResult<(LemmaConfig, PathBuf)> {
    let config: LemmaConfig = read_json(path)?;
    let base = path
        .parent()
        .unwrap_or_else(|| Path::new("."))
        .to_path_buf();
    Ok((config, base))
}

/// Serializes a space back into document form. Opens are named `T000`,
/// `T001`, ... in canonical key order; empty approximations are omitted.
pub fn space_to_document(space: &SoftSpace) -> SpaceDocument {
    let ctx = space.ctx();
    let mut soft_sets = BTreeMap::new();
    let mut names = Vec::new();
    for (i, open) in space.opens().enumerate() {
        let name = format!("T{i:03}");
        let mut rows = BTreeMap::new();
        for param in 0..ctx.params_len() {
            let elems: Vec<String> = open
                .row(param)
                .into_iter()
                .map(|e| ctx.elem_label(e).to_string())
                .collect();
            if !elems.is_empty() {
                rows.insert(ctx.param_label(param).to_string(), elems);
            }
        }
        soft_sets.insert(name.clone(), rows);
        names.push(name);
    }
    SpaceDocument {
        universe: ctx.universe_labels().to_vec(),
        params: ctx.param_labels().to_vec(),
        soft_sets,
        topology: TopologyField::Names(names),
        subbase: None,
    }
}

pub fn write_document(path: &Path, doc: &SpaceDocument) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(doc).expect("documents always serialize");
    text.push('\n');
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}
