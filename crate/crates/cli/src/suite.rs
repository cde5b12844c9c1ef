//! On-disk layout of a generated suite.
//!
//! ```text
//! <outdir>/<id>.instance.toml      instance metadata (family, n, p, seed, bounds)
//! <outdir>/<id>.<checker>.cnf      DIMACS with `c edge` / `c aux` comments
//! <outdir>/<id>.<checker>.toml     encoding metadata (sizes, options)
//! ```

use std::fs;
use std::path::{Path, PathBuf};

use acyclic_cnf::checkers::{encode, Checker, EncodeOptions};
use acyclic_cnf::cnf::{CnfFormula, EdgeVarMap, VarAllocator, VarMap};
use acyclic_cnf::families::{Family, InstanceMeta};
use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};

pub const INSTANCE_SUFFIX: &str = ".instance.toml";

/// `nosink-n07` or `supervisor-n07-p30`.
pub fn instance_id(family: &str, n: usize, p_percent: Option<u64>) -> String {
    match p_percent {
        None => format!("{}-n{n:02}", family.replace('-', "")),
        Some(p) => format!("{}-n{n:02}-p{p:02}", family.replace('-', "")),
    }
}

pub fn instance_path(dir: &Path, id: &str) -> PathBuf {
    dir.join(format!("{id}{INSTANCE_SUFFIX}"))
}

pub fn cnf_path(dir: &Path, id: &str, c: Checker) -> PathBuf {
    dir.join(format!("{id}.{c}.cnf"))
}

pub fn encoding_path(dir: &Path, id: &str, c: Checker) -> PathBuf {
    dir.join(format!("{id}.{c}.toml"))
}

/// Sidecar describing one encoded instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EncodingMeta {
    pub instance: String,
    pub checker: String,
    pub n: usize,
    pub simplify: bool,
    pub skip_degenerate: bool,
    /// Size of the whole formula, family plus checker.
    pub size: u64,
    pub vars: u32,
    pub clauses: usize,
    /// Size of the checker part alone.
    pub checker_size: u64,
}

impl EncodingMeta {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }
}

pub fn load_instance(path: &Path) -> Result<InstanceMeta> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(InstanceMeta::from_toml(&text).with_context(|| format!("parsing {}", path.display()))?)
}

pub fn family_of(meta: &InstanceMeta) -> Result<Family> {
    match meta.family.as_str() {
        "no-sink" => Ok(Family::NoSink { n: meta.n }),
        "supervisor" => {
            let b = meta.degree_bounds().ok_or_else(|| anyhow!("instance {} has no bounds", meta.id))?;
            if b.n() != meta.n {
                bail!("instance {} lists {} bounds for n = {}", meta.id, b.n(), meta.n);
            }
            Ok(Family::Supervisor(b))
        }
        other => bail!("instance {} has unknown family `{other}`", meta.id),
    }
}

/// `family /\ checker` over edge variables `1..=n*n`.
pub struct EncodedInstance {
    pub formula: CnfFormula,
    pub varmap: VarMap,
    pub checker_size: u64,
}

pub fn encode_instance(family: &Family, c: Checker, opts: &EncodeOptions, simplify: bool) -> Result<EncodedInstance> {
    if c.requires_monotone_family() && !family.is_monotone() {
        bail!("checker {c} is only valid for monotone families; {} is not monotone", family.kind());
    }
    let mut alloc = VarAllocator::new();
    let edges = EdgeVarMap::allocate(family.n(), &mut alloc);
    let phi = family.encode(&edges, &mut alloc)?;
    let psi = encode(c, &edges, &mut alloc, opts)?;
    let checker_size = psi.formula.size();
    let mut formula = phi.formula;
    formula.extend(psi.formula);
    let mut varmap = psi.varmap;
    varmap.merge(phi.varmap)?;
    if simplify {
        formula.simplify();
    }
    Ok(EncodedInstance { formula, varmap, checker_size })
}

/// Suite files `(id, checker, cnf path)`, sorted by file name.
pub fn list_cnfs(dir: &Path) -> Result<Vec<(String, Checker, PathBuf)>> {
    let mut out = Vec::new();
    for entry in fs::read_dir(dir).with_context(|| format!("reading suite {}", dir.display()))? {
        let path = entry?.path();
        let Some(name) = path.file_name().and_then(|s| s.to_str()) else { continue };
        let Some(stem) = name.strip_suffix(".cnf") else { continue };
        let Some((id, checker)) = stem.rsplit_once('.') else { continue };
        let Ok(checker) = checker.parse() else { continue };
        out.push((id.to_string(), checker, path.clone()));
    }
    out.sort_by(|a, b| a.2.cmp(&b.2));
    Ok(out)
}
