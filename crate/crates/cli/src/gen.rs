use std::fs::{self, File};
use std::io::{BufWriter, Write};

use acyclic_cnf::checkers::{Checker, EncodeOptions};
use acyclic_cnf::cnf::write_dimacs_annotated;
use acyclic_cnf::families::{gen_supervisor_instance, instance_seed, Family, FamilyKind, GeneratorOptions, InstanceMeta};
use anyhow::{bail, Context, Result};

use crate::args::GenArgs;
use crate::pool::parallel_map;
use crate::suite::{cnf_path, encode_instance, encoding_path, family_of, instance_id, instance_path, EncodingMeta};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GenSummary {
    pub instances: usize,
    pub files: usize,
    /// `(checker, instances encoded)`
    pub per_checker: Vec<(Checker, usize)>,
}

/// Instance metadata for the requested family, sizes and probabilities.
pub fn plan_instances(args: &GenArgs) -> Result<Vec<InstanceMeta>> {
    let allow_self_loops = !args.no_self_loops;
    let gen_opts = GeneratorOptions { allow_self_loops, ..GeneratorOptions::default() };
    let mut metas = Vec::new();
    for &n in &args.n.0 {
        let n = n as usize;
        match args.family {
            FamilyKind::NoSink => {
                if n == 0 {
                    bail!("no-sink instances need n >= 1");
                }
                metas.push(InstanceMeta {
                    id: instance_id("no-sink", n, None),
                    family: "no-sink".into(),
                    n,
                    p: None,
                    seed: None,
                    allow_self_loops,
                    bounds: None,
                });
            }
            FamilyKind::Supervisor => {
                for &p in &args.p.0 {
                    if p > 100 {
                        bail!("--p is a percentage, got {p}");
                    }
                    let seed = instance_seed(args.seed, n, p as u32);
                    let b = gen_supervisor_instance(n, p as f64 / 100.0, seed, &gen_opts)?;
                    metas.push(InstanceMeta {
                        id: instance_id("supervisor", n, Some(p)),
                        family: "supervisor".into(),
                        n,
                        p: Some(p as f64 / 100.0),
                        seed: Some(seed),
                        allow_self_loops,
                        bounds: Some(b.pairs().into_iter().map(|(u, l)| [u, l]).collect()),
                    });
                }
            }
        }
    }
    Ok(metas)
}

fn checkers_for(args: &GenArgs) -> Result<Vec<Checker>> {
    let monotone = args.family == FamilyKind::NoSink;
    match &args.checker {
        Some(list) => {
            if !monotone {
                if let Some(c) = list.0.iter().find(|c| c.requires_monotone_family()) {
                    bail!("checker {c} reuses edge variables and needs a monotone family; {} bounds are not monotone", args.family);
                }
            }
            let mut cs: Vec<Checker> = Vec::new();
            for &c in &list.0 {
                if !cs.contains(&c) {
                    cs.push(c);
                }
            }
            Ok(cs)
        }
        None => Ok(Checker::ALL.into_iter().filter(|c| monotone || !c.requires_monotone_family()).collect()),
    }
}

/// Generate the suite described by `args`. With `dry_run`, writes the
/// manifest `(instance, checker, cnf file)` to `manifest` instead of files.
pub fn cmd_gen(args: &GenArgs, manifest: &mut dyn Write) -> Result<GenSummary> {
    let checkers = checkers_for(args)?;
    let metas = plan_instances(args)?;
    let opts = EncodeOptions { skip_degenerate: args.skip_degenerate, ..EncodeOptions::default() };
    let dir = &args.outdir;
    let mut summary = GenSummary {
        instances: metas.len(),
        files: 0,
        per_checker: checkers.iter().map(|&c| (c, metas.len())).collect(),
    };
    if args.dry_run {
        writeln!(manifest, "instance,checker,cnf")?;
        for m in &metas {
            for &c in &checkers {
                writeln!(manifest, "{},{c},{}", m.id, cnf_path(dir, &m.id, c).display())?;
            }
        }
        return Ok(summary);
    }
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    for m in &metas {
        fs::write(instance_path(dir, &m.id), m.to_toml()?)?;
    }
    let jobs: Vec<(&InstanceMeta, Checker)> = metas.iter().flat_map(|m| checkers.iter().map(move |&c| (m, c))).collect();
    let results = parallel_map(&jobs, args.jobs, |&(m, c)| write_encoding(args, m, c, &opts));
    for r in results {
        r?;
        summary.files += 1;
    }
    Ok(summary)
}

fn write_encoding(args: &GenArgs, meta: &InstanceMeta, c: Checker, opts: &EncodeOptions) -> Result<()> {
    let family: Family = family_of(meta)?;
    let enc = encode_instance(&family, c, opts, args.simplify)?;
    let mut notes = vec![format!("instance {}", meta.id), format!("family {}", family.kind()), format!("checker {c}")];
    if let (Some(p), Some(seed)) = (meta.p, meta.seed) {
        notes.push(format!("p {p} seed {seed}"));
    }
    let path = cnf_path(&args.outdir, &meta.id, c);
    let file = File::create(&path).with_context(|| format!("creating {}", path.display()))?;
    write_dimacs_annotated(&enc.formula, &enc.varmap, &notes, BufWriter::new(file))?;
    let sidecar = EncodingMeta {
        instance: meta.id.clone(),
        checker: c.to_string(),
        n: meta.n,
        simplify: args.simplify,
        skip_degenerate: args.skip_degenerate,
        size: enc.formula.size(),
        vars: enc.formula.num_vars(),
        clauses: enc.formula.num_clauses(),
        checker_size: enc.checker_size,
    };
    fs::write(encoding_path(&args.outdir, &meta.id, c), toml::to_string(&sidecar)?)?;
    Ok(())
}
