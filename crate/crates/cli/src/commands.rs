use std::collections::HashMap;
use std::time::Instant;

use gepgap::perm::WeightedGroup;
use gepgap::processes::{
    block_shuffle_group, gep_graph, interchange_group, random_walk, BaseGraph, BlockShuffleSpec,
    GepConfig, RateMode,
};
use gepgap::verify::{
    describe_graph, probe_block_shuffle_conjecture, random_graph as random_base_graph,
    verify_aldous, verify_commutative_diagram, verify_gep_equals_k_rw, VerificationReport,
};
use gepgap::WeightedDigraph;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::CliError;
use crate::files::{load_graph, read_json, AlphaFile, GraphFile, FORMAT_VERSION};
use crate::report::{write_json, Options, ReportFile, SweepFile};
use crate::{
    AldousArgs, Common, DiagramArgs, GapArgs, GepArgs, Occupancy, OutputArgs, ProbeArgs, Process,
    RandomGraphArgs,
};

type Outcome = Result<u8, CliError>;

impl From<OutputArgs> for Options {
    fn from(o: OutputArgs) -> Self {
        Self {
            full_spectrum: o.full_spectrum,
            timing: !o.no_timing,
        }
    }
}

fn emit<T: Serialize>(value: &T) -> Result<(), CliError> {
    Ok(write_json(value, std::io::stdout().lock())?)
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Loads a graph and rejects disconnected ones up front.
fn connected_graph(path: &std::path::Path) -> Result<BaseGraph, CliError> {
    let x = load_graph(path)?;
    if !x.is_connected() {
        return Err(gepgap::Error::NotIrreducible.into());
    }
    Ok(x)
}

pub(crate) fn parse_k_list(x: &BaseGraph, text: &str) -> Result<Vec<usize>, CliError> {
    let mut given: HashMap<&str, usize> = HashMap::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (v, k) = item
            .split_once('=')
            .ok_or_else(|| usage(format!("expected V=INT, got `{item}`")))?;
        let k: usize = k
            .trim()
            .parse()
            .map_err(|_| usage(format!("bad capacity in `{item}`")))?;
        if given.insert(v.trim(), k).is_some() {
            return Err(usage(format!("vertex {} listed twice", v.trim())));
        }
    }
    if let Some(extra) = given
        .keys()
        .find(|v| x.vertices().iter().all(|name| name != *v))
    {
        return Err(usage(format!("unknown vertex {extra} in --k-list")));
    }
    x.vertices()
        .iter()
        .map(|v| {
            given
                .get(v.as_str())
                .copied()
                .ok_or_else(|| usage(format!("--k-list has no entry for {v}")))
        })
        .collect()
}

fn occupancies(x: &BaseGraph, occ: &Occupancy) -> Result<Vec<usize>, CliError> {
    match (occ.k, &occ.k_list) {
        (Some(k), _) => Ok(vec![k; x.len()]),
        (None, Some(list)) => parse_k_list(x, list),
        (None, None) => Err(usage("one of --k or --k-list is required")),
    }
}

fn spectrum_report<S: gepgap::graph::StateLabel>(
    g: &WeightedDigraph<S>,
) -> Result<gepgap::SpectralReport, CliError> {
    if !g.is_irreducible() {
        return Err(gepgap::Error::NotIrreducible.into());
    }
    Ok(g.spectrum()?)
}

fn irreducible_group(group: WeightedGroup) -> Result<WeightedGroup, CliError> {
    if !group.is_irreducible()? {
        return Err(gepgap::Error::NotIrreducible.into());
    }
    Ok(group)
}

fn reject_unused(args: &GapArgs) -> Result<(), CliError> {
    let p = args.process;
    let flags = [
        ("--scale", args.scale.is_some(), p == Process::Krw),
        (
            "--k/--k-list",
            args.occupancy.k.is_some() || args.occupancy.k_list.is_some(),
            p == Process::Gep,
        ),
        ("--l", args.l.is_some(), p == Process::Gep),
        ("--alpha", args.alpha.is_some(), p == Process::Bs),
    ];
    match flags.iter().find(|(_, given, used)| *given && !*used) {
        Some((flag, ..)) => Err(usage(format!("{flag} does not apply to this process"))),
        None => Ok(()),
    }
}

pub fn gap(args: &GapArgs) -> Outcome {
    reject_unused(args)?;
    let start = Instant::now();
    let x = connected_graph(&args.graph)?;
    let describe = describe_graph(&x);
    let (instance, process, spec) = match args.process {
        Process::Rw => (describe, "rw", spectrum_report(&random_walk(&x, 1.0)?)?),
        Process::Krw => {
            let scale = args
                .scale
                .ok_or_else(|| usage("--scale is required for krw"))?;
            (
                format!("{describe} scale={scale}"),
                "krw",
                spectrum_report(&random_walk(&x, scale)?)?,
            )
        }
        Process::Ip => (
            describe,
            "ip",
            spectrum_report(&irreducible_group(interchange_group(&x))?.cayley_graph()?)?,
        ),
        Process::Gep => {
            let k = occupancies(&x, &args.occupancy)?;
            let l = args.l.ok_or_else(|| usage("--l is required for gep"))?;
            let instance = format!("{describe} k={k:?} l={l}");
            let cfg = GepConfig::new(x, k, l)?;
            (
                instance,
                "gep",
                spectrum_report(&gep_graph(&cfg, RateMode::Normal)?)?,
            )
        }
        Process::Bs => {
            let alpha = match &args.alpha {
                Some(path) => read_json::<AlphaFile>(path)?.to_spec(&x)?,
                None => BlockShuffleSpec::from_pairs(&x),
            };
            let group = irreducible_group(block_shuffle_group(&alpha)?)?;
            let instance = format!("{describe} blocks={}", alpha.alpha().count());
            (instance, "bs", spectrum_report(&group.cayley_graph()?)?)
        }
    };
    let elapsed = start.elapsed().as_millis();
    emit(&ReportFile::from_spectrum(
        instance,
        process,
        &spec,
        elapsed,
        args.output.into(),
    ))?;
    Ok(0)
}

fn finish(mut rep: VerificationReport, common: &Common) -> Outcome {
    if rep.seed.is_none() {
        rep.seed = common.seed;
    }
    let file = ReportFile::from_verification(&rep, common.output.into());
    emit(&file)?;
    Ok(match file.overall_pass {
        Some(false) => 1,
        _ => 0,
    })
}

fn check_tol(common: &Common) -> Result<(), CliError> {
    if !(common.tol > 0.0 && common.tol.is_finite()) {
        return Err(usage(format!("--tol must be positive, got {}", common.tol)));
    }
    Ok(())
}

pub fn aldous(args: &AldousArgs) -> Outcome {
    check_tol(&args.common)?;
    let Some(count) = args.random else {
        let path = args
            .graph
            .as_ref()
            .ok_or_else(|| usage("--graph or --random is required"))?;
        let x = connected_graph(path)?;
        return finish(verify_aldous(&x, None, args.common.tol)?, &args.common);
    };
    if args.sizes.is_empty() || args.sizes.iter().any(|&n| n < 2) {
        return Err(usage("--sizes needs vertex counts of at least 2"));
    }
    let base = args.common.seed.unwrap_or(0);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs.unwrap_or(0))
        .build()
        .map_err(|e| usage(format!("--jobs: {e}")))?;
    let opts: Options = args.common.output.into();
    let reports = pool.install(|| {
        (0..count)
            .into_par_iter()
            .map(|i| {
                let seed = base.wrapping_add(i as u64);
                let x = random_base_graph(args.sizes[i % args.sizes.len()], seed)?;
                let mut rep = verify_aldous(&x, None, args.common.tol)?;
                rep.seed = Some(seed);
                Ok(ReportFile::from_verification(&rep, opts))
            })
            .collect::<Result<Vec<_>, gepgap::Error>>()
    })?;
    let overall_pass = reports.iter().all(|r| r.overall_pass == Some(true));
    emit(&SweepFile {
        format: FORMAT_VERSION,
        seed: Some(base),
        reports,
        overall_pass,
    })?;
    Ok(if overall_pass { 0 } else { 1 })
}

pub fn gep(args: &GepArgs) -> Outcome {
    check_tol(&args.common)?;
    let x = connected_graph(&args.graph)?;
    let ls: Vec<usize> = match args.l {
        Some(l) => vec![l],
        None => (1..args.k * x.len()).collect(),
    };
    if ls.is_empty() {
        return Err(usage("no admissible particle count for this graph and --k"));
    }
    finish(
        verify_gep_equals_k_rw(&x, args.k, &ls, args.common.tol)?,
        &args.common,
    )
}

pub fn diagram(args: &DiagramArgs) -> Outcome {
    check_tol(&args.common)?;
    let x = connected_graph(&args.graph)?;
    let k = occupancies(&x, &args.occupancy)?;
    let cfg = GepConfig::new(x, k, args.l)?;
    finish(
        verify_commutative_diagram(&cfg, args.common.tol)?,
        &args.common,
    )
}

pub fn bs_probe(args: &ProbeArgs) -> Outcome {
    check_tol(&args.common)?;
    if args.m.is_empty() || args.m.iter().any(|m| !(*m > 0.0 && m.is_finite())) {
        return Err(usage("--m needs positive weights"));
    }
    let x = connected_graph(&args.graph)?;
    let k = occupancies(&x, &args.occupancy)?;
    let rep = probe_block_shuffle_conjecture(&x, &k, args.l, &args.m, args.common.tol)?;
    finish(rep, &args.common)?;
    Ok(0)
}

pub fn random_graph(args: &RandomGraphArgs) -> Outcome {
    if args.n < 2 {
        return Err(usage("--n must be at least 2"));
    }
    let file = GraphFile::from_graph(&random_base_graph(args.n, args.seed)?);
    match &args.out {
        Some(path) => {
            let out = std::fs::File::create(path)
                .map_err(|e| usage(format!("{}: {e}", path.display())))?;
            write_json(&file, std::io::BufWriter::new(out))?;
        }
        None => emit(&file)?,
    }
    Ok(0)
}
