//! Report documents. Keys keep declaration order and every float is written
//! with 17 significant digits.

use std::io::{self, Write};

use gepgap::verify::{Check, GraphDump, VerificationReport};
use gepgap::SpectralReport;
use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};

use crate::files::FORMAT_VERSION;

const SPECTRUM_HEAD: usize = 10;

#[derive(Debug, Serialize)]
pub struct ReportFile {
    pub format: u32,
    pub label: &'static str,
    pub instance: String,
    pub process: String,
    pub state_count: usize,
    pub gap: f64,
    pub spectrum_head: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spectrum: Option<Vec<f64>>,
    pub checks: Vec<CheckEntry>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub observations: Vec<CheckEntry>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub graphs: Vec<GraphEntry>,
    pub seed: Option<u64>,
    pub elapsed_ms: u128,
    pub overall_pass: Option<bool>,
}

#[derive(Debug, Serialize)]
pub struct CheckEntry {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub tol: f64,
    pub pass: bool,
}

impl From<&Check> for CheckEntry {
    fn from(c: &Check) -> Self {
        Self {
            name: c.name.clone(),
            lhs: c.lhs,
            rhs: c.rhs,
            tol: c.tol,
            pass: c.pass,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct GraphEntry {
    pub name: String,
    pub states: Vec<String>,
    pub rates: Vec<Vec<f64>>,
    pub gap: Option<f64>,
}

impl From<&GraphDump> for GraphEntry {
    fn from(g: &GraphDump) -> Self {
        let n = g.states.len();
        Self {
            name: g.name.clone(),
            states: g.states.clone(),
            rates: g.rates.chunks(n.max(1)).map(<[f64]>::to_vec).collect(),
            gap: g.gap,
        }
    }
}

/// Several reports from one sweep.
#[derive(Debug, Serialize)]
pub struct SweepFile {
    pub format: u32,
    pub seed: Option<u64>,
    pub reports: Vec<ReportFile>,
    pub overall_pass: bool,
}

#[derive(Debug, Clone, Copy)]
pub struct Options {
    pub full_spectrum: bool,
    pub timing: bool,
}

impl ReportFile {
    pub fn from_spectrum(
        instance: String,
        process: &str,
        spec: &SpectralReport,
        elapsed_ms: u128,
        opts: Options,
    ) -> Self {
        Self {
            format: FORMAT_VERSION,
            label: "GAP",
            instance,
            process: process.into(),
            state_count: spec.spectrum().len(),
            gap: spec.gap(),
            spectrum_head: spec
                .spectrum()
                .iter()
                .take(SPECTRUM_HEAD)
                .copied()
                .collect(),
            spectrum: opts.full_spectrum.then(|| spec.spectrum().to_vec()),
            checks: Vec::new(),
            observations: Vec::new(),
            graphs: Vec::new(),
            seed: None,
            elapsed_ms: if opts.timing { elapsed_ms } else { 0 },
            overall_pass: Some(true),
        }
    }

    pub fn from_verification(r: &VerificationReport, opts: Options) -> Self {
        Self {
            format: FORMAT_VERSION,
            label: r.kind.label(),
            instance: r.instance.clone(),
            process: r.process.clone(),
            state_count: r.state_count,
            gap: r.gap,
            spectrum_head: r.spectrum.iter().take(SPECTRUM_HEAD).copied().collect(),
            spectrum: opts.full_spectrum.then(|| r.spectrum.clone()),
            checks: r.checks.iter().map(CheckEntry::from).collect(),
            observations: r.observations.iter().map(CheckEntry::from).collect(),
            graphs: r.graphs.iter().map(GraphEntry::from).collect(),
            seed: r.seed,
            elapsed_ms: if opts.timing { r.elapsed_ms } else { 0 },
            overall_pass: r.overall_pass(),
        }
    }
}

/// Pretty printing with floats in `{:.16e}` form.
struct SigDigits<'a>(PrettyFormatter<'a>);

impl Formatter for SigDigits<'_> {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{value:.16e}")
    }

    fn begin_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }

    fn end_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }

    fn begin_array_value<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }

    fn end_array_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }

    fn begin_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }

    fn end_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }

    fn begin_object_key<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }

    fn begin_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }

    fn end_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

pub fn write_json<T: Serialize, W: Write>(value: &T, mut out: W) -> io::Result<()> {
    let mut ser =
        serde_json::Serializer::with_formatter(&mut out, SigDigits(PrettyFormatter::new()));
    value.serialize(&mut ser).map_err(io::Error::from)?;
    writeln!(out)
}
