//! Per-function analysis and the batch CSV report.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::coder::{assign_codes, build_ph_tree, CodeBook, PhTree};
use crate::count::{histogram, CountBackend};
use crate::embed::{width_bennett, width_encoded, width_minimal};
use crate::error::{Error, Result};
use crate::function::{BooleanFunction, OutputHistogram};
use crate::pla::{read_function, Format, Warning};

/// Qubit counts of the three embeddings for one function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WidthReport {
    pub name: String,
    pub n: u32,
    pub m: u32,
    pub bennett: u32,
    pub minimal: u32,
    pub encoded: u32,
}

impl WidthReport {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.name, self.n, self.m, self.bennett, self.minimal, self.encoded
        )
    }

    /// `(minimal - encoded) / minimal`.
    pub fn reduction_vs_minimal(&self) -> f64 {
        f64::from(self.minimal - self.encoded) / f64::from(self.minimal)
    }
}

#[derive(Debug, Clone)]
pub struct Analysis {
    pub function: BooleanFunction,
    pub histogram: OutputHistogram,
    pub tree: PhTree,
    pub codebook: CodeBook,
    pub report: WidthReport,
    pub warnings: Vec<Warning>,
}

pub fn analyze_function(f: &BooleanFunction, backend: &CountBackend) -> Result<Analysis> {
    let h = histogram(f, backend)?;
    let tree = build_ph_tree(&h)?;
    let codebook = assign_codes(&tree);
    let encoded = width_encoded(f, &h)?;
    debug_assert_eq!(encoded, tree.root_weight());
    let report = WidthReport {
        name: f.name().to_string(),
        n: f.inputs(),
        m: f.outputs(),
        bennett: width_bennett(f),
        minimal: width_minimal(f, &h)?,
        encoded,
    };
    Ok(Analysis {
        function: f.clone(),
        histogram: h,
        tree,
        codebook,
        report,
        warnings: Vec::new(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Emit {
    #[default]
    Summary,
    Csv,
    Embedding,
    TreeDot,
}

#[derive(Debug, Clone, Default)]
pub struct RunConfig {
    pub inputs: Vec<PathBuf>,
    /// `None` picks the format from the file extension.
    pub format: Option<Format>,
    pub backend: CountBackend,
    pub implicit_zero: bool,
    pub skip_reversible: bool,
    pub emit: Emit,
    pub output_path: Option<PathBuf>,
}

/// Analyzes one file. `Ok(None)` means the function is reversible and
/// `skip_reversible` is set.
pub fn analyze_file(path: &Path, cfg: &RunConfig) -> Result<Option<Analysis>> {
    let (f, warnings) = read_function(path, cfg.format, cfg.implicit_zero)?;
    let mut analysis = analyze_function(&f, &cfg.backend).map_err(|e| e.in_file(path))?;
    if cfg.skip_reversible && analysis.histogram.is_reversible() {
        return Ok(None);
    }
    analysis.warnings = warnings;
    Ok(Some(analysis))
}

/// Expands directories (recursively, `.pla` and `.tt` files only) and
/// returns the sorted, de-duplicated file list.
pub fn collect_inputs(paths: &[PathBuf]) -> Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    let mut pending: Vec<PathBuf> = paths.to_vec();
    while let Some(path) = pending.pop() {
        if path.is_dir() {
            let entries = std::fs::read_dir(&path).map_err(|e| Error::Io {
                path: path.clone(),
                message: e.to_string(),
            })?;
            for entry in entries {
                let entry = entry.map_err(|e| Error::Io {
                    path: path.clone(),
                    message: e.to_string(),
                })?;
                let child = entry.path();
                if child.is_dir() || Format::from_path(&child).is_some() {
                    pending.push(child);
                }
            }
        } else {
            files.push(path);
        }
    }
    files.sort();
    files.dedup();
    Ok(files)
}

/// Per-file outcome of a batch, in sorted path order.
pub type BatchResult = Vec<(PathBuf, Result<Option<Analysis>>)>;

/// Runs `analyze_file` over all inputs in parallel. The result order is the
/// sorted path order regardless of scheduling.
pub fn run_batch(cfg: &RunConfig) -> Result<BatchResult> {
    let files = collect_inputs(&cfg.inputs)?;
    Ok(files
        .into_par_iter()
        .map(|path| {
            let outcome = analyze_file(&path, cfg);
            (path, outcome)
        })
        .collect())
}

/// CSV with header `name,n,m,bennett,minimal,encoded`, one row per report,
/// and a closing comment with the mean reduction of the coded width
/// relative to the minimal width, each function weighted equally.
pub fn report_csv(reports: &[WidthReport]) -> String {
    let mut out = String::from("name,n,m,bennett,minimal,encoded\n");
    for r in reports {
        out.push_str(&r.csv_row());
        out.push('\n');
    }
    out.push_str("# averaging=equal-weight mean of (minimal-encoded)/minimal over functions\n");
    let _ = writeln!(
        out,
        "# avg_reduction_vs_minimal={:.2}",
        average_reduction(reports) * 100.0
    );
    out
}

/// Mean of `(minimal - encoded) / minimal`, 0 for an empty list.
pub fn average_reduction(reports: &[WidthReport]) -> f64 {
    if reports.is_empty() {
        return 0.0;
    }
    reports.iter().map(WidthReport::reduction_vs_minimal).sum::<f64>() / reports.len() as f64
}

/// Human-readable summary: histogram with codes, then the three widths.
pub fn render_summary(a: &Analysis) -> String {
    let r = &a.report;
    let mut out = String::new();
    let _ = writeln!(out, "function {} (n={}, m={}, {} cubes)", r.name, r.n, r.m, a.function.cubes().len());
    let _ = writeln!(out, "{:>4}  {:<w$}  {:>8}  code", "i", "p_i", "mu(p_i)", w = r.m as usize);
    for (i, (p, mu)) in a.histogram.by_multiplicity().into_iter().enumerate() {
        let entry = a.codebook.get(&p).expect("every pattern has a code");
        let mut code: Vec<String> = entry.codeword.to_string().chars().map(String::from).collect();
        code.extend(std::iter::repeat_n("-".to_string(), entry.garbage_budget as usize));
        let _ = writeln!(out, "{:>4}  {}  {:>8}  {}", i + 1, p, mu, code.join(" "));
    }
    let _ = writeln!(
        out,
        "qubits: bennett {}  minimal {}  encoded {}",
        r.bennett, r.minimal, r.encoded
    );
    out
}
