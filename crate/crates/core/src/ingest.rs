//! Expression matrix, label, and PPI edge-list loading plus preprocessing:
//! quality control, log normalization, and highly-variable-gene selection.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use ndarray::Array2;

use crate::error::{Error, Result};

/// Processing stage of an [`ExpressionMatrix`]; transitions only move forward.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Stage {
    Raw,
    QcFiltered,
    Normalized,
    HvgSelected,
}

impl Stage {
    pub fn as_str(&self) -> &'static str {
        match self {
            Stage::Raw => "raw",
            Stage::QcFiltered => "qc_filtered",
            Stage::Normalized => "normalized",
            Stage::HvgSelected => "hvg_selected",
        }
    }

    pub fn from_str(s: &str) -> Result<Stage> {
        match s {
            "raw" => Ok(Stage::Raw),
            "qc_filtered" => Ok(Stage::QcFiltered),
            "normalized" => Ok(Stage::Normalized),
            "hvg_selected" => Ok(Stage::HvgSelected),
            other => Err(Error::domain(format!("unknown stage `{other}`"))),
        }
    }
}

/// Cells × genes expression matrix with row/column identifiers.
#[derive(Debug, Clone)]
pub struct ExpressionMatrix {
    values: Array2<f64>,
    cell_ids: Vec<String>,
    gene_symbols: Vec<String>,
    stage: Stage,
}

impl ExpressionMatrix {
    /// Build a matrix at an explicit stage, validating all invariants.
    pub fn from_parts(
        values: Array2<f64>,
        cell_ids: Vec<String>,
        gene_symbols: Vec<String>,
        stage: Stage,
    ) -> Result<Self> {
        if values.nrows() != cell_ids.len() {
            return Err(Error::domain(format!(
                "{} rows but {} cell IDs",
                values.nrows(),
                cell_ids.len()
            )));
        }
        if values.ncols() != gene_symbols.len() {
            return Err(Error::domain(format!(
                "{} columns but {} gene symbols",
                values.ncols(),
                gene_symbols.len()
            )));
        }
        let mut seen = std::collections::HashSet::new();
        for g in &gene_symbols {
            if !seen.insert(g) {
                return Err(Error::domain(format!("duplicate gene symbol `{g}`")));
            }
        }
        for &v in values.iter() {
            if !v.is_finite() {
                return Err(Error::NonFinite("expression value".into()));
            }
            if v < 0.0 {
                return Err(Error::domain(format!("negative expression value {v}")));
            }
        }
        Ok(ExpressionMatrix {
            values,
            cell_ids,
            gene_symbols,
            stage,
        })
    }

    pub fn values(&self) -> &Array2<f64> {
        &self.values
    }

    pub fn cell_ids(&self) -> &[String] {
        &self.cell_ids
    }

    pub fn gene_symbols(&self) -> &[String] {
        &self.gene_symbols
    }

    pub fn stage(&self) -> Stage {
        self.stage
    }

    pub fn n_cells(&self) -> usize {
        self.values.nrows()
    }

    pub fn n_genes(&self) -> usize {
        self.values.ncols()
    }

    /// Per-cell total expression.
    pub fn cell_totals(&self) -> Vec<f64> {
        self.values
            .rows()
            .into_iter()
            .map(|r| r.sum())
            .collect()
    }

    /// Write as the expression CSV format (`cell_id` header field first,
    /// then gene symbols; one row per cell).
    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut w = BufWriter::new(File::create(path)?);
        write!(w, "cell_id")?;
        for g in &self.gene_symbols {
            write!(w, ",{g}")?;
        }
        writeln!(w)?;
        for (i, id) in self.cell_ids.iter().enumerate() {
            write!(w, "{id}")?;
            for v in self.values.row(i) {
                write!(w, ",{v}")?;
            }
            writeln!(w)?;
        }
        Ok(())
    }

    /// Write as the triplet format (`row col value` plus `.cells`/`.genes`
    /// sidecar files next to `path`).
    pub fn write_triplet(&self, path: &Path) -> Result<()> {
        let mut w = BufWriter::new(File::create(path)?);
        for ((i, j), &v) in self.values.indexed_iter() {
            if v != 0.0 {
                writeln!(w, "{i} {j} {v}")?;
            }
        }
        let mut cells = BufWriter::new(File::create(path.with_extension("cells"))?);
        for id in &self.cell_ids {
            writeln!(cells, "{id}")?;
        }
        let mut genes = BufWriter::new(File::create(path.with_extension("genes"))?);
        for g in &self.gene_symbols {
            writeln!(genes, "{g}")?;
        }
        Ok(())
    }
}

/// Ground-truth or predicted class IDs, 0-based and contiguous.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelVector {
    labels: Vec<usize>,
    n_classes: usize,
}

impl LabelVector {
    /// Validate an already-encoded vector: every class in `[0, c)` for some
    /// `c ≥ 1`, with all classes present.
    pub fn from_raw(labels: Vec<usize>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::domain("empty label vector"));
        }
        let c = labels.iter().max().unwrap() + 1;
        let mut present = vec![false; c];
        for &l in &labels {
            present[l] = true;
        }
        if let Some(missing) = present.iter().position(|&p| !p) {
            return Err(Error::domain(format!(
                "class IDs not contiguous: {missing} unused"
            )));
        }
        Ok(LabelVector {
            labels,
            n_classes: c,
        })
    }

    /// Re-encode arbitrary assignment IDs to contiguous 0-based classes in
    /// order of first appearance (e.g. for argmax cluster IDs that may skip
    /// values).
    pub fn from_assignments(raw: &[usize]) -> Result<Self> {
        let mut map = HashMap::new();
        let labels = raw
            .iter()
            .map(|&x| {
                let next = map.len();
                *map.entry(x).or_insert(next)
            })
            .collect();
        LabelVector::from_raw(labels)
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn n_classes(&self) -> usize {
        self.n_classes
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

/// Undirected PPI graph over gene symbols with confidence-scored edges.
#[derive(Debug, Clone)]
pub struct PpiNetwork {
    nodes: Vec<String>,
    index: HashMap<String, usize>,
    /// Unordered edges as (a, b, weight) with a < b.
    edges: Vec<(usize, usize, f64)>,
    /// Sorted neighbor lists, no self-edges.
    neighbors: Vec<Vec<usize>>,
    score_threshold: u32,
}

impl PpiNetwork {
    /// Build from node symbols and index edges; validates no self-edges, no
    /// duplicate pairs, and weights within `[score_threshold, 1000]`.
    pub fn new(
        nodes: Vec<String>,
        edges: Vec<(usize, usize, f64)>,
        score_threshold: u32,
    ) -> Result<Self> {
        let n = nodes.len();
        let mut index = HashMap::new();
        for (i, s) in nodes.iter().enumerate() {
            if index.insert(s.clone(), i).is_some() {
                return Err(Error::domain(format!("duplicate PPI node `{s}`")));
            }
        }
        let mut neighbors = vec![Vec::new(); n];
        let mut canon = Vec::with_capacity(edges.len());
        let mut seen = std::collections::HashSet::new();
        for (a, b, w) in edges {
            if a >= n || b >= n {
                return Err(Error::domain(format!("edge endpoint {}/{} out of range", a, b)));
            }
            if a == b {
                return Err(Error::domain(format!("self-edge on `{}`", nodes[a])));
            }
            if !(0.0..=1000.0).contains(&w) {
                return Err(Error::domain(format!("edge weight {w} outside [0, 1000]")));
            }
            if w < score_threshold as f64 {
                return Err(Error::domain(format!(
                    "edge weight {w} below threshold {score_threshold}"
                )));
            }
            let (lo, hi) = (a.min(b), a.max(b));
            if !seen.insert((lo, hi)) {
                return Err(Error::domain(format!(
                    "duplicate edge {}–{}",
                    nodes[lo], nodes[hi]
                )));
            }
            neighbors[lo].push(hi);
            neighbors[hi].push(lo);
            canon.push((lo, hi, w));
        }
        for list in &mut neighbors {
            list.sort_unstable();
        }
        Ok(PpiNetwork {
            nodes,
            index,
            edges: canon,
            neighbors,
            score_threshold,
        })
    }

    pub fn n_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn node_index(&self, symbol: &str) -> Option<usize> {
        self.index.get(symbol).copied()
    }

    pub fn edges(&self) -> &[(usize, usize, f64)] {
        &self.edges
    }

    pub fn neighbors(&self, node: usize) -> &[usize] {
        &self.neighbors[node]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.neighbors[a].binary_search(&b).is_ok()
    }

    pub fn degree(&self, node: usize) -> usize {
        self.neighbors[node].len()
    }

    pub fn score_threshold(&self) -> u32 {
        self.score_threshold
    }

    /// Write as the PPI TSV format.
    pub fn write_tsv(&self, path: &Path) -> Result<()> {
        let mut w = BufWriter::new(File::create(path)?);
        writeln!(w, "gene1\tgene2\tcombined_score")?;
        for &(a, b, weight) in &self.edges {
            writeln!(w, "{}\t{}\t{}", self.nodes[a], self.nodes[b], weight)?;
        }
        Ok(())
    }
}

/// On-disk layout of an expression matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpressionFormat {
    /// Header row of gene symbols, first column of cell IDs.
    Csv,
    /// Whitespace-separated `row col value` with `.cells`/`.genes` sidecars.
    MtxTriplet,
}

/// Load an expression matrix at stage `raw`, without any transformation.
pub fn load_expression(path: &Path, format: ExpressionFormat) -> Result<ExpressionMatrix> {
    load_expression_with_stage(path, format, Stage::Raw)
}

/// Load an expression matrix produced by an earlier preprocessing run,
/// trusting the caller's declared stage.
pub fn load_expression_with_stage(
    path: &Path,
    format: ExpressionFormat,
    stage: Stage,
) -> Result<ExpressionMatrix> {
    match format {
        ExpressionFormat::Csv => load_csv(path, stage),
        ExpressionFormat::MtxTriplet => load_triplet(path, stage),
    }
}

fn load_csv(path: &Path, stage: Stage) -> Result<ExpressionMatrix> {
    let name = path.display().to_string();
    let reader = BufReader::new(File::open(path)?);
    let mut lines = reader.lines().enumerate();

    let header = match lines.next() {
        Some((_, line)) => line?,
        None => return Err(Error::parse(&name, 1, "empty file")),
    };
    let mut fields = header.split(',');
    fields.next(); // leading cell-ID column label
    let gene_symbols: Vec<String> = fields.map(|s| s.trim().to_string()).collect();
    if gene_symbols.is_empty() {
        return Err(Error::parse(&name, 1, "header has no gene symbols"));
    }

    let mut cell_ids = Vec::new();
    let mut data: Vec<f64> = Vec::new();
    for (idx, line) in lines {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let lineno = idx + 1;
        let mut it = line.split(',');
        let id = it.next().unwrap().trim().to_string();
        let mut row = Vec::with_capacity(gene_symbols.len());
        for field in it {
            let v: f64 = field.trim().parse().map_err(|_| {
                Error::parse(&name, lineno, format!("non-numeric value `{}`", field.trim()))
            })?;
            row.push(v);
        }
        if row.len() != gene_symbols.len() {
            return Err(Error::parse(
                &name,
                lineno,
                format!("expected {} values, found {}", gene_symbols.len(), row.len()),
            ));
        }
        cell_ids.push(id);
        data.extend(row);
    }
    if cell_ids.is_empty() {
        return Err(Error::domain("no cells"));
    }
    let values = Array2::from_shape_vec((cell_ids.len(), gene_symbols.len()), data)
        .expect("shape consistent by construction");
    ExpressionMatrix::from_parts(values, cell_ids, gene_symbols, stage)
}

fn read_id_lines(path: &Path) -> Result<Vec<String>> {
    let reader = BufReader::new(File::open(path)?);
    let mut ids = Vec::new();
    for line in reader.lines() {
        let line = line?;
        if !line.trim().is_empty() {
            ids.push(line.trim().to_string());
        }
    }
    Ok(ids)
}

fn load_triplet(path: &Path, stage: Stage) -> Result<ExpressionMatrix> {
    let name = path.display().to_string();
    let cell_ids = read_id_lines(&path.with_extension("cells"))?;
    let gene_symbols = read_id_lines(&path.with_extension("genes"))?;
    if cell_ids.is_empty() {
        return Err(Error::domain("no cells"));
    }
    let mut values = Array2::zeros((cell_ids.len(), gene_symbols.len()));
    let reader = BufReader::new(File::open(path)?);
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let lineno = idx + 1;
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.len() != 3 {
            return Err(Error::parse(
                &name,
                lineno,
                format!("expected `row col value`, found {} fields", parts.len()),
            ));
        }
        let row: usize = parts[0]
            .parse()
            .map_err(|_| Error::parse(&name, lineno, "non-integer row index"))?;
        let col: usize = parts[1]
            .parse()
            .map_err(|_| Error::parse(&name, lineno, "non-integer column index"))?;
        let v: f64 = parts[2]
            .parse()
            .map_err(|_| Error::parse(&name, lineno, "non-numeric value"))?;
        if row >= cell_ids.len() || col >= gene_symbols.len() {
            return Err(Error::parse(
                &name,
                lineno,
                format!("index ({row}, {col}) out of range"),
            ));
        }
        // Duplicate coordinates accumulate.
        values[(row, col)] += v;
    }
    ExpressionMatrix::from_parts(values, cell_ids, gene_symbols, stage)
}

/// Linear-interpolation percentile (the "type 7" convention) of sorted data.
fn percentile_sorted(sorted: &[f64], p: f64) -> f64 {
    let n = sorted.len();
    let h = (n - 1) as f64 * p;
    let lo = h.floor() as usize;
    let frac = h - lo as f64;
    if lo + 1 >= n {
        sorted[n - 1]
    } else {
        sorted[lo] + frac * (sorted[lo + 1] - sorted[lo])
    }
}

/// Drop outlier cells by total expression.
///
/// With `Q1`/`Q3` the quartiles of per-cell totals and `QD = (Q3−Q1)/2`,
/// keeps exactly the cells whose total lies in `[Q1 − QD, Q3 + 3·QD]`.
pub fn qc_filter_cells(x: &ExpressionMatrix) -> Result<ExpressionMatrix> {
    if x.stage() != Stage::Raw {
        return Err(Error::domain(format!(
            "qc_filter_cells expects stage raw, got {}",
            x.stage().as_str()
        )));
    }
    let n = x.n_cells();
    if n < 4 {
        return Err(Error::domain(format!(
            "quartile QC needs at least 4 cells, got {n}"
        )));
    }
    let totals = x.cell_totals();
    let mut sorted = totals.clone();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let q1 = percentile_sorted(&sorted, 0.25);
    let q3 = percentile_sorted(&sorted, 0.75);
    let qd = (q3 - q1) / 2.0;
    let (lo, hi) = (q1 - qd, q3 + 3.0 * qd);

    let keep: Vec<usize> = (0..n).filter(|&i| totals[i] >= lo && totals[i] <= hi).collect();
    if keep.is_empty() {
        return Err(Error::domain("quartile QC filtered out every cell"));
    }
    let mut values = Array2::zeros((keep.len(), x.n_genes()));
    let mut cell_ids = Vec::with_capacity(keep.len());
    for (new_i, &old_i) in keep.iter().enumerate() {
        values.row_mut(new_i).assign(&x.values().row(old_i));
        cell_ids.push(x.cell_ids()[old_i].clone());
    }
    ExpressionMatrix::from_parts(values, cell_ids, x.gene_symbols().to_vec(), Stage::QcFiltered)
}

/// Optional per-gene max-scaling to [0, 1]; applied between QC and the log
/// transform when requested. Genes that are all-zero stay all-zero.
pub fn max_scale_genes(x: &ExpressionMatrix) -> Result<ExpressionMatrix> {
    if x.stage() != Stage::QcFiltered {
        return Err(Error::domain(format!(
            "max_scale_genes expects stage qc_filtered, got {}",
            x.stage().as_str()
        )));
    }
    let mut values = x.values().clone();
    for mut col in values.columns_mut() {
        let max = col.iter().fold(0.0f64, |m, &v| m.max(v));
        if max > 0.0 {
            col.mapv_inplace(|v| v / max);
        }
    }
    ExpressionMatrix::from_parts(
        values,
        x.cell_ids().to_vec(),
        x.gene_symbols().to_vec(),
        Stage::QcFiltered,
    )
}

/// Replace every entry `v` with `log2(v + 1)`.
pub fn log_normalize(x: &ExpressionMatrix) -> Result<ExpressionMatrix> {
    if x.stage() != Stage::QcFiltered {
        return Err(Error::domain(format!(
            "log_normalize expects stage qc_filtered, got {}",
            x.stage().as_str()
        )));
    }
    let values = x.values().mapv(|v| (v + 1.0).log2());
    ExpressionMatrix::from_parts(
        values,
        x.cell_ids().to_vec(),
        x.gene_symbols().to_vec(),
        Stage::Normalized,
    )
}

/// Per-gene population variance of the current values.
pub fn gene_variances(x: &ExpressionMatrix) -> Vec<f64> {
    let n = x.n_cells() as f64;
    x.values()
        .columns()
        .into_iter()
        .map(|col| {
            let mean = col.sum() / n;
            col.iter().map(|&v| (v - mean) * (v - mean)).sum::<f64>() / n
        })
        .collect()
}

/// Keep the `n` genes with largest variance (ties broken by lexicographically
/// smaller symbol), preserving original column order.
pub fn select_hvg(x: &ExpressionMatrix, n: usize) -> Result<ExpressionMatrix> {
    if x.stage() != Stage::Normalized {
        return Err(Error::domain(format!(
            "select_hvg expects stage normalized, got {}",
            x.stage().as_str()
        )));
    }
    if n == 0 {
        return Err(Error::domain("HVG count must be positive"));
    }
    let keep: Vec<usize> = if x.n_genes() <= n {
        (0..x.n_genes()).collect()
    } else {
        let vars = gene_variances(x);
        let mut order: Vec<usize> = (0..x.n_genes()).collect();
        order.sort_by(|&a, &b| {
            vars[b]
                .partial_cmp(&vars[a])
                .unwrap()
                .then_with(|| x.gene_symbols()[a].cmp(&x.gene_symbols()[b]))
        });
        let mut chosen: Vec<usize> = order[..n].to_vec();
        chosen.sort_unstable();
        chosen
    };
    let mut values = Array2::zeros((x.n_cells(), keep.len()));
    let mut symbols = Vec::with_capacity(keep.len());
    for (new_j, &old_j) in keep.iter().enumerate() {
        values.column_mut(new_j).assign(&x.values().column(old_j));
        symbols.push(x.gene_symbols()[old_j].clone());
    }
    ExpressionMatrix::from_parts(values, x.cell_ids().to_vec(), symbols, Stage::HvgSelected)
}

/// Load a STRING-style TSV export (`gene1	gene2	combined_score` header).
///
/// Edges with `combined_score ≥ score_threshold` are retained; duplicates of
/// the same unordered pair keep the maximum score; self-edges are dropped.
/// Every symbol that appears in the file becomes a node, so genes whose edges
/// all fall below the threshold remain as isolated nodes.
pub fn load_ppi(path: &Path, score_threshold: u32) -> Result<PpiNetwork> {
    let name = path.display().to_string();
    let reader = BufReader::new(File::open(path)?);
    let mut lines = reader.lines().enumerate();

    let header = match lines.next() {
        Some((_, line)) => line?,
        None => return Err(Error::parse(&name, 1, "empty file")),
    };
    let cols: Vec<&str> = header.split('\t').map(|s| s.trim()).collect();
    let col_of = |want: &str| -> Result<usize> {
        cols.iter()
            .position(|&c| c == want)
            .ok_or_else(|| Error::parse(&name, 1, format!("missing column `{want}`")))
    };
    let c1 = col_of("gene1")?;
    let c2 = col_of("gene2")?;
    let cs = col_of("combined_score")?;

    let mut nodes: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut intern = |sym: &str, nodes: &mut Vec<String>| -> usize {
        if let Some(&i) = index.get(sym) {
            return i;
        }
        let i = nodes.len();
        nodes.push(sym.to_string());
        index.insert(sym.to_string(), i);
        i
    };

    let mut best: HashMap<(usize, usize), f64> = HashMap::new();
    for (idx, line) in lines {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let lineno = idx + 1;
        let fields: Vec<&str> = line.split('\t').map(|s| s.trim()).collect();
        let need = c1.max(c2).max(cs) + 1;
        if fields.len() < need {
            return Err(Error::parse(
                &name,
                lineno,
                format!("expected at least {need} columns, found {}", fields.len()),
            ));
        }
        let a = intern(fields[c1], &mut nodes);
        let b = intern(fields[c2], &mut nodes);
        let score: f64 = fields[cs].parse().map_err(|_| {
            Error::parse(&name, lineno, format!("non-numeric score `{}`", fields[cs]))
        })?;
        if !(0.0..=1000.0).contains(&score) {
            return Err(Error::domain(format!(
                "combined_score {score} outside [0, 1000] at {name}:{lineno}"
            )));
        }
        if a == b {
            continue;
        }
        let key = (a.min(b), a.max(b));
        let entry = best.entry(key).or_insert(score);
        if score > *entry {
            *entry = score;
        }
    }

    let mut edges: Vec<(usize, usize, f64)> = best
        .into_iter()
        .filter(|&(_, w)| w >= score_threshold as f64)
        .map(|((a, b), w)| (a, b, w))
        .collect();
    edges.sort_by(|x, y| (x.0, x.1).cmp(&(y.0, y.1)));
    PpiNetwork::new(nodes, edges, score_threshold)
}

/// Load a two-column `cell_id,label` CSV and align it to `cell_ids`,
/// re-encoding label strings to contiguous 0-based integers in order of
/// first appearance along `cell_ids`.
pub fn load_labels(path: &Path, cell_ids: &[String]) -> Result<LabelVector> {
    let name = path.display().to_string();
    let reader = BufReader::new(File::open(path)?);
    let mut by_id: HashMap<String, String> = HashMap::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let lineno = idx + 1;
        if idx == 0 {
            // Header row.
            let fields: Vec<&str> = line.split(',').map(|s| s.trim()).collect();
            if fields.len() != 2 {
                return Err(Error::parse(&name, lineno, "expected `cell_id,label` header"));
            }
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(|s| s.trim()).collect();
        if fields.len() != 2 {
            return Err(Error::parse(
                &name,
                lineno,
                format!("expected 2 fields, found {}", fields.len()),
            ));
        }
        if by_id.insert(fields[0].to_string(), fields[1].to_string()).is_some() {
            return Err(Error::domain(format!("duplicate label row for `{}`", fields[0])));
        }
    }

    let mut encoding: HashMap<String, usize> = HashMap::new();
    let mut labels = Vec::with_capacity(cell_ids.len());
    for id in cell_ids {
        let raw = by_id
            .remove(id)
            .ok_or_else(|| Error::domain(format!("no label for cell `{id}`")))?;
        let next = encoding.len();
        labels.push(*encoding.entry(raw).or_insert(next));
    }
    if let Some(extra) = by_id.keys().next() {
        return Err(Error::domain(format!(
            "label file has {} extra rows (e.g. `{extra}`)",
            by_id.len()
        )));
    }
    LabelVector::from_raw(labels)
}

/// Write labels in the same two-column CSV format `load_labels` reads.
pub fn write_labels(path: &Path, cell_ids: &[String], labels: &[usize]) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(w, "cell_id,label")?;
    for (id, l) in cell_ids.iter().zip(labels) {
        writeln!(w, "{id},{l}")?;
    }
    Ok(())
}
