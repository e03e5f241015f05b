//! File interchange formats: the feature CSV, ranked-list TSV, curve CSV,
//! and report text. All writers are byte-deterministic.

use crate::corpus::Label;
use crate::experiment::CurvePoint;
use crate::model::ClassificationReport;
use crate::selection::{FeatureMatrix, RankedFeatureList};
use std::fmt::Write as _;
use std::path::Path;

#[derive(Debug, thiserror::Error)]
pub enum InterchangeError {
    #[error("reading {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}:{line}: {msg}")]
    Malformed {
        path: String,
        line: usize,
        msg: String,
    },
}

/// Fixed decimal formatting with ten significant digits; trailing zeros
/// trimmed. The formatting is what makes repeated extractions
/// byte-identical.
pub fn fmt_sig(v: f64) -> String {
    const SIG: i32 = 10;
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return if v.is_nan() {
            "nan".to_string()
        } else if v > 0.0 {
            "inf".to_string()
        } else {
            "-inf".to_string()
        };
    }
    let exp = v.abs().log10().floor() as i32;
    let decimals = (SIG - 1 - exp).max(0) as usize;
    let mut s = format!("{v:.decimals$}");
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    s
}

/// Serialize a feature matrix as CSV: header `sample_id,label,<ids...>`,
/// missing values as empty cells.
pub fn feature_csv(matrix: &FeatureMatrix) -> String {
    let mut out = String::from("sample_id,label");
    for id in &matrix.feature_ids {
        out.push(',');
        out.push_str(id);
    }
    out.push('\n');
    for (i, row) in matrix.rows.iter().enumerate() {
        out.push_str(&matrix.sample_ids[i]);
        out.push(',');
        out.push_str(matrix.labels[i].as_str());
        for v in row {
            out.push(',');
            if let Some(v) = v {
                out.push_str(&fmt_sig(*v));
            }
        }
        out.push('\n');
    }
    out
}

/// Parse a feature CSV produced by [`feature_csv`].
pub fn parse_feature_csv(path: &Path, text: &str) -> Result<FeatureMatrix, InterchangeError> {
    let bad = |line: usize, msg: &str| InterchangeError::Malformed {
        path: path.display().to_string(),
        line,
        msg: msg.to_string(),
    };
    let mut lines = text.lines().enumerate();
    let Some((_, header)) = lines.next() else {
        return Err(bad(1, "empty file"));
    };
    let cols: Vec<&str> = header.split(',').collect();
    if cols.len() < 3 || cols[0] != "sample_id" || cols[1] != "label" {
        return Err(bad(1, "header must start with sample_id,label"));
    }
    let feature_ids: Vec<String> = cols[2..].iter().map(|s| s.to_string()).collect();
    let mut sample_ids = Vec::new();
    let mut labels = Vec::new();
    let mut rows = Vec::new();
    for (lineno, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let cells: Vec<&str> = line.split(',').collect();
        if cells.len() != cols.len() {
            return Err(bad(lineno + 1, "wrong cell count"));
        }
        let Some(label) = Label::parse(cells[1]) else {
            return Err(bad(lineno + 1, "unknown label"));
        };
        let mut row = Vec::with_capacity(feature_ids.len());
        for cell in &cells[2..] {
            if cell.is_empty() {
                row.push(None);
            } else {
                let v: f64 = cell
                    .parse()
                    .map_err(|_| bad(lineno + 1, "bad numeric cell"))?;
                row.push(Some(v));
            }
        }
        sample_ids.push(cells[0].to_string());
        labels.push(label);
        rows.push(row);
    }
    Ok(FeatureMatrix {
        feature_ids,
        sample_ids,
        labels,
        rows,
    })
}

/// `method<TAB>rank<TAB>feature_id<TAB>score` per line.
pub fn ranked_list_tsv(list: &RankedFeatureList) -> String {
    let mut out = String::new();
    for (i, (id, score)) in list.entries.iter().enumerate() {
        let _ = writeln!(out, "{}\t{}\t{id}\t{}", list.method.as_str(), i + 1, fmt_sig(*score));
    }
    out
}

/// Curve CSV with a trailing summary comment line.
pub fn curve_csv(points: &[CurvePoint], best: &CurvePoint) -> String {
    let mut out = String::from("x,f1,accuracy\n");
    for p in points {
        let _ = writeln!(out, "{},{},{}", p.x, fmt_sig(p.f1), fmt_sig(p.accuracy));
    }
    let _ = writeln!(
        out,
        "# best x={} f1={} accuracy={}",
        best.x,
        fmt_sig(best.f1),
        fmt_sig(best.accuracy)
    );
    out
}

/// Canonical plain-text rendering of a classification report.
pub fn report_text(r: &ClassificationReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "tp={} fp={} fn={} tn={}", r.tp, r.fp, r.fn_count, r.tn);
    let _ = writeln!(out, "accuracy={}", fmt_sig(r.accuracy));
    let _ = writeln!(out, "precision={}", fmt_sig(r.precision));
    let _ = writeln!(out, "recall={}", fmt_sig(r.recall));
    let _ = writeln!(out, "f1={}", fmt_sig(r.f1));
    if !r.flags.is_empty() {
        let _ = writeln!(out, "flags={}", r.flags.join(","));
    }
    out
}
