use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use super::RunResult;
use crate::error::{Error, Result};

pub const CSV_HEADER: [&str; 9] = [
    "method",
    "problem",
    "n_steps",
    "stages",
    "work",
    "log10_work",
    "error",
    "accuracy",
    "wall_seconds",
];

/// 17 significant digits, enough to round-trip any `f64`.
fn float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        format!("{x}")
    }
}

fn io_error(path: &Path) -> impl Fn(std::io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn csv_error(path: &Path) -> impl Fn(csv::Error) -> Error + '_ {
    move |e| Error::Io {
        path: path.to_path_buf(),
        source: e.into(),
    }
}

/// Writes one header line and one line per result. Failed rows have a tenth
/// `note` field.
pub fn write_csv_to<W: Write>(results: &[RunResult], out: W) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .flexible(true)
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in results {
        let mut row = vec![
            r.method.clone(),
            r.problem.clone(),
            r.n_steps.to_string(),
            r.stages.to_string(),
            r.work.to_string(),
            float(r.log10_work()),
            float(r.error),
            float(r.accuracy),
            float(r.wall_seconds),
        ];
        if let Some(note) = &r.note {
            row.push(note.clone());
        }
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_csv(results: &[RunResult], path: &Path) -> Result<()> {
    let file = File::create(path).map_err(io_error(path))?;
    write_csv_to(results, BufWriter::new(file)).map_err(csv_error(path))
}

pub fn read_csv(path: &Path) -> Result<Vec<RunResult>> {
    let bad = |line: usize, what: &str| Error::Io {
        path: path.to_path_buf(),
        source: std::io::Error::new(
            std::io::ErrorKind::InvalidData,
            format!("record {line}: {what}"),
        ),
    };
    let mut reader = csv::ReaderBuilder::new()
        .flexible(true)
        .from_path(path)
        .map_err(csv_error(path))?;
    let header = reader.headers().map_err(csv_error(path))?.clone();
    if header.iter().ne(CSV_HEADER) {
        return Err(bad(0, "unexpected header"));
    }
    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let rec = record.map_err(csv_error(path))?;
        let field = |k: usize| rec.get(k).ok_or_else(|| bad(i + 1, "missing field"));
        let num = |k: usize| -> Result<f64> {
            field(k)?
                .parse::<f64>()
                .map_err(|_| bad(i + 1, "bad number"))
        };
        let int = |k: usize| -> Result<u64> {
            field(k)?
                .parse::<u64>()
                .map_err(|_| bad(i + 1, "bad integer"))
        };
        rows.push(RunResult {
            method: field(0)?.to_string(),
            problem: field(1)?.to_string(),
            n_steps: int(2)? as usize,
            stages: int(3)? as u32,
            work: int(4)?,
            error: num(6)?,
            accuracy: num(7)?,
            wall_seconds: num(8)?,
            note: rec.get(9).map(String::from),
        });
    }
    Ok(rows)
}
