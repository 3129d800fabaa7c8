//! CSV emission and parsing. All files carry `#` comment headers with the
//! resolved configuration, then a column header row, then data rows.

use std::fmt::Write as _;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use cultevo::{FitnessTableRow, MetricsRecord64, SweepCell64};

pub const SERIES_COLUMNS: &str =
    "iteration,mean_fitness,max_fitness,diversity,invention_adoptions,imitation_adoptions";
pub const SWEEP_COLUMNS: &str =
    "invent_rate,creator_fraction,n_runs,mean_fitness_avg,mean_fitness_stderr,diversity_avg,diversity_stderr";
pub const FITNESS_TABLE_COLUMNS: &str = "encoding,movement,symmetry,fitness";

fn comment_block(comments: &[String]) -> String {
    let mut out = String::new();
    for line in comments {
        writeln!(out, "# {line}").expect("string write");
    }
    out
}

pub fn series_csv(comments: &[String], records: &[MetricsRecord64]) -> String {
    let mut out = comment_block(comments);
    out.push_str(SERIES_COLUMNS);
    out.push('\n');
    for r in records {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            r.iteration,
            r.mean_fitness,
            r.max_fitness,
            r.diversity,
            r.invention_adoptions,
            r.imitation_adoptions
        )
        .expect("string write");
    }
    out
}

pub fn sweep_csv(comments: &[String], rows: &[SweepCell64]) -> String {
    let mut out = comment_block(comments);
    out.push_str(SWEEP_COLUMNS);
    out.push('\n');
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.invent_rate,
            r.creator_fraction,
            r.n_runs,
            r.mean_fitness_avg,
            r.mean_fitness_stderr,
            r.diversity_avg,
            r.diversity_stderr
        )
        .expect("string write");
    }
    out
}

pub fn fitness_table_csv(comments: &[String], rows: &[FitnessTableRow<f64>]) -> String {
    let mut out = comment_block(comments);
    out.push_str(FITNESS_TABLE_COLUMNS);
    out.push('\n');
    for r in rows {
        writeln!(out, "{},{},{},{}", r.encoding, r.movement, r.symmetry, r.fitness)
            .expect("string write");
    }
    out
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

/// A parsed CSV: retained comment lines (without the `# ` prefix), column
/// names, and numeric rows.
#[derive(Debug, Clone)]
pub struct DataTable {
    pub comments: Vec<String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl DataTable {
    pub fn column(&self, name: &str) -> Result<usize> {
        self.columns
            .iter()
            .position(|c| c == name)
            .ok_or_else(|| anyhow!("input has no `{name}` column"))
    }
}

pub fn parse_table(text: &str) -> Result<DataTable> {
    let mut comments = Vec::new();
    let mut columns: Option<Vec<String>> = None;
    let mut rows = Vec::new();
    for (index, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if columns.is_none() {
                comments.push(comment.trim().to_string());
            }
            continue;
        }
        match &columns {
            None => columns = Some(line.split(',').map(|c| c.trim().to_string()).collect()),
            Some(header) => {
                let values: Vec<f64> = line
                    .split(',')
                    .map(|field| {
                        field.trim().parse::<f64>().map_err(|e| {
                            anyhow!("line {}: non-numeric field `{field}` ({e})", index + 1)
                        })
                    })
                    .collect::<Result<_>>()?;
                if values.len() != header.len() {
                    bail!(
                        "line {}: expected {} fields, found {}",
                        index + 1,
                        header.len(),
                        values.len()
                    );
                }
                rows.push(values);
            }
        }
    }
    let columns = columns.ok_or_else(|| anyhow!("input has no header row"))?;
    if rows.is_empty() {
        bail!("input has no data rows");
    }
    Ok(DataTable {
        comments,
        columns,
        rows,
    })
}

pub fn read_table(path: &Path) -> Result<DataTable> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    parse_table(&text).with_context(|| format!("parsing {}", path.display()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_csv_has_comments_header_and_rows() {
        let records = vec![
            MetricsRecord64 {
                iteration: 0,
                mean_fitness: 0.0,
                max_fitness: 0.0,
                diversity: 1,
                invention_adoptions: 0,
                imitation_adoptions: 0,
            },
            MetricsRecord64 {
                iteration: 1,
                mean_fitness: 0.55,
                max_fitness: 7.0,
                diversity: 4,
                invention_adoptions: 3,
                imitation_adoptions: 2,
            },
        ];
        let text = series_csv(&["cultevo test run".into(), "seed=1".into()], &records);
        assert!(text.starts_with("# cultevo test run\n# seed=1\n"));
        let table = parse_table(&text).unwrap();
        assert_eq!(table.comments, vec!["cultevo test run", "seed=1"]);
        assert_eq!(table.columns.len(), 6);
        assert_eq!(table.rows.len(), 2);
        assert_eq!(table.rows[1][table.column("mean_fitness").unwrap()], 0.55);
    }

    #[test]
    fn parse_rejects_ragged_and_empty_input() {
        assert!(parse_table("a,b\n1,2,3\n").is_err());
        assert!(parse_table("a,b\n").is_err());
        assert!(parse_table("# only comments\n").is_err());
        assert!(parse_table("a,b\n1,x\n").is_err());
    }
}
