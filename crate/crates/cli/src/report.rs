use std::fmt::Display;
use std::io::{self, Write};
use std::time::Duration;

use serde::Serialize;

/// One line of output. In JSON mode every record is a self-contained object
/// tagged by `record`.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "record", rename_all = "snake_case")]
pub enum Record {
    Function {
        label: String,
        images: Vec<u8>,
    },
    Count {
        name: String,
        value: u64,
    },
    Note {
        name: String,
        value: String,
    },
    /// Sizes of the successive prefix levels of a census, `A_0` first.
    Levels {
        name: String,
        sizes: Vec<u64>,
    },
    /// N-genus against number of functions.
    Histogram {
        name: String,
        rows: Vec<(usize, u64)>,
    },
    Verdict {
        check: String,
        expected: String,
        actual: String,
        pass: bool,
    },
    Timing {
        name: String,
        seconds: f64,
    },
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    records: Vec<Record>,
}

impl Report {
    pub fn new() -> Report {
        Report::default()
    }

    pub fn push(&mut self, record: Record) {
        self.records.push(record);
    }

    pub fn count(&mut self, name: &str, value: impl TryInto<u64>) {
        let value = value.try_into().unwrap_or(u64::MAX);
        self.push(Record::Count {
            name: name.into(),
            value,
        });
    }

    pub fn note(&mut self, name: &str, value: impl Display) {
        self.push(Record::Note {
            name: name.into(),
            value: value.to_string(),
        });
    }

    pub fn function(&mut self, label: &str, images: &[u8]) {
        self.push(Record::Function {
            label: label.into(),
            images: images.to_vec(),
        });
    }

    pub fn timing(&mut self, name: &str, elapsed: Duration) {
        self.push(Record::Timing {
            name: name.into(),
            seconds: elapsed.as_secs_f64(),
        });
    }

    /// Records a verdict and returns whether it passed.
    pub fn verdict(&mut self, check: &str, expected: impl Display, actual: impl Display) -> bool {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        let pass = expected == actual;
        self.push(Record::Verdict {
            check: check.into(),
            expected,
            actual,
            pass,
        });
        pass
    }

    pub fn failures(&self) -> usize {
        self.records
            .iter()
            .filter(|r| matches!(r, Record::Verdict { pass: false, .. }))
            .count()
    }

    pub fn write_json(&self, out: &mut impl Write) -> io::Result<()> {
        for record in &self.records {
            serde_json::to_writer(&mut *out, record)?;
            out.write_all(b"\n")?;
        }
        Ok(())
    }

    pub fn write_table(&self, out: &mut impl Write) -> io::Result<()> {
        for record in &self.records {
            match record {
                Record::Function { label, images } => {
                    let row: Vec<String> = images.iter().map(u8::to_string).collect();
                    writeln!(out, "{label} = [{}]", row.join(" "))?;
                }
                Record::Count { name, value } => writeln!(out, "{name}: {value}")?,
                Record::Note { name, value } => writeln!(out, "{name}: {value}")?,
                Record::Levels { name, sizes } => write_levels(out, name, sizes)?,
                Record::Histogram { name, rows } => write_histogram(out, name, rows)?,
                Record::Verdict {
                    check,
                    expected,
                    actual,
                    pass,
                } => {
                    let status = if *pass { "PASS" } else { "FAIL" };
                    writeln!(out, "{status} {check}: expected {expected}, got {actual}")?;
                }
                Record::Timing { name, seconds } => writeln!(out, "{name}: {seconds:.2}s")?,
            }
        }
        Ok(())
    }
}

fn rule(out: &mut impl Write, widths: &[usize]) -> io::Result<()> {
    let cells: Vec<String> = widths.iter().map(|w| "-".repeat(w + 2)).collect();
    writeln!(out, "+{}+", cells.join("+"))
}

fn row(out: &mut impl Write, widths: &[usize], cells: &[String]) -> io::Result<()> {
    let cells: Vec<String> = cells
        .iter()
        .zip(widths)
        .map(|(c, w)| format!(" {c:>w$} "))
        .collect();
    writeln!(out, "|{}|", cells.join("|"))
}

fn table(out: &mut impl Write, header: &[&str], rows: &[Vec<String>]) -> io::Result<()> {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.len());
        }
    }
    rule(out, &widths)?;
    row(
        out,
        &widths,
        &header.iter().map(|h| h.to_string()).collect::<Vec<_>>(),
    )?;
    rule(out, &widths)?;
    for r in rows {
        row(out, &widths, r)?;
    }
    rule(out, &widths)
}

/// Two column pairs, the first half of the levels on the left.
fn write_levels(out: &mut impl Write, name: &str, sizes: &[u64]) -> io::Result<()> {
    writeln!(out, "{name}")?;
    let half = sizes.len().div_ceil(2);
    let rows: Vec<Vec<String>> = (0..half)
        .map(|i| {
            let mut r = vec![i.to_string(), sizes[i].to_string()];
            match sizes.get(i + half) {
                Some(s) => r.extend([(i + half).to_string(), s.to_string()]),
                None => r.extend([String::new(), String::new()]),
            }
            r
        })
        .collect();
    table(out, &["n", "Size of A_n", "n", "Size of A_n"], &rows)
}

fn write_histogram(out: &mut impl Write, name: &str, rows: &[(usize, u64)]) -> io::Result<()> {
    writeln!(out, "{name}")?;
    let rows: Vec<Vec<String>> = rows
        .iter()
        .map(|(g, c)| vec![g.to_string(), c.to_string()])
        .collect();
    table(out, &["N-genus of f", "Number of f"], &rows)
}
