use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use clap::ValueEnum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Text,
}

/// Shortest round-trip form; identical inputs give identical bytes.
pub fn num(v: f64) -> String {
    debug_assert!(v.is_finite(), "non-finite value reached the output layer");
    if v != 0.0 && !(1e-4..1e16).contains(&v.abs()) {
        format!("{v:e}")
    } else {
        format!("{v}")
    }
}

pub fn opt(v: Option<f64>) -> String {
    v.map(num).unwrap_or_default()
}

/// Flat `key=value` record.
#[derive(Debug, Default)]
pub struct Summary(Vec<(&'static str, String)>);

impl Summary {
    pub fn push(&mut self, key: &'static str, value: impl Into<String>) -> &mut Self {
        self.0.push((key, value.into()));
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.0.iter().map(|(k, v)| format!("{k}={v}\n")).collect(),
            Format::Csv => {
                let keys: Vec<&str> = self.0.iter().map(|(k, _)| *k).collect();
                let vals: Vec<&str> = self.0.iter().map(|(_, v)| v.as_str()).collect();
                format!("{}\n{}\n", keys.join(","), vals.join(","))
            }
        }
    }
}

/// Rows with a fixed column order and a `#` header carrying the run config.
pub struct Table {
    pub config: Vec<String>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn render(&self, format: Format) -> String {
        let mut s = String::new();
        for line in &self.config {
            s.push_str("# ");
            s.push_str(line);
            s.push('\n');
        }
        match format {
            Format::Csv => {
                s.push_str(&self.columns.join(","));
                s.push('\n');
                for row in &self.rows {
                    s.push_str(&row.join(","));
                    s.push('\n');
                }
            }
            Format::Text => {
                for row in &self.rows {
                    let cells: Vec<String> = self
                        .columns
                        .iter()
                        .zip(row)
                        .map(|(k, v)| format!("{k}={v}"))
                        .collect();
                    s.push_str(&cells.join(" "));
                    s.push('\n');
                }
            }
        }
        s
    }
}

pub fn emit(text: &str, out: Option<&Path>) -> io::Result<()> {
    match out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            w.write_all(text.as_bytes())?;
            w.flush()
        }
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_formats() {
        let mut s = Summary::default();
        s.push("mass", num(6.0)).push("energy", num(-3.0));
        assert_eq!(s.render(Format::Text), "mass=6\nenergy=-3\n");
        assert_eq!(s.render(Format::Csv), "mass,energy\n6,-3\n");
    }

    #[test]
    fn tiny_and_huge_values_use_exponents() {
        assert_eq!(num(8.881784197001252e-16), "8.881784197001252e-16");
        assert_eq!(num(-2.5e20), "-2.5e20");
        assert_eq!(num(0.0), "0");
        assert_eq!(num(0.25), "0.25");
    }

    #[test]
    fn table_has_header_then_rows() {
        let t = Table {
            config: vec!["cmd=x".into()],
            columns: vec!["a", "b"],
            rows: vec![vec!["1".into(), "2".into()]],
        };
        assert_eq!(t.render(Format::Csv), "# cmd=x\na,b\n1,2\n");
        assert_eq!(t.render(Format::Text), "# cmd=x\na=1 b=2\n");
    }
}
