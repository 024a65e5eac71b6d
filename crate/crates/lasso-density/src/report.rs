//! Text renderings of curves, partitions and density reports.

use std::fmt::Write as _;

use lasso_density_core::count::DensityRow;
use lasso_density_core::rational::{from_counts, to_decimal};
use lasso_density_core::{ClassPartitionCounts, DensityCurve, Rational};
use num_bigint::BigUint;

/// Significant digits of every decimal rendering.
pub const DECIMAL_DIGITS: usize = 12;

pub const CSV_HEADER: &str = "n,count,total,rate_num,rate_den,rate_decimal";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum OutputFormat {
    #[default]
    Table,
    Csv,
}

pub fn decimal(r: &Rational) -> String {
    to_decimal(r, DECIMAL_DIGITS)
}

/// `num/den (decimal)`.
pub fn exact(r: &Rational) -> String {
    format!("{r} ({})", decimal(r))
}

fn csv_row(out: &mut String, row: &DensityRow) {
    let _ = writeln!(
        out,
        "{},{},{},{},{},{}",
        row.n,
        row.count,
        row.total,
        row.rate.numer(),
        row.rate.denom(),
        decimal(&row.rate)
    );
}

fn table(out: &mut String, header: &[&str], rows: &[Vec<String>]) {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.len());
        }
    }
    let mut line = |cells: &mut dyn Iterator<Item = &str>| {
        let mut s = String::new();
        for (i, (c, w)) in cells.zip(&widths).enumerate() {
            if i > 0 {
                s.push_str("  ");
            }
            let _ = write!(s, "{c:>w$}");
        }
        out.push_str(s.trim_end());
        out.push('\n');
    };
    line(&mut header.iter().copied());
    for r in rows {
        line(&mut r.iter().map(String::as_str));
    }
}

pub fn render_rows(rows: &[DensityRow], format: OutputFormat) -> String {
    let mut out = String::new();
    match format {
        OutputFormat::Csv => {
            out.push_str(CSV_HEADER);
            out.push('\n');
            for row in rows {
                csv_row(&mut out, row);
            }
        }
        OutputFormat::Table => {
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.n.to_string(),
                        r.count.to_string(),
                        r.total.to_string(),
                        r.rate.to_string(),
                        decimal(&r.rate),
                    ]
                })
                .collect();
            table(&mut out, &["n", "count", "total", "rate", "rate_decimal"], &body);
        }
    }
    out
}

pub fn render_curve(curve: &DensityCurve, format: OutputFormat) -> String {
    render_rows(curve.rows(), format)
}

pub fn render_partition(c: &ClassPartitionCounts, format: OutputFormat) -> String {
    let classes: [(&str, &BigUint); 4] = [
        ("base-non-model", &c.base_non_models),
        ("base-model", &c.base_models),
        ("loop-non-model", &c.loop_non_models),
        ("loop-model", &c.loop_models),
    ];
    let mut out = String::new();
    match format {
        OutputFormat::Csv => {
            out.push_str("n,class,count,total,rate_num,rate_den,rate_decimal\n");
            for (name, count) in classes {
                let r = from_counts(count, &c.total);
                let _ = writeln!(
                    out,
                    "{},{name},{count},{},{},{},{}",
                    c.n,
                    c.total,
                    r.numer(),
                    r.denom(),
                    decimal(&r)
                );
            }
        }
        OutputFormat::Table => {
            let body: Vec<Vec<String>> = classes
                .iter()
                .map(|(name, count)| {
                    let r = from_counts(count, &c.total);
                    vec![name.to_string(), count.to_string(), r.to_string(), decimal(&r)]
                })
                .collect();
            let _ = writeln!(out, "n = {}, total = {}", c.n, c.total);
            table(&mut out, &["class", "count", "rate", "rate_decimal"], &body);
        }
    }
    out
}
