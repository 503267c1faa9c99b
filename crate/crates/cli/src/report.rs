//! The h-scaling CSV report.
//!
//! One row per input graph: name, n, h, ln n, ln h, and ln h / ln n. The
//! logarithm columns are printed to four decimal places; ln h is left
//! empty at h = 0, and the ratio is left empty whenever h <= 1 or n <= 1,
//! where the scaling exponent is undefined. Four summary rows (min,
//! median, mean, max) close the report, each cell computed over the rows
//! where that column is defined.

#[derive(Debug, Clone, PartialEq)]
pub struct ScalingRow {
    pub name: String,
    pub n: u64,
    pub h: u64,
}

impl ScalingRow {
    pub fn log_n(&self) -> Option<f64> {
        (self.n >= 1).then(|| (self.n as f64).ln())
    }

    pub fn log_h(&self) -> Option<f64> {
        (self.h >= 1).then(|| (self.h as f64).ln())
    }

    pub fn ratio(&self) -> Option<f64> {
        if self.h <= 1 || self.n <= 1 {
            return None;
        }
        Some((self.h as f64).ln() / (self.n as f64).ln())
    }

    pub fn csv(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.name,
            self.n,
            self.h,
            fmt_opt(self.log_n()),
            fmt_opt(self.log_h()),
            fmt_opt(self.ratio()),
        )
    }
}

fn fmt_opt(value: Option<f64>) -> String {
    value.map_or_else(String::new, |v| format!("{v:.4}"))
}

pub const CSV_HEADER: &str = "name,n,h,log_n,log_h,log_h_over_log_n";

fn column_summary(values: &[f64], pick: fn(&[f64]) -> f64) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    Some(pick(values))
}

fn median(sorted: &[f64]) -> f64 {
    let mid = sorted.len() / 2;
    if sorted.len() % 2 == 1 {
        sorted[mid]
    } else {
        (sorted[mid - 1] + sorted[mid]) / 2.0
    }
}

fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// Render the full report: header, per-file rows in the given order, and
/// the four summary rows.
pub fn render(rows: &[ScalingRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&row.csv());
        out.push('\n');
    }

    let columns: [Vec<f64>; 5] = [
        rows.iter().map(|r| r.n as f64).collect(),
        rows.iter().map(|r| r.h as f64).collect(),
        rows.iter().filter_map(ScalingRow::log_n).collect(),
        rows.iter().filter_map(ScalingRow::log_h).collect(),
        rows.iter().filter_map(ScalingRow::ratio).collect(),
    ];
    let sorted: Vec<Vec<f64>> = columns
        .iter()
        .map(|c| {
            let mut c = c.clone();
            c.sort_by(|a, b| a.partial_cmp(b).expect("finite column values"));
            c
        })
        .collect();

    let stats: [(&str, fn(&[f64]) -> f64); 4] = [
        ("min", |c| c[0]),
        ("median", median),
        ("mean", mean),
        ("max", |c| c[c.len() - 1]),
    ];
    for (label, pick) in stats {
        let cells: Vec<String> = sorted
            .iter()
            .map(|column| fmt_opt(column_summary(column, pick)))
            .collect();
        out.push_str(&format!("{label},{}\n", cells.join(",")));
    }
    out
}
