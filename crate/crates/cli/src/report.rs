//! CSV and JSON renderings of census reports, cubic histograms and predictions.

use serde::Serialize;
use sextic_core::CensusReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

/// Renders a header and rows as CSV with LF line endings.
pub fn to_csv<R>(header: &[String], rows: impl IntoIterator<Item = R>) -> String
where
    R: IntoIterator,
    R::Item: AsRef<[u8]>,
{
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("UTF-8 fields")
}

fn residue_columns(m: u64) -> impl Iterator<Item = String> {
    (0..m).map(|r| format!("r{r}"))
}

fn names(cols: &[&str]) -> Vec<String> {
    cols.iter().map(|c| c.to_string()).collect()
}

fn opt(v: f64) -> Option<f64> {
    v.is_finite().then_some(v)
}

fn csv_f64(v: f64, digits: usize) -> String {
    if v.is_finite() {
        format!("{v:.digits$}")
    } else {
        String::new()
    }
}

#[derive(Serialize)]
struct JsonRow {
    #[serde(rename = "X")]
    x: u128,
    actual: u64,
    pred_strong: Option<f64>,
    pred_stronger: Option<f64>,
    error_strong: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    histogram: Option<Vec<u64>>,
}

#[derive(Serialize)]
struct JsonReport {
    sign: &'static str,
    unramified: Vec<u64>,
    modulus: Option<u64>,
    rows: Vec<JsonRow>,
}

/// Report CSV: `X,actual,pred_strong,pred_stronger,error_strong`, followed by `r0..r{m-1}`
/// histogram columns when a modulus is set.
pub fn census_csv(report: &CensusReport) -> String {
    let mut header = names(&["X", "actual", "pred_strong", "pred_stronger", "error_strong"]);
    header.extend(residue_columns(report.filter.modulus.unwrap_or(0)));
    let rows = report.rows.iter().map(|row| {
        let mut cols = vec![
            row.x.to_string(),
            row.actual.to_string(),
            csv_f64(row.pred_strong, 6),
            csv_f64(row.pred_stronger, 6),
            csv_f64(row.error_strong, 3),
        ];
        cols.extend(row.histogram.iter().flatten().map(|h| h.to_string()));
        cols
    });
    to_csv(&header, rows)
}

pub fn census_json(report: &CensusReport) -> String {
    let rows = report
        .rows
        .iter()
        .map(|r| JsonRow {
            x: r.x,
            actual: r.actual,
            pred_strong: opt(r.pred_strong),
            pred_stronger: opt(r.pred_stronger),
            error_strong: opt(r.error_strong).map(|e| (e * 1000.0).round() / 1000.0),
            histogram: r.histogram.clone(),
        })
        .collect();
    let j = JsonReport {
        sign: report.filter.sign.as_str(),
        unramified: report.filter.unramified.clone(),
        modulus: report.filter.modulus,
        rows,
    };
    serde_json::to_string_pretty(&j).expect("report serializes") + "\n"
}

pub fn render_census(report: &CensusReport, format: Format) -> String {
    match format {
        Format::Csv => census_csv(report),
        Format::Json => census_json(report),
    }
}

/// Counts of cubic discriminants in one residue table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CubicApRow {
    pub bound: u64,
    pub modulus: u64,
    pub include_cyclic: bool,
    pub counts: Vec<u64>,
}

pub fn render_cubic_ap(rows: &[CubicApRow], format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(rows).expect("rows serialize") + "\n",
        Format::Csv => {
            let mut header = names(&["bound", "modulus", "include_cyclic", "total"]);
            header.extend(residue_columns(rows.first().map_or(0, |r| r.modulus)));
            to_csv(
                &header,
                rows.iter().map(|row| {
                    let mut cols = vec![
                        row.bound.to_string(),
                        row.modulus.to_string(),
                        row.include_cyclic.to_string(),
                        row.counts.iter().sum::<u64>().to_string(),
                    ];
                    cols.extend(row.counts.iter().map(|c| c.to_string()));
                    cols
                }),
            )
        }
    }
}

/// One predicted value; `residue` is set for the mod-5 quintuple.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PredictRow {
    #[serde(rename = "X")]
    pub x: u128,
    pub sign: &'static str,
    pub model: &'static str,
    pub residue: Option<u64>,
    pub value: f64,
    pub rounded: i64,
}

pub fn render_predictions(rows: &[PredictRow], format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(rows).expect("rows serialize") + "\n",
        Format::Csv => to_csv(
            &names(&["X", "sign", "model", "residue", "value", "rounded"]),
            rows.iter().map(|r| {
                [
                    r.x.to_string(),
                    r.sign.to_string(),
                    r.model.to_string(),
                    r.residue.map(|m| m.to_string()).unwrap_or_default(),
                    r.value.to_string(),
                    r.rounded.to_string(),
                ]
            }),
        ),
    }
}
