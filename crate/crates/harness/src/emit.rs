//! CSV, JSON and SVG output of sweep records.

use crate::error::{HarnessError, Result};
use crate::sweep::ExperimentRecord;

pub const CSV_HEADER: &str = "class,params,n,vc,lvc,eps,m,trials,accept_rate,ci_low,ci_high,seed";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

impl Format {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "svg" => Ok(Format::Svg),
            other => Err(HarnessError::Usage(format!("unknown format {other:?}; use csv, json or svg"))),
        }
    }
}

pub fn render(records: &[ExperimentRecord], format: Format) -> Result<String> {
    match format {
        Format::Csv => to_csv(records),
        Format::Json => Ok(serde_json::to_string_pretty(records)? + "\n"),
        Format::Svg => to_svg(records),
    }
}

pub fn to_csv(records: &[ExperimentRecord]) -> Result<String> {
    let mut out = format!("{CSV_HEADER}\n");
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    for r in records {
        w.serialize(r)?;
    }
    let body = w.into_inner().map_err(|e| HarnessError::Config(format!("csv flush: {e}")))?;
    out.push_str(&String::from_utf8(body).expect("csv writes utf-8"));
    Ok(out)
}

pub fn from_csv(text: &str) -> Result<Vec<ExperimentRecord>> {
    let mut r = csv::ReaderBuilder::new().has_headers(true).from_reader(text.as_bytes());
    let header: Vec<String> = r.headers()?.iter().map(String::from).collect();
    if header.join(",") != CSV_HEADER {
        return Err(HarnessError::Config(format!("unexpected csv header {:?}", header.join(","))));
    }
    Ok(r.deserialize().collect::<std::result::Result<Vec<_>, _>>()?)
}

pub fn from_json(text: &str) -> Result<Vec<ExperimentRecord>> {
    Ok(serde_json::from_str(text)?)
}

/// Reads records from CSV or JSON, guessing by the first character.
pub fn parse_records(text: &str) -> Result<Vec<ExperimentRecord>> {
    if text.trim_start().starts_with('[') {
        from_json(text)
    } else {
        from_csv(text)
    }
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 50.0;
const COLOURS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

/// Acceptance rate against `m`, one polyline per `(class, params)` series,
/// with the Wilson interval as vertical bars.
pub fn to_svg(records: &[ExperimentRecord]) -> Result<String> {
    if records.is_empty() {
        return Err(HarnessError::Usage("an svg chart needs at least one record".into()));
    }
    let mut series: Vec<(String, Vec<&ExperimentRecord>)> = Vec::new();
    for r in records {
        let key = format!("{} {}", r.class, r.params);
        match series.iter_mut().find(|(k, _)| *k == key) {
            Some((_, v)) => v.push(r),
            None => series.push((key, vec![r])),
        }
    }
    let m_min = records.iter().map(|r| r.m).min().unwrap_or(0) as f64;
    let m_max = records.iter().map(|r| r.m).max().unwrap_or(1) as f64;
    let span = if m_max > m_min { m_max - m_min } else { 1.0 };
    let x = |m: usize| MARGIN + (m as f64 - m_min) / span * (WIDTH - 2.0 * MARGIN);
    let y = |rate: f64| HEIGHT - MARGIN - rate * (HEIGHT - 2.0 * MARGIN);

    let mut s = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" font-family=\"sans-serif\" font-size=\"11\">\n"
    );
    s.push_str(&format!(
        "<line x1=\"{MARGIN}\" y1=\"{b}\" x2=\"{r}\" y2=\"{b}\" stroke=\"black\"/>\n<line x1=\"{MARGIN}\" y1=\"{MARGIN}\" x2=\"{MARGIN}\" y2=\"{b}\" stroke=\"black\"/>\n",
        b = HEIGHT - MARGIN,
        r = WIDTH - MARGIN
    ));
    for i in 0..=4 {
        let rate = i as f64 / 4.0;
        s.push_str(&format!(
            "<text x=\"{}\" y=\"{:.1}\" text-anchor=\"end\">{rate:.2}</text>\n",
            MARGIN - 6.0,
            y(rate) + 4.0
        ));
    }
    let mut ms: Vec<usize> = records.iter().map(|r| r.m).collect();
    ms.sort_unstable();
    ms.dedup();
    for &m in &ms {
        s.push_str(&format!(
            "<text x=\"{:.1}\" y=\"{}\" text-anchor=\"middle\">{m}</text>\n",
            x(m),
            HEIGHT - MARGIN + 16.0
        ));
    }
    s.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">sample size m</text>\n<text x=\"14\" y=\"{}\" transform=\"rotate(-90 14 {})\" text-anchor=\"middle\">acceptance rate</text>\n",
        WIDTH / 2.0,
        HEIGHT - 12.0,
        HEIGHT / 2.0,
        HEIGHT / 2.0
    ));
    for (i, (key, rows)) in series.iter().enumerate() {
        let colour = COLOURS[i % COLOURS.len()];
        let mut rows = rows.clone();
        rows.sort_by_key(|r| r.m);
        let pts: Vec<String> = rows
            .iter()
            .map(|r| format!("{:.1},{:.1}", x(r.m), y(r.accept_rate)))
            .collect();
        s.push_str(&format!(
            "<polyline fill=\"none\" stroke=\"{colour}\" stroke-width=\"1.5\" points=\"{}\"/>\n",
            pts.join(" ")
        ));
        for r in &rows {
            s.push_str(&format!(
                "<line x1=\"{0:.1}\" y1=\"{1:.1}\" x2=\"{0:.1}\" y2=\"{2:.1}\" stroke=\"{colour}\"/>\n",
                x(r.m),
                y(r.ci_low),
                y(r.ci_high)
            ));
        }
        s.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" fill=\"{colour}\">{}</text>\n",
            MARGIN + 8.0,
            MARGIN + 14.0 * i as f64,
            xml_escape(key)
        ));
    }
    s.push_str("</svg>\n");
    Ok(s)
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record() -> ExperimentRecord {
        ExperimentRecord {
            class: "intervals".into(),
            params: "k=2|ssd:domain=line:20|side=no".into(),
            n: 20,
            vc: Some(4),
            lvc: None,
            eps: 0.05,
            m: 40,
            trials: 100,
            accept_rate: 0.25,
            ci_low: 0.1754,
            ci_high: 0.3430,
            seed: 7,
        }
    }

    #[test]
    fn empty_csv_is_header_only() {
        assert_eq!(to_csv(&[]).unwrap(), format!("{CSV_HEADER}\n"));
        assert!(to_svg(&[]).is_err());
    }

    #[test]
    fn one_record_round_trips() {
        let csv = to_csv(&[record()]).unwrap();
        assert_eq!(csv.lines().count(), 2);
        assert_eq!(from_csv(&csv).unwrap(), vec![record()]);
        let json = render(&[record()], Format::Json).unwrap();
        assert_eq!(to_csv(&from_json(&json).unwrap()).unwrap(), csv);
        assert!(to_svg(&[record()]).unwrap().contains("<polyline"));
    }
}
