//! JSON and CSV rendering. JSON is canonical; coefficients and other big
//! integers are decimal strings.

use matchforge_core::forcing::SpectrumReport;
use matchforge_core::IntPolynomial;
use serde_json::{json, Value};

use crate::args::OutFormat;
use crate::CliError;

/// One result in both output shapes.
#[derive(Debug, Clone)]
pub struct Output {
    pub json: Value,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Output {
    pub fn new(json: Value, header: Vec<&'static str>, rows: Vec<Vec<String>>) -> Self {
        Output { json, header, rows }
    }

    pub fn render(&self, format: OutFormat) -> Result<String, CliError> {
        match format {
            OutFormat::Json => Ok(format!("{}\n", self.json)),
            OutFormat::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                let io = |e: csv::Error| CliError::Io(e.to_string());
                w.write_record(&self.header).map_err(io)?;
                for row in &self.rows {
                    w.write_record(row).map_err(io)?;
                }
                let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
                String::from_utf8(bytes).map_err(|e| CliError::Io(e.to_string()))
            }
        }
    }
}

/// `{"var":"x","terms":[[exponent,"coefficient"],...]}`
pub fn polynomial_json(p: &IntPolynomial) -> Value {
    let terms: Vec<Value> = p.terms().map(|(e, c)| json!([e, c.to_string()])).collect();
    json!({ "var": "x", "terms": terms })
}

pub fn polynomial_rows(p: &IntPolynomial) -> Vec<Vec<String>> {
    p.terms().map(|(e, c)| vec![e.to_string(), c.to_string()]).collect()
}

pub fn polynomial_output(p: &IntPolynomial) -> Output {
    Output::new(polynomial_json(p), vec!["exponent", "coefficient"], polynomial_rows(p))
}

pub fn spectrum_json(s: &SpectrumReport) -> Value {
    let counts: Vec<Value> = s.counts.iter().map(|(e, c)| json!([e, c.to_string()])).collect();
    json!({
        "counts": counts,
        "min": s.min,
        "max": s.max,
        "contiguous": s.contiguous,
        "total": s.total().to_string(),
    })
}

pub fn spectrum_rows(kind: &str, s: &SpectrumReport) -> Vec<Vec<String>> {
    s.counts
        .iter()
        .map(|(e, c)| vec![kind.to_string(), e.to_string(), c.to_string()])
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_formats() {
        let p = IntPolynomial::from_terms([(2, 4), (1, 2)]);
        let out = polynomial_output(&p);
        assert_eq!(out.render(OutFormat::Json).unwrap(), "{\"terms\":[[1,\"2\"],[2,\"4\"]],\"var\":\"x\"}\n");
        assert_eq!(out.render(OutFormat::Csv).unwrap(), "exponent,coefficient\n1,2\n2,4\n");
    }

    #[test]
    fn csv_quotes_commas() {
        let out = Output::new(Value::Null, vec!["a"], vec![vec!["[1, 2]".into()]]);
        assert_eq!(out.render(OutFormat::Csv).unwrap(), "a\n\"[1, 2]\"\n");
    }
}
