use std::time::{SystemTime, UNIX_EPOCH};

use serde_json::{json, Map, Value};

use qbell_core::certified::{format_decimal, format_error_bound, CertifiedValue};
use qbell_core::report::Report;
use qbell_core::{Poly, QPoly, Rational};

use crate::args::Format;
use crate::CliError;

pub const SCHEMA: &str = "qbell/1";

/// One result, renderable as text, CSV or JSON.
#[derive(Debug, Clone)]
pub struct Record {
    pub command: String,
    pub params: Map<String, Value>,
    pub result: Value,
    /// `Some` for verification commands.
    pub verdict: Option<bool>,
    pub text: String,
    pub csv: Option<String>,
}

impl Record {
    pub fn new(
        command: impl Into<String>,
        params: Map<String, Value>,
        result: Value,
        text: String,
    ) -> Self {
        Self {
            command: command.into(),
            params,
            result,
            verdict: None,
            text,
            csv: None,
        }
    }

    pub fn with_csv(mut self, csv: String) -> Self {
        self.csv = Some(csv);
        self
    }

    pub fn with_verdict(mut self, passed: bool) -> Self {
        self.verdict = Some(passed);
        self
    }

    pub fn render(&self, format: Format, timestamp: bool) -> Result<String, CliError> {
        let mut s = match format {
            Format::Table => self.text.clone(),
            Format::Csv => self.csv.clone().ok_or_else(|| {
                CliError::Usage(format!(
                    "csv output is not available for `{}`",
                    self.command
                ))
            })?,
            Format::Json => {
                let mut obj = Map::new();
                obj.insert("schema".into(), SCHEMA.into());
                obj.insert("command".into(), self.command.clone().into());
                obj.insert("params".into(), Value::Object(self.params.clone()));
                obj.insert("result".into(), self.result.clone());
                if let Some(passed) = self.verdict {
                    obj.insert("verdict".into(), verdict_word(passed).into());
                }
                if timestamp {
                    let secs = SystemTime::now()
                        .duration_since(UNIX_EPOCH)
                        .map_or(0, |d| d.as_secs());
                    obj.insert("timestamp".into(), secs.into());
                }
                serde_json::to_string_pretty(&Value::Object(obj)).expect("JSON values serialise")
            }
        };
        if !s.ends_with('\n') {
            s.push('\n');
        }
        Ok(s)
    }
}

pub fn verdict_word(passed: bool) -> &'static str {
    if passed {
        "pass"
    } else {
        "fail"
    }
}

pub fn rational(r: &Rational) -> Value {
    r.to_string().into()
}

/// A polynomial as its rendered text plus exact coefficients, lowest degree first.
pub fn poly(p: &QPoly) -> Value {
    json!({
        "text": p.to_string(),
        "coeffs": p.coeffs().iter().map(rational).collect::<Vec<_>>(),
    })
}

/// `sum_k c_k lambda^k` with polynomial coefficients.
pub fn lambda_poly_text(coeffs: &[QPoly]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
        .map(|(k, c)| match k {
            0 => format!("({c})"),
            1 => format!("({c})*lambda"),
            _ => format!("({c})*lambda^{k}"),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

pub fn lambda_poly(coeffs: &[QPoly]) -> Value {
    json!({
        "text": lambda_poly_text(coeffs),
        "coeffs": coeffs.iter().map(poly).collect::<Vec<_>>(),
    })
}

pub fn numeric_lambda_poly(coeffs: &[Rational]) -> Value {
    let p = Poly::new(coeffs.to_vec());
    json!({
        "text": p.render("lambda"),
        "coeffs": p.coeffs().iter().map(rational).collect::<Vec<_>>(),
    })
}

pub fn certified(v: &CertifiedValue) -> Value {
    json!({
        "estimate": format_decimal(&v.estimate(), 30),
        "error_bound": format_error_bound(&v.half_width()),
        "lo": rational(v.lo()),
        "hi": rational(v.hi()),
    })
}

pub fn report(r: &Report) -> Value {
    json!({
        "verifier": r.verifier,
        "checks": r.checks.iter().map(|c| json!({
            "name": c.name,
            "cases": c.cases,
            "verdict": verdict_word(c.passed()),
            "failure": c.failure,
        })).collect::<Vec<_>>(),
    })
}

/// Builds a `params` object from `(name, value)` pairs, in order.
pub fn params<const N: usize>(pairs: [(&str, Value); N]) -> Map<String, Value> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}
