//! Human, JSON and CSV renderings of command results.
//!
//! JSON is one document per run: `{command, parameters, results, version}`.
//! Big naturals are decimal strings. Timing fields appear only with
//! `--timings`.

use std::io::{self, Write};

use cantor_core::{CantorCertificate, CrossCheckReport, PrimalityStatus, SearchRecord};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::ReportFormat;

#[derive(Serialize)]
struct Document<'a> {
    command: &'a str,
    parameters: &'a Map<String, Value>,
    results: Vec<Value>,
    version: &'static str,
}

pub struct Report {
    command: &'static str,
    parameters: Map<String, Value>,
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("result types serialize to JSON")
}

impl Report {
    pub fn new(command: &'static str, parameters: Map<String, Value>) -> Self {
        Report { command, parameters }
    }

    fn json(&self, results: Vec<Value>, out: &mut dyn Write) -> io::Result<()> {
        let doc = Document { command: self.command, parameters: &self.parameters, results, version: env!("CARGO_PKG_VERSION") };
        serde_json::to_writer_pretty(&mut *out, &doc)?;
        writeln!(out)
    }

    pub fn certificates(&self, format: ReportFormat, certs: &[CantorCertificate], out: &mut dyn Write) -> io::Result<()> {
        match format {
            ReportFormat::Json => self.json(certs.iter().map(to_value).collect(), out),
            ReportFormat::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(["p", "is_cantor", "small_special", "q", "K", "offsets", "s", "j", "stage", "agreement"])?;
                for c in certs {
                    let opt = |v: Option<String>| v.unwrap_or_default();
                    w.write_record([
                        c.p.to_string(),
                        c.is_cantor.to_string(),
                        c.small_special.to_string(),
                        opt(c.q.map(|q| q.to_string())),
                        opt(c.k.as_ref().map(|k| k.to_string())),
                        opt(c.offsets.as_ref().map(|o| join(o, ";"))),
                        opt(c.form.map(|f| f.s.to_string())),
                        opt(c.form.map(|f| f.j.to_string())),
                        opt(c.exclusion.as_ref().map(|e| e.stage.to_string())),
                        c.agreement.to_string(),
                    ])?;
                }
                w.flush()
            }
            ReportFormat::Human if self.command == "certify" => {
                for c in certs {
                    human_certificate(c, out)?;
                }
                Ok(())
            }
            ReportFormat::Human => {
                for c in certs {
                    writeln!(out, "{}", human_certificate_line(c))?;
                }
                writeln!(out, "{} Cantor primes", certs.len())
            }
        }
    }

    pub fn primes(&self, format: ReportFormat, primes: &[u64], out: &mut dyn Write) -> io::Result<()> {
        match format {
            ReportFormat::Json => self.json(primes.iter().map(|p| json!({ "p": p.to_string() })).collect(), out),
            ReportFormat::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(["p"])?;
                for p in primes {
                    w.write_record([p.to_string()])?;
                }
                w.flush()
            }
            ReportFormat::Human => writeln!(out, "{}", join(primes, " ")),
        }
    }

    pub fn records(&self, format: ReportFormat, timings: bool, records: &[SearchRecord], out: &mut dyn Write) -> io::Result<()> {
        if format == ReportFormat::Json {
            return self.json(records.iter().map(|r| record_value(r, timings)).collect(), out);
        }
        let mut stream = RecordStream::new(format, timings, out)?;
        for r in records {
            stream.push(r)?;
        }
        Ok(())
    }

    pub fn cross_check(&self, format: ReportFormat, diff: &CrossCheckReport, out: &mut dyn Write) -> io::Result<()> {
        let rows: Vec<(&str, String)> = diff
            .only_expected
            .iter()
            .map(|v| ("expected_only", v.to_string()))
            .chain(diff.only_computed.iter().map(|v| ("computed_only", v.to_string())))
            .collect();
        match format {
            ReportFormat::Json => {
                self.json(rows.iter().map(|(side, value)| json!({ "side": side, "value": value })).collect(), out)
            }
            ReportFormat::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(["side", "value"])?;
                for (side, value) in &rows {
                    w.write_record([*side, value.as_str()])?;
                }
                w.flush()
            }
            ReportFormat::Human => {
                if rows.is_empty() {
                    return writeln!(out, "agreement: no differences up to the cap");
                }
                for (side, value) in &rows {
                    writeln!(out, "{side}: {value}")?;
                }
                writeln!(out, "{} differences", rows.len())
            }
        }
    }
}

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

fn form_label(s: u64, j: u32) -> String {
    format!("Phi_{s}(3^({s}^{j}))")
}

fn human_certificate(c: &CantorCertificate, out: &mut dyn Write) -> io::Result<()> {
    let verdict = if c.is_cantor { "Cantor prime" } else { "not a Cantor prime" };
    writeln!(out, "p = {}: {verdict}", c.p)?;
    if c.small_special {
        writeln!(out, "  1/3 = 0.0222... in base 3 (special case, no witnesses)")?;
    }
    if let Some(q) = c.q {
        writeln!(out, "  q = ord_p(3) = {q}")?;
    }
    if let (Some(k), Some(offsets)) = (&c.k, &c.offsets) {
        writeln!(out, "  K = {k} = sum of 3^d for d in [{}]", join(offsets, ", "))?;
    }
    if let Some(f) = c.form {
        writeln!(out, "  p = {}", form_label(f.s, f.j))?;
    }
    if let Some(e) = &c.exclusion {
        writeln!(out, "  exclusion: {} after digit gaps [{}]", e.stage, join(&e.witness_exponents, ", "))?;
    }
    writeln!(out, "  characterizations agree: {}", c.agreement)
}

fn human_certificate_line(c: &CantorCertificate) -> String {
    if c.small_special {
        return format!("{}  (special: 1/3 = 0.0222...)", c.p);
    }
    let mut line = c.p.to_string();
    if let Some(q) = c.q {
        line += &format!("  q={q}");
    }
    if let Some(k) = &c.k {
        line += &format!("  K={k}");
    }
    if let Some(o) = &c.offsets {
        line += &format!("  offsets=[{}]", join(o, ","));
    }
    if let Some(f) = c.form {
        line += &format!("  {}", form_label(f.s, f.j));
    }
    line
}

fn record_value(r: &SearchRecord, timings: bool) -> Value {
    let mut v = to_value(r);
    if timings {
        v["elapsed_ms"] = json!(r.elapsed_ms() as u64);
    }
    v
}

fn verdict_columns(status: &PrimalityStatus) -> (String, String) {
    match status {
        PrimalityStatus::Prime => (String::new(), String::new()),
        PrimalityStatus::ProbablePrime { rounds } => (rounds.to_string(), String::new()),
        PrimalityStatus::Composite { witness } => {
            (String::new(), witness.as_ref().map(|w| w.to_string()).unwrap_or_default())
        }
    }
}

/// Row-at-a-time writer for search records in human or CSV form.
pub struct RecordStream<'a> {
    format: ReportFormat,
    timings: bool,
    out: &'a mut dyn Write,
}

impl<'a> RecordStream<'a> {
    pub fn new(format: ReportFormat, timings: bool, out: &'a mut dyn Write) -> io::Result<Self> {
        if format == ReportFormat::Csv {
            let mut header = String::from("s,j,digits3,verdict,rounds,witness,value_mod4");
            if timings {
                header += ",elapsed_ms";
            }
            writeln!(out, "{header}")?;
        }
        Ok(RecordStream { format, timings, out })
    }

    pub fn push(&mut self, r: &SearchRecord) -> io::Result<()> {
        let (rounds, witness) = verdict_columns(&r.verdict);
        match self.format {
            ReportFormat::Csv => {
                let mut row = format!(
                    "{},{},{},{},{rounds},{witness},{}",
                    r.s,
                    r.j,
                    r.digits3,
                    r.verdict.label(),
                    r.value_mod4
                );
                if self.timings {
                    row += &format!(",{}", r.elapsed_ms());
                }
                writeln!(self.out, "{row}")?;
            }
            _ => {
                let mut line = format!(
                    "s={} j={} trits={} {}",
                    r.s,
                    r.j,
                    r.digits3,
                    r.verdict.label().replace('_', " ")
                );
                if !rounds.is_empty() {
                    line += &format!(" ({rounds} rounds)");
                }
                if !witness.is_empty() {
                    line += &format!(" (divisor {witness})");
                }
                line += &format!(" mod4={}", r.value_mod4);
                if self.timings {
                    line += &format!(" {}ms", r.elapsed_ms());
                }
                writeln!(self.out, "{line}")?;
            }
        }
        self.out.flush()
    }
}
