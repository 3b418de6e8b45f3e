//! Verification records and their deterministic JSON/CSV encodings.

use serde::{Deserialize, Serialize};

use crate::constants::ExactConstant;

/// One checked quantity: expected vs computed value and the verdict.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationEntry {
    pub name: String,
    pub n: Option<u32>,
    pub expected: f64,
    pub computed: f64,
    pub abs_error: f64,
    pub pass: bool,
    pub tolerance: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_exact: Option<ExactConstant>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub computed_exact: Option<ExactConstant>,
}

impl VerificationEntry {
    /// Float check against an exact expected value.
    pub fn numeric(name: &str, n: Option<u32>, expected: &ExactConstant, computed: f64, tolerance: f64) -> Self {
        let mut e = Self::float(name, n, expected.to_float(), computed, tolerance);
        e.expected_exact = Some(expected.clone());
        e
    }

    pub fn float(name: &str, n: Option<u32>, expected: f64, computed: f64, tolerance: f64) -> Self {
        let abs_error = (expected - computed).abs();
        Self {
            name: name.to_string(),
            n,
            expected,
            computed,
            abs_error,
            pass: abs_error <= tolerance,
            tolerance,
            expected_exact: None,
            computed_exact: None,
        }
    }

    /// Exact identity check: passes iff the normal forms coincide.
    pub fn exact(name: &str, n: Option<u32>, expected: &ExactConstant, computed: &ExactConstant) -> Self {
        let (e, c) = (expected.to_float(), computed.to_float());
        Self {
            name: name.to_string(),
            n,
            expected: e,
            computed: c,
            abs_error: (e - c).abs(),
            pass: expected == computed,
            tolerance: 0.0,
            expected_exact: Some(expected.clone()),
            computed_exact: Some(computed.clone()),
        }
    }

    /// A check with no numeric payload, e.g. an expected error that did occur.
    pub fn flag(name: &str, n: Option<u32>, pass: bool) -> Self {
        Self {
            name: name.to_string(),
            n,
            expected: 1.0,
            computed: if pass { 1.0 } else { 0.0 },
            abs_error: if pass { 0.0 } else { 1.0 },
            pass,
            tolerance: 0.0,
            expected_exact: None,
            computed_exact: None,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub entries: Vec<VerificationEntry>,
}

#[derive(Serialize, Deserialize)]
struct CsvRow {
    name: String,
    n: Option<u32>,
    expected: String,
    computed: String,
    abs_error: String,
    tolerance: String,
    pass: bool,
}

/// Float text with 17 significant digits, which round-trips through `parse`.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

impl VerificationReport {
    pub fn new(entries: Vec<VerificationEntry>) -> Self {
        Self { entries }
    }

    pub fn push(&mut self, e: VerificationEntry) {
        self.entries.push(e);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.entries.extend(other.entries);
    }

    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &VerificationEntry> {
        self.entries.iter().filter(|e| !e.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.entries).expect("report serializes")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        Ok(Self {
            entries: serde_json::from_str(s)?,
        })
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        for e in &self.entries {
            w.serialize(CsvRow {
                name: e.name.clone(),
                n: e.n,
                expected: fmt_f64(e.expected),
                computed: fmt_f64(e.computed),
                abs_error: fmt_f64(e.abs_error),
                tolerance: fmt_f64(e.tolerance),
                pass: e.pass,
            })
            .expect("csv row");
        }
        String::from_utf8(w.into_inner().expect("csv flush")).expect("utf8 csv")
    }

    /// Parses the CSV produced by [`Self::to_csv`]; exact payloads are not part
    /// of the CSV schema.
    pub fn from_csv(s: &str) -> Result<Self, csv::Error> {
        let mut r = csv::Reader::from_reader(s.as_bytes());
        let mut entries = Vec::new();
        for row in r.deserialize::<CsvRow>() {
            let row = row?;
            let f = |t: &str| t.parse::<f64>().unwrap_or(f64::NAN);
            entries.push(VerificationEntry {
                name: row.name,
                n: row.n,
                expected: f(&row.expected),
                computed: f(&row.computed),
                abs_error: f(&row.abs_error),
                pass: row.pass,
                tolerance: f(&row.tolerance),
                expected_exact: None,
                computed_exact: None,
            });
        }
        Ok(Self { entries })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            let n = e.n.map(|n| format!("n={n}")).unwrap_or_default();
            out.push_str(&format!(
                "[{}] {:<44} {:<5} expected={:<24} computed={:<24} abs_error={:.3e}\n",
                if e.pass { "PASS" } else { "FAIL" },
                e.name,
                n,
                fmt_f64(e.expected),
                fmt_f64(e.computed),
                e.abs_error
            ));
        }
        let failed = self.failures().count();
        out.push_str(&format!("{} checks, {} failed\n", self.entries.len(), failed));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_and_json_round_trip() {
        let mut r = VerificationReport::default();
        r.push(VerificationEntry::float("a", Some(3), 0.1, 0.1 + 1e-17, 1e-8));
        r.push(VerificationEntry::exact(
            "b",
            None,
            &ExactConstant::frac(1, 3),
            &ExactConstant::frac(1, 3),
        ));
        r.push(VerificationEntry::float("c", Some(0), std::f64::consts::PI, 3.0, 1e-8));
        let back = VerificationReport::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
        let csv_back = VerificationReport::from_csv(&r.to_csv()).unwrap();
        for (x, y) in csv_back.entries.iter().zip(&r.entries) {
            assert_eq!(x.expected.to_bits(), y.expected.to_bits());
            assert_eq!(x.computed.to_bits(), y.computed.to_bits());
            assert_eq!(x.pass, y.pass);
        }
        assert!(!r.all_pass());
        assert_eq!(r.failures().count(), 1);
    }
}
