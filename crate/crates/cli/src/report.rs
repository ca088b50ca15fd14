//! `key=value` run reports.

use std::fmt;

/// Ordered `key=value` pairs. Keys are unique; setting a key twice replaces
/// the first value in place.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RunReport {
    entries: Vec<(String, String)>,
}

impl RunReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, key: &str, value: impl fmt::Display) -> &mut Self {
        let value = value.to_string();
        assert!(!key.contains('=') && !key.contains('\n') && !value.contains('\n'), "bad report entry {key}");
        match self.entries.iter_mut().find(|(k, _)| k == key) {
            Some(slot) => slot.1 = value,
            None => self.entries.push((key.to_string(), value)),
        }
        self
    }

    pub fn set_vector(&mut self, key: &str, values: &[f64]) -> &mut Self {
        let joined = values.iter().map(f64::to_string).collect::<Vec<_>>().join(",");
        self.set(key, joined)
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn get_f64(&self, key: &str) -> Option<f64> {
        self.get(key)?.parse().ok()
    }

    pub fn get_vector(&self, key: &str) -> Option<Vec<f64>> {
        let raw = self.get(key)?;
        if raw.is_empty() {
            return Some(Vec::new());
        }
        raw.split(',').map(|x| x.parse().ok()).collect()
    }

    pub fn entries(&self) -> &[(String, String)] {
        &self.entries
    }

    /// Parses the output of `Display`; blank and `#` lines are skipped.
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut report = RunReport::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| format!("line {}: expected key=value", i + 1))?;
            report.set(k, v);
        }
        Ok(report)
    }
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.entries {
            writeln!(f, "{k}={v}")?;
        }
        Ok(())
    }
}

/// Rounds to four decimals, trims trailing zeros, keeps one decimal digit.
pub fn decimal4(x: f64) -> String {
    let s = format!("{x:.4}");
    let s = s.trim_end_matches('0');
    if s.ends_with('.') {
        format!("{s}0")
    } else {
        s.to_string()
    }
}
