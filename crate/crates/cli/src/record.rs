use std::fmt::{self, Display};

/// Ordered `key=value` lines, optionally followed by free-form detail lines.
#[derive(Debug, Default)]
pub struct Record {
    fields: Vec<(&'static str, String)>,
    details: Vec<String>,
}

impl Record {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn field(&mut self, key: &'static str, value: impl Display) -> &mut Self {
        self.fields.push((key, value.to_string()));
        self
    }

    pub fn detail(&mut self, line: impl Into<String>) -> &mut Self {
        self.details.push(line.into());
        self
    }
}

impl Display for Record {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.fields {
            writeln!(f, "{k}={v}")?;
        }
        for line in &self.details {
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

/// Space-separated 1-based indices.
pub fn one_based(indices: &[usize]) -> String {
    indices
        .iter()
        .map(|i| (i + 1).to_string())
        .collect::<Vec<_>>()
        .join(" ")
}
