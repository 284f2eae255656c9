use std::fmt::{self, Write as _};
use std::time::Duration;

use sha2::{Digest, Sha256};

/// What a command read, what it found, and how long it took.
#[derive(Debug, Default)]
pub struct RunReport {
    pub command: String,
    pub inputs: Vec<(String, String)>,
    pub outputs: Vec<(String, String)>,
    pub elapsed: Duration,
}

pub fn digest(bytes: &[u8]) -> String {
    let mut h = Sha256::new();
    h.update(bytes);
    h.finalize().iter().fold(String::with_capacity(64), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

impl RunReport {
    pub fn new(command: impl Into<String>) -> Self {
        RunReport {
            command: command.into(),
            ..Default::default()
        }
    }

    pub fn input(&mut self, path: &str, bytes: &[u8]) {
        self.inputs.push((path.to_string(), digest(bytes)));
    }

    pub fn out(&mut self, key: &str, value: impl fmt::Display) {
        self.outputs.push((key.to_string(), value.to_string()));
    }
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "command: {}", self.command)?;
        for (p, d) in &self.inputs {
            writeln!(f, "input: {p} sha256:{d}")?;
        }
        for (k, v) in &self.outputs {
            // Multi-line values are indented under their key.
            let mut lines = v.lines();
            writeln!(f, "{k}: {}", lines.next().unwrap_or(""))?;
            for l in lines {
                writeln!(f, "  {l}")?;
            }
        }
        writeln!(f, "elapsed: {:.3}s", self.elapsed.as_secs_f64())
    }
}
