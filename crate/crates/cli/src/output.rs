use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use dehn_core::lickorish_reduction::ReductionStep;

/// Sends results to the `--out` file, or to stdout.
pub struct Emitter {
    path: Option<PathBuf>,
}

impl Emitter {
    pub fn new(path: Option<PathBuf>) -> Emitter {
        Emitter { path }
    }

    pub fn json<T: Serialize>(&self, v: &T) -> std::io::Result<()> {
        let mut s = serde_json::to_string_pretty(v)?;
        s.push('\n');
        self.bytes(s.as_bytes())
    }

    pub fn bytes(&self, b: &[u8]) -> std::io::Result<()> {
        match &self.path {
            Some(p) => std::fs::write(p, b),
            None => std::io::stdout().lock().write_all(b),
        }
    }
}

#[derive(Serialize)]
struct StepRow {
    step: usize,
    curve: String,
    before: usize,
    after: usize,
    length: f64,
}

pub fn write_steps_csv(steps: &[ReductionStep], path: &Path) -> std::io::Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    for (k, s) in steps.iter().enumerate() {
        w.serialize(StepRow {
            step: k + 1,
            curve: s.curve.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "),
            before: s.before,
            after: s.after,
            length: s.length,
        })?;
    }
    w.flush()
}
