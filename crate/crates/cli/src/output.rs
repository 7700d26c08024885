use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::CliError;
use crate::params::Params;

pub const MANIFEST: &str = "manifest.json";

/// Formats a number with 9 significant digits, like C's `%.9g`.
pub fn g9(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.into();
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.8e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("exponent");
    if (-4..9).contains(&exp) {
        trim_zeros(format!("{x:.*}", (8 - exp) as usize))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa.to_string()))
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

pub fn csv<R>(header: &[&str], rows: R) -> String
where
    R: IntoIterator<Item = Vec<String>>,
{
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

#[derive(Debug, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Serialize)]
pub struct RunManifest<'a> {
    pub subcommand: &'a str,
    pub params: &'a std::collections::BTreeMap<String, String>,
    pub seed: Option<u64>,
    pub version: &'a str,
    pub duration_secs: f64,
    pub inputs: &'a [InputDigest],
    pub outputs: &'a [String],
}

/// Where a run's artifacts go: files plus a manifest in `--out`, or the
/// primary artifact on stdout and anything else on stderr.
pub struct Sink {
    dir: Option<PathBuf>,
    written: Vec<String>,
    inputs: Vec<InputDigest>,
    started: Instant,
}

impl Sink {
    pub fn new(dir: Option<PathBuf>) -> Result<Self, CliError> {
        if let Some(d) = &dir {
            std::fs::create_dir_all(d)
                .map_err(|e| CliError::Io(format!("{}: {e}", d.display())))?;
        }
        Ok(Self {
            dir,
            written: Vec::new(),
            inputs: Vec::new(),
            started: Instant::now(),
        })
    }

    pub fn to_dir(&self) -> bool {
        self.dir.is_some()
    }

    /// Reads an input file and records its digest.
    pub fn read_input(&mut self, path: &Path) -> Result<String, CliError> {
        let bytes =
            std::fs::read(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        self.inputs.push(InputDigest {
            path: path.display().to_string(),
            sha256: hex::encode(Sha256::digest(&bytes)),
        });
        String::from_utf8(bytes)
            .map_err(|_| CliError::Io(format!("{}: not valid UTF-8", path.display())))
    }

    fn write(&mut self, name: &str, content: &str) -> Result<(), CliError> {
        let dir = self.dir.as_ref().expect("output directory");
        let path = dir.join(name);
        std::fs::write(&path, content)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        self.written.push(name.to_string());
        Ok(())
    }

    /// The main artifact of a run.
    pub fn primary(&mut self, name: &str, content: &str) -> Result<(), CliError> {
        if self.dir.is_some() {
            self.write(name, content)
        } else {
            std::io::stdout().lock().write_all(content.as_bytes())?;
            Ok(())
        }
    }

    /// A supporting artifact; goes to stderr without an output directory.
    pub fn secondary(&mut self, name: &str, content: &str) -> Result<(), CliError> {
        if self.dir.is_some() {
            self.write(name, content)
        } else {
            eprint!("{content}");
            Ok(())
        }
    }

    pub fn finish(mut self, subcommand: &str, params: &Params, seed: Option<u64>) -> Result<(), CliError> {
        if self.dir.is_none() {
            return Ok(());
        }
        let outputs = self.written.clone();
        let manifest = RunManifest {
            subcommand,
            params: &params.0,
            seed,
            version: env!("CARGO_PKG_VERSION"),
            duration_secs: self.started.elapsed().as_secs_f64(),
            inputs: &self.inputs,
            outputs: &outputs,
        };
        let text = serde_json::to_string_pretty(&manifest).expect("manifest serializes") + "\n";
        self.write(MANIFEST, &text)
    }
}
