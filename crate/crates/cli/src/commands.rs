use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use chaoscrack::attack::{self, CountingOracle, EncryptionOracle, ProcessOracle, QUERY_BUDGET};
use chaoscrack::cipher::{self, KeyMaterial};
use chaoscrack::image::{read_pgm, read_wide, write_pgm, Image};
use chaoscrack::metrics::MetricReport;
use chaoscrack::KeyedOracle;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// Sidecar written next to every cipher image.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CipherMeta {
    pub eta: i64,
    pub height: usize,
    pub width: usize,
}

/// Metadata half of a recovered-key dump.
#[derive(Debug, Serialize)]
struct RecoveredMeta {
    u: usize,
    v: usize,
    eta: i64,
    height: usize,
    width: usize,
    queries: usize,
}

pub fn sidecar_path(image: &Path) -> PathBuf {
    let mut name = image.as_os_str().to_owned();
    name.push(".meta.json");
    PathBuf::from(name)
}

fn read_bytes(path: &Path) -> Result<Vec<u8>, CliError> {
    std::fs::read(path).map_err(|e| CliError::validation(path.display(), e))
}

fn write_bytes(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    std::fs::write(path, bytes).map_err(|e| CliError::validation(path.display(), e))
}

pub fn read_image(path: &Path) -> Result<Image, CliError> {
    read_pgm(&read_bytes(path)?).map_err(|e| CliError::validation(path.display(), e))
}

pub fn read_key(path: &Path) -> Result<KeyMaterial, CliError> {
    let text = String::from_utf8(read_bytes(path)?)
        .map_err(|e| CliError::validation(path.display(), e))?;
    KeyMaterial::from_json(&text).map_err(|e| CliError::validation(path.display(), e))
}

fn read_meta(path: &Path) -> Result<CipherMeta, CliError> {
    serde_json::from_slice(&read_bytes(path)?).map_err(|e| CliError::validation(path.display(), e))
}

/// Pixel sum from `--eta`, an explicit sidecar, or the default sidecar.
pub fn resolve_eta(eta: Option<i64>, meta: Option<&Path>, image: &Path) -> Result<i64, CliError> {
    if let Some(eta) = eta {
        return Ok(eta);
    }
    if let Some(meta) = meta {
        return Ok(read_meta(meta)?.eta);
    }
    let default = sidecar_path(image);
    if default.exists() {
        return Ok(read_meta(&default)?.eta);
    }
    Err(CliError::Usage(format!(
        "the plaintext pixel sum is required: pass --eta or --meta, or keep {} next to the cipher. \
         The keystream depends on the plaintext mean, so the key alone cannot decrypt.",
        default.display()
    )))
}

pub fn encrypt(
    key: &Path,
    input: &Path,
    output: &Path,
    meta: Option<&Path>,
) -> Result<(), CliError> {
    let key = read_key(key)?;
    let img = read_image(input)?;
    let enc = cipher::encrypt(&img, &key).map_err(|e| CliError::validation(input.display(), e))?;
    write_bytes(output, &write_pgm(&enc.cipher))?;
    let sidecar = CipherMeta {
        eta: enc.eta,
        height: img.height(),
        width: img.width(),
    };
    let meta_path = meta
        .map(Path::to_path_buf)
        .unwrap_or_else(|| sidecar_path(output));
    write_bytes(
        &meta_path,
        serde_json::to_string_pretty(&sidecar)
            .expect("meta serializes")
            .as_bytes(),
    )?;
    println!("eta = {}", enc.eta);
    Ok(())
}

pub fn decrypt(key: &Path, input: &Path, output: &Path, eta: i64) -> Result<(), CliError> {
    let key = read_key(key)?;
    let img = read_image(input)?;
    let plain =
        cipher::decrypt(&img, &key, eta).map_err(|e| CliError::validation(input.display(), e))?;
    write_bytes(output, &write_pgm(&plain))
}

pub enum OracleChoice {
    Key(PathBuf),
    Command(String),
}

pub struct Dumps<'a> {
    pub mask: Option<&'a Path>,
    pub perm: Option<&'a Path>,
    pub meta: Option<&'a Path>,
}

pub fn attack(
    oracle: &OracleChoice,
    target: &Path,
    output: &Path,
    eta: i64,
    dumps: Dumps<'_>,
) -> Result<(), CliError> {
    let inner: Box<dyn EncryptionOracle> = match oracle {
        OracleChoice::Key(path) => Box::new(KeyedOracle::new(read_key(path)?)),
        OracleChoice::Command(line) => Box::new(
            ProcessOracle::from_command_line(line)
                .ok_or_else(|| CliError::Usage("--oracle-cmd is empty".into()))?,
        ),
    };
    let cipher = read_image(target)?;
    let mut oracle = CountingOracle::new(inner);
    let key = attack::recover_equivalent_key(&mut oracle, eta, cipher.height(), cipher.width())
        .map_err(|e| CliError::Attack(format!("attack failed at stage `{}`: {e}", e.stage())))?;
    let plain = key
        .decrypt(&cipher)
        .map_err(|e| CliError::Attack(format!("attack failed at stage `{}`: {e}", e.stage())))?;

    write_bytes(output, &write_pgm(&plain))?;
    if let Some(path) = dumps.mask {
        write_bytes(path, &write_pgm(key.mask.as_image()))?;
    }
    if let Some(path) = dumps.perm {
        let mut text = String::with_capacity(key.permutation.len() * 6);
        for &s in key.permutation.as_slice() {
            text.push_str(&s.to_string());
            text.push('\n');
        }
        write_bytes(path, text.as_bytes())?;
    }
    if let Some(path) = dumps.meta {
        let meta = RecoveredMeta {
            u: key.position.0,
            v: key.position.1,
            eta,
            height: cipher.height(),
            width: cipher.width(),
            queries: oracle.queries(),
        };
        write_bytes(
            path,
            serde_json::to_string_pretty(&meta)
                .expect("meta serializes")
                .as_bytes(),
        )?;
    }

    println!(
        "first pixel located at ({}, {})",
        key.position.0, key.position.1
    );
    println!("queries: {}", oracle.queries());
    if oracle.queries() != QUERY_BUDGET {
        return Err(CliError::Attack(format!(
            "expected {QUERY_BUDGET} oracle queries, made {}",
            oracle.queries()
        )));
    }
    Ok(())
}

pub fn metrics(input: &Path, pair: Option<&Path>, out: Option<&Path>) -> Result<(), CliError> {
    let img = read_image(input)?;
    let other = pair.map(read_image).transpose()?;
    let pair_arg = pair
        .zip(other.as_ref())
        .map(|(p, i)| (p.display().to_string(), i));
    let report = MetricReport::compute(input.display().to_string(), &img, pair_arg)
        .map_err(|e| CliError::validation(input.display(), e))?;
    let json = report.to_json();
    match out {
        Some(path) => write_bytes(path, json.as_bytes())?,
        None => println!("{json}"),
    }
    eprintln!(
        "note: these statistics are necessary, not sufficient; a pure pixel permutation \
         or a cipher broken by five chosen plaintexts can score well on all of them"
    );
    Ok(())
}

pub fn serve_oracle(key: &Path) -> Result<(), CliError> {
    let key = read_key(key)?;
    let mut text = String::new();
    std::io::stdin()
        .read_to_string(&mut text)
        .map_err(|e| CliError::validation("stdin", e))?;
    let plain = read_wide(&text).map_err(|e| CliError::validation("stdin", e))?;
    let enc = cipher::encrypt_wide(&plain, &key).map_err(|e| CliError::validation("query", e))?;
    let mut stdout = std::io::stdout().lock();
    stdout
        .write_all(&write_pgm(&enc.cipher))
        .and_then(|_| stdout.flush())
        .map_err(|e| CliError::validation("stdout", e))
}
