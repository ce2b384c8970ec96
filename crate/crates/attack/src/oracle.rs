//! The attacker's only view of the cipher.

use std::io::{Read, Write};
use std::process::{Command, Stdio};

use chaoscrack_image::{read_pgm, write_wide, Image, ImageError, WideImage};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("oracle I/O failed: {0}")]
    Io(#[from] std::io::Error),
    #[error("oracle process exited with {status}: {stderr}")]
    Exit {
        status: std::process::ExitStatus,
        stderr: String,
    },
    #[error("oracle returned an undecodable image: {0}")]
    Decode(#[from] ImageError),
    #[error("oracle rejected the query: {0}")]
    Rejected(String),
}

/// Encrypts attacker-chosen plaintexts under a fixed hidden key.
pub trait EncryptionOracle {
    fn encrypt_chosen(&mut self, plain: &WideImage) -> Result<Image, OracleError>;
}

impl<O: EncryptionOracle + ?Sized> EncryptionOracle for &mut O {
    fn encrypt_chosen(&mut self, plain: &WideImage) -> Result<Image, OracleError> {
        (**self).encrypt_chosen(plain)
    }
}

impl<O: EncryptionOracle + ?Sized> EncryptionOracle for Box<O> {
    fn encrypt_chosen(&mut self, plain: &WideImage) -> Result<Image, OracleError> {
        (**self).encrypt_chosen(plain)
    }
}

/// Wraps an oracle and counts the queries that reach it.
#[derive(Debug)]
pub struct CountingOracle<O> {
    inner: O,
    queries: usize,
}

impl<O> CountingOracle<O> {
    pub fn new(inner: O) -> Self {
        CountingOracle { inner, queries: 0 }
    }

    pub fn queries(&self) -> usize {
        self.queries
    }

    pub fn into_inner(self) -> O {
        self.inner
    }
}

impl<O: EncryptionOracle> EncryptionOracle for CountingOracle<O> {
    fn encrypt_chosen(&mut self, plain: &WideImage) -> Result<Image, OracleError> {
        self.queries += 1;
        self.inner.encrypt_chosen(plain)
    }
}

/// Runs an external program once per query.
///
/// The program receives one wide-image text document on stdin and must
/// print one binary `P5` graymap on stdout. A nonzero exit status is an
/// oracle error.
#[derive(Debug, Clone)]
pub struct ProcessOracle {
    program: String,
    args: Vec<String>,
}

impl ProcessOracle {
    pub fn new(
        program: impl Into<String>,
        args: impl IntoIterator<Item = impl Into<String>>,
    ) -> Self {
        ProcessOracle {
            program: program.into(),
            args: args.into_iter().map(Into::into).collect(),
        }
    }

    /// Splits a command line on whitespace. No quoting is interpreted.
    pub fn from_command_line(line: &str) -> Option<Self> {
        let mut parts = line.split_whitespace();
        let program = parts.next()?;
        Some(ProcessOracle::new(program, parts))
    }
}

impl EncryptionOracle for ProcessOracle {
    fn encrypt_chosen(&mut self, plain: &WideImage) -> Result<Image, OracleError> {
        let mut child = Command::new(&self.program)
            .args(&self.args)
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::piped())
            .spawn()?;

        let document = write_wide(plain);
        let mut stdin = child.stdin.take().expect("stdin is piped");
        // Feed stdin from a separate thread so a child that writes before it
        // finishes reading cannot deadlock us.
        let writer = std::thread::spawn(move || {
            let res = stdin.write_all(document.as_bytes());
            drop(stdin);
            res
        });

        let mut stdout = Vec::new();
        child
            .stdout
            .take()
            .expect("stdout is piped")
            .read_to_end(&mut stdout)?;
        let mut stderr = String::new();
        child
            .stderr
            .take()
            .expect("stderr is piped")
            .read_to_string(&mut stderr)?;
        let status = child.wait()?;
        let write_result = writer.join().expect("writer thread panicked");

        if !status.success() {
            return Err(OracleError::Exit {
                status,
                stderr: stderr.trim().to_string(),
            });
        }
        write_result?;
        Ok(read_pgm(&stdout)?)
    }
}
