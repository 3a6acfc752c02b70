//! Adapter for a user-supplied compressor program.
//!
//! Bits are packed MSB-first into bytes (final partial byte zero-padded) and
//! piped through `sh -c <command>`. The score is eight times the number of
//! bytes written to standard output. Byte alignment and container headers
//! make this estimate non-monotone, so it is only usable in heuristic mode.

use std::io::{Read, Write};
use std::process::{Command, Stdio};
use std::thread;
use std::time::{Duration, Instant};

use crate::bits::BitString;
use crate::error::{Error, Result};

pub const DEFAULT_TIMEOUT: Duration = Duration::from_secs(10);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExternalCompressor {
    pub command: String,
    pub timeout: Duration,
}

impl ExternalCompressor {
    pub fn new(command: impl Into<String>) -> Self {
        ExternalCompressor {
            command: command.into(),
            timeout: DEFAULT_TIMEOUT,
        }
    }

    pub fn with_timeout(mut self, timeout: Duration) -> Self {
        self.timeout = timeout;
        self
    }

    /// Compressed size of `x` in bits. The empty string is never sent to the
    /// compressor and scores zero.
    pub fn compressed_bits(&self, x: &BitString) -> Result<f64> {
        if x.is_empty() {
            return Ok(0.0);
        }
        let out = self.run(x.to_bytes_msb())?;
        Ok(8.0 * out as f64)
    }

    fn run(&self, input: Vec<u8>) -> Result<usize> {
        let input_len = input.len();
        let mut child = Command::new("sh")
            .arg("-c")
            .arg(&self.command)
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::piped())
            .spawn()
            .map_err(|e| Error::Backend(format!("cannot spawn `{}`: {e}", self.command)))?;

        let mut stdin = child.stdin.take().expect("piped stdin");
        let writer = thread::spawn(move || {
            // A compressor that exits early closes the pipe; that is reported
            // through its exit status instead.
            let _ = stdin.write_all(&input);
        });
        let mut stdout = child.stdout.take().expect("piped stdout");
        let reader = thread::spawn(move || {
            let mut buf = Vec::new();
            stdout.read_to_end(&mut buf).map(|_| buf)
        });
        let mut stderr = child.stderr.take().expect("piped stderr");
        let err_reader = thread::spawn(move || {
            let mut buf = String::new();
            let _ = stderr.read_to_string(&mut buf);
            buf
        });

        let deadline = Instant::now() + self.timeout;
        let status = loop {
            if let Some(status) = child.try_wait()? {
                break status;
            }
            if Instant::now() >= deadline {
                let _ = child.kill();
                let _ = child.wait();
                return Err(Error::Backend(format!(
                    "`{}` timed out after {:?}",
                    self.command, self.timeout
                )));
            }
            thread::sleep(Duration::from_millis(2));
        };
        let _ = writer.join();
        let output = reader
            .join()
            .map_err(|_| Error::Backend("stdout reader panicked".into()))??;
        let stderr = err_reader.join().unwrap_or_default();

        if !status.success() {
            return Err(Error::Backend(format!(
                "`{}` exited with {status}: {}",
                self.command,
                stderr.trim()
            )));
        }
        if output.is_empty() {
            return Err(Error::Backend(format!(
                "`{}` produced no output for {} input bytes",
                self.command, input_len
            )));
        }
        Ok(output.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cat_scores_packed_size() {
        let c = ExternalCompressor::new("cat");
        let x: BitString = "1011001".parse().unwrap();
        assert_eq!(c.compressed_bits(&x).unwrap(), 8.0);
        assert_eq!(c.compressed_bits(&BitString::new()).unwrap(), 0.0);
    }

    #[test]
    fn failing_command_is_an_error() {
        let c = ExternalCompressor::new("exit 3");
        let x: BitString = "1".parse().unwrap();
        assert!(matches!(c.compressed_bits(&x), Err(Error::Backend(_))));
    }

    #[test]
    fn timeout_is_enforced() {
        let c = ExternalCompressor::new("sleep 5").with_timeout(Duration::from_millis(100));
        let x: BitString = "1".parse().unwrap();
        let err = c.compressed_bits(&x).unwrap_err();
        assert!(err.to_string().contains("timed out"));
    }
}
