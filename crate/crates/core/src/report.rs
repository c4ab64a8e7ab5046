//! Shared output helpers: float formatting for CSV cells and atomic file
//! writes.

use std::io::{self, Write};
use std::path::Path;

use tempfile::NamedTempFile;

/// Shortest decimal string that parses back to the same `f64`.
///
/// ```
/// use hyperspectra::report::float_cell;
/// assert_eq!(float_cell(1.5), "1.5");
/// assert_eq!(float_cell(0.1 + 0.2), "0.30000000000000004");
/// ```
pub fn float_cell(x: f64) -> String {
    format!("{x}")
}

pub fn opt_float_cell(x: Option<f64>) -> String {
    x.map(float_cell).unwrap_or_default()
}

pub fn opt_bool_cell(b: Option<bool>) -> String {
    b.map(|b| b.to_string()).unwrap_or_default()
}

/// Writes `bytes` to a temporary file beside `path`, then renames it over
/// `path`. On error nothing is left at `path`.
pub fn atomic_write(path: &Path, bytes: &[u8]) -> io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip() {
        for x in [0.0, -0.0, 1.0 / 3.0, 1e-300, 6.000000000000001, f64::MAX] {
            assert_eq!(float_cell(x).parse::<f64>().unwrap().to_bits(), x.to_bits());
        }
        assert_eq!(opt_float_cell(None), "");
        assert_eq!(opt_bool_cell(Some(false)), "false");
    }

    #[test]
    fn atomic_write_replaces() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("out.txt");
        atomic_write(&p, b"one").unwrap();
        atomic_write(&p, b"two").unwrap();
        assert_eq!(std::fs::read(&p).unwrap(), b"two");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
