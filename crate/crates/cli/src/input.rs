//! Flag parsing and validation. Every failure here is an [`Invalid`] naming
//! the offending flag, which maps to exit code 2.

use std::fmt;
use std::path::Path;

use anyhow::Result;
use svorigami::geometry::{AffineSurface, Mat2, Surface};
use svorigami::Origami;

#[derive(Debug)]
pub struct Invalid(pub String);

impl fmt::Display for Invalid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Invalid {}

pub fn invalid(msg: impl Into<String>) -> anyhow::Error {
    Invalid(msg.into()).into()
}

/// Origamis from `--origami` values: inline text, or `@path` to a file with
/// one origami per line (blank lines and `#` comments skipped).
pub fn origamis(values: &[String]) -> Result<Vec<Origami>> {
    let mut out = Vec::new();
    for value in values {
        match value.strip_prefix('@') {
            Some(path) => {
                let text = std::fs::read_to_string(Path::new(path))
                    .map_err(|e| invalid(format!("--origami: cannot read {path}: {e}")))?;
                for (i, line) in text.lines().enumerate() {
                    let line = line.split('#').next().unwrap_or("").trim();
                    if line.is_empty() {
                        continue;
                    }
                    let o = line
                        .parse::<Origami>()
                        .map_err(|e| invalid(format!("--origami {path} line {}: {e}", i + 1)))?;
                    out.push(o);
                }
            }
            None => out.push(value.parse().map_err(|e| invalid(format!("--origami {value:?}: {e}")))?),
        }
    }
    if out.is_empty() {
        return Err(invalid("--origami: no origamis given"));
    }
    Ok(out)
}

pub fn single_origami(values: &[String]) -> Result<Origami> {
    let mut os = origamis(values)?;
    if os.len() != 1 {
        return Err(invalid(format!("--origami: expected exactly one origami, got {}", os.len())));
    }
    Ok(os.remove(0))
}

pub fn positive(flag: &str, x: f64) -> Result<f64> {
    if x.is_finite() && x > 0.0 {
        Ok(x)
    } else {
        Err(invalid(format!("{flag} must be positive and finite, got {x}")))
    }
}

pub fn tolerance(x: f64) -> Result<f64> {
    if x.is_finite() && x > 0.0 && x < 1.0 {
        Ok(x)
    } else {
        Err(invalid(format!("--tol must lie in (0, 1), got {x}")))
    }
}

pub fn delta(x: f64) -> Result<f64> {
    if x.is_finite() && x > 0.0 && x < 0.5 {
        Ok(x)
    } else {
        Err(invalid(format!("--delta must lie in (0, 1/2), got {x}")))
    }
}

/// `a..b` or `a..=b` (both inclusive), or a single `a`.
pub fn n_range(text: &str) -> Result<(usize, usize)> {
    let bad = || invalid(format!("--n: expected a..b, got {text:?}"));
    let (lo, hi) = match text.split_once("..") {
        Some((a, b)) => (a.trim(), b.trim().trim_start_matches('=')),
        None => (text.trim(), text.trim()),
    };
    let lo: usize = lo.parse().map_err(|_| bad())?;
    let hi: usize = hi.parse().map_err(|_| bad())?;
    if lo == 0 || hi < lo {
        return Err(invalid(format!("--n: need 1 ≤ a ≤ b, got {text:?}")));
    }
    Ok((lo, hi))
}

/// `start:step:end` (inclusive) or a comma-separated list, nondecreasing and
/// nonnegative.
pub fn t_grid(text: &str) -> Result<Vec<f64>> {
    let num = |s: &str| s.trim().parse::<f64>().map_err(|_| invalid(format!("--Tgrid: bad number {s:?}")));
    let grid = if text.contains(':') {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 {
            return Err(invalid(format!("--Tgrid: expected start:step:end, got {text:?}")));
        }
        let (a, step, b) = (num(parts[0])?, num(parts[1])?, num(parts[2])?);
        if !(step > 0.0 && step.is_finite() && b >= a) {
            return Err(invalid(format!("--Tgrid: need step > 0 and end ≥ start, got {text:?}")));
        }
        let m = ((b - a) / step).round();
        if (a + m * step - b).abs() > 1e-9 * b.abs().max(1.0) || m > 1e5 {
            return Err(invalid(format!("--Tgrid: end is not on the step grid in {text:?}")));
        }
        (0..=m as usize).map(|k| a + k as f64 * step).collect()
    } else {
        text.split(',').map(num).collect::<Result<Vec<f64>>>()?
    };
    if grid.iter().any(|t| !(t.is_finite() && *t >= 0.0)) || grid.windows(2).any(|w| w[1] < w[0]) {
        return Err(invalid(format!("--Tgrid: values must be nonnegative and nondecreasing, got {text:?}")));
    }
    Ok(grid)
}

/// `a,b,c,d`, row major, determinant 1.
pub fn matrix(text: &str) -> Result<Mat2> {
    let entries: Vec<f64> = text
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| invalid(format!("--matrix: expected a,b,c,d, got {text:?}")))?;
    if entries.len() != 4 || entries.iter().any(|x| !x.is_finite()) {
        return Err(invalid(format!("--matrix: expected four finite entries, got {text:?}")));
    }
    Ok(Mat2::new(entries[0], entries[1], entries[2], entries[3]))
}

pub fn affine(o: Origami, marked: bool, m: Option<&str>) -> Result<AffineSurface> {
    let base = Surface::new(o, marked);
    match m {
        None => Ok(AffineSurface::identity(base)),
        Some(text) => AffineSurface::new(base, matrix(text)?).map_err(|e| invalid(format!("--matrix: {e}"))),
    }
}
