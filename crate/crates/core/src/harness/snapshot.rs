//! Wave-function snapshots as CSV.
//!
//! ```text
//! # n = 200
//! # length = 2e0
//! # time = 4e-2
//! # representation = interface
//! x,re,im,abs2
//! 0e0,1e0,0e0,1e0
//! ...
//! ```
//!
//! Numbers use shortest round-trip formatting, so reading a written file
//! gives back the same bits.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex;

use crate::grid::{GridCircle, Representation, WaveFunction};
use crate::{Error, Result};

/// A state together with its sample time.
#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub time: f64,
    pub state: WaveFunction<f64>,
}

pub fn snapshot_to_string(u: &WaveFunction<f64>, time: f64) -> String {
    let g = u.grid();
    let mut s = String::with_capacity(64 * (u.len() + 5));
    let _ = writeln!(s, "# n = {}", g.n_intervals());
    let _ = writeln!(s, "# length = {:e}", g.length());
    let _ = writeln!(s, "# time = {time:e}");
    let _ = writeln!(s, "# representation = {}", u.representation());
    s.push_str("x,re,im,abs2\n");
    for (j, z) in u.values().iter().enumerate() {
        let _ = writeln!(s, "{:e},{:e},{:e},{:e}", g.x(j), z.re, z.im, z.norm_sqr());
    }
    s
}

pub fn write_snapshot(u: &WaveFunction<f64>, time: f64, path: &Path) -> Result<()> {
    std::fs::write(path, snapshot_to_string(u, time))
        .map_err(|e| Error::io(format!("writing {}", path.display()), e))
}

pub fn read_snapshot(path: &Path) -> Result<Snapshot> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::io(format!("reading {}", path.display()), e))?;
    parse_snapshot(&text, path)
}

/// Reads a snapshot and checks it lives on `grid` in representation `rep`.
pub fn read_snapshot_expect(path: &Path, grid: &GridCircle<f64>, rep: Representation) -> Result<Snapshot> {
    let snap = read_snapshot(path)?;
    let g = snap.state.grid();
    if g.n_intervals() != grid.n_intervals() || g.length() != grid.length() || snap.state.representation() != rep {
        return Err(Error::GridMismatch(format!(
            "{}: file holds {} N={} length={}, expected {rep} N={} length={}",
            path.display(),
            snap.state.representation(),
            g.n_intervals(),
            g.length(),
            grid.n_intervals(),
            grid.length()
        )));
    }
    Ok(snap)
}

pub(crate) fn parse_snapshot(text: &str, path: &Path) -> Result<Snapshot> {
    let err = |line: usize, message: String| Error::Parse {
        path: path.to_path_buf(),
        line,
        message,
    };
    let mut n: Option<usize> = None;
    let mut length: Option<f64> = None;
    let mut time: Option<f64> = None;
    let mut rep: Option<Representation> = None;
    let mut values = Vec::new();
    let mut xs = Vec::new();
    let mut seen_columns = false;

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(h) = line.strip_prefix('#') {
            if seen_columns {
                return Err(err(line_no, "header line after data".into()));
            }
            let (k, v) = h
                .split_once('=')
                .ok_or_else(|| err(line_no, format!("malformed header '{line}'")))?;
            let v = v.trim();
            let bad = |what: &str| err(line_no, format!("invalid {what} '{v}'"));
            match k.trim() {
                "n" => n = Some(v.parse().map_err(|_| bad("n"))?),
                "length" => length = Some(v.parse().map_err(|_| bad("length"))?),
                "time" => time = Some(v.parse().map_err(|_| bad("time"))?),
                "representation" => rep = Some(v.parse().map_err(|_| bad("representation"))?),
                other => return Err(err(line_no, format!("unknown header key '{other}'"))),
            }
            continue;
        }
        if !seen_columns {
            if line != "x,re,im,abs2" {
                return Err(err(line_no, format!("expected column line 'x,re,im,abs2', got '{line}'")));
            }
            seen_columns = true;
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 4 {
            return Err(err(line_no, format!("expected 4 columns, found {}", fields.len())));
        }
        let mut nums = [0.0f64; 4];
        for (slot, f) in nums.iter_mut().zip(&fields) {
            *slot = f
                .trim()
                .parse()
                .map_err(|_| err(line_no, format!("invalid number '{f}'")))?;
        }
        xs.push((line_no, nums[0]));
        values.push(Complex::new(nums[1], nums[2]));
    }

    let last = text.lines().count().max(1);
    let n = n.ok_or_else(|| err(last, "missing header 'n'".into()))?;
    let length = length.ok_or_else(|| err(last, "missing header 'length'".into()))?;
    let time = time.ok_or_else(|| err(last, "missing header 'time'".into()))?;
    let rep = rep.ok_or_else(|| err(last, "missing header 'representation'".into()))?;
    let grid = GridCircle::new(length, n).map_err(|e| err(1, e.to_string()))?;
    if values.len() != grid.points(rep) {
        return Err(err(
            last,
            format!("expected {} data rows for {rep} N={n}, found {}", grid.points(rep), values.len()),
        ));
    }
    for (j, &(line_no, x)) in xs.iter().enumerate() {
        if x != grid.x(j) {
            return Err(err(line_no, format!("x = {x:e} does not match grid point {j}")));
        }
    }
    Ok(Snapshot {
        time,
        state: WaveFunction::new(grid, rep, values)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random(rep: Representation) -> WaveFunction<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let g = GridCircle::new(2.0, 50).unwrap();
        let v = (0..g.points(rep))
            .map(|_| Complex::new(rng.gen_range(-1.0..1.0) * 1e-3, rng.gen::<f64>() * 7.0))
            .collect();
        WaveFunction::new(g, rep, v).unwrap()
    }

    #[test]
    fn round_trip_is_bitwise() {
        for rep in [Representation::Interface, Representation::Periodic] {
            let u = random(rep);
            let text = snapshot_to_string(&u, 0.1 + 0.2);
            let back = parse_snapshot(&text, Path::new("s.csv")).unwrap();
            assert_eq!(back.time, 0.1 + 0.2);
            assert_eq!(back.state, u);
        }
    }

    #[test]
    fn abs2_column_matches() {
        let u = random(Representation::Interface);
        let text = snapshot_to_string(&u, 0.0);
        for line in text.lines().skip(5) {
            let f: Vec<f64> = line.split(',').map(|s| s.parse().unwrap()).collect();
            assert_eq!(f[3], f[1] * f[1] + f[2] * f[2]);
        }
    }

    #[test]
    fn malformed_files_report_the_line() {
        let u = random(Representation::Interface);
        let text = snapshot_to_string(&u, 0.0);
        let mut lines: Vec<String> = text.lines().map(String::from).collect();
        lines[9] = "1e0,2e0,oops,3e0".into();
        let err = parse_snapshot(&lines.join("\n"), Path::new("s.csv")).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 10, .. }), "{err}");

        let mut lines: Vec<String> = text.lines().map(String::from).collect();
        lines[7] = "1e0,2e0".into();
        let err = parse_snapshot(&lines.join("\n"), Path::new("s.csv")).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 8, .. }), "{err}");

        let short: String = text.lines().take(20).map(|l| format!("{l}\n")).collect();
        assert!(matches!(parse_snapshot(&short, Path::new("s.csv")), Err(Error::Parse { .. })));

        let err = parse_snapshot("# n = 50\n# bogus = 1\n", Path::new("s.csv")).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn header_mismatch_is_a_grid_error() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s.csv");
        let u = random(Representation::Interface);
        write_snapshot(&u, 0.5, &path).unwrap();
        let ok = read_snapshot_expect(&path, u.grid(), Representation::Interface).unwrap();
        assert_eq!(ok.state, u);
        let other = GridCircle::new(2.0, 100).unwrap();
        assert!(matches!(
            read_snapshot_expect(&path, &other, Representation::Interface),
            Err(Error::GridMismatch(_))
        ));
        assert!(matches!(
            read_snapshot_expect(&path, u.grid(), Representation::Periodic),
            Err(Error::GridMismatch(_))
        ));
        assert!(matches!(read_snapshot(&dir.path().join("missing.csv")), Err(Error::Io { .. })));
    }
}
