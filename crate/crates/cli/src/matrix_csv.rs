//! `# racah a=.. b=.. alpha=.. beta=.. N=.. alg=..` followed by one row per degree.

use std::fmt::Write as _;

use ndarray::Array2;
use racah::{PolyMatrix, RacahParams};

use crate::error::{CliError, CliResult};

/// Matrix read from a CSV file together with the algorithm tag of its header.
#[derive(Debug, Clone)]
pub struct MatrixFile {
    pub matrix: PolyMatrix,
    pub alg: String,
}

/// Seventeen significant digits, enough for an exact round trip.
pub fn write_matrix(m: &PolyMatrix, alg: &str) -> String {
    let p = m.params();
    let mut out = format!(
        "# racah a={} b={} alpha={} beta={} N={} alg={}\n",
        p.a, p.b, p.alpha, p.beta, p.n_size, alg
    );
    for row in m.values().rows() {
        let mut first = true;
        for v in row {
            if !first {
                out.push(',');
            }
            first = false;
            write!(out, "{v:.16e}").unwrap();
        }
        out.push('\n');
    }
    out
}

fn header_field<'a>(fields: &[(&'a str, &'a str)], key: &str) -> CliResult<&'a str> {
    fields
        .iter()
        .find(|(k, _)| *k == key)
        .map(|(_, v)| *v)
        .ok_or_else(|| CliError::input(format!("header lacks {key}=")))
}

fn header_number(fields: &[(&str, &str)], key: &str) -> CliResult<f64> {
    let v = header_field(fields, key)?;
    v.parse()
        .map_err(|_| CliError::input(format!("header field {key}={v} is not a number")))
}

pub fn read_matrix(text: &str) -> CliResult<MatrixFile> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| CliError::input("empty matrix file"))?;
    let rest = header
        .strip_prefix("# racah")
        .ok_or_else(|| CliError::input("first line must start with '# racah'"))?;
    let fields: Vec<(&str, &str)> = rest
        .split_whitespace()
        .filter_map(|kv| kv.split_once('='))
        .collect();
    let p = RacahParams::new(
        header_number(&fields, "a")?,
        header_number(&fields, "b")?,
        header_number(&fields, "alpha")?,
        header_number(&fields, "beta")?,
    )?;
    let n_size = header_number(&fields, "N")?;
    if n_size != p.n_size as f64 {
        return Err(CliError::input(format!(
            "N={n_size} disagrees with b - a = {}",
            p.n_size
        )));
    }
    let alg = header_field(&fields, "alg")
        .unwrap_or("unknown")
        .to_string();
    let mut data = Vec::with_capacity(p.n_size * p.n_size);
    let mut rows = 0;
    for (i, line) in lines.enumerate() {
        let before = data.len();
        for cell in line.split(',') {
            let v: f64 = cell.trim().parse().map_err(|_| {
                CliError::input(format!("row {i}: {:?} is not a number", cell.trim()))
            })?;
            data.push(v);
        }
        if data.len() - before != p.n_size {
            return Err(CliError::input(format!(
                "row {i} has {} entries, expected {}",
                data.len() - before,
                p.n_size
            )));
        }
        rows += 1;
    }
    let values = Array2::from_shape_vec((rows, p.n_size), data)
        .map_err(|e| CliError::input(e.to_string()))?;
    let matrix = PolyMatrix::new(p, values).map_err(|e| CliError::input(e.to_string()))?;
    Ok(MatrixFile { matrix, alg })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_exact() {
        let p = RacahParams::new(0.5, 3.5, 0.25, 0.0).unwrap();
        let values = Array2::from_shape_vec(
            (2, 3),
            vec![
                0.1,
                -1.0 / 3.0,
                f64::MIN_POSITIVE,
                1e300,
                -2.0f64.sqrt(),
                0.0,
            ],
        )
        .unwrap();
        let m = PolyMatrix::new(p, values).unwrap();
        let back = read_matrix(&write_matrix(&m, "imst")).unwrap();
        assert_eq!(back.matrix, m);
        assert_eq!(back.alg, "imst");
    }

    #[test]
    fn malformed_files() {
        for text in [
            "",
            "1,2\n",
            "# racah a=0 b=2 alpha=0 beta=0 N=2 alg=x\n1,2\n3\n",
            "# racah a=0 b=2 alpha=0 beta=0 N=3 alg=x\n1,2\n",
            "# racah a=0 b=2 alpha=0 N=2 alg=x\n1,2\n",
            "# racah a=0 b=2 alpha=0 beta=0 N=2 alg=x\n1,z\n",
            "# racah a=0 b=2 alpha=0 beta=0 N=2 alg=x\n1,NaN\n",
        ] {
            assert!(read_matrix(text).is_err(), "{text:?}");
        }
    }
}
