//! Binary 8-bit PGM (`P5`).

use racah::analysis::ImageGrid;

use crate::error::{CliError, CliResult};

pub fn write_pgm(img: &ImageGrid) -> Vec<u8> {
    let (rows, cols) = img.dim();
    let mut out = format!("P5\n{cols} {rows}\n255\n").into_bytes();
    out.extend(img.to_u8());
    out
}

/// Next header token, skipping whitespace and `#` comments.
fn token(data: &[u8], pos: &mut usize) -> CliResult<String> {
    loop {
        while *pos < data.len() && data[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
        if *pos < data.len() && data[*pos] == b'#' {
            while *pos < data.len() && data[*pos] != b'\n' {
                *pos += 1;
            }
            continue;
        }
        break;
    }
    let start = *pos;
    while *pos < data.len() && !data[*pos].is_ascii_whitespace() {
        *pos += 1;
    }
    if start == *pos {
        return Err(CliError::input("truncated PGM header"));
    }
    Ok(String::from_utf8_lossy(&data[start..*pos]).into_owned())
}

fn number(data: &[u8], pos: &mut usize, what: &str) -> CliResult<usize> {
    let t = token(data, pos)?;
    t.parse()
        .map_err(|_| CliError::input(format!("PGM {what} {t:?} is not a number")))
}

/// Pixel rows become image rows.
pub fn read_pgm(data: &[u8]) -> CliResult<ImageGrid> {
    let mut pos = 0;
    if token(data, &mut pos)? != "P5" {
        return Err(CliError::input("only binary PGM (P5) is supported"));
    }
    let cols = number(data, &mut pos, "width")?;
    let rows = number(data, &mut pos, "height")?;
    let maxval = number(data, &mut pos, "maxval")?;
    if !(1..=255).contains(&maxval) {
        return Err(CliError::input(format!("PGM maxval {maxval} is not 8-bit")));
    }
    if rows == 0 || cols == 0 {
        return Err(CliError::input("PGM image is empty"));
    }
    // one whitespace byte separates the header from the raster
    pos += 1;
    let raster = data
        .get(pos..pos + rows * cols)
        .ok_or_else(|| CliError::input("PGM raster is truncated"))?;
    Ok(ImageGrid::from_u8(rows, cols, raster)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let data: Vec<u8> = (0..12).map(|v| v * 20).collect();
        let img = ImageGrid::from_u8(3, 4, &data).unwrap();
        let bytes = write_pgm(&img);
        assert!(bytes.starts_with(b"P5\n4 3\n255\n"));
        assert_eq!(read_pgm(&bytes).unwrap(), img);
    }

    #[test]
    fn comments_in_header() {
        let mut bytes = b"P5 # made by hand\n2 1\n# depth\n255\n".to_vec();
        bytes.extend([7, 9]);
        assert_eq!(read_pgm(&bytes).unwrap().to_u8(), vec![7, 9]);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(read_pgm(b"P2\n1 1\n255\n0").is_err());
        assert!(read_pgm(b"P5\n2 2\n255\n\x00\x01").is_err());
        assert!(read_pgm(b"P5\n1 1\n65535\n\x00\x00").is_err());
        assert!(read_pgm(b"P5\n").is_err());
    }
}
