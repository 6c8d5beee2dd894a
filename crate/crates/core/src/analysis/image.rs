use ndarray::{s, Array2};
use serde::{Deserialize, Serialize};

use crate::error::{RacahError, Result};
use crate::matrix::PolyMatrix;
use crate::params::RacahParams;

/// Real-valued 2D signal, rows indexed by `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct ImageGrid {
    pixels: Array2<f64>,
    value_range: (f64, f64),
}

impl ImageGrid {
    pub fn new(pixels: Array2<f64>) -> Result<Self> {
        if pixels.iter().any(|v| !v.is_finite()) {
            return Err(RacahError::DomainError(
                "image contains non-finite pixels".into(),
            ));
        }
        let value_range = pixels
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
                (lo.min(v), hi.max(v))
            });
        Ok(Self {
            pixels,
            value_range,
        })
    }

    pub fn from_u8(rows: usize, cols: usize, data: &[u8]) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(RacahError::DimensionMismatch(format!(
                "{} bytes for a {rows}x{cols} image",
                data.len()
            )));
        }
        let pixels = Array2::from_shape_fn((rows, cols), |(i, j)| f64::from(data[i * cols + j]));
        Self::new(pixels)
    }

    pub fn pixels(&self) -> &Array2<f64> {
        &self.pixels
    }

    pub fn dim(&self) -> (usize, usize) {
        self.pixels.dim()
    }

    /// `(min, max)` of the stored values.
    pub fn value_range(&self) -> (f64, f64) {
        self.value_range
    }

    /// Pixels rounded and clamped to `0..=255`, row-major.
    pub fn to_u8(&self) -> Vec<u8> {
        self.pixels
            .iter()
            .map(|v| v.round().clamp(0.0, 255.0) as u8)
            .collect()
    }
}

/// Moments `phi_nm`, rows by the degree in `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentMatrix {
    pub coeffs: Array2<f64>,
    pub params_x: RacahParams,
    pub params_y: RacahParams,
}

fn check_sizes(rows: usize, cols: usize, rx: &PolyMatrix, ry: &PolyMatrix) -> Result<()> {
    if rx.n_size() != rows || ry.n_size() != cols {
        return Err(RacahError::DimensionMismatch(format!(
            "image is {rows}x{cols}, polynomials cover {}x{}",
            rx.n_size(),
            ry.n_size()
        )));
    }
    Ok(())
}

/// `phi = R_x f R_y^T`.
pub fn moments_2d(img: &ImageGrid, rx: &PolyMatrix, ry: &PolyMatrix) -> Result<MomentMatrix> {
    let (rows, cols) = img.dim();
    check_sizes(rows, cols, rx, ry)?;
    let coeffs = rx.values().dot(img.pixels()).dot(&ry.values().t());
    Ok(MomentMatrix {
        coeffs,
        params_x: *rx.params(),
        params_y: *ry.params(),
    })
}

/// `f^ = R_x^T phi R_y` using the moments with `n, m < order_cap`. Each axis
/// is clipped to its own size, so the cap ranges up to the longer side.
pub fn reconstruct_2d(
    mom: &MomentMatrix,
    rx: &PolyMatrix,
    ry: &PolyMatrix,
    order_cap: usize,
) -> Result<ImageGrid> {
    let (kx, ky) = mom.coeffs.dim();
    if kx != rx.rows() || ky != ry.rows() {
        return Err(RacahError::DimensionMismatch(format!(
            "{kx}x{ky} moments, polynomials hold {}x{} rows",
            rx.rows(),
            ry.rows()
        )));
    }
    if order_cap > rx.n_size().max(ry.n_size()) {
        return Err(RacahError::DimensionMismatch(format!(
            "order cap {order_cap} exceeds the image size"
        )));
    }
    let (cx, cy) = (order_cap.min(kx), order_cap.min(ky));
    let px = rx.values().slice(s![..cx, ..]);
    let py = ry.values().slice(s![..cy, ..]);
    let phi = mom.coeffs.slice(s![..cx, ..cy]);
    ImageGrid::new(px.t().dot(&phi).dot(&py))
}

/// `sum (I - I_r)^2 / sum I^2`.
pub fn nmse(i: &ImageGrid, r: &ImageGrid) -> Result<f64> {
    if i.dim() != r.dim() {
        return Err(RacahError::DimensionMismatch(format!(
            "{:?} vs {:?}",
            i.dim(),
            r.dim()
        )));
    }
    let energy: f64 = i.pixels.iter().map(|v| v * v).sum();
    if energy == 0.0 {
        return Err(RacahError::ZeroSignal);
    }
    let err: f64 = i
        .pixels
        .iter()
        .zip(r.pixels.iter())
        .map(|(a, b)| (a - b) * (a - b))
        .sum();
    Ok(err / energy)
}

/// Logarithm used by [`psnr`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PsnrLog {
    /// Decibels.
    #[default]
    Base10,
    Natural,
}

/// `10 (log max(I^2) - log MSE)`; `+inf` when the images are equal.
pub fn psnr(i: &ImageGrid, r: &ImageGrid, log: PsnrLog) -> Result<f64> {
    if i.dim() != r.dim() {
        return Err(RacahError::DimensionMismatch(format!(
            "{:?} vs {:?}",
            i.dim(),
            r.dim()
        )));
    }
    let count = i.pixels.len() as f64;
    let mse = i
        .pixels
        .iter()
        .zip(r.pixels.iter())
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        / count;
    if mse == 0.0 {
        return Ok(f64::INFINITY);
    }
    let peak = i.pixels.iter().fold(0.0f64, |m, v| m.max(v * v));
    let ln = |v: f64| match log {
        PsnrLog::Base10 => v.log10(),
        PsnrLog::Natural => v.ln(),
    };
    Ok(10.0 * (ln(peak) - ln(mse)))
}
