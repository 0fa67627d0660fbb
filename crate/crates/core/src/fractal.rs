//! Similarity dimension and dyadic box-counting estimates for zero masks.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pattern::ZeroMask;

/// `ln(pieces) / ln(1 / scale)` for a set made of `pieces` copies scaled by `scale`.
pub fn similarity_dimension(pieces: u64, scale: f64) -> Result<f64> {
    if pieces == 0 {
        return Err(Error::invalid(
            "a self-similar set needs at least one piece",
        ));
    }
    if !(scale > 0.0 && scale < 1.0) {
        return Err(Error::invalid(format!(
            "scale factor {scale} is outside (0, 1)"
        )));
    }
    Ok((pieces as f64).ln() / (1.0 / scale).ln())
}

/// Number of `box_size × box_size` blocks that hold at least one set cell.
pub fn box_count(mask: &ZeroMask, box_size: usize) -> Result<u64> {
    let order = mask.order();
    if box_size == 0 || !box_size.is_power_of_two() || !order.is_multiple_of(box_size) {
        return Err(Error::invalid(format!(
            "box size {box_size} is not a power of two dividing {order}"
        )));
    }
    let boxes = order / box_size;
    let mut occupied = vec![false; boxes * boxes];
    for y in 0..order {
        let row = &mask.bits()[y * order..(y + 1) * order];
        let base = (y / box_size) * boxes;
        for (x, _) in row.iter().enumerate().filter(|(_, &b)| b) {
            occupied[base + x / box_size] = true;
        }
    }
    Ok(occupied.iter().filter(|&&b| b).count() as u64)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DimensionEstimate {
    pub slope: f64,
    /// `(box_size, box_count)` from the finest box upward.
    pub points: Vec<(u64, u64)>,
    /// Largest distance of a log-point from the fitted line.
    pub residual: f64,
}

/// Least-squares slope of `ln(count)` against `ln(order / box_size)` for box
/// sizes `1, 2, 4, …, order / 2`.
pub fn estimate_dimension(mask: &ZeroMask) -> Result<DimensionEstimate> {
    let order = mask.order();
    if order < 4 || !order.is_power_of_two() {
        return Err(Error::invalid(format!(
            "dimension estimation needs a power-of-two order of at least 4, got {order}"
        )));
    }
    if mask.is_empty() {
        return Err(Error::Degenerate("mask has no set cells".into()));
    }

    let mut points = Vec::new();
    let mut size = 1;
    while size < order {
        points.push((size as u64, box_count(mask, size)?));
        size *= 2;
    }

    let logs: Vec<(f64, f64)> = points
        .iter()
        .map(|&(s, c)| ((order as f64 / s as f64).ln(), (c as f64).ln()))
        .collect();
    let n = logs.len() as f64;
    let mean_x = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let residual = logs
        .iter()
        .map(|&(x, y)| (y - (intercept + slope * x)).abs())
        .fold(0.0, f64::max);

    Ok(DimensionEstimate {
        slope,
        points,
        residual,
    })
}
