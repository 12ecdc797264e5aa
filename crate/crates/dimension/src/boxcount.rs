use std::collections::HashSet;
use std::f64::consts::TAU;

use crate::error::DimensionError;
use crate::estimate::{DimensionEstimate, Method};

/// A subset of the circle, in angles.
#[derive(Debug, Clone, PartialEq)]
pub enum BoxInput {
    Points(Vec<f64>),
    /// (center, half-width) pairs.
    Arcs(Vec<(f64, f64)>),
}

/// Number of grid arcs of angular size eps = 2 pi / cells meeting the set.
pub fn occupied_cells(input: &BoxInput, cells: u64) -> u64 {
    let eps = TAU / cells as f64;
    let cell = |t: f64| ((t.rem_euclid(TAU) / eps).floor() as u64).min(cells - 1);
    let mut hit = HashSet::new();
    match input {
        BoxInput::Points(ps) => {
            for &t in ps {
                hit.insert(cell(t));
            }
        }
        BoxInput::Arcs(arcs) => {
            for &(c, w) in arcs {
                if 2.0 * w >= TAU {
                    return cells;
                }
                let a = ((c - w).rem_euclid(TAU) / eps).floor() as u64;
                let span = ((2.0 * w) / eps).ceil() as u64 + 1;
                for k in 0..span.min(cells) {
                    hit.insert((a + k) % cells);
                }
                if hit.len() as u64 == cells {
                    return cells;
                }
            }
        }
    }
    hit.len() as u64
}

/// Log-spaced cell counts from `coarse` to `fine` cells around the circle.
pub fn cell_grid(coarse: u64, fine: u64, points: usize) -> Vec<u64> {
    let (a, b) = ((coarse.max(1) as f64).ln(), (fine.max(coarse).max(1) as f64).ln());
    let mut out: Vec<u64> = (0..points.max(2))
        .map(|i| (a + (b - a) * i as f64 / (points.max(2) - 1) as f64).exp().round() as u64)
        .collect();
    out.dedup();
    out
}

/// Slope of ln N(eps) against ln(1/eps) by least squares.
pub fn box_count(input: &BoxInput, cells: &[u64]) -> Result<DimensionEstimate, DimensionError> {
    let mut cells = cells.to_vec();
    cells.sort_unstable();
    cells.dedup();
    cells.retain(|&c| c > 0);
    if cells.len() < 2 || (*cells.last().unwrap() as f64) < 10.0 * cells[0] as f64 {
        return Err(DimensionError::DegenerateFit("the grid must span a decade with at least two scales".into()));
    }
    let xs: Vec<f64> = cells.iter().map(|&c| (c as f64 / TAU).ln()).collect();
    let ys: Vec<f64> = cells.iter().map(|&c| (occupied_cells(input, c) as f64).ln()).collect();
    if ys.iter().all(|y| y.is_infinite()) {
        return Err(DimensionError::DegenerateFit("the set meets no grid arc".into()));
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let slope = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum::<f64>() / sxx;
    let resid: Vec<f64> = xs.iter().zip(&ys).map(|(x, y)| y - my - slope * (x - mx)).collect();
    let rss: f64 = resid.iter().map(|r| r * r).sum();
    let stderr = if xs.len() > 2 { (rss / (n - 2.0) / sxx).sqrt() } else { 0.0 };
    let max_resid = resid.iter().fold(0.0f64, |m, r| m.max(r.abs()));
    Ok(DimensionEstimate::new(Method::BoxCount, slope, stderr)
        .with("scales", n)
        .with("rms_residual", (rss / n).sqrt())
        .with("max_residual", max_resid)
        .with("slope_stderr", stderr)
        .note("box-counting dimension, used as the computable stand-in for Hausdorff dimension"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_sets() {
        let grid = cell_grid(8, 1 << 16, 12);
        let e = box_count(&BoxInput::Points(vec![1.0]), &grid).unwrap();
        assert!(e.value.abs() < 1e-12);
        let e = box_count(&BoxInput::Arcs(vec![(0.0, 4.0)]), &grid).unwrap();
        assert!((e.value - 1.0).abs() < 1e-12);
        // two half circles
        let e = box_count(&BoxInput::Arcs(vec![(0.0, 1.6), (3.1, 1.6)]), &grid).unwrap();
        assert!((e.value - 1.0).abs() < 1e-3, "{e:?}");
    }

    #[test]
    fn grid_must_span_a_decade() {
        assert!(box_count(&BoxInput::Points(vec![1.0]), &[10, 20, 50]).is_err());
        assert!(box_count(&BoxInput::Points(vec![1.0]), &[10]).is_err());
    }

    #[test]
    fn arc_cells() {
        // an arc of a quarter of the circle meets a quarter of the cells, plus edges
        let n = occupied_cells(&BoxInput::Arcs(vec![(1.0, TAU / 8.0)]), 1000);
        assert!((250..=252).contains(&n), "{n}");
    }
}
