//! Peak location, half-maximum width and golden-section maximization on sampled curves.

use crate::error::{Error, Result};

/// Global maximum of a sampled curve and its half-maximum crossings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Peak {
    pub index: usize,
    pub location: f64,
    pub value: f64,
    /// Interpolated half-maximum crossing below the peak.
    pub left: f64,
    /// Interpolated half-maximum crossing above the peak.
    pub right: f64,
}

impl Peak {
    pub fn fwhm(&self) -> f64 {
        self.right - self.left
    }
}

pub fn validate_grid(grid: &[f64], min_points: usize) -> Result<()> {
    if grid.len() < min_points {
        return Err(Error::InvalidGrid(format!(
            "{} points, need at least {min_points}",
            grid.len()
        )));
    }
    if grid.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidGrid("non-finite grid value".into()));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidGrid("grid must be strictly increasing".into()));
    }
    Ok(())
}

/// Index of the largest sample; ties go to the sample closest to zero.
pub fn argmax(grid: &[f64], values: &[f64]) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (i, &v) in values.iter().enumerate() {
        if !v.is_finite() {
            continue;
        }
        best = match best {
            None => Some(i),
            Some(b) if v > values[b] || (v == values[b] && grid[i].abs() < grid[b].abs()) => Some(i),
            keep => keep,
        };
    }
    best
}

/// Finds the global peak and its FWHM by linear interpolation between the
/// samples that straddle half maximum.
pub fn find_peak(grid: &[f64], values: &[f64]) -> Result<Peak> {
    assert_eq!(grid.len(), values.len());
    let index = argmax(grid, values).ok_or(Error::NoFeature)?;
    let peak = values[index];
    let floor = values
        .iter()
        .copied()
        .filter(|v| v.is_finite())
        .fold(f64::INFINITY, f64::min);
    if peak <= 0.0 || peak - floor <= 1e-12 * peak {
        return Err(Error::NoFeature);
    }
    let half = 0.5 * peak;
    let crossing = |outer: usize, inner: usize| {
        let (x0, x1) = (grid[outer], grid[inner]);
        let (y0, y1) = (values[outer], values[inner]);
        x0 + (half - y0) / (y1 - y0) * (x1 - x0)
    };
    let left = (0..index)
        .rev()
        .find(|&j| values[j] <= half)
        .map(|j| crossing(j, j + 1))
        .ok_or(Error::UnresolvedWidth)?;
    let right = (index + 1..grid.len())
        .find(|&j| values[j] <= half)
        .map(|j| crossing(j, j - 1))
        .ok_or(Error::UnresolvedWidth)?;
    Ok(Peak {
        index,
        location: grid[index],
        value: peak,
        left,
        right,
    })
}

/// Golden-section search for the maximum of a unimodal `f` on `[a, b]`.
pub fn golden_section_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..200 {
        if (b - a).abs() <= tol {
            break;
        }
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// `n` evenly spaced points from `start` to `stop` inclusive.
pub fn linspace(start: f64, stop: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![start],
        _ => {
            let step = (stop - start) / (n - 1) as f64;
            (0..n)
                .map(|i| if i == n - 1 { stop } else { start + step * i as f64 })
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lorentzian_width() {
        let w = 0.37;
        let grid = linspace(-5.0, 5.0, 2001);
        let values: Vec<f64> = grid.iter().map(|x| 1.0 / (1.0 + (x / w).powi(2))).collect();
        let p = find_peak(&grid, &values).unwrap();
        let step = grid[1] - grid[0];
        assert!((p.fwhm() - 2.0 * w).abs() <= step);
        assert_eq!(p.location, 0.0);
        assert_eq!(p.value, 1.0);
    }

    #[test]
    fn flat_curve_has_no_feature() {
        let grid = linspace(0.0, 1.0, 32);
        assert_eq!(find_peak(&grid, &[0.0; 32]), Err(Error::NoFeature));
        assert_eq!(find_peak(&grid, &[2.5; 32]), Err(Error::NoFeature));
    }

    #[test]
    fn truncated_feature_is_unresolved() {
        let grid = linspace(0.0, 1.0, 32);
        let values: Vec<f64> = grid.iter().map(|x| 1.0 + x).collect();
        assert_eq!(find_peak(&grid, &values), Err(Error::UnresolvedWidth));
    }

    #[test]
    fn ties_prefer_smaller_magnitude() {
        let grid = [-2.0, -1.0, 0.5, 1.0, 2.0];
        let values = [0.0, 3.0, 1.0, 3.0, 0.0];
        assert_eq!(argmax(&grid, &values), Some(1));
        let grid = [-2.0, -1.0, 0.5, 0.8, 2.0];
        assert_eq!(argmax(&grid, &values), Some(3));
    }

    #[test]
    fn grid_validation() {
        assert!(validate_grid(&linspace(0.0, 1.0, 16), 16).is_ok());
        assert!(validate_grid(&linspace(0.0, 1.0, 15), 16).is_err());
        assert!(validate_grid(&[0.0, 1.0, 1.0], 2).is_err());
        assert!(validate_grid(&[0.0, f64::NAN], 2).is_err());
    }

    #[test]
    fn golden_section_finds_parabola_vertex() {
        let (x, fx) = golden_section_max(|x| 3.0 - (x - 0.3).powi(2), -1.0, 2.0, 1e-12);
        assert!((x - 0.3).abs() < 1e-6);
        assert!((fx - 3.0).abs() < 1e-12);
    }

    #[test]
    fn linspace_endpoints_exact() {
        let g = linspace(-2.0, 2.0, 4001);
        assert_eq!(g[0], -2.0);
        assert_eq!(g[4000], 2.0);
        assert_eq!(g.len(), 4001);
    }
}
