//! Data behind each published figure, at the parameters of its caption.
//! All rates are in units of κ_i (κ_i = 1 Hz internally).

use faraday_core::single_photon::{feature_grid, fisher_unit, FEATURE_POINTS};
use faraday_core::{
    fisher_curve_of, fisher_information, linspace, outcome_probabilities, probability_derivatives,
    sensitivity_sp_auto, FisherCurve, FisherKind, SystemParams,
};
use rayon::prelude::*;

use crate::config::{RunConfig, DEFAULT_POWER, DEFAULT_TAU_M, DEFAULT_TEMPERATURE};
use crate::manifest::RunManifest;
use crate::sweep::with_pool;
use crate::table::{Cell, Table};

pub const FIGURES: [u8; 5] = [3, 4, 5, 6, 7];

/// G/κ_i traces of the κ_ex sweep.
pub const FIG5_COUPLINGS: [f64; 3] = [0.02, 0.1, 0.2];

#[derive(Debug, Clone, PartialEq)]
pub struct FigureFile {
    pub name: String,
    pub table: Table,
    pub manifest: RunManifest,
}

impl FigureFile {
    pub fn render(&self) -> String {
        self.table.to_csv_string(&self.manifest)
    }
}

fn manifest(id: u8, params: SystemParams, note: &str) -> RunManifest {
    let config = RunConfig {
        params,
        temperature: DEFAULT_TEMPERATURE,
        power: DEFAULT_POWER,
        tau_m: DEFAULT_TAU_M,
    };
    RunManifest::new(format!("figure {id}"))
        .with_config(&config)
        .note("rates in units of kappa_i; Fisher information in (mu_B g_e/kappa_i)^2")
        .note(note)
}

fn file(name: &str, table: Table, manifest: RunManifest) -> FigureFile {
    FigureFile { name: name.into(), table, manifest }
}

/// Figure data for `id`, or `None` for an unknown figure.
pub fn figure(id: u8, jobs: usize) -> Option<Vec<FigureFile>> {
    let files = match id {
        3 => fig3(jobs),
        4 => fig4(jobs),
        5 => fig5(jobs),
        6 => fig6(jobs),
        7 => fig7(jobs),
        _ => return None,
    };
    Some(files)
}

fn par_rows(jobs: usize, grid: &[f64], row: impl Fn(f64) -> Vec<f64> + Sync) -> Vec<Vec<f64>> {
    with_pool(jobs, || grid.par_iter().map(|&x| row(x)).collect())
}

/// Outcome probabilities and their slopes against δ.
pub fn fig3(jobs: usize) -> Vec<FigureFile> {
    let p = SystemParams::baseline(1.0);
    let grid = linspace(-2.0, 2.0, 4001);
    let mut t = Table::new(["delta/kappa_i", "P_V", "P_H", "P_empty", "dP_V", "dP_H", "dP_empty"]);
    for row in par_rows(jobs, &grid, |d| {
        let q = p.with_signal(d);
        let pr = outcome_probabilities(&q).as_array();
        let dp = probability_derivatives(&q);
        vec![d, pr[0], pr[1], pr[2], dp[0], dp[1], dp[2]]
    }) {
        t.push_numbers(&row);
    }
    vec![file("fig3_probabilities.csv", t, manifest(3, p, "slopes dP/d(delta) in 1/kappa_i"))]
}

fn curve_table(curve: &FisherCurve, column: &str) -> Table {
    let unit = fisher_unit(curve.kappa_i);
    let mut t = Table::new(["delta/kappa_i", column]);
    for (d, f) in curve.grid.iter().zip(&curve.values) {
        t.push_numbers(&[*d, f / unit]);
    }
    t
}

fn summary_header() -> Table {
    Table::new(["peak", "peak_location/kappa_i", "fwhm/kappa_i", "half_width/kappa_i"])
}

fn summary_row(c: &FisherCurve) -> Vec<f64> {
    vec![c.peak_scaled(), c.peak_location, c.fwhm, 0.5 * c.fwhm]
}

/// Fisher curve on the feature grid, computed inside a pool.
fn feature_curve(p: &SystemParams, kind: FisherKind) -> Option<FisherCurve> {
    let grid = feature_grid(p, kind, FEATURE_POINTS).ok()?;
    fisher_curve_of(p, &grid, kind).ok()
}

/// Single-photon Fisher information against δ.
pub fn fig4(jobs: usize) -> Vec<FigureFile> {
    let p = SystemParams::baseline(1.0);
    let grid = linspace(-1.0, 1.0, 4001);
    let values: Vec<f64> = with_pool(jobs, || {
        grid.par_iter().map(|&d| fisher_information(&p.with_signal(d), FisherKind::AllOutcomes)).collect()
    });
    let curve = FisherCurve {
        kind: FisherKind::AllOutcomes,
        grid: grid.clone(),
        values,
        peak_value: f64::NAN,
        peak_location: f64::NAN,
        fwhm: f64::NAN,
        kappa_i: 1.0,
    };
    let mut summary = summary_header();
    if let Some(c) = feature_curve(&p, FisherKind::AllOutcomes) {
        summary.push_numbers(&summary_row(&c));
    }
    vec![
        file("fig4_fisher.csv", curve_table(&curve, "F_I"), manifest(4, p, "F_I over all three outcomes")),
        file("fig4_summary.csv", summary, manifest(4, p, "peak and width from a 4001-point grid across the feature")),
    ]
}

/// κ_ex values of the sensitivity sweep, in κ_i.
pub fn fig5_kappa_ex() -> Vec<f64> {
    linspace(0.5, 20.0, 79)
}

/// Single-photon sensitivity against κ_ex for three couplings.
pub fn fig5(jobs: usize) -> Vec<FigureFile> {
    let cells: Vec<(f64, f64)> = FIG5_COUPLINGS
        .iter()
        .flat_map(|&g| fig5_kappa_ex().into_iter().map(move |k| (g, k)))
        .collect();
    let rows: Vec<Vec<Cell>> = with_pool(jobs, || {
        cells
            .par_iter()
            .map(|&(g, k)| {
                let p = SystemParams::baseline(1.0).with_coupling(g).with_kappa_ex(k);
                let (sens, peak, width) = match sensitivity_sp_auto(&p) {
                    Ok(r) => (r.scaled(), r.fisher_peak / fisher_unit(1.0), r.fwhm),
                    Err(_) => (f64::NAN, f64::NAN, f64::NAN),
                };
                vec![
                    Cell::Num(g),
                    Cell::Num(k),
                    Cell::Num(sens),
                    Cell::Num(peak),
                    Cell::Num(width),
                    Cell::Flag(!sens.is_finite()),
                ]
            })
            .collect()
    });
    let mut t = Table::new(["G/kappa_i", "kappa_ex/kappa_i", "sensitivity", "peak_F_I", "fwhm/kappa_i", "flag"]);
    for r in rows {
        t.push(r);
    }
    let p = SystemParams::baseline(1.0);
    vec![file(
        "fig5_sensitivity.csv",
        t,
        manifest(5, p, "sensitivity in sqrt(kappa_i)/(mu_B g_e); G and kappa_ex taken from the columns"),
    )]
}

/// Couplings of the (G, δ) map, in κ_i.
pub fn fig6_couplings() -> Vec<f64> {
    linspace(0.02, 0.2, 37)
}

/// Fisher information over coupling and δ at κ_ex = 10κ_i.
pub fn fig6(jobs: usize) -> Vec<FigureFile> {
    let base = SystemParams::optimized(1.0);
    let deltas = linspace(-0.01, 0.01, 2001);
    let gs = fig6_couplings();
    let cells: Vec<(f64, f64)> = gs.iter().flat_map(|&g| deltas.iter().map(move |&d| (g, d))).collect();
    let map: Vec<f64> = with_pool(jobs, || {
        cells
            .par_iter()
            .map(|&(g, d)| fisher_information(&base.with_coupling(g).with_signal(d), FisherKind::AllOutcomes))
            .collect()
    });
    let mut heat = Table::new(["G/kappa_i", "delta/kappa_i", "F_I"]);
    for ((g, d), f) in cells.iter().zip(map) {
        heat.push_numbers(&[*g, *d, f / fisher_unit(1.0)]);
    }
    let summaries: Vec<Option<FisherCurve>> = with_pool(jobs, || {
        gs.par_iter()
            .map(|&g| feature_curve(&base.with_coupling(g), FisherKind::AllOutcomes))
            .collect()
    });
    let mut summary = Table::new(["G/kappa_i", "peak", "peak_location/kappa_i", "fwhm/kappa_i", "half_width/kappa_i"]);
    for (g, c) in gs.iter().zip(summaries) {
        let row = c.map_or(vec![f64::NAN; 4], |c| summary_row(&c));
        summary.push_numbers(&[vec![*g], row].concat());
    }
    vec![
        file("fig6_map.csv", heat, manifest(6, base, "G taken from the first column")),
        file("fig6_summary.csv", summary, manifest(6, base, "per-coupling peak and width from a 4001-point feature grid")),
    ]
}

/// Height and position of the strongest lobe beyond the first minimum on
/// the positive side of a curve peaked at `peak_index`.
pub fn side_lobe(grid: &[f64], values: &[f64], peak_index: usize) -> Option<(f64, f64)> {
    let mut i = peak_index;
    while i + 1 < values.len() && values[i + 1] <= values[i] {
        i += 1;
    }
    if i + 1 >= values.len() {
        return None;
    }
    let j = (i..values.len()).max_by(|&a, &b| values[a].total_cmp(&values[b]))?;
    Some((values[j], grid[j]))
}

/// V-port Fisher information against δ at the optimized point.
pub fn fig7(jobs: usize) -> Vec<FigureFile> {
    let p = SystemParams::optimized(1.0);
    let grid = linspace(-0.01, 0.01, 4001);
    let rows = par_rows(jobs, &grid, |d| {
        let q = p.with_signal(d);
        vec![
            d,
            fisher_information(&q, FisherKind::VerticalPort) / fisher_unit(1.0),
            fisher_information(&q, FisherKind::AllOutcomes) / fisher_unit(1.0),
        ]
    });
    let mut t = Table::new(["delta/kappa_i", "F_IV", "F_I"]);
    for r in &rows {
        t.push_numbers(r);
    }
    let mut summary = Table::new([
        "peak",
        "peak_location/kappa_i",
        "fwhm/kappa_i",
        "half_width/kappa_i",
        "side_lobe_peak",
        "side_lobe_location/kappa_i",
    ]);
    if let Some(c) = feature_curve(&p, FisherKind::VerticalPort) {
        let values: Vec<f64> = rows.iter().map(|r| r[1]).collect();
        let centre = values
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .map_or(0, |(i, _)| i);
        let (lobe, at) = side_lobe(&grid, &values, centre).unwrap_or((f64::NAN, f64::NAN));
        summary.push_numbers(&[summary_row(&c), vec![lobe, at]].concat());
    }
    vec![
        file("fig7_fisher_v.csv", t, manifest(7, p, "F_IV counts only the V port; F_I all outcomes")),
        file("fig7_summary.csv", summary, manifest(7, p, "F_IV peak and width from a 4001-point feature grid")),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_figure() {
        assert!(figure(2, 1).is_none());
    }

    #[test]
    fn fig3_shape() {
        let f = &fig3(2)[0];
        assert_eq!(f.table.rows.len(), 4001);
        let ph = f.table.column("P_H").unwrap();
        let pe = f.table.column("P_empty").unwrap();
        assert!(ph[2000] > 0.99);
        assert!(pe[2000] < pe[0]);
    }

    #[test]
    fn side_lobe_found_after_dip() {
        let grid = linspace(0.0, 6.0, 7);
        let v = [5.0, 3.0, 1.0, 2.0, 4.0, 2.0, 1.0];
        assert_eq!(side_lobe(&grid, &v, 0), Some((4.0, 4.0)));
        assert_eq!(side_lobe(&grid, &[3.0, 2.0, 1.0], 0), None);
    }
}
