use faraday_cli::figures::{fig6, figure, FIGURES};
use faraday_cli::table::read_csv;

#[test]
fn every_figure_round_trips_through_csv() {
    for id in FIGURES {
        for f in figure(id, 2).unwrap() {
            let (header, rows) = read_csv(&f.render()).unwrap();
            assert_eq!(header, f.table.header);
            assert_eq!(rows.len(), f.table.rows.len());
            for (text, cells) in rows.iter().zip(&f.table.rows) {
                for (s, c) in text.iter().zip(cells) {
                    if let faraday_cli::table::Cell::Num(x) = c {
                        let y: f64 = s.parse().unwrap();
                        assert!(x.to_bits() == y.to_bits() || (x.is_nan() && y.is_nan()));
                    }
                }
            }
        }
    }
}

#[test]
fn coupling_map_ridge_and_half_widths() {
    let files = fig6(0);
    let summary = &files[1].table;
    let g = summary.column("G/kappa_i").unwrap();
    let peak = summary.column("peak").unwrap();
    let half = summary.column("half_width/kappa_i").unwrap();
    let best = (0..g.len()).max_by(|&a, &b| peak[a].total_cmp(&peak[b])).unwrap();
    assert!(g[best] >= 0.06 - 1e-12 && g[best] <= 0.1 + 1e-12);
    let at = |target: f64| (0..g.len()).min_by(|&a, &b| (g[a] - target).abs().total_cmp(&(g[b] - target).abs())).unwrap();
    assert!((half[at(0.06)] - 6.4e-4).abs() <= 0.3 * 6.4e-4);
    assert!((half[at(0.1)] - 9.6e-4).abs() <= 0.3 * 9.6e-4);
    for w in half.windows(2) {
        assert!(w[1] >= w[0]);
    }
}

#[test]
fn optimum_lies_in_the_fig5_sweep() {
    let f = &figure(5, 0).unwrap()[0];
    let g = f.table.column("G/kappa_i").unwrap();
    let k = f.table.column("kappa_ex/kappa_i").unwrap();
    let s = f.table.column("sensitivity").unwrap();
    let trace: Vec<usize> = (0..g.len()).filter(|&i| g[i] == 0.1).collect();
    let best = trace.iter().copied().min_by(|&a, &b| s[a].total_cmp(&s[b])).unwrap();
    assert!(s[best].is_finite());
    assert!(k[best] > 7.0);
}
