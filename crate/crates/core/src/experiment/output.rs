//! CSV snapshots, time series and gnuplot scripts.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::diagnostics::vorticity_and_divergence;
use crate::error::{Error, Result};
use crate::field::{ConservedField1D, ConservedField2D, A2, B1, B2, H, HA, HB, HU, HV};
use crate::grid::{Grid1D, Grid2D};
use crate::topography::{Topography1D, Topography2D};

use super::run::BalanceSummary;

/// One snapshot: named columns of equal length.
#[derive(Debug, Clone, PartialEq)]
pub struct SnapshotRecord {
    pub time: f64,
    pub columns: Vec<(String, Vec<f64>)>,
}

pub const COLUMNS_1D: [&str; 8] = ["y", "h", "u", "v", "a", "b", "B", "Z"];
pub const COLUMNS_2D: [&str; 12] = ["x", "y", "h", "u", "v", "a", "b", "A", "B", "Z", "zeta", "divv"];

fn ratio(num: &[f64], h: &[f64]) -> Vec<f64> {
    num.iter().zip(h).map(|(q, h)| q / h).collect()
}

impl SnapshotRecord {
    pub fn from_1d(time: f64, w: &ConservedField1D, grid: &Grid1D, topo: &Topography1D) -> Self {
        let h = &w.comps[H];
        let cols = vec![
            grid.y.centers(),
            h.clone(),
            ratio(&w.comps[HU], h),
            ratio(&w.comps[HV], h),
            ratio(&w.comps[HA], h),
            ratio(&w.comps[HB], h),
            w.comps[B1].clone(),
            topo.centers().to_vec(),
        ];
        Self { time, columns: COLUMNS_1D.iter().map(|s| s.to_string()).zip(cols).collect() }
    }

    pub fn from_2d(time: f64, w: &ConservedField2D, grid: &Grid2D, topo: &Topography2D) -> Self {
        let (nx, ny) = (grid.nx(), grid.ny());
        let h = &w.comps[H];
        let xs = (0..nx * ny).map(|i| grid.x.center((i % nx) as isize)).collect();
        let ys = (0..nx * ny).map(|i| grid.y.center((i / nx) as isize)).collect();
        let z = (0..nx * ny).map(|i| topo.center(i % nx, i / nx)).collect();
        let (zeta, div) = vorticity_and_divergence(w, grid);
        let cols = vec![
            xs,
            ys,
            h.clone(),
            ratio(&w.comps[HU], h),
            ratio(&w.comps[HV], h),
            ratio(&w.comps[HA], h),
            ratio(&w.comps[HB], h),
            w.comps[A2].clone(),
            w.comps[B2].clone(),
            z,
            zeta,
            div,
        ];
        Self { time, columns: COLUMNS_2D.iter().map(|s| s.to_string()).zip(cols).collect() }
    }

    pub fn rows(&self) -> usize {
        self.columns.first().map_or(0, |c| c.1.len())
    }

    pub fn column(&self, name: &str) -> Option<&[f64]> {
        self.columns.iter().find(|c| c.0 == name).map(|c| c.1.as_slice())
    }
}

/// Shortest decimal form that still carries 17 significant digits.
fn fmt_value(out: &mut String, x: f64) {
    let _ = write!(out, "{x:.16e}");
}

pub fn render_csv(record: &SnapshotRecord) -> String {
    let mut out = String::new();
    let names: Vec<&str> = record.columns.iter().map(|c| c.0.as_str()).collect();
    out.push_str(&names.join(","));
    out.push('\n');
    for r in 0..record.rows() {
        for (c, (_, col)) in record.columns.iter().enumerate() {
            if c > 0 {
                out.push(',');
            }
            fmt_value(&mut out, col[r]);
        }
        out.push('\n');
    }
    out
}

fn gnuplot_script(record: &SnapshotRecord, csv_name: &str) -> String {
    let two_d = record.column("x").is_some();
    let mut s = String::new();
    let _ = writeln!(s, "set datafile separator ','");
    let _ = writeln!(s, "set key autotitle columnhead");
    let _ = writeln!(s, "set title 't = {}'", record.time);
    if two_d {
        let _ = writeln!(s, "set view map");
        let _ = writeln!(s, "set xlabel 'x'\nset ylabel 'y'");
        let _ = writeln!(s, "splot '{csv_name}' using 1:2:3 with points palette pointtype 5 pointsize 0.5");
    } else {
        let _ = writeln!(s, "set xlabel 'y'");
        let _ = writeln!(s, "plot '{csv_name}' using 1:2 with lines, '' using 1:($2+$8) with lines");
    }
    let _ = writeln!(s, "pause -1");
    s
}

/// Writes `path` and a sibling `.gp` script; returns both paths.
pub fn write_snapshot(record: &SnapshotRecord, path: &Path) -> Result<Vec<PathBuf>> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    fs::write(path, render_csv(record))?;
    let gp = path.with_extension("gp");
    let name = path.file_name().and_then(|n| n.to_str()).unwrap_or("snapshot.csv");
    fs::write(&gp, gnuplot_script(record, name))?;
    Ok(vec![path.to_path_buf(), gp])
}

/// Parses a file produced by [`render_csv`].
pub fn read_snapshot(text: &str, time: f64) -> Result<SnapshotRecord> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| Error::Io("empty snapshot".into()))?;
    let names: Vec<String> = header.split(',').map(str::to_string).collect();
    let mut cols = vec![Vec::new(); names.len()];
    for line in lines {
        for (c, tok) in line.split(',').enumerate() {
            let v = tok.parse::<f64>().map_err(|e| Error::Io(format!("bad value `{tok}`: {e}")))?;
            cols.get_mut(c).ok_or_else(|| Error::Io("ragged row".into()))?.push(v);
        }
    }
    Ok(SnapshotRecord { time, columns: names.into_iter().zip(cols).collect() })
}

/// One row of the per-step series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesRow {
    pub t: f64,
    pub energy: f64,
    /// `max |Ā + B̄|` in 2-D, `max |(hb)_k - (hb)_1|` in 1-D.
    pub max_divergence: f64,
    pub mass: f64,
}

pub fn write_series(rows: &[SeriesRow], path: &Path) -> Result<PathBuf> {
    let mut out = String::from("t,energy,max_divergence,mass\n");
    for r in rows {
        for (i, v) in [r.t, r.energy, r.max_divergence, r.mass].into_iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            fmt_value(&mut out, v);
        }
        out.push('\n');
    }
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    fs::write(path, out)?;
    Ok(path.to_path_buf())
}

/// Columns `y, pressure, coriolis` plus the averaged pair when available.
pub fn write_balance(b: &BalanceSummary, path: &Path) -> Result<PathBuf> {
    let mut columns = vec![("y".to_string(), b.y.clone()), ("pressure".into(), b.pressure.clone()), ("coriolis".into(), b.coriolis.clone())];
    if let Some((p, c)) = &b.averaged {
        columns.push(("pressure_avg".into(), p.clone()));
        columns.push(("coriolis_avg".into(), c.clone()));
    }
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    fs::write(path, render_csv(&SnapshotRecord { time: f64::NAN, columns }))?;
    Ok(path.to_path_buf())
}

pub fn snapshot_name(example: &str, t: f64) -> String {
    format!("{example}_t{t:08.4}.csv")
}
