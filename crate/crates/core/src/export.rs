//! Writers for region and sweep data. Floats use Rust's shortest round-trip
//! formatting, so identical inputs produce identical bytes.

use std::fmt::Write as _;

use serde::Serialize;

use crate::power::SweepRow;
use crate::regions::{Halfspace2D, RateRegion2D};

/// Adding positive zero maps `-0.0` to `0.0` and leaves every other value
/// unchanged, so clipped coordinates never print as `-0`.
fn clean(x: f64) -> f64 {
    x + 0.0
}

fn clean_points(points: &[[f64; 2]]) -> Vec<[f64; 2]> {
    points.iter().map(|p| [clean(p[0]), clean(p[1])]).collect()
}

/// `R1,R2` header plus one row per boundary sample.
pub fn boundary_csv(samples: &[[f64; 2]]) -> String {
    let mut out = String::from("R1,R2\n");
    for p in samples {
        let _ = writeln!(out, "{},{}", clean(p[0]), clean(p[1]));
    }
    out
}

#[derive(Serialize)]
struct RegionDocument<'a> {
    halfspaces: &'a [Halfspace2D],
    vertices: &'a [[f64; 2]],
    boundary: &'a [[f64; 2]],
}

/// Halfspaces, vertices and boundary samples as pretty-printed JSON.
pub fn region_json(region: &RateRegion2D, samples: usize) -> String {
    let boundary = clean_points(&region.boundary_samples(samples));
    let vertices = clean_points(region.vertices());
    let doc = RegionDocument { halfspaces: region.halfspaces(), vertices: &vertices, boundary: &boundary };
    serde_json::to_string_pretty(&doc).expect("plain data serializes") + "\n"
}

/// One `<name>_R1,<name>_R2` column pair per region; shorter sample lists
/// leave their trailing cells empty.
pub fn figure_csv(columns: &[(&str, Vec<[f64; 2]>)]) -> String {
    let mut out = columns
        .iter()
        .map(|(name, _)| format!("{name}_R1,{name}_R2"))
        .collect::<Vec<_>>()
        .join(",");
    out.push('\n');
    let rows = columns.iter().map(|(_, s)| s.len()).max().unwrap_or(0);
    for i in 0..rows {
        let cells: Vec<String> = columns
            .iter()
            .map(|(_, s)| s.get(i).map_or_else(|| ",".to_string(), |p| format!("{},{}", clean(p[0]), clean(p[1]))))
            .collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

/// `P,p1_star,p2_star,r_sum_star,regime`.
pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("P,p1_star,p2_star,r_sum_star,regime\n");
    for row in rows {
        let r = &row.result;
        let _ = writeln!(out, "{},{},{},{},{}", clean(row.cap), clean(r.p1_star), clean(r.p2_star), clean(r.r_sum_star), r.regime.as_str());
    }
    out
}
