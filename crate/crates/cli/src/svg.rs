//! Standalone SVG drawings of the closed triangle.

use flagflow::catalog::{FamilyDescriptor, StabilityClass};
use flagflow::dynamics::{BasinGrid, CellLabel, Manifold, Separatrix};
use std::collections::BTreeMap;
use std::fmt::Write;

const SIZE: f64 = 800.0;
const MARGIN: f64 = 0.05 * SIZE;
const SPAN: f64 = SIZE - 2.0 * MARGIN;

const PALETTE: [&str; 10] = [
    "#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#76b7b2", "#edc948", "#b07aa1", "#ff9da7",
    "#9c755f", "#bab0ac",
];
const UNDETERMINED: &str = "#202020";

pub struct Marker {
    pub at: (f64, f64),
    pub class: StabilityClass,
    pub name: String,
}

fn px(p: (f64, f64)) -> (f64, f64) {
    (MARGIN + SPAN * p.0, SIZE - MARGIN - SPAN * p.1)
}

fn header(title: &str) -> String {
    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    )
    .unwrap();
    writeln!(s, r#"<rect width="{SIZE}" height="{SIZE}" fill="white"/>"#).unwrap();
    writeln!(
        s,
        r#"<text x="{MARGIN}" y="{:.1}" font-family="sans-serif" font-size="14">{}</text>"#,
        MARGIN - 14.0,
        escape(title)
    )
    .unwrap();
    s
}

fn triangle(s: &mut String) {
    let pts = [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)].map(px);
    writeln!(
        s,
        r#"<polygon points="{:.1},{:.1} {:.1},{:.1} {:.1},{:.1}" fill="none" stroke="black" stroke-width="1.5"/>"#,
        pts[0].0, pts[0].1, pts[1].0, pts[1].1, pts[2].0, pts[2].1
    )
    .unwrap();
}

fn escape(t: &str) -> String {
    t.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn polyline(s: &mut String, pts: &[(f64, f64)], stroke: &str, width: f64) {
    if pts.len() < 2 {
        return;
    }
    s.push_str("<polyline fill=\"none\" points=\"");
    let mut last = (f64::NAN, f64::NAN);
    for &p in pts {
        let q = px(p);
        if (q.0 - last.0).abs() < 0.2 && (q.1 - last.1).abs() < 0.2 {
            continue;
        }
        write!(s, "{:.2},{:.2} ", q.0, q.1).unwrap();
        last = q;
    }
    writeln!(s, "\" stroke=\"{stroke}\" stroke-width=\"{width}\"/>").unwrap();
}

fn marker(s: &mut String, m: &Marker) {
    let (x, y) = px(m.at);
    let r = 6.0;
    match m.class {
        StabilityClass::Attractor => {
            writeln!(s, r#"<circle cx="{x:.2}" cy="{y:.2}" r="{r}" fill="black"/>"#).unwrap()
        }
        StabilityClass::Repeller => writeln!(
            s,
            r#"<rect x="{:.2}" y="{:.2}" width="{:.1}" height="{:.1}" fill="white" stroke="black" stroke-width="1.5"/>"#,
            x - r,
            y - r,
            2.0 * r,
            2.0 * r
        )
        .unwrap(),
        StabilityClass::Saddle => writeln!(
            s,
            r#"<polygon points="{x:.2},{:.2} {:.2},{y:.2} {x:.2},{:.2} {:.2},{y:.2}" fill="gray" stroke="black"/>"#,
            y - r,
            x + r,
            y + r,
            x - r
        )
        .unwrap(),
        StabilityClass::Nonhyperbolic => writeln!(
            s,
            r#"<circle cx="{x:.2}" cy="{y:.2}" r="{r}" fill="none" stroke="black" stroke-dasharray="2,2"/>"#
        )
        .unwrap(),
    }
    writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="13">{}</text>"#,
        x + 8.0,
        y - 8.0,
        escape(&m.name)
    )
    .unwrap();
}

pub fn portrait(
    fam: &FamilyDescriptor,
    markers: &[Marker],
    curves: &[Separatrix],
    orbits: &[Vec<(f64, f64)>],
) -> String {
    let mut s = header(&fam.display_name());
    triangle(&mut s);
    for o in orbits {
        polyline(&mut s, o, "#9a9a9a", 0.8);
    }
    for c in curves {
        let stroke = match c.manifold {
            Manifold::Stable => "#1f5fbf",
            Manifold::Unstable => "#c0392b",
        };
        polyline(&mut s, &c.points, stroke, 1.6);
    }
    for m in markers {
        marker(&mut s, m);
    }
    s.push_str("</svg>\n");
    s
}

pub fn basin_map(
    fam: &FamilyDescriptor,
    grid: &BasinGrid,
    regions: Option<&BTreeMap<(String, String), usize>>,
) -> String {
    let mut s = header(&format!("{} basins, {}x{}", fam.display_name(), grid.resolution, grid.resolution));
    let n = grid.resolution;
    let cell = SPAN / n as f64;
    for j in 0..n {
        for i in 0..n {
            let fill = match grid.forward_at(i, j) {
                CellLabel::Outside => continue,
                CellLabel::Undetermined => UNDETERMINED,
                CellLabel::Limit(k) => PALETTE[k % PALETTE.len()],
            };
            let (x, y) = px((i as f64 / n as f64, (j + 1) as f64 / n as f64));
            writeln!(
                s,
                r#"<rect x="{x:.2}" y="{y:.2}" width="{:.3}" height="{:.3}" fill="{fill}"/>"#,
                cell + 0.5,
                cell + 0.5
            )
            .unwrap();
        }
    }
    triangle(&mut s);
    let mut legend: Vec<(String, &str)> = Vec::new();
    for k in 0..grid.equilibria.len() {
        if grid.forward.contains(&CellLabel::Limit(k)) {
            legend.push((grid.name(CellLabel::Limit(k)), PALETTE[k % PALETTE.len()]));
        }
    }
    if grid.forward.contains(&CellLabel::Undetermined) {
        legend.push(("undetermined".into(), UNDETERMINED));
    }
    let x0 = SIZE - MARGIN - 200.0;
    for (r, (name, color)) in legend.iter().enumerate() {
        let y = MARGIN + 20.0 * r as f64;
        writeln!(s, r#"<rect x="{x0}" y="{y}" width="14" height="14" fill="{color}"/>"#).unwrap();
        writeln!(
            s,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="13">{}</text>"#,
            x0 + 20.0,
            y + 12.0,
            escape(name)
        )
        .unwrap();
    }
    if let Some(regions) = regions {
        let mut y = MARGIN + 20.0 * legend.len() as f64 + 20.0;
        for ((f, b), count) in regions {
            writeln!(
                s,
                r#"<text x="{x0}" y="{y}" font-family="sans-serif" font-size="12">{} to {}: {count}</text>"#,
                escape(b),
                escape(f)
            )
            .unwrap();
            y += 16.0;
        }
    }
    s.push_str("</svg>\n");
    s
}
