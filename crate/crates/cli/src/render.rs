//! SVG pictures. Presentation only; nothing here feeds back into a computation.

use std::fmt::Write as _;

use crown_core::curves::geom::to_f64;
use crown_core::curves::{crossing_points, CurveError, CurveFile, Point};
use crown_core::StackedDiagram;

fn colour(i: usize, k: usize) -> String {
    format!("hsl({},70%,42%)", (360 * i) / k.max(1))
}

fn header(w: f64, h: f64) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w:.0}\" height=\"{h:.0}\" viewBox=\"0 0 {w:.0} {h:.0}\">\n\
         <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    )
}

/// Curves as rows with their passages in order; each crossing is a thin line
/// joining its two passages. Salient crossings are marked in black.
pub fn diagram_svg(d: &StackedDiagram) -> String {
    let k = d.curve_count();
    let width = 900.0;
    let (left, top, row) = (70.0, 30.0, 36.0);
    let height = top * 2.0 + row * (k.max(1) - 1) as f64;
    let mut pos = vec![Vec::new(); d.crossing_count()];
    for i in 0..k {
        let ps = d.curve(i);
        let step = (width - left - 30.0) / ps.len().max(1) as f64;
        for (j, p) in ps.iter().enumerate() {
            pos[p.crossing].push((left + step * (j as f64 + 0.5), top + row * i as f64));
        }
    }
    let salient: Vec<usize> = match d.salient_designation() {
        Some(s) => s.to_vec(),
        None => d.salient_chords().map(|cs| cs.iter().map(|c| c.crossing).collect()).unwrap_or_default(),
    };
    let mut s = header(width, height);
    for (x, ends) in pos.iter().enumerate() {
        if let [(x0, y0), (x1, y1)] = ends[..] {
            let w = if salient.contains(&x) { "1.6" } else { "0.5" };
            let _ = writeln!(s, "<line x1=\"{x0:.1}\" y1=\"{y0:.1}\" x2=\"{x1:.1}\" y2=\"{y1:.1}\" stroke=\"#999\" stroke-width=\"{w}\"/>");
        }
    }
    for i in 0..k {
        let y = top + row * i as f64;
        let c = colour(i, k);
        let _ = writeln!(s, "<line x1=\"{left}\" y1=\"{y:.1}\" x2=\"{:.1}\" y2=\"{y:.1}\" stroke=\"{c}\" stroke-width=\"2.5\"/>", width - 30.0);
        let _ = writeln!(s, "<text x=\"10\" y=\"{:.1}\" font-family=\"monospace\" font-size=\"12\" fill=\"{c}\">{}</text>", y + 4.0, i + 1);
    }
    for &x in &salient {
        for (cx, cy) in &pos[x] {
            let _ = writeln!(s, "<circle cx=\"{cx:.1}\" cy=\"{cy:.1}\" r=\"4\" fill=\"black\"><title>{}</title></circle>", escape(d.name(x)));
        }
    }
    s.push_str("</svg>\n");
    s
}

/// The planar model (frame and holes) with each curve drawn in its own colour
/// and every crossing dotted.
pub fn curves_svg(file: &CurveFile) -> Result<String, CurveError> {
    let f = &file.model.frame;
    let (x0, y0, x1, y1) = (to_f64(&f.x0), to_f64(&f.y0), to_f64(&f.x1), to_f64(&f.y1));
    let scale = 900.0 / (x1 - x0).max(1e-9);
    let pad = 10.0;
    let map = |p: &Point| (pad + (to_f64(&p.x) - x0) * scale, pad + (y1 - to_f64(&p.y)) * scale);
    let (w, h) = ((x1 - x0) * scale + 2.0 * pad, (y1 - y0) * scale + 2.0 * pad);
    let mut s = header(w, h);
    let _ = writeln!(s, "<rect x=\"{pad}\" y=\"{pad}\" width=\"{:.1}\" height=\"{:.1}\" fill=\"none\" stroke=\"#333\"/>", w - 2.0 * pad, h - 2.0 * pad);
    for (pair, which, r) in file.model.holes() {
        let (ax, ay) = map(&Point::new(r.x0.clone(), r.y1.clone()));
        let (bx, by) = map(&Point::new(r.x1.clone(), r.y0.clone()));
        let _ = writeln!(
            s,
            "<rect x=\"{ax:.2}\" y=\"{ay:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"#ddd\" stroke=\"#888\"><title>pair {} hole {}</title></rect>",
            bx - ax,
            by - ay,
            pair + 1,
            which
        );
    }
    let k = file.curves.len();
    for (i, c) in file.curves.iter().enumerate() {
        let col = colour(i, k);
        let mut d = String::new();
        for (e, seg) in c.segments() {
            if c.is_transit(e) {
                continue;
            }
            let (ax, ay) = map(&seg.a);
            let (bx, by) = map(&seg.b);
            let _ = write!(d, "M{ax:.2} {ay:.2}L{bx:.2} {by:.2}");
        }
        let _ = writeln!(s, "<path d=\"{d}\" fill=\"none\" stroke=\"{col}\" stroke-width=\"1.2\"><title>{}</title></path>", escape(&c.name));
    }
    for x in crossing_points(&file.curves)? {
        let (cx, cy) = map(&x.p);
        let _ = writeln!(s, "<circle cx=\"{cx:.2}\" cy=\"{cy:.2}\" r=\"1.5\" fill=\"black\"/>");
    }
    s.push_str("</svg>\n");
    Ok(s)
}

fn escape(t: &str) -> String {
    t.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
