use num_complex::Complex64;
use std::fmt::Write;

const PANEL: f64 = 300.0;
const PAD: f64 = 30.0;

fn header(width: f64, height: f64) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\" font-family=\"sans-serif\" font-size=\"12\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    )
}

/// Side-by-side scatter panels on `[-extent, extent]^2`, each with the unit circle.
pub fn scatter_panels(panels: &[(String, Vec<Complex64>)], extent: f64) -> String {
    let width = panels.len() as f64 * (PANEL + PAD) + PAD;
    let height = PANEL + 2.0 * PAD;
    let mut s = header(width, height);
    for (p, (title, pts)) in panels.iter().enumerate() {
        let x0 = PAD + p as f64 * (PANEL + PAD);
        let y0 = PAD;
        let map = |z: Complex64| (x0 + (z.re / extent + 1.0) * PANEL / 2.0, y0 + (1.0 - z.im / extent) * PANEL / 2.0);
        let _ = writeln!(s, "<rect x=\"{x0}\" y=\"{y0}\" width=\"{PANEL}\" height=\"{PANEL}\" fill=\"none\" stroke=\"#999\"/>");
        let (cx, cy) = map(Complex64::new(0.0, 0.0));
        let _ = writeln!(s, "<circle cx=\"{cx:.2}\" cy=\"{cy:.2}\" r=\"{:.2}\" fill=\"none\" stroke=\"#c33\"/>", PANEL / (2.0 * extent));
        let _ = writeln!(s, "<text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"middle\">{}</text>", x0 + PANEL / 2.0, y0 - 8.0, escape(title));
        let _ = write!(s, "<g fill=\"#235\" fill-opacity=\"0.6\">");
        for &z in pts {
            if z.re.abs() > extent || z.im.abs() > extent {
                continue;
            }
            let (x, y) = map(z);
            let _ = write!(s, "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"1\"/>");
        }
        let _ = writeln!(s, "</g>");
    }
    s.push_str("</svg>\n");
    s
}

/// Line plot of several curves on `[0, x_max] x [0, y_max]`.
pub fn line_plot(title: &str, curves: &[(String, Vec<(f64, f64)>)], x_max: f64, y_max: f64) -> String {
    const COLORS: [&str; 6] = ["#235", "#c33", "#393", "#939", "#e80", "#088"];
    let w = 2.0 * PANEL;
    let h = PANEL;
    let mut s = header(w + 2.0 * PAD + 120.0, h + 2.0 * PAD);
    let map = |x: f64, y: f64| (PAD + x / x_max * w, PAD + (1.0 - y / y_max) * h);
    let _ = writeln!(s, "<rect x=\"{PAD}\" y=\"{PAD}\" width=\"{w}\" height=\"{h}\" fill=\"none\" stroke=\"#999\"/>");
    let _ = writeln!(s, "<text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"middle\">{}</text>", PAD + w / 2.0, PAD - 8.0, escape(title));
    for (i, (label, pts)) in curves.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let path: Vec<String> = pts
            .iter()
            .map(|&(x, y)| {
                let (a, b) = map(x, y.min(y_max));
                format!("{a:.2},{b:.2}")
            })
            .collect();
        let _ = writeln!(s, "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" points=\"{}\"/>", path.join(" "));
        let ly = PAD + 16.0 * (i as f64 + 1.0);
        let _ = writeln!(s, "<text x=\"{:.1}\" y=\"{ly:.1}\" fill=\"{color}\">{}</text>", PAD + w + 10.0, escape(label));
    }
    s.push_str("</svg>\n");
    s
}

fn escape(t: &str) -> String {
    t.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
