//! Minimal self-contained SVG rendering of a trade-off sweep: achieved
//! points as circles, the reference curve as a polyline. Rational values
//! become floats only here, at render time.

pub struct Plot {
    pub achieved: Vec<(f64, f64, String)>,
    pub reference: Vec<(f64, f64)>,
}

const W: f64 = 640.0;
const H: f64 = 480.0;
const MARGIN: f64 = 56.0;

pub fn render(plot: &Plot) -> String {
    let xs: Vec<f64> = plot
        .achieved
        .iter()
        .map(|p| p.0)
        .chain(plot.reference.iter().map(|p| p.0))
        .collect();
    let ys: Vec<f64> = plot
        .achieved
        .iter()
        .map(|p| p.1)
        .chain(plot.reference.iter().map(|p| p.1))
        .collect();
    let (x0, x1) = span(&xs);
    let (y0, y1) = span(&ys);
    let sx = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (W - 2.0 * MARGIN);
    let sy = |y: f64| H - MARGIN - (y - y0) / (y1 - y0) * (H - 2.0 * MARGIN);

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" \
         viewBox=\"0 0 {W} {H}\">\n"
    ));
    out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    // axes
    out.push_str(&format!(
        "<line x1=\"{m}\" y1=\"{b}\" x2=\"{r}\" y2=\"{b}\" stroke=\"black\"/>\n",
        m = MARGIN,
        b = H - MARGIN,
        r = W - MARGIN
    ));
    out.push_str(&format!(
        "<line x1=\"{m}\" y1=\"{t}\" x2=\"{m}\" y2=\"{b}\" stroke=\"black\"/>\n",
        m = MARGIN,
        t = MARGIN,
        b = H - MARGIN
    ));
    out.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" font-size=\"14\" text-anchor=\"middle\">r</text>\n",
        W / 2.0,
        H - 12.0
    ));
    out.push_str(&format!(
        "<text x=\"16\" y=\"{}\" font-size=\"14\" text-anchor=\"middle\" \
         transform=\"rotate(-90 16 {})\">beta</text>\n",
        H / 2.0,
        H / 2.0
    ));
    for (v, at_x) in [(x0, true), (x1, true), (y0, false), (y1, false)] {
        if at_x {
            out.push_str(&format!(
                "<text x=\"{:.1}\" y=\"{:.1}\" font-size=\"11\" text-anchor=\"middle\">{v:.3}</text>\n",
                sx(v),
                H - MARGIN + 16.0
            ));
        } else {
            out.push_str(&format!(
                "<text x=\"{:.1}\" y=\"{:.1}\" font-size=\"11\" text-anchor=\"end\">{v:.3}</text>\n",
                MARGIN - 6.0,
                sy(v) + 4.0
            ));
        }
    }
    if plot.reference.len() >= 2 {
        let pts: Vec<String> = plot
            .reference
            .iter()
            .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
            .collect();
        out.push_str(&format!(
            "<polyline points=\"{}\" fill=\"none\" stroke=\"#888\" stroke-width=\"1.5\" \
             stroke-dasharray=\"6 3\"/>\n",
            pts.join(" ")
        ));
    }
    for (x, y, label) in &plot.achieved {
        out.push_str(&format!(
            "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"4\" fill=\"#1f6fb2\"><title>{}</title></circle>\n",
            sx(*x),
            sy(*y),
            xml_escape(label)
        ));
    }
    out.push_str("</svg>\n");
    out
}

fn span(vals: &[f64]) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &v in vals {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if !lo.is_finite() || !hi.is_finite() {
        return (0.0, 1.0);
    }
    if (hi - lo).abs() < 1e-12 {
        (lo - 0.5, hi + 0.5)
    } else {
        let pad = (hi - lo) * 0.06;
        (lo - pad, hi + pad)
    }
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}
