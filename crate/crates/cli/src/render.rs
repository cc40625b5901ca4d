//! Static spacetime diagrams from trace files, as ASCII grids or SVG.
//!
//! Time runs upwards: the last slice is the top row. Sites are columns in
//! ring order 1..2S, so left-movers sit on odd columns and right-movers on
//! even columns. Renderers read nothing but the trace itself, so they work
//! on hand-written traces too.

use permuton::SpacetimeTrace;

// '@' rather than '#' for down spins: grid rows must never collide with the
// '#' metadata prefix
fn spin_char(v: i64) -> char {
    if v == 1 {
        '.'
    } else {
        '@'
    }
}

fn level_char(v: i64) -> char {
    match v {
        0 => '.',
        1..=9 => (b'0' + v as u8) as char,
        10.. => '+',
        -9..=-1 => (b'a' + (-v) as u8 - 1) as char,
        _ => '-',
    }
}

pub fn ascii(trace: &SpacetimeTrace) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "# spacetime diagram, time runs upwards ({} steps, {} sites)\n",
        trace.steps(),
        trace.sites()
    ));
    match trace.level_bound() {
        None => out.push_str("# cells: . = +1, @ = -1\n"),
        Some(m) => out.push_str(&format!(
            "# cells: . = 0, 1-9/+ positive, a-i/- negative (M={m})\n"
        )),
    }
    for row in trace.slices().iter().rev() {
        for &v in row {
            out.push(match trace.level_bound() {
                None => spin_char(v),
                Some(_) => level_char(v),
            });
        }
        out.push('\n');
    }
    out
}

const CELL: usize = 8;

fn spin_color(v: i64) -> String {
    if v == 1 {
        "#ffffff".into()
    } else {
        "#1f2937".into()
    }
}

fn level_color(v: i64, m: i64) -> String {
    if v == 0 {
        return "#ffffff".into();
    }
    let intensity = (v.unsigned_abs().min(m as u64) * 255 / m as u64) as i64;
    let rest = 255 - intensity;
    if v > 0 {
        format!("rgb(255,{rest},{rest})")
    } else {
        format!("rgb({rest},{rest},255)")
    }
}

pub fn svg(trace: &SpacetimeTrace) -> String {
    let cols = trace.sites();
    let rows = trace.slices().len();
    let width = cols * CELL;
    let height = rows * CELL;
    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" \
         viewBox=\"0 0 {width} {height}\" shape-rendering=\"crispEdges\">\n"
    );
    for (n, row) in trace.slices().iter().enumerate() {
        let y = (rows - 1 - n) * CELL; // time upwards
        for (c, &v) in row.iter().enumerate() {
            let fill = match trace.level_bound() {
                None => spin_color(v),
                Some(m) => level_color(v, m),
            };
            out.push_str(&format!(
                "<rect x=\"{}\" y=\"{y}\" width=\"{CELL}\" height=\"{CELL}\" fill=\"{fill}\"/>\n",
                c * CELL
            ));
        }
    }
    out.push_str("</svg>\n");
    out
}
