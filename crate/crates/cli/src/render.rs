//! ASCII and SVG drawings of a Bar Code diagram.
//!
//! Both share one grid: column `c` owns a cell of fixed width followed by a
//! one-character gutter. A bar covering columns `[s, e)` is drawn across the
//! cells and inner gutters of those columns; its star, if any, sits in the
//! gutter right after column `e - 1`. Row 0 (the minimal variable) is on top
//! and the column labels sit above it, as in the printed diagrams.

use std::fmt::Write;

use janet_barcode::barcode::Diagram;

const BAR: char = '─';

pub fn ascii(d: &Diagram) -> String {
    let labels: Vec<String> = d.labels.iter().map(ToString::to_string).collect();
    let cell = labels
        .iter()
        .map(|l| l.chars().count())
        .max()
        .unwrap_or(1)
        .max(3);
    let names: Vec<String> = d.rows.iter().map(|r| r.var.to_string()).collect();
    let margin = names.iter().map(String::len).max().unwrap_or(2) + 1;
    let width = labels.len() * (cell + 1);

    let mut out = String::new();
    let mut head = " ".repeat(margin);
    for l in &labels {
        let _ = write!(head, "{l:<cell$} ");
    }
    out.push_str(head.trim_end());
    out.push('\n');
    for (row, name) in d.rows.iter().zip(&names) {
        let mut line: Vec<char> = vec![' '; width];
        for bar in &row.bars {
            let from = bar.start * (cell + 1);
            let to = bar.end * (cell + 1) - 1;
            line[from..to].iter_mut().for_each(|c| *c = BAR);
            if bar.starred {
                line[to] = '*';
            }
        }
        let body: String = line.into_iter().collect();
        let _ = writeln!(out, "{name:<margin$}{}", body.trim_end());
    }
    out
}

/// Layout constants, in SVG user units.
pub mod geometry {
    /// Width of one column cell.
    pub const CELL: u32 = 64;
    /// Gap after each cell; stars are centred in it.
    pub const GUTTER: u32 = 16;
    /// Vertical distance between bar rows.
    pub const ROW: u32 = 28;
    /// Height reserved above the first row for the column labels.
    pub const HEADER: u32 = 32;
    /// Width reserved left of the grid for the row names.
    pub const LEFT: u32 = 40;
    pub const MARGIN: u32 = 10;
    pub const FONT: u32 = 13;
}

pub fn svg(d: &Diagram) -> String {
    use geometry::*;
    let step = CELL + GUTTER;
    let m = d.labels.len() as u32;
    let width = 2 * MARGIN + LEFT + m * step;
    let height = 2 * MARGIN + HEADER + d.rows.len() as u32 * ROW;
    let x0 = MARGIN + LEFT;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="monospace" font-size="{FONT}">"#
    );
    let _ = writeln!(
        s,
        r#"<rect width="{width}" height="{height}" fill="white"/>"#
    );
    for (c, label) in d.labels.iter().enumerate() {
        let x = x0 + c as u32 * step + CELL / 2;
        let y = MARGIN + HEADER - 10;
        let _ = writeln!(
            s,
            r#"<text x="{x}" y="{y}" text-anchor="middle">{}</text>"#,
            escape(&label.to_string())
        );
    }
    for (r, row) in d.rows.iter().enumerate() {
        let y = MARGIN + HEADER + r as u32 * ROW + ROW / 2;
        let _ = writeln!(
            s,
            r#"<text x="{MARGIN}" y="{}">{}</text>"#,
            y + FONT / 3,
            row.var
        );
        for bar in &row.bars {
            let a = x0 + bar.start as u32 * step;
            let b = x0 + bar.end as u32 * step - GUTTER;
            let _ = writeln!(
                s,
                r#"<line x1="{a}" y1="{y}" x2="{b}" y2="{y}" stroke="black" stroke-width="3"/>"#
            );
            if bar.starred {
                let _ = writeln!(
                    s,
                    r#"<text x="{}" y="{}" text-anchor="middle">*</text>"#,
                    b + GUTTER / 2,
                    y + FONT / 3
                );
            }
        }
    }
    s.push_str("</svg>\n");
    s
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}
