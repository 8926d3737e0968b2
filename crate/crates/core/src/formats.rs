//! Serialized forms of phase diagrams and tomograms.
//!
//! CSV: header row, comma separated, LF line endings; one column per axis,
//! then `min_eigenvalue`, `negativity_m`, `witnessed` (0/1). Reals are
//! written with 17 significant digits so that they parse back bit-exact.
//!
//! PGM: binary `P5`, maxval 255, one pixel per cell.

use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::scan::{Axis, Cell, PhaseDiagram};
use crate::tomography::{outcome_digits, Tomogram};

const RESULT_COLUMNS: [&str; 3] = ["min_eigenvalue", "negativity_m", "witnessed"];

/// Floor for the PGM brightness scale.
pub const PGM_SCALE_FLOOR: f64 = 1e-9;

/// Formats a real with 17 significant digits.
pub fn format_real(x: f64) -> String {
    format!("{x:.16e}")
}

fn io_err(e: impl std::fmt::Display) -> Error {
    Error::Malformed(e.to_string())
}

pub fn write_csv<W: Write>(diagram: &PhaseDiagram, out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    let header: Vec<&str> = diagram
        .axes
        .iter()
        .map(|a| a.name.as_str())
        .chain(RESULT_COLUMNS)
        .collect();
    w.write_record(&header).map_err(io_err)?;
    for cell in &diagram.cells {
        let mut row: Vec<String> = cell.coords.iter().map(|&x| format_real(x)).collect();
        row.push(format_real(cell.min_eigenvalue));
        row.push(format_real(cell.negativity_m));
        row.push(if cell.witnessed { "1" } else { "0" }.to_string());
        w.write_record(&row).map_err(io_err)?;
    }
    w.flush().map_err(io_err)?;
    Ok(())
}

pub fn csv_string(diagram: &PhaseDiagram) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(diagram, &mut buf)?;
    String::from_utf8(buf).map_err(io_err)
}

fn parse_real(field: &str, line: usize) -> Result<f64> {
    field
        .trim()
        .parse::<f64>()
        .map_err(|_| Error::Malformed(format!("line {line}: '{field}' is not a number")))
}

/// Parses a diagram written by [`write_csv`]. Axis values are recovered in
/// first-appearance order from each coordinate column.
pub fn read_csv<R: Read>(input: R) -> Result<PhaseDiagram> {
    let mut r = csv::ReaderBuilder::new().has_headers(true).from_reader(input);
    let header = r.headers().map_err(io_err)?.clone();
    let n = header.len();
    if n < RESULT_COLUMNS.len() + 1 || header.iter().skip(n - 3).ne(RESULT_COLUMNS) {
        return Err(Error::Malformed(format!(
            "header must end with {RESULT_COLUMNS:?} after at least one axis column"
        )));
    }
    let axis_count = n - 3;
    let mut axes: Vec<Axis> = header
        .iter()
        .take(axis_count)
        .map(|name| Axis::new(name, Vec::new()))
        .collect();
    let mut cells = Vec::new();
    for (i, record) in r.records().enumerate() {
        let line = i + 2;
        let record = record.map_err(io_err)?;
        if record.len() != n {
            return Err(Error::Malformed(format!(
                "line {line}: {} fields, expected {n}",
                record.len()
            )));
        }
        let coords = (0..axis_count)
            .map(|k| parse_real(&record[k], line))
            .collect::<Result<Vec<_>>>()?;
        for (axis, &x) in axes.iter_mut().zip(&coords) {
            if !axis.values.iter().any(|v| v.to_bits() == x.to_bits()) {
                axis.values.push(x);
            }
        }
        let witnessed = match record[n - 1].trim() {
            "1" => true,
            "0" => false,
            other => return Err(Error::Malformed(format!("line {line}: witnessed flag '{other}'"))),
        };
        cells.push(Cell {
            coords,
            min_eigenvalue: parse_real(&record[n - 3], line)?,
            negativity_m: parse_real(&record[n - 2], line)?,
            witnessed,
        });
    }
    let diagram = PhaseDiagram { axes, cells };
    if diagram.cells.len() != diagram.expected_cells() {
        return Err(Error::Malformed(format!(
            "{} rows do not form a full grid of {} cells",
            diagram.cells.len(),
            diagram.expected_cells()
        )));
    }
    Ok(diagram)
}

pub fn json_string(diagram: &PhaseDiagram) -> Result<String> {
    serde_json::to_string_pretty(diagram).map_err(io_err)
}

pub fn read_json<R: Read>(input: R) -> Result<PhaseDiagram> {
    let diagram: PhaseDiagram = serde_json::from_reader(input).map_err(io_err)?;
    if diagram.cells.len() != diagram.expected_cells() {
        return Err(Error::Malformed(format!(
            "{} cells do not form a full grid of {} cells",
            diagram.cells.len(),
            diagram.expected_cells()
        )));
    }
    Ok(diagram)
}

/// Reads either format, choosing JSON when the first non-blank byte is `{`.
pub fn read_diagram(bytes: &[u8]) -> Result<PhaseDiagram> {
    match bytes.iter().find(|b| !b.is_ascii_whitespace()) {
        Some(b'{') => read_json(bytes),
        Some(_) => read_csv(bytes),
        None => Err(Error::Malformed("empty diagram file".into())),
    }
}

/// Gray level of one cell: `255 * clamp(-min_eigenvalue / scale, 0, 1)`,
/// where `scale` is the largest `-min_eigenvalue` over the diagram (at
/// least [`PGM_SCALE_FLOOR`]). Unwitnessed cells are black and witnessed
/// cells are at least 1.
fn gray(cell: &Cell, scale: f64) -> u8 {
    if !cell.witnessed {
        return 0;
    }
    let level = (255.0 * (-cell.min_eigenvalue / scale).clamp(0.0, 1.0)).round() as u8;
    level.max(1)
}

pub fn render_pgm(diagram: &PhaseDiagram) -> Vec<u8> {
    let (width, height) = diagram.image_shape();
    let scale = diagram
        .cells
        .iter()
        .map(|c| -c.min_eigenvalue)
        .fold(PGM_SCALE_FLOOR, f64::max);
    let mut out = format!("P5\n{width} {height}\n255\n").into_bytes();
    out.extend(diagram.cells.iter().map(|c| gray(c, scale)));
    out
}

/// Decoded binary PGM.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pgm {
    pub width: usize,
    pub height: usize,
    pub pixels: Vec<u8>,
}

pub fn parse_pgm(bytes: &[u8]) -> Result<Pgm> {
    // Header is "P5", width, height, maxval separated by single whitespace runs.
    let mut fields = Vec::new();
    let mut pos = 0;
    while fields.len() < 4 {
        while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        let start = pos;
        while pos < bytes.len() && !bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        if start == pos {
            return Err(Error::Malformed("truncated PGM header".into()));
        }
        fields.push(std::str::from_utf8(&bytes[start..pos]).map_err(io_err)?.to_string());
    }
    if fields[0] != "P5" || fields[3] != "255" {
        return Err(Error::Malformed("expected binary P5 with maxval 255".into()));
    }
    let width: usize = fields[1].parse().map_err(io_err)?;
    let height: usize = fields[2].parse().map_err(io_err)?;
    let pixels = bytes.get(pos + 1..).unwrap_or_default().to_vec();
    if pixels.len() != width * height {
        return Err(Error::Malformed(format!(
            "{} pixels for {width}x{height}",
            pixels.len()
        )));
    }
    Ok(Pgm { width, height, pixels })
}

/// One CSV row per joint outcome: `m1..mn,probability`.
pub fn tomogram_csv(t: &Tomogram, dims: &[usize]) -> Result<String> {
    let mut buf = Vec::new();
    {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(&mut buf);
        let mut header: Vec<String> = (1..=dims.len()).map(|i| format!("m{i}")).collect();
        header.push("probability".into());
        w.write_record(&header).map_err(io_err)?;
        for (idx, &prob) in t.probabilities.iter().enumerate() {
            let mut row: Vec<String> = outcome_digits(dims, idx).iter().map(|m| m.to_string()).collect();
            row.push(format_real(prob));
            w.write_record(&row).map_err(io_err)?;
        }
        w.flush().map_err(io_err)?;
    }
    String::from_utf8(buf).map_err(io_err)
}
