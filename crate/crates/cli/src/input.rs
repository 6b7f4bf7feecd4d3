//! Cell and matching file formats.

use std::fs;
use std::path::Path;

use crate::CliError;

pub type Cell = (i32, i32);

/// Parse a cell file. JSON input is a list of `[row, column]` pairs.
/// Anything else is read as an ASCII picture where `#` marks a cell and
/// the last line is row 0.
pub fn parse_cells(text: &str) -> Result<Vec<Cell>, CliError> {
    let trimmed = text.trim_start();
    let mut cells = if trimmed.starts_with('[') {
        serde_json::from_str::<Vec<Cell>>(trimmed).map_err(|e| CliError::Input(format!("cell list: {e}")))?
    } else {
        parse_ascii(text)?
    };
    cells.sort_unstable();
    cells.dedup();
    Ok(cells)
}

fn parse_ascii(text: &str) -> Result<Vec<Cell>, CliError> {
    let lines: Vec<&str> = text.lines().map(str::trim_end).filter(|l| !l.is_empty()).collect();
    let mut cells = Vec::new();
    for (i, line) in lines.iter().enumerate() {
        let row = (lines.len() - 1 - i) as i32;
        for (col, ch) in line.chars().enumerate() {
            match ch {
                '#' => cells.push((row, col as i32)),
                '.' | ' ' => {}
                other => return Err(CliError::Input(format!("unexpected {other:?} in cell picture"))),
            }
        }
    }
    Ok(cells)
}

pub fn read_cells(path: &Path) -> Result<Vec<Cell>, CliError> {
    parse_cells(&read(path)?)
}

pub fn parse_matching(text: &str) -> Result<Vec<(usize, usize)>, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Input(format!("matching: {e}")))
}

pub fn read_matching(path: &Path) -> Result<Vec<(usize, usize)>, CliError> {
    parse_matching(&read(path)?)
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}
