//! CSV tables with fixed float formatting, so reruns compare byte-for-byte.

use std::fs;
use std::path::{Path, PathBuf};

/// Round-trip float formatting used in every table.
pub fn real(x: f64) -> String {
    format!("{x:.17e}")
}

pub struct Table {
    name: String,
    header: Vec<String>,
    rows: Vec<Vec<String>>,
    trailers: Vec<(String, String)>,
}

impl Table {
    pub fn new(name: &str, header: &[&str]) -> Self {
        Self {
            name: name.to_string(),
            header: header.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
            trailers: Vec::new(),
        }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        debug_assert_eq!(cells.len(), self.header.len());
        self.rows.push(cells);
    }

    /// Appends a `#key=value` comment line after the rows.
    pub fn trailer(&mut self, key: &str, value: String) {
        self.trailers.push((key.to_string(), value));
    }

    pub fn file_name(&self) -> String {
        format!("{}.csv", self.name)
    }

    pub fn render(&self) -> String {
        let mut out = self.header.join(",") + "\n";
        for r in &self.rows {
            out += &r.join(",");
            out.push('\n');
        }
        for (k, v) in &self.trailers {
            out += &format!("#{k}={v}\n");
        }
        out
    }

    pub fn write(&self, dir: &Path) -> std::io::Result<PathBuf> {
        let path = dir.join(self.file_name());
        fs::write(&path, self.render())?;
        Ok(path)
    }
}

/// Slope cell for a `#slope=` trailer; `none` when no fit was possible.
pub fn slope_cell(slope: Option<f64>) -> String {
    slope.map_or_else(|| "none".to_string(), real)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_header_rows_trailers() {
        let mut t = Table::new("x", &["N", "value"]);
        t.row(vec![real(2.0), real(0.5)]);
        t.trailer("slope", slope_cell(None));
        assert_eq!(
            t.render(),
            "N,value\n2.00000000000000000e0,5.00000000000000000e-1\n#slope=none\n"
        );
    }
}
