//! Square count/probability tables and their CSV and JSON file formats.
//!
//! CSV: a header line `# dab-matrix m=<m> mode=<exact|float>` followed by
//! `2m` rows of `2m` comma-separated values. Exact entries are decimal
//! integers; float entries use the shortest decimal that round-trips.
//!
//! JSON: `{"m":<m>,"mode":"<mode>","rows":[[...],...]}` with the same number
//! spellings.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde_json::{Map, Number, Value};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Exact,
    Float,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Exact => "exact",
            Mode::Float => "float",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Mode::Exact),
            "float" => Ok(Mode::Float),
            other => Err(Error::InvalidArgument(format!(
                "mode must be exact or float, got {other:?}"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Entries {
    Exact(Vec<BigUint>),
    Float(Vec<f64>),
}

/// An `n x n` table stored row-major. For `B_{2m}` tables `n = 2m`; row `i`
/// is the position and column `j` the value.
#[derive(Clone, Debug, PartialEq)]
pub struct CountMatrix {
    n: usize,
    entries: Entries,
}

impl CountMatrix {
    pub fn exact(n: usize, entries: Vec<BigUint>) -> Result<Self> {
        check_len(n, entries.len())?;
        Ok(CountMatrix {
            n,
            entries: Entries::Exact(entries),
        })
    }

    pub fn float(n: usize, entries: Vec<f64>) -> Result<Self> {
        check_len(n, entries.len())?;
        Ok(CountMatrix {
            n,
            entries: Entries::Float(entries),
        })
    }

    /// Side length.
    pub fn size(&self) -> usize {
        self.n
    }

    /// Half-length `m` of a `2m x 2m` table.
    pub fn m(&self) -> usize {
        self.n / 2
    }

    pub fn mode(&self) -> Mode {
        match self.entries {
            Entries::Exact(_) => Mode::Exact,
            Entries::Float(_) => Mode::Float,
        }
    }

    pub fn entries(&self) -> &Entries {
        &self.entries
    }

    fn index(&self, i: usize, j: usize) -> usize {
        assert!(
            (1..=self.n).contains(&i) && (1..=self.n).contains(&j),
            "({i}, {j}) outside a {n}x{n} matrix",
            n = self.n
        );
        (i - 1) * self.n + (j - 1)
    }

    /// Entry at 1-based `(i, j)` of an exact table.
    pub fn exact_entry(&self, i: usize, j: usize) -> Option<BigUint> {
        match &self.entries {
            Entries::Exact(v) => Some(v[self.index(i, j)].clone()),
            Entries::Float(_) => None,
        }
    }

    /// Entry at 1-based `(i, j)` as a float; exact entries are converted.
    pub fn get_f64(&self, i: usize, j: usize) -> f64 {
        let idx = self.index(i, j);
        match &self.entries {
            Entries::Exact(v) => v[idx].to_f64().unwrap_or(f64::INFINITY),
            Entries::Float(v) => v[idx],
        }
    }

    /// Sum of row `i` as an exact integer (exact mode only).
    pub fn exact_row_sum(&self, i: usize) -> Option<BigUint> {
        match &self.entries {
            Entries::Exact(v) => Some(v[(i - 1) * self.n..i * self.n].iter().sum()),
            Entries::Float(_) => None,
        }
    }

    pub fn exact_col_sum(&self, j: usize) -> Option<BigUint> {
        match &self.entries {
            Entries::Exact(v) => Some((0..self.n).map(|r| &v[r * self.n + j - 1]).sum()),
            Entries::Float(_) => None,
        }
    }

    pub fn row_sum_f64(&self, i: usize) -> f64 {
        (1..=self.n).map(|j| self.get_f64(i, j)).sum()
    }

    pub fn col_sum_f64(&self, j: usize) -> f64 {
        (1..=self.n).map(|i| self.get_f64(i, j)).sum()
    }

    /// Whether every entry satisfies `M[i][j] = M[j][i] = M[n+1-j][n+1-i]`.
    pub fn has_square_symmetries(&self) -> bool {
        let n = self.n;
        (1..=n).all(|i| {
            (1..=n).all(|j| {
                let here = self.index(i, j);
                let transposed = self.index(j, i);
                let anti = self.index(n + 1 - j, n + 1 - i);
                match &self.entries {
                    Entries::Exact(v) => v[here] == v[transposed] && v[here] == v[anti],
                    Entries::Float(v) => v[here] == v[transposed] && v[here] == v[anti],
                }
            })
        })
    }

    fn cell_text(&self, idx: usize) -> String {
        match &self.entries {
            Entries::Exact(v) => v[idx].to_string(),
            Entries::Float(v) => format_float(v[idx]),
        }
    }

    fn header(&self) -> String {
        format!("# dab-matrix m={} mode={}", self.m(), self.mode())
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.header();
        out.push('\n');
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n)
                .map(|j| self.cell_text(i * self.n + j))
                .collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or_else(|| Error::parse(1, "empty input"))?;
        let (m, mode) = parse_header(header)?;
        let n = 2 * m;
        let mut cells: Vec<&str> = Vec::with_capacity(n * n);
        let mut rows = 0;
        for (idx, line) in lines {
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != n {
                return Err(Error::parse(
                    idx + 1,
                    format!("expected {n} values, found {}", fields.len()),
                ));
            }
            cells.extend(fields);
            rows += 1;
        }
        if rows != n {
            return Err(Error::parse(
                text.lines().count(),
                format!("expected {n} rows, found {rows}"),
            ));
        }
        Self::from_cells(n, mode, cells.iter().map(|s| s.trim()))
    }

    fn from_cells<'a>(n: usize, mode: Mode, cells: impl Iterator<Item = &'a str>) -> Result<Self> {
        match mode {
            Mode::Exact => {
                let v = cells
                    .enumerate()
                    .map(|(k, s)| {
                        s.parse::<BigUint>().map_err(|_| {
                            Error::parse(2 + k / n.max(1), format!("bad integer {s:?}"))
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                CountMatrix::exact(n, v)
            }
            Mode::Float => {
                let v = cells
                    .enumerate()
                    .map(|(k, s)| {
                        s.parse::<f64>()
                            .map_err(|_| Error::parse(2 + k / n.max(1), format!("bad float {s:?}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                CountMatrix::float(n, v)
            }
        }
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<Value> = (0..self.n)
            .map(|i| {
                Value::Array(
                    (0..self.n)
                        .map(|j| {
                            let text = self.cell_text(i * self.n + j);
                            Value::Number(text.parse::<Number>().expect("numeric cell"))
                        })
                        .collect(),
                )
            })
            .collect();
        let mut obj = Map::new();
        obj.insert("m".into(), Value::from(self.m()));
        obj.insert("mode".into(), Value::from(self.mode().to_string()));
        obj.insert("rows".into(), Value::Array(rows));
        let mut out = Value::Object(obj).to_string();
        out.push('\n');
        out
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let value: Value =
            serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.to_string()))?;
        let m = value
            .get("m")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::parse(1, "missing integer field m"))? as usize;
        let mode: Mode = value
            .get("mode")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::parse(1, "missing string field mode"))?
            .parse()?;
        let rows = value
            .get("rows")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::parse(1, "missing array field rows"))?;
        let n = 2 * m;
        if rows.len() != n {
            return Err(Error::parse(
                1,
                format!("expected {n} rows, found {}", rows.len()),
            ));
        }
        let mut cells = Vec::with_capacity(n * n);
        for row in rows {
            let row = row
                .as_array()
                .filter(|r| r.len() == n)
                .ok_or_else(|| Error::parse(1, format!("every row must hold {n} numbers")))?;
            for cell in row {
                match cell {
                    Value::Number(num) => cells.push(num.to_string()),
                    _ => return Err(Error::parse(1, "non-numeric cell")),
                }
            }
        }
        Self::from_cells(n, mode, cells.iter().map(String::as_str))
    }
}

fn check_len(n: usize, len: usize) -> Result<()> {
    if len != n * n {
        return Err(Error::InvalidArgument(format!(
            "a {n}x{n} matrix needs {} entries, got {len}",
            n * n
        )));
    }
    Ok(())
}

fn parse_header(line: &str) -> Result<(usize, Mode)> {
    let rest = line
        .strip_prefix("# dab-matrix ")
        .ok_or_else(|| Error::parse(1, "missing '# dab-matrix' header"))?;
    let mut m = None;
    let mut mode = None;
    for field in rest.split_whitespace() {
        match field.split_once('=') {
            Some(("m", v)) => m = v.parse::<usize>().ok(),
            Some(("mode", v)) => mode = v.parse::<Mode>().ok(),
            _ => return Err(Error::parse(1, format!("unknown header field {field:?}"))),
        }
    }
    match (m, mode) {
        (Some(m), Some(mode)) => Ok((m, mode)),
        _ => Err(Error::parse(
            1,
            "header needs m=<int> and mode=<exact|float>",
        )),
    }
}

/// Shortest decimal that parses back to the same `f64`.
pub fn format_float(x: f64) -> String {
    // Display for f64 already prints the shortest round-trip digits
    let s = format!("{x}");
    if s == "-0" {
        "0".to_string()
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sample_exact() -> CountMatrix {
        CountMatrix::exact(
            4,
            [1u32, 0, 1, 0, 0, 1, 0, 1, 1, 0, 1, 0, 0, 1, 0, 1]
                .iter()
                .map(|&v| BigUint::from(v))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn csv_layout() {
        let csv = sample_exact().to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("# dab-matrix m=2 mode=exact"));
        assert_eq!(lines.next(), Some("1,0,1,0"));
        assert_eq!(csv.lines().count(), 5);
    }

    #[test]
    fn json_layout() {
        let json = sample_exact().to_json();
        assert!(json.starts_with(r#"{"m":2,"mode":"exact","rows":[[1,0,1,0],"#));
        let back = CountMatrix::from_json(&json).unwrap();
        assert_eq!(back, sample_exact());
    }

    #[test]
    fn big_integers_survive_json() {
        let huge: BigUint = "123456789012345678901234567890123456789".parse().unwrap();
        let m = CountMatrix::exact(2, vec![huge.clone(), 0u32.into(), 0u32.into(), huge]).unwrap();
        let json = m.to_json();
        assert!(json.contains("123456789012345678901234567890123456789"));
        assert_eq!(CountMatrix::from_json(&json).unwrap(), m);
    }

    #[test]
    fn rejects_malformed_csv() {
        assert!(CountMatrix::from_csv("").is_err());
        assert!(CountMatrix::from_csv("# dab-matrix m=1 mode=exact\n1,0\n").is_err());
        assert!(CountMatrix::from_csv("# dab-matrix m=1 mode=exact\n1,0\n0\n").is_err());
        assert!(CountMatrix::from_csv("# dab-matrix m=1 mode=nope\n1,0\n0,1\n").is_err());
        assert!(CountMatrix::from_csv("# dab-matrix m=1 mode=exact\n1,x\n0,1\n").is_err());
    }

    #[test]
    fn symmetry_check() {
        assert!(sample_exact().has_square_symmetries());
        let lopsided = CountMatrix::float(2, vec![1.0, 0.0, 0.5, 0.5]).unwrap();
        assert!(!lopsided.has_square_symmetries());
    }

    proptest! {
        #[test]
        fn float_csv_and_json_round_trip(
            m in 1usize..4,
            seed in proptest::collection::vec(-1e300f64..1e300, 64),
        ) {
            let n = 2 * m;
            let matrix = CountMatrix::float(n, seed[..n * n].to_vec()).unwrap();
            let csv = matrix.to_csv();
            let back = CountMatrix::from_csv(&csv).unwrap();
            prop_assert_eq!(&back, &matrix);
            prop_assert_eq!(back.to_csv(), csv);
            let json = matrix.to_json();
            let back = CountMatrix::from_json(&json).unwrap();
            prop_assert_eq!(&back, &matrix);
            prop_assert_eq!(back.to_json(), json);
        }
    }
}
