use std::io::{self, Write};

/// Significant digits for tabulated values.
pub const DIGITS: usize = 15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Real(f64, usize),
    Int(usize),
}

impl Cell {
    pub fn real(x: f64) -> Self {
        Cell::Real(x, DIGITS)
    }

    fn csv(&self) -> String {
        match self {
            Cell::Real(x, d) => format_sig(*x, *d),
            Cell::Int(n) => n.to_string(),
        }
    }

    fn json(&self) -> String {
        match self {
            Cell::Real(x, d) if x.is_finite() => format_sig(*x, *d),
            Cell::Real(..) => "null".into(),
            Cell::Int(n) => n.to_string(),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::real(x)
    }
}

impl From<usize> for Cell {
    fn from(n: usize) -> Self {
        Cell::Int(n)
    }
}

/// A table with a fixed header.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self { columns, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write(&self, format: Format, out: &mut impl Write) -> io::Result<()> {
        match format {
            Format::Csv => {
                writeln!(out, "{}", self.columns.join(","))?;
                for row in &self.rows {
                    let cells: Vec<String> = row.iter().map(Cell::csv).collect();
                    writeln!(out, "{}", cells.join(","))?;
                }
            }
            Format::Json => {
                writeln!(out, "[")?;
                for (i, row) in self.rows.iter().enumerate() {
                    let fields: Vec<String> =
                        self.columns.iter().zip(row).map(|(c, v)| format!("\"{c}\": {}", v.json())).collect();
                    let sep = if i + 1 < self.rows.len() { "," } else { "" };
                    writeln!(out, "  {{{}}}{sep}", fields.join(", "))?;
                }
                writeln!(out, "]")?;
            }
        }
        Ok(())
    }
}

/// `x` rounded to `digits` significant digits, without trailing zeros;
/// positional notation for moderate exponents, scientific otherwise.
pub fn format_sig(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "NaN".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let sci = format!("{:.*e}", digits.saturating_sub(1), x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..(digits as i32)).contains(&exp) {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim(&format!("{:.*}", decimals, x))
    } else {
        format!("{}e{exp}", trim(mantissa))
    }
}

fn trim(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}
