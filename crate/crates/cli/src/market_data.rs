//! CSV market-data loading and validation.
//!
//! All rates are decimals internally; columns quoted in percent (any
//! magnitude above 1) are divided by 100 on load. Date columns are
//! ISO-8601 strings kept verbatim; consecutive history rows are one
//! trading day apart under the 360-day convention, which is all the
//! estimators need.

use crate::error::{io_err, CliError, Result};
use cva_core::curves::{DepositQuote, SwapQuote};
use std::path::{Path, PathBuf};

pub use cva_core::series::log_returns;

/// Default file layout of a fixture directory.
#[derive(Debug, Clone)]
pub struct FixturePaths {
    pub deposits_dom: PathBuf,
    pub deposits_for: PathBuf,
    pub swaps_dom: PathBuf,
    pub swaps_for: PathBuf,
    pub cds: PathBuf,
    pub cds_history: PathBuf,
    pub fx: PathBuf,
    pub yields_dom: PathBuf,
    pub yields_for: PathBuf,
    pub swaption_dom: PathBuf,
    pub swaption_for: PathBuf,
    pub scalars: PathBuf,
}

impl FixturePaths {
    pub fn in_dir(dir: &Path) -> Self {
        let p = |name: &str| dir.join(name);
        FixturePaths {
            deposits_dom: p("deposits_dom.csv"),
            deposits_for: p("deposits_for.csv"),
            swaps_dom: p("swaps_dom.csv"),
            swaps_for: p("swaps_for.csv"),
            cds: p("cds.csv"),
            cds_history: p("cds_history.csv"),
            fx: p("fx.csv"),
            yields_dom: p("yields_dom.csv"),
            yields_for: p("yields_for.csv"),
            swaption_dom: p("swaption_dom.csv"),
            swaption_for: p("swaption_for.csv"),
            scalars: p("scalars.csv"),
        }
    }
}

/// Swaption quote row: expiry, underlying tenor, market price (ATM
/// strike is derived from the fitted curve at calibration time).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SwaptionRow {
    pub expiry: f64,
    pub tenor: f64,
    pub price: f64,
}

/// Validated market inputs anchored to a valuation date.
#[derive(Debug, Clone, PartialEq)]
pub struct MarketSnapshot {
    pub valuation_date: String,
    pub deposits_dom: Vec<DepositQuote>,
    pub deposits_for: Vec<DepositQuote>,
    pub swaps_dom: Vec<SwapQuote>,
    pub swaps_for: Vec<SwapQuote>,
    /// CDS term structure (tenor, spread) at the valuation date.
    pub cds_spreads: Option<Vec<(f64, f64)>>,
    /// Historical series of the single-tenor CDS spread.
    pub cds_history: Option<Vec<(String, f64)>>,
    pub fx_history: Option<Vec<(String, f64)>>,
    /// (date, tenor, zero rate) rows.
    pub yield_history_dom: Option<Vec<(String, f64, f64)>>,
    pub yield_history_for: Option<Vec<(String, f64, f64)>>,
    pub swaption_dom: Option<SwaptionRow>,
    pub swaption_for: Option<SwaptionRow>,
    /// Implied FX volatility, decimal per sqrt-year.
    pub fx_vol: f64,
    /// Spot FX, domestic units per foreign unit.
    pub spot_fx: f64,
}

fn file_label(path: &Path) -> String {
    path.file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

struct CsvTable {
    file: String,
    rows: Vec<(usize, Vec<String>)>,
}

/// Read and shape-check one CSV: exact header match, fixed column
/// count. Row numbers are 1-based file lines (header is line 1).
fn read_csv(path: &Path, header: &[&str]) -> Result<CsvTable> {
    if !path.exists() {
        return Err(CliError::MissingFile { path: path.into() });
    }
    let file = file_label(path);
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| CliError::SchemaViolation {
            file: file.clone(),
            row: 1,
            detail: e.to_string(),
        })?;
    let got: Vec<String> = reader
        .headers()
        .map_err(|e| CliError::SchemaViolation {
            file: file.clone(),
            row: 1,
            detail: e.to_string(),
        })?
        .iter()
        .map(|s| s.to_string())
        .collect();
    if got != header {
        return Err(CliError::SchemaViolation {
            file,
            row: 1,
            detail: format!("expected header {header:?}, found {got:?}"),
        });
    }
    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let row = i + 2;
        let record = record.map_err(|e| CliError::SchemaViolation {
            file: file.clone(),
            row,
            detail: e.to_string(),
        })?;
        if record.len() != header.len() {
            return Err(CliError::SchemaViolation {
                file,
                row,
                detail: format!("expected {} columns, found {}", header.len(), record.len()),
            });
        }
        rows.push((row, record.iter().map(|s| s.to_string()).collect()));
    }
    Ok(CsvTable { file, rows })
}

fn parse_f64(table: &CsvTable, row: usize, value: &str) -> Result<f64> {
    let v: f64 = value.parse().map_err(|_| CliError::SchemaViolation {
        file: table.file.clone(),
        row,
        detail: format!("{value:?} is not a number"),
    })?;
    if !v.is_finite() {
        return Err(CliError::SchemaViolation {
            file: table.file.clone(),
            row,
            detail: format!("{value:?} is not finite"),
        });
    }
    Ok(v)
}

/// Percent-quoted rates (magnitude above 1) are converted to decimals.
fn as_decimal_rate(v: f64) -> f64 {
    if v.abs() > 1.0 {
        v / 100.0
    } else {
        v
    }
}

fn load_tenor_rate(path: &Path, header: &[&str], positive: bool) -> Result<Vec<(f64, f64)>> {
    let table = read_csv(path, header)?;
    let mut out = Vec::with_capacity(table.rows.len());
    let mut prev = f64::NEG_INFINITY;
    for (row, cols) in &table.rows {
        let tenor = parse_f64(&table, *row, &cols[0])?;
        let rate = as_decimal_rate(parse_f64(&table, *row, &cols[1])?);
        if tenor <= prev {
            return Err(CliError::NonMonotoneTenor {
                file: table.file,
                row: *row,
                tenor,
            });
        }
        if tenor <= 0.0 {
            return Err(CliError::NonPositiveQuote {
                file: table.file,
                row: *row,
                value: tenor,
            });
        }
        if positive && rate <= 0.0 {
            return Err(CliError::NonPositiveQuote {
                file: table.file,
                row: *row,
                value: rate,
            });
        }
        prev = tenor;
        out.push((tenor, rate));
    }
    Ok(out)
}

fn load_dated_series(path: &Path, header: &[&str], positive: bool) -> Result<Vec<(String, f64)>> {
    let table = read_csv(path, header)?;
    let mut out = Vec::with_capacity(table.rows.len());
    let mut prev = String::new();
    for (row, cols) in &table.rows {
        let date = cols[0].clone();
        let value = parse_f64(&table, *row, &cols[1])?;
        if date <= prev {
            return Err(CliError::NonMonotoneDate {
                file: table.file,
                row: *row,
                date,
            });
        }
        if positive && value <= 0.0 {
            return Err(CliError::NonPositiveQuote {
                file: table.file,
                row: *row,
                value,
            });
        }
        prev = date.clone();
        out.push((date, value));
    }
    Ok(out)
}

fn load_yields(path: &Path) -> Result<Vec<(String, f64, f64)>> {
    let table = read_csv(path, &["date", "tenor_y", "zero_rate"])?;
    let mut out = Vec::with_capacity(table.rows.len());
    for (row, cols) in &table.rows {
        let tenor = parse_f64(&table, *row, &cols[1])?;
        let zero = as_decimal_rate(parse_f64(&table, *row, &cols[2])?);
        out.push((cols[0].clone(), tenor, zero));
    }
    Ok(out)
}

fn load_swaption(path: &Path) -> Result<SwaptionRow> {
    let table = read_csv(path, &["expiry_y", "tenor_y", "price"])?;
    match table.rows.as_slice() {
        [(row, cols)] => Ok(SwaptionRow {
            expiry: parse_f64(&table, *row, &cols[0])?,
            tenor: parse_f64(&table, *row, &cols[1])?,
            price: parse_f64(&table, *row, &cols[2])?,
        }),
        _ => Err(CliError::SchemaViolation {
            file: table.file,
            row: table.rows.len() + 1,
            detail: format!("expected exactly one quote row, found {}", table.rows.len()),
        }),
    }
}

fn load_scalars(path: &Path) -> Result<(f64, f64)> {
    let table = read_csv(path, &["key", "value"])?;
    let (mut fx_vol, mut spot_fx) = (None, None);
    for (row, cols) in &table.rows {
        let value = parse_f64(&table, *row, &cols[1])?;
        match cols[0].as_str() {
            "fx_vol" => fx_vol = Some(value),
            "spot_fx" => spot_fx = Some(value),
            other => {
                return Err(CliError::SchemaViolation {
                    file: table.file,
                    row: *row,
                    detail: format!("unknown scalar key {other:?}"),
                })
            }
        }
    }
    let need = |name: &str, v: Option<f64>| {
        v.ok_or_else(|| CliError::SchemaViolation {
            file: file_label(path),
            row: 1,
            detail: format!("missing scalar {name:?}"),
        })
    };
    let fx_vol = need("fx_vol", fx_vol)?;
    let spot_fx = need("spot_fx", spot_fx)?;
    if spot_fx <= 0.0 {
        return Err(CliError::NonPositiveQuote {
            file: file_label(path),
            row: 1,
            value: spot_fx,
        });
    }
    Ok((fx_vol, spot_fx))
}

fn optional<T>(result: Result<T>) -> Result<Option<T>> {
    match result {
        Ok(v) => Ok(Some(v)),
        Err(CliError::MissingFile { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Load and validate the full snapshot. History files and swaption
/// quotes may be absent; the pipeline errors at the step that needs
/// them.
pub fn load_snapshot(paths: &FixturePaths, valuation_date: &str) -> Result<MarketSnapshot> {
    let deposits = |p: &Path| -> Result<Vec<DepositQuote>> {
        Ok(load_tenor_rate(p, &["tenor_yf", "rate"], false)?
            .into_iter()
            .map(|(tenor, rate)| DepositQuote { tenor, rate })
            .collect())
    };
    let swaps = |p: &Path| -> Result<Vec<SwapQuote>> {
        Ok(load_tenor_rate(p, &["tenor_y", "par_rate"], false)?
            .into_iter()
            .map(|(tenor, rate)| SwapQuote { tenor, rate })
            .collect())
    };
    let (fx_vol, spot_fx) = load_scalars(&paths.scalars)?;
    Ok(MarketSnapshot {
        valuation_date: valuation_date.to_string(),
        deposits_dom: deposits(&paths.deposits_dom)?,
        deposits_for: deposits(&paths.deposits_for)?,
        swaps_dom: swaps(&paths.swaps_dom)?,
        swaps_for: swaps(&paths.swaps_for)?,
        cds_spreads: optional(load_tenor_rate(&paths.cds, &["tenor_y", "spread"], true))?,
        cds_history: optional(load_dated_series(
            &paths.cds_history,
            &["date", "spread"],
            true,
        ))?,
        fx_history: optional(load_dated_series(&paths.fx, &["date", "spot"], true))?,
        yield_history_dom: optional(load_yields(&paths.yields_dom))?,
        yield_history_for: optional(load_yields(&paths.yields_for))?,
        swaption_dom: optional(load_swaption(&paths.swaption_dom))?,
        swaption_for: optional(load_swaption(&paths.swaption_for))?,
        fx_vol,
        spot_fx,
    })
}

/// Write the snapshot back out in the fixture layout. Floats use the
/// shortest round-trip representation, so a reload is field-identical.
pub fn write_snapshot(snapshot: &MarketSnapshot, dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(io_err(dir))?;
    let paths = FixturePaths::in_dir(dir);
    let write = |path: &Path, header: &str, lines: Vec<String>| -> Result<()> {
        let mut body = String::from(header);
        body.push('\n');
        for line in lines {
            body.push_str(&line);
            body.push('\n');
        }
        std::fs::write(path, body).map_err(io_err(path))
    };
    write(
        &paths.deposits_dom,
        "tenor_yf,rate",
        snapshot
            .deposits_dom
            .iter()
            .map(|q| format!("{},{}", q.tenor, q.rate))
            .collect(),
    )?;
    write(
        &paths.deposits_for,
        "tenor_yf,rate",
        snapshot
            .deposits_for
            .iter()
            .map(|q| format!("{},{}", q.tenor, q.rate))
            .collect(),
    )?;
    write(
        &paths.swaps_dom,
        "tenor_y,par_rate",
        snapshot
            .swaps_dom
            .iter()
            .map(|q| format!("{},{}", q.tenor, q.rate))
            .collect(),
    )?;
    write(
        &paths.swaps_for,
        "tenor_y,par_rate",
        snapshot
            .swaps_for
            .iter()
            .map(|q| format!("{},{}", q.tenor, q.rate))
            .collect(),
    )?;
    if let Some(cds) = &snapshot.cds_spreads {
        write(
            &paths.cds,
            "tenor_y,spread",
            cds.iter().map(|(t, s)| format!("{t},{s}")).collect(),
        )?;
    }
    if let Some(history) = &snapshot.cds_history {
        write(
            &paths.cds_history,
            "date,spread",
            history.iter().map(|(d, s)| format!("{d},{s}")).collect(),
        )?;
    }
    if let Some(history) = &snapshot.fx_history {
        write(
            &paths.fx,
            "date,spot",
            history.iter().map(|(d, s)| format!("{d},{s}")).collect(),
        )?;
    }
    for (path, history) in [
        (&paths.yields_dom, &snapshot.yield_history_dom),
        (&paths.yields_for, &snapshot.yield_history_for),
    ] {
        if let Some(history) = history {
            write(
                path,
                "date,tenor_y,zero_rate",
                history
                    .iter()
                    .map(|(d, t, z)| format!("{d},{t},{z}"))
                    .collect(),
            )?;
        }
    }
    for (path, quote) in [
        (&paths.swaption_dom, &snapshot.swaption_dom),
        (&paths.swaption_for, &snapshot.swaption_for),
    ] {
        if let Some(q) = quote {
            write(
                path,
                "expiry_y,tenor_y,price",
                vec![format!("{},{},{}", q.expiry, q.tenor, q.price)],
            )?;
        }
    }
    write(
        &paths.scalars,
        "key,value",
        vec![
            format!("fx_vol,{}", snapshot.fx_vol),
            format!("spot_fx,{}", snapshot.spot_fx),
        ],
    )
}
