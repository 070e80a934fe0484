//! Numeric CSV tables with a fixed header.

use crate::error::{Error, Result};

/// Parse rows of floats under the exact header `columns`.
pub(crate) fn read(text: &str, columns: &[&str]) -> Result<Vec<Vec<f64>>> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let header = reader.headers().map_err(|e| Error::Format(e.to_string()))?;
    if !header.iter().eq(columns.iter().copied()) {
        return Err(Error::Format(format!(
            "expected header `{}`, found `{}`",
            columns.join(","),
            header.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Error::Format(e.to_string()))?;
        let row = record
            .iter()
            .map(|c| c.parse::<f64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::Format(format!("row {}: {e}", i + 1)))?;
        rows.push(row);
    }
    Ok(rows)
}

/// Write rows with 17 significant digits per value.
pub(crate) fn write<I>(columns: &[&str], rows: I) -> String
where
    I: IntoIterator,
    I::Item: AsRef<[f64]>,
{
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(columns).expect("in-memory write");
    for row in rows {
        writer
            .write_record(row.as_ref().iter().map(|v| format!("{v:.16e}")))
            .expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("ascii output")
}
