//! Achiever series written as CSV, then resumed from a truncated file.

use slow_walks::io::{parse_series_row, resume_rows, series_record, write_csv, SERIES_HEADER};
use slow_walks::slowest::{default_r, series, top_decade_slope, SeriesKind, ValidSet};
use slow_walks::Params;

fn main() -> slow_walks::Result<()> {
    let r = default_r();
    let target = Params::new(1, 2)?;
    let rows = series(&r, &target, SeriesKind::Inclusive, 50_000, 500, None)?;
    println!("i_(1,2)(50000) = {}", rows.last().unwrap().count);
    println!(
        "top-decade log-log slope: {:.4}",
        top_decade_slope(&rows).unwrap()
    );

    let one = Params::new(1, 1)?;
    let e = series(&r, &one, SeriesKind::Exclusive, 10_000, 1000, None)?;
    println!(
        "exclusive (1,1) fraction at 10^4: {:.4}",
        e.last().unwrap().value(SeriesKind::Exclusive)
    );

    let t: ValidSet = "1:6,2:3".parse()?;
    let target = Params::new(1, 6)?;
    let dir = std::env::temp_dir().join("slow_walks_series_example.csv");
    let all = series(&t, &target, SeriesKind::Exclusive, 20_000, 1000, None)?;
    let recs: Vec<Vec<String>> = all
        .iter()
        .map(|r| series_record(r, SeriesKind::Exclusive))
        .collect();
    write_csv(
        std::fs::File::create(&dir)?,
        &SERIES_HEADER,
        &recs[..8],
        false,
    )?;

    let done = resume_rows(&dir, &SERIES_HEADER)?.unwrap_or_default();
    let last = parse_series_row(done.last().unwrap(), SeriesKind::Exclusive)?;
    let rest = series(&t, &target, SeriesKind::Exclusive, 20_000, 1000, Some(last))?;
    let recs: Vec<Vec<String>> = rest
        .iter()
        .map(|r| series_record(r, SeriesKind::Exclusive))
        .collect();
    write_csv(
        std::fs::OpenOptions::new().append(true).open(&dir)?,
        &SERIES_HEADER,
        &recs,
        true,
    )?;
    let resumed = std::fs::read_to_string(&dir)?;
    println!(
        "resumed file has {} data rows, last: {}",
        resumed.lines().count() - 1,
        resumed.lines().last().unwrap()
    );
    std::fs::remove_file(&dir)?;
    Ok(())
}
