// Writes the point sets behind the orthant and second-order cone
// pictures as CSV files into the current directory, or prints a summary
// when given `--dry-run`.
//
// ```text
// cargo run --example figure_data
// ```

use std::collections::BTreeMap;

use circumcone::cli::{figure_orthant, figure_soc};

fn summarize(csv: &str) -> BTreeMap<String, usize> {
    let mut counts = BTreeMap::new();
    for line in csv.lines().skip(1) {
        let series = line.split(',').next().unwrap_or_default();
        let key = series.trim_end_matches(|c: char| c.is_ascii_digit()).trim_end_matches('_');
        *counts.entry(key.to_string()).or_insert(0) += 1;
    }
    counts
}

pub fn run_with(write: bool) -> circumcone::Result<()> {
    for (name, csv) in [("orthant", figure_orthant()?), ("soc", figure_soc()?)] {
        println!("{name}: {:?}", summarize(&csv));
        if write {
            let path = format!("figure_{name}.csv");
            std::fs::write(&path, &csv).map_err(|e| circumcone::Error::Parse(e.to_string()))?;
            println!("  wrote {path}");
        }
    }
    Ok(())
}

pub fn run() -> circumcone::Result<()> {
    run_with(false)
}

#[allow(dead_code)]
fn main() -> circumcone::Result<()> {
    run_with(!std::env::args().any(|a| a == "--dry-run"))
}
