//! `chev2 verify-paper` — run the full check catalogue.

use crate::output::{parse_field, Format};
use anyhow::{Context, Result};
use chev2::verify::{verify_all, VerifyOptions};
use clap::Args;

#[derive(Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Validate this CSV file as the root table instead of the bundled one
    /// (fault injection for the table-validation check only).
    #[arg(long)]
    roots_csv: Option<std::path::PathBuf>,
    /// Restrict exhaustive conjugacy cross-checks to one field
    /// (default: both GF(2) and GF(4)).
    #[arg(long)]
    field: Option<String>,
}

pub fn run(args: VerifyArgs) -> Result<i32> {
    let roots_csv_override = match &args.roots_csv {
        Some(path) => Some(
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?,
        ),
        None => None,
    };
    let brute_field = args.field.as_deref().map(parse_field).transpose()?;
    let report = verify_all(&VerifyOptions {
        roots_csv_override,
        brute_field,
    });
    match args.format {
        Format::Text => print!("{}", report.render_text()),
        Format::Json => println!("{}", report.render_json()),
    }
    Ok(if report.all_passed() { 0 } else { 1 })
}
