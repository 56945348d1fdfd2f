//! `chev2 roots` — print the bundled positive-root table.

use crate::output::RootsFormat;
use anyhow::{bail, Result};
use chev2::e7;
use clap::Args;
use serde_json::json;

#[derive(Args)]
pub struct RootsArgs {
    /// Root-system type (only E7 is bundled).
    #[arg(long = "type", default_value = "E7")]
    system_type: String,
    #[arg(long, value_enum, default_value = "text")]
    format: RootsFormat,
}

pub fn run(args: RootsArgs) -> Result<()> {
    if !args.system_type.eq_ignore_ascii_case("e7") {
        bail!(
            "unsupported root-system type {:?} (bundled: E7)",
            args.system_type
        );
    }
    match args.format {
        RootsFormat::Csv => {
            // Byte-exact copy of the bundled table.
            print!("{}", e7::ROOTS_CSV);
        }
        RootsFormat::Text => {
            let system = e7::system();
            println!(
                "{:>5}  {:>20}  {:>6}  {:>5}",
                "label", "coordinates", "height", "sigma"
            );
            for label in system.positive_labels() {
                let root = system.root(label as i32)?;
                let coords: Vec<String> = root.coords().iter().map(|c| c.to_string()).collect();
                println!(
                    "{label:>5}  {:>20}  {:>6}  {:>5}",
                    coords.join(","),
                    root.height(),
                    e7::sigma_coefficient(label)?,
                );
            }
        }
        RootsFormat::Json => {
            let system = e7::system();
            let mut rows = Vec::new();
            for label in system.positive_labels() {
                let root = system.root(label as i32)?;
                rows.push(json!({
                    "label": label,
                    "coords": root.coords(),
                    "height": root.height(),
                    "sigma": e7::sigma_coefficient(label)?,
                }));
            }
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "type": "E7",
                    "positive_roots": rows,
                }))?
            );
        }
    }
    Ok(())
}
