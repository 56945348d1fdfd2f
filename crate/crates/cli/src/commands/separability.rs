//! `chev2 separability` — group vs Lie-algebra centralizer dimensions.

use crate::output::Format;
use anyhow::Result;
use chev2::centralizer::{separability, solve_centralizer};
use chev2::e7;
use clap::Args;
use serde_json::json;

#[derive(Args)]
pub struct SeparabilityArgs {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

pub fn run(args: SeparabilityArgs) -> Result<()> {
    let ctx = e7::radical_context();
    let desc = solve_centralizer(&e7::k_generators(), &ctx)?;
    let report = separability(&desc);
    let witness = report.witness.as_ref().map(|w| w.display());
    match args.format {
        Format::Text => {
            println!(
                "group centralizer dimension:      {}",
                report.group_dimension
            );
            println!("infinitesimal fixed-space dim:    {}", report.lie_dimension);
            println!("separable:                        {}", report.separable);
            match &witness {
                Some(w) => println!("witness (fixed, not tangent):     {w}"),
                None => println!("witness:                          (none)"),
            }
        }
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "dim_lie_C": report.group_dimension,
                "dim_inf_c": report.lie_dimension,
                "separable": report.separable,
                "witness": witness,
            }))?
        ),
    }
    Ok(())
}
