//! `chev2 centralizer` — symbolic solve of the unipotent centralizer.

use crate::output::{parse_label_range, Format};
use anyhow::{bail, Result};
use chev2::centralizer::solve_centralizer;
use chev2::e7;
use chev2::weyl::RootPermutation;
use clap::Args;
use serde_json::json;

#[derive(Args)]
pub struct CentralizerArgs {
    /// Ambient group (only E7 is bundled).
    #[arg(long, default_value = "E7")]
    group: String,
    /// Comma-separated generating words (presets q1/q2 or letter syntax).
    #[arg(long, default_value = "q1,q2")]
    words: String,
    /// Radical support, as an inclusive label range.
    #[arg(long, default_value = "1..42")]
    radical: String,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Alias for `--format` kept for report tooling.
    #[arg(long, value_enum)]
    report: Option<Format>,
}

pub fn run(args: CentralizerArgs) -> Result<()> {
    if !args.group.eq_ignore_ascii_case("e7") {
        bail!("unsupported group {:?} (bundled: E7)", args.group);
    }
    let (lo, hi) = parse_label_range(&args.radical)?;
    if (lo, hi) != (1, 42) {
        bail!("the bundled radical support is 1..42");
    }
    let gens: Vec<RootPermutation> = args
        .words
        .split(',')
        .map(|w| {
            let word = e7::parse_word(w.trim())?;
            Ok(chev2::weyl::word_to_permutation(&e7::system(), &word))
        })
        .collect::<Result<_>>()?;
    let ctx = e7::radical_context();
    let desc = solve_centralizer(&gens, &ctx)?;

    // Coalesce consecutive labels carrying the same coefficient form.
    let mut runs: Vec<(u32, u32, String)> = Vec::new();
    for &label in ctx.support() {
        let form = desc
            .form(label)
            .map(|f| f.to_string())
            .unwrap_or_else(|| "0".to_string());
        match runs.last_mut() {
            Some((_, hi, f)) if *f == form && *hi + 1 == label => *hi = label,
            _ => runs.push((label, label, form)),
        }
    }

    let format = args.report.unwrap_or(args.format);
    match format {
        Format::Text => {
            println!("dimension: {}", desc.dimension());
            println!(
                "free parameters: {}",
                desc.free_params()
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            );
            println!("coefficient forms:");
            for (lo, hi, form) in &runs {
                if lo == hi {
                    println!("  label  {lo:>2}    : {form}");
                } else {
                    println!("  labels {lo:>2}..{hi:>2}: {form}");
                }
            }
        }
        Format::Json => {
            let form_runs: Vec<_> = runs
                .iter()
                .map(|(lo, hi, form)| json!({ "from": lo, "to": hi, "form": form }))
                .collect();
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "dimension": desc.dimension(),
                    "free_parameters": desc
                        .free_params()
                        .iter()
                        .map(|v| v.to_string())
                        .collect::<Vec<_>>(),
                    "orbits": desc.orbit_partition().orbits(),
                    "form_runs": form_runs,
                }))?
            );
        }
    }
    Ok(())
}
