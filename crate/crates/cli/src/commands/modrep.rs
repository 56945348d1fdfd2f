//! `chev2 modrep` — module decomposition over small fields.

use crate::output::{parse_field, Format};
use anyhow::{bail, Result};
use chev2::e7;
use chev2::modrep::{is_completely_reducible, permutation_module, DEFAULT_SPIN_BOUND};
use chev2::rootsys::Label;
use clap::{Args, Subcommand};
use serde_json::json;

#[derive(Subcommand)]
pub enum ModrepCommand {
    /// Decompose a named module into indecomposable (here: irreducible
    /// or non-split) summands.
    Decompose(DecomposeArgs),
}

#[derive(Args)]
pub struct DecomposeArgs {
    /// Module name. `D14-perm7` is the permutation module of the two
    /// distinguished words on the seven center labels.
    #[arg(long, default_value = "D14-perm7")]
    group: String,
    /// Field (gf2, gf4, gf8, ...).
    #[arg(long, default_value = "gf8")]
    field: String,
    /// Budget for exhaustive irreducibility certification.
    #[arg(long, default_value_t = DEFAULT_SPIN_BOUND)]
    bound: u64,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

pub fn run(cmd: ModrepCommand) -> Result<()> {
    match cmd {
        ModrepCommand::Decompose(args) => decompose(args),
    }
}

fn decompose(args: DecomposeArgs) -> Result<()> {
    if !args.group.eq_ignore_ascii_case("d14-perm7") {
        bail!("unknown module {:?} (bundled: D14-perm7)", args.group);
    }
    let field = parse_field(&args.field)?;
    let domain: Vec<Label> = (36..=42).collect();
    let perms = vec![
        e7::q1_perm().images_on(&domain)?,
        e7::q2_perm().images_on(&domain)?,
    ];
    let rep = permutation_module(field, &perms)?;
    let report = is_completely_reducible(&rep, args.bound)?;
    match args.format {
        Format::Text => {
            println!("module:    {} over GF({})", args.group, field.order());
            println!("dimension: {}", rep.dim());
            println!("completely reducible: {}", report.completely_reducible);
            println!("summand dimensions:   {:?}", report.summand_dims);
            if let Some(d) = report.obstruction_dim {
                println!("non-split submodule dimension: {d}");
            }
            for (i, s) in report.summands.iter().enumerate() {
                let rows: Vec<String> = (0..s.basis.rows())
                    .map(|r| {
                        s.basis
                            .row(r)
                            .iter()
                            .map(|e| e.to_string())
                            .collect::<Vec<_>>()
                            .join(",")
                    })
                    .collect();
                println!(
                    "summand {} (dim {}): basis rows [{}]",
                    i + 1,
                    s.dim(),
                    rows.join(" | ")
                );
            }
        }
        Format::Json => {
            let summands: Vec<_> = report
                .summands
                .iter()
                .map(|s| {
                    let basis: Vec<Vec<String>> = (0..s.basis.rows())
                        .map(|r| s.basis.row(r).iter().map(|e| e.to_string()).collect())
                        .collect();
                    json!({ "dim": s.dim(), "basis": basis })
                })
                .collect();
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "module": args.group,
                    "field_order": field.order(),
                    "dimension": rep.dim(),
                    "completely_reducible": report.completely_reducible,
                    "summand_dims": report.summand_dims,
                    "obstruction_dim": report.obstruction_dim,
                    "summands": summands,
                }))?
            );
        }
    }
    Ok(())
}
