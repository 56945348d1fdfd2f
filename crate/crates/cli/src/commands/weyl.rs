//! `chev2 weyl` — Weyl-word permutations and orbit partitions.

use crate::output::{parse_label_range, Format};
use anyhow::{bail, Result};
use chev2::e7;
use chev2::rootsys::Label;
use chev2::weyl::{group_closure, orbits, RootPermutation};
use clap::{Args, Subcommand};
use serde_json::json;
use std::collections::BTreeSet;

#[derive(Subcommand)]
pub enum WeylCommand {
    /// Print the root permutation of a Weyl word in cycle notation.
    Perm(PermArgs),
    /// Print the orbit partition of the group generated by several words.
    Orbits(OrbitsArgs),
}

#[derive(Args)]
pub struct PermArgs {
    /// The word: comma/space-separated simple-reflection letters
    /// (`e,b,c,a,b`, full names, or the presets q1/q2).
    #[arg(long)]
    word: String,
    /// Restrict the printed cycles to an inclusive label range.  The word
    /// must act by an honest permutation there (no sign changes); the
    /// default covers the labels every Levi word permutes.
    #[arg(long, default_value = "1..42")]
    restrict: String,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
pub struct OrbitsArgs {
    /// Comma-separated list of words (each in the `perm --word` syntax).
    #[arg(long, default_value = "q1,q2")]
    words: String,
    /// Domain of the action, as an inclusive label range.
    #[arg(long, default_value = "1..42")]
    restrict: String,
    /// Also report the order of the generated permutation group.
    #[arg(long, default_value_t = 10_000)]
    max_order: usize,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

fn domain_of(range: &str) -> Result<BTreeSet<Label>> {
    let (lo, hi) = parse_label_range(range)?;
    if lo < 1 || hi > 63 || lo > hi {
        bail!("label range must sit inside 1..63");
    }
    Ok((lo..=hi).collect())
}

pub fn run(cmd: WeylCommand) -> Result<()> {
    match cmd {
        WeylCommand::Perm(args) => {
            let word = e7::parse_word(&args.word)?;
            let perm = chev2::weyl::word_to_permutation(&e7::system(), &word);
            let domain = domain_of(&args.restrict)?;
            perm.stabilizes(&domain)?;
            let cycles = perm.cycle_string_on(&domain)?;
            let fixed = perm.fixed_points_on(&domain)?;
            match args.format {
                Format::Text => {
                    println!("word:   {}", word.display_with(&e7::system()));
                    println!("order:  {}", perm.order());
                    println!("cycles: {cycles}");
                    println!(
                        "fixed:  {}",
                        if fixed.is_empty() {
                            "(none)".to_string()
                        } else {
                            fixed
                                .iter()
                                .map(|l| l.to_string())
                                .collect::<Vec<_>>()
                                .join(" ")
                        }
                    );
                }
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "word": word.display_with(&e7::system()),
                        "order": perm.order(),
                        "cycles": cycles,
                        "fixed": fixed,
                    }))?
                ),
            }
        }
        WeylCommand::Orbits(args) => {
            let gens: Vec<RootPermutation> = args
                .words
                .split(',')
                .map(|w| {
                    let word = e7::parse_word(w.trim())?;
                    Ok(chev2::weyl::word_to_permutation(&e7::system(), &word))
                })
                .collect::<Result<_>>()?;
            if gens.is_empty() {
                bail!("need at least one word");
            }
            let domain = domain_of(&args.restrict)?;
            let partition = orbits(&gens, &domain)?;
            let group = group_closure(&gens, args.max_order)?;
            match args.format {
                Format::Text => {
                    println!("group order: {}", group.order());
                    for (i, orbit) in partition.orbits().iter().enumerate() {
                        println!(
                            "orbit {:>2} (size {:>2}): {}",
                            i + 1,
                            orbit.len(),
                            orbit
                                .iter()
                                .map(|l| l.to_string())
                                .collect::<Vec<_>>()
                                .join(" ")
                        );
                    }
                }
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "group_order": group.order(),
                        "orbits": partition.orbits(),
                        "representatives": partition.representatives(),
                    }))?
                ),
            }
        }
    }
    Ok(())
}
