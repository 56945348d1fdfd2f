//! Shared output plumbing: the `--format` flag and field-name parsing.

use anyhow::{bail, Result};
use chev2::coeffring::Gf2m;
use clap::ValueEnum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RootsFormat {
    Text,
    Json,
    Csv,
}

/// Parse a field name such as `gf2`, `gf4`, `gf8`, ... `gf256`.
pub fn parse_field(name: &str) -> Result<Gf2m> {
    let lower = name.to_ascii_lowercase();
    let Some(order_str) = lower.strip_prefix("gf") else {
        bail!("unknown field {name:?}: expected gf2, gf4, gf8, ...");
    };
    let order: u64 = order_str.parse()?;
    if order < 2 || !order.is_power_of_two() {
        bail!("field order must be a power of 2, got {order}");
    }
    Ok(Gf2m::new(order.trailing_zeros())?)
}

/// Parse a field element: either its bit pattern as an integer, or a
/// polynomial in `t` over GF(2) such as `t+1` or `t^2+t`.
pub fn parse_element(field: Gf2m, input: &str) -> Result<chev2::coeffring::FieldElem> {
    let trimmed = input.trim();
    if let Ok(bits) = trimmed.parse::<u32>() {
        if u64::from(bits) >= field.order() {
            bail!(
                "bit pattern {bits} is out of range for a field of order {}",
                field.order()
            );
        }
        return Ok(field.element(bits));
    }
    let mut acc = field.zero();
    for term in trimmed.split('+') {
        let term = term.trim();
        let value = if term == "1" {
            field.one()
        } else if term == "t" {
            field.t()
        } else if let Some(exp) = term.strip_prefix("t^") {
            let e: u32 = exp.parse()?;
            let mut v = field.one();
            for _ in 0..e {
                v = v.checked_mul(field.t())?;
            }
            v
        } else {
            bail!("cannot parse field-element term {term:?} (use bits or 1/t/t^k sums)");
        };
        acc = acc.checked_add(value)?;
    }
    Ok(acc)
}

/// Parse an inclusive label range written `lo..hi`.
pub fn parse_label_range(input: &str) -> Result<(u32, u32)> {
    let Some((lo, hi)) = input.split_once("..") else {
        bail!("expected a range like 1..42, got {input:?}");
    };
    Ok((lo.trim().parse()?, hi.trim().parse()?))
}
