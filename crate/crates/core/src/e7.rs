//! The bundled rank-7 configuration: a labeled root table, two
//! distinguished Weyl words generating a dihedral group of order 14, the
//! grading cocharacter, and the parabolic/radical presets built from them.
//!
//! The simple roots are named `alpha, beta, gamma, delta, epsilon, eta,
//! sigma`: the first six form a chain and `sigma` attaches to `delta`, so
//! removing `sigma` leaves a chain of length 6. Positive roots are labeled
//! 1..=63 by the bundled table (`data/e7_roots.csv`); labels 1..=35 have
//! `sigma`-coefficient 1, labels 36..=42 have 2, and labels 43..=63 are
//! the `sigma`-free chain subsystem.

use crate::chevalley::{ChevError, MixedElement, RadicalContext, UnipotentElement};
use crate::coeffring::Coeff;
use crate::crgit::{Cocharacter, ParabolicDecomposition};
use crate::rootsys::{CartanDatum, Label, RootSysError, RootSystem};
use crate::weyl::{word_to_permutation, RootPermutation, WeylError, WeylWord};
use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};
use thiserror::Error;

/// The bundled root table. Column order: label, then the coefficient of
/// each simple root in the order `sigma, alpha, beta, gamma, delta,
/// epsilon, eta`.
pub const ROOTS_CSV: &str = include_str!("../data/e7_roots.csv");

pub const CSV_HEADER: &str = "label,sigma,alpha,beta,gamma,delta,epsilon,eta";

/// Simple root names in internal coordinate order.
pub const SIMPLE_NAMES: [&str; 7] = ["alpha", "beta", "gamma", "delta", "epsilon", "eta", "sigma"];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum E7Error {
    #[error("csv line {line}: {message}")]
    Csv { line: usize, message: String },
    #[error(transparent)]
    RootSys(#[from] RootSysError),
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error("unknown letter {0:?}")]
    UnknownLetter(String),
}

/// The Cartan datum: chain `alpha - beta - gamma - delta - epsilon - eta`
/// with `sigma` attached to `delta`.
pub fn datum() -> CartanDatum {
    CartanDatum::from_edges(
        &SIMPLE_NAMES,
        &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (3, 6)],
    )
    .expect("the bundled datum is well-formed")
}

/// Parse a root table in the bundled CSV layout into `(label, coords)`
/// rows with coordinates permuted to internal order (`alpha..eta, sigma`).
pub fn parse_roots_csv(csv: &str) -> Result<Vec<(Label, Vec<i64>)>, E7Error> {
    let mut lines = csv.lines().enumerate();
    let (_, header) = lines.next().ok_or(E7Error::Csv {
        line: 1,
        message: "empty file".to_string(),
    })?;
    if header.trim() != CSV_HEADER {
        return Err(E7Error::Csv {
            line: 1,
            message: format!("expected header {CSV_HEADER:?}, found {:?}", header.trim()),
        });
    }
    let mut table = Vec::new();
    for (idx, line) in lines {
        let line_no = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let fields: Vec<&str> = trimmed.split(',').collect();
        if fields.len() != 8 {
            return Err(E7Error::Csv {
                line: line_no,
                message: format!("expected 8 fields, found {}", fields.len()),
            });
        }
        let parse = |s: &str| -> Result<i64, E7Error> {
            s.trim().parse().map_err(|_| E7Error::Csv {
                line: line_no,
                message: format!("not an integer: {s:?}"),
            })
        };
        let label = parse(fields[0])? as Label;
        let sigma = parse(fields[1])?;
        let mut coords: Vec<i64> = Vec::with_capacity(7);
        for f in &fields[2..8] {
            coords.push(parse(f)?);
        }
        coords.push(sigma);
        table.push((label, coords));
    }
    Ok(table)
}

/// Build a labeled system from an arbitrary table against the bundled
/// datum (used for validation and fault-injection testing).
pub fn system_with_table(table: &[(Label, Vec<i64>)]) -> Result<RootSystem, RootSysError> {
    RootSystem::with_labels(datum(), table)
}

/// The bundled labeled root system. One shared instance: every call
/// returns a clone of the same `Arc`, so contexts built from it are
/// mutually compatible.
pub fn system() -> Arc<RootSystem> {
    static SYSTEM: OnceLock<Arc<RootSystem>> = OnceLock::new();
    SYSTEM
        .get_or_init(|| {
            let table = parse_roots_csv(ROOTS_CSV).expect("bundled csv parses");
            Arc::new(system_with_table(&table).expect("bundled table is a valid labeling"))
        })
        .clone()
}

/// `sigma`-coefficient of a positive label.
pub fn sigma_coefficient(label: Label) -> Result<i64, RootSysError> {
    Ok(system().root(label as i32)?.coords()[6])
}

/// First distinguished word: reflections at `epsilon beta gamma alpha
/// beta` (rightmost applied first). An involution on the radical labels.
pub fn q1_word() -> WeylWord {
    WeylWord::new(vec![4, 1, 2, 0, 1])
}

/// Second distinguished word: reflections at `epsilon beta gamma alpha
/// beta eta delta beta` (rightmost applied first). Order 7 on the radical.
pub fn q2_word() -> WeylWord {
    WeylWord::new(vec![4, 1, 2, 0, 1, 5, 3, 1])
}

pub fn q1_perm() -> RootPermutation {
    word_to_permutation(&system(), &q1_word())
}

pub fn q2_perm() -> RootPermutation {
    word_to_permutation(&system(), &q2_word())
}

/// The two generators of the dihedral group K of order 14.
pub fn k_generators() -> Vec<RootPermutation> {
    vec![q1_perm(), q2_perm()]
}

/// Named word presets accepted by the mixed-element parser and the
/// command-line tools.
pub fn word_presets() -> BTreeMap<String, WeylWord> {
    BTreeMap::from([("q1".to_string(), q1_word()), ("q2".to_string(), q2_word())])
}

/// Letter aliases for parsing words: full simple-root names plus
/// single-letter abbreviations (`a b g d e h s`, with `c` also accepted
/// for `gamma`).
pub fn letter_aliases() -> BTreeMap<String, usize> {
    let mut map = BTreeMap::new();
    for (i, name) in SIMPLE_NAMES.iter().enumerate() {
        map.insert(name.to_string(), i);
    }
    for (abbrev, i) in [
        ("a", 0),
        ("b", 1),
        ("g", 2),
        ("c", 2),
        ("d", 3),
        ("e", 4),
        ("h", 5),
        ("s", 6),
    ] {
        map.insert(abbrev.to_string(), i);
    }
    map
}

/// Parse a word like `"epsilon beta gamma alpha beta"`, `"e b g a b"`, or
/// `"n_epsilon n_beta"` (letters applied right to left). The presets `q1`
/// and `q2` are accepted as single-token words.
pub fn parse_word(input: &str) -> Result<WeylWord, E7Error> {
    let aliases = letter_aliases();
    let presets = word_presets();
    let tokens: Vec<&str> = input
        .split(|c: char| c.is_whitespace() || c == ',' || c == '*')
        .filter(|t| !t.is_empty())
        .collect();
    if tokens.len() == 1 {
        if let Some(w) = presets.get(&tokens[0].to_lowercase()) {
            return Ok(w.clone());
        }
    }
    let mut letters = Vec::new();
    for token in tokens {
        let cleaned = token.to_lowercase();
        let cleaned = cleaned.strip_prefix("n_").unwrap_or(&cleaned);
        match aliases.get(cleaned) {
            Some(&i) => letters.push(i),
            None => return Err(E7Error::UnknownLetter(token.to_string())),
        }
    }
    Ok(WeylWord::new(letters))
}

/// The grading cocharacter: pairs to 0 with every simple root except
/// `sigma`, where it pairs to 2. Its coefficient vector in the simple
/// coroot basis is `3 alpha^ + 6 beta^ + 9 gamma^ + 12 delta^ +
/// 8 epsilon^ + 4 eta^ + 7 sigma^`.
pub fn grading_cocharacter() -> Cocharacter {
    Cocharacter::new(system(), vec![3, 6, 9, 12, 8, 4, 7])
        .expect("seven coefficients for rank seven")
}

/// The parabolic decomposition induced by the grading cocharacter:
/// Levi = the `sigma`-free chain (labels 43..=63, letters `alpha..eta`),
/// radical = labels 1..=42 in two weight bands (2 and 4).
pub fn parabolic() -> &'static ParabolicDecomposition {
    static PARABOLIC: OnceLock<ParabolicDecomposition> = OnceLock::new();
    PARABOLIC.get_or_init(|| {
        ParabolicDecomposition::decompose(grading_cocharacter())
            .expect("the grading cocharacter is dominant on the bundled table")
    })
}

/// Collection context for the unipotent radical (labels 1..=42) with the
/// chain letters as the Levi. One shared instance.
pub fn radical_context() -> Arc<RadicalContext> {
    static CTX: OnceLock<Arc<RadicalContext>> = OnceLock::new();
    CTX.get_or_init(|| {
        parabolic()
            .radical_context()
            .expect("the radical supports collection")
    })
    .clone()
}

/// `prod_{l in labels} e_l(c)` in the radical context, e.g. the curve
/// `v(c)` for labels `1..=7`.
pub fn uniform_element<C: Coeff>(
    labels: impl IntoIterator<Item = Label>,
    coeff: C,
) -> Result<UnipotentElement<C>, ChevError> {
    let factors: Vec<(Label, C)> = labels.into_iter().map(|l| (l, coeff.clone())).collect();
    UnipotentElement::from_factors(radical_context(), &factors)
}

/// A word as a mixed element with trivial unipotent part.
pub fn word_element<C: Coeff>(word: &WeylWord) -> Result<MixedElement<C>, ChevError> {
    MixedElement::new(word.clone(), UnipotentElement::identity(radical_context()))
}

/// `v(c) w v(c)^{-1}` for the first-band curve `v(c) = prod_{1..=7} e_l(c)`.
pub fn curve_conjugate<C: Coeff>(word: &WeylWord, coeff: C) -> Result<MixedElement<C>, ChevError> {
    let v = MixedElement::from_unipotent(uniform_element(1..=7, coeff)?);
    let w = word_element::<C>(word)?;
    v.multiply(&w)?.multiply(&v.inverse())
}
