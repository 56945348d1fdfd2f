//! Weyl-group words and their exact action on signed root labels.
//!
//! A [`WeylWord`] is a sequence of simple-reflection letters. Words act on
//! roots **right to left**: the rightmost letter is applied first, so
//! `perm(w1 . w2) = perm(w1) o perm(w2)` with ordinary function
//! composition. In characteristic 2 the standard representatives `n_xi`
//! square to the identity and carry no sign bookkeeping, so a word is
//! faithfully described by the permutation it induces on the signed labels
//! `{±1, ..., ±N}` of the root system.

use crate::rootsys::{Label, RootSystem, SignedLabel};
use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeylError {
    #[error("unknown simple-reflection letter {0:?}")]
    UnknownLetter(String),
    #[error("domain is not stable: label {label} maps to {image}, which is outside the domain")]
    DomainNotStable { label: Label, image: SignedLabel },
    #[error("group closure exceeded the bound of {0} elements")]
    OrderBound(usize),
}

/// A word in the simple reflections, stored as simple-root indices.
/// The letter at position 0 is applied **last**.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct WeylWord {
    letters: Vec<usize>,
}

impl WeylWord {
    pub fn new(letters: Vec<usize>) -> Self {
        WeylWord { letters }
    }

    pub fn identity() -> Self {
        WeylWord {
            letters: Vec::new(),
        }
    }

    /// Look up letters by simple-root name (exact match against the datum).
    pub fn from_names(system: &RootSystem, names: &[&str]) -> Result<Self, WeylError> {
        let mut letters = Vec::with_capacity(names.len());
        for name in names {
            let idx = system
                .datum()
                .name_index(name)
                .ok_or_else(|| WeylError::UnknownLetter(name.to_string()))?;
            letters.push(idx);
        }
        Ok(WeylWord { letters })
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Concatenation: `self` then (to the right of it) `other`.
    pub fn concat(&self, other: &WeylWord) -> WeylWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        WeylWord { letters }
    }

    /// The reversed word. Each letter is an involution, so this represents
    /// the inverse element.
    pub fn inverse(&self) -> WeylWord {
        let mut letters = self.letters.clone();
        letters.reverse();
        WeylWord { letters }
    }

    pub fn display_with(&self, system: &RootSystem) -> String {
        if self.letters.is_empty() {
            return "1".to_string();
        }
        self.letters
            .iter()
            .map(|&i| format!("n_{}", system.datum().names()[i]))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// The permutation a Weyl element induces on signed root labels.
/// Semantically this *is* the group element: the action on all signed
/// roots is faithful.
#[derive(Clone, Debug)]
pub struct RootPermutation {
    system: Arc<RootSystem>,
    /// `images[l-1]` is the signed image of positive label `l`; the image
    /// of `-l` is the negation.
    images: Vec<SignedLabel>,
}

impl PartialEq for RootPermutation {
    fn eq(&self, other: &Self) -> bool {
        self.images == other.images
    }
}

impl Eq for RootPermutation {}

impl std::hash::Hash for RootPermutation {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.images.hash(state);
    }
}

impl RootPermutation {
    pub fn identity(system: Arc<RootSystem>) -> Self {
        let images = (1..=system.count_positive() as SignedLabel).collect();
        RootPermutation { system, images }
    }

    pub fn system(&self) -> &Arc<RootSystem> {
        &self.system
    }

    pub fn images(&self) -> &[SignedLabel] {
        &self.images
    }

    pub fn apply(&self, x: SignedLabel) -> SignedLabel {
        let image = self.images[(x.unsigned_abs() as usize) - 1];
        if x < 0 {
            -image
        } else {
            image
        }
    }

    /// Function composition: `(self o other)(x) = self(other(x))`, so
    /// `other` acts first.
    pub fn compose(&self, other: &RootPermutation) -> RootPermutation {
        assert!(
            Arc::ptr_eq(&self.system, &other.system),
            "permutations of different root systems cannot be composed"
        );
        let images = (1..=self.images.len() as SignedLabel)
            .map(|l| self.apply(other.apply(l)))
            .collect();
        RootPermutation {
            system: self.system.clone(),
            images,
        }
    }

    pub fn inverse(&self) -> RootPermutation {
        let mut images = vec![0 as SignedLabel; self.images.len()];
        for l in 1..=self.images.len() as SignedLabel {
            let y = self.apply(l);
            images[(y.unsigned_abs() as usize) - 1] = if y < 0 { -l } else { l };
        }
        RootPermutation {
            system: self.system.clone(),
            images,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &y)| y == (i + 1) as SignedLabel)
    }

    /// Order of the permutation (cycle lcm over signed labels).
    pub fn order(&self) -> u64 {
        let mut order = 1u64;
        let mut current = self.clone();
        while !current.is_identity() {
            current = current.compose(self);
            order += 1;
        }
        order
    }

    /// Does the permutation map the given positive-label set into itself
    /// (all images positive and inside the set)?
    pub fn stabilizes(&self, domain: &BTreeSet<Label>) -> Result<(), WeylError> {
        for &l in domain {
            let image = self.apply(l as SignedLabel);
            if image <= 0 || !domain.contains(&(image as Label)) {
                return Err(WeylError::DomainNotStable { label: l, image });
            }
        }
        Ok(())
    }

    /// Cycles of the action restricted to a stable set of positive labels.
    /// Fixed points are omitted; each cycle starts at its least label;
    /// cycles are ordered by least label.
    pub fn cycles_on(&self, domain: &BTreeSet<Label>) -> Result<Vec<Vec<Label>>, WeylError> {
        self.stabilizes(domain)?;
        let mut seen: BTreeSet<Label> = BTreeSet::new();
        let mut cycles = Vec::new();
        for &start in domain {
            if seen.contains(&start) {
                continue;
            }
            let mut cycle = vec![start];
            seen.insert(start);
            let mut current = self.apply(start as SignedLabel) as Label;
            while current != start {
                cycle.push(current);
                seen.insert(current);
                current = self.apply(current as SignedLabel) as Label;
            }
            if cycle.len() > 1 {
                cycles.push(cycle);
            }
        }
        Ok(cycles)
    }

    /// Render cycles in the classical notation, e.g. `(1 2)(3 6)`.
    /// The identity (no moved points in the domain) renders as `()`.
    pub fn cycle_string_on(&self, domain: &BTreeSet<Label>) -> Result<String, WeylError> {
        let cycles = self.cycles_on(domain)?;
        if cycles.is_empty() {
            return Ok("()".to_string());
        }
        Ok(cycles
            .iter()
            .map(|c| {
                format!(
                    "({})",
                    c.iter()
                        .map(|l| l.to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                )
            })
            .collect::<Vec<_>>()
            .join(""))
    }

    /// Fixed points of the action within a stable domain.
    pub fn fixed_points_on(&self, domain: &BTreeSet<Label>) -> Result<Vec<Label>, WeylError> {
        self.stabilizes(domain)?;
        Ok(domain
            .iter()
            .copied()
            .filter(|&l| self.apply(l as SignedLabel) == l as SignedLabel)
            .collect())
    }

    /// The action as position images on a sorted stable domain:
    /// `result[i] = j` when the `i`-th domain label maps to the `j`-th.
    pub fn images_on(&self, domain: &[Label]) -> Result<Vec<usize>, WeylError> {
        let mut images = Vec::with_capacity(domain.len());
        for &l in domain {
            let image = self.apply(l as SignedLabel);
            let pos = (image > 0)
                .then(|| domain.binary_search(&(image as Label)).ok())
                .flatten()
                .ok_or(WeylError::DomainNotStable { label: l, image })?;
            images.push(pos);
        }
        Ok(images)
    }
}

/// Compute the permutation of signed labels induced by a word
/// (rightmost letter first).
pub fn word_to_permutation(system: &Arc<RootSystem>, word: &WeylWord) -> RootPermutation {
    let rank = system.rank();
    for &letter in word.letters() {
        assert!(
            letter < rank,
            "letter index {letter} out of range for rank {rank}"
        );
    }
    let images = (1..=system.count_positive() as SignedLabel)
        .map(|l| {
            let mut root = system.root(l).expect("label in range");
            for &letter in word.letters().iter().rev() {
                root = system.reflect(&root, &system.datum().simple_root(letter));
            }
            system
                .label_of(&root)
                .expect("reflections permute the set of roots")
        })
        .collect();
    RootPermutation {
        system: system.clone(),
        images,
    }
}

/// The partition of a stable positive-label set into orbits under a set of
/// permutations. Orbits are sorted ascending and listed by least element;
/// the least element is the orbit's canonical representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitPartition {
    domain: BTreeSet<Label>,
    orbits: Vec<Vec<Label>>,
}

impl OrbitPartition {
    pub fn domain(&self) -> &BTreeSet<Label> {
        &self.domain
    }

    pub fn orbits(&self) -> &[Vec<Label>] {
        &self.orbits
    }

    pub fn count(&self) -> usize {
        self.orbits.len()
    }

    /// Index of the orbit containing a label.
    pub fn orbit_index(&self, label: Label) -> Option<usize> {
        self.orbits
            .iter()
            .position(|o| o.binary_search(&label).is_ok())
    }

    /// The canonical representative (least label) of the orbit containing
    /// `label`.
    pub fn representative(&self, label: Label) -> Option<Label> {
        self.orbit_index(label).map(|i| self.orbits[i][0])
    }

    pub fn representatives(&self) -> Vec<Label> {
        self.orbits.iter().map(|o| o[0]).collect()
    }
}

/// Orbits of a permutation set on a stable domain of positive labels.
pub fn orbits(
    gens: &[RootPermutation],
    domain: &BTreeSet<Label>,
) -> Result<OrbitPartition, WeylError> {
    for g in gens {
        g.stabilizes(domain)?;
    }
    let mut seen: BTreeSet<Label> = BTreeSet::new();
    let mut orbit_list = Vec::new();
    for &start in domain {
        if seen.contains(&start) {
            continue;
        }
        let mut orbit = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(current) = queue.pop_front() {
            for g in gens {
                let image = g.apply(current as SignedLabel) as Label;
                if orbit.insert(image) {
                    queue.push_back(image);
                }
            }
        }
        seen.extend(orbit.iter().copied());
        orbit_list.push(orbit.into_iter().collect::<Vec<_>>());
    }
    Ok(OrbitPartition {
        domain: domain.clone(),
        orbits: orbit_list,
    })
}

/// A finite permutation group given by its full element list, produced by
/// [`group_closure`]. Elements are sorted by their image vectors, which
/// makes the listing deterministic.
#[derive(Clone, Debug)]
pub struct GroupDescription {
    elements: Vec<RootPermutation>,
}

impl GroupDescription {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[RootPermutation] {
        &self.elements
    }

    pub fn contains(&self, p: &RootPermutation) -> bool {
        self.elements
            .binary_search_by(|e| e.images().cmp(p.images()))
            .is_ok()
    }
}

/// Multiplicative closure of a generating set, aborting once more than
/// `max_order` distinct elements appear.
pub fn group_closure(
    gens: &[RootPermutation],
    max_order: usize,
) -> Result<GroupDescription, WeylError> {
    assert!(!gens.is_empty(), "closure needs at least one generator");
    let system = gens[0].system().clone();
    let identity = RootPermutation::identity(system);
    let mut seen: HashSet<Vec<SignedLabel>> = HashSet::from([identity.images().to_vec()]);
    let mut elements = vec![identity.clone()];
    let mut queue = VecDeque::from([identity]);
    while let Some(current) = queue.pop_front() {
        for g in gens {
            let next = current.compose(g);
            if seen.insert(next.images().to_vec()) {
                if elements.len() + 1 > max_order {
                    return Err(WeylError::OrderBound(max_order));
                }
                elements.push(next.clone());
                queue.push_back(next);
            }
        }
    }
    elements.sort_by(|a, b| a.images().cmp(b.images()));
    Ok(GroupDescription { elements })
}

impl fmt::Display for RootPermutation {
    /// Cycle notation on the full positive-label domain when stable;
    /// otherwise the raw signed image list.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let domain: BTreeSet<Label> = self.system.positive_labels().collect();
        match self.cycle_string_on(&domain) {
            Ok(s) => f.write_str(&s),
            Err(_) => write!(f, "{:?}", self.images),
        }
    }
}
