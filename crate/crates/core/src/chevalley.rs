//! Unipotent and mixed elements of a parabolic subgroup in characteristic 2.
//!
//! Products of root elements are kept in **normal form**: factors sorted by
//! ascending label with nonzero coefficients. Reordering uses the
//! simply-laced Chevalley commutator identity, which in characteristic 2
//! reads
//!
//! ```text
//! e_xi(x) e_zeta(y) = e_zeta(y) e_xi(x) e_{xi+zeta}(x*y)    (xi + zeta a root)
//! e_xi(x) e_zeta(y) = e_zeta(y) e_xi(x)                     (otherwise)
//! ```
//!
//! with no signs and no higher terms (root strings in a simply-laced system
//! have length at most 2), so collection is exact for radicals of any
//! nilpotency class. Each root element is an involution — `e_xi(x)^2 = 1` —
//! which also makes the standard Weyl representatives `n_xi` involutions
//! and lets a mixed element be stored as a (permutation, normal form) pair
//! with no torus bookkeeping.

use crate::coeffring::Coeff;
use crate::rootsys::{Label, RootSystem, SignedLabel};
use crate::weyl::{word_to_permutation, RootPermutation, WeylWord};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChevError {
    #[error("label {0} is not in the support of this context")]
    UnknownSupportLabel(Label),
    #[error("support is not closed: {a} + {b} = {sum}, which is outside the support")]
    SupportNotClosed { a: Label, b: Label, sum: Label },
    #[error("elements belong to different contexts")]
    ContextMismatch,
    #[error("conjugation does not stabilize the support: {label} maps to {image}")]
    DomainNotStable { label: Label, image: SignedLabel },
    #[error("letter {0:?} is not a Levi letter of this context")]
    LetterNotInLevi(String),
    #[error("parse error at byte {at}: {message}")]
    Parse { at: usize, message: String },
}

/// The multiplication context for unipotent elements: a root system, a
/// support (a set of positive labels closed under root addition), and the
/// simple-reflection letters allowed in the Weyl part of mixed elements
/// (the letters of the corresponding Levi subgroup).
#[derive(Debug)]
pub struct RadicalContext {
    system: Arc<RootSystem>,
    support: Vec<Label>,
    support_set: BTreeSet<Label>,
    /// `(a, b) -> a + b` for unordered support pairs whose sum is a root.
    sums: HashMap<(Label, Label), Label>,
    levi_letters: BTreeSet<usize>,
}

impl RadicalContext {
    /// Validate closure of the support and stability under the Levi
    /// letters, and precompute the root-addition table.
    pub fn new(
        system: Arc<RootSystem>,
        support: BTreeSet<Label>,
        levi_letters: BTreeSet<usize>,
    ) -> Result<Arc<Self>, ChevError> {
        let n = system.count_positive() as Label;
        for &l in &support {
            if l == 0 || l > n {
                return Err(ChevError::UnknownSupportLabel(l));
            }
        }
        let mut sums = HashMap::new();
        let labels: Vec<Label> = support.iter().copied().collect();
        for (i, &a) in labels.iter().enumerate() {
            for &b in &labels[i + 1..] {
                if let Some(s) = system.add_labels(a, b) {
                    if !support.contains(&s) {
                        return Err(ChevError::SupportNotClosed { a, b, sum: s });
                    }
                    sums.insert((a, b), s);
                    sums.insert((b, a), s);
                }
            }
        }
        for &letter in &levi_letters {
            let p = word_to_permutation(&system, &WeylWord::new(vec![letter]));
            p.stabilizes(&support).map_err(|e| match e {
                crate::weyl::WeylError::DomainNotStable { label, image } => {
                    ChevError::DomainNotStable { label, image }
                }
                _ => unreachable!("stabilizes only reports instability"),
            })?;
        }
        Ok(Arc::new(RadicalContext {
            system,
            support: labels,
            support_set: support,
            sums,
            levi_letters,
        }))
    }

    pub fn system(&self) -> &Arc<RootSystem> {
        &self.system
    }

    /// Support labels in ascending order — the normal-form factor order.
    pub fn support(&self) -> &[Label] {
        &self.support
    }

    pub fn support_set(&self) -> &BTreeSet<Label> {
        &self.support_set
    }

    pub fn contains(&self, label: Label) -> bool {
        self.support_set.contains(&label)
    }

    pub fn levi_letters(&self) -> &BTreeSet<usize> {
        &self.levi_letters
    }

    /// The label of `a + b` when that is a root (necessarily in the
    /// support, by the closure invariant).
    pub fn sum(&self, a: Label, b: Label) -> Option<Label> {
        self.sums.get(&(a, b)).copied()
    }

    /// Labels whose root elements commute with the whole support group:
    /// those that can never absorb a commutator correction.
    pub fn central_labels(&self) -> BTreeSet<Label> {
        self.support
            .iter()
            .copied()
            .filter(|&z| {
                self.support
                    .iter()
                    .all(|&x| x == z || self.sum(z, x).is_none())
            })
            .collect()
    }

    /// A sub-context on a subset of this support (same system, same Levi
    /// letters). The subset must itself be closed.
    pub fn sub_context(
        self: &Arc<Self>,
        support: BTreeSet<Label>,
    ) -> Result<Arc<RadicalContext>, ChevError> {
        for &l in &support {
            if !self.contains(l) {
                return Err(ChevError::UnknownSupportLabel(l));
            }
        }
        RadicalContext::new(self.system.clone(), support, self.levi_letters.clone())
    }

    fn compatible(&self, other: &RadicalContext) -> bool {
        Arc::ptr_eq(&self.system, &other.system) && self.support == other.support
    }
}

/// Normal-form collection of an explicit factor list. Adjacent factors are
/// merged when equal-labeled, swapped when out of order (emitting the
/// commutator correction immediately after the swapped pair), until the
/// list is strictly ascending.
fn collect<C: Coeff>(ctx: &RadicalContext, factors: Vec<(Label, C)>) -> BTreeMap<Label, C> {
    let mut list: Vec<(Label, C)> = factors.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    loop {
        let mut changed = false;
        let mut k = 0;
        while k + 1 < list.len() {
            let (la, lb) = (list[k].0, list[k + 1].0);
            if la == lb {
                let merged = list[k].1.add(&list[k + 1].1);
                list.remove(k + 1);
                if merged.is_zero() {
                    list.remove(k);
                    k = k.saturating_sub(1);
                } else {
                    list[k].1 = merged;
                }
                changed = true;
            } else if la > lb {
                let correction = ctx
                    .sum(la, lb)
                    .map(|s| (s, list[k].1.mul(&list[k + 1].1)))
                    .filter(|(_, c)| !c.is_zero());
                list.swap(k, k + 1);
                if let Some(corr) = correction {
                    list.insert(k + 2, corr);
                }
                changed = true;
                k += 1;
            } else {
                k += 1;
            }
        }
        if !changed {
            break;
        }
    }
    debug_assert!(
        list.windows(2).all(|w| w[0].0 < w[1].0),
        "normal form is ascending"
    );
    list.into_iter().collect()
}

/// A unipotent element in normal form: the product of `e_l(c_l)` over the
/// support labels present in `coeffs`, in ascending label order.
#[derive(Clone, Debug)]
pub struct UnipotentElement<C: Coeff> {
    ctx: Arc<RadicalContext>,
    coeffs: BTreeMap<Label, C>,
}

impl<C: Coeff> PartialEq for UnipotentElement<C> {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.compatible(&other.ctx) && self.coeffs == other.coeffs
    }
}

impl<C: Coeff> Eq for UnipotentElement<C> {}

impl<C: Coeff> UnipotentElement<C> {
    pub fn identity(ctx: Arc<RadicalContext>) -> Self {
        UnipotentElement {
            ctx,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn root_element(ctx: Arc<RadicalContext>, label: Label, c: C) -> Result<Self, ChevError> {
        if !ctx.contains(label) {
            return Err(ChevError::UnknownSupportLabel(label));
        }
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(label, c);
        }
        Ok(UnipotentElement { ctx, coeffs })
    }

    /// Collect an arbitrary factor list into normal form.
    pub fn from_factors(
        ctx: Arc<RadicalContext>,
        factors: &[(Label, C)],
    ) -> Result<Self, ChevError> {
        for (l, _) in factors {
            if !ctx.contains(*l) {
                return Err(ChevError::UnknownSupportLabel(*l));
            }
        }
        let coeffs = collect(&ctx, factors.to_vec());
        Ok(UnipotentElement { ctx, coeffs })
    }

    pub fn context(&self) -> &Arc<RadicalContext> {
        &self.ctx
    }

    pub fn coeff(&self, label: Label) -> Option<&C> {
        self.coeffs.get(&label)
    }

    pub fn coeffs(&self) -> &BTreeMap<Label, C> {
        &self.coeffs
    }

    /// The normal-form factor list, ascending.
    pub fn factors(&self) -> Vec<(Label, C)> {
        self.coeffs.iter().map(|(l, c)| (*l, c.clone())).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn product(&self, other: &UnipotentElement<C>) -> Result<Self, ChevError> {
        if !self.ctx.compatible(&other.ctx) {
            return Err(ChevError::ContextMismatch);
        }
        let mut factors = self.factors();
        factors.extend(other.factors());
        Ok(UnipotentElement {
            ctx: self.ctx.clone(),
            coeffs: collect(&self.ctx, factors),
        })
    }

    /// Inverse: reverse the factor order (each root element is its own
    /// inverse in characteristic 2) and re-collect.
    pub fn inverse(&self) -> Self {
        let mut factors = self.factors();
        factors.reverse();
        UnipotentElement {
            ctx: self.ctx.clone(),
            coeffs: collect(&self.ctx, factors),
        }
    }

    /// Conjugation by a Weyl-group permutation `p`: `e_l(c) -> e_{p(l)}(c)`
    /// factorwise, then re-collection. `p` must stabilize the support.
    pub fn conjugate_by_perm(&self, p: &RootPermutation) -> Result<Self, ChevError> {
        if let Err(crate::weyl::WeylError::DomainNotStable { label, image }) =
            p.stabilizes(self.ctx.support_set())
        {
            return Err(ChevError::DomainNotStable { label, image });
        }
        let factors: Vec<(Label, C)> = self
            .coeffs
            .iter()
            .map(|(l, c)| (p.apply(*l as SignedLabel) as Label, c.clone()))
            .collect();
        Ok(UnipotentElement {
            ctx: self.ctx.clone(),
            coeffs: collect(&self.ctx, factors),
        })
    }

    /// Conjugation by the Weyl element of a word: `n_w u n_w^{-1}`.
    pub fn conjugate_by_word(&self, word: &WeylWord) -> Result<Self, ChevError> {
        let p = word_to_permutation(self.ctx.system(), word);
        self.conjugate_by_perm(&p)
    }

    /// Rebuild with transformed coefficients. The map must be a ring
    /// homomorphism for the result to be meaningful; the factor structure
    /// is preserved and zero images are dropped.
    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> UnipotentElement<D> {
        let coeffs = self
            .coeffs
            .iter()
            .filter_map(|(l, c)| {
                let image = f(c);
                if image.is_zero() {
                    None
                } else {
                    Some((*l, image))
                }
            })
            .collect();
        UnipotentElement {
            ctx: self.ctx.clone(),
            coeffs,
        }
    }
}

impl<C: Coeff> fmt::Display for UnipotentElement<C> {
    /// `e4(x)*e7(y)*e42(x*y)`; the identity is `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (l, c) in &self.coeffs {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "e{l}({c})")?;
        }
        Ok(())
    }
}

/// An element of the parabolic with trivial torus part: a Weyl part (kept
/// both as a word for display and as the permutation that *is* its value)
/// and a unipotent part in normal form. Multiplication shuffles the
/// unipotent part through the Weyl part by conjugation.
#[derive(Clone, Debug)]
pub struct MixedElement<C: Coeff> {
    word: WeylWord,
    perm: RootPermutation,
    unip: UnipotentElement<C>,
}

impl<C: Coeff> PartialEq for MixedElement<C> {
    /// Value equality: same induced permutation and same normal form.
    /// Different words for the same Weyl element compare equal.
    fn eq(&self, other: &Self) -> bool {
        self.perm == other.perm && self.unip == other.unip
    }
}

impl<C: Coeff> Eq for MixedElement<C> {}

impl<C: Coeff> MixedElement<C> {
    /// A mixed element `n_word * unip`. The word may use only Levi letters
    /// of the context, which guarantees its permutation stabilizes the
    /// support.
    pub fn new(word: WeylWord, unip: UnipotentElement<C>) -> Result<Self, ChevError> {
        let ctx = unip.ctx.clone();
        for &letter in word.letters() {
            if !ctx.levi_letters().contains(&letter) {
                let name = ctx
                    .system()
                    .datum()
                    .names()
                    .get(letter)
                    .cloned()
                    .unwrap_or_else(|| format!("#{letter}"));
                return Err(ChevError::LetterNotInLevi(name));
            }
        }
        let perm = word_to_permutation(ctx.system(), &word);
        debug_assert!(perm.stabilizes(ctx.support_set()).is_ok());
        Ok(MixedElement { word, perm, unip })
    }

    pub fn identity(ctx: Arc<RadicalContext>) -> Self {
        MixedElement {
            word: WeylWord::identity(),
            perm: RootPermutation::identity(ctx.system().clone()),
            unip: UnipotentElement::identity(ctx),
        }
    }

    pub fn from_unipotent(unip: UnipotentElement<C>) -> Self {
        let perm = RootPermutation::identity(unip.ctx.system().clone());
        MixedElement {
            word: WeylWord::identity(),
            perm,
            unip,
        }
    }

    pub fn word(&self) -> &WeylWord {
        &self.word
    }

    pub fn perm(&self) -> &RootPermutation {
        &self.perm
    }

    pub fn unipotent(&self) -> &UnipotentElement<C> {
        &self.unip
    }

    pub fn context(&self) -> &Arc<RadicalContext> {
        &self.unip.ctx
    }

    pub fn is_identity(&self) -> bool {
        self.perm.is_identity() && self.unip.is_identity()
    }

    /// `(w1, u1)(w2, u2) = (w1 w2, (n_{w2}^{-1} u1 n_{w2}) u2)`.
    pub fn multiply(&self, other: &MixedElement<C>) -> Result<Self, ChevError> {
        if !self.unip.ctx.compatible(&other.unip.ctx) {
            return Err(ChevError::ContextMismatch);
        }
        let shuffled = self.unip.conjugate_by_perm(&other.perm.inverse())?;
        Ok(MixedElement {
            word: self.word.concat(&other.word),
            perm: self.perm.compose(&other.perm),
            unip: shuffled.product(&other.unip)?,
        })
    }

    /// `(w, u)^{-1} = (w^{-1}, n_w u^{-1} n_w^{-1})`.
    pub fn inverse(&self) -> Self {
        let unip = self
            .unip
            .inverse()
            .conjugate_by_perm(&self.perm)
            .expect("the element's own Weyl part stabilizes the support");
        MixedElement {
            word: self.word.inverse(),
            perm: self.perm.inverse(),
            unip,
        }
    }

    /// `self * x * self^{-1}`.
    pub fn conjugate(&self, x: &MixedElement<C>) -> Result<MixedElement<C>, ChevError> {
        self.multiply(x)?.multiply(&self.inverse())
    }

    pub fn display_with(&self, system: &RootSystem) -> String {
        match (self.word.is_empty(), self.unip.is_identity()) {
            (true, true) => "1".to_string(),
            (true, false) => self.unip.to_string(),
            (false, true) => self.word.display_with(system),
            (false, false) => {
                format!("{} * {}", self.word.display_with(system), self.unip)
            }
        }
    }
}

/// Parse a mixed-element expression: `*`-separated atoms, each either
/// `e<label>(<polynomial>)`, the literal `1`, or a named Weyl-word preset
/// (e.g. `q1`). Atoms multiply left to right. Coefficients use the
/// polynomial grammar of [`crate::coeffring::SparsePoly::parse`].
pub fn parse_mixed(
    ctx: &Arc<RadicalContext>,
    presets: &BTreeMap<String, WeylWord>,
    input: &str,
) -> Result<MixedElement<crate::coeffring::SparsePoly>, ChevError> {
    use crate::coeffring::SparsePoly;
    let mut acc = MixedElement::identity(ctx.clone());
    for raw in split_atoms(input) {
        let (atom, offset) = raw;
        let atom = atom.trim();
        if atom.is_empty() {
            return Err(ChevError::Parse {
                at: offset,
                message: "empty factor".to_string(),
            });
        }
        let next = if atom == "1" {
            MixedElement::identity(ctx.clone())
        } else if let Some(rest) = atom
            .strip_prefix('e')
            .filter(|r| r.starts_with(|c: char| c.is_ascii_digit()))
        {
            let open = rest.find('(').ok_or(ChevError::Parse {
                at: offset,
                message: "expected '(' after root label".to_string(),
            })?;
            let label: Label = rest[..open].parse().map_err(|_| ChevError::Parse {
                at: offset,
                message: format!("bad root label in {atom:?}"),
            })?;
            if !rest.ends_with(')') {
                return Err(ChevError::Parse {
                    at: offset,
                    message: "expected ')' at end of root factor".to_string(),
                });
            }
            let poly_src = &rest[open + 1..rest.len() - 1];
            let coeff = SparsePoly::parse(poly_src).map_err(|e| ChevError::Parse {
                at: offset,
                message: e.to_string(),
            })?;
            MixedElement::from_unipotent(UnipotentElement::root_element(ctx.clone(), label, coeff)?)
        } else if let Some(word) = presets.get(atom) {
            MixedElement::new(word.clone(), UnipotentElement::identity(ctx.clone()))?
        } else {
            return Err(ChevError::Parse {
                at: offset,
                message: format!("unknown factor {atom:?} (not a preset word or e<label>(...))"),
            });
        };
        acc = acc.multiply(&next)?;
    }
    Ok(acc)
}

/// Split on `*` at paren depth 0, keeping byte offsets for error messages.
fn split_atoms(input: &str) -> Vec<(&str, usize)> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, c) in input.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            '*' if depth == 0 => {
                out.push((&input[start..i], start));
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push((&input[start..], start));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::SparsePoly;
    use crate::rootsys::CartanDatum;

    fn p(s: &str) -> SparsePoly {
        SparsePoly::parse(s).unwrap()
    }

    /// A3 with Levi letter a1 and radical = all positives except a1.
    /// Canonical labels: 1 = a3, 2 = a2, 3 = a1, 4 = a2+a3, 5 = a1+a2,
    /// 6 = a1+a2+a3.
    fn a3_radical() -> Arc<RadicalContext> {
        let system = Arc::new(RootSystem::generate(CartanDatum::type_a(3).unwrap()).unwrap());
        RadicalContext::new(system, BTreeSet::from([1, 2, 4, 5, 6]), BTreeSet::from([0])).unwrap()
    }

    /// The full positive system of A2 as a support (closed, no Levi).
    fn a2_full() -> Arc<RadicalContext> {
        let system = Arc::new(RootSystem::generate(CartanDatum::type_a(2).unwrap()).unwrap());
        RadicalContext::new(system, BTreeSet::from([1, 2, 3]), BTreeSet::new()).unwrap()
    }

    #[test]
    fn support_closure_is_enforced() {
        let system = Arc::new(RootSystem::generate(CartanDatum::type_a(2).unwrap()).unwrap());
        // {1, 2} misses 1 + 2 = 3.
        let err = RadicalContext::new(system, BTreeSet::from([1, 2]), BTreeSet::new()).unwrap_err();
        assert_eq!(err, ChevError::SupportNotClosed { a: 1, b: 2, sum: 3 });
    }

    #[test]
    fn out_of_order_factors_pick_up_the_commutator_correction() {
        let ctx = a2_full();
        // e2(x) e1(y) = e1(y) e2(x) e3(x*y)
        let u = UnipotentElement::from_factors(ctx.clone(), &[(2, p("x")), (1, p("y"))]).unwrap();
        assert_eq!(u.coeff(1), Some(&p("y")));
        assert_eq!(u.coeff(2), Some(&p("x")));
        assert_eq!(u.coeff(3), Some(&p("x*y")));
        assert_eq!(u.to_string(), "e1(y)*e2(x)*e3(x*y)");

        // In-order factors commute past nothing: no correction.
        let v = UnipotentElement::from_factors(ctx, &[(1, p("y")), (2, p("x"))]).unwrap();
        assert_eq!(v.coeff(3), None);
        assert_ne!(u, v, "the two factor orders are different group elements");
    }

    #[test]
    fn root_elements_are_involutions() {
        let ctx = a2_full();
        let u = UnipotentElement::root_element(ctx, 2, p("x")).unwrap();
        assert!(u.product(&u).unwrap().is_identity());
        assert_eq!(u.inverse(), u);
    }

    #[test]
    fn inverse_against_collection() {
        let ctx = a2_full();
        let u = UnipotentElement::from_factors(ctx.clone(), &[(1, p("y")), (2, p("x"))]).unwrap();
        let inv = u.inverse();
        // (e1(y) e2(x))^{-1} = e2(x) e1(y) = e1(y) e2(x) e3(x*y).
        assert_eq!(inv.coeff(3), Some(&p("x*y")));
        assert!(u.product(&inv).unwrap().is_identity());
        assert!(inv.product(&u).unwrap().is_identity());
    }

    #[test]
    fn product_associativity_deterministic_sweep() {
        let ctx = a2_full();
        let mut state = 0x853c49e6748fea9bu64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        let names = ["x", "y", "z", "w"];
        let random_elem = |next: &mut dyn FnMut() -> u64| {
            let len = next() % 4;
            let factors: Vec<(Label, SparsePoly)> = (0..len)
                .map(|_| {
                    let label = (next() % 3 + 1) as Label;
                    let name = names[(next() % 4) as usize];
                    (label, p(name))
                })
                .collect();
            UnipotentElement::from_factors(ctx.clone(), &factors).unwrap()
        };
        for _ in 0..300 {
            let a = random_elem(&mut next);
            let b = random_elem(&mut next);
            let c = random_elem(&mut next);
            let left = a.product(&b).unwrap().product(&c).unwrap();
            let right = a.product(&b.product(&c).unwrap()).unwrap();
            assert_eq!(left, right, "collection is associative");
            assert!(a.product(&a.inverse()).unwrap().is_identity());
        }
    }

    #[test]
    fn collection_routes_agree() {
        // One-shot collection of a long factor list equals the left fold of
        // pairwise products of its singleton factors.
        let ctx = a2_full();
        let factors = [
            (3, p("a")),
            (1, p("b")),
            (2, p("c")),
            (1, p("a + b")),
            (3, p("c")),
            (2, p("a*b")),
        ];
        let oneshot = UnipotentElement::from_factors(ctx.clone(), &factors).unwrap();
        let mut folded = UnipotentElement::identity(ctx.clone());
        for (l, c) in &factors {
            let single = UnipotentElement::root_element(ctx.clone(), *l, c.clone()).unwrap();
            folded = folded.product(&single).unwrap();
        }
        assert_eq!(oneshot, folded);
    }

    #[test]
    fn central_labels_absorb_no_corrections() {
        let ctx = a3_radical();
        // Sums within {1,2,4,5,6}: 1+2=4, 1+5=6, 2+... the roots a2+a3 and
        // a1+a2+a3 extend no further inside the support.
        assert_eq!(ctx.central_labels(), BTreeSet::from([4, 6]));
        let a2_ctx = a2_full();
        assert_eq!(a2_ctx.central_labels(), BTreeSet::from([3]));
    }

    #[test]
    fn conjugation_by_a_levi_word_permutes_factors() {
        let ctx = a3_radical();
        // s_{a1} swaps 2 <-> 5 and 4 <-> 6, fixes 1.
        let u =
            UnipotentElement::from_factors(ctx.clone(), &[(1, p("r")), (2, p("s")), (6, p("t"))])
                .unwrap();
        let conj = u.conjugate_by_word(&WeylWord::new(vec![0])).unwrap();
        assert_eq!(conj.coeff(1), Some(&p("r")));
        assert_eq!(conj.coeff(5), Some(&p("s")));
        assert_eq!(conj.coeff(4), Some(&p("t")));
        // Conjugating twice is the identity map (s_{a1}^2 = 1).
        assert_eq!(conj.conjugate_by_word(&WeylWord::new(vec![0])).unwrap(), u);
    }

    #[test]
    fn conjugation_is_a_group_homomorphism() {
        let ctx = a3_radical();
        let w = WeylWord::new(vec![0]);
        let u = UnipotentElement::from_factors(ctx.clone(), &[(2, p("s")), (1, p("r"))]).unwrap();
        let v = UnipotentElement::from_factors(ctx, &[(5, p("t")), (2, p("s"))]).unwrap();
        let lhs = u.product(&v).unwrap().conjugate_by_word(&w).unwrap();
        let rhs = u
            .conjugate_by_word(&w)
            .unwrap()
            .product(&v.conjugate_by_word(&w).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs, "conj(w, uv) = conj(w, u) conj(w, v)");
    }

    #[test]
    fn unstable_conjugation_is_refused() {
        let ctx = a3_radical();
        let u = UnipotentElement::root_element(ctx, 2, p("s")).unwrap();
        // s_{a2} sends label 2 (= a2) to its negative: not a support map.
        let err = u.conjugate_by_word(&WeylWord::new(vec![1])).unwrap_err();
        assert_eq!(
            err,
            ChevError::DomainNotStable {
                label: 2,
                image: -2
            }
        );
    }

    #[test]
    fn mixed_elements_multiply_invert_and_reject_bad_letters() {
        let ctx = a3_radical();
        let u = UnipotentElement::from_factors(ctx.clone(), &[(2, p("s"))]).unwrap();
        let v = UnipotentElement::from_factors(ctx.clone(), &[(4, p("t")), (1, p("r"))]).unwrap();
        let m1 = MixedElement::new(WeylWord::new(vec![0]), u).unwrap();
        let m2 = MixedElement::from_unipotent(v);
        let prod = m1.multiply(&m2).unwrap();
        // Weyl part concatenates; m1's unipotent part shuffles through
        // m2's trivial Weyl part unchanged.
        assert_eq!(prod.word().letters(), &[0]);
        assert_eq!(prod.unipotent().coeff(2), Some(&p("s")));

        // Round trips.
        assert!(m1.multiply(&m1.inverse()).unwrap().is_identity());
        assert!(m1.inverse().multiply(&m1).unwrap().is_identity());
        let conj = m1.conjugate(&m2).unwrap();
        assert_eq!(
            conj.perm(),
            &RootPermutation::identity(m1.context().system().clone()),
            "conjugating a unipotent element keeps the Weyl part trivial"
        );

        // Letter a2 is not a Levi letter of this context.
        let bad = MixedElement::new(
            WeylWord::new(vec![1]),
            UnipotentElement::<SparsePoly>::identity(ctx),
        );
        assert!(matches!(bad, Err(ChevError::LetterNotInLevi(_))));
    }

    #[test]
    fn mixed_multiplication_matches_the_shuffle_formula() {
        let ctx = a3_radical();
        // (1, u) * (w, 1) = (w, conj(w^{-1}, u)).
        let u = UnipotentElement::from_factors(ctx.clone(), &[(2, p("s"))]).unwrap();
        let m1 = MixedElement::from_unipotent(u.clone());
        let m2 =
            MixedElement::new(WeylWord::new(vec![0]), UnipotentElement::identity(ctx)).unwrap();
        let prod = m1.multiply(&m2).unwrap();
        let expected = u
            .conjugate_by_perm(
                &word_to_permutation(m1.context().system(), &WeylWord::new(vec![0])).inverse(),
            )
            .unwrap();
        assert_eq!(prod.unipotent(), &expected);
        // s_{a1}^{-1} = s_{a1} maps 2 -> 5.
        assert_eq!(prod.unipotent().coeff(5), Some(&p("s")));
    }

    #[test]
    fn mixed_associativity_deterministic_sweep() {
        let ctx = a3_radical();
        let mut state = 0x2545f4914f6cdd1du64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        let labels = [1u32, 2, 4, 5, 6];
        let names = ["x", "y", "z"];
        let random_mixed = |next: &mut dyn FnMut() -> u64| {
            let word = if next().is_multiple_of(2) {
                WeylWord::identity()
            } else {
                WeylWord::new(vec![0])
            };
            let len = next() % 3;
            let factors: Vec<(Label, SparsePoly)> = (0..len)
                .map(|_| {
                    (
                        labels[(next() % 5) as usize],
                        p(names[(next() % 3) as usize]),
                    )
                })
                .collect();
            let u = UnipotentElement::from_factors(ctx.clone(), &factors).unwrap();
            MixedElement::new(word, u).unwrap()
        };
        for _ in 0..200 {
            let a = random_mixed(&mut next);
            let b = random_mixed(&mut next);
            let c = random_mixed(&mut next);
            let left = a.multiply(&b).unwrap().multiply(&c).unwrap();
            let right = a.multiply(&b.multiply(&c).unwrap()).unwrap();
            assert_eq!(left, right);
            assert!(a.multiply(&a.inverse()).unwrap().is_identity());
        }
    }

    #[test]
    fn parse_mixed_expressions() {
        let ctx = a3_radical();
        let presets = BTreeMap::from([("r1".to_string(), WeylWord::new(vec![0]))]);
        let m = parse_mixed(&ctx, &presets, "r1 * e2(x^2) * e4(x + y)").unwrap();
        assert_eq!(m.word().letters(), &[0]);
        assert_eq!(m.unipotent().coeff(2), Some(&p("x^2")));
        assert_eq!(m.unipotent().coeff(4), Some(&p("x + y")));
        assert_eq!(
            parse_mixed(&ctx, &presets, "1").unwrap(),
            MixedElement::identity(ctx.clone())
        );
        assert!(parse_mixed(&ctx, &presets, "zz * e2(x)").is_err());
        assert!(parse_mixed(&ctx, &presets, "e99(x)").is_err());
        assert!(parse_mixed(&ctx, &presets, "e2(x").is_err());
    }
}
