//! Cocharacter gradings, parabolic decompositions, limit maps, and
//! conjugacy decision procedures.
//!
//! A cocharacter `lambda = sum c_i alpha_i^vee` grades the root system by
//! `<zeta, lambda>`. When every positive root has weight `>= 0` this
//! grading defines a parabolic: the Levi is spanned by the weight-0 roots,
//! the unipotent radical by the positive-weight ones, and conjugation by
//! `lambda(t)` scales the radical coordinate of weight `w` by `t^w`. The
//! limit `t -> 0` therefore projects any element of the parabolic onto its
//! Levi part; this module implements that projection exactly, together
//! with closed-subsystem analysis and symbolic/brute-force unipotent
//! conjugacy decisions with machine-checkable certificates.

use crate::centralizer::{
    solve, CentError, ConstraintSystem, GenericUnipotent, Solution, SolveError,
};
use crate::chevalley::{ChevError, MixedElement, RadicalContext, UnipotentElement};
use crate::coeffring::{Coeff, FieldElem, FieldError, Gf2m, PolyError, SparsePoly, Var};
use crate::rootsys::{Label, Root, RootSysError, RootSystem, SignedLabel};
use crate::weyl::{group_closure, WeylError};
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CrgitError {
    #[error("cocharacter has {got} coefficients but the system has rank {rank}")]
    WrongCoefficientCount { got: usize, rank: usize },
    #[error("positive root {label} has negative weight {weight}; the grading is not parabolic")]
    NegativeWeight { label: Label, weight: i64 },
    #[error("conjugation cannot match Weyl parts: a permutation differs between the two sides")]
    PermutationMismatch,
    #[error("search space of {space} candidates exceeds the bound {bound}")]
    SearchSpaceTooLarge { space: u128, bound: u64 },
    #[error(transparent)]
    RootSys(#[from] RootSysError),
    #[error(transparent)]
    Chev(#[from] ChevError),
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error(transparent)]
    Cent(#[from] CentError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// An integral cocharacter, written in the basis of simple coroots.
#[derive(Clone, Debug)]
pub struct Cocharacter {
    system: Arc<RootSystem>,
    coeffs: Vec<i64>,
}

impl Cocharacter {
    pub fn new(system: Arc<RootSystem>, coeffs: Vec<i64>) -> Result<Self, CrgitError> {
        if coeffs.len() != system.rank() {
            return Err(CrgitError::WrongCoefficientCount {
                got: coeffs.len(),
                rank: system.rank(),
            });
        }
        Ok(Cocharacter { system, coeffs })
    }

    pub fn system(&self) -> &Arc<RootSystem> {
        &self.system
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// `<root, lambda> = sum_i c_i <root, alpha_i^vee>`.
    pub fn weight_of_root(&self, root: &Root) -> i64 {
        (0..self.system.rank())
            .map(|i| {
                self.coeffs[i]
                    * self
                        .system
                        .pairing(root, &self.system.datum().simple_root(i))
            })
            .sum()
    }

    pub fn weight_of(&self, label: SignedLabel) -> Result<i64, CrgitError> {
        Ok(self.weight_of_root(&self.system.root(label)?))
    }

    /// Weights of the simple roots, in datum order.
    pub fn simple_weights(&self) -> Vec<i64> {
        (0..self.system.rank())
            .map(|i| self.weight_of_root(&self.system.datum().simple_root(i)))
            .collect()
    }

    pub fn display(&self) -> String {
        self.coeffs
            .iter()
            .zip(self.system.datum().names())
            .map(|(c, n)| format!("{c}*{n}^"))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// The parabolic decomposition induced by a nonnegative cocharacter
/// grading: weight-0 positive roots form the Levi, positive-weight roots
/// the unipotent radical.
#[derive(Clone, Debug)]
pub struct ParabolicDecomposition {
    cochar: Cocharacter,
    levi_letters: BTreeSet<usize>,
    levi_positive: Vec<Label>,
    radical: Vec<Label>,
    bands: BTreeMap<i64, Vec<Label>>,
}

impl ParabolicDecomposition {
    pub fn decompose(cochar: Cocharacter) -> Result<Self, CrgitError> {
        let system = cochar.system().clone();
        let mut levi_positive = Vec::new();
        let mut radical = Vec::new();
        let mut bands: BTreeMap<i64, Vec<Label>> = BTreeMap::new();
        for l in system.positive_labels() {
            let w = cochar.weight_of(l as SignedLabel)?;
            match w {
                _ if w < 0 => {
                    return Err(CrgitError::NegativeWeight {
                        label: l,
                        weight: w,
                    })
                }
                0 => levi_positive.push(l),
                _ => {
                    radical.push(l);
                    bands.entry(w).or_default().push(l);
                }
            }
        }
        let simple_weights = cochar.simple_weights();
        let levi_letters = simple_weights
            .iter()
            .enumerate()
            .filter(|(_, &w)| w == 0)
            .map(|(i, _)| i)
            .collect();
        Ok(ParabolicDecomposition {
            cochar,
            levi_letters,
            levi_positive,
            radical,
            bands,
        })
    }

    pub fn cocharacter(&self) -> &Cocharacter {
        &self.cochar
    }

    pub fn system(&self) -> &Arc<RootSystem> {
        self.cochar.system()
    }

    /// Indices of the weight-0 simple roots.
    pub fn levi_letters(&self) -> &BTreeSet<usize> {
        &self.levi_letters
    }

    /// Positive roots of weight 0, ascending.
    pub fn levi_labels(&self) -> &[Label] {
        &self.levi_positive
    }

    /// Positive roots of positive weight, ascending.
    pub fn radical_labels(&self) -> &[Label] {
        &self.radical
    }

    /// Radical labels grouped by weight.
    pub fn bands(&self) -> &BTreeMap<i64, Vec<Label>> {
        &self.bands
    }

    pub fn band(&self, weight: i64) -> &[Label] {
        self.bands.get(&weight).map_or(&[], |v| v)
    }

    /// Collection context for the unipotent radical, with the weight-0
    /// simple reflections as the allowed Weyl letters.
    pub fn radical_context(&self) -> Result<Arc<RadicalContext>, CrgitError> {
        Ok(RadicalContext::new(
            self.system().clone(),
            self.radical.iter().copied().collect(),
            self.levi_letters.clone(),
        )?)
    }
}

/// The limit map along the cocharacter: conjugating by `lambda(t)` scales
/// a radical coordinate of weight `w` by `t^w`, so `t -> 0` kills every
/// positive-weight coordinate and leaves the Levi (Weyl) part untouched.
/// This is a group homomorphism on the parabolic.
pub fn limit_projection<C: Coeff>(
    cochar: &Cocharacter,
    elem: &MixedElement<C>,
) -> Result<MixedElement<C>, CrgitError> {
    let ctx = elem.context().clone();
    let mut kept = Vec::new();
    for (l, c) in elem.unipotent().coeffs() {
        if cochar.weight_of(*l as SignedLabel)? == 0 {
            kept.push((*l, c.clone()));
        }
    }
    let unip = UnipotentElement::from_factors(ctx, &kept)?;
    Ok(MixedElement::new(elem.word().clone(), unip)?)
}

/// Closure analysis of a set of signed roots: defects, simple members,
/// and recognition of a simply-laced chain (type A) Cartan shape.
#[derive(Clone, Debug)]
pub struct SubsystemAnalysis {
    pub members: BTreeSet<SignedLabel>,
    pub closed: bool,
    /// Triples `(a, b, s)`: members `a`, `b` whose root sum is the root
    /// `s`, which is missing from the set.
    pub defects: Vec<(SignedLabel, SignedLabel, SignedLabel)>,
    pub positive_members: Vec<Label>,
    /// Positive members not expressible as a sum of two positive members.
    pub simple_members: Vec<Label>,
    /// Pairing matrix of the simple members.
    pub cartan: Vec<Vec<i64>>,
    /// `Some(n)` when the simple members form a single simply-laced chain
    /// of length `n` (type A_n shape).
    pub chain_length: Option<usize>,
}

pub fn analyze_subsystem(
    system: &Arc<RootSystem>,
    members: &BTreeSet<SignedLabel>,
) -> Result<SubsystemAnalysis, CrgitError> {
    let roots: BTreeMap<SignedLabel, Root> = members
        .iter()
        .map(|&l| Ok((l, system.root(l)?)))
        .collect::<Result<_, RootSysError>>()?;
    let mut defects = Vec::new();
    let list: Vec<SignedLabel> = members.iter().copied().collect();
    for (i, &a) in list.iter().enumerate() {
        for &b in &list[i + 1..] {
            if a == -b {
                continue;
            }
            let sum = roots[&a].plus(&roots[&b]);
            if let Some(s) = system.label_of(&sum) {
                if !members.contains(&s) {
                    defects.push((a, b, s));
                }
            }
        }
    }
    let positive_members: Vec<Label> = members
        .iter()
        .filter(|&&l| l > 0)
        .map(|&l| l as Label)
        .collect();
    let positive_set: BTreeSet<Label> = positive_members.iter().copied().collect();
    let mut composite = BTreeSet::new();
    for (i, &a) in positive_members.iter().enumerate() {
        for &b in &positive_members[i + 1..] {
            let sum = roots[&(a as SignedLabel)].plus(&roots[&(b as SignedLabel)]);
            if let Some(s) = system.label_of(&sum) {
                if s > 0 && positive_set.contains(&(s as Label)) {
                    composite.insert(s as Label);
                }
            }
        }
    }
    let simple_members: Vec<Label> = positive_members
        .iter()
        .copied()
        .filter(|l| !composite.contains(l))
        .collect();
    let cartan: Vec<Vec<i64>> = simple_members
        .iter()
        .map(|&a| {
            simple_members
                .iter()
                .map(|&b| system.pairing(&roots[&(a as SignedLabel)], &roots[&(b as SignedLabel)]))
                .collect()
        })
        .collect();
    let chain_length = chain_length(&cartan);
    Ok(SubsystemAnalysis {
        members: members.clone(),
        closed: defects.is_empty(),
        defects,
        positive_members,
        simple_members,
        cartan,
        chain_length,
    })
}

/// `Some(n)` when the pairing matrix is that of a connected simply-laced
/// chain with `n` nodes: diagonal 2, off-diagonal 0 or -1, each node
/// adjacent to at most two others, connected, and `n - 1` edges in total.
#[allow(clippy::needless_range_loop)] // (i, j) indexing matches the symmetric a_ij / a_ji checks
fn chain_length(cartan: &[Vec<i64>]) -> Option<usize> {
    let n = cartan.len();
    if n == 0 {
        return None;
    }
    let mut edges = Vec::new();
    for i in 0..n {
        if cartan[i][i] != 2 {
            return None;
        }
        for j in (i + 1)..n {
            if cartan[i][j] != cartan[j][i] {
                return None;
            }
            match cartan[i][j] {
                0 => {}
                -1 => edges.push((i, j)),
                _ => return None,
            }
        }
    }
    if edges.len() != n - 1 {
        return None;
    }
    let mut degree = vec![0usize; n];
    for &(i, j) in &edges {
        degree[i] += 1;
        degree[j] += 1;
    }
    if degree.iter().any(|&d| d > 2) {
        return None;
    }
    // n - 1 edges with max degree 2 and no vertex isolated unless n == 1:
    // connectivity check by BFS from node 0.
    let mut seen = vec![false; n];
    let mut queue = vec![0usize];
    seen[0] = true;
    while let Some(v) = queue.pop() {
        for &(i, j) in &edges {
            let other = if i == v {
                j
            } else if j == v {
                i
            } else {
                continue;
            };
            if !seen[other] {
                seen[other] = true;
                queue.push(other);
            }
        }
    }
    seen.iter().all(|&s| s).then_some(n)
}

/// Symbolic analysis of `m x_i m^{-1} = y_i` for a generic unipotent `m`
/// supported on the given labels.
#[derive(Clone, Debug)]
pub struct ConjugacyOutcome {
    generic: GenericUnipotent,
    /// Eliminated `m`-variables, free `m`-variables, and the parameter
    /// residuals that obstruct conjugacy.
    pub solution: Solution,
}

impl ConjugacyOutcome {
    /// Obstruction polynomials in the pairs' own coefficient parameters:
    /// a conjugating element exists over a field exactly when all of them
    /// vanish there.
    pub fn obstructions(&self) -> &[SparsePoly] {
        &self.solution.residuals
    }

    pub fn generic(&self) -> &GenericUnipotent {
        &self.generic
    }
}

/// Solve `m x m^{-1} = y` symbolically for all listed pairs
/// simultaneously, with `m` a generic unipotent on `m_labels`.
pub fn unipotent_conjugacy(
    ctx: &Arc<RadicalContext>,
    m_labels: &[Label],
    pairs: &[(MixedElement<SparsePoly>, MixedElement<SparsePoly>)],
) -> Result<ConjugacyOutcome, CrgitError> {
    let generic = GenericUnipotent::on_labels(ctx, m_labels, "m")?;
    let m = MixedElement::from_unipotent(generic.element().clone());
    let m_inv = m.inverse();
    let mut equations = Vec::new();
    for (x, y) in pairs {
        let lhs = m.multiply(x)?.multiply(&m_inv)?;
        if lhs.perm() != y.perm() {
            return Err(CrgitError::PermutationMismatch);
        }
        for &l in ctx.support() {
            let a = lhs
                .unipotent()
                .coeff(l)
                .cloned()
                .unwrap_or_else(SparsePoly::zero);
            let b = y
                .unipotent()
                .coeff(l)
                .cloned()
                .unwrap_or_else(SparsePoly::zero);
            let eq = a.add(&b);
            if !eq.is_zero() {
                equations.push(eq);
            }
        }
    }
    let unknowns: BTreeSet<Var> = generic.vars().values().cloned().collect();
    let system = ConstraintSystem::new(equations, unknowns);
    let solution = solve(&system)?;
    Ok(ConjugacyOutcome { generic, solution })
}

/// Field-level verdict extracted from a symbolic [`ConjugacyOutcome`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConjugacyDecision {
    Conjugate {
        witness: UnipotentElement<FieldElem>,
    },
    NotConjugate {
        obstruction: SparsePoly,
    },
}

/// Specialize the obstructions at concrete parameter values: any nonzero
/// obstruction certifies non-conjugacy; otherwise a conjugating witness is
/// assembled from the solved substitutions (free variables set to 0).
pub fn decide_conjugacy_over(
    outcome: &ConjugacyOutcome,
    field: Gf2m,
    params: &BTreeMap<Var, FieldElem>,
) -> Result<ConjugacyDecision, CrgitError> {
    let mut assignment = params.clone();
    for v in &outcome.solution.free {
        assignment.insert(v.clone(), field.zero());
    }
    for obstruction in &outcome.solution.residuals {
        if !obstruction.specialize(field, &assignment)?.is_zero() {
            return Ok(ConjugacyDecision::NotConjugate {
                obstruction: obstruction.clone(),
            });
        }
    }
    let mut factors = Vec::new();
    for (l, v) in outcome.generic.vars() {
        let value = match outcome.solution.substitutions.get(v) {
            Some(expr) => expr.specialize(field, &assignment)?,
            None => field.zero(),
        };
        factors.push((*l, value));
    }
    let witness =
        UnipotentElement::from_factors(outcome.generic.element().context().clone(), &factors)?;
    Ok(ConjugacyDecision::Conjugate { witness })
}

/// Exhaustive search result over a finite field.
#[derive(Clone, Debug)]
pub struct BruteForceReport {
    pub conjugate: bool,
    /// Lexicographically least witness (coefficients ordered by label,
    /// field elements by bit pattern), when one exists.
    pub witness: Option<UnipotentElement<FieldElem>>,
    pub candidates_checked: u64,
    pub search_space: u64,
}

/// Try every unipotent element supported on `m_labels` over the field
/// against `m x_i m^{-1} = y_i`. Independent of the symbolic solver: a
/// ground-truth cross-check on small search spaces.
pub fn brute_force_conjugacy(
    ctx: &Arc<RadicalContext>,
    m_labels: &[Label],
    field: Gf2m,
    pairs: &[(MixedElement<FieldElem>, MixedElement<FieldElem>)],
    bound: u64,
) -> Result<BruteForceReport, CrgitError> {
    let q = field.order() as u128;
    let space = q
        .checked_pow(m_labels.len() as u32)
        .ok_or(CrgitError::SearchSpaceTooLarge {
            space: u128::MAX,
            bound,
        })?;
    if space > bound as u128 {
        return Err(CrgitError::SearchSpaceTooLarge { space, bound });
    }
    let elements: Vec<FieldElem> = field.elements().collect();
    let mut digits = vec![0usize; m_labels.len()];
    let mut checked = 0u64;
    loop {
        checked += 1;
        let factors: Vec<(Label, FieldElem)> = m_labels
            .iter()
            .zip(&digits)
            .map(|(&l, &d)| (l, elements[d]))
            .collect();
        let m_unip = UnipotentElement::from_factors(ctx.clone(), &factors)?;
        let m = MixedElement::from_unipotent(m_unip.clone());
        let m_inv = m.inverse();
        let mut all_match = true;
        for (x, y) in pairs {
            if &m.multiply(x)?.multiply(&m_inv)? != y {
                all_match = false;
                break;
            }
        }
        if all_match {
            return Ok(BruteForceReport {
                conjugate: true,
                witness: Some(m_unip),
                candidates_checked: checked,
                search_space: space as u64,
            });
        }
        // Lexicographic order: the last label is the fastest digit.
        let mut pos = m_labels.len();
        loop {
            if pos == 0 {
                return Ok(BruteForceReport {
                    conjugate: false,
                    witness: None,
                    candidates_checked: checked,
                    search_space: space as u64,
                });
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < elements.len() {
                break;
            }
            digits[pos] = 0;
        }
    }
}

/// Order data for the pointwise stabilizer of a label set inside the
/// group generated by the given simple reflections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointwiseStabilizerReport {
    pub group_order: usize,
    pub stabilizer_order: usize,
    /// True when only the identity fixes every listed label: the group
    /// acts faithfully wherever these labels separate elements.
    pub faithful: bool,
}

/// Enumerate the closure of the simple reflections at the given letters
/// and count the elements fixing each label in `fixed` individually.
pub fn pointwise_stabilizer(
    system: &Arc<RootSystem>,
    letters: &BTreeSet<usize>,
    fixed: &BTreeSet<Label>,
    max_order: usize,
) -> Result<PointwiseStabilizerReport, CrgitError> {
    let gens: Vec<_> = letters
        .iter()
        .map(|&i| crate::weyl::word_to_permutation(system, &crate::weyl::WeylWord::new(vec![i])))
        .collect();
    let group = group_closure(&gens, max_order)?;
    let stabilizer_order = group
        .elements()
        .iter()
        .filter(|g| {
            fixed
                .iter()
                .all(|&l| g.apply(l as SignedLabel) == l as SignedLabel)
        })
        .count();
    Ok(PointwiseStabilizerReport {
        group_order: group.order(),
        stabilizer_order,
        faithful: stabilizer_order == 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::CartanDatum;
    use crate::weyl::WeylWord;

    fn p(s: &str) -> SparsePoly {
        SparsePoly::parse(s).unwrap()
    }

    fn var(s: &str) -> Var {
        Var::new(s).unwrap()
    }

    fn a3() -> Arc<RootSystem> {
        Arc::new(RootSystem::generate(CartanDatum::type_a(3).unwrap()).unwrap())
    }

    /// A3 with lambda = 1*a1^ + 2*a2^ + 2*a3^: weight-0 Levi {a1},
    /// radical {1, 2, 4, 5, 6}.
    fn a3_parabolic() -> ParabolicDecomposition {
        let system = a3();
        let cochar = Cocharacter::new(system, vec![1, 2, 2]).unwrap();
        ParabolicDecomposition::decompose(cochar).unwrap()
    }

    #[test]
    fn cocharacter_weights_and_bands() {
        let decomp = a3_parabolic();
        let cochar = decomp.cocharacter();
        assert_eq!(cochar.simple_weights(), vec![0, 1, 2]);
        assert_eq!(cochar.weight_of(6).unwrap(), 3);
        assert_eq!(cochar.weight_of(-6).unwrap(), -3);
        assert_eq!(decomp.levi_letters(), &BTreeSet::from([0]));
        assert_eq!(decomp.levi_labels(), &[3]);
        assert_eq!(decomp.radical_labels(), &[1, 2, 4, 5, 6]);
        assert_eq!(decomp.band(1), &[2, 5]);
        assert_eq!(decomp.band(2), &[1]);
        assert_eq!(decomp.band(3), &[4, 6]);
        assert_eq!(cochar.display(), "1*a1^ + 2*a2^ + 2*a3^");
    }

    #[test]
    fn wrong_coefficient_count_is_rejected() {
        let err = Cocharacter::new(a3(), vec![1, 2]).unwrap_err();
        assert_eq!(err, CrgitError::WrongCoefficientCount { got: 2, rank: 3 });
    }

    #[test]
    fn negative_weights_are_not_parabolic() {
        // lambda = a1^ alone gives <a2, lambda> = -1.
        let cochar = Cocharacter::new(a3(), vec![1, 0, 0]).unwrap();
        let err = ParabolicDecomposition::decompose(cochar).unwrap_err();
        assert!(matches!(err, CrgitError::NegativeWeight { weight: -1, .. }));
    }

    #[test]
    fn radical_context_matches_the_decomposition() {
        let decomp = a3_parabolic();
        let ctx = decomp.radical_context().unwrap();
        assert_eq!(ctx.support(), &[1, 2, 4, 5, 6]);
        assert_eq!(ctx.levi_letters(), &BTreeSet::from([0]));
        assert_eq!(ctx.central_labels(), BTreeSet::from([4, 6]));
    }

    #[test]
    fn limit_projection_kills_the_radical_part() {
        let decomp = a3_parabolic();
        let ctx = decomp.radical_context().unwrap();
        let unip =
            UnipotentElement::from_factors(ctx.clone(), &[(2, p("x")), (4, p("y"))]).unwrap();
        let elem = MixedElement::new(WeylWord::new(vec![0]), unip).unwrap();
        let projected = limit_projection(decomp.cocharacter(), &elem).unwrap();
        assert!(projected.unipotent().is_identity());
        assert_eq!(projected.perm(), elem.perm());
    }

    #[test]
    fn limit_projection_is_a_homomorphism() {
        let decomp = a3_parabolic();
        let ctx = decomp.radical_context().unwrap();
        let mk = |letters: Vec<usize>, factors: &[(Label, &str)]| {
            let unip = UnipotentElement::from_factors(
                ctx.clone(),
                &factors.iter().map(|(l, s)| (*l, p(s))).collect::<Vec<_>>(),
            )
            .unwrap();
            MixedElement::new(WeylWord::new(letters), unip).unwrap()
        };
        let cases = [
            (mk(vec![0], &[(1, "x"), (5, "y")]), mk(vec![], &[(2, "z")])),
            (
                mk(vec![0, 0, 0], &[(4, "x")]),
                mk(vec![0], &[(6, "w"), (2, "v")]),
            ),
            (mk(vec![], &[(1, "x + y")]), mk(vec![0], &[(5, "x*y")])),
        ];
        for (x, y) in cases {
            let lhs = limit_projection(decomp.cocharacter(), &x.multiply(&y).unwrap()).unwrap();
            let rhs = limit_projection(decomp.cocharacter(), &x)
                .unwrap()
                .multiply(&limit_projection(decomp.cocharacter(), &y).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn closed_subsystem_of_rank_two_is_a_chain() {
        // {±a3, ±a2, ±(a2+a3)} is closed and has A2 chain shape.
        let system = a3();
        let analysis = analyze_subsystem(&system, &BTreeSet::from([1, -1, 2, -2, 4, -4])).unwrap();
        assert!(analysis.closed);
        assert!(analysis.defects.is_empty());
        assert_eq!(analysis.positive_members, vec![1, 2, 4]);
        assert_eq!(analysis.simple_members, vec![1, 2]);
        assert_eq!(analysis.cartan, vec![vec![2, -1], vec![-1, 2]]);
        assert_eq!(analysis.chain_length, Some(2));
    }

    #[test]
    fn closure_defects_are_itemized() {
        let system = a3();
        let analysis = analyze_subsystem(&system, &BTreeSet::from([1, -1, 2, -2])).unwrap();
        assert!(!analysis.closed);
        assert_eq!(analysis.defects, vec![(-2, -1, -4), (1, 2, 4)]);
    }

    #[test]
    fn full_a3_system_is_a_chain_of_length_three() {
        let system = a3();
        let members: BTreeSet<SignedLabel> = (1..=6).flat_map(|l| [l, -l]).collect();
        let analysis = analyze_subsystem(&system, &members).unwrap();
        assert!(analysis.closed);
        assert_eq!(analysis.simple_members, vec![1, 2, 3]);
        assert_eq!(analysis.chain_length, Some(3));
    }

    #[test]
    fn star_shaped_systems_are_not_chains() {
        let system = Arc::new(RootSystem::generate(CartanDatum::type_d(4).unwrap()).unwrap());
        let members: BTreeSet<SignedLabel> = system
            .positive_labels()
            .flat_map(|l| [l as SignedLabel, -(l as SignedLabel)])
            .collect();
        let analysis = analyze_subsystem(&system, &members).unwrap();
        assert!(analysis.closed);
        assert_eq!(analysis.simple_members.len(), 4);
        assert_eq!(analysis.chain_length, None);
    }

    type SymbolicPairs = Vec<(MixedElement<SparsePoly>, MixedElement<SparsePoly>)>;

    /// Mixed pair on the A3 radical: x = (s_{a1}, 1) and a target that
    /// differs by a central coefficient.
    fn conjugacy_fixture(target: &[(Label, &str)]) -> (Arc<RadicalContext>, SymbolicPairs) {
        let decomp = a3_parabolic();
        let ctx = decomp.radical_context().unwrap();
        let x = MixedElement::new(
            WeylWord::new(vec![0]),
            UnipotentElement::identity(ctx.clone()),
        )
        .unwrap();
        let y_unip = UnipotentElement::from_factors(
            ctx.clone(),
            &target.iter().map(|(l, s)| (*l, p(s))).collect::<Vec<_>>(),
        )
        .unwrap();
        let y = MixedElement::new(WeylWord::new(vec![0]), y_unip).unwrap();
        (ctx, vec![(x, y)])
    }

    #[test]
    fn symbolic_conjugacy_finds_an_obstruction() {
        // No central m can produce e4(d) alone: s_{a1} swaps labels 4 and
        // 6, so conjugation moves them together, forcing d = 0.
        let (ctx, pairs) = conjugacy_fixture(&[(4, "d")]);
        let outcome = unipotent_conjugacy(&ctx, &[4, 6], &pairs).unwrap();
        assert_eq!(outcome.obstructions(), &[p("d")]);

        let decision = decide_conjugacy_over(
            &outcome,
            Gf2m::gf2(),
            &BTreeMap::from([(var("d"), Gf2m::gf2().one())]),
        )
        .unwrap();
        assert_eq!(
            decision,
            ConjugacyDecision::NotConjugate {
                obstruction: p("d")
            }
        );
    }

    #[test]
    fn symbolic_conjugacy_builds_a_verified_witness() {
        // e4(d) e6(d) is reachable: m = e6(d) works.
        let (ctx, pairs) = conjugacy_fixture(&[(4, "d"), (6, "d")]);
        let outcome = unipotent_conjugacy(&ctx, &[4, 6], &pairs).unwrap();
        assert!(outcome.obstructions().is_empty());

        let f = Gf2m::gf4();
        let t = f.t();
        let decision =
            decide_conjugacy_over(&outcome, f, &BTreeMap::from([(var("d"), t)])).unwrap();
        let ConjugacyDecision::Conjugate { witness } = decision else {
            panic!("expected a witness");
        };
        // Verify the witness by direct conjugation over the field.
        let x = MixedElement::new(
            WeylWord::new(vec![0]),
            UnipotentElement::identity(ctx.clone()),
        )
        .unwrap();
        let y = MixedElement::new(
            WeylWord::new(vec![0]),
            UnipotentElement::from_factors(ctx.clone(), &[(4, t), (6, t)]).unwrap(),
        )
        .unwrap();
        let m = MixedElement::from_unipotent(witness);
        assert_eq!(m.multiply(&x).unwrap().multiply(&m.inverse()).unwrap(), y);
    }

    #[test]
    fn brute_force_agrees_with_the_symbolic_verdict() {
        let decomp = a3_parabolic();
        let ctx = decomp.radical_context().unwrap();
        let f = Gf2m::gf2();
        let one = f.one();
        let x = MixedElement::new(
            WeylWord::new(vec![0]),
            UnipotentElement::<FieldElem>::identity(ctx.clone()),
        )
        .unwrap();
        let reachable = MixedElement::new(
            WeylWord::new(vec![0]),
            UnipotentElement::from_factors(ctx.clone(), &[(4, one), (6, one)]).unwrap(),
        )
        .unwrap();
        let unreachable = MixedElement::new(
            WeylWord::new(vec![0]),
            UnipotentElement::from_factors(ctx.clone(), &[(4, one)]).unwrap(),
        )
        .unwrap();

        let hit =
            brute_force_conjugacy(&ctx, &[4, 6], f, &[(x.clone(), reachable)], 1 << 20).unwrap();
        assert!(hit.conjugate);
        assert_eq!(hit.search_space, 4);
        // Lexicographically least witness: (m4, m6) = (0, 1), reached on
        // the second candidate.
        assert_eq!(hit.candidates_checked, 2);
        let witness = hit.witness.unwrap();
        assert_eq!(witness.coeff(4), None);
        assert_eq!(witness.coeff(6), Some(&one));

        let miss = brute_force_conjugacy(&ctx, &[4, 6], f, &[(x, unreachable)], 1 << 20).unwrap();
        assert!(!miss.conjugate);
        assert_eq!(miss.candidates_checked, 4);
    }

    #[test]
    fn brute_force_respects_the_search_bound() {
        let decomp = a3_parabolic();
        let ctx = decomp.radical_context().unwrap();
        let err = brute_force_conjugacy(&ctx, &[4, 6], Gf2m::gf2(), &[], 3).unwrap_err();
        assert_eq!(err, CrgitError::SearchSpaceTooLarge { space: 4, bound: 3 });
    }

    #[test]
    fn pointwise_stabilizers_detect_faithful_actions() {
        let system = a3();
        // <s_{a1}> moves label 2, so fixing 2 pins the group.
        let moving =
            pointwise_stabilizer(&system, &BTreeSet::from([0]), &BTreeSet::from([2]), 100).unwrap();
        assert_eq!(moving.group_order, 2);
        assert!(moving.faithful);
        // Label 1 = a3 is fixed by s_{a1}, so the stabilizer is everything.
        let fixed =
            pointwise_stabilizer(&system, &BTreeSet::from([0]), &BTreeSet::from([1]), 100).unwrap();
        assert_eq!(fixed.stabilizer_order, 2);
        assert!(!fixed.faithful);
    }
}
