//! Symbolic centralizers of Weyl subgroups acting on a unipotent radical.
//!
//! The centralizer condition `w u w^{-1} = u` for a *generic* unipotent
//! element `u = prod e_l(b_l)` is a system of polynomial equations over
//! GF(2) in the coefficients `b_l`. The solver eliminates variables that
//! occur purely linearly, and linearizes perfect-square equations by the
//! Frobenius square root (`q^2 = 0` iff `q = 0` over any field of
//! characteristic 2, so this preserves the solution set over every
//! GF(2^m)). The result is an explicit polynomial parametrization of the
//! centralizer group, from which dimension, tangent space, and
//! separability data are read off.

use crate::chevalley::{ChevError, RadicalContext, UnipotentElement};
use crate::coeffring::{FieldElem, Gf2m, PolyError, SparsePoly, Var};
use crate::rootsys::Label;
use crate::weyl::{orbits, OrbitPartition, RootPermutation, WeylError};
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CentError {
    #[error(transparent)]
    Chev(#[from] ChevError),
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("coefficients are not constant on the orbit of label {0}")]
    NotOrbitConstant(Label),
    #[error("inconsistent constraint system: residual {0}")]
    Inconsistent(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error(
        "solver incomplete: equation {0} is nonlinear in the unknowns and not a perfect square"
    )]
    Incomplete(String),
}

/// A generic unipotent element `prod_{l in support} e_l(<prefix><l>)`,
/// with one polynomial variable per support label.
#[derive(Clone, Debug)]
pub struct GenericUnipotent {
    elem: UnipotentElement<SparsePoly>,
    vars: BTreeMap<Label, Var>,
}

impl GenericUnipotent {
    pub fn new(ctx: &Arc<RadicalContext>, prefix: &str) -> Self {
        let mut vars = BTreeMap::new();
        let mut coeffs = Vec::new();
        for &l in ctx.support() {
            let v = Var::new(&format!("{prefix}{l}")).expect("prefix + digits is a valid name");
            coeffs.push((l, SparsePoly::var(&v)));
            vars.insert(l, v);
        }
        let elem = UnipotentElement::from_factors(ctx.clone(), &coeffs)
            .expect("support labels are valid by construction");
        GenericUnipotent { elem, vars }
    }

    /// Generic element supported only on the given labels (each of which
    /// must belong to the context's support).
    pub fn on_labels(
        ctx: &Arc<RadicalContext>,
        labels: &[Label],
        prefix: &str,
    ) -> Result<Self, ChevError> {
        let mut vars = BTreeMap::new();
        let mut coeffs = Vec::new();
        let mut sorted: Vec<Label> = labels.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        for l in sorted {
            let v = Var::new(&format!("{prefix}{l}")).expect("prefix + digits is a valid name");
            coeffs.push((l, SparsePoly::var(&v)));
            vars.insert(l, v);
        }
        let elem = UnipotentElement::from_factors(ctx.clone(), &coeffs)?;
        Ok(GenericUnipotent { elem, vars })
    }

    pub fn element(&self) -> &UnipotentElement<SparsePoly> {
        &self.elem
    }

    pub fn var(&self, label: Label) -> Option<&Var> {
        self.vars.get(&label)
    }

    pub fn vars(&self) -> &BTreeMap<Label, Var> {
        &self.vars
    }
}

/// A polynomial constraint system over GF(2): every listed equation is
/// required to vanish. `unknowns` are the variables to eliminate; all
/// other variables are treated as parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintSystem {
    pub equations: Vec<SparsePoly>,
    pub unknowns: BTreeSet<Var>,
}

impl ConstraintSystem {
    pub fn new(equations: Vec<SparsePoly>, unknowns: BTreeSet<Var>) -> Self {
        let mut deduped: BTreeSet<SparsePoly> = equations.into_iter().collect();
        deduped.remove(&SparsePoly::zero());
        ConstraintSystem {
            equations: deduped.into_iter().collect(),
            unknowns,
        }
    }
}

/// The centralizer equations of a permutation set: coefficients of
/// `conj(g, u) + u` for the generic element `u`, over all generators `g`.
pub fn centralizer_equations(
    gens: &[RootPermutation],
    generic: &GenericUnipotent,
) -> Result<ConstraintSystem, CentError> {
    let ctx = generic.element().context();
    let mut equations = Vec::new();
    for g in gens {
        let conj = generic.element().conjugate_by_perm(g)?;
        for &l in ctx.support() {
            let lhs = conj.coeff(l).cloned().unwrap_or_else(SparsePoly::zero);
            let rhs = generic
                .element()
                .coeff(l)
                .cloned()
                .unwrap_or_else(SparsePoly::zero);
            let eq = lhs.add(&rhs);
            if !eq.is_zero() {
                equations.push(eq);
            }
        }
    }
    Ok(ConstraintSystem::new(
        equations,
        generic.vars.values().cloned().collect(),
    ))
}

/// Result of eliminating the unknowns of a [`ConstraintSystem`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    /// Solved unknowns, fully reduced: no substituted variable appears in
    /// any right-hand side.
    pub substitutions: BTreeMap<Var, SparsePoly>,
    /// Unknowns with no constraint left: free parameters of the solution.
    pub free: BTreeSet<Var>,
    /// Surviving equations containing only parameters (never unknowns):
    /// obstruction polynomials that must vanish for solvability.
    pub residuals: Vec<SparsePoly>,
}

/// Eliminate unknowns by iterated linear pivoting and square-root
/// linearization.
///
/// A pivot for an equation is the largest unknown that occurs in it as the
/// bare monomial `v` and in no other monomial, giving `v := eq + v` —
/// Gaussian elimination generalized to allow arbitrary parameter terms.
/// When no pivot exists anywhere, any perfect-square equation is replaced
/// by its Frobenius square root (solution-set preserving over every
/// GF(2^m)) and pivoting resumes. Equations that end up nonlinear in the
/// unknowns with no square root are reported as [`SolveError::Incomplete`].
pub fn solve(system: &ConstraintSystem) -> Result<Solution, SolveError> {
    let mut subs: BTreeMap<Var, SparsePoly> = BTreeMap::new();
    let mut eqs: Vec<SparsePoly> = system.equations.clone();
    loop {
        // Keep everything reduced modulo the substitutions found so far.
        let reduced: BTreeSet<SparsePoly> = eqs
            .iter()
            .map(|e| e.substitute_map(&subs))
            .filter(|e| !e.is_zero())
            .collect();
        eqs = reduced.into_iter().collect();

        let mut pivoted = false;
        'search: for eq in &eqs {
            let mut candidate: Option<Var> = None;
            for m in eq.monomials() {
                if let Some(v) = m.as_linear() {
                    if system.unknowns.contains(v)
                        && eq.monomials().filter(|n| n.contains(v)).count() == 1
                        && candidate.as_ref().is_none_or(|c| v > c)
                    {
                        candidate = Some(v.clone());
                    }
                }
            }
            if let Some(v) = candidate {
                let rest = eq.add(&SparsePoly::var(&v));
                debug_assert!(!rest.contains_var(&v));
                for rhs in subs.values_mut() {
                    *rhs = rhs.substitute(&v, &rest);
                }
                subs.insert(v, rest);
                pivoted = true;
                break 'search;
            }
        }
        if pivoted {
            continue;
        }

        let mut rooted = false;
        for eq in eqs.iter_mut() {
            if eq.is_perfect_square() {
                let root = eq.sqrt().expect("checked perfect square");
                if root != *eq {
                    *eq = root;
                    rooted = true;
                    break;
                }
            }
        }
        if rooted {
            continue;
        }
        break;
    }

    let mut residuals = Vec::new();
    for eq in eqs {
        if eq.vars().iter().any(|v| system.unknowns.contains(v)) {
            return Err(SolveError::Incomplete(eq.to_string()));
        }
        residuals.push(eq);
    }
    let solved: BTreeSet<Var> = subs.keys().cloned().collect();
    let free = system.unknowns.difference(&solved).cloned().collect();
    Ok(Solution {
        substitutions: subs,
        free,
        residuals,
    })
}

/// A solved centralizer: an explicit parametrization of the connected
/// centralizer of a permutation group inside the radical's unipotent group.
#[derive(Clone, Debug)]
pub struct CentralizerDescription {
    ctx: Arc<RadicalContext>,
    orbits: OrbitPartition,
    /// Free parameters, ascending.
    free: Vec<Var>,
    /// For every support label, its coefficient as a polynomial in the
    /// free parameters.
    forms: BTreeMap<Label, SparsePoly>,
    /// The solved substitutions `var -> expression`, for display.
    relations: BTreeMap<Var, SparsePoly>,
}

impl CentralizerDescription {
    pub fn context(&self) -> &Arc<RadicalContext> {
        &self.ctx
    }

    pub fn orbit_partition(&self) -> &OrbitPartition {
        &self.orbits
    }

    pub fn free_params(&self) -> &[Var] {
        &self.free
    }

    /// Number of free parameters — the dimension of the centralizer as a
    /// variety. Every free parameter reads off directly as the coefficient
    /// of its own label (see [`Self::parameter_label`]), so the
    /// parametrization is injective with injective differential, and this
    /// count is also the tangent-space dimension at the identity.
    pub fn dimension(&self) -> usize {
        self.free.len()
    }

    pub fn form(&self, label: Label) -> Option<&SparsePoly> {
        self.forms.get(&label)
    }

    pub fn forms(&self) -> &BTreeMap<Label, SparsePoly> {
        &self.forms
    }

    pub fn relations(&self) -> &BTreeMap<Var, SparsePoly> {
        &self.relations
    }

    /// The label whose coefficient is exactly the given free parameter.
    pub fn parameter_label(&self, param: &Var) -> Option<Label> {
        self.forms
            .iter()
            .find(|(_, f)| f == &&SparsePoly::var(param))
            .map(|(l, _)| *l)
    }

    /// The generic solved element `prod e_l(form_l)`, in normal form by
    /// construction.
    pub fn generic_element(&self) -> UnipotentElement<SparsePoly> {
        let factors: Vec<(Label, SparsePoly)> =
            self.forms.iter().map(|(l, f)| (*l, f.clone())).collect();
        UnipotentElement::from_factors(self.ctx.clone(), &factors)
            .expect("forms are indexed by support labels")
    }

    /// A concrete member of the solved family over a finite field.
    pub fn specialize(
        &self,
        field: Gf2m,
        assignment: &BTreeMap<Var, FieldElem>,
    ) -> Result<UnipotentElement<FieldElem>, CentError> {
        let mut factors = Vec::new();
        for (l, form) in &self.forms {
            let value = form.specialize(field, assignment)?;
            factors.push((*l, value));
        }
        Ok(UnipotentElement::from_factors(self.ctx.clone(), &factors)
            .expect("support labels are valid"))
    }

    /// Rename variables (free parameters) throughout. The map must be
    /// injective on the variables it mentions.
    pub fn rename(&self, renames: &BTreeMap<Var, Var>) -> CentralizerDescription {
        let poly_map: BTreeMap<Var, SparsePoly> = renames
            .iter()
            .map(|(old, new)| (old.clone(), SparsePoly::var(new)))
            .collect();
        let rename_var = |v: &Var| -> Var { renames.get(v).cloned().unwrap_or_else(|| v.clone()) };
        let mut free: Vec<Var> = self.free.iter().map(&rename_var).collect();
        free.sort();
        CentralizerDescription {
            ctx: self.ctx.clone(),
            orbits: self.orbits.clone(),
            free,
            forms: self
                .forms
                .iter()
                .map(|(l, f)| (*l, f.substitute_map(&poly_map)))
                .collect(),
            relations: self
                .relations
                .iter()
                .map(|(v, f)| (rename_var(v), f.substitute_map(&poly_map)))
                .collect(),
        }
    }

    /// Human-readable coefficient map, one line per support label.
    pub fn form_lines(&self) -> Vec<String> {
        self.forms
            .iter()
            .map(|(l, f)| format!("c{l} = {f}"))
            .collect()
    }
}

/// Solve the centralizer of a permutation set on the radical: set up the
/// generic equations, eliminate, and package the parametrization.
pub fn solve_centralizer(
    gens: &[RootPermutation],
    ctx: &Arc<RadicalContext>,
) -> Result<CentralizerDescription, CentError> {
    let partition = orbits(gens, ctx.support_set())?;
    let generic = GenericUnipotent::new(ctx, "b");
    let system = centralizer_equations(gens, &generic)?;
    let solution = solve(&system)?;
    if let Some(residual) = solution.residuals.first() {
        // The identity element always centralizes, so a genuinely
        // unsatisfiable system indicates an internal inconsistency.
        return Err(CentError::Inconsistent(residual.to_string()));
    }
    let mut forms = BTreeMap::new();
    for &l in ctx.support() {
        let v = generic.var(l).expect("one var per support label");
        let form = solution
            .substitutions
            .get(v)
            .cloned()
            .unwrap_or_else(|| SparsePoly::var(v));
        forms.insert(l, form);
    }
    let mut free: Vec<Var> = solution.free.iter().cloned().collect();
    free.sort();
    Ok(CentralizerDescription {
        ctx: ctx.clone(),
        orbits: partition,
        free,
        forms,
        relations: solution.substitutions,
    })
}

/// The infinitesimal (Lie-algebra) centralizer of the permutation group on
/// the radical's weight space: fixed vectors of the permutation action,
/// with the orbit-sum vectors as canonical basis.
#[derive(Clone, Debug)]
pub struct LieCentralizer {
    orbits: OrbitPartition,
}

impl LieCentralizer {
    pub fn dimension(&self) -> usize {
        self.orbits.count()
    }

    pub fn orbit_partition(&self) -> &OrbitPartition {
        &self.orbits
    }

    /// Basis vectors as label sets: one orbit-indicator sum per orbit.
    pub fn basis(&self) -> Vec<Vec<Label>> {
        self.orbits.orbits().to_vec()
    }

    pub fn basis_lines(&self) -> Vec<String> {
        self.orbits
            .orbits()
            .iter()
            .map(|o| {
                o.iter()
                    .map(|l| format!("e{l}"))
                    .collect::<Vec<_>>()
                    .join(" + ")
            })
            .collect()
    }
}

pub fn lie_centralizer(
    gens: &[RootPermutation],
    ctx: &Arc<RadicalContext>,
) -> Result<LieCentralizer, CentError> {
    Ok(LieCentralizer {
        orbits: orbits(gens, ctx.support_set())?,
    })
}

/// GF(2) vectors indexed by the support, as bit blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
struct BitVec(Vec<u64>);

impl BitVec {
    fn zeros(len: usize) -> Self {
        BitVec(vec![0; len.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn xor_in(&mut self, other: &BitVec) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a ^= b;
        }
    }

    fn leading(&self) -> Option<usize> {
        for (i, &w) in self.0.iter().enumerate() {
            if w != 0 {
                return Some(i * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }
}

/// Row-reduce a list of GF(2) vectors to an echelon basis (by leading bit).
fn echelonize(rows: Vec<BitVec>) -> Vec<BitVec> {
    let mut basis: Vec<BitVec> = Vec::new();
    for mut row in rows {
        while let Some(lead) = row.leading() {
            match basis.iter().find(|b| b.leading() == Some(lead)) {
                Some(b) => {
                    let b = b.clone();
                    row.xor_in(&b);
                }
                None => {
                    basis.push(row);
                    break;
                }
            }
        }
    }
    basis.sort_by_key(|b| b.leading());
    basis
}

fn in_span(basis: &[BitVec], mut v: BitVec) -> bool {
    loop {
        let Some(lead) = v.leading() else { return true };
        match basis.iter().find(|b| b.leading() == Some(lead)) {
            Some(b) => {
                let b = b.clone();
                v.xor_in(&b);
            }
            None => return false,
        }
    }
}

/// A nonmembership witness: an infinitesimally invariant vector (an orbit
/// sum) outside the tangent space of the solved centralizer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparabilityWitness {
    pub orbit_representative: Label,
    pub labels: Vec<Label>,
}

impl SeparabilityWitness {
    pub fn display(&self) -> String {
        self.labels
            .iter()
            .map(|l| format!("e{l}"))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Comparison of the group-level and Lie-level centralizer dimensions.
#[derive(Clone, Debug)]
pub struct SeparabilityReport {
    pub group_dimension: usize,
    pub lie_dimension: usize,
    pub separable: bool,
    /// Lie-invariant orbit sum outside the group centralizer's tangent
    /// space, when the dimensions differ.
    pub witness: Option<SeparabilityWitness>,
    /// Sanity: the tangent space embeds in the infinitesimal centralizer.
    pub tangent_inside_lie: bool,
}

/// Compare `dim C_G` (free parameters of the solved group centralizer)
/// with `dim c_Lie` (orbit count) and, when they differ, produce an orbit
/// sum not tangent to the group centralizer.
pub fn separability(desc: &CentralizerDescription) -> SeparabilityReport {
    let support = desc.ctx.support();
    let position: BTreeMap<Label, usize> =
        support.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    // Tangent vectors at the identity: the linear part of each parameter
    // direction.
    let mut tangent_rows = Vec::new();
    for p in &desc.free {
        let mut row = BitVec::zeros(support.len());
        for (l, form) in &desc.forms {
            if form.linear_coeff(p) {
                row.set(position[l]);
            }
        }
        tangent_rows.push(row);
    }
    let tangent = echelonize(tangent_rows);

    let orbit_row = |labels: &[Label]| {
        let mut row = BitVec::zeros(support.len());
        for l in labels {
            row.set(position[l]);
        }
        row
    };
    let lie_rows: Vec<BitVec> = desc.orbits.orbits().iter().map(|o| orbit_row(o)).collect();
    let lie = echelonize(lie_rows);

    let group_dimension = desc.dimension();
    let lie_dimension = desc.orbits.count();
    let witness = desc
        .orbits
        .orbits()
        .iter()
        .find(|o| !in_span(&tangent, orbit_row(o)))
        .map(|o| SeparabilityWitness {
            orbit_representative: o[0],
            labels: o.clone(),
        });
    let tangent_inside_lie = tangent.iter().all(|row| in_span(&lie, row.clone()));
    SeparabilityReport {
        group_dimension,
        lie_dimension,
        separable: group_dimension == lie_dimension,
        witness,
        tangent_inside_lie,
    }
}

/// The coset weight invariant of `v`: the sum, over the given orbit
/// representatives, of the coefficients of `v * z` for the generic solved
/// element `z`. Requires `v * z` to be constant on each listed orbit.
pub fn coset_weight_invariant(
    v: &UnipotentElement<SparsePoly>,
    desc: &CentralizerDescription,
    representatives: &[Label],
) -> Result<SparsePoly, CentError> {
    let z = desc.generic_element();
    let product = v.product(&z)?;
    let mut total = SparsePoly::zero();
    for &rep in representatives {
        let orbit_index = desc
            .orbits
            .orbit_index(rep)
            .ok_or(CentError::NotOrbitConstant(rep))?;
        let orbit = &desc.orbits.orbits()[orbit_index];
        let value = product
            .coeff(orbit[0])
            .cloned()
            .unwrap_or_else(SparsePoly::zero);
        for &l in orbit {
            let here = product.coeff(l).cloned().unwrap_or_else(SparsePoly::zero);
            if here != value {
                return Err(CentError::NotOrbitConstant(l));
            }
        }
        total = total.add(&value);
    }
    Ok(total)
}

/// Obstructions to membership of a concrete (or symbolic) element in the
/// solved family: eliminate the free parameters from `elem = generic
/// solved element` and return the surviving constraints on `elem`'s own
/// coefficients. Empty means `elem` lies in the family.
pub fn membership_obstructions(
    elem: &UnipotentElement<SparsePoly>,
    desc: &CentralizerDescription,
) -> Result<Vec<SparsePoly>, CentError> {
    let mut equations = Vec::new();
    for &l in desc.ctx.support() {
        let form = desc.form(l).cloned().unwrap_or_else(SparsePoly::zero);
        let coeff = elem.coeff(l).cloned().unwrap_or_else(SparsePoly::zero);
        equations.push(form.add(&coeff));
    }
    let system = ConstraintSystem::new(equations, desc.free.iter().cloned().collect());
    let solution = solve(&system)?;
    Ok(solution.residuals)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{CartanDatum, RootSystem};
    use crate::weyl::{word_to_permutation, WeylWord};

    fn p(s: &str) -> SparsePoly {
        SparsePoly::parse(s).unwrap()
    }

    fn v(s: &str) -> Var {
        Var::new(s).unwrap()
    }

    /// A3, radical = positives except a1, K = {s_{a1}} (labels: 1 = a3,
    /// 2 = a2, 4 = a2+a3, 5 = a1+a2, 6 = a1+a2+a3; s_{a1}: 2<->5, 4<->6).
    fn a3_setup() -> (Arc<RadicalContext>, Vec<RootPermutation>) {
        let system = Arc::new(RootSystem::generate(CartanDatum::type_a(3).unwrap()).unwrap());
        let ctx = RadicalContext::new(
            system.clone(),
            BTreeSet::from([1, 2, 4, 5, 6]),
            BTreeSet::from([0]),
        )
        .unwrap();
        let gens = vec![word_to_permutation(&system, &WeylWord::new(vec![0]))];
        (ctx, gens)
    }

    #[test]
    fn generic_element_has_one_variable_per_label() {
        let (ctx, _) = a3_setup();
        let g = GenericUnipotent::new(&ctx, "b");
        assert_eq!(g.element().coeff(2), Some(&p("b2")));
        assert_eq!(g.element().coeff(6), Some(&p("b6")));
        assert_eq!(g.var(4), Some(&v("b4")));
        assert_eq!(g.var(3), None, "label 3 is not in the support");
    }

    #[test]
    fn a3_centralizer_solves_to_orbit_constancy() {
        let (ctx, gens) = a3_setup();
        let desc = solve_centralizer(&gens, &ctx).unwrap();
        // Orbits {1}, {2,5}, {4,6}: the centralizer is cut out by
        // b5 = b2 and b6 = b4 with no commutator corrections, so the
        // dimension equals the orbit count and the action is separable.
        assert_eq!(desc.dimension(), 3);
        assert_eq!(desc.free_params(), &[v("b1"), v("b2"), v("b4")]);
        assert_eq!(desc.form(5), Some(&p("b2")));
        assert_eq!(desc.form(6), Some(&p("b4")));
        assert_eq!(desc.form(1), Some(&p("b1")));

        let report = separability(&desc);
        assert_eq!(report.group_dimension, 3);
        assert_eq!(report.lie_dimension, 3);
        assert!(report.separable);
        assert!(report.witness.is_none());
        assert!(report.tangent_inside_lie);
    }

    #[test]
    fn solved_family_members_really_centralize() {
        let (ctx, gens) = a3_setup();
        let desc = solve_centralizer(&gens, &ctx).unwrap();
        let f = Gf2m::gf4();
        let t = f.t();
        for bits1 in 0..4u32 {
            for bits2 in 0..4u32 {
                let asg = BTreeMap::from([
                    (v("b1"), f.element(bits1)),
                    (v("b2"), f.element(bits2)),
                    (v("b4"), t),
                ]);
                let u = desc.specialize(f, &asg).unwrap();
                for g in &gens {
                    assert_eq!(u.conjugate_by_perm(g).unwrap(), u);
                }
            }
        }
    }

    #[test]
    fn empty_generator_set_leaves_everything_free() {
        let (ctx, _) = a3_setup();
        let desc = solve_centralizer(&[], &ctx).unwrap();
        assert_eq!(desc.dimension(), 5);
        assert_eq!(desc.orbit_partition().count(), 5);
        assert!(separability(&desc).separable);
    }

    #[test]
    fn solver_pivots_choose_the_largest_variable() {
        // b1 + b8 + b15 + b29 = 0 solves as b29 := b1 + b8 + b15.
        let system = ConstraintSystem::new(
            vec![p("b1 + b8 + b15 + b29")],
            BTreeSet::from([v("b1"), v("b8"), v("b15"), v("b29")]),
        );
        let sol = solve(&system).unwrap();
        assert_eq!(sol.substitutions.get(&v("b29")), Some(&p("b1 + b8 + b15")));
        assert_eq!(sol.free, BTreeSet::from([v("b1"), v("b8"), v("b15")]));
        assert!(sol.residuals.is_empty());
    }

    #[test]
    fn solver_linearizes_perfect_squares() {
        // a^2 + b^2 + c^2 + d^2 = 0 over GF(2^m) iff a + b + c + d = 0.
        let system = ConstraintSystem::new(
            vec![p("a^2 + b^2 + c^2 + d^2")],
            BTreeSet::from([v("a"), v("b"), v("c"), v("d")]),
        );
        let sol = solve(&system).unwrap();
        assert_eq!(sol.substitutions.get(&v("d")), Some(&p("a + b + c")));
        assert_eq!(sol.free.len(), 3);
    }

    #[test]
    fn solver_reports_incomplete_on_stuck_nonlinear_equations() {
        let system = ConstraintSystem::new(vec![p("b1*b2")], BTreeSet::from([v("b1"), v("b2")]));
        assert_eq!(
            solve(&system).unwrap_err(),
            SolveError::Incomplete("b1*b2".to_string())
        );
    }

    #[test]
    fn solver_keeps_parameter_constraints_as_residuals() {
        // Unknown m; parameter a: m + a = 0 and m = 0 force a = 0.
        let system = ConstraintSystem::new(vec![p("m + a"), p("m")], BTreeSet::from([v("m")]));
        let sol = solve(&system).unwrap();
        assert_eq!(sol.residuals, vec![p("a")]);
    }

    #[test]
    fn solver_takes_square_roots_of_parameter_residuals() {
        // m + m (cancelling) with a^2 residual: the obstruction is a, not a^2.
        let system = ConstraintSystem::new(vec![p("a^2")], BTreeSet::from([v("m")]));
        let sol = solve(&system).unwrap();
        assert_eq!(sol.residuals, vec![p("a")]);
        assert_eq!(sol.free, BTreeSet::from([v("m")]));
    }

    #[test]
    fn coset_invariant_on_the_a3_family() {
        let (ctx, gens) = a3_setup();
        let desc = solve_centralizer(&gens, &ctx).unwrap();
        // v = e1(s): coefficient at the singleton orbit {1} becomes s + b1.
        let v_elem = UnipotentElement::root_element(ctx.clone(), 1, p("s")).unwrap();
        let invariant = coset_weight_invariant(&v_elem, &desc, &[1, 2]).unwrap();
        assert_eq!(invariant, p("s + b1 + b2"));
        // The identity coset has invariant b1 + b2.
        let id = UnipotentElement::identity(ctx);
        assert_eq!(
            coset_weight_invariant(&id, &desc, &[1, 2]).unwrap(),
            p("b1 + b2")
        );
    }

    #[test]
    fn membership_obstructions_on_the_a3_family() {
        let (ctx, gens) = a3_setup();
        let desc = solve_centralizer(&gens, &ctx).unwrap();
        // e2(x) e5(y) is in the family iff x = y.
        let elem =
            UnipotentElement::from_factors(ctx.clone(), &[(2, p("x")), (5, p("y"))]).unwrap();
        let obstructions = membership_obstructions(&elem, &desc).unwrap();
        assert_eq!(obstructions, vec![p("x + y")]);
        // A genuine member has no obstructions.
        let member =
            UnipotentElement::from_factors(ctx, &[(2, p("x")), (5, p("x")), (1, p("w"))]).unwrap();
        assert!(membership_obstructions(&member, &desc).unwrap().is_empty());
    }

    #[test]
    fn rename_rewrites_forms_and_parameters() {
        let (ctx, gens) = a3_setup();
        let desc = solve_centralizer(&gens, &ctx).unwrap();
        let renamed = desc.rename(&BTreeMap::from([(v("b1"), v("r")), (v("b2"), v("s"))]));
        assert_eq!(renamed.free_params(), &[v("b4"), v("r"), v("s")]);
        assert_eq!(renamed.form(5), Some(&p("s")));
        assert_eq!(renamed.parameter_label(&v("r")), Some(1));
    }
}
