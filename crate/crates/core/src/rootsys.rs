//! Simply-laced root systems, generated exactly from a Cartan matrix.
//!
//! Roots are integer coordinate vectors over the simple roots. The positive
//! roots get two namings that are kept strictly separate:
//!
//! * the *canonical order* — sorted by (height, coordinates lexicographic) —
//!   which is an artifact of generation and stable across runs;
//! * an optional *labeling*, a bijection `1..=N -> positive roots` supplied
//!   from outside (for E7, the bundled 63-row table). All user-facing label
//!   arithmetic goes through the labeling; nothing downstream depends on
//!   the canonical order.
//!
//! Negative roots are addressed by negated labels: `-l` is the negative of
//! the positive root labeled `l`.

use std::collections::HashMap;
use std::fmt;
use thiserror::Error;

/// 1-based label of a positive root.
pub type Label = u32;
/// `+l` labels a positive root, `-l` its negative. Zero is never valid.
pub type SignedLabel = i32;

/// Hard cap on closure size; matrices whose reflection closure exceeds this
/// are reported as non-finite rather than looping.
pub const MAX_ROOTS: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootSysError {
    #[error("not a simply-laced Cartan matrix: {0}")]
    NonSimplyLaced(String),
    #[error("root closure exceeded {0} roots; the Cartan matrix is not of finite type")]
    NonFinite(usize),
    #[error("labeling table rejected: {0}")]
    LabelMismatch(String),
    #[error("unknown root {0}")]
    UnknownRoot(String),
}

/// A validated simply-laced Cartan matrix with display names for the
/// simple roots. Coordinates of every root in this system are indexed in
/// the order of `names`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanDatum {
    names: Vec<String>,
    matrix: Vec<Vec<i64>>,
}

impl CartanDatum {
    #[allow(clippy::needless_range_loop)] // (i, j) indexing matches the a_ij matrix-entry checks
    pub fn new(names: Vec<String>, matrix: Vec<Vec<i64>>) -> Result<Self, RootSysError> {
        let n = names.len();
        if n == 0 {
            return Err(RootSysError::NonSimplyLaced("empty rank".to_string()));
        }
        {
            let mut sorted = names.clone();
            sorted.sort();
            sorted.dedup();
            if sorted.len() != n {
                return Err(RootSysError::NonSimplyLaced(
                    "simple root names must be distinct".to_string(),
                ));
            }
        }
        if matrix.len() != n || matrix.iter().any(|row| row.len() != n) {
            return Err(RootSysError::NonSimplyLaced(format!(
                "matrix must be {n}x{n} to match the {n} simple roots"
            )));
        }
        for i in 0..n {
            if matrix[i][i] != 2 {
                return Err(RootSysError::NonSimplyLaced(format!(
                    "diagonal entry ({i},{i}) is {}, expected 2",
                    matrix[i][i]
                )));
            }
            for j in 0..n {
                if i != j {
                    if !(matrix[i][j] == 0 || matrix[i][j] == -1) {
                        return Err(RootSysError::NonSimplyLaced(format!(
                            "off-diagonal entry ({i},{j}) is {}, expected 0 or -1",
                            matrix[i][j]
                        )));
                    }
                    if matrix[i][j] != matrix[j][i] {
                        return Err(RootSysError::NonSimplyLaced(format!(
                            "matrix is not symmetric at ({i},{j})"
                        )));
                    }
                }
            }
        }
        Ok(CartanDatum { names, matrix })
    }

    /// Build from a Dynkin-diagram edge list (nodes named, edges unlabeled —
    /// simply-laced diagrams have only single bonds).
    pub fn from_edges(names: &[&str], edges: &[(usize, usize)]) -> Result<Self, RootSysError> {
        let n = names.len();
        let mut matrix = vec![vec![0i64; n]; n];
        for (i, row) in matrix.iter_mut().enumerate() {
            row[i] = 2;
        }
        for &(i, j) in edges {
            if i >= n || j >= n || i == j {
                return Err(RootSysError::NonSimplyLaced(format!(
                    "edge ({i},{j}) out of range for rank {n}"
                )));
            }
            matrix[i][j] = -1;
            matrix[j][i] = -1;
        }
        CartanDatum::new(names.iter().map(|s| s.to_string()).collect(), matrix)
    }

    fn numbered_names(prefix: &str, n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("{prefix}{i}")).collect()
    }

    /// Type A_n: a chain of n nodes.
    pub fn type_a(n: usize) -> Result<Self, RootSysError> {
        let names = Self::numbered_names("a", n);
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let edges: Vec<(usize, usize)> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
        CartanDatum::from_edges(&refs, &edges)
    }

    /// Type D_n (n >= 4): a chain of n-1 nodes with the last node attached
    /// to the antepenultimate chain node.
    pub fn type_d(n: usize) -> Result<Self, RootSysError> {
        if n < 4 {
            return Err(RootSysError::NonSimplyLaced(format!(
                "D_{n} requires n >= 4"
            )));
        }
        let names = Self::numbered_names("d", n);
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let mut edges: Vec<(usize, usize)> = (0..n - 2).map(|i| (i, i + 1)).collect();
        edges.push((n - 3, n - 1));
        CartanDatum::from_edges(&refs, &edges)
    }

    /// Type E_n for n in {6, 7, 8}: a chain of n-1 nodes with one extra node
    /// attached to the third chain node.
    pub fn type_e(n: usize) -> Result<Self, RootSysError> {
        if !(6..=8).contains(&n) {
            return Err(RootSysError::NonSimplyLaced(format!(
                "E_{n} requires n in 6..=8"
            )));
        }
        let names = Self::numbered_names("e", n);
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let mut edges: Vec<(usize, usize)> = (0..n - 2).map(|i| (i, i + 1)).collect();
        edges.push((2, n - 1));
        CartanDatum::from_edges(&refs, &edges)
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    /// The i-th simple root as a coordinate vector.
    pub fn simple_root(&self, i: usize) -> Root {
        let mut coords = vec![0i64; self.rank()];
        coords[i] = 1;
        Root(coords)
    }
}

/// A root (or any integer vector in the root lattice), in simple-root
/// coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root(Vec<i64>);

impl Root {
    pub fn new(coords: Vec<i64>) -> Self {
        Root(coords)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    /// Sum of coordinates.
    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0) && self.0.iter().any(|&c| c > 0)
    }

    pub fn is_negative(&self) -> bool {
        self.0.iter().all(|&c| c <= 0) && self.0.iter().any(|&c| c < 0)
    }

    pub fn negated(&self) -> Root {
        Root(self.0.iter().map(|&c| -c).collect())
    }

    pub fn plus(&self, other: &Root) -> Root {
        Root(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Debug for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({})",
            self.0
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

/// Outcome of checking a supplied labeling table against the generated
/// positive system. `ok` means the table is exactly a bijection onto the
/// generated positive roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub expected_count: usize,
    pub supplied_count: usize,
    pub matched: usize,
    /// Labels in 1..=expected_count that the table never assigns.
    pub missing_labels: Vec<Label>,
    /// Rows whose coordinate vector is not a generated positive root.
    pub unknown_rows: Vec<(Label, Vec<i64>)>,
    /// Labels assigned to more than one row.
    pub duplicate_labels: Vec<Label>,
    /// Labels whose coordinates duplicate an earlier row.
    pub duplicate_coords: Vec<Label>,
    /// Labels outside 1..=expected_count.
    pub out_of_range: Vec<Label>,
    pub ok: bool,
}

impl ValidationReport {
    pub fn summary(&self) -> String {
        if self.ok {
            format!(
                "{} labeled roots match the generated system exactly",
                self.matched
            )
        } else {
            format!(
                "expected {} roots, got {} rows ({} matched, {} missing, {} unknown, \
                 {} duplicate labels, {} duplicate coords, {} out of range)",
                self.expected_count,
                self.supplied_count,
                self.matched,
                self.missing_labels.len(),
                self.unknown_rows.len(),
                self.duplicate_labels.len(),
                self.duplicate_coords.len(),
                self.out_of_range.len(),
            )
        }
    }
}

/// A generated simply-laced root system with a labeling of its positive
/// roots.
#[derive(Clone, Debug)]
pub struct RootSystem {
    datum: CartanDatum,
    /// Positive roots in canonical (height, lex) order.
    positives: Vec<Root>,
    index_by_coords: HashMap<Vec<i64>, usize>,
    /// label -> canonical index (entry 0 unused).
    label_to_index: Vec<usize>,
    /// canonical index -> label.
    index_to_label: Vec<Label>,
}

impl RootSystem {
    /// Generate all roots by reflection closure of the simple roots and
    /// label the positive roots 1..=N in canonical order.
    pub fn generate(datum: CartanDatum) -> Result<Self, RootSysError> {
        let rank = datum.rank();
        let mut seen: HashMap<Vec<i64>, ()> = HashMap::new();
        let mut queue: Vec<Root> = Vec::new();
        for i in 0..rank {
            let r = datum.simple_root(i);
            seen.insert(r.coords().to_vec(), ());
            queue.push(r);
        }
        let mut head = 0;
        while head < queue.len() {
            let current = queue[head].clone();
            head += 1;
            for i in 0..rank {
                let image = reflect_in(&datum, &current, &datum.simple_root(i));
                if !seen.contains_key(image.coords()) {
                    seen.insert(image.coords().to_vec(), ());
                    queue.push(image);
                }
                if seen.len() > 2 * MAX_ROOTS {
                    return Err(RootSysError::NonFinite(MAX_ROOTS));
                }
            }
        }
        let mut positives: Vec<Root> = queue.iter().filter(|r| r.is_positive()).cloned().collect();
        debug_assert!(
            queue.iter().all(|r| r.is_positive() || r.is_negative()),
            "every root has a definite sign"
        );
        positives.sort_by(|a, b| {
            a.height()
                .cmp(&b.height())
                .then_with(|| a.coords().cmp(b.coords()))
        });
        let index_by_coords: HashMap<Vec<i64>, usize> = positives
            .iter()
            .enumerate()
            .map(|(i, r)| (r.coords().to_vec(), i))
            .collect();
        let n = positives.len();
        Ok(RootSystem {
            datum,
            positives,
            index_by_coords,
            label_to_index: (0..=n).map(|l| l.saturating_sub(1)).collect(),
            index_to_label: (1..=n as Label).collect(),
        })
    }

    /// Check a labeling table against this system without installing it.
    pub fn validate_labeling(&self, table: &[(Label, Vec<i64>)]) -> ValidationReport {
        let n = self.positives.len();
        let mut seen_labels: HashMap<Label, usize> = HashMap::new();
        let mut seen_indices: HashMap<usize, Label> = HashMap::new();
        let mut report = ValidationReport {
            expected_count: n,
            supplied_count: table.len(),
            matched: 0,
            missing_labels: Vec::new(),
            unknown_rows: Vec::new(),
            duplicate_labels: Vec::new(),
            duplicate_coords: Vec::new(),
            out_of_range: Vec::new(),
            ok: false,
        };
        for (label, coords) in table {
            if *label == 0 || *label as usize > n {
                report.out_of_range.push(*label);
                continue;
            }
            if seen_labels.contains_key(label) {
                report.duplicate_labels.push(*label);
                continue;
            }
            match self.index_by_coords.get(coords) {
                None => report.unknown_rows.push((*label, coords.clone())),
                Some(&idx) => {
                    if let Some(&prev) = seen_indices.get(&idx) {
                        report.duplicate_coords.push(*label);
                        let _ = prev;
                    } else {
                        seen_labels.insert(*label, idx);
                        seen_indices.insert(idx, *label);
                        report.matched += 1;
                    }
                }
            }
        }
        for l in 1..=n as Label {
            if !seen_labels.contains_key(&l) {
                report.missing_labels.push(l);
            }
        }
        report.ok = report.matched == n
            && report.supplied_count == n
            && report.missing_labels.is_empty()
            && report.unknown_rows.is_empty()
            && report.duplicate_labels.is_empty()
            && report.duplicate_coords.is_empty()
            && report.out_of_range.is_empty();
        report
    }

    /// Generate and install an external labeling; the table must be a
    /// bijection from 1..=N onto the generated positive roots.
    pub fn with_labels(
        datum: CartanDatum,
        table: &[(Label, Vec<i64>)],
    ) -> Result<Self, RootSysError> {
        let mut system = RootSystem::generate(datum)?;
        let report = system.validate_labeling(table);
        if !report.ok {
            return Err(RootSysError::LabelMismatch(report.summary()));
        }
        let n = system.positives.len();
        let mut label_to_index = vec![0usize; n + 1];
        let mut index_to_label = vec![0 as Label; n];
        for (label, coords) in table {
            let idx = system.index_by_coords[coords];
            label_to_index[*label as usize] = idx;
            index_to_label[idx] = *label;
        }
        system.label_to_index = label_to_index;
        system.index_to_label = index_to_label;
        Ok(system)
    }

    pub fn datum(&self) -> &CartanDatum {
        &self.datum
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    /// Number of positive roots.
    pub fn count_positive(&self) -> usize {
        self.positives.len()
    }

    pub fn positive_labels(&self) -> impl Iterator<Item = Label> {
        1..=self.positives.len() as Label
    }

    /// The root for a signed label (`-l` is the negated positive root `l`).
    pub fn root(&self, label: SignedLabel) -> Result<Root, RootSysError> {
        let l = label.unsigned_abs() as usize;
        if label == 0 || l > self.positives.len() {
            return Err(RootSysError::UnknownRoot(format!("label {label}")));
        }
        let r = self.positives[self.label_to_index[l]].clone();
        Ok(if label < 0 { r.negated() } else { r })
    }

    /// The signed label of a root vector, if it is a root of this system.
    pub fn label_of(&self, root: &Root) -> Option<SignedLabel> {
        if let Some(&idx) = self.index_by_coords.get(root.coords()) {
            return Some(self.index_to_label[idx] as SignedLabel);
        }
        let neg = root.negated();
        self.index_by_coords
            .get(neg.coords())
            .map(|&idx| -(self.index_to_label[idx] as SignedLabel))
    }

    /// `<zeta, xi_check>`: in a simply-laced system all roots have the same
    /// length, so the pairing is the symmetric bilinear form given by the
    /// Cartan matrix.
    pub fn pairing(&self, zeta: &Root, xi: &Root) -> i64 {
        pairing_in(&self.datum, zeta, xi)
    }

    /// Reflection of `zeta` in the hyperplane of `xi`.
    pub fn reflect(&self, zeta: &Root, xi: &Root) -> Root {
        reflect_in(&self.datum, zeta, xi)
    }

    /// Label arithmetic: the label of the sum of two positive roots, if the
    /// sum is again a root.
    pub fn add_labels(&self, a: Label, b: Label) -> Option<Label> {
        let ra = self.root(a as SignedLabel).ok()?;
        let rb = self.root(b as SignedLabel).ok()?;
        let sum = ra.plus(&rb);
        self.index_by_coords
            .get(sum.coords())
            .map(|&idx| self.index_to_label[idx])
    }

    pub fn height_of(&self, label: Label) -> Result<i64, RootSysError> {
        Ok(self.root(label as SignedLabel)?.height())
    }

    /// Render a root as a sum of named simple roots, e.g. `a1 + 2*a2`.
    pub fn root_string(&self, root: &Root) -> String {
        let mut parts = Vec::new();
        for (i, &c) in root.coords().iter().enumerate() {
            match c {
                0 => {}
                1 => parts.push(self.datum.names()[i].clone()),
                -1 => parts.push(format!("-{}", self.datum.names()[i])),
                c => parts.push(format!("{c}*{}", self.datum.names()[i])),
            }
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

fn pairing_in(datum: &CartanDatum, zeta: &Root, xi: &Root) -> i64 {
    let a = datum.matrix();
    let mut total = 0;
    for (i, &zi) in zeta.coords().iter().enumerate() {
        if zi == 0 {
            continue;
        }
        for (j, &xj) in xi.coords().iter().enumerate() {
            total += zi * a[i][j] * xj;
        }
    }
    total
}

fn reflect_in(datum: &CartanDatum, zeta: &Root, xi: &Root) -> Root {
    let c = pairing_in(datum, zeta, xi);
    let coords = zeta
        .coords()
        .iter()
        .zip(xi.coords())
        .map(|(&z, &x)| z - c * x)
        .collect();
    Root::new(coords)
}
