//! Matrix representations over GF(2^m): permutation modules, submodule
//! spinning, and complete-reducibility decisions with certificates.
//!
//! Vectors are rows and act on the right (`v * M`), so a submodule is a
//! row space closed under all generators. Characteristic 2 means
//! Maschke's theorem is unavailable for groups of even order; instead,
//! invariant complements are found (or refuted) by solving for an
//! equivariant projection, and irreducibility is certified by exhaustive
//! spinning when the vector count is small enough to enumerate.

use crate::coeffring::{FieldElem, FieldError, Gf2m};
use std::fmt;
use thiserror::Error;

/// Spin-enumeration ceiling: exhaustive irreducibility certificates are
/// attempted only when the module has at most this many vectors.
pub const DEFAULT_SPIN_BOUND: u64 = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModRepError {
    #[error("matrix dimensions do not match: {0}x{1} vs {2}x{3}")]
    DimensionMismatch(usize, usize, usize, usize),
    #[error("row {0} has length {1}, expected {2}")]
    RaggedRow(usize, usize, usize),
    #[error("generator {0} is not invertible")]
    NotInvertible(usize),
    #[error("images {0:?} are not a permutation")]
    NotAPermutation(Vec<usize>),
    #[error("vector length {0} does not match module dimension {1}")]
    WrongVectorLength(usize, usize),
    #[error("row space is not invariant: image of a basis vector leaves it")]
    NotInvariant,
    #[error("no invariant complement exists for a submodule of dimension {submodule_dim}")]
    NoInvariantComplement { submodule_dim: usize },
    #[error("cannot certify irreducibility: {vector_count} vectors exceed the spin bound {bound}")]
    IrreducibilityUndecided { vector_count: u128, bound: u64 },
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Dense matrix over GF(2^m), row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    field: Gf2m,
    rows: usize,
    cols: usize,
    data: Vec<FieldElem>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "Mat {}x{} over GF({})",
            self.rows,
            self.cols,
            self.field.order()
        )?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Mat {
    pub fn zeros(field: Gf2m, rows: usize, cols: usize) -> Self {
        Mat {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Gf2m, n: usize) -> Self {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: Gf2m, rows: Vec<Vec<FieldElem>>) -> Result<Self, ModRepError> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(ModRepError::RaggedRow(i, row.len(), cols));
            }
            for &e in row {
                e.checked_add(field.zero())?; // ring check
                data.push(e);
            }
        }
        Ok(Mat {
            field,
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn field(&self) -> Gf2m {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> FieldElem {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FieldElem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn add(&self, other: &Mat) -> Result<Mat, ModRepError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(ModRepError::DimensionMismatch(
                self.rows, self.cols, other.rows, other.cols,
            ));
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a = a.add(*b);
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Mat) -> Result<Mat, ModRepError> {
        if self.cols != other.rows {
            return Err(ModRepError::DimensionMismatch(
                self.rows, self.cols, other.rows, other.cols,
            ));
        }
        let mut out = Mat::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j).add(a.mul(other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Row `v * self` for a row vector `v`.
    pub fn act(&self, v: &[FieldElem]) -> Result<Vec<FieldElem>, ModRepError> {
        if v.len() != self.rows {
            return Err(ModRepError::WrongVectorLength(v.len(), self.rows));
        }
        let mut out = vec![self.field.zero(); self.cols];
        for (i, &c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = o.add(c.mul(self.get(i, j)));
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form with its pivot columns. Zero rows are
    /// dropped, so the result is a canonical basis of the row space.
    #[allow(clippy::needless_range_loop)] // row operations read one row while writing another
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut rows: Vec<Vec<FieldElem>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            let inv = rows[r][c].inv().expect("pivot is nonzero");
            for e in rows[r].iter_mut() {
                *e = e.mul(inv);
            }
            for i in 0..rows.len() {
                if i != r && !rows[i][c].is_zero() {
                    let f = rows[i][c];
                    for j in 0..self.cols {
                        let v = rows[i][j].add(f.mul(rows[r][j]));
                        rows[i][j] = v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        rows.truncate(r);
        let mat = Mat::from_rows(self.field, rows).expect("echelon rows are rectangular");
        (mat, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().0.rows
    }

    /// Basis (as rows) of `{v : v * self = 0}`.
    #[allow(clippy::needless_range_loop)] // row operations read one row while writing another
    pub fn left_kernel(&self) -> Mat {
        // Row-reduce the transpose-free way: kernel of v*M is the kernel
        // of M^T acting on columns; augment with an identity to track the
        // combinations.
        let n = self.rows;
        let mut work: Vec<Vec<FieldElem>> = (0..n)
            .map(|i| {
                let mut row = self.row(i).to_vec();
                let mut tag = vec![self.field.zero(); n];
                tag[i] = self.field.one();
                row.extend(tag);
                row
            })
            .collect();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(p) = (r..n).find(|&i| !work[i][c].is_zero()) else {
                continue;
            };
            work.swap(r, p);
            let inv = work[r][c].inv().expect("pivot is nonzero");
            for e in work[r].iter_mut() {
                *e = e.mul(inv);
            }
            for i in 0..n {
                if i != r && !work[i][c].is_zero() {
                    let f = work[i][c];
                    for j in 0..self.cols + n {
                        let v = work[i][j].add(f.mul(work[r][j]));
                        work[i][j] = v;
                    }
                }
            }
            r += 1;
            if r == n {
                break;
            }
        }
        let kernel_rows: Vec<Vec<FieldElem>> = work[r..]
            .iter()
            .map(|row| row[self.cols..].to_vec())
            .collect();
        let raw = Mat::from_rows(self.field, kernel_rows).expect("rectangular");
        raw.rref().0
    }

    #[allow(clippy::needless_range_loop)] // row operations read one row while writing another
    pub fn inverse(&self) -> Option<Mat> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut work: Vec<Vec<FieldElem>> = (0..n)
            .map(|i| {
                let mut row = self.row(i).to_vec();
                let mut tag = vec![self.field.zero(); n];
                tag[i] = self.field.one();
                row.extend(tag);
                row
            })
            .collect();
        for c in 0..n {
            let p = (c..n).find(|&i| !work[i][c].is_zero())?;
            work.swap(c, p);
            let inv = work[c][c].inv().expect("pivot is nonzero");
            for e in work[c].iter_mut() {
                *e = e.mul(inv);
            }
            for i in 0..n {
                if i != c && !work[i][c].is_zero() {
                    let f = work[i][c];
                    for j in 0..2 * n {
                        let v = work[i][j].add(f.mul(work[c][j]));
                        work[i][j] = v;
                    }
                }
            }
        }
        let rows: Vec<Vec<FieldElem>> = work.into_iter().map(|row| row[n..].to_vec()).collect();
        Some(Mat::from_rows(self.field, rows).expect("rectangular"))
    }
}

/// Coordinates of `v` in an RREF basis, or `None` if `v` is outside the
/// row space.
pub fn express(basis: &Mat, pivots: &[usize], v: &[FieldElem]) -> Option<Vec<FieldElem>> {
    let mut rem = v.to_vec();
    let mut coords = vec![basis.field.zero(); basis.rows];
    for (r, &pc) in pivots.iter().enumerate() {
        let c = rem[pc];
        if c.is_zero() {
            continue;
        }
        coords[r] = c;
        for (j, e) in rem.iter_mut().enumerate() {
            *e = e.add(c.mul(basis.get(r, j)));
        }
    }
    rem.iter().all(|e| e.is_zero()).then_some(coords)
}

/// Solve `A x = b` over the field; any solution (free variables set to 0),
/// or `None` if inconsistent. `A` is given by rows.
#[allow(clippy::needless_range_loop)] // row operations read one row while writing another
fn solve_linear(field: Gf2m, a_rows: &[Vec<FieldElem>], b: &[FieldElem]) -> Option<Vec<FieldElem>> {
    let ncols = a_rows.first().map_or(0, |r| r.len());
    let mut work: Vec<Vec<FieldElem>> = a_rows
        .iter()
        .zip(b)
        .map(|(row, &rhs)| {
            let mut r = row.clone();
            r.push(rhs);
            r
        })
        .collect();
    let m = work.len();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m).find(|&i| !work[i][c].is_zero()) else {
            continue;
        };
        work.swap(r, p);
        let inv = work[r][c].inv().expect("pivot is nonzero");
        for e in work[r].iter_mut() {
            *e = e.mul(inv);
        }
        for i in 0..m {
            if i != r && !work[i][c].is_zero() {
                let f = work[i][c];
                for j in 0..=ncols {
                    let v = work[i][j].add(f.mul(work[r][j]));
                    work[i][j] = v;
                }
            }
        }
        pivots.push((r, c));
        r += 1;
        if r == m {
            break;
        }
    }
    // Inconsistent if a zero row has nonzero right-hand side.
    for row in &work[r..] {
        if !row[ncols].is_zero() {
            return None;
        }
    }
    let mut x = vec![field.zero(); ncols];
    for &(row, col) in &pivots {
        x[col] = work[row][ncols];
    }
    Some(x)
}

/// A matrix representation: one invertible matrix per generator, all of
/// the same square dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatRep {
    field: Gf2m,
    dim: usize,
    gens: Vec<Mat>,
}

impl MatRep {
    pub fn new(field: Gf2m, gens: Vec<Mat>) -> Result<Self, ModRepError> {
        let dim = gens.first().map_or(0, |g| g.rows);
        for (i, g) in gens.iter().enumerate() {
            if g.rows != dim || g.cols != dim {
                return Err(ModRepError::DimensionMismatch(g.rows, g.cols, dim, dim));
            }
            if g.inverse().is_none() {
                return Err(ModRepError::NotInvertible(i));
            }
        }
        Ok(MatRep { field, dim, gens })
    }

    pub fn field(&self) -> Gf2m {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gens(&self) -> &[Mat] {
        &self.gens
    }
}

/// The permutation module: generator `p` maps basis vector `e_i` to
/// `e_{p[i]}`.
pub fn permutation_module(field: Gf2m, perms: &[Vec<usize>]) -> Result<MatRep, ModRepError> {
    let n = perms.first().map_or(0, |p| p.len());
    let mut gens = Vec::new();
    for p in perms {
        let mut seen = vec![false; n];
        if p.len() != n || p.iter().any(|&i| i >= n) {
            return Err(ModRepError::NotAPermutation(p.clone()));
        }
        for &i in p {
            if seen[i] {
                return Err(ModRepError::NotAPermutation(p.clone()));
            }
            seen[i] = true;
        }
        let mut m = Mat::zeros(field, n, n);
        for (i, &j) in p.iter().enumerate() {
            m.set(i, j, field.one());
        }
        gens.push(m);
    }
    MatRep::new(field, gens)
}

/// Smallest submodule containing the seed vectors: closure under all
/// generators, returned as an RREF basis.
pub fn spin(rep: &MatRep, seeds: &[Vec<FieldElem>]) -> Result<Mat, ModRepError> {
    for s in seeds {
        if s.len() != rep.dim {
            return Err(ModRepError::WrongVectorLength(s.len(), rep.dim));
        }
    }
    let raw = Mat::from_rows(rep.field, seeds.to_vec())?;
    let (mut basis, mut pivots) = raw.rref();
    loop {
        let mut grew = false;
        'outer: for r in 0..basis.rows {
            for g in &rep.gens {
                let image = g.act(basis.row(r))?;
                if express(&basis, &pivots, &image).is_none() {
                    let mut rows: Vec<Vec<FieldElem>> =
                        (0..basis.rows).map(|i| basis.row(i).to_vec()).collect();
                    rows.push(image);
                    let next = Mat::from_rows(rep.field, rows)?.rref();
                    basis = next.0;
                    pivots = next.1;
                    grew = true;
                    break 'outer;
                }
            }
        }
        if !grew {
            return Ok(basis);
        }
    }
}

/// The common fixed space of all generators, as an RREF basis.
pub fn fixed_space(rep: &MatRep) -> Mat {
    // Stack (g - I) side by side: v fixed iff v * (g - I) = 0 for all g.
    let n = rep.dim;
    let mut wide = Mat::zeros(rep.field, n, n * rep.gens.len().max(1));
    if rep.gens.is_empty() {
        return Mat::identity(rep.field, n).rref().0;
    }
    for (k, g) in rep.gens.iter().enumerate() {
        let diff = g.add(&Mat::identity(rep.field, n)).expect("same dims");
        for i in 0..n {
            for j in 0..n {
                wide.set(i, k * n + j, diff.get(i, j));
            }
        }
    }
    wide.left_kernel()
}

/// The representation restricted to an invariant row space, in the
/// coordinates of the given RREF basis.
pub fn restrict(rep: &MatRep, basis: &Mat) -> Result<MatRep, ModRepError> {
    let (basis, pivots) = basis.rref();
    let mut gens = Vec::new();
    for g in &rep.gens {
        let mut rows = Vec::new();
        for r in 0..basis.rows {
            let image = g.act(basis.row(r))?;
            let coords = express(&basis, &pivots, &image).ok_or(ModRepError::NotInvariant)?;
            rows.push(coords);
        }
        gens.push(Mat::from_rows(rep.field, rows)?);
    }
    MatRep::new(rep.field, gens)
}

/// A proper nonzero submodule, if one can be found: via the fixed space,
/// via eigen-kernel spins, or by exhaustive spinning of every vector when
/// the space is small enough. `Ok(None)` certifies irreducibility.
pub fn find_proper_submodule(rep: &MatRep, bound: u64) -> Result<Option<Mat>, ModRepError> {
    let n = rep.dim;
    if n <= 1 {
        return Ok(None);
    }
    let fixed = fixed_space(rep);
    if fixed.rows == n {
        // Trivial action: any single vector spans a submodule.
        let mut e1 = Mat::zeros(rep.field, 1, n);
        e1.set(0, 0, rep.field.one());
        return Ok(Some(e1));
    }
    if fixed.rows > 0 {
        return Ok(Some(fixed));
    }
    for g in &rep.gens {
        for c in rep.field.elements() {
            if c.is_zero() {
                continue;
            }
            let mut shifted = g.clone();
            for i in 0..n {
                shifted.set(i, i, shifted.get(i, i).add(c));
            }
            let kernel = shifted.left_kernel();
            for r in 0..kernel.rows {
                let w = spin(rep, &[kernel.row(r).to_vec()])?;
                if w.rows > 0 && w.rows < n {
                    return Ok(Some(w));
                }
            }
        }
    }
    let vector_count = (rep.field.order() as u128).pow(n as u32);
    if vector_count > bound as u128 {
        return Err(ModRepError::IrreducibilityUndecided {
            vector_count,
            bound,
        });
    }
    let elements: Vec<FieldElem> = rep.field.elements().collect();
    let mut digits = vec![0usize; n];
    loop {
        // Advance the odometer first so the all-zero vector is skipped.
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok(None);
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < elements.len() {
                break;
            }
            digits[pos] = 0;
        }
        let v: Vec<FieldElem> = digits.iter().map(|&d| elements[d]).collect();
        let w = spin(rep, &[v])?;
        if w.rows < n {
            return Ok(Some(w));
        }
    }
}

/// An invariant complement to the invariant row space `w`, or `None` when
/// no equivariant projection onto `w` exists (and hence no complement).
pub fn complement(rep: &MatRep, w: &Mat) -> Result<Option<Mat>, ModRepError> {
    let n = rep.dim;
    let (wb, _) = w.rref();
    let k = wb.rows;
    if k == 0 || k == n {
        return Ok(Some(if k == 0 {
            Mat::identity(rep.field, n).rref().0
        } else {
            Mat::zeros(rep.field, 0, n)
        }));
    }
    // Projection ansatz P = Y * W with Y an n x k unknown matrix:
    // image inside the row space by construction. Conditions:
    //   (i)  P G = G P for every generator G,
    //   (ii) W P = W (the projection fixes w pointwise).
    let unknowns = n * k;
    let zero = rep.field.zero();
    let mut a_rows: Vec<Vec<FieldElem>> = Vec::new();
    let mut b: Vec<FieldElem> = Vec::new();
    // (i): (Y W) G - G (Y W) = 0, entry (i, j):
    //   sum_s Y[i,s] (W G)[s,j] + sum_r G[i,r] Y[r,s] W[s,j] = 0.
    for g in &rep.gens {
        let wg = wb.mul(g)?;
        for i in 0..n {
            for j in 0..n {
                let mut row = vec![zero; unknowns];
                for s in 0..k {
                    let idx = i * k + s;
                    row[idx] = row[idx].add(wg.get(s, j));
                }
                for r in 0..n {
                    let gi = g.get(i, r);
                    if gi.is_zero() {
                        continue;
                    }
                    for s in 0..k {
                        let idx = r * k + s;
                        row[idx] = row[idx].add(gi.mul(wb.get(s, j)));
                    }
                }
                if row.iter().any(|e| !e.is_zero()) {
                    a_rows.push(row);
                    b.push(zero);
                }
            }
        }
    }
    // (ii): W Y W = W, entry (r, j): sum_{i,s} W[r,i] Y[i,s] W[s,j] = W[r,j].
    for r in 0..k {
        for j in 0..n {
            let mut row = vec![zero; unknowns];
            for i in 0..n {
                let wri = wb.get(r, i);
                if wri.is_zero() {
                    continue;
                }
                for s in 0..k {
                    let idx = i * k + s;
                    row[idx] = row[idx].add(wri.mul(wb.get(s, j)));
                }
            }
            a_rows.push(row);
            b.push(wb.get(r, j));
        }
    }
    let Some(y_flat) = solve_linear(rep.field, &a_rows, &b) else {
        return Ok(None);
    };
    let mut y = Mat::zeros(rep.field, n, k);
    for i in 0..n {
        for s in 0..k {
            y.set(i, s, y_flat[i * k + s]);
        }
    }
    let projection = y.mul(&wb)?;
    let c = projection.left_kernel();
    debug_assert_eq!(c.rows, n - k);
    Ok(Some(c))
}

/// One direct summand: an invariant row space (RREF basis in ambient
/// coordinates) together with the restricted action.
#[derive(Clone, Debug)]
pub struct Summand {
    pub basis: Mat,
    pub rep: MatRep,
}

impl Summand {
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }
}

/// Decompose into irreducible direct summands, or fail with
/// [`ModRepError::NoInvariantComplement`] when some invariant subspace is
/// not a direct summand (the module is then not completely reducible).
pub fn decompose(rep: &MatRep, bound: u64) -> Result<Vec<Summand>, ModRepError> {
    if rep.dim == 0 {
        return Ok(Vec::new());
    }
    let Some(w) = find_proper_submodule(rep, bound)? else {
        return Ok(vec![Summand {
            basis: Mat::identity(rep.field, rep.dim).rref().0,
            rep: rep.clone(),
        }]);
    };
    let (w, _) = w.rref();
    let c = complement(rep, &w)?.ok_or(ModRepError::NoInvariantComplement {
        submodule_dim: w.rows(),
    })?;
    let mut summands = Vec::new();
    for part in [w, c] {
        let sub = restrict(rep, &part)?;
        for s in decompose(&sub, bound)? {
            // Lift the summand basis through the part's ambient basis.
            let ambient = s.basis.mul(&part)?.rref().0;
            let lifted_rep = restrict(rep, &ambient)?;
            summands.push(Summand {
                basis: ambient,
                rep: lifted_rep,
            });
        }
    }
    summands.sort_by(|a, b| {
        a.dim().cmp(&b.dim()).then_with(|| {
            let key = |m: &Mat| -> Vec<u32> {
                (0..m.rows())
                    .flat_map(|i| m.row(i).iter().map(|e| e.bits()))
                    .collect()
            };
            key(&a.basis).cmp(&key(&b.basis))
        })
    });
    Ok(summands)
}

/// Outcome of the complete-reducibility decision.
#[derive(Clone, Debug)]
pub struct ReducibilityReport {
    pub completely_reducible: bool,
    /// Dimensions of the irreducible summands (when completely reducible).
    pub summand_dims: Vec<usize>,
    pub summands: Vec<Summand>,
    /// Dimension of an invariant subspace with no invariant complement
    /// (when not completely reducible).
    pub obstruction_dim: Option<usize>,
}

pub fn is_completely_reducible(
    rep: &MatRep,
    bound: u64,
) -> Result<ReducibilityReport, ModRepError> {
    match decompose(rep, bound) {
        Ok(summands) => Ok(ReducibilityReport {
            completely_reducible: true,
            summand_dims: summands.iter().map(|s| s.dim()).collect(),
            summands,
            obstruction_dim: None,
        }),
        Err(ModRepError::NoInvariantComplement { submodule_dim }) => Ok(ReducibilityReport {
            completely_reducible: false,
            summand_dims: Vec::new(),
            summands: Vec::new(),
            obstruction_dim: Some(submodule_dim),
        }),
        Err(e) => Err(e),
    }
}

/// Basis of the space of module homomorphisms `a -> b`: matrices `X` with
/// `A_g X = X B_g` for every generator. Dimension 0 certifies
/// non-isomorphism; for irreducible modules, nonzero dimension certifies
/// isomorphism.
pub fn hom_space(a: &MatRep, b: &MatRep) -> Result<Vec<Mat>, ModRepError> {
    if a.gens.len() != b.gens.len() {
        return Err(ModRepError::DimensionMismatch(
            a.gens.len(),
            0,
            b.gens.len(),
            0,
        ));
    }
    let (na, nb) = (a.dim, b.dim);
    let unknowns = na * nb;
    let zero = a.field.zero();
    let mut rows: Vec<Vec<FieldElem>> = Vec::new();
    for (ga, gb) in a.gens.iter().zip(&b.gens) {
        for i in 0..na {
            for j in 0..nb {
                // (A X)[i,j] + (X B)[i,j] = 0.
                let mut row = vec![zero; unknowns];
                for k in 0..na {
                    let idx = k * nb + j;
                    row[idx] = row[idx].add(ga.get(i, k));
                }
                for l in 0..nb {
                    let idx = i * nb + l;
                    row[idx] = row[idx].add(gb.get(l, j));
                }
                rows.push(row);
            }
        }
    }
    let coeff = Mat::from_rows(a.field, rows)?;
    // Kernel of the transpose: we want x with coeff-rows · x = 0, i.e.
    // x in the right kernel; reuse left_kernel on the transpose.
    let mut transpose = Mat::zeros(a.field, unknowns, coeff.rows());
    for i in 0..coeff.rows() {
        for j in 0..unknowns {
            transpose.set(j, i, coeff.get(i, j));
        }
    }
    let kernel = transpose.left_kernel();
    let mut basis = Vec::new();
    for r in 0..kernel.rows() {
        let mut x = Mat::zeros(a.field, na, nb);
        for i in 0..na {
            for j in 0..nb {
                x.set(i, j, kernel.get(r, i * nb + j));
            }
        }
        basis.push(x);
    }
    Ok(basis)
}

pub fn hom_dimension(a: &MatRep, b: &MatRep) -> Result<usize, ModRepError> {
    Ok(hom_space(a, b)?.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf2() -> Gf2m {
        Gf2m::gf2()
    }

    fn gf8() -> Gf2m {
        Gf2m::gf8()
    }

    /// Dihedral group of order 14 acting on 7 points: a 7-cycle and the
    /// inversion j -> -j mod 7.
    fn dihedral_perms() -> Vec<Vec<usize>> {
        let rotation: Vec<usize> = (0..7).map(|i| (i + 1) % 7).collect();
        let reflection: Vec<usize> = (0..7).map(|i| (7 - i) % 7).collect();
        vec![rotation, reflection]
    }

    #[test]
    fn rref_and_rank_over_gf8() {
        let f = gf8();
        let t = f.t();
        let m = Mat::from_rows(
            f,
            vec![
                vec![t, f.one(), f.zero()],
                vec![t.mul(t), t, f.zero()],
                vec![f.zero(), f.zero(), f.one()],
            ],
        )
        .unwrap();
        // Row 2 = t * row 1, so the rank is 2.
        assert_eq!(m.rank(), 2);
        let (r, pivots) = m.rref();
        assert_eq!(pivots, vec![0, 2]);
        assert_eq!(r.get(0, 0), f.one());
        assert_eq!(r.get(0, 1), t.inv().unwrap());
    }

    #[test]
    fn inverse_round_trips() {
        let f = gf8();
        let t = f.t();
        let m = Mat::from_rows(
            f,
            vec![
                vec![t, f.one(), f.zero()],
                vec![f.one(), t, f.one()],
                vec![f.zero(), f.one(), t],
            ],
        )
        .unwrap();
        let inv = m.inverse().expect("invertible");
        assert_eq!(m.mul(&inv).unwrap(), Mat::identity(f, 3));
        assert_eq!(inv.mul(&m).unwrap(), Mat::identity(f, 3));
    }

    #[test]
    fn singular_matrices_have_no_inverse() {
        let f = gf2();
        let m = Mat::from_rows(f, vec![vec![f.one(), f.one()], vec![f.one(), f.one()]]).unwrap();
        assert!(m.inverse().is_none());
        assert_eq!(m.left_kernel().rows(), 1);
    }

    #[test]
    fn left_kernel_vectors_annihilate() {
        let f = gf8();
        let t = f.t();
        let m = Mat::from_rows(f, vec![vec![t, t.mul(t)], vec![f.one(), t]]).unwrap();
        let kernel = m.left_kernel();
        assert_eq!(kernel.rows(), 1);
        let image = m.act(kernel.row(0)).unwrap();
        assert!(image.iter().all(|e| e.is_zero()));
    }

    #[test]
    fn permutation_module_validates_images() {
        assert!(permutation_module(gf2(), &[vec![0, 0]]).is_err());
        assert!(permutation_module(gf2(), &[vec![2, 0]]).is_err());
        let rep = permutation_module(gf2(), &[vec![1, 0]]).unwrap();
        assert_eq!(rep.dim(), 2);
    }

    #[test]
    fn spin_of_a_single_vector_under_a_cycle_fills_the_space() {
        let f = gf2();
        let rep = permutation_module(f, &[(0..7).map(|i| (i + 1) % 7).collect()]).unwrap();
        let mut seed = vec![f.zero(); 7];
        seed[0] = f.one();
        let basis = spin(&rep, &[seed]).unwrap();
        assert_eq!(basis.rows(), 7);
    }

    #[test]
    fn fixed_space_of_a_transitive_permutation_module_is_the_all_ones_line() {
        let f = gf8();
        let rep = permutation_module(f, &dihedral_perms()).unwrap();
        let fixed = fixed_space(&rep);
        assert_eq!(fixed.rows(), 1);
        assert!(fixed.row(0).iter().all(|&e| e == f.one()));
    }

    #[test]
    fn dihedral_module_over_gf8_splits_into_1_2_2_2() {
        let f = gf8();
        let rep = permutation_module(f, &dihedral_perms()).unwrap();
        let report = is_completely_reducible(&rep, DEFAULT_SPIN_BOUND).unwrap();
        assert!(report.completely_reducible);
        assert_eq!(report.summand_dims, vec![1, 2, 2, 2]);
        // The three 2-dimensional summands are pairwise non-isomorphic,
        // and each has a 1-dimensional endomorphism algebra.
        let two_dims: Vec<&Summand> = report.summands.iter().filter(|s| s.dim() == 2).collect();
        assert_eq!(two_dims.len(), 3);
        for (i, a) in two_dims.iter().enumerate() {
            assert_eq!(hom_dimension(&a.rep, &a.rep).unwrap(), 1);
            for b in &two_dims[i + 1..] {
                assert_eq!(hom_dimension(&a.rep, &b.rep).unwrap(), 0);
                assert_eq!(hom_dimension(&b.rep, &a.rep).unwrap(), 0);
            }
        }
    }

    #[test]
    fn dihedral_module_over_gf2_splits_into_1_6() {
        let rep = permutation_module(gf2(), &dihedral_perms()).unwrap();
        let report = is_completely_reducible(&rep, DEFAULT_SPIN_BOUND).unwrap();
        assert!(report.completely_reducible);
        assert_eq!(report.summand_dims, vec![1, 6]);
    }

    #[test]
    fn order_two_regular_module_is_not_completely_reducible() {
        // The regular module of a group of order 2 in characteristic 2:
        // the fixed line has no invariant complement.
        let rep = permutation_module(gf2(), &[vec![1, 0]]).unwrap();
        let report = is_completely_reducible(&rep, DEFAULT_SPIN_BOUND).unwrap();
        assert!(!report.completely_reducible);
        assert_eq!(report.obstruction_dim, Some(1));
        let fixed = fixed_space(&rep);
        assert_eq!(fixed.rows(), 1);
        assert_eq!(complement(&rep, &fixed).unwrap(), None);
    }

    #[test]
    fn trivial_action_splits_into_lines() {
        let f = gf2();
        let rep = MatRep::new(f, vec![Mat::identity(f, 2)]).unwrap();
        let report = is_completely_reducible(&rep, DEFAULT_SPIN_BOUND).unwrap();
        assert!(report.completely_reducible);
        assert_eq!(report.summand_dims, vec![1, 1]);
    }

    #[test]
    fn restricting_to_a_non_invariant_space_fails() {
        let f = gf2();
        let rep = permutation_module(f, &[(0..7).map(|i| (i + 1) % 7).collect()]).unwrap();
        let mut e1 = Mat::zeros(f, 1, 7);
        e1.set(0, 0, f.one());
        assert_eq!(restrict(&rep, &e1).unwrap_err(), ModRepError::NotInvariant);
    }

    #[test]
    fn spin_bound_is_enforced() {
        let rep = permutation_module(gf2(), &dihedral_perms()).unwrap();
        // Splitting off the fixed line leaves a 6-dimensional module whose
        // exhaustive certificate needs 2^6 = 64 vectors.
        let err = decompose(&rep, 4).unwrap_err();
        assert_eq!(
            err,
            ModRepError::IrreducibilityUndecided {
                vector_count: 64,
                bound: 4
            }
        );
    }

    #[test]
    fn summand_bases_are_genuinely_invariant_and_spanning() {
        let f = gf8();
        let rep = permutation_module(f, &dihedral_perms()).unwrap();
        let report = is_completely_reducible(&rep, DEFAULT_SPIN_BOUND).unwrap();
        let mut all_rows: Vec<Vec<FieldElem>> = Vec::new();
        for s in &report.summands {
            // Invariance is certified by restrict() not failing.
            restrict(&rep, &s.basis).unwrap();
            for r in 0..s.basis.rows() {
                all_rows.push(s.basis.row(r).to_vec());
            }
        }
        let stack = Mat::from_rows(f, all_rows).unwrap();
        assert_eq!(stack.rank(), 7, "summands span the whole module");
    }
}
