//! Orthogonality-preserving constraint systems and their exact null spaces.
//!
//! For a bipartition with joint dimension n, a Hermitian measurement element
//! E = (m_{ij,kl}) on the joint party is parameterized by n² real unknowns:
//! one per diagonal entry, and two per upper-triangle entry through the
//! expansion m_{ij,kl} = u + v·ω with real u, v (lower entries follow from
//! m_{kl,ij} = conj(m_{ij,kl}) = (u−v) − v·ω). Every ordered pair of distinct
//! states contributes the relation ⟨Φ| I ⊗ E |Ψ⟩ = 0, which splits into two
//! ℚ-linear rows on the unknowns — the coordinates of 1 and ω — because
//! {1, ω} is a basis of ℂ over ℝ and conjugation acts linearly on it.
//!
//! The kernel of the resulting rational matrix has the same dimension over ℝ
//! as over ℚ (rank is invariant under field extension), so exact elimination
//! decides the real question: the kernel is spanned by the identity element
//! exactly when its dimension is 1, and then every orthogonality-preserving
//! element on that cut is proportional to the identity. When the dimension
//! exceeds 1 the kernel contains a Hermitian element H not proportional to
//! the identity, and identity + ε·H is a positive orthogonality-preserving
//! element for small ε, so the verdict vocabulary is "trivial/nontrivial
//! kernel" per cut.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, Integer, One, Zero};
use serde::Serialize;

use crate::bipartition::Bipartition;
use crate::field::{CycNum, Rat};
use crate::linalg::{self, SparseRow};
use crate::states::{Dims, StateSet};
use crate::Error;

/// Fused joint index of the column party, kept as an ordered pair.
pub type Pos = (u32, u32);

/// Default primes for the modular certificate path, all just below 2³¹.
pub const DEFAULT_PRIMES: [u64; 3] = [2_147_483_647, 2_147_483_629, 2_147_483_587];

/// Default relative tolerance of the floating cross-check.
pub const DEFAULT_FLOAT_TOL: f64 = 1e-8;

/// Which real unknown of the Hermitian element a matrix column refers to.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum UnknownIndex {
    /// m_{pp}, real by Hermiticity.
    Diagonal(Pos),
    /// Coefficient of 1 in m_{pq} = u + v·ω, for p < q lexicographically.
    UpperReal(Pos, Pos),
    /// Coefficient of ω in m_{pq} = u + v·ω, for p < q lexicographically.
    UpperOmega(Pos, Pos),
}

/// The Eq.-style orthogonality constraints of one state set under one
/// bipartition, flattened to an integer matrix over the real unknowns.
///
/// Rows come in consecutive pairs: the 1-coordinate and the ω-coordinate of
/// one ordered state pair. By default one orientation per unordered pair is
/// generated (the reverse orientation is its conjugate and adds no rank);
/// `build_system_opts` can keep both for redundancy experiments.
pub struct ConstraintSystem {
    pub bipartition: Bipartition,
    pub dims: Dims,
    /// Joint dimension n of the column party.
    pub n: usize,
    /// Fused indices in lexicographic order; position r of this list is the
    /// diagonal unknown for column r.
    pub col_pairs: Vec<Pos>,
    /// Unknown descriptors, aligned with matrix columns.
    pub unknowns: Vec<UnknownIndex>,
    /// Integer rows; denominators are cleared row-wise for non-Eisenstein
    /// amplitudes.
    pub rows: Vec<SparseRow<BigInt>>,
    /// Ordered state-pair labels, one per row pair.
    pub pair_labels: Vec<(String, String)>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Modp,
    Float,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Exact => write!(f, "exact"),
            Mode::Modp => write!(f, "modp"),
            Mode::Float => write!(f, "float"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Trivial,
    Nontrivial,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Trivial => write!(f, "trivial"),
            Verdict::Nontrivial => write!(f, "nontrivial"),
            Verdict::Inconclusive => write!(f, "inconclusive"),
        }
    }
}

/// Outcome of one null-space computation.
#[derive(Clone, Debug, Serialize)]
pub struct NullityReport {
    pub mode: Mode,
    pub nullity: usize,
    pub identity_in_kernel: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub primes_used: Option<Vec<u64>>,
    pub verdict: Verdict,
}

/// Coefficient map of ⟨x| I_row ⊗ E |y⟩ before Hermitian substitution:
/// (ij, kl) -> Σ_r conj(a_{r,ij})·b_{r,kl}.
pub fn constraint_row(
    x: &crate::states::Ket,
    y: &crate::states::Ket,
    b: Bipartition,
) -> Result<BTreeMap<(Pos, Pos), CycNum>, Error> {
    if x.dims() != y.dims() {
        return Err(Error::DimsMismatch(
            "constraint row needs matching dims".into(),
        ));
    }
    let mut coeffs: BTreeMap<(Pos, Pos), CycNum> = BTreeMap::new();
    for (cx, cy) in crate::bipartition::matched_row_pairs(x, y, b) {
        let term = &cx.amp.conj() * &cy.amp;
        let entry = coeffs.entry((cx.col, cy.col)).or_insert_with(CycNum::zero);
        *entry = &*entry + &term;
        if coeffs.get(&(cx.col, cy.col)).is_some_and(CycNum::is_zero) {
            coeffs.remove(&(cx.col, cy.col));
        }
    }
    Ok(coeffs)
}

impl ConstraintSystem {
    fn pos_rank(&self, p: Pos) -> usize {
        (p.0 * self.cols_c2() + p.1) as usize
    }

    fn cols_c2(&self) -> u32 {
        let (_, (_, c2)) = self.bipartition.shape(self.dims);
        c2
    }

    /// Column of the diagonal unknown m_{pp}.
    pub fn diag_col(&self, p: Pos) -> u32 {
        self.pos_rank(p) as u32
    }

    /// Columns of the (u, v) unknowns of the upper entry m_{pq}, p < q.
    pub fn upper_cols(&self, p: Pos, q: Pos) -> (u32, u32) {
        let (pi, qi) = (self.pos_rank(p), self.pos_rank(q));
        debug_assert!(pi < qi);
        let n = self.n;
        let pair_rank = pi * n - pi * (pi + 1) / 2 + (qi - pi - 1);
        let base = n + 2 * pair_rank;
        (base as u32, base as u32 + 1)
    }

    pub fn num_unknowns(&self) -> usize {
        self.n * self.n
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    /// Whether the all-equal-diagonal identity element satisfies every row.
    pub fn identity_in_kernel(&self) -> bool {
        self.rows.iter().all(|row| {
            let mut acc = BigInt::zero();
            for (c, a) in row {
                if (*c as usize) < self.n {
                    acc += a;
                }
            }
            acc.is_zero()
        })
    }
}

/// Append the two real-coordinate rows of one ordered state pair.
fn push_pair_rows(sys: &mut ConstraintSystem, coeffs: &BTreeMap<(Pos, Pos), CycNum>) {
    let mut row_one: BTreeMap<u32, Rat> = BTreeMap::new();
    let mut row_omega: BTreeMap<u32, Rat> = BTreeMap::new();
    let add = |row: &mut BTreeMap<u32, Rat>, col: u32, val: &Rat| {
        if val.is_zero() {
            return;
        }
        let slot = row.entry(col).or_insert_with(Rat::zero);
        *slot += val;
    };
    let minus_one_minus_omega = CycNum::from_ints(-1, -1);
    for ((p, q), c) in coeffs {
        if p == q {
            let col = sys.diag_col(*p);
            add(&mut row_one, col, &c.u);
            add(&mut row_omega, col, &c.v);
        } else if p < q {
            let (cu, cv) = sys.upper_cols(*p, *q);
            // coefficient of u is c, of v is c·ω
            add(&mut row_one, cu, &c.u);
            add(&mut row_omega, cu, &c.v);
            let cw = c * &CycNum::omega();
            add(&mut row_one, cv, &cw.u);
            add(&mut row_omega, cv, &cw.v);
        } else {
            // m_{pq} = conj(m_{qp}) = u·1 + v·(−1−ω)
            let (cu, cv) = sys.upper_cols(*q, *p);
            add(&mut row_one, cu, &c.u);
            add(&mut row_omega, cu, &c.v);
            let cw = c * &minus_one_minus_omega;
            add(&mut row_one, cv, &cw.u);
            add(&mut row_omega, cv, &cw.v);
        }
    }
    sys.rows.push(integerize(row_one));
    sys.rows.push(integerize(row_omega));
}

/// Clear denominators of a rational row, producing an integer sparse row.
fn integerize(row: BTreeMap<u32, Rat>) -> SparseRow<BigInt> {
    let mut lcm = BigInt::one();
    for v in row.values() {
        lcm = lcm.lcm(v.denom());
    }
    let lcm = Rat::from_integer(lcm);
    row.into_iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(c, v)| (c, (v * &lcm).to_integer()))
        .collect()
}

/// Build the constraint system of `s` under `b`, one orientation per
/// unordered state pair.
pub fn build_system(s: &StateSet, b: Bipartition) -> Result<ConstraintSystem, Error> {
    build_system_opts(s, b, false)
}

/// As `build_system`; `conjugate_rows` additionally keeps the reverse
/// orientation of every pair (redundant rows the elimination absorbs).
pub fn build_system_opts(
    s: &StateSet,
    b: Bipartition,
    conjugate_rows: bool,
) -> Result<ConstraintSystem, Error> {
    if let Some((a, y)) = s.first_nonorthogonal_pair() {
        // a non-orthogonal set would not have the identity in its kernel, so
        // the triviality semantics would be meaningless
        return Err(Error::NonOrthogonal(a.to_owned(), y.to_owned()));
    }
    let dims = s.dims();
    let (_, (c1, c2)) = b.shape(dims);
    let n = (c1 * c2) as usize;
    let mut col_pairs = Vec::with_capacity(n);
    for a in 0..c1 {
        for bb in 0..c2 {
            col_pairs.push((a, bb));
        }
    }
    let mut unknowns: Vec<UnknownIndex> = col_pairs
        .iter()
        .map(|p| UnknownIndex::Diagonal(*p))
        .collect();
    for i in 0..n {
        for j in (i + 1)..n {
            unknowns.push(UnknownIndex::UpperReal(col_pairs[i], col_pairs[j]));
            unknowns.push(UnknownIndex::UpperOmega(col_pairs[i], col_pairs[j]));
        }
    }
    let mut sys = ConstraintSystem {
        bipartition: b,
        dims,
        n,
        col_pairs,
        unknowns,
        rows: Vec::new(),
        pair_labels: Vec::new(),
    };
    let states: Vec<(&str, &crate::states::Ket)> = s.iter().collect();
    for i in 0..states.len() {
        for j in (i + 1)..states.len() {
            let coeffs = constraint_row(states[i].1, states[j].1, b)?;
            push_pair_rows(&mut sys, &coeffs);
            sys.pair_labels
                .push((states[i].0.to_owned(), states[j].0.to_owned()));
            if conjugate_rows {
                let coeffs = constraint_row(states[j].1, states[i].1, b)?;
                push_pair_rows(&mut sys, &coeffs);
                sys.pair_labels
                    .push((states[j].0.to_owned(), states[i].0.to_owned()));
            }
        }
    }
    Ok(sys)
}

/// Exact kernel dimension over ℚ by fraction-free elimination.
pub fn nullity_exact(cs: &ConstraintSystem) -> NullityReport {
    let rank = linalg::eliminate(cs.rows.iter().cloned()).rank();
    let nullity = cs.num_unknowns() - rank;
    NullityReport {
        mode: Mode::Exact,
        nullity,
        identity_in_kernel: cs.identity_in_kernel(),
        primes_used: None,
        verdict: if nullity == 1 {
            Verdict::Trivial
        } else {
            Verdict::Nontrivial
        },
    }
}

/// Kernel dimension of the integer matrix over each Z_p; reports the minimum.
///
/// Rank can only drop under reduction mod p, so the mod-p nullity upper
/// bounds the exact one; together with exact nullity ≥ 1 a mod-p nullity of 1
/// certifies triviality. Larger mod-p nullities certify nothing and yield
/// `Inconclusive`, never `Nontrivial`.
pub fn nullity_modp(cs: &ConstraintSystem, primes: &[u64]) -> Result<NullityReport, Error> {
    if primes.is_empty() {
        return Err(Error::BadPrime(0));
    }
    for (i, p) in primes.iter().enumerate() {
        if *p <= 3 || !is_prime_u64(*p) || primes[..i].contains(p) {
            return Err(Error::BadPrime(*p));
        }
    }
    let mut best = usize::MAX;
    for &p in primes {
        let rank = linalg::rank_modp(&cs.rows, p);
        best = best.min(cs.num_unknowns() - rank);
    }
    Ok(NullityReport {
        mode: Mode::Modp,
        nullity: best,
        identity_in_kernel: cs.identity_in_kernel(),
        primes_used: Some(primes.to_vec()),
        verdict: if best == 1 {
            Verdict::Trivial
        } else {
            Verdict::Inconclusive
        },
    })
}

/// Numerical kernel dimension via singular values; advisory cross-check only,
/// never authoritative.
///
/// The real matrix is formed in real/imaginary coordinates with ω embedded as
/// −1/2 + (√3/2)i: for a row pair (r₁, r_ω) in {1, ω} coordinates the complex
/// row is r₁ + r_ω·ω, so Re = r₁ − r_ω/2 and Im = (√3/2)·r_ω.
pub fn nullity_float(cs: &ConstraintSystem, tol: f64) -> NullityReport {
    let ncols = cs.num_unknowns();
    let nrows = cs.rows.len();
    let mut m = nalgebra::DMatrix::<f64>::zeros(nrows, ncols);
    use num::ToPrimitive;
    let half_sqrt3 = 3f64.sqrt() / 2.0;
    for pair in 0..nrows / 2 {
        let one_row = &cs.rows[2 * pair];
        let omega_row = &cs.rows[2 * pair + 1];
        for (c, a) in one_row {
            m[(2 * pair, *c as usize)] += a.to_f64().unwrap_or(f64::NAN);
        }
        for (c, a) in omega_row {
            let a = a.to_f64().unwrap_or(f64::NAN);
            m[(2 * pair, *c as usize)] += -0.5 * a;
            m[(2 * pair + 1, *c as usize)] += half_sqrt3 * a;
        }
    }
    let svd = m.svd(false, false);
    let smax = svd.singular_values.iter().cloned().fold(0.0f64, f64::max);
    let rank = if smax == 0.0 {
        0
    } else {
        svd.singular_values
            .iter()
            .filter(|s| **s > tol * smax)
            .count()
    };
    let nullity = ncols - rank;
    NullityReport {
        mode: Mode::Float,
        nullity,
        identity_in_kernel: cs.identity_in_kernel(),
        primes_used: None,
        verdict: if nullity == 1 {
            Verdict::Trivial
        } else {
            Verdict::Nontrivial
        },
    }
}

/// Exact rational kernel basis, one vector per free column of the system.
pub fn kernel_basis(cs: &ConstraintSystem) -> Vec<Vec<Rat>> {
    linalg::kernel_basis(&cs.rows, cs.num_unknowns())
}

/// Reassemble a kernel vector into the Hermitian element it parameterizes.
pub fn hermitian_from_kernel_vector(cs: &ConstraintSystem, x: &[Rat]) -> Vec<Vec<CycNum>> {
    let n = cs.n;
    let mut e = vec![vec![CycNum::zero(); n]; n];
    for (col, unknown) in cs.unknowns.iter().enumerate() {
        let val = &x[col];
        if val.is_zero() {
            continue;
        }
        match unknown {
            UnknownIndex::Diagonal(p) => {
                let i = cs.pos_rank(*p);
                e[i][i] = &e[i][i] + &CycNum::new(val.clone(), Rat::zero());
            }
            UnknownIndex::UpperReal(p, q) => {
                let (i, j) = (cs.pos_rank(*p), cs.pos_rank(*q));
                let z = CycNum::new(val.clone(), Rat::zero());
                e[i][j] = &e[i][j] + &z;
                e[j][i] = &e[j][i] + &z.conj();
            }
            UnknownIndex::UpperOmega(p, q) => {
                let (i, j) = (cs.pos_rank(*p), cs.pos_rank(*q));
                let z = CycNum::new(Rat::zero(), val.clone());
                e[i][j] = &e[i][j] + &z;
                e[j][i] = &e[j][i] + &z.conj();
            }
        }
    }
    e
}

/// How a strongest-nonlocality verification should compute nullities.
#[derive(Clone, Debug)]
pub enum ModeSpec {
    Exact,
    Modp(Vec<u64>),
    Float(f64),
}

/// Per-bipartition reports plus the overall verdict.
#[derive(Clone, Debug)]
pub struct StrongestReport {
    pub per_cut: Vec<(Bipartition, NullityReport)>,
    pub overall: Verdict,
}

/// Run the chosen nullity mode on all three bipartitions. The overall verdict
/// is `Trivial` only when every cut is trivial; one bipartition would suffice
/// for the symmetric constructions by their cyclic plane structure, but all
/// three are always checked.
pub fn verify_strongest(s: &StateSet, mode: &ModeSpec) -> Result<StrongestReport, Error> {
    let mut per_cut = Vec::with_capacity(3);
    for b in Bipartition::ALL {
        let cs = build_system(s, b)?;
        let report = match mode {
            ModeSpec::Exact => nullity_exact(&cs),
            ModeSpec::Modp(primes) => nullity_modp(&cs, primes)?,
            ModeSpec::Float(tol) => nullity_float(&cs, *tol),
        };
        per_cut.push((b, report));
    }
    let overall = if per_cut.iter().all(|(_, r)| r.verdict == Verdict::Trivial) {
        Verdict::Trivial
    } else if per_cut
        .iter()
        .any(|(_, r)| r.verdict == Verdict::Nontrivial)
    {
        Verdict::Nontrivial
    } else {
        Verdict::Inconclusive
    };
    Ok(StrongestReport { per_cut, overall })
}

/// max_i { d₁d₂d₃ / d_i + 1 }: the cardinality floor a strongest nonlocal set
/// must reach; equals d₂d₃ + 1 for sorted dims.
pub fn lower_bound(dims: Dims) -> u64 {
    let (d1, d2, d3) = dims.as_tuple();
    let total = dims.total();
    [d1, d2, d3]
        .iter()
        .map(|d| total / *d as u64 + 1)
        .max()
        .expect("three parties")
}

pub fn check_meets_bound(s: &StateSet) -> bool {
    s.len() as u64 == lower_bound(s.dims())
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    // deterministic Miller-Rabin for u64
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// The full product basis of `dims`: the canonical nontrivial control.
pub fn product_basis(dims: Dims) -> StateSet {
    let mut set = StateSet::new(dims);
    for i in 0..dims.d1 {
        for j in 0..dims.d2 {
            for k in 0..dims.d3 {
                let ket = crate::states::Ket::from_terms(dims, [((i, j, k), CycNum::one())])
                    .expect("in range");
                set.push(format!("e{i}{j}{k}"), ket).expect("unique");
            }
        }
    }
    set
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{build_lemma1_set, build_theorem1_set, StateSet};

    #[test]
    fn printed_constraint_rows() {
        let set = build_lemma1_set();
        let phi20 = set.by_label("φ20").unwrap();
        let phi02 = set.by_label("φ02").unwrap();
        let row = constraint_row(phi20, phi02, Bipartition::A).unwrap();
        assert_eq!(row.len(), 1);
        assert_eq!(row.get(&((2, 0), (0, 2))), Some(&CycNum::one()));

        let phi12 = set.by_label("φ12").unwrap();
        let row = constraint_row(phi20, phi12, Bipartition::A).unwrap();
        assert_eq!(row.len(), 2);
        assert_eq!(row.get(&((2, 0), (1, 2))), Some(&CycNum::one()));
        assert_eq!(row.get(&((0, 2), (2, 0))), Some(&CycNum::one()));

        // stopper against a three-branch state: diagonal part carries 1, ω, ω²
        let s1 = set.by_label("S1").unwrap();
        let phi00 = set.by_label("φ00").unwrap();
        let row = constraint_row(s1, phi00, Bipartition::A).unwrap();
        assert_eq!(row.get(&((0, 0), (0, 0))), Some(&CycNum::one()));
        assert_eq!(row.get(&((0, 2), (0, 2))), Some(&CycNum::omega()));
        assert_eq!(row.get(&((2, 0), (2, 0))), Some(&CycNum::omega_pow(2)));
    }

    #[test]
    fn system_shapes() {
        let set = build_lemma1_set();
        let cs = build_system(&set, Bipartition::A).unwrap();
        assert_eq!(cs.num_unknowns(), 81);
        assert_eq!(cs.num_rows(), 90);
        assert!(cs.identity_in_kernel());

        let cs = build_system(&build_theorem1_set(4).unwrap(), Bipartition::A).unwrap();
        assert_eq!(cs.num_unknowns(), 256);
        assert_eq!(cs.num_rows(), 272);

        let cs = build_system(
            &crate::states::build_theorem2_set(3, 4, 5).unwrap(),
            Bipartition::C,
        )
        .unwrap();
        assert_eq!(cs.num_unknowns(), 144);
    }

    #[test]
    fn non_orthogonal_sets_are_rejected() {
        let dims = Dims::new(2, 2, 2).unwrap();
        let mut set = StateSet::new(dims);
        let a = crate::states::Ket::from_terms(dims, [((0, 0, 0), CycNum::one())]).unwrap();
        let b = crate::states::Ket::from_terms(
            dims,
            [((0, 0, 0), CycNum::one()), ((1, 1, 1), CycNum::one())],
        )
        .unwrap();
        set.push("x", a).unwrap();
        set.push("y", b).unwrap();
        assert!(matches!(
            build_system(&set, Bipartition::A),
            Err(Error::NonOrthogonal(_, _))
        ));
    }

    #[test]
    fn lemma1_is_trivial_on_abc() {
        let set = build_lemma1_set();
        let cs = build_system(&set, Bipartition::A).unwrap();
        let report = nullity_exact(&cs);
        assert_eq!(report.nullity, 1);
        assert_eq!(report.verdict, Verdict::Trivial);
        assert!(report.identity_in_kernel);
    }

    #[test]
    fn product_basis_is_nontrivial() {
        let set = product_basis(Dims::new(2, 2, 2).unwrap());
        let cs = build_system(&set, Bipartition::A).unwrap();
        let exact = nullity_exact(&cs);
        assert_eq!(exact.nullity, 4);
        assert_eq!(exact.verdict, Verdict::Nontrivial);
        let modp = nullity_modp(&cs, &DEFAULT_PRIMES).unwrap();
        assert_eq!(modp.nullity, 4);
        assert_eq!(modp.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn bad_primes_are_rejected() {
        let set = build_lemma1_set();
        let cs = build_system(&set, Bipartition::A).unwrap();
        assert!(matches!(nullity_modp(&cs, &[3]), Err(Error::BadPrime(3))));
        assert!(matches!(nullity_modp(&cs, &[15]), Err(Error::BadPrime(15))));
        assert!(matches!(
            nullity_modp(&cs, &[5, 5]),
            Err(Error::BadPrime(5))
        ));
    }

    #[test]
    fn bounds() {
        assert_eq!(lower_bound(Dims::new(3, 3, 3).unwrap()), 10);
        assert_eq!(lower_bound(Dims::new(3, 4, 5).unwrap()), 21);
        assert_eq!(lower_bound(Dims::new(2, 2, 2).unwrap()), 5);
        assert!(check_meets_bound(&build_lemma1_set()));
    }

    #[test]
    fn conjugate_rows_change_nothing() {
        let set = build_lemma1_set();
        for b in Bipartition::ALL {
            let single = build_system(&set, b).unwrap();
            let doubled = build_system_opts(&set, b, true).unwrap();
            assert_eq!(doubled.num_rows(), 2 * single.num_rows());
            assert_eq!(
                nullity_exact(&single).nullity,
                nullity_exact(&doubled).nullity
            );
        }
    }

    #[test]
    fn kernel_vector_reassembles_to_identity() {
        let set = build_lemma1_set();
        let cs = build_system(&set, Bipartition::A).unwrap();
        let basis = kernel_basis(&cs);
        assert_eq!(basis.len(), 1);
        let e = hermitian_from_kernel_vector(&cs, &basis[0]);
        let diag = e[0][0].clone();
        assert!(!diag.is_zero());
        for (i, row) in e.iter().enumerate() {
            for (j, entry) in row.iter().enumerate() {
                if i == j {
                    assert_eq!(*entry, diag);
                } else {
                    assert!(entry.is_zero());
                }
            }
        }
    }
}
