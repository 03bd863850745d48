//! Tripartite kets, the four set constructions, inner products, orthogonality
//! checks, and entanglement classification.
//!
//! All states are kept unnormalized with exact ℚ(ω) amplitudes, matching how
//! the constructions are defined; a normalization constant would leave the
//! field. A set built here always carries a designated stopper (the
//! full-support all-ones product state) and is verified pairwise orthogonal
//! after construction.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bipartition::Bipartition;
use crate::field::{rat_from_str, rat_to_string, CycNum};
use crate::linalg::{eliminate, SparseRow};
use crate::Error;

/// Local dimensions of parties A, B, C.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct Dims {
    pub d1: u32,
    pub d2: u32,
    pub d3: u32,
}

impl Dims {
    pub fn new(d1: u32, d2: u32, d3: u32) -> Result<Self, Error> {
        if d1 < 2 || d2 < 2 || d3 < 2 {
            return Err(Error::UnsupportedDims(format!(
                "every local dimension must be at least 2, got ({d1},{d2},{d3})"
            )));
        }
        Ok(Dims { d1, d2, d3 })
    }

    pub fn as_tuple(self) -> (u32, u32, u32) {
        (self.d1, self.d2, self.d3)
    }

    pub fn total(self) -> u64 {
        self.d1 as u64 * self.d2 as u64 * self.d3 as u64
    }

    fn contains(self, idx: (u32, u32, u32)) -> bool {
        idx.0 < self.d1 && idx.1 < self.d2 && idx.2 < self.d3
    }
}

impl fmt::Display for Dims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.d1, self.d2, self.d3)
    }
}

/// Sparse tripartite pure state: index triple -> nonzero amplitude.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Ket {
    dims: Dims,
    amps: BTreeMap<(u32, u32, u32), CycNum>,
}

impl Ket {
    pub fn new(dims: Dims) -> Self {
        Ket {
            dims,
            amps: BTreeMap::new(),
        }
    }

    pub fn from_terms<I>(dims: Dims, terms: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = ((u32, u32, u32), CycNum)>,
    {
        let mut ket = Ket::new(dims);
        for (idx, amp) in terms {
            ket.add_term(idx, amp)?;
        }
        Ok(ket)
    }

    /// Add `amp`·|idx⟩; explicit zeros are dropped, repeated indices sum.
    pub fn add_term(&mut self, idx: (u32, u32, u32), amp: CycNum) -> Result<(), Error> {
        if !self.dims.contains(idx) {
            return Err(Error::IndexOutOfBounds {
                idx,
                dims: self.dims.as_tuple(),
            });
        }
        let entry = self.amps.entry(idx).or_insert_with(CycNum::zero);
        *entry = &*entry + &amp;
        if self.amps.get(&idx).is_some_and(CycNum::is_zero) {
            self.amps.remove(&idx);
        }
        Ok(())
    }

    pub fn dims(&self) -> Dims {
        self.dims
    }

    /// Amplitudes in lexicographic index order.
    pub fn amps(&self) -> impl Iterator<Item = (&(u32, u32, u32), &CycNum)> {
        self.amps.iter()
    }

    pub fn amp_at(&self, idx: (u32, u32, u32)) -> Option<&CycNum> {
        self.amps.get(&idx)
    }

    pub fn term_count(&self) -> usize {
        self.amps.len()
    }

    pub fn is_zero(&self) -> bool {
        self.amps.is_empty()
    }

    /// ⟨self|other⟩ = Σ conj(a)·b, exact.
    pub fn inner_product(&self, other: &Ket) -> Result<CycNum, Error> {
        if self.dims != other.dims {
            return Err(Error::DimsMismatch(format!(
                "inner product between dims {} and {}",
                self.dims, other.dims
            )));
        }
        let mut acc = CycNum::zero();
        // iterate over the sparser support
        let (small, large, small_is_bra) = if self.amps.len() <= other.amps.len() {
            (&self.amps, &other.amps, true)
        } else {
            (&other.amps, &self.amps, false)
        };
        for (idx, a) in small {
            if let Some(b) = large.get(idx) {
                let term = if small_is_bra {
                    &a.conj() * b
                } else {
                    &b.conj() * a
                };
                acc = &acc + &term;
            }
        }
        Ok(acc)
    }

    /// The ket with each party's basis labels permuted independently.
    /// `pa`, `pb`, `pc` map old index -> new index and must be permutations.
    pub fn relabeled(&self, pa: &[u32], pb: &[u32], pc: &[u32]) -> Ket {
        let mut out = Ket::new(self.dims);
        for ((i, j, k), amp) in &self.amps {
            out.amps.insert(
                (pa[*i as usize], pb[*j as usize], pc[*k as usize]),
                amp.clone(),
            );
        }
        out
    }
}

/// Per-bipartition Schmidt ranks plus the resulting category.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct StateClass {
    /// Ranks across A|BC, B|CA, C|AB in that order.
    pub ranks: [usize; 3],
    pub category: StateCategory,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StateCategory {
    Product,
    Entangled,
    GenuinelyEntangled,
}

/// Exact Schmidt rank of `x` across each bipartition, over ℚ(ω).
///
/// The amplitudes are reshaped into the row × fused-column matrix of each cut
/// and ranked by the same fraction-free elimination the verifier uses, run
/// over Eisenstein entries.
pub fn classify_state(x: &Ket) -> Result<StateClass, Error> {
    if x.is_zero() {
        return Err(Error::ZeroKet);
    }
    let mut ranks = [0usize; 3];
    for (slot, b) in Bipartition::ALL.iter().enumerate() {
        let (_, (_, c2)) = b.shape(x.dims());
        let mut rows: BTreeMap<u32, SparseRow<CycNum>> = BTreeMap::new();
        for cell in b.cells(x) {
            let col = cell.col.0 * c2 + cell.col.1;
            rows.entry(cell.row).or_default().push((col, cell.amp));
        }
        let rows = rows.into_values().map(|mut r| {
            r.sort_by_key(|(c, _)| *c);
            r
        });
        ranks[slot] = eliminate(rows).rank();
    }
    let category = if ranks.iter().all(|&r| r == 1) {
        StateCategory::Product
    } else if ranks.iter().all(|&r| r >= 2) {
        StateCategory::GenuinelyEntangled
    } else {
        StateCategory::Entangled
    };
    Ok(StateClass { ranks, category })
}

/// Labeled collection of mutually orthogonal kets with a designated stopper.
#[derive(Clone, PartialEq, Debug)]
pub struct StateSet {
    dims: Dims,
    states: Vec<(String, Ket)>,
    stopper: Option<usize>,
}

impl StateSet {
    pub fn new(dims: Dims) -> Self {
        StateSet {
            dims,
            states: Vec::new(),
            stopper: None,
        }
    }

    pub fn dims(&self) -> Dims {
        self.dims
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn push(&mut self, label: impl Into<String>, ket: Ket) -> Result<(), Error> {
        let label = label.into();
        if ket.dims() != self.dims {
            return Err(Error::DimsMismatch(format!(
                "state {label:?} has dims {} in a {} set",
                ket.dims(),
                self.dims
            )));
        }
        if self.states.iter().any(|(l, _)| *l == label) {
            return Err(Error::DuplicateLabel(label));
        }
        self.states.push((label, ket));
        Ok(())
    }

    /// Append `ket` and mark it as the stopper.
    pub fn push_stopper(&mut self, label: impl Into<String>, ket: Ket) -> Result<(), Error> {
        self.push(label, ket)?;
        self.stopper = Some(self.states.len() - 1);
        Ok(())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Ket)> {
        self.states.iter().map(|(l, k)| (l.as_str(), k))
    }

    pub fn get(&self, idx: usize) -> Option<(&str, &Ket)> {
        self.states.get(idx).map(|(l, k)| (l.as_str(), k))
    }

    pub fn by_label(&self, label: &str) -> Option<&Ket> {
        self.states.iter().find(|(l, _)| l == label).map(|(_, k)| k)
    }

    pub fn stopper_index(&self) -> Option<usize> {
        self.stopper
    }

    pub fn stopper_label(&self) -> Option<&str> {
        self.stopper.map(|i| self.states[i].0.as_str())
    }

    /// First non-orthogonal pair, if any.
    pub fn first_nonorthogonal_pair(&self) -> Option<(&str, &str)> {
        for i in 0..self.states.len() {
            for j in (i + 1)..self.states.len() {
                let ip = self.states[i]
                    .1
                    .inner_product(&self.states[j].1)
                    .expect("same dims within a set");
                if !ip.is_zero() {
                    return Some((self.states[i].0.as_str(), self.states[j].0.as_str()));
                }
            }
        }
        None
    }

    pub fn is_pairwise_orthogonal(&self) -> bool {
        self.first_nonorthogonal_pair().is_none()
    }

    /// The same set with party-local relabelings applied to every state.
    pub fn relabeled(&self, pa: &[u32], pb: &[u32], pc: &[u32]) -> StateSet {
        StateSet {
            dims: self.dims,
            states: self
                .states
                .iter()
                .map(|(l, k)| (l.clone(), k.relabeled(pa, pb, pc)))
                .collect(),
            stopper: self.stopper,
        }
    }

    /// Structural equality: same dims, same label -> amplitude map for every
    /// non-stopper state, and equal stopper kets. Stopper labels may differ
    /// (the constructions name theirs differently); state order is ignored.
    pub fn structurally_equal(&self, other: &StateSet) -> bool {
        if self.dims != other.dims || self.states.len() != other.states.len() {
            return false;
        }
        match (self.stopper, other.stopper) {
            (Some(i), Some(j)) => {
                if self.states[i].1 != other.states[j].1 {
                    return false;
                }
            }
            (None, None) => {}
            _ => return false,
        }
        let stopper = self.stopper_label();
        for (label, ket) in self.iter() {
            if Some(label) == stopper {
                continue;
            }
            match other.by_label(label) {
                Some(k) if k == ket => {}
                _ => return false,
            }
        }
        // labels are unique and counts match, so the map comparison is total
        true
    }
}

fn ghz(dims: Dims, plus: (u32, u32, u32), minus: (u32, u32, u32)) -> Ket {
    Ket::from_terms(dims, [(plus, CycNum::one()), (minus, CycNum::from_int(-1))])
        .expect("construction indices in range")
}

fn wlike(dims: Dims, t0: (u32, u32, u32), t1: (u32, u32, u32), t2: (u32, u32, u32)) -> Ket {
    Ket::from_terms(
        dims,
        [
            (t0, CycNum::one()),
            (t1, CycNum::omega()),
            (t2, CycNum::omega_pow(2)),
        ],
    )
    .expect("construction indices in range")
}

fn stopper_ket(dims: Dims) -> Ket {
    let mut ket = Ket::new(dims);
    for i in 0..dims.d1 {
        for j in 0..dims.d2 {
            for k in 0..dims.d3 {
                ket.add_term((i, j, k), CycNum::one()).expect("in range");
            }
        }
    }
    ket
}

fn phi_label(i: u32, j: u32) -> String {
    if i < 10 && j < 10 {
        format!("φ{i}{j}")
    } else {
        format!("φ{i}_{j}")
    }
}

fn finish_set(set: StateSet) -> StateSet {
    if let Some((a, b)) = set.first_nonorthogonal_pair() {
        panic!("constructed set is not orthogonal: {a} vs {b}");
    }
    set
}

/// The ten-state set in (3,3,3): seven two-branch states, two three-branch
/// states with cube-root phases, and the stopper. Hard-coded as printed so it
/// can serve as golden data for the generic constructor.
pub fn build_lemma1_set() -> StateSet {
    let dims = Dims::new(3, 3, 3).unwrap();
    let mut set = StateSet::new(dims);
    let entries: [(&str, Ket); 9] = [
        ("φ22", ghz(dims, (2, 2, 2), (1, 1, 1))),
        ("φ20", ghz(dims, (2, 2, 0), (1, 0, 2))),
        ("φ21", ghz(dims, (2, 2, 1), (0, 1, 2))),
        ("φ02", ghz(dims, (2, 0, 2), (0, 2, 1))),
        ("φ12", ghz(dims, (2, 1, 2), (1, 2, 0))),
        ("φ10", ghz(dims, (2, 1, 0), (0, 2, 2))),
        ("φ01", ghz(dims, (2, 0, 1), (1, 2, 2))),
        ("φ00", wlike(dims, (2, 0, 0), (0, 0, 2), (0, 2, 0))),
        ("φ11", wlike(dims, (2, 1, 1), (1, 1, 2), (1, 2, 1))),
    ];
    for (label, ket) in entries {
        set.push(label, ket).unwrap();
    }
    set.push_stopper("S1", stopper_ket(dims)).unwrap();
    finish_set(set)
}

/// Families of the symmetric d×d×d construction and of its general-dims
/// extension. Useful for tests and reporting; membership is a function of a
/// state's label subscripts.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Family {
    A0,
    A1,
    A2,
    A3,
    A4,
    A5,
    A6,
    A7,
    A8,
    A9,
    A10,
    A11,
    A12,
    A13,
}

/// Family of the state labeled φ_{ij} within the set constructed for `dims`.
/// `None` for the stopper (which has no subscript pair).
pub fn family_of_label(dims: Dims, i: u32, j: u32) -> Option<Family> {
    let d1 = dims.d1;
    let dh = d1 - 1; // highest index of the smallest party
    let ds = d1 - 2;
    Some(if i < d1 && j < d1 {
        if i == dh && j == dh {
            Family::A0
        } else if i == dh {
            Family::A1
        } else if j == dh {
            Family::A2
        } else if i + j == ds {
            Family::A3
        } else if i + j >= d1 - 1 {
            Family::A4
        } else {
            Family::A5
        }
    } else if i < dh && j >= d1 {
        Family::A6
    } else if i == dh && j == d1 {
        Family::A7
    } else if i == dh && j > d1 {
        Family::A8
    } else if i >= d1 && j < dh {
        Family::A9
    } else if i == d1 && j == dh {
        Family::A10
    } else if i > d1 && j == dh {
        Family::A11
    } else if i == d1 && j >= d1 {
        Family::A12
    } else if i > d1 && j >= d1 {
        Family::A13
    } else {
        return None; // (i,j) = (dh, dh) handled above; unreachable
    })
}

/// A0..A5 at local size `d`, embedded into a possibly larger `dims`.
fn push_symmetric_families(set: &mut StateSet, dims: Dims, d: u32) -> Result<(), Error> {
    let dh = d - 1;
    let ds = d - 2;
    set.push(phi_label(dh, dh), ghz(dims, (dh, dh, dh), (ds, ds, ds)))?;
    for i in 0..dh {
        set.push(phi_label(dh, i), ghz(dims, (dh, dh, i), (ds - i, i, dh)))?;
    }
    for i in 0..dh {
        set.push(phi_label(i, dh), ghz(dims, (dh, i, dh), (i, dh, ds - i)))?;
    }
    for i in 0..dh {
        set.push(
            phi_label(ds - i, i),
            ghz(dims, (dh, ds - i, i), (i, dh, dh)),
        )?;
    }
    // three-branch families: k+l ≥ d−1 first, then k+l ≤ d−3
    for k in 0..dh {
        for l in 0..dh {
            if k + l >= d - 1 {
                set.push(
                    phi_label(k, l),
                    wlike(dims, (dh, k, l), (k, l, dh), (l, dh, k)),
                )?;
            }
        }
    }
    for s in 0..dh {
        for t in 0..dh {
            if s + t + 3 <= d {
                set.push(
                    phi_label(s, t),
                    wlike(dims, (dh, s, t), (s, t, dh), (t, dh, s)),
                )?;
            }
        }
    }
    Ok(())
}

/// The d²+1 set in (d,d,d) for d ≥ 3.
///
/// With d̂ = d−1 and d* = d−2, the families are
///   A0: φ_{d̂d̂} = |d̂d̂d̂⟩ − |d*d*d*⟩
///   A1: φ_{d̂i} = |d̂,d̂,i⟩ − |d*−i,i,d̂⟩            for i ∈ Z_{d̂}
///   A2: φ_{id̂} = |d̂,i,d̂⟩ − |i,d̂,d*−i⟩            for i ∈ Z_{d̂}
///   A3: φ_{(d*−i)i} = |d̂,d*−i,i⟩ − |i,d̂,d̂⟩       for i ∈ Z_{d̂}
///   A4: φ_{kl} = |d̂,k,l⟩ + ω|k,l,d̂⟩ + ω²|l,d̂,k⟩  for k,l ∈ Z_{d̂}, k+l ≥ d−1
///   A5: same three-branch shape                     for k,l ∈ Z_{d̂}, k+l ≤ d−3
/// plus the stopper.
pub fn build_theorem1_set(d: u32) -> Result<StateSet, Error> {
    if d < 3 {
        return Err(Error::UnsupportedDims(format!(
            "the symmetric construction requires d ≥ 3, got {d}"
        )));
    }
    let dims = Dims::new(d, d, d).unwrap();
    let mut set = StateSet::new(dims);
    push_symmetric_families(&mut set, dims, d)?;
    set.push_stopper("S2", stopper_ket(dims))?;
    Ok(finish_set(set))
}

/// The d₂d₃+1 set in (d₁,d₂,d₃) for 3 ≤ d₁ ≤ d₂ ≤ d₃.
///
/// Instantiates the symmetric families at d₁ and extends them with (writing
/// d̂ = d₁−1):
///   A6:  φ_{i(d₁+j)} = |d̂,i,d₁+j⟩ − |i,d̂,d₁+j⟩         i ∈ Z_{d̂}, j ∈ Z_{d₃−d₁}
///   A7:  φ_{d̂d₁}     = |d̂,d̂,d₁⟩ − |0,0,1⟩
///   A8:  φ_{d̂(d₁+1+i)} = |d̂,d̂,d₁+1+i⟩ − |0,0,d₁+i⟩    i ∈ Z_{d₃−d₁−1}
///   A9:  φ_{(d₁+j)i} = |d̂,d₁+j,i⟩ − |i,d₁+j,d̂⟩         i ∈ Z_{d̂}, j ∈ Z_{d₂−d₁}
///   A10: φ_{d₁d̂}     = |d̂,d₁,d̂⟩ − |0,1,0⟩
///   A11: φ_{(d₁+1+i)d̂} = |d̂,d₁+1+i,d̂⟩ − |0,d₁+i,0⟩    i ∈ Z_{d₂−d₁−1}
///   A12: φ_{d₁(d₁+i)} = |d̂,d₁,d₁+i⟩ − |0,1,d₁+i⟩       i ∈ Z_{d₃−d₁}
///   A13: φ_{(d₁+1+i)(d₁+j)} = |d̂,d₁+1+i,d₁+j⟩ − |0,d₁+i,d₁+j⟩
///                                           i ∈ Z_{d₂−d₁−1}, j ∈ Z_{d₃−d₁}
/// plus the stopper. Families whose index ranges are empty (d₂ = d₁ and/or
/// d₃ = d₁) simply contribute nothing.
pub fn build_theorem2_set(d1: u32, d2: u32, d3: u32) -> Result<StateSet, Error> {
    if d1 < 3 {
        return Err(Error::UnsupportedDims(format!(
            "the general construction requires d1 ≥ 3, got {d1}"
        )));
    }
    if !(d1 <= d2 && d2 <= d3) {
        return Err(Error::UnsupportedDims(format!(
            "dimensions must be sorted, d1 ≤ d2 ≤ d3; got ({d1},{d2},{d3})"
        )));
    }
    let dims = Dims::new(d1, d2, d3).unwrap();
    let dh = d1 - 1;
    let mut set = StateSet::new(dims);
    push_symmetric_families(&mut set, dims, d1)?;

    // A6
    for i in 0..dh {
        for j in 0..(d3 - d1) {
            set.push(
                phi_label(i, d1 + j),
                ghz(dims, (dh, i, d1 + j), (i, dh, d1 + j)),
            )?;
        }
    }
    // A7, A8 need the C party to extend past d1
    if d3 > d1 {
        set.push(phi_label(dh, d1), ghz(dims, (dh, dh, d1), (0, 0, 1)))?;
        for i in 0..(d3 - d1 - 1) {
            set.push(
                phi_label(dh, d1 + 1 + i),
                ghz(dims, (dh, dh, d1 + 1 + i), (0, 0, d1 + i)),
            )?;
        }
    }
    // A9
    for i in 0..dh {
        for j in 0..(d2 - d1) {
            set.push(
                phi_label(d1 + j, i),
                ghz(dims, (dh, d1 + j, i), (i, d1 + j, dh)),
            )?;
        }
    }
    // A10, A11 need the B party to extend past d1
    if d2 > d1 {
        set.push(phi_label(d1, dh), ghz(dims, (dh, d1, dh), (0, 1, 0)))?;
        for i in 0..(d2 - d1 - 1) {
            set.push(
                phi_label(d1 + 1 + i, dh),
                ghz(dims, (dh, d1 + 1 + i, dh), (0, d1 + i, 0)),
            )?;
        }
        // A12, A13 use B index d1, so they also need d2 > d1
        for i in 0..(d3 - d1) {
            set.push(
                phi_label(d1, d1 + i),
                ghz(dims, (dh, d1, d1 + i), (0, 1, d1 + i)),
            )?;
        }
        for i in 0..(d2 - d1 - 1) {
            for j in 0..(d3 - d1) {
                set.push(
                    phi_label(d1 + 1 + i, d1 + j),
                    ghz(dims, (dh, d1 + 1 + i, d1 + j), (0, d1 + i, d1 + j)),
                )?;
            }
        }
    }
    set.push_stopper("S", stopper_ket(dims))?;
    Ok(finish_set(set))
}

// ---------------------------------------------------------------------------
// Canonical JSON
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct AmpJson {
    idx: [u32; 3],
    u: String,
    v: String,
}

#[derive(Serialize, Deserialize)]
struct StateJson {
    label: String,
    amps: Vec<AmpJson>,
}

#[derive(Serialize, Deserialize)]
struct StateSetJson {
    dims: [u32; 3],
    stopper: Option<String>,
    states: Vec<StateJson>,
}

impl StateSet {
    /// Canonical JSON: states in construction order, amplitudes in
    /// lexicographic index order, rationals as decimal strings. Re-encoding a
    /// decoded document is byte-identical.
    pub fn to_canonical_json(&self) -> String {
        let doc = StateSetJson {
            dims: [self.dims.d1, self.dims.d2, self.dims.d3],
            stopper: self.stopper_label().map(str::to_owned),
            states: self
                .states
                .iter()
                .map(|(label, ket)| StateJson {
                    label: label.clone(),
                    amps: ket
                        .amps()
                        .map(|(idx, amp)| AmpJson {
                            idx: [idx.0, idx.1, idx.2],
                            u: rat_to_string(&amp.u),
                            v: rat_to_string(&amp.v),
                        })
                        .collect(),
                })
                .collect(),
        };
        let mut out = serde_json::to_string_pretty(&doc).expect("serializable");
        out.push('\n');
        out
    }

    pub fn from_json(text: &str) -> Result<StateSet, Error> {
        let doc: StateSetJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let dims = Dims::new(doc.dims[0], doc.dims[1], doc.dims[2])?;
        let mut set = StateSet::new(dims);
        for state in &doc.states {
            let mut ket = Ket::new(dims);
            for amp in &state.amps {
                let value = CycNum::new(rat_from_str(&amp.u)?, rat_from_str(&amp.v)?);
                if value.is_zero() {
                    return Err(Error::InvalidSet(format!(
                        "state {:?} stores an explicit zero amplitude",
                        state.label
                    )));
                }
                ket.add_term((amp.idx[0], amp.idx[1], amp.idx[2]), value)?;
            }
            if ket.is_zero() {
                return Err(Error::InvalidSet(format!(
                    "state {:?} is zero",
                    state.label
                )));
            }
            set.push(state.label.clone(), ket)?;
        }
        if let Some(stopper) = &doc.stopper {
            let idx = set
                .states
                .iter()
                .position(|(l, _)| l == stopper)
                .ok_or_else(|| {
                    Error::InvalidSet(format!("stopper {stopper:?} is not among the states"))
                })?;
            set.stopper = Some(idx);
        }
        Ok(set)
    }
}
