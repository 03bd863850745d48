//! Sparse exact elimination used by both the measurement verifier and the
//! Schmidt-rank classifier.
//!
//! Rows live over an integral domain (arbitrary-precision integers, or
//! Eisenstein integers for rank over ℚ(ω)) and are combined fraction-free:
//! `row' = pivot_lead · row − row_lead · pivot`, followed by division of the
//! row by its integer content to keep coefficients small. Rank over the
//! domain equals rank over its fraction field, which is what the callers
//! quote. Pivoting is deterministic: rows are consumed in input order and a
//! row is always reduced at its leading (smallest) column.

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

use crate::field::CycNum;

/// Sorted-by-column sparse row with nonzero entries.
pub type SparseRow<T> = Vec<(u32, T)>;

/// Scalars the fraction-free elimination can work over.
pub trait DomainScalar: Clone + PartialEq {
    fn is_zero(&self) -> bool;
    fn mul(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    /// Divide a whole row by its content (gcd-like normalization). Must not
    /// change the row's span; may be a no-op.
    fn normalize_row(row: &mut SparseRow<Self>)
    where
        Self: Sized;
}

impl DomainScalar for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn normalize_row(row: &mut SparseRow<Self>) {
        let mut g = BigInt::zero();
        for (_, x) in row.iter() {
            g = g.gcd(x);
            if g.is_one() {
                break;
            }
        }
        if g.is_one() || num::Zero::is_zero(&g) {
            // still fix the sign of the leading entry for determinism
        } else {
            for (_, x) in row.iter_mut() {
                *x = &*x / &g;
            }
        }
        if let Some((_, lead)) = row.first() {
            if lead.is_negative() {
                for (_, x) in row.iter_mut() {
                    *x = -(x.clone());
                }
            }
        }
    }
}

impl DomainScalar for CycNum {
    fn is_zero(&self) -> bool {
        CycNum::is_zero(self)
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    /// Clear denominators, then divide out the common integer content of all
    /// basis coordinates. Entries stay Eisenstein and the span is unchanged.
    fn normalize_row(row: &mut SparseRow<Self>) {
        let mut lcm = BigInt::one();
        for (_, z) in row.iter() {
            lcm = lcm.lcm(z.u.denom());
            lcm = lcm.lcm(z.v.denom());
        }
        let mut g = BigInt::zero();
        let scaled: Vec<(BigInt, BigInt)> = row
            .iter()
            .map(|(_, z)| {
                let mu = (&z.u * BigRational::from_integer(lcm.clone())).to_integer();
                let mv = (&z.v * BigRational::from_integer(lcm.clone())).to_integer();
                g = g.gcd(&mu);
                g = g.gcd(&mv);
                (mu, mv)
            })
            .collect();
        if num::Zero::is_zero(&g) {
            return;
        }
        for ((_, z), (mu, mv)) in row.iter_mut().zip(scaled) {
            *z = CycNum::new(
                BigRational::from_integer(mu / &g),
                BigRational::from_integer(mv / &g),
            );
        }
    }
}

/// Result of an elimination: the pivot rows keyed by leading column.
pub struct Echelon<T> {
    pub pivots: Vec<(u32, SparseRow<T>)>,
}

impl<T> Echelon<T> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_cols(&self) -> impl Iterator<Item = u32> + '_ {
        self.pivots.iter().map(|(c, _)| *c)
    }
}

/// Fraction-free row reduction of `rows`; returns the echelon pivots.
pub fn eliminate<T: DomainScalar>(rows: impl IntoIterator<Item = SparseRow<T>>) -> Echelon<T> {
    // pivot index: position in `pivots` for a leading column
    let mut pivots: Vec<(u32, SparseRow<T>)> = Vec::new();
    let mut by_col: std::collections::BTreeMap<u32, usize> = std::collections::BTreeMap::new();

    for mut row in rows {
        row.retain(|(_, x)| !x.is_zero());
        while let Some(&(lead, _)) = row.first() {
            match by_col.get(&lead) {
                Some(&pi) => {
                    let pivot = &pivots[pi].1;
                    row = combine(&row, pivot);
                    T::normalize_row(&mut row);
                }
                None => {
                    T::normalize_row(&mut row);
                    by_col.insert(lead, pivots.len());
                    pivots.push((lead, row));
                    break;
                }
            }
        }
    }
    pivots.sort_by_key(|(c, _)| *c);
    Echelon { pivots }
}

/// `pivot_lead·row − row_lead·pivot`, cancelling the shared leading column.
fn combine<T: DomainScalar>(row: &SparseRow<T>, pivot: &SparseRow<T>) -> SparseRow<T> {
    let a = &pivot.first().expect("pivot row nonempty").1; // pivot lead
    let b = &row.first().expect("row nonempty").1; // row lead
    let zero = b.sub(b);
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let next = match (row.get(i), pivot.get(j)) {
            (Some(&(ci, _)), Some(&(cj, _))) if ci == cj => {
                let x = a.mul(&row[i].1).sub(&b.mul(&pivot[j].1));
                i += 1;
                j += 1;
                (ci, x)
            }
            (Some(&(ci, _)), Some(&(cj, _))) if ci < cj => {
                let x = a.mul(&row[i].1);
                i += 1;
                (ci, x)
            }
            (Some(_), Some(&(cj, _))) | (None, Some(&(cj, _))) => {
                let x = zero.sub(&b.mul(&pivot[j].1));
                j += 1;
                (cj, x)
            }
            (Some(&(ci, _)), None) => {
                let x = a.mul(&row[i].1);
                i += 1;
                (ci, x)
            }
            (None, None) => break,
        };
        if !next.1.is_zero() {
            out.push(next);
        }
    }
    out
}

/// Rank of integer rows reduced modulo a prime `p`.
///
/// Rank mod p never exceeds the rational rank, so a mod-p nullity of 1 is a
/// sound certificate that the exact nullity is 1 (the exact nullity of an
/// orthogonality system is at least 1: the identity lies in the kernel).
pub fn rank_modp(rows: &[SparseRow<BigInt>], p: u64) -> usize {
    let modp = |x: &BigInt| -> u64 {
        let r = x % BigInt::from(p);
        let r = if r.is_negative() {
            r + BigInt::from(p)
        } else {
            r
        };
        u64::try_from(r).expect("residue fits u64")
    };
    let mut pivots: Vec<Vec<(u32, u64)>> = Vec::new();
    let mut by_col: std::collections::BTreeMap<u32, usize> = std::collections::BTreeMap::new();

    for row in rows {
        let mut r: Vec<(u32, u64)> = row
            .iter()
            .map(|(c, x)| (*c, modp(x)))
            .filter(|(_, x)| *x != 0)
            .collect();
        while let Some(&(lead, lv)) = r.first() {
            match by_col.get(&lead) {
                Some(&pi) => {
                    // pivot rows are normalized to leading coefficient 1
                    r = modp_axpy(&r, &pivots[pi], lv, p);
                }
                None => {
                    let inv = modp_inv(lv, p);
                    for (_, x) in r.iter_mut() {
                        *x = mulmod(*x, inv, p);
                    }
                    by_col.insert(lead, pivots.len());
                    pivots.push(r);
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// row − c·pivot over Z_p for sorted sparse rows.
fn modp_axpy(row: &[(u32, u64)], pivot: &[(u32, u64)], c: u64, p: u64) -> Vec<(u32, u64)> {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        match (row.get(i), pivot.get(j)) {
            (Some(&(ci, xi)), Some(&(cj, xj))) if ci == cj => {
                let x = submod(xi, mulmod(c, xj, p), p);
                if x != 0 {
                    out.push((ci, x));
                }
                i += 1;
                j += 1;
            }
            (Some(&(ci, xi)), Some(&(cj, _))) if ci < cj => {
                out.push((ci, xi));
                i += 1;
            }
            (Some(_), Some(&(cj, xj))) | (None, Some(&(cj, xj))) => {
                let x = submod(0, mulmod(c, xj, p), p);
                if x != 0 {
                    out.push((cj, x));
                }
                j += 1;
            }
            (Some(&(ci, xi)), None) => {
                out.push((ci, xi));
                i += 1;
            }
            (None, None) => break,
        }
    }
    out
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn submod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

fn modp_inv(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2) mod p
    let mut base = a % p;
    let mut exp = p - 2;
    let mut acc: u64 = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Exact rational kernel basis of integer rows over `ncols` columns.
///
/// Returns one vector per free column, in increasing free-column order; each
/// vector has a 1 at its free column.
pub fn kernel_basis(rows: &[SparseRow<BigInt>], ncols: usize) -> Vec<Vec<BigRational>> {
    let ech = eliminate(rows.iter().cloned());
    let pivot_cols: Vec<u32> = ech.pivot_cols().collect();
    let is_pivot: std::collections::BTreeSet<u32> = pivot_cols.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..ncols as u32 {
        if is_pivot.contains(&free) {
            continue;
        }
        let mut x = vec![BigRational::zero(); ncols];
        x[free as usize] = BigRational::one();
        // Solve pivot variables bottom-up: each pivot row determines its
        // leading variable from strictly larger columns.
        for (lead, row) in ech.pivots.iter().rev() {
            let mut acc = BigRational::zero();
            for (c, a) in row.iter().skip(1) {
                if !x[*c as usize].is_zero() {
                    acc += BigRational::from_integer(a.clone()) * &x[*c as usize];
                }
            }
            let lead_coeff = BigRational::from_integer(row[0].1.clone());
            x[*lead as usize] = -acc / lead_coeff;
        }
        basis.push(x);
    }
    basis
}
