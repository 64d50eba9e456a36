//! Integer matrices and Smith normal forms.
//!
//! The dense routine keeps unimodular transforms on both sides, so every
//! decomposition is self-verifying: `U · M · V = D` is an exact integer
//! identity. Elimination is fraction-free with pivoting on the minimal
//! absolute value; arithmetic runs in `i128` first and escalates to big
//! integers only when an intermediate entry overflows.
//!
//! Boundary matrices of subdivided complexes are far too large for dense
//! certificates but almost entirely `±1`; [`sparse_rank_and_torsion`]
//! eliminates unit pivots Markowitz-style and hands the (usually empty)
//! residue to the dense routine.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Dense integer matrix, row major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> IntMat {
        IntMat {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> IntMat {
        let mut m = IntMat::zeros(n, n);
        for i in 0..n {
            *m.get_mut(i, i) = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> IntMat {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> IntMat {
        IntMat::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        *out.get_mut(i, j) += a * b;
                    }
                }
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.get(i, j) * &v[j])
                    .sum::<BigInt>()
            })
            .collect()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }
}

/// Smith normal form `U · M · V = D` with optional transform certificates.
#[derive(Debug, Clone)]
pub struct Snf {
    /// Diagonal of `D`: positive invariant factors in a divisibility chain,
    /// padded with zeros to `min(rows, cols)`.
    pub diagonal: Vec<BigInt>,
    pub rank: usize,
    pub u: Option<IntMat>,
    pub u_inv: Option<IntMat>,
    pub v: Option<IntMat>,
    pub v_inv: Option<IntMat>,
}

impl Snf {
    /// Invariant factors larger than 1 (the torsion part of the cokernel).
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diagonal
            .iter()
            .filter(|d| **d > BigInt::one())
            .cloned()
            .collect()
    }

    /// Exact check of `U · M · V = D` and of the inverse certificates.
    pub fn verify(&self, m: &IntMat) -> bool {
        let (Some(u), Some(u_inv), Some(v), Some(v_inv)) =
            (&self.u, &self.u_inv, &self.v, &self.v_inv)
        else {
            return false;
        };
        if u.mul(u_inv) != IntMat::identity(m.rows()) || v.mul(v_inv) != IntMat::identity(m.cols())
        {
            return false;
        }
        let product = u.mul(m).mul(v);
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let expected = if i == j && i < self.diagonal.len() {
                    self.diagonal[i].clone()
                } else {
                    BigInt::zero()
                };
                if *product.get(i, j) != expected {
                    return false;
                }
            }
        }
        true
    }
}

/// Which transform certificates to accumulate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SnfSides {
    pub left: bool,
    pub right: bool,
}

impl SnfSides {
    pub const BOTH: SnfSides = SnfSides {
        left: true,
        right: true,
    };
    pub const LEFT: SnfSides = SnfSides {
        left: true,
        right: false,
    };
    pub const RIGHT: SnfSides = SnfSides {
        left: false,
        right: true,
    };
    pub const NONE: SnfSides = SnfSides {
        left: false,
        right: false,
    };
}

/// Smith normal form with both certificates.
pub fn smith_normal_form(m: &IntMat) -> Snf {
    smith_normal_form_with(m, SnfSides::BOTH)
}

/// Smith normal form accumulating only the requested certificates.
pub fn smith_normal_form_with(m: &IntMat, sides: SnfSides) -> Snf {
    if let Some(snf) = snf_generic::<i128>(m, sides) {
        return snf;
    }
    snf_generic::<BigInt>(m, sides).expect("big integer arithmetic cannot overflow")
}

/// Elimination scalar: `i128` with overflow detection, or `BigInt`.
trait SnfInt: Clone + PartialEq + std::fmt::Debug {
    fn from_i64(v: i64) -> Self;
    fn is_zero_value(&self) -> bool;
    fn is_negative_value(&self) -> bool;
    fn negated(&self) -> Option<Self>;
    fn checked_sub_mul(&self, q: &Self, x: &Self) -> Option<Self>; // self − q·x
    /// Floor division by a positive divisor.
    fn floor_div(&self, d: &Self) -> Self;
    fn abs_lt(&self, other: &Self) -> bool;
    fn from_big(x: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
}

impl SnfInt for i128 {
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn is_zero_value(&self) -> bool {
        *self == 0
    }
    fn is_negative_value(&self) -> bool {
        *self < 0
    }
    fn negated(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn checked_sub_mul(&self, q: &Self, x: &Self) -> Option<Self> {
        self.checked_sub(q.checked_mul(*x)?)
    }
    fn floor_div(&self, d: &Self) -> Self {
        debug_assert!(*d > 0);
        self.div_euclid(*d)
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn from_big(x: &BigInt) -> Option<Self> {
        use num_traits::ToPrimitive;
        x.to_i128()
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl SnfInt for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero_value(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative_value(&self) -> bool {
        Signed::is_negative(self)
    }
    fn negated(&self) -> Option<Self> {
        Some(-self)
    }
    fn checked_sub_mul(&self, q: &Self, x: &Self) -> Option<Self> {
        Some(self - q * x)
    }
    fn floor_div(&self, d: &Self) -> Self {
        debug_assert!(d.is_positive());
        self.div_floor(d)
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.abs() < other.abs()
    }
    fn from_big(x: &BigInt) -> Option<Self> {
        Some(x.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: SnfInt> Mat<T> {
    fn identity(n: usize) -> Mat<T> {
        let mut data = vec![T::from_i64(0); n * n];
        for i in 0..n {
            data[i * n + i] = T::from_i64(1);
        }
        Mat { rows: n, cols: n, data }
    }

    fn from_big(m: &IntMat) -> Option<Mat<T>> {
        let data = m
            .data
            .iter()
            .map(|x| T::from_big(x))
            .collect::<Option<Vec<T>>>()?;
        Some(Mat {
            rows: m.rows,
            cols: m.cols,
            data,
        })
    }

    fn to_big(&self) -> IntMat {
        IntMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(SnfInt::to_big).collect(),
        }
    }

    fn at(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    fn set(&mut self, i: usize, j: usize, value: T) {
        self.data[i * self.cols + j] = value;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    fn negate_row(&mut self, i: usize) -> Option<()> {
        for j in 0..self.cols {
            let v = self.at(i, j).negated()?;
            self.set(i, j, v);
        }
        Some(())
    }

    fn negate_col(&mut self, j: usize) -> Option<()> {
        for i in 0..self.rows {
            let v = self.at(i, j).negated()?;
            self.set(i, j, v);
        }
        Some(())
    }

    /// `row_dst −= q · row_src`
    fn sub_row_multiple(&mut self, dst: usize, src: usize, q: &T) -> Option<()> {
        for j in 0..self.cols {
            let x = self.at(src, j).clone();
            if x.is_zero_value() {
                continue;
            }
            let v = self.at(dst, j).checked_sub_mul(q, &x)?;
            self.set(dst, j, v);
        }
        Some(())
    }

    /// `col_dst −= q · col_src`
    fn sub_col_multiple(&mut self, dst: usize, src: usize, q: &T) -> Option<()> {
        for i in 0..self.rows {
            let x = self.at(i, src).clone();
            if x.is_zero_value() {
                continue;
            }
            let v = self.at(i, dst).checked_sub_mul(q, &x)?;
            self.set(i, dst, v);
        }
        Some(())
    }
}

/// Working state: the matrix plus mirrored certificates. Row operations on
/// `m` touch `u` the same way and `u_inv` contravariantly; column operations
/// mirror onto `v` and `v_inv`.
struct SnfState<T> {
    m: Mat<T>,
    u: Option<Mat<T>>,
    u_inv: Option<Mat<T>>,
    v: Option<Mat<T>>,
    v_inv: Option<Mat<T>>,
}

impl<T: SnfInt> SnfState<T> {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.m.swap_rows(a, b);
        if let Some(u) = &mut self.u {
            u.swap_rows(a, b);
        }
        if let Some(u_inv) = &mut self.u_inv {
            u_inv.swap_cols(a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.m.swap_cols(a, b);
        if let Some(v) = &mut self.v {
            v.swap_cols(a, b);
        }
        if let Some(v_inv) = &mut self.v_inv {
            v_inv.swap_rows(a, b);
        }
    }

    fn negate_row(&mut self, i: usize) -> Option<()> {
        self.m.negate_row(i)?;
        if let Some(u) = &mut self.u {
            u.negate_row(i)?;
        }
        if let Some(u_inv) = &mut self.u_inv {
            u_inv.negate_col(i)?;
        }
        Some(())
    }

    fn sub_row_multiple(&mut self, dst: usize, src: usize, q: &T) -> Option<()> {
        self.m.sub_row_multiple(dst, src, q)?;
        if let Some(u) = &mut self.u {
            u.sub_row_multiple(dst, src, q)?;
        }
        if let Some(u_inv) = &mut self.u_inv {
            // inverse of (row_dst −= q·row_src) is col_src += q·col_dst
            let neg_q = q.negated()?;
            u_inv.sub_col_multiple(src, dst, &neg_q)?;
        }
        Some(())
    }

    fn sub_col_multiple(&mut self, dst: usize, src: usize, q: &T) -> Option<()> {
        self.m.sub_col_multiple(dst, src, q)?;
        if let Some(v) = &mut self.v {
            v.sub_col_multiple(dst, src, q)?;
        }
        if let Some(v_inv) = &mut self.v_inv {
            let neg_q = q.negated()?;
            v_inv.sub_row_multiple(src, dst, &neg_q)?;
        }
        Some(())
    }
}

fn snf_generic<T: SnfInt>(input: &IntMat, sides: SnfSides) -> Option<Snf> {
    let m = Mat::<T>::from_big(input)?;
    let (rows, cols) = (m.rows, m.cols);
    let mut state = SnfState {
        m,
        u: sides.left.then(|| Mat::identity(rows)),
        u_inv: sides.left.then(|| Mat::identity(rows)),
        v: sides.right.then(|| Mat::identity(cols)),
        v_inv: sides.right.then(|| Mat::identity(cols)),
    };

    let size = rows.min(cols);
    let mut rank = 0;
    'pivots: for t in 0..size {
        // minimal |entry| in the trailing submatrix
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if state.m.at(i, j).is_zero_value() {
                    continue;
                }
                match pivot {
                    Some((pi, pj)) if !state.m.at(i, j).abs_lt(state.m.at(pi, pj)) => {}
                    _ => pivot = Some((i, j)),
                }
            }
        }
        let Some((pi, pj)) = pivot else {
            break 'pivots;
        };
        state.swap_rows(t, pi);
        state.swap_cols(t, pj);

        loop {
            if state.m.at(t, t).is_negative_value() {
                state.negate_row(t)?;
            }
            // clear column t with Euclidean row steps
            let mut touched = false;
            for i in t + 1..rows {
                if state.m.at(i, t).is_zero_value() {
                    continue;
                }
                let q = state.m.at(i, t).floor_div(state.m.at(t, t));
                if !q.is_zero_value() {
                    state.sub_row_multiple(i, t, &q)?;
                }
                if !state.m.at(i, t).is_zero_value() {
                    // remainder became the smaller pivot
                    state.swap_rows(t, i);
                    touched = true;
                    break;
                }
            }
            if touched {
                continue;
            }
            // clear row t with Euclidean column steps
            for j in t + 1..cols {
                if state.m.at(t, j).is_zero_value() {
                    continue;
                }
                let q = state.m.at(t, j).floor_div(state.m.at(t, t));
                if !q.is_zero_value() {
                    state.sub_col_multiple(j, t, &q)?;
                }
                if !state.m.at(t, j).is_zero_value() {
                    state.swap_cols(t, j);
                    touched = true;
                    break;
                }
            }
            if touched {
                continue;
            }
            // divisibility: the pivot must divide the rest of the submatrix
            let mut fixed = true;
            'scan: for i in t + 1..rows {
                for j in t + 1..cols {
                    let e = state.m.at(i, j);
                    if e.is_zero_value() {
                        continue;
                    }
                    let q = e.floor_div(state.m.at(t, t));
                    if !e.checked_sub_mul(&q, state.m.at(t, t))?.is_zero_value() {
                        // pull row i into row t and restart the clearing
                        let minus_one = T::from_i64(-1);
                        state.sub_row_multiple(t, i, &minus_one)?;
                        fixed = false;
                        break 'scan;
                    }
                }
            }
            if fixed {
                break;
            }
        }
        rank += 1;
    }

    let diagonal: Vec<BigInt> = (0..size).map(|t| state.m.at(t, t).to_big()).collect();
    debug_assert!(diagonal[..rank].iter().all(|d| d.is_positive()));
    debug_assert!(diagonal[rank..].iter().all(|d| d.is_zero()));
    Some(Snf {
        diagonal,
        rank,
        u: state.u.as_ref().map(Mat::to_big),
        u_inv: state.u_inv.as_ref().map(Mat::to_big),
        v: state.v.as_ref().map(Mat::to_big),
        v_inv: state.v_inv.as_ref().map(Mat::to_big),
    })
}

/// Sparse integer matrix in triplet form.
#[derive(Debug, Clone)]
pub struct SparseMat {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(u32, u32, i128)>,
}

/// Rank and invariant factors `> 1` of a sparse integer matrix.
///
/// Unit (`±1`) pivots are eliminated first, chosen by Markowitz cost; the
/// residue without unit entries, usually empty for boundary matrices, goes
/// through the dense Smith normal form.
pub fn sparse_rank_and_torsion(matrix: &SparseMat) -> Result<(usize, Vec<BigInt>)> {
    let mut rows: Vec<HashMap<u32, i128>> = vec![HashMap::new(); matrix.rows];
    let mut col_rows: Vec<HashSet<u32>> = vec![HashSet::new(); matrix.cols];
    for &(i, j, v) in &matrix.entries {
        if v == 0 {
            continue;
        }
        let prev = rows[i as usize].insert(j, v);
        assert!(prev.is_none(), "duplicate entry at ({i}, {j})");
        col_rows[j as usize].insert(i);
    }

    let overflow = || Error::BudgetExceeded {
        limit: u64::MAX,
        unit: "i128 magnitude in sparse elimination",
    };

    // lazy min-heap over (Markowitz cost, row, col) of unit entries
    let mut heap: BinaryHeap<Reverse<(u64, u32, u32)>> = BinaryHeap::new();
    let cost = |rows: &[HashMap<u32, i128>], col_rows: &[HashSet<u32>], i: u32, j: u32| {
        (rows[i as usize].len() as u64 - 1) * (col_rows[j as usize].len() as u64 - 1)
    };
    for (i, row) in rows.iter().enumerate() {
        for (&j, &v) in row {
            if v == 1 || v == -1 {
                heap.push(Reverse((cost(&rows, &col_rows, i as u32, j), i as u32, j)));
            }
        }
    }

    let mut rank = 0usize;
    let mut dead_rows: HashSet<u32> = HashSet::new();
    let mut dead_cols: HashSet<u32> = HashSet::new();
    while let Some(Reverse((c, pi, pj))) = heap.pop() {
        if dead_rows.contains(&pi) || dead_cols.contains(&pj) {
            continue;
        }
        let Some(&pv) = rows[pi as usize].get(&pj) else {
            continue;
        };
        if pv != 1 && pv != -1 {
            continue;
        }
        if c != cost(&rows, &col_rows, pi, pj) {
            // stale cost, requeue with the current one
            heap.push(Reverse((cost(&rows, &col_rows, pi, pj), pi, pj)));
            continue;
        }

        // eliminate every other row meeting column pj, then cross out the
        // pivot row and column
        let pivot_row: Vec<(u32, i128)> =
            rows[pi as usize].iter().map(|(&j, &v)| (j, v)).collect();
        let others: Vec<u32> = col_rows[pj as usize]
            .iter()
            .copied()
            .filter(|&r| r != pi)
            .collect();
        for r in others {
            let e = rows[r as usize][&pj];
            let q = e * pv; // pv is ±1, so q·pv = e
            for &(j, v) in &pivot_row {
                let delta = q.checked_mul(v).ok_or_else(overflow)?;
                match rows[r as usize].entry(j) {
                    std::collections::hash_map::Entry::Occupied(mut slot) => {
                        let updated = slot.get().checked_sub(delta).ok_or_else(overflow)?;
                        if updated == 0 {
                            slot.remove();
                            col_rows[j as usize].remove(&r);
                        } else {
                            *slot.get_mut() = updated;
                            if updated == 1 || updated == -1 {
                                heap.push(Reverse((cost(&rows, &col_rows, r, j), r, j)));
                            }
                        }
                    }
                    std::collections::hash_map::Entry::Vacant(slot) => {
                        let updated = 0i128.checked_sub(delta).ok_or_else(overflow)?;
                        slot.insert(updated);
                        col_rows[j as usize].insert(r);
                        if updated == 1 || updated == -1 {
                            heap.push(Reverse((cost(&rows, &col_rows, r, j), r, j)));
                        }
                    }
                }
            }
            debug_assert!(!rows[r as usize].contains_key(&pj));
        }
        for &(j, _) in &pivot_row {
            col_rows[j as usize].remove(&pi);
        }
        rows[pi as usize].clear();
        dead_rows.insert(pi);
        dead_cols.insert(pj);
        rank += 1;
    }

    // residual without unit entries
    let mut live_rows: Vec<u32> = (0..matrix.rows as u32)
        .filter(|i| !rows[*i as usize].is_empty())
        .collect();
    live_rows.sort_unstable();
    if live_rows.is_empty() {
        return Ok((rank, Vec::new()));
    }
    let mut live_cols: Vec<u32> = live_rows
        .iter()
        .flat_map(|&i| rows[i as usize].keys().copied())
        .collect();
    live_cols.sort_unstable();
    live_cols.dedup();
    let col_index: HashMap<u32, usize> = live_cols
        .iter()
        .enumerate()
        .map(|(idx, &j)| (j, idx))
        .collect();
    let mut dense = IntMat::zeros(live_rows.len(), live_cols.len());
    for (ri, &i) in live_rows.iter().enumerate() {
        for (&j, &v) in &rows[i as usize] {
            *dense.get_mut(ri, col_index[&j]) = BigInt::from(v);
        }
    }
    let snf = smith_normal_form_with(&dense, SnfSides::NONE);
    Ok((rank + snf.rank, snf.torsion()))
}
