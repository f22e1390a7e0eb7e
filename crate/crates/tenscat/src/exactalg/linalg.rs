//! Smith and Hermite normal forms, exact linear solving, nullspaces.
//!
//! The Euclidean kinds (integers, polynomials over a field, and fields)
//! are handled directly.  The quotient kinds `Z/n` and `k[x]/(m)` are
//! handled by lifting to the Euclidean cover, adjoining the modulus as
//! extra relations, and reducing back; this keeps a single certified
//! decision procedure for everything built on top.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use super::matrix::Matrix;
use super::ring::{Elem, Ring};
use crate::{Error, Result};

/// Invertible transforms `u * m * v = s` with `s` diagonal and each
/// diagonal entry dividing the next.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub s: Matrix,
    pub u: Matrix,
    pub v: Matrix,
}

/// Smith normal form over the integers, `Z/n`, a field, or `k[x]` /
/// `k[x]/(m)`.  Quotient kinds are computed in the cover and reduced,
/// which preserves the transform identity and the divisibility chain.
pub fn smith_normal_form(m: &Matrix) -> Result<SmithForm> {
    let ring = m.ring.clone();
    if ring.is_euclidean() {
        return Ok(snf_euclidean(m));
    }
    if ring.cover_modulus().is_some() {
        let cover = ring.cover();
        let lifted = m.map_ring(&cover, |e| ring.lift(e));
        let f = snf_euclidean(&lifted);
        let back = |mat: &Matrix| mat.map_ring(&ring, |e| ring.reduce(e));
        return Ok(SmithForm { s: back(&f.s), u: back(&f.u), v: back(&f.v) });
    }
    Err(Error::UnsupportedRing { op: "smith_normal_form".into(), ring: format!("{ring}") })
}

fn snf_euclidean(m: &Matrix) -> SmithForm {
    let ring = m.ring.clone();
    let mut s = m.clone();
    let mut u = Matrix::identity(ring.clone(), m.rows);
    let mut v = Matrix::identity(ring.clone(), m.cols);
    let n = m.rows.min(m.cols);
    let mut t = 0;
    while t < n {
        match pivot_position(&s, t) {
            None => break,
            Some((pi, pj)) => {
                s.swap_rows(t, pi);
                u.swap_rows(t, pi);
                s.swap_cols(t, pj);
                v.swap_cols(t, pj);
            }
        }
        loop {
            // clear column t below the pivot
            let mut progressed = false;
            for i in t + 1..s.rows {
                if ring.is_zero(s.at(i, t)) {
                    continue;
                }
                let (q, r) = ring.divrem(s.at(i, t), s.at(t, t)).expect("euclidean");
                let nq = ring.neg(&q);
                s.add_row_multiple(i, t, &nq);
                u.add_row_multiple(i, t, &nq);
                if !ring.is_zero(&r) {
                    // remainder has smaller norm than the pivot
                    s.swap_rows(t, i);
                    u.swap_rows(t, i);
                    progressed = true;
                }
            }
            if progressed {
                continue;
            }
            // clear row t to the right of the pivot
            for j in t + 1..s.cols {
                if ring.is_zero(s.at(t, j)) {
                    continue;
                }
                let (q, r) = ring.divrem(s.at(t, j), s.at(t, t)).expect("euclidean");
                let nq = ring.neg(&q);
                s.add_col_multiple(j, t, &nq);
                v.add_col_multiple(j, t, &nq);
                if !ring.is_zero(&r) {
                    s.swap_cols(t, j);
                    v.swap_cols(t, j);
                    progressed = true;
                }
            }
            if progressed {
                continue;
            }
            // pivot now divides everything in its row and column (both clear);
            // enforce divisibility into the rest of the block
            let mut fixed = true;
            'scan: for i in t + 1..s.rows {
                for j in t + 1..s.cols {
                    if !ring.divides(s.at(t, t), s.at(i, j)) {
                        s.add_row_multiple(t, i, &ring.one());
                        u.add_row_multiple(t, i, &ring.one());
                        fixed = false;
                        break 'scan;
                    }
                }
            }
            if fixed {
                break;
            }
        }
        // unit-normalise the pivot
        let (unit, _) = ring.unit_normalize(s.at(t, t));
        if !ring.is_one(&unit) {
            s.scale_row(t, &unit);
            u.scale_row(t, &unit);
        }
        t += 1;
    }
    SmithForm { s, u, v }
}

fn pivot_position(s: &Matrix, t: usize) -> Option<(usize, usize)> {
    let ring = &s.ring;
    let mut best: Option<(num::BigInt, usize, usize)> = None;
    for i in t..s.rows {
        for j in t..s.cols {
            if let Some(norm) = ring.euclid_norm(s.at(i, j)) {
                let better = match &best {
                    None => true,
                    Some((bn, _, _)) => norm < *bn,
                };
                if better {
                    best = Some((norm, i, j));
                }
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// Extended Euclid: `(g, s, t)` with `s*a + t*b = g` and `g` the
/// unit-normalised gcd.  Requires a Euclidean kind.
fn gcdext(ring: &Ring, a: &Elem, b: &Elem) -> (Elem, Elem, Elem) {
    let (mut r0, mut s0, mut t0) = (a.clone(), ring.one(), ring.zero());
    let (mut r1, mut s1, mut t1) = (b.clone(), ring.zero(), ring.one());
    while !ring.is_zero(&r1) {
        let (q, _) = ring.divrem(&r0, &r1).expect("euclidean");
        let r2 = ring.sub(&r0, &ring.mul(&q, &r1));
        let s2 = ring.sub(&s0, &ring.mul(&q, &s1));
        let t2 = ring.sub(&t0, &ring.mul(&q, &t1));
        (r0, s0, t0) = (r1, s1, t1);
        (r1, s1, t1) = (r2, s2, t2);
    }
    let (u, g) = ring.unit_normalize(&r0);
    (g, ring.mul(&u, &s0), ring.mul(&u, &t0))
}

/// Scalar arithmetic for echelon work over a quotient kind: all values
/// are canonical representatives below the modulus, so nothing grows.
/// One implementation runs on machine words for `Z/n`; the generic one
/// covers polynomial quotients through the Euclidean cover.
pub(crate) trait ModArith {
    type S: Clone + PartialEq + std::fmt::Debug;
    fn from_ring(&self, e: &Elem) -> Self::S;
    fn to_ring(&self, s: &Self::S) -> Elem;
    fn zero(&self) -> Self::S;
    fn one(&self) -> Self::S;
    fn is_zero(&self, s: &Self::S) -> bool;
    /// Pivot-selection size of a nonzero scalar; smaller divides more.
    fn norm(&self, s: &Self::S) -> u128;
    fn neg(&self, a: &Self::S) -> Self::S;
    fn mul(&self, a: &Self::S, b: &Self::S) -> Self::S;
    fn add_mul(&self, acc: &Self::S, c: &Self::S, x: &Self::S) -> Self::S;
    /// Division of canonical representatives in the cover.
    fn divrem(&self, a: &Self::S, b: &Self::S) -> (Self::S, Self::S);
    /// `(g, s, t)` over the cover with `s*a + t*b = g`, results
    /// canonicalised.
    fn gcdext(&self, a: &Self::S, b: &Self::S) -> (Self::S, Self::S, Self::S);
    /// `(g, s, m/g)` with `g = gcd(a, modulus)` and `s*a = g` modulo
    /// the modulus; `m/g` is canonicalised, so a unit pivot gets zero.
    fn pivot_split(&self, a: &Self::S) -> (Self::S, Self::S, Self::S);
}

#[derive(Clone, Debug)]
pub(crate) struct WordArith {
    n: u64,
}

impl WordArith {
    fn canon_i128(&self, v: i128) -> u64 {
        let n = self.n as i128;
        (((v % n) + n) % n) as u64
    }
}

impl ModArith for WordArith {
    type S = u64;

    fn from_ring(&self, e: &Elem) -> u64 {
        match e {
            Elem::Mod(v) => *v % self.n,
            _ => panic!("word arithmetic expects residue elements"),
        }
    }
    fn to_ring(&self, s: &u64) -> Elem {
        Elem::Mod(*s)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.n
    }
    fn is_zero(&self, s: &u64) -> bool {
        *s == 0
    }
    fn norm(&self, s: &u64) -> u128 {
        *s as u128
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 { 0 } else { self.n - *a }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.n as u128) as u64
    }
    fn add_mul(&self, acc: &u64, c: &u64, x: &u64) -> u64 {
        ((*acc as u128 + *c as u128 * *x as u128) % self.n as u128) as u64
    }
    fn divrem(&self, a: &u64, b: &u64) -> (u64, u64) {
        (*a / *b, *a % *b)
    }
    fn gcdext(&self, a: &u64, b: &u64) -> (u64, u64, u64) {
        let (mut r0, mut s0, mut t0) = (*a as i128, 1i128, 0i128);
        let (mut r1, mut s1, mut t1) = (*b as i128, 0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        (r0 as u64, self.canon_i128(s0), self.canon_i128(t0))
    }
    fn pivot_split(&self, a: &u64) -> (u64, u64, u64) {
        let (g, s, _) = {
            let (mut r0, mut s0) = (*a as i128, 1i128);
            let (mut r1, mut s1) = (self.n as i128, 0i128);
            while r1 != 0 {
                let q = r0 / r1;
                (r0, r1) = (r1, r0 - q * r1);
                (s0, s1) = (s1, s0 - q * s1);
            }
            (r0 as u64, self.canon_i128(s0), 0u64)
        };
        (g, s, (self.n / g) % self.n)
    }
}

#[derive(Clone, Debug)]
pub(crate) struct CoverArith {
    ring: Ring,
    cover: Ring,
    modulus: Elem,
}

impl CoverArith {
    fn redm(&self, e: &Elem) -> Elem {
        self.cover.divrem(e, &self.modulus).expect("modulus nonzero").1
    }
}

impl ModArith for CoverArith {
    type S = Elem;

    fn from_ring(&self, e: &Elem) -> Elem {
        self.redm(&self.ring.lift(e))
    }
    fn to_ring(&self, s: &Elem) -> Elem {
        self.ring.reduce(s)
    }
    fn zero(&self) -> Elem {
        self.cover.zero()
    }
    fn one(&self) -> Elem {
        self.cover.one()
    }
    fn is_zero(&self, s: &Elem) -> bool {
        self.cover.is_zero(s)
    }
    fn norm(&self, s: &Elem) -> u128 {
        self.cover
            .euclid_norm(s)
            .and_then(|n| n.try_into().ok())
            .unwrap_or(u128::MAX)
    }
    fn neg(&self, a: &Elem) -> Elem {
        self.redm(&self.cover.neg(a))
    }
    fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        self.redm(&self.cover.mul(a, b))
    }
    fn add_mul(&self, acc: &Elem, c: &Elem, x: &Elem) -> Elem {
        self.redm(&self.cover.add(acc, &self.cover.mul(c, x)))
    }
    fn divrem(&self, a: &Elem, b: &Elem) -> (Elem, Elem) {
        self.cover.divrem(a, b).expect("euclidean")
    }
    fn gcdext(&self, a: &Elem, b: &Elem) -> (Elem, Elem, Elem) {
        let (g, s, t) = gcdext(&self.cover, a, b);
        (g, self.redm(&s), self.redm(&t))
    }
    fn pivot_split(&self, a: &Elem) -> (Elem, Elem, Elem) {
        let (g, s, _) = gcdext(&self.cover, a, &self.modulus);
        let (m_over_g, _) = self.cover.divrem(&self.modulus, &g).expect("gcd divides");
        (g.clone(), self.redm(&s), self.redm(&m_over_g))
    }
}

/// Echelon rows with pivot columns, coefficient tracks and nullspace
/// tracks, all over one scalar engine.
#[derive(Clone, Debug)]
pub(crate) struct HowellEngine<A: ModArith> {
    arith: A,
    cols: usize,
    take: usize,
    rows: Vec<Vec<A::S>>,
    pivots: Vec<usize>,
    tracks: Vec<Vec<A::S>>,
    nulls: Vec<Vec<A::S>>,
}

impl<A: ModArith> HowellEngine<A> {
    fn build(arith: A, a: &Matrix) -> Self {
        let cols = a.cols;
        let take = a.rows;
        let mut work: Vec<(Vec<A::S>, Vec<A::S>)> = Vec::new();
        let mut nulls: Vec<Vec<A::S>> = Vec::new();
        for i in 0..take {
            let row: Vec<A::S> = (0..cols).map(|j| arith.from_ring(a.at(i, j))).collect();
            let mut track = vec![arith.zero(); take];
            track[i] = arith.one();
            if row.iter().all(|e| arith.is_zero(e)) {
                nulls.push(track);
            } else {
                work.push((row, track));
            }
        }
        let mut rows = Vec::new();
        let mut pivots = Vec::new();
        let mut tracks = Vec::new();
        // weighted pair of working rows, mixed from `col` on where both
        // inputs are supported; every move is span-preserving, and
        // canonicalising entries afterwards is free because the span
        // contains every multiple of the modulus in each coordinate
        let combine = |x: &(Vec<A::S>, Vec<A::S>),
                       y: &(Vec<A::S>, Vec<A::S>),
                       cx: &A::S,
                       cy: &A::S,
                       col: usize|
         -> (Vec<A::S>, Vec<A::S>) {
            let mut row = vec![arith.zero(); cols];
            for j in col..cols {
                let first = arith.mul(cx, &x.0[j]);
                row[j] = arith.add_mul(&first, cy, &y.0[j]);
            }
            let track = x
                .1
                .iter()
                .zip(&y.1)
                .map(|(p, q)| arith.add_mul(&arith.mul(cx, p), cy, q))
                .collect();
            (row, track)
        };
        let scale = |c: &A::S, v: &[A::S]| -> Vec<A::S> {
            v.iter().map(|e| arith.mul(c, e)).collect()
        };
        for col in 0..cols {
            loop {
                let mut active: Vec<usize> =
                    (0..work.len()).filter(|&i| !arith.is_zero(&work[i].0[col])).collect();
                if active.is_empty() {
                    break;
                }
                if active.len() == 1 {
                    let (row, track) = work.swap_remove(active[0]);
                    // normalise the pivot to a divisor of the modulus;
                    // the Bezout coefficient is invertible modulo the
                    // complementary factor, so the span is unchanged as
                    // long as the annihilator shadow stays in play
                    let (_, s, shadow) = arith.pivot_split(&row[col]);
                    let prow = scale(&s, &row);
                    let ptrack = scale(&s, &track);
                    let srow = scale(&shadow, &row);
                    let strack = scale(&shadow, &track);
                    if srow.iter().all(|e| arith.is_zero(e)) {
                        nulls.push(strack);
                    } else {
                        work.push((srow, strack));
                    }
                    rows.push(prow);
                    pivots.push(col);
                    tracks.push(ptrack);
                    break;
                }
                // eliminate between the two smallest leading entries
                active.sort_by_key(|&i| arith.norm(&work[i].0[col]));
                let (ia, ib) = (active[0], active[1]);
                let va = work[ia].0[col].clone();
                let vb = work[ib].0[col].clone();
                let (g, s, t) = arith.gcdext(&va, &vb);
                let (ca, _) = arith.divrem(&va, &g);
                let (cb, _) = arith.divrem(&vb, &g);
                let keep = combine(&work[ia], &work[ib], &s, &t, col);
                let drop = combine(&work[ia], &work[ib], &cb, &arith.neg(&ca), col);
                work[ia] = keep;
                if drop.0.iter().all(|e| arith.is_zero(e)) {
                    nulls.push(drop.1);
                    work.swap_remove(ib);
                } else {
                    work[ib] = drop;
                }
            }
        }
        HowellEngine { arith, cols, take, rows, pivots, tracks, nulls }
    }

    /// One bounded back-substitution sweep; `Some` carries the
    /// coefficient row over the original rows.
    fn solve(&self, b: &[Elem]) -> Option<Vec<A::S>> {
        let arith = &self.arith;
        let mut v: Vec<A::S> = b.iter().map(|e| arith.from_ring(e)).collect();
        let mut coeff = vec![arith.zero(); self.take];
        for (i, &pc) in self.pivots.iter().enumerate() {
            if arith.is_zero(&v[pc]) {
                continue;
            }
            let (q, r) = arith.divrem(&v[pc], &self.rows[i][pc]);
            if !arith.is_zero(&r) {
                return None;
            }
            let mq = arith.neg(&q);
            for j in pc..self.cols {
                v[j] = arith.add_mul(&v[j], &mq, &self.rows[i][j]);
            }
            for (c, t) in coeff.iter_mut().zip(&self.tracks[i]) {
                *c = arith.add_mul(c, &q, t);
            }
        }
        if v.iter().any(|e| !arith.is_zero(e)) {
            return None;
        }
        Some(coeff)
    }

    fn null_rows(&self) -> Vec<Vec<Elem>> {
        self.nulls
            .iter()
            .filter(|t| t.iter().any(|e| !self.arith.is_zero(e)))
            .map(|t| t.iter().map(|e| self.arith.to_ring(e)).collect())
            .collect()
    }
}

/// Echelon basis of a row span over a quotient kind, with coefficient
/// tracking: the Howell construction.  Entries never leave canonical
/// representatives below the modulus, unlike Smith transforms of the
/// lifted system, and the annihilator shadows fed back into the
/// elimination make greedy leading-entry reduction a complete
/// membership test.
#[derive(Clone, Debug)]
pub(crate) enum HowellSolver {
    Word(Ring, HowellEngine<WordArith>),
    Cover(Ring, HowellEngine<CoverArith>),
}

impl HowellSolver {
    pub(crate) fn new(a: &Matrix) -> Result<Self> {
        let ring = a.ring.clone();
        if ring.cover_modulus().is_none() {
            return Err(Error::UnsupportedRing { op: "howell".into(), ring: format!("{ring}") });
        }
        if let Some(n) = ring.zmod_n() {
            let eng = HowellEngine::build(WordArith { n }, a);
            return Ok(HowellSolver::Word(ring, eng));
        }
        let arith = CoverArith {
            ring: ring.clone(),
            cover: ring.cover(),
            modulus: ring.cover_modulus().expect("quotient kind"),
        };
        Ok(HowellSolver::Cover(ring, HowellEngine::build(arith, a)))
    }

    fn cols(&self) -> usize {
        match self {
            HowellSolver::Word(_, e) => e.cols,
            HowellSolver::Cover(_, e) => e.cols,
        }
    }

    fn ring(&self) -> &Ring {
        match self {
            HowellSolver::Word(r, _) | HowellSolver::Cover(r, _) => r,
        }
    }

    /// Coefficient row `x` with `x * a = b` in the quotient ring, if
    /// solvable.
    pub(crate) fn solve_row(&self, b: &[Elem]) -> Result<Option<Vec<Elem>>> {
        if b.len() != self.cols() {
            return Err(Error::DimensionMismatch(format!(
                "solve: {} cols vs b {}",
                self.cols(),
                b.len()
            )));
        }
        Ok(match self {
            HowellSolver::Word(_, e) => {
                e.solve(b).map(|x| x.iter().map(|s| e.arith.to_ring(s)).collect())
            }
            HowellSolver::Cover(_, e) => {
                e.solve(b).map(|x| x.iter().map(|s| e.arith.to_ring(s)).collect())
            }
        })
    }

    /// Generators of the left nullspace `{x : x * a = 0}` as a matrix
    /// over the quotient ring.
    pub(crate) fn null_matrix(&self) -> Matrix {
        let (ring, rows, take) = match self {
            HowellSolver::Word(r, e) => (r, e.null_rows(), e.take),
            HowellSolver::Cover(r, e) => (r, e.null_rows(), e.take),
        };
        Matrix::from_fn(ring.clone(), rows.len(), take, |i, j| rows[i][j].clone())
    }
}

/// Prepared solver for `m * x = b` against a fixed coefficient matrix.
/// Building one pays for a single normal form; every solve afterwards
/// is a transform application and a division pass, so callers
/// answering many queries against the same system keep one of these
/// alive.  Euclidean kinds go through a cached Smith form; quotient
/// kinds go through the bounded echelon basis of the transpose.
#[derive(Clone, Debug)]
pub(crate) enum LinSolver {
    Smith(SmithSolver),
    Bounded(HowellSolver),
}

#[derive(Clone, Debug)]
pub(crate) struct SmithSolver {
    ring: Ring,
    rows: usize,
    take: usize,
    /// `None` when the system has no columns, in which case
    /// solvability means the right side is zero.
    f: Option<std::sync::Arc<SmithForm>>,
}

impl LinSolver {
    pub(crate) fn new(m: &Matrix) -> Result<Self> {
        let ring = m.ring.clone();
        if ring.is_euclidean() {
            let f = if m.cols == 0 { None } else { Some(cached_snf(m)) };
            return Ok(LinSolver::Smith(SmithSolver { ring, rows: m.rows, take: m.cols, f }));
        }
        if ring.cover_modulus().is_some() {
            return Ok(LinSolver::Bounded(HowellSolver::new(&m.transpose())?));
        }
        Err(Error::UnsupportedRing { op: "solve_linear".into(), ring: format!("{ring}") })
    }

    /// `Some(x)` with `m * x = b` exactly; `None` certifies that no
    /// solution exists.
    pub(crate) fn solve_col(&self, b: &Matrix) -> Result<Option<Matrix>> {
        match self {
            LinSolver::Smith(s) => s.solve_col(b),
            LinSolver::Bounded(h) => {
                if b.cols != 1 {
                    return Err(Error::DimensionMismatch("solve_col shape".into()));
                }
                let brow: Vec<Elem> = (0..b.rows).map(|i| b.at(i, 0).clone()).collect();
                Ok(h.solve_row(&brow)?.map(|x| {
                    Matrix::from_fn(h.ring().clone(), x.len(), 1, |i, _| x[i].clone())
                }))
            }
        }
    }
}

impl SmithSolver {
    fn solve_col(&self, b: &Matrix) -> Result<Option<Matrix>> {
        if b.rows != self.rows || b.cols != 1 {
            return Err(Error::DimensionMismatch(format!(
                "solve: {} rows vs b {}x{}",
                self.rows, b.rows, b.cols
            )));
        }
        let ring = &self.ring;
        let Some(f) = &self.f else {
            let all_zero = (0..b.rows).all(|i| ring.is_zero(b.at(i, 0)));
            return Ok(all_zero.then(|| Matrix::zero(ring.clone(), self.take, 1)));
        };
        let ub = f.u.mul(b).expect("shapes");
        let n = self.rows.min(self.take);
        let mut y = Matrix::zero(ring.clone(), self.take, 1);
        for i in 0..self.rows {
            let rhs = ub.at(i, 0);
            if i >= n || ring.is_zero(f.s.at(i, i)) {
                if !ring.is_zero(rhs) {
                    return Ok(None);
                }
                continue;
            }
            let (q, r) = ring.divrem(rhs, f.s.at(i, i)).expect("euclidean");
            if !ring.is_zero(&r) {
                return Ok(None);
            }
            y.set(i, 0, q);
        }
        Ok(Some(f.v.mul(&y).expect("shapes")))
    }
}

/// Prepared solver for `x * a = b` with a fixed `a`, row convention.
#[derive(Clone, Debug)]
pub(crate) struct RowSolver {
    inner: LinSolver,
}

impl RowSolver {
    pub(crate) fn new(a: &Matrix) -> Result<Self> {
        let ring = a.ring.clone();
        if !ring.is_euclidean() && ring.cover_modulus().is_some() {
            return Ok(RowSolver { inner: LinSolver::Bounded(HowellSolver::new(a)?) });
        }
        Ok(RowSolver { inner: LinSolver::new(&a.transpose())? })
    }

    /// Coefficient row `x` with `x * a = b`, if any.
    pub(crate) fn solve_row(&self, b: &[Elem]) -> Result<Option<Vec<Elem>>> {
        match &self.inner {
            LinSolver::Bounded(h) => h.solve_row(b),
            LinSolver::Smith(s) => {
                let col = Matrix::from_fn(s.ring.clone(), b.len(), 1, |i, _| b[i].clone());
                Ok(s.solve_col(&col)?
                    .map(|x| (0..x.rows).map(|i| x.at(i, 0).clone()).collect()))
            }
        }
    }
}

/// Solve `m * x = b` for a column vector `b`; `Some(x)` satisfies the
/// equation exactly and `None` certifies that no solution exists.
pub fn solve_linear(m: &Matrix, b: &Matrix) -> Result<Option<Matrix>> {
    if b.rows != m.rows || b.cols != 1 {
        return Err(Error::DimensionMismatch(format!(
            "solve_linear: {}x{} vs b {}x{}",
            m.rows, m.cols, b.rows, b.cols
        )));
    }
    LinSolver::new(m)?.solve_col(b)
}

/// Solve `m * x = b` column by column for a matrix right-hand side.
pub fn solve_matrix(m: &Matrix, b: &Matrix) -> Result<Option<Matrix>> {
    if b.rows != m.rows {
        return Err(Error::DimensionMismatch("solve_matrix rows".into()));
    }
    let solver = LinSolver::new(m)?;
    let ring = m.ring.clone();
    let mut out = Matrix::zero(ring, m.cols, b.cols);
    for j in 0..b.cols {
        let col = Matrix::from_fn(b.ring.clone(), b.rows, 1, |i, _| b.at(i, j).clone());
        match solver.solve_col(&col)? {
            None => return Ok(None),
            Some(x) => {
                for i in 0..m.cols {
                    out.set(i, j, x.at(i, 0).clone());
                }
            }
        }
    }
    Ok(Some(out))
}

/// Solve `x * a = b` treating rows as elements; `b` may have several rows,
/// solved independently.
pub fn solve_left(a: &Matrix, b: &Matrix) -> Result<Option<Matrix>> {
    if b.cols != a.cols {
        return Err(Error::DimensionMismatch("solve_left cols".into()));
    }
    let solver = RowSolver::new(a)?;
    let ring = a.ring.clone();
    let mut out = Matrix::zero(ring, b.rows, a.rows);
    for i in 0..b.rows {
        match solver.solve_row(&b.row(i))? {
            None => return Ok(None),
            Some(x) => {
                for (j, e) in x.into_iter().enumerate() {
                    out.set(i, j, e);
                }
            }
        }
    }
    Ok(Some(out))
}

/// Rows generating `{ x : x * m = 0 }`.
pub fn left_nullspace(m: &Matrix) -> Result<Matrix> {
    let ring = m.ring.clone();
    if ring.is_euclidean() {
        return Ok(left_nullspace_euclidean(m));
    }
    if ring.cover_modulus().is_some() {
        return Ok(HowellSolver::new(m)?.null_matrix());
    }
    Err(Error::UnsupportedRing { op: "left_nullspace".into(), ring: format!("{ring}") })
}

fn left_nullspace_euclidean(m: &Matrix) -> Matrix {
    let ring = m.ring.clone();
    if m.rows == 0 {
        return Matrix::zero(ring, 0, 0);
    }
    let f = snf_euclidean(m);
    let n = m.rows.min(m.cols);
    let mut keep = Vec::new();
    for i in 0..m.rows {
        if i >= n || ring.is_zero(f.s.at(i, i)) {
            keep.push(i);
        }
    }
    Matrix::from_fn(ring, keep.len(), m.rows, |i, j| f.u.at(keep[i], j).clone())
}

// ----- Hermite forms and canonical coset representatives -----

#[derive(Clone, Debug)]
pub(crate) struct Hermite {
    /// Echelon rows over the relevant Euclidean ring, entries above each
    /// pivot reduced, pivots unit-normalised.
    pub h: Matrix,
    /// Pivot column of each row of `h`.
    pub pivots: Vec<usize>,
}

pub(crate) fn hermite_normal_form(m: &Matrix) -> Hermite {
    let ring = m.ring.clone();
    assert!(ring.is_euclidean(), "hermite requires a Euclidean kind");
    let mut rows: Vec<Vec<Elem>> = (0..m.rows)
        .map(|i| m.row(i))
        .filter(|r| r.iter().any(|e| !ring.is_zero(e)))
        .collect();
    let cols = m.cols;
    let mut h: Vec<Vec<Elem>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for col in 0..cols {
        // gather rows with support starting at `col`
        loop {
            let mut active: Vec<usize> = (0..rows.len())
                .filter(|&i| !ring.is_zero(&rows[i][col]))
                .collect();
            if active.is_empty() {
                break;
            }
            if active.len() == 1 {
                let r = rows.remove(active[0]);
                insert_pivot_row(&ring, &mut h, &mut pivots, r, col);
                break;
            }
            // reduce the pair with the two smallest norms
            active.sort_by_key(|&i| ring.euclid_norm(&rows[i][col]).expect("nonzero"));
            let (a, b) = (active[0], active[1]);
            let (q, _) = ring.divrem(&rows[b][col], &rows[a][col]).expect("euclidean");
            for j in 0..cols {
                let t = ring.mul(&q, &rows[a][j]);
                rows[b][j] = ring.sub(&rows[b][j], &t);
            }
            if rows[b].iter().all(|e| ring.is_zero(e)) {
                rows.remove(b);
            }
        }
        // rows with no support at or before this column remain
    }
    // reduce entries above each pivot
    let hm = reduce_above(&ring, h, &pivots, cols);
    Hermite { h: hm, pivots }
}

fn insert_pivot_row(
    ring: &Ring,
    h: &mut Vec<Vec<Elem>>,
    pivots: &mut Vec<usize>,
    mut row: Vec<Elem>,
    col: usize,
) {
    let (unit, _) = ring.unit_normalize(&row[col]);
    if !ring.is_one(&unit) {
        for e in row.iter_mut() {
            *e = ring.mul(&unit, e);
        }
    }
    h.push(row);
    pivots.push(col);
}

fn reduce_above(ring: &Ring, mut h: Vec<Vec<Elem>>, pivots: &[usize], cols: usize) -> Matrix {
    for i in (0..h.len()).rev() {
        let pc = pivots[i];
        let pivot = h[i][pc].clone();
        for k in 0..i {
            let (q, _) = ring.divrem(&h[k][pc], &pivot).expect("euclidean");
            if ring.is_zero(&q) {
                continue;
            }
            for j in 0..cols {
                let t = ring.mul(&q, &h[i][j]);
                h[k][j] = ring.sub(&h[k][j], &t);
            }
        }
    }
    let rows = h.len();
    Matrix::from_fn(ring.clone(), rows, cols, |i, j| h[i][j].clone())
}

struct FormCache<T> {
    map: Mutex<HashMap<Matrix, std::sync::Arc<T>>>,
}

impl<T> FormCache<T> {
    fn get_or_compute(&self, m: &Matrix, compute: impl FnOnce(&Matrix) -> T) -> std::sync::Arc<T> {
        let mut map = self.map.lock().unwrap();
        if let Some(h) = map.get(m) {
            return h.clone();
        }
        let h = std::sync::Arc::new(compute(m));
        map.insert(m.clone(), h.clone());
        h
    }
}

fn cached_hermite(m: &Matrix) -> std::sync::Arc<Hermite> {
    static CACHE: OnceLock<FormCache<Hermite>> = OnceLock::new();
    CACHE
        .get_or_init(|| FormCache { map: Mutex::new(HashMap::new()) })
        .get_or_compute(m, hermite_normal_form)
}

fn cached_snf(m: &Matrix) -> std::sync::Arc<SmithForm> {
    static CACHE: OnceLock<FormCache<SmithForm>> = OnceLock::new();
    CACHE
        .get_or_init(|| FormCache { map: Mutex::new(HashMap::new()) })
        .get_or_compute(m, snf_euclidean)
}

/// Prepared canonical-form reducer modulo a fixed row span.  Building
/// one pays for the Hermite form (shared through the cache above);
/// each reduction afterwards is the pivot sweep only.
#[derive(Clone, Debug)]
pub(crate) struct RowReducer {
    ring: Ring,
    cover: Ring,
    cols: usize,
    h: Option<std::sync::Arc<Hermite>>,
}

impl RowReducer {
    pub(crate) fn new(ring: &Ring, cols: usize, rels: &Matrix) -> Self {
        assert!(rels.cols == cols || rels.rows == 0, "reducer shape");
        if ring.is_euclidean() {
            let h = if rels.rows == 0 { None } else { Some(cached_hermite(rels)) };
            return RowReducer { ring: ring.clone(), cover: ring.clone(), cols, h };
        }
        let cover = ring.cover();
        let modulus = ring.cover_modulus().expect("quotient kind");
        let lifted = rels.map_ring(&cover, |e| ring.lift(e));
        let slack = Matrix::identity(cover.clone(), cols).scale(&modulus);
        let tall = if lifted.rows == 0 {
            slack
        } else {
            lifted.vstack(&slack).expect("shapes")
        };
        RowReducer { ring: ring.clone(), cover, cols, h: Some(cached_hermite(&tall)) }
    }

    pub(crate) fn reduce(&self, x: &[Elem]) -> Vec<Elem> {
        assert_eq!(x.len(), self.cols, "row length");
        let euclid = self.ring.is_euclidean();
        let mut v: Vec<Elem> = if euclid {
            x.to_vec()
        } else {
            x.iter().map(|e| self.ring.lift(e)).collect()
        };
        if let Some(h) = &self.h {
            let cover = &self.cover;
            for (i, &pc) in h.pivots.iter().enumerate() {
                let (q, _) = cover.divrem(&v[pc], h.h.at(i, pc)).expect("euclidean");
                if cover.is_zero(&q) {
                    continue;
                }
                for j in 0..self.cols {
                    let t = cover.mul(&q, h.h.at(i, j));
                    v[j] = cover.sub(&v[j], &t);
                }
            }
        }
        if euclid {
            v
        } else {
            v.into_iter().map(|e| self.ring.reduce(&e)).collect()
        }
    }

    pub(crate) fn is_zero(&self, x: &[Elem]) -> bool {
        self.reduce(x).iter().all(|e| self.ring.is_zero(e))
    }
}

/// Canonical representative of `x + rowspan(rels)`; two rows are congruent
/// mod the row span iff their canonical representatives coincide.
pub fn reduce_row_mod(ring: &Ring, x: &[Elem], rels: &Matrix) -> Vec<Elem> {
    RowReducer::new(ring, x.len(), rels).reduce(x)
}

/// Membership of a row in the row span of `rels`.
pub fn row_in_span(ring: &Ring, x: &[Elem], rels: &Matrix) -> bool {
    reduce_row_mod(ring, x, rels).iter().all(|e| ring.is_zero(e))
}

/// Canonical invariant-factor list of the module `R^gens / rowspan(rels)`,
/// expressed in the Euclidean cover: unit factors dropped, one `0` per free
/// rank, nonzero factors unit-normalised and in divisibility order.
pub fn invariant_factors(ring: &Ring, gens: usize, rels: &Matrix) -> Result<Vec<Elem>> {
    let (cover, m) = if ring.is_euclidean() {
        (ring.clone(), rels.clone())
    } else {
        let cover = ring.cover();
        let modulus = ring.cover_modulus().expect("quotient kind");
        let lifted = rels.map_ring(&cover, |e| ring.lift(e));
        let slack = Matrix::identity(cover.clone(), gens).scale(&modulus);
        let m = if lifted.rows == 0 { slack } else { lifted.vstack(&slack)? };
        (cover, m)
    };
    if gens == 0 {
        return Ok(Vec::new());
    }
    if m.rows == 0 {
        return Ok(vec![cover.zero(); gens]);
    }
    let f = snf_euclidean(&m);
    let mut out = Vec::new();
    for i in 0..gens {
        let d = if i < m.rows.min(m.cols) { f.s.at(i, i).clone() } else { cover.zero() };
        let (_, norm) = cover.unit_normalize(&d);
        if cover.is_unit(&norm) {
            continue;
        }
        out.push(norm);
    }
    Ok(out)
}
