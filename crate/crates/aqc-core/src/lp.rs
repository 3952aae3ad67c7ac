//! Exact-rational linear programming: Delsarte bounds, the feasible
//! `(mk, mk')` region, the nine-constraint CSS-pair feasibility system, and
//! Farkas infeasibility certificates.
//!
//! Everything runs over [`Rat`] (arbitrary-precision rationals in canonical
//! reduced form). The solver is a two-phase tableau simplex with Bland's
//! anti-cycling rule, so every solve terminates and both outcomes are
//! re-verified exactly before being surfaced: a feasible witness satisfies
//! every row on re-substitution, an infeasibility certificate `(s1, s2)`
//! satisfies `s2 >= 0`, `M1^T s1 + M2^T s2 <= 0`, and `s1.r + s2.t > 0`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::code::krawtchouk;

/// Arbitrary-precision rational, canonical reduced form, denominator > 0.
pub type Rat = num_rational::BigRational;

pub fn rat_int(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

/// `base^exp` as a rational.
pub fn rat_pow(base: u32, exp: u32) -> Rat {
    Rat::from_integer(BigInt::from(base).pow(exp))
}

/// Parse `p`, `p/q`, or a decimal like `3.5` into a reduced rational.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().ok()?;
        let d: BigInt = den.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rat::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let neg = int.trim_start().starts_with('-');
        let i: BigInt = int.parse().ok()?;
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let f: BigInt = frac.parse().ok()?;
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let num = if neg { &i * &scale - f } else { &i * &scale + f };
        return Some(Rat::new(num, scale));
    }
    let n: BigInt = s.parse().ok()?;
    Some(Rat::from_integer(n))
}

/// Render a rational as `p` or `p/q`.
pub fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LpError {
    #[error("parameter out of range")]
    BadRange,
    #[error("inconsistent problem dimensions")]
    InconsistentDims,
    #[error("certificate dimensions do not match the problem")]
    DimMismatch,
    #[error("objective is unbounded")]
    Unbounded,
}

/// Parameters a CSS feasibility system was built from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CssMeta {
    pub n: usize,
    pub q: u32,
    pub r: u32,
    pub m: u32,
    pub mk: u32,
    pub mkp: u32,
    pub dx: usize,
    pub dz: usize,
}

/// A system `M1 x = r, M2 x >= t, x >= 0` over exact rationals, with an
/// optional linear objective to maximize.
#[derive(Debug, Clone)]
pub struct LpProblem {
    pub eq: Vec<Vec<Rat>>,
    pub eq_rhs: Vec<Rat>,
    pub ineq: Vec<Vec<Rat>>,
    pub ineq_rhs: Vec<Rat>,
    pub objective: Option<Vec<Rat>>,
    pub meta: Option<CssMeta>,
}

impl LpProblem {
    pub fn num_vars(&self) -> usize {
        self.eq
            .first()
            .or_else(|| self.ineq.first())
            .map(|r| r.len())
            .unwrap_or(0)
    }

    fn check_shape(&self) -> Result<(), LpError> {
        let nv = self.num_vars();
        if self.eq.iter().any(|r| r.len() != nv)
            || self.ineq.iter().any(|r| r.len() != nv)
            || self.eq.len() != self.eq_rhs.len()
            || self.ineq.len() != self.ineq_rhs.len()
        {
            return Err(LpError::InconsistentDims);
        }
        Ok(())
    }
}

/// Farkas certificate of infeasibility.
#[derive(Debug, Clone, PartialEq)]
pub struct FarkasCertificate {
    pub s1: Vec<Rat>,
    pub s2: Vec<Rat>,
}

#[derive(Debug, Clone)]
pub enum LpOutcome {
    Feasible { witness: Vec<Rat> },
    Infeasible { cert: FarkasCertificate },
}

impl LpOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, LpOutcome::Feasible { .. })
    }
}

/// `sum_i s1_i M1_i + sum_i s2_i M2_i` as a row vector.
pub fn combined_row(prob: &LpProblem, s1: &[Rat], s2: &[Rat]) -> Result<Vec<Rat>, LpError> {
    if s1.len() != prob.eq.len() || s2.len() != prob.ineq.len() {
        return Err(LpError::DimMismatch);
    }
    let nv = prob.num_vars();
    let mut out = vec![Rat::zero(); nv];
    for (c, row) in s1.iter().zip(&prob.eq) {
        for (o, v) in out.iter_mut().zip(row) {
            *o += c * v;
        }
    }
    for (c, row) in s2.iter().zip(&prob.ineq) {
        for (o, v) in out.iter_mut().zip(row) {
            *o += c * v;
        }
    }
    Ok(out)
}

/// Exact check of the Farkas conditions: `s2 >= 0`, the combined transposed
/// action is `<= 0` componentwise, and `s1.r + s2.t > 0`.
pub fn verify_certificate(prob: &LpProblem, s1: &[Rat], s2: &[Rat]) -> Result<bool, LpError> {
    let combined = combined_row(prob, s1, s2)?;
    if s2.iter().any(|v| v.is_negative()) {
        return Ok(false);
    }
    if combined.iter().any(|v| v.is_positive()) {
        return Ok(false);
    }
    let mut gain = Rat::zero();
    for (c, b) in s1.iter().zip(&prob.eq_rhs) {
        gain += c * b;
    }
    for (c, b) in s2.iter().zip(&prob.ineq_rhs) {
        gain += c * b;
    }
    Ok(gain.is_positive())
}

/// Exact check that `x >= 0` satisfies every row of the system.
pub fn verify_witness(prob: &LpProblem, x: &[Rat]) -> bool {
    if x.len() != prob.num_vars() || x.iter().any(|v| v.is_negative()) {
        return false;
    }
    let dot = |row: &[Rat]| -> Rat {
        row.iter().zip(x).map(|(a, b)| a * b).sum()
    };
    prob.eq.iter().zip(&prob.eq_rhs).all(|(row, b)| &dot(row) == b)
        && prob.ineq.iter().zip(&prob.ineq_rhs).all(|(row, b)| dot(row) >= *b)
}

// ---------------------------------------------------------------------------
// Simplex
// ---------------------------------------------------------------------------

struct Tableau {
    /// rows x (ncols + 1); last column is the rhs.
    rows: Vec<Vec<Rat>>,
    basis: Vec<usize>,
    zrow: Vec<Rat>,
    zval: Rat,
    ncols: usize,
}

impl Tableau {
    fn rebuild_zrow(&mut self, cost: &[Rat]) {
        self.zrow = cost.to_vec();
        self.zval = Rat::zero();
        for (i, row) in self.rows.iter().enumerate() {
            let cb = &cost[self.basis[i]];
            if cb.is_zero() {
                continue;
            }
            for j in 0..self.ncols {
                let t = cb * &row[j];
                self.zrow[j] -= t;
            }
            self.zval += cb * &row[self.ncols];
        }
    }

    fn pivot(&mut self, lr: usize, e: usize) {
        let p = self.rows[lr][e].clone();
        for v in self.rows[lr].iter_mut() {
            *v /= &p;
        }
        let pivot_row = self.rows[lr].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != lr && !row[e].is_zero() {
                let f = row[e].clone();
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    *v -= &f * pv;
                }
            }
        }
        if !self.zrow[e].is_zero() {
            let f = self.zrow[e].clone();
            for (v, pv) in self.zrow.iter_mut().zip(&pivot_row[..self.ncols]) {
                *v -= &f * pv;
            }
            self.zval += f * &pivot_row[self.ncols];
        }
        self.basis[lr] = e;
    }

    /// Minimize with Bland's rule; `allowed` masks the columns that may enter.
    /// Returns false on unboundedness.
    fn run(&mut self, allowed: &[bool]) -> bool {
        loop {
            let Some(e) = (0..self.ncols).find(|&j| allowed[j] && self.zrow[j].is_negative())
            else {
                return true;
            };
            let mut leave: Option<(usize, Rat)> = None;
            for i in 0..self.rows.len() {
                if self.rows[i][e].is_positive() {
                    let ratio = &self.rows[i][self.ncols] / &self.rows[i][e];
                    let better = match &leave {
                        None => true,
                        Some((li, lratio)) => {
                            ratio < *lratio
                                || (ratio == *lratio && self.basis[i] < self.basis[*li])
                        }
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            match leave {
                Some((lr, _)) => self.pivot(lr, e),
                None => return false,
            }
        }
    }
}

/// Phase-one simplex over exact rationals. Always terminates with a verified
/// outcome: an exact witness or an exact Farkas certificate.
pub fn solve_feasibility(prob: &LpProblem) -> LpOutcome {
    let (outcome, _) = solve_inner(prob, false).expect("phase one cannot be unbounded");
    outcome
}

/// Feasibility plus maximization of `prob.objective` when present.
pub fn solve_max(prob: &LpProblem) -> Result<(LpOutcome, Option<Rat>), LpError> {
    solve_inner(prob, true)
}

fn solve_inner(prob: &LpProblem, maximize: bool) -> Result<(LpOutcome, Option<Rat>), LpError> {
    prob.check_shape().map_err(|_| LpError::InconsistentDims)?;
    let nv = prob.num_vars();
    let n_eq = prob.eq.len();
    let n_ineq = prob.ineq.len();
    let nrows = n_eq + n_ineq;
    let n_surplus = n_ineq;
    let ncols = nv + n_surplus + nrows;

    // Rows: equalities first, then inequalities with surplus columns
    // (a.x - w = b). Flip signs where needed so every rhs is nonnegative.
    let mut rows = Vec::with_capacity(nrows);
    let mut signs = Vec::with_capacity(nrows);
    for (idx, (row, b)) in prob
        .eq
        .iter()
        .zip(&prob.eq_rhs)
        .chain(prob.ineq.iter().zip(&prob.ineq_rhs))
        .enumerate()
    {
        let flip = b.is_negative();
        let s = if flip { -Rat::one() } else { Rat::one() };
        let mut full = vec![Rat::zero(); ncols + 1];
        for (j, v) in row.iter().enumerate() {
            full[j] = &s * v;
        }
        if idx >= n_eq {
            full[nv + (idx - n_eq)] = -&s;
        }
        full[nv + n_surplus + idx] = Rat::one();
        full[ncols] = &s * b;
        rows.push(full);
        signs.push(s);
    }

    let basis: Vec<usize> = (0..nrows).map(|i| nv + n_surplus + i).collect();
    let mut t = Tableau {
        rows,
        basis,
        zrow: vec![],
        zval: Rat::zero(),
        ncols,
    };

    // Phase 1: minimize the artificial sum.
    let mut cost = vec![Rat::zero(); ncols];
    for c in cost.iter_mut().skip(nv + n_surplus) {
        *c = Rat::one();
    }
    t.rebuild_zrow(&cost);
    let allowed = vec![true; ncols];
    let bounded = t.run(&allowed);
    debug_assert!(bounded, "phase one is bounded below by zero");

    if t.zval.is_positive() {
        // Infeasible: duals y_i = 1 - reduced cost of artificial i, then undo
        // the row sign normalization.
        let mut s_all = Vec::with_capacity(nrows);
        for i in 0..nrows {
            let y = Rat::one() - &t.zrow[nv + n_surplus + i];
            s_all.push(&signs[i] * y);
        }
        let s1 = s_all[..n_eq].to_vec();
        let s2 = s_all[n_eq..].to_vec();
        debug_assert_eq!(verify_certificate(prob, &s1, &s2), Ok(true));
        return Ok((
            LpOutcome::Infeasible { cert: FarkasCertificate { s1, s2 } },
            None,
        ));
    }

    // Drive any artificial still basic at zero out of the basis; a row with
    // no nonzero structural/surplus entry left is redundant and is dropped.
    // Without this, phase 2 could re-grow an artificial through a pivot.
    let art_start = nv + n_surplus;
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= art_start {
            if let Some(e) = (0..art_start).find(|&j| !t.rows[i][j].is_zero()) {
                t.pivot(i, e);
                i += 1;
            } else {
                t.rows.remove(i);
                t.basis.remove(i);
            }
        } else {
            i += 1;
        }
    }

    let extract_witness = |t: &Tableau| -> Vec<Rat> {
        let mut x = vec![Rat::zero(); nv];
        for (i, &b) in t.basis.iter().enumerate() {
            if b < nv {
                x[b] = t.rows[i][ncols].clone();
            }
        }
        x
    };

    let objective_value = if maximize && prob.objective.is_some() {
        // Phase 2: artificials may not re-enter.
        let obj = prob.objective.as_ref().unwrap();
        let mut cost2 = vec![Rat::zero(); ncols];
        for (j, c) in obj.iter().enumerate() {
            cost2[j] = -c.clone();
        }
        t.rebuild_zrow(&cost2);
        let mut allowed2 = vec![true; ncols];
        for a in allowed2.iter_mut().skip(nv + n_surplus) {
            *a = false;
        }
        if !t.run(&allowed2) {
            return Err(LpError::Unbounded);
        }
        Some(-t.zval.clone())
    } else {
        None
    };

    let witness = extract_witness(&t);
    debug_assert!(verify_witness(prob, &witness));
    Ok((LpOutcome::Feasible { witness }, objective_value))
}

// ---------------------------------------------------------------------------
// Delsarte bounds and the feasible region
// ---------------------------------------------------------------------------

/// LP maximum of `sum W_i` subject to `W >= 0`, `W_0 = 1`, `W_s = 0` for
/// `1 <= s <= d-1`, `K W >= 0`, and, when `dual_d` is given, `(K W)_i = 0`
/// for `1 <= i <= dual_d - 1`.
pub fn delsarte_max(n: usize, q: u32, d: usize, dual_d: Option<usize>) -> Result<Rat, LpError> {
    if d < 1 || d > n || q < 2 {
        return Err(LpError::BadRange);
    }
    if let Some(dd) = dual_d {
        if dd < 1 || dd > n {
            return Err(LpError::BadRange);
        }
    }
    let nv = n + 1;
    let kraw = |j: usize| -> Vec<Rat> {
        (0..nv)
            .map(|i| Rat::from_integer(krawtchouk(n, q, j, i).unwrap()))
            .collect()
    };
    let mut eq = Vec::new();
    let mut eq_rhs = Vec::new();
    let unit = |j: usize| {
        let mut row = vec![Rat::zero(); nv];
        row[j] = Rat::one();
        row
    };
    eq.push(unit(0));
    eq_rhs.push(Rat::one());
    for s in 1..d {
        eq.push(unit(s));
        eq_rhs.push(Rat::zero());
    }
    let dd = dual_d.unwrap_or(1);
    for i in 1..dd {
        eq.push(kraw(i));
        eq_rhs.push(Rat::zero());
    }
    let mut ineq = Vec::new();
    let mut ineq_rhs = Vec::new();
    for j in 0..=n {
        if j >= 1 && j < dd {
            continue; // already pinned to zero
        }
        ineq.push(kraw(j));
        ineq_rhs.push(Rat::zero());
    }
    let prob = LpProblem {
        eq,
        eq_rhs,
        ineq,
        ineq_rhs,
        objective: Some(vec![Rat::one(); nv]),
        meta: None,
    };
    match solve_max(&prob)? {
        (LpOutcome::Feasible { .. }, Some(v)) => Ok(v),
        _ => unreachable!("the zero-code distribution is always feasible"),
    }
}

/// `floor(log_r(delsarte_max))`, compared exactly against powers of `r`.
pub fn dlog(n: usize, q: u32, r: u32, d: usize, dual_d: Option<usize>) -> Result<u32, LpError> {
    if r < 2 {
        return Err(LpError::BadRange);
    }
    let max = delsarte_max(n, q, d, dual_d)?;
    let mut e = 0u32;
    let mut next = Rat::from_integer(BigInt::from(r));
    while next <= max {
        e += 1;
        next *= Rat::from_integer(BigInt::from(r));
    }
    Ok(e)
}

/// Integer m-th root of q, when exact.
fn integer_root(q: u32, m: u32) -> Option<u32> {
    (2..=q).find(|&r| r.checked_pow(m) == Some(q))
}

/// All integer points `(mk, mk')` with `mk >= 1`, `0 < k' < n - k`,
/// `m(k + k') <= alpha`, and `mk' >= mn - beta`, where
/// `alpha = D(dx, dz)` and `beta = D(dz, dx)` over `F_r`-dimensions.
pub fn feasible_region(
    n: usize,
    q: u32,
    m: u32,
    dx: usize,
    dz: usize,
) -> Result<Vec<(u32, u32)>, LpError> {
    if dx < 2 || dz < 2 || dx > n || dz > n || m < 1 {
        return Err(LpError::BadRange);
    }
    let r = if m == 1 { q } else { integer_root(q, m).ok_or(LpError::BadRange)? };
    let alpha = dlog(n, q, r, dx, Some(dz))?;
    let beta = dlog(n, q, r, dz, Some(dx))?;
    let mn = m as u64 * n as u64;
    let mut pts = Vec::new();
    let low_kp = 1u64.max(mn.saturating_sub(beta as u64));
    for mk in 1..=alpha as u64 {
        for mkp in low_kp..=(alpha as u64).saturating_sub(mk) {
            if mk + mkp < mn {
                pts.push((mk as u32, mkp as u32));
            }
        }
    }
    Ok(pts)
}

/// The nine-constraint purity system for the tuple `(n, q, k, k', dx, dz)`
/// with `mk, mk'` integral, `A^perp`/`B^perp` eliminated through
/// `K^2 = q^n I`, and strict inequalities realized as a `strict_gap` margin.
#[allow(clippy::too_many_arguments)]
pub fn build_css_lp(
    n: usize,
    q: u32,
    m: u32,
    mk: u32,
    mkp: u32,
    dx: usize,
    dz: usize,
    strict_gap: &Rat,
) -> Result<LpProblem, LpError> {
    if dx < 1 || dz < 1 || dx > n || dz > n || mk < 1 || m < 1 {
        return Err(LpError::BadRange);
    }
    let r = if m == 1 { q } else { integer_root(q, m).ok_or(LpError::BadRange)? };
    let mn = m * n as u32;
    if mk + mkp > mn {
        return Err(LpError::InconsistentDims);
    }
    let nv = 2 * (n + 1);
    // q^{n-k'} = r^{mn - mk'} and q^{k+k'} = r^{mk + mk'}.
    let size_c2 = rat_pow(r, mn - mkp);
    let size_c1 = rat_pow(r, mk + mkp);

    let kraw_a = |j: usize, scale: &Rat| -> Vec<Rat> {
        let mut row = vec![Rat::zero(); nv];
        for i in 0..=n {
            row[i] = scale * Rat::from_integer(krawtchouk(n, q, j, i).unwrap());
        }
        row
    };
    let kraw_b = |j: usize, scale: &Rat| -> Vec<Rat> {
        let mut row = vec![Rat::zero(); nv];
        for i in 0..=n {
            row[n + 1 + i] = scale * Rat::from_integer(krawtchouk(n, q, j, i).unwrap());
        }
        row
    };
    let unit_a = |j: usize, scale: &Rat| {
        let mut row = vec![Rat::zero(); nv];
        row[j] = scale.clone();
        row
    };
    let unit_b = |j: usize, scale: &Rat| {
        let mut row = vec![Rat::zero(); nv];
        row[n + 1 + j] = scale.clone();
        row
    };
    let add = |a: &[Rat], b: &[Rat]| -> Vec<Rat> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    };
    let ones_a = || kraw_a(0, &Rat::one()); // K_0 row = all-ones over A
    let ones_b = || kraw_b(0, &Rat::one());

    let one = Rat::one();
    let neg = -Rat::one();

    let mut eq = Vec::new();
    let mut eq_rhs = Vec::new();
    let mut push_eq = |row: Vec<Rat>, rhs: Rat| {
        eq.push(row);
        eq_rhs.push(rhs);
    };
    // 1. A_0 = 1.
    push_eq(unit_a(0, &one), Rat::one());
    // 2. A_j = 0 below dz.
    for j in 1..dz {
        push_eq(unit_a(j, &one), Rat::zero());
    }
    // 3. (K A)_j = 0 below dx  (A^perp zeros).
    for j in 1..dx {
        push_eq(kraw_a(j, &one), Rat::zero());
    }
    // 4. B_0 = 1.
    push_eq(unit_b(0, &one), Rat::one());
    // 5. B_j = 0 below dx.
    for j in 1..dx {
        push_eq(unit_b(j, &one), Rat::zero());
    }
    // 6. (K B)_j = 0 below dz  (B^perp zeros).
    for j in 1..dz {
        push_eq(kraw_b(j, &one), Rat::zero());
    }
    // 7. sum A = q^{n-k'}, tied to B_0.
    push_eq(
        add(&kraw_a(0, &neg), &unit_b(0, &size_c2)),
        Rat::zero(),
    );
    // 8. B_j = A^perp_j below dx.
    for j in 1..dx {
        push_eq(add(&kraw_a(j, &neg), &unit_b(j, &size_c2)), Rat::zero());
    }
    // 9. sum B = q^{k+k'}, tied to A_0.
    {
        let mut row = unit_a(0, &size_c1);
        let nb = ones_b();
        for (v, w) in row.iter_mut().zip(&nb) {
            *v -= w;
        }
        push_eq(row, Rat::zero());
    }
    // 10. A_j = B^perp_j below dz.
    for j in 1..dz {
        push_eq(add(&unit_a(j, &size_c1), &kraw_b(j, &neg)), Rat::zero());
    }
    let _ = ones_a; // shape documented above

    let mut ineq = Vec::new();
    let mut ineq_rhs = Vec::new();
    let mut push_ineq = |row: Vec<Rat>, rhs: Rat| {
        ineq.push(row);
        ineq_rhs.push(rhs);
    };
    // A^perp_j >= 0 at and above dx.
    for j in dx..=n {
        push_ineq(kraw_a(j, &one), Rat::zero());
    }
    // B^perp_j >= 0 at and above dz.
    for j in dz..=n {
        push_ineq(kraw_b(j, &one), Rat::zero());
    }
    // B_j >= A^perp_j at and above dx, strict (by the gap) at dx.
    for j in dx..=n {
        let rhs = if j == dx { strict_gap * &size_c2 } else { Rat::zero() };
        push_ineq(add(&kraw_a(j, &neg), &unit_b(j, &size_c2)), rhs);
    }
    // A_j >= B^perp_j at and above dz, strict (by the gap) at dz.
    for j in dz..=n {
        let rhs = if j == dz { strict_gap * &size_c1 } else { Rat::zero() };
        push_ineq(add(&unit_a(j, &size_c1), &kraw_b(j, &neg)), rhs);
    }

    Ok(LpProblem {
        eq,
        eq_rhs,
        ineq,
        ineq_rhs,
        objective: None,
        meta: Some(CssMeta { n, q, r, m, mk, mkp, dx, dz }),
    })
}

/// Largest `k = mk/m` over the feasible region whose purity system is
/// feasible at the default strict gap of 1; `None` when nothing survives.
pub fn lp_bound_k(n: usize, q: u32, m: u32, dx: usize, dz: usize) -> Result<Option<Rat>, LpError> {
    lp_bound_k_with_gap(n, q, m, dx, dz, &Rat::one())
}

pub fn lp_bound_k_with_gap(
    n: usize,
    q: u32,
    m: u32,
    dx: usize,
    dz: usize,
    gap: &Rat,
) -> Result<Option<Rat>, LpError> {
    let mut pts = feasible_region(n, q, m, dx, dz)?;
    pts.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    let mut best: Option<u32> = None;
    for (mk, mkp) in pts {
        if best.is_some_and(|b| mk <= b) {
            continue;
        }
        let prob = build_css_lp(n, q, m, mk, mkp, dx, dz, gap)?;
        if solve_feasibility(&prob).is_feasible() {
            best = Some(mk);
        }
    }
    Ok(best.map(|mk| Rat::new(BigInt::from(mk), BigInt::from(m))))
}

/// On-disk certificate record; the Appendix fixture ships in this format.
/// `row_order` and `signs` document how the published presentation maps onto
/// the rows produced by [`build_css_lp`]; the stored `s1`/`s2` are already in
/// build order with build signs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertificateFile {
    pub n: usize,
    pub q: u32,
    pub k: String,
    pub kp: String,
    pub dx: usize,
    pub dz: usize,
    pub row_order: Vec<usize>,
    pub signs: Vec<i8>,
    pub s1: Vec<String>,
    pub s2: Vec<String>,
}

impl CertificateFile {
    pub fn s1_rats(&self) -> Option<Vec<Rat>> {
        self.s1.iter().map(|s| parse_rat(s)).collect()
    }
    pub fn s2_rats(&self) -> Option<Vec<Rat>> {
        self.s2.iter().map(|s| parse_rat(s)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_helpers() {
        assert_eq!(parse_rat("14/3").unwrap(), Rat::new(BigInt::from(14), BigInt::from(3)));
        assert_eq!(parse_rat("-3/4").unwrap(), Rat::new(BigInt::from(-3), BigInt::from(4)));
        assert_eq!(parse_rat("3.5").unwrap(), Rat::new(BigInt::from(7), BigInt::from(2)));
        assert_eq!(parse_rat("4").unwrap(), rat_int(4));
        assert!(parse_rat("1/0").is_none());
        assert_eq!(fmt_rat(&Rat::new(BigInt::from(6), BigInt::from(4))), "3/2");
        assert_eq!(fmt_rat(&rat_int(5)), "5");
        // Canonical reduced form with positive denominator.
        let r = Rat::new(BigInt::from(4), BigInt::from(-6));
        assert_eq!(r.numer(), &BigInt::from(-2));
        assert_eq!(r.denom(), &BigInt::from(3));
    }

    #[test]
    fn empty_constraint_set_is_feasible() {
        let prob = LpProblem {
            eq: vec![],
            eq_rhs: vec![],
            ineq: vec![],
            ineq_rhs: vec![],
            objective: None,
            meta: None,
        };
        assert!(solve_feasibility(&prob).is_feasible());
    }

    #[test]
    fn tiny_feasible_and_infeasible_systems() {
        // x1 + x2 = 1, x1 - x2 >= 0: feasible.
        let prob = LpProblem {
            eq: vec![vec![rat_int(1), rat_int(1)]],
            eq_rhs: vec![rat_int(1)],
            ineq: vec![vec![rat_int(1), rat_int(-1)]],
            ineq_rhs: vec![rat_int(0)],
            objective: None,
            meta: None,
        };
        match solve_feasibility(&prob) {
            LpOutcome::Feasible { witness } => assert!(verify_witness(&prob, &witness)),
            _ => panic!("expected feasible"),
        }
        // x1 + x2 = 1, -x1 - x2 >= 0 with x >= 0: infeasible.
        let prob = LpProblem {
            eq: vec![vec![rat_int(1), rat_int(1)]],
            eq_rhs: vec![rat_int(1)],
            ineq: vec![vec![rat_int(-1), rat_int(-1)]],
            ineq_rhs: vec![rat_int(0)],
            objective: None,
            meta: None,
        };
        match solve_feasibility(&prob) {
            LpOutcome::Infeasible { cert } => {
                assert_eq!(verify_certificate(&prob, &cert.s1, &cert.s2), Ok(true));
            }
            _ => panic!("expected infeasible"),
        }
    }

    #[test]
    fn simplex_maximization() {
        // max x1 + 2 x2 s.t. x1 + x2 <= 4 (as -x1 - x2 >= -4), x >= 0.
        let prob = LpProblem {
            eq: vec![],
            eq_rhs: vec![],
            ineq: vec![vec![rat_int(-1), rat_int(-1)]],
            ineq_rhs: vec![rat_int(-4)],
            objective: Some(vec![rat_int(1), rat_int(2)]),
            meta: None,
        };
        let (outcome, val) = solve_max(&prob).unwrap();
        assert!(outcome.is_feasible());
        assert_eq!(val.unwrap(), rat_int(8));
    }

    #[test]
    fn delsarte_trivial_and_paper_example() {
        // d = 1: the whole space is feasible, maximum q^n.
        assert_eq!(delsarte_max(4, 2, 1, None).unwrap(), rat_int(16));
        // The (7,4) example: d = 5 gives 40, d = 2 gives 4096.
        assert_eq!(delsarte_max(7, 4, 5, None).unwrap(), rat_int(40));
        assert_eq!(delsarte_max(7, 4, 2, None).unwrap(), rat_int(4096));
        assert!(delsarte_max(7, 4, 0, None).is_err());
        assert!(delsarte_max(7, 4, 8, None).is_err());
    }

    #[test]
    fn delsarte_monotone_in_d_and_dual_d() {
        let mut prev = delsarte_max(6, 2, 1, None).unwrap();
        for d in 2..=6 {
            let cur = delsarte_max(6, 2, d, None).unwrap();
            assert!(cur <= prev);
            prev = cur;
        }
        let loose = delsarte_max(6, 2, 3, Some(2)).unwrap();
        let tight = delsarte_max(6, 2, 3, Some(3)).unwrap();
        assert!(tight <= loose);
        assert!(loose <= delsarte_max(6, 2, 3, None).unwrap());
    }

    #[test]
    fn dlog_examples() {
        // Full space: d = 1 yields mn over F_r.
        assert_eq!(dlog(7, 4, 2, 1, None).unwrap(), 14);
        // alpha and beta of the (7,4) example.
        assert_eq!(dlog(7, 4, 2, 5, Some(2)).unwrap(), 5);
        assert_eq!(dlog(7, 4, 2, 2, Some(5)).unwrap(), 12);
    }

    #[test]
    fn region_examples() {
        let pts = feasible_region(7, 4, 2, 5, 2).unwrap();
        assert_eq!(pts.len(), 6);
        assert_eq!(pts, vec![(1, 2), (1, 3), (1, 4), (2, 2), (2, 3), (3, 2)]);
        let pts = feasible_region(6, 2, 1, 3, 2).unwrap();
        assert_eq!(pts, vec![(1, 1), (1, 2), (2, 1)]);
    }

    #[test]
    fn dlog_bounds_brute_force_binary_dimensions() {
        // For n <= 5, q = 2: dlog(d) upper-bounds the true maximum dimension
        // of a binary linear code with that minimum distance, found by brute
        // force over all generator spans.
        for n in 2..=5usize {
            let mut best = vec![0usize; n + 1]; // best[d] = max dim at minimum distance d
            // Enumerate spans by choosing k generators from nonzero vectors.
            fn span_min_weight(gens: &[u32], n: usize) -> Option<usize> {
                let k = gens.len();
                let mut min_w = usize::MAX;
                let mut seen = std::collections::HashSet::new();
                for mask in 0..1u32 << k {
                    let mut v = 0u32;
                    for (i, g) in gens.iter().enumerate() {
                        if mask >> i & 1 == 1 {
                            v ^= g;
                        }
                    }
                    seen.insert(v);
                    if v != 0 {
                        min_w = min_w.min(v.count_ones() as usize);
                    }
                }
                if seen.len() != 1 << k {
                    return None; // dependent generators
                }
                let _ = n;
                if min_w == usize::MAX {
                    None
                } else {
                    Some(min_w)
                }
            }
            let total = 1u32 << n;
            let mut stack: Vec<Vec<u32>> = vec![vec![]];
            while let Some(gens) = stack.pop() {
                if let Some(d) = span_min_weight(&gens, n) {
                    if gens.len() > best[d] {
                        best[d] = gens.len();
                    }
                }
                let start = gens.last().map(|&g| g + 1).unwrap_or(1);
                if gens.len() < n {
                    for g in start..total {
                        let mut next = gens.clone();
                        next.push(g);
                        stack.push(next);
                    }
                }
            }
            for d in 1..=n {
                if best[d] > 0 {
                    let bound = dlog(n, 2, 2, d, None).unwrap();
                    assert!(
                        best[d] as u32 <= bound,
                        "n={n} d={d}: brute {} > dlog {}",
                        best[d],
                        bound
                    );
                }
            }
        }
    }

    #[test]
    fn css_lp_shapes_match_appendix_dimensions() {
        let prob = build_css_lp(6, 2, 1, 2, 1, 3, 2, &Rat::zero()).unwrap();
        assert_eq!(prob.eq.len(), 13);
        assert_eq!(prob.ineq.len(), 18);
        assert_eq!(prob.num_vars(), 14);
        // r has ones exactly at the A_0 and B_0 rows.
        let ones: Vec<usize> = prob
            .eq_rhs
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, _)| i)
            .collect();
        assert_eq!(ones, vec![0, 4]);
    }

    #[test]
    fn css_lp_dichotomy_for_the_6_2_case() {
        let gap = Rat::one();
        for (mk, mkp, feasible) in [(1u32, 1u32, true), (1, 2, true), (2, 1, false)] {
            let prob = build_css_lp(6, 2, 1, mk, mkp, 3, 2, &gap).unwrap();
            let out = solve_feasibility(&prob);
            assert_eq!(out.is_feasible(), feasible, "point ({mk},{mkp})");
            match out {
                LpOutcome::Feasible { witness } => assert!(verify_witness(&prob, &witness)),
                LpOutcome::Infeasible { cert } => {
                    assert_eq!(verify_certificate(&prob, &cert.s1, &cert.s2), Ok(true));
                }
            }
        }
    }

    #[test]
    fn zero_gap_relaxation_is_weaker() {
        // Relaxing the strict gap to zero can only enlarge the feasible set.
        for (mk, mkp) in [(1u32, 1u32), (1, 2), (2, 1)] {
            let strict = build_css_lp(6, 2, 1, mk, mkp, 3, 2, &Rat::one()).unwrap();
            let weak = build_css_lp(6, 2, 1, mk, mkp, 3, 2, &Rat::zero()).unwrap();
            if solve_feasibility(&strict).is_feasible() {
                assert!(solve_feasibility(&weak).is_feasible());
            }
        }
    }

    #[test]
    fn lp_bound_examples() {
        assert_eq!(lp_bound_k(6, 2, 1, 3, 2).unwrap(), Some(rat_int(1)));
        // A pure [[4,2,2/2]]_2 pair exists (even-weight code against itself),
        // so the bound here is at least 1.
        assert!(lp_bound_k(4, 2, 1, 2, 2).unwrap() >= Some(rat_int(1)));
    }

    #[test]
    fn certificate_rejects_bad_vectors() {
        let prob = build_css_lp(6, 2, 1, 2, 1, 3, 2, &Rat::zero()).unwrap();
        let zeros1 = vec![Rat::zero(); prob.eq.len()];
        let zeros2 = vec![Rat::zero(); prob.ineq.len()];
        assert_eq!(verify_certificate(&prob, &zeros1, &zeros2), Ok(false));
        assert!(verify_certificate(&prob, &zeros1[1..], &zeros2).is_err());
    }
}
