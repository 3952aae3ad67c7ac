//! Group character codes `C_q(r, l; t)` over `(Z/tZ)^l`: the code of length
//! `t^l` cut out by character sums vanishing on all exponent tuples of norm
//! greater than `r`, together with the closed-form parameters, nesting, and
//! the derived asymmetric quantum code parameters.
//!
//! Tuples are indexed little-endian base `t`, and the character attached to
//! index `j` evaluates as `zeta^(<j, x> mod t)` for a fixed `zeta` of
//! multiplicative order `t`; `zeta = w^((q-1)/t)` deterministically.

use thiserror::Error;

use crate::aqc::{css_like, AqcError, AqcParams, NestedPair};
use crate::code::{Code, CodeError, InnerProductKind};
use crate::galois::{Field, FieldElement};
use crate::linalg;

/// Desk-scale cap on the code length `t^l` for explicit construction.
pub const MAX_GC_LENGTH: u64 = 1024;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GcError {
    #[error("no element of multiplicative order {t} in F_{q} (t must divide q - 1)")]
    InvalidOrderElement { t: u32, q: u32 },
    #[error("parameter out of range")]
    BadRange,
    #[error("length t^l = {0} exceeds the construction cap")]
    TooLong(u64),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Aqc(#[from] AqcError),
}

/// Parameters of one group character code.
#[derive(Debug, Clone)]
pub struct GcSpec {
    spec: Field,
    t: u32,
    l: u32,
    r: u32,
    zeta: FieldElement,
}

impl GcSpec {
    pub fn new(spec: Field, t: u32, l: u32, r: u32) -> Result<GcSpec, GcError> {
        if t < 2 || l < 1 {
            return Err(GcError::BadRange);
        }
        let q = spec.q();
        if (q - 1) % t != 0 {
            return Err(GcError::InvalidOrderElement { t, q });
        }
        if r >= l * (t - 1) {
            return Err(GcError::BadRange);
        }
        let len = (t as u64).checked_pow(l).filter(|&v| v <= MAX_GC_LENGTH);
        let Some(_) = len else {
            return Err(GcError::TooLong((t as u64).saturating_pow(l)));
        };
        let zeta = spec.gen_pow(((q - 1) / t) as u64);
        debug_assert_eq!(spec.pow(zeta, t), FieldElement::ONE);
        debug_assert!((1..t).all(|s| spec.pow(zeta, s) != FieldElement::ONE));
        Ok(GcSpec { spec, t, l, r, zeta })
    }

    pub fn field(&self) -> &Field {
        &self.spec
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn zeta(&self) -> FieldElement {
        self.zeta
    }

    /// Code length `t^l`.
    pub fn n(&self) -> usize {
        (self.t as u64).pow(self.l) as usize
    }

    fn digits(&self, mut j: u64) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.l as usize);
        for _ in 0..self.l {
            out.push((j % self.t as u64) as u32);
            j /= self.t as u64;
        }
        out
    }

    fn norm(&self, j: u64) -> u32 {
        self.digits(j).iter().sum()
    }

    /// The explicit code: the null space of the character matrix restricted
    /// to rows `x` with `||x|| > r`.
    pub fn gc_code(&self) -> Result<Code, GcError> {
        let n = self.n();
        let spec = &self.spec;
        let mut rows = Vec::new();
        for x in 0..n as u64 {
            if self.norm(x) <= self.r {
                continue;
            }
            let xd = self.digits(x);
            let mut row = Vec::with_capacity(n);
            for j in 0..n as u64 {
                let jd = self.digits(j);
                let dot: u64 = jd
                    .iter()
                    .zip(&xd)
                    .map(|(&a, &b)| (a as u64 * b as u64) % self.t as u64)
                    .sum();
                row.push(spec.pow(self.zeta, (dot % self.t as u64) as u32));
            }
            rows.push(row);
        }
        let ns = linalg::null_space(spec, rows, n);
        Ok(Code::from_fq_gens(spec.clone(), n, ns)?)
    }

    /// Closed-form parameters `[t^l, k_l(r), (t-b) t^(l-1-a)]` with
    /// `r = a(t-1) + b`, `0 <= b <= t-2`. The dimension counts the lattice
    /// points `{a : ||a|| <= r}` directly.
    pub fn gc_params(&self) -> (usize, usize, usize) {
        let n = self.n();
        let k = count_norm_at_most(self.t, self.l, self.r);
        let d = distance_formula(self.t, self.l, self.r);
        (n, k, d)
    }
}

/// `|{a in (Z/tZ)^l : ||a|| <= r}|` by dynamic programming.
pub fn count_norm_at_most(t: u32, l: u32, r: u32) -> usize {
    let rmax = r as usize;
    let mut dp = vec![0u64; rmax + 1];
    dp[0] = 1;
    for _ in 0..l {
        let mut next = vec![0u64; rmax + 1];
        for (s, &c) in dp.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for d in 0..t as usize {
                if s + d <= rmax {
                    next[s + d] += c;
                }
            }
        }
        dp = next;
    }
    dp.iter().sum::<u64>() as usize
}

fn distance_formula(t: u32, l: u32, r: u32) -> usize {
    let a = r / (t - 1);
    let b = r % (t - 1);
    ((t - b) as u64 * (t as u64).pow(l - 1 - a)) as usize
}

/// Asymmetric quantum code from the nested pair
/// `C_q(r1, l; t) <= C_q(r2, l; t)`: dimension `k_l(r2) - k_l(r1)`, with
/// `d2` from `r2` and `d1` from `l(t-1) - 1 - r1`. Nesting of the two codes
/// is verified explicitly on the constructed pair.
pub fn gc_aqc(spec: &Field, r1: u32, r2: u32, l: u32, t: u32) -> Result<AqcParams, GcError> {
    if r1 > r2 {
        return Err(GcError::BadRange);
    }
    let g1 = GcSpec::new(spec.clone(), t, l, r1)?;
    let g2 = GcSpec::new(spec.clone(), t, l, r2)?;
    let inner = g1.gc_code()?;
    let outer = g2.gc_code()?;
    if !Code::is_nested(&inner, &outer)? {
        return Err(GcError::BadRange);
    }
    let k = count_norm_at_most(t, l, r2) - count_norm_at_most(t, l, r1);
    let d2 = distance_formula(t, l, r2);
    let d1 = distance_formula(t, l, l * (t - 1) - 1 - r1);
    // The CSS pair: C1 = inner^perp, C2 = outer.
    let pair = NestedPair::from_inner(inner, outer, InnerProductKind::Euclidean)?;
    let params = css_like(&pair)?;
    let mut expect_dz = d2;
    let mut expect_dx = d1;
    if expect_dz < expect_dx {
        std::mem::swap(&mut expect_dz, &mut expect_dx);
    }
    debug_assert_eq!(params.k, crate::lp::rat_int(k as i64));
    debug_assert_eq!((params.dz, params.dx), (expect_dz, expect_dx));
    Ok(params)
}
