//! `F_r`-linear codes inside `F_q^n`: weight distributions, minimum
//! distances, duals under the four inner products, nesting, set-difference
//! weights, and the Krawtchouk/MacWilliams transform layer.
//!
//! A [`Code`] is stored as a canonical (RREF) `F_r`-basis of its expansion
//! into `F_r^(mn)`; all queries are exact. Weight distributions of codes too
//! large to enumerate are recovered from the trace-Euclidean dual through
//! the MacWilliams identity, which holds for every `F_r`-linear code.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::galois::{Field, FieldElement, FieldError};
use crate::linalg;
use crate::lp::Rat;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error("vector lengths do not match")]
    LengthMismatch,
    #[error("inner product kind is not valid for this field")]
    InvalidKindForField,
    #[error("code too large to enumerate (cap {cap})")]
    CodeTooLarge { cap: u64 },
    #[error("code has fewer than two words")]
    TrivialCode,
    #[error("codes are not nested")]
    NotNested,
    #[error("codes are equal")]
    EqualCodes,
    #[error("vector already contained in the code")]
    AlreadyContained,
    #[error("distribution size mismatch: claimed {claimed}, summed {summed}")]
    SizeMismatch { claimed: String, summed: String },
    #[error("index out of range")]
    OutOfRange,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Default cap on the number of codewords an enumeration may visit,
/// overridable through the `AQC_ENUM_CAP` environment variable.
pub const DEFAULT_ENUM_CAP: u64 = 1 << 24;

pub fn enum_cap() -> u64 {
    static CAP: OnceLock<u64> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var("AQC_ENUM_CAP")
            .ok()
            .and_then(|s| s.parse().ok())
            .unwrap_or(DEFAULT_ENUM_CAP)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum InnerProductKind {
    #[serde(rename = "E")]
    Euclidean,
    #[serde(rename = "TrE")]
    TraceEuclidean,
    #[serde(rename = "H")]
    Hermitian,
    #[serde(rename = "TrH")]
    TraceHermitian,
}

impl InnerProductKind {
    pub fn label(self) -> &'static str {
        match self {
            InnerProductKind::Euclidean => "E",
            InnerProductKind::TraceEuclidean => "TrE",
            InnerProductKind::Hermitian => "H",
            InnerProductKind::TraceHermitian => "TrH",
        }
    }

    pub fn parse(s: &str) -> Option<InnerProductKind> {
        match s {
            "E" => Some(InnerProductKind::Euclidean),
            "TrE" => Some(InnerProductKind::TraceEuclidean),
            "H" => Some(InnerProductKind::Hermitian),
            "TrH" => Some(InnerProductKind::TraceHermitian),
            _ => None,
        }
    }

    /// Hermitian forms need a quadratic extension.
    pub fn valid_for(self, spec: &Field) -> bool {
        match self {
            InnerProductKind::Euclidean | InnerProductKind::TraceEuclidean => true,
            InnerProductKind::Hermitian | InnerProductKind::TraceHermitian => spec.m() == 2,
        }
    }

    /// Trace forms are `F_r`-valued; the plain forms are `F_q`-valued.
    pub fn is_trace_form(self) -> bool {
        matches!(self, InnerProductKind::TraceEuclidean | InnerProductKind::TraceHermitian)
    }
}

impl std::fmt::Display for InnerProductKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// Inner product of `u` and `v` under `kind`. The trace forms land in `F_r`;
/// for odd `q = r^2` the trace Hermitian form carries the skew twist `alpha`.
pub fn inner_product(
    spec: &Field,
    u: &[FieldElement],
    v: &[FieldElement],
    kind: InnerProductKind,
) -> Result<FieldElement, CodeError> {
    if u.len() != v.len() {
        return Err(CodeError::LengthMismatch);
    }
    if !kind.valid_for(spec) {
        return Err(CodeError::InvalidKindForField);
    }
    let mut acc = FieldElement::ZERO;
    match kind {
        InnerProductKind::Euclidean | InnerProductKind::TraceEuclidean => {
            for (&a, &b) in u.iter().zip(v) {
                acc = spec.add(acc, spec.mul(a, b));
            }
            if kind == InnerProductKind::TraceEuclidean {
                acc = spec.trace(acc);
            }
        }
        InnerProductKind::Hermitian | InnerProductKind::TraceHermitian => {
            for (&a, &b) in u.iter().zip(v) {
                acc = spec.add(acc, spec.mul(a, spec.conj(b)?));
            }
            if kind == InnerProductKind::TraceHermitian {
                if spec.p() != 2 {
                    let alpha = spec.find_skew_alpha()?;
                    acc = spec.mul(alpha, acc);
                }
                acc = spec.trace(acc);
            }
        }
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// Weight distributions
// ---------------------------------------------------------------------------

/// The integer sequence `A_0..A_n` counting codewords by Hamming weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightDistribution {
    counts: Vec<BigUint>,
}

impl WeightDistribution {
    pub fn new(counts: Vec<BigUint>) -> WeightDistribution {
        WeightDistribution { counts }
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    pub fn n(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }

    /// Smallest positive weight with a nonzero count.
    pub fn min_weight(&self) -> Option<usize> {
        (1..self.counts.len()).find(|&i| !self.counts[i].is_zero())
    }
}

/// Exact Krawtchouk polynomial value
/// `K_j^{n,q}(i) = sum_l (-1)^l (q-1)^(j-l) C(i,l) C(n-i,j-l)`.
pub fn krawtchouk(n: usize, q: u32, j: usize, i: usize) -> Result<BigInt, CodeError> {
    if j > n || i > n {
        return Err(CodeError::OutOfRange);
    }
    let binom = |top: usize, k: usize| -> BigInt {
        if k > top {
            return BigInt::zero();
        }
        let mut acc = BigInt::one();
        for t in 0..k {
            acc = acc * BigInt::from(top - t) / BigInt::from(t + 1);
        }
        acc
    };
    let qm1 = BigInt::from(q - 1);
    let mut acc = BigInt::zero();
    for l in 0..=j {
        let term = qm1.pow((j - l) as u32) * binom(i, l) * binom(n - i, j - l);
        if l % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc)
}

/// The full `(n+1) x (n+1)` Krawtchouk matrix `K[j][i]`.
pub fn krawtchouk_matrix(n: usize, q: u32) -> Vec<Vec<BigInt>> {
    (0..=n)
        .map(|j| (0..=n).map(|i| krawtchouk(n, q, j, i).unwrap()).collect())
        .collect()
}

/// MacWilliams transform `A'_j = (1/size) * sum_i A_i K_j(i)` as exact
/// rationals. When `A` is the distribution of an actual `F_r`-linear code and
/// `size = |C|`, every entry is a nonnegative integer.
pub fn macwilliams_transform(
    counts: &[BigUint],
    size: &BigUint,
    n: usize,
    q: u32,
) -> Result<Vec<Rat>, CodeError> {
    if counts.len() != n + 1 {
        return Err(CodeError::OutOfRange);
    }
    let summed: BigUint = counts.iter().sum();
    if &summed != size {
        return Err(CodeError::SizeMismatch {
            claimed: size.to_string(),
            summed: summed.to_string(),
        });
    }
    let size_int = BigInt::from(size.clone());
    let mut out = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let mut acc = BigInt::zero();
        for (i, a) in counts.iter().enumerate() {
            if !a.is_zero() {
                acc += BigInt::from(a.clone()) * krawtchouk(n, q, j, i)?;
            }
        }
        out.push(Rat::new(acc, size_int.clone()));
    }
    Ok(out)
}

/// Check integrality and nonnegativity of a transformed distribution.
pub fn rationals_to_distribution(values: &[Rat]) -> Option<WeightDistribution> {
    let mut counts = Vec::with_capacity(values.len());
    for v in values {
        if !v.is_integer() || v.is_negative() {
            return None;
        }
        counts.push(v.to_integer().to_biguint()?);
    }
    Some(WeightDistribution::new(counts))
}

// ---------------------------------------------------------------------------
// Codes
// ---------------------------------------------------------------------------

/// An `F_r`-linear subset of `F_q^n`, held as the canonical RREF basis of its
/// `F_r`-expansion. Immutable; the weight distribution cache is write-once.
pub struct Code {
    spec: Field,
    n: usize,
    /// RREF rows of the expansion into `F_r^(mn)`; entries lie in `F_r`.
    expanded: Vec<Vec<FieldElement>>,
    pivots: Vec<usize>,
    /// The same rows repacked as vectors in `F_q^n`.
    gens: Vec<Vec<FieldElement>>,
    fq_linear: bool,
    wd: OnceLock<WeightDistribution>,
}

impl Clone for Code {
    fn clone(&self) -> Self {
        Code {
            spec: self.spec.clone(),
            n: self.n,
            expanded: self.expanded.clone(),
            pivots: self.pivots.clone(),
            gens: self.gens.clone(),
            fq_linear: self.fq_linear,
            wd: OnceLock::new(),
        }
    }
}

impl std::fmt::Debug for Code {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Code(q={}, n={}, r-dim={})", self.spec.q(), self.n, self.dim_r())
    }
}

impl PartialEq for Code {
    /// Set equality: same field, length, and RREF expansion.
    fn eq(&self, other: &Self) -> bool {
        self.spec.q() == other.spec.q()
            && self.spec.r() == other.spec.r()
            && self.n == other.n
            && self.expanded == other.expanded
    }
}
impl Eq for Code {}

impl Code {
    fn expand(spec: &Field, v: &[FieldElement]) -> Vec<FieldElement> {
        let m = spec.m() as usize;
        let mut out = Vec::with_capacity(v.len() * m);
        for &x in v {
            out.extend(spec.fr_coords(x));
        }
        out
    }

    fn repack(spec: &Field, row: &[FieldElement]) -> Vec<FieldElement> {
        let m = spec.m() as usize;
        row.chunks(m).map(|ch| spec.from_fr_coords(ch)).collect()
    }

    fn from_expanded(spec: Field, n: usize, rows: Vec<Vec<FieldElement>>) -> Code {
        let (expanded, pivots) = linalg::rref(&spec, rows);
        let gens: Vec<_> = expanded.iter().map(|r| Code::repack(&spec, r)).collect();
        let mut code = Code {
            spec,
            n,
            expanded,
            pivots,
            gens,
            fq_linear: false,
            wd: OnceLock::new(),
        };
        code.fq_linear = code.detect_fq_linear();
        code
    }

    /// The `F_r`-span of the given vectors. Dependent generators are dropped
    /// by row reduction, so `|C| = r^(number of stored generators)`.
    pub fn from_fr_gens(
        spec: Field,
        n: usize,
        gens: Vec<Vec<FieldElement>>,
    ) -> Result<Code, CodeError> {
        if gens.iter().any(|g| g.len() != n) {
            return Err(CodeError::LengthMismatch);
        }
        let rows = gens.iter().map(|g| Code::expand(&spec, g)).collect();
        Ok(Code::from_expanded(spec, n, rows))
    }

    /// The `F_q`-span of the given vectors (each row is multiplied by the
    /// generator powers `w^0..w^(m-1)` before expansion).
    pub fn from_fq_gens(
        spec: Field,
        n: usize,
        gens: Vec<Vec<FieldElement>>,
    ) -> Result<Code, CodeError> {
        if gens.iter().any(|g| g.len() != n) {
            return Err(CodeError::LengthMismatch);
        }
        let mut rows = Vec::with_capacity(gens.len() * spec.m() as usize);
        for g in &gens {
            for j in 0..spec.m() as u64 {
                let wj = spec.gen_pow(j);
                let scaled: Vec<_> = g.iter().map(|&x| spec.mul(x, wj)).collect();
                rows.push(Code::expand(&spec, &scaled));
            }
        }
        Ok(Code::from_expanded(spec, n, rows))
    }

    pub fn zero(spec: Field, n: usize) -> Code {
        Code::from_expanded(spec, n, vec![])
    }

    pub fn full_space(spec: Field, n: usize) -> Code {
        let mn = n * spec.m() as usize;
        let rows = (0..mn)
            .map(|i| {
                let mut r = vec![FieldElement::ZERO; mn];
                r[i] = FieldElement::ONE;
                r
            })
            .collect();
        Code::from_expanded(spec, n, rows)
    }

    fn detect_fq_linear(&self) -> bool {
        if self.dim_r() % self.spec.m() as usize != 0 {
            return false;
        }
        let w = self.spec.generator();
        self.gens.iter().all(|g| {
            let scaled: Vec<_> = g.iter().map(|&x| self.spec.mul(x, w)).collect();
            self.contains(&scaled)
        })
    }

    pub fn spec(&self) -> &Field {
        &self.spec
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `F_r`-dimension (so `|C| = r^dim_r`).
    pub fn dim_r(&self) -> usize {
        self.expanded.len()
    }

    pub fn size(&self) -> BigUint {
        BigUint::from(self.spec.r()).pow(self.dim_r() as u32)
    }

    fn size_within(&self, cap: u64) -> bool {
        let mut s: u64 = 1;
        for _ in 0..self.dim_r() {
            s = s.saturating_mul(self.spec.r() as u64);
            if s > cap {
                return false;
            }
        }
        true
    }

    /// Generator set: an `F_r`-basis in `F_q^n` (RREF-canonical).
    pub fn gens(&self) -> &[Vec<FieldElement>] {
        &self.gens
    }

    pub fn is_fq_linear(&self) -> bool {
        self.fq_linear
    }

    pub fn contains(&self, v: &[FieldElement]) -> bool {
        if v.len() != self.n {
            return false;
        }
        let row = Code::expand(&self.spec, v);
        linalg::in_span(&self.spec, &self.expanded, &self.pivots, &row)
    }

    /// True iff every generator of `sub` lies in `self`.
    pub fn is_nested(sub: &Code, sup: &Code) -> Result<bool, CodeError> {
        if sub.n != sup.n || sub.spec.q() != sup.spec.q() {
            return Err(CodeError::LengthMismatch);
        }
        Ok(sub.gens.iter().all(|g| sup.contains(g)))
    }

    /// `F_r`-span of the generators plus `v`.
    pub fn extend_by_vector(&self, v: &[FieldElement]) -> Result<Code, CodeError> {
        if v.len() != self.n {
            return Err(CodeError::LengthMismatch);
        }
        if self.contains(v) {
            return Err(CodeError::AlreadyContained);
        }
        let mut rows = self.expanded.clone();
        rows.push(Code::expand(&self.spec, v));
        Ok(Code::from_expanded(self.spec.clone(), self.n, rows))
    }

    /// Stream of all codewords in deterministic mixed-radix order over the
    /// prime-field coefficient space.
    pub fn enumerate_codewords(&self) -> Result<CodewordIter, CodeError> {
        let cap = enum_cap();
        if !self.size_within(cap) {
            return Err(CodeError::CodeTooLarge { cap });
        }
        Ok(CodewordIter::new(self))
    }

    fn enumerated_distribution(&self) -> Result<WeightDistribution, CodeError> {
        let mut counts = vec![BigUint::zero(); self.n + 1];
        for word in self.enumerate_codewords()? {
            let w = word.iter().filter(|x| !x.is_zero()).count();
            counts[w] += 1u32;
        }
        Ok(WeightDistribution::new(counts))
    }

    /// Exact weight distribution. The smaller of the code and its
    /// trace-Euclidean dual is enumerated; the MacWilliams identity (valid
    /// for every `F_r`-linear code under the trace Euclidean form) recovers
    /// the other side exactly.
    pub fn weight_distribution(&self) -> Result<&WeightDistribution, CodeError> {
        if let Some(wd) = self.wd.get() {
            return Ok(wd);
        }
        let mn = self.n * self.spec.m() as usize;
        let dual_dim = mn - self.dim_r();
        let computed = if dual_dim >= self.dim_r() && self.size_within(enum_cap()) {
            self.enumerated_distribution()?
        } else {
            let dual = self.dual(InnerProductKind::TraceEuclidean)?;
            let dual_wd = dual.enumerated_distribution()?;
            let back =
                macwilliams_transform(dual_wd.counts(), &dual.size(), self.n, self.spec.q())?;
            rationals_to_distribution(&back)
                .expect("MacWilliams transform of a code distribution is integral")
        };
        Ok(self.wd.get_or_init(|| computed))
    }

    /// Minimum nonzero Hamming weight (the minimum distance, since the code
    /// is closed under differences).
    pub fn min_distance(&self) -> Result<usize, CodeError> {
        if self.dim_r() == 0 {
            return Err(CodeError::TrivialCode);
        }
        Ok(self
            .weight_distribution()?
            .min_weight()
            .expect("nontrivial code has a nonzero word"))
    }

    /// Dual code under `kind`: the `F_q^n` repacking of the null space of the
    /// generator Gram system over the `F_r`-expansion of dimension `mn`.
    pub fn dual(&self, kind: InnerProductKind) -> Result<Code, CodeError> {
        if !kind.valid_for(&self.spec) {
            return Err(CodeError::InvalidKindForField);
        }
        let spec = &self.spec;
        let m = spec.m() as usize;
        let mn = self.n * m;
        let alpha = match kind {
            InnerProductKind::TraceHermitian if spec.p() != 2 => spec.find_skew_alpha()?,
            _ => FieldElement::ONE,
        };
        let mut rows: Vec<Vec<FieldElement>> = Vec::new();
        for c in &self.gens {
            let target: Vec<FieldElement> = match kind {
                InnerProductKind::Euclidean | InnerProductKind::TraceEuclidean => c.clone(),
                InnerProductKind::Hermitian | InnerProductKind::TraceHermitian => {
                    c.iter().map(|&x| spec.conj(x)).collect::<Result<_, _>>()?
                }
            };
            if kind.is_trace_form() {
                let mut row = Vec::with_capacity(mn);
                for &ti in &target {
                    for j in 0..m as u64 {
                        row.push(spec.trace(spec.mul(alpha, spec.mul(spec.gen_pow(j), ti))));
                    }
                }
                rows.push(row);
            } else {
                // One F_r-row per F_r-coordinate of the F_q-valued condition.
                let mut coord_rows = vec![Vec::with_capacity(mn); m];
                for &ti in &target {
                    for j in 0..m as u64 {
                        let prod = spec.mul(spec.gen_pow(j), ti);
                        let coords = spec.fr_coords(prod);
                        for (t, cr) in coord_rows.iter_mut().enumerate() {
                            cr.push(coords[t]);
                        }
                    }
                }
                rows.extend(coord_rows);
            }
        }
        let ns = linalg::null_space(spec, rows, mn);
        Ok(Code::from_expanded(spec.clone(), self.n, ns))
    }

    /// Minimum weight over the nonzero words of `self` that avoid the nested
    /// subcode `sub`, read off the two exact weight distributions.
    pub fn wt_setminus(&self, sub: &Code) -> Result<usize, CodeError> {
        if !Code::is_nested(sub, self)? {
            return Err(CodeError::NotNested);
        }
        if sub.dim_r() == self.dim_r() {
            return Err(CodeError::EqualCodes);
        }
        let a = self.weight_distribution()?.counts().to_vec();
        let b = sub.weight_distribution()?;
        for i in 1..=self.n {
            if a[i] > b.counts()[i] {
                return Ok(i);
            }
        }
        unreachable!("strictly nested codes differ in some weight class")
    }
}

/// Iterator over all codewords as `F_p`-combinations of the scaled generator
/// set, in mixed-radix counter order.
pub struct CodewordIter {
    spec: Field,
    n: usize,
    p: u32,
    fp_gens: Vec<Vec<FieldElement>>,
    digits: Vec<u32>,
    /// `partials[k] = sum over positions >= k of digit * generator`.
    partials: Vec<Vec<FieldElement>>,
    started: bool,
    done: bool,
}

impl CodewordIter {
    fn new(code: &Code) -> CodewordIter {
        let spec = code.spec.clone();
        let l = spec.l();
        let mut fp_gens = Vec::with_capacity(code.gens.len() * l as usize);
        for g in &code.gens {
            for i in 0..l {
                let s = spec.pow(spec.subfield_generator(), i);
                fp_gens.push(g.iter().map(|&x| spec.mul(x, s)).collect());
            }
        }
        let t = fp_gens.len();
        CodewordIter {
            n: code.n,
            p: spec.p(),
            spec,
            digits: vec![0; t],
            partials: vec![vec![FieldElement::ZERO; code.n]; t + 1],
            fp_gens,
            started: false,
            done: false,
        }
    }
}

impl Iterator for CodewordIter {
    type Item = Vec<FieldElement>;

    fn next(&mut self) -> Option<Vec<FieldElement>> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(vec![FieldElement::ZERO; self.n]);
        }
        let t = self.fp_gens.len();
        let mut j = 0;
        while j < t && self.digits[j] == self.p - 1 {
            self.digits[j] = 0;
            j += 1;
        }
        if j == t {
            self.done = true;
            return None;
        }
        self.digits[j] += 1;
        // partials[j] gains one more copy of generator j; the reset digits
        // below j contribute nothing, so the word equals the new partials[j].
        let base = &self.fp_gens[j];
        let mut acc = self.partials[j].clone();
        for (slot, &g) in acc.iter_mut().zip(base) {
            *slot = self.spec.add(*slot, g);
        }
        self.partials[j] = acc.clone();
        for k in 0..j {
            self.partials[k] = acc.clone();
        }
        Some(acc)
    }
}
