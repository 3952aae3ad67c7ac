//! Exact arithmetic in `F_q` with the subfield tower `F_p ⊆ F_r ⊆ F_q`,
//! where `r = p^l` and `q = r^m`.
//!
//! A [`FieldSpec`] fixes a deterministic representation: the modulus is the
//! lexicographically smallest monic irreducible of degree `l*m` over `F_p`
//! (smallest integer code with ascending powers as digits), and the
//! generator `w` is the smallest element, in coordinate order, of
//! multiplicative order `q - 1`. Elements are stored as packed indices in
//! the power basis of the modulus root; multiplication is table-driven.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Desk-scale cap on the field size.
pub const MAX_FIELD_SIZE: u64 = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("field F_{{{p}^{lm}}} exceeds the 2^20 cap")]
    FieldTooLarge { p: u32, lm: u32 },
    #[error("operation requires odd characteristic")]
    EvenCharacteristic,
    #[error("operation requires q = r^2")]
    NotQuadraticExtension,
    #[error("division by the zero polynomial")]
    DivisionByZeroPoly,
    #[error("parse error at position {pos}: {msg}")]
    ParseError { pos: usize, msg: String },
}

/// An element of `F_q`, stored as the packed index `sum(c_i * p^i)` of its
/// coordinate vector `(c_0, ..., c_{lm-1})` in the power basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(pub u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Immutable description of `F_q = F_{p^(l*m)}` with distinguished subfield
/// `F_r = F_{p^l}`. Safe to share across threads; all operations are pure.
pub struct FieldSpec {
    p: u32,
    l: u32,
    m: u32,
    r: u32,
    q: u32,
    /// Monic irreducible modulus over `F_p`, lowest degree first, length `lm + 1`.
    modulus: Vec<u32>,
    /// `exp[i]` is the element index of `w^i`, `0 <= i < q - 1`.
    exp: Vec<u32>,
    /// `log[idx]` for `idx != 0`; `log[0]` is a sentinel.
    log: Vec<u32>,
    /// Index of the fixed generator `w`.
    gen: u32,
    /// Generator of `F_r^*` (`w^((q-1)/(r-1))`).
    eta: FieldElement,
    /// Sorted element indices of `F_r`.
    subfield: Vec<u32>,
    /// Inverse of the `F_p` change-of-basis matrix whose columns are the
    /// coordinates of `eta^i * w^j`; used to split an element into its
    /// `F_r`-coordinates over the basis `{1, w, ..., w^(m-1)}`.
    basis_inv: Vec<Vec<u32>>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldSpec(p={}, l={}, m={}, q={})", self.p, self.l, self.m, self.q)
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Coefficient-vector polynomial arithmetic over `F_p`, used only while
/// bootstrapping a field (before the element tables exist).
mod fp {
    pub fn trim(v: &mut Vec<u32>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![0u32; a.len() + b.len() - 1];
        for (i, &ai) in a.iter().enumerate() {
            for (j, &bj) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + ai * bj) % p;
            }
        }
        trim(&mut out);
        out
    }

    /// Remainder of `a` modulo monic `m`.
    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut a = a.to_vec();
        trim(&mut a);
        let dm = m.len() - 1;
        while a.len() > dm {
            let lead = *a.last().unwrap();
            let shift = a.len() - 1 - dm;
            for i in 0..=dm {
                let t = (lead * m[i]) % p;
                a[shift + i] = (a[shift + i] + p * p - t) % p;
            }
            trim(&mut a);
            if a.is_empty() {
                break;
            }
        }
        a
    }

    /// Trial-division irreducibility test for a monic polynomial.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let d = f.len() - 1;
        if d == 0 {
            return false;
        }
        for dd in 1..=d / 2 {
            // All monic divisor candidates of degree dd.
            let count = (p as u64).pow(dd as u32);
            for code in 0..count {
                let mut g = decode(code, dd, p);
                g.push(1);
                if rem(f, &g, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    /// Decode `code` into `deg` base-`p` digits, lowest power first.
    pub fn decode(code: u64, deg: usize, p: u32) -> Vec<u32> {
        let mut c = code;
        let mut v = Vec::with_capacity(deg);
        for _ in 0..deg {
            v.push((c % p as u64) as u32);
            c /= p as u64;
        }
        v
    }
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut fs = vec![];
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            fs.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        fs.push(n);
    }
    fs
}

/// Invert a square matrix over `F_p`; columns/rows are coordinate vectors.
fn invert_mod_p(mat: &[Vec<u32>], p: u32) -> Option<Vec<Vec<u32>>> {
    let n = mat.len();
    let mut a: Vec<Vec<u32>> = mat.to_vec();
    let mut inv: Vec<Vec<u32>> = (0..n)
        .map(|i| (0..n).map(|j| u32::from(i == j)).collect())
        .collect();
    let inv_mod = |x: u32| -> u32 {
        // p is small; brute force.
        (1..p).find(|&y| (x * y) % p == 1).unwrap()
    };
    for col in 0..n {
        let piv = (col..n).find(|&rr| a[rr][col] != 0)?;
        a.swap(col, piv);
        inv.swap(col, piv);
        let s = inv_mod(a[col][col]);
        for j in 0..n {
            a[col][j] = (a[col][j] * s) % p;
            inv[col][j] = (inv[col][j] * s) % p;
        }
        for row in 0..n {
            if row != col && a[row][col] != 0 {
                let f = a[row][col];
                for j in 0..n {
                    a[row][j] = (a[row][j] + p * p - f * a[col][j] % p) % p;
                    inv[row][j] = (inv[row][j] + p * p - f * inv[col][j] % p) % p;
                }
            }
        }
    }
    Some(inv)
}

impl FieldSpec {
    /// Build `F_{p^(l*m)}` with subfield `F_{p^l}`, deterministic modulus and
    /// generator.
    pub fn new(p: u32, l: u32, m: u32) -> Result<FieldSpec, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        assert!(l >= 1 && m >= 1, "l and m must be positive");
        let lm = l * m;
        let mut size: u64 = 1;
        for _ in 0..lm {
            size *= p as u64;
            if size > MAX_FIELD_SIZE {
                return Err(FieldError::FieldTooLarge { p, lm });
            }
        }
        let q = size as u32;
        let r = (p as u64).pow(l) as u32;

        // Lexicographically smallest monic irreducible of degree lm: smallest
        // integer code, digits read lowest power first.
        let modulus = {
            let mut found = None;
            for code in 0..q as u64 {
                let mut f = fp::decode(code, lm as usize, p);
                f.resize(lm as usize, 0);
                f.push(1);
                if fp::is_irreducible(&f, p) {
                    found = Some(f);
                    break;
                }
            }
            found.expect("an irreducible polynomial of every degree exists")
        };

        let encode = |v: &[u32]| -> u32 {
            let mut idx = 0u64;
            for &c in v.iter().rev() {
                idx = idx * p as u64 + c as u64;
            }
            idx as u32
        };
        let decode_el = |idx: u32| -> Vec<u32> { fp::decode(idx as u64, lm as usize, p) };

        let mul_raw = |a: u32, b: u32| -> u32 {
            let prod = fp::mul(&decode_el(a), &decode_el(b), p);
            let mut red = fp::rem(&prod, &modulus, p);
            red.resize(lm as usize, 0);
            encode(&red)
        };

        // Smallest element (by index) of multiplicative order q - 1.
        let factors = prime_factors(q - 1);
        let pow_raw = |base: u32, mut e: u32| -> u32 {
            let mut acc = 1u32;
            let mut b = base;
            while e > 0 {
                if e & 1 == 1 {
                    acc = mul_raw(acc, b);
                }
                b = mul_raw(b, b);
                e >>= 1;
            }
            acc
        };
        let mut gen = 0;
        for cand in 1..q {
            if factors.iter().all(|&f| pow_raw(cand, (q - 1) / f) != 1) {
                gen = cand;
                break;
            }
        }
        assert!(gen != 0, "F_q^* is cyclic, a generator exists");

        let mut exp = Vec::with_capacity((q - 1) as usize);
        let mut log = vec![u32::MAX; q as usize];
        let mut cur = 1u32;
        for i in 0..q - 1 {
            exp.push(cur);
            log[cur as usize] = i;
            cur = mul_raw(cur, gen);
        }
        debug_assert_eq!(cur, 1);

        let eta = if r == 2 {
            FieldElement(1)
        } else {
            FieldElement(exp[((q - 1) / (r - 1)) as usize])
        };
        let mut subfield = vec![0u32];
        if r == 2 {
            subfield.push(1);
        } else {
            for j in 0..r - 1 {
                subfield.push(exp[(j as u64 * ((q - 1) / (r - 1)) as u64 % (q - 1) as u64) as usize]);
            }
        }
        subfield.sort_unstable();

        // Basis matrix with columns eta^i * w^j (i < l, j < m), inverted over F_p.
        let mut cols = Vec::with_capacity(lm as usize);
        for j in 0..m {
            for i in 0..l {
                let v = mul_raw(pow_raw(eta.0, i), pow_raw(gen, j));
                let mut coords = decode_el(v);
                coords.resize(lm as usize, 0);
                cols.push(coords);
            }
        }
        // Transpose into row-major matrix rows = coordinates, columns = basis index.
        let mat: Vec<Vec<u32>> = (0..lm as usize)
            .map(|row| (0..lm as usize).map(|col| cols[col][row]).collect())
            .collect();
        let basis_inv = invert_mod_p(&mat, p).expect("basis products span F_q over F_p");

        let spec = FieldSpec {
            p,
            l,
            m,
            r,
            q,
            modulus,
            exp,
            log,
            gen,
            eta,
            subfield,
            basis_inv,
        };
        debug_assert!(spec.subfield_is_frobenius_fixed());
        Ok(spec)
    }

    fn subfield_is_frobenius_fixed(&self) -> bool {
        let rr = self.r;
        (0..self.q).all(|i| {
            let x = FieldElement(i);
            (self.pow(x, rr) == x) == self.is_in_subfield(x)
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn l(&self) -> u32 {
        self.l
    }
    pub fn m(&self) -> u32 {
        self.m
    }
    pub fn r(&self) -> u32 {
        self.r
    }
    pub fn q(&self) -> u32 {
        self.q
    }
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }
    pub fn generator(&self) -> FieldElement {
        FieldElement(self.gen)
    }
    /// Generator of `F_r^*`.
    pub fn subfield_generator(&self) -> FieldElement {
        self.eta
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(FieldElement)
    }

    /// The elements of `F_r`, sorted by index.
    pub fn subfield_elements(&self) -> &[u32] {
        &self.subfield
    }

    pub fn is_in_subfield(&self, x: FieldElement) -> bool {
        self.subfield.binary_search(&x.0).is_ok()
    }

    pub fn coords(&self, x: FieldElement) -> Vec<u32> {
        fp::decode(x.0 as u64, (self.l * self.m) as usize, self.p)
    }

    pub fn from_coords(&self, coords: &[u32]) -> FieldElement {
        assert!(coords.len() <= (self.l * self.m) as usize);
        let mut idx = 0u64;
        for &c in coords.iter().rev() {
            debug_assert!(c < self.p);
            idx = idx * self.p as u64 + c as u64;
        }
        FieldElement(idx as u32)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        let (mut ai, mut bi) = (a.0 as u64, b.0 as u64);
        let p = self.p as u64;
        let mut out = 0u64;
        let mut place = 1u64;
        while ai != 0 || bi != 0 {
            out += (ai % p + bi % p) % p * place;
            ai /= p;
            bi /= p;
            place *= p;
        }
        FieldElement(out as u32)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.p == 2 {
            return a;
        }
        let p = self.p as u64;
        let mut ai = a.0 as u64;
        let mut out = 0u64;
        let mut place = 1u64;
        while ai != 0 {
            out += (p - ai % p) % p * place;
            ai /= p;
            place *= p;
        }
        FieldElement(out as u32)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.is_zero() || b.is_zero() {
            return FieldElement::ZERO;
        }
        let s = (self.log[a.0 as usize] as u64 + self.log[b.0 as usize] as u64)
            % (self.q - 1) as u64;
        FieldElement(self.exp[s as usize])
    }

    pub fn inv(&self, a: FieldElement) -> FieldElement {
        assert!(!a.is_zero(), "inverse of zero");
        let e = self.log[a.0 as usize];
        FieldElement(self.exp[((self.q - 1 - e) % (self.q - 1)) as usize])
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: FieldElement, e: u32) -> FieldElement {
        if a.is_zero() {
            return if e == 0 { FieldElement::ONE } else { FieldElement::ZERO };
        }
        let s = (self.log[a.0 as usize] as u64 * e as u64) % (self.q - 1) as u64;
        FieldElement(self.exp[s as usize])
    }

    /// `w^e` for the fixed generator.
    pub fn gen_pow(&self, e: u64) -> FieldElement {
        FieldElement(self.exp[(e % (self.q - 1) as u64) as usize])
    }

    /// Discrete log with respect to the fixed generator; `None` for zero.
    pub fn dlog(&self, a: FieldElement) -> Option<u32> {
        if a.is_zero() {
            None
        } else {
            Some(self.log[a.0 as usize])
        }
    }

    /// Trace `Tr_{q/r}(x) = x + x^r + ... + x^{r^(m-1)}`, valued in `F_r`.
    pub fn trace(&self, x: FieldElement) -> FieldElement {
        let mut acc = FieldElement::ZERO;
        let mut term = x;
        for _ in 0..self.m {
            acc = self.add(acc, term);
            term = self.pow(term, self.r);
        }
        debug_assert!(self.is_in_subfield(acc));
        acc
    }

    /// Conjugation `x -> x^r` for a quadratic extension; an involution.
    pub fn conj(&self, x: FieldElement) -> Result<FieldElement, FieldError> {
        if self.m != 2 {
            return Err(FieldError::NotQuadraticExtension);
        }
        Ok(self.pow(x, self.r))
    }

    /// The deterministic skew element `alpha = w^((r+1)/2)` with
    /// `alpha^r = -alpha != 0`, defined for odd `q = r^2`.
    pub fn find_skew_alpha(&self) -> Result<FieldElement, FieldError> {
        if self.p == 2 {
            return Err(FieldError::EvenCharacteristic);
        }
        if self.m != 2 {
            return Err(FieldError::NotQuadraticExtension);
        }
        let alpha = self.gen_pow(((self.r + 1) / 2) as u64);
        debug_assert_eq!(self.pow(alpha, self.r), self.neg(alpha));
        debug_assert!(!alpha.is_zero());
        Ok(alpha)
    }

    /// Split `x` into its `F_r`-coordinates over the basis `{1, w, ..., w^(m-1)}`,
    /// so that `x = sum_j out[j] * w^j` with `out[j]` in `F_r`.
    pub fn fr_coords(&self, x: FieldElement) -> Vec<FieldElement> {
        let lm = (self.l * self.m) as usize;
        let coords = self.coords(x);
        let mut sol = vec![0u32; lm];
        for (row, sol_v) in sol.iter_mut().enumerate() {
            let mut acc = 0u64;
            for col in 0..lm {
                acc += (self.basis_inv[row][col] * coords[col]) as u64;
            }
            *sol_v = (acc % self.p as u64) as u32;
        }
        // Basis index (i, j) = eta^i * w^j stored at j * l + i. A prime-field
        // digit d embeds as the element with index d.
        (0..self.m as usize)
            .map(|j| {
                let mut y = FieldElement::ZERO;
                for i in 0..self.l as usize {
                    let d = sol[j * self.l as usize + i];
                    if d != 0 {
                        y = self.add(y, self.mul(self.pow(self.eta, i as u32), FieldElement(d)));
                    }
                }
                y
            })
            .collect()
    }

    /// Inverse of [`fr_coords`](Self::fr_coords).
    pub fn from_fr_coords(&self, ys: &[FieldElement]) -> FieldElement {
        assert!(ys.len() <= self.m as usize);
        let mut acc = FieldElement::ZERO;
        for (j, &y) in ys.iter().enumerate() {
            debug_assert!(self.is_in_subfield(y));
            acc = self.add(acc, self.mul(y, self.gen_pow(j as u64)));
        }
        acc
    }

    /// Embed a prime-field digit.
    pub fn from_digit(&self, d: u32) -> FieldElement {
        debug_assert!(d < self.p);
        FieldElement(d)
    }

    /// Render an element: `0`, a prime-subfield digit, or `w^k`.
    pub fn format_elem(&self, x: FieldElement) -> String {
        if x.is_zero() {
            return "0".into();
        }
        if x.0 < self.p {
            return x.0.to_string();
        }
        match self.log[x.0 as usize] {
            1 => "w".into(),
            k => format!("w^{}", k),
        }
    }

    /// Parse an element literal: a digit string (prime-subfield value),
    /// `w`/`w^k`, or a comma-separated coordinate vector `c0,c1,...`.
    pub fn parse_elem(&self, token: &str) -> Result<FieldElement, FieldError> {
        let t = token.trim();
        if t.is_empty() {
            return Err(FieldError::ParseError { pos: 0, msg: "empty element literal".into() });
        }
        if t.contains(',') {
            let mut coords = vec![];
            for (i, part) in t.split(',').enumerate() {
                let d: u32 = part.trim().parse().map_err(|_| FieldError::ParseError {
                    pos: i,
                    msg: format!("bad coordinate {part:?}"),
                })?;
                if d >= self.p {
                    return Err(FieldError::ParseError {
                        pos: i,
                        msg: format!("coordinate {d} not reduced mod {}", self.p),
                    });
                }
                coords.push(d);
            }
            if coords.len() > (self.l * self.m) as usize {
                return Err(FieldError::ParseError { pos: 0, msg: "too many coordinates".into() });
            }
            return Ok(self.from_coords(&coords));
        }
        if let Some(rest) = t.strip_prefix('w') {
            let k: u64 = if rest.is_empty() {
                1
            } else if let Some(e) = rest.strip_prefix('^') {
                e.parse().map_err(|_| FieldError::ParseError {
                    pos: 0,
                    msg: format!("bad exponent {rest:?}"),
                })?
            } else {
                return Err(FieldError::ParseError { pos: 0, msg: format!("bad literal {t:?}") });
            };
            return Ok(self.gen_pow(k));
        }
        let d: u32 = t
            .parse()
            .map_err(|_| FieldError::ParseError { pos: 0, msg: format!("bad literal {t:?}") })?;
        if d >= self.p {
            return Err(FieldError::ParseError {
                pos: 0,
                msg: format!("digit {d} not in the prime subfield F_{}", self.p),
            });
        }
        Ok(self.from_digit(d))
    }

    /// One line of the field fixture format: `p l m modulus_coeffs generator_coeffs`.
    pub fn fixture_line(&self) -> String {
        let join = |v: &[u32]| v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",");
        format!(
            "{} {} {} {} {}",
            self.p,
            self.l,
            self.m,
            join(&self.modulus),
            join(&self.coords(FieldElement(self.gen)))
        )
    }
}

/// Shared handle used throughout the crate.
pub type Field = Arc<FieldSpec>;

pub fn make_field(p: u32, l: u32, m: u32) -> Result<Field, FieldError> {
    FieldSpec::new(p, l, m).map(Arc::new)
}

// ---------------------------------------------------------------------------
// Polynomials over F_q
// ---------------------------------------------------------------------------

/// Dense polynomial over `F_q`, lowest degree first, no trailing zeros.
/// The zero polynomial has an empty coefficient vector and degree `None`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<FieldElement>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { coeffs: vec![] }
    }

    pub fn one() -> Poly {
        Poly { coeffs: vec![FieldElement::ONE] }
    }

    pub fn from_coeffs(coeffs: Vec<FieldElement>) -> Poly {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&FieldElement::ZERO) {
            self.coeffs.pop();
        }
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn leading(&self) -> FieldElement {
        self.coeffs.last().copied().unwrap_or(FieldElement::ZERO)
    }

    /// `x^k`.
    pub fn x_pow(k: usize) -> Poly {
        let mut coeffs = vec![FieldElement::ZERO; k + 1];
        coeffs[k] = FieldElement::ONE;
        Poly { coeffs }
    }

    /// Coefficient vector padded to length `n`.
    pub fn to_vector(&self, n: usize) -> Vec<FieldElement> {
        assert!(self.coeffs.len() <= n, "polynomial does not fit in length {n}");
        let mut v = self.coeffs.clone();
        v.resize(n, FieldElement::ZERO);
        v
    }
}

impl FieldSpec {
    pub fn poly_add(&self, a: &Poly, b: &Poly) -> Poly {
        let len = a.coeffs.len().max(b.coeffs.len());
        let coeffs = (0..len).map(|i| self.add(a.coeff(i), b.coeff(i))).collect();
        Poly::from_coeffs(coeffs)
    }

    pub fn poly_sub(&self, a: &Poly, b: &Poly) -> Poly {
        let len = a.coeffs.len().max(b.coeffs.len());
        let coeffs = (0..len).map(|i| self.sub(a.coeff(i), b.coeff(i))).collect();
        Poly::from_coeffs(coeffs)
    }

    pub fn poly_scale(&self, a: &Poly, s: FieldElement) -> Poly {
        Poly::from_coeffs(a.coeffs.iter().map(|&c| self.mul(c, s)).collect())
    }

    pub fn poly_mul(&self, a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() || b.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![FieldElement::ZERO; a.coeffs.len() + b.coeffs.len() - 1];
        for (i, &ai) in a.coeffs.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, &bj) in b.coeffs.iter().enumerate() {
                out[i + j] = self.add(out[i + j], self.mul(ai, bj));
            }
        }
        Poly::from_coeffs(out)
    }

    /// Quotient and remainder with `deg(rem) < deg(divisor)`.
    pub fn poly_divmod(&self, a: &Poly, b: &Poly) -> Result<(Poly, Poly), FieldError> {
        if b.is_zero() {
            return Err(FieldError::DivisionByZeroPoly);
        }
        let db = b.degree().unwrap();
        let mut rem = a.coeffs.clone();
        if rem.len() < db + 1 {
            return Ok((Poly::zero(), a.clone()));
        }
        let mut quot = vec![FieldElement::ZERO; rem.len() - db];
        let lead_inv = self.inv(b.leading());
        for i in (db..rem.len()).rev() {
            let c = rem[i];
            if c.is_zero() {
                continue;
            }
            let f = self.mul(c, lead_inv);
            quot[i - db] = f;
            for (j, &bj) in b.coeffs.iter().enumerate() {
                rem[i - db + j] = self.sub(rem[i - db + j], self.mul(f, bj));
            }
        }
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    pub fn poly_divides(&self, d: &Poly, a: &Poly) -> bool {
        if d.is_zero() {
            return a.is_zero();
        }
        self.poly_divmod(a, d).map(|(_, r)| r.is_zero()).unwrap_or(false)
    }

    /// Monic greatest common divisor.
    pub fn poly_gcd(&self, a: &Poly, b: &Poly) -> Poly {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let (_, r) = self.poly_divmod(&x, &y).unwrap();
            x = y;
            y = r;
        }
        if x.is_zero() {
            x
        } else {
            self.poly_scale(&x, self.inv(x.leading()))
        }
    }

    /// `x^n - 1`.
    pub fn x_n_minus_1(&self, n: usize) -> Poly {
        let mut coeffs = vec![FieldElement::ZERO; n + 1];
        coeffs[0] = self.neg(FieldElement::ONE);
        coeffs[n] = FieldElement::ONE;
        Poly::from_coeffs(coeffs)
    }

    /// Reduce modulo `x^n - 1` by folding coefficients.
    pub fn poly_mod_xn_minus_1(&self, a: &Poly, n: usize) -> Poly {
        let mut out = vec![FieldElement::ZERO; n];
        for (i, &c) in a.coeffs.iter().enumerate() {
            out[i % n] = self.add(out[i % n], c);
        }
        Poly::from_coeffs(out)
    }

    pub fn format_poly(&self, p: &Poly) -> String {
        if p.is_zero() {
            return "(0)".into();
        }
        let body = p
            .coeffs
            .iter()
            .map(|&c| self.format_elem(c))
            .collect::<Vec<_>>()
            .join(" ");
        format!("({body})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32, l: u32, m: u32) -> Field {
        make_field(p, l, m).unwrap()
    }

    /// Independent modulus oracle: enumerate monic polynomials of degree d
    /// over F_p in integer-code order and return the first with no roots and
    /// no monic divisor of degree <= d/2, using only digit arithmetic.
    fn smallest_irreducible_oracle(p: u32, d: usize) -> Vec<u32> {
        let total = (p as u64).pow(d as u32);
        'cand: for code in 0..total {
            let mut fv = fp::decode(code, d, p);
            fv.resize(d, 0);
            fv.push(1);
            for dd in 1..=d / 2 {
                for sub in 0..(p as u64).pow(dd as u32) {
                    let mut g = fp::decode(sub, dd, p);
                    g.push(1);
                    if fp::rem(&fv, &g, p).is_empty() {
                        continue 'cand;
                    }
                }
            }
            return fv;
        }
        unreachable!()
    }

    #[test]
    fn f4_has_unique_modulus_and_generator() {
        let f4 = f(2, 1, 2);
        assert_eq!(f4.modulus(), &[1, 1, 1]); // x^2 + x + 1
        let w = f4.generator();
        assert_eq!(f4.pow(w, 3), FieldElement::ONE);
        assert_ne!(f4.pow(w, 1), FieldElement::ONE);
    }

    #[test]
    fn f9_modulus_matches_enumeration_oracle() {
        let f9 = f(3, 1, 2);
        assert_eq!(f9.modulus().to_vec(), smallest_irreducible_oracle(3, 2));
        assert_eq!(f9.modulus(), &[1, 0, 1]); // x^2 + 1 is the smallest
    }

    #[test]
    fn f8_and_f16_moduli_match_oracle() {
        assert_eq!(f(2, 1, 3).modulus().to_vec(), smallest_irreducible_oracle(2, 3));
        assert_eq!(f(2, 1, 4).modulus().to_vec(), smallest_irreducible_oracle(2, 4));
        assert_eq!(f(2, 2, 2).modulus().to_vec(), smallest_irreducible_oracle(2, 4));
    }

    #[test]
    fn prime_field_f2() {
        let f2 = f(2, 1, 1);
        assert_eq!(f2.generator(), FieldElement::ONE);
        assert_eq!(f2.add(FieldElement::ONE, FieldElement::ONE), FieldElement::ZERO);
    }

    #[test]
    fn make_field_rejects_bad_input() {
        assert_eq!(make_field(4, 1, 1).unwrap_err(), FieldError::NotPrime(4));
        assert!(matches!(make_field(2, 1, 21).unwrap_err(), FieldError::FieldTooLarge { .. }));
    }

    #[test]
    fn generator_spans_nonzero_elements() {
        for spec in [f(2, 1, 2), f(3, 1, 2), f(2, 1, 3), f(5, 1, 2), f(3, 1, 3)] {
            let mut seen = std::collections::HashSet::new();
            for e in 0..spec.q() - 1 {
                seen.insert(spec.gen_pow(e as u64));
            }
            assert_eq!(seen.len() as u32, spec.q() - 1);
        }
    }

    #[test]
    fn frobenius_is_additive_and_multiplicative() {
        for spec in [f(2, 1, 2), f(3, 1, 2), f(2, 1, 3), f(2, 1, 9), f(7, 1, 2), f(2, 2, 2)] {
            if spec.q() > 512 {
                continue;
            }
            let p = spec.p();
            for a in spec.elements() {
                for b in spec.elements() {
                    assert_eq!(
                        spec.pow(spec.add(a, b), p),
                        spec.add(spec.pow(a, p), spec.pow(b, p))
                    );
                    assert_eq!(
                        spec.pow(spec.mul(a, b), p),
                        spec.mul(spec.pow(a, p), spec.pow(b, p))
                    );
                }
            }
        }
    }

    #[test]
    fn trace_f4_of_w_is_one() {
        let f4 = f(2, 1, 2);
        let w = f4.generator();
        assert_eq!(f4.trace(w), FieldElement::ONE);
    }

    #[test]
    fn trace_f9_matches_brute_force() {
        let f9 = f(3, 1, 2);
        for x in f9.elements() {
            let brute = f9.add(x, f9.mul(f9.mul(x, x), x)); // x + x^3
            assert_eq!(f9.trace(x), brute);
        }
    }

    #[test]
    fn trace_fixes_subfield_scaling() {
        // x in F_r has trace m*x.
        for spec in [f(2, 1, 2), f(3, 1, 2), f(2, 2, 2), f(3, 1, 3)] {
            for &s in spec.subfield_elements() {
                let x = FieldElement(s);
                let mut mx = FieldElement::ZERO;
                for _ in 0..spec.m() {
                    mx = spec.add(mx, x);
                }
                assert_eq!(spec.trace(x), mx);
            }
        }
    }

    #[test]
    fn trace_is_fr_linear_and_surjective() {
        for spec in [f(2, 1, 2), f(3, 1, 2), f(2, 1, 4), f(2, 2, 2), f(5, 1, 2)] {
            let mut image = std::collections::HashSet::new();
            for x in spec.elements() {
                image.insert(spec.trace(x));
                for &s in spec.subfield_elements() {
                    let lam = FieldElement(s);
                    assert_eq!(spec.trace(spec.mul(lam, x)), spec.mul(lam, spec.trace(x)));
                }
            }
            assert_eq!(image.len() as u32, spec.r());
        }
    }

    #[test]
    fn conj_is_automorphism_fixing_exactly_fr() {
        for spec in [f(2, 1, 2), f(3, 1, 2), f(2, 2, 2), f(5, 1, 2)] {
            for a in spec.elements() {
                let ca = spec.conj(a).unwrap();
                assert_eq!(spec.conj(ca).unwrap(), a);
                assert_eq!(ca == a, spec.is_in_subfield(a));
                for b in spec.elements() {
                    assert_eq!(
                        spec.conj(spec.mul(a, b)).unwrap(),
                        spec.mul(ca, spec.conj(b).unwrap())
                    );
                    assert_eq!(
                        spec.conj(spec.add(a, b)).unwrap(),
                        spec.add(ca, spec.conj(b).unwrap())
                    );
                }
            }
        }
        assert_eq!(f(2, 1, 3).conj(FieldElement::ONE).unwrap_err(), FieldError::NotQuadraticExtension);
    }

    #[test]
    fn conj_f4_and_norm_f9() {
        let f4 = f(2, 1, 2);
        let w = f4.generator();
        assert_eq!(f4.conj(w).unwrap(), f4.mul(w, w));
        assert_eq!(f4.conj(FieldElement::ZERO).unwrap(), FieldElement::ZERO);
        assert_eq!(f4.conj(FieldElement::ONE).unwrap(), FieldElement::ONE);
        let f9 = f(3, 1, 2);
        for x in f9.elements() {
            let norm = f9.mul(f9.conj(x).unwrap(), x);
            assert!(f9.is_in_subfield(norm));
        }
    }

    #[test]
    fn skew_alpha() {
        let f9 = f(3, 1, 2);
        let a = f9.find_skew_alpha().unwrap();
        assert_eq!(a, f9.gen_pow(2));
        assert_eq!(f9.pow(a, 3), f9.neg(a));
        let f25 = f(5, 1, 2);
        let a25 = f25.find_skew_alpha().unwrap();
        assert_eq!(f25.add(f25.conj(a25).unwrap(), a25), FieldElement::ZERO);
        assert_eq!(f(2, 1, 2).find_skew_alpha().unwrap_err(), FieldError::EvenCharacteristic);
        assert_eq!(f(3, 1, 3).find_skew_alpha().unwrap_err(), FieldError::NotQuadraticExtension);
    }

    #[test]
    fn fr_coords_round_trip() {
        for spec in [f(2, 1, 2), f(3, 1, 2), f(2, 1, 3), f(2, 2, 2), f(3, 1, 3)] {
            for x in spec.elements() {
                let ys = spec.fr_coords(x);
                assert_eq!(ys.len(), spec.m() as usize);
                for &y in &ys {
                    assert!(spec.is_in_subfield(y));
                }
                assert_eq!(spec.from_fr_coords(&ys), x);
            }
        }
    }

    #[test]
    fn parse_and_format_elements() {
        let f9 = f(3, 1, 2);
        assert_eq!(f9.parse_elem("0").unwrap(), FieldElement::ZERO);
        assert_eq!(f9.parse_elem("2").unwrap(), f9.add(FieldElement::ONE, FieldElement::ONE));
        assert_eq!(f9.parse_elem("w").unwrap(), f9.generator());
        assert_eq!(f9.parse_elem("w^5").unwrap(), f9.gen_pow(5));
        for x in f9.elements() {
            assert_eq!(f9.parse_elem(&f9.format_elem(x)).unwrap(), x);
        }
        assert!(f9.parse_elem("3").is_err());
        assert!(f9.parse_elem("v^2").is_err());
        // Coordinate-vector form.
        assert_eq!(f9.parse_elem("1,1").unwrap(), f9.from_coords(&[1, 1]));
    }

    #[test]
    fn poly_long_division_over_f2() {
        let f2 = f(2, 1, 1);
        let one = FieldElement::ONE;
        let zero = FieldElement::ZERO;
        // (x^7 - 1) / (1 + x + x^3) = 1 + x + x^2 + x^4 over F_2.
        let num = f2.x_n_minus_1(7);
        let den = Poly::from_coeffs(vec![one, one, zero, one]);
        let (q, r) = f2.poly_divmod(&num, &den).unwrap();
        assert!(r.is_zero());
        assert_eq!(q, Poly::from_coeffs(vec![one, one, one, zero, one]));
        assert!(f2.poly_divides(&den, &num));
    }

    #[test]
    fn poly_gcd_examples() {
        for spec in [f(2, 1, 1), f(3, 1, 1), f(2, 1, 2), f(5, 1, 1)] {
            // gcd(x^2 - 1, x - 1) = x - 1.
            let x2m1 = spec.x_n_minus_1(2);
            let xm1 = spec.x_n_minus_1(1);
            assert_eq!(spec.poly_gcd(&x2m1, &xm1), xm1);
        }
    }

    #[test]
    fn poly_divmod_invariants() {
        let f3 = f(3, 1, 1);
        let a = Poly::from_coeffs(vec![FieldElement(2), FieldElement(1), FieldElement(2), FieldElement(1)]);
        let b = Poly::from_coeffs(vec![FieldElement(1), FieldElement(2)]);
        let (q, r) = f3.poly_divmod(&a, &b).unwrap();
        assert_eq!(f3.poly_add(&f3.poly_mul(&q, &b), &r), a);
        assert!(r.degree() < b.degree() || r.is_zero());
        assert_eq!(f3.poly_divmod(&a, &Poly::zero()).unwrap_err(), FieldError::DivisionByZeroPoly);
    }

    #[test]
    fn zero_poly_degree_is_sentinel() {
        assert_eq!(Poly::zero().degree(), None);
        assert_eq!(Poly::one().degree(), Some(0));
    }

    #[test]
    fn fixture_line_shape() {
        let f4 = f(2, 1, 2);
        assert_eq!(f4.fixture_line(), "2 1 2 1,1,1 0,1");
    }
}
