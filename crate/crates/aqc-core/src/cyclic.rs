//! Nested cyclic constructions: `F_q`-linear cyclic codes from divisor
//! polynomials of `x^n - 1`, and cyclic `F_r`-linear codes over `F_q` in the
//! m-generator triangular canonical form, with nested-subcode derivation.
//!
//! The canonical form follows the constructive kernel/image recursion: drop
//! the bottom `w`-component, canonicalize the projected module over the
//! smaller extension, lift each canonical generator back, and append the
//! monic generator of the kernel (a plain cyclic code over `F_r`). Diagonal
//! polynomials divide `x^n - 1`; off-diagonal entries are reduced modulo the
//! diagonal of their column, which makes the representation unique.

use thiserror::Error;

use crate::code::{Code, CodeError};
use crate::galois::{Field, FieldElement, FieldError, Poly};
use crate::linalg;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CyclicError {
    #[error("polynomial does not divide as required")]
    NotDivisor,
    #[error("generating set is not closed under the cyclic shift")]
    NotShiftClosed,
    #[error("coefficient outside the subfield F_r")]
    CoefficientOutsideSubfield,
    #[error("parse error at position {pos}: {msg}")]
    ParseError { pos: usize, msg: String },
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// One cyclic right shift of a vector.
pub fn cyclic_shift(v: &[FieldElement]) -> Vec<FieldElement> {
    if v.is_empty() {
        return vec![];
    }
    let mut out = Vec::with_capacity(v.len());
    out.push(v[v.len() - 1]);
    out.extend_from_slice(&v[..v.len() - 1]);
    out
}

// ---------------------------------------------------------------------------
// F_q-linear cyclic codes
// ---------------------------------------------------------------------------

/// An `F_q`-linear cyclic code, held by its monic generator polynomial
/// dividing `x^n - 1`.
#[derive(Debug, Clone)]
pub struct CyclicCode {
    spec: Field,
    n: usize,
    g: Poly,
    code: Code,
}

impl CyclicCode {
    /// Normalizes `g` to monic and checks `g | x^n - 1` over `F_q`.
    pub fn new(spec: Field, n: usize, g: &Poly) -> Result<CyclicCode, CyclicError> {
        if g.is_zero() {
            return Err(CyclicError::NotDivisor);
        }
        let g = spec.poly_scale(g, spec.inv(g.leading()));
        if !spec.poly_divides(&g, &spec.x_n_minus_1(n)) {
            return Err(CyclicError::NotDivisor);
        }
        let code = cyclic_span(&spec, n, &g)?;
        debug_assert_eq!(code.dim_r(), (n - g.degree().unwrap()) * spec.m() as usize);
        Ok(CyclicCode { spec, n, g, code })
    }

    pub fn generator(&self) -> &Poly {
        &self.g
    }

    pub fn code(&self) -> &Code {
        &self.code
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `F_q`-dimension `n - deg(g)`.
    pub fn dim(&self) -> usize {
        self.n - self.g.degree().unwrap()
    }

    /// Cyclic subcode generated by `h * g`; requires `h * g | x^n - 1`.
    pub fn subcode(&self, h: &Poly) -> Result<CyclicCode, CyclicError> {
        let hg = self.spec.poly_mul(h, &self.g);
        CyclicCode::new(self.spec.clone(), self.n, &hg)
    }
}

fn cyclic_span(spec: &Field, n: usize, g: &Poly) -> Result<Code, CodeError> {
    let dim = n - g.degree().unwrap_or(0);
    let mut rows = Vec::with_capacity(dim);
    let mut cur = g.to_vector(n);
    for _ in 0..dim {
        rows.push(cur.clone());
        cur = cyclic_shift(&cur);
    }
    Code::from_fq_gens(spec.clone(), n, rows)
}

/// The `F_q`-linear cyclic code with generator `g`.
pub fn cyclic_from_gen(spec: &Field, n: usize, g: &Poly) -> Result<Code, CyclicError> {
    Ok(CyclicCode::new(spec.clone(), n, g)?.code)
}

// ---------------------------------------------------------------------------
// Subfield-linear cyclic codes in canonical form
// ---------------------------------------------------------------------------

/// A cyclic `F_r`-linear code over `F_q` in triangular canonical form:
/// row `i` is `a_{i,0} + w a_{i,1} + ... + w^(m-1-i) a_{i,m-1-i}` with all
/// `a_{i,j}` in `F_r[x]`, the diagonal `a_{i,m-1-i}` a monic divisor of
/// `x^n - 1`, and off-diagonal entries reduced modulo the diagonal of their
/// column.
#[derive(Debug, Clone)]
pub struct SubfieldCyclicCode {
    spec: Field,
    n: usize,
    rows: Vec<Vec<Poly>>,
    code: Code,
}

impl SubfieldCyclicCode {
    pub fn spec(&self) -> &Field {
        &self.spec
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Row `i` as its component polynomials `a_{i,0}, ..., a_{i,m-1-i}`.
    pub fn rows(&self) -> &[Vec<Poly>] {
        &self.rows
    }

    /// The diagonal polynomial `a_{i,m-1-i}`.
    pub fn diagonal(&self, i: usize) -> &Poly {
        let m = self.spec.m() as usize;
        &self.rows[i][m - 1 - i]
    }

    /// `log_r |C| = mn - sum deg(a_{i,m-1-i})`.
    pub fn dim_formula(&self) -> usize {
        let m = self.spec.m() as usize;
        let total: usize = (0..m).map(|i| self.diagonal(i).degree().unwrap()).sum();
        m * self.n - total
    }

    pub fn code(&self) -> &Code {
        &self.code
    }

    /// Row `i` combined into a single polynomial over `F_q`.
    pub fn row_as_fq_poly(&self, i: usize) -> Poly {
        subfield_row_to_poly(&self.spec, &self.rows[i])
    }
}

fn check_fr_poly(spec: &Field, p: &Poly) -> Result<(), CyclicError> {
    if p.coeffs().iter().all(|&c| spec.is_in_subfield(c)) {
        Ok(())
    } else {
        Err(CyclicError::CoefficientOutsideSubfield)
    }
}

// Component-major layout: component c of the m-tuple occupies [c*n, (c+1)*n).

fn poly_into_block(p: &Poly, out: &mut [FieldElement]) {
    for (i, &c) in p.coeffs().iter().enumerate() {
        out[i] = c;
    }
}

fn block_poly(v: &[FieldElement], c: usize, n: usize) -> Poly {
    Poly::from_coeffs(v[c * n..(c + 1) * n].to_vec())
}

fn fq_poly_to_cm(spec: &Field, p: &Poly, n: usize) -> Vec<FieldElement> {
    let m = spec.m() as usize;
    let mut out = vec![FieldElement::ZERO; m * n];
    let reduced = spec.poly_mod_xn_minus_1(p, n);
    for (i, &c) in reduced.coeffs().iter().enumerate() {
        for (j, y) in spec.fr_coords(c).into_iter().enumerate() {
            out[j * n + i] = y;
        }
    }
    out
}

fn cm_to_fq_vector(spec: &Field, v: &[FieldElement], n: usize) -> Vec<FieldElement> {
    let m = spec.m() as usize;
    (0..n)
        .map(|i| {
            let comps: Vec<FieldElement> = (0..m).map(|c| v[c * n + i]).collect();
            spec.from_fr_coords(&comps)
        })
        .collect()
}

fn shift_cm(v: &[FieldElement], m: usize, n: usize) -> Vec<FieldElement> {
    let mut out = vec![FieldElement::ZERO; m * n];
    for c in 0..m {
        for i in 0..n {
            out[c * n + (i + 1) % n] = v[c * n + i];
        }
    }
    out
}

/// Canonical triangular form of the `F_r[x]`-module generated by `raw_gens`
/// (polynomials over `F_q`, taken together with all their cyclic shifts).
pub fn canonical_subfield_cyclic(
    spec: &Field,
    n: usize,
    raw_gens: &[Poly],
) -> Result<SubfieldCyclicCode, CyclicError> {
    let m = spec.m() as usize;
    let mut rows = Vec::with_capacity(raw_gens.len() * n);
    for g in raw_gens {
        let mut v = fq_poly_to_cm(spec, g, n);
        for _ in 0..n {
            rows.push(v.clone());
            v = shift_cm(&v, m, n);
        }
    }
    canonical_from_cm(spec, n, rows)
}

/// Canonical form of an existing code, which must be closed under one
/// cyclic shift.
pub fn canonical_from_code(code: &Code) -> Result<SubfieldCyclicCode, CyclicError> {
    let spec = code.spec().clone();
    let n = code.n();
    for g in code.gens() {
        if !code.contains(&cyclic_shift(g)) {
            return Err(CyclicError::NotShiftClosed);
        }
    }
    let m = spec.m() as usize;
    let rows = code
        .gens()
        .iter()
        .map(|g| {
            let mut v = vec![FieldElement::ZERO; m * n];
            for (i, &c) in g.iter().enumerate() {
                for (j, y) in spec.fr_coords(c).into_iter().enumerate() {
                    v[j * n + i] = y;
                }
            }
            v
        })
        .collect();
    canonical_from_cm(&spec, n, rows)
}

fn canonical_from_cm(
    spec: &Field,
    n: usize,
    rows: Vec<Vec<FieldElement>>,
) -> Result<SubfieldCyclicCode, CyclicError> {
    let m = spec.m() as usize;
    let (basis, _) = linalg::rref(spec, rows);
    let fq_rows: Vec<Vec<FieldElement>> =
        basis.iter().map(|b| cm_to_fq_vector(spec, b, n)).collect();
    let code = Code::from_fr_gens(spec.clone(), n, fq_rows)?;
    let rows = canon_rows(spec, n, m, basis);
    let out = SubfieldCyclicCode { spec: spec.clone(), n, rows, code };
    debug_assert_eq!(out.dim_formula(), out.code.dim_r());
    debug_assert!((0..m).all(|i| spec.poly_divides(out.diagonal(i), &spec.x_n_minus_1(n))));
    Ok(out)
}

/// The kernel/image recursion on an `F_r`-basis of the module in
/// component-major layout.
fn canon_rows(spec: &Field, n: usize, m: usize, basis: Vec<Vec<FieldElement>>) -> Vec<Vec<Poly>> {
    let xn1 = spec.x_n_minus_1(n);
    if m == 1 {
        let mut g = xn1;
        for b in &basis {
            g = spec.poly_gcd(&g, &block_poly(b, 0, n));
        }
        return vec![vec![g]];
    }
    let pn = (m - 1) * n;
    let nb = basis.len();
    // Augmented rows [projection | indicator]; pivots land in the projection
    // block first, so zero-projection rows expose kernel combinations.
    let aug: Vec<Vec<FieldElement>> = basis
        .iter()
        .enumerate()
        .map(|(bi, b)| {
            let mut row = b[n..].to_vec();
            let mut ind = vec![FieldElement::ZERO; nb];
            ind[bi] = FieldElement::ONE;
            row.extend(ind);
            row
        })
        .collect();
    let (aug, pivots) = linalg::rref(spec, aug);
    let mut image_rows = Vec::new();
    let mut image_pivots = Vec::new();
    let mut kernel_polys = vec![xn1];
    for (row, &pc) in aug.iter().zip(&pivots) {
        if pc < pn {
            image_rows.push(row.clone());
            image_pivots.push(pc);
        } else {
            // Zero projection: the tail holds a combination of basis rows
            // lying in the kernel (component 0 only).
            let mut elem = vec![FieldElement::ZERO; m * n];
            for (bi, c) in row[pn..].iter().enumerate() {
                if !c.is_zero() {
                    for (e, b) in elem.iter_mut().zip(&basis[bi]) {
                        *e = spec.add(*e, spec.mul(*c, *b));
                    }
                }
            }
            debug_assert!(elem[n..].iter().all(|x| x.is_zero()));
            kernel_polys.push(block_poly(&elem, 0, n));
        }
    }
    let mut a_last = kernel_polys[0].clone();
    for p in &kernel_polys[1..] {
        a_last = spec.poly_gcd(&a_last, p);
    }

    // Canonicalize the projected module and lift each generator back.
    let proj_basis: Vec<Vec<FieldElement>> =
        image_rows.iter().map(|r| r[..pn].to_vec()).collect();
    let sub_rows = canon_rows(spec, n, m - 1, proj_basis);

    let mut rows: Vec<Vec<Poly>> = Vec::with_capacity(m);
    for sub in &sub_rows {
        // Flatten the sub-row into a projection target. A diagonal equal to
        // x^n - 1 denotes the zero element and folds away here.
        let mut t = vec![FieldElement::ZERO; pn + nb];
        for (c, p) in sub.iter().enumerate() {
            poly_into_block(&spec.poly_mod_xn_minus_1(p, n), &mut t[c * n..(c + 1) * n]);
        }
        // Reduce against the image rows, tracking the combination used.
        for (row, &pc) in image_rows.iter().zip(&image_pivots) {
            if !t[pc].is_zero() {
                let fct = t[pc];
                for (tv, rv) in t.iter_mut().zip(row) {
                    *tv = spec.sub(*tv, spec.mul(fct, *rv));
                }
            }
        }
        debug_assert!(t[..pn].iter().all(|x| x.is_zero()), "lift target not in image");
        // Preimage = minus the tail combination of the basis rows.
        let mut pre = vec![FieldElement::ZERO; m * n];
        for (bi, c) in t[pn..].iter().enumerate() {
            if !c.is_zero() {
                let nc = spec.neg(*c);
                for (e, b) in pre.iter_mut().zip(&basis[bi]) {
                    *e = spec.add(*e, spec.mul(nc, *b));
                }
            }
        }
        // The lifted component 0 is only unique modulo the kernel generator;
        // plain division reduces it without leaving the module.
        let mut comp0 = block_poly(&pre, 0, n);
        let (_, rem) = spec.poly_divmod(&comp0, &a_last).unwrap();
        comp0 = rem;
        let mut row_polys = vec![comp0];
        row_polys.extend(sub.iter().cloned());
        rows.push(row_polys);
    }
    rows.push(vec![a_last]);
    rows
}

/// Cyclic `F_r`-linear subcode generated by `{b_i * g_i}` where each `b_i`
/// is an `F_r[x]` divisor of `(x^n - 1) / a_{i,m-1-i}`.
pub fn subfield_cyclic_subcode(
    c: &SubfieldCyclicCode,
    multipliers: &[Poly],
) -> Result<Code, CyclicError> {
    let spec = &c.spec;
    let m = spec.m() as usize;
    assert_eq!(multipliers.len(), m, "one multiplier per generator row");
    let xn1 = spec.x_n_minus_1(c.n);
    for (i, b) in multipliers.iter().enumerate() {
        check_fr_poly(spec, b)?;
        let (quot, rem) = spec.poly_divmod(&xn1, c.diagonal(i)).unwrap();
        debug_assert!(rem.is_zero());
        if !spec.poly_divides(b, &quot) {
            return Err(CyclicError::NotDivisor);
        }
    }
    let rows: Vec<Poly> = (0..m)
        .map(|i| spec.poly_mul(&multipliers[i], &c.row_as_fq_poly(i)))
        .collect();
    span_of_polys(spec, c.n, &rows)
}

/// The `F_r[x]`-module span (with shifts) of arbitrary `F_q` polynomials.
pub fn span_of_polys(spec: &Field, n: usize, polys: &[Poly]) -> Result<Code, CyclicError> {
    let mut gens = Vec::with_capacity(polys.len() * n);
    for p in polys {
        let mut v = spec.poly_mod_xn_minus_1(p, n).to_vector(n);
        for _ in 0..n {
            gens.push(v.clone());
            v = cyclic_shift(&v);
        }
    }
    Ok(Code::from_fr_gens(spec.clone(), n, gens)?)
}

// ---------------------------------------------------------------------------
// Shorthand parsing
// ---------------------------------------------------------------------------

/// One term of a subcode row: a product of `F_r[x]` multipliers applied to a
/// named generator row of the supercode.
#[derive(Debug, Clone, PartialEq)]
pub struct SubcodeTerm {
    pub multiplier: Poly,
    pub gen_index: usize,
}

/// A parsed generator shorthand.
#[derive(Debug, Clone, PartialEq)]
pub enum Shorthand {
    /// `(c0 c1 ...)`: a single polynomial.
    Plain(Poly),
    /// `(..) + w(..) + w^2(..)`: component polynomials of one generator row.
    SubfieldRow(Vec<Poly>),
    /// `(..)g`, `(..)(..)g1 + (..)g2`: multiplier terms against named rows.
    SubcodeTerms(Vec<SubcodeTerm>),
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Cursor<'a> {
        Cursor { text, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        while self.rest().starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn err(&self, msg: impl Into<String>) -> CyclicError {
        CyclicError::ParseError { pos: self.pos, msg: msg.into() }
    }
}

fn parse_paren_poly(spec: &Field, cur: &mut Cursor) -> Result<Poly, CyclicError> {
    cur.skip_ws();
    if !cur.eat('(') {
        return Err(cur.err("expected '('"));
    }
    let start = cur.pos;
    let Some(close) = cur.rest().find(')') else {
        return Err(cur.err("unterminated '('"));
    };
    let body = &cur.text[start..start + close];
    cur.pos = start + close + 1;
    let mut coeffs = Vec::new();
    for tok in body.split_whitespace() {
        let e = spec
            .parse_elem(tok)
            .map_err(|e| CyclicError::ParseError { pos: start, msg: format!("{e}") })?;
        coeffs.push(e);
    }
    if coeffs.is_empty() {
        return Err(CyclicError::ParseError { pos: start, msg: "empty polynomial".into() });
    }
    Ok(Poly::from_coeffs(coeffs))
}

/// Parse `(..)` optionally followed by `+ w(..) + w^2(..)` terms into the
/// component polynomials `a_0, a_1, ...` (all over `F_r`). A plain literal
/// yields a single component.
pub fn parse_subfield_row(spec: &Field, text: &str) -> Result<Vec<Poly>, CyclicError> {
    let mut cur = Cursor::new(text);
    let first = parse_paren_poly(spec, &mut cur)?;
    check_fr_poly(spec, &first)?;
    let mut comps = vec![first];
    loop {
        cur.skip_ws();
        if cur.rest().is_empty() {
            break;
        }
        if !cur.eat('+') {
            return Err(cur.err("expected '+'"));
        }
        cur.skip_ws();
        if !cur.eat('w') {
            return Err(cur.err("expected 'w'"));
        }
        let power = if cur.eat('^') {
            let digits: String = cur.rest().chars().take_while(|c| c.is_ascii_digit()).collect();
            if digits.is_empty() {
                return Err(cur.err("expected exponent"));
            }
            cur.pos += digits.len();
            digits.parse::<usize>().unwrap()
        } else {
            1
        };
        if power as u32 >= spec.m() {
            return Err(cur.err(format!("component w^{power} out of range")));
        }
        let p = parse_paren_poly(spec, &mut cur)?;
        check_fr_poly(spec, &p)?;
        while comps.len() <= power {
            comps.push(Poly::zero());
        }
        comps[power] = p;
    }
    Ok(comps)
}

/// Combine component polynomials into the row polynomial over `F_q`.
pub fn subfield_row_to_poly(spec: &Field, comps: &[Poly]) -> Poly {
    let mut acc = Poly::zero();
    for (j, a) in comps.iter().enumerate() {
        let wj = Poly::from_coeffs(vec![spec.gen_pow(j as u64)]);
        acc = spec.poly_add(&acc, &spec.poly_mul(&wj, a));
    }
    acc
}

/// Parse a subcode row: terms `(..)(..)gK` joined by `+`. A bare `g` (no
/// index) refers to the single generator of a plain cyclic supercode.
pub fn parse_subcode_row(spec: &Field, text: &str) -> Result<Vec<SubcodeTerm>, CyclicError> {
    let mut cur = Cursor::new(text);
    let mut terms = Vec::new();
    loop {
        let mut mult = parse_paren_poly(spec, &mut cur)?;
        loop {
            cur.skip_ws();
            if cur.rest().starts_with('(') {
                let f = parse_paren_poly(spec, &mut cur)?;
                mult = spec.poly_mul(&mult, &f);
            } else {
                break;
            }
        }
        cur.skip_ws();
        if !cur.eat('g') {
            return Err(cur.err("expected generator name 'g'"));
        }
        let digits: String = cur.rest().chars().take_while(|c| c.is_ascii_digit()).collect();
        cur.pos += digits.len();
        let gen_index = if digits.is_empty() {
            0
        } else {
            let k: usize = digits.parse().unwrap();
            if k == 0 {
                return Err(cur.err("generator indices are 1-based"));
            }
            k - 1
        };
        terms.push(SubcodeTerm { multiplier: mult, gen_index });
        cur.skip_ws();
        if cur.rest().is_empty() {
            break;
        }
        if !cur.eat('+') {
            return Err(cur.err("expected '+' between terms"));
        }
    }
    Ok(terms)
}

/// Dispatching parser for the table shorthand notations.
pub fn parse_gen_shorthand(spec: &Field, text: &str) -> Result<Shorthand, CyclicError> {
    let trimmed = text.trim();
    let after_parens = trimmed.rfind(')').map(|i| trimmed[i + 1..].trim()).unwrap_or("");
    if after_parens.starts_with('g') {
        return Ok(Shorthand::SubcodeTerms(parse_subcode_row(spec, trimmed)?));
    }
    if trimmed.contains('+') {
        return Ok(Shorthand::SubfieldRow(parse_subfield_row(spec, trimmed)?));
    }
    let mut cur = Cursor::new(trimmed);
    let p = parse_paren_poly(spec, &mut cur)?;
    cur.skip_ws();
    if !cur.rest().is_empty() {
        return Err(cur.err("trailing input"));
    }
    Ok(Shorthand::Plain(p))
}

/// Build the subcode spanned by evaluated term rows against the supercode's
/// generator polynomials as printed (not their canonicalized forms, which may
/// differ by kernel adjustments and would span a different subcode).
pub fn subcode_from_terms(
    spec: &Field,
    n: usize,
    gen_rows: &[Poly],
    rows: &[Vec<SubcodeTerm>],
) -> Result<Code, CyclicError> {
    let mut polys = Vec::with_capacity(rows.len());
    for terms in rows {
        let mut acc = Poly::zero();
        for t in terms {
            let Some(gen) = gen_rows.get(t.gen_index) else {
                return Err(CyclicError::ParseError {
                    pos: 0,
                    msg: format!("generator g{} out of range", t.gen_index + 1),
                });
            };
            acc = spec.poly_add(&acc, &spec.poly_mul(&t.multiplier, gen));
        }
        polys.push(acc);
    }
    span_of_polys(spec, n, &polys)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::InnerProductKind;
    use crate::galois::make_field;

    fn f(p: u32, l: u32, m: u32) -> Field {
        make_field(p, l, m).unwrap()
    }

    fn poly(spec: &Field, text: &str) -> Poly {
        match parse_gen_shorthand(spec, text).unwrap() {
            Shorthand::Plain(p) => p,
            other => panic!("expected plain poly, got {other:?}"),
        }
    }

    #[test]
    fn parse_shorthand_forms() {
        let f2 = f(2, 1, 1);
        let p = poly(&f2, "(1 1)");
        assert_eq!(p.degree(), Some(1));

        let f3 = f(3, 1, 1);
        let p = poly(&f3, "(2 2 2 1 1 0 2 0 2 0 0 1)");
        assert_eq!(p.degree(), Some(11));
        assert_eq!(p.coeff(0), FieldElement(2));

        let f4 = f(2, 1, 2);
        let p = poly(&f4, "(1 w^2 1 1 w 1)");
        assert_eq!(p.degree(), Some(5));
        assert_eq!(p.coeff(1), f4.gen_pow(2));
        assert_eq!(p.coeff(4), f4.generator());

        match parse_gen_shorthand(&f4, "(1 0 1 1)+w(1 1)").unwrap() {
            Shorthand::SubfieldRow(comps) => {
                assert_eq!(comps.len(), 2);
                assert_eq!(comps[0].degree(), Some(3));
                assert_eq!(comps[1].degree(), Some(1));
            }
            other => panic!("unexpected {other:?}"),
        }

        match parse_gen_shorthand(&f2, "(1 1 0 1)g").unwrap() {
            Shorthand::SubcodeTerms(terms) => {
                assert_eq!(terms.len(), 1);
                assert_eq!(terms[0].gen_index, 0);
            }
            other => panic!("unexpected {other:?}"),
        }

        match parse_gen_shorthand(&f2, "(1 1 0 1 1 0 1 1 0 1 1 0 1 1)g2 + (1 0 0 1)(0 1 1)g1")
            .unwrap()
        {
            Shorthand::SubcodeTerms(terms) => {
                assert_eq!(terms.len(), 2);
                assert_eq!(terms[0].gen_index, 1);
                assert_eq!(terms[1].gen_index, 0);
                // (1 + x^3)(x + x^2) expanded.
                assert_eq!(terms[1].multiplier.degree(), Some(5));
            }
            other => panic!("unexpected {other:?}"),
        }

        assert!(matches!(parse_gen_shorthand(&f2, "(1 2)"), Err(CyclicError::ParseError { .. })));
        assert!(matches!(parse_gen_shorthand(&f2, "(1 1"), Err(CyclicError::ParseError { .. })));
    }

    #[test]
    fn cyclic_from_gen_examples() {
        let f2 = f(2, 1, 1);
        // g = 1 is the full space.
        let full = cyclic_from_gen(&f2, 5, &Poly::one()).unwrap();
        assert_eq!(full.dim_r(), 5);
        // [7,4,3]_2 from g = (1011).
        let ham = cyclic_from_gen(&f2, 7, &poly(&f2, "(1 0 1 1)")).unwrap();
        assert_eq!(ham.dim_r(), 4);
        assert_eq!(ham.min_distance().unwrap(), 3);
        // [24,20,3]_3 from g = (2 1 2 0 1).
        let f3 = f(3, 1, 1);
        let c = cyclic_from_gen(&f3, 24, &poly(&f3, "(2 1 2 0 1)")).unwrap();
        assert_eq!(c.dim_r(), 20);
        assert_eq!(c.min_distance().unwrap(), 3);
        // Non-divisor rejected.
        assert!(matches!(
            cyclic_from_gen(&f2, 4, &poly(&f2, "(1 1 1)")),
            Err(CyclicError::NotDivisor)
        ));
    }

    #[test]
    fn cyclic_codes_are_shift_closed() {
        let f3 = f(3, 1, 1);
        let c = cyclic_from_gen(&f3, 8, &poly(&f3, "(1 1 0 1)")).unwrap();
        for g in c.gens() {
            assert!(c.contains(&cyclic_shift(g)));
        }
    }

    #[test]
    fn cyclic_subcode_examples() {
        let f2 = f(2, 1, 1);
        let c = CyclicCode::new(f2.clone(), 7, &poly(&f2, "(1 0 1 1)")).unwrap();
        // h = 1 keeps the code.
        let same = c.subcode(&Poly::one()).unwrap();
        assert_eq!(same.code(), c.code());
        // (1101)g gives the [7,1,7] repetition code.
        let d = c.subcode(&poly(&f2, "(1 1 0 1)")).unwrap();
        assert_eq!(d.dim(), 1);
        assert_eq!(d.code().min_distance().unwrap(), 7);
        assert!(Code::is_nested(d.code(), c.code()).unwrap());

        // [11,5,6]_4 subcode of the [11,6,5]_4 code.
        let f4 = f(2, 1, 2);
        let c = CyclicCode::new(f4.clone(), 11, &poly(&f4, "(1 w^2 1 1 w 1)")).unwrap();
        assert_eq!(c.dim(), 6);
        assert_eq!(c.code().min_distance().unwrap(), 5);
        let d = c.subcode(&poly(&f4, "(1 1)")).unwrap();
        assert_eq!(d.dim(), 5);
        assert_eq!(d.code().min_distance().unwrap(), 6);
    }

    #[test]
    fn canonical_base_case_fr_generator() {
        // A single F_r divisor polynomial spans component 0 only, so every
        // other diagonal is x^n - 1; spanning it together with its generator
        // multiples gives the F_q-linear cyclic code with all diagonals g.
        let f4 = f(2, 1, 2);
        let g = poly(&f4, "(1 1 1)"); // x^2+x+1 divides x^6-1 over F_2
        let sc = canonical_subfield_cyclic(&f4, 6, &[g.clone()]).unwrap();
        assert_eq!(sc.rows().len(), 2);
        assert_eq!(sc.diagonal(1), &g);
        assert_eq!(sc.diagonal(0).degree(), Some(6));
        assert_eq!(sc.dim_formula(), 6 - 2);

        let w = f4.generator();
        let wg = f4.poly_scale(&g, w);
        let sc = canonical_subfield_cyclic(&f4, 6, &[g.clone(), wg]).unwrap();
        assert_eq!(sc.diagonal(0), &g);
        assert_eq!(sc.diagonal(1), &g);
        assert!(sc.code().is_fq_linear());
        assert_eq!(sc.dim_formula(), 2 * (6 - 2));
    }

    #[test]
    fn canonical_table_style_pair_over_f4() {
        // Rows (1011)+w(11) and (111111) over F_4 with n = 6 span a
        // (6, 2^6, 4)_4 code; the subcode (10101)g1, (1)g2 is (6, 2^2, 6)_4.
        let f4 = f(2, 1, 2);
        let r1 = subfield_row_to_poly(&f4, &parse_subfield_row(&f4, "(1 0 1 1)+w(1 1)").unwrap());
        let r2 = subfield_row_to_poly(&f4, &parse_subfield_row(&f4, "(1 1 1 1 1 1)").unwrap());
        let c = canonical_subfield_cyclic(&f4, 6, &[r1, r2]).unwrap();
        assert_eq!(c.code().dim_r(), 6);
        assert_eq!(c.code().min_distance().unwrap(), 4);
        assert!(!c.code().is_fq_linear());

        let b1 = poly(&f4, "(1 0 1 0 1)");
        let d = subfield_cyclic_subcode(&c, &[b1, Poly::one()]).unwrap();
        assert_eq!(d.dim_r(), 2);
        assert_eq!(d.min_distance().unwrap(), 6);
        assert!(Code::is_nested(&d, c.code()).unwrap());

        // All multipliers = 1 reproduce the code.
        let same = subfield_cyclic_subcode(&c, &[Poly::one(), Poly::one()]).unwrap();
        assert_eq!(&same, c.code());

        // A non-divisor multiplier is rejected.
        let bad = poly(&f4, "(1 0 1 1)");
        assert!(matches!(
            subfield_cyclic_subcode(&c, &[bad, Poly::one()]),
            Err(CyclicError::NotDivisor)
        ));
    }

    #[test]
    fn canonical_three_generator_row_over_f8() {
        // (10, 2^22, 3)_8 from the three-row shorthand.
        let f8 = f(2, 1, 3);
        let rows = [
            "(0 0 0 0 1 1)+w(0)+w^2(1)",
            "(1 1 0 1 0 0 1)+w(1)",
            "(1 0 1 0 1 0 1 0 1)",
        ];
        let polys: Vec<Poly> = rows
            .iter()
            .map(|r| subfield_row_to_poly(&f8, &parse_subfield_row(&f8, r).unwrap()))
            .collect();
        let c = canonical_subfield_cyclic(&f8, 10, &polys).unwrap();
        assert_eq!(c.code().dim_r(), 22);
        assert_eq!(c.dim_formula(), 22);
        assert_eq!(c.code().min_distance().unwrap(), 3);
    }

    #[test]
    fn canonicalization_is_idempotent() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for spec in [f(2, 1, 2), f(2, 1, 3)] {
            for _ in 0..10 {
                let n = rng.gen_range(2..=8usize);
                let ngens = rng.gen_range(1..=3usize);
                let gens: Vec<Poly> = (0..ngens)
                    .map(|_| {
                        Poly::from_coeffs(
                            (0..n).map(|_| FieldElement(rng.gen_range(0..spec.q()))).collect(),
                        )
                    })
                    .collect();
                let c1 = canonical_subfield_cyclic(&spec, n, &gens).unwrap();
                let c2 = canonical_from_code(c1.code()).unwrap();
                assert_eq!(c1.rows(), c2.rows(), "n={n} q={}", spec.q());
                assert_eq!(c1.code(), c2.code());
                // Property ii: each diagonal divides the previous row's entry
                // in its column times the cofactor of the previous diagonal.
                let m = spec.m() as usize;
                let xn1 = spec.x_n_minus_1(n);
                for i in 1..m {
                    let (cof, rem) = spec.poly_divmod(&xn1, c1.diagonal(i - 1)).unwrap();
                    assert!(rem.is_zero());
                    let prev_col = &c1.rows()[i - 1][m - 1 - i];
                    let num = spec.poly_mul(prev_col, &cof);
                    assert!(spec.poly_divides(c1.diagonal(i), &num));
                }
            }
        }
    }

    #[test]
    fn canonical_rejects_non_shift_closed() {
        let f4 = f(2, 1, 2);
        let c = Code::from_fr_gens(
            f4.clone(),
            3,
            vec![vec![FieldElement::ONE, FieldElement::ZERO, FieldElement::ZERO]],
        )
        .unwrap();
        assert!(matches!(canonical_from_code(&c), Err(CyclicError::NotShiftClosed)));
    }

    #[test]
    fn lemma_quadratic_shape_for_m2() {
        use rand::{Rng, SeedableRng};
        let f4 = f(2, 1, 2);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let n = rng.gen_range(2..=9usize);
            let gens: Vec<Poly> = (0..2)
                .map(|_| {
                    Poly::from_coeffs((0..n).map(|_| FieldElement(rng.gen_range(0..4))).collect())
                })
                .collect();
            let c = canonical_subfield_cyclic(&f4, n, &gens).unwrap();
            let xn1 = f4.x_n_minus_1(n);
            // b and c divide x^n - 1; c | a (x^n-1)/b; a reduced mod c.
            let b = c.diagonal(0).clone();
            let cc = c.diagonal(1).clone();
            let a = c.rows()[0][0].clone();
            assert!(f4.poly_divides(&b, &xn1));
            assert!(f4.poly_divides(&cc, &xn1));
            let (cof, _) = f4.poly_divmod(&xn1, &b).unwrap();
            assert!(f4.poly_divides(&cc, &f4.poly_mul(&a, &cof)));
            if let Some(da) = a.degree() {
                assert!(da < cc.degree().unwrap());
            }
        }
    }

    #[test]
    fn dual_distribution_consistency_for_subfield_cyclic() {
        let f4 = f(2, 1, 2);
        let r1 = subfield_row_to_poly(&f4, &parse_subfield_row(&f4, "(1 0 1 1)+w(1 1)").unwrap());
        let r2 = subfield_row_to_poly(&f4, &parse_subfield_row(&f4, "(1 1 1 1 1 1)").unwrap());
        let c = canonical_subfield_cyclic(&f4, 6, &[r1, r2]).unwrap();
        let dual = c.code().dual(InnerProductKind::TraceEuclidean).unwrap();
        let tr = crate::code::macwilliams_transform(
            c.code().weight_distribution().unwrap().counts(),
            &c.code().size(),
            6,
            4,
        )
        .unwrap();
        let predicted = crate::code::rationals_to_distribution(&tr).unwrap();
        assert_eq!(&predicted, dual.weight_distribution().unwrap());
    }
}
