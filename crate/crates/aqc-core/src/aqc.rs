//! Derivation of asymmetric quantum code parameters `[[n, k, dz/dx]]_q`
//! from nested pairs of classical codes under any of the four inner
//! products: the CSS-like construction, the self-orthogonal and
//! full-weight-codeword specializations, pair transformations between inner
//! products, and the quantum Singleton check.

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::code::{Code, CodeError, InnerProductKind};
use crate::galois::{FieldElement, FieldError};
use crate::lp::{fmt_rat, rat_int, Rat};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AqcError {
    #[error("codes are not nested under the chosen inner product")]
    NotNested,
    #[error("code is not self-orthogonal under the chosen inner product")]
    NotSelfOrthogonal,
    #[error("code has no full-weight codeword")]
    NoFullWeightWord,
    #[error("code is not F_q-linear")]
    NotFqLinear,
    #[error("pair conversion requires q = r^2")]
    NotQuadraticExtension,
    #[error("unsupported inner-product conversion")]
    UnsupportedKindPair,
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Parameters `[[n, k, dz/dx]]_q` of a derived asymmetric quantum code.
/// `k = log_q K` is exact: subfield-linear pairs give `K = r^s`, so the
/// denominator of `k` divides `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AqcParams {
    pub q: u32,
    pub n: usize,
    pub k: Rat,
    pub dz: usize,
    pub dx: usize,
    pub pure: bool,
    pub kind: InnerProductKind,
    /// Whether `dz`/`dx` were interchanged to honor the `dz >= dx`
    /// convention.
    pub swapped: bool,
}

impl AqcParams {
    pub fn display(&self) -> String {
        format!("[[{},{},{}/{}]]_{}", self.n, fmt_rat(&self.k), self.dz, self.dx, self.q)
    }
}

/// Machine-readable derivation record.
#[derive(Debug, Clone, Serialize)]
pub struct DerivationReport {
    pub q: u32,
    pub n: usize,
    pub k_num: String,
    pub k_den: String,
    pub dz: usize,
    pub dx: usize,
    pub pure: bool,
    pub kind: String,
    pub swapped: bool,
    pub singleton_slack: String,
    pub construction_type: String,
}

impl AqcParams {
    pub fn report(&self, construction_type: &str) -> DerivationReport {
        DerivationReport {
            q: self.q,
            n: self.n,
            k_num: self.k.numer().to_string(),
            k_den: self.k.denom().to_string(),
            dz: self.dz,
            dx: self.dx,
            pure: self.pure,
            kind: self.kind.label().to_string(),
            swapped: self.swapped,
            singleton_slack: fmt_rat(&quantum_singleton(self).slack),
            construction_type: construction_type.to_string(),
        }
    }
}

/// A verified nested pair `C1^perp <= C2` under a fixed inner product.
#[derive(Debug, Clone)]
pub struct NestedPair {
    c1: Code,
    c2: Code,
    /// `dual(c1, kind)`, cached at construction.
    inner: Code,
    kind: InnerProductKind,
}

impl NestedPair {
    pub fn new(c1: Code, c2: Code, kind: InnerProductKind) -> Result<NestedPair, AqcError> {
        let inner = c1.dual(kind)?;
        if !Code::is_nested(&inner, &c2)? {
            return Err(AqcError::NotNested);
        }
        Ok(NestedPair { c1, c2, inner, kind })
    }

    /// Build from the inner code directly: `c1 = inner^perp`, so that
    /// `c1^perp = inner` by closure.
    pub fn from_inner(inner: Code, c2: Code, kind: InnerProductKind) -> Result<NestedPair, AqcError> {
        if !Code::is_nested(&inner, &c2)? {
            return Err(AqcError::NotNested);
        }
        let c1 = inner.dual(kind)?;
        Ok(NestedPair { c1, c2, inner, kind })
    }

    pub fn c1(&self) -> &Code {
        &self.c1
    }

    pub fn c2(&self) -> &Code {
        &self.c2
    }

    pub fn inner(&self) -> &Code {
        &self.inner
    }

    pub fn kind(&self) -> InnerProductKind {
        self.kind
    }
}

/// The CSS-like construction: `K = |C1| |C2| / q^n`,
/// `dz = wt(C2 \ C1^perp)`, `dx = wt(C1 \ C2^perp)`, purity iff the
/// set-difference weights equal the code distances, output normalized to
/// `dz >= dx`. A pair with `C1^perp = C2` gives `K = 1`, takes the code
/// distances directly, and is pure by convention.
pub fn css_like(pair: &NestedPair) -> Result<AqcParams, AqcError> {
    let c1 = &pair.c1;
    let c2 = &pair.c2;
    let spec = c2.spec();
    let n = c2.n();
    let m = spec.m() as usize;
    // log_r K = dim(C1) + dim(C2) - mn >= 0 by the nesting.
    let s = (c1.dim_r() + c2.dim_r()) as i64 - (m * n) as i64;
    debug_assert!(s >= 0);
    let k = Rat::new(BigInt::from(s), BigInt::from(m as i64));

    let (dz, dx, pure) = if pair.inner.dim_r() == c2.dim_r() {
        let dz = c2.min_distance()?;
        let dx = c1.min_distance()?;
        (dz, dx, true)
    } else {
        let c2_perp = c2.dual(pair.kind)?;
        let dz = c2.wt_setminus(&pair.inner)?;
        let dx = c1.wt_setminus(&c2_perp)?;
        let pure = dz == c2.min_distance()? && dx == c1.min_distance()?;
        (dz, dx, pure)
    };

    let (dz, dx, swapped) = if dz < dx { (dx, dz, true) } else { (dz, dx, false) };
    Ok(AqcParams { q: spec.q(), n, k, dz, dx, pure, kind: pair.kind, swapped })
}

/// `[[n, n - 2 log_q |C|, d_perp/d_perp]]_q` from a self-orthogonal code.
pub fn self_orthogonal_aqc(c: &Code, kind: InnerProductKind) -> Result<AqcParams, AqcError> {
    let dual = c.dual(kind)?;
    if !Code::is_nested(c, &dual)? {
        return Err(AqcError::NotSelfOrthogonal);
    }
    let pair = NestedPair::from_inner(c.clone(), dual, kind)?;
    css_like(&pair)
}

/// `[[n, k-1, d/2]]_q` from an `F_q`-linear `[n,k,d]_q` code containing a
/// codeword of weight `n`: pair the dual of its span against the code.
pub fn full_weight_aqc(c: &Code) -> Result<AqcParams, AqcError> {
    if !c.is_fq_linear() {
        return Err(AqcError::NotFqLinear);
    }
    let n = c.n();
    let full = c
        .enumerate_codewords()?
        .find(|w| w.iter().all(|x| !x.is_zero()))
        .ok_or(AqcError::NoFullWeightWord)?;
    let line = Code::from_fq_gens(c.spec().clone(), n, vec![full])?;
    debug_assert_eq!(line.dual(InnerProductKind::Euclidean)?.min_distance()?, 2);
    let pair = NestedPair::from_inner(line, c.clone(), InnerProductKind::Euclidean)?;
    css_like(&pair)
}

/// Transport a nested pair to another inner product without changing the
/// derived parameters: conjugate (and twist by the skew element in odd
/// characteristic) between the trace forms, or between the plain forms for
/// `F_q`-linear pairs.
pub fn convert_pair(
    pair: &NestedPair,
    target: InnerProductKind,
) -> Result<NestedPair, AqcError> {
    use InnerProductKind::*;
    let spec = pair.c2.spec().clone();
    if pair.kind == target {
        return Ok(pair.clone());
    }
    let supported = matches!(
        (pair.kind, target),
        (TraceEuclidean, TraceHermitian)
            | (TraceHermitian, TraceEuclidean)
            | (Euclidean, Hermitian)
            | (Hermitian, Euclidean)
    );
    if !supported {
        return Err(AqcError::UnsupportedKindPair);
    }
    if spec.m() != 2 {
        return Err(AqcError::NotQuadraticExtension);
    }
    // Scale factor: alpha^{-1} toward the trace-Hermitian side, alpha back,
    // no twist in even characteristic or between the plain forms.
    let plain = matches!(pair.kind, Euclidean | Hermitian);
    let scale = if spec.p() == 2 || plain {
        FieldElement::ONE
    } else {
        let alpha = spec.find_skew_alpha()?;
        match target {
            TraceHermitian => spec.inv(alpha),
            _ => alpha,
        }
    };
    let map = |v: &[FieldElement]| -> Result<Vec<FieldElement>, AqcError> {
        v.iter()
            .map(|&x| Ok(spec.mul(scale, spec.conj(x)?)))
            .collect()
    };
    let new_inner_gens: Vec<Vec<FieldElement>> = pair
        .inner
        .gens()
        .iter()
        .map(|g| map(g))
        .collect::<Result<_, _>>()?;
    let new_inner = Code::from_fr_gens(spec.clone(), pair.c2.n(), new_inner_gens)?;
    let new_c2 = pair.c2.dual(pair.kind)?.dual(target)?;
    NestedPair::from_inner(new_inner, new_c2, target)
}

/// Slack of the quantum Singleton bound `K <= q^(n - dz - dx + 2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingletonCheck {
    pub meets: bool,
    pub slack: Rat,
}

pub fn quantum_singleton(p: &AqcParams) -> SingletonCheck {
    let bound = rat_int(p.n as i64 - p.dz as i64 - p.dx as i64 + 2);
    let slack = bound - &p.k;
    SingletonCheck { meets: slack == rat_int(0), slack }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic::{parse_gen_shorthand, parse_subfield_row, subfield_row_to_poly,
        canonical_subfield_cyclic, subfield_cyclic_subcode, CyclicCode, Shorthand};
    use crate::galois::{make_field, Field, Poly};

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
    fn full_space_pair_is_n_n_1_1() {
        let f3 = f(3, 1, 1);
        let full = Code::full_space(f3.clone(), 4);
        let pair = NestedPair::new(full.clone(), full, InnerProductKind::Euclidean).unwrap();
        let p = css_like(&pair).unwrap();
        assert_eq!(p.display(), "[[4,4,1/1]]_3");
        assert!(p.pure);
        assert!(quantum_singleton(&p).meets);
    }

    #[test]
    fn hamming_pair_gives_7_3_3_2() {
        let f2 = f(2, 1, 1);
        let c = CyclicCode::new(f2.clone(), 7, &poly(&f2, "(1 0 1 1)")).unwrap();
        let d = c.subcode(&poly(&f2, "(1 1 0 1)")).unwrap();
        let pair =
            NestedPair::from_inner(d.code().clone(), c.code().clone(), InnerProductKind::Euclidean)
                .unwrap();
        let p = css_like(&pair).unwrap();
        assert_eq!(p.display(), "[[7,3,3/2]]_2");
        assert!(p.pure);
        assert!(!p.swapped);

        // The dual pair gives the same (n, k) with dz and dx interchanged
        // before normalization, hence a swapped flag after it.
        let dual_pair = NestedPair::from_inner(
            c.code().dual(InnerProductKind::Euclidean).unwrap(),
            d.code().dual(InnerProductKind::Euclidean).unwrap(),
            InnerProductKind::Euclidean,
        )
        .unwrap();
        let pd = css_like(&dual_pair).unwrap();
        assert_eq!((pd.n, pd.k.clone(), pd.dz, pd.dx), (p.n, p.k.clone(), p.dz, p.dx));
        assert!(pd.swapped);
    }

    #[test]
    fn table_pair_over_f4_is_6_2_4_2() {
        let f4 = f(2, 1, 2);
        let r1 = subfield_row_to_poly(&f4, &parse_subfield_row(&f4, "(1 0 1 1)+w(1 1)").unwrap());
        let r2 = subfield_row_to_poly(&f4, &parse_subfield_row(&f4, "(1 1 1 1 1 1)").unwrap());
        let c = canonical_subfield_cyclic(&f4, 6, &[r1, r2]).unwrap();
        let d = subfield_cyclic_subcode(&c, &[poly(&f4, "(1 0 1 0 1)"), Poly::one()]).unwrap();
        let pair =
            NestedPair::from_inner(d, c.code().clone(), InnerProductKind::TraceEuclidean).unwrap();
        let p = css_like(&pair).unwrap();
        assert_eq!(p.display(), "[[6,2,4/2]]_4");
        assert_eq!(p.k, rat_int(2));
        assert!(p.pure);
        // AQMDS: slack 0.
        let s = quantum_singleton(&p);
        assert!(s.meets);
        assert_eq!(s.slack, rat_int(0));
    }

    #[test]
    fn self_orthogonal_examples() {
        let f2 = f(2, 1, 1);
        // {0} gives [[n, n, 1/1]].
        let zero = Code::zero(f2.clone(), 3);
        let p = self_orthogonal_aqc(&zero, InnerProductKind::Euclidean).unwrap();
        assert_eq!(p.display(), "[[3,3,1/1]]_2");

        // The [4,2] code with rows (1010),(0101) is Euclidean self-dual.
        let rows = vec![
            vec![FieldElement::ONE, FieldElement::ZERO, FieldElement::ONE, FieldElement::ZERO],
            vec![FieldElement::ZERO, FieldElement::ONE, FieldElement::ZERO, FieldElement::ONE],
        ];
        let c = Code::from_fq_gens(f2.clone(), 4, rows).unwrap();
        let p = self_orthogonal_aqc(&c, InnerProductKind::Euclidean).unwrap();
        assert_eq!(p.display(), "[[4,0,2/2]]_2");
        assert!(p.pure);

        // A Hermitian self-orthogonal [6,2]_4 subcode of the hexacode.
        let f4 = f(2, 1, 2);
        let w = f4.generator();
        let one = FieldElement::ONE;
        let zero = FieldElement::ZERO;
        let rows = vec![
            vec![one, zero, zero, one, w, w],
            vec![zero, one, zero, w, one, w],
        ];
        let c = Code::from_fq_gens(f4.clone(), 6, rows).unwrap();
        let p = self_orthogonal_aqc(&c, InnerProductKind::Hermitian).unwrap();
        assert_eq!((p.n, p.k.clone()), (6, rat_int(2)));
        assert_eq!(p.dz, p.dx);
        // d_perp from enumeration of the Hermitian dual.
        let dperp = c.dual(InnerProductKind::Hermitian).unwrap().min_distance().unwrap();
        assert_eq!(p.dz, dperp);

        // Non-self-orthogonal input errors.
        let bad = Code::full_space(f2, 3);
        assert!(matches!(
            self_orthogonal_aqc(&bad, InnerProductKind::Euclidean),
            Err(AqcError::NotSelfOrthogonal)
        ));
    }

    #[test]
    fn full_weight_examples() {
        // The repetition code gives [[n, 0, n/2]].
        let f3 = f(3, 1, 1);
        let rep = Code::from_fq_gens(f3.clone(), 5, vec![vec![FieldElement::ONE; 5]]).unwrap();
        let p = full_weight_aqc(&rep).unwrap();
        assert_eq!(p.display(), "[[5,0,5/2]]_3");

        // Extended Hamming [8,4,4] contains the all-ones word.
        let f2 = f(2, 1, 1);
        let rows = ["1 1 1 0 1 0 0 0", "0 1 1 1 0 1 0 0", "0 0 1 1 1 0 1 0", "1 1 1 1 1 1 1 1"];
        let gens: Vec<Vec<FieldElement>> = rows
            .iter()
            .map(|r| r.split_whitespace().map(|t| f2.parse_elem(t).unwrap()).collect())
            .collect();
        let c = Code::from_fq_gens(f2.clone(), 8, gens).unwrap();
        assert_eq!(c.dim_r(), 4);
        assert_eq!(c.min_distance().unwrap(), 4);
        let p = full_weight_aqc(&c).unwrap();
        assert_eq!(p.display(), "[[8,3,4/2]]_2");

        // A code with no full-weight word errors.
        let c = Code::from_fq_gens(
            f2.clone(),
            3,
            vec![vec![FieldElement::ONE, FieldElement::ONE, FieldElement::ZERO]],
        )
        .unwrap();
        assert!(matches!(full_weight_aqc(&c), Err(AqcError::NoFullWeightWord)));
    }

    #[test]
    fn convert_pair_preserves_parameters() {
        use InnerProductKind::*;
        // The (6, 2^6, 4)_4 pair converted TrE -> TrH keeps [[6,2,4/2]].
        let f4 = f(2, 1, 2);
        let r1 = subfield_row_to_poly(&f4, &parse_subfield_row(&f4, "(1 0 1 1)+w(1 1)").unwrap());
        let r2 = subfield_row_to_poly(&f4, &parse_subfield_row(&f4, "(1 1 1 1 1 1)").unwrap());
        let c = canonical_subfield_cyclic(&f4, 6, &[r1, r2]).unwrap();
        let d = subfield_cyclic_subcode(
            &c,
            &[{
                match parse_gen_shorthand(&f4, "(1 0 1 0 1)").unwrap() {
                    Shorthand::Plain(p) => p,
                    _ => unreachable!(),
                }
            }, Poly::one()],
        )
        .unwrap();
        let pair = NestedPair::from_inner(d, c.code().clone(), TraceEuclidean).unwrap();
        let p0 = css_like(&pair).unwrap();

        let trh = convert_pair(&pair, TraceHermitian).unwrap();
        let p1 = css_like(&trh).unwrap();
        assert_eq!((p1.n, p1.k.clone(), p1.dz, p1.dx), (p0.n, p0.k.clone(), p0.dz, p0.dx));

        // Converting twice returns to parameters-identical territory.
        let back = convert_pair(&trh, TraceEuclidean).unwrap();
        let p2 = css_like(&back).unwrap();
        assert_eq!((p2.n, p2.k, p2.dz, p2.dx), (p0.n, p0.k.clone(), p0.dz, p0.dx));

        // Odd characteristic with the skew twist over F_9.
        use rand::{Rng, SeedableRng};
        let f9 = f(3, 1, 2);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        let mut tried = 0;
        while tried < 5 {
            let n = rng.gen_range(2..=4usize);
            let k = rng.gen_range(1..=n);
            let gens: Vec<Vec<FieldElement>> = (0..k)
                .map(|_| (0..n).map(|_| FieldElement(rng.gen_range(0..9))).collect())
                .collect();
            let inner = Code::from_fr_gens(f9.clone(), n, gens).unwrap();
            let c2 = Code::full_space(f9.clone(), n);
            let pair = NestedPair::from_inner(inner, c2, TraceEuclidean).unwrap();
            let Ok(p0) = css_like(&pair) else { continue };
            let conv = convert_pair(&pair, TraceHermitian).unwrap();
            let p1 = css_like(&conv).unwrap();
            assert_eq!((p1.n, p1.k, p1.dz, p1.dx), (p0.n, p0.k, p0.dz, p0.dx));
            tried += 1;
        }

        // Unsupported conversions are rejected.
        assert!(matches!(convert_pair(&pair, Hermitian), Err(AqcError::UnsupportedKindPair)));
        let f2 = f(2, 1, 1);
        let full = Code::full_space(f2, 3);
        let pair2 = NestedPair::new(full.clone(), full, Euclidean).unwrap();
        assert!(matches!(convert_pair(&pair2, Hermitian), Err(AqcError::NotQuadraticExtension)));
    }

    #[test]
    fn singleton_slack_values() {
        let p = AqcParams {
            q: 2,
            n: 13,
            k: rat_int(1),
            dz: 5,
            dx: 3,
            pure: true,
            kind: InnerProductKind::Euclidean,
            swapped: false,
        };
        let s = quantum_singleton(&p);
        assert!(!s.meets);
        assert_eq!(s.slack, rat_int(6));
    }

    #[test]
    fn report_shape() {
        let p = AqcParams {
            q: 8,
            n: 10,
            k: Rat::new(BigInt::from(19), BigInt::from(3)),
            dz: 3,
            dx: 2,
            pure: true,
            kind: InnerProductKind::TraceEuclidean,
            swapped: false,
        };
        let rep = p.report("ACC");
        let js = serde_json::to_string(&rep).unwrap();
        assert!(js.contains("\"k_num\":\"19\""));
        assert!(js.contains("\"k_den\":\"3\""));
        assert!(js.contains("\"kind\":\"TrE\""));
        // (10 - 3 - 2 + 2) - 19/3 = 2/3.
        assert!(js.contains("\"singleton_slack\":\"2/3\""));
    }
}
