//! Hand-built nested pairs for the small binary parameter sets that no
//! generic construction here covers: `[[4,1,2/2]]_2`, `[[5,2,2/2]]_2`, and
//! `[[13,1,5/3]]_2`. The last one starts from a `[13,9,3]_2` code obtained
//! by shortening the cyclic Hamming `[15,11,3]_2` twice (its dual is a
//! twice-punctured simplex code of minimum distance 6), extends that dual by
//! the all-ones row to a `[13,5,5]_2` code, and pairs the two.

use crate::aqc::{css_like, AqcError, AqcParams, NestedPair};
use crate::code::{Code, InnerProductKind};
use crate::cyclic::cyclic_from_gen;
use crate::galois::{make_field, Field, FieldElement, Poly};

/// Names accepted by [`run_recipe`].
pub const RECIPES: [&str; 3] = ["4-1-2-2", "5-2-2-2", "13-1-5-3"];

fn bits(_spec: &Field, row: &str) -> Vec<FieldElement> {
    row.bytes()
        .map(|b| match b {
            b'0' => FieldElement::ZERO,
            b'1' => FieldElement::ONE,
            _ => panic!("bad bit row"),
        })
        .collect()
}

/// Shorten a code at the given coordinates: keep the words vanishing there,
/// then delete those coordinates. Enumeration-based; desk scale only.
fn shorten(code: &Code, positions: &[usize]) -> Code {
    let spec = code.spec().clone();
    let keep: Vec<usize> =
        (0..code.n()).filter(|i| !positions.contains(i)).collect();
    let words: Vec<Vec<FieldElement>> = code
        .enumerate_codewords()
        .expect("shortening is enumeration-based")
        .filter(|w| positions.iter().all(|&p| w[p].is_zero()))
        .map(|w| keep.iter().map(|&i| w[i]).collect())
        .collect();
    Code::from_fr_gens(spec, keep.len(), words).unwrap()
}

/// `[[4,1,2/2]]_2` from the `[4,2,2]` code with rows 1010, 0101.
pub fn recipe_4_1_2_2() -> Result<AqcParams, AqcError> {
    let f2 = make_field(2, 1, 1)?;
    let c = Code::from_fq_gens(f2.clone(), 4, vec![bits(&f2, "1010"), bits(&f2, "0101")])?;
    crate::aqc::full_weight_aqc(&c)
}

/// `[[5,2,2/2]]_2` from the `[5,3,2]` code with rows 10001, 01011, 00101.
pub fn recipe_5_2_2_2() -> Result<AqcParams, AqcError> {
    let f2 = make_field(2, 1, 1)?;
    let c = Code::from_fq_gens(
        f2.clone(),
        5,
        vec![bits(&f2, "10001"), bits(&f2, "01011"), bits(&f2, "00101")],
    )?;
    crate::aqc::full_weight_aqc(&c)
}

/// `[[13,1,5/3]]_2`: shorten the `[15,11,3]` Hamming code to `[13,9,3]`,
/// extend its `[13,4,6]` dual by the all-ones vector to `[13,5,5]`, and run
/// the CSS-like derivation on the resulting nested pair.
pub fn recipe_13_1_5_3() -> Result<AqcParams, AqcError> {
    let f2 = make_field(2, 1, 1)?;
    let one = FieldElement::ONE;
    let zero = FieldElement::ZERO;
    // x^4 + x + 1 generates the [15,11,3] Hamming code.
    let g = Poly::from_coeffs(vec![one, one, zero, zero, one]);
    let ham = cyclic_from_gen(&f2, 15, &g).map_err(|e| match e {
        crate::cyclic::CyclicError::Code(c) => AqcError::Code(c),
        other => panic!("unexpected {other}"),
    })?;
    let c2 = shorten(&ham, &[13, 14]);
    debug_assert_eq!((c2.dim_r(), c2.min_distance()?), (9, 3));
    let c2_perp = c2.dual(InnerProductKind::Euclidean)?;
    debug_assert_eq!((c2_perp.dim_r(), c2_perp.min_distance()?), (4, 6));
    let c1 = c2_perp.extend_by_vector(&vec![one; 13])?;
    debug_assert_eq!((c1.dim_r(), c1.min_distance()?), (5, 5));
    let pair = NestedPair::new(c1, c2, InnerProductKind::Euclidean)?;
    css_like(&pair)
}

/// Dispatch a recipe by name.
pub fn run_recipe(name: &str) -> Option<Result<AqcParams, AqcError>> {
    match name {
        "4-1-2-2" => Some(recipe_4_1_2_2()),
        "5-2-2-2" => Some(recipe_5_2_2_2()),
        "13-1-5-3" => Some(recipe_13_1_5_3()),
        _ => None,
    }
}
