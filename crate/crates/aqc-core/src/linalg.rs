//! Row-reduction helpers over a [`FieldSpec`]. Rows whose entries lie in a
//! subfield stay in that subfield (pivoting only ever divides and
//! cross-multiplies existing entries), so the same routines serve both
//! `F_q`- and `F_r`-valued systems.

use crate::galois::{FieldElement, FieldSpec};

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns
/// (strictly increasing). Deterministic: first usable pivot wins.
pub(crate) fn rref(
    spec: &FieldSpec,
    mut rows: Vec<Vec<FieldElement>>,
) -> (Vec<Vec<FieldElement>>, Vec<usize>) {
    let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pr) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pr);
        let inv = spec.inv(rows[rank][col]);
        for x in rows[rank].iter_mut() {
            *x = spec.mul(*x, inv);
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let f = rows[r][col];
                for c in 0..ncols {
                    let t = spec.mul(f, rows[rank][c]);
                    rows[r][c] = spec.sub(rows[r][c], t);
                }
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    (rows, pivots)
}

/// Reduce `v` against an RREF basis; the residual is zero iff `v` lies in the
/// row span.
pub(crate) fn reduce(
    spec: &FieldSpec,
    basis: &[Vec<FieldElement>],
    pivots: &[usize],
    v: &[FieldElement],
) -> Vec<FieldElement> {
    let mut v = v.to_vec();
    for (row, &pc) in basis.iter().zip(pivots) {
        if !v[pc].is_zero() {
            let f = v[pc];
            for c in 0..v.len() {
                let t = spec.mul(f, row[c]);
                v[c] = spec.sub(v[c], t);
            }
        }
    }
    v
}

pub(crate) fn in_span(
    spec: &FieldSpec,
    basis: &[Vec<FieldElement>],
    pivots: &[usize],
    v: &[FieldElement],
) -> bool {
    reduce(spec, basis, pivots, v).iter().all(|x| x.is_zero())
}

/// Basis of the right null space `{x : rows * x = 0}` with `ncols` unknowns,
/// one vector per free column, in ascending free-column order.
pub(crate) fn null_space(
    spec: &FieldSpec,
    rows: Vec<Vec<FieldElement>>,
    ncols: usize,
) -> Vec<Vec<FieldElement>> {
    let (basis, pivots) = rref(spec, rows);
    let mut out = Vec::with_capacity(ncols - pivots.len());
    let mut piv_iter = pivots.iter().peekable();
    let mut free_cols = Vec::new();
    for c in 0..ncols {
        if piv_iter.peek() == Some(&&c) {
            piv_iter.next();
        } else {
            free_cols.push(c);
        }
    }
    for &fc in &free_cols {
        let mut x = vec![FieldElement::ZERO; ncols];
        x[fc] = FieldElement::ONE;
        for (row, &pc) in basis.iter().zip(&pivots) {
            x[pc] = spec.neg(row[fc]);
        }
        out.push(x);
    }
    out
}
