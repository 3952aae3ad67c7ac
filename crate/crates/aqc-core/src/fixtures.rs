//! Fixture-file machinery: the table record format consumed by the CLI and
//! the regression suite, the code file format for externally supplied
//! matrices, the field fixture pinning representations, and the bundled
//! infeasibility certificate.
//!
//! One table record per line:
//!
//! ```text
//! q n TYPE | C-spec | D-spec | [[n,k,dz/dx]]_q | LABEL
//! ```
//!
//! `TYPE` is one of `CC` (cyclic pair, generator and multiplier), `ACC`
//! (subfield-linear cyclic pair; `;`-separated rows, D rows written against
//! `g1, g2, ...`), `GC` (`r1= r2= l= t=`), `AH` (`recipe=NAME`), `BC`/`SO`
//! (`file=PATH`, optionally `kind=K` for SO; rows without a file are
//! SKIPPED). `LABEL` is an optional goodness tag, echoed, not recomputed.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;

use thiserror::Error;

use crate::adhoc;
use crate::aqc::{css_like, full_weight_aqc, self_orthogonal_aqc, AqcError, AqcParams, NestedPair};
use crate::code::{Code, CodeError, InnerProductKind};
use crate::cyclic::{
    parse_subcode_row, parse_subfield_row, span_of_polys, subcode_from_terms,
    subfield_row_to_poly, CyclicCode, CyclicError, Shorthand,
};
use crate::galois::{make_field, Field, FieldError, Poly};
use crate::groupchar::{gc_aqc, GcError};
use crate::lp::{parse_rat, CertificateFile, Rat};

#[derive(Debug, Error)]
pub enum FixtureError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Cyclic(#[from] CyclicError),
    #[error(transparent)]
    Aqc(#[from] AqcError),
    #[error(transparent)]
    Gc(#[from] GcError),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstructionType {
    Cc,
    Acc,
    Gc,
    Ah,
    Bc,
    So,
}

impl ConstructionType {
    pub fn label(self) -> &'static str {
        match self {
            ConstructionType::Cc => "CC",
            ConstructionType::Acc => "ACC",
            ConstructionType::Gc => "GC",
            ConstructionType::Ah => "AH",
            ConstructionType::Bc => "BC",
            ConstructionType::So => "SO",
        }
    }

    fn parse(s: &str) -> Option<ConstructionType> {
        match s {
            "CC" => Some(ConstructionType::Cc),
            "ACC" => Some(ConstructionType::Acc),
            "GC" => Some(ConstructionType::Gc),
            "AH" => Some(ConstructionType::Ah),
            "BC" => Some(ConstructionType::Bc),
            "SO" => Some(ConstructionType::So),
            _ => None,
        }
    }
}

/// Expected parameters parsed from `[[n,k,dz/dx]]_q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpectedParams {
    pub n: usize,
    pub k: Rat,
    pub dz: usize,
    pub dx: usize,
    pub q: u32,
}

impl fmt::Display for ExpectedParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{},{},{}/{}]]_{}",
            self.n,
            crate::lp::fmt_rat(&self.k),
            self.dz,
            self.dx,
            self.q
        )
    }
}

pub fn parse_expected(text: &str) -> Option<ExpectedParams> {
    let t = text.trim();
    let body = t.strip_prefix("[[")?;
    let (body, qpart) = body.split_once("]]")?;
    let q: u32 = qpart.strip_prefix('_')?.parse().ok()?;
    let mut parts = body.splitn(3, ',');
    let n: usize = parts.next()?.trim().parse().ok()?;
    let k = parse_rat(parts.next()?)?;
    let ds = parts.next()?;
    let (dz, dx) = ds.split_once('/')?;
    Some(ExpectedParams {
        n,
        k,
        dz: dz.trim().parse().ok()?,
        dx: dx.trim().parse().ok()?,
        q,
    })
}

#[derive(Debug, Clone)]
pub struct FixtureRow {
    pub line: usize,
    pub q: u32,
    pub n: usize,
    pub construction: ConstructionType,
    pub c_spec: String,
    pub d_spec: String,
    pub expected: ExpectedParams,
    pub label: Option<String>,
}

pub fn parse_fixture(text: &str) -> Result<Vec<FixtureRow>, FixtureError> {
    let mut rows = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let err = |msg: &str| FixtureError::Parse { line, msg: msg.into() };
        let cols: Vec<&str> = trimmed.split('|').map(str::trim).collect();
        if cols.len() < 4 || cols.len() > 5 {
            return Err(err("expected 4 or 5 '|'-separated columns"));
        }
        let head: Vec<&str> = cols[0].split_whitespace().collect();
        if head.len() != 3 {
            return Err(err("header must be 'q n TYPE'"));
        }
        let q: u32 = head[0].parse().map_err(|_| err("bad q"))?;
        let n: usize = head[1].parse().map_err(|_| err("bad n"))?;
        let construction =
            ConstructionType::parse(head[2]).ok_or_else(|| err("unknown construction type"))?;
        let expected = parse_expected(cols[3]).ok_or_else(|| err("bad expected parameters"))?;
        if expected.q != q || expected.n != n {
            return Err(err("expected parameters disagree with the header"));
        }
        let label = cols.get(4).map(|s| s.to_string()).filter(|s| !s.is_empty());
        rows.push(FixtureRow {
            line,
            q,
            n,
            construction,
            c_spec: cols[1].to_string(),
            d_spec: cols[2].to_string(),
            expected,
            label,
        });
    }
    Ok(rows)
}

/// Decompose `q = p^e` into the crate's base-field convention `r = p`,
/// `m = e`.
pub fn field_for_q(q: u32) -> Result<Field, FieldError> {
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            break;
        }
        p += 1;
    }
    let p = if q % p == 0 { p } else { q };
    let mut e = 0;
    let mut rest = q;
    while rest > 1 {
        if rest % p != 0 {
            return Err(FieldError::NotPrime(q));
        }
        rest /= p;
        e += 1;
    }
    make_field(p, 1, e)
}

/// Cache of constructed fields keyed by q.
#[derive(Default)]
pub struct FieldCache {
    map: HashMap<u32, Field>,
}

impl FieldCache {
    pub fn new() -> FieldCache {
        FieldCache::default()
    }

    pub fn get(&mut self, q: u32) -> Result<Field, FieldError> {
        if let Some(f) = self.map.get(&q) {
            return Ok(f.clone());
        }
        let f = field_for_q(q)?;
        self.map.insert(q, f.clone());
        Ok(f)
    }
}

#[derive(Debug, Clone)]
pub enum RowOutcome {
    Pass { got: AqcParams },
    Fail { detail: String },
    Skipped { reason: String },
}

impl RowOutcome {
    pub fn is_pass(&self) -> bool {
        matches!(self, RowOutcome::Pass { .. })
    }
    pub fn is_fail(&self) -> bool {
        matches!(self, RowOutcome::Fail { .. })
    }
}

fn compare(expected: &ExpectedParams, got: &AqcParams) -> RowOutcome {
    let ok = got.n == expected.n
        && got.q == expected.q
        && got.k == expected.k
        && got.dz == expected.dz
        && got.dx == expected.dx
        && got.pure;
    if ok {
        RowOutcome::Pass { got: got.clone() }
    } else {
        RowOutcome::Fail {
            detail: format!(
                "expected {} pure, got {}{}",
                expected,
                got.display(),
                if got.pure { "" } else { " (impure)" }
            ),
        }
    }
}

fn parse_kv(spec: &str) -> HashMap<String, String> {
    spec.split_whitespace()
        .filter_map(|tok| tok.split_once('='))
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
}

fn derive_row(
    row: &FixtureRow,
    cache: &mut FieldCache,
    base_dir: Option<&Path>,
) -> Result<RowOutcome, FixtureError> {
    match row.construction {
        ConstructionType::Cc => {
            let spec = cache.get(row.q)?;
            let g = match crate::cyclic::parse_gen_shorthand(&spec, &row.c_spec)? {
                Shorthand::Plain(p) => p,
                _ => {
                    return Err(FixtureError::Parse {
                        line: row.line,
                        msg: "CC rows take a single generator polynomial".into(),
                    })
                }
            };
            let c = CyclicCode::new(spec.clone(), row.n, &g)?;
            let terms = parse_subcode_row(&spec, &row.d_spec)?;
            if terms.len() != 1 || terms[0].gen_index != 0 {
                return Err(FixtureError::Parse {
                    line: row.line,
                    msg: "CC subcode must be a single (..)g term".into(),
                });
            }
            let d = c.subcode(&terms[0].multiplier)?;
            let pair = NestedPair::from_inner(
                d.code().clone(),
                c.code().clone(),
                InnerProductKind::Euclidean,
            )?;
            Ok(compare(&row.expected, &css_like(&pair)?))
        }
        ConstructionType::Acc => {
            let spec = cache.get(row.q)?;
            let c_rows: Vec<Poly> = row
                .c_spec
                .split(';')
                .map(|r| Ok(subfield_row_to_poly(&spec, &parse_subfield_row(&spec, r)?)))
                .collect::<Result<_, CyclicError>>()?;
            let c_code = span_of_polys(&spec, row.n, &c_rows)?;
            let d_terms: Vec<Vec<crate::cyclic::SubcodeTerm>> = row
                .d_spec
                .split(';')
                .map(|r| parse_subcode_row(&spec, r))
                .collect::<Result<_, CyclicError>>()?;
            let d_code = subcode_from_terms(&spec, row.n, &c_rows, &d_terms)?;
            let pair =
                NestedPair::from_inner(d_code, c_code, InnerProductKind::TraceEuclidean)?;
            Ok(compare(&row.expected, &css_like(&pair)?))
        }
        ConstructionType::Gc => {
            let kv = parse_kv(&row.c_spec);
            let get = |k: &str| -> Result<u32, FixtureError> {
                kv.get(k)
                    .and_then(|v| v.parse().ok())
                    .ok_or_else(|| FixtureError::Parse {
                        line: row.line,
                        msg: format!("GC spec needs {k}="),
                    })
            };
            let (r1, r2, l, t) = (get("r1")?, get("r2")?, get("l")?, get("t")?);
            let spec = cache.get(row.q)?;
            Ok(compare(&row.expected, &gc_aqc(&spec, r1, r2, l, t)?))
        }
        ConstructionType::Ah => {
            let kv = parse_kv(&row.c_spec);
            let Some(name) = kv.get("recipe") else {
                return Err(FixtureError::Parse {
                    line: row.line,
                    msg: "AH spec needs recipe=".into(),
                });
            };
            let Some(result) = adhoc::run_recipe(name) else {
                return Err(FixtureError::Parse {
                    line: row.line,
                    msg: format!("unknown recipe {name}"),
                });
            };
            Ok(compare(&row.expected, &result?))
        }
        ConstructionType::Bc | ConstructionType::So => {
            let kv = parse_kv(&row.c_spec);
            let Some(file) = kv.get("file") else {
                return Ok(RowOutcome::Skipped {
                    reason: "no matrix file supplied".into(),
                });
            };
            let path = match base_dir {
                Some(dir) => dir.join(file),
                None => Path::new(file).to_path_buf(),
            };
            if !path.exists() {
                return Ok(RowOutcome::Skipped {
                    reason: format!("matrix file {} not found", path.display()),
                });
            }
            let text = std::fs::read_to_string(&path)?;
            let (code, kind) = parse_code_file(&text, cache)?;
            let params = match row.construction {
                ConstructionType::Bc => full_weight_aqc(&code)?,
                _ => {
                    let kind = kv
                        .get("kind")
                        .and_then(|k| InnerProductKind::parse(k))
                        .unwrap_or(kind);
                    self_orthogonal_aqc(&code, kind)?
                }
            };
            Ok(compare(&row.expected, &params))
        }
    }
}

/// Verify one row; derivation errors become failures, not panics.
pub fn verify_row(
    row: &FixtureRow,
    cache: &mut FieldCache,
    base_dir: Option<&Path>,
) -> RowOutcome {
    match derive_row(row, cache, base_dir) {
        Ok(outcome) => outcome,
        Err(e) => RowOutcome::Fail { detail: format!("error: {e}") },
    }
}

/// Parse and verify a whole fixture file, in input order.
pub fn verify_table(
    text: &str,
    base_dir: Option<&Path>,
) -> Result<Vec<(FixtureRow, RowOutcome)>, FixtureError> {
    let rows = parse_fixture(text)?;
    let mut cache = FieldCache::new();
    Ok(rows
        .into_iter()
        .map(|row| {
            let outcome = verify_row(&row, &mut cache, base_dir);
            (row, outcome)
        })
        .collect())
}

// ---------------------------------------------------------------------------
// Code file format
// ---------------------------------------------------------------------------

/// Parse the code file format: header `q n k_r kind`, then one generator per
/// line, elements in w-power notation separated by spaces.
pub fn parse_code_file(
    text: &str,
    cache: &mut FieldCache,
) -> Result<(Code, InnerProductKind), FixtureError> {
    let mut lines = text.lines().filter(|l| {
        let t = l.trim();
        !t.is_empty() && !t.starts_with('#')
    });
    let header = lines.next().ok_or(FixtureError::Parse { line: 1, msg: "empty file".into() })?;
    let parts: Vec<&str> = header.split_whitespace().collect();
    if parts.len() != 4 {
        return Err(FixtureError::Parse { line: 1, msg: "header must be 'q n k_r kind'".into() });
    }
    let q: u32 = parts[0].parse().map_err(|_| FixtureError::Parse { line: 1, msg: "bad q".into() })?;
    let n: usize =
        parts[1].parse().map_err(|_| FixtureError::Parse { line: 1, msg: "bad n".into() })?;
    let k_r: usize =
        parts[2].parse().map_err(|_| FixtureError::Parse { line: 1, msg: "bad k_r".into() })?;
    let kind = InnerProductKind::parse(parts[3])
        .ok_or(FixtureError::Parse { line: 1, msg: "bad kind".into() })?;
    let spec = cache.get(q)?;
    let mut gens = Vec::new();
    for (i, l) in lines.enumerate() {
        let row: Vec<_> = l
            .split_whitespace()
            .map(|t| spec.parse_elem(t))
            .collect::<Result<_, _>>()
            .map_err(|e| FixtureError::Parse { line: i + 2, msg: format!("{e}") })?;
        if row.len() != n {
            return Err(FixtureError::Parse {
                line: i + 2,
                msg: format!("row has {} entries, expected {n}", row.len()),
            });
        }
        gens.push(row);
    }
    let code = Code::from_fr_gens(spec, n, gens)?;
    if code.dim_r() != k_r {
        return Err(FixtureError::Parse {
            line: 1,
            msg: format!("declared k_r {} but rank is {}", k_r, code.dim_r()),
        });
    }
    Ok((code, kind))
}

/// Render a code in the file format.
pub fn format_code_file(code: &Code, kind: InnerProductKind) -> String {
    let spec = code.spec();
    let mut out = format!("{} {} {} {}\n", spec.q(), code.n(), code.dim_r(), kind.label());
    for g in code.gens() {
        let row: Vec<String> = g.iter().map(|&x| spec.format_elem(x)).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

// ---------------------------------------------------------------------------
// Bundled fixtures
// ---------------------------------------------------------------------------

/// The bundled table fixtures, name and contents.
pub fn bundled_tables() -> Vec<(&'static str, &'static str)> {
    vec![
        ("f2_cyclic", include_str!("../fixtures/tables/f2_cyclic.txt")),
        ("f3_cyclic", include_str!("../fixtures/tables/f3_cyclic.txt")),
        ("f5_cyclic", include_str!("../fixtures/tables/f5_cyclic.txt")),
        ("f7_cyclic", include_str!("../fixtures/tables/f7_cyclic.txt")),
        ("f4_cyclic", include_str!("../fixtures/tables/f4_cyclic.txt")),
        ("f8_cyclic", include_str!("../fixtures/tables/f8_cyclic.txt")),
        ("f9_cyclic", include_str!("../fixtures/tables/f9_cyclic.txt")),
        (
            "f4_subfield_cyclic",
            include_str!("../fixtures/tables/f4_subfield_cyclic.txt"),
        ),
        (
            "f8_subfield_cyclic",
            include_str!("../fixtures/tables/f8_subfield_cyclic.txt"),
        ),
        (
            "f9_subfield_cyclic",
            include_str!("../fixtures/tables/f9_subfield_cyclic.txt"),
        ),
        ("gc", include_str!("../fixtures/tables/gc.txt")),
        ("adhoc", include_str!("../fixtures/tables/adhoc.txt")),
        ("bc", include_str!("../fixtures/tables/bc.txt")),
    ]
}

/// The bundled field fixture (pins modulus and generator per field).
pub const FIELDS_FIXTURE: &str = include_str!("../fixtures/fields.txt");

/// The bundled infeasibility certificate for `(6,2,2,1,3,2)`.
pub fn bundled_certificate() -> CertificateFile {
    serde_json::from_str(include_str!("../fixtures/appendix_d.json"))
        .expect("bundled certificate parses")
}

/// The bundled `[12,6,4]_2` matrix (in code file format).
pub const BC_12_6_4_MATRIX: &str = include_str!("../fixtures/matrices/bc_12_6_4_2.txt");

/// Check every line of the field fixture against a fresh construction.
pub fn verify_field_fixture(text: &str) -> Result<(), FixtureError> {
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let parts: Vec<&str> = t.split_whitespace().collect();
        if parts.len() != 5 {
            return Err(FixtureError::Parse { line, msg: "expected 5 fields".into() });
        }
        let p: u32 = parts[0].parse().map_err(|_| FixtureError::Parse { line, msg: "bad p".into() })?;
        let l: u32 = parts[1].parse().map_err(|_| FixtureError::Parse { line, msg: "bad l".into() })?;
        let m: u32 = parts[2].parse().map_err(|_| FixtureError::Parse { line, msg: "bad m".into() })?;
        let spec = make_field(p, l, m)?;
        if spec.fixture_line() != t {
            return Err(FixtureError::Parse {
                line,
                msg: format!("representation drift: built '{}'", spec.fixture_line()),
            });
        }
    }
    Ok(())
}
