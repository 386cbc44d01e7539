//! Implementations behind the CLI subcommands.

use std::fs;
use std::path::{Path, PathBuf};

use hypermatrix::cayley::{composition_list, span_rank};
use hypermatrix::generate::{labeled, sym3};
use hypermatrix::ops;
use hypermatrix::solve::pseudo_inverse_pairs;
use hypermatrix::special::{
    self, kronecker_delta, orthogonal_2x2x2, orthogonal_3x3x3, Permutation, SliceAxis,
};
use hypermatrix::{Complex64, Hypermatrix, Rational, Scalar, Shape};

use crate::document::{self, HmValue, ScalarKind, ScalarLiteral};
use crate::{Axis, CliError, GenCommand, VerifyCommand};

type CliResult<T = ()> = Result<T, CliError>;

fn read_input(path: &Path) -> CliResult<HmValue> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::malformed(format!("cannot read {}: {e}", path.display())))?;
    document::parse(&text).map_err(|e| e.with_context(&format!("in {}", path.display())))
}

/// Writes rendered text to `--out` or standard output. Rendering happens
/// before any write, so failures never leave partial output files.
fn emit(out: Option<&PathBuf>, text: String) -> CliResult {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::failure(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_value(out: Option<&PathBuf>, value: &HmValue) -> CliResult {
    emit(out, document::render(value)?)
}

fn kind_mismatch(a: &HmValue, b: &HmValue) -> CliError {
    CliError::failure(format!(
        "scalar kinds differ: {} vs {}",
        a.kind().name(),
        b.kind().name()
    ))
}

/// Applies a generic binary operation to two documents of the same kind.
macro_rules! same_kind_binop {
    ($a:expr, $b:expr, $f:expr) => {
        match (&$a, &$b) {
            (HmValue::Rational(x), HmValue::Rational(y)) => HmValue::Rational($f(x, y)?),
            (HmValue::Real(x), HmValue::Real(y)) => HmValue::Real($f(x, y)?),
            (HmValue::Complex(x), HmValue::Complex(y)) => HmValue::Complex($f(x, y)?),
            (HmValue::Expression(x), HmValue::Expression(y)) => HmValue::Expression($f(x, y)?),
            _ => return Err(kind_mismatch(&$a, &$b)),
        }
    };
}

macro_rules! unop {
    ($a:expr, $f:expr) => {
        match &$a {
            HmValue::Rational(x) => HmValue::Rational($f(x)?),
            HmValue::Real(x) => HmValue::Real($f(x)?),
            HmValue::Complex(x) => HmValue::Complex($f(x)?),
            HmValue::Expression(x) => HmValue::Expression($f(x)?),
        }
    };
}

pub fn gen(command: GenCommand) -> CliResult {
    match command {
        GenCommand::Labeled { dims, prefix, out } => {
            let shape = Shape::new(dims)?;
            let h = labeled(shape, &prefix)?;
            emit_value(out.as_ref(), &HmValue::Expression(h))
        }
        GenCommand::Sym3 { n, prefix, out } => {
            let h = sym3(n, &prefix)?;
            emit_value(out.as_ref(), &HmValue::Expression(h))
        }
        GenCommand::Delta { n, kind, out } => {
            let value = match kind {
                ScalarKind::Rational => HmValue::Rational(kronecker_delta(n)?),
                ScalarKind::Real => HmValue::Real(kronecker_delta(n)?),
                ScalarKind::Complex => HmValue::Complex(kronecker_delta(n)?),
                ScalarKind::Expression => HmValue::Expression(kronecker_delta(n)?),
            };
            emit_value(out.as_ref(), &value)
        }
        GenCommand::Ones { dims, kind, out } => {
            emit_value(out.as_ref(), &filled(dims, kind, true)?)
        }
        GenCommand::Zeros { dims, kind, out } => {
            emit_value(out.as_ref(), &filled(dims, kind, false)?)
        }
        GenCommand::Perm { sigma, kind, out } => {
            let sigma = Permutation::new(sigma)?;
            let value = match kind {
                ScalarKind::Rational => {
                    HmValue::Rational(special::permutation_hypermatrix(&sigma)?)
                }
                ScalarKind::Real => HmValue::Real(special::permutation_hypermatrix(&sigma)?),
                ScalarKind::Complex => HmValue::Complex(special::permutation_hypermatrix(&sigma)?),
                ScalarKind::Expression => {
                    HmValue::Expression(special::permutation_hypermatrix(&sigma)?)
                }
            };
            emit_value(out.as_ref(), &value)
        }
        GenCommand::Diag { matrix, out } => {
            let m = read_input(&matrix)?;
            let value = unop!(m, special::diagonal_from_matrix);
            emit_value(out.as_ref(), &value)
        }
        GenCommand::Ortho22 { theta, out } => {
            emit_value(out.as_ref(), &HmValue::Real(orthogonal_2x2x2(theta)?))
        }
        GenCommand::Ortho333 { t1, t2, out } => {
            emit_value(out.as_ref(), &HmValue::Complex(orthogonal_3x3x3(t1, t2)?))
        }
    }
}

fn filled(dims: Vec<usize>, kind: ScalarKind, one: bool) -> CliResult<HmValue> {
    let shape = Shape::new(dims)?;
    fn build<S: Scalar>(shape: Shape, one: bool) -> Hypermatrix<S> {
        if one {
            Hypermatrix::ones(shape)
        } else {
            Hypermatrix::zeros(shape)
        }
    }
    Ok(match kind {
        ScalarKind::Rational => HmValue::Rational(build(shape, one)),
        ScalarKind::Real => HmValue::Real(build(shape, one)),
        ScalarKind::Complex => HmValue::Complex(build(shape, one)),
        ScalarKind::Expression => HmValue::Expression(build(shape, one)),
    })
}

pub fn add(a: &Path, b: &Path, out: Option<&PathBuf>) -> CliResult {
    let (a, b) = (read_input(a)?, read_input(b)?);
    let sum = same_kind_binop!(a, b, ops::hm_add);
    emit_value(out, &sum)
}

pub fn hadamard(a: &Path, b: &Path, out: Option<&PathBuf>) -> CliResult {
    let (a, b) = (read_input(a)?, read_input(b)?);
    let product = same_kind_binop!(a, b, ops::hm_hadamard);
    emit_value(out, &product)
}

pub fn scale(a: &Path, by: &str, out: Option<&PathBuf>) -> CliResult {
    let a = read_input(a)?;
    let literal = document::parse_scalar_text(a.kind(), by)?;
    let scaled = match (&a, literal) {
        (HmValue::Rational(x), ScalarLiteral::Rational(s)) => {
            HmValue::Rational(ops::hm_scale(x, &s))
        }
        (HmValue::Real(x), ScalarLiteral::Real(s)) => HmValue::Real(ops::hm_scale(x, &s)),
        (HmValue::Complex(x), ScalarLiteral::Complex(s)) => HmValue::Complex(ops::hm_scale(x, &s)),
        (HmValue::Expression(x), ScalarLiteral::Expression(s)) => {
            HmValue::Expression(ops::hm_scale(x, &s))
        }
        _ => unreachable!("literal parsed with the document's own kind"),
    };
    emit_value(out, &scaled)
}

pub fn transpose(a: &Path, times: i64, out: Option<&PathBuf>) -> CliResult {
    let a = read_input(a)?;
    let done = unop!(a, |x| Ok::<_, CliError>(ops::transpose_k(x, times)));
    emit_value(out, &done)
}

pub fn product(a: &Path, b: &Path, c: &Path, out: Option<&PathBuf>) -> CliResult {
    let (a, b, c) = (read_input(a)?, read_input(b)?, read_input(c)?);
    if a.kind() != b.kind() || b.kind() != c.kind() {
        return Err(CliError::failure(format!(
            "scalar kinds differ: {}, {}, {}",
            a.kind().name(),
            b.kind().name(),
            c.kind().name()
        )));
    }
    let result = match (&a, &b, &c) {
        (HmValue::Rational(x), HmValue::Rational(y), HmValue::Rational(z)) => {
            HmValue::Rational(ops::bm_product3(x, y, z)?)
        }
        (HmValue::Real(x), HmValue::Real(y), HmValue::Real(z)) => {
            HmValue::Real(ops::bm_product3(x, y, z)?)
        }
        (HmValue::Complex(x), HmValue::Complex(y), HmValue::Complex(z)) => {
            HmValue::Complex(ops::bm_product3(x, y, z)?)
        }
        (HmValue::Expression(x), HmValue::Expression(y), HmValue::Expression(z)) => {
            HmValue::Expression(ops::bm_product3(x, y, z)?)
        }
        _ => unreachable!("kinds checked above"),
    };
    emit_value(out, &result)
}

pub fn product_bg(
    a: &Path,
    b: &Path,
    c: &Path,
    background: &Path,
    out: Option<&PathBuf>,
) -> CliResult {
    let inputs = [
        read_input(a)?,
        read_input(b)?,
        read_input(c)?,
        read_input(background)?,
    ];
    if inputs.iter().any(|v| v.kind() != inputs[0].kind()) {
        return Err(CliError::failure(format!(
            "scalar kinds differ: {}",
            inputs
                .iter()
                .map(|v| v.kind().name())
                .collect::<Vec<_>>()
                .join(", ")
        )));
    }
    let result = match &inputs {
        [HmValue::Rational(x), HmValue::Rational(y), HmValue::Rational(z), HmValue::Rational(t)] => {
            HmValue::Rational(ops::bm_product3_background(x, y, z, t)?)
        }
        [HmValue::Real(x), HmValue::Real(y), HmValue::Real(z), HmValue::Real(t)] => {
            HmValue::Real(ops::bm_product3_background(x, y, z, t)?)
        }
        [HmValue::Complex(x), HmValue::Complex(y), HmValue::Complex(z), HmValue::Complex(t)] => {
            HmValue::Complex(ops::bm_product3_background(x, y, z, t)?)
        }
        [HmValue::Expression(x), HmValue::Expression(y), HmValue::Expression(z), HmValue::Expression(t)] => {
            HmValue::Expression(ops::bm_product3_background(x, y, z, t)?)
        }
        _ => unreachable!("kinds checked above"),
    };
    emit_value(out, &result)
}

pub fn gproduct(inputs: &[PathBuf], out: Option<&PathBuf>) -> CliResult {
    let values: Vec<HmValue> = inputs
        .iter()
        .map(|p| read_input(p))
        .collect::<CliResult<_>>()?;
    if values.len() < 2 {
        return Err(CliError::failure(
            "general product requires at least 2 operands".into(),
        ));
    }
    if values.iter().any(|v| v.kind() != values[0].kind()) {
        return Err(CliError::failure(format!(
            "scalar kinds differ: {}",
            values
                .iter()
                .map(|v| v.kind().name())
                .collect::<Vec<_>>()
                .join(", ")
        )));
    }
    macro_rules! run_kind {
        ($variant:ident) => {{
            let operands: Vec<_> = values
                .iter()
                .map(|v| match v {
                    HmValue::$variant(h) => h,
                    _ => unreachable!("kinds checked above"),
                })
                .collect();
            HmValue::$variant(ops::general_bm_product(&operands)?)
        }};
    }
    let result = match &values[0] {
        HmValue::Rational(_) => run_kind!(Rational),
        HmValue::Real(_) => run_kind!(Real),
        HmValue::Complex(_) => run_kind!(Complex),
        HmValue::Expression(_) => run_kind!(Expression),
    };
    emit_value(out, &result)
}

pub fn vectorize(a: &Path, out: Option<&PathBuf>) -> CliResult {
    let a = read_input(a)?;
    emit(out, document::render_vector(&a)?)
}

pub fn ch_count(order: usize) -> CliResult {
    // Counting only; a 1x1x1 seed keeps the enumeration cheap.
    let seed = Hypermatrix::<Rational>::ones(Shape::cubic(1)?);
    let list = composition_list(&seed, order)?;
    println!("{}", list.len());
    Ok(())
}

pub fn ch_rank(a: &Path, max_order: usize, tol: f64) -> CliResult {
    let rank = match read_input(a)? {
        HmValue::Real(h) => span_rank(&h, max_order, tol)?,
        HmValue::Complex(h) => span_rank(&h, max_order, tol)?,
        other => {
            return Err(CliError::failure(format!(
                "span rank needs a real or complex hypermatrix, got {}",
                other.kind().name()
            )))
        }
    };
    println!("{rank}");
    Ok(())
}

fn to_complex_cube(value: HmValue, what: &str) -> CliResult<Hypermatrix<Complex64>> {
    match value {
        HmValue::Real(h) => Ok(h.map(|&x| Complex64::new(x, 0.0))),
        HmValue::Complex(h) => Ok(h),
        other => Err(CliError::failure(format!(
            "{what} needs a real or complex hypermatrix, got {}",
            other.kind().name()
        ))),
    }
}

pub fn pinv_pairs(a: &Path, b: &Path, out_r1: &Path, out_r2: &Path) -> CliResult {
    let a = to_complex_cube(read_input(a)?, "pseudo-inverse")?;
    let b = to_complex_cube(read_input(b)?, "pseudo-inverse")?;
    let result = pseudo_inverse_pairs(&a, &b)?;
    let r1_text = document::render(&HmValue::Complex(result.r1))?;
    let r2_text = document::render(&HmValue::Complex(result.r2))?;
    fs::write(out_r1, r1_text)
        .map_err(|e| CliError::failure(format!("cannot write {}: {e}", out_r1.display())))?;
    fs::write(out_r2, r2_text)
        .map_err(|e| CliError::failure(format!("cannot write {}: {e}", out_r2.display())))?;
    println!("residual {}", result.residual);
    println!("reconstruction-error {}", result.reconstruction_error);
    Ok(())
}

pub fn verify(command: VerifyCommand) -> CliResult {
    match command {
        VerifyCommand::DeltaIdentity { n } => {
            let delta = kronecker_delta::<Rational>(n)?;
            let product = ops::bm_product3(
                &delta,
                &ops::transpose_k(&delta, 2),
                &ops::transpose_k(&delta, 1),
            )?;
            check_exact(product == delta, &format!("delta-identity n={n}"))
        }
        VerifyCommand::DiagonalIdentity { n } => {
            let m = hypermatrix::generate::sym_matrix(n, "lambda")?;
            let d = special::diagonal_from_matrix(&m)?;
            let lhs = ops::bm_product3(&ops::transpose_k(&d, 1), &ops::transpose_k(&d, 2), &d)?;
            let rhs = ops::entry_pow(&d, 3)?;
            check_exact(lhs == rhs, &format!("diagonal-identity n={n}"))
        }
        VerifyCommand::Orthogonality { input, tol } => {
            let q = to_complex_cube(read_input(&input)?, "orthogonality check")?;
            let n = q.dim(0);
            if !q.is_cubic(n) {
                return Err(CliError::failure(format!(
                    "orthogonality check needs a cubic hypermatrix, got {}",
                    q.shape()
                )));
            }
            let product = ops::bm_product3(&q, &ops::transpose_k(&q, 2), &ops::transpose_k(&q, 1))?;
            let delta = kronecker_delta::<Complex64>(n)?;
            let max_dev = product
                .entries()
                .iter()
                .zip(delta.entries())
                .map(|(x, y)| (x - y).norm())
                .fold(0.0f64, f64::max);
            if max_dev <= tol {
                println!("PASS max-deviation {max_dev:e} <= {tol:e}");
                Ok(())
            } else {
                println!("FAIL max-deviation {max_dev:e} > {tol:e}");
                Err(CliError::silent_failure())
            }
        }
        VerifyCommand::SliceAction { n, sigma, axis } => {
            let sigma = Permutation::new(sigma)?;
            if sigma.len() != n {
                return Err(CliError::failure(format!(
                    "permutation acts on {} elements but n={n}",
                    sigma.len()
                )));
            }
            let a = labeled(Shape::cubic(n)?, "a")?;
            let axes: &[(SliceAxis, &str)] = match axis {
                Axis::Row => &[(SliceAxis::Row, "row")],
                Axis::Column => &[(SliceAxis::Column, "column")],
                Axis::Depth => &[(SliceAxis::Depth, "depth")],
                Axis::All => &[
                    (SliceAxis::Row, "row"),
                    (SliceAxis::Column, "column"),
                    (SliceAxis::Depth, "depth"),
                ],
            };
            for &(slice_axis, name) in axes {
                let through_products = special::slice_permute(&a, &sigma, slice_axis)?;
                let direct = Hypermatrix::from_fn(a.shape().clone(), |idx| {
                    let mut src = [idx[0], idx[1], idx[2]];
                    match slice_axis {
                        SliceAxis::Row => src[0] = sigma.apply(src[0]),
                        SliceAxis::Column => src[1] = sigma.apply(src[1]),
                        SliceAxis::Depth => src[2] = sigma.apply(src[2]),
                    }
                    a.at(&src).clone()
                });
                if through_products != direct {
                    println!("FAIL slice-action {name} sigma={:?}", sigma.image());
                    return Err(CliError::silent_failure());
                }
                println!("PASS slice-action {name} sigma={:?} exact", sigma.image());
            }
            Ok(())
        }
    }
}

fn check_exact(ok: bool, what: &str) -> CliResult {
    if ok {
        println!("PASS {what} exact");
        Ok(())
    } else {
        println!("FAIL {what}");
        Err(CliError::silent_failure())
    }
}
