//! CSV emission (RFC-4180-style, '.' decimal, scientific notation with at
//! least 12 significant digits). Identical sweeps produce byte-identical
//! files apart from the wall_ms column.

use std::io::Write;

use crate::bench::{ConvergenceRecord, EigenRecord};
use crate::error::Result;

pub(crate) fn sci(v: f64) -> String {
    if v.is_nan() {
        "nan".to_string()
    } else {
        format!("{v:.12e}")
    }
}

pub const CONVERGENCE_HEADER: &str = "N,alpha,r,e_w,e_m,kappa,wall_ms,status";
pub const EIGEN_HEADER: &str =
    "N,alpha,lambda1,lambda2,lambda3,err1,err2,err3,wall_ms,status";

pub fn write_convergence_csv<W: Write>(mut out: W, records: &[ConvergenceRecord]) -> Result<()> {
    writeln!(out, "{CONVERGENCE_HEADER}")?;
    for rec in records {
        let alpha = rec
            .alphas
            .iter()
            .map(|a| sci(*a))
            .collect::<Vec<_>>()
            .join(";");
        writeln!(
            out,
            "{},{},{},{},{},{},{:.3},{}",
            rec.n,
            alpha,
            sci(rec.r),
            sci(rec.e_w),
            sci(rec.e_m),
            sci(rec.kappa),
            rec.wall_ms,
            rec.status.name()
        )?;
    }
    Ok(())
}

pub fn write_eigen_csv<W: Write>(mut out: W, records: &[EigenRecord]) -> Result<()> {
    writeln!(out, "{EIGEN_HEADER}")?;
    for rec in records {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{:.3},{}",
            rec.n,
            sci(rec.alpha),
            sci(rec.lambda[0]),
            sci(rec.lambda[1]),
            sci(rec.lambda[2]),
            sci(rec.err[0]),
            sci(rec.err[1]),
            sci(rec.err[2]),
            rec.wall_ms,
            rec.status.name()
        )?;
    }
    Ok(())
}
