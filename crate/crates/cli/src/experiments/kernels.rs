use std::fmt::Write as _;
use std::path::Path;

use logeuler_core::diagnostics::format_float;
use logeuler_core::kernels::{
    certify_lower_bound, check_k_l1, eval_strain, KernelQuery, QuadratureBudget,
};
use logeuler_core::{Gamma, RegKind};
use serde::Serialize;

use crate::error::CliError;

/// Reads `x1,x2` pairs, one per line; blank lines, `#` comments and a
/// non-numeric header are skipped. Commas or whitespace separate the columns.
pub fn read_points(path: &Path) -> Result<Vec<[f64; 2]>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let cells: Vec<&str> = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|c| !c.is_empty())
            .collect();
        let parsed: Result<Vec<f64>, _> = cells.iter().map(|c| c.parse::<f64>()).collect();
        match parsed {
            Ok(v) if v.len() == 2 => out.push([v[0], v[1]]),
            Err(_) if i == 0 => continue,
            _ => {
                return Err(CliError::Format {
                    path: path.to_path_buf(),
                    msg: format!("line {}: expected two numbers", i + 1),
                })
            }
        }
    }
    Ok(out)
}

/// CSV with columns `x1,x2,value,err_est,flag` of the strain kernel.
pub fn kernel_table(
    gamma: Gamma,
    kind: RegKind,
    points: &[[f64; 2]],
    budget: &QuadratureBudget,
) -> Result<String, CliError> {
    let mut out = String::from("x1,x2,value,err_est,flag\n");
    for &x in points {
        let k = eval_strain(&KernelQuery { x, gamma, kind }, budget)?;
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            format_float(x[0]),
            format_float(x[1]),
            format_float(k.value),
            format_float(k.err_est),
            k.flag.as_str()
        );
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct CertifySummary {
    pub gamma: f64,
    pub kind: RegKind,
    pub r_range: (f64, f64),
    pub samples: usize,
    pub min_ratio: f64,
    pub argmin: [f64; 2],
    pub all_positive: bool,
    pub l1_mass: f64,
    pub l1_err: f64,
}

/// Lower-bound certificate on a 40×40 polar sample plus the `L¹` mass check.
pub fn certify(gamma: Gamma, kind: RegKind, budget: &QuadratureBudget) -> Result<CertifySummary, CliError> {
    let r_range = (1e-2, 3.0);
    let cert = certify_lower_bound(gamma, kind, r_range, (40, 40), budget)?;
    let mass = check_k_l1(gamma, kind, budget)?;
    Ok(CertifySummary {
        gamma: gamma.value(),
        kind,
        r_range,
        samples: cert.samples,
        min_ratio: cert.min_ratio,
        argmin: cert.argmin,
        all_positive: cert.all_positive,
        l1_mass: mass.value,
        l1_err: mass.abs_err,
    })
}
