//! Recomputes the worked torus-map examples for a list of parameters
//! `(b, c)` and compares every number with its closed form in
//! `m = b^2 + bc + c^2`.

use serde::{Deserialize, Serialize};

use crate::catalog::{lookup, torus_map, TorusKind, TorusMapParams};
use crate::error::Result;
use crate::mixer::{
    classify_mix, face_vector, four_polytopality_criterion, is_prime, mix, self_dual_mix,
    FourPolytopality, Variant,
};
use crate::par::{self, Execution};
use crate::rotation::{
    covers, schlafli_type, Polytopality, Regularity, RotationSystem, SelfDuality,
};

/// Parameters checked by default.
pub const DEFAULT_PARAMETERS: [(u64, u64); 3] = [(1, 2), (1, 3), (2, 3)];

/// One compared quantity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

impl Check {
    fn new(name: &str, expected: impl ToString, actual: impl ToString) -> Self {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        Check {
            name: name.to_string(),
            pass: expected == actual,
            expected,
            actual,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum RowStatus {
    Passed,
    Failed { failing: Vec<String> },
    Skipped { reason: String },
    Error { message: String },
}

/// Result for one `(b, c)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub b: u64,
    pub c: u64,
    pub m: u64,
    #[serde(flatten)]
    pub status: RowStatus,
    pub checks: Vec<Check>,
}

impl Row {
    pub fn passed(&self) -> bool {
        self.status == RowStatus::Passed
    }
}

fn list(values: &[usize]) -> String {
    format!("{values:?}")
}

fn system(params: TorusMapParams, limit: usize) -> Result<RotationSystem> {
    RotationSystem::from_presentation(&torus_map(params), limit)
}

fn row_checks(b: u64, c: u64, limit: usize) -> Result<Vec<Check>> {
    let m = b * b + b * c + c * c;
    let mu = m as usize;
    let p = system(TorusMapParams::new(TorusKind::Triangular, b, c)?, limit)?;
    let mut checks = vec![Check::new("order 6m", 6 * mu, p.order())];

    let mirror_mix = mix(&p, &p.mirror(), limit)?;
    checks.push(Check::new(
        "mirror mix order 6m^2",
        6 * mu * mu,
        mirror_mix.order(),
    ));

    for (variant, suffix, duality) in [
        (Variant::Proper, "", SelfDuality::ProperlySelfDual),
        (
            Variant::Improper,
            " (improper)",
            SelfDuality::ImproperlySelfDual,
        ),
    ] {
        let sd = self_dual_mix(&p, variant, limit)?;
        let name = |s: &str| format!("{s}{suffix}");
        checks.push(Check::new(&name("comix order 3"), 3, sd.comix_order));
        checks.push(Check::new(
            &name("mix order 12m^2"),
            12 * mu * mu,
            sd.order(),
        ));
        let fv = face_vector(&sd.system);
        checks.push(Check::new(&name("flags 24m^2"), 24 * mu * mu, fv.flags));
        checks.push(Check::new(
            &name("face vector (2m^2, 6m^2, 2m^2)"),
            list(&[2 * mu * mu, 6 * mu * mu, 2 * mu * mu]),
            list(&fv.faces),
        ));
        let report = classify_mix(&sd);
        checks.push(Check::new(&name("type {6,6}"), "{6,6}", &report.schlafli));
        checks.push(Check::new(
            &name("classification"),
            format!(
                "{:?}/{:?}/{:?}",
                Polytopality::Yes,
                Regularity::Chiral,
                duality
            ),
            format!(
                "{:?}/{:?}/{:?}",
                report.polytopal, report.regularity, report.self_duality
            ),
        ));
        checks.push(Check::new(
            &name("polytopal via Cor3.7"),
            true,
            report.criteria_fired.iter().any(|t| t == "Cor3.7"),
        ));
    }

    let k = system(TorusMapParams::new(TorusKind::Hexagonal, b, c)?, limit)?;
    let tetra = RotationSystem::from_presentation(&lookup("[3,3]+")?, limit)?;
    let facet = mix(&k, &tetra, limit)?;
    checks.push(Check::new("facet mix order 24m", 24 * mu, facet.order()));
    checks.push(Check::new("facet comix order 3", 3, facet.comix_order));
    let four = four_polytopality_criterion(&k, &tetra, limit)?;
    checks.push(Check::new(
        "9 does not divide 24m",
        format!("{:?}", FourPolytopality::Polytopal),
        format!("{:?}", four.verdict),
    ));

    let k_mirror_mix = mix(&k, &k.mirror(), limit)?;
    checks.push(Check::new(
        "facet mirror mix order 6m^2",
        6 * mu * mu,
        k_mirror_mix.order(),
    ));
    checks.push(Check::new(
        "6m^2 divides 24m",
        false,
        facet.order() % k_mirror_mix.order() == 0,
    ));
    checks.push(Check::new(
        "facet mix covers mirror mix",
        false,
        covers(&facet.system, &k_mirror_mix.system)?,
    ));

    let fv = face_vector(&facet.system);
    checks.push(Check::new(
        "facet type {6,3}",
        "{6,3}",
        schlafli_type(&facet.system),
    ));
    checks.push(Check::new("facet flags 48m", 48 * mu, fv.flags));
    checks.push(Check::new(
        "facet face vector (8m, 12m, 4m)",
        list(&[8 * mu, 12 * mu, 4 * mu]),
        list(&fv.faces),
    ));
    checks.push(Check::new(
        "facet Euler characteristic 0",
        0,
        fv.euler_characteristic(),
    ));

    let named = system(
        TorusMapParams::new(TorusKind::Hexagonal, 2 * b, 2 * c)?,
        limit,
    )?;
    checks.push(Check::new(
        "facet order equals {6,3}(2b,2c)",
        named.order(),
        facet.order(),
    ));
    checks.push(Check::new(
        "facet covers {6,3}(2b,2c) and back",
        "true/true",
        format!(
            "{}/{}",
            covers(&facet.system, &named)?,
            covers(&named, &facet.system)?
        ),
    ));
    Ok(checks)
}

/// Computes one row. Parameters with `b = c` or `bc = 0` give regular maps
/// and are skipped, as are those with `m` not a prime of at least 5.
pub fn reproduce_row(b: u64, c: u64, limit: usize) -> Row {
    let m = b * b + b * c + c * c;
    let skip = if b == c {
        Some("b = c, map not chiral".to_string())
    } else if b == 0 || c == 0 {
        Some("bc = 0, map not chiral".to_string())
    } else if !is_prime(m) || m < 5 {
        Some(format!("m = {m} is not a prime of at least 5"))
    } else {
        None
    };
    if let Some(reason) = skip {
        return Row {
            b,
            c,
            m,
            status: RowStatus::Skipped { reason },
            checks: Vec::new(),
        };
    }
    match row_checks(b, c, limit) {
        Ok(checks) => {
            let failing: Vec<String> = checks
                .iter()
                .filter(|k| !k.pass)
                .map(|k| k.name.clone())
                .collect();
            Row {
                b,
                c,
                m,
                status: if failing.is_empty() {
                    RowStatus::Passed
                } else {
                    RowStatus::Failed { failing }
                },
                checks,
            }
        }
        Err(e) => Row {
            b,
            c,
            m,
            status: RowStatus::Error {
                message: e.to_string(),
            },
            checks: Vec::new(),
        },
    }
}

/// Rows for every parameter pair, computed concurrently and returned in
/// input order.
pub fn reproduce(params: &[(u64, u64)], limit: usize, exec: Execution) -> Vec<Row> {
    par::map(exec, params, |&(b, c)| reproduce_row(b, c, limit))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_row_passes() {
        let row = reproduce_row(1, 2, 1_000_000);
        assert!(row.passed(), "{row:?}");
        assert_eq!(row.m, 7);
    }

    #[test]
    fn regular_maps_are_skipped() {
        let row = reproduce_row(1, 1, 1_000_000);
        assert_eq!(
            row.status,
            RowStatus::Skipped {
                reason: "b = c, map not chiral".into()
            }
        );
    }
}
