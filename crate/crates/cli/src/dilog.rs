//! The `dilog` command: single evaluations of the higher-degree functions.

use gencluster::arith::parse_rational;
use gencluster::dilog::{li2_hd, rogers_hd_tilde, rogers_inf, DilogError, DilogParams, QuadratureConfig};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DilogCmdError {
    #[error("--z: {0}")]
    BadCoefficient(String),
    #[error("--z has {got} entries, expected d + 1 = {expected}")]
    Count { expected: usize, got: usize },
    #[error(transparent)]
    Dilog(#[from] DilogError),
}

/// Where to evaluate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Point {
    At(f64),
    Infinity,
}

pub fn parse_params(d: u32, z: &[String]) -> Result<DilogParams, DilogCmdError> {
    if z.len() != d as usize + 1 {
        return Err(DilogCmdError::Count {
            expected: d as usize + 1,
            got: z.len(),
        });
    }
    let values = z
        .iter()
        .map(|s| parse_rational(s).ok_or_else(|| DilogCmdError::BadCoefficient(s.clone())))
        .collect::<Result<Vec<_>, _>>()?;
    let p = DilogParams::new(values)?;
    if !p.check_generic() {
        return Err(DilogError::NotGeneric(p.display()).into());
    }
    Ok(p)
}

/// Labelled values: `L~(inf)` alone, or `Li2(x)` and `L~(x)` where defined.
pub fn evaluate(p: &DilogParams, at: Point) -> Result<Vec<(&'static str, f64)>, DilogCmdError> {
    let cfg = QuadratureConfig::default();
    match at {
        Point::Infinity => Ok(vec![("rogers_inf", rogers_inf(p, &cfg)?)]),
        Point::At(x) => {
            let mut out = Vec::new();
            if x <= 1.0 {
                out.push(("li2", li2_hd(x, p, &cfg)?));
            }
            if x >= 0.0 {
                out.push(("rogers", rogers_hd_tilde(x, p, &cfg)?));
            }
            if out.is_empty() {
                return Err(DilogError::Domain(x).into());
            }
            Ok(out)
        }
    }
}

/// One line per value, 12 digits after the point; the value at infinity
/// is printed bare.
pub fn render(values: &[(&str, f64)]) -> String {
    if let [("rogers_inf", v)] = values {
        return format!("{v:.12}\n");
    }
    values
        .iter()
        .map(|(label, v)| format!("{label} {v:.12}\n"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn infinity_values() {
        let p = parse_params(1, &z(&["1", "1"])).unwrap();
        assert_eq!(render(&evaluate(&p, Point::Infinity).unwrap()), "1.644934066848\n");
        let p = parse_params(2, &z(&["1", "2", "1"])).unwrap();
        assert_eq!(render(&evaluate(&p, Point::Infinity).unwrap()), "3.289868133696\n");
    }

    #[test]
    fn rejects_non_generic_and_bad_counts() {
        assert!(matches!(
            parse_params(2, &z(&["1", "3", "1"])),
            Err(DilogCmdError::Dilog(DilogError::NotGeneric(_)))
        ));
        assert!(matches!(parse_params(2, &z(&["1", "1"])), Err(DilogCmdError::Count { .. })));
        assert!(matches!(
            parse_params(1, &z(&["1", "a"])),
            Err(DilogCmdError::BadCoefficient(_))
        ));
    }

    #[test]
    fn point_values() {
        let p = parse_params(1, &z(&["1", "1"])).unwrap();
        let v = evaluate(&p, Point::At(1.0)).unwrap();
        assert_eq!(v.len(), 2);
        assert!((v[0].1 - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-12);
        assert_eq!(evaluate(&p, Point::At(4.0)).unwrap().len(), 1);
    }
}
