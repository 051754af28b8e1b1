//! LP text export for [`ModelIR`].
//!
//! The emitted subset (`Minimize` / `Subject To` / `Bounds` / `Binary` /
//! `End`) is documented in docs/lp_format.md. Variable ordering follows
//! insertion order and numbers carry 12 significant digits, so exports are
//! deterministic and re-import reproduces coefficients exactly as printed.

use std::fmt::Write as _;

use super::ir::{ModelError, ModelIR, Sense, VarKind};

const TERMS_PER_LINE: usize = 8;

fn fmt_num(x: f64) -> String {
    format!("{x:.11e}")
}

/// Serialize the model to LP text.
pub fn export_lp(model: &ModelIR) -> Result<String, ModelError> {
    for (v, c) in &model.objective().terms {
        if !c.is_finite() {
            return Err(ModelError::Export(format!(
                "non-finite objective coefficient on `{}`",
                model.var(*v).name
            )));
        }
    }
    if !model.objective_constant().is_finite() {
        return Err(ModelError::Export("non-finite objective constant".into()));
    }
    let mut out = String::new();
    out.push_str("Minimize\n");
    let mut line = String::from(" obj:");
    let merged = merge_terms(model, &model.objective().terms)?;
    let mut in_line = 0usize;
    for (v, c) in &merged {
        let sign = if *c < 0.0 { '-' } else { '+' };
        write!(line, " {sign} {} {}", fmt_num(c.abs()), model.var(*v).name).unwrap();
        in_line += 1;
        if in_line == TERMS_PER_LINE {
            out.push_str(&line);
            out.push('\n');
            line = String::from("     ");
            in_line = 0;
        }
    }
    if model.objective_constant() != 0.0 || merged.is_empty() {
        let c = model.objective_constant();
        let sign = if c < 0.0 { '-' } else { '+' };
        write!(line, " {sign} {}", fmt_num(c.abs())).unwrap();
        in_line += 1;
    }
    if in_line > 0 {
        out.push_str(&line);
        out.push('\n');
    }

    out.push_str("Subject To\n");
    for cons in model.constraints() {
        let merged = merge_terms(model, &cons.expr.terms)?;
        if !cons.rhs.is_finite() {
            return Err(ModelError::Export(format!(
                "non-finite rhs on row `{}`",
                cons.name
            )));
        }
        let mut line = format!(" {}:", cons.name);
        let mut in_line = 0usize;
        if merged.is_empty() {
            // Degenerate row: keep it syntactically valid.
            write!(line, " 0 {}", model.var(0).name).unwrap();
        }
        for (v, c) in &merged {
            let sign = if *c < 0.0 { '-' } else { '+' };
            write!(line, " {sign} {} {}", fmt_num(c.abs()), model.var(*v).name).unwrap();
            in_line += 1;
            if in_line == TERMS_PER_LINE {
                out.push_str(&line);
                out.push('\n');
                line = String::from("     ");
                in_line = 0;
            }
        }
        let rhs_sign = if cons.rhs < 0.0 { "- " } else { "" };
        write!(
            line,
            " {} {rhs_sign}{}",
            cons.sense.symbol(),
            fmt_num(cons.rhs.abs())
        )
        .unwrap();
        out.push_str(&line);
        out.push('\n');
    }

    out.push_str("Bounds\n");
    for var in model.vars() {
        if var.lower == f64::NEG_INFINITY && var.upper == f64::INFINITY {
            writeln!(out, " {} free", var.name).unwrap();
        } else if var.lower == var.upper {
            writeln!(out, " {} = {}", var.name, fmt_num(var.lower)).unwrap();
        } else {
            let lo = if var.lower < 0.0 {
                format!("- {}", fmt_num(-var.lower))
            } else {
                fmt_num(var.lower)
            };
            writeln!(out, " {lo} <= {} <= {}", var.name, fmt_num(var.upper)).unwrap();
        }
    }

    let binaries: Vec<&str> = model
        .vars()
        .iter()
        .filter(|v| v.kind == VarKind::Binary)
        .map(|v| v.name.as_str())
        .collect();
    if !binaries.is_empty() {
        out.push_str("Binary\n");
        for chunk in binaries.chunks(16) {
            writeln!(out, " {}", chunk.join(" ")).unwrap();
        }
    }
    out.push_str("End\n");
    Ok(out)
}

fn merge_terms(
    model: &ModelIR,
    terms: &[(usize, f64)],
) -> Result<Vec<(usize, f64)>, ModelError> {
    let mut acc: Vec<f64> = vec![0.0; model.num_vars()];
    let mut seen: Vec<bool> = vec![false; model.num_vars()];
    for (v, c) in terms {
        if !c.is_finite() {
            return Err(ModelError::Export(format!(
                "non-finite coefficient on `{}`",
                model.var(*v).name
            )));
        }
        acc[*v] += c;
        seen[*v] = true;
    }
    Ok((0..model.num_vars())
        .filter(|v| seen[*v] && acc[*v] != 0.0)
        .map(|v| (v, acc[v]))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::milp::ir::LinExpr;

    #[test]
    fn exports_single_variable_model() {
        let mut m = ModelIR::new();
        let x = m.add_continuous("x", 0.0, 10.0).unwrap();
        m.add_objective_term(x, 1.0);
        m.add_constraint("c0", LinExpr::term(x, 1.0), Sense::Ge, 1.0)
            .unwrap();
        let text = export_lp(&m).unwrap();
        assert!(text.contains("Minimize"));
        assert!(text.contains(">= 1"));
        assert!(text.contains("<= 1.00000000000e1"));
        assert!(text.contains("End"));
        assert!(!text.contains("Binary"));
    }

    #[test]
    fn binary_appears_once_in_binary_section() {
        let mut m = ModelIR::new();
        let x = m.add_binary("flag").unwrap();
        m.add_objective_term(x, 1.0);
        let text = export_lp(&m).unwrap();
        let count = text.matches("Binary").count();
        assert_eq!(count, 1);
        let binary_section = text.split("Binary").nth(1).unwrap();
        assert_eq!(binary_section.matches("flag").count(), 1);
    }

    #[test]
    fn rejects_nan_coefficients() {
        let mut m = ModelIR::new();
        let x = m.add_continuous("x", 0.0, 1.0).unwrap();
        m.add_objective_term(x, f64::NAN);
        assert!(export_lp(&m).is_err());
    }

    #[test]
    fn negative_bounds_and_rhs_are_signed() {
        let mut m = ModelIR::new();
        let x = m.add_continuous("x", -5.0, 5.0).unwrap();
        m.add_objective_term(x, 1.0);
        m.add_constraint("c0", LinExpr::term(x, 1.0), Sense::Ge, -2.0)
            .unwrap();
        let text = export_lp(&m).unwrap();
        assert!(text.contains("- 5.00000000000e0 <= x"));
        assert!(text.contains(">= - 2.00000000000e0"));
    }

    #[test]
    fn export_is_deterministic() {
        let build = || {
            let mut m = ModelIR::new();
            let a = m.add_continuous("a", 0.0, 1.0).unwrap();
            let b = m.add_binary("b").unwrap();
            m.add_objective_term(b, 0.25);
            m.add_objective_term(a, 1.5);
            let mut e = LinExpr::new();
            e.add(a, 1.0).add(b, -3.0);
            m.add_constraint("mix", e, Sense::Le, 0.5).unwrap();
            export_lp(&m).unwrap()
        };
        assert_eq!(build(), build());
    }
}
