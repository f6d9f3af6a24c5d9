//! CPLEX LP text output.

use std::fmt::Write;

use super::IpModel;

/// Longest line written before wrapping onto a continuation line.
const LINE_WIDTH: usize = 100;

fn push_wrapped(out: &mut String, line: &mut String, token: &str) {
    if line.len() + token.len() + 1 > LINE_WIDTH {
        out.push_str(line);
        out.push('\n');
        line.clear();
        line.push_str("   ");
    }
    line.push(' ');
    line.push_str(token);
}

/// LP text for `model`: a zero objective, one named row per constraint and
/// every variable declared binary. Output depends only on the model.
pub fn emit_lp(model: &IpModel) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "\\ {} vertices, {} slots, {:?}", model.n, model.slots, model.formulation);
    out.push_str("Minimize\n");
    match model.variables.first() {
        Some(v) => {
            let _ = writeln!(out, " obj: 0 {}", v.name);
        }
        None => out.push_str(" obj:\n"),
    }
    out.push_str("Subject To\n");
    for c in &model.constraints {
        let mut line = format!(" {}:", c.name);
        for (k, &(id, coef)) in c.terms.iter().enumerate() {
            let sign = if coef < 0 { "-" } else { "+" };
            let magnitude = coef.unsigned_abs();
            let name = &model.variables[id].name;
            let token = match (k, magnitude) {
                (0, 1) if coef > 0 => name.clone(),
                (0, _) if coef > 0 => format!("{magnitude} {name}"),
                (_, 1) => format!("{sign} {name}"),
                _ => format!("{sign} {magnitude} {name}"),
            };
            push_wrapped(&mut out, &mut line, &token);
        }
        if c.terms.is_empty() {
            line.push_str(" 0");
        }
        push_wrapped(&mut out, &mut line, &format!("{} {}", c.sense.symbol(), c.rhs));
        out.push_str(&line);
        out.push('\n');
    }
    out.push_str("Binary\n");
    let mut line = String::new();
    for v in &model.variables {
        push_wrapped(&mut out, &mut line, &v.name);
    }
    if !line.is_empty() {
        out.push_str(&line);
        out.push('\n');
    }
    out.push_str("End\n");
    out
}
