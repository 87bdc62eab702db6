//! Canonical serializer. Output uses the symbolic operators (`!`, `&`, `|`,
//! `==`, `!=`), two-space indentation, and one statement per line; connectives
//! print left-associatively with only the parentheses needed to reproduce the
//! expression tree. Parsing the output yields a structurally identical
//! document.

use super::Document;
use crate::model::{CausalModel, Context, Expr, VarId};
use crate::responsibility::format_rational;
use crate::ExprAst;
use std::fmt::Write;

// binding strength: atoms bind tightest, `|` loosest
const PREC_OR: u8 = 0;
const PREC_AND: u8 = 1;
const PREC_NOT: u8 = 2;
const PREC_ATOM: u8 = 3;

fn precedence(e: &ExprAst) -> u8 {
    match e {
        ExprAst::Or(..) => PREC_OR,
        ExprAst::And(..) => PREC_AND,
        ExprAst::Not(..) => PREC_NOT,
        _ => PREC_ATOM,
    }
}

fn write_expr(out: &mut String, e: &ExprAst, min: u8) {
    let parens = precedence(e) < min;
    if parens {
        out.push('(');
    }
    match e {
        ExprAst::Lit(tok) => out.push_str(tok),
        ExprAst::Var(name) => out.push_str(name),
        ExprAst::Is(name, value) => {
            let _ = write!(out, "{name} == {value}");
        }
        ExprAst::IsNot(name, value) => {
            let _ = write!(out, "{name} != {value}");
        }
        ExprAst::Not(inner) => {
            out.push('!');
            write_expr(out, inner, PREC_NOT);
        }
        ExprAst::And(a, b) => {
            write_expr(out, a, PREC_AND);
            out.push_str(" & ");
            write_expr(out, b, PREC_AND + 1);
        }
        ExprAst::Or(a, b) => {
            write_expr(out, a, PREC_OR);
            out.push_str(" | ");
            write_expr(out, b, PREC_OR + 1);
        }
        ExprAst::Case { arms, default } => {
            out.push_str("case {");
            for (guard, value) in arms {
                out.push(' ');
                write_expr(out, guard, PREC_OR);
                let _ = write!(out, " -> {value},");
            }
            let _ = write!(out, " else -> {default} }}");
        }
    }
    if parens {
        out.push(')');
    }
}

fn expr_text(e: &ExprAst) -> String {
    let mut out = String::new();
    write_expr(&mut out, e, PREC_OR);
    out
}

/// Renders a document in canonical form.
pub fn serialize(doc: &Document) -> String {
    let mut out = String::new();
    out.push_str("model {\n");
    for decl in &doc.declarations {
        let range = decl.range.join(", ");
        match &decl.equation {
            None => {
                let _ = writeln!(out, "  exo {} in {{{range}}}", decl.name);
            }
            Some(eq) => {
                let _ = writeln!(out, "  var {} in {{{range}}} := {}", decl.name, expr_text(eq));
            }
        }
    }
    out.push_str("}\n\ncontext {\n");
    for (name, value) in &doc.context {
        let _ = writeln!(out, "  {name} = {value}");
    }
    out.push_str("}\n");
    if let Some((name, value)) = &doc.outcome {
        let _ = write!(out, "\noutcome {name} == {value}\n");
    }
    for agent in &doc.agents {
        let _ = write!(out, "\nagent {} {{\n  action {}\n  epistemic {{\n", agent.name, agent.action);
        for world in &agent.worlds {
            let _ = writeln!(out, "    world {} {{", format_rational(&world.weight));
            for (name, value) in &world.overrides {
                let _ = writeln!(out, "      {name} = {value}");
            }
            for (name, eq) in &world.equations {
                let _ = writeln!(out, "      {name} := {}", expr_text(eq));
            }
            out.push_str("    }\n");
        }
        out.push_str("  }\n}\n");
    }
    out
}

fn unbind(model: &CausalModel, target: VarId, e: &Expr) -> ExprAst {
    let sig = model.signature();
    match e {
        Expr::Lit(v) => {
            if sig.is_boolean(target) {
                ExprAst::Lit(sig.value_token(target, *v).to_string())
            } else {
                // non-Boolean constants have no literal syntax; an empty
                // case expression carries the value
                ExprAst::Case {
                    arms: Vec::new(),
                    default: sig.value_token(target, *v).to_string(),
                }
            }
        }
        Expr::Is(var, v) => {
            if sig.is_boolean(*var) && *v == 1 {
                ExprAst::var(sig.name(*var))
            } else {
                ExprAst::is(sig.name(*var), sig.value_token(*var, *v))
            }
        }
        Expr::Not(inner) => ExprAst::not(unbind(model, target, inner)),
        Expr::And(a, b) => ExprAst::and(unbind(model, target, a), unbind(model, target, b)),
        Expr::Or(a, b) => ExprAst::or(unbind(model, target, a), unbind(model, target, b)),
        Expr::Case { arms, default } => ExprAst::Case {
            arms: arms
                .iter()
                .map(|(guard, v)| {
                    (
                        unbind(model, target, guard),
                        sig.value_token(target, *v).to_string(),
                    )
                })
                .collect(),
            default: sig.value_token(target, *default).to_string(),
        },
    }
}

/// Reconstructs source form from a built model and context. Variables fixed
/// by interventions serialize as constant equations, so the output document
/// rebuilds to a model with identical solutions.
pub fn document_from_model(model: &CausalModel, context: &Context) -> Document {
    let sig = model.signature();
    let mut declarations = Vec::new();
    for id in (0..sig.num_vars() as u32).map(VarId) {
        let range = sig.range(id).to_vec();
        let equation = if sig.is_exogenous(id) {
            None
        } else if let Some(value) = model.fixed_value(id) {
            Some(unbind(model, id, &Expr::Lit(value)))
        } else {
            model.equation(id).map(|e| unbind(model, id, e))
        };
        declarations.push(super::VarDecl {
            name: sig.name(id).to_string(),
            range,
            equation,
        });
    }
    let context_entries = context
        .signature()
        .exogenous()
        .iter()
        .map(|&u| {
            (
                sig.name(u).to_string(),
                context.get(sig.name(u)).unwrap().to_string(),
            )
        })
        .collect();
    Document {
        declarations,
        context: context_entries,
        outcome: None,
        agents: Vec::new(),
    }
}
