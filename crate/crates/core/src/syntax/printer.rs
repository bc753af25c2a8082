use std::fmt::Write as _;

use super::ast::{Ast, ConcreteModel, StateNode};
use crate::variability::{LanguageVariant, PresentationOption};

/// Renders `ast` as `.sc` text, using the variant's presentation options
/// where they apply. Re-parsing the output under the same variant yields
/// `ast` again.
pub fn pretty_print(ast: &Ast, variant: &LanguageVariant) -> ConcreteModel {
    let mut out = String::new();
    if !ast.stereotypes.is_empty() {
        let items: Vec<String> = ast.stereotypes.iter().map(|s| s.to_string()).collect();
        let _ = write!(out, "<<{}>> ", items.join(", "));
    }
    let _ = writeln!(out, "statechart {} {{", ast.name);
    if !ast.signature.events.is_empty() {
        let _ = writeln!(out, "  events {};", ast.signature.events.join(" "));
    }
    if !ast.signature.flags.is_empty() {
        let _ = writeln!(out, "  flags {};", ast.signature.flags.join(" "));
    }
    write_scope(&mut out, ast, ast.root_initial.as_deref(), &ast.states, variant, 1);
    out.push_str("}\n");
    ConcreteModel::new(format!("{}.sc", ast.name), out)
}

/// Writes the initial marker (unless starred) and the states of one scope.
fn write_scope(
    out: &mut String,
    ast: &Ast,
    initial: Option<&str>,
    states: &[StateNode],
    variant: &LanguageVariant,
    depth: usize,
) {
    let pad = "  ".repeat(depth);
    let starred = variant.has(PresentationOption::InitialStar)
        && initial.is_some_and(|i| states.iter().any(|s| s.name == i));
    if let (Some(init), false) = (initial, starred) {
        let _ = writeln!(out, "{pad}initial {init};");
    }
    for st in states {
        let star = if starred && Some(st.name.as_str()) == initial { "*" } else { "" };
        if st.children.is_empty() && st.transitions.is_empty() && st.initial.is_none() {
            let _ = writeln!(out, "{pad}{star}state {} {{}}", st.name);
            continue;
        }
        let _ = writeln!(out, "{pad}{star}state {} {{", st.name);
        let inner = "  ".repeat(depth + 1);
        let arrow = if variant.has(PresentationOption::FatArrow) { "=>" } else { "->" };
        for t in &st.transitions {
            let guard = if t.guard.is_full() {
                String::new()
            } else {
                format!(" [{}]", t.guard.render(&ast.signature))
            };
            let _ = writeln!(out, "{inner}on {}{guard} {arrow} {};", t.event, t.target);
        }
        write_scope(out, ast, st.initial.as_deref(), &st.children, variant, depth + 1);
        let _ = writeln!(out, "{pad}}}");
    }
}
