//! Pretty-printer for expression trees.
//!
//! Emits the same syntax the parser accepts, inserting parentheses only
//! where the precedence rules require them, so `print ∘ parse` is the
//! identity on normal forms up to redundant parentheses.

use std::fmt;

use super::ast::Ast;

/// Binding strength of each constructor; higher binds tighter.
fn level(ast: &Ast) -> u8 {
    match ast {
        Ast::Union(_) => 0,
        Ast::Intersect(_) => 1,
        Ast::Concat(_) => 2,
        Ast::Complement(_) => 3,
        Ast::Star(_) => 4,
        Ast::Empty | Ast::Epsilon | Ast::Literal(_) => 5,
    }
}

pub(crate) fn write_ast(f: &mut fmt::Formatter<'_>, ast: &Ast, min_level: u8) -> fmt::Result {
    let needs_parens = level(ast) < min_level;
    if needs_parens {
        f.write_str("(")?;
    }
    match ast {
        Ast::Empty => f.write_str("∅")?,
        Ast::Epsilon => f.write_str("ε")?,
        Ast::Literal(symbol) => write!(f, "{symbol}")?,
        Ast::Union(children) => {
            for (i, child) in children.iter().enumerate() {
                if i > 0 {
                    f.write_str("|")?;
                }
                write_ast(f, child, 1)?;
            }
        }
        Ast::Intersect(children) => {
            for (i, child) in children.iter().enumerate() {
                if i > 0 {
                    f.write_str("&")?;
                }
                write_ast(f, child, 2)?;
            }
        }
        Ast::Concat(children) => {
            for child in children {
                write_ast(f, child, 3)?;
            }
        }
        Ast::Complement(child) => {
            f.write_str("!")?;
            write_ast(f, child, 4)?;
        }
        Ast::Star(child) => {
            write_ast(f, child, 5)?;
            f.write_str("*")?;
        }
    }
    if needs_parens {
        f.write_str(")")?;
    }
    Ok(())
}

impl fmt::Display for Ast {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_ast(f, self, 0)
    }
}
