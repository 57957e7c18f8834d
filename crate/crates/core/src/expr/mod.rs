//! The belief-expression language: AST, parser, depth and semantics.
//!
//! Expressions are built from named nature events, negation, nonempty finite
//! conjunction and the belief operators `B[i,p](φ)`. Disjunction is sugar:
//! `or(Ψ)` parses to `not and(not φ, …)`.

mod eval;
mod parse;

pub use eval::{believed_value, desc_contains, eval};
pub use parse::{parse, parse_for_space, ParseError};

use crate::rat::{self, Rat};
use crate::typespace::Player;

/// A belief expression.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Expr {
    /// A named member of the nature field.
    Nat(String),
    Not(Box<Expr>),
    /// Nonempty finite conjunction.
    And(Vec<Expr>),
    /// Belief operator: player believes the subexpression with probability
    /// at least `p`.
    Bel(Player, Rat, Box<Expr>),
}

impl Expr {
    pub fn nat(name: &str) -> Expr {
        Expr::Nat(name.to_string())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(e: Expr) -> Expr {
        Expr::Not(Box::new(e))
    }

    /// Nonempty conjunction. Panics on an empty list.
    pub fn and(es: Vec<Expr>) -> Expr {
        assert!(!es.is_empty(), "conjunctions must be nonempty");
        Expr::And(es)
    }

    /// Disjunction, desugared to `¬⋀{¬φ}`.
    pub fn or(es: Vec<Expr>) -> Expr {
        assert!(!es.is_empty(), "disjunctions must be nonempty");
        Expr::not(Expr::and(es.into_iter().map(Expr::not).collect()))
    }

    /// Belief operator; `p` must lie in `[0,1]`.
    pub fn bel(player: Player, p: Rat, e: Expr) -> Expr {
        assert!(rat::in_unit_interval(&p), "belief threshold outside [0,1]");
        Expr::Bel(player, p, Box::new(e))
    }

    /// Expression depth: the number of nested belief operators. Zero for
    /// nature events, unchanged by negation, one plus the subexpression
    /// depth for belief operators, and the maximum over the conjuncts for
    /// conjunctions.
    pub fn depth(&self) -> u32 {
        match self {
            Expr::Nat(_) => 0,
            Expr::Not(e) => e.depth(),
            Expr::And(es) => es.iter().map(Expr::depth).max().unwrap_or(0),
            Expr::Bel(_, _, e) => e.depth() + 1,
        }
    }

    /// Canonical text form: lowercase keywords, rationals as `num/den`,
    /// conjunct order preserved. `parse(canonical_text(e)) == e`.
    pub fn canonical_text(&self) -> String {
        match self {
            Expr::Nat(name) => format!("nat({name})"),
            Expr::Not(e) => format!("not {}", e.canonical_text()),
            Expr::And(es) => {
                let inner: Vec<String> = es.iter().map(Expr::canonical_text).collect();
                format!("and({})", inner.join(", "))
            }
            Expr::Bel(player, p, e) => {
                format!("B[{},{}]({})", player, rat::to_text(p), e.canonical_text())
            }
        }
    }
}

impl std::fmt::Display for Expr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.canonical_text())
    }
}

#[cfg(test)]
mod tests;
