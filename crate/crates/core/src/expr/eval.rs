use std::collections::HashMap;

use crate::rat::Rat;
use crate::set::ElemSet;
use crate::typespace::{Player, SpaceError, TypeSpace};

use super::Expr;

/// Evaluates an expression to the event it defines in the space: nature
/// events pull back along θ, negation complements, conjunction intersects,
/// and the belief operator applies `B̄_i^p` to the evaluated subexpression.
///
/// Structurally repeated subexpressions are evaluated once; the derived
/// bit-expression families repeat subtrees heavily.
///
/// For valid spaces the result is always a field member.
pub fn eval(space: &TypeSpace, expr: &Expr) -> Result<ElemSet, SpaceError> {
    let mut memo = HashMap::new();
    eval_memo(space, expr, &mut memo)
}

fn eval_memo(
    space: &TypeSpace,
    expr: &Expr,
    memo: &mut HashMap<Expr, ElemSet>,
) -> Result<ElemSet, SpaceError> {
    if let Some(hit) = memo.get(expr) {
        return Ok(hit.clone());
    }
    let out = match expr {
        Expr::Nat(name) => space.theta_preimage(space.nature().event(name)?),
        Expr::Not(e) => eval_memo(space, e, memo)?.complement(),
        Expr::And(es) => {
            let mut out = ElemSet::full(space.state_count());
            for e in es {
                out = out.intersection(&eval_memo(space, e, memo)?);
            }
            out
        }
        Expr::Bel(player, p, e) => {
            let sub = eval_memo(space, e, memo)?;
            space.belief_operator(player, p, &sub)?
        }
    };
    memo.insert(expr.clone(), out.clone());
    Ok(out)
}

/// Whether the expression belongs to the description of `state`: true iff
/// the state lies in the evaluated event.
pub fn desc_contains(space: &TypeSpace, state: u32, expr: &Expr) -> Result<bool, SpaceError> {
    Ok(eval(space, expr)?.contains(state))
}

/// The mass player `i` assigns at `state` to the event defined by `expr`.
/// With rational measures this realizes `sup{p | B[i,p](φ) true at state}`
/// exactly, and the supremum is attained.
pub fn believed_value(
    space: &TypeSpace,
    player: &Player,
    state: u32,
    expr: &Expr,
) -> Result<Rat, SpaceError> {
    let event = eval(space, expr)?;
    if !space.field().is_member(&event) {
        return Err(SpaceError::EventNotMeasurable(format!("{event:?}")));
    }
    Ok(space.belief(player, state)?.measure_of(&event).expect("membership checked"))
}
