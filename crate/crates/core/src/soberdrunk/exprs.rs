use crate::expr::{desc_contains, eval, Expr};
use crate::rat::one;
use crate::typespace::{Player, TypeSpace};
use crate::universal::fingerprint_table;

use super::ordinal::Ordinal;
use super::state::{restrict, state_name, Coin, Record, WState, AB};
use super::SoberDrunkError;

fn player_of(i: AB) -> Player {
    Player::new(i.name())
}

/// The depth-0 expressions naming the two nature events.
pub fn nature_exprs() -> (Expr, Expr) {
    (Expr::nat("h"), Expr::nat("t"))
}

/// The bit expression for (player, position, value): depth position+1,
/// evaluating on any constructed record space to the event that the
/// player's record carries that value at that position.
///
/// Built by the recursion: at position 0, certainty about nature in either
/// direction; at a successor position, certainty about the opponent's bit
/// one step down in either direction. The value-0 expression is the
/// negation of the value-1 expression.
pub fn bit_expr(i: AB, beta: u32, bit: bool) -> Expr {
    let positive = if beta == 0 {
        let (h, t) = nature_exprs();
        Expr::or(vec![
            Expr::bel(player_of(i), one(), h),
            Expr::bel(player_of(i), one(), t),
        ])
    } else {
        let j = i.other();
        Expr::or(vec![
            Expr::bel(player_of(i), one(), bit_expr(j, beta - 1, false)),
            Expr::bel(player_of(i), one(), bit_expr(j, beta - 1, true)),
        ])
    };
    if bit {
        positive
    } else {
        Expr::not(positive)
    }
}

/// The full corpus of bit expressions of depth at most `max_depth`, plus
/// the two base nature expressions.
pub fn bit_expr_corpus(max_depth: u32) -> Vec<Expr> {
    let (h, t) = nature_exprs();
    let mut corpus = vec![h, t];
    for beta in 0..max_depth {
        for i in AB::BOTH {
            for bit in [false, true] {
                corpus.push(bit_expr(i, beta, bit));
            }
        }
    }
    corpus
}

/// Outcome of the depth-separation demonstration.
#[derive(Debug, Clone)]
pub struct SeparationReport {
    pub u: WState,
    pub w: WState,
    pub psi: Expr,
    pub alpha: u32,
    /// Equal description fingerprints at depth α.
    pub fingerprints_agree: bool,
    /// Equal membership in every corpus expression of depth ≤ α.
    pub corpus_agrees: bool,
    /// ψ has depth α+1, holds at u and fails at w.
    pub psi_separates: bool,
    pub psi_depth: u32,
}

impl SeparationReport {
    pub fn verified(&self) -> bool {
        self.fingerprints_agree
            && self.corpus_agrees
            && self.psi_separates
            && self.psi_depth == self.alpha + 1
    }
}

/// Produces two states of the level-n space that agree on every expression
/// of depth ≤ α yet are separated by a depth-(α+1) expression, and verifies
/// both claims.
///
/// The pair differs exactly in player a's record at position α; the
/// separating expression is the value-1 bit expression at that position.
pub fn separation_demo(
    space: &TypeSpace,
    n: u32,
    alpha: u32,
) -> Result<SeparationReport, SoberDrunkError> {
    if alpha + 1 > n {
        return Err(SoberDrunkError::OutOfRange(
            alpha.to_string(),
            "<",
            n.to_string(),
        ));
    }
    let len = Ordinal::nat(n);
    let w = WState::new(Coin::H, Record::empty(len.clone()), Record::empty(len.clone()))
        .map_err(|e| SoberDrunkError::Internal(e.to_string()))?;
    let u = w.with_bit(AB::A, &Ordinal::nat(alpha), true);
    debug_assert_eq!(
        restrict(&u, &Ordinal::nat(alpha)).unwrap(),
        restrict(&w, &Ordinal::nat(alpha)).unwrap()
    );
    let u_idx = space
        .state_index(&state_name(&u))
        .map_err(|e| SoberDrunkError::Internal(e.to_string()))?;
    let w_idx = space
        .state_index(&state_name(&w))
        .map_err(|e| SoberDrunkError::Internal(e.to_string()))?;

    let table = fingerprint_table(space, alpha as usize)
        .map_err(|e| SoberDrunkError::Internal(e.to_string()))?;
    let fingerprints_agree =
        table.token(alpha as usize, u_idx) == table.token(alpha as usize, w_idx);

    let mut corpus_agrees = true;
    for expr in bit_expr_corpus(alpha) {
        debug_assert!(expr.depth() <= alpha);
        let at_u = desc_contains(space, u_idx, &expr)
            .map_err(|e| SoberDrunkError::Internal(e.to_string()))?;
        let at_w = desc_contains(space, w_idx, &expr)
            .map_err(|e| SoberDrunkError::Internal(e.to_string()))?;
        if at_u != at_w {
            corpus_agrees = false;
        }
    }

    let psi = bit_expr(AB::A, alpha, true);
    let event = eval(space, &psi).map_err(|e| SoberDrunkError::Internal(e.to_string()))?;
    let psi_separates = event.contains(u_idx) && !event.contains(w_idx);

    Ok(SeparationReport {
        u,
        w,
        psi: psi.clone(),
        alpha,
        fingerprints_agree,
        corpus_agrees,
        psi_separates,
        psi_depth: psi.depth(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::soberdrunk::beliefs::soberdrunk_space;
    use crate::soberdrunk::partition::{cylinder_event, CylinderEvent};
    use crate::soberdrunk::state::enumerate_w;

    #[test]
    fn bit_expr_depths() {
        for beta in 0..4u32 {
            for i in AB::BOTH {
                assert_eq!(bit_expr(i, beta, true).depth(), beta + 1);
                assert_eq!(bit_expr(i, beta, false).depth(), beta + 1);
            }
        }
    }

    #[test]
    fn bit_exprs_evaluate_to_cylinders_at_level_two() {
        let n = 2;
        let space = soberdrunk_space(n, 1 << 20).unwrap();
        let states = enumerate_w(n, 1 << 20).unwrap();
        for beta in 0..n {
            for i in AB::BOTH {
                for bit in [false, true] {
                    let expr = bit_expr(i, beta, bit);
                    let got = eval(&space, &expr).unwrap();
                    let want = cylinder_event(
                        &CylinderEvent::Bit {
                            player: i,
                            position: Ordinal::nat(beta),
                            value: bit,
                        },
                        &states,
                    )
                    .unwrap();
                    // The space's states are in the enumeration order, so
                    // index sets compare directly.
                    assert_eq!(got, want, "i={i:?} beta={beta} bit={bit}");
                }
            }
        }
    }

    #[test]
    fn complement_relation() {
        let space = soberdrunk_space(1, 1 << 20).unwrap();
        let pos = eval(&space, &bit_expr(AB::A, 0, true)).unwrap();
        let neg = eval(&space, &bit_expr(AB::A, 0, false)).unwrap();
        assert_eq!(neg, pos.complement());
    }

    #[test]
    fn separation_at_small_levels() {
        for (n, alpha) in [(1u32, 0u32), (2, 1)] {
            let space = soberdrunk_space(n, 1 << 20).unwrap();
            let report = separation_demo(&space, n, alpha).unwrap();
            assert!(report.verified(), "n={n} alpha={alpha}: {report:?}");
            // The pair shares θ.
            assert_eq!(report.u.coin(), report.w.coin());
        }
    }

    #[test]
    fn separation_range_check() {
        let space = soberdrunk_space(1, 1 << 20).unwrap();
        assert!(separation_demo(&space, 1, 1).is_err());
    }
}
