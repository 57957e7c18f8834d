use super::*;
use crate::rat::{one, rat, zero};
use crate::set::ElemSet;
use crate::typespace::tests::{coin_nature, players_ab, uniform_two_state};
use crate::typespace::TypeSpace;

use proptest::prelude::*;

fn a() -> Player {
    Player::new("a")
}

fn b() -> Player {
    Player::new("b")
}

#[test]
fn parse_examples() {
    assert_eq!(parse("nat(h)").unwrap(), Expr::nat("h"));
    assert_eq!(
        parse("B[a,1/2](not nat(h))").unwrap(),
        Expr::bel(a(), rat(1, 2), Expr::not(Expr::nat("h")))
    );
    assert_eq!(
        parse("and(nat(h), B[b,1](nat(t)))").unwrap(),
        Expr::and(vec![Expr::nat("h"), Expr::bel(b(), one(), Expr::nat("t"))])
    );
}

#[test]
fn parse_is_whitespace_insensitive() {
    let canon = parse("and(nat(h), B[b,1](nat(t)))").unwrap();
    assert_eq!(parse(" and ( nat( h ) ,B[ b , 1 ]( nat(t) ) ) ").unwrap(), canon);
}

#[test]
fn or_desugars() {
    let parsed = parse("or(nat(h), nat(t))").unwrap();
    let expected =
        Expr::not(Expr::and(vec![Expr::not(Expr::nat("h")), Expr::not(Expr::nat("t"))]));
    assert_eq!(parsed, expected);
    assert_eq!(parsed, Expr::or(vec![Expr::nat("h"), Expr::nat("t")]));
}

#[test]
fn parse_error_positions_and_ranges() {
    assert!(matches!(parse("and()"), Err(ParseError::Syntax { .. })));
    assert!(matches!(parse("nat(h) extra"), Err(ParseError::Syntax { message, .. }) if message.contains("trailing")));
    assert!(matches!(parse("B[a,3/2](nat(h))"), Err(ParseError::ThresholdOutOfRange(p, _)) if p == "3/2"));
    assert!(matches!(parse("B[a,-1/2](nat(h))"), Err(ParseError::ThresholdOutOfRange(..))));
    let err = parse_for_space("nat(rain)", &coin_nature()).unwrap_err();
    assert_eq!(err, ParseError::UnknownNatureEvent("rain".into()));
}

#[test]
fn canonical_text_round_trips() {
    let exprs = [
        "nat(h)",
        "not nat(t)",
        "and(nat(h), B[b,1](nat(t)))",
        "B[a,1/2](not nat(h))",
        "B[a,0](and(nat(h), nat(t), not B[b,2/3](nat(h))))",
    ];
    for text in exprs {
        let e = parse(text).unwrap();
        assert_eq!(e.canonical_text(), text);
        assert_eq!(parse(&e.canonical_text()).unwrap(), e);
    }
}

#[test]
fn depth_examples() {
    assert_eq!(Expr::nat("h").depth(), 0);
    assert_eq!(Expr::bel(a(), one(), Expr::nat("h")).depth(), 1);
    // max(1, 2) over conjuncts.
    let e = Expr::and(vec![
        Expr::bel(a(), one(), Expr::nat("h")),
        Expr::bel(b(), one(), Expr::bel(a(), one(), Expr::nat("t"))),
    ]);
    assert_eq!(e.depth(), 2);
    // Negation and disjunction leave depth unchanged.
    assert_eq!(Expr::not(e.clone()).depth(), 2);
    let or = Expr::or(vec![
        Expr::bel(a(), one(), Expr::nat("h")),
        Expr::bel(b(), one(), Expr::bel(a(), one(), Expr::nat("t"))),
    ]);
    assert_eq!(or.depth(), 2);
}

#[test]
fn eval_on_singleton_space() {
    let space = TypeSpace::singleton(coin_nature(), "h", &players_ab()).unwrap();
    assert_eq!(eval(&space, &Expr::nat("h")).unwrap().to_vec(), vec![0]);
    assert!(eval(&space, &Expr::nat("t")).unwrap().is_empty());
    // The description of m contains nat(h) and B[i,1](nat(h)) but not nat(t).
    assert!(desc_contains(&space, 0, &Expr::nat("h")).unwrap());
    assert!(desc_contains(&space, 0, &Expr::bel(a(), one(), Expr::nat("h"))).unwrap());
    assert!(!desc_contains(&space, 0, &Expr::nat("t")).unwrap());
}

#[test]
fn eval_belief_thresholds() {
    let space = uniform_two_state();
    // B[a,0](φ) is all of M.
    let everything = eval(&space, &Expr::bel(a(), zero(), Expr::nat("t"))).unwrap();
    assert_eq!(everything, ElemSet::full(2));
    // Uniform types: B[a,1/2](nat(h)) = M, B[a,3/4](nat(h)) = ∅.
    assert_eq!(
        eval(&space, &Expr::bel(a(), rat(1, 2), Expr::nat("h"))).unwrap(),
        ElemSet::full(2)
    );
    assert!(eval(&space, &Expr::bel(a(), rat(3, 4), Expr::nat("h"))).unwrap().is_empty());
}

#[test]
fn believed_value_examples() {
    let space = uniform_two_state();
    let tautology = Expr::or(vec![Expr::nat("h"), Expr::nat("t")]);
    let contradiction = Expr::and(vec![Expr::nat("h"), Expr::nat("t")]);
    assert_eq!(believed_value(&space, &a(), 0, &tautology).unwrap(), one());
    assert_eq!(believed_value(&space, &a(), 0, &contradiction).unwrap(), zero());
    assert_eq!(believed_value(&space, &a(), 0, &Expr::nat("h")).unwrap(), rat(1, 2));
    // believed_value ≥ p ⇔ the belief expression is in the description.
    for p in [zero(), rat(1, 2), rat(3, 4), one()] {
        let in_desc =
            desc_contains(&space, 0, &Expr::bel(a(), p.clone(), Expr::nat("h"))).unwrap();
        assert_eq!(believed_value(&space, &a(), 0, &Expr::nat("h")).unwrap() >= p, in_desc);
    }
}

#[test]
fn eval_homomorphism_laws() {
    let space = uniform_two_state();
    let phi = Expr::bel(a(), rat(1, 2), Expr::nat("h"));
    let psi = Expr::nat("t");
    let full = ElemSet::full(2);
    let e_phi = eval(&space, &phi).unwrap();
    let e_psi = eval(&space, &psi).unwrap();
    assert_eq!(eval(&space, &Expr::not(phi.clone())).unwrap(), e_phi.complement());
    assert_eq!(
        eval(&space, &Expr::and(vec![phi.clone(), psi.clone()])).unwrap(),
        e_phi.intersection(&e_psi)
    );
    assert_eq!(
        eval(&space, &Expr::or(vec![phi.clone(), psi.clone()])).unwrap(),
        e_phi.union(&e_psi)
    );
    // Everything evaluated on a valid space is a field member.
    for e in [&phi, &psi] {
        assert!(space.field().is_member(&eval(&space, e).unwrap()));
    }
    let _ = full;
}

#[test]
fn desc_contains_is_exclusive_on_negation() {
    let space = uniform_two_state();
    let exprs = [
        Expr::nat("h"),
        Expr::bel(a(), rat(1, 2), Expr::nat("h")),
        Expr::and(vec![Expr::nat("h"), Expr::nat("t")]),
    ];
    for m in 0..2 {
        for e in &exprs {
            let pos = desc_contains(&space, m, e).unwrap();
            let neg = desc_contains(&space, m, &Expr::not(e.clone())).unwrap();
            assert!(pos ^ neg);
        }
    }
}

// Random ASTs for the round-trip property.
fn arb_expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![Just(Expr::nat("h")), Just(Expr::nat("t"))];
    leaf.prop_recursive(4, 24, 4, |inner| {
        prop_oneof![
            inner.clone().prop_map(Expr::not),
            prop::collection::vec(inner.clone(), 1..4).prop_map(Expr::and),
            (inner, 0i64..=4, prop_oneof![Just("a"), Just("b")]).prop_map(|(e, n, pl)| {
                Expr::bel(Player::new(pl), rat(n, 4), e)
            }),
        ]
    })
}

proptest! {
    #[test]
    fn canonical_text_parse_round_trip(e in arb_expr()) {
        prop_assert_eq!(parse(&e.canonical_text()).unwrap(), e);
    }

    #[test]
    fn depth_of_or_equals_depth_of_and(es in prop::collection::vec(arb_expr(), 1..4)) {
        prop_assert_eq!(Expr::or(es.clone()).depth(), Expr::and(es).depth());
    }
}
