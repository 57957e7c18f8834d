use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::ordinal::{ord_parity, Ordinal, Parity};
use super::SoberDrunkError;

/// The two players of the record spaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AB {
    A,
    B,
}

impl AB {
    /// The opponent.
    pub fn other(self) -> AB {
        match self {
            AB::A => AB::B,
            AB::B => AB::A,
        }
    }

    pub fn index(self) -> usize {
        match self {
            AB::A => 0,
            AB::B => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            AB::A => "a",
            AB::B => "b",
        }
    }

    pub const BOTH: [AB; 2] = [AB::A, AB::B];
}

/// The two states of nature: heads and tails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Coin {
    H,
    T,
}

impl Coin {
    pub fn other(self) -> Coin {
        match self {
            Coin::H => Coin::T,
            Coin::T => Coin::H,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Coin::H => "h",
            Coin::T => "t",
        }
    }

    pub const BOTH: [Coin; 2] = [Coin::H, Coin::T];
}

/// A 0/1 record over the ordinal positions below `length`, stored by its
/// finite support (the positions carrying 1).
///
/// Finite support makes the record condition automatic: before every limit
/// ordinal the record is eventually zero.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Record {
    length: Ordinal,
    support: BTreeSet<Ordinal>,
}

impl Record {
    pub fn new(
        length: Ordinal,
        support: impl IntoIterator<Item = Ordinal>,
    ) -> Result<Record, SoberDrunkError> {
        let support: BTreeSet<Ordinal> = support.into_iter().collect();
        if let Some(bad) = support.iter().find(|p| **p >= length) {
            return Err(SoberDrunkError::OutOfRange(bad.to_string(), "<", length.to_string()));
        }
        Ok(Record { length, support })
    }

    pub fn empty(length: Ordinal) -> Record {
        Record { length, support: BTreeSet::new() }
    }

    pub fn length(&self) -> &Ordinal {
        &self.length
    }

    pub fn support(&self) -> &BTreeSet<Ordinal> {
        &self.support
    }

    /// The record's value at a position.
    pub fn value(&self, position: &Ordinal) -> bool {
        self.support.contains(position)
    }

    /// Restriction to length `beta`: positions ≥ beta dropped.
    pub fn restrict(&self, beta: &Ordinal) -> Record {
        Record {
            length: beta.clone(),
            support: self.support.iter().filter(|p| *p < beta).cloned().collect(),
        }
    }

    /// A copy with the value at `position` set to `bit`.
    pub fn with_value(&self, position: &Ordinal, bit: bool) -> Record {
        let mut support = self.support.clone();
        if bit {
            support.insert(position.clone());
        } else {
            support.remove(position);
        }
        Record { length: self.length.clone(), support }
    }
}

/// The minimal ordinal o below the limit λ after which the record is
/// identically zero up to λ. Always zero or a successor.
pub fn o_lambda(record: &Record, lambda: &Ordinal) -> Result<Ordinal, SoberDrunkError> {
    if !lambda.is_limit() {
        return Err(SoberDrunkError::NotALimit(lambda.to_string()));
    }
    if lambda > record.length() {
        return Err(SoberDrunkError::OutOfRange(
            lambda.to_string(),
            "<=",
            record.length().to_string(),
        ));
    }
    Ok(record.support.iter().rfind(|p| *p < lambda).map_or(Ordinal::zero(), Ordinal::succ))
}

/// The λ-parity of a record: the parity of `o_lambda`.
pub fn lambda_parity(record: &Record, lambda: &Ordinal) -> Result<Parity, SoberDrunkError> {
    Ok(ord_parity(&o_lambda(record, lambda)?))
}

/// A state of the level-α space: a coin value and one record of length α
/// per player. Level 0 carries just the coin.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WState {
    level: Ordinal,
    coin: Coin,
    records: [Record; 2],
}

impl WState {
    pub fn new(coin: Coin, r_a: Record, r_b: Record) -> Result<WState, SoberDrunkError> {
        if r_a.length() != r_b.length() {
            return Err(SoberDrunkError::Internal("records of different lengths".into()));
        }
        let level = r_a.length().clone();
        Ok(WState { level, coin, records: [r_a, r_b] })
    }

    pub fn level_zero(coin: Coin) -> WState {
        WState {
            level: Ordinal::zero(),
            coin,
            records: [Record::empty(Ordinal::zero()), Record::empty(Ordinal::zero())],
        }
    }

    pub fn level(&self) -> &Ordinal {
        &self.level
    }

    pub fn coin(&self) -> Coin {
        self.coin
    }

    pub fn record(&self, player: AB) -> &Record {
        &self.records[player.index()]
    }

    /// Player's record value at `position`.
    pub fn bit(&self, player: AB, position: &Ordinal) -> bool {
        self.records[player.index()].value(position)
    }

    /// A copy with one record position changed.
    pub fn with_bit(&self, player: AB, position: &Ordinal, value: bool) -> WState {
        let mut records = self.records.clone();
        records[player.index()] = records[player.index()].with_value(position, value);
        WState { level: self.level.clone(), coin: self.coin, records }
    }

    pub fn with_coin(&self, coin: Coin) -> WState {
        WState { level: self.level.clone(), coin, records: self.records.clone() }
    }
}

impl fmt::Display for WState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let support = |player: AB| {
            let parts: Vec<String> =
                self.record(player).support().iter().map(Ordinal::to_string).collect();
            format!("{{{}}}", parts.join(","))
        };
        write!(f, "({}, {}, {})", self.coin.name(), support(AB::A), support(AB::B))
    }
}

/// Restriction of a state to a lower level: both records truncated.
pub fn restrict(w: &WState, beta: &Ordinal) -> Result<WState, SoberDrunkError> {
    if beta > w.level() {
        return Err(SoberDrunkError::OutOfRange(beta.to_string(), "<=", w.level().to_string()));
    }
    Ok(WState {
        level: beta.clone(),
        coin: w.coin,
        records: [w.record(AB::A).restrict(beta), w.record(AB::B).restrict(beta)],
    })
}

/// Identifier-safe document name of a finite-level state: the coin letter
/// followed by both records as position-0-first bit strings.
pub fn state_name(w: &WState) -> String {
    let n = w.level().as_nat().expect("finite level");
    let bits = |player: AB| -> String {
        (0..n).map(|p| if w.bit(player, &Ordinal::nat(p)) { '1' } else { '0' }).collect()
    };
    if n == 0 {
        w.coin().name().to_string()
    } else {
        format!("{}_a{}_b{}", w.coin().name(), bits(AB::A), bits(AB::B))
    }
}

/// All states of a finite level, sorted in the canonical order, with an
/// index for event arithmetic.
#[derive(Debug, Clone)]
pub struct LevelStates {
    level: u32,
    states: Vec<WState>,
    index: BTreeMap<WState, u32>,
}

impl LevelStates {
    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn states(&self) -> &[WState] {
        &self.states
    }

    pub fn len(&self) -> u32 {
        self.states.len() as u32
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn state(&self, index: u32) -> &WState {
        &self.states[index as usize]
    }

    pub fn index_of(&self, w: &WState) -> u32 {
        *self.index.get(w).expect("state belongs to this level")
    }
}

/// Enumerates the full level-n space: 2^(2n+1) states in the canonical
/// (coin, record-a, record-b) order.
pub fn enumerate_w(n: u32, budget: u64) -> Result<LevelStates, SoberDrunkError> {
    let count: u64 = 1u64 << (2 * n + 1);
    if count > budget {
        return Err(SoberDrunkError::BudgetExceeded(count, budget));
    }
    let length = Ordinal::nat(n);
    let record_of = |mask: u32| -> Record {
        Record::new(length.clone(), (0..n).filter(|p| mask & (1 << p) != 0).map(Ordinal::nat))
            .expect("positions below length")
    };
    let mut states = Vec::with_capacity(count as usize);
    for coin in Coin::BOTH {
        for mask_a in 0..(1u32 << n) {
            for mask_b in 0..(1u32 << n) {
                states.push(WState::new(coin, record_of(mask_a), record_of(mask_b)).unwrap());
            }
        }
    }
    states.sort();
    let index = states.iter().enumerate().map(|(i, w)| (w.clone(), i as u32)).collect();
    Ok(LevelStates { level: n, states, index })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ord(n: u32) -> Ordinal {
        Ordinal::nat(n)
    }

    #[test]
    fn record_rejects_positions_past_length() {
        assert!(Record::new(ord(3), [ord(3)]).is_err());
        assert!(Record::new(ord(3), [ord(2)]).is_ok());
        assert!(Record::new(Ordinal::omega().succ(), [Ordinal::omega()]).is_ok());
    }

    #[test]
    fn o_lambda_examples() {
        let omega = Ordinal::omega();
        let len = omega.succ();
        let empty = Record::empty(len.clone());
        assert_eq!(o_lambda(&empty, &omega).unwrap(), Ordinal::zero());
        let at3 = Record::new(len.clone(), [ord(3)]).unwrap();
        assert_eq!(o_lambda(&at3, &omega).unwrap(), ord(4));
        // Positions at or above λ are ignored.
        let at_omega = Record::new(len.clone(), [omega.clone()]).unwrap();
        assert_eq!(o_lambda(&at_omega, &omega).unwrap(), Ordinal::zero());
        // Errors: not a limit, or exceeding the length.
        assert!(o_lambda(&empty, &ord(2)).is_err());
        let short = Record::empty(ord(2));
        assert!(o_lambda(&short, &omega).is_err());
    }

    #[test]
    fn lambda_parity_examples() {
        let omega = Ordinal::omega();
        let len = omega.succ();
        let empty = Record::empty(len.clone());
        assert_eq!(lambda_parity(&empty, &omega).unwrap(), Parity::Even);
        let at3 = Record::new(len.clone(), [ord(3)]).unwrap();
        assert_eq!(lambda_parity(&at3, &omega).unwrap(), Parity::Even);
        let at2 = Record::new(len, [ord(2)]).unwrap();
        assert_eq!(lambda_parity(&at2, &omega).unwrap(), Parity::Odd);
    }

    #[test]
    fn restrict_examples() {
        let len = Ordinal::omega().succ();
        let r_a = Record::new(len.clone(), [ord(3), Ordinal::omega()]).unwrap();
        let r_b = Record::empty(len);
        let w = WState::new(Coin::H, r_a, r_b).unwrap();
        // β = level: unchanged.
        assert_eq!(restrict(&w, w.level()).unwrap(), w);
        // β = ω: the ω position is dropped.
        let at_omega = restrict(&w, &Ordinal::omega()).unwrap();
        assert_eq!(
            at_omega.record(AB::A).support().iter().cloned().collect::<Vec<_>>(),
            vec![ord(3)]
        );
        // β = 0: only the coin remains.
        let at0 = restrict(&w, &Ordinal::zero()).unwrap();
        assert_eq!(at0, WState::level_zero(Coin::H));
        // β beyond the level errors.
        assert!(restrict(&at0, &ord(1)).is_err());
    }

    #[test]
    fn restrict_composes() {
        let states = enumerate_w(3, 1 << 20).unwrap();
        for w in states.states() {
            for beta in 0..=3u32 {
                for xi in 0..=beta {
                    let once = restrict(w, &ord(beta)).unwrap();
                    let twice = restrict(&once, &ord(xi)).unwrap();
                    assert_eq!(twice, restrict(w, &ord(xi)).unwrap());
                }
            }
        }
    }

    #[test]
    fn enumerate_counts_and_projection_onto() {
        assert_eq!(enumerate_w(0, 1 << 20).unwrap().len(), 2);
        assert_eq!(enumerate_w(1, 1 << 20).unwrap().len(), 8);
        assert_eq!(enumerate_w(2, 1 << 20).unwrap().len(), 32);
        // Restriction maps onto the lower level: image counts match.
        let w2 = enumerate_w(2, 1 << 20).unwrap();
        let w1 = enumerate_w(1, 1 << 20).unwrap();
        let image: std::collections::BTreeSet<WState> =
            w2.states().iter().map(|w| restrict(w, &ord(1)).unwrap()).collect();
        assert_eq!(image.len() as u32, w1.len());
        // Budget errors.
        assert!(matches!(enumerate_w(5, 100), Err(SoberDrunkError::BudgetExceeded(2048, 100))));
    }

    #[test]
    fn names_are_deterministic_identifiers() {
        let states = enumerate_w(2, 1 << 20).unwrap();
        let names: Vec<String> = states.states().iter().map(state_name).collect();
        let mut sorted = names.clone();
        sorted.dedup();
        assert_eq!(sorted.len(), names.len());
        let w = states.state(0);
        assert_eq!(state_name(w), format!("{}_a00_b00", w.coin().name()));
    }
}
