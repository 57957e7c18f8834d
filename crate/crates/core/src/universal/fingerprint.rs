use std::collections::BTreeMap;

use sha2::{Digest, Sha256};

use crate::rat;
use crate::set::ElemSet;
use crate::typespace::{validate, TypeSpace};

use super::UniversalError;

/// A canonical, space-independent description token at a bounded depth.
///
/// A depth-0 token encodes the state's nature point. A depth-(d+1) token
/// encodes the pair of the depth-d token and, per player, the map from
/// depth-d tokens to the believed mass of the corresponding state class
/// (zero-mass classes omitted). The recursive structure is serialized
/// canonically and digested, so equal tokens across different spaces mean
/// equal bounded-depth description data, and they print as stable text.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Token(String);

impl Token {
    fn digest(payload: &str) -> Token {
        let mut hasher = Sha256::new();
        hasher.update(payload.as_bytes());
        let bytes = hasher.finalize();
        let mut hex = String::with_capacity(64);
        for b in bytes {
            hex.push_str(&format!("{b:02x}"));
        }
        Token(hex)
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl std::fmt::Display for Token {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Per-depth description tokens for every state of one space.
#[derive(Debug, Clone)]
pub struct FingerprintTable {
    /// `tokens[d][m]` is state m's token at depth d.
    tokens: Vec<Vec<Token>>,
}

impl FingerprintTable {
    pub fn max_depth(&self) -> usize {
        self.tokens.len() - 1
    }

    pub fn token(&self, depth: usize, state: u32) -> &Token {
        &self.tokens[depth][state as usize]
    }

    pub fn tokens_at(&self, depth: usize) -> &[Token] {
        &self.tokens[depth]
    }

    /// The state classes sharing one token at `depth`, keyed by token.
    pub fn classes_at(&self, depth: usize, universe: u32) -> BTreeMap<Token, ElemSet> {
        let mut classes: BTreeMap<Token, ElemSet> = BTreeMap::new();
        for (m, token) in self.tokens[depth].iter().enumerate() {
            classes
                .entry(token.clone())
                .or_insert_with(|| ElemSet::empty(universe))
                .insert(m as u32);
        }
        classes
    }

    /// True iff all states carry pairwise distinct tokens at `depth`.
    pub fn injective_at(&self, depth: usize) -> bool {
        let mut seen = std::collections::BTreeSet::new();
        self.tokens[depth].iter().all(|t| seen.insert(t))
    }
}

/// Computes every state's token up to `max_depth`.
pub fn fingerprint_table(
    space: &TypeSpace,
    max_depth: usize,
) -> Result<FingerprintTable, UniversalError> {
    if !validate(space).is_valid() {
        return Err(UniversalError::InvalidSpace);
    }
    let n = space.state_count();
    let mut tokens: Vec<Vec<Token>> = Vec::with_capacity(max_depth + 1);
    let depth0: Vec<Token> = (0..n)
        .map(|m| {
            let point = &space.nature().points()[space.theta(m) as usize];
            Token::digest(&format!("n({point})"))
        })
        .collect();
    tokens.push(depth0);
    for _ in 0..max_depth {
        let prev = tokens.last().unwrap();
        // Classes of the previous depth, as events.
        let mut classes: BTreeMap<&Token, ElemSet> = BTreeMap::new();
        for (m, t) in prev.iter().enumerate() {
            classes.entry(t).or_insert_with(|| ElemSet::empty(n)).insert(m as u32);
        }
        let mut next = Vec::with_capacity(n as usize);
        for m in 0..n {
            let mut payload = format!("t({}", prev[m as usize]);
            for player in space.players() {
                let measure = space.belief(player, m).expect("player known");
                payload.push_str(&format!(";{player}:"));
                for (token, class) in &classes {
                    let mass = measure.measure_of(class).expect("classes are members");
                    if mass != rat::zero() {
                        payload.push_str(&format!("{token}={},", rat::to_text(&mass)));
                    }
                }
            }
            payload.push(')');
            next.push(Token::digest(&payload));
        }
        tokens.push(next);
    }
    Ok(FingerprintTable { tokens })
}

/// The canonical description token of one state at depth `d`.
pub fn desc_fingerprint(space: &TypeSpace, state: u32, d: usize) -> Result<Token, UniversalError> {
    let table = fingerprint_table(space, d)?;
    Ok(table.token(d, state).clone())
}
