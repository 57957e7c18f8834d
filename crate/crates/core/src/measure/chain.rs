use std::collections::BTreeMap;
use std::sync::Arc;

use super::{preimage, FAMeasure, MeasureError, SetField};

/// A finite chain of measured spaces `M^0, …, M^{k-1}` below a top space
/// `M^k`, together with the projections between all pairs of levels.
///
/// `projections[(lo, hi)]` maps each element of level `hi` down to level
/// `lo`; the index `k = levels.len()` denotes the top space, which carries
/// no measure of its own.
pub struct MeasureChain {
    pub levels: Vec<FAMeasure>,
    pub top_universe: u32,
    pub projections: BTreeMap<(usize, usize), Vec<u32>>,
}

impl MeasureChain {
    fn universe_of(&self, level: usize) -> u32 {
        if level == self.levels.len() {
            self.top_universe
        } else {
            self.levels[level].field().universe_size()
        }
    }

    fn projection(&self, lo: usize, hi: usize) -> Result<&Vec<u32>, MeasureError> {
        self.projections
            .get(&(lo, hi))
            .ok_or_else(|| MeasureError::BadChain(format!("missing projection {hi} -> {lo}")))
    }
}

/// Glues a consistent chain of measures into a single finitely additive
/// probability measure on the union field over the top space.
///
/// Preconditions, each checked: every projection is onto; the projections
/// commute (`f_lo,mid ∘ f_mid,hi = f_lo,hi`); every projection between
/// measured levels is measurable; and the marginals are consistent
/// (`μ_hi(f⁻¹(E)) = μ_lo(E)` for members E of the lower field). The result
/// restricted to any level β equals μ_β.
pub fn glue_chain(chain: &MeasureChain) -> Result<FAMeasure, MeasureError> {
    let k = chain.levels.len();
    if k == 0 {
        return Err(MeasureError::BadChain("no measured levels".into()));
    }
    if chain.top_universe == 0 {
        return Err(MeasureError::BadChain("empty top space".into()));
    }
    // Shape, totality and surjectivity of every projection.
    for lo in 0..=k {
        for hi in (lo + 1)..=k {
            let f = chain.projection(lo, hi)?;
            let (src, dst) = (chain.universe_of(hi), chain.universe_of(lo));
            if f.len() != src as usize || f.iter().any(|&v| v >= dst) {
                return Err(MeasureError::BadChain(format!("projection {hi} -> {lo} ill-formed")));
            }
            let mut hit = vec![false; dst as usize];
            for &v in f {
                hit[v as usize] = true;
            }
            if hit.iter().any(|h| !h) {
                return Err(MeasureError::BadChain(format!("projection {hi} -> {lo} not onto")));
            }
        }
    }
    // Commutation of all composable triples.
    for lo in 0..=k {
        for mid in (lo + 1)..=k {
            for hi in (mid + 1)..=k {
                let f_lo_mid = chain.projection(lo, mid)?;
                let f_mid_hi = chain.projection(mid, hi)?;
                let f_lo_hi = chain.projection(lo, hi)?;
                let composed: Vec<u32> =
                    f_mid_hi.iter().map(|&m| f_lo_mid[m as usize]).collect();
                if composed != *f_lo_hi {
                    return Err(MeasureError::BadChain(format!(
                        "projections {hi} -> {mid} -> {lo} do not commute with {hi} -> {lo}"
                    )));
                }
            }
        }
    }
    // Measurability between measured levels and marginal consistency.
    for lo in 0..k {
        for hi in (lo + 1)..k {
            let f = chain.projection(lo, hi)?;
            let (mu_lo, mu_hi) = (&chain.levels[lo], &chain.levels[hi]);
            for atom in mu_lo.field().atoms() {
                let pre = preimage(f, chain.universe_of(hi), atom);
                let Ok(mass) = mu_hi.measure_of(&pre) else {
                    return Err(MeasureError::BadChain(format!(
                        "projection {hi} -> {lo} not measurable"
                    )));
                };
                if mass != mu_lo.measure_of(atom)? {
                    return Err(MeasureError::BadChain(format!(
                        "inconsistent marginals between levels {lo} and {hi}"
                    )));
                }
            }
        }
    }
    // The union field over the top space. The chain is finite and the
    // preimage fields are nested, so the union field is the preimage of the
    // highest measured level's field.
    let top_proj = chain.projection(k - 1, k)?;
    let top_measure = &chain.levels[k - 1];
    let atoms: Vec<_> = top_measure
        .field()
        .atoms()
        .iter()
        .map(|a| preimage(top_proj, chain.top_universe, a))
        .collect();
    let field = Arc::new(SetField::from_atoms(chain.top_universe, atoms)?);
    let mut weights = Vec::with_capacity(field.atom_count());
    for atom in field.atoms() {
        // Atom order may change under sorting; recover the source atom.
        let src_atom = top_measure.field().atom_index_of(top_proj[atom.min_elem().unwrap() as usize]);
        weights.push(top_measure.atom_weight(src_atom).clone());
    }
    let glued = FAMeasure::new(field, weights)?;
    // Restriction identity at every measured level.
    for (beta, mu) in chain.levels.iter().enumerate() {
        let f = chain.projection(beta, k)?;
        for atom in mu.field().atoms() {
            let pre = preimage(f, chain.top_universe, atom);
            if glued.measure_of(&pre)? != mu.measure_of(atom)? {
                return Err(MeasureError::BadChain(format!(
                    "glued measure does not restrict to level {beta}"
                )));
            }
        }
    }
    Ok(glued)
}
