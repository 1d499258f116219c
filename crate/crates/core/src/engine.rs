//! Exact nilpotency of `Z(X₀)` and the certificates that witness it.
//!
//! # Decision procedure
//!
//! Write a composite of pullbacks `g_d ∘ ⋯ ∘ g_1` applied to a generator `x_k`, where
//! every `g_j = Σ c_{j,m,I} f_{m,I}` is a combination of basis maps. Expanding
//! multiplicatively, each surviving term of the result corresponds to a choice, level
//! by level, of one factor set `I` for every generator currently present. Because
//! monomials are square-free, the factor sets chosen inside one level must be
//! pairwise disjoint, and the sequence of index sets this produces is a
//! [`RefinementTree`] of depth `d` rooted at `k`.
//!
//! Viewing the `c_{j,m,I}` as indeterminates, a tree contributes the coefficient
//! monomial `± ∏_j ∏_{m ∈ S_j} c_{j,m,I_m}`, and the tree can be read back from that
//! monomial one level at a time. Distinct trees therefore never cancel, so some
//! `d`-fold composite is nonzero exactly when a depth-`d` tree exists. The level maps
//! `g_j = Σ_{m ∈ S_j} f_{m,I_m}` of one tree realize it with a single surviving
//! term of coefficient `±1`. Hence `t(X₀) = 1 + max depth`.
//!
//! [`brute_force_nilpotency`] and [`randomized_witness`] are independent cross-checks
//! of that equality; they never feed the decision.

use std::collections::{HashMap, HashSet};
use std::ops::ControlFlow;
use std::rc::Rc;

use num_traits::{One, Zero};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::EngineError;
use crate::exterior::{format_coeff, parse_coeff, AlgebraElement, Coeff, DegreeSequence, Monomial};
use crate::selfmap::{
    all_basis_maps, compose_all, compose_endos, for_each_factor_set, make_basis_map,
    sample_generic_endo, sum_of_basis_maps, BasisMapId, CohomEndo,
};

/// Default bound on memoized search entries.
pub const DEFAULT_MEMO_CAP: usize = 10_000_000;

/// Cap on basis maps accepted by [`brute_force_nilpotency`].
pub const BRUTE_FORCE_MAX_BASIS: usize = 12;

/// Cap on the number of endomorphisms enumerated by [`brute_force_nilpotency`].
pub const BRUTE_FORCE_MAX_ENDOS: usize = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub memo_cap: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            memo_cap: DEFAULT_MEMO_CAP,
        }
    }
}

/// Index sets `S_0 = {root}, S_1, …, S_d`, each the disjoint union of one factor set per
/// member of the previous level.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefinementTree {
    pub root: u32,
    pub levels: Vec<Vec<u32>>,
}

impl RefinementTree {
    pub fn depth(&self) -> usize {
        self.levels.len().saturating_sub(1)
    }

    pub fn leaves(&self) -> &[u32] {
        self.levels.last().map_or(&[], Vec::as_slice)
    }

    /// Checks shape and degree conservation: every level sums to the root degree.
    pub fn validate(&self, ds: &DegreeSequence) -> Result<(), EngineError> {
        let fail = |msg: String| Err(EngineError::Replay(msg));
        if self.levels.first() != Some(&vec![self.root]) {
            return fail("first level must be the root alone".into());
        }
        let root_degree = ds.check_index(self.root)?;
        for (j, level) in self.levels.iter().enumerate() {
            if !level.windows(2).all(|w| w[0] < w[1]) {
                return fail(format!("level {j} is not strictly increasing"));
            }
            let mut sum = 0u64;
            for &i in level {
                sum += u64::from(ds.check_index(i)?);
            }
            if sum != u64::from(root_degree) {
                return fail(format!(
                    "level {j} has degree {sum}, root has {root_degree}"
                ));
            }
        }
        Ok(())
    }
}

/// A deepest tree together with the basis map chosen for each member of each level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeepestTree {
    pub tree: RefinementTree,
    /// `steps[j]` expands `tree.levels[j]` member by member.
    pub steps: Vec<Vec<BasisMapId>>,
}

impl DeepestTree {
    /// The level maps `g_j = Σ_{m ∈ S_j} f_{m, I_m}`, in application order.
    pub fn level_endos(&self, ds: &DegreeSequence) -> Result<Vec<CohomEndo>, EngineError> {
        self.steps
            .iter()
            .map(|step| sum_of_basis_maps(ds, step).map_err(EngineError::from))
            .collect()
    }
}

#[derive(Debug, Clone, Copy)]
struct Best {
    depth: u32,
}

struct Search<'a> {
    ds: &'a DegreeSequence,
    cap: usize,
    prefix: Vec<u64>,
    expansions: Vec<Option<Rc<Vec<Vec<u32>>>>>,
    expansion_entries: usize,
    single: Vec<Option<u32>>,
    memo: HashMap<Vec<u32>, Best>,
    choices: HashMap<Vec<u32>, Rc<Vec<Vec<u32>>>>,
}

struct Assign<'s> {
    set: &'s [u32],
    used: Vec<bool>,
    chosen: Vec<Vec<u32>>,
    best_depth: u32,
    best_choice: Option<Vec<Vec<u32>>>,
    upper: u32,
}

impl<'a> Search<'a> {
    fn new(ds: &'a DegreeSequence, cap: usize) -> Self {
        let mut prefix = vec![0u64];
        for &d in ds.degrees() {
            prefix.push(prefix.last().unwrap() + u64::from(d));
        }
        Self {
            ds,
            cap,
            prefix,
            expansions: vec![None; ds.rank()],
            expansion_entries: 0,
            single: vec![None; ds.rank()],
            memo: HashMap::new(),
            choices: HashMap::new(),
        }
    }

    fn check_cap(&self) -> Result<(), EngineError> {
        if self.memo.len() + self.expansion_entries > self.cap {
            return Err(EngineError::MemoCapExceeded { cap: self.cap });
        }
        Ok(())
    }

    fn expansions(&mut self, k: u32) -> Result<Rc<Vec<Vec<u32>>>, EngineError> {
        if let Some(e) = &self.expansions[k as usize - 1] {
            return Ok(Rc::clone(e));
        }
        let degree = self.ds.degree(k).expect("index in range");
        let room = self.cap.saturating_sub(self.memo.len() + self.expansion_entries);
        let mut sets = Vec::new();
        let flow = for_each_factor_set(self.ds, degree, |set| {
            if sets.len() >= room {
                return ControlFlow::Break(());
            }
            sets.push(set.to_vec());
            ControlFlow::Continue(())
        });
        if flow.is_break() {
            return Err(EngineError::MemoCapExceeded { cap: self.cap });
        }
        self.expansion_entries += sets.len();
        let sets = Rc::new(sets);
        self.expansions[k as usize - 1] = Some(Rc::clone(&sets));
        Ok(sets)
    }

    /// Largest `d` such that `|S|·3^d` distinct generators could have total degree `deg S`.
    fn leaf_bound(&self, set: &[u32]) -> u32 {
        let total: u64 = set
            .iter()
            .map(|&i| u64::from(self.ds.degree(i).unwrap()))
            .sum();
        let r = self.ds.rank() as u64;
        let mut leaves = set.len() as u64;
        let mut d = 0;
        loop {
            leaves *= 3;
            if leaves > r || self.prefix[leaves as usize] > total {
                return d;
            }
            d += 1;
        }
    }

    fn single_depth(&mut self, k: u32) -> Result<u32, EngineError> {
        if let Some(d) = self.single[k as usize - 1] {
            return Ok(d);
        }
        let d = self.best(&[k])?;
        self.single[k as usize - 1] = Some(d);
        Ok(d)
    }

    fn best(&mut self, set: &[u32]) -> Result<u32, EngineError> {
        if let Some(b) = self.memo.get(set) {
            return Ok(b.depth);
        }
        let mut upper = self.leaf_bound(set);
        for &m in set {
            if upper == 0 {
                break;
            }
            if self.expansions(m)?.is_empty() {
                upper = 0;
            } else if set.len() > 1 {
                upper = upper.min(self.single_depth(m)?);
            }
        }
        let mut state = Assign {
            set,
            used: vec![false; self.ds.rank() + 1],
            chosen: Vec::with_capacity(set.len()),
            best_depth: 0,
            best_choice: None,
            upper,
        };
        if upper > 0 {
            let _ = self.assign(&mut state, 0, u32::MAX)?;
        }
        self.memo.insert(
            set.to_vec(),
            Best {
                depth: state.best_depth,
            },
        );
        if let Some(choice) = state.best_choice {
            self.choices.insert(set.to_vec(), Rc::new(choice));
        }
        self.check_cap()?;
        Ok(state.best_depth)
    }

    fn assign(
        &mut self,
        st: &mut Assign<'_>,
        pos: usize,
        cap_here: u32,
    ) -> Result<ControlFlow<()>, EngineError> {
        if pos == st.set.len() {
            let mut next: Vec<u32> = st.chosen.iter().flatten().copied().collect();
            next.sort_unstable();
            let d = 1 + self.best(&next)?;
            if d > st.best_depth {
                st.best_depth = d;
                st.best_choice = Some(st.chosen.clone());
            }
            return Ok(if st.best_depth >= st.upper {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            });
        }
        let options = self.expansions(st.set[pos])?;
        for factors in options.iter() {
            if factors.iter().any(|&f| st.used[f as usize]) {
                continue;
            }
            let mut reach = cap_here;
            for &f in factors {
                reach = reach.min(self.single_depth(f)?);
            }
            if st.best_choice.is_some() && reach.saturating_add(1) <= st.best_depth {
                continue;
            }
            for &f in factors {
                st.used[f as usize] = true;
            }
            st.chosen.push(factors.clone());
            let flow = self.assign(st, pos + 1, reach)?;
            st.chosen.pop();
            for &f in factors {
                st.used[f as usize] = false;
            }
            if flow.is_break() {
                return Ok(flow);
            }
        }
        Ok(ControlFlow::Continue(()))
    }

    fn reconstruct(&self, root: u32) -> DeepestTree {
        let mut levels = vec![vec![root]];
        let mut steps = Vec::new();
        loop {
            let current = levels.last().unwrap();
            let Some(choice) = self.choices.get(current) else {
                break;
            };
            let step: Vec<BasisMapId> = current
                .iter()
                .zip(choice.iter())
                .map(|(&target, factors)| BasisMapId {
                    target,
                    factors: factors.clone(),
                })
                .collect();
            let mut next: Vec<u32> = choice.iter().flatten().copied().collect();
            next.sort_unstable();
            steps.push(step);
            levels.push(next);
        }
        DeepestTree {
            tree: RefinementTree { root, levels },
            steps,
        }
    }
}

/// Maximum depth of a refinement tree over `ds`, with the deepest tree found.
///
/// Roots are tried in index order and factor sets in lexicographic order; the first
/// tree reaching the maximum depth is reported.
pub fn max_refinement_depth(
    ds: &DegreeSequence,
) -> Result<(u32, Option<DeepestTree>), EngineError> {
    max_refinement_depth_with(ds, &SearchConfig::default())
}

pub fn max_refinement_depth_with(
    ds: &DegreeSequence,
    config: &SearchConfig,
) -> Result<(u32, Option<DeepestTree>), EngineError> {
    let mut search = Search::new(ds, config.memo_cap);
    let mut best: Option<(u32, u32)> = None;
    for k in ds.indices() {
        let d = search.single_depth(k)?;
        if d > 0 && best.is_none_or(|(bd, _)| d > bd) {
            best = Some((d, k));
        }
    }
    Ok(match best {
        Some((d, root)) => (d, Some(search.reconstruct(root))),
        None => (0, None),
    })
}

/// A witness that a composite of `endos.len()` elements of `Z(X₀)` is nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainCertificate {
    pub degrees: DegreeSequence,
    /// Pullbacks in application order: `endos[0]` acts first.
    pub endos: Vec<CohomEndo>,
    pub witness_generator: u32,
    pub witness_monomial: Monomial,
    pub witness_coefficient: Coeff,
    pub tree: Option<RefinementTree>,
}

impl ChainCertificate {
    /// Lower bound on the nilpotency this certificate proves.
    pub fn certified_t(&self) -> u32 {
        self.endos.len() as u32 + 1
    }

    /// Builds the certificate for `endos` by composing them and reading off the
    /// coefficient of `monomial` in the image of `generator`.
    pub fn from_composite(
        ds: &DegreeSequence,
        endos: Vec<CohomEndo>,
        generator: u32,
        monomial: Monomial,
        tree: Option<RefinementTree>,
    ) -> Result<Self, EngineError> {
        let composite = compose_all(ds, &endos)?;
        let coefficient = composite
            .image(generator)
            .map(|img| img.coefficient(&monomial))
            .unwrap_or_else(Coeff::zero);
        let cert = Self {
            degrees: ds.clone(),
            endos,
            witness_generator: generator,
            witness_monomial: monomial,
            witness_coefficient: coefficient,
            tree,
        };
        cert.replay()?;
        Ok(cert)
    }

    /// Recomposes the endomorphisms and checks the recorded witness term.
    pub fn replay(&self) -> Result<(), EngineError> {
        let fail = |msg: &str| Err(EngineError::Replay(msg.to_string()));
        if self.endos.is_empty() {
            return fail("no endomorphisms");
        }
        for e in &self.endos {
            if e.degrees() != &self.degrees {
                return fail("endomorphism over a different degree sequence");
            }
            if !e.is_decomposable() || !e.is_degree_preserving() {
                return fail("endomorphism is not in Z(X0)");
            }
        }
        if self.witness_coefficient.is_zero() {
            return fail("witness coefficient is zero");
        }
        let degree = self.degrees.check_index(self.witness_generator)?;
        if self.witness_monomial.degree() != degree {
            return fail("witness monomial has the wrong degree");
        }
        let composite = compose_all(&self.degrees, &self.endos)?;
        let got = composite
            .image(self.witness_generator)
            .map(|img| img.coefficient(&self.witness_monomial))
            .unwrap_or_else(Coeff::zero);
        if got != self.witness_coefficient {
            return fail("recorded witness term does not match the composite");
        }
        if let Some(tree) = &self.tree {
            self.check_tree(tree)?;
        }
        Ok(())
    }

    fn check_tree(&self, tree: &RefinementTree) -> Result<(), EngineError> {
        let fail = |msg: &str| Err(EngineError::Replay(msg.to_string()));
        tree.validate(&self.degrees)?;
        if tree.root != self.witness_generator || tree.depth() != self.endos.len() {
            return fail("tree does not match the chain");
        }
        if tree.leaves() != self.witness_monomial.indices() {
            return fail("tree leaves differ from the witness monomial");
        }
        // each level must be carried onto the next by one monomial per member
        for (j, endo) in self.endos.iter().enumerate() {
            let mut next = Vec::new();
            for &m in &tree.levels[j] {
                let Some(img) = endo.image(m) else {
                    return fail("tree member has zero image");
                };
                if img.num_terms() != 1 {
                    return fail("level map is not a single basis map per member");
                }
                let (mono, _) = img.terms().next().unwrap();
                next.extend_from_slice(mono.indices());
            }
            next.sort_unstable();
            if next != tree.levels[j + 1] {
                return fail("level map does not produce the next tree level");
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct WitnessJson {
    generator: u32,
    coef: String,
    monomial: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct CertificateJson {
    degrees: DegreeSequence,
    t: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tree: Option<RefinementTree>,
    witness: WitnessJson,
    endos: Vec<CohomEndo>,
}

impl Serialize for ChainCertificate {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        CertificateJson {
            degrees: self.degrees.clone(),
            t: self.certified_t(),
            tree: self.tree.clone(),
            witness: WitnessJson {
                generator: self.witness_generator,
                coef: format_coeff(&self.witness_coefficient),
                monomial: self.witness_monomial.indices().to_vec(),
            },
            endos: self.endos.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ChainCertificate {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = CertificateJson::deserialize(deserializer)?;
        let (sign, monomial) = raw
            .degrees
            .monomial(&raw.witness.monomial)
            .map_err(D::Error::custom)?
            .ok_or_else(|| D::Error::custom("witness monomial repeats a generator"))?;
        if sign.to_coeff() != Coeff::one() {
            return Err(D::Error::custom("witness monomial must be in canonical order"));
        }
        if raw.t as usize != raw.endos.len() + 1 {
            return Err(D::Error::custom("t must equal the chain length plus one"));
        }
        Ok(Self {
            degrees: raw.degrees,
            endos: raw.endos,
            witness_generator: raw.witness.generator,
            witness_monomial: monomial,
            witness_coefficient: parse_coeff(&raw.witness.coef).map_err(D::Error::custom)?,
            tree: raw.tree,
        })
    }
}

/// Result of [`exact_nilpotency`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NilpotencyReport {
    pub t: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<ChainCertificate>,
}

/// `t(X₀)`: one more than the deepest refinement tree, with a certificate replaying
/// the deepest tree's level maps. `Z(X₀) = 0` gives `t = 1` and no certificate.
pub fn exact_nilpotency(ds: &DegreeSequence) -> Result<NilpotencyReport, EngineError> {
    exact_nilpotency_with(ds, &SearchConfig::default())
}

pub fn exact_nilpotency_with(
    ds: &DegreeSequence,
    config: &SearchConfig,
) -> Result<NilpotencyReport, EngineError> {
    let (depth, deepest) = max_refinement_depth_with(ds, config)?;
    let certificate = match deepest {
        None => None,
        Some(deep) => Some(certificate_for_tree(ds, &deep)?),
    };
    Ok(NilpotencyReport {
        t: depth + 1,
        certificate,
    })
}

/// Certificate whose endomorphisms are the level maps of `deep`.
pub fn certificate_for_tree(
    ds: &DegreeSequence,
    deep: &DeepestTree,
) -> Result<ChainCertificate, EngineError> {
    let endos = deep.level_endos(ds)?;
    let (_, leaves) = ds
        .monomial(deep.tree.leaves())?
        .ok_or_else(|| EngineError::Replay("tree leaves repeat a generator".into()))?;
    ChainCertificate::from_composite(ds, endos, deep.tree.root, leaves, Some(deep.tree.clone()))
}

/// Number of sampling attempts made by [`randomized_witness`].
pub const RANDOM_ATTEMPTS: usize = 3;

/// Composes `t` generic endomorphisms and returns a certificate if the composite is
/// nonzero. Up to three independent draws are tried. A returned certificate is a proof;
/// `None` is only evidence that every `t`-fold composite vanishes.
pub fn randomized_witness(
    ds: &DegreeSequence,
    t: u32,
    seed: u64,
) -> Result<Option<ChainCertificate>, EngineError> {
    if t == 0 {
        return Err(EngineError::EmptyChain);
    }
    let mut seeds = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_ATTEMPTS {
        let endos: Vec<CohomEndo> = (0..t)
            .map(|_| sample_generic_endo(ds, seeds.next_u64()))
            .collect();
        let composite = compose_all(ds, &endos)?;
        let witness = composite.images().next().map(|(k, img)| {
            let (m, c) = img.terms().next().expect("stored images are nonzero");
            (k, m.clone(), c.clone())
        });
        if let Some((k, m, c)) = witness {
            return Ok(Some(ChainCertificate {
                degrees: ds.clone(),
                endos,
                witness_generator: k,
                witness_monomial: m,
                witness_coefficient: c,
                tree: None,
            }));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BruteForceOutcome {
    /// Smallest `t` with every `t`-fold composite zero, or `max_chain + 1` when capped.
    pub t: u32,
    /// True when composites of length `max_chain` were still nonzero.
    pub capped: bool,
}

/// Enumerates every endomorphism `Σ c_i f_i` with `c_i` drawn from `coeffs` and every
/// composite up to length `max_chain`.
pub fn brute_force_nilpotency(
    ds: &DegreeSequence,
    coeffs: &[i64],
    max_chain: u32,
) -> Result<BruteForceOutcome, EngineError> {
    if max_chain == 0 {
        return Err(EngineError::EmptyChain);
    }
    let basis = all_basis_maps(ds);
    if basis.len() > BRUTE_FORCE_MAX_BASIS {
        return Err(EngineError::Guard(format!(
            "{} basis maps exceed the limit of {BRUTE_FORCE_MAX_BASIS}",
            basis.len()
        )));
    }
    let mut values: Vec<i64> = coeffs.to_vec();
    values.sort_unstable();
    values.dedup();
    let count = (values.len() as u128).pow(basis.len() as u32);
    if count > BRUTE_FORCE_MAX_ENDOS as u128 {
        return Err(EngineError::Guard(format!(
            "{count} endomorphisms exceed the limit of {BRUTE_FORCE_MAX_ENDOS}"
        )));
    }
    let basis_endos: Vec<CohomEndo> = basis
        .iter()
        .map(|id| make_basis_map(ds, id))
        .collect::<Result<_, _>>()?;

    let mut generators: HashSet<CohomEndo> = HashSet::new();
    let mut digits = vec![0usize; basis.len()];
    for _ in 0..count {
        let mut e = CohomEndo::zero(ds);
        for (f, &d) in basis_endos.iter().zip(&digits) {
            let c = values[d];
            if c != 0 {
                e = e.add(&f.scale(&Coeff::from_integer(c.into())))?;
            }
        }
        if !e.is_zero() {
            generators.insert(e);
        }
        for d in digits.iter_mut() {
            *d += 1;
            if *d < values.len() {
                break;
            }
            *d = 0;
        }
    }
    if generators.is_empty() {
        return Ok(BruteForceOutcome { t: 1, capped: false });
    }
    let generators: Vec<CohomEndo> = generators.into_iter().collect();
    let mut products: HashSet<CohomEndo> = generators.iter().cloned().collect();
    for k in 2..=max_chain {
        let mut next = HashSet::new();
        for p in &products {
            for g in &generators {
                let c = compose_endos(g, p)?;
                if !c.is_zero() {
                    next.insert(c);
                }
            }
        }
        if next.is_empty() {
            return Ok(BruteForceOutcome { t: k, capped: false });
        }
        products = next;
    }
    Ok(BruteForceOutcome {
        t: max_chain + 1,
        capped: true,
    })
}

/// Degree sequence shapes with a closed-form tree depth.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyShape {
    /// `3, 5, 7, …, max`
    AllOddFrom3,
    /// `3, 7, 11, …, max`
    Mod4Equal3,
}

impl FamilyShape {
    /// Fewest factors in one expansion: 3, or 5 when all degrees are `3 (mod 4)`.
    pub fn arity(self) -> u64 {
        match self {
            FamilyShape::AllOddFrom3 => 3,
            FamilyShape::Mod4Equal3 => 5,
        }
    }

    /// Sum of the smallest `arity^d` degrees of the sequence.
    pub fn minimal_top_degree(self, d: u32) -> Option<u64> {
        let w = self.arity().checked_pow(d)?;
        match self {
            // Σ_{i=1}^{w} (2i+1) = w² + 2w
            FamilyShape::AllOddFrom3 => w.checked_mul(w)?.checked_add(2 * w),
            // Σ_{i=1}^{w} (4i−1) = 2w² + w
            FamilyShape::Mod4Equal3 => w.checked_mul(w)?.checked_mul(2)?.checked_add(w),
        }
    }
}

/// `max{d ≥ 0 : minimal_top_degree(d) ≤ max_degree}`.
pub fn closed_form_depth(shape: FamilyShape, max_degree: u64) -> u32 {
    let mut d = 0;
    while shape
        .minimal_top_degree(d + 1)
        .is_some_and(|top| top <= max_degree)
    {
        d += 1;
    }
    d
}

/// Nonzero image of some generator, or `None`.
pub fn first_nonzero_image(e: &CohomEndo) -> Option<(u32, &AlgebraElement)> {
    e.images().next()
}
