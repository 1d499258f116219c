//! Rationally trivial self-maps as cohomology endomorphisms.
//!
//! A self-map of the rationalization is determined by its pullback on the exterior
//! algebra, and it lies in `Z(X₀)` exactly when every generator is sent to a
//! decomposable element of the same degree. [`CohomEndo`] stores that pullback.
//!
//! Order convention: for space-level maps `a`, `b`,
//! `pullback(a ∘ b) = compose_endos(pullback(b), pullback(a))`.
//! `compose_endos(outer, inner)` is the cohomology map `x ↦ outer(inner(x))`.
//!
//! Images are allowed to mix decomposable monomials of different lengths in one
//! degree (e.g. a triple and a quintuple product summed together).

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::ops::ControlFlow;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::AlgebraError;
use crate::exterior::{
    add_elements, mul_elements, scale_element, AlgebraElement, Coeff, DegreeSequence, Monomial,
    TermJson,
};

/// Names the basis map `f_{k, I}`: generator `target` goes to `∏_{i ∈ I} x_i`, all others to zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BasisMapId {
    pub target: u32,
    pub factors: Vec<u32>,
}

impl fmt::Display for BasisMapId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f{:?}->{}", self.factors, self.target)
    }
}

/// Visits every strictly increasing index tuple of length ≥ 2 whose degrees sum to
/// `degree`, in lexicographic order. The visitor may stop the walk early.
pub fn for_each_factor_set<F>(ds: &DegreeSequence, degree: u32, mut visit: F) -> ControlFlow<()>
where
    F: FnMut(&[u32]) -> ControlFlow<()>,
{
    fn walk<F>(
        degrees: &[u32],
        start: usize,
        remaining: u32,
        picked: &mut Vec<u32>,
        visit: &mut F,
    ) -> ControlFlow<()>
    where
        F: FnMut(&[u32]) -> ControlFlow<()>,
    {
        if remaining == 0 {
            if picked.len() >= 2 {
                return visit(picked);
            }
            return ControlFlow::Continue(());
        }
        for i in start..degrees.len() {
            let d = degrees[i];
            if d > remaining {
                break;
            }
            // a single factor equal to the whole degree is not decomposable
            if picked.is_empty() && d == remaining {
                continue;
            }
            picked.push(i as u32 + 1);
            walk(degrees, i + 1, remaining - d, picked, visit)?;
            picked.pop();
        }
        ControlFlow::Continue(())
    }
    if degree == 0 {
        return ControlFlow::Continue(());
    }
    walk(ds.degrees(), 0, degree, &mut Vec::new(), &mut visit)
}

/// All basis maps targeting generator `k`, in lexicographic order of factor sets.
pub fn enumerate_decomposable_sets(
    ds: &DegreeSequence,
    k: u32,
) -> Result<Vec<BasisMapId>, AlgebraError> {
    let degree = ds.check_index(k)?;
    let mut out = Vec::new();
    let _ = for_each_factor_set(ds, degree, |set| {
        debug_assert!(set.len() % 2 == 1 && set.len() >= 3);
        out.push(BasisMapId {
            target: k,
            factors: set.to_vec(),
        });
        ControlFlow::Continue(())
    });
    Ok(out)
}

/// Every basis map over `ds`, grouped by target in index order.
pub fn all_basis_maps(ds: &DegreeSequence) -> Vec<BasisMapId> {
    ds.indices()
        .flat_map(|k| enumerate_decomposable_sets(ds, k).unwrap_or_default())
        .collect()
}

/// Rank of `Z(X₀)` as a rational vector space: the number of basis maps.
pub fn zmodule_dimension(ds: &DegreeSequence) -> usize {
    ds.indices()
        .map(|k| enumerate_decomposable_sets(ds, k).map_or(0, |v| v.len()))
        .sum()
}

/// A degree-preserving algebra endomorphism of `Λ_Q(x_1, …, x_r)`, given by generator images.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CohomEndo {
    degrees: DegreeSequence,
    // absent key = zero image; zero images are never stored
    images: BTreeMap<u32, AlgebraElement>,
}

impl CohomEndo {
    pub fn zero(ds: &DegreeSequence) -> Self {
        Self {
            degrees: ds.clone(),
            images: BTreeMap::new(),
        }
    }

    /// Builds an endomorphism, checking indices and that each image is homogeneous
    /// of its generator's degree.
    pub fn from_images(
        ds: &DegreeSequence,
        images: impl IntoIterator<Item = (u32, AlgebraElement)>,
    ) -> Result<Self, AlgebraError> {
        let mut out = Self::zero(ds);
        for (k, img) in images {
            let degree = ds.check_index(k)?;
            if !img.is_homogeneous_of(degree) {
                return Err(AlgebraError::Inhomogeneous { index: k, degree });
            }
            let sum = match out.images.remove(&k) {
                Some(prev) => add_elements(&prev, &img),
                None => img,
            };
            if !sum.is_zero() {
                out.images.insert(k, sum);
            }
        }
        Ok(out)
    }

    pub fn degrees(&self) -> &DegreeSequence {
        &self.degrees
    }

    /// Image of generator `k`, `None` meaning zero.
    pub fn image(&self, k: u32) -> Option<&AlgebraElement> {
        self.images.get(&k)
    }

    pub fn images(&self) -> impl Iterator<Item = (u32, &AlgebraElement)> {
        self.images.iter().map(|(&k, v)| (k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.images.is_empty()
    }

    /// Membership in `Z(X₀)`: every generator image is decomposable.
    pub fn is_decomposable(&self) -> bool {
        self.images.values().all(AlgebraElement::is_decomposable)
    }

    /// Every image homogeneous of its generator's degree.
    pub fn is_degree_preserving(&self) -> bool {
        self.images.iter().all(|(&k, img)| {
            self.degrees
                .degree(k)
                .is_some_and(|d| img.is_homogeneous_of(d))
        })
    }

    /// Pointwise sum of generator images.
    pub fn add(&self, other: &CohomEndo) -> Result<CohomEndo, AlgebraError> {
        if self.degrees != other.degrees {
            return Err(AlgebraError::AmbientMismatch);
        }
        Self::from_images(
            &self.degrees,
            self.images
                .iter()
                .chain(other.images.iter())
                .map(|(&k, v)| (k, v.clone())),
        )
    }

    pub fn scale(&self, c: &Coeff) -> CohomEndo {
        let mut out = Self::zero(&self.degrees);
        if c.is_zero() {
            return out;
        }
        for (&k, v) in &self.images {
            out.images.insert(k, scale_element(c, v));
        }
        out
    }
}

/// The basis map `f_{k,I}` with coefficient `+1` on the canonically ordered product.
pub fn make_basis_map(ds: &DegreeSequence, id: &BasisMapId) -> Result<CohomEndo, AlgebraError> {
    let degree = ds.check_index(id.target)?;
    let (sign, m) = ds
        .monomial(&id.factors)?
        .ok_or(AlgebraError::Inhomogeneous {
            index: id.target,
            degree,
        })?;
    if m.degree() != degree || !m.is_decomposable() {
        return Err(AlgebraError::Inhomogeneous {
            index: id.target,
            degree,
        });
    }
    CohomEndo::from_images(
        ds,
        [(id.target, AlgebraElement::from_term(sign.to_coeff(), m))],
    )
}

/// Sum of the given basis maps with coefficient `+1` each.
pub fn sum_of_basis_maps<'a>(
    ds: &DegreeSequence,
    ids: impl IntoIterator<Item = &'a BasisMapId>,
) -> Result<CohomEndo, AlgebraError> {
    let mut images = Vec::new();
    for id in ids {
        let f = make_basis_map(ds, id)?;
        images.extend(f.images.into_iter());
    }
    CohomEndo::from_images(ds, images)
}

fn apply_to_monomial(g: &CohomEndo, m: &Monomial) -> AlgebraElement {
    let mut acc = AlgebraElement::one();
    for &k in m.indices() {
        match g.images.get(&k) {
            Some(img) => acc = mul_elements(&acc, img),
            None => return AlgebraElement::zero(),
        }
        if acc.is_zero() {
            break;
        }
    }
    acc
}

/// Applies `g` multiplicatively: `g(x_{i1}⋯x_{ij}) = g(x_{i1})⋯g(x_{ij})`, extended linearly.
pub fn apply_endo(g: &CohomEndo, e: &AlgebraElement) -> AlgebraElement {
    let mut out = AlgebraElement::zero();
    for (m, c) in e.terms() {
        let img = apply_to_monomial(g, m);
        for (m2, c2) in img.terms() {
            out.add_term(c * c2, m2.clone());
        }
    }
    out
}

/// `x ↦ outer(inner(x))`.
pub fn compose_endos(outer: &CohomEndo, inner: &CohomEndo) -> Result<CohomEndo, AlgebraError> {
    if outer.degrees != inner.degrees {
        return Err(AlgebraError::AmbientMismatch);
    }
    let mut out = CohomEndo::zero(&inner.degrees);
    for (&k, img) in &inner.images {
        let v = apply_endo(outer, img);
        if !v.is_zero() {
            out.images.insert(k, v);
        }
    }
    Ok(out)
}

/// Composite of pullbacks listed in application order: `endos[0]` is applied first.
pub fn compose_all(ds: &DegreeSequence, endos: &[CohomEndo]) -> Result<CohomEndo, AlgebraError> {
    let mut iter = endos.iter();
    let Some(first) = iter.next() else {
        return Ok(identity(ds));
    };
    let mut acc = first.clone();
    for e in iter {
        acc = compose_endos(e, &acc)?;
    }
    Ok(acc)
}

/// The identity endomorphism (not a member of `Z(X₀)`).
pub fn identity(ds: &DegreeSequence) -> CohomEndo {
    let mut out = CohomEndo::zero(ds);
    for k in ds.indices() {
        out.images.insert(
            k,
            AlgebraElement::from_monomial(ds.generator(k).expect("index in range")),
        );
    }
    out
}

/// `Σ c_{k,I} f_{k,I}` over every basis map, with pairwise distinct coefficients
/// drawn from `[1, 2³¹)` by a ChaCha stream seeded with `seed`.
pub fn sample_generic_endo(ds: &DegreeSequence, seed: u64) -> CohomEndo {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut used = HashSet::new();
    let mut images: BTreeMap<u32, AlgebraElement> = BTreeMap::new();
    for id in all_basis_maps(ds) {
        let c = loop {
            let c: u32 = rng.gen_range(1..(1u32 << 31));
            if used.insert(c) {
                break c;
            }
        };
        let f = make_basis_map(ds, &id).expect("enumerated basis map is valid");
        let img = scale_element(&Coeff::from_integer(c.into()), &f.images[&id.target]);
        let entry = images.entry(id.target).or_default();
        *entry = add_elements(entry, &img);
    }
    CohomEndo::from_images(ds, images).expect("images are homogeneous")
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct CohomEndoJson {
    degrees: Vec<u32>,
    images: BTreeMap<u32, Vec<TermJson>>,
}

impl Serialize for CohomEndo {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        CohomEndoJson {
            degrees: self.degrees.degrees().to_vec(),
            images: self
                .images
                .iter()
                .map(|(&k, v)| (k, v.to_json_terms()))
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CohomEndo {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = CohomEndoJson::deserialize(deserializer)?;
        let ds = DegreeSequence::new(raw.degrees).map_err(D::Error::custom)?;
        if !ds.degrees().windows(2).all(|w| w[0] <= w[1]) {
            return Err(D::Error::custom("degrees must be sorted"));
        }
        let mut images = Vec::new();
        for (k, terms) in raw.images {
            let e = AlgebraElement::from_json_terms(&ds, &terms).map_err(D::Error::custom)?;
            images.push((k, e));
        }
        CohomEndo::from_images(&ds, images).map_err(D::Error::custom)
    }
}
