//! Exact arithmetic in the exterior algebra `Λ_Q(x_1, …, x_r)` on odd-degree generators.
//!
//! Generators are identified by their 1-based index into a [`DegreeSequence`].
//! Monomials are square-free and always stored with strictly increasing indices;
//! every sign produced by reordering odd-degree generators lives in the coefficient.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::AlgebraError;

/// Exact rational coefficient.
pub type Coeff = BigRational;

/// Sign of a reordered product of generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_parity(odd: bool) -> Self {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn times(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn to_coeff(self) -> Coeff {
        match self {
            Sign::Plus => Coeff::one(),
            Sign::Minus => -Coeff::one(),
        }
    }
}

/// The rational type of an H-space: the odd degrees of its exterior generators.
///
/// Degrees are kept sorted non-decreasing; generator `k` (1-based) has degree
/// `degrees()[k - 1]`. Repeated degrees are allowed and the index is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DegreeSequence {
    degrees: Arc<[u32]>,
}

impl DegreeSequence {
    pub fn new(mut degrees: Vec<u32>) -> Result<Self, AlgebraError> {
        if let Some(&bad) = degrees.iter().find(|&&d| d % 2 == 0) {
            return Err(AlgebraError::EvenDegree(bad));
        }
        degrees.sort_unstable();
        Ok(Self {
            degrees: degrees.into(),
        })
    }

    pub fn empty() -> Self {
        Self {
            degrees: Arc::from(Vec::new()),
        }
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    /// Number of generators `r`.
    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    /// Degree of generator `k` (1-based).
    pub fn degree(&self, k: u32) -> Option<u32> {
        let k = k as usize;
        if k == 0 {
            return None;
        }
        self.degrees.get(k - 1).copied()
    }

    pub fn check_index(&self, k: u32) -> Result<u32, AlgebraError> {
        self.degree(k).ok_or(AlgebraError::InvalidIndex {
            index: k,
            rank: self.rank(),
        })
    }

    /// Generator indices `1..=r`.
    pub fn indices(&self) -> impl Iterator<Item = u32> + '_ {
        1..=self.degrees.len() as u32
    }

    /// Lowest generator index carrying `degree`.
    pub fn lowest_index_of_degree(&self, degree: u32) -> Option<u32> {
        let pos = self.degrees.partition_point(|&d| d < degree);
        (self.degrees.get(pos) == Some(&degree)).then_some(pos as u32 + 1)
    }

    /// The monomial `x_k` for a single generator.
    pub fn generator(&self, k: u32) -> Result<Monomial, AlgebraError> {
        let degree = self.check_index(k)?;
        Ok(Monomial {
            indices: vec![k],
            degree,
        })
    }

    /// Normalizes an arbitrary list of generator indices into a canonical monomial.
    ///
    /// Returns `None` when an index repeats (the product is zero), otherwise the
    /// sorted monomial and the parity of the sorting permutation.
    pub fn monomial(&self, indices: &[u32]) -> Result<Option<(Sign, Monomial)>, AlgebraError> {
        let mut degree = 0u32;
        for &k in indices {
            degree += self.check_index(k)?;
        }
        let mut sorted = indices.to_vec();
        let odd = sort_parity(&mut sorted);
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Ok(None);
        }
        Ok(Some((
            Sign::from_parity(odd),
            Monomial {
                indices: sorted,
                degree,
            },
        )))
    }
}

impl Serialize for DegreeSequence {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.degrees.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DegreeSequence {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = Vec::<u32>::deserialize(deserializer)?;
        DegreeSequence::new(raw).map_err(serde::de::Error::custom)
    }
}

/// Insertion sort that reports whether the permutation applied was odd.
fn sort_parity(v: &mut [u32]) -> bool {
    let mut swaps = 0usize;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            swaps += 1;
            j -= 1;
        }
    }
    swaps % 2 == 1
}

/// A square-free product `x_{i_1} ⋯ x_{i_j}` with `i_1 < ⋯ < i_j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    indices: Vec<u32>,
    degree: u32,
}

impl Monomial {
    /// The empty product (degree 0).
    pub fn unit() -> Self {
        Self {
            indices: Vec::new(),
            degree: 0,
        }
    }

    pub fn indices(&self) -> &[u32] {
        &self.indices
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Number of generator factors.
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_unit(&self) -> bool {
        self.indices.is_empty()
    }

    /// A product of at least two generators.
    pub fn is_decomposable(&self) -> bool {
        self.indices.len() >= 2
    }

    pub fn contains(&self, k: u32) -> bool {
        self.indices.binary_search(&k).is_ok()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x[")?;
        for (n, i) in self.indices.iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "]")
    }
}

/// Product of two canonical monomials.
///
/// `None` when they share a generator. Otherwise the sign is the parity of the
/// number of transpositions needed to sort the concatenation `a ++ b`.
pub fn mul_monomials(a: &Monomial, b: &Monomial) -> Option<(Sign, Monomial)> {
    let mut merged = Vec::with_capacity(a.indices.len() + b.indices.len());
    let mut inversions = 0usize;
    let (mut i, mut j) = (0, 0);
    while i < a.indices.len() && j < b.indices.len() {
        match a.indices[i].cmp(&b.indices[j]) {
            std::cmp::Ordering::Less => {
                merged.push(a.indices[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                // b[j] jumps over every remaining element of a
                inversions += a.indices.len() - i;
                merged.push(b.indices[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => return None,
        }
    }
    merged.extend_from_slice(&a.indices[i..]);
    merged.extend_from_slice(&b.indices[j..]);
    Some((
        Sign::from_parity(inversions % 2 == 1),
        Monomial {
            indices: merged,
            degree: a.degree + b.degree,
        },
    ))
}

/// A finite linear combination of monomials with nonzero rational coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgebraElement {
    terms: BTreeMap<Monomial, Coeff>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_monomial(Monomial::unit())
    }

    pub fn from_monomial(m: Monomial) -> Self {
        Self::from_term(Coeff::one(), m)
    }

    pub fn from_term(c: Coeff, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of `m` (zero when absent).
    pub fn coefficient(&self, m: &Monomial) -> Coeff {
        self.terms.get(m).cloned().unwrap_or_else(Coeff::zero)
    }

    /// Adds `c · m` in place, dropping the term if it cancels.
    pub fn add_term(&mut self, c: Coeff, m: Monomial) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// True when every term has total degree `degree`. The zero element is homogeneous of any degree.
    pub fn is_homogeneous_of(&self, degree: u32) -> bool {
        self.terms.keys().all(|m| m.degree == degree)
    }

    /// True when every term is a product of at least two generators.
    pub fn is_decomposable(&self) -> bool {
        self.terms.keys().all(Monomial::is_decomposable)
    }
}

/// `a + b`.
pub fn add_elements(a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
    let mut out = a.clone();
    for (m, c) in &b.terms {
        out.add_term(c.clone(), m.clone());
    }
    out
}

/// `c · a`.
pub fn scale_element(c: &Coeff, a: &AlgebraElement) -> AlgebraElement {
    if c.is_zero() {
        return AlgebraElement::zero();
    }
    AlgebraElement {
        terms: a.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
    }
}

/// Bilinear extension of [`mul_monomials`].
pub fn mul_elements(a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
    let mut out = AlgebraElement::zero();
    for (ma, ca) in &a.terms {
        for (mb, cb) in &b.terms {
            if let Some((sign, m)) = mul_monomials(ma, mb) {
                let c = ca * cb;
                let c = match sign {
                    Sign::Plus => c,
                    Sign::Minus => -c,
                };
                out.add_term(c, m);
            }
        }
    }
    out
}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        add_elements(self, rhs)
    }
}

impl Mul for &AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, rhs: &AlgebraElement) -> AlgebraElement {
        mul_elements(self, rhs)
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        AlgebraElement {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({})*{}", format_coeff(c), m)?;
        }
        Ok(())
    }
}

/// Fraction string `p/q` with `q > 0`, always carrying the denominator.
pub fn format_coeff(c: &Coeff) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

/// Parses `p/q` or a bare integer `p`.
pub fn parse_coeff(s: &str) -> Result<Coeff, AlgebraError> {
    let bad = || AlgebraError::BadCoefficient(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() || den.is_negative() {
        return Err(bad());
    }
    Ok(Coeff::new(num, den))
}

/// One serialized term: `{ "coef": "p/q", "monomial": [i1, i2, ...] }`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermJson {
    pub coef: String,
    pub monomial: Vec<u32>,
}

impl AlgebraElement {
    pub fn to_json_terms(&self) -> Vec<TermJson> {
        self.terms
            .iter()
            .map(|(m, c)| TermJson {
                coef: format_coeff(c),
                monomial: m.indices.clone(),
            })
            .collect()
    }

    /// Rebuilds an element from serialized terms, normalizing signs and repeated indices.
    pub fn from_json_terms(ds: &DegreeSequence, terms: &[TermJson]) -> Result<Self, AlgebraError> {
        let mut out = AlgebraElement::zero();
        for t in terms {
            let c = parse_coeff(&t.coef)?;
            if let Some((sign, m)) = ds.monomial(&t.monomial)? {
                out.add_term(c * sign.to_coeff(), m);
            }
        }
        Ok(out)
    }
}
