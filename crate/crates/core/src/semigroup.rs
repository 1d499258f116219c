//! Nilpotency of finite composition semigroups with zero.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::SemigroupError;

/// Largest table [`SemigroupTable::zero_products`] will build.
pub const MAX_MATERIALIZED: u64 = 4096;

/// A finite semigroup given by its full composition table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemigroupTable {
    names: Vec<String>,
    zero: usize,
    // row-major: table[a * n + b] = a ∘ b
    table: Vec<u32>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct TableJson {
    elements: Vec<String>,
    zero: String,
    #[serde(default)]
    table: BTreeMap<String, String>,
}

impl SemigroupTable {
    /// Builds a table from named products; pairs not listed compose to `zero`.
    pub fn from_products<'a>(
        elements: Vec<String>,
        zero: &str,
        products: impl IntoIterator<Item = (&'a str, &'a str, &'a str)>,
    ) -> Result<Self, SemigroupError> {
        let mut index = HashMap::new();
        for (i, e) in elements.iter().enumerate() {
            if index.insert(e.clone(), i as u32).is_some() {
                return Err(SemigroupError::DuplicateElement(e.clone()));
            }
        }
        let lookup = |s: &str| {
            index
                .get(s)
                .copied()
                .ok_or_else(|| SemigroupError::UnknownElement(s.to_string()))
        };
        let z = lookup(zero)?;
        let n = elements.len();
        let mut table = vec![z; n * n];
        for (a, b, c) in products {
            let (a, b, c) = (lookup(a)?, lookup(b)?, lookup(c)?);
            table[a as usize * n + b as usize] = c;
        }
        let out = Self {
            names: elements,
            zero: z as usize,
            table,
        };
        out.check_zero()?;
        Ok(out)
    }

    /// Parses `{ "elements": [...], "zero": "0", "table": { "a,b": "c", ... } }`.
    pub fn from_json(text: &str) -> Result<Self, Box<dyn std::error::Error + Send + Sync>> {
        let raw: TableJson = serde_json::from_str(text)?;
        let mut triples = Vec::with_capacity(raw.table.len());
        for (key, value) in &raw.table {
            let (a, b) = key
                .split_once(',')
                .ok_or_else(|| SemigroupError::BadKey(key.clone()))?;
            triples.push((a.trim(), b.trim(), value.as_str()));
        }
        Ok(Self::from_products(raw.elements.clone(), &raw.zero, triples)?)
    }

    /// The semigroup on `order` elements in which every product is zero.
    pub fn zero_products(order: u64) -> Result<Self, SemigroupError> {
        if order == 0 || order > MAX_MATERIALIZED {
            return Err(SemigroupError::TooLarge(order));
        }
        let names = (0..order).map(|i| i.to_string()).collect();
        Self::from_products(names, "0", [])
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn compose(&self, a: usize, b: usize) -> usize {
        self.table[a * self.len() + b] as usize
    }

    fn check_zero(&self) -> Result<(), SemigroupError> {
        let z = self.zero;
        for a in 0..self.len() {
            if self.compose(z, a) != z || self.compose(a, z) != z {
                return Err(SemigroupError::NonAbsorbingZero(self.names[z].clone()));
            }
        }
        Ok(())
    }
}

/// Outcome of a nilpotency check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Nilpotency {
    Nilpotent(u32),
    NotNilpotent,
}

impl fmt::Display for Nilpotency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Nilpotency::Nilpotent(t) => write!(f, "{t}"),
            Nilpotency::NotNilpotent => f.write_str("not nilpotent"),
        }
    }
}

impl Serialize for Nilpotency {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Nilpotency::Nilpotent(t) => serializer.serialize_u32(*t),
            Nilpotency::NotNilpotent => serializer.serialize_str("not nilpotent"),
        }
    }
}

/// Smallest `t` with every `t`-fold product equal to zero.
///
/// Iterates `P_{k+1} = P_k ∘ P_1` over sets of elements; reaching `{0}` gives `t = k`,
/// revisiting an earlier set means some products never vanish.
pub fn table_nilpotency(t: &SemigroupTable) -> Result<Nilpotency, SemigroupError> {
    t.check_zero()?;
    let n = t.len();
    let all: Vec<usize> = (0..n).collect();
    let is_zero_set = |s: &[bool]| s.iter().enumerate().all(|(i, &b)| !b || i == t.zero);
    let mut current = vec![true; n];
    let mut seen = HashSet::new();
    let mut k = 1u32;
    loop {
        if is_zero_set(&current) {
            return Ok(Nilpotency::Nilpotent(k));
        }
        if !seen.insert(current.clone()) {
            return Ok(Nilpotency::NotNilpotent);
        }
        let mut next = vec![false; n];
        for (a, _) in current.iter().enumerate().filter(|(_, &b)| b) {
            for &b in &all {
                next[t.compose(a, b)] = true;
            }
        }
        current = next;
        k += 1;
    }
}

/// Structure of the underlying finite abelian group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupStructure {
    /// Direct sum of cyclic groups of the listed orders.
    Cyclic(Vec<u64>),
    /// Known to be nonzero, decomposition not recorded.
    UnknownNontrivial,
}

impl GroupStructure {
    pub fn order(&self) -> Option<u64> {
        match self {
            GroupStructure::Cyclic(orders) => Some(orders.iter().product()),
            GroupStructure::UnknownNontrivial => None,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == Some(1)
    }
}

impl Serialize for GroupStructure {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            GroupStructure::Cyclic(orders) => orders.serialize(serializer),
            GroupStructure::UnknownNontrivial => serializer.serialize_str("unknown"),
        }
    }
}

/// A finite semigroup in which every product of two elements is zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZeroCompositionPresentation {
    pub group_structure: GroupStructure,
    pub all_products_zero: bool,
    pub source: String,
}

/// `2` for a nonzero group whose products all vanish, `1` for the trivial group.
pub fn presentation_nilpotency(p: &ZeroCompositionPresentation) -> Result<u32, SemigroupError> {
    if !p.all_products_zero {
        return Err(SemigroupError::UnsupportedPresentation);
    }
    Ok(if p.group_structure.is_trivial() { 1 } else { 2 })
}

/// A space whose self-map semigroup is recorded from the literature.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KnownCase {
    pub name: &'static str,
    pub presentation: ZeroCompositionPresentation,
    pub expected_t: u32,
    pub expected_t_infinity: u32,
    /// Rational type, for comparing with the torsion-free model.
    pub rational_degrees: Vec<u32>,
}

/// The rank 2 and rank 3 cases whose nilpotency is known to be 2.
///
/// Homotopy group facts are shipped as data, not recomputed.
pub fn load_known_cases() -> Vec<KnownCase> {
    let case = |name, group, source: &str, degrees: &[u32]| KnownCase {
        name,
        presentation: ZeroCompositionPresentation {
            group_structure: group,
            all_products_zero: true,
            source: source.to_string(),
        },
        expected_t: 2,
        expected_t_infinity: 2,
        rational_degrees: degrees.to_vec(),
    };
    use GroupStructure::{Cyclic, UnknownNontrivial};
    vec![
        case(
            "S3xS3",
            Cyclic(vec![12, 12]),
            "Z(S3xS3) = Im q* = pi_6(S3) + pi_6(S3) (Toda); f1 o f2 = 0",
            &[3, 3],
        ),
        case(
            "SU(3)",
            Cyclic(vec![12]),
            "Z(SU(3)) = Im q* (Maruyama); compositions factor through a finite-order map S^8 -> SU(3)",
            &[3, 5],
        ),
        case(
            "Sp(2)",
            Cyclic(vec![120]),
            "Z(Sp(2)) = Im q* (Maruyama); compositions factor through a finite-order map S^10 -> Sp(2)",
            &[3, 7],
        ),
        case(
            "G2",
            Cyclic(vec![2, 2, 8, 21]),
            "Z(G2) generated by Im q* and [1, alpha] (Maruyama, Oshima); Z^inf(G2) nonzero, order not recorded",
            &[3, 11],
        ),
        case(
            "S7xS7",
            Cyclic(vec![120, 120]),
            "Z^inf(S7xS7) = pi_14(S7) + pi_14(S7) (Toda)",
            &[7, 7],
        ),
        case(
            "SU(4)",
            UnknownNontrivial,
            "Z(SU(4)) from the exact sequences of Oka; any two elements compose to zero",
            &[3, 5, 7],
        ),
        case(
            "Sp(3)",
            UnknownNontrivial,
            "Z(Sp(3)) via Sp(3)_p decompositions (Oka); any two elements compose to zero",
            &[3, 7, 11],
        ),
    ]
}
