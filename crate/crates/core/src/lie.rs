//! Rational types of the classical groups and the explicit smash-product chains.
//!
//! For `SU(n)` and `U(n)` a chain of length `ℓ` smashes successive triples of spheres
//! at every level; for `Sp(n)` and `SO(m)` (degrees `≡ 3 mod 4`) it smashes successive
//! quintuples. Level `k` degrees follow
//! `D_0(i) = 2i+1` (resp. `4i−1`) and `D_k(i) = Σ_{j=w(i−1)+1}^{wi} D_{k−1}(j)`,
//! so the top degree is `3^{2ℓ} + 2·3^ℓ` (resp. `2·5^{2ℓ} + 5^ℓ`).

use std::fmt;
use std::str::FromStr;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::engine::{ChainCertificate, FamilyShape, RefinementTree};
use crate::error::LieError;
use crate::exterior::DegreeSequence;
use crate::selfmap::{sum_of_basis_maps, BasisMapId, CohomEndo};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FamilyTag {
    SU,
    Sp,
    U,
    /// `SO(2k+1)`, also `Spin(2k+1)` and `O(2k+1)`.
    SOOdd,
    /// `SO(2k)`, also `Spin(2k)` and `O(2k)`.
    SOEven,
}

impl FamilyTag {
    pub fn shape(self) -> FamilyShape {
        match self {
            FamilyTag::SU | FamilyTag::U => FamilyShape::AllOddFrom3,
            FamilyTag::Sp | FamilyTag::SOOdd | FamilyTag::SOEven => FamilyShape::Mod4Equal3,
        }
    }

    /// Number of spheres smashed together at each level.
    pub fn arity(self) -> u64 {
        self.shape().arity()
    }

    /// `D_0(i)`, the degree of the `i`-th sphere used by a chain.
    fn base_degree(self, i: u64) -> u64 {
        match self.shape() {
            FamilyShape::AllOddFrom3 => 2 * i + 1,
            FamilyShape::Mod4Equal3 => 4 * i - 1,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            FamilyTag::SU => "SU",
            FamilyTag::Sp => "Sp",
            FamilyTag::U => "U",
            FamilyTag::SOOdd | FamilyTag::SOEven => "SO",
        }
    }

    /// Human-readable form of the fitting condition.
    fn inequality(self) -> &'static str {
        match self {
            FamilyTag::SU | FamilyTag::U => "2n - 1 >= 3^(2l) + 2*3^l",
            FamilyTag::Sp => "4n - 1 >= 2*5^(2l) + 5^l",
            FamilyTag::SOOdd => "2m - 3 >= 2*5^(2l) + 5^l",
            FamilyTag::SOEven => "2m - 5 >= 2*5^(2l) + 5^l",
        }
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyTag::SOOdd => "SO_odd",
            FamilyTag::SOEven => "SO_even",
            other => other.symbol(),
        })
    }
}

/// A classical group by family and parameter, e.g. `SU(8)` or `SO(30)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Family {
    tag: FamilyTag,
    parameter: u32,
}

impl Family {
    pub fn new(tag: FamilyTag, parameter: u32) -> Result<Self, LieError> {
        let invalid = |reason| LieError::InvalidParameter {
            tag: tag.to_string(),
            parameter,
            reason,
        };
        if parameter < 2 {
            return Err(invalid("parameter must be at least 2"));
        }
        match tag {
            FamilyTag::SOOdd if parameter % 2 == 0 || parameter < 3 => {
                return Err(invalid("odd orthogonal groups need an odd parameter >= 3"))
            }
            FamilyTag::SOEven if parameter % 2 == 1 || parameter < 4 => {
                return Err(invalid("even orthogonal groups need an even parameter >= 4"))
            }
            _ => {}
        }
        Ok(Self { tag, parameter })
    }

    pub fn tag(&self) -> FamilyTag {
        self.tag
    }

    pub fn parameter(&self) -> u32 {
        self.parameter
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.tag.symbol(), self.parameter)
    }
}

/// Parses a family name without a parameter: `su`, `sp`, `u`, or `so` / `spin` / `o`
/// (the last three need a parity to pick odd or even).
pub fn parse_tag(name: &str, parity_hint: Option<u32>) -> Result<FamilyTag, LieError> {
    let lower = name.trim().to_ascii_lowercase();
    let orth = |m: u32| {
        if m % 2 == 1 {
            FamilyTag::SOOdd
        } else {
            FamilyTag::SOEven
        }
    };
    Ok(match lower.as_str() {
        "su" => FamilyTag::SU,
        "sp" => FamilyTag::Sp,
        "u" => FamilyTag::U,
        "so_odd" | "so-odd" => FamilyTag::SOOdd,
        "so_even" | "so-even" => FamilyTag::SOEven,
        "so" | "spin" | "o" => match parity_hint {
            Some(m) => orth(m),
            None => return Err(LieError::InvalidFamily(name.to_string())),
        },
        _ => return Err(LieError::InvalidFamily(name.to_string())),
    })
}

impl FromStr for Family {
    type Err = LieError;

    /// `SU:8`, `Sp:14`, `U:8`, `SO:29`, `Spin:29`, `O:30`.
    fn from_str(s: &str) -> Result<Self, LieError> {
        let bad = || LieError::InvalidFamily(s.to_string());
        let (name, param) = s.split_once(':').ok_or_else(bad)?;
        let parameter: u32 = param.trim().parse().map_err(|_| bad())?;
        Family::new(parse_tag(name, Some(parameter))?, parameter)
    }
}

impl Serialize for Family {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Family {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Odd degrees of the exterior generators of the family's rational cohomology.
pub fn degree_sequence(family: &Family) -> DegreeSequence {
    let p = family.parameter;
    let degrees: Vec<u32> = match family.tag {
        FamilyTag::SU => (2..=p).map(|i| 2 * i - 1).collect(),
        FamilyTag::U => (1..=p).map(|i| 2 * i - 1).collect(),
        FamilyTag::Sp => (1..=p).map(|i| 4 * i - 1).collect(),
        FamilyTag::SOOdd => {
            let k = (p - 1) / 2;
            (1..=k).map(|i| 4 * i - 1).collect()
        }
        FamilyTag::SOEven => {
            let k = p / 2;
            (1..k).map(|i| 4 * i - 1).chain([2 * k - 1]).collect()
        }
    };
    DegreeSequence::new(degrees).expect("classical degrees are odd")
}

/// Smallest family parameter for which the level-`level` chain fits.
pub fn threshold(tag: FamilyTag, level: u32) -> Result<u64, LieError> {
    if level == 0 {
        return Err(LieError::ZeroLevel);
    }
    let overflow = || LieError::Overflow(level);
    let pow = |b: u64, e: u32| b.checked_pow(e).ok_or_else(overflow);
    let quint = || -> Result<u64, LieError> {
        // 2·5^{2ℓ} + 5^ℓ
        let a = pow(5, 2 * level)?.checked_mul(2).ok_or_else(overflow)?;
        a.checked_add(pow(5, level)?).ok_or_else(overflow)
    };
    let ceil_div = |n: u64, d: u64| n.div_ceil(d);
    Ok(match tag {
        FamilyTag::SU | FamilyTag::U => {
            let s = pow(3, level)?.checked_add(1).ok_or_else(overflow)?;
            ceil_div(s.checked_mul(s).ok_or_else(overflow)?, 2)
        }
        FamilyTag::Sp => ceil_div(quint()?.checked_add(1).ok_or_else(overflow)?, 4),
        FamilyTag::SOOdd => ceil_div(quint()?.checked_add(3).ok_or_else(overflow)?, 2),
        FamilyTag::SOEven => ceil_div(quint()?.checked_add(5).ok_or_else(overflow)?, 2),
    })
}

/// The chain `a_1, …, a_ℓ` for one family at one level.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SmashChain {
    pub family: Family,
    pub level: u32,
    /// Pullbacks `a_1*, …, a_ℓ*`.
    pub endos: Vec<CohomEndo>,
    /// `level_degrees[k][i-1] = D_k(i)`.
    pub level_degrees: Vec<Vec<u64>>,
    #[serde(skip)]
    degrees: DegreeSequence,
}

impl SmashChain {
    pub fn degrees(&self) -> &DegreeSequence {
        &self.degrees
    }

    /// Generator indices carrying the degrees `D_k(1), D_k(2), …`.
    fn level_indices(&self, k: usize) -> Result<Vec<u32>, LieError> {
        resolve(&self.degrees, &self.level_degrees[k])
    }
}

/// Degree table `D_0, …, D_ℓ`.
pub fn level_degree_table(tag: FamilyTag, level: u32) -> Vec<Vec<u64>> {
    let w = tag.arity();
    let width = w.pow(level);
    let mut table = vec![(1..=width).map(|i| tag.base_degree(i)).collect::<Vec<u64>>()];
    for _ in 0..level {
        let prev = table.last().unwrap();
        let next = prev.chunks(w as usize).map(|c| c.iter().sum()).collect();
        table.push(next);
    }
    table
}

fn resolve(ds: &DegreeSequence, degrees: &[u64]) -> Result<Vec<u32>, LieError> {
    degrees
        .iter()
        .map(|&d| {
            u32::try_from(d)
                .ok()
                .and_then(|d| ds.lowest_index_of_degree(d))
                .ok_or_else(|| LieError::Verification(format!("no generator of degree {d}")))
        })
        .collect()
}

/// Builds `a_1, …, a_ℓ`: `a_k*` sends the generator of degree `D_k(i)` to the product of
/// the `w` generators of degrees `D_{k−1}(w(i−1)+1), …, D_{k−1}(wi)` and every other
/// generator to zero. Repeated degrees resolve to the lowest index.
pub fn build_smash_chain(family: &Family, level: u32) -> Result<SmashChain, LieError> {
    let needed = threshold(family.tag, level)?;
    if u64::from(family.parameter) < needed {
        return Err(LieError::BelowThreshold {
            family: family.to_string(),
            level,
            threshold: needed,
            inequality: family.tag.inequality().to_string(),
        });
    }
    let ds = degree_sequence(family);
    let table = level_degree_table(family.tag, level);
    let w = family.tag.arity() as usize;
    let mut endos = Vec::with_capacity(level as usize);
    for k in 1..=level as usize {
        let targets = resolve(&ds, &table[k])?;
        let factors = resolve(&ds, &table[k - 1])?;
        let ids: Vec<BasisMapId> = targets
            .iter()
            .zip(factors.chunks(w))
            .map(|(&target, chunk)| BasisMapId {
                target,
                factors: chunk.to_vec(),
            })
            .collect();
        endos.push(sum_of_basis_maps(&ds, &ids)?);
    }
    Ok(SmashChain {
        family: *family,
        level,
        endos,
        level_degrees: table,
        degrees: ds,
    })
}

/// Composes the chain (pullbacks applied `a_ℓ*` first) and checks that the top generator
/// goes to `±1` times the product of all `w^ℓ` base generators.
pub fn verify_chain(chain: &SmashChain) -> Result<ChainCertificate, LieError> {
    let ds = &chain.degrees;
    let level = chain.level as usize;
    for (k, a) in chain.endos.iter().enumerate() {
        if !a.is_decomposable() {
            return Err(LieError::Verification(format!(
                "a_{} does not send generators to decomposables",
                k + 1
            )));
        }
    }
    let top = chain.level_indices(level)?;
    let base = chain.level_indices(0)?;
    let (_, witness) = ds
        .monomial(&base)?
        .ok_or_else(|| LieError::Verification("base generators repeat".into()))?;
    let levels = (0..=level)
        .rev()
        .map(|k| {
            let mut ix = chain.level_indices(k)?;
            ix.sort_unstable();
            Ok(ix)
        })
        .collect::<Result<Vec<_>, LieError>>()?;
    let tree = RefinementTree {
        root: top[0],
        levels,
    };
    let order: Vec<CohomEndo> = chain.endos.iter().rev().cloned().collect();
    let cert = ChainCertificate::from_composite(ds, order, top[0], witness, Some(tree))
        .map_err(|e| LieError::Verification(e.to_string()))?;
    let c = &cert.witness_coefficient;
    if !(c.is_one() || (-c).is_one()) {
        return Err(LieError::Verification(format!(
            "witness coefficient {c} is not ±1"
        )));
    }
    Ok(cert)
}
