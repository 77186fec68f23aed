use serde::{Deserialize, Serialize};

use crate::arith::{IntPoly, RatPoly};
use crate::error::{Error, Result};
use crate::galois::GroupName;
use crate::perm::{build_group, GroupHandle, SubgroupSpec};
use crate::resolvent::ResolventRecipe;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CoveringSpec {
    Direct { u1: SubgroupSpec, u2: SubgroupSpec },
    /// Covering of `A_n` cut out of a covering `(H, K)` of `parent = S_n`.
    Lemma { parent: GroupName, h: SubgroupSpec, k: SubgroupSpec },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedFactorization {
    pub p: u64,
    pub factors: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolventSpec {
    /// Subgroup fixing a root of `g`; may be an overgroup of the covering
    /// subgroup.
    pub subgroup: SubgroupSpec,
    /// Polynomial shipped with the case.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub given: Option<RatPoly>,
    pub recipe: ResolventRecipe,
    /// The recipe must reproduce `given` exactly.
    #[serde(default)]
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseSpec {
    pub name: String,
    pub group: GroupName,
    pub f: IntPoly,
    pub discriminant: String,
    pub covering: CoveringSpec,
    pub galois_primes: Vec<u64>,
    pub factorizations: Vec<ExpectedFactorization>,
    pub g1: ResolventSpec,
    pub g2: ResolventSpec,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CaseSpec {
    pub fn from_json(s: &str) -> Result<Self> {
        let c: CaseSpec = serde_json::from_str(s)?;
        c.validate()?;
        Ok(c)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("case specs serialize")
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.group.n;
        if self.f.deg() != n || !self.f.is_monic() {
            return Err(Error::InvalidSpec(format!("f must be monic of degree {n}")));
        }
        let specs: Vec<&SubgroupSpec> = match &self.covering {
            CoveringSpec::Direct { u1, u2 } => vec![u1, u2],
            CoveringSpec::Lemma { parent, h, k } => {
                if parent.n != n || parent.is_alternating() || !self.group.is_alternating() {
                    return Err(Error::InvalidSpec("lemma coverings pass from S_n to A_n".into()));
                }
                vec![h, k]
            }
        };
        for s in specs.into_iter().chain([&self.g1.subgroup, &self.g2.subgroup]) {
            if s.degree() != n {
                return Err(Error::InvalidSpec(format!("subgroup of degree {} in a degree-{n} case", s.degree())));
            }
        }
        for g in [&self.g1, &self.g2] {
            g.recipe.degrees(n)?;
            if g.exact && g.given.is_none() {
                return Err(Error::InvalidSpec("an exact recipe needs a given polynomial".into()));
            }
        }
        Ok(())
    }

    /// Covering subgroups `(U1, U2)` inside the case group.
    pub fn covering_groups(&self) -> Result<(GroupHandle, GroupHandle)> {
        match &self.covering {
            CoveringSpec::Direct { u1, u2 } => Ok((build_group(u1)?, build_group(u2)?)),
            CoveringSpec::Lemma { h, k, .. } => {
                let a = self.group.handle();
                Ok((build_group(h)?.intersection(&a), build_group(k)?.intersection(&a)))
            }
        }
    }
}

const SHIPPED: [(&str, &str); 9] = [
    ("S3", include_str!("../../cases/s3.json")),
    ("S4", include_str!("../../cases/s4.json")),
    ("S5", include_str!("../../cases/s5.json")),
    ("S6", include_str!("../../cases/s6.json")),
    ("A4", include_str!("../../cases/a4.json")),
    ("A5", include_str!("../../cases/a5.json")),
    ("A6", include_str!("../../cases/a6.json")),
    ("A7", include_str!("../../cases/a7.json")),
    ("A8", include_str!("../../cases/a8.json")),
];

pub fn shipped_case_names() -> Vec<&'static str> {
    SHIPPED.iter().map(|(n, _)| *n).collect()
}

pub fn shipped_case(name: &str) -> Result<CaseSpec> {
    let (_, s) = SHIPPED
        .iter()
        .find(|(n, _)| n.eq_ignore_ascii_case(name))
        .ok_or_else(|| Error::InvalidSpec(format!("no shipped case {name}")))?;
    CaseSpec::from_json(s)
}

pub fn shipped_cases() -> Result<Vec<CaseSpec>> {
    SHIPPED.iter().map(|(_, s)| CaseSpec::from_json(s)).collect()
}
