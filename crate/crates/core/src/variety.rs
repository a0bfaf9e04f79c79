//! Varieties of algebras as lists of multilinear identities, plus the bundled presets.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::actor::{LambdaMuRules, ProductRules};
use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::identity::{parse_identity, IdentityCheck, MultilinearIdentity};
use crate::scalar::Field;

/// The named varieties shipped with the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Preset {
    AbAlg,
    Assoc,
    CAssoc,
    Lie,
    Alt,
    Pois,
    CPois,
}

impl Preset {
    pub const ALL: [Preset; 7] =
        [Preset::AbAlg, Preset::Assoc, Preset::CAssoc, Preset::Lie, Preset::Alt, Preset::Pois, Preset::CPois];

    pub fn name(self) -> &'static str {
        match self {
            Preset::AbAlg => "abalg",
            Preset::Assoc => "assoc",
            Preset::CAssoc => "cassoc",
            Preset::Lie => "lie",
            Preset::Alt => "alt",
            Preset::Pois => "pois",
            Preset::CPois => "cpois",
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = Error;
    fn from_str(s: &str) -> Result<Preset> {
        let lower = s.trim().to_ascii_lowercase();
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == lower)
            .ok_or_else(|| Error::InvalidVariety(format!("unknown preset {s:?}")))
    }
}

const ASSOCIATIVITY: &str = "(x1*x2)*x3 - x1*(x2*x3)";
const COMMUTATIVITY: &str = "x1*x2 - x2*x1";

/// A variety: identities over a fixed signature, optional partial-product
/// rules for its external weak actor, and excluded characteristics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Variety {
    name: String,
    preset: Option<Preset>,
    num_products: usize,
    identities: Vec<MultilinearIdentity>,
    rules: Option<ProductRules>,
    excluded_characteristics: Vec<u64>,
}

impl Variety {
    /// A variety from identity sources.
    pub fn new(
        name: impl Into<String>,
        num_products: usize,
        sources: &[&str],
        rules: Option<ProductRules>,
    ) -> Result<Variety> {
        if !(1..=2).contains(&num_products) {
            return Err(Error::InvalidVariety(format!("{num_products} products; expected 1 or 2")));
        }
        let identities =
            sources.iter().map(|s| parse_identity(s, num_products)).collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Variety {
            name: name.into(),
            preset: None,
            num_products,
            identities,
            rules,
            excluded_characteristics: Vec::new(),
        })
    }

    pub fn preset(preset: Preset) -> Variety {
        let (np, ids, rules): (usize, Vec<&str>, Option<ProductRules>) = match preset {
            Preset::AbAlg => (1, vec!["x1*x2"], Some(ProductRules::LambdaMu(LambdaMuRules::standard()))),
            Preset::Assoc => (1, vec![ASSOCIATIVITY], Some(ProductRules::LambdaMu(LambdaMuRules::standard()))),
            Preset::CAssoc => {
                (1, vec![COMMUTATIVITY, ASSOCIATIVITY], Some(ProductRules::LambdaMu(LambdaMuRules::standard())))
            }
            Preset::Lie => (
                1,
                vec!["x1*x2 + x2*x1", "x1*(x2*x3) + x2*(x3*x1) + x3*(x1*x2)"],
                Some(ProductRules::LambdaMu(LambdaMuRules::lie())),
            ),
            Preset::Alt => (
                1,
                vec![
                    "(x1*x2)*x3 + (x1*x3)*x2 - x1*(x2*x3) - x1*(x3*x2)",
                    "(x1*x2)*x3 + (x2*x1)*x3 - x1*(x2*x3) - x2*(x1*x3)",
                ],
                Some(ProductRules::Alternative),
            ),
            Preset::Pois | Preset::CPois => {
                let mut ids = vec![
                    ASSOCIATIVITY,
                    "[x1,x2] + [x2,x1]",
                    "[x1,[x2,x3]] + [x2,[x3,x1]] + [x3,[x1,x2]]",
                    "[x1,x2*x3] - [x1,x2]*x3 - x2*[x1,x3]",
                ];
                if preset == Preset::CPois {
                    ids.insert(0, COMMUTATIVITY);
                }
                (2, ids, None)
            }
        };
        let mut v = Variety::new(preset.name(), np, &ids, rules).expect("preset identities parse");
        v.preset = Some(preset);
        if matches!(preset, Preset::Lie | Preset::Alt | Preset::Pois | Preset::CPois) {
            v.excluded_characteristics = vec![2];
        }
        v
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn preset_kind(&self) -> Option<Preset> {
        self.preset
    }

    pub fn num_products(&self) -> usize {
        self.num_products
    }

    pub fn identities(&self) -> &[MultilinearIdentity] {
        &self.identities
    }

    pub fn rules(&self) -> Option<&ProductRules> {
        self.rules.as_ref()
    }

    pub fn excluded_characteristics(&self) -> &[u64] {
        &self.excluded_characteristics
    }

    /// Whether acting morphisms into this variety's actor are characterized by
    /// left/right permutability of the associative product.
    pub fn is_associative_type(&self) -> bool {
        matches!(self.preset, Some(Preset::Assoc | Preset::CAssoc | Preset::Pois | Preset::CPois))
    }

    pub fn check_characteristic(&self, field: Field) -> Result<()> {
        let c = field.characteristic();
        if self.excluded_characteristics.contains(&c) {
            return Err(Error::ExcludedCharacteristic { variety: self.name.clone(), characteristic: c });
        }
        Ok(())
    }

    /// First identity violated by `a`, with its failing basis tuple.
    pub fn first_violation(&self, a: &Algebra) -> Result<Option<(usize, Vec<usize>)>> {
        if a.num_products() < self.num_products {
            return Err(Error::ProductIndex { index: self.num_products - 1, count: a.num_products() });
        }
        for (idx, phi) in self.identities.iter().enumerate() {
            if let IdentityCheck::Violated { tuple, .. } = phi.check(a)? {
                return Ok(Some((idx, tuple)));
            }
        }
        Ok(None)
    }

    pub fn contains(&self, a: &Algebra) -> Result<bool> {
        Ok(self.first_violation(a)?.is_none())
    }

    /// Fails with the witness when `a` is not in the variety or its field is excluded.
    pub fn require(&self, a: &Algebra) -> Result<()> {
        self.check_characteristic(a.field())?;
        match self.first_violation(a)? {
            None => Ok(()),
            Some((identity, tuple)) => Err(Error::NotInVariety { variety: self.name.clone(), identity, tuple }),
        }
    }

    pub fn from_json(src: &str) -> Result<Variety> {
        let file: VarietyFile = serde_json::from_str(src)?;
        file.into_variety()
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Variety> {
        let path = path.as_ref();
        let src = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidVariety(format!("cannot read {}: {e}", path.display())))?;
        Variety::from_json(&src)
    }

    pub fn to_file(&self) -> VarietyFile {
        VarietyFile {
            name: self.name.clone(),
            identities: self.identities.iter().map(ToString::to_string).collect(),
            products: self.num_products,
            lambda_mu: match &self.rules {
                Some(ProductRules::LambdaMu(r)) => Some(r.clone()),
                _ => None,
            },
            preset: self.preset,
        }
    }
}

/// On-disk representation of a [`Variety`]. A `preset` overrides every other field.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VarietyFile {
    #[serde(default)]
    pub name: String,
    #[serde(default)]
    pub identities: Vec<String>,
    #[serde(default = "one")]
    pub products: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda_mu: Option<LambdaMuRules>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<Preset>,
}

fn one() -> usize {
    1
}

impl VarietyFile {
    pub fn into_variety(self) -> Result<Variety> {
        if let Some(p) = self.preset {
            return Ok(Variety::preset(p));
        }
        if self.identities.is_empty() {
            return Err(Error::InvalidVariety("no identities and no preset".into()));
        }
        let rules = Some(ProductRules::LambdaMu(self.lambda_mu.unwrap_or_else(LambdaMuRules::standard)));
        let sources: Vec<&str> = self.identities.iter().map(String::as_str).collect();
        let name = if self.name.is_empty() { "custom".to_string() } else { self.name };
        Variety::new(name, self.products, &sources, rules)
    }
}
