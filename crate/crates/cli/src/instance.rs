use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use gfl_core::ffcore::{is_prime, Gf};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Flagmap,
    Valuation,
    Curve,
    Ladic,
    Projgeom,
}

/// An instance file: kind tag, field and level parameters, and a payload
/// whose schema depends on the subcommand.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    pub kind: Kind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ell: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub payload: Value,
}

/// Parameters supplied on the command line; they fill fields the instance
/// leaves out.
#[derive(Clone, Copy, Debug, Default)]
pub struct Overrides {
    pub p: Option<u32>,
    pub ell: Option<u32>,
    pub m: Option<u32>,
}

impl Instance {
    pub fn parse(bytes: &[u8]) -> Result<Instance> {
        serde_json::from_slice(bytes).context("malformed instance")
    }

    pub fn with_defaults(mut self, o: Overrides) -> Instance {
        self.p = self.p.or(o.p);
        self.ell = self.ell.or(o.ell);
        self.m = self.m.or(o.m);
        self
    }

    pub fn expect(&self, kind: Kind) -> Result<()> {
        if self.kind != kind {
            bail!("expected an instance of kind {kind:?}, got {:?}", self.kind);
        }
        Ok(())
    }

    /// Checks the standing assumptions on the parameters. Incidence data
    /// carries no characteristic, so projgeom instances only need a prime
    /// field when one is given.
    pub fn validate(&self) -> Result<()> {
        if let Some(p) = self.p {
            if !is_prime(p) {
                bail!("p = {p} is not prime");
            }
            if p == 2 && self.kind != Kind::Projgeom {
                bail!("p = 2 is excluded");
            }
        }
        if let Some(l) = self.ell {
            if !is_prime(l) {
                bail!("ell = {l} is not prime");
            }
            if self.p == Some(l) {
                bail!("ell must differ from p");
            }
        }
        if self.m == Some(0) {
            bail!("level must be at least 1");
        }
        Ok(())
    }

    pub fn field(&self) -> Result<Gf> {
        let p = self.p.context("instance needs p")?;
        Ok(Gf::prime(p)?)
    }

    pub fn level(&self) -> Result<(u32, u32)> {
        Ok((self.ell.context("instance needs ell")?, self.m.context("instance needs a level m")?))
    }

    pub fn payload<T: serde::de::DeserializeOwned>(&self) -> Result<T> {
        serde_json::from_value(self.payload.clone()).context("malformed payload")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(kind: Kind, p: u32, ell: u32) -> Instance {
        Instance { kind, p: Some(p), ell: Some(ell), m: Some(1), seed: None, payload: Value::Null }
    }

    #[test]
    fn standing_assumptions() {
        assert!(inst(Kind::Flagmap, 3, 5).validate().is_ok());
        assert!(inst(Kind::Flagmap, 5, 5).validate().is_err());
        assert!(inst(Kind::Curve, 2, 3).validate().is_err());
        assert!(inst(Kind::Ladic, 9, 5).validate().is_err());
        assert!(inst(Kind::Projgeom, 2, 3).validate().is_ok());
    }
}
