//! Set-theoretic functions `α : Z/p^∞ → k` that parameterize the maps
//! `Φ(α)_V([v]) = (l ↦ α(<v, l>))`.

use crate::algebra::epsilon;
use crate::arith::pow_u64;
use crate::error::{Error, Result};
use crate::group::PadicCircle;
use crate::ring::{CycloElem, CycloRing};

#[derive(Clone, Debug, PartialEq)]
pub enum AlphaFunction {
    /// `1/p^r ↦ 2` for every `r ≥ 1`, everything else `↦ 1`. Defined at
    /// every level.
    Tpzc { ring: CycloRing },
    /// Values on `Z/p^level`; `values[a]` is `α(a / p^level)`.
    Table {
        ring: CycloRing,
        level: u32,
        values: Vec<CycloElem>,
    },
}

impl AlphaFunction {
    pub fn tpzc(ring: &CycloRing) -> Self {
        AlphaFunction::Tpzc { ring: ring.clone() }
    }

    pub fn table(ring: &CycloRing, level: u32, values: Vec<CycloElem>) -> Result<Self> {
        let size = pow_u64(ring.prime(), level) as usize;
        if values.len() != size {
            return Err(Error::ShapeMismatch(format!(
                "{} values for a table on Z/{size}",
                values.len()
            )));
        }
        if values.iter().any(|v| v.ring() != ring) {
            return Err(Error::RingMismatch("table value outside the α ring".into()));
        }
        Ok(AlphaFunction::Table {
            ring: ring.clone(),
            level,
            values,
        })
    }

    pub fn from_fn(
        ring: &CycloRing,
        level: u32,
        mut f: impl FnMut(PadicCircle) -> CycloElem,
    ) -> Result<Self> {
        let p = ring.prime();
        let values = (0..pow_u64(p, level))
            .map(|a| f(PadicCircle::new(p, a, level)))
            .collect();
        Self::table(ring, level, values)
    }

    /// The table of `ε` itself, for which `Φ(α) = Φ_ε`.
    pub fn epsilon_table(ring: &CycloRing, level: u32) -> Result<Self> {
        ring.require_root_order(pow_u64(ring.prime(), level))?;
        Self::from_fn(ring, level, |x| epsilon(ring, &x).expect("conductor checked"))
    }

    pub fn ring(&self) -> &CycloRing {
        match self {
            AlphaFunction::Tpzc { ring } | AlphaFunction::Table { ring, .. } => ring,
        }
    }

    pub fn prime(&self) -> u64 {
        self.ring().prime()
    }

    /// `None` when the function is defined on all of `Z/p^∞`.
    pub fn level(&self) -> Option<u32> {
        match self {
            AlphaFunction::Tpzc { .. } => None,
            AlphaFunction::Table { level, .. } => Some(*level),
        }
    }

    /// Fails unless the function is defined on `Z/p^level`.
    pub fn require_level(&self, level: u32) -> Result<()> {
        match self.level() {
            Some(available) if available < level => Err(Error::LevelTooSmall {
                requested: level,
                available,
            }),
            _ => Ok(()),
        }
    }

    pub fn eval(&self, x: &PadicCircle) -> Result<CycloElem> {
        if x.prime() != self.prime() {
            return Err(Error::InvalidArgument(format!(
                "argument in Z/{}^∞, function on Z/{}^∞",
                x.prime(),
                self.prime()
            )));
        }
        match self {
            AlphaFunction::Tpzc { ring } => Ok(if x.level() >= 1 && x.numerator() == 1 {
                ring.from_integer(2)
            } else {
                ring.one()
            }),
            AlphaFunction::Table { level, values, .. } => {
                self.require_level(x.level())?;
                Ok(values[x.numerator_at(*level) as usize].clone())
            }
        }
    }

    /// `α(a / p^level)`.
    pub fn eval_at(&self, a: u64, level: u32) -> Result<CycloElem> {
        self.eval(&PadicCircle::new(self.prime(), a, level))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tpzc_values() {
        let r2 = CycloRing::new(4, 2).unwrap();
        let a = AlphaFunction::tpzc(&r2);
        assert_eq!(a.eval(&PadicCircle::zero(2)).unwrap(), r2.one());
        assert_eq!(a.eval_at(1, 2).unwrap(), r2.from_integer(2));
        assert_eq!(a.eval_at(3, 2).unwrap(), r2.one());
        assert_eq!(a.eval_at(2, 2).unwrap(), r2.from_integer(2), "2/4 = 1/2");
        let r3 = CycloRing::new(6, 3).unwrap();
        assert_eq!(AlphaFunction::tpzc(&r3).eval_at(2, 1).unwrap(), r3.one());
        assert_eq!(AlphaFunction::tpzc(&r3).eval_at(1, 5).unwrap(), r3.from_integer(2));
    }

    #[test]
    fn table_lookup_across_levels() {
        let r = CycloRing::new(9, 3).unwrap();
        let a = AlphaFunction::from_fn(&r, 2, |x| r.from_integer(x.numerator_at(2) as i64)).unwrap();
        assert_eq!(a.eval_at(1, 1).unwrap(), r.from_integer(3));
        assert_eq!(a.eval_at(7, 2).unwrap(), r.from_integer(7));
        assert_eq!(
            a.eval_at(1, 3),
            Err(Error::LevelTooSmall {
                requested: 3,
                available: 2
            })
        );
    }

    #[test]
    fn epsilon_table_needs_roots() {
        let r = CycloRing::new(4, 2).unwrap();
        let e = AlphaFunction::epsilon_table(&r, 2).unwrap();
        assert_eq!(e.eval_at(1, 2).unwrap(), r.zeta_power(1));
        assert!(AlphaFunction::epsilon_table(&r, 3).is_err());
    }
}
