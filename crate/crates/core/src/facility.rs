//! Uncapacitated facility location as a set function over customers.

use serde::{Deserialize, Serialize};

use crate::error::{capability, Error, Result};
use crate::setfn::{Flags, SetFunction};
use crate::subset::Subset;

pub const MAX_FACILITIES: usize = 20;

/// JSON form `{"customers": int, "facilities": int, "open": [...], "connect": [[...]]}`;
/// `connect[i][j]` is the cost of serving customer `i` from facility `j`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FacilityInstance {
    pub customers: usize,
    pub facilities: usize,
    pub open: Vec<f64>,
    pub connect: Vec<Vec<f64>>,
}

impl FacilityInstance {
    pub fn new(open: Vec<f64>, connect: Vec<Vec<f64>>) -> Result<Self> {
        let inst = FacilityInstance {
            customers: connect.len(),
            facilities: open.len(),
            open,
            connect,
        };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<()> {
        capability("facility count", self.facilities, MAX_FACILITIES)?;
        if self.open.len() != self.facilities || self.connect.len() != self.customers {
            return Err(Error::Invalid(
                "facility instance dimensions disagree".into(),
            ));
        }
        if let Some((j, o)) = self
            .open
            .iter()
            .enumerate()
            .find(|(_, &o)| o.is_nan() || o < 0.0)
        {
            return Err(Error::Domain(format!(
                "opening cost of facility {j} is {o}"
            )));
        }
        for (i, row) in self.connect.iter().enumerate() {
            if row.len() != self.facilities {
                return Err(Error::Invalid(format!(
                    "customer {} has {} connection costs",
                    i + 1,
                    row.len()
                )));
            }
            if row.iter().any(|&c| !c.is_finite() || c < 0.0) {
                return Err(Error::Domain(format!(
                    "customer {} has a negative connection cost",
                    i + 1
                )));
            }
        }
        Ok(())
    }
}

/// Cheapest way to serve `s`: open some facilities and connect every customer
/// to its nearest open one, by enumerating all facility subsets. `FL(∅) = 0`.
pub fn facility_location(inst: &FacilityInstance, s: Subset) -> Result<f64> {
    if s.is_empty() {
        return Ok(0.0);
    }
    if inst.facilities == 0 {
        return Err(Error::Infeasible(
            "customers to serve but no facilities".into(),
        ));
    }
    capability("facility count", inst.facilities, MAX_FACILITIES)?;
    let mut best = f64::INFINITY;
    for open in Subset::full(inst.facilities).subsets().skip(1) {
        let mut cost: f64 = open.iter().map(|j| inst.open[j]).sum();
        for i in s.iter() {
            cost += open
                .iter()
                .map(|j| inst.connect[i][j])
                .fold(f64::INFINITY, f64::min);
        }
        best = best.min(cost);
    }
    Ok(best)
}

/// [`facility_location`] as an oracle; construction checks feasibility once.
pub struct FacilityOracle {
    inst: FacilityInstance,
}

impl FacilityOracle {
    pub fn new(inst: FacilityInstance) -> Result<Self> {
        inst.validate()?;
        if inst.facilities == 0 && inst.customers > 0 {
            return Err(Error::Infeasible(
                "customers to serve but no facilities".into(),
            ));
        }
        Ok(Self { inst })
    }
}

impl SetFunction for FacilityOracle {
    fn n(&self) -> usize {
        self.inst.customers
    }

    fn eval(&self, s: Subset) -> f64 {
        facility_location(&self.inst, s).expect("validated at construction")
    }

    fn flags(&self) -> Flags {
        Flags {
            normalized: true,
            nonnegative: true,
            nondecreasing: true,
            subadditive: true,
            submodular: false,
            s_minimal: true,
        }
    }
}
