//! Serializable result records.
//!
//! Integers that may exceed 64 bits are carried as decimal strings.
//! Coefficient lists are sorted lexicographically in `(p, q)`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bounds::{bounds_report, BoundsReport};
use crate::chern::det_cohomology_exponent;
use crate::error::Result;
use crate::hodge::{diamond, hodge_poincare, level_check, ModuliParams};
use crate::sod::{hochschild_columns, sod_residual, HHColumns};
use crate::VERSION;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    Polynomial {
        coefficients: Vec<(u32, u32, String)>,
    },
    Diamond {
        coefficients: Vec<(u32, u32, String)>,
    },
    Betti {
        betti: Vec<(u32, String)>,
        euler: String,
    },
    Bounds {
        report: BoundsReport,
    },
    Chern {
        nu_fiber: String,
        nu_fiber_expected: String,
        c1_det_dual: String,
        ell: u32,
        exponent: String,
        closed_form: String,
    },
    Sod {
        hochschild: Vec<(i64, String)>,
        residual: Vec<(i64, String)>,
        negative_columns: Vec<i64>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub version: String,
    pub rank: u32,
    pub degree: i64,
    pub genus: u32,
    pub fixed_determinant: bool,
    pub dimension: u32,
    #[serde(flatten)]
    pub payload: Payload,
    pub verification: BTreeMap<String, bool>,
}

fn columns(c: &HHColumns) -> Vec<(i64, String)> {
    c.entries().map(|(k, v)| (k, v.to_string())).collect()
}

impl ResultRecord {
    fn new(params: &ModuliParams, payload: Payload, verification: BTreeMap<String, bool>) -> Self {
        ResultRecord {
            version: VERSION.to_string(),
            rank: params.rank,
            degree: params.degree,
            genus: params.genus,
            fixed_determinant: params.fixed_determinant,
            dimension: params.dimension(),
            payload,
            verification,
        }
    }

    pub fn polynomial(params: &ModuliParams) -> Result<Self> {
        let hp = hodge_poincare(params)?;
        let coefficients = hp.terms().map(|(i, j, c)| (i, j, c.to_string())).collect();
        Ok(Self::new(
            params,
            Payload::Polynomial { coefficients },
            BTreeMap::new(),
        ))
    }

    /// Diamond entries; construction already enforces symmetry and duality.
    pub fn diamond(params: &ModuliParams) -> Result<Self> {
        let dm = diamond(params)?;
        let coefficients = dm
            .nonzero()
            .map(|(p, q, v)| (p as u32, q as u32, v.to_string()))
            .collect();
        let mut verification = BTreeMap::new();
        verification.insert("hodge_symmetry".into(), true);
        verification.insert("serre_duality".into(), true);
        verification.insert("level_bound".into(), level_check(&dm).pass());
        Ok(Self::new(
            params,
            Payload::Diamond { coefficients },
            verification,
        ))
    }

    pub fn betti(params: &ModuliParams) -> Result<Self> {
        let dm = diamond(params)?;
        let b = dm.betti();
        Ok(Self::new(
            params,
            Payload::Betti {
                betti: b.terms().map(|(k, c)| (k, c.to_string())).collect(),
                euler: dm.euler().to_string(),
            },
            BTreeMap::new(),
        ))
    }

    pub fn bounds(rank: u32, degree: i64, genus: u32) -> Result<Self> {
        let report = bounds_report(rank, degree, genus)?;
        let params = ModuliParams::fixed(rank, degree, genus)?;
        let mut verification = BTreeMap::new();
        verification.insert("full_vanishing".into(), report.full_vanishing);
        verification.insert(
            "matches_prose_claim".into(),
            report.discrepancies.is_empty(),
        );
        Ok(Self::new(&params, Payload::Bounds { report }, verification))
    }

    pub fn chern(rank: u32, degree: i64, genus: u32) -> Result<Self> {
        let params = ModuliParams::fixed(rank, degree, genus)?;
        let e = det_cohomology_exponent(rank, degree, genus)?;
        let mut verification = BTreeMap::new();
        verification.insert("lemma_equality".into(), e.lemma.check);
        verification.insert("exponent_closed_form".into(), e.exponent == e.closed_form);
        Ok(Self::new(
            &params,
            Payload::Chern {
                nu_fiber: e.lemma.nu_fiber.to_string(),
                nu_fiber_expected: e.lemma.expected.to_string(),
                c1_det_dual: e.c1_det_dual.to_string(),
                ell: e.ell,
                exponent: e.exponent.to_string(),
                closed_form: e.closed_form.to_string(),
            },
            verification,
        ))
    }

    pub fn sod(rank: u32, degree: i64, genus: u32) -> Result<Self> {
        let params = ModuliParams::fixed(rank, degree, genus)?;
        let hh = hochschild_columns(&diamond(&params)?);
        let residual = sod_residual(rank, degree, genus)?;
        let negative_columns: Vec<i64> = residual
            .negative_entries()
            .into_iter()
            .map(|(k, _)| k)
            .collect();
        let mut verification = BTreeMap::new();
        verification.insert("residual_nonnegative".into(), negative_columns.is_empty());
        verification.insert("columns_symmetric".into(), hh.is_symmetric());
        Ok(Self::new(
            &params,
            Payload::Sod {
                hochschild: columns(&hh),
                residual: columns(&residual),
                negative_columns,
            },
            verification,
        ))
    }

    /// True when every verification flag holds.
    pub fn all_verified(&self) -> bool {
        self.verification.values().all(|&v| v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_record_shape() {
        let p = ModuliParams::fixed(2, 1, 2).unwrap();
        let rec = ResultRecord::polynomial(&p).unwrap();
        let json = serde_json::to_value(&rec).unwrap();
        assert_eq!(json["kind"], "polynomial");
        assert_eq!(json["rank"], 2);
        assert_eq!(json["dimension"], 3);
        assert_eq!(json["coefficients"][0], serde_json::json!([0, 0, "1"]));
        let back: ResultRecord = serde_json::from_value(json).unwrap();
        assert_eq!(back, rec);
    }

    #[test]
    fn other_records_round_trip() {
        let p = ModuliParams::fixed(3, 1, 2).unwrap();
        for rec in [
            ResultRecord::diamond(&p).unwrap(),
            ResultRecord::betti(&p).unwrap(),
            ResultRecord::bounds(2, 1, 4).unwrap(),
            ResultRecord::chern(5, 2, 3).unwrap(),
            ResultRecord::sod(2, 1, 2).unwrap(),
        ] {
            let s = serde_json::to_string(&rec).unwrap();
            let back: ResultRecord = serde_json::from_str(&s).unwrap();
            assert_eq!(back, rec);
        }
    }

    #[test]
    fn sod_record_flags_negative_columns() {
        let rec = ResultRecord::sod(2, 1, 2).unwrap();
        assert!(!rec.all_verified());
        match rec.payload {
            Payload::Sod {
                negative_columns, ..
            } => assert_eq!(negative_columns, vec![-1, 0, 1]),
            other => panic!("unexpected payload {other:?}"),
        }
    }
}
