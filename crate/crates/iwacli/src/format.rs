//! On-disk formats: JSON module presentations and Selmer skeletons.
//!
//! Canonical form is pretty-printed JSON with struct field order, sorted
//! maps, trimmed trailing zero coefficients, and a trailing newline; for
//! files in canonical form `serialize(parse(file))` is byte-identical.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use iwacore::harness::SelmerSkeleton;
use iwacore::module::{Flag, PresentedModule};
use iwacore::ring::{IwasawaSeries, RingParams};
use iwacore::Error;

/// A finitely presented module. Relations are rows of the presentation:
/// each is one coefficient vector per generator, integers little-endian
/// in `X`, reduced mod `p^N` on load.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ModuleFile {
    pub p: u64,
    pub precision_p: u32,
    pub precision_x: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u0: Option<u64>,
    pub generators: usize,
    pub relations: Vec<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flags: Option<FlagsFile>,
}

/// Optional provenance flags; values are `"certified"` or `"unknown"`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct FlagsFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub no_finite_submodule: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elementary_iso: Option<String>,
}

/// Synthetic Selmer-side data wrapping an inline module.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct SkeletonFile {
    pub label: String,
    pub module: ModuleFile,
    pub local_lambdas: BTreeMap<String, u64>,
    pub expected_corank: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ck_lambda: Option<u64>,
}

/// Either top-level file shape, distinguished by the `label` field.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum InputFile {
    Skeleton(SkeletonFile),
    Module(ModuleFile),
}

fn parse_flag(s: &Option<String>) -> Result<Flag, Error> {
    match s.as_deref() {
        None | Some("unknown") => Ok(Flag::Unknown),
        Some("certified") => Ok(Flag::Certified),
        Some(_) => Err(Error::BadParams),
    }
}

fn flag_str(f: Flag) -> Option<String> {
    match f {
        Flag::Certified => Some("certified".into()),
        Flag::Unknown => None,
    }
}

impl ModuleFile {
    pub fn to_module(&self) -> Result<PresentedModule, Error> {
        let params = match self.u0 {
            Some(u0) => RingParams::with_u0(self.p, self.precision_p, self.precision_x, u0)?,
            None => RingParams::new(self.p, self.precision_p, self.precision_x)?,
        };
        let relations = self
            .relations
            .iter()
            .map(|rel| {
                rel.iter()
                    .map(|c| IwasawaSeries::from_coeffs(params, c))
                    .collect()
            })
            .collect();
        let mut m = PresentedModule::new(params, self.generators, relations)?;
        if let Some(flags) = &self.flags {
            m.no_finite_submodule = parse_flag(&flags.no_finite_submodule)?;
            m.elementary_iso = parse_flag(&flags.elementary_iso)?;
        }
        Ok(m)
    }

    pub fn from_module(m: &PresentedModule) -> Self {
        let params = m.params();
        let relations = m
            .relations()
            .iter()
            .map(|rel| {
                rel.iter()
                    .map(|s| {
                        let mut c: Vec<i64> = s.coeffs().iter().map(|&x| x as i64).collect();
                        while c.last() == Some(&0) {
                            c.pop();
                        }
                        c
                    })
                    .collect()
            })
            .collect();
        let flags = match (flag_str(m.no_finite_submodule), flag_str(m.elementary_iso)) {
            (None, None) => None,
            (nfs, ei) => Some(FlagsFile {
                no_finite_submodule: nfs,
                elementary_iso: ei,
            }),
        };
        ModuleFile {
            p: params.p(),
            precision_p: params.precision_p(),
            precision_x: params.precision_x(),
            u0: (params.u0() != 1 + params.p()).then(|| params.u0()),
            generators: m.generators(),
            relations,
            flags,
        }
    }
}

impl SkeletonFile {
    pub fn to_skeleton(&self) -> Result<SelmerSkeleton, Error> {
        SelmerSkeleton::new(
            self.label.clone(),
            self.module.to_module()?,
            self.local_lambdas.clone(),
            self.expected_corank,
            self.ck_lambda,
        )
    }
}

/// Canonical serialization: pretty JSON plus a trailing newline.
pub fn to_canonical<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serialization cannot fail");
    s.push('\n');
    s
}
