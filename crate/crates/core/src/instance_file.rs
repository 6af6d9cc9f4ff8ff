//! On-disk instance formats.
//!
//! Files are JSON documents with a `"type"` discriminator, either `"3dm"` or `"mldrs"`. Field
//! elements are `0x`-prefixed lowercase hex. The canonical form is the pretty-printed document
//! (two-space indent, fixed key order) followed by a newline, so parsing and re-serializing a
//! canonical file reproduces it byte for byte.

use serde::{Deserialize, Serialize};

use crate::algebra::Matrix;
use crate::error::{Error, Result};
use crate::gf2m::{FieldContext, FieldElement};
use crate::reduction::{BitMatrix, MldRsInstance, Mode, ReductionTrace, ThreeDmInstance, Triple};
use crate::rs_code::{GrsScalers, RsCode};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum InstanceFile {
    #[serde(rename = "3dm")]
    ThreeDm(ThreeDmFile),
    #[serde(rename = "mldrs")]
    MldRs(Box<MldRsFile>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreeDmFile {
    pub t: usize,
    pub triples: Vec<Triple>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MldRsFile {
    pub m: u32,
    pub modulus: String,
    pub k: usize,
    pub w: usize,
    pub evaluation_set: Vec<FieldElement>,
    pub target: Vec<FieldElement>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<TraceFile>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceFile {
    pub mode: Mode,
    pub gamma: FieldElement,
    pub z: Vec<FieldElement>,
    pub phis: Vec<FieldElement>,
    pub syndrome_matrix: Vec<Vec<FieldElement>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w_matrix: Option<Vec<String>>,
    /// Characteristic vector as a `0`/`1` string.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi: Option<String>,
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Canonical text.
    pub fn to_canonical(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("instance files serialize");
        s.push('\n');
        s
    }

    pub fn from_3dm(inst: &ThreeDmInstance) -> Self {
        InstanceFile::ThreeDm(ThreeDmFile {
            t: inst.t(),
            triples: inst.triples().to_vec(),
        })
    }

    pub fn from_mldrs(inst: &MldRsInstance, trace: Option<&ReductionTrace>) -> Self {
        let code = inst.code();
        InstanceFile::MldRs(Box::new(MldRsFile {
            m: inst.ctx().m(),
            modulus: inst.ctx().modulus_hex(),
            k: code.k(),
            w: inst.w(),
            evaluation_set: code.points().to_vec(),
            target: inst.target().to_vec(),
            trace: trace.map(TraceFile::from_trace),
        }))
    }

    pub fn into_3dm(self) -> Result<ThreeDmInstance> {
        match self {
            InstanceFile::ThreeDm(f) => f.to_instance(),
            InstanceFile::MldRs(_) => Err(Error::Parse("expected a 3dm file, found mldrs".into())),
        }
    }

    pub fn into_mldrs(self) -> Result<MldRsInstance> {
        match self {
            InstanceFile::MldRs(f) => f.to_instance(),
            InstanceFile::ThreeDm(_) => {
                Err(Error::Parse("expected an mldrs file, found 3dm".into()))
            }
        }
    }
}

impl ThreeDmFile {
    pub fn to_instance(&self) -> Result<ThreeDmInstance> {
        ThreeDmInstance::new(self.t, self.triples.clone())
    }
}

impl MldRsFile {
    pub fn field(&self) -> Result<FieldContext> {
        let ctx = FieldContext::from_modulus_hex(&self.modulus)?;
        if ctx.m() != self.m {
            return Err(Error::Parse(format!(
                "modulus {} has degree {}, but m = {}",
                self.modulus,
                ctx.m(),
                self.m
            )));
        }
        Ok(ctx)
    }

    pub fn to_instance(&self) -> Result<MldRsInstance> {
        let ctx = self.field()?;
        let code = RsCode::new(ctx, self.evaluation_set.clone(), self.k)?;
        MldRsInstance::new(code, self.w, self.target.clone())
    }

    /// Rebuilds the trace (if present) in the instance's field.
    pub fn to_trace(&self) -> Result<Option<ReductionTrace>> {
        let Some(t) = &self.trace else {
            return Ok(None);
        };
        let ctx = self.field()?;
        for &e in [t.gamma]
            .iter()
            .chain(&t.z)
            .chain(&t.phis)
            .chain(t.syndrome_matrix.iter().flatten())
        {
            ctx.check(e)?;
        }
        let chi = t
            .chi
            .as_ref()
            .map(|s| {
                s.chars()
                    .map(|c| match c {
                        '0' => Ok(false),
                        '1' => Ok(true),
                        _ => Err(Error::Parse(format!("bad digit {c:?} in chi"))),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .transpose()?;
        Ok(Some(ReductionTrace {
            mode: t.mode,
            gamma: t.gamma,
            z: t.z.clone(),
            scalers: GrsScalers::new(t.phis.clone())?,
            syndrome_matrix: Matrix::from_rows(t.syndrome_matrix.clone())?,
            w_matrix: t
                .w_matrix
                .as_deref()
                .map(BitMatrix::from_row_strings)
                .transpose()?,
            chi,
        }))
    }
}

impl TraceFile {
    fn from_trace(tr: &ReductionTrace) -> Self {
        TraceFile {
            mode: tr.mode,
            gamma: tr.gamma,
            z: tr.z.clone(),
            phis: tr.scalers.phis().to_vec(),
            syndrome_matrix: tr.syndrome_matrix.row_iter().map(<[_]>::to_vec).collect(),
            w_matrix: tr.w_matrix.as_ref().map(BitMatrix::row_strings),
            chi: tr
                .chi
                .as_ref()
                .map(|c| c.iter().map(|&b| if b { '1' } else { '0' }).collect()),
        }
    }
}
