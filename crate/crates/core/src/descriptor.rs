//! JSON link descriptors with doubled exponents.
//!
//! ```json
//! {"name": "whitehead", "lk": 0,
//!  "delta": [[1, 1, -1], [1, -1, 1], [-1, 1, 1], [-1, -1, -1]],
//!  "delta_c1": [[0, 1]], "delta_c2": [[0, 1]]}
//! ```

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::alexander::LinkData;
use crate::error::{Error, Result};
use crate::hinv::Axis;
use crate::laurent::{LaurentPoly1, LaurentPoly2};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkDescriptor {
    pub name: String,
    pub lk: i64,
    /// `[doubled_i, doubled_j, coeff]`.
    pub delta: Vec<[i64; 3]>,
    /// `[doubled_k, coeff]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta_c1: Option<Vec<[i64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta_c2: Option<Vec<[i64; 2]>>,
}

impl LinkDescriptor {
    pub fn from_link(link: &LinkData) -> Self {
        let comp = |axis| {
            let p: &LaurentPoly1 = link.component_poly(axis);
            Some(p.terms().map(|(e, c)| [e.doubled(), c]).collect())
        };
        LinkDescriptor {
            name: link.name.clone(),
            lk: link.lk,
            delta: link
                .delta()
                .terms()
                .map(|((i, j), c)| [i.doubled(), j.doubled(), c])
                .collect(),
            delta_c1: comp(Axis::L1),
            delta_c2: comp(Axis::L2),
        }
    }

    /// Validate, symmetrize and normalize. Obstructions are not checked here.
    pub fn to_link(&self) -> Result<LinkData> {
        let delta = LaurentPoly2::from_doubled(self.delta.iter().map(|&[i, j, c]| (i, j, c)));
        let comp = |list: &Option<Vec<[i64; 2]>>| {
            list.as_ref()
                .map(|v| LaurentPoly1::from_doubled(v.iter().map(|&[k, c]| (k, c))))
        };
        LinkData::new(
            self.name.clone(),
            self.lk,
            delta,
            comp(&self.delta_c1),
            comp(&self.delta_c2),
        )
    }
}

pub fn parse_link(text: &str) -> Result<LinkData> {
    let d: LinkDescriptor = serde_json::from_str(text)
        .map_err(|e| Error::Input(format!("malformed link file: {e}")))?;
    d.to_link()
}

pub fn parse_link_file(path: &Path) -> Result<LinkData> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
    parse_link(&text)
}

pub fn serialize_link(link: &LinkData) -> String {
    serde_json::to_string_pretty(&LinkDescriptor::from_link(link)).expect("serializable")
}
