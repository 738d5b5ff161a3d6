//! s-trees as JSON: the subshift, the constants block and the nodes keyed by
//! word label (`""` for the root, `"021"`, or `".12.0"` past ten symbols).

use std::collections::BTreeMap;

use ahlfors_core::stree::{Node, STree, TreeConstants, TreeOrigin};
use ahlfors_core::symbolic::{SubshiftFT, Word};
use serde::{Deserialize, Serialize};

use crate::error::FormatError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TreeDoc {
    pub alphabet: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transition: Option<Vec<Vec<u8>>>,
    pub origin: OriginDoc,
    pub constants: ConstantsDoc,
    pub nodes: BTreeMap<String, NodeDoc>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstantsDoc {
    #[serde(rename = "C")]
    pub c: f64,
    #[serde(rename = "D")]
    pub d: f64,
    pub rho: f64,
    #[serde(rename = "R")]
    pub big_r: f64,
    #[serde(rename = "E")]
    pub e: f64,
    pub s: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeDoc {
    pub x: Vec<f64>,
    pub r: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum OriginDoc {
    Ifs,
    Packing { delta: f64 },
    Power { m: usize },
    Other,
}

impl From<&STree> for TreeDoc {
    fn from(tree: &STree) -> Self {
        let k = tree.constants;
        TreeDoc {
            alphabet: tree.shift().alphabet(),
            transition: (!tree.shift().is_full()).then(|| tree.shift().rows()),
            origin: match tree.origin {
                TreeOrigin::Ifs => OriginDoc::Ifs,
                TreeOrigin::Packing { delta } => OriginDoc::Packing { delta },
                TreeOrigin::Power { m } => OriginDoc::Power { m },
                TreeOrigin::Other => OriginDoc::Other,
            },
            constants: ConstantsDoc {
                c: k.c,
                d: k.d,
                rho: k.rho,
                big_r: k.big_r,
                e: k.e,
                s: tree.s,
            },
            nodes: tree
                .nodes()
                .map(|(w, n)| {
                    (
                        w.to_label(),
                        NodeDoc {
                            x: n.x.clone(),
                            r: n.r,
                        },
                    )
                })
                .collect(),
        }
    }
}

impl TreeDoc {
    pub fn to_tree(&self) -> ahlfors_core::Result<STree> {
        let shift = match &self.transition {
            Some(rows) => {
                if rows.len() != self.alphabet {
                    return Err(ahlfors_core::Error::Domain(format!(
                        "alphabet {} does not match the transition matrix",
                        self.alphabet
                    )));
                }
                SubshiftFT::new(rows)?
            }
            None => SubshiftFT::full(self.alphabet)?,
        };
        let nodes = self
            .nodes
            .iter()
            .map(|(label, n)| {
                Ok((
                    label.parse::<Word>()?,
                    Node {
                        x: n.x.clone(),
                        r: n.r,
                    },
                ))
            })
            .collect::<ahlfors_core::Result<BTreeMap<_, _>>>()?;
        let k = self.constants;
        let origin = match self.origin {
            OriginDoc::Ifs => TreeOrigin::Ifs,
            OriginDoc::Packing { delta } => TreeOrigin::Packing { delta },
            OriginDoc::Power { m } => TreeOrigin::Power { m },
            OriginDoc::Other => TreeOrigin::Other,
        };
        STree::new(
            shift,
            nodes,
            TreeConstants {
                c: k.c,
                d: k.d,
                rho: k.rho,
                big_r: k.big_r,
                e: k.e,
            },
            k.s,
            origin,
        )
    }
}

pub fn tree_to_string(tree: &STree) -> String {
    let mut s = serde_json::to_string_pretty(&TreeDoc::from(tree)).expect("trees serialize");
    s.push('\n');
    s
}

pub fn parse_tree(text: &str) -> Result<TreeDoc, FormatError> {
    Ok(serde_json::from_str(text)?)
}
