//! The system document: a subshift with a potential, an IFS and a conformal
//! map, each optional.
//!
//! ```json
//! {
//!   "alphabet": 2,
//!   "transition": [[1, 1], [1, 0]],
//!   "potential": {"depth": 1, "values": {"0": 1.0, "1": 1.5}},
//!   "ifs": {
//!     "maps": [{"ratio": 0.5, "translation": [0.0]}],
//!     "witness": [{"kind": "box", "lo": [0.0], "hi": [1.0]}]
//!   },
//!   "map": {"kind": "inversion", "center": [2.0], "radius": 1.0}
//! }
//! ```
//!
//! Without `transition` the shift is full on `alphabet` symbols, or on one
//! symbol per IFS map. Without `potential` an IFS supplies the geometric
//! potential `log(1/r_i)`. Rotations are row-major lists of rows and default
//! to the identity.

use std::collections::BTreeMap;

use ahlfors_core::geometry::{ConformalMap, Ifs, OpenSet, Primitive, Similarity};
use ahlfors_core::symbolic::{LocallyConstantPotential, SubshiftFT, Word};
use ahlfors_core::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::FormatError;

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alphabet: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transition: Option<Vec<Vec<u8>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub potential: Option<PotentialDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ifs: Option<IfsDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<MapDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PotentialDoc {
    pub depth: usize,
    pub values: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IfsDoc {
    pub maps: Vec<SimilarityDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<PrimitiveDoc>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimilarityDoc {
    pub ratio: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rotation: Option<Vec<Vec<f64>>>,
    pub translation: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum PrimitiveDoc {
    Box { lo: Vec<f64>, hi: Vec<f64> },
    Ball { center: Vec<f64>, radius: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum MapDoc {
    Affine {
        scale: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        rotation: Option<Vec<Vec<f64>>>,
        translation: Vec<f64>,
    },
    Inversion {
        center: Vec<f64>,
        radius: f64,
    },
    /// `z ↦ (az + b)/(cz + d)`, coefficients as `[re, im]`.
    Mobius {
        a: [f64; 2],
        b: [f64; 2],
        c: [f64; 2],
        d: [f64; 2],
    },
}

pub fn parse_system(text: &str) -> std::result::Result<SystemDoc, FormatError> {
    Ok(serde_json::from_str(text)?)
}

pub fn system_to_string(doc: &SystemDoc) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("system documents serialize");
    s.push('\n');
    s
}

fn missing(what: &str) -> Error {
    Error::Domain(format!("system document has no {what:?} section"))
}

impl SystemDoc {
    pub fn shift(&self) -> Result<SubshiftFT> {
        let n = match (&self.transition, self.alphabet, &self.ifs) {
            (Some(rows), _, _) => rows.len(),
            (None, Some(n), _) => n,
            (None, None, Some(ifs)) => ifs.maps.len(),
            (None, None, None) => return Err(missing("transition")),
        };
        if let Some(a) = self.alphabet {
            if a != n {
                return Err(Error::Domain(format!(
                    "alphabet {a} does not match the {n} symbols of the transition matrix"
                )));
            }
        }
        match &self.transition {
            Some(rows) => SubshiftFT::new(rows),
            None => SubshiftFT::full(n),
        }
    }

    /// The subshift and its potential.
    pub fn symbolic(&self) -> Result<(SubshiftFT, LocallyConstantPotential)> {
        let shift = self.shift()?;
        let f = match (&self.potential, &self.ifs) {
            (Some(p), _) => {
                let values = p
                    .values
                    .iter()
                    .map(|(w, &v)| Ok((w.parse::<Word>()?, v)))
                    .collect::<Result<Vec<_>>>()?;
                LocallyConstantPotential::new(&shift, p.depth, values)?
            }
            (None, Some(_)) => LocallyConstantPotential::geometric(&shift, &self.ifs()?.ratios())?,
            (None, None) => return Err(missing("potential")),
        };
        Ok((shift, f))
    }

    pub fn ifs(&self) -> Result<Ifs> {
        let doc = self.ifs.as_ref().ok_or_else(|| missing("ifs"))?;
        let maps = doc
            .maps
            .iter()
            .map(|m| {
                let d = m.translation.len();
                Similarity::new(m.ratio, rotation(m.rotation.as_deref(), d)?, m.translation.clone())
            })
            .collect::<Result<Vec<_>>>()?;
        let ifs = Ifs::new(maps)?;
        match &doc.witness {
            None => Ok(ifs),
            Some(prims) => {
                let prims = prims
                    .iter()
                    .map(|p| match p {
                        PrimitiveDoc::Box { lo, hi } => Primitive::Box {
                            lo: lo.clone(),
                            hi: hi.clone(),
                        },
                        PrimitiveDoc::Ball { center, radius } => Primitive::Ball {
                            center: center.clone(),
                            radius: *radius,
                        },
                    })
                    .collect();
                ifs.with_witness(OpenSet::new(prims)?)
            }
        }
    }

    pub fn map(&self) -> Result<ConformalMap> {
        match self.map.as_ref().ok_or_else(|| missing("map"))? {
            MapDoc::Affine {
                scale,
                rotation: rows,
                translation,
            } => ConformalMap::affine(
                *scale,
                rotation(rows.as_deref(), translation.len())?,
                translation.clone(),
            ),
            MapDoc::Inversion { center, radius } => ConformalMap::inversion(center.clone(), *radius),
            MapDoc::Mobius { a, b, c, d } => {
                let z = |p: &[f64; 2]| Complex64::new(p[0], p[1]);
                ConformalMap::mobius(z(a), z(b), z(c), z(d))
            }
        }
    }

    pub fn with_symbolic(mut self, shift: &SubshiftFT, f: &LocallyConstantPotential) -> Self {
        self.alphabet = Some(shift.alphabet());
        self.transition = (!shift.is_full()).then(|| shift.rows());
        self.potential = Some(PotentialDoc {
            depth: f.depth(),
            values: f.values().into_iter().map(|(w, v)| (w.to_label(), v)).collect(),
        });
        self
    }

    pub fn with_ifs(mut self, ifs: &Ifs) -> Self {
        let maps = ifs
            .maps()
            .iter()
            .map(|m| SimilarityDoc {
                ratio: m.ratio(),
                rotation: rows(m.rotation(), m.dim()),
                translation: m.translation().to_vec(),
            })
            .collect();
        let witness = ifs.witness().map(|u| {
            u.primitives()
                .iter()
                .map(|p| match p {
                    Primitive::Box { lo, hi } => PrimitiveDoc::Box {
                        lo: lo.clone(),
                        hi: hi.clone(),
                    },
                    Primitive::Ball { center, radius } => PrimitiveDoc::Ball {
                        center: center.clone(),
                        radius: *radius,
                    },
                })
                .collect()
        });
        self.ifs = Some(IfsDoc { maps, witness });
        self
    }

    pub fn with_map(mut self, map: &ConformalMap) -> Self {
        self.map = Some(match map {
            ConformalMap::Affine {
                scale,
                rotation,
                translation,
            } => MapDoc::Affine {
                scale: *scale,
                rotation: rows(rotation, translation.len()),
                translation: translation.clone(),
            },
            ConformalMap::Inversion { center, radius } => MapDoc::Inversion {
                center: center.clone(),
                radius: *radius,
            },
            ConformalMap::Mobius { a, b, c, d } => {
                let p = |z: &Complex64| [z.re, z.im];
                MapDoc::Mobius {
                    a: p(a),
                    b: p(b),
                    c: p(c),
                    d: p(d),
                }
            }
        });
        self
    }
}

fn rotation(rows: Option<&[Vec<f64>]>, d: usize) -> Result<Vec<f64>> {
    match rows {
        None => Ok((0..d * d).map(|k| if k % (d + 1) == 0 { 1.0 } else { 0.0 }).collect()),
        Some(rows) => {
            if rows.len() != d || rows.iter().any(|r| r.len() != d) {
                return Err(Error::Domain(format!("rotation must be {d}×{d}")));
            }
            Ok(rows.concat())
        }
    }
}

/// Row form of a rotation, omitted when it is exactly the identity.
fn rows(flat: &[f64], d: usize) -> Option<Vec<Vec<f64>>> {
    let identity = flat
        .iter()
        .enumerate()
        .all(|(k, &q)| q == if k % (d + 1) == 0 { 1.0 } else { 0.0 });
    (!identity).then(|| flat.chunks(d).map(<[f64]>::to_vec).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use ahlfors_core::geometry::systems;
    use ahlfors_core::symbolic::bowen_root;

    #[test]
    fn ifs_alone_gives_full_shift_and_geometric_potential() {
        let doc = parse_system(
            r#"{"ifs": {"maps": [{"ratio": 0.5, "translation": [0.0]},
                                  {"ratio": 0.3333333333333333, "translation": [0.6666666666666666]}]}}"#,
        )
        .unwrap();
        let (shift, f) = doc.symbolic().unwrap();
        assert!(shift.is_full());
        assert_eq!(shift.alphabet(), 2);
        let s = bowen_root(&shift, &f).unwrap();
        assert!((s - 0.7878849110).abs() < 1e-9, "{s}");
        assert!(doc.ifs().unwrap().witness().is_none());
        assert!(doc.map().is_err());
    }

    #[test]
    fn written_documents_read_back_equal() {
        let ifs = systems::sierpinski();
        let shift = SubshiftFT::new(&[vec![1, 1], vec![1, 0]]).unwrap();
        let f = LocallyConstantPotential::from_symbol_values(&shift, &[1.0, 1.5]).unwrap();
        let maps = [
            ConformalMap::inversion(vec![2.0, 0.5], 1.25).unwrap(),
            ConformalMap::affine(3.0, vec![0.0, -1.0, 1.0, 0.0], vec![0.25, 0.0]).unwrap(),
            ConformalMap::mobius(
                Complex64::new(1.0, 0.5),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.1, 0.0),
                Complex64::new(1.0, 0.0),
            )
            .unwrap(),
        ];
        for map in maps {
            let doc = SystemDoc::default()
                .with_symbolic(&shift, &f)
                .with_ifs(&ifs)
                .with_map(&map);
            let back = parse_system(&system_to_string(&doc)).unwrap();
            assert_eq!(back, doc);
            assert_eq!(back.ifs().unwrap(), ifs);
            assert_eq!(back.map().unwrap(), map);
            let (s2, f2) = back.symbolic().unwrap();
            assert_eq!(s2, shift);
            assert_eq!(f2, f);
        }
    }

    #[test]
    fn semantic_errors_keep_their_kind() {
        let reducible = parse_system(r#"{"transition": [[1, 0], [0, 1]], "potential": {"depth": 1, "values": {"0": 1, "1": 1}}}"#)
            .unwrap();
        assert!(matches!(reducible.symbolic(), Err(Error::Structural(_))));
        let short = parse_system(r#"{"alphabet": 2, "potential": {"depth": 1, "values": {"0": 1}}}"#).unwrap();
        assert!(matches!(short.symbolic(), Err(Error::Domain(_))));
        let mismatch = parse_system(r#"{"alphabet": 3, "transition": [[1, 1], [1, 1]]}"#).unwrap();
        assert!(mismatch.shift().is_err());
    }

    #[test]
    fn unknown_fields_are_rejected() {
        assert!(parse_system(r#"{"ifs": {"maps": [], "extra": 1}}"#).is_err());
        assert!(parse_system(r#"{"map": {"kind": "shear"}}"#).is_err());
    }
}
