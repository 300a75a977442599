//! JSON interchange formats for chains, element chains, difference cells,
//! polynomial forms, certificates, and norm brackets. All DTOs are f64.

use serde::{Deserialize, Serialize};

use crate::chains::{DifferenceCell, DifferenceChain, PolyChain, Simplex};
use crate::elements::{ElementChain, ElementTerm};
use crate::error::{ChainletError, Result};
use crate::exterior::{KVector, MultiIndex};
use crate::forms::{DifferentialForm, Poly};
use crate::norms::{DecompositionCert, NormBracket};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChainJson {
    pub n: usize,
    pub k: usize,
    pub terms: Vec<ChainTermJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChainTermJson {
    pub coeff: f64,
    pub vertices: Vec<Vec<f64>>,
}

impl ChainJson {
    pub fn from_chain(p: &PolyChain<f64>) -> Self {
        ChainJson {
            n: p.n(),
            k: p.dim(),
            terms: p
                .terms()
                .iter()
                .map(|(a, s)| ChainTermJson {
                    coeff: *a * s.orientation() as f64,
                    vertices: s.vertices().to_vec(),
                })
                .collect(),
        }
    }

    pub fn to_chain(&self) -> Result<PolyChain<f64>> {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                if t.vertices.len() != self.k + 1 {
                    return Err(ChainletError::InvalidInput(format!(
                        "simplex needs {} vertices for dimension {}",
                        self.k + 1,
                        self.k
                    )));
                }
                Ok((t.coeff, Simplex::positively_oriented(t.vertices.clone())?))
            })
            .collect::<Result<Vec<_>>>()?;
        PolyChain::new(self.n, self.k, terms)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DifferenceCellJson {
    pub base: ChainJson,
    pub vectors: Vec<Vec<f64>>,
}

impl DifferenceCellJson {
    pub fn from_cell(c: &DifferenceCell<f64>) -> Self {
        DifferenceCellJson {
            base: ChainJson::from_chain(&c.base),
            vectors: c.vectors.clone(),
        }
    }

    pub fn to_cell(&self) -> Result<DifferenceCell<f64>> {
        Ok(DifferenceCell::new(self.base.to_chain()?, self.vectors.clone()))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KVectorJson {
    pub grade: usize,
    pub coeffs: Vec<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ElementTermJson {
    pub coeff: f64,
    pub point: Vec<f64>,
    pub kvec: KVectorJson,
    pub dvecs: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ElementChainJson {
    pub n: usize,
    pub k: usize,
    pub terms: Vec<ElementTermJson>,
}

impl ElementChainJson {
    pub fn from_chain(e: &ElementChain<f64>) -> Self {
        ElementChainJson {
            n: e.n(),
            k: e.grade(),
            terms: e
                .terms()
                .iter()
                .map(|t| ElementTermJson {
                    coeff: t.coeff,
                    point: t.point.clone(),
                    kvec: KVectorJson {
                        grade: t.kvec.grade(),
                        coeffs: t.kvec.coeffs().to_vec(),
                    },
                    dvecs: t.dvecs.clone(),
                })
                .collect(),
        }
    }

    pub fn to_chain(&self) -> Result<ElementChain<f64>> {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                Ok(ElementTerm {
                    coeff: t.coeff,
                    point: t.point.clone(),
                    kvec: KVector::from_coeffs(self.n, t.kvec.grade, t.kvec.coeffs.clone())?,
                    dvecs: t.dvecs.clone(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        ElementChain::new(self.n, self.k, terms)
    }
}

/// Polynomial form literal: `{n, k, terms: [{H, monomial: {exponents}, coeff}]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FormJson {
    pub n: usize,
    pub k: usize,
    pub terms: Vec<FormTermJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FormTermJson {
    /// 1-based strictly increasing covector indices.
    #[serde(rename = "H")]
    pub h: Vec<usize>,
    pub monomial: MonomialJson,
    pub coeff: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MonomialJson {
    pub exponents: Vec<u32>,
}

impl FormJson {
    pub fn from_polynomial(w: &DifferentialForm<f64>) -> Result<Self> {
        let map = w.polynomial_terms().ok_or_else(|| {
            ChainletError::Unsupported("only polynomial forms serialize".into())
        })?;
        let mut terms = Vec::new();
        for (h, poly) in map {
            for (exps, &coeff) in poly.terms() {
                terms.push(FormTermJson {
                    h: h.indices().to_vec(),
                    monomial: MonomialJson {
                        exponents: exps.clone(),
                    },
                    coeff,
                });
            }
        }
        Ok(FormJson {
            n: w.n(),
            k: w.degree(),
            terms,
        })
    }

    pub fn to_form(&self) -> Result<DifferentialForm<f64>> {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                if t.monomial.exponents.len() != self.n {
                    return Err(ChainletError::InvalidInput(format!(
                        "monomial needs {} exponents",
                        self.n
                    )));
                }
                Ok((
                    MultiIndex::new(t.h.clone(), self.n)?,
                    Poly::monomial(self.n, t.monomial.exponents.clone(), t.coeff),
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        DifferentialForm::polynomial(self.n, self.k, terms)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertJson {
    pub diffs: Vec<Vec<WeightedCellJson>>,
    pub witness: Option<Box<CertWitnessJson>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WeightedCellJson {
    pub coeff: f64,
    #[serde(flatten)]
    pub cell: DifferenceCellJson,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertWitnessJson {
    pub chain: ChainJson,
    pub cert: CertJson,
}

impl CertJson {
    pub fn from_cert(c: &DecompositionCert<f64>) -> Self {
        CertJson {
            diffs: c
                .diffs
                .iter()
                .map(|d| {
                    d.cells
                        .iter()
                        .map(|(a, cell)| WeightedCellJson {
                            coeff: *a,
                            cell: DifferenceCellJson::from_cell(cell),
                        })
                        .collect()
                })
                .collect(),
            witness: c.witness.as_ref().map(|(chain, cert)| {
                Box::new(CertWitnessJson {
                    chain: ChainJson::from_chain(chain),
                    cert: CertJson::from_cert(cert),
                })
            }),
        }
    }

    pub fn to_cert(&self) -> Result<DecompositionCert<f64>> {
        let diffs = self
            .diffs
            .iter()
            .map(|cells| {
                let parsed = cells
                    .iter()
                    .map(|wc| Ok((wc.coeff, wc.cell.to_cell()?)))
                    .collect::<Result<Vec<_>>>()?;
                Ok(DifferenceChain::new(parsed))
            })
            .collect::<Result<Vec<_>>>()?;
        let witness = match &self.witness {
            None => None,
            Some(w) => Some((w.chain.to_chain()?, Box::new(w.cert.to_cert()?))),
        };
        Ok(DecompositionCert { diffs, witness })
    }
}

/// Bracket report: `{r, lower, upper, witnesses}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BracketJson {
    pub r: usize,
    pub lower: f64,
    pub upper: f64,
    pub witnesses: Vec<String>,
}

impl BracketJson {
    pub fn from_bracket(b: &NormBracket<f64>) -> Self {
        BracketJson {
            r: b.r,
            lower: b.lower,
            upper: b.upper,
            witnesses: vec![b.lower_witness.clone(), b.upper_witness.clone()],
        }
    }
}
