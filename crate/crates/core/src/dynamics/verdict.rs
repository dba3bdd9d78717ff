use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{spectral_classify, validate_e, ExactMatrix, LambdaClass, SpectralClass};

/// Morita class supplied alongside `E`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FamilyTag {
    QExterior,
    DoubleNakayama,
    Other,
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyTag::QExterior => "Q_EXTERIOR",
            FamilyTag::DoubleNakayama => "DOUBLE_NAKAYAMA",
            FamilyTag::Other => "OTHER",
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Conclusion {
    ExtFiniteExists,
    NoneExist,
    NeedsFamilyData,
}

impl fmt::Display for Conclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Conclusion::ExtFiniteExists => "EXT_FINITE_EXISTS",
            Conclusion::NoneExist => "NONE_EXIST",
            Conclusion::NeedsFamilyData => "NEEDS_FAMILY_DATA",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Verdict {
    pub spectral: SpectralClass,
    pub family: Option<FamilyTag>,
    pub parameter_generic: Option<bool>,
    pub conclusion: Conclusion,
    pub evidence: Vec<String>,
}

// The q-exterior algebra has E = [[2]]; a Double Nakayama algebra has the
// adjacency matrix of a cycle, i.e. zero diagonal and all row sums 2.
fn family_matches(tag: FamilyTag, ints: &[Vec<num_bigint::BigInt>]) -> bool {
    let two = num_bigint::BigInt::from(2);
    match tag {
        FamilyTag::QExterior => ints.len() == 1 && ints[0][0] == two,
        FamilyTag::DoubleNakayama => {
            ints.len() >= 2
                && ints.iter().enumerate().all(|(i, r)| {
                    r[i] == num_bigint::BigInt::from(0) && r.iter().sum::<num_bigint::BigInt>() == two
                })
        }
        FamilyTag::Other => true,
    }
}

/// Existence of ext-finite non-projective modules, decided from the Perron
/// root of `E` and, when it equals 2, the Morita family and whether its
/// deformation parameter avoids the roots of unity.
pub fn extfinite_verdict(
    e: &ExactMatrix,
    family: Option<FamilyTag>,
    parameter_generic: Option<bool>,
) -> Result<Verdict> {
    let ints = validate_e(e)?;
    if let Some(tag) = family {
        if !family_matches(tag, &ints) {
            return Err(Error::InvalidInput(format!("family {tag} does not match E")));
        }
    }
    let spectral = spectral_classify(e)?;
    let vector: Vec<String> = spectral.perron_vector.iter().map(|c| c.to_string()).collect();
    let mut evidence = vec![
        format!("spectral class {}", spectral.class),
        format!("Perron root {}", spectral.perron_root),
        format!("Perron vector ({})", vector.join(", ")),
    ];
    let conclusion = match spectral.class {
        LambdaClass::AboveTwo => {
            evidence.push(
                "lambda > 2: the Perron projections would have to satisfy X^2 - lambda X + 1 = 0 \
                 along the whole syzygy orbit, which no dimension vector of a non-projective \
                 module can do"
                    .into(),
            );
            Conclusion::NoneExist
        }
        LambdaClass::BelowTwo => {
            evidence.push(
                "lambda < 2: (Fg) holds, so by the only-if direction of the classification \
                 there is no ext-finite non-projective module"
                    .into(),
            );
            Conclusion::NoneExist
        }
        LambdaClass::EqualTwo => match (family, parameter_generic) {
            (None, _) => {
                evidence.push(
                    "lambda = 2: E alone does not fix the Morita class or the deformation \
                     parameter"
                        .into(),
                );
                Conclusion::NeedsFamilyData
            }
            (Some(FamilyTag::Other), _) => {
                evidence.push(
                    "lambda = 2 but the algebra is neither q-exterior nor Double Nakayama".into(),
                );
                Conclusion::NoneExist
            }
            (Some(tag), None) => {
                evidence.push(format!(
                    "lambda = 2 and family {tag}; genericity of the parameter not given"
                ));
                Conclusion::NeedsFamilyData
            }
            (Some(tag), Some(true)) => {
                evidence.push(format!(
                    "lambda = 2, family {tag}, parameter not a root of unity: the modules \
                     C(lambda) and their inductions are ext-finite"
                ));
                Conclusion::ExtFiniteExists
            }
            (Some(tag), Some(false)) => {
                evidence.push(format!(
                    "lambda = 2, family {tag}, parameter a root of unity: (Fg) holds"
                ));
                Conclusion::NoneExist
            }
        },
    };
    Ok(Verdict {
        spectral,
        family,
        parameter_generic,
        conclusion,
        evidence,
    })
}
