//! JSON input documents.

use std::collections::BTreeMap;

use groupoid_homology::abelian::IntMatrix;
use groupoid_homology::groupoid::{validate_groupoid, FiniteGroupoid, GroupoidError};
use groupoid_homology::sft::SftSpec;
use serde::{Deserialize, Serialize};

use crate::CliError;

/// One groupoid description, discriminated by `"kind"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Body {
    /// Explicit structure maps; `compose` lists triples `[a, b, a.b]`.
    FiniteGroupoid {
        arrows: usize,
        units: Vec<usize>,
        source: Vec<usize>,
        range: Vec<usize>,
        inverse: Vec<usize>,
        compose: Vec<[usize; 3]>,
    },
    Sft {
        matrix: Vec<Vec<i64>>,
    },
    DisjointUnion {
        parts: Vec<Body>,
    },
    Group {
        table: Vec<Vec<usize>>,
    },
    CyclicGroup {
        order: usize,
    },
    Pair {
        points: usize,
    },
    UnitGroupoid {
        points: usize,
    },
    Transformation {
        table: Vec<Vec<usize>>,
        action: Vec<Vec<usize>>,
    },
    EquivalenceRelation {
        points: usize,
        partition: Vec<Vec<usize>>,
    },
    GroupBundle {
        tables: Vec<Vec<Vec<usize>>>,
    },
}

/// A body plus named arrow subsets (unit sets for covers, arrow sets for
/// subgroupoids), indexed in the arrow numbering of the whole groupoid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDocument {
    #[serde(flatten)]
    pub body: Body,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub subsets: BTreeMap<String, Vec<usize>>,
}

/// What a document describes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Model {
    Finite(FiniteGroupoid),
    /// One or more shift-of-finite-type parts.
    Sft(Vec<SftSpec>),
}

impl InputDocument {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    /// Document listing the structure maps of `g`.
    pub fn from_groupoid(g: &FiniteGroupoid) -> Self {
        InputDocument {
            body: Body::FiniteGroupoid {
                arrows: g.arrow_count(),
                units: g.units().to_vec(),
                source: g.sources().to_vec(),
                range: g.ranges().to_vec(),
                inverse: g.inverses().to_vec(),
                compose: g.composition_table().iter().map(|(&(a, b), &c)| [a, b, c]).collect(),
            },
            subsets: BTreeMap::new(),
        }
    }

    /// Builds the described object; groupoid axioms are enforced.
    pub fn model(&self) -> Result<Model, CliError> {
        build(&self.body, true)
    }

    /// Like [`InputDocument::model`] but explicit groupoids only get
    /// structural checks, so that axioms can be reported separately.
    pub fn model_unchecked(&self) -> Result<Model, CliError> {
        build(&self.body, false)
    }

    pub fn subset(&self, name: &str) -> Result<&[usize], CliError> {
        self.subsets
            .get(name)
            .map(Vec::as_slice)
            .ok_or_else(|| CliError::Parse(format!("no subset named {name:?}")))
    }
}

fn invalid(e: GroupoidError) -> CliError {
    CliError::Invalid(e.to_string())
}

fn build(body: &Body, check_axioms: bool) -> Result<Model, CliError> {
    let g = match body {
        Body::FiniteGroupoid {
            arrows,
            units,
            source,
            range,
            inverse,
            compose,
        } => {
            let table: BTreeMap<(usize, usize), usize> = compose.iter().map(|&[a, b, c]| ((a, b), c)).collect();
            if table.len() != compose.len() {
                return Err(CliError::Parse("composition table lists a pair twice".into()));
            }
            let g = FiniteGroupoid::new(*arrows, units.clone(), source.clone(), range.clone(), inverse.clone(), table)
                .map_err(invalid)?;
            if check_axioms {
                let report = validate_groupoid(&g);
                if !report.is_empty() {
                    return Err(invalid(GroupoidError::Axioms(report)));
                }
            }
            g
        }
        Body::Sft { matrix } => {
            let m = IntMatrix::from_rows(matrix);
            let spec = SftSpec::new(m).map_err(|e| CliError::Invalid(e.to_string()))?;
            return Ok(Model::Sft(vec![spec]));
        }
        Body::DisjointUnion { parts } => {
            let models = parts
                .iter()
                .map(|p| build(p, check_axioms))
                .collect::<Result<Vec<_>, _>>()?;
            if models.iter().all(|m| matches!(m, Model::Sft(_))) && !models.is_empty() {
                let specs = models
                    .into_iter()
                    .flat_map(|m| match m {
                        Model::Sft(s) => s,
                        Model::Finite(_) => unreachable!(),
                    })
                    .collect();
                return Ok(Model::Sft(specs));
            }
            let mut gs = Vec::new();
            for m in models {
                match m {
                    Model::Finite(g) => gs.push(g),
                    Model::Sft(_) => {
                        return Err(CliError::Parse(
                            "a disjoint union cannot mix shift and finite groupoid parts".into(),
                        ))
                    }
                }
            }
            FiniteGroupoid::disjoint_union(&gs)
        }
        Body::Group { table } => FiniteGroupoid::group(table).map_err(invalid)?,
        Body::CyclicGroup { order } => {
            if *order == 0 {
                return Err(CliError::Invalid("cyclic group order must be positive".into()));
            }
            FiniteGroupoid::cyclic_group(*order)
        }
        Body::Pair { points } => FiniteGroupoid::pair(*points),
        Body::UnitGroupoid { points } => FiniteGroupoid::unit_groupoid(*points),
        Body::Transformation { table, action } => FiniteGroupoid::transformation(table, action).map_err(invalid)?,
        Body::EquivalenceRelation { points, partition } => {
            FiniteGroupoid::equivalence_relation(*points, partition).map_err(invalid)?
        }
        Body::GroupBundle { tables } => FiniteGroupoid::group_bundle(tables).map_err(invalid)?,
    };
    Ok(Model::Finite(g))
}
