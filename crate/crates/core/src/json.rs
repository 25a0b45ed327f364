//! Graph interchange format:
//!
//! ```json
//! {"darts": 6, "sigma": [1, 2, 0, 4, 5, 3], "alpha": [3, 5, 4, 0, 2, 1],
//!  "lengths": ["1/1", "2/1", "3/2"]}
//! ```
//!
//! `sigma` and `alpha` are image arrays. `lengths` is optional and lists one
//! exact rational per edge, edges ordered by their smallest dart.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::map::{MapError, MetricRibbonGraph, RibbonGraph, RELAXED_MIN_DEGREE};
use crate::permutation::Permutation;
use crate::rational::{self, ParseRationalError, Rational};

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("malformed graph JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("\"darts\" is {declared} but {field} has {actual} entries")]
    DartCount {
        declared: usize,
        field: &'static str,
        actual: usize,
    },
    #[error(transparent)]
    Rational(#[from] ParseRationalError),
    #[error(transparent)]
    Permutation(#[from] crate::permutation::PermutationError),
    #[error(transparent)]
    Map(#[from] MapError),
}

#[derive(Debug, Serialize, Deserialize)]
struct GraphDoc {
    darts: usize,
    sigma: Vec<usize>,
    alpha: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    lengths: Option<Vec<String>>,
}

/// A graph read from JSON, with its lengths if the document had any.
#[derive(Debug, Clone)]
pub struct GraphInput {
    pub graph: RibbonGraph,
    pub lengths: Option<Vec<Rational>>,
}

impl GraphInput {
    /// The metric graph, with unit lengths when none were given.
    pub fn metric(&self) -> Result<MetricRibbonGraph, MapError> {
        match &self.lengths {
            Some(l) => MetricRibbonGraph::new(self.graph.clone(), l.clone()),
            None => Ok(MetricRibbonGraph::unit(self.graph.clone())),
        }
    }
}

pub fn graph_to_json(graph: &RibbonGraph, lengths: Option<&[Rational]>) -> Value {
    let mut value = json!({
        "darts": graph.n_darts(),
        "sigma": graph.sigma().images(),
        "alpha": graph.alpha().images(),
    });
    if let Some(lengths) = lengths {
        value["lengths"] = json!(lengths.iter().map(rational::format).collect::<Vec<_>>());
    }
    value
}

pub fn metric_to_json(metric: &MetricRibbonGraph) -> Value {
    graph_to_json(metric.graph(), Some(metric.lengths()))
}

/// Parses a graph document. Vertices of any positive degree are accepted.
pub fn graph_from_json(text: &str) -> Result<GraphInput, JsonError> {
    let doc: GraphDoc = serde_json::from_str(text)?;
    for (field, actual) in [("sigma", doc.sigma.len()), ("alpha", doc.alpha.len())] {
        if actual != doc.darts {
            return Err(JsonError::DartCount {
                declared: doc.darts,
                field,
                actual,
            });
        }
    }
    let graph = RibbonGraph::new(
        Permutation::from_images(doc.sigma)?,
        Permutation::from_images(doc.alpha)?,
        RELAXED_MIN_DEGREE,
    )?;
    let lengths = doc
        .lengths
        .map(|ls| ls.iter().map(|s| rational::parse(s)).collect::<Result<Vec<_>, _>>())
        .transpose()?;
    if let Some(ls) = &lengths {
        MetricRibbonGraph::new(graph.clone(), ls.clone())?;
    }
    Ok(GraphInput { graph, lengths })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::zoo;
    use crate::rational::{int, ratio};

    #[test]
    fn roundtrip_plain_and_metric() {
        let g = zoo::planar_theta();
        let text = graph_to_json(&g, None).to_string();
        let back = graph_from_json(&text).unwrap();
        assert_eq!(back.graph, g);
        assert!(back.lengths.is_none());

        let lengths = vec![int(1), ratio(3, 2), int(2)];
        let m = MetricRibbonGraph::new(g, lengths.clone()).unwrap();
        let back = graph_from_json(&metric_to_json(&m).to_string()).unwrap();
        assert_eq!(back.lengths.unwrap(), lengths);
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(matches!(graph_from_json("{"), Err(JsonError::Syntax(_))));
        assert!(matches!(
            graph_from_json(r#"{"darts": 3, "sigma": [0, 1], "alpha": [1, 0]}"#),
            Err(JsonError::DartCount { .. })
        ));
        assert!(matches!(
            graph_from_json(r#"{"darts": 2, "sigma": [0, 1], "alpha": [0, 1]}"#),
            Err(JsonError::Map(_))
        ));
        assert!(graph_from_json(r#"{"darts": 2, "sigma": [0, 1], "alpha": [1, 0], "lengths": ["-1"]}"#).is_err());
    }
}
