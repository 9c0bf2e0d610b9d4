use serde::Serialize;

/// One failed instance of an axiom. `site` holds the generator (or group
/// generator) indices where the failure was observed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: String,
    pub site: Vec<usize>,
    pub detail: String,
}

impl Violation {
    pub fn new(axiom: &str, site: Vec<usize>, detail: impl Into<String>) -> Self {
        Violation {
            axiom: axiom.to_string(),
            site,
            detail: detail.into(),
        }
    }
}
