use serde::Serialize;
use serde_json::Value;

/// One statistic in serialized form:
/// `{statistic, params, value, N, system, seed, tolerances}`.
#[derive(Debug, Clone, Serialize)]
pub struct StatRecord {
    pub statistic: String,
    pub params: Value,
    pub value: Value,
    #[serde(rename = "N")]
    pub n: u64,
    pub system: String,
    pub seed: u64,
    pub tolerances: Value,
}

impl StatRecord {
    pub fn new(statistic: impl Into<String>, system: impl Into<String>, n: u64, value: impl Serialize) -> Self {
        StatRecord {
            statistic: statistic.into(),
            params: Value::Object(Default::default()),
            value: serde_json::to_value(value).unwrap_or(Value::Null),
            n,
            system: system.into(),
            seed: 0,
            tolerances: Value::Object(Default::default()),
        }
    }

    pub fn params(mut self, params: impl Serialize) -> Self {
        self.params = serde_json::to_value(params).unwrap_or(Value::Null);
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn tolerances(mut self, tol: impl Serialize) -> Self {
        self.tolerances = serde_json::to_value(tol).unwrap_or(Value::Null);
        self
    }
}
