//! Versioned JSON reports.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::classify::ClassReport;

pub const SCHEMA_VERSION: u32 = 1;

/// The JSON schema describing [`Report`], as committed in the repository.
pub const REPORT_SCHEMA: &str = include_str!("../../schema/report.schema.json");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class: Option<ClassReport>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub results: BTreeMap<String, Value>,
}

impl Default for Report {
    fn default() -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            name: None,
            class: None,
            results: BTreeMap::new(),
        }
    }
}

impl Report {
    pub fn for_class(name: Option<&str>, class: ClassReport) -> Self {
        Report {
            name: name.map(str::to_owned),
            class: Some(class),
            ..Default::default()
        }
    }

    pub fn with_result<T: Serialize>(mut self, key: &str, value: &T) -> Self {
        let v = serde_json::to_value(value).expect("report values serialize");
        self.results.insert(key.to_owned(), v);
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

pub fn report_json(r: &Report) -> String {
    r.to_json()
}
