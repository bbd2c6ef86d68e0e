use std::time::Instant;

use mdlp_core::instance::InstanceDoc;
use serde::Serialize;
use serde_json::Value;

/// Process exit statuses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success = 0,
    NotFound = 1,
    Invalid = 2,
    Budget = 3,
}

/// A failed command: the status to exit with and a message.
#[derive(Debug)]
pub struct Failure {
    pub status: Status,
    pub message: String,
    /// Partial results worth reporting despite the failure.
    pub payload: Option<Value>,
}

impl Failure {
    pub fn new(status: Status, message: impl ToString) -> Self {
        Failure {
            status,
            message: message.to_string(),
            payload: None,
        }
    }

    pub fn invalid(message: impl ToString) -> Self {
        Failure::new(Status::Invalid, message)
    }

    pub fn with_payload(mut self, payload: Value) -> Self {
        self.payload = Some(payload);
        self
    }
}

/// What a command produced on success.
pub struct Output {
    pub instance: Option<InstanceDoc>,
    pub result: Value,
    pub work: Option<u64>,
    /// Commands with non-JSON output (table, bench) print it themselves.
    pub raw: Option<String>,
}

impl Output {
    pub fn json(result: impl Serialize) -> Self {
        Output {
            instance: None,
            result: to_value(result),
            work: None,
            raw: None,
        }
    }

    pub fn raw(text: String) -> Self {
        Output {
            instance: None,
            result: Value::Null,
            work: None,
            raw: Some(text),
        }
    }

    pub fn with_instance(mut self, doc: InstanceDoc) -> Self {
        self.instance = Some(doc);
        self
    }

    pub fn with_work(mut self, work: u64) -> Self {
        self.work = Some(work);
        self
    }
}

pub fn to_value(x: impl Serialize) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub instance: Option<InstanceDoc>,
    pub result: Value,
    pub work: Option<u64>,
    pub wall_ms: f64,
    pub status: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl RunReport {
    pub fn finish(command: Vec<String>, started: Instant, outcome: &Result<Output, Failure>) -> Self {
        let wall_ms = started.elapsed().as_secs_f64() * 1e3;
        match outcome {
            Ok(out) => RunReport {
                command,
                instance: out.instance.clone(),
                result: out.result.clone(),
                work: out.work,
                wall_ms,
                status: Status::Success as i32,
                error: None,
            },
            Err(f) => RunReport {
                command,
                instance: None,
                result: f.payload.clone().unwrap_or(Value::Null),
                work: None,
                wall_ms,
                status: f.status as i32,
                error: Some(f.message.clone()),
            },
        }
    }
}
