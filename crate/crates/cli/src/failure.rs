use serde_json::{json, Map, Value};

/// Exit code of a completed run whose verdict is false.
pub const EXIT_FALSE: i32 = 1;
/// Exit code of an input or computation error.
pub const EXIT_ERROR: i32 = 2;

pub struct Outcome {
    pub body: Value,
    pub ok: bool,
}

impl Outcome {
    pub fn ok(body: Value) -> Self {
        Outcome { body, ok: true }
    }

    pub fn verdict(body: Value, ok: bool) -> Self {
        Outcome { body, ok }
    }

    pub fn exit_code(&self) -> i32 {
        if self.ok {
            0
        } else {
            EXIT_FALSE
        }
    }
}

#[derive(Debug)]
pub struct Failure {
    pub code: String,
    pub message: String,
    pub context: Map<String, Value>,
}

impl Failure {
    pub fn new(code: &str, message: impl Into<String>) -> Self {
        Failure {
            code: code.to_string(),
            message: message.into(),
            context: Map::new(),
        }
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.context.insert(key.to_string(), value.into());
        self
    }

    pub fn to_json(&self) -> Value {
        json!({"error": {"code": self.code, "message": self.message, "context": self.context}})
    }
}
