use serde_json::{json, Map, Value};

/// How a command ended. `NotFound` is a normal outcome of the bounded
/// searches, distinct from an error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Ok,
    NotFound,
    Error(String),
}

impl Status {
    pub fn exit_code(&self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::NotFound => 2,
            Status::Error(_) => 1,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub status: Status,
}

impl Report {
    /// The JSON document. Keys come out sorted (serde_json's default map),
    /// so identical inputs give byte-identical output.
    pub fn to_value(&self) -> Value {
        let mut out = Map::new();
        out.insert("command".into(), json!(self.command));
        out.insert("inputs".into(), self.inputs.clone());
        out.insert("results".into(), self.results.clone());
        match &self.status {
            Status::Ok => out.insert("status".into(), json!("ok")),
            Status::NotFound => out.insert("status".into(), json!("not_found")),
            Status::Error(msg) => {
                out.insert("message".into(), json!(msg));
                out.insert("status".into(), json!("error"))
            }
        };
        Value::Object(out)
    }

    pub fn render(&self, pretty: bool) -> String {
        let v = self.to_value();
        let mut s = if pretty { serde_json::to_string_pretty(&v) } else { serde_json::to_string(&v) }
            .expect("reports are plain JSON values");
        s.push('\n');
        s
    }
}
