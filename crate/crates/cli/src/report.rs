use std::time::Instant;

use serde_json::{json, Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

pub struct Case {
    pub name: String,
    pub status: Status,
    pub data: Value,
}

/// Why a run stopped early. Cases gathered so far are still reported.
#[derive(Debug)]
pub enum Abort {
    Usage(String),
    Bound(String),
    Other(String),
}

impl Abort {
    pub fn message(&self) -> &str {
        match self {
            Abort::Usage(m) | Abort::Bound(m) | Abort::Other(m) => m,
        }
    }
}

pub struct Report {
    command: String,
    parameters: Map<String, Value>,
    cases: Vec<Case>,
    abort: Option<Abort>,
    started: Instant,
}

impl Report {
    pub fn new(command: &str, parameters: Map<String, Value>) -> Self {
        Report {
            command: command.to_string(),
            parameters,
            cases: Vec::new(),
            abort: None,
            started: Instant::now(),
        }
    }

    pub fn push(&mut self, name: impl Into<String>, pass: bool, data: Value) {
        self.cases.push(Case {
            name: name.into(),
            status: if pass { Status::Pass } else { Status::Fail },
            data,
        });
    }

    pub fn abort(&mut self, a: Abort) {
        self.abort = Some(a);
    }

    fn failed(&self) -> usize {
        self.cases.iter().filter(|c| c.status == Status::Fail).count()
    }

    /// 0 all passed, 1 some case failed, 2 usage error, 3 resource bound.
    pub fn exit_code(&self) -> u8 {
        match &self.abort {
            Some(Abort::Usage(_)) => 2,
            Some(Abort::Bound(_)) => 3,
            Some(Abort::Other(_)) => 1,
            None if self.failed() > 0 => 1,
            None => 0,
        }
    }

    pub fn to_json(&self) -> Value {
        let failed = self.failed();
        json!({
            "command": self.command,
            "parameters": self.parameters,
            "cases": self.cases.iter().map(|c| json!({
                "name": c.name,
                "status": if c.status == Status::Pass { "pass" } else { "fail" },
                "data": c.data,
            })).collect::<Vec<_>>(),
            "summary": {
                "total": self.cases.len(),
                "passed": self.cases.len() - failed,
                "failed": failed,
            },
            "error": self.abort.as_ref().map(|a| a.message().to_string()),
            "wall_time_ms": self.started.elapsed().as_millis() as u64,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.command);
        for c in &self.cases {
            let tag = if c.status == Status::Pass { "PASS" } else { "FAIL" };
            out += &format!("[{tag}] {}\n", c.name);
            if let Value::Object(map) = &c.data {
                for (k, v) in map {
                    out += &format!("    {k}: {}\n", plain(v));
                }
            }
        }
        if let Some(a) = &self.abort {
            out += &format!("error: {}\n", a.message());
        }
        let failed = self.failed();
        out += &format!(
            "{} cases, {} passed, {} failed ({} ms)\n",
            self.cases.len(),
            self.cases.len() - failed,
            failed,
            self.started.elapsed().as_millis()
        );
        out
    }
}

// JSON without quotes around strings, for terminal output.
fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => format!("[{}]", items.iter().map(plain).collect::<Vec<_>>().join(", ")),
        Value::Object(map) => format!(
            "{{{}}}",
            map.iter().map(|(k, v)| format!("{k}: {}", plain(v))).collect::<Vec<_>>().join(", ")
        ),
        other => other.to_string(),
    }
}
