//! Ordered facts rendered either as text or as JSON.

use std::fmt::Write as _;

use gale_core::{ExactMatrix, PointConfiguration, Scalar};
use serde_json::{Map, Value as Json};

/// How a run ended; decides the exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    /// Verified or true.
    Holds,
    /// Mathematically false or absent.
    Fails,
    /// Could not be decided over the working field.
    Indeterminate,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Holds => "holds",
            Status::Fails => "fails",
            Status::Indeterminate => "indeterminate",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Status::Holds => 0,
            Status::Fails => 1,
            Status::Indeterminate => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Fact {
    Text(String),
    Bool(bool),
    Int(u64),
    List(Vec<String>),
    Rows(Vec<Vec<String>>),
}

impl Fact {
    pub fn scalars(v: &[Scalar]) -> Fact {
        Fact::List(v.iter().map(Scalar::to_string).collect())
    }

    pub fn indices(v: &[usize]) -> Fact {
        Fact::List(v.iter().map(usize::to_string).collect())
    }

    pub fn matrix(m: &ExactMatrix) -> Fact {
        Fact::Rows((0..m.rows()).map(|i| m.row(i).iter().map(Scalar::to_string).collect()).collect())
    }

    pub fn points(cfg: &PointConfiguration) -> Fact {
        Fact::matrix(cfg.coords())
    }

    fn to_json(&self) -> Json {
        match self {
            Fact::Text(s) => Json::String(s.clone()),
            Fact::Bool(b) => Json::Bool(*b),
            Fact::Int(n) => Json::from(*n),
            Fact::List(v) => Json::from(v.clone()),
            Fact::Rows(rows) => Json::Array(rows.iter().map(|r| Json::from(r.clone())).collect()),
        }
    }

    /// `key: value` for one-line values; rows go on indented lines.
    fn render(&self, key: &str, prefix: &str, out: &mut String) {
        match self {
            Fact::Text(s) => {
                let _ = writeln!(out, "{prefix}{key}: {s}");
            }
            Fact::Bool(b) => {
                let _ = writeln!(out, "{prefix}{key}: {b}");
            }
            Fact::Int(n) => {
                let _ = writeln!(out, "{prefix}{key}: {n}");
            }
            Fact::List(v) if v.is_empty() => {
                let _ = writeln!(out, "{prefix}{key}:");
            }
            Fact::List(v) => {
                let _ = writeln!(out, "{prefix}{key}: {}", v.join(" "));
            }
            Fact::Rows(rows) => {
                let _ = writeln!(out, "{prefix}{key}:");
                for r in rows {
                    let _ = writeln!(out, "{prefix}  {}", r.join(" "));
                }
            }
        }
    }
}

/// A body that is also a valid input file (a configuration or a matrix), so
/// text output can be piped into another command.
#[derive(Clone, Debug, PartialEq)]
pub enum Document {
    Configuration(PointConfiguration),
    Matrix(ExactMatrix),
}

impl Document {
    fn facts(&self) -> Vec<(&'static str, Fact)> {
        match self {
            Document::Configuration(cfg) => vec![
                ("field", Fact::Text(cfg.field().to_string())),
                ("dim", Fact::Int(cfg.r() as u64)),
                ("points", Fact::Int(cfg.gamma() as u64)),
                ("rows", Fact::points(cfg)),
            ],
            Document::Matrix(m) => vec![("field", Fact::Text(m.field().to_string())), ("rows", Fact::matrix(m))],
        }
    }

    pub fn text(&self) -> String {
        match self {
            Document::Configuration(cfg) => gale_core::format::write_configuration(cfg, &[]),
            Document::Matrix(m) => gale_core::format::write_matrix(m),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    status: Status,
    facts: Vec<(String, Fact)>,
    document: Option<Document>,
}

impl Report {
    pub fn new(command: &str, status: Status) -> Self {
        Report {
            status,
            facts: vec![
                ("command".into(), Fact::Text(command.into())),
                ("result".into(), Fact::Text(status.name().into())),
            ],
            document: None,
        }
    }

    pub fn status(&self) -> Status {
        self.status
    }

    pub fn set_status(&mut self, status: Status) {
        self.status = status;
        self.facts[1].1 = Fact::Text(status.name().into());
    }

    pub fn fact(mut self, key: &str, value: Fact) -> Self {
        self.push(key, value);
        self
    }

    pub fn push(&mut self, key: &str, value: Fact) {
        debug_assert!(self.facts.iter().all(|(k, _)| k != key), "duplicate fact {key}");
        self.facts.push((key.into(), value));
    }

    pub fn with_document(mut self, doc: Document) -> Self {
        self.document = Some(doc);
        self
    }

    pub fn document(&self) -> Option<&Document> {
        self.document.as_ref()
    }

    /// Plain facts, or with a document: the facts as comments followed by
    /// the document itself.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let prefix = if self.document.is_some() { "# " } else { "" };
        for (k, v) in &self.facts {
            v.render(k, prefix, &mut out);
        }
        if let Some(doc) = &self.document {
            out.push_str(&doc.text());
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut map = Map::new();
        for (k, v) in &self.facts {
            map.insert(k.clone(), v.to_json());
        }
        if let Some(doc) = &self.document {
            for (k, v) in doc.facts() {
                map.insert(k.into(), v.to_json());
            }
        }
        let mut s = serde_json::to_string_pretty(&Json::Object(map)).expect("facts serialize");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use gale_core::FieldSpec;

    #[test]
    fn text_and_json_keep_order() {
        let r = Report::new("demo", Status::Holds)
            .fact("zeta", Fact::Int(3))
            .fact("alpha", Fact::List(vec!["1".into(), "-1/2".into()]))
            .fact("rows", Fact::Rows(vec![vec!["1".into(), "0".into()]]));
        assert_eq!(
            r.to_text(),
            "command: demo\nresult: holds\nzeta: 3\nalpha: 1 -1/2\nrows:\n  1 0\n"
        );
        let json = r.to_json();
        assert!(json.find("zeta").unwrap() < json.find("alpha").unwrap());
        let v: Json = serde_json::from_str(&json).unwrap();
        assert_eq!(v["alpha"][1], "-1/2");
    }

    #[test]
    fn documents_become_comment_headers() {
        let cfg = PointConfiguration::from_ints(FieldSpec::Rationals, &[[1, 0], [0, 1], [1, 1]]).unwrap();
        let r = Report::new("t", Status::Fails).with_document(Document::Configuration(cfg.clone()));
        let text = r.to_text();
        assert!(text.starts_with("# command: t\n# result: fails\nfield rational\n"));
        assert_eq!(gale_core::format::parse_configuration(&text).unwrap(), cfg);
        assert_eq!(r.status().exit_code(), 1);
    }
}
