//! Point labels.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Opaque label of a point. Products and coproducts build structured labels
/// so that results are deterministic and comparable across runs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PointId {
    Int(i64),
    Name(String),
    Pair(Box<PointId>, Box<PointId>),
    /// Summand index plus the original label, used by coproducts.
    Tagged(usize, Box<PointId>),
}

impl PointId {
    pub fn pair(a: PointId, b: PointId) -> Self {
        PointId::Pair(Box::new(a), Box::new(b))
    }

    pub fn tagged(tag: usize, p: PointId) -> Self {
        PointId::Tagged(tag, Box::new(p))
    }

    /// Parses a textual token: integers become `Int`, anything else `Name`.
    pub fn parse_token(token: &str) -> Self {
        match token.parse::<i64>() {
            Ok(v) => PointId::Int(v),
            Err(_) => PointId::Name(token.to_string()),
        }
    }
}

impl fmt::Display for PointId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointId::Int(v) => write!(f, "{v}"),
            PointId::Name(s) => write!(f, "{s}"),
            PointId::Pair(a, b) => write!(f, "({a},{b})"),
            PointId::Tagged(t, p) => write!(f, "{t}:{p}"),
        }
    }
}

impl From<i64> for PointId {
    fn from(v: i64) -> Self {
        PointId::Int(v)
    }
}

impl From<i32> for PointId {
    fn from(v: i32) -> Self {
        PointId::Int(v as i64)
    }
}

impl From<usize> for PointId {
    fn from(v: usize) -> Self {
        PointId::Int(v as i64)
    }
}

impl From<&str> for PointId {
    fn from(s: &str) -> Self {
        PointId::Name(s.to_string())
    }
}

impl From<String> for PointId {
    fn from(s: String) -> Self {
        PointId::Name(s)
    }
}

impl Serialize for PointId {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            PointId::Int(v) => serializer.serialize_i64(*v),
            other => serializer.serialize_str(&other.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for PointId {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        Ok(match Raw::deserialize(deserializer)? {
            Raw::Int(v) => PointId::Int(v),
            Raw::Str(s) => PointId::Name(s),
        })
    }
}
