//! JSON file formats.
//!
//! Quaternions serialize as the 4-array `[x0, x1, x2, x3]` everywhere.
//! Matrices: `{"n": n, "entries": [[q, ...], ...]}` row-major; vectors use a
//! flat `entries` list. Floats are emitted in shortest round-trip decimal
//! form, so identical values serialize to identical bytes.

use std::fmt;
use std::path::Path;

use serde::de::{self, SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::qlinalg::{QMatrix, QVector};
use crate::quaternion::Quaternion;

impl Serialize for Quaternion {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(4))?;
        for c in [self.x0, self.x1, self.x2, self.x3] {
            seq.serialize_element(&c)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Quaternion {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct QVisitor;
        impl<'de> Visitor<'de> for QVisitor {
            type Value = Quaternion;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a 4-array [x0, x1, x2, x3]")
            }
            fn visit_seq<A: SeqAccess<'de>>(
                self,
                mut seq: A,
            ) -> std::result::Result<Quaternion, A::Error> {
                let mut c = [0.0f64; 4];
                for (idx, slot) in c.iter_mut().enumerate() {
                    *slot = seq
                        .next_element()?
                        .ok_or_else(|| de::Error::invalid_length(idx, &self))?;
                }
                if seq.next_element::<f64>()?.is_some() {
                    return Err(de::Error::invalid_length(5, &self));
                }
                Ok(Quaternion::new(c[0], c[1], c[2], c[3]))
            }
        }
        deserializer.deserialize_seq(QVisitor)
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixFile {
    n: usize,
    entries: Vec<Vec<Quaternion>>,
}

#[derive(Serialize, Deserialize)]
struct VectorFile {
    n: usize,
    entries: Vec<Quaternion>,
}

impl Serialize for QMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let n = self.n();
        let rows = (0..n)
            .map(|r| (0..n).map(|c| self.get(r, c)).collect())
            .collect();
        MatrixFile { n, entries: rows }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let file = MatrixFile::deserialize(deserializer)?;
        if file.n == 0 || file.entries.len() != file.n {
            return Err(de::Error::custom(format!(
                "matrix declares n = {} but has {} rows",
                file.n,
                file.entries.len()
            )));
        }
        for (r, row) in file.entries.iter().enumerate() {
            if row.len() != file.n {
                return Err(de::Error::custom(format!(
                    "row {} has {} entries, expected {}",
                    r,
                    row.len(),
                    file.n
                )));
            }
        }
        QMatrix::from_rows(file.entries).map_err(|e| de::Error::custom(e.to_string()))
    }
}

impl Serialize for QVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        VectorFile {
            n: self.dim(),
            entries: self.entries().to_vec(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let file = VectorFile::deserialize(deserializer)?;
        if file.n == 0 || file.entries.len() != file.n {
            return Err(de::Error::custom(format!(
                "vector declares n = {} but has {} entries",
                file.n,
                file.entries.len()
            )));
        }
        Ok(QVector::from_entries(file.entries))
    }
}

fn parse_error(err: &serde_json::Error) -> Error {
    Error::Parse(format!("line {}, column {}: {}", err.line(), err.column(), err))
}

pub fn matrix_from_json(text: &str) -> Result<QMatrix> {
    serde_json::from_str(text).map_err(|e| parse_error(&e))
}

pub fn read_matrix(path: &Path) -> Result<QMatrix> {
    matrix_from_json(&std::fs::read_to_string(path)?)
}

pub fn vector_from_json(text: &str) -> Result<QVector> {
    serde_json::from_str(text).map_err(|e| parse_error(&e))
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("report serialization cannot fail")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_roundtrip() {
        let t = QMatrix::from_rows(vec![
            vec![Quaternion::new(1.0, 0.5, -2.0, 0.0), Quaternion::J],
            vec![-Quaternion::J, Quaternion::from_real(2.0)],
        ])
        .unwrap();
        let text = to_json(&t);
        let back = matrix_from_json(&text).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn diag_matrix_json_shape() {
        let t = QMatrix::from_real_diag(&[1.0, 4.0]);
        let text = to_json(&t);
        assert_eq!(
            text,
            r#"{"n":2,"entries":[[[1.0,0.0,0.0,0.0],[0.0,0.0,0.0,0.0]],[[0.0,0.0,0.0,0.0],[4.0,0.0,0.0,0.0]]]}"#
        );
    }

    #[test]
    fn malformed_entry_of_length_3_is_rejected_with_position() {
        let bad = r#"{"n":1,"entries":[[[1.0,0.0,0.0]]]}"#;
        let err = matrix_from_json(bad).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line 1"), "{msg}");
        assert!(msg.contains("column"), "{msg}");
    }

    #[test]
    fn row_count_mismatch_is_rejected() {
        let bad = r#"{"n":2,"entries":[[[1,0,0,0],[0,0,0,0]]]}"#;
        assert!(matrix_from_json(bad).is_err());
    }

    #[test]
    fn vector_roundtrip() {
        let v = QVector::from_entries(vec![Quaternion::K, Quaternion::new(1.0, 2.0, 3.0, 4.0)]);
        let text = to_json(&v);
        let back = vector_from_json(&text).unwrap();
        assert_eq!(back, v);
    }
}
