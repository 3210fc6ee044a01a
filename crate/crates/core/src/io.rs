//! JSON file schemas for bases, sets and polygons, and report
//! serialization with 17 significant digits.

use std::io;

use serde::{Deserialize, Serialize};
use serde_json::ser::{Formatter, PrettyFormatter};

use crate::domain2d::Polygon2D;
use crate::error::{Error, Result};
use crate::functional::PolyhedralSet;
use crate::geometry::{HalfPlaneConstraint, PolyhedralBase, VecN};

#[derive(Debug, Clone, Deserialize)]
pub struct ConstraintEntry {
    pub normal: Vec<f64>,
    pub offset: f64,
}

/// `{"dim": n, "constraints": [...]}` or `{"vertices": [[...], ...]}`.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum BaseFile {
    Constraints {
        dim: usize,
        constraints: Vec<ConstraintEntry>,
    },
    Vertices {
        vertices: Vec<Vec<f64>>,
    },
}

impl BaseFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Validation(format!("base file: {e}")))
    }

    pub fn into_base(self) -> Result<PolyhedralBase> {
        match self {
            BaseFile::Constraints { dim, constraints } => {
                if dim < 2 {
                    return Err(Error::Validation(format!("cone dimension must be >= 2, got {dim}")));
                }
                if let Some(c) = constraints.iter().find(|c| c.normal.len() + 1 != dim) {
                    return Err(Error::Validation(format!(
                        "constraint normal {:?} does not have dimension {}",
                        c.normal,
                        dim - 1
                    )));
                }
                let cs = constraints
                    .into_iter()
                    .map(|c| HalfPlaneConstraint::new(c.normal, c.offset))
                    .collect::<Result<Vec<_>>>()?;
                PolyhedralBase::from_constraints(cs)
            }
            BaseFile::Vertices { vertices } => PolyhedralBase::from_vertices(&vertices),
        }
    }
}

/// `{"vertices": [[x, y, z], ...], "facets": [[i, j, k], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SetFile {
    pub vertices: Vec<Vec<f64>>,
    pub facets: Vec<Vec<usize>>,
}

impl SetFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Validation(format!("set file: {e}")))
    }

    pub fn into_set(self) -> Result<PolyhedralSet> {
        let vertices = self
            .vertices
            .into_iter()
            .map(VecN::new)
            .collect::<Result<Vec<_>>>()?;
        PolyhedralSet::new(vertices, self.facets)
    }

    pub fn from_set(set: &PolyhedralSet) -> Self {
        Self {
            vertices: set.vertices().iter().map(|v| v.to_vec()).collect(),
            facets: set.facets().to_vec(),
        }
    }
}

/// `{"vertices": [[x, y], ...]}`.
#[derive(Debug, Clone, Deserialize)]
pub struct PolygonFile {
    pub vertices: Vec<[f64; 2]>,
}

impl PolygonFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Validation(format!("polygon file: {e}")))
    }

    pub fn into_polygon(self) -> Result<Polygon2D> {
        Polygon2D::new(&self.vertices)
    }
}

/// Formats a finite float with 17 significant digits.
pub fn format_f64(x: f64) -> String {
    if x == 0.0 {
        return "0.0".into();
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..16).contains(&exp) {
        format!("{:.*}", (16 - exp) as usize, x)
    } else {
        format!("{x:.16e}")
    }
}

/// Pretty printer that writes every float with 17 significant digits.
struct SigDigits<'a>(PrettyFormatter<'a>);

macro_rules! delegate {
    ($($name:ident($($arg:ident: $ty:ty),*)),* $(,)?) => {
        $(fn $name<W: ?Sized + io::Write>(&mut self, w: &mut W $(, $arg: $ty)*) -> io::Result<()> {
            self.0.$name(w $(, $arg)*)
        })*
    };
}

impl Formatter for SigDigits<'_> {
    delegate!(
        begin_array(),
        end_array(),
        begin_array_value(first: bool),
        end_array_value(),
        begin_object(),
        end_object(),
        begin_object_key(first: bool),
        begin_object_value(),
        end_object_value(),
    );

    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        w.write_all(format_f64(value).as_bytes())
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, f64::from(value))
    }
}

/// Pretty JSON with 17-significant-digit floats and a trailing newline.
/// Non-finite floats become `null`.
pub fn to_json_string<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SigDigits(PrettyFormatter::new()));
    value
        .serialize(&mut ser)
        .map_err(|e| Error::Validation(format!("serialization failed: {e}")))?;
    out.push(b'\n');
    String::from_utf8(out).map_err(|e| Error::Validation(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits() {
        assert_eq!(format_f64(std::f64::consts::SQRT_2), "1.4142135623730951");
        assert_eq!(format_f64(4.0), "4.0000000000000000");
        assert_eq!(format_f64(-0.5), "-0.50000000000000000");
        assert_eq!(format_f64(1e-9), "1.0000000000000001e-9");
        for x in [std::f64::consts::PI, 1.0 / 3.0, 123456.789, 2.5e-5, 7e20, -1e-300] {
            assert_eq!(format_f64(x).parse::<f64>().unwrap(), x, "{x}");
        }
    }

    #[test]
    fn json_uses_formatter_and_null_for_infinity() {
        let s = to_json_string(&serde_json::json!({"a": [1.5, f64::NEG_INFINITY], "b": 2})).unwrap();
        assert!(s.contains("1.5000000000000000"), "{s}");
        assert!(s.contains("null"), "{s}");
        assert!(s.contains("\"b\": 2"), "{s}");
    }

    #[test]
    fn base_file_forms() {
        let b = BaseFile::parse(
            r#"{"dim": 3, "constraints": [{"normal": [1, 0], "offset": 1}, {"normal": [-1, 0], "offset": 1},
                {"normal": [0, 1], "offset": 1}, {"normal": [0, -1], "offset": 1}]}"#,
        )
        .unwrap()
        .into_base()
        .unwrap();
        assert_eq!(b.constraints().len(), 4);

        let v = BaseFile::parse(r#"{"vertices": [[0, 0], [4, 0], [0, 3]]}"#)
            .unwrap()
            .into_base()
            .unwrap();
        assert_eq!(v.constraints().len(), 3);

        let bad = BaseFile::parse(r#"{"dim": 3, "constraints": []}"#).unwrap().into_base();
        assert!(matches!(bad, Err(Error::Validation(_))));
        let bad = BaseFile::parse(r#"{"dim": 4, "constraints": [{"normal": [1, 0], "offset": 1}]}"#)
            .unwrap()
            .into_base();
        assert!(matches!(bad, Err(Error::Validation(_))));
        assert!(BaseFile::parse("{}").is_err());
    }
}
