//! Serialization helpers: scalars as a bare number (real) or `[re, im]`,
//! and JSON output with every float written at 17 significant digits.

use std::io;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::ser::{Formatter, PrettyFormatter};

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum WireScalar {
    Real(f64),
    Complex([f64; 2]),
}

impl From<WireScalar> for Complex64 {
    fn from(w: WireScalar) -> Self {
        match w {
            WireScalar::Real(re) => Complex64::new(re, 0.0),
            WireScalar::Complex([re, im]) => Complex64::new(re, im),
        }
    }
}

fn to_wire(c: &Complex64) -> WireScalar {
    if c.im == 0.0 {
        WireScalar::Real(c.re)
    } else {
        WireScalar::Complex([c.re, c.im])
    }
}

/// `#[serde(with = "...")]` adapter for a single [`Complex64`].
pub mod scalar {
    use super::*;

    pub fn serialize<S: Serializer>(c: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        to_wire(c).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
        WireScalar::deserialize(d).map(Into::into)
    }
}

/// `#[serde(with = "...")]` adapter for `Vec<Complex64>`.
pub mod scalar_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Complex64], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(to_wire))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Complex64>, D::Error> {
        let raw = Vec::<WireScalar>::deserialize(d)?;
        Ok(raw.into_iter().map(Into::into).collect())
    }
}

/// Pretty JSON formatter writing `f64` as `{:.16e}`, which round-trips
/// every finite double. Non-finite values become `null`.
pub struct RoundTripFormatter<'a> {
    inner: PrettyFormatter<'a>,
}

impl Default for RoundTripFormatter<'_> {
    fn default() -> Self {
        Self {
            inner: PrettyFormatter::with_indent(b"  "),
        }
    }
}

pub(crate) fn format_float(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        "null".to_string()
    }
}

impl Formatter for RoundTripFormatter<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, v: f64) -> io::Result<()> {
        w.write_all(format_float(v).as_bytes())
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, w: &mut W, v: f32) -> io::Result<()> {
        self.write_f64(w, v as f64)
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.begin_array(w)
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_array(w)
    }

    fn begin_array_value<W: ?Sized + io::Write>(
        &mut self,
        w: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.inner.begin_array_value(w, first)
    }

    fn end_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_array_value(w)
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.begin_object(w)
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_object(w)
    }

    fn begin_object_key<W: ?Sized + io::Write>(
        &mut self,
        w: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.inner.begin_object_key(w, first)
    }

    fn end_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_object_key(w)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.begin_object_value(w)
    }

    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_object_value(w)
    }
}

/// Serializes `value` as pretty JSON with round-trip float formatting.
pub fn to_json_string<T: Serialize + ?Sized>(value: &T) -> serde_json::Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, RoundTripFormatter::default());
    value.serialize(&mut ser)?;
    buf.push(b'\n');
    Ok(String::from_utf8(buf).expect("serde_json writes UTF-8"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize, Deserialize, PartialEq, Debug)]
    struct Probe {
        #[serde(with = "scalar")]
        s: Complex64,
        #[serde(with = "scalar_vec")]
        v: Vec<Complex64>,
        f: f64,
    }

    #[test]
    fn scalar_forms_round_trip() {
        let p = Probe {
            s: Complex64::new(0.1, -0.3),
            v: vec![Complex64::new(2.0, 0.0), Complex64::new(1.0 / 3.0, 1e-300)],
            f: std::f64::consts::PI,
        };
        let text = to_json_string(&p).unwrap();
        assert!(text.contains("3.1415926535897931e0"));
        let back: Probe = serde_json::from_str(&text).unwrap();
        assert_eq!(back, p);
        assert_eq!(to_json_string(&back).unwrap(), text);
    }

    #[test]
    fn real_scalar_is_bare_number() {
        let p: Probe = serde_json::from_str(r#"{"s": 1.5, "v": [1, [0, 2]], "f": 0}"#).unwrap();
        assert_eq!(p.s, Complex64::new(1.5, 0.0));
        assert_eq!(p.v[1], Complex64::new(0.0, 2.0));
    }

    #[test]
    fn non_finite_is_null() {
        assert_eq!(format_float(f64::NAN), "null");
        assert_eq!(format_float(0.5), "5.0000000000000000e-1");
    }
}
