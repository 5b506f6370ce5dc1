use std::io::{self, Write};

use serde::Serialize;
use serde_json::ser::Formatter;

/// `%.17g`: 17 significant digits, trailing zeros dropped, exponent form
/// outside [1e-4, 1e17).
pub fn g17(v: f64) -> String {
    if v == 0.0 {
        return if v.is_sign_negative() {
            "-0".into()
        } else {
            "0".into()
        };
    }
    let e = format!("{v:.16e}");
    let (mant, exp) = e.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..17).contains(&exp) {
        let mant = trim_zeros(mant);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mant}e{sign}{:02}", exp.abs())
    } else {
        let s = format!("{v:.*}", (16 - exp) as usize);
        trim_zeros(&s).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[derive(Debug, Clone, Copy)]
enum Frame {
    Array {
        pending_first: Option<bool>,
        block: bool,
    },
    Object {
        entries: bool,
    },
}

/// Pretty JSON with arrays of scalars kept on one line and floats in
/// [`g17`] form.
#[derive(Debug, Default)]
pub struct DocFormatter {
    stack: Vec<Frame>,
}

const INDENT: &[u8] = b"  ";

impl DocFormatter {
    fn indent<W: ?Sized + Write>(&self, w: &mut W, depth: usize) -> io::Result<()> {
        for _ in 0..depth {
            w.write_all(INDENT)?;
        }
        Ok(())
    }

    fn before_value<W: ?Sized + Write>(&mut self, w: &mut W, compound: bool) -> io::Result<()> {
        let depth = self.stack.len();
        if let Some(Frame::Array {
            pending_first,
            block,
        }) = self.stack.last_mut()
        {
            if let Some(first) = pending_first.take() {
                if compound {
                    *block = true;
                    if !first {
                        w.write_all(b",")?;
                    }
                    w.write_all(b"\n")?;
                    self.indent(w, depth)?;
                } else if !first {
                    w.write_all(b", ")?;
                }
            }
        }
        Ok(())
    }
}

macro_rules! scalar {
    ($name:ident, $t:ty) => {
        fn $name<W: ?Sized + Write>(&mut self, w: &mut W, value: $t) -> io::Result<()> {
            self.before_value(w, false)?;
            write!(w, "{value}")
        }
    };
}

impl Formatter for DocFormatter {
    fn write_null<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.before_value(w, false)?;
        w.write_all(b"null")
    }

    fn write_bool<W: ?Sized + Write>(&mut self, w: &mut W, value: bool) -> io::Result<()> {
        self.before_value(w, false)?;
        w.write_all(if value { b"true" } else { b"false" })
    }

    scalar!(write_i8, i8);
    scalar!(write_i16, i16);
    scalar!(write_i32, i32);
    scalar!(write_i64, i64);
    scalar!(write_i128, i128);
    scalar!(write_u8, u8);
    scalar!(write_u16, u16);
    scalar!(write_u32, u32);
    scalar!(write_u64, u64);
    scalar!(write_u128, u128);

    fn write_f32<W: ?Sized + Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, value as f64)
    }

    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        self.before_value(w, false)?;
        w.write_all(g17(value).as_bytes())
    }

    fn write_number_str<W: ?Sized + Write>(&mut self, w: &mut W, value: &str) -> io::Result<()> {
        self.before_value(w, false)?;
        w.write_all(value.as_bytes())
    }

    fn begin_string<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.before_value(w, false)?;
        w.write_all(b"\"")
    }

    fn begin_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.before_value(w, true)?;
        self.stack.push(Frame::Array {
            pending_first: None,
            block: false,
        });
        w.write_all(b"[")
    }

    fn end_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        if let Some(Frame::Array { block: true, .. }) = self.stack.pop() {
            w.write_all(b"\n")?;
            self.indent(w, self.stack.len())?;
        }
        w.write_all(b"]")
    }

    fn begin_array_value<W: ?Sized + Write>(&mut self, _w: &mut W, first: bool) -> io::Result<()> {
        if let Some(Frame::Array { pending_first, .. }) = self.stack.last_mut() {
            *pending_first = Some(first);
        }
        Ok(())
    }

    fn end_array_value<W: ?Sized + Write>(&mut self, _w: &mut W) -> io::Result<()> {
        Ok(())
    }

    fn begin_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.before_value(w, true)?;
        self.stack.push(Frame::Object { entries: false });
        w.write_all(b"{")
    }

    fn end_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        if let Some(Frame::Object { entries: true }) = self.stack.pop() {
            w.write_all(b"\n")?;
            self.indent(w, self.stack.len())?;
        }
        w.write_all(b"}")
    }

    fn begin_object_key<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        if let Some(Frame::Object { entries }) = self.stack.last_mut() {
            *entries = true;
        }
        if !first {
            w.write_all(b",")?;
        }
        w.write_all(b"\n")?;
        self.indent(w, self.stack.len())
    }

    fn begin_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        w.write_all(b": ")
    }

    fn end_object_value<W: ?Sized + Write>(&mut self, _w: &mut W) -> io::Result<()> {
        Ok(())
    }
}

/// Serialize with [`DocFormatter`]; output ends with a newline.
pub fn to_json_string<T: Serialize>(value: &T) -> serde_json::Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, DocFormatter::default());
    value.serialize(&mut ser)?;
    buf.push(b'\n');
    Ok(String::from_utf8(buf).expect("serde_json writes UTF-8"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g17_matches_printf_style() {
        assert_eq!(g17(1.0), "1");
        assert_eq!(g17(0.5), "0.5");
        assert_eq!(g17(0.1), "0.10000000000000001");
        assert_eq!(g17(-2.25), "-2.25");
        assert_eq!(g17(1e-5), "1.0000000000000001e-05");
        assert_eq!(g17(1e20), "1e+20");
        assert_eq!(g17(123456.0), "123456");
        assert_eq!(g17(0.0001), "0.0001");
    }

    #[test]
    fn g17_round_trips() {
        for v in [
            std::f64::consts::PI,
            1.0 / 3.0,
            -7.123456789e-9,
            6.02214076e23,
            f64::MIN_POSITIVE,
            f64::MAX,
        ] {
            assert_eq!(g17(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn layout_keeps_scalar_arrays_inline() {
        let v = serde_json::json!({"a": [[1.5, 2.0], [3.0, 4.0]], "b": "x", "c": []});
        let s = to_json_string(&v).unwrap();
        assert_eq!(
            s,
            "{\n  \"a\": [\n    [1.5, 2],\n    [3, 4]\n  ],\n  \"b\": \"x\",\n  \"c\": []\n}\n"
        );
        let back: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(back["a"][1][0], 3.0);
    }
}
