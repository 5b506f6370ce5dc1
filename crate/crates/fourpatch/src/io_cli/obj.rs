use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::bezier_core::tessellate;

use super::document::SurfaceDocument;
use super::format::g17;
use super::IoError;

/// Wavefront OBJ with one `o` group per patch, `v` lines then `f` lines,
/// 1-based indices running across the whole file.
pub fn write_obj(
    doc: &SurfaceDocument,
    nu: usize,
    nv: usize,
    out: &mut impl Write,
) -> Result<(), IoError> {
    if nu == 0 || nv == 0 {
        return Err(IoError::Schema("sample counts must be positive".into()));
    }
    let mut base = 1usize;
    let w = |e: std::io::Error| IoError::Io {
        path: "<obj>".into(),
        message: e.to_string(),
    };
    for rec in &doc.patches {
        let p = rec.to_patch()?;
        let mesh = tessellate(&p, nu, nv)
            .map_err(|e| IoError::Schema(format!("patch '{}': {e}", rec.name)))?;
        writeln!(out, "o {}", rec.name).map_err(w)?;
        for v in &mesh.vertices {
            writeln!(out, "v {} {} {}", g17(v.x), g17(v.y), g17(v.z)).map_err(w)?;
        }
        for t in &mesh.triangles {
            writeln!(out, "f {} {} {}", t[0] + base, t[1] + base, t[2] + base).map_err(w)?;
        }
        base += mesh.vertices.len();
    }
    Ok(())
}

pub fn export_obj(doc: &SurfaceDocument, nu: usize, nv: usize, path: &Path) -> Result<(), IoError> {
    let f = File::create(path).map_err(|e| IoError::io(path, e))?;
    let mut out = BufWriter::new(f);
    write_obj(doc, nu, nv, &mut out)?;
    out.flush().map_err(|e| IoError::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bezier_core::{BezierPatch, Point3};

    fn doc(n: usize) -> SurfaceDocument {
        let mut d = SurfaceDocument::new();
        for k in 0..n {
            let p =
                BezierPatch::from_fn(1, 1, |i, j| Point3::new(i as f64 + k as f64, j as f64, 0.0))
                    .unwrap();
            d.push_patch(format!("p{k}"), &p);
        }
        d
    }

    fn render(d: &SurfaceDocument, nu: usize, nv: usize) -> String {
        let mut buf = Vec::new();
        write_obj(d, nu, nv, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn single_bilinear_patch() {
        let s = render(&doc(1), 1, 1);
        assert_eq!(s.lines().filter(|l| l.starts_with("v ")).count(), 4);
        assert_eq!(s.lines().filter(|l| l.starts_with("f ")).count(), 2);
    }

    #[test]
    fn two_groups_disjoint_indices() {
        let s = render(&doc(2), 1, 1);
        assert_eq!(s.lines().filter(|l| l.starts_with("o ")).count(), 2);
        let second: Vec<usize> = s
            .split("o p1")
            .nth(1)
            .unwrap()
            .lines()
            .filter(|l| l.starts_with("f "))
            .flat_map(|l| {
                l[2..]
                    .split(' ')
                    .map(|x| x.parse::<usize>().unwrap())
                    .collect::<Vec<_>>()
            })
            .collect();
        assert!(second.iter().all(|&i| (5..=8).contains(&i)));
    }
}
