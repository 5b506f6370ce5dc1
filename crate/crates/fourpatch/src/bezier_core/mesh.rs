use super::{BezierPatch, CoreError, Point3};

/// Indexed triangle mesh; triangles are counter-clockwise in (u,v).
#[derive(Debug, Clone, PartialEq)]
pub struct TriangleMesh {
    pub vertices: Vec<Point3>,
    pub triangles: Vec<[usize; 3]>,
}

/// Sample the patch on a regular `(nu+1) x (nv+1)` grid and triangulate.
pub fn tessellate(p: &BezierPatch, nu: usize, nv: usize) -> Result<TriangleMesh, CoreError> {
    if nu == 0 || nv == 0 {
        return Err(CoreError::BadSampling);
    }
    let mut vertices = Vec::with_capacity((nu + 1) * (nv + 1));
    for a in 0..=nu {
        for b in 0..=nv {
            vertices.push(p.eval(a as f64 / nu as f64, b as f64 / nv as f64));
        }
    }
    let idx = |a: usize, b: usize| a * (nv + 1) + b;
    let mut triangles = Vec::with_capacity(2 * nu * nv);
    for a in 0..nu {
        for b in 0..nv {
            triangles.push([idx(a, b), idx(a + 1, b), idx(a + 1, b + 1)]);
            triangles.push([idx(a, b), idx(a + 1, b + 1), idx(a, b + 1)]);
        }
    }
    Ok(TriangleMesh {
        vertices,
        triangles,
    })
}
