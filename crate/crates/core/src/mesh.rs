//! Triangle meshes of surfaces of revolution and a Wavefront OBJ writer.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::io::{self, Write};

use crate::error::{Error, Result};
use crate::revolution::SampledProfile;

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Mesh {
    pub vertices: Vec<[f64; 3]>,
    /// Counterclockwise seen from outside.
    pub faces: Vec<[usize; 3]>,
}

/// Revolves a sampled meridian through `angular` equal steps. A closed
/// meridian yields a torus; a meridian whose ends sit on the axis gets a
/// single pole vertex at each end.
pub fn revolve(profile: &SampledProfile, angular: usize) -> Result<Mesh> {
    if angular < 3 {
        return Err(Error::Domain(format!("need at least 3 angular steps, got {angular}")));
    }
    let n = profile.samples.len();
    if n < 3 {
        return Err(Error::Domain("need at least 3 meridian samples".into()));
    }
    let pts: Vec<(f64, f64)> = profile.samples.iter().map(|p| (p.f, p.g)).collect();
    let scale = pts.iter().map(|p| p.0.abs()).fold(0.0, f64::max);
    let on_axis = |p: (f64, f64)| p.0.abs() <= 1e-12 * scale.max(1.0);
    let angles: Vec<(f64, f64)> = (0..angular).map(|j| (2.0 * PI * j as f64 / angular as f64).sin_cos()).collect();

    let mut mesh = Mesh::default();
    let ring = |mesh: &mut Mesh, (f, g): (f64, f64)| -> usize {
        let base = mesh.vertices.len();
        for &(s, c) in &angles {
            mesh.vertices.push([f * c, f * s, g]);
        }
        base
    };
    let band = |mesh: &mut Mesh, lower: usize, upper: usize| {
        for j in 0..angular {
            let k = (j + 1) % angular;
            mesh.faces.push([lower + j, lower + k, upper + k]);
            mesh.faces.push([lower + j, upper + k, upper + j]);
        }
    };

    if profile.closed {
        let rings = n - 1;
        let bases: Vec<usize> = pts[..rings].iter().map(|&p| ring(&mut mesh, p)).collect();
        for i in 0..rings {
            band(&mut mesh, bases[i], bases[(i + 1) % rings]);
        }
        return Ok(mesh);
    }

    if !(on_axis(pts[0]) && on_axis(pts[n - 1])) {
        return Err(Error::NotClosed);
    }
    let start = mesh.vertices.len();
    mesh.vertices.push([0.0, 0.0, pts[0].1]);
    let bases: Vec<usize> = pts[1..n - 1].iter().map(|&p| ring(&mut mesh, p)).collect();
    let end = mesh.vertices.len();
    mesh.vertices.push([0.0, 0.0, pts[n - 1].1]);
    for j in 0..angular {
        let k = (j + 1) % angular;
        mesh.faces.push([start, bases[0] + k, bases[0] + j]);
    }
    for w in bases.windows(2) {
        band(&mut mesh, w[0], w[1]);
    }
    let last = *bases.last().expect("interior rings");
    for j in 0..angular {
        let k = (j + 1) % angular;
        mesh.faces.push([last + j, last + k, end]);
    }
    Ok(mesh)
}

impl Mesh {
    fn edges(&self) -> HashMap<(usize, usize), i32> {
        let mut edges = HashMap::new();
        for f in &self.faces {
            for i in 0..3 {
                *edges.entry((f[i], f[(i + 1) % 3])).or_insert(0) += 1;
            }
        }
        edges
    }

    /// `V − E + F`.
    pub fn euler_characteristic(&self) -> i64 {
        let mut undirected: Vec<(usize, usize)> =
            self.edges().keys().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        undirected.sort_unstable();
        undirected.dedup();
        self.vertices.len() as i64 - undirected.len() as i64 + self.faces.len() as i64
    }

    /// Every directed edge appears once and its reverse appears once.
    pub fn is_watertight(&self) -> bool {
        let edges = self.edges();
        edges.iter().all(|(&(a, b), &count)| count == 1 && edges.get(&(b, a)) == Some(&1))
    }

    fn triangle(&self, f: &[usize; 3]) -> [[f64; 3]; 3] {
        [self.vertices[f[0]], self.vertices[f[1]], self.vertices[f[2]]]
    }

    pub fn area(&self) -> f64 {
        self.faces
            .iter()
            .map(|f| {
                let [a, b, c] = self.triangle(f);
                0.5 * norm(cross(sub(b, a), sub(c, a)))
            })
            .sum()
    }

    /// Signed enclosed volume; positive for outward orientation.
    pub fn signed_volume(&self) -> f64 {
        self.faces
            .iter()
            .map(|f| {
                let [a, b, c] = self.triangle(f);
                dot(a, cross(b, c)) / 6.0
            })
            .sum()
    }

    /// Vertex and face records only, 1-based indices.
    pub fn write_obj<W: Write>(&self, mut out: W) -> io::Result<()> {
        for v in &self.vertices {
            writeln!(out, "v {:?} {:?} {:?}", v[0], v[1], v[2])?;
        }
        for f in &self.faces {
            writeln!(out, "f {} {} {}", f[0] + 1, f[1] + 1, f[2] + 1)?;
        }
        Ok(())
    }
}

fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn norm(a: [f64; 3]) -> f64 {
    dot(a, a).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{ProfileCurve, Shape};
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn sphere_mesh_topology() {
        let curve =
            ProfileCurve::chain(vec![(Shape::Arc { radius: 1.0, center: 0.0 }, -FRAC_PI_2, FRAC_PI_2)], -1.0, false)
                .unwrap();
        let mesh = revolve(&curve.sample(64).unwrap(), 48).unwrap();
        assert_eq!(mesh.euler_characteristic(), 2);
        assert!(mesh.is_watertight());
        let v = mesh.signed_volume();
        assert!(v > 0.0 && (v - 4.0 * PI / 3.0).abs() < 0.02);
        assert!((mesh.area() - 4.0 * PI).abs() < 0.03);
    }

    #[test]
    fn round_torus_mesh_topology() {
        let curve = ProfileCurve::chain(
            vec![(Shape::generic(|t: f64| (2.0 + 0.5 * t.cos(), 0.5 * t.sin())), 0.0, 2.0 * PI)],
            0.0,
            true,
        )
        .unwrap();
        let mesh = revolve(&curve.sample(40).unwrap(), 40).unwrap();
        assert_eq!(mesh.euler_characteristic(), 0);
        assert!(mesh.is_watertight());
        assert!(mesh.signed_volume() > 0.0);
    }

    #[test]
    fn obj_output() {
        let mesh = Mesh { vertices: vec![[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.5]], faces: vec![[0, 1, 2]] };
        let mut buf = Vec::new();
        mesh.write_obj(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "v 0.0 0.0 0.0\nv 1.0 0.0 0.0\nv 0.0 1.0 0.5\nf 1 2 3\n");
    }
}
