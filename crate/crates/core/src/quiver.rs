//! Quivers, the constructions derived from them, and integer vectors indexed
//! by their vertices.

use std::collections::HashMap;
use std::fmt;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub label: String,
    /// Set on the vertices added by [`Quiver::framed`] and the framed repetitions.
    pub framing: bool,
}

/// An arrow `source -> target`, with endpoints stored as vertex indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub id: String,
    pub source: usize,
    pub target: usize,
}

impl Arrow {
    pub fn is_loop(&self) -> bool {
        self.source == self.target
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Copy)]
pub enum RepetitionKind {
    Plain,
    Framed,
    FramedDouble,
}

#[derive(Clone, Debug)]
pub struct Quiver {
    vertices: Vec<Vertex>,
    arrows: Vec<Arrow>,
    index: HashMap<String, usize>,
}

impl PartialEq for Quiver {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.arrows == other.arrows
    }
}

impl Eq for Quiver {}

impl Quiver {
    /// Builds a quiver from vertex labels and `(id, out, in)` triples.
    pub fn new<S: AsRef<str>>(vertices: &[S], arrows: &[(S, S, S)]) -> Result<Self> {
        let mut q = Quiver::empty();
        for v in vertices {
            q.push_vertex(v.as_ref(), false)?;
        }
        for (id, out, inn) in arrows {
            let s = q.vertex_index(out.as_ref())?;
            let t = q.vertex_index(inn.as_ref())?;
            q.push_arrow(id.as_ref(), s, t)?;
        }
        Ok(q)
    }

    fn empty() -> Self {
        Quiver {
            vertices: Vec::new(),
            arrows: Vec::new(),
            index: HashMap::new(),
        }
    }

    fn push_vertex(&mut self, label: &str, framing: bool) -> Result<usize> {
        if self.index.contains_key(label) {
            return Err(Error::input(format!("duplicate vertex `{label}`")));
        }
        let idx = self.vertices.len();
        self.index.insert(label.to_string(), idx);
        self.vertices.push(Vertex {
            label: label.to_string(),
            framing,
        });
        Ok(idx)
    }

    fn push_arrow(&mut self, id: &str, source: usize, target: usize) -> Result<()> {
        if self.arrows.iter().any(|a| a.id == id) {
            return Err(Error::input(format!("duplicate arrow `{id}`")));
        }
        self.arrows.push(Arrow {
            id: id.to_string(),
            source,
            target,
        });
        Ok(())
    }

    /// One vertex `v` with one loop `x`.
    pub fn jordan() -> Self {
        Quiver::new(&["v"], &[("x", "v", "v")]).expect("valid preset")
    }

    /// One vertex `v`, no arrows.
    pub fn a1() -> Self {
        Quiver::new(&["v"], &[]).expect("valid preset")
    }

    /// Equioriented path `v0 -> v1 -> ... -> v{n-1}` with arrows `a0, a1, ...`.
    pub fn path(n: usize) -> Self {
        let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let arrows: Vec<(String, String, String)> = (1..n)
            .map(|i| (format!("a{}", i - 1), labels[i - 1].clone(), labels[i].clone()))
            .collect();
        Quiver::new(&labels, &arrows).expect("valid preset")
    }

    /// Looks up a named preset: `jordan`, `a1`, or `a<n>` / `path<n>`.
    pub fn preset(name: &str) -> Result<Self> {
        match name {
            "jordan" => Ok(Self::jordan()),
            "a1" => Ok(Self::a1()),
            _ => {
                let n = name
                    .strip_prefix("path")
                    .or_else(|| name.strip_prefix('a'))
                    .and_then(|s| s.parse::<usize>().ok())
                    .filter(|&n| n >= 1)
                    .ok_or_else(|| Error::input(format!("unknown preset `{name}`")))?;
                Ok(Self::path(n))
            }
        }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    pub fn arrow_index(&self, id: &str) -> Result<usize> {
        self.arrows
            .iter()
            .position(|a| a.id == id)
            .ok_or_else(|| Error::UnknownArrow(id.to_string()))
    }

    pub fn label(&self, v: usize) -> &str {
        &self.vertices[v].label
    }

    /// Number of arrows `v -> w`, by label.
    pub fn arrow_count(&self, v: &str, w: &str) -> Result<usize> {
        let (v, w) = (self.vertex_index(v)?, self.vertex_index(w)?);
        Ok(self.arrow_count_idx(v, w))
    }

    pub fn arrow_count_idx(&self, v: usize, w: usize) -> usize {
        self.arrows.iter().filter(|a| a.source == v && a.target == w).count()
    }

    pub fn loops_at(&self, v: usize) -> usize {
        self.arrow_count_idx(v, v)
    }

    /// Arrows in either direction between `v` and `w`; loops count once when `v = w`.
    pub fn edge_multiplicity(&self, v: usize, w: usize) -> usize {
        if v == w {
            self.loops_at(v)
        } else {
            self.arrow_count_idx(v, w) + self.arrow_count_idx(w, v)
        }
    }

    pub fn cartan(&self) -> CartanMatrix {
        let n = self.vertices.len();
        let mut entries = vec![0i64; n * n];
        for a in &self.arrows {
            entries[a.source * n + a.target] -= 1;
            entries[a.target * n + a.source] -= 1;
        }
        for v in 0..n {
            entries[v * n + v] += 2;
        }
        CartanMatrix { n, entries }
    }

    pub fn double(&self) -> Quiver {
        let mut q = self.clone();
        for a in &self.arrows {
            q.arrows.push(Arrow {
                id: format!("{}*", a.id),
                source: a.target,
                target: a.source,
            });
        }
        q
    }

    /// Adds a framing vertex `fr:<v>` and an arrow `i:<v>` into each vertex.
    pub fn framed(&self) -> Quiver {
        let mut q = self.clone();
        for v in 0..self.vertices.len() {
            let label = &self.vertices[v].label;
            let bar = q
                .push_vertex(&format!("fr:{label}"), true)
                .expect("framing labels are fresh");
            q.push_arrow(&format!("i:{label}"), bar, v)
                .expect("framing ids are fresh");
        }
        q
    }

    /// The `ell`-th repetition quiver and its framed variants.
    ///
    /// Vertex `(v, m)` is labelled `<v>@m` and vertices are listed level by
    /// level. Level arrows are `<id>@m`, the arrows between levels are
    /// `p:<v>@m : (v,m) -> (v,m+1)`. The framed variants append the framing
    /// vertices `fr:<v>` and the arrows `i:<v>@m`, `j:<v>@m` to and from each level.
    pub fn repetition(&self, ell: usize, kind: RepetitionKind) -> Quiver {
        if ell == 0 && kind == RepetitionKind::Plain {
            return self.clone();
        }
        let base = match kind {
            RepetitionKind::FramedDouble => self.double(),
            _ => self.clone(),
        };
        let n = self.vertices.len();
        let at = |v: usize, m: usize| m * n + v;
        let mut q = Quiver::empty();
        for m in 0..=ell {
            for v in &self.vertices {
                q.push_vertex(&format!("{}@{m}", v.label), false).expect("fresh labels");
            }
        }
        for m in 0..=ell {
            for a in &base.arrows {
                q.push_arrow(&format!("{}@{m}", a.id), at(a.source, m), at(a.target, m))
                    .expect("fresh ids");
            }
        }
        for m in 0..ell {
            for (v, vert) in self.vertices.iter().enumerate() {
                q.push_arrow(&format!("p:{}@{m}", vert.label), at(v, m), at(v, m + 1))
                    .expect("fresh ids");
            }
        }
        if kind != RepetitionKind::Plain {
            let bars: Vec<usize> = self
                .vertices
                .iter()
                .map(|v| q.push_vertex(&format!("fr:{}", v.label), true).expect("fresh labels"))
                .collect();
            for m in 0..=ell {
                for (v, vert) in self.vertices.iter().enumerate() {
                    q.push_arrow(&format!("i:{}@{m}", vert.label), bars[v], at(v, m))
                        .expect("fresh ids");
                    q.push_arrow(&format!("j:{}@{m}", vert.label), at(v, m), bars[v])
                        .expect("fresh ids");
                }
            }
        }
        q
    }

    pub fn to_json(&self) -> Value {
        let vertices: Vec<Value> = self.vertices.iter().map(|v| json!(v.label)).collect();
        let arrows: Vec<Value> = self
            .arrows
            .iter()
            .map(|a| {
                json!({
                    "id": a.id,
                    "out": self.vertices[a.source].label,
                    "in": self.vertices[a.target].label,
                })
            })
            .collect();
        let mut obj = Map::new();
        obj.insert("vertices".into(), Value::Array(vertices));
        obj.insert("arrows".into(), Value::Array(arrows));
        let framing: Vec<Value> = self
            .vertices
            .iter()
            .filter(|v| v.framing)
            .map(|v| json!(v.label))
            .collect();
        if !framing.is_empty() {
            obj.insert("framing".into(), Value::Array(framing));
        }
        Value::Object(obj)
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let vertices = value
            .get("vertices")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::input("quiver needs a `vertices` array"))?;
        let mut q = Quiver::empty();
        let framing: Vec<&str> = value
            .get("framing")
            .and_then(Value::as_array)
            .map(|a| a.iter().filter_map(Value::as_str).collect())
            .unwrap_or_default();
        for v in vertices {
            let label = v
                .as_str()
                .ok_or_else(|| Error::input("vertex labels must be strings"))?;
            q.push_vertex(label, framing.contains(&label))?;
        }
        let arrows = match value.get("arrows") {
            None => Vec::new(),
            Some(a) => a
                .as_array()
                .ok_or_else(|| Error::input("`arrows` must be an array"))?
                .clone(),
        };
        for a in &arrows {
            let field = |k: &str| {
                a.get(k)
                    .and_then(Value::as_str)
                    .ok_or_else(|| Error::input(format!("arrow needs a string `{k}`")))
            };
            let s = q.vertex_index(field("out")?)?;
            let t = q.vertex_index(field("in")?)?;
            q.push_arrow(field("id")?, s, t)?;
        }
        Ok(q)
    }
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_json())
    }
}

/// Symmetric integer matrix in vertex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanMatrix {
    n: usize,
    entries: Vec<i64>,
}

impl CartanMatrix {
    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, v: usize, w: usize) -> i64 {
        self.entries[v * self.n + w]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries
            .chunks(self.n.max(1))
            .map(<[i64]>::to_vec)
            .take(self.n)
            .collect()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|v| (0..self.n).all(|w| self.get(v, w) == self.get(w, v)))
    }

    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        (0..self.n)
            .map(|v| (0..self.n).map(|w| self.get(v, w) * x[w]).sum())
            .collect()
    }

    /// `xᵀ C y`.
    pub fn form(&self, x: &[i64], y: &[i64]) -> i64 {
        x.iter().zip(self.apply(y)).map(|(a, b)| a * b).sum()
    }
}

/// Integer vector indexed by the vertices of a quiver; entries may be negative.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntVector(pub Vec<i64>);

/// Non-negative integer vector indexed by the vertices of a quiver.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DimVector(Vec<i64>);

fn same_len(a: &[i64], b: &[i64]) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::input(format!(
            "vectors of length {} and {} are indexed by different vertex sets",
            a.len(),
            b.len()
        )));
    }
    Ok(())
}

impl IntVector {
    pub fn zeros(n: usize) -> Self {
        IntVector(vec![0; n])
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &IntVector) -> Result<IntVector> {
        same_len(&self.0, &other.0)?;
        Ok(IntVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    pub fn sub(&self, other: &IntVector) -> Result<IntVector> {
        same_len(&self.0, &other.0)?;
        Ok(IntVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    pub fn le(&self, other: &IntVector) -> Result<bool> {
        same_len(&self.0, &other.0)?;
        Ok(self.0.iter().zip(&other.0).all(|(a, b)| a <= b))
    }

    pub fn max(&self, other: &IntVector) -> Result<IntVector> {
        same_len(&self.0, &other.0)?;
        Ok(IntVector(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect()))
    }

    /// Componentwise `max(x, 0)`.
    pub fn positive_part(&self) -> DimVector {
        DimVector(self.0.iter().map(|&x| x.max(0)).collect())
    }

    pub fn to_dim(&self) -> Result<DimVector> {
        DimVector::new(self.0.clone())
    }
}

impl DimVector {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if let Some(x) = entries.iter().find(|&&x| x < 0) {
            return Err(Error::input(format!(
                "dimension vector entries must be non-negative, got {x}"
            )));
        }
        Ok(DimVector(entries))
    }

    pub fn zeros(n: usize) -> Self {
        DimVector(vec![0; n])
    }

    /// The vector with a single 1 at `v`.
    pub fn unit(n: usize, v: usize) -> Self {
        let mut e = vec![0; n];
        e[v] = 1;
        DimVector(e)
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, v: usize) -> i64 {
        self.0[v]
    }

    /// Entry as a size, for indexing matrices.
    pub fn dim(&self, v: usize) -> usize {
        self.0[v] as usize
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn to_int(&self) -> IntVector {
        IntVector(self.0.clone())
    }

    pub fn add(&self, other: &DimVector) -> Result<DimVector> {
        same_len(&self.0, &other.0)?;
        Ok(DimVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    /// `self - other`, failing if any entry would go negative.
    pub fn checked_sub(&self, other: &DimVector) -> Result<DimVector> {
        same_len(&self.0, &other.0)?;
        DimVector::new(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
            .map_err(|_| Error::input(format!("{self} - {other} has negative entries")))
    }

    pub fn le(&self, other: &DimVector) -> Result<bool> {
        same_len(&self.0, &other.0)?;
        Ok(self.0.iter().zip(&other.0).all(|(a, b)| a <= b))
    }

    pub fn max(&self, other: &DimVector) -> Result<DimVector> {
        same_len(&self.0, &other.0)?;
        Ok(DimVector(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect()))
    }

    fn check_quiver(&self, q: &Quiver) -> Result<()> {
        if self.0.len() != q.num_vertices() {
            return Err(Error::input(format!(
                "vector has {} entries but the quiver has {} vertices",
                self.0.len(),
                q.num_vertices()
            )));
        }
        Ok(())
    }

    /// Object `{label: n}` (missing labels are 0) or an array in vertex order.
    pub fn from_json(q: &Quiver, value: &Value) -> Result<Self> {
        let v = match value {
            Value::Array(items) => {
                let entries = items
                    .iter()
                    .map(|x| {
                        x.as_i64()
                            .ok_or_else(|| Error::input(format!("`{x}` is not an integer")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                DimVector::new(entries)?
            }
            Value::Object(map) => {
                let mut entries = vec![0; q.num_vertices()];
                for (label, x) in map {
                    let idx = q.vertex_index(label)?;
                    entries[idx] = x
                        .as_i64()
                        .ok_or_else(|| Error::input(format!("`{x}` is not an integer")))?;
                }
                DimVector::new(entries)?
            }
            Value::Number(n) if q.num_vertices() == 1 => DimVector::new(vec![n
                .as_i64()
                .ok_or_else(|| Error::input(format!("`{n}` is not an integer")))?])?,
            other => return Err(Error::input(format!("expected a dimension vector, got {other}"))),
        };
        v.check_quiver(q)?;
        Ok(v)
    }

    pub fn to_json(&self, q: &Quiver) -> Value {
        let mut map = Map::new();
        for (v, x) in self.0.iter().enumerate() {
            map.insert(q.label(v).to_string(), json!(x));
        }
        Value::Object(map)
    }

    /// Parses `"3"` (single-vertex quivers only) or `"v0=3,v1=2"`; omitted
    /// vertices are 0. The empty string is the zero vector.
    pub fn parse(q: &Quiver, text: &str) -> Result<Self> {
        let text = text.trim();
        let mut entries = vec![0i64; q.num_vertices()];
        if text.is_empty() {
            return Ok(DimVector(entries));
        }
        if !text.contains('=') {
            if q.num_vertices() != 1 {
                return Err(Error::input(format!(
                    "`{text}`: a bare number needs a single-vertex quiver; use label=value pairs"
                )));
            }
            let x: i64 = text
                .parse()
                .map_err(|_| Error::input(format!("cannot parse `{text}`")))?;
            return DimVector::new(vec![x]);
        }
        for part in text.split(',') {
            let (label, x) = part
                .split_once('=')
                .ok_or_else(|| Error::input(format!("expected label=value, got `{part}`")))?;
            let idx = q.vertex_index(label.trim())?;
            entries[idx] = x
                .trim()
                .parse()
                .map_err(|_| Error::input(format!("cannot parse `{x}`")))?;
        }
        DimVector::new(entries)
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `k⁰[d] = C d − f`.
pub fn k0(q: &Quiver, d: &DimVector, f: &DimVector) -> Result<IntVector> {
    d.check_quiver(q)?;
    f.check_quiver(q)?;
    let cd = q.cartan().apply(d.as_slice());
    Ok(IntVector(cd.iter().zip(f.as_slice()).map(|(c, f)| c - f).collect()))
}

/// `aᵀ C b`.
pub fn bilinear(q: &Quiver, a: &[i64], b: &[i64]) -> Result<i64> {
    same_len(a, b)?;
    if a.len() != q.num_vertices() {
        return Err(Error::input("vector length does not match the quiver"));
    }
    Ok(q.cartan().form(a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dv(x: &[i64]) -> DimVector {
        DimVector::new(x.to_vec()).unwrap()
    }

    #[test]
    fn arrow_counts() {
        let j = Quiver::jordan();
        assert_eq!(j.arrow_count("v", "v").unwrap(), 1);
        assert_eq!(Quiver::a1().arrow_count("v", "v").unwrap(), 0);
        let p = Quiver::path(2);
        assert_eq!(p.arrow_count("v0", "v1").unwrap(), 1);
        assert_eq!(p.arrow_count("v1", "v0").unwrap(), 0);
        assert!(matches!(p.arrow_count("v0", "zz"), Err(Error::UnknownVertex(_))));
    }

    #[test]
    fn cartan_examples() {
        assert_eq!(Quiver::jordan().cartan().rows(), vec![vec![0]]);
        assert_eq!(Quiver::a1().cartan().rows(), vec![vec![2]]);
        assert_eq!(Quiver::path(2).cartan().rows(), vec![vec![2, -1], vec![-1, 2]]);
    }

    #[test]
    fn double_and_framed() {
        assert_eq!(Quiver::a1().double().arrows().len(), 0);
        let d = Quiver::path(2).double();
        assert_eq!(d.arrow_count("v1", "v0").unwrap(), 1);
        assert_eq!(d.arrows()[1].id, "a0*");
        assert_eq!(Quiver::jordan().double().loops_at(0), 2);

        let f = Quiver::a1().framed();
        assert_eq!((f.num_vertices(), f.arrows().len()), (2, 1));
        assert!(f.vertices()[1].framing);
        let f = Quiver::jordan().framed();
        assert_eq!((f.num_vertices(), f.arrows().len()), (2, 2));
        let f = Quiver::path(2).framed();
        assert_eq!((f.num_vertices(), f.arrows().len()), (4, 3));
    }

    #[test]
    fn repetitions() {
        let r = Quiver::a1().repetition(1, RepetitionKind::Framed);
        assert_eq!((r.num_vertices(), r.arrows().len()), (3, 5));
        assert_eq!(r.vertices().iter().filter(|v| v.framing).count(), 1);

        let p = Quiver::path(3);
        assert_eq!(p.repetition(0, RepetitionKind::Plain), p);
        let r = p.repetition(2, RepetitionKind::Plain);
        assert_eq!((r.num_vertices(), r.arrows().len()), (9, 12));
        assert_eq!(r.arrow_count("v1@1", "v1@2").unwrap(), 1);

        // p arrows are never reversed
        let r = Quiver::jordan().repetition(1, RepetitionKind::FramedDouble);
        assert_eq!(r.arrow_count("v@1", "v@0").unwrap(), 0);
        assert_eq!(r.loops_at(0), 2);
    }

    #[test]
    fn k0_examples() {
        let j = Quiver::jordan();
        assert_eq!(k0(&j, &dv(&[5]), &dv(&[3])).unwrap(), IntVector(vec![-3]));
        let a = Quiver::a1();
        assert_eq!(k0(&a, &dv(&[2]), &dv(&[5])).unwrap(), IntVector(vec![-1]));
        assert_eq!(k0(&a, &dv(&[0]), &dv(&[4])).unwrap(), IntVector(vec![-4]));
    }

    #[test]
    fn vector_ops() {
        let m = IntVector(vec![-1]).max(&IntVector(vec![0])).unwrap();
        assert_eq!(m, IntVector(vec![0]));
        assert_eq!(dv(&[3]).checked_sub(&dv(&[1])).unwrap(), dv(&[2]));
        assert!(dv(&[1]).checked_sub(&dv(&[3])).is_err());
        assert!(dv(&[1, 2]).le(&dv(&[1])).is_err());
        for d in 0..6 {
            assert_eq!(bilinear(&Quiver::jordan(), &[d], &[d]).unwrap(), 0);
        }
    }

    #[test]
    fn json_roundtrip() {
        let q = Quiver::jordan().framed();
        let back = Quiver::from_json(&q.to_json()).unwrap();
        assert_eq!(back, q);
        let p = Quiver::path(2);
        let d = DimVector::from_json(&p, &json!({"v1": 2})).unwrap();
        assert_eq!(d, dv(&[0, 2]));
        assert_eq!(DimVector::from_json(&p, &json!([1, 2])).unwrap(), dv(&[1, 2]));
        assert!(DimVector::from_json(&p, &json!([1])).is_err());
        assert!(DimVector::from_json(&p, &json!({"q": 1})).is_err());
    }

    #[test]
    fn cli_parse() {
        let p = Quiver::path(2);
        assert_eq!(DimVector::parse(&p, "v0=3,v1=2").unwrap(), dv(&[3, 2]));
        assert!(DimVector::parse(&p, "3").is_err());
        assert_eq!(DimVector::parse(&Quiver::a1(), "3").unwrap(), dv(&[3]));
        assert!(DimVector::parse(&Quiver::a1(), "-1").is_err());
    }
}
