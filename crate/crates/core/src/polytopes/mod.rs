//! Lattice polytopes: facets by vertex-subset search, polar duality,
//! reflexivity, lattice points and the index of the lattice they span.

mod format;

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::hnf::{span_index, LatticeIndex};
use crate::exact::rat::{content, denom_lcm, fmt_rat, int};
use crate::exact::{Rat, RatMatrix};

pub use format::{parse_polytope, render_polytope, PolytopeFile};

/// A polytope given by its vertices (rational in general, integral for lattice polytopes).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePolytope {
    dim: usize,
    vertices: Vec<Vec<Rat>>,
}

/// `{x : <normal, x> = -offset}` with `<normal, P> >= -offset`, `normal` primitive.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Facet {
    pub normal: Vec<BigInt>,
    pub offset: Rat,
}

impl Facet {
    pub fn value(&self, x: &[Rat]) -> Rat {
        self.normal.iter().zip(x).fold(Rat::zero(), |acc, (u, xi)| acc + Rat::from_integer(u.clone()) * xi)
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.value(x) >= -self.offset.clone()
    }

    pub fn saturates(&self, x: &[Rat]) -> bool {
        self.value(x) == -self.offset.clone()
    }
}

impl LatticePolytope {
    pub fn new(dim: usize, vertices: Vec<Vec<Rat>>) -> Result<Self> {
        if let Some(v) = vertices.iter().find(|v| v.len() != dim) {
            return Err(Error::Dimension(format!("vertex of length {} in dimension {dim}", v.len())));
        }
        let distinct: BTreeSet<&Vec<Rat>> = vertices.iter().collect();
        if distinct.len() != vertices.len() {
            return Err(Error::Domain("repeated vertex".into()));
        }
        Ok(Self { dim, vertices })
    }

    pub fn from_integer(vertices: &[Vec<i64>]) -> Result<Self> {
        let dim = vertices.first().map_or(0, Vec::len);
        Self::new(dim, vertices.iter().map(|v| v.iter().map(|&x| int(x)).collect()).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<Rat>] {
        &self.vertices
    }

    pub fn is_lattice(&self) -> bool {
        self.vertices.iter().flatten().all(Rat::is_integer)
    }

    /// Vertices as a sorted set, for order-independent comparison.
    pub fn vertex_set(&self) -> BTreeSet<Vec<Rat>> {
        self.vertices.iter().cloned().collect()
    }
}

impl fmt::Display for LatticePolytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<String> =
            self.vertices.iter().map(|v| format!("({})", v.iter().map(fmt_rat).collect::<Vec<_>>().join(","))).collect();
        write!(f, "{{{}}}", vs.join(", "))
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if acc.len() == k {
            out.push(acc.clone());
            return;
        }
        for i in start..n {
            if n - i < k - acc.len() {
                break;
            }
            acc.push(i);
            go(i + 1, n, k, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Clears denominators and divides out the content.
fn primitive(v: &[Rat]) -> Vec<BigInt> {
    let d = denom_lcm(v);
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rat::from_integer(d.clone())).to_integer()).collect();
    let g = content(&ints);
    ints.into_iter().map(|x| x / &g).collect()
}

fn differences(p: &LatticePolytope) -> Result<RatMatrix> {
    let base = &p.vertices[0];
    let rows: Vec<Vec<Rat>> = p.vertices[1..].iter().map(|v| v.iter().zip(base).map(|(a, b)| a - b).collect()).collect();
    RatMatrix::from_rows(rows)
}

/// All facets, sorted, by testing every `n`-subset of vertices for a supporting hyperplane.
pub fn facets(p: &LatticePolytope) -> Result<Vec<Facet>> {
    let n = p.dim;
    if n == 0 || p.vertices.len() <= n || differences(p)?.rank() < n {
        return Err(Error::Dimension(format!("polytope is not full-dimensional in dimension {n}")));
    }
    let mut found = BTreeSet::new();
    for subset in combinations(p.vertices.len(), n) {
        let base = &p.vertices[subset[0]];
        let rows: Vec<Vec<Rat>> = subset[1..]
            .iter()
            .map(|&i| p.vertices[i].iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        let kernel = if rows.is_empty() {
            // dimension 1: every vertex is its own hyperplane
            vec![vec![Rat::one()]]
        } else {
            RatMatrix::from_rows(rows)?.kernel()
        };
        if kernel.len() != 1 {
            continue;
        }
        let mut normal = primitive(&kernel[0]);
        let value = |u: &[BigInt], x: &[Rat]| u.iter().zip(x).fold(Rat::zero(), |acc, (a, b)| acc + Rat::from_integer(a.clone()) * b);
        let h = value(&normal, base);
        let above = p.vertices.iter().filter(|v| value(&normal, v) > h).count();
        let below = p.vertices.iter().filter(|v| value(&normal, v) < h).count();
        let h = match (above, below) {
            (_, 0) => h,
            (0, _) => {
                normal.iter_mut().for_each(|x| *x = -x.clone());
                -h
            }
            _ => continue,
        };
        found.insert(Facet { normal, offset: -h });
    }
    Ok(found.into_iter().collect())
}

fn require_interior_origin(fs: &[Facet]) -> Result<()> {
    if fs.iter().any(|f| !f.offset.is_positive()) {
        return Err(Error::Polarity);
    }
    Ok(())
}

/// The polar `{x : <x, P> >= -1}`, with vertices `normal / offset`.
pub fn polar_dual(p: &LatticePolytope) -> Result<LatticePolytope> {
    let fs = facets(p)?;
    require_interior_origin(&fs)?;
    let mut vertices: Vec<Vec<Rat>> =
        fs.iter().map(|f| f.normal.iter().map(|u| Rat::from_integer(u.clone()) / &f.offset).collect()).collect();
    vertices.sort();
    LatticePolytope::new(p.dim, vertices)
}

/// A lattice polytope whose polar is again a lattice polytope.
pub fn is_reflexive(p: &LatticePolytope) -> Result<bool> {
    Ok(p.is_lattice() && polar_dual(p)?.is_lattice())
}

/// Every integer point of `P`, in lexicographic order.
pub fn lattice_points(p: &LatticePolytope) -> Result<Vec<Vec<BigInt>>> {
    let fs = facets(p)?;
    let lo: Vec<BigInt> = (0..p.dim).map(|i| p.vertices.iter().map(|v| v[i].ceil().to_integer()).min().unwrap()).collect();
    let hi: Vec<BigInt> = (0..p.dim).map(|i| p.vertices.iter().map(|v| v[i].floor().to_integer()).max().unwrap()).collect();
    let mut out = Vec::new();
    let mut x = lo.clone();
    'scan: loop {
        let xr: Vec<Rat> = x.iter().map(|c| Rat::from_integer(c.clone())).collect();
        if fs.iter().all(|f| f.contains(&xr)) {
            out.push(x.clone());
        }
        // odometer, last coordinate fastest
        for i in (0..p.dim).rev() {
            if x[i] < hi[i] {
                x[i] += 1;
                for j in i + 1..p.dim {
                    x[j] = lo[j].clone();
                }
                continue 'scan;
            }
        }
        break;
    }
    Ok(out)
}

/// Index in `Z^n` of the lattice spanned by the integer points of `P`.
pub fn points_span_index(p: &LatticePolytope) -> Result<BigInt> {
    match span_index(p.dim, &lattice_points(p)?)? {
        LatticeIndex::Finite(k) => Ok(k),
        LatticeIndex::Infinite => Err(Error::Rank("lattice points span a proper subspace (infinite index)".into())),
    }
}

/// Whether the normal vector has content 1.
pub fn is_primitive(v: &[BigInt]) -> bool {
    content(v).is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quintic() -> LatticePolytope {
        LatticePolytope::from_integer(&[
            vec![1, 0, 0, 0],
            vec![0, 1, 0, 0],
            vec![0, 0, 1, 0],
            vec![0, 0, 0, 1],
            vec![-1, -1, -1, -1],
        ])
        .unwrap()
    }

    #[test]
    fn square_facets() {
        let sq = LatticePolytope::from_integer(&[vec![1, 1], vec![1, -1], vec![-1, 1], vec![-1, -1]]).unwrap();
        let fs = facets(&sq).unwrap();
        let normals: BTreeSet<Vec<BigInt>> = fs.iter().map(|f| f.normal.clone()).collect();
        let expect: BTreeSet<Vec<BigInt>> =
            [[1, 0], [-1, 0], [0, 1], [0, -1]].iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect()).collect();
        assert_eq!(normals, expect);
        assert!(fs.iter().all(|f| f.offset == int(1)));
    }

    #[test]
    fn degenerate_is_dimension_error() {
        let seg = LatticePolytope::from_integer(&[vec![0, 0], vec![1, 1]]).unwrap();
        assert!(matches!(facets(&seg), Err(Error::Dimension(_))));
        let flat = LatticePolytope::from_integer(&[vec![0, 0], vec![1, 1], vec![2, 2]]).unwrap();
        assert!(matches!(facets(&flat), Err(Error::Dimension(_))));
    }

    #[test]
    fn quintic_polar_and_points() {
        let q = quintic();
        assert_eq!(facets(&q).unwrap().len(), 5);
        let polar = polar_dual(&q).unwrap();
        let expect = LatticePolytope::from_integer(&[
            vec![4, -1, -1, -1],
            vec![-1, 4, -1, -1],
            vec![-1, -1, 4, -1],
            vec![-1, -1, -1, 4],
            vec![-1, -1, -1, -1],
        ])
        .unwrap();
        assert_eq!(polar.vertex_set(), expect.vertex_set());
        assert_eq!(polar_dual(&polar).unwrap().vertex_set(), q.vertex_set());
        assert!(is_reflexive(&q).unwrap());
        assert_eq!(lattice_points(&q).unwrap().len(), 6);
        assert_eq!(lattice_points(&polar).unwrap().len(), 126);
        assert_eq!(points_span_index(&q).unwrap(), BigInt::one());
    }

    #[test]
    fn non_reflexive_triangle() {
        let t = LatticePolytope::from_integer(&[vec![2, 0], vec![0, 1], vec![-1, -1]]).unwrap();
        assert!(!is_reflexive(&t).unwrap());
        assert!(!polar_dual(&t).unwrap().is_lattice());
    }

    #[test]
    fn origin_outside_is_polarity_error() {
        let t = LatticePolytope::from_integer(&[vec![0, 0], vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(polar_dual(&t), Err(Error::Polarity));
        let shifted = LatticePolytope::from_integer(&[vec![1, 1], vec![2, 1], vec![1, 2]]).unwrap();
        assert_eq!(is_reflexive(&shifted), Err(Error::Polarity));
    }

    #[test]
    fn rejects_repeated_vertex() {
        assert!(LatticePolytope::from_integer(&[vec![1, 0], vec![1, 0], vec![0, 1]]).is_err());
    }

    #[test]
    fn rank_deficient_points() {
        let mut p = quintic();
        p.vertices.truncate(4);
        assert!(facets(&p).is_err());
    }
}
