//! Invariant unimodular lattices inside a real monodromy class.
//!
//! A lattice is described by its adapted basis `l1..l4` in the standard basis
//! `e1..e4`:
//!
//! ```text
//! l1 = e1/√t + α e2/(rt√t) + β e3/√t + γ e4/(rt√t)
//! l2 = e2/(r√t) + δ e3/√t + μ e4/(r√t)
//! l3 = r√t e3 + α e4/√t
//! l4 = √t e4
//! ```
//!
//! Multiplying by `√t` makes every entry rational, so lattices are compared
//! through the column Hermite normal form of `√t · basis`.

mod filtration;
mod table1;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::hnf::column_hnf;
use crate::exact::rat::{content, int, rat};
use crate::exact::{Matrix, QuadElem, Rat, RatMatrix};
use crate::monodromy::MonodromyClass;

pub use filtration::{is_lowered_by, weight_filtration, WeightFiltration};
pub use table1::{
    parse_expected, table1, table1_with, ExpectedRow, Table1Report, Table1Row, EXPECTED_TABLE1,
};

/// The divisibility invariants of a lattice; `m = r^2 s t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rst {
    pub r: u64,
    pub s: u64,
    pub t: u64,
}

impl Rst {
    pub fn new(r: u64, s: u64, t: u64) -> Self {
        Self { r, s, t }
    }

    pub fn product(&self) -> u64 {
        self.r * self.r * self.s * self.t
    }
}

impl fmt::Display for Rst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.r, self.s, self.t)
    }
}

/// The integers `(α, β, γ, δ, μ)` of the adapted basis.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Residues {
    pub alpha: i64,
    pub beta: i64,
    pub gamma: i64,
    pub delta: i64,
    pub mu: i64,
}

impl Residues {
    pub fn new(alpha: i64, beta: i64, gamma: i64, delta: i64, mu: i64) -> Self {
        Self { alpha, beta, gamma, delta, mu }
    }

    pub fn as_array(&self) -> [i64; 5] {
        [self.alpha, self.beta, self.gamma, self.delta, self.mu]
    }
}

/// All `(r, s, t)` with `m = r^2 s t` and `t | a`.
pub fn strata(m: i64, a: i64) -> Vec<Rst> {
    if m <= 0 {
        return Vec::new();
    }
    let m = m as u64;
    let mut out = Vec::new();
    for t in (1..=m).filter(|t| m % t == 0 && a % (*t as i64) == 0) {
        for r in (1..=m).take_while(|r| r * r * t <= m) {
            if (m / t) % (r * r) == 0 {
                out.push(Rst::new(r, m / (t * r * r), t));
            }
        }
    }
    out.sort();
    out
}

fn check_stratum(cls: &MonodromyClass, rst: Rst) -> Result<()> {
    if rst.r == 0 || rst.s == 0 || rst.t == 0 {
        return Err(Error::Precondition(format!("r, s, t must be positive, got {rst}")));
    }
    if rst.product() as i64 != cls.m() {
        return Err(Error::Precondition(format!("m = {} != r^2 s t for {rst}", cls.m())));
    }
    if cls.a() % rst.t as i64 != 0 {
        return Err(Error::Precondition(format!("t = {} does not divide a = {}", rst.t, cls.a())));
    }
    Ok(())
}

/// Integer screen equivalent to integrality of `N0`, `N1` and the pairing on the candidate lattice.
///
/// Works on `rt · √t · basis`, which is an integer lower-triangular matrix.
#[derive(Clone, Copy, Debug)]
struct Screen {
    m: i128,
    a: i128,
    r: i128,
    t: i128,
}

impl Screen {
    fn new(cls: &MonodromyClass, rst: Rst) -> Self {
        Self { m: cls.m() as i128, a: cls.a() as i128, r: rst.r as i128, t: rst.t as i128 }
    }

    fn columns(&self, p: &Residues) -> [[i128; 4]; 4] {
        let (r, t) = (self.r, self.t);
        let [al, be, ga, de, mu] = p.as_array().map(|x| x as i128);
        [
            [r * t, al, r * t * be, ga],
            [0, t, r * t * de, t * mu],
            [0, 0, r * r * t * t, r * t * al],
            [0, 0, 0, r * t * t],
        ]
    }

    fn contains(cols: &[[i128; 4]; 4], mut y: [i128; 4]) -> bool {
        for j in 0..4 {
            let d = cols[j][j];
            if y[j] % d != 0 {
                return false;
            }
            let q = y[j] / d;
            for (yi, ci) in y.iter_mut().zip(cols[j]).skip(j) {
                *yi -= q * ci;
            }
        }
        true
    }

    fn pair(&self, x: &[i128; 4], y: &[i128; 4]) -> i128 {
        // x^T G y with G = [[0,-a,-1,-1],[a,0,1,0],[1,-1,0,0],[1,0,0,0]]
        let a = self.a;
        x[0] * (-a * y[1] - y[2] - y[3]) + x[1] * (a * y[0] + y[2]) + x[2] * (y[0] - y[1]) + x[3] * y[0]
    }

    fn accepts(&self, p: &Residues) -> bool {
        let cols = self.columns(p);
        for c in &cols {
            let n0 = [0, c[0], self.m * c[1], c[2]];
            let n1 = [-(self.a * c[1] + c[2] + c[3]), 0, 0, 0];
            if !Self::contains(&cols, n0) || !Self::contains(&cols, n1) {
                return false;
            }
        }
        let modulus = self.t * (self.r * self.t) * (self.r * self.t);
        (0..4).all(|i| (i + 1..4).all(|j| self.pair(&cols[i], &cols[j]) % modulus == 0))
    }
}

/// `√t · basis`: the rational matrix whose columns are `√t l1, ..., √t l4`.
pub fn scaled_basis(rst: Rst, p: &Residues) -> RatMatrix {
    let (r, t) = (rst.r as i64, rst.t as i64);
    let rt = r * t;
    let mut m = RatMatrix::zeros(4, 4);
    m[(0, 0)] = int(1);
    m[(1, 0)] = rat(p.alpha, rt);
    m[(2, 0)] = int(p.beta);
    m[(3, 0)] = rat(p.gamma, rt);
    m[(1, 1)] = rat(1, r);
    m[(2, 1)] = int(p.delta);
    m[(3, 1)] = rat(p.mu, r);
    m[(2, 2)] = int(rt);
    m[(3, 2)] = int(p.alpha);
    m[(3, 3)] = int(t);
    m
}

/// An invariant lattice on which the pairing is perfect.
#[derive(Clone, Debug)]
pub struct LatticeClass {
    pub real_class: Arc<MonodromyClass>,
    pub rst: Rst,
    pub params: Residues,
    /// Columns `l1..l4` in the standard basis.
    pub basis: Matrix<QuadElem>,
    /// Column HNF of `√t · basis`.
    pub canonical: RatMatrix,
    /// The pairing in the basis `l1..l4`.
    pub gram_adapted: RatMatrix,
    pub t0_adapted: RatMatrix,
    pub t1_adapted: RatMatrix,
}

impl PartialEq for LatticeClass {
    fn eq(&self, other: &Self) -> bool {
        self.real_class.invariants == other.real_class.invariants
            && self.rst.t == other.rst.t
            && self.canonical == other.canonical
    }
}

impl Eq for LatticeClass {}

impl LatticeClass {
    pub fn scaled_basis(&self) -> RatMatrix {
        scaled_basis(self.rst, &self.params)
    }

    fn sort_key(&self) -> (u64, u64, u64, &[Rat]) {
        (self.rst.t, self.rst.r, self.rst.s, self.canonical.entries())
    }
}

fn to_rational(m: &Matrix<QuadElem>, what: &str) -> Result<RatMatrix> {
    m.try_map(QuadElem::to_rat)
        .ok_or_else(|| Error::Internal(format!("{what} has irrational entries")))
}

/// `+-1` corners, zeros below the anti-diagonal, antisymmetric, determinant 1.
pub fn has_adapted_shape(g: &RatMatrix) -> bool {
    let antisymmetric = (0..4).all(|i| (0..4).all(|j| g[(i, j)] == -g[(j, i)].clone()));
    let lower_zero = (0..4).all(|i| (0..4).all(|j| i + j < 4 || g[(i, j)].is_zero()));
    antisymmetric
        && lower_zero
        && g[(0, 3)] == int(-1)
        && g[(1, 2)] == int(1)
        && g.is_integral()
        && g.det().map(|d| d.is_one()).unwrap_or(false)
}

/// The lattice with adapted basis given by `(r, s, t)` and `params`, if it is invariant and unimodular.
pub fn build_candidate(cls: &Arc<MonodromyClass>, rst: Rst, params: Residues) -> Result<Option<LatticeClass>> {
    check_stratum(cls, rst)?;
    if !Screen::new(cls, rst).accepts(&params) {
        return Ok(None);
    }
    assemble(cls, rst, params).map(Some)
}

fn assemble(cls: &Arc<MonodromyClass>, rst: Rst, params: Residues) -> Result<LatticeClass> {
    let t = rst.t;
    let scaled = scaled_basis(rst, &params);
    let inv_t = Rat::new(BigInt::one(), BigInt::from(t));
    let basis = scaled.map(|x| QuadElem::times_sqrt(x * &inv_t, t).expect("t is positive"));
    let lift = |m: &RatMatrix| m.map(|x| QuadElem::from_rat(x.clone()));
    let basis_inv = basis.inverse()?;
    let t0_adapted = to_rational(&basis_inv.matmul(&lift(&cls.t0))?.matmul(&basis)?, "T0 in the adapted basis")?;
    let t1_adapted = to_rational(&basis_inv.matmul(&lift(&cls.t1))?.matmul(&basis)?, "T1 in the adapted basis")?;
    let gram_adapted = to_rational(&basis.transpose().matmul(&lift(&cls.gram))?.matmul(&basis)?, "adapted pairing")?;
    if !t0_adapted.is_integral() || !t1_adapted.is_integral() || !has_adapted_shape(&gram_adapted) {
        return Err(Error::Internal(format!("integer screen accepted {rst} {params:?} but the exact check failed")));
    }
    let canonical = column_hnf(&scaled)?;
    Ok(LatticeClass { real_class: Arc::clone(cls), rst, params, basis, canonical, gram_adapted, t0_adapted, t1_adapted })
}

/// The lattice spanned by the standard basis, with `(r, s, t) = (1, m, 1)`.
pub fn standard_lattice(cls: &Arc<MonodromyClass>) -> Result<LatticeClass> {
    if !cls.invariants.b.is_one() {
        return Err(Error::NoSymplecticForm(crate::exact::rat::fmt_rat(&cls.invariants.b)));
    }
    let rst = Rst::new(1, cls.m() as u64, 1);
    build_candidate(cls, rst, Residues::default())?
        .ok_or_else(|| Error::Internal("standard lattice rejected".into()))
}

/// The region of `(α, β, γ, δ, μ)` swept for each `(r, s, t)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ResidueBox {
    /// `[0,t) x [0,rt) x [0,rt^2) x [0,rt) x [0,rt)`: one representative per lattice.
    Fundamental,
    /// The fundamental box with every side multiplied by `k`.
    Scaled(u64),
    /// The cube `[0, 2 r t lcm(r, s, t))^5`.
    LcmCube,
}

impl ResidueBox {
    pub fn sides(&self, rst: Rst) -> [u64; 5] {
        let Rst { r, s, t } = rst;
        let fundamental = [t, r * t, r * t * t, r * t, r * t];
        match *self {
            ResidueBox::Fundamental => fundamental,
            ResidueBox::Scaled(k) => fundamental.map(|x| x * k),
            ResidueBox::LcmCube => [2 * r * t * r.lcm(&s).lcm(&t); 5],
        }
    }

    pub fn volume(&self, rst: Rst) -> u128 {
        self.sides(rst).iter().map(|&x| x as u128).product()
    }
}

fn decode(mut idx: u64, sides: &[u64; 5]) -> Residues {
    let mut v = [0i64; 5];
    for k in (0..5).rev() {
        v[k] = (idx % sides[k]) as i64;
        idx /= sides[k];
    }
    Residues::new(v[0], v[1], v[2], v[3], v[4])
}

/// Residues accepted by the integer screen in one stratum, in sweep order.
pub fn accepted_residues(cls: &MonodromyClass, rst: Rst, sweep: ResidueBox) -> Result<Vec<Residues>> {
    check_stratum(cls, rst)?;
    let sides = sweep.sides(rst);
    let total = sweep.volume(rst);
    let total = u64::try_from(total).map_err(|_| Error::Domain(format!("residue box for {rst} is too large")))?;
    let screen = Screen::new(cls, rst);
    let mut found: Vec<Residues> = (0..total)
        .into_par_iter()
        .map(|i| decode(i, &sides))
        .filter(|p| screen.accepts(p))
        .collect();
    found.sort();
    Ok(found)
}

/// All invariant unimodular lattices in the class, swept over the fundamental box.
pub fn enumerate_lattices(cls: &Arc<MonodromyClass>) -> Result<Vec<LatticeClass>> {
    enumerate_lattices_in(cls, ResidueBox::Fundamental)
}

/// Lattices found in `sweep`, deduplicated by canonical form and sorted by `(t, r, s, canonical)`.
pub fn enumerate_lattices_in(cls: &Arc<MonodromyClass>, sweep: ResidueBox) -> Result<Vec<LatticeClass>> {
    let mut out = Vec::new();
    for rst in strata(cls.m(), cls.a()) {
        let mut seen: BTreeMap<Vec<Rat>, ()> = BTreeMap::new();
        for p in accepted_residues(cls, rst, sweep)? {
            let canonical = column_hnf(&scaled_basis(rst, &p))?;
            if seen.insert(canonical.entries().to_vec(), ()).is_some() {
                continue;
            }
            out.push(assemble(cls, rst, p)?);
        }
    }
    out.sort_by(|x, y| x.sort_key().cmp(&y.sort_key()));
    Ok(out)
}

/// An adapted integral basis of the lattice spanned by the columns of `spanning`.
///
/// Columns `a_{4-i}, ..., a_4` span the intersection of the lattice with `W_{2i}`.
pub fn adapted_basis(cls: &MonodromyClass, spanning: &RatMatrix) -> Result<RatMatrix> {
    let frame = weight_filtration(&cls.n0())?.adapted_frame()?;
    let coords = frame.inverse()?.matmul(spanning)?;
    frame.matmul(&column_hnf(&coords)?)
}

fn abs_u64(x: &Rat, what: &str) -> Result<u64> {
    if !x.is_integer() {
        return Err(Error::Internal(format!("{what} is not an integer")));
    }
    x.to_integer()
        .abs()
        .to_u64()
        .ok_or_else(|| Error::Internal(format!("{what} does not fit in 64 bits")))
}

/// `(r, s, t)` read off from `N0` and `N1` in an adapted basis of the lattice spanned by `spanning`.
pub fn rst_of_span(cls: &MonodromyClass, spanning: &RatMatrix) -> Result<Rst> {
    let a = adapted_basis(cls, spanning)?;
    let n0 = a.conjugate(&cls.n0())?;
    let n1 = a.conjugate(&cls.n1())?;
    if !n0.is_integral() || !n1.is_integral() {
        return Err(Error::Internal("lattice is not invariant".into()));
    }
    let r = abs_u64(&n0[(1, 0)], "r")?;
    let r_dual = abs_u64(&n0[(3, 2)], "r")?;
    let s = abs_u64(&n0[(2, 1)], "s")?;
    let t = abs_u64(&n1[(0, 3)], "t")?;
    if r != r_dual || r * s * t == 0 {
        return Err(Error::Internal(format!("degenerate divisibilities r={r} r'={r_dual} s={s} t={t}")));
    }
    Ok(Rst::new(r, s, t))
}

/// `(r, s, t)` recomputed from the lattice itself.
pub fn invariants_rst(l: &LatticeClass) -> Result<Rst> {
    rst_of_span(&l.real_class, &l.scaled_basis())
}

/// Content (gcd of the entries) of `N1` in an adapted basis of the lattice.
pub fn n1_content(l: &LatticeClass) -> Result<BigInt> {
    let a = adapted_basis(&l.real_class, &l.scaled_basis())?;
    let n1 = a.conjugate(&l.real_class.n1())?;
    let ints = n1.to_integer().ok_or_else(|| Error::Internal("N1 is not integral".into()))?;
    Ok(content(ints.entries()))
}

/// `r = 1` and `N1 = t * N1'` with `N1'` integral and indivisible.
pub fn mirror_consistent(l: &LatticeClass) -> Result<bool> {
    let rst = invariants_rst(l)?;
    Ok(rst.r == 1 && n1_content(l)? == BigInt::from(rst.t))
}

/// Number of orbits of `lattices` under sign changes of the adapted basis vectors and of the pairing.
///
/// Each such change maps a lattice to itself, so this equals the number of distinct lattices.
pub fn sign_convention_orbits(lattices: &[LatticeClass]) -> Result<usize> {
    let mut reps: BTreeMap<(u64, Vec<Rat>), ()> = BTreeMap::new();
    for l in lattices {
        let scaled = l.scaled_basis();
        let mut orbit = Vec::new();
        for mask in 0u8..16 {
            let mut flipped = scaled.clone();
            for j in (0..4).filter(|j| mask & (1 << j) != 0) {
                for i in 0..4 {
                    flipped[(i, j)] = -flipped[(i, j)].clone();
                }
            }
            orbit.push(column_hnf(&flipped)?.entries().to_vec());
        }
        let rep = orbit.into_iter().min().expect("orbit is nonempty");
        reps.insert((l.rst.t, rep), ());
    }
    Ok(reps.len())
}

/// `true` iff `B1^{-1} B2` is an integer matrix of determinant `+-1`.
pub fn same_lattice(b1: &RatMatrix, b2: &RatMatrix) -> Result<bool> {
    let u = b1.inverse()?.matmul(b2)?;
    Ok(u.is_integral() && u.det()?.abs().is_one())
}
