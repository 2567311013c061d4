//! The acceptance checks, run in sequence with timings.

use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use sp4_core::exact::hnf::column_hnf;
use sp4_core::exact::poly::char_poly;
use sp4_core::exact::rat::{int, rat};
use sp4_core::exact::{Rat, RatMatrix};
use sp4_core::lattices::{enumerate_lattices, invariants_rst, is_lowered_by, weight_filtration, ExpectedRow};
use sp4_core::monodromy::{build_pair, enumerate_real_classes, preserves_form, recover_invariants, symplectic_form, RepInvariants};
use sp4_core::periods::{hypergeom_series, pf_residual, quintic_series, restriction_matches};
use sp4_core::polytopes::{is_reflexive, parse_polytope, points_span_index, polar_dual};

use crate::commands::{load_expected, table1_report, Failure, Outcome};
use crate::report::{Cell, Report};

type CheckResult = Result<String, String>;

const PROPERTY_CASES: usize = 200;
const RESTRICTION_ORDER: usize = 8;
const KAPPA: i64 = 2_985_984;

const QUINTIC: &str = include_str!("../../../fixtures/quintic.poly");
const QUINTIC_DUAL: &str = include_str!("../../../fixtures/quintic-dual.poly");
const TWIN: &str = include_str!("../../../fixtures/quintic-twin.poly");
const TWIN_DUAL: &str = include_str!("../../../fixtures/quintic-twin-dual.poly");
const KS212: &str = include_str!("../../../fixtures/kreuzer-scheidegger-212.poly");

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn real_classes(expected: &[ExpectedRow]) -> CheckResult {
    let classes = enumerate_real_classes().map_err(|e| e.to_string())?;
    ensure(classes.len() == expected.len(), || format!("{} classes, expected {}", classes.len(), expected.len()))?;
    for e in expected {
        let c = classes
            .iter()
            .find(|c| c.m() == e.m && c.a() == e.a)
            .ok_or_else(|| format!("({},{}) missing", e.m, e.a))?;
        let ex = c.exponents().map_err(|e| e.to_string())?;
        ensure(ex == e.exponents, || format!("({},{}) exponents differ", e.m, e.a))?;
    }
    Ok(format!("{} classes, exponents exact", classes.len()))
}

fn lattice_counts(expected: &[ExpectedRow]) -> CheckResult {
    let t = table1_report(expected).map_err(|f| f.message)?;
    let bad: Vec<String> = t
        .rows
        .iter()
        .filter(|r| !r.lattices_match())
        .map(|r| format!("({},{}) {} vs {}", r.m, r.a, r.lattices, r.expected.as_ref().map_or(0, |e| e.lattices)))
        .collect();
    ensure(bad.is_empty() && t.total_lattices == t.expected_totals.0, || {
        format!("total {} vs {}; rows {}", t.total_lattices, t.expected_totals.0, bad.join(", "))
    })?;
    Ok(format!("total {}", t.total_lattices))
}

fn mirror_consistent(expected: &[ExpectedRow]) -> CheckResult {
    let t = table1_report(expected).map_err(|f| f.message)?;
    let bad: Vec<String> =
        t.rows.iter().filter(|r| !r.mirror_consistent_match()).map(|r| format!("({},{})", r.m, r.a)).collect();
    ensure(bad.is_empty() && t.total_mirror_consistent == t.expected_totals.1, || {
        format!("total {} vs {}; rows {}", t.total_mirror_consistent, t.expected_totals.1, bad.join(", "))
    })?;
    Ok(format!("total {}, t-values exact", t.total_mirror_consistent))
}

fn invariant_relation() -> CheckResult {
    let mut n = 0;
    for cls in enumerate_real_classes().map_err(|e| e.to_string())? {
        let cls = Arc::new(cls);
        for l in enumerate_lattices(&cls).map_err(|e| e.to_string())? {
            let rst = invariants_rst(&l).map_err(|e| e.to_string())?;
            ensure(rst == l.rst, || format!("({},{}) recomputed {rst} vs {}", cls.m(), cls.a(), l.rst))?;
            ensure(rst.product() as i64 == cls.m() && cls.a() % rst.t as i64 == 0, || format!("relation fails at {rst}"))?;
            n += 1;
        }
    }
    Ok(format!("{n} lattices"))
}

fn picard_fuchs() -> CheckResult {
    let classes = enumerate_real_classes().map_err(|e| e.to_string())?;
    for c in &classes {
        let e: [Rat; 4] = c.exponents().map_err(|e| e.to_string())?.try_into().map_err(|_| "not 4 exponents")?;
        let r = pf_residual(&e, &hypergeom_series(&e, 25)).map_err(|e| e.to_string())?;
        ensure(r.is_zero(), || format!("({},{}) residual nonzero", c.m(), c.a()))?;
    }
    let fifths = [1, 2, 3, 4].map(|k| rat(k, 5));
    ensure(quintic_series(50) == hypergeom_series(&fifths, 50), || "quintic series differs".into())?;
    Ok(format!("{} residuals zero to order 25; quintic identity to order 50", classes.len()))
}

fn restriction() -> CheckResult {
    let (ok, kappa) = restriction_matches(RESTRICTION_ORDER).map_err(|e| e.to_string())?;
    ensure(ok && kappa == int(KAPPA), || format!("match={ok}, kappa={kappa}"))?;
    Ok(format!("match to order {RESTRICTION_ORDER}, kappa = {kappa}"))
}

fn polytopes() -> CheckResult {
    let load = |s: &str| parse_polytope(s).map(|f| f.polytope).map_err(|e| e.to_string());
    let (q, qd, tw, twd, ks) = (load(QUINTIC)?, load(QUINTIC_DUAL)?, load(TWIN)?, load(TWIN_DUAL)?, load(KS212)?);
    let polar = |p| polar_dual(p).map(|d| d.vertex_set()).map_err(|e| e.to_string());
    ensure(polar(&q)? == qd.vertex_set() && polar(&qd)? == q.vertex_set(), || "quintic polar pair differs".into())?;
    ensure(polar(&tw)? == twd.vertex_set(), || "quintic-twin polar differs from the printed one".into())?;
    for (name, p) in [("quintic", &q), ("quintic-twin", &tw), ("[2,12]", &ks)] {
        ensure(is_reflexive(p).map_err(|e| e.to_string())?, || format!("{name} not reflexive"))?;
    }
    let idx = points_span_index(&tw).map_err(|e| e.to_string())?;
    ensure(idx == BigInt::from(5), || format!("twin span index {idx}"))?;
    Ok("polars, reflexivity, twin index 5".into())
}

fn random_matrix(rng: &mut StdRng, lo: i64, hi: i64) -> RatMatrix {
    RatMatrix::new(4, 4, (0..16).map(|_| int(rng.gen_range(lo..=hi))).collect()).expect("4x4")
}

fn random_unimodular(rng: &mut StdRng) -> RatMatrix {
    let mut u = RatMatrix::identity(4);
    for _ in 0..8 {
        let (i, j) = (rng.gen_range(0..4), rng.gen_range(0..4));
        if i == j {
            continue;
        }
        let k = int(rng.gen_range(-3..=3));
        for r in 0..4 {
            let v = &u[(r, i)] + &k * &u[(r, j)];
            u[(r, i)] = v;
        }
    }
    u
}

fn transvection(gram: &RatMatrix, v: &[Rat], k: i64) -> RatMatrix {
    let gv = gram.apply(v).expect("4-vector");
    let mut s = RatMatrix::identity(4);
    for i in 0..4 {
        for j in 0..4 {
            let e = &s[(i, j)] + int(k) * &v[i] * &gv[j];
            s[(i, j)] = e;
        }
    }
    s
}

fn properties() -> CheckResult {
    let mut rng = StdRng::seed_from_u64(0x5eed_0004);
    let err = |e: sp4_core::Error| e.to_string();
    for _ in 0..PROPERTY_CASES {
        let m = random_matrix(&mut rng, -9, 9);
        let p = char_poly(&m).map_err(err)?;
        ensure(p.eval_matrix(&m).map_err(err)?.is_zero(), || "Cayley-Hamilton fails".into())?;
    }
    let mut hnf_cases = 0;
    while hnf_cases < PROPERTY_CASES {
        let m = random_matrix(&mut rng, -6, 6);
        if m.det().map_err(err)?.is_zero() {
            continue;
        }
        let u = random_unimodular(&mut rng);
        let h = column_hnf(&m).map_err(err)?;
        ensure(h == column_hnf(&m.matmul(&u).map_err(err)?).map_err(err)?, || "HNF not invariant".into())?;
        ensure(column_hnf(&h).map_err(err)? == h, || "HNF not idempotent".into())?;
        hnf_cases += 1;
    }
    for _ in 0..PROPERTY_CASES {
        let (m, a) = loop {
            let m = rng.gen_range(-20..=20);
            if m != 0 {
                break (m, rng.gen_range(-20..=20));
            }
        };
        let inv = RepInvariants::new(m, a);
        let (t0, t1) = build_pair(&inv).map_err(err)?;
        ensure(recover_invariants(&t0, &t1).map_err(err)? == inv, || format!("round trip fails at {inv}"))?;
        let g = symplectic_form(&inv).map_err(err)?;
        let v: Vec<Rat> = (0..4).map(|_| int(rng.gen_range(-3..=3))).collect();
        let s = transvection(&g, &v, rng.gen_range(-2..=2));
        ensure(preserves_form(&s, &g).map_err(err)?, || "transvection not symplectic".into())?;
        let (c0, c1) = (s.conjugate(&t0).map_err(err)?, s.conjugate(&t1).map_err(err)?);
        ensure(
            preserves_form(&t0, &g).map_err(err)?
                && preserves_form(&t1, &g).map_err(err)?
                && preserves_form(&c0, &g).map_err(err)?
                && preserves_form(&c1, &g).map_err(err)?,
            || format!("form not preserved at {inv}"),
        )?;
        let w = weight_filtration(&c0.minus_identity().map_err(err)?).map_err(err)?;
        ensure(is_lowered_by(&w, &c0.minus_identity().map_err(err)?).map_err(err)?, || "filtration not lowered".into())?;
        ensure((0..4).all(|i| w.w(i).len() == i + 1), || "filtration dimensions wrong".into())?;
    }
    Ok(format!("{PROPERTY_CASES} cases each"))
}

pub fn verify(expected_path: Option<&std::path::Path>) -> Result<Outcome, Failure> {
    let expected = load_expected(expected_path)?;
    let checks: Vec<(&'static str, Box<dyn Fn() -> CheckResult + '_>)> = vec![
        ("real-classes", Box::new(|| real_classes(&expected))),
        ("lattice-counts", Box::new(|| lattice_counts(&expected))),
        ("mirror-consistent", Box::new(|| mirror_consistent(&expected))),
        ("invariant-relation", Box::new(invariant_relation)),
        ("picard-fuchs", Box::new(picard_fuchs)),
        ("restriction-212", Box::new(restriction)),
        ("polytopes", Box::new(polytopes)),
        ("properties", Box::new(properties)),
    ];
    let mut report = Report::new("verify", &["check", "status", "millis", "detail"]);
    let mut failed = Vec::new();
    for (name, check) in &checks {
        let start = Instant::now();
        let result = check();
        let millis = start.elapsed().as_millis() as i64;
        let (status, detail) = match result {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed.push(format!("{name}: {d}"));
                ("FAIL", d)
            }
        };
        report.push(vec![Cell::text(*name), Cell::text(status), Cell::int(millis), Cell::text(detail)]);
    }
    report.note("passed", Cell::int((checks.len() - failed.len()) as i64));
    report.note("failed", Cell::int(failed.len() as i64));
    let failure = (!failed.is_empty()).then(|| Failure::verification(format!("failed checks: {}", failed.join("; "))));
    Ok(Outcome { report, failure })
}
