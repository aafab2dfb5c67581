//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion
//! and exits non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use tropopt_core::location::{build_pq, solve_location};
use tropopt_core::{
    brute_force_min, contains, solve_box_constrained, solve_general, solve_linear_constrained,
    GridSpec, InfeasibilityReason, LocationInstance, Matrix, Outcome, ProblemInstance, Scalar,
    SemifieldKind, Solver, Tolerance,
};

use SemifieldKind::MaxPlus;

const NEG: f64 = f64::NEG_INFINITY;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn col(v: &[f64]) -> Matrix {
    Matrix::column(MaxPlus, v).unwrap()
}

fn mat(rows: &[[f64; 2]]) -> Matrix {
    Matrix::from_rows(MaxPlus, rows).unwrap()
}

fn worked() -> (Matrix, Matrix, Matrix, Matrix, Matrix) {
    (
        col(&[3.0, 14.0]),
        col(&[-12.0, -4.0]),
        mat(&[[0.0, -4.0], [-8.0, -6.0]]),
        col(&[2.0, -8.0]),
        col(&[6.0, 8.0]),
    )
}

fn exact() -> Solver {
    Solver::new(Tolerance::Fixed(0.0))
}

fn c1_unconstrained() -> Check {
    let (p, q, ..) = worked();
    let sol = exact().unconstrained(&p, &q).map_err(|e| e.to_string())?;
    ensure!(sol.theta.value() == 9.0, "θ = {}", sol.theta);
    ensure!(sol.x_lo.values() == [-6.0, 5.0], "x_lo = {}", sol.x_lo);
    ensure!(sol.x_hi.values() == [-3.0, 5.0], "x_hi = {}", sol.x_hi);

    const RUNS: u32 = 1000;
    let start = Instant::now();
    for _ in 0..RUNS {
        std::hint::black_box(exact().unconstrained(&p, &q).unwrap());
    }
    let per = start.elapsed() / RUNS;
    ensure!(per < Duration::from_millis(1), "{per:?} per solve");
    Ok(format!("θ = 9, x in [(-6,5), (-3,5)], {per:?} per solve"))
}

fn c2_box() -> Check {
    let (p, q, _, g, h) = worked();
    let out = exact()
        .box_constrained(&p, &q, &g, &h)
        .map_err(|e| e.to_string())?;
    let sol = out.optimal().ok_or("reported infeasible")?;
    ensure!(sol.theta.value() == 14.0, "θ = {}", sol.theta);
    ensure!(sol.x_lo.values() == [2.0, 0.0], "x_lo = {}", sol.x_lo);
    ensure!(sol.x_hi.values() == [2.0, 8.0], "x_hi = {}", sol.x_hi);
    Ok("θ = 14, x in [(2,0), (2,8)]".into())
}

fn c3_linear() -> Check {
    let (p, q, b, ..) = worked();
    let bstar = b.star().unwrap();
    ensure!(
        bstar.to_rows() == vec![vec![0.0, -4.0], vec![-8.0, 0.0]],
        "B* = {bstar}"
    );
    let qb = q.conjugate().unwrap().mul(&bstar).unwrap();
    ensure!(qb.values() == [12.0, 8.0], "q⁻B* = {qb}");
    let out = exact()
        .linear_constrained(&b, &p, &q)
        .map_err(|e| e.to_string())?;
    let sol = out.optimal().ok_or("reported infeasible")?;
    ensure!(sol.theta.value() == 11.0, "θ = {}", sol.theta);
    ensure!(
        sol.x_lo.values() == [-1.0, 3.0] && sol.x_hi.values() == [-1.0, 3.0],
        "x in [{}, {}]",
        sol.x_lo,
        sol.x_hi
    );
    Ok("B* = [0 -4; -8 0], q⁻B* = (12,8), θ = 11, x = (-1,3)".into())
}

fn general_solution() -> tropopt_core::SolutionSet {
    let (p, q, b, g, h) = worked();
    exact()
        .general(Some(&b), &p, &q, Some(&g), Some(&h))
        .unwrap()
        .into_optimal()
        .expect("optimal")
}

fn c4_general() -> Check {
    let (p, q, b, g, h) = worked();
    let bstar = b.star().unwrap();
    let bp = bstar.mul(&p).unwrap();
    ensure!(bp.values() == [10.0, 14.0], "B*p = {bp}");
    let hbp = h
        .conjugate()
        .unwrap()
        .mul(&bp)
        .unwrap()
        .to_scalar()
        .unwrap();
    ensure!(hbp.value() == 6.0, "h⁻B*p = {hbp}");
    let qbg = q
        .conjugate()
        .unwrap()
        .mul(&bstar)
        .unwrap()
        .mul(&g)
        .unwrap()
        .to_scalar()
        .unwrap();
    ensure!(qbg.value() == 14.0, "q⁻B*g = {qbg}");
    let sol = general_solution();
    ensure!(sol.theta.value() == 14.0, "θ = {}", sol.theta);
    ensure!(
        sol.u_lo.values() == [2.0, 0.0] && sol.u_hi.values() == [2.0, 6.0],
        "u in [{}, {}]",
        sol.u_lo,
        sol.u_hi
    );
    ensure!(
        sol.x_lo.values() == [2.0, 0.0] && sol.x_hi.values() == [2.0, 6.0],
        "x in [{}, {}]",
        sol.x_lo,
        sol.x_hi
    );
    Ok("B*p = (10,14), h⁻B*p = 6, q⁻B*g = 14, θ = 14, u = x in [(2,0), (2,6)]".into())
}

fn location_example() -> LocationInstance {
    LocationInstance::new(
        vec![
            vec![-7.0, 12.0],
            vec![2.0, 10.0],
            vec![-10.0, 3.0],
            vec![-4.0, 4.0],
            vec![-4.0, -3.0],
        ],
        vec![2.0, 1.0, 2.0, 1.0, 1.0],
    )
    .unwrap()
    .with_constraints(vec![vec![0.0, -4.0], vec![-8.0, -6.0]])
    .unwrap()
    .with_lower(vec![2.0, -8.0])
    .unwrap()
    .with_upper(vec![6.0, 8.0])
    .unwrap()
}

fn bits(v: &[f64]) -> Vec<u64> {
    v.iter().map(|x| x.to_bits()).collect()
}

fn c5_location() -> Check {
    let inst = location_example();
    let (p, q) = build_pq(inst.points(), inst.weights());
    ensure!(
        p == [3.0, 14.0] && q == [-12.0, -4.0],
        "p = {p:?}, q = {q:?}"
    );
    let out = solve_location(&inst).map_err(|e| e.to_string())?;
    let loc = out.optimal().ok_or("reported infeasible")?;
    ensure!(loc.theta == 14.0, "θ = {}", loc.theta);
    ensure!(
        loc.x_lower == [2.0, 0.0] && loc.x_upper == [2.0, 6.0],
        "x in [{:?}, {:?}]",
        loc.x_lower,
        loc.x_upper
    );
    let gen = general_solution();
    ensure!(
        loc.theta.to_bits() == gen.theta.value().to_bits(),
        "θ differs in bits"
    );
    for (name, a, b) in [
        ("u_lo", &loc.u_lower, &gen.u_lo),
        ("u_hi", &loc.u_upper, &gen.u_hi),
        ("x_lo", &loc.x_lower, &gen.x_lo),
        ("x_hi", &loc.x_upper, &gen.x_hi),
    ] {
        ensure!(
            bits(a) == bits(b.values()),
            "{name} differs in bits: {a:?} vs {b}"
        );
    }
    Ok("p = (3,14), q = (-12,-4), θ = 14, x in [(2,0), (2,6)], bit-identical to the general solver".into())
}

/// `k` for the additive kinds, `2^k` for the multiplicative ones.
fn encode(kind: SemifieldKind, k: i32) -> f64 {
    if kind.is_additive() {
        k as f64
    } else {
        2f64.powi(k)
    }
}

/// Random square matrix with `Tr ≤ 𝟙`: every entry sits at or below
/// (in the semifield order) `π_i π_j⁻¹` for random potentials `π`, so every
/// cycle product is at most 𝟙. Exponents stay in [-10, 10].
fn bounded_matrix(rng: &mut StdRng, kind: SemifieldKind, n: usize) -> Matrix {
    let pi: Vec<i32> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
    let mut v = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            if rng.gen_bool(0.2) {
                v.push(kind.zero());
            } else {
                let e = pi[i] - pi[j] - rng.gen_range(0..=4);
                v.push(encode(kind, if kind.is_max() { e } else { -e }));
            }
        }
    }
    Matrix::new(kind, n, n, v).unwrap()
}

fn regular(rng: &mut StdRng, kind: SemifieldKind, n: usize) -> Matrix {
    let v: Vec<f64> = (0..n)
        .map(|_| encode(kind, rng.gen_range(-10..=10)))
        .collect();
    Matrix::column(kind, &v).unwrap()
}

fn int_vec(rng: &mut StdRng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(-10..=10) as f64).collect()
}

/// Integer bounds with `g ≤ h` in [-10, 10].
fn bounds(rng: &mut StdRng, n: usize) -> (Vec<f64>, Vec<f64>) {
    let g = int_vec(rng, n);
    let h = g
        .iter()
        .map(|&gi| rng.gen_range(gi as i32..=10) as f64)
        .collect();
    (g, h)
}

fn c6_oracle() -> Check {
    const CASES: usize = 240;
    let mut rng = StdRng::seed_from_u64(6);
    let start = Instant::now();
    let (mut optimal, mut argmins) = (0, 0);
    for case in 0..CASES {
        let n = rng.gen_range(2..=3);
        let b = bounded_matrix(&mut rng, MaxPlus, n);
        let (g, h) = bounds(&mut rng, n);
        let inst = ProblemInstance::new(col(&int_vec(&mut rng, n)), col(&int_vec(&mut rng, n)))
            .and_then(|i| i.with_matrix(b))
            .and_then(|i| i.with_lower(col(&g)))
            .and_then(|i| i.with_upper(col(&h)))
            .unwrap();
        let grid = GridSpec::new(g, h, 0.5).unwrap();
        let oracle = brute_force_min(&inst, &grid, Tolerance::Policy).unwrap();
        match Solver::default().solve(&inst).unwrap() {
            Outcome::Optimal(sol) => {
                optimal += 1;
                let m = oracle
                    .min
                    .ok_or(format!("case {case}: oracle found no feasible point"))?;
                ensure!(
                    m.value() == sol.theta.value(),
                    "case {case}: θ = {}, oracle = {}",
                    sol.theta,
                    m
                );
                for x in &oracle.argmins {
                    ensure!(
                        contains(&sol, &inst, &col(x)).unwrap(),
                        "case {case}: argmin {x:?} not in the solution set"
                    );
                    argmins += 1;
                }
            }
            Outcome::Infeasible(r) => {
                ensure!(
                    oracle.min.is_none(),
                    "case {case}: solver says {:?}, oracle found points",
                    r.reason
                );
            }
        }
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    ensure!(
        optimal * 2 >= CASES,
        "only {optimal} of {CASES} instances were feasible"
    );
    Ok(format!(
        "{CASES} instances ({optimal} feasible), {argmins} argmins all contained, {elapsed:.2?}"
    ))
}

fn c7_properties() -> Check {
    const PER_KIND: usize = 250;
    let tol = Tolerance::Policy;
    let mut rng = StdRng::seed_from_u64(7);
    let mut counts = [0usize; 7];
    for kind in SemifieldKind::ALL {
        let one = Scalar::one(kind);
        for case in 0..PER_KIND {
            let a = Scalar::new(kind, encode(kind, rng.gen_range(-10..=10))).unwrap();
            let b = if rng.gen_bool(0.1) {
                Scalar::zero(kind)
            } else {
                Scalar::new(kind, encode(kind, rng.gen_range(-10..=10))).unwrap()
            };
            ensure!(a.add(a).unwrap() == a, "{kind} idempotency fails for {a}");
            counts[0] += 1;
            let s = a.add(b).unwrap();
            ensure!(
                a.leq(s).unwrap() && b.leq(s).unwrap(),
                "{kind} extremal property fails for {a}, {b}"
            );
            counts[1] += 1;

            let n = rng.gen_range(1..=4);
            let x = regular(&mut rng, kind, n);
            let y = regular(&mut rng, kind, n);
            let xc = x.conjugate().unwrap();
            let id = Matrix::identity(kind, n);
            ensure!(
                xc.mul(&x)
                    .unwrap()
                    .to_scalar()
                    .unwrap()
                    .approx_eq(one, tol)
                    .unwrap(),
                "{kind} x⁻x ≠ 𝟙 for x = {x}"
            );
            counts[2] += 1;
            ensure!(
                id.leq(&x.mul(&xc).unwrap(), tol).unwrap(),
                "{kind} xx⁻ ≱ I for x = {x}"
            );
            counts[3] += 1;
            let s = xc.mul(&y).unwrap().to_scalar().unwrap().inv().unwrap();
            let lhs = id.scale(s).unwrap();
            let rhs = x.mul(&y.conjugate().unwrap()).unwrap();
            ensure!(
                lhs.leq(&rhs, tol).unwrap(),
                "{kind} xy⁻ ≱ (x⁻y)⁻¹I for x = {x}, y = {y}"
            );
            counts[4] += 1;

            let m = bounded_matrix(&mut rng, kind, n);
            let star = m.star().unwrap();
            for k in 1..=(2 * n as u32) {
                ensure!(
                    m.power(k).unwrap().leq(&star, tol).unwrap(),
                    "{kind} case {case}: A^{k} ≰ A* for A = {m}"
                );
            }
            counts[5] += 1;
            ensure!(
                star.mul(&star).unwrap().approx_eq(&star, tol).unwrap(),
                "{kind} A*A* ≠ A* for A = {m}"
            );
            counts[6] += 1;
        }
    }
    ensure!(
        counts.iter().all(|&c| c >= 1000),
        "too few cases: {counts:?}"
    );
    Ok(format!(
        "idempotency, extremal, x⁻x, xx⁻, xy⁻, Carré, A*A* each over {} cases",
        counts[0]
    ))
}

fn c8_theta_forms() -> Check {
    const CASES: usize = 200;
    let mut rng = StdRng::seed_from_u64(8);
    let solver = Solver::default();
    for case in 0..CASES {
        let n = rng.gen_range(1..=4);
        let b = bounded_matrix(&mut rng, MaxPlus, n);
        let p = regular(&mut rng, MaxPlus, n);
        let q = regular(&mut rng, MaxPlus, n);
        let (t0, t2) = solver.theta_forms(&b, &p, &q).unwrap();
        ensure!(
            t0.value() == t2.value(),
            "case {case}: {t0} vs {t2} for B = {b}, p = {p}, q = {q}"
        );
    }
    Ok(format!("{CASES} instances, both forms identical"))
}

fn c9_specialization() -> Check {
    const CASES: usize = 150;
    let mut rng = StdRng::seed_from_u64(9);
    for case in 0..CASES {
        let n = rng.gen_range(1..=4);
        let p = regular(&mut rng, MaxPlus, n);
        let q = regular(&mut rng, MaxPlus, n);
        let (g, h) = bounds(&mut rng, n);
        let (g, h) = (col(&g), col(&h));
        let zero = Matrix::zeros(MaxPlus, n, n);
        let general = solve_general(Some(&zero), &p, &q, Some(&g), Some(&h)).unwrap();
        let boxed = solve_box_constrained(&p, &q, &g, &h).unwrap();
        ensure!(
            general == boxed,
            "case {case}: B = 0 gives {general:?}, box gives {boxed:?}"
        );

        let b = bounded_matrix(&mut rng, MaxPlus, n);
        let general = solve_general(Some(&b), &p, &q, None, None).unwrap();
        let linear = solve_linear_constrained(&b, &p, &q).unwrap();
        ensure!(
            general == linear,
            "case {case}: no bounds gives {general:?}, linear gives {linear:?}"
        );
    }
    Ok(format!(
        "{CASES} instances for each specialization, all fields equal"
    ))
}

/// Longest-path closure `B*` by Floyd-Warshall, diagonal lifted to 0.
fn closure(b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = b.len();
    let mut d = b.to_vec();
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                d[i][j] = d[i][j].max(d[i][k] + d[k][j]);
            }
        }
    }
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = row[i].max(0.0);
    }
    d
}

fn c10_infeasibility() -> Check {
    const CASES: usize = 60;
    let mut rng = StdRng::seed_from_u64(10);
    for case in 0..CASES {
        let n = rng.gen_range(2..=3);
        let mut b = bounded_matrix(&mut rng, MaxPlus, n).to_rows();
        if rng.gen_bool(0.5) {
            let i = rng.gen_range(0..n);
            b[i][i] = rng.gen_range(1..=5) as f64;
        } else {
            let v = rng.gen_range(-5..=5);
            b[0][1] = v as f64;
            b[1][0] = rng.gen_range(1 - v..=10) as f64;
        }
        let inst = ProblemInstance::new(col(&int_vec(&mut rng, n)), col(&int_vec(&mut rng, n)))
            .and_then(|i| i.with_matrix(Matrix::from_rows(MaxPlus, &b).unwrap()))
            .unwrap();
        let out = Solver::default().solve(&inst).unwrap();
        let r = out
            .infeasible()
            .ok_or(format!("case {case}: B = {b:?} reported optimal"))?;
        ensure!(
            r.reason == InfeasibilityReason::TrExceedsOne,
            "case {case}: reason {:?}",
            r.reason
        );
        let grid = GridSpec::cube(n, -10.0, 10.0, 0.5).unwrap();
        let oracle = brute_force_min(&inst, &grid, Tolerance::Policy).unwrap();
        ensure!(
            oracle.feasible_points == 0,
            "case {case}: oracle found {} feasible points",
            oracle.feasible_points
        );
    }

    let mut found = 0;
    while found < CASES {
        let n = rng.gen_range(2..=3);
        let b = bounded_matrix(&mut rng, MaxPlus, n);
        let (g, h) = bounds(&mut rng, n);
        let d = closure(&b.to_rows());
        let mut cond = NEG;
        for i in 0..n {
            for j in 0..n {
                cond = cond.max(-h[i] + d[i][j] + g[j]);
            }
        }
        if cond <= 0.0 {
            continue;
        }
        found += 1;
        let inst = ProblemInstance::new(col(&int_vec(&mut rng, n)), col(&int_vec(&mut rng, n)))
            .and_then(|i| i.with_matrix(b.clone()))
            .and_then(|i| i.with_lower(col(&g)))
            .and_then(|i| i.with_upper(col(&h)))
            .unwrap();
        let out = Solver::default().solve(&inst).unwrap();
        let r = out
            .infeasible()
            .ok_or(format!("B = {b}, g = {g:?}, h = {h:?} reported optimal"))?;
        ensure!(
            r.reason == InfeasibilityReason::BoundsIncompatible,
            "reason {:?}",
            r.reason
        );
        ensure!(
            r.detail.value() == cond,
            "reported h⁻B*g = {}, direct = {cond}",
            r.detail
        );
        let oracle =
            brute_force_min(&inst, &GridSpec::new(g, h, 0.5).unwrap(), Tolerance::Policy).unwrap();
        ensure!(
            oracle.feasible_points == 0,
            "oracle found {} feasible points",
            oracle.feasible_points
        );
    }
    Ok(format!(
        "{CASES} cycle cases and {CASES} bound cases, all confirmed"
    ))
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
}

fn plot(name: &str) -> Result<String, String> {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_tropopt"))
            .arg("plot")
            .arg(data(name))
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    ensure!(
        a.status.success(),
        "{name}: {}",
        String::from_utf8_lossy(&a.stderr)
    );
    ensure!(a.stdout == b.stdout, "{name}: output differs between runs");
    String::from_utf8(a.stdout).map_err(|e| e.to_string())
}

#[derive(Debug)]
struct Shape {
    tag: String,
    class: String,
    attrs: Vec<(String, String)>,
}

impl Shape {
    fn num(&self, key: &str) -> f64 {
        let v = &self.attrs.iter().find(|(k, _)| k == key).expect(key).1;
        v.parse().expect("numeric attribute")
    }

    fn points(&self) -> Vec<[f64; 2]> {
        let list = &self
            .attrs
            .iter()
            .find(|(k, _)| k == "points")
            .expect("points")
            .1;
        list.split(' ')
            .map(|p| {
                let (x, y) = p.split_once(',').unwrap();
                [x.parse().unwrap(), y.parse().unwrap()]
            })
            .collect()
    }
}

fn shapes(svg: &str) -> Vec<Shape> {
    let mut out = Vec::new();
    for line in svg.lines() {
        let Some(body) = line.strip_prefix('<').and_then(|l| l.strip_suffix("/>")) else {
            continue;
        };
        let (tag, mut rest) = body.split_once(' ').unwrap_or((body, ""));
        let mut attrs = Vec::new();
        while let Some((key, tail)) = rest.split_once("=\"") {
            let (value, tail) = tail.split_once('"').unwrap();
            attrs.push((key.trim().to_string(), value.to_string()));
            rest = tail;
        }
        let class = attrs
            .iter()
            .find(|(k, _)| k == "class")
            .map(|(_, v)| v.clone())
            .unwrap_or_default();
        out.push(Shape {
            tag: tag.to_string(),
            class,
            attrs,
        });
    }
    out
}

/// Figure coordinates (millimetres, 2 mm per unit, origin at (25, 20)) to
/// data coordinates.
fn fig(x: f64, y: f64) -> [f64; 2] {
    [(x - 25.0) / 2.0, (y - 20.0) / 2.0]
}

type Key = [u64; 2];

fn key(p: [f64; 2]) -> Key {
    [p[0].to_bits(), (p[1] + 0.0).to_bits()]
}

fn point_set(pts: impl IntoIterator<Item = [f64; 2]>) -> BTreeSet<Key> {
    pts.into_iter().map(key).collect()
}

fn segments(all: &[Shape], class: &str) -> BTreeSet<[Key; 2]> {
    all.iter()
        .filter(|s| s.tag == "line" && s.class == class)
        .map(|s| {
            let mut e = [
                key([s.num("x1"), s.num("y1")]),
                key([s.num("x2"), s.num("y2")]),
            ];
            e.sort();
            e
        })
        .collect()
}

fn segment(a: [f64; 2], b: [f64; 2]) -> [Key; 2] {
    let mut e = [key(a), key(b)];
    e.sort();
    e
}

fn rect_corners(all: &[Shape], class: &str) -> Option<BTreeSet<Key>> {
    let r = all.iter().find(|s| s.tag == "rect" && s.class == class)?;
    let (x, y, w, h) = (r.num("x"), r.num("y"), r.num("width"), r.num("height"));
    Some(point_set([[x, y], [x + w, y + h]]))
}

fn circles(all: &[Shape], class: &str) -> BTreeSet<Key> {
    point_set(
        all.iter()
            .filter(|s| s.tag == "circle" && s.class == class)
            .map(|s| [s.num("cx"), s.num("cy")]),
    )
}

fn polygon(all: &[Shape], class: &str) -> Option<BTreeSet<Key>> {
    all.iter()
        .find(|s| s.tag == "polygon" && s.class == class)
        .map(|s| point_set(s.points()))
}

fn c11_plots() -> Check {
    let pq = point_set([fig(1.0, 12.0), fig(31.0, 48.0)]);
    let gh = point_set([fig(29.0, 4.0), fig(37.0, 36.0)]);
    let right_segment = segment(fig(29.0, 20.0), fig(29.0, 32.0));
    let feasible = point_set([
        fig(29.0, 8.0),
        fig(29.0, 32.0),
        fig(33.0, 36.0),
        fig(37.0, 36.0),
        fig(37.0, 16.0),
    ]);
    let mut checked = 0;

    let u = shapes(&plot("unconstrained.json")?);
    ensure!(
        rect_corners(&u, "pq-box") == Some(pq.clone()),
        "unconstrained: p/q rectangle"
    );
    ensure!(
        segments(&u, "solution") == BTreeSet::from([segment(fig(13.0, 30.0), fig(19.0, 30.0))]),
        "unconstrained: solution segment {:?}",
        segments(&u, "solution")
    );
    checked += 2;

    let b = shapes(&plot("box.json")?);
    ensure!(
        rect_corners(&b, "pq-box") == Some(pq.clone()),
        "box: p/q rectangle"
    );
    ensure!(
        rect_corners(&b, "bounds") == Some(gh.clone()),
        "box: [g, h] rectangle"
    );
    ensure!(
        segments(&b, "solution") == BTreeSet::from([segment(fig(29.0, 20.0), fig(29.0, 36.0))]),
        "box: solution segment"
    );
    checked += 3;

    let l = shapes(&plot("linear.json")?);
    ensure!(
        rect_corners(&l, "pq-box") == Some(pq.clone()),
        "linear: p/q rectangle"
    );
    ensure!(
        circles(&l, "solution") == point_set([fig(23.0, 26.0)]),
        "linear: solution point"
    );
    // boundaries of the strip, each drawn through two figure points
    let offset = |a: [f64; 2]| a[1] - a[0];
    let strip: BTreeSet<u64> = [
        fig(5.0, 8.0),
        fig(37.0, 40.0),
        fig(22.0, 1.0),
        fig(47.0, 26.0),
    ]
    .into_iter()
    .map(|p| offset(p).to_bits())
    .collect();
    let drawn: BTreeSet<u64> = l
        .iter()
        .filter(|s| s.class == "constraint")
        .flat_map(|s| {
            [
                offset([s.num("x1"), s.num("y1")]),
                offset([s.num("x2"), s.num("y2")]),
            ]
        })
        .map(f64::to_bits)
        .collect();
    ensure!(
        strip.len() == 2 && drawn == strip,
        "linear: constraint lines off the strip boundaries"
    );
    checked += 3;

    for name in ["general.json", "location.json"] {
        let s = shapes(&plot(name)?);
        ensure!(
            rect_corners(&s, "pq-box") == Some(pq.clone()),
            "{name}: p/q rectangle"
        );
        ensure!(
            polygon(&s, "feasible") == Some(feasible.clone()),
            "{name}: feasible polygon"
        );
        ensure!(
            segments(&s, "solution") == BTreeSet::from([right_segment]),
            "{name}: solution segment"
        );
        checked += 3;
        if name == "location.json" {
            let dots = point_set(
                [
                    (11.0, 44.0),
                    (29.0, 40.0),
                    (5.0, 26.0),
                    (19.0, 28.0),
                    (17.0, 14.0),
                ]
                .map(|(x, y)| fig(x, y)),
            );
            let ends = [
                ((7.0, 40.0), (15.0, 48.0)),
                ((27.0, 38.0), (31.0, 42.0)),
                ((1.0, 22.0), (9.0, 30.0)),
                ((17.0, 26.0), (21.0, 30.0)),
                ((15.0, 12.0), (19.0, 16.0)),
            ];
            let hollow = point_set(
                ends.iter()
                    .flat_map(|&(a, b)| [fig(a.0, a.1), fig(b.0, b.1)]),
            );
            let spread: BTreeSet<_> = ends
                .iter()
                .map(|&(a, b)| segment(fig(a.0, a.1), fig(b.0, b.1)))
                .collect();
            let mut wrong = Vec::new();
            let show = |k: &Key| format!("({}, {})", f64::from_bits(k[0]), f64::from_bits(k[1]));
            for (what, drawn, expected) in [
                ("demand", circles(&s, "demand"), dots),
                ("shifted", circles(&s, "shifted"), hollow),
            ] {
                for k in drawn.difference(&expected) {
                    wrong.push(format!("{what} drawn at {} is not in the figure", show(k)));
                }
                for k in expected.difference(&drawn) {
                    wrong.push(format!("{what} at {} in the figure is not drawn", show(k)));
                }
            }
            let drawn_spread = segments(&s, "spread");
            let missing = spread.difference(&drawn_spread).count();
            if missing > 0 {
                wrong.push(format!(
                    "{missing} spread segment(s) differ from the figure"
                ));
            }
            ensure!(wrong.is_empty(), "location: {}", wrong.join("; "));
            checked += 3;
        }
    }
    Ok(format!(
        "{checked} geometric elements match the figures, output byte-stable"
    ))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("golden unconstrained", c1_unconstrained),
        ("golden box-constrained", c2_box),
        ("golden linear-constrained", c3_linear),
        ("golden general", c4_general),
        ("golden location", c5_location),
        ("oracle equivalence", c6_oracle),
        ("algebraic properties", c7_properties),
        ("theta-form equivalence", c8_theta_forms),
        ("specialization chain", c9_specialization),
        ("infeasibility detection", c10_infeasibility),
        ("plot reproduction", c11_plots),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match result {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail}", k + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
