//! Exhaustive and seeded corpora that exercise each theorem's conclusion.
//!
//! Failures are findings, not errors: every check reports its instance count
//! and the first few failing instances in a replayable JSON form.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::antipode::{box_boundary, box_involution, cycle_antipode, Cycle, NBox};
use crate::borsuk_ulam::{
    antipodal_witness_1d, antipodal_witness_high_dim, counterexample_fixture, ivt_witness,
    reconstruct_high_dim_witness, sample_continuous, simplex_coincidence_witness, HighDimVariant,
};
use crate::error::Error;
use crate::lattice::{interval, Adjacency, DigitalImage, Point};
use crate::maps::{compose, pointwise_combine, power_continuity_equivalent, GridFunction};

/// Failing instances kept per check.
const KEEP: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scope {
    Dim1,
    HighDim,
    Counterexample,
    All,
}

impl Scope {
    fn includes(self, other: Scope) -> bool {
        self == Scope::All || self == other
    }
}

impl FromStr for Scope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "dim1" => Ok(Scope::Dim1),
            "highdim" => Ok(Scope::HighDim),
            "counterexample" => Ok(Scope::Counterexample),
            "all" => Ok(Scope::All),
            _ => Err(Error::invalid(format!("unknown scope {s:?}"))),
        }
    }
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scope::Dim1 => "dim1",
            Scope::HighDim => "highdim",
            Scope::Counterexample => "counterexample",
            Scope::All => "all",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub claim: String,
    pub passed: bool,
    pub instances: u64,
    pub failures: u64,
    pub failing_instances: Vec<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub scope: Scope,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<CheckReport>,
}

struct Tally {
    report: CheckReport,
}

impl Tally {
    fn new(name: &str, claim: &str) -> Self {
        Tally {
            report: CheckReport {
                name: name.into(),
                claim: claim.into(),
                passed: true,
                instances: 0,
                failures: 0,
                failing_instances: Vec::new(),
                note: None,
            },
        }
    }

    fn record(&mut self, ok: bool, instance: impl FnOnce() -> Value) {
        self.report.instances += 1;
        if !ok {
            self.report.passed = false;
            self.report.failures += 1;
            if self.report.failing_instances.len() < KEEP {
                self.report.failing_instances.push(instance());
            }
        }
    }

    fn finish(self) -> CheckReport {
        self.report
    }
}

pub fn run(scope: Scope, seed: u64) -> VerificationReport {
    let mut checks = Vec::new();
    if scope.includes(Scope::Dim1) {
        checks.push(cycle_fixture());
        checks.extend(dim1_exhaustive());
        checks.push(lipschitz_algebra(seed, 1000));
    }
    if scope.includes(Scope::HighDim) {
        checks.extend(high_dim_random(seed, 500, 200, 200));
    }
    if scope.includes(Scope::Counterexample) {
        checks.extend(counterexample_claims());
    }
    VerificationReport {
        scope,
        seed,
        passed: checks.iter().all(|c| c.passed),
        checks,
    }
}

fn cycle_fixture() -> CheckReport {
    let mut t = Tally::new(
        "dim1_fixture",
        "(0,0,1,2,2,2,2,1) on C_8 is continuous, never equals its antipode, and has an antipodal gap of 1",
    );
    let cycle = Cycle::new(8).unwrap();
    let values = [0, 0, 1, 2, 2, 2, 2, 1];
    let f = GridFunction::integer_values(cycle.image().clone(), &values).unwrap();
    let inv = cycle_antipode(&cycle).unwrap();
    let no_fixed = (0..8).all(|i| values[i] != values[(i + 4) % 8]);
    let gap = antipodal_witness_1d(&inv, &f).map(|w| w.distance);
    t.record(f.is_continuous() && no_fixed && gap.as_ref().ok() == Some(&1), || {
        json!({ "values": values, "gap": gap.map_err(|e| e.to_string()) })
    });
    t.finish()
}

/// Calls `visit` with every function `C_n → [0, top]` in odometer order.
pub fn for_each_cycle_function(n: usize, top: i64, mut visit: impl FnMut(&[i64])) {
    let mut values = vec![0i64; n];
    loop {
        visit(&values);
        let mut t = 0;
        while t < n && values[t] == top {
            values[t] = 0;
            t += 1;
        }
        if t == n {
            return;
        }
        values[t] += 1;
    }
}

fn dim1_exhaustive() -> Vec<CheckReport> {
    let mut bu = Tally::new(
        "bu_dim1_exhaustive",
        "every f: C_n -> [0,3] with Lipschitz constant m has a point with |f(x) - f(-x)| < 2m (n in 4,6,8; m in 1,2)",
    );
    let mut ivt = Tally::new(
        "ivt_exhaustive",
        "on the same corpus, every f(x) <= c <= f(y) has a z with |f(z) - c| < m",
    );
    for n in [4, 6, 8] {
        let cycle = Cycle::new(n).unwrap();
        let inv = cycle_antipode(&cycle).unwrap();
        let points: Vec<Point> = (0..n).map(|i| cycle.point(i)).collect();
        for_each_cycle_function(n, 3, |values| {
            let f = GridFunction::integer_values(cycle.image().clone(), values).unwrap();
            let lip = f.min_lipschitz().unwrap().constant;
            for m in [1u64, 2] {
                if lip > m {
                    continue;
                }
                let w = antipodal_witness_1d(&inv, &f);
                bu.record(w.as_ref().is_ok_and(|w| w.within_dim1_bound(m)), || {
                    json!({ "n": n, "m": m, "values": values, "result": format!("{w:?}") })
                });
                for (i, x) in points.iter().enumerate() {
                    for (j, y) in points.iter().enumerate() {
                        for c in values[i]..=values[j] {
                            let z = ivt_witness(&f, m, x, y, c);
                            let ok = z.as_ref().is_ok_and(|z| {
                                f.value(z).unwrap().coord(0).abs_diff(c) < m
                            });
                            ivt.record(ok, || {
                                json!({ "n": n, "m": m, "values": values, "x": i, "y": j, "c": c,
                                        "result": format!("{z:?}") })
                            });
                        }
                    }
                }
            }
        });
    }
    vec![bu.finish(), ivt.finish()]
}

/// A random subset of `[0,5]^2` with at most 30 points, under `c_1` or `c_2`.
pub fn random_small_image(rng: &mut impl Rng) -> Arc<DigitalImage> {
    let count = rng.gen_range(1..=30);
    let points: Vec<Point> = (0..count)
        .map(|_| Point::from([rng.gen_range(0..=5), rng.gen_range(0..=5)]))
        .collect();
    let k = rng.gen_range(1..=2);
    Arc::new(DigitalImage::new(points, Adjacency::ck(2, k).unwrap()).unwrap())
}

/// Integer values in `[-6, 6]`, smooth or rough depending on `rng`.
pub fn random_values(rng: &mut impl Rng, domain: &DigitalImage) -> Vec<i64> {
    let spread = rng.gen_range(0..=3);
    let slope = (rng.gen_range(-1..=1), rng.gen_range(-1..=1));
    domain
        .points()
        .iter()
        .map(|p| {
            let v = slope.0 * p.coord(0) + slope.1 * p.coord(1) - 3 + rng.gen_range(-spread..=spread);
            v.clamp(-6, 6)
        })
        .collect()
}

pub fn lipschitz_algebra(seed: u64, pairs: usize) -> CheckReport {
    let mut t = Tally::new(
        "lipschitz_algebra",
        "L(a f + b g) <= |a| L(f) + |b| L(g), L(h o f) <= L(h) L(f), and Lipschitz m iff continuous into c1^m (m = 1..4)",
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let outer_domain = Arc::new(DigitalImage::new(interval(-6, 6), Adjacency::c1(1)).unwrap());
    for _ in 0..pairs {
        let domain = random_small_image(&mut rng);
        let fv = random_values(&mut rng, &domain);
        let gv = random_values(&mut rng, &domain);
        let (a, b) = (rng.gen_range(-3..=3), rng.gen_range(-3..=3));
        let hv: Vec<i64> = (0..13).map(|_| rng.gen_range(-3..=3)).collect();
        let f = GridFunction::integer_values(domain.clone(), &fv).unwrap();
        let g = GridFunction::integer_values(domain.clone(), &gv).unwrap();
        let h = GridFunction::integer_values(outer_domain.clone(), &hv).unwrap();
        let lf = f.min_lipschitz().unwrap().constant;
        let lg = g.min_lipschitz().unwrap().constant;
        let lh = h.min_lipschitz().unwrap().constant;
        let sum = pointwise_combine(&f, &g, a, b).unwrap().min_lipschitz().unwrap().constant;
        let comp = compose(&f, &h).unwrap().min_lipschitz().unwrap().constant;
        let power_ok = (1..=4).all(|m| power_continuity_equivalent(&f, m).unwrap());
        let ok = sum <= a.unsigned_abs() * lf + b.unsigned_abs() * lg && comp <= lh * lf && power_ok;
        t.record(ok, || {
            json!({ "domain": domain.points(), "adjacency": domain.adjacency().to_string(),
                    "f": fv, "g": gv, "a": a, "b": b, "h_on_-6..6": hv })
        });
    }
    t.finish()
}

pub fn high_dim_random(seed: u64, c1: usize, c1_power2: usize, cn_minus1: usize) -> Vec<CheckReport> {
    let bx = NBox::cube(3, -1, 1).unwrap();
    let boundary = Arc::new(box_boundary(&bx, 3).unwrap());
    let cases = [
        ("c1", HighDimVariant::C1, c1),
        ("c1_power2", HighDimVariant::C1Power(2), c1_power2),
        ("cn_minus1", HighDimVariant::CnMinus1, cn_minus1),
    ];
    let mut out = Vec::new();
    for (k, (label, variant, count)) in cases.into_iter().enumerate() {
        let bound = variant.allowed_distance();
        let mut direct = Tally::new(
            &format!("bu_{label}_direct"),
            &format!("sampled continuous f on the boundary of [-1,1]^3 have x with f(x), f(-x) within {bound}"),
        );
        let mut rebuilt = Tally::new(
            &format!("bu_{label}_reconstruction"),
            "the proof route (coincidence simplex, shared point, vertex) yields a witness",
        );
        let codomain = variant.hypothesis(2).unwrap();
        let mut first_rejected = 0;
        for i in 0..count {
            let sub = seed ^ ((k as u64) << 32) ^ i as u64;
            let steps = 50 + (sub % 7) as usize * 60;
            let f = sample_continuous(boundary.clone(), codomain.clone(), steps, sub).unwrap();
            let replay = || json!({ "seed": sub, "steps": steps, "values": f.values() });
            let w = antipodal_witness_high_dim(&bx, &f, variant);
            direct.record(w.is_ok(), || json!({ "instance": replay(), "error": w.as_ref().err().map(|e| e.to_string()) }));
            let r = reconstruct_high_dim_witness(&bx, &f, variant);
            if r.as_ref().is_ok_and(|r| !r.rejected.is_empty()) {
                first_rejected += 1;
            }
            rebuilt.record(r.is_ok(), || json!({ "instance": replay(), "error": r.as_ref().err().map(|e| e.to_string()) }));
        }
        let mut rebuilt = rebuilt.finish();
        if first_rejected > 0 {
            rebuilt.note = Some(format!(
                "the first coincidence simplex failed a step on {first_rejected} instances; a later one succeeded"
            ));
        }
        out.push(direct.finish());
        out.push(rebuilt);
    }
    out
}

fn counterexample_claims() -> Vec<CheckReport> {
    let (bx, f) = counterexample_fixture();
    let boundary = f.domain().clone();
    let mut out = Vec::new();

    let mut t = Tally::new("counterexample_continuous", "the fixture is (c1, c1)-continuous");
    let gap = f.discontinuity();
    t.record(gap.is_none(), || json!({ "discontinuity": gap }));
    out.push(t.finish());

    let mut t = Tally::new(
        "counterexample_no_witness",
        "no boundary point has f(x) equal or c1-adjacent to f(-x)",
    );
    let close: Vec<Point> = boundary
        .points()
        .iter()
        .filter(|x| {
            let (a, b) = (f.value(x).unwrap(), f.value(&bx.reflect(x)).unwrap());
            a.l1_distance(b) <= 1
        })
        .cloned()
        .collect();
    t.record(close.is_empty(), || json!({ "close_points": close }));
    out.push(t.finish());

    let mut t = Tally::new(
        "counterexample_breaks_c2_c3",
        "(1,0,0) and (0,1,0) are c2- and c3-adjacent but their values are not c1-close",
    );
    let (p, q) = (Point::from([1, 0, 0]), Point::from([0, 1, 0]));
    for k in [2, 3] {
        let adj = Adjacency::ck(3, k).unwrap();
        let ok = adj.adjacent(&p, &q).unwrap()
            && f.value(&p).unwrap().l1_distance(f.value(&q).unwrap()) > 1;
        t.record(ok, || json!({ "k": k, "f(p)": f.value(&p).unwrap(), "f(q)": f.value(&q).unwrap() }));
    }
    out.push(t.finish());

    // The simplex lemma needs no continuity, so it still applies under c3.
    let mut t = Tally::new(
        "counterexample_simplex_lemma",
        "some c3-simplex of the boundary has f(σ) and f(-σ) with meeting hulls",
    );
    let inv = box_involution(&bx, 3).unwrap();
    let g = f.with_domain_adjacency(Adjacency::ck(3, 3).unwrap()).unwrap();
    let s = simplex_coincidence_witness(&inv, &g);
    t.record(s.is_ok(), || json!({ "error": s.as_ref().err().map(|e| e.to_string()) }));
    out.push(t.finish());
    out
}
