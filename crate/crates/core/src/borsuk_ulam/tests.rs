use super::*;
use crate::antipode::{cycle_antipode, Cycle};
use crate::lattice::interval;

fn line(lo: i64, hi: i64) -> Arc<DigitalImage> {
    Arc::new(DigitalImage::new(interval(lo, hi), Adjacency::c1(1)).unwrap())
}

fn pts(v: &[[i64; 2]]) -> Vec<Point> {
    v.iter().map(|&p| Point::from(p)).collect()
}

#[test]
fn ivt_examples() {
    let f = GridFunction::integer_values(line(0, 4), &[0, 2, 4, 6, 8]).unwrap();
    let (x, y) = (Point::scalar(0), Point::scalar(4));
    assert_eq!(ivt_witness(&f, 2, &x, &y, 5).unwrap(), Point::scalar(3));
    assert_eq!(ivt_witness(&f, 2, &x, &y, 0).unwrap(), x);
    assert_eq!(ivt_witness(&f, 2, &x, &y, 8).unwrap(), y);

    let id = GridFunction::integer(line(0, 10), |p| p.coord(0));
    let z = ivt_witness(&id, 1, &Point::scalar(0), &Point::scalar(10), 7).unwrap();
    assert_eq!(z, Point::scalar(7));

    let constant = GridFunction::integer(line(0, 3), |_| 5);
    let z = ivt_witness(&constant, 1, &Point::scalar(1), &Point::scalar(2), 5).unwrap();
    assert_eq!(z, Point::scalar(1));
}

#[test]
fn ivt_rejects_bad_input() {
    let f = GridFunction::integer_values(line(0, 4), &[0, 2, 4, 6, 8]).unwrap();
    let (x, y) = (Point::scalar(0), Point::scalar(4));
    // Lipschitz constant too small, zero, c out of range, point missing
    assert!(matches!(ivt_witness(&f, 1, &x, &y, 5), Err(Error::InvalidInput(_))));
    assert!(matches!(ivt_witness(&f, 0, &x, &y, 5), Err(Error::InvalidInput(_))));
    assert!(matches!(ivt_witness(&f, 2, &x, &y, 9), Err(Error::InvalidInput(_))));
    assert!(matches!(ivt_witness(&f, 2, &y, &x, 5), Err(Error::InvalidInput(_))));
    assert!(matches!(
        ivt_witness(&f, 2, &Point::scalar(9), &y, 5),
        Err(Error::NotInImage(_))
    ));
    let split = Arc::new(
        DigitalImage::new([0, 1, 5, 6].map(Point::scalar), Adjacency::c1(1)).unwrap(),
    );
    let g = GridFunction::integer_values(split, &[0, 1, 2, 3]).unwrap();
    assert!(ivt_witness(&g, 1, &Point::scalar(0), &Point::scalar(6), 2).is_err());
}

#[test]
fn c8_fixture_witness() {
    let cycle = Cycle::new(8).unwrap();
    let inv = cycle_antipode(&cycle).unwrap();
    let f = GridFunction::integer_values(cycle.image().clone(), &[0, 0, 1, 2, 2, 2, 2, 1]).unwrap();
    let w = antipodal_witness_1d(&inv, &f).unwrap();
    assert_eq!(w.distance, 1);
    assert_eq!(w.point, Point::scalar(2));
    assert_eq!(w.antipode, Point::scalar(6));
    assert!(w.within_dim1_bound(1));
}

#[test]
fn constant_function_has_gap_zero() {
    let cycle = Cycle::new(6).unwrap();
    let inv = cycle_antipode(&cycle).unwrap();
    let f = GridFunction::integer(cycle.image().clone(), |_| 4);
    let w = antipodal_witness_1d(&inv, &f).unwrap();
    assert_eq!((w.distance, w.point), (0, Point::scalar(0)));
}

#[test]
fn dim1_witness_matches_brute_force_on_c6() {
    let cycle = Cycle::new(6).unwrap();
    let inv = cycle_antipode(&cycle).unwrap();
    let mut seen = 0;
    for code in 0..4u32.pow(6) {
        let values: Vec<i64> = (0..6).map(|t| i64::from(code / 4u32.pow(t) % 4)).collect();
        let f = GridFunction::integer_values(cycle.image().clone(), &values).unwrap();
        if !f.has_lipschitz(2).unwrap() {
            continue;
        }
        seen += 1;
        let w = antipodal_witness_1d(&inv, &f).unwrap();
        let gaps: Vec<u64> = (0..6).map(|i| values[i].abs_diff(values[(i + 3) % 6])).collect();
        let best = *gaps.iter().min().unwrap();
        let first = gaps.iter().position(|&g| g == best).unwrap();
        assert_eq!(w.distance, best);
        assert_eq!(w.point, Point::scalar(first as i64));
        assert!(w.within_dim1_bound(2));
    }
    assert!(seen > 1000);
}

#[test]
fn simplex_enumeration_counts() {
    let two = DigitalImage::new([Point::scalar(0), Point::scalar(5)], Adjacency::c1(1)).unwrap();
    assert_eq!(enumerate_simplices(&two).len(), 2);
    let square: Vec<Point> = pts(&[[0, 0], [0, 1], [1, 0], [1, 1]]);
    let c2 = DigitalImage::new(square.clone(), Adjacency::ck(2, 2).unwrap()).unwrap();
    let c1 = DigitalImage::new(square, Adjacency::c1(2)).unwrap();
    let all = enumerate_simplices(&c2);
    assert_eq!(all.len(), 15);
    assert!(all.windows(2).all(|w| w[0].vertices() < w[1].vertices()));
    assert_eq!(enumerate_simplices(&c1).len(), 8);
}

#[test]
fn simplex_validation() {
    let c1 = Adjacency::c1(2);
    assert!(Simplex::new(pts(&[[0, 0], [1, 1]]), &c1).is_err());
    assert!(Simplex::new(vec![], &c1).is_err());
    let s = Simplex::new(pts(&[[1, 0], [0, 0], [1, 0]]), &c1).unwrap();
    assert_eq!(s.vertices(), &pts(&[[0, 0], [1, 0]])[..]);
}

#[test]
fn t_simplex_examples() {
    let t = t_simplex(&pts(&[[0, 0]]), 1).unwrap();
    assert_eq!(t.vertices, pts(&[[0, 0], [0, 1], [1, 0]]));
    let t = t_simplex(&pts(&[[2, 3]]), 0).unwrap();
    assert_eq!(t.vertices, pts(&[[2, 3]]));
    let t = t_simplex(&pts(&[[0, 0], [1, 1]]), 2).unwrap();
    assert_eq!(t.anchor, Point::from([0, 0]));
    assert_eq!(t.vertices.len(), 6);
    assert!(t.contains(&Point::from([1, 1])));
    assert!(!t.contains(&Point::from([2, 1])));

    let one_d = t_simplex(&[Point::scalar(4), Point::scalar(7)], 3).unwrap();
    assert_eq!(one_d.vertices, (4..=7).map(Point::scalar).collect::<Vec<_>>());
}

#[test]
fn t_simplex_containment_failures() {
    assert!(matches!(
        t_simplex(&pts(&[[2, 2], [0, 1], [1, 0]]), 3),
        Err(Error::TheoremViolation(_))
    ));
    let cube = [[1, 1, 1], [0, 1, 1], [1, 0, 1], [1, 1, 0]].map(Point::from);
    assert!(matches!(t_simplex(&cube, 2), Err(Error::TheoremViolation(_))));
    assert!(matches!(t_simplex(&pts(&[[0, 0], [2, 1]]), 2), Err(Error::InvalidInput(_))));
    assert!(t_simplex(&[], 1).is_err());
}

/// All sets of at most three points of `[0, side]^2` pairwise within `m`.
fn small_l1_cliques(side: i64, m: u64) -> Vec<Vec<Point>> {
    let grid: Vec<Point> = (0..=side)
        .flat_map(|a| (0..=side).map(move |b| Point::from([a, b])))
        .collect();
    let mut out = Vec::new();
    for i in 0..grid.len() {
        out.push(vec![grid[i].clone()]);
        for j in i + 1..grid.len() {
            if grid[i].l1_distance(&grid[j]) > m {
                continue;
            }
            out.push(vec![grid[i].clone(), grid[j].clone()]);
            for l in j + 1..grid.len() {
                if grid[i].l1_distance(&grid[l]) <= m && grid[j].l1_distance(&grid[l]) <= m {
                    out.push(vec![grid[i].clone(), grid[j].clone(), grid[l].clone()]);
                }
            }
        }
    }
    out
}

#[test]
fn containment_in_the_plane() {
    for sigma in small_l1_cliques(4, 1) {
        assert!(t_simplex(&sigma, 1).is_ok(), "{sigma:?}");
    }
    let failing = small_l1_cliques(4, 2)
        .into_iter()
        .filter(|s| t_simplex(s, 2).is_err())
        .collect::<Vec<_>>();
    assert!(failing.contains(&pts(&[[0, 1], [1, 0], [1, 2]])));
    // only spread-out triples fail
    assert!(failing.iter().all(|s| s.len() == 3));
}

#[test]
fn meeting_t_simplices_share_the_max_anchor() {
    for m in 1..=2u32 {
        let anchors: Vec<TSimplex> = (-2..=2)
            .flat_map(|a| (-2..=2).map(move |b| t_simplex(&[Point::from([a, b])], m).unwrap()))
            .collect();
        for a in &anchors {
            for b in &anchors {
                let meet = hulls_intersect(&a.vertices, &b.vertices).unwrap();
                let y = Point::new(
                    a.anchor.coords().iter().zip(b.anchor.coords()).map(|(p, q)| *p.max(q)),
                );
                assert_eq!(meet, a.contains(&y) && b.contains(&y), "{a:?} {b:?}");
            }
        }
    }
}

fn orient(a: &Point, b: &Point, c: &Point) -> i64 {
    (b.coord(0) - a.coord(0)) * (c.coord(1) - a.coord(1))
        - (b.coord(1) - a.coord(1)) * (c.coord(0) - a.coord(0))
}

fn origin_in_triangle(a: &Point, b: &Point, c: &Point) -> bool {
    let o = Point::from([0, 0]);
    let (d1, d2, d3) = (orient(a, b, &o), orient(b, c, &o), orient(c, a, &o));
    let neg = d1 < 0 || d2 < 0 || d3 < 0;
    let pos = d1 > 0 || d2 > 0 || d3 > 0;
    !(neg && pos)
}

fn origin_on_segment(a: &Point, b: &Point) -> bool {
    let o = Point::from([0, 0]);
    orient(a, b, &o) == 0
        && a.coord(0).min(b.coord(0)) <= 0
        && 0 <= a.coord(0).max(b.coord(0))
        && a.coord(1).min(b.coord(1)) <= 0
        && 0 <= a.coord(1).max(b.coord(1))
}

/// Hulls meet iff the origin lies in the hull of the difference set, which in
/// the plane means in some triangle or segment of differences.
fn caratheodory_oracle(s: &[Point], r: &[Point]) -> bool {
    let diffs: Vec<Point> = s
        .iter()
        .flat_map(|a| r.iter().map(move |b| Point::from([a.coord(0) - b.coord(0), a.coord(1) - b.coord(1)])))
        .collect();
    let n = diffs.len();
    (0..n).any(|i| {
        diffs[i] == Point::from([0, 0])
            || (i + 1..n).any(|j| {
                origin_on_segment(&diffs[i], &diffs[j])
                    || (j + 1..n).any(|l| {
                        orient(&diffs[i], &diffs[j], &diffs[l]) != 0
                            && origin_in_triangle(&diffs[i], &diffs[j], &diffs[l])
                    })
            })
    })
}

#[test]
fn plane_hulls_match_caratheodory_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let set = |rng: &mut ChaCha8Rng| -> Vec<Point> {
        let len = rng.gen_range(1..=4);
        (0..len)
            .map(|_| Point::from([rng.gen_range(-3..=3), rng.gen_range(-3..=3)]))
            .collect()
    };
    let mut meets = 0;
    for _ in 0..1000 {
        let (s, r) = (set(&mut rng), set(&mut rng));
        let expected = caratheodory_oracle(&s, &r);
        assert_eq!(hulls_intersect(&s, &r).unwrap(), expected, "{s:?} {r:?}");
        meets += usize::from(expected);
    }
    // both outcomes are well represented
    assert!((200..800).contains(&meets), "{meets}");
}

#[test]
fn counterexample_fixture_claims() {
    let (bx, f) = counterexample_fixture();
    assert_eq!(f.domain().len(), 26);
    assert!(f.is_continuous());
    for x in f.domain().points() {
        let (a, b) = (f.value(x).unwrap(), f.value(&bx.reflect(x)).unwrap());
        assert!(a.l1_distance(b) >= 2, "{x}");
    }
    let (p, q) = (Point::from([1, 0, 0]), Point::from([0, 1, 0]));
    assert_eq!(f.value(&p).unwrap(), &Point::from([1, 0]));
    assert_eq!(f.value(&q).unwrap(), &Point::from([0, 1]));
    for k in [2, 3] {
        let g = f.with_domain_adjacency(Adjacency::ck(3, k).unwrap()).unwrap();
        assert!(!g.is_continuous());
        let (a, b) = g.discontinuity().unwrap();
        assert!(g.value(&a).unwrap().l1_distance(g.value(&b).unwrap()) > 1);
    }
    let err = antipodal_witness_high_dim(&bx, &f, HighDimVariant::C1).unwrap_err();
    assert!(matches!(err, Error::InvalidInput(_)), "{err}");
}

#[test]
fn coincidence_simplex_on_the_fixture() {
    let (bx, f) = counterexample_fixture();
    let inv = box_involution(&bx, 3).unwrap();
    let g = f.with_domain_adjacency(Adjacency::ck(3, 3).unwrap()).unwrap();
    let s = simplex_coincidence_witness(&inv, &g).unwrap();
    let image: Vec<Point> = s.vertices().iter().map(|p| g.value(p).unwrap().clone()).collect();
    let opposite: Vec<Point> = s
        .vertices()
        .iter()
        .map(|p| g.value(&bx.reflect(p)).unwrap().clone())
        .collect();
    assert!(hulls_intersect(&image, &opposite).unwrap());
    // the carrier must use c3
    let c1_inv = box_involution(&bx, 1).unwrap();
    assert!(simplex_coincidence_witness(&c1_inv, &f).is_err());
}

#[test]
fn coincidence_simplex_on_a_square() {
    let bx = NBox::cube(2, 0, 2).unwrap();
    let inv = box_involution(&bx, 2).unwrap();
    let f = GridFunction::integer(inv.carrier().clone(), |p| p.coord(0));
    let s = simplex_coincidence_witness(&inv, &f).unwrap();
    // values {0,0,1} against {2,2,1}
    assert_eq!(s.vertices(), &pts(&[[0, 0], [0, 1], [1, 0]])[..]);
}

#[test]
fn constant_functions_witness_at_the_least_point() {
    let bx = NBox::cube(3, -1, 1).unwrap();
    let boundary = Arc::new(box_boundary(&bx, 3).unwrap());
    for variant in [HighDimVariant::C1, HighDimVariant::C1Power(2), HighDimVariant::CnMinus1] {
        let codomain = variant.hypothesis(2).unwrap();
        let f = GridFunction::from_fn(boundary.clone(), codomain, |_| Point::from([3, -1])).unwrap();
        let w = antipodal_witness_high_dim(&bx, &f, variant).unwrap();
        assert_eq!(w.point, Point::from([-1, -1, -1]));
        assert_eq!(w.antipode, Point::from([1, 1, 1]));
        assert_eq!(w.distance, 0);
        let r = reconstruct_high_dim_witness(&bx, &f, variant).unwrap();
        assert_eq!(r.link, Point::from([3, -1]));
    }
}

#[test]
fn high_dim_rejects_bad_input() {
    let bx = NBox::cube(3, -1, 1).unwrap();
    let boundary = Arc::new(box_boundary(&bx, 3).unwrap());
    let jump = GridFunction::from_fn(boundary.clone(), Adjacency::c1(2), |p| {
        Point::from([3 * p.coord(0), 0])
    })
    .unwrap();
    assert!(matches!(
        antipodal_witness_high_dim(&bx, &jump, HighDimVariant::C1),
        Err(Error::InvalidInput(_))
    ));
    let flat = GridFunction::from_fn(boundary, Adjacency::c1(3), |_| Point::from([0, 0, 0])).unwrap();
    assert!(matches!(
        antipodal_witness_high_dim(&bx, &flat, HighDimVariant::C1),
        Err(Error::DimensionMismatch { .. })
    ));
}

#[test]
fn sampled_functions_are_continuous_and_have_witnesses() {
    let bx = NBox::cube(3, -1, 1).unwrap();
    let boundary = Arc::new(box_boundary(&bx, 3).unwrap());
    for variant in [HighDimVariant::C1, HighDimVariant::CnMinus1] {
        for seed in 0..20 {
            let f = sample_continuous(boundary.clone(), variant.hypothesis(2).unwrap(), 200, seed).unwrap();
            assert!(f.is_continuous());
            let w = antipodal_witness_high_dim(&bx, &f, variant).unwrap();
            assert!(w.distance <= 1);
            let r = reconstruct_high_dim_witness(&bx, &f, variant).unwrap();
            assert!(r.witness.distance <= 1);
        }
    }
}

#[test]
fn sampling_is_deterministic() {
    let domain = line(0, 9);
    let a = sample_continuous(domain.clone(), Adjacency::c1(2), 100, 5).unwrap();
    let b = sample_continuous(domain, Adjacency::c1(2), 100, 5).unwrap();
    assert_eq!(a.values(), b.values());
}
