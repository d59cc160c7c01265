use std::collections::{BTreeMap, BTreeSet};

use nalgebra::DMatrix;
use num_rational::BigRational;
use proptest::prelude::{prop_assert, prop_assert_eq, proptest, ProptestConfig};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::catalogue::tight_graphs;
use crate::error::Error;
use crate::graph::Graph;
use crate::norms::{parse_norm_spec, Norm};
use crate::rigidity::{
    flex_space, framework_limit_check, numeric_rank, random_well_positioned_placement,
    rigidity_matrix, RankMethod, DEFAULT_ATTEMPTS, DEFAULT_TOL,
};
use crate::vector::{Covector2, Vector2};

/// (2,2)-tightness straight from the definition.
fn brute_tight(g: &Graph) -> bool {
    let n = g.vertex_count();
    let sparse = (1u32..(1 << n)).all(|mask| {
        let inside = g
            .edges()
            .iter()
            .filter(|&&(a, b)| mask >> a & 1 == 1 && mask >> b & 1 == 1)
            .count();
        inside + 2 <= 2 * mask.count_ones() as usize
    });
    sparse && g.edge_count() + 2 == 2 * n
}

/// Edge set by vertex name.
fn named_edges(g: &Graph) -> BTreeSet<(String, String)> {
    g.edges()
        .iter()
        .map(|&e| {
            let (a, b) = g.edge_names(e);
            if a < b {
                (a, b)
            } else {
                (b, a)
            }
        })
        .collect()
}

/// Rank by SVD, independent of the library's rank routines.
fn svd_rank(rows: &DMatrix<f64>) -> usize {
    let s = rows.clone().singular_values();
    let max = s.iter().copied().fold(0.0, f64::max);
    s.iter().filter(|&&v| v > 1e-9 * max).count()
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn lp(p: f64) -> Norm {
    Norm::lp(p).unwrap()
}

fn isostatic_k4(norm: &Norm, seed: u64) -> crate::rigidity::Framework {
    let fw = k4_rigid_placement(norm, seed).unwrap();
    assert_eq!(certify(&fw, DEFAULT_TOL).unwrap().rank, 6);
    fw
}

#[test]
fn move_examples() {
    let k1 = Graph::new(&["0"], &[]).unwrap();
    let to_k4 = Move::VertexToK4 {
        v0: "0".into(),
        new_vertices: ["a".into(), "b".into(), "c".into(), "d".into()],
        neighbor_assignment: BTreeMap::new(),
    };
    let k4 = apply_move(&k1, &to_k4).unwrap();
    assert!(k4.is_isomorphic(&Graph::complete(4)));

    let ext0 = Move::Ext0 {
        v1: "a".into(),
        v2: "b".into(),
        new_vertex: "e".into(),
    };
    let g = apply_move(&k4, &ext0).unwrap();
    assert_eq!((g.vertex_count(), g.edge_count()), (5, 8));
    assert!(brute_tight(&g));

    let ext1 = Move::Ext1 {
        deleted_edge: ("a".into(), "b".into()),
        v3: "c".into(),
        new_vertex: "e".into(),
    };
    let g = apply_move(&k4, &ext1).unwrap();
    assert_eq!((g.vertex_count(), g.edge_count()), (5, 8));
    assert!(brute_tight(&g));
    assert!(!g.has_edge(g.index_of("a").unwrap(), g.index_of("b").unwrap()));

    let split = Move::VertexSplit {
        v0: "a".into(),
        w0: "b".into(),
        new_vertex: "e".into(),
        reassigned_neighbors: ["c".to_string()].into(),
    };
    let g = apply_move(&k4, &split).unwrap();
    assert_eq!((g.vertex_count(), g.edge_count()), (5, 8));
    assert!(brute_tight(&g));
    let e = g.index_of("e").unwrap();
    assert_eq!(g.degree(e), 3);

    let g = apply_move(
        &k4,
        &Move::VertexToK4 {
            v0: "a".into(),
            new_vertices: ["p".into(), "q".into(), "r".into(), "s".into()],
            neighbor_assignment: [("b", "p"), ("c", "p"), ("d", "q")]
                .into_iter()
                .map(|(x, y)| (x.to_string(), y.to_string()))
                .collect(),
        },
    )
    .unwrap();
    assert_eq!((g.vertex_count(), g.edge_count()), (7, 12));
    assert!(brute_tight(&g));
}

#[test]
fn invalid_moves_are_rejected() {
    let k4 = Graph::complete(4);
    let bad = [
        Move::Ext0 {
            v1: "0".into(),
            v2: "0".into(),
            new_vertex: "x".into(),
        },
        Move::Ext0 {
            v1: "0".into(),
            v2: "9".into(),
            new_vertex: "x".into(),
        },
        Move::Ext0 {
            v1: "0".into(),
            v2: "1".into(),
            new_vertex: "2".into(),
        },
        Move::Ext1 {
            deleted_edge: ("0".into(), "1".into()),
            v3: "1".into(),
            new_vertex: "x".into(),
        },
        Move::VertexSplit {
            v0: "0".into(),
            w0: "1".into(),
            new_vertex: "x".into(),
            reassigned_neighbors: ["0".to_string()].into(),
        },
        Move::VertexToK4 {
            v0: "0".into(),
            new_vertices: ["a".into(), "b".into(), "c".into(), "d".into()],
            neighbor_assignment: [("1".to_string(), "a".to_string())].into(),
        },
        Move::VertexToK4 {
            v0: "0".into(),
            new_vertices: ["a".into(), "a".into(), "c".into(), "d".into()],
            neighbor_assignment: BTreeMap::new(),
        },
    ];
    for m in &bad {
        assert!(
            matches!(apply_move(&k4, m), Err(Error::InvalidMove(_))),
            "{m:?}"
        );
    }
}

#[test]
fn replay_examples() {
    assert_eq!(
        replay(&MoveSequence::new("0", vec![]))
            .unwrap()
            .vertex_count(),
        1
    );
    let ms = MoveSequence::new(
        "0",
        vec![
            Move::VertexToK4 {
                v0: "0".into(),
                new_vertices: ["a".into(), "b".into(), "c".into(), "d".into()],
                neighbor_assignment: BTreeMap::new(),
            },
            Move::Ext0 {
                v1: "a".into(),
                v2: "z".into(),
                new_vertex: "e".into(),
            },
        ],
    );
    match replay(&ms) {
        Err(Error::InvalidMove(msg)) => assert!(msg.starts_with("move 1 (ext0)"), "{msg}"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn move_sequence_json() {
    let text = r#"{"start": "K1", "moves": [{"type": "vertex-to-k4", "v0": "0",
        "new_vertices": ["a", "b", "c", "d"], "neighbor_assignment": {}},
        {"type": "ext0", "v1": "a", "v2": "b", "new_vertex": "e"}]}"#;
    let ms: MoveSequence = serde_json::from_str(text).unwrap();
    assert_eq!(ms.start_vertex, "0");
    assert_eq!(replay(&ms).unwrap().edge_count(), 8);
    let back: MoveSequence = serde_json::from_str(&serde_json::to_string(&ms).unwrap()).unwrap();
    assert_eq!(back, ms);
    assert!(serde_json::from_str::<MoveSequence>(r#"{"start": "K2", "moves": []}"#).is_err());
}

#[test]
fn reduction_examples() {
    let ms = find_reduction(&Graph::complete(4)).unwrap();
    assert_eq!(ms.moves.len(), 1);
    assert_eq!(ms.moves[0].kind(), "vertex-to-k4");

    let k4e = apply_move(
        &Graph::complete(4),
        &Move::Ext0 {
            v1: "0".into(),
            v2: "1".into(),
            new_vertex: "4".into(),
        },
    )
    .unwrap();
    let ms = find_reduction(&k4e).unwrap();
    let kinds: Vec<&str> = ms.moves.iter().map(Move::kind).collect();
    assert_eq!(kinds, ["vertex-to-k4", "ext0"]);
    assert_eq!(named_edges(&replay(&ms).unwrap()), named_edges(&k4e));

    let dk = Graph::double_k4();
    let ms = find_reduction(&dk).unwrap();
    let kinds: Vec<&str> = ms.moves.iter().map(Move::kind).collect();
    assert_eq!(kinds, ["vertex-to-k4", "vertex-to-k4"]);
    assert!(replay(&ms).unwrap().is_isomorphic(&dk));

    assert!(matches!(
        find_reduction(&Graph::prism()),
        Err(Error::NotTight)
    ));
    assert!(find_reduction(&Graph::complete(1))
        .unwrap()
        .moves
        .is_empty());
}

#[test]
fn reduction_round_trips_on_all_small_tight_graphs() {
    for n in 1..=7 {
        for g in tight_graphs(n) {
            let ms = find_reduction(&g).unwrap();
            // names are kept, so the replay is the input itself
            let mut h = ms.start_graph();
            for m in &ms.moves {
                h = apply_move(&h, m).unwrap();
                assert!(brute_tight(&h), "{g:?} via {m:?}");
            }
            assert_eq!(named_edges(&h), named_edges(&g));
            assert_eq!(h.vertex_count(), g.vertex_count());
        }
    }
}

#[test]
fn ext1_with_third_vertex_on_the_deleted_edge_line() {
    for norm in [lp(3.0), Norm::linf()] {
        let k4 = isostatic_k4(&norm, 1);
        let ext1 = |v1: &str, v2: &str, v3: &str, new: &str| Move::Ext1 {
            deleted_edge: (v1.into(), v2.into()),
            v3: v3.into(),
            new_vertex: new.into(),
        };
        // the first move puts 4 on the line through 0 and 1
        let fw = apply_move_geometric(&k4, &ext1("0", "1", "2", "4"), 2).unwrap();
        let p = |fw: &Framework, n: &str| fw.point(fw.graph().index_of(n).unwrap());
        let (a, b, c) = (p(&fw, "0"), p(&fw, "1"), p(&fw, "4"));
        assert!((b - a).cross(c - a).abs() < 1e-12);
        let fw = apply_move_geometric(&fw, &ext1("0", "4", "1", "5"), 3).unwrap();
        assert_eq!(
            certify(&fw, DEFAULT_TOL).unwrap().rank,
            fw.graph().edge_count()
        );
    }
}

#[test]
fn geometric_examples() {
    let p3 = lp(3.0);
    let k4 = isostatic_k4(&p3, 1);
    let fw = apply_move_geometric(
        &k4,
        &Move::Ext0 {
            v1: "0".into(),
            v2: "1".into(),
            new_vertex: "4".into(),
        },
        2,
    )
    .unwrap();
    assert_eq!(
        numeric_rank(&rigidity_matrix(&fw).unwrap(), DEFAULT_TOL)
            .unwrap()
            .rank,
        8
    );

    let assignment: BTreeMap<String, String> = [("1", "a"), ("2", "b"), ("3", "c")]
        .map(|(x, y)| (x.to_string(), y.to_string()))
        .into();
    let fw = apply_move_geometric(
        &k4,
        &Move::VertexToK4 {
            v0: "0".into(),
            new_vertices: ["a".into(), "b".into(), "c".into(), "d".into()],
            neighbor_assignment: assignment,
        },
        3,
    )
    .unwrap();
    assert_eq!(fw.graph().vertex_count(), 7);
    assert_eq!(svd_rank(rigidity_matrix(&fw).unwrap().matrix()), 12);

    let linf = Norm::linf();
    let k4 = isostatic_k4(&linf, 4);
    let fw = apply_move_geometric(
        &k4,
        &Move::VertexSplit {
            v0: "0".into(),
            w0: "1".into(),
            new_vertex: "4".into(),
            reassigned_neighbors: ["2".to_string()].into(),
        },
        5,
    )
    .unwrap();
    let m = rigidity_matrix(&fw).unwrap();
    assert_eq!(certified_rank_of(&m), 8);

    let euclid = random_well_positioned_placement(
        &Graph::complete(3),
        &Norm::euclidean(),
        0,
        DEFAULT_ATTEMPTS,
    )
    .unwrap();
    assert!(matches!(
        apply_move_geometric(
            &euclid,
            &Move::VertexToK4 {
                v0: "0".into(),
                new_vertices: ["a".into(), "b".into(), "c".into(), "d".into()],
                neighbor_assignment: [("1", "a"), ("2", "b")]
                    .map(|(x, y)| (x.to_string(), y.to_string()))
                    .into(),
            },
            0,
        ),
        Err(Error::Precondition(_))
    ));
}

fn certified_rank_of(m: &crate::rigidity::RigidityMatrix) -> usize {
    crate::rigidity::certified_rank(m, DEFAULT_TOL)
        .unwrap()
        .rank
}

#[test]
fn realize_builds_independent_frameworks() {
    for norm in [lp(3.0), Norm::linf(), Norm::sc_nonsmooth()] {
        let g = tight_graphs(6)[3].clone();
        let ms = find_reduction(&g).unwrap();
        let fw = realize(&ms, &norm, 11).unwrap();
        assert_eq!(named_edges(fw.graph()), named_edges(&g));
        assert_eq!(
            certify(&fw, DEFAULT_TOL).unwrap().rank,
            g.edge_count(),
            "{norm}"
        );
    }
}

#[test]
fn linf_flat_piece_placement() {
    let fw = k4_not_strictly_convex(&Norm::linf(), 0).unwrap();
    let expected = vec![
        (q(0, 1), q(0, 1)),
        (q(1, 2), q(-1, 4)),
        (q(1, 2), q(1, 4)),
        (q(0, 1), q(-1, 2)),
    ];
    assert_eq!(fw.exact_placement(), expected);
    let m = rigidity_matrix(&fw).unwrap();
    let c = certify(&fw, DEFAULT_TOL).unwrap();
    assert_eq!((c.rank, c.method, c.flex_dim), (6, RankMethod::Exact, 2));
    // rows from φ(x) = (1,0), φ(y) = (0,-1), f = φ(v3 - v4) = (0,1)
    let (x, y, f) = ([1.0, 0.0], [0.0, -1.0], [0.0, 1.0]);
    let neg = |c: [f64; 2]| [-c[0], -c[1]];
    let z = [0.0, 0.0];
    let rows = [
        [neg(x), x, z, z],
        [neg(x), z, x, z],
        [neg(y), z, z, y],
        [z, y, neg(y), z],
        [z, x, z, neg(x)],
        [z, z, f, neg(f)],
    ];
    let expected = DMatrix::from_row_iterator(6, 8, rows.iter().flat_map(|r| r.concat()));
    assert_eq!(m.matrix(), &expected);
    assert_eq!(svd_rank(&expected), 6);
}

#[test]
fn flat_piece_errors_and_polygons() {
    assert!(matches!(
        k4_not_strictly_convex(&Norm::euclidean(), 0),
        Err(Error::Precondition(_))
    ));
    assert!(matches!(
        k4_not_strictly_convex(&lp(3.0), 0),
        Err(Error::Precondition(_))
    ));
    let hexagon = parse_norm_spec("poly:(1,0);(1/2,1);(-1/2,1)").unwrap();
    for norm in [hexagon, Norm::l1()] {
        let fw = k4_not_strictly_convex(&norm, 0).unwrap();
        assert!(fw.has_rational_placement());
        let m = rigidity_matrix(&fw).unwrap();
        assert_eq!(crate::rigidity::exact_rank(&m).unwrap().rank, 6, "{norm}");
        assert_eq!(svd_rank(m.matrix()), 6);
    }
}

#[test]
fn nonsmooth_construction() {
    let norm = Norm::sc_nonsmooth();
    let fw = k4_sc_nonsmooth(&norm, 0).unwrap();
    assert!(fw.is_well_positioned());
    assert_eq!(svd_rank(rigidity_matrix(&fw).unwrap().matrix()), 6);
    assert_eq!(flex_space(&fw, DEFAULT_TOL).unwrap().vectors.len(), 2);
    let e = k4_sc_nonsmooth(&lp(3.0), 0).unwrap_err();
    assert!(e.to_string().contains("norm is smooth"), "{e}");
    let e = k4_sc_nonsmooth(&Norm::linf(), 0).unwrap_err();
    assert!(e.to_string().contains("flat-piece"), "{e}");
}

#[test]
fn nonsmooth_sequence_tends_to_the_pseudo_matrix() {
    let norm = Norm::sc_nonsmooth();
    let s = nonsmooth_setup(&norm, 0).unwrap();
    assert!(!s.base.is_well_positioned());
    assert!((s.x + s.y - s.z).euclidean_len() < 1e-12);
    assert!((s.f - s.g).apply(s.x) > 0.0);
    let pos: Vec<_> = (4..20).map(|e| s.member(1 << e).unwrap()).collect();
    let neg: Vec<_> = (4..20).map(|e| s.member(-(1 << e)).unwrap()).collect();
    assert!(framework_limit_check(&pos, &s.base, &s.assignment(s.f), 1e-4).unwrap());
    assert!(framework_limit_check(&neg, &s.base, &s.assignment(s.g), 1e-4).unwrap());
    assert!(!framework_limit_check(&pos, &s.base, &s.assignment(s.g), 1e-4).unwrap());
}

#[test]
fn smooth_construction() {
    let fw = k4_sc_smooth(&lp(4.0), 0.9, 720).unwrap();
    assert_eq!(svd_rank(rigidity_matrix(&fw).unwrap().matrix()), 6);
    let p = fw.placement();
    assert_eq!(p[3], p[1] + p[2]);
    let e = k4_sc_smooth(&Norm::euclidean(), 0.9, 360).unwrap_err();
    assert!(e.to_string().contains("different epsilon"), "{e}");
    match k4_sc_smooth(&lp(4.0), 1.999, 720) {
        Ok(fw) => assert_eq!(svd_rank(rigidity_matrix(&fw).unwrap().matrix()), 6),
        Err(e) => assert!(e.is_numerical(), "{e}"),
    }
    assert!(matches!(
        k4_sc_smooth(&Norm::sc_nonsmooth(), 0.9, 90),
        Err(Error::Precondition(_))
    ));
    assert!(matches!(
        k4_sc_smooth(&lp(4.0), 2.5, 90),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn rigid_placement_in_every_regime() {
    for norm in [
        Norm::linf(),
        lp(4.0),
        lp(1.5),
        lp(3.0),
        Norm::sc_nonsmooth(),
        Norm::l1(),
    ] {
        let fw = k4_rigid_placement(&norm, 7).unwrap();
        assert_eq!(
            svd_rank(rigidity_matrix(&fw).unwrap().matrix()),
            6,
            "{norm}"
        );
        assert_eq!(
            flex_space(&fw, DEFAULT_TOL).unwrap().vectors.len(),
            2,
            "{norm}"
        );
    }
    assert!(matches!(
        k4_rigid_placement(&Norm::euclidean(), 0),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn circle_intersect_examples() {
    let e = Norm::euclidean();
    let o = Vector2::ZERO;
    let tangent = circle_intersect(&e, o, 1.0, Vector2::new(2.0, 0.0), 1.0, 1e-12).unwrap();
    assert_eq!(tangent.len(), 1);
    assert!((tangent[0] - Vector2::new(1.0, 0.0)).euclidean_len() < 1e-12);

    let two = circle_intersect(&e, o, 1.0, Vector2::new(1.0, 0.0), 1.0, 1e-12).unwrap();
    assert_eq!(two.len(), 2);
    let h = 3f64.sqrt() / 2.0;
    assert!((two[0] - Vector2::new(0.5, h)).euclidean_len() < 1e-12);
    assert!((two[1] - Vector2::new(0.5, -h)).euclidean_len() < 1e-12);

    let p4 = lp(4.0);
    let c2 = Vector2::new(1.2, 0.0);
    let two = circle_intersect(&p4, o, 1.0, c2, 1.0, 1e-12).unwrap();
    assert_eq!(two.len(), 2);
    for z in &two {
        assert!((p4.eval(*z) - 1.0).abs() < 1e-10);
        assert!((p4.eval(*z - c2) - 1.0).abs() < 1e-10);
    }
    assert!((two[0].x - two[1].x).abs() < 1e-10 && (two[0].y + two[1].y).abs() < 1e-10);

    assert!(
        circle_intersect(&e, o, 1.0, Vector2::new(3.0, 0.0), 1.0, 1e-12)
            .unwrap()
            .is_empty()
    );
    assert!(
        circle_intersect(&e, o, 3.0, Vector2::new(0.5, 0.0), 1.0, 1e-12)
            .unwrap()
            .is_empty()
    );
    assert!(circle_intersect(&Norm::linf(), o, 1.0, c2, 1.0, 1e-12).is_err());
    assert!(circle_intersect(&e, o, 1.0, o, 1.0, 1e-12).is_err());
}

#[test]
fn sweep_invariants() {
    for (norm, eps) in [(lp(4.0), 0.9), (lp(1.5), 1.3), (Norm::euclidean(), 0.9)] {
        let samples = sweep(&norm, eps, 360).unwrap();
        for s in &samples {
            assert!(s.residual < 1e-8);
            assert_eq!(s.v4, s.v2 + s.v3);
            assert!(s.v3.cross(s.v2) > 0.0);
        }
    }
    // parallelogram law: in the Euclidean plane ‖v2 + v3‖ is fixed by ε
    let flat = sweep(&Norm::euclidean(), 0.9, 360).unwrap();
    let expected = (4.0f64 - 0.81).sqrt();
    assert!(flat.iter().all(|s| (s.norm_v4 - expected).abs() < 1e-10));
    let curved = sweep(&lp(4.0), 0.9, 720).unwrap();
    let (lo, hi) = curved.iter().fold((f64::MAX, f64::MIN), |(a, b), s| {
        (a.min(s.norm_v4), b.max(s.norm_v4))
    });
    assert!(hi - lo > 1e-3);
    assert!(sweep_derivative(&curved)
        .iter()
        .any(|d| d.abs() > DERIVATIVE_THRESHOLD));
}

#[test]
fn certificate_serialises() {
    let fw = k4_rigid_placement(&Norm::linf(), 0).unwrap();
    let c = certify(&fw, DEFAULT_TOL).unwrap();
    let v: serde_json::Value = serde_json::to_value(&c).unwrap();
    assert_eq!(v["rank"], 6);
    assert_eq!(v["method"], "exact");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn moves_preserve_tightness(n in proptest::sample::select(vec![1usize, 4, 5, 6, 7]), pick in 0usize..1000, seed in 0u64..1_000_000) {
        let graphs = tight_graphs(n);
        let g = &graphs[pick % graphs.len()];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_move(g, &mut rng).unwrap();
        let h = apply_move(g, &m).unwrap();
        prop_assert!(brute_tight(&h));
        prop_assert_eq!(h.edge_count(), g.edge_count() + if m.kind() == "vertex-to-k4" { 6 } else { 2 });
    }

    #[test]
    fn circle_intersections_satisfy_both_equations(
        p in 1.2f64..6.0, r1 in 0.3f64..2.0, r2 in 0.3f64..2.0,
        cx in -2.0f64..2.0, cy in -2.0f64..2.0,
    ) {
        let norm = lp(p);
        let (c1, c2) = (Vector2::new(0.1, -0.2), Vector2::new(cx, cy));
        prop_assert!(c1 != c2);
        let points = circle_intersect(&norm, c1, r1, c2, r2, 1e-12).unwrap();
        for z in &points {
            prop_assert!((norm.eval(*z - c1) - r1).abs() < 1e-9);
            prop_assert!((norm.eval(*z - c2) - r2).abs() < 1e-9);
        }
        if points.len() == 2 {
            let d = c2 - c1;
            prop_assert!(d.cross(points[0] - c1) > 0.0 && d.cross(points[1] - c1) < 0.0);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn geometric_moves_keep_independence(n in proptest::sample::select(vec![1usize, 4, 5, 6]), pick in 0usize..1000, seed in 0u64..1_000_000, linf in proptest::bool::ANY) {
        let norm = if linf { Norm::linf() } else { lp(3.0) };
        let graphs = tight_graphs(n);
        let g = &graphs[pick % graphs.len()];
        let fw = realize(&find_reduction(g).unwrap(), &norm, seed).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_move(fw.graph(), &mut rng).unwrap();
        let out = apply_move_geometric(&fw, &m, seed).unwrap();
        prop_assert!(out.is_well_positioned());
        prop_assert_eq!(certify(&out, DEFAULT_TOL).unwrap().rank, out.graph().edge_count());
    }
}

#[test]
fn covector_sanity() {
    // the pseudo assignment stores the functional of the lower-to-higher direction
    let s = nonsmooth_setup(&Norm::sc_nonsmooth(), 1).unwrap();
    let pa = s.assignment(Covector2::new(1.0, 0.0));
    assert_eq!(pa.get((0, 3)), Some(Covector2::new(-1.0, 0.0)));
}
