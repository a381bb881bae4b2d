use std::collections::{BTreeMap, BTreeSet};

use super::*;

fn rule(s: &str) -> SubstitutionRule {
    s.parse().unwrap()
}

fn words(r: &SubstitutionRule, n: usize) -> Vec<String> {
    two_factors(r, n)
        .unwrap()
        .iter()
        .map(|w| r.render(w))
        .collect()
}

#[test]
fn fibonacci_factors() {
    let fib = SubstitutionRule::fibonacci();
    assert_eq!(words(&fib, 2), ["ab", "ba", "bb"]);
    assert_eq!(words(&fib, 3), ["aba", "abb", "bab", "bba"]);
    assert_eq!(words(&rule("a>aa"), 2), ["aa"]);
    assert_eq!(two_factors(&rule("a>a; b>b"), 2), Err(Error::NotPrimitive));
}

#[test]
fn uncollared_graphs() {
    let g = build_uncollared(&SubstitutionRule::fibonacci()).unwrap();
    assert_eq!((g.vertex_count, g.edges.len()), (1, 2));
    assert_eq!(betti1(&g), 2);
    assert_eq!(g.self_map, vec![vec![1], vec![0, 1]]);
    let c = build_uncollared(&rule("a>aa")).unwrap();
    assert_eq!((c.vertex_count, c.edges.len(), betti1(&c)), (1, 1, 1));
    let tm = build_uncollared(&rule("a>ab; b>ba")).unwrap();
    assert_eq!(tm.edges.len(), tm.rule.size());
}

/// Vertex classes read off a long legal word: the collared tiles at
/// consecutive positions share an endpoint.
fn oracle_betti(r: &SubstitutionRule, collar: usize) -> (usize, usize, usize) {
    let mut w = vec![0u8];
    while w.len() < 5000 {
        w = r.apply_letters(&w);
    }
    let tiles: BTreeSet<&[u8]> = w.windows(2 * collar + 1).collect();
    let ids: BTreeMap<&[u8], usize> = tiles.iter().enumerate().map(|(i, t)| (*t, i)).collect();
    let n = ids.len();
    let mut parent: Vec<usize> = (0..2 * n).collect();
    fn root(p: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while p[x] != x {
            x = p[x];
        }
        x
    }
    for pair in w.windows(2 * collar + 2) {
        let (a, b) = (ids[&pair[..2 * collar + 1]], ids[&pair[1..]]);
        let (x, y) = (root(&mut parent, 2 * a + 1), root(&mut parent, 2 * b));
        parent[x] = y;
    }
    let vertices: BTreeSet<usize> = (0..2 * n).map(|x| root(&mut parent, x)).collect();
    let v = vertices.len();
    // components: join both ends of each edge
    for a in 0..n {
        let (x, y) = (root(&mut parent, 2 * a), root(&mut parent, 2 * a + 1));
        parent[x] = y;
    }
    let comps: BTreeSet<usize> = (0..2 * n).map(|x| root(&mut parent, x)).collect();
    (n, v, comps.len())
}

#[test]
fn collared_graphs_match_word_oracle() {
    for s in ["a>b; b>ab", "a>ab; b>ba", "a>aab; b>ab", "a>abc; b>ac; c>b"] {
        let r = rule(s);
        let g = build_collared(&r).unwrap();
        let (e, v, c) = oracle_betti(&r, 1);
        assert_eq!((g.edges.len(), g.vertex_count), (e, v), "{s}");
        assert_eq!(betti1(&g), e + c - v, "{s}");
        let u = build_uncollared(&r).unwrap();
        let (e, v, c) = oracle_betti(&r, 0);
        assert_eq!(
            (u.edges.len(), u.vertex_count, betti1(&u)),
            (e, v, e + c - v),
            "{s}"
        );
    }
}

#[test]
fn fibonacci_betti_numbers() {
    let fib = SubstitutionRule::fibonacci();
    let g = build_collared(&fib).unwrap();
    assert_eq!(g.edges.len(), 4);
    assert_eq!(betti1(&g), 2);
    let c = build_collared(&rule("a>aa")).unwrap();
    assert_eq!((c.vertex_count, c.edges.len(), betti1(&c)), (1, 1, 1));
}

#[test]
fn betti_of_small_graphs() {
    let mut g = build_uncollared(&SubstitutionRule::fibonacci()).unwrap();
    assert_eq!(betti1(&g), 2);
    // a path a -> b -> c is a tree
    g.vertex_count = 3;
    g.edges.truncate(2);
    g.edges[0].tail = 0;
    g.edges[0].head = 1;
    g.edges[1].tail = 1;
    g.edges[1].head = 2;
    assert_eq!(betti1(&g), 0);
}

#[test]
fn towers() {
    for collared in [false, true] {
        let fib = SubstitutionRule::fibonacci();
        let g = if collared {
            build_collared(&fib).unwrap()
        } else {
            build_uncollared(&fib).unwrap()
        };
        let t0 = approximant_tower(&g, 0);
        assert_eq!(
            t0.paths,
            (0..g.edges.len()).map(|e| vec![e]).collect::<Vec<_>>()
        );
        for n in [1, 5, 12] {
            let t = approximant_tower(&g, n);
            assert_eq!(t.scaling_exact, Some(true));
            assert!(t.continuous);
        }
        // image paths start at the image of the tail and end at the image of the head
        for (e, p) in g.edges.iter().zip(&g.self_map) {
            assert_eq!(g.edges[p[0]].tail, g.vertex_map[e.tail]);
            assert_eq!(g.edges[*p.last().unwrap()].head, g.vertex_map[e.head]);
        }
    }
    let tri = build_uncollared(&rule("a>ab; b>ac; c>a")).unwrap();
    assert_eq!(approximant_tower(&tri, 4).scaling_exact, None);
}

#[test]
fn dot_output() {
    let g = build_uncollared(&SubstitutionRule::fibonacci()).unwrap();
    assert_eq!(
        g.to_dot(),
        "digraph ap {\n  v0;\n  v0 -> v0 [label=\"a\"];\n  v0 -> v0 [label=\"b\"];\n}\n"
    );
    let json = serde_json::to_value(&g).unwrap();
    assert_eq!(json["rule"], "a>b; b>ab");
    assert_eq!(json["edges"].as_array().unwrap().len(), 2);
}
