//! On acyclic graphs the cyclomatic number equals the number of linearly
//! independent entry-to-exit paths. The oracle enumerates every path and
//! takes the rank of their edge-incidence vectors.

mod common;

use proptest::prelude::*;
use qmetrics::cfg::{build_qcfg, cyclomatic, CfgMode, Qcfg};
use qmetrics::qiskit::parse_qiskit_dialect;

fn all_paths(g: &Qcfg) -> Vec<Vec<usize>> {
    let has_pred = |n: usize| g.edges.iter().any(|&(_, to)| to == n);
    let mut paths = Vec::new();
    for &start in g.nodes.iter().filter(|&&n| !has_pred(n)) {
        let mut stack = vec![(start, Vec::<usize>::new())];
        while let Some((node, used)) = stack.pop() {
            let out: Vec<usize> = (0..g.edges.len()).filter(|&e| g.edges[e].0 == node).collect();
            if out.is_empty() {
                paths.push(used);
                continue;
            }
            for e in out {
                let mut next = used.clone();
                next.push(e);
                stack.push((g.edges[e].1, next));
            }
        }
    }
    paths
}

/// Rank over the rationals, by fraction-free elimination.
fn rank(mut rows: Vec<Vec<i128>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let (a, b) = (rows[r][c], rows[i][c]);
                let pivot = rows[r].clone();
                for (x, p) in rows[i].iter_mut().zip(&pivot) {
                    *x = *x * a - p * b;
                }
                let g = rows[i].iter().fold(0i128, |g, &x| gcd(g, x.abs()));
                if g > 1 {
                    rows[i].iter_mut().for_each(|x| *x /= g);
                }
            }
        }
        r += 1;
    }
    r
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn independent_paths(g: &Qcfg) -> usize {
    let rows = all_paths(g)
        .into_iter()
        .map(|p| {
            let mut v = vec![0i128; g.edges.len()];
            p.into_iter().for_each(|e| v[e] = 1);
            v
        })
        .collect();
    rank(rows)
}

#[test]
fn rank_helper() {
    assert_eq!(rank(vec![vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 2]]), 2);
    assert_eq!(rank(vec![vec![1, 1], vec![1, 0]]), 2);
}

#[test]
fn single_branch_has_two_paths() {
    let p = parse_qiskit_dialect("x = 1\nif x:\n    y = 2\nz = 3\n").unwrap();
    let g = build_qcfg(&p, CfgMode::Fallthrough).unwrap();
    assert_eq!(all_paths(&g).len(), 2);
    assert_eq!(independent_paths(&g) as i64, cyclomatic(&g).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn cyclomatic_equals_independent_paths(p in common::generate::acyclic_program()) {
        let program = parse_qiskit_dialect(&p.render()).unwrap();
        let g = build_qcfg(&program, CfgMode::Fallthrough).unwrap();
        prop_assert!(g.node_count() <= 8);
        prop_assert_eq!(independent_paths(&g) as i64, cyclomatic(&g).unwrap());
    }
}
