mod common;

use common::*;
use graphalg::graph::VertexIx;
use graphalg::report::{af_core_simple, bratteli, csimple};
use graphalg::structure::wielandt_bound;
use proptest::prelude::*;

const CAP: usize = 100_000;

fn arb_strong() -> impl Strategy<Value = graphalg::graph::MultiGraph> {
    any::<u64>().prop_map(|seed| random_strongly_connected(&mut rng(seed), 5))
}

fn multiply(a: &[Vec<u64>], b: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|l| a[i][l] * b[l][j]).sum())
                .collect()
        })
        .collect()
}

#[test]
fn core_verdicts_on_small_graphs() {
    for g in corpus(4, 5) {
        let verdict = af_core_simple(&g, CAP);
        let text = g.to_text();
        if strongly_connected(&g) {
            assert_eq!(
                verdict.af_core_simple,
                closed_walk_gcd(&g, 0) == 1,
                "{text}"
            );
        }
        if verdict.saturated_witness.is_some() {
            assert!(!verdict.af_core_simple, "{text}");
        }
        if verdict.sinks.len() >= 2 {
            assert!(!verdict.af_core_simple, "{text}");
        }
        // the AF core can be simple while C*(E) is not only through a loop without exits
        if verdict.af_core_simple && !csimple(&g, CAP).unwrap().simple {
            assert!(lasso_cofinal(&g) && !k_oracle(&g), "{text}");
        }
    }
}

#[test]
fn infinite_emitters_rule_out_a_simple_core() {
    for g in corpus(3, 4).into_iter().filter(|g| g.edge_count() > 0) {
        for k in 0..g.edge_count() {
            assert!(!af_core_simple(&with_infinite_edge(&g, k), CAP).af_core_simple);
        }
    }
}

proptest! {
    #[test]
    fn bratteli_levels_are_the_period_block(g in arb_strong()) {
        let n = g.vertex_count();
        let d = closed_walk_gcd(&g, 0);
        let a = counts(&g);
        let mut ad: Vec<Vec<u64>> = (0..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect();
        for _ in 0..d {
            ad = multiply(&ad, &a);
        }
        // residue class of the base: BFS distance is 0 mod d
        let mut dist = vec![usize::MAX; n];
        dist[0] = 0;
        let mut queue = std::collections::VecDeque::from([0]);
        while let Some(u) = queue.pop_front() {
            for w in 0..n {
                if a[u][w] > 0 && dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        let class: Vec<usize> = (0..n).filter(|&w| (dist[w] as u64).is_multiple_of(d)).collect();
        let block: Vec<Vec<u64>> = class.iter().map(|&i| class.iter().map(|&j| ad[i][j]).collect()).collect();

        let b = bratteli(&g, VertexIx(0), 3).unwrap();
        prop_assert_eq!(b.period, d);
        prop_assert_eq!(b.vertices.iter().map(|v| v.0).collect::<Vec<_>>(), class.clone());
        prop_assert_eq!(b.multiplicities.len(), 3);
        for level in &b.multiplicities {
            prop_assert_eq!(level, &block);
        }
        // the block is primitive
        let m = class.len();
        let support: Vec<Vec<u64>> = block.iter().map(|r| r.iter().map(|&x| u64::from(x > 0)).collect()).collect();
        let mut power = support.clone();
        let mut positive = power.iter().all(|r| r.iter().all(|&x| x > 0));
        for _ in 1..wielandt_bound(m).max(1) {
            if positive {
                break;
            }
            power = multiply(&power, &support)
                .into_iter()
                .map(|r| r.into_iter().map(|x| u64::from(x > 0)).collect())
                .collect();
            positive = power.iter().all(|r| r.iter().all(|&x| x > 0));
        }
        prop_assert!(positive);
    }
}
