use std::collections::HashSet;

use partcat::closure::canonical_key;
use partcat::ops::*;
use partcat::partition::{count_partitions, enumerate_partitions, enumerate_up_to};
use partcat::{Color, Partition, PointRef};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn color() -> impl Strategy<Value = Color> {
    prop_oneof![Just(Color::White), Just(Color::Black)]
}

fn row(len: usize) -> impl Strategy<Value = Vec<Color>> {
    prop::collection::vec(color(), len)
}

fn labels(n: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0..n.max(1), n)
}

fn partition_on(upper: Vec<Color>, lower: Vec<Color>) -> impl Strategy<Value = Partition> {
    let n = upper.len() + lower.len();
    labels(n).prop_map(move |l| Partition::from_cyclic_labels(upper.clone(), lower.clone(), &l))
}

fn partition(max_row: usize) -> impl Strategy<Value = Partition> {
    (0..=max_row, 0..=max_row)
        .prop_flat_map(|(m, n)| (row(m), row(n)))
        .prop_flat_map(|(u, l)| partition_on(u, l))
}

/// Three partitions stacked bottom to top with matching rows.
fn composable_triple() -> impl Strategy<Value = (Partition, Partition, Partition)> {
    (0..4usize, 0..4usize, 0..4usize, 0..4usize)
        .prop_flat_map(|(a, b, c, d)| (row(a), row(b), row(c), row(d)))
        .prop_flat_map(|(w0, w1, w2, w3)| {
            (partition_on(w1.clone(), w0), partition_on(w2.clone(), w1), partition_on(w3, w2))
        })
}

/// Image of cyclic position `x` of `p` under a basic rotation.
fn rotated_pos(p: &Partition, corner: Corner, x: usize) -> usize {
    let n = p.size();
    match corner {
        Corner::DownLeft => (x + 1) % n,
        Corner::UpLeft => (x + n - 1) % n,
        Corner::DownRight | Corner::UpRight => x,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn compose_is_associative((p, q, r) in composable_triple()) {
        let left = compose(&compose(&p, &q).unwrap(), &r).unwrap();
        let right = compose(&p, &compose(&q, &r).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn involution_reverses_composition((p, q, _r) in composable_triple()) {
        let lhs = involution(&compose(&p, &q).unwrap());
        let rhs = compose(&involution(&q), &involution(&p)).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(involution(&involution(&p)), p);
    }

    #[test]
    fn rotations_round_trip(p in partition(4)) {
        for conv in [Conventions::STANDARD, Conventions::FLIPPED] {
            let undo = [
                (Corner::DownLeft, Corner::UpLeft),
                (Corner::UpLeft, Corner::DownLeft),
                (Corner::DownRight, Corner::UpRight),
                (Corner::UpRight, Corner::DownRight),
            ];
            for (there, back) in undo {
                if let Ok(q) = rotate_with(&p, there, conv) {
                    prop_assert_eq!(rotate_with(&q, back, conv).unwrap(), p.clone());
                }
            }
        }
    }

    #[test]
    fn rotations_keep_distances(p in partition(4)) {
        for corner in Corner::ALL {
            let Ok(q) = rotate(&p, corner) else { continue };
            prop_assert_eq!(q.total_color_sum(), p.total_color_sum());
            for a in 0..p.size() {
                prop_assert_eq!(q.ncolor_at(rotated_pos(&p, corner, a)), p.ncolor_at(a));
                for b in 0..p.size() {
                    let (qa, qb) = (rotated_pos(&p, corner, a), rotated_pos(&p, corner, b));
                    prop_assert_eq!(q.delta_positions(qa, qb), p.delta_positions(a, b));
                }
            }
        }
    }

    #[test]
    fn cyclic_rotation_shifts_positions(p in partition(4), k in 0i64..12) {
        let q = rotate_cyclic(&p, k);
        prop_assert_eq!((q.n_upper(), q.n_lower()), (p.n_upper(), p.n_lower()));
        let n = p.size();
        for a in 0..n {
            let shift = |x: usize| (x as i64 - k).rem_euclid(n as i64) as usize;
            prop_assert_eq!(q.ncolor_at(shift(a)), p.ncolor_at(a));
            for b in 0..n {
                prop_assert_eq!(q.delta_positions(shift(a), shift(b)), p.delta_positions(a, b));
            }
        }
        prop_assert_eq!(rotate_cyclic(&q, -k), p);
    }

    #[test]
    fn reflection_negates_reversed_distances(p in partition(4)) {
        let r = verticolor_reflect(&p);
        prop_assert_eq!(verticolor_reflect(&r), p.clone());
        for a in 0..p.size() {
            for b in (0..p.size()).filter(|&b| b != a) {
                let (pa, pb) = (p.point_at(a), p.point_at(b));
                let ra = mirror_point(&p, pa);
                let rb = mirror_point(&p, pb);
                prop_assert_eq!(
                    r.color_distance(rb, ra).unwrap(),
                    -p.color_distance(pa, pb).unwrap(),
                    "{} {} {}", p, pa, pb
                );
            }
        }
    }

    #[test]
    fn erase_turn_keeps_distances(p in partition(4)) {
        for t in all_turns(&p) {
            let r = erase_turn(&p, &t).unwrap();
            prop_assert_eq!(r.size() + 2, p.size());
            prop_assert_eq!(r.total_color_sum(), p.total_color_sum());
            let (ta, tb) = (p.pos(t.a).unwrap(), p.pos(t.b).unwrap());
            let image = |x: usize| x - [ta, tb].iter().filter(|&&y| y < x).count();
            for a in (0..p.size()).filter(|&x| x != ta && x != tb) {
                for b in (0..p.size()).filter(|&x| x != ta && x != tb) {
                    prop_assert_eq!(r.delta_positions(image(a), image(b)), p.delta_positions(a, b));
                }
            }
        }
    }

    #[test]
    fn projections_of_larger_partitions(p in partition(4)) {
        for s in ConsecutiveSet::all(&p) {
            let q = project(&p, &s);
            prop_assert!(is_projective(&q));
            prop_assert!(equivalent(&q, &ConsecutiveSet::lower_row(&q), &p, &s));
        }
    }

    #[test]
    fn literals_round_trip(p in partition(5)) {
        let back: Partition = p.to_string().parse().unwrap();
        prop_assert_eq!(&back, &p);
        prop_assert_eq!(canonical_key(&back), canonical_key(&p));
    }
}

#[test]
fn distances_sum_to_total_color() {
    for p in enumerate_up_to(5).unwrap() {
        for a in 0..p.size() {
            for b in 0..p.size() {
                if a != b {
                    assert_eq!(p.delta_positions(a, b) + p.delta_positions(b, a), p.total_color_sum(), "{p} {a} {b}");
                }
            }
        }
    }
}

#[test]
fn surgeries_match_recipes() {
    for p in enumerate_up_to(5).unwrap() {
        for x in 0..p.size() {
            let pt: PointRef = p.point_at(x);
            assert_eq!(disconnect_point(&p, pt).unwrap(), disconnect_point_surgery(&p, pt).unwrap(), "{p} {pt}");
        }
        for t in all_turns(&p) {
            assert_eq!(connect_turn(&p, &t).unwrap(), connect_turn_surgery(&p, &t).unwrap(), "{p} {}{}", t.a, t.b);
        }
    }
}

fn bell(n: usize) -> u64 {
    let mut rowv = vec![1u64];
    for _ in 0..n {
        let mut next = vec![*rowv.last().unwrap()];
        for &x in &rowv {
            next.push(next.last().unwrap() + x);
        }
        rowv = next;
    }
    rowv[0]
}

#[test]
fn enumeration_counts() {
    for total in 0..=6 {
        for upper in 0..=total {
            let all = enumerate_partitions(upper, total - upper, 8).unwrap();
            let expected = (1u64 << total) * bell(total);
            assert_eq!(all.len() as u64, expected);
            assert_eq!(count_partitions(total), expected);
            let distinct: HashSet<&Partition> = all.iter().collect();
            assert_eq!(distinct.len(), all.len());
        }
    }
    assert!(enumerate_partitions(5, 5, 8).is_err());
}

#[test]
fn canonical_keys_do_not_collide() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut by_key = std::collections::HashMap::new();
    for _ in 0..10_000 {
        let (m, n) = (rng.gen_range(0..=4), rng.gen_range(0..=4));
        let colors = |rng: &mut ChaCha8Rng, k| (0..k).map(|_| if rng.gen() { Color::White } else { Color::Black }).collect();
        let upper = colors(&mut rng, m);
        let lower = colors(&mut rng, n);
        let labels: Vec<usize> = (0..m + n).map(|_| rng.gen_range(0..(m + n).max(1))).collect();
        let p = Partition::from_cyclic_labels(upper, lower, &labels);
        if let Some(old) = by_key.insert(canonical_key(&p), p.clone()) {
            assert_eq!(old, p);
        }
    }
}
