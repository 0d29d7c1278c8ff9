use std::collections::BTreeMap;

use crate::padic::Ball;

/// Values attached to balls in a locally constant function.
pub trait BallValue: Clone + Eq {
    fn plus(&self, other: &Self) -> Self;
    fn is_zero_value(&self) -> bool;
}

/// Canonical form of `Σ v_k χ_{B_k}`: refine to the finest scale, merge,
/// drop zeros, then merge complete sibling families with equal values into
/// their parent until nothing changes.
pub fn normalize<V: BallValue>(entries: Vec<(Ball, V)>) -> BTreeMap<Ball, V> {
    let Some(finest) = entries.iter().map(|(b, _)| b.scale()).max() else {
        return BTreeMap::new();
    };
    let p = entries[0].0.p();
    let mut fine: BTreeMap<Ball, V> = BTreeMap::new();
    let disjoint_same_scale = entries.iter().all(|(b, _)| b.scale() == finest);
    for (b, v) in entries {
        let kids = if disjoint_same_scale {
            vec![b]
        } else {
            b.refine(finest).expect("finest scale dominates")
        };
        for k in kids {
            match fine.get_mut(&k) {
                Some(old) => *old = old.plus(&v),
                None => {
                    fine.insert(k, v.clone());
                }
            }
        }
    }
    fine.retain(|_, v| !v.is_zero_value());
    coarsen(p, fine, finest)
}

fn coarsen<V: BallValue>(p: u32, mut map: BTreeMap<Ball, V>, finest: i64) -> BTreeMap<Ball, V> {
    let mut scale = finest;
    loop {
        let mut families: BTreeMap<Ball, Vec<Ball>> = BTreeMap::new();
        for b in map.keys().filter(|b| b.scale() == scale) {
            families.entry(b.parent()).or_default().push(b.clone());
        }
        let mut merged = false;
        for (parent, kids) in families {
            if kids.len() != p as usize {
                continue;
            }
            let first = map[&kids[0]].clone();
            if kids.iter().all(|k| map[k] == first) {
                for k in &kids {
                    map.remove(k);
                }
                map.insert(parent, first);
                merged = true;
            }
        }
        if !merged {
            return map;
        }
        scale -= 1;
    }
}
