use boolnet::enumerate::linear_systems;
use boolnet::polytime::decide_one_bounded;
use boolnet::{decide_solvable, region_valid, Interaction::*, NetType, DEFAULT_BUDGET};

#[test]
fn one_bounded_matches_general_solver() {
    let types = [
        NetType::of(&[Nop, Inp, Set]),
        NetType::of(&[Nop, Inp, Set, Used]),
        NetType::of(&[Nop, Out, Res]),
        NetType::of(&[Nop, Out, Res, Free]),
        NetType::of(&[Nop, Set, Res, Inp]),
        NetType::of(&[Nop, Set, Res, Out]),
        NetType::of(&[Nop, Set, Res, Used]),
        NetType::of(&[Nop, Set, Res, Free]),
        NetType::of(&[Nop, Set, Res, Inp, Used]),
        NetType::of(&[Nop, Set, Res, Out, Free]),
        NetType::of(&[Nop, Set, Res, Inp, Out, Used, Free]),
    ];
    let systems = linear_systems(6, 5);
    let mut bad = Vec::new();
    for ty in types {
        for ts in &systems {
            let fast = decide_one_bounded(ts, ty).unwrap();
            let slow = decide_solvable(ts, ty, DEFAULT_BUDGET);
            if let boolnet::polytime::PolyVerdict::Solvable(rs) = &fast {
                for r in rs {
                    assert!(region_valid(ts, ty, r));
                }
            }
            if fast.is_solvable() != slow.is_solvable() {
                bad.push(format!("{ty} {:?} fast={:?} slow={}", ts.arcs(), fast.is_solvable(), slow.is_solvable()));
            }
        }
    }
    assert!(bad.is_empty(), "{} disagreements, first: {:?}", bad.len(), &bad[..bad.len().min(5)]);
}
