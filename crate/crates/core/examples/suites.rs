//! Run every property suite on the cocycle algebra and replay failures.

use pmvroot::sqrt::{find_sqrt, replay_suite, run_property_suite, SUITES};
use pmvroot::{Algebra, Budget, GroupDescriptor, GroupElement};

fn main() {
    let budget = Budget::with_points(128);
    let m = Algebra::gamma_from(GroupDescriptor::CocycleQ4, GroupElement::from_ints(&[1, 0, 0, 0])).unwrap();
    let r = find_sqrt(&m, &budget).unwrap().into_root().unwrap();
    for name in SUITES {
        match run_property_suite(name, &m, Some(&r), &budget) {
            Ok(rep) => {
                println!("{rep}");
                if let Some(ce) = &rep.counterexample {
                    println!("  replays: {:?}", replay_suite(name, &m, &r, &budget, ce).unwrap());
                }
            }
            Err(e) => println!("{name}: {e}"),
        }
    }
}
