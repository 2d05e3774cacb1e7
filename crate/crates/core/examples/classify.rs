//! Split algebras with a root into Boolean and strict parts.

use pmvroot::sqrt::{classify, find_sqrt};
use pmvroot::{Algebra, Budget};

fn main() {
    let budget = Budget::default();
    for m in [
        Algebra::boolean(2),
        Algebra::rational_chain(),
        Algebra::product(vec![Algebra::mv_chain(1), Algebra::rational_chain()]),
    ] {
        let r = find_sqrt(&m, &budget).unwrap().into_root().unwrap();
        println!("{m}: {}", classify(&m, &r, &budget).unwrap().summary(&m));
    }
}
