//! Check A1–A8 on a finite chain, a product and a sampled infinite carrier.

use pmvroot::{Algebra, Budget};

fn main() {
    let budget = Budget::default();
    for m in [
        Algebra::mv_chain(5),
        Algebra::product(vec![Algebra::mv_chain(2), Algebra::boolean(2)]),
        Algebra::rational_chain(),
    ] {
        println!("{m}: {}", m.check_axioms(&budget));
    }
}
