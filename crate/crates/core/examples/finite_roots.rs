//! Decide square roots on finite chains and Boolean cubes.

use pmvroot::sqrt::{candidate_sqrt, SqrtSearch};
use pmvroot::{Algebra, Budget};

fn main() {
    let budget = Budget::default();
    let mut algebras: Vec<Algebra> = (0..=6).map(Algebra::mv_chain).collect();
    algebras.push(Algebra::boolean(3));
    for m in algebras {
        match candidate_sqrt(&m, &budget).unwrap() {
            SqrtSearch::Root(w) => println!("{m}: {w}"),
            SqrtSearch::NoRoot(n) => println!("{m}: {n}"),
        }
    }
}
