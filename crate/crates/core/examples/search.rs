//! Search small chains and products for violators.

use pmvroot::search::counterexample_search;

fn main() {
    for (property, size) in [("Sq1-solvability", 5), ("AXIOMS", 6), ("EQ85", 4)] {
        match counterexample_search(property, size).unwrap() {
            Some(v) => println!("{property} up to {size}: {v}"),
            None => println!("{property} up to {size}: none"),
        }
    }
}
