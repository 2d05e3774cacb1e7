//! Ideals, quotients and representability of a small product.

use pmvroot::ideals::{enumerate_ideals, is_maximal, is_prime, is_representable, quotient_algebra};
use pmvroot::Algebra;

fn main() {
    let m = Algebra::product(vec![Algebra::mv_chain(1), Algebra::mv_chain(2)]);
    for i in enumerate_ideals(&m, 16, None).unwrap() {
        let prime = is_prime(&m, i.members()).unwrap();
        let maximal = is_maximal(&m, i.members()).unwrap();
        let quo = quotient_algebra(&m, i.members()).unwrap();
        println!("{i}: prime={prime} maximal={maximal} quotient has {:?} elements", quo.size());
    }
    println!("representable: {}", is_representable(&m).unwrap());
}
