//! Rebuild a root from r(0)⁻ and a half map, and watch Γ(ℤ,4) fail.

use pmvroot::sqrt::{closed_form_sqrt, reconstruct_sqrt, same_on, HalfMap};
use pmvroot::{q, Algebra, Budget, Element, GroupElement};

fn main() {
    let budget = Budget::default();
    let m = Algebra::rational_chain();
    let b = Element::Group(GroupElement::new(vec![q(1, 2)]));
    let rebuilt = reconstruct_sqrt(&m, &b, HalfMap::Halving, &budget).unwrap();
    let direct = closed_form_sqrt(&m, &budget).unwrap();
    println!("{m}: rebuilt {rebuilt}, differs at {:?}", same_on(&m, &rebuilt, &direct, &budget).unwrap());

    let chain = Algebra::mv_chain(4);
    let b = Element::Group(GroupElement::from_ints(&[3]));
    if let Err(e) = reconstruct_sqrt(&chain, &b, HalfMap::Search, &budget) {
        println!("{chain}: {e}");
    }
}
