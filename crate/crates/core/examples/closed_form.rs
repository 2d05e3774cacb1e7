//! The root (x+u)/2 on Γ(ℚ,1) and on the cocycle algebra.

use pmvroot::sqrt::{closed_form_sqrt, is_strict};
use pmvroot::{q, Algebra, Budget, Element, GroupDescriptor, GroupElement};

fn main() {
    let budget = Budget::default();
    let cocycle = Algebra::gamma_from(GroupDescriptor::CocycleQ4, GroupElement::from_ints(&[1, 0, 0, 0])).unwrap();
    for m in [Algebra::rational_chain(), cocycle] {
        let r = closed_form_sqrt(&m, &budget).unwrap();
        let r0 = r.apply(&m, &m.zero()).unwrap();
        println!("{m}: {r}; r(0) = {r0}; strict = {}", is_strict(&m, &r).unwrap());
    }
    let m = Algebra::rational_chain();
    let r = closed_form_sqrt(&m, &budget).unwrap();
    let x = Element::Group(GroupElement::new(vec![q(1, 3)]));
    let y = r.apply(&m, &x).unwrap();
    println!("r(1/3) = {y}, r(1/3)⊙r(1/3) = {}", m.odot(&y, &y));
}
