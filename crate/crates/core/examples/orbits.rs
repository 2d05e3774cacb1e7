//! Orbits of 0 under r and the H-perfect root on Γ(ℚ lex ℚ,(1,0)).

use pmvroot::sqrt::{hperfect_sqrt, hroot0_membership, r_orbit};
use pmvroot::{q, Algebra, Budget, Element, GroupDescriptor, GroupElement, OrderKind};

fn main() {
    let budget = Budget::default();
    let rat = || GroupDescriptor::rat(1, OrderKind::Lex);
    let m = Algebra::gamma_from(GroupDescriptor::lex_pair(rat(), rat()).unwrap(), GroupElement::from_ints(&[1, 0])).unwrap();
    let r = hperfect_sqrt(&m, &budget).unwrap();
    for (k, x) in r_orbit(&m, &r, 5).unwrap().iter().enumerate() {
        println!("r^{}(0) = {x}", k + 1);
    }
    let x = Element::Group(GroupElement::new(vec![q(1, 2), q(5, 1)]));
    println!("r((1/2,5)) = {}", r.apply(&m, &x).unwrap());
    for x in [GroupElement::from_ints(&[0, 7]), GroupElement::new(vec![q(1, 4), q(0, 1)])] {
        let member = hroot0_membership(&m, &r, &Element::Group(x.clone()), 8).unwrap();
        println!("{x} in H-root0 at depth 8: {member}");
    }
}
