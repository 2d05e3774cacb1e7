//! Arithmetic in the non-abelian cocycle group on ℚ⁴.

use pmvroot::{q, GroupDescriptor, GroupElement};

fn main() {
    let d = GroupDescriptor::CocycleQ4;
    let x = GroupElement::new(vec![q(1, 2), q(1, 1), q(0, 1), q(0, 1)]);
    let y = GroupElement::new(vec![q(0, 1), q(0, 1), q(1, 1), q(0, 1)]);
    println!("x + y = {}", d.add(&x, &y).unwrap());
    println!("y + x = {}", d.add(&y, &x).unwrap());
    println!("-x = {}", d.neg(&x).unwrap());
    let s = d.add(&x, &y).unwrap();
    let h = d.halve(&s).unwrap().unwrap();
    println!("(x+y)/2 = {h}, doubled back: {}", d.add(&h, &h).unwrap());
    let half_u = d.halve(&GroupElement::from_ints(&[1, 0, 0, 0])).unwrap().unwrap();
    println!("u/2 = {half_u}, central: {}", d.is_central(&half_u).unwrap());
}
