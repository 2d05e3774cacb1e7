//! Parse, print and reject spec files.

use pmvroot::spec::{parse_element, parse_spec, AlgebraSpec};
use pmvroot::Algebra;

fn main() {
    let spec = parse_spec(r#"{"kind":"gamma","group":{"kind":"cocycle_q4"},"unit":["1","0","0","0"]}"#).unwrap();
    print!("{spec}");
    let x = parse_element(spec.algebra(), r#"["1/2", 1, "-1/3", 0]"#).unwrap();
    println!("element: {x}");
    let m = Algebra::product(vec![Algebra::mv_chain(1), Algebra::rational_chain()]);
    print!("{}", AlgebraSpec::of(&m).unwrap());
    for bad in [r#"{"kind":"mv_chain","n":-1}"#, r#"{"kind":"torus"}"#, r#"{"kind":"gamma","group":{"kind":"rat_vector","dims":1},"unit":0.5}"#] {
        println!("{}", parse_spec(bad).unwrap_err());
    }
}
