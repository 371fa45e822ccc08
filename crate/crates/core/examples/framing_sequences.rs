//! Framing sequences of the balls and the quadratic Euclid identity.

use lensball::framing::{euclid_identity_check, framing_halves, framing_sequence};

pub fn run_example() -> Vec<String> {
    let mut out = Vec::new();
    for (p, q) in [(7, 3), (16, 9), (23, 10), (8, 6)] {
        let s = framing_sequence(p, q).unwrap();
        let (left, right) = framing_halves(&s);
        out.push(format!(
            "B_{{{p},{q}}}: {s}  left {} right {}",
            left.value(),
            right.reversed().value()
        ));
    }
    out.push(format!(
        "23·10 = 2·10² + 3·3² + 3·1²: {}",
        euclid_identity_check(23, 10).unwrap()
    ));
    out
}

#[allow(dead_code)]
fn main() {
    run_example().iter().for_each(|l| println!("{l}"));
}
