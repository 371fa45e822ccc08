//! Ball boundaries, orientation and recognition.

use lensball::lens::{recognize_ball_boundary, BallParams, LensSpace, Sign};

pub fn run_example() -> Vec<String> {
    let mut out = Vec::new();
    for (p, q) in [(2, 1), (3, 1), (4, 2), (7, 3), (41, 18)] {
        let b = BallParams::new(p, q, Sign::Plus).unwrap();
        out.push(format!(
            "∂{b} = {}, ∂({}) = {}",
            b.boundary(),
            b.negate(),
            b.negate().boundary()
        ));
    }
    let (a, b) = (
        LensSpace::new(49, 22).unwrap(),
        LensSpace::new(49, 20).unwrap(),
    );
    out.push(format!(
        "{a} vs {b}: oriented {}, unoriented {}",
        a.equiv_oriented(&b),
        a.equiv_unoriented(&b)
    ));
    for (p, q) in [(4, 1), (9, 4), (49, 9), (1681, 737)] {
        let l = LensSpace::new(p, q).unwrap();
        let balls: Vec<String> = recognize_ball_boundary(&l)
            .iter()
            .map(ToString::to_string)
            .collect();
        out.push(format!("{l} bounds [{}]", balls.join(", ")));
    }
    out
}

#[allow(dead_code)]
fn main() {
    run_example().iter().for_each(|l| println!("{l}"));
}
