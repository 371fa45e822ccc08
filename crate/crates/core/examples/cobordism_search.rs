//! ADDC and ADD4 on the worked inputs, then a small search.

use lensball::arith::{Frac, HjCf};
use lensball::cobord::{add4, addc, euler_number, search, SearchConfig};

pub fn run_example() -> Vec<String> {
    let mut out = Vec::new();
    let (pq, rs): (Frac, Frac) = ("16/7".parse().unwrap(), "25/9".parse().unwrap());
    let c = addc(&pq, &rs, 5).unwrap();
    let balls: Vec<String> = c.balls.iter().map(ToString::to_string).collect();
    out.push(format!(
        "ADDC(16/7, 25/9, 5): [{}] sign {} euler {}",
        balls.join(", "),
        c.sign,
        euler_number(&pq, &rs, 5).unwrap()
    ));

    let d = add4(&HjCf::new([3, 2, 2, 2]), 3).unwrap();
    let balls: Vec<String> = d.balls.iter().map(ToString::to_string).collect();
    out.push(format!("ADD4([3,2,2,2], 3): [{}]", balls.join(", ")));

    match addc(&"4/1".parse().unwrap(), &"9/4".parse().unwrap(), 1) {
        Ok(_) => out.push("unexpected candidate".into()),
        Err(e) => out.push(format!("ADDC(4/1, 9/4, 1) rejected: {} ({e})", e.kind())),
    }

    let small = search(&SearchConfig {
        bound_p: 8,
        ..Default::default()
    });
    out.push(format!(
        "bound 8: {} candidates in {} groups, {:?}",
        small.candidates.len(),
        small.groups().len(),
        small.stats.rejected
    ));
    out
}

#[allow(dead_code)]
fn main() {
    run_example().iter().for_each(|l| println!("{l}"));
}
