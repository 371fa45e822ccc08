//! The 2-Farey tree: walking, locating and completing pairs.

use lensball::arith::Frac;
use lensball::farey;

pub fn run_example() -> Vec<String> {
    let mut out = Vec::new();
    for n in farey::enumerate_two_farey(7) {
        out.push(format!(
            "{:>4} {n}",
            if n.path.depth() == 0 {
                "-".to_string()
            } else {
                n.path.to_string()
            }
        ));
    }
    let f: Frac = "11/6".parse().unwrap();
    out.push(format!("{f} sits at {}", farey::locate(&f).unwrap()));
    let (q1, q2) = farey::complete_pair(5, 7).unwrap();
    out.push(format!("5/{q1} and 7/{q2} are 2-Farey neighbours"));
    out
}

#[allow(dead_code)]
fn main() {
    run_example().iter().for_each(|l| println!("{l}"));
}
