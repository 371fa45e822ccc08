//! Hirzebruch–Jung and Euclidean expansions, duals and reversal partners.

use lensball::arith::{dual, euc_of_frac, hj_of_frac, hj_reversal_partner, Continuant, Frac, HjCf};

pub fn run_example() -> Vec<String> {
    let mut out = Vec::new();
    for s in ["16/7", "25/9", "1681/737", "49/20"] {
        let f: Frac = s.parse().unwrap();
        let cf = hj_of_frac(&f).unwrap();
        out.push(format!(
            "{f} = {cf}, reversed {} = {}",
            hj_reversal_partner(&f).unwrap(),
            cf.reversed()
        ));
    }

    // ADDC glues two expansions around a new vertex of weight c
    let glued: HjCf = "[3,2,2,3,5,3,5,2]".parse().unwrap();
    out.push(format!("{glued} evaluates to {}", glued.value()));
    let mut k = Continuant::new();
    k.extend(glued.coeffs());
    out.push(format!("continuant agrees: {}", k.value()));

    let f: Frac = "23/10".parse().unwrap();
    let run = euc_of_frac(&f).unwrap();
    out.push(format!(
        "{f} = {} with remainders {:?}, dual {}",
        run.cf,
        run.remainders,
        dual(&f).unwrap()
    ));
    out
}

#[allow(dead_code)]
fn main() {
    run_example().iter().for_each(|l| println!("{l}"));
}
