//! Signed slide triple trees for the four families.

use lensball::farey::Step;
use lensball::slidetree::{self, Family, SlideNode};

pub fn run_example() -> Vec<String> {
    let mut out = Vec::new();
    for fam in Family::ALL {
        let root = SlideNode::root(fam);
        let left = root.child(Step::L);
        out.push(format!(
            "{fam}: root {} x={:?}, left {}",
            root.entries, root.x, left.entries
        ));
    }
    let pre = Family::Lp3.pre_root_chain();
    out.push(format!("LP3 above the root: {} then {}", pre[0], pre[1]));
    let markov: Vec<String> = slidetree::enumerate(Family::Markov, 200)
        .iter()
        .map(|n| format!("{:?}", n.entries.abs_p_sorted()))
        .collect();
    out.push(format!("Markov triples up to 200: {}", markov.join(" ")));
    out
}

#[allow(dead_code)]
fn main() {
    run_example().iter().for_each(|l| println!("{l}"));
}
