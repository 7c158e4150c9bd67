//! Structural verdicts for a range of semidirect products.

use sparkframe::groups::{deficiency_verdict, SemidirectGroup, UnitSubgroup};

fn main() {
    let cases: &[(u64, &[u64])] = &[(5, &[1, 2, 3, 4]), (6, &[1, 5]), (8, &[1, 3, 5, 7]), (9, &[1, 8]), (15, &[1, 4])];
    for &(n, gens) in cases {
        let h = UnitSubgroup::generated_by(n, gens).expect("units");
        let group = SemidirectGroup::new(h);
        let v = deficiency_verdict(&group, 1);
        println!("N = {n:2}, H = {:?}: {:?} via {:?}", group.subgroup().elements(), v.verdict, v.rule);
        println!("    {}", v.reason);
    }
}
