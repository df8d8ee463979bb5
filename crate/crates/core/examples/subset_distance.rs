use qoneway::groups::{parse_elements, FiniteGroup, SubsetInstance};
use qoneway::lowerbounds::subset_delta;

fn main() {
    for (group, set) in [("z5", "0,1"), ("z8", "0,1,3"), ("d4", "0,2,5"), ("dic2", "0,1")] {
        let g = FiniteGroup::parse(group).unwrap();
        let inst = SubsetInstance::new(&g, &parse_elements(set).unwrap()).unwrap();
        let d = subset_delta(&inst).unwrap();
        println!("{group} S = {{{set}}}: Δ = {}, pair path {}, Pr[f = 0] = {}", d.delta, d.pair_delta, d.probability_f_zero);
    }
}
