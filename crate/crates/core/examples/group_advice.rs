use qoneway::groups::{enumerate_subgroups, FiniteGroup};
use qoneway::protocols::{group_membership_advice, pqp_advice};

fn main() {
    let g = FiniteGroup::parse("z4xz2").unwrap();
    for h in enumerate_subgroups(&g) {
        let accept: Vec<String> =
            g.elements().map(|x| format!("{:.3}", group_membership_advice(&g, &h, x).unwrap())).collect();
        println!("H = {:?}: {}", h.elements(), accept.join(" "));
    }

    let table = [true, false, false, true];
    for x in 0..table.len() {
        println!("pqp x = {x}: {}", pqp_advice(&table, x).unwrap());
    }
}
