//! Conjugacy classes, element orders and power maps of D4 and Q8.

use weak_moonshine::group;

fn main() -> weak_moonshine::Result<()> {
    for name in ["D4", "Q8"] {
        let g = group::bundled(name)?;
        let classes = g.conjugacy_classes();
        println!("{name}: order {}, exponent {}, {} classes", g.order(), g.exponent(), classes.len());
        let squares = classes.power_map(&g, 2);
        for (j, class) in classes.classes().iter().enumerate() {
            let members: Vec<&str> = class.iter().map(|&x| g.label(x)).collect();
            println!(
                "  {{{}}}  size {}  order {}  squares into {{{}}}",
                members.join(", "),
                classes.size(j),
                classes.order(j),
                g.label(classes.representative(squares[j])),
            );
        }
    }
    Ok(())
}
