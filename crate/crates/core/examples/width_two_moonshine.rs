//! Width-2 McKay-Thompson series and recovering the multiplicities from them.

use weak_moonshine::frobenius::Tuple;
use weak_moonshine::moonshine;
use weak_moonshine::CharacterTable;

fn main() -> weak_moonshine::Result<()> {
    for (name, pairs) in [("D4", ["r3s,rs", "s,s", "r,r3"]), ("Q8", ["-k,k", "j,j", "i,-i"])] {
        let spec = moonshine::default_assignment(CharacterTable::bundled(name)?, 4)?;
        let m = moonshine::multiplicities(&spec);
        for text in pairs {
            let t = Tuple::parse(spec.table().group(), text)?;
            println!("{name} T(2,({text})) = {}", moonshine::frob_series(&spec, &m, t.entries()));
        }
        let recovered = moonshine::recover_multiplicities(&spec, &m, 2, 4)?;
        println!("{name} M5 from width 2: {recovered} (matches {})", &recovered == m.series(4));

        let cert = moonshine::certify(&spec, 2)?;
        println!("{name} certified at width 2: {}", cert.passed());
    }
    Ok(())
}
