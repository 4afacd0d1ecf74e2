//! Graded multiplicities of the irreducible representations in the weak
//! moonshine modules for D4 and Q8, and their limiting proportions.

use weak_moonshine::moonshine;
use weak_moonshine::CharacterTable;

fn main() -> weak_moonshine::Result<()> {
    for name in ["D4", "Q8"] {
        let spec = moonshine::default_assignment(CharacterTable::bundled(name)?, 5)?;
        let m = moonshine::multiplicities(&spec);
        println!("{name}: genuine {}", m.is_genuine());
        for i in 0..m.len() {
            println!("  M{} = {}", i + 1, m.series(i));
        }
    }

    let spec = moonshine::default_assignment(CharacterTable::bundled("D4")?, 8)?;
    let m = moonshine::multiplicities(&spec);
    for n in 1..=6 {
        let d = moonshine::asymptotic_deltas(spec.table(), &m, n)?;
        println!("n={n}: {}", d.rendered().join(" "));
    }
    let limits = moonshine::asymptotic_deltas(spec.table(), &m, 1)?.limits;
    println!("limits: {}", limits.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(" "));
    Ok(())
}
