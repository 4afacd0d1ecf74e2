//! Compute character tables from multiplication tables and compare them
//! with the bundled ones.

use weak_moonshine::{group, CharacterTable};

fn main() -> weak_moonshine::Result<()> {
    for g in group::all_bundled() {
        let computed = CharacterTable::compute(&g)?;
        let bundled = CharacterTable::for_group(g.clone())?;
        let mut a: Vec<_> = computed.values().to_vec();
        let mut b: Vec<_> = bundled.values().to_vec();
        a.sort_by_key(|r| format!("{r:?}"));
        b.sort_by_key(|r| format!("{r:?}"));
        println!("{:<9} {} characters, dims {:?}, agrees: {}", g.name(), computed.len(), computed.dims(), a == b);
    }

    let q8 = CharacterTable::bundled("Q8")?;
    let classes = q8.classes();
    for i in 0..q8.len() {
        let row: Vec<String> = (0..classes.len()).map(|j| format!("{:>3}", q8.class_value(i, j).to_string())).collect();
        println!("chi{} {}", i + 1, row.join(""));
    }
    Ok(())
}
