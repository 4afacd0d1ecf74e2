//! D4 and Q8 share a character table but not their 2-character tables.

use weak_moonshine::distinguish::{self, Separation, Verdict};
use weak_moonshine::frobenius::tuple_label;
use weak_moonshine::CharacterTable;

fn main() -> weak_moonshine::Result<()> {
    let d4 = CharacterTable::bundled("D4")?;
    let q8 = CharacterTable::bundled("Q8")?;
    println!("{} class matchings", distinguish::compatible_class_matchings(&d4, &q8).len());

    for width in 1..=2 {
        match distinguish::equivalent_up_to_width(&d4, &q8, width)? {
            Verdict::Equivalent { matching, bijection } => {
                let image: Vec<&str> = bijection.iter().map(|&x| q8.group().label(x)).collect();
                println!("width {width}: equivalent via {image:?}, orders preserved {}", matching.preserves_orders);
            }
            Verdict::Separated(Separation::Tuple(w)) => println!(
                "width {width}: separated, chi{}^({width}){} = {} but {} at {}",
                w.character + 1,
                tuple_label(d4.group(), &w.tuple),
                w.values[w.character],
                w.image_values[w.character],
                tuple_label(q8.group(), &w.image),
            ),
            Verdict::Separated(Separation::CharacterTables) => println!("width {width}: tables differ"),
        }
    }

    let a = distinguish::value_multiset(&d4, 4, 2)?;
    let b = distinguish::value_multiset(&q8, 4, 2)?;
    println!("chi5^(2) value multisets equal: {}", distinguish::same_multiset(&a, &b));
    Ok(())
}
