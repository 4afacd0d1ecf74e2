//! q-expansions of j - 744 and the level 2 and 4 Hauptmoduln, plus an
//! arbitrary eta-quotient.

use weak_moonshine::qseries::{self, Hauptmodul};

fn main() -> weak_moonshine::Result<()> {
    for h in Hauptmodul::ALL {
        println!("{h} = {}", h.expansion(6));
    }
    let f4 = Hauptmodul::F4.expansion(40);
    println!("f4 odd-only through q^39: {}", qseries::f4_even_coefficient_violations(&f4).is_empty());

    let factors = qseries::parse_eta_factors("1:8,2:-24,4:16")?;
    let order = qseries::eta_quotient_order(&factors)?;
    println!("eta(q)^8 eta(q^4)^16 / eta(q^2)^24 starts at q^{order}: {}", qseries::eta_quotient(&factors, 6)?);
    println!("E4^3/Delta - 744 = {}", qseries::j_function(3));
    Ok(())
}
