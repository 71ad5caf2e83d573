//! Moment-cumulant transforms over the full and noncrossing partition
//! lattices, the Bercovici-Pata map, and the convolution-semigroup
//! verdicts decided by cumulant linearity in t.
//!
//! Run with `cargo run --release --example bercovici_pata`.

use easy_wg::category::{CategoryId, Family};
use easy_wg::freeprob::{
    bercovici_pata, cumulants_from_moments, partition_sum_moments, semigroup_verdict, Kind,
    MomentSequence,
};

fn main() -> easy_wg::Result<()> {
    // Classical Poisson moments have all cumulants equal to t.
    let poisson = MomentSequence {
        kind: Kind::Classical,
        entries: partition_sum_moments(CategoryId::Classical(Family::S), 6)?,
    };
    let c = cumulants_from_moments(&poisson)?;
    for (i, poly) in c.entries.iter().enumerate() {
        println!("classical c_{} = {poly}", i + 1);
    }

    // Bercovici-Pata reinterprets them as free cumulants: the image of
    // the Poisson family is the free Poisson family.
    let transported = bercovici_pata(&poisson)?;
    let free_target = partition_sum_moments(CategoryId::Free(Family::S), 6)?;
    assert_eq!(transported.entries, free_target);
    println!(
        "BP(poisson) m_4 = {} (free Poisson, Narayana in t)",
        transported.entries[3]
    );

    // Semigroup verdicts: the unprimed families are semigroups, the
    // primed ones fail with an explicit nonlinear cumulant.
    for c in [
        CategoryId::Classical(Family::O),
        CategoryId::Classical(Family::H),
        CategoryId::Classical(Family::SPrime),
        CategoryId::Classical(Family::BPrime),
        CategoryId::Free(Family::SPrime),
    ] {
        let v = semigroup_verdict(c, 6)?;
        match v.certificate {
            None => println!("{c:3} semigroup: all cumulants linear in t"),
            Some((order, poly)) => {
                println!("{c:3} not a semigroup: c_{order} = {poly}")
            }
        }
    }
    Ok(())
}
