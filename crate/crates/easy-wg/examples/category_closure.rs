//! Categories of partitions: membership, bounded closures, and the
//! classification of singly generated categories, including the extra
//! noncrossing category generated by the double singleton.
//!
//! Run with `cargo run --release --example category_closure`.

use easy_wg::category::{
    classify_generator, closure, nest_even_restriction, CategoryId, ClosureSpec, Family,
    NEST_EVEN_NAME,
};
use easy_wg::partition::Partition;

fn main() -> easy_wg::Result<()> {
    // The thirteen named categories and their sizes on at most 4 points.
    for c in CategoryId::all() {
        println!("{c:3}  |restriction(4)| = {}", c.restriction(4)?.len());
    }

    // Generating the pairings: the axioms alone, plus the crossing.
    let spec = ClosureSpec {
        generators: vec![],
        crossing_axiom: true,
        point_bound: 6,
    };
    let res = closure(&spec)?;
    println!(
        "closure of the axioms with crossing: {} elements (pairings: {})",
        res.set.len(),
        CategoryId::Classical(Family::O).restriction(6)?.len()
    );

    // Classifying single generators against the named restrictions.
    for (word, with_crossing) in [
        ("/aaaa", true),
        ("/abab", false),
        ("abc/cba", false),
        ("/ab", false),
    ] {
        let p = Partition::parse(word)?;
        let e = classify_generator(&p, with_crossing, 6)?;
        println!(
            "<{word}> {} -> {} ({} elements, complete: {})",
            e.axiom_set, e.identified_as, e.closure_size, e.complete
        );
    }

    // The double singleton generates a strict subcategory of b'+: the
    // singletons nested inside any pair must come in even numbers.
    let ne = nest_even_restriction(6)?;
    let bp = CategoryId::Free(Family::BPrime).restriction(6)?;
    println!(
        "{NEST_EVEN_NAME} has {} elements on <= 6 points, b'+ has {}",
        ne.len(),
        bp.len()
    );
    let witness = Partition::parse("/abac")?;
    assert!(bp.contains(&witness) && !ne.contains(&witness));
    println!("witness separating them: {witness}");
    Ok(())
}
