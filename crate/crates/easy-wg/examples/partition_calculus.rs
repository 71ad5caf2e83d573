//! Tour of the two-row partition calculus: parsing, the category
//! operations, the noncrossing test, and the matrix realization T_p
//! with its functoriality identities.
//!
//! Run with `cargo run --example partition_calculus`.

use easy_wg::partition::{Direction, Partition};
use easy_wg::tensor::{check_functoriality, t_matrix};

fn main() -> easy_wg::Result<()> {
    // A partition of P(2,3): upper points a b, lower points a b b.
    let p = Partition::parse("ab/abb")?;
    println!("p           = {p}");
    println!("blocks      = {:?}", p.blocks());
    println!("involution  = {}", p.involution());

    // Tensor product places partitions side by side.
    let pair = Partition::duality();
    println!("p (x) pairing = {}", p.tensor(&pair));

    // Composition stacks q on top of p and counts closed blocks.
    let q = Partition::parse("abb/ab")?;
    let (comp, closed) = p.compose(&q)?;
    println!("q . p       = {comp} with {closed} closed block(s)");

    // Rotation moves the leftmost upper point to the lower row. The
    // one-line form of the basic crossing stays crossing.
    let crossing = Partition::crossing();
    let rotated = crossing.rotate(Direction::Left)?.rotate(Direction::Left)?;
    println!(
        "{crossing} rotates to {rotated}; noncrossing: {}",
        rotated.is_noncrossing()
    );

    // T_p sends basis vectors by the delta function of the partition.
    let n = 3;
    let tp = t_matrix(&p, n)?;
    println!("T_p at n = {n} is {} x {}", tp.rows(), tp.cols());

    // The three functoriality identities, checked exactly.
    let report = check_functoriality(&p, &q, n)?;
    println!(
        "tensor {} compose {:?} involution {}",
        report.tensor_ok, report.compose_ok, report.involution_ok
    );
    assert!(report.all_ok());
    Ok(())
}
