//! Exact Haar integration through the Weingarten formula: Gram and
//! Weingarten matrices over a category basis, entry integrals, and a
//! cross-check against brute-force averaging over a finite group.
//!
//! Run with `cargo run --release --example weingarten_integration`.

use easy_wg::category::{CategoryId, Family};
use easy_wg::linalg::format_rational;
use easy_wg::oracle::finite_group_average;
use easy_wg::weingarten::{integrate, weingarten};

fn main() -> easy_wg::Result<()> {
    // The Weingarten matrix of S_n on 2 points at n = 3.
    let s = CategoryId::Classical(Family::S);
    let data = weingarten(s, 2, 3)?;
    println!(
        "basis D_2(s): {:?}",
        data.basis.iter().map(|p| p.to_string()).collect::<Vec<_>>()
    );
    let wg = data.weingarten()?;
    for r in 0..wg.rows() {
        let row: Vec<String> = (0..wg.cols())
            .map(|c| format_rational(wg.get(r, c)))
            .collect();
        println!("  [{}]", row.join(", "));
    }

    // Entry integrals, exact.
    println!(
        "int_S3 u11 u22      = {}",
        format_rational(&integrate(s, 3, &[1, 2], &[1, 2])?)
    );
    println!(
        "int_O3 u11^4        = {}",
        format_rational(&integrate(
            CategoryId::Classical(Family::O),
            3,
            &[1; 4],
            &[1; 4]
        )?)
    );
    println!(
        "int_B5 u11          = {}",
        format_rational(&integrate(CategoryId::Classical(Family::B), 5, &[1], &[1])?)
    );

    // Brute force over all 24 permutation matrices of S_4 agrees.
    let exact = integrate(s, 4, &[1, 1], &[1, 1])?;
    let brute = finite_group_average(Family::S, 4, &[1, 1], &[1, 1])?;
    println!(
        "int_S4 u11^2        = {} (brute force {})",
        format_rational(&exact),
        format_rational(&brute)
    );
    assert_eq!(exact, brute);

    // At small n the Gram matrix can be singular; the error is explicit.
    match weingarten(s, 3, 2)?.weingarten() {
        Ok(_) => unreachable!("Gram of S on 3 points is singular at n = 2"),
        Err(e) => println!("expected failure: {e}"),
    }
    Ok(())
}
