//! Truncated characters and their limit laws: exact finite-n moments,
//! asymptotic partition-sum polynomials in t, and agreement with the
//! independent law oracles.
//!
//! Run with `cargo run --release --example character_laws`.

use easy_wg::category::{CategoryId, Family};
use easy_wg::freeprob::{law_moments, partition_sum_moments, LawId};
use easy_wg::linalg::format_rational;
use easy_wg::weingarten::{char_moment_asymptotic, char_moment_exact};

fn main() -> easy_wg::Result<()> {
    // Exact moments of the full character over O_n approach the
    // asymptotic value (Catalan-free: (k-1)!! pairings at t = 1).
    let o = CategoryId::Classical(Family::O);
    for n in [4usize, 8, 16] {
        let m4 = char_moment_exact(o, n, n, 4)?;
        println!("E chi^4 over O_{n:<2} = {}", format_rational(&m4));
    }
    let asym = char_moment_asymptotic(o, 4)?;
    println!("asymptotic moment 4 of O: {asym} (at t = 1: pairings of 4 points)");

    // Truncation to s = n/2 columns gives t = 1/2.
    let s = CategoryId::Classical(Family::S);
    let m2_half = char_moment_exact(s, 8, 4, 2)?;
    let poly = char_moment_asymptotic(s, 2)?;
    println!(
        "E chi_(1/2)^2 over S_8 = {} -> {} at t = 1/2",
        format_rational(&m2_half),
        poly
    );

    // The asymptotic character laws match the named law oracles.
    let pairs = [
        (CategoryId::Classical(Family::O), "g"),
        (CategoryId::Classical(Family::S), "p"),
        (CategoryId::Free(Family::O), "gamma"),
        (CategoryId::Free(Family::S), "pi"),
        (CategoryId::HalfLiberated, "rho"),
    ];
    for (c, law) in pairs {
        let from_category = partition_sum_moments(c, 6)?;
        let (id, primed) = LawId::parse(law)?;
        let from_law = law_moments(id, primed, 6)?;
        assert_eq!(from_category, from_law.entries);
        println!("{c:3} character law = {law:5} (m_6 = {})", from_category[5]);
    }
    Ok(())
}
