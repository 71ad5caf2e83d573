//! Monte Carlo sampling of Haar elements of the six classical easy
//! groups, compared against the exact Weingarten integrals with
//! tolerances in standard errors.
//!
//! Run with `cargo run --release --example monte_carlo`.

use easy_wg::category::{CategoryId, Family};
use easy_wg::linalg::format_rational;
use easy_wg::mc::{estimate_char_moment, estimate_integral, sample};
use easy_wg::weingarten::{char_moment_exact, integrate};
use num::ToPrimitive;

fn main() -> easy_wg::Result<()> {
    // One sample per group; each is a genuine group element.
    for g in Family::ALL {
        let m = sample(g, 4, 7)?.matrix;
        let defect = (&m * m.transpose() - nalgebra::DMatrix::identity(4, 4))
            .abs()
            .max();
        println!("{g:?}: orthogonality defect {defect:.2e}");
    }

    // Entry integrals: estimates land within a few standard errors of
    // the exact Weingarten values.
    let samples = 200_000;
    let cases = [
        (Family::O, 3, vec![1usize; 4], vec![1usize; 4]),
        (Family::S, 4, vec![1, 2], vec![1, 2]),
        (Family::H, 3, vec![1, 1], vec![1, 1]),
        (Family::B, 5, vec![1], vec![1]),
    ];
    for (seed, (g, n, i, j)) in cases.into_iter().enumerate() {
        let exact = integrate(CategoryId::Classical(g), n, &i, &j)?;
        let est = estimate_integral(g, n, &i, &j, samples, seed as u64)?;
        println!(
            "{g:?} n={n}: exact {} estimate {:.5} ({:.2} sigma)",
            format_rational(&exact),
            est.mean,
            est.sigmas_from(exact.to_f64().unwrap())
        );
    }

    // Truncated character moment of S_8 at s = 4.
    let exact = char_moment_exact(CategoryId::Classical(Family::S), 8, 4, 2)?;
    let est = estimate_char_moment(Family::S, 8, 4, 2, samples, 99)?;
    println!(
        "E chi_(1/2)^2 over S_8: exact {} estimate {:.5} ({:.2} sigma)",
        format_rational(&exact),
        est.mean,
        est.sigmas_from(exact.to_f64().unwrap())
    );
    Ok(())
}
