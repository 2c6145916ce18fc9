//! Does discarding a subsystem lower the discord? Compares C(rho12, H1 x 1)
//! with C(tr_2 rho12, H1) on random two-qubit and qubit-qutrit states and
//! reports the sign of the difference. No claim either way.

use fisher_discord::measures::bipartite_monotonicity_probe;
use fisher_discord::random::{random_hermitian, random_psd_unit_trace, rng, DEFAULT_SEED};

fn main() -> fisher_discord::Result<()> {
    let samples = 2000;
    let mut g = rng(DEFAULT_SEED);
    for dims in [(2, 2), (2, 3), (3, 3)] {
        let (mut up, mut down, mut extreme) = (0, 0, 0.0f64);
        for _ in 0..samples {
            let rho = random_psd_unit_trace(dims.0 * dims.1, &mut g);
            let h1 = random_hermitian(dims.0, &mut g);
            let d = bipartite_monotonicity_probe(&rho, dims, &h1)?;
            if d >= 0.0 {
                up += 1;
            } else {
                down += 1;
                extreme = extreme.min(d);
            }
        }
        println!("{dims:?}: joint >= reduced in {up}, below in {down}; most negative {extreme:.3e}");
    }
    Ok(())
}
