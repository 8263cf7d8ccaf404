//! Minimal library usage: evolve the unpumped pair and print the
//! concurrence at the end of the window.

use enzq::dynamics::{dicke_initial_state, evolve, IntegratorOptions, LindbladGenerator};
use enzq::model::{CouplingParameters, TimeGrid};

fn main() -> enzq::Result<()> {
    let coupling = CouplingParameters::normalized(0.95, 0.05)?;
    let gen = LindbladGenerator::unpumped(coupling);
    let grid = TimeGrid::linspace(10.0, 101)?;
    let traj = evolve(
        &dicke_initial_state(),
        &gen,
        &grid,
        &IntegratorOptions::default(),
    )?;
    println!("C(tγ = 10) = {:.6}", traj.concurrences()?.last().unwrap());
    Ok(())
}
