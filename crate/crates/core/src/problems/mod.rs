//! Application problems: weighted sum rate, energy efficiency and slotted
//! ALOHA, with a random channel generator.

pub mod aloha;
pub mod energy;
pub mod network;
pub mod wsr;

pub use aloha::{
    aloha_problem, generate_aloha, generate_aloha_with_mean, symmetric_share_limit, throughput_function,
    AlohaNetwork, ALOHA_DELTA,
};
pub use energy::{
    dinkelbach_gee, dinkelbach_gee_detailed, gee_problem, global_energy_efficiency, wmee_problem, wsee_problem,
    DinkelbachRun, EnergyModel, DEFAULT_LAMBDA_TOL,
};
pub use network::{generate_channels, InterferenceNetwork};
pub use wsr::{
    bound_gap_mmp_vs_dm, power_box, rate_function, weighted_sum_rate_function, wsr_problem, Representation,
};
