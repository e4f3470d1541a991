//! Achievable symmetric rates for two-hop Gaussian interference networks.
//!
//! Two transmitters reach two destinations only through two relays; each
//! hop is a symmetric Gaussian interference channel. The crate evaluates
//! decode-and-forward relaying (rate splitting on hop 1, dirty-paper coding
//! and compound-MAC modes on hop 2, role switching under strong first-hop
//! interference, full and half duplex) and amplify-and-forward relaying
//! (in-phase and out-of-phase), optimizing every power split by grid search.
//!
//! ```
//! use twohop_core::{df_rate, ChannelParams, OptimizerSpec};
//!
//! let params = ChannelParams::new(0.0, 0.0, 3.0, 3.0).unwrap();
//! let r = df_rate(&params, &OptimizerSpec::default()).unwrap();
//! assert!((r.rate - 1.0).abs() < 1e-9);
//! ```

pub mod af;
pub mod channel;
pub mod cli;
pub mod df;
pub mod error;
pub mod optimize;
pub mod region;
pub mod scheme;
pub mod sweep;

pub use af::{
    af_gain, af_rate, af_regime, af_strong_rate, af_weak_rate, crossover_window,
    equivalent_channel, noisy_interference_capacity, parallel_awgn_rate, AfRegime, CrossoverWindow,
    EquivChannel, Phase,
};
pub use channel::{
    classify, gamma, switch_roles, ChannelParams, Duplex, Regime, RATE_UNIT_LN, TOL,
};
pub use df::{
    df_rate, df_rate_with, dpc_hop2, dpc_hop2_switched, half_duplex_rate, hk_hop1,
    hk_hop1_switched, mac_hop2, mac_hop2_strong, mac_hop2_switched, mac_region_general,
    naive_strong_rate, MacBounds, MacRegionPowers, PowerSplit, SecondHop,
};
pub use error::{Error, Result};
pub use optimize::{maximize, OptimizerSpec, Optimum};
pub use region::{convex_union, max_sum_in_intersection, rect_region, RatePair, RateRegion};
pub use scheme::{evaluate, Scheme, SchemeKind, SchemeResult};
pub use sweep::{run_sweep, SweepRow, SweepSpec, Vary};
