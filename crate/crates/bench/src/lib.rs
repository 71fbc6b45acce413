//! Shared fixtures for the criterion benches.

use okubo_core::accessory::AccessoryChart;
use okubo_core::df::DFParams;
use okubo_core::exact::{int, rat};
use okubo_core::hg::HGParams;

pub fn okubo_params() -> HGParams {
    HGParams::okubo(rat(1, 3), rat(1, 5), rat(1, 7), rat(1, 11))
}

pub fn generic_chart() -> AccessoryChart {
    AccessoryChart::complete_r4(rat(1, 3), rat(1, 5), rat(1, 7), rat(1, 11), [int(1), int(2), int(3)])
        .expect("sample chart is admissible")
}

pub fn df_params() -> DFParams {
    DFParams::new(rat(1, 3), rat(1, 5), rat(1, 7), rat(1, 2))
}
