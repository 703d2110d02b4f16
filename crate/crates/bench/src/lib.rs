//! Fixtures shared by the benchmarks.

use tropgrass::fan::tgr2_fan_builder;
use tropgrass::{FanData, Matroid, WeightVector};

/// Indicator weight of the six lines of the intro configuration on `U(3,7)`.
pub fn intro_weight() -> WeightVector {
    WeightVector::indicator(3, 7, &["124", "135", "167", "236", "257", "347"]).expect("valid labels")
}

pub fn uniform_37() -> Matroid {
    Matroid::uniform(3, 7)
}

pub fn tgr25() -> FanData {
    tgr2_fan_builder(5).expect("n = 5 is supported")
}
