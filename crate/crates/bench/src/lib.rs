//! Benchmark fixtures for the `ldm-wiretap` crates; see `benches/`.

use ldm_wiretap::{normalize_config, ChannelConfig};

/// All symmetric-eavesdropper configurations with `1 <= n2 < n1 <= max`
/// and `0 <= n_e <= max`.
pub fn sweep_grid(max: u32) -> Vec<ChannelConfig> {
    (2..=max)
        .flat_map(|n1| (1..n1).flat_map(move |n2| (0..=max).map(move |e| normalize_config(n1, n2, e, e))))
        .collect()
}
