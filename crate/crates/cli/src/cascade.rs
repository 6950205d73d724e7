//! Component counts of the single-interferometer OAM sorter versus a cascade
//! of two-way Mach-Zehnder sorters.

use serde::Serialize;

/// Components of the `d`-path sorter with Dove prisms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SorterCounts {
    pub interferometers: usize,
    pub dove_prisms: usize,
    pub fourier_gates: usize,
    /// Upper bound of the beamsplitter mesh compiled for each Fourier gate.
    pub beamsplitters_per_fourier_gate: usize,
}

/// Components of the binary cascade; only defined for `d = 2^k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CascadeCounts {
    pub mach_zehnders: usize,
    pub dove_prisms: usize,
    pub holograms: usize,
    pub stages: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CascadeComparison {
    pub d: usize,
    pub sorter: SorterCounts,
    /// `None` when `d` is not a power of two.
    pub cascade: Option<CascadeCounts>,
}

pub fn compare_cascade(d: usize) -> CascadeComparison {
    let sorter = SorterCounts {
        interferometers: 1,
        dove_prisms: d,
        fourier_gates: 2,
        beamsplitters_per_fourier_gate: d * d.saturating_sub(1) / 2,
    };
    let cascade = (d >= 2 && d.is_power_of_two()).then(|| CascadeCounts {
        mach_zehnders: d - 1,
        dove_prisms: 2 * (d - 1),
        holograms: d / 2 - 1,
        stages: d.trailing_zeros(),
    });
    CascadeComparison { d, sorter, cascade }
}

impl CascadeComparison {
    /// Human-readable summary printed by `compare-cascade`.
    pub fn summary(&self) -> String {
        let s = &self.sorter;
        let mut out = format!(
            "d = {}\nsorter: {} interferometer, {} Dove prisms, {} Fourier gates of <= {} beamsplitters each\n",
            self.d, s.interferometers, s.dove_prisms, s.fourier_gates, s.beamsplitters_per_fourier_gate
        );
        match &self.cascade {
            Some(c) => out.push_str(&format!(
                "cascade: {} MZIs, {} Dove prisms, {} holograms ({} stages)\n",
                c.mach_zehnders, c.dove_prisms, c.holograms, c.stages
            )),
            None => out.push_str("cascade: not applicable (d not a power of 2)\n"),
        }
        out
    }
}
