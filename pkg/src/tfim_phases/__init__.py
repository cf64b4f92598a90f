"""Geometric phases of reduced states of the transverse-field Ising chain.

Library layout:

* :mod:`tfim_phases.linalg`  -- small dense Hermitian/unitary kernels
* :mod:`tfim_phases.ising`   -- thermodynamic-limit correlators + finite-chain oracle
* :mod:`tfim_phases.states`  -- reduced density matrices and the rotation loop
* :mod:`tfim_phases.phases`  -- interferometric and Uhlmann phases, deviations
* :mod:`tfim_phases.sweep`   -- parameter sweeps, CSV/SVG output, presets
* :mod:`tfim_phases.cli`     -- the ``tfim-phases`` command
"""

from .errors import (
    QuadratureError,
    RankDeficientError,
    UnphysicalStateError,
    VisibilityError,
)
from .ising import (
    Correlators,
    CouplingRatio,
    correlator_xx,
    correlator_yy,
    correlator_zz,
    correlators,
    dispersion,
    exact_diag_correlators,
    ground_energy_density,
    magnetization,
    toeplitz_element,
    toeplitz_table,
)
from .phases import (
    PhaseRecord,
    compute_phases,
    delta_gamma,
    delta_gamma_u,
    interferometric_phase,
    single_site_phase_closed,
    uhlmann_connection,
    uhlmann_holonomy,
    uhlmann_phase,
    wrap_angle,
)
from .states import (
    LoopSpec,
    evolve,
    partial_trace,
    rotation_pair,
    rotation_single,
    single_site_state,
    two_site_state,
)
from .sweep import SweepConfig, emit_csv, emit_svg, preset, read_csv, run_sweep

__version__ = "0.1.0"
