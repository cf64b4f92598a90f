"""Interferometric phase deviation across the critical point.

Sweeps delta_gamma = gamma(two-site) - 2*gamma(single-site) over the
coupling for several separations at theta = pi/3, writes CSV + SVG, and
prints the suppression/growth summary.

Run:  python demos/02_interferometric_deviation.py
"""

import os

import numpy as np

from tfim_phases import (
    interferometric_phase,
    single_site_phase_closed,
    single_site_state,
)
from tfim_phases.sweep import emit_csv, emit_svg, preset, run_sweep

OUT = os.path.join(os.path.dirname(__file__), "out")
os.makedirs(OUT, exist_ok=True)

print("Single-site phase: spectral formula vs closed form (mod pi)")
for m, theta in [(0.6, 0.5), (0.9, 1.2), (0.4, 2.0)]:
    spectral = interferometric_phase(single_site_state(m).matrix, theta)
    closed = single_site_phase_closed(m, theta)
    print(f"  m={m} theta={theta}: spectral={spectral:+.6f} closed={closed:+.6f} "
          f"(difference is a multiple of pi: {(spectral - closed) / np.pi:+.3f} pi)")

print()
print("Running the interferometric sweep preset (theta = pi/3, r = 1, 2, 5, 10)")
config = preset("fig1")
records = run_sweep(config)
csv_path = os.path.join(OUT, "interferometric_deviation.csv")
svg_path = os.path.join(OUT, "interferometric_deviation.svg")
emit_csv(records, csv_path, quad_tol=config.quad_tol)
emit_svg(records, svg_path, y_column="delta_gamma_unwrapped")
print(f"  wrote {csv_path}")
print(f"  wrote {svg_path}")

print()
print("delta_gamma by coupling and separation:")
print(f"  {'lam':>5} " + " ".join(f"r={r:<8d}" for r in config.r_list))
for lam in (0.3, 0.5, 0.8, 1.0, 1.2, 1.5, 2.0):
    row = []
    for r in config.r_list:
        rec = min((x for x in records if x.r == r), key=lambda x: abs(x.lam - lam))
        row.append(f"{rec.record.delta_gamma:+.6f}")
    print(f"  {lam:5.2f} " + " ".join(f"{v:>10}" for v in row))
print()
print("Below the transition the deviation is suppressed (faster for larger r);")
print("above it the curves grow and collapse onto each other.")
