"""Compare both deviations on a dense grid around the critical point.

Runs the critical-window preset (both phase kinds, theta = pi/3, r = 1, 2),
writes CSV + SVGs, and compares the maximal slopes across the transition.

Run:  python demos/04_critical_comparison.py
"""

import os

import numpy as np

from tfim_phases.sweep import emit_csv, emit_svg, preset, run_sweep

OUT = os.path.join(os.path.dirname(__file__), "out")
os.makedirs(OUT, exist_ok=True)

config = preset("fig3")
print(f"Sweeping lam in [{config.lambda_min}, {config.lambda_max}] "
      f"({config.lambda_steps} points), r in {config.r_list}, both phase kinds")
records = run_sweep(config)

csv_path = os.path.join(OUT, "critical_window.csv")
emit_csv(records, csv_path, quad_tol=config.quad_tol)
print(f"  wrote {csv_path}")
for column in ("delta_gamma_unwrapped", "delta_gamma_u_unwrapped"):
    svg_path = os.path.join(OUT, f"critical_window_{column}.svg")
    emit_svg(records, svg_path, y_column=column)
    print(f"  wrote {svg_path}")

lams = config.lambda_grid()
print()
print(f"  {'r':>3} {'max |d(dg)/dlam|':>18} {'max |d(dgu)/dlam|':>18}")
for r in config.r_list:
    family = [x for x in records if x.r == r]
    dg = np.array([x.delta_gamma_unwrapped for x in family])
    dgu = np.array([x.delta_gamma_u_unwrapped for x in family])
    s_int = np.abs(np.diff(dg) / np.diff(lams)).max()
    s_uhl = np.abs(np.diff(dgu) / np.diff(lams)).max()
    print(f"  {r:3d} {s_int:18.4f} {s_uhl:18.4f}")
print()
print("The transport-phase deviation swings harder across the transition for")
print("these separations; the interferometric one varies smoothly but keeps")
print("sharpening exactly at the critical coupling as the grid refines.")
