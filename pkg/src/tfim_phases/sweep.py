"""Parameter sweeps over (lambda, r, theta) with CSV and SVG output."""

from __future__ import annotations

import concurrent.futures
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import (
    QuadratureError,
    RankDeficientError,
    UnphysicalStateError,
    VisibilityError,
)
from .phases import PhaseRecord, compute_phases

__all__ = [
    "SweepConfig",
    "SweepRecord",
    "run_sweep",
    "emit_csv",
    "read_csv",
    "emit_svg",
    "preset",
    "CSV_HEADER",
]

KINDS = ("interferometric", "uhlmann")

CSV_HEADER = (
    "lambda,r,theta,gamma_int_2site,gamma_int_1site,delta_gamma,"
    "delta_gamma_unwrapped,gamma_u_2site,gamma_u_1site,delta_gamma_u,"
    "delta_gamma_u_unwrapped,steps,quad_tol,status"
)


@dataclass(frozen=True)
class SweepConfig:
    lambda_min: float = 1e-6
    lambda_max: float = 2.0
    lambda_steps: int = 20
    r_list: tuple = (1,)
    theta_list: tuple = (np.pi / 3,)
    kinds: tuple = KINDS
    loop_steps: int = 2000
    quad_tol: float = 1e-10
    rank_eps: float = 1e-8
    unwrap: bool = True
    output_path: str = ""

    def __post_init__(self):
        if self.lambda_min < 0:
            raise ValueError(f"lambda_min must be >= 0, got {self.lambda_min}")
        if self.lambda_max < self.lambda_min:
            raise ValueError("lambda_max must be >= lambda_min")
        if self.lambda_steps < 1:
            raise ValueError(f"lambda_steps must be >= 1, got {self.lambda_steps}")
        if not self.r_list or any(r < 1 for r in self.r_list):
            raise ValueError("r_list must be non-empty with positive entries")
        if not self.theta_list:
            raise ValueError("theta_list must be non-empty")
        if not self.kinds or any(k not in KINDS for k in self.kinds):
            raise ValueError(f"kinds must be a non-empty subset of {KINDS}")

    def lambda_grid(self):
        return np.linspace(self.lambda_min, self.lambda_max, self.lambda_steps)


@dataclass
class SweepRecord:
    """One grid point: coordinates, phases, unwrapped deviations, status."""

    lam: float
    r: int
    theta: float
    record: PhaseRecord = field(default_factory=PhaseRecord)
    status: str = "ok"
    delta_gamma_unwrapped: float | None = None
    delta_gamma_u_unwrapped: float | None = None


def _evaluate_point(args):
    lam, r, theta, kinds, loop_steps, quad_tol, rank_eps = args
    try:
        rec = compute_phases(
            lam, r, theta, kinds=kinds, loop_steps=loop_steps,
            quad_tol=quad_tol, rank_eps=rank_eps,
        )
        return rec, "ok"
    except RankDeficientError:
        return PhaseRecord(), "rank_deficient"
    except VisibilityError:
        return PhaseRecord(), "vanishing_visibility"
    except QuadratureError:
        return PhaseRecord(), "quadrature_failure"
    except UnphysicalStateError:
        return PhaseRecord(), "unphysical_state"


def _unwrap_family(records, attr, target):
    """Unwrap one deviation column along lambda within a (theta, r) family."""
    values = [getattr(rec.record, attr) for rec in records]
    defined = [i for i, v in enumerate(values) if v is not None]
    if defined:
        unwrapped = np.unwrap([values[i] for i in defined])
        for i, v in zip(defined, unwrapped):
            setattr(records[i], target, float(v))


def run_sweep(config: SweepConfig, workers: int = 1):
    """Evaluate every grid point; failures become status rows, not aborts.

    Output is ordered by (theta, r, lambda) ascending and is independent of
    the worker count.
    """
    grid = [
        (float(lam), int(r), float(theta))
        for theta in sorted(config.theta_list)
        for r in sorted(config.r_list)
        for lam in config.lambda_grid()
    ]
    tasks = [
        (lam, r, theta, tuple(config.kinds), config.loop_steps,
         config.quad_tol, config.rank_eps)
        for lam, r, theta in grid
    ]
    if workers > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_evaluate_point, tasks, chunksize=4))
    else:
        results = [_evaluate_point(t) for t in tasks]

    records = [
        SweepRecord(lam=lam, r=r, theta=theta, record=rec, status=status)
        for (lam, r, theta), (rec, status) in zip(grid, results)
    ]

    for theta in sorted(config.theta_list):
        for r in sorted(config.r_list):
            family = [x for x in records if x.r == r and x.theta == float(theta)]
            if config.unwrap:
                _unwrap_family(family, "delta_gamma", "delta_gamma_unwrapped")
                _unwrap_family(family, "delta_gamma_u", "delta_gamma_u_unwrapped")
            else:
                for x in family:
                    x.delta_gamma_unwrapped = x.record.delta_gamma
                    x.delta_gamma_u_unwrapped = x.record.delta_gamma_u
    return records


# ---------------------------------------------------------------------------
# CSV
# ---------------------------------------------------------------------------

def _fmt(x):
    return "" if x is None else format(x, ".12g")


def _row_fields(rec: SweepRecord):
    r = rec.record
    return [
        _fmt(rec.lam),
        str(rec.r),
        _fmt(rec.theta),
        _fmt(r.gamma_int_pair),
        _fmt(r.gamma_int_single),
        _fmt(r.delta_gamma),
        _fmt(rec.delta_gamma_unwrapped),
        _fmt(r.gamma_u_pair),
        _fmt(r.gamma_u_single),
        _fmt(r.delta_gamma_u),
        _fmt(rec.delta_gamma_u_unwrapped),
        str(r.steps_used),
        "",
        rec.status,
    ]


def emit_csv(records, path, quad_tol=1e-10):
    """Write records in grid order; floats carry 12 significant digits."""
    lines = [CSV_HEADER]
    for rec in records:
        fields = _row_fields(rec)
        fields[12] = _fmt(quad_tol)
        lines.append(",".join(fields))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def _parse(s):
    return None if s == "" else float(s)


def read_csv(path):
    """Parse a sweep CSV back into records (inverse of emit_csv)."""
    with open(path) as fh:
        lines = [ln.rstrip("\n") for ln in fh if ln.strip()]
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError(f"unexpected header in {path}")
    records = []
    quad_tol = 1e-10
    for ln in lines[1:]:
        f = ln.split(",")
        if len(f) != 14:
            raise ValueError(f"expected 14 fields, got {len(f)}: {ln!r}")
        rec = PhaseRecord(
            gamma_int_pair=_parse(f[3]),
            gamma_int_single=_parse(f[4]),
            delta_gamma=_parse(f[5]),
            gamma_u_pair=_parse(f[7]),
            gamma_u_single=_parse(f[8]),
            delta_gamma_u=_parse(f[9]),
            steps_used=int(f[11]),
            convergence_estimate=0.0,
        )
        quad_tol = float(f[12]) if f[12] else quad_tol
        records.append(SweepRecord(
            lam=float(f[0]), r=int(f[1]), theta=float(f[2]), record=rec,
            status=f[13],
            delta_gamma_unwrapped=_parse(f[6]),
            delta_gamma_u_unwrapped=_parse(f[10]),
        ))
    return records, quad_tol


# ---------------------------------------------------------------------------
# SVG
# ---------------------------------------------------------------------------

_Y_COLUMNS = {
    "gamma_int_2site": lambda x: x.record.gamma_int_pair,
    "gamma_int_1site": lambda x: x.record.gamma_int_single,
    "delta_gamma": lambda x: x.record.delta_gamma,
    "delta_gamma_unwrapped": lambda x: x.delta_gamma_unwrapped,
    "gamma_u_2site": lambda x: x.record.gamma_u_pair,
    "gamma_u_1site": lambda x: x.record.gamma_u_single,
    "delta_gamma_u": lambda x: x.record.delta_gamma_u,
    "delta_gamma_u_unwrapped": lambda x: x.delta_gamma_u_unwrapped,
}

_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
            "#17becf", "#7f7f7f")


def emit_svg(records, path, y_column="delta_gamma_unwrapped"):
    """Render one polyline per (r, theta) family as a standalone SVG."""
    if y_column not in _Y_COLUMNS:
        raise ValueError(f"unknown y_column {y_column!r}; choose from {sorted(_Y_COLUMNS)}")
    getter = _Y_COLUMNS[y_column]

    families = {}
    for rec in records:
        y = getter(rec)
        if y is not None:
            families.setdefault((rec.r, rec.theta), []).append((rec.lam, y))
    if not families:
        raise ValueError(f"no records carry a value for {y_column!r}")

    xs = [x for pts in families.values() for x, _ in pts]
    ys = [y for pts in families.values() for _, y in pts]
    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = min(ys), max(ys)
    if x_hi == x_lo:
        x_lo, x_hi = x_lo - 0.5, x_hi + 0.5
    if y_hi == y_lo:
        y_lo, y_hi = y_lo - 0.5, y_hi + 0.5

    width, height = 800, 560
    ml, mr, mt, mb = 70, 170, 20, 50

    def sx(x):
        return ml + (x - x_lo) / (x_hi - x_lo) * (width - ml - mr)

    def sy(y):
        return height - mb - (y - y_lo) / (y_hi - y_lo) * (height - mt - mb)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{ml}" y1="{height - mb}" x2="{width - mr}" y2="{height - mb}" stroke="black"/>',
        f'<line x1="{ml}" y1="{mt}" x2="{ml}" y2="{height - mb}" stroke="black"/>',
    ]
    for t in np.linspace(x_lo, x_hi, 5):
        parts.append(
            f'<text x="{sx(t):.1f}" y="{height - mb + 18:.1f}" font-size="11" '
            f'text-anchor="middle">{t:.3g}</text>'
        )
    for t in np.linspace(y_lo, y_hi, 5):
        parts.append(
            f'<text x="{ml - 6}" y="{sy(t) + 4:.1f}" font-size="11" '
            f'text-anchor="end">{t:.3g}</text>'
        )
    parts.append(
        f'<text x="{(ml + width - mr) / 2:.1f}" y="{height - 10}" font-size="13" '
        f'text-anchor="middle">lambda</text>'
    )
    parts.append(
        f'<text x="16" y="{(mt + height - mb) / 2:.1f}" font-size="13" '
        f'text-anchor="middle" transform="rotate(-90 16 {(mt + height - mb) / 2:.1f})">'
        f'{y_column}</text>'
    )

    for idx, key in enumerate(sorted(families)):
        r, theta = key
        color = _PALETTE[idx % len(_PALETTE)]
        pts = sorted(families[key])
        if len(pts) == 1:
            x, y = pts[0]
            parts.append(f'<circle cx="{sx(x):.2f}" cy="{sy(y):.2f}" r="4" fill="{color}"/>')
        else:
            coords = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in pts)
            parts.append(
                f'<polyline points="{coords}" fill="none" stroke="{color}" stroke-width="1.5"/>'
            )
        ly = mt + 18 + 18 * idx
        parts.append(
            f'<line x1="{width - mr + 12}" y1="{ly - 4}" x2="{width - mr + 36}" '
            f'y2="{ly - 4}" stroke="{color}" stroke-width="2"/>'
        )
        parts.append(
            f'<text x="{width - mr + 42}" y="{ly}" font-size="12">r={r}, '
            f'theta={theta:.4g}</text>'
        )
    parts.append("</svg>")
    with open(path, "w") as fh:
        fh.write("\n".join(parts) + "\n")


# ---------------------------------------------------------------------------
# presets
# ---------------------------------------------------------------------------

_PRESETS = {
    # r sets and lambda ranges below are package choices: the interferometric
    # deviation is swept over the whole coupling window for several
    # separations; the transport-phase sweep starts at the smallest coupling
    # that keeps the two-site state full rank at the default rank_eps; the
    # critical-window sweep carries both kinds on a dense grid.
    "fig1": SweepConfig(
        lambda_min=0.1, lambda_max=2.0, lambda_steps=39,
        r_list=(1, 2, 5, 10), theta_list=(np.pi / 3,),
        kinds=("interferometric",),
    ),
    "fig2": SweepConfig(
        lambda_min=0.05, lambda_max=2.0, lambda_steps=40,
        r_list=(1, 10), theta_list=(np.pi / 12, np.pi / 4, np.pi / 3),
        kinds=("uhlmann",),
    ),
    "fig3": SweepConfig(
        lambda_min=0.8, lambda_max=1.2, lambda_steps=41,
        r_list=(1, 2), theta_list=(np.pi / 3,),
        kinds=("interferometric", "uhlmann"),
    ),
}


def preset(name: str) -> SweepConfig:
    """Named sweep configurations reproducing the qualitative result figures."""
    try:
        base = _PRESETS[name]
    except KeyError:
        raise ValueError(f"unknown preset {name!r}; choose from {sorted(_PRESETS)}") from None
    return replace(base)
