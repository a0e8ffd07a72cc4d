"""Composition layer: bound reports, FEM verification records, and sweeps.

Builds the JSON-ready payloads behind the four user-facing operations
(analyze, verify, paper-table, sweep).  Key sets are fixed per operation and
documented in docs/output-schemas.md; golden tests pin them.  The reference
domain is always the unit disc, so lambda_ref = j_{0,1}^2.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor

from . import analysis, bounds
from .errors import InvalidParameterError
from .fem import principal_eigenvalue
from .maps import Ellipse, Epicycloid, Identity, MapFamily, RosePetal, family_name, family_params

DEFAULT_RINGS = 64
ROSE_PETAL_RINGS = 96
DEFAULT_TOL = 1e-10

_EPICYCLOID_VACUOUS_NOTE = "hypothesis A+B<1/2 fails"
_GENERIC_VACUOUS_NOTE = "vacuous: K*J_sup >= 1"


def make_family(name: str, a=None, A=None, B=None, n=None) -> MapFamily:
    """Build a map family from CLI/service-style parameters."""
    if name == "identity":
        return Identity()
    if name == "ellipse":
        if a is None:
            raise InvalidParameterError("ellipse requires parameter a")
        return Ellipse(a=float(a))
    if name == "rose-petal":
        if a is None:
            raise InvalidParameterError("rose-petal requires parameter a")
        return RosePetal(a=float(a))
    if name == "epicycloid":
        if A is None or B is None or n is None:
            raise InvalidParameterError("epicycloid requires parameters A, B, n")
        return Epicycloid(A=float(A), B=float(B), n=int(n))
    raise InvalidParameterError(f"unknown family {name!r}")


def worker_count() -> int:
    """Worker cap for concurrent sweep/table rows, from QCSPEC_THREADS."""
    env = os.environ.get("QCSPEC_THREADS")
    if env:
        try:
            count = int(env)
        except ValueError as exc:
            raise InvalidParameterError(f"QCSPEC_THREADS must be an integer, got {env!r}") from exc
        if count < 1:
            raise InvalidParameterError(f"QCSPEC_THREADS must be >= 1, got {count}")
        return count
    return os.cpu_count() or 1


def round_floats(obj, digits: int = 12):
    """Recursively round floats to the given number of significant digits."""
    if isinstance(obj, float):
        return float(f"{obj:.{digits}g}")
    if isinstance(obj, dict):
        return {k: round_floats(v, digits) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [round_floats(v, digits) for v in obj]
    return obj


def _vacuous_note(family: MapFamily) -> str:
    if isinstance(family, Epicycloid):
        return _EPICYCLOID_VACUOUS_NOTE
    return _GENERIC_VACUOUS_NOTE


def _core_bounds(family: MapFamily) -> dict:
    j01 = bounds.bessel_j0_first_zero()
    lambda_ref = j01 * j01
    K = analysis.global_distortion(family)
    j_sup = analysis.jacobian_sup_norm(family, "analytic")
    product = K * j_sup
    qc_lower = bounds.qc_lower_bound(lambda_ref, K, j_sup)
    if product < 1.0:
        gap, note = bounds.growth_gap_bound(lambda_ref, K, j_sup), None
    else:
        gap, note = None, _vacuous_note(family)
    return {
        "lambda_ref": lambda_ref,
        "K": K,
        "J_sup_analytic": j_sup,
        "K_J_sup": product,
        "qc_lower": qc_lower,
        "growth_gap": gap,
        "growth_gap_note": note,
    }


def analyze_report(family: MapFamily, grid: analysis.PolarGrid = analysis.DEFAULT_GRID) -> dict:
    """Full bound report for one family: distortion, sup-norm, areas, bounds."""
    core = _core_bounds(family)
    grid = analysis.PolarGrid(*grid)
    area = analysis.image_area(family, grid)
    rho = analysis.analytic_inradius(family)
    if rho is None:
        rho, rho_method = analysis.inradius_estimate(family), "grid"
    else:
        rho_method = "analytic"
    max_mod = analysis.boundary_max_modulus(family)
    report = {
        "family": family_name(family),
        "params": family_params(family),
        **core,
        "J_sup_grid": analysis.jacobian_sup_norm(family, "grid", grid),
        "image_area": area,
        "faber_krahn": bounds.faber_krahn_bound(area),
        "inradius": rho,
        "inradius_method": rho_method,
        "makai": bounds.makai_bound(rho),
        "hersch": bounds.hersch_bound(rho) if analysis.is_convex_image(family) else None,
        "sobolev_A22_upper": math.sqrt(core["K_J_sup"]) * bounds.a22_from_lambda(core["lambda_ref"]),
        "max_boundary_modulus": max_mod,
        "image_in_reference": bool(max_mod <= 1.0 + 1e-12),
        "grid": {"radial": grid.radial, "angular": grid.angular},
    }
    return report


def verify_report(family: MapFamily, rings: int = DEFAULT_RINGS, tol: float = DEFAULT_TOL) -> dict:
    """Run the FEM reference solve and check the theorem inequalities.

    ``ok`` is true iff the FEM eigenvalue clears the ratio bound and, when the
    gap hypothesis K ||J|| < 1 holds, the FEM gap clears the gap bound.
    """
    core = _core_bounds(family)
    pe = principal_eigenvalue(family, rings=rings, tol=tol)
    margin = pe.lam - core["qc_lower"]
    gap_bound = core["growth_gap"]
    gap_margin = None if gap_bound is None else (pe.lam - core["lambda_ref"]) - gap_bound
    ok = margin >= 0 and (gap_margin is None or gap_margin >= 0)
    return {
        "family": family_name(family),
        "params": family_params(family),
        "rings": rings,
        "tol": tol,
        "lambda_ref": core["lambda_ref"],
        "K": core["K"],
        "K_J_sup": core["K_J_sup"],
        "qc_lower": core["qc_lower"],
        "fem_lambda": pe.lam,
        "margin": margin,
        "gap_bound": gap_bound,
        "gap_margin": gap_margin,
        "residual": pe.eig.residual,
        "iterations": pe.eig.iterations,
        "ok": ok,
    }


_TABLE_ROW_KEYS = (
    "section",
    "family",
    "a",
    "A",
    "B",
    "n",
    "K",
    "K_J_sup",
    "qc_lower",
    "hersch",
    "qc_wins",
    "gap_bound",
    "fem_lambda",
    "fem_gap",
    "margin",
    "gap_margin",
    "status",
    "note",
)


def _blank_row(section: str) -> dict:
    row = dict.fromkeys(_TABLE_ROW_KEYS)
    row["section"] = section
    row["status"] = "ok"
    return row


def _table_row(section: str, family: MapFamily, rings: int, tol: float) -> dict:
    row = _blank_row(section)
    row["family"] = family_name(family)
    row.update(family_params(family))
    core = _core_bounds(family)
    row["K"] = core["K"]
    row["K_J_sup"] = core["K_J_sup"]
    row["qc_lower"] = core["qc_lower"]
    row["gap_bound"] = core["growth_gap"]
    if core["growth_gap_note"]:
        row["note"] = core["growth_gap_note"]
    if isinstance(family, (Identity, Ellipse)):
        comparison = bounds.ellipse_vs_hersch(family.a if isinstance(family, Ellipse) else 0.0)
        row["hersch"] = comparison.hersch
        row["qc_wins"] = comparison.qc_wins
    pe = principal_eigenvalue(family, rings=rings, tol=tol)
    row["fem_lambda"] = pe.lam
    row["fem_gap"] = pe.lam - core["lambda_ref"]
    row["margin"] = pe.lam - core["qc_lower"]
    if core["growth_gap"] is not None:
        row["gap_margin"] = row["fem_gap"] - core["growth_gap"]
    return row


def paper_table(
    rings: int = DEFAULT_RINGS,
    rose_petal_rings: int = ROSE_PETAL_RINGS,
    tol: float = DEFAULT_TOL,
) -> dict:
    """Reproduce every worked example in one table.

    Sections: the ellipse bound against Hersch (including the computed
    crossover parameter), the rose-petal gap bound, and the epicycloid gap
    bound with its failure rows rendered rather than raised.
    """
    a_star = bounds.crossover_vs_hersch()
    jobs: list[tuple[str, dict, int]] = []
    for a in (0.0, 1.0 / 16.0, 0.125, a_star, 0.3):
        jobs.append(("ellipse-vs-hersch", {"family": Ellipse(a=a)}, rings))
    for a in (0.5, 0.7, 0.9):
        jobs.append(("rose-petal-gap", {"family": RosePetal(a=a)}, rose_petal_rings))
    for A, B, n in ((0.2, 0.05, 3), (0.2, 0.2, 3), (0.15, 0.05, 5)):
        jobs.append(("epicycloid-gap", {"A": A, "B": B, "n": n}, rings))

    def run(job) -> dict:
        section, spec, job_rings = job
        if "family" in spec:
            return _table_row(section, spec["family"], job_rings, tol)
        try:
            family = Epicycloid(A=spec["A"], B=spec["B"], n=spec["n"])
        except InvalidParameterError as exc:
            row = _blank_row(section)
            row["family"] = "epicycloid"
            row.update(spec)
            row["status"] = "error"
            row["note"] = str(exc)
            return row
        return _table_row(section, family, job_rings, tol)

    with ThreadPoolExecutor(max_workers=worker_count()) as pool:
        rows = list(pool.map(run, jobs))
    return {
        "rings": rings,
        "rose_petal_rings": rose_petal_rings,
        "tol": tol,
        "crossover_a": a_star,
        "rows": rows,
    }


SWEEP_COLUMNS = (
    "parameter",
    "K",
    "J_sup",
    "qc_lower",
    "faber_krahn",
    "makai",
    "hersch",
    "qc_minus_hersch",
    "fem_lambda",
    "fem_margin",
    "gap_bound",
    "gap_margin",
)


def sweep_values(start: float, stop: float, step: float) -> list[float]:
    if not (math.isfinite(start) and math.isfinite(stop) and math.isfinite(step)) or step <= 0:
        raise InvalidParameterError(f"invalid sweep range [{start}, {stop}] step {step}")
    values = []
    k = 0
    while True:
        v = start + k * step
        if v > stop + 1e-12 * max(1.0, abs(stop)):
            break
        values.append(v)
        k += 1
    if len(values) < 2:
        raise InvalidParameterError("sweep range must contain at least 2 samples")
    return values


def sweep(
    family_name_str: str,
    param: str,
    start: float,
    stop: float,
    step: float,
    with_fem: bool = False,
    rings: int = DEFAULT_RINGS,
    tol: float = DEFAULT_TOL,
    base_params: dict | None = None,
) -> dict:
    """One bound report row per swept parameter value, in parameter order.

    FEM columns stay null unless ``with_fem`` is set (the solver dominates
    runtime).  Rows are computed concurrently but emitted in order.
    """
    base = dict(base_params or {})
    values = sweep_values(start, stop, step)
    families = []
    for v in values:
        params = dict(base)
        params[param] = v
        families.append(make_family(family_name_str, **params))

    def run(pair) -> dict:
        value, family = pair
        core = _core_bounds(family)
        rho = analysis.analytic_inradius(family)
        if rho is None:
            rho = analysis.inradius_estimate(family)
        convex = analysis.is_convex_image(family)
        hersch = bounds.hersch_bound(rho) if convex else None
        area = analysis.image_area(family)
        row = {
            "parameter": value,
            "K": core["K"],
            "J_sup": core["J_sup_analytic"],
            "qc_lower": core["qc_lower"],
            "faber_krahn": bounds.faber_krahn_bound(area),
            "makai": bounds.makai_bound(rho),
            "hersch": hersch,
            "qc_minus_hersch": None if hersch is None else core["qc_lower"] - hersch,
            "fem_lambda": None,
            "fem_margin": None,
            "gap_bound": core["growth_gap"],
            "gap_margin": None,
        }
        if with_fem:
            pe = principal_eigenvalue(family, rings=rings, tol=tol)
            row["fem_lambda"] = pe.lam
            row["fem_margin"] = pe.lam - core["qc_lower"]
            if core["growth_gap"] is not None:
                row["gap_margin"] = (pe.lam - core["lambda_ref"]) - core["growth_gap"]
        return row

    with ThreadPoolExecutor(max_workers=worker_count()) as pool:
        rows = list(pool.map(run, zip(values, families)))
    return {
        "family": family_name_str,
        "param": param,
        "with_fem": with_fem,
        "rings": rings,
        "columns": list(SWEEP_COLUMNS),
        "rows": rows,
    }
