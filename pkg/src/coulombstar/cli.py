"""Command-line interface.

Exit codes are part of the contract:

    0   success (or: certification succeeded, all lemma checks passed)
    1   clean negative (not certified / some lemma check has a gap)
    2   usage or argument parse error
    3   invalid parameters (polar set, gamma pole)
    4   evaluation failure (branch point, near-zero denominator,
        non-converging truncation, domain violation)
    5   winding count mismatch while locating zeros

stdout is byte-deterministic for identical invocations: JSON is emitted with
insertion-ordered keys and every float rendered at 17 significant digits
(non-finite values follow the Infinity / -Infinity / NaN convention).  The
scan subcommand emits CSV instead, with the fixed header
L,eta,slack,min_margin,certified.
"""

from __future__ import annotations

import json
import math
import sys
from dataclasses import dataclass

import click

from .admissibility import constant_checks, extremize
from .analytic import eval_p
from .errors import (
    BranchPoint,
    DomainError,
    InvalidParams,
    NearZeroOfG,
    NoConvergence,
    PoleError,
    WindingMismatch,
)
from .series import (
    DEFAULT_TOL,
    CoulombParams,
    eval_f,
    eval_g,
    eval_g_prime,
    make_coefficients,
)
from .starlike import ScanGrid, StarlikeClass, certify, parameter_scan
from .zeros import find_zeros

LEMMA_GAP_TOL = 1e-8


@dataclass(frozen=True)
class CliConfig:
    """Resolved invocation settings shared by the subcommands."""

    tol: float = DEFAULT_TOL
    trust_radius: float = 10.0
    rings: int = 40
    angles_per_ring: int = 720
    r_max: float = 0.999
    output_format: str = "json"

    def __post_init__(self) -> None:
        if self.tol <= 0:
            raise click.UsageError(f"tolerance must be positive, got {self.tol}")
        if self.output_format not in ("json", "csv"):
            raise click.UsageError(f"unknown output format {self.output_format!r}")


# ---------------------------------------------------------------------------
# deterministic rendering

def _render_float(x: float) -> str:
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    return format(x, ".17g")


def render_json(obj) -> str:
    """Small JSON emitter with fixed float formatting and stable key order."""
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _render_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        inner = ", ".join(f"{json.dumps(str(k))}: {render_json(v)}" for k, v in obj.items())
        return "{" + inner + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(render_json(v) for v in obj) + "]"
    raise TypeError(f"cannot render {type(obj)!r}")


class ComplexParam(click.ParamType):
    """Complex numbers written as a+bi (also plain a, bi, a-bi)."""

    name = "complex"

    def convert(self, value, param, ctx):
        if isinstance(value, complex):
            return value
        text = str(value).strip().replace("i", "j").replace("I", "j")
        try:
            return complex(text)
        except ValueError:
            self.fail(f"{value!r} is not a complex number like a+bi", param, ctx)


COMPLEX = ComplexParam()

_tol_option = click.option(
    "--tol",
    type=float,
    default=DEFAULT_TOL,
    envvar="COULOMB_TOL",
    show_default=True,
    help="Evaluation tolerance (env COULOMB_TOL, flag wins).",
)


def _exit_for(exc: Exception) -> int:
    if isinstance(exc, (InvalidParams, PoleError)):
        return 3
    if isinstance(exc, (NearZeroOfG, BranchPoint, NoConvergence, DomainError)):
        return 4
    if isinstance(exc, WindingMismatch):
        return 5
    raise exc


def _guarded(body) -> None:
    try:
        code = body()
    except click.ClickException:
        raise
    except Exception as exc:  # mapped library failures
        code = _exit_for(exc)
        click.echo(f"error: {exc}", err=True)
    sys.exit(code)


def _complex_dict(w: complex) -> dict:
    return {"re": w.real, "im": w.imag}


@click.group()
def main() -> None:
    """Coulomb wave series evaluation and starlikeness certification."""


@main.command("eval")
@click.option("--L", "L", type=COMPLEX, required=True, help="Order parameter.")
@click.option("--eta", type=COMPLEX, required=True, help="Sommerfeld parameter.")
@click.option("--z", type=COMPLEX, required=True, help="Evaluation point.")
@click.option(
    "--function",
    type=click.Choice(["f", "g", "P"]),
    default="g",
    show_default=True,
    help="f: regular wave function, g: normalized form, P: z g'/g.",
)
@_tol_option
def cmd_eval(L: complex, eta: complex, z: complex, function: str, tol: float) -> None:
    """Evaluate f, g or P at a point and print value plus error bound."""

    def body() -> int:
        config = CliConfig(tol=tol)
        params = CoulombParams(L=L, eta=eta)
        if function == "g":
            result = eval_g(params, z, config.tol)
            value, abs_error = result.value, result.abs_error
        elif function == "f":
            result = eval_f(params, z, config.tol)
            value, abs_error = result.value, result.abs_error
        else:
            ratio = eval_p(params, z, config.tol)
            value = ratio.P
            if z == 0:
                abs_error = 0.0
            else:
                g = eval_g(params, z, config.tol)
                gp = eval_g_prime(params, z, config.tol)
                abs_error = (
                    abs(z) * gp.abs_error + abs(value) * g.abs_error
                ) / abs(g.value)
        click.echo(
            render_json({"value": _complex_dict(value), "abs_error": abs_error})
        )
        return 0

    _guarded(body)


@main.command("coeffs")
@click.option("--L", "L", type=COMPLEX, required=True)
@click.option("--eta", type=COMPLEX, required=True)
@click.option("--order", type=int, default=30, show_default=True)
@click.option("--radius", type=float, default=1.0, show_default=True)
def cmd_coeffs(L: complex, eta: complex, order: int, radius: float) -> None:
    """Print the series coefficient table with its certified tail bound."""

    def body() -> int:
        params = CoulombParams(L=L, eta=eta)
        table = make_coefficients(params, order, radius)
        click.echo(render_json(table.to_jsonable()))
        return 0

    _guarded(body)


@main.command("zeros")
@click.option("--L", "L", type=COMPLEX, required=True)
@click.option("--eta", type=COMPLEX, required=True)
@click.option("--radius", type=float, default=10.0, show_default=True,
              help="Trust radius for the zero search.")
@_tol_option
def cmd_zeros(L: complex, eta: complex, radius: float, tol: float) -> None:
    """List zeros inside the trust radius (winding-count validated)."""

    def body() -> int:
        config = CliConfig(tol=tol, trust_radius=radius)
        params = CoulombParams(L=L, eta=eta)
        zs = find_zeros(params, config.trust_radius, config.tol)
        click.echo(render_json(zs.to_jsonable()))
        return 0

    _guarded(body)


@main.command("certify")
@click.option("--L", "L", type=COMPLEX, required=True)
@click.option("--eta", type=COMPLEX, required=True)
@click.option(
    "--class",
    "flavor",
    type=click.Choice([c.value for c in StarlikeClass]),
    required=True,
)
@click.option("--rings", type=int, default=40, show_default=True)
@click.option("--angles", type=int, default=720, show_default=True)
@click.option("--r-max", type=float, default=0.999, show_default=True)
@_tol_option
def cmd_certify(
    L: complex, eta: complex, flavor: str, rings: int, angles: int,
    r_max: float, tol: float,
) -> None:
    """Scan the disk grid and certify the requested starlikeness flavor."""

    def body() -> int:
        config = CliConfig(tol=tol, rings=rings, angles_per_ring=angles, r_max=r_max)
        params = CoulombParams(L=L, eta=eta)
        grid = ScanGrid.default(config.rings, config.angles_per_ring, config.r_max)
        report = certify(params, StarlikeClass(flavor), grid, config.tol)
        click.echo(render_json(report.to_jsonable()))
        return 0 if report.certified else 1

    _guarded(body)


@main.command("scan")
@click.option("--l-min", "--L-min", "L_min", type=float, required=True)
@click.option("--l-max", "--L-max", "L_max", type=float, required=True)
@click.option("--l-step", "--L-step", "L_step", type=float, required=True)
@click.option("--eta-min", type=float, required=True)
@click.option("--eta-max", type=float, required=True)
@click.option("--eta-step", type=float, required=True)
@click.option(
    "--class",
    "flavor",
    type=click.Choice([c.value for c in StarlikeClass]),
    required=True,
)
@click.option("--rings", type=int, default=40, show_default=True)
@click.option("--angles", type=int, default=720, show_default=True)
@click.option("--r-max", type=float, default=0.999, show_default=True)
@_tol_option
def cmd_scan(
    L_min: float, L_max: float, L_step: float,
    eta_min: float, eta_max: float, eta_step: float,
    flavor: str, rings: int, angles: int, r_max: float, tol: float,
) -> None:
    """Sweep a real parameter rectangle and emit one CSV row per pair."""

    def body() -> int:
        config = CliConfig(
            tol=tol, rings=rings, angles_per_ring=angles, r_max=r_max,
            output_format="csv",
        )
        grid = ScanGrid.default(config.rings, config.angles_per_ring, config.r_max)
        rows = parameter_scan(
            (L_min, L_max, L_step),
            (eta_min, eta_max, eta_step),
            StarlikeClass(flavor),
            grid,
            config.tol,
        )
        lines = ["L,eta,slack,min_margin,certified"]
        for row in rows:
            lines.append(
                ",".join(
                    (
                        _render_float(row.L),
                        _render_float(row.eta),
                        _render_float(row.slack),
                        _render_float(row.min_margin),
                        "true" if row.certified else "false",
                    )
                )
            )
        click.echo("\n".join(lines))
        return 0

    _guarded(body)


@main.command("verify-lemmas")
@click.option(
    "--m",
    "m_list",
    default="1,2,5",
    show_default=True,
    help="Comma-separated list of m values (each >= 1).",
)
def cmd_verify_lemmas(m_list: str) -> None:
    """Recheck the quoted profile extrema and threshold identities.

    Exit 0 only when every located extremum matches its closed form to 1e-8
    and both threshold identities hold.
    """
    try:
        ms = [float(part) for part in m_list.split(",") if part.strip()]
    except ValueError:
        raise click.UsageError(f"cannot parse m list {m_list!r}")
    if not ms:
        raise click.UsageError("m list is empty")
    for m in ms:
        if m < 1:
            raise click.UsageError(f"m must be >= 1, got {m}")

    def body() -> int:
        reports = []
        for m in ms:
            for tag in ("U", "V", "A", "B"):
                reports.append(extremize(tag, m).to_jsonable())
        checks = constant_checks()
        click.echo(render_json({"reports": reports, "constant_checks": checks}))
        all_pass = all(r["abs_gap"] <= LEMMA_GAP_TOL for r in reports) and all(
            c["consistent"] for c in checks
        )
        return 0 if all_pass else 1

    _guarded(body)


if __name__ == "__main__":
    main()
