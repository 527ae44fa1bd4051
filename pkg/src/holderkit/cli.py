"""Command-line front end.

Every command prints (or writes to ``--out``) one JSON document::

    {"command", "params", "certificates", "outputs", "results"}

Plot-ready CSV files go next to the JSON file, named ``<stem>.<what>.csv``.
Exit status is 0 on success, 2 if any certificate fails and 1 on bad input
or usage.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import asdict, dataclass, field
from importlib import resources
from pathlib import Path
from typing import Sequence

import numpy as np

from . import io
from .certificates import BoundCertificate
from .errors import DomainError, HolderkitError, InputError, NoGoodPointsError
from .extension import AUTO, extend, random_competitor, verify_sandwich
from .inf_convolution import (a_l, b_l, error_certificate, restricted_range_check,
                              truncation_certificates, truncation_decomposition)
from .lacunary import (Grid1D, LacunarySpec, coefficient_bound_certificate, evaluate,
                       lip_alpha_bracket, recover_all, zygmund_seminorm)
from .lip_analysis import SampledFunction, lip_norm, lip_seminorm, maximal_function
from .metric_core import FiniteMetricSpace, check_alpha, snowflake, validate_metric
from .smoothing import (MeasureWeights, approximation_certificate, build_kernel,
                        doubling_constant, kernel_lipschitz_certificate,
                        lipschitz_improvement_certificate, smooth)

EXIT_OK, EXIT_USAGE, EXIT_CERT_FAILED = 0, 1, 2

COMMANDS = ("validate-metric", "snowflake", "lip-norm", "extend", "regularize",
            "decompose", "smooth", "doubling", "lacunary-eval", "lip-bracket",
            "zygmund", "recover-coeffs", "report")

DEMO_ALPHA = 0.5
DEMO_L = (1.0, 2.0, 4.0)
DEMO_T = (0.5, 0.25)


@dataclass
class RunConfig:
    command: str
    metric: str | None = None
    points: str | None = None
    values: str | None = None
    measure: str | None = None
    subset: str | None = None
    spec: str | None = None
    out: str | None = None
    alpha: float | None = None
    lip_const: list = field(default_factory=list)
    t: list = field(default_factory=list)
    tolerance: float | None = None
    seed: int = 0
    samples: int = 10
    grid_points: int | None = None
    grid_span: float | None = None
    demo: bool = False


class _Run:
    """Accumulates one command's certificates, outputs and results."""

    def __init__(self, config: RunConfig):
        self.config = config
        self.certificates: list[BoundCertificate] = []
        self.outputs: dict[str, str] = {}
        self.results: dict = {}

    def cert(self, c: BoundCertificate):
        self.certificates.append(c)
        return c

    def csv(self, what, columns):
        if self.config.out is None:
            return
        out = Path(self.config.out)
        path = out.with_name(f"{out.stem}.{what}.csv")
        io.write_csv(path, columns)
        self.outputs[what] = str(path)

    def document(self) -> dict:
        params = {k: v for k, v in asdict(self.config).items()
                  if k not in ("command", "out") and v not in (None, [], False)}
        return {
            "command": self.config.command,
            "params": params,
            "certificates": [c.to_record() for c in self.certificates],
            "outputs": dict(self.outputs),
            "results": self.results,
        }


# -- input helpers -----------------------------------------------------------

def _demo_path(name):
    return str(resources.files("holderkit") / "data" / name)


def _require(value, flag):
    if value is None:
        raise InputError(f"{flag} is required for this command")
    return value


def _load_space(cfg: RunConfig) -> FiniteMetricSpace:
    if cfg.metric and cfg.points:
        raise InputError("give either --metric or --points, not both")
    if cfg.metric:
        return FiniteMetricSpace(io.read_matrix_csv(cfg.metric))
    if cfg.points:
        return FiniteMetricSpace.from_points(io.read_points_csv(cfg.points))
    raise InputError("a space is required: pass --metric or --points")


def _load_values(cfg: RunConfig, space, n=None):
    vals = io.read_values_csv(_require(cfg.values, "--values"))
    n = space.n if n is None else n
    if vals.shape[0] != n:
        raise InputError(f"expected {n} values, found {vals.shape[0]}", cfg.values)
    return vals


def _load_function(cfg, space) -> SampledFunction:
    return SampledFunction(space, _load_values(cfg, space))


def _load_measure(cfg, space) -> MeasureWeights:
    if cfg.measure is None:
        return MeasureWeights.uniform(space.n)
    m = io.read_measure_csv(cfg.measure)
    if m.shape[0] != space.n:
        raise InputError(f"expected {space.n} masses, found {m.shape[0]}", cfg.measure)
    return MeasureWeights(m)


def _load_spec(cfg) -> LacunarySpec:
    path = _require(cfg.spec, "--spec")
    spec = LacunarySpec.from_json(io.read_spec_json(path), path)
    if cfg.alpha is not None and check_alpha(cfg.alpha) != spec.alpha:
        raise DomainError(f"--alpha {cfg.alpha} disagrees with the --spec file ({spec.alpha})")
    return spec


def _grid(cfg) -> Grid1D | None:
    if cfg.grid_points is None and cfg.grid_span is None:
        return None
    return Grid1D.periodic(cfg.grid_points or (1 << 14), cfg.grid_span or 2.0 * math.pi)


def _single(values, flag, default=None):
    if not values:
        if default is None:
            raise InputError(f"{flag} is required for this command")
        return default
    if len(values) != 1:
        raise InputError(f"{flag} takes a single value for this command")
    return values[0]


def _alpha(cfg, default=1.0) -> float:
    return check_alpha(default if cfg.alpha is None else cfg.alpha)


def _positive(x, flag) -> float:
    if isinstance(x, str):
        raise DomainError(f"{flag} must be a number here, got {x!r}")
    if not (math.isfinite(x) and x > 0):
        raise DomainError(f"{flag} must be positive, got {x}")
    return float(x)


# -- commands ----------------------------------------------------------------

def _metric_cert(d, tolerance):
    violations = validate_metric(d, tolerance)
    cert = BoundCertificate("metric_axioms", float(len(violations)), 0.0,
                            witnesses={"first": list(violations[0]) if violations else None})
    return violations, cert


def cmd_validate_metric(run: _Run):
    cfg = run.config
    if cfg.metric:
        d = io.read_matrix_csv(cfg.metric)
    elif cfg.points:
        d = FiniteMetricSpace.from_points(io.read_points_csv(cfg.points)).dist
    else:
        raise InputError("a space is required: pass --metric or --points")
    violations, cert = _metric_cert(d, cfg.tolerance)
    run.cert(cert)
    run.results = {"n": d.shape[0], "violations": [
        {"kind": v.kind, "indices": list(v.indices), "excess": v.excess} for v in violations]}


def cmd_snowflake(run: _Run):
    cfg = run.config
    space = _load_space(cfg)
    alpha = check_alpha(_require(cfg.alpha, "--alpha"))
    snow = snowflake(space, alpha)
    run.cert(_metric_cert(snow.dist, cfg.tolerance)[1])
    run.csv("snowflake", list(snow.dist.T))
    run.results = {"n": space.n, "alpha": alpha, "max_distance": snow.scale}


def cmd_lip_norm(run: _Run):
    cfg = run.config
    space = _load_space(cfg)
    f = _load_function(cfg, space)
    rep = lip_seminorm(f, _alpha(cfg))
    run.results = {"value": rep.value, "witness_pair": list(rep.witness_pair), "alpha": rep.alpha}
    if space.n >= 2:
        nf = maximal_function(f)
        run.csv("maximal", [np.arange(space.n), nf.values])
        run.results["maximal_max"] = float(nf.values.max())


def cmd_extend(run: _Run):
    cfg = run.config
    space = _load_space(cfg)
    subset = io.read_subset(_require(cfg.subset, "--subset"))
    if len(set(subset)) != len(subset):
        raise InputError("subset lists an index twice", cfg.subset)
    vals = _load_values(cfg, space, len(subset))
    alpha = _alpha(cfg)
    L = _single(cfg.lip_const, "--lip-const", AUTO)
    order = np.argsort(subset)
    res = extend(space, np.asarray(subset)[order], vals[order], alpha, L, cfg.tolerance)
    scale = max(1.0, float(np.max(np.abs(vals))))
    tol = 1e-9 * scale if cfg.tolerance is None else cfg.tolerance
    idx = list(res.subset.indices)
    run.cert(BoundCertificate(
        "extension_agreement",
        float(max(np.max(np.abs(res.upper.values[idx] - res.f_on_subset)),
                  np.max(np.abs(res.lower.values[idx] - res.f_on_subset)))), 0.0))
    for name, g in (("extension_upper_lipschitz", res.upper), ("extension_lower_lipschitz", res.lower)):
        run.cert(BoundCertificate(name, lip_norm(g, alpha), res.L, tol, witnesses={"alpha": alpha}))
    gap = res.lower.values - res.upper.values
    run.cert(BoundCertificate("extension_order", float(gap.max()), 0.0,
                              witnesses={"point": int(np.argmax(gap))}))
    rng = np.random.default_rng(cfg.seed)
    failures = []
    for k in range(cfg.samples):
        h = random_competitor(res, rng, tol)
        check = verify_sandwich(res, h, tol)
        if not check.ok:
            failures.append({"sample": k, "point": check.index})
    run.cert(BoundCertificate("sandwich", float(len(failures)), 0.0,
                              witnesses={"samples": cfg.samples, "failures": failures}))
    run.csv("extension", [np.arange(space.n), res.upper.values, res.lower.values])
    run.results = {"L": res.L, "alpha": alpha, "subset_size": len(idx)}


def _regularize_certs(run, f, L, alpha=None):
    lo, hi = a_l(f, L), b_l(f, L)
    gap = max(float(np.max(lo.out.values - f.values)), float(np.max(f.values - hi.out.values)))
    run.cert(BoundCertificate("regularization_order", gap, 0.0, witnesses={"L": L}))
    run.cert(BoundCertificate("regularization_lipschitz",
                              max(lip_norm(lo.out), lip_norm(hi.out)), L, 1e-9, witnesses={"L": L}))
    if alpha is not None and alpha < 1.0:
        run.cert(error_certificate(f, alpha, L))
        run.cert(restricted_range_check(f, alpha, L))
    return lo, hi


def cmd_regularize(run: _Run):
    cfg = run.config
    space = _load_space(cfg)
    f = _load_function(cfg, space)
    L = _positive(_single(cfg.lip_const, "--lip-const"), "--lip-const")
    alpha = None if cfg.alpha is None else check_alpha(cfg.alpha)
    lo, hi = _regularize_certs(run, f, L, alpha)
    run.csv("regularized", [np.arange(space.n), lo.out.values, hi.out.values,
                            lo.witnesses, hi.witnesses])
    run.results = {"L": L, "max_lower_gap": float(np.max(f.values - lo.out.values)),
                   "max_upper_gap": float(np.max(hi.out.values - f.values))}


def cmd_decompose(run: _Run):
    cfg = run.config
    space = _load_space(cfg)
    f = _load_function(cfg, space)
    L = _positive(_single(cfg.lip_const, "--lip-const"), "--lip-const")
    dec = truncation_decomposition(f, L)
    for c in truncation_certificates(f, dec):
        run.cert(c)
    good = np.zeros(space.n)
    good[list(dec.good_set.indices)] = 1
    run.csv("decomposition", [np.arange(space.n), dec.maximal.values, good,
                              dec.a_lf.values, dec.b_lf.values, dec.dist_to_good.values])
    run.results = {"L": L, "good_set": list(dec.good_set.indices)}


def _kernel_certs(run, f, alpha, kernel, mu):
    norm = np.abs(kernel.phi @ mu.mass - 1.0)
    run.cert(BoundCertificate("kernel_normalization", float(norm.max()), 0.0, 1e-12,
                              witnesses={"t": kernel.t}))
    run.cert(approximation_certificate(f, alpha, kernel, mu))
    cert, k_meas = lipschitz_improvement_certificate(f, alpha, kernel, mu)
    run.cert(cert)
    return k_meas


def cmd_smooth(run: _Run):
    cfg = run.config
    space = _load_space(cfg)
    f = _load_function(cfg, space)
    mu = _load_measure(cfg, space)
    t = _positive(_single(cfg.t, "--t"), "--t")
    alpha = _alpha(cfg)
    kernel = build_kernel(space, mu, t)
    k_meas = _kernel_certs(run, f, alpha, kernel, mu)
    run.cert(kernel_lipschitz_certificate(space, kernel))
    pf = smooth(f, kernel, mu)
    if f.is_complex:
        run.csv("smoothed", [np.arange(space.n), pf.values.real, pf.values.imag])
    else:
        run.csv("smoothed", [np.arange(space.n), pf.values])
    run.results = {"t": t, "alpha": alpha, "measured_constant": k_meas}


def cmd_doubling(run: _Run):
    cfg = run.config
    space = _load_space(cfg)
    rep = doubling_constant(space, _load_measure(cfg, space))
    run.results = {"constant": rep.constant, "witness": rep.witness,
                   "radii_scanned": int(rep.scanned_radii.size)}


def cmd_lacunary_eval(run: _Run):
    spec = _load_spec(run.config)
    grid = _grid(run.config) or Grid1D.periodic(1 << 10)
    x = grid.points
    fx = evaluate(spec, x)
    run.csv("series", [x, fx.real, fx.imag])
    tail = spec.tail
    run.results = {"N": spec.N, "A": spec.A, "alpha": spec.alpha,
                   "tail_bound": {"m": tail.m, "bound": tail.bound},
                   "max_modulus": float(np.max(np.abs(fx)))}


def cmd_lip_bracket(run: _Run):
    spec = _load_spec(run.config)
    res = lip_alpha_bracket(spec, _grid(run.config))
    run.cert(res.certificate)
    run.results = {"lower": res.lower, "upper": res.upper}


def cmd_zygmund(run: _Run):
    spec = _load_spec(run.config)
    est, cert = zygmund_seminorm(spec, _grid(run.config))
    run.cert(cert)
    run.results = {"estimate": est}


def cmd_recover_coeffs(run: _Run):
    spec = _load_spec(run.config)
    reports = recover_all(spec)
    run.results = {"coefficients": [
        {"j": r.j, "estimate": r.estimate, "error": r.error} for r in reports],
        "max_error": max(r.error for r in reports),
        "filter_radius": reports[0].radius, "tail_estimate": reports[0].tail_estimate}
    if spec.alpha < 1.0:
        run.cert(coefficient_bound_certificate(spec))
    run.csv("coefficients", [[r.j for r in reports], [r.estimate.real for r in reports],
                             [r.estimate.imag for r in reports], [r.error for r in reports]])


def report(space, mu, f, alpha, L_list, t_list):
    """Run every regularisation and smoothing certificate over the grids.

    Returns ``(certificates, errors)``; an empty level set for some ``L``
    becomes a ``NO_GOOD_POINTS`` entry in ``errors`` rather than aborting.
    """
    run = _Run(RunConfig("report"))
    errors = []
    alpha = check_alpha(alpha)
    for L in L_list:
        L = _positive(float(L), "L")
        if alpha < 1.0:
            run.cert(error_certificate(f, alpha, L))
            run.cert(restricted_range_check(f, alpha, L))
        try:
            dec = truncation_decomposition(f, L)
        except NoGoodPointsError as exc:
            errors.append({"code": exc.code, "L": L, "message": str(exc)})
            continue
        for c in truncation_certificates(f, dec):
            run.cert(c)
    for t in t_list:
        kernel = build_kernel(space, mu, _positive(float(t), "t"))
        _kernel_certs(run, f, alpha, kernel, mu)
    return run.certificates, errors


def cmd_report(run: _Run):
    cfg = run.config
    if cfg.demo:
        cfg.points = cfg.points or _demo_path("demo_points.csv")
        cfg.values = cfg.values or _demo_path("demo_values.csv")
        cfg.measure = cfg.measure or _demo_path("demo_measure.csv")
        cfg.alpha = DEMO_ALPHA if cfg.alpha is None else cfg.alpha
        cfg.lip_const = cfg.lip_const or list(DEMO_L)
        cfg.t = cfg.t or list(DEMO_T)
    space = _load_space(cfg)
    f = _load_function(cfg, space)
    mu = _load_measure(cfg, space)
    certs, errors = report(space, mu, f, _alpha(cfg), _require(cfg.lip_const or None, "--lip-const"),
                           _require(cfg.t or None, "--t"))
    run.certificates.extend(certs)
    run.results = {"all_pass": all(c.passed for c in certs), "errors": errors}
    if errors:
        run.results["partial"] = True


HANDLERS = {
    "validate-metric": cmd_validate_metric, "snowflake": cmd_snowflake,
    "lip-norm": cmd_lip_norm, "extend": cmd_extend, "regularize": cmd_regularize,
    "decompose": cmd_decompose, "smooth": cmd_smooth, "doubling": cmd_doubling,
    "lacunary-eval": cmd_lacunary_eval, "lip-bracket": cmd_lip_bracket,
    "zygmund": cmd_zygmund, "recover-coeffs": cmd_recover_coeffs, "report": cmd_report,
}


# -- entry points --------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _float_list(text):
    try:
        return [AUTO if v.strip().lower() == AUTO else float(v)
                for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="holderkit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        p = sub.add_parser(name, help=HANDLERS[name].__name__.replace("cmd_", ""))
        p.add_argument("--metric", help="distance-matrix CSV")
        p.add_argument("--points", help="point-list CSV (Euclidean distance)")
        p.add_argument("--values", help="function-values CSV")
        p.add_argument("--measure", help="point-mass CSV (default: uniform)")
        p.add_argument("--subset", help="subset file, one index per line")
        p.add_argument("--spec", help="lacunary spec JSON")
        p.add_argument("--alpha", type=float)
        p.add_argument("--lip-const", type=_float_list, default=[],
                       help="L (comma-separated list for report; 'auto' for extend)")
        p.add_argument("--t", type=_float_list, default=[],
                       help="kernel scale t (comma-separated list for report)")
        p.add_argument("--tolerance", type=float)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--samples", type=int, default=10,
                       help="random competitors checked by extend")
        p.add_argument("--grid-points", type=int)
        p.add_argument("--grid-span", type=float)
        p.add_argument("--out", help="JSON output path; CSVs are written beside it")
        if name == "report":
            p.add_argument("--demo", action="store_true", help="use the bundled demo fixture")
    return parser


def run(config: RunConfig) -> int:
    """Execute one command; returns the process exit status."""
    r = _Run(config)
    try:
        if config.command not in HANDLERS:
            raise InputError(f"unknown command {config.command!r}")
        if config.samples < 0:
            raise DomainError("--samples must be nonnegative")
        HANDLERS[config.command](r)
        text = io.dumps_json(r.document())
        if config.out is None:
            sys.stdout.write(text)
        else:
            Path(config.out).write_text(text)
    except (HolderkitError, OSError) as exc:
        print(f"holderkit {config.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # never crash uncontrolled
        print(f"holderkit {config.command}: internal error: {exc!r}", file=sys.stderr)
        return EXIT_USAGE
    if config.command == "report" and r.results.get("errors"):
        return EXIT_USAGE
    return EXIT_OK if all(c.passed for c in r.certificates) else EXIT_CERT_FAILED


def main(argv: Sequence[str] | None = None) -> int:
    args = vars(build_parser().parse_args(argv))
    args["lip_const"] = args.pop("lip_const")
    return run(RunConfig(**args))


if __name__ == "__main__":
    sys.exit(main())
