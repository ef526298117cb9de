"""Command line front end: ``toric-height run|verify problem.json``.

A problem file looks like::

    {"d": 1, "n": 2,
     "points": [[0], [1], [2]],
     "alpha": ["2", "1", "1"],
     "mode": "exact",
     "mc": {"samples": 100000, "seed": 42},
     "checks": ["mahler"]}

``n`` and ``d`` are optional and checked when present.  A report written by
``run`` can be fed back to ``run``; its embedded problem is used.

Exit codes: 0 success, 1 failed invariant (``verify``), 2 invalid input,
3 internal invariant violation.
"""

import argparse
import json
import sys
import traceback
from datetime import datetime, timezone
from fractions import Fraction

from .engine import canonical_height
from .errors import InvariantViolation, ToricHeightError, ValidationError
from .loglinear import LogLinearNumber, sign_of
from .oracle import mass_probe, run_checks
from .toric import validate_config

SCHEMA = 1
DEFAULTS = {"mode": "exact", "samples": 10**5, "seed": 42, "checks": []}
CHECKS = ("mc", "mahler", "mass")


class ProblemError(ValidationError):
    pass


def _parse_rational(raw):
    if isinstance(raw, bool):
        raise ProblemError(f"malformed rational {raw!r}")
    if isinstance(raw, int):
        return Fraction(raw)
    if not isinstance(raw, str):
        raise ProblemError(f"exact-mode coefficients must be strings 'p/q', got {raw!r}")
    try:
        return Fraction(raw.strip())
    except (ValueError, ZeroDivisionError):
        raise ProblemError(f"malformed rational {raw!r}") from None


def _parse_float_coeff(raw):
    if isinstance(raw, (int, float)) and not isinstance(raw, bool):
        return raw
    if isinstance(raw, str):
        try:
            return Fraction(raw.strip())
        except (ValueError, ZeroDivisionError):
            pass
        for kind in (float, complex):
            try:
                return kind(raw.strip().replace(" ", ""))
            except ValueError:
                pass
    raise ProblemError(f"malformed coefficient {raw!r}")


def parse_problem(data, overrides=None):
    """Validate a problem mapping and return its normalised form."""
    if "problem" in data and "schema" in data:
        data = data["problem"]
    if not isinstance(data, dict):
        raise ProblemError("problem file must hold a JSON object")
    overrides = overrides or {}
    points = data.get("points")
    alpha = data.get("alpha")
    if not isinstance(points, list) or not points:
        raise ProblemError("'points' must be a nonempty list")
    if not all(isinstance(p, list) and all(isinstance(v, int) and not isinstance(v, bool)
                                           for v in p) for p in points):
        raise ProblemError("'points' must be a list of integer vectors")
    if not isinstance(alpha, list):
        raise ProblemError("'alpha' must be a list")
    mode = overrides.get("mode") or data.get("mode", DEFAULTS["mode"])
    if mode not in ("exact", "float"):
        raise ProblemError(f"unknown mode {mode!r}")
    mc = data.get("mc", {}) or {}
    samples = overrides.get("samples") or mc.get("samples", DEFAULTS["samples"])
    seed = overrides.get("seed")
    if seed is None:
        seed = mc.get("seed", DEFAULTS["seed"])
    checks = overrides.get("checks")
    if checks is None:
        checks = data.get("checks", DEFAULTS["checks"])
    unknown = [c for c in checks if c not in CHECKS]
    if unknown:
        raise ProblemError(f"unknown checks {unknown}")
    d = data.get("d", len(points[0]))
    n = data.get("n", len(points) - 1)
    if n != len(points) - 1 or any(len(p) != d for p in points):
        raise ProblemError("'n'/'d' disagree with the shape of 'points'")
    if len(alpha) != n + 1:
        raise ProblemError(f"expected {n + 1} coefficients, got {len(alpha)}")
    parse = _parse_rational if mode == "exact" else _parse_float_coeff
    coeffs = [parse(a) for a in alpha]
    return {"d": d, "n": n, "points": points, "alpha": coeffs, "mode": mode,
            "mc": {"samples": int(samples), "seed": int(seed)},
            "checks": list(checks)}


def _problem_json(problem):
    out = dict(problem)
    out["alpha"] = [str(a) for a in problem["alpha"]]
    return out


def compute(problem, guard=1e-12, smoothing=64.0):
    report = canonical_height(problem["points"], problem["alpha"],
                              mode=problem["mode"], d=problem["d"])
    if problem["checks"]:
        run_checks(report, problem["checks"], problem["mc"]["samples"],
                   problem["mc"]["seed"], guard=guard, smoothing=smoothing)
        for o in report.oracles:
            if o["check"] == "mahler" and not o["pass"]:
                report.findings.append({
                    "kind": "mahler_disagreement",
                    "engine": o["expected"], "oracle": o["estimate"]["value"],
                    "tolerance": o["tolerance"],
                    "message": "hypersurface oracle disagrees; the oracle "
                               "includes finite places, the engine formula "
                               "only its archimedean and prefactor terms"})
    return report


def build_report(problem, report):
    return {"schema": SCHEMA,
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "problem": _problem_json(problem),
            "result": report.to_json()}


def _load(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ProblemError(f"{path}: not valid JSON ({exc})") from None


def _summary(report):
    h = report.height
    lines = [f"points: {report.config.to_json()}",
             f"alpha:  {[str(a) for a in report.alpha]}",
             f"generators: {[str(g) for g in report.generators] or 'none'}",
             f"degree: {report.degree}   chain length: {len(report.chain)}",
             f"height: {h.value}  ~ {float(h.value):.12g}"]
    if h.alpha_basis is not None:
        b = ", ".join(str(v) for v in h.alpha_basis)
        lines.append(f"b = ({b})  integral: {h.integral}")
    cc = report.content_corrected
    if cc is not None and cc != h.value:
        lines.append(f"content-corrected (diagnostic): {cc}  ~ {float(cc):.12g}")
    for o in report.oracles:
        lines.append(f"check {o['check']}: {'pass' if o['pass'] else 'FAIL'}")
    for f in report.findings:
        lines.append(f"finding: {f['kind']}")
    return "\n".join(lines)


def cmd_run(args):
    problem = parse_problem(_load(args.problem), _overrides(args))
    report = compute(problem, args.guard, args.smoothing)
    doc = build_report(problem, report)
    text = json.dumps(doc, indent=2, sort_keys=True)
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(text + "\n")
    if not args.quiet:
        print(_summary(report))
        if not args.report:
            print(text)
    return 0


def _invariants(problem, args):
    """Yield ``(name, passed, detail)`` for the invariant battery."""
    points, alpha = problem["points"], problem["alpha"]
    A = validate_config(points, problem["d"])
    ones = [Fraction(1)] * len(alpha)
    zero = canonical_height(A, ones)
    yield "zero law", zero.value.is_zero(), str(zero.value)
    report = compute(problem, args.guard, args.smoothing)
    terminal = report.chain[-1].next_height if report.chain else report.value
    yield "terminal height", sign_of(terminal) == 0, str(terminal)
    ok = all(ev.measure.total == ev.step.degree for ev in report.chain)
    yield "mass balance", ok, ", ".join(f"{ev.measure.total}/{ev.step.degree}"
                                        for ev in report.chain)
    if isinstance(report.value, LogLinearNumber):
        back = LogLinearNumber.from_json(report.value.to_json())
        yield "value round trip", back == report.value, str(back)
        doubled = canonical_height(A, [a * a for a in alpha])
        yield "homogeneity", doubled.value == report.value * 2, str(doubled.value)
        if report.height.alpha_basis is not None:
            yield "integrality", bool(report.height.integral), \
                str([str(b) for b in report.height.alpha_basis])
    again = compute(parse_problem(_problem_json(problem)), args.guard, args.smoothing)
    same = json.dumps(again.to_json(), sort_keys=True) == \
        json.dumps(report.to_json(), sort_keys=True)
    yield "report round trip", same, ""
    samples = max(problem["mc"]["samples"], 10**4)
    mc = run_checks(report, ("mc",), samples, problem["mc"]["seed"],
                    guard=args.guard)
    yield "mc agreement", all(o["pass"] for o in mc), f"{len(mc)} vertices"
    for ev in report.chain:
        if ev.step.lifted.d <= 3:
            est = mass_probe(ev.step.lifted, alpha, seed=problem["mc"]["seed"],
                             smoothing=args.smoothing)
            yield f"mass probe step {ev.step.index}", \
                abs(est.mean - ev.step.degree) <= 0.1 * ev.step.degree, \
                f"{est.mean:.4f} vs {ev.step.degree}"


def cmd_verify(args):
    problem = parse_problem(_load(args.problem), _overrides(args))
    failed = 0
    for name, passed, detail in _invariants(problem, args):
        failed += not passed
        if not args.quiet:
            print(f"{'PASS' if passed else 'FAIL'}  {name:<22} {detail}")
    return 1 if failed else 0


def _overrides(args):
    checks = None
    if args.checks is not None:
        checks = [c for c in args.checks.split(",") if c]
    return {"mode": args.mode, "samples": args.mc_samples, "seed": args.mc_seed,
            "checks": checks}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="toric-height",
        description="Canonical heights of projective toric varieties.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, func, helptext in (("run", cmd_run, "compute a height report"),
                                 ("verify", cmd_verify, "run the invariant battery")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("problem", help="JSON problem file (or a previous report)")
        p.add_argument("--mode", choices=("exact", "float"))
        p.add_argument("--mc-samples", type=int)
        p.add_argument("--mc-seed", type=int)
        p.add_argument("--checks", help="comma separated subset of mc,mahler,mass")
        p.add_argument("--report", help="write the JSON report here")
        p.add_argument("--quiet", action="store_true")
        p.add_argument("--guard", type=float, default=1e-12,
                       help="singularity guard radius for the polycircle oracle")
        p.add_argument("--smoothing", type=float, default=64.0,
                       help="smoothing exponent of the mass probe")
        p.set_defaults(func=func)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (InvariantViolation, ToricHeightError) as exc:
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except Exception:  # noqa: BLE001 - anything else is an internal failure
        traceback.print_exc()
        return 3


if __name__ == "__main__":
    sys.exit(main())
