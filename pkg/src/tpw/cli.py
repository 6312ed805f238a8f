"""Batch front end: structured job configs in, JSON reports out.

One job per invocation. Reports are deterministic given (config, seed);
the only field excluded from golden comparisons is ``timing_ms``. Every
numeric value in a report is an integer or a "p/q" string.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction

from . import exactlin, halfderiv, tpstruct
from .algebra import (
    spec_from_json,
    spec_to_json,
    element_to_json,
    verify_center,
    verify_lie_axioms,
    verify_square,
)
from .exactlin import scalar_from_str, scalar_to_str
from .lattice import Window, nondegeneracy_witnesses
from .tpstruct import product_from_json, product_to_json

SCHEMA_VERSION = "1"

TASKS = (
    "check-lie",
    "witnesses",
    "center-square",
    "solve-half-derivations",
    "classify-tp",
    "verify-structure",
)


class ConfigError(Exception):
    """A job config failed validation; the message names the field."""


def _require(config, field, kind=None):
    if field not in config:
        raise ConfigError("missing field %r" % field)
    value = config[field]
    if kind is not None and not isinstance(value, kind):
        raise ConfigError("field %r has the wrong type" % field)
    return value


def load_config(data: dict) -> dict:
    """Validate a raw config dict and fill the defaults in."""
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object")
    cfg = dict(data)
    algebra = _require(cfg, "algebra", dict)
    try:
        spec_from_json(algebra)
    except (KeyError, ValueError) as exc:
        raise ConfigError("field 'algebra' is invalid: %s" % exc)
    window = _require(cfg, "window", dict)
    radius = _require(window, "radius", int)
    if radius < 1:
        raise ConfigError("field 'window.radius' must be >= 1")
    margin = window.get("inner_margin")
    if margin is not None and not isinstance(margin, int):
        raise ConfigError("field 'window.inner_margin' has the wrong type")
    try:
        Window(radius, margin)
    except ValueError as exc:
        raise ConfigError("field 'window.inner_margin' is invalid: %s" % exc)
    task = _require(cfg, "task", str)
    if task not in TASKS:
        raise ConfigError("field 'task' must be one of %s" % (", ".join(TASKS)))
    delta = cfg.setdefault("delta", "1/2")
    try:
        if scalar_from_str(delta) == 0:
            raise ConfigError("field 'delta' must be nonzero")
    except ValueError:
        raise ConfigError("field 'delta' is not a valid rational")
    seed = cfg.setdefault("seed", 0)
    if not isinstance(seed, int):
        raise ConfigError("field 'seed' has the wrong type")
    payload = cfg.setdefault("payload", {})
    if not isinstance(payload, dict):
        raise ConfigError("field 'payload' has the wrong type")
    limits = cfg.setdefault("limits", {})
    if not isinstance(limits, dict):
        raise ConfigError("field 'limits' has the wrong type")
    for key in ("max_unknowns", "max_triples"):
        if key in limits and (not isinstance(limits[key], int) or limits[key] <= 0):
            raise ConfigError("field 'limits.%s' must be a positive integer" % key)
    env_limit = os.environ.get("TPW_MAX_UNKNOWNS")
    if env_limit is not None:
        try:
            limits["max_unknowns"] = int(env_limit)
        except ValueError:
            raise ConfigError("TPW_MAX_UNKNOWNS is not an integer")
    return cfg


def _window_of(cfg) -> Window:
    return Window(cfg["window"]["radius"], cfg["window"].get("inner_margin"))


def _task_check_lie(spec, cfg, window):
    report = verify_lie_axioms(spec, window,
                               max_triples=cfg["limits"].get("max_triples"))
    result = {
        "anticommutative": report.anticommutative,
        "jacobi": report.jacobi,
        "n_pairs": report.n_pairs,
        "n_triples": report.n_triples,
    }
    if report.jacobi_witness is not None:
        a, b, c, residual = report.jacobi_witness
        result["jacobi_witness"] = {
            "triple": [_label_json(a), _label_json(b), _label_json(c)],
            "residual": element_to_json(residual),
        }
    if report.anticommutativity_witness is not None:
        a, b, residual = report.anticommutativity_witness
        result["anticommutativity_witness"] = {
            "pair": [_label_json(a), _label_json(b)],
            "residual": element_to_json(residual),
        }
    return result, [("lie-axioms", report.passed)]


def _label_json(label):
    if isinstance(label, tuple) and label and isinstance(label[0], tuple):
        return [list(label[0]), label[1]]
    return list(label)


def _task_witnesses(spec, cfg, window):
    if spec.family == "generalized_witt":
        datum = spec.pairing
    elif spec.family == "block":
        datum = spec.f
    else:
        raise ConfigError("field 'task': witnesses needs a form or a pairing")
    report = nondegeneracy_witnesses(datum, window)
    result = {
        "n_witnessed": len(report.witnesses),
        "missing": [list(a) for a in report.missing],
        "degenerate_in_window": report.degenerate_in_window,
    }
    sample = {}
    for a in sorted(report.witnesses)[:16]:
        w = report.witnesses[a]
        sample[",".join(map(str, a))] = (
            [scalar_to_str(x) for x in w] if isinstance(w[0], Fraction) else list(w))
    result["witness_sample"] = sample
    return result, [("non-degenerate-in-window", not report.degenerate_in_window)]


def _task_center_square(spec, cfg, window):
    center = verify_center(spec, window)
    square = verify_square(spec, window)
    result = {
        "center_confirmed": len(center.confirmed) + len(center.witnesses),
        "center_failures": [_label_json(a) for a, _ in center.failures],
        "square_confirmed": len(square.confirmed) + len(square.witnesses),
        "square_failures": [_label_json(a) for a, _ in square.failures],
    }
    return result, [("center", center.passed), ("square", square.passed)]


def _task_solve(spec, cfg, window):
    payload = cfg["payload"]
    bound = payload.get("degree_bound", window.inner_margin)
    if not isinstance(bound, int) or bound < 0:
        raise ConfigError("field 'payload.degree_bound' must be a non-negative integer")
    report = halfderiv.sweep(
        spec, window, bound,
        delta=scalar_from_str(cfg["delta"]),
        max_unknowns=cfg["limits"].get("max_unknowns"))
    return report.to_json(), [("half-derivations", report.all_pass)]


def _task_classify(spec, cfg, window):
    payload = cfg["payload"]
    bound = payload.get("degree_bound", window.inner_margin)
    if not isinstance(bound, int) or bound < 0:
        raise ConfigError("field 'payload.degree_bound' must be a non-negative integer")
    solved = halfderiv.solve_degrees(
        spec, window, bound,
        delta=scalar_from_str(cfg["delta"]),
        max_unknowns=cfg["limits"].get("max_unknowns"))
    sweep_report = halfderiv.sweep(spec, window, bound,
                                   delta=scalar_from_str(cfg["delta"]),
                                   solved=solved)
    delta_bases = {deg: basis for deg, (_, basis) in solved.items()}
    res = tpstruct.classify(spec, delta_bases, window, bound,
                            n_samples=payload.get("samples", 5),
                            seed=cfg["seed"])
    result = {
        "sweep_verdict": sweep_report.verdict,
        "n_parameters": res.n_parameters,
        "parameters": [
            {"name": p.name, "left_index": _label_json(p.left_index),
             "degree": list(p.degree), "basis_position": p.basis_position}
            for p in res.parameters],
        "generators": [product_to_json(g) for g in res.generators],
        "associativity_samples": [
            {"pass": ok, "witness": None if w is None else [_label_json(l) for l in w]}
            for ok, w in res.associativity_samples],
    }
    verdicts = [("sweep", sweep_report.all_pass),
                ("classify-associativity", res.associativity_pass)]
    expected = payload.get("expected_parameters")
    if expected is not None:
        verdicts.append(("expected-parameters", res.n_parameters == expected))
    return result, verdicts


def _task_verify_structure(spec, cfg, window):
    payload = cfg["payload"]
    if "product" not in payload:
        raise ConfigError("missing field 'payload.product'")
    try:
        product = product_from_json(payload["product"])
    except (KeyError, ValueError) as exc:
        raise ConfigError("field 'payload.product' is invalid: %s" % exc)
    report = tpstruct.verify(spec, product, window,
                             max_triples=cfg["limits"].get("max_triples"))
    checks = {
        "commutative": report.commutative,
        "associative": report.associative,
        "trans_leibniz": report.trans_leibniz,
        "poisson_leibniz": report.poisson_leibniz,
    }
    result = {"n_triples": report.n_triples}
    for name, check in checks.items():
        entry = {"pass": check.passed}
        if check.witness is not None:
            labels, lhs, rhs = check.witness
            entry["witness"] = {
                "labels": [_label_json(l) for l in labels],
                "lhs": element_to_json(lhs),
                "rhs": element_to_json(rhs),
            }
        result[name] = entry
    verdicts = [("tp-axioms", report.tp_pass)]
    if payload.get("require_poisson"):
        verdicts.append(("poisson-leibniz", report.poisson_leibniz.passed))
    return result, verdicts


_TASK_TABLE = {
    "check-lie": _task_check_lie,
    "witnesses": _task_witnesses,
    "center-square": _task_center_square,
    "solve-half-derivations": _task_solve,
    "classify-tp": _task_classify,
    "verify-structure": _task_verify_structure,
}


def run(config: dict) -> dict:
    """Run one validated job config and return the report dict."""
    cfg = load_config(config)
    spec = spec_from_json(cfg["algebra"])
    window = _window_of(cfg)
    started = time.monotonic()
    result, verdicts = _TASK_TABLE[cfg["task"]](spec, cfg, window)
    elapsed_ms = int((time.monotonic() - started) * 1000)
    return {
        "schema_version": SCHEMA_VERSION,
        "task": cfg["task"],
        "config": {
            "algebra": spec_to_json(spec),
            "window": {"radius": window.radius, "inner_margin": window.inner_margin},
            "delta": cfg["delta"],
            "seed": cfg["seed"],
            "payload": cfg["payload"],
            "limits": cfg["limits"],
        },
        "result": result,
        "verdicts": [{"name": name, "pass": ok} for name, ok in verdicts],
        "all_pass": all(ok for _, ok in verdicts),
        "timing_ms": elapsed_ms,
    }


def _gw_spec():
    return {"family": "generalized_witt", "pairing": [["1", "0"], ["0", "1"]]}


def _b1_spec():
    return {"family": "block", "g": ["-1", "0"], "h": ["0", "1"]}


def _b0_spec():
    return {"family": "block", "f": [["0", "-1"], ["1", "0"]]}


def _witt_spec():
    return {"family": "witt_type", "f": ["1"]}


def _no_coset_spec():
    # h hits -1 and -2 nowhere on the lattice, so the coset sets are empty.
    return {"family": "block", "g": ["-1", "0"], "h": ["0", "3"]}


THEOREM_SUITES = {
    "thmA": [
        {
            "name": "witt-rigidity",
            "algebra": _gw_spec(),
            "window": {"radius": 3, "inner_margin": 2},
            "task": "solve-half-derivations",
            "payload": {"degree_bound": 2},
        },
        {
            "name": "witt-type-mutation",
            "algebra": _witt_spec(),
            "window": {"radius": 4, "inner_margin": 2},
            "task": "verify-structure",
            "payload": {"product": {
                "variant": "mutation",
                "w": [{"index": [-1], "coeff": "2/3"},
                      {"index": [0], "coeff": "1"},
                      {"index": [2], "coeff": "-5"}],
            }},
        },
    ],
    "thmB": [
        {
            "name": "block-g0-uniqueness",
            "algebra": _b0_spec(),
            "window": {"radius": 3, "inner_margin": 2},
            "task": "classify-tp",
            "payload": {"degree_bound": 2, "expected_parameters": 1},
        },
        {
            "name": "block-empty-coset-trivial",
            "algebra": _no_coset_spec(),
            "window": {"radius": 3, "inner_margin": 2},
            "task": "classify-tp",
            "payload": {"degree_bound": 2, "expected_parameters": 0},
        },
        {
            "name": "block-extension-family",
            "algebra": _b1_spec(),
            "window": {"radius": 3, "inner_margin": 2},
            "task": "classify-tp",
            "payload": {"degree_bound": 2, "expected_parameters": 1},
        },
    ],
}


def reproduce(suite: str) -> list:
    """Run the bundled theorem suites and return the list of reports."""
    if suite == "all":
        names = ["thmA", "thmB"]
    elif suite in THEOREM_SUITES:
        names = [suite]
    else:
        raise ConfigError("unknown suite %r" % suite)
    reports = []
    for name in names:
        for job in THEOREM_SUITES[name]:
            job = dict(job)
            label = job.pop("name")
            report = run(job)
            report["job"] = label
            report["suite"] = name
            reports.append(report)
    return reports


def _emit(report, json_only: bool) -> None:
    sys.stdout.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
    if not json_only:
        if isinstance(report, list):
            lines = ["%s/%s: %s" % (r["suite"], r["job"],
                                    "pass" if r["all_pass"] else "FAIL")
                     for r in report]
        else:
            lines = ["%s: %s" % (v["name"], "pass" if v["pass"] else "FAIL")
                     for v in report["verdicts"]]
        sys.stderr.write("\n".join(lines) + "\n")


def _apply_overrides(config, args):
    if args.radius is not None:
        config.setdefault("window", {})["radius"] = args.radius
    if args.margin is not None:
        config.setdefault("window", {})["inner_margin"] = args.margin
    if args.delta is not None:
        config["delta"] = args.delta
    if args.seed is not None:
        config["seed"] = args.seed
    return config


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="tpw",
        description="Exact workbench for transposed Poisson structures")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a single job config")
    p_run.add_argument("--config", required=True, help="path to a JSON job config")

    p_rep = sub.add_parser("reproduce", help="run a bundled theorem suite")
    p_rep.add_argument("--suite", required=True, choices=["thmA", "thmB", "all"])

    for p in (p_run, p_rep):
        p.add_argument("--radius", type=int, default=None)
        p.add_argument("--margin", type=int, default=None)
        p.add_argument("--delta", type=str, default=None)
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--json-only", action="store_true")

    args = parser.parse_args(argv)
    try:
        if args.command == "run":
            try:
                with open(args.config) as fh:
                    config = json.load(fh)
            except OSError as exc:
                sys.stderr.write("cannot read config: %s\n" % exc)
                return 2
            except json.JSONDecodeError as exc:
                sys.stderr.write("config is not valid JSON: %s\n" % exc)
                return 2
            config = _apply_overrides(config, args)
            report = run(config)
            _emit(report, args.json_only)
            return 0 if report["all_pass"] else 1
        reports = reproduce(args.suite)
        _emit(reports, args.json_only)
        return 0 if all(r["all_pass"] for r in reports) else 1
    except ConfigError as exc:
        sys.stderr.write("config error: %s\n" % exc)
        return 2
    except (exactlin.DimensionOverflowError, tpstruct.LimitExceededError) as exc:
        sys.stderr.write("limit exceeded: %s\n" % exc)
        return 3
    except ValueError as exc:
        sys.stderr.write("invalid job: %s\n" % exc)
        return 2


if __name__ == "__main__":
    sys.exit(main())
