"""Config-driven command line: ``lctlab <command> --config run.json [--out DIR] [--log-level LVL]``.

A config is one JSON document::

    {"command": "transform", "seed": 0, "params": {...}}

``command`` on the command line and in the document must agree when both
are given.  Relative signal paths resolve against the config's directory;
``{"bundled": "gaussian"}`` names a signal shipped with the package and
``{"fixture": "bump", "grid": {"T": 20, "N": 4096}}`` builds one.

Exit codes: 0 success, 2 invalid config or parameters, 3 aliasing or
resolution failure, 4 degenerate parameters.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys
import warnings
from importlib import resources
from pathlib import Path

import jsonschema
import numpy as np

from . import __version__
from .engine import LCTParams, frft, frft_params, lct_chirp, lct_on_grid
from .errors import AliasingError, ConfigError, DegenerateParameterError, LCTError, ParameterError
from .fixtures import FIXTURES, HOLDER_FIXTURES, holder_fixture, make_fixture
from .groups import SubgroupSpec, group_residual, operator_group_check
from .lab import (AlphaProfile, CounterexampleSpec, ExperimentReport, MaximalQuery, SweepConfig,
                  ae_convergence_fraction, counterexample_report, geometric_a_grid,
                  global_unboundedness_probe, holder_maximal_growth, l2_continuity_sweep,
                  make_phi, maximal_estimate, oscillatory_integral_check, oscillatory_lattice,
                  pointwise_probe, wavepacket_probe)
from .profiles import PROFILES, get_profile
from .signals import Grid, NormSpec, SampledSignal, fourier, load_signal, make_grid, norm

__all__ = ["COMMANDS", "EXIT_ALIASING", "EXIT_CONFIG", "EXIT_DEGENERATE", "load_config", "main", "run"]

log = logging.getLogger("lctlab")

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_ALIASING = 3
EXIT_DEGENERATE = 4

ENV_OUT = "LCTLAB_OUT_DIR"
ENV_LOG = "LCTLAB_LOG_LEVEL"

# -- schemas -----------------------------------------------------------------

_NUM = {"type": "number"}
_POS = {"type": "number", "exclusiveMinimum": 0}
_POS_INT = {"type": "integer", "minimum": 1}
_GRID = {"type": "object", "required": ["T", "N"], "additionalProperties": False,
         "properties": {"T": _POS, "N": {"type": "integer", "minimum": 8}}}
_SIGNAL = {"oneOf": [
    {"type": "string"},
    {"type": "object", "required": ["path"], "additionalProperties": False,
     "properties": {"path": {"type": "string"}}},
    {"type": "object", "required": ["bundled"], "additionalProperties": False,
     "properties": {"bundled": {"type": "string"}}},
    {"type": "object", "required": ["fixture", "grid"], "additionalProperties": False,
     "properties": {"fixture": {"enum": sorted(FIXTURES) + sorted(HOLDER_FIXTURES)}, "grid": _GRID}},
]}
_PROFILE = {"type": "object", "required": ["name"], "additionalProperties": False,
            "properties": {"name": {"enum": list(PROFILES)}, "a0": _NUM, "delta": _POS}}
_ALPHA_PROFILE = {"type": "object", "required": ["kind"],
                  "properties": {"kind": {"enum": ["constant", "linear", "jump", "tabulated"]},
                                 "value": _NUM, "slope": _NUM, "left": _NUM, "right": _NUM,
                                 "at": _NUM, "alphas": {"type": "array", "items": _NUM},
                                 "values": {"type": "array", "items": _NUM}},
                  "additionalProperties": False}
_SWEEP = {
    "A": _ALPHA_PROFILE, "B": _ALPHA_PROFILE, "alpha0": _NUM,
    "steps": {"type": "array", "items": _POS, "minItems": 2},
    "grid": _GRID, "D": _NUM, "bound_factor": _POS,
}
_SPACE = {"type": "object", "required": ["kind"], "additionalProperties": False,
          "properties": {"kind": {"enum": ["L2", "WeightedL2", "Sobolev"]}, "param": _NUM}}
_LADDER = {"type": "array", "items": _POS, "minItems": 2}


def _obj(props: dict, required=()) -> dict:
    return {"type": "object", "properties": props, "required": list(required),
            "additionalProperties": False}


PARAM_SCHEMAS = {
    "transform": _obj({
        "signal": _SIGNAL, "reference": _SIGNAL,
        "kind": {"enum": ["frft", "lct", "fourier"]},
        "alpha": _NUM,
        "lct": _obj({"A": _NUM, "B": _NUM, "C": _NUM,
                     "D": {"type": "array", "items": _NUM, "minItems": 2, "maxItems": 2}},
                    ["A", "B", "C"]),
    }, ["signal", "kind"]),
    "verify-group": _obj({
        "family": {"enum": ["I", "II", "III"]}, "omega": _NUM, "lambda": _NUM, "gamma": _NUM,
        "pairs": {"type": "array", "items": {"type": "array", "items": _NUM,
                                             "minItems": 2, "maxItems": 2}},
        "random_pairs": _obj({"count": _POS_INT, "low": _NUM, "high": _NUM}, ["count", "low", "high"]),
        "signal": _SIGNAL,
    }, ["family"]),
    "sweep-l2": _obj({**_SWEEP, "signals": {"type": "array", "minItems": 1,
                                            "items": {"enum": sorted(FIXTURES)}}},
                     ["A", "B", "alpha0", "steps", "grid", "signals"]),
    "pointwise": _obj({**_SWEEP, "signal": _SIGNAL, "u": _NUM, "space": _SPACE,
                       "method": {"enum": ["spectral", "time"]}, "T_ladder": _LADDER},
                      ["A", "B", "alpha0", "steps", "signal", "u", "space"]),
    "maximal": _obj({
        "mode": {"enum": ["estimate", "holder", "ae"]},
        "profile": _PROFILE, "signal": _SIGNAL,
        "a_grid": {"oneOf": [{"type": "array", "items": _NUM, "minItems": 1},
                             _obj({"geometric": _POS_INT}, ["geometric"])]},
        "u_grid": _obj({"start": _NUM, "stop": _NUM, "count": _POS_INT}, ["start", "stop", "count"]),
        "p": {"oneOf": [{"type": "number", "minimum": 1}, {"const": "inf"}]},
        "method": {"enum": ["spectral", "time"]},
        "radii": _LADDER, "du": _POS, "support": {"type": "array", "items": _NUM,
                                                  "minItems": 2, "maxItems": 2},
        "eps": _POS,
    }, ["mode", "profile", "signal", "a_grid"]),
    "counterexample": _obj({
        "K": _POS_INT, "u0": _POS, "phi_integral": _NUM, "profile": _PROFILE, "grid": _GRID,
        "ns": {"type": "array", "items": _POS_INT, "minItems": 1}, "threshold_factor": _POS,
    }, ["K", "u0", "grid"]),
    "lemma-integral": _obj({
        "a": _NUM, "b": _NUM, "N_limit": _POS,
        "lattice": {"type": "array", "items": _NUM, "minItems": 1},
        "N_limits": _LADDER, "samples_per_period": _POS_INT,
    }),
    "wavepacket": _obj({
        "N_ladder": _LADDER, "s": {"type": "number", "minimum": 0}, "profile": _PROFILE,
        "c": _POS, "witness": {"type": "array", "items": _NUM, "minItems": 2, "maxItems": 2},
        "n_witness": _POS_INT, "samples": _POS_INT,
    }, ["N_ladder", "s", "profile"]),
    "global-probe": _obj({
        "N_ladder": _LADDER, "s": _POS, "p": {"type": "number", "minimum": 1},
        "profile": _PROFILE, "du": _POS, "pad": _POS, "n_a": _POS_INT,
        "n_witness": _POS_INT, "samples": _POS_INT,
    }, ["N_ladder", "s", "p", "profile"]),
}
COMMANDS = tuple(PARAM_SCHEMAS)

CONFIG_SCHEMA = {
    "type": "object",
    "required": ["params"],
    "additionalProperties": False,
    "properties": {
        "command": {"enum": list(COMMANDS)},
        "seed": {"type": "integer", "minimum": 0},
        "params": {"type": "object"},
    },
}


def load_config(path, command: str | None = None) -> dict:
    """Read and validate a run config; returns the document with ``command`` and ``seed`` filled in.

    Raises
    ------
    ConfigError
        If the file is missing, not JSON, fails its schema or the command
        given on the command line disagrees with the document.
    """
    path = Path(path)
    try:
        doc = json.loads(path.read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    try:
        jsonschema.validate(doc, CONFIG_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise ConfigError(f"config: {exc.message}") from exc
    cmd = doc.get("command", command)
    if cmd is None:
        raise ConfigError("no command given on the command line or in the config")
    if command is not None and cmd != command:
        raise ConfigError(f"command {command!r} disagrees with config command {cmd!r}")
    try:
        jsonschema.validate(doc["params"], PARAM_SCHEMAS[cmd])
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "params"
        raise ConfigError(f"params.{where}: {exc.message}") from exc
    return {"command": cmd, "seed": int(doc.get("seed", 0)), "params": doc["params"],
            "base_dir": str(path.resolve().parent)}


# -- parameter helpers -------------------------------------------------------


def _signal(spec, base: Path) -> SampledSignal:
    if isinstance(spec, str):
        spec = {"path": spec}
    if "path" in spec:
        p = Path(spec["path"])
        p = p if p.is_absolute() else base / p
        if not p.is_file():
            raise ConfigError(f"signal file {p} does not exist")
        return load_signal(p)
    if "bundled" in spec:
        res = resources.files("lctlab") / "data" / f"{spec['bundled']}.json"
        if not res.is_file():
            raise ConfigError(f"no bundled signal named {spec['bundled']!r}")
        return SampledSignal.from_dict(json.loads(res.read_text()))
    grid = make_grid(spec["grid"]["T"], spec["grid"]["N"])
    name = spec["fixture"]
    return holder_fixture(name, grid) if name in HOLDER_FIXTURES else make_fixture(name, grid)


def _profile(spec: dict):
    return get_profile(spec["name"], spec.get("a0", 0.0), spec.get("delta", 1.0))


def _sweep_config(params: dict, signals: dict, grid: Grid) -> SweepConfig:
    return SweepConfig(AlphaProfile.from_dict(params["A"]), AlphaProfile.from_dict(params["B"]),
                       float(params["alpha0"]), tuple(params["steps"]), signals, grid,
                       D=float(params.get("D", 1.0)), bound_factor=float(params.get("bound_factor", 0.9)))


# -- commands ----------------------------------------------------------------


def _cmd_transform(params: dict, base: Path, rng) -> ExperimentReport:
    f = _signal(params["signal"], base)
    kind = params["kind"]
    if kind == "lct":
        if "lct" not in params:
            raise ConfigError("kind 'lct' needs an 'lct' parameter block")
        q = params["lct"]
        D = complex(*q["D"]) if "D" in q else None
        p = LCTParams(q["A"], q["B"], q["C"]) if D is None else LCTParams(q["A"], q["B"], q["C"], D)
    elif kind == "frft":
        if "alpha" not in params:
            raise ConfigError("kind 'frft' needs 'alpha'")
        p = None
    else:
        p = LCTParams(0.0, 1.0, 0.0, 1.0 / math.sqrt(2 * math.pi))
    ref = _signal(params["reference"], base) if "reference" in params else None

    if kind == "frft":
        out = frft(params["alpha"], f)
    elif kind == "fourier":
        out = fourier(f)
    else:
        out = lct_chirp(p, f)
    mask = np.ones(out.grid.N, dtype=bool)
    if ref is not None and ref.grid != out.grid:
        # the reference fixes the output grid; evaluate there by direct summation
        p_ref = frft_params(params["alpha"]) if kind == "frft" else p
        out, mask = lct_on_grid(p_ref, f, ref.grid)

    rep = ExperimentReport("transform", ["u", "re", "im", "resolved"],
                           config={"kind": kind, "input_grid": f.grid.to_dict(),
                                   "output_grid": out.grid.to_dict()})
    for u, z, m in zip(out.grid.points, out.values, mask):
        rep.add_row(float(u), float(z.real), float(z.imag), bool(m))
    rep.summary["input_norm"] = norm(f)
    rep.summary["output_norm"] = norm(out)
    rep.summary["unresolved_points"] = int(np.sum(~mask))
    if ref is not None:
        diff = np.where(mask, out.values - ref.values, 0.0)
        err = math.sqrt(ref.grid.spacing * float(np.sum(np.abs(diff) ** 2))) / norm(ref)
        rep.summary["relative_error"] = err
    rep.curves["abs"] = (out.grid.points, np.abs(out.values))
    return rep


def _cmd_verify_group(params: dict, base: Path, rng) -> ExperimentReport:
    spec = SubgroupSpec.from_dict(params)
    pairs = [tuple(map(float, p)) for p in params.get("pairs", [])]
    if "random_pairs" in params:
        r = params["random_pairs"]
        draws = rng.uniform(r["low"], r["high"], size=(r["count"], 2))
        pairs += [(float(a), float(b)) for a, b in draws]
    if not pairs:
        raise ConfigError("verify-group needs 'pairs' or 'random_pairs'")
    f = _signal(params["signal"], base) if "signal" in params else None
    rep = ExperimentReport("verify-group",
                           ["alpha", "beta", "residual_A", "residual_B", "residual_C",
                            "residual_D", "operator_residual"],
                           config={"subgroup": spec.to_dict(), "pairs": [list(p) for p in pairs]})
    worst = 0.0
    for a, b in pairs:
        r = group_residual(spec, a, b)
        op = operator_group_check(spec, a, b, f) if f is not None else math.nan
        worst = max(worst, r.max())
        rep.add_row(a, b, r.residual_A, r.residual_B, r.residual_C, r.residual_D, op)
    rep.summary["max_parameter_residual"] = worst
    if f is not None:
        rep.summary["max_operator_residual"] = float(np.max(rep.column("operator_residual")))
    rep.flags["parameter_group_law"] = bool(worst <= 1e-9)
    return rep


def _cmd_sweep_l2(params: dict, base: Path, rng) -> ExperimentReport:
    grid = make_grid(params["grid"]["T"], params["grid"]["N"])
    signals = {name: make_fixture(name, grid) for name in params["signals"]}
    return l2_continuity_sweep(_sweep_config(params, signals, grid))


def _cmd_pointwise(params: dict, base: Path, rng) -> ExperimentReport:
    f = _signal(params["signal"], base)
    cfg = _sweep_config(params, {"signal": f}, f.grid)
    sp = params["space"]
    space = NormSpec(sp["kind"], float(sp.get("param", 0.0)))
    kw = {"T_ladder": params["T_ladder"]} if "T_ladder" in params else {}
    return pointwise_probe(f, float(params["u"]), cfg, space, method=params.get("method", "spectral"), **kw)


def _a_grid(spec, profile) -> tuple:
    if isinstance(spec, dict):
        return tuple(geometric_a_grid(profile, spec["geometric"]).tolist())
    return tuple(float(a) for a in spec)


def _cmd_maximal(params: dict, base: Path, rng) -> ExperimentReport:
    profile = _profile(params["profile"])
    f = _signal(params["signal"], base)
    a_grid = _a_grid(params["a_grid"], profile)
    mode = params["mode"]
    method = params.get("method", "time" if mode == "holder" else "spectral")
    if mode == "holder":
        kw = {k: params[k] for k in ("radii", "du", "support") if k in params}
        return holder_maximal_growth(f, profile, a_grid, method=method, **kw)
    if mode == "ae":
        return ae_convergence_fraction(f, profile, a_grid, params.get("eps", 1e-3), method=method)
    if "u_grid" not in params:
        raise ConfigError("mode 'estimate' needs 'u_grid'")
    ug = params["u_grid"]
    u = np.linspace(ug["start"], ug["stop"], ug["count"])
    p = params.get("p", 2.0)
    q = MaximalQuery(profile, a_grid, u, math.inf if p == "inf" else float(p))
    return maximal_estimate(q, f, method=method)


def _cmd_counterexample(params: dict, base: Path, rng) -> ExperimentReport:
    grid = make_grid(params["grid"]["T"], params["grid"]["N"])
    profile = _profile(params.get("profile", {"name": "constant-one"}))
    phi = make_phi(grid, params.get("phi_integral", 0.1))
    spec = CounterexampleSpec(params["K"], params["u0"], phi, profile)
    return counterexample_report(spec, params.get("ns", range(6, 13)),
                                 threshold_factor=params.get("threshold_factor", 0.5))


def _cmd_lemma_integral(params: dict, base: Path, rng) -> ExperimentReport:
    spp = params.get("samples_per_period", 16)
    if "lattice" in params or "N_limits" in params:
        kw = {k: params[k] for k in ("N_limits",) if k in params}
        if "lattice" in params:
            kw["values"] = params["lattice"]
        return oscillatory_lattice(samples_per_period=spp, **kw)
    missing = [k for k in ("a", "b", "N_limit") if k not in params]
    if missing:
        raise ConfigError(f"lemma-integral needs {missing} or a lattice")
    return oscillatory_integral_check(params["a"], params["b"], params["N_limit"],
                                      samples_per_period=spp)


def _cmd_wavepacket(params: dict, base: Path, rng) -> ExperimentReport:
    kw = {k: params[k] for k in ("c", "n_witness", "samples") if k in params}
    if "witness" in params:
        kw["witness"] = tuple(params["witness"])
    return wavepacket_probe(params["N_ladder"], params["s"], _profile(params["profile"]), **kw)


def _cmd_global_probe(params: dict, base: Path, rng) -> ExperimentReport:
    kw = {k: params[k] for k in ("du", "pad", "n_a", "n_witness", "samples") if k in params}
    return global_unboundedness_probe(params["N_ladder"], params["s"], params["p"],
                                      _profile(params["profile"]), **kw)


_HANDLERS = {
    "transform": _cmd_transform,
    "verify-group": _cmd_verify_group,
    "sweep-l2": _cmd_sweep_l2,
    "pointwise": _cmd_pointwise,
    "maximal": _cmd_maximal,
    "counterexample": _cmd_counterexample,
    "lemma-integral": _cmd_lemma_integral,
    "wavepacket": _cmd_wavepacket,
    "global-probe": _cmd_global_probe,
}


# -- driver ------------------------------------------------------------------


def _exit_code(exc: BaseException) -> int:
    if isinstance(exc, DegenerateParameterError):
        return EXIT_DEGENERATE
    if isinstance(exc, AliasingError):
        return EXIT_ALIASING
    return EXIT_CONFIG


def _setup_logging(out_dir: Path, level: str) -> logging.Handler:
    out_dir.mkdir(parents=True, exist_ok=True)
    handler = logging.FileHandler(out_dir / "run.log", mode="w", encoding="utf-8")
    handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    for name in ("lctlab", "py.warnings"):
        lg = logging.getLogger(name)
        lg.addHandler(handler)
        lg.setLevel(level)
    logging.captureWarnings(True)
    return handler


def _teardown_logging(handler: logging.Handler) -> None:
    logging.captureWarnings(False)
    for name in ("lctlab", "py.warnings"):
        logging.getLogger(name).removeHandler(handler)
    handler.close()


def run(config: dict, out_dir) -> tuple[int, ExperimentReport | None]:
    """Execute a validated config and write its report files into ``out_dir``.

    Returns the exit status and the report (``None`` on failure).
    """
    out_dir = Path(out_dir)
    cmd = config["command"]
    seed = config["seed"]
    rng = np.random.default_rng(seed)
    log.info("lctlab %s: command %s, seed %d", __version__, cmd, seed)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("always")
            rep = _HANDLERS[cmd](config["params"], Path(config["base_dir"]), rng)
    except (LCTError, ValueError) as exc:
        code = _exit_code(exc) if isinstance(exc, LCTError) else EXIT_CONFIG
        log.error("%s: %s", type(exc).__name__, exc)
        print(f"lctlab {cmd}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return code, None
    # the echo is exactly the document a re-run needs
    rep.config = {"run": {"command": cmd, "seed": seed, "params": config["params"]},
                  "resolved": rep.config, "version": __version__}
    for path in rep.write(out_dir, cmd):
        log.info("wrote %s", path.name)
    for name, value in sorted(rep.flags.items()):
        log.info("flag %s = %s", name, value)
    return EXIT_OK, rep


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lctlab", description="LCT and FRFT experiments driven by JSON configs.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--config", required=True, help="JSON run config")
    ap.add_argument("--out", default=None, help=f"output directory (default ${ENV_OUT} or ./lctlab-out)")
    ap.add_argument("--log-level", default=None, help=f"log level (default ${ENV_LOG} or INFO)")
    return ap


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    out_dir = Path(args.out or os.environ.get(ENV_OUT) or "lctlab-out")
    level = (args.log_level or os.environ.get(ENV_LOG) or "INFO").upper()
    if not isinstance(logging.getLevelName(level), int):
        print(f"lctlab: unknown log level {level!r}", file=sys.stderr)
        return EXIT_CONFIG
    handler = _setup_logging(out_dir, level)
    try:
        try:
            config = load_config(args.config, args.command)
        except (ConfigError, ParameterError) as exc:
            log.error("%s", exc)
            print(f"lctlab: {exc}", file=sys.stderr)
            return EXIT_CONFIG
        code, _ = run(config, out_dir)
        return code
    finally:
        _teardown_logging(handler)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
