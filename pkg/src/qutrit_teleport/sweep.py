"""Declarative probability-grid sweeps.

A sweep config is a TOML document with four tables::

    [scenario]
    input = { kind = "BF", p = "p_I" }   # number, or the name of a free variable
    alice = "none"
    bob   = { kind = "AD", p = "p_B" }   # AD also accepts p1 = ..., p2 = ...
    # cad = { eta = "eta", p = "p" }     # correlated damping on the channel

    [grids]
    p_I = [0.0, 0.5, 1.0]
    p_B = { start = 0.0, stop = 1.0, num = 5 }

    [averaging]
    method = "quadrature"                # or "monte-carlo"
    theta_nodes = 64
    phi_nodes = 64
    samples = 100000                     # monte-carlo only
    seed = 0

    [output]
    path = "fig2.csv"                    # omitted: write to stdout
    format = "csv"                       # or "json"

Rows are the cartesian product of the grids, in the order the grids are
listed, first grid varying slowest.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import os
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .channels import CadParams, NoiseKind, NoiseSpec
from .fidelity import QuadratureSpec, average_fidelity, monte_carlo_average
from .formulas import REGISTRY, FormulaId
from .teleportation import TeleportScenario

WORKERS_ENV = "QUTRIT_TELEPORT_WORKERS"

Value = Union[float, str]  # literal probability or free-variable name

_SECTIONS = {
    "scenario": {"input", "alice", "bob", "cad"},
    "grids": None,
    "averaging": {"method", "theta_nodes", "phi_nodes", "samples", "seed", "workers"},
    "output": {"path", "format"},
}
_NOISE_KEYS = {"kind", "p", "p1", "p2"}
_CAD_KEYS = {"eta", "p", "p1", "p2", "pairing"}


class ConfigError(ValueError):
    def __init__(self, message: str, field: Optional[str] = None, line: Optional[int] = None):
        self.field = field
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(field)
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(prefix + message)


def _locate(text: str, section: str, key: Optional[str] = None) -> Optional[int]:
    """1-based line of ``key`` inside ``[section]`` (or of the header itself)."""
    current = None
    header = re.compile(r"^\s*\[\s*([A-Za-z0-9_.\-]+)\s*\]")
    for n, line in enumerate(text.splitlines(), start=1):
        m = header.match(line)
        if m:
            current = m.group(1)
            if key is None and current == section:
                return n
            continue
        if key is not None and current == section and re.match(
            rf"^\s*{re.escape(key)}\s*=", line
        ):
            return n
    return None


@dataclass(frozen=True)
class SlotTemplate:
    kind: NoiseKind = NoiseKind.NONE
    p: Value = 0.0
    p1: Optional[Value] = None
    p2: Optional[Value] = None

    def values(self) -> List[Value]:
        return [v for v in (self.p, self.p1, self.p2) if v is not None]

    def bind(self, env: Dict[str, float]) -> NoiseSpec:
        r = lambda v: env[v] if isinstance(v, str) else v  # noqa: E731
        if self.p1 is not None or self.p2 is not None:
            p1 = r(self.p1 if self.p1 is not None else self.p)
            p2 = r(self.p2 if self.p2 is not None else self.p)
            return NoiseSpec(self.kind, 0.0, ad_params=(p1, p2))
        return NoiseSpec(self.kind, r(self.p))


@dataclass(frozen=True)
class CadTemplate:
    eta: Value
    p1: Value
    p2: Value
    pairing: str = "standard"

    def values(self) -> List[Value]:
        return [self.eta, self.p1, self.p2]

    def bind(self, env: Dict[str, float]) -> CadParams:
        r = lambda v: env[v] if isinstance(v, str) else v  # noqa: E731
        return CadParams(r(self.eta), r(self.p1), r(self.p2), self.pairing)


@dataclass(frozen=True)
class ScenarioTemplate:
    input: SlotTemplate = field(default_factory=SlotTemplate)
    alice: SlotTemplate = field(default_factory=SlotTemplate)
    bob: SlotTemplate = field(default_factory=SlotTemplate)
    cad: Optional[CadTemplate] = None

    def free_variables(self) -> List[str]:
        vals = self.input.values() + self.alice.values() + self.bob.values()
        if self.cad is not None:
            vals += self.cad.values()
        seen: List[str] = []
        for v in vals:
            if isinstance(v, str) and v not in seen:
                seen.append(v)
        return seen

    def bind(self, env: Dict[str, float]) -> TeleportScenario:
        return TeleportScenario(
            self.input.bind(env), self.alice.bind(env), self.bob.bind(env),
            None if self.cad is None else self.cad.bind(env),
        )

    def formula(self) -> Optional[Tuple[FormulaId, Tuple[str, ...]]]:
        """Registry entry this template instantiates, with its argument names."""
        slots = (self.input, self.alice, self.bob)
        if any(s.p1 is not None or s.p2 is not None for s in slots):
            return None
        kinds = []
        names: List[Optional[str]] = []
        for s in slots:
            kinds.append(s.kind)
            if s.kind is NoiseKind.NONE:
                names.append(None)
            elif isinstance(s.p, str):
                names.append(s.p)
            else:
                return None
        i, a, b = names
        if self.cad is not None:
            c = self.cad
            if i is not None or c.p1 != c.p2 or not isinstance(c.p1, str) or not isinstance(c.eta, str):
                return None
            kinds = [NoiseKind.NONE, NoiseKind.AMPLITUDE_DAMPING, NoiseKind.AMPLITUDE_DAMPING]
            return self._lookup(kinds, "cad", (c.p1, c.eta))
        pattern = [
            ("input", i is not None and a is None and b is None, (i,)),
            ("input_bob", i is not None and a is None and b is not None and b != i, (i, b)),
            ("input_alice", i is not None and a == i and b is None, (i,)),
            ("input_alice_bob", i is not None and a == i and b is not None and b != i, (i, b)),
            ("channel", i is None and a is not None and b == a, (a,)),
            ("channel_input", i is not None and a is not None and b == a and a != i, (i, a)),
        ]
        for variant, ok, args in pattern:
            if ok:
                return self._lookup(kinds, variant, args)
        return None

    @staticmethod
    def _lookup(kinds, variant, args):
        fid = FormulaId(tuple(kinds), variant)
        return (fid, tuple(args)) if fid in REGISTRY else None


@dataclass(frozen=True)
class Averaging:
    method: str = "quadrature"
    theta_nodes: int = 64
    phi_nodes: int = 64
    samples: int = 100_000
    seed: int = 0
    workers: Optional[int] = None


@dataclass(frozen=True)
class SweepConfig:
    scenario: ScenarioTemplate
    grids: Dict[str, Tuple[float, ...]]
    averaging: Averaging = field(default_factory=Averaging)
    output_path: Optional[str] = None
    output_format: str = "csv"

    @property
    def variables(self) -> Tuple[str, ...]:
        return tuple(self.grids)

    def points(self):
        for combo in itertools.product(*self.grids.values()):
            yield dict(zip(self.grids, combo))


@dataclass(frozen=True)
class SweepRow:
    values: Tuple[float, ...]
    f_avg: float
    f_closed_form: Optional[float] = None
    abs_diff: Optional[float] = None
    formula_id: Optional[str] = None


# -- parsing --------------------------------------------------------------------------

def _probability(v, where: str, text: str, section: str, key: str) -> Value:
    if isinstance(v, str):
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", v):
            raise ConfigError(f"{v!r} is neither a number nor a variable name",
                              where, _locate(text, section, key))
        return v
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ConfigError(f"expected a probability or variable name, got {v!r}",
                          where, _locate(text, section, key))
    if not 0.0 <= float(v) <= 1.0:
        raise ConfigError(f"probability {v!r} outside [0, 1]", where, _locate(text, section, key))
    return float(v)


def _parse_slot(raw, name: str, text: str) -> SlotTemplate:
    where = f"scenario.{name}"
    line = _locate(text, "scenario", name)
    if isinstance(raw, str):
        kind = _kind(raw, where, line)
        if kind is not NoiseKind.NONE:
            raise ConfigError("noisy slots need a table with a probability, "
                              f'e.g. {{ kind = "{raw}", p = "p" }}', where, line)
        return SlotTemplate()
    if not isinstance(raw, dict):
        raise ConfigError(f"expected a table or \"none\", got {raw!r}", where, line)
    unknown = set(raw) - _NOISE_KEYS
    if unknown:
        raise ConfigError(f"unknown keys {sorted(unknown)}", where, line)
    kind = _kind(raw.get("kind", "none"), where, line)
    if kind is NoiseKind.NONE:
        return SlotTemplate()
    has_pair = "p1" in raw or "p2" in raw
    if has_pair and kind is not NoiseKind.AMPLITUDE_DAMPING:
        raise ConfigError("p1/p2 only apply to amplitude damping", where, line)
    if "p" not in raw and not has_pair:
        raise ConfigError("missing probability 'p'", where, line)
    get = lambda k: None if k not in raw else _probability(raw[k], f"{where}.{k}", text, "scenario", name)  # noqa: E731
    return SlotTemplate(kind, get("p") if "p" in raw else 0.0, get("p1"), get("p2"))


def _kind(raw, where, line) -> NoiseKind:
    try:
        return NoiseKind.parse(raw)
    except ValueError as exc:
        raise ConfigError(str(exc), where, line) from None


def _parse_cad(raw, text: str) -> CadTemplate:
    where = "scenario.cad"
    line = _locate(text, "scenario", "cad")
    if not isinstance(raw, dict):
        raise ConfigError("expected a table", where, line)
    unknown = set(raw) - _CAD_KEYS
    if unknown:
        raise ConfigError(f"unknown keys {sorted(unknown)}", where, line)
    if "eta" not in raw:
        raise ConfigError("missing correlation parameter 'eta'", where, line)
    get = lambda k: _probability(raw[k], f"{where}.{k}", text, "scenario", "cad")  # noqa: E731
    if "p" in raw:
        p1 = p2 = get("p")
    elif "p1" in raw and "p2" in raw:
        p1, p2 = get("p1"), get("p2")
    else:
        raise ConfigError("give either 'p' or both 'p1' and 'p2'", where, line)
    pairing = raw.get("pairing", "standard")
    if pairing not in ("standard", "swapped"):
        raise ConfigError(f"pairing must be 'standard' or 'swapped', got {pairing!r}", where, line)
    return CadTemplate(get("eta"), p1, p2, pairing)


def _parse_grid(name: str, raw, text: str) -> Tuple[float, ...]:
    where = f"grids.{name}"
    line = _locate(text, "grids", name)
    if isinstance(raw, dict):
        unknown = set(raw) - {"start", "stop", "num"}
        if unknown or not {"start", "stop", "num"} <= set(raw):
            raise ConfigError("range grids need exactly start, stop and num", where, line)
        num = raw["num"]
        if not isinstance(num, int) or num < 1:
            raise ConfigError("num must be a positive integer", where, line)
        values = [float(x) for x in np.linspace(raw["start"], raw["stop"], num)]
    elif isinstance(raw, list):
        values = raw
    else:
        raise ConfigError("expected a list of probabilities or {start, stop, num}", where, line)
    if not values:
        raise ConfigError("grid is empty", where, line)
    out = []
    for v in values:
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise ConfigError(f"grid value {v!r} is not a number", where, line)
        if not 0.0 <= float(v) <= 1.0:
            raise ConfigError(f"grid value {v!r} outside [0, 1]", where, line)
        out.append(float(v))
    return tuple(out)


def parse_config(text: str) -> SweepConfig:
    try:
        doc = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        m = re.search(r"line (\d+)", str(exc))
        raise ConfigError(f"malformed TOML: {exc}", line=int(m.group(1)) if m else None) from None

    for section, value in doc.items():
        if section not in _SECTIONS:
            raise ConfigError(f"unknown section [{section}]", section, _locate(text, section))
        if not isinstance(value, dict):
            raise ConfigError("expected a table", section, _locate(text, section))
        allowed = _SECTIONS[section]
        if allowed is not None:
            for key in value:
                if key not in allowed:
                    raise ConfigError(f"unknown key {key!r}", f"{section}.{key}",
                                      _locate(text, section, key))
    if "scenario" not in doc:
        raise ConfigError("missing [scenario] section")

    sc = doc["scenario"]
    slots = {name: _parse_slot(sc[name], name, text) if name in sc else SlotTemplate()
             for name in ("input", "alice", "bob")}
    cad = _parse_cad(sc["cad"], text) if "cad" in sc else None
    if cad is not None and (slots["alice"].kind is not NoiseKind.NONE
                            or slots["bob"].kind is not NoiseKind.NONE):
        raise ConfigError("correlated damping replaces the Alice and Bob noise; "
                          "remove scenario.alice / scenario.bob", "scenario.cad",
                          _locate(text, "scenario", "cad"))
    template = ScenarioTemplate(slots["input"], slots["alice"], slots["bob"], cad)

    raw_grids = doc.get("grids", {})
    grids = {name: _parse_grid(name, raw, text) for name, raw in raw_grids.items()}
    free = template.free_variables()
    for name in free:
        if name not in grids:
            raise ConfigError(f"free variable {name!r} has no grid", f"grids.{name}",
                              _locate(text, "grids"))
    for name in grids:
        if name not in free:
            raise ConfigError(f"grid {name!r} is not used by the scenario", f"grids.{name}",
                              _locate(text, "grids", name))

    av = doc.get("averaging", {})
    method = av.get("method", "quadrature")
    if method not in ("quadrature", "monte-carlo"):
        raise ConfigError(f"method must be 'quadrature' or 'monte-carlo', got {method!r}",
                          "averaging.method", _locate(text, "averaging", "method"))
    ints = {}
    for key, low in (("theta_nodes", 2), ("phi_nodes", 2), ("samples", 100), ("seed", 0),
                     ("workers", 1)):
        if key in av:
            v = av[key]
            if isinstance(v, bool) or not isinstance(v, int) or v < low:
                raise ConfigError(f"must be an integer >= {low}, got {v!r}",
                                  f"averaging.{key}", _locate(text, "averaging", key))
            ints[key] = v
    averaging = Averaging(method=method, **ints)

    out = doc.get("output", {})
    fmt = out.get("format", "csv")
    if fmt not in ("csv", "json"):
        raise ConfigError(f"format must be 'csv' or 'json', got {fmt!r}", "output.format",
                          _locate(text, "output", "format"))
    path = out.get("path")
    if path is not None and not isinstance(path, str):
        raise ConfigError("path must be a string", "output.path", _locate(text, "output", "path"))
    return SweepConfig(template, grids, averaging, path, fmt)


def load_config(path: str) -> SweepConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())


# -- running --------------------------------------------------------------------------

def default_workers() -> int:
    env = os.environ.get(WORKERS_ENV)
    if env:
        try:
            n = int(env)
        except ValueError:
            raise ConfigError(f"{WORKERS_ENV}={env!r} is not an integer") from None
        if n < 1:
            raise ConfigError(f"{WORKERS_ENV} must be >= 1")
        return n
    return min(4, os.cpu_count() or 1)


def run_sweep(cfg: SweepConfig, workers: Optional[int] = None) -> List[SweepRow]:
    """Evaluate every grid point; row order is fixed regardless of ``workers``."""
    points = list(cfg.points())
    av = cfg.averaging
    quad = QuadratureSpec(av.theta_nodes, av.phi_nodes)
    seeds = np.random.SeedSequence(av.seed).spawn(len(points))
    formula = cfg.scenario.formula()

    def evaluate(i: int) -> SweepRow:
        env = points[i]
        scenario = cfg.scenario.bind(env)
        if av.method == "quadrature":
            f = average_fidelity(scenario, quad)
        else:
            f, _ = monte_carlo_average(scenario, av.samples, seeds[i])
        values = tuple(env[v] for v in cfg.variables)
        if formula is None:
            return SweepRow(values, f)
        fid, args = formula
        closed = REGISTRY[fid](tuple(env[a] for a in args))
        return SweepRow(values, f, closed, abs(f - closed), fid.label)

    n = workers or av.workers or default_workers()
    if n == 1:
        return [evaluate(i) for i in range(len(points))]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(evaluate, range(len(points))))


def _fmt(x: Optional[float]) -> str:
    return "" if x is None else format(x, ".12g")


def format_rows(cfg: SweepConfig, rows: Sequence[SweepRow]) -> str:
    header = list(cfg.variables) + ["f_avg", "f_closed_form", "abs_diff", "formula_id"]
    if cfg.output_format == "json":
        objs = []
        for r in rows:
            obj = dict(zip(cfg.variables, r.values))
            obj.update(f_avg=r.f_avg, f_closed_form=r.f_closed_form, abs_diff=r.abs_diff,
                       formula_id=r.formula_id)
            objs.append(obj)
        return json.dumps(objs, indent=2) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([_fmt(v) for v in r.values]
                   + [_fmt(r.f_avg), _fmt(r.f_closed_form), _fmt(r.abs_diff), r.formula_id or ""])
    return buf.getvalue()


def write_rows(cfg: SweepConfig, rows: Sequence[SweepRow], path: Optional[str] = None) -> str:
    """Serialise ``rows``; write to ``path`` (or the config's path) when one is set."""
    text = format_rows(cfg, rows)
    target = path or cfg.output_path
    if target:
        with open(target, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return text
