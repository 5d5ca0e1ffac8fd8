"""Run configuration: a flat INI document plus command-line overrides.

Example::

    [run]
    tau = i
    n = 2
    seeds = 0, 1, 2
    suites = theta, lax, rmatrix, solver, yang_baxter, reduction, dynamics
    probes = 0.41+0.13i 0.17+0.38i; -0.27+0.21i 0.33-0.31i

    [dynamics]
    flow_point = 0.41+0.13i
    t_end = 1.0
    rel_tol = 1e-10
    conservation_points = 0.17+0.38i, 0.33-0.31i

    [tolerances]
    yb_residual = 1e-6

Unknown sections, keys and tolerance names are rejected.
"""

from __future__ import annotations

import configparser
import hashlib
import json
import math
import re
from dataclasses import asdict, dataclass, field, replace

from .checks import DEFAULT_TOLERANCES, SUITES
from .errors import ConfigError

DEFAULT_PROBES: tuple[tuple[complex, complex], ...] = (
    (0.41 + 0.13j, 0.17 + 0.38j),
    (-0.27 + 0.21j, 0.33 - 0.31j),
    (0.12 - 0.36j, -0.38 - 0.09j),
    (0.29 + 0.42j, -0.14 - 0.27j),
    (-0.43 + 0.33j, 0.06 + 0.19j),
)

_RUN_KEYS = {"tau", "n", "seeds", "suites", "probes"}
_DYNAMICS_KEYS = {"flow_point", "t_end", "rel_tol", "conservation_points"}


def parse_complex(text: str) -> complex:
    """Accept Python (``1j``) and mathematical (``0.3+1.1i``, ``i``) notation."""
    s = str(text).strip().replace(" ", "").replace("i", "j")
    if re.fullmatch(r"[+-]?j", s):
        s = s.replace("j", "1j")
    s = re.sub(r"([+-])j$", r"\g<1>1j", s)
    try:
        return complex(s)
    except ValueError:
        raise ConfigError(f"cannot parse complex number {text!r}") from None


def format_complex(z: complex) -> str:
    z = complex(z)
    return f"{z.real!r}{'+' if z.imag >= 0 or math.isnan(z.imag) else '-'}{abs(z.imag)!r}i"


@dataclass(frozen=True)
class SuiteConfig:
    tau: complex = 1j
    n: int = 2
    seeds: tuple[int, ...] = (0, 1, 2)
    tolerances: dict = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))
    probes: tuple[tuple[complex, complex], ...] = DEFAULT_PROBES
    suites: tuple[str, ...] = SUITES
    flow_point: complex = 0.41 + 0.13j
    t_end: float = 1.0
    rel_tol: float = 1e-10
    conservation_points: tuple[complex, ...] = (0.17 + 0.38j, 0.33 - 0.31j)

    def __post_init__(self):
        if not complex(self.tau).imag > 0:
            raise ConfigError(f"tau must have positive imaginary part, got {self.tau}")
        if int(self.n) != self.n or self.n < 1:
            raise ConfigError(f"n must be a positive integer, got {self.n}")
        if not self.seeds:
            raise ConfigError("at least one seed is required")
        if any(int(s) != s or s < 0 for s in self.seeds):
            raise ConfigError("seeds must be non-negative integers")
        unknown = set(self.suites) - set(SUITES)
        if unknown:
            raise ConfigError(f"unknown suites: {sorted(unknown)}")
        if not self.suites:
            raise ConfigError("no suites requested")
        bad = set(self.tolerances) - set(DEFAULT_TOLERANCES)
        if bad:
            raise ConfigError(f"unknown tolerance keys: {sorted(bad)}")
        missing = set(DEFAULT_TOLERANCES) - set(self.tolerances)
        if missing:
            raise ConfigError(f"tolerances missing defaults: {sorted(missing)}")
        for k, v in self.tolerances.items():
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v >= 0):
                raise ConfigError(f"tolerance {k} must be a finite non-negative number")
        if not self.probes:
            raise ConfigError("at least one probe pair is required")
        if not (self.t_end != 0 and math.isfinite(self.t_end)):
            raise ConfigError("t_end must be finite and nonzero")
        if not self.rel_tol > 0:
            raise ConfigError("rel_tol must be positive")
        # canonical ordering so equal configurations hash equally
        object.__setattr__(self, "tau", complex(self.tau))
        object.__setattr__(self, "seeds", tuple(int(s) for s in self.seeds))
        object.__setattr__(self, "suites", tuple(s for s in SUITES if s in self.suites))
        object.__setattr__(self, "tolerances", {k: float(self.tolerances[k]) for k in sorted(self.tolerances)})

    def probe_points(self) -> list[complex]:
        pts = [z for pair in self.probes for z in pair]
        return pts + [self.flow_point, *self.conservation_points]

    def as_dict(self) -> dict:
        d = asdict(self)
        d["tau"] = format_complex(self.tau)
        d["probes"] = [[format_complex(z), format_complex(w)] for z, w in self.probes]
        d["flow_point"] = format_complex(self.flow_point)
        d["conservation_points"] = [format_complex(w) for w in self.conservation_points]
        d["seeds"] = list(self.seeds)
        d["suites"] = list(self.suites)
        return d

    def digest(self) -> str:
        blob = json.dumps(self.as_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()


def _split(text: str, sep: str = ",") -> list[str]:
    return [t.strip() for t in text.split(sep) if t.strip()]


def _parse_probes(text: str) -> tuple[tuple[complex, complex], ...]:
    out = []
    for chunk in _split(text, ";"):
        parts = chunk.replace(",", " ").split()
        if len(parts) != 2:
            raise ConfigError(f"probe {chunk!r} must be a pair 'z w'")
        out.append((parse_complex(parts[0]), parse_complex(parts[1])))
    return tuple(out)


def _number(text: str, kind, key: str):
    try:
        return kind(text)
    except ValueError:
        raise ConfigError(f"{key}: cannot parse {text!r}") from None


def parse_config_text(text: str) -> SuiteConfig:
    cp = configparser.ConfigParser(interpolation=None)
    cp.optionxform = str
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"malformed configuration: {exc}") from None
    extra = set(cp.sections()) - {"run", "dynamics", "tolerances"}
    if extra:
        raise ConfigError(f"unknown sections: {sorted(extra)}")
    kw: dict = {}
    if cp.has_section("run"):
        sec = cp["run"]
        bad = set(sec) - _RUN_KEYS
        if bad:
            raise ConfigError(f"unknown keys in [run]: {sorted(bad)}")
        if "tau" in sec:
            kw["tau"] = parse_complex(sec["tau"])
        if "n" in sec:
            kw["n"] = _number(sec["n"], int, "n")
        if "seeds" in sec:
            kw["seeds"] = tuple(_number(s, int, "seeds") for s in _split(sec["seeds"]))
        if "suites" in sec:
            kw["suites"] = tuple(_split(sec["suites"]))
        if "probes" in sec:
            kw["probes"] = _parse_probes(sec["probes"])
    if cp.has_section("dynamics"):
        sec = cp["dynamics"]
        bad = set(sec) - _DYNAMICS_KEYS
        if bad:
            raise ConfigError(f"unknown keys in [dynamics]: {sorted(bad)}")
        if "flow_point" in sec:
            kw["flow_point"] = parse_complex(sec["flow_point"])
        if "t_end" in sec:
            kw["t_end"] = _number(sec["t_end"], float, "t_end")
        if "rel_tol" in sec:
            kw["rel_tol"] = _number(sec["rel_tol"], float, "rel_tol")
        if "conservation_points" in sec:
            kw["conservation_points"] = tuple(parse_complex(s) for s in _split(sec["conservation_points"]))
    tol = dict(DEFAULT_TOLERANCES)
    if cp.has_section("tolerances"):
        for k, v in cp["tolerances"].items():
            if k not in DEFAULT_TOLERANCES:
                raise ConfigError(f"unknown tolerance key {k!r}")
            tol[k] = _number(v, float, k)
    kw["tolerances"] = tol
    return SuiteConfig(**kw)


def load_config(path: str | None) -> SuiteConfig:
    if path is None:
        return SuiteConfig()
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read configuration {path!r}: {exc}") from None
    return parse_config_text(text)


def apply_overrides(cfg: SuiteConfig, *, n=None, tau=None, seed=None, tolerances=(), suites=None) -> SuiteConfig:
    """Return ``cfg`` with command-line overrides; ``tolerances`` holds 'KEY=VAL' strings."""
    changes: dict = {}
    if n is not None:
        changes["n"] = int(n)
    if tau is not None:
        changes["tau"] = parse_complex(tau)
    if seed is not None:
        changes["seeds"] = (int(seed),)
    if suites is not None:
        changes["suites"] = tuple(suites)
    if tolerances:
        tol = dict(cfg.tolerances)
        for item in tolerances:
            key, sep, val = item.partition("=")
            key = key.strip()
            if not sep or key not in DEFAULT_TOLERANCES:
                raise ConfigError(f"bad tolerance override {item!r}")
            tol[key] = _number(val.strip(), float, key)
        changes["tolerances"] = tol
    return replace(cfg, **changes) if changes else cfg
