"""Run configuration: sectioned key = value text read with configparser.

Example::

    [spec]
    catalog = rational-075

    [run]
    eta = minus
    seed = 7

    [window]
    rect = 0.1, 0.9, 0, 30
    t = 0, 30

    [quadrature]
    T = 400
    N = 32

A spec can instead be written out with ``variant`` (rational, xi2s, xi2s-y,
epstein) and its parameters: ``zeros``, ``poles``, ``scale`` for rational,
``y`` for xi2s-y, ``form = a, b, c`` for epstein, plus ``sigmas`` and
``label``.  Complex numbers use Python syntax (``-0.5+3j``).
"""

import configparser
from dataclasses import dataclass, field, replace
import math

from .. import hcatalog, specfun
from ..errors import ConfigError, CritlineError
from ..hcatalog import EtaSign, HFunctionSpec, Tolerances

SECTIONS = {
    "spec": {"catalog", "variant", "zeros", "poles", "scale", "y", "form", "sigmas", "label"},
    "run": {"eta", "seed"},
    "window": {"rect", "t"},
    "quadrature": {"t", "n", "schedule"},
    "identity": {"w", "random", "online"},
    "spectrum": {"t", "n", "doublings", "match_tol", "c_shift"},
    "tolerances": {"reality", "unit_modulus", "residue_imag", "growth_margin", "theta_zero",
                   "identity", "online", "agreement", "derivative"},
}

DEFAULT_TOLERANCES = {
    "reality": 1e-10, "unit_modulus": 1e-10, "residue_imag": 1e-9, "growth_margin": 1e-3,
    "theta_zero": 1e-12, "identity": 1e-6, "online": 1e-8, "agreement": 1e-9,
    "derivative": 1e-4,
}


@dataclass
class RunConfig:
    spec: HFunctionSpec
    eta: EtaSign
    rect: tuple = (0.1, 0.9, 0.0, 30.0)
    t_window: tuple = (0.0, 30.0)
    T: float = 400.0
    N: int = 32
    schedule: tuple = None
    identity_w: tuple = ()
    identity_random: int = 20
    online_w: tuple = ()
    spectrum_T: float = 60.0
    spectrum_N: int = 16
    doublings: int = 1
    match_tol: float = 1e-3
    c_shift: float = None
    tolerances: dict = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))
    output_dir: str = "out"
    seed: int = 0

    @property
    def T_schedule(self):
        if self.schedule:
            return tuple(self.schedule)
        return tuple(self.T / 2 ** k for k in (3, 2, 1, 0))

    def hypothesis_tolerances(self):
        keys = ("reality", "unit_modulus", "residue_imag", "growth_margin", "theta_zero")
        return Tolerances(**{k: self.tolerances[k] for k in keys})

    def to_dict(self):
        return {"spec": self.spec.label, "eta": int(self.eta), "rect": list(self.rect),
                "t_window": list(self.t_window), "T": self.T, "N": self.N,
                "T_schedule": list(self.T_schedule), "spectrum_T": self.spectrum_T,
                "spectrum_N": self.spectrum_N, "doublings": self.doublings,
                "seed": self.seed, "tolerances": dict(sorted(self.tolerances.items()))}


def _floats(text, n=None, what="value"):
    try:
        vals = [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise ConfigError(f"bad number in {what}: {text!r}") from exc
    if n is not None and len(vals) != n:
        raise ConfigError(f"{what} needs {n} numbers, got {len(vals)}")
    if not all(math.isfinite(v) for v in vals):
        raise ConfigError(f"{what} must be finite")
    return tuple(vals)


def _complexes(text, what="value"):
    try:
        vals = [complex(x.replace(" ", "")) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise ConfigError(f"bad complex number in {what}: {text!r}") from exc
    return tuple(vals)


def _number(sec, key, kind=float, default=None):
    if key not in sec:
        return default
    try:
        return kind(sec[key])
    except ValueError as exc:
        raise ConfigError(f"[{sec.name}] {key} = {sec[key]!r} is not a valid {kind.__name__}") from exc


def _build_spec(sec):
    if "catalog" in sec:
        extra = set(sec) - {"catalog"}
        if extra:
            raise ConfigError(f"[spec] catalog cannot be combined with {sorted(extra)}")
        try:
            return hcatalog.get(sec["catalog"].strip())
        except KeyError as exc:
            raise ConfigError(str(exc)) from exc
    variant = sec.get("variant", "").strip()
    label = sec.get("label", variant or "custom").strip()
    sigmas = _floats(sec.get("sigmas", ""), what="sigmas")
    if variant == "rational":
        v = hcatalog.Rational(_complexes(sec.get("zeros", ""), "zeros"),
                              _complexes(sec.get("poles", ""), "poles"),
                              _number(sec, "scale", float, 1.0))
        eta = -1
    elif variant == "xi2s":
        v, eta = hcatalog.RiemannXi2s(), 1
    elif variant == "xi2s-y":
        v, eta = hcatalog.RiemannXi2sY(_number(sec, "y", float, 1.0)), 1
    elif variant == "epstein":
        a, b, c = _floats(sec.get("form", "1, 0, 1"), 3, "form")
        v, eta = hcatalog.EpsteinCompleted2s(specfun.QuadraticForm(a, b, c)), 1
    else:
        raise ConfigError(f"[spec] needs catalog or variant in rational, xi2s, xi2s-y, epstein;"
                          f" got {variant!r}")
    return HFunctionSpec(v, sigmas, label), EtaSign(eta)


def load_config(path=None, text=None, overrides=None):
    """Parse a config file (or text) and apply command-line overrides."""
    cp = configparser.ConfigParser(interpolation=None)
    try:
        if text is not None:
            cp.read_string(text)
        else:
            with open(path, encoding="utf-8") as fh:
                cp.read_file(fh)
    except (OSError, configparser.Error, UnicodeDecodeError) as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    for name in cp.sections():
        if name not in SECTIONS:
            raise ConfigError(f"unknown section [{name}]")
        unknown = set(cp[name]) - SECTIONS[name]
        if unknown:
            raise ConfigError(f"unknown keys in [{name}]: {sorted(unknown)}")
    if not cp.has_section("spec"):
        raise ConfigError("missing [spec] section")
    try:
        spec, eta = _build_spec(cp["spec"])
        kw = {}
        run = cp["run"] if cp.has_section("run") else {}
        if "eta" in run:
            eta = EtaSign(run["eta"])
        kw["seed"] = _number(run, "seed", int, 0) if run else 0
        if cp.has_section("window"):
            w = cp["window"]
            if "rect" in w:
                kw["rect"] = _floats(w["rect"], 4, "rect")
            if "t" in w:
                kw["t_window"] = _floats(w["t"], 2, "t window")
        if cp.has_section("quadrature"):
            q = cp["quadrature"]
            kw["T"] = _number(q, "t", float, 400.0)
            kw["N"] = _number(q, "n", int, 32)
            if "schedule" in q:
                kw["schedule"] = _floats(q["schedule"], what="schedule")
        if cp.has_section("identity"):
            s = cp["identity"]
            kw["identity_w"] = _complexes(s.get("w", ""), "w")
            kw["identity_random"] = _number(s, "random", int, 20)
            kw["online_w"] = _complexes(s.get("online", ""), "online")
        if cp.has_section("spectrum"):
            s = cp["spectrum"]
            kw["spectrum_T"] = _number(s, "t", float, 60.0)
            kw["spectrum_N"] = _number(s, "n", int, 16)
            kw["doublings"] = _number(s, "doublings", int, 1)
            kw["match_tol"] = _number(s, "match_tol", float, 1e-3)
            kw["c_shift"] = _number(s, "c_shift", float, None)
        tols = dict(DEFAULT_TOLERANCES)
        if cp.has_section("tolerances"):
            for k, v in cp["tolerances"].items():
                tols[k] = _number(cp["tolerances"], k, float)
        kw["tolerances"] = tols
        cfg = RunConfig(spec, eta, **kw)
    except ConfigError:
        raise
    except (CritlineError, ValueError, TypeError) as exc:
        raise ConfigError(str(exc)) from exc
    return apply_overrides(cfg, overrides or {})


def apply_overrides(cfg, ov):
    """Flags win over the file.  --T/--N go to the spectrum schedule when ``ov['verb']`` is spectrum."""
    kw = {}
    verb = ov.get("verb")
    if ov.get("eta") is not None:
        try:
            kw["eta"] = EtaSign(ov["eta"])
        except CritlineError as exc:
            raise ConfigError(str(exc)) from exc
    if ov.get("T") is not None:
        kw["spectrum_T" if verb == "spectrum" else "T"] = float(ov["T"])
        if verb != "spectrum":
            kw["schedule"] = None
    if ov.get("N") is not None:
        kw["spectrum_N" if verb == "spectrum" else "N"] = int(ov["N"])
    if ov.get("window") is not None:
        vals = _floats(ov["window"], what="--window")
        if len(vals) == 4:
            kw["rect"] = vals
        elif len(vals) == 2:
            kw["t_window"] = vals
        else:
            raise ConfigError("--window takes x0,x1,y0,y1 or t0,t1")
    if ov.get("seed") is not None:
        kw["seed"] = int(ov["seed"])
    if ov.get("out") is not None:
        kw["output_dir"] = ov["out"]
    cfg = replace(cfg, **kw)
    validate(cfg)
    return cfg


def validate(cfg):
    x0, x1, y0, y1 = cfg.rect
    if not (x0 < x1 and y0 < y1):
        raise ConfigError("window rect is degenerate")
    t0, t1 = cfg.t_window
    if not t0 < t1:
        raise ConfigError("t window is degenerate")
    for name in ("T", "spectrum_T"):
        if not getattr(cfg, name) > 0:
            raise ConfigError(f"{name} must be positive")
    for name in ("N", "spectrum_N"):
        if not getattr(cfg, name) > 0:
            raise ConfigError(f"{name} must be positive")
    if cfg.doublings < 0 or cfg.identity_random < 0:
        raise ConfigError("doublings and random must be non-negative")
    if cfg.schedule is not None and (len(cfg.schedule) < 2 or any(b <= a for a, b in
                                                                  zip(cfg.schedule, cfg.schedule[1:]))):
        raise ConfigError("schedule must be at least two increasing heights")
    bad = [k for k, v in cfg.tolerances.items() if not (v is not None and v > 0)]
    if bad:
        raise ConfigError(f"tolerances must be positive: {sorted(bad)}")
    if not cfg.match_tol > 0:
        raise ConfigError("match_tol must be positive")
