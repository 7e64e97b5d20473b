"""Run configuration: INI-style ``key = value`` text with section headers.

    [space]
    s = 0.5
    N = 64

    [symbols]
    psi = kernel gamma=0.5
    phi = mobius gamma=0.5 alpha=1

    [sweep]
    angles = 1024

    [grid]
    radial = 64
    angular = 256

    [run]
    seed = 0

Symbol descriptors:
    phi: identity | constant v=C | dilation lambda=C | mobius gamma=C alpha=C | series C,C,...
    psi: one | kernel gamma=C | exp scale=C shift=C | series C,C,...
where C is anything ``complex()`` accepts (``0.5``, ``-0.2+0.1j``).
"""
from __future__ import annotations

import configparser
from dataclasses import dataclass, field, replace
from typing import Dict, Optional

import numpy as np

from .operators import (ConstantMap, Dilation, IdentityMap, Mobius, NormalizedKernel, One,
                        OperatorSpec, SeriesMap, SeriesWeight)
from .series import PowerSeries, exp_series
from .special import DomainError, SpaceParam

__all__ = ["ConfigError", "RunConfig", "parse_phi", "parse_psi", "parse_config",
           "load_config", "dumps_config"]

EXP_MIN_TERMS = 40
MIN_SWEEP_N = 8


class ConfigError(ValueError):
    """Invalid configuration text, descriptor or value."""


def _complex(text: str, what: str) -> complex:
    try:
        return complex(text.strip().replace(" ", ""))
    except ValueError:
        raise ConfigError(f"{what}: cannot parse {text!r} as a number") from None


def _kv(tokens, allowed, what) -> Dict[str, complex]:
    out = {}
    for tok in tokens:
        key, sep, val = tok.partition("=")
        if not sep or key not in allowed:
            raise ConfigError(f"{what}: unexpected argument {tok!r}; expected {'/'.join(allowed)}=value")
        if key in out:
            raise ConfigError(f"{what}: duplicate argument {key!r}")
        out[key] = _complex(val, f"{what} {key}")
    return out


def _coeffs(text: str, what: str) -> PowerSeries:
    parts = [p for p in text.split(",") if p.strip()]
    if not parts:
        raise ConfigError(f"{what}: empty coefficient list")
    return PowerSeries(np.array([_complex(p, what) for p in parts], dtype=complex))


def parse_phi(text: str, allow_unverified_selfmap: bool = False):
    head, _, rest = text.strip().partition(" ")
    tokens = rest.split()
    what = f"phi {head!r}"
    try:
        if head == "identity" and not tokens:
            return IdentityMap()
        if head == "constant":
            return ConstantMap(**_kv(tokens, ("v",), what))
        if head == "dilation":
            kv = _kv(tokens, ("lambda",), what)
            return Dilation(kv["lambda"])
        if head == "mobius":
            kv = _kv(tokens, ("gamma", "alpha"), what)
            return Mobius(kv["gamma"], kv.get("alpha", 1.0))
        if head == "series":
            if not allow_unverified_selfmap:
                raise ConfigError("phi given as a raw series is not checked to map the disc into "
                                  "itself; pass --allow-unverified-selfmap to accept it")
            return SeriesMap(_coeffs(rest, what))
    except (KeyError, TypeError) as exc:
        raise ConfigError(f"{what}: missing argument {exc}") from None
    except DomainError as exc:
        raise ConfigError(f"{what}: {exc}") from None
    raise ConfigError(f"unknown phi descriptor {text!r}")


def parse_psi(text: str, N: int = EXP_MIN_TERMS):
    head, _, rest = text.strip().partition(" ")
    tokens = rest.split()
    what = f"psi {head!r}"
    try:
        if head == "one" and not tokens:
            return One()
        if head == "kernel":
            return NormalizedKernel(_kv(tokens, ("gamma",), what)["gamma"])
        if head == "exp":
            kv = _kv(tokens, ("scale", "shift"), what)
            return SeriesWeight(exp_series(max(N, EXP_MIN_TERMS), kv.get("scale", 1.0), kv.get("shift", 0.0)))
        if head == "series":
            return SeriesWeight(_coeffs(rest, what))
    except KeyError as exc:
        raise ConfigError(f"{what}: missing argument {exc}") from None
    except DomainError as exc:
        raise ConfigError(f"{what}: {exc}") from None
    raise ConfigError(f"unknown psi descriptor {text!r}")


@dataclass(frozen=True)
class RunConfig:
    s: float = 0.5
    N: int = 64
    psi: object = field(default_factory=One)
    phi: object = field(default_factory=IdentityMap)
    angles: int = 1024
    radial: int = 64
    angular: int = 256
    seed: int = 0

    def __post_init__(self):
        try:
            SpaceParam(self.s)
        except DomainError as exc:
            raise ConfigError(str(exc)) from None
        checks = ((self.N >= 1, f"N must be >= 1, got {self.N}"),
                  (self.angles >= 16, f"angles must be >= 16, got {self.angles}"),
                  (self.radial >= 4, f"radial count must be >= 4, got {self.radial}"),
                  (self.angular >= 8, f"angular count must be >= 8, got {self.angular}"))
        for ok, msg in checks:
            if not ok:
                raise ConfigError(msg)

    def require_sweep_order(self) -> None:
        """Sweeps, grids and verification need N >= 8; a bare matrix dump does not."""
        if self.N < MIN_SWEEP_N:
            raise ConfigError(f"N must be >= {MIN_SWEEP_N} for this command, got {self.N}")

    def spec(self) -> OperatorSpec:
        return OperatorSpec(self.psi, self.phi, self.s, self.N)

    def with_overrides(self, **kw) -> "RunConfig":
        return replace(self, **{k: v for k, v in kw.items() if v is not None})


def _get(cp, section, key, conv, default):
    if not cp.has_option(section, key):
        return default
    raw = cp.get(section, key)
    try:
        return conv(raw)
    except ValueError:
        raise ConfigError(f"[{section}] {key}: cannot parse {raw!r}") from None


def _int(text: str) -> int:
    v = float(text)
    if v != int(v):
        raise ValueError(text)
    return int(v)


_KNOWN = {"space": {"s", "n"}, "symbols": {"psi", "phi"}, "sweep": {"angles"},
          "grid": {"radial", "angular"}, "run": {"seed"}}


def parse_config(text: str, allow_unverified_selfmap: bool = False) -> RunConfig:
    cp = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=("#", ";"))
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"malformed configuration: {exc}") from None
    for section in cp.sections():
        if section not in _KNOWN:
            raise ConfigError(f"unknown section [{section}]")
        extra = set(cp.options(section)) - _KNOWN[section]
        if extra:
            raise ConfigError(f"unknown key(s) in [{section}]: {sorted(extra)}")
    d = RunConfig.__dataclass_fields__
    s = _get(cp, "space", "s", float, d["s"].default)
    N = _get(cp, "space", "n", _int, d["N"].default)
    psi = parse_psi(cp.get("symbols", "psi"), N) if cp.has_option("symbols", "psi") else One()
    phi = (parse_phi(cp.get("symbols", "phi"), allow_unverified_selfmap)
           if cp.has_option("symbols", "phi") else IdentityMap())
    return RunConfig(
        s=s, N=N, psi=psi, phi=phi,
        angles=_get(cp, "sweep", "angles", _int, d["angles"].default),
        radial=_get(cp, "grid", "radial", _int, d["radial"].default),
        angular=_get(cp, "grid", "angular", _int, d["angular"].default),
        seed=_get(cp, "run", "seed", _int, d["seed"].default),
    )


def load_config(path, allow_unverified_selfmap: bool = False) -> RunConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read(), allow_unverified_selfmap)


def dumps_config(cfg: RunConfig) -> str:
    return (f"[space]\ns = {cfg.s!r}\nN = {cfg.N}\n\n"
            f"[symbols]\npsi = {cfg.psi.descriptor()}\nphi = {cfg.phi.descriptor()}\n\n"
            f"[sweep]\nangles = {cfg.angles}\n\n"
            f"[grid]\nradial = {cfg.radial}\nangular = {cfg.angular}\n\n"
            f"[run]\nseed = {cfg.seed}\n")
