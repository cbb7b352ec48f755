"""Experiment configuration and its JSON form.

Example::

    {
      "config": {"C": "100", "beta": "0.8", "T": "10"},
      "profile": {"profile": "commuter", "horizon_days": 2000,
                  "price_dist": "pareto"},
      "algorithms": ["SUM", "FSUM", "PFSUM", "SUM_W[w=5]", "SRL[lambda=1/2]"],
      "perturbations": {"start": "0", "stop": "1", "step": "0.1"},
      "runs_per_point": 100,
      "base_seed": 7
    }

Rationals may be JSON numbers or strings (``"0.8"``, ``"4/5"``).
``price_dist`` is a kind name or an object with ``kind`` and any of ``low``,
``high``, ``mean``, ``sd``, ``shape``, ``scale``.  ``perturbations`` is a list
or a ``start/stop/step`` range (inclusive).  An optional ``perturbation``
object sets ``order`` (``remove_first`` / ``noise_first``), ``streams``
(``shared`` / ``independent``) and a separate ``noise`` law; by default the
noise law is the profile's price law.  Every error names the offending field.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Optional, Tuple

from ..algos import AlgorithmSpec
from ..core import BahncardConfig, Rational, format_rational, rational
from ..errors import ConfigError
from ..predictors import REMOVE_FIRST
from ..sampling import PriceDistribution
from .generators import ProfileParams

SEED_MASK = (1 << 64) - 1


@dataclass(frozen=True)
class ExperimentConfig:
    config: BahncardConfig
    profile: ProfileParams
    algorithms: Tuple[AlgorithmSpec, ...]
    perturbations: Tuple[Rational, ...]
    runs_per_point: int = 100
    base_seed: int = 0
    noise: Optional[PriceDistribution] = None
    order: str = REMOVE_FIRST
    streams: str = "shared"

    def __post_init__(self):
        if not self.algorithms:
            raise ConfigError("algorithms", "at least one algorithm is required")
        for p in self.perturbations:
            if not 0 <= p <= 1:
                raise ConfigError("perturbations", f"{format_rational(p)} is outside [0, 1]")
        if not self.perturbations:
            raise ConfigError("perturbations", "at least one value is required")
        if not isinstance(self.runs_per_point, int) or self.runs_per_point < 1:
            raise ConfigError("runs_per_point", "must be a positive integer")
        if not 0 <= self.base_seed <= SEED_MASK:
            raise ConfigError("base_seed", "must be a 64-bit unsigned integer")

    @property
    def noise_law(self) -> PriceDistribution:
        return self.noise or self.profile.price_dist

    def with_seed(self, seed: int) -> "ExperimentConfig":
        return replace(self, base_seed=_seed(seed, "seed"))


def _rat(value, where) -> Rational:
    try:
        return rational(value)
    except (TypeError, ValueError) as exc:
        raise ConfigError(where, str(exc)) from None


def _seed(value, where) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or not 0 <= value <= SEED_MASK:
        raise ConfigError(where, "expected an unsigned 64-bit integer")
    return value


def _obj(data, where) -> dict:
    if not isinstance(data, dict):
        raise ConfigError(where, "expected an object")
    return data


def _price(data, where) -> PriceDistribution:
    if isinstance(data, str):
        data = {"kind": data}
    data = dict(_obj(data, where))
    kwargs = {"kind": data.pop("kind", "uniform")}
    for key in ("low", "high", "mean", "sd", "shape", "scale"):
        if key in data:
            kwargs[key] = float(_rat(data.pop(key), f"{where}.{key}"))
    if data:
        raise ConfigError(f"{where}.{sorted(data)[0]}", "unknown key")
    try:
        return PriceDistribution(**kwargs)
    except ValueError as exc:
        raise ConfigError(where, str(exc)) from None


def _bahncard(data) -> BahncardConfig:
    data = _obj(data, "config")
    values = {}
    for key in ("C", "beta", "T"):
        if key not in data:
            raise ConfigError(f"config.{key}", "missing")
        values[key] = _rat(data[key], f"config.{key}")
    try:
        return BahncardConfig(**values)
    except ValueError as exc:
        msg = str(exc)
        key = "C" if msg.startswith("card") else "beta" if "beta" in msg else "T"
        raise ConfigError(f"config.{key}", msg) from None


def _profile(data) -> ProfileParams:
    data = _obj(data, "profile")
    kind = data.get("profile", "commuter")
    horizon = data.get("horizon_days", 2000)
    if isinstance(horizon, bool) or not isinstance(horizon, int) or horizon < 1:
        raise ConfigError("profile.horizon_days", "expected a positive integer")
    gap = _rat(data.get("gap_mean", 2), "profile.gap_mean")
    if gap <= 0:
        raise ConfigError("profile.gap_mean", "must be positive")
    if kind not in ("commuter", "occasional"):
        raise ConfigError("profile.profile", f"unknown profile {kind!r}")
    price = _price(data.get("price_dist", "uniform"), "profile.price_dist")
    seed = _seed(data.get("rng_seed", 0), "profile.rng_seed")
    return ProfileParams(kind, horizon, gap, price, seed)


def _algorithms(data) -> Tuple[AlgorithmSpec, ...]:
    if not isinstance(data, list):
        raise ConfigError("algorithms", "expected a list")
    out = []
    for i, item in enumerate(data):
        where = f"algorithms[{i}]"
        try:
            if isinstance(item, str):
                out.append(AlgorithmSpec.parse(item))
            else:
                item = dict(_obj(item, where))
                out.append(AlgorithmSpec(item.pop("kind"), **item))
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(where, str(exc)) from None
    return tuple(out)


def _perturbations(data) -> Tuple[Rational, ...]:
    if isinstance(data, dict):
        start = _rat(data.get("start", 0), "perturbations.start")
        stop = _rat(data.get("stop", 1), "perturbations.stop")
        step = _rat(data.get("step", "0.1"), "perturbations.step")
        if step <= 0:
            raise ConfigError("perturbations.step", "must be positive")
        values, v = [], start
        while v <= stop:
            values.append(v)
            v = rational(v + step)
        return tuple(values)
    if not isinstance(data, list):
        raise ConfigError("perturbations", "expected a list or a start/stop/step object")
    return tuple(_rat(v, f"perturbations[{i}]") for i, v in enumerate(data))


def config_from_dict(data) -> ExperimentConfig:
    data = _obj(data, "<root>")
    known = {"config", "profile", "algorithms", "perturbations", "runs_per_point", "base_seed", "perturbation"}
    for key in data:
        if key not in known:
            raise ConfigError(key, "unknown key")
    for key in ("config", "algorithms", "perturbations"):
        if key not in data:
            raise ConfigError(key, "missing")
    runs = data.get("runs_per_point", 100)
    if isinstance(runs, bool) or not isinstance(runs, int):
        raise ConfigError("runs_per_point", "expected a positive integer")
    pert = _obj(data.get("perturbation", {}), "perturbation")
    order = pert.get("order", REMOVE_FIRST)
    if order not in ("remove_first", "noise_first"):
        raise ConfigError("perturbation.order", f"unknown order {order!r}")
    streams = pert.get("streams", "shared")
    if streams not in ("shared", "independent"):
        raise ConfigError("perturbation.streams", f"unknown streams mode {streams!r}")
    noise = _price(pert["noise"], "perturbation.noise") if "noise" in pert else None
    return ExperimentConfig(
        config=_bahncard(data["config"]),
        profile=_profile(data.get("profile", {})),
        algorithms=_algorithms(data["algorithms"]),
        perturbations=_perturbations(data["perturbations"]),
        runs_per_point=runs,
        base_seed=_seed(data.get("base_seed", 0), "base_seed"),
        noise=noise,
        order=order,
        streams=streams,
    )


def load_config(path) -> ExperimentConfig:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError("config-file", str(exc)) from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError("json", f"line {exc.lineno}: {exc.msg}") from None
    return config_from_dict(data)
