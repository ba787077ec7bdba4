"""Piecewise-linear weight functions alpha: (0, inf) -> (0, inf)."""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ConfigError, UnboundedD

KINDS = ("identity", "shifted", "linear", "piecewise")


@dataclass(frozen=True)
class AlphaConstants:
    lip: float       # Lip(alpha)
    dconst: float    # sup_t t / alpha(t)
    kconst: float    # lip * dconst
    alpha0: float    # limit of alpha(t) as t -> 0+

    @property
    def product_constant(self) -> float:
        """D(alpha) (K(alpha) + 2), the submultiplicativity constant."""
        return self.dconst * (self.kconst + 2.0)


@dataclass(frozen=True)
class WeightFunction:
    """alpha interpolates ``breakpoints`` (first knot at t = 0) and then
    continues with slope ``final_slope``."""

    kind: str
    breakpoints: tuple[tuple[float, float], ...]
    final_slope: float
    c: float | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown weight kind {self.kind!r}")
        bp = tuple((float(t), float(v)) for t, v in self.breakpoints)
        if not bp or bp[0][0] != 0.0:
            raise ValueError("the first breakpoint must sit at t = 0")
        ts = [t for t, _ in bp]
        if any(b <= a for a, b in zip(ts, ts[1:])):
            raise ValueError("breakpoints must be strictly increasing in t")
        if bp[0][1] < 0 or any(v <= 0 for _, v in bp[1:]):
            raise ValueError("alpha must be positive on (0, inf)")
        if len(bp) == 1 and bp[0][1] == 0 and self.final_slope <= 0:
            raise ValueError("alpha must be positive on (0, inf)")
        object.__setattr__(self, "breakpoints", bp)
        object.__setattr__(self, "final_slope", float(self.final_slope))

    @classmethod
    def identity(cls) -> "WeightFunction":
        return cls("identity", ((0.0, 0.0),), 1.0)

    @classmethod
    def shifted(cls) -> "WeightFunction":
        return cls("shifted", ((0.0, 1.0),), 1.0)

    @classmethod
    def linear(cls, c: float) -> "WeightFunction":
        if c <= 0:
            raise ValueError("linear weight needs c > 0")
        return cls("linear", ((0.0, 0.0),), c, c=float(c))

    @classmethod
    def piecewise(cls, breakpoints, final_slope: float) -> "WeightFunction":
        return cls("piecewise", tuple(map(tuple, breakpoints)), final_slope)

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        ts = np.array([b[0] for b in self.breakpoints])
        vs = np.array([b[1] for b in self.breakpoints])
        inner = np.interp(t, ts, vs)
        outer = vs[-1] + self.final_slope * (t - ts[-1])
        out = np.where(t <= ts[-1], inner, outer)
        return float(out) if out.ndim == 0 else out

    def slopes(self) -> list[float]:
        bp = self.breakpoints
        s = [(v1 - v0) / (t1 - t0) for (t0, v0), (t1, v1) in zip(bp, bp[1:])]
        return s + [self.final_slope]

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.kind == "linear":
            out["c"] = self.c
        if self.kind == "piecewise":
            out["breakpoints"] = [list(b) for b in self.breakpoints]
            out["final_slope"] = self.final_slope
        return out

    @classmethod
    def from_json(cls, data: dict) -> "WeightFunction":
        kind = data.get("kind")
        if kind == "identity":
            return cls.identity()
        if kind == "shifted":
            return cls.shifted()
        if kind == "linear":
            return cls.linear(float(data["c"]))
        if kind == "piecewise":
            return cls.piecewise(data["breakpoints"], float(data["final_slope"]))
        raise ConfigError(f"unknown weight kind {kind!r}")

    def describe(self) -> str:
        if self.kind == "linear":
            return f"linear:{self.c:g}"
        if self.kind == "piecewise":
            return "piecewise:" + json.dumps(self.to_json(), sort_keys=True)
        return self.kind


def parse_alpha(spec: str) -> WeightFunction:
    """``identity`` | ``shifted`` | ``linear:<c>`` | ``file:<path>``."""
    try:
        if spec in ("identity", "shifted"):
            return WeightFunction.from_json({"kind": spec})
        if spec.startswith("linear:"):
            return WeightFunction.linear(float(spec.split(":", 1)[1]))
        if spec.startswith("file:"):
            return WeightFunction.from_json(json.loads(Path(spec[5:]).read_text()))
    except (ValueError, KeyError, OSError) as exc:
        raise ConfigError(f"bad alpha spec {spec!r}: {exc}") from exc
    raise ConfigError(f"bad alpha spec {spec!r}")


def alpha_constants(alpha: WeightFunction) -> AlphaConstants:
    """Lip, D, K and alpha(0+) of a piecewise-linear weight.

    On a linear piece a + b t, t / alpha(t) is monotone, so its supremum sits
    at a knot or in a limit (t -> 0+ or t -> inf).
    """
    s_inf = alpha.final_slope
    if s_inf <= 0:
        raise UnboundedD(f"final slope {s_inf} <= 0: t/alpha(t) is unbounded or alpha turns negative")
    slopes = alpha.slopes()
    lip = max(abs(s) for s in slopes)
    t0, v0 = alpha.breakpoints[0]
    cands = [1.0 / s_inf]
    if v0 == 0.0:
        cands.append(1.0 / slopes[0])
    cands += [t / v for t, v in alpha.breakpoints[1:]]
    dconst = max(cands)
    return AlphaConstants(lip, dconst, lip * dconst, v0)


def theorem_a_constant(alpha: WeightFunction, p: float = 1.0) -> float:
    """Bound on ||P|| ||Q|| for the F_p isomorphism with B(M, alpha).

    Only the formula; p-norms with p < 1 are not computed anywhere.
    """
    if not 0 < p <= 1:
        raise ValueError("p must lie in (0, 1]")
    K = alpha_constants(alpha).kconst
    if p == 1:
        return 1.0 + 2.0 * K
    return (1.0 + K ** p) ** (1.0 / p) * (1.0 + 2.0 * K ** p) ** (1.0 / p)
