"""Built-in scenes for the worked examples, each with a closed-form oracle.

Oracles map (s, t) to the surface point written out by hand, so comparing
them with :func:`~nullpencil.surface.evaluate_surface` checks the whole
construction pipeline.

``ex31c`` is special: the published closed form has ``cos(s)(1 + t)`` in its
last component, but substituting x = t, y = 0, z = t into the construction
with the published frame gives ``cos(s)(1 - t)``. The oracle uses the latter;
the printed expression is kept as ``printed_oracle`` for comparison.
"""

from __future__ import annotations

import copy
import math
from dataclasses import dataclass
from typing import Callable, Optional

from .scene import Scene, scene_from_dict

__all__ = ["Preset", "PRESETS", "get_preset", "preset_names"]

Oracle = Callable[[float, float], tuple[float, float, float]]

_CIRCLE_CURVE = {
    "components": ["s", "sin(s)", "cos(s)"],
    "domain": [0, "2*pi"],
    "frame": {
        "l": ["1", "cos(s)", "-sin(s)"],
        "n": ["1/2", "-1/2*cos(s)", "1/2*sin(s)"],
        "u": ["0", "-sin(s)", "-cos(s)"],
    },
}

_CUBIC_CURVE = {
    "components": [
        "-sqrt(2)/12*s^3 - sqrt(2)/2*s",
        "-s^2/2",
        "-sqrt(2)/12*s^3 + sqrt(2)/2*s",
    ],
    "domain": [-4, 4],
    "frame": {
        "l": ["-sqrt(2)/4*s^2 - sqrt(2)/2", "-s", "-sqrt(2)/4*s^2 + sqrt(2)/2"],
        "n": ["-sqrt(2)/2", "0", "-sqrt(2)/2"],
        "u": ["-sqrt(2)/2*s", "-1", "-sqrt(2)/2*s"],
    },
}


def _product(k, m, w, X, Y, Z) -> dict:
    return {"form": "product", "k": k, "m": m, "w": w, "X": X, "Y": Y, "Z": Z}


def _doc(name, description, curve, marching, t_domain, domain=None) -> dict:
    c = copy.deepcopy(curve)
    if domain is not None:
        c["domain"] = domain
    return {
        "schema_version": 1,
        "name": name,
        "description": description,
        "curve": c,
        "marching": marching,
        "t0": 0,
        "t_domain": t_domain,
        "grid": {"n_s": 64, "n_t": 32},
        "samples": 256,
    }


def _ex31a(s, t):
    return (s + t, math.sin(s) + t * math.cos(s), math.cos(s) - t * math.sin(s))


def _ex31b(s, t):
    return (
        s + t**2,
        math.sin(s) * (1 - t) + t**2 * math.cos(s),
        math.cos(s) * (1 - t) - t**2 * math.sin(s),
    )


def _ex31c(s, t):
    return (s + t, math.sin(s) * (1 - t) + t * math.cos(s), math.cos(s) * (1 - t) - t * math.sin(s))


def _ex31c_printed(s, t):
    return (s + t, math.sin(s) * (1 - t) + t * math.cos(s), math.cos(s) * (1 + t) - t * math.sin(s))


def _ex31d(s, t):
    return (
        s + s * t + 0.5 * s * t**2,
        s * t * math.cos(s) + math.sin(s) - 0.5 * s * t**2 * math.cos(s) - t**2 * math.sin(s),
        math.cos(s) - s * t * math.sin(s) + 0.5 * s * t**2 * math.sin(s) - t**2 * math.cos(s),
    )


def _ex32(s, t):
    r2 = math.sqrt(2.0)
    return (
        -r2 / 12 * s**3 - r2 / 2 * s - t * s,
        -(s**2) / 2 - 2 / r2 * t,
        -r2 / 12 * s**3 + r2 / 2 * s - t * s,
    )


def _counter(s, t):
    # y = t along n(s)
    return (s + t / 2, math.sin(s) - t / 2 * math.cos(s), math.cos(s) + t / 2 * math.sin(s))


@dataclass(frozen=True)
class Preset:
    name: str
    document: dict
    oracle: Oracle
    asymptotic: bool = True
    printed_oracle: Optional[Oracle] = None

    @property
    def scene(self) -> Scene:
        return scene_from_dict(copy.deepcopy(self.document))

    @property
    def description(self) -> str:
        return self.document.get("description", "")


PRESETS: dict[str, Preset] = {
    p.name: p
    for p in (
        Preset(
            "ex31a",
            _doc(
                "ex31a",
                "circular-helix null curve (s, sin s, cos s); x = t, y = z = 0",
                _CIRCLE_CURVE,
                _product("1", "0", "0", "t", "0", "0"),
                [-3, 3],
            ),
            _ex31a,
        ),
        Preset(
            "ex31b",
            _doc(
                "ex31b",
                "helix null curve; x = t^2, y = 0, z = t",
                _CIRCLE_CURVE,
                _product("1", "0", "1", "t^2", "0", "t"),
                [0, 0.6],
            ),
            _ex31b,
        ),
        Preset(
            "ex31c",
            _doc(
                "ex31c",
                "helix null curve; x = t, y = 0, z = t. Oracle uses cos(s)(1-t) in the last "
                "component; the published closed form prints cos(s)(1+t), which does not lie "
                "on the constructed surface for t != 0",
                _CIRCLE_CURVE,
                _product("1", "0", "1", "t", "0", "t"),
                [0, 0.6],
            ),
            _ex31c,
            printed_oracle=_ex31c_printed,
        ),
        Preset(
            "ex31d",
            _doc(
                "ex31d",
                "helix null curve over [0, 6 pi]; polynomial form x = st, y = st^2, z = t^2",
                _CIRCLE_CURVE,
                {
                    "form": "polynomial",
                    "a1": [1],
                    "a2": [1],
                    "a3": [1],
                    "k": "s",
                    "m": "s",
                    "w": "1",
                    "X": "t",
                    "Y": "t^2",
                    "Z": "t^2",
                },
                [0, 0.6],
                domain=[0, "6*pi"],
            ),
            _ex31d,
        ),
        Preset(
            "ex32",
            _doc(
                "ex32",
                "null cubic; x = y = 0, z = (2/sqrt 2) t",
                _CUBIC_CURVE,
                _product("0", "0", "2/sqrt(2)", "0", "0", "t"),
                [-10, 10],
            ),
            _ex32,
        ),
        Preset(
            "counterexample",
            _doc(
                "counterexample",
                "helix null curve with custom y = t: isoparametric but not asymptotic",
                _CIRCLE_CURVE,
                {"form": "custom", "x": "0", "y": "t", "z": "0"},
                [-1, 1],
            ),
            _counter,
            asymptotic=False,
        ),
    )
}


def preset_names() -> list[str]:
    return list(PRESETS)


def get_preset(name: str) -> Preset:
    try:
        return PRESETS[name]
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}") from None
