"""Enumeration of finitely presented quandles.

``enumerate_presented`` drives a closure kernel over a presentation and
either returns the presented finite quandle (with the generator images) or
reports that the live-element cap was exceeded.  Exceeding the cap is
evidence of growth, never a proof of infinitude.

Two interchangeable kernels exist: a compiled extension and a pure-Python
twin.  The compiled one is used when importable; set QUANDLEKIT_PURE_PYTHON=1
to force the fallback.  Both are deterministic and produce identical results.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from . import _enum_py
from .finite import FiniteQuandle, subquandle_generated
from .presentations import Presentation, evaluate_in, relation_programs

_BACKENDS = {"pure": _enum_py.run_enumeration}
if not os.environ.get("QUANDLEKIT_PURE_PYTHON"):
    try:
        from . import _enumcore

        _BACKENDS["compiled"] = _enumcore.run_enumeration
    except ImportError:
        pass

DEFAULT_BACKEND = "compiled" if "compiled" in _BACKENDS else "pure"


def available_backends() -> tuple[str, ...]:
    return tuple(sorted(_BACKENDS))


def active_backend() -> str:
    return DEFAULT_BACKEND


@dataclass(frozen=True)
class EnumerationResult:
    """Outcome of enumerating a presentation.

    ``closed`` outcome: ``quandle`` is the presented quandle and ``images``
    maps each generator (by position) to its element.  ``cap-exceeded``
    outcome: ``live_history`` shows the live-element count after each pass.
    """

    outcome: str  # "closed" | "cap-exceeded"
    quandle: FiniteQuandle | None
    images: tuple[int, ...] | None
    live_history: tuple[int, ...]
    definitions: int
    coincidences: int
    passes: int
    backend: str

    @property
    def closed(self) -> bool:
        return self.outcome == "closed"

    @property
    def order(self) -> int | None:
        return self.quandle.size if self.quandle is not None else None

    def to_json_dict(self) -> dict:
        out = {
            "schema": "quandlekit/enumeration-v1",
            "outcome": self.outcome,
            "order": self.order,
            "statistics": {
                "definitions": self.definitions,
                "coincidences": self.coincidences,
                "passes": self.passes,
            },
            "live_history": list(self.live_history),
        }
        if self.images is not None:
            out["generator_images"] = list(self.images)
        return out


def enumerate_presented(
    p: Presentation, cap: int = 5000, backend: str | None = None
) -> EnumerationResult:
    """Close the presentation into a finite table, or stop at ``cap`` live
    elements.

    A closed result is verified before it is returned: the table satisfies
    the quandle axioms, every relation holds under the generator images, and
    the images generate the whole table.  These cannot fail for a correct
    kernel; a failure raises RuntimeError rather than returning a bad table.
    """
    if cap < len(p.generators):
        raise ValueError("cap must be at least the number of generators")
    name = backend or DEFAULT_BACKEND
    try:
        runner = _BACKENDS[name]
    except KeyError:
        raise ValueError(
            f"unknown backend {name!r}; available: {available_backends()}"
        ) from None
    raw = runner(len(p.generators), relation_programs(p), cap)
    if not raw["closed"]:
        return EnumerationResult(
            outcome="cap-exceeded",
            quandle=None,
            images=None,
            live_history=tuple(raw["live_history"]),
            definitions=raw["definitions"],
            coincidences=raw["coincidences"],
            passes=raw["passes"],
            backend=name,
        )
    quandle = FiniteQuandle(raw["table"])  # validates Q1-Q3 exhaustively
    images = tuple(raw["images"])
    assignment = dict(zip(p.generators, images))
    for i, (lhs, rhs) in enumerate(p.relations):
        if evaluate_in(quandle, lhs, assignment) != evaluate_in(quandle, rhs, assignment):
            raise RuntimeError(f"enumerator defect: relation {i} fails in closed table")
    if len(subquandle_generated(quandle, images)) != quandle.size:
        raise RuntimeError("enumerator defect: generator images do not generate")
    return EnumerationResult(
        outcome="closed",
        quandle=quandle,
        images=images,
        live_history=tuple(raw["live_history"]),
        definitions=raw["definitions"],
        coincidences=raw["coincidences"],
        passes=raw["passes"],
        backend=name,
    )
