"""Finite quandles as operation tables.

A finite quandle on elements 0..n-1 is an n-by-n table with table[x][y] = x*y
satisfying idempotence (Q1), bijectivity of every right translation (Q2), and
right self-distributivity (Q3).  Construction always verifies the axioms; the
inverse operation table is derived from the columns, never trusted.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from itertools import combinations, product

import numpy as np

TABLE_SCHEMA = "quandlekit/table-v1"

#: default ceiling on exhaustive homomorphism / isomorphism searches
SEARCH_BUDGET = 10**7


class SearchBudgetExceeded(RuntimeError):
    """Raised when an exhaustive search would exceed its candidate budget."""


@dataclass
class AxiomReport:
    """Outcome of checking a candidate table against the quandle axioms.

    ``malformed`` lists structural problems (non-square table, out-of-range
    entries); the axiom fields are only populated for well-formed tables.
    """

    size: int = 0
    malformed: list[str] = field(default_factory=list)
    q1_failures: list[int] = field(default_factory=list)
    q2_failures: list[int] = field(default_factory=list)  # offending columns
    q3_failures: list[tuple[int, int, int]] = field(default_factory=list)

    @property
    def is_quandle(self) -> bool:
        return not (
            self.malformed or self.q1_failures or self.q2_failures or self.q3_failures
        )

    def summary(self) -> str:
        if self.is_quandle:
            return f"valid quandle of order {self.size}"
        parts = []
        if self.malformed:
            parts.append(f"malformed: {'; '.join(self.malformed)}")
        if self.q1_failures:
            parts.append(f"Q1 fails at x in {self.q1_failures}")
        if self.q2_failures:
            parts.append(f"Q2 fails at columns {self.q2_failures}")
        if self.q3_failures:
            shown = self.q3_failures[:10]
            more = "" if len(self.q3_failures) <= 10 else f" (+{len(self.q3_failures) - 10} more)"
            parts.append(f"Q3 fails at triples {shown}{more}")
        return "; ".join(parts)


def validate_axioms(rows) -> AxiomReport:
    """Check an arbitrary candidate table; every violation is reported."""
    report = AxiomReport()
    try:
        table = [list(row) for row in rows]
    except TypeError:
        report.malformed.append("table is not a sequence of rows")
        return report
    n = len(table)
    report.size = n
    if n == 0:
        report.malformed.append("table is empty")
        return report
    for i, row in enumerate(table):
        if len(row) != n:
            report.malformed.append(f"row {i} has length {len(row)}, expected {n}")
        for j, v in enumerate(row):
            if not isinstance(v, (int, np.integer)) or isinstance(v, bool):
                report.malformed.append(f"entry ({i},{j}) is not an integer")
            elif not 0 <= v < n:
                report.malformed.append(f"entry ({i},{j}) = {v} out of range")
    if report.malformed:
        return report

    t = np.asarray(table, dtype=np.int64)
    report.q1_failures = [int(x) for x in np.flatnonzero(t.diagonal() != np.arange(n))]
    for y in range(n):
        if len(set(t[:, y].tolist())) != n:
            report.q2_failures.append(y)
    # Q3: t[t[x,y],z] == t[t[x,z], t[y,z]] for all triples
    lhs = t[t, :]
    rhs = np.empty((n, n, n), dtype=np.int64)
    for z in range(n):
        col = t[:, z]
        rhs[:, :, z] = t[np.ix_(col, col)]
    bad = np.argwhere(lhs != rhs)
    report.q3_failures = [tuple(int(v) for v in triple) for triple in bad]
    return report


class FiniteQuandle:
    """An immutable finite quandle given by its operation table."""

    __slots__ = ("_table", "_inv", "_labels", "_np")

    def __init__(self, rows, labels=None) -> None:
        report = validate_axioms(rows)
        if not report.is_quandle:
            raise ValueError(f"not a quandle: {report.summary()}")
        table = tuple(tuple(int(v) for v in row) for row in rows)
        n = len(table)
        inv = [[0] * n for _ in range(n)]
        for y in range(n):
            for x in range(n):
                inv[table[x][y]][y] = x
        if labels is not None:
            labels = tuple(str(s) for s in labels)
            if len(labels) != n:
                raise ValueError("labels length must match table size")
        object.__setattr__(self, "_table", table)
        object.__setattr__(self, "_inv", tuple(tuple(r) for r in inv))
        object.__setattr__(self, "_labels", labels)
        object.__setattr__(self, "_np", np.asarray(table, dtype=np.int64))

    def __setattr__(self, name, value):
        raise AttributeError("FiniteQuandle is immutable")

    @property
    def size(self) -> int:
        return len(self._table)

    def __len__(self):
        return len(self._table)

    @property
    def table(self) -> tuple[tuple[int, ...], ...]:
        return self._table

    @property
    def inverse_table(self) -> tuple[tuple[int, ...], ...]:
        return self._inv

    @property
    def labels(self) -> tuple[str, ...] | None:
        return self._labels

    def label_of(self, x: int) -> str:
        return self._labels[x] if self._labels else str(x)

    def op(self, x: int, y: int) -> int:
        return self._table[x][y]

    def inv_op(self, x: int, y: int) -> int:
        """The unique z with z * y = x."""
        return self._inv[x][y]

    def op_pow(self, x: int, y: int, k: int) -> int:
        """Apply the right translation by y (or its inverse) k times to x.

        The translation is a permutation, so k is reduced modulo the length
        of the cycle through x; arbitrarily large exponents stay cheap.
        """
        cycle = [x]
        cur = self._table[x][y]
        while cur != x:
            cycle.append(cur)
            cur = self._table[cur][y]
        return cycle[k % len(cycle)]

    def __eq__(self, other):
        if not isinstance(other, FiniteQuandle):
            return NotImplemented
        return self._table == other._table

    def __hash__(self):
        return hash(self._table)

    def __repr__(self):
        return f"FiniteQuandle(order={self.size})"

    # -- serialization ---------------------------------------------------

    def to_json(self) -> str:
        payload = {"schema": TABLE_SCHEMA, "n": self.size,
                   "table": [list(r) for r in self._table]}
        if self._labels:
            payload["labels"] = list(self._labels)
        return json.dumps(payload, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "FiniteQuandle":
        data = json.loads(text)
        if not isinstance(data, dict) or "table" not in data:
            raise ValueError("table JSON must be an object with a 'table' key")
        schema = data.get("schema", TABLE_SCHEMA)
        if schema != TABLE_SCHEMA:
            raise ValueError(f"unsupported schema {schema!r}")
        n = data.get("n", len(data["table"]))
        if n != len(data["table"]):
            raise ValueError("declared size does not match table")
        return cls(data["table"], labels=data.get("labels"))

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        for row in self._table:
            writer.writerow(row)
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "FiniteQuandle":
        rows = [[int(v) for v in row] for row in csv.reader(io.StringIO(text)) if row]
        return cls(rows)

    def to_gap(self) -> str:
        """The table as a GAP list-of-lists with 1-based entries."""
        inner = ",\n  ".join(
            "[" + ", ".join(str(v + 1) for v in row) + "]" for row in self._table
        )
        return f"[ {inner} ]"


def trivial(n: int) -> FiniteQuandle:
    """The trivial quandle: x * y = x."""
    if n < 1:
        raise ValueError("order must be >= 1")
    return FiniteQuandle([[x] * n for x in range(n)])


def dihedral(n: int) -> FiniteQuandle:
    """The dihedral quandle on Z/n: i * j = 2j - i (mod n)."""
    if n < 1:
        raise ValueError("order must be >= 1")
    return FiniteQuandle([[(2 * j - i) % n for j in range(n)] for i in range(n)])


def subquandle_generated(q: FiniteQuandle, seeds) -> frozenset[int]:
    """Least subset containing ``seeds`` closed under * and its inverse."""
    seeds = sorted(set(seeds))
    if not seeds:
        raise ValueError("seed set must be nonempty")
    n = q.size
    for s in seeds:
        if not 0 <= s < n:
            raise ValueError(f"seed {s} out of range")
    members = set(seeds)
    frontier = list(seeds)
    while frontier:
        fresh = []
        snapshot = list(members)
        for a in frontier:
            for b in snapshot:
                for c in (q.op(a, b), q.inv_op(a, b), q.op(b, a), q.inv_op(b, a)):
                    if c not in members:
                        members.add(c)
                        fresh.append(c)
        frontier = fresh
    return frozenset(members)


def is_connected(q: FiniteQuandle) -> bool:
    """True iff the right translations act transitively."""
    n = q.size
    if n == 1:
        return True
    orbit = {0}
    frontier = [0]
    while frontier:
        fresh = []
        for x in frontier:
            for y in range(n):
                for z in (q.op(x, y), q.inv_op(x, y)):
                    if z not in orbit:
                        orbit.add(z)
                        fresh.append(z)
        frontier = fresh
    return len(orbit) == n


@dataclass(frozen=True)
class QuandleMap:
    """A map between finite quandles, given elementwise."""

    source: FiniteQuandle
    target: FiniteQuandle
    images: tuple[int, ...]

    def __post_init__(self):
        if len(self.images) != self.source.size:
            raise ValueError("image array length must match source order")

    def __call__(self, x: int) -> int:
        return self.images[x]

    def is_homomorphism(self) -> bool:
        f, s, t = self.images, self.source, self.target
        return all(
            f[s.op(x, y)] == t.op(f[x], f[y])
            for x in range(s.size)
            for y in range(s.size)
        )

    def is_surjective(self) -> bool:
        return len(set(self.images)) == self.target.size

    def is_bijective(self) -> bool:
        return self.is_surjective() and self.source.size == self.target.size

    def fibers(self) -> dict[int, tuple[int, ...]]:
        out: dict[int, list[int]] = {}
        for x, y in enumerate(self.images):
            out.setdefault(y, []).append(x)
        return {y: tuple(xs) for y, xs in sorted(out.items())}


def generating_set(q: FiniteQuandle) -> tuple[int, ...]:
    """A smallest generating set, found by increasing size in lexicographic order."""
    n = q.size
    for size in range(1, n + 1):
        for combo in combinations(range(n), size):
            if len(subquandle_generated(q, combo)) == n:
                return combo
    return tuple(range(n))  # unreachable: the full set always generates


def _derivation(q: FiniteQuandle, gens: tuple[int, ...]):
    """BFS order deriving every element from the generators.

    Returns a list of (element, recipe) where recipe is None for a generator
    and (x, y, sign) meaning element = x * y (sign=+1) or x *^{-1} y (-1).
    Elements of q outside the generated subquandle do not appear.
    """
    order: list[tuple[int, tuple | None]] = [(g, None) for g in gens]
    seen = set(gens)
    changed = True
    while changed:
        changed = False
        members = [e for e, _ in order]
        for x in members:
            for y in members:
                for sign in (1, -1):
                    z = q.op(x, y) if sign == 1 else q.inv_op(x, y)
                    if z not in seen:
                        seen.add(z)
                        order.append((z, (x, y, sign)))
                        changed = True
    return order


def _extend_map(q: FiniteQuandle, k: FiniteQuandle, derivation, gen_images):
    """Propagate generator images through a derivation; returns the full map."""
    img: dict[int, int] = {}
    for (elem, recipe), g_img in zip(
        (d for d in derivation if d[1] is None), gen_images, strict=True
    ):
        img[elem] = g_img
    for elem, recipe in derivation:
        if recipe is None:
            continue
        x, y, sign = recipe
        img[elem] = k.op(img[x], img[y]) if sign == 1 else k.inv_op(img[x], img[y])
    return img


def _is_homomorphic(q: FiniteQuandle, k: FiniteQuandle, img: dict[int, int]) -> bool:
    op_q, op_k = q.op, k.op
    for x in img:
        fx = img[x]
        for y in img:
            if img[op_q(x, y)] != op_k(fx, img[y]):
                return False
    return True


def all_homomorphisms(
    q: FiniteQuandle, k: FiniteQuandle, budget: int = SEARCH_BUDGET
) -> list[QuandleMap]:
    """Every homomorphism q -> k, in lexicographic order of generator images.

    Exhaustive over assignments of a fixed minimal generating set; raises
    SearchBudgetExceeded if that would take more than ``budget`` candidates.
    """
    gens = generating_set(q)
    candidates = k.size ** len(gens)
    if candidates > budget:
        raise SearchBudgetExceeded(
            f"{candidates} candidate assignments exceed budget {budget}"
        )
    derivation = _derivation(q, gens)
    out = []
    for gen_images in product(range(k.size), repeat=len(gens)):
        img = _extend_map(q, k, derivation, gen_images)
        if len(img) == q.size and _is_homomorphic(q, k, img):
            out.append(QuandleMap(q, k, tuple(img[x] for x in range(q.size))))
    return out


def find_isomorphism(
    q: FiniteQuandle, k: FiniteQuandle, budget: int = SEARCH_BUDGET
) -> QuandleMap | None:
    """First isomorphism q -> k in lexicographic search order, or None."""
    if q.size != k.size:
        return None
    gens = generating_set(q)
    candidates = k.size ** len(gens)
    if candidates > budget:
        raise SearchBudgetExceeded(
            f"{candidates} candidate assignments exceed budget {budget}"
        )
    derivation = _derivation(q, gens)
    for gen_images in product(range(k.size), repeat=len(gens)):
        img = _extend_map(q, k, derivation, gen_images)
        if len(img) != q.size or len(set(img.values())) != k.size:
            continue
        if _is_homomorphic(q, k, img):
            return QuandleMap(q, k, tuple(img[x] for x in range(q.size)))
    return None
