"""Quandle presentations: expressions, parsing, evaluation, Tietze moves.

A presentation is a list of generator symbols plus relations between ground
expressions built from the generators with * and *^k.  Relations are pairs of
expression trees; the presented quandle is the quotient of the free quandle
by the consequence closure of the relations.

Generator elimination keeps relations in a canonical form: each side is taken
to its free-quandle normal form and the pair is shortened by right-translation
moves (which are invertible consequences), so the output matches the shapes a
human would write.  Relations that become derivable from the remaining ones
are detected by a bounded joinability search over the same moves and dropped.
"""

from __future__ import annotations

import re
from collections.abc import Mapping
from dataclasses import dataclass

from .finite import FiniteQuandle, subquandle_generated
from .free import FreeQuandleElement, invert_word, reduce_word

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int) -> None:
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Gen:
    """A generator leaf."""

    name: str


@dataclass(frozen=True)
class Op:
    """x *^k y; power +1 is *, power -1 is the inverse operation."""

    left: "Expr"
    right: "Expr"
    power: int = 1

    def __post_init__(self):
        if self.power == 0:
            raise ValueError("operation power must be nonzero")


Expr = Gen | Op
Relation = tuple[Expr, Expr]


def expr_leaves(expr: Expr) -> set[str]:
    if isinstance(expr, Gen):
        return {expr.name}
    return expr_leaves(expr.left) | expr_leaves(expr.right)


def expr_to_str(expr: Expr) -> str:
    """Render with the minimal parentheses of left-associative binding."""
    if isinstance(expr, Gen):
        return expr.name
    op = "*" if expr.power == 1 else f"*^{expr.power}"
    left = expr_to_str(expr.left)
    right = expr_to_str(expr.right)
    if isinstance(expr.right, Op):
        right = f"({right})"
    return f"{left} {op} {right}"


def substitute(expr: Expr, name: str, replacement: Expr) -> Expr:
    if isinstance(expr, Gen):
        return replacement if expr.name == name else expr
    return Op(
        substitute(expr.left, name, replacement),
        substitute(expr.right, name, replacement),
        expr.power,
    )


def evaluate(expr: Expr, images: Mapping, op, inv_op, pow_op=None):
    """Evaluate an expression under images of the generators.

    ``op``/``inv_op`` are binary callables; ``pow_op(x, y, k)``, when given,
    handles the k-fold translation directly (finite quandles use their cycle
    shortcut there).
    """
    if isinstance(expr, Gen):
        try:
            return images[expr.name]
        except KeyError:
            raise ValueError(f"no image for generator {expr.name!r}") from None
    x = evaluate(expr.left, images, op, inv_op, pow_op)
    y = evaluate(expr.right, images, op, inv_op, pow_op)
    k = expr.power
    if pow_op is not None:
        return pow_op(x, y, k)
    step = op if k > 0 else inv_op
    for _ in range(abs(k)):
        x = step(x, y)
    return x


def evaluate_in(q: FiniteQuandle, expr: Expr, images: Mapping[str, int]) -> int:
    return evaluate(expr, images, q.op, q.inv_op, q.op_pow)


# -- presentations ---------------------------------------------------------


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relations: tuple[Relation, ...]

    def __post_init__(self):
        if not self.generators:
            raise ValueError("presentation needs at least one generator")
        if len(set(self.generators)) != len(self.generators):
            raise ValueError("generator names must be unique")
        for name in self.generators:
            if not _NAME_RE.fullmatch(name):
                raise ValueError(f"bad generator name {name!r}")
        declared = set(self.generators)
        for i, (lhs, rhs) in enumerate(self.relations):
            undeclared = (expr_leaves(lhs) | expr_leaves(rhs)) - declared
            if undeclared:
                raise ValueError(
                    f"relation {i} uses undeclared symbols {sorted(undeclared)}"
                )

    def __str__(self):
        return serialize_presentation(self).rstrip("\n")


def _tokenize(text: str, line_no: int, offset: int):
    """Tokens of one expression/relation body: NAME, STAR(k), '(', ')', '='."""
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        col = offset + i + 1
        if ch.isspace():
            i += 1
        elif ch in "()=":
            tokens.append((ch, None, col))
            i += 1
        elif ch == "*":
            if text[i + 1 : i + 2] == "^":
                m = re.match(r"-?\d+", text[i + 2 :])
                if not m:
                    raise ParseError("expected integer exponent after *^", line_no, col)
                k = int(m.group())
                if k == 0:
                    raise ParseError("zero exponent is not allowed", line_no, col)
                tokens.append(("STAR", k, col))
                i += 2 + m.end()
            else:
                tokens.append(("STAR", 1, col))
                i += 1
        else:
            m = _NAME_RE.match(text, i)
            if not m:
                raise ParseError(f"unexpected character {ch!r}", line_no, col)
            tokens.append(("NAME", m.group(), col))
            i = m.end()
    tokens.append(("END", None, offset + len(text) + 1))
    return tokens


class _ExprParser:
    def __init__(self, tokens, line_no):
        self.tokens = tokens
        self.line_no = line_no
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, message, tok):
        raise ParseError(message, self.line_no, tok[2])

    def parse_expression(self) -> Expr:
        expr = self.parse_term()
        while self.peek()[0] == "STAR":
            _, power, _ = self.take()
            expr = Op(expr, self.parse_term(), power)
        return expr

    def parse_term(self) -> Expr:
        tok = self.take()
        if tok[0] == "NAME":
            return Gen(tok[1])
        if tok[0] == "(":
            expr = self.parse_expression()
            closing = self.take()
            if closing[0] != ")":
                self.fail("expected ')'", closing)
            return expr
        self.fail("expected a generator or '('", tok)


def parse_expression(text: str, line_no: int = 1, offset: int = 0) -> Expr:
    parser = _ExprParser(_tokenize(text, line_no, offset), line_no)
    expr = parser.parse_expression()
    tail = parser.take()
    if tail[0] != "END":
        parser.fail("unexpected trailing input", tail)
    return expr


def _parse_relation(text: str, line_no: int, offset: int) -> Relation:
    parser = _ExprParser(_tokenize(text, line_no, offset), line_no)
    lhs = parser.parse_expression()
    eq = parser.take()
    if eq[0] != "=":
        parser.fail("expected '=' between the two sides of a relation", eq)
    rhs = parser.parse_expression()
    tail = parser.take()
    if tail[0] != "END":
        parser.fail("unexpected trailing input", tail)
    return (lhs, rhs)


def parse_presentation(text: str) -> Presentation:
    """Parse the textual format::

        gens: a c
        rel: (a * c) * a = c
        rel: c *^5 a = c

    Blank lines and '#' comments are ignored.
    """
    generators: list[str] | None = None
    relations: list[Relation] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        if line.startswith("gens:"):
            if generators is not None:
                raise ParseError("duplicate gens: line", line_no, 1)
            generators = line[len("gens:"):].split()
            if not generators:
                raise ParseError("gens: line lists no generators", line_no, 1)
        elif line.startswith("rel:"):
            if generators is None:
                raise ParseError("rel: before gens:", line_no, 1)
            body = line[len("rel:"):]
            relations.append(_parse_relation(body, line_no, len("rel:")))
        else:
            raise ParseError("expected 'gens:' or 'rel:'", line_no, 1)
    if generators is None:
        raise ParseError("missing gens: line", len(text.splitlines()) + 1, 1)
    try:
        return Presentation(tuple(generators), tuple(relations))
    except ValueError as exc:
        raise ParseError(str(exc), len(text.splitlines()) + 1, 1) from None


def serialize_presentation(p: Presentation) -> str:
    lines = ["gens: " + " ".join(p.generators)]
    for lhs, rhs in p.relations:
        lines.append(f"rel: {expr_to_str(lhs)} = {expr_to_str(rhs)}")
    return "\n".join(lines) + "\n"


# -- free-quandle forms -----------------------------------------------------


def expr_to_free(expr: Expr) -> FreeQuandleElement:
    """Normal form of a ground expression in the free quandle."""
    images = {name: FreeQuandleElement(name) for name in expr_leaves(expr)}
    return evaluate(
        expr, images, FreeQuandleElement.op, FreeQuandleElement.inv_op
    )


def free_to_expr(elem: FreeQuandleElement) -> Expr:
    """The left-comb expression of a canonical free-quandle element.

    base^{x1 x2 ... xk} = (...(base * x1) * x2 ...) * xk, with runs of equal
    letters compressed into a single *^k node.
    """
    expr: Expr = Gen(elem.base)
    i = 0
    word = elem.conjugator
    while i < len(word):
        sym, exp = word[i]
        j = i
        while j < len(word) and word[j] == (sym, exp):
            j += 1
        expr = Op(expr, Gen(sym), exp * (j - i))
        i = j
    return expr


def _pair_key(l: FreeQuandleElement, r: FreeQuandleElement):
    a, b = sorted((l.sort_key(), r.sort_key()))
    return (
        l.length + r.length,
        l.negative_letters() + r.negative_letters(),
        a,
        b,
    )


def _neighbor_pairs(l, r, gens):
    """Right-translate both sides by one generator letter (a reversible move)."""
    for sym in gens:
        for exp in (1, -1):
            yield l.extend(((sym, exp),)), r.extend(((sym, exp),))


def canonical_relation(
    lhs: FreeQuandleElement,
    rhs: FreeQuandleElement,
    gens,
    budget: int = 20000,
) -> tuple[FreeQuandleElement, FreeQuandleElement]:
    """Shortest form of a relation under right-translation moves.

    Explores the states reachable without ever increasing the combined
    conjugator length; among those picks the one with the fewest letters,
    preferring positive exponents, and orients it with the more complex side
    on the left.  Falls back to the input if the search budget runs out.
    """
    start = (lhs, rhs)
    seen = {frozenset((lhs, rhs)) if lhs != rhs else (lhs,): start}
    frontier = [start]
    best = start
    best_key = _pair_key(*start)
    examined = 0
    while frontier and examined < budget:
        next_frontier = []
        for l, r in frontier:
            total = l.length + r.length
            for l2, r2 in _neighbor_pairs(l, r, gens):
                if l2.length + r2.length > total:
                    continue
                key = frozenset((l2, r2)) if l2 != r2 else (l2,)
                if key in seen:
                    continue
                seen[key] = (l2, r2)
                examined += 1
                next_frontier.append((l2, r2))
                k = _pair_key(l2, r2)
                if k < best_key:
                    best, best_key = (l2, r2), k
        frontier = next_frontier
    l, r = best
    if r.sort_key() > l.sort_key():
        l, r = r, l
    return l, r


def _rewrite_neighbors(elem, rules):
    """One-step rewrites of ``elem`` by relation instances, never lengthening.

    A rule (u, v) applies to base^w when the bases match: w = conj(u) . t for
    t = reduce(conj(u)^{-1} w), and the result is v extended by t.  Every such
    step is a chain of right-translation consequences of the rule.
    """
    out = []
    for u, v in rules:
        for a, b in ((u, v), (v, u)):
            if elem.base != a.base:
                continue
            t = reduce_word(invert_word(a.conjugator) + elem.conjugator)
            candidate = b.extend(t)
            if candidate.length <= elem.length:
                out.append(candidate)
    return out


def relation_is_consequence(
    lhs: FreeQuandleElement,
    rhs: FreeQuandleElement,
    rules,
    budget: int = 50000,
) -> bool:
    """Bounded check that lhs = rhs follows from ``rules``.

    Sound but not complete: searches for a common element reachable from both
    sides by non-lengthening rewrites.  A False answer only means the search
    did not find a derivation.
    """
    if lhs == rhs:
        return True
    if not rules:
        return False
    sides = [{lhs}, {rhs}]
    frontiers = [[lhs], [rhs]]
    examined = 0
    while (frontiers[0] or frontiers[1]) and examined < budget:
        for side in (0, 1):
            fresh = []
            for elem in frontiers[side]:
                for nxt in _rewrite_neighbors(elem, rules):
                    if nxt in sides[side]:
                        continue
                    sides[side].add(nxt)
                    fresh.append(nxt)
                    examined += 1
                    if nxt in sides[1 - side]:
                        return True
            frontiers[side] = fresh
    return False


def eliminate_generator(p: Presentation, gen: str, rel_index: int) -> Presentation:
    """Remove a generator via a defining relation (an inverse Tietze move).

    The indexed relation must have the shape ``gen = e`` (either orientation)
    with ``e`` not mentioning ``gen``; every other occurrence of ``gen`` is
    replaced by ``e``.  Rewritten relations are put in canonical form, and
    ones that the remaining relations already imply are dropped.
    """
    if gen not in p.generators:
        raise ValueError(f"unknown generator {gen!r}")
    if not 0 <= rel_index < len(p.relations):
        raise ValueError(f"relation index {rel_index} out of range")
    lhs, rhs = p.relations[rel_index]
    if lhs == Gen(gen):
        definition = rhs
    elif rhs == Gen(gen):
        definition = lhs
    else:
        raise ValueError(
            f"relation {rel_index} does not define {gen!r}: "
            "one side must be the bare generator"
        )
    if gen in expr_leaves(definition):
        raise ValueError(f"{gen!r} occurs in its own definition")

    remaining_gens = tuple(g for g in p.generators if g != gen)
    pairs: list[tuple[FreeQuandleElement, FreeQuandleElement]] = []
    for i, (l, r) in enumerate(p.relations):
        if i == rel_index:
            continue
        l2 = substitute(l, gen, definition)
        r2 = substitute(r, gen, definition)
        fl, fr = canonical_relation(
            expr_to_free(l2), expr_to_free(r2), remaining_gens
        )
        if fl == fr:
            continue
        if (fl, fr) not in pairs:
            pairs.append((fl, fr))

    kept: list[tuple[FreeQuandleElement, FreeQuandleElement]] = list(pairs)
    i = 0
    while i < len(kept):
        others = kept[:i] + kept[i + 1 :]
        if relation_is_consequence(kept[i][0], kept[i][1], others):
            kept.pop(i)
        else:
            i += 1

    return Presentation(
        remaining_gens,
        tuple((free_to_expr(l), free_to_expr(r)) for l, r in kept),
    )


# -- assignment checking ----------------------------------------------------


@dataclass(frozen=True)
class CheckResult:
    relations_hold: bool
    failed_relations: tuple[int, ...]
    surjective: bool | None

    def __bool__(self):
        return self.relations_hold


def check_assignment(
    p: Presentation,
    q: FiniteQuandle,
    images: Mapping[str, int],
    check_surjective: bool = True,
) -> CheckResult:
    """Does sending the generators to ``images`` satisfy every relation?

    When it does, it induces a homomorphism from the presented quandle to q;
    the homomorphism is onto exactly when the images generate q, which is the
    reported surjectivity flag.
    """
    missing = set(p.generators) - set(images)
    if missing:
        raise ValueError(f"missing images for generators {sorted(missing)}")
    failed = []
    for i, (lhs, rhs) in enumerate(p.relations):
        if evaluate_in(q, lhs, images) != evaluate_in(q, rhs, images):
            failed.append(i)
    surjective: bool | None = None
    if check_surjective:
        generated = subquandle_generated(q, [images[g] for g in p.generators])
        surjective = len(generated) == q.size
    return CheckResult(not failed, tuple(failed), surjective)


# -- compilation for the enumerator -----------------------------------------


def compile_expression(expr: Expr, gen_index: Mapping[str, int]) -> list[tuple[int, int]]:
    """Postfix program over (0, generator) push and (1, power) apply codes."""
    prog: list[tuple[int, int]] = []

    def walk(e: Expr):
        if isinstance(e, Gen):
            prog.append((0, gen_index[e.name]))
        else:
            walk(e.left)
            walk(e.right)
            prog.append((1, e.power))

    walk(expr)
    return prog


def relation_programs(p: Presentation):
    gen_index = {name: i for i, name in enumerate(p.generators)}
    return [
        (compile_expression(l, gen_index), compile_expression(r, gen_index))
        for l, r in p.relations
    ]
