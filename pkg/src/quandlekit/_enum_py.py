"""Pure-Python kernel for presented-quandle enumeration.

This is the reference twin of the compiled kernel in ``_enumcore.pyx``; the
two implement the identical state machine and must produce identical output
(tables, generator images, statistics, live-count history) on every input.

The algorithm is relator-tracing closure in the style of coset enumeration:

* elements are named in discovery order; a union-find tracks coincidences,
  the smaller name always surviving a merge;
* a partial operation table op[x][y] is stored sparsely together with its
  inverse view inv[z][y] = x  (meaning x * y = z);
* ground relations are traced, defining fresh elements for missing entries
  and merging the two end results;
* every recorded fact is pushed through the self-distributivity axiom
  (x*y)*z = (x*z)*(y*z): whenever three of the four composites of an
  instance are known the fourth is deduced, and clashes become coincidences;
* idempotence is installed at creation, and the inverse view yields the
  column-injectivity half of the bijectivity axiom;
* each round (pass) re-traces the relations, then fills the first undefined
  entry of every live row with a fresh element, draining all deductions
  after each step.  The table is closed when a pass makes no definition and
  every entry over live elements is present.

Merging b into a rewrites all facts mentioning b, including b's column, so an
identification of two elements also identifies them as operators.
"""

from __future__ import annotations

from bisect import bisect_left
from collections import deque

KEY_BITS = 21
KEY_MASK = (1 << KEY_BITS) - 1
MAX_ELEMENTS = 1 << KEY_BITS

# While the live-element count is at most this, a distributivity instance
# with three known composites defines the fourth (Felsch-style, fast to
# close small tables).  Beyond it, instances only compare and merge, and
# growth is driven by the fill schedule alone; eager defines would densify
# an unbounded table quadratically.  Either mode is sound, and the constant
# must match between the two kernels for their outputs to be identical.
DEDUCE_DEFINE_LIMIT = 256


class _Engine:
    def __init__(self, num_gens: int, relations, cap: int) -> None:
        self.relations = relations
        self.cap = cap
        self.parent: list[int] = []
        self.op: dict[int, int] = {}
        self.inv: dict[int, int] = {}
        self.rows: list[list[int]] = []
        self.cols: list[list[int]] = []
        self.rev: list[list[int]] = []
        self.cursor: list[int] = []
        self.facts: deque[int] = deque()
        self.coinc: deque[tuple[int, int]] = deque()
        self.live = 0
        self.created = 0
        self.merges = 0
        self.capped = False
        self.images = [self.new_element() for _ in range(num_gens)]

    # -- union-find -------------------------------------------------------

    def find(self, x: int) -> int:
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    # -- facts --------------------------------------------------------------

    def new_element(self) -> int:
        i = self.created
        if i >= MAX_ELEMENTS:
            raise RuntimeError("element id space exhausted")
        self.created = i + 1
        self.parent.append(i)
        self.rows.append([])
        self.cols.append([])
        self.rev.append([])
        self.cursor.append(0)
        self.live += 1
        self.set_op(i, i, i)  # idempotence
        if self.live > self.cap:
            self.capped = True
        return i

    def set_op(self, x: int, y: int, z: int) -> None:
        """Record x * y = z (arguments canonical); clashes queue coincidences."""
        key = (x << KEY_BITS) | y
        cur = self.op.get(key)
        if cur is not None:
            cur = self.find(cur)
            if cur != z:
                self.coinc.append((cur, z))
            return
        ikey = (z << KEY_BITS) | y
        prev = self.inv.get(ikey)
        self.op[key] = z
        self.rows[x].append(y)
        self.cols[y].append(x)
        self.rev[z].append(key)
        self.facts.append(key)
        if prev is None:
            self.inv[ikey] = x
        else:
            prev = self.find(prev)
            if prev != x:  # two solutions of ? * y = z: columns are injective
                self.coinc.append((prev, x))

    def get_op(self, x: int, y: int) -> int | None:
        v = self.op.get((x << KEY_BITS) | y)
        return None if v is None else self.find(v)

    # -- coincidence processing ---------------------------------------------

    def process_coincidence(self, a: int, b: int) -> None:
        a = self.find(a)
        b = self.find(b)
        if a == b:
            return
        if a > b:
            a, b = b, a
        self.parent[b] = a
        self.live -= 1
        self.merges += 1
        op, inv = self.op, self.inv
        moved: list[tuple[int, int, int]] = []
        for y in self.rows[b]:
            key = (b << KEY_BITS) | y
            z = op.pop(key, None)
            if z is None:
                continue
            ik = (z << KEY_BITS) | y
            if inv.get(ik) == b:
                del inv[ik]
            moved.append((b, y, z))
        self.rows[b] = []
        for x in self.cols[b]:
            key = (x << KEY_BITS) | b
            z = op.pop(key, None)
            if z is None:
                continue
            ik = (z << KEY_BITS) | b
            if inv.get(ik) == x:
                del inv[ik]
            moved.append((x, b, z))
        self.cols[b] = []
        for key in self.rev[b]:
            z = op.get(key)
            if z != b:
                continue
            x = key >> KEY_BITS
            y = key & KEY_MASK
            del op[key]
            ik = (b << KEY_BITS) | y
            if inv.get(ik) == x:
                del inv[ik]
            moved.append((x, y, b))
        self.rev[b] = []
        for x, y, z in moved:
            self.set_op(self.find(x), self.find(y), self.find(z))

    # -- distributivity deductions -------------------------------------------
    #
    # Instance (p, q, r):  A = op[p][q], C = op[p][r], D = op[q][r],
    #                      conclusion op[A][r] = op[C][D]  (B = E).
    # A new fact can play each of the five roles; for each role we join the
    # remaining antecedents through the row/column/value indexes, so the
    # instance fires exactly when its last antecedent arrives.

    def process_fact(self, key: int) -> None:
        x = key >> KEY_BITS
        y = key & KEY_MASK
        parent = self.parent
        if parent[x] != x or parent[y] != y:
            return  # fact was migrated; the re-inserted copy is queued
        op = self.op
        z = op.get(key)
        if z is None:
            return
        find = self.find
        z = find(z)
        set_op = self.set_op
        coinc = self.coinc
        may_define = self.live <= DEDUCE_DEFINE_LIMIT

        rows_x = self.rows[x]
        n_rows = len(rows_x)
        for i in range(n_rows):
            r = rows_x[i]
            c_val = op.get((x << KEY_BITS) | r)
            if c_val is None:
                continue
            # role A (p=x, q=y, A=z): C = op[x][r], D = op[y][r]
            d_val = op.get((y << KEY_BITS) | r)
            if d_val is not None:
                C = find(c_val)
                D = find(d_val)
                B = op.get((z << KEY_BITS) | r)
                E = op.get((C << KEY_BITS) | D)
                if B is None:
                    if E is not None and may_define:
                        set_op(z, r, find(E))
                elif E is None:
                    if may_define:
                        set_op(C, D, find(B))
                else:
                    B = find(B)
                    E = find(E)
                    if B != E:
                        coinc.append((B, E))
            # role C (p=x, r=y, C=z): A = op[x][q], D = op[q][y] with q := r
            a_val = c_val
            d_val = op.get((r << KEY_BITS) | y)
            if d_val is not None:
                A = find(a_val)
                D = find(d_val)
                B = op.get((A << KEY_BITS) | y)
                E = op.get((z << KEY_BITS) | D)
                if B is None:
                    if E is not None and may_define:
                        set_op(A, y, find(E))
                elif E is None:
                    if may_define:
                        set_op(z, D, find(B))
                else:
                    B = find(B)
                    E = find(E)
                    if B != E:
                        coinc.append((B, E))

        # role D (q=x, r=y, D=z): A = op[p][x], C = op[p][y]
        cols_x = self.cols[x]
        n_cols = len(cols_x)
        for i in range(n_cols):
            p = cols_x[i]
            a_val = op.get((p << KEY_BITS) | x)
            if a_val is None:
                continue
            c_val = op.get((p << KEY_BITS) | y)
            if c_val is None:
                continue
            A = find(a_val)
            C = find(c_val)
            B = op.get((A << KEY_BITS) | y)
            E = op.get((C << KEY_BITS) | z)
            if B is None:
                if E is not None and may_define:
                    set_op(A, y, find(E))
            elif E is None:
                if may_define:
                    set_op(C, z, find(B))
            else:
                B = find(B)
                E = find(E)
                if B != E:
                    coinc.append((B, E))

        rev_x = self.rev[x]
        n_rev = len(rev_x)
        for i in range(n_rev):
            k2 = rev_x[i]
            v = op.get(k2)
            if v is None or find(v) != x:
                continue
            p = k2 >> KEY_BITS
            q = k2 & KEY_MASK
            # role B (A=x, r=y, B=z): op[p][q] = x, need C, D
            c_val = op.get((p << KEY_BITS) | y)
            if c_val is not None:
                d_val = op.get((q << KEY_BITS) | y)
                if d_val is not None:
                    C = find(c_val)
                    D = find(d_val)
                    E = op.get((C << KEY_BITS) | D)
                    if E is None:
                        if may_define:
                            set_op(C, D, z)
                    else:
                        E = find(E)
                        if E != z:
                            coinc.append((E, z))
            # role E (C=x, D=y, E=z): op[p][r] = x with r := q, find q' solving
            # q' * r = y through the inverse view, then A = op[p][q']
            qq = self.inv.get((y << KEY_BITS) | q)
            if qq is not None:
                qq = find(qq)
                a_val = op.get((p << KEY_BITS) | qq)
                if a_val is not None:
                    A = find(a_val)
                    B = op.get((A << KEY_BITS) | q)
                    if B is None:
                        if may_define:
                            set_op(A, q, z)
                    else:
                        B = find(B)
                        if B != z:
                            coinc.append((B, z))

    def drain(self) -> None:
        facts, coinc = self.facts, self.coinc
        while coinc or facts:
            while coinc:
                a, b = coinc.popleft()
                self.process_coincidence(a, b)
            if facts:
                self.process_fact(facts.popleft())

    # -- relation tracing ------------------------------------------------------

    def trace(self, prog) -> int:
        """Evaluate a postfix program, defining fresh elements on demand."""
        stack: list[int] = []
        for code, arg in prog:
            if code == 0:
                stack.append(self.find(self.images[arg]))
                continue
            y = stack.pop()
            x = stack.pop()
            if arg > 0:
                for _ in range(arg):
                    x = self.find(x)
                    y = self.find(y)
                    z = self.get_op(x, y)
                    if z is None:
                        z = self.new_element()
                        if self.capped:
                            return -1
                        self.set_op(x, y, z)
                    x = z
            else:
                for _ in range(-arg):
                    x = self.find(x)
                    y = self.find(y)
                    w = self.inv.get((x << KEY_BITS) | y)
                    if w is None:
                        w = self.new_element()
                        if self.capped:
                            return -1
                        self.set_op(w, y, x)
                    else:
                        w = self.find(w)
                    x = w
            stack.append(x)
        return stack[0]

    # -- the pass loop -----------------------------------------------------------

    def next_undefined(self, x: int, roots: list[int]) -> int | None:
        start = bisect_left(roots, self.cursor[x])
        op = self.op
        parent = self.parent
        base = x << KEY_BITS
        for j in range(start, len(roots)):
            y = roots[j]
            if parent[y] != y:
                continue
            if (base | y) in op:
                self.cursor[x] = y + 1
                continue
            self.cursor[x] = y
            return y
        return None

    def is_total(self) -> bool:
        roots = [i for i in range(self.created) if self.parent[i] == i]
        op = self.op
        for x in roots:
            base = x << KEY_BITS
            for y in roots:
                if (base | y) not in op:
                    return False
        return True

    def run(self) -> dict:
        history: list[int] = []
        passes = 0
        self.drain()
        while not self.capped:
            passes += 1
            for prog_l, prog_r in self.relations:
                left = self.trace(prog_l)
                if self.capped:
                    break
                right = self.trace(prog_r)
                if self.capped:
                    break
                left = self.find(left)
                right = self.find(right)
                if left != right:
                    self.coinc.append((left, right))
                self.drain()
            if self.capped:
                break
            filled_any = False
            roots = [i for i in range(self.created) if self.parent[i] == i]
            for x in roots:
                if self.parent[x] != x:
                    continue
                y = self.next_undefined(x, roots)
                if y is None:
                    continue
                z = self.new_element()
                if self.capped:
                    break
                self.set_op(x, y, z)
                self.drain()
                filled_any = True
            if self.capped:
                break
            self.drain()
            history.append(self.live)
            if not filled_any and self.is_total():
                break
        if self.capped:
            history.append(self.live)
            return {
                "closed": False,
                "table": None,
                "images": None,
                "live_history": history,
                "definitions": self.created,
                "coincidences": self.merges,
                "passes": passes,
            }
        roots = sorted(i for i in range(self.created) if self.parent[i] == i)
        index = {r: i for i, r in enumerate(roots)}
        table = [
            [index[self.find(self.op[(x << KEY_BITS) | y])] for y in roots]
            for x in roots
        ]
        return {
            "closed": True,
            "table": table,
            "images": [index[self.find(g)] for g in self.images],
            "live_history": history,
            "definitions": self.created,
            "coincidences": self.merges,
            "passes": passes,
        }


def run_enumeration(num_gens: int, relations, cap: int) -> dict:
    """Run the closure; relations are pairs of postfix programs.

    Program tokens: (0, i) pushes generator i, (1, k) pops y then x and
    pushes x *^k y.
    """
    if cap < num_gens:
        raise ValueError("cap is below the number of generators")
    return _Engine(num_gens, relations, cap).run()
