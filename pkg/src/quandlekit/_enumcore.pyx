# distutils: language = c++
# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel for presented-quandle enumeration.

Twin of ``_enum_py.run_enumeration``: the same state machine transliterated
onto C++ containers.  Hash maps are only ever used for keyed lookup, never
iterated, so the processing order (and therefore every output: table, images,
statistics, live history) is identical to the pure-Python kernel by
construction.  Keep the two files in lockstep when changing the algorithm.
"""

from cython.operator cimport dereference as deref
from libcpp.pair cimport pair
from libcpp.unordered_map cimport unordered_map
from libcpp.vector cimport vector

ctypedef long long i64

cdef enum:
    KEY_BITS = 21
    MAX_ELEMENTS = 1 << 21
    DEDUCE_DEFINE_LIMIT = 256

cdef i64 KEY_MASK = (<i64>1 << KEY_BITS) - 1


cdef inline int _get(unordered_map[i64, int]& m, i64 key) nogil:
    cdef unordered_map[i64, int].iterator it = m.find(key)
    if it == m.end():
        return -1
    return deref(it).second


cdef class _Engine:
    cdef vector[int] parent
    cdef unordered_map[i64, int] op
    cdef unordered_map[i64, int] inv
    cdef vector[vector[int]] rows
    cdef vector[vector[int]] cols
    cdef vector[vector[i64]] rev
    cdef vector[int] cursor
    cdef vector[i64] facts
    cdef size_t facts_head
    cdef vector[i64] coinc
    cdef size_t coinc_head
    cdef vector[int] images
    cdef vector[vector[pair[int, int]]] progs  # 2*i left, 2*i+1 right
    cdef int cap
    cdef int live
    cdef int created
    cdef int merges
    cdef bint capped

    def __init__(self, int num_gens, relations, int cap):
        cdef int i
        cdef vector[pair[int, int]] prog
        cdef pair[int, int] tok
        for left, right in relations:
            for side in (left, right):
                prog.clear()
                for code, arg in side:
                    tok.first = code
                    tok.second = arg
                    prog.push_back(tok)
                self.progs.push_back(prog)
        self.cap = cap
        self.facts_head = 0
        self.coinc_head = 0
        self.live = 0
        self.created = 0
        self.merges = 0
        self.capped = False
        for i in range(num_gens):
            self.images.push_back(self.new_element())

    cdef int find(self, int x) nogil:
        cdef int root = x
        cdef int tmp
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            tmp = self.parent[x]
            self.parent[x] = root
            x = tmp
        return root

    cdef int new_element(self) except -2:
        cdef int i = self.created
        cdef vector[int] empty_i
        cdef vector[i64] empty_k
        if i >= MAX_ELEMENTS:
            raise RuntimeError("element id space exhausted")
        self.created = i + 1
        self.parent.push_back(i)
        self.rows.push_back(empty_i)
        self.cols.push_back(empty_i)
        self.rev.push_back(empty_k)
        self.cursor.push_back(0)
        self.live += 1
        self.set_op(i, i, i)  # idempotence
        if self.live > self.cap:
            self.capped = True
        return i

    cdef void set_op(self, int x, int y, int z) nogil:
        cdef i64 key = (<i64>x << KEY_BITS) | y
        cdef i64 ikey
        cdef int cur, prev
        cdef unordered_map[i64, int].iterator it = self.op.find(key)
        if it != self.op.end():
            cur = self.find(deref(it).second)
            if cur != z:
                self.coinc.push_back((<i64>cur << KEY_BITS) | z)
            return
        ikey = (<i64>z << KEY_BITS) | y
        prev = _get(self.inv, ikey)
        self.op[key] = z
        self.rows[x].push_back(y)
        self.cols[y].push_back(x)
        self.rev[z].push_back(key)
        self.facts.push_back(key)
        if prev < 0:
            self.inv[ikey] = x
        else:
            prev = self.find(prev)
            if prev != x:  # columns are injective
                self.coinc.push_back((<i64>prev << KEY_BITS) | x)

    cdef int get_op(self, int x, int y) nogil:
        cdef int v = _get(self.op, (<i64>x << KEY_BITS) | y)
        if v < 0:
            return -1
        return self.find(v)

    cdef void process_coincidence(self, int a, int b) nogil:
        cdef vector[i64] moved
        cdef size_t i
        cdef int x, y, z
        cdef i64 key, ik, k
        cdef unordered_map[i64, int].iterator it
        a = self.find(a)
        b = self.find(b)
        if a == b:
            return
        if a > b:
            a, b = b, a
        self.parent[b] = a
        self.live -= 1
        self.merges += 1
        for i in range(self.rows[b].size()):
            y = self.rows[b][i]
            key = (<i64>b << KEY_BITS) | y
            it = self.op.find(key)
            if it == self.op.end():
                continue
            z = deref(it).second
            self.op.erase(it)
            ik = (<i64>z << KEY_BITS) | y
            it = self.inv.find(ik)
            if it != self.inv.end() and deref(it).second == b:
                self.inv.erase(it)
            moved.push_back(((<i64>b << (2 * KEY_BITS)) | (<i64>y << KEY_BITS)) | z)
        self.rows[b].clear()
        for i in range(self.cols[b].size()):
            x = self.cols[b][i]
            key = (<i64>x << KEY_BITS) | b
            it = self.op.find(key)
            if it == self.op.end():
                continue
            z = deref(it).second
            self.op.erase(it)
            ik = (<i64>z << KEY_BITS) | b
            it = self.inv.find(ik)
            if it != self.inv.end() and deref(it).second == x:
                self.inv.erase(it)
            moved.push_back(((<i64>x << (2 * KEY_BITS)) | (<i64>b << KEY_BITS)) | z)
        self.cols[b].clear()
        for i in range(self.rev[b].size()):
            key = self.rev[b][i]
            it = self.op.find(key)
            if it == self.op.end() or deref(it).second != b:
                continue
            x = <int>(key >> KEY_BITS)
            y = <int>(key & KEY_MASK)
            self.op.erase(it)
            ik = (<i64>b << KEY_BITS) | y
            it = self.inv.find(ik)
            if it != self.inv.end() and deref(it).second == x:
                self.inv.erase(it)
            moved.push_back(((<i64>x << (2 * KEY_BITS)) | (<i64>y << KEY_BITS)) | b)
        self.rev[b].clear()
        for i in range(moved.size()):
            k = moved[i]
            x = <int>(k >> (2 * KEY_BITS))
            y = <int>((k >> KEY_BITS) & KEY_MASK)
            z = <int>(k & KEY_MASK)
            self.set_op(self.find(x), self.find(y), self.find(z))

    cdef void process_fact(self, i64 key) nogil:
        cdef int x = <int>(key >> KEY_BITS)
        cdef int y = <int>(key & KEY_MASK)
        cdef int z, r, q, p, qq
        cdef int a_val, c_val, d_val
        cdef int A, B, C, D, E
        cdef size_t i, n_rows, n_cols, n_rev
        cdef i64 k2
        cdef bint may_define
        if self.parent[x] != x or self.parent[y] != y:
            return
        z = _get(self.op, key)
        if z < 0:
            return
        z = self.find(z)
        may_define = self.live <= DEDUCE_DEFINE_LIMIT

        n_rows = self.rows[x].size()
        for i in range(n_rows):
            r = self.rows[x][i]
            c_val = _get(self.op, (<i64>x << KEY_BITS) | r)
            if c_val < 0:
                continue
            # role A (p=x, q=y, A=z)
            d_val = _get(self.op, (<i64>y << KEY_BITS) | r)
            if d_val >= 0:
                C = self.find(c_val)
                D = self.find(d_val)
                B = _get(self.op, (<i64>z << KEY_BITS) | r)
                E = _get(self.op, (<i64>C << KEY_BITS) | D)
                if B < 0:
                    if E >= 0 and may_define:
                        self.set_op(z, r, self.find(E))
                elif E < 0:
                    if may_define:
                        self.set_op(C, D, self.find(B))
                else:
                    B = self.find(B)
                    E = self.find(E)
                    if B != E:
                        self.coinc.push_back((<i64>B << KEY_BITS) | E)
            # role C (p=x, r=y, C=z), with q := r
            a_val = c_val
            d_val = _get(self.op, (<i64>r << KEY_BITS) | y)
            if d_val >= 0:
                A = self.find(a_val)
                D = self.find(d_val)
                B = _get(self.op, (<i64>A << KEY_BITS) | y)
                E = _get(self.op, (<i64>z << KEY_BITS) | D)
                if B < 0:
                    if E >= 0 and may_define:
                        self.set_op(A, y, self.find(E))
                elif E < 0:
                    if may_define:
                        self.set_op(z, D, self.find(B))
                else:
                    B = self.find(B)
                    E = self.find(E)
                    if B != E:
                        self.coinc.push_back((<i64>B << KEY_BITS) | E)

        # role D (q=x, r=y, D=z)
        n_cols = self.cols[x].size()
        for i in range(n_cols):
            p = self.cols[x][i]
            a_val = _get(self.op, (<i64>p << KEY_BITS) | x)
            if a_val < 0:
                continue
            c_val = _get(self.op, (<i64>p << KEY_BITS) | y)
            if c_val < 0:
                continue
            A = self.find(a_val)
            C = self.find(c_val)
            B = _get(self.op, (<i64>A << KEY_BITS) | y)
            E = _get(self.op, (<i64>C << KEY_BITS) | z)
            if B < 0:
                if E >= 0 and may_define:
                    self.set_op(A, y, self.find(E))
            elif E < 0:
                if may_define:
                    self.set_op(C, z, self.find(B))
            else:
                B = self.find(B)
                E = self.find(E)
                if B != E:
                    self.coinc.push_back((<i64>B << KEY_BITS) | E)

        n_rev = self.rev[x].size()
        for i in range(n_rev):
            k2 = self.rev[x][i]
            a_val = _get(self.op, k2)
            if a_val < 0 or self.find(a_val) != x:
                continue
            p = <int>(k2 >> KEY_BITS)
            q = <int>(k2 & KEY_MASK)
            # role B (A=x, r=y, B=z)
            c_val = _get(self.op, (<i64>p << KEY_BITS) | y)
            if c_val >= 0:
                d_val = _get(self.op, (<i64>q << KEY_BITS) | y)
                if d_val >= 0:
                    C = self.find(c_val)
                    D = self.find(d_val)
                    E = _get(self.op, (<i64>C << KEY_BITS) | D)
                    if E < 0:
                        if may_define:
                            self.set_op(C, D, z)
                    else:
                        E = self.find(E)
                        if E != z:
                            self.coinc.push_back((<i64>E << KEY_BITS) | z)
            # role E (C=x, D=y, E=z), with r := q
            qq = _get(self.inv, (<i64>y << KEY_BITS) | q)
            if qq >= 0:
                qq = self.find(qq)
                a_val = _get(self.op, (<i64>p << KEY_BITS) | qq)
                if a_val >= 0:
                    A = self.find(a_val)
                    B = _get(self.op, (<i64>A << KEY_BITS) | q)
                    if B < 0:
                        if may_define:
                            self.set_op(A, q, z)
                    else:
                        B = self.find(B)
                        if B != z:
                            self.coinc.push_back((<i64>B << KEY_BITS) | z)

    cdef void drain(self) nogil:
        cdef i64 packed
        while self.coinc_head < self.coinc.size() or self.facts_head < self.facts.size():
            while self.coinc_head < self.coinc.size():
                packed = self.coinc[self.coinc_head]
                self.coinc_head += 1
                self.process_coincidence(
                    <int>(packed >> KEY_BITS), <int>(packed & KEY_MASK)
                )
            if self.facts_head < self.facts.size():
                packed = self.facts[self.facts_head]
                self.facts_head += 1
                self.process_fact(packed)

    cdef int trace(self, size_t prog_idx) except -2:
        cdef vector[int] stack
        cdef size_t i
        cdef int code, arg, x, y, z, w, step
        cdef vector[pair[int, int]]* prog = &self.progs[prog_idx]
        for i in range(prog.size()):
            code = deref(prog)[i].first
            arg = deref(prog)[i].second
            if code == 0:
                stack.push_back(self.find(self.images[arg]))
                continue
            y = stack.back()
            stack.pop_back()
            x = stack.back()
            stack.pop_back()
            if arg > 0:
                for step in range(arg):
                    x = self.find(x)
                    y = self.find(y)
                    z = self.get_op(x, y)
                    if z < 0:
                        z = self.new_element()
                        if self.capped:
                            return -1
                        self.set_op(x, y, z)
                    x = z
            else:
                for step in range(-arg):
                    x = self.find(x)
                    y = self.find(y)
                    w = _get(self.inv, (<i64>x << KEY_BITS) | y)
                    if w < 0:
                        w = self.new_element()
                        if self.capped:
                            return -1
                        self.set_op(w, y, x)
                    else:
                        w = self.find(w)
                    x = w
            stack.push_back(x)
        return stack[0]

    cdef int next_undefined(self, int x, vector[int]& roots) nogil:
        cdef size_t lo = 0, hi = roots.size(), mid, j
        cdef int target = self.cursor[x]
        cdef int y
        cdef i64 base = <i64>x << KEY_BITS
        while lo < hi:  # first index with roots[idx] >= cursor
            mid = (lo + hi) // 2
            if roots[mid] < target:
                lo = mid + 1
            else:
                hi = mid
        for j in range(lo, roots.size()):
            y = roots[j]
            if self.parent[y] != y:
                continue
            if self.op.find(base | y) != self.op.end():
                self.cursor[x] = y + 1
                continue
            self.cursor[x] = y
            return y
        return -1

    cdef bint is_total(self) nogil:
        cdef vector[int] roots
        cdef int i
        cdef size_t a, b
        cdef i64 base
        for i in range(self.created):
            if self.parent[i] == i:
                roots.push_back(i)
        for a in range(roots.size()):
            base = <i64>roots[a] << KEY_BITS
            for b in range(roots.size()):
                if self.op.find(base | roots[b]) == self.op.end():
                    return False
        return True

    def run(self):
        cdef list history = []
        cdef int passes = 0
        cdef size_t ri, xi
        cdef int left, right, x, y, z
        cdef bint filled_any
        cdef vector[int] roots
        self.drain()
        while not self.capped:
            passes += 1
            for ri in range(self.progs.size() // 2):
                left = self.trace(2 * ri)
                if self.capped:
                    break
                right = self.trace(2 * ri + 1)
                if self.capped:
                    break
                left = self.find(left)
                right = self.find(right)
                if left != right:
                    self.coinc.push_back((<i64>left << KEY_BITS) | right)
                self.drain()
            if self.capped:
                break
            filled_any = False
            roots.clear()
            for x in range(self.created):
                if self.parent[x] == x:
                    roots.push_back(x)
            for xi in range(roots.size()):
                x = roots[xi]
                if self.parent[x] != x:
                    continue
                y = self.next_undefined(x, roots)
                if y < 0:
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
        roots.clear()
        for x in range(self.created):
            if self.parent[x] == x:
                roots.push_back(x)
        cdef dict index = {}
        for xi in range(roots.size()):
            index[roots[xi]] = xi
        table = [
            [
                index[self.find(self.op[(<i64>roots[a] << KEY_BITS) | roots[b]])]
                for b in range(roots.size())
            ]
            for a in range(roots.size())
        ]
        images = [index[self.find(self.images[xi])] for xi in range(self.images.size())]
        return {
            "closed": True,
            "table": table,
            "images": images,
            "live_history": history,
            "definitions": self.created,
            "coincidences": self.merges,
            "passes": passes,
        }


def run_enumeration(int num_gens, relations, int cap):
    """Run the closure; same contract as ``_enum_py.run_enumeration``."""
    if cap < num_gens:
        raise ValueError("cap is below the number of generators")
    return _Engine(num_gens, relations, cap).run()
