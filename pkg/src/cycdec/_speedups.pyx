# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled backtracking kernel; twin of _search_py.

Same search order, same pruning, same node counts: results from the two
kernels must be bit-identical.
"""

import time as _time

from libc.stdlib cimport free, malloc

EXISTS, NOT_EXISTS, TIMEOUT = 0, 1, 2


cdef class _Ctx:
    cdef int v, u, nlen
    cdef long long nodes
    cdef int n_remaining, n_big, remaining_total, cycles_done
    cdef int introl, intror
    cdef bint sym, timed_out, has_deadline
    cdef double deadline
    cdef int* cnt
    cdef int* degl
    cdef int* degr
    cdef int* lengths
    cdef char* used
    cdef char* onl
    cdef char* onr
    cdef int* seq
    cdef int seq_top
    cdef list chosen

    def __cinit__(self, int v, int u, counts, lens, deadline):
        cdef int i
        self.v = v
        self.u = u
        self.nlen = len(lens)
        self.cnt = <int*> malloc(v * u * sizeof(int))
        self.degl = <int*> malloc(v * sizeof(int))
        self.degr = <int*> malloc(u * sizeof(int))
        self.lengths = <int*> malloc(self.nlen * sizeof(int))
        self.used = <char*> malloc(self.nlen)
        self.onl = <char*> malloc(v)
        self.onr = <char*> malloc(u)
        self.remaining_total = 0
        for i in range(self.nlen):
            self.lengths[i] = lens[i]
            self.used[i] = 0
            self.remaining_total += lens[i]
        self.seq = <int*> malloc((self.remaining_total + 2) * sizeof(int))
        self.seq_top = 0
        for i in range(v * u):
            self.cnt[i] = counts[i]
        for i in range(v):
            self.degl[i] = 0
            self.onl[i] = 0
        for i in range(u):
            self.degr[i] = 0
            self.onr[i] = 0
        for i in range(v * u):
            self.degl[i // u] += self.cnt[i]
            self.degr[i % u] += self.cnt[i]
        self.n_remaining = self.nlen
        self.n_big = 0
        for i in range(self.nlen):
            if self.lengths[i] > 2:
                self.n_big += 1
        self.nodes = 0
        self.cycles_done = 0
        self.introl = 0
        self.intror = 0
        self.timed_out = False
        self.has_deadline = deadline is not None
        self.deadline = deadline if deadline is not None else 0.0
        cdef int mn = self.cnt[0]
        cdef int mx = self.cnt[0]
        for i in range(1, v * u):
            if self.cnt[i] < mn:
                mn = self.cnt[i]
            if self.cnt[i] > mx:
                mx = self.cnt[i]
        self.sym = mn == mx
        self.chosen = []

    def __dealloc__(self):
        free(self.cnt)
        free(self.degl)
        free(self.degr)
        free(self.lengths)
        free(self.used)
        free(self.onl)
        free(self.onr)
        free(self.seq)

    cdef bint _expired(self):
        if self.timed_out:
            return True
        if self.has_deadline and (self.nodes & 1023) == 0:
            if _time.monotonic() > self.deadline:
                self.timed_out = True
                return True
        return False

    cdef bint solve(self):
        cdef int i, m, prev, al, ar, cap, maxdeg, x, y, base
        cdef bint ok
        self.nodes += 1
        if self._expired():
            return False
        if self.remaining_total == 0:
            return True
        if self.n_big == 0:
            return self._place_all_twos()
        al = 0
        for i in range(self.v):
            if self.degl[i]:
                al += 1
        ar = 0
        for i in range(self.u):
            if self.degr[i]:
                ar += 1
        cap = 2 * (al if al < ar else ar)
        maxdeg = 0
        for i in range(self.v):
            if self.degl[i] > maxdeg:
                maxdeg = self.degl[i]
        for i in range(self.u):
            if self.degr[i] > maxdeg:
                maxdeg = self.degr[i]
        if maxdeg > 2 * self.n_remaining:
            return False
        x = 0
        while self.degl[x] == 0:
            x += 1
        y = 0
        base = x * self.u
        while self.cnt[base + y] == 0:
            y += 1
        prev = -1
        for i in range(self.nlen):
            if self.used[i]:
                continue
            m = self.lengths[i]
            if m == prev:
                continue
            prev = m
            if m > cap:
                return False
            self.used[i] = 1
            self.n_remaining -= 1
            self.remaining_total -= m
            if m > 2:
                self.n_big -= 1
            ok = self._start_cycle(m, x, y)
            self.used[i] = 0
            self.n_remaining += 1
            self.remaining_total += m
            if m > 2:
                self.n_big += 1
            if ok:
                return True
            if self.timed_out:
                return False
        return False

    cdef bint _place_all_twos(self):
        cdef int i, j, c, r
        for i in range(self.v * self.u):
            if self.cnt[i] % 2:
                return False
        for i in range(self.v):
            for j in range(self.u):
                c = self.cnt[i * self.u + j] // 2
                for r in range(c):
                    self.chosen.append([i, self.v + j])
        return True

    cdef bint _start_cycle(self, int m, int x, int y):
        cdef int p = x * self.u + y
        cdef int base = self.seq_top
        cdef bint ok
        self.cnt[p] -= 1
        self.degl[x] -= 1
        self.degr[y] -= 1
        self.onl[x] = 1
        self.onr[y] = 1
        if self.sym and self.cycles_done == 0:
            self.introl = x + 1
            self.intror = y + 1
        self.seq[base] = x
        self.seq[base + 1] = self.v + y
        self.seq_top = base + 2
        ok = self._extend(m, base, 2)
        self.seq_top = base
        self.onl[x] = 0
        self.onr[y] = 0
        self.cnt[p] += 1
        self.degl[x] += 1
        self.degr[y] += 1
        return ok

    cdef bint _extend(self, int m, int base, int k):
        cdef int x, i, j, p, w, t, lo, hi
        cdef bint ok, first
        self.nodes += 1
        if self._expired():
            return False
        if k == m:
            x = self.seq[base]
            j = self.seq[base + k - 1] - self.v
            p = x * self.u + j
            if self.cnt[p] == 0:
                return False
            self.cnt[p] -= 1
            self.degl[x] -= 1
            self.degr[j] -= 1
            self.chosen.append([self.seq[base + i] for i in range(m)])
            self.cycles_done += 1
            for i in range(m):
                t = self.seq[base + i]
                if t < self.v:
                    self.onl[t] = 0
                else:
                    self.onr[t - self.v] = 0
            ok = self.solve()
            for i in range(m):
                t = self.seq[base + i]
                if t < self.v:
                    self.onl[t] = 1
                else:
                    self.onr[t - self.v] = 1
            if not ok:
                self.chosen.pop()
            self.cycles_done -= 1
            self.cnt[p] += 1
            self.degl[x] += 1
            self.degr[j] += 1
            return ok
        first = self.sym and self.cycles_done == 0
        if k % 2 == 0:
            j = self.seq[base + k - 1] - self.v
            if first:
                lo = self.introl
                hi = self.introl + 1 if self.introl < self.v else self.introl
            else:
                lo = 0
                hi = self.v
            for w in range(lo, hi):
                if self.onl[w]:
                    continue
                p = w * self.u + j
                if self.cnt[p] == 0:
                    continue
                self.cnt[p] -= 1
                self.degl[w] -= 1
                self.degr[j] -= 1
                self.onl[w] = 1
                if first:
                    self.introl += 1
                self.seq[base + k] = w
                self.seq_top += 1
                ok = self._extend(m, base, k + 1)
                self.seq_top -= 1
                if first:
                    self.introl -= 1
                self.onl[w] = 0
                self.cnt[p] += 1
                self.degl[w] += 1
                self.degr[j] += 1
                if ok:
                    return True
                if self.timed_out:
                    return False
            return False
        else:
            i = self.seq[base + k - 1]
            if first:
                lo = self.intror
                hi = self.intror + 1 if self.intror < self.u else self.intror
            else:
                lo = 0
                hi = self.u
            for w in range(lo, hi):
                if self.onr[w]:
                    continue
                p = i * self.u + w
                if self.cnt[p] == 0:
                    continue
                self.cnt[p] -= 1
                self.degl[i] -= 1
                self.degr[w] -= 1
                self.onr[w] = 1
                if first:
                    self.intror += 1
                self.seq[base + k] = self.v + w
                self.seq_top += 1
                ok = self._extend(m, base, k + 1)
                self.seq_top -= 1
                if first:
                    self.intror -= 1
                self.onr[w] = 0
                self.cnt[p] += 1
                self.degl[i] += 1
                self.degr[w] += 1
                if ok:
                    return True
                if self.timed_out:
                    return False
            return False


def decide(v, u, counts, lengths, deadline=None):
    """Return (status, cycles | None, nodes); see _search_py.decide."""
    lengths = sorted(lengths, reverse=True)
    total = sum(counts)
    if any(c < 0 for c in counts):
        raise ValueError("negative residual multiplicity")
    if sum(lengths) != total or any(m < 2 or m % 2 for m in lengths):
        return NOT_EXISTS, None, 0
    if total == 0:
        return EXISTS, [], 0
    degl = [sum(counts[i * u : (i + 1) * u]) for i in range(v)]
    degr = [sum(counts[j::u]) for j in range(u)]
    if any(d % 2 for d in degl) or any(d % 2 for d in degr):
        return NOT_EXISTS, None, 0
    ctx = _Ctx(v, u, list(counts), lengths, deadline)
    ok = ctx.solve()
    if ctx.timed_out:
        return TIMEOUT, None, ctx.nodes
    if ok:
        return EXISTS, ctx.chosen, ctx.nodes
    return NOT_EXISTS, None, ctx.nodes
