"""Pure-Python backtracking kernel.

Partitions an edge multiset of a bipartite v x u grid into cycles of
prescribed even lengths.  Vertex ids: left i -> i, right j -> v + j.

The compiled twin (_speedups.pyx) implements the identical search in the
identical order; results, including node counts, must match exactly.
"""

from __future__ import annotations

import time

EXISTS, NOT_EXISTS, TIMEOUT = 0, 1, 2


def decide(v, u, counts, lengths, deadline=None):
    """Return (status, cycles | None, nodes).

    counts: row-major list of v*u residual multiplicities.
    lengths: target cycle lengths (any order; must be even and >= 2).
    deadline: absolute time.monotonic() cutoff, or None.
    """
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
    s = _Search(v, u, list(counts), degl, degr, lengths, deadline)
    ok = s.solve()
    if s.timed_out:
        return TIMEOUT, None, s.nodes
    if ok:
        return EXISTS, s.chosen, s.nodes
    return NOT_EXISTS, None, s.nodes


class _Search:
    __slots__ = (
        "v", "u", "cnt", "degl", "degr", "lengths", "used", "n_remaining",
        "n_big", "remaining_total", "chosen", "nodes", "deadline",
        "timed_out", "sym", "cycles_done", "onl", "onr", "introl", "intror",
    )

    def __init__(self, v, u, cnt, degl, degr, lengths, deadline):
        self.v = v
        self.u = u
        self.cnt = cnt
        self.degl = degl
        self.degr = degr
        self.lengths = lengths
        self.used = [False] * len(lengths)
        self.n_remaining = len(lengths)
        self.n_big = sum(1 for m in lengths if m > 2)
        self.remaining_total = sum(lengths)
        self.chosen = []
        self.nodes = 0
        self.deadline = deadline
        self.timed_out = False
        self.sym = min(cnt) == max(cnt)
        self.cycles_done = 0
        self.onl = [False] * v
        self.onr = [False] * u
        self.introl = 0
        self.intror = 0

    def _expired(self):
        if self.timed_out:
            return True
        if self.deadline is not None and (self.nodes & 1023) == 0:
            if time.monotonic() > self.deadline:
                self.timed_out = True
                return True
        return False

    def solve(self):
        self.nodes += 1
        if self._expired():
            return False
        if self.remaining_total == 0:
            return True
        if self.n_big == 0:
            return self._place_all_twos()
        al = sum(1 for d in self.degl if d)
        ar = sum(1 for d in self.degr if d)
        cap = 2 * (al if al < ar else ar)
        maxdeg = max(max(self.degl), max(self.degr))
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
        for idx in range(len(self.lengths)):
            if self.used[idx]:
                continue
            m = self.lengths[idx]
            if m == prev:
                continue
            prev = m
            if m > cap:
                return False
            self.used[idx] = True
            self.n_remaining -= 1
            self.remaining_total -= m
            if m > 2:
                self.n_big -= 1
            ok = self._start_cycle(m, x, y)
            self.used[idx] = False
            self.n_remaining += 1
            self.remaining_total += m
            if m > 2:
                self.n_big += 1
            if ok:
                return True
            if self.timed_out:
                return False
        return False

    def _place_all_twos(self):
        cnt = self.cnt
        for p in range(self.v * self.u):
            if cnt[p] % 2:
                return False
        for i in range(self.v):
            for j in range(self.u):
                for _ in range(cnt[i * self.u + j] // 2):
                    self.chosen.append([i, self.v + j])
        return True

    def _start_cycle(self, m, x, y):
        p = x * self.u + y
        self.cnt[p] -= 1
        self.degl[x] -= 1
        self.degr[y] -= 1
        self.onl[x] = True
        self.onr[y] = True
        if self.sym and self.cycles_done == 0:
            self.introl = x + 1
            self.intror = y + 1
        seq = [x, self.v + y]
        ok = self._extend(m, seq)
        self.onl[x] = False
        self.onr[y] = False
        self.cnt[p] += 1
        self.degl[x] += 1
        self.degr[y] += 1
        return ok

    def _extend(self, m, seq):
        self.nodes += 1
        if self._expired():
            return False
        k = len(seq)
        u = self.u
        if k == m:
            x = seq[0]
            j = seq[-1] - self.v
            p = x * u + j
            if self.cnt[p] == 0:
                return False
            self.cnt[p] -= 1
            self.degl[x] -= 1
            self.degr[j] -= 1
            self.chosen.append(list(seq))
            self.cycles_done += 1
            # the finished cycle's vertices are free for later cycles
            for t in seq:
                if t < self.v:
                    self.onl[t] = False
                else:
                    self.onr[t - self.v] = False
            ok = self.solve()
            for t in seq:
                if t < self.v:
                    self.onl[t] = True
                else:
                    self.onr[t - self.v] = True
            if not ok:
                self.chosen.pop()
            self.cycles_done -= 1
            self.cnt[p] += 1
            self.degl[x] += 1
            self.degr[j] += 1
            return ok
        first = self.sym and self.cycles_done == 0
        if k % 2 == 0:
            # last vertex is right; pick the next left
            j = seq[-1] - self.v
            if first:
                cands = range(self.introl, self.introl + 1) if self.introl < self.v else ()
            else:
                cands = range(self.v)
            for w in cands:
                if self.onl[w]:
                    continue
                p = w * u + j
                if self.cnt[p] == 0:
                    continue
                self.cnt[p] -= 1
                self.degl[w] -= 1
                self.degr[j] -= 1
                self.onl[w] = True
                if first:
                    self.introl += 1
                seq.append(w)
                ok = self._extend(m, seq)
                seq.pop()
                if first:
                    self.introl -= 1
                self.onl[w] = False
                self.cnt[p] += 1
                self.degl[w] += 1
                self.degr[j] += 1
                if ok:
                    return True
                if self.timed_out:
                    return False
            return False
        else:
            # last vertex is left; pick the next right
            i = seq[-1]
            base = i * u
            if first:
                cands = range(self.intror, self.intror + 1) if self.intror < self.u else ()
            else:
                cands = range(self.u)
            for w in cands:
                if self.onr[w]:
                    continue
                p = base + w
                if self.cnt[p] == 0:
                    continue
                self.cnt[p] -= 1
                self.degl[i] -= 1
                self.degr[w] -= 1
                self.onr[w] = True
                if first:
                    self.intror += 1
                seq.append(self.v + w)
                ok = self._extend(m, seq)
                seq.pop()
                if first:
                    self.intror -= 1
                self.onr[w] = False
                self.cnt[p] += 1
                self.degl[i] += 1
                self.degr[w] += 1
                if ok:
                    return True
                if self.timed_out:
                    return False
            return False
