# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled unit-capacity flow kernel; same interface as ``_flowpy``."""

from libc.stdlib cimport malloc, free


cdef class FlowGraph:
    cdef readonly int n
    cdef readonly int m
    cdef int* tails
    cdef int* heads
    cdef int* indptr
    cdef int* nbr
    cdef int* eid
    cdef int* flow
    cdef int* pred
    cdef int* mark
    cdef int* queue
    cdef int stamp
    cdef int side_stamp

    def __cinit__(self, int n, tails, heads):
        cdef int m = len(tails)
        cdef int j, a, b
        if len(heads) != m:
            raise ValueError("tails and heads differ in length")
        self.n = n
        self.m = m
        self.tails = <int*> malloc((m + 1) * sizeof(int))
        self.heads = <int*> malloc((m + 1) * sizeof(int))
        self.indptr = <int*> malloc((n + 1) * sizeof(int))
        self.nbr = <int*> malloc((2 * m + 1) * sizeof(int))
        self.eid = <int*> malloc((2 * m + 1) * sizeof(int))
        self.flow = <int*> malloc((m + 1) * sizeof(int))
        self.pred = <int*> malloc((n + 1) * sizeof(int))
        self.mark = <int*> malloc((n + 1) * sizeof(int))
        self.queue = <int*> malloc((n + 1) * sizeof(int))
        if (not self.tails or not self.heads or not self.indptr or not self.nbr
                or not self.eid or not self.flow or not self.pred or not self.mark
                or not self.queue):
            raise MemoryError()
        for j in range(n + 1):
            self.indptr[j] = 0
        for j in range(n + 1):
            self.mark[j] = 0
        for j in range(m):
            a = tails[j]
            b = heads[j]
            if a < 0 or a >= n or b < 0 or b >= n:
                raise ValueError(f"edge {j} out of range")
            self.tails[j] = a
            self.heads[j] = b
            self.indptr[a + 1] += 1
            self.indptr[b + 1] += 1
        for j in range(n):
            self.indptr[j + 1] += self.indptr[j]
        cdef int* fill = <int*> malloc((n + 1) * sizeof(int))
        for j in range(n):
            fill[j] = self.indptr[j]
        for j in range(m):
            a = self.tails[j]
            b = self.heads[j]
            self.nbr[fill[a]] = b
            self.eid[fill[a]] = j
            fill[a] += 1
            self.nbr[fill[b]] = a
            self.eid[fill[b]] = j
            fill[b] += 1
        free(fill)
        self.stamp = 0
        self.side_stamp = -1

    def __dealloc__(self):
        free(self.tails)
        free(self.heads)
        free(self.indptr)
        free(self.nbr)
        free(self.eid)
        free(self.flow)
        free(self.pred)
        free(self.mark)
        free(self.queue)

    cdef int _flow(self, int s, int t, int cap) nogil:
        cdef int j, x, y, h, qh, qt, value = 0
        cdef bint found
        for j in range(self.m):
            self.flow[j] = 0
        while cap < 0 or value < cap:
            self.stamp += 1
            self.mark[s] = self.stamp
            self.pred[s] = -1
            self.queue[0] = s
            qh = 0
            qt = 1
            found = False
            while qh < qt and not found:
                x = self.queue[qh]
                qh += 1
                for h in range(self.indptr[x], self.indptr[x + 1]):
                    y = self.nbr[h]
                    if self.mark[y] == self.stamp:
                        continue
                    j = self.eid[h]
                    if self.tails[j] == x:
                        if self.flow[j] >= 1:
                            continue
                    elif self.flow[j] <= -1:
                        continue
                    self.mark[y] = self.stamp
                    self.pred[y] = j
                    if y == t:
                        found = True
                        break
                    self.queue[qt] = y
                    qt += 1
            if not found:
                self.side_stamp = self.stamp
                return value
            y = t
            while y != s:
                j = self.pred[y]
                if self.tails[j] == y:
                    self.flow[j] -= 1
                    y = self.heads[j]
                else:
                    self.flow[j] += 1
                    y = self.tails[j]
            value += 1
        self.side_stamp = -1
        return value

    def max_flow(self, int s, int t, int cap=-1):
        if s == t:
            raise ValueError("source equals sink")
        if s < 0 or s >= self.n or t < 0 or t >= self.n:
            raise ValueError("vertex out of range")
        return self._flow(s, t, cap)

    def source_side(self):
        if self.side_stamp < 0:
            return None
        cdef int v
        return [self.mark[v] == self.side_stamp for v in range(self.n)]

    def min_over_targets(self, int root, targets, int cap=-1):
        cdef int best = -1, arg = -1, val, t
        side = None
        if root < 0 or root >= self.n:
            raise ValueError("vertex out of range")
        for t in targets:
            if t == root:
                continue
            if t < 0 or t >= self.n:
                raise ValueError("vertex out of range")
            val = self._flow(root, t, cap)
            if cap >= 0 and val < cap:
                return val, t, self.source_side()
            if best < 0 or val < best:
                best = val
                arg = t
                side = self.source_side()
        if cap >= 0:
            return cap, -1, None
        return best, arg, side
