# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled GF(2) elimination engine (uint64-word rows).

Same surface as fsglab._gf2py; selected automatically by fsglab.gf2 when the
extension has been built.
"""

from libc.stdlib cimport calloc, free
from libc.string cimport memcpy

ctypedef unsigned long long u64

ENGINE_NAME = "compiled"

ADDED = 0
DEPENDENT = 1
INCONSISTENT = 2

DEF _ADDED = 0
DEF _DEPENDENT = 1
DEF _INCONSISTENT = 2


cdef class Eliminator:
    """Incremental Gaussian elimination over GF(2) in row echelon form."""

    cdef public int ncols
    cdef public int rank
    cdef int nwords
    cdef u64 *rows        # ncols x nwords, slot per pivot column
    cdef char *rhs
    cdef char *has_pivot
    cdef u64 *scratch

    def __cinit__(self, int ncols):
        if ncols <= 0:
            raise ValueError("ncols must be positive")
        self.ncols = ncols
        self.rank = 0
        self.nwords = (ncols + 63) >> 6
        self.rows = <u64 *> calloc(ncols * self.nwords, sizeof(u64))
        self.rhs = <char *> calloc(ncols, 1)
        self.has_pivot = <char *> calloc(ncols, 1)
        self.scratch = <u64 *> calloc(self.nwords, sizeof(u64))
        if (self.rows == NULL or self.rhs == NULL or self.has_pivot == NULL
                or self.scratch == NULL):
            raise MemoryError()

    def __dealloc__(self):
        free(self.rows)
        free(self.rhs)
        free(self.has_pivot)
        free(self.scratch)

    cdef int _top_bit(self, u64 *row):
        cdef int w, b
        cdef u64 v
        for w in range(self.nwords - 1, -1, -1):
            v = row[w]
            if v:
                b = 63
                while not (v >> b) & 1:
                    b -= 1
                return (w << 6) + b
        return -1

    def add_row(self, object coeffs, int rhs):
        cdef int w, p
        cdef u64 *row = self.scratch
        cdef u64 *base
        cdef object c = coeffs
        for w in range(self.nwords):
            row[w] = <u64> (c & 0xFFFFFFFFFFFFFFFF)
            c >>= 64
        cdef int r = rhs & 1
        while True:
            p = self._top_bit(row)
            if p < 0:
                return _INCONSISTENT if r else _DEPENDENT
            if self.has_pivot[p]:
                base = self.rows + p * self.nwords
                for w in range(self.nwords):
                    row[w] ^= base[w]
                r ^= self.rhs[p]
            else:
                break
        base = self.rows + p * self.nwords
        memcpy(base, row, self.nwords * sizeof(u64))
        self.rhs[p] = r
        self.has_pivot[p] = 1
        self.rank += 1
        return _ADDED

    def copy(self):
        cdef Eliminator dup = Eliminator(self.ncols)
        memcpy(dup.rows, self.rows, self.ncols * self.nwords * sizeof(u64))
        memcpy(dup.rhs, self.rhs, self.ncols)
        memcpy(dup.has_pivot, self.has_pivot, self.ncols)
        dup.rank = self.rank
        return dup

    def solve(self):
        """Back-substitute; lower pivot columns resolve before higher ones."""
        if self.rank != self.ncols:
            return None
        cdef u64 *x = <u64 *> calloc(self.nwords, sizeof(u64))
        if x == NULL:
            raise MemoryError()
        cdef int p, w, bit
        cdef u64 *base
        cdef u64 acc
        try:
            for p in range(self.ncols):
                base = self.rows + p * self.nwords
                acc = 0
                for w in range(self.nwords):
                    acc ^= base[w] & x[w]
                # exclude the pivot bit itself (x bit p is still 0 here)
                bit = self.rhs[p] ^ (self._parity(acc))
                if bit:
                    x[p >> 6] |= (<u64> 1) << (p & 63)
            out = 0
            for w in range(self.nwords - 1, -1, -1):
                out = (out << 64) | <object> x[w]
            return out
        finally:
            free(x)

    cdef int _parity(self, u64 v):
        v ^= v >> 32
        v ^= v >> 16
        v ^= v >> 8
        v ^= v >> 4
        v ^= v >> 2
        v ^= v >> 1
        return <int> (v & 1)

    def contains(self, object coeffs):
        cdef int w, p
        cdef u64 *row = self.scratch
        cdef u64 *base
        cdef object c = coeffs
        for w in range(self.nwords):
            row[w] = <u64> (c & 0xFFFFFFFFFFFFFFFF)
            c >>= 64
        while True:
            p = self._top_bit(row)
            if p < 0:
                return True
            if not self.has_pivot[p]:
                return False
            base = self.rows + p * self.nwords
            for w in range(self.nwords):
                row[w] ^= base[w]


def solve_system(rows, rhs, int ncols):
    cdef Eliminator elim = Eliminator(ncols)
    cdef int status
    for coeffs, r in zip(rows, rhs):
        status = elim.add_row(coeffs, r)
        if status == _INCONSISTENT:
            return ("inconsistent", None)
    if elim.rank == ncols:
        return ("unique", elim.solve())
    return ("underdetermined", elim.rank)


def rank_of(rows, int ncols):
    cdef Eliminator elim = Eliminator(ncols)
    for coeffs in rows:
        elim.add_row(coeffs, 0)
    return elim.rank
