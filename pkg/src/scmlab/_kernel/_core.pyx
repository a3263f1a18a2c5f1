# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel backend (prime-field coefficients only).

Mirrors ``_pure`` exactly: same term representation contract, same divisor
selection rule, same canonical ordering, so results are bit-identical.
"""

from libc.stdlib cimport malloc, free, realloc
from libc.string cimport memcpy

import functools

BACKEND_NAME = "compiled"


cdef class Poly:
    cdef int m                      # number of terms
    cdef int n                      # number of variables
    cdef int* comps
    cdef unsigned short* exps       # m * n, row per term
    cdef long long* coeffs

    def __cinit__(self):
        self.m = 0
        self.n = 0
        self.comps = NULL
        self.exps = NULL
        self.coeffs = NULL

    def __dealloc__(self):
        if self.comps != NULL:
            free(self.comps)
        if self.exps != NULL:
            free(self.exps)
        if self.coeffs != NULL:
            free(self.coeffs)

    def __len__(self):
        return self.m

    def __bool__(self):
        return self.m > 0


cdef Poly _alloc_poly(int m, int n):
    cdef Poly p = Poly.__new__(Poly)
    p.m = m
    p.n = n
    if m > 0:
        p.comps = <int*>malloc(m * sizeof(int))
        p.exps = <unsigned short*>malloc(m * n * sizeof(unsigned short))
        p.coeffs = <long long*>malloc(m * sizeof(long long))
        if p.comps == NULL or p.exps == NULL or p.coeffs == NULL:
            raise MemoryError()
    return p


cdef long long _powmod(long long b, long long e, long long p):
    cdef long long r = 1
    b %= p
    while e > 0:
        if e & 1:
            r = (r * b) % p
        b = (b * b) % p
        e >>= 1
    return r


cdef class Context:
    cdef public int nvars
    cdef public long long p
    cdef object _segments
    cdef int nsegs
    cdef int* seg_kind      # 0 deg, 1 revlex, 2 lex
    cdef int* seg_start
    cdef int* seg_len
    cdef int* seg_idx
    cdef long long* seg_w

    def __cinit__(self, nvars, segments, p):
        self.nvars = nvars
        self.p = p
        if p <= 0:
            raise ValueError("compiled backend requires a prime field")
        self._segments = segments
        self.nsegs = len(segments)
        self.seg_kind = <int*>malloc(self.nsegs * sizeof(int))
        self.seg_start = <int*>malloc(self.nsegs * sizeof(int))
        self.seg_len = <int*>malloc(self.nsegs * sizeof(int))
        cdef int total = 0
        for seg in segments:
            total += len(seg[1])
        self.seg_idx = <int*>malloc(total * sizeof(int))
        self.seg_w = <long long*>malloc(total * sizeof(long long))
        cdef int pos = 0
        cdef int k
        for si, seg in enumerate(segments):
            kind = seg[0]
            idx = seg[1]
            self.seg_kind[si] = 0 if kind == "deg" else (
                1 if kind == "revlex" else 2)
            self.seg_start[si] = pos
            self.seg_len[si] = len(idx)
            for k in range(len(idx)):
                self.seg_idx[pos + k] = idx[k]
                self.seg_w[pos + k] = seg[2][k] if kind == "deg" else 0
            pos += len(idx)

    def __dealloc__(self):
        if self.seg_kind != NULL:
            free(self.seg_kind)
        if self.seg_start != NULL:
            free(self.seg_start)
        if self.seg_len != NULL:
            free(self.seg_len)
        if self.seg_idx != NULL:
            free(self.seg_idx)
        if self.seg_w != NULL:
            free(self.seg_w)

    @property
    def segments(self):
        return self._segments

    # -- coefficient helpers (Python-visible, used by the engine) -------
    def _cadd(self, a, b):
        return (a + b) % self.p

    def _cmul(self, a, b):
        return (a * b) % self.p

    def _cneg(self, a):
        return (-a) % self.p

    def _cinv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of 0")
        return _powmod(a, self.p - 2, self.p)

    # -- comparisons ------------------------------------------------------
    cdef int _cmp_exps(self, unsigned short* e1, unsigned short* e2):
        cdef int s, k, i
        cdef long long d1, d2
        cdef int kind, st, ln
        for s in range(self.nsegs):
            kind = self.seg_kind[s]
            st = self.seg_start[s]
            ln = self.seg_len[s]
            if kind == 0:
                d1 = 0
                d2 = 0
                for k in range(ln):
                    i = self.seg_idx[st + k]
                    d1 += self.seg_w[st + k] * e1[i]
                    d2 += self.seg_w[st + k] * e2[i]
                if d1 != d2:
                    return 1 if d1 > d2 else -1
            elif kind == 1:
                for k in range(ln - 1, -1, -1):
                    i = self.seg_idx[st + k]
                    if e1[i] != e2[i]:
                        return 1 if e1[i] < e2[i] else -1
            else:
                for k in range(ln):
                    i = self.seg_idx[st + k]
                    if e1[i] != e2[i]:
                        return 1 if e1[i] > e2[i] else -1
        return 0

    cdef int _cmp_terms_c(self, int c1, unsigned short* e1,
                          int c2, unsigned short* e2):
        cdef int r = self._cmp_exps(e1, e2)
        if r:
            return r
        if c1 != c2:
            return 1 if c1 < c2 else -1
        return 0

    def cmp_mono(self, e1, e2):
        cdef unsigned short* b1 = <unsigned short*>malloc(
            self.nvars * sizeof(unsigned short))
        cdef unsigned short* b2 = <unsigned short*>malloc(
            self.nvars * sizeof(unsigned short))
        cdef int i
        for i in range(self.nvars):
            b1[i] = e1[i]
            b2[i] = e2[i]
        cdef int r = self._cmp_exps(b1, b2)
        free(b1)
        free(b2)
        return r

    def cmp_term(self, c1, e1, c2, e2):
        r = self.cmp_mono(e1, e2)
        if r:
            return r
        if c1 != c2:
            return 1 if c1 < c2 else -1
        return 0

    # -- construction -------------------------------------------------------
    def poly(self, triples):
        acc = {}
        for comp, exps, coeff in triples:
            key = (comp, tuple(exps))
            c0 = acc.get(key)
            acc[key] = (c0 + coeff) % self.p if c0 is not None \
                else coeff % self.p
        items = [(comp, exps, c) for (comp, exps), c in acc.items() if c != 0]
        items.sort(key=functools.cmp_to_key(
            lambda t, u: self.cmp_term(t[0], t[1], u[0], u[1])), reverse=True)
        cdef Poly out = _alloc_poly(len(items), self.nvars)
        cdef int k, i
        for k, (comp, exps, c) in enumerate(items):
            out.comps[k] = comp
            out.coeffs[k] = c
            for i in range(self.nvars):
                out.exps[k * self.nvars + i] = exps[i]
        return out

    def zero(self):
        return _alloc_poly(0, self.nvars)

    # -- queries ---------------------------------------------------------------
    def terms(self, Poly h):
        out = []
        cdef int k, i
        for k in range(h.m):
            e = tuple(h.exps[k * self.nvars + i] for i in range(self.nvars))
            out.append((h.comps[k], e, h.coeffs[k]))
        return tuple(out)

    def is_zero(self, Poly h):
        return h.m == 0

    def nterms(self, Poly h):
        return h.m

    def lead(self, Poly h):
        if h.m == 0:
            raise ValueError("zero element has no lead")
        cdef int i
        e = tuple(h.exps[i] for i in range(self.nvars))
        return (h.comps[0], e, h.coeffs[0])

    # -- arithmetic ----------------------------------------------------------------
    cdef Poly _merge_c(self, Poly a, Poly b):
        cdef int n = self.nvars
        cdef Poly out = _alloc_poly(a.m + b.m, n)
        cdef int i = 0, j = 0, k = 0
        cdef int r
        cdef long long c
        while i < a.m and j < b.m:
            r = self._cmp_terms_c(a.comps[i], &a.exps[i * n],
                                  b.comps[j], &b.exps[j * n])
            if r > 0:
                out.comps[k] = a.comps[i]
                out.coeffs[k] = a.coeffs[i]
                memcpy(&out.exps[k * n], &a.exps[i * n],
                       n * sizeof(unsigned short))
                i += 1
                k += 1
            elif r < 0:
                out.comps[k] = b.comps[j]
                out.coeffs[k] = b.coeffs[j]
                memcpy(&out.exps[k * n], &b.exps[j * n],
                       n * sizeof(unsigned short))
                j += 1
                k += 1
            else:
                c = (a.coeffs[i] + b.coeffs[j]) % self.p
                if c != 0:
                    out.comps[k] = a.comps[i]
                    out.coeffs[k] = c
                    memcpy(&out.exps[k * n], &a.exps[i * n],
                           n * sizeof(unsigned short))
                    k += 1
                i += 1
                j += 1
        while i < a.m:
            out.comps[k] = a.comps[i]
            out.coeffs[k] = a.coeffs[i]
            memcpy(&out.exps[k * n], &a.exps[i * n],
                   n * sizeof(unsigned short))
            i += 1
            k += 1
        while j < b.m:
            out.comps[k] = b.comps[j]
            out.coeffs[k] = b.coeffs[j]
            memcpy(&out.exps[k * n], &b.exps[j * n],
                   n * sizeof(unsigned short))
            j += 1
            k += 1
        out.m = k
        return out

    def add(self, Poly h1, Poly h2):
        return self._merge_c(h1, h2)

    def neg(self, Poly h):
        cdef Poly out = _alloc_poly(h.m, self.nvars)
        cdef int k
        for k in range(h.m):
            out.comps[k] = h.comps[k]
            out.coeffs[k] = (self.p - h.coeffs[k]) % self.p
        memcpy(out.exps, h.exps, h.m * self.nvars * sizeof(unsigned short))
        return out

    def scalar_mul(self, Poly h, c):
        cdef long long cc = c % self.p
        if cc == 0:
            return _alloc_poly(0, self.nvars)
        cdef Poly out = _alloc_poly(h.m, self.nvars)
        cdef int k
        for k in range(h.m):
            out.comps[k] = h.comps[k]
            out.coeffs[k] = (h.coeffs[k] * cc) % self.p
        memcpy(out.exps, h.exps, h.m * self.nvars * sizeof(unsigned short))
        return out

    cdef Poly _term_mul_c(self, Poly h, long long c, unsigned short* exps,
                          int comp_add):
        cdef int n = self.nvars
        if c == 0:
            return _alloc_poly(0, n)
        cdef Poly out = _alloc_poly(h.m, n)
        cdef int k, i
        for k in range(h.m):
            out.comps[k] = h.comps[k] + comp_add
            out.coeffs[k] = (h.coeffs[k] * c) % self.p
            for i in range(n):
                out.exps[k * n + i] = h.exps[k * n + i] + exps[i]
        return out

    def term_mul(self, Poly h, c, exps, comp_add=0):
        cdef unsigned short* buf = <unsigned short*>malloc(
            self.nvars * sizeof(unsigned short))
        cdef int i
        for i in range(self.nvars):
            buf[i] = exps[i]
        cdef Poly out = self._term_mul_c(h, c % self.p, buf, comp_add)
        free(buf)
        return out

    def combine(self, c1, e1, Poly h1, c2, e2, Poly h2):
        cdef Poly a = self.term_mul(h1, c1, e1)
        cdef Poly b = self.term_mul(h2, c2, e2)
        return self._merge_c(a, b)

    def mul(self, Poly hp, Poly hm):
        cdef Poly acc = _alloc_poly(0, self.nvars)
        cdef Poly piece
        cdef int k
        for k in range(hp.m):
            if hp.comps[k] != 0:
                raise ValueError("left factor must be rank-1")
            piece = self._term_mul_c(hm, hp.coeffs[k],
                                     &hp.exps[k * self.nvars], 0)
            acc = self._merge_c(acc, piece)
        return acc

    def monic(self, Poly h):
        if h.m == 0:
            return h, None
        cdef long long lc = h.coeffs[0]
        if lc == 1:
            return h, lc
        return self.scalar_mul(h, _powmod(lc, self.p - 2, self.p)), lc


cdef class Reducer:
    cdef Context ctx
    cdef list basis
    cdef int n_elts, cap
    cdef int* bcomps
    cdef unsigned long long* bmasks
    cdef long long* binvs

    def __cinit__(self, Context ctx):
        self.ctx = ctx
        self.basis = []
        self.n_elts = 0
        self.cap = 16
        self.bcomps = <int*>malloc(self.cap * sizeof(int))
        self.bmasks = <unsigned long long*>malloc(
            self.cap * sizeof(unsigned long long))
        self.binvs = <long long*>malloc(self.cap * sizeof(long long))

    def __dealloc__(self):
        if self.bcomps != NULL:
            free(self.bcomps)
        if self.bmasks != NULL:
            free(self.bmasks)
        if self.binvs != NULL:
            free(self.binvs)

    def __len__(self):
        return self.n_elts

    def add(self, Poly h):
        if h.m == 0:
            raise ValueError("cannot add zero to a reducer")
        if self.n_elts == self.cap:
            self.cap *= 2
            self.bcomps = <int*>realloc(self.bcomps, self.cap * sizeof(int))
            self.bmasks = <unsigned long long*>realloc(
                self.bmasks, self.cap * sizeof(unsigned long long))
            self.binvs = <long long*>realloc(
                self.binvs, self.cap * sizeof(long long))
        cdef unsigned long long mask = 0
        cdef int i
        for i in range(self.ctx.nvars):
            if h.exps[i]:
                mask |= (<unsigned long long>1) << i
        self.bcomps[self.n_elts] = h.comps[0]
        self.bmasks[self.n_elts] = mask
        self.binvs[self.n_elts] = _powmod(h.coeffs[0], self.ctx.p - 2,
                                          self.ctx.p)
        self.basis.append(h)
        self.n_elts += 1

    cdef int _find_divisor(self, int comp, unsigned short* exps,
                           unsigned long long mask):
        cdef int b, i, ok
        cdef Poly g
        cdef int n = self.ctx.nvars
        for b in range(self.n_elts):
            if self.bcomps[b] != comp:
                continue
            if self.bmasks[b] & ~mask:
                continue
            g = <Poly>self.basis[b]
            ok = 1
            for i in range(n):
                if g.exps[i] > exps[i]:
                    ok = 0
                    break
            if ok:
                return b
        return -1

    def find_divisor(self, comp, exps):
        cdef unsigned short* buf = <unsigned short*>malloc(
            self.ctx.nvars * sizeof(unsigned short))
        cdef unsigned long long mask = 0
        cdef int i
        for i in range(self.ctx.nvars):
            buf[i] = exps[i]
            if buf[i]:
                mask |= (<unsigned long long>1) << i
        cdef int r = self._find_divisor(comp, buf, mask)
        free(buf)
        return r if r >= 0 else -1

    def reduce(self, Poly f, want_quotients=False):
        """Full normal form; same divisor rule and quotient order as the
        pure backend."""
        cdef Context ctx = self.ctx
        cdef int n = ctx.nvars
        cdef long long p = ctx.p
        quots = [] if want_quotients else None

        # working buffer (descending terms); out buffer for the normal form
        cdef int wcap = f.m if f.m > 8 else 8
        cdef int* wcomps = <int*>malloc(wcap * sizeof(int))
        cdef unsigned short* wexps = <unsigned short*>malloc(
            wcap * n * sizeof(unsigned short))
        cdef long long* wcoeffs = <long long*>malloc(wcap * sizeof(long long))
        cdef int wm = f.m
        memcpy(wcomps, f.comps, f.m * sizeof(int))
        memcpy(wexps, f.exps, f.m * n * sizeof(unsigned short))
        memcpy(wcoeffs, f.coeffs, f.m * sizeof(long long))

        cdef int ocap = 16
        cdef int* ocomps = <int*>malloc(ocap * sizeof(int))
        cdef unsigned short* oexps = <unsigned short*>malloc(
            ocap * n * sizeof(unsigned short))
        cdef long long* ocoeffs = <long long*>malloc(ocap * sizeof(long long))
        cdef int om = 0

        cdef int pos = 0
        cdef int gi, i, k, gm, si, wi, r
        cdef unsigned long long mask
        cdef long long q, c
        cdef Poly g
        cdef unsigned short* qe = <unsigned short*>malloc(
            n * sizeof(unsigned short))
        cdef unsigned short* tmpe = <unsigned short*>malloc(
            n * sizeof(unsigned short))
        cdef int* ncomps
        cdef unsigned short* nexps
        cdef long long* ncoeffs
        cdef int nm, ncap

        while pos < wm:
            mask = 0
            for i in range(n):
                if wexps[pos * n + i]:
                    mask |= (<unsigned long long>1) << i
            gi = self._find_divisor(wcomps[pos], &wexps[pos * n], mask)
            if gi < 0:
                if om == ocap:
                    ocap *= 2
                    ocomps = <int*>realloc(ocomps, ocap * sizeof(int))
                    oexps = <unsigned short*>realloc(
                        oexps, ocap * n * sizeof(unsigned short))
                    ocoeffs = <long long*>realloc(
                        ocoeffs, ocap * sizeof(long long))
                ocomps[om] = wcomps[pos]
                ocoeffs[om] = wcoeffs[pos]
                memcpy(&oexps[om * n], &wexps[pos * n],
                       n * sizeof(unsigned short))
                om += 1
                pos += 1
                continue
            g = <Poly>self.basis[gi]
            gm = g.m
            q = (wcoeffs[pos] * self.binvs[gi]) % p
            for i in range(n):
                qe[i] = wexps[pos * n + i] - g.exps[i]
            if want_quotients:
                quots.append((gi, q,
                              tuple(qe[i] for i in range(n))))
            # merge work[pos+1:] with (-q) * x^qe * tail(g)
            ncap = (wm - pos - 1) + (gm - 1)
            if ncap < 8:
                ncap = 8
            ncomps = <int*>malloc(ncap * sizeof(int))
            nexps = <unsigned short*>malloc(ncap * n * sizeof(unsigned short))
            ncoeffs = <long long*>malloc(ncap * sizeof(long long))
            nm = 0
            wi = pos + 1
            si = 1
            while wi < wm and si < gm:
                # scaled g term si: exps + qe, coeff = -q * g.coeffs[si]
                for k in range(n):
                    tmpe[k] = g.exps[si * n + k] + qe[k]
                r = ctx._cmp_terms_c(wcomps[wi], &wexps[wi * n],
                                     g.comps[si], tmpe)
                if r > 0:
                    ncomps[nm] = wcomps[wi]
                    ncoeffs[nm] = wcoeffs[wi]
                    memcpy(&nexps[nm * n], &wexps[wi * n],
                           n * sizeof(unsigned short))
                    wi += 1
                    nm += 1
                elif r < 0:
                    ncomps[nm] = g.comps[si]
                    ncoeffs[nm] = ((p - q) * g.coeffs[si]) % p
                    for k in range(n):
                        nexps[nm * n + k] = g.exps[si * n + k] + qe[k]
                    si += 1
                    nm += 1
                else:
                    c = (wcoeffs[wi] + (p - q) * g.coeffs[si]) % p
                    if c != 0:
                        ncomps[nm] = wcomps[wi]
                        ncoeffs[nm] = c
                        memcpy(&nexps[nm * n], &wexps[wi * n],
                               n * sizeof(unsigned short))
                        nm += 1
                    wi += 1
                    si += 1
            while wi < wm:
                ncomps[nm] = wcomps[wi]
                ncoeffs[nm] = wcoeffs[wi]
                memcpy(&nexps[nm * n], &wexps[wi * n],
                       n * sizeof(unsigned short))
                wi += 1
                nm += 1
            while si < gm:
                ncomps[nm] = g.comps[si]
                ncoeffs[nm] = ((p - q) * g.coeffs[si]) % p
                for k in range(n):
                    nexps[nm * n + k] = g.exps[si * n + k] + qe[k]
                si += 1
                nm += 1
            free(wcomps)
            free(wexps)
            free(wcoeffs)
            wcomps = ncomps
            wexps = nexps
            wcoeffs = ncoeffs
            wm = nm
            pos = 0

        cdef Poly out = _alloc_poly(om, n)
        if om:
            memcpy(out.comps, ocomps, om * sizeof(int))
            memcpy(out.exps, oexps, om * n * sizeof(unsigned short))
            memcpy(out.coeffs, ocoeffs, om * sizeof(long long))
        free(wcomps)
        free(wexps)
        free(wcoeffs)
        free(ocomps)
        free(oexps)
        free(ocoeffs)
        free(qe)
        free(tmpe)
        return out, quots
