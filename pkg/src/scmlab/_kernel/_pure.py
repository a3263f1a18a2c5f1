"""Pure-Python kernel backend.

Terms are (component, exponent-tuple, coefficient) triples, kept sorted in
strictly descending order (ring order on the monomial, ties broken by
component index — lower component is larger).  The compiled backend in
``_core.pyx`` implements the same contract; results must be bit-identical.

Coefficients: ints in [0, p) when p > 0, `fractions.Fraction` when p == 0.
"""

import functools
from fractions import Fraction

BACKEND_NAME = "pure"


class Poly:
    """Immutable sorted term list.  Opaque outside the kernel."""

    __slots__ = ("terms",)

    def __init__(self, terms):
        self.terms = terms  # tuple of (comp, exps, coeff)

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)


class Context:
    """Arithmetic context: variable count, order segments, characteristic."""

    def __init__(self, nvars, segments, p):
        self.nvars = nvars
        self.segments = segments
        self.p = p

    # -- coefficient helpers -------------------------------------------
    def _cadd(self, a, b):
        return (a + b) % self.p if self.p else a + b

    def _cmul(self, a, b):
        return (a * b) % self.p if self.p else a * b

    def _cneg(self, a):
        return (-a) % self.p if self.p else -a

    def _cinv(self, a):
        if self.p:
            return pow(a, self.p - 2, self.p)
        return 1 / Fraction(a)

    # -- term comparison ------------------------------------------------
    def cmp_mono(self, e1, e2):
        for seg in self.segments:
            kind = seg[0]
            if kind == "deg":
                _, idx, w = seg
                d1 = 0
                d2 = 0
                for k in range(len(idx)):
                    i = idx[k]
                    d1 += w[k] * e1[i]
                    d2 += w[k] * e2[i]
                if d1 != d2:
                    return 1 if d1 > d2 else -1
            elif kind == "revlex":
                for i in reversed(seg[1]):
                    if e1[i] != e2[i]:
                        return 1 if e1[i] < e2[i] else -1
            else:
                for i in seg[1]:
                    if e1[i] != e2[i]:
                        return 1 if e1[i] > e2[i] else -1
        return 0

    def cmp_term(self, c1, e1, c2, e2):
        r = self.cmp_mono(e1, e2)
        if r:
            return r
        if c1 != c2:
            return 1 if c1 < c2 else -1
        return 0

    # -- construction ----------------------------------------------------
    def poly(self, triples):
        """Canonicalize arbitrary (comp, exps, coeff) triples."""
        acc = {}
        for comp, exps, coeff in triples:
            key = (comp, tuple(exps))
            c0 = acc.get(key)
            acc[key] = self._cadd(c0, coeff) if c0 is not None else (
                coeff % self.p if self.p else Fraction(coeff))
        return self._from_dict(acc)

    def _from_dict(self, acc):
        items = [(comp, exps, c) for (comp, exps), c in acc.items()
                 if c != 0]
        items.sort(key=functools.cmp_to_key(
            lambda t, u: self.cmp_term(t[0], t[1], u[0], u[1])), reverse=True)
        return Poly(tuple(items))

    def zero(self):
        return Poly(())

    # -- queries ----------------------------------------------------------
    def terms(self, h):
        return h.terms

    def is_zero(self, h):
        return not h.terms

    def nterms(self, h):
        return len(h.terms)

    def lead(self, h):
        return h.terms[0]

    # -- arithmetic --------------------------------------------------------
    def _merge(self, t1, t2):
        """Merge two descending term tuples, combining equal terms."""
        out = []
        i = j = 0
        n1 = len(t1)
        n2 = len(t2)
        while i < n1 and j < n2:
            a = t1[i]
            b = t2[j]
            r = self.cmp_term(a[0], a[1], b[0], b[1])
            if r > 0:
                out.append(a)
                i += 1
            elif r < 0:
                out.append(b)
                j += 1
            else:
                c = self._cadd(a[2], b[2])
                if c != 0:
                    out.append((a[0], a[1], c))
                i += 1
                j += 1
        out.extend(t1[i:])
        out.extend(t2[j:])
        return tuple(out)

    def add(self, h1, h2):
        return Poly(self._merge(h1.terms, h2.terms))

    def neg(self, h):
        return Poly(tuple((c0, e, self._cneg(c)) for c0, e, c in h.terms))

    def scalar_mul(self, h, c):
        if c == 0:
            return Poly(())
        return Poly(tuple((c0, e, self._cmul(cc, c)) for c0, e, cc in h.terms))

    def term_mul(self, h, c, exps, comp_add=0):
        """c * x^exps * h, with all components shifted by comp_add."""
        if c == 0:
            return Poly(())
        out = []
        for comp, e, cc in h.terms:
            ne = tuple(e[i] + exps[i] for i in range(self.nvars))
            out.append((comp + comp_add, ne, self._cmul(cc, c)))
        return Poly(tuple(out))

    def combine(self, c1, e1, h1, c2, e2, h2):
        """c1*x^e1*h1 + c2*x^e2*h2."""
        a = self.term_mul(h1, c1, e1)
        b = self.term_mul(h2, c2, e2)
        return self.add(a, b)

    def mul(self, hp, hm):
        """Product of a rank-1 element (all comps 0) with any element."""
        acc = {}
        for _, e1, c1 in hp.terms:
            for comp, e2, c2 in hm.terms:
                ne = tuple(e1[i] + e2[i] for i in range(self.nvars))
                key = (comp, ne)
                c0 = acc.get(key)
                c = self._cmul(c1, c2)
                acc[key] = self._cadd(c0, c) if c0 is not None else c
        return self._from_dict(acc)

    def monic(self, h):
        """(monic version of h, old leading coefficient)."""
        if not h.terms:
            return h, None
        lc = h.terms[0][2]
        if lc == (1 if self.p else Fraction(1)):
            return h, lc
        inv = self._cinv(lc)
        return self.scalar_mul(h, inv), lc


class Reducer:
    """Growable basis with divisor lookup and full normal-form reduction.

    Divisor choice: first basis element, in insertion order, whose leading
    term divides.  This rule is part of the backend contract.
    """

    def __init__(self, ctx):
        self.ctx = ctx
        self.basis = []
        self._by_comp = {}  # comp -> list of (mask, lead_exps, idx)

    def __len__(self):
        return len(self.basis)

    def add(self, h):
        comp, exps, _ = h.terms[0]
        mask = 0
        for i, e in enumerate(exps):
            if e:
                mask |= 1 << i
        self._by_comp.setdefault(comp, []).append((mask, exps, len(self.basis)))
        self.basis.append(h)

    def find_divisor(self, comp, exps):
        cands = self._by_comp.get(comp)
        if not cands:
            return -1
        mask = 0
        for i, e in enumerate(exps):
            if e:
                mask |= 1 << i
        for gmask, ge, idx in cands:
            if gmask & ~mask:
                continue
            ok = True
            for i in range(len(exps)):
                if ge[i] > exps[i]:
                    ok = False
                    break
            if ok:
                return idx
        return -1

    def reduce(self, f, want_quotients=False):
        """Full normal form of f.  Returns (nf, quotients) where quotients
        is a list of (basis_index, coeff, exps) with
        f = nf + sum(coeff * x^exps * basis[i])."""
        ctx = self.ctx
        out = []
        work = list(f.terms)
        pos = 0
        quots = [] if want_quotients else None
        while pos < len(work):
            comp, exps, coeff = work[pos]
            gi = self.find_divisor(comp, exps)
            if gi < 0:
                out.append(work[pos])
                pos += 1
                continue
            g = self.basis[gi]
            gc = g.terms[0][2]
            q = ctx._cmul(coeff, ctx._cinv(gc))
            qe = tuple(exps[i] - g.terms[0][1][i] for i in range(ctx.nvars))
            if want_quotients:
                quots.append((gi, q, qe))
            # work[pos:] -= q * x^qe * g ; leading terms cancel exactly and
            # every surviving term is smaller, so the processed prefix is
            # already final (it lives in `out`).
            scaled = ctx.term_mul(g, ctx._cneg(q), qe)
            work = list(ctx._merge(tuple(work[pos + 1:]), scaled.terms[1:]))
            pos = 0
        return Poly(tuple(out)), quots
