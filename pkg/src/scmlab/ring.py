"""Polynomial rings with graded/bigraded bookkeeping, and exact polynomials.

Weights are either a positive int per variable or a tuple of non-negative
ints per variable (multigrading; components must not all vanish).  The
monomial order always uses the scalarized weight (sum of components), which
is positive, so every order here is global.
"""

import re
from fractions import Fraction

from . import _kernel
from .errors import ParseError, RingError
from .fields import FieldSpec, GF, QQ
from .orders import OrderSpec, build_segments, degrevlex

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


class PolyRing:
    def __init__(self, field: FieldSpec, names, weights=None, order=None):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise RingError("duplicate variable names")
        for n in names:
            if not _NAME_RE.match(n):
                raise RingError(f"invalid variable name {n!r}")
        if len(names) > 64:
            raise RingError("at most 64 variables are supported")
        if weights is None:
            weights = tuple(1 for _ in names)
        weights = tuple(
            tuple(w) if isinstance(w, (tuple, list)) else int(w)
            for w in weights)
        if len(weights) != len(names):
            raise RingError("one weight per variable required")
        scalar = []
        gdim = None
        for w in weights:
            if isinstance(w, tuple):
                if any(c < 0 for c in w) or sum(w) <= 0:
                    raise RingError(f"invalid multiweight {w}")
                if gdim is None:
                    gdim = len(w)
                elif gdim != len(w):
                    raise RingError("multiweights must share a length")
                scalar.append(sum(w))
            else:
                if w <= 0:
                    raise RingError("weights must be positive")
                scalar.append(w)
        if gdim is not None:
            weights = tuple(
                w if isinstance(w, tuple) else (w,) + (0,) * (gdim - 1)
                for w in weights)
        self.field = field
        self.names = names
        self.weights = weights
        self.scalar_weights = tuple(scalar)
        self.grading_dim = gdim  # None for plain int grading
        self.order = order if order is not None else degrevlex()
        self.segments = build_segments(self.order, len(names),
                                       self.scalar_weights)
        self.ctx = _kernel.backend_for(field.characteristic).Context(
            len(names), self.segments, field.characteristic)
        self._index = {n: i for i, n in enumerate(names)}
        self._key = (field, names, weights, self.order)

    # rings compare by value so separately constructed contexts interoperate
    def __eq__(self, other):
        return isinstance(other, PolyRing) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        f = ("Q" if self.field.kind == "rationals"
             else f"GF({self.field.characteristic})")
        return f"PolyRing({f}, {list(self.names)}, order={self.order})"

    @property
    def nvars(self):
        return len(self.names)

    def var_index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise RingError(f"unknown variable {name!r}") from None

    # -- polynomial constructors ---------------------------------------
    def zero(self):
        return Polynomial(self, self.ctx.zero())

    def one(self):
        return self.const(1)

    def const(self, c):
        c = self.field.normalize(c)
        if self.field.is_zero(c):
            return self.zero()
        ze = (0,) * self.nvars
        return Polynomial(self, self.ctx.poly([(0, ze, c)]))

    def var(self, name):
        i = self.var_index(name)
        e = tuple(1 if j == i else 0 for j in range(self.nvars))
        return Polynomial(self, self.ctx.poly([(0, e, self.field.one())]))

    @property
    def gens(self):
        return [self.var(n) for n in self.names]

    def from_pairs(self, pairs):
        """pairs: iterable of (exponent tuple, coefficient)."""
        triples = []
        for e, c in pairs:
            e = tuple(int(x) for x in e)
            if len(e) != self.nvars:
                raise RingError("exponent length mismatch")
            triples.append((0, e, self.field.normalize(c)))
        return Polynomial(self, self.ctx.poly(triples))

    def parse(self, text):
        return _parse_poly(self, text)

    # -- degree helpers --------------------------------------------------
    def mono_degree(self, exps):
        return sum(w * e for w, e in zip(self.scalar_weights, exps))

    def mono_multidegree(self, exps):
        if self.grading_dim is None:
            return (self.mono_degree(exps),)
        out = [0] * self.grading_dim
        for w, e in zip(self.weights, exps):
            for k in range(self.grading_dim):
                out[k] += w[k] * e
        return tuple(out)


class Polynomial:
    """Exact polynomial: a ring plus a canonical kernel handle."""

    __slots__ = ("ring", "h")

    def __init__(self, ring, h):
        self.ring = ring
        self.h = h

    # -- queries -----------------------------------------------------------
    def is_zero(self):
        return self.ring.ctx.is_zero(self.h)

    def terms(self):
        """[(exps tuple, coeff)] in descending order."""
        return [(e, c) for _, e, c in self.ring.ctx.terms(self.h)]

    def num_terms(self):
        return self.ring.ctx.nterms(self.h)

    def lead_exps(self):
        if self.is_zero():
            raise ValueError("zero polynomial has no leading term")
        return self.ring.ctx.lead(self.h)[1]

    def lead_coeff(self):
        if self.is_zero():
            raise ValueError("zero polynomial has no leading term")
        return self.ring.ctx.lead(self.h)[2]

    def total_degree(self):
        """Weighted degree of the leading term; -1 for zero."""
        if self.is_zero():
            return -1
        return max(self.ring.mono_degree(e) for e, _ in self.terms())

    def degree_info(self):
        """Homogeneity under the ring grading.

        Returns {"is_homogeneous": bool, "multidegree": tuple or None}.
        """
        ts = self.terms()
        if not ts:
            return {"is_homogeneous": True, "multidegree": None}
        degs = {self.ring.mono_multidegree(e) for e, _ in ts}
        if len(degs) == 1:
            return {"is_homogeneous": True, "multidegree": degs.pop()}
        return {"is_homogeneous": False, "multidegree": None}

    def is_homogeneous(self):
        return self.degree_info()["is_homogeneous"]

    # -- arithmetic ----------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingError("operands live in different rings")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Polynomial(self.ring, self.ring.ctx.add(self.h, o.h))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, self.ring.ctx.neg(self.h))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = self.ring.field.normalize(other)
            return Polynomial(self.ring, self.ring.ctx.scalar_mul(self.h, c))
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Polynomial(self.ring, self.ring.ctx.mul(self.h, o.h))

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, Polynomial) or other.ring != self.ring:
            return NotImplemented
        return self.ring.ctx.terms(self.h) == other.ring.ctx.terms(other.h)

    def __hash__(self):
        return hash((self.ring, tuple(self.ring.ctx.terms(self.h))))

    def __repr__(self):
        return to_canonical_string(self)

    # -- substitution ----------------------------------------------------------
    def substitute(self, images, target_ring=None):
        """Ring homomorphism determined by `images` (name -> Polynomial).

        Variables absent from `images` map to the same-named variable of the
        target ring.  All image polynomials must share one ring.
        """
        rings = {p.ring for p in images.values()}
        if len(rings) > 1:
            raise RingError("substitution images live in different rings")
        if target_ring is None:
            target_ring = rings.pop() if rings else self.ring
        elif rings and rings.pop() != target_ring:
            raise RingError("substitution images not in the target ring")
        if target_ring.field != self.ring.field:
            raise RingError("substitution must preserve the field")
        imgs = []
        for n in self.ring.names:
            if n in images:
                imgs.append(images[n])
            else:
                imgs.append(target_ring.var(n))
        extra = set(images) - set(self.ring.names)
        if extra:
            raise RingError(f"unknown variables in substitution: {sorted(extra)}")
        out = target_ring.zero()
        pow_cache = {}
        for e, c in self.terms():
            term = target_ring.const(c)
            for i, ei in enumerate(e):
                if ei:
                    key = (i, ei)
                    if key not in pow_cache:
                        pow_cache[key] = imgs[i] ** ei
                    term = term * pow_cache[key]
            out = out + term
        return out


# ---------------------------------------------------------------------------
# parsing / printing
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(?P<name>[A-Za-z][A-Za-z0-9_]*)"
                       r"|(?P<int>\d+)"
                       r"|(?P<op>[+\-*^/]))")


def _tokenize(text):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise ParseError(f"unexpected character {text[pos]!r}", pos)
            break
        if m.group("name"):
            out.append(("name", m.group("name"), m.start("name")))
        elif m.group("int"):
            out.append(("int", int(m.group("int")), m.start("int")))
        else:
            out.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    return out


def _parse_poly(ring, text):
    toks = _tokenize(text)
    if not toks:
        raise ParseError("empty polynomial", 0)
    i = 0
    triples = []
    field = ring.field
    sign = 1
    # optional leading sign
    if toks[0][0] == "op" and toks[0][1] in "+-":
        sign = -1 if toks[0][1] == "-" else 1
        i = 1

    def expect_factor(i):
        if i >= len(toks):
            raise ParseError("unexpected end of input",
                             toks[-1][2] if toks else 0)
        return toks[i]

    while True:
        # one term
        tok = expect_factor(i)
        coeff = field.one()
        exps = [0] * ring.nvars
        saw_factor = False
        if tok[0] == "int":
            num = tok[1]
            i += 1
            if i < len(toks) and toks[i][0] == "op" and toks[i][1] == "/":
                dtok = expect_factor(i + 1)
                if dtok[0] != "int":
                    raise ParseError("expected integer denominator", dtok[2])
                if field.characteristic:
                    raise ParseError("fractional coefficient not in field",
                                     tok[2])
                if dtok[1] == 0:
                    raise ParseError("zero denominator", dtok[2])
                coeff = field.normalize(Fraction(num, dtok[1]))
                i += 2
            else:
                coeff = field.normalize(num)
            saw_factor = True
            if i < len(toks) and toks[i][0] == "op" and toks[i][1] == "*":
                i += 1
                tok = expect_factor(i)
                if tok[0] != "name":
                    raise ParseError("expected variable after '*'", tok[2])
        while i < len(toks) and toks[i][0] == "name":
            name = toks[i][1]
            npos = toks[i][2]
            try:
                vi = ring.var_index(name)
            except RingError:
                raise ParseError(f"unknown variable {name!r}", npos) from None
            i += 1
            e = 1
            if i < len(toks) and toks[i][0] == "op" and toks[i][1] == "^":
                etok = expect_factor(i + 1)
                if etok[0] != "int":
                    raise ParseError("expected integer exponent", etok[2])
                e = etok[1]
                i += 2
            exps[vi] += e
            saw_factor = True
            if i < len(toks) and toks[i][0] == "op" and toks[i][1] == "*":
                nxt = expect_factor(i + 1)
                if nxt[0] not in ("name", "int"):
                    raise ParseError("expected factor after '*'", nxt[2])
                if nxt[0] == "int":
                    raise ParseError("coefficient must precede variables",
                                     nxt[2])
                i += 1
        if not saw_factor:
            raise ParseError("expected a term", tok[2])
        c = coeff if sign > 0 else field.neg(coeff)
        triples.append((0, tuple(exps), c))
        if i >= len(toks):
            break
        tok = toks[i]
        if tok[0] != "op" or tok[1] not in "+-":
            raise ParseError(f"expected '+' or '-', got {tok[1]!r}", tok[2])
        sign = -1 if tok[1] == "-" else 1
        i += 1
    return Polynomial(ring, ring.ctx.poly(triples))


def _mono_str(ring, exps):
    parts = []
    for n, e in zip(ring.names, exps):
        if e == 1:
            parts.append(n)
        elif e > 1:
            parts.append(f"{n}^{e}")
    return "*".join(parts)


def to_canonical_string(p: Polynomial) -> str:
    ts = p.terms()
    if not ts:
        return "0"
    ring = p.ring
    rational = ring.field.kind == "rationals"
    pieces = []
    for k, (e, c) in enumerate(ts):
        mono = _mono_str(ring, e)
        if rational:
            negative = c < 0
            mag = -c if negative else c
            coeff_str = str(mag)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{coeff_str}*{mono}"
            else:
                body = coeff_str
            if k == 0:
                pieces.append(("-" if negative else "") + body)
            else:
                pieces.append(("- " if negative else "+ ") + body)
        else:
            if mono and c == 1:
                body = mono
            elif mono:
                body = f"{c}*{mono}"
            else:
                body = str(c)
            pieces.append(body if k == 0 else "+ " + body)
    return " ".join(pieces)


# ---------------------------------------------------------------------------
# convenience constructors
# ---------------------------------------------------------------------------

def mk_ring(field, names, weights=None, order=None) -> PolyRing:
    """Build a ring context.

    `field`: FieldSpec, or an int prime, or the string "Q".
    """
    if isinstance(field, int):
        field = GF(field)
    elif isinstance(field, str):
        field = QQ() if field.upper() == "Q" else GF(int(field))
    if order is not None and not isinstance(order, OrderSpec):
        raise RingError("order must be an OrderSpec")
    return PolyRing(field, names, weights, order)


def ring_map(src: PolyRing, dst: PolyRing, images=None):
    """Return a callable applying the hom determined by `images`.

    `images`: dict name -> Polynomial in dst (missing names map by name).
    """
    images = dict(images or {})

    def apply(p: Polynomial) -> Polynomial:
        if p.ring != src:
            raise RingError("polynomial not in the source ring")
        return p.substitute(images, target_ring=dst)

    return apply
