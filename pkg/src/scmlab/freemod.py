"""Graded free modules, their elements, and polynomial matrices.

A ``FreeModule`` is R^r with a degree twist per component: the basis vector
e_i carries degree ``twists[i]``, so an element is homogeneous of degree d
when every term satisfies  weighted-monomial-degree + twist(component) = d.
Matrices are stored column-wise (each column an element of the codomain).
"""

from .errors import RingError
from .ring import Polynomial, PolyRing


class FreeModule:
    def __init__(self, ring: PolyRing, twists):
        self.ring = ring
        self.twists = tuple(int(t) for t in twists)

    @property
    def rank(self):
        return len(self.twists)

    def __eq__(self, other):
        return (isinstance(other, FreeModule) and self.ring == other.ring
                and self.twists == other.twists)

    def __hash__(self):
        return hash((self.ring, self.twists))

    def __repr__(self):
        return f"FreeModule(rank={self.rank}, twists={list(self.twists)})"

    def zero(self):
        return ModuleElement(self, self.ring.ctx.zero())

    def basis_vector(self, i):
        if not 0 <= i < self.rank:
            raise RingError("basis index out of range")
        e = (0,) * self.ring.nvars
        return ModuleElement(
            self, self.ring.ctx.poly([(i, e, self.ring.field.one())]))

    def from_polys(self, polys):
        """Element with the given components (length = rank)."""
        if len(polys) != self.rank:
            raise RingError("component count must equal the rank")
        triples = []
        for i, p in enumerate(polys):
            if p.ring != self.ring:
                raise RingError("component in a different ring")
            for _, e, c in self.ring.ctx.terms(p.h):
                triples.append((i, e, c))
        return ModuleElement(self, self.ring.ctx.poly(triples))

    def from_handle(self, h):
        return ModuleElement(self, h)


class ModuleElement:
    __slots__ = ("module", "h")

    def __init__(self, module, h):
        self.module = module
        self.h = h

    @property
    def ring(self):
        return self.module.ring

    def is_zero(self):
        return self.ring.ctx.is_zero(self.h)

    def terms(self):
        return self.ring.ctx.terms(self.h)

    def components(self):
        ctx = self.ring.ctx
        by_comp = {}
        for comp, e, c in ctx.terms(self.h):
            by_comp.setdefault(comp, []).append((0, e, c))
        out = []
        for i in range(self.module.rank):
            ts = by_comp.get(i)
            out.append(Polynomial(
                self.ring, ctx.poly(ts) if ts else ctx.zero()))
        return out

    def degree(self):
        """Degree when homogeneous; None for the zero element."""
        info = self.degree_info()
        return info[1]

    def degree_info(self):
        ts = self.ring.ctx.terms(self.h)
        if not ts:
            return True, None
        degs = {self.ring.mono_degree(e) + self.module.twists[comp]
                for comp, e, _ in ts}
        if len(degs) == 1:
            return True, degs.pop()
        return False, None

    def is_homogeneous(self):
        return self.degree_info()[0]

    def __add__(self, other):
        if not isinstance(other, ModuleElement) or other.module != self.module:
            raise RingError("module mismatch")
        return ModuleElement(self.module,
                             self.ring.ctx.add(self.h, other.h))

    def __neg__(self):
        return ModuleElement(self.module, self.ring.ctx.neg(self.h))

    def __sub__(self, other):
        return self + (-other)

    def scaled(self, c):
        c = self.ring.field.normalize(c)
        return ModuleElement(self.module, self.ring.ctx.scalar_mul(self.h, c))

    def poly_mul(self, p: Polynomial):
        if p.ring != self.ring:
            raise RingError("ring mismatch")
        return ModuleElement(self.module, self.ring.ctx.mul(p.h, self.h))

    def __eq__(self, other):
        return (isinstance(other, ModuleElement)
                and self.module == other.module
                and self.ring.ctx.terms(self.h)
                == other.ring.ctx.terms(other.h))

    def __hash__(self):
        return hash((self.module, tuple(self.ring.ctx.terms(self.h))))

    def __repr__(self):
        return "(" + ", ".join(repr(c) for c in self.components()) + ")"


class PolyMatrix:
    """Graded map between free modules, stored as columns of the codomain."""

    def __init__(self, codomain: FreeModule, columns, col_twists=None):
        self.codomain = codomain
        self.columns = list(columns)
        for c in self.columns:
            if c.module != codomain:
                raise RingError("column not in the codomain")
        if col_twists is None:
            col_twists = []
            for j, c in enumerate(self.columns):
                hom, d = c.degree_info()
                if not hom:
                    raise RingError(f"column {j} is not homogeneous")
                col_twists.append(d if d is not None else 0)
        self.domain = FreeModule(codomain.ring, col_twists)

    @classmethod
    def from_rows(cls, ring, rows, row_twists=None, col_twists=None):
        """rows: list of lists of Polynomials (all rows equal length)."""
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        for r in rows:
            if len(r) != ncols:
                raise RingError("ragged matrix")
        if row_twists is None:
            row_twists = (0,) * nrows
        codomain = FreeModule(ring, row_twists)
        cols = []
        for j in range(ncols):
            cols.append(codomain.from_polys([rows[i][j] for i in range(nrows)]))
        return cls(codomain, cols, col_twists)

    @property
    def ring(self):
        return self.codomain.ring

    @property
    def nrows(self):
        return self.codomain.rank

    @property
    def ncols(self):
        return len(self.columns)

    def entry(self, i, j):
        return self.columns[j].components()[i]

    def rows(self):
        cols_comps = [c.components() for c in self.columns]
        return [[cols_comps[j][i] for j in range(self.ncols)]
                for i in range(self.nrows)]

    def apply(self, vec: ModuleElement) -> ModuleElement:
        """Image of a domain element (components measured against columns)."""
        if vec.module.rank != self.ncols:
            raise RingError("vector rank mismatch")
        ctx = self.ring.ctx
        acc = ctx.zero()
        for comp, e, c in vec.terms():
            piece = ctx.term_mul(self.columns[comp].h, c, e)
            acc = ctx.add(acc, piece)
        return ModuleElement(self.codomain, acc)

    def compose(self, other: "PolyMatrix") -> "PolyMatrix":
        """self o other (apply other first)."""
        if other.codomain.rank != self.ncols:
            raise RingError("composition rank mismatch")
        cols = [self.apply(col) for col in other.columns]
        return PolyMatrix(self.codomain, cols,
                          col_twists=other.domain.twists)

    def is_zero(self):
        return all(c.is_zero() for c in self.columns)
