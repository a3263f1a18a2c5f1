"""Finitely presented graded modules: presentations, kernels, subquotients,
minimal free resolutions, Betti tables, Hilbert series, dimension and depth.

Conventions.  A module is coker(relations: F1 -> F0) with F0 twists recorded;
a presentation is minimal when the relation matrix has no unit entries.  The
resolution is built by repeatedly selecting minimal generators of the syzygy
module (graded Nakayama greedy: candidates in increasing degree, membership
against the basis-so-far), so every differential automatically has entries
in the irrelevant maximal ideal and Betti numbers are read off directly.
Depth always refers to the irrelevant maximal ideal and is computed as
(number of variables) - (projective dimension).
"""

from dataclasses import dataclass, field

from . import config
from .errors import PreconditionError, ResourceCapError, ScmlabError
from .freemod import FreeModule, ModuleElement, PolyMatrix
from .groebner import module_groebner, syzygy_run
from .hilbert import (HilbertSeries, dimension_combinatorial,
                      dimension_from_numerator, monomial_numerator, _poly_add)
from .ring import Polynomial


class FpModule:
    """coker of a graded relation matrix, optionally embedded in an ambient
    free module (needed to form subquotients)."""

    def __init__(self, gens_module: FreeModule, relations,
                 ambient=None, gens_in_ambient=None):
        self.gens_module = gens_module
        self.relations = list(relations)
        for r in self.relations:
            if r.module != gens_module:
                raise PreconditionError("relation outside the free module")
            if not r.is_homogeneous():
                raise PreconditionError("inhomogeneous relation")
        self.ambient = ambient
        self.gens_in_ambient = gens_in_ambient
        self._span_run = None

    @property
    def ring(self):
        return self.gens_module.ring

    @property
    def rank(self):
        return self.gens_module.rank

    @property
    def twists(self):
        return self.gens_module.twists

    @classmethod
    def cyclic(cls, ring, ideal_gens):
        """R/(gens): one generator in degree zero."""
        F = FreeModule(ring, (0,))
        rels = [F.from_polys([g]) for g in ideal_gens if not g.is_zero()]
        return cls(F, rels)

    @classmethod
    def free(cls, ring, twists):
        return cls(FreeModule(ring, twists), [])

    def relation_matrix(self):
        return PolyMatrix(self.gens_module, self.relations) \
            if self.relations else None

    def is_presentation_minimal(self):
        ze = (0,) * self.ring.nvars
        for r in self.relations:
            for comp, e, c in r.terms():
                if e == ze:
                    return False
        return True

    def minimal_presentation(self):
        """Equivalent presentation with no unit entries (prunes generators
        against relations that express one generator through others)."""
        ring = self.ring
        ctx = ring.ctx
        twists = list(self.gens_module.twists)
        cols = [list(r.terms()) for r in self.relations]
        ze = (0,) * ring.nvars

        while True:
            pivot = None
            for cj, terms in enumerate(cols):
                for comp, e, c in terms:
                    if e == ze:
                        pivot = (cj, comp, c)
                        break
                if pivot:
                    break
            if pivot is None:
                break
            cj, pr, u = pivot
            F = FreeModule(ring, twists)
            pivot_col = ModuleElement(F, ctx.poly(cols[cj]))
            inv_u = ctx._cinv(u)
            new_cols = []
            for k, terms in enumerate(cols):
                if k == cj:
                    continue
                v = ModuleElement(F, ctx.poly(terms))
                # entry of column k in row pr
                entry_terms = [(0, e, c) for comp, e, c in terms
                               if comp == pr]
                if entry_terms:
                    entry = Polynomial(ring, ctx.poly(entry_terms))
                    coeffs = ctx.scalar_mul(entry.h, ctx._cneg(inv_u))
                    v = v + ModuleElement(F, ctx.mul(coeffs, pivot_col.h))
                new_cols.append(v)
            # drop row pr, renumber components
            twists.pop(pr)
            remapped = []
            for v in new_cols:
                ts = []
                for comp, e, c in v.terms():
                    if comp == pr:
                        raise ScmlabError("pivot row not cleared")
                    ts.append((comp - 1 if comp > pr else comp, e, c))
                remapped.append(ts)
            cols = remapped

        F = FreeModule(ring, twists)
        rels = [ModuleElement(F, ring.ctx.poly(ts)) for ts in cols]
        rels = [r for r in rels if not r.is_zero()]
        return FpModule(F, rels)

    def is_zero(self):
        return self.minimal_presentation().rank == 0

    # -- span helpers (for subquotients) ---------------------------------
    def span_run(self):
        """Tracked Groebner run for the generators inside the ambient."""
        if self.ambient is None:
            raise PreconditionError("module has no ambient embedding")
        if self._span_run is None:
            self._span_run = module_groebner(
                self.ambient, self.gens_in_ambient, track=True,
                keep_all=True)
        return self._span_run

    def express_in_gens(self, v: ModuleElement):
        """Coordinates of an ambient element over the generators, or None."""
        gb = self.span_run()
        h = gb.express(v)
        if h is None:
            return None
        return ModuleElement(self.gens_module, h)


def kernel_of_map(matrix: PolyMatrix, degree_cap=None) -> FpModule:
    """Presentation of ker(matrix), embedded in the matrix domain."""
    for j, c in enumerate(matrix.columns):
        if not c.is_homogeneous():
            raise PreconditionError(f"matrix column {j} is inhomogeneous")
    run1 = syzygy_run(matrix.codomain, matrix.columns, keep_all=True,
                      degree_cap=degree_cap)
    if run1.complete_through is not None:
        raise ResourceCapError("kernel computation hit the degree cap")
    dom = matrix.domain
    candidates = [ModuleElement(dom, h) for h in run1.syzygies]
    return _module_from_candidates(dom, candidates, degree_cap=degree_cap)


def _module_from_candidates(ambient, candidates, degree_cap=None):
    """Module generated by `candidates` in `ambient`: minimal generators
    plus their relations, embedded."""
    ring = ambient.ring
    if not candidates:
        F = FreeModule(ring, ())
        return FpModule(F, [], ambient=ambient, gens_in_ambient=[])
    run = syzygy_run(ambient, candidates, keep_all=False,
                     degree_cap=degree_cap)
    if run.complete_through is not None:
        raise ResourceCapError("syzygy computation hit the degree cap")
    gens = [candidates[pos] for pos, _ in run.accepted]
    degs = [d for _, d in run.accepted]
    F = FreeModule(ring, degs)
    rels = [ModuleElement(F, h) for h in run.syzygies]
    return FpModule(F, rels, ambient=ambient, gens_in_ambient=gens)


def subquotient(Z: FpModule, B_gens) -> FpModule:
    """Z/B where B is generated by ambient elements of span(Z)."""
    if Z.ambient is None:
        raise PreconditionError("Z carries no ambient embedding")
    rels = list(Z.relations)
    for j, b in enumerate(B_gens):
        if b.module != Z.ambient:
            raise PreconditionError("B generator outside the ambient module")
        expr = Z.express_in_gens(b)
        if expr is None:
            raise PreconditionError(
                f"B generator {j} is not contained in Z")
        if not expr.is_zero():
            rels.append(expr)
    return FpModule(Z.gens_module, rels)


# ---------------------------------------------------------------------------
# minimal free resolutions
# ---------------------------------------------------------------------------

@dataclass
class Resolution:
    """F_0 <- F_1 <- ... with differentials as column matrices."""

    twists: list          # twists[i]: tuple of degrees of F_i
    differentials: list   # differentials[i]: PolyMatrix F_{i+1} -> F_i
    minimal: bool = True
    partial: bool = False

    @property
    def length(self):
        return len(self.twists) - 1

    def betti(self):
        """{(i, degree): count}"""
        out = {}
        for i, tw in enumerate(self.twists):
            for d in tw:
                out[(i, d)] = out.get((i, d), 0) + 1
        return out

    def betti_numbers(self):
        return [len(tw) for tw in self.twists]

    def projective_dimension(self):
        if self.partial:
            raise ResourceCapError("resolution is partial")
        return self.length

    def betti_to_json(self):
        rows = {}
        for (i, d), v in sorted(self.betti().items()):
            rows.setdefault(str(i), {})[str(d)] = v
        return rows

    def check_complex(self):
        """d_{i} o d_{i+1} = 0 for all i."""
        for i in range(len(self.differentials) - 1):
            prod = self.differentials[i].compose(self.differentials[i + 1])
            if not prod.is_zero():
                raise AssertionError("resolution differentials do not compose to zero")
        ze = None
        for d in self.differentials:
            ring = d.ring
            ze = (0,) * ring.nvars
            for col in d.columns:
                for comp, e, c in col.terms():
                    if e == ze:
                        raise AssertionError("resolution is not minimal")
        return True


def minimal_resolution(M: FpModule, length_cap=None) -> Resolution:
    """Minimal graded free resolution of M (pruned presentation first)."""
    Mmin = M.minimal_presentation()
    ring = M.ring
    twists = [tuple(Mmin.gens_module.twists)]
    diffs = []
    if Mmin.rank == 0:
        return Resolution(twists=[()], differentials=[], minimal=True)
    F = Mmin.gens_module
    candidates = list(Mmin.relations)
    step = 0
    partial = False
    while candidates:
        if length_cap is not None and step >= length_cap:
            partial = True
            break
        run = syzygy_run(F, candidates, keep_all=False)
        gens = [candidates[pos] for pos, _ in run.accepted]
        degs = tuple(d for _, d in run.accepted)
        if not gens:
            break
        diffs.append(PolyMatrix(F, gens, col_twists=degs))
        twists.append(degs)
        F = FreeModule(ring, degs)
        candidates = [ModuleElement(F, h) for h in run.syzygies]
        step += 1
    res = Resolution(twists=twists, differentials=diffs, minimal=True,
                     partial=partial)
    if config.CHECK_MODE:
        res.check_complex()
    return res


# ---------------------------------------------------------------------------
# Hilbert series / dimension / depth
# ---------------------------------------------------------------------------

def hilbert_series(M: FpModule) -> HilbertSeries:
    """From the initial module of the relations, component by component."""
    ring = M.ring
    gb = module_groebner(M.gens_module, M.relations) if M.relations else None
    lead_by_comp = {}
    if gb is not None:
        for h in gb.run.basis:
            comp, e, _ = ring.ctx.lead(h)
            lead_by_comp.setdefault(comp, []).append(e)
    num = {}
    for i in range(M.rank):
        n_i = monomial_numerator(lead_by_comp.get(i, []),
                                 ring.scalar_weights)
        num = _poly_add(num, {k + M.twists[i]: v for k, v in n_i.items()})
    return HilbertSeries.from_dict(num, ring.scalar_weights)


def hilbert_series_from_resolution(res: Resolution, ring) -> HilbertSeries:
    num = {}
    sign = 1
    for tw in res.twists:
        for d in tw:
            num[d] = num.get(d, 0) + sign
        sign = -sign
    num = {k: v for k, v in num.items() if v}
    return HilbertSeries.from_dict(num, ring.scalar_weights)


@dataclass
class DimDepth:
    dim: int
    depth: int
    is_cm: bool
    is_zero: bool
    hilbert: HilbertSeries
    pd: int
    betti: dict = field(default_factory=dict)

    def to_json(self):
        return {
            "zero": self.is_zero,
            "dim": self.dim,
            "depth": self.depth,
            "cm": self.is_cm,
            "pd": self.pd,
        }


def dim_depth_cm(M: FpModule, resolution=None) -> DimDepth:
    """Dimension (two independent routes), depth via projective dimension,
    and the Cohen-Macaulay verdict.  Zero modules get the sentinel
    dim = depth = -1 with is_cm vacuously true."""
    ring = M.ring
    Mmin = M.minimal_presentation()
    if Mmin.rank == 0:
        hs = HilbertSeries.from_dict({}, ring.scalar_weights)
        return DimDepth(dim=-1, depth=-1, is_cm=True, is_zero=True,
                        hilbert=hs, pd=0)
    hs = hilbert_series(Mmin)
    dim_hs = hs.dimension()
    # independent combinatorial route on the same initial module
    gb = module_groebner(Mmin.gens_module, Mmin.relations) \
        if Mmin.relations else None
    dim_comb = -1
    seen_free_comp = False
    lead_by_comp = {}
    if gb is not None:
        for h in gb.run.basis:
            comp, e, _ = ring.ctx.lead(h)
            lead_by_comp.setdefault(comp, []).append(e)
    for i in range(Mmin.rank):
        leads = lead_by_comp.get(i, [])
        if not leads:
            seen_free_comp = True
            dim_comb = max(dim_comb, ring.nvars)
            continue
        supports = [frozenset(k for k, x in enumerate(e) if x)
                    for e in leads]
        dim_comb = max(dim_comb,
                       dimension_combinatorial(supports, ring.nvars))
    if dim_comb != dim_hs:
        raise AssertionError(
            f"dimension disagreement: series {dim_hs}, "
            f"combinatorial {dim_comb}")
    res = resolution if resolution is not None \
        else minimal_resolution(Mmin)
    if res.partial:
        raise ResourceCapError("resolution partial; depth not final")
    pd = res.projective_dimension()
    depth = ring.nvars - pd
    # graded Auslander-Buchsbaum bookkeeping
    if depth + pd != ring.nvars:
        raise AssertionError("Auslander-Buchsbaum identity violated")
    if config.CHECK_MODE:
        hs_res = hilbert_series_from_resolution(res, ring)
        if hs_res.as_dict() != hs.as_dict():
            raise AssertionError(
                "Hilbert series mismatch: resolution vs initial module")
    return DimDepth(dim=dim_hs, depth=depth, is_cm=(dim_hs == depth),
                    is_zero=False, hilbert=hs, pd=pd, betti=res.betti())
