"""Buchberger engine for ideals and submodules of graded free modules.

One engine drives everything: plain reduced Groebner bases, module bases,
syzygy generation (with representation tracking), greedy selection of
minimal generators, and block-order elimination.

Pair management follows Gebauer-Moller: the chain rules (M, F, B) apply to
ideals and modules alike; the product criterion applies only to rank-1
(ideal) inputs, and in syzygy mode each product-skipped pair contributes its
trivial syzygy  g_j*e_i - g_i*e_j  instead of a reduction.  Syzygies of the
accepted generators are exactly the tracked representations of the s-pair
reductions to zero.  Determinism: pairs pop by (degree, larger index,
smaller index); candidates by (degree, input position); the divisor in a
reduction is the first basis element, in insertion order, whose lead
divides.
"""

import functools
import heapq
from dataclasses import dataclass

from . import config
from .errors import PreconditionError, ResourceCapError, RingError
from .freemod import FreeModule, ModuleElement, PolyMatrix
from .orders import eliminates_block
from .ring import Polynomial, PolyRing

_INF = float("inf")


@dataclass
class GBStats:
    pairs_processed: int = 0
    reductions_to_zero: int = 0
    pairs_skipped: int = 0
    basis_size: int = 0


class GBRun:
    """Result of one engine run.

    basis: monic kernel handles forming a Groebner basis of the span of the
    accepted inputs (through `complete_through` if capped).
    reps[i]: representation of basis[i] over the accepted inputs
    (component k = k-th accepted input), present when tracking.
    syzygies: generators of the syzygy module of the accepted inputs.
    accepted: list of (input_position, degree).
    """

    def __init__(self, ring, twists):
        self.ring = ring
        self.twists = tuple(twists)
        self.basis = []
        self.reps = []
        self.syzygies = []
        self.accepted = []
        self.complete_through = None  # degree cap hit, else None
        self.stats = GBStats()
        self.reducer = None  # set by engine

    def is_partial(self):
        return self.complete_through is not None


def _lcm_exps(e1, e2):
    return tuple(a if a > b else b for a, b in zip(e1, e2))


def _sub_exps(e1, e2):
    return tuple(a - b for a, b in zip(e1, e2))


def _coprime(e1, e2):
    return all(a == 0 or b == 0 for a, b in zip(e1, e2))


class _Engine:
    def __init__(self, ring: PolyRing, inputs, twists, *, track=False,
                 syz=False, keep_all=False, degree_cap=None, is_ideal=None,
                 use_criteria=True):
        self.ring = ring
        self.ctx = ring.ctx
        self.twists = tuple(twists)
        self.inputs = list(inputs)  # kernel handles
        self.track = track or syz
        self.syz = syz
        self.keep_all = keep_all
        self.degree_cap = degree_cap
        self.use_criteria = use_criteria
        if is_ideal is None:
            is_ideal = all(t == 0 for t in self.twists) and all(
                all(c == 0 for c, _, _ in self.ctx.terms(h))
                for h in self.inputs)
        self.is_ideal = is_ideal

        self.run = GBRun(ring, twists)
        self.basis = self.run.basis
        self.reps = self.run.reps
        self.leads = []  # (comp, exps) per basis element
        self.reducer = _make_reducer(ring)
        self.run.reducer = self.reducer
        self._accepted_slots = []

        self.pairs = {}  # (a,b) a<b -> (deg, lcm_exps)
        self.heap = []   # (deg, b, a)
        self.cands = []
        for pos, h in enumerate(self.inputs):
            if self.ctx.is_zero(h):
                # a zero input has the trivial relation e_pos = 0
                if self.syz and self.keep_all:
                    e0 = (0,) * ring.nvars
                    self.run.syzygies.append(
                        self.ctx.poly([(pos, e0, ring.field.one())]))
                continue
            comp, e, _ = self.ctx.lead(h)
            d = self.ring.mono_degree(e) + self.twists[comp]
            self.cands.append((d, pos, h))
        self.cands.sort(key=lambda t: (t[0], t[1]))
        self.cand_pos = 0

    # -- degree helpers -----------------------------------------------------
    def _lead_deg(self, comp, exps):
        return self.ring.mono_degree(exps) + self.twists[comp]

    # -- Gebauer-Moller update ------------------------------------------------
    def _update_pairs(self, t):
        """Install pairs of new basis index t against existing ones."""
        comp_t, lt_t = self.leads[t]
        cand = []
        for g in range(t):
            comp_g, lt_g = self.leads[g]
            if comp_g != comp_t:
                continue
            lcm = _lcm_exps(lt_t, lt_g)
            cand.append((g, lcm))
        if not self.use_criteria:
            for g, lcm in cand:
                deg = self._lead_deg(comp_t, lcm)
                self.pairs[(g, t)] = (deg, lcm)
                heapq.heappush(self.heap, (deg, t, g))
            return
        # M/F rules: drop (t,g) when another new pair's lcm properly divides
        # it, or an equal lcm was already kept; coprime pairs survive to the
        # product-criterion step (ideal case only).
        kept = []
        for g, lcm in cand:
            cop = self.is_ideal and _coprime(self.leads[t][1],
                                             self.leads[g][1])
            if not cop:
                drop = False
                for g2, lcm2 in cand:
                    if g2 == g:
                        continue
                    if _divides(lcm2, lcm) and lcm2 != lcm:
                        drop = True
                        break
                if not drop:
                    for g2, lcm2 in kept:
                        if lcm2 == lcm:
                            drop = True
                            break
                if drop:
                    self.run.stats.pairs_skipped += 1
                    continue
            kept.append((g, lcm))
        # B rule on old pairs
        for (a, b) in list(self.pairs):
            if self.leads[a][0] != comp_t:
                continue
            d_lcm = self.pairs[(a, b)][1]
            if not _divides(lt_t, d_lcm):
                continue
            lcm_at = _lcm_exps(self.leads[a][1], lt_t)
            lcm_bt = _lcm_exps(self.leads[b][1], lt_t)
            if lcm_at != d_lcm and lcm_bt != d_lcm:
                del self.pairs[(a, b)]
                self.run.stats.pairs_skipped += 1
        # product criterion on survivors
        for g, lcm in kept:
            if self.is_ideal and _coprime(self.leads[t][1], self.leads[g][1]):
                self.run.stats.pairs_skipped += 1
                if self.syz:
                    self._collect_trivial_syzygy(g, t)
                continue
            deg = self._lead_deg(comp_t, lcm)
            self.pairs[(g, t)] = (deg, lcm)
            heapq.heappush(self.heap, (deg, t, g))

    def _collect_trivial_syzygy(self, a, b):
        # g_b * rep_a - g_a * rep_b is always a syzygy of the accepted inputs
        ctx = self.ctx
        tau = ctx.add(ctx.mul(self.basis[b], self.reps[a]),
                      ctx.neg(ctx.mul(self.basis[a], self.reps[b])))
        if not ctx.is_zero(tau):
            self.run.syzygies.append(tau)

    # -- reduction with tracking ------------------------------------------------
    def _reduce_tracked(self, h, rep):
        nf, quots = self.reducer.reduce(h, want_quotients=self.track)
        if self.track and quots:
            ctx = self.ctx
            for (gi, q, qe) in quots:
                piece = ctx.term_mul(self.reps[gi], ctx._cneg(q), qe)
                rep = ctx.add(rep, piece)
        return nf, rep

    def _add_basis(self, h, rep):
        ctx = self.ctx
        h, lc = ctx.monic(h)
        if self.track:
            rep = ctx.scalar_mul(rep, ctx._cinv(lc))
        idx = len(self.basis)
        self.basis.append(h)
        self.reps.append(rep)
        comp, e, _ = ctx.lead(h)
        self.leads.append((comp, e))
        self.reducer.add(h)
        self._update_pairs(idx)

    # -- main loop ----------------------------------------------------------------
    def execute(self):
        ctx = self.ctx
        while True:
            pair_deg = _INF
            while self.heap:
                d, b, a = self.heap[0]
                if (a, b) in self.pairs and self.pairs[(a, b)][0] == d:
                    pair_deg = d
                    break
                heapq.heappop(self.heap)  # stale entry
            cand_deg = (self.cands[self.cand_pos][0]
                        if self.cand_pos < len(self.cands) else _INF)
            nxt = min(pair_deg, cand_deg)
            if nxt == _INF:
                break
            if self.degree_cap is not None and nxt > self.degree_cap:
                self.run.complete_through = self.degree_cap
                break
            if pair_deg <= cand_deg:
                d, b, a = heapq.heappop(self.heap)
                del self.pairs[(a, b)]
                self._process_pair(a, b)
            else:
                d, pos, h = self.cands[self.cand_pos]
                self.cand_pos += 1
                self._process_candidate(pos, h)
        self.run.stats.basis_size = len(self.basis)
        return self.run

    def _process_pair(self, a, b):
        ctx = self.ctx
        self.run.stats.pairs_processed += 1
        comp, ea = self.leads[a]
        _, eb = self.leads[b]
        lcm = _lcm_exps(ea, eb)
        ma = _sub_exps(lcm, ea)
        mb = _sub_exps(lcm, eb)
        one = self.ring.field.one()
        spair = ctx.combine(one, ma, self.basis[a],
                            ctx._cneg(one), mb, self.basis[b])
        rep = None
        if self.track:
            rep = ctx.add(ctx.term_mul(self.reps[a], one, ma),
                          ctx.term_mul(self.reps[b], ctx._cneg(one), mb))
        nf, rep = self._reduce_tracked(spair, rep)
        if ctx.is_zero(nf):
            self.run.stats.reductions_to_zero += 1
            if self.syz and rep is not None and not ctx.is_zero(rep):
                self.run.syzygies.append(rep)
        else:
            self._add_basis(nf, rep)

    def _process_candidate(self, pos, h):
        ctx = self.ctx
        slot = pos if self.keep_all else len(self._accepted_slots)
        rep = None
        if self.track:
            e0 = (0,) * self.ring.nvars
            rep = ctx.poly([(slot, e0, self.ring.field.one())])
        nf, rep = self._reduce_tracked(h, rep)
        if ctx.is_zero(nf):
            # redundant input: in keep_all mode its reduction trace is a
            # syzygy of the inputs; otherwise it is simply dropped.
            if self.keep_all and self.syz and not ctx.is_zero(rep):
                self.run.syzygies.append(rep)
            return
        comp, e, _ = ctx.lead(h)
        self.run.accepted.append((pos, self._lead_deg(comp, e)))
        self._accepted_slots.append(pos)
        self._add_basis(nf, rep)


def _divides(e1, e2):
    return all(a <= b for a, b in zip(e1, e2))


def _make_reducer(ring):
    from . import _kernel
    backend = _kernel.backend_for(ring.field.characteristic)
    return backend.Reducer(ring.ctx)


# ---------------------------------------------------------------------------
# public API
# ---------------------------------------------------------------------------

@dataclass
class GroebnerBasis:
    """Reduced Groebner basis: monic, auto-reduced, canonically sorted."""

    ring: PolyRing
    gens: list
    stats: GBStats
    complete_through: object = None  # int degree when capped

    def __iter__(self):
        return iter(self.gens)

    def __len__(self):
        return len(self.gens)

    def is_partial(self):
        return self.complete_through is not None

    def lead_exps(self):
        return [g.lead_exps() for g in self.gens]


def _interreduce(ring, handles):
    """Reduced basis from a Groebner basis: minimal heads, reduced tails."""
    ctx = ring.ctx

    def cmp_lead(h1, h2):
        c1, e1, _ = ctx.lead(h1)
        c2, e2, _ = ctx.lead(h2)
        return ctx.cmp_term(c1, e1, c2, e2)

    items = [h for h in handles if not ctx.is_zero(h)]
    # sort by lead ascending for deterministic, minimal selection
    items.sort(key=functools.cmp_to_key(cmp_lead))
    kept = []
    kept_leads = []
    for h in items:
        comp, e, _ = ctx.lead(h)
        if any(kc == comp and _divides(ke, e) for kc, ke in kept_leads):
            continue
        kept.append(h)
        kept_leads.append((comp, e))
    # Tail-reduce against the whole head-minimal set: no tail term can be
    # divisible by its own head under a global order, so one shared reducer
    # is safe.
    reducer = _make_reducer(ring)
    for h in kept:
        reducer.add(h)
    final = []
    for h in kept:
        lead_poly = ctx.poly([ctx.lead(h)])
        tail = ctx.add(h, ctx.neg(lead_poly))
        nf_tail, _ = reducer.reduce(tail)
        nf, _ = ctx.monic(ctx.add(lead_poly, nf_tail))
        final.append(nf)
    return final


def groebner_basis(gens, degree_cap=None) -> GroebnerBasis:
    """Reduced Groebner basis of an ideal, in the ring's order."""
    if not gens:
        raise PreconditionError("no generators given")
    ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise RingError("generators live in different rings")
    nz = [g for g in gens if not g.is_zero()]
    if not nz:
        raise PreconditionError("all generators are zero")
    eng = _Engine(ring, [g.h for g in nz], twists=(0,),
                  degree_cap=degree_cap, is_ideal=True)
    run = eng.execute()
    handles = _interreduce(ring, run.basis)
    gb = GroebnerBasis(ring, [Polynomial(ring, h) for h in handles],
                       run.stats, run.complete_through)
    if config.CHECK_MODE and run.complete_through is None:
        assert_buchberger(gb)
    return gb


def normal_form(f: Polynomial, G: GroebnerBasis) -> Polynomial:
    if f.ring != G.ring:
        raise RingError("ring mismatch")
    reducer = _make_reducer(f.ring)
    for g in G.gens:
        reducer.add(g.h)
    nf, _ = reducer.reduce(f.h)
    return Polynomial(f.ring, nf)


def is_member(f: Polynomial, G: GroebnerBasis) -> bool:
    return normal_form(f, G).is_zero()


def assert_buchberger(G: GroebnerBasis):
    """Every s-polynomial of the basis must reduce to zero."""
    ring = G.ring
    ctx = ring.ctx
    reducer = _make_reducer(ring)
    for g in G.gens:
        reducer.add(g.h)
    n = len(G.gens)
    for i in range(n):
        for j in range(i + 1, n):
            ci, ei, cfi = ctx.lead(G.gens[i].h)
            cj, ej, cfj = ctx.lead(G.gens[j].h)
            if ci != cj:
                continue
            lcm = _lcm_exps(ei, ej)
            sp = ctx.combine(ctx._cinv(cfi), _sub_exps(lcm, ei), G.gens[i].h,
                             ctx._cneg(ctx._cinv(cfj)), _sub_exps(lcm, ej),
                             G.gens[j].h)
            nf, _ = reducer.reduce(sp)
            if not ctx.is_zero(nf):
                raise AssertionError("s-polynomial does not reduce to zero")


# -- module-level operations --------------------------------------------------

class ModuleGB:
    """Groebner basis of a submodule of a graded free module."""

    def __init__(self, module: FreeModule, run: GBRun):
        self.module = module
        self.run = run

    def contains(self, v: ModuleElement) -> bool:
        if v.module.ring != self.module.ring:
            raise RingError("ring mismatch")
        nf, _ = self.run.reducer.reduce(v.h)
        return self.module.ring.ctx.is_zero(nf)

    def normal_form(self, v: ModuleElement) -> ModuleElement:
        nf, _ = self.run.reducer.reduce(v.h)
        return ModuleElement(self.module, nf)

    def express(self, v: ModuleElement):
        """Write v over the accepted generators; None if not a member.

        Returns a kernel handle over accepted slots (component k = k-th
        accepted generator)."""
        ctx = self.module.ring.ctx
        nf, quots = self.run.reducer.reduce(v.h, want_quotients=True)
        if not ctx.is_zero(nf):
            return None
        acc = ctx.zero()
        for gi, q, qe in quots:
            acc = ctx.add(acc, ctx.term_mul(self.run.reps[gi], q, qe))
        return acc

    def elements(self):
        return [ModuleElement(self.module, h) for h in self.run.basis]


def module_groebner(module: FreeModule, elements, *, track=False,
                    keep_all=True, degree_cap=None) -> ModuleGB:
    handles = [v.h for v in elements]
    for v in elements:
        if v.module != module:
            raise RingError("element outside the module")
    eng = _Engine(module.ring, handles, twists=module.twists,
                  track=track, keep_all=keep_all, degree_cap=degree_cap,
                  is_ideal=(module.rank == 1 and all(
                      t == 0 for t in module.twists)))
    run = eng.execute()
    return ModuleGB(module, run)


def syzygy_run(module: FreeModule, elements, *, keep_all=True,
               degree_cap=None) -> GBRun:
    """Engine run collecting syzygies of `elements` (all of them when
    keep_all, else of the greedily-selected minimal generators)."""
    for v in elements:
        if v.module != module:
            raise RingError("element outside the module")
        if not v.is_homogeneous():
            raise PreconditionError("inhomogeneous module element")
    eng = _Engine(module.ring, [v.h for v in elements],
                  twists=module.twists, syz=True, keep_all=keep_all,
                  degree_cap=degree_cap,
                  is_ideal=(module.rank == 1 and all(
                      t == 0 for t in module.twists)))
    return eng.execute()


def syzygies(matrix: PolyMatrix, degree_cap=None) -> PolyMatrix:
    """Generators of ker(matrix) as columns of a new matrix.

    The kernel is taken column-wise: S with matrix . S = 0, and the columns
    of S generate every relation among the columns of `matrix`.
    """
    cod = matrix.codomain
    cols = list(matrix.columns)
    if not cols:
        return PolyMatrix(FreeModule(matrix.ring, ()), [], col_twists=())
    run = syzygy_run(cod, cols, keep_all=True, degree_cap=degree_cap)
    if run.complete_through is not None:
        raise ResourceCapError("syzygy computation hit the degree cap")
    dom = matrix.domain
    out_cols = [ModuleElement(dom, h) for h in run.syzygies]
    result = PolyMatrix(dom, out_cols)
    if config.CHECK_MODE:
        prod = matrix.compose(result)
        if not prod.is_zero():
            raise AssertionError("syzygy exactness failed: M*S != 0")
    return result


def eliminate(gens, block_size: int):
    """Generators of the ideal's intersection with the subring that omits
    the leading `block_size` variables.  The ring order must be a block
    order eliminating exactly that block."""
    if not gens:
        raise PreconditionError("no generators")
    ring = gens[0].ring
    if not eliminates_block(ring.order, block_size):
        raise PreconditionError(
            "ring order does not eliminate the leading block")
    gb = groebner_basis(gens)
    out = []
    for g in gb.gens:
        if all(all(e[i] == 0 for i in range(block_size))
               for e, _ in g.terms()):
            out.append(g)
    return out
