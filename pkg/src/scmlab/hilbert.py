"""Hilbert series of monomial (initial) ideals and modules.

The numerator is computed by the standard pivot recursion
    N(I) = N(I + (x_v)) + t^{w_v} * N(I : x_v)
with base cases the unit ideal and pairwise-coprime generator sets.  The
Krull dimension is the pole order of the series at t = 1, i.e. the number of
ring variables minus the multiplicity of (1 - t) in the numerator; a
combinatorial independent-set computation provides a second, independent
route to the same number.
"""

from dataclasses import dataclass

from .errors import ScmlabError


def _minimalize(gens):
    """Prune monomials divisible by another generator."""
    gens = sorted(set(gens), key=lambda e: (sum(e), e))
    out = []
    for e in gens:
        if not any(all(o[i] <= e[i] for i in range(len(e))) for o in out):
            out.append(e)
    return out


def _poly_mul(p, q):
    out = {}
    for d1, c1 in p.items():
        for d2, c2 in q.items():
            k = d1 + d2
            out[k] = out.get(k, 0) + c1 * c2
    return {k: v for k, v in out.items() if v}


def _poly_add(p, q):
    out = dict(p)
    for k, v in q.items():
        out[k] = out.get(k, 0) + v
        if out[k] == 0:
            del out[k]
    return out


def monomial_numerator(gens, weights):
    """Numerator of the Hilbert series of R/(gens) over 1/prod(1-t^w)."""
    gens = _minimalize([tuple(g) for g in gens])
    return _numer_rec(tuple(gens), tuple(weights))


def _wdeg(e, weights):
    return sum(w * x for w, x in zip(weights, e))


def _numer_rec(gens, weights):
    if not gens:
        return {0: 1}
    if any(sum(e) == 0 for e in gens):
        return {}  # unit ideal
    # pairwise coprime supports: product formula
    supports = [frozenset(i for i, x in enumerate(e) if x) for e in gens]
    coprime = True
    seen = set()
    for s in supports:
        if s & seen:
            coprime = False
            break
        seen |= s
    if coprime:
        out = {0: 1}
        for e in gens:
            out = _poly_mul(out, {0: 1, _wdeg(e, weights): -1})
        return out
    # pivot on the most frequent variable
    counts = {}
    for s in supports:
        for v in s:
            counts[v] = counts.get(v, 0) + 1
    pivot = max(counts, key=lambda v: (counts[v], -v))
    # I + (x_pivot)
    unit = tuple(1 if i == pivot else 0 for i in range(len(weights)))
    plus = [e for e in gens if e[pivot] == 0] + [unit]
    # I : x_pivot
    colon = [tuple(x - 1 if i == pivot and x > 0 else x
                   for i, x in enumerate(e)) for e in gens]
    n_plus = _numer_rec(tuple(_minimalize(plus)), weights)
    n_colon = _numer_rec(tuple(_minimalize(colon)), weights)
    shifted = {k + weights[pivot]: v for k, v in n_colon.items()}
    return _poly_add(n_plus, shifted)


def t1_multiplicity(num):
    """Multiplicity of (1 - t) in an integer polynomial (dict form).

    Returns (multiplicity, reduced polynomial); None multiplicity for the
    zero polynomial.
    """
    if not num:
        return None, {}
    cur = dict(num)
    mult = 0
    while sum(cur.values()) == 0:
        # divide by (1 - t): q_k = sum_{j<=k} n_j
        degs = sorted(cur)
        q = {}
        acc = 0
        for k in range(degs[0], degs[-1] + 1):
            acc += cur.get(k, 0)
            if acc:
                q[k] = acc
        cur = q
        mult += 1
        if not cur:
            break
    return mult, cur


def dimension_from_numerator(num, nvars):
    """Krull dimension from the series numerator; -1 for the zero module."""
    mult, _ = t1_multiplicity(num)
    if mult is None:
        return -1
    return nvars - mult


def dimension_combinatorial(supports, nvars):
    """Largest set of variables not containing any generator support.

    `supports`: iterable of frozensets.  Returns -1 when the ideal is the
    unit ideal (an empty support).
    """
    supports = [frozenset(s) for s in supports]
    if any(not s for s in supports):
        return -1
    supports = sorted(set(supports), key=lambda s: (len(s), sorted(s)))
    minimal = []
    for s in supports:
        if not any(m <= s for m in minimal):
            minimal.append(s)
    memo = {}

    def rec(allowed):
        viol = [s for s in minimal if s <= allowed]
        if not viol:
            return len(allowed)
        key = allowed
        if key in memo:
            return memo[key]
        s = min(viol, key=lambda t: (len(t), sorted(t)))
        best = -1
        for v in sorted(s):
            r = rec(allowed - {v})
            if r > best:
                best = r
        memo[key] = best
        return best

    return rec(frozenset(range(nvars)))


@dataclass(frozen=True)
class HilbertSeries:
    """numerator / prod_v (1 - t^{w_v}); numerator as degree->coeff."""

    numerator: tuple  # sorted tuple of (degree, coeff)
    weights: tuple

    @classmethod
    def from_dict(cls, num, weights):
        return cls(tuple(sorted(num.items())), tuple(weights))

    def as_dict(self):
        return dict(self.numerator)

    def dimension(self):
        return dimension_from_numerator(self.as_dict(), len(self.weights))

    def is_zero(self):
        return not self.numerator

    def shifted(self, d):
        return HilbertSeries(
            tuple(sorted((k + d, v) for k, v in self.numerator)),
            self.weights)

    def section_by_regular_linear_form(self):
        """Expected series of M/(l)M for a degree-1 regular element l: the
        (1 - t) factor cancels, so the numerator is unchanged and the
        denominator loses one weight-1 variable."""
        if 1 not in self.weights:
            raise ScmlabError("no weight-1 variable to remove")
        w = list(self.weights)
        w.remove(1)
        return HilbertSeries(self.numerator, tuple(w))

    def coefficients_upto(self, dmax):
        """Hilbert function values in degrees 0..dmax (standard grading
        assumed: all weights 1)."""
        if any(w != 1 for w in self.weights):
            raise ScmlabError("hilbert function expansion needs weights 1")
        n = len(self.weights)
        num = self.as_dict()
        vals = []
        from math import comb
        for d in range(dmax + 1):
            v = 0
            for k, c in num.items():
                if k <= d:
                    v += c * comb(d - k + n - 1, n - 1)
            vals.append(v)
        return vals

    def to_json(self):
        return {
            "numerator": [[int(k), int(v)] for k, v in self.numerator],
            "denominator_weights": list(self.weights),
        }
