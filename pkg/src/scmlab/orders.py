"""Monomial orders.

An order is compiled into a list of comparison *segments* shared by both
kernel backends.  Segment kinds:

  ("deg", indices, weights)  compare weighted total degree over `indices`
  ("lex", indices)           first difference, larger exponent wins
  ("revlex", indices)        last difference, smaller exponent wins

Degrevlex on a variable block is ``deg`` followed by ``revlex``; a block
(elimination) order concatenates the segments of its blocks.  Module terms
are compared term-over-position: ring order first, ties broken by component
(lower index is larger).
"""

from dataclasses import dataclass, field
from typing import Optional

from .errors import RingError


@dataclass(frozen=True)
class OrderSpec:
    kind: str  # "degrevlex" | "lex" | "block"
    blocks: tuple = ()  # for "block": tuple of (inner OrderSpec, block size)

    def __str__(self):
        if self.kind == "block":
            return "block(" + ", ".join(
                f"{o}:{n}" for o, n in self.blocks) + ")"
        return self.kind


def degrevlex() -> OrderSpec:
    return OrderSpec("degrevlex")


def lex() -> OrderSpec:
    return OrderSpec("lex")


def block(*blocks) -> OrderSpec:
    """block((inner_order, size), ...) — earlier blocks eliminate."""
    return OrderSpec("block", tuple(blocks))


def build_segments(order: OrderSpec, nvars: int, weights) -> tuple:
    """Flatten an order spec into comparison segments over variable indices."""
    segs = []

    def emit(o: OrderSpec, start: int, size: int):
        idx = tuple(range(start, start + size))
        if o.kind == "degrevlex":
            segs.append(("deg", idx, tuple(weights[i] for i in idx)))
            segs.append(("revlex", idx))
        elif o.kind == "lex":
            segs.append(("lex", idx))
        elif o.kind == "block":
            total = sum(n for _, n in o.blocks)
            if total != size:
                raise RingError(
                    f"block sizes {total} do not partition {size} variables")
            pos = start
            for inner, n in o.blocks:
                emit(inner, pos, n)
                pos += n
        else:
            raise RingError(f"unknown order kind {o.kind!r}")

    emit(order, 0, nvars)
    return tuple(segs)


def eliminates_block(order: OrderSpec, block_size: int) -> bool:
    """True when the order ranks any monomial involving the first
    `block_size` variables above every monomial in the remaining ones.

    Holds exactly when some prefix of blocks covers those variables, since
    every inner order here is global.
    """
    if order.kind != "block" or not order.blocks:
        return False
    acc = 0
    for _, n in order.blocks:
        acc += n
        if acc == block_size:
            return True
        if acc > block_size:
            return False
    return False


def compare_exps(e1, e2, segments) -> int:
    """+1 if e1 > e2 under the order, -1 if smaller, 0 if equal."""
    for seg in segments:
        kind = seg[0]
        if kind == "deg":
            _, idx, w = seg
            d1 = 0
            d2 = 0
            for k, i in enumerate(idx):
                d1 += w[k] * e1[i]
                d2 += w[k] * e2[i]
            if d1 != d2:
                return 1 if d1 > d2 else -1
        elif kind == "revlex":
            _, idx = seg
            for i in reversed(idx):
                if e1[i] != e2[i]:
                    return 1 if e1[i] < e2[i] else -1
        else:  # lex
            _, idx = seg
            for i in idx:
                if e1[i] != e2[i]:
                    return 1 if e1[i] > e2[i] else -1
    return 0
