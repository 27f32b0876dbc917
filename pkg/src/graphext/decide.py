"""Decide whether one of two 1-sink extensions embeds in the other as a full corner.

Three procedures are offered:

* essential mode: the base satisfies Condition (L) and both extensions are
  essential; compare Wojciech vectors in ``coker(A_G - I)``.
* general mode: the base satisfies Condition (K); the sink closures must agree,
  and then ``omega^1 + X n`` is compared in ``coker(A_F - I)`` for the quotient
  ``F = G / H``.
* `decide_auto` picks whichever of the two applies.

The verdict is symmetric: the criteria say one algebra embeds in the other but
not which way round.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from graphext.extension import (
    OneSinkExtension,
    block_decomposition,
    closure_of_sink,
    inessential_part,
    is_essential,
    n_vector,
    ordered,
    wojciech_vector,
)
from graphext.graph import Graph, condition_K, condition_L, vertex_matrix
from graphext.intlinalg import classes_equal

EMBEDDABLE = "embeddable"
NOT_EMBEDDABLE = "not_embeddable"
PRECONDITION_FAILED = "precondition_failed"

ESSENTIAL = "essential"
GENERAL = "general"
TOTALLY_INESSENTIAL = "totally_inessential"

DIRECTION_NOTE = "one of the two extension algebras embeds in the other; the direction is not determined"


class BaseMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Decision:
    verdict: str
    mode: Optional[str]
    evidence: dict = field(default_factory=dict)
    preconditions: dict = field(default_factory=dict)
    note: str = DIRECTION_NOTE

    @property
    def embeddable(self) -> bool:
        return self.verdict == EMBEDDABLE

    def verify(self) -> bool:
        """Re-check the stored certificate or obstruction from the stored data alone."""
        ev = self.evidence
        if self.verdict == EMBEDDABLE:
            if self.mode == TOTALLY_INESSENTIAL:
                return not ev["closure"]
            m, z, rhs = ev["matrix"], ev["certificate"], ev["difference"]
            if not m:
                return not rhs
            return [sum(a * b for a, b in zip(row, z)) for row in m] == rhs
        if self.verdict == NOT_EMBEDDABLE:
            if "closures" in ev:
                return set(ev["closures"][0]) != set(ev["closures"][1])
            return ev["obstruction"].verify(ev["matrix"], ev["difference"])
        return True


def _same_base(g: Graph, e1: OneSinkExtension, e2: OneSinkExtension) -> None:
    for e in (e1, e2):
        if e.base != g:
            raise BaseMismatch(f"extension {e.label or e.sink!r} is over a different base graph")


def _class_test(m, x: list[int], y: list[int], labels: tuple[str, ...], extra: dict) -> tuple[str, dict]:
    diff = [a - b for a, b in zip(x, y)]
    rows = m.tolist()
    res = classes_equal(rows, x, y)
    evidence = {"labels": list(labels), "matrix": rows, "vectors": [x, y], "difference": diff, **extra}
    if res:
        evidence["certificate"] = res.certificate
        return EMBEDDABLE, evidence
    evidence["obstruction"] = res.obstruction
    return NOT_EMBEDDABLE, evidence


def decide_essential(g: Graph, e1: OneSinkExtension, e2: OneSinkExtension) -> Decision:
    _same_base(g, e1, e2)
    cond_l = condition_L(g)
    pre = {"condition_L": cond_l.holds, "essential": [is_essential(e1), is_essential(e2)]}
    if not cond_l.holds:
        return Decision(PRECONDITION_FAILED, ESSENTIAL,
                        {"failed": "condition_L", "witness": list(cond_l.witness)}, pre)
    for e in (e1, e2):
        if not is_essential(e):
            missing = [v for v in g.vertices if v not in e._reaches_sink]
            return Decision(PRECONDITION_FAILED, ESSENTIAL,
                            {"failed": "essential", "extension": e.label, "witness": missing}, pre)
    w1, w2 = wojciech_vector(e1), wojciech_vector(e2)
    x = [w1[v] for v in g.vertices]
    y = [w2[v] for v in g.vertices]
    verdict, ev = _class_test(vertex_matrix(g).minus_identity(), x, y, g.vertices, {})
    return Decision(verdict, ESSENTIAL, ev, pre)


def decide_general(g: Graph, e1: OneSinkExtension, e2: OneSinkExtension) -> Decision:
    _same_base(g, e1, e2)
    cond_k = condition_K(g)
    pre = {"condition_K": cond_k.holds}
    if not cond_k.holds:
        return Decision(PRECONDITION_FAILED, GENERAL, {"failed": "condition_K", "witness": cond_k.witness}, pre)
    c1, c2 = closure_of_sink(e1), closure_of_sink(e2)
    if c1 != c2:
        return Decision(NOT_EMBEDDABLE, GENERAL,
                        {"reason": "closures differ", "closures": [ordered(g, c1), ordered(g, c2)]}, pre)
    if not c1:
        return Decision(EMBEDDABLE, TOTALLY_INESSENTIAL, {"closure": [], "certificate": []}, pre)
    h = inessential_part(e1)
    assert h == inessential_part(e2)
    blocks = block_decomposition(g, c1)
    vectors = []
    for e in (e1, e2):
        w = wojciech_vector(e)
        n = n_vector(e)
        nvec = [n[v] for v in blocks.rest]
        xn = [sum(a * b for a, b in zip(row, nvec)) for row in blocks.X.tolist()] if nvec else [0] * len(blocks.closure)
        vectors.append([w[v] + t for v, t in zip(blocks.closure, xn)])
    extra = {"closure": list(blocks.closure), "inessential": list(blocks.rest), "X": blocks.X.tolist()}
    verdict, ev = _class_test(blocks.A_F.minus_identity(), vectors[0], vectors[1], blocks.closure, extra)
    return Decision(verdict, GENERAL, ev, pre)


def decide_auto(g: Graph, e1: OneSinkExtension, e2: OneSinkExtension) -> Decision:
    """Use general mode under Condition (K), else essential mode when it applies."""
    _same_base(g, e1, e2)
    if condition_K(g).holds:
        return decide_general(g, e1, e2)
    cond_l = condition_L(g)
    if not cond_l.holds:
        return Decision(PRECONDITION_FAILED, None,
                        {"failed": "condition_L", "witness": list(cond_l.witness)},
                        {"condition_L": False, "condition_K": False})
    if is_essential(e1) and is_essential(e2):
        return decide_essential(g, e1, e2)
    return Decision(PRECONDITION_FAILED, None,
                    {"failed": "condition_K", "witness": condition_K(g).witness,
                     "detail": "Condition (L) holds but the extensions are not both essential"},
                    {"condition_L": True, "condition_K": False,
                     "essential": [is_essential(e1), is_essential(e2)]})


MODES = {"auto": decide_auto, ESSENTIAL: decide_essential, GENERAL: decide_general}


def decide(g: Graph, e1: OneSinkExtension, e2: OneSinkExtension, mode: str = "auto") -> Decision:
    try:
        fn = MODES[mode]
    except KeyError:
        raise ValueError(f"unknown mode {mode!r}; expected one of {sorted(MODES)}") from None
    return fn(g, e1, e2)
