"""Occurrence paths and the occurrence-sum depth predictor.

For the i-th variable occurrence of a term (in yield order) the occurrence
path is the chain of subterms from that leaf up to the root.  Summing, for
each step, the per-position depth of the image of the symbol entered gives
an occurrence score; ``b_of`` takes the maximum score over occurrences
whose root-level contribution is nonzero.  ``predict_depth_hyp`` uses that
maximum as a prediction of ``depth(apply_hyp(h, t))``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .hypersub import Hypersubstitution
from .terms import App, Term, Var, _length_map, depth_wrt

__all__ = [
    "BTrace",
    "OccurrencePath",
    "b_of",
    "b_trace",
    "beta",
    "occurrence_path",
    "predict_depth_hyp",
]


@dataclass(frozen=True)
class OccurrencePath:
    """Chain of subterms from the i-th leaf (yield order) up to the root.

    ``chain[0]`` is the leaf and ``chain[-1]`` the whole term;
    ``positions[k-1]`` is the 1-based argument place of ``chain[k-1]``
    inside ``chain[k]``.
    """

    occurrence_index: int
    chain: tuple[Term, ...]
    positions: tuple[int, ...]

    @property
    def beta(self) -> int:
        """Number of applications on the path: ``len(chain) - 1``."""
        return len(self.chain) - 1


@dataclass(frozen=True)
class BTrace:
    """Per-level depth contributions along one occurrence path.

    ``b_values[0]`` is always 0; for k >= 1, ``b_values[k]`` is the
    per-position depth of the image of the symbol at ``chain[k]``.
    ``top_nonzero`` records whether the contribution at the root level
    (the last entry) is nonzero.
    """

    occurrence_index: int
    b_values: tuple[int, ...]
    b_sum: int
    top_nonzero: bool


def occurrence_path(t: Term, i: int) -> OccurrencePath:
    """Locate the i-th variable occurrence of ``t`` (1-based, yield order)."""
    lengths = _length_map(t)
    total = lengths[id(t)]
    if not isinstance(i, int) or isinstance(i, bool) or not 1 <= i <= total:
        raise ValueError(f"occurrence index {i!r} out of range 1..{total}")
    chain = [t]
    positions: list[int] = []
    node = t
    k = i
    while type(node) is App:
        for place, child in enumerate(node.args, start=1):
            span = lengths[id(child)]
            if k <= span:
                positions.append(place)
                chain.append(child)
                node = child
                break
            k -= span
    chain.reverse()
    positions.reverse()
    return OccurrencePath(occurrence_index=i, chain=tuple(chain), positions=tuple(positions))


def beta(t: Term, i: int) -> int:
    """Node depth of the i-th leaf: applications on its root-to-leaf path."""
    return occurrence_path(t, i).beta


def b_trace(h: Hypersubstitution, t: Term, i: int) -> BTrace:
    """The per-level contributions of ``h`` along the i-th occurrence path of ``t``."""
    h.signature.validate_term(t)
    path = occurrence_path(t, i)
    values = [0]
    for place, parent in zip(path.positions, path.chain[1:]):
        values.append(depth_wrt(h.assignment[parent.symbol], place))  # type: ignore[union-attr]
    return BTrace(
        occurrence_index=i,
        b_values=tuple(values),
        b_sum=sum(values),
        top_nonzero=values[-1] != 0,
    )


def _position_depths(h: Hypersubstitution) -> dict[str, tuple[int, ...]]:
    # b_trace values depend only on (symbol, argument place), so one small
    # table per call covers every occurrence of the term.
    return {
        name: tuple(depth_wrt(h.assignment[name], place) for place in range(1, arity + 1))
        for name, arity in h.signature.symbols.items()
    }


def b_of(h: Hypersubstitution, t: Term) -> int:
    """Maximum ``b_sum`` over occurrences whose root-level step is nonzero, else 0.

    Computed in one pass over the tree positions of ``t`` by accumulating
    per-step contributions top-down; this equals the maximum of
    ``b_trace(h, t, i).b_sum`` over all qualifying i without building one
    trace per occurrence.
    """
    h.signature.validate_term(t)
    if type(t) is Var:
        return 0
    table = _position_depths(h)
    best = 0
    root_row = table[t.symbol]
    stack = [(child, root_row[place], root_row[place]) for place, child in enumerate(t.args)]
    while stack:
        node, acc, top = stack.pop()
        if type(node) is Var:
            if top != 0 and acc > best:
                best = acc
        else:
            row = table[node.symbol]
            stack.extend(
                (child, acc + row[place], top) for place, child in enumerate(node.args)
            )
    return best


def predict_depth_hyp(h: Hypersubstitution, t: Term) -> int:
    """Occurrence-sum prediction of ``depth(apply_hyp(h, t))``.

    Exact whenever every image keeps all the variables of its symbol and no
    image is a bare variable; images that drop variables or project can
    make the prediction diverge from the measured depth (the verification
    suite reports such cases as counterexamples).
    """
    return b_of(h, t)
