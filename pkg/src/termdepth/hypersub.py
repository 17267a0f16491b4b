"""Hypersubstitutions: symbol-wise term rewriting lifted to whole terms.

A hypersubstitution assigns to every n-ary symbol an n-ary image term.  Its
extension rewrites a term bottom-up, superposing the image of each symbol
onto the rewritten children while leaving variables fixed.  Composition of
hypersubstitutions and the identity make them a monoid.
"""

from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping

from .superpose import is_full, superpose
from .terms import App, Signature, Term, Var, arity_bound, depth, postorder, variables

__all__ = [
    "Hypersubstitution",
    "apply_hyp",
    "compose_hyp",
    "hyp_depth",
    "identity_hyp",
    "is_full_hyp",
    "is_regular_hyp",
    "predict_depth_full_hyp",
]


@dataclass(frozen=True)
class Hypersubstitution:
    """Total, arity-respecting assignment of an image term to every symbol.

    The image of an n-ary symbol may use only the variables x1..xn; a bare
    variable is allowed, so projections are representable.
    """

    signature: Signature
    assignment: Mapping[str, Term]

    def __post_init__(self) -> None:
        table = dict(self.assignment)
        missing = [name for name in self.signature.symbols if name not in table]
        if missing:
            raise ValueError(f"missing image(s) for: {', '.join(missing)}")
        extra = [name for name in table if name not in self.signature.symbols]
        if extra:
            raise ValueError(f"image(s) for unknown symbol(s): {', '.join(extra)}")
        for name, image in table.items():
            if not isinstance(image, Term):
                raise ValueError(f"image of {name!r} is not a Term")
            arity = self.signature.symbols[name]
            bound = arity_bound(image)
            if bound > arity:
                raise ValueError(f"image of {name!r} uses x{bound} but {name!r} is {arity}-ary")
        object.__setattr__(self, "assignment", MappingProxyType(table))

    def image(self, name: str) -> Term:
        try:
            return self.assignment[name]
        except KeyError:
            raise ValueError(f"unknown operation symbol {name!r}") from None


def identity_hyp(sig: Signature) -> Hypersubstitution:
    """The unit of composition: each n-ary ``f`` maps to ``f(x1,..,xn)``."""
    images = {
        name: App(name, tuple(Var(i) for i in range(1, arity + 1)))
        for name, arity in sig.symbols.items()
    }
    return Hypersubstitution(sig, images)


def apply_hyp(h: Hypersubstitution, t: Term) -> Term:
    """Extend ``h`` to the term ``t``.

    Variables stay fixed; every application ``f(...)`` becomes the image of
    ``f`` superposed onto the rewritten children.  The result shares
    subterm objects, so repeated arguments do not blow up memory.
    """
    h.signature.validate_term(t)
    memo: dict[int, Term] = {}
    for node in postorder(t):
        if type(node) is Var:
            memo[id(node)] = node
        else:
            children = tuple(memo[id(a)] for a in node.args)
            memo[id(node)] = superpose(h.assignment[node.symbol], children, len(children))
    return memo[id(t)]


def compose_hyp(first: Hypersubstitution, second: Hypersubstitution) -> Hypersubstitution:
    """Composition: the result maps each ``f`` to ``first`` applied to ``second``'s image."""
    if first.signature != second.signature:
        raise ValueError("cannot compose hypersubstitutions over different signatures")
    images = {name: apply_hyp(first, image) for name, image in second.assignment.items()}
    return Hypersubstitution(first.signature, images)


def is_full_hyp(h: Hypersubstitution) -> bool:
    """Whether every image is a full term over exactly the variables x1..xn."""
    for name, arity in h.signature.symbols.items():
        image = h.assignment[name]
        if not is_full(image) or variables(image) != set(range(1, arity + 1)):
            return False
    return True


def is_regular_hyp(h: Hypersubstitution) -> bool:
    """Whether every image uses exactly the variables x1..xn of its symbol."""
    return all(
        variables(h.assignment[name]) == set(range(1, arity + 1))
        for name, arity in h.signature.symbols.items()
    )


def hyp_depth(h: Hypersubstitution) -> int:
    """Maximum depth over all images."""
    return max(depth(image) for image in h.assignment.values())


def predict_depth_full_hyp(h: Hypersubstitution, t: Term) -> int:
    """Depth of ``apply_hyp(h, t)`` for full ``h`` and full ``t`` over a
    one-symbol signature, computed as ``depth(image) * depth(t)``."""
    names = list(h.signature.symbols)
    if len(names) != 1:
        raise ValueError("the multiplicative depth rule needs a one-symbol signature")
    if not is_full_hyp(h):
        raise ValueError("hypersubstitution must be full")
    h.signature.validate_term(t)
    if not is_full(t):
        raise ValueError("term must be full")
    return depth(h.assignment[names[0]]) * depth(t)
