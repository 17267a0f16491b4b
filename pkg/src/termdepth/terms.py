"""Terms over a ranked signature and their elementary depth measures.

A term is either a variable ``x1, x2, ...`` or an operation symbol applied
to exactly arity-many subterms.  Depth is tree height: 0 for a variable,
1 + the maximum child depth for an application.  ``depth_wrt`` restricts
the measure to paths that reach a chosen variable.

Terms are immutable and may share subterm objects freely.  Every traversal
in this package runs on an explicit stack and memoizes per object, so both
very deep terms (10^5 levels and beyond) and heavily shared ones are safe.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping

__all__ = [
    "App",
    "DepthReport",
    "Signature",
    "Term",
    "Var",
    "arity_bound",
    "depth",
    "depth_report",
    "depth_wrt",
    "length",
    "postorder",
    "variables",
    "yield_word",
]

_SYMBOL_NAME = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")
_RESERVED_NAME = re.compile(r"x[0-9]+\Z")


@dataclass(frozen=True)
class Signature:
    """Ordered map from operation-symbol names to arities (all >= 1).

    Names of the shape ``x<digits>`` are rejected: that spelling is
    reserved for variables.
    """

    symbols: Mapping[str, int]

    def __post_init__(self) -> None:
        table = dict(self.symbols)
        if not table:
            raise ValueError("a signature needs at least one operation symbol")
        for name, arity in table.items():
            if not isinstance(name, str) or not _SYMBOL_NAME.match(name):
                raise ValueError(f"invalid operation symbol name {name!r}")
            if _RESERVED_NAME.match(name):
                raise ValueError(f"symbol name {name!r} is reserved for variables")
            if not isinstance(arity, int) or isinstance(arity, bool) or arity < 1:
                raise ValueError(f"arity of {name!r} must be an integer >= 1, got {arity!r}")
        object.__setattr__(self, "symbols", MappingProxyType(table))

    def __repr__(self) -> str:
        return f"Signature({dict(self.symbols)!r})"

    def __contains__(self, name: object) -> bool:
        return name in self.symbols

    def __iter__(self) -> Iterator[str]:
        return iter(self.symbols)

    def arity(self, name: str) -> int:
        try:
            return self.symbols[name]
        except KeyError:
            raise ValueError(f"unknown operation symbol {name!r}") from None

    def common_arity(self) -> int | None:
        """The shared arity if every symbol has the same one, else None."""
        arities = set(self.symbols.values())
        return arities.pop() if len(arities) == 1 else None

    def validate_term(self, t: Term) -> None:
        """Raise ValueError unless every application in ``t`` matches this signature."""
        for node in postorder(t):
            if type(node) is App:
                arity = self.arity(node.symbol)
                if len(node.args) != arity:
                    raise ValueError(
                        f"{node.symbol!r} is {arity}-ary but is applied to {len(node.args)} arguments"
                    )


class Term:
    """Base class for Var and App; instances are immutable and hashable."""

    __slots__ = ()

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("terms are immutable")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Term):
            return NotImplemented
        return _structurally_equal(self, other)

    def __hash__(self) -> int:
        return self._hash  # type: ignore[attr-defined]


class Var(Term):
    """A variable leaf ``x<index>`` with index >= 1."""

    __slots__ = ("index", "_hash")

    def __init__(self, index: int):
        if not isinstance(index, int) or isinstance(index, bool) or index < 1:
            raise ValueError(f"variable index must be an integer >= 1, got {index!r}")
        object.__setattr__(self, "index", index)
        object.__setattr__(self, "_hash", hash(("x", index)))

    def __repr__(self) -> str:
        return f"Var({self.index})"


class App(Term):
    """An operation symbol applied to a fixed tuple of subterms."""

    __slots__ = ("symbol", "args", "_hash")

    def __init__(self, symbol: str, args: Iterable[Term]):
        args = tuple(args)
        if not isinstance(symbol, str) or not symbol:
            raise ValueError("application symbol must be a nonempty string")
        if not args:
            raise ValueError("applications take at least one argument")
        for a in args:
            if not isinstance(a, Term):
                raise ValueError(f"application argument {a!r} is not a Term")
        object.__setattr__(self, "symbol", symbol)
        object.__setattr__(self, "args", args)
        object.__setattr__(self, "_hash", hash((symbol, tuple(a._hash for a in args))))

    def __repr__(self) -> str:
        text = _to_text(self)
        if len(text) > 120:
            text = text[:117] + "..."
        return f"<term {text}>"


def _structurally_equal(a: Term, b: Term) -> bool:
    # Pairwise walk with a cached-hash fast path; no recursion.  Visited
    # pairs are memoized so equality of terms with heavy subterm sharing
    # stays polynomial instead of unfolding the whole tree product; this is
    # sound because any mismatch aborts the entire walk.
    seen: set[tuple[int, int]] = set()
    stack = [(a, b)]
    while stack:
        a, b = stack.pop()
        if a is b:
            continue
        if type(a) is not type(b) or a._hash != b._hash:  # type: ignore[attr-defined]
            return False
        if type(a) is Var:
            if a.index != b.index:  # type: ignore[union-attr]
                return False
            continue
        if a.symbol != b.symbol or len(a.args) != len(b.args):  # type: ignore[union-attr]
            return False
        key = (id(a), id(b))
        if key in seen:
            continue
        seen.add(key)
        stack.extend(zip(a.args, b.args))  # type: ignore[union-attr]
    return True


def _to_text(t: Term) -> str:
    # Canonical text (textio.render_term wraps this); kept here so repr works
    # without importing the parser module.
    parts: list[str] = []
    stack: list[object] = [t]
    while stack:
        node = stack.pop()
        if type(node) is str:
            parts.append(node)
        elif type(node) is Var:
            parts.append(f"x{node.index}")
        else:
            parts.append(node.symbol + "(")  # type: ignore[union-attr]
            stack.append(")")
            args = node.args  # type: ignore[union-attr]
            for i in range(len(args) - 1, -1, -1):
                stack.append(args[i])
                if i:
                    stack.append(",")
    return "".join(parts)


def postorder(t: Term) -> Iterator[Term]:
    """Yield each distinct subterm object once, children before parents.

    Shared subterms are visited a single time, so the walk is linear in the
    number of distinct nodes even when the unfolded tree is exponentially
    larger.
    """
    seen: set[int] = set()
    stack: list[tuple[Term, bool]] = [(t, False)]
    while stack:
        node, ready = stack.pop()
        if ready:
            yield node
            continue
        if id(node) in seen:
            continue
        seen.add(id(node))
        stack.append((node, True))
        if type(node) is App:
            stack.extend((a, False) for a in node.args if id(a) not in seen)


def variables(t: Term) -> set[int]:
    """The set of variable indices occurring in ``t``."""
    out: set[int] = set()
    seen: set[int] = set()
    stack = [t]
    while stack:
        node = stack.pop()
        if id(node) in seen:
            continue
        seen.add(id(node))
        if type(node) is Var:
            out.add(node.index)
        else:
            stack.extend(node.args)
    return out


def arity_bound(t: Term) -> int:
    """The least n such that ``t`` is n-ary: its maximum variable index."""
    return max(variables(t))


def depth(t: Term) -> int:
    """Tree height: 0 for a variable, 1 + max child depth for an application."""
    memo: dict[int, int] = {}
    stack: list[tuple[Term, bool]] = [(t, False)]
    while stack:
        node, ready = stack.pop()
        if type(node) is Var:
            memo[id(node)] = 0
        elif ready:
            memo[id(node)] = 1 + max(memo[id(a)] for a in node.args)
        elif id(node) not in memo:
            stack.append((node, True))
            stack.extend((a, False) for a in node.args if id(a) not in memo)
    return memo[id(t)]


def depth_wrt(t: Term, l: int) -> int:
    """Depth of ``t`` measured along paths that reach the variable ``x_l``.

    0 when ``t`` is a variable or does not contain ``x_l``; otherwise
    1 + the maximum over the children that contain ``x_l``.
    """
    if not isinstance(l, int) or isinstance(l, bool) or l < 1:
        raise ValueError(f"variable index must be an integer >= 1, got {l!r}")
    # memo value None marks subterms that do not contain x_l
    memo: dict[int, int | None] = {}
    stack: list[tuple[Term, bool]] = [(t, False)]
    while stack:
        node, ready = stack.pop()
        if type(node) is Var:
            memo[id(node)] = 0 if node.index == l else None
        elif ready:
            best = -1
            for a in node.args:
                v = memo[id(a)]
                if v is not None and v > best:
                    best = v
            memo[id(node)] = None if best < 0 else best + 1
        elif id(node) not in memo:
            stack.append((node, True))
            stack.extend((a, False) for a in node.args if id(a) not in memo)
    value = memo[id(t)]
    return 0 if value is None else value


def yield_word(t: Term) -> list[int]:
    """Variable indices at the leaves of ``t``, left to right.

    This enumerates tree positions, so a shared subterm contributes once
    per occurrence.
    """
    out: list[int] = []
    stack = [t]
    while stack:
        node = stack.pop()
        if type(node) is Var:
            out.append(node.index)
        else:
            stack.extend(reversed(node.args))
    return out


def _length_map(t: Term) -> dict[int, int]:
    memo: dict[int, int] = {}
    for node in postorder(t):
        memo[id(node)] = 1 if type(node) is Var else sum(memo[id(a)] for a in node.args)
    return memo


def length(t: Term) -> int:
    """Number of leaf (variable) positions of ``t``, counted with multiplicity."""
    return _length_map(t)[id(t)]


@dataclass(frozen=True)
class DepthReport:
    """Depth of a term together with its per-variable depths for x1..xn."""

    depth: int
    per_variable: Mapping[int, int]
    variables: frozenset[int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "per_variable", MappingProxyType(dict(self.per_variable)))
        object.__setattr__(self, "variables", frozenset(self.variables))


def depth_report(t: Term, n: int) -> DepthReport:
    """Depth and per-variable depths of ``t`` viewed as an n-ary term."""
    bound = arity_bound(t)
    if n < bound:
        raise ValueError(f"term is not {n}-ary: it uses x{bound}")
    per = {l: depth_wrt(t, l) for l in range(1, n + 1)}
    return DepthReport(depth=depth(t), per_variable=per, variables=frozenset(variables(t)))
