"""Composition of terms and closed-form depth predictors for the composite."""

from __future__ import annotations

from typing import Sequence

from .terms import (
    App,
    Signature,
    Term,
    Var,
    arity_bound,
    depth,
    depth_wrt,
    postorder,
    variables,
)

__all__ = ["is_full", "predict_depth_full", "predict_depth_general", "superpose"]


def superpose(s: Term, ts: Sequence[Term], n: int) -> Term:
    """Substitute ``ts[i-1]`` for every occurrence of ``x_i`` in ``s``.

    ``s`` must be n-ary (no variable index above ``n``) and ``ts`` must
    supply exactly ``n`` replacement terms.  The result shares structure
    with the inputs: each ``ts[j]`` object is plugged in wherever ``x_j``
    occurs, so the composite can be measured in time linear in the number
    of distinct nodes even when its unfolded tree is huge.
    """
    ts = tuple(ts)
    if len(ts) != n:
        raise ValueError(f"expected {n} argument terms, got {len(ts)}")
    bound = arity_bound(s)
    if bound > n:
        raise ValueError(f"outer term is not {n}-ary: it uses x{bound}")
    memo: dict[int, Term] = {}
    for node in postorder(s):
        if type(node) is Var:
            memo[id(node)] = ts[node.index - 1]
        else:
            memo[id(node)] = App(node.symbol, tuple(memo[id(a)] for a in node.args))
    return memo[id(s)]


def is_full(t: Term) -> bool:
    """Whether ``t`` is a full term.

    An application is full when its children are exactly the variables
    ``x_1..x_r`` in some order (a permutation frontier), or when all of its
    children are themselves full.  Variables are never full.
    """
    if type(t) is Var:
        return False
    memo: dict[int, bool] = {}
    for node in postorder(t):
        if type(node) is Var:
            memo[id(node)] = False
            continue
        args = node.args
        frontier = all(type(a) is Var for a in args) and sorted(
            a.index for a in args  # type: ignore[union-attr]
        ) == list(range(1, len(args) + 1))
        memo[id(node)] = frontier or all(memo[id(a)] for a in args)
    return memo[id(t)]


def predict_depth_full(s: Term, ts: Sequence[Term], sig: Signature) -> int:
    """Depth of ``superpose(s, ts, n)`` for full ``s`` over a single-arity signature.

    Computed without building the composite as
    ``max(depth(t) for t in ts) + depth(s)``.  The single-arity requirement
    is essential; mixed-arity signatures break the additive rule.
    """
    n = sig.common_arity()
    if n is None:
        raise ValueError("the additive depth rule needs a single-arity signature")
    sig.validate_term(s)
    if not is_full(s):
        raise ValueError("outer term must be full")
    ts = tuple(ts)
    if len(ts) != n:
        raise ValueError(f"expected {n} argument terms, got {len(ts)}")
    return max(depth(t) for t in ts) + depth(s)


def predict_depth_general(s: Term, ts: Sequence[Term], n: int) -> int:
    """Depth of ``superpose(s, ts, n)`` for arbitrary terms.

    Equals ``max(depth_wrt(s, j) + depth(ts[j-1]))`` over the variables
    ``x_j`` occurring in ``s``.
    """
    ts = tuple(ts)
    if len(ts) != n:
        raise ValueError(f"expected {n} argument terms, got {len(ts)}")
    bound = arity_bound(s)
    if bound > n:
        raise ValueError(f"outer term is not {n}-ary: it uses x{bound}")
    return max(depth_wrt(s, j) + depth(ts[j - 1]) for j in variables(s))
