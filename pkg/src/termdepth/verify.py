"""Randomized self-checks of the depth predictors.

Generators build random signatures, terms and hypersubstitutions; a trial
runner per named law compares the closed-form prediction against direct
construction and measurement, greedily shrinks every failing case, and
reports it as a replayable :class:`Discrepancy`.

Randomness is CPython's Mersenne Twister (``random.Random``).  Every trial
draws from its own stream seeded with the string ``"<seed>:<trial>"``, so
any single trial replays without rerunning the ones before it; that token
is stored on each discrepancy.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from types import MappingProxyType
from typing import Callable, Iterator, Mapping, Sequence

from .hypersub import (
    Hypersubstitution,
    apply_hyp,
    compose_hyp,
    hyp_depth,
    is_full_hyp,
    predict_depth_full_hyp,
)
from .occurrences import predict_depth_hyp
from .superpose import is_full, predict_depth_full, predict_depth_general, superpose
from .terms import App, Signature, Term, Var, depth, variables
from .textio import render_hyp, render_signature, render_term

__all__ = [
    "KINDS",
    "Discrepancy",
    "GenConfig",
    "check_theorem",
    "gen_full_hyp",
    "gen_full_term",
    "gen_hyp",
    "gen_signature",
    "gen_term",
    "trial_stream",
]

KINDS = ("thm2.3", "thm3.3", "cor4.5", "cor4.6", "thm5.1", "lemma2.2", "lemma4.2")

# Chance to emit a leaf while depth budget remains; biased low so terms stay
# bushy and max-expressions hit ties.
LEAF_PROBABILITY = 0.3

_REGULAR_ATTEMPTS = 64


@dataclass(frozen=True)
class GenConfig:
    """Tuning knobs for the generators; together with a seed and trial index
    they determine every generated value exactly."""

    seed: int = 0
    max_depth: int = 6
    max_arity: int = 3
    num_symbols: int = 2
    var_bound: int = 3
    projection_rate: float = 0.1
    deletion_bias: float = 0.1

    def __post_init__(self) -> None:
        if not isinstance(self.seed, int) or not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        if self.max_depth < 0:
            raise ValueError("max_depth must be >= 0")
        if self.max_arity < 1 or self.num_symbols < 1 or self.var_bound < 1:
            raise ValueError("max_arity, num_symbols and var_bound must be >= 1")
        for name in ("projection_rate", "deletion_bias"):
            p = getattr(self, name)
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"{name} must be in [0, 1]")


@dataclass(frozen=True)
class Discrepancy:
    """One failed trial: a predicted value vs the measured one.

    ``inputs`` holds canonical text for the signature and every generated
    value, so the case re-parses and re-fails standalone; ``seed_state`` is
    the ``"<seed>:<trial>"`` token of the originating stream.  For closure
    checks the two integers encode booleans (expected 1, got 0).
    """

    kind: str
    inputs: Mapping[str, str]
    predicted: int
    actual: int
    seed_state: str

    def __post_init__(self) -> None:
        object.__setattr__(self, "inputs", MappingProxyType(dict(self.inputs)))

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "inputs": dict(self.inputs),
            "predicted": self.predicted,
            "actual": self.actual,
            "seed_state": self.seed_state,
        }


def trial_stream(seed: int, trial: int) -> random.Random:
    """Independent, replayable RNG stream for one trial."""
    return random.Random(f"{seed}:{trial}")


# ---------------------------------------------------------------------------
# Generators


def gen_signature(cfg: GenConfig, rng: random.Random) -> Signature:
    """Random signature with cfg.num_symbols symbols and arities 1..max_arity."""
    return Signature(
        {f"f{k}": rng.randint(1, cfg.max_arity) for k in range(1, cfg.num_symbols + 1)}
    )


def gen_term(
    cfg: GenConfig,
    sig: Signature,
    rng: random.Random,
    max_depth: int | None = None,
    var_pool: Sequence[int] | None = None,
) -> Term:
    """Random term of depth <= the budget (default cfg.max_depth).

    Leaves are drawn from ``var_pool`` (default x1..x_var_bound).  Above
    budget 0 a leaf is emitted with probability LEAF_PROBABILITY.
    """
    budget = cfg.max_depth if max_depth is None else max_depth
    if budget < 0:
        raise ValueError("depth budget must be >= 0")
    pool = tuple(var_pool) if var_pool is not None else tuple(range(1, cfg.var_bound + 1))
    if not pool:
        raise ValueError("variable pool is empty")
    names = tuple(sig.symbols)
    arities = sig.symbols
    frames: list[list] = []  # [symbol, arity, args, sibling budget]
    pending = budget
    while True:
        if pending == 0 or rng.random() < LEAF_PROBABILITY:
            term: Term = Var(rng.choice(pool))
            while True:
                if not frames:
                    return term
                top = frames[-1]
                top[2].append(term)
                if len(top[2]) < top[1]:
                    pending = top[3]
                    break
                frames.pop()
                term = App(top[0], tuple(top[2]))
        else:
            name = rng.choice(names)
            frames.append([name, arities[name], [], pending - 1])
            pending -= 1


def _gen_full(
    rng: random.Random,
    target: int,
    base_names: Sequence[str],
    internal_names: Sequence[str],
    arities: Mapping[str, int],
    first_base_pool: Sequence[str] | None = None,
) -> Term:
    """Random full term of exactly depth ``target``.

    Permutation frontiers draw their symbol from ``base_names``; when
    ``first_base_pool`` is given, the first frontier built uses it instead
    (which pins the maximum frontier arity, and with it the variable set).
    """
    frames: list[list] = []  # [symbol, args, child targets]
    pending = target
    force_first = first_base_pool is not None
    while True:
        if pending == 1:
            if force_first:
                name = rng.choice(tuple(first_base_pool))  # type: ignore[arg-type]
                force_first = False
            else:
                name = rng.choice(tuple(base_names))
            n = arities[name]
            perm = list(range(1, n + 1))
            rng.shuffle(perm)
            term = App(name, tuple(Var(j) for j in perm))
            while True:
                if not frames:
                    return term
                top = frames[-1]
                top[1].append(term)
                if len(top[1]) < len(top[2]):
                    pending = top[2][len(top[1])]
                    break
                frames.pop()
                term = App(top[0], tuple(top[1]))
        else:
            name = rng.choice(tuple(internal_names))
            r = arities[name]
            targets = [rng.randint(1, pending - 1) for _ in range(r)]
            targets[rng.randrange(r)] = pending - 1  # one child carries the height
            frames.append([name, [], targets])
            pending = targets[0]


def gen_full_term(
    cfg: GenConfig, sig: Signature, rng: random.Random, depth: int | None = None
) -> Term:
    """Random full term of exactly the requested depth (default cfg.max_depth)."""
    target = cfg.max_depth if depth is None else depth
    if target < 1:
        raise ValueError("full terms have depth >= 1")
    names = tuple(sig.symbols)
    return _gen_full(rng, target, names, names, sig.symbols)


def gen_full_hyp(cfg: GenConfig, sig: Signature, rng: random.Random) -> Hypersubstitution:
    """Random full hypersubstitution: each image is full over exactly x1..xn.

    The image of an n-ary symbol builds its frontiers from symbols of arity
    <= n, with at least one frontier of arity exactly n, so the image stays
    n-ary while covering all n variables.
    """
    all_names = tuple(sig.symbols)
    images: dict[str, Term] = {}
    for name, n in sig.symbols.items():
        small = tuple(s for s, a in sig.symbols.items() if a <= n)
        exact = tuple(s for s, a in sig.symbols.items() if a == n)
        target = rng.randint(1, max(1, cfg.max_depth))
        images[name] = _gen_full(
            rng, target, small, all_names, sig.symbols, first_base_pool=exact
        )
    return Hypersubstitution(sig, images)


def _gen_regular_image(cfg: GenConfig, sig: Signature, rng: random.Random, name: str) -> Term:
    n = sig.symbols[name]
    want = set(range(1, n + 1))
    for _ in range(_REGULAR_ATTEMPTS):
        image = gen_term(cfg, sig, rng, var_pool=range(1, n + 1))
        if variables(image) == want:
            return image
    # resampling hit the attempt cap; fall back to the identity-style image
    return App(name, tuple(Var(i) for i in range(1, n + 1)))


def gen_hyp(
    cfg: GenConfig, sig: Signature, rng: random.Random, regular: bool = False
) -> Hypersubstitution:
    """Random hypersubstitution.

    With probability cfg.projection_rate an image is a bare variable; with
    probability cfg.deletion_bias an image draws its leaves from a proper
    subset of x1..xn, so some variables are guaranteed absent.  With
    ``regular=True`` both knobs are ignored and images are resampled until
    each uses exactly its symbol's variables.
    """
    images: dict[str, Term] = {}
    for name, n in sig.symbols.items():
        if regular:
            images[name] = _gen_regular_image(cfg, sig, rng, name)
            continue
        if rng.random() < cfg.projection_rate:
            images[name] = Var(rng.randint(1, n))
            continue
        pool: Sequence[int] = range(1, n + 1)
        if n >= 2 and rng.random() < cfg.deletion_bias:
            pool = rng.sample(range(1, n + 1), rng.randint(1, n - 1))
        images[name] = gen_term(cfg, sig, rng, var_pool=pool)
    return Hypersubstitution(sig, images)


# ---------------------------------------------------------------------------
# Shrinking

Slots = dict[str, object]


def _app_positions(t: Term) -> Iterator[tuple[tuple[int, ...], Term]]:
    stack: list[tuple[tuple[int, ...], Term]] = [((), t)]
    while stack:
        path, node = stack.pop()
        if type(node) is App:
            yield path, node
            for i in range(len(node.args) - 1, -1, -1):
                stack.append((path + (i,), node.args[i]))


def _replace_path(t: Term, path: tuple[int, ...], replacement: Term) -> Term:
    if not path:
        return replacement
    spine: list[App] = [t]  # type: ignore[list-item]
    for i in path[:-1]:
        spine.append(spine[-1].args[i])  # type: ignore[union-attr]
    result = replacement
    for node, i in zip(reversed(spine), reversed(path)):
        args = list(node.args)
        args[i] = result
        result = App(node.symbol, tuple(args))
    return result


def _term_candidates(t: Term) -> Iterator[Term]:
    """Strictly smaller variants of ``t``: hoisted children first, then each
    application subtree collapsed to one of its own variables."""
    if type(t) is Var:
        return
    yield from t.args  # type: ignore[union-attr]
    for path, node in _app_positions(t):
        yield _replace_path(t, path, Var(min(variables(node))))


def _hyp_candidates(h: Hypersubstitution) -> Iterator[Hypersubstitution]:
    for name in h.signature.symbols:
        for candidate in _term_candidates(h.assignment[name]):
            images = dict(h.assignment)
            images[name] = candidate
            yield Hypersubstitution(h.signature, images)


def _candidates(value: object) -> Iterator[object]:
    if isinstance(value, Hypersubstitution):
        yield from _hyp_candidates(value)
    else:
        yield from _term_candidates(value)  # type: ignore[arg-type]


def _greedy_shrink(slots: Slots, fails: Callable[[Slots], bool]) -> Slots:
    # Every accepted candidate strictly reduces total node count, so this
    # terminates.
    improved = True
    while improved:
        improved = False
        for key in slots:
            for candidate in _candidates(slots[key]):
                trial = dict(slots)
                trial[key] = candidate
                if fails(trial):
                    slots = trial
                    improved = True
                    break
            if improved:
                break
    return slots


# ---------------------------------------------------------------------------
# Trial runners

Measure = Callable[[Slots], tuple[int, int]]


def _guarded(predicate: Callable[[Slots], bool]) -> Callable[[Slots], bool]:
    def run(slots: Slots) -> bool:
        try:
            return predicate(slots)
        except ValueError:
            return False

    return run


def _report(
    kind: str,
    sig: Signature,
    slots: Slots,
    fails: Callable[[Slots], bool],
    measure: Measure,
    token: str,
) -> Discrepancy:
    slots = _greedy_shrink(slots, fails)
    predicted, actual = measure(slots)
    inputs = {"signature": render_signature(sig)}
    for key, value in slots.items():
        if isinstance(value, Hypersubstitution):
            inputs[key] = render_hyp(value)
        else:
            inputs[key] = render_term(value)  # type: ignore[arg-type]
    return Discrepancy(kind=kind, inputs=inputs, predicted=predicted, actual=actual, seed_state=token)


def _maybe_report(
    kind: str,
    sig: Signature,
    slots: Slots,
    measure: Measure,
    token: str,
    valid: Callable[[Slots], bool] | None = None,
) -> Discrepancy | None:
    # The generated trial itself is measured unguarded: if a generator ever
    # produces inputs a predictor rejects, that is a bug worth a loud error,
    # not a silently passing trial.
    if valid is not None and not valid(slots):
        raise RuntimeError(f"{kind}: generator produced an invalid trial")
    predicted, actual = measure(slots)
    if predicted == actual:
        return None

    def mismatch(sl: Slots) -> bool:
        if valid is not None and not valid(sl):
            return False
        p, a = measure(sl)
        return p != a

    return _report(kind, sig, slots, _guarded(mismatch), measure, token)


def _run_thm23(cfg: GenConfig, sig: Signature, rng: random.Random, token: str):
    n = sig.common_arity()
    assert n is not None
    slots: Slots = {"s": gen_full_term(cfg, sig, rng, depth=rng.randint(1, max(1, cfg.max_depth)))}
    for j in range(1, n + 1):
        slots[f"t{j}"] = gen_term(cfg, sig, rng)

    def measure(sl: Slots) -> tuple[int, int]:
        s = sl["s"]
        ts = [sl[f"t{j}"] for j in range(1, n + 1)]
        return predict_depth_full(s, ts, sig), depth(superpose(s, ts, n))

    return _maybe_report("thm2.3", sig, slots, measure, token)


def _run_thm33(cfg: GenConfig, sig: Signature, rng: random.Random, token: str):
    n = cfg.var_bound
    slots: Slots = {"s": gen_term(cfg, sig, rng)}
    for j in range(1, n + 1):
        slots[f"t{j}"] = gen_term(cfg, sig, rng)

    def measure(sl: Slots) -> tuple[int, int]:
        s = sl["s"]
        ts = [sl[f"t{j}"] for j in range(1, n + 1)]
        return predict_depth_general(s, ts, n), depth(superpose(s, ts, n))

    return _maybe_report("thm3.3", sig, slots, measure, token)


def _run_cor45(cfg: GenConfig, sig: Signature, rng: random.Random, token: str):
    slots: Slots = {
        "sigma": gen_full_hyp(cfg, sig, rng),
        "t": gen_full_term(cfg, sig, rng, depth=rng.randint(1, max(1, cfg.max_depth))),
    }

    def measure(sl: Slots) -> tuple[int, int]:
        h, t = sl["sigma"], sl["t"]
        return predict_depth_full_hyp(h, t), depth(apply_hyp(h, t))

    return _maybe_report("cor4.5", sig, slots, measure, token)


def _run_cor46(cfg: GenConfig, sig: Signature, rng: random.Random, token: str):
    slots: Slots = {
        "sigma1": gen_full_hyp(cfg, sig, rng),
        "sigma2": gen_full_hyp(cfg, sig, rng),
    }

    def valid(sl: Slots) -> bool:
        return is_full_hyp(sl["sigma1"]) and is_full_hyp(sl["sigma2"])

    def measure(sl: Slots) -> tuple[int, int]:
        h1, h2 = sl["sigma1"], sl["sigma2"]
        return hyp_depth(h1) * hyp_depth(h2), hyp_depth(compose_hyp(h1, h2))

    return _maybe_report("cor4.6", sig, slots, measure, token, valid=valid)


def _run_thm51(cfg: GenConfig, sig: Signature, rng: random.Random, token: str):
    slots: Slots = {"sigma": gen_hyp(cfg, sig, rng), "t": gen_term(cfg, sig, rng)}

    def measure(sl: Slots) -> tuple[int, int]:
        h, t = sl["sigma"], sl["t"]
        return predict_depth_hyp(h, t), depth(apply_hyp(h, t))

    return _maybe_report("thm5.1", sig, slots, measure, token)


def _run_lemma22(cfg: GenConfig, sig: Signature, rng: random.Random, token: str):
    # Full terms can use up to max-arity-many variables, so the composition
    # arity must cover that regardless of cfg.var_bound.
    n = max(sig.symbols.values())
    d = max(1, cfg.max_depth)
    slots: Slots = {"s": gen_full_term(cfg, sig, rng, depth=rng.randint(1, d))}
    for j in range(1, n + 1):
        slots[f"t{j}"] = gen_full_term(cfg, sig, rng, depth=rng.randint(1, d))

    def valid(sl: Slots) -> bool:
        return all(is_full(sl[k]) for k in sl)

    def measure(sl: Slots) -> tuple[int, int]:
        s = sl["s"]
        ts = [sl[f"t{j}"] for j in range(1, n + 1)]
        return 1, int(is_full(superpose(s, ts, n)))

    return _maybe_report("lemma2.2", sig, slots, measure, token, valid=valid)


def _run_lemma42(cfg: GenConfig, sig: Signature, rng: random.Random, token: str):
    slots: Slots = {
        "sigma1": gen_full_hyp(cfg, sig, rng),
        "sigma2": gen_full_hyp(cfg, sig, rng),
    }

    def valid(sl: Slots) -> bool:
        return is_full_hyp(sl["sigma1"]) and is_full_hyp(sl["sigma2"])

    def measure(sl: Slots) -> tuple[int, int]:
        return 1, int(is_full_hyp(compose_hyp(sl["sigma1"], sl["sigma2"])))

    return _maybe_report("lemma4.2", sig, slots, measure, token, valid=valid)


_RUNNERS = {
    "thm2.3": _run_thm23,
    "thm3.3": _run_thm33,
    "cor4.5": _run_cor45,
    "cor4.6": _run_cor46,
    "thm5.1": _run_thm51,
    "lemma2.2": _run_lemma22,
    "lemma4.2": _run_lemma42,
}


def signature_supports(kind: str, sig: Signature) -> bool:
    """Whether ``sig`` has the shape a check requires."""
    if kind == "thm2.3":
        return sig.common_arity() is not None
    if kind in ("cor4.5", "cor4.6"):
        return len(sig.symbols) == 1
    return True


def _require_signature_shape(kind: str, sig: Signature) -> None:
    if kind == "thm2.3" and sig.common_arity() is None:
        raise ValueError("thm2.3 needs a signature whose symbols share one arity")
    if kind in ("cor4.5", "cor4.6") and len(sig.symbols) != 1:
        raise ValueError(f"{kind} needs a one-symbol signature")


def check_theorem(
    kind: str, trials: int, cfg: GenConfig, sig: Signature
) -> list[Discrepancy]:
    """Run ``trials`` independent random cases of one named law.

    Every failing case is greedily shrunk before being reported; an empty
    list means the law held on every trial.  Identical arguments give an
    identical result list.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown check {kind!r}; pick one of: {', '.join(KINDS)}")
    if not isinstance(trials, int) or trials < 1:
        raise ValueError("trials must be an integer >= 1")
    _require_signature_shape(kind, sig)
    runner = _RUNNERS[kind]
    found: list[Discrepancy] = []
    for trial in range(trials):
        rng = trial_stream(cfg.seed, trial)
        disc = runner(cfg, sig, rng, f"{cfg.seed}:{trial}")
        if disc is not None:
            found.append(disc)
    return found
