"""Text formats for signatures, terms and hypersubstitutions.

Grammar (ASCII is significant; whitespace between tokens is ignored):

    term      :=  variable | symbol "(" term ("," term)* ")"
    variable  :=  "x" nonzero-digit digit*
    symbol    :=  letter (letter | digit | "_")*     -- never "x" + digits

Signature files hold one ``name/arity`` mapping per line; hypersubstitution
files one ``name -> term`` per line.  Blank lines and ``#`` comments are
ignored in both.  Rendering is canonical (no whitespace), so rendered text
round-trips byte-exactly and is suitable for golden files.

All rejections raise :class:`ParseError` carrying a byte-offset
:class:`SourceSpan` into the original input.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .hypersub import Hypersubstitution
from .terms import App, Signature, Term, Var, arity_bound

__all__ = [
    "ParseError",
    "SourceSpan",
    "parse_hyp",
    "parse_signature",
    "parse_term",
    "render_hyp",
    "render_signature",
    "render_term",
]

_IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
_SYMBOL_NAME = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")
_RESERVED_NAME = re.compile(r"x[0-9]+\Z")
_WHITESPACE = " \t\r\n"


@dataclass(frozen=True)
class SourceSpan:
    """Byte range [start, end) into the original input text."""

    start: int
    end: int

    def __post_init__(self) -> None:
        if self.start < 0 or self.end < self.start:
            raise ValueError(f"invalid span {self.start}..{self.end}")


class ParseError(ValueError):
    """Input rejected by one of the text formats; carries a byte span."""

    def __init__(self, message: str, span: SourceSpan):
        super().__init__(f"{message} (bytes {span.start}..{span.end})")
        self.message = message
        self.span = span


def _byte_span(text: str, start: int, end: int) -> SourceSpan:
    # Positions are tracked in characters while parsing; spans report bytes.
    return SourceSpan(len(text[:start].encode()), len(text[:end].encode()))


def _skip_ws(text: str, pos: int) -> int:
    while pos < len(text) and text[pos] in _WHITESPACE:
        pos += 1
    return pos


def _parse_term_from(text: str, pos: int, sig: Signature) -> tuple[Term, int]:
    """Parse one term starting at ``pos``; return it and the next position.

    Runs on an explicit frame stack, so arbitrarily deep input cannot
    overflow the interpreter stack.
    """
    frames: list[tuple[str, int, int, list[Term]]] = []  # symbol, start, arity, args
    while True:
        pos = _skip_ws(text, pos)
        m = _IDENT.match(text, pos)
        if not m:
            raise ParseError(
                "expected a variable or an operation symbol",
                _byte_span(text, pos, min(pos + 1, len(text))),
            )
        token = m.group()
        start, pos = pos, m.end()
        if len(token) > 1 and token[0] == "x" and token[1:].isdigit():
            if token[1] == "0":
                raise ParseError(
                    f"malformed variable {token!r}: index must not start with 0",
                    _byte_span(text, start, pos),
                )
            term: Term = Var(int(token[1:]))
        else:
            arity = sig.symbols.get(token)
            if arity is None:
                raise ParseError(f"unknown operation symbol {token!r}", _byte_span(text, start, pos))
            pos = _skip_ws(text, pos)
            if pos >= len(text) or text[pos] != "(":
                raise ParseError(
                    f"expected '(' after symbol {token!r}",
                    _byte_span(text, pos, min(pos + 1, len(text))),
                )
            frames.append((token, start, arity, []))
            pos += 1
            continue
        # one term finished: fold it into the enclosing applications
        while True:
            if not frames:
                return term, pos
            symbol, sym_start, arity, args = frames[-1]
            args.append(term)
            pos = _skip_ws(text, pos)
            if pos < len(text) and text[pos] == ",":
                if len(args) >= arity:
                    raise ParseError(
                        f"too many arguments for {symbol!r} (arity {arity})",
                        _byte_span(text, sym_start, pos + 1),
                    )
                pos += 1
                break
            if pos < len(text) and text[pos] == ")":
                pos += 1
                if len(args) != arity:
                    raise ParseError(
                        f"{symbol!r} is {arity}-ary but got {len(args)} argument(s)",
                        _byte_span(text, sym_start, pos),
                    )
                frames.pop()
                term = App(symbol, tuple(args))
                continue
            raise ParseError("expected ',' or ')'", _byte_span(text, pos, min(pos + 1, len(text))))


def parse_term(text: str, sig: Signature) -> Term:
    """Parse a single term; the whole input must be consumed."""
    term, pos = _parse_term_from(text, 0, sig)
    pos = _skip_ws(text, pos)
    if pos != len(text):
        raise ParseError("trailing input after term", _byte_span(text, pos, len(text)))
    return term


def _logical_lines(text: str):
    """Comment-stripped lines with their character offsets into ``text``."""
    offset = 0
    for raw in text.split("\n"):
        line = raw
        cut = line.find("#")
        if cut != -1:
            line = line[:cut]
        yield line, offset
        offset += len(raw) + 1


def parse_signature(text: str) -> Signature:
    """Parse ``name/arity`` lines into a Signature, preserving order."""
    table: dict[str, int] = {}
    for line, offset in _logical_lines(text):
        stripped = line.strip()
        if not stripped:
            continue
        lead = len(line) - len(line.lstrip())
        span = _byte_span(text, offset + lead, offset + lead + len(stripped))
        name, sep, arity_text = stripped.partition("/")
        name = name.strip()
        arity_text = arity_text.strip()
        if not sep:
            raise ParseError("expected 'name/arity'", span)
        if not _SYMBOL_NAME.match(name):
            raise ParseError(f"invalid operation symbol name {name!r}", span)
        if _RESERVED_NAME.match(name):
            raise ParseError(f"symbol name {name!r} is reserved for variables", span)
        if name in table:
            raise ParseError(f"duplicate operation symbol {name!r}", span)
        if not arity_text.isdigit():
            raise ParseError(f"arity of {name!r} must be a positive integer", span)
        arity = int(arity_text)
        if arity < 1:
            raise ParseError(f"arity of {name!r} must be >= 1", span)
        table[name] = arity
    if not table:
        end = len(text.encode())
        raise ParseError("signature declares no operation symbols", SourceSpan(end, end))
    return Signature(table)


def parse_hyp(text: str, sig: Signature) -> Hypersubstitution:
    """Parse ``name -> term`` lines into a total hypersubstitution over ``sig``."""
    images: dict[str, Term] = {}
    for line, offset in _logical_lines(text):
        stripped = line.strip()
        if not stripped:
            continue
        lead = len(line) - len(line.lstrip())
        span = _byte_span(text, offset + lead, offset + lead + len(stripped))
        name_part, sep, _ = line.partition("->")
        if not sep:
            raise ParseError("expected 'symbol -> term'", span)
        name = name_part.strip()
        if name not in sig.symbols:
            raise ParseError(f"unknown operation symbol {name!r}", span)
        if name in images:
            raise ParseError(f"duplicate image for {name!r}", span)
        term_start = offset + len(name_part) + 2
        try:
            image = parse_term(line[len(name_part) + 2 :], sig)
        except ParseError as exc:
            base = len(text[:term_start].encode())
            raise ParseError(
                exc.message, SourceSpan(base + exc.span.start, base + exc.span.end)
            ) from None
        bound = arity_bound(image)
        arity = sig.symbols[name]
        if bound > arity:
            raise ParseError(
                f"image of {name!r} uses x{bound} but {name!r} is {arity}-ary",
                _byte_span(text, term_start, offset + len(line)),
            )
        images[name] = image
    missing = [name for name in sig.symbols if name not in images]
    if missing:
        end = len(text.encode())
        raise ParseError(f"missing image(s) for: {', '.join(missing)}", SourceSpan(end, end))
    return Hypersubstitution(sig, images)


def render_term(t: Term) -> str:
    """Canonical text for ``t``: no whitespace, comma-separated arguments.

    ``parse_term(render_term(t), sig) == t`` for every term over ``sig``.
    """
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


def render_signature(sig: Signature) -> str:
    return "\n".join(f"{name}/{arity}" for name, arity in sig.symbols.items())


def render_hyp(h: Hypersubstitution) -> str:
    return "\n".join(
        f"{name} -> {render_term(h.assignment[name])}" for name in h.signature.symbols
    )
