"""The toy token language: closed vocabulary, parser critic, error taxonomy.

A program is a flat sequence of lexemes drawn from a closed 42-token
vocabulary.  Structure comes from three structural tokens mirroring a
tokenized indentation-sensitive language: ``<NL>`` ends a logical line,
``<I>`` indents by one unit, ``<D>`` dedents by one unit.  Newlines inside
an open bracket are soft (continuation), and indent tokens are only legal
at the start of a logical line.

The critic judges a sequence good or bad, and on bad sequences reports the
first violation in token order together with a category from a fixed
taxonomy.  Three rules are checked independently and the earliest violation
wins (ties broken by rule order):

  R1  brackets: round/square brackets nest and match.
  R2  layout: indent/dedent placement and block structure.
  R3  grammar: each logical line parses as a statement.

Verdicts are pure functions of the input; equal sequences always produce
equal critiques.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional


class Token(NamedTuple):
    kind: str
    lexeme: str


_KEYWORDS = ("def", "if", "else", "for", "while", "return", "pass", "raise", "in")
_IDENTIFIERS = ("a", "b", "c", "d", "e", "f", "g", "x", "y", "z", "foo", "bar")
_LITERALS = ("0", "1", "2", '"s"')
_OPERATORS = ("=", "==", "+", "-", "*", "<", ">")
_PUNCTUATION = ("(", ")", "[", "]", ",", ":", ".")
_STRUCTURAL = ("<NL>", "<I>", "<D>")

NL, INDENT, DEDENT = _STRUCTURAL

HEADER_KEYWORDS = frozenset({"def", "if", "else", "for", "while"})
IDENTIFIERS = frozenset(_IDENTIFIERS)
LITERALS = frozenset(_LITERALS)
BINARY_OPS = frozenset({"==", "+", "-", "*", "<", ">"})

MAX_SEQ_LEN = 256


def vocabulary() -> list[Token]:
    """The closed vocabulary in canonical order (`def` first, `<D>` last)."""
    out = []
    for kind, lexemes in (
        ("keyword", _KEYWORDS),
        ("identifier", _IDENTIFIERS),
        ("literal", _LITERALS),
        ("operator", _OPERATORS),
        ("punctuation", _PUNCTUATION),
        ("structural", _STRUCTURAL),
    ):
        out.extend(Token(kind, lex) for lex in lexemes)
    return out


_VOCAB = vocabulary()
VOCAB_LEXEMES: tuple[str, ...] = tuple(t.lexeme for t in _VOCAB)
_VOCAB_SET = frozenset(VOCAB_LEXEMES)
KIND_OF = {t.lexeme: t.kind for t in _VOCAB}
_CANON = {lex: lex for lex in VOCAB_LEXEMES}

_ATOM_START = IDENTIFIERS | LITERALS | {"(", "["}


class OutOfVocabularyError(ValueError):
    """A sequence contains a lexeme outside the closed vocabulary.

    Distinct from a bad verdict: this signals pipeline corruption, not a
    repairable program.
    """


class ErrorCategory(NamedTuple):
    major: str
    minor: str


UNBALANCED = "UnbalancedParentheses"
INDENTATION = "IndentationError"
INVALID = "InvalidSyntax"

MINOR_TO_MAJOR = {
    "unclosed-left-nested": UNBALANCED,
    "unclosed-left-flat": UNBALANCED,
    "redundant-right": UNBALANCED,
    "expected-indent": INDENTATION,
    "unexpected-indent": INDENTATION,
    "missing-colon": INVALID,
    "missing-comma-single-line": INVALID,
    "missing-comma-multi-line": INVALID,
    "redundant-comma": INVALID,
    "missing-paren-pair": INVALID,
    "redundant-paren-pair": INVALID,
    "other": INVALID,
}

ALL_MINORS = tuple(MINOR_TO_MAJOR)


@dataclass(frozen=True)
class Critique:
    verdict: int  # 1 good, 0 bad
    category: Optional[ErrorCategory] = None
    position: Optional[int] = None

    @property
    def good(self) -> bool:
        return self.verdict == 1


_GOOD = Critique(1)


def seq_from_text(text: str) -> tuple[str, ...]:
    """Parse the one-line space-separated text form into a token sequence."""
    parts = text.split()
    if len(parts) > MAX_SEQ_LEN:
        raise ValueError(f"sequence longer than {MAX_SEQ_LEN} tokens")
    try:
        return tuple(_CANON[p] for p in parts)
    except KeyError as e:
        raise OutOfVocabularyError(f"unknown lexeme {e.args[0]!r}") from None


def seq_to_text(seq: tuple[str, ...]) -> str:
    return " ".join(seq)


# ---------------------------------------------------------------------------
# R1: bracket matching
# ---------------------------------------------------------------------------

_OPEN_FOR = {")": "(", "]": "["}


def _scan_brackets(s):
    """First bracket violation, or None.

    A closer with no matching open violates at its own index
    (redundant-right).  An open that never closes violates at the open's
    index; it is `nested` when any other bracket opens inside its region.
    """
    stack = []
    n = len(s)
    last_open_after = -1
    for i in range(n):
        t = s[i]
        if t == "(" or t == "[":
            stack.append((t, i))
            last_open_after = i
        elif t == ")" or t == "]":
            if not stack or stack[-1][0] != _OPEN_FOR[t]:
                return (i, "redundant-right")
            stack.pop()
    if stack:
        pos = stack[0][1]
        minor = "unclosed-left-nested" if last_open_after > pos else "unclosed-left-flat"
        return (pos, minor)
    return None


def _bracket_pairs(s):
    """Match map for well-nested pairs: open index -> close index."""
    stack = []
    match = {}
    for i, t in enumerate(s):
        if t == "(" or t == "[":
            stack.append((t, i))
        elif t == ")" or t == "]":
            if stack and stack[-1][0] == _OPEN_FOR[t]:
                match[stack.pop()[1]] = i
            elif stack:
                stack.pop()
    return match


# ---------------------------------------------------------------------------
# R2: layout (indent placement and block structure)
# ---------------------------------------------------------------------------


def _scan_indent(s):
    n = len(s)
    i = 0
    depth = 0
    bdepth = 0
    expect_indent = False
    while i < n:
        # structural prefix of a logical line
        if expect_indent:
            if s[i] != INDENT:
                return (i, "expected-indent")
            depth += 1
            i += 1
            if i < n and (s[i] == INDENT or s[i] == DEDENT):
                return (i, "unexpected-indent")
            expect_indent = False
        else:
            while i < n and s[i] == DEDENT:
                depth -= 1
                if depth < 0:
                    return (i, "unexpected-indent")
                i += 1
            if i < n and s[i] == INDENT:
                return (i, "unexpected-indent")
        # line content, up to a newline outside brackets
        first = last = None
        while i < n:
            t = s[i]
            if t == NL:
                if bdepth == 0:
                    break
                i += 1
                continue
            if t == INDENT or t == DEDENT:
                return (i, "unexpected-indent")
            if t == "(" or t == "[":
                bdepth += 1
            elif t == ")" or t == "]":
                if bdepth > 0:
                    bdepth -= 1
            if first is None:
                first = t
            last = t
            i += 1
        is_header = first in HEADER_KEYWORDS and last == ":"
        if i < n:
            i += 1  # the terminating <NL>
        expect_indent = is_header
    if expect_indent:
        return (n - 1, "expected-indent")
    # depth > 0 at end of input is forgiven (implicit dedents)
    return None


# ---------------------------------------------------------------------------
# R3: statement grammar
# ---------------------------------------------------------------------------


class _R3Fail(Exception):
    def __init__(self, pos, minor):
        self.pos = pos
        self.minor = minor


class _Line:
    """One logical line: non-structural lexemes with their source indices."""

    __slots__ = ("toks", "idxs", "k", "end_pos", "match", "nl_before", "n")

    def __init__(self, toks, idxs, end_pos, match, nl_before, n):
        self.toks = toks
        self.idxs = idxs
        self.k = 0
        self.end_pos = end_pos
        self.match = match
        self.nl_before = nl_before
        self.n = n

    def peek(self):
        return self.toks[self.k] if self.k < len(self.toks) else None

    def peek2(self):
        return self.toks[self.k + 1] if self.k + 1 < len(self.toks) else None

    def pos(self):
        return self.idxs[self.k] if self.k < len(self.toks) else self.end_pos

    def take(self):
        t = self.toks[self.k]
        self.k += 1
        return t

    def done(self):
        return self.k >= len(self.toks)

    def spans_nl(self, open_idx):
        close_idx = self.match.get(open_idx, self.n)
        return self.nl_before[close_idx] > self.nl_before[open_idx]

    def missing_comma(self, open_idx):
        kind = "missing-comma-multi-line" if self.spans_nl(open_idx) else "missing-comma-single-line"
        raise _R3Fail(self.pos(), kind)


def _split_lines(s):
    """Logical lines as (tokens, indices, end_pos, nl_terminated)."""
    n = len(s)
    lines = []
    toks: list = []
    idxs: list = []
    bdepth = 0
    started = False
    for i, t in enumerate(s):
        if t == NL:
            if bdepth == 0:
                lines.append((toks, idxs, i, True))
                toks, idxs, started = [], [], False
            continue
        started = True
        if t == INDENT or t == DEDENT:
            continue
        if t == "(" or t == "[":
            bdepth += 1
        elif t == ")" or t == "]":
            if bdepth > 0:
                bdepth -= 1
        toks.append(t)
        idxs.append(i)
    if toks or started:
        lines.append((toks, idxs, n - 1, False))
    return lines


def _parse_expr(line):
    """expr := atom (binop atom)*; returns (atom_count, bare_paren)."""
    bare_paren = _parse_atom(line)
    count = 1
    while line.peek() in BINARY_OPS:
        line.take()
        _parse_atom(line)
        count += 1
    return count, bare_paren


def _parse_atom(line):
    """One atom plus trailers; returns True when it is a bare `( expr )`."""
    t = line.peek()
    if t is None:
        raise _R3Fail(line.pos(), "other")
    bare_paren = False
    if t in IDENTIFIERS:
        line.take()
        if line.peek() == "(":
            open_idx = line.pos()
            line.take()
            _parse_args(line, ")", open_idx)
    elif t in LITERALS:
        line.take()
    elif t == "(":
        open_idx = line.pos()
        line.take()
        count, inner_bare = _parse_expr(line)
        nxt = line.peek()
        if nxt != ")":
            if nxt is not None and nxt in _ATOM_START:
                line.missing_comma(open_idx)
            raise _R3Fail(line.pos(), "other")
        if count == 1 and inner_bare:
            raise _R3Fail(open_idx, "redundant-paren-pair")
        line.take()
        bare_paren = True
    elif t == "[":
        open_idx = line.pos()
        line.take()
        _parse_args(line, "]", open_idx)
    else:
        raise _R3Fail(line.pos(), "redundant-comma" if t == "," else "other")
    while line.peek() == ".":
        line.take()
        if line.peek() not in IDENTIFIERS:
            raise _R3Fail(line.pos(), "other")
        line.take()
        bare_paren = False
    return bare_paren


def _parse_args(line, closer, open_idx):
    """Comma-separated exprs up to `closer`; no leading/trailing/doubled comma."""
    if line.peek() == closer:
        line.take()
        return
    while True:
        _parse_expr(line)
        t = line.peek()
        if t == ",":
            comma_pos = line.pos()
            line.take()
            if line.peek() == closer:
                raise _R3Fail(comma_pos, "redundant-comma")
            continue
        if t == closer:
            line.take()
            return
        if t is None:
            raise _R3Fail(line.pos(), "other")
        if t in _ATOM_START:
            line.missing_comma(open_idx)
        raise _R3Fail(line.pos(), "other")


def _parse_params(line, open_idx):
    if line.peek() == ")":
        line.take()
        return
    while True:
        t = line.peek()
        if t not in IDENTIFIERS:
            raise _R3Fail(line.pos(), "redundant-comma" if t == "," else "other")
        line.take()
        t = line.peek()
        if t == ",":
            comma_pos = line.pos()
            line.take()
            if line.peek() == ")":
                raise _R3Fail(comma_pos, "redundant-comma")
            continue
        if t == ")":
            line.take()
            return
        if t is None:
            raise _R3Fail(line.pos(), "other")
        if t in IDENTIFIERS:
            line.missing_comma(open_idx)
        raise _R3Fail(line.pos(), "other")


def _expect_colon(line):
    t = line.peek()
    if t == ":":
        line.take()
        return
    if t is None:
        raise _R3Fail(line.pos(), "missing-colon")
    raise _R3Fail(line.pos(), "other")


def _parse_header(line):
    kw = line.take()
    if kw == "def":
        if line.peek() not in IDENTIFIERS:
            raise _R3Fail(line.pos(), "other")
        line.take()
        if line.peek() != "(":
            raise _R3Fail(line.pos(), "missing-paren-pair")
        open_idx = line.pos()
        line.take()
        _parse_params(line, open_idx)
    elif kw == "if" or kw == "while":
        _parse_expr(line)
    elif kw == "for":
        if line.peek() not in IDENTIFIERS:
            raise _R3Fail(line.pos(), "other")
        line.take()
        if line.peek() != "in":
            raise _R3Fail(line.pos(), "other")
        line.take()
        _parse_expr(line)
    # else: nothing before the colon
    _expect_colon(line)


def _parse_simple(line):
    t = line.peek()
    if t == "return":
        line.take()
        if line.peek() is not None:
            _parse_expr(line)
    elif t == "pass":
        line.take()
    elif t == "raise":
        line.take()
        _parse_expr(line)
    elif t in IDENTIFIERS and line.peek2() == "=":
        line.take()
        line.take()
        _parse_expr(line)
    elif t in _ATOM_START:
        _parse_expr(line)
    else:
        raise _R3Fail(line.pos(), "other")


def _scan_grammar(s):
    n = len(s)
    match = _bracket_pairs(s)
    nl_before = [0] * (n + 1)
    acc = 0
    for i, t in enumerate(s):
        nl_before[i] = acc
        if t == NL:
            acc += 1
    nl_before[n] = acc

    for toks, idxs, end_pos, terminated in _split_lines(s):
        line = _Line(toks, idxs, end_pos, match, nl_before, n)
        try:
            if not toks:
                if terminated:
                    raise _R3Fail(end_pos, "other")  # blank logical line
                continue  # trailing structural run before end of input
            if toks[0] in HEADER_KEYWORDS:
                _parse_header(line)
            else:
                _parse_simple(line)
            if not line.done():
                raise _R3Fail(line.pos(), "other")
        except _R3Fail as f:
            return (f.pos, f.minor)
    return None


# ---------------------------------------------------------------------------
# the critic
# ---------------------------------------------------------------------------


def critic(s: tuple[str, ...]) -> Critique:
    """Judge a token sequence; empty sequences are good.

    Raises OutOfVocabularyError for sequences with unknown lexemes.
    """
    for t in s:
        if t not in _VOCAB_SET:
            raise OutOfVocabularyError(f"unknown lexeme {t!r}")
    best = None
    for rank, violation in enumerate((_scan_brackets(s), _scan_indent(s), _scan_grammar(s))):
        if violation is not None:
            key = (violation[0], rank)
            if best is None or key < best[0]:
                best = (key, violation[1])
    if best is None:
        return _GOOD
    minor = best[1]
    return Critique(0, ErrorCategory(MINOR_TO_MAJOR[minor], minor), best[0][0])
