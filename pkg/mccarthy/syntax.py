from __future__ import annotations

import re
from typing import Dict, List, Optional, Tuple

from lark import Lark, Transformer
from lark.exceptions import UnexpectedInput

from .errors import DefinitionError, ResolutionError, TermSyntaxError
from .terms import (
    ALIASES,
    LIBRARY,
    App,
    BotTag,
    Const,
    DefEnv,
    Lam,
    Ref,
    Term,
    Var,
    lam,
    rebuild,
    unwind,
)

TERM_GRAMMAR = r"""
?start: term

?term: abs
     | apply
     | apply abs            -> app

?apply: atom
      | apply atom          -> app

abs: _LAMBDA NAME+ "." term

?atom: NAME                 -> var
     | REF                  -> ref
     | BOT                  -> bot
     | "(" term ")"

_LAMBDA: "\\" | "λ"
NAME: /[a-z][A-Za-z0-9_']*/
REF: /[A-ZΩΘ][A-Za-z0-9_]*/
BOT: "_|_" | "_HA" | "_IL" | "_O" | "_D" | "⊥"

COMMENT: /#[^\n]*/
%import common.WS
%ignore WS
%ignore COMMENT
"""

BOT_SPELLING: Dict[str, BotTag] = {
    "_|_": "Bot",
    "⊥": "Bot",
    "_HA": "HA",
    "_IL": "IL",
    "_O": "O",
    "_D": "D",
}
BOT_ASCII: Dict[str, str] = {"Bot": "_|_", "HA": "_HA", "IL": "_IL", "O": "_O", "D": "_D"}
BOT_UNICODE: Dict[str, str] = {"Bot": "⊥", "HA": "⊥HA", "IL": "⊥IL", "O": "⊥O", "D": "⊥D"}
REF_UNICODE: Dict[str, str] = {"OMEGA": "Ω", "THETA": "Θ"}


class _ToTerm(Transformer):
    def var(self, items):
        return Var(str(items[0]))

    def ref(self, items):
        name = str(items[0])
        return Ref(ALIASES.get(name, name))

    def bot(self, items):
        return Const(BOT_SPELLING[str(items[0])])

    def app(self, items):
        return App(items[0], items[1])

    def abs(self, items):
        names = [str(tok) for tok in items[:-1]]
        return lam(*names, items[-1])


_TERM_PARSER = Lark(TERM_GRAMMAR, parser="lalr", transformer=_ToTerm())


def parse_term(text: str, env: Optional[DefEnv] = LIBRARY) -> Term:
    """
    Parse the ASCII/Unicode term syntax. With an env, every Ref must resolve.
    """
    try:
        t = _TERM_PARSER.parse(text)
    except UnexpectedInput as e:
        raise TermSyntaxError(f"Cannot parse term {text!r}", e.line, e.column) from None
    if env is not None:
        for name in sorted(t.refs):
            if name not in env:
                raise ResolutionError(name)
    return t


# =========================
# Scripts: "Name = term" lines plus an optional query
# =========================
_DEF_RE = re.compile(r"^\s*([A-Z][A-Za-z0-9_]*)\s*=(?!=)\s*(.+?)\s*$")


def parse_script(text: str, env: DefEnv = LIBRARY) -> Tuple[DefEnv, Optional[Term]]:
    query: Optional[Term] = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if query is not None:
            raise DefinitionError(f"line {lineno}: nothing may follow the query")
        m = _DEF_RE.match(line)
        if m:
            name, body = m.group(1), m.group(2)
            try:
                term = parse_term(body, env=None)
            except TermSyntaxError as e:
                raise TermSyntaxError(f"line {lineno}: {e}") from None
            env = env.define(name, term)
        else:
            query = parse_term(line, env)
    return env, query


# =========================
# Printing
# =========================
def format_term(t: Term, unicode: bool = False, mark: Optional[str] = None) -> str:
    """
    Print in the parser's syntax. `mark` is a redex path; that subterm is
    wrapped in square brackets.
    """
    return _fmt(t, "", mark, unicode)


def _atom(t: Term, path: str, mark: Optional[str], unicode: bool) -> str:
    s = _fmt(t, path, mark, unicode)
    if isinstance(t, (Var, Ref, Const)) or path == mark:
        return s
    return f"({s})"


def _fmt(t: Term, path: str, mark: Optional[str], unicode: bool) -> str:
    if mark is not None and path == mark:
        return "[" + _fmt(t, path + "#", None, unicode) + "]"
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Ref):
        return REF_UNICODE.get(t.name, t.name) if unicode else t.name
    if isinstance(t, Const):
        return (BOT_UNICODE if unicode else BOT_ASCII)[t.tag]
    if isinstance(t, Lam):
        names: List[str] = []
        body: Term = t
        while isinstance(body, Lam):
            names.append(body.binder)
            body = body.body
        inner = _fmt(body, path + "b" * len(names), mark, unicode)
        return ("λ" if unicode else "\\") + " ".join(names) + ". " + inner
    head, args = unwind(t)
    n = len(args)
    cut = 0
    if mark is not None and mark.startswith(path):
        rest = mark[len(path):]
        if rest and set(rest) == {"f"} and len(rest) < n:
            cut = n - len(rest)
    if cut:
        first = "[" + _fmt(rebuild(head, args[:cut]), path + "#", None, unicode) + "]"
        parts = [first]
        start = cut
    else:
        parts = [_atom(head, path + "f" * n, mark, unicode) if not isinstance(head, Lam)
                 else "(" + _fmt(head, path + "f" * n, mark, unicode) + ")"]
        start = 0
    for i in range(start, n):
        parts.append(_atom(args[i], path + "f" * (n - 1 - i) + "a", mark, unicode))
    return " ".join(parts)
