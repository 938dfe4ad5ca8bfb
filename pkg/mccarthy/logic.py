from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Literal, Mapping, Optional, Sequence, Tuple, Union

from .classify import DEFAULT_CLASSIFY_DEPTH, Solvable, Unknown, Unsolvable, classify
from .errors import DecodeError, EncodingError, UnknownCellError
from .reduce import DEFAULT_FUEL, CycleDetected, FuelExhausted, normalize
from .syntax import format_term
from .terms import LIBRARY, App, DefEnv, Ref, Term, Var, alpha_eq, app, lam

logger = logging.getLogger(__name__)

Arity = Literal[2, 3, 4, 5]
Style = Literal["church", "lambda-i"]
ValueName = Literal["T", "F", "Bot", "HA", "D", "IL", "O"]

ARITIES: Tuple[int, ...] = (2, 3, 4, 5)
STYLES: Tuple[str, ...] = ("church", "lambda-i")

# Enumeration order T < F < HA < D/IL < O.
DOMAINS: Dict[int, Tuple[str, ...]] = {
    2: ("T", "F"),
    3: ("T", "F", "Bot"),
    4: ("T", "F", "HA", "D"),
    5: ("T", "F", "HA", "IL", "O"),
}

BOOLEANS: Dict[str, Tuple[str, str]] = {
    "church": ("T", "F"),
    "lambda-i": ("T_I", "F_I"),
}

LABELS: Dict[str, str] = {"T": "T", "F": "F", "Bot": "_|_", "HA": "_HA", "D": "_D", "IL": "_IL", "O": "_O"}
UNICODE_LABELS: Dict[str, str] = {"T": "T", "F": "F", "Bot": "⊥", "HA": "⊥HA", "D": "⊥D", "IL": "⊥IL", "O": "⊥O"}


# =========================
# Truth values + projections
# =========================
@dataclass(frozen=True)
class TruthValue:
    arity: int
    value: str

    def __post_init__(self) -> None:
        if self.arity not in DOMAINS:
            raise ValueError(f"Bad arity: {self.arity!r}")
        if self.value not in DOMAINS[self.arity]:
            raise ValueError(f"{self.value!r} is not a value of the {self.arity}-valued logic")

    def project(self, arity: int) -> "TruthValue":
        return TruthValue(arity, project_value(self.value, self.arity, arity))

    def __str__(self) -> str:
        return LABELS[self.value]


def project_value(value: str, src: int, dst: int) -> str:
    """
    5→4: IL, O ↦ D. Anything→3: every bottom ↦ Bot. 3→2 is undefined on Bot.
    """
    if dst == src:
        return value
    if dst > src:
        raise ValueError(f"Cannot project from arity {src} up to {dst}")
    if value in ("T", "F"):
        return value
    if dst == 4:
        return "HA" if value == "HA" else "D"
    if dst == 3:
        return "Bot"
    raise DecodeError(f"{LABELS[value]} has no Boolean projection")


# =========================
# Encodings + connectives
# =========================
# Representatives of the bottom classes: Ω is head active, Θ(λx.xI) has an
# ever growing left spine, ΘK keeps emitting abstractions.
def _il_rep() -> Term:
    x = Var("x")
    return App(Ref("THETA"), lam("x", App(x, Ref("I"))))


REPRESENTATIVES: Dict[str, Callable[[], Term]] = {
    "Bot": lambda: Ref("OMEGA"),
    "HA": lambda: Ref("OMEGA"),
    "D": _il_rep,
    "IL": _il_rep,
    "O": lambda: App(Ref("THETA"), Ref("K")),
}


def _check_style(style: str) -> None:
    if style not in BOOLEANS:
        raise ValueError(f"Bad style: {style!r}")


def true_term(style: Style = "church") -> Term:
    _check_style(style)
    return Ref(BOOLEANS[style][0])


def false_term(style: Style = "church") -> Term:
    _check_style(style)
    return Ref(BOOLEANS[style][1])


def encode_value(v: Union[TruthValue, str], style: Style = "church") -> Term:
    name = v.value if isinstance(v, TruthValue) else v
    _check_style(style)
    if name == "T":
        return true_term(style)
    if name == "F":
        return false_term(style)
    if name not in REPRESENTATIVES:
        raise ValueError(f"Bad truth value: {name!r}")
    if style == "lambda-i" and name == "O":
        raise EncodingError("_O has no λI representative (K erases its second argument)")
    return REPRESENTATIVES[name]()


def ite(b: Term, m: Term, n: Term) -> Term:
    return app(b, m, n)


def neg(m: Term, style: Style = "church") -> Term:
    return ite(m, false_term(style), true_term(style))


def conj(m: Term, n: Term, style: Style = "church") -> Term:
    return ite(m, n, m)


def disj(m: Term, n: Term, style: Style = "church") -> Term:
    return ite(m, m, n)


def impl(m: Term, n: Term, style: Style = "church") -> Term:
    return ite(m, n, true_term(style))


CONNECTIVES: Dict[str, Tuple[int, Callable[..., Term]]] = {
    "neg": (1, neg),
    "conj": (2, conj),
    "disj": (2, disj),
    "impl": (2, impl),
}

SYMBOLS: Dict[str, str] = {"neg": "~", "conj": "/\\", "disj": "\\/", "impl": "->"}


def apply_connective(name: str, args: Sequence[Term], style: Style = "church") -> Term:
    try:
        n, build = CONNECTIVES[name]
    except KeyError:
        raise ValueError(f"Bad connective: {name!r}") from None
    if len(args) != n:
        raise ValueError(f"{name} takes {n} argument(s), got {len(args)}")
    return build(*args, style=style)


# =========================
# Decoding
# =========================
def decode(
    t: Term,
    arity: int = 3,
    style: Style = "church",
    fuel: int = DEFAULT_FUEL,
    depth: int = DEFAULT_CLASSIFY_DEPTH,
    env: DefEnv = LIBRARY,
) -> Union[TruthValue, Unknown]:
    """
    Unsolvable terms decode to their class, projected to `arity`; solvable
    ones must normalize to the style's T or F.
    """
    if arity not in DOMAINS:
        raise ValueError(f"Bad arity: {arity!r}")
    v = classify(t, fuel, depth, env)
    if isinstance(v, Unknown):
        return v
    if isinstance(v, Unsolvable):
        if arity == 2:
            raise DecodeError(f"not a Boolean: the term is unsolvable ({v.category})")
        return TruthValue(5, v.category).project(arity)
    assert isinstance(v, Solvable)
    out = normalize(t, fuel, env)
    if isinstance(out, FuelExhausted):
        return Unknown("FuelExhausted", out.steps)
    if isinstance(out, CycleDetected):
        raise DecodeError("not a truth value: solvable term without a normal form")
    if alpha_eq(out.term, true_term(style), env):
        return TruthValue(arity, "T")
    if alpha_eq(out.term, false_term(style), env):
        return TruthValue(arity, "F")
    raise DecodeError(f"not a truth value: normal form {format_term(out.term)}")


# =========================
# Truth tables
# =========================
@dataclass(frozen=True)
class TruthTable:
    connective: str
    arity: int
    style: str
    cells: Mapping[Tuple[str, ...], str] = field(default_factory=dict)

    def get(self, *args: str) -> str:
        return self.cells[tuple(args)]

    @property
    def unary(self) -> bool:
        return CONNECTIVES[self.connective][0] == 1


def truth_table(
    connective: str,
    arity: int = 3,
    style: Style = "church",
    fuel: int = DEFAULT_FUEL,
    env: DefEnv = LIBRARY,
) -> TruthTable:
    """
    Every cell is computed by encoding, applying the connective and decoding.
    """
    if connective not in CONNECTIVES:
        raise ValueError(f"Bad connective: {connective!r}")
    n = CONNECTIVES[connective][0]
    domain = DOMAINS[arity]
    cells: Dict[Tuple[str, ...], str] = {}
    for combo in itertools.product(domain, repeat=n):
        term = apply_connective(connective, [encode_value(x, style) for x in combo], style)
        out = decode(term, arity, style, fuel, env=env)
        if isinstance(out, Unknown):
            raise UnknownCellError(f"{connective}{combo} at arity {arity} is Unknown ({out.reason})", combo)
        cells[combo] = out.value
    logger.debug("table %s arity %d style %s: %d cells", connective, arity, style, len(cells))
    return TruthTable(connective, arity, style, cells)


def project_table(table: TruthTable, arity: int) -> Dict[Tuple[str, ...], str]:
    """
    Cell-wise projection keyed by projected arguments. Two cells that project
    to the same arguments but different values raise ValueError.
    """
    out: Dict[Tuple[str, ...], str] = {}
    for combo, value in table.cells.items():
        key = tuple(project_value(x, table.arity, arity) for x in combo)
        val = project_value(value, table.arity, arity)
        if out.setdefault(key, val) != val:
            raise ValueError(f"projection of {table.connective} to arity {arity} is not a function at {key}")
    return out


def render_table(table: TruthTable, unicode: bool = False) -> str:
    labels = UNICODE_LABELS if unicode else LABELS
    domain = DOMAINS[table.arity]
    sym = SYMBOLS[table.connective]
    width = max(len(labels[v]) for v in domain) + 1
    lines: List[str] = []
    if table.unary:
        header = f"{'x':<{width}}| {sym}x"
        lines.append(header)
        lines.append("-" * len(header))
        for v in domain:
            lines.append(f"{labels[v]:<{width}}| {labels[table.get(v)]}")
        return "\n".join(lines)
    header = f"{sym:<{width}}|" + "".join(f"{labels[v]:>{width}}" for v in domain)
    lines.append(header)
    lines.append("-" * len(header))
    for x in domain:
        row = "".join(f"{labels[table.get(x, y)]:>{width}}" for y in domain)
        lines.append(f"{labels[x]:<{width}}|{row}")
    return "\n".join(lines)


def table_to_json(table: TruthTable) -> dict:
    return {
        "connective": table.connective,
        "arity": table.arity,
        "style": table.style,
        "cells": [{"args": list(k), "value": v} for k, v in table.cells.items()],
    }


# =========================
# Published tables (comparison only)
# =========================
# Binary rows list the results for the right argument in domain order.
REFERENCE_TABLES: Dict[Tuple[str, int], Dict[str, Union[str, Tuple[str, ...]]]] = {
    ("neg", 2): {"T": "F", "F": "T"},
    ("conj", 2): {"T": ("T", "F"), "F": ("F", "F")},
    ("disj", 2): {"T": ("T", "T"), "F": ("T", "F")},
    ("impl", 2): {"T": ("T", "F"), "F": ("T", "T")},
    ("neg", 3): {"T": "F", "F": "T", "Bot": "Bot"},
    ("conj", 3): {"T": ("T", "F", "Bot"), "F": ("F", "F", "F"), "Bot": ("Bot", "Bot", "Bot")},
    ("disj", 3): {"T": ("T", "T", "T"), "F": ("T", "F", "Bot"), "Bot": ("Bot", "Bot", "Bot")},
    ("impl", 3): {"T": ("T", "F", "Bot"), "F": ("T", "T", "T"), "Bot": ("Bot", "Bot", "Bot")},
    ("neg", 4): {"T": "F", "F": "T", "HA": "HA", "D": "D"},
    ("conj", 4): {
        "T": ("T", "F", "HA", "IL"),  # printed as _IL
        "F": ("F", "F", "F", "F"),
        "HA": ("HA", "HA", "HA", "HA"),
        "D": ("D", "D", "D", "D"),
    },
    ("disj", 4): {
        "T": ("T", "T", "T", "T"),
        "F": ("T", "F", "HA", "D"),
        "HA": ("HA", "HA", "HA", "HA"),
        "D": ("D", "D", "D", "D"),
    },
    ("neg", 5): {"T": "F", "F": "T", "HA": "HA", "IL": "IL", "O": "O"},
    ("conj", 5): {
        "T": ("T", "F", "HA", "IL", "O"),
        "F": ("F", "F", "F", "F", "F"),
        "HA": ("HA",) * 5,
        "IL": ("IL",) * 5,
        "O": ("O",) * 5,
    },
    ("disj", 5): {
        "T": ("T",) * 5,
        "F": ("T", "F", "HA", "IL", "O"),
        "HA": ("HA",) * 5,
        "IL": ("IL",) * 5,
        "O": ("O",) * 5,
    },
}

# (connective, arity, cell) -> value the engine is expected to produce instead.
FLAGGED_CELLS: Dict[Tuple[str, int, Tuple[str, ...]], str] = {
    ("conj", 4, ("T", "D")): "D",
}


def reference_cells(connective: str, arity: int) -> Dict[Tuple[str, ...], str]:
    rows = REFERENCE_TABLES[(connective, arity)]
    domain = DOMAINS[arity]
    cells: Dict[Tuple[str, ...], str] = {}
    for x, row in rows.items():
        if isinstance(row, str):
            cells[(x,)] = row
        else:
            for y, v in zip(domain, row):
                cells[(x, y)] = v
    return cells


@dataclass(frozen=True)
class CellMismatch:
    cell: Tuple[str, ...]
    expected: str
    computed: str
    printed: str


def compare_to_reference(table: TruthTable) -> List[CellMismatch]:
    """
    Cells where the computed table differs from the published one. A flagged
    cell is compared against its corrected value.
    """
    mismatches: List[CellMismatch] = []
    for cell, printed in reference_cells(table.connective, table.arity).items():
        expected = FLAGGED_CELLS.get((table.connective, table.arity, cell), printed)
        computed = table.cells[cell]
        if computed != expected:
            mismatches.append(CellMismatch(cell, expected, computed, printed))
    return mismatches


def check_implication(arity: int, style: Style = "church", fuel: int = DEFAULT_FUEL) -> List[Tuple[str, ...]]:
    """
    Cells where x -> y differs from ~x \\/ y.
    """
    impl_t = truth_table("impl", arity, style, fuel)
    bad = []
    for (x, y), v in impl_t.cells.items():
        rhs = decode(disj(neg(encode_value(x, style), style), encode_value(y, style), style), arity, style, fuel)
        if isinstance(rhs, Unknown) or rhs.value != v:
            bad.append((x, y))
    return bad


# =========================
# if-then-else decomposition over {T, Bot, F}
# =========================
@dataclass(frozen=True)
class IteRow:
    triple: Tuple[str, str, str]
    ite_value: str
    decomposed_value: str

    @property
    def ok(self) -> bool:
        return self.ite_value == self.decomposed_value


def check_ite_decomposition(style: Style = "church", fuel: int = DEFAULT_FUEL) -> List[IteRow]:
    """
    b ? m : n against (b /\\ m) \\/ (~b /\\ n) for all 27 triples.
    """
    rows: List[IteRow] = []
    for triple in itertools.product(("T", "Bot", "F"), repeat=3):
        b, m, n = (encode_value(v, style) for v in triple)
        lhs = decode(ite(b, m, n), 3, style, fuel)
        rhs = decode(disj(conj(b, m, style), conj(neg(b, style), n, style), style), 3, style, fuel)
        if isinstance(lhs, Unknown) or isinstance(rhs, Unknown):
            raise UnknownCellError(f"if-then-else triple {triple} is Unknown", triple)
        rows.append(IteRow(triple, lhs.value, rhs.value))  # type: ignore[arg-type]
    return rows


def value_label(name: Optional[str], unicode: bool = False) -> str:
    if name is None:
        return "?"
    return (UNICODE_LABELS if unicode else LABELS)[name]


def cell_label(cell: Tuple[str, ...], unicode: bool = False) -> str:
    return "(" + ", ".join(value_label(v, unicode) for v in cell) + ")"
