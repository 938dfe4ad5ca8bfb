from __future__ import annotations

import argparse
import itertools
import random
from dataclasses import dataclass
from typing import List, Optional, Tuple

from mccarthy.classify import Unknown
from mccarthy.props import EMPTY_REC_ENV, Prop, RecEnv, direct_eval, eval_prop, format_prop, parse_prop, random_prop
from mccarthy.reduce import DEFAULT_FUEL


# Rational propositions; W is checked under every assignment of a, b.
RATIONAL_CORPUS: Tuple[str, ...] = (
    "rec X = T /\\ X in X",
    "rec X = T \\/ X in X",
    "rec X = ~X in X",
)
WHILE_LOOP = "rec W = if a then T else (if b then W else W) in W"


@dataclass
class Disagreement:
    prop: str
    assignment: Tuple[Tuple[str, str], ...]
    direct: str
    compiled: str


def compare(p: Prop, env: RecEnv, asg: Optional[dict], fuel: int) -> Optional[Disagreement]:
    d = direct_eval(p, env, asg).value
    out = eval_prop(p, env, asg, 3, "church", fuel)
    c = f"Unknown({out.reason})" if isinstance(out, Unknown) else out.value
    if c == d:
        return None
    return Disagreement(format_prop(p, env), tuple(sorted((asg or {}).items())), d, c)


def main() -> int:
    ap = argparse.ArgumentParser(description="Direct left-sequential evaluation against the λ-encoding")
    ap.add_argument("--samples", type=int, default=1000, help="Random finite propositions")
    ap.add_argument("--depth", type=int, default=8)
    ap.add_argument("--seed", type=int, default=1337)
    ap.add_argument("--fuel", type=int, default=DEFAULT_FUEL)
    ap.add_argument("--no-bot", action="store_true", help="Only T and F as constants")
    args = ap.parse_args()

    rng = random.Random(args.seed)
    consts = ("T", "F") if args.no_bot else ("T", "F", "Bot")
    bad: List[Disagreement] = []

    for _ in range(args.samples):
        p = random_prop(rng, args.depth, consts)
        d = compare(p, EMPTY_REC_ENV, None, args.fuel)
        if d:
            bad.append(d)

    rational = 0
    for text in RATIONAL_CORPUS:
        p, env = parse_prop(text)
        rational += 1
        d = compare(p, env, None, args.fuel)
        if d:
            bad.append(d)
    p, env = parse_prop(WHILE_LOOP)
    for a, b in itertools.product(("T", "F", "Bot"), repeat=2):
        rational += 1
        d = compare(p, env, {"a": a, "b": b}, args.fuel)
        if d:
            bad.append(d)

    print("=== Oracle check ===")
    print(f"Random propositions: {args.samples} (depth <= {args.depth}, constants {', '.join(consts)})")
    print(f"Rational corpus:     {rational}")
    print(f"Seed: {args.seed}")
    print()
    if not bad:
        print("No disagreements.")
        return 0
    print(f"{len(bad)} disagreement(s):")
    for d in bad[:20]:
        asg = ", ".join(f"{k}={v}" for k, v in d.assignment)
        print(f"  {d.prop}  [{asg}]  direct={d.direct}  compiled={d.compiled}")
    return 1


if __name__ == "__main__":
    raise SystemExit(main())
