#!/usr/bin/env python3
"""
Command-line entry point; see `python workbench.py --help`.

  python workbench.py classify "THETA K"
  python workbench.py table --arity 5 conj
  python workbench.py prop eval "rec X = ~X in X"
  python workbench.py reproduce
"""
from mccarthy.cli import main

if __name__ == "__main__":
    raise SystemExit(main())
