"""Relative error of the large-m expansion of the squared gamma ratio, m = 1..M.

Usage: python scripts/reproduce_laurent_error.py [--m-max 10] [--out delta.csv]
"""
import argparse
import sys

from bdris.cli import main

if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--m-max", type=int, default=10)
    ap.add_argument("--out")
    args = ap.parse_args()
    argv = ["laurent", "--m-max", str(args.m_max)] + (["--out", args.out] if args.out else [])
    sys.exit(main(argv))
