"""Regenerate every table and chart from the embedded corpus and print the checks.

    python scripts/reproduce.py [--out reproduce_out] [--input DIR]

Same as ``leaguestats reproduce``, kept here so the full run sits next to the
calibration script. Exits non-zero if any comparison fails.
"""

import argparse
import sys

from leaguestats.corpus import load_corpus, load_default_corpus
from leaguestats.report import reproduce


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="reproduce_out")
    ap.add_argument("--input", help="directory of epl_YYYY_YY.csv files")
    args = ap.parse_args()
    corpus = load_corpus(args.input) if args.input else load_default_corpus()
    res = reproduce(corpus, args.out)
    print(res.summary(), end="")
    print(f"{len(res.files)} files under {args.out} in {res.seconds:.2f}s")
    return 0 if res.passed else 1


if __name__ == "__main__":
    sys.exit(main())
