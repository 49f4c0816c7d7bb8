#!/usr/bin/env python3
"""Run the shipped expectation corpus and exit with its verdict.

Exit code 0 when every check passes, 1 when any check fails, 2 on a
malformed corpus file.
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from fanocheck.corpus import CorpusFormatError, run_corpus

DEFAULT_CORPUS = Path(__file__).resolve().parent.parent / "corpus" / "paper_examples.json"


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("corpus", nargs="?", default=str(DEFAULT_CORPUS),
                        help="corpus JSON file (default: the shipped one)")
    parser.add_argument("--jobs", type=int, default=1,
                        help="worker threads (output is identical either way)")
    parser.add_argument("--json", action="store_true",
                        help="emit the JSON report instead of text")
    args = parser.parse_args()
    try:
        report = run_corpus(args.corpus, jobs=args.jobs)
    except CorpusFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(report.to_json() if args.json else report.to_text())
    return 0 if report.all_passed else 1


if __name__ == "__main__":
    sys.exit(main())
