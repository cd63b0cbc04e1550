"""Dimensions and partial completion censuses for d = 4, 5, 6."""

import argparse

from combassoc.completion import CompletionConfig, complete
from combassoc.congruence import dims_sequence

RUNS = {4: (12, 11), 5: (11, 10), 6: (11, 10)}  # d: (max arity for dims, completion degree)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--d", type=int, nargs="*", default=sorted(RUNS))
    args = ap.parse_args()
    for d in args.d:
        max_arity, degree = RUNS[d]
        print(f"d={d}")
        print("  dims   ", dims_sequence(d, max_arity))
        report = complete(CompletionConfig(d, degree))
        print(f"  census  {report.per_arity_counts}  ({len(report.rules)} rules, partial)")


if __name__ == "__main__":
    main()
