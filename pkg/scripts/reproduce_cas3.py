"""Rebuild the convergent presentation for d = 3 and check it end to end.

    python scripts/reproduce_cas3.py [--verify-degree 13] [--workers 4] [--out rules.json]
"""

import argparse
import time

from combassoc.avoiders import build_avoider_automaton, count_avoiders, hilbert_closed_form
from combassoc.completion import CompletionConfig, complete
from combassoc.congruence import dims_sequence


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--verify-degree", type=int, default=13)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--out", default=None)
    args = ap.parse_args()

    t0 = time.time()
    report = complete(CompletionConfig(3, 7, verify_degree=args.verify_degree, workers=args.workers))
    for r in report.rules:
        print(f"  {r.lhs:>15} -> {r.rhs}")
    print("census      ", report.per_arity_counts)
    conf = report.confluence
    print(f"confluence   {'ok' if conf.ok else 'FAILED'} on {conf.trees_checked} trees "
          f"(degree <= {conf.up_to_degree}, bound 2l-1 = {report.lemma_bound})")
    dims = dims_sequence(3, args.verify_degree + 1, workers=args.workers)
    print("dimensions  ", dims)
    print("normal forms", ", ".join(map(str, conf.normal_form_counts)))
    counts = count_avoiders(build_avoider_automaton(report.rules.lhs), 50)
    print("hilbert     ", "matches closed form to n=50" if counts == hilbert_closed_form(50) else "MISMATCH")
    if args.out:
        report.rules.dump(args.out)
    print(f"done in {time.time() - t0:.1f}s")


if __name__ == "__main__":
    main()
