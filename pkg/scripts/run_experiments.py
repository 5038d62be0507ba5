"""Run catalog experiments and store one JSON report per fixture.

usage: python scripts/run_experiments.py [ids ...] [--seed N] [--out results] [--timings]
"""

import argparse
from pathlib import Path

from cmwild import catalog


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("ids", nargs="*")
    ap.add_argument("--seed", type=int, default=None)
    ap.add_argument("--out", default="results")
    ap.add_argument("--timings", action="store_true")
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    failed = []
    for name in args.ids or catalog.fixture_ids():
        rep = catalog.run_experiment(name, args.seed, args.timings)
        print(rep.table(args.timings), flush=True)
        (out / f"{rep.fixture}.json").write_text(rep.dumps(args.timings) + "\n")
        if not rep.passed:
            failed.append(rep.fixture)
    print(f"\n{len(failed)} fixture(s) with failing checks: {', '.join(failed) or '-'}")


if __name__ == "__main__":
    main()
