"""Run the Kronecker-functor grid on the cubic surface and write a JSON report.

usage: python scripts/functor_grid.py [--seed 5] [--max-dim 2] [--out results/grid.json]
"""

import argparse
import json
import time
from pathlib import Path

from cmwild.catalog import functor_grid, jsonable


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=5)
    ap.add_argument("--max-dim", type=int, default=2)
    ap.add_argument("--out", default="results/grid.json")
    args = ap.parse_args()
    t0 = time.perf_counter()
    rep = functor_grid(args.seed, args.max_dim)
    ok_hom = sum(p["equal"] and p["injective"] for p in rep.pairs)
    ok_stable = sum(p["stable_psi"] == p["hom_quiver"] for p in rep.pairs)
    print(f"w = {rep.w}, {len(rep.reps)} representations, {len(rep.pairs)} pairs")
    print(f"Hom(Phi R, Phi S)_0 matches and Phi injective: {ok_hom}/{len(rep.pairs)}")
    print(f"stable Hom(Psi R, Psi S) matches: {ok_stable}/{len(rep.pairs)}")
    for m in rep.modules[:-1]:
        print(f"  rep {m['i']} dims {m['dims']}: mcm={m['mcm']} free_summand={m['free_summand']} "
              f"rep {m['rep_decomposition']} / module {m['module_decomposition']}")
    bad = [q for q in rep.modules[-1]["non_isomorphic_pairs"] if q["modules"] != "non-isomorphic"]
    print(f"non-isomorphic pairs checked: {len(rep.modules[-1]['non_isomorphic_pairs'])}, "
          f"violations: {len(bad)}")
    print(f"certificate: {rep.certificate['verdict']}   ({time.perf_counter() - t0:.1f}s)")
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps(jsonable(rep.to_json()), sort_keys=True, indent=1))


if __name__ == "__main__":
    main()
