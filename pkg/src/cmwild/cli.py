"""Command line entry point: ``cmwild <subcommand> ...``.

Exit codes: 0 success (or an all-pass experiment), 1 a failed check or a
computation error, 2 usage and parse errors.
"""

from __future__ import annotations

import argparse
import configparser
import json
import random
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import catalog
from .exactalg import GradedRing, ParseError, format_poly, parse_poly, parse_ring_text
from .gradmod import (Presentation, degree_and_rank, is_mcm, is_ulrich, minimal_resolution,
                      minimize)
from .groebner import groebner_basis, hilbert_hvector, normal_form, sectional_genus
from .homalg import euler_chi, ext, hom_space, minimal_form
from .wildcraft import (WildcraftError, certify_wildness, quiver_decomposition,
                        quiver_end_mats, random_rep, random_points_on, serre_construct,
                        syzygy_transport)


class UsageError(Exception):
    pass


# -- input files -----------------------------------------------------------------------------


def _ints(text: str, what: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"bad {what}: {text!r}") from None


def parse_modules(text: str) -> tuple[GradedRing, list[Presentation]]:
    """A ring header followed by zero or more ``module`` blocks."""
    rt = parse_ring_text(text)
    ring = rt.ring
    mods = []
    rest = list(rt.rest)
    i = 0
    while i < len(rest):
        lineno, st = rest[i]
        m = re.fullmatch(r"module\s+rows\s*=\s*(\d+)\s+cols\s*=\s*(\d+)\s+twists\s*=\s*(\S*)", st)
        if not m:
            raise ParseError(f"expected a module header, got {st!r}", lineno, 1)
        nr, nc = int(m.group(1)), int(m.group(2))
        twists = _ints(m.group(3), "twists")
        if len(twists) != nr:
            raise ParseError(f"{nr} rows but {len(twists)} twists", lineno, 1)
        i += 1
        src = None
        if i < len(rest) and rest[i][1].startswith("source"):
            src = _ints(rest[i][1][len("source"):].strip(), "source twists")
            if len(src) != nc:
                raise ParseError(f"{nc} columns but {len(src)} source twists", rest[i][0], 1)
            i += 1
        rows = []
        for _ in range(nr if nc else 0):
            if i >= len(rest):
                raise ParseError("module block ends early", lineno, 1)
            ln, row = rest[i]
            entries = [parse_poly(x, ring, ln, 1) for x in _split_row(row)]
            if len(entries) != nc:
                raise ParseError(f"expected {nc} entries, got {len(entries)}", ln, 1)
            rows.append(entries)
            i += 1
        if nc == 0:
            mods.append(Presentation.free(ring, twists))
        else:
            try:
                mods.append(Presentation.from_matrix(ring, rows, twists, src))
            except ValueError as exc:
                raise ParseError(str(exc), lineno, 1) from None
    return ring, mods


def _split_row(row: str) -> list[str]:
    parts, depth, cur = [], 0, ""
    for ch in row:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    parts.append(cur)
    return [p.strip() for p in parts if p.strip()]


def load(path: str) -> tuple[GradedRing, list[Presentation]]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return parse_modules(text)


def load_modules(paths: list[str], count: int) -> tuple[GradedRing, list[Presentation]]:
    ring, mods = None, []
    for path in paths:
        r, ms = load(path)
        if ring is None:
            ring = r
        elif (r.variables, r.p, [g.terms for g in r.ideal]) != \
                (ring.variables, ring.p, [g.terms for g in ring.ideal]):
            raise UsageError(f"{path}: modules must live over the same ring")
        for M in ms:
            mods.append(Presentation(M.rels) if r is ring else
                        Presentation.from_matrix(ring, _rows(M), list(M.gens.twists),
                                                 list(M.rels.source.twists)))
    if len(mods) < count:
        raise UsageError(f"expected {count} module(s), found {len(mods)}")
    return ring, mods[:count]


def _rows(M: Presentation):
    cols = M.rels.columns
    return [[cols[j][i] for j in range(len(cols))] for i in range(M.gens.rank)]


def degree_window(text: str | None, default: tuple[int, int]) -> range:
    if text is None:
        lo, hi = default
    else:
        m = re.fullmatch(r"(-?\d+)\.\.(-?\d+)", text)
        if not m:
            raise UsageError(f"bad degree window {text!r}; use lo..hi")
        lo, hi = int(m.group(1)), int(m.group(2))
        if lo > hi:
            raise UsageError("empty degree window")
    return range(lo, hi + 1)


def _seed(args) -> int:
    if args.seed is None:
        args.seed = random.SystemRandom().randrange(2**32)
        print(f"seed: {args.seed}", file=sys.stderr)
    return args.seed


def emit(args, obj, text: str) -> None:
    if args.json:
        print(json.dumps(catalog.jsonable(obj), sort_keys=True))
    else:
        print(text)


# -- subcommands -----------------------------------------------------------------------------


def cmd_gb(args) -> int:
    ring, _ = load(args.file)
    gb = groebner_basis(ring, ring.ideal)
    polys = [format_poly(g, ring.variables, ring.p) for g in gb]
    emit(args, {"groebner_basis": polys}, "\n".join(polys))
    return 0


def cmd_nf(args) -> int:
    ring, _ = load(args.file)
    f = parse_poly(args.poly, ring.ambient)
    gb = groebner_basis(ring, ring.ideal)
    out = format_poly(normal_form(f.terms, gb), ring.variables, ring.p)
    emit(args, {"normal_form": out}, out)
    return 0


def cmd_hvector(args) -> int:
    ring, _ = load(args.file)
    h = hilbert_hvector(ring)
    emit(args, {"hvector": list(h.entries), "degree": h.degree}, str(h))
    return 0


def cmd_genus(args) -> int:
    if args.hvector is not None:
        h = _ints(args.hvector, "h-vector")
    elif args.file is not None:
        h = list(hilbert_hvector(load(args.file)[0]).entries)
    else:
        raise UsageError("genus needs a ring file or --hvector")
    g = sectional_genus(h)
    emit(args, {"hvector": h, "genus": g}, str(g))
    return 0


def _module_or_ring(path: str) -> Presentation:
    ring, mods = load(path)
    if mods:
        return mods[0]
    return Presentation.quotient_ring(ring.ambient, list(ring.ideal))


def cmd_resolve(args) -> int:
    M = minimize(_module_or_ring(args.file))
    bound = args.bound if args.bound is not None else M.ring.nvars + 2
    res = minimal_resolution(M, bound)
    table = res.betti()
    if args.betti_only:
        emit(args, table.to_json(), str(table))
        return 0
    blocks = [str(table)]
    for l, d in enumerate(res.maps, 1):
        if d.source.rank == 0:
            break
        rows = [", ".join(r) for r in d.rows_text()]
        blocks.append(f"d{l}: F{l} -> F{l - 1}, source twists {list(d.source.twists)}\n"
                      + "\n".join(rows))
    obj = dict(table.to_json(), complete=res.complete,
               maps=[d.rows_text() for d in res.maps if d.source.rank])
    emit(args, obj, "\n".join(blocks))
    return 0


def cmd_hom(args) -> int:
    _, (M, N) = load_modules(args.files, 2)
    rows = [[t, hom_space(M, N, t).dim] for t in degree_window(args.degree, (0, 0))]
    emit(args, {"hom": rows}, "\n".join(f"Hom_{t}: {d}" for t, d in rows))
    return 0


def cmd_ext(args) -> int:
    _, (M, N) = load_modules(args.files, 2)
    rows = [[args.index, t, ext(M, N, args.index, t).dim]
            for t in degree_window(args.degree, (0, 0))]
    emit(args, {"ext": rows}, "\n".join(f"Ext^{i}_{t}: {d}" for i, t, d in rows))
    return 0


def cmd_chi(args) -> int:
    _, (M, N) = load_modules(args.files, 2)
    c = euler_chi(M, N)
    emit(args, {"chi": c}, str(c))
    return 0


def cmd_ulrich(args) -> int:
    M = load_modules([args.file], 1)[1][0]
    d = is_ulrich(M)
    emit(args, {"ulrich": d.value, "details": d.details}, f"{str(d.value).lower()} {d.details}")
    return 0


def cmd_mcm(args) -> int:
    M = load_modules([args.file], 1)[1][0]
    d = is_mcm(M)
    emit(args, {"mcm": d.value, "details": d.details}, f"{str(d.value).lower()} {d.details}")
    return 0


def cmd_kronecker(args) -> int:
    a, b = _ints(args.dims, "dimension vector")[:2]
    rep = random_rep(args.w, a, b, random.Random(_seed(args)), args.p)
    end = quiver_end_mats(rep)
    dec = quiver_decomposition(rep, args.seed)
    obj = {"rep": rep.to_json(), "seed": args.seed, "end_dim": len(end), "decomposition": dec.status}
    text = "\n".join([f"w={rep.w} dims=({a},{b}) seed={args.seed}"] +
                     [f"arrow {k}: {m.tolist()}" for k, m in enumerate(rep.mats)] +
                     [f"dim End = {len(end)}, {dec.status}"])
    emit(args, obj, text)
    return 0


def cmd_transport(args) -> int:
    _, (L,) = load_modules([args.module], 1)
    R, _ = load(args.ring)
    if not R.same_ambient(L.ring):
        raise UsageError("module and ring must share variables and characteristic")
    L = Presentation.from_matrix(L.ring, _rows(L), list(L.gens.twists),
                                 list(L.rels.source.twists)) if L.rels.source.rank else L
    tr = syzygy_transport(L, R, args.c)
    M = minimal_form(tr.module)
    obj = {"c": args.c, "mcm": tr.mcm.value, "free_summand": tr.free_summand.has_free_summand,
           "ulrich_source": tr.ulrich_source, "warnings": tr.warnings, "module": M.text()}
    text = M.text() + f"\n# mcm={tr.mcm.value} free_summand={tr.free_summand.has_free_summand}"
    for w in tr.warnings:
        print(f"warning: {w}", file=sys.stderr)
    emit(args, obj, text)
    return 0


def cmd_serre(args) -> int:
    ring, _ = load(args.file)
    from .gradmod import ring_degree
    n = args.points if args.points is not None else ring_degree(ring) + 2
    pts = random_points_on(ring, n, seed=_seed(args))
    E = serre_construct(ring, pts)
    dr = degree_and_rank(E)
    obj = {"points": [list(p) for p in pts], "seed": args.seed, "module": E.text(),
           "rank": dr.rank, "ulrich": E.meta.get("ulrich")}
    emit(args, obj, E.text())
    return 0


def cmd_certify(args) -> int:
    ring, (A, B) = load_modules(args.files, 2)
    section = None
    if args.section is not None:
        section = {"ringX": load(args.section)[0], "c": args.c}
    cert = certify_wildness(ring, A, B, section=section, seed=args.seed or 0)
    text = "\n".join([f"verdict: {cert.verdict}", f"w = {cert.w} (reverse {cert.w_reverse})"] +
                     [f"failing: {', '.join(cert.failing)}"] * bool(cert.failing))
    emit(args, cert.to_json(), text)
    return 0


def _run_one(job):
    name, seed, timings = job
    rep = catalog.run_experiment(name, seed, timings)
    return rep.to_json(timings), rep.table(timings), rep.passed


def cmd_experiment(args) -> int:
    if args.reseed is not None:
        if args.all or not args.ids:
            raise UsageError("--reseed needs a fixture id")
        out = [catalog.reseed(i, args.reseed) for i in args.ids]
        emit(args, out, "\n".join(f"{r['fixture']}: {r['failures']}/{r['runs']} failing seeds"
                                  for r in out))
        return 0 if all(r["failures"] == 0 for r in out) else 1
    ids = catalog.fixture_ids() if args.all else args.ids
    if not ids:
        raise UsageError("give fixture ids or --all")
    for i in ids:
        try:
            catalog.canonical_id(i)
        except catalog.FixtureError as exc:
            raise UsageError(str(exc)) from None
    jobs = [(i, args.seed, args.timings) for i in ids]
    if args.all and args.jobs != 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_run_one, jobs))
    else:
        results = [_run_one(j) for j in jobs]
    for obj, text, _ in results:
        print(json.dumps(obj, sort_keys=True) if args.json else text, flush=True)
    return 0 if all(ok for _, _, ok in results) else 1


def cmd_list(args) -> int:
    rows = []
    for i in catalog.fixture_ids():
        aliases = sorted(a for a, t in catalog.ALIASES.items() if t == i)
        rows.append({"id": i, "aliases": aliases, "seed": catalog.DEFAULT_SEEDS[i]})
    emit(args, rows, "\n".join(r["id"] + (f" (alias: {', '.join(r['aliases'])})"
                                          if r["aliases"] else "") for r in rows))
    return 0


# -- parser ----------------------------------------------------------------------------------


def _read_config(path: str | None) -> dict:
    """Optional ``key = value`` file; flags given on the command line win."""
    if path is None:
        return {}
    cp = configparser.ConfigParser()
    try:
        cp.read_string("[cmwild]\n" + Path(path).read_text())
    except (OSError, configparser.Error) as exc:
        raise UsageError(f"bad config file {path}: {exc}") from None
    return dict(cp["cmwild"])


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--bound", type=int, default=None, help="resolution length")
    common.add_argument("--degree", default=None, help="degree window lo..hi")
    common.add_argument("--config", default=None, help="key = value defaults")

    ap = argparse.ArgumentParser(prog="cmwild", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=func)
        return sp

    add("gb", cmd_gb, "reduced Groebner basis of the ideal").add_argument("file")
    sp = add("nf", cmd_nf, "normal form of a polynomial")
    sp.add_argument("file")
    sp.add_argument("poly")
    add("hvector", cmd_hvector, "h-vector of the ring").add_argument("file")
    sp = add("genus", cmd_genus, "sectional genus from a ring or an h-vector")
    sp.add_argument("file", nargs="?")
    sp.add_argument("--hvector", default=None)
    sp = add("resolve", cmd_resolve, "minimal free resolution of a module (or the ring)")
    sp.add_argument("file")
    sp.set_defaults(betti_only=False)
    sp = add("betti", cmd_resolve, "Betti table of a module (or the ring)")
    sp.add_argument("file")
    sp.set_defaults(betti_only=True)
    add("hom", cmd_hom, "dim Hom(M, N)_t").add_argument("files", nargs="+")
    sp = add("ext", cmd_ext, "dim Ext^i(M, N)_t")
    sp.add_argument("files", nargs="+")
    sp.add_argument("--index", "-i", type=int, default=1)
    add("chi", cmd_chi, "Euler characteristic of sheaves on a curve").add_argument(
        "files", nargs="+")
    add("ulrich", cmd_ulrich, "Ulrich test").add_argument("file")
    add("mcm", cmd_mcm, "maximal Cohen-Macaulay test").add_argument("file")
    sp = add("kronecker", cmd_kronecker, "random Kronecker quiver representation")
    sp.add_argument("--w", type=int, default=3)
    sp.add_argument("--dims", default="1,1")
    sp.add_argument("--p", type=int, default=32003)
    sp = add("transport", cmd_transport, "syzygy transport to a ring of which T is a section")
    sp.add_argument("module")
    sp.add_argument("ring")
    sp.add_argument("--c", type=int, default=1)
    sp = add("serre", cmd_serre, "rank-2 module from points on a surface")
    sp.add_argument("file")
    sp.add_argument("--points", type=int, default=None)
    sp = add("certify", cmd_certify, "wildness certificate for a pair A, B")
    sp.add_argument("files", nargs="+")
    sp.add_argument("--section", default=None, help="ring of X when the pair lives on a section")
    sp.add_argument("--c", type=int, default=1)
    sp = add("experiment", cmd_experiment, "run catalog experiments")
    sp.add_argument("ids", nargs="*")
    sp.add_argument("--all", action="store_true")
    sp.add_argument("--reseed", type=int, default=None)
    sp.add_argument("--timings", action="store_true")
    sp.add_argument("--jobs", type=int, default=None)
    add("list-fixtures", cmd_list, "list catalog fixtures")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors, 0 on --help
        return int(exc.code or 0)
    try:
        cfg = _read_config(args.config)
        for key in ("seed", "bound"):
            if getattr(args, key, None) is None and key in cfg:
                setattr(args, key, int(cfg[key]))
        if getattr(args, "degree", None) is None and "degree" in cfg:
            args.degree = cfg["degree"]
        return args.func(args)
    except (UsageError, ParseError) as exc:
        print(f"cmwild: error: {exc}", file=sys.stderr)
        return 2
    except (WildcraftError, ValueError, ArithmeticError) as exc:
        print(f"cmwild: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
