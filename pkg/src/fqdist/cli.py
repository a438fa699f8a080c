"""Command-line interface: construct, verify, scan, census, selftest.

Exit codes: 0 all asserted claims hold, 1 a verified claim failed (an
implementation alarm), 2 bad invocation or configuration.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from dataclasses import dataclass

from . import construction as cx
from . import ff, setalg, verify
from .errors import ClaimViolation, FqdistError

ENV_PAIR_BUDGET = "FALCONER_PAIR_BUDGET"


@dataclass
class RunConfig:
    """Validated invocation parameters; nothing runs until this exists."""

    command: str
    p: int | None = None
    r: int | None = None
    r_list: tuple = ()
    q: int | None = None
    basis: object = "auto"
    oracle: str = "auto"
    pair_budget: int = setalg.DEFAULT_PAIR_BUDGET
    enum_budget: int = cx.DEFAULT_ENUM_BUDGET
    threads: int = 1
    out: str | None = None
    format: str = "json"
    seed: int = 0
    triples: int = 10000
    pruning: bool = True
    dump_bits: bool = False
    verbose: bool = False


def _parse_basis(text: str):
    if text == "auto":
        return "auto"
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("basis must be 'auto' or two indices 'i1,i2'")
    try:
        return (int(parts[0]), int(parts[1]))
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def _parse_r_list(text: str):
    try:
        values = tuple(int(tok) for tok in text.split(",") if tok != "")
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))
    if not values:
        raise argparse.ArgumentTypeError("need at least one r value")
    return values


def _default_pair_budget() -> int:
    env = os.environ.get(ENV_PAIR_BUDGET)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise FqdistError(f"{ENV_PAIR_BUDGET} must be an integer, got {env!r}")
    return setalg.DEFAULT_PAIR_BUDGET


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="fqdist",
        description=(
            "Build point sets of size q^(4/3) in F_q^2 whose distance sets "
            "miss part of F_q, and verify every claim about them exactly."
        ),
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--pair-budget", type=int, default=None,
                        help=f"max ordered pairs per exact set computation "
                             f"(default {setalg.DEFAULT_PAIR_BUDGET}, or ${ENV_PAIR_BUDGET})")
        sp.add_argument("--threads", type=int, default=1)
        sp.add_argument("--out", default=None, help="write the machine report here")
        sp.add_argument("--format", choices=("json", "csv"), default="json")
        sp.add_argument("-v", "--verbose", action="store_true")

    sp = sub.add_parser("construct", help="build a construction and emit its replayable record")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--basis", type=_parse_basis, default="auto")
    common(sp)

    sp = sub.add_parser("verify", help="verify all claims for one (p, r)")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--basis", type=_parse_basis, default="auto")
    sp.add_argument("--oracle", choices=("auto", "both", "structured"), default="auto",
                    help="'both' forces the brute-force pass, 'auto' runs it when it fits the budget")
    sp.add_argument("--enum-budget", type=int, default=cx.DEFAULT_ENUM_BUDGET,
                    help="max points to materialize for the brute-force oracle")
    sp.add_argument("--dump-bits", action="store_true",
                    help="include full bitset dumps in the report")
    common(sp)

    sp = sub.add_parser("scan", help="ratio table over several r values")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--r", type=_parse_r_list, required=True, help="comma list, e.g. 1,2")
    sp.add_argument("--basis", type=_parse_basis, default="auto")
    common(sp)

    sp = sub.add_parser("census", help="exhaustive max incomplete-distance-set size at tiny q")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--pruning", choices=("on", "off"), default="on")
    common(sp)

    sp = sub.add_parser("selftest", help="randomized property self-tests")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--triples", type=int, default=10000,
                    help="random triples per field for the axiom suite")
    common(sp)

    return ap


def _to_config(args) -> RunConfig:
    cfg = RunConfig(command=args.command)
    cfg.pair_budget = (
        args.pair_budget if args.pair_budget is not None else _default_pair_budget()
    )
    if cfg.pair_budget < 1:
        raise FqdistError("pair budget must be positive")
    cfg.threads = args.threads
    if cfg.threads < 1:
        raise FqdistError("threads must be at least 1")
    cfg.out = args.out
    cfg.format = args.format
    cfg.verbose = args.verbose
    if args.command != "scan" and cfg.format == "csv":
        raise FqdistError("--format csv is only available for scan")
    if args.command in ("construct", "verify"):
        cfg.p, cfg.r, cfg.basis = args.p, args.r, args.basis
    if args.command == "verify":
        cfg.oracle = args.oracle
        cfg.enum_budget = args.enum_budget
        cfg.dump_bits = args.dump_bits
    if args.command == "scan":
        cfg.p, cfg.r_list, cfg.basis = args.p, args.r, args.basis
    if args.command == "census":
        cfg.q = args.q
        cfg.pruning = args.pruning == "on"
    if args.command == "selftest":
        cfg.seed = args.seed
        cfg.triples = args.triples
        if cfg.triples < 1:
            raise FqdistError("triples must be positive")
    return cfg


def _dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run_construct(cfg: RunConfig) -> int:
    c = cx.build_construction(cfg.p, cfg.r, cfg.basis)
    print(
        f"q = {c.q} = {cfg.p}^{6 * cfg.r}   |F| = {c.subF.order}   "
        f"|V| = {len(c.V.elements)}   |E| = {c.size_E}"
    )
    print(f"i = #{c.i.index}   basis = (#{c.V.basis[0].index}, #{c.V.basis[1].index})")
    _emit(cfg, _dump_json(c.to_json()))
    return 0


def run_verify(cfg: RunConfig) -> int:
    rep = verify.verify_counterexample(
        cfg.p,
        cfg.r,
        basis=cfg.basis,
        oracle=cfg.oracle,
        pair_budget=cfg.pair_budget,
        enum_budget=cfg.enum_budget,
        threads=cfg.threads,
        dump_bits=cfg.dump_bits,
    )
    print(f"q = {rep.q} (p={rep.p}, r={rep.r})   |E| = {rep.size_E} = q^(4/3)")
    print(
        f"|distance set| = {rep.size_delta}   |VV| = {rep.size_VV}   "
        f"ratio = {rep.ratio.numerator}/{rep.ratio.denominator} "
        f"≈ {verify._ratio_decimal(rep.ratio)}"
    )
    print(
        f"distance set == VV: {str(rep.delta_equals_VV).lower()}   "
        f"incomplete: {str(rep.delta_ne_Fq).lower()} "
        f"(missing element #{rep.missing_distance})"
    )
    print(
        f"oracles: {rep.oracle_mode}   above completeness threshold: "
        f"{str(rep.ir_applicable).lower()}"
    )
    if cfg.verbose:
        print(f"delta bitset sha256 = {rep.delta_set['sha256_of_bitset']}")
        print(f"VV bitset sha256    = {rep.vv_set['sha256_of_bitset']}")
    print(f"all claims verified in {rep.elapsed_seconds:.2f}s")
    if cfg.out:
        _emit(cfg, _dump_json(rep.to_json_dict()))
    return 0


def run_scan(cfg: RunConfig) -> int:
    rows = verify.ratio_scan(
        cfg.p, cfg.r_list, basis=cfg.basis,
        pair_budget=cfg.pair_budget, threads=cfg.threads,
    )
    if cfg.format == "csv":
        text = verify.scan_to_csv(rows)
    else:
        text = _dump_json(verify.scan_to_json_dict(cfg.p, rows))
    if cfg.out:
        for row in rows:
            tail = f"error: {row.error}" if row.error else (
                f"|Δ| = {row.size_delta}  ratio ≈ {verify._ratio_decimal(row.ratio)}"
            )
            print(f"r = {row.r}  q = {row.q if row.q else '?'}  {tail}")
    _emit(cfg, text)
    if any(row.error_kind == "claim" for row in rows):
        return 1
    if any(row.error for row in rows):
        return 2
    return 0


def run_census(cfg: RunConfig) -> int:
    res = verify.census(cfg.q, pruning=cfg.pruning)
    print(
        f"q = {res.q}: max |E| with an incomplete distance set = "
        f"{res.max_incomplete_size} ({res.subsets_visited} subsets visited, "
        f"pruning {'on' if res.pruning else 'off'})"
    )
    print(f"witness: {res.witness_set}")
    if cfg.out:
        _emit(cfg, _dump_json(res.to_json_dict()))
    return 0


# ---------------------------------------------------------------------------
# selftest


def _axiom_failures(field, rng, triples) -> int:
    bad = 0
    q = field.q
    zero, one = field.zero, field.one
    for _ in range(triples):
        a = field.from_index(rng.randrange(q))
        b = field.from_index(rng.randrange(q))
        c = field.from_index(rng.randrange(q))
        ok = (
            (a + b) + c == a + (b + c)
            and a + b == b + a
            and (a * b) * c == a * (b * c)
            and a * b == b * a
            and a * (b + c) == a * b + a * c
            and a + zero == a
            and a * one == a
            and a + (-a) == zero
        )
        if ok and a:
            ok = a * a.inv() == one
        if not ok:
            bad += 1
    return bad


def run_selftest(cfg: RunConfig) -> int:
    rng = random.Random(cfg.seed)
    checks = []

    fields = [ff.make_prime_field(7), ff.ExtField(3, 2), ff.ExtField(3, 6)]
    for fld in fields:
        bad = _axiom_failures(fld, rng, cfg.triples)
        checks.append((f"field axioms GF({fld.q}) x{cfg.triples}", bad == 0))

    gf729 = fields[2]
    round_trip = all(gf729.from_index(i).index == i for i in range(gf729.q))
    checks.append(("index round-trip GF(729)", round_trip))

    sub = ff.locate_subfield(gf729, 2)
    fixed = all(
        (ff.frobenius(e, 2) == e) == sub.members.has(e.index)
        for e in gf729.elements()
    )
    checks.append(("subfield = Frobenius fixed set (q=729, m=2)", fixed))

    i729 = ff.sqrt_minus_one(gf729)
    checks.append(("i^2 = -1 in GF(729)", i729 * i729 == -gf729.one))

    rep = verify.verify_counterexample(3, 1, oracle="structured",
                                       pair_budget=cfg.pair_budget, threads=cfg.threads)
    checks.append(("structured oracle = VV at (p=3, r=1)", rep.delta_equals_VV))
    checks.append(("missing distance exists at (p=3, r=1)", rep.delta_ne_Fq))

    # translation invariance of the distance set on random small sets
    gf9 = fields[1]
    ok_translate = True
    for _ in range(20):
        pts = [
            setalg.Point(gf9.from_index(rng.randrange(9)), gf9.from_index(rng.randrange(9)))
            for _ in range(rng.randrange(1, 6))
        ]
        tx = gf9.from_index(rng.randrange(9))
        ty = gf9.from_index(rng.randrange(9))
        shifted = [setalg.Point(pt.x + tx, pt.y + ty) for pt in pts]
        if setalg.distance_set_bruteforce(pts) != setalg.distance_set_bruteforce(shifted):
            ok_translate = False
    checks.append(("distance-set translation invariance (random sets)", ok_translate))

    all_ok = True
    for name, ok in checks:
        print(f"{'PASS' if ok else 'FAIL'}  {name}")
        all_ok = all_ok and ok
    if not all_ok:
        raise ClaimViolation("selftest found failing properties")
    return 0


_COMMANDS = {
    "construct": run_construct,
    "verify": run_verify,
    "scan": run_scan,
    "census": run_census,
    "selftest": run_selftest,
}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        code = e.code
        return int(code) if code else 0
    try:
        cfg = _to_config(args)
        return _COMMANDS[cfg.command](cfg)
    except ClaimViolation as e:
        print(f"CLAIM VIOLATED: {e}", file=sys.stderr)
        return 1
    except FqdistError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


def app() -> None:
    sys.exit(main())


if __name__ == "__main__":
    app()
