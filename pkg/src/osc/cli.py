"""``osc`` command-line front end.

Exit codes: 0 success, 1 a checked property was refuted, 2 usage error,
3 budget or capacity refusal.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from osc import constructions, langs, machine, primeslab, qtable
from osc.alphabet import BINARY
from osc.errors import CapacityError, InputError, RefusalError

EXIT_OK, EXIT_REFUTED, EXIT_USAGE, EXIT_REFUSED = 0, 1, 2, 3


class _Out:
    def __init__(self, stream):
        self.stream = stream

    def line(self, text: str = "") -> None:
        self.stream.write(text + "\n")

    def json(self, obj) -> None:
        self.stream.write(json.dumps(obj, indent=2) + "\n")

    def csv(self, header: list[str], rows) -> None:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        self.stream.write(buf.getvalue())


def _show(alphabet, word) -> str:
    return alphabet.render(word) if word else "ε"


def _positive(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _natural(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return value


def cmd_list(args, out: _Out) -> int:
    data = {
        "command": "list",
        "languages": langs.LANGUAGE_NAMES,
        "machines": constructions.MACHINE_NAMES,
        "registered": [{"machine": n, "depth": d} for n, d in constructions.REGISTERED],
    }
    if args.format == "json":
        out.json(data)
        return EXIT_OK
    out.line("languages:")
    for name in data["languages"]:
        out.line(f"  {name}")
    out.line("machines:")
    for name in data["machines"]:
        out.line(f"  {name}")
    out.line("registered instances (exhaustive depth):")
    for name, depth in constructions.REGISTERED:
        out.line(f"  {name} ({depth})")
    return EXIT_OK


def cmd_verify(args, out: _Out) -> int:
    m, oracle = constructions.machine_by_name(args.machine, budget=args.budget)
    bad = machine.verify_against_oracle(m, oracle, args.max_len)
    shown = bad[: args.max_report]
    checked = m.alphabet.count_upto(args.max_len)
    if args.format == "json":
        out.json({
            "command": "verify", "machine": m.name, "language": oracle.name,
            "max_len": args.max_len, "words_checked": checked, "mismatches": len(bad),
            "examples": [m.alphabet.render(w) for w in shown],
        })
    else:
        out.line(f"{m.name} vs {oracle.name}: {checked} words up to length {args.max_len}")
        out.line(f"{len(bad)} mismatches")
        for w in shown:
            out.line(f"  {_show(m.alphabet, w)}: machine={machine.accepts(m, w)} oracle={oracle.member(w)}")
            if args.trace:
                for row in machine.trace(m, w):
                    out.line(f"    {row}")
    return EXIT_REFUTED if bad else EXIT_OK


def cmd_states(args, out: _Out) -> int:
    m, _ = constructions.machine_by_name(args.machine, budget=args.budget)
    curve = machine.state_count_curve(m, args.max_len)
    if args.format == "csv":
        out.csv(["n", "states"], curve.entries)
    elif args.format == "json":
        out.json({"command": "states", "machine": m.name,
                  "entries": [{"n": n, "states": s} for n, s in curve.entries]})
    else:
        out.line(f"{m.name}")
        out.line(f"{'n':>4} {'states':>10}")
        for n, s in curve.entries:
            out.line(f"{n:>4} {s:>10}")
    return EXIT_OK


def cmd_qtable(args, out: _Out) -> int:
    oracle = langs.by_name(args.lang)
    report = qtable.query_table(oracle, args.order, args.probe_depth, parallelism=args.parallel,
                                keep_profiles=args.keep_profiles, budget=args.budget)
    if args.format == "json":
        out.json(report.to_json())
    elif args.format == "csv":
        out.csv(["n", "m", "distinct_rows", "distinct_cols"],
                [(report.order, report.probe_depth, report.distinct_rows, report.distinct_cols)])
    else:
        out.line(f"{report.language}: order {report.order}, probe depth {report.probe_depth}")
        out.line(f"  distinct rows (query-table lower bound): {report.distinct_rows}")
        out.line(f"  distinct columns (quotient lower bound): {report.distinct_cols}")
        out.line(f"  queries: {report.query_count}, {report.elapsed_ms:.1f} ms")
        if report.profiles is not None:
            for word, bits in report.profiles:
                out.line(f"  {word or 'ε':>12} {bits}")
    return EXIT_OK


def cmd_quotients(args, out: _Out) -> int:
    oracle = langs.by_name(args.lang)
    classes = qtable.quotient_classes(oracle, args.order, args.probe_depth, budget=args.budget)
    a = oracle.alphabet
    if args.format == "json":
        out.json({"command": "quotients", "language": oracle.name, "order": args.order,
                  "probe_depth": args.probe_depth, "distinct_cols": len(classes),
                  "classes": [{"rep": a.render(c.rep), "size": len(c.members)} for c in classes]})
    elif args.format == "csv":
        out.csv(["rep", "size"], [(a.render(c.rep), len(c.members)) for c in classes])
    else:
        out.line(f"{oracle.name}: {len(classes)} quotient classes at order {args.order}, "
                 f"probe depth {args.probe_depth}")
        for c in classes:
            out.line(f"  {_show(a, c.rep):>12}  ({len(c.members)} words)")
    return EXIT_OK


def cmd_separate(args, out: _Out) -> int:
    oracle = langs.by_name(args.lang)
    a = oracle.alphabet
    u, v = a.parse(args.u), a.parse(args.v)
    w = qtable.separating_word(oracle, u, v, args.max_len)
    if args.format == "json":
        out.json({"command": "separate", "language": oracle.name, "u": args.u, "v": args.v,
                  "max_len": args.max_len, "found": w is not None,
                  "word": None if w is None else a.render(w)})
    elif w is None:
        out.line(f"no separating word of length <= {args.max_len}")
    else:
        out.line(f"separating word: {_show(a, w)}  "
                 f"(L(uw)={oracle.member(u + w)}, L(vw)={oracle.member(v + w)})")
    return EXIT_OK


def cmd_primes(args, out: _Out) -> int:
    if args.primes_cmd == "isolated":
        res = primeslab.find_isolated_prime(args.residue, args.modulus, args.radius, args.bound)
        data = {"command": "primes isolated", "found": res is not None}
        if res is not None:
            data.update(res.to_json())
        ok = res is None or data["verified"]
        if args.format == "json":
            out.json(data)
        elif res is None:
            out.line(f"no isolated prime with k <= {args.bound}")
        else:
            lo, hi = res.window
            out.line(f"k={res.k} p={res.p} window=[{lo},{hi}] verified={data['verified']}")
        return EXIT_OK if ok else EXIT_REFUTED
    if args.primes_cmd == "witness":
        wit = primeslab.prime_profile_witness(args.u, args.bound)
        data = {"command": "primes witness", "found": wit is not None}
        if wit is not None:
            data.update(wit.to_json())
        if args.format == "json":
            out.json(data)
        elif wit is None:
            out.line(f"no witness with k <= {args.bound}")
        else:
            res = wit.isolated
            out.line(f"u={args.u} w={_show(BINARY, wit.word)} k={res.k} p={res.p} "
                     f"verified={res.verify()}")
        return EXIT_OK
    # constellation
    try:
        S = sorted({int(x) for x in args.set.split(",") if x.strip()})
    except ValueError:
        raise InputError(f"--set must be comma-separated integers, got {args.set!r}") from None
    k = primeslab.constellation_search(args.n, S, args.bound)
    holds = k is not None and primeslab.constellation_holds(args.n, S, k)
    if args.format == "json":
        out.json({"command": "primes constellation", "n": args.n, "set": S,
                  "found": k is not None, "k": k, "verified": holds})
    elif k is None:
        out.line(f"no k <= {args.bound}")
    else:
        out.line(f"k={k} verified={holds}")
    return EXIT_OK if (k is None or holds) else EXIT_REFUTED


def cmd_demo(args, out: _Out) -> int:
    if args.demo_cmd == "expalt":
        demo = qtable.expalt_demo(args.n, args.probe_depth, budget=args.budget)
    else:
        demo = qtable.hierarchy_demo(args.ell, args.n, budget=args.budget)
    if args.format == "json":
        out.json(demo.to_json())
    else:
        out.line(f"{demo.language}: n={demo.n}, order {demo.order}")
        out.line(f"  witnesses: {demo.witnesses}")
        out.line(f"  distinct profiles on test columns: {demo.distinct_test_profiles}"
                 f" (target {demo.target})")
        if demo.distinct_full_profiles is not None:
            out.line(f"  distinct profiles on all order-{demo.order} columns: "
                     f"{demo.distinct_full_profiles}")
        out.line(f"  witness postconditions: {'ok' if demo.postconditions_ok else 'FAILED'}")
        if demo.qtable is not None:
            out.line(f"  query table at probe depth {demo.qtable.probe_depth}: "
                     f"{demo.qtable.distinct_rows} distinct rows")
    return EXIT_OK if demo.ok else EXIT_REFUTED


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=_positive, default=None,
                        help="membership-query cap (default: $OSC_BUDGET or 2^28)")
    common.add_argument("--format", choices=("text", "csv", "json"), default="text")

    parser = argparse.ArgumentParser(prog="osc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="cmd", required=True)

    sub.add_parser("list", parents=[common], help="registries of languages and machines")

    p = sub.add_parser("verify", parents=[common], help="compare a machine with its oracle")
    p.add_argument("--machine", required=True)
    p.add_argument("--max-len", type=_natural, required=True)
    p.add_argument("--max-report", type=_natural, default=10)
    p.add_argument("--trace", action="store_true", help="print game layers for mismatches")

    p = sub.add_parser("states", parents=[common], help="state-count curve s(n)")
    p.add_argument("--machine", required=True)
    p.add_argument("--max-len", type=_natural, required=True)

    p = sub.add_parser("qtable", parents=[common], help="query-table lower bounds")
    p.add_argument("--lang", required=True)
    p.add_argument("--order", type=_natural, required=True)
    p.add_argument("--probe-depth", type=_natural, required=True)
    p.add_argument("--parallel", type=_positive, default=1)
    p.add_argument("--keep-profiles", action="store_true")

    p = sub.add_parser("quotients", parents=[common], help="probe-bounded quotient classes")
    p.add_argument("--lang", required=True)
    p.add_argument("--order", type=_natural, required=True)
    p.add_argument("--probe-depth", type=_natural, required=True)

    p = sub.add_parser("separate", parents=[common], help="least word separating two quotients")
    p.add_argument("--lang", required=True)
    p.add_argument("--u", required=True)
    p.add_argument("--v", required=True)
    p.add_argument("--max-len", type=_natural, required=True)

    p = sub.add_parser("primes", help="prime-number experiments")
    psub = p.add_subparsers(dest="primes_cmd", required=True)
    q = psub.add_parser("isolated", parents=[common])
    q.add_argument("--residue", type=_natural, required=True)
    q.add_argument("--modulus", type=_positive, required=True)
    q.add_argument("--radius", type=_positive, required=True)
    q.add_argument("--bound", type=_natural, required=True)
    q = psub.add_parser("witness", parents=[common])
    q.add_argument("--u", required=True)
    q.add_argument("--bound", type=_natural, required=True)
    q = psub.add_parser("constellation", parents=[common])
    q.add_argument("--n", type=_positive, required=True)
    q.add_argument("--set", required=True, help="comma-separated odd residues, may be empty")
    q.add_argument("--bound", type=_natural, required=True)

    p = sub.add_parser("demo", help="lower-bound witness demos")
    dsub = p.add_subparsers(dest="demo_cmd", required=True)
    q = dsub.add_parser("expalt", parents=[common])
    q.add_argument("--n", type=_positive, required=True)
    q.add_argument("--probe-depth", type=_natural, default=None)
    q = dsub.add_parser("hierarchy", parents=[common])
    q.add_argument("--ell", type=int, required=True)
    q.add_argument("--n", type=_positive, required=True)
    return parser


COMMANDS = {
    "list": cmd_list, "verify": cmd_verify, "states": cmd_states, "qtable": cmd_qtable,
    "quotients": cmd_quotients, "separate": cmd_separate, "primes": cmd_primes, "demo": cmd_demo,
}


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return COMMANDS[args.cmd](args, _Out(stdout))
    except InputError as exc:
        stderr.write(f"osc: error: {exc}\n")
        return EXIT_USAGE
    except (RefusalError, CapacityError) as exc:
        stderr.write(f"osc: refused: {exc}\n")
        return EXIT_REFUSED


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
