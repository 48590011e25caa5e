"""Command-line front end.

Exit codes: 0 success / pass / trivial, 1 nontrivial or failed check,
2 usage or parse error, 3 runtime limit (position ceiling, expansion overflow).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import autom, folding, presentation, rewrite
from .groupword import GroupWordSyntaxError, evaluate, parse_group_word, syntactic_flux
from .words import WordSyntaxError, parse_basis_word

OK, FAIL, USAGE, RUNTIME = 0, 1, 2, 3

MIN_R = {"P": 3, "ALL": 3}


class UsageError(Exception):
    pass


class _Out:
    def __init__(self, args):
        self.json = args.json
        self.path = args.out
        self.chunks: list[str] = []

    def emit(self, text_lines: list[str], payload) -> None:
        text = json.dumps(payload, indent=2) if self.json else "\n".join(text_lines)
        print(text)
        self.chunks.append(text)

    def close(self) -> None:
        if self.path:
            with open(self.path, "w") as fh:
                fh.write("\n".join(self.chunks) + "\n")


def _word(args):
    return parse_group_word(args.word, args.r)


def cmd_eval(args, out: _Out) -> int:
    g = evaluate(_word(args))
    payload = g.to_json()
    out.emit([json.dumps(payload)], payload)
    return OK


def cmd_trivial(args, out: _Out) -> int:
    w = _word(args)
    try:
        ok, stage = rewrite.decide(w)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    verdict = "trivial" if ok else "nontrivial"
    out.emit([f"{verdict} ({stage})"], {"word": args.word, "trivial": ok, "stage": stage})
    return OK if ok else FAIL


def cmd_flux(args, out: _Out) -> int:
    w = _word(args)
    g = evaluate(w)
    if not autom.is_pure(g):
        raise UsageError(f"word is not pure (ray permutation {g.perm})")
    offsets = autom.flux_offsets(g)
    payload = {"word": args.word, "via": args.via}
    if args.via == "offsets":
        flux = offsets
    else:
        windows = folding.auto_windows(g)
        results = [folding.flux_corank_vector(g, win) for win in windows]
        flux = results[0]
        payload["windows"] = [{"n": n, "m": m, "window": W, "flux": list(v)}
                              for (n, m, W), v in zip(windows, results)]
        if any(v != offsets for v in results):
            payload["flux"] = list(flux)
            payload["offsets"] = list(offsets)
            out.emit([f"corank route {results} disagrees with offsets {offsets}"], payload)
            return FAIL
    payload["flux"] = list(flux)
    out.emit([str(tuple(flux))], payload)
    return OK


def cmd_verify(args, out: _Out) -> int:
    need = MIN_R.get(args.family, 2)
    if args.r < need:
        raise UsageError(f"family {args.family} needs r >= {need} (the presentation is stated for r >= 3)")
    if args.family in ("AFV", "ALL") and args.n < 4:
        raise UsageError("--n must be at least 4")
    if args.family in ("AUX", "ALL") and args.k_max < 2:
        raise UsageError("--k-max must be at least 2")
    report = presentation.verify_all(args.family, args.r, n=args.n, n_max=args.n_max, k_max=args.k_max)
    lines = []
    counts: dict[str, list[int]] = {}
    for res in report.results:
        c = counts.setdefault(res.instance.family, [0, 0])
        c[0] += 1
        c[1] += res.holds
    for fam, (total, good) in counts.items():
        lines.append(f"{fam:20s} {good}/{total} {'PASS' if good == total else 'FAIL'}")
    for res in report.failures():
        lines.append(f"  failed {res.instance.family} {res.instance.params_dict()}: "
                     f"{res.instance.text}  [{res.witness} -> {res.image}]")
    lines.append(f"overall: {'PASS' if report.passed else 'FAIL'} ({len(report.results)} instances)")
    out.emit(lines, report.to_json())
    return OK if report.passed else FAIL


def cmd_rewrite(args, out: _Out) -> int:
    w = _word(args)
    try:
        fac, st = rewrite.rewrite_to_compact(w, allow_flux=args.allow_flux)
    except rewrite.NonzeroFluxError as exc:
        raise UsageError(f"{exc}; use --allow-flux to keep the shift tail") from None
    payload = {
        "factors": [{"base": str(f.base), "conjugator": str(f.conjugator)} for f in fac.factors],
        "residual": list(fac.residual),
        "stats": vars(st),
    }
    lines = [str(f) for f in fac.factors] or ["(no factors)"]
    if any(fac.residual):
        lines.append(f"residual shifts: {fac.residual}")
    lines.append(f"input length {st.input_length}, expanded length {st.expanded_length}, "
                 f"area {st.area}")
    out.emit(lines, payload)
    return OK


def cmd_rank(args, out: _Out) -> int:
    gens = []
    for arg in args.generators:
        gens += [parse_basis_word(part, args.r) for part in arg.split(",") if part.strip()]
    g = folding.fold(gens)
    payload = {"rank": g.rank(), "graph": g.to_json()}
    out.emit([str(g.rank())], payload)
    return OK


def cmd_growth(args, out: _Out) -> int:
    try:
        rows = rewrite.measure_growth(args.samples, args.max_len, seed=args.seed, r=args.r,
                                      tripwire=args.tripwire)
    except AssertionError as exc:
        out.emit([f"bound violated: {exc}"], {"error": str(exc)})
        return FAIL
    lines = [f"# seed={args.seed} samples={args.samples} r={args.r}",
             f"{'x':>3} {'max_len':>9} {'mean_len':>10} {'max_area':>8} {'area/x^2':>8} {'len/x^6':>10}"]
    for row in rows:
        lines.append(f"{row.x:>3} {row.max_length:>9} {row.mean_length:>10.1f} {row.max_area:>8} "
                     f"{row.max_area_ratio:>8.3f} {row.max_length_ratio:>10.4g}")
    out.emit(lines, {"seed": args.seed, "rows": [vars(x) for x in rows]})
    return OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--r", type=int, default=3, help="number of rays (default 3)")
    common.add_argument("--json", action="store_true", help="JSON output")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--ceiling", type=int, default=autom.DEFAULT_POSITION_CEILING,
                        help="position ceiling for exception tables")
    common.add_argument("--out", help="also write the output to this file")

    p = argparse.ArgumentParser(prog="houghton", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("eval", parents=[common], help="evaluate a group word")
    s.add_argument("word")
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("trivial", parents=[common], help="decide whether a word is trivial")
    s.add_argument("word")
    s.set_defaults(func=cmd_trivial)

    s = sub.add_parser("flux", parents=[common], help="flux vector of a pure word")
    s.add_argument("word")
    s.add_argument("--via", choices=("offsets", "corank"), default="offsets")
    s.set_defaults(func=cmd_flux)

    s = sub.add_parser("verify", parents=[common], help="verify relator families")
    s.add_argument("--family", choices=(*presentation.FAMILIES, "ALL"), default="P")
    s.add_argument("--n", type=int, default=4, help="loops per ray for AFV")
    s.add_argument("--n-max", type=int, default=6, help="bound for infinite families")
    s.add_argument("--k-max", type=int, default=5, help="bound for auxiliary families")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("rewrite", parents=[common], help="rewrite into compact factors")
    s.add_argument("word")
    s.add_argument("--allow-flux", action="store_true")
    s.set_defaults(func=cmd_rewrite)

    s = sub.add_parser("rank", parents=[common], help="rank of a subgroup of the free group")
    s.add_argument("generators", nargs="*",
                   help="generator words, one per argument or comma separated")
    s.set_defaults(func=cmd_rank)

    s = sub.add_parser("growth", parents=[common], help="length and area growth of rewriting")
    s.add_argument("--max-len", type=int, default=12)
    s.add_argument("--samples", type=int, default=50)
    s.add_argument("--tripwire", type=float, default=64.0)
    s.set_defaults(func=cmd_growth)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.r < 2:
        parser.error("--r must be at least 2")
    out = _Out(args)
    try:
        with autom.position_ceiling(args.ceiling):
            code = args.func(args, out)
    except (GroupWordSyntaxError, WordSyntaxError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except (autom.PositionCeilingError, OverflowError) as exc:
        print(f"runtime limit: {exc}", file=sys.stderr)
        return RUNTIME
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    out.close()
    return code


if __name__ == "__main__":
    sys.exit(main())
