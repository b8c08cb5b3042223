"""Command-line front end: bounds, verification sweeps, the constant table and certification.

Exit codes: 0 when every report passes, 1 when any report fails, 2 on a usage
or configuration error.  Output is deterministic for a given configuration;
wall-clock timings are only emitted with ``--timing``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from typing import Any, Sequence

from . import __version__
from .reports import FAIL, PASS, VerificationReport, _clean, fmt_float, sort_reports, to_csv, to_json, to_text

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

VARIANT_ALIASES = {"thm1": "theorem1", "thm2": "theorem2", "theorem1": "theorem1", "theorem2": "theorem2"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _int_list(s: str) -> list[int]:
    try:
        return [int(x) for x in s.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {s!r}") from None


def _float_list(s: str) -> list[float]:
    try:
        return [float(x) for x in s.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {s!r}") from None


def _variant(s: str) -> str:
    try:
        return VARIANT_ALIASES[s]
    except KeyError:
        raise argparse.ArgumentTypeError(f"unknown variant {s!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--output", help="write the report here instead of stdout")
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--config", help="JSON file of defaults; explicit flags take precedence")
    common.add_argument("--timing", action="store_true", help="include runtime_ms (breaks byte-identical output)")

    p = _Parser(prog="burgess-bounds", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    b = sub.add_parser("bound", parents=[common], help="evaluate the explicit bound")
    g = b.add_mutually_exclusive_group()
    g.add_argument("--q", type=int)
    g.add_argument("--log10-q", type=float)
    g.add_argument("--log-q", type=float)
    b.add_argument("--r", type=int, default=2)
    n = b.add_mutually_exclusive_group()
    n.add_argument("--N", type=int)
    n.add_argument("--theta", type=float)
    b.add_argument("--variant", type=_variant, default="theorem2")
    b.add_argument("--surrogate", action="store_true", help="use only log q, never the factorization")
    b.add_argument("--C", type=float, help="override the constant C(r)")

    w = sub.add_parser("verify-weil", parents=[common], help="Weil-type moment inequality sweep")
    w.add_argument("--q-min", type=int, default=1)
    w.add_argument("--q-max", type=int, default=300)
    w.add_argument("--r", type=_int_list, default=[2, 3])
    w.add_argument("--B", type=_float_list, default=[2, 2.5, 3, 5, 10])
    w.add_argument("--floor-form", action="store_true", help="use floor(B) on the right-hand side")

    lm = sub.add_parser("verify-lemmas", parents=[common], help="exact checks of the auxiliary lemmas")
    lm.add_argument("--lemmas", default="sq,complete,mobius,phi,vA",
                    help="comma-separated subset of sq,complete,mobius,phi,vA")
    lm.add_argument("--N-max", type=int, default=10**4)
    lm.add_argument("--trials", type=int, default=200)
    lm.add_argument("--complete-trials", type=int, default=500)
    lm.add_argument("--sq-q-max", type=_int_list, default=[200, 100], help="q limits for r=2 and r=3")

    sub.add_parser("table1", parents=[common], help="recompute C(r) and D(r) for r = 2..10")

    c = sub.add_parser("certify", parents=[common], help="interval certification of the numeric claims")
    c.add_argument("--claims", help="comma-separated claim ids (default: all)")

    cs = sub.add_parser("charsum", parents=[common], help="partial character sum")
    cs.add_argument("--q", type=int, required=True)
    cs.add_argument("--char-index", type=int, default=0)
    cs.add_argument("--M", type=int, default=0)
    cs.add_argument("--N", type=int, required=True)
    cs.add_argument("--all-characters", action="store_true",
                    help="index into all characters mod q instead of the primitive ones")

    ex = sub.add_parser("explore", parents=[common], help="|S_chi| / bound at small q (no pass/fail)")
    ex.add_argument("--q", type=int, required=True)
    ex.add_argument("--r", type=int, default=2)
    ex.add_argument("--M", type=int, default=0)
    ex.add_argument("--N", type=int, required=True)
    ex.add_argument("--variant", type=_variant, default="theorem2")
    return p


def _load_config(path: str | None) -> dict[str, Any]:
    if not path:
        return {}
    try:
        with open(path, encoding="utf-8") as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    if not isinstance(cfg, dict):
        raise UsageError("config file must hold a JSON object")
    return {k.replace("-", "_"): v for k, v in cfg.items()}


def parse_args(argv: Sequence[str]) -> argparse.Namespace:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = _load_config(args.config)
    if cfg:
        sub = parser._subparsers._group_actions[0].choices[args.command]
        known = {a.dest for a in sub._actions}
        unknown = set(cfg) - known
        if unknown:
            raise UsageError(f"unknown config keys {sorted(unknown)}")
        for a in sub._actions:
            if a.dest in cfg and a.type is not None and isinstance(cfg[a.dest], str):
                cfg[a.dest] = a.type(cfg[a.dest])
        sub.set_defaults(**cfg)
        args = parser.parse_args(argv)
    if args.workers < 1:
        raise UsageError("--workers must be at least 1")
    return args


# --- emission -------------------------------------------------------------------

def _header(args: argparse.Namespace) -> dict[str, Any]:
    skip = {"output", "format", "config", "timing", "workers", "seed"}
    params = {k: v for k, v in sorted(vars(args).items()) if k not in skip and k != "command"}
    return {"command": args.command, "version": __version__, "seed": args.seed, "params": params}


def _rows_text(header: dict, rows: list[dict]) -> str:
    lines = ["# " + " ".join(f"{k}={v}" for k, v in _clean(header).items())]
    if rows:
        cols = list(rows[0])
        cells = [[json.dumps(_clean(r.get(c))) if isinstance(r.get(c), (list, dict)) else str(_clean(r.get(c)))
                  for c in cols] for r in rows]
        widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
        lines.append("  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip())
        lines.extend("  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip() for row in cells)
    return "\n".join(lines) + "\n"


def _rows_csv(header: dict, rows: list[dict]) -> str:
    buf = io.StringIO()
    buf.write("# " + json.dumps(_clean(header), sort_keys=True) + "\n")
    if rows:
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: json.dumps(_clean(v), sort_keys=True) if isinstance(v, (list, dict)) else _clean(v)
                        for k, v in r.items()})
    return buf.getvalue()


def render_rows(header: dict, rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps({"header": _clean(header), "rows": _clean(rows)}, indent=1) + "\n"
    if fmt == "csv":
        return _rows_csv(header, rows)
    return _rows_text(header, rows)


def render_reports(header: dict, reports: list[VerificationReport], fmt: str) -> str:
    return {"json": to_json, "csv": to_csv, "text": to_text}[fmt](header, reports)


def _emit(args: argparse.Namespace, text: str) -> None:
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _finish_reports(args, reports: list[VerificationReport], sort: bool = True) -> int:
    reports = sort_reports(reports) if sort else list(reports)
    for r in reports:
        if not args.timing:
            r.runtime_ms = None
        if r.seed is None:
            r.seed = args.seed
    _emit(args, render_reports(_header(args), reports, args.format))
    return EXIT_FAIL if any(r.status == FAIL for r in reports) else EXIT_OK


def _timed(fn, *a, **kw):
    t0 = time.perf_counter()
    out = fn(*a, **kw)
    ms = (time.perf_counter() - t0) * 1000
    for r in out:
        if r.runtime_ms is None:
            r.runtime_ms = ms / max(len(out), 1)
    return out


# --- subcommands ----------------------------------------------------------------

def cmd_bound(args) -> int:
    from .burgess import evaluate_bound, make_context, mp

    if args.q is None and args.log10_q is None and args.log_q is None:
        raise UsageError("give one of --q, --log10-q, --log-q")
    if args.N is None and args.theta is None:
        raise UsageError("give --N or --theta")
    if args.q is not None:
        ctx = make_context(args.r, q=args.q, variant=args.variant, surrogate=args.surrogate or None, C=args.C)
    else:
        L = mp.mpf(args.log_q) if args.log_q is not None else mp.mpf(args.log10_q) * mp.log(10)
        ctx = make_context(args.r, log_q=L, variant=args.variant, surrogate=True, C=args.C)
    ev = evaluate_bound(ctx, N=args.N, theta=args.theta)
    ln10 = mp.log(10)
    log10_b = ev.bound.log() / ln10
    row = {
        "variant": ctx.variant, "mode": ctx.mode, "r": ctx.r,
        "log10_q": ctx.log_q / ln10, "log10_N": ev.log_N / ln10,
        "log10_bound": log10_b,
        "bound": float(ev.bound) if log10_b < 300 else None,
        "applicable": ev.applicable, "reasons": list(ev.reasons), "notes": list(ev.notes),
        "context": {
            "q": int(ctx.q_exact) if ctx.q_exact is not None and not ctx.surrogate_mode else None,
            "C": ctx.C, "a_r": ctx.a_r, "log10_threshold_q": ctx.threshold.to_mpf() / ln10,
            "omega": ctx.omega, "log_m_r": ctx.log_m_r, "log_q_over_phi": ctx.log_q_over_phi,
            "phi_star": float(ctx.phi_star), "log10_B": mp.log(ctx.B) / ln10,
            "kappa": ctx.kappa, "beta": ctx.beta, "log10_T": ctx.log_T / ln10,
            "log10_f": mp.log(ctx.f) / ln10,
        },
    }
    row["context"] = {k: (fmt_float(v) if not isinstance(v, (int, type(None))) else v)
                      for k, v in row["context"].items()}
    _emit(args, render_rows(_header(args), [row], args.format))
    return EXIT_OK


def cmd_verify_weil(args) -> int:
    from .weil import check_weil_sweep

    if args.q_min < 1 or args.q_max < args.q_min:
        raise UsageError("need 1 <= q-min <= q-max")
    if not args.r or not args.B:
        raise UsageError("r and B sets must be non-empty")
    if min(args.r) < 2 or min(args.B) < 2:
        raise UsageError("need r >= 2 and B >= 2")
    reps = _timed(check_weil_sweep, range(args.q_min, args.q_max + 1), args.r, args.B,
                  workers=args.workers, floor_form=args.floor_form)
    return _finish_reports(args, reps, sort=False)


def cmd_verify_lemmas(args) -> int:
    from .arithmetic import is_cubefree
    from .certify import verify_mobius_lemma, verify_phi_sum_lemma, verify_vA_lemmas
    from .weil import check_lemma_2_2_random, check_sq_bounds

    wanted = [x.strip() for x in args.lemmas.split(",") if x.strip()]
    valid = {"sq", "complete", "mobius", "phi", "vA"}
    if not wanted or set(wanted) - valid:
        raise UsageError(f"--lemmas must be a subset of {sorted(valid)}")
    reps: list[VerificationReport] = []
    if "sq" in wanted:
        limits = dict(zip((2, 3), args.sq_q_max))
        for r, qmax in limits.items():
            for q in range(2, qmax + 1):
                if r >= 3 and not is_cubefree(q):
                    continue
                for B in range(2, 7):
                    if B * B < q:
                        reps.extend(check_sq_bounds(q, r, B))
    if "complete" in wanted:
        reps.extend(_timed(check_lemma_2_2_random, args.complete_trials, args.seed))
    if "mobius" in wanted:
        reps.extend(_timed(verify_mobius_lemma, args.N_max))
    if "phi" in wanted:
        reps.extend(_timed(verify_phi_sum_lemma, args.N_max))
    if "vA" in wanted:
        reps.extend(_timed(verify_vA_lemmas, args.trials, args.seed))
    return _finish_reports(args, reps)


def table1_reports() -> list[VerificationReport]:
    from .burgess import table1

    reps = []
    for row in table1():
        for name in ("C", "D"):
            got = row[f"{name}_rounded"]
            want = row[f"{name}_printed"]
            diff = abs(got - want)
            margin = float(0.001 - diff) if diff < 0.001 else None
            reps.append(VerificationReport(
                f"table1_{name}", "burgess",
                {"r": row["r"], "computed": float(row[name]), "computed_rounded": float(got),
                 "printed": float(want), "abs_diff": float(diff)},
                PASS if diff <= 0.001 else FAIL, margin, float(0.001 - diff),
                notes="rounded up to 3 decimals", sort_key=(row["r"],)))
    return reps


def cmd_table1(args) -> int:
    return _finish_reports(args, table1_reports())


def delta_report() -> VerificationReport:
    from .certify import IntervalReal, compute_delta

    d = compute_delta()
    width = float(d.width)
    ok = width < 1e-8 and IntervalReal("0.954417", "0.954427").contains(d)
    return VerificationReport("delta_enclosure", "certify",
                              {"lo": float(d.lo), "hi": float(d.hi), "width": width},
                              PASS if ok else FAIL, 1e-8 - width, 1e-8 - width, mode="interval",
                              notes="margin is 1e-8 minus the enclosure width")


def cmd_certify(args) -> int:
    from .certify import CLAIMS, verify_section5_claims

    ids = None
    if args.claims:
        ids = [c.strip() for c in args.claims.split(",") if c.strip()]
        bad = [c for c in ids if c not in CLAIMS]
        if bad:
            raise UsageError(f"unknown claim ids {bad}; known: {sorted(CLAIMS)}")
    reps = verify_section5_claims(workers=min(args.workers, len(CLAIMS)), claim_ids=ids)
    if ids is None:
        reps.append(_timed(lambda: [delta_report()])[0])
    return _finish_reports(args, reps)


def cmd_charsum(args) -> int:
    from .characters import char_sum, char_sum_exact_counts, conductor, enumerate_characters, root_sum_is_zero

    if args.q < 1 or args.N < 0:
        raise UsageError("need q >= 1 and N >= 0")
    chars = enumerate_characters(args.q, primitive_only=not args.all_characters)
    if not 0 <= args.char_index < len(chars):
        raise UsageError(f"char-index must be in [0, {len(chars)}) for q={args.q}")
    chi = chars[args.char_index]
    s = char_sum(chi, args.M, args.N)
    exact_zero = root_sum_is_zero(char_sum_exact_counts(chi, args.M, args.N))
    row = {"q": args.q, "char_index": args.char_index, "exponents": list(chi.exponents),
           "conductor": conductor(chi),
           "order": chi.order, "M": args.M, "N": args.N,
           "real": 0.0 if exact_zero else s.real, "imag": 0.0 if exact_zero else s.imag,
           "abs": 0.0 if exact_zero else abs(s), "exact_zero": exact_zero}
    _emit(args, render_rows(_header(args), [row], args.format))
    return EXIT_OK


def cmd_explore(args) -> int:
    from .burgess import explore_ratio
    from .characters import enumerate_characters

    chars = enumerate_characters(args.q, primitive_only=True)
    if not chars:
        raise UsageError(f"no primitive characters mod {args.q}")
    rows = []
    for k, chi in enumerate(chars):
        row = explore_ratio(chi, args.M, args.N, args.r, args.variant)
        rows.append({"char_index": k, **row})
    _emit(args, render_rows(_header(args), rows, args.format))
    return EXIT_OK


COMMANDS = {
    "bound": cmd_bound,
    "verify-weil": cmd_verify_weil,
    "verify-lemmas": cmd_verify_lemmas,
    "table1": cmd_table1,
    "certify": cmd_certify,
    "charsum": cmd_charsum,
    "explore": cmd_explore,
}


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = parse_args(argv)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        sys.stderr.write(f"burgess-bounds: error: {exc}\n")
        return EXIT_USAGE
    except (ValueError, TypeError, KeyError) as exc:
        sys.stderr.write(f"burgess-bounds: error: {exc}\n")
        return EXIT_USAGE
    except BrokenPipeError:
        # reader went away (e.g. piped into head); silence the flush at exit
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
