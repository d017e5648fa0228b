"""Command-line interface.

Subcommands: construct, verify, distance, bound, encode, table. Output is a
single JSON document on stdout (aligned text for table with --pretty).

Exit codes: 0 success (construction or verification guaranteed), 2 parameter
or input problem, 3 constructed or loaded but not guaranteed, 4 work budget
exceeded. MDSCONV_BUDGET overrides the default enumeration budgets (minor
scans, brute-force enumeration and trellis transitions).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .codefile import CodeFile, canonical_dumps, compact_dumps
from .constructions import construct, min_field_size, n_bound, verify_mds_hypotheses
from .convcode import PolyVector, encode
from .distance import (
    DEFAULT_MAX_STATES,
    DEFAULT_MAX_TRANSITIONS,
    TrellisConfig,
    free_distance_bruteforce,
    free_distance_trellis,
    singleton_bound,
)
from .errors import BudgetExceeded, MdsConvError
from .linalg import DEFAULT_MINOR_BUDGET

EXIT_OK = 0
EXIT_PARAMS = 2
EXIT_NOT_GUARANTEED = 3
EXIT_BUDGET = 4


def _env_budget(default: int) -> int:
    raw = os.environ.get("MDSCONV_BUDGET")
    if raw is None:
        return default
    try:
        value = int(raw)
    except ValueError:
        raise MdsConvError(f"MDSCONV_BUDGET must be an integer, got {raw!r}")
    if value < 1:
        raise MdsConvError("MDSCONV_BUDGET must be positive")
    return value


def _emit(doc, pretty: bool) -> None:
    if pretty:
        sys.stdout.write(canonical_dumps(doc))
    else:
        sys.stdout.write(compact_dumps(doc) + "\n")


def _parse_repr(text: str):
    """Element repr from the command line: an integer or a JSON list."""
    try:
        return int(text)
    except ValueError:
        value = json.loads(text)
        if not isinstance(value, list):
            raise MdsConvError(f"element repr must be an int or list, got {text!r}")
        return value


def _cmd_construct(args) -> int:
    kwargs = {}
    if args.q is not None:
        kwargs["q"] = args.q
    if args.N is not None:
        kwargs["N"] = args.N
    if args.p is not None:
        kwargs["p"] = args.p
    if args.alpha is not None:
        kwargs["alpha"] = _parse_repr(args.alpha)
    if args.b is not None:
        kwargs["b"] = _parse_repr(args.b)
    if args.factors:
        kwargs["q_minus_1_factors"] = [int(f) for f in args.factors.split(",")]
    kwargs["budget"] = _env_budget(DEFAULT_MINOR_BUDGET)
    built = construct(args.family, args.n, args.k, args.delta, **kwargs)
    doc = CodeFile(
        code=built.code,
        construction=built.params,
        certificate=built.certificate,
    )
    if args.output:
        doc.save(args.output)
    _emit(doc.to_json_dict(), args.pretty)
    return EXIT_OK if built.guaranteed() else EXIT_NOT_GUARANTEED


def _cmd_verify(args) -> int:
    loaded = CodeFile.load(args.file)
    cert = verify_mds_hypotheses(loaded.code, budget=_env_budget(DEFAULT_MINOR_BUDGET))
    _emit(cert.to_json_dict(), args.pretty)
    return EXIT_OK if cert.guaranteed() else EXIT_NOT_GUARANTEED


def _cmd_distance(args) -> int:
    loaded = CodeFile.load(args.file)
    code = loaded.code
    bound = singleton_bound(code.n, code.k, code.delta)
    if args.method == "trellis":
        cfg = TrellisConfig(
            max_states=args.max_states,
            max_transitions=_env_budget(DEFAULT_MAX_TRANSITIONS),
        )
        try:
            d = free_distance_trellis(code, cfg)
        except BudgetExceeded:
            doc = {
                "free_distance": None,
                "status": "budget_exceeded",
                "singleton_bound": bound,
                "mds": "unknown",
            }
            _emit(doc, args.pretty)
            return EXIT_BUDGET
        doc = {
            "free_distance": d,
            "status": "exact",
            "singleton_bound": bound,
            "mds": d == bound,
        }
        _emit(doc, args.pretty)
        return EXIT_OK
    L = args.max_degree if args.max_degree is not None else code.delta + 3
    result = free_distance_bruteforce(code, L, budget=_env_budget(10**8))
    doc = {
        "free_distance": result.value,
        "status": "upper_bound",
        "singleton_bound": bound,
        "mds": False if result.value < bound else "unknown",
    }
    _emit(doc, args.pretty)
    return EXIT_OK


def _cmd_bound(args) -> int:
    _emit(singleton_bound(args.n, args.k, args.delta), args.pretty)
    return EXIT_OK


def _cmd_encode(args) -> int:
    loaded = CodeFile.load(args.file)
    code = loaded.code
    spec = json.loads(args.input)
    if not isinstance(spec, list):
        raise MdsConvError("input must be a JSON list of coefficient lists")
    u = PolyVector(code.field, spec)
    v = encode(code, u)
    _emit(v.to_json(), args.pretty)
    return EXIT_OK


def _cmd_table(args) -> int:
    triples = [
        (n, k, d)
        for n in range(1, args.n_max + 1)
        for k in range(1, min(args.k_max, n) + 1)
        for d in range(0, args.delta_max + 1)
    ]
    if len(triples) > 10**4:
        raise MdsConvError(
            f"range holds {len(triples)} parameter triples, limit is 10^4"
        )
    rows = []
    for n, k, d in triples:
        branch = "delta_lt_k" if d < k else "delta_ge_k"
        admissible = n >= n_bound(k, d)
        rows.append(
            {
                "n": n,
                "k": k,
                "delta": d,
                "branch": branch,
                "admissible": admissible,
                "cauchy_q": min_field_size("cauchy", n, k, d) if admissible else None,
                "exponential_N": (
                    min_field_size("exponential", n, k, d) if admissible else None
                ),
            }
        )
    if not args.pretty:
        _emit(rows, False)
        return EXIT_OK
    headers = ["n", "k", "delta", "branch", "admissible", "cauchy_q", "exponential_N"]
    table = [[str(row[h]) for h in headers] for row in rows]
    widths = [max(len(h), *(len(line[i]) for line in table)) for i, h in enumerate(headers)]
    out = ["  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip()]
    for line in table:
        out.append("  ".join(v.ljust(w) for v, w in zip(line, widths)).rstrip())
    sys.stdout.write("\n".join(out) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mdsconv",
        description="Construct, certify and measure MDS convolutional codes "
        "built from superregular matrices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a code and its certificate")
    p.add_argument("--family", choices=["cauchy", "exponential"], required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--q", type=int, help="field order override (cauchy)")
    p.add_argument("--p", type=int, help="characteristic override (exponential)")
    p.add_argument("--N", type=int, help="extension degree override (exponential)")
    p.add_argument("--alpha", help="element repr overriding the deterministic alpha")
    p.add_argument("--b", help="element repr overriding the deterministic nonsquare")
    p.add_argument("--factors", help="comma-separated prime factors of q-1")
    p.add_argument("-o", "--output", help="also write the code file here")
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("verify", help="re-run the hypothesis certificate")
    p.add_argument("file")
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("distance", help="free distance of a stored code")
    p.add_argument("file")
    p.add_argument("--method", choices=["trellis", "bruteforce"], default="trellis")
    p.add_argument("--max-degree", type=int, help="input degree cap (bruteforce)")
    p.add_argument("--max-states", type=int, default=DEFAULT_MAX_STATES)
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=_cmd_distance)

    p = sub.add_parser("bound", help="generalized Singleton bound")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=_cmd_bound)

    p = sub.add_parser("encode", help="encode a message polynomial vector")
    p.add_argument("file")
    p.add_argument("--input", required=True, help="JSON list of k coefficient lists")
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=_cmd_encode)

    p = sub.add_parser("table", help="field-size comparison over a parameter range")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--k-max", type=int, required=True)
    p.add_argument("--delta-max", type=int, required=True)
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=_cmd_table)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except MdsConvError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAMS
    except (OSError, json.JSONDecodeError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAMS


if __name__ == "__main__":
    sys.exit(main())
