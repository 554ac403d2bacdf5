"""Command line front end.

Subcommands expose the exact computations (brackets, q-series values,
representation matrices, Clebsch-Gordan tables, T-matrix blocks,
covariant-space rewrite systems) and the verification suites.  Output is
a human-readable text report or JSON; all serializations use stable term
orderings, so repeated runs produce identical bytes.

Half-integer parameters are written as rationals, e.g. ``--l 3/2``.
Invalid parameters exit with status 2, verification failures with 1.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import verify as verify_mod
from .cgc import coupled_ells, multiplet, target_label
from .covspace import (
    confluence_check,
    four_dim_presystem,
    four_dim_system,
    two_dim_system,
)
from .groupalg import t_element_closed
from .qseries import little_qjacobi, qhahn
from .reps import EVEN, MINUS, ODD, PLUS, RepLabel, rep_matrix, weight_of
from .scalars import (
    ExactScalar,
    angle_bracket,
    angle_factorial,
    eval_numeric,
    format_scalar,
    format_surd,
    kbracket,
    kfactorial,
    sq_bracket,
    sq_factorial,
    sqi_bracket,
    sqi_factorial,
)


class CliError(Exception):
    """Invalid parameters; maps to exit status 2."""


def half_int(text: str) -> Fraction:
    try:
        v = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from exc
    if (2 * v).denominator != 1:
        raise argparse.ArgumentTypeError(f"not a half-integer: {text!r}")
    return v


def q_sample(text: str) -> float:
    try:
        v = float(Fraction(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from exc
    if not 0.0 < v < 1.0:
        raise argparse.ArgumentTypeError("q samples must lie strictly in (0,1)")
    return v


def surd_text(v) -> str:
    body = format_scalar(v.coeff)
    if v.rad:
        body += " * sqrt(" + "*".join(f"[{n}]" for n in sorted(v.rad)) + ")"
    return body


def make_label(ell: Fraction, lam: int, branch, family=None) -> RepLabel:
    two_ell = int(2 * ell)
    derived = ODD if two_ell % 2 == 0 else EVEN
    if family is not None and family != derived:
        raise CliError(
            f"family {family!r} is inconsistent with l = {ell} "
            f"(dimension {two_ell + 1})"
        )
    if derived == ODD:
        return RepLabel(two_ell, lam)
    return RepLabel(two_ell, lam, branch or PLUS)


def emit(args, payload_json, payload_text: str) -> None:
    if args.format == "json":
        out = json.dumps(payload_json, indent=2, sort_keys=True)
    else:
        out = payload_text
    path = args.output
    if path is None and os.environ.get("OSPQ_OUTPUT_DIR"):
        path = os.path.join(os.environ["OSPQ_OUTPUT_DIR"], f"{args.command}.out")
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(out + "\n")
    else:
        print(out)


BRACKETS = {
    "super": kbracket,
    "super-factorial": kfactorial,
    "box": sq_bracket,
    "box-factorial": sq_factorial,
    "box-inverse": sqi_bracket,
    "box-inverse-factorial": sqi_factorial,
    "angle": angle_bracket,
    "angle-factorial": angle_factorial,
}


def cmd_bracket(args) -> int:
    value = BRACKETS[args.kind](args.n)
    numeric = {str(q): repr(eval_numeric(value, q)) for q in args.q}
    emit(
        args,
        {"kind": args.kind, "n": args.n, "value": format_scalar(value),
         "numeric": numeric},
        "\n".join(
            [f"{args.kind}({args.n}) = {format_scalar(value)}"]
            + [f"  at q={q}: {v}" for q, v in numeric.items()]
        ),
    )
    return 0


def cmd_qhahn(args) -> int:
    value = qhahn(args.M, args.x, args.alpha, args.beta, args.N)
    emit(
        args,
        {"M": args.M, "x": args.x, "alpha": args.alpha, "beta": args.beta,
         "N": args.N, "value": format_scalar(value)},
        f"qhahn(M={args.M}, x={args.x}, alpha={args.alpha}, "
        f"beta={args.beta}, N={args.N}) = {format_scalar(value)}",
    )
    return 0


def cmd_jacobi(args) -> int:
    poly = little_qjacobi(args.degree, args.alpha, args.beta)
    coeffs = [format_scalar(c) for c in poly.coeffs]
    emit(
        args,
        {"degree": args.degree, "alpha": args.alpha, "beta": args.beta,
         "coefficients": coeffs},
        "\n".join(
            [f"little q-jacobi p^({args.alpha},{args.beta})_{args.degree}:"]
            + [f"  zeta^{n}: {c}" for n, c in enumerate(coeffs)]
        ),
    )
    return 0


def cmd_rep(args) -> int:
    label = make_label(args.l, getattr(args, "lambda"), args.branch, args.family)
    mats = {gen: rep_matrix(gen, label) for gen in ("V+", "V-")}
    weights = [weight_of(label, m) for m in label.m_values()]
    payload = {
        "l": str(label.ell),
        "lambda": label.lam,
        "family": label.family,
        "branch": label.branch,
        "weights": [
            {"rational": str(w.rational_part), "eta_units": w.eta_units}
            for w in weights
        ],
        "matrices": {
            gen: [[format_surd(e) for e in row] for row in mat.rows]
            for gen, mat in mats.items()
        },
    }
    lines = [f"representation {label}"]
    lines.append(
        "H diagonal: "
        + ", ".join(
            f"{w.rational_part}" + (f" + {w.eta_units}*eta/2" if w.eta_units else "")
            for w in weights
        )
    )
    for gen, mat in mats.items():
        lines.append(f"{gen}:")
        for row in mat.rows:
            lines.append("  [" + ", ".join(surd_text(e) for e in row) + "]")
    emit(args, payload, "\n".join(lines))
    return 0


def cmd_cgc(args) -> int:
    lam = getattr(args, "lambda")
    l1 = make_label(args.l1, lam, args.branch1, args.fam1)
    l2 = make_label(args.l2, lam, args.branch2, args.fam2)
    try:
        ells = coupled_ells(l1, l2)
        for ell in ells:
            target_label(l1, l2, ell)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    if args.l is not None:
        if args.l not in ells:
            raise CliError(f"l = {args.l} is not in the coupled range")
        ells = [args.l]
    blocks = [multiplet(l1, l2, ell) for ell in ells]
    lines = [f"{l1} (x) {l2}"]
    for tab in blocks:
        lines.append(f"block l = {tab.ell} (Lambda = {tab.Lambda}):")
        for (m1, m2, m), c in sorted(tab.entries.items(), reverse=True):
            lines.append(f"  ({m1}, {m2} | {m}): {surd_text(c)}")
    emit(args, {"blocks": [tab.to_json() for tab in blocks]}, "\n".join(lines))
    return 0


def cmd_tmat(args) -> int:
    ell = args.l
    if int(2 * ell) % 2 == 0:
        raise CliError("T-matrix blocks are computed for the even family "
                       "(half-odd-integer l)")
    lam = getattr(args, "lambda")
    branch = args.branch or PLUS
    ms = [ell - k for k in range(int(2 * ell) + 1)]
    entries = []
    for mp in ms:
        for m in ms:
            el = t_element_closed(ell, mp, m, lam, branch)
            entries.append(
                {"mp": str(mp), "m": str(m), "element": json.loads(el.to_json())}
            )
    lines = [f"T-matrix block l = {ell}, lambda = {lam}, branch = {branch}"]
    for e in entries:
        lines.append(f"T[{e['mp']}, {e['m']}]:")
        lines.append("  " + json.dumps(e["element"], sort_keys=True))
    emit(args, {"l": str(ell), "lambda": lam, "branch": branch,
                "entries": entries}, "\n".join(lines))
    return 0


def cmd_covspace(args) -> int:
    lam = getattr(args, "lambda")
    if args.l == Fraction(1, 2):
        sys_ = two_dim_system(lam)
    elif args.l == Fraction(3, 2):
        if lam != 0:
            raise CliError("the four-dimensional preset ships for lambda = 0")
        sys_ = four_dim_presystem() if args.pre else four_dim_system()
    else:
        raise CliError("shipped presets cover l = 1/2 and l = 3/2")
    conf = confluence_check(sys_)
    payload = {"system": json.loads(sys_.to_json()), "confluent": conf["ok"],
               "divergent_words": [f["word"] for f in conf["failures"]]}
    lines = [f"covariant space l = {args.l}, lambda = {lam}"
             + (" (pre-constraint)" if args.pre else "")]
    for lhs, rhs in sorted(sys_.rules.items()):
        lines.append(
            "  " + "".join(sys_.names[g] for g in lhs) + " -> " + repr(rhs)
        )
    lines.append(f"confluent at degree 3: {conf['ok']}")
    if conf["failures"]:
        lines.append("divergent words: "
                     + ", ".join(f["word"] for f in conf["failures"]))
    emit(args, payload, "\n".join(lines))
    return 0


def cmd_verify(args) -> int:
    names = list(verify_mod.SUITES) if args.suite == "all" else [args.suite]
    reports = [verify_mod.run_suite(n) for n in names]
    lines = [
        f"{r['name']}: {'PASS' if r['ok'] else 'FAIL'} "
        f"({r['count']} cases, {r['elapsed']:.2f}s)"
        + (f" {r['detail']}" if r["detail"] and not r["ok"] else "")
        for r in reports
    ]
    emit(args, {"reports": reports}, "\n".join(lines))
    return 0 if all(r["ok"] for r in reports) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ospq",
        description="Exact computations for U_q[osp(1/2)] and OSp_q(1/2).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--output", default=None, help="write to file")

    p = sub.add_parser("bracket", help="bracket symbols and factorials")
    p.add_argument("--kind", choices=sorted(BRACKETS), default="super")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=q_sample, action="append", default=[])
    common(p)
    p.set_defaults(func=cmd_bracket)

    p = sub.add_parser("qhahn", help="Q-Hahn polynomial value at Q = -q")
    for flag in ("M", "x", "alpha", "beta", "N"):
        p.add_argument(f"--{flag}", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_qhahn)

    p = sub.add_parser("jacobi", help="little Q-Jacobi polynomial at Q = -q")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--alpha", type=int, required=True)
    p.add_argument("--beta", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_jacobi)

    p = sub.add_parser("rep", help="irreducible representation matrices")
    p.add_argument("--l", type=half_int, required=True)
    p.add_argument("--lambda", type=int, choices=(0, 1), default=0)
    p.add_argument("--family", choices=(ODD, EVEN), default=None)
    p.add_argument("--branch", choices=(PLUS, MINUS), default=None)
    common(p)
    p.set_defaults(func=cmd_rep)

    p = sub.add_parser("cgc", help="Clebsch-Gordan coefficient tables")
    p.add_argument("--l1", type=half_int, required=True)
    p.add_argument("--l2", type=half_int, required=True)
    p.add_argument("--fam1", choices=(ODD, EVEN), default=None)
    p.add_argument("--fam2", choices=(ODD, EVEN), default=None)
    p.add_argument("--branch1", choices=(PLUS, MINUS), default=PLUS)
    p.add_argument("--branch2", choices=(PLUS, MINUS), default=MINUS)
    p.add_argument("--lambda", type=int, choices=(0, 1), default=0)
    p.add_argument("--l", type=half_int, default=None,
                   help="restrict to one coupled block")
    common(p)
    p.set_defaults(func=cmd_cgc)

    p = sub.add_parser("tmat", help="supergroup T-matrix block")
    p.add_argument("--l", type=half_int, required=True)
    p.add_argument("--lambda", type=int, choices=(0, 1), default=0)
    p.add_argument("--branch", choices=(PLUS, MINUS), default=PLUS)
    common(p)
    p.set_defaults(func=cmd_tmat)

    p = sub.add_parser("covspace", help="covariant space rewrite system")
    p.add_argument("--l", type=half_int, required=True)
    p.add_argument("--lambda", type=int, choices=(0, 1), default=0)
    p.add_argument("--pre", action="store_true",
                   help="l = 3/2 system before the L = 0 constraint")
    common(p)
    p.set_defaults(func=cmd_covspace)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("suite", choices=["all"] + sorted(verify_mod.SUITES))
    common(p)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
