"""Command line interface.

Subcommands:

  eval       evaluate strata Z[k] or the weighted polynomial Z_c
  hessian    print the Hessian of a derivative of Z_c
  spectrum   print the eigenvalue signature of that Hessian
  verify     run verification campaigns over a corpus, or one check
  corpus     list the matroids a corpus spec expands to
  mason      count-sequence log-concavity report for one matroid

Exit codes: 0 success / all checks passed, 1 a verification check failed,
2 usage or configuration error, 3 resource limit exceeded.

Scalar arguments are rationals written as "num/den" (or plain integers).
Floats are accepted only with --mode float.  All JSON output is printed
with sorted keys so identical inputs give byte-identical output; timing
is only written to --out report files, never to stdout.
"""
from __future__ import annotations

import argparse
import json
import sys

from .corpus import generate_corpus, parse_corpus_spec
from .errors import (
    IndeterminateSignatureError,
    InvalidParametersError,
    NotAMatroidError,
    ParseError,
    PottsHodgeError,
    ResourceLimitError,
)
from .matroids import from_json as matroid_from_json
from .potts import (
    hessian,
    is_identically_zero,
    is_strictly_log_concave,
    validate_coeffs,
    z_weighted_eval,
    zk_all,
    zk_eval,
)
from .scalars import EXACT, FLOAT, parse_rational, scalar_to_json, vector_to_json
from .spectral import float_eigenvalues, signature
from .verify import (
    ALL_THEOREMS,
    CampaignConfig,
    FAIL,
    TAG_COUNT_LOG_CONCAVITY,
    TAG_DEGREE_TWO,
    TAG_DERIVATIVE_ONE_POSITIVE,
    TAG_LOG_CONCAVITY,
    TAG_ONE_POSITIVE,
    TAG_SIMPLIFICATION,
    TAG_STRATA_ULC,
    VerificationReport,
    check_count_log_concavity,
    check_degree_two,
    check_derivative_one_positive,
    check_log_concavity_at,
    check_one_positive,
    check_simplification_bound,
    check_strata_ultra_log_concave,
    run_campaign,
    summarize,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


def _parse_scalar(text, mode):
    if mode == EXACT:
        return parse_rational(text)
    try:
        return parse_rational(text)
    except ParseError:
        try:
            return float(text)
        except ValueError as exc:
            raise ParseError(f"cannot parse scalar {text!r}") from exc


def _parse_vector(text, mode, name):
    if not text.strip():
        raise ParseError(f"{name} must be a nonempty comma-separated list")
    return tuple(_parse_scalar(tok.strip(), mode) for tok in text.split(","))


def _parse_alpha(text):
    try:
        return tuple(int(tok.strip()) for tok in text.split(","))
    except ValueError as exc:
        raise ParseError(f"multi-index entries must be integers: {text!r}") from exc


def _load_matroid(arg):
    """--matroid accepts inline JSON (starts with '{') or a file path."""
    text = arg.strip()
    if not text.startswith("{"):
        try:
            with open(arg, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ParseError(f"cannot read matroid file {arg!r}: {exc}") from exc
    return matroid_from_json(text)


def _dump_json(obj):
    print(json.dumps(obj, sort_keys=True, indent=2))


def _format_scalar(x):
    if isinstance(x, float):
        return repr(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


# ------------------------------------------------------------ commands


def _cmd_eval(args):
    matroid = _load_matroid(args.matroid)
    mode = args.mode
    q = _parse_scalar(args.q, mode)
    w = _parse_vector(args.w, mode, "--w")
    if args.c is not None:
        c = _parse_vector(args.c, mode, "--c")
        value = z_weighted_eval(matroid, c, q, w, mode)
        if args.json:
            _dump_json({"value": scalar_to_json(value)})
        else:
            print(_format_scalar(value))
        return EXIT_OK
    if args.k is not None:
        value = zk_eval(matroid, args.k, q, w, mode)
        if args.json:
            _dump_json({"k": args.k, "value": scalar_to_json(value)})
        else:
            print(_format_scalar(value))
        return EXIT_OK
    strata = zk_all(matroid, q, w, mode)
    if args.json:
        _dump_json({"strata": vector_to_json(strata)})
    else:
        for k, value in enumerate(strata):
            print(f"Z[{k}] = {_format_scalar(value)}")
    return EXIT_OK


def _hessian_inputs(args):
    matroid = _load_matroid(args.matroid)
    mode = args.mode
    q = _parse_scalar(args.q, mode)
    w = _parse_vector(args.w, mode, "--w")
    if args.c is not None:
        c = _parse_vector(args.c, mode, "--c")
    else:
        c = tuple([1] * (matroid.n + 1)) if mode == FLOAT else \
            tuple(parse_rational("1") for _ in range(matroid.n + 1))
    alpha = _parse_alpha(args.alpha) if args.alpha is not None else \
        tuple([0] * (matroid.n + 1))
    return matroid, c, q, alpha, w


def _cmd_hessian(args):
    matroid, c, q, alpha, w = _hessian_inputs(args)
    mat = hessian(matroid, c, q, alpha, w, args.mode)
    if args.json:
        _dump_json(mat.to_json())
    else:
        for row in mat.entries:
            print("  ".join(_format_scalar(x) for x in row))
    return EXIT_OK


def _cmd_spectrum(args):
    matroid, c, q, alpha, w = _hessian_inputs(args)
    zero = args.mode == EXACT and is_identically_zero(matroid, c, q, alpha)
    mat = hessian(matroid, c, q, alpha, w, args.mode)
    sig = signature(mat)
    eigs = [] if zero else list(float_eigenvalues(mat))
    payload = {
        "signature": [sig.n_pos, sig.n_neg, sig.n_zero],
        "identically_zero": zero,
        "eigenvalues_float": eigs,
    }
    if args.json:
        _dump_json(payload)
    else:
        if zero:
            print("the derivative is identically zero; its Hessian is the zero matrix")
        print(f"signature: {sig.n_pos} positive, {sig.n_neg} negative, {sig.n_zero} zero")
        if not zero:
            print("eigenvalues (float, diagnostic): "
                  + "[" + ", ".join(f"{e:.6g}" for e in eigs) + "]")
    return EXIT_OK


_SINGLE_CHECKS = {
    TAG_ONE_POSITIVE: ("q", "w"),
    TAG_DERIVATIVE_ONE_POSITIVE: ("c", "q", "alpha", "w"),
    TAG_DEGREE_TWO: ("c", "q", "w"),
    TAG_STRATA_ULC: ("q", "w"),
    TAG_COUNT_LOG_CONCAVITY: (),
    TAG_SIMPLIFICATION: (),
    TAG_LOG_CONCAVITY: ("c", "q", "w"),
}


def _run_single_check(args):
    if len(args.theorem) != 1:
        raise InvalidParametersError("--matroid verification takes exactly one --theorem")
    tag = args.theorem[0]
    needed = _SINGLE_CHECKS[tag]
    for name in needed:
        if getattr(args, name) is None:
            raise InvalidParametersError(f"theorem {tag} needs --{name}")
    matroid = _load_matroid(args.matroid)
    q = _parse_scalar(args.q, EXACT) if "q" in needed else None
    w = _parse_vector(args.w, EXACT, "--w") if "w" in needed else None
    c = _parse_vector(args.c, EXACT, "--c") if "c" in needed else None
    if c is not None:
        # configuration is validated before any check runs
        validate_coeffs(c, matroid.n, EXACT)
        if tag in (TAG_DERIVATIVE_ONE_POSITIVE, TAG_DEGREE_TWO) and not is_strictly_log_concave(c):
            raise InvalidParametersError(
                "coefficient sequence must be strictly log-concave for this theorem")
    if tag == TAG_ONE_POSITIVE:
        check = check_one_positive(matroid, q, w)
    elif tag == TAG_DERIVATIVE_ONE_POSITIVE:
        check = check_derivative_one_positive(matroid, c, q, _parse_alpha(args.alpha), w)
    elif tag == TAG_DEGREE_TWO:
        check = check_degree_two(matroid, c, q, w)
    elif tag == TAG_STRATA_ULC:
        check = check_strata_ultra_log_concave(matroid, q, w)
    elif tag == TAG_COUNT_LOG_CONCAVITY:
        check = check_count_log_concavity(matroid)
    elif tag == TAG_SIMPLIFICATION:
        check = check_simplification_bound(matroid)
    else:
        check = check_log_concavity_at(matroid, c, q, w)
    checks = (check,)
    return VerificationReport(
        campaign={"name": "single-check", "theorems": [tag]},
        checks=checks, summary=summarize(checks))


def _report_text(report):
    lines = []
    for tag, counts in report.summary.get("by_theorem", {}).items():
        parts = ", ".join(f"{counts[v]} {v}" for v in ("pass", "fail", "vacuous", "not-applicable")
                          if counts.get(v))
        lines.append(f"{tag}: {parts}")
    for check in report.checks:
        if check.verdict == FAIL:
            lines.append(f"FAIL {check.theorem}: witness={check.witness}")
    total = report.summary.get("total", 0)
    fails = report.summary.get(FAIL, 0)
    lines.append(f"{total} checks: " + ("all passed" if fails == 0 else f"{fails} FAILED"))
    return "\n".join(lines)


def _parse_q_grid(args):
    if args.q_grid is None:
        return ()
    grid = tuple(_parse_vector(args.q_grid, EXACT, "--q-grid"))
    if not grid or any(q <= 0 for q in grid):
        raise InvalidParametersError("--q-grid values must be positive rationals")
    return grid


def _single_check_args_given(args):
    return any(getattr(args, name) is not None for name in ("c", "q", "alpha", "w"))


def _cmd_verify(args):
    if args.matroid is not None and _single_check_args_given(args):
        if args.q_grid is not None:
            raise InvalidParametersError("--q-grid applies to campaigns; use --q "
                                         "for a single check")
        report = _run_single_check(args)
    else:
        if args.matroid is not None:
            # an explicit matroid with no point arguments: campaign of one
            corpus = [_load_matroid(args.matroid)]
            corpus_spec = "explicit-matroid"
        else:
            corpus_spec = args.corpus or "default"
            corpus = generate_corpus(parse_corpus_spec(corpus_spec))
        theorems = tuple(args.theorem) if args.theorem else ALL_THEOREMS
        config = CampaignConfig(theorems=theorems, seed=args.seed, samples=args.samples,
                                workers=args.workers, corpus_label=corpus_spec,
                                q_grid=_parse_q_grid(args))
        report = run_campaign(corpus, config)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(report.to_json(include_timing=True), fh, sort_keys=True, indent=2)
            fh.write("\n")
    if args.json:
        _dump_json(report.to_json())
    else:
        print(_report_text(report))
    return EXIT_OK if report.ok else EXIT_CHECK_FAILED


def _cmd_corpus(args):
    corpus = generate_corpus(parse_corpus_spec(args.spec))
    if args.json:
        _dump_json({"count": len(corpus), "matroids": [m.to_json() for m in corpus]})
    else:
        for i, m in enumerate(corpus):
            print(f"[{i}] {m}")
        print(f"{len(corpus)} matroids")
    return EXIT_OK


def _cmd_mason(args):
    matroid = _load_matroid(args.matroid)
    check = check_count_log_concavity(matroid)
    if args.json:
        _dump_json(check.to_json())
    else:
        counts = check.witness["counts"]
        print(f"independent-set counts: {counts}")
        print(f"verdict: {check.verdict}")
        for note in check.annotations:
            print(f"  note: {note}")
        for violation in (check.witness or {}).get("violations", ()):
            print(f"  violation: {violation}")
    return EXIT_OK if check.verdict != FAIL else EXIT_CHECK_FAILED


# -------------------------------------------------------------- parser


def _add_point_args(sub, with_c=True, with_alpha=False):
    sub.add_argument("--matroid", required=True,
                     help="matroid JSON (inline or a file path)")
    sub.add_argument("--q", required=True, help="positive rational, e.g. 1/2")
    sub.add_argument("--w", required=True, help="comma-separated rationals")
    if with_c:
        sub.add_argument("--c", help="coefficient sequence c_0..c_n")
    if with_alpha:
        sub.add_argument("--alpha", help="differentiation multi-index over w_0..w_n")
    sub.add_argument("--mode", choices=(EXACT, FLOAT), default=EXACT)
    sub.add_argument("--json", action="store_true", help="machine-readable output")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="potts-hodge",
        description="exact spectral checks for matroid rank-generating polynomials")
    subs = parser.add_subparsers(dest="command", required=True)

    p_eval = subs.add_parser("eval", help="evaluate strata or the weighted polynomial")
    _add_point_args(p_eval)
    p_eval.add_argument("--k", type=int, help="print a single stratum Z[k]")
    p_eval.set_defaults(fn=_cmd_eval)

    p_hess = subs.add_parser("hessian", help="Hessian of a derivative of Z_c")
    _add_point_args(p_hess, with_alpha=True)
    p_hess.set_defaults(fn=_cmd_hessian)

    p_spec = subs.add_parser("spectrum", help="signature of that Hessian")
    _add_point_args(p_spec, with_alpha=True)
    p_spec.set_defaults(fn=_cmd_spectrum)

    p_verify = subs.add_parser("verify", help="run verification campaigns")
    p_verify.add_argument("--corpus", help="corpus spec, e.g. 'default' or 'uniform,n<=4'")
    p_verify.add_argument("--theorem", action="append", choices=ALL_THEOREMS,
                          help="restrict to one theorem tag (repeatable)")
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--samples", "--trials", type=int, default=3,
                          help="sample count per randomized stream")
    p_verify.add_argument("--q-grid", dest="q_grid",
                          help="comma-separated q values replacing the default grid")
    p_verify.add_argument("--workers", type=int, default=1)
    p_verify.add_argument("--matroid", help="check one explicit input instead of a corpus")
    p_verify.add_argument("--c", help="coefficient sequence for single-input checks")
    p_verify.add_argument("--q", help="q for single-input checks")
    p_verify.add_argument("--alpha", help="multi-index for single-input checks")
    p_verify.add_argument("--w", help="point for single-input checks")
    p_verify.add_argument("--json", action="store_true")
    p_verify.add_argument("--out", help="also write the report (with timing) to a file")
    p_verify.set_defaults(fn=_cmd_verify)

    p_corpus = subs.add_parser("corpus", help="list the matroids in a corpus")
    p_corpus.add_argument("--spec", default="default")
    p_corpus.add_argument("--json", action="store_true")
    p_corpus.set_defaults(fn=_cmd_corpus)

    p_mason = subs.add_parser("mason", help="count log-concavity report for one matroid")
    p_mason.add_argument("--matroid", required=True)
    p_mason.add_argument("--json", action="store_true")
    p_mason.set_defaults(fn=_cmd_mason)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ParseError, InvalidParametersError, NotAMatroidError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except IndeterminateSignatureError as exc:
        print(f"indeterminate: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    except PottsHodgeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
