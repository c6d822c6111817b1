"""Command line front end.

Exit codes: 0 success, 1 a claim failed to verify, 2 usage or data error.
"""
import argparse
import sys
from pathlib import Path

import numpy as np

from . import data_io
from .action import expand_orbit, apply_word
from .certificates import verify_certificate, verify_corpus
from .errors import (EnriquesError, InvariantViolation, ProofStepFailed, SchemaError,
                     UnknownGenerator, UnresolvableCurve)
from .halffibers import build_hf_set
from .solver import compute_cnd

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _case_path(text):
    """``--case`` accepts a path, a path relative to the bundled data
    directory (``cases/145.json``) or a bare bundled case id (``145``)."""
    p = Path(text)
    if p.exists():
        return p
    if text.isdigit() and data_io.bundled_path("cases", f"{text}.json").exists():
        return data_io.bundled_path("cases", f"{text}.json")
    if data_io.bundled_path(text).exists():
        return data_io.bundled_path(text)
    raise UsageError(f"no such file or directory: {text}")


def _cert_path(text):
    p = Path(text)
    if p.exists():
        return p
    if data_io.bundled_path(text).exists():
        return data_io.bundled_path(text)
    if data_io.bundled_path("certs", f"{text}.json").exists():
        return data_io.bundled_path("certs", f"{text}.json")
    raise UsageError(f"no such file: {text}")


def _load_case(args, default=None):
    if args.case is None:
        if default is None:
            raise UsageError("--case is required")
        return data_io.bundled_case(default)
    path = _case_path(args.case)
    if path.is_dir():
        raise UsageError(f"{path} is a directory; this command needs one case file")
    return data_io.load_case(path)


def _matrix_lines(mat, indent="  "):
    width = max((len(str(x)) for row in mat for x in row), default=1)
    return [indent + " ".join(str(x).rjust(width) for x in row) for row in mat]


# -- verify

def cmd_verify(args, out):
    certs = (data_io.load_certificates(_cert_path(args.cert)) if args.cert
             else data_io.bundled_certificates())
    case_dir = _case_path(args.case) if args.case else data_io.bundled_path("cases")
    if case_dir.is_dir():
        rows = verify_corpus(certs, case_dir)
        failed = any(r.status == "FAIL" for r in rows)
        out["rows"] = [{"case_id": r.case_id, "status": r.status, "detail": r.detail} for r in rows]
        counts = {s: sum(r.status == s for r in rows) for s in ("PASS", "FAIL", "SKIPPED")}
        out["summary"] = counts
        text = [f"{r.case_id:>4}  {r.status:<7}  {r.detail}" for r in rows]
        text.append(f"{counts['PASS']} PASS, {counts['FAIL']} FAIL, {counts['SKIPPED']} SKIPPED")
        return (EXIT_FAIL if failed else EXIT_OK), text

    case = data_io.load_case(case_dir)
    chosen = [c for c in certs if c.case_id == case.case_id]
    if not chosen:
        raise UsageError(f"no certificate for case {case.case_id} in the certificate file")
    text, reports, ok = [], [], True
    for cert in chosen:
        rep = verify_certificate(cert, case.system, case.gens)
        reports.append(rep.as_dict())
        ok = ok and rep.passed
        text.append(f"case {cert.case_id}: {cert.claim}  {'PASS' if rep.passed else 'FAIL'}")
        for i, e in enumerate(rep.entries, 1):
            flag = "ok" if e.passed else f"FAIL ({e.reason})"
            text.append(f"  F{i} = {e.notation}  {e.type_label or '?'}  {flag}")
        if rep.products:
            m = rep.m
            text.append(f"  F M F^T ({'= 1_%d - I_%d' % (m, m) if rep.matrix_ok else 'is not 1 - I'}):")
            text.extend(_matrix_lines(rep.products, "    "))
        if not rep.bound_ok:
            text.append(f"  {rep.m} members do not match the claimed bound {cert.claimed_bound}")
        if rep.error:
            text.append(f"  error: {rep.error}")
        text.append(f"  types: {rep.type_summary}")
    out["reports"] = reports
    return (EXIT_OK if ok else EXIT_FAIL), text


# -- cnd

def _expanded(args, case):
    system = case.system
    if args.radius:
        system = expand_orbit(system, case.gens, args.radius)
    return system


def cmd_cnd(args, out):
    case = _load_case(args)
    system = _expanded(args, case)
    hf = build_hf_set(system, args.max_support, prune=not args.no_prune)
    m, seq = compute_cnd(hf)
    labels = system.labels
    out.update({"case_id": case.case_id, "radius": args.radius, "curves": len(system),
                "hf_classes": len(hf), "cnd_lower_bound": m,
                "witness": [{"notation": c.notation(labels), "type": c.type_label,
                             "coords": [int(x) for x in c.klass]} for c in seq.members]})
    text = [f"case {case.case_id}: {len(system)} curves (radius {args.radius}), "
            f"{len(hf)} half-fiber classes",
            f"cnd >= {m} over these curves"]
    for i, c in enumerate(seq.members, 1):
        text.append(f"  F{i} = {c.notation(labels)}  {c.type_label}")
    return EXIT_OK, text


# -- orbit

def _check_words(system, gens):
    """Curves that record how they were obtained must be reproducible from
    the generators shipped with the case (skipped when none are shipped)."""
    if not len(gens):
        return
    for label, v, w in zip(system.labels, system.vectors, system.words):
        if w is None or not w.word:
            continue
        for name, _ in w.word:
            if name not in gens:
                raise UnknownGenerator(name)
        base = system.vectors[system.index(f"R{w.base}")]
        if not np.array_equal(apply_word(base, w.word, gens), v):
            raise InvariantViolation(f"curve {label} does not equal its recorded word")


def cmd_orbit(args, out):
    case = _load_case(args)
    _check_words(case.system, case.gens)
    system = _expanded(args, case)
    rows = []
    for label, v, w in zip(system.labels, system.vectors, system.words):
        rows.append({"label": label, "coords": [int(x) for x in v],
                     "base": None if w is None else w.base,
                     "word": [] if w is None else [[n, e] for n, e in w.word]})
    out.update({"case_id": case.case_id, "radius": args.radius, "curves": rows})
    width = max(len(r["label"]) for r in rows)
    text = [f"case {case.case_id}: {len(rows)} curves at radius {args.radius}"]
    text += [f"  {r['label']:<{width}}  ({','.join(map(str, r['coords']))})" for r in rows]
    return EXIT_OK, text


# -- case145-proof

def cmd_case145_proof(args, out):
    from .proof145 import case145_exclusion_proof

    case = _load_case(args, default=145)
    try:
        report = case145_exclusion_proof(case)
        code = EXIT_OK
    except ProofStepFailed as exc:
        report = exc.report
        report.conclusion = f"FAILED at step {exc.step}: {exc.detail}"
        code = EXIT_FAIL
    out.update(report.as_dict())
    text = []
    for s in report.steps:
        text.append(f"[{'PASS' if s.passed else 'FAIL'}] {s.name}: {s.detail}")
        for ident in s.identities:
            sols = "" if ident.target is None else f"; = {ident.target} for k in {ident.solutions}"
            text.append(f"    {ident.name} = {ident.fitted}{sols}")
    text.append("assumptions:")
    text += [f"  - {a}" for a in report.assumptions]
    text.append(report.conclusion)
    return code, text


COMMANDS = {
    "verify": (cmd_verify, "verify certificates against case data"),
    "cnd": (cmd_cnd, "compute the cnd lower bound of a case"),
    "orbit": (cmd_orbit, "expand the curves of a case under its automorphisms"),
    "case145-proof": (cmd_case145_proof, "replay the exclusion argument for case 145"),
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--case", help="case file, bundled case id, or directory of case files")
    common.add_argument("--cert", help="certificate file")
    common.add_argument("--radius", type=int, default=0, help="orbit word length (default 0)")
    common.add_argument("--max-support", type=int, default=10,
                        help="largest configuration support to enumerate (2..10)")
    common.add_argument("--no-prune", action="store_true",
                        help="disable semidefinite pruning during enumeration")
    common.add_argument("--format", choices=("text", "json"), default="text")

    parser = argparse.ArgumentParser(prog="enriques-nd",
                                     description="Non-degeneracy invariants of Enriques surfaces")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        sub.add_parser(name, parents=[common], help=help_text)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.radius < 0:
        print("error: --radius must be >= 0", file=sys.stderr)
        return EXIT_USAGE
    if not 2 <= args.max_support <= 10:
        print("error: --max-support must lie in [2, 10]", file=sys.stderr)
        return EXIT_USAGE

    func = COMMANDS[args.command][0]
    out = {"schema_version": data_io.SCHEMA_VERSION, "command": args.command}
    try:
        code, text = func(args, out)
    except (UsageError, OSError) as exc:
        code, text = EXIT_USAGE, None
        out["error"] = str(exc)
    except (SchemaError, UnresolvableCurve, UnknownGenerator, InvariantViolation, EnriquesError) as exc:
        code, text = EXIT_USAGE, None
        out["error"] = f"{type(exc).__name__}: {exc}"

    out["exit_code"] = code
    if args.format == "json":
        sys.stdout.write(data_io.dumps(out))
    elif text is not None:
        print("\n".join(text))
    if text is None and args.format == "text":
        print(f"error: {out['error']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
