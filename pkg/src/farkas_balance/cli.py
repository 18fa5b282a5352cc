"""Command line: ``farkas-balance {solve,verify,dft,demo-sumset}``.

Exit codes: 0 ok, 1 input error, 2 numerical ambiguity, 3 verification
failure.  Solver tolerances come from (lowest precedence first) built-in
defaults, the FARKAS_BALANCE_TOL environment variable, the instance file's
``tolerances`` object, and command-line flags.  FARKAS_BALANCE_TOL is
either one number applied to every tolerance or a list such as
``hull=1e-10,sep=1e-9,dft=1e-9``.
"""

from __future__ import annotations

import argparse
import csv
import logging
import os
import sys
from pathlib import Path

import numpy as np

from .dichotomy import SolveConfig, run_dichotomy
from .errors import ContainmentViolation, FarkasBalanceError, ModulusMismatch, NumericalAmbiguity
from .files import (
    FileFormatError,
    check_same_modulus,
    dumps_certificate,
    load_certificate,
    load_instance,
)
from .verify import brute_force_sumset, demo_minorant, verify_certificate
from .zp import PrimeModulus, SupportSet, ZpFunction, convolve, dft, positive_support, support_of

log = logging.getLogger("farkas_balance")

EXIT_OK, EXIT_INPUT, EXIT_AMBIGUOUS, EXIT_VERIFY = 0, 1, 2, 3
ENV_TOL = "FARKAS_BALANCE_TOL"
TOL_KEYS = ("hull", "sep", "dft")
DEFAULT_MAX_P = 10_000


def _env_tolerances(environ=os.environ) -> dict:
    raw = environ.get(ENV_TOL, "").strip()
    if not raw:
        return {}
    try:
        if "=" not in raw:
            val = float(raw)
            return {k: val for k in TOL_KEYS}
        out = {}
        for part in raw.split(","):
            key, val = part.split("=")
            key = key.strip()
            if key not in TOL_KEYS:
                raise ValueError(f"unknown tolerance {key!r}")
            out[key] = float(val)
        return out
    except ValueError as exc:
        raise FileFormatError([f"{ENV_TOL}: {exc}"]) from exc


def _parse_int_list(text: str) -> list:
    text = text.strip()
    if text.lower() == "all":
        return ["all"]
    return [int(x) for x in text.replace(",", " ").split()] if text else []


def _parse_set(p: int, text: str) -> SupportSet:
    items = _parse_int_list(text)
    if items == ["all"]:
        return SupportSet.of(p, range(p))
    return SupportSet.of(p, items)


def _err(msg: str):
    print(f"error: {msg}", file=sys.stderr)


def cmd_solve(args) -> int:
    try:
        inst = load_instance(args.instance)
        if inst.p > args.max_p:
            raise FileFormatError([f"p: {inst.p} exceeds --max-p {args.max_p}"])
        tols = {"hull": 1e-9, "sep": 1e-9, "dft": 1e-9}
        tols.update(_env_tolerances())
        tols.update(inst.tolerances)
        for key in TOL_KEYS:
            flag = getattr(args, f"tol_{key}")
            if flag is not None:
                tols[key] = flag
        cfg = SolveConfig(inst.E, tol_hull=tols["hull"], tol_sep=tols["sep"], tol_dft=tols["dft"])
    except FileFormatError as exc:
        for line in exc.problems:
            _err(line)
        return EXIT_INPUT
    except (FarkasBalanceError, ValueError) as exc:
        _err(str(exc))
        return EXIT_INPUT

    try:
        cert = run_dichotomy(inst.support, inst.places, cfg)
    except NumericalAmbiguity as exc:
        _err(f"numerical ambiguity: {exc}")
        return EXIT_AMBIGUOUS
    text = dumps_certificate(cert)
    if args.output in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(args.output).write_text(text)
    log.info("%s after %d hull rounds", cert.variant, cert.diagnostics["rounds"])
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        inst = load_instance(args.instance)
        cert = load_certificate(args.certificate)
        check_same_modulus(inst, cert)
    except FileFormatError as exc:
        for line in exc.problems:
            _err(line)
        return EXIT_INPUT
    except ModulusMismatch as exc:
        _err(f"ModulusMismatch: {exc}")
        return EXIT_INPUT
    except FarkasBalanceError as exc:
        _err(str(exc))
        return EXIT_INPUT
    report = verify_certificate(cert, inst.support, inst.places, inst.E, tol=args.tol)
    print(report.format_table())
    return EXIT_OK if report.verdict else EXIT_VERIFY


def cmd_dft(args) -> int:
    try:
        mod = PrimeModulus(args.p)
        if args.g is not None:
            f = ZpFunction(mod, np.array([float(x) for x in args.g.replace(",", " ").split()]))
            support_of(f)
        else:
            f = _parse_set(mod.p, args.set).indicator()
    except (FarkasBalanceError, ValueError) as exc:
        _err(str(exc))
        return EXIT_INPUT
    F = dft(f).coeffs
    out = csv.writer(sys.stdout, lineterminator="\n")
    out.writerow(["a", "re", "im", "modulus"])
    for a, c in enumerate(F):
        out.writerow([a, repr(float(c.real)), repr(float(c.imag)), repr(float(abs(c)))])
    return EXIT_OK


def cmd_demo_sumset(args) -> int:
    try:
        S = _parse_set(args.p, args.set)
        cert = load_certificate(args.certificate) if args.certificate else None
        if cert is not None and cert.h.p != S.p:
            raise ModulusMismatch(f"certificate has p = {cert.h.p}, set lives mod {S.p}")
    except FileFormatError as exc:
        for line in exc.problems:
            _err(line)
        return EXIT_INPUT
    except (FarkasBalanceError, ValueError) as exc:
        _err(str(exc))
        return EXIT_INPUT

    brute = brute_force_sumset(S, S)
    conv = convolve(S.indicator(), S.indicator())
    by_conv = sorted(positive_support(conv).members)
    print(f"S       = {sorted(S.members)}")
    print(f"S+S     = {sorted(brute.members)}  (pair enumeration)")
    print(f"supp S*S = {sorted(by_conv)}  (convolution)")
    if set(by_conv) != set(brute.members):
        _err("convolution support disagrees with pair enumeration")
        return EXIT_VERIFY
    if cert is None:
        return EXIT_OK
    try:
        minor = demo_minorant(S, cert.h)
    except ContainmentViolation as exc:
        _err(str(exc))
        print("containment: FAIL")
        return EXIT_VERIFY
    except FarkasBalanceError as exc:
        _err(f"certificate cannot serve as a minorant for S: {exc}")
        return EXIT_INPUT
    print(f"(f*S)>0 = {sorted(minor.members)}  (certificate {cert.variant})")
    print("containment: pass")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="farkas-balance", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="produce a certificate for an instance file")
    p.add_argument("instance")
    p.add_argument("-o", "--output", help="certificate path (default: stdout)")
    p.add_argument("--tol-hull", type=float)
    p.add_argument("--tol-sep", type=float)
    p.add_argument("--tol-dft", type=float)
    p.add_argument("--max-p", type=int, default=DEFAULT_MAX_P)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check a certificate against its instance")
    p.add_argument("instance")
    p.add_argument("certificate")
    p.add_argument("--tol", type=float, help="spectral tolerance (default 1e-7 * p)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("dft", help="CSV of Fourier coefficients of a set or function")
    p.add_argument("--p", type=int, required=True)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--set", help="members, e.g. '0,1,4' or 'all'")
    src.add_argument("--g", help="p comma-separated values in [0,1]")
    p.set_defaults(func=cmd_dft)

    p = sub.add_parser("demo-sumset", help="S+S by enumeration, convolution and a certificate")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--set", required=True)
    p.add_argument("--certificate")
    p.set_defaults(func=cmd_demo_sumset)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
