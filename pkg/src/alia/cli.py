"""Command-line interface: eval, verify, tau-solve, table, report."""
from __future__ import annotations

import argparse
import os
import re
import sys

import numpy as np

from . import elliptic as ell
from . import intertwiner as itw
from .errors import AliaError
from .report import FORMATS, VerificationReport, table_csv
from .suites import SUITE_NAMES, run_suite
from .theta import as_modular, theta_jacobi

DEFAULT_TOL = 1e-9
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def parse_complex(text: str) -> complex:
    """Parse 'a+bi', 'bi', 'i', '-i', 'a' (also accepts Python's 'j')."""
    s = text.strip().replace(" ", "").replace("j", "i")
    if not s:
        raise ValueError("empty number")
    if s.endswith("i"):
        body = s[:-1]
        # split at the last sign that is not part of an exponent
        m = re.match(r"^(.*?)([+-]?)([0-9.]*(?:[eE][+-]?[0-9]+)?)$", body)
        head, sign, mag = m.group(1), m.group(2), m.group(3)
        if head and head[-1] in "eE":
            raise ValueError(f"cannot parse {text!r}")
        im = float(mag) if mag else 1.0
        if sign == "-":
            im = -im
        re_part = float(head) if head else 0.0
        return complex(re_part, im)
    return complex(float(s), 0.0)


def parse_tau(text: str):
    tau = parse_complex(text)
    if not tau.imag > 0:
        raise ValueError(f"tau must lie in the upper half plane, got {text!r}")
    return tau


def parse_triple(text: str):
    parts = [p for p in text.split(",") if p.strip()]
    if len(parts) != 3:
        raise ValueError(f"expected three comma-separated values, got {text!r}")
    vals = [parse_complex(p) for p in parts]
    return tuple(v.real if v.imag == 0 else v for v in vals)


def _env_tol() -> float:
    raw = os.environ.get("ALIA_TOL")
    if raw is None:
        return DEFAULT_TOL
    try:
        tol = float(raw)
    except ValueError as exc:
        raise ValueError(f"ALIA_TOL={raw!r} is not a number") from exc
    if not tol > 0:
        raise ValueError(f"ALIA_TOL must be positive, got {raw!r}")
    return tol


def _fmt(v: complex) -> str:
    v = complex(v)
    return f"{v.real!r}{'+' if v.imag >= 0 else '-'}{abs(v.imag)!r}i"


def _function(name: str, tau):
    mp = as_modular(tau)
    funcs = {
        "theta1": lambda z: theta_jacobi(1, z, mp),
        "theta2": lambda z: theta_jacobi(2, z, mp),
        "theta3": lambda z: theta_jacobi(3, z, mp),
        "theta4": lambda z: theta_jacobi(4, z, mp),
        "mu1": lambda z: ell.mu(1, z, mp),
        "mu2": lambda z: ell.mu(2, z, mp),
        "mu3": lambda z: ell.mu(3, z, mp),
        "wp": lambda z: ell.wp(z, ell.Lattice(mp)),
        "wp_prime": lambda z: ell.wp_prime(z, ell.Lattice(mp)),
        "w1": lambda z: ell.jacobi_w(1, z, mp),
        "w2": lambda z: ell.jacobi_w(2, z, mp),
        "w3": lambda z: ell.jacobi_w(3, z, mp),
        "psi_plus": lambda z: itw.psi_pm(1, z, mp),
        "psi_minus": lambda z: itw.psi_pm(-1, z, mp),
        "det_omega": lambda z: itw.det2(itw.omega(z, mp)),
    }
    if name not in funcs:
        raise ValueError(f"unknown function {name!r}; choose from {', '.join(sorted(funcs))}")
    return funcs[name]


FUNCTIONS = ("theta1", "theta2", "theta3", "theta4", "mu1", "mu2", "mu3", "wp", "wp_prime",
             "w1", "w2", "w3", "psi_plus", "psi_minus", "det_omega", "lambda")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="alia", description="Elliptic automorphic Lie algebra toolkit")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    e = sub.add_parser("eval", help="evaluate one function value")
    e.add_argument("--fn", required=True, choices=FUNCTIONS)
    e.add_argument("--z", default="0", type=str)
    e.add_argument("--tau", default="i", type=str)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", default="all", choices=SUITE_NAMES + ("all",))
    v.add_argument("--tau", default="i", type=str)
    v.add_argument("--r", default=None, type=str, help="r-triple for the zcr suite")
    v.add_argument("--samples", default=100, type=int)
    v.add_argument("--seed", default=0, type=int)
    v.add_argument("--tol", default=None, type=float)
    v.add_argument("--format", default="json")
    v.add_argument("--out", default=None, help="write the report here instead of stdout")

    t = sub.add_parser("tau-solve", help="tau for an r-triple")
    t.add_argument("--r", required=True, type=str)

    tb = sub.add_parser("table", help="sampled function values as CSV")
    tb.add_argument("--fn", required=True, choices=FUNCTIONS[:-1])
    tb.add_argument("--tau", default="i", type=str)
    tb.add_argument("--samples", default=20, type=int)
    tb.add_argument("--seed", default=0, type=int)
    tb.add_argument("--out", default=None)

    rp = sub.add_parser("report", help="re-render a saved JSON report")
    rp.add_argument("input")
    rp.add_argument("--format", default="text")
    return p


def _write(text: str, path):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_eval(a):
    tau = parse_tau(a.tau)
    if a.fn == "lambda":
        print(_fmt(ell.modular_lambda(tau)))
        return EXIT_OK
    z = parse_complex(a.z)
    print(_fmt(_function(a.fn, tau)(z)))
    return EXIT_OK


def _cmd_verify(a):
    if a.format not in FORMATS:
        raise ValueError(f"unknown format {a.format!r}; expected one of {FORMATS}")
    if a.samples < 1:
        raise ValueError("--samples must be positive")
    tau = parse_tau(a.tau)
    tol = a.tol if a.tol is not None else _env_tol()
    if not tol > 0:
        raise ValueError("--tol must be positive")
    r = parse_triple(a.r) if a.r else None
    rep = run_suite(a.suite, tau, a.samples, a.seed, tol, r)
    _write(rep.render(a.format), a.out)
    print(rep.summary(), file=sys.stderr)
    for key in ("holod.diagnostic", "uglov.diagnostic"):
        if key in rep.detail:
            print(f"{key}: {rep.detail[key]}", file=sys.stderr)
    return EXIT_OK if rep.passed else EXIT_FAIL


def _cmd_tau_solve(a):
    r = parse_triple(a.r)
    mp = ell.tau_from_r(*r)
    lam = ell.modular_lambda(mp)
    print(f"tau={_fmt(mp.tau)}")
    print(f"lambda={_fmt(lam)}")
    return EXIT_OK


def _cmd_table(a):
    if a.samples < 1:
        raise ValueError("--samples must be positive")
    mp = as_modular(parse_tau(a.tau))
    fn = _function(a.fn, mp)
    zs = ell.sample_points(mp, a.samples, np.random.default_rng(a.seed))
    _write(table_csv(zs, [fn(z) for z in zs]), a.out)
    return EXIT_OK


def _cmd_report(a):
    with open(a.input, encoding="utf-8") as fh:
        rep = VerificationReport.from_json(fh.read())
    if a.format == "text":
        print(rep.summary())
    elif a.format in FORMATS:
        sys.stdout.write(rep.render(a.format))
    else:
        raise ValueError(f"unknown format {a.format!r}")
    return EXIT_OK if rep.passed else EXIT_FAIL


COMMANDS = {
    "eval": _cmd_eval,
    "verify": _cmd_verify,
    "tau-solve": _cmd_tau_solve,
    "table": _cmd_table,
    "report": _cmd_report,
}


def run(argv=None) -> int:
    try:
        a = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        return COMMANDS[a.cmd](a)
    except (ValueError, AliaError, ZeroDivisionError, OverflowError, OSError) as exc:
        # usage-class problems: bad numbers, domain violations, unreadable files
        print(f"alia {a.cmd}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
