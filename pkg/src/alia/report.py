"""Verification reports: JSON and CSV serialization."""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

from .errors import DomainError

FORMATS = ("json", "csv")
CSV_FIELDS = ("name", "max_abs_residual", "tol", "pass", "samples", "seed")


@dataclass
class Case:
    name: str
    max_abs_residual: float
    tol: float
    samples: int
    seed: int
    passed: bool = field(default=None)

    def __post_init__(self):
        self.max_abs_residual = float(self.max_abs_residual)
        self.tol = float(self.tol)
        # NaN never passes
        ok = self.max_abs_residual < self.tol
        if self.passed is None:
            self.passed = ok
        elif self.passed != ok:
            raise DomainError(f"case {self.name}: pass flag disagrees with residual and tolerance")

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "max_abs_residual": self.max_abs_residual,
            "tol": self.tol,
            "pass": self.passed,
            "samples": self.samples,
            "seed": self.seed,
        }


@dataclass
class VerificationReport:
    suite: str
    env: dict
    cases: list = field(default_factory=list)
    detail: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cases)

    def add(self, name, residual, tol, samples, seed) -> Case:
        c = Case(name, residual, tol, samples, seed)
        self.cases.append(c)
        return c

    def to_dict(self) -> dict:
        d = {"suite": self.suite, "env": self.env, "cases": [c.to_dict() for c in self.cases]}
        if self.detail:
            d["detail"] = self.detail
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> "VerificationReport":
        cases = [
            Case(c["name"], c["max_abs_residual"], c["tol"], c["samples"], c["seed"], c["pass"])
            for c in d["cases"]
        ]
        return cls(d["suite"], d.get("env", {}), cases, d.get("detail", {}))

    @classmethod
    def from_json(cls, text: str) -> "VerificationReport":
        return cls.from_dict(json.loads(text))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_FIELDS)
        for c in self.cases:
            w.writerow([c.name, repr(c.max_abs_residual), repr(c.tol), str(c.passed).lower(), c.samples, c.seed])
        return buf.getvalue()

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return self.to_json()
        if fmt == "csv":
            return self.to_csv()
        raise DomainError(f"unknown format {fmt!r}; expected one of {FORMATS}")

    def summary(self) -> str:
        lines = []
        for c in self.cases:
            tag = "PASS" if c.passed else "FAIL"
            lines.append(f"{tag} {c.name}: {c.max_abs_residual:.3e} (tol {c.tol:.1e})")
        n = sum(c.passed for c in self.cases)
        lines.append(f"{self.suite}: {n}/{len(self.cases)} cases pass")
        return "\n".join(lines)


def table_csv(zs, values) -> str:
    """z_re,z_im,value_re,value_im rows with shortest round-trip decimals."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("z_re", "z_im", "value_re", "value_im"))
    for z, v in zip(zs, values):
        z = complex(z)
        v = complex(v)
        w.writerow((repr(z.real), repr(z.imag), repr(v.real), repr(v.imag)))
    return buf.getvalue()

