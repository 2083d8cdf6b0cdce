"""
Command line entry point.

    qhopf validate kac
    qhopf indicators h_u:kac --n-max 8 --format table
    qhopf table6 [--gauge-seed 3] [--format json]
    qhopf gauge-check h_u:group:Q8 --seeds 10 --n-max 5

Exit codes: 0 ok, 1 mismatch or failed axiom, 2 parse error, 3 budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import constructions as C
from .algebra import (
    QuasiHopfAlgebra,
    ValidationFailure,
    find_central_grouplikes,
    gauge_twist,
    random_gauge_transform,
    validate,
)
from .indicators import hopf_indicator, indicator_table, mu_n, nu_n, nu_n_central_twist
from .reptheory import character, regular_representation, simple_characters
from .tensor import BudgetExceeded, set_budget

EXIT_OK, EXIT_MISMATCH, EXIT_PARSE, EXIT_BUDGET = 0, 1, 2, 3
MAX_N = 12

# nu_2 .. nu_8 of the 2-dimensional simple module
TABLE6_EXPECTED = {
    "K": (1, 0, 0, 0, 1, 0, 2),
    "K_u": (-1, 0, 0, 0, -1, 0, 2),
    "C[D8]": (1, 0, 2, 0, 1, 0, 2),
    "C[D8]_u": (-1, 0, 2, 0, -1, 0, 2),
    "C[Q8]": (-1, 0, 2, 0, -1, 0, 2),
    "C[Q8]_u": (1, 0, 2, 0, 1, 0, 2),
}
TABLE6_SPECS = {
    "K": "kac", "K_u": "h_u:kac", "C[D8]": "group:D8", "C[D8]_u": "h_u:group:D8",
    "C[Q8]": "group:Q8", "C[Q8]_u": "h_u:group:Q8",
}


class SpecError(ValueError):
    pass


@dataclass(frozen=True)
class AlgebraSpec:
    """kac | group:G | h_u:<spec> | dual:G[:cocycle_t=t] | double:G[:cocycle_t=t] | file:path, plus @gauge=seed."""

    kind: str
    arg: str = ""
    t: int = 0
    inner: AlgebraSpec | None = None
    gauge_seed: int | None = None

    @classmethod
    def parse(cls, text: str) -> AlgebraSpec:
        text = text.strip()
        seed = None
        if "@gauge=" in text:
            text, _, s = text.rpartition("@gauge=")
            try:
                seed = int(s)
            except ValueError:
                raise SpecError(f"bad gauge seed {s!r}") from None
        spec = cls._parse_body(text)
        return AlgebraSpec(spec.kind, spec.arg, spec.t, spec.inner, seed) if seed is not None else spec

    @classmethod
    def _parse_body(cls, text: str) -> AlgebraSpec:
        if text == "kac":
            return cls("kac")
        head, sep, rest = text.partition(":")
        if not sep:
            raise SpecError(f"cannot parse algebra spec {text!r}")
        if head == "file":
            if not rest:
                raise SpecError("file: needs a path")
            return cls("file", rest)
        if head == "h_u":
            return cls("h_u", inner=cls._parse_body(rest))
        if head in ("group", "dual", "double"):
            group, _, opt = rest.partition(":")
            _check_group(group)
            t = 0
            if opt:
                if head == "group" or not opt.startswith("cocycle_t="):
                    raise SpecError(f"unknown option {opt!r}")
                try:
                    t = int(opt[len("cocycle_t="):])
                except ValueError:
                    raise SpecError(f"bad cocycle exponent in {opt!r}") from None
                if not group.startswith("Z"):
                    raise SpecError("cocycle_t is only defined for cyclic groups")
            return cls(head, group, t)
        raise SpecError(f"unknown algebra kind {head!r}")

    def __str__(self) -> str:
        if self.kind == "kac":
            body = "kac"
        elif self.kind == "file":
            body = f"file:{self.arg}"
        elif self.kind == "h_u":
            body = f"h_u:{self.inner}"
        else:
            body = f"{self.kind}:{self.arg}" + (f":cocycle_t={self.t}" if self.t else "")
        return body + (f"@gauge={self.gauge_seed}" if self.gauge_seed is not None else "")

    def build(self) -> QuasiHopfAlgebra:
        H = self._build_plain()
        if self.gauge_seed is not None:
            H = gauge_twist(H, random_gauge_transform(H, self.gauge_seed), name=f"{H.name}^F")
        return H

    def _build_plain(self) -> QuasiHopfAlgebra:
        if self.kind == "kac":
            return C.kac_algebra()
        if self.kind == "file":
            try:
                with open(self.arg) as fh:
                    obj = json.load(fh)
            except (OSError, json.JSONDecodeError) as exc:
                raise SpecError(f"cannot read {self.arg}: {exc}") from None
            try:
                return QuasiHopfAlgebra.from_json(obj)
            except (KeyError, TypeError, ValueError) as exc:
                raise SpecError(f"malformed algebra file: {exc}") from None
        if self.kind == "h_u":
            base = self.inner.build()
            us = find_central_grouplikes(base, 2)
            if len(us) != 1:
                raise SpecError(f"{base.name} has {len(us)} central group-likes of order 2, need exactly 1")
            return C.h_u(base, us[0])
        G = C.build_group(self.arg)
        w = C.cyclic_cocycle(G.order, self.t) if self.t else None
        if self.kind == "group":
            return C.group_algebra(G)
        if self.kind == "dual":
            return C.dual_group_algebra(G, w)
        return C.twisted_double(G, w)


def _check_group(name: str) -> None:
    try:
        C.build_group(name)
    except (ValueError, IndexError) as exc:
        raise SpecError(f"unknown group {name!r}: {exc}") from None


# ---------------------------------------------------------------------------
# commands


def cmd_validate(args) -> int:
    spec = AlgebraSpec.parse(args.spec)
    # builders never raise for valid input; file: specs are read without checking
    H = spec.build()
    rep = validate(H)
    if args.format == "json":
        print(json.dumps(rep.to_json(), sort_keys=True, indent=2))
    else:
        print(rep)
    return EXIT_OK if rep.ok else EXIT_MISMATCH


def _characters(H, source: str):
    if source == "regular":
        return [character(regular_representation(H))]
    return None


def cmd_indicators(args) -> int:
    if not 1 <= args.n_max <= MAX_N:
        print(f"error: --n-max must lie in 1..{MAX_N}", file=sys.stderr)
        return EXIT_PARSE
    spec = AlgebraSpec.parse(args.spec)
    if args.gauge_seed is not None:
        spec = AlgebraSpec(spec.kind, spec.arg, spec.t, spec.inner, args.gauge_seed)
    H = spec.build()
    table = indicator_table(H, args.n_max, characters=_characters(H, args.character_source))
    if args.format == "json":
        out = table.to_json()
        out["spec"] = str(spec)
        print(json.dumps(out, sort_keys=True, indent=2))
    else:
        print(f"# {H.name}  ({spec})")
        print(table.to_markdown())
    if table.holes:
        for r, n, why in table.holes:
            print(f"hole: row {r}, n={n}: {why}", file=sys.stderr)
        return EXIT_BUDGET
    return EXIT_OK


def _two_dim_character(H):
    rows = [ch for ch, d in simple_characters(H) if d == 2]
    if len(rows) != 1:
        raise ValueError(f"{H.name} has {len(rows)} two-dimensional simples")
    return rows[0]


def table6_rows(gauge_seed: int | None = None) -> dict:
    """name -> (nu_2..nu_8) of the 2-dim simple, by closed forms (or generically after a gauge twist)."""
    out = {}
    for name, text in TABLE6_SPECS.items():
        spec = AlgebraSpec.parse(text)
        if gauge_seed is None:
            H = spec.build()
            if spec.kind == "h_u":
                base = H.provenance["base"]
                chi = _two_dim_character(base)
                vals = [nu_n_central_twist(base, H.provenance["u"], chi, n) for n in range(2, 9)]
            else:
                chi = _two_dim_character(H)
                vals = [hopf_indicator(H, chi, n) for n in range(2, 9)]
        else:
            H = AlgebraSpec(spec.kind, spec.arg, spec.t, spec.inner, gauge_seed).build()
            chi = _two_dim_character(H)
            vals = [nu_n(H, chi, n) for n in range(2, 9)]
        out[name] = vals
    return out


def table6_markdown(rows: dict) -> str:
    lines = ["| algebra | " + " | ".join(f"nu_{n}" for n in range(2, 9)) + " |",
             "|---|" + "---|" * 7]
    for name, vals in rows.items():
        lines.append(f"| {name} | " + " | ".join(str(v) for v in vals) + " |")
    return "\n".join(lines)


def cmd_table6(args) -> int:
    rows = table6_rows(args.gauge_seed)
    bad = [(name, n + 2, str(v), e) for name, vals in rows.items()
           for n, (v, e) in enumerate(zip(vals, TABLE6_EXPECTED[name])) if v != e]
    if args.format == "json":
        print(json.dumps({"columns": list(range(2, 9)),
                          "rows": {k: [v.to_json() for v in vals] for k, vals in rows.items()},
                          "matches_expected": not bad}, sort_keys=True, indent=2))
    else:
        print(table6_markdown(rows))
    if bad:
        for name, n, got, want in bad:
            print(f"mismatch: {name} nu_{n} = {got}, expected {want}", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_gauge_check(args) -> int:
    spec = AlgebraSpec.parse(args.spec)
    H = spec.build()
    ref = {n: mu_n(H, n) for n in range(1, args.n_max + 1)}
    results = []
    for seed in range(args.seeds):
        HF = gauge_twist(H, random_gauge_transform(H, seed))
        for n in range(1, args.n_max + 1):
            ok = mu_n(HF, n) == ref[n]
            results.append({"seed": seed, "n": n, "ok": ok})
            if not ok:
                _report_gauge(args, results)
                print(f"gauge mismatch: seed {seed}, n={n}", file=sys.stderr)
                return EXIT_MISMATCH
    _report_gauge(args, results)
    return EXIT_OK


def _report_gauge(args, results):
    if args.format == "json":
        print(json.dumps({"spec": args.spec, "checks": results}, sort_keys=True, indent=2))
    else:
        passed = sum(r["ok"] for r in results)
        print(f"{args.spec}: {passed}/{len(results)} (seed, n) pairs gauge invariant")


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qhopf", description="Higher indicators of quasi-Hopf algebras.")
    p.add_argument("--budget", type=int, default=None, help="maximum tensor entries")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--format", choices=("json", "table"), default="table")
        sp.add_argument("--budget", type=int, default=argparse.SUPPRESS, help="maximum tensor entries")

    sp = sub.add_parser("validate", help="check the quasi-Hopf axioms")
    sp.add_argument("spec")
    common(sp)
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("indicators", help="indicator table for every simple module")
    sp.add_argument("spec")
    sp.add_argument("--n-max", type=int, default=8)
    sp.add_argument("--gauge-seed", type=int, default=None)
    sp.add_argument("--character-source", choices=("auto", "regular"), default="auto")
    common(sp)
    sp.set_defaults(func=cmd_indicators)

    sp = sub.add_parser("table6", help="indicators of the six rank-five algebras")
    sp.add_argument("--gauge-seed", type=int, default=None)
    common(sp)
    sp.set_defaults(func=cmd_table6)

    sp = sub.add_parser("gauge-check", help="mu_n under random gauge transformations")
    sp.add_argument("spec")
    sp.add_argument("--seeds", type=int, default=10)
    sp.add_argument("--n-max", type=int, default=5)
    common(sp)
    sp.set_defaults(func=cmd_gauge_check)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.budget is not None:
        set_budget(args.budget)
    try:
        return args.func(args)
    except SpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except BudgetExceeded as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ValidationFailure as exc:
        print(f"invalid algebra: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    finally:
        set_budget(None)


if __name__ == "__main__":
    sys.exit(main())
