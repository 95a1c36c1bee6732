"""Command-line front end.

Subcommands: analyze (scenario -> certified verdict), heart, weights,
group, probe, fixtures. Exit codes for analyze: 0 conclusive, 2
inconclusive, 1 error, 64 usage. All reports are stable text: integer
quantities only, sorted or fixed ordering throughout, so outputs are
byte-reproducible for golden tests. HEARTPROOF_SEED overrides the default
randomness seed.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from pathlib import Path

from . import modules, probe, simplicity, verdict, weights
from .groups import (
    GroupTag,
    PermGroup,
    alternating_group,
    format_group_file,
    mathieu_group,
    parse_group_file,
    psl2_group,
    symmetric_group,
)

USAGE_EXIT = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE_EXIT)


_TAG_RE = re.compile(
    r"^(?:(?P<sa>[SA])|(?P<mat>M(?P<matn>11|12|22|23|24))"
    r"|(?P<psl>PSL2)[:(](?P<pslargs>[^)]*)\)?"
    r"|(?P<u3>U3)[:(](?P<u3args>[^)]*)\)?)$",
    re.IGNORECASE,
)


def _parse_prime_power(text: str) -> tuple[int, int]:
    """'13' -> (13, 1); '2^4' or '2,4' -> (2, 4)."""
    text = text.strip()
    if "^" in text:
        ell, r = text.split("^")
        return int(ell), int(r)
    if "," in text:
        ell, r = text.split(",")
        return int(ell), int(r)
    value = int(text)
    # interpret as the full prime power q
    for ell in range(2, value + 1):
        if value % ell == 0:
            r = 0
            v = value
            while v % ell == 0:
                v //= ell
                r += 1
            if v != 1:
                raise ValueError(f"{value} is not a prime power")
            return ell, r
    raise ValueError(f"{value} is not a prime power")


def parse_group_tag(text: str, n: int | None) -> GroupTag:
    m = _TAG_RE.match(text.strip())
    if m is None:
        raise ValueError(f"unknown group tag {text!r}")
    if m.group("sa"):
        if n is None:
            raise ValueError("--n is required for symmetric/alternating groups")
        return GroupTag.symmetric(n) if m.group("sa").upper() == "S" else GroupTag.alternating(n)
    if m.group("mat"):
        return GroupTag.mathieu(int(m.group("matn")))
    if m.group("psl"):
        ell, r = _parse_prime_power(m.group("pslargs"))
        return GroupTag.psl2(ell, r)
    ell, r = _parse_prime_power(m.group("u3args"))
    return GroupTag.psu3(ell, r)


def _build_scenario(args) -> verdict.Scenario:
    seed = int(os.environ.get("HEARTPROOF_SEED", args.seed))
    if args.poly:
        f = probe.parse_poly(args.poly)
        return verdict.Scenario(f.degree, args.p, args.r, "poly", poly=args.poly,
                                assume_zeta=args.assume_zeta, seed=seed)
    if args.group_file:
        text = Path(args.group_file).read_text()
        g = parse_group_file(text)
        n = args.n if args.n is not None else g.degree
        gens = tuple(line.split("#", 1)[0].strip() for line in text.splitlines()
                     if line.split("#", 1)[0].strip())
        return verdict.Scenario(n, args.p, args.r, "custom", generators=gens,
                                assume_zeta=args.assume_zeta, seed=seed)
    tag = parse_group_tag(args.group, args.n)
    n = tag.n if tag.n is not None else args.n
    return verdict.Scenario(n, args.p, args.r, "tag", tag=tag,
                            assume_zeta=args.assume_zeta, seed=seed)


def _cmd_analyze(args) -> int:
    try:
        scenario = _build_scenario(args)
        cert = verdict.dispatch(scenario)
    except (verdict.InvalidScenario, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(verdict.explain(cert))
    if args.json:
        Path(args.json).write_text(verdict.certificate_to_json(cert))
    return 0 if cert.conclusion.kind != "inconclusive" else 2


def _concrete_group(args) -> PermGroup:
    if args.group_file:
        return parse_group_file(Path(args.group_file).read_text())
    tag = parse_group_tag(args.group, args.n)
    if tag.kind == "symmetric":
        return symmetric_group(tag.n)
    if tag.kind == "alternating":
        return alternating_group(tag.n)
    if tag.kind == "mathieu":
        return mathieu_group(tag.n)
    if tag.kind == "psl2":
        return psl2_group(tag.ell, tag.r)
    raise ValueError(f"no concrete permutation group is built for {tag.describe()}")


def _cmd_heart(args) -> int:
    try:
        g = _concrete_group(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    seed = int(os.environ.get("HEARTPROOF_SEED", args.seed))
    h = modules.heart(g, args.p)
    print(f"group: {g.tag.describe()} on {g.degree} points, order {g.order}")
    print(f"heart: dimension {h.dim} ({h.kind}) over F_{args.p}")
    result = modules.is_irreducible(h, seed=seed)
    if result.irreducible:
        cdim = modules.commutant_dim(h)
        print(f"irreducible: yes (commutant dimension {cdim})")
    else:
        print(f"irreducible: no (invariant subspace of dimension "
              f"{result.invariant_subspace.shape[0]})")
    v = simplicity.decide_heart_simplicity(g, g.tag, args.p, seed=seed)
    print(f"simplicity verdict: {v.level.name}")
    for item in v.evidence:
        print(f"  [{item.kind}] {item.statement}")
    if args.dump:
        Path(args.dump).write_text(modules.dumps(h))
    return 0


def _cmd_weights(args) -> int:
    try:
        params = weights.CurveParams(args.n, args.p, args.r)
    except (ValueError, weights.HypothesisViolated) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.n % args.p == 0:
        print(f"not applicable: p = {args.p} divides n = {args.n} "
              "(no closed-form profile in this branch); "
              f"genus {weights.genus(params)}")
        return 0
    profile = weights.weight_profile(params)
    sys.stdout.write(profile.table())
    return 0


def _cmd_group(args) -> int:
    try:
        g = _concrete_group(args)
    except (ValueError, AssertionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"tag: {g.tag.describe()}")
    print(f"degree: {g.degree}")
    print(f"order: {g.order}")
    print(f"order (independent chain): {g.order_with_base('decreasing')}")
    print(f"transitive: {g.is_transitive()}")
    print(f"doubly transitive: {g.is_doubly_transitive()}")
    print("generators:")
    sys.stdout.write(format_group_file(g))
    return 0


def _cmd_probe(args) -> int:
    seed = int(os.environ.get("HEARTPROOF_SEED", args.seed))
    try:
        f = probe.parse_poly(args.poly)
        ev = probe.classify_galois(f, prime_budget=args.budget, seed=seed)
    except (ValueError, probe.NotSquarefree) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"polynomial: {f}")
    print(f"degree: {ev.degree}")
    print(f"discriminant: {ev.disc} (perfect square: {ev.disc_is_square})")
    print(f"irreducible witness prime: {ev.irreducible_witness}")
    print("cycle types observed (pattern @ first prime):")
    for pattern, p in ev.cycle_types:
        print(f"  {list(pattern)} @ {p}")
    tagtext = f" [{ev.conclusion_tag}]" if ev.conclusion_tag else ""
    print(f"conclusion: {ev.conclusion}{tagtext}")
    if ev.resolved_group:
        print(f"resolved group: {ev.resolved_group}")
    for reason in ev.reasons:
        print(f"  - {reason}")
    return 0


def _bundled_fixtures() -> Path:
    import importlib.resources

    return Path(str(importlib.resources.files("heartproof.data").joinpath("fixtures.jsonl")))


def run_fixture_line(line: str):
    """Returns (name, ok, message) for one JSONL fixture entry."""
    entry = json.loads(line)
    name = entry.get("name", "<unnamed>")
    expect = entry["expect"]
    try:
        scenario = verdict.scenario_from_dict(entry["scenario"])
        cert = verdict.dispatch(scenario)
    except verdict.InvalidScenario as exc:
        if expect.get("error") == "invalid_scenario":
            return name, True, f"rejected as expected: {exc}"
        return name, False, f"unexpected rejection: {exc}"
    if expect.get("error"):
        return name, False, f"expected {expect['error']} but dispatch succeeded"
    problems = []
    if cert.conclusion.kind != expect["conclusion"]:
        problems.append(f"conclusion {cert.conclusion.kind} != {expect['conclusion']}")
    if expect.get("theorem") and cert.theorem != expect["theorem"]:
        problems.append(f"theorem {cert.theorem} != {expect['theorem']}")
    if expect.get("fields") is not None and list(cert.conclusion.fields) != expect["fields"]:
        problems.append(f"fields {list(cert.conclusion.fields)} != {expect['fields']}")
    if expect.get("first_failed") is not None:
        got = cert.first_failed.anchor if cert.first_failed else None
        if got != expect["first_failed"]:
            problems.append(f"first failed {got!r} != {expect['first_failed']!r}")
    if problems:
        return name, False, "; ".join(problems)
    return name, True, cert.conclusion.kind


def _cmd_fixtures(args) -> int:
    path = Path(args.run) if args.run else _bundled_fixtures()
    if not path.exists():
        print(f"error: fixture file {path} does not exist", file=sys.stderr)
        return 1
    passed = failed = 0
    for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            name, ok, message = run_fixture_line(line)
        except (json.JSONDecodeError, KeyError) as exc:
            print(f"{path}:{lineno}: parse error: {exc}", file=sys.stderr)
            return 1
        status = "pass" if ok else "FAIL"
        print(f"[{status}] {name}: {message}")
        if ok:
            passed += 1
        else:
            failed += 1
    if passed + failed == 0:
        print("warning: no fixtures found (empty file)")
    print(f"{passed} passed, {failed} failed")
    return 0 if failed == 0 else 1


def build_parser() -> _Parser:
    parser = _Parser(prog="heartproof",
                     description="certified endomorphism-ring verdicts for "
                                 "superelliptic jacobians")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_group_args(p, need_p=True):
        p.add_argument("--group", help="group tag: S, A, M11..M24, PSL2(q), U3(q)")
        p.add_argument("--group-file", help="file with one generator per line "
                                            "(cycle notation, # comments)")
        p.add_argument("--n", type=int, help="degree (required for S/A)")
        if need_p:
            p.add_argument("--p", type=int, required=True, help="odd prime p")

    pa = sub.add_parser("analyze", help="dispatch a scenario to the theorem routes")
    add_group_args(pa)
    pa.add_argument("--poly", help="integer polynomial, e.g. 'x^5 - x - 1'")
    pa.add_argument("--r", type=int, default=1, help="exponent r in q = p^r")
    pa.add_argument("--assume-zeta", action="store_true",
                    help="assert that K contains a primitive q-th root of unity")
    pa.add_argument("--json", help="write the certificate JSON here")
    pa.add_argument("--seed", type=int, default=0)
    pa.set_defaults(func=_cmd_analyze)

    ph = sub.add_parser("heart", help="heart of a permutation action over F_p")
    add_group_args(ph)
    ph.add_argument("--seed", type=int, default=0)
    ph.add_argument("--dump", help="write the module dump here")
    ph.set_defaults(func=_cmd_heart)

    pw = sub.add_parser("weights", help="weight multiplicity profile")
    pw.add_argument("--n", type=int, required=True)
    pw.add_argument("--p", type=int, required=True)
    pw.add_argument("--r", type=int, default=1)
    pw.set_defaults(func=_cmd_weights)

    pg = sub.add_parser("group", help="construct and describe a named group")
    add_group_args(pg, need_p=False)
    pg.set_defaults(func=_cmd_group)

    pp = sub.add_parser("probe", help="Galois-group evidence for a polynomial")
    pp.add_argument("--poly", required=True)
    pp.add_argument("--budget", type=int, default=40, help="number of primes to sample")
    pp.add_argument("--seed", type=int, default=0)
    pp.set_defaults(func=_cmd_probe)

    pf = sub.add_parser("fixtures", help="replay scenario/expectation fixtures")
    pf.add_argument("--run", help="fixture JSONL path (default: bundled set)")
    pf.set_defaults(func=_cmd_fixtures)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "command", None) in ("analyze", "heart") and not (
        getattr(args, "group", None) or getattr(args, "group_file", None)
        or getattr(args, "poly", None)
    ):
        parser.error("one of --group, --group-file or --poly is required")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
