"""Command-line surface: single computations, sweeps, verification suites.

Exit codes: 0 success, 1 verification failure, 2 hypothesis or scope
violation (also argparse usage errors), 3 size budget exceeded.  JSON
output is canonical — sorted keys, no whitespace — so reports round-trip
byte-identically through a parse/serialize cycle.
"""

import argparse
import concurrent.futures
import json
import sys
from dataclasses import dataclass

from . import dennis_stein as ds
from . import k2 as k2mod
from . import suites as suites_mod
from .algebras import FiniteAlgebra, ideal_closure
from .errors import HypothesisError, ScopeError, SizeBudgetError
from .groupring import GroupSpec, gtilde

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_HYPOTHESIS = 2
EXIT_BUDGET = 3


@dataclass
class RunConfig:
    command: str
    p: int = 2
    exponents: tuple = (1,)
    route: str = "both"
    mode: str = "full"
    fmt: str = "text"
    budget_pairs: int = None
    seed: int = suites_mod.DEFAULT_SEED
    jobs: int = 1
    suite_names: tuple = None
    p_list: tuple = None
    rank: int = 2

    def __post_init__(self):
        if self.budget_pairs is not None and self.budget_pairs <= 0:
            raise ValueError("--budget-pairs must be positive")
        if self.jobs < 1:
            raise ValueError("--jobs must be at least 1")
        if not self.exponents:
            raise ValueError("--exponents must name at least one cyclic factor")

    def spec(self):
        return GroupSpec(self.p, tuple(self.exponents))


def _emit(config, payload, text_lines):
    if config.fmt == "json":
        print(json.dumps(payload, sort_keys=True, separators=(",", ":")))
    else:
        for line in text_lines:
            print(line)


def _group_text(spec):
    factors = " x ".join(f"C_{q}" for q in spec.orders)
    return f"{factors} over F_{spec.p}"


def cmd_k2(config):
    report = k2mod.k2_relative_structure(
        config.spec(),
        route=config.route,
        mode=config.mode,
        budget_pairs=config.budget_pairs,
    )
    lines = [
        f"group: {_group_text(report.spec)}",
        f"K2(F_p[G], (G~)) = {report.structure}",
    ]
    if report.basis_symbols:
        lines.append("basis: " + ", ".join(report.basis_symbols))
    lines.append(f"route: {report.route}")
    if report.agreement is not None:
        lines.append(f"agreement: {'yes' if report.agreement else 'NO'}")
    for w in report.warnings:
        lines.append(f"warning: {w}")
    lines.append(f"time: {report.ms} ms")
    _emit(config, report.to_json(), lines)
    if report.agreement is False:
        return EXIT_VERIFY_FAILED
    return EXIT_OK


def cmd_verify(config):
    names = config.suite_names
    selected = list(suites_mod.SUITES) if names is None else list(names)
    for name in selected:
        if name not in suites_mod.SUITES:
            raise ValueError(f"unknown suite {name!r}")
    if config.jobs > 1:
        with concurrent.futures.ProcessPoolExecutor(
            max_workers=config.jobs
        ) as pool:
            futures = [
                pool.submit(
                    suites_mod.run_suites, [name], config.seed, config.p_list
                )
                for name in selected
            ]
            results = [f.result()[0] for f in futures]
    else:
        results = suites_mod.run_suites(selected, config.seed, config.p_list)
    lines = []
    for res in results:
        verdict = "PASS" if res["ok"] else "FAIL"
        lines.append(
            f"{verdict} {res['suite']}: {res['detail']} "
            f"({res['cases']} cases, {res['ms']} ms)"
        )
    ok = all(r["ok"] for r in results)
    lines.append(f"{sum(r['ok'] for r in results)}/{len(results)} suites passed")
    _emit(config, {"suites": results, "ok": ok}, lines)
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


def cmd_excision(config):
    spec = GroupSpec(2, (1,) * config.rank)
    report = k2mod.excision_check(spec, budget_pairs=config.budget_pairs)
    rel = report["relation_checks"]
    lines = [
        f"group: {_group_text(spec)}",
        f"D(Z[G]/I, J/I) = {_inv_text(report['source'])} "
        f"on a ring of {report['source_ring_size']} elements",
        f"D(F_2[G], (G~)) = {_inv_text(report['target'])}",
        "lattice relations: "
        + ", ".join(f"{k}={'yes' if v else 'NO'}" for k, v in rel.items()),
        f"agree: {'yes' if report['agree'] else 'NO'}; "
        f"surjection certified: {'yes' if report['surjection_certified'] else 'NO'}",
        f"time: {report['ms']} ms",
    ]
    _emit(config, report, lines)
    return EXIT_OK if report["ok"] else EXIT_VERIFY_FAILED


def cmd_square(config):
    report = k2mod.cartesian_square(config.spec())
    lines = [f"group: {_group_text(config.spec())}"]
    for key in ("z_mod_i", "z_mod_j", "fp_group_ring", "fp_mod_gtilde"):
        corner = report["corners"][key]
        if "size" in corner:
            lines.append(f"{corner['description']}: {corner['size']} elements")
        elif "dim" in corner:
            lines.append(f"{corner['description']}: dimension {corner['dim']}")
        else:
            lines.append(f"{corner['description']}: {corner['symbolic']}")
    if report["commutes"] is not None:
        lines.append(f"commutes: {'yes' if report['commutes'] else 'NO'}")
        lines.append(f"pullback: {'yes' if report['pullback'] else 'NO'}")
    lines.append(f"time: {report['ms']} ms")
    _emit(config, report, lines)
    failed = report["commutes"] is False or report["pullback"] is False
    return EXIT_VERIFY_FAILED if failed else EXIT_OK


def cmd_oracle(config):
    spec = config.spec()
    alg = FiniteAlgebra.from_group_ring(spec)
    gt = tuple(gtilde(spec, spec.p).coeffs)
    ideal = ideal_closure(alg, [gt])
    ctx = ds.SquareZeroContext(alg, ideal)
    pres = ds.build_presentation(
        ctx, mode=config.mode, budget_pairs=config.budget_pairs
    )
    payload = pres.to_json()
    payload["p"] = spec.p
    payload["exponents"] = list(spec.exponents)
    lines = [
        f"group: {_group_text(spec)}",
        f"D(F_p[G], (G~)) = {pres.structure} ({config.mode} mode)",
        f"surviving generators: "
        + (", ".join(label for _, label in pres.surviving_generators()) or "none"),
    ]
    _emit(config, payload, lines)
    return EXIT_OK


def _inv_text(invariant_factors):
    if not invariant_factors:
        return "trivial"
    return " x ".join(f"Z/{d}" for d in invariant_factors)


def _parse_int_list(text):
    try:
        return tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated int list: {text!r}")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="relk2",
        description="Relative K2 of group rings via symbols, tensors, and lattices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_spec_flags(p):
        p.add_argument("--p", type=int, default=2, help="the prime p")
        p.add_argument(
            "--exponents",
            type=_parse_int_list,
            default=(1,),
            help="comma-separated cyclic factor exponents, e.g. 1,2",
        )

    def add_common(p):
        p.add_argument("--format", dest="fmt", choices=("text", "json"),
                       default="text")
        p.add_argument("--budget-pairs", type=int, default=None,
                       help="generator-pair budget for symbol presentations")

    pk = sub.add_parser("k2", help="structure of K2(F_p[G], (G~))")
    add_spec_flags(pk)
    add_common(pk)
    pk.add_argument("--route", choices=("tensor", "oracle", "both"),
                    default="both")
    pk.add_argument("--mode", choices=("full", "reduced"), default="full",
                    help="oracle presentation mode")

    pv = sub.add_parser("verify", help="run the verification suites")
    add_common(pv)
    pv.add_argument("--suites", type=lambda s: tuple(s.split(",")),
                    default=None, help="comma-separated suite names")
    pv.add_argument("--p-list", type=_parse_int_list, default=None,
                    help="restrict sweep suites to these primes")
    pv.add_argument("--seed", type=int, default=suites_mod.DEFAULT_SEED)
    pv.add_argument("--jobs", type=int, default=1,
                    help="run suites in parallel processes")

    pe = sub.add_parser("excision", help="Z[G]/I vs F_2[G] symbol groups")
    add_common(pe)
    pe.add_argument("--rank", type=int, default=2,
                    help="rank of the elementary abelian 2-group")

    ps = sub.add_parser("square", help="the four-corner Cartesian square")
    add_spec_flags(ps)
    add_common(ps)

    po = sub.add_parser("oracle", help="Dennis-Stein presentation report")
    add_spec_flags(po)
    add_common(po)
    po.add_argument("--mode", choices=("full", "reduced"), default="full")

    return parser


_COMMANDS = {
    "k2": cmd_k2,
    "verify": cmd_verify,
    "excision": cmd_excision,
    "square": cmd_square,
    "oracle": cmd_oracle,
}


def main(argv=None):
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        config = RunConfig(
            command=ns.command,
            p=getattr(ns, "p", 2),
            exponents=tuple(getattr(ns, "exponents", (1,))),
            route=getattr(ns, "route", "both"),
            mode=getattr(ns, "mode", "full"),
            fmt=ns.fmt,
            budget_pairs=ns.budget_pairs,
            seed=getattr(ns, "seed", suites_mod.DEFAULT_SEED),
            jobs=getattr(ns, "jobs", 1),
            suite_names=getattr(ns, "suites", None),
            p_list=getattr(ns, "p_list", None),
            rank=getattr(ns, "rank", 2),
        )
        return _COMMANDS[ns.command](config)
    except (HypothesisError, ScopeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except SizeBudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
