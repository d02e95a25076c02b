"""Verification suites shared by the CLI and the acceptance tests.

Each suite replays one headline claim across its full supported range and
returns a verdict with a case count; the CLI prints one line per suite,
the acceptance tests assert on the same results with their time budgets.
Randomized suites take an explicit seed so runs are reproducible.
"""

import itertools
import random
import time

from . import dennis_stein as ds
from . import k2 as k2mod
from .algebras import FiniteAlgebra, ideal_closure
from .differentials import PresentedAlgebra, omega, omega_group_ring
from .groupring import GroupSpec, gtilde, gtilde_factorization_check, x_element
from .linalg import det_unimodular, hnf, mat_mul, snf

DEFAULT_SEED = 1729
_SWEEP_PRIMES = (2, 3, 5)
_SWEEP_MAX_ORDER = 125
_SWEEP_MAX_RANK = 3


def sweep_specs(p_list=None):
    """All (p, exponents) with p in {2,3,5}, rank <= 3, |G| <= 125.

    Exponent tuples are nondecreasing — permutations give isomorphic
    groups — and the order is deterministic.
    """
    primes = _SWEEP_PRIMES if p_list is None else tuple(p_list)
    out = []
    for p in primes:
        for r in range(1, _SWEEP_MAX_RANK + 1):
            for exps in itertools.combinations_with_replacement(range(1, 7), r):
                if p ** sum(exps) <= _SWEEP_MAX_ORDER:
                    out.append(GroupSpec(p, exps))
    return out


def suite_factorization(p_list=None, **_):
    """prod_j x_j^(q_j - 1) = G~ in F_p[G] across the sweep."""
    specs = sweep_specs(p_list)
    for spec in specs:
        if not gtilde_factorization_check(spec):
            return False, len(specs), f"factorization fails for {spec}"
    return True, len(specs), "all sweep specs"


def suite_omega(p_list=None, **_):
    """Omega of a group ring is free of rank r; the coprime case is not."""
    specs = sweep_specs(p_list)
    for spec in specs:
        dm = omega_group_ring(spec)
        if not dm.is_free or dm.rank != spec.rank:
            return False, len(specs), f"Omega not free of rank {spec.rank} for {spec}"
    contrast = omega(PresentedAlgebra(2, ["x"], [(3, 1)]))
    if contrast.is_free or not contrast.structure().is_trivial:
        return False, len(specs) + 1, "F_2[x]/(x^3 - 1) should have trivial Omega"
    return True, len(specs) + 1, "sweep + coprime contrast"


def suite_tensor(p_list=None, **_):
    """(G~) (x) Omega is (Z/p)^r with the symbol basis, for every |G| > 2."""
    specs = [s for s in sweep_specs(p_list) if s.order > 2]
    for spec in specs:
        structure, bijective = k2mod.tensor_route_structure(spec)
        if structure.invariant_factors != (spec.p,) * spec.rank:
            return False, len(specs), f"{spec}: tensor gave {structure}"
        if not bijective:
            return False, len(specs), f"{spec}: basis symbols do not span"
    c2 = GroupSpec(2, (1,))
    structure, _pres = k2mod.oracle_route(c2, mode="full")
    if not structure.is_trivial:
        return False, len(specs) + 1, f"C_2 oracle gave {structure}"
    return True, len(specs) + 1, "sweep of |G| > 2 plus the C_2 oracle"


_ORACLE_CASES = (
    GroupSpec(2, (1,)),
    GroupSpec(2, (1, 1)),
    GroupSpec(3, (1,)),
)


def suite_oracle(**_):
    """Full-mode D agrees with the tensor route and with reduced mode."""
    cases = 0
    report = k2mod.k2_relative_structure(GroupSpec(2, (1, 1)), route="both")
    cases += 1
    if report.structure.invariant_factors != (2, 2) or not report.agreement:
        return False, cases, f"C_2 x C_2 both-route report: {report.to_json()}"
    for spec in _ORACLE_CASES:
        full, _ = k2mod.oracle_route(spec, mode="full")
        reduced, _ = k2mod.oracle_route(spec, mode="reduced")
        cases += 1
        if full.invariant_factors != reduced.invariant_factors:
            return False, cases, (
                f"{spec}: full {full} != reduced {reduced}"
            )
    full, _ = k2mod.oracle_route(GroupSpec(3, (1,)), mode="full")
    cases += 1
    if full.invariant_factors != (3,):
        return False, cases, f"C_3 oracle gave {full}"
    return True, cases, "full = tensor = reduced on the oracle set"


_SCHOLIUM_CONTEXTS = (
    GroupSpec(2, (1, 1)),
    GroupSpec(3, (1,)),
    GroupSpec(2, (1, 2)),
)


def _context(spec):
    alg = FiniteAlgebra.from_group_ring(spec)
    gt = tuple(gtilde(spec, spec.p).coeffs)
    ideal = ideal_closure(alg, [gt])
    return alg, gt, ds.SquareZeroContext(alg, ideal)


def suite_scholium_psi(seed=DEFAULT_SEED, **_):
    """Lemma of the split unit symbol: random products normalize to 1.

    Tuples have at least two ideal members, which makes 1 - prod(alpha)
    a unit automatically (the product lands in I^2 = 0) and puts an ideal
    component in every factor of the expansion.
    """
    rng = random.Random(seed)
    cases = 0
    for spec in _SCHOLIUM_CONTEXTS:
        alg, gt, ctx = _context(spec)
        pres = ds.build_presentation(ctx, mode="full")
        p, dim = alg.p, alg.dim
        for _ in range(100):
            length = rng.randint(2, 4)
            in_ideal = rng.sample(range(length), 2)
            alphas = []
            for i in range(length):
                if i in in_ideal:
                    alphas.append(alg.scale(rng.randrange(1, p), gt))
                else:
                    alphas.append(tuple(rng.randrange(p) for _ in range(dim)))
            expr = ds.scholium_expand(ctx, alphas)
            cases += 1
            if pres.normalize(expr) != pres.zero:
                return False, cases, f"scholium expansion nonzero over {spec}"
    for spec in (GroupSpec(2, (1, 1)), GroupSpec(2, (1, 2))):
        alg, gt, _ctx = _context(spec)
        ideal = ideal_closure(alg, [gt])
        factors = k2mod.default_factor_blocks(spec)
        ctx = ds.SquareZeroContext(alg, ideal, factors=factors)
        cases += 1
        if not ds.psi_triviality_check(ctx):
            return False, cases, f"psi image not trivial for {spec}"
    return True, cases, "300 random expansions + psi on both contexts"


_RHO_CONTEXTS = (GroupSpec(2, (1, 1)), GroupSpec(3, (1,)))


def suite_rho(**_):
    """rho kills every enumerated full-mode relation row."""
    cases = 0
    for spec in _RHO_CONTEXTS:
        ok, pres, _rho = k2mod.rho_welldefined_check(spec)
        cases += len(pres.raw_rows)
        if not ok:
            return False, cases, f"rho does not vanish on a relation row of {spec}"
    return True, cases, "all relation rows of the full-mode contexts"


def suite_excision(**_):
    """Z[G]/I vs F_2[G] symbol groups agree for r = 1, 2."""
    expected = {1: (), 2: (2, 2)}
    cases = 0
    for r, want in expected.items():
        report = k2mod.excision_check(GroupSpec(2, (1,) * r))
        cases += 1
        if not report["ok"]:
            return False, cases, f"excision report not ok at rank {r}: {report}"
        if tuple(report["source"]) != want or tuple(report["target"]) != want:
            return False, cases, f"rank {r} structures differ from {want}"
    return True, cases, "ranks 1 and 2, including the lattice relation checks"


def suite_linalg(seed=DEFAULT_SEED, **_):
    """SNF reconstruction and HNF uniqueness on seeded random matrices."""
    rng = random.Random(seed)
    cases = 0
    for _ in range(200):
        m = rng.randint(1, 8)
        n = rng.randint(1, 8)
        mat = [[rng.randint(-20, 20) for _ in range(n)] for _ in range(m)]
        d, u, v = snf(mat, n)
        cases += 1
        if mat_mul(mat_mul(u, mat), v) != d:
            return False, cases, "UMV != D"
        if abs(det_unimodular(u)) != 1 or abs(det_unimodular(v)) != 1:
            return False, cases, "transform is not unimodular"
        diag = [d[i][i] for i in range(min(m, n))]
        for a, b in zip(diag, diag[1:]):
            if a < 0 or (b % a if a else b):
                return False, cases, "diagonal is not a divisibility chain"
    for _ in range(50):
        n = rng.randint(2, 6)
        rows = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n + 1)]
        base = hnf(rows, n) if any(map(any, rows)) else None
        if base is None:
            continue
        shuffled = [list(r) for r in rows]
        rng.shuffle(shuffled)
        for _ in range(8):
            i, j = rng.randrange(len(shuffled)), rng.randrange(len(shuffled))
            if i != j:
                c = rng.randint(-3, 3)
                shuffled[i] = [
                    a + c * b for a, b in zip(shuffled[i], shuffled[j])
                ]
        cases += 1
        if hnf(shuffled, n) != base:
            return False, cases, "HNF depends on the generating set"
    return True, cases, "200 SNF reconstructions + 50 HNF uniqueness pairs"


SUITES = {
    "factorization": suite_factorization,
    "omega": suite_omega,
    "tensor": suite_tensor,
    "oracle": suite_oracle,
    "scholium": suite_scholium_psi,
    "rho": suite_rho,
    "excision": suite_excision,
    "linalg": suite_linalg,
}


def run_suites(names=None, seed=DEFAULT_SEED, p_list=None):
    """Run the named suites (default all) and collect verdict dicts."""
    selected = list(SUITES) if names is None else list(names)
    results = []
    for name in selected:
        if name not in SUITES:
            raise ValueError(f"unknown suite {name!r}")
        t0 = time.monotonic()
        ok, cases, detail = SUITES[name](seed=seed, p_list=p_list)
        results.append(
            {
                "suite": name,
                "ok": ok,
                "cases": cases,
                "detail": detail,
                "ms": int((time.monotonic() - t0) * 1000),
            }
        )
    return results
