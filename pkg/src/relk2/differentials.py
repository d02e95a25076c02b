"""Kahler differentials of presented F_p-algebras via Jacobian presentations.

An algebra is presented by per-variable power relations x_i^{k_i} = c_i with
c_i in {0, 1}; that covers group rings (x^k = 1), truncated polynomial rings
(x^k = 0), and the coprime-order contrast cases.  Omega is materialized as
the cokernel of the Jacobian — never assumed free — and the group-ring
freeness is asserted from the vanishing of those rows, not the other way
round.

The conormal presentation (quotient of a free module on dg_i by the span of
d-images of ideal generators) also yields Omega of quotients that have no
monomial basis of their own, e.g. F_p[G]/(Gtilde).
"""

from .algebras import AlgebraModule, FiniteAlgebra, RealizedModule
from .errors import SpecMismatchError
from .groupring import _is_prime
from .kernels import table
from .linalg import AbelianGroupStructure, rref


class PresentedAlgebra:
    """F_p[x_1..x_v] / (x_i^{k_i} - c_i), with a monomial basis.

    Monomials with exponents 0 <= e_i < k_i form the basis, ordered
    lexicographically (mixed-radix index).  Products reduce by a single
    substitution since e + f <= 2k - 2 < 2k.
    """

    __slots__ = ("p", "varnames", "powers", "dim", "_alg")

    def __init__(self, p, varnames, powers):
        if not _is_prime(p):
            raise ValueError(f"p = {p} is not prime")
        varnames = tuple(varnames)
        powers = tuple(tuple(pw) for pw in powers)
        if len(varnames) != len(powers) or not varnames:
            raise ValueError("need one (power, constant) pair per variable")
        for k, c in powers:
            if k < 1 or c not in (0, 1):
                raise ValueError("relations must be x^k = c with k >= 1, c in {0,1}")
        self.p = p
        self.varnames = varnames
        self.powers = powers
        dim = 1
        for k, _ in powers:
            dim *= k
        self.dim = dim
        self._alg = None

    @classmethod
    def group_ring(cls, spec):
        names = tuple(f"g{i}" for i in range(1, spec.rank + 1))
        return cls(spec.p, names, tuple((q, 1) for q in spec.orders))

    @property
    def nvars(self):
        return len(self.varnames)

    def monomial_index(self, exps):
        idx = 0
        for e, (k, _) in zip(exps, self.powers):
            if not 0 <= e < k:
                raise ValueError("exponent out of range")
            idx = idx * k + e
        return idx

    def monomial_exps(self, idx):
        out = []
        for k, _ in reversed(self.powers):
            out.append(idx % k)
            idx //= k
        return tuple(reversed(out))

    def monomial_text(self, idx):
        parts = []
        for name, e in zip(self.varnames, self.monomial_exps(idx)):
            if e == 1:
                parts.append(name)
            elif e:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"

    def relation_text(self, j):
        name = self.varnames[j]
        k, c = self.powers[j]
        return f"{name}^{k} - {c}"

    def finite_algebra(self):
        if self._alg is None:
            n = self.dim
            exps = [self.monomial_exps(i) for i in range(n)]
            flat = []
            for ei in exps:
                for ej in exps:
                    out = []
                    dead = False
                    for a, b, (k, c) in zip(ei, ej, self.powers):
                        e = a + b
                        if e >= k:
                            if c == 0:
                                dead = True
                                break
                            e -= k
                        out.append(e)
                    flat.append(-1 if dead else self.monomial_index(tuple(out)))
            names = tuple(self.monomial_text(i) for i in range(n))
            self._alg = FiniteAlgebra.from_monomial_table(self.p, names, table(flat))
        return self._alg

    def jacobian_rows(self):
        """One row per relation x_j^{k_j} - c_j; entry i is del f_j / del x_i."""
        rows = []
        zero = (0,) * self.dim
        for j, (k, _) in enumerate(self.powers):
            row = [zero] * self.nvars
            coeff = k % self.p
            if coeff:
                exps = [0] * self.nvars
                exps[j] = k - 1
                vec = [0] * self.dim
                vec[self.monomial_index(tuple(exps))] = coeff
                row[j] = tuple(vec)
            rows.append(tuple(row))
        return rows


_gr_cache = {}


def group_ring_presentation(spec):
    palg = _gr_cache.get(spec)
    if palg is None:
        palg = PresentedAlgebra.group_ring(spec)
        _gr_cache[spec] = palg
    return palg


def d_coeffs(palg, vec):
    """Coefficient vectors of d(vec): the dx_i-component per variable.

    Monomial power rule: the dx_i-coefficient of d(prod x^e) is
    e_i * prod x^(e - delta_i); the factor e_i kills the term when e_i = 0,
    so no exponent ever goes negative in presentation coordinates.
    """
    p = palg.p
    v = palg.nvars
    out = [[0] * palg.dim for _ in range(v)]
    for idx, c in enumerate(vec):
        if not c:
            continue
        exps = palg.monomial_exps(idx)
        for i, e in enumerate(exps):
            if e:
                lower = list(exps)
                lower[i] = e - 1
                k = palg.monomial_index(tuple(lower))
                out[i][k] = (out[i][k] + c * e) % p
    return [tuple(r) for r in out]


class DiffForm:
    """Element of Omega: one algebra coefficient per dx_i."""

    __slots__ = ("palg", "coeffs")

    def __init__(self, palg, coeffs):
        coeffs = tuple(tuple(c) for c in coeffs)
        if len(coeffs) != palg.nvars:
            raise ValueError("need one coefficient per variable")
        self.palg = palg
        self.coeffs = coeffs

    def __add__(self, other):
        if other.palg is not self.palg:
            raise SpecMismatchError("forms over different algebras")
        alg = self.palg.finite_algebra()
        return DiffForm(
            self.palg,
            [alg.add(a, b) for a, b in zip(self.coeffs, other.coeffs)],
        )

    def scale(self, avec):
        """Left multiplication by an algebra element."""
        alg = self.palg.finite_algebra()
        return DiffForm(self.palg, [alg.mul(tuple(avec), c) for c in self.coeffs])

    def __eq__(self, other):
        return (
            isinstance(other, DiffForm)
            and self.palg is other.palg
            and self.coeffs == other.coeffs
        )

    def __bool__(self):
        return any(any(c) for c in self.coeffs)

    def serialize(self):
        alg = self.palg.finite_algebra()
        return [
            (f"d{name}", alg.element_text(c))
            for name, c in zip(self.palg.varnames, self.coeffs)
        ]

    def __repr__(self):
        inner = ", ".join(f"{n}: {t}" for n, t in self.serialize())
        return f"<DiffForm {inner}>"


def d(element):
    """Derivation on a group-ring element (coefficients mod p)."""
    spec = element.spec
    if element.m != spec.p:
        raise SpecMismatchError("d is defined on F_p coefficients")
    palg = group_ring_presentation(spec)
    return DiffForm(palg, d_coeffs(palg, element.coeffs))


class DifferentialModule:
    """Omega as a presented module: generators dx_i, Jacobian relation rows."""

    __slots__ = ("palg", "module", "is_free", "labels")

    def __init__(self, palg):
        rows = palg.jacobian_rows()
        self.palg = palg
        self.module = AlgebraModule(palg.finite_algebra(), palg.nvars, rows)
        self.is_free = all(not any(any(e) for e in row) for row in rows)
        self.labels = tuple(f"d{name}" for name in palg.varnames)

    @property
    def rank(self):
        return self.palg.nvars if self.is_free else None

    def realized(self):
        # the free fast path is earned by the zero-row check, never assumed
        if self.is_free:
            return RealizedModule.free(self.palg.finite_algebra(), list(self.labels))
        return self.module.realize(list(self.labels))

    def structure(self):
        if self.is_free:
            alg = self.palg.finite_algebra()
            return AbelianGroupStructure((alg.p,) * (self.palg.nvars * alg.dim))
        return self.module.structure()


def omega(palg):
    return DifferentialModule(palg)


def omega_group_ring(spec):
    """Omega of F_p[G]; free on dg_1..dg_r because every Jacobian row is 0."""
    dm = omega(group_ring_presentation(spec))
    assert dm.is_free, "nonzero Jacobian row in a group-ring presentation"
    return dm


def omega_of_quotient(spec, quot, gen_vecs):
    """Omega of T = F_p[G]/(gens) by the conormal presentation.

    quot must be the QuotientAlgebra of the group-ring algebra by the ideal
    the generators generate.  Returns (realized module over quot.algebra,
    dmap) where dmap sends a group-ring coefficient vector to the
    coordinates of d(its class); this is D-pi composed with d, so it is
    independent of the chosen lift.
    """
    palg = group_ring_presentation(spec)
    base = RealizedModule.free(
        quot.algebra, [f"dg{i}" for i in range(1, spec.rank + 1)]
    )

    def flatten(form_coeffs):
        out = []
        for cvec in form_coeffs:
            out.extend(quot.project(cvec))
        return tuple(out)

    dvecs = [flatten(d_coeffs(palg, tuple(g))) for g in gen_vecs]
    quot_mod, project = base.quotient_by(dvecs)

    def dmap(avec):
        return project(flatten(d_coeffs(palg, tuple(avec))))

    return quot_mod, dmap


def conormal_check(palg, ideal_indices=None):
    """Exactness of I/I^2 -> T (x) Omega_S -> Omega_T -> 0 at scalar level.

    The presentation of T = palg lists all relations; ideal_indices selects
    the ones generating I (the rest present S).  Default: all of them, i.e.
    S is the free polynomial ring.  Verifies that the submodule generated by
    the 1 (x) df images equals the kernel of D-pi, plus the rank bookkeeping
    of surjectivity.
    """
    if ideal_indices is None:
        ideal_indices = range(len(palg.powers))
    ideal_set = set(ideal_indices)
    alg = palg.finite_algebra()
    base = RealizedModule.free(alg, [f"d{n}" for n in palg.varnames])

    def flat(row):
        out = []
        for entry in row:
            out.extend(entry)
        return tuple(out)

    rows = palg.jacobian_rows()
    s_rows = [flat(r) for j, r in enumerate(rows) if j not in ideal_set]
    i_rows = [flat(r) for j, r in enumerate(rows) if j in ideal_set]

    u_s = base.submodule_span(s_rows)
    image_d = base.submodule_span(i_rows)
    lhs, _ = rref([list(r) for r in u_s + image_d], base.dim, alg.p)
    u_all = base.submodule_span(s_rows + i_rows)
    if [tuple(r) for r in lhs] != list(u_all):
        return False
    # surjectivity bookkeeping: dim Omega_T = dim middle - dim ker(D-pi)
    omega_t = DifferentialModule(palg).realized()
    middle_dim = base.dim - len(u_s)
    return omega_t.dim == middle_dim - (len(u_all) - len(u_s))
