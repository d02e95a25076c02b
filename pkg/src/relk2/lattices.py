"""Integral ideal lattices in Z[G] for elementary abelian 2-groups.

All characters of such G are rational, so the character map embeds Z[G]
into Gamma = Z^|G| (pointwise multiplication) with finite index.  Working
in character coordinates, J = |G|*Gamma and I = J n pZ[G] are honest
integer lattices and the finite rings Z[G]/I, Z[G]/J can be materialized
with exact arithmetic: additive structure from the Hermite form of the
ideal lattice, multiplication through the character embedding and back.

Scope is deliberately p = 2, exponent-1 only — for anything else Gamma
involves cyclotomic integers and none of this applies.
"""

import itertools

from . import kernels
from .errors import ScopeError, SizeBudgetError, SpecMismatchError
from .linalg import (
    cokernel_structure,
    hnf,
    hnf_reduce,
    lattice_contains,
    lattice_intersect,
    mat_mul,
)

_RANK_CAP = 4
_MATERIALIZE_CAP = 2 ** 13
_TABLE_CAP = 2 ** 11


class CharacterLattice:
    """Gamma, the embedded Z[G], and the ideal lattices J and I.

    char_matrix rows are indexed by characters, columns by group elements;
    both run over the same monomial indexing of the exponent vectors, so
    row 0 is the trivial character.
    """

    __slots__ = (
        "spec", "n", "char_matrix", "zg_rows", "zg_hnf",
        "j_rows", "i_rows", "gtilde_char",
    )

    def __init__(self, spec):
        if spec.p != 2 or any(e != 1 for e in spec.exponents):
            raise ScopeError(
                "character lattices cover p=2 elementary abelian groups only"
            )
        if spec.rank > _RANK_CAP:
            raise ScopeError(f"rank {spec.rank} exceeds the lattice cap {_RANK_CAP}")
        self.spec = spec
        n = spec.order
        self.n = n
        exps = [spec.monomial_exps(i) for i in range(n)]
        self.char_matrix = [
            [
                -1 if sum(a * b for a, b in zip(exps[s], exps[g])) & 1 else 1
                for g in range(n)
            ]
            for s in range(n)
        ]
        # image of the group-element basis under all characters at once
        self.zg_rows = [
            [self.char_matrix[s][g] for s in range(n)] for g in range(n)
        ]
        self.zg_hnf = hnf(self.zg_rows, n)
        self.j_rows = [[n if i == j else 0 for j in range(n)] for i in range(n)]
        p_zg = [[2 * x for x in row] for row in self.zg_rows]
        self.i_rows = lattice_intersect(self.j_rows, p_zg, n)
        self.gtilde_char = [sum(row) for row in self.char_matrix]

    @property
    def gamma_rows(self):
        return [[1 if i == j else 0 for j in range(self.n)] for i in range(self.n)]

    def coeff_coords(self, v):
        """Z[G] coefficients of a character vector; exact or ValueError."""
        n = self.n
        out = []
        for g in range(n):
            s = sum(self.char_matrix[k][g] * v[k] for k in range(n))
            q, r = divmod(s, n)
            if r:
                raise ValueError("vector is not in the image of Z[G]")
            out.append(q)
        return out

    def char_of_coeffs(self, c):
        return [
            sum(row[g] * c[g] for g in range(self.n)) for row in self.char_matrix
        ]

    def ideal_rows(self, which):
        if which == "I":
            return self.i_rows
        if which == "J":
            return self.j_rows
        raise ValueError(f"unknown ideal {which!r}")

    def index_in_gamma(self):
        """[Gamma : Z[G]], the product of the HNF diagonal."""
        out = 1
        for i, row in enumerate(self.zg_hnf):
            out *= row[i]
        return out

    def to_json(self):
        return {
            "p": self.spec.p,
            "exponents": list(self.spec.exponents),
            "zg_hnf": [list(r) for r in self.zg_hnf],
            "j_hnf": [list(r) for r in hnf(self.j_rows, self.n)],
            "i_hnf": [list(r) for r in self.i_rows],
            "index_in_gamma": self.index_in_gamma(),
        }


def build_lattices(spec):
    """CharacterLattice with the embedding invariants verified."""
    lat = CharacterLattice(spec)
    n = lat.n
    mt = [[lat.char_matrix[s][g] for s in range(n)] for g in range(n)]
    prod = mat_mul(mt, lat.char_matrix)
    expect = [[n if i == j else 0 for j in range(n)] for i in range(n)]
    if prod != expect:
        raise SpecMismatchError("character matrix fails orthogonality")
    for row in lat.j_rows:
        if not lattice_contains(lat.zg_hnf, row):
            raise SpecMismatchError("J is not contained in the image of Z[G]")
    return lat


def relation_details(lat, i_rows=None):
    """The three ideal-lattice identities, individually."""
    n = lat.n
    i_rows = lat.i_rows if i_rows is None else hnf(i_rows, n)
    j_hnf = hnf(lat.j_rows, n)
    span = hnf(list(i_rows) + [lat.gtilde_char], n)
    two_gt = [2 * x for x in lat.gtilde_char]
    sq = True
    for u in j_hnf:
        for v in j_hnf:
            if not lattice_contains(i_rows, [a * b for a, b in zip(u, v)]):
                sq = False
                break
        if not sq:
            break
    return {
        "j_is_i_plus_gtilde": span == j_hnf,
        "p_gtilde_in_i": lattice_contains(i_rows, two_gt),
        "j_squared_in_i": sq,
    }


def relation_checks(lat, i_rows=None):
    return all(relation_details(lat, i_rows).values())


class FiniteQuotientRing:
    """Z[G]/L for a finite-index ideal lattice L, with exact tables.

    Elements are canonical Hermite residues: integer vectors with the i-th
    coordinate in [0, d_i) for the HNF diagonal d.  Index 0 is zero.
    """

    __slots__ = (
        "lat", "which", "basis_hnf", "diag", "size", "additive",
        "reps", "one_index", "gtilde_index", "_index", "_char", "_tables",
    )

    def __init__(self, lat, which):
        self.lat = lat
        self.which = which
        n = lat.n
        basis = quotient_coeff_hnf(lat, which)
        self.basis_hnf = basis
        self.diag = tuple(basis[i][i] for i in range(n))
        size = 1
        for d in self.diag:
            size *= d
        if size > _MATERIALIZE_CAP:
            raise SizeBudgetError(
                f"quotient ring has {size} elements; cap is {_MATERIALIZE_CAP}"
            )
        self.size = size
        self.additive = cokernel_structure(basis, n)
        self.reps = [
            tuple(v) for v in itertools.product(*[range(d) for d in self.diag])
        ]
        self._index = {v: i for i, v in enumerate(self.reps)}
        self._char = None
        self._tables = None
        self.one_index = self.index_of([1] + [0] * (n - 1))
        self.gtilde_index = self.index_of([1] * n)

    def reduce(self, coeffs):
        return tuple(hnf_reduce(self.basis_hnf, coeffs))

    def index_of(self, coeffs):
        return self._index[self.reduce(coeffs)]

    def _char_images(self):
        if self._char is None:
            self._char = [self.lat.char_of_coeffs(v) for v in self.reps]
        return self._char

    def mul_index(self, i, j):
        u = self._char_images()[i]
        v = self._char_images()[j]
        prod = [a * b for a, b in zip(u, v)]
        return self.index_of(self.lat.coeff_coords(prod))

    def add_index(self, i, j):
        return self.index_of(
            [a + b for a, b in zip(self.reps[i], self.reps[j])]
        )

    def neg_index(self, i):
        return self.index_of([-a for a in self.reps[i]])

    def tables(self):
        """Flat mul/add/neg tables for the symbol kernels."""
        if self._tables is not None:
            return self._tables
        if self.size > _TABLE_CAP:
            raise SizeBudgetError(
                f"operation tables need {self.size}^2 entries; cap is "
                f"{_TABLE_CAP}^2"
            )
        n = self.size
        mul = kernels.table(
            self.mul_index(i, j) for i in range(n) for j in range(n)
        )
        add = kernels.table(
            self.add_index(i, j) for i in range(n) for j in range(n)
        )
        neg = kernels.table(self.neg_index(i) for i in range(n))
        self._tables = (mul, add, neg)
        return self._tables

    def ideal_class_indices(self):
        """Indices of the classes k * class(G~): the ideal J/L."""
        out = {0}
        g = self.gtilde_index
        cur = g
        while cur not in out:
            out.add(cur)
            cur = self.add_index(cur, g)
        return tuple(sorted(out))

    def verify_ring_axioms(self):
        """Exhaustive unit/commutativity/associativity/distributivity."""
        if self.size > 2 ** 10:
            raise SizeBudgetError("exhaustive axiom check capped at 2^10 elements")
        mul, add, _neg = self.tables()
        n = self.size
        one = self.one_index
        for i in range(n):
            if mul[one * n + i] != i or mul[i * n + one] != i:
                return False
        for i in range(n):
            for j in range(n):
                if mul[i * n + j] != mul[j * n + i]:
                    return False
                for k in range(n):
                    if mul[mul[i * n + j] * n + k] != mul[i * n + mul[j * n + k]]:
                        return False
                    lhs = mul[i * n + add[j * n + k]]
                    if lhs != add[mul[i * n + j] * n + mul[i * n + k]]:
                        return False
        return True

    def additive_exponent_divides(self, m):
        """m * x = 0 for every element x."""
        for v in self.reps:
            if any(self.reduce([m * a for a in v])):
                return False
        return True

    def element_text(self, idx):
        spec = self.lat.spec
        v = self.reps[idx]
        terms = []
        for g, c in enumerate(v):
            if not c:
                continue
            mono = spec.monomial_text(g)
            if mono == "1":
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms) if terms else "0"

    def to_json(self):
        return {
            "which": self.which,
            "size": self.size,
            "additive": self.additive.to_json(),
            "hnf_diag": list(self.diag),
            "gtilde": self.gtilde_index,
        }


def quotient_coeff_hnf(lat, which):
    """HNF of the ideal lattice in Z[G] coefficient coordinates."""
    coeff = [lat.coeff_coords(v) for v in lat.ideal_rows(which)]
    basis = hnf(coeff, lat.n)
    if len(basis) != lat.n:
        raise SpecMismatchError("ideal lattice is not of finite index")
    return basis


def quotient_size(lat, which):
    basis = quotient_coeff_hnf(lat, which)
    out = 1
    for i in range(lat.n):
        out *= basis[i][i]
    return out


def quotient_additive(lat, which):
    """Additive structure of Z[G]/L without materializing the ring."""
    return cokernel_structure(quotient_coeff_hnf(lat, which), lat.n)


def quotient_ring(lat, which):
    """Materialized Z[G]/I or Z[G]/J with its axioms verified when small."""
    ring = FiniteQuotientRing(lat, which)
    if ring.size <= 2 ** 10:
        if not ring.verify_ring_axioms():
            raise SpecMismatchError("quotient ring fails the ring axioms")
    if not ring.additive_exponent_divides(lat.n * lat.spec.p):
        raise SpecMismatchError("additive exponent exceeds |G|*p")
    return ring
