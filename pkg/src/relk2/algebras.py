"""Finite commutative F_p-algebras and their modules at scalar level.

Everything here reduces module questions to exact linear algebra over Z/p:
ideals are row spans closed under multiplication, quotient algebras are
complement coordinates re-based so the unit is the first basis vector, and
tensor products over the algebra are pair spaces modulo balancing rows
(a*m) (x) n - m (x) (a*n).  Balancing rows are usually 1- or 2-term sparse,
so they are compressed by a signed union-find before any dense elimination.
"""

import itertools

from . import kernels
from .errors import HypothesisError, SizeBudgetError, SpecMismatchError
from .groupring import _is_prime, _spec_tables
from .linalg import AbelianGroupStructure, rref

_DIM_CAP = 256  # largest algebra basis; tables are |basis|^2
_QUOT_CAP = 128  # largest quotient materialized with dense structure constants


class FiniteAlgebra:
    """Commutative unital algebra, free over F_p on a named basis.

    The unit is always the first basis vector.  Multiplication is either a
    monomial table (basis times basis lands on a basis element or vanishes)
    or sparse structure constants.  Elements are dense coefficient tuples.
    """

    __slots__ = ("p", "dim", "names", "_mono", "_sc")

    def __init__(self, p, names, mono_table=None, sc=None):
        if not _is_prime(p):
            raise ValueError(f"scalar modulus {p} is not prime")
        dim = len(names)
        if dim == 0:
            raise ValueError("algebra needs at least the unit basis element")
        if dim > _DIM_CAP:
            raise SizeBudgetError(
                f"algebra dimension {dim} exceeds the table cap {_DIM_CAP}"
            )
        if (mono_table is None) == (sc is None):
            raise ValueError("exactly one of mono_table/sc is required")
        self.p = p
        self.dim = dim
        self.names = tuple(names)
        self._mono = mono_table
        self._sc = sc
        # unit axiom: 1 * e_j = e_j for every basis element
        for j in range(dim):
            if self.mul(self.basis_vec(0), self.basis_vec(j)) != self.basis_vec(j):
                raise ValueError("basis[0] does not act as the unit")

    @classmethod
    def from_group_ring(cls, spec, p=None):
        if p is None:
            p = spec.p
        if spec.order > _DIM_CAP:
            raise SizeBudgetError(
                f"group order {spec.order} exceeds the table cap {_DIM_CAP}"
            )
        _, table = _spec_tables(spec)
        names = tuple(spec.monomial_text(i) for i in range(spec.order))
        return cls(p, names, mono_table=table)

    @classmethod
    def from_monomial_table(cls, p, names, table):
        return cls(p, names, mono_table=table)

    @classmethod
    def from_structure_constants(cls, p, names, sc):
        """sc[i][j] is a sparse tuple of (basis index, coefficient) pairs."""
        return cls(p, names, sc=sc)

    def zero(self):
        return (0,) * self.dim

    def one(self):
        return self.basis_vec(0)

    def basis_vec(self, k):
        v = [0] * self.dim
        v[k] = 1
        return tuple(v)

    def add(self, x, y):
        p = self.p
        return tuple((a + b) % p for a, b in zip(x, y))

    def sub(self, x, y):
        p = self.p
        return tuple((a - b) % p for a, b in zip(x, y))

    def neg(self, x):
        p = self.p
        return tuple(-a % p for a in x)

    def scale(self, c, x):
        p = self.p
        return tuple(c * a % p for a in x)

    def mul(self, x, y):
        if self._mono is not None:
            return tuple(kernels.convolve(list(x), list(y), self._mono, self.p))
        p = self.p
        out = [0] * self.dim
        for i, xi in enumerate(x):
            if not xi:
                continue
            row = self._sc[i]
            for j, yj in enumerate(y):
                if yj:
                    c = xi * yj
                    for k, s in row[j]:
                        out[k] = (out[k] + c * s) % p
        return tuple(out)

    def element_text(self, vec):
        terms = []
        for c, name in zip(vec, self.names):
            if not c:
                continue
            if name == "1":
                terms.append(str(c))
            elif c == 1:
                terms.append(name)
            else:
                terms.append(f"{c}*{name}")
        return " + ".join(terms) if terms else "0"

    def elements(self):
        """All p^dim coefficient tuples, lexicographic.  Caller guards size."""
        return itertools.product(range(self.p), repeat=self.dim)

    def _check_vec(self, vec):
        if len(vec) != self.dim:
            raise SpecMismatchError("coefficient vector has wrong length")


class AlgebraIdeal:
    """Ideal given by generators, stored as an RREF scalar basis.

    The closure iterates multiplication by every algebra basis element to a
    fixed point; RREF keeps the basis canonical, so reruns are reproducible.
    """

    __slots__ = ("algebra", "generators", "rows", "pivots")

    def __init__(self, algebra, generators):
        self.algebra = algebra
        self.generators = tuple(tuple(g) for g in generators)
        for g in self.generators:
            algebra._check_vec(g)
        rows = [list(g) for g in self.generators if any(g)]
        rows, pivots = rref(rows, algebra.dim, algebra.p)
        while True:
            products = []
            for r in rows:
                for b in range(algebra.dim):
                    products.append(list(algebra.mul(algebra.basis_vec(b), tuple(r))))
            new_rows, new_pivots = rref(rows + products, algebra.dim, algebra.p)
            if len(new_rows) == len(rows):
                break
            rows, pivots = new_rows, new_pivots
        self.rows = tuple(tuple(r) for r in rows)
        self.pivots = tuple(pivots)

    @property
    def dim(self):
        return len(self.rows)

    def reduce(self, vec):
        """Residue of vec modulo the ideal's scalar span."""
        p = self.algebra.p
        v = list(vec)
        for row, piv in zip(self.rows, self.pivots):
            c = v[piv] % p
            if c:
                for k in range(piv, len(v)):
                    v[k] = (v[k] - c * row[k]) % p
        return tuple(v)

    def contains(self, vec):
        return not any(self.reduce(vec))

    def coords(self, vec):
        """Coordinates of a member in the RREF basis rows."""
        out = tuple(vec[piv] % self.algebra.p for piv in self.pivots)
        check = [0] * self.algebra.dim
        p = self.algebra.p
        for c, row in zip(out, self.rows):
            for k, rk in enumerate(row):
                check[k] = (check[k] + c * rk) % p
        if tuple(check) != tuple(c % p for c in vec):
            raise ValueError("vector is not in the ideal")
        return out

    def is_proper(self):
        return not self.contains(self.algebra.one())

    def square_zero(self):
        """I^2 = 0, checked on the scalar basis (suffices by bilinearity)."""
        alg = self.algebra
        for u in self.rows:
            for v in self.rows:
                if any(alg.mul(u, v)):
                    return False
        return True


def ideal_closure(algebra, gens):
    return AlgebraIdeal(algebra, gens)


class QuotientAlgebra:
    """A/I with projection and a section, re-based so that bar(1) is basis[0].

    Coset representatives start as the non-pivot coordinates of the ideal's
    RREF; since bar(1) need not be one of those, the basis is changed by one
    invertible transform putting bar(1) first (the algebra invariant).
    """

    __slots__ = ("parent", "ideal", "algebra", "_free", "_basis_rows", "_inv_rows")

    def __init__(self, parent, ideal):
        if ideal.algebra is not parent:
            raise SpecMismatchError("ideal does not live in the given algebra")
        if not ideal.is_proper():
            raise ValueError("cannot form the quotient by the whole ring")
        p = parent.p
        free = [k for k in range(parent.dim) if k not in ideal.pivots]
        dim_q = len(free)
        if dim_q > _QUOT_CAP:
            raise SizeBudgetError(
                f"quotient dimension {dim_q} exceeds the cap {_QUOT_CAP}"
            )
        one_res = ideal.reduce(parent.one())
        one_free = [one_res[k] for k in free]
        star = next(t for t, c in enumerate(one_free) if c)
        basis_rows = [one_free]
        for t in range(dim_q):
            if t != star:
                row = [0] * dim_q
                row[t] = 1
                basis_rows.append(row)
        inv_rows = _invert_mod_p(basis_rows, p)
        self.parent = parent
        self.ideal = ideal
        self._free = tuple(free)
        self._basis_rows = [tuple(r) for r in basis_rows]
        self._inv_rows = inv_rows
        names = ["1"] + [parent.names[free[t]] for t in range(dim_q) if t != star]
        sc = []
        for i in range(dim_q):
            li = self.lift_basis(i)
            row = []
            for j in range(dim_q):
                prod = self.project(parent.mul(li, self.lift_basis(j)))
                row.append(tuple((k, c) for k, c in enumerate(prod) if c))
            sc.append(row)
        self.algebra = FiniteAlgebra(p, names, sc=sc)

    def _to_free(self, vec):
        res = self.ideal.reduce(vec)
        return [res[k] for k in self._free]

    def project(self, vec):
        """Parent element -> coefficient tuple in the quotient basis."""
        w = self._to_free(vec)
        p = self.parent.p
        out = [0] * len(w)
        for t, c in enumerate(w):
            if c:
                row = self._inv_rows[t]
                for k in range(len(w)):
                    out[k] = (out[k] + c * row[k]) % p
        return tuple(out)

    def lift_basis(self, i):
        row = self._basis_rows[i]
        v = [0] * self.parent.dim
        for t, c in enumerate(row):
            v[self._free[t]] = c
        return tuple(v)

    def lift(self, qvec):
        p = self.parent.p
        v = [0] * self.parent.dim
        for i, c in enumerate(qvec):
            if c:
                li = self.lift_basis(i)
                for k in range(self.parent.dim):
                    v[k] = (v[k] + c * li[k]) % p
        return tuple(v)


def _invert_mod_p(rows, p):
    """Inverse of a square matrix over F_p; rows are lists."""
    n = len(rows)
    aug = [list(r) + [1 if k == i else 0 for k in range(n)] for i, r in enumerate(rows)]
    red, pivots = rref(aug, 2 * n, p)
    if list(pivots) != list(range(n)):
        raise ValueError("matrix is singular mod p")
    return [tuple(r[n:]) for r in red]


def quotient_algebra(alg, ideal):
    return QuotientAlgebra(alg, ideal)


class AlgebraModule:
    """Finitely presented module: A^gens modulo rows of algebra elements."""

    __slots__ = ("algebra", "gens", "relations")

    def __init__(self, algebra, gens, relations):
        self.algebra = algebra
        self.gens = gens
        rels = []
        for rel in relations:
            rel = tuple(tuple(entry) for entry in rel)
            if len(rel) != gens:
                raise ValueError("relation row has wrong length")
            for entry in rel:
                algebra._check_vec(entry)
            rels.append(rel)
        self.relations = tuple(rels)

    def scalar_rows(self):
        """One scalar row per (relation, algebra basis element).

        Flat coordinates: generator t, basis index a -> t*dim + a.
        """
        alg = self.algebra
        dim = alg.dim
        rows = []
        for rel in self.relations:
            for b in range(dim):
                eb = alg.basis_vec(b)
                row = []
                for entry in rel:
                    row.extend(alg.mul(eb, entry))
                if any(row):
                    rows.append(row)
        return rows

    def structure(self):
        rows = self.scalar_rows()
        total = self.gens * self.algebra.dim
        reduced, _ = rref(rows, total, self.algebra.p)
        k = total - len(reduced)
        return AbelianGroupStructure((self.algebra.p,) * k)

    def realize(self, labels=None):
        alg = self.algebra
        if labels is None:
            labels = [f"e{t + 1}" for t in range(self.gens)]
        flat_labels = []
        for t in range(self.gens):
            for a in range(alg.dim):
                name = alg.names[a]
                flat_labels.append(labels[t] if name == "1" else f"{name}*{labels[t]}")
        return _realize_free_quotient(
            alg, self.gens, self.scalar_rows(), flat_labels
        )


class RealizedModule:
    """Module over a FiniteAlgebra on explicit F_p coordinates.

    act(b, k) gives the action of the b-th algebra basis element on the k-th
    module coordinate as a dense tuple; everything else is linear in that.
    """

    __slots__ = ("algebra", "dim", "labels", "_act")

    def __init__(self, algebra, dim, labels, act):
        if len(labels) != dim:
            raise ValueError("label count must match module dimension")
        self.algebra = algebra
        self.dim = dim
        self.labels = tuple(labels)
        self._act = act

    @classmethod
    def free(cls, algebra, labels):
        """Free module with one generator per label; coordinates (t, a)."""
        rank = len(labels)
        dim = rank * algebra.dim

        def act(b, k):
            t, a = divmod(k, algebra.dim)
            prod = algebra.mul(algebra.basis_vec(b), algebra.basis_vec(a))
            out = [0] * dim
            for i, c in enumerate(prod):
                out[t * algebra.dim + i] = c
            return tuple(out)

        flat = []
        for t in range(rank):
            for a in range(algebra.dim):
                name = algebra.names[a]
                flat.append(labels[t] if name == "1" else f"{name}*{labels[t]}")
        return cls(algebra, dim, flat, act)

    @classmethod
    def from_ideal(cls, ideal, labels=None):
        alg = ideal.algebra
        if labels is None:
            labels = [alg.element_text(r) for r in ideal.rows]

        def act(b, k):
            return ideal.coords(alg.mul(alg.basis_vec(b), ideal.rows[k]))

        return cls(alg, ideal.dim, labels, act)

    def act_vec(self, b, vec):
        p = self.algebra.p
        out = [0] * self.dim
        for k, c in enumerate(vec):
            if c:
                av = self._act(b, k)
                for i, s in enumerate(av):
                    out[i] = (out[i] + c * s) % p
        return tuple(out)

    def act_element(self, avec, vec):
        p = self.algebra.p
        out = [0] * self.dim
        for b, c in enumerate(avec):
            if not c:
                continue
            bv = self.act_vec(b, vec)
            for i, s in enumerate(bv):
                out[i] = (out[i] + c * s) % p
        return tuple(out)

    def submodule_span(self, vectors):
        """Scalar RREF basis of the A-submodule generated by the vectors."""
        p = self.algebra.p
        rows = [list(v) for v in vectors if any(v)]
        rows, _ = rref(rows, self.dim, p)
        while True:
            products = []
            for r in rows:
                for b in range(self.algebra.dim):
                    products.append(list(self.act_vec(b, tuple(r))))
            new_rows, _ = rref(rows + products, self.dim, p)
            if len(new_rows) == len(rows):
                return [tuple(r) for r in new_rows]
            rows = new_rows

    def quotient_by(self, vectors):
        """(quotient RealizedModule, projection fn) by the A-span of vectors."""
        span = self.submodule_span(vectors)
        return _quotient_of_realized(self, span)


def _quotient_of_realized(mod, span_rows):
    p = mod.algebra.p
    rows, pivots = rref([list(r) for r in span_rows], mod.dim, p)
    rows = [tuple(r) for r in rows]
    pivset = set(pivots)
    free = [k for k in range(mod.dim) if k not in pivset]
    index_of = {k: t for t, k in enumerate(free)}

    def reduce_coords(vec):
        v = list(vec)
        for row, piv in zip(rows, pivots):
            c = v[piv] % p
            if c:
                for k in range(piv, mod.dim):
                    v[k] = (v[k] - c * row[k]) % p
        return tuple(v[k] % p for k in free)

    def act(b, k):
        return reduce_coords(mod._act(b, free[k]))

    labels = [mod.labels[k] for k in free]
    quot = RealizedModule(mod.algebra, len(free), labels, act)

    def project(vec):
        return reduce_coords(vec)

    return quot, project


def _realize_free_quotient(algebra, ngens, scalar_rows, flat_labels):
    base = RealizedModule.free(algebra, [f"e{t + 1}" for t in range(ngens)])
    base = RealizedModule(algebra, base.dim, flat_labels, base._act)
    quot, _ = _quotient_of_realized(base, scalar_rows)
    return quot


def module_over_quotient(quot, ideal_bar):
    """J/I as a module over A/J (quot = A/I -> A/J, ideal_bar = J/I in A/I).

    Well-definedness needs (J/I)^2 = 0 (the b_i*J in I hypothesis); checked.
    """
    if ideal_bar.algebra is not quot.parent:
        raise SpecMismatchError("ideal and quotient live over different algebras")
    if not ideal_bar.square_zero():
        raise HypothesisError("(J/I)^2 != 0: action of A/J is not well defined")
    parent = quot.parent

    def act(b, k):
        lifted = quot.lift_basis(b)
        return ideal_bar.coords(parent.mul(lifted, ideal_bar.rows[k]))

    labels = [parent.element_text(r) for r in ideal_bar.rows]
    return RealizedModule(quot.algebra, ideal_bar.dim, labels, act)


class _SignedUnionFind:
    """Coordinates modulo relations e_i = c*e_j and e_i = 0, scalars in F_p*."""

    __slots__ = ("p", "parent", "coeff", "dead")

    def __init__(self, n, p):
        self.p = p
        self.parent = list(range(n))
        self.coeff = [1] * n  # e_i = coeff[i] * e_root(i)
        self.dead = [False] * n

    def find(self, i):
        """(root, c) with e_i = c * e_root, path-compressed."""
        path = []
        while self.parent[i] != i:
            path.append(i)
            i = self.parent[i]
        c = 1
        for j in reversed(path):
            c = c * self.coeff[j] % self.p
            self.coeff[j] = c
            self.parent[j] = i
        return i, c if not path else self.coeff[path[0]]

    def kill(self, i):
        r, _ = self.find(i)
        self.dead[r] = True

    def relate(self, i, ci, j, cj):
        """Impose ci*e_i + cj*e_j = 0 (ci, cj units)."""
        p = self.p
        ri, a = self.find(i)
        rj, b = self.find(j)
        # ci*a*e_ri + cj*b*e_rj = 0
        u = ci * a % p
        v = cj * b % p
        if ri == rj:
            if (u + v) % p:
                self.dead[ri] = True
            return
        # keep the smaller index as root so labels stay canonical
        if ri > rj:
            ri, rj, u, v = rj, ri, v, u
        # e_rj = -u/v * e_ri
        self.parent[rj] = ri
        self.coeff[rj] = -u * pow(v, p - 2, p) % p
        if self.dead[rj]:
            self.dead[rj] = False
            self.dead[ri] = True

    def resolve(self, i):
        """(root, c) with e_i = c*e_root, or None if the class is dead."""
        r, c = self.find(i)
        if self.dead[r]:
            return None
        return r, c


class TensorProduct:
    """M (x)_A N computed on the pair basis modulo balancing rows."""

    __slots__ = (
        "p", "mdim", "ndim", "labels", "structure", "_uf",
        "_root_index", "_rows", "_pivots", "_free",
    )

    def __init__(self, m, n, budget_pairs=None):
        if m.algebra is not n.algebra:
            raise SpecMismatchError("tensor factors live over different algebras")
        alg = m.algebra
        p = alg.p
        npairs = m.dim * n.dim
        if budget_pairs is not None and npairs > budget_pairs:
            raise SizeBudgetError(
                f"tensor pair space {npairs} exceeds budget {budget_pairs}"
            )
        self.p = p
        self.mdim = m.dim
        self.ndim = n.dim
        uf = _SignedUnionFind(npairs, p)
        dense = []
        for b in range(1, alg.dim):
            m_act = [m._act(b, i) for i in range(m.dim)]
            n_act = [n._act(b, j) for j in range(n.dim)]
            for i in range(m.dim):
                mi = m_act[i]
                for j in range(n.dim):
                    nj = n_act[j]
                    entries = {}
                    for k, c in enumerate(mi):
                        if c:
                            entries[k * n.dim + j] = c
                    for l, c in enumerate(nj):
                        if c:
                            key = i * n.dim + l
                            entries[key] = (entries.get(key, 0) - c) % p
                    items = [(k, c) for k, c in entries.items() if c % p]
                    if not items:
                        continue
                    if len(items) == 1:
                        uf.kill(items[0][0])
                    elif len(items) == 2:
                        (k1, c1), (k2, c2) = items
                        uf.relate(k1, c1, k2, c2)
                    else:
                        dense.append(items)
        self._uf = uf
        # surviving roots, then eliminate whatever dense rows remain
        roots = sorted(
            {uf.resolve(k)[0] for k in range(npairs) if uf.resolve(k) is not None}
        )
        self._root_index = {r: t for t, r in enumerate(roots)}
        nroots = len(roots)
        dense_rows = []
        for items in dense:
            row = [0] * nroots
            touched = False
            for k, c in items:
                res = self._uf.resolve(k)
                if res is None:
                    continue
                r, s = res
                row[self._root_index[r]] = (row[self._root_index[r]] + c * s) % p
                touched = True
            if touched and any(row):
                dense_rows.append(row)
        rows, pivots = rref(dense_rows, nroots, p)
        self._rows = [tuple(r) for r in rows]
        self._pivots = tuple(pivots)
        pivset = set(pivots)
        self._free = [t for t in range(nroots) if t not in pivset]
        mlab, nlab = m.labels, n.labels
        labels = []
        for t in self._free:
            k = roots[t]
            i, j = divmod(k, n.dim)
            labels.append(f"{mlab[i]}(x){nlab[j]}")
        self.labels = tuple(labels)
        self.structure = AbelianGroupStructure((p,) * len(self._free))

    def reduce(self, pair_vec):
        """Canonical coordinates of a raw pair-space vector."""
        p = self.p
        acc = [0] * len(self._root_index)
        for k, c in enumerate(pair_vec):
            if not c:
                continue
            res = self._uf.resolve(k)
            if res is None:
                continue
            r, s = res
            t = self._root_index[r]
            acc[t] = (acc[t] + c * s) % p
        for row, piv in zip(self._rows, self._pivots):
            c = acc[piv]
            if c:
                for t in range(piv, len(acc)):
                    acc[t] = (acc[t] - c * row[t]) % p
        return tuple(acc[t] for t in self._free)

    def pure(self, mvec, nvec):
        """Image of the pure tensor m (x) n."""
        p = self.p
        out = [0] * (self.mdim * self.ndim)
        for i, a in enumerate(mvec):
            if not a:
                continue
            base = i * self.ndim
            for j, b in enumerate(nvec):
                if b:
                    out[base + j] = a * b % p
        return self.reduce(out)

    def is_zero_map(self):
        return len(self._free) == 0


def tensor_over_algebra(m, n, budget_pairs=None):
    return TensorProduct(m, n, budget_pairs)


def bilinear_map_trivial(fn, left_basis, right_basis):
    """Does the bilinear map vanish on all basis pairs (suffices)?"""
    for u in left_basis:
        for v in right_basis:
            if any(fn(u, v)):
                return False
    return True
