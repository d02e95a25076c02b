"""Dennis-Stein symbol calculus for square-zero ideals.

D(R, I) is the abelian group presented by symbols <a, b> over
(R x I) u (I x R) subject to the DS1-DS3 relations; with I^2 = 0 the
correction terms collapse and the group is our computational model of the
relative K2.  Relations are encoded additively over Z so Smith normal form
applies; the all-pairs ("full") enumeration is the oracle, the basis-pair
("reduced") enumeration is the construction that scales, and their agreement
wherever both run is a tested invariant, not an assumption.

Symbols are stored on canonical generators with the second component in the
ideal (DS1 applied eagerly, sign -1 for flipped pairs).  Rows of one or two
unit entries are folded by a signed union-find before the integer cokernel
is computed; everything else goes through HNF/SNF.
"""

import os
import re

from . import kernels
from .errors import HypothesisError, SizeBudgetError, SpecMismatchError
from .linalg import CokernelStructure, rref

_RING_CAP = 2048  # largest element count for full-mode tables
_DEFAULT_BUDGET = 4096  # |R| * |I| generator-pair budget for full mode


def pair_budget(override=None):
    if override is not None:
        return override
    env = os.environ.get("RELK2_BUDGET_PAIRS")
    return int(env) if env else _DEFAULT_BUDGET


def check_square_zero(algebra, ideal):
    """I^2 = 0 on the scalar basis (sufficient by bilinearity)."""
    if ideal.algebra is not algebra:
        raise SpecMismatchError("ideal does not live in the given algebra")
    return ideal.square_zero()


def is_unit(alg, vec):
    """Solvability of x*v = 1, i.e. 1 in the image of multiplication by v."""
    rows = [list(alg.mul(alg.basis_vec(j), tuple(vec))) for j in range(alg.dim)]
    red, pivots = rref(rows, alg.dim, alg.p)
    v = list(alg.one())
    for row, piv in zip(red, pivots):
        c = v[piv]
        if c:
            v = [(a - c * b) % alg.p for a, b in zip(v, row)]
    return not any(v)


class SquareZeroContext:
    """Ring R with a verified square-zero ideal and optional factor data.

    The factor data lists elements b_1..b_r whose product generates the
    ideal and which kill it elementwise (the b_i*J in I hypothesis, read in
    the quotient where I has already been collapsed: b_i * ideal = 0).
    """

    __slots__ = ("algebra", "ideal", "factors")

    def __init__(self, algebra, ideal, factors=None):
        if ideal.algebra is not algebra:
            raise SpecMismatchError("ideal does not live in the given algebra")
        if not ideal.square_zero():
            raise HypothesisError("ideal does not satisfy I^2 = 0")
        self.algebra = algebra
        self.ideal = ideal
        if factors is not None:
            factors = tuple(tuple(b) for b in factors)
            for b in factors:
                algebra._check_vec(b)
                for row in ideal.rows:
                    if any(algebra.mul(b, row)):
                        raise HypothesisError(
                            "factor element does not annihilate the ideal"
                        )
        self.factors = factors

    @property
    def r(self):
        return len(self.factors) if self.factors else 0

    def factor_product(self):
        if not self.factors:
            raise HypothesisError("context carries no factor data")
        out = self.algebra.one()
        for b in self.factors:
            out = self.algebra.mul(out, b)
        return out


class RingTable:
    """Element-indexed tables of a finite algebra, for the full enumeration.

    Elements are numbered by their coefficient tuples in base p with the
    first basis coordinate least significant, so index 0 is 0 and index 1
    is the ring unit.
    """

    __slots__ = ("algebra", "n", "mul", "add", "neg", "ideal_elems")

    def __init__(self, algebra, ideal):
        p = algebra.p
        n = p ** algebra.dim
        if n > _RING_CAP:
            raise SizeBudgetError(
                f"ring has {n} elements; full enumeration caps at {_RING_CAP}"
            )
        self.algebra = algebra
        self.n = n
        dim = algebra.dim
        vecs = [self._dec(i, p, dim) for i in range(n)]
        enc = self._enc
        mul = kernels.table(
            enc(algebra.mul(vecs[i], vecs[j]), p) for i in range(n) for j in range(n)
        )
        add = kernels.table(
            enc(algebra.add(vecs[i], vecs[j]), p) for i in range(n) for j in range(n)
        )
        neg = kernels.table(enc(algebra.neg(vecs[i]), p) for i in range(n))
        self.mul = mul
        self.add = add
        self.neg = neg
        self.ideal_elems = tuple(
            i for i in range(n) if ideal.contains(vecs[i])
        )

    @staticmethod
    def _enc(vec, p):
        idx = 0
        for c in reversed(vec):
            idx = idx * p + c
        return idx

    @staticmethod
    def _dec(idx, p, dim):
        out = []
        for _ in range(dim):
            out.append(idx % p)
            idx //= p
        return tuple(out)

    def vec(self, idx):
        return self._dec(idx, self.algebra.p, self.algebra.dim)

    def index(self, vec):
        return self._enc(vec, self.algebra.p)


class _ElemIndex:
    """Ideal element indices with O(1) position lookup."""

    __slots__ = ("elems", "pos")

    def __init__(self, elems):
        self.elems = tuple(elems)
        self.pos = {e: t for t, e in enumerate(self.elems)}

    def __len__(self):
        return len(self.elems)

    def __getitem__(self, t):
        return self.elems[t]

    def index(self, y):
        return self.pos[y]


class _SignedUF:
    """Coordinates over Z modulo e_i = +-e_j and e_i = 0 relations."""

    __slots__ = ("parent", "sign", "dead")

    def __init__(self, n):
        self.parent = list(range(n))
        self.sign = [1] * n
        self.dead = [False] * n

    def find(self, i):
        path = []
        while self.parent[i] != i:
            path.append(i)
            i = self.parent[i]
        s = 1
        for j in reversed(path):
            s *= self.sign[j]
            self.sign[j] = s
            self.parent[j] = i
        return i, (self.sign[path[0]] if path else 1)

    def kill(self, i):
        r, _ = self.find(i)
        self.dead[r] = True

    def relate(self, i, ci, j, cj):
        """Impose ci*e_i + cj*e_j = 0 with ci, cj in {1, -1}.

        Returns a leftover (root, coeff) row when the constraint collapses
        to 2*e_root = 0, which Z cannot absorb into the union-find.
        """
        ri, a = self.find(i)
        rj, b = self.find(j)
        u = ci * a
        v = cj * b
        if ri == rj:
            if u + v:
                return (ri, u + v)
            return None
        if ri > rj:
            ri, rj, u, v = rj, ri, v, u
        self.parent[rj] = ri
        self.sign[rj] = -u * v
        if self.dead[rj]:
            self.dead[rj] = False
            self.dead[ri] = True
        return None

    def resolve(self, i):
        r, s = self.find(i)
        if self.dead[r]:
            return None
        return r, s


class _Compression:
    """Signed-union-find fold of unit rows, then an integer cokernel."""

    __slots__ = ("ngens", "uf", "roots", "root_index", "cokernel", "structure")

    def __init__(self, ngens, raw_rows):
        uf = _SignedUF(ngens)
        deferred = []
        for row in raw_rows:
            if len(row) == 1 and abs(row[0][1]) == 1:
                uf.kill(row[0][0])
            elif len(row) == 2 and abs(row[0][1]) == 1 and abs(row[1][1]) == 1:
                (g1, c1), (g2, c2) = row
                leftover = uf.relate(g1, c1, g2, c2)
                if leftover is not None:
                    deferred.append((leftover,))
            else:
                deferred.append(row)
        self.ngens = ngens
        self.uf = uf
        roots = sorted(
            {
                uf.resolve(g)[0]
                for g in range(ngens)
                if uf.resolve(g) is not None
            }
        )
        self.roots = roots
        self.root_index = {r: t for t, r in enumerate(roots)}
        dense = []
        for row in deferred:
            v = self.to_dense(row)
            if any(v):
                dense.append(v)
        self.cokernel = CokernelStructure(dense, len(roots))
        self.structure = self.cokernel.structure

    def to_dense(self, sparse):
        v = [0] * len(self.roots)
        for g, c in sparse:
            res = self.uf.resolve(g)
            if res is None:
                continue
            r, s = res
            v[self.root_index[r]] += c * s
        return v

    def project(self, sparse):
        return self.cokernel.project(self.to_dense(sparse))


class SymbolPresentation:
    """Finitely presented D(R, I) with coordinates in its SNF structure."""

    __slots__ = ("ctx", "mode", "ngens", "raw_rows", "_comp", "_ideal_index")

    def __init__(self, ctx, mode, ngens, raw_rows, ideal_index=None):
        self.ctx = ctx
        self.mode = mode
        self.ngens = ngens
        self.raw_rows = raw_rows
        self._ideal_index = ideal_index
        self._comp = _Compression(ngens, raw_rows)

    @property
    def cokernel(self):
        return self._comp.cokernel

    @property
    def structure(self):
        return self._comp.structure

    # -- generator bookkeeping -------------------------------------------

    def generator_pair(self, gen):
        """(a vector, b vector) of a generator id; b is in the ideal."""
        ctx = self.ctx
        if self.mode == "full":
            table = self._ideal_index
            x, t = divmod(gen, len(table))
            rt = RingTable
            p, dim = ctx.algebra.p, ctx.algebra.dim
            return rt._dec(x, p, dim), rt._dec(table[t], p, dim)
        k = ctx.ideal.dim
        s, t = divmod(gen, k)
        return ctx.algebra.basis_vec(s), ctx.ideal.rows[t]

    def generator_label(self, gen):
        a, b = self.generator_pair(gen)
        alg = self.ctx.algebra
        return f"<{alg.element_text(a)}|{alg.element_text(b)}>"

    def surviving_generators(self):
        comp = self._comp
        return [(comp.root_index[r], self.generator_label(r)) for r in comp.roots]

    # -- normal form ------------------------------------------------------

    def encode_factor(self, avec, bvec, sign, acc):
        """Accumulate the generator-space encoding of <a, b>^sign into acc."""
        ctx = self.ctx
        if self.mode != "full":
            _encode_reduced(ctx, avec, bvec, sign, acc)
            return
        if not ctx.ideal.contains(bvec):
            if not ctx.ideal.contains(avec):
                raise ValueError("symbol has no component in the ideal")
            avec, bvec = bvec, avec
            sign = -sign
        p = ctx.algebra.p
        table = self._ideal_index
        x = RingTable._enc(tuple(c % p for c in avec), p)
        y = RingTable._enc(tuple(c % p for c in bvec), p)
        g = x * len(table) + table.index(y)
        acc[g] = acc.get(g, 0) + sign

    def project_raw(self, acc):
        """Structure coordinates of a sparse generator-space vector."""
        return self._comp.project(list(acc.items()))

    def normalize(self, expr):
        acc = {}
        for avec, bvec, sign in expr.factors:
            self.encode_factor(avec, bvec, sign, acc)
        return self.project_raw(acc)

    def symbol_coords(self, avec, bvec, sign=1):
        acc = {}
        self.encode_factor(tuple(avec), tuple(bvec), sign, acc)
        return self.project_raw(acc)

    @property
    def zero(self):
        return self.cokernel.zero

    def to_json(self):
        return {
            "mode": self.mode,
            "generators": [label for _, label in self.surviving_generators()],
            "relations": [list(map(int, r)) for r in self.cokernel.rows],
            "structure": self.structure.to_json(),
        }


def build_presentation(ctx, mode="full", budget_pairs=None):
    if mode == "full":
        return _build_full(ctx, pair_budget(budget_pairs))
    if mode == "reduced":
        return _build_reduced(ctx, pair_budget(budget_pairs))
    raise ValueError(f"unknown mode {mode!r}")


def _build_full(ctx, budget):
    table = RingTable(ctx.algebra, ctx.ideal)
    n = table.n
    ni = len(table.ideal_elems)
    if n * ni > budget:
        raise SizeBudgetError(
            f"full mode needs {n}*{ni} generator pairs, budget is {budget}"
        )
    rows = kernels.ds_rows(
        n, table.mul, table.add, table.neg, list(table.ideal_elems)
    )
    raw = sorted(rows)
    return SymbolPresentation(
        ctx, "full", n * ni, raw, ideal_index=_ElemIndex(table.ideal_elems)
    )


def _build_reduced(ctx, budget):
    alg = ctx.algebra
    ideal = ctx.ideal
    k = ideal.dim
    ngens = alg.dim * k
    if ngens > budget:
        raise SizeBudgetError(
            f"reduced mode needs {ngens} generator pairs, budget is {budget}"
        )
    rows = set()

    def emit(factors):
        acc = {}
        for a, b, sign in factors:
            _encode_reduced(ctx, a, b, sign, acc)
        row = tuple(sorted((g, c) for g, c in acc.items() if c))
        if row:
            rows.add(row)

    basis = [alg.basis_vec(s) for s in range(alg.dim)]
    irows = list(ideal.rows)

    # DS1 on ideal basis pairs
    for u in irows:
        for v in irows:
            emit([(u, v, 1), (v, u, 1)])
    # DS2 with x in R-basis and y, z multiples of one ideal basis vector;
    # distinct-basis instances are identically zero under the bilinear
    # encoding, but scalar multiples wrap mod p and yield the exponent rows.
    for x in basis:
        for y in irows:
            for c in range(1, alg.p):
                z = alg.scale(c, y)
                emit([(x, y, 1), (x, z, 1), (x, alg.add(y, z), -1)])
    # DS2 with x in the ideal and y, z in the R-basis (xyz survives)
    for x in irows:
        for y in basis:
            xy = alg.mul(x, y)
            for z in basis:
                xyz = alg.mul(xy, z)
                t = alg.sub(alg.add(y, z), xyz)
                emit([(x, y, 1), (x, z, 1), (x, t, -1)])
    # DS3, x in the ideal
    for x in irows:
        for y in basis:
            xy = alg.mul(x, y)
            for z in basis:
                yz = alg.mul(y, z)
                xz = alg.mul(x, z)
                emit([(x, yz, 1), (xy, z, -1), (xz, y, -1)])
    # DS3, y in the ideal (z-in-ideal duplicates this under y <-> z)
    for y in irows:
        for x in basis:
            if ideal.contains(x):
                continue
            xy = alg.mul(x, y)
            for z in basis:
                yz = alg.mul(y, z)
                xz = alg.mul(x, z)
                emit([(x, yz, 1), (xy, z, -1), (xz, y, -1)])

    return SymbolPresentation(ctx, "reduced", ngens, sorted(rows))


class TablePresentation:
    """D(R, I) for a ring given only by element-indexed operation tables.

    This is the route for rings that are not F_p-algebras (additive torsion
    beyond exponent p), e.g. quotients of Z[G] by an ideal lattice.  Labels
    are delegated to an element_text callable over element indices.
    """

    __slots__ = ("n", "ideal", "_comp", "element_text")

    def __init__(self, n, mul, add, neg, ideal_elems, element_text=str,
                 budget_pairs=None):
        ni = len(ideal_elems)
        budget = pair_budget(budget_pairs)
        if n * ni > budget:
            raise SizeBudgetError(
                f"table mode needs {n}*{ni} generator pairs, budget is {budget}"
            )
        self.n = n
        self.ideal = _ElemIndex(ideal_elems)
        self.element_text = element_text
        rows = kernels.ds_rows(n, mul, add, neg, list(ideal_elems))
        self._comp = _Compression(n * ni, sorted(rows))

    @property
    def structure(self):
        return self._comp.structure

    @property
    def zero(self):
        return self._comp.cokernel.zero

    def generator_pair(self, gen):
        x, t = divmod(gen, len(self.ideal))
        return x, self.ideal[t]

    def generator_label(self, gen):
        x, y = self.generator_pair(gen)
        return f"<{self.element_text(x)}|{self.element_text(y)}>"

    def surviving_generators(self):
        comp = self._comp
        return [(comp.root_index[r], self.generator_label(r)) for r in comp.roots]

    def surviving_pairs(self):
        """Element-index pairs (x, y) of the surviving symbol generators."""
        return [self.generator_pair(r) for r in self._comp.roots]

    def symbol_coords(self, x, y, sign=1):
        """Coordinates of <x, y> for element indices with y in the ideal."""
        if y not in self.ideal.pos:
            if x not in self.ideal.pos:
                raise ValueError("symbol has no component in the ideal")
            x, y, sign = y, x, -sign
        g = x * len(self.ideal) + self.ideal.index(y)
        return self._comp.project([(g, sign)])


def _encode_reduced(ctx, avec, bvec, sign, acc):
    alg = ctx.algebra
    ideal = ctx.ideal
    if not ideal.contains(bvec):
        if not ideal.contains(avec):
            raise ValueError("symbol has no component in the ideal")
        avec, bvec = bvec, avec
        sign = -sign
    k = ideal.dim
    bcoords = ideal.coords(bvec)
    for s, ca in enumerate(avec):
        if not ca:
            continue
        for t, cb in enumerate(bcoords):
            if cb:
                g = s * k + t
                acc[g] = acc.get(g, 0) + sign * ca * cb


class SymbolExpr:
    """Formal product of Dennis-Stein symbols, prod <a, b>^sign."""

    __slots__ = ("ctx", "factors")

    def __init__(self, ctx, factors):
        self.ctx = ctx
        self.factors = tuple(
            (tuple(a), tuple(b), sign) for a, b, sign in factors
        )
        for a, b, _ in self.factors:
            ctx.algebra._check_vec(a)
            ctx.algebra._check_vec(b)
            if not (ctx.ideal.contains(a) or ctx.ideal.contains(b)):
                raise ValueError("symbol has no component in the ideal")

    @classmethod
    def symbol(cls, ctx, a, b, sign=1):
        return cls(ctx, [(a, b, sign)])

    def __mul__(self, other):
        if other.ctx is not self.ctx:
            raise SpecMismatchError("expressions over different contexts")
        return SymbolExpr(self.ctx, self.factors + other.factors)

    def inverse(self):
        return SymbolExpr(
            self.ctx, [(a, b, -sign) for a, b, sign in self.factors]
        )

    def text(self):
        alg = self.ctx.algebra
        parts = []
        for a, b, sign in self.factors:
            s = f"<{alg.element_text(a)}|{alg.element_text(b)}>"
            if sign < 0:
                s += "^-1"
            parts.append(s)
        return " * ".join(parts) if parts else "1"

    _FACTOR_RE = re.compile(r"<([^|>]*)\|([^>]*)>(\^-1)?")

    @classmethod
    def parse(cls, ctx, text):
        # element texts survive whitespace stripping ("2*g1 + g2" etc.),
        # and the only '*' outside <...> is the factor separator
        body = re.sub(r"\s+", "", text)
        if body == "1":
            return cls(ctx, [])
        factors = []
        pos = 0
        while pos < len(body):
            if factors:
                if body[pos] != "*":
                    raise ValueError(f"malformed symbol expression: {text!r}")
                pos += 1
            m = cls._FACTOR_RE.match(body, pos)
            if m is None:
                raise ValueError(f"malformed symbol expression: {text!r}")
            a = parse_algebra_element(ctx.algebra, m.group(1))
            b = parse_algebra_element(ctx.algebra, m.group(2))
            factors.append((a, b, -1 if m.group(3) else 1))
            pos = m.end()
        return cls(ctx, factors)


def parse_algebra_element(alg, text):
    """Inverse of FiniteAlgebra.element_text (canonical forms only)."""
    s = text.strip()
    if s == "0":
        return alg.zero()
    name_index = {name: i for i, name in enumerate(alg.names)}
    out = [0] * alg.dim
    for term in s.split("+"):
        term = term.strip()
        if not term:
            raise ValueError(f"malformed element text: {text!r}")
        if "*" in term:
            coeff_s, _, name = term.partition("*")
            try:
                coeff = int(coeff_s)
            except ValueError:
                # not a leading coefficient: the whole term is a monomial
                coeff, name = 1, term
        elif term.lstrip("-").isdigit():
            coeff, name = int(term), "1"
        else:
            coeff, name = 1, term
        if name not in name_index:
            raise ValueError(f"unknown basis element {name!r}")
        out[name_index[name]] = (out[name_index[name]] + coeff) % alg.p
    return tuple(out)


def scholium_expand(ctx, alphas):
    """1 = <1, a_0..a_l> = prod <a_i, hat a_i>: return the right-hand side.

    hat a_i is the product with the i-th factor omitted.  Requires
    1 - a_0..a_l to be a unit and each factor to have a component in the
    ideal (two alphas in the ideal suffice for both).
    """
    alg = ctx.algebra
    alphas = [tuple(a) for a in alphas]
    if not alphas:
        raise ValueError("need at least one factor")
    total = alg.one()
    for a in alphas:
        total = alg.mul(total, a)
    if not is_unit(alg, alg.sub(alg.one(), total)):
        raise ValueError("1 - product of factors is not a unit")
    factors = []
    for i, a in enumerate(alphas):
        hat = alg.one()
        for j, b in enumerate(alphas):
            if j != i:
                hat = alg.mul(hat, b)
        factors.append((a, hat, 1))
    return SymbolExpr(ctx, factors)


def psi_triviality_check(ctx, presentation=None, mode="reduced"):
    """normalize(<b_1..b_r s, b_1..b_r t>) = 0 for all scalar basis s, t.

    This is the direct computation behind Im(psi) = 1; requires r > 1 so the
    product of the factor elements already lies in the ideal.
    """
    if not ctx.factors:
        raise HypothesisError("psi triviality needs factor data")
    if ctx.r <= 1:
        raise HypothesisError("psi triviality needs r > 1 factors")
    prod = ctx.factor_product()
    if not ctx.ideal.contains(prod):
        raise HypothesisError("product of factor elements is not in the ideal")
    if presentation is None:
        presentation = build_presentation(ctx, mode=mode)
    alg = ctx.algebra
    zero = presentation.zero
    for s in range(alg.dim):
        bs = alg.mul(prod, alg.basis_vec(s))
        for t in range(alg.dim):
            bt = alg.mul(prod, alg.basis_vec(t))
            if not any(bs) and not any(bt):
                continue
            expr = SymbolExpr.symbol(ctx, bs, bt)
            if presentation.normalize(expr) != zero:
                return False
    return True


class RhoMap:
    """rho<a, b> = a (x) db if a in the ideal, else -b (x) da.

    The first case wins when both components lie in the ideal.  ``jcoords``
    maps an ideal member to its module coordinates, ``dmap`` a ring element
    to coordinates in the realized Omega, ``tensor`` is their TensorProduct.
    """

    __slots__ = ("ctx", "jcoords", "dmap", "tensor")

    def __init__(self, ctx, jcoords, dmap, tensor):
        self.ctx = ctx
        self.jcoords = jcoords
        self.dmap = dmap
        self.tensor = tensor

    def factor(self, avec, bvec, sign=1):
        ideal = self.ctx.ideal
        if ideal.contains(avec):
            val = self.tensor.pure(self.jcoords(avec), self.dmap(bvec))
        elif ideal.contains(bvec):
            val = self.tensor.pure(self.jcoords(bvec), self.dmap(avec))
            sign = -sign
        else:
            raise ValueError("symbol has no component in the ideal")
        if sign < 0:
            p = self.tensor.p
            val = tuple(-c % p for c in val)
        return val

    def expr(self, expr):
        p = self.tensor.p
        out = None
        for avec, bvec, sign in expr.factors:
            v = self.factor(avec, bvec, sign)
            out = v if out is None else tuple((a + b) % p for a, b in zip(out, v))
        if out is None:
            out = self.tensor.pure(
                (0,) * self.tensor.mdim, (0,) * self.tensor.ndim
            )
        return out

    def vanishes_on_rows(self, presentation):
        """Exhaustive well-definedness check over the presentation's rows."""
        p = self.tensor.p
        for row in presentation.raw_rows:
            acc = None
            for g, c in row:
                a, b = presentation.generator_pair(g)
                v = self.factor(a, b)
                v = tuple(c * x % p for x in v)
                acc = v if acc is None else tuple(
                    (x + y) % p for x, y in zip(acc, v)
                )
            if acc is not None and any(acc):
                return False
        return True
