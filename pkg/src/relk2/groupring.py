"""Group rings of finite abelian p-groups, with dense coefficient vectors.

A group G = C_{p^{n_1}} x ... x C_{p^{n_r}} is described by a GroupSpec.
Monomials g1^e1 * ... * gr^er are identified with their exponent tuples and
ordered lexicographically; that order coincides with the mixed-radix value
of the tuple, which is the index into the dense coefficient vector.

Elements carry their coefficient modulus m (m = 0 means Z coefficients).
Mixing different specs or moduli in one operation is a hard error, never a
coercion.
"""

from dataclasses import dataclass

from . import kernels
from .errors import SizeBudgetError, SpecMismatchError

_TABLE_CAP = 512  # largest |G| with a cached dense monomial product table

_spec_cache = {}


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class GroupSpec:
    """Shape of G: the prime p and the exponent n_i of each cyclic factor.

    >>> GroupSpec(2, (1, 2)).order
    8
    >>> GroupSpec(3, (1,)).orders
    (3,)
    """

    p: int
    exponents: tuple

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError(f"p = {self.p} is not prime")
        if not self.exponents:
            raise ValueError("at least one cyclic factor is required")
        if any(not isinstance(n, int) or n < 1 for n in self.exponents):
            raise ValueError("exponents must be positive integers")

    @property
    def rank(self):
        return len(self.exponents)

    @property
    def orders(self):
        return tuple(self.p ** n for n in self.exponents)

    @property
    def order(self):
        n = 1
        for q in self.orders:
            n *= q
        return n

    def monomial_index(self, exps):
        """Index of a monomial; exponents are reduced mod the factor orders.

        Negative exponents are valid: g^-1 == g^(order-1).
        """
        if len(exps) != self.rank:
            raise ValueError("exponent tuple has wrong length")
        idx = 0
        for e, q in zip(exps, self.orders):
            idx = idx * q + (e % q)
        return idx

    def monomial_exps(self, idx):
        out = []
        for q in reversed(self.orders):
            out.append(idx % q)
            idx //= q
        return tuple(reversed(out))

    def monomial_text(self, idx):
        parts = []
        for k, e in enumerate(self.monomial_exps(idx)):
            if e == 1:
                parts.append(f"g{k + 1}")
            elif e:
                parts.append(f"g{k + 1}^{e}")
        return "*".join(parts) if parts else "1"


def _spec_tables(spec):
    """(exponent tuples, flat monomial product table or None), cached."""
    entry = _spec_cache.get(spec)
    if entry is None:
        n = spec.order
        exps = [spec.monomial_exps(i) for i in range(n)]
        table = None
        if n <= _TABLE_CAP:
            orders = spec.orders
            flat = []
            for ei in exps:
                for ej in exps:
                    flat.append(
                        spec.monomial_index(
                            tuple((a + b) % q for a, b, q in zip(ei, ej, orders))
                        )
                    )
            table = kernels.table(flat)
        entry = (exps, table)
        _spec_cache[spec] = entry
    return entry


class RingElement:
    """Element of (Z/m)[G] (m = 0: Z[G]) as a dense coefficient tuple."""

    __slots__ = ("spec", "m", "coeffs")

    def __init__(self, spec, m, coeffs):
        if m < 0:
            raise ValueError("modulus must be nonnegative")
        coeffs = tuple(coeffs)
        if len(coeffs) != spec.order:
            raise ValueError("coefficient vector has wrong length")
        if m:
            coeffs = tuple(c % m for c in coeffs)
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("RingElement is immutable")

    @classmethod
    def zero(cls, spec, m):
        return cls(spec, m, (0,) * spec.order)

    @classmethod
    def one(cls, spec, m):
        return cls.monomial(spec, m, (0,) * spec.rank)

    @classmethod
    def monomial(cls, spec, m, exps, c=1):
        coeffs = [0] * spec.order
        coeffs[spec.monomial_index(exps)] = c
        return cls(spec, m, coeffs)

    def _check(self, other):
        if not isinstance(other, RingElement):
            raise TypeError("expected a RingElement")
        if other.spec != self.spec:
            raise SpecMismatchError("elements belong to different group specs")
        if other.m != self.m:
            raise SpecMismatchError(f"modulus mismatch: {self.m} vs {other.m}")

    def __add__(self, other):
        self._check(other)
        return RingElement(
            self.spec, self.m, [a + b for a, b in zip(self.coeffs, other.coeffs)]
        )

    def __sub__(self, other):
        self._check(other)
        return RingElement(
            self.spec, self.m, [a - b for a, b in zip(self.coeffs, other.coeffs)]
        )

    def __neg__(self):
        return RingElement(self.spec, self.m, [-a for a in self.coeffs])

    def scale(self, c):
        return RingElement(self.spec, self.m, [c * a for a in self.coeffs])

    def __mul__(self, other):
        self._check(other)
        return RingElement(
            self.spec, self.m, convolve(self.spec, self.m, self.coeffs, other.coeffs)
        )

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        out = RingElement.one(self.spec, self.m)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def __eq__(self, other):
        return (
            isinstance(other, RingElement)
            and self.spec == other.spec
            and self.m == other.m
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.spec, self.m, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def text(self):
        """Canonical text: coefficient-monomial terms in monomial order.

        >>> gtilde(GroupSpec(2, (1, 1)), 2).text()
        '1 + g2 + g1 + g1*g2'
        """
        terms = []
        for idx, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = self.spec.monomial_text(idx)
            if mono == "1":
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms) if terms else "0"

    def __repr__(self):
        mod = f" mod {self.m}" if self.m else " over Z"
        return f"<RingElement {self.text()}{mod}>"


def convolve(spec, m, a, b):
    """Dense convolution of coefficient vectors; the |G|^2 pair walk."""
    exps, table = _spec_tables(spec)
    n = spec.order
    if table is not None and m:
        return kernels.convolve(list(a), list(b), table, m)
    out = [0] * n
    if table is not None:
        for i, ai in enumerate(a):
            if not ai:
                continue
            base = i * n
            for j, bj in enumerate(b):
                if bj:
                    out[table[base + j]] += ai * bj
    else:
        orders = spec.orders
        for i, ai in enumerate(a):
            if not ai:
                continue
            ei = exps[i]
            for j, bj in enumerate(b):
                if not bj:
                    continue
                ej = exps[j]
                k = spec.monomial_index(
                    tuple((x + y) % q for x, y, q in zip(ei, ej, orders))
                )
                out[k] += ai * bj
    return [c % m for c in out] if m else out


def ring_mul(x, y):
    return x * y


def gtilde(spec, m):
    """Sum of all group elements (written Gtilde throughout)."""
    return RingElement(spec, m, (1,) * spec.order)


def x_element(spec, m, i):
    """x_i = g_i - 1 for 1 <= i <= rank."""
    if not 1 <= i <= spec.rank:
        raise ValueError(f"generator index {i} out of range")
    exps = [0] * spec.rank
    exps[i - 1] = 1
    coeffs = [0] * spec.order
    coeffs[spec.monomial_index(exps)] += 1
    coeffs[0] -= 1
    return RingElement(spec, m, coeffs)


def augmentation(el):
    """Image under the coefficient-sum map to Z/m."""
    s = sum(el.coeffs)
    return s % el.m if el.m else s


def gtilde_factorization_check(spec):
    """Does prod_j x_j^(p^(n_j) - 1) equal Gtilde in F_p[G]?

    >>> gtilde_factorization_check(GroupSpec(2, (1, 1)))
    True
    """
    p = spec.p
    prod = RingElement.one(spec, p)
    for j, q in enumerate(spec.orders, start=1):
        prod = prod * x_element(spec, p, j) ** (q - 1)
    return prod == gtilde(spec, p)


def parse_element(spec, m, text):
    """Parse the canonical element text form (inverse of RingElement.text).

    >>> parse_element(GroupSpec(2, (1, 1)), 2, "1 + g1*g2").coeffs
    (1, 0, 0, 1)
    """
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty element text")
    if s == "0":
        return RingElement.zero(spec, m)
    coeffs = [0] * spec.order
    for term in s.split("+"):
        if not term:
            raise ValueError(f"malformed element text: {text!r}")
        coeff = 1
        exps = [0] * spec.rank
        if term.startswith("-"):
            coeff = -1
            term = term[1:]
        for factor in term.split("*"):
            if not factor:
                raise ValueError(f"malformed element text: {text!r}")
            if factor[0] == "g":
                body = factor[1:]
                if "^" in body:
                    gen_s, _, exp_s = body.partition("^")
                else:
                    gen_s, exp_s = body, "1"
                try:
                    gen = int(gen_s)
                    exp = int(exp_s)
                except ValueError:
                    raise ValueError(f"malformed monomial {factor!r}") from None
                if not 1 <= gen <= spec.rank:
                    raise ValueError(f"generator g{gen} out of range")
                exps[gen - 1] += exp
            else:
                try:
                    coeff *= int(factor)
                except ValueError:
                    raise ValueError(f"malformed coefficient {factor!r}") from None
        coeffs[spec.monomial_index(tuple(exps))] += coeff
    return RingElement(spec, m, coeffs)
