"""Pure-Python kernels for the hot loops.

`relk2._speedups` (Cython) implements the same four functions with the same
semantics; `relk2.kernels` picks one at import time.  Keep the two in lock
step: the parity test suite runs both on identical inputs.

Conventions shared by both implementations:
  * rings with an indexed element set are described by flat tables of length
    n*n: ``mul[i*n + j]`` is the index of the product, likewise ``add``;
    ``neg[i]`` is the index of the additive inverse;
  * a multiplication *basis* table (for convolution) maps a pair of basis
    indices to the index of the product basis element, with -1 meaning the
    product vanishes.
"""

IMPLEMENTATION = "python"


def convolve(a, b, idx, m):
    """Multiply two dense coefficient vectors through a basis-product table.

    ``idx`` is the flat n*n basis table described in the module docstring,
    ``m >= 1`` the coefficient modulus.  Entries of the result are reduced
    into [0, m).
    """
    n = len(a)
    out = [0] * n
    for i in range(n):
        ai = a[i]
        if not ai:
            continue
        base = i * n
        for j in range(n):
            bj = b[j]
            if not bj:
                continue
            k = idx[base + j]
            if k >= 0:
                out[k] += ai * bj
    return [c % m for c in out]


def rref(rows, ncols, p):
    """Reduced row echelon form over F_p.

    Returns ``(mat, pivots)`` where ``mat`` holds the nonzero reduced rows
    and ``pivots`` the pivot column of each.  Row order of the input only
    affects tie-breaking, not the result (RREF is unique).
    """
    mat = [[x % p for x in row] for row in rows]
    nrows = len(mat)
    pivots = []
    r = 0
    for c in range(ncols):
        pr = r
        while pr < nrows and not mat[pr][c]:
            pr += 1
        if pr == nrows:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        inv = pow(mat[r][c], -1, p)
        if inv != 1:
            mat[r] = [(x * inv) % p for x in mat[r]]
        row_r = mat[r]
        for i in range(nrows):
            f = mat[i][c]
            if f and i != r:
                mat[i] = [(x - f * y) % p for x, y in zip(mat[i], row_r)]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return mat[:r], pivots


def echelon_int(rows, ncols):
    """Integer row echelon basis of the row span (not HNF-normalized).

    Returns rows with strictly increasing, distinct pivot columns.  Python
    ints, so intermediate growth is safe; the compiled twin works in int64
    and raises OverflowError for the caller to fall back here.
    """
    pivrow = {}
    for vec in rows:
        v = list(vec)
        while True:
            c = 0
            while c < ncols and not v[c]:
                c += 1
            if c == ncols:
                break
            r = pivrow.get(c)
            if r is None:
                pivrow[c] = v
                break
            a, b = r[c], v[c]
            if b % a == 0:
                q = b // a
                v = [x - q * y for x, y in zip(v, r)]
            else:
                # combine so the pivot row gets gcd(a, b), keep reducing v
                g, s, t = _xgcd(a, b)
                ag, bg = a // g, b // g
                new_r = [s * x + t * y for x, y in zip(r, v)]
                v = [ag * y - bg * x for x, y in zip(r, v)]
                pivrow[c] = new_r
    return [pivrow[c] for c in sorted(pivrow)]


def _xgcd(a, b):
    """Return (g, x, y) with g = gcd(a, b) >= 0 and g == a*x + b*y."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def ds_rows(n, mul, add, neg, ideal):
    """Enumerate the Dennis-Stein relation rows of a square-zero context.

    ``ideal`` lists the element indices of I (sorted, containing 0's index).
    A symbol <x, y> is stored on the canonical generator with second
    component in I: pairs with only the first component in I are flipped
    with sign -1 (DS1 applied eagerly).  Generator id of a canonical pair
    (x, y) is ``x * len(ideal) + position of y in ideal``.

    Returns a set of canonical rows, each a tuple of (generator, coeff)
    pairs sorted by generator, zero coefficients dropped.

    Families (R = all of the ring):
      DS1   <x,y><y,x> = 1             for (x, y) in I x I
      DS2a  <x,y><x,z> = <x, y+z>      for x in R, y, z in I  (y*z = 0)
      DS2b  <x,y><x,z> = <x, y+z-xyz>  for x in I, y, z in R
      DS3   <x,yz> = <xy,z><xz,y>      for x in I, y, z in R
                                       and y in I, x, z in R
    The third DS3 family (z in I) duplicates the second under y <-> z and
    is skipped.
    """
    ni = len(ideal)
    ipos = [-1] * n
    for k, e in enumerate(ideal):
        ipos[e] = k

    def sym(x, y):
        py = ipos[y]
        if py >= 0:
            return x * ni + py, 1
        px = ipos[x]
        if px < 0:
            raise ValueError("symbol with no component in the ideal")
        return y * ni + px, -1

    def emit(terms):
        acc = {}
        for g, c in terms:
            acc[g] = acc.get(g, 0) + c
        row = tuple(sorted((g, c) for g, c in acc.items() if c))
        if row:
            out.add(row)

    out = set()

    for x in ideal:
        for y in ideal:
            emit((sym(x, y), sym(y, x)))

    for x in range(n):
        xni = x * ni
        for y in ideal:
            for z in ideal:
                t = add[y * n + z]
                emit(((xni + ipos[y], 1), (xni + ipos[z], 1), (xni + ipos[t], -1)))

    for x in ideal:
        xn = x * n
        for y in range(n):
            xy = mul[xn + y]
            sy = sym(x, y)
            yn = y * n
            for z in range(n):
                xyz = mul[xy * n + z]
                t = add[add[yn + z] * n + neg[xyz]]
                g1, c1 = sy
                g2, c2 = sym(x, z)
                g3, c3 = sym(x, t)
                emit(((g1, c1), (g2, c2), (g3, -c3)))

    for x in ideal:
        xn = x * n
        for y in range(n):
            xy = mul[xn + y]
            yn = y * n
            for z in range(n):
                yz = mul[yn + z]
                xz = mul[xn + z]
                g1, c1 = sym(x, yz)
                g2, c2 = sym(xy, z)
                g3, c3 = sym(xz, y)
                emit(((g1, c1), (g2, -c2), (g3, -c3)))

    for y in ideal:
        yn = y * n
        for x in range(n):
            if ipos[x] >= 0:
                continue  # covered by the x-in-I family above
            xn = x * n
            xy = mul[xn + y]
            for z in range(n):
                yz = mul[yn + z]
                xz = mul[xn + z]
                g1, c1 = sym(x, yz)
                g2, c2 = sym(xy, z)
                g3, c3 = sym(xz, y)
                emit(((g1, c1), (g2, -c2), (g3, -c3)))

    return out
