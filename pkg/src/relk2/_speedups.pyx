# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels.  Reference semantics live in relk2._kernels_py.

int64 throughout; anything that could exceed the checked bounds raises
OverflowError so relk2.kernels can rerun the pure big-int twin.  The
integer-echelon cofactor trail uses floor division to match the pure twin
exactly, so both implementations produce identical output when neither
overflows.
"""

from array import array

IMPLEMENTATION = "c"

cdef long long LIMIT = (<long long>1) << 62


cdef inline long long _llabs(long long x):
    return -x if x < 0 else x


cdef long long[::1] _as_q(obj):
    if isinstance(obj, array) and obj.typecode == "q":
        return obj
    return array("q", obj)


def convolve(a, b, idx, m):
    """See _kernels_py.convolve."""
    cdef Py_ssize_t n = len(a), i, j, base
    cdef long long k, ai, mm = m
    cdef long long[::1] av, bv, iv, ov
    if mm <= 0 or mm > (1 << 20) or n > (1 << 16):
        raise OverflowError("convolve operand bounds")
    if len(b) != n:
        raise ValueError("convolve shape mismatch")
    av = _as_q(a)
    bv = _as_q(b)
    iv = _as_q(idx)
    if iv.shape[0] < n * n:
        raise ValueError("convolve table too small")
    out = array("q", bytes(8 * n))
    ov = out
    for i in range(n):
        ai = av[i]
        if ai == 0:
            continue
        base = i * n
        for j in range(n):
            if bv[j] == 0:
                continue
            k = iv[base + j]
            if k >= 0:
                ov[k] += ai * bv[j]
    return [((ov[i] % mm) + mm) % mm for i in range(n)]


cdef long long _inv_mod(long long a, long long p) except -1:
    cdef long long t = 0, newt = 1, r = p, newr = a % p, q, tmp
    if newr < 0:
        newr += p
    while newr != 0:
        q = r / newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if r != 1:
        raise ZeroDivisionError("element not invertible mod p")
    return ((t % p) + p) % p


def rref(rows, ncols, p):
    """See _kernels_py.rref."""
    cdef Py_ssize_t nr = len(rows), nc = ncols, i, r, pr, c, k
    cdef long long pp = p, f, inv, x
    cdef long long[::1] M
    if pp <= 1 or pp > (1 << 30):
        raise OverflowError("rref modulus bounds")
    buf = array("q")
    for row in rows:
        if len(row) != nc:
            raise ValueError("rref ragged input")
        buf.extend([v % p for v in row])
    if nr == 0 or nc == 0:
        return [], []
    M = buf
    pivots = []
    r = 0
    for c in range(nc):
        pr = r
        while pr < nr and M[pr * nc + c] == 0:
            pr += 1
        if pr == nr:
            continue
        if pr != r:
            for k in range(nc):
                x = M[r * nc + k]
                M[r * nc + k] = M[pr * nc + k]
                M[pr * nc + k] = x
        inv = _inv_mod(M[r * nc + c], pp)
        if inv != 1:
            for k in range(nc):
                M[r * nc + k] = (M[r * nc + k] * inv) % pp
        for i in range(nr):
            f = M[i * nc + c]
            if f != 0 and i != r:
                for k in range(nc):
                    x = M[i * nc + k] - f * M[r * nc + k]
                    M[i * nc + k] = ((x % pp) + pp) % pp
        pivots.append(c)
        r += 1
        if r == nr:
            break
    return [[M[i * nc + k] for k in range(nc)] for i in range(r)], pivots


cdef (long long, long long, long long) _cxgcd(long long a, long long b):
    # floor-division euclid so the cofactor trail matches the pure twin
    cdef long long x0 = 1, x1 = 0, y0 = 0, y1 = 1, q, r, tmp
    while b != 0:
        q = a / b
        r = a - q * b
        if r != 0 and ((r < 0) != (b < 0)):
            q -= 1
            r += b
        a = b
        b = r
        tmp = x0 - q * x1
        x0 = x1
        x1 = tmp
        tmp = y0 - q * y1
        y0 = y1
        y1 = tmp
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


cdef inline bint _comb_safe(long long m1, long long b1, long long m2, long long b2):
    # is |m1|*b1 + |m2|*b2 < LIMIT guaranteed? (b1, b2 >= 0)
    cdef long long h = LIMIT / 2
    if b1 > 0 and _llabs(m1) > h / b1:
        return 0
    if b2 > 0 and _llabs(m2) > h / b2:
        return 0
    return 1


def echelon_int(rows, ncols):
    """See _kernels_py.echelon_int.  Raises OverflowError past int64 range."""
    cdef Py_ssize_t nc = ncols, c, k
    cdef long long a, b, q, g, s, t, ag, bg, val, vmax, rmax
    cdef long long[::1] vv, rr, nrv
    pivrow = {}
    pivmax = {}
    for vec in rows:
        v = array("q", vec)  # raises OverflowError on out-of-range input
        vv = v
        if vv.shape[0] != nc:
            raise ValueError("echelon ragged input")
        vmax = 0
        for k in range(nc):
            if _llabs(vv[k]) > vmax:
                vmax = _llabs(vv[k])
        while True:
            c = 0
            while c < nc and vv[c] == 0:
                c += 1
            if c == nc:
                break
            entry = pivrow.get(c)
            if entry is None:
                pivrow[c] = v
                pivmax[c] = vmax
                break
            rr = entry
            rmax = pivmax[c]
            a = rr[c]
            b = vv[c]
            if b % a == 0:
                q = b / a  # exact, so C division equals floor division
                if q != 0 and rmax > (LIMIT - vmax) / _llabs(q):
                    raise OverflowError("echelon entry growth")
                vmax = 0
                for k in range(nc):
                    val = vv[k] - q * rr[k]
                    vv[k] = val
                    if _llabs(val) > vmax:
                        vmax = _llabs(val)
            else:
                g, s, t = _cxgcd(a, b)
                ag = a / g
                bg = b / g
                if not _comb_safe(s, rmax, t, vmax) or not _comb_safe(ag, vmax, bg, rmax):
                    raise OverflowError("echelon entry growth")
                nr_arr = array("q", bytes(8 * nc))
                nrv = nr_arr
                rmax = 0
                for k in range(nc):
                    val = s * rr[k] + t * vv[k]
                    nrv[k] = val
                    if _llabs(val) > rmax:
                        rmax = _llabs(val)
                vmax = 0
                for k in range(nc):
                    val = ag * vv[k] - bg * rr[k]
                    vv[k] = val
                    if _llabs(val) > vmax:
                        vmax = _llabs(val)
                pivrow[c] = nr_arr
                pivmax[c] = rmax
    return [list(pivrow[c]) for c in sorted(pivrow)]


cdef (long long, long long) _sym(long long x, long long y,
                                 long long[::1] ipos, long long ni) except *:
    cdef long long py = ipos[y], px
    if py >= 0:
        return x * ni + py, 1
    px = ipos[x]
    if px < 0:
        raise ValueError("symbol with no component in the ideal")
    return y * ni + px, -1


cdef void _emit(set out, long long* gs, long long* cs, int k):
    cdef int i, j, w
    cdef long long g, c
    for i in range(1, k):
        g = gs[i]
        c = cs[i]
        j = i - 1
        while j >= 0 and gs[j] > g:
            gs[j + 1] = gs[j]
            cs[j + 1] = cs[j]
            j -= 1
        gs[j + 1] = g
        cs[j + 1] = c
    w = 0
    for i in range(k):
        if w > 0 and gs[w - 1] == gs[i]:
            cs[w - 1] += cs[i]
        else:
            gs[w] = gs[i]
            cs[w] = cs[i]
            w += 1
    items = []
    for i in range(w):
        if cs[i] != 0:
            items.append((gs[i], cs[i]))
    if items:
        out.add(tuple(items))


def ds_rows(n, mul, add, neg, ideal):
    """See _kernels_py.ds_rows."""
    cdef Py_ssize_t nn = n, ii, jj
    cdef long long[::1] mt = _as_q(mul)
    cdef long long[::1] at = _as_q(add)
    cdef long long[::1] ng = _as_q(neg)
    cdef long long[::1] idl = _as_q(ideal)
    cdef long long ni = idl.shape[0]
    cdef long long x, y, z, xy, xz, yz, xyz, tt, xni, xn, yn
    cdef long long g1, g2, g3, c1, c2, c3
    cdef long long gs[4]
    cdef long long cs[4]
    cdef long long[::1] ipos
    if mt.shape[0] < nn * nn or at.shape[0] < nn * nn or ng.shape[0] < nn:
        raise ValueError("ds_rows table too small")
    ipos_arr = array("q", [-1]) * nn
    ipos = ipos_arr
    for ii in range(ni):
        ipos[idl[ii]] = ii

    out = set()

    for ii in range(ni):
        x = idl[ii]
        for jj in range(ni):
            y = idl[jj]
            g1, c1 = _sym(x, y, ipos, ni)
            g2, c2 = _sym(y, x, ipos, ni)
            gs[0] = g1; cs[0] = c1
            gs[1] = g2; cs[1] = c2
            _emit(out, gs, cs, 2)

    for x in range(nn):
        xni = x * ni
        for ii in range(ni):
            y = idl[ii]
            for jj in range(ni):
                z = idl[jj]
                tt = at[y * nn + z]
                gs[0] = xni + ipos[y]; cs[0] = 1
                gs[1] = xni + ipos[z]; cs[1] = 1
                gs[2] = xni + ipos[tt]; cs[2] = -1
                _emit(out, gs, cs, 3)

    for ii in range(ni):
        x = idl[ii]
        xn = x * nn
        for y in range(nn):
            xy = mt[xn + y]
            g1, c1 = _sym(x, y, ipos, ni)
            yn = y * nn
            for z in range(nn):
                xyz = mt[xy * nn + z]
                tt = at[at[yn + z] * nn + ng[xyz]]
                g2, c2 = _sym(x, z, ipos, ni)
                g3, c3 = _sym(x, tt, ipos, ni)
                gs[0] = g1; cs[0] = c1
                gs[1] = g2; cs[1] = c2
                gs[2] = g3; cs[2] = -c3
                _emit(out, gs, cs, 3)

    for ii in range(ni):
        x = idl[ii]
        xn = x * nn
        for y in range(nn):
            xy = mt[xn + y]
            yn = y * nn
            for z in range(nn):
                yz = mt[yn + z]
                xz = mt[xn + z]
                g1, c1 = _sym(x, yz, ipos, ni)
                g2, c2 = _sym(xy, z, ipos, ni)
                g3, c3 = _sym(xz, y, ipos, ni)
                gs[0] = g1; cs[0] = c1
                gs[1] = g2; cs[1] = -c2
                gs[2] = g3; cs[2] = -c3
                _emit(out, gs, cs, 3)

    for ii in range(ni):
        y = idl[ii]
        yn = y * nn
        for x in range(nn):
            if ipos[x] >= 0:
                continue  # covered by the x-in-I family above
            xn = x * nn
            xy = mt[xn + y]
            for z in range(nn):
                yz = mt[yn + z]
                xz = mt[xn + z]
                g1, c1 = _sym(x, yz, ipos, ni)
                g2, c2 = _sym(xy, z, ipos, ni)
                g3, c3 = _sym(xz, y, ipos, ni)
                gs[0] = g1; cs[0] = c1
                gs[1] = g2; cs[1] = -c2
                gs[2] = g3; cs[2] = -c3
                _emit(out, gs, cs, 3)

    return out
