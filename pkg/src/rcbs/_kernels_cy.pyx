# cython: boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled kernels; operation-for-operation twin of rcbs._kernels_py.

Keep the arithmetic in lockstep with the pure module: same operation order,
Neumaier compensation, sqrt(x*x + y*y) instead of hypot, fixed-seed
xorshift64* shuffle. The build deliberately disables FP contraction so both
backends return bit-identical doubles.
"""

from libc.math cimport fabs, sqrt
from libc.stdint cimport uint64_t
from libc.stdlib cimport free, malloc

DEF MULT_EPS = 1.0 + 1e-14

cdef uint64_t SHUFFLE_SEED = 0x9E3779B97F4A7C15UL


def vec_sum(const double[::1] x):
    """Neumaier-compensated sum of a 1-d array."""
    cdef Py_ssize_t k, n = x.shape[0]
    cdef double s = 0.0, c = 0.0, v, t
    for k in range(n):
        v = x[k]
        t = s + v
        if fabs(s) >= fabs(v):
            c += (s - t) + v
        else:
            c += (v - t) + s
        s = t
    return s + c


def aggregate_sums(const double[::1] p, const double[::1] ar, const double[::1] ai,
                   const double[::1] br, const double[::1] bi):
    """Weighted sums (s_aa, s_bb, Re s_ab, Im s_ab), Neumaier-compensated."""
    cdef Py_ssize_t k, n = p.shape[0]
    cdef double saa = 0.0, caa = 0.0, sbb = 0.0, cbb = 0.0
    cdef double sre = 0.0, cre = 0.0, sim = 0.0, cim = 0.0
    cdef double w, x, y, u, v, taa, tbb, tre, tim, t
    for k in range(n):
        w = p[k]
        x = ar[k]
        y = ai[k]
        u = br[k]
        v = bi[k]
        taa = w * (x * x + y * y)
        tbb = w * (u * u + v * v)
        tre = w * (x * u - y * v)
        tim = w * (x * v + y * u)

        t = saa + taa
        if fabs(saa) >= fabs(taa):
            caa += (saa - t) + taa
        else:
            caa += (taa - t) + saa
        saa = t

        t = sbb + tbb
        if fabs(sbb) >= fabs(tbb):
            cbb += (sbb - t) + tbb
        else:
            cbb += (tbb - t) + sbb
        sbb = t

        t = sre + tre
        if fabs(sre) >= fabs(tre):
            cre += (sre - t) + tre
        else:
            cre += (tre - t) + sre
        sre = t

        t = sim + tim
        if fabs(sim) >= fabs(tim):
            cim += (sim - t) + tim
        else:
            cim += (tim - t) + sim
        sim = t
    return (saa + caa, sbb + cbb, sre + cre, sim + cim)


def offset_sum(const double[::1] p, const double[::1] ar, const double[::1] ai,
               const double[::1] br, const double[::1] bi):
    """Compensated sum of p|b - conj(a)|^2."""
    cdef Py_ssize_t k, n = p.shape[0]
    cdef double s = 0.0, c = 0.0, dr, di, v, t
    for k in range(n):
        dr = br[k] - ar[k]
        di = bi[k] + ai[k]
        v = p[k] * (dr * dr + di * di)
        t = s + v
        if fabs(s) >= fabs(v):
            c += (s - t) + v
        else:
            c += (v - t) + s
        s = t
    return s + c


def disk_margins(const double[::1] zr, const double[::1] zi, double cr, double ci,
                 double r, double[::1] out):
    """Per-term containment margins r - |z_k - center| written into out."""
    cdef Py_ssize_t k, n = zr.shape[0]
    cdef double dx, dy
    for k in range(n):
        dx = zr[k] - cr
        dy = zi[k] - ci
        out[k] = r - sqrt(dx * dx + dy * dy)


def band_quadratic(const double[::1] zr, const double[::1] zi, double gr, double gi,
                   double Gr, double Gi, double[::1] out):
    """Per-term Re[(Gamma - z_k)(conj(z_k) - conj(gamma))] written into out."""
    cdef Py_ssize_t k, n = zr.shape[0]
    cdef double x, y
    for k in range(n):
        x = zr[k]
        y = zi[k]
        out[k] = (Gr - x) * (x - gr) - (Gi - y) * (gi - y)


def transformed_sums(const double[::1] p, const double[::1] xr, const double[::1] xi,
                     const double[::1] yr, const double[::1] yi,
                     double gr, double gi, double Gr, double Gi,
                     double[::1] out):
    """Aggregate quadratic and disk forms of the transformed band condition."""
    cdef Py_ssize_t k, n = p.shape[0]
    cdef double cr = (gr + Gr) / 2.0
    cdef double ci = (gi + Gi) / 2.0
    cdef double dgr = Gr - gr
    cdef double dgi = Gi - gi
    cdef double q4 = 0.25 * (dgr * dgr + dgi * dgi)
    cdef double Q = 0.0, cq = 0.0, D = 0.0, cd = 0.0
    cdef double a, b, u, v, t1r, t1i, t2r, t2i, qk, wr, wi, er, ei, mk, tq, td, t
    for k in range(n):
        a = xr[k]
        b = xi[k]
        u = yr[k]
        v = yi[k]
        t1r = (Gr * u + Gi * v) - a
        t1i = (Gi * u - Gr * v) - b
        t2r = a - (gr * u + gi * v)
        t2i = -b - (gr * v - gi * u)
        qk = t1r * t2r - t1i * t2i
        wr = cr * u + ci * v
        wi = ci * u - cr * v
        er = a - wr
        ei = b - wi
        mk = q4 * (u * u + v * v) - (er * er + ei * ei)
        out[k] = mk

        tq = p[k] * qk
        t = Q + tq
        if fabs(Q) >= fabs(tq):
            cq += (Q - t) + tq
        else:
            cq += (tq - t) + Q
        Q = t

        td = p[k] * mk
        t = D + td
        if fabs(D) >= fabs(td):
            cd += (D - t) + td
        else:
            cd += (td - t) + D
        D = t
    return (Q + cq, D + cd)


# ---------------------------------------------------------------------------
# Smallest enclosing disk
# ---------------------------------------------------------------------------

cdef struct Circle:
    double x
    double y
    double r
    bint ok


cdef inline uint64_t _xorshift(uint64_t s) nogil:
    s ^= s >> 12
    s ^= s << 25
    s ^= s >> 27
    return s * 0x2545F4914F6CDD1DUL


cdef inline bint _contains(double cx, double cy, double r,
                           double px, double py) nogil:
    cdef double dx = px - cx
    cdef double dy = py - cy
    return sqrt(dx * dx + dy * dy) <= r * MULT_EPS


cdef inline Circle _diameter(double px, double py, double qx, double qy) nogil:
    cdef Circle c
    cdef double dx, dy, r0, r1
    c.x = (px + qx) / 2.0
    c.y = (py + qy) / 2.0
    dx = c.x - px
    dy = c.y - py
    r0 = sqrt(dx * dx + dy * dy)
    dx = c.x - qx
    dy = c.y - qy
    r1 = sqrt(dx * dx + dy * dy)
    c.r = r0 if r0 >= r1 else r1
    c.ok = True
    return c


cdef inline double _min3(double a, double b, double c) nogil:
    cdef double m = a
    if b < m:
        m = b
    if c < m:
        m = c
    return m


cdef inline double _max3(double a, double b, double c) nogil:
    cdef double m = a
    if b > m:
        m = b
    if c > m:
        m = c
    return m


cdef Circle _circumcircle(double ax, double ay, double bx, double by,
                          double cx, double cy) nogil:
    cdef Circle circ
    cdef double ox = (_min3(ax, bx, cx) + _max3(ax, bx, cx)) / 2.0
    cdef double oy = (_min3(ay, by, cy) + _max3(ay, by, cy)) / 2.0
    cdef double pax = ax - ox
    cdef double pay = ay - oy
    cdef double pbx = bx - ox
    cdef double pby = by - oy
    cdef double pcx = cx - ox
    cdef double pcy = cy - oy
    cdef double d = (pax * (pby - pcy) + pbx * (pcy - pay) + pcx * (pay - pby)) * 2.0
    cdef double na, nb, nc, x, y, dx, dy, ra, rb, rc, r
    if d == 0.0:
        circ.x = 0.0
        circ.y = 0.0
        circ.r = 0.0
        circ.ok = False
        return circ
    na = pax * pax + pay * pay
    nb = pbx * pbx + pby * pby
    nc = pcx * pcx + pcy * pcy
    x = ox + (na * (pby - pcy) + nb * (pcy - pay) + nc * (pay - pby)) / d
    y = oy + (na * (pcx - pbx) + nb * (pax - pcx) + nc * (pbx - pax)) / d
    dx = x - ax
    dy = y - ay
    ra = sqrt(dx * dx + dy * dy)
    dx = x - bx
    dy = y - by
    rb = sqrt(dx * dx + dy * dy)
    dx = x - cx
    dy = y - cy
    rc = sqrt(dx * dx + dy * dy)
    r = ra
    if rb > r:
        r = rb
    if rc > r:
        r = rc
    circ.x = x
    circ.y = y
    circ.r = r
    circ.ok = True
    return circ


cdef inline double _cross(double px, double py, double qx, double qy,
                          double x, double y) nogil:
    return (qx - px) * (y - py) - (qy - py) * (x - px)


cdef Circle _disk_two_points(const double[::1] xs, const double[::1] ys,
                             Py_ssize_t* idx, Py_ssize_t end,
                             double px, double py, double qx, double qy) nogil:
    cdef Circle circ = _diameter(px, py, qx, qy)
    cdef bint has_left = False, has_right = False
    cdef double lx = 0.0, ly = 0.0, lr = 0.0
    cdef double rx = 0.0, ry = 0.0, rr = 0.0
    cdef Py_ssize_t j
    cdef double ax, ay, cross, ocross
    cdef Circle oc
    cdef Circle res
    for j in range(end):
        ax = xs[idx[j]]
        ay = ys[idx[j]]
        if _contains(circ.x, circ.y, circ.r, ax, ay):
            continue
        cross = _cross(px, py, qx, qy, ax, ay)
        oc = _circumcircle(px, py, qx, qy, ax, ay)
        if not oc.ok:
            continue
        ocross = _cross(px, py, qx, qy, oc.x, oc.y)
        if cross > 0.0 and (not has_left or
                            ocross > _cross(px, py, qx, qy, lx, ly)):
            lx = oc.x
            ly = oc.y
            lr = oc.r
            has_left = True
        elif cross < 0.0 and (not has_right or
                              ocross < _cross(px, py, qx, qy, rx, ry)):
            rx = oc.x
            ry = oc.y
            rr = oc.r
            has_right = True
    if not has_left and not has_right:
        return circ
    res.ok = True
    if not has_left:
        res.x = rx
        res.y = ry
        res.r = rr
        return res
    if not has_right:
        res.x = lx
        res.y = ly
        res.r = lr
        return res
    if lr <= rr:
        res.x = lx
        res.y = ly
        res.r = lr
    else:
        res.x = rx
        res.y = ry
        res.r = rr
    return res


cdef Circle _disk_one_point(const double[::1] xs, const double[::1] ys,
                            Py_ssize_t* idx, Py_ssize_t end,
                            double px, double py) nogil:
    cdef Circle c
    cdef Py_ssize_t j
    cdef double qx, qy
    c.x = px
    c.y = py
    c.r = 0.0
    c.ok = True
    for j in range(end):
        qx = xs[idx[j]]
        qy = ys[idx[j]]
        if not _contains(c.x, c.y, c.r, qx, qy):
            if c.r == 0.0:
                c = _diameter(px, py, qx, qy)
            else:
                c = _disk_two_points(xs, ys, idx, j + 1, px, py, qx, qy)
    return c


def enclosing_disk(const double[::1] xs, const double[::1] ys):
    """Smallest disk (cx, cy, r) covering all points; deterministic."""
    cdef Py_ssize_t n = xs.shape[0]
    cdef Py_ssize_t* idx = <Py_ssize_t*> malloc(n * sizeof(Py_ssize_t))
    if idx == NULL:
        raise MemoryError()
    cdef uint64_t state = SHUFFLE_SEED
    cdef Py_ssize_t i, j, tmp
    cdef double px, py
    cdef Circle c
    cdef bint have = False
    c.x = 0.0
    c.y = 0.0
    c.r = 0.0
    c.ok = True
    try:
        for i in range(n):
            idx[i] = i
        for i in range(n - 1, 0, -1):
            state = _xorshift(state)
            j = <Py_ssize_t> (state % (<uint64_t> (i + 1)))
            tmp = idx[i]
            idx[i] = idx[j]
            idx[j] = tmp
        for i in range(n):
            px = xs[idx[i]]
            py = ys[idx[i]]
            if not have or not _contains(c.x, c.y, c.r, px, py):
                c = _disk_one_point(xs, ys, idx, i, px, py)
                have = True
        return (c.x, c.y, c.r)
    finally:
        free(idx)
