"""Pure-Python kernels.

Fallback implementation of the numeric hot loops: compensated weighted sums,
per-term condition margins, and the smallest enclosing disk. The compiled
module ``rcbs._kernels_cy`` implements the same functions with the exact same
operation order, so results are bit-identical between backends:

* complex arithmetic is spelled out componentwise (no ``hypot``, no ``**``),
* sums use Neumaier compensation,
* the enclosing-disk shuffle uses a fixed-seed xorshift64* generator.

Do not "simplify" arithmetic here without applying the identical change to
the .pyx twin.
"""

from math import fabs, sqrt

_MULT_EPS = 1.0 + 1e-14  # multiplicative slack for disk containment tests
_SHUFFLE_SEED = 0x9E3779B97F4A7C15
_U64 = 0xFFFFFFFFFFFFFFFF


def vec_sum(x):
    """Neumaier-compensated sum of a 1-d array."""
    xs = x.tolist()
    s = 0.0
    c = 0.0
    for v in xs:
        t = s + v
        if fabs(s) >= fabs(v):
            c += (s - t) + v
        else:
            c += (v - t) + s
        s = t
    return s + c


def aggregate_sums(p, ar, ai, br, bi):
    """Weighted sums (s_aa, s_bb, Re s_ab, Im s_ab), each Neumaier-compensated.

    s_aa = sum p|a|^2, s_bb = sum p|b|^2, s_ab = sum p*a*b (literal product,
    no conjugation).
    """
    pl = p.tolist()
    arl = ar.tolist()
    ail = ai.tolist()
    brl = br.tolist()
    bil = bi.tolist()
    saa = caa = 0.0
    sbb = cbb = 0.0
    sre = cre = 0.0
    sim = cim = 0.0
    for k in range(len(pl)):
        w = pl[k]
        x = arl[k]
        y = ail[k]
        u = brl[k]
        v = bil[k]
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


def offset_sum(p, ar, ai, br, bi):
    """Compensated sum of p|b - conj(a)|^2."""
    pl = p.tolist()
    arl = ar.tolist()
    ail = ai.tolist()
    brl = br.tolist()
    bil = bi.tolist()
    s = 0.0
    c = 0.0
    for k in range(len(pl)):
        dr = brl[k] - arl[k]
        di = bil[k] + ail[k]
        v = pl[k] * (dr * dr + di * di)
        t = s + v
        if fabs(s) >= fabs(v):
            c += (s - t) + v
        else:
            c += (v - t) + s
        s = t
    return s + c


def disk_margins(zr, zi, cr, ci, r, out):
    """Per-term containment margins r - |z_k - center| written into ``out``."""
    zrl = zr.tolist()
    zil = zi.tolist()
    for k in range(len(zrl)):
        dx = zrl[k] - cr
        dy = zil[k] - ci
        out[k] = r - sqrt(dx * dx + dy * dy)


def band_quadratic(zr, zi, gr, gi, Gr, Gi, out):
    """Per-term Re[(Gamma - z_k)(conj(z_k) - conj(gamma))] written into ``out``."""
    zrl = zr.tolist()
    zil = zi.tolist()
    for k in range(len(zrl)):
        x = zrl[k]
        y = zil[k]
        out[k] = (Gr - x) * (x - gr) - (Gi - y) * (gi - y)


def transformed_sums(p, xr, xi, yr, yi, gr, gi, Gr, Gi, out):
    """Aggregate quadratic and disk forms of the transformed band condition.

    Per term:
      q_k = Re[(Gamma*conj(y_k) - x_k)(conj(x_k) - conj(gamma)*y_k)]
      m_k = (1/4)|Gamma-gamma|^2 |y_k|^2 - |x_k - c*conj(y_k)|^2,
            c = (gamma + Gamma)/2
    ``out`` receives the m_k; the function returns the p-weighted compensated
    sums (Q, D) of q_k and m_k. The two are equal term by term in exact
    arithmetic.
    """
    pl = p.tolist()
    xrl = xr.tolist()
    xil = xi.tolist()
    yrl = yr.tolist()
    yil = yi.tolist()
    cr = (gr + Gr) / 2.0
    ci = (gi + Gi) / 2.0
    dgr = Gr - gr
    dgi = Gi - gi
    q4 = 0.25 * (dgr * dgr + dgi * dgi)
    Q = cq = 0.0
    D = cd = 0.0
    for k in range(len(pl)):
        a = xrl[k]
        b = xil[k]
        u = yrl[k]
        v = yil[k]
        # quadratic form
        t1r = (Gr * u + Gi * v) - a
        t1i = (Gi * u - Gr * v) - b
        t2r = a - (gr * u + gi * v)
        t2i = -b - (gr * v - gi * u)
        qk = t1r * t2r - t1i * t2i
        # disk form
        wr = cr * u + ci * v
        wi = ci * u - cr * v
        er = a - wr
        ei = b - wi
        mk = q4 * (u * u + v * v) - (er * er + ei * ei)
        out[k] = mk

        tq = pl[k] * qk
        t = Q + tq
        if fabs(Q) >= fabs(tq):
            cq += (Q - t) + tq
        else:
            cq += (tq - t) + Q
        Q = t

        td = pl[k] * mk
        t = D + td
        if fabs(D) >= fabs(td):
            cd += (D - t) + td
        else:
            cd += (td - t) + D
        D = t
    return (Q + cq, D + cd)


# ---------------------------------------------------------------------------
# Smallest enclosing disk: fixed-seed randomized incremental algorithm.
# ---------------------------------------------------------------------------


def _xorshift(s):
    s ^= (s >> 12)
    s ^= (s << 25) & _U64
    s ^= (s >> 27)
    return (s * 0x2545F4914F6CDD1D) & _U64


def _contains(cx, cy, r, px, py):
    dx = px - cx
    dy = py - cy
    return sqrt(dx * dx + dy * dy) <= r * _MULT_EPS


def _diameter(px, py, qx, qy):
    cx = (px + qx) / 2.0
    cy = (py + qy) / 2.0
    dx = cx - px
    dy = cy - py
    r0 = sqrt(dx * dx + dy * dy)
    dx = cx - qx
    dy = cy - qy
    r1 = sqrt(dx * dx + dy * dy)
    return (cx, cy, r0 if r0 >= r1 else r1)


def _circumcircle(ax, ay, bx, by, cx, cy):
    """Circle through three points; ok=False when they are collinear."""
    mnx = min(ax, bx, cx)
    mxx = max(ax, bx, cx)
    mny = min(ay, by, cy)
    mxy = max(ay, by, cy)
    ox = (mnx + mxx) / 2.0
    oy = (mny + mxy) / 2.0
    pax = ax - ox
    pay = ay - oy
    pbx = bx - ox
    pby = by - oy
    pcx = cx - ox
    pcy = cy - oy
    d = (pax * (pby - pcy) + pbx * (pcy - pay) + pcx * (pay - pby)) * 2.0
    if d == 0.0:
        return (0.0, 0.0, 0.0, False)
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
    return (x, y, r, True)


def _cross(px, py, qx, qy, x, y):
    return (qx - px) * (y - py) - (qy - py) * (x - px)


def _disk_two_points(xs, ys, idx, end, px, py, qx, qy):
    ccx, ccy, cr = _diameter(px, py, qx, qy)
    has_left = False
    lx = ly = lr = 0.0
    has_right = False
    rx = ry = rr = 0.0
    for j in range(end):
        ax = xs[idx[j]]
        ay = ys[idx[j]]
        if _contains(ccx, ccy, cr, ax, ay):
            continue
        cross = _cross(px, py, qx, qy, ax, ay)
        ox, oy, orr, ok = _circumcircle(px, py, qx, qy, ax, ay)
        if not ok:
            continue
        ocross = _cross(px, py, qx, qy, ox, oy)
        if cross > 0.0 and (
            not has_left or ocross > _cross(px, py, qx, qy, lx, ly)
        ):
            lx, ly, lr = ox, oy, orr
            has_left = True
        elif cross < 0.0 and (
            not has_right or ocross < _cross(px, py, qx, qy, rx, ry)
        ):
            rx, ry, rr = ox, oy, orr
            has_right = True
    if not has_left and not has_right:
        return (ccx, ccy, cr)
    if not has_left:
        return (rx, ry, rr)
    if not has_right:
        return (lx, ly, lr)
    return (lx, ly, lr) if lr <= rr else (rx, ry, rr)


def _disk_one_point(xs, ys, idx, end, px, py):
    cx, cy, r = px, py, 0.0
    for j in range(end):
        qx = xs[idx[j]]
        qy = ys[idx[j]]
        if not _contains(cx, cy, r, qx, qy):
            if r == 0.0:
                cx, cy, r = _diameter(px, py, qx, qy)
            else:
                cx, cy, r = _disk_two_points(xs, ys, idx, j + 1, px, py, qx, qy)
    return (cx, cy, r)


def enclosing_disk(xs_arr, ys_arr):
    """Smallest disk (cx, cy, r) covering all points; deterministic."""
    xs = xs_arr.tolist()
    ys = ys_arr.tolist()
    n = len(xs)
    idx = list(range(n))
    state = _SHUFFLE_SEED
    for i in range(n - 1, 0, -1):
        state = _xorshift(state)
        j = state % (i + 1)
        idx[i], idx[j] = idx[j], idx[i]
    cx = cy = r = 0.0
    have = False
    for i in range(n):
        px = xs[idx[i]]
        py = ys[idx[i]]
        if not have or not _contains(cx, cy, r, px, py):
            cx, cy, r = _disk_one_point(xs, ys, idx, i, px, py)
            have = True
    return (cx, cy, r)
