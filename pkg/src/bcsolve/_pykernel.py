"""Pure-Python kernel: directed-rounding bound arithmetic, primitive
projections and the worklist engines.

``_ckernel.pyx`` mirrors this module function for function and must stay
bit-identical with it; ``tests/test_backends.py`` checks that.

Rounding policy: every operation is computed in round-to-nearest and then
moved outward with ``nextafter`` unless an error-free transformation
(TwoSum, Dekker's TwoProduct) proves the nearest result exact or already on
the correct side. Transcendentals (exp, log, cos, acos) are moved outward by
``TRANS_ULPS`` ulps unconditionally, except at the exact points exp(0) = 1,
log(1) = 0 and acos(1) = 0.

Intervals are plain ``(lo, hi)`` float pairs here; ``lo > hi`` means empty.
"""

import math
import time

INF = math.inf
MAXF = 1.7976931348623157e308
TRANS_ULPS = 2
# exp(EXP_CAP) and its outward neighbours are finite
EXP_CAP = 709.78
# enclosure of pi
PI_LO = 3.141592653589793
PI_HI = 3.1415926535897936

# bounds outside these ranges skip the error-free transformations
_BIG = 1e300
_TINY = 1e-250
_MIN_SUB = 5e-324
_SCALE_BITS = 1100
_SPLIT = 134217729.0

EMPTY = (INF, -INF)

OP_ADD, OP_SUB, OP_MUL, OP_DIV, OP_NEG, OP_EXP, OP_COS, OP_SQRT, OP_POW = range(9)
HC3, HC3SB, HC4, HC4SB = range(4)

ST_EMPTY, ST_OK, ST_TIMEOUT = 0, 1, 2

_nextafter = math.nextafter
_isinf = math.isinf


# -- rounded scalar operations ------------------------------------------------

def add_dn(a, b):
    s = a + b
    if s == INF:
        return MAXF
    if s == -INF:
        return s
    bb = s - a
    if (a - (s - bb)) + (b - bb) < 0.0:
        return _nextafter(s, -INF)
    return s


def add_up(a, b):
    s = a + b
    if s == -INF:
        return -MAXF
    if s == INF:
        return s
    bb = s - a
    if (a - (s - bb)) + (b - bb) > 0.0:
        return _nextafter(s, INF)
    return s


def _prod_err(a, b, p):
    # p + err == a*b exactly (Dekker); caller guarantees no over/underflow
    c = _SPLIT * a
    ah = c - (c - a)
    al = a - ah
    c = _SPLIT * b
    bh = c - (c - b)
    bl = b - bh
    return ((ah * bh - p) + ah * bl + al * bh) + al * bl


def mul_dn(a, b):
    if a == 0.0 or b == 0.0:
        return 0.0
    p = a * b
    if _isinf(p):
        if p > 0.0 and not _isinf(a) and not _isinf(b):
            return MAXF
        return p
    if p == 0.0:
        return 0.0 if (a > 0.0) == (b > 0.0) else -_MIN_SUB
    if abs(a) > _BIG or abs(b) > _BIG or abs(p) < _TINY:
        return _nextafter(p, -INF)
    if _prod_err(a, b, p) < 0.0:
        return _nextafter(p, -INF)
    return p


def mul_up(a, b):
    if a == 0.0 or b == 0.0:
        return 0.0
    p = a * b
    if _isinf(p):
        if p < 0.0 and not _isinf(a) and not _isinf(b):
            return -MAXF
        return p
    if p == 0.0:
        return _MIN_SUB if (a > 0.0) == (b > 0.0) else 0.0
    if abs(a) > _BIG or abs(b) > _BIG or abs(p) < _TINY:
        return _nextafter(p, INF)
    if _prod_err(a, b, p) > 0.0:
        return _nextafter(p, INF)
    return p


def _div_dir(a, b):
    """Quotient a/b (b != 0) and the side of it the exact value lies on.

    Returns (q, d): d < 0 if a/b < q, d > 0 if a/b > q, d == 0 if exact,
    d == 2 if unknown (caller rounds outward unconditionally).
    """
    if a == 0.0:
        return 0.0, 0
    if _isinf(b):
        if _isinf(a):
            return (INF if (a > 0.0) == (b > 0.0) else -INF), 0
        # exact value is a tiny nonzero number of the sign of a/b
        return 0.0, (1 if (a > 0.0) == (b > 0.0) else -1)
    q = a / b
    if _isinf(q):
        if _isinf(a):
            return q, 0
        return q, 2
    if q == 0.0:
        # underflow: the exact value is nonzero with the sign of a/b
        return q, (1 if (a > 0.0) == (b > 0.0) else -1)
    if abs(q) < _TINY or abs(q) > _BIG or abs(a) < _TINY or abs(b) > _BIG:
        return q, 2
    p = q * b
    r = (a - p) - _prod_err(q, b, p)
    if r == 0.0:
        return q, 0
    return q, (1 if (r > 0.0) == (b > 0.0) else -1)


def div_dn(a, b):
    q, d = _div_dir(a, b)
    if d == 0 or d == 1:
        return q
    if q == INF:
        return MAXF
    if q == -INF:
        return q
    return _nextafter(q, -INF)


def div_up(a, b):
    q, d = _div_dir(a, b)
    if d == 0 or d == -1:
        return q
    if q == -INF:
        return -MAXF
    if q == INF:
        return q
    return _nextafter(q, INF)


def pow_dn(x, n):
    # x >= 0
    r = x
    for _ in range(n - 1):
        r = mul_dn(r, x)
    return r


def pow_up(x, n):
    # x >= 0
    r = x
    for _ in range(n - 1):
        r = mul_up(r, x)
    return r


def root_dn(a, n):
    """Largest-effort lower bound of a**(1/n) for a >= 0, certified by pow_up."""
    if a == 0.0 or a == INF:
        return a
    if a < _TINY:
        # scale subnormal/tiny inputs by an exact power of two
        k = (_SCALE_BITS + n - 1) // n
        return math.ldexp(root_dn(math.ldexp(a, n * k), n), -k)
    r = math.sqrt(a) if n == 2 else a ** (1.0 / n)
    for _ in range(8):
        if pow_up(r, n) <= a:
            break
        r = _nextafter(r, -INF)
    else:
        return 0.0
    for _ in range(4):
        t = _nextafter(r, INF)
        if pow_up(t, n) > a:
            break
        r = t
    return r


def root_up(a, n):
    if a == 0.0 or a == INF:
        return a
    if a < _TINY:
        # scale subnormal/tiny inputs by an exact power of two
        k = (_SCALE_BITS + n - 1) // n
        return math.ldexp(root_up(math.ldexp(a, n * k), n), -k)
    r = math.sqrt(a) if n == 2 else a ** (1.0 / n)
    for _ in range(8):
        if pow_dn(r, n) >= a:
            break
        r = _nextafter(r, INF)
    else:
        return INF
    for _ in range(4):
        t = _nextafter(r, -INF)
        if pow_dn(t, n) < a:
            break
        r = t
    return r


def _out_dn(r):
    for _ in range(TRANS_ULPS):
        r = _nextafter(r, -INF)
    return r


def _out_up(r):
    for _ in range(TRANS_ULPS):
        r = _nextafter(r, INF)
    return r


def exp_dn(x):
    if x == -INF:
        return 0.0
    if x == 0.0:
        return 1.0
    if x > EXP_CAP:
        x = EXP_CAP
    r = _out_dn(math.exp(x))
    # exp(x) >= 1 for x >= 0; the clamp keeps the bound monotone at 0
    if x > 0.0 and r < 1.0:
        return 1.0
    return r if r > 0.0 else 0.0


def exp_up(x):
    if x == INF:
        return INF
    if x == 0.0:
        return 1.0
    if x > EXP_CAP:
        return INF
    r = _out_up(math.exp(x))
    return 1.0 if x < 0.0 and r > 1.0 else r


def log_dn(y):
    # y >= 0
    if y == 0.0:
        return -INF
    if y == INF:
        return INF
    if y == 1.0:
        return 0.0
    r = _out_dn(math.log(y))
    return 0.0 if y > 1.0 and r < 0.0 else r


def log_up(y):
    if y == 0.0:
        return -INF
    if y == INF:
        return INF
    if y == 1.0:
        return 0.0
    r = _out_up(math.log(y))
    return 0.0 if y < 1.0 and r > 0.0 else r


def acos_dn(y):
    if y >= 1.0:
        return 0.0
    if y <= -1.0:
        return PI_LO
    r = _out_dn(math.acos(y))
    return r if r > 0.0 else 0.0


def acos_up(y):
    if y <= -1.0:
        return PI_HI
    if y >= 1.0:
        return 0.0
    r = _out_up(math.acos(y))
    return r if r < PI_HI else PI_HI


# -- interval operations on (lo, hi) pairs ----------------------------------

def iadd(al, ah, bl, bh):
    if al > ah or bl > bh:
        return EMPTY
    return add_dn(al, bl), add_up(ah, bh)


def isub(al, ah, bl, bh):
    if al > ah or bl > bh:
        return EMPTY
    return add_dn(al, -bh), add_up(ah, -bl)


def imul(al, ah, bl, bh):
    if al > ah or bl > bh:
        return EMPTY
    if al >= 0.0:
        if bl >= 0.0:
            return mul_dn(al, bl), mul_up(ah, bh)
        if bh <= 0.0:
            return mul_dn(ah, bl), mul_up(al, bh)
        return mul_dn(ah, bl), mul_up(ah, bh)
    if ah <= 0.0:
        if bl >= 0.0:
            return mul_dn(al, bh), mul_up(ah, bl)
        if bh <= 0.0:
            return mul_dn(ah, bh), mul_up(al, bl)
        return mul_dn(al, bh), mul_up(al, bl)
    if bl >= 0.0:
        return mul_dn(al, bh), mul_up(ah, bh)
    if bh <= 0.0:
        return mul_dn(ah, bl), mul_up(al, bl)
    return (min(mul_dn(al, bh), mul_dn(ah, bl)),
            max(mul_up(al, bl), mul_up(ah, bh)))


def _idiv_nz(zl, zh, yl, yh):
    # 0 not in [yl, yh]
    if yl > 0.0:
        if zl >= 0.0:
            return div_dn(zl, yh), div_up(zh, yl)
        if zh <= 0.0:
            return div_dn(zl, yl), div_up(zh, yh)
        return div_dn(zl, yl), div_up(zh, yl)
    if zl >= 0.0:
        return div_dn(zh, yh), div_up(zl, yl)
    if zh <= 0.0:
        return div_dn(zh, yl), div_up(zl, yh)
    return div_dn(zh, yh), div_up(zl, yh)


def ediv(zl, zh, yl, yh, xl, xh):
    """Hull of {x in [xl,xh] | exists y in Y, z in Z with x*y = z}."""
    if zl > zh or yl > yh or xl > xh:
        return EMPTY
    if yl > 0.0 or yh < 0.0:
        l, h = _idiv_nz(zl, zh, yl, yh)
        l = l if l > xl else xl
        h = h if h < xh else xh
        return (l, h) if l <= h else EMPTY
    if zl <= 0.0 <= zh:
        return xl, xh
    if yl == 0.0 and yh == 0.0:
        return EMPTY
    # two branches: a ray from the y < 0 side and a ray from the y > 0 side
    lo, hi = INF, -INF
    if zl > 0.0:
        if yh > 0.0:  # [zl/yh, +inf)
            l = div_dn(zl, yh)
            if l < xl:
                l = xl
            if l <= xh:
                lo, hi = l, xh
        if yl < 0.0:  # (-inf, zl/yl]
            h = div_up(zl, yl)
            if h > xh:
                h = xh
            if xl <= h:
                lo = xl
                if h > hi:
                    hi = h
    else:
        if yh > 0.0:  # (-inf, zh/yh]
            h = div_up(zh, yh)
            if h > xh:
                h = xh
            if xl <= h:
                lo, hi = xl, h
        if yl < 0.0:  # [zh/yl, +inf)
            l = div_dn(zh, yl)
            if l < xl:
                l = xl
            if l <= xh:
                hi = xh
                if l < lo:
                    lo = l
    return (lo, hi) if lo <= hi else EMPTY


def ipow(al, ah, n):
    if al > ah:
        return EMPTY
    if n == 1:
        return al, ah
    if n % 2:
        l = pow_dn(al, n) if al >= 0.0 else -pow_up(-al, n)
        h = pow_up(ah, n) if ah >= 0.0 else -pow_dn(-ah, n)
        return l, h
    if al >= 0.0:
        return pow_dn(al, n), pow_up(ah, n)
    if ah <= 0.0:
        return pow_dn(-ah, n), pow_up(-al, n)
    m = -al if -al > ah else ah
    return 0.0, pow_up(m, n)


def iroot(yl, yh, n, xl, xh):
    """Hull of {x in X | x**n in Y}."""
    if yl > yh or xl > xh:
        return EMPTY
    if n == 1:
        l = yl if yl > xl else xl
        h = yh if yh < xh else xh
        return (l, h) if l <= h else EMPTY
    if n % 2:
        l = root_dn(yl, n) if yl >= 0.0 else -root_up(-yl, n)
        h = root_up(yh, n) if yh >= 0.0 else -root_dn(-yh, n)
        l = l if l > xl else xl
        h = h if h < xh else xh
        return (l, h) if l <= h else EMPTY
    if yh < 0.0:
        return EMPTY
    rl = root_dn(yl, n) if yl > 0.0 else 0.0
    rh = root_up(yh, n)
    lo, hi = INF, -INF
    # positive branch
    l = rl if rl > xl else xl
    h = rh if rh < xh else xh
    if l <= h:
        lo, hi = l, h
    # negative branch
    l = -rh if -rh > xl else xl
    h = -rl if -rl < xh else xh
    if l <= h:
        if l < lo:
            lo = l
        if h > hi:
            hi = h
    return (lo, hi) if lo <= hi else EMPTY


def iexp(al, ah):
    if al > ah:
        return EMPTY
    return exp_dn(al), exp_up(ah)


def ilog(yl, yh):
    """Hull of {x | exp(x) in Y}."""
    if yl > yh or yh <= 0.0:
        return EMPTY
    return (log_dn(yl) if yl > 0.0 else -INF), log_up(yh)


def isqrt(al, ah):
    if al > ah or ah < 0.0:
        return EMPTY
    l = root_dn(al, 2) if al > 0.0 else 0.0
    return l, root_up(ah, 2)


def _pi_mul_dn(k):
    # lower bound of k*pi for an integer-valued float k
    return mul_dn(k, PI_LO) if k >= 0.0 else mul_dn(k, PI_HI)


def _pi_mul_up(k):
    return mul_up(k, PI_HI) if k >= 0.0 else mul_up(k, PI_LO)


def icos(al, ah):
    if al > ah:
        return EMPTY
    if _isinf(al) or _isinf(ah) or ah - al >= 6.0 or abs(al) > 1e9 or abs(ah) > 1e9:
        return -1.0, 1.0
    ca = math.cos(al)
    cb = math.cos(ah)
    l = _out_dn(ca if ca < cb else cb)
    h = _out_up(ca if ca > cb else cb)
    # integers k with k*pi possibly inside [al, ah]
    ta = al / PI_HI if al >= 0.0 else al / PI_LO
    tb = ah / PI_LO if ah >= 0.0 else ah / PI_HI
    k = math.ceil(ta - 1e-9 * (1.0 + abs(ta)))
    kmax = math.floor(tb + 1e-9 * (1.0 + abs(tb)))
    while k <= kmax:
        if k % 2:
            l = -1.0
        else:
            h = 1.0
        k += 1
    if l < -1.0:
        l = -1.0
    if h > 1.0:
        h = 1.0
    return l, h


def icos_inv(yl, yh, xl, xh):
    """Hull of {x in X | cos(x) in Y}."""
    if yl > yh or xl > xh:
        return EMPTY
    if yl < -1.0:
        yl = -1.0
    if yh > 1.0:
        yh = 1.0
    if yl > yh:
        return EMPTY
    if _isinf(xl) or _isinf(xh) or xh - xl > 200.0 * PI_HI or abs(xl) > 1e9 or abs(xh) > 1e9:
        return xl, xh
    # acos(Y) = [ql, qh] within [0, pi]
    ql = acos_dn(yh)
    qh = acos_up(yl)
    kl = math.floor(xl / (2.0 * PI_LO)) - 1
    kh = math.ceil(xh / (2.0 * PI_LO)) + 1
    lo, hi = INF, -INF
    k = kl
    while k <= kh:
        tl = _pi_mul_dn(2.0 * k)
        th = _pi_mul_up(2.0 * k)
        # 2k*pi + [ql, qh] and 2k*pi - [ql, qh]
        for bl, bh in ((add_dn(tl, ql), add_up(th, qh)),
                       (add_dn(tl, -qh), add_up(th, -ql))):
            l = bl if bl > xl else xl
            h = bh if bh < xh else xh
            if l <= h:
                if l < lo:
                    lo = l
                if h > hi:
                    hi = h
        k += 1
    return (lo, hi) if lo <= hi else EMPTY


def ineg(al, ah):
    if al > ah:
        return EMPTY
    return -ah, -al


# -- primitive projections ---------------------------------------------------

def forward(op, al, ah, bl, bh, n):
    """Image of the operands under the primitive's operator."""
    if op == OP_ADD:
        return iadd(al, ah, bl, bh)
    if op == OP_SUB:
        return isub(al, ah, bl, bh)
    if op == OP_MUL:
        return imul(al, ah, bl, bh)
    if op == OP_DIV:
        return ediv(al, ah, bl, bh, -INF, INF)
    if op == OP_NEG:
        return ineg(al, ah)
    if op == OP_EXP:
        return iexp(al, ah)
    if op == OP_COS:
        return icos(al, ah)
    if op == OP_SQRT:
        return isqrt(al, ah)
    return ipow(al, ah, n)


def project_bounds(op, slot, ol, oh, al, ah, bl, bh, n):
    """Projection of ``out = op(a, b)`` onto operand ``slot`` (0=out, 1=a, 2=b),
    already intersected with that operand's current domain."""
    if slot == 0:
        fl, fh = forward(op, al, ah, bl, bh, n)
        xl, xh = ol, oh
    elif op == OP_ADD:
        if slot == 1:
            fl, fh = isub(ol, oh, bl, bh)
            xl, xh = al, ah
        else:
            fl, fh = isub(ol, oh, al, ah)
            xl, xh = bl, bh
    elif op == OP_SUB:
        if slot == 1:
            fl, fh = iadd(ol, oh, bl, bh)
            xl, xh = al, ah
        else:
            fl, fh = isub(al, ah, ol, oh)
            xl, xh = bl, bh
    elif op == OP_MUL:
        if slot == 1:
            return ediv(ol, oh, bl, bh, al, ah)
        return ediv(ol, oh, al, ah, bl, bh)
    elif op == OP_DIV:
        if slot == 1:
            fl, fh = imul(ol, oh, bl, bh)
            xl, xh = al, ah
        else:
            return ediv(al, ah, ol, oh, bl, bh)
    elif op == OP_NEG:
        fl, fh = ineg(ol, oh)
        xl, xh = al, ah
    elif op == OP_EXP:
        fl, fh = ilog(ol, oh)
        xl, xh = al, ah
    elif op == OP_COS:
        return icos_inv(ol, oh, al, ah)
    elif op == OP_SQRT:
        if oh < 0.0:
            return EMPTY
        fl, fh = ipow(ol if ol > 0.0 else 0.0, oh, 2)
        xl, xh = al, ah
    else:
        return iroot(ol, oh, n, al, ah)
    if fl > fh or xl > xh:
        return EMPTY
    l = fl if fl > xl else xl
    h = fh if fh < xh else xh
    return (l, h) if l <= h else EMPTY


# -- network and engines -----------------------------------------------------

class Network:
    """Flattened primitive system plus per-constraint schedules.

    ``lo``/``hi`` arguments are ``array('d')`` buffers over every variable
    (original variables first, then each constraint's fresh variables) and
    are updated in place.
    """

    def __init__(self, n_orig, nvars, op, out, a, b, expo, ca_lo, ca_hi,
                 cb_lo, cb_hi, prim_con, con_prims, con_sched, con_fresh,
                 fresh_lo, fresh_hi, con_reenqueue):
        self.n_orig = n_orig
        self.nvars = nvars
        self.op = list(op)
        self.out = list(out)
        self.a = list(a)
        self.b = list(b)
        self.expo = list(expo)
        self.ca_lo = list(ca_lo)
        self.ca_hi = list(ca_hi)
        self.cb_lo = list(cb_lo)
        self.cb_hi = list(cb_hi)
        self.prim_con = list(prim_con)
        self.con_prims = [list(x) for x in con_prims]
        self.con_sched = [list(x) for x in con_sched]
        self.con_fresh = [list(x) for x in con_fresh]
        self.fresh_lo = list(fresh_lo)
        self.fresh_hi = list(fresh_hi)
        self.con_reenqueue = [bool(x) for x in con_reenqueue]
        np_ = len(self.op)
        nc = len(self.con_prims)
        # HC3revise order: variable inputs left to right, then output
        self.prim_slots = []
        self.prim_reenqueue = []
        var_prims = [[] for _ in range(nvars)]
        var_cons = [[] for _ in range(nvars)]
        for p in range(np_):
            slots = []
            vs = []
            if self.a[p] >= 0:
                slots.append(1)
                vs.append(self.a[p])
            if self.b[p] >= 0:
                slots.append(2)
                vs.append(self.b[p])
            slots.append(0)
            vs.append(self.out[p])
            self.prim_slots.append(slots)
            self.prim_reenqueue.append(len(set(vs)) < len(vs))
            for v in set(vs):
                var_prims[v].append(p)
        for c in range(nc):
            seen = set()
            for p in self.con_prims[c]:
                for v in (self.a[p], self.b[p], self.out[p]):
                    if 0 <= v < n_orig and v not in seen:
                        seen.add(v)
                        var_cons[v].append(c)
        self.var_prims = var_prims
        self.var_cons = var_cons
        self.projections = 0
        self.revise_calls = 0
        self.enqueues = 0

    def reset_counters(self):
        self.projections = 0
        self.revise_calls = 0
        self.enqueues = 0

    def init_fresh(self, lo, hi):
        for v in range(self.n_orig, self.nvars):
            lo[v] = self.fresh_lo[v]
            hi[v] = self.fresh_hi[v]

    # one projection; returns -1 empty, 0 unchanged, else 1 + target index
    def project(self, lo, hi, p, slot):
        o = self.out[p]
        ia = self.a[p]
        ib = self.b[p]
        if ia >= 0:
            al = lo[ia]
            ah = hi[ia]
        else:
            al = self.ca_lo[p]
            ah = self.ca_hi[p]
        if ib >= 0:
            bl = lo[ib]
            bh = hi[ib]
        else:
            bl = self.cb_lo[p]
            bh = self.cb_hi[p]
        l, h = project_bounds(self.op[p], slot, lo[o], hi[o], al, ah, bl, bh,
                              self.expo[p])
        self.projections += 1
        t = o if slot == 0 else (ia if slot == 1 else ib)
        if l > h:
            return -1
        if l != lo[t] or h != hi[t]:
            lo[t] = l
            hi[t] = h
            return t + 1
        return 0

    def hc3_revise(self, lo, hi, p, changed):
        """Apply every projection of primitive p once; changed vars appended."""
        self.revise_calls += 1
        for slot in self.prim_slots[p]:
            r = self.project(lo, hi, p, slot)
            if r < 0:
                return False
            if r > 0:
                changed.append(r - 1)
        return True

    def hc4_revise(self, lo, hi, c, changed):
        """Two sweeps over constraint c; changed original vars appended."""
        self.revise_calls += 1
        for v in self.con_fresh[c]:
            lo[v] = self.fresh_lo[v]
            hi[v] = self.fresh_hi[v]
        n_orig = self.n_orig
        for code in self.con_sched[c]:
            r = self.project(lo, hi, code // 3, code % 3)
            if r < 0:
                return False
            if 0 < r <= n_orig and (r - 1) not in changed:
                changed.append(r - 1)
        return True

    def _hc3_loop(self, lo, hi, queue, inq, restrict, lifo, deadline):
        prim_con = self.prim_con
        var_prims = self.var_prims
        touched = []
        count = 0
        while queue:
            p = queue.pop() if lifo else queue.popleft()
            inq[p] = False
            changed = []
            if not self.hc3_revise(lo, hi, p, changed):
                return ST_EMPTY, touched
            for v in changed:
                if v < self.n_orig:
                    touched.append(v)
                for q in var_prims[v]:
                    if inq[q] or (q == p and not self.prim_reenqueue[p]):
                        continue
                    if restrict >= 0 and prim_con[q] != restrict:
                        continue
                    inq[q] = True
                    queue.append(q)
                    self.enqueues += 1
            count += 1
            if deadline and count % 1024 == 0 and time.monotonic() > deadline:
                return ST_TIMEOUT, touched
        return ST_OK, touched

    def sbox_hc3(self, lo, hi, c, lifo=False):
        from collections import deque
        self.revise_calls += 1
        queue = deque(self.con_prims[c])
        inq = [False] * len(self.op)
        for p in queue:
            inq[p] = True
        self.enqueues += len(queue)
        st, touched = self._hc3_loop(lo, hi, queue, inq, c, lifo, 0.0)
        return st == ST_OK, touched

    def sbox_hc4(self, lo, hi, c):
        self.revise_calls += 1
        touched = []
        while True:
            changed = []
            if not self.hc4_revise(lo, hi, c, changed):
                return False, touched
            if not changed:
                return True, touched
            touched.extend(changed)

    def propagate(self, lo, hi, method, seeds=None, lifo=False, deadline=0.0):
        """Run the worklist for ``method`` to quiescence.

        ``seeds``: original variable indices whose domains changed since the
        last fixed point; None seeds every constraint. Returns ST_*.
        """
        from collections import deque
        queue = deque()
        if method == HC3:
            inq = [False] * len(self.op)
            if seeds is None:
                init = range(len(self.op))
            else:
                init = sorted({p for v in seeds for p in self.var_prims[v]})
            for p in init:
                inq[p] = True
                queue.append(p)
            self.enqueues += len(queue)
            st, _ = self._hc3_loop(lo, hi, queue, inq, -1, lifo, deadline)
            return st
        nc = len(self.con_prims)
        inq = [False] * nc
        if seeds is None:
            init = range(nc)
        else:
            init = sorted({c for v in seeds for c in self.var_cons[v]})
        for c in init:
            inq[c] = True
            queue.append(c)
        self.enqueues += len(queue)
        var_cons = self.var_cons
        count = 0
        while queue:
            c = queue.pop() if lifo else queue.popleft()
            inq[c] = False
            if method == HC4:
                changed = []
                ok = self.hc4_revise(lo, hi, c, changed)
                selfloop = self.con_reenqueue[c]
            elif method == HC4SB:
                ok, changed = self.sbox_hc4(lo, hi, c)
                selfloop = False
            else:
                ok, changed = self.sbox_hc3(lo, hi, c, lifo)
                selfloop = False
            if not ok:
                return ST_EMPTY
            for v in changed:
                for d in var_cons[v]:
                    if inq[d] or (d == c and not selfloop):
                        continue
                    inq[d] = True
                    queue.append(d)
                    self.enqueues += 1
            count += 1
            if deadline and count % 256 == 0 and time.monotonic() > deadline:
                return ST_TIMEOUT
        return ST_OK
