# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernel: a line-by-line port of ``_pykernel``.

Build with ``-ffp-contract=off`` so no fused multiply-add changes the
error-free transformations. Results must match the Python kernel bit for
bit; only the speed differs.
"""

from array import array

from libc.math cimport acos, ceil, cos, exp, fabs, floor, isinf, ldexp, log, nextafter, pow, sqrt
from libc.stdlib cimport free, malloc

import time

cdef double INF_ = float("inf")
INF = INF_
MAXF = 1.7976931348623157e308
TRANS_ULPS = 2
EXP_CAP = 709.78
PI_LO = 3.141592653589793
PI_HI = 3.1415926535897936

cdef double C_MAXF = 1.7976931348623157e308
cdef int C_TRANS_ULPS = 2
cdef double C_EXP_CAP = 709.78
cdef double C_PI_LO = 3.141592653589793
cdef double C_PI_HI = 3.1415926535897936
cdef double _BIG = 1e300
cdef double _TINY = 1e-250
cdef double _MIN_SUB = 5e-324
cdef int _SCALE_BITS = 1100
cdef double _SPLIT = 134217729.0

EMPTY = (INF_, -INF_)

OP_ADD, OP_SUB, OP_MUL, OP_DIV, OP_NEG, OP_EXP, OP_COS, OP_SQRT, OP_POW = range(9)
HC3, HC3SB, HC4, HC4SB = range(4)
ST_EMPTY, ST_OK, ST_TIMEOUT = 0, 1, 2

DEF C_ADD = 0
DEF C_SUB = 1
DEF C_MUL = 2
DEF C_DIV = 3
DEF C_NEG = 4
DEF C_EXP = 5
DEF C_COS = 6
DEF C_SQRT = 7
DEF C_POW = 8


# -- rounded scalar operations ------------------------------------------------

cdef inline double c_add_dn(double a, double b) nogil:
    cdef double s = a + b
    cdef double bb
    if s == INF_:
        return C_MAXF
    if s == -INF_:
        return s
    bb = s - a
    if (a - (s - bb)) + (b - bb) < 0.0:
        return nextafter(s, -INF_)
    return s


cdef inline double c_add_up(double a, double b) nogil:
    cdef double s = a + b
    cdef double bb
    if s == -INF_:
        return -C_MAXF
    if s == INF_:
        return s
    bb = s - a
    if (a - (s - bb)) + (b - bb) > 0.0:
        return nextafter(s, INF_)
    return s


cdef inline double c_prod_err(double a, double b, double p) nogil:
    cdef double c = _SPLIT * a
    cdef double ah = c - (c - a)
    cdef double al = a - ah
    c = _SPLIT * b
    cdef double bh = c - (c - b)
    cdef double bl = b - bh
    return ((ah * bh - p) + ah * bl + al * bh) + al * bl


cdef inline double c_mul_dn(double a, double b) nogil:
    if a == 0.0 or b == 0.0:
        return 0.0
    cdef double p = a * b
    if isinf(p):
        if p > 0.0 and not isinf(a) and not isinf(b):
            return C_MAXF
        return p
    if p == 0.0:
        return 0.0 if (a > 0.0) == (b > 0.0) else -_MIN_SUB
    if fabs(a) > _BIG or fabs(b) > _BIG or fabs(p) < _TINY:
        return nextafter(p, -INF_)
    if c_prod_err(a, b, p) < 0.0:
        return nextafter(p, -INF_)
    return p


cdef inline double c_mul_up(double a, double b) nogil:
    if a == 0.0 or b == 0.0:
        return 0.0
    cdef double p = a * b
    if isinf(p):
        if p < 0.0 and not isinf(a) and not isinf(b):
            return -C_MAXF
        return p
    if p == 0.0:
        return _MIN_SUB if (a > 0.0) == (b > 0.0) else 0.0
    if fabs(a) > _BIG or fabs(b) > _BIG or fabs(p) < _TINY:
        return nextafter(p, INF_)
    if c_prod_err(a, b, p) > 0.0:
        return nextafter(p, INF_)
    return p


cdef inline double c_div_dir(double a, double b, int* d) nogil:
    cdef double q, p, r
    if a == 0.0:
        d[0] = 0
        return 0.0
    if isinf(b):
        if isinf(a):
            d[0] = 0
            return INF_ if (a > 0.0) == (b > 0.0) else -INF_
        d[0] = 1 if (a > 0.0) == (b > 0.0) else -1
        return 0.0
    q = a / b
    if isinf(q):
        d[0] = 0 if isinf(a) else 2
        return q
    if q == 0.0:
        # underflow: the exact value is nonzero with the sign of a/b
        d[0] = 1 if (a > 0.0) == (b > 0.0) else -1
        return q
    if fabs(q) < _TINY or fabs(q) > _BIG or fabs(a) < _TINY or fabs(b) > _BIG:
        d[0] = 2
        return q
    p = q * b
    r = (a - p) - c_prod_err(q, b, p)
    if r == 0.0:
        d[0] = 0
        return q
    d[0] = 1 if (r > 0.0) == (b > 0.0) else -1
    return q


cdef inline double c_div_dn(double a, double b) nogil:
    cdef int d
    cdef double q = c_div_dir(a, b, &d)
    if d == 0 or d == 1:
        return q
    if q == INF_:
        return C_MAXF
    if q == -INF_:
        return q
    return nextafter(q, -INF_)


cdef inline double c_div_up(double a, double b) nogil:
    cdef int d
    cdef double q = c_div_dir(a, b, &d)
    if d == 0 or d == -1:
        return q
    if q == -INF_:
        return -C_MAXF
    if q == INF_:
        return q
    return nextafter(q, INF_)


cdef inline double c_pow_dn(double x, int n) nogil:
    cdef double r = x
    cdef int i
    for i in range(n - 1):
        r = c_mul_dn(r, x)
    return r


cdef inline double c_pow_up(double x, int n) nogil:
    cdef double r = x
    cdef int i
    for i in range(n - 1):
        r = c_mul_up(r, x)
    return r


cdef double c_root_dn(double a, int n) nogil:
    cdef double r, t
    cdef int i, k
    cdef bint ok = False
    if a == 0.0 or a == INF_:
        return a
    if a < _TINY:
        # scale subnormal/tiny inputs by an exact power of two
        k = (_SCALE_BITS + n - 1) // n
        return ldexp(c_root_dn(ldexp(a, n * k), n), -k)
    r = sqrt(a) if n == 2 else pow(a, 1.0 / n)
    for i in range(8):
        if c_pow_up(r, n) <= a:
            ok = True
            break
        r = nextafter(r, -INF_)
    if not ok:
        return 0.0
    for i in range(4):
        t = nextafter(r, INF_)
        if c_pow_up(t, n) > a:
            break
        r = t
    return r


cdef double c_root_up(double a, int n) nogil:
    cdef double r, t
    cdef int i, k
    cdef bint ok = False
    if a == 0.0 or a == INF_:
        return a
    if a < _TINY:
        # scale subnormal/tiny inputs by an exact power of two
        k = (_SCALE_BITS + n - 1) // n
        return ldexp(c_root_up(ldexp(a, n * k), n), -k)
    r = sqrt(a) if n == 2 else pow(a, 1.0 / n)
    for i in range(8):
        if c_pow_dn(r, n) >= a:
            ok = True
            break
        r = nextafter(r, INF_)
    if not ok:
        return INF_
    for i in range(4):
        t = nextafter(r, -INF_)
        if c_pow_dn(t, n) < a:
            break
        r = t
    return r


cdef inline double c_out_dn(double r) nogil:
    cdef int i
    for i in range(C_TRANS_ULPS):
        r = nextafter(r, -INF_)
    return r


cdef inline double c_out_up(double r) nogil:
    cdef int i
    for i in range(C_TRANS_ULPS):
        r = nextafter(r, INF_)
    return r


cdef inline double c_exp_dn(double x) nogil:
    if x == -INF_:
        return 0.0
    if x == 0.0:
        return 1.0
    if x > C_EXP_CAP:
        x = C_EXP_CAP
    cdef double r = c_out_dn(exp(x))
    # exp(x) >= 1 for x >= 0; the clamp keeps the bound monotone at 0
    if x > 0.0 and r < 1.0:
        return 1.0
    return r if r > 0.0 else 0.0


cdef inline double c_exp_up(double x) nogil:
    if x == INF_:
        return INF_
    if x == 0.0:
        return 1.0
    if x > C_EXP_CAP:
        return INF_
    cdef double r = c_out_up(exp(x))
    return 1.0 if x < 0.0 and r > 1.0 else r


cdef inline double c_log_dn(double y) nogil:
    if y == 0.0:
        return -INF_
    if y == INF_:
        return INF_
    if y == 1.0:
        return 0.0
    cdef double r = c_out_dn(log(y))
    return 0.0 if y > 1.0 and r < 0.0 else r


cdef inline double c_log_up(double y) nogil:
    if y == 0.0:
        return -INF_
    if y == INF_:
        return INF_
    if y == 1.0:
        return 0.0
    cdef double r = c_out_up(log(y))
    return 0.0 if y < 1.0 and r > 0.0 else r


cdef inline double c_acos_dn(double y) nogil:
    if y >= 1.0:
        return 0.0
    if y <= -1.0:
        return C_PI_LO
    cdef double r = c_out_dn(acos(y))
    return r if r > 0.0 else 0.0


cdef inline double c_acos_up(double y) nogil:
    if y <= -1.0:
        return C_PI_HI
    if y >= 1.0:
        return 0.0
    cdef double r = c_out_up(acos(y))
    return r if r < C_PI_HI else C_PI_HI


# -- interval operations; results through l/h, empty as l > h ----------------

cdef inline void set_empty(double* l, double* h) nogil:
    l[0] = INF_
    h[0] = -INF_


cdef inline void c_iadd(double al, double ah, double bl, double bh, double* l, double* h) nogil:
    if al > ah or bl > bh:
        set_empty(l, h)
        return
    l[0] = c_add_dn(al, bl)
    h[0] = c_add_up(ah, bh)


cdef inline void c_isub(double al, double ah, double bl, double bh, double* l, double* h) nogil:
    if al > ah or bl > bh:
        set_empty(l, h)
        return
    l[0] = c_add_dn(al, -bh)
    h[0] = c_add_up(ah, -bl)


cdef void c_imul(double al, double ah, double bl, double bh, double* l, double* h) nogil:
    cdef double x, y
    if al > ah or bl > bh:
        set_empty(l, h)
        return
    if al >= 0.0:
        if bl >= 0.0:
            l[0] = c_mul_dn(al, bl); h[0] = c_mul_up(ah, bh)
        elif bh <= 0.0:
            l[0] = c_mul_dn(ah, bl); h[0] = c_mul_up(al, bh)
        else:
            l[0] = c_mul_dn(ah, bl); h[0] = c_mul_up(ah, bh)
        return
    if ah <= 0.0:
        if bl >= 0.0:
            l[0] = c_mul_dn(al, bh); h[0] = c_mul_up(ah, bl)
        elif bh <= 0.0:
            l[0] = c_mul_dn(ah, bh); h[0] = c_mul_up(al, bl)
        else:
            l[0] = c_mul_dn(al, bh); h[0] = c_mul_up(al, bl)
        return
    if bl >= 0.0:
        l[0] = c_mul_dn(al, bh); h[0] = c_mul_up(ah, bh)
        return
    if bh <= 0.0:
        l[0] = c_mul_dn(ah, bl); h[0] = c_mul_up(al, bl)
        return
    x = c_mul_dn(al, bh)
    y = c_mul_dn(ah, bl)
    l[0] = x if x < y else y
    x = c_mul_up(al, bl)
    y = c_mul_up(ah, bh)
    h[0] = x if x > y else y


cdef void c_idiv_nz(double zl, double zh, double yl, double yh, double* l, double* h) nogil:
    if yl > 0.0:
        if zl >= 0.0:
            l[0] = c_div_dn(zl, yh); h[0] = c_div_up(zh, yl)
        elif zh <= 0.0:
            l[0] = c_div_dn(zl, yl); h[0] = c_div_up(zh, yh)
        else:
            l[0] = c_div_dn(zl, yl); h[0] = c_div_up(zh, yl)
        return
    if zl >= 0.0:
        l[0] = c_div_dn(zh, yh); h[0] = c_div_up(zl, yl)
    elif zh <= 0.0:
        l[0] = c_div_dn(zh, yl); h[0] = c_div_up(zl, yh)
    else:
        l[0] = c_div_dn(zh, yh); h[0] = c_div_up(zl, yh)


cdef void c_ediv(double zl, double zh, double yl, double yh, double xl, double xh,
                 double* ol, double* oh) nogil:
    cdef double lo, hi, l, h
    if zl > zh or yl > yh or xl > xh:
        set_empty(ol, oh)
        return
    if yl > 0.0 or yh < 0.0:
        c_idiv_nz(zl, zh, yl, yh, &l, &h)
        l = l if l > xl else xl
        h = h if h < xh else xh
        if l <= h:
            ol[0] = l; oh[0] = h
        else:
            set_empty(ol, oh)
        return
    if zl <= 0.0 <= zh:
        ol[0] = xl; oh[0] = xh
        return
    if yl == 0.0 and yh == 0.0:
        set_empty(ol, oh)
        return
    lo = INF_
    hi = -INF_
    if zl > 0.0:
        if yh > 0.0:
            l = c_div_dn(zl, yh)
            if l < xl:
                l = xl
            if l <= xh:
                lo = l; hi = xh
        if yl < 0.0:
            h = c_div_up(zl, yl)
            if h > xh:
                h = xh
            if xl <= h:
                lo = xl
                if h > hi:
                    hi = h
    else:
        if yh > 0.0:
            h = c_div_up(zh, yh)
            if h > xh:
                h = xh
            if xl <= h:
                lo = xl; hi = h
        if yl < 0.0:
            l = c_div_dn(zh, yl)
            if l < xl:
                l = xl
            if l <= xh:
                hi = xh
                if l < lo:
                    lo = l
    if lo <= hi:
        ol[0] = lo; oh[0] = hi
    else:
        set_empty(ol, oh)


cdef void c_ipow(double al, double ah, int n, double* l, double* h) nogil:
    cdef double m
    if al > ah:
        set_empty(l, h)
        return
    if n == 1:
        l[0] = al; h[0] = ah
        return
    if n % 2:
        l[0] = c_pow_dn(al, n) if al >= 0.0 else -c_pow_up(-al, n)
        h[0] = c_pow_up(ah, n) if ah >= 0.0 else -c_pow_dn(-ah, n)
        return
    if al >= 0.0:
        l[0] = c_pow_dn(al, n); h[0] = c_pow_up(ah, n)
        return
    if ah <= 0.0:
        l[0] = c_pow_dn(-ah, n); h[0] = c_pow_up(-al, n)
        return
    m = -al if -al > ah else ah
    l[0] = 0.0
    h[0] = c_pow_up(m, n)


cdef void c_iroot(double yl, double yh, int n, double xl, double xh, double* ol, double* oh) nogil:
    cdef double l, h, rl, rh, lo, hi
    if yl > yh or xl > xh:
        set_empty(ol, oh)
        return
    if n == 1:
        l = yl if yl > xl else xl
        h = yh if yh < xh else xh
        if l <= h:
            ol[0] = l; oh[0] = h
        else:
            set_empty(ol, oh)
        return
    if n % 2:
        l = c_root_dn(yl, n) if yl >= 0.0 else -c_root_up(-yl, n)
        h = c_root_up(yh, n) if yh >= 0.0 else -c_root_dn(-yh, n)
        l = l if l > xl else xl
        h = h if h < xh else xh
        if l <= h:
            ol[0] = l; oh[0] = h
        else:
            set_empty(ol, oh)
        return
    if yh < 0.0:
        set_empty(ol, oh)
        return
    rl = c_root_dn(yl, n) if yl > 0.0 else 0.0
    rh = c_root_up(yh, n)
    lo = INF_
    hi = -INF_
    l = rl if rl > xl else xl
    h = rh if rh < xh else xh
    if l <= h:
        lo = l; hi = h
    l = -rh if -rh > xl else xl
    h = -rl if -rl < xh else xh
    if l <= h:
        if l < lo:
            lo = l
        if h > hi:
            hi = h
    if lo <= hi:
        ol[0] = lo; oh[0] = hi
    else:
        set_empty(ol, oh)


cdef inline void c_iexp(double al, double ah, double* l, double* h) nogil:
    if al > ah:
        set_empty(l, h)
        return
    l[0] = c_exp_dn(al)
    h[0] = c_exp_up(ah)


cdef inline void c_ilog(double yl, double yh, double* l, double* h) nogil:
    if yl > yh or yh <= 0.0:
        set_empty(l, h)
        return
    l[0] = c_log_dn(yl) if yl > 0.0 else -INF_
    h[0] = c_log_up(yh)


cdef inline void c_isqrt(double al, double ah, double* l, double* h) nogil:
    if al > ah or ah < 0.0:
        set_empty(l, h)
        return
    l[0] = c_root_dn(al, 2) if al > 0.0 else 0.0
    h[0] = c_root_up(ah, 2)


cdef inline double c_pi_mul_dn(double k) nogil:
    return c_mul_dn(k, C_PI_LO) if k >= 0.0 else c_mul_dn(k, C_PI_HI)


cdef inline double c_pi_mul_up(double k) nogil:
    return c_mul_up(k, C_PI_HI) if k >= 0.0 else c_mul_up(k, C_PI_LO)


cdef void c_icos(double al, double ah, double* ol, double* oh) nogil:
    cdef double ca, cb, l, h, ta, tb
    cdef long long k, kmax
    if al > ah:
        set_empty(ol, oh)
        return
    if isinf(al) or isinf(ah) or ah - al >= 6.0 or fabs(al) > 1e9 or fabs(ah) > 1e9:
        ol[0] = -1.0; oh[0] = 1.0
        return
    ca = cos(al)
    cb = cos(ah)
    l = c_out_dn(ca if ca < cb else cb)
    h = c_out_up(ca if ca > cb else cb)
    ta = al / C_PI_HI if al >= 0.0 else al / C_PI_LO
    tb = ah / C_PI_LO if ah >= 0.0 else ah / C_PI_HI
    k = <long long>ceil(ta - 1e-9 * (1.0 + fabs(ta)))
    kmax = <long long>floor(tb + 1e-9 * (1.0 + fabs(tb)))
    while k <= kmax:
        if k % 2 != 0:
            l = -1.0
        else:
            h = 1.0
        k += 1
    if l < -1.0:
        l = -1.0
    if h > 1.0:
        h = 1.0
    ol[0] = l
    oh[0] = h


cdef void c_icos_inv(double yl, double yh, double xl, double xh, double* ol, double* oh) nogil:
    cdef double ql, qh, tl, th, lo, hi, bl, bh, l, h
    cdef long long k, kl, kh
    cdef int br
    if yl > yh or xl > xh:
        set_empty(ol, oh)
        return
    if yl < -1.0:
        yl = -1.0
    if yh > 1.0:
        yh = 1.0
    if yl > yh:
        set_empty(ol, oh)
        return
    if isinf(xl) or isinf(xh) or xh - xl > 200.0 * C_PI_HI or fabs(xl) > 1e9 or fabs(xh) > 1e9:
        ol[0] = xl; oh[0] = xh
        return
    ql = c_acos_dn(yh)
    qh = c_acos_up(yl)
    kl = <long long>floor(xl / (2.0 * C_PI_LO)) - 1
    kh = <long long>ceil(xh / (2.0 * C_PI_LO)) + 1
    lo = INF_
    hi = -INF_
    k = kl
    while k <= kh:
        tl = c_pi_mul_dn(2.0 * k)
        th = c_pi_mul_up(2.0 * k)
        for br in range(2):
            if br == 0:
                bl = c_add_dn(tl, ql); bh = c_add_up(th, qh)
            else:
                bl = c_add_dn(tl, -qh); bh = c_add_up(th, -ql)
            l = bl if bl > xl else xl
            h = bh if bh < xh else xh
            if l <= h:
                if l < lo:
                    lo = l
                if h > hi:
                    hi = h
        k += 1
    if lo <= hi:
        ol[0] = lo; oh[0] = hi
    else:
        set_empty(ol, oh)


cdef inline void c_ineg(double al, double ah, double* l, double* h) nogil:
    if al > ah:
        set_empty(l, h)
        return
    l[0] = -ah
    h[0] = -al


cdef void c_forward(int op, double al, double ah, double bl, double bh, int n,
                    double* l, double* h) nogil:
    if op == C_ADD:
        c_iadd(al, ah, bl, bh, l, h)
    elif op == C_SUB:
        c_isub(al, ah, bl, bh, l, h)
    elif op == C_MUL:
        c_imul(al, ah, bl, bh, l, h)
    elif op == C_DIV:
        c_ediv(al, ah, bl, bh, -INF_, INF_, l, h)
    elif op == C_NEG:
        c_ineg(al, ah, l, h)
    elif op == C_EXP:
        c_iexp(al, ah, l, h)
    elif op == C_COS:
        c_icos(al, ah, l, h)
    elif op == C_SQRT:
        c_isqrt(al, ah, l, h)
    else:
        c_ipow(al, ah, n, l, h)


cdef void c_project(int op, int slot, double ol, double oh, double al, double ah,
                    double bl, double bh, int n, double* rl, double* rh) nogil:
    cdef double fl, fh, xl, xh, l, h
    if slot == 0:
        c_forward(op, al, ah, bl, bh, n, &fl, &fh)
        xl = ol; xh = oh
    elif op == C_ADD:
        if slot == 1:
            c_isub(ol, oh, bl, bh, &fl, &fh)
            xl = al; xh = ah
        else:
            c_isub(ol, oh, al, ah, &fl, &fh)
            xl = bl; xh = bh
    elif op == C_SUB:
        if slot == 1:
            c_iadd(ol, oh, bl, bh, &fl, &fh)
            xl = al; xh = ah
        else:
            c_isub(al, ah, ol, oh, &fl, &fh)
            xl = bl; xh = bh
    elif op == C_MUL:
        if slot == 1:
            c_ediv(ol, oh, bl, bh, al, ah, rl, rh)
        else:
            c_ediv(ol, oh, al, ah, bl, bh, rl, rh)
        return
    elif op == C_DIV:
        if slot == 1:
            c_imul(ol, oh, bl, bh, &fl, &fh)
            xl = al; xh = ah
        else:
            c_ediv(al, ah, ol, oh, bl, bh, rl, rh)
            return
    elif op == C_NEG:
        c_ineg(ol, oh, &fl, &fh)
        xl = al; xh = ah
    elif op == C_EXP:
        c_ilog(ol, oh, &fl, &fh)
        xl = al; xh = ah
    elif op == C_COS:
        c_icos_inv(ol, oh, al, ah, rl, rh)
        return
    elif op == C_SQRT:
        if oh < 0.0:
            set_empty(rl, rh)
            return
        c_ipow(ol if ol > 0.0 else 0.0, oh, 2, &fl, &fh)
        xl = al; xh = ah
    else:
        c_iroot(ol, oh, n, al, ah, rl, rh)
        return
    if fl > fh or xl > xh:
        set_empty(rl, rh)
        return
    l = fl if fl > xl else xl
    h = fh if fh < xh else xh
    if l <= h:
        rl[0] = l; rh[0] = h
    else:
        set_empty(rl, rh)


# -- Python-visible wrappers -------------------------------------------------

def add_dn(double a, double b): return c_add_dn(a, b)
def add_up(double a, double b): return c_add_up(a, b)
def mul_dn(double a, double b): return c_mul_dn(a, b)
def mul_up(double a, double b): return c_mul_up(a, b)
def div_dn(double a, double b): return c_div_dn(a, b)
def div_up(double a, double b): return c_div_up(a, b)
def pow_dn(double x, int n): return c_pow_dn(x, n)
def pow_up(double x, int n): return c_pow_up(x, n)
def root_dn(double a, int n): return c_root_dn(a, n)
def root_up(double a, int n): return c_root_up(a, n)
def exp_dn(double x): return c_exp_dn(x)
def exp_up(double x): return c_exp_up(x)
def log_dn(double y): return c_log_dn(y)
def log_up(double y): return c_log_up(y)
def acos_dn(double y): return c_acos_dn(y)
def acos_up(double y): return c_acos_up(y)


def iadd(double al, double ah, double bl, double bh):
    cdef double l, h
    c_iadd(al, ah, bl, bh, &l, &h)
    return l, h


def isub(double al, double ah, double bl, double bh):
    cdef double l, h
    c_isub(al, ah, bl, bh, &l, &h)
    return l, h


def imul(double al, double ah, double bl, double bh):
    cdef double l, h
    c_imul(al, ah, bl, bh, &l, &h)
    return l, h


def ediv(double zl, double zh, double yl, double yh, double xl, double xh):
    cdef double l, h
    c_ediv(zl, zh, yl, yh, xl, xh, &l, &h)
    return l, h


def ipow(double al, double ah, int n):
    cdef double l, h
    c_ipow(al, ah, n, &l, &h)
    return l, h


def iroot(double yl, double yh, int n, double xl, double xh):
    cdef double l, h
    c_iroot(yl, yh, n, xl, xh, &l, &h)
    return l, h


def iexp(double al, double ah):
    cdef double l, h
    c_iexp(al, ah, &l, &h)
    return l, h


def ilog(double yl, double yh):
    cdef double l, h
    c_ilog(yl, yh, &l, &h)
    return l, h


def isqrt(double al, double ah):
    cdef double l, h
    c_isqrt(al, ah, &l, &h)
    return l, h


def icos(double al, double ah):
    cdef double l, h
    c_icos(al, ah, &l, &h)
    return l, h


def icos_inv(double yl, double yh, double xl, double xh):
    cdef double l, h
    c_icos_inv(yl, yh, xl, xh, &l, &h)
    return l, h


def ineg(double al, double ah):
    cdef double l, h
    c_ineg(al, ah, &l, &h)
    return l, h


def forward(int op, double al, double ah, double bl, double bh, int n):
    cdef double l, h
    c_forward(op, al, ah, bl, bh, n, &l, &h)
    return l, h


def project_bounds(int op, int slot, double ol, double oh, double al, double ah,
                   double bl, double bh, int n):
    cdef double l, h
    c_project(op, slot, ol, oh, al, ah, bl, bh, n, &l, &h)
    return l, h


# -- network and engines -----------------------------------------------------

def _csr(lists):
    ptr = array("i", [0])
    idx = array("i")
    for xs in lists:
        idx.extend(xs)
        ptr.append(len(idx))
    if not idx:
        idx.append(0)
    return ptr, idx


cdef class _Queue:
    """Ring buffer of ints; FIFO or LIFO pops."""
    cdef int* buf
    cdef int cap, head, size

    def __cinit__(self, int cap):
        self.cap = cap if cap > 0 else 1
        self.buf = <int*>malloc(self.cap * sizeof(int))
        if self.buf == NULL:
            raise MemoryError()
        self.head = 0
        self.size = 0

    def __dealloc__(self):
        free(self.buf)

    cdef inline void clear(self):
        self.head = 0
        self.size = 0

    cdef inline void push(self, int x):
        self.buf[(self.head + self.size) % self.cap] = x
        self.size += 1

    cdef inline int pop(self, bint lifo):
        cdef int x
        if lifo:
            self.size -= 1
            return self.buf[(self.head + self.size) % self.cap]
        x = self.buf[self.head]
        self.head = (self.head + 1) % self.cap
        self.size -= 1
        return x


cdef class Network:
    """Flattened primitive system plus per-constraint schedules; see
    ``_pykernel.Network``."""

    cdef public int n_orig, nvars, nprims, ncons
    cdef public long long projections, revise_calls, enqueues
    cdef int[::1] op, out, a, b, expo, prim_con, prim_reenqueue, con_reenqueue
    cdef double[::1] ca_lo, ca_hi, cb_lo, cb_hi, fresh_lo, fresh_hi
    cdef int[::1] cp_ptr, cp_idx, cs_ptr, cs_idx, cf_ptr, cf_idx
    cdef int[::1] vp_ptr, vp_idx, vc_ptr, vc_idx
    cdef int[::1] pslots, pnslots
    cdef char[::1] inq_p, inq_s, inq_c, mark
    cdef int[::1] touched
    cdef int ntouched
    cdef _Queue qp, qs, qc

    def __init__(self, n_orig, nvars, op, out, a, b, expo, ca_lo, ca_hi,
                 cb_lo, cb_hi, prim_con, con_prims, con_sched, con_fresh,
                 fresh_lo, fresh_hi, con_reenqueue):
        cdef int p, c
        self.n_orig = n_orig
        self.nvars = nvars
        self.nprims = len(op)
        self.ncons = len(con_prims)
        self.op = array("i", op)
        self.out = array("i", out)
        self.a = array("i", a)
        self.b = array("i", b)
        self.expo = array("i", expo)
        self.ca_lo = array("d", ca_lo)
        self.ca_hi = array("d", ca_hi)
        self.cb_lo = array("d", cb_lo)
        self.cb_hi = array("d", cb_hi)
        self.prim_con = array("i", prim_con)
        self.cp_ptr, self.cp_idx = _csr(con_prims)
        self.cs_ptr, self.cs_idx = _csr(con_sched)
        self.cf_ptr, self.cf_idx = _csr(con_fresh)
        self.fresh_lo = array("d", fresh_lo)
        self.fresh_hi = array("d", fresh_hi)
        self.con_reenqueue = array("i", [1 if x else 0 for x in con_reenqueue])
        slots = array("i", [0] * (3 * max(self.nprims, 1)))
        nslots = array("i", [0] * max(self.nprims, 1))
        reenq = array("i", [0] * max(self.nprims, 1))
        var_prims = [[] for _ in range(nvars)]
        var_cons = [[] for _ in range(nvars)]
        for p in range(self.nprims):
            ss = []
            vs = []
            if a[p] >= 0:
                ss.append(1)
                vs.append(a[p])
            if b[p] >= 0:
                ss.append(2)
                vs.append(b[p])
            ss.append(0)
            vs.append(out[p])
            for i, s in enumerate(ss):
                slots[3 * p + i] = s
            nslots[p] = len(ss)
            reenq[p] = 1 if len(set(vs)) < len(vs) else 0
            for v in sorted(set(vs)):
                var_prims[v].append(p)
        for c in range(self.ncons):
            seen = set()
            for p in con_prims[c]:
                for v in (a[p], b[p], out[p]):
                    if 0 <= v < n_orig and v not in seen:
                        seen.add(v)
                        var_cons[v].append(c)
        self.pslots = slots
        self.pnslots = nslots
        self.prim_reenqueue = reenq
        self.vp_ptr, self.vp_idx = _csr(var_prims)
        self.vc_ptr, self.vc_idx = _csr(var_cons)
        self.inq_p = bytearray(max(self.nprims, 1))
        self.inq_s = bytearray(max(self.nprims, 1))
        self.inq_c = bytearray(max(self.ncons, 1))
        self.mark = bytearray(max(n_orig, 1))
        self.touched = array("i", [0] * max(n_orig, 1))
        self.ntouched = 0
        self.qp = _Queue(self.nprims)
        self.qs = _Queue(self.nprims)
        self.qc = _Queue(self.ncons)
        self.projections = 0
        self.revise_calls = 0
        self.enqueues = 0

    def reset_counters(self):
        self.projections = 0
        self.revise_calls = 0
        self.enqueues = 0

    def init_fresh(self, double[::1] lo, double[::1] hi):
        cdef int v
        for v in range(self.n_orig, self.nvars):
            lo[v] = self.fresh_lo[v]
            hi[v] = self.fresh_hi[v]

    cdef inline int project(self, double[::1] lo, double[::1] hi, int p, int slot):
        cdef int o = self.out[p]
        cdef int ia = self.a[p]
        cdef int ib = self.b[p]
        cdef double al, ah, bl, bh, l, h
        cdef int t
        if ia >= 0:
            al = lo[ia]; ah = hi[ia]
        else:
            al = self.ca_lo[p]; ah = self.ca_hi[p]
        if ib >= 0:
            bl = lo[ib]; bh = hi[ib]
        else:
            bl = self.cb_lo[p]; bh = self.cb_hi[p]
        c_project(self.op[p], slot, lo[o], hi[o], al, ah, bl, bh, self.expo[p], &l, &h)
        self.projections += 1
        t = o if slot == 0 else (ia if slot == 1 else ib)
        if l > h:
            return -1
        if l != lo[t] or h != hi[t]:
            lo[t] = l
            hi[t] = h
            return t + 1
        return 0

    cdef inline void touch(self, int v):
        if not self.mark[v]:
            self.mark[v] = 1
            self.touched[self.ntouched] = v
            self.ntouched += 1

    cdef inline void untouch_all(self):
        cdef int i
        for i in range(self.ntouched):
            self.mark[self.touched[i]] = 0
        self.ntouched = 0

    cdef int hc4_revise(self, double[::1] lo, double[::1] hi, int c):
        # -1 when empty, else the number of original-variable changes;
        # changed variables are recorded with touch()
        cdef int i, v, code, r
        cdef int nch = 0
        self.revise_calls += 1
        for i in range(self.cf_ptr[c], self.cf_ptr[c + 1]):
            v = self.cf_idx[i]
            lo[v] = self.fresh_lo[v]
            hi[v] = self.fresh_hi[v]
        for i in range(self.cs_ptr[c], self.cs_ptr[c + 1]):
            code = self.cs_idx[i]
            r = self.project(lo, hi, code // 3, code % 3)
            if r < 0:
                return -1
            if 0 < r <= self.n_orig:
                self.touch(r - 1)
                nch += 1
        return nch

    cdef int hc3_loop(self, double[::1] lo, double[::1] hi, _Queue queue, char[::1] inq,
                      int restrict, bint lifo, double deadline):
        cdef int p, q, v, k, j, r, nch
        cdef int changed[3]
        cdef long long count = 0
        while queue.size > 0:
            p = queue.pop(lifo)
            inq[p] = 0
            self.revise_calls += 1
            nch = 0
            for k in range(self.pnslots[p]):
                r = self.project(lo, hi, p, self.pslots[3 * p + k])
                if r < 0:
                    return 0
                if r > 0:
                    changed[nch] = r - 1
                    nch += 1
            for k in range(nch):
                v = changed[k]
                if v < self.n_orig:
                    self.touch(v)
                for j in range(self.vp_ptr[v], self.vp_ptr[v + 1]):
                    q = self.vp_idx[j]
                    if inq[q] or (q == p and not self.prim_reenqueue[p]):
                        continue
                    if restrict >= 0 and self.prim_con[q] != restrict:
                        continue
                    inq[q] = 1
                    queue.push(q)
                    self.enqueues += 1
            count += 1
            if deadline != 0.0 and count % 1024 == 0 and time.monotonic() > deadline:
                return 2
        return 1

    cdef bint sbox_hc3(self, double[::1] lo, double[::1] hi, int c, bint lifo):
        cdef int i, p
        self.revise_calls += 1
        self.qs.clear()
        for i in range(self.cp_ptr[c], self.cp_ptr[c + 1]):
            p = self.cp_idx[i]
            self.qs.push(p)
            self.inq_s[p] = 1
        self.enqueues += self.cp_ptr[c + 1] - self.cp_ptr[c]
        cdef int st = self.hc3_loop(lo, hi, self.qs, self.inq_s, c, lifo, 0.0)
        if st != 1:
            while self.qs.size > 0:
                self.inq_s[self.qs.pop(False)] = 0
        return st == 1

    cdef bint sbox_hc4(self, double[::1] lo, double[::1] hi, int c):
        cdef int r
        self.revise_calls += 1
        while True:
            r = self.hc4_revise(lo, hi, c)
            if r < 0:
                return False
            if r == 0:
                return True

    def propagate(self, double[::1] lo, double[::1] hi, int method, seeds=None,
                  bint lifo=False, double deadline=0.0):
        """Run the worklist for ``method`` to quiescence; returns ST_*."""
        cdef int p, c, d, v, i, j, k, st
        cdef bint ok, selfloop
        cdef long long count = 0
        cdef _Queue queue
        self.untouch_all()
        if method == 0:
            queue = self.qp
            queue.clear()
            for p in range(self.nprims):
                self.inq_p[p] = 0
            if seeds is None:
                for p in range(self.nprims):
                    self.inq_p[p] = 1
            else:
                for v in seeds:
                    for j in range(self.vp_ptr[v], self.vp_ptr[v + 1]):
                        self.inq_p[self.vp_idx[j]] = 1
            for p in range(self.nprims):
                if self.inq_p[p]:
                    queue.push(p)
            self.enqueues += queue.size
            st = self.hc3_loop(lo, hi, queue, self.inq_p, -1, lifo, deadline)
            self.untouch_all()
            return st
        queue = self.qc
        queue.clear()
        for c in range(self.ncons):
            self.inq_c[c] = 0
        if seeds is None:
            for c in range(self.ncons):
                self.inq_c[c] = 1
        else:
            for v in seeds:
                for j in range(self.vc_ptr[v], self.vc_ptr[v + 1]):
                    self.inq_c[self.vc_idx[j]] = 1
        for c in range(self.ncons):
            if self.inq_c[c]:
                queue.push(c)
        self.enqueues += queue.size
        while queue.size > 0:
            c = queue.pop(lifo)
            self.inq_c[c] = 0
            if method == 2:
                ok = self.hc4_revise(lo, hi, c) >= 0
                selfloop = self.con_reenqueue[c]
            elif method == 3:
                ok = self.sbox_hc4(lo, hi, c)
                selfloop = False
            else:
                ok = self.sbox_hc3(lo, hi, c, lifo)
                selfloop = False
            if not ok:
                self.untouch_all()
                return 0
            for k in range(self.ntouched):
                v = self.touched[k]
                for j in range(self.vc_ptr[v], self.vc_ptr[v + 1]):
                    d = self.vc_idx[j]
                    if self.inq_c[d] or (d == c and not selfloop):
                        continue
                    self.inq_c[d] = 1
                    queue.push(d)
                    self.enqueues += 1
            self.untouch_all()
            count += 1
            if deadline != 0.0 and count % 256 == 0 and time.monotonic() > deadline:
                return 2
        return 1
