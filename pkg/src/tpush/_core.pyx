# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: sparse polynomial product, exact division, chain stepping.

Polynomial kernels take the packed-key term dicts used by ``MPoly``.  When the
keys fit in 64 bits and every coefficient fits in int64 they run on machine
words with 128-bit accumulators and overflow checks; otherwise (or on any
overflow) they defer to the pure-Python implementation, so results never
depend on which path ran.
"""

from libc.stdlib cimport malloc, calloc, realloc, free
from libc.stdint cimport uint64_t, int64_t

from . import _core_py as _py

cdef extern from *:
    """
    typedef __int128 i128;
    static inline int tp_add_ovf(i128 a, i128 b, i128 *r) { return __builtin_add_overflow(a, b, r); }
    static inline int tp_sub_ovf(i128 a, i128 b, i128 *r) { return __builtin_sub_overflow(a, b, r); }
    static inline int tp_mul_ovf(i128 a, i128 b, i128 *r) { return __builtin_mul_overflow(a, b, r); }
    static inline i128 tp_mul64(int64_t a, int64_t b) { return (i128)a * (i128)b; }
    static inline int64_t tp_hi(i128 v) { return (int64_t)(v >> 64); }
    static inline uint64_t tp_lo(i128 v) { return (uint64_t)v; }
    static inline int tp_fits64(i128 v) { return v >= (i128)INT64_MIN && v <= (i128)INT64_MAX; }
    """
    ctypedef long long i128
    int tp_add_ovf(i128 a, i128 b, i128 *r) nogil
    int tp_sub_ovf(i128 a, i128 b, i128 *r) nogil
    int tp_mul_ovf(i128 a, i128 b, i128 *r) nogil
    i128 tp_mul64(int64_t a, int64_t b) nogil
    int64_t tp_hi(i128 v) nogil
    uint64_t tp_lo(i128 v) nogil
    int tp_fits64(i128 v) nogil

BACKEND = "cython"

cdef object _TWO64 = 1 << 64


cdef inline uint64_t _mix(uint64_t z) nogil:
    z ^= z >> 33
    z *= <uint64_t>0xff51afd7ed558ccd
    z ^= z >> 33
    z *= <uint64_t>0xc4ceb9fe1a85ec53
    z ^= z >> 33
    return z


cdef struct Table:
    uint64_t *keys
    i128 *vals
    size_t cap
    size_t count


cdef int _table_init(Table *tb, size_t want) nogil:
    cdef size_t cap = 16
    while cap < 2 * want:
        cap <<= 1
    tb.keys = <uint64_t *> calloc(cap, sizeof(uint64_t))
    tb.vals = <i128 *> calloc(cap, sizeof(i128))
    tb.cap = cap
    tb.count = 0
    if tb.keys == NULL or tb.vals == NULL:
        return -1
    return 0


cdef void _table_free(Table *tb) nogil:
    free(tb.keys)
    free(tb.vals)
    tb.keys = NULL
    tb.vals = NULL


cdef int _table_grow(Table *tb) nogil:
    cdef size_t oldcap = tb.cap
    cdef uint64_t *ok = tb.keys
    cdef i128 *ov = tb.vals
    cdef size_t i, h, mask
    cdef size_t cap = oldcap * 2
    tb.keys = <uint64_t *> calloc(cap, sizeof(uint64_t))
    tb.vals = <i128 *> calloc(cap, sizeof(i128))
    if tb.keys == NULL or tb.vals == NULL:
        return -1
    tb.cap = cap
    mask = cap - 1
    for i in range(oldcap):
        if ok[i] != 0:
            h = _mix(ok[i]) & mask
            while tb.keys[h] != 0:
                h = (h + 1) & mask
            tb.keys[h] = ok[i]
            tb.vals[h] = ov[i]
    free(ok)
    free(ov)
    return 0


cdef inline ssize_t _table_slot(Table *tb, uint64_t key, bint *fresh) nogil:
    """Slot for key, inserting with value 0 if absent (key 0 is reserved)."""
    cdef size_t mask, h
    if (tb.count + 1) * 2 > tb.cap:
        if _table_grow(tb) != 0:
            return -1
    mask = tb.cap - 1
    h = _mix(key) & mask
    while True:
        if tb.keys[h] == key:
            fresh[0] = False
            return h
        if tb.keys[h] == 0:
            tb.keys[h] = key
            tb.vals[h] = 0
            tb.count += 1
            fresh[0] = True
            return h
        h = (h + 1) & mask


cdef object _to_py(i128 v):
    if tp_fits64(v):
        return <int64_t> v
    return (<object> tp_hi(v)) * _TWO64 + (<object> tp_lo(v))


cdef int _load(dict d, uint64_t *ks, int64_t *cs) except -2:
    """Copy a term dict into arrays; returns 1 if some coefficient does not fit."""
    cdef Py_ssize_t i = 0
    for k, c in d.items():
        if type(c) is not int:
            return 1
        if c.bit_length() > 62:
            return 1
        ks[i] = <uint64_t> k
        cs[i] = <int64_t> c
        i += 1
    return 0


def mul(dict a, dict b, base, bint fits64=False):
    """Product of packed-key term dicts (see ``_core_py.mul``)."""
    cdef Py_ssize_t la = len(a), lb = len(b)
    if not fits64 or la == 0 or lb == 0:
        return _py.mul(a, b, base)
    cdef uint64_t *ka = <uint64_t *> malloc(la * sizeof(uint64_t))
    cdef uint64_t *kb = <uint64_t *> malloc(lb * sizeof(uint64_t))
    cdef int64_t *ca = <int64_t *> malloc(la * sizeof(int64_t))
    cdef int64_t *cb = <int64_t *> malloc(lb * sizeof(int64_t))
    cdef Table tb
    cdef Py_ssize_t i, j
    cdef uint64_t kbase = <uint64_t> base
    cdef uint64_t ki
    cdef int64_t ci
    cdef ssize_t slot
    cdef bint fresh
    cdef bint bad = False
    cdef dict out
    tb.keys = NULL
    tb.vals = NULL
    try:
        if ka == NULL or kb == NULL or ca == NULL or cb == NULL:
            raise MemoryError()
        if _load(a, ka, ca) or _load(b, kb, cb):
            return _py.mul(a, b, base)
        if _table_init(&tb, la + lb) != 0:
            raise MemoryError()
        with nogil:
            for i in range(la):
                ki = ka[i] - kbase
                ci = ca[i]
                for j in range(lb):
                    slot = _table_slot(&tb, ki + kb[j], &fresh)
                    if slot < 0:
                        bad = True
                        break
                    if tp_add_ovf(tb.vals[slot], tp_mul64(ci, cb[j]), &tb.vals[slot]):
                        bad = True
                        break
                if bad:
                    break
        if bad:
            return _py.mul(a, b, base)
        out = {}
        for i in range(<Py_ssize_t> tb.cap):
            if tb.keys[i] != 0 and tb.vals[i] != 0:
                out[tb.keys[i]] = _to_py(tb.vals[i])
        return out
    finally:
        free(ka)
        free(kb)
        free(ca)
        free(cb)
        _table_free(&tb)


cdef struct Heap:
    uint64_t *data
    size_t size
    size_t cap


cdef int _heap_push(Heap *hp, uint64_t v) nogil:
    cdef size_t i, parent
    cdef uint64_t *nd
    if hp.size == hp.cap:
        nd = <uint64_t *> realloc(hp.data, 2 * hp.cap * sizeof(uint64_t))
        if nd == NULL:
            return -1
        hp.data = nd
        hp.cap *= 2
    i = hp.size
    hp.size += 1
    while i > 0:
        parent = (i - 1) >> 1
        if hp.data[parent] >= v:
            break
        hp.data[i] = hp.data[parent]
        i = parent
    hp.data[i] = v
    return 0


cdef uint64_t _heap_pop(Heap *hp) nogil:
    cdef uint64_t top = hp.data[0]
    cdef uint64_t last
    cdef size_t i = 0, child
    hp.size -= 1
    if hp.size == 0:
        return top
    last = hp.data[hp.size]
    while True:
        child = 2 * i + 1
        if child >= hp.size:
            break
        if child + 1 < hp.size and hp.data[child + 1] > hp.data[child]:
            child += 1
        if hp.data[child] <= last:
            break
        hp.data[i] = hp.data[child]
        i = child
    hp.data[i] = last
    return top


def divexact(dict a, dict b, base, tuple fields, bint fits64=False):
    """Exact quotient of packed-key term dicts or None (see ``_core_py.divexact``)."""
    cdef Py_ssize_t la = len(a), lb = len(b)
    if not fits64 or la == 0 or lb == 0 or len(fields) > 8:
        return _py.divexact(a, b, base, fields)
    cdef uint64_t *ka = <uint64_t *> malloc(la * sizeof(uint64_t))
    cdef uint64_t *kb = <uint64_t *> malloc(lb * sizeof(uint64_t))
    cdef int64_t *ca = <int64_t *> malloc(la * sizeof(int64_t))
    cdef int64_t *cb = <int64_t *> malloc(lb * sizeof(int64_t))
    cdef uint64_t fshift[8]
    cdef uint64_t fmask[8]
    cdef uint64_t flo[8]
    cdef uint64_t fhi[8]
    cdef int nf = len(fields)
    cdef int f
    cdef Table tb
    cdef Heap hp
    cdef Py_ssize_t i, j, lead_idx = 0
    cdef uint64_t kbase = <uint64_t> base
    cdef uint64_t k, qk, kk, fv, lead = 0
    cdef i128 c, qc, prod, lc
    cdef ssize_t slot
    cdef bint fresh
    cdef int status = 0   # 0 ok, 1 fallback, 2 not exact
    cdef uint64_t *qkeys = NULL
    cdef i128 *qvals = NULL
    cdef size_t nq = 0, qcap = 0
    cdef void *tmp
    tb.keys = NULL
    tb.vals = NULL
    hp.data = NULL
    try:
        if ka == NULL or kb == NULL or ca == NULL or cb == NULL:
            raise MemoryError()
        if _load(a, ka, ca) or _load(b, kb, cb):
            return _py.divexact(a, b, base, fields)
        for f in range(nf):
            spec = fields[f]
            fshift[f] = spec[0]
            fmask[f] = spec[1]
            flo[f] = spec[2]
            fhi[f] = spec[3]
        for j in range(lb):
            if kb[j] > lead:
                lead = kb[j]
                lead_idx = j
        lc = cb[lead_idx]
        if _table_init(&tb, 2 * la + lb) != 0:
            raise MemoryError()
        hp.cap = la + 16
        hp.size = 0
        hp.data = <uint64_t *> malloc(hp.cap * sizeof(uint64_t))
        qcap = 64
        qkeys = <uint64_t *> malloc(qcap * sizeof(uint64_t))
        qvals = <i128 *> malloc(qcap * sizeof(i128))
        if hp.data == NULL or qkeys == NULL or qvals == NULL:
            raise MemoryError()
        with nogil:
            for i in range(la):
                slot = _table_slot(&tb, ka[i], &fresh)
                if slot < 0:
                    status = 1
                    break
                tb.vals[slot] = ca[i]
                if _heap_push(&hp, ka[i]) != 0:
                    status = 1
                    break
            while status == 0 and hp.size > 0:
                k = _heap_pop(&hp)
                slot = _table_slot(&tb, k, &fresh)
                if slot < 0:
                    status = 1
                    break
                c = tb.vals[slot]
                if c == 0:
                    continue
                qk = k - lead + kbase
                for f in range(nf):
                    fv = (qk >> fshift[f]) & fmask[f]
                    if fv < flo[f] or fv > fhi[f]:
                        status = 2
                        break
                if status != 0:
                    break
                if c % lc != 0:
                    status = 1
                    break
                qc = c / lc
                if nq == qcap:
                    qcap *= 2
                    tmp = realloc(qkeys, qcap * sizeof(uint64_t))
                    if tmp == NULL:
                        status = 1
                        break
                    qkeys = <uint64_t *> tmp
                    tmp = realloc(qvals, qcap * sizeof(i128))
                    if tmp == NULL:
                        status = 1
                        break
                    qvals = <i128 *> tmp
                qkeys[nq] = qk
                qvals[nq] = qc
                nq += 1
                for j in range(lb):
                    kk = kb[j] - kbase + qk
                    if tp_mul_ovf(qc, <i128> cb[j], &prod):
                        status = 1
                        break
                    slot = _table_slot(&tb, kk, &fresh)
                    if slot < 0:
                        status = 1
                        break
                    if tp_sub_ovf(tb.vals[slot], prod, &tb.vals[slot]):
                        status = 1
                        break
                    if fresh:
                        if _heap_push(&hp, kk) != 0:
                            status = 1
                            break
            if status == 0:
                for i in range(<Py_ssize_t> tb.cap):
                    if tb.keys[i] != 0 and tb.vals[i] != 0:
                        status = 2
                        break
        if status == 1:
            return _py.divexact(a, b, base, fields)
        if status == 2:
            return None
        out = {}
        for i in range(<Py_ssize_t> nq):
            out[qkeys[i]] = _to_py(qvals[i])
        return out
    finally:
        free(ka)
        free(kb)
        free(ca)
        free(cb)
        free(qkeys)
        free(qvals)
        free(hp.data)
        _table_free(&tb)


# ---- chain stepping (mirrors _core_py.run_chain) -------------------------------
cdef inline int _cmp(uint64_t w, uint64_t lo, unsigned char ex) nogil:
    if w < lo:
        return 0
    if w > lo or ex:
        return 1
    return 2


cdef inline int _categorical(uint64_t w, const uint64_t *lo, const unsigned char *ex, int m) nogil:
    cdef int k, r
    for k in range(m - 1):
        r = _cmp(w, lo[k], ex[k])
        if r == 0:
            return k
        if r == 2:
            return -1
    return m - 1


def run_chain(int64_t[::1] state, long long steps, const uint64_t[::1] words, Py_ssize_t wpos,
              const uint64_t[::1] bell_lo, const unsigned char[::1] bell_ex,
              const uint64_t[:, ::1] s1_lo, const unsigned char[:, ::1] s1_ex,
              const uint64_t[::1] p_lo, const unsigned char[::1] p_ex,
              const uint64_t[::1] q_lo, const unsigned char[::1] q_ex,
              int64_t[::1] counts, const int64_t[::1] codes, long long radix, bint record):
    """Advance ``state`` by up to ``steps`` steps (see ``_core_py.run_chain``)."""
    cdef int n = state.shape[0]
    cdef Py_ssize_t nw = words.shape[0]
    cdef int64_t *cfg = <int64_t *> malloc(n * sizeof(int64_t))
    cdef int64_t *cur = <int64_t *> malloc(n * sizeof(int64_t))
    cdef int *weaker = <int *> malloc(n * sizeof(int))
    cdef int64_t code, lab, disp, a, b
    cdef long long done = 0
    cdef Py_ssize_t pos0
    cdef int status = 0, i, j = 0, s, p, m, k, pos, r
    if cfg == NULL or cur == NULL or weaker == NULL:
        free(cfg)
        free(cur)
        free(weaker)
        raise MemoryError()
    for i in range(n):
        cfg[i] = state[i]
    with nogil:
        while done < steps:
            pos0 = wpos
            for i in range(n):
                cur[i] = cfg[i]
            status = 0
            # Step 0
            if wpos >= nw:
                status = 1
            else:
                j = _categorical(words[wpos], &bell_lo[0], &bell_ex[0], n)
                wpos += 1
                if j < 0:
                    status = 2
            # Step 1
            if status == 0 and cur[j] != 0:
                pos = j
                lab = cur[j]
                while True:
                    m = 0
                    for s in range(1, n):
                        p = (pos + s) % n
                        if p != j and cur[p] < lab:
                            weaker[m] = p
                            m += 1
                    k = 0
                    if m > 1:
                        if wpos >= nw:
                            status = 1
                            break
                        k = _categorical(words[wpos], &s1_lo[m, 0], &s1_ex[m, 0], m)
                        wpos += 1
                        if k < 0:
                            status = 2
                            break
                    p = weaker[k]
                    disp = cur[p]
                    cur[p] = lab
                    if disp == 0:
                        break
                    pos = p
                    lab = disp
                cur[j] = 0
            # Step 2
            if status == 0:
                a = 0
                for k in range(j):
                    if wpos >= nw:
                        status = 1
                        break
                    b = cur[k]
                    if b >= a:
                        r = _cmp(words[wpos], p_lo[k], p_ex[k])
                    else:
                        r = _cmp(words[wpos], q_lo[k], q_ex[k])
                    wpos += 1
                    if r == 2:
                        status = 2
                        break
                    if r == 0:
                        cur[k] = a
                        a = b
                cur[j] = a
            if status != 0:
                wpos = pos0
                break
            for i in range(n):
                cfg[i] = cur[i]
            done += 1
            if record:
                code = 0
                for i in range(n - 1, -1, -1):
                    code = code * radix + cfg[i]
                counts[codes[code]] += 1
    for i in range(n):
        state[i] = cfg[i]
    free(cfg)
    free(cur)
    free(weaker)
    return status, done, wpos
