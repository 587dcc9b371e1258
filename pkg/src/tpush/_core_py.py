"""Pure-Python implementations of the hot kernels.

These mirror ``tpush._core`` exactly (same signatures, same results, same
random-stream consumption) and are used whenever the compiled extension is
unavailable or ``TPUSH_PURE=1`` is set.
"""

from fractions import Fraction
from heapq import heapify, heappop, heappush

__all__ = ["mul", "divexact", "run_chain", "BACKEND"]

BACKEND = "python"


def mul(a, b, base, fits64=False):
    """Product of two packed-key term dicts.

    Keys are packed exponent vectors whose fields carry a fixed offset, so the
    key of a product monomial is ``k1 + k2 - base``.
    """
    if len(a) < len(b):
        a, b = b, a
    out = {}
    get = out.get
    bl = list(b.items())
    for k1, c1 in a.items():
        k1 -= base
        for k2, c2 in bl:
            k = k1 + k2
            out[k] = get(k, 0) + c1 * c2
    return {k: v for k, v in out.items() if v}


def _in_box(key, fields):
    for shift, mask, lo, hi in fields:
        f = (key >> shift) & mask
        if f < lo or f > hi:
            return False
    return True


def divexact(a, b, base, fields, fits64=False):
    """Exact quotient ``a / b`` or ``None`` when ``b`` does not divide ``a``.

    Division runs on the packed-key (lexicographic) order. ``fields`` lists
    ``(shift, mask, lo, hi)`` bounds every quotient key must respect; leaving
    the box proves non-exactness, which also guarantees termination for
    Laurent inputs.
    """
    if not a:
        return {}
    rem = dict(a)
    lead = max(b)
    lc = b[lead]
    bl = [(k - base, v) for k, v in b.items()]
    heap = [-k for k in rem]
    heapify(heap)
    quo = {}
    while heap:
        k = -heappop(heap)
        c = rem.get(k, 0)
        if not c:
            continue
        qk = k - lead + base
        if not _in_box(qk, fields):
            return None
        if isinstance(c, int) and isinstance(lc, int):
            qc = c // lc if c % lc == 0 else Fraction(c, lc)
        else:
            qc = Fraction(c) / lc
            if qc.denominator == 1:
                qc = qc.numerator
        quo[qk] = qc
        get = rem.get
        for kb, cb in bl:
            kk = kb + qk
            old = get(kk)
            if old is None:
                rem[kk] = -qc * cb
                heappush(heap, -kk)
            else:
                rem[kk] = old - qc * cb
    if any(rem.values()):
        return None
    return quo


# ---- chain stepping ---------------------------------------------------------
#
# A decision compares one 64-bit word w with a threshold C given as
# lo = floor(C * 2^64) and an exactness flag: w < lo means U < C, w > lo (or
# w == lo with C * 2^64 an integer) means U >= C, and w == lo otherwise is
# ambiguous and left to the exact refinement in Python.

DONE, NEED_WORDS, AMBIGUOUS = 0, 1, 2


def _cmp(w, lo, ex):
    if w < lo:
        return 0
    if w > lo or ex:
        return 1
    return 2


def _categorical(w, lo, ex, m):
    for k in range(m - 1):
        r = _cmp(w, lo[k], ex[k])
        if r == 0:
            return k
        if r == 2:
            return -1
    return m - 1


def run_chain(state, steps, words, wpos, bell_lo, bell_ex, s1_lo, s1_ex,
              p_lo, p_ex, q_lo, q_ex, counts, codes, radix, record):
    """Advance ``state`` (int64 array, updated in place) by up to ``steps`` steps.

    Returns (status, steps_done, wpos).  A step that runs out of words or
    meets an ambiguous draw is rolled back, so ``state`` and ``wpos`` always
    sit at a step boundary.
    """
    n = len(state)
    nw = len(words)
    cfg = [int(v) for v in state]
    done = 0
    while done < steps:
        pos0 = wpos
        cur = list(cfg)
        status = DONE
        # Step 0
        if wpos >= nw:
            status = NEED_WORDS
        else:
            j = _categorical(int(words[wpos]), bell_lo, bell_ex, n)
            wpos += 1
            if j < 0:
                status = AMBIGUOUS
        # Step 1
        if status == DONE and cur[j] != 0:
            pos = j
            lab = cur[j]
            while True:
                weaker = []
                for s in range(1, n):
                    p = (pos + s) % n
                    if p != j and cur[p] < lab:
                        weaker.append(p)
                m = len(weaker)
                k = 0
                if m > 1:
                    if wpos >= nw:
                        status = NEED_WORDS
                        break
                    k = _categorical(int(words[wpos]), s1_lo[m], s1_ex[m], m)
                    wpos += 1
                    if k < 0:
                        status = AMBIGUOUS
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
        if status == DONE:
            a = 0
            for k in range(j):
                if wpos >= nw:
                    status = NEED_WORDS
                    break
                b = cur[k]
                if b >= a:
                    r = _cmp(int(words[wpos]), p_lo[k], p_ex[k])
                else:
                    r = _cmp(int(words[wpos]), q_lo[k], q_ex[k])
                wpos += 1
                if r == 2:
                    status = AMBIGUOUS
                    break
                if r == 0:
                    cur[k] = a
                    a = b
            cur[j] = a
        if status != DONE:
            wpos = pos0
            break
        cfg = cur
        done += 1
        if record:
            code = 0
            for i in range(n - 1, -1, -1):
                code = code * radix + cfg[i]
            counts[codes[code]] += 1
    for i in range(n):
        state[i] = cfg[i]
    return status, done, wpos
