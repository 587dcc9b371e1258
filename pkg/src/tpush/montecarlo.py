"""Simulation of the interpolation t-Push TASEP at rational parameters.

Every probability is an exact rational.  A decision draws one 64-bit word from
a Philox stream and compares it with floor(C * 2^64); a word that lands on a
non-integral threshold is resolved exactly by reading further words as the
next binary digits of the same uniform.  The compiled and the pure-Python
stepping kernels consume words identically, so runs are bit-identical across
backends for a given seed.
"""

import os
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import numpy as np

from ._backend import core
from .chain import ChainSpec, kernel_at
from .polynomials import f_star_at, p_star

__all__ = [
    "NumericParams",
    "EmpiricalDistribution",
    "WordStream",
    "Thresholds",
    "sample_transition",
    "run_steps",
    "estimate_stationary",
    "single_step_counts",
    "exact_stationary",
    "exact_kernel_row",
    "tv_distance",
]

_TWO64 = 1 << 64
_CHUNK = 1 << 15


class NumericParams:
    """Rational t in (0, 1), rational x_i > t^-(n-1), and a 64-bit seed."""

    __slots__ = ("t", "xs", "seed")

    def __init__(self, t, xs, seed=0):
        t = Fraction(t)
        xs = tuple(Fraction(v) for v in xs)
        if not 0 < t < 1:
            raise ValueError(f"t must lie in (0, 1), got {t}")
        n = len(xs)
        if n < 2:
            raise ValueError("at least two sites are required")
        bound = t ** (1 - n)
        for i, x in enumerate(xs, start=1):
            if not x > bound:
                raise ValueError(f"x_{i} = {x} must exceed t^-(n-1) = {bound}")
        seed = int(seed)
        if not 0 <= seed < _TWO64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        self.t = t
        self.xs = xs
        self.seed = seed

    @property
    def n(self):
        return len(self.xs)

    def __repr__(self):
        return f"NumericParams(t={self.t}, xs={[str(v) for v in self.xs]}, seed={self.seed})"


class EmpiricalDistribution:
    """Visit counts per state; total equals the sum of counts."""

    __slots__ = ("counts", "total")

    def __init__(self, counts):
        self.counts = {tuple(k): int(v) for k, v in counts.items() if v}
        self.total = sum(self.counts.values())

    def frequency(self, mu):
        return Fraction(self.counts.get(tuple(mu), 0), self.total)

    def merge(self, other):
        out = dict(self.counts)
        for k, v in other.counts.items():
            out[k] = out.get(k, 0) + v
        return EmpiricalDistribution(out)

    def __eq__(self, other):
        return isinstance(other, EmpiricalDistribution) and self.counts == other.counts

    def to_json(self):
        return {
            "total": self.total,
            "counts": [{"state": list(k), "count": v} for k, v in sorted(self.counts.items(), reverse=True)],
        }


class WordStream:
    """Buffered 64-bit words from a Philox generator keyed by a SeedSequence."""

    __slots__ = ("_bitgen", "buf", "pos")

    def __init__(self, seed):
        ss = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(int(seed))
        self._bitgen = np.random.Philox(ss)
        self.buf = np.empty(0, dtype=np.uint64)
        self.pos = 0

    @classmethod
    def spawn(cls, seed, k):
        """k independent child streams of one seed."""
        return [cls(child) for child in np.random.SeedSequence(int(seed)).spawn(k)]

    def refill(self, chunk=_CHUNK):
        fresh = self._bitgen.random_raw(chunk).astype(np.uint64, copy=False)
        self.buf = np.concatenate([self.buf[self.pos:], fresh])
        self.pos = 0

    def next_word(self):
        if self.pos >= len(self.buf):
            self.refill()
        w = int(self.buf[self.pos])
        self.pos += 1
        return w


class _LazyUniform:
    """A uniform on [0, 1) whose base-2^64 digits are read on demand."""

    __slots__ = ("stream", "digits")

    def __init__(self, stream, first):
        self.stream = stream
        self.digits = [first]

    def less(self, c):
        r = Fraction(c)
        i = 0
        while True:
            if i == len(self.digits):
                self.digits.append(self.stream.next_word())
            r = r * _TWO64 - self.digits[i]
            if r <= 0:
                return False
            if r >= 1:
                return True
            i += 1

    def categorical(self, cum):
        for k, c in enumerate(cum):
            if self.less(c):
                return k
        return len(cum)


def _threshold(c):
    scaled = c * _TWO64
    lo = scaled.numerator // scaled.denominator
    return lo, int(scaled.denominator == 1)


class Thresholds:
    """Exact decision probabilities at fixed parameters and their word thresholds."""

    def __init__(self, params):
        n = params.n
        t = params.t
        xs = params.xs
        a = t ** (2 - n)
        b = t ** (1 - n)
        D = []
        for j in range(n):
            p = Fraction(1)
            for k in range(n):
                if k < j:
                    p *= xs[k] - a
                elif k > j:
                    p *= xs[k] - b
            D.append(p)
        E = sum(D)
        self.n = n
        self.bell = [d / E for d in D]
        self.bell_cum = _cumulative(self.bell)
        self.step1_cum = {}
        for m in range(2, n + 1):
            tint = sum(t ** i for i in range(m))
            self.step1_cum[m] = _cumulative([t ** i / tint for i in range(m)])
        self.pfrak = [b * (1 - t) / (x - a) for x in xs]
        self.qfrak = [(1 - t) * x / (x - a) for x in xs]
        self.bell_lo, self.bell_ex = _arrays(self.bell_cum)
        self.s1_lo = np.zeros((n + 1, n), dtype=np.uint64)
        self.s1_ex = np.zeros((n + 1, n), dtype=np.uint8)
        for m, cum in self.step1_cum.items():
            lo, ex = _arrays(cum)
            self.s1_lo[m, : len(lo)] = lo
            self.s1_ex[m, : len(ex)] = ex
        self.p_lo, self.p_ex = _arrays(self.pfrak)
        self.q_lo, self.q_ex = _arrays(self.qfrak)


def _cumulative(probs):
    """Cumulative sums except the last (which is 1)."""
    out = []
    acc = Fraction(0)
    for p in probs[:-1]:
        acc += p
        out.append(acc)
    return out


def _arrays(values):
    los = []
    exs = []
    for c in values:
        if not 0 <= c < 1:
            raise ValueError(f"decision probability {c} outside [0, 1)")
        lo, ex = _threshold(c)
        los.append(lo)
        exs.append(ex)
    return np.array(los, dtype=np.uint64), np.array(exs, dtype=np.uint8)


def _exact_step(state, thr, stream):
    """One transition, resolving every decision exactly (reference semantics)."""
    n = len(state)
    cur = list(state)
    j = _LazyUniform(stream, stream.next_word()).categorical(thr.bell_cum)
    if cur[j] != 0:
        pos = j
        lab = cur[j]
        while True:
            weaker = [p for p in ((pos + s) % n for s in range(1, n)) if p != j and cur[p] < lab]
            m = len(weaker)
            k = 0
            if m > 1:
                k = _LazyUniform(stream, stream.next_word()).categorical(thr.step1_cum[m])
            p = weaker[k]
            disp = cur[p]
            cur[p] = lab
            if disp == 0:
                break
            pos = p
            lab = disp
        cur[j] = 0
    a = 0
    for k in range(j):
        b = cur[k]
        c = thr.pfrak[k] if b >= a else thr.qfrak[k]
        if _LazyUniform(stream, stream.next_word()).less(c):
            cur[k] = a
            a = b
    cur[j] = a
    return tuple(cur)


def sample_transition(state, params, rng):
    """One exact-probability transition from ``state``; ``rng`` is a WordStream or a seed."""
    thr = params if isinstance(params, Thresholds) else Thresholds(params)
    if len(state) != thr.n:
        raise ValueError("state length does not match the parameters")
    stream = rng if isinstance(rng, WordStream) else WordStream(rng)
    return _exact_step(tuple(int(v) for v in state), thr, stream)


class _Encoder:
    def __init__(self, spec):
        self.states = spec.states
        self.radix = max(spec.lam) + 1
        size = self.radix ** spec.n
        self.codes = np.full(size, -1, dtype=np.int64)
        for idx, mu in enumerate(self.states):
            self.codes[self.encode(mu)] = idx

    def encode(self, mu):
        code = 0
        for v in reversed(mu):
            code = code * self.radix + v
        return code


def run_steps(state, thr, stream, steps, enc=None, counts=None):
    """Advance a state in place (int64 array) by ``steps`` transitions.

    With an encoder and a counts array, the state after every step is tallied.
    """
    record = counts is not None
    if not record:
        counts = np.zeros(1, dtype=np.int64)
        codes = np.zeros(1, dtype=np.int64)
        radix = 1
    else:
        codes = enc.codes
        radix = enc.radix
    remaining = int(steps)
    while remaining > 0:
        if stream.pos >= len(stream.buf):
            stream.refill()
        status, done, wpos = core.run_chain(
            state, remaining, stream.buf, stream.pos,
            thr.bell_lo, thr.bell_ex, thr.s1_lo, thr.s1_ex,
            thr.p_lo, thr.p_ex, thr.q_lo, thr.q_ex,
            counts, codes, radix, record,
        )
        stream.pos = wpos
        remaining -= done
        if status == 1:
            stream.refill()
        elif status == 2:
            new = _exact_step(tuple(int(v) for v in state), thr, stream)
            state[:] = new
            remaining -= 1
            if record:
                counts[codes[enc.encode(new)]] += 1
    return state


def _threads():
    v = os.environ.get("TPUSH_THREADS")
    return max(1, int(v)) if v else 1


def estimate_stationary(spec, params, burnin=1000, samples=10**6, trajectories=1, start=None):
    """Empirical state frequencies after ``burnin`` discarded steps.

    ``samples`` recorded steps are split evenly over ``trajectories``
    independent chains, each with its own child stream of ``params.seed``.
    Counts are summed, so the result does not depend on the thread count
    (TPUSH_THREADS).
    """
    if not isinstance(spec, ChainSpec):
        spec = ChainSpec(spec)
    if burnin < 1 or samples < 1:
        raise ValueError("burnin and samples must be at least 1")
    if spec.n != params.n:
        raise ValueError("parameter length does not match the content")
    thr = Thresholds(params)
    enc = _Encoder(spec)
    streams = WordStream.spawn(params.seed, trajectories)
    shares = [samples // trajectories + (1 if i < samples % trajectories else 0) for i in range(trajectories)]
    init = tuple(start) if start is not None else spec.states[0]

    def run(i):
        state = np.array(init, dtype=np.int64)
        counts = np.zeros(len(spec.states), dtype=np.int64)
        run_steps(state, thr, streams[i], burnin)
        run_steps(state, thr, streams[i], shares[i], enc, counts)
        return counts

    workers = min(_threads(), trajectories)
    if workers > 1:
        with ThreadPoolExecutor(workers) as ex:
            parts = list(ex.map(run, range(trajectories)))
    else:
        parts = [run(i) for i in range(trajectories)]
    total = np.sum(parts, axis=0)
    return EmpiricalDistribution({mu: int(c) for mu, c in zip(spec.states, total)})


def single_step_counts(state, params, samples, seed=None):
    """Counts of the successor of ``state`` over independent single steps."""
    thr = Thresholds(params)
    stream = WordStream(params.seed if seed is None else seed)
    spec = ChainSpec(sorted(state, reverse=True))
    enc = _Encoder(spec)
    counts = np.zeros(len(spec.states), dtype=np.int64)
    init = np.array(state, dtype=np.int64)
    for _ in range(samples):
        s = init.copy()
        run_steps(s, thr, stream, 1, enc, counts)
    return EmpiricalDistribution({mu: int(c) for mu, c in zip(spec.states, counts)})


def exact_kernel_row(state, params):
    """Exact transition probabilities from ``state`` at the parameters."""
    spec = ChainSpec(sorted(state, reverse=True))
    row = kernel_at(spec, params.t, params.xs)[spec.index(tuple(state))]
    return {mu: p for mu, p in zip(spec.states, row) if p}


def exact_stationary(spec, params):
    """pi(mu) = F*_mu / P*_lam evaluated exactly at the parameters."""
    if not isinstance(spec, ChainSpec):
        spec = ChainSpec(spec)
    pt = [(params.t, list(params.xs))]
    Z = p_star(spec.lam).evaluate(t=params.t, x=params.xs)
    return {mu: f_star_at(mu, pt)[0] / Z for mu in spec.states}


def tv_distance(emp, exact):
    """Total variation distance between empirical frequencies and exact masses."""
    keys = set(exact) | set(emp.counts)
    return sum(abs(emp.frequency(k) - exact.get(k, Fraction(0))) for k in keys) / 2
