"""Monodromy weight filtration of a nilpotent endomorphism."""

from dataclasses import dataclass

from . import ratlin
from .errors import NotNilpotentError


@dataclass(frozen=True)
class WeightFiltration:
    """Increasing filtration W_k of Q^dim.

    ``levels`` maps every index from ``low`` to ``high`` to an RREF basis;
    W_k = 0 for k < low and W_k = everything for k >= high.
    """

    dim: int
    center: int
    low: int
    high: int
    levels: tuple

    def __call__(self, k):
        if k < self.low:
            return []
        if k >= self.high:
            return ratlin.eye(self.dim)
        return [list(v) for v in self.levels[k - self.low]]

    def graded_dim(self, k):
        return len(ratlin.span(self(k), self.dim)) - len(ratlin.span(self(k - 1), self.dim))

    def jumps(self):
        """Indices k with gr_k nonzero."""
        return [k for k in range(self.low, self.high + 1) if self.graded_dim(k)]


def nilpotency_order(N):
    """Smallest m with N^(m+1) = 0."""
    n = len(N)
    P = ratlin.qmat(N)
    if ratlin.is_zero(P):
        return 0
    m = 1
    while True:
        if m > n:
            raise NotNilpotentError("operator is not nilpotent")
        nxt = ratlin.matmul(P, N)
        if ratlin.is_zero(nxt):
            return m
        P = nxt
        m += 1


def weight_filtration(N, center=0):
    """W(N) centered at ``center``: N W_k in W_{k-2}, N^k: gr_{c+k} ~ gr_{c-k}.

    Kernel/image recursion: with N^(m+1) = 0, W_{c+m-1} = ker N^m and
    W_{c-m} = im N^m, then recurse on ker N^m / im N^m with m - 1.
    """
    n = len(N)
    N = ratlin.qmat(N)
    m = nilpotency_order(N)
    W = {center + m: ratlin.eye(n), center - m - 1: []}
    K, I = ratlin.eye(n), []
    for mm in range(m, 0, -1):
        Nm = ratlin.matpow(N, mm)
        K, I = (ratlin.intersect(K, ratlin.preimage(Nm, I, n), n),
                ratlin.span_sum(I, ratlin.image(Nm, K, n), n))
        W[center + mm - 1] = K
        W[center - mm] = I
    low, high = center - m - 1, center + m
    levels = tuple(tuple(tuple(v) for v in ratlin.span(W[k], n)) for k in range(low, high))
    return WeightFiltration(n, center, low, high, levels)


def weight_filtration_defects(N, W):
    """List of violated properties (empty when W is the weight filtration of N)."""
    n = len(N)
    N = ratlin.qmat(N)
    problems = []
    for k in range(W.low, W.high + 1):
        if not ratlin.is_subspace(ratlin.image(N, W(k), n), W(k - 2), n):
            problems.append(f"N W_{k} not in W_{k - 2}")
    for k in range(1, W.high - W.center + 1):
        top, bottom = W.center + k, W.center - k
        d = W.graded_dim(top)
        if d != W.graded_dim(bottom):
            problems.append(f"dim gr_{top} != dim gr_{bottom}")
            continue
        reps = _complement_basis(W(top), W(top - 1), n)
        Nk = ratlin.matpow(N, k)
        images = [ratlin.matvec(Nk, v) for v in reps]
        below = ratlin.span(W(bottom - 1), n)
        r = len(ratlin.span(below + images, n)) - len(below)
        if r != d:
            problems.append(f"N^{k}: gr_{top} -> gr_{bottom} has rank {r}, expected {d}")
    return problems


def _complement_basis(big, small, n):
    """Vectors of ``big`` completing a basis of ``small`` to one of ``big``."""
    base = ratlin.span(small, n)
    out = []
    for v in ratlin.span(big, n):
        if not ratlin.contains(base + out, v, n):
            out.append(v)
    return out


def jordan_type(N):
    """Jordan block sizes of a nilpotent N, largest first."""
    n = len(N)
    N = ratlin.qmat(N)
    nilpotency_order(N)
    ranks = [n]
    P = ratlin.eye(n)
    while ranks[-1]:
        P = ratlin.matmul(P, N)
        ranks.append(ratlin.rank(P))
    # number of blocks of size >= s is ranks[s-1] - ranks[s]
    at_least = [ranks[s - 1] - ranks[s] for s in range(1, len(ranks))]
    sizes = []
    for s in range(len(at_least), 0, -1):
        exact = at_least[s - 1] - (at_least[s] if s < len(at_least) else 0)
        sizes.extend([s] * exact)
    return tuple(sizes)
