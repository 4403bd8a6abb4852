"""Majorizing sequences, series identities, and the hybrid bound recurrence.

Replacing the marked-configuration counting inequalities by equalities
defines integer sequences Ghat, Hhat, Khat that dominate the enumerated
counts term by term:

    Khat_n = Ghat_{n-1}
    Hhat_n = sum_{i+j=n-1} Ghat_i Khat_j
    Ghat_n = sum_{i+j=n-1} Ghat_i Hhat_j

with Ghat_0 = Hhat_0 = Khat_0 = 1.  Their generating functions g, h, k
satisfy g = 1 + x g h, h = 1 + x g k, k = 1 + x g, and eliminating h and k
gives z/x = 1 + z + z^2 + z^3 for z = x g.  Every identity is checkable
coefficient by coefficient in exact integers, and this module does so.

Separately, u_sequence evaluates a hybrid upper-bound recurrence: exact
counts up to a cutoff n0, then a weighted composition bound

    U(n) = floor( sum_{k=ceil((n-1)/3)}^{floor((2n+1)/3)}
                  ((k+2)(n-k+2)/4) U(k) U(n-k)
                  + [n even] ((n/2+2)^2/4) U(n/2) )

with the interior arithmetic in exact rationals and one final floor.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction

from .enumeration import CountTable

RATIO_DIGITS = 20


@dataclass(frozen=True)
class BoundSequences:
    """The majorizing sequences, exact, indexed 0..n_max."""

    g_hat: tuple[int, ...]
    h_hat: tuple[int, ...]
    k_hat: tuple[int, ...]

    @property
    def n_max(self) -> int:
        return len(self.g_hat) - 1


@dataclass(frozen=True)
class HybridSequence:
    """u_sequence output; values[0] is an unused placeholder 0."""

    cutoff: int
    values: tuple[int, ...]

    @property
    def n_max(self) -> int:
        return len(self.values) - 1


def hat_sequences(n_max: int) -> BoundSequences:
    """Exact Ghat/Hhat/Khat through index n_max by schoolbook convolution.

    O(n_max^2) integer multiplications; a few seconds at n_max = 2000.
    """
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    g, h, k = [1], [1], [1]
    for n in range(1, n_max + 1):
        k.append(g[n - 1])
        h.append(sum(g[i] * k[n - 1 - i] for i in range(n)))
        g.append(sum(g[i] * h[n - 1 - i] for i in range(n)))
    return BoundSequences(tuple(g), tuple(h), tuple(k))


def _truncated_product(a, b, n_max):
    out = [0] * (n_max + 1)
    for i, ai in enumerate(a):
        if ai == 0 or i > n_max:
            continue
        for j in range(min(n_max - i, len(b) - 1) + 1):
            out[i + j] += ai * b[j]
    return out


def verify_series_identities(seqs: BoundSequences, n_max: int | None = None) -> dict:
    """Coefficient-exact check of the four series identities up to order
    n_max.  Returns {"order", "ok", "failures"}; each failure names the
    identity and the index with both exact coefficients.
    """
    if n_max is None:
        n_max = seqs.n_max
    if n_max > seqs.n_max:
        raise ValueError("n_max=%d beyond computed range %d" % (n_max, seqs.n_max))
    g, h, k = seqs.g_hat, seqs.h_hat, seqs.k_hat
    failures = []

    def check(identity, n, lhs, rhs):
        if lhs != rhs:
            failures.append({"identity": identity, "n": n, "lhs": lhs, "rhs": rhs})

    check("g = 1 + x*g*h", 0, g[0], 1)
    check("h = 1 + x*g*k", 0, h[0], 1)
    check("k = 1 + x*g", 0, k[0], 1)
    for n in range(1, n_max + 1):
        check("g = 1 + x*g*h", n, g[n], sum(g[i] * h[n - 1 - i] for i in range(n)))
        check("h = 1 + x*g*k", n, h[n], sum(g[i] * k[n - 1 - i] for i in range(n)))
        check("k = 1 + x*g", n, k[n], g[n - 1])

    # z = x*g, so z_m = Ghat_{m-1}; the eliminated identity z/x = 1+z+z^2+z^3
    # reads Ghat_n = z_n + [x^n]z^2 + [x^n]z^3 for n >= 1.
    z = [0] + list(g[:n_max])
    z2 = _truncated_product(z, z, n_max)
    z3 = _truncated_product(z2, z, n_max)
    check("z/x = 1 + z + z^2 + z^3", 0, g[0], 1)
    for n in range(1, n_max + 1):
        check("z/x = 1 + z + z^2 + z^3", n, g[n], z[n] + z2[n] + z3[n])

    return {"order": n_max, "ok": not failures, "failures": failures}


def dominance_check(g: CountTable, h: CountTable, k: CountTable,
                    seqs: BoundSequences, n_max: int | None = None) -> list:
    """Element-wise check that enumerated G/H/K never exceed Ghat/Hhat/Khat."""
    top = min(g.n_max, h.n_max, k.n_max, seqs.n_max)
    if n_max is None:
        n_max = top
    if n_max > top:
        raise ValueError("n_max=%d beyond common range %d" % (n_max, top))
    rows = []
    for n in range(n_max + 1):
        rows.append({
            "n": n,
            "g": g[n], "g_hat": seqs.g_hat[n], "g_ok": g[n] <= seqs.g_hat[n],
            "h": h[n], "h_hat": seqs.h_hat[n], "h_ok": h[n] <= seqs.h_hat[n],
            "k": k[n], "k_hat": seqs.k_hat[n], "k_ok": k[n] <= seqs.k_hat[n],
        })
    return rows


def u_sequence(seed: CountTable, n0: int, n_max: int) -> HybridSequence:
    """The hybrid sequence: U(n) = seed(n) for n <= n0, then the weighted
    composition recurrence with exact-rational interior arithmetic and a
    single final floor per term.

    The U(n/2) correction applies to even n only (for odd n the term is
    undefined), and the diagonal k = n/2 also participates in the main sum.
    """
    if n0 < 2:
        raise ValueError("cutoff n0 must be >= 2")
    if n_max < n0:
        raise ValueError("n_max must be >= n0")
    if seed.n_max < n0:
        raise ValueError("seed covers n <= %d, shorter than n0 = %d"
                         % (seed.n_max, n0))
    u: list = [0] * (n_max + 1)
    for i in range(1, n0 + 1):
        u[i] = seed[i]
    for n in range(n0 + 1, n_max + 1):
        total = Fraction(0)
        lo = -((n - 1) // -3)
        hi = (2 * n + 1) // 3
        for kk in range(lo, hi + 1):
            total += Fraction((kk + 2) * (n - kk + 2), 4) * u[kk] * u[n - kk]
        if n % 2 == 0:
            m = n // 2
            total += Fraction((m + 2) ** 2, 4) * u[m]
        u[n] = math.floor(total)
    return HybridSequence(n0, tuple(u))


def hat_rows(seqs: BoundSequences) -> list:
    return [[n, seqs.g_hat[n], seqs.h_hat[n], seqs.k_hat[n]]
            for n in range(seqs.n_max + 1)]


def u_rows(hyb: HybridSequence) -> list:
    """Rows n, U(n), ratio-to-previous with RATIO_DIGITS significant digits
    (exact decimal division of the exact integers; blank ratio at n = 1).
    """
    rows = []
    with localcontext() as ctx:
        ctx.prec = RATIO_DIGITS
        for n in range(1, hyb.n_max + 1):
            if n == 1 or hyb.values[n - 1] == 0:
                ratio = ""
            else:
                ratio = str(Decimal(hyb.values[n]) / Decimal(hyb.values[n - 1]))
            rows.append([n, hyb.values[n], ratio])
    return rows


def write_hat_csv(seqs: BoundSequences, fh) -> None:
    writer = csv.writer(fh)
    writer.writerow(["n", "G_hat", "H_hat", "K_hat"])
    writer.writerows(hat_rows(seqs))


def write_u_csv(hyb: HybridSequence, fh) -> None:
    writer = csv.writer(fh)
    writer.writerow(["n", "U", "ratio"])
    writer.writerows(u_rows(hyb))
