"""Independent reference computations used only by the tests."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd


def leftmost_reduce(letters):
    """Cancel the leftmost adjacent inverse pair, restart, until none is left."""
    out = list(letters)
    while True:
        for i in range(len(out) - 1):
            a, b = out[i], out[i + 1]
            if a[0] == b[0] and a[1] == -b[1]:
                del out[i : i + 2]
                break
        else:
            return out


def _det(m):
    n = len(m)
    if n == 0:
        return 1
    m = [[Fraction(x) for x in row] for row in m]
    d = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c]), None)
        if p is None:
            return 0
        if p != c:
            m[c], m[p] = m[p], m[c]
            d = -d
        d *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            for j in range(c, n):
                m[r][j] -= f * m[c][j]
    return int(d)


def determinantal_invariants(a, cols):
    """Invariant factors d_k = D_k / D_{k-1}, with D_k the gcd of the k x k minors."""
    rows = len(a)
    out, prev = [], 1
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for rs in combinations(range(rows), k):
            for cs in combinations(range(cols), k):
                g = gcd(g, _det([[a[r][c] for c in cs] for r in rs]))
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return out  # nonzero diagonal, in order


def mixed_action_relator_count(k, n, g):
    """Family-by-family count of the action relators of the mixed presentation."""
    sig = k - 1
    acting = (n - 1) + 2 * g
    c1 = acting * sig
    c2 = (n - 1) * 2 * g
    c3 = (n - 1) * n + 2 * g * n
    c4 = 2 * g * g
    c5 = 2 * g * g
    return c1 + c2 + c3 + c4 + c5


def system_relator_count(k, g, n):
    """Count of the surface braid group system relators counted family by family."""
    c = 0
    c += max(0, k - 2) * max(0, k - 3) // 2  # far commutation
    c += max(0, k - 2)  # braid relation
    c += 2 * g * max(0, k - 2)  # handles commute with s_j, j >= 2
    if k >= 2:
        c += 2 * g  # c s1 c s1
        c += g  # a s1 b
        c += 4 * g * (g - 1) // 2  # c_i s1^-1 c_j s1, j < i
    c += n * max(0, k - 2)  # z_j s_i, i >= 2
    if k >= 2:
        c += 2 * n * g  # (s1^-1 z_j s1) with a_l, b_l
        c += n * (n - 1) // 2
        c += n
    return c


def laurent_eval(terms: dict, variables: tuple, values: dict) -> Fraction:
    """Evaluate a {monomial: coeff} dict by direct substitution."""
    total = Fraction(0)
    for mono, c in terms.items():
        t = Fraction(c)
        for v, e in zip(variables, mono):
            t *= Fraction(values[v]) ** e
        total += t
    return total
