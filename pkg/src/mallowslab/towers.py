"""
Tower ``T`` and wowzer ``W`` functions with their discrete inverses.

``T(0) = 1, T(i) = 2**T(i-1)`` and ``W(0) = 1, W(i) = T(W(i-1))``.  Values are
exact Python integers.  ``T(5) = 2**65536`` is the largest tower computed and
``W(3) = 65536`` the largest wowzer value; anything beyond raises
``ValueError("too large")`` rather than saturating.

The inverses never materialise an unrepresentable value: ``T(k) >= x`` holds
for every ``k > 5`` and every integer that fits in memory, and
``W(k) >= x  <=>  W(k-1) >= log_star(x)``, which gives the recursion used in
:func:`log_star_star`.
"""

__all__ = ["MAX_TOWER", "MAX_WOWZER", "tower", "wowzer", "log_star", "log_star_star"]

MAX_TOWER = 5
MAX_WOWZER = 3

_TOWERS = [1]
for _ in range(MAX_TOWER):
    _TOWERS.append(1 << _TOWERS[-1])


def tower(n: int) -> int:
    if n < 0:
        raise ValueError("tower height must be nonnegative")
    if n > MAX_TOWER:
        raise ValueError(f"tower({n}) is too large to represent")
    return _TOWERS[n]


def wowzer(n: int) -> int:
    if n < 0:
        raise ValueError("wowzer argument must be nonnegative")
    if n > MAX_WOWZER:
        raise ValueError(f"wowzer({n}) is too large to represent")
    w = 1
    for _ in range(n):
        w = tower(w)
    return w


def log_star(x: int) -> int:
    """Least ``k >= 0`` with ``T(k) >= x``."""
    for k, t in enumerate(_TOWERS):
        if t >= x:
            return k
    # any materialised integer is below T(6) = 2**(2**65536)
    return MAX_TOWER + 1


def log_star_star(x: int) -> int:
    """Least ``k >= 0`` with ``W(k) >= x``."""
    k = 0
    while x > 1:
        x = log_star(x)
        k += 1
    return k
