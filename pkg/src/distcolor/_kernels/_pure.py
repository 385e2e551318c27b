"""Pure-Python hot loops.  ``_fast.pyx`` mirrors these function for function.

All arrays are 0-indexed over vertices; colors stay 1-based and ``0`` marks a
free vertex.  Both kernels are deterministic and must agree bit for bit with
their compiled twins.
"""

from __future__ import annotations

from ..errors import BudgetExceeded


def _fixed_conflict(colors: list[int], path_id: list[int], d: int) -> bool:
    n = len(colors)
    for i in range(n):
        col = colors[i]
        if not col:
            continue
        for j in range(i + 1, min(n, i + d + 1)):
            if colors[j] == col and path_id[j] == path_id[i]:
                return True
    return False


def extension_search(
    path_id: list[int],
    colors: list[int],
    allowed: list[tuple[int, ...]],
    d: int,
    remaining: list[int] | None,
) -> list[int] | None:
    """Lexicographically first completion of ``colors`` by depth-first search.

    Free vertices are filled in index order, candidates in ascending order;
    failed subproblems are memoised so long, loosely constrained paths stay
    tractable.
    ``allowed[i]`` lists the candidates of vertex ``i``; ``remaining[col]`` (if
    given) is how many more free vertices may take ``col`` and must reach zero.
    """
    colors = list(colors)
    n = len(colors)
    if _fixed_conflict(colors, path_id, d):
        return None
    free = [i for i in range(n) if not colors[i]]
    if remaining is not None:
        remaining = list(remaining)
        if sum(remaining) != len(free) or min(remaining, default=0) < 0:
            return None

    def fits(i: int, col: int) -> bool:
        p = path_id[i]
        for j in range(max(0, i - d), min(n, i + d + 1)):
            if j != i and colors[j] == col and path_id[j] == p:
                return False
        return True

    dead: set[tuple] = set()

    def dfs(k: int) -> bool:
        if k == len(free):
            return True
        i = free[k]
        # everything later depends only on the last d colors and the residual demands
        key = (k, tuple(colors[max(0, i - d):i]), tuple(remaining) if remaining is not None else None)
        if key in dead:
            return False
        for col in allowed[i]:
            if remaining is not None and remaining[col] <= 0:
                continue
            if not fits(i, col):
                continue
            colors[i] = col
            if remaining is not None:
                remaining[col] -= 1
            if dfs(k + 1):
                return True
            if remaining is not None:
                remaining[col] += 1
        colors[i] = 0
        dead.add(key)
        return False

    return colors if dfs(0) else None


def window_dp(
    n: int,
    c: int,
    d: int,
    pre: list[int],
    rho: list[int],
    cap: int,
) -> list[int] | None:
    """Sliding-window DP over (last ``d`` colors, per-color usage) signatures.

    ``rho[col - 1]`` is the exact total usage every color must reach.  A state
    is packed into one integer: the window as base-``c+1`` digits (newest
    lowest) times the mixed-radix usage code.  Usage is capped at ``rho`` and
    states that cannot absorb the still-pending precolored vertices are
    dropped.  Raises BudgetExceeded once a layer holds more than ``cap`` states.
    """
    if sum(rho) != n:
        return None
    base = c + 1
    wmod = base**d
    weight = [0] * (c + 1)
    w = 1
    for col in range(1, c + 1):
        weight[col] = w
        w *= rho[col - 1] + 1
    radix = w
    # pending[i][col]: precolored occurrences of col strictly after position i
    pending = [[0] * (c + 1) for _ in range(n + 1)]
    for i in range(n - 1, -1, -1):
        row = pending[i] = list(pending[i + 1])
        if i + 1 < n and pre[i + 1]:
            row[pre[i + 1]] += 1

    layers: list[dict[int, tuple[int, int]]] = []
    layer: dict[int, tuple[int, int]] = {0: (-1, 0)}
    for i in range(n):
        nxt: dict[int, tuple[int, int]] = {}
        choices = (pre[i],) if pre[i] else range(1, c + 1)
        future = pending[i]
        for key in layer:
            window, usage = divmod(key, radix)
            for col in choices:
                x = window
                hit = False
                for _ in range(d):
                    if x % base == col:
                        hit = True
                        break
                    x //= base
                if hit:
                    continue
                used = (usage // weight[col]) % (rho[col - 1] + 1)
                if used + 1 + future[col] > rho[col - 1]:
                    continue
                nkey = ((window * base + col) % wmod) * radix + usage + weight[col]
                if nkey not in nxt:
                    nxt[nkey] = (key, col)
        if len(nxt) > cap:
            raise BudgetExceeded(f"window DP layer {i + 1} holds {len(nxt)} states (cap {cap})")
        if not nxt:
            return None
        layers.append(nxt)
        layer = nxt

    out = [0] * n
    key = next(iter(layer))
    for i in range(n - 1, -1, -1):
        key, out[i] = layers[i][key]
    return out
