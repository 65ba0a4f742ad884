"""Permutations of ``range(n)`` stored in one-line notation.

``p[i]`` is the image of ``i``.  Products are written diagrammatically:
``then(p, q)`` applies ``p`` first, so ``then(p, q)[i] == q[p[i]]``.
"""

from __future__ import annotations

from itertools import permutations

from .errors import SchemaError


def check_perm(p, n=None):
    p = tuple(p)
    if sorted(p) != list(range(len(p))) or (n is not None and len(p) != n):
        raise SchemaError(f"not a permutation of {n if n is not None else len(p)} points: {p}")
    return p


def identity(n):
    return tuple(range(n))


def then(p, q):
    return tuple(q[i] for i in p)


def inverse(p):
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def transposition(n, k):
    """The adjacent transposition swapping ``k`` and ``k + 1``."""
    p = list(range(n))
    p[k], p[k + 1] = p[k + 1], p[k]
    return tuple(p)


def all_perms(n):
    return [tuple(p) for p in permutations(range(n))]


def adjacent_word(p):
    """Indices ``k1, ..., kr`` with ``p = s_k1 then s_k2 then ... then s_kr``.

    Bubble-sorting the one-line notation gives ``p o s_k1 o ... o s_kr = id``.
    """
    w = list(p)
    word = []
    changed = True
    while changed:
        changed = False
        for k in range(len(w) - 1):
            if w[k] > w[k + 1]:
                w[k], w[k + 1] = w[k + 1], w[k]
                word.append(k)
                changed = True
    return word


def sign(p):
    return -1 if len(adjacent_word(p)) % 2 else 1


def block_insert(tau, i, m):
    """Permutation of ``m + len(tau) - 1`` points acting as ``tau`` on the
    block starting at ``i`` and fixing everything else."""
    n = len(tau)
    out = list(range(m + n - 1))
    for k in range(n):
        out[i + k] = i + tau[k]
    return tuple(out)


def block_expand(sigma, i, n):
    """Expand position ``i`` of ``sigma`` into a block of ``n`` consecutive
    points, keeping the block internally ordered (``n = 0`` deletes it)."""
    m = len(sigma)
    blocks = []
    for j in range(m):
        if j < i:
            blocks.append([j])
        elif j == i:
            blocks.append(list(range(i, i + n)))
        else:
            blocks.append([j + n - 1])
    return tuple(x for j in sigma for x in blocks[j])
