"""Canonical representatives for super-(skew)symmetric index tuples.

A super-alternating map is determined by its values on canonical tuples;
these helpers map an arbitrary basis tuple to its representative together
with the exact sign, or report that the value is forced to vanish (a
repeated even index inside an alternating group).
"""

from .core import ONE


def canonical_full(idxs, space):
    """Fully super-alternating canonicalisation (sort all slots ascending).

    Returns (canonical tuple, sign) with sign in {+1, -1}, or (None, 0)
    when the value is forced to zero.  Repeated odd indices are allowed.
    """
    seq = list(idxs)
    pars = [space.par(i) for i in seq]
    koszul = 1
    sgn = 1
    for i in range(1, len(seq)):
        j = i
        while j > 0 and seq[j - 1] > seq[j]:
            if pars[j - 1] & pars[j]:
                koszul = -koszul
            sgn = -sgn
            seq[j - 1], seq[j] = seq[j], seq[j - 1]
            pars[j - 1], pars[j] = pars[j], pars[j - 1]
            j -= 1
    for k in range(1, len(seq)):
        if seq[k - 1] == seq[k] and pars[k] == 0:
            return None, 0
    return tuple(seq), koszul * sgn


def canonical_pairs(idxs, space, npairs):
    """Canonicalise within the slot pairs (1,2),...,(2n-1,2n) only.

    Slots beyond 2*npairs are untouched.  Same return convention as
    canonical_full.
    """
    seq = list(idxs)
    total = 1
    for k in range(npairs):
        a, b = seq[2 * k], seq[2 * k + 1]
        if a > b:
            if space.par(a) & space.par(b):
                total = -total
            total = -total
            seq[2 * k], seq[2 * k + 1] = b, a
        elif a == b and space.par(a) == 0:
            return None, 0
    return tuple(seq), total


def expand_canonical(values, space, arity, canonicalize):
    """Expand {canonical tuple: {out: coeff}} to all tuples via skew signs."""
    import itertools

    out = {}
    for t in itertools.product(space.indices(), repeat=arity):
        canon, s = canonicalize(t)
        if canon is None:
            continue
        vals = values.get(canon)
        if not vals:
            continue
        for o, c in vals.items():
            v = c if s == 1 else -c
            if v:
                out[(t, o)] = v * ONE
    return out
