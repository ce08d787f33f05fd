"""Reference structures used across the test suite and shipped as .gsa files.

The gl(1|1) and Grassmann structure constants are derived in code from
supermatrix products and operator composition rather than written out by
hand, so the fixtures double as an independent oracle for the bracket
tables.
"""

import itertools
import random
from fractions import Fraction

from .core import ONE, Element, GradedSpace, MultilinearMap
from .skew import canonical_full
from .structures import (
    LieRinehartStructure,
    SuperCommutativeAlgebra,
)

F = Fraction


# ---------------------------------------------------------------------------
# algebras


def trivial_algebra():
    """A = K: one even basis vector acting as the unit."""
    space = GradedSpace("K", [0])
    prod = MultilinearMap((space, space), space, 0, {((1, 1), 1): 1})
    return SuperCommutativeAlgebra(space, prod, unit_index=1)


def grassmann_algebra():
    """A = Lambda(theta): basis {1, theta}, theta^2 = 0."""
    space = GradedSpace("Grass", [0, 1])
    prod = MultilinearMap(
        (space, space), space, 0,
        {((1, 1), 1): 1, ((1, 2), 2): 1, ((2, 1), 2): 1},
    )
    return SuperCommutativeAlgebra(space, prod, unit_index=1)


def trivial_action(A, L):
    """The A = K action: the unit acts as the identity."""
    ent = {((A.unit_index, i), i): 1 for i in L.indices()}
    return MultilinearMap((A.space, L), L, 0, ent)


def zero_anchor(A, L, lie_arity=1):
    domains = (L,) * lie_arity + (A.space,)
    return MultilinearMap(domains, A.space, 0, {})


# ---------------------------------------------------------------------------
# fix0: one even basis vector, every map zero


def fix0():
    A = trivial_algebra()
    L = GradedSpace("L0", [0])
    bracket = MultilinearMap((L, L), L, 0, {})
    return LieRinehartStructure(A, L, bracket, trivial_action(A, L), zero_anchor(A, L), "FIX0")


def fix0_trace():
    return [F(0)]


# ---------------------------------------------------------------------------
# fix-gl11: gl(1|1) with the supermatrix commutator, A = K


_GL11_BASIS = {
    1: {(0, 0): F(1)},  # E11, even
    2: {(1, 1): F(1)},  # E22, even
    3: {(0, 1): F(1)},  # E12, odd
    4: {(1, 0): F(1)},  # E21, odd
}
_GL11_PARITY = (0, 0, 1, 1)


def _mat_mul(a, b):
    out = {}
    for (i, k), x in a.items():
        for (k2, j), y in b.items():
            if k == k2:
                out[(i, j)] = out.get((i, j), F(0)) + x * y
    return {k: v for k, v in out.items() if v}


def _mat_to_coords(m):
    coords = {}
    lookup = {(0, 0): 1, (1, 1): 2, (0, 1): 3, (1, 0): 4}
    for pos, c in m.items():
        coords[lookup[pos]] = c
    return coords


def fix_gl11():
    A = trivial_algebra()
    L = GradedSpace("gl11", _GL11_PARITY)
    ent = {}
    for i in range(1, 5):
        for j in range(1, 5):
            s = -ONE if (_GL11_PARITY[i - 1] & _GL11_PARITY[j - 1]) else ONE
            comm = dict(_mat_mul(_GL11_BASIS[i], _GL11_BASIS[j]))
            for pos, c in _mat_mul(_GL11_BASIS[j], _GL11_BASIS[i]).items():
                comm[pos] = comm.get(pos, F(0)) - s * c
            for out, c in _mat_to_coords(comm).items():
                if c:
                    ent[((i, j), out)] = c
    bracket = MultilinearMap((L, L), L, 0, ent)
    return LieRinehartStructure(A, L, bracket, trivial_action(A, L), zero_anchor(A, L), "FIX-GL11")


def gl11_supertrace():
    """str on gl(1|1): +1 on E11, -1 on E22, 0 on odd elements."""
    return [F(1), F(-1), F(0), F(0)]


# ---------------------------------------------------------------------------
# fix-heis: 3-dim even Heisenberg, A = K


def fix_heis():
    A = trivial_algebra()
    L = GradedSpace("heis", [0, 0, 0])
    bracket = MultilinearMap((L, L), L, 0, {((1, 2), 3): 1, ((2, 1), 3): -1})
    return LieRinehartStructure(A, L, bracket, trivial_action(A, L), zero_anchor(A, L), "FIX-HEIS")


def heis_trace():
    return [F(1), F(0), F(0)]


# ---------------------------------------------------------------------------
# fix-grass: L = Der(A) + A over the Grassmann algebra


def _op_apply(op, vec):
    # operators on A-coordinates {a_idx: coeff}
    out = {}
    for (i, o), c in op.items():
        x = vec.get(i)
        if x:
            out[o] = out.get(o, F(0)) + c * x
    return {k: v for k, v in out.items() if v}


def _op_compose(op1, op2):
    # (op1 . op2)(v) = op1(op2(v))
    out = {}
    for (i, k), c2 in op2.items():
        for (k2, o), c1 in op1.items():
            if k == k2:
                out[(i, o)] = out.get((i, o), F(0)) + c1 * c2
    return {k: v for k, v in out.items() if v}


def fix_grass():
    A = grassmann_algebra()
    # basis: 1 = theta*d/dtheta (even), 2 = d/dtheta (odd), 3 = 1, 4 = theta
    L = GradedSpace("DerGrass", [0, 1, 0, 1])
    theta_d = {(2, 2): F(1)}
    d = {(2, 1): F(1)}
    ops = {1: (theta_d, 0), 2: (d, 1)}
    avec = {3: {1: F(1)}, 4: {2: F(1)}}

    ent = {}

    def store(i, j, der_part, a_part):
        # element of L from a derivation and an A component
        coords = {}
        if der_part:
            # express in the operator basis {theta d, d}
            coords[1] = der_part.get((2, 2), F(0))
            coords[2] = der_part.get((2, 1), F(0))
            if der_part.get((1, 1)) or der_part.get((1, 2)):
                raise AssertionError("not a derivation of Lambda(theta)")
        for a_idx, c in (a_part or {}).items():
            coords[2 + a_idx] = coords.get(2 + a_idx, F(0)) + c
        for out, c in coords.items():
            if c:
                ent[((i, j), out)] = c

    for i in range(1, 5):
        for j in range(1, 5):
            di, pi = ops.get(i, (None, None))
            dj, pj = ops.get(j, (None, None))
            ai = avec.get(i)
            aj = avec.get(j)
            der_part = {}
            a_part = {}
            if di is not None and dj is not None:
                comm = dict(_op_compose(di, dj))
                s = -ONE if (pi & pj) else ONE
                for pos, c in _op_compose(dj, di).items():
                    comm[pos] = comm.get(pos, F(0)) - s * c
                der_part = {k: v for k, v in comm.items() if v}
            if di is not None and aj is not None:
                a_part = _op_apply(di, aj)
            if ai is not None and dj is not None:
                # -(-1)^(|D'||a|) D'(a)
                s = -ONE if (pj & L.par(i)) else ONE
                for k, v in _op_apply(dj, ai).items():
                    a_part[k] = a_part.get(k, F(0)) - s * v
            store(i, j, der_part, {k: v for k, v in a_part.items() if v})

    bracket = MultilinearMap((L, L), L, 0, ent)

    # A-action: a (D, c) = (a D, a c); theta * (theta d) = 0, theta * d = theta d
    act = {
        ((1, 1), 1): 1, ((1, 2), 2): 1, ((1, 3), 3): 1, ((1, 4), 4): 1,
        ((2, 2), 1): 1,  # theta * d = theta d
        ((2, 3), 4): 1,  # theta * 1 = theta
    }
    action = MultilinearMap((A.space, L), L, 0, act)

    # anchor: projection to the derivation part
    anc = {
        ((1, 2), 2): 1,  # theta d applied to theta
        ((2, 2), 1): 1,  # d applied to theta
    }
    anchor = MultilinearMap((L, A.space), A.space, 0, anc)
    return LieRinehartStructure(A, L, bracket, action, anchor, "FIX-GRASS")


def grass_trace():
    return [F(0), F(0), F(0), F(0)]


# ---------------------------------------------------------------------------
# fix-theta: A = Lambda(theta) acting through its character, anchor into
# theta d/dtheta.  Gives a valid induction target with nonzero rho.


def fix_theta():
    A = grassmann_algebra()
    # basis: v1, v2, z, w (all even); [v1, v2] = z
    L = GradedSpace("Ltheta", [0, 0, 0, 0])
    bracket = MultilinearMap((L, L), L, 0, {((1, 2), 3): 1, ((2, 1), 3): -1})
    # theta acts as zero; the unit acts as the identity
    act = {((1, i), i): 1 for i in L.indices()}
    action = MultilinearMap((A.space, L), L, 0, act)
    # mu(v2) = theta d/dtheta, other generators map to zero
    anchor = MultilinearMap((L, A.space), A.space, 0, {((2, 2), 2): 1})
    return LieRinehartStructure(A, L, bracket, action, anchor, "FIX-THETA")


def theta_trace():
    return [F(1), F(0), F(0), F(1)]


# ---------------------------------------------------------------------------
# fix-aff: aff(1) + K w, classical, with a supertrace giving a
# non-nilpotent induced ternary bracket


def fix_aff():
    A = trivial_algebra()
    L = GradedSpace("aff", [0, 0, 0])  # h, e, w
    bracket = MultilinearMap((L, L), L, 0, {((1, 2), 2): 1, ((2, 1), 2): -1})
    return LieRinehartStructure(A, L, bracket, trivial_action(A, L), zero_anchor(A, L), "FIX-AFF")


def aff_trace():
    return [F(1), F(0), F(1)]


# ---------------------------------------------------------------------------
# fix-gl11w: gl(1|1) + K w; the induced ternary bracket contains the whole
# binary bracket, so double brackets survive


def fix_gl11w():
    base = fix_gl11()
    A = base.A
    L = GradedSpace("gl11w", _GL11_PARITY + (0,))
    ent = {((i, j), o): c for ((i, j), o), c in base.bracket.entries.items()}
    bracket = MultilinearMap((L, L), L, 0, ent)
    return LieRinehartStructure(A, L, bracket, trivial_action(A, L), zero_anchor(A, L), "FIX-GL11W")


def gl11w_trace():
    return [F(1), F(-1), F(0), F(0), F(1)]


# ---------------------------------------------------------------------------
# seeded random structures


def random_nilpotent_lr(seed, dim_v=3, dim_z=1, odd_fraction=0.4):
    """Two-step nilpotent Lie superalgebra over A = K: V + Z with a random
    super-skew bracket V x V -> Z and Z central.  Jacobi holds for free."""
    rng = random.Random(seed)
    parity = [1 if rng.random() < odd_fraction else 0 for _ in range(dim_v + dim_z)]
    L = GradedSpace(f"nil{seed}", parity)
    A = trivial_algebra()
    values = {}
    for i, j in itertools.combinations_with_replacement(range(1, dim_v + 1), 2):
        canon, s = canonical_full((i, j), L)
        if canon is None or canon != (i, j):
            continue
        pin = (L.par(i) + L.par(j)) & 1
        for z in range(dim_v + 1, dim_v + dim_z + 1):
            if L.par(z) != pin:
                continue
            if rng.random() < 0.7:
                c = F(rng.randint(-3, 3))
                if c:
                    values.setdefault((i, j), {})[z] = c
    ent = {}
    for i in range(1, dim_v + 1):
        for j in range(1, dim_v + 1):
            canon, s = canonical_full((i, j), L)
            if canon is None:
                continue
            for z, c in values.get(canon, {}).items():
                ent[((i, j), z)] = c * s
    bracket = MultilinearMap((L, L), L, 0, ent)
    return LieRinehartStructure(A, L, bracket, trivial_action(A, L), zero_anchor(A, L),
                                f"RAND-NIL-{seed}")


def random_theta_lr(seed, dim_v=2, dim_z=1):
    """Random Lie-Rinehart structure over Lambda(theta) with theta acting as
    zero and the anchor valued in theta d/dtheta (vanishing on brackets)."""
    rng = random.Random(seed)
    base = random_nilpotent_lr(seed * 7919 + 13, dim_v, dim_z, odd_fraction=0.0)
    A = grassmann_algebra()
    L = GradedSpace(f"theta{seed}", base.L.parity)
    ent = {((i, j), o): c for ((i, j), o), c in base.bracket.entries.items()}
    bracket = MultilinearMap((L, L), L, 0, ent)
    act = {((1, i), i): 1 for i in L.indices()}
    action = MultilinearMap((A.space, L), L, 0, act)
    anc = {}
    for i in range(1, dim_v + 1):
        # anchor supported off the centre so that mu([L, L]) = 0
        c = F(rng.randint(-2, 2))
        if c:
            anc[((i, 2), 2)] = c
    anchor = MultilinearMap((L, A.space), A.space, 0, anc)
    return LieRinehartStructure(A, L, bracket, action, anchor, f"RAND-THETA-{seed}")


def random_superskew_ternary(seed, dim=3, odd_fraction=0.5, density=0.5):
    """A random fully super-skew even ternary map (not necessarily 3-Lie)."""
    rng = random.Random(seed)
    parity = [1 if rng.random() < odd_fraction else 0 for _ in range(dim)]
    L = GradedSpace(f"skew{seed}", parity)
    values = {}
    for t in itertools.product(L.indices(), repeat=3):
        canon, s = canonical_full(t, L)
        if canon is None or canon != t:
            continue
        pin = L.tuple_parity(t)
        for o in L.indices():
            if L.par(o) != pin:
                continue
            if rng.random() < density:
                c = F(rng.randint(-2, 2))
                if c:
                    values.setdefault(t, {})[o] = c
    ent = {}
    for t in itertools.product(L.indices(), repeat=3):
        canon, s = canonical_full(t, L)
        if canon is None:
            continue
        for o, c in values.get(canon, {}).items():
            ent[(t, o)] = c * s
    return MultilinearMap((L, L, L), L, 0, ent)


ALL_FIXTURES = {
    "FIX0": (fix0, fix0_trace),
    "FIX-GL11": (fix_gl11, gl11_supertrace),
    "FIX-HEIS": (fix_heis, heis_trace),
    "FIX-GRASS": (fix_grass, grass_trace),
    "FIX-THETA": (fix_theta, theta_trace),
    "FIX-AFF": (fix_aff, aff_trace),
    "FIX-GL11W": (fix_gl11w, gl11w_trace),
}
