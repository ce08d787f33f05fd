"""Cochain complexes for the binary and ternary Rinehart theories.

Cochain spaces are carved out of free structure-constant spaces by exact
linear algebra: skewness is handled by canonical-tuple reduction, the
A-linearity constraints by a rational kernel computation.  Coboundaries
are assembled as sparse matrices over the resulting bases, so d*d = 0 and
all dimension counts are exact statements about integer ranks.

Degree bookkeeping: an LR cochain of degree n takes n arguments; a 3LR
cochain of degree n takes 2n+1 arguments and is skew within the argument
pairs (2k-1, 2k) (the optional strict mode alternates over all slots).
"""

import itertools
from fractions import Fraction

from . import linalg
from .core import ONE, ZERO, CheckReport, Element, GradedSpace, MultilinearMap
from .skew import canonical_full, canonical_pairs
from .structures import (
    LieRinehartStructure,
    RepresentationAction,
    ThreeLieRinehartStructure,
    _EMPTY,
    daxpy,
    dscale,
    sign,
    table,
    tuples,
)
from .constructions import SuperTrace

F = Fraction


class CochainSpaceError(ValueError):
    """A cochain operation left the constraint-satisfying space."""


def scalar_module(S):
    """The scalar coefficients K: one even basis vector, A acting through
    the character that kills every non-unit basis element, zero L-action.

    Only available when A is unital and the character is multiplicative
    (true for all shipped fixtures); the LR/3LR module axioms may still
    fail when the anchor does not kill the character kernel, which callers
    check where the theory requires it.
    """
    A = S.A
    if A.unit_index is None:
        raise ValueError("scalar module needs a unital A")
    M = GradedSpace("K", [0])
    ptab = table(A.product)
    for a, b in tuples(A.space.dim, 2):
        prod_unit = ptab.get((a, b), _EMPTY).get(A.unit_index, ZERO)
        want = ONE if (a == A.unit_index and b == A.unit_index) else ZERO
        if prod_unit != want:
            raise ValueError("unit coefficient of products is not a character")
    a_act = {((A.unit_index, 1), 1): ONE}
    A_action = MultilinearMap((A.space, M), M, 0, a_act)
    if isinstance(S, ThreeLieRinehartStructure):
        act = MultilinearMap((S.L, S.L, M), M, 0, {})
    else:
        act = MultilinearMap((S.L, M), M, 0, {})
    return RepresentationAction(M, act, A_action)


def adjoint_module(S):
    """M = L with the bracket action and the structure's A-action."""
    if isinstance(S, ThreeLieRinehartStructure):
        return RepresentationAction(S.L, S.bracket3, S.action)
    return RepresentationAction(S.L, S.bracket, S.action)


def anchor_module(S: LieRinehartStructure):
    """M = A acted on through the anchor (the natural LR module)."""
    return RepresentationAction(S.A.space, S.anchor_mu, S.A.product)


def rho_module(S: ThreeLieRinehartStructure):
    """M = A acted on through the ternary anchor."""
    return RepresentationAction(S.A.space, S.anchor_rho, S.A.product)


class CochainSpec:
    """Which cochain space: theory, degree, parity, structure and module."""

    __slots__ = ("theory", "degree", "parity", "structure", "module", "strict_alternating")

    def __init__(self, theory, degree, parity, structure, module, strict_alternating=False):
        if theory not in ("lr", "3lr"):
            raise ValueError("theory must be 'lr' or '3lr'")
        if degree < 0:
            raise ValueError("degree must be non-negative")
        self.theory = theory
        self.degree = degree
        self.parity = int(parity) & 1
        self.structure = structure
        self.module = module
        self.strict_alternating = strict_alternating

    @property
    def arity(self):
        return self.degree if self.theory == "lr" else 2 * self.degree + 1

    def shifted(self, dn):
        return CochainSpec(self.theory, self.degree + dn, self.parity,
                           self.structure, self.module, self.strict_alternating)

    def canonicalize(self, t):
        L = self.structure.L
        if self.theory == "lr" or self.strict_alternating:
            return canonical_full(t, L)
        return canonical_pairs(t, L, self.degree)

    def __repr__(self):
        return (f"CochainSpec({self.theory}, degree={self.degree}, parity={self.parity}, "
                f"arity={self.arity})")


class CochainBasis:
    """Deterministic basis of one cochain space.

    Variables are the (canonical tuple, output index) pairs in lexicographic
    order; the basis is the RREF kernel of the A-linearity system, so the
    coordinates of any member can be read off at the free variables.
    """

    def __init__(self, spec: CochainSpec):
        self.spec = spec
        L = spec.structure.L
        M = spec.module.M
        arity = spec.arity
        self.vars = []
        for t in itertools.product(L.indices(), repeat=arity):
            canon, s = spec.canonicalize(t)
            if canon != t:
                continue
            pin = (L.tuple_parity(t) + spec.parity) & 1
            for o in M.indices():
                if M.par(o) == pin:
                    self.vars.append((t, o))
        self.vars.sort()
        self.var_pos = {v: k for k, v in enumerate(self.vars)}
        rows = self._a_linearity_rows()
        self.basis = linalg.kernel_basis(rows, len(self.vars))
        ech = linalg.echelon_from_rows(rows, len(self.vars))
        pivot = set(ech.pivot_cols)
        self.free_cols = [c for c in range(len(self.vars)) if c not in pivot]
        self._full_tables = None

    @property
    def dimension(self):
        return len(self.basis)

    def _a_linearity_rows(self):
        spec = self.spec
        S = spec.structure
        L, A, M = S.L, S.A, spec.module.M
        arity = spec.arity
        act_L = table(S.action)
        act_M = table(spec.module.A_action_on_M)
        rows = []
        identity_like = set()
        for a in A.space.indices():
            ok = all(act_L.get((a, x), _EMPTY) == {x: ONE} for x in L.indices()) and \
                all(act_M.get((a, m), _EMPTY) == {m: ONE} for m in M.indices())
            if ok and A.space.par(a) == 0:
                identity_like.add(a)
        for a in A.space.indices():
            if a in identity_like:
                continue
            pa = A.space.par(a)
            for slot in range(arity):
                for t in itertools.product(L.indices(), repeat=arity):
                    prefix = sum(L.par(t[k]) for k in range(slot)) & 1
                    s = sign(pa * (prefix + spec.parity))
                    ax = act_L.get((a, t[slot]), _EMPTY)
                    for o in M.indices():
                        row = {}
                        for j, cj in ax.items():
                            tt = t[:slot] + (j,) + t[slot + 1:]
                            canon, sg = spec.canonicalize(tt)
                            if canon is None:
                                continue
                            pos = self.var_pos.get((canon, o))
                            if pos is not None:
                                row[pos] = row.get(pos, ZERO) + cj * (ONE if sg == 1 else -ONE)
                        canon, sg = spec.canonicalize(t)
                        if canon is not None:
                            base_sign = ONE if sg == 1 else -ONE
                            for m in M.indices():
                                pos = self.var_pos.get((canon, m))
                                if pos is None:
                                    continue
                                co = act_M.get((a, m), _EMPTY).get(o)
                                if co:
                                    row[pos] = row.get(pos, ZERO) - s * base_sign * co
                        row = {k: v for k, v in row.items() if v}
                        if row:
                            rows.append(row)
        return rows

    # -- materialisation ---------------------------------------------------

    def full_table(self, vec):
        """Expand a vector over canonical variables to all tuples."""
        spec = self.spec
        L = spec.structure.L
        out = {}
        canon_vals = {}
        for pos, c in vec.items():
            t, o = self.vars[pos]
            canon_vals.setdefault(t, {})[o] = c
        for t in itertools.product(L.indices(), repeat=spec.arity):
            canon, s = spec.canonicalize(t)
            if canon is None:
                continue
            vals = canon_vals.get(canon)
            if not vals:
                continue
            for o, c in vals.items():
                v = c if s == 1 else -c
                if v:
                    out[(t, o)] = v
        return out

    def basis_full_tables(self):
        if self._full_tables is None:
            self._full_tables = [self.full_table(vec) for vec in self.basis]
        return self._full_tables

    def map_for(self, k) -> MultilinearMap:
        spec = self.spec
        L = spec.structure.L
        M = spec.module.M
        ent = self.full_table(self.basis[k])
        return MultilinearMap((L,) * spec.arity, M, spec.parity, ent, validate=False)

    def coords_of_table(self, ftab):
        """Coordinates of a full value table, or None if it lies outside the
        cochain space (skewness, parity or A-linearity violated)."""
        vec = {}
        for pos, (t, o) in enumerate(self.vars):
            c = ftab.get((t, o), ZERO)
            if c:
                vec[pos] = c
        coords = [vec.get(c, ZERO) for c in self.free_cols]
        recon = {}
        for x, b in zip(coords, self.basis):
            daxpy(recon, b, x)
        if recon != vec:
            return None
        full = self.full_table(recon)
        clean = {k: v for k, v in ftab.items() if v}
        if full != clean:
            return None
        return coords

    def table_of_coords(self, coords):
        vec = {}
        for x, b in zip(coords, self.basis):
            daxpy(vec, b, x)
        return self.full_table(vec)


class Cochain:
    """A cochain given by coordinates in its space's computed basis."""

    __slots__ = ("basis", "coords")

    def __init__(self, basis: CochainBasis, coords):
        coords = [F(c) for c in coords]
        if len(coords) != basis.dimension:
            raise ValueError("coordinate vector has the wrong length")
        self.basis = basis
        self.coords = coords

    @property
    def spec(self):
        return self.basis.spec

    @classmethod
    def zero(cls, basis):
        return cls(basis, [ZERO] * basis.dimension)

    @classmethod
    def from_table(cls, basis, ftab):
        coords = basis.coords_of_table(ftab)
        if coords is None:
            raise CochainSpaceError("values do not satisfy the cochain constraints")
        return cls(basis, coords)

    @classmethod
    def from_map(cls, basis, m: MultilinearMap):
        return cls.from_table(basis, dict(m.entries))

    def table(self):
        return self.basis.table_of_coords(self.coords)

    def as_map(self) -> MultilinearMap:
        spec = self.spec
        L = spec.structure.L
        return MultilinearMap((L,) * spec.arity, spec.module.M, spec.parity,
                              self.table(), validate=False)

    def is_zero(self):
        return all(c == 0 for c in self.coords)

    def add(self, other):
        return Cochain(self.basis, [a + b for a, b in zip(self.coords, other.coords)])

    def sub(self, other):
        return Cochain(self.basis, [a - b for a, b in zip(self.coords, other.coords)])

    def scale(self, k):
        k = F(k)
        return Cochain(self.basis, [a * k for a in self.coords])


# ---------------------------------------------------------------------------
# coboundary formulas on raw value tables


def delta_lr_table(spec: CochainSpec, ftab):
    """delta_LR of an LR n-cochain value table, as an (n+1)-argument table.

    Action terms carry the displayed sign (-1)^(i+1+x_i(f+x_1+..+x_{i-1}));
    bracket-insertion terms carry (-1)^(i+j) times the Koszul factor for
    moving x_i then x_j to the front, which is the signing under which the
    square of the map vanishes (the plain displayed exponent does not, see
    the sign-convention notes).
    """
    S = spec.structure
    mod = spec.module
    L, M = S.L, mod.M
    n = spec.degree
    act = table(mod.action_map)
    btab = table(S.bracket)
    par = L.par
    fbar = spec.parity
    out = {}
    for t in itertools.product(L.indices(), repeat=n + 1):
        acc = {}
        pre = 0
        for i in range(1, n + 2):
            xi = t[i - 1]
            rest = t[:i - 1] + t[i:]
            e = (i + 1 + par(xi) * (fbar + pre)) & 1
            pre = (pre + par(xi)) & 1
            val = {}
            for m in M.indices():
                c = ftab.get((rest, m), ZERO)
                if c:
                    daxpy(val, act.get((xi, m), _EMPTY), c)
            daxpy(acc, val, sign(e))
        for i in range(1, n + 2):
            for j in range(i + 1, n + 2):
                xi, xj = t[i - 1], t[j - 1]
                pre_i = sum(par(t[k]) for k in range(i - 1)) & 1
                pre_j = sum(par(t[k]) for k in range(j - 1)) & 1
                e = (i + j + par(xi) * pre_i + par(xj) * pre_j + par(xi) * par(xj)) & 1
                rest = tuple(t[k] for k in range(n + 1) if k not in (i - 1, j - 1))
                for w, cw in btab.get((xi, xj), _EMPTY).items():
                    for m in M.indices():
                        c = ftab.get(((w,) + rest, m), ZERO)
                        if c:
                            v = acc.get(m, ZERO) + sign(e) * cw * c
                            if v:
                                acc[m] = v
                            else:
                                del acc[m]
        for m, c in acc.items():
            out[(t, m)] = c
    return out


def delta_3lr_table(spec: CochainSpec, ftab):
    """delta_3LR of a degree-(n-1) cochain table, with 2n+1 arguments,
    transcribed term by term from the displayed formula."""
    S = spec.structure
    mod = spec.module
    L, M = S.L, mod.M
    n = spec.degree + 1
    act = table(mod.action_map)
    btab = table(S.bracket3)
    par = L.par
    fbar = spec.parity
    out = {}
    for t in itertools.product(L.indices(), repeat=2 * n + 1):
        acc = {}
        pars = [par(x) for x in t]
        # first edge term: psi(x_{2n-1}, x_{2n+1}) f(x_1..x_{2n-2}, x_{2n})
        e = (n + (fbar + sum(pars[:2 * n - 2])) * (pars[2 * n - 2] + pars[2 * n])
             + pars[2 * n] * pars[2 * n - 1]) & 1
        rest = t[:2 * n - 2] + (t[2 * n - 1],)
        val = {}
        for m in M.indices():
            c = ftab.get((rest, m), ZERO)
            if c:
                daxpy(val, act.get((t[2 * n - 2], t[2 * n], m), _EMPTY), c)
        daxpy(acc, val, sign(e))
        # second edge term: psi(x_{2n}, x_{2n+1}) f(x_1..x_{2n-1})
        e = (n + (fbar + sum(pars[:2 * n - 1])) * (pars[2 * n - 1] + pars[2 * n])) & 1
        rest = t[:2 * n - 1]
        val = {}
        for m in M.indices():
            c = ftab.get((rest, m), ZERO)
            if c:
                daxpy(val, act.get((t[2 * n - 1], t[2 * n], m), _EMPTY), c)
        daxpy(acc, val, sign(e))
        # pair action sum
        for k in range(1, n + 1):
            e = (k + (fbar + sum(pars[:2 * k - 2])) * (pars[2 * k - 2] + pars[2 * k - 1])) & 1
            rest = t[:2 * k - 2] + t[2 * k:]
            val = {}
            for m in M.indices():
                c = ftab.get((rest, m), ZERO)
                if c:
                    daxpy(val, act.get((t[2 * k - 2], t[2 * k - 1], m), _EMPTY), c)
            daxpy(acc, val, sign(e))
        # bracket insertion double sum
        for k in range(1, n + 1):
            for j in range(2 * k + 1, 2 * n + 2):
                e = (k + sum(pars[2 * k:j - 1]) * (pars[2 * k - 2] + pars[2 * k - 1])) & 1
                for w, cw in btab.get((t[2 * k - 2], t[2 * k - 1], t[j - 1]), _EMPTY).items():
                    rest = tuple(t[p] for p in range(2 * n + 1)
                                 if p not in (2 * k - 2, 2 * k - 1, j - 1))
                    pos = j - 1 - 2  # slot of the replaced argument after the pair is removed
                    newt = rest[:pos] + (w,) + rest[pos:]
                    for m in M.indices():
                        c = ftab.get((newt, m), ZERO)
                        if c:
                            v = acc.get(m, ZERO) + sign(e) * cw * c
                            if v:
                                acc[m] = v
                            else:
                                del acc[m]
        for m, c in acc.items():
            out[(t, m)] = c
    return out


class CoboundaryMatrix:
    """The coboundary as an exact sparse matrix between cochain bases.

    representable is False when some image of a source basis cochain falls
    outside the target cochain space; the offending source index and the
    raw image table are kept for reporting, and the matrix columns hold the
    best-effort coordinates (zero where undefined).
    """

    __slots__ = ("src", "dst", "mat", "representable", "defects")

    def __init__(self, src: CochainBasis, dst: CochainBasis):
        self.src = src
        self.dst = dst
        self.mat = linalg.SparseMat(dst.dimension, src.dimension)
        self.representable = True
        self.defects = []
        delta = delta_lr_table if src.spec.theory == "lr" else delta_3lr_table
        for j, vec in enumerate(src.basis):
            ftab = src.full_table(vec)
            image = delta(src.spec, ftab)
            coords = dst.coords_of_table(image)
            if coords is None:
                self.representable = False
                self.defects.append((j, image))
                continue
            for r, c in enumerate(coords):
                if c:
                    self.mat.set_entry(r, j, c)

    def apply(self, f: Cochain) -> Cochain:
        if not self.representable:
            raise CochainSpaceError("coboundary image leaves the cochain space")
        vec = self.mat.apply({i: c for i, c in enumerate(f.coords) if c})
        coords = [vec.get(i, ZERO) for i in range(self.dst.dimension)]
        return Cochain(self.dst, coords)

    def rank(self):
        return self.mat.rank()


def cochain_basis(spec: CochainSpec) -> CochainBasis:
    return CochainBasis(spec)


def coboundary_matrix(src: CochainBasis, dst: CochainBasis | None = None) -> CoboundaryMatrix:
    if dst is None:
        dst = CochainBasis(src.spec.shifted(1))
    return CoboundaryMatrix(src, dst)


def coboundary_LR(f: Cochain, dst: CochainBasis | None = None) -> Cochain:
    if f.spec.theory != "lr":
        raise ValueError("not an LR cochain")
    if f.spec.module.action_map.is_zero() and f.spec.module.M.dim == 0:
        raise ValueError("module action missing")
    return coboundary_matrix(f.basis, dst).apply(f)


def coboundary_3LR(f: Cochain, dst: CochainBasis | None = None) -> Cochain:
    if f.spec.theory != "3lr":
        raise ValueError("not a 3LR cochain")
    return coboundary_matrix(f.basis, dst).apply(f)


class CohomologyReport:
    """Exact dimension counts at one degree of one complex."""

    __slots__ = ("theory", "degree", "parity", "dim_cochains", "dim_cocycles",
                 "dim_coboundaries", "dim_H", "representable")

    def __init__(self, theory, degree, parity, dim_cochains, dim_cocycles,
                 dim_coboundaries, dim_H, representable):
        self.theory = theory
        self.degree = degree
        self.parity = parity
        self.dim_cochains = dim_cochains
        self.dim_cocycles = dim_cocycles
        self.dim_coboundaries = dim_coboundaries
        self.dim_H = dim_H
        self.representable = representable

    def as_dict(self):
        return {
            "theory": self.theory,
            "degree": self.degree,
            "parity": self.parity,
            "dim_cochains": self.dim_cochains,
            "dim_cocycles": self.dim_cocycles,
            "dim_coboundaries": self.dim_coboundaries,
            "dim_H": self.dim_H,
            "representable": self.representable,
        }

    def __repr__(self):
        return (f"CohomologyReport({self.theory} deg {self.degree} parity {self.parity}: "
                f"Z={self.dim_cocycles} B={self.dim_coboundaries} H={self.dim_H})")


def cohomology_dim(spec: CochainSpec) -> CohomologyReport:
    """Exact cocycle/coboundary/H dimensions at spec's degree and parity.

    When the incoming coboundary is not representable in the cochain basis
    (a documented defect of the literal ternary formula at degree 0 -> 1),
    the coboundary count falls back to the exact dimension of the
    intersection of the raw image span with the cochain space.
    """
    basis = CochainBasis(spec)
    up = CoboundaryMatrix(basis, CochainBasis(spec.shifted(1)))
    dim_cocycles = basis.dimension - up.mat.rank()
    representable = up.representable
    if spec.degree == 0:
        dim_cob = 0
    else:
        down_src = CochainBasis(spec.shifted(-1))
        down = CoboundaryMatrix(down_src, basis)
        if down.representable:
            dim_cob = down.mat.rank()
        else:
            representable = False
            delta = delta_lr_table if spec.theory == "lr" else delta_3lr_table
            all_keys = {}
            vecs = []
            for vec in down_src.basis:
                img = delta(down_src.spec, down_src.full_table(vec))
                vecs.append(img)
                for key in img:
                    all_keys.setdefault(key, len(all_keys))
            ncols = len(all_keys)

            def to_cols(tab):
                return {all_keys[k]: v for k, v in tab.items() if k in all_keys and v}

            space_vecs = [to_cols(t) for t in basis.basis_full_tables()]
            img_ech = linalg.echelon_from_rows([to_cols(v) for v in vecs], ncols)
            sum_ech = linalg.echelon_from_rows(
                [to_cols(v) for v in vecs] + space_vecs, ncols)
            space_rank = linalg.rank_of_rows(space_vecs, ncols)
            dim_cob = img_ech.rank + space_rank - sum_ech.rank
    dim_h = dim_cocycles - dim_cob
    return CohomologyReport(spec.theory, spec.degree, spec.parity, basis.dimension,
                            dim_cocycles, dim_cob, dim_h, representable)


# ---------------------------------------------------------------------------
# cocycle definitions (independent formulas) and the transfer theorems


def _psi_tab(module):
    return table(module.action_map)


def check_1cocycle(nu, S3: ThreeLieRinehartStructure, module) -> CheckReport:
    """The displayed four-term 1-cocycle identity on all basis triples."""
    rep = CheckReport("1-cocycle")
    ftab = nu.table() if isinstance(nu, Cochain) else dict(nu.entries)
    fbar = nu.spec.parity if isinstance(nu, Cochain) else nu.parity
    L, M = S3.L, module.M
    act = _psi_tab(module)
    btab = table(S3.bracket3)
    par = L.par
    for x1, x2, x3 in tuples(L.dim, 3):
        p1, p2, p3 = par(x1), par(x2), par(x3)
        acc = {}
        val = {}
        for m in M.indices():
            c = ftab.get(((x3,), m), ZERO)
            if c:
                daxpy(val, act.get((x1, x2, m), _EMPTY), c)
        daxpy(acc, val, sign(fbar * (p1 + p2)))
        val = {}
        for m in M.indices():
            c = ftab.get(((x2,), m), ZERO)
            if c:
                daxpy(val, act.get((x1, x3, m), _EMPTY), c)
        daxpy(acc, val, sign(p2 * p3 + fbar * (p2 + p3)))
        val = {}
        for m in M.indices():
            c = ftab.get(((x1,), m), ZERO)
            if c:
                daxpy(val, act.get((x2, x3, m), _EMPTY), c)
        daxpy(acc, val, sign((p1 + fbar) * (p2 + p3)))
        for w, cw in btab.get((x1, x2, x3), _EMPTY).items():
            for m in M.indices():
                c = ftab.get(((w,), m), ZERO)
                if c:
                    v = acc.get(m, ZERO) + cw * c
                    if v:
                        acc[m] = v
                    else:
                        del acc[m]
        if acc:
            rep.record("1-cocycle", (x1, x2, x3), Element(M, acc), Element.zero(M))
    return rep


def check_2cocycle(omega, S3: ThreeLieRinehartStructure, module) -> CheckReport:
    """The displayed eight-term 2-cocycle identity on all basis 5-tuples."""
    rep = CheckReport("2-cocycle")
    ftab = omega.table() if isinstance(omega, Cochain) else dict(omega.entries)
    fbar = omega.spec.parity if isinstance(omega, Cochain) else omega.parity
    L, M = S3.L, module.M
    act = _psi_tab(module)
    btab = table(S3.bracket3)
    par = L.par
    for t in tuples(L.dim, 5):
        x1, x2, x3, x4, x5 = t
        p1, p2, p3, p4, p5 = (par(x) for x in t)
        acc = {}

        def psi_f(u, v, args, e):
            val = {}
            for m in M.indices():
                c = ftab.get((args, m), ZERO)
                if c:
                    daxpy(val, act.get((u, v, m), _EMPTY), c)
            daxpy(acc, val, sign(e))

        psi_f(x3, x5, (x1, x2, x4), (fbar + p1 + p2) * (p3 + p5) + p4 * p5)
        psi_f(x4, x5, (x1, x2, x3), (fbar + p1 + p2 + p3) * (p4 + p5))
        psi_f(x1, x2, (x3, x4, x5), fbar * (p1 + p2) + 1)
        psi_f(x3, x4, (x1, x2, x5), (fbar + p1 + p2) * (p3 + p4))

        def f_br(u, v, w, rest_builder, e):
            for ww, cw in btab.get((u, v, w), _EMPTY).items():
                args = rest_builder(ww)
                for m in M.indices():
                    c = ftab.get((args, m), ZERO)
                    if c:
                        vv = acc.get(m, ZERO) + sign(e) * cw * c
                        if vv:
                            acc[m] = vv
                        else:
                            del acc[m]

        f_br(x1, x2, x3, lambda w: (w, x4, x5), 1)
        f_br(x1, x2, x4, lambda w: (x3, w, x5), p3 * (p1 + p2) + 1)
        f_br(x1, x2, x5, lambda w: (x3, x4, w), (p3 + p4) * (p1 + p2) + 1)
        f_br(x3, x4, x5, lambda w: (x1, x2, w), 0)
        if acc:
            rep.record("2-cocycle", t, Element(M, acc), Element.zero(M))
    return rep


def check_tau_compatibility(phi, tau: SuperTrace, S: LieRinehartStructure) -> CheckReport:
    """tau(x) tau(phi(y,z)) - (-1)^(xy) tau(y) tau(phi(x,z))
    + (-1)^(z(x+y)) tau(z) tau(phi(x,y)) = 0 on basis triples."""
    rep = CheckReport("tau-compatibility")
    ftab = phi.table() if isinstance(phi, Cochain) else dict(phi.entries)
    L = S.L
    par = L.par

    def tphi(u, v):
        s = ZERO
        for m, c in ((m, ftab.get(((u, v), m), ZERO)) for m in L.indices()):
            if c:
                s += c * tau.of_basis(m)
        return s

    for x, y, z in tuples(L.dim, 3):
        val = (tau.of_basis(x) * tphi(y, z)
               - sign(par(x) * par(y)) * tau.of_basis(y) * tphi(x, z)
               + sign(par(z) * (par(x) + par(y))) * tau.of_basis(z) * tphi(x, y))
        if val:
            rep.record("tau-compat", (x, y, z), Element(L, {1: val}), Element.zero(L))
    return rep


def transfer_table(ftab, tau: SuperTrace, L, M):
    """tau(x) f(y,z) - (-1)^(xy) tau(y) f(x,z) + (-1)^(z(x+y)) tau(z) f(x,y)
    as a 3-argument value table (the 2-cochain transfer shape)."""
    par = L.par
    out = {}
    for x, y, z in itertools.product(L.indices(), repeat=3):
        acc = {}
        for m in M.indices():
            c = ftab.get(((y, z), m), ZERO)
            if c:
                v = acc.get(m, ZERO) + tau.of_basis(x) * c
                if v:
                    acc[m] = v
                else:
                    acc.pop(m, None)
            c = ftab.get(((x, z), m), ZERO)
            if c:
                v = acc.get(m, ZERO) - sign(par(x) * par(y)) * tau.of_basis(y) * c
                if v:
                    acc[m] = v
                else:
                    acc.pop(m, None)
            c = ftab.get(((x, y), m), ZERO)
            if c:
                v = acc.get(m, ZERO) + sign(par(z) * (par(x) + par(y))) * tau.of_basis(z) * c
                if v:
                    acc[m] = v
                else:
                    acc.pop(m, None)
        for m, c in acc.items():
            out[((x, y, z), m)] = c
    return out


def induce_2cocycle(phi: Cochain, tau: SuperTrace, S3: ThreeLieRinehartStructure,
                    module3, basis3: CochainBasis | None = None) -> Cochain:
    """Transfer a binary 2-cocycle to the induced ternary structure.

    Refused (CochainSpaceError) when phi is not an LR 2-cocycle, fails the
    tau-compatibility hypothesis, or the transferred values leave the
    ternary cochain space.
    """
    spec = phi.spec
    if spec.theory != "lr" or spec.degree != 2:
        raise ValueError("phi must be an LR 2-cochain")
    S = spec.structure
    up = coboundary_matrix(phi.basis)
    img = up.apply(phi)
    if not img.is_zero():
        raise CochainSpaceError("phi is not a 2-cocycle")
    comp = check_tau_compatibility(phi, tau, S)
    if not comp.passed:
        raise CochainSpaceError("phi fails the tau compatibility hypothesis")
    ftab = phi.table()
    out = transfer_table(ftab, tau, S.L, spec.module.M)
    if basis3 is None:
        basis3 = CochainBasis(CochainSpec("3lr", 1, spec.parity, S3, module3,
                                          spec.strict_alternating))
    return Cochain.from_table(basis3, out)


def verify_cob_tau_lemma(phi: Cochain, tau: SuperTrace,
                         S3: ThreeLieRinehartStructure, module3) -> CheckReport:
    """delta_3LR phi = tau-transfer of delta_LR phi, for scalar 1-cochains,
    with delta_3LR taken in the induced structure."""
    rep = CheckReport("cob-tau-lemma")
    spec = phi.spec
    if spec.theory != "lr" or spec.degree != 1:
        raise ValueError("phi must be an LR 1-cochain")
    S = spec.structure
    ftab = phi.table()
    lr_img = delta_lr_table(spec, ftab)
    lhs = delta_3lr_table(CochainSpec("3lr", 0, spec.parity, S3, module3,
                                      spec.strict_alternating), ftab)
    rhs = transfer_table(lr_img, tau, S.L, spec.module.M)
    keys = sorted(set(lhs) | set(rhs))
    M = spec.module.M
    for key in keys:
        a = lhs.get(key, ZERO)
        b = rhs.get(key, ZERO)
        if a != b:
            t, m = key
            rep.record("lemma", t + (m,), Element(M, {m: a} if a else {}),
                       Element(M, {m: b} if b else {}))
    return rep


def transfer_1cocycle(omega: Cochain, tau: SuperTrace,
                      S3: ThreeLieRinehartStructure, module3) -> CheckReport:
    """A scalar LR 1-cocycle kills the induced ternary bracket."""
    spec = omega.spec
    if spec.theory != "lr" or spec.degree != 1:
        raise ValueError("omega must be an LR 1-cochain")
    S = spec.structure
    lr_img = delta_lr_table(spec, omega.table())
    if any(v for v in lr_img.values()):
        raise CochainSpaceError("omega is not an LR 1-cocycle")
    rep = CheckReport("transfer-1-cocycle")
    out = delta_3lr_table(CochainSpec("3lr", 0, spec.parity, S3, module3,
                                      spec.strict_alternating), omega.table())
    M = spec.module.M
    for (t, m), c in sorted(out.items()):
        if c:
            rep.record("transfer", t + (m,), Element(M, {m: c}), Element(M, {}))
    return rep


def same_class(psi1: Cochain, psi2: Cochain):
    """Whether two cocycles differ by a coboundary; returns (bool, witness).

    Solves the exact linear system over the previous cochain space on raw
    value tables, so it works even when the literal coboundary leaves the
    cochain basis unrepresentable.
    """
    if psi1.basis is not psi2.basis and psi1.basis.vars != psi2.basis.vars:
        raise ValueError("cocycles live in different cochain spaces")
    basis = psi1.basis
    spec = basis.spec
    up = coboundary_matrix(basis)
    if not up.apply(psi1).is_zero() or not up.apply(psi2).is_zero():
        raise CochainSpaceError("inputs are not cocycles")
    if spec.degree == 0:
        diff = psi1.sub(psi2)
        return (diff.is_zero(), None if not diff.is_zero() else Cochain.zero(basis))
    prev = CochainBasis(spec.shifted(-1))
    delta = delta_lr_table if spec.theory == "lr" else delta_3lr_table
    images = [delta(prev.spec, prev.full_table(vec)) for vec in prev.basis]
    target = psi2.sub(psi1).table()
    keys = {}
    for img in images:
        for k in img:
            keys.setdefault(k, len(keys))
    for k in target:
        keys.setdefault(k, len(keys))
    rows = []
    rhs = []
    by_key = [{} for _ in keys]
    for j, img in enumerate(images):
        for k, v in img.items():
            by_key[keys[k]][j] = v
    tvec = [ZERO] * len(keys)
    for k, v in target.items():
        tvec[keys[k]] = v
    for r in range(len(keys)):
        rows.append(by_key[r])
        rhs.append(tvec[r])
    sol = linalg.solve(rows, prev.dimension, rhs)
    if sol is None:
        return (False, None)
    witness = Cochain(prev, [sol.get(j, ZERO) for j in range(prev.dimension)])
    return (True, witness)
