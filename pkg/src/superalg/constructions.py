"""Derived structures: supertrace-induced ternary brackets, binary
reduction at an even element, the A (x) L lift, the L (+) A extension and
the semidirect sum with a module."""

import itertools
from fractions import Fraction

from . import linalg
from .core import ONE, ZERO, CheckReport, Element, GradedSpace, MultilinearMap
from .structures import (
    EndoMap,
    LieRinehartStructure,
    RepresentationAction,
    SuperCommutativeAlgebra,
    ThreeLieRinehartStructure,
    _EMPTY,
    check_3lie_rinehart,
    check_lie_rinehart,
    check_module_3LR,
    daxpy,
    dscale,
    sign,
    table,
    tuples,
)

F = Fraction


class ConstructionRefused(ValueError):
    """A construction precondition failed; .report holds the evidence."""

    def __init__(self, message, report: CheckReport):
        super().__init__(message)
        self.report = report


class SuperTrace:
    """An even linear functional on L, stored by basis values."""

    __slots__ = ("space", "values")

    def __init__(self, space: GradedSpace, values):
        values = [F(v) for v in values]
        if len(values) != space.dim:
            raise ValueError("trace vector length does not match dim L")
        self.space = space
        self.values = tuple(values)

    def of_basis(self, i: int) -> Fraction:
        return self.values[i - 1]

    def of(self, d: dict) -> Fraction:
        return sum((c * self.values[i - 1] for i, c in d.items()), ZERO)

    def is_zero(self):
        return all(v == 0 for v in self.values)

    def __repr__(self):
        return f"SuperTrace({self.space.label}, {[str(v) for v in self.values]})"


def check_supertrace(tau: SuperTrace, S: LieRinehartStructure) -> CheckReport:
    """tau is even and kills every bracket."""
    rep = CheckReport("supertrace")
    L = S.L
    if tau.space != L:
        raise ValueError("trace lives on the wrong space")
    for i in L.indices():
        if L.par(i) == 1 and tau.of_basis(i) != 0:
            rep.record("even", (i,), Element(L, {i: tau.of_basis(i)}), Element.zero(L))
    btab = table(S.bracket)
    for i, j in tuples(L.dim, 2):
        v = tau.of(btab.get((i, j), _EMPTY))
        if v:
            rep.record("kills-brackets", (i, j), Element(L, {1: v}) if L.dim else None,
                       Element.zero(L))
    return rep


def check_trace_module_condition(tau: SuperTrace, S: LieRinehartStructure) -> CheckReport:
    """tau(a x) y = tau(x) (a y) as elements of L, on all basis triples."""
    rep = CheckReport("trace-module-condition")
    L, A = S.L, S.A
    acttab = table(S.action)
    for a in A.space.indices():
        for x in L.indices():
            tax = tau.of(acttab.get((a, x), _EMPTY))
            tx = tau.of_basis(x)
            for y in L.indices():
                lhs = {y: tax} if tax else {}
                rhs = dscale(acttab.get((a, y), _EMPTY), tx)
                diff = dict(lhs)
                daxpy(diff, rhs, -ONE)
                if diff:
                    rep.record("tau-condition", (a, x, y), Element(L, lhs), Element(L, rhs))
    return rep


def supertrace_space(S: LieRinehartStructure, module_condition=True):
    """Basis of the space of supertraces (optionally also satisfying the
    trace module condition), as the exact kernel of a stacked system."""
    L, A = S.L, S.A
    rows = []
    for i in L.indices():
        if L.par(i) == 1:
            rows.append({i - 1: ONE})
    btab = table(S.bracket)
    for i, j in tuples(L.dim, 2):
        row = {}
        for t, c in btab.get((i, j), _EMPTY).items():
            row[t - 1] = row.get(t - 1, ZERO) + c
        rows.append({k: v for k, v in row.items() if v})
    if module_condition:
        acttab = table(S.action)
        for a in A.space.indices():
            for x in L.indices():
                ax = acttab.get((a, x), _EMPTY)
                for y in L.indices():
                    ay = acttab.get((a, y), _EMPTY)
                    # tau(ax) e_y - tau(x) (a y) = 0, one row per component
                    for out in L.indices():
                        row = {}
                        if out == y:
                            for t, c in ax.items():
                                row[t - 1] = row.get(t - 1, ZERO) + c
                        cy = ay.get(out)
                        if cy:
                            row[x - 1] = row.get(x - 1, ZERO) - cy
                        row = {k: v for k, v in row.items() if v}
                        if row:
                            rows.append(row)
    basis = linalg.kernel_basis(rows, L.dim)
    return [SuperTrace(L, [vec.get(i, ZERO) for i in range(L.dim)]) for vec in basis]


def induce_3bracket(S: LieRinehartStructure, tau: SuperTrace) -> MultilinearMap:
    """[x1,x2,x3]_tau = tau(x1)[x2,x3] - (-1)^(x1 x2) tau(x2)[x1,x3]
    + (-1)^(x3(x1+x2)) tau(x3)[x1,x2], assembled on basis triples."""
    L = S.L
    bad = check_supertrace(tau, S)
    if not bad.passed:
        raise ConstructionRefused("tau is not a supertrace", bad)
    btab = table(S.bracket)
    par = L.par
    ent = {}
    for x1, x2, x3 in tuples(L.dim, 3):
        acc = {}
        daxpy(acc, btab.get((x2, x3), _EMPTY), tau.of_basis(x1))
        daxpy(acc, btab.get((x1, x3), _EMPTY),
              -sign(par(x1) * par(x2)) * tau.of_basis(x2))
        daxpy(acc, btab.get((x1, x2), _EMPTY),
              sign(par(x3) * (par(x1) + par(x2))) * tau.of_basis(x3))
        for o, c in acc.items():
            ent[((x1, x2, x3), o)] = c
    return MultilinearMap((L, L, L), L, 0, ent)


def induce_rep(mu: RepresentationAction, tau: SuperTrace) -> RepresentationAction:
    """rho_tau(x, y) = tau(x) mu(y) - (-1)^(x y) tau(y) mu(x)."""
    M = mu.M
    L = mu.action_map.domains[0]
    atab = table(mu.action_map)
    par = L.par
    ent = {}
    for x, y in tuples(L.dim, 2):
        for m in M.indices():
            acc = {}
            daxpy(acc, atab.get((y, m), _EMPTY), tau.of_basis(x))
            daxpy(acc, atab.get((x, m), _EMPTY),
                  -sign(par(x) * par(y)) * tau.of_basis(y))
            for o, c in acc.items():
                ent[((x, y, m), o)] = c
    return RepresentationAction(M, MultilinearMap((L, L, M), M, 0, ent), mu.A_action_on_M)


def induce_3LR(S: LieRinehartStructure, tau: SuperTrace,
               validate=True) -> ThreeLieRinehartStructure:
    """The induced 3-Lie-Rinehart structure (same A and action, ternary
    bracket and anchor from tau).  Refused when S fails the Lie-Rinehart
    axioms or tau fails the supertrace / trace module conditions."""
    if validate:
        rep = check_lie_rinehart(S)
        if not rep.passed:
            raise ConstructionRefused("base structure is not Lie-Rinehart", rep)
        rep = check_supertrace(tau, S)
        if not rep.passed:
            raise ConstructionRefused("tau is not a supertrace", rep)
        rep = check_trace_module_condition(tau, S)
        if not rep.passed:
            raise ConstructionRefused("tau fails the trace module condition", rep)
    bracket3 = induce_3bracket(S, tau)
    mu_rep = RepresentationAction(S.A.space, S.anchor_mu, S.A.product)
    rho = induce_rep(mu_rep, tau).action_map
    return ThreeLieRinehartStructure(S.A, S.L, bracket3, S.action, rho,
                                     f"{S.label}-tau")


def reduce_binary(S3: ThreeLieRinehartStructure, x0: Element) -> LieRinehartStructure:
    """Binary reduction at an even element: [x,y] = [x0,x,y] and
    mu(x) = rho(x0, x)."""
    L = S3.L
    if x0.space != L:
        raise ValueError("x0 lives in the wrong space")
    if not x0.is_homogeneous(0):
        raise ValueError("x0 must be homogeneous even")
    btab = table(S3.bracket3)
    rtab = table(S3.anchor_rho)
    bent = {}
    for x, y in tuples(L.dim, 2):
        acc = {}
        for i, c in x0.coeffs.items():
            daxpy(acc, btab.get((i, x, y), _EMPTY), c)
        for o, c in acc.items():
            bent[((x, y), o)] = c
    aent = {}
    for x in L.indices():
        for a in S3.A.space.indices():
            acc = {}
            for i, c in x0.coeffs.items():
                daxpy(acc, rtab.get((i, x, a), _EMPTY), c)
            for o, c in acc.items():
                aent[((x, a), o)] = c
    bracket = MultilinearMap((L, L), L, 0, bent)
    anchor = MultilinearMap((L, S3.A.space), S3.A.space, 0, aent)
    return LieRinehartStructure(S3.A, L, bracket, S3.action, anchor, f"{S3.label}-red")


def _refuse_unless_valid(S3, validate, what):
    if validate:
        rep = check_3lie_rinehart(S3)
        if not rep.passed:
            raise ConstructionRefused(f"{what}: input fails the 3-Lie-Rinehart axioms", rep)


def tensor_lift(S3: ThreeLieRinehartStructure, validate=True) -> ThreeLieRinehartStructure:
    """The lifted structure on B = A (x) L with the four-term bracket and
    rho'(a1 x1, a2 x2) = (-1)^(a2 x1) a1 a2 rho(x1, x2).

    Basis of B is a_i (x) e_j in lexicographic (i, j) order; the A-action is
    a (b (x) x) = (ab) (x) x.
    """
    _refuse_unless_valid(S3, validate, "tensor_lift")
    A, L = S3.A, S3.L
    dA, dL = A.space.dim, L.dim
    parity = []
    for i in A.space.indices():
        for j in L.indices():
            parity.append((A.space.par(i) + L.par(j)) & 1)
    B = GradedSpace(f"{A.space.label}(x){L.label}", parity)

    def bidx(i, j):
        return (i - 1) * dL + j

    ptab = table(A.product)
    btab = table(S3.bracket3)
    rtab = table(S3.anchor_rho)
    parA, parL = A.space.par, L.par

    def amul(d1, d2):
        out = {}
        for a, ca in d1.items():
            for b, cb in d2.items():
                daxpy(out, ptab.get((a, b), _EMPTY), ca * cb)
        return out

    def embed(a_dict, l_dict, acc, coeff):
        for a, ca in a_dict.items():
            for l, cl in l_dict.items():
                k = bidx(a, l)
                s = acc.get(k, ZERO) + coeff * ca * cl
                if s:
                    acc[k] = s
                else:
                    del acc[k]

    bent = {}
    for a1, a2, a3 in tuples(dA, 3):
        q1, q2, q3 = parA(a1), parA(a2), parA(a3)
        a12 = ptab.get((a1, a2), _EMPTY)
        a23 = ptab.get((a2, a3), _EMPTY)
        a13 = ptab.get((a1, a3), _EMPTY)
        a123 = amul(a12, {a3: ONE})
        for x1, x2, x3 in tuples(dL, 3):
            p1, p2, p3 = parL(x1), parL(x2), parL(x3)
            acc = {}
            s = sign(q2 * p1 + q3 * (p1 + p2))
            embed(a123, btab.get((x1, x2, x3), _EMPTY), acc, s)
            s = sign(q2 * p1)
            embed(amul(a12, rtab.get((x1, x2, a3), _EMPTY)), {x3: ONE}, acc, s)
            s = sign(q3 * p2 + (q1 + p1) * (q2 + q3 + p2 + p3))
            embed(amul(a23, rtab.get((x2, x3, a1), _EMPTY)), {x1: ONE}, acc, s)
            # leading minus restores super skew-symmetry (alternating
            # pattern, same as the L(+)A extension bracket)
            s = -sign(q3 * p1 + (q2 + p2) * (q3 + p3))
            embed(amul(a13, rtab.get((x1, x3, a2), _EMPTY)), {x2: ONE}, acc, s)
            if acc:
                t = (bidx(a1, x1), bidx(a2, x2), bidx(a3, x3))
                for o, c in acc.items():
                    bent[(t, o)] = c
    bracket = MultilinearMap((B, B, B), B, 0, bent)

    aent = {}
    for a in A.space.indices():
        for b in A.space.indices():
            ab = ptab.get((a, b), _EMPTY)
            for x in L.indices():
                t = (a, bidx(b, x))
                for o, c in ab.items():
                    aent[(t, bidx(o, x))] = c
    action = MultilinearMap((A.space, B), B, 0, aent)

    rent = {}
    for a1, a2 in tuples(dA, 2):
        a12 = ptab.get((a1, a2), _EMPTY)
        for x1, x2 in tuples(dL, 2):
            s = sign(parA(a2) * parL(x1))
            for b in A.space.indices():
                acc = {}
                daxpy(acc, amul(a12, rtab.get((x1, x2, b), _EMPTY)), s)
                if acc:
                    t = (bidx(a1, x1), bidx(a2, x2), b)
                    for o, c in acc.items():
                        rent[(t, o)] = c
    anchor = MultilinearMap((B, B, A.space), A.space, 0, rent)
    return ThreeLieRinehartStructure(A, B, bracket, action, anchor, f"{S3.label}-lift")


def trivial_extension(S3: ThreeLieRinehartStructure, validate=True) -> ThreeLieRinehartStructure:
    """The structure on E = L (+) A with bracket ([x,y,z], rho(x,y)c
    - (-1)^(y z) rho(x,z) b + (-1)^(x(y+z)) rho(y,z) a)."""
    _refuse_unless_valid(S3, validate, "trivial_extension")
    A, L = S3.A, S3.L
    dL, dA = L.dim, A.space.dim
    E = GradedSpace(f"{L.label}(+){A.space.label}", L.parity + A.space.parity)

    def lidx(i):
        return i

    def aidx(a):
        return dL + a

    ptab = table(A.product)
    btab = table(S3.bracket3)
    rtab = table(S3.anchor_rho)
    acttab = table(S3.action)
    parL, parA = L.par, A.space.par

    bent = {}
    # basis elements are pure: either (x, 0) with x in L or (0, a) with a in A
    pures = [("L", i) for i in L.indices()] + [("A", a) for a in A.space.indices()]

    def epar(p):
        kind, i = p
        return parL(i) if kind == "L" else parA(i)

    for e1, e2, e3 in itertools.product(pures, repeat=3):
        (k1, i1), (k2, i2), (k3, i3) = e1, e2, e3
        accL = {}
        accA = {}
        if k1 == "L" and k2 == "L" and k3 == "L":
            accL = dict(btab.get((i1, i2, i3), _EMPTY))
        if k1 == "L" and k2 == "L" and k3 == "A":
            accA = dict(rtab.get((i1, i2, i3), _EMPTY))
        if k1 == "L" and k2 == "A" and k3 == "L":
            # -(-1)^(y z) rho(x, z) b with y the A slot
            s = -sign(epar(e2) * epar(e3))
            accA = dscale(rtab.get((i1, i3, i2), _EMPTY), s)
        if k1 == "A" and k2 == "L" and k3 == "L":
            s = sign(epar(e1) * (epar(e2) + epar(e3)))
            accA = dscale(rtab.get((i2, i3, i1), _EMPTY), s)
        if accL or accA:
            t = tuple(lidx(i) if k == "L" else aidx(i) for k, i in (e1, e2, e3))
            for o, c in accL.items():
                bent[(t, o)] = c
            for o, c in accA.items():
                bent[(t, aidx(o))] = c
    bracket = MultilinearMap((E, E, E), E, 0, bent)

    aent = {}
    for a in A.space.indices():
        for i in L.indices():
            for o, c in acttab.get((a, i), _EMPTY).items():
                aent[((a, lidx(i)), lidx(o))] = c
        for b in A.space.indices():
            for o, c in ptab.get((a, b), _EMPTY).items():
                aent[((a, aidx(b)), aidx(o))] = c
    action = MultilinearMap((A.space, E), E, 0, aent)

    rent = {}
    for x, y in tuples(dL, 2):
        for b in A.space.indices():
            for o, c in rtab.get((x, y, b), _EMPTY).items():
                rent[((lidx(x), lidx(y), b), o)] = c
    anchor = MultilinearMap((E, E, A.space), A.space, 0, rent)
    return ThreeLieRinehartStructure(A, E, bracket, action, anchor, f"{S3.label}-ext")


def semidirect_sum(S3: ThreeLieRinehartStructure, psi: RepresentationAction,
                   validate=True) -> ThreeLieRinehartStructure:
    """The structure on L (+) M twisting the bracket by the module action;
    refused when psi fails the module axioms (the forward direction of the
    equivalence; the converse is exercised by validating the output)."""
    if validate:
        rep = check_module_3LR(psi, S3)
        if not rep.passed:
            raise ConstructionRefused("psi is not a left module", rep)
    A, L, M = S3.A, S3.L, psi.M
    dL, dM = L.dim, M.dim
    E = GradedSpace(f"{L.label}(+){M.label}", L.parity + M.parity)

    def lidx(i):
        return i

    def midx(m):
        return dL + m

    btab = table(S3.bracket3)
    stab = table(psi.action_map)
    acttab = table(S3.action)
    mtab = table(psi.A_action_on_M)
    rtab = table(S3.anchor_rho)
    parL = L.par

    bent = {}
    pures = [("L", i) for i in L.indices()] + [("M", m) for m in M.indices()]

    for e1, e2, e3 in itertools.product(pures, repeat=3):
        (k1, i1), (k2, i2), (k3, i3) = e1, e2, e3
        accL = {}
        accM = {}
        if (k1, k2, k3) == ("L", "L", "L"):
            accL = dict(btab.get((i1, i2, i3), _EMPTY))
        elif (k1, k2, k3) == ("L", "L", "M"):
            accM = dict(stab.get((i1, i2, i3), _EMPTY))
        elif (k1, k2, k3) == ("M", "L", "L"):
            s = sign(M.par(i1) * (parL(i2) + parL(i3)))
            accM = dscale(stab.get((i2, i3, i1), _EMPTY), s)
        elif (k1, k2, k3) == ("L", "M", "L"):
            s = sign(M.par(i2) * parL(i3))
            accM = dscale(stab.get((i3, i1, i2), _EMPTY), s)
        if accL or accM:
            t = tuple(lidx(i) if k == "L" else midx(i) for k, i in (e1, e2, e3))
            for o, c in accL.items():
                bent[(t, o)] = c
            for o, c in accM.items():
                bent[(t, midx(o))] = c
    bracket = MultilinearMap((E, E, E), E, 0, bent)

    aent = {}
    for a in A.space.indices():
        for i in L.indices():
            for o, c in acttab.get((a, i), _EMPTY).items():
                aent[((a, lidx(i)), lidx(o))] = c
        for m in M.indices():
            for o, c in mtab.get((a, m), _EMPTY).items():
                aent[((a, midx(m)), midx(o))] = c
    action = MultilinearMap((A.space, E), E, 0, aent)

    rent = {}
    for x, y in tuples(dL, 2):
        for b in A.space.indices():
            for o, c in rtab.get((x, y, b), _EMPTY).items():
                rent[((lidx(x), lidx(y), b), o)] = c
    anchor = MultilinearMap((E, E, A.space), A.space, 0, rent)
    return ThreeLieRinehartStructure(A, E, bracket, action, anchor, f"{S3.label}-sd")
