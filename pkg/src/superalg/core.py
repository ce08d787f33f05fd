"""Exact scalars, Z2-graded spaces, sparse multilinear maps, Koszul signs.

Everything downstream (structure checkers, cohomology, deformations) is
built on the three value types defined here: GradedSpace, Element and
MultilinearMap.  All coefficients are exact rationals; no float ever
enters any computation.  Values are immutable after construction and all
operations are pure functions.
"""

from fractions import Fraction

Scalar = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def as_scalar(value) -> Fraction:
    """Coerce an int, string 'p/q' or Fraction to an exact rational."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"not an exact scalar: {value!r}")


class GradedSpace:
    """Finite Z2-graded vector space given by an ordered homogeneous basis.

    Basis indices are 1-based; basis vector i has degree parity[i-1].
    """

    __slots__ = ("label", "parity")

    def __init__(self, label: str, parity):
        parity = tuple(int(p) for p in parity)
        if any(p not in (0, 1) for p in parity):
            raise ValueError("parity vector entries must be 0 or 1")
        self.label = label
        self.parity = parity

    @property
    def dim(self) -> int:
        return len(self.parity)

    def indices(self):
        return range(1, len(self.parity) + 1)

    def par(self, i: int) -> int:
        """Degree of basis vector i (1-based)."""
        return self.parity[i - 1]

    def tuple_parity(self, idxs) -> int:
        """Parity of a product/tuple of basis vectors, mod 2."""
        s = 0
        for i in idxs:
            s += self.parity[i - 1]
        return s & 1

    def __eq__(self, other):
        return (
            isinstance(other, GradedSpace)
            and self.label == other.label
            and self.parity == other.parity
        )

    def __hash__(self):
        return hash((self.label, self.parity))

    def __repr__(self):
        return f"GradedSpace({self.label!r}, {list(self.parity)})"


class Element:
    """A vector with sparse rational coordinates in a graded space."""

    __slots__ = ("space", "coeffs")

    def __init__(self, space: GradedSpace, coeffs=None):
        self.space = space
        clean = {}
        for i, c in (coeffs or {}).items():
            c = as_scalar(c)
            if c != 0:
                if not 1 <= i <= space.dim:
                    raise ValueError(f"basis index {i} out of range for {space.label}")
                clean[i] = c
        self.coeffs = clean

    @classmethod
    def zero(cls, space):
        return cls(space, {})

    @classmethod
    def basis(cls, space, i):
        return cls(space, {i: ONE})

    def is_zero(self) -> bool:
        return not self.coeffs

    def homogeneous_parity(self):
        """Parity if homogeneous, else None.  Zero is homogeneous of every
        parity and reported as None as well; use is_zero() to distinguish."""
        parities = {self.space.par(i) for i in self.coeffs}
        if len(parities) == 1:
            return parities.pop()
        return None

    def is_homogeneous(self, p: int) -> bool:
        if self.is_zero():
            return True
        return all(self.space.par(i) == p for i in self.coeffs)

    def add(self, other):
        _same_space(self.space, other.space)
        out = dict(self.coeffs)
        for i, c in other.coeffs.items():
            s = out.get(i, ZERO) + c
            if s:
                out[i] = s
            else:
                out.pop(i, None)
        return Element(self.space, out)

    def sub(self, other):
        return self.add(other.scale(-1))

    def scale(self, k):
        k = as_scalar(k)
        if k == 0:
            return Element.zero(self.space)
        return Element(self.space, {i: c * k for i, c in self.coeffs.items()})

    def __eq__(self, other):
        return (
            isinstance(other, Element)
            and self.space == other.space
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.space, tuple(sorted(self.coeffs.items()))))

    def __repr__(self):
        if not self.coeffs:
            return f"0@{self.space.label}"
        parts = [f"{c}*e{i}" for i, c in sorted(self.coeffs.items())]
        return f"({' + '.join(parts)})@{self.space.label}"


def _same_space(a, b):
    if a != b:
        raise ValueError(f"space mismatch: {a.label} vs {b.label}")


class Permutation:
    """A bijection of 1..k stored as the image sequence.

    images[j-1] is the original position whose entry lands in slot j, so
    applying the permutation to a sequence (x_1..x_k) yields
    (x_images[0], ..., x_images[k-1]).
    """

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(images)}: {images}")
        self.images = images

    @classmethod
    def identity(cls, k):
        return cls(range(1, k + 1))

    @classmethod
    def transposition(cls, k, a, b):
        im = list(range(1, k + 1))
        im[a - 1], im[b - 1] = im[b - 1], im[a - 1]
        return cls(im)

    @property
    def size(self):
        return len(self.images)

    def then(self, other):
        """Rearrange by self first, then by other (sequence composition)."""
        if self.size != other.size:
            raise ValueError("size mismatch")
        return Permutation(tuple(self.images[j - 1] for j in other.images))

    def apply_to(self, seq):
        seq = list(seq)
        if len(seq) != self.size:
            raise ValueError("length mismatch")
        return [seq[i - 1] for i in self.images]

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return f"Permutation({list(self.images)})"


def koszul_sign(perm: Permutation, parities) -> Fraction:
    """Pure Koszul factor for rearranging homogeneous objects.

    parities[i-1] is the degree of the object originally in slot i.  Each
    pair of objects that passes through each other contributes
    (-1)^(p_a p_b); the sign of the permutation itself is not included.
    """
    parities = [int(p) for p in parities]
    if len(parities) != perm.size:
        raise ValueError("parity vector length does not match permutation size")
    im = perm.images
    exp = 0
    for a in range(len(im)):
        for b in range(a + 1, len(im)):
            if im[a] > im[b]:
                exp += parities[im[a] - 1] * parities[im[b] - 1]
    return -ONE if exp & 1 else ONE


def sort_with_koszul(idxs, parities):
    """Stable-sort basis indices ascending, tracking the Koszul factor and
    the permutation sign of the swaps actually performed.

    Returns (sorted_tuple, koszul: +-1 int, sign: +-1 int).  Equal indices
    are never swapped, so the result is deterministic.
    """
    seq = list(idxs)
    pars = list(parities)
    koszul = 1
    sign = 1
    for i in range(1, len(seq)):
        j = i
        while j > 0 and seq[j - 1] > seq[j]:
            if pars[j - 1] & pars[j]:
                koszul = -koszul
            sign = -sign
            seq[j - 1], seq[j] = seq[j], seq[j - 1]
            pars[j - 1], pars[j] = pars[j], pars[j - 1]
            j -= 1
    return tuple(seq), koszul, sign


class CheckReport:
    """Outcome of one axiom/identity check.

    violations is a list of (identity label, basis index tuple, lhs, rhs);
    the check passed iff the list is empty.
    """

    __slots__ = ("name", "violations")

    def __init__(self, name: str, violations=None):
        self.name = name
        self.violations = list(violations or [])

    @property
    def passed(self) -> bool:
        return not self.violations

    def record(self, label, idx_tuple, lhs, rhs):
        self.violations.append((label, tuple(idx_tuple), lhs, rhs))

    def merged_with(self, other):
        rep = CheckReport(self.name, self.violations)
        rep.violations.extend(other.violations)
        return rep

    def summary(self) -> str:
        if self.passed:
            return f"{self.name}: pass"
        head = self.violations[0]
        return (
            f"{self.name}: FAIL ({len(self.violations)} violation(s); "
            f"first: {head[0]} at {head[1]})"
        )

    def __repr__(self):
        return f"CheckReport({self.name!r}, passed={self.passed})"


class MultilinearMap:
    """A k-ary map between graded spaces stored as sparse structure constants.

    entries maps (input index tuple, output index) -> nonzero rational.
    A map of parity p only admits entries with
    parity(out) == p + sum of input parities (mod 2); violating entries are
    rejected at construction unless validate=False (needed to build
    deliberately broken maps for negative tests).
    """

    __slots__ = ("domains", "codomain", "parity", "entries")

    def __init__(self, domains, codomain, parity, entries=None, validate=True):
        self.domains = tuple(domains)
        self.codomain = codomain
        self.parity = int(parity) & 1
        clean = {}
        for key, c in (entries or {}).items():
            idxs, out = key
            idxs = tuple(idxs)
            c = as_scalar(c)
            if c == 0:
                continue
            if len(idxs) != len(self.domains):
                raise ValueError(f"entry {key}: wrong arity")
            for pos, i in enumerate(idxs):
                if not 1 <= i <= self.domains[pos].dim:
                    raise ValueError(f"entry {key}: index {i} out of range in slot {pos + 1}")
            if not 1 <= out <= codomain.dim:
                raise ValueError(f"entry {key}: output index {out} out of range")
            if validate and not self._parity_ok(idxs, out):
                raise ValueError(f"entry {key}: violates declared parity {self.parity}")
            clean[(idxs, out)] = c
        self.entries = clean

    def _parity_ok(self, idxs, out):
        s = self.parity
        for pos, i in enumerate(idxs):
            s += self.domains[pos].par(i)
        return (s & 1) == self.codomain.par(out)

    @property
    def arity(self) -> int:
        return len(self.domains)

    @classmethod
    def zero(cls, domains, codomain, parity=0):
        return cls(domains, codomain, parity, {})

    def is_zero(self) -> bool:
        return not self.entries

    def entry(self, idxs, out) -> Fraction:
        return self.entries.get((tuple(idxs), out), ZERO)

    def apply_basis(self, idxs) -> dict:
        """Value on a basis tuple, as a sparse {out: coeff} dict."""
        idxs = tuple(idxs)
        out = {}
        for (t, o), c in self.entries.items():
            if t == idxs:
                out[o] = c
        return out

    def column(self, idxs) -> Element:
        return Element(self.codomain, self.apply_basis(idxs))

    def evaluate(self, args) -> Element:
        """Multilinear expansion on arbitrary elements."""
        if len(args) != self.arity:
            raise ValueError(f"expected {self.arity} arguments, got {len(args)}")
        for pos, a in enumerate(args):
            _same_space(a.space, self.domains[pos])
        acc = {}
        for (t, o), c in self.entries.items():
            prod = c
            for pos, i in enumerate(t):
                ci = args[pos].coeffs.get(i)
                if ci is None:
                    prod = ZERO
                    break
                prod *= ci
            if prod:
                s = acc.get(o, ZERO) + prod
                if s:
                    acc[o] = s
                else:
                    del acc[o]
        return Element(self.codomain, acc)

    def same_signature(self, other) -> bool:
        return (
            self.domains == other.domains
            and self.codomain == other.codomain
            and self.parity == other.parity
        )

    def add(self, other):
        if self.domains != other.domains or self.codomain != other.codomain:
            raise ValueError("signature mismatch")
        if self.parity != other.parity and not (self.is_zero() or other.is_zero()):
            raise ValueError("parity mismatch")
        out = dict(self.entries)
        for k, c in other.entries.items():
            s = out.get(k, ZERO) + c
            if s:
                out[k] = s
            else:
                del out[k]
        parity = other.parity if self.is_zero() else self.parity
        return MultilinearMap(self.domains, self.codomain, parity, out, validate=False)

    def sub(self, other):
        return self.add(other.scale(-1))

    def scale(self, k):
        k = as_scalar(k)
        if k == 0:
            return MultilinearMap(self.domains, self.codomain, self.parity, {})
        ent = {key: c * k for key, c in self.entries.items()}
        return MultilinearMap(self.domains, self.codomain, self.parity, ent, validate=False)

    def __eq__(self, other):
        return (
            isinstance(other, MultilinearMap)
            and self.domains == other.domains
            and self.codomain == other.codomain
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.domains, self.codomain, tuple(sorted(self.entries.items()))))

    def __repr__(self):
        doms = "x".join(d.label for d in self.domains)
        return (
            f"MultilinearMap({doms}->{self.codomain.label}, parity={self.parity}, "
            f"{len(self.entries)} entries)"
        )


def check_parity_consistency(m: MultilinearMap) -> CheckReport:
    """Every stored entry must respect the declared map parity."""
    rep = CheckReport("parity-consistency")
    for (t, o), c in sorted(m.entries.items()):
        if not m._parity_ok(t, o):
            rep.record("parity", t + (o,), Element(m.codomain, {o: c}), Element.zero(m.codomain))
    return rep


def super_alternating_defect(m: MultilinearMap, positions) -> MultilinearMap:
    """Defect of super skew-symmetry of m in two equal-space slots.

    Returns the map t |-> m(..,x_i,..,x_j,..) + (-1)^(p_i p_j) m(..,x_j,..,x_i,..)
    on basis tuples; it is the zero map iff m is super skew in (i, j).
    """
    i, j = positions
    if i == j or not (1 <= i <= m.arity) or not (1 <= j <= m.arity):
        raise ValueError(f"bad slot pair {positions}")
    if m.domains[i - 1] != m.domains[j - 1]:
        raise ValueError("slots live in different spaces")
    space = m.domains[i - 1]
    ent = {}
    for (t, o), c in m.entries.items():
        ent[(t, o)] = ent.get((t, o), ZERO) + c
        swapped = list(t)
        swapped[i - 1], swapped[j - 1] = swapped[j - 1], swapped[i - 1]
        sign = -ONE if (space.par(t[i - 1]) & space.par(t[j - 1])) else ONE
        key = (tuple(swapped), o)
        ent[key] = ent.get(key, ZERO) + sign * c
    ent = {k: v for k, v in ent.items() if v}
    return MultilinearMap(m.domains, m.codomain, m.parity, ent, validate=False)
