"""Exact sparse linear algebra over the rationals.

Vectors are dicts {column: Fraction} with 0-based columns; matrices are
column-major lists of such dicts.  Elimination uses exact rational
arithmetic with the lowest-index-first pivot rule, so every result
(echelon form, kernel basis, solutions) is deterministic; the reduced
echelon form itself is unique for a given row space.
"""

from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


class Echelon:
    """Reduced row echelon accumulator over sparse rational rows."""

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows = {}  # pivot col -> fully reduced row dict, pivot coeff 1

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def pivot_cols(self):
        return sorted(self.rows)

    def reduce(self, vec: dict) -> dict:
        """Residual of vec after eliminating all current pivots."""
        v = {c: x for c, x in vec.items() if x}
        for p in sorted(set(v) & set(self.rows)):
            coeff = v.get(p)
            if not coeff:
                continue
            for c, x in self.rows[p].items():
                s = v.get(c, ZERO) - coeff * x
                if s:
                    v[c] = s
                else:
                    v.pop(c, None)
        return v

    def insert(self, vec: dict) -> bool:
        """Reduce vec and absorb it; returns True if the rank grew."""
        v = self.reduce(vec)
        if not v:
            return False
        p = min(v)
        inv = ONE / v[p]
        row = {c: x * inv for c, x in v.items()}
        for q, other in self.rows.items():
            coeff = other.get(p)
            if coeff:
                for c, x in row.items():
                    s = other.get(c, ZERO) - coeff * x
                    if s:
                        other[c] = s
                    else:
                        other.pop(c, None)
        self.rows[p] = row
        return True

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)


def echelon_from_rows(rows, ncols: int) -> Echelon:
    ech = Echelon(ncols)
    for r in rows:
        ech.insert(r)
    return ech


def rank_of_rows(rows, ncols: int) -> int:
    return echelon_from_rows(rows, ncols).rank


def kernel_basis(rows, ncols: int):
    """Basis of the null space of the row system, RREF-normalised.

    One basis vector per free column f (ascending): it has value 1 at f,
    0 at every other free column, so kernel coordinates of any vector can
    be read off at the free columns.
    """
    ech = echelon_from_rows(rows, ncols)
    pivots = ech.pivot_cols
    pivot_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        v = {f: ONE}
        for p in pivots:
            coeff = ech.rows[p].get(f)
            if coeff:
                v[p] = -coeff
        basis.append(v)
    return basis


def kernel_coords(free_cols, vec: dict):
    """Coordinates of vec in a kernel_basis with the given free columns."""
    return [vec.get(f, ZERO) for f in free_cols]


def free_columns(rows, ncols: int):
    ech = echelon_from_rows(rows, ncols)
    pivot_set = set(ech.pivot_cols)
    return [c for c in range(ncols) if c not in pivot_set]


def solve(rows, ncols: int, rhs) -> dict | None:
    """One exact solution of the system (rows | rhs), or None.

    rows[i] . x = rhs[i]; free variables are set to 0, so the answer is
    deterministic.
    """
    aug = Echelon(ncols + 1)
    for r, b in zip(rows, rhs):
        v = dict(r)
        if b:
            v[ncols] = b
        aug.insert(v)
    if ncols in aug.rows:
        return None
    sol = {}
    for p, row in aug.rows.items():
        # free variables are zero, so only the constant column survives
        b = row.get(ncols, ZERO)
        if b:
            sol[p] = b
    return sol


class SparseMat:
    """Column-major sparse rational matrix."""

    __slots__ = ("nrows", "ncols", "cols")

    def __init__(self, nrows: int, ncols: int, cols=None):
        self.nrows = nrows
        self.ncols = ncols
        self.cols = [dict(c) for c in cols] if cols is not None else [dict() for _ in range(ncols)]
        if len(self.cols) != ncols:
            raise ValueError("column count mismatch")

    def set_entry(self, r, c, val):
        if val:
            self.cols[c][r] = val
        else:
            self.cols[c].pop(r, None)

    def entry(self, r, c):
        return self.cols[c].get(r, ZERO)

    def apply(self, vec: dict) -> dict:
        out = {}
        for c, x in vec.items():
            if not x:
                continue
            for r, a in self.cols[c].items():
                s = out.get(r, ZERO) + a * x
                if s:
                    out[r] = s
                else:
                    del out[r]
        return out

    def matmul(self, other: "SparseMat") -> "SparseMat":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        out = SparseMat(self.nrows, other.ncols)
        for j, col in enumerate(other.cols):
            out.cols[j] = self.apply(col)
        return out

    def is_zero(self) -> bool:
        return all(not c for c in self.cols)

    def rank(self) -> int:
        return rank_of_rows(self.cols, self.nrows)

    def column_space(self) -> Echelon:
        return echelon_from_rows(self.cols, self.nrows)

    def nonzero_entries(self):
        for c, col in enumerate(self.cols):
            for r, v in sorted(col.items()):
                yield r, c, v

    def __repr__(self):
        nnz = sum(len(c) for c in self.cols)
        return f"SparseMat({self.nrows}x{self.ncols}, nnz={nnz})"
