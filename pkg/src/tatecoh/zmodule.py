"""Exact linear algebra over Z and finitely generated abelian groups.

Everything runs on Python ints. Smith normal form pivots grow fast, so
fixed-width arithmetic is not safe here; exactness is the whole point.

A finitely generated abelian group is presented as Z^ngens modulo the
integer column span of a relation matrix. Homomorphisms are integer
matrices on generator coordinates, checked to respect relations.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass


class OperationError(ValueError):
    """Precondition failure with a stable machine-readable code.

    Codes like "not-a-subgroup" or "no-extension" survive into CLI
    reports, so keep them short and hyphenated.
    """

    def __init__(self, code: str, message: str = ""):
        super().__init__(f"{code}: {message}" if message else code)
        self.code = code


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = a*x + b*y and g = gcd(a, b) >= 0."""
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return g, x, y


class Mat:
    """Dense integer matrix with an explicit shape.

    Carrying (r, c) separately keeps 0-row and 0-column matrices sane;
    those show up constantly (trivial groups, empty relation sets).
    """

    __slots__ = ("r", "c", "a")

    def __init__(self, r: int, c: int, a: list[list[int]] | None = None):
        if a is None:
            a = [[0] * c for _ in range(r)]
        if len(a) != r or any(len(row) != c for row in a):
            raise ValueError(f"shape mismatch: expected {r}x{c}")
        self.r = r
        self.c = c
        self.a = a

    @staticmethod
    def from_rows(rows: list[list[int]], cols: int | None = None) -> "Mat":
        r = len(rows)
        if cols is None:
            if r == 0:
                raise ValueError("column count needed for a 0-row matrix")
            cols = len(rows[0])
        return Mat(r, cols, [[int(x) for x in row] for row in rows])

    @staticmethod
    def from_cols(cols: list[list[int]], rows: int | None = None) -> "Mat":
        c = len(cols)
        if rows is None:
            if c == 0:
                raise ValueError("row count needed for a 0-column matrix")
            rows = len(cols[0])
        return Mat(rows, c, [[int(col[i]) for col in cols] for i in range(rows)])

    @staticmethod
    def identity(n: int) -> "Mat":
        return Mat(n, n, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @staticmethod
    def zeros(r: int, c: int) -> "Mat":
        return Mat(r, c)

    @staticmethod
    def diagonal(entries: list[int]) -> "Mat":
        n = len(entries)
        return Mat(n, n, [[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    def copy(self) -> "Mat":
        return Mat(self.r, self.c, [row[:] for row in self.a])

    def __eq__(self, other) -> bool:
        return isinstance(other, Mat) and self.r == other.r and self.c == other.c and self.a == other.a

    def __repr__(self) -> str:
        return f"Mat({self.r}x{self.c}, {self.a})"

    def __mul__(self, other: "Mat") -> "Mat":
        if self.c != other.r:
            raise ValueError(f"cannot multiply {self.r}x{self.c} by {other.r}x{other.c}")
        ob = other.a
        out = []
        for row in self.a:
            items = [(x, ob[k]) for k, x in enumerate(row) if x]
            acc = [0] * other.c
            for x, brow in items:
                for j, b in enumerate(brow):
                    if b:
                        acc[j] += x * b
            out.append(acc)
        return Mat(self.r, other.c, out)

    def __add__(self, other: "Mat") -> "Mat":
        if (self.r, self.c) != (other.r, other.c):
            raise ValueError("shape mismatch in addition")
        return Mat(self.r, self.c, [[x + y for x, y in zip(r1, r2)] for r1, r2 in zip(self.a, other.a)])

    def __sub__(self, other: "Mat") -> "Mat":
        return self + other.scale(-1)

    def __neg__(self) -> "Mat":
        return self.scale(-1)

    def scale(self, k: int) -> "Mat":
        return Mat(self.r, self.c, [[k * x for x in row] for row in self.a])

    def vec(self, v: list[int]) -> list[int]:
        if len(v) != self.c:
            raise ValueError(f"vector length {len(v)} does not match {self.r}x{self.c}")
        return [sum(x * y for x, y in zip(row, v) if x and y) for row in self.a]

    def transpose(self) -> "Mat":
        return Mat(self.c, self.r, [[self.a[i][j] for i in range(self.r)] for j in range(self.c)])

    def col(self, j: int) -> list[int]:
        return [row[j] for row in self.a]

    def columns(self) -> list[list[int]]:
        return [self.col(j) for j in range(self.c)]

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.a for x in row)


def hstack(*mats: Mat) -> Mat:
    if not mats:
        raise ValueError("need at least one matrix")
    r = mats[0].r
    if any(m.r != r for m in mats):
        raise ValueError("row counts differ in hstack")
    return Mat(r, sum(m.c for m in mats), [sum((m.a[i] for m in mats), []) for i in range(r)])


def vstack(*mats: Mat) -> Mat:
    if not mats:
        raise ValueError("need at least one matrix")
    c = mats[0].c
    if any(m.c != c for m in mats):
        raise ValueError("column counts differ in vstack")
    return Mat(sum(m.r for m in mats), c, [row[:] for m in mats for row in m.a])


def block_diag(*mats: Mat) -> Mat:
    r = sum(m.r for m in mats)
    c = sum(m.c for m in mats)
    out = Mat.zeros(r, c)
    i0 = j0 = 0
    for m in mats:
        for i in range(m.r):
            out.a[i0 + i][j0:j0 + m.c] = [x for x in m.a[i]]
        i0 += m.r
        j0 += m.c
    return out


def kron(a: Mat, b: Mat) -> Mat:
    out = Mat.zeros(a.r * b.r, a.c * b.c)
    for i1 in range(a.r):
        for j1 in range(a.c):
            x = a.a[i1][j1]
            if not x:
                continue
            for i2 in range(b.r):
                row = out.a[i1 * b.r + i2]
                brow = b.a[i2]
                for j2 in range(b.c):
                    if brow[j2]:
                        row[j1 * b.c + j2] = x * brow[j2]
    return out


def det(m: Mat) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    if m.r != m.c:
        raise ValueError("determinant needs a square matrix")
    n = m.r
    if n == 0:
        return 1
    a = [row[:] for row in m.a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


@dataclass
class SmithForm:
    """u * m * v = s with u, v unimodular and s diagonal.

    Diagonal entries are nonnegative and each divides the next.
    u or v is None when the caller opted out of tracking it.
    """

    u: Mat | None
    s: Mat
    v: Mat | None

    @property
    def diag(self) -> list[int]:
        return [self.s.a[i][i] for i in range(min(self.s.r, self.s.c))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diag if d)


def smith_normal_form(m: Mat, need_u: bool = True, need_v: bool = True) -> SmithForm:
    r, c = m.r, m.c
    s = m.copy()
    a = s.a
    u = Mat.identity(r) if need_u else None
    v = Mat.identity(c) if need_v else None

    def row_combine(t, i, x, y, z, w):
        # rows (t, i) <- (x*t + y*i, z*t + w*i); x*w - y*z = +-1
        for mat in (s, u) if need_u else (s,):
            rt, ri = mat.a[t], mat.a[i]
            for j in range(mat.c):
                rt[j], ri[j] = x * rt[j] + y * ri[j], z * rt[j] + w * ri[j]

    def row_sub(t, i, q):
        # row i -= q * row t
        for mat in (s, u) if need_u else (s,):
            rt, ri = mat.a[t], mat.a[i]
            for j in range(mat.c):
                if rt[j]:
                    ri[j] -= q * rt[j]

    def col_combine(t, j, x, y, z, w):
        for mat in (s, v) if need_v else (s,):
            for row in mat.a:
                rt, rj = row[t], row[j]
                row[t], row[j] = x * rt + y * rj, z * rt + w * rj

    def col_sub(t, j, q):
        for mat in (s, v) if need_v else (s,):
            for row in mat.a:
                if row[t]:
                    row[j] -= q * row[t]

    t = 0
    limit = min(r, c)
    while t < limit:
        # pivot: first unit in the remaining block, else minimal |entry|
        piv = None
        best = None
        for i in range(t, r):
            row = a[i]
            for j in range(t, c):
                e = row[j]
                if e:
                    ae = abs(e)
                    if ae == 1:
                        piv = (i, j)
                        best = 1
                        break
                    if best is None or ae < best:
                        piv = (i, j)
                        best = ae
            if best == 1:
                break
        if piv is None:
            break
        pi, pj = piv
        if pi != t:
            a[t], a[pi] = a[pi], a[t]
            if need_u:
                u.a[t], u.a[pi] = u.a[pi], u.a[t]
        if pj != t:
            for mat in (s, v) if need_v else (s,):
                for row in mat.a:
                    row[t], row[pj] = row[pj], row[t]

        while True:
            for i in range(t + 1, r):
                e = a[i][t]
                if not e:
                    continue
                p = a[t][t]
                if e % p == 0:
                    row_sub(t, i, e // p)
                else:
                    g, x, y = xgcd(p, e)
                    row_combine(t, i, x, y, -(e // g), p // g)
            if any(a[t][j] for j in range(t + 1, c)):
                for j in range(t + 1, c):
                    e = a[t][j]
                    if not e:
                        continue
                    p = a[t][t]
                    if e % p == 0:
                        col_sub(t, j, e // p)
                    else:
                        g, x, y = xgcd(p, e)
                        col_combine(t, j, x, y, -(e // g), p // g)
                if any(a[i][t] for i in range(t + 1, r)):
                    continue
            break

        p = a[t][t]
        bad = None
        if p not in (1, -1):
            for i in range(t + 1, r):
                row = a[i]
                for j in range(t + 1, c):
                    if row[j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
        if bad is not None:
            # fold the offending row into row t and redo this step
            for mat in (s, u) if need_u else (s,):
                rt, rb = mat.a[t], mat.a[bad]
                for j in range(mat.c):
                    rt[j] += rb[j]
            continue
        t += 1

    for i in range(limit):
        if a[i][i] < 0:
            for j in range(c):
                a[i][j] = -a[i][j]
            if need_u:
                urow = u.a[i]
                for j in range(r):
                    urow[j] = -urow[j]
    return SmithForm(u, s, v)


def unimodular_inverse(m: Mat) -> Mat:
    """Inverse of a square matrix with determinant +-1."""
    if m.r != m.c:
        raise ValueError("not square")
    f = smith_normal_form(m)
    if any(d != 1 for d in f.diag) or f.rank != m.r:
        raise ValueError("matrix is not unimodular")
    # u m v = I  =>  m^-1 = v u
    return f.v * f.u


def kernel_basis(m: Mat) -> Mat:
    """Basis of the integer kernel of m, as columns."""
    f = smith_normal_form(m, need_u=False)
    return Mat.from_cols([f.v.col(j) for j in range(f.rank, m.c)], rows=m.c)


def solve(m: Mat, b: list[int]) -> list[int] | None:
    """One integer solution x of m x = b, or None if there is none."""
    f = smith_normal_form(m)
    ub = f.u.vec(b)
    diag = f.diag
    z = [0] * m.c
    for i in range(m.r):
        d = diag[i] if i < len(diag) else 0
        if d:
            if ub[i] % d:
                return None
            z[i] = ub[i] // d
        elif ub[i]:
            return None
    return f.v.vec(z)


def solve_mod(m: Mat, b: list[int], n: int) -> list[int] | None:
    """One solution x of m x = b (mod n), or None."""
    x = solve(hstack(m, Mat.identity(m.r).scale(n)), b)
    if x is None:
        return None
    return [e % n for e in x[: m.c]]


def preimage_lattice(m: Mat, lat: Mat) -> Mat:
    """Generators of the sublattice {x : m x lies in the column span of lat}."""
    if m.r != lat.r:
        raise ValueError("ambient ranks differ")
    k = kernel_basis(hstack(m, lat))
    return Mat(m.c, k.c, [k.a[i][:] for i in range(m.c)])


class Lattice:
    """Integer column span with a factored membership test."""

    def __init__(self, mat: Mat):
        self.mat = mat
        f = smith_normal_form(mat, need_v=False)
        self.u = f.u
        self.diag = f.diag
        self.rank = f.rank

    def contains(self, w: list[int]) -> bool:
        y = self.u.vec(w)
        for i, e in enumerate(y):
            d = self.diag[i] if i < len(self.diag) else 0
            if d:
                if e % d:
                    return False
            elif e:
                return False
        return True


def lattice_eq(a: Mat, b: Mat) -> bool:
    """Do two generating matrices span the same sublattice of Z^r?"""
    if a.r != b.r:
        return False
    la, lb = Lattice(a), Lattice(b)
    return all(la.contains(b.col(j)) for j in range(b.c)) and all(
        lb.contains(a.col(j)) for j in range(a.c)
    )


class FgAbelianGroup:
    """Z^ngens modulo the integer column span of a relation matrix.

    Elements are plain coordinate vectors of length ngens. Two vectors
    represent the same element iff their difference lies in the span of
    the relations; normal_form picks the canonical representative.
    """

    def __init__(self, ngens: int, relations: Mat | list[list[int]] | None = None):
        self.ngens = ngens
        if relations is None:
            rel = Mat.zeros(ngens, 0)
        elif isinstance(relations, Mat):
            rel = relations.copy()
        else:
            rel = Mat.from_rows(relations, cols=0 if not relations or not relations[0] else None)
            if rel.r == 0 and ngens:
                rel = Mat.zeros(ngens, 0)
        if rel.r != ngens:
            raise ValueError("relation matrix needs one row per generator")
        self.relations = rel
        f = smith_normal_form(rel)
        self._u = f.u
        self._u_inv = unimodular_inverse(f.u)
        # one diagonal entry per generator; 0 marks a free coordinate
        self.diag = f.diag + [0] * (ngens - len(f.diag))
        self.torsion_rank = f.rank

    # -- constructors ------------------------------------------------

    @staticmethod
    def free(n: int) -> "FgAbelianGroup":
        return FgAbelianGroup(n)

    @staticmethod
    def trivial() -> "FgAbelianGroup":
        return FgAbelianGroup(0)

    @staticmethod
    def from_invariants(invs: list[int]) -> "FgAbelianGroup":
        """Group with one generator per entry; 0 means an infinite cyclic factor."""
        return FgAbelianGroup(len(invs), Mat.diagonal(list(invs)))

    @staticmethod
    def cyclic(d: int) -> "FgAbelianGroup":
        return FgAbelianGroup.from_invariants([d])

    # -- structure ---------------------------------------------------

    @property
    def free_rank(self) -> int:
        return self.ngens - self.torsion_rank

    def invariants(self) -> list[int]:
        """Invariant factors: torsion entries >= 2 in divisibility order, then a 0 per free factor."""
        return [d for d in self.diag if d >= 2] + [0] * self.free_rank

    def order(self) -> int | None:
        """Number of elements, or None when infinite."""
        if self.free_rank:
            return None
        return math.prod(d for d in self.diag if d)

    def exponent(self) -> int | None:
        if self.free_rank:
            return None
        return math.lcm(*[d for d in self.diag if d]) if self.ngens else 1

    def is_trivial(self) -> bool:
        return self.order() == 1

    # -- elements ----------------------------------------------------

    def zero(self) -> list[int]:
        return [0] * self.ngens

    def normal_form(self, vec: list[int]) -> list[int]:
        """Canonical representative of vec's class, in generator coordinates.

        Staying in generator coordinates keeps the output usable as an
        element: feeding two normal forms back into same_element is sound,
        which would not hold for raw Smith-basis labels.
        """
        y = self._u.vec(vec)
        for i, d in enumerate(self.diag):
            if d:
                y[i] %= d
        return self._u_inv.vec(y)

    def is_zero(self, vec: list[int]) -> bool:
        y = self._u.vec(vec)
        return all((e % d if d else e) == 0 for e, d in zip(y, self.diag))

    def same_element(self, a: list[int], b: list[int]) -> bool:
        return self.is_zero([x - y for x, y in zip(a, b)])

    def element_order(self, vec: list[int]) -> int | None:
        y = self._u.vec(vec)
        k = 1
        for i, d in enumerate(self.diag):
            if d:
                yi = y[i] % d
                k = math.lcm(k, d // math.gcd(d, yi)) if yi else k
            elif y[i]:
                return None
        return k

    def snf_generator(self, i: int) -> list[int]:
        """Generator of the i-th cyclic factor, in original coordinates."""
        return self._u_inv.col(i)

    def invariant_generator(self, k: int) -> list[int]:
        """Generator matching invariants()[k]: torsion factors first, then free."""
        torsion = [i for i, d in enumerate(self.diag) if d >= 2]
        free = [i for i, d in enumerate(self.diag) if d == 0]
        return self.snf_generator((torsion + free)[k])

    def elements(self):
        """All elements of a finite group, in a deterministic order."""
        if self.free_rank:
            raise OperationError("infinite-group", "cannot enumerate an infinite group")
        for y in itertools.product(*[range(d) for d in self.diag]):
            yield self._u_inv.vec(list(y))

    def __repr__(self) -> str:
        return f"FgAbelianGroup(invariants={self.invariants()})"


def same_presentation(a: FgAbelianGroup, b: FgAbelianGroup) -> bool:
    return a.ngens == b.ngens and lattice_eq(a.relations, b.relations)


class GroupHom:
    """Homomorphism of FgAbelianGroups: a matrix on generator coordinates.

    The constructor checks that every source relator maps into the
    target's relation lattice, so the map is well defined on classes.
    Pass check=False only when that is guaranteed by construction.
    """

    def __init__(self, source: FgAbelianGroup, target: FgAbelianGroup,
                 matrix: Mat | list[list[int]], check: bool = True):
        if not isinstance(matrix, Mat):
            matrix = Mat.from_rows(matrix, cols=source.ngens) if target.ngens else Mat.zeros(0, source.ngens)
        if matrix.r != target.ngens or matrix.c != source.ngens:
            raise ValueError(f"hom matrix must be {target.ngens}x{source.ngens}, got {matrix.r}x{matrix.c}")
        self.source = source
        self.target = target
        self.matrix = matrix
        if check:
            for j in range(source.relations.c):
                if not target.is_zero(matrix.vec(source.relations.col(j))):
                    raise OperationError(
                        "not-a-hom",
                        f"source relator {j} does not map into the target relation lattice",
                    )

    def __call__(self, vec: list[int]) -> list[int]:
        return self.matrix.vec(vec)

    def compose(self, other: "GroupHom") -> "GroupHom":
        """self after other."""
        if not same_presentation(other.target, self.source):
            raise ValueError("hom composition mismatch")
        return GroupHom(other.source, self.target, self.matrix * other.matrix, check=False)

    @staticmethod
    def identity(g: FgAbelianGroup) -> "GroupHom":
        return GroupHom(g, g, Mat.identity(g.ngens), check=False)

    @staticmethod
    def zero(source: FgAbelianGroup, target: FgAbelianGroup) -> "GroupHom":
        return GroupHom(source, target, Mat.zeros(target.ngens, source.ngens), check=False)

    def is_zero_hom(self) -> bool:
        return all(self.target.is_zero(self.matrix.col(j)) for j in range(self.matrix.c))

    # -- derived groups ----------------------------------------------

    def kernel(self) -> tuple[FgAbelianGroup, "GroupHom"]:
        """(K, incl) with K the kernel presented on its own generators."""
        gens = preimage_lattice(self.matrix, self.target.relations)
        rels = preimage_lattice(gens, self.source.relations)
        k = FgAbelianGroup(gens.c, rels)
        return k, GroupHom(k, self.source, gens, check=False)

    def image(self) -> tuple[FgAbelianGroup, "GroupHom"]:
        """(I, incl) with I generated by the images of the source generators."""
        rels = preimage_lattice(self.matrix, self.target.relations)
        i = FgAbelianGroup(self.source.ngens, rels)
        return i, GroupHom(i, self.target, self.matrix, check=False)

    def cokernel(self) -> tuple[FgAbelianGroup, "GroupHom"]:
        """(C, proj) with C = target / (image + relations)."""
        c = FgAbelianGroup(self.target.ngens, hstack(self.matrix, self.target.relations))
        return c, GroupHom(self.target, c, Mat.identity(self.target.ngens), check=False)

    def is_injective(self) -> bool:
        k, _ = self.kernel()
        return k.invariants() == []

    def is_surjective(self) -> bool:
        c, _ = self.cokernel()
        return c.invariants() == []

    def is_bijective(self) -> bool:
        return self.is_injective() and self.is_surjective()

    def __repr__(self) -> str:
        return f"GroupHom({self.source!r} -> {self.target!r})"


def subgroup(g: FgAbelianGroup, columns: list[list[int]]) -> tuple[FgAbelianGroup, GroupHom]:
    """Subgroup of g generated by the given element vectors, with its inclusion."""
    mat = Mat.from_cols(columns, rows=g.ngens)
    free = FgAbelianGroup.free(mat.c)
    return GroupHom(free, g, mat, check=False).image()


def quotient(g: FgAbelianGroup, incl: GroupHom) -> tuple[FgAbelianGroup, GroupHom]:
    """g modulo the image of incl; incl must be injective into g."""
    if not same_presentation(incl.target, g):
        raise ValueError("inclusion does not land in the given group")
    if not incl.is_injective():
        raise OperationError("not-a-subgroup", "inclusion map has a nontrivial kernel")
    return incl.cokernel()


@dataclass
class ExactnessReport:
    ok: bool
    joint: int | None = None
    reason: str | None = None
    witness: list[int] | None = None

    def __bool__(self) -> bool:
        return self.ok


def is_exact(homs: list[GroupHom]) -> ExactnessReport:
    """Check image = kernel at every interior joint of a composable chain.

    joint k sits between homs[k] and homs[k+1]. The first failure is
    reported with a witness vector in the middle group's coordinates.
    """
    for k in range(len(homs) - 1):
        f, g = homs[k], homs[k + 1]
        if not same_presentation(f.target, g.source):
            raise OperationError("not-composable", f"chain breaks at joint {k}")
        mid = f.target
        image_lat = hstack(f.matrix, mid.relations)
        kernel_lat = preimage_lattice(g.matrix, g.target.relations)
        lk = Lattice(kernel_lat)
        for j in range(image_lat.c):
            w = image_lat.col(j)
            if not lk.contains(w):
                return ExactnessReport(False, k, "image is not contained in the kernel", w)
        li = Lattice(image_lat)
        for j in range(kernel_lat.c):
            w = kernel_lat.col(j)
            if not li.contains(w):
                return ExactnessReport(False, k, "kernel is larger than the image", w)
    return ExactnessReport(True)


class DualGroup:
    """Hom(base, Z/n), one generator per cyclic factor of base.

    Dual generator j sends the j-th canonical generator of base to
    n // gcd(d_j, n) and the other generators to 0; its order is
    gcd(d_j, n) (with gcd(0, n) = n on free factors). Elements are
    coefficient vectors against these dual generators.
    """

    def __init__(self, base: FgAbelianGroup, n: int):
        if n < 1:
            raise ValueError("modulus must be positive")
        self.base = base
        self.n = n
        self.gen_orders = [math.gcd(d, n) for d in base.diag]
        self.gen_values = [n // o for o in self.gen_orders]
        self.group = FgAbelianGroup(base.ngens, Mat.diagonal(self.gen_orders))

    def reduce(self, w: list[int]) -> list[int]:
        return [x % o for x, o in zip(w, self.gen_orders)]

    def evaluate(self, w: list[int], elem: list[int]) -> int:
        """Value in Z/n of the character w on a base-group element."""
        y = self.base._u.vec(elem)
        return sum(wj * vj * yj for wj, vj, yj in zip(w, self.gen_values, y)) % self.n

    def values_on_snf_generators(self, w: list[int]) -> list[int]:
        return [wj * vj % self.n for wj, vj in zip(w, self.gen_values)]

    def from_snf_values(self, values: list[int]) -> list[int]:
        """Character from its values on the canonical generators of base."""
        w = []
        for vj, d, gv, o in zip(values, self.base.diag, self.gen_values, self.gen_orders):
            if (vj * d) % self.n:
                raise OperationError("not-a-character", "value does not kill the generator's order")
            vj %= self.n
            if vj % gv:
                raise OperationError("not-a-character", "value is not a multiple of the minimal value")
            w.append((vj // gv) % o)
        return w

    def from_generator_values(self, values: list[int]) -> list[int]:
        """Character from its values on the original ngens generators."""
        snf_vals = self.base._u_inv.transpose().vec(values)
        return self.from_snf_values([x % self.n for x in snf_vals])

    def characters(self):
        """Every character, as a coefficient vector, in a deterministic order."""
        for w in itertools.product(*[range(o) for o in self.gen_orders]):
            yield list(w)

    def __repr__(self) -> str:
        return f"DualGroup(mod {self.n}, {self.group!r})"


def dual_hom(f: GroupHom, n: int,
             dual_source: DualGroup | None = None,
             dual_target: DualGroup | None = None) -> GroupHom:
    """Precomposition with f: Hom(target, Z/n) -> Hom(source, Z/n)."""
    dt = dual_target if dual_target is not None else DualGroup(f.target, n)
    ds = dual_source if dual_source is not None else DualGroup(f.source, n)
    src_gen_images = [f(f.source.snf_generator(i)) for i in range(f.source.ngens)]
    cols = []
    for j in range(dt.group.ngens):
        w = [0] * dt.group.ngens
        w[j] = 1
        vals = [dt.evaluate(w, img) for img in src_gen_images]
        cols.append(ds.from_snf_values(vals))
    mat = Mat.from_cols(cols, rows=ds.group.ngens)
    return GroupHom(dt.group, ds.group, mat, check=False)


def extend_character(incl: GroupHom, w: list[int], n: int,
                     dual_source: DualGroup | None = None,
                     dual_target: DualGroup | None = None) -> list[int]:
    """Extend a character of incl.source along incl to incl.target.

    w is a character of the source in DualGroup(source, n) coordinates.
    Returns a character of the target whose pullback along incl is w,
    or raises OperationError("no-extension") when none exists.
    """
    dh = dual_source if dual_source is not None else DualGroup(incl.source, n)
    dg = dual_target if dual_target is not None else DualGroup(incl.target, n)
    h, g = incl.source, incl.target
    # unknowns: coefficients w'_j of the extension against dg's generators;
    # one congruence per canonical generator of the source
    rows = []
    rhs = []
    for i in range(h.ngens):
        y = g._u.vec(incl(h.snf_generator(i)))
        rows.append([dg.gen_values[j] * y[j] % n for j in range(g.ngens)])
        rhs.append(w[i] * dh.gen_values[i] % n)
    mat = Mat.from_rows(rows, cols=g.ngens)
    x = solve_mod(mat, rhs, n)
    if x is None:
        raise OperationError("no-extension", "character does not extend along the inclusion")
    return dg.reduce(x)
