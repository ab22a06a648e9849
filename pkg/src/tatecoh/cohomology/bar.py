"""Normalized bar-resolution cochains of a finite group module.

A degree-n cochain assigns a module element to every n-tuple of
non-identity group elements (the normalized convention: anything
touching the identity is zero). Cochains are flat integer vectors,
one module-coordinate block per tuple, tuples in lexicographic order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from ..zmodule import (
    FgAbelianGroup,
    Lattice,
    Mat,
    OperationError,
    block_diag,
    hstack,
    preimage_lattice,
    solve,
)
from ..gaction import GModule, GroupMap, Subgroup, pullback_module, restrict_module


def group_tuples(group, n: int) -> list[tuple[int, ...]]:
    cache = getattr(group, "_tuple_cache", None)
    if cache is None:
        cache = group._tuple_cache = {}
    if n not in cache:
        cache[n] = list(itertools.product(range(1, group.n), repeat=n))
    return cache[n]


class BarComplex:
    """Cochain spaces and coboundaries of one module, cached per degree."""

    def __init__(self, m: GModule):
        self.m = m
        self._index: dict[int, dict] = {}
        self._d: dict[int, Mat] = {}
        self._rel: dict[int, Mat] = {}

    def tuples(self, n: int) -> list[tuple[int, ...]]:
        return group_tuples(self.m.group, n)

    def index(self, n: int) -> dict:
        if n not in self._index:
            self._index[n] = {t: k for k, t in enumerate(self.tuples(n))}
        return self._index[n]

    def dim(self, n: int) -> int:
        return len(self.tuples(n)) * self.m.module.ngens

    def relations(self, n: int) -> Mat:
        """Relation lattice of the degree-n cochain space."""
        if n not in self._rel:
            rel = self.m.module.relations
            count = len(self.tuples(n))
            self._rel[n] = block_diag(*[rel] * count) if count else Mat.zeros(0, 0)
        return self._rel[n]

    def value(self, n: int, vec: list[int], t: tuple[int, ...]) -> list[int]:
        d = self.m.module.ngens
        if any(x == 0 for x in t):
            return [0] * d
        k = self.index(n)[t]
        return vec[k * d: (k + 1) * d]

    def build(self, n: int, values: dict[tuple[int, ...], list[int]]) -> list[int]:
        d = self.m.module.ngens
        out = [0] * self.dim(n)
        idx = self.index(n)
        for t, v in values.items():
            k = idx[t]
            out[k * d: (k + 1) * d] = [int(x) for x in v]
        return out

    def zero(self, n: int) -> list[int]:
        return [0] * self.dim(n)

    def coboundary(self, n: int) -> Mat:
        if n in self._d:
            return self._d[n]
        m = self.m
        grp, d = m.group, m.module.ngens
        ins = self.tuples(n)
        outs = self.tuples(n + 1)
        in_index = self.index(n)
        mat = Mat.zeros(d * len(outs), d * len(ins))

        def add(row0, col0, block, sign):
            for a in range(d):
                row = mat.a[row0 + a]
                brow = block.a[a]
                for b in range(d):
                    if brow[b]:
                        row[col0 + b] += sign * brow[b]

        ident = Mat.identity(d)
        for oi, t in enumerate(outs):
            row0 = oi * d
            add(row0, in_index[t[1:]] * d, m.act_mat(t[0]), 1)
            for i in range(1, n + 1):
                merged = grp.mul(t[i - 1], t[i])
                if merged == 0:
                    continue
                tt = t[: i - 1] + (merged,) + t[i + 1:]
                add(row0, in_index[tt] * d, ident, -1 if i % 2 else 1)
            add(row0, in_index[t[:n]] * d, ident, -1 if (n + 1) % 2 else 1)
        self._d[n] = mat
        return mat

    def is_cocycle(self, n: int, vec: list[int]) -> bool:
        img = self.coboundary(n).vec(vec)
        return Lattice(self.relations(n + 1)).contains(img)

    def cochains_equal(self, n: int, a: list[int], b: list[int]) -> bool:
        diff = [x - y for x, y in zip(a, b)]
        return Lattice(self.relations(n)).contains(diff)


@dataclass
class CohomologyGroup:
    """H^n presented on generating cocycles, with a membership oracle."""

    complex: BarComplex
    degree: int
    group: FgAbelianGroup
    cocycles: Mat
    modout: Mat

    def class_of(self, vec: list[int]) -> list[int]:
        """Coefficients of a cocycle's class against the generators."""
        x = solve(hstack(self.cocycles, self.modout), vec)
        if x is None:
            raise OperationError("not-a-cocycle", f"vector is not a degree-{self.degree} cocycle")
        return self.group.normal_form(x[: self.cocycles.c])

    def representative(self, coeffs: list[int]) -> list[int]:
        return self.cocycles.vec(coeffs)

    def generator(self, k: int = 0) -> list[int]:
        """Cocycle representing the generator of the k-th invariant factor."""
        return self.cocycles.vec(self.group.invariant_generator(k))

    def is_zero_class(self, vec: list[int]) -> bool:
        return self.group.is_zero(self.class_of(vec))

    def same_class(self, a: list[int], b: list[int]) -> bool:
        return self.group.same_element(self.class_of(a), self.class_of(b))

    def class_order(self, vec: list[int]) -> int | None:
        return self.group.element_order(self.class_of(vec))


def cohomology(m: GModule, n: int, complex: BarComplex | None = None,
               max_degree: int = 3) -> CohomologyGroup:
    """H^n(group, m) from the normalized bar resolution; 0 <= n <= max_degree.

    The bound exists because cochain spaces grow like (|group|-1)^n; raise
    it explicitly when a larger degree is really wanted.
    """
    if n < 0:
        raise OperationError("unsupported-degree", "bar cochains start in degree 0")
    if n > max_degree:
        raise OperationError("degree-too-large", f"degree {n} exceeds the bound {max_degree}")
    cx = complex if complex is not None else BarComplex(m)
    cocycles = preimage_lattice(cx.coboundary(n), cx.relations(n + 1))
    pieces = [cx.relations(n)]
    if n >= 1:
        pieces.append(cx.coboundary(n - 1))
    modout = hstack(*pieces)
    group = FgAbelianGroup(cocycles.c, preimage_lattice(cocycles, modout))
    return CohomologyGroup(cx, n, group, cocycles, modout)


class TwoCocycle:
    """A normalized 2-cocycle, the glue datum of a group extension."""

    def __init__(self, m: GModule, vec: list[int], check: bool = True):
        self.m = m
        self.complex = BarComplex(m)
        self.vec = [int(x) for x in vec]
        if len(self.vec) != self.complex.dim(2):
            raise ValueError("cocycle vector has the wrong length")
        if check and not self.complex.is_cocycle(2, self.vec):
            raise OperationError("not-a-cocycle", "2-cocycle identity fails")

    def __call__(self, g: int, h: int) -> list[int]:
        return self.complex.value(2, self.vec, (g, h))

    @staticmethod
    def zero(m: GModule) -> "TwoCocycle":
        return TwoCocycle(m, BarComplex(m).zero(2), check=False)

    @staticmethod
    def carry(group, sigma: int = 1) -> "TwoCocycle":
        """The overflow cocycle of a cyclic group on trivial integers.

        With every element written as a power of sigma, the value on
        (sigma^i, sigma^j) is the carry (i + j) // order. Its class
        generates H^2(group, Z) = Z/order.
        """
        h = group.n
        logs = {}
        g, k = 0, 0
        while True:
            logs[g] = k
            g = group.mul(g, sigma)
            k += 1
            if g == 0:
                break
        if len(logs) != h:
            raise OperationError("not-a-cocycle", "element does not generate the group")
        m = GModule.integers(group)
        values = {(a, b): [(logs[a] + logs[b]) // h]
                  for a in range(1, h) for b in range(1, h)}
        return TwoCocycle(m, BarComplex(m).build(2, values))


# ------------------------------------------------------- cochain functors


def restrict_cochain(m: GModule, sub: Subgroup, n: int, vec: list[int]) -> list[int]:
    """Pull a degree-n cochain back to a subgroup's complex."""
    cx = BarComplex(m)
    rx = BarComplex(restrict_module(m, sub))
    out = []
    for t in rx.tuples(n):
        out.extend(cx.value(n, vec, tuple(sub.embed(h) for h in t)))
    return out


def inflate_cochain(q: GroupMap, m: GModule, n: int, vec: list[int]) -> list[int]:
    """Pull a cochain on q's target back along a surjection of groups.

    The result lives on the complex of pullback_module(q, m); entries
    whose image touches the identity become zero, which is exactly the
    normalized convention.
    """
    cx = BarComplex(m)
    big = BarComplex(pullback_module(q, m))
    out = []
    for t in big.tuples(n):
        out.extend(cx.value(n, vec, tuple(q(g) for g in t)))
    return out


def corestrict_cochain(sub: Subgroup, m: GModule, n: int, vec: list[int]) -> list[int]:
    """Transfer a cochain from a subgroup's complex up to the parent group.

    vec is a cochain of restrict_module(m, sub). With the fixed left
    transversal r_i, each parent tuple accumulates r_j0 * u(h_1..h_n)
    where j_k tracks the coset walk gamma_k^-1 * j_(k-1) and
    h_k = r_(j_(k-1))^-1 gamma_k r_(j_k) lies in the subgroup.
    """
    grp = m.group
    cx = BarComplex(m)
    rx = BarComplex(restrict_module(m, sub))
    d = m.module.ngens
    out = []
    reps = sub.transversal
    for t in cx.tuples(n):
        acc = [0] * d
        for j0 in range(len(reps)):
            hs = []
            j = j0
            ok = True
            for g in t:
                jn, _ = sub.decompose(grp.mul(grp.inv(g), reps[j]))
                h = grp.mul(grp.mul(grp.inv(reps[j]), g), reps[jn])
                if not sub.contains(h):
                    raise AssertionError("transversal walk left the subgroup")
                hs.append(sub.restrict(h))
                j = jn
            if any(h == 0 for h in hs):
                continue
            val = m.act(reps[j0], rx.value(n, vec, tuple(hs)))
            acc = [a + b for a, b in zip(acc, val)]
        out.extend(acc)
    return out


# ------------------------------------------------------------ cup product


class BilinearPairing:
    """Group-equivariant bilinear map m1 x m2 -> m3.

    matrix has m3.ngens rows and m1.ngens * m2.ngens columns; column
    i * m2.ngens + j is the value on (e_i, f_j).
    """

    def __init__(self, m1: GModule, m2: GModule, m3: GModule,
                 matrix: Mat | list[list[int]], check: bool = True):
        n1, n2, n3 = m1.module.ngens, m2.module.ngens, m3.module.ngens
        if not isinstance(matrix, Mat):
            matrix = Mat.from_rows(matrix, cols=n1 * n2) if n3 else Mat.zeros(0, n1 * n2)
        if matrix.r != n3 or matrix.c != n1 * n2:
            raise ValueError("pairing matrix shape mismatch")
        self.m1, self.m2, self.m3 = m1, m2, m3
        self.matrix = matrix
        if check:
            self._validate()

    def _validate(self):
        m1, m2, m3 = self.m1, self.m2, self.m3
        n2 = m2.module.ngens
        # respects relations on either side
        for rel, side in ((m1.module.relations, 0), (m2.module.relations, 1)):
            for jr in range(rel.c):
                col = rel.col(jr)
                for k in range(m2.module.ngens if side == 0 else m1.module.ngens):
                    if side == 0:
                        e2 = [0] * m2.module.ngens
                        e2[k] = 1
                        v = self.apply(col, e2)
                    else:
                        e1 = [0] * m1.module.ngens
                        e1[k] = 1
                        v = self.apply(e1, col)
                    if not m3.module.is_zero(v):
                        raise OperationError("not-bilinear", "pairing does not kill relations")
        for g in range(m1.group.n):
            for i in range(m1.module.ngens):
                e1 = [0] * m1.module.ngens
                e1[i] = 1
                for j in range(n2):
                    e2 = [0] * n2
                    e2[j] = 1
                    lhs = self.apply(m1.act(g, e1), m2.act(g, e2))
                    rhs = m3.act(g, self.apply(e1, e2))
                    if not m3.module.same_element(lhs, rhs):
                        raise OperationError("not-bilinear", "pairing is not equivariant")

    def apply(self, v1: list[int], v2: list[int]) -> list[int]:
        n2 = self.m2.module.ngens
        out = [0] * self.m3.module.ngens
        for i, a in enumerate(v1):
            if not a:
                continue
            for j, b in enumerate(v2):
                if not b:
                    continue
                col = i * n2 + j
                for r in range(self.m3.module.ngens):
                    x = self.matrix.a[r][col]
                    if x:
                        out[r] += a * b * x
        return out

    @staticmethod
    def scalar(mz: GModule, m: GModule) -> "BilinearPairing":
        """Multiplication pairing of a rank-one trivial module against m."""
        if mz.module.ngens != 1:
            raise ValueError("left side must have a single generator")
        return BilinearPairing(mz, m, m, Mat.identity(m.module.ngens), check=False)


def cup_product(pairing: BilinearPairing, p: int, q: int,
                c1: list[int], c2: list[int]) -> list[int]:
    """(c1 cup c2)(g_1..g_(p+q)) = pair(c1(g_1..g_p), g_1..g_p . c2(rest))."""
    m1, m2 = pairing.m1, pairing.m2
    grp = m1.group
    cx1, cx2 = BarComplex(m1), BarComplex(m2)
    out = []
    for t in group_tuples(grp, p + q):
        left, right = t[:p], t[p:]
        prefix = 0
        for g in left:
            prefix = grp.mul(prefix, g)
        v1 = cx1.value(p, c1, left)
        v2 = m2.act(prefix, cx2.value(q, c2, right))
        out.extend(pairing.apply(v1, v2))
    return out
