"""Finite groups acting on finitely generated abelian groups.

Groups are multiplication tables with element 0 as the identity; they
stay small (order <= 12 in practice), so closure and validation loops
are cheap. Modules carry one integer action matrix per group element,
checked to respect the relations.
"""

from __future__ import annotations

import itertools
import math

from .zmodule import (
    FgAbelianGroup,
    GroupHom,
    Mat,
    OperationError,
    block_diag,
    hstack,
    kron,
    preimage_lattice,
    subgroup,
    vstack,
)


class FiniteGroup:
    """Group given by its multiplication table; element 0 is the identity."""

    def __init__(self, table: list[list[int]], name: str = ""):
        n = len(table)
        self.table = [list(map(int, row)) for row in table]
        self.n = n
        self.name = name or f"group-of-order-{n}"
        if n == 0:
            raise ValueError("a group needs at least the identity")
        for g in range(n):
            if self.table[0][g] != g or self.table[g][0] != g:
                raise ValueError("element 0 must be the identity")
            if sorted(self.table[g]) != list(range(n)):
                raise ValueError(f"row {g} is not a permutation")
            if sorted(self.table[h][g] for h in range(n)) != list(range(n)):
                raise ValueError(f"column {g} is not a permutation")
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                        raise ValueError("multiplication table is not associative")
        self._inv = [row.index(0) for row in self.table]

    # -- arithmetic ----------------------------------------------------

    def mul(self, g: int, h: int) -> int:
        return self.table[g][h]

    def inv(self, g: int) -> int:
        return self._inv[g]

    def conjugate(self, g: int, by: int) -> int:
        """by * g * by^-1."""
        return self.mul(self.mul(by, g), self.inv(by))

    def power(self, g: int, k: int) -> int:
        if k < 0:
            g, k = self.inv(g), -k
        acc = 0
        for _ in range(k):
            acc = self.mul(acc, g)
        return acc

    def element_order(self, g: int) -> int:
        acc, k = g, 1
        while acc != 0:
            acc = self.mul(acc, g)
            k += 1
        return k

    def elements(self) -> range:
        return range(self.n)

    def is_abelian(self) -> bool:
        return all(self.table[a][b] == self.table[b][a] for a in range(self.n) for b in range(self.n))

    # -- constructors --------------------------------------------------

    @staticmethod
    def trivial() -> "FiniteGroup":
        return FiniteGroup([[0]], name="C1")

    @staticmethod
    def cyclic(n: int) -> "FiniteGroup":
        return FiniteGroup([[(i + j) % n for j in range(n)] for i in range(n)], name=f"C{n}")

    @staticmethod
    def product(a: "FiniteGroup", b: "FiniteGroup") -> "FiniteGroup":
        n = a.n * b.n
        table = [[0] * n for _ in range(n)]
        for i1 in range(a.n):
            for j1 in range(b.n):
                for i2 in range(a.n):
                    for j2 in range(b.n):
                        table[i1 * b.n + j1][i2 * b.n + j2] = a.mul(i1, i2) * b.n + b.mul(j1, j2)
        return FiniteGroup(table, name=f"{a.name}x{b.name}")

    @staticmethod
    def dihedral(n: int) -> "FiniteGroup":
        """Order 2n; element i + n*j is rotation^i reflection^j."""
        size = 2 * n
        table = [[0] * size for _ in range(size)]
        for a in range(n):
            for b in range(2):
                for c in range(n):
                    for d in range(2):
                        rot = (a + (c if b == 0 else -c)) % n
                        table[a + n * b][c + n * d] = rot + n * ((b + d) % 2)
        return FiniteGroup(table, name=f"D{n}")

    # -- structure -----------------------------------------------------

    def closure(self, gens: set[int]) -> list[int]:
        out = {0} | set(gens)
        frontier = list(out)
        while frontier:
            g = frontier.pop()
            for h in list(out):
                for x in (self.mul(g, h), self.mul(h, g), self.inv(g)):
                    if x not in out:
                        out.add(x)
                        frontier.append(x)
        return sorted(out)

    def subgroups(self) -> list[list[int]]:
        """Every subgroup, as a sorted element list, smallest first."""
        found = {(0,)}
        queue = [(0,)]
        while queue:
            h = queue.pop()
            for g in range(1, self.n):
                if g in h:
                    continue
                k = tuple(self.closure(set(h) | {g}))
                if k not in found:
                    found.add(k)
                    queue.append(k)
        return sorted((list(h) for h in found), key=lambda s: (len(s), s))

    def abelianization(self) -> tuple[FgAbelianGroup, "Mat"]:
        """(ab, to_ab) with to_ab a group.n-column matrix sending g to its class."""
        n = self.n
        cols = []
        for g in range(n):
            for h in range(n):
                col = [0] * n
                col[g] += 1
                col[h] += 1
                col[self.mul(g, h)] -= 1
                cols.append(col)
        ab = FgAbelianGroup(n, Mat.from_cols(cols, rows=n))
        return ab, Mat.identity(n)

    def ab_vector(self, g: int) -> list[int]:
        col = [0] * self.n
        col[g] = 1
        return col


class Subgroup:
    """Subgroup of a FiniteGroup with a fixed left transversal.

    transversal[0] is the identity, so the trivial coset represents the
    subgroup itself; index maps below rely on that.
    """

    def __init__(self, group: FiniteGroup, elements: list[int]):
        elements = sorted(set(elements))
        if 0 not in elements:
            raise ValueError("a subgroup contains the identity")
        for a in elements:
            if group.inv(a) not in elements:
                raise ValueError("subgroup is not closed under inverses")
            for b in elements:
                if group.mul(a, b) not in elements:
                    raise ValueError("subgroup is not closed under multiplication")
        self.group = group
        self.elements = elements
        self.pos = {g: i for i, g in enumerate(elements)}
        table = [[self.pos[group.mul(a, b)] for b in elements] for a in elements]
        self.as_group = FiniteGroup(table, name=f"sub{len(elements)}-of-{group.name}")

        reps = []
        seen = set()
        for g in range(group.n):
            if g not in seen:
                reps.append(g)
                for h in elements:
                    seen.add(group.mul(g, h))
        self.transversal = reps
        self._decomp = {}
        for i, r in enumerate(reps):
            for h in elements:
                self._decomp[group.mul(r, h)] = (i, self.pos[h])

    @property
    def index(self) -> int:
        return len(self.transversal)

    def contains(self, g: int) -> bool:
        return g in self.pos

    def decompose(self, g: int) -> tuple[int, int]:
        """(i, h) with g = transversal[i] * elements[h]."""
        return self._decomp[g]

    def embed(self, h_local: int) -> int:
        return self.elements[h_local]

    def restrict(self, g: int) -> int:
        """Local index of a parent element that lies in the subgroup."""
        return self.pos[g]

    def is_normal(self) -> bool:
        return all(
            self.group.conjugate(h, g) in self.pos
            for h in self.elements
            for g in range(self.group.n)
        )


class GroupMap:
    """Homomorphism between finite groups, stored as an image list."""

    def __init__(self, source: FiniteGroup, target: FiniteGroup, images: list[int], check: bool = True):
        if len(images) != source.n:
            raise ValueError("need one image per source element")
        self.source = source
        self.target = target
        self.images = list(images)
        if check:
            if images[0] != 0:
                raise ValueError("identity must map to the identity")
            for a in range(source.n):
                for b in range(source.n):
                    if target.mul(images[a], images[b]) != images[source.mul(a, b)]:
                        raise ValueError("images do not define a homomorphism")

    def __call__(self, g: int) -> int:
        return self.images[g]

    @staticmethod
    def identity(group: FiniteGroup) -> "GroupMap":
        return GroupMap(group, group, list(range(group.n)), check=False)

    def is_surjective(self) -> bool:
        return len(set(self.images)) == self.target.n

    def is_bijective(self) -> bool:
        return self.source.n == self.target.n and self.is_surjective()

    def kernel_elements(self) -> list[int]:
        return [g for g in range(self.source.n) if self.images[g] == 0]

    def inverse(self) -> "GroupMap":
        if not self.is_bijective():
            raise ValueError("only bijective maps invert")
        inv = [0] * self.source.n
        for g, h in enumerate(self.images):
            inv[h] = g
        return GroupMap(self.target, self.source, inv, check=False)

    def compose(self, other: "GroupMap") -> "GroupMap":
        """self after other."""
        if other.target.table != self.source.table:
            raise ValueError("composition mismatch")
        return GroupMap(other.source, self.target,
                        [self.images[other.images[g]] for g in range(other.source.n)],
                        check=False)


def conjugation_map(group: FiniteGroup, by: int) -> GroupMap:
    return GroupMap(group, group, [group.conjugate(g, by) for g in range(group.n)], check=False)


def pullback_module(q: GroupMap, m: GModule) -> GModule:
    """View a module over q's target as one over q's source, acting through q."""
    if m.group.table != q.target.table:
        raise ValueError("module is not over the map's target")
    return GModule(q.source, m.module, [m.act_mat(q(g)) for g in range(q.source.n)],
                   check=False, name=m.name)


def verlagerung(sub: Subgroup) -> GroupHom:
    """Transfer of abelianizations, parent to subgroup, via the fixed transversal."""
    g_ab, _ = sub.group.abelianization()
    h_ab, _ = sub.as_group.abelianization()
    hn = sub.as_group.n
    cols = []
    for g in range(sub.group.n):
        acc = [0] * hn
        for r in sub.transversal:
            _, h = sub.decompose(sub.group.mul(g, r))
            acc[h] += 1
        cols.append(acc)
    # constructor check doubles as the theorem that this is a homomorphism
    return GroupHom(g_ab, h_ab, Mat.from_cols(cols, rows=hn))


class GModule:
    """A finite group acting on a finitely generated abelian group."""

    def __init__(self, group: FiniteGroup, module: FgAbelianGroup,
                 action: list[Mat | list[list[int]]], check: bool = True, name: str = ""):
        if len(action) != group.n:
            raise ValueError("need one action matrix per group element")
        mats = []
        for m in action:
            if not isinstance(m, Mat):
                m = Mat.from_rows(m, cols=module.ngens) if module.ngens else Mat.zeros(0, 0)
            if m.r != module.ngens or m.c != module.ngens:
                raise ValueError("action matrices must be square of size ngens")
            mats.append(m)
        self.group = group
        self.module = module
        self.action = mats
        self.name = name
        if check:
            self._validate()

    def _validate(self):
        mod, grp = self.module, self.group
        ident = Mat.identity(mod.ngens)
        for g in range(grp.n):
            # well defined on classes
            GroupHom(mod, mod, self.action[g])
        for j in range(mod.ngens):
            e = [0] * mod.ngens
            e[j] = 1
            if not mod.same_element(self.action[0].vec(e), e):
                raise OperationError("not-an-action", "identity must act trivially")
        for g in range(grp.n):
            for h in range(grp.n):
                prod = self.action[g] * self.action[h]
                tgt = self.action[grp.mul(g, h)]
                if prod != tgt:
                    for j in range(mod.ngens):
                        if not mod.same_element(prod.col(j), tgt.col(j)):
                            raise OperationError(
                                "not-an-action",
                                f"matrices for {g}*{h} disagree with their product",
                            )

    def act_mat(self, g: int) -> Mat:
        return self.action[g]

    def act(self, g: int, vec: list[int]) -> list[int]:
        return self.action[g].vec(vec)

    def hom(self, g: int) -> GroupHom:
        return GroupHom(self.module, self.module, self.action[g], check=False)

    def __repr__(self) -> str:
        label = self.name or "module"
        return f"GModule({label} over {self.group.name}, invariants={self.module.invariants()})"

    # -- constructors ---------------------------------------------------

    @staticmethod
    def trivial(group: FiniteGroup, module: FgAbelianGroup, name: str = "") -> "GModule":
        ident = Mat.identity(module.ngens)
        return GModule(group, module, [ident] * group.n, check=False, name=name)

    @staticmethod
    def integers(group: FiniteGroup) -> "GModule":
        return GModule.trivial(group, FgAbelianGroup.free(1), name="Z")

    @staticmethod
    def integers_mod(group: FiniteGroup, n: int) -> "GModule":
        return GModule.trivial(group, FgAbelianGroup.cyclic(n), name=f"Z/{n}")


def action_from_generator_matrices(group: FiniteGroup, gens: dict[int, Mat],
                                   module: FgAbelianGroup, check: bool = True,
                                   name: str = "") -> GModule:
    """Spread matrices on a generating set to the whole group by the table."""
    mats: dict[int, Mat] = {0: Mat.identity(module.ngens)}
    frontier = [0]
    while frontier:
        g = frontier.pop()
        for s, m in gens.items():
            h = group.mul(s, g)
            if h not in mats:
                mats[h] = m * mats[g]
                frontier.append(h)
    if len(mats) != group.n:
        raise ValueError("matrices do not cover a generating set")
    return GModule(group, module, [mats[g] for g in range(group.n)], check=check, name=name)


# ------------------------------------------------------------ operations


def invariants(m: GModule) -> tuple[FgAbelianGroup, GroupHom]:
    """Classes fixed by every group element, with the inclusion."""
    mod = m.module
    others = [g for g in range(1, m.group.n)]
    if not others:
        gens = Mat.identity(mod.ngens)
    else:
        ident = Mat.identity(mod.ngens)
        diff = vstack(*[m.act_mat(g) - ident for g in others])
        lat = block_diag(*[mod.relations for _ in others])
        gens = preimage_lattice(diff, lat)
    rels = preimage_lattice(gens, mod.relations)
    inv = FgAbelianGroup(gens.c, rels)
    return inv, GroupHom(inv, mod, gens, check=False)


def coinvariants(m: GModule) -> tuple[FgAbelianGroup, GroupHom]:
    """Largest quotient with trivial action, with the projection."""
    mod = m.module
    ident = Mat.identity(mod.ngens)
    pieces = [mod.relations] + [m.act_mat(g) - ident for g in range(1, m.group.n)]
    co = FgAbelianGroup(mod.ngens, hstack(*pieces))
    return co, GroupHom(mod, co, ident, check=False)


def norm_hom(m: GModule) -> GroupHom:
    """Sum of the action of every group element."""
    total = Mat.zeros(m.module.ngens, m.module.ngens)
    for g in range(m.group.n):
        total = total + m.act_mat(g)
    return GroupHom(m.module, m.module, total, check=False)


def augmentation_submodule(m: GModule) -> tuple[FgAbelianGroup, GroupHom]:
    """Submodule generated by g*x - x, with its inclusion."""
    ident = Mat.identity(m.module.ngens)
    cols = []
    for g in range(1, m.group.n):
        cols.extend((m.act_mat(g) - ident).columns())
    return subgroup(m.module, cols) if cols else subgroup(m.module, [[0] * m.module.ngens])


def restrict_module(m: GModule, sub: Subgroup) -> GModule:
    return GModule(sub.as_group, m.module, [m.act_mat(g) for g in sub.elements],
                   check=False, name=f"{m.name}|{sub.as_group.name}" if m.name else "")


def induce_module(sub: Subgroup, mh: GModule) -> GModule:
    """Module induced from a subgroup module along the fixed transversal.

    Generators are (coset i, generator j); gamma sends the i-th block to
    the j0-th block through the subgroup element with gamma * r_i = r_j0 * h.
    """
    if mh.group.n != sub.as_group.n or mh.group.table != sub.as_group.table:
        raise OperationError("group-mismatch", "module is not over the given subgroup")
    k = sub.index
    d = mh.module.ngens
    module = FgAbelianGroup(k * d, block_diag(*[mh.module.relations for _ in range(k)]))
    grp = sub.group
    action = []
    for g in range(grp.n):
        big = Mat.zeros(k * d, k * d)
        for i, r in enumerate(sub.transversal):
            j0, h = sub.decompose(grp.mul(g, r))
            blk = mh.act_mat(h)
            for a in range(d):
                row = big.a[j0 * d + a]
                brow = blk.a[a]
                for b in range(d):
                    row[i * d + b] = brow[b]
        action.append(big)
    return GModule(grp, module, action, check=False,
                   name=f"Ind({mh.name})" if mh.name else "")


def tensor_modules(m1: GModule, m2: GModule) -> GModule:
    if m1.group is not m2.group and m1.group.table != m2.group.table:
        raise OperationError("group-mismatch", "tensor factors must share the group")
    g1, g2 = m1.module.ngens, m2.module.ngens
    rels = hstack(kron(m1.module.relations, Mat.identity(g2)),
                  kron(Mat.identity(g1), m2.module.relations))
    module = FgAbelianGroup(g1 * g2, rels)
    action = [kron(m1.act_mat(g), m2.act_mat(g)) for g in range(m1.group.n)]
    return GModule(m1.group, module, action, check=False,
                   name=f"({m1.name})x({m2.name})" if m1.name and m2.name else "")


class HomModule(GModule):
    """Hom(x, a) with the conjugation action (g f)(v) = g f(g^-1 v).

    Generators are pairs (i, j): the map sending the i-th canonical
    generator of x to c_ij times the j-th canonical generator of a.
    Representable here only when a side is finite or free; mixed
    infinite sides are refused.
    """

    def __init__(self, mx: GModule, ma: GModule, check: bool = True):
        if mx.group.table != ma.group.table:
            raise OperationError("group-mismatch", "both modules must share the group")
        x, a = mx.module, ma.module
        x_free = x.torsion_rank == 0
        a_free = a.torsion_rank == 0
        x_finite = x.free_rank == 0
        a_finite = a.free_rank == 0
        if not (x_free or a_free or x_finite or a_finite):
            raise OperationError(
                "not-representable",
                "mixed infinite source and target are not supported here",
            )
        self.mx = mx
        self.ma = ma
        pairs = []
        orders = []
        cvals = []
        for i in range(x.ngens):
            d = x.diag[i]
            for j in range(a.ngens):
                e = a.diag[j]
                if d == 0 and e == 0:
                    o, c = 0, 1
                elif d == 0:
                    o, c = e, 1
                elif e == 0:
                    o, c = 1, 0
                else:
                    g_ = math.gcd(d, e)
                    o, c = g_, e // g_
                pairs.append((i, j))
                orders.append(o)
                cvals.append(c)
        self.pairs = pairs
        self.orders = orders
        self.cvals = cvals
        module = FgAbelianGroup(len(pairs), Mat.diagonal(orders))
        grp = mx.group
        action = []
        unit_mats = [self._pair_matrix(p) for p in range(len(pairs))]
        for g in range(grp.n):
            ginv = grp.inv(g)
            cols = []
            for p in range(len(pairs)):
                conj = ma.act_mat(g) * unit_mats[p] * mx.act_mat(ginv)
                cols.append(self._coeffs_of(conj))
            action.append(Mat.from_cols(cols, rows=len(pairs)))
        super().__init__(grp, module, action, check=check,
                         name=f"Hom({mx.name},{ma.name})" if mx.name and ma.name else "")

    def _pair_matrix(self, p: int) -> Mat:
        i, j = self.pairs[p]
        x, a = self.mx.module, self.ma.module
        mid = Mat.zeros(a.ngens, x.ngens)
        mid.a[j][i] = self.cvals[p]
        return a._u_inv * mid * x._u

    def _coeffs_of(self, f: Mat) -> list[int]:
        x, a = self.mx.module, self.ma.module
        snf = a._u * f * x._u_inv
        out = []
        for p, (i, j) in enumerate(self.pairs):
            v = snf.a[j][i]
            e = a.diag[j]
            c = self.cvals[p]
            o = self.orders[p]
            if e:
                v %= e
            if c == 0:
                if v:
                    raise OperationError("not-a-hom", "matrix does not respect torsion")
                out.append(0)
                continue
            if v % c:
                raise OperationError("not-a-hom", "matrix does not respect torsion")
            w = v // c
            out.append(w % o if o else w)
        return out

    def hom_matrix(self, w: list[int]) -> Mat:
        """The actual map x -> a represented by coefficient vector w."""
        x, a = self.mx.module, self.ma.module
        mid = Mat.zeros(a.ngens, x.ngens)
        for p, (i, j) in enumerate(self.pairs):
            mid.a[j][i] = w[p] * self.cvals[p]
        return a._u_inv * mid * x._u

    def coeffs(self, f: Mat) -> list[int]:
        return self._coeffs_of(f)


def hom_modules(mx: GModule, ma: GModule, check: bool = True) -> HomModule:
    return HomModule(mx, ma, check=check)


def dual_torus_points(m: GModule, n: int) -> GModule:
    """(Z/n)^rank with the inverse-transpose action; m must be a lattice."""
    if m.module.torsion_rank != 0:
        raise OperationError("not-a-lattice", "dual torus points need a free module")
    r = m.module.ngens
    module = FgAbelianGroup(r, Mat.diagonal([n] * r))
    action = [m.act_mat(m.group.inv(g)).transpose() for g in range(m.group.n)]
    return GModule(m.group, module, action, check=False,
                   name=f"dual-of-{m.name}(Z/{n})" if m.name else f"dual(Z/{n})")


def direct_sum_modules(m1: GModule, m2: GModule) -> GModule:
    if m1.group.table != m2.group.table:
        raise ValueError("summands must share the group")
    module = FgAbelianGroup(m1.module.ngens + m2.module.ngens,
                            block_diag(m1.module.relations, m2.module.relations))
    action = [block_diag(m1.act_mat(g), m2.act_mat(g)) for g in range(m1.group.n)]
    return GModule(m1.group, module, action, check=False,
                   name=f"{m1.name}+{m2.name}" if m1.name and m2.name else "")


def augmentation_ideal(group: FiniteGroup) -> GModule:
    """Kernel of the augmentation of the group ring, free on (g - e), g != e."""
    r = group.n - 1
    action = []
    for g in range(group.n):
        mat = Mat.zeros(r, r)
        for h in range(1, group.n):
            gh = group.mul(g, h)
            if gh != 0:
                mat.a[gh - 1][h - 1] += 1
            if g != 0:
                mat.a[g - 1][h - 1] -= 1
        action.append(mat)
    return GModule(group, FgAbelianGroup.free(r), action, check=False, name="I")


def regular_module(group: FiniteGroup) -> GModule:
    """The group ring as a module over itself, free on the elements."""
    n = group.n
    action = []
    for g in range(n):
        mat = Mat.zeros(n, n)
        for h in range(n):
            mat.a[group.mul(g, h)][h] = 1
        action.append(mat)
    return GModule(group, FgAbelianGroup.free(n), action, check=False, name="Z[G]")
