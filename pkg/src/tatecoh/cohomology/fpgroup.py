"""Group extensions glued by a 2-cocycle, and their low-degree cohomology.

An extension of a finite group by a finitely generated module is handled
through its presentation: module generators, one lift per non-identity
group element, and optionally one Frobenius letter generating a semidirect
factor of the integers. First cohomology with finite coefficients becomes
exact linear algebra on generator values.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from ..zmodule import (
    FgAbelianGroup,
    GroupHom,
    Mat,
    OperationError,
    block_diag,
    hstack,
    preimage_lattice,
    solve,
    solve_mod,
    vstack,
)
from ..gaction import FiniteGroup, GModule, GroupMap, Subgroup, verlagerung
from .bar import TwoCocycle


def invert_matrix_mod(mat: Mat, n: int) -> Mat:
    """Inverse of a square integer matrix modulo n, or raise."""
    cols = []
    for j in range(mat.r):
        e = [0] * mat.r
        e[j] = 1
        x = solve_mod(mat, e, n)
        if x is None:
            raise OperationError("invalid-twist", f"matrix is singular modulo {n}")
        cols.append([v % n for v in x])
    return Mat.from_cols(cols, rows=mat.r)


class ExtensionGroup:
    """Extension of the cocycle's group by its module, with multiplication

    (a, g)(b, h) = (a + g.b + u(g, h), gh). Elements are pairs of a module
    coordinate vector and a group element index.
    """

    def __init__(self, u: TwoCocycle, check: bool = True):
        self.cocycle = u
        self.kernel = u.m
        self.base = u.m.group
        self._finite_model = None
        if check:
            self._spot_check_associativity()

    def _spot_check_associativity(self):
        mod = self.kernel.module
        order = mod.order()
        if order is not None and order * self.base.n <= 24:
            elems = [(tuple(a), g) for a in mod.elements() for g in range(self.base.n)]
            triples = itertools.product(elems, repeat=3)
        else:
            rng = random.Random(11)
            def rand_elem():
                return (tuple(rng.randrange(-2, 3) for _ in range(mod.ngens)),
                        rng.randrange(self.base.n))
            triples = [(rand_elem(), rand_elem(), rand_elem()) for _ in range(50)]
        for x, y, z in triples:
            if not self.same_element(self.mul(self.mul(x, y), z),
                                     self.mul(x, self.mul(y, z))):
                raise OperationError("not-a-cocycle", "extension multiplication is not associative")

    # -- arithmetic on pairs ---------------------------------------------

    def identity(self):
        return (tuple([0] * self.kernel.module.ngens), 0)

    def lift(self, g: int):
        return (tuple([0] * self.kernel.module.ngens), g)

    def include(self, a_vec):
        return (tuple(int(x) for x in a_vec), 0)

    def project(self, x) -> int:
        return x[1]

    def kernel_part(self, x):
        if x[1] != 0:
            raise ValueError("element is not in the kernel")
        return list(x[0])

    def mul(self, x, y):
        a, g = x
        b, h = y
        gb = self.kernel.act(g, list(b))
        u = self.cocycle(g, h)
        return (tuple(p + q + r for p, q, r in zip(a, gb, u)), self.base.mul(g, h))

    def inv(self, x):
        a, g = x
        gi = self.base.inv(g)
        u = self.cocycle(g, gi)
        back = self.kernel.act(gi, [p + q for p, q in zip(a, u)])
        return (tuple(-v for v in back), gi)

    def same_element(self, x, y):
        if x[1] != y[1]:
            return False
        return self.kernel.module.same_element(list(x[0]), list(y[0]))

    def order(self) -> int | None:
        a = self.kernel.module.order()
        return None if a is None else a * self.base.n

    def as_finite_group(self):
        """(FiniteGroup, elements, index) for a finite extension.

        Elements are normal-form pairs; the index maps a normalized pair
        to its position.
        """
        if self._finite_model is not None:
            return self._finite_model
        mod = self.kernel.module
        if mod.order() is None:
            raise OperationError("module-not-finite", "extension has infinite kernel")
        elems = [(tuple(int(v) for v in a), g)
                 for g in range(self.base.n) for a in mod.elements()]

        def key(x):
            return (tuple(mod.normal_form(list(x[0]))), x[1])

        index = {key(e): k for k, e in enumerate(elems)}
        table = [[index[key(self.mul(x, y))] for y in elems] for x in elems]
        self._finite_model = (FiniteGroup(table, name="extension"), elems, index, key)
        return self._finite_model

    def coefficients_over_base(self, m: GModule) -> GModule:
        """Accept coefficients over the base group or over the finite model.

        A module over the finite model must restrict trivially to the
        kernel; it is then rewritten as a module over the base group.
        """
        if m.group.n == self.base.n and m.group.table == self.base.table:
            return m
        grp, elems, index, key = self.as_finite_group()
        if m.group.n != grp.n or m.group.table != grp.table:
            raise OperationError("group-mismatch", "coefficients live over an unrelated group")
        mod = self.kernel.module
        ident = Mat.identity(m.module.ngens)
        for a in mod.elements():
            act = m.act_mat(index[key((tuple(a), 0))])
            for j in range(m.module.ngens):
                if not m.module.same_element(act.col(j), ident.col(j)):
                    raise OperationError(
                        "kernel-acts-nontrivially",
                        "coefficients do not factor through the quotient")
        mats = [m.act_mat(index[key(self.lift(g))]) for g in range(self.base.n)]
        return GModule(self.base, m.module, mats)


class FormationTwist:
    """Automorphism data (phi on the group, phi on the module, a shift)
    defining x = (a, g) -> (phi_a(a) + shift(phi_g(g)), phi_g(g)) on an
    extension. Used as the Frobenius of a Weil-group model.
    """

    def __init__(self, ext: ExtensionGroup, base_map: GroupMap,
                 kernel_map: Mat | list[list[int]], shift: list[int] | None = None,
                 check: bool = True):
        k = ext.kernel.module.ngens
        if not isinstance(kernel_map, Mat):
            kernel_map = Mat.from_rows(kernel_map, cols=k) if k else Mat.zeros(0, 0)
        self.ext = ext
        self.base_map = base_map
        self.kernel_map = kernel_map
        cx = ext.cocycle.complex
        self.shift = list(shift) if shift is not None else cx.zero(1)
        if len(self.shift) != cx.dim(1):
            raise ValueError("shift must be a degree-1 cochain of the kernel")
        if check:
            self._validate()

    def _validate(self):
        ext, phi = self.ext, self.base_map
        grp, mod = ext.base, ext.kernel.module
        if phi.source.table != grp.table or phi.target.table != grp.table:
            raise OperationError("invalid-twist", "base map must be a self-map of the group")
        if not phi.is_bijective():
            raise OperationError("invalid-twist", "base map must be an automorphism")
        a = self.kernel_map
        try:
            GroupHom(mod, mod, a)
        except OperationError as err:
            raise OperationError("invalid-twist", f"kernel map: {err}") from None
        cx = ext.cocycle.complex
        for g in range(grp.n):
            lhs = a * ext.kernel.act_mat(g)
            rhs = ext.kernel.act_mat(phi(g)) * a
            for j in range(mod.ngens):
                if not mod.same_element(lhs.col(j), rhs.col(j)):
                    raise OperationError("invalid-twist",
                                         "kernel map is not equivariant through the base map")
        for g in range(grp.n):
            for h in range(grp.n):
                want = a.vec(ext.cocycle(g, h))
                pg, ph = phi(g), phi(h)
                got = list(ext.cocycle(pg, ph))
                s = cx.value(1, self.shift, (ph,))
                got = [x + y for x, y in zip(got, ext.kernel.act(pg, s))]
                s = cx.value(1, self.shift, (grp.mul(pg, ph),))
                got = [x - y for x, y in zip(got, s)]
                s = cx.value(1, self.shift, (pg,))
                got = [x + y for x, y in zip(got, s)]
                if not mod.same_element(want, got):
                    raise OperationError("invalid-twist",
                                         "twist does not intertwine the cocycle")

    @staticmethod
    def identity(ext: ExtensionGroup) -> "FormationTwist":
        return FormationTwist(ext, GroupMap.identity(ext.base),
                              Mat.identity(ext.kernel.module.ngens), check=False)

    def apply(self, x):
        a, g = x
        pg = self.base_map(g)
        out = self.kernel_map.vec(list(a))
        s = self.ext.cocycle.complex.value(1, self.shift, (pg,))
        return (tuple(p + q for p, q in zip(out, s)), pg)


@dataclass
class WModelFrobenius:
    """Frobenius letter of a Weil-group model: a twist of the extension
    plus its action on the coefficient module."""

    twist: FormationTwist
    on_coefficients: Mat

    def validate_against(self, m: GModule):
        t = self.on_coefficients
        if t.r != m.module.ngens or t.c != m.module.ngens:
            raise ValueError("coefficient Frobenius has the wrong shape")
        GroupHom(m.module, m.module, t)
        phi = self.twist.base_map
        for g in range(m.group.n):
            lhs = t * m.act_mat(g)
            rhs = m.act_mat(phi(g)) * t
            for j in range(m.module.ngens):
                if not m.module.same_element(lhs.col(j), rhs.col(j)):
                    raise OperationError(
                        "invalid-twist",
                        "coefficient Frobenius is not compatible with the group action")


# -------------------------------------------------- presentation plumbing


class _Presentation:
    """Generators and relator words of an extension (optionally with a
    Frobenius letter), plus the coefficient action per generator."""

    def __init__(self, ext: ExtensionGroup, m: GModule,
                 frobenius: WModelFrobenius | None = None):
        self.ext = ext
        self.m = m
        grp = ext.base
        k = ext.kernel.module.ngens
        self.n_kernel = k
        self.gen_count = k + (grp.n - 1) + (1 if frobenius else 0)
        self.frobenius = frobenius
        d = m.module.ngens
        exp = m.module.exponent()

        acts, invs = [], []
        for i in range(k):
            acts.append(Mat.identity(d))
            invs.append(Mat.identity(d))
        for g in range(1, grp.n):
            acts.append(m.act_mat(g))
            invs.append(m.act_mat(grp.inv(g)))
        if frobenius:
            t = frobenius.on_coefficients
            acts.append(t)
            if exp is None:
                raise OperationError("module-not-finite", "Frobenius needs finite coefficients")
            invs.append(invert_matrix_mod(t, exp))
        self.acts, self.invs = acts, invs
        self.relators = self._build_relators()

    def t_index(self, g: int) -> int:
        if g == 0:
            raise ValueError("the identity has no lift generator")
        return self.n_kernel + g - 1

    def kernel_word(self, vec: list[int]):
        return [(i, int(v)) for i, v in enumerate(vec) if v]

    def _build_relators(self):
        ext, grp = self.ext, self.ext.base
        u = ext.cocycle
        rel = []
        a_rel = ext.kernel.module.relations
        for j in range(a_rel.c):
            rel.append(self.kernel_word(a_rel.col(j)))
        for g in range(1, grp.n):
            for h in range(1, grp.n):
                gh = grp.mul(g, h)
                word = [(self.t_index(g), 1), (self.t_index(h), 1)]
                if gh != 0:
                    word.append((self.t_index(gh), -1))
                word += [(i, -v) for i, v in self.kernel_word(u(g, h))]
                rel.append(word)
        for g in range(1, grp.n):
            for i in range(self.n_kernel):
                e = [0] * self.n_kernel
                e[i] = 1
                moved = ext.kernel.act(g, e)
                word = [(self.t_index(g), 1), (i, 1), (self.t_index(g), -1)]
                word += [(j, -v) for j, v in self.kernel_word(moved)]
                rel.append(word)
        if self.frobenius:
            tw = self.frobenius.twist
            fi = self.gen_count - 1
            for i in range(self.n_kernel):
                moved = tw.kernel_map.col(i)
                word = [(fi, 1), (i, 1), (fi, -1)]
                word += [(j, -v) for j, v in self.kernel_word(moved)]
                rel.append(word)
            cx = ext.cocycle.complex
            for g in range(1, grp.n):
                pg = tw.base_map(g)
                word = [(fi, 1), (self.t_index(g), 1), (fi, -1)]
                if pg != 0:
                    word.append((self.t_index(pg), -1))
                shift = cx.value(1, tw.shift, (pg,))
                word += [(j, -v) for j, v in self.kernel_word(shift)]
                rel.append(word)
        return rel

    def _geom_sum(self, gen: int, e: int) -> Mat:
        """Matrix with z(gen^e) = (this) . z(gen)."""
        d = self.m.module.ngens
        if e == 0:
            return Mat.zeros(d, d)
        p = self.acts[gen] if e > 0 else self.invs[gen]
        acc = Mat.zeros(d, d)
        step = Mat.identity(d) if e > 0 else p
        for _ in range(abs(e)):
            acc = acc + step
            step = step * p
        return acc if e > 0 else -acc

    def _power(self, gen: int, e: int) -> Mat:
        d = self.m.module.ngens
        p = self.acts[gen] if e >= 0 else self.invs[gen]
        out = Mat.identity(d)
        for _ in range(abs(e)):
            out = out * p
        return out

    def word_matrix(self, word) -> Mat:
        """d x (d * gen_count) matrix evaluating a cocycle on the word."""
        d = self.m.module.ngens
        blocks = [Mat.zeros(d, d) for _ in range(self.gen_count)]
        prefix = Mat.identity(d)
        for gen, e in word:
            blocks[gen] = blocks[gen] + prefix * self._geom_sum(gen, e)
            prefix = prefix * self._power(gen, e)
        return hstack(*blocks)

    def evaluate(self, z: list[int], word) -> list[int]:
        return self.word_matrix(word).vec(z)


class FpCohomologyGroup:
    """H^1 of a presented extension group, on generator-value vectors."""

    def __init__(self, pres: _Presentation, group: FgAbelianGroup,
                 cocycles: Mat, modout: Mat):
        self.presentation = pres
        self.group = group
        self.cocycles = cocycles
        self.modout = modout

    def class_of(self, vec: list[int]) -> list[int]:
        x = solve(hstack(self.cocycles, self.modout), vec)
        if x is None:
            raise OperationError("not-a-cocycle", "vector violates a relator equation")
        return self.group.normal_form(x[: self.cocycles.c])

    def representative(self, coeffs: list[int]) -> list[int]:
        return self.cocycles.vec(coeffs)

    def generator(self, k: int = 0) -> list[int]:
        return self.cocycles.vec(self.group.invariant_generator(k))

    def is_zero_class(self, vec: list[int]) -> bool:
        return self.group.is_zero(self.class_of(vec))

    def same_class(self, a: list[int], b: list[int]) -> bool:
        return self.group.same_element(self.class_of(a), self.class_of(b))

    def value_on_kernel_gen(self, vec: list[int], i: int) -> list[int]:
        d = self.presentation.m.module.ngens
        return vec[i * d: (i + 1) * d]

    def value_on_lift(self, vec: list[int], g: int) -> list[int]:
        d = self.presentation.m.module.ngens
        i = self.presentation.t_index(g)
        return vec[i * d: (i + 1) * d]

    def evaluate(self, vec: list[int], word) -> list[int]:
        return self.presentation.evaluate(vec, word)


def h1_fp_group(ext: ExtensionGroup, m: GModule,
                frobenius: WModelFrobenius | None = None) -> FpCohomologyGroup:
    """H^1 of the extension (or its Frobenius semidirect product) with
    finite coefficients acted through the base group."""
    m = ext.coefficients_over_base(m)
    if m.module.order() is None:
        raise OperationError("module-not-finite", "coefficients must be finite")
    if frobenius is not None:
        frobenius.validate_against(m)
    pres = _Presentation(ext, m, frobenius)
    d = m.module.ngens
    if pres.relators:
        stacked = vstack(*[pres.word_matrix(w) for w in pres.relators])
        target_rel = block_diag(*[m.module.relations] * len(pres.relators))
        cocycles = preimage_lattice(stacked, target_rel)
    else:
        cocycles = Mat.identity(d * pres.gen_count)
    cob_cols = []
    for j in range(d):
        e = [0] * d
        e[j] = 1
        col = []
        for gen in range(pres.gen_count):
            moved = pres.acts[gen].vec(e)
            col.extend(p - q for p, q in zip(moved, e))
        cob_cols.append(col)
    cob = Mat.from_cols(cob_cols, rows=d * pres.gen_count)
    modout = hstack(block_diag(*[m.module.relations] * pres.gen_count), cob)
    group = FgAbelianGroup(cocycles.c, preimage_lattice(cocycles, modout))
    return FpCohomologyGroup(pres, group, cocycles, modout)


def frobenius_endo_on_h1(h1: FpCohomologyGroup,
                         frobenius: WModelFrobenius) -> GroupHom:
    """Endomorphism of H^1 induced by a Frobenius twist.

    Sends [z] to [x -> T^-1 z(twist(x))]; its fixed classes are exactly
    the Frobenius-fixed classes, with no inversion of the twist needed.
    """
    pres = h1.presentation
    if pres.frobenius is not None:
        raise ValueError("H^1 already includes the Frobenius letter")
    ext, m = pres.ext, pres.m
    tw = frobenius.twist
    frobenius.validate_against(m)
    exp = m.module.exponent()
    t_inv = invert_matrix_mod(frobenius.on_coefficients, exp)
    d = m.module.ngens
    cx = ext.cocycle.complex
    rows = []
    for i in range(pres.n_kernel):
        word = [(j, v) for j, v in pres.kernel_word(tw.kernel_map.col(i))]
        rows.append(t_inv * pres.word_matrix(word))
    for g in range(1, ext.base.n):
        pg = tw.base_map(g)
        word = pres.kernel_word(cx.value(1, tw.shift, (pg,)))
        if pg != 0:
            word = word + [(pres.t_index(pg), 1)]
        rows.append(t_inv * pres.word_matrix(word))
    e_mat = vstack(*rows)
    cols = [h1.class_of(e_mat.vec(h1.cocycles.col(k))) for k in range(h1.cocycles.c)]
    return GroupHom(h1.group, h1.group, Mat.from_cols(cols, rows=h1.group.ngens))


# --------------------------------------------------------- corestriction


def cor_hom_level(ext: ExtensionGroup, f: Mat | list[list[int]], m: GModule,
                  section_offsets: dict[int, list[int]] | None = None) -> list[int]:
    """Corestrict a module map kernel -> coefficients to a 1-cocycle.

    f maps the kernel module to m's module; the value on x is
    sum over gamma of gamma . f(kernel part of s(gamma)^-1 x s(q(x)^-1 gamma))
    with s the chosen section. Returns generator values for h1_fp_group's
    presentation of the extension (without Frobenius letter).
    """
    m = ext.coefficients_over_base(m)
    grp = ext.base
    k, d = ext.kernel.module.ngens, m.module.ngens
    if not isinstance(f, Mat):
        f = Mat.from_rows(f, cols=k) if d else Mat.zeros(0, k)
    GroupHom(ext.kernel.module, m.module, f)

    def section(g):
        if section_offsets and g in section_offsets:
            return (tuple(int(v) for v in section_offsets[g]), g)
        return ext.lift(g)

    def value_at(x):
        rho = ext.project(x)
        acc = [0] * d
        for g in range(grp.n):
            other = grp.mul(grp.inv(rho), g)
            y = ext.mul(ext.inv(section(g)), ext.mul(x, section(other)))
            a = ext.kernel_part(y)
            acc = [p + q for p, q in zip(acc, m.act(g, f.vec(a)))]
        return acc

    out = []
    for i in range(k):
        e = [0] * k
        e[i] = 1
        out.extend(value_at(ext.include(e)))
    for g in range(1, grp.n):
        out.extend(value_at(ext.lift(g)))
    pres = _Presentation(ext, m)
    for word in pres.relators:
        if not m.module.is_zero(pres.evaluate(out, word)):
            raise OperationError("not-a-cocycle", "corestriction output fails a relator")
    return out


# ------------------------------------------------------------- transfer


class SubExtension:
    """Finite-index subgroup of an extension: the preimage of a subgroup
    of the base, intersected with a finite-index stable sublattice of the
    kernel."""

    def __init__(self, ext: ExtensionGroup, sub: Subgroup,
                 kernel_incl: GroupHom | None = None):
        if sub.group.table != ext.base.table:
            raise OperationError("group-mismatch", "subgroup is not in the base group")
        self.ext = ext
        self.sub = sub
        mod = ext.kernel.module
        if kernel_incl is None:
            kernel_incl = GroupHom.identity(mod)
        if kernel_incl.target.ngens != mod.ngens:
            raise OperationError("not-a-subgroup", "kernel inclusion targets the wrong module")
        if not kernel_incl.is_injective():
            raise OperationError("not-a-subgroup", "kernel inclusion is not injective")
        self.kernel_incl = kernel_incl
        cok_group, _ = kernel_incl.cokernel()
        if cok_group.order() is None:
            raise OperationError("infinite-index", "kernel sublattice has infinite index")
        self.coker = cok_group
        self.kernel_cosets = [[int(v) for v in b] for b in cok_group.elements()]
        self._coset_index = {tuple(cok_group.normal_form(b)): tuple(b)
                             for b in self.kernel_cosets}
        self._validate_stability()
        self._ab = None

    def _sub_coords(self, a_vec):
        x = solve(hstack(self.kernel_incl.matrix, self.ext.kernel.module.relations), a_vec)
        if x is None:
            raise OperationError("not-a-subgroup", "element is outside the kernel sublattice")
        return x[: self.kernel_incl.source.ngens]

    def _validate_stability(self):
        # the sublattice must be stable under the whole base group so the
        # product transversal (kernel cosets) x (base transversal) covers
        ext, sub = self.ext, self.sub
        incl = self.kernel_incl
        for g in range(ext.base.n):
            for j in range(incl.matrix.c):
                self._sub_coords(ext.kernel.act(g, incl.matrix.col(j)))
        for g in sub.elements:
            for h in sub.elements:
                self._sub_coords(list(ext.cocycle(g, h)))

    def contains(self, x) -> bool:
        if not self.sub.contains(self.ext.project(x)):
            return False
        try:
            self._sub_coords(list(x[0]))
        except OperationError:
            return False
        return True

    def index(self) -> int:
        return self.sub.index * len(self.kernel_cosets)

    def abelianization(self):
        """(group, to_ab) where to_ab maps a subgroup element to its class."""
        if self._ab is not None:
            return self._ab
        ext, sub = self.ext, self.sub
        incl = self.kernel_incl
        k = incl.source.ngens
        hn = len(sub.elements)
        ngens = k + hn - 1

        def t_slot(h_local):
            return k + h_local - 1

        cols = []
        a_rel = incl.source.relations
        for j in range(a_rel.c):
            cols.append(list(a_rel.col(j)) + [0] * (hn - 1))
        for hi in range(1, hn):
            g = sub.elements[hi]
            for j in range(k):
                moved = self._sub_coords(ext.kernel.act(g, incl.matrix.col(j)))
                col = [m - (1 if i == j else 0) for i, m in enumerate(moved)]
                cols.append(col + [0] * (hn - 1))
        for hi in range(1, hn):
            for hj in range(1, hn):
                g, h = sub.elements[hi], sub.elements[hj]
                u = self._sub_coords(list(ext.cocycle(g, h)))
                col = [-v for v in u] + [0] * (hn - 1)
                col[t_slot(hi)] += 1
                col[t_slot(hj)] += 1
                prod_local = sub.restrict(ext.base.mul(g, h))
                if prod_local != 0:
                    col[t_slot(prod_local)] -= 1
                cols.append(col)
        group = FgAbelianGroup(ngens, Mat.from_cols(cols, rows=ngens))

        def to_ab(x):
            a, g = x
            if not self.sub.contains(g):
                raise OperationError("not-a-subgroup", "element is outside the subgroup")
            vec = self._sub_coords(list(a)) + [0] * (hn - 1)
            local = self.sub.restrict(g)
            if local != 0:
                vec[t_slot(local)] += 1
            return vec

        self._ab = (group, to_ab)
        return self._ab

    def transversal_elements(self):
        for r in self.sub.transversal:
            for b in self.kernel_cosets:
                yield (tuple(b), r)

    def coset_rep(self, y):
        """Representative of y's left coset, from the fixed transversal.

        Writing y = (ya, r*gamma), the coset (b, r)*self contains y exactly
        when ya - u(r, gamma) = b modulo the sublattice.
        """
        ya, rho = y
        j, h_local = self.sub.decompose(rho)
        r = self.sub.transversal[j]
        gamma = self.sub.elements[h_local]
        shift = [p - q for p, q in zip(ya, self.ext.cocycle(r, gamma))]
        b = self._coset_index[tuple(self.coker.normal_form(list(shift)))]
        return (b, r)


def transfer(source, sub, x):
    """Verlagerung into the abelianization of a finite-index subgroup.

    source is a FiniteGroup with sub a Subgroup (classical transfer), or
    an ExtensionGroup with sub a SubExtension (presentation-level).
    Returns coordinates in the subgroup's abelianization.
    """
    if isinstance(source, FiniteGroup):
        return verlagerung(sub)(source.ab_vector(x))
    ext: ExtensionGroup = source
    ab_group, to_ab = sub.abelianization()
    total = [0] * ab_group.ngens
    for c in sub.transversal_elements():
        y = ext.mul(x, c)
        rep = sub.coset_rep(y)
        h = ext.mul(ext.inv(rep), y)
        total = [p + q for p, q in zip(total, to_ab(h))]
    return total
