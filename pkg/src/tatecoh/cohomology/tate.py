"""Tate cohomology in degrees -2 and up, with the canonical-class toolkit.

Degrees >= 1 reuse the bar-resolution machinery; degree 0 is invariants
modulo norms, degree -1 is the norm kernel modulo the augmentation
piece, and degree -2 is supported for trivial integer coefficients only,
where it is the abelianized group. On top sit the class-level
restriction, corestriction and inflation maps, the pairing map sending a
group element to the summed cocycle values, the transgression of an
invariant character, the dimension-shift square with its explicit
coboundary witness, and a class-formation checker that audits every
subgroup at once.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..zmodule import (
    FgAbelianGroup,
    GroupHom,
    Mat,
    OperationError,
    hstack,
    preimage_lattice,
    solve,
)
from ..gaction import (
    FiniteGroup,
    GModule,
    GroupMap,
    HomModule,
    Subgroup,
    invariants,
    norm_hom,
    pullback_module,
    restrict_module,
    tensor_modules,
    verlagerung,
)
from .bar import (
    BarComplex,
    CohomologyGroup,
    cohomology,
    corestrict_cochain,
    inflate_cochain,
    restrict_cochain,
)
from .fpgroup import ExtensionGroup


def is_trivial_integers(m: GModule) -> bool:
    """Infinite cyclic with every group element acting as the identity."""
    if m.module.invariants() != [0]:
        return False
    ident = Mat.identity(m.module.ngens)
    return all(
        m.module.same_element(m.act_mat(g).col(j), ident.col(j))
        for g in range(m.group.n)
        for j in range(m.module.ngens)
    )


class TateCohomology:
    """One Tate group with class arithmetic on its natural carriers.

    Carriers by degree: cochain vectors for degree >= 1, module vectors
    for degrees 0 and -1, abelianized-group vectors for degree -2.
    """

    def __init__(self, m: GModule, degree: int):
        self.m = m
        self.degree = degree
        self._inner: CohomologyGroup | None = None
        if degree >= 1:
            self._inner = cohomology(m, degree)
            self.group = self._inner.group
            return
        if degree == 0:
            _, incl = invariants(m)
            self.gens = incl.matrix
            self.modout = hstack(m.module.relations, norm_hom(m).matrix)
        elif degree == -1:
            self.gens = preimage_lattice(norm_hom(m).matrix, m.module.relations)
            ident = Mat.identity(m.module.ngens)
            aug = hstack(*[m.act_mat(g) - ident for g in range(m.group.n)])
            self.modout = hstack(m.module.relations, aug)
        elif degree == -2:
            if not is_trivial_integers(m):
                raise OperationError(
                    "unsupported-degree",
                    "degree -2 needs trivial integer coefficients")
            self.group, _ = m.group.abelianization()
            return
        else:
            raise OperationError("unsupported-degree", f"degree {degree} is below -2")
        self.group = FgAbelianGroup(self.gens.c, preimage_lattice(self.gens, self.modout))

    def class_of(self, vec: list[int]) -> list[int]:
        if self._inner is not None:
            return self._inner.class_of(vec)
        if self.degree == -2:
            return self.group.normal_form(vec)
        x = solve(hstack(self.gens, self.modout), vec)
        if x is None:
            raise OperationError("not-a-cocycle", "vector is outside the degree's kernel")
        return self.group.normal_form(x[: self.gens.c])

    def representative(self, coeffs: list[int]) -> list[int]:
        if self._inner is not None:
            return self._inner.representative(coeffs)
        if self.degree == -2:
            return list(coeffs)
        return self.gens.vec(coeffs)

    def generator(self, k: int = 0) -> list[int]:
        return self.representative(self.group.invariant_generator(k))

    def is_zero_class(self, vec: list[int]) -> bool:
        return self.group.is_zero(self.class_of(vec))

    def same_class(self, a: list[int], b: list[int]) -> bool:
        return self.group.same_element(self.class_of(a), self.class_of(b))

    def class_order(self, vec: list[int]) -> int | None:
        return self.group.element_order(self.class_of(vec))


def tate_cohomology(m: GModule, i: int) -> TateCohomology:
    return TateCohomology(m, i)


# ------------------------------------------------- class-level maps


def restriction_class(sub: Subgroup, m: GModule, i: int, vec: list[int]) -> list[int]:
    """Restrict a degree-i class carrier from the parent to the subgroup."""
    if i >= 1:
        return restrict_cochain(m, sub, i, vec)
    if i == 0:
        return list(vec)
    if i == -1:
        out = [0] * m.module.ngens
        for r in sub.transversal:
            moved = m.act(m.group.inv(r), list(vec))
            out = [a + b for a, b in zip(out, moved)]
        return out
    if i == -2:
        return verlagerung(sub)(list(vec))
    raise OperationError("unsupported-degree", f"no class-level restriction at {i}")


def corestriction_class(sub: Subgroup, m: GModule, i: int, vec: list[int]) -> list[int]:
    """Push a degree-i class carrier from the subgroup up to the parent."""
    if i >= 1:
        return corestrict_cochain(sub, m, i, vec)
    if i == 0:
        out = [0] * m.module.ngens
        for r in sub.transversal:
            moved = m.act(r, list(vec))
            out = [a + b for a, b in zip(out, moved)]
        return out
    if i == -1:
        return list(vec)
    if i == -2:
        out = [0] * sub.group.n
        for h_local, mult in enumerate(vec):
            out[sub.embed(h_local)] += mult
        return out
    raise OperationError("unsupported-degree", f"no class-level corestriction at {i}")


def descend_module(q: GroupMap, m: GModule) -> GModule:
    """Rewrite a module over q's source as one over q's target.

    Every element of q's kernel must act as the identity; otherwise the
    action does not factor and "coefficient-not-fixed" is raised.
    """
    if m.group.table != q.source.table:
        raise OperationError("group-mismatch", "module is not over the map's source")
    if not q.is_surjective():
        raise ValueError("descending needs a surjective map")
    ident = Mat.identity(m.module.ngens)
    for k in q.kernel_elements():
        mat = m.act_mat(k)
        for j in range(m.module.ngens):
            if not m.module.same_element(mat.col(j), ident.col(j)):
                raise OperationError("coefficient-not-fixed",
                                     "the kernel moves the coefficients")
    pre = {}
    for g in range(q.source.n):
        pre.setdefault(q(g), g)
    return GModule(q.target, m.module,
                   [m.act_mat(pre[t]) for t in range(q.target.n)],
                   check=False, name=m.name)


def inflation_class(q: GroupMap, m: GModule, i: int, vec: list[int]) -> list[int]:
    """Inflate a degree-i cocycle along the quotient map q.

    m lives over q's source; vec is a cocycle over the quotient with the
    same (kernel-fixed) coefficients. The result is a cocycle over the
    source, directly usable with m's own bar complex.
    """
    if i not in (1, 2):
        raise OperationError("unsupported-degree", f"no class-level inflation at {i}")
    small = descend_module(q, m)
    return inflate_cochain(q, small, i, vec)


# ------------------------------------------------- canonical-class maps


def nakayama_delta(ext: ExtensionGroup) -> GroupHom:
    """The degree -2 to 0 pairing with the extension's cocycle.

    Sends the class of g to the class of sum over tau of u(tau, g) inside
    invariants-mod-norms. The homomorphism check in the constructor is
    the statement that this is well defined on the abelianization.
    """
    m = ext.cocycle.m
    grp = m.group
    h0 = tate_cohomology(m, 0)
    ab, _ = grp.abelianization()
    cols = []
    for g in range(grp.n):
        total = [0] * m.module.ngens
        for tau in range(grp.n):
            total = [a + b for a, b in zip(total, ext.cocycle(tau, g))]
        cols.append(h0.class_of(total))
    return GroupHom(ab, h0.group, Mat.from_cols(cols, rows=h0.group.ngens))


def transgression(ext: ExtensionGroup, alpha: Mat | list[list[int]],
                  m: GModule) -> tuple[CohomologyGroup, list[int]]:
    """Class of -(alpha composed with the extension cocycle) in H^2.

    alpha is an invariant homomorphism from the kernel module to m. For
    finite extensions the defining identity is re-verified: the cochain
    x -> alpha(kernel coordinate of x) on the extension has coboundary
    equal to the inflation of the returned cocycle.
    """
    a_mod = ext.kernel
    if not isinstance(alpha, Mat):
        alpha = Mat.from_rows(alpha, cols=a_mod.module.ngens) if m.module.ngens \
            else Mat.zeros(0, a_mod.module.ngens)
    GroupHom(a_mod.module, m.module, alpha)
    if m.group.table != ext.base.table:
        raise OperationError("group-mismatch", "coefficients are over the wrong group")
    for g in range(ext.base.n):
        lhs = m.act_mat(g) * alpha
        rhs = alpha * a_mod.act_mat(g)
        for j in range(a_mod.module.ngens):
            if not m.module.same_element(lhs.col(j), rhs.col(j)):
                raise OperationError("not-invariant",
                                     "character is moved by the group action")
    cx = BarComplex(m)
    values = {}
    for g, h in cx.tuples(2):
        values[(g, h)] = [-v for v in alpha.vec(ext.cocycle(g, h))]
    vec = cx.build(2, values)
    h2 = cohomology(m, 2, complex=cx)
    cls = h2.class_of(vec)
    _verify_transgression_identity(ext, alpha, m, vec)
    return h2, cls


def _verify_transgression_identity(ext, alpha, m, vec, size_cap: int = 48):
    order = ext.order()
    if order is None or order > size_cap:
        return
    grp, elems, index, key = ext.as_finite_group()
    proj = GroupMap(grp, ext.base, [e[1] for e in elems])
    big = pullback_module(proj, m)
    cx = BarComplex(big)
    beta = cx.build(1, {(w,): alpha.vec(list(elems[w][0])) for (w,) in cx.tuples(1)})
    lhs = cx.coboundary(1).vec(beta)
    rhs = inflate_cochain(proj, m, 2, vec)
    if not cx.cochains_equal(2, lhs, rhs):
        raise OperationError("not-a-cocycle", "transgression identity failed")


def aug_ideal_module(group: FiniteGroup) -> GModule:
    """The augmentation ideal of the group ring, on the basis g - 1."""
    n = group.n
    mats = []
    for g in range(n):
        cols = []
        for h in range(1, n):
            col = [0] * (n - 1)
            gh = group.mul(g, h)
            if gh != 0:
                col[gh - 1] += 1
            if g != 0:
                col[g - 1] -= 1
            cols.append(col)
        mats.append(Mat.from_cols(cols, rows=n - 1) if n > 1 else Mat.zeros(0, 0))
    return GModule(group, FgAbelianGroup.free(n - 1), mats, name="aug-ideal")


class DimensionShiftMaps:
    """The connecting-map square for a formation cocycle.

    Holds the two shift maps, the explicit cup against the canonical
    class, and the 1-cochain witnessing that the square commutes up to
    an exact coboundary.
    """

    def __init__(self, gamma: FiniteGroup, m: GModule, u):
        if m.module.order() is None:
            raise OperationError("coefficients-not-finite",
                                 "the shift square needs finite coefficients")
        if gamma.table != m.group.table or gamma.table != u.m.group.table:
            raise OperationError("group-mismatch", "group, module and cocycle disagree")
        self.gamma = gamma
        self.m = m
        self.u = u
        self.homs = HomModule(u.m, m, check=False)
        self.ideal = aug_ideal_module(gamma)
        self.hom_tensor = tensor_modules(self.homs, self.ideal)
        self.coeff_tensor = tensor_modules(m, self.ideal)

    def conjugate(self, alpha: Mat, g: int) -> Mat:
        return self.m.act_mat(g) * alpha * self.u.m.act_mat(self.gamma.inv(g))

    def _as_matrix(self, alpha) -> Mat:
        if isinstance(alpha, Mat):
            return alpha
        return Mat.from_rows(alpha, cols=self.u.m.module.ngens) if self.m.module.ngens \
            else Mat.zeros(0, self.u.m.module.ngens)

    def _tensor_with(self, coeff_vec: list[int], g: int, size: int) -> list[int]:
        """coeff_vec tensor (g - 1), in first-factor-major coordinates."""
        out = [0] * (size * (self.gamma.n - 1))
        if g != 0:
            for i, v in enumerate(coeff_vec):
                out[i * (self.gamma.n - 1) + g - 1] += v
        return out

    def d_minus1(self, alpha) -> list[int]:
        """Sum of (g alpha) tensor (g - 1): an invariant of homs-tensor-ideal."""
        alpha = self._as_matrix(alpha)
        k = self.homs.module.ngens
        out = [0] * (k * (self.gamma.n - 1))
        for g in range(self.gamma.n):
            w = self.homs.coeffs(self.conjugate(alpha, g))
            piece = self._tensor_with(w, g, k)
            out = [a + b for a, b in zip(out, piece)]
        return out

    def d_plus1(self, beta_vec: list[int]) -> list[int]:
        """2-cochain (g1, g2) -> g1 beta(g2) tensor (g1 - 1)."""
        cx_m = BarComplex(self.m)
        cx_t = BarComplex(self.coeff_tensor)
        values = {}
        for g1, g2 in cx_t.tuples(2):
            moved = self.m.act(g1, cx_m.value(1, beta_vec, (g2,)))
            values[(g1, g2)] = self._tensor_with(moved, g1, self.m.module.ngens)
        return cx_t.build(2, values)

    def cup_with_class(self, alpha) -> list[int]:
        """1-cochain x -> sum over g of (g alpha)(u(x, x^-1 g))."""
        alpha = self._as_matrix(alpha)
        cx = BarComplex(self.m)
        values = {}
        for (x,) in cx.tuples(1):
            acc = [0] * self.m.module.ngens
            for g in range(self.gamma.n):
                arg = self.u(x, self.gamma.mul(self.gamma.inv(x), g))
                val = self.conjugate(alpha, g).vec(arg)
                acc = [a + b for a, b in zip(acc, val)]
            values[(x,)] = acc
        return cx.build(1, values)

    def witness(self, alpha) -> list[int]:
        """1-cochain x -> sum of (g alpha)(u(x, x^-1 g)) tensor (g - 1)."""
        alpha = self._as_matrix(alpha)
        cx = BarComplex(self.coeff_tensor)
        values = {}
        for (x,) in cx.tuples(1):
            acc = [0] * self.coeff_tensor.module.ngens
            for g in range(self.gamma.n):
                arg = self.u(x, self.gamma.mul(self.gamma.inv(x), g))
                val = self.conjugate(alpha, g).vec(arg)
                acc = [a + b for a, b in
                       zip(acc, self._tensor_with(val, g, self.m.module.ngens))]
            values[(x,)] = acc
        return cx.build(1, values)

    def paired_with_cocycle(self, alpha) -> list[int]:
        """2-cochain (g1, g2) -> sum of (g alpha)(u(g1, g2)) tensor (g - 1)."""
        alpha = self._as_matrix(alpha)
        cx = BarComplex(self.coeff_tensor)
        values = {}
        for g1, g2 in cx.tuples(2):
            arg = list(self.u(g1, g2))
            acc = [0] * self.coeff_tensor.module.ngens
            for g in range(self.gamma.n):
                val = self.conjugate(alpha, g).vec(arg)
                acc = [a + b for a, b in
                       zip(acc, self._tensor_with(val, g, self.m.module.ngens))]
            values[(g1, g2)] = acc
        return cx.build(2, values)

    def norm_annihilates(self, alpha) -> bool:
        alpha = self._as_matrix(alpha)
        total = Mat.zeros(self.m.module.ngens, self.u.m.module.ngens)
        for g in range(self.gamma.n):
            total = total + self.conjugate(alpha, g)
        return all(self.m.module.is_zero(total.col(j)) for j in range(total.c))

    def identity_check(self, alpha) -> bool:
        """d(witness) equals the paired square minus the shifted cup, exactly.

        Meaningful for alpha killed by the conjugation norm, the carrier
        of the degree -1 classes the square shifts.
        """
        cx = BarComplex(self.coeff_tensor)
        lhs = cx.coboundary(1).vec(self.witness(alpha))
        down = self.d_plus1(self.cup_with_class(alpha))
        rhs = [a - b for a, b in zip(self.paired_with_cocycle(alpha), down)]
        return cx.cochains_equal(2, lhs, rhs)


def dimension_shift_maps(gamma: FiniteGroup, m: GModule, u) -> DimensionShiftMaps:
    return DimensionShiftMaps(gamma, m, u)


# ------------------------------------------------- class formation audit


@dataclass
class FormationCell:
    elements: list[int]
    h1_invariants: list[int]
    h2_invariants: list[int]
    res_class_order: int
    ok: bool


@dataclass
class ClassFormationReport:
    cells: list[FormationCell] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.cells)

    def __bool__(self) -> bool:
        return self.passed


def verify_class_formation(ext: ExtensionGroup) -> ClassFormationReport:
    """Audit the formation axioms subgroup by subgroup.

    For each subgroup H: H^1 of the restricted module must vanish, H^2
    must be cyclic of order |H|, and the restricted extension cocycle
    must generate it. A report is always produced, never an exception.
    """
    m = ext.cocycle.m
    grp = m.group
    report = ClassFormationReport()
    for elems in grp.subgroups():
        sub = Subgroup(grp, elems)
        mh = restrict_module(m, sub)
        h1 = cohomology(mh, 1)
        h2 = cohomology(mh, 2)
        res_u = restrict_cochain(m, sub, 2, ext.cocycle.vec)
        order = h2.class_order(res_u)
        n = len(elems)
        want = [] if n == 1 else [n]
        ok = (h1.group.is_trivial()
              and h2.group.invariants() == want
              and order == n)
        report.cells.append(FormationCell(elems, h1.group.invariants(),
                                          h2.group.invariants(), order, ok))
    return report
