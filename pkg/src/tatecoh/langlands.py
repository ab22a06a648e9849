"""Finite-level parameter machinery for tori over a local field.

A torus is encoded by its cocharacter lattice with an inertia action and
a Frobenius automorphism; the arithmetic of the field enters through a
class-formation datum (a finite group, a class module, and a canonical
2-cocycle).  On top of these two inputs the module builds the objects the
correspondence lives on: the fundamental-group model (tensor invariants),
the Kottwitz coinvariant target, the dual short exact sequence at each
finite modulus, the character-to-cocycle map with a witnessed inverse,
and the two-row comparison diagram that ties them together.

Everything is exact.  Where an integral identification only holds after
inverting the modulus (the divisibility step of the coinvariant duality),
the operation computes both sides and reports the comparison instead of
asserting it.
"""

from dataclasses import dataclass, field

from .zmodule import (
    DualGroup,
    ExactnessReport,
    FgAbelianGroup,
    GroupHom,
    Mat,
    OperationError,
    dual_hom,
    hstack,
    is_exact,
    kron,
    solve,
)
from .gaction import (
    FiniteGroup,
    GModule,
    GroupMap,
    HomModule,
    Subgroup,
    coinvariants,
    dual_torus_points,
    induce_module,
    invariants,
    pullback_module,
    restrict_module,
    tensor_modules,
)
from .cohomology import (
    ExtensionGroup,
    FormationTwist,
    FpCohomologyGroup,
    SubExtension,
    TwoCocycle,
    WModelFrobenius,
    cor_hom_level,
    frobenius_endo_on_h1,
    h1_fp_group,
    restrict_cochain,
    transfer,
    verify_class_formation,
)


def _integer_inverse(m: Mat) -> Mat:
    cols = []
    for j in range(m.r):
        e = [0] * m.r
        e[j] = 1
        x = solve(m, e)
        if x is None:
            raise OperationError("incompatible-data", "matrix is not invertible over the integers")
        cols.append(x)
    return Mat.from_cols(cols, rows=m.c)


def _coords_in(gens: Mat, relations: Mat, vec: list[int]) -> list[int] | None:
    """Coordinates of vec against the columns of gens, modulo relations."""
    x = solve(hstack(gens, relations), vec)
    return None if x is None else x[: gens.c]


# ------------------------------------------------------------- torus data


class AmbientDatum:
    """A finite Galois group containing the inertia group as a normal
    subgroup, with a distinguished Frobenius element generating the
    quotient."""

    def __init__(self, group: FiniteGroup, embedding: GroupMap, frobenius: int):
        if embedding.target.table != group.table:
            raise OperationError("incompatible-data", "embedding must land in the ambient group")
        image = set(embedding.images)
        if len(image) != embedding.source.n:
            raise OperationError("incompatible-data", "inertia embedding is not injective")
        for t in range(group.n):
            for h in image:
                if group.mul(group.mul(t, h), group.inv(t)) not in image:
                    raise OperationError("incompatible-data", "inertia image is not normal")
        covered = set()
        f = 0
        for _ in range(group.n):
            covered.update(group.mul(h, f) for h in image)
            f = group.mul(f, frobenius)
        if len(covered) != group.n:
            raise OperationError(
                "incompatible-data", "Frobenius does not generate the residue quotient")
        self.group = group
        self.embedding = embedding
        self.frobenius = frobenius
        self._preimage = {embedding(g): g for g in range(embedding.source.n)}

    def conjugate_inertia(self, g: int) -> int:
        """Inertia element representing Fr g Fr^-1."""
        big = self.group
        c = big.mul(big.mul(self.frobenius, self.embedding(g)), big.inv(self.frobenius))
        if c not in self._preimage:
            raise OperationError("incompatible-data", "Frobenius conjugation leaves the inertia image")
        return self._preimage[c]


class TorusDatum:
    """Cocharacter lattice with inertia action and Frobenius.

    The lattice is a free module over the inertia group; the Frobenius is
    a unimodular matrix that conjugates the inertia action the way the
    ambient group dictates (or commutes with it when no ambient group is
    given).  Induced tori remember the inducing subgroup and base lattice
    so Shapiro-style identifications can be replayed.
    """

    def __init__(self, name: str, lattice: GModule, frobenius: Mat | None = None,
                 ambient: AmbientDatum | None = None,
                 induced_from: tuple[Subgroup, GModule] | None = None):
        mod = lattice.module
        if mod.invariants() != [0] * mod.ngens:
            raise OperationError("not-a-lattice", "cocharacters must form a free module")
        if frobenius is None:
            frobenius = Mat.identity(mod.ngens)
        # bijective endomorphism of Z^r, so the matrix is unimodular
        if not GroupHom(mod, mod, frobenius).is_bijective():
            raise OperationError("incompatible-data", "Frobenius must be unimodular")
        if ambient is not None and ambient.embedding.source.table != lattice.group.table:
            raise OperationError("group-mismatch", "ambient embedding starts at the wrong group")
        for g in range(lattice.group.n):
            conj = ambient.conjugate_inertia(g) if ambient is not None else g
            if (frobenius * lattice.act_mat(g)).a != (lattice.act_mat(conj) * frobenius).a:
                raise OperationError(
                    "incompatible-data",
                    "Frobenius does not conjugate the inertia action correctly")
        self.name = name
        self.lattice = lattice
        self.frobenius = frobenius
        self.ambient = ambient
        self.induced_from = induced_from

    @property
    def inertia_group(self) -> FiniteGroup:
        return self.lattice.group

    @property
    def cochar_rank(self) -> int:
        return self.lattice.module.ngens

    @property
    def frobenius_on_lattice(self) -> Mat:
        return self.frobenius

    def dual_points(self, n: int) -> tuple[GModule, Mat]:
        """Z/n points of the dual torus, with the Frobenius acting there.

        Characters pull back, so the Frobenius on the dual side is the
        inverse transpose of the one on the lattice.
        """
        m = dual_torus_points(self.lattice, n)
        return m, _integer_inverse(self.frobenius).transpose()

    def require_ambient(self) -> AmbientDatum:
        if self.ambient is None:
            raise OperationError("no-ambient", f"torus {self.name!r} carries no ambient group")
        return self.ambient

    def __repr__(self) -> str:
        return f"TorusDatum({self.name!r}, rank {self.cochar_rank})"


def induced_torus(name: str, sub: Subgroup, base: GModule,
                  frobenius: Mat | None = None,
                  ambient: AmbientDatum | None = None) -> TorusDatum:
    """Torus whose lattice is induced from a subgroup, with the induction
    recorded for later Shapiro checks."""
    lattice = induce_module(sub, base)
    return TorusDatum(name, lattice, frobenius=frobenius, ambient=ambient,
                      induced_from=(sub, base))


# ----------------------------------------------------- formation data


class ClassFormationDatum:
    """A finite group with a class module, its canonical 2-cocycle, and a
    Frobenius twist of the resulting extension group.

    The class-formation audit runs at construction time and its report is
    stored; failing it is allowed (finite toy modules are useful negative
    examples) but never hidden.
    """

    def __init__(self, name: str, cocycle: TwoCocycle,
                 twist: FormationTwist | None = None):
        self.name = name
        self.cocycle = cocycle
        self.gamma = cocycle.m.group
        self.class_module = cocycle.m
        self.ext = ExtensionGroup(cocycle)
        self.twist = twist if twist is not None else FormationTwist.identity(self.ext)
        if self.twist.ext is not self.ext and self.twist.ext.cocycle is not cocycle:
            raise OperationError("incompatible-data", "twist belongs to a different extension")
        self.formation_report = verify_class_formation(self.ext)

    def __repr__(self) -> str:
        status = "pass" if self.formation_report.passed else "fail"
        return f"ClassFormationDatum({self.name!r}, audit {status})"


def unramified_formation(gamma: FiniteGroup, name: str = "") -> ClassFormationDatum:
    """Integers with the carry cocycle: the canonical formation of an
    unramified situation, one for each cyclic group."""
    sigma = 1 if gamma.n > 1 else 0
    u = TwoCocycle.carry(gamma, sigma)
    return ClassFormationDatum(name or f"unramified-c{gamma.n}", u)


# ---------------------------------------------------- fundamental group


@dataclass
class Pi1Model:
    """Invariants of (cocharacters tensor class module), with the
    Frobenius it inherits."""

    torus: TorusDatum
    formation: ClassFormationDatum
    tensor: GModule
    group: FgAbelianGroup
    inclusion: GroupHom
    frobenius: GroupHom


def pi1_model(t: TorusDatum, f: ClassFormationDatum) -> Pi1Model:
    if t.inertia_group.table != f.gamma.table:
        raise OperationError("group-mismatch", "torus and formation live over different groups")
    tensor = tensor_modules(t.lattice, f.class_module)
    group, incl = invariants(tensor)
    big = kron(t.frobenius, f.twist.kernel_map)
    cols = []
    for j in range(group.ngens):
        w = big.vec(incl.matrix.col(j))
        x = _coords_in(incl.matrix, tensor.module.relations, w)
        if x is None:
            raise OperationError("incompatible-data", "Frobenius does not preserve the invariants")
        cols.append(x)
    frob = GroupHom(group, group, Mat.from_cols(cols, rows=group.ngens))
    return Pi1Model(t, f, tensor, group, incl, frob)


# --------------------------------------------------------- field towers


@dataclass
class TowerDatum:
    """Data of one field extension inside another.

    subgroup: the inertia elements fixing the smaller field, inside the
    larger inertia group; quotient: the larger inertia group onto the
    smaller one, with kernel exactly that subgroup; identify: the small
    class module written as the abelianization of the restricted
    extension (generator order: kernel generators, then lifts of the
    non-identity subgroup elements); comparison: the candidate transfer
    map between the class modules, which the check recomputes.
    """

    subgroup: Subgroup
    quotient: GroupMap
    identify: Mat
    comparison: Mat


def _restricted_extension(f: ClassFormationDatum, sub: Subgroup) -> ExtensionGroup:
    mh = restrict_module(f.class_module, sub)
    vec = restrict_cochain(f.class_module, sub, 2, f.cocycle.vec)
    return ExtensionGroup(TwoCocycle(mh, vec, check=False))


def transfer_compat_check(t: TorusDatum, f_small: ClassFormationDatum,
                          f_large: ClassFormationDatum, tower: TowerDatum) -> bool:
    """Does the supplied class-module comparison equal the transfer, and
    does it carry the small fundamental group onto the large one?

    Structural mismatches raise; a wrong comparison map returns False.
    """
    if t.inertia_group.table != f_small.gamma.table:
        raise OperationError("group-mismatch", "torus must live over the smaller group")
    q = tower.quotient
    if q.source.table != f_large.gamma.table or q.target.table != f_small.gamma.table:
        raise OperationError("incompatible-data", "quotient map endpoints are wrong")
    if not q.is_surjective():
        raise OperationError("incompatible-data", "quotient map is not onto")
    if tower.subgroup.group.table != f_large.gamma.table:
        raise OperationError("incompatible-data", "subgroup lives in the wrong group")
    if sorted(q.kernel_elements()) != tower.subgroup.elements:
        raise OperationError("incompatible-data", "subgroup is not the kernel of the quotient")

    a_small, a_large = f_small.class_module, f_large.class_module
    s_ext = _restricted_extension(f_large, tower.subgroup)
    full = Subgroup(s_ext.base, list(range(s_ext.base.n)))
    ab_group, _ = SubExtension(s_ext, full).abelianization()
    try:
        identify = GroupHom(a_small.module, ab_group, tower.identify)
        comparison = GroupHom(a_small.module, a_large.module, tower.comparison)
    except OperationError as err:
        raise OperationError("incompatible-data", f"tower maps are malformed: {err}") from None
    if not identify.is_bijective():
        raise OperationError("incompatible-data", "class module does not match the abelianization")

    # the reference transfer, recomputed from scratch on the restricted
    # extension: kernel generators first, then lifts
    triv = SubExtension(s_ext, Subgroup(s_ext.base, [0]))
    k = a_large.module.ngens
    cols = []
    for j in range(k):
        e = [0] * k
        e[j] = 1
        cols.append(transfer(s_ext, triv, s_ext.include(e)))
    for h_local in range(1, s_ext.base.n):
        cols.append(transfer(s_ext, triv, s_ext.lift(h_local)))
    tran = GroupHom(ab_group, a_large.module, Mat.from_cols(cols, rows=k))

    for g in range(f_large.gamma.n):
        for j in range(a_small.module.ngens):
            lhs = comparison.matrix.vec(a_small.act_mat(q(g)).col(j))
            rhs = a_large.act_mat(g).vec(comparison.matrix.col(j))
            if not a_large.module.same_element(lhs, rhs):
                raise OperationError("incompatible-data", "comparison map is not equivariant")

    for j in range(a_small.module.ngens):
        want = tran(identify.matrix.col(j))
        if not a_large.module.same_element(comparison.matrix.col(j), want):
            return False

    # the tensor triangle: the comparison must carry the small pi1 model
    # bijectively onto the large one (lattice pulled back along q)
    small = pi1_model(t, f_small)
    big_tensor = tensor_modules(pullback_module(q, t.lattice), a_large)
    big_group, big_incl = invariants(big_tensor)
    lift = kron(Mat.identity(t.cochar_rank), comparison.matrix)
    cols = []
    for j in range(small.group.ngens):
        w = lift.vec(small.inclusion.matrix.col(j))
        x = _coords_in(big_incl.matrix, big_tensor.module.relations, w)
        if x is None:
            return False
        cols.append(x)
    try:
        triangle = GroupHom(small.group, big_group, Mat.from_cols(cols, rows=big_group.ngens))
    except OperationError:
        return False
    return triangle.is_bijective()


def functoriality_check(t1: TorusDatum, t2: TorusDatum, matrix: Mat,
                        formation: ClassFormationDatum) -> bool:
    """A lattice map between tori induces a map of fundamental groups;
    verified generator by generator, Frobenius included."""
    if t1.inertia_group.table != t2.inertia_group.table or \
            t1.inertia_group.table != formation.gamma.table:
        raise OperationError("group-mismatch", "tori and formation must share the group")
    for g in range(t1.inertia_group.n):
        if (matrix * t1.lattice.act_mat(g)).a != (t2.lattice.act_mat(g) * matrix).a:
            raise OperationError("not-equivariant", "lattice map does not commute with the action")
    p1 = pi1_model(t1, formation)
    p2 = pi1_model(t2, formation)
    lift = kron(matrix, Mat.identity(formation.class_module.module.ngens))
    cols = []
    for j in range(p1.group.ngens):
        w = lift.vec(p1.inclusion.matrix.col(j))
        x = _coords_in(p2.inclusion.matrix, p2.tensor.module.relations, w)
        if x is None:
            return False
        cols.append(x)
    try:
        GroupHom(p1.group, p2.group, Mat.from_cols(cols, rows=p2.group.ngens))
    except OperationError:
        return False
    return (matrix * t1.frobenius).a == (t2.frobenius * matrix).a


def shapiro_check(t: TorusDatum, formation: ClassFormationDatum,
                  moduli: tuple[int, ...] = (2, 3)) -> bool:
    """For an induced torus, the fundamental group must match the
    subgroup-level invariants through the identity-coset projection, and
    the parameter groups must match in every requested modulus."""
    if t.induced_from is None:
        raise OperationError("not-induced", "torus does not record an induction")
    if t.inertia_group.table != formation.gamma.table:
        raise OperationError("group-mismatch", "torus and formation live over different groups")
    sub, base = t.induced_from
    a_small = restrict_module(formation.class_module, sub)
    small_tensor = tensor_modules(base, a_small)
    small_group, small_incl = invariants(small_tensor)
    p = pi1_model(t, formation)
    r0 = base.module.ngens
    k = formation.class_module.module.ngens
    cols = []
    for j in range(p.group.ngens):
        w = p.inclusion.matrix.col(j)[: r0 * k]  # identity-coset block
        x = _coords_in(small_incl.matrix, small_tensor.module.relations, w)
        if x is None:
            return False
        cols.append(x)
    try:
        down = GroupHom(p.group, small_group, Mat.from_cols(cols, rows=small_group.ngens))
    except OperationError:
        return False
    if not down.is_bijective():
        return False

    # Shapiro: parameters of the induced torus match parameters of the
    # base over the subgroup, extension restricted accordingly
    sub_ext = _restricted_extension(formation, sub)
    for n in moduli:
        big = h1_fp_group(formation.ext, dual_torus_points(t.lattice, n))
        small = h1_fp_group(sub_ext, dual_torus_points(base, n))
        if big.group.invariants() != small.group.invariants():
            return False
    return True


# ------------------------------------------------------ Kottwitz target


@dataclass
class KottwitzTarget:
    """Frobenius-fixed part of the inertia coinvariants of the lattice,
    with both stages exposed."""

    torus: TorusDatum
    coinvariants: FgAbelianGroup
    projection: GroupHom
    frobenius: GroupHom
    group: FgAbelianGroup
    inclusion: GroupHom


def kottwitz_target(t: TorusDatum) -> KottwitzTarget:
    t.require_ambient()
    co, proj = coinvariants(t.lattice)
    frob = GroupHom(co, co, t.frobenius)
    fixed, incl = GroupHom(co, co, t.frobenius - Mat.identity(co.ngens)).kernel()
    return KottwitzTarget(t, co, proj, frob, fixed, incl)


# ------------------------------------------- duals at a finite modulus


def _invariant_dual(t: TorusDatum, n: int):
    """Frobenius data on the inertia-invariant dual points.

    Returns (dual module, dual Frobenius matrix, invariant group,
    inclusion, Frobenius restricted to the invariants).
    """
    m_t, t_dual = t.dual_points(n)
    inv, incl = invariants(m_t)
    cols = []
    for j in range(inv.ngens):
        w = t_dual.vec(incl.matrix.col(j))
        x = _coords_in(incl.matrix, m_t.module.relations, w)
        if x is None:
            raise OperationError("incompatible-data", "dual Frobenius leaves the invariants")
        cols.append(x)
    frob = GroupHom(inv, inv, Mat.from_cols(cols, rows=inv.ngens))
    return m_t, t_dual, inv, incl, frob


@dataclass
class FixedPointReport:
    """Both sides of the coinvariant-character identification, with the
    natural comparison map and whether it is bijective at this modulus.

    lhs is the character group of the Kottwitz target; rhs is the
    invariant dual points modulo Frobenius twists.  The comparison
    restricts an invariant character to Frobenius-fixed coinvariant
    classes; integrally it is an isomorphism, mod n it can fail, and the
    verdict is reported rather than assumed.
    """

    torus: TorusDatum
    modulus: int
    lhs: FgAbelianGroup
    rhs: FgAbelianGroup
    comparison: GroupHom
    bijective: bool

    def __bool__(self) -> bool:
        return self.bijective


def h1_Z_fixedpoints(t: TorusDatum, n: int) -> FixedPointReport:
    if n < 2:
        raise ValueError("modulus must be at least 2")
    kt = kottwitz_target(t)
    m_t, _, inv, incl, frob = _invariant_dual(t, n)
    delta = GroupHom(inv, inv, frob.matrix - Mat.identity(inv.ngens))
    rhs, _ = delta.cokernel()
    dual = DualGroup(kt.group, n)
    cols = []
    for j in range(rhs.ngens):
        v = incl.matrix.col(j)  # coinvariant classes keep lattice coordinates
        values = []
        for i in range(kt.group.ngens):
            w = kt.inclusion.matrix.col(i)
            values.append(sum(a * b for a, b in zip(v, w)) % n)
        cols.append(dual.from_generator_values(values))
    comparison = GroupHom(rhs, dual.group, Mat.from_cols(cols, rows=dual.group.ngens))
    return FixedPointReport(t, n, dual.group, rhs, comparison, comparison.is_bijective())


# ------------------------------------------------- dual exact sequence


@dataclass
class DualSequenceReport:
    """The three parameter groups at a finite modulus and the exactness
    verdict of the sequence connecting them.

    left: invariant dual points modulo Frobenius twists; middle: degree-one
    cohomology of the extension with a Frobenius letter adjoined; right:
    Frobenius-fixed classes of the extension's own cohomology.  The
    identification field carries the honest comparison of the left term
    with the literal character group of the Kottwitz target, which can
    fail at a finite modulus and is reported, never patched.
    """

    torus: TorusDatum
    formation: ClassFormationDatum
    modulus: int
    left: FgAbelianGroup
    middle: FgAbelianGroup
    right: FgAbelianGroup
    inflation: GroupHom
    restriction: GroupHom
    exact: ExactnessReport
    identification: FixedPointReport
    h1_with_frobenius: FpCohomologyGroup = field(repr=False)
    h1_inertial: FpCohomologyGroup = field(repr=False)
    fixed_inclusion: GroupHom = field(repr=False)

    def __bool__(self) -> bool:
        return bool(self.exact)


def _w_model(t: TorusDatum, formation: ClassFormationDatum, n: int):
    """Cohomology of the extension and of its Frobenius overgroup, with
    the Frobenius endomorphism and its fixed classes."""
    if t.inertia_group.table != formation.gamma.table:
        raise OperationError("group-mismatch", "torus and formation live over different groups")
    m_t, t_dual = t.dual_points(n)
    wfrob = WModelFrobenius(formation.twist, t_dual)
    h1w = h1_fp_group(formation.ext, m_t, frobenius=wfrob)
    h1g = h1_fp_group(formation.ext, m_t)
    endo = frobenius_endo_on_h1(h1g, wfrob)
    ident = Mat.identity(h1g.group.ngens)
    fixed, fixed_incl = GroupHom(h1g.group, h1g.group, endo.matrix - ident).kernel()
    return m_t, h1w, h1g, endo, fixed, fixed_incl


def _drop_frobenius_letter(h1w: FpCohomologyGroup, vec: list[int]) -> list[int]:
    d = h1w.presentation.m.module.ngens
    return vec[: d * (h1w.presentation.gen_count - 1)]


def kottwitz_dual_sequence(t: TorusDatum, n: int,
                           formation: ClassFormationDatum | None = None) -> DualSequenceReport:
    if n < 2:
        raise ValueError("modulus must be at least 2")
    t.require_ambient()
    if formation is None:
        formation = unramified_formation(t.inertia_group)
    _, _, inv, incl, frob = _invariant_dual(t, n)
    left, _ = GroupHom(inv, inv, frob.matrix - Mat.identity(inv.ngens)).cokernel()
    m_t, h1w, h1g, _, fixed, fixed_incl = _w_model(t, formation, n)

    d = m_t.module.ngens
    head = d * (h1w.presentation.gen_count - 1)
    cols = []
    for j in range(left.ngens):
        vec = [0] * head + incl.matrix.col(j)  # supported on the Frobenius letter
        cols.append(h1w.class_of(vec))
    inflation = GroupHom(left, h1w.group, Mat.from_cols(cols, rows=h1w.group.ngens))

    cols = []
    for j in range(h1w.group.ngens):
        rep = _drop_frobenius_letter(h1w, h1w.cocycles.col(j))
        cls = h1g.class_of(rep)
        x = _coords_in(fixed_incl.matrix, h1g.group.relations, cls)
        if x is None:
            raise OperationError("incompatible-data", "restricted class is not Frobenius fixed")
        cols.append(x)
    restriction = GroupHom(h1w.group, fixed, Mat.from_cols(cols, rows=fixed.ngens))

    ends = FgAbelianGroup(0, Mat.zeros(0, 0))
    exact = is_exact([GroupHom.zero(ends, left), inflation, restriction,
                      GroupHom.zero(fixed, ends)])
    ident = h1_Z_fixedpoints(t, n)
    return DualSequenceReport(t, formation, n, left, h1w.group, fixed,
                              inflation, restriction, exact, ident,
                              h1w, h1g, fixed_incl)


# ----------------------------------------------------- correspondence


@dataclass
class Correspondence:
    """Characters of the fundamental group against degree-one cohomology
    of the extension, with the maps both ways."""

    torus: TorusDatum
    formation: ClassFormationDatum
    modulus: int
    pi1: Pi1Model
    dual: DualGroup
    h1: FpCohomologyGroup
    hom_module: HomModule
    adjunction: GroupHom
    phi: GroupHom
    inverse: GroupHom


def _character_of_invariants(hom_module: HomModule, pi1: Pi1Model,
                             dual: DualGroup, n: int, w: list[int]) -> list[int]:
    """The character of the fundamental group cut out by a module map
    from the class module to the dual points."""
    f = hom_module.hom_matrix(w)
    k = hom_module.mx.module.ngens
    values = []
    for q in range(pi1.group.ngens):
        col = pi1.inclusion.matrix.col(q)
        total = 0
        for i in range(f.r):
            for j in range(k):
                total += col[i * k + j] * f.a[i][j]
        values.append(total % n)
    return dual.from_generator_values(values)


def correspondence_phi(t: TorusDatum, formation: ClassFormationDatum,
                       n: int) -> Correspondence:
    """Build the character-to-cocycle map and witness its inverse.

    The map factors through the coinvariants of Hom(class module, dual
    points); when those coinvariants do not match the character group of
    the invariants (the finite-modulus divisibility failure), the
    operation raises "hypothesis-failed" carrying both groups.
    """
    if n < 2:
        raise ValueError("modulus must be at least 2")
    if t.inertia_group.table != formation.gamma.table:
        raise OperationError("group-mismatch", "torus and formation live over different groups")
    m_t, _ = t.dual_points(n)
    p = pi1_model(t, formation)
    homs = HomModule(formation.class_module, m_t)
    dual = DualGroup(p.group, n)
    cols = []
    for q in range(homs.module.ngens):
        e = [0] * homs.module.ngens
        e[q] = 1
        cols.append(_character_of_invariants(homs, p, dual, n, e))
    adj = GroupHom(homs.module, dual.group, Mat.from_cols(cols, rows=dual.group.ngens))
    # conjugate maps cut out the same character of the invariants, so the
    # adjunction descends to the coinvariants (checked by the constructor)
    co, _ = coinvariants(homs)
    adj_bar = GroupHom(co, dual.group, adj.matrix)
    if not adj_bar.is_bijective():
        err = OperationError(
            "hypothesis-failed",
            f"character group of the invariants is {dual.group.invariants()} "
            f"but the coinvariant side is {co.invariants()}")
        err.groups = (dual.group, co)
        raise err

    h1 = h1_fp_group(formation.ext, m_t)
    cols = []
    for j in range(dual.group.ngens):
        e = [0] * dual.group.ngens
        e[j] = 1
        w = _coords_in(adj_bar.matrix, dual.group.relations, e)
        vec = cor_hom_level(formation.ext, homs.hom_matrix(w), m_t)
        cols.append(h1.class_of(vec))
    phi = GroupHom(dual.group, h1.group, Mat.from_cols(cols, rows=h1.group.ngens))

    cols = []
    for j in range(h1.group.ngens):
        e = [0] * h1.group.ngens
        e[j] = 1
        x = _coords_in(phi.matrix, h1.group.relations, e)
        if x is None:
            raise OperationError("hypothesis-failed", "a class has no character preimage")
        cols.append(dual.group.normal_form(x))
    inverse = GroupHom(h1.group, dual.group, Mat.from_cols(cols, rows=dual.group.ngens))

    for j in range(dual.group.ngens):
        e = [0] * dual.group.ngens
        e[j] = 1
        if not dual.group.same_element(inverse(phi(e)), e):
            raise OperationError("hypothesis-failed", "inverse witness fails on a character")
    for j in range(h1.group.ngens):
        e = [0] * h1.group.ngens
        e[j] = 1
        if not h1.group.same_element(phi(inverse(e)), e):
            raise OperationError("hypothesis-failed", "inverse witness fails on a class")
    return Correspondence(t, formation, n, p, dual, h1, homs, adj_bar, phi, inverse)


# ------------------------------------------------- the two-row diagram


@dataclass
class DiagramCell:
    name: str
    ok: bool
    note: str = ""


@dataclass
class DiagramReport:
    """Cell-by-cell verdict of the two-row comparison at one modulus.

    Both rows share the left and middle realizations; the rows differ in
    the right-hand term (Frobenius-fixed characters of the fundamental
    group above, Frobenius-fixed cohomology classes below) and the right
    vertical is induced by the correspondence.  The literal character
    group of the Kottwitz target enters through the divisibility report,
    which does not gate the verdict; its failures are expected and
    documented per modulus.
    """

    torus: TorusDatum
    formation: ClassFormationDatum
    modulus: int
    cells: list[DiagramCell]
    sequence: DualSequenceReport
    correspondence: Correspondence
    divisibility: FixedPointReport

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.cells)

    def __bool__(self) -> bool:
        return self.passed

    def cell(self, name: str) -> DiagramCell:
        for c in self.cells:
            if c.name == name:
                return c
        raise KeyError(name)


def main_diagram_check(t: TorusDatum, formation: ClassFormationDatum,
                       n: int) -> DiagramReport:
    t.require_ambient()
    seq = kottwitz_dual_sequence(t, n, formation)
    corr = correspondence_phi(t, formation, n)
    p, dual, h1 = corr.pi1, corr.dual, corr.h1
    h1w = seq.h1_with_frobenius
    cells: list[DiagramCell] = []

    # top-right term: characters of the fundamental group fixed by the
    # dual Frobenius
    dfrob = dual_hom(p.frobenius, n, dual, dual)
    ident = Mat.identity(dual.group.ngens)
    fixed_chars, chars_incl = GroupHom(dual.group, dual.group,
                                       dfrob.matrix - ident).kernel()

    # evaluation of a middle class on the fundamental group: restrict to
    # the kernel generators and pair
    k = formation.class_module.module.ngens
    alpha_fixed = True
    cols = []
    for j in range(h1w.group.ngens):
        rep = h1w.cocycles.col(j)
        f = Mat.from_cols([h1w.value_on_kernel_gen(rep, i) for i in range(k)],
                          rows=corr.hom_module.ma.module.ngens)
        chi = dual.group.normal_form(corr.adjunction.matrix.vec(corr.hom_module.coeffs(f)))
        x = _coords_in(chars_incl.matrix, dual.group.relations, chi)
        if x is None:
            alpha_fixed = False
            break
        cols.append(x)
    cells.append(DiagramCell("alpha-image-frobenius-fixed", alpha_fixed,
                             "middle classes evaluate to Frobenius-fixed characters"))
    if alpha_fixed:
        evaluation = GroupHom(h1w.group, fixed_chars,
                              Mat.from_cols(cols, rows=fixed_chars.ngens))
        ends = FgAbelianGroup(0, Mat.zeros(0, 0))
        top = is_exact([GroupHom.zero(ends, seq.left), seq.inflation, evaluation,
                        GroupHom.zero(fixed_chars, ends)])
        cells.append(DiagramCell("top-row-exact", bool(top), top.reason or ""))
    else:
        evaluation = None
        cells.append(DiagramCell("top-row-exact", False, "evaluation map not constructible"))

    cells.append(DiagramCell("bottom-row-exact", bool(seq.exact), seq.exact.reason or ""))
    cells.append(DiagramCell(
        "left-square", True,
        "rows share the left and middle realizations, verticals are identities"))

    # right vertical: the correspondence restricted to fixed characters,
    # landing in fixed classes
    beta_fixed = True
    cols = []
    for j in range(fixed_chars.ngens):
        chi = chars_incl.matrix.col(j)
        cls = h1.group.normal_form(corr.phi.matrix.vec(chi))
        x = _coords_in(seq.fixed_inclusion.matrix, h1.group.relations, cls)
        if x is None:
            beta_fixed = False
            break
        cols.append(x)
    cells.append(DiagramCell("beta-image-frobenius-fixed", beta_fixed,
                             "correspondence sends fixed characters to fixed classes"))
    if beta_fixed:
        vertical = GroupHom(fixed_chars, seq.right,
                            Mat.from_cols(cols, rows=seq.right.ngens))
        cells.append(DiagramCell("right-vertical-bijective", vertical.is_bijective()))
        if evaluation is not None:
            ok = True
            for j in range(h1w.group.ngens):
                e = _unit(h1w.group.ngens, j)
                if not seq.right.same_element(vertical(evaluation(e)), seq.restriction(e)):
                    ok = False
                    break
            cells.append(DiagramCell("right-square", ok,
                                     "evaluation then correspondence equals restriction"))
        else:
            cells.append(DiagramCell("right-square", False, "top row not constructible"))
    else:
        cells.append(DiagramCell("right-vertical-bijective", False))
        cells.append(DiagramCell("right-square", False, "vertical not constructible"))

    return DiagramReport(t, formation, n, cells, seq, corr, seq.identification)


def _unit(n: int, j: int) -> list[int]:
    e = [0] * n
    e[j] = 1
    return e


# ------------------------------------------------------ shipped battery


def _trivial_lattice(group: FiniteGroup, rank: int) -> GModule:
    return GModule(group, FgAbelianGroup.free(rank),
                   [Mat.identity(rank)] * group.n, check=False)


def _ambient_over_trivial(order: int) -> AmbientDatum:
    big = FiniteGroup.cyclic(order)
    embed = GroupMap(FiniteGroup.trivial(), big, [0])
    return AmbientDatum(big, embed, 1 % order)


def _ambient_equal(gamma: FiniteGroup) -> AmbientDatum:
    return AmbientDatum(gamma, GroupMap.identity(gamma), 0)


def standard_torus(name: str) -> TorusDatum:
    """The shipped battery, by name.

    split-gm: rank one, everything trivial.  norm-one-unramified: rank
    one, trivial inertia, Frobenius -1.  norm-one-ramified: rank one,
    inertia of order two acting by -1, Frobenius trivial.
    induced-quadratic and induced-cubic: lattices induced from the
    trivial subgroup, Frobenius trivial.  weyl-2d: rank two, trivial
    inertia, Frobenius swapping the coordinates.
    """
    triv = FiniteGroup.trivial()
    if name == "split-gm":
        return TorusDatum(name, _trivial_lattice(triv, 1),
                          ambient=_ambient_over_trivial(1))
    if name == "norm-one-unramified":
        return TorusDatum(name, _trivial_lattice(triv, 1),
                          frobenius=Mat.diagonal([-1]),
                          ambient=_ambient_over_trivial(2))
    if name == "norm-one-ramified":
        c2 = FiniteGroup.cyclic(2)
        lattice = GModule(c2, FgAbelianGroup.free(1),
                          [Mat.identity(1), Mat.diagonal([-1])], check=False)
        return TorusDatum(name, lattice, ambient=_ambient_equal(c2))
    if name == "induced-quadratic":
        c2 = FiniteGroup.cyclic(2)
        sub = Subgroup(c2, [0])
        return induced_torus(name, sub, _trivial_lattice(sub.as_group, 1),
                             ambient=_ambient_equal(c2))
    if name == "induced-cubic":
        c3 = FiniteGroup.cyclic(3)
        sub = Subgroup(c3, [0])
        return induced_torus(name, sub, _trivial_lattice(sub.as_group, 1),
                             ambient=_ambient_equal(c3))
    if name == "weyl-2d":
        swap = Mat.from_rows([[0, 1], [1, 0]], cols=2)
        return TorusDatum(name, _trivial_lattice(triv, 2), frobenius=swap,
                          ambient=_ambient_over_trivial(2))
    raise ValueError(f"unknown torus name {name!r}")


STANDARD_TORI = ("split-gm", "norm-one-unramified", "norm-one-ramified",
                 "induced-quadratic", "induced-cubic", "weyl-2d")
