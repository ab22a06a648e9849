"""Frobenius modules standing in for the fundamental group of a connected
commutative group over a finite field.

A level-n point group is the coinvariant quotient P/(F^n - 1)P, the norm
maps run down the tower of levels, and characters of the bottom level match
the Frobenius-stable characters of any higher level. The norm map itself is
the summed-power formula on representatives; on the coinvariant models its
character dual coincides with precomposition by the canonical projection of
quotients, and the duality checks verify that identification by enumerating
every character of both sides. Depth of a character is measured against a
recorded filtration by Frobenius-stable submodules.
"""

from dataclasses import dataclass, field

from .zmodule import (
    DualGroup,
    FgAbelianGroup,
    GroupHom,
    Mat,
    OperationError,
    dual_hom,
    hstack,
    solve,
)
from .langlands import DiagramCell


@dataclass(frozen=True)
class FrobeniusModule:
    """A finitely generated abelian group with an automorphism playing the
    role of Frobenius."""

    underlying: FgAbelianGroup
    frobenius: Mat

    def __post_init__(self):
        if not self.endo().is_bijective():
            raise OperationError("incompatible-data",
                                 "frobenius is not invertible on the module")

    def endo(self) -> GroupHom:
        return GroupHom(self.underlying, self.underlying, self.frobenius)

    def power_matrix(self, k: int) -> Mat:
        acc = Mat.identity(self.underlying.ngens)
        for _ in range(k):
            acc = self.frobenius * acc
        return acc

    def norm_matrix(self, n: int) -> Mat:
        total = Mat.zeros(self.underlying.ngens, self.underlying.ngens)
        acc = Mat.identity(self.underlying.ngens)
        for _ in range(n):
            acc = self.frobenius * acc
            total = total + acc
        return total

    def __repr__(self) -> str:
        return f"FrobeniusModule({self.underlying.invariants()}, F={self.frobenius.a})"


def level_points(p: FrobeniusModule, n: int) -> tuple[FgAbelianGroup, GroupHom]:
    """The model of the points over the degree-n field: coinvariants of the
    n-th Frobenius power, with the quotient projection."""
    if n < 1:
        raise ValueError("level must be at least 1")
    d = p.power_matrix(n) - Mat.identity(p.underlying.ngens)
    return GroupHom(p.underlying, p.underlying, d).cokernel()


def fixed_points(p: FrobeniusModule, n: int) -> FgAbelianGroup:
    """Kernel of the n-th Frobenius power minus the identity."""
    if n < 1:
        raise ValueError("level must be at least 1")
    d = p.power_matrix(n) - Mat.identity(p.underlying.ngens)
    grp, _ = GroupHom(p.underlying, p.underlying, d).kernel()
    return grp


def norm_tower_map(p: FrobeniusModule, n: int) -> GroupHom:
    """The summed-power norm from level n to level 1; well-definedness
    across the two quotients is what the constructor verifies."""
    ln, _ = level_points(p, n)
    l1, _ = level_points(p, 1)
    return GroupHom(ln, l1, p.norm_matrix(n))


def tower_projection(p: FrobeniusModule, n: int) -> GroupHom:
    """The canonical quotient map from level n to level 1. On coinvariant
    models this is what the norm of points induces: multiplying by F is the
    identity at the bottom level, so the summed powers collapse to the
    projection under the boundary identification."""
    ln, _ = level_points(p, n)
    l1, _ = level_points(p, 1)
    return GroupHom(ln, l1, Mat.identity(p.underlying.ngens))


def _fixed_characters(dual: DualGroup, endo_dual: GroupHom) -> list[list[int]]:
    out = []
    for w in dual.characters():
        if dual.group.same_element(endo_dual(w), w):
            out.append(dual.group.normal_form(w))
    return out


@dataclass(frozen=True)
class DualityReport:
    """Outcome of matching bottom-level characters with Frobenius-stable
    characters upstairs. `bijective` is the verdict for the projection
    (the norm of points on coinvariant models); `sum_formula_bijective`
    records whether the literal summed-power dual is also a bijection."""

    module: FrobeniusModule
    level: int
    modulus: int
    lhs: FgAbelianGroup
    rhs: FgAbelianGroup
    bijective: bool
    sum_formula_bijective: bool

    def __bool__(self) -> bool:
        return self.bijective


def dual_norm_check(p: FrobeniusModule, n: int, modulus: int) -> DualityReport:
    """Enumerate characters of level one and of level n; the pullbacks along
    the tower must exhaust the Frobenius-stable characters exactly once."""
    if modulus < 2:
        raise ValueError("modulus must be at least 2")
    ln, _ = level_points(p, n)
    dn = DualGroup(ln, modulus)
    l1, _ = level_points(p, 1)
    d1 = DualGroup(l1, modulus)
    f_on_ln = GroupHom(ln, ln, p.frobenius)
    f_dual = dual_hom(f_on_ln, modulus, dn, dn)
    fixed = {tuple(w) for w in _fixed_characters(dn, f_dual)}
    fixed_group, _ = GroupHom(dn.group, dn.group,
                              f_dual.matrix - Mat.identity(dn.group.ngens)).kernel()

    def image_of(dualized: GroupHom) -> tuple[bool, set]:
        seen = set()
        for w in d1.characters():
            img = tuple(dn.group.normal_form(dualized(w)))
            if img in seen:
                return False, seen
            seen.add(img)
        return True, seen

    proj_dual = dual_hom(tower_projection(p, n), modulus, dn, d1)
    injective, image = image_of(proj_dual)
    bijective = injective and image == fixed
    nm_dual = dual_hom(norm_tower_map(p, n), modulus, dn, d1)
    sum_injective, sum_image = image_of(nm_dual)
    return DualityReport(p, n, modulus, d1.group, fixed_group,
                         bijective, sum_injective and sum_image == fixed)


@dataclass(frozen=True)
class SheafFunctionReport:
    """Cells of the function-to-character-sheaf square array at one level."""

    module: FrobeniusModule
    level: int
    modulus: int
    cells: tuple
    duality: DualityReport = field(repr=False)

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.cells)

    def cell(self, name: str) -> DiagramCell:
        for c in self.cells:
            if c.name == name:
                return c
        raise KeyError(name)

    def __bool__(self) -> bool:
        return self.passed


def sheaf_function_diagram(p: FrobeniusModule, n: int, modulus: int) -> SheafFunctionReport:
    """Commutativity of the tower diagram by full character enumeration:
    pulled-back bottom characters are Frobenius-stable, pulling back to the
    module itself agrees through both levels, and every stable character
    upstairs is hit exactly once."""
    duality = dual_norm_check(p, n, modulus)
    ln, _ = level_points(p, n)
    dn = DualGroup(ln, modulus)
    l1, _ = level_points(p, 1)
    d1 = DualGroup(l1, modulus)
    f_dual = dual_hom(GroupHom(ln, ln, p.frobenius), modulus, dn, dn)
    proj_dual = dual_hom(tower_projection(p, n), modulus, dn, d1)

    ngens = p.underlying.ngens
    units = [[1 if i == j else 0 for i in range(ngens)] for j in range(ngens)]
    stable = True
    square = True
    for w in d1.characters():
        up = proj_dual(w)
        if not dn.group.same_element(f_dual(up), up):
            stable = False
        # the two pullbacks to the module: through level n and level 1
        for e in units:
            if dn.evaluate(up, e) % modulus != d1.evaluate(w, e) % modulus:
                square = False

    fixed = _fixed_characters(dn, f_dual)
    hits = {tuple(w): 0 for w in fixed}
    for w in d1.characters():
        img = tuple(dn.group.normal_form(proj_dual(w)))
        if img in hits:
            hits[img] += 1
    round_trip = all(v == 1 for v in hits.values())

    cells = (
        DiagramCell("image-frobenius-fixed", stable),
        DiagramCell("pullback-square", square),
        DiagramCell("duality-bijective", duality.bijective),
        DiagramCell("character-round-trip", round_trip),
    )
    return SheafFunctionReport(p, n, modulus, cells, duality)


# ------------------------------------------------------------- filtrations


class FiltrationDatum:
    """A descending chain of Frobenius-stable submodules, each given by a
    matrix of generating columns in the coordinates of the base module."""

    def __init__(self, base: FrobeniusModule, chain: list[Mat]):
        self.base = base
        self.chain = list(chain)
        ngens = base.underlying.ngens
        for i, q in enumerate(self.chain):
            if q.r != ngens:
                raise ValueError(f"chain entry {i} has {q.r} rows, expected {ngens}")
        _require_stable(base, self.chain)

    def __repr__(self) -> str:
        return f"FiltrationDatum({len(self.chain)} steps on {self.base!r})"


def _require_stable(p: FrobeniusModule, chain: list[Mat]):
    rel = p.underlying.relations
    for i, q in enumerate(chain):
        span = hstack(q, rel)
        for j in range(q.c):
            if solve(span, (p.frobenius * q).col(j)) is None:
                raise OperationError(
                    "chain-not-stable",
                    f"chain entry {i} is not carried into itself by Frobenius")


def depth(chi: GroupHom, filt: FiltrationDatum):
    """Least chain index on which the character vanishes, or "infinite"."""
    base = filt.base.underlying
    if chi.source.ngens != base.ngens or chi.source.relations.a != base.relations.a:
        raise ValueError("character is not defined on the filtered module")
    zero = [0] * chi.target.ngens
    for i, q in enumerate(filt.chain):
        if all(chi.target.same_element(chi(q.col(j)), zero) for j in range(q.c)):
            return i
    return "infinite"


def depth_preservation_check(p: FrobeniusModule, filt: FiltrationDatum,
                             n: int, modulus: int) -> bool:
    """Every character of the level-n points has the same depth measured on
    the image chain downstairs and on the original chain after pullback."""
    _require_stable(p, filt.chain)
    ln, _ = level_points(p, n)
    dn = DualGroup(ln, modulus)
    target = FgAbelianGroup(1, Mat.diagonal([modulus]))
    ngens = p.underlying.ngens
    units = [[1 if i == j else 0 for i in range(ngens)] for j in range(ngens)]
    for w in dn.characters():
        down = "infinite"
        for i, q in enumerate(filt.chain):
            if all(dn.evaluate(w, q.col(j)) % modulus == 0 for j in range(q.c)):
                down = i
                break
        row = [[dn.evaluate(w, e) % modulus for e in units]]
        pulled = GroupHom(p.underlying, target, Mat.from_rows(row))
        if depth(pulled, filt) != down:
            return False
    return True
