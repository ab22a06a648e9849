"""Exact linear algebra and abelian group presentations.

Oracles here are deliberately independent of the code under test:
Leibniz determinants, invariant factors rebuilt from prime powers,
and brute-force element enumeration.
"""

import itertools
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tatecoh.zmodule import (
    DualGroup,
    FgAbelianGroup,
    GroupHom,
    Lattice,
    Mat,
    OperationError,
    det,
    dual_hom,
    extend_character,
    hstack,
    is_exact,
    kernel_basis,
    kron,
    lattice_eq,
    preimage_lattice,
    quotient,
    smith_normal_form,
    solve,
    solve_mod,
    subgroup,
    unimodular_inverse,
    xgcd,
)

# ---------------------------------------------------------------- oracles


def leibniz_det(m: Mat) -> int:
    # permanent-style expansion; fine up to 5x5
    n = m.r
    total = 0
    for perm in itertools.permutations(range(n)):
        sign = 1
        seen = list(perm)
        # count inversions for the sign
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if seen[i] > seen[j])
        sign = -1 if inv % 2 else 1
        term = 1
        for i in range(n):
            term *= m.a[i][perm[i]]
        total += sign * term
    return total


def factorize(n: int) -> dict[int, int]:
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def canonical_invariants(orders: list[int]) -> list[int]:
    """Invariant factors of a direct sum of cyclic groups, from scratch.

    orders may contain 0 for infinite cyclic factors and 1 for trivial ones.
    """
    free = sum(1 for d in orders if d == 0)
    by_prime: dict[int, list[int]] = {}
    for d in orders:
        if d >= 2:
            for p, e in factorize(d).items():
                by_prime.setdefault(p, []).append(e)
    for exps in by_prime.values():
        exps.sort(reverse=True)
    depth = max((len(v) for v in by_prime.values()), default=0)
    factors = []
    for i in range(depth):
        f = 1
        for p, exps in by_prime.items():
            if i < len(exps):
                f *= p ** exps[i]
        factors.append(f)
    factors.sort()
    return factors + [0] * free


def scramble(diag: list[int], rng: random.Random, size: int) -> Mat:
    """U * diagonal(diag) * V for random unimodular U, V built from row/col ops."""
    m = Mat.diagonal(diag)
    for _ in range(size):
        i, j = rng.randrange(m.r), rng.randrange(m.r)
        q = rng.randint(-3, 3)
        if i != j:
            for col in range(m.c):
                m.a[i][col] += q * m.a[j][col]
        i, j = rng.randrange(m.c), rng.randrange(m.c)
        if i != j:
            q = rng.randint(-3, 3)
            for row in m.a:
                row[i] += q * row[j]
    return m


small_entries = st.integers(min_value=-9, max_value=9)


def mat_strategy(max_dim=5):
    return st.integers(min_value=0, max_value=max_dim).flatmap(
        lambda r: st.integers(min_value=0, max_value=max_dim).flatmap(
            lambda c: st.lists(
                st.lists(small_entries, min_size=c, max_size=c),
                min_size=r, max_size=r,
            ).map(lambda rows: Mat(r, c, rows))
        )
    )


# ---------------------------------------------------------------- basics


@given(st.integers(-200, 200), st.integers(-200, 200))
def test_xgcd(a, b):
    g, x, y = xgcd(a, b)
    assert g == a * x + b * y
    assert g == math.gcd(a, b)


@given(mat_strategy(4))
def test_bareiss_det_matches_leibniz(m):
    if m.r != m.c:
        return
    assert det(m) == leibniz_det(m)


@given(mat_strategy(5))
@settings(max_examples=150, deadline=None)
def test_smith_form_properties(m):
    f = smith_normal_form(m)
    assert f.u * m * f.v == f.s
    assert det(f.u) in (1, -1)
    assert det(f.v) in (1, -1)
    d = f.diag
    for i in range(len(d) - 1):
        if d[i]:
            assert d[i + 1] % d[i] == 0
        else:
            assert d[i + 1] == 0
    assert all(x >= 0 for x in d)
    # off-diagonal must vanish
    for i in range(f.s.r):
        for j in range(f.s.c):
            if i != j:
                assert f.s.a[i][j] == 0


def test_smith_form_frozen_examples():
    assert smith_normal_form(Mat.from_rows([[2, 0], [0, 3]])).diag == [1, 6]
    assert smith_normal_form(Mat.from_rows([[4]])).diag == [4]
    assert smith_normal_form(Mat.from_rows([[2, 4], [6, 8]])).diag == [2, 4]
    assert smith_normal_form(Mat.from_rows([[2, 4, 6]])).diag == [2]
    assert smith_normal_form(Mat.zeros(3, 2)).diag == [0, 0]


def test_unimodular_inverse():
    m = Mat.from_rows([[1, 2], [1, 3]])
    inv = unimodular_inverse(m)
    assert m * inv == Mat.identity(2)
    assert inv * m == Mat.identity(2)
    with pytest.raises(ValueError):
        unimodular_inverse(Mat.from_rows([[2, 0], [0, 1]]))


@given(mat_strategy(4))
@settings(max_examples=100, deadline=None)
def test_kernel_basis_annihilates(m):
    k = kernel_basis(m)
    assert (m * k).is_zero()
    f = smith_normal_form(m)
    assert k.c == m.c - f.rank


@given(mat_strategy(4), st.lists(small_entries, min_size=4, max_size=4))
@settings(max_examples=100, deadline=None)
def test_solve_recovers_a_solution(m, x0):
    x0 = x0[: m.c]
    b = m.vec(x0)
    x = solve(m, b)
    assert x is not None
    assert m.vec(x) == b


def test_solve_unsolvable():
    assert solve(Mat.from_rows([[2]]), [1]) is None
    assert solve(Mat.from_rows([[2, 0], [0, 0]]), [4, 1]) is None
    assert solve_mod(Mat.from_rows([[2]]), [1], 4) is None
    assert solve_mod(Mat.from_rows([[2]]), [1], 3) == [2]


@given(mat_strategy(3), mat_strategy(3), st.lists(small_entries, min_size=3, max_size=3))
@settings(max_examples=100, deadline=None)
def test_preimage_lattice(m, lat, y):
    if lat.r != m.r:
        return
    pre = preimage_lattice(m, lat)
    span = Lattice(lat)
    for j in range(pre.c):
        assert span.contains(m.vec(pre.col(j)))
    # anything that solves m x = lat y must lie in the preimage lattice
    w = lat.vec(y[: lat.c])
    x = solve(m, w)
    if x is not None:
        assert Lattice(pre).contains(x)


def test_lattice_eq():
    a = Mat.from_rows([[2, 0], [0, 3]])
    b = Mat.from_rows([[2, 2], [3, 0]])
    assert lattice_eq(a, b)
    assert not lattice_eq(a, Mat.from_rows([[2, 0], [0, 6]]))


def test_kron_shape():
    a = Mat.from_rows([[1, 2], [3, 4]])
    b = Mat.from_rows([[0, 1], [1, 0]])
    k = kron(a, b)
    assert k.a[0][:4] == [0, 1, 0, 2]
    assert k.r == 4 and k.c == 4


# ------------------------------------------------------- group structure


@given(
    st.lists(st.sampled_from([0, 1, 2, 3, 4, 5, 6, 8, 9, 12]), min_size=0, max_size=4),
    st.integers(0, 10_000),
)
@settings(max_examples=120, deadline=None)
def test_invariants_from_scrambled_presentation(orders, seed):
    rng = random.Random(seed)
    g = FgAbelianGroup(len(orders), scramble(orders, rng, 12) if orders else None)
    assert g.invariants() == canonical_invariants(orders)


def test_group_frozen_examples():
    assert FgAbelianGroup(1, [[4]]).invariants() == [4]
    assert FgAbelianGroup(2, [[2, 0], [0, 3]]).invariants() == [6]
    assert FgAbelianGroup(2, [[2, 0], [0, 4]]).invariants() == [2, 4]
    assert FgAbelianGroup.free(2).invariants() == [0, 0]
    assert FgAbelianGroup.trivial().invariants() == []
    assert FgAbelianGroup.from_invariants([6]).order() == 6
    assert FgAbelianGroup.free(1).order() is None
    assert FgAbelianGroup.from_invariants([2, 4]).exponent() == 4


def test_element_enumeration_and_orders():
    g = FgAbelianGroup(2, [[4, 0], [0, 6]])
    elems = list(g.elements())
    assert len(elems) == 24
    # no duplicates under the normal form
    forms = {tuple(g.normal_form(e)) for e in elems}
    assert len(forms) == 24
    for e in elems:
        k = g.element_order(e)
        # brute force the order
        acc, steps = list(e), 1
        while not g.is_zero(acc):
            acc = [x + y for x, y in zip(acc, e)]
            steps += 1
        assert k == steps
    assert g.element_order([0, 0]) == 1
    assert FgAbelianGroup.free(1).element_order([3]) is None


def test_order_equals_determinant():
    rel = Mat.from_rows([[3, 1], [1, 3]])
    g = FgAbelianGroup(2, rel)
    assert g.order() == abs(leibniz_det(rel)) == 8


# ------------------------------------------------------------------ homs


def test_hom_well_definedness():
    z2 = FgAbelianGroup.cyclic(2)
    z4 = FgAbelianGroup.cyclic(4)
    with pytest.raises(OperationError) as e:
        GroupHom(z2, z4, [[1]])
    assert e.value.code == "not-a-hom"
    f = GroupHom(z2, z4, [[2]])
    assert f([1]) == [2]


def test_kernel_image_cokernel():
    z8 = FgAbelianGroup.cyclic(8)
    z4 = FgAbelianGroup.cyclic(4)
    f = GroupHom(z8, z4, [[1]])  # reduction
    ker, incl = f.kernel()
    assert ker.invariants() == [2]
    assert z4.is_zero(f(incl([1])))
    assert z8.element_order(incl([1])) == 2
    img, _ = f.image()
    assert img.invariants() == [4]
    cok, _ = f.cokernel()
    assert cok.invariants() == []

    g = GroupHom(z4, z8, [[2]])
    assert g.is_injective()
    cok, proj = g.cokernel()
    assert cok.invariants() == [2]
    assert cok.is_zero(proj([2]))
    assert not cok.is_zero(proj([1]))


@given(st.integers(0, 5000))
@settings(max_examples=60, deadline=None)
def test_kernel_image_counting(seed):
    rng = random.Random(seed)
    src_orders = [rng.choice([2, 3, 4, 6]) for _ in range(2)]
    tgt_orders = [rng.choice([2, 4, 8]) for _ in range(2)]
    src = FgAbelianGroup.from_invariants(src_orders)
    tgt = FgAbelianGroup.from_invariants(tgt_orders)
    rows = []
    for i in range(2):
        row = []
        for j in range(2):
            # any multiple of tgt_order / gcd(orders) gives a valid matrix entry
            need = tgt_orders[i] // math.gcd(tgt_orders[i], src_orders[j])
            row.append(need * rng.randint(0, 3))
        rows.append(row)
    f = GroupHom(src, tgt, rows)
    ker, _ = f.kernel()
    img, _ = f.image()
    cok, _ = f.cokernel()
    # brute counts
    kc = sum(1 for e in src.elements() if tgt.is_zero(f(e)))
    image_forms = {tuple(tgt.normal_form(f(e))) for e in src.elements()}
    assert ker.order() == kc
    assert img.order() == len(image_forms)
    assert cok.order() * len(image_forms) == tgt.order()
    assert ker.order() * img.order() == src.order()


def test_subgroup_and_quotient():
    z8 = FgAbelianGroup.cyclic(8)
    sub, incl = subgroup(z8, [[2]])
    assert sub.invariants() == [4]
    q, proj = quotient(z8, incl)
    assert q.invariants() == [2]
    assert q.is_zero(proj([2]))

    bad = GroupHom.zero(FgAbelianGroup.cyclic(2), z8)
    with pytest.raises(OperationError) as e:
        quotient(z8, bad)
    assert e.value.code == "not-a-subgroup"


def test_is_exact():
    triv = FgAbelianGroup.trivial()
    z2 = FgAbelianGroup.cyclic(2)
    z4 = FgAbelianGroup.cyclic(4)
    f = GroupHom(z2, z4, [[2]])
    g = GroupHom(z4, z2, [[1]])
    chain = [GroupHom.zero(triv, z2), f, g, GroupHom.zero(z2, triv)]
    assert is_exact(chain).ok

    broken = [GroupHom.zero(triv, z2), f, GroupHom.zero(z4, z2), GroupHom.zero(z2, triv)]
    rep = is_exact(broken)
    assert not rep.ok
    assert rep.joint == 1
    assert rep.reason == "kernel is larger than the image"

    noncomplex = [f, GroupHom(z4, z4, [[1]])]
    rep = is_exact(noncomplex)
    assert not rep.ok and rep.reason == "image is not contained in the kernel"

    with pytest.raises(OperationError) as exc:
        is_exact([f, GroupHom(z2, z2, [[1]])])
    assert exc.value.code == "not-composable"


# ------------------------------------------------------------------ duals


def test_dual_frozen_example():
    # Hom(Z/6, Z/4) is cyclic of order 2, generated by x -> 2
    d = DualGroup(FgAbelianGroup.cyclic(6), 4)
    assert d.group.invariants() == [2]
    assert d.gen_orders == [2] and d.gen_values == [2]
    assert d.evaluate([1], [1]) == 2
    assert d.evaluate([1], [2]) == 0


@given(
    st.lists(st.sampled_from([2, 3, 4, 6, 8, 9]), min_size=1, max_size=3),
    st.sampled_from([2, 3, 4, 6, 8, 12]),
    st.integers(0, 10_000),
)
@settings(max_examples=80, deadline=None)
def test_dual_order_formula(orders, n, seed):
    rng = random.Random(seed)
    g = FgAbelianGroup(len(orders), scramble(orders, rng, 10))
    d = DualGroup(g, n)
    assert d.group.order() == math.prod(math.gcd(x, n) for x in orders)
    # every advertised character really is one, and addition works pointwise
    chars = list(itertools.islice(d.characters(), 40))
    for w in chars[:6]:
        for e in itertools.islice(g.elements(), 10):
            for f_ in itertools.islice(g.elements(), 5):
                lhs = d.evaluate(w, [a + b for a, b in zip(e, f_)])
                assert lhs == (d.evaluate(w, e) + d.evaluate(w, f_)) % n


def test_dual_pairing_nondegenerate_on_torsion():
    g = FgAbelianGroup.from_invariants([2, 4])
    d = DualGroup(g, 4)
    for e in g.elements():
        if g.is_zero(e):
            continue
        assert any(d.evaluate(w, e) for w in d.characters())


def test_from_generator_values():
    g = FgAbelianGroup(2, [[2, 0], [0, 4]])
    d = DualGroup(g, 4)
    w = d.from_generator_values([2, 1])
    assert d.evaluate(w, [1, 0]) == 2
    assert d.evaluate(w, [0, 1]) == 1
    with pytest.raises(OperationError) as e:
        d.from_generator_values([1, 0])  # 2 * 1 != 0 mod 4
    assert e.value.code == "not-a-character"


def test_dual_hom_contravariant():
    a = FgAbelianGroup.cyclic(4)
    b = FgAbelianGroup.cyclic(8)
    c = FgAbelianGroup.cyclic(2)
    f = GroupHom(a, b, [[2]])
    g = GroupHom(b, c, [[1]])
    n = 8
    da, db, dc = DualGroup(a, n), DualGroup(b, n), DualGroup(c, n)
    gf = g.compose(f)
    lhs = dual_hom(gf, n, dual_source=da, dual_target=dc)
    rhs = dual_hom(f, n, dual_source=da, dual_target=db).compose(
        dual_hom(g, n, dual_source=db, dual_target=dc))
    for j in range(dc.group.ngens):
        w = [0] * dc.group.ngens
        w[j] = 1
        assert da.group.same_element(lhs(w), rhs(w))
    # compatibility with evaluation
    fstar = dual_hom(f, n, dual_source=da, dual_target=db)
    for w in db.characters():
        for e in a.elements():
            assert da.evaluate(fstar(w), e) == db.evaluate(w, f(e))


@given(st.integers(0, 5000))
@settings(max_examples=40, deadline=None)
def test_extend_character_matches_enumeration(seed):
    rng = random.Random(seed)
    n = rng.choice([2, 4, 6, 8])
    divisors = [d for d in [1, 2, 3, 4, 6, 8] if n % d == 0]
    g = FgAbelianGroup.from_invariants([rng.choice(divisors) for _ in range(2)])
    cols = [[rng.randrange(4) for _ in range(2)] for _ in range(rng.randint(1, 2))]
    sub_, incl = subgroup(g, cols)
    dh = DualGroup(sub_, n)
    dg = DualGroup(g, n)
    sub_gens = [incl(sub_.snf_generator(i)) for i in range(sub_.ngens)]
    for w in dh.characters():
        want = [dh.evaluate(w, sub_.snf_generator(i)) for i in range(sub_.ngens)]
        brute = [
            wg for wg in dg.characters()
            if all(dg.evaluate(wg, im) == want[i] for i, im in enumerate(sub_gens))
        ]
        assert brute, "torsion coefficients always extend"
        got = extend_character(incl, w, n, dual_source=dh, dual_target=dg)
        assert all(dg.evaluate(got, im) == want[i] for i, im in enumerate(sub_gens))


def test_extend_character_failure():
    z = FgAbelianGroup.free(1)
    _, incl = subgroup(z, [[2]])
    dh = DualGroup(incl.source, 2)
    w = dh.from_snf_values([1])
    with pytest.raises(OperationError) as e:
        extend_character(incl, w, 2)
    assert e.value.code == "no-extension"


def test_dual_short_exact_sequence():
    # 0 -> Z/2 -> Z/4 -> Z/2 -> 0 dualized mod 4 stays exact
    z2, z4 = FgAbelianGroup.cyclic(2), FgAbelianGroup.cyclic(4)
    f = GroupHom(z2, z4, [[2]])
    g = GroupHom(z4, z2, [[1]])
    n = 4
    d2a, d4, d2b = DualGroup(z2, n), DualGroup(z4, n), DualGroup(z2, n)
    gd = dual_hom(g, n, dual_source=d4, dual_target=d2b)
    fd = dual_hom(f, n, dual_source=d2a, dual_target=d4)
    triv = FgAbelianGroup.trivial()
    chain = [GroupHom.zero(triv, d2b.group), gd, fd, GroupHom.zero(d2a.group, triv)]
    assert is_exact(chain).ok
