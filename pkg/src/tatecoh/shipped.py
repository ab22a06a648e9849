"""The datum files shipped with the package, and their regeneration.

Every file under data/ except the report schema is produced by
write_all; tests compare the files byte for byte against these
builders, so edit here and regenerate rather than editing JSON.
"""

from __future__ import annotations

from pathlib import Path

from .datum import data_dir, dump_datum
from .frobloop import FiltrationDatum, FrobeniusModule
from .gaction import FiniteGroup, GModule
from .langlands import standard_torus, unramified_formation
from .zmodule import FgAbelianGroup, Mat

TORUS_FILES = {
    "gm_split.json": "split-gm",
    "norm1_unramified.json": "norm-one-unramified",
    "norm1_ramified.json": "norm-one-ramified",
    "induced_quadratic.json": "induced-quadratic",
    "induced_cubic.json": "induced-cubic",
    "weyl_2d.json": "weyl-2d",
}


def shipped_objects() -> dict[str, object]:
    out: dict[str, object] = {}
    for fname, torus in TORUS_FILES.items():
        out[fname] = standard_torus(torus)
    for n in (1, 2, 3):
        out[f"unram_c{n}.json"] = unramified_formation(FiniteGroup.cyclic(n))

    c2 = FiniteGroup.cyclic(2)
    out["c2_zminus.json"] = GModule(c2, FgAbelianGroup.free(1),
                                    [Mat.identity(1), Mat.diagonal([-1])],
                                    name="z-with-inversion")
    out["c2_z.json"] = GModule.integers(c2)

    mu8 = FrobeniusModule(FgAbelianGroup.cyclic(8), Mat.from_rows([[3]]))
    zminus = FrobeniusModule(FgAbelianGroup.free(1), Mat.from_rows([[-1]]))
    swap = FrobeniusModule(FgAbelianGroup.free(2), Mat.from_rows([[0, 1], [1, 0]]))
    out["mu8_frob3.json"] = mu8
    out["z_frobminus1.json"] = zminus
    out["z2_swap.json"] = swap

    halving = [Mat.from_rows([[1]]), Mat.from_rows([[2]]), Mat.from_rows([[4]])]
    out["mu8_chain.json"] = FiltrationDatum(mu8, halving)
    out["z_chain.json"] = FiltrationDatum(zminus, list(halving))
    out["swap_chain.json"] = FiltrationDatum(
        swap, [Mat.identity(2), Mat.from_cols([[1, 1]], rows=2),
               Mat.from_cols([[2, 2]], rows=2)])
    return out


def shipped_filtrations() -> dict[str, FiltrationDatum]:
    return {name: obj for name, obj in shipped_objects().items()
            if isinstance(obj, FiltrationDatum)}


def write_all(target: str | Path | None = None) -> list[Path]:
    base = Path(target) if target is not None else Path(str(data_dir()))
    base.mkdir(parents=True, exist_ok=True)
    written = []
    for fname, obj in sorted(shipped_objects().items()):
        path = base / fname
        path.write_text(dump_datum(obj), encoding="utf-8")
        written.append(path)
    return written


if __name__ == "__main__":
    for p in write_all():
        print(p)
