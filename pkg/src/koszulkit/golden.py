"""Golden regression tables shipped with the package.

Each case is a function producing exact JSON data.  ``check`` recomputes
every case and reports differences by case name and JSON path.
"""
from __future__ import annotations

import json
from pathlib import Path

from . import affine as aff
from . import dg
from . import koszul as kz
from .examples import bundled
from .roots import build

GOLDEN_DIR = Path(__file__).with_name("golden")


def _w0(t, p):
    return lambda: aff.w0_table(build(t), p)


def _ext(name):
    def run():
        data = kz.AlgebraData(bundled(name))
        out = {}
        for i in range(data.n_simples):
            tab = kz.ext_bigraded_dims(data, i, None, 4)
            out[str(i)] = {f"({n},{j},{m})": v for (n, j, m), v in sorted(tab.items())}
        return {"verdict": kz.is_koszul(data, 4).to_json(), "ext": out}
    return run


def _koszul_complex(n):
    return lambda: dg.table_to_json(dg.cohomology(dg.koszul_complex(n), trusted_only=True))


CASES = {
    "w0_A1_p3": _w0("A1", 3),
    "w0_A2_p5": _w0("A2", 5),
    "w0_B2_p5": _w0("B2", 5),
    "w0_G2_p7": _w0("G2", 7),
    "ext_lambda2": _ext("lambda2"),
    "ext_kx_x3": _ext("kx_x3"),
    "ext_quiver_a3_rel": _ext("quiver_a3_rel"),
    "koszul_complex_3": _koszul_complex(3),
}


def compute(name: str):
    return json.loads(json.dumps(CASES[name](), sort_keys=True))


def write(directory: Path = GOLDEN_DIR) -> None:
    directory.mkdir(parents=True, exist_ok=True)
    for name in CASES:
        (directory / f"{name}.json").write_text(json.dumps(compute(name), sort_keys=True, indent=1) + "\n")


def diff(expected, actual, path: str = "") -> list[str]:
    """Differences as ``path: expected != actual`` strings."""
    if isinstance(expected, dict) and isinstance(actual, dict):
        out = []
        for k in sorted(set(expected) | set(actual)):
            if k not in actual:
                out.append(f"{path}/{k}: missing")
            elif k not in expected:
                out.append(f"{path}/{k}: unexpected")
            else:
                out.extend(diff(expected[k], actual[k], f"{path}/{k}"))
        return out
    if isinstance(expected, list) and isinstance(actual, list):
        if len(expected) != len(actual):
            return [f"{path}: length {len(expected)} != {len(actual)}"]
        out = []
        for k, (a, b) in enumerate(zip(expected, actual)):
            out.extend(diff(a, b, f"{path}[{k}]"))
        return out
    return [] if expected == actual else [f"{path}: {expected!r} != {actual!r}"]


def check(directory: Path = GOLDEN_DIR) -> dict:
    """{case name: list of differences}; an empty list means the case matches."""
    report = {}
    for name in CASES:
        f = Path(directory) / f"{name}.json"
        if not f.exists():
            report[name] = ["golden file missing"]
            continue
        report[name] = diff(json.loads(f.read_text()), compute(name))
    return report
