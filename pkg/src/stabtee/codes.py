"""Stabilizer code definitions, validation, builtins, and JSON persistence.

A code is a finite list of Pauli generator families on a q-qudit-per-site
lattice.  Validation checks that every pair of generator families commutes
under all relative translations, which is exactly the vanishing of the
pairing polynomial for each pair.
"""

from __future__ import annotations

import json
import re
import warnings
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Sequence, Union

from .laurent import LaurentPoly, parse_poly
from .pauli import PauliVector, pairing_poly

__all__ = [
    "CodeSpec",
    "CodeValidationError",
    "ValidationReport",
    "validate",
    "normalized",
    "save_code",
    "load_code",
    "builtin_names",
    "packaged_code_names",
    "get_code",
    "resolve_code",
]

SCHEMA_VERSION = 1


class CodeValidationError(ValueError):
    """Raised when a code fails structural or commutation checks."""


@dataclass(frozen=True)
class CodeSpec:
    """A translation-invariant stabilizer code."""

    name: str
    p: int
    q: int
    generators: tuple[PauliVector, ...]

    def __post_init__(self) -> None:
        if not self.generators:
            raise CodeValidationError("a code needs at least one generator")
        for g in self.generators:
            if (g.p, g.q) != (self.p, self.q):
                raise CodeValidationError(
                    f"generator of shape (p={g.p}, q={g.q}) in code (p={self.p}, q={self.q})"
                )
            if g.is_zero():
                raise CodeValidationError("zero generator")

    @property
    def num_generators(self) -> int:
        return len(self.generators)

    def footprint(self) -> int:
        """Side length in sites of the largest generator bounding box."""
        side = 1
        for g in self.generators:
            box = g.support_box()
            assert box is not None
            side = max(side, box[1] - box[0] + 1, box[3] - box[2] + 1)
        return side

    def reach(self) -> int:
        """Largest coordinate extent of any generator (footprint minus one)."""
        return self.footprint() - 1


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    footprint: int
    violating_pairs: tuple[tuple[int, int], ...] = ()
    details: tuple[str, ...] = ()

    def __str__(self) -> str:
        if self.ok:
            return f"commuting code, footprint {self.footprint}"
        pairs = ", ".join(f"({a},{b})" for a, b in self.violating_pairs)
        return f"non-commuting generator pairs: {pairs}"


def validate(code: CodeSpec) -> ValidationReport:
    """Check pairwise commutation of all generator families under translation."""
    bad: list[tuple[int, int]] = []
    details: list[str] = []
    n = code.num_generators
    for a in range(n):
        for b in range(a, n):
            pp = pairing_poly(code.generators[a], code.generators[b])
            if not pp.is_zero():
                bad.append((a, b))
                details.append(f"generators {a},{b}: pairing polynomial {pp}")
    return ValidationReport(
        ok=not bad,
        footprint=code.footprint(),
        violating_pairs=tuple(bad),
        details=tuple(details),
    )


def normalized(g: PauliVector) -> PauliVector:
    """Translate a generator so its support box starts at the origin."""
    box = g.support_box()
    if box is None:
        return g
    return g.translate(-box[0], -box[2])


def _pv(p: int, q: int, xs: Sequence[str], zs: Sequence[str]) -> PauliVector:
    if len(xs) != q or len(zs) != q:
        raise CodeValidationError(f"need {q} X and {q} Z component polynomials")
    comps = [parse_poly(p, s) if s.strip() not in ("", "0") else LaurentPoly.zero(p) for s in xs]
    comps += [parse_poly(p, s) if s.strip() not in ("", "0") else LaurentPoly.zero(p) for s in zs]
    return PauliVector(p=p, q=q, comps=tuple(comps))


def _check_commuting(code: CodeSpec, on_noncommuting: str) -> CodeSpec:
    if on_noncommuting not in ("error", "warn", "ignore"):
        raise ValueError(f"unknown policy {on_noncommuting!r}")
    if on_noncommuting == "ignore":
        return code
    report = validate(code)
    if report.ok:
        return code
    msg = f"code {code.name!r}: " + "; ".join(report.details)
    if on_noncommuting == "error":
        raise CodeValidationError(msg)
    warnings.warn(msg)
    return code


# ---------------------------------------------------------------------------
# builtin codes


def _toric() -> CodeSpec:
    return CodeSpec(
        name="toric",
        p=2,
        q=2,
        generators=(
            _pv(2, 2, ["y + x*y", "x + x*y"], ["0", "0"]),
            _pv(2, 2, ["0", "0"], ["1 + y", "1 + x"]),
        ),
    )


def _shifted_toric(h: int) -> CodeSpec:
    # Toric code with the second qudit species displaced h+1 rows upward,
    # so h qudit rows separate each displaced qudit from its original seat.
    if h < 0:
        raise ValueError("shift must be nonnegative")
    d = h + 1
    return CodeSpec(
        name=f"shifted_toric(h={h})",
        p=2,
        q=2,
        generators=(
            _pv(2, 2, ["y + x*y", f"y^{d}*x + y^{d}*x*y"], ["0", "0"]),
            _pv(2, 2, ["0", "0"], ["1 + y", f"y^{d} + y^{d}*x"]),
        ),
    )


def _cluster2d() -> CodeSpec:
    return CodeSpec(
        name="cluster2d",
        p=2,
        q=1,
        generators=(_pv(2, 1, ["x*y"], ["x + y + x^2*y + x*y^2"]),),
    )


def _bb(a: str, b: str, p: int = 2) -> CodeSpec:
    pa = parse_poly(p, a)
    pb = parse_poly(p, b)
    za = (-pa.antipode()) if p != 2 else pa.antipode()
    zb = pb.antipode()
    gx = PauliVector(p, 2, (pa, pb, LaurentPoly.zero(p), LaurentPoly.zero(p)))
    gz = PauliVector(p, 2, (LaurentPoly.zero(p), LaurentPoly.zero(p), zb, za))
    return CodeSpec(name=f"bb({a}; {b})", p=p, q=2, generators=(gx, gz))


def _bb33() -> CodeSpec:
    code = _bb("x^3 + y + y^2", "y^3 + x + x^2")
    return CodeSpec(name="bb33", p=2, q=2, generators=code.generators)


def _trivial() -> CodeSpec:
    return CodeSpec(name="trivial", p=2, q=1, generators=(_pv(2, 1, ["0"], ["1"]),))


def _wen() -> CodeSpec:
    return CodeSpec(name="wen", p=2, q=1, generators=(_pv(2, 1, ["1 + x*y"], ["x + y"]),))


def _qudit_toric(p: int) -> CodeSpec:
    pm1 = p - 1
    return CodeSpec(
        name=f"qudit_toric(p={p})",
        p=p,
        q=2,
        generators=(
            _pv(p, 2, [f"x*y + {pm1}*y", f"x*y + {pm1}*x"], ["0", "0"]),
            _pv(p, 2, ["0", "0"], [f"1 + {pm1}*y", f"x + {pm1}"]),
        ),
    )


_BUILTINS = {
    "toric": _toric,
    "shifted_toric": _shifted_toric,
    "cluster2d": _cluster2d,
    "bb": _bb,
    "bb33": _bb33,
    "trivial": _trivial,
    "wen": _wen,
    "qudit_toric": _qudit_toric,
}

_PARAM_DEFAULTS = {
    "shifted_toric": {"h": 1},
    "qudit_toric": {"p": 3},
}


def builtin_names() -> tuple[str, ...]:
    return tuple(sorted(_BUILTINS))


_NAME_RE = re.compile(r"^(?P<base>[a-z0-9_]+)(?:\((?P<args>.*)\))?$")


def get_code(name: str, **params) -> CodeSpec:
    """Look up a builtin code, e.g. ``get_code("shifted_toric", h=2)``.

    The parameterized builtins also accept inline arguments in the name,
    e.g. ``"shifted_toric(h=2)"``, ``"qudit_toric(p=5)"`` or
    ``"bb(x^3 + y + y^2; y^3 + x + x^2)"``.
    """
    m = _NAME_RE.match(name.strip())
    if m is None:
        raise KeyError(f"malformed code name {name!r}")
    base = m.group("base")
    if base not in _BUILTINS:
        raise KeyError(f"unknown code {base!r}; builtins: {', '.join(builtin_names())}")
    args = m.group("args")
    kwargs = dict(_PARAM_DEFAULTS.get(base, {}))
    if args is not None:
        if base == "bb":
            parts = [s.strip() for s in args.split(";")]
            if len(parts) != 2:
                raise ValueError("bb takes two polynomials separated by ';'")
            kwargs.update(a=parts[0], b=parts[1])
        else:
            for item in args.split(","):
                if not item.strip():
                    continue
                k, _, val = item.partition("=")
                if not _:
                    raise ValueError(f"expected key=value in {item!r}")
                kwargs[k.strip()] = int(val)
    kwargs.update(params)
    code = _BUILTINS[base](**kwargs)
    return _check_commuting(code, "error")


# ---------------------------------------------------------------------------
# JSON persistence


def code_to_dict(code: CodeSpec) -> dict:
    gens = []
    for g in code.generators:
        gens.append(
            {
                "x": [str(c) for c in g.comps[: code.q]],
                "z": [str(c) for c in g.comps[code.q :]],
            }
        )
    return {
        "schema": SCHEMA_VERSION,
        "name": code.name,
        "p": code.p,
        "q": code.q,
        "generators": gens,
    }


def code_from_dict(data: dict, on_noncommuting: str = "error") -> CodeSpec:
    try:
        schema = data["schema"]
        name = data["name"]
        p = int(data["p"])
        q = int(data["q"])
        gens_raw = data["generators"]
    except (KeyError, TypeError) as exc:
        raise CodeValidationError(f"malformed code document: missing {exc}") from exc
    if schema != SCHEMA_VERSION:
        raise CodeValidationError(f"unsupported schema version {schema}")
    gens = []
    for i, entry in enumerate(gens_raw):
        try:
            gens.append(_pv(p, q, entry["x"], entry["z"]))
        except (KeyError, ValueError) as exc:
            raise CodeValidationError(f"generator {i}: {exc}") from exc
    code = CodeSpec(name=name, p=p, q=q, generators=tuple(gens))
    return _check_commuting(code, on_noncommuting)


def save_code(code: CodeSpec, path: Union[str, "Path"]) -> None:
    with open(path, "w") as fh:
        json.dump(code_to_dict(code), fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_code(path: Union[str, "Path"], on_noncommuting: str = "error") -> CodeSpec:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise CodeValidationError(f"invalid JSON in {path}: {exc}") from exc
    return code_from_dict(data, on_noncommuting=on_noncommuting)


def packaged_code_names() -> tuple[str, ...]:
    """Names of the code documents shipped inside the package."""
    root = resources.files(__package__) / "codes"
    return tuple(sorted(e.name[:-5] for e in root.iterdir() if e.name.endswith(".json")))


def resolve_code(source: str, on_noncommuting: str = "error") -> CodeSpec:
    """Turn a code reference into a CodeSpec.

    Accepts ``builtin:NAME`` (inline parameters allowed), a filesystem path
    to a JSON code document, or the name of a packaged document; a leading
    directory and a ``.json`` suffix on packaged names are tolerated, so
    ``examples/bb33`` finds the shipped ``bb33`` document.
    """
    src = source.strip()
    if src.startswith("builtin:"):
        return get_code(src[len("builtin:"):])
    path = Path(src)
    if path.is_file():
        return load_code(path, on_noncommuting=on_noncommuting)
    stem = path.name[:-5] if path.name.endswith(".json") else path.name
    res = resources.files(__package__) / "codes" / f"{stem}.json"
    if res.is_file():
        try:
            data = json.loads(res.read_text())
        except json.JSONDecodeError as exc:
            raise CodeValidationError(f"invalid JSON in packaged code {stem}: {exc}") from exc
        return code_from_dict(data, on_noncommuting=on_noncommuting)
    try:
        return get_code(src)
    except (KeyError, ValueError):
        raise CodeValidationError(
            f"cannot resolve code {source!r}: not a file, packaged document, or builtin"
        ) from None
