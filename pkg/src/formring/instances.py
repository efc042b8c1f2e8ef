"""Plain-text instance files.

One ``key: value`` per line, ``#`` starts a comment::

    name: triangle
    variables: x, y, z
    ambient:                 # generators of a, comma separated (may be empty)
    ideal: x*y, x*z, y*z
    candidates: x, y, z; x, y + z   # extra primes for condition (ii), ';' separated
    nmax: 3

An SV block uses ``X``/``Y`` (ideals of the same cone coordinates) with
optional ``seed`` and ``bound``. A file with an SV block and no ``ideal`` key
describes the product X x Y with the diagonal ideal.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .gbengine import Ideal
from .graded import PresentedAlgebra
from .polycore import ParseError, Ring

__all__ = ["Instance", "InstanceError", "parse_instance", "load_instance", "corpus_paths"]

KEYS = {"name", "variables", "ambient", "ideal", "candidates", "nmax", "X", "Y", "seed", "bound"}


class InstanceError(ValueError):
    """Invalid instance file."""


@dataclass
class Instance:
    name: str
    ring: Ring
    ambient: list = field(default_factory=list)
    ideal: list = field(default_factory=list)
    candidates: list = field(default_factory=list)
    n_max: int = 3
    x_gens: list = field(default_factory=list)
    y_gens: list = field(default_factory=list)
    seed: int | None = None
    bound: int | None = None
    product_diagonal: bool = False

    @property
    def has_sv(self) -> bool:
        return bool(self.x_gens) and bool(self.y_gens)

    def sv_ideals(self):
        return Ideal(self.ring, self.x_gens), Ideal(self.ring, self.y_gens)

    def pair(self):
        """(A, I generators) for the severi checks."""
        if self.product_diagonal:
            from .svcycle import product_diagonal

            return product_diagonal(*self.sv_ideals())
        A = PresentedAlgebra(self.ring, Ideal(self.ring, self.ambient))
        return A, list(self.ideal)

    def candidate_ideals(self, ring: Ring) -> list:
        return [Ideal(ring, [ring(t) for t in group]) for group in self.candidates]


def _split_list(value: str) -> list:
    return [t.strip() for t in value.split(",") if t.strip()]


def parse_instance(text: str, default_name: str = "instance") -> Instance:
    fields: dict = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise InstanceError(f"line {lineno}: expected 'key: value'")
        key, value = (s.strip() for s in line.split(":", 1))
        if key not in KEYS:
            raise InstanceError(f"line {lineno}: unknown key {key!r}")
        if key in fields:
            raise InstanceError(f"line {lineno}: duplicate key {key!r}")
        fields[key] = value
    if "variables" not in fields:
        raise InstanceError("missing 'variables'")
    try:
        ring = Ring(tuple(_split_list(fields["variables"])))
    except ValueError as exc:
        raise InstanceError(str(exc)) from exc

    def polys(key):
        out = []
        for t in _split_list(fields.get(key, "")):
            try:
                out.append(ring(t))
            except ParseError as exc:
                raise InstanceError(f"{key}: {exc}") from exc
        return out

    def integer(key, default):
        if key not in fields:
            return default
        try:
            return int(fields[key])
        except ValueError:
            raise InstanceError(f"{key} must be an integer") from None

    inst = Instance(
        name=fields.get("name", default_name),
        ring=ring,
        ambient=polys("ambient"),
        ideal=polys("ideal"),
        n_max=integer("nmax", 3),
        x_gens=polys("X"),
        y_gens=polys("Y"),
        seed=integer("seed", None),
        bound=integer("bound", None),
    )
    if inst.n_max < 1:
        raise InstanceError("nmax must be >= 1")
    if bool(inst.x_gens) != bool(inst.y_gens):
        raise InstanceError("an SV block needs both X and Y")
    if not inst.ideal:
        if not inst.has_sv:
            raise InstanceError("need 'ideal' or an X/Y block")
        inst.product_diagonal = True
    groups = [g for g in fields.get("candidates", "").split(";") if g.strip()]
    inst.candidates = [_split_list(g) for g in groups]
    return inst


def load_instance(path) -> Instance:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InstanceError(f"cannot read {path}: {exc}") from exc
    return parse_instance(text, default_name=path.stem)


def corpus_paths() -> list:
    root = Path(__file__).parent / "corpus"
    return sorted(p for p in root.iterdir() if p.suffix in (".ideal", ".sv"))
