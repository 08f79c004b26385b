"""Scenario files: a small sectioned text format describing one scene.

The format is INI-like with ``#`` comments. Key/value sections carry the
array, sensor, fusion-center, budget, and demand settings; the
``[objects]`` section lists one object per line as
``kind azimuth_deg elevation_deg q``. Unknown sections or keys and
duplicate keys are rejected with line diagnostics.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .scene import (
    ArrayGeometry,
    FusionCenter,
    ObjectKind,
    Scene,
    SceneObject,
    SensorNetwork,
    validate_scene,
)

__all__ = [
    "ParseError",
    "ValidationError",
    "parse_scenario",
    "parse_scenario_with_seed",
    "bundled_scenario_path",
]


class ParseError(Exception):
    """Malformed scenario text; carries 1-based line/column positions."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class ValidationError(Exception):
    """The file parsed but describes an invalid scene."""

    def __init__(self, messages: list[str]):
        self.messages = list(messages)
        super().__init__("; ".join(messages))


_KEY_SECTIONS = {
    "array": ("m", "mprime"),
    "sensors": ("k", "alpha_max", "noise_var"),
    "fusion": ("r", "noise_var"),
    "limits": ("p_max",),
    "demands": ("psi",),
    "rng": ("seed",),
}
_REQUIRED_SECTIONS = ("array", "objects", "sensors", "fusion", "limits", "demands")


def _strip_comment(raw: str) -> str:
    cut = raw.find("#")
    return raw if cut < 0 else raw[:cut]


def _token_column(raw: str, token: str) -> int:
    pos = raw.find(token)
    return pos + 1 if pos >= 0 else 1


def _parse_number(token: str, raw: str, lineno: int, want_int: bool):
    try:
        return int(token) if want_int else float(token)
    except ValueError:
        kind = "an integer" if want_int else "a number"
        raise ParseError(
            f"expected {kind}, got {token!r}", lineno, _token_column(raw, token)
        ) from None


@dataclass
class _Document:
    sections: dict[str, dict[str, tuple[str, int, str]]]
    objects: list[tuple[SceneObject, int]]


def _read_document(path: Path) -> _Document:
    doc = _Document(sections={}, objects=[])
    current: str | None = None
    text = path.read_text(encoding="utf-8")
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw).strip()
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise ParseError("unterminated section header", lineno, 1)
            name = line[1:-1].strip().lower()
            if name != "objects" and name not in _KEY_SECTIONS:
                raise ParseError(f"unknown section [{name}]", lineno, 1)
            if name in doc.sections or (name == "objects" and doc.objects):
                raise ParseError(f"duplicate section [{name}]", lineno, 1)
            doc.sections.setdefault(name, {})
            current = name
            continue
        if current is None:
            raise ParseError("content before any section header", lineno, 1)
        if current == "objects":
            tokens = line.split()
            if len(tokens) != 4:
                raise ParseError(
                    "object rows need exactly 4 fields: kind azimuth_deg elevation_deg q",
                    lineno,
                    1,
                )
            kind_token = tokens[0].lower()
            if kind_token not in ("target", "clutter"):
                raise ParseError(
                    f"object kind must be 'target' or 'clutter', got {tokens[0]!r}",
                    lineno,
                    _token_column(raw, tokens[0]),
                )
            az = _parse_number(tokens[1], raw, lineno, want_int=False)
            el = _parse_number(tokens[2], raw, lineno, want_int=False)
            q = _parse_number(tokens[3], raw, lineno, want_int=False)
            doc.objects.append(
                (SceneObject(ObjectKind(kind_token), az, el, q), lineno)
            )
            continue
        if "=" not in line:
            raise ParseError("expected 'key = value'", lineno, 1)
        key, _, value = line.partition("=")
        key = key.strip().lower()
        value = value.strip()
        if key not in _KEY_SECTIONS[current]:
            raise ParseError(
                f"unknown key {key!r} in section [{current}]",
                lineno,
                _token_column(raw, key),
            )
        if key in doc.sections[current]:
            raise ParseError(
                f"duplicate key {key!r} in section [{current}]",
                lineno,
                _token_column(raw, key),
            )
        if not value:
            raise ParseError(f"empty value for key {key!r}", lineno, 1)
        doc.sections[current][key] = (value, lineno, raw)
    return doc


def _require(doc: _Document, section: str, key: str) -> tuple[str, int, str]:
    try:
        return doc.sections[section][key]
    except KeyError:
        raise ParseError(f"missing key {key!r} in section [{section}]") from None


def parse_scenario_with_seed(path: str | Path) -> tuple[Scene, int | None]:
    """Parse a scenario file into a validated scene plus its optional seed."""
    path = Path(path)
    doc = _read_document(path)
    for section in _REQUIRED_SECTIONS:
        if section not in doc.sections:
            raise ParseError(f"missing required section [{section}]")

    def num(section: str, key: str, want_int: bool = False):
        value, lineno, raw = _require(doc, section, key)
        return _parse_number(value, raw, lineno, want_int)

    geometry = ArrayGeometry(num("array", "m", True), num("array", "mprime", True))
    if not doc.objects:
        raise ParseError("section [objects] lists no objects")
    objects = tuple(obj for obj, _ in doc.objects)
    sensors = SensorNetwork(
        num("sensors", "k", True),
        num("sensors", "alpha_max"),
        num("sensors", "noise_var"),
    )
    fusion = FusionCenter(num("fusion", "r", True), num("fusion", "noise_var"))
    p_max = num("limits", "p_max")
    psi_value, psi_line, psi_raw = _require(doc, "demands", "psi")
    demands = tuple(
        _parse_number(tok, psi_raw, psi_line, want_int=False)
        for tok in psi_value.replace(",", " ").split()
    )
    seed: int | None = None
    if "rng" in doc.sections and "seed" in doc.sections["rng"]:
        seed = num("rng", "seed", True)

    scene = Scene(
        geometry=geometry,
        objects=objects,
        sensors=sensors,
        fusion=fusion,
        p_max=p_max,
        sinr_demands=demands,
    )
    errors = [i.message for i in validate_scene(scene) if i.severity == "error"]
    if errors:
        raise ValidationError(errors)
    return scene, seed


def parse_scenario(path: str | Path) -> Scene:
    """Parse a scenario file into a validated :class:`Scene`."""
    return parse_scenario_with_seed(path)[0]


def bundled_scenario_path(name: str = "paper_s4") -> Path:
    """Filesystem path of a scenario shipped with the package."""
    if not name.endswith(".scn"):
        name += ".scn"
    return Path(str(resources.files("afsense").joinpath("data", name)))
