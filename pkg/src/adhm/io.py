"""JSON (de)serialization of ADHM data and bundled fixtures."""

from __future__ import annotations

import hashlib
import json
from importlib import resources
from pathlib import Path

from .datum import AdhmDatum, BilinearForm, SoDatum
from .errors import AdhmError
from .linalg import Matrix


class ParseError(AdhmError):
    kind = "parse"


def datum_to_json(x) -> dict:
    out = {"dimV": x.dimV, "dimW": x.dimW, "B1": x.B1.to_json(), "B2": x.B2.to_json(), "i": x.i.to_json()}
    if isinstance(x, SoDatum):
        out["formV"] = x.formV.to_json()
        out["formW"] = x.formW.to_json()
    else:
        out["j"] = x.j.to_json()
    return out


def datum_from_json(obj: dict, check: bool = True):
    """AdhmDatum, or SoDatum when both forms are present (j is then derived)."""
    try:
        B1, B2, i = (Matrix.from_json(obj[key]) for key in ("B1", "B2", "i"))
        if "formV" in obj and "formW" in obj:
            formV = BilinearForm.from_json(obj["formV"])
            formW = BilinearForm.from_json(obj["formW"])
            y = SoDatum(B1, B2, i, formV, formW, check=check)
            if "j" in obj and Matrix.from_json(obj["j"]) != y.j:
                raise ParseError("stored j is not the adjoint of i")
            x = y
        else:
            x = AdhmDatum(B1, B2, i, Matrix.from_json(obj["j"]))
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"malformed datum: {exc}") from exc
    for key, val in (("dimV", x.dimV), ("dimW", x.dimW)):
        if key in obj and int(obj[key]) != val:
            raise ParseError(f"{key} = {obj[key]} does not match the matrices")
    return x


FIXTURE_PREFIX = "fixture:"


def fixture_names() -> list[str]:
    root = resources.files("adhm") / "fixtures"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def read_text(path: str) -> str:
    """Contents of a file, or of a bundled fixture when written as ``fixture:NAME``."""
    if path.startswith(FIXTURE_PREFIX):
        name = path[len(FIXTURE_PREFIX):]
        res = resources.files("adhm") / "fixtures" / f"{name}.json"
        if not res.is_file():
            raise ParseError(f"unknown fixture {name!r}; available: {', '.join(fixture_names())}")
        return res.read_text()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ParseError(str(exc)) from exc


def load_datum(path: str, check: bool = True):
    text = read_text(path)
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise ParseError("datum JSON must be an object")
    return datum_from_json(obj, check=check)


def text_hash(path: str) -> str:
    return hashlib.sha256(read_text(path).encode()).hexdigest()


def dump_datum(x, path: str | Path) -> None:
    Path(path).write_text(json.dumps(datum_to_json(x), indent=2) + "\n")
