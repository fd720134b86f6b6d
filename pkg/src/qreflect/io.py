"""JSON state, mask, and report files.

State files carry ``n``, a ``format`` of either ``hermitian`` (row-major
``re``/``im`` arrays) or ``stokes`` (a flat ``values`` array in base-4
row-major multi-index order), plus free-form annotation fields such as
``seed`` or ``label``.  Floats are written at full double precision.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .reflections import SignMask
from .stokes import DensityState, HermitianOperator, StokesTensor, from_stokes

_STATE_KEYS = {"n", "format", "re", "im", "values"}


class StateFormatError(ValueError):
    """Raised when a state or mask document does not match the schema."""


def state_to_dict(state, **annotations) -> dict:
    if isinstance(state, StokesTensor):
        doc = {"n": state.n, "format": "stokes", "values": state.values.tolist()}
    elif isinstance(state, HermitianOperator):
        doc = {
            "n": state.n,
            "format": "hermitian",
            "re": state.matrix.real.tolist(),
            "im": state.matrix.imag.tolist(),
        }
    else:
        raise TypeError(f"cannot serialise {type(state).__name__}")
    doc.update(annotations)
    return doc


def state_from_dict(doc: dict):
    """Rebuild a state; hermitian documents load as operators, stokes as tensors."""
    if not isinstance(doc, dict):
        raise StateFormatError("state document must be a JSON object")
    fmt = doc.get("format")
    n = doc.get("n")
    if not isinstance(n, int) or fmt not in ("hermitian", "stokes"):
        raise StateFormatError("state document needs integer 'n' and format 'hermitian' or 'stokes'")
    try:
        if fmt == "stokes":
            values = np.asarray(doc["values"], dtype=float)
            tensor = StokesTensor(values)
            if tensor.n != n:
                raise StateFormatError(f"'values' length implies n={tensor.n}, document says {n}")
            return tensor
        re = np.asarray(doc["re"], dtype=float)
        im = np.asarray(doc["im"], dtype=float)
        if re.shape != (2**n, 2**n) or im.shape != re.shape:
            raise StateFormatError(f"'re'/'im' must be {2**n}x{2**n} arrays")
        return HermitianOperator(re + 1j * im)
    except KeyError as exc:
        raise StateFormatError(f"missing field {exc.args[0]!r}") from exc
    except ValueError as exc:
        raise StateFormatError(str(exc)) from exc


def load_density(path) -> DensityState:
    """Load a state file and validate it as a density operator."""
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise StateFormatError(f"cannot read state file {path}: {exc}") from exc
    state = state_from_dict(doc)
    if isinstance(state, StokesTensor):
        state = from_stokes(state)
    try:
        return DensityState(state.matrix)
    except ValueError as exc:
        raise StateFormatError(f"state in {path} is not a density operator: {exc}") from exc


def write_state(path, state, **annotations) -> None:
    Path(path).write_text(json.dumps(state_to_dict(state, **annotations), indent=2) + "\n")


def mask_to_dict(mask: SignMask) -> dict:
    return {"n": mask.n, "name": mask.name, "signs": [int(s) for s in mask.signs]}


def mask_from_dict(doc: dict) -> SignMask:
    try:
        return SignMask(np.asarray(doc["signs"], dtype=np.int8), name=str(doc.get("name", "")))
    except (KeyError, ValueError) as exc:
        raise StateFormatError(f"bad mask document: {exc}") from exc


def write_mask(path, mask: SignMask) -> None:
    Path(path).write_text(json.dumps(mask_to_dict(mask), indent=2) + "\n")


def load_mask(path) -> SignMask:
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise StateFormatError(f"cannot read mask file {path}: {exc}") from exc
    return mask_from_dict(doc)
