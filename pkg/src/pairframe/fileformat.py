"""Reading and writing frame files.

A frame file is a UTF-8 JSON document, format_version "1", describing one
family (and optionally a second family plus weights, making it a pair
system). Complex numbers are two-element [re, im] arrays throughout. The
primary family appears under exactly one of:

- ``"vectors"``: list of length-dim complex vectors f_i, the ordinary-frame
  shorthand for the operators f_i^H;
- ``"operators"``: list of complex matrices, each d_i x dim.

Optional keys: ``"weights"`` (complex list, one per member, defaults to
ones) and ``"gamma"`` (an object holding the second family under the same
two encodings).

Parse and validation problems raise :class:`FrameFileError`; size clashes
between declared and actual dimensions raise ``DimensionMismatchError``.
Serialization keeps full double precision, so parse/serialize round-trips
are lossless.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from numbers import Real

import numpy as np

from .errors import DimensionMismatchError, FrameFileError
from .frames import OperatorFamily
from .pairs import PairSystem, WeightSequence

FORMAT_VERSION = "1"

_ROOT_KEYS = {"format_version", "dim", "vectors", "operators", "weights", "gamma"}
_FAMILY_KEYS = {"vectors", "operators"}


@dataclass(frozen=True, eq=False)
class FrameDocument:
    """Parsed contents of a frame file.

    ``lam`` is the primary family; ``gamma`` may be None. The encodings
    remember whether each family arrived as vectors or operators so a
    round-trip serializes the same shape.
    """

    dim: int
    lam: OperatorFamily
    lam_encoding: str
    gamma: OperatorFamily | None = None
    gamma_encoding: str | None = None
    weights: WeightSequence | None = None

    def pair_system(self) -> PairSystem:
        """Pair system with gamma defaulting to the primary family."""
        weights = self.weights if self.weights is not None else WeightSequence([1.0] * self.lam.count)
        gamma = self.gamma if self.gamma is not None else self.lam
        return PairSystem(weights, gamma, self.lam)


def _complex_in(node, where: str) -> complex:
    ok = (
        isinstance(node, list)
        and len(node) == 2
        and all(isinstance(x, Real) and not isinstance(x, bool) for x in node)
    )
    if not ok:
        raise FrameFileError(f"{where}: complex values are [re, im] number pairs, got {node!r}")
    return complex(float(node[0]), float(node[1]))


def _vector_in(node, where: str) -> np.ndarray:
    if not isinstance(node, list) or not node:
        raise FrameFileError(f"{where}: expected a nonempty list of complex values")
    return np.array([_complex_in(v, f"{where}[{k}]") for k, v in enumerate(node)])


def _family_in(node: dict, dim: int, where: str) -> tuple[OperatorFamily, str]:
    present = _FAMILY_KEYS & set(node)
    if len(present) != 1:
        raise FrameFileError(
            f"{where}: exactly one of 'vectors' or 'operators' is required, found {sorted(present)}"
        )
    encoding = present.pop()
    body = node[encoding]
    if not isinstance(body, list) or not body:
        raise FrameFileError(f"{where}.{encoding}: expected a nonempty list")
    if encoding == "vectors":
        vectors = [_vector_in(v, f"{where}.vectors[{k}]") for k, v in enumerate(body)]
        return OperatorFamily.from_vectors(vectors, dim), encoding
    members = []
    for k, mat in enumerate(body):
        if not isinstance(mat, list) or not mat:
            raise FrameFileError(f"{where}.operators[{k}]: expected a nonempty list of rows")
        rows = [_vector_in(r, f"{where}.operators[{k}][{j}]") for j, r in enumerate(mat)]
        widths = {len(r) for r in rows}
        if len(widths) != 1:
            raise FrameFileError(f"{where}.operators[{k}]: ragged rows with widths {sorted(widths)}")
        members.append(np.vstack(rows))
    return OperatorFamily(members, dim), encoding


def parse_document(text: str) -> FrameDocument:
    """Parse and validate one frame file from its text."""
    try:
        root = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FrameFileError(f"not valid JSON: {exc}") from None
    if not isinstance(root, dict):
        raise FrameFileError("top level must be an object")
    unknown = set(root) - _ROOT_KEYS
    if unknown:
        raise FrameFileError(f"unknown keys {sorted(unknown)}")
    if root.get("format_version") != FORMAT_VERSION:
        raise FrameFileError(
            f"format_version {root.get('format_version')!r} unsupported, expected {FORMAT_VERSION!r}"
        )
    dim = root.get("dim")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise FrameFileError(f"dim must be a positive integer, got {dim!r}")

    lam, lam_encoding = _family_in(root, dim, "$")

    gamma = gamma_encoding = None
    if "gamma" in root:
        if not isinstance(root["gamma"], dict):
            raise FrameFileError("gamma must be an object")
        extra = set(root["gamma"]) - _FAMILY_KEYS
        if extra:
            raise FrameFileError(f"gamma: unknown keys {sorted(extra)}")
        gamma, gamma_encoding = _family_in(root["gamma"], dim, "gamma")
        if gamma.count != lam.count:
            raise DimensionMismatchError(
                f"gamma has {gamma.count} members, primary family has {lam.count}"
            )
        for i, (g, l) in enumerate(zip(gamma.members, lam.members)):
            if g.shape[0] != l.shape[0]:
                raise DimensionMismatchError(
                    f"member {i}: gamma rows {g.shape[0]} != primary rows {l.shape[0]}"
                )

    weights = None
    if "weights" in root:
        if not isinstance(root["weights"], list):
            raise FrameFileError("weights must be a list of complex values")
        vals = [_complex_in(w, f"weights[{k}]") for k, w in enumerate(root["weights"])]
        if len(vals) != lam.count:
            raise DimensionMismatchError(
                f"{len(vals)} weights for {lam.count} members"
            )
        weights = WeightSequence(vals)

    return FrameDocument(
        dim=dim,
        lam=lam,
        lam_encoding=lam_encoding,
        gamma=gamma,
        gamma_encoding=gamma_encoding,
        weights=weights,
    )


def load_document(path) -> FrameDocument:
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_document(fh.read())
    except OSError as exc:
        raise FrameFileError(f"cannot read {path}: {exc.strerror}") from None


_NUM = r"-?\d+(?:\.\d+)?(?:[eE][+-]?\d+)?"
_PAIR_RE = re.compile(rf"\[\s*({_NUM}),\s*({_NUM})\s*\]")


def compact_pairs(text: str) -> str:
    """Collapse two-number JSON arrays ([re, im] pairs) onto one line."""
    return _PAIR_RE.sub(r"[\1, \2]", text)


def _complex_out(z: complex) -> list:
    # + 0.0 folds IEEE negative zeros (conjugation artifacts) into plain 0.0
    return [float(z.real) + 0.0, float(z.imag) + 0.0]


def _family_out(family: OperatorFamily, encoding: str):
    if encoding == "vectors":
        if any(d != 1 for d in family.codims):
            raise ValueError("vector encoding requires every member to be a single row")
        return [[_complex_out(z) for z in m[0].conj()] for m in family.members]
    return [[[_complex_out(z) for z in row] for row in m] for m in family.members]


def vector_encoding(family: OperatorFamily) -> str:
    """Natural file encoding for a family: vectors when every d_i = 1."""
    return "vectors" if all(d == 1 for d in family.codims) else "operators"


def serialize_document(doc: FrameDocument) -> str:
    """Render a document back to frame-file text (full double precision)."""
    root = {"format_version": FORMAT_VERSION, "dim": doc.dim}
    root[doc.lam_encoding] = _family_out(doc.lam, doc.lam_encoding)
    if doc.weights is not None:
        root["weights"] = [_complex_out(w) for w in doc.weights.values]
    if doc.gamma is not None:
        enc = doc.gamma_encoding or vector_encoding(doc.gamma)
        root["gamma"] = {enc: _family_out(doc.gamma, enc)}
    return compact_pairs(json.dumps(root, indent=2)) + "\n"


def parse_signal(text: str) -> np.ndarray:
    """Parse a signal file: {"format_version": "1", "dim": n, "vector": [...]}."""
    try:
        root = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FrameFileError(f"not valid JSON: {exc}") from None
    if not isinstance(root, dict) or root.get("format_version") != FORMAT_VERSION:
        raise FrameFileError("signal file must be an object with format_version '1'")
    dim = root.get("dim")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise FrameFileError(f"dim must be a positive integer, got {dim!r}")
    vec = _vector_in(root.get("vector"), "vector")
    if len(vec) != dim:
        raise DimensionMismatchError(f"signal has {len(vec)} entries, declared dim {dim}")
    return vec


def load_signal(path) -> np.ndarray:
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_signal(fh.read())
    except OSError as exc:
        raise FrameFileError(f"cannot read {path}: {exc.strerror}") from None
