"""JSON encoding of rings, matrices, generating sets and word certificates.

Ring elements travel as decimal strings so arbitrary-precision values
survive any JSON parser; matrices embed their ring so every file is
self-describing.
"""

from __future__ import annotations

from .errors import VerificationFailed
from .matrices import MatrixSL
from .rings import RingSpec
from .words import ConjWord, GenSet, Letter, verify_word


def ring_to_json(ring: RingSpec) -> dict:
    if ring.kind == "Z":
        return {"kind": "Z"}
    if ring.kind == "Zmod":
        return {"kind": "Zmod", "l": ring.modulus}
    return {"kind": "Fp", "p": ring.modulus}


def ring_from_json(data: dict) -> RingSpec:
    kind = data["kind"]
    if kind == "Z":
        return RingSpec.integers()
    if kind == "Zmod":
        return RingSpec.residue(int(data["l"]))
    if kind == "Fp":
        return RingSpec.prime_field(int(data["p"]))
    raise ValueError(f"unknown ring kind {kind!r}")


def parse_ring(text: str) -> RingSpec:
    """Command-line ring syntax: Z | Zmod:12 | Fp:7."""
    if text == "Z":
        return RingSpec.integers()
    if ":" in text:
        kind, _, arg = text.partition(":")
        if kind == "Zmod":
            return RingSpec.residue(int(arg))
        if kind == "Fp":
            return RingSpec.prime_field(int(arg))
    raise ValueError(f"cannot parse ring {text!r} (expected Z, Zmod:<l> or Fp:<p>)")


def matrix_to_json(m: MatrixSL) -> dict:
    return {
        "ring": ring_to_json(m.ring),
        "n": m.n,
        "rows": [[str(v) for v in row] for row in m.entries],
    }


def matrix_from_json(data: dict) -> MatrixSL:
    ring = ring_from_json(data["ring"])
    rows = tuple(tuple(int(v) for v in row) for row in data["rows"])
    return MatrixSL(int(data["n"]), ring, rows)


def genset_to_json(s: GenSet) -> dict:
    out = {"gens": [matrix_to_json(m) for m in s.elements]}
    if s.labels:
        out["labels"] = list(s.labels)
    return out


def genset_from_json(data: dict) -> GenSet:
    gens = tuple(matrix_from_json(m) for m in data["gens"])
    labels = tuple(data["labels"]) if "labels" in data else None
    return GenSet(gens, labels)


def certificate_to_json(
    word: ConjWord, s: GenSet, target: MatrixSL, length: int | None = None
) -> dict:
    return {
        "gens": [matrix_to_json(m) for m in s.elements],
        "letters": [
            {"g": l.gen, "e": l.exp, "c": matrix_to_json(l.conj)} for l in word.letters
        ],
        "claims": {
            "target": matrix_to_json(target),
            "length": len(word) if length is None else length,
        },
    }


def certificate_from_json(data: dict) -> tuple[ConjWord, GenSet, MatrixSL, int]:
    gens = GenSet(tuple(matrix_from_json(m) for m in data["gens"]))
    letters = tuple(
        Letter(int(l["g"]), int(l["e"]), matrix_from_json(l["c"]))
        for l in data["letters"]
    )
    target = matrix_from_json(data["claims"]["target"])
    length = int(data["claims"]["length"])
    return ConjWord(letters), gens, target, length


def replay_certificate(data: dict) -> None:
    """Verify a certificate JSON object; VerificationFailed on any mismatch."""
    word, gens, target, length = certificate_from_json(data)
    verify_word(word, gens, target, length)
