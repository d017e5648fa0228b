"""Canonical JSON code files.

A code file carries the code itself plus, optionally, the construction
metadata and the hypothesis certificate:

    {"field": {"p": ..., "N": ..., "modulus": [...], "q_minus_1_factors": [...]},
     "n": ..., "k": ..., "delta": ...,
     "coeffs": [G_0, ..., G_mu],            # row-major element reprs
     "construction": {...},                  # optional
     "certificate": {...}}                   # optional

Element reprs are integers for prime fields and little-endian coefficient
lists for extension fields. Files are written with sorted keys, two-space
indentation and a trailing newline, so load followed by save is the
identity on bytes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .constructions import MdsCertificate
from .convcode import ConvCode


def canonical_dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def compact_dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


@dataclass(frozen=True)
class CodeFile:
    code: ConvCode
    construction: dict | None = None
    certificate: MdsCertificate | None = None

    def to_json_dict(self) -> dict:
        doc = self.code.to_json_dict()
        if self.construction is not None:
            doc["construction"] = self.construction
        if self.certificate is not None:
            doc["certificate"] = self.certificate.to_json_dict()
        return doc

    @classmethod
    def from_json_dict(cls, doc: dict) -> "CodeFile":
        cert = doc.get("certificate")
        return cls(
            code=ConvCode.from_json_dict(doc),
            construction=doc.get("construction"),
            certificate=None if cert is None else MdsCertificate.from_json_dict(cert),
        )

    def save(self, path) -> None:
        Path(path).write_text(canonical_dumps(self.to_json_dict()), encoding="utf-8")

    @classmethod
    def load(cls, path) -> "CodeFile":
        return cls.from_json_dict(json.loads(Path(path).read_text(encoding="utf-8")))
