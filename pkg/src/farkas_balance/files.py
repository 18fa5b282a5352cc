"""JSON instance and certificate files.

Instance::

    {"p": 31, "support": [0, 4, 9], "places": [3, 5], "E": 2,
     "tolerances": {"hull": 1e-9, "sep": 1e-9, "dft": 1e-9}}

``support`` may be replaced by ``"g": [p values in [0,1]]``.

Certificates carry the variant tag, the p values of h, the claimed spectrum
(spectral variant only) as ``[place, re, im]`` triples, the exception set,
and diagnostics with a full echo of the solver configuration.  Floats are
written with ``repr``, the shortest decimal string that reads back to the
same double, so files round-trip bit for bit.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Union

import jsonschema
import numpy as np

from .dichotomy import Certificate, SmallSpectralSupport, VanishingBalanced
from .errors import FarkasBalanceError, ModulusMismatch
from .zp import (
    PlaceSet,
    PrimeModulus,
    Spectrum,
    SupportSet,
    ZpFunction,
    is_prime,
    reduce_places,
    support_of,
)

CERT_FORMAT = "farkas-balance/certificate"
CERT_VERSION = 1

INSTANCE_SCHEMA = {
    "type": "object",
    "properties": {
        "p": {"type": "integer", "minimum": 2},
        "g": {"type": "array", "items": {"type": "number", "minimum": 0, "maximum": 1}},
        "support": {"type": "array", "items": {"type": "integer"}, "uniqueItems": True},
        "places": {"type": "array", "items": {"type": "integer"}},
        "E": {"type": "integer", "minimum": 0},
        "tolerances": {
            "type": "object",
            "properties": {k: {"type": "number", "exclusiveMinimum": 0} for k in ("hull", "sep", "dft")},
            "additionalProperties": False,
        },
    },
    "required": ["p", "places", "E"],
    "oneOf": [{"required": ["g"]}, {"required": ["support"]}],
    "additionalProperties": False,
}

_number = {"type": ["number", "null"]}
CERTIFICATE_SCHEMA = {
    "type": "object",
    "properties": {
        "format": {"const": CERT_FORMAT},
        "version": {"const": CERT_VERSION},
        "variant": {"enum": ["vanishing_balanced", "small_spectral_support"]},
        "p": {"type": "integer", "minimum": 2},
        "h": {"type": "array", "items": {"type": "number"}},
        "rounds": {"type": "integer", "minimum": 0},
        "l1_norm": {"type": "number"},
        "spectrum": {
            "type": "array",
            "items": {"type": "array", "prefixItems": [{"type": "integer"}, {"type": "number"},
                                                         {"type": "number"}],
                      "minItems": 3, "maxItems": 3},
        },
        "exceptions": {"type": "array", "items": {"type": "integer"}, "uniqueItems": True},
        "rounds_before_separation": {"type": "integer", "minimum": 0},
        "margin": _number,
        "diagnostics": {"type": "object"},
    },
    "required": ["format", "version", "variant", "p", "h", "diagnostics"],
    "allOf": [
        {"if": {"properties": {"variant": {"const": "vanishing_balanced"}}},
         "then": {"required": ["rounds", "l1_norm"]}},
        {"if": {"properties": {"variant": {"const": "small_spectral_support"}}},
         "then": {"required": ["spectrum", "exceptions", "rounds_before_separation", "margin"]}},
    ],
}


class FileFormatError(FarkasBalanceError, ValueError):
    """A file failed to parse or validate; ``problems`` lists every violation."""

    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


@dataclass(frozen=True)
class Instance:
    support: SupportSet
    places: PlaceSet
    E: int
    g: Optional[ZpFunction] = None
    tolerances: dict = field(default_factory=dict)

    @property
    def p(self) -> int:
        return self.support.p


def _schema_problems(doc, schema) -> list:
    validator = jsonschema.Draft202012Validator(schema)
    out = []
    for err in sorted(validator.iter_errors(doc), key=lambda e: list(e.absolute_path)):
        where = "/".join(str(x) for x in err.absolute_path) or "<root>"
        out.append(f"{where}: {err.message}")
    return out


def _read_json(source: Union[str, Path, dict]):
    if isinstance(source, dict):
        return source
    try:
        text = Path(source).read_text()
    except OSError as exc:
        raise FileFormatError([f"cannot read {source}: {exc.strerror}"]) from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FileFormatError([f"invalid JSON: {exc}"]) from exc


def instance_problems(doc) -> list:
    """Every schema or semantic violation in an instance document."""
    problems = _schema_problems(doc, INSTANCE_SCHEMA)
    if problems or not isinstance(doc, dict):
        return problems or ["<root>: instance must be a JSON object"]
    p = doc["p"]
    if not is_prime(p):
        problems.append(f"p: {p} is not prime")
    if "g" in doc and len(doc["g"]) != p:
        problems.append(f"g: expected {p} values, got {len(doc['g'])}")
    for i, n in enumerate(doc.get("support", [])):
        if not 0 <= n < p:
            problems.append(f"support/{i}: {n} outside 0..{p - 1}")
    for i, a in enumerate(doc["places"]):
        if not 1 <= a <= p - 1:
            problems.append(f"places/{i}: {a} outside 1..{p - 1}")
    if p == 2 and doc["places"]:
        problems.append("places: p = 2 admits no places")
    return problems


def load_instance(source) -> Instance:
    doc = _read_json(source)
    problems = instance_problems(doc)
    if problems:
        raise FileFormatError(problems)
    mod = PrimeModulus(doc["p"])
    g = None
    if "g" in doc:
        g = ZpFunction(mod, np.array(doc["g"], dtype=float))
        support = support_of(g)
    else:
        support = SupportSet(mod, frozenset(doc["support"]))
    return Instance(support, reduce_places(doc["places"], mod), doc["E"], g,
                    dict(doc.get("tolerances", {})))


def instance_to_dict(inst: Instance) -> dict:
    doc = {"p": inst.p}
    if inst.g is not None:
        doc["g"] = [float(x) for x in inst.g.values]
    else:
        doc["support"] = sorted(inst.support.members)
    doc["places"] = list(inst.places.raw)
    doc["E"] = inst.E
    if inst.tolerances:
        doc["tolerances"] = dict(inst.tolerances)
    return doc


def _finite_or_none(x):
    if isinstance(x, float) and not math.isfinite(x):
        return None
    if isinstance(x, dict):
        return {k: _finite_or_none(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_finite_or_none(v) for v in x]
    return x


def certificate_to_dict(cert: Certificate) -> dict:
    doc = {
        "format": CERT_FORMAT,
        "version": CERT_VERSION,
        "variant": cert.variant,
        "p": cert.h.p,
        "h": [float(x) + 0.0 for x in cert.h.values],  # + 0.0 folds -0.0 into 0.0
    }
    if isinstance(cert, VanishingBalanced):
        doc["rounds"] = int(cert.rounds)
        doc["l1_norm"] = float(cert.l1_norm)
    else:
        c = cert.spectrum.coeffs
        keep = [a for a in range(cert.h.p) if a == 0 or c[a] != 0]
        doc["spectrum"] = [[a, float(c[a].real), float(c[a].imag)] for a in keep]
        doc["exceptions"] = sorted(int(n) for n in cert.exceptions)
        doc["rounds_before_separation"] = int(cert.rounds_before_separation)
        doc["margin"] = float(cert.margin)
    doc["diagnostics"] = cert.diagnostics
    return _finite_or_none(doc)


def dumps_certificate(cert: Certificate) -> str:
    return json.dumps(certificate_to_dict(cert), indent=1, allow_nan=False) + "\n"


def certificate_from_dict(doc) -> Certificate:
    problems = _schema_problems(doc, CERTIFICATE_SCHEMA)
    if not problems and len(doc["h"]) != doc["p"]:
        problems.append(f"h: expected {doc['p']} values, got {len(doc['h'])}")
    if problems:
        raise FileFormatError(problems)
    try:
        mod = PrimeModulus(doc["p"])
    except FarkasBalanceError as exc:
        raise FileFormatError([f"p: {exc}"]) from exc
    h = ZpFunction(mod, np.array(doc["h"], dtype=float))
    diag = doc["diagnostics"]
    if doc["variant"] == "vanishing_balanced":
        return VanishingBalanced(h, doc["rounds"], float(doc["l1_norm"]), diag)
    coeffs = np.zeros(mod.p, dtype=complex)
    for a, re, im in doc["spectrum"]:
        if not 0 <= a < mod.p:
            raise FileFormatError([f"spectrum: place {a} outside 0..{mod.p - 1}"])
        coeffs[a] = complex(re, im)
    margin = math.inf if doc["margin"] is None else float(doc["margin"])
    return SmallSpectralSupport(h, Spectrum(mod, coeffs), frozenset(doc["exceptions"]),
                                doc["rounds_before_separation"], margin, diag)


def save_certificate(cert: Certificate, path) -> None:
    Path(path).write_text(dumps_certificate(cert))


def load_certificate(source) -> Certificate:
    return certificate_from_dict(_read_json(source))


def check_same_modulus(inst: Instance, cert: Certificate) -> None:
    if inst.p != cert.h.p:
        raise ModulusMismatch(f"instance has p = {inst.p}, certificate has p = {cert.h.p}")
