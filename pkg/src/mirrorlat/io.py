"""JSON input files, canonical serialization and run reports.

Every value survives a round trip: ``parse_value(dump_value(x)) == x``.
Integers are JSON integers, rationals are strings "p/q" in lowest terms
(plain "p" when integral). Floats are rejected because they are not exact.
"""

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction

from .avhs import ConnectionPresentation, GradedSpace, GWData, HodgeDiamond
from .errors import InputError, InvariantError
from .lattice import Lattice, Sublattice, standard_lattice
from .mukai import MukaiVector, PeriodPoint
from .series import TruncatedSeries
from .tduality import DualClass, PureCycle, fiber_lattice

FORMAT_VERSION = 1


# -- scalars ------------------------------------------------------------------

def fmt_rational(x):
    """Canonical text of an exact number: Fraction(-4, 6) -> "-2/3"."""
    return str(Fraction(x))


def _int(x, what):
    if isinstance(x, bool) or not isinstance(x, int):
        raise InputError(f"{what}: expected an integer, got {x!r}")
    return x


def _rational(x, what):
    if isinstance(x, bool):
        raise InputError(f"{what}: expected a rational, got {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            raise InputError(f"{what}: cannot read {x!r} as a rational 'p/q'") from None
    raise InputError(f"{what}: expected an integer or a 'p/q' string, got {x!r}")


def _list(x, what):
    if not isinstance(x, list):
        raise InputError(f"{what}: expected a list, got {type(x).__name__}")
    return x


def _ints(x, what):
    return [_int(v, f"{what}[{i}]") for i, v in enumerate(_list(x, what))]


def _rationals(x, what):
    return [_rational(v, f"{what}[{i}]") for i, v in enumerate(_list(x, what))]


def _matrix(x, what, conv=_ints):
    return [conv(row, f"{what}[{i}]") for i, row in enumerate(_list(x, what))]


def _require(doc, key, what):
    if key not in doc:
        raise InputError(f"{what}: missing field '{key}'")
    return doc[key]


# -- JSON text ----------------------------------------------------------------

def loads(text, source="<input>"):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        err = InputError(f"{source}: line {exc.lineno}, column {exc.colno}: {exc.msg}")
        err.line, err.column = exc.lineno, exc.colno
        raise err from None


def read_text(path):
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        return data.decode("utf-8"), data
    except UnicodeDecodeError:
        raise InputError(f"{path}: not valid UTF-8") from None


def dumps(obj):
    """Deterministic JSON: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# -- typed values -------------------------------------------------------------

def _detect(doc):
    if not isinstance(doc, dict):
        raise InputError("top-level JSON value must be an object")
    if "type" in doc:
        return doc["type"]
    keys = set(doc)
    if "gram" in keys:
        return "lattice"
    if "fiber_basis" in keys:
        return "cycle"
    if {"alpha", "beta", "gamma"} <= keys:
        return "mukai_vector"
    if {"re", "im"} <= keys:
        return "period"
    if "operators" in keys:
        return "presentation"
    if "dims" in keys and ("classes" in keys or "cup" in keys):
        return "gw"
    if "table" in keys:
        return "diamond"
    if "degree" in keys and "dual_basis" in keys:
        return "dual_class"
    raise InputError("cannot tell the kind of input; add a \"type\" field")


def parse_lattice(doc):
    gram = _matrix(_require(doc, "gram", "lattice"), "gram")
    if "rank" in doc and _int(doc["rank"], "rank") != len(gram):
        raise InvariantError("rank matches gram", f"rank {doc['rank']} but gram has {len(gram)} rows")
    labels = doc.get("labels")
    if labels is not None:
        labels = [str(s) for s in _list(labels, "labels")]
    flags = [str(s) for s in _list(doc.get("flags", []), "flags")]
    return Lattice(gram, labels=labels, flags=frozenset(flags))


def dump_lattice(L):
    out = {"type": "lattice", "rank": L.rank, "gram": [list(r) for r in L.gram],
           "flags": sorted(L.flags)}
    if L.labels is not None:
        out["labels"] = list(L.labels)
    return out


def parse_mukai_vector(doc):
    return MukaiVector(_int(_require(doc, "alpha", "mukai vector"), "alpha"),
                       _ints(_require(doc, "beta", "mukai vector"), "beta"),
                       _int(_require(doc, "gamma", "mukai vector"), "gamma"))


def dump_mukai_vector(v):
    return {"type": "mukai_vector", "alpha": v.alpha, "beta": list(v.beta), "gamma": v.gamma}


def parse_period(doc):
    return PeriodPoint(_rationals(_require(doc, "re", "period"), "re"),
                       _rationals(_require(doc, "im", "period"), "im"))


def dump_period(p):
    return {"type": "period", "re": [fmt_rational(x) for x in p.re],
            "im": [fmt_rational(x) for x in p.im]}


def parse_cycle(doc):
    n = _int(_require(doc, "n", "cycle"), "n")
    basis = _matrix(_require(doc, "fiber_basis", "cycle"), "fiber_basis")
    if any(len(b) != n for b in basis):
        raise InvariantError("fiber basis length", f"vectors must have {n} entries")
    k = _int(_require(doc, "k", "cycle"), "k")
    m = _int(doc.get("multiplicity", 1), "multiplicity")
    return PureCycle(n, fiber_lattice(n, basis), k, m)


def dump_cycle(W):
    return {"type": "cycle", "n": W.n, "fiber_basis": [list(b) for b in W.fiber.canonical()],
            "k": W.base_dim, "multiplicity": W.multiplicity}


def parse_dual_class(doc):
    basis = _matrix(_require(doc, "dual_basis", "dual class"), "dual_basis")
    n = _int(doc["n"], "n") if "n" in doc else (len(basis[0]) if basis else None)
    if n is None:
        raise InputError("dual class: field 'n' is needed when the dual basis is empty")
    return DualClass(_int(doc["degree"], "degree"),
                     Sublattice(standard_lattice(n), tuple(tuple(b) for b in basis)),
                     _int(doc.get("rank_hint", 1), "rank_hint"))


def dump_dual_class(c):
    return {"type": "dual_class", "n": c.dual.ambient.rank, "degree": c.degree,
            "dual_basis": [list(b) for b in c.dual.canonical()], "rank_hint": c.rank_hint}


def _parse_triples(entries, what):
    out = {}
    for i, e in enumerate(_list(entries, what)):
        e = _list(e, f"{what}[{i}]")
        if len(e) != 4:
            raise InputError(f"{what}[{i}]: expected [A, B, C, value]")
        key = tuple(_int(x, f"{what}[{i}]") for x in e[:3])
        out[key] = _rational(e[3], f"{what}[{i}]")
    return out


def _dump_triples(entries):
    return [[a, b, c, fmt_rational(v)] for (a, b, c), v in sorted(entries.items())]


def parse_space(doc):
    n = _int(_require(doc, "n", "graded space"), "n")
    dims = _ints(_require(doc, "dims", "graded space"), "dims")
    cup = _parse_triples(_require(doc, "cup", "graded space"), "cup")
    labels = doc.get("labels")
    return GradedSpace(n, dims, cup, tuple(str(s) for s in labels) if labels is not None else None)


def _canonical_triples(entries):
    """One representative (sorted indices) per symmetric orbit."""
    return {k: v for k, v in entries.items() if tuple(sorted(k)) == k}


def dump_space(S):
    return {"n": S.n, "dims": list(S.dims), "labels": list(S.labels),
            "cup": _dump_triples(_canonical_triples(S.cup))}


def parse_gw(doc):
    """GW file -> GWData. Phi entries are given once per symmetric orbit."""
    from .avhs import _symmetric_closure
    space = parse_space(doc)
    phi = {}
    for i, cls in enumerate(_list(doc.get("classes", []), "classes")):
        if not isinstance(cls, dict):
            raise InputError(f"classes[{i}]: expected an object")
        eta = tuple(_ints(_require(cls, "eta", f"classes[{i}]"), f"classes[{i}].eta"))
        entries = _parse_triples(cls.get("phi", []), f"classes[{i}].phi")
        if eta in phi:
            raise InputError(f"classes[{i}]: class {list(eta)} listed twice")
        phi[eta] = _symmetric_closure(entries)
    return GWData(space, phi)


def dump_gw(G, cutoff=None):
    out = dump_space(G.space)
    out["type"] = "gw"
    out["classes"] = [{"eta": list(eta), "phi": _dump_triples(_canonical_triples(entries))}
                      for eta, entries in G.phi.items()]
    if cutoff is not None:
        out["cutoff"] = cutoff
    return out


def parse_series(x, nvars, cutoff, what):
    coeffs = {}
    for i, term in enumerate(_list(x, what)):
        term = _list(term, f"{what}[{i}]")
        if len(term) != 2:
            raise InputError(f"{what}[{i}]: expected [exponents, coefficient]")
        exp = tuple(_ints(term[0], f"{what}[{i}]"))
        if len(exp) != nvars or any(e < 0 for e in exp):
            raise InputError(f"{what}[{i}]: exponent must have {nvars} nonnegative entries")
        if exp in coeffs:
            raise InputError(f"{what}[{i}]: monomial {list(exp)} repeated")
        coeffs[exp] = _rational(term[1], f"{what}[{i}]")
    return TruncatedSeries(nvars, cutoff, coeffs)


def dump_series(s):
    return [[list(e), fmt_rational(v)] for e, v in s.items()]


def parse_series_matrix(x, nvars, cutoff, what):
    return [[parse_series(s, nvars, cutoff, f"{what}[{i}][{j}]") for j, s in enumerate(_list(row, f"{what}[{i}]"))]
            for i, row in enumerate(_list(x, what))]


def dump_series_matrix(M):
    return [[dump_series(s) for s in row] for row in M]


def parse_presentation(doc):
    dim = _int(_require(doc, "dim", "presentation"), "dim")
    nvars = _int(_require(doc, "nvars", "presentation"), "nvars")
    cutoff = _int(_require(doc, "cutoff", "presentation"), "cutoff")
    ops = [parse_series_matrix(M, nvars, cutoff, f"operators[{j}]")
           for j, M in enumerate(_list(_require(doc, "operators", "presentation"), "operators"))]
    filt = [_matrix(level, f"filtration[{p}]", _rationals)
            for p, level in enumerate(_list(doc.get("filtration", []), "filtration"))]
    return ConnectionPresentation(dim, nvars, cutoff, ops, filt)


def dump_presentation(P):
    return {"type": "presentation", "dim": P.dim, "nvars": P.nvars, "cutoff": P.cutoff,
            "operators": [dump_series_matrix(P.op(j)) for j in range(P.nvars)],
            "filtration": [[[fmt_rational(x) for x in v] for v in level] for level in P.filtration]}


def parse_diamond(doc):
    return HodgeDiamond(_int(_require(doc, "n", "diamond"), "n"),
                        _matrix(_require(doc, "table", "diamond"), "table"))


def dump_diamond(h):
    return {"type": "diamond", "n": h.n, "table": [list(r) for r in h.table]}


_PARSERS = {
    "lattice": parse_lattice,
    "mukai_vector": parse_mukai_vector,
    "period": parse_period,
    "cycle": parse_cycle,
    "dual_class": parse_dual_class,
    "gw": parse_gw,
    "presentation": parse_presentation,
    "diamond": parse_diamond,
}

_DUMPERS = [
    (Lattice, dump_lattice),
    (MukaiVector, dump_mukai_vector),
    (PeriodPoint, dump_period),
    (PureCycle, dump_cycle),
    (DualClass, dump_dual_class),
    (GWData, dump_gw),
    (ConnectionPresentation, dump_presentation),
    (HodgeDiamond, dump_diamond),
]


def parse_value(doc, kind=None):
    """Typed value from a decoded JSON document."""
    kind = kind or _detect(doc)
    if kind not in _PARSERS:
        raise InputError(f"unknown input type {kind!r}")
    return _PARSERS[kind](doc)


def dump_value(x):
    for cls, fn in _DUMPERS:
        if isinstance(x, cls):
            return fn(x)
    raise TypeError(f"no serializer for {type(x).__name__}")


def parse_input(source, kind=None):
    """Parse a path, a file object or JSON text into a typed value."""
    if hasattr(source, "read"):
        text = source.read()
        if isinstance(text, bytes):
            text = text.decode("utf-8")
        name = getattr(source, "name", "<stream>")
    elif isinstance(source, str) and source.lstrip().startswith("{"):
        text, name = source, "<text>"
    else:
        text, _ = read_text(source)
        name = str(source)
    return parse_value(loads(text, name), kind)


def emit_value(x):
    return dumps(dump_value(x))


# -- reports ------------------------------------------------------------------

def to_jsonable(x):
    """Canonical JSON form of results: rationals as strings, tuples as lists."""
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return fmt_rational(x)
    if isinstance(x, dict):
        return {str(k): to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_jsonable(v) for v in x]
    if isinstance(x, TruncatedSeries):
        return dump_series(x)
    try:
        return dump_value(x)
    except TypeError:
        raise TypeError(f"cannot report a value of type {type(x).__name__}") from None


@dataclass
class RunReport:
    command: list
    digests: dict = field(default_factory=dict)
    results: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)

    def check(self, name, ok):
        self.checks.append((name, bool(ok)))
        return bool(ok)

    @property
    def passed(self):
        return all(ok for _, ok in self.checks)

    def as_json(self):
        return {"command": list(self.command),
                "inputs": {k: v for k, v in sorted(self.digests.items())},
                "results": to_jsonable(self.results),
                "checks": [{"name": n, "pass": ok} for n, ok in self.checks]}


def digest(data):
    if isinstance(data, str):
        data = data.encode("utf-8")
    return hashlib.sha256(data).hexdigest()


def emit_report(R, fmt="text"):
    if fmt == "machine":
        return dumps(R.as_json())
    if fmt != "text":
        raise ValueError(f"unknown report format {fmt!r}")
    doc = R.as_json()
    lines = ["command: " + " ".join(doc["command"])]
    for name, h in doc["inputs"].items():
        lines.append(f"input {name}: sha256 {h}")
    for key in sorted(doc["results"]):
        val = doc["results"][key]
        text = val if isinstance(val, str) else json.dumps(val, sort_keys=True, ensure_ascii=False)
        lines.append(f"{key}: {text}")
    for c in doc["checks"]:
        lines.append(f"check {c['name']}: {'pass' if c['pass'] else 'FAIL'}")
    return "\n".join(lines) + "\n"


def load_report(text):
    doc = loads(text, "<report>")
    checks = [(c["name"], c["pass"]) for c in doc.get("checks", [])]
    return RunReport(doc["command"], dict(doc.get("inputs", {})), doc.get("results", {}), checks)
