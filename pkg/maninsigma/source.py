# maninsigma/source.py
"""
Where a triple comes from.
- _CatalogSource: a named catalog entry (with its published bivector form)
- _FileSource: a JSON triple file
Exports: TripleSource (class), load_triple_file

Triple file format:
  {"name": "my_triple", "dim": 3,
   "c": [[i, j, k, value], ...],   # [T_i, T_j] = value T_k, 1-based
   "f": [[i, j, k, value], ...]}   # [T~^i, T~^j] = value T~^k
"""

from pathlib import Path

from . import catalog
from .errors import InputError, ParseError
from .lie_core import ManinTriple, structure_from_brackets
from .utils import log, parse_int, read_json_file, stable_digest


def triple_from_dict(doc, source="<triple>"):
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object with 'dim', 'c' and 'f'", source)
    for key in ("dim", "c", "f"):
        if key not in doc:
            raise ParseError(f"missing field {key!r}", source)
    dim = parse_int(doc["dim"], "field 'dim'", source)
    for key in ("c", "f"):
        if not isinstance(doc[key], list):
            raise ParseError(f"field {key!r} must be a list of [i, j, k, value] entries", source)
    c = structure_from_brackets(dim, doc["c"], source=f"{source} field 'c'")
    f = structure_from_brackets(dim, doc["f"], source=f"{source} field 'f'")
    return ManinTriple(c, f, name=str(doc.get("name", Path(str(source)).stem)))


def load_triple_file(path):
    return triple_from_dict(read_json_file(path), source=str(path))


def triple_to_dict(triple: ManinTriple):
    def entries(t):
        n = t.shape[0]
        return [[i + 1, j + 1, k + 1, float(t[i, j, k])]
                for i in range(n) for j in range(n) for k in range(n)
                if i < j and t[i, j, k] != 0.0]

    return {"name": triple.name, "dim": triple.dim, "c": entries(triple.c), "f": entries(triple.f)}


# -----------------------
# Catalog-backed source
# -----------------------
class _CatalogSource:
    kind = "catalog"

    def __init__(self, name, beta=None):
        self.entry = catalog.get(name, beta=beta)
        self.triple = self.entry.triple
        self.label = name if beta is None else f"{name}(beta={beta:g})"


# -----------------------
# File-backed source
# -----------------------
class _FileSource:
    kind = "file"

    def __init__(self, path, beta=None):
        if beta is not None:
            raise InputError("--beta only applies to catalog entries")
        self.entry = None
        self.triple = load_triple_file(path)
        self.label = str(path)


class TripleSource:
    """
    Resolve `--catalog NAME | FILE`: a catalog name wins; otherwise the
    argument must be a readable triple file.
    """

    def __init__(self, ref, beta=None):
        if ref is None:
            raise InputError("no triple given; pass --catalog NAME or a triple file")
        ref = str(ref)
        if ref in catalog.names():
            self._impl = _CatalogSource(ref, beta)
        elif Path(ref).is_file():
            self._impl = _FileSource(ref, beta)
        else:
            raise InputError(f"{ref!r} is neither a catalog entry ({', '.join(catalog.names())}) nor a file")
        log("Source", f"Using {self._impl.kind} triple {self._impl.label}")

    @property
    def triple(self) -> ManinTriple:
        return self._impl.triple

    @property
    def entry(self):
        return self._impl.entry

    @property
    def label(self):
        return self._impl.label

    @property
    def kind(self):
        return self._impl.kind

    def digest(self, **extra):
        return stable_digest({
            "triple": triple_to_dict(self.triple),
            "c": self.triple.c, "f": self.triple.f,
            "extra": extra,
        })
