"""Canonical ordering and serialization for object/morphism names.

Names are strings, ints, or (arbitrarily nested) tuples of names.
Tuples arise from pair constructions: products, pullbacks, exponentials;
ints appear as disambiguating indices.  All enumeration in the package
iterates names in the total order defined here, which is what makes
every construction deterministic.
"""

from __future__ import annotations

Name = "str | int | tuple"


def namekey(name):
    """Total order key over str-int-or-nested-tuple names."""
    if isinstance(name, bool):
        raise TypeError("bool is not a valid name")
    if isinstance(name, int):
        return (0, name)
    if isinstance(name, str):
        return (1, name)
    if isinstance(name, tuple):
        return (2, len(name), tuple(namekey(part) for part in name))
    raise TypeError(f"unsupported name type: {type(name).__name__}")


def sort_names(names):
    return tuple(sorted(names, key=namekey))


def name_to_json(name):
    """Encode a name as a JSON-compatible value (tuples become lists)."""
    if isinstance(name, (str, int)):
        return name
    return [name_to_json(part) for part in name]


def name_from_json(value):
    if isinstance(value, (str, int)) and not isinstance(value, bool):
        return value
    if isinstance(value, list):
        return tuple(name_from_json(part) for part in value)
    raise TypeError(f"unsupported serialized name: {value!r}")
