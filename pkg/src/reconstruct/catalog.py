"""The closed-form catalog of univalent functions with lattice coefficients."""
import re
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

from src.errors import UnknownFunctionError
from src.reconstruct.rational_fn import RationalFn, parse_function

INTEGER_LATTICE = "integer_lattice"
HALF_INTEGER_LATTICE = "half_integer_lattice"


@dataclass(frozen=True)
class CatalogEntry:
    """
    A named catalog function.

    Attributes:
        id: Stable name, e.g. "friedman_09" or "f1_plus"
        fn: Canonical rational function
        provenance: INTEGER_LATTICE for the nine functions with integer
            coefficients, HALF_INTEGER_LATTICE for the twelve that need 1/2
        literal: Source expression the entry was built from
    """
    id: str
    fn: RationalFn
    provenance: str
    literal: str

    def to_dict(self) -> Dict[str, Any]:
        return {
            "id": self.id,
            "numerator": list(self.fn.numerator),
            "denominator": list(self.fn.denominator),
            "provenance": self.provenance,
        }


_SOURCES: List[Tuple[str, str, str]] = [
    ("friedman_01", "z", INTEGER_LATTICE),
    ("friedman_02", "z/(1+z)", INTEGER_LATTICE),
    ("friedman_03", "z/(1-z)", INTEGER_LATTICE),
    ("friedman_04", "z/(1+z^2)", INTEGER_LATTICE),
    ("friedman_05", "z/(1-z^2)", INTEGER_LATTICE),
    ("friedman_06", "z/(1+z)^2", INTEGER_LATTICE),
    ("friedman_07", "z/(1-z)^2", INTEGER_LATTICE),
    ("friedman_08", "z/(1+z+z^2)", INTEGER_LATTICE),
    ("friedman_09", "z/(1-z+z^2)", INTEGER_LATTICE),
    ("f1_plus", "z+z^2/2", HALF_INTEGER_LATTICE),
    ("f1_minus", "z-z^2/2", HALF_INTEGER_LATTICE),
    ("f2_plus", "z(2+z)/2(1+z)", HALF_INTEGER_LATTICE),
    ("f2_minus", "z(2-z)/2(1-z)", HALF_INTEGER_LATTICE),
    ("f3_plus", "z(2+z^2)/2(1+z^2)", HALF_INTEGER_LATTICE),
    ("f3_minus", "z(2-z^2)/2(1-z^2)", HALF_INTEGER_LATTICE),
    ("f4_plus", "z(2+z)/2(1-z^2)", HALF_INTEGER_LATTICE),
    ("f4_minus", "z(2-z)/2(1-z^2)", HALF_INTEGER_LATTICE),
    ("f5_plus", "z(2+z)/2(1+z)^2", HALF_INTEGER_LATTICE),
    ("f5_minus", "z(2-z)/2(1-z)^2", HALF_INTEGER_LATTICE),
    ("f6_plus", "z(2+z+z^2)/2(1+z+z^2)", HALF_INTEGER_LATTICE),
    ("f6_minus", "z(2-z+z^2)/2(1-z+z^2)", HALF_INTEGER_LATTICE),
]

CATALOG: Dict[str, CatalogEntry] = {
    entry_id: CatalogEntry(entry_id, parse_function(literal), provenance, literal)
    for entry_id, literal, provenance in _SOURCES
}

# Short names used by the geometry report and the CLI.
ALIASES: Dict[str, str] = {
    "identity": "friedman_01",
    "koebe": "friedman_07",
    "f1": "f1_plus",
    "f2": "f2_minus",
    "f3": "f3_minus",
    "f4": "f4_plus",
    "f5": "f5_minus",
    "f6": "f6_minus",
}

# Named functions outside the catalog that the search rejects.
REFERENCE: Dict[str, RationalFn] = {
    "fibonacci": parse_function("z/(1-z-z^2)"),
    "g_prawitz": parse_function("z(2+z^3)/2(1+z^3)"),
}

_BY_FORM: Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], CatalogEntry] = {
    (e.fn.numerator, e.fn.denominator): e for e in CATALOG.values()
}

_IDENTIFIER = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


def match_catalog(R: RationalFn) -> Optional[CatalogEntry]:
    """Catalog entry with the same canonical form as R, if any."""
    return _BY_FORM.get((R.numerator, R.denominator))


def resolve_function(text: str) -> Tuple[str, RationalFn]:
    """
    Resolve a catalog id, alias, reference name or function literal.

    Args:
        text: e.g. "f6", "friedman_03", "g_prawitz" or "z/(1-z-z^2)"

    Returns:
        (label, RationalFn) where label is the catalog id, the reference
        name, or the literal itself

    Raises:
        UnknownFunctionError: an identifier that names nothing
        FunctionParseError: a malformed literal
    """
    name = text.strip()
    if name in CATALOG:
        return name, CATALOG[name].fn
    if name in ALIASES:
        return ALIASES[name], CATALOG[ALIASES[name]].fn
    if name in REFERENCE:
        return name, REFERENCE[name]
    if _IDENTIFIER.match(name) and name != "z":
        raise UnknownFunctionError(f"unknown function id: {name}")
    return name, parse_function(name)


def representatives() -> List[Tuple[str, CatalogEntry]]:
    """The six functions f1..f6 analysed by the geometry report, in order."""
    return [(alias, CATALOG[ALIASES[alias]]) for alias in ("f1", "f2", "f3", "f4", "f5", "f6")]
