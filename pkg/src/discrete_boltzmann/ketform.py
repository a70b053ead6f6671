"""Text, JSON, and CSV forms for distributions.

Distributions print as ``1/2|0> + 3/10|1>``: an exact rational weight,
then the element between ``|`` and ``>``.  Multiset elements nest their
own kets (``1/5|3|0> + 1|3>>``); tuple elements list their components
separated by commas inside the outer ket.  Parsing splits terms at the
`` + `` occurrences outside any ket, tracking ``|``/``>`` nesting, and
recovers the exact rational weights, so any exported distribution
round-trips bit-exactly.

JSON form: a list of ``{element, numerator, denominator, probability}``
records.  The rational fields are authoritative; ``probability`` is the
approximate float rendering.  CSV form: ``element,probability`` with
decimals at 12 significant digits.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .distributions import Dist
from .multisets import GroundSet, Multiset, parse_multiset

__all__ = [
    "format_dist",
    "parse_dist",
    "dist_to_json",
    "dist_to_csv_rows",
    "element_text",
]


def element_text(x: Any) -> str:
    if isinstance(x, tuple):
        return ", ".join(element_text(c) for c in x)
    return str(x)


def format_dist(omega: Dist) -> str:
    return str(omega)


def _split_top_level(text: str, sep: str) -> list[str]:
    """Split on ``sep`` occurrences that sit outside all kets."""
    parts, depth, start, pos = [], 0, 0, 0
    while pos < len(text):
        ch = text[pos]
        if ch == "|":
            depth += 1
        elif ch == ">":
            depth -= 1
        elif depth == 0 and text.startswith(sep, pos):
            parts.append(text[start:pos])
            pos += len(sep)
            start = pos
            continue
        pos += 1
    parts.append(text[start:])
    return parts


def _parse_element(text: str, ground: GroundSet | None) -> Any:
    text = text.strip()
    comps = _split_top_level(text, ",")
    if len(comps) > 1:
        return tuple(_parse_element(c, ground) for c in comps)
    if "|" in text:
        return parse_multiset(text, ground)
    if text.lstrip("-").isdigit():
        return int(text)
    return text


def parse_dist(text: str, ground: GroundSet | None = None) -> Dist:
    """Parse the ket text form of a distribution.

    ``ground`` scopes any multiset elements; without it each multiset
    infers its own ground, which is only safe when every element names
    every label.  Weights are parsed as exact rationals.
    """
    pairs = []
    for term in _split_top_level(text.strip(), " + "):
        term = term.strip()
        bar = term.index("|")
        if not term.endswith(">"):
            raise ValueError(f"malformed distribution term {term!r}")
        weight = Fraction(term[:bar].strip())
        element = _parse_element(term[bar + 1:-1], ground)
        pairs.append((element, weight))
    return Dist(pairs)


def _json_element(x: Any) -> Any:
    if isinstance(x, Multiset):
        return str(x)
    if isinstance(x, tuple):
        return [_json_element(c) for c in x]
    return x


def dist_to_json(omega: Dist) -> list[dict[str, Any]]:
    return [
        {
            "element": _json_element(x),
            "numerator": p.numerator,
            "denominator": p.denominator,
            "probability": float(p),
        }
        for x, p in omega.items()
    ]


def dist_to_json_text(omega: Dist, **kwargs: Any) -> str:
    return json.dumps(dist_to_json(omega), **kwargs)


def dist_to_csv_rows(omega: Dist) -> list[str]:
    rows = []
    for x, p in omega.items():
        cell = element_text(x)
        if "," in cell:
            cell = f'"{cell}"'
        rows.append(f"{cell},{float(p):.12g}")
    return rows
