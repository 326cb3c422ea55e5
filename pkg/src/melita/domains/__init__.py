"""Built-in synthetic domains and the name → constructor registry."""
from __future__ import annotations

from ..binding import DomainBinding
from .toy_media import ToyMediaDomain
from .vector_pair import VectorPairDomain

DOMAINS = {
    "vector_pair": VectorPairDomain,
    "toy_media": ToyMediaDomain,
}


def make_domain(name: str, params: dict | None = None) -> DomainBinding:
    try:
        cls = DOMAINS[name]
    except KeyError:
        raise ValueError(f"unknown domain {name!r}; known: {sorted(DOMAINS)}") from None
    return cls(**(params or {}))


__all__ = ["DOMAINS", "make_domain", "VectorPairDomain", "ToyMediaDomain"]
