"""Cross-context trust prediction: known rate times context similarity."""

from __future__ import annotations

from dataclasses import dataclass

from .dataset import TrustProfile
from .errors import DomainError
from .ontology import OntologyTree
from .similarity import PathMode, tree_similarity

RATE_FLOOR = 0.0
RATE_CEILING = 5.0


@dataclass(frozen=True)
class TrustPrediction:
    """One predicted rating for an unknown context from a known one."""

    seller: str
    known_context: str
    unknown_context: str
    similarity: float
    known_rate: float
    predicted_rate: float


def predict_trust(known_rate: float, similarity: float) -> float:
    """Known rate scaled by similarity, clamped to the rating range [0, 5].

    Similarities above 1 (reciprocal path mode) can push the raw product
    past the 5-point ceiling; near-floor similarities can push it below 1.
    """
    if similarity <= 0:
        raise DomainError(f"similarity must be positive, got {similarity}")
    if not RATE_CEILING >= known_rate >= 1.0:
        raise DomainError(f"known rate {known_rate} outside [1, 5]")
    return min(RATE_CEILING, max(RATE_FLOOR, known_rate * similarity))


def predict_for_pair(
    profile: TrustProfile,
    tree: OntologyTree,
    measure: str,
    known: str,
    unknown: str,
    mode: PathMode = PathMode.PRODUCT,
) -> TrustPrediction:
    """Compose a tree measure with the multiplication rule for one context pair."""
    known_rate = profile.aggregate(known)
    tree.require(known)
    tree.require(unknown)
    similarity = tree_similarity(tree, known, unknown, measure, mode)
    predicted = predict_trust(known_rate, similarity)
    return TrustPrediction(
        seller=profile.seller,
        known_context=known,
        unknown_context=unknown,
        similarity=similarity,
        known_rate=known_rate,
        predicted_rate=predicted,
    )
