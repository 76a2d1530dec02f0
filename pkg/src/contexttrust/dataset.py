"""Review CSV ingestion and per-seller trust profiles.

Review files are UTF-8 CSV with the exact header
``Context,Rate,Date,Description,Link``; the seller identity comes from the
file name or an explicit argument, never from the file itself.  Dates and
links are carried verbatim and never interpreted.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

from .errors import DomainError, MissingContextError, RowError, SchemaError

REVIEW_HEADER = ("Context", "Rate", "Date", "Description", "Link")


@dataclass(frozen=True)
class Review:
    context: str
    rate: int
    date: str
    description: str
    link: str


@dataclass(frozen=True)
class ContextRatings:
    """All reviews a seller received in one context, plus their mean rate."""

    reviews: tuple[Review, ...]
    aggregate: float


@dataclass(frozen=True)
class TrustProfile:
    seller: str
    contexts: dict[str, ContextRatings]

    def aggregate(self, context: str) -> float:
        if context not in self.contexts:
            raise MissingContextError(
                f"seller {self.seller!r} has no ratings in context {context!r}"
            )
        return self.contexts[context].aggregate


def parse_reviews(source: str | Path, seller: str = "") -> list[Review]:
    """Parse one review CSV into Reviews, in document order.

    ``source`` may be a path or the raw CSV text itself (anything containing
    a newline is treated as text).
    """
    if isinstance(source, Path) or "\n" not in source:
        text = Path(source).read_text(encoding="utf-8-sig")
        label = str(source)
    else:
        text = source
        label = "<string>"
    prefix = f"{label} (seller {seller})" if seller else label

    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise SchemaError(f"{prefix}: file is empty, expected header row") from None
    if tuple(header) != REVIEW_HEADER:
        raise SchemaError(
            f"{prefix}: header must be {','.join(REVIEW_HEADER)}, got {','.join(header)}"
        )

    reviews: list[Review] = []
    for number, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != len(REVIEW_HEADER):
            raise SchemaError(
                f"{prefix}: row {number}: expected {len(REVIEW_HEADER)} columns, got {len(row)}"
            )
        context, rate_text, date, description, link = row
        if not context.strip():
            raise RowError(f"{prefix}: row {number}: empty context")
        try:
            rate = int(rate_text.strip())
        except ValueError:
            raise RowError(
                f"{prefix}: row {number}: rate {rate_text!r} is not an integer"
            ) from None
        if not 1 <= rate <= 5:
            raise RowError(f"{prefix}: row {number}: rate {rate} outside 1..5")
        reviews.append(Review(context, rate, date, description, link))
    return reviews


def serialize_reviews(reviews: Sequence[Review]) -> str:
    """Write reviews back to CSV text (header included)."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(REVIEW_HEADER)
    for review in reviews:
        writer.writerow([review.context, review.rate, review.date, review.description, review.link])
    return buffer.getvalue()


def build_profiles(reviews_by_seller: Mapping[str, Sequence[Review]]) -> dict[str, TrustProfile]:
    """Group reviews by seller then context; the aggregate is the mean rate."""
    profiles: dict[str, TrustProfile] = {}
    for seller, reviews in reviews_by_seller.items():
        grouped: dict[str, list[Review]] = {}
        for review in reviews:
            grouped.setdefault(review.context, []).append(review)
        contexts = {
            context: ContextRatings(
                reviews=tuple(items),
                aggregate=sum(r.rate for r in items) / len(items),
            )
            for context, items in grouped.items()
        }
        profiles[seller] = TrustProfile(seller=seller, contexts=contexts)
    return profiles


def filter_profiles(
    profiles: Mapping[str, TrustProfile],
    min_contexts: int = 1,
    min_ratings: int = 1,
) -> dict[str, TrustProfile]:
    """Drop thin contexts, then sellers left with too few contexts."""
    if min_contexts < 1 or min_ratings < 1:
        raise DomainError(
            f"thresholds must be >= 1, got min_contexts={min_contexts}, min_ratings={min_ratings}"
        )
    kept: dict[str, TrustProfile] = {}
    for seller, profile in profiles.items():
        contexts = {
            context: ratings
            for context, ratings in profile.contexts.items()
            if len(ratings.reviews) >= min_ratings
        }
        if len(contexts) >= min_contexts:
            kept[seller] = TrustProfile(seller=seller, contexts=contexts)
    return kept
