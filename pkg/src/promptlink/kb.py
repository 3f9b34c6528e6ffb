"""Knowledge base: entity store, alias table, candidate generation, datasets.

File formats:
  entities.jsonl  one JSON object per line with id/title/description fields
  aliases.tsv     alias<TAB>entity_id<TAB>score (score optional, defaults 0)
  dataset.jsonl   one mention per line: {id, mention, context, candidates?, gold?}

Stores and tables are immutable after load and safe for concurrent reads.
"""

from __future__ import annotations

import json
import re
import unicodedata
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, Sequence

from .errors import ConfigError, DataFormatError, DuplicateEntityError

_WS_RE = re.compile(r"\s+")


def normalize_alias(text: str) -> str:
    """Case-fold, Unicode NFC, and collapse runs of whitespace to one space."""
    return _WS_RE.sub(" ", unicodedata.normalize("NFC", text).casefold()).strip()


@dataclass
class Entity:
    """A knowledge-base entry; `summary` is filled lazily by the reducer."""

    id: str
    title: str
    description: str
    summary: str | None = None

    def __post_init__(self) -> None:
        if not self.id:
            raise DataFormatError("entity id must be non-empty")
        if not self.title:
            raise DataFormatError(f"entity {self.id!r}: title must be non-empty")


class EntityStore:
    """Read-only mapping of entity id to Entity."""

    def __init__(self, entities: Sequence[Entity] = ()):
        self._by_id: dict[str, Entity] = {}
        for entity in entities:
            self.add(entity)

    def add(self, entity: Entity) -> None:
        if entity.id in self._by_id:
            raise DuplicateEntityError(f"duplicate entity id {entity.id!r}")
        self._by_id[entity.id] = entity

    def get(self, entity_id: str) -> Entity | None:
        return self._by_id.get(entity_id)

    def __getitem__(self, entity_id: str) -> Entity:
        try:
            return self._by_id[entity_id]
        except KeyError:
            raise DataFormatError(f"unknown entity id {entity_id!r}") from None

    def __contains__(self, entity_id: str) -> bool:
        return entity_id in self._by_id

    def __len__(self) -> int:
        return len(self._by_id)

    def __iter__(self) -> Iterator[Entity]:
        return iter(self._by_id.values())


def load_entity_store(path: str | Path) -> EntityStore:
    """Load entities.jsonl; rejects malformed lines and duplicate ids."""
    store = EntityStore()
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                raw = json.loads(line)
            except json.JSONDecodeError as exc:
                raise DataFormatError(f"{path}: line {lineno}: invalid JSON: {exc}") from exc
            if not isinstance(raw, dict) or not {"id", "title", "description"} <= raw.keys():
                raise DataFormatError(
                    f"{path}: line {lineno}: expected object with id/title/description"
                )
            entity = Entity(
                id=str(raw["id"]),
                title=str(raw["title"]),
                description=str(raw["description"]),
                summary=raw.get("summary"),
            )
            store.add(entity)
    return store


class AliasTable:
    """Maps a normalized alias to (entity id, prior score) pairs.

    Entries per alias are ordered by descending score, ties broken by
    ascending entity id so lookups are deterministic.
    """

    def __init__(self) -> None:
        self._entries: dict[str, list[tuple[str, float]]] = {}

    def add(self, alias: str, entity_id: str, score: float = 0.0) -> None:
        if score < 0:
            raise DataFormatError(f"alias {alias!r}: negative score for {entity_id!r}")
        key = normalize_alias(alias)
        rows = self._entries.setdefault(key, [])
        if any(existing == entity_id for existing, _ in rows):
            raise DuplicateEntityError(f"alias {alias!r}: duplicate entity id {entity_id!r}")
        rows.append((entity_id, score))
        rows.sort(key=lambda row: (-row[1], row[0]))

    def lookup(self, alias: str) -> list[tuple[str, float]]:
        return list(self._entries.get(normalize_alias(alias), ()))

    def __len__(self) -> int:
        return len(self._entries)


def load_alias_table(path: str | Path) -> AliasTable:
    """Load aliases.tsv rows of alias<TAB>entity_id[<TAB>score]."""
    table = AliasTable()
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            row = line.rstrip("\n")
            if not row.strip():
                continue
            parts = row.split("\t")
            if len(parts) not in (2, 3) or not parts[0] or not parts[1]:
                raise DataFormatError(f"{path}: line {lineno}: expected alias\\tid[\\tscore]")
            score = 0.0
            if len(parts) == 3 and parts[2]:
                try:
                    score = float(parts[2])
                except ValueError as exc:
                    raise DataFormatError(f"{path}: line {lineno}: bad score {parts[2]!r}") from exc
            table.add(parts[0], parts[1], score)
    return table


@dataclass(frozen=True)
class CandidateSet:
    """Ordered, duplicate-free entity ids retrieved for one mention."""

    ids: tuple[str, ...]
    alias: str

    def __len__(self) -> int:
        return len(self.ids)


def generate_candidates(mention: str, table: AliasTable, k: int | None = None) -> CandidateSet:
    """Look up the normalized mention; truncate to the top k when k is set.

    An unknown alias yields an empty set (recall failure, not an error).
    """
    if not mention:
        raise ValueError("mention must be non-empty")
    if k is not None and k < 1:
        raise ValueError("k must be a positive int or None")
    alias = normalize_alias(mention)
    ids = tuple(entity_id for entity_id, _ in table.lookup(alias))
    if k is not None:
        ids = ids[:k]
    return CandidateSet(ids=ids, alias=alias)


@dataclass
class MentionRecord:
    """One mention to link: marked context, optional inline candidates/gold."""

    id: str
    mention: str
    context: str
    candidate_ids: list[str] | None = None
    gold: str | None = None


def load_mention_records(path: str | Path) -> list[MentionRecord]:
    """Load dataset.jsonl; structural validation only (marking is checked later)."""
    records: list[MentionRecord] = []
    seen: set[str] = set()
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                raw = json.loads(line)
            except json.JSONDecodeError as exc:
                raise DataFormatError(f"{path}: line {lineno}: invalid JSON: {exc}") from exc
            for key in ("id", "mention", "context"):
                if not raw.get(key):
                    raise DataFormatError(f"{path}: line {lineno}: missing field {key!r}")
            record_id = str(raw["id"])
            if record_id in seen:
                raise DataFormatError(f"{path}: line {lineno}: duplicate mention id {record_id!r}")
            seen.add(record_id)
            candidates = raw.get("candidates")
            if candidates is not None:
                if not isinstance(candidates, list):
                    raise DataFormatError(f"{path}: line {lineno}: candidates must be a list")
                # Dedupe while preserving order; inline sets come in ready-made.
                candidates = list(dict.fromkeys(str(c) for c in candidates))
            records.append(
                MentionRecord(
                    id=record_id,
                    mention=str(raw["mention"]),
                    context=str(raw["context"]),
                    candidate_ids=candidates,
                    gold=str(raw["gold"]) if raw.get("gold") else None,
                )
            )
    return records


def alias_recall(records: Sequence[MentionRecord], table: AliasTable, k: int | None = None) -> float:
    """Fraction of records whose gold id survives candidate generation."""
    if not records:
        return 0.0
    hits = 0
    for record in records:
        if record.gold is None:
            raise ConfigError(f"mention {record.id!r} has no gold label; recall is undefined")
        if record.gold in generate_candidates(record.mention, table, k).ids:
            hits += 1
    return hits / len(records)
