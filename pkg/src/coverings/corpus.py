"""Embedded reference coverings and moduli sets."""

from enum import Enum
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, List, Optional

import yaml
from pydantic import BaseModel, ConfigDict, ValidationError, model_validator

from .arithmetic import lcm_of
from .errors import CorpusEntryNotFoundError, CoveringLoadError
from .models import CongruenceSet, FactoredInteger, ModuliSet

CORPUS_PATH = Path(__file__).with_name("corpus.yaml")


class EntryKind(str, Enum):
    COVERING = "covering"
    MODULI = "moduli"


class CorpusEntry(BaseModel):
    """
    One reference object.

    ``is_covering`` and ``minimal`` record the published claims about the
    entry; tests hold the library to them.
    """

    model_config = ConfigDict(frozen=True)

    name: str
    kind: EntryKind
    L: FactoredInteger
    provenance: str
    covering: Optional[CongruenceSet] = None
    moduli: Optional[ModuliSet] = None
    is_covering: Optional[bool] = None
    minimal: Optional[bool] = None

    @model_validator(mode="after")
    def validate_payload(self) -> "CorpusEntry":
        if self.kind is EntryKind.COVERING and self.covering is None:
            raise ValueError(f"covering entry '{self.name}' has no congruences")
        if self.kind is EntryKind.MODULI and self.moduli is None:
            raise ValueError(f"moduli entry '{self.name}' has no moduli")
        return self

    @property
    def moduli_set(self) -> ModuliSet:
        """Moduli of the entry, for either kind."""
        if self.moduli is not None:
            return self.moduli
        assert self.covering is not None
        return ModuliSet.of(self.covering.moduli)


def _entry_from_data(data: Dict[str, Any]) -> CorpusEntry:
    name = data.get("name", "<unnamed>")
    try:
        kind = EntryKind(data["kind"])
        covering = None
        moduli = None
        if kind is EntryKind.COVERING:
            covering = CongruenceSet.of((x, m) for x, m in data["congruences"])
            actual = lcm_of(covering.moduli)
        else:
            moduli = ModuliSet.of(data["moduli"])
            actual = lcm_of(moduli)
    except (KeyError, TypeError, ValueError, ValidationError) as e:
        raise CoveringLoadError(f"corpus entry '{name}' is malformed: {e}")

    if actual.value != data.get("lcm"):
        raise CoveringLoadError(
            f"corpus entry '{name}' states lcm {data.get('lcm')}, "
            f"its moduli give {actual.value}"
        )
    return CorpusEntry(
        name=name,
        kind=kind,
        L=actual,
        provenance=data.get("provenance", ""),
        covering=covering,
        moduli=moduli,
        is_covering=data.get("is_covering"),
        minimal=data.get("minimal"),
    )


@lru_cache(maxsize=1)
def corpus() -> List[CorpusEntry]:
    """
    All embedded entries, in file order.

    Raises:
        CoveringLoadError: If the embedded file is malformed
    """
    try:
        data = yaml.safe_load(CORPUS_PATH.read_text(encoding="utf-8"))
    except (OSError, yaml.YAMLError) as e:
        raise CoveringLoadError(f"Failed to load corpus: {e}")
    if not isinstance(data, dict) or not isinstance(data.get("entries"), list):
        raise CoveringLoadError("corpus must be a mapping with an 'entries' list")
    return [_entry_from_data(item) for item in data["entries"]]


def corpus_names() -> List[str]:
    return [entry.name for entry in corpus()]


def corpus_entry(name: str) -> CorpusEntry:
    """
    Look up one entry by name.

    Raises:
        CorpusEntryNotFoundError: With close-match suggestions
    """
    for entry in corpus():
        if entry.name == name:
            return entry
    raise CorpusEntryNotFoundError(name, corpus_names())
