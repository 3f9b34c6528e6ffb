"""Prompt templates with named slots and byte-exact rendering.

A template body uses `{slot_name}` markers. Rendering substitutes each
marker in a single pass, so braces inside slot values are never
re-interpreted as markers.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Mapping

from .errors import TemplateError

_SLOT_RE = re.compile(r"\{([a-z_]+)\}")

# One file per pipeline stage, plus the shared linking instruction text.
STAGE_TEMPLATES = ("summary", "filter", "category", "contextual", "prior", "merge")


@dataclass(frozen=True)
class PromptTemplate:
    name: str
    body: str

    @property
    def slots(self) -> frozenset[str]:
        return frozenset(_SLOT_RE.findall(self.body))


def render(template: PromptTemplate, slots: Mapping[str, str]) -> str:
    """Substitute every declared slot; a missing slot raises, extras are ignored."""

    def _sub(match: re.Match[str]) -> str:
        name = match.group(1)
        if name not in slots:
            raise TemplateError(f"template {template.name!r}: missing slot {name!r}")
        return str(slots[name])

    return _SLOT_RE.sub(_sub, template.body)


class TemplateLibrary:
    """Named templates for all pipeline stages, loaded from a directory."""

    def __init__(self, templates: Mapping[str, PromptTemplate]):
        self._templates = dict(templates)

    @classmethod
    def from_dir(cls, directory: str | Path) -> "TemplateLibrary":
        directory = Path(directory)
        templates: dict[str, PromptTemplate] = {}
        for path in sorted(directory.glob("*")):
            if path.suffix not in (".tmpl", ".txt") or not path.is_file():
                continue
            templates[path.stem] = PromptTemplate(
                name=path.stem, body=path.read_text(encoding="utf-8").rstrip("\n")
            )
        missing = [name for name in (*STAGE_TEMPLATES, "instruction") if name not in templates]
        if missing:
            raise TemplateError(f"{directory}: missing template file(s): {', '.join(missing)}")
        return cls(templates)

    @classmethod
    def defaults(cls) -> "TemplateLibrary":
        """Templates shipped with the package."""
        root = resources.files(__package__) / "templates"
        with resources.as_file(root) as directory:
            return cls.from_dir(directory)

    def get(self, name: str) -> PromptTemplate:
        try:
            return self._templates[name]
        except KeyError:
            raise TemplateError(f"no template named {name!r}") from None

    @property
    def instruction(self) -> str:
        """Shared entity-linking instruction text used by filter/contextual/merge."""
        return self.get("instruction").body
