"""User macro table and the reserved directive registry."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import MacroError
from .mode import ModeDescriptor

# Names executed by the engine itself; never definable as user macros.
BUILTIN_DIRECTIVES = frozenset(
    {
        "define",
        "undef",
        "defeval",
        "ifdef",
        "ifndef",
        "ifeq",
        "ifneq",
        "if",
        "elif",
        "else",
        "endif",
        "include",
        "exec",
        "eval",
        "mode",
    }
)

_IDENT = set("ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789_")

ARG_DIGITS = "123456789"


def is_identifier(name: str) -> bool:
    return bool(name) and all(c in _IDENT for c in name)


def max_arg_ref(body: str, mode: ModeDescriptor) -> int:
    """Highest argument digit referenced unquoted in ``body`` (0 if none)."""
    prefix = mode.arg_ref_prefix
    quote = mode.quote_char
    highest = 0
    i = 0
    n = len(body)
    while i < n:
        if quote and body[i] == quote:
            i += 2
            continue
        if body.startswith(prefix, i):
            j = i + len(prefix)
            if j < n and body[j] in ARG_DIGITS:
                highest = max(highest, int(body[j]))
                i = j + 1
                continue
        i += 1
    return highest


@dataclass(frozen=True)
class MacroDefinition:
    """A stored macro: raw body plus metadata about where it came from.

    ``body`` is kept byte-for-byte as captured; expansion happens at
    invocation time unless the macro was installed via defeval, in which
    case the body was expanded once before storage.
    """

    name: str
    body: str
    max_arg_ref: int
    origin: tuple[str, int]  # (file, line) of the definition


class MacroTable:
    """Flat global table of user macros. Redefinition replaces silently."""

    def __init__(self) -> None:
        self._defs: dict[str, MacroDefinition] = {}

    def __len__(self) -> int:
        return len(self._defs)

    def names(self) -> list[str]:
        return sorted(self._defs)

    def define(
        self,
        name: str,
        body: str,
        mode: ModeDescriptor,
        origin: tuple[str, int] = ("<none>", 0),
    ) -> MacroDefinition:
        """Install ``name`` -> ``body``; raises MacroError on a bad name."""
        if not name:
            raise MacroError("macro name must be non-empty")
        if name in BUILTIN_DIRECTIVES:
            raise MacroError(
                f"cannot define {name!r}: collides with a built-in directive"
            )
        if not is_identifier(name):
            raise MacroError(
                f"invalid macro name {name!r}: names are runs of [A-Za-z0-9_]"
            )
        # Guard against names the active mode could never scan past.
        for label in ("arg_start", "arg_sep", "arg_end", "quote_char"):
            delim = getattr(mode, label)
            if delim and delim[0] in name:
                raise MacroError(
                    f"invalid macro name {name!r}: contains {label} byte {delim[0]!r}"
                )
        definition = MacroDefinition(
            name=name,
            body=body,
            max_arg_ref=max_arg_ref(body, mode),
            origin=origin,
        )
        self._defs[name] = definition
        return definition

    def undef(self, name: str) -> None:
        """Remove ``name``; absent names are a no-op."""
        self._defs.pop(name, None)

    def lookup(self, name: str) -> MacroDefinition | None:
        return self._defs.get(name)

    def is_defined(self, name: str) -> bool:
        return name in self._defs
