"""Lexical modes: the complete syntax configuration driving the scanner.

A mode says how user macros and directives are written: their start
sequences, argument delimiters, the quote character, and the list of
comment/string rules. Built-in presets make the syntax resemble a few
popular host languages; every field can also be overridden at runtime
through a small ``key=value`` spec language (see :func:`parse_mode_spec`).

Descriptors are immutable once validated and safe to share.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .errors import ConfigError

PRESET_NAMES = ("default", "cpp", "tex", "html", "prolog")

# Region kinds: comment = interior and delimiters discarded; string =
# interior and delimiters copied verbatim; quote = interior copied,
# delimiters discarded.
KIND_COMMENT = "comment"
KIND_STRING = "string"
KIND_QUOTE = "quote"
_KINDS = (KIND_COMMENT, KIND_STRING, KIND_QUOTE)


@dataclass(frozen=True)
class CommentStringSpec:
    """One delimiter-pair rule for a comment, string, or quote region.

    ``end_delim`` of "\\n" means end-of-line; the newline itself is left
    in the input so line structure survives. ``escape_char`` prevents
    ``end_delim`` from being recognized after it. ``expand_inside`` only
    matters for string/quote kinds. ``active_in_directives`` controls
    whether the rule applies while argument lists are being captured.
    """

    start_delim: str
    end_delim: str
    kind: str = KIND_COMMENT
    escape_char: str | None = None
    expand_inside: bool = False
    active_in_directives: bool = True

    def violations(self, label: str = "spec") -> list[str]:
        out = []
        if not self.start_delim:
            out.append(f"{label}: start delimiter must be non-empty")
        if not self.end_delim:
            out.append(f"{label}: end delimiter must be non-empty")
        if self.kind not in _KINDS:
            out.append(f"{label}: kind must be one of {', '.join(_KINDS)}")
        if self.escape_char is not None and len(self.escape_char) != 1:
            out.append(f"{label}: escape character must be a single byte")
        if self.kind == KIND_COMMENT and self.expand_inside:
            out.append(f"{label}: comment regions cannot set expand_inside")
        return out


@dataclass(frozen=True)
class ModeDescriptor:
    """Full lexical definition of macro and directive syntax.

    Empty ``user_macro_start`` means user macros are invoked by bare
    identifier; empty ``user_short_end`` means an argument-less
    invocation ends at the identifier boundary. ``stack_open`` /
    ``stack_close`` are the nesting pair tracked inside argument lists
    so separators in nested calls are not misread.
    """

    user_macro_start: str = ""
    user_short_end: str = ""
    arg_start: str = "("
    arg_sep: str = ","
    arg_end: str = ")"
    stack_open: str | None = "("
    stack_close: str | None = ")"
    arg_ref_prefix: str = "#"
    quote_char: str | None = "\\"
    meta_start: str = "#"
    meta_short_end: str = "\n"
    meta_arg_start: str = " "
    meta_arg_sep: str = " "
    meta_arg_end: str = "\n"
    meta_line_anchored: bool = False
    comment_string_specs: tuple[CommentStringSpec, ...] = ()

    def violations(self) -> list[str]:
        out = []
        if not self.user_macro_start and not self.meta_start:
            out.append("user_macro_start and meta_start must not both be empty")
        if not self.arg_start:
            out.append("arg_start must be non-empty")
        if not self.arg_end:
            out.append("arg_end must be non-empty")
        if (self.stack_open is None) != (self.stack_close is None):
            out.append("stack_open and stack_close must both be set or both absent")
        for name in ("stack_open", "stack_close", "quote_char"):
            v = getattr(self, name)
            if v is not None and len(v) != 1:
                out.append(f"{name} must be a single byte")
        if self.quote_char is not None:
            if self.quote_char in (self.stack_open, self.stack_close):
                out.append("stack delimiters must differ from quote_char")
        if not self.arg_ref_prefix:
            out.append("arg_ref_prefix must be non-empty")
        seen: set[str] = set()
        for i, spec in enumerate(self.comment_string_specs):
            out.extend(spec.violations(f"spec {i + 1}"))
            if spec.start_delim in seen:
                out.append(
                    f"duplicate comment/string start delimiter {spec.start_delim!r}"
                )
            seen.add(spec.start_delim)
        return out


def validate(mode: ModeDescriptor) -> list[str]:
    """Return every violated invariant of ``mode`` (empty list = ok)."""
    return mode.violations()


def _checked(mode: ModeDescriptor) -> ModeDescriptor:
    problems = mode.violations()
    if problems:
        raise ConfigError("; ".join(problems))
    return mode


_CPP_SPECS = (
    CommentStringSpec("/*", "*/", KIND_COMMENT),
    CommentStringSpec("//", "\n", KIND_COMMENT),
    CommentStringSpec('"', '"', KIND_STRING, escape_char="\\"),
    CommentStringSpec("'", "'", KIND_STRING, escape_char="\\"),
)

_PROLOG_SPECS = (
    CommentStringSpec("/*", "*/", KIND_COMMENT),
    CommentStringSpec("%", "\n", KIND_COMMENT),
    CommentStringSpec('"', '"', KIND_STRING, escape_char="\\"),
    CommentStringSpec("'", "'", KIND_STRING, escape_char="\\"),
)

_PRESETS: dict[str, ModeDescriptor] = {
    # Bare-identifier macros, line-oriented directives, no region rules.
    "default": ModeDescriptor(),
    # default plus line anchoring and C comment/string handling.
    "cpp": ModeDescriptor(
        meta_line_anchored=True,
        comment_string_specs=_CPP_SPECS,
    ),
    # Backslash-introduced names with braced arguments; % comments.
    "tex": ModeDescriptor(
        user_macro_start="\\",
        user_short_end="",
        arg_start="{",
        arg_sep="}{",
        arg_end="}",
        stack_open="{",
        stack_close="}",
        arg_ref_prefix="#",
        quote_char=None,
        meta_start="\\",
        meta_short_end="",
        meta_arg_start="{",
        meta_arg_sep="}{",
        meta_arg_end="}",
        comment_string_specs=(CommentStringSpec("%", "\n", KIND_COMMENT),),
    ),
    # Tag-shaped invocations: <#name arg|arg> with <> nesting.
    "html": ModeDescriptor(
        user_macro_start="<#",
        user_short_end=">",
        arg_start=" ",
        arg_sep="|",
        arg_end=">",
        stack_open="<",
        stack_close=">",
        arg_ref_prefix="#",
        quote_char="\\",
        meta_start="<#",
        meta_short_end=">",
        meta_arg_start=" ",
        meta_arg_sep="|",
        meta_arg_end=">",
    ),
    # cpp with % line comments and verbatim quote handling.
    "prolog": ModeDescriptor(
        meta_line_anchored=True,
        comment_string_specs=_PROLOG_SPECS,
    ),
}


def preset(name: str) -> ModeDescriptor:
    """Return the built-in mode for ``name``.

    Valid names: default, cpp, tex, html, prolog.
    """
    try:
        return _PRESETS[name]
    except KeyError:
        raise ConfigError(
            f"unknown preset {name!r}; valid presets: {', '.join(PRESET_NAMES)}"
        ) from None


_STRING_FIELDS = (
    "user_macro_start",
    "user_short_end",
    "arg_start",
    "arg_sep",
    "arg_end",
    "arg_ref_prefix",
    "meta_start",
    "meta_short_end",
    "meta_arg_start",
    "meta_arg_sep",
    "meta_arg_end",
)
_CHAR_FIELDS = ("stack_open", "stack_close", "quote_char")
_BOOL_FIELDS = ("meta_line_anchored",)

_HEX = "0123456789abcdefABCDEF"


def _unescape(value: str, base_offset: int) -> str:
    """Resolve C-style escapes: \\n, \\t, \\\\, \\xHH."""
    out = []
    i = 0
    while i < len(value):
        c = value[i]
        if c != "\\":
            out.append(c)
            i += 1
            continue
        if i + 1 >= len(value):
            raise ConfigError("trailing backslash in value", base_offset + i)
        nxt = value[i + 1]
        if nxt == "n":
            out.append("\n")
            i += 2
        elif nxt == "t":
            out.append("\t")
            i += 2
        elif nxt == "\\":
            out.append("\\")
            i += 2
        elif nxt == "x":
            hexpart = value[i + 2 : i + 4]
            if len(hexpart) != 2 or any(h not in _HEX for h in hexpart):
                raise ConfigError(
                    "\\x escape needs two hex digits", base_offset + i
                )
            out.append(chr(int(hexpart, 16)))
            i += 4
        else:
            raise ConfigError(f"unknown escape \\{nxt}", base_offset + i)
    return "".join(out)


def _parse_bool(value: str, offset: int) -> bool:
    low = value.lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"expected a boolean, got {value!r}", offset)


def _parse_region_spec(value: str, offset: int) -> CommentStringSpec:
    """Parse ``kind:start:end[:escape[:flags]]`` (flags: e=expand, d/D=directive)."""
    parts = value.split(":")
    if len(parts) < 3 or len(parts) > 5:
        raise ConfigError(
            "spec value must be kind:start:end[:escape[:flags]]", offset
        )
    kind = parts[0].strip()
    if kind not in _KINDS:
        raise ConfigError(
            f"spec kind must be one of {', '.join(_KINDS)}, got {kind!r}", offset
        )
    start = _unescape(parts[1], offset)
    end = _unescape(parts[2], offset)
    escape = None
    if len(parts) >= 4 and parts[3] != "":
        escape = _unescape(parts[3], offset)
    expand = False
    in_directives = True
    if len(parts) == 5:
        for flag in parts[4]:
            if flag == "e":
                expand = True
            elif flag == "d":
                in_directives = True
            elif flag == "D":
                in_directives = False
            else:
                raise ConfigError(f"unknown spec flag {flag!r}", offset)
    return CommentStringSpec(
        start_delim=start,
        end_delim=end,
        kind=kind,
        escape_char=escape,
        expand_inside=expand,
        active_in_directives=in_directives,
    )


def parse_mode_spec(spec_text: str, base: ModeDescriptor) -> ModeDescriptor:
    """Apply a ``key=value;key=value`` override spec on top of ``base``.

    Keys are descriptor field names. Values take C-style escapes
    (\\n, \\t, \\\\, \\xHH); horizontal whitespace around keys and values
    is trimmed before unescaping, so a literal space is written \\x20.
    Optional single-character fields (quote_char, stack_open,
    stack_close) are unset by an empty value. Two extra keys manage
    region rules: ``specs=`` clears the list and
    ``spec=kind:start:end[:escape[:flags]]`` adds a rule, replacing any
    existing rule with the same start delimiter.

    The merged descriptor is re-validated; violations raise ConfigError.
    """
    updates: dict[str, object] = {}
    specs = list(base.comment_string_specs)
    pos = 0
    for segment in spec_text.split(";"):
        seg_offset = pos
        pos += len(segment) + 1
        if not segment.strip():
            continue
        if "=" not in segment:
            raise ConfigError(
                f"malformed pair {segment.strip()!r} (expected key=value)",
                seg_offset,
            )
        key_raw, value_raw = segment.split("=", 1)
        key = key_raw.strip()
        value_offset = seg_offset + len(key_raw) + 1
        value = _unescape(value_raw.strip(" \t"), value_offset)
        if key in _STRING_FIELDS:
            updates[key] = value
        elif key in _CHAR_FIELDS:
            updates[key] = value if value else None
        elif key in _BOOL_FIELDS:
            updates[key] = _parse_bool(value, value_offset)
        elif key == "specs":
            if value:
                raise ConfigError(
                    "specs= clears the region list and takes no value",
                    value_offset,
                )
            specs = []
        elif key == "spec":
            new = _parse_region_spec(value, value_offset)
            specs = [s for s in specs if s.start_delim != new.start_delim]
            specs.append(new)
        else:
            raise ConfigError(f"unknown mode field {key!r}", seg_offset)
    merged = replace(base, comment_string_specs=tuple(specs), **updates)
    return _checked(merged)
