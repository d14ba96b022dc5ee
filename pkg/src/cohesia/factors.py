"""Context-factor profiles (input, purpose, output) and their engine parameters.

Profiles are flat ``key=value`` text, one field path per line::

    purpose.use=previewing
    output.format=headed
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field, replace

from .cohesion import EdgeWeights
from .selection import ScoreWeights

ENUMS = {
    "input.structure": ("flat", "headed_source"),
    "input.subject": ("ordinary", "specialised", "restricted"),
    "input.unit": ("single", "multiple"),
    "purpose.situation": ("tied", "floating"),
    "purpose.audience": ("untargetted", "targetted"),
    "purpose.use": ("retrieving", "previewing", "substitute", "refreshing", "prompt"),
    "output.material": ("covering", "partial"),
    "output.format": ("running", "headed"),
    "output.style": ("informative", "indicative", "critical", "aggregative"),
}
FREE_TEXT = ("input.medium", "input.genre")

DEFAULTS = {
    "input.structure": "flat",
    "input.scale": None,
    "input.medium": "en",
    "input.genre": "general",
    "input.subject": "ordinary",
    "input.unit": "single",
    "purpose.situation": "floating",
    "purpose.audience": "untargetted",
    "purpose.use": "previewing",
    "output.material": "covering",
    "output.format": "running",
    "output.style": "indicative",
}

PROJECTIONS = ("predications", "sentences", "keyterms")

# use -> (compression ratio, projection)
USE_TABLE = {
    "retrieving": (0.05, "keyterms"),
    "prompt": (0.05, "keyterms"),
    "previewing": (0.10, "predications"),
    "refreshing": (0.10, "predications"),
}

UNSUPPORTED = {
    "output.style": ({"informative", "critical", "aggregative"},
                     "only indicative summaries are produced; the engine notes what a source is about"),
    "output.material": ({"partial"}, "only covering summaries are produced; aspect selection is not modelled"),
    "input.unit": ({"multiple"}, "only single-source input is handled"),
    "purpose.use": ({"substitute"}, "skeletal semi-text cannot stand in for the source"),
}


class ProfileError(ValueError):
    """Malformed profile text or an unknown field value."""


class Unsupported(ValueError):
    def __init__(self, field_path, value, reason):
        super().__init__(f"unsupported {field_path}={value}: {reason}")
        self.field = field_path
        self.value = value


@dataclass(frozen=True)
class FactorProfile:
    values: dict = field(default_factory=lambda: dict(DEFAULTS), hash=False)

    def __getitem__(self, key):
        return self.values[key]

    @property
    def scale(self):
        return self.values["input.scale"]


@dataclass(frozen=True)
class EngineParams:
    compression_ratio: float = 0.10
    edge_weights: EdgeWeights = field(default_factory=EdgeWeights)
    score_weights: ScoreWeights = field(default_factory=ScoreWeights)
    output_format: str = "running"
    projection_mode: str = "predications"
    metadata: dict = field(default_factory=dict, hash=False, compare=False)

    def __post_init__(self):
        if not 0 < self.compression_ratio <= 0.5:
            raise ValueError("compression_ratio must be in (0, 0.5]")
        if self.output_format not in ENUMS["output.format"]:
            raise ValueError(f"unknown output format {self.output_format!r}")
        if self.projection_mode not in PROJECTIONS:
            raise ValueError(f"unknown projection mode {self.projection_mode!r}")

    def with_overrides(self, **kw) -> "EngineParams":
        kw = {k: v for k, v in kw.items() if v is not None}
        return replace(self, **kw) if kw else self


def _check_value(key, value, lineno=None):
    where = f"line {lineno}: " if lineno else ""
    if key in ENUMS:
        if value not in ENUMS[key]:
            raise ProfileError(f"{where}unknown value {value!r} for {key} "
                               f"(expected one of {', '.join(ENUMS[key])})")
        return value
    if key == "input.scale":
        try:
            scale = int(value)
        except (TypeError, ValueError):
            raise ProfileError(f"{where}input.scale must be an integer token count, got {value!r}") from None
        if scale <= 0:
            raise ProfileError(f"{where}input.scale must be > 0")
        return scale
    if key in FREE_TEXT:
        if not value:
            raise ProfileError(f"{where}{key} must not be empty")
        return value
    raise ProfileError(f"{where}unknown field {key!r}")


def parse_profile(stream) -> FactorProfile:
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    values = dict(DEFAULTS)
    seen = set()
    for lineno, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ProfileError(f"line {lineno}: expected key=value, got {line!r}")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key in seen:
            raise ProfileError(f"line {lineno}: {key} given twice")
        seen.add(key)
        values[key] = _check_value(key, value, lineno)
    return FactorProfile(values)


def serialize_profile(profile: FactorProfile) -> str:
    lines = []
    for key in DEFAULTS:
        value = profile.values[key]
        if value is not None:
            lines.append(f"{key}={value}")
    return "\n".join(lines) + "\n"


def resolve(profile: FactorProfile, base: EngineParams | None = None) -> EngineParams:
    """Map a profile to engine parameters; refuse what the engine cannot serve."""
    for key, (bad, reason) in UNSUPPORTED.items():
        if profile[key] in bad:
            raise Unsupported(key, profile[key], reason)
    base = base or EngineParams()
    ratio, projection = USE_TABLE[profile["purpose.use"]]
    recorded = {k: v for k, v in profile.values.items()
                if k.startswith(("input.", "purpose.situation", "purpose.audience"))}
    return replace(base, compression_ratio=ratio, projection_mode=projection,
                   output_format=profile["output.format"], metadata=recorded)

