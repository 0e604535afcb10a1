"""Run configuration and its flat ``key=value`` file form."""

from __future__ import annotations

import dataclasses
import typing
from dataclasses import dataclass, field
from pathlib import Path

from .corpus import PreprocessConfig
from .embed import TrainConfig
from .graph import GraphConfig
from .rank import RankConfig
from .rouge import RougeConfig
from .walks import MetapathSchema, WalkConfig, parse_schemas

SYSTEMS = ("hge", "hge+external", "lead", "textrank", "oracle")

# sub-config seeds are derived per document from RunConfig.seed
_DERIVED = {"seed"}


@dataclass
class RunConfig:
    system: str = "hge"
    seed: int = 0
    workers: int = 1
    external_dir: str | None = None
    damping: float = 0.85
    tol: float = 1e-6
    max_iter: int = 200
    backend: str = "auto"
    preprocess: PreprocessConfig = field(default_factory=PreprocessConfig)
    graph: GraphConfig = field(default_factory=GraphConfig)
    walk: WalkConfig = field(default_factory=WalkConfig)
    train: TrainConfig = field(default_factory=TrainConfig)
    rank: RankConfig = field(default_factory=RankConfig)
    rouge: RougeConfig = field(default_factory=RougeConfig)

    def __post_init__(self):
        if self.system not in SYSTEMS:
            raise ValueError(f"unknown system {self.system!r}; choose from {', '.join(SYSTEMS)}")
        if self.system == "hge+external" and not self.external_dir:
            raise ValueError("system hge+external needs external_dir")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if self.system in ("hge", "hge+external") and not self.graph.use_ws:
            raise ValueError("graph-embedding ranking needs W-S edges (use_ws)")

    def to_flat(self) -> dict[str, str]:
        return {key: _format(getattr(obj, name)) for key, obj, name in _fields(self)}

    def replace(self, **overrides) -> "RunConfig":
        flat = self.to_flat()
        flat.update({k: _format(v) if not isinstance(v, str) else v for k, v in overrides.items()})
        return RunConfig.from_flat(flat)

    @classmethod
    def from_flat(cls, values: dict[str, str]) -> "RunConfig":
        known = field_types()
        unknown = set(values) - set(known)
        if unknown:
            raise KeyError(f"unknown config keys: {', '.join(sorted(unknown))}")
        top, sections = {}, {name: {} for name in SECTIONS}
        for key, text in values.items():
            section, tp = known[key]
            val = _parse(text, tp)
            (top if section is None else sections[section])[key] = val
        return cls(**top, **{name: SECTIONS[name](**kw) for name, kw in sections.items()})

    def write(self, path: str | Path) -> None:
        Path(path).write_text("".join(f"{k}={v}\n" for k, v in self.to_flat().items()), encoding="utf-8")

    @classmethod
    def read(cls, path: str | Path) -> "RunConfig":
        return cls.from_flat(read_flat(path))


SECTIONS = {
    "preprocess": PreprocessConfig,
    "graph": GraphConfig,
    "walk": WalkConfig,
    "train": TrainConfig,
    "rank": RankConfig,
    "rouge": RougeConfig,
}


def _fields(cfg: RunConfig):
    for f in dataclasses.fields(cfg):
        if f.name in SECTIONS:
            sub = getattr(cfg, f.name)
            for sf in dataclasses.fields(sub):
                if sf.name not in _DERIVED:
                    yield sf.name, sub, sf.name
        else:
            yield f.name, cfg, f.name


def field_types() -> dict[str, tuple[str | None, object]]:
    """Flat key -> (section name or None, annotated type)."""
    out = {}
    for f_name, tp in typing.get_type_hints(RunConfig).items():
        if f_name in SECTIONS:
            for sub_name, sub_tp in typing.get_type_hints(SECTIONS[f_name]).items():
                if sub_name in _DERIVED:
                    continue
                assert sub_name not in out, f"duplicate config key {sub_name}"
                out[sub_name] = (f_name, sub_tp)
        else:
            out[f_name] = (None, tp)
    return out


def field_defaults() -> dict[str, str]:
    return RunConfig().to_flat()


def _format(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, tuple) and all(isinstance(s, MetapathSchema) for s in v):
        return ",".join(s.name for s in v)
    return str(v)


def _parse(text: str, tp):
    if isinstance(text, str):
        text = text.strip()
    else:
        return text
    args = typing.get_args(tp)
    if type(None) in args:
        if text == "":
            return None
        tp = next(a for a in args if a is not type(None))
    if tp is bool:
        low = text.lower()
        if low in ("1", "true", "yes", "on"):
            return True
        if low in ("0", "false", "no", "off"):
            return False
        raise ValueError(f"not a boolean: {text!r}")
    if tp is int:
        return int(text)
    if tp is float:
        return float(text)
    if typing.get_origin(tp) is tuple:
        return parse_schemas(text)
    return text


def read_flat(path: str | Path) -> dict[str, str]:
    out = {}
    for n, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{n}: expected key=value")
        k, v = line.split("=", 1)
        out[k.strip()] = v.strip()
    return out
