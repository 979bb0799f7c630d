"""Member files and closure checkpoints.

Member file layout (text, UTF-8, '\\n' line endings)::

    # smooth-neighbors members
    # k=1
    # z=41
    # complete=true
    # generator=smooth_neighbors 0.1.0
    1
    2
    ...

Header lines start with '#'; the body is one decimal member per line in
strictly increasing order.  A value of ``none`` for z means the bound is
unknown.
"""
from __future__ import annotations

import json
import os
from pathlib import Path

from . import __version__
from .closure import ClosureState, NeighborSet

MAGIC = "# smooth-neighbors members"


def format_members(s: NeighborSet, generator: str | None = None) -> str:
    gen = generator or f"smooth_neighbors {__version__}"
    lines = [
        MAGIC,
        f"# k={s.k}",
        f"# z={'none' if s.z is None else s.z}",
        f"# complete={'true' if s.complete else 'false'}",
        f"# generator={gen}",
    ]
    lines.extend(str(b) for b in s.members)
    return "\n".join(lines) + "\n"


def write_members(path: str | Path, s: NeighborSet, generator: str | None = None) -> None:
    _atomic_write(Path(path), format_members(s, generator))


def parse_members(text: str) -> tuple[NeighborSet, dict[str, str]]:
    header: dict[str, str] = {}
    values: list[int] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            key, sep, val = line[1:].strip().partition("=")
            if sep:
                header[key.strip()] = val.strip()
            continue
        try:
            values.append(int(line))
        except ValueError:
            raise ValueError(f"line {lineno}: not an integer: {line!r}") from None
    for prev, cur in zip(values, values[1:]):
        if cur <= prev:
            raise ValueError(f"members not strictly increasing at {cur}")
    z = header.get("z", "none")
    s = NeighborSet(
        None if z == "none" else int(z),
        values,
        int(header.get("k", "1")),
        header.get("complete", "true") == "true",
    )
    return s, header


def read_members(path: str | Path) -> tuple[NeighborSet, dict[str, str]]:
    return parse_members(Path(path).read_text())


def save_checkpoint(path: str | Path, state: ClosureState) -> None:
    doc = {
        "k": state.k,
        "z": state.z,
        "round_index": state.round_index,
        "members": [str(b) for b in state.members],
        "frontier": [str(b) for b in state.frontier],
        "provenance": [[str(beta), str(b), str(B)] for beta, (b, B) in sorted(state.provenance.items())],
    }
    _atomic_write(Path(path), json.dumps(doc, separators=(",", ":")) + "\n")


def load_checkpoint(path: str | Path) -> ClosureState:
    doc = json.loads(Path(path).read_text())
    return ClosureState(
        k=int(doc["k"]),
        z=None if doc["z"] is None else int(doc["z"]),
        round_index=int(doc["round_index"]),
        members=[int(b) for b in doc["members"]],
        frontier=[int(b) for b in doc["frontier"]],
        provenance={int(beta): (int(b), int(B)) for beta, b, B in doc["provenance"]},
    )


def _atomic_write(path: Path, text: str) -> None:
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text)
    os.replace(tmp, path)
