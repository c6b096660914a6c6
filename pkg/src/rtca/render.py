"""Space-time diagram rendering: text grids and binary PGM images.

Time runs bottom to top: the last frame is printed first and row 0 of
a PGM is the final configuration.  States are rendered through named
projections (full structured states are too wide to draw directly).
"""

from __future__ import annotations

from typing import Callable, Optional

from .engine import SpaceTimeRecord


def default_projection(state) -> str:
    if state == "." or state == 0 or state is None:
        return " "
    s = str(state)
    return s[0] if s else "?"


def projection_for(aut, name: Optional[str]) -> Callable:
    if name is None or name == "default":
        return aut.projections.get("letter", default_projection)
    try:
        return aut.projections[name]
    except KeyError:
        raise KeyError(
            f"unknown projection {name!r}; automaton offers {sorted(aut.projections)}")


def render_text(record: SpaceTimeRecord, projection: Optional[str] = None) -> str:
    """One glyph per site, one line per time step, latest step first."""
    aut = record.automaton
    proj = projection_for(aut, projection)
    if aut.dim != 1:
        return render_text_2d(record, projection)
    (lo, hi), = record.window
    lines = []
    for t in range(record.horizon, -1, -1):
        row = []
        for x in range(lo, hi + 1):
            row.append(_glyph(proj(record.state_at((x,), t))))
        lines.append(f"{t:>4} |" + "".join(row) + "|")
    return "\n".join(lines)


def render_text_2d(record: SpaceTimeRecord, projection: Optional[str] = None) -> str:
    aut = record.automaton
    proj = projection_for(aut, projection)
    (xlo, xhi), (ylo, yhi) = record.window
    blocks = []
    for t in range(record.horizon + 1):
        lines = [f"t={t}"]
        for y in range(yhi, ylo - 1, -1):
            row = "".join(_glyph(proj(record.state_at((x, y), t)))
                          for x in range(xlo, xhi + 1))
            lines.append(f"{y:>4} |{row}|")
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks)


def _glyph(v) -> str:
    if isinstance(v, bool):
        return "#" if v else " "
    if isinstance(v, int):
        return str(v % 10) if v else " "
    s = str(v)
    return s[0] if s else " "


def render_pgm(record: SpaceTimeRecord, projection: Optional[str] = None) -> bytes:
    """Binary P5, one pixel per site, width = window cells, height =
    horizon + 1, time upward (top row = last frame)."""
    aut = record.automaton
    if aut.dim != 1:
        raise ValueError("PGM rendering is for 1D records")
    proj = projection_for(aut, projection) if projection not in (None, "default") \
        else None
    (lo, hi), = record.window
    width = hi - lo + 1
    height = record.horizon + 1
    rows = []
    for t in range(record.horizon, -1, -1):
        row = bytearray(width)
        for i, x in enumerate(range(lo, hi + 1)):
            if proj is None:
                code = record.code_at((x,), t)
                row[i] = 255 if code == 0 else (code * 37) % 200 + 55
            else:
                v = proj(record.state_at((x,), t))
                row[i] = _pixel(v)
        rows.append(bytes(row))
    header = f"P5\n{width} {height}\n255\n".encode()
    return header + b"".join(rows)


def _pixel(v) -> int:
    if isinstance(v, bool):
        return 0 if v else 255
    if isinstance(v, int):
        return max(0, min(255, 255 - v * 40))
    if v in (" ", "", None):
        return 255
    return (hash(str(v)) % 200) + 30
