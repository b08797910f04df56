"""ASCII and SVG drawings of tile structures."""
from __future__ import annotations

from xml.sax.saxutils import escape

import numpy as np

from .tiles import TileStructure

_PALETTE = ["#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462",
            "#b3de69", "#fccde5", "#d9d9d9", "#bc80bd", "#ccebc5", "#ffed6f"]


def _slices(s: TileStructure) -> list[np.ndarray]:
    own = s.owner()
    if s.ndim == 2:
        return [own]
    return [own[:, :, h] for h in range(s.dims[2])]


def render_ascii(s: TileStructure, labels: bool = True) -> str:
    """Grid of tile labels; 3D structures are drawn as height slices side by side.

    Neighbouring cells of different tiles are separated by ``|`` or ``-``.
    """
    width = len(f"t{s.ntiles}") if labels else 1
    blocks = []
    for sl in _slices(s):
        rows, cols = sl.shape
        lines = []
        for r in range(rows):
            cells = []
            for c in range(cols):
                txt = f"t{sl[r, c] + 1}" if labels else "#"
                cells.append(txt.center(width))
                if c < cols - 1:
                    cells.append("|" if sl[r, c] != sl[r, c + 1] else " ")
            lines.append("".join(cells))
            if r < rows - 1:
                sep = []
                for c in range(cols):
                    sep.append(("-" if sl[r, c] != sl[r + 1, c] else " ") * width)
                    if c < cols - 1:
                        sep.append("+")
                lines.append("".join(sep))
        blocks.append(lines)
    if len(blocks) == 1:
        return "\n".join(blocks[0]) + "\n"
    out = []
    for i in range(len(blocks[0])):
        out.append("    ".join(b[i] for b in blocks).rstrip())
    return "\n".join(out) + "\n"


def render_svg(s: TileStructure, cell: int = 40, labels: bool = True) -> str:
    slices = _slices(s)
    rows, cols = slices[0].shape
    gap = cell
    w = len(slices) * cols * cell + (len(slices) - 1) * gap
    h = rows * cell
    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">']
    for k, sl in enumerate(slices):
        x0 = k * (cols * cell + gap)
        for r in range(rows):
            for c in range(cols):
                t = int(sl[r, c])
                parts.append(f'<rect x="{x0 + c * cell}" y="{r * cell}" width="{cell}" height="{cell}" '
                             f'fill="{_PALETTE[t % len(_PALETTE)]}" stroke="#333" stroke-width="0.5"/>')
                if labels:
                    parts.append(f'<text x="{x0 + c * cell + cell / 2}" y="{r * cell + cell / 2}" '
                                 f'font-size="{cell // 3}" text-anchor="middle" dominant-baseline="middle">'
                                 f'{escape(f"t{t + 1}")}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
