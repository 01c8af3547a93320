"""Standalone SVG rendering of a neuron's three traces."""

from __future__ import annotations

from xml.sax.saxutils import escape, quoteattr

from .curves import Polyline
from .neuron import AMN, neuron_traces

_COLORS = {"intention": "#2e8b57", "motor": "#1f4e9a", "sensory": "#c0392b"}
_LABELS = {
    "intention": "intention wheel (hypocycloid)",
    "motor": "motor core (cycloid)",
    "sensory": "sensory core (epicycloid)",
}
_VIEW = 100.0


def _num(value: float) -> str:
    text = f"{value:.4f}"
    return "0.0000" if text == "-0.0000" else text


def _path_data(line: Polyline, scale: float) -> str:
    # SVG y grows downward.
    coords = [f"{_num(x * scale)},{_num(-y * scale)}" for x, y in zip(line.xs, line.ys)]
    return "M" + " L".join(coords)


def neuron_svg(amn: AMN, samples: int = 361) -> str:
    """Three ``<path>`` elements, classes ``intention``, ``motor`` and ``sensory``.

    The viewBox is always ``-100 -100 200 200``; curves are scaled uniformly
    to fit it.
    """
    intention, motor, sensory = neuron_traces(amn, n=samples)
    traces = {"intention": intention, "motor": motor, "sensory": sensory}
    extent = max(max(abs(line.xs).max(), abs(line.ys).max()) for line in traces.values())
    scale = 0.9 * _VIEW / extent
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{-_VIEW:g} {-_VIEW:g} {2 * _VIEW:g} {2 * _VIEW:g}" width="600" height="600">',
        f"<title>{escape(f'neuron {amn.id}')}</title>",
        f'<line class="axis" x1="{-_VIEW:g}" y1="0" x2="{_VIEW:g}" y2="0" stroke="#999999" stroke-width="0.3"/>',
    ]
    for name, line in traces.items():
        parts.append(
            f'<path class="{name}" id={quoteattr(f"{amn.id}-{name}")} fill="none" '
            f'stroke="{_COLORS[name]}" stroke-width="0.6" d="{_path_data(line, scale)}">'
            f"<title>{escape(_LABELS[name])}</title></path>"
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
