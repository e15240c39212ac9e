"""Regenerate the golden SVG files. Run manually after intended render changes:

    python tests/update_goldens.py
"""

from __future__ import annotations

from pathlib import Path

from hoopviz import (
    CYCLIC,
    LINEAR,
    layout_hoop,
    layout_linear,
    optimize_heuristic,
    render_svg,
)
from hoopviz.cli import generate_system


def main() -> None:
    golden = Path(__file__).parent / "golden"
    golden.mkdir(exist_ok=True)
    system = generate_system(6, 12, 7)
    hoop = render_svg(layout_hoop(system, optimize_heuristic(system, CYCLIC, 0)))
    linear = render_svg(layout_linear(system, optimize_heuristic(system, LINEAR, 0)))
    (golden / "hoop_6x12_seed7.svg").write_text(hoop)
    (golden / "linear_6x12_seed7.svg").write_text(linear)
    print(f"wrote {golden / 'hoop_6x12_seed7.svg'}")
    print(f"wrote {golden / 'linear_6x12_seed7.svg'}")


if __name__ == "__main__":
    main()
