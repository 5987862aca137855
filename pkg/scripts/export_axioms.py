#!/usr/bin/env python3
"""Regenerate the shipped icon-axioms.ttl fixture from the registry.

The fixture is a byte-stable Turtle rendering of the vocabulary: one
class/property marker per registered term plus the subclass, subproperty,
domain, and range axioms. Run from the repository root after changing the
registry; the output is deterministic, so an unchanged registry produces
an unchanged file.
"""

from pathlib import Path

from iconmodel import NAMESPACES, axioms_graph, build_registry, serialize_turtle


def main():
    reg = build_registry()
    text = serialize_turtle(axioms_graph(reg), NAMESPACES)
    out = Path(__file__).resolve().parent.parent / "src" / "iconmodel" \
        / "fixtures" / "icon-axioms.ttl"
    out.write_text(text, "utf-8")
    print(f"wrote {out} ({len(text.splitlines())} lines)")


if __name__ == "__main__":
    main()
