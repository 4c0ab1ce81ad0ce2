#!/usr/bin/env python3
"""Regenerates the bundled test scenes. Deterministic, stdlib only.

Both scenes share the same smooth background, disk, and highlight square;
they differ only in the phase of a fine checker texture whose period equals
5 px. A 10x10 superpixel grid on a 45x45 image uses 5x5 cells, so the cell
means cancel the texture and the two scenes collapse toward the same smooth
image, while a 20x20 grid (2x2 cells) keeps most of the texture contrast.
"""
import math
import struct


def scene(path, phase_x, phase_y):
    w = h = 45
    om = 2 * math.pi / 5
    px = bytearray()
    for y in range(h):
        for x in range(w):
            g = y / (h - 1)
            r, gr, b = 60 + 110 * g, 90 + 90 * g, 200 - 140 * g
            dx, dy = x - 17, y - 19
            if dx * dx + dy * dy < 56:
                r, gr, b = 40, 30, 25
            if 28 <= x < 38 and 27 <= y < 35:
                r, gr, b = 230, 210, 90
            t = 22.0 * math.sin(om * x + phase_x) * math.cos(om * y + phase_y)
            px += struct.pack("BBB", *(max(0, min(255, int(round(v + t)))) for v in (r, gr, b)))
    with open(path, "wb") as f:
        f.write(b"P6\n%d %d\n255\n" % (w, h))
        f.write(px)


scene("scene_a.ppm", 0.0, 0.0)
scene("scene_b.ppm", math.pi, math.pi / 2)
