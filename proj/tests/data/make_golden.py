#!/usr/bin/env python3
"""Writes the golden wire frames and their JSON twins.

The byte layout is built here with struct alone, independent of the C++
encoder, so the golden test compares two implementations.
"""

import json
import math
import struct
from pathlib import Path

OUT = Path(__file__).resolve().parent / "golden"
DEFAULT_A = 2.6576925803804321


def f32(x):
    return struct.unpack("<f", struct.pack("<f", x))[0]


def depth_q(d, d_min, d_max):
    lo, hi = f32(d_min), f32(d_max)
    cell = math.floor((d - lo) / (hi - lo) * 65536.0)
    return min(max(cell, 0), 65535)


def prob_q(p):
    return int(math.floor(p * 255.0 + 0.5))


def frame_bytes(frame):
    g = frame["grid"]
    kind = 0 if g["kind"] == "linear" else 1
    out = bytearray(b"STX1")
    out += struct.pack("<BHffBHHI", 1, g["n_bins"], g["d_min"], g["d_max"], kind,
                       frame["image"]["width"], frame["image"]["height"],
                       len(frame["stixels"]))
    for s in frame["stixels"]:
        label = 255 if s["label"] is None else s["label"]
        out += struct.pack("<BHHHBB", s["col"], s["v_top"], s["v_bot"],
                           depth_q(s["depth"], g["d_min"], g["d_max"]), prob_q(s["prob"]),
                           label)
    return bytes(out)


def world(frame_id, kind, stixels):
    return {
        "schema": "stixel-world",
        "version": 1,
        "frame_id": frame_id,
        "image": {"width": 1920, "height": 1280},
        "grid": {"kind": kind, "n_bins": 64, "d_min": 4.0, "d_max": 66.0,
                 "a": DEFAULT_A if kind == "tangential" else 0.0},
        "calib": None,
        "stixels": [dict(col=c, v_top=t, v_bot=b, depth=d, prob=p, width_px=8, label=l)
                    for c, t, b, d, p, l in stixels],
    }


FRAMES = {
    "empty": world("empty", "linear", []),
    "small": world("small", "linear", [
        (100, 320, 640, 9.8125, 0.9, None),
        (0, 0, 1, 4.0, 0.0, 0),
        (239, 1279, 1280, 66.0, 1.0, 254),
    ]),
    "tangential": world("tangential", "tangential", [
        (40, 512, 700, 10.0, 0.5, 1),
        (41, 510, 701, 10.03125, 0.38, 1),
        (42, 505, 702, 12.345678, 0.75, 2),
        (120, 600, 620, 29.531, 0.12, None),
        (121, 601, 621, 30.5, 0.999, None),
        (200, 400, 800, 35.0, 0.001, 3),
        (201, 300, 900, 65.999, 0.5039, 4),
        (202, 640, 641, 4.0000001, 0.25, None),
    ]),
}


def main():
    OUT.mkdir(exist_ok=True)
    for name, frame in FRAMES.items():
        (OUT / f"{name}.stx").write_bytes(frame_bytes(frame))
        (OUT / f"{name}.json").write_text(json.dumps(frame, indent=2) + "\n")


if __name__ == "__main__":
    main()
