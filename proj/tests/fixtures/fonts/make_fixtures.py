"""Builds the fixture fonts and their reference glyph dump.

Run from this directory with fontTools installed:
    python3 make_fixtures.py /path/to/DejaVuSans.ttf
"""
import json
import sys

from fontTools import subset
from fontTools.fontBuilder import FontBuilder
from fontTools.pens.boundsPen import BoundsPen, ControlBoundsPen
from fontTools.pens.recordingPen import RecordingPen
from fontTools.pens.t2CharStringPen import T2CharStringPen
from fontTools.ttLib import TTFont

CHARS = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789 "


def build_ttf(src, dst):
    options = subset.Options()
    options.layout_features = []
    options.hinting = False
    options.notdef_outline = True
    options.name_IDs = ["*"]
    font = TTFont(src)
    sub = subset.Subsetter(options)
    sub.populate(text=CHARS)
    sub.subset(font)
    font.save(dst)


def build_otf(ttf_path, dst):
    src = TTFont(ttf_path)
    glyph_order = src.getGlyphOrder()
    glyph_set = src.getGlyphSet()
    hmtx = src["hmtx"].metrics
    charstrings = {}
    for name in glyph_order:
        pen = T2CharStringPen(hmtx[name][0], glyph_set, roundTolerance=0.0)
        glyph_set[name].draw(pen)
        charstrings[name] = pen.getCharString()
    fb = FontBuilder(src["head"].unitsPerEm, isTTF=False)
    fb.setupGlyphOrder(glyph_order)
    fb.setupCharacterMap(src.getBestCmap())
    fb.setupCFF("FixtureSansCFF", {"FullName": "Fixture Sans CFF"}, charstrings, {})
    fb.setupHorizontalMetrics(hmtx)
    fb.setupHorizontalHeader(ascent=src["hhea"].ascent, descent=src["hhea"].descent)
    fb.setupNameTable({"familyName": "Fixture Sans CFF", "styleName": "Regular"})
    fb.setupOS2()
    fb.setupPost()
    fb.save(dst)


def dump(path):
    font = TTFont(path)
    cmap = font.getBestCmap()
    glyph_set = font.getGlyphSet()
    out = {"units_per_em": font["head"].unitsPerEm, "glyphs": {}}
    for ch in "IO0AT ":
        name = cmap[ord(ch)]
        rec = RecordingPen()
        glyph_set[name].draw(rec)
        bounds = BoundsPen(glyph_set)
        glyph_set[name].draw(bounds)
        control = ControlBoundsPen(glyph_set)
        glyph_set[name].draw(control)
        contours = sum(1 for op, _ in rec.value if op in ("closePath", "endPath"))
        out["glyphs"][ch] = {
            "contours": contours,
            "advance": font["hmtx"].metrics[name][0],
            "bounds": list(bounds.bounds) if bounds.bounds else None,
            "control_bounds": list(control.bounds) if control.bounds else None,
        }
    return out


if __name__ == "__main__":
    build_ttf(sys.argv[1], "FixtureSans.ttf")
    build_otf("FixtureSans.ttf", "FixtureSans.otf")
    reference = {"ttf": dump("FixtureSans.ttf"), "otf": dump("FixtureSans.otf")}
    with open("reference_dump.json", "w") as f:
        json.dump(reference, f, indent=2, sort_keys=True)
