#!/usr/bin/env python3
"""Writes the ten fixture image sidecars and the fixture manifest."""
import json
import os
import sys

FIXTURES = [
    dict(image_id="rainy_city", caption="a bad rainy day in the city", sentiment="negative",
         tags=[("umbrella", 0.92), ("person", 0.88), ("car", 0.71)],
         consequences=[(["rainy", "day"], [("get wet", 0.82), ("catch a cold", 0.64)])]),
    dict(image_id="surfer", caption="a man on a surfboard riding a wave in the ocean",
         sentiment="neutral", tags=[("person", 0.94), ("surfboard", 0.87)],
         consequences=[(["surfboard", "wave"], [("crash", 0.9), ("fall into the water", 0.7)])]),
    dict(image_id="bananas", caption="a bunch of ugly green bananas hanging from a tree",
         sentiment="negative", tags=[("bananas", 0.95), ("tree", 0.72), ("person", 0.41)],
         consequences=[(["bananas"], [("fall down", 0.88), ("rot", 0.51)])]),
    dict(image_id="dirty_dog", caption="a dirty dog lying on a messy bed", sentiment="negative",
         tags=[("dog", 0.96), ("bed", 0.83)],
         consequences=[(["dog", "bed"], [("ruin the sheets", 0.8), ("need a bath", 0.6)])]),
    dict(image_id="broken_oven", caption="a broken old oven in a dark kitchen", sentiment="negative",
         tags=[("oven", 0.9), ("sink", 0.6), ("person", 0.3)],
         consequences=[(["oven"], [("burn the food", 0.77), ("start a fire", 0.58)])]),
    dict(image_id="traffic_jam", caption="a terrible traffic jam on a busy highway",
         sentiment="negative", tags=[("car", 0.97), ("truck", 0.85), ("bus", 0.7)],
         consequences=[(["traffic", "jam"], [("be late", 0.83), ("honk the horn", 0.6)])]),
    dict(image_id="birthday_cake", caption="a sad birthday cake with burnt candles",
         sentiment="negative", tags=[("cake", 0.93), ("candle", 0.8), ("dining table", 0.55)],
         consequences=[(["cake"], [("get eaten", 0.7)]),
                       (["candles"], [("set off the alarm", 0.66)])]),
    dict(image_id="sunny_beach", caption="a lovely sunny day at the beach", sentiment="positive",
         tags=[("umbrella", 0.9), ("person", 0.85), ("chair", 0.62)],
         consequences=[(["beach"], [("get sunburned", 0.8), ("lose the sandals", 0.5)])]),
    dict(image_id="wet_cat", caption="an unhappy cat sitting on a wet keyboard", sentiment="negative",
         tags=[("cat", 0.95), ("keyboard", 0.9)],
         consequences=[(["cat", "keyboard"], [("type gibberish", 0.85), ("break the laptop", 0.61)])]),
    # No consequence rule: exercises the tag-only fallback.
    dict(image_id="old_bicycle", caption="a poor old bicycle abandoned in the snow",
         sentiment="negative", tags=[("bicycle", 0.91), ("snow", 0.7), ("fire hydrant", 0.4)],
         consequences=[]),
]


def main(root):
    img_dir = os.path.join(root, "fixtures", "images")
    os.makedirs(img_dir, exist_ok=True)
    for f in FIXTURES:
        doc = {
            "image_id": f["image_id"],
            "tags": [{"label": l, "confidence": c} for l, c in f["tags"]],
            "caption": f["caption"],
            "sentiment": f["sentiment"],
            "consequences": [
                {"keywords": kw, "phrases": [{"phrase": p, "score": s} for p, s in ph]}
                for kw, ph in f["consequences"]
            ],
            "corpus_ref": "mini",
        }
        with open(os.path.join(img_dir, f["image_id"] + ".json"), "w") as out:
            json.dump(doc, out, indent=2)
            out.write("\n")
    with open(os.path.join(root, "fixtures", "manifest.txt"), "w") as out:
        out.write("# fixture ids, one per line\n")
        for f in FIXTURES:
            out.write(f["image_id"] + "\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "data")
